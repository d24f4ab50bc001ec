//! Words and tensor-algebra elements: the free algebra on the braiding's
//! basis letters, with exact coefficients.

use super::field::FieldElement;
use std::collections::BTreeMap;

pub type Letter = u8;
pub type Word = Vec<Letter>;

/// Multidegree (letter counts) of a word.
pub fn content_of_word(word: &[Letter], rank: usize) -> Vec<u32> {
    let mut c = vec![0u32; rank];
    for &l in word {
        c[l as usize] += 1;
    }
    c
}

/// All words of the given content, ascending lexicographic order.
pub fn words_of_content(content: &[u32]) -> Vec<Word> {
    let total: u32 = content.iter().sum();
    let mut out = Vec::new();
    let mut remaining = content.to_vec();
    let mut prefix: Word = Vec::with_capacity(total as usize);
    fn rec(remaining: &mut [u32], prefix: &mut Word, total: u32, out: &mut Vec<Word>) {
        if prefix.len() as u32 == total {
            out.push(prefix.clone());
            return;
        }
        for l in 0..remaining.len() {
            if remaining[l] > 0 {
                remaining[l] -= 1;
                prefix.push(l as Letter);
                rec(remaining, prefix, total, out);
                prefix.pop();
                remaining[l] += 1;
            }
        }
    }
    rec(&mut remaining, &mut prefix, total, &mut out);
    out
}

/// Element of the tensor algebra: a finite sum of words with nonzero
/// exact coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TensorElement {
    terms: BTreeMap<Word, FieldElement>,
}

impl TensorElement {
    pub fn zero() -> Self {
        TensorElement::default()
    }

    pub fn unit() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Vec::new(), FieldElement::one());
        TensorElement { terms }
    }

    pub fn generator(i: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![i as Letter], FieldElement::one());
        TensorElement { terms }
    }

    pub fn from_terms(pairs: impl IntoIterator<Item = (Word, FieldElement)>) -> Self {
        let mut out = TensorElement::zero();
        for (w, c) in pairs {
            out.add_term(w, c);
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &FieldElement)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, word: Word, coeff: FieldElement) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&coeff);
                if sum.is_zero() {
                    e.remove();
                } else {
                    e.insert(sum);
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        if c.is_zero() {
            return TensorElement::zero();
        }
        TensorElement {
            terms: self
                .terms
                .iter()
                .map(|(w, x)| (w.clone(), x.mul(c)))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&FieldElement::one().neg()))
    }

    /// Concatenation product of the tensor algebra.
    pub fn concat_mul(&self, other: &Self) -> Self {
        let mut out = TensorElement::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.add_term(w, a.mul(b));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = TensorElement::unit();
        for _ in 0..e {
            out = out.concat_mul(self);
        }
        out
    }

    /// Content of a homogeneous element; panics if terms mix contents.
    pub fn content(&self, rank: usize) -> Option<Vec<u32>> {
        let mut it = self.terms.keys();
        let first = content_of_word(it.next()?, rank);
        for w in it {
            assert_eq!(
                content_of_word(w, rank),
                first,
                "element is not homogeneous"
            );
        }
        Some(first)
    }
}
