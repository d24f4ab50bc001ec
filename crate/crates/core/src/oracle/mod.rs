//! Brute-force exact-arithmetic realization of diagonal-type Nichols
//! algebras in the quantum shuffle picture.
//!
//! The Nichols algebra is the quotient of the tensor algebra by the kernel
//! of the braided symmetrizer: two tensors represent the same element iff
//! their symmetrizer images agree, graded dimensions are symmetrizer
//! ranks, multiplication is concatenation, and the braided coproduct acts
//! on symmetrizer images by deconcatenation. This keeps every check here
//! linear-algebraic, with no Groebner machinery.
//!
//! Generic `q` is specialized to an exact rational that is not a root of
//! unity (default 2): all rank and vanishing decisions within the degree
//! cap are values of Laurent polynomials in `q` of bounded degree, and the
//! acceptance suite re-runs them at a second rational (default 3) as a
//! guard. Root-of-unity data uses cyclotomic arithmetic.

pub mod field;
pub mod linalg;
pub mod tensor;

use crate::braiding::BraidingMatrix;
use crate::census::{rank1_height, CoidealRecord, Height};
use crate::duflo::beta_sequence;
use crate::gcm::{reflection_matrix, LatticeMap, RootVector};
use crate::scheme::CartanScheme;
use field::FieldElement;
use linalg::RowSpace;
use num_bigint::BigInt;
use num_rational::BigRational;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use tensor::{content_of_word, words_of_content, TensorElement, Word};
use thiserror::Error;

pub const DEFAULT_DEGREE_CAP: u32 = 8;
pub const DEFAULT_GENERIC_VALUE: i64 = 2;
pub const GUARD_GENERIC_VALUE: i64 = 3;
pub const DEFAULT_DIM_CAP: u64 = 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("total degree {degree} exceeds the oracle cap {cap}")]
    DegreeCapExceeded { degree: u32, cap: u32 },
    #[error("algebra dimension {dim} exceeds the cap {cap}")]
    DimCapExceeded { dim: u64, cap: u64 },
    #[error("the Nichols algebra is not finite-dimensional")]
    NotFiniteDimensional,
    #[error("check {which:?} failed at degree {witness:?}")]
    CheckFailed {
        which: &'static str,
        witness: Vec<u32>,
    },
    #[error("operation needs diagonal braiding data")]
    DiagonalDataRequired,
    #[error("no additive decomposition found for PBW degree {degree:?}")]
    RootVectorConstruction { degree: Vec<i64> },
    #[error("groupoid not finite within bounds")]
    NotFinite,
}

#[derive(Debug, Clone, Copy)]
pub struct OracleConfig {
    pub degree_cap: u32,
    pub generic_value: i64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            degree_cap: DEFAULT_DEGREE_CAP,
            generic_value: DEFAULT_GENERIC_VALUE,
        }
    }
}

struct SymBlock {
    words: Vec<Word>,
    index: HashMap<Word, usize>,
    /// columns[j] = symmetrizer image of words[j], coordinates over `words`
    columns: Vec<Vec<FieldElement>>,
}

/// The oracle: a braiding matrix over the exact field plus memoized
/// symmetrizer blocks per multidegree.
pub struct NicholsOracle {
    rank: usize,
    q: Vec<Vec<FieldElement>>,
    cap: u32,
    blocks: HashMap<Vec<u32>, SymBlock>,
    ranks: HashMap<Vec<u32>, usize>,
}

impl NicholsOracle {
    pub fn new(q: Vec<Vec<FieldElement>>, cap: u32) -> Self {
        let rank = q.len();
        assert!(rank > 0 && q.iter().all(|row| row.len() == rank));
        NicholsOracle {
            rank,
            q,
            cap,
            blocks: HashMap::new(),
            ranks: HashMap::new(),
        }
    }

    /// Specializes a braiding matrix: root-of-unity entries land in the
    /// least common cyclotomic field, generic powers at the configured
    /// rational.
    pub fn for_braiding(q: &BraidingMatrix, config: &OracleConfig) -> Self {
        let ambient = FieldElement::ambient_order(q.entries().iter().flatten());
        let generic = BigRational::from_integer(BigInt::from(config.generic_value));
        let entries = q
            .entries()
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| FieldElement::from_scalar(s, ambient, &generic))
                    .collect()
            })
            .collect();
        NicholsOracle::new(entries, config.degree_cap)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    /// Bicharacter on multidegrees: `chi(a, b) = prod q_st^{a_s b_t}`.
    pub fn chi(&self, a: &[i64], b: &[i64]) -> FieldElement {
        let mut out = FieldElement::one();
        for (s, &a_s) in a.iter().enumerate() {
            if a_s == 0 {
                continue;
            }
            for (t, &b_t) in b.iter().enumerate() {
                if b_t != 0 {
                    out = out.mul(&self.q[s][t].pow(a_s * b_t));
                }
            }
        }
        out
    }

    fn check_cap(&self, content: &[u32]) -> Result<(), OracleError> {
        let degree: u32 = content.iter().sum();
        if degree > self.cap {
            return Err(OracleError::DegreeCapExceeded {
                degree,
                cap: self.cap,
            });
        }
        Ok(())
    }

    /// Builds the symmetrizer block of a content, by dynamic programming
    /// over the sub-contents obtained by removing the last letter:
    /// `S_n = (S_{n-1} (x) id) Q_n` with `Q_n` the partial braid chains.
    fn ensure_block(&mut self, content: &[u32]) {
        if self.blocks.contains_key(content) {
            return;
        }
        let total: u32 = content.iter().sum();
        let words = words_of_content(content);
        let index: HashMap<Word, usize> = words
            .iter()
            .enumerate()
            .map(|(k, w)| (w.clone(), k))
            .collect();
        if total <= 1 {
            let columns = (0..words.len())
                .map(|j| {
                    (0..words.len())
                        .map(|i| {
                            if i == j {
                                FieldElement::one()
                            } else {
                                FieldElement::zero()
                            }
                        })
                        .collect()
                })
                .collect();
            self.blocks.insert(
                content.to_vec(),
                SymBlock {
                    words,
                    index,
                    columns,
                },
            );
            return;
        }
        for j in 0..self.rank {
            if content[j] > 0 {
                let mut child = content.to_vec();
                child[j] -= 1;
                self.ensure_block(&child);
            }
        }
        let n = total as usize;
        let mut columns = Vec::with_capacity(words.len());
        for u in &words {
            // Q_n(u): the identity plus the chains c_{n-1}...c_k, k = n-1..1
            let mut scaled: Vec<(Word, FieldElement)> = vec![(u.clone(), FieldElement::one())];
            for k in (1..n).rev() {
                let mut w = u.clone();
                let mut s = FieldElement::one();
                for p in (k - 1)..=(n - 2) {
                    s = s.mul(&self.q[w[p] as usize][w[p + 1] as usize]);
                    w.swap(p, p + 1);
                }
                scaled.push((w, s));
            }
            // left-multiply by S_{n-1} (x) id, block-diagonal by last letter
            let mut col = vec![FieldElement::zero(); words.len()];
            for (w, s) in scaled {
                let j = *w.last().expect("nonempty word") as usize;
                let mut child = content.to_vec();
                child[j] -= 1;
                let block = &self.blocks[&child];
                let prefix = w[..w.len() - 1].to_vec();
                let pcol = &block.columns[block.index[&prefix]];
                for (wprime, c) in block.words.iter().zip(pcol) {
                    if c.is_zero() {
                        continue;
                    }
                    let mut full = wprime.clone();
                    full.push(j as u8);
                    let target = index[&full];
                    col[target] = col[target].add(&s.mul(c));
                }
            }
            columns.push(col);
        }
        self.blocks.insert(
            content.to_vec(),
            SymBlock {
                words,
                index,
                columns,
            },
        );
    }

    /// Word basis of the tensor component of a content (lex order).
    pub fn words(&mut self, content: &[u32]) -> Vec<Word> {
        self.ensure_block(content);
        self.blocks[content].words.clone()
    }

    /// Symmetrizer image of a homogeneous tensor element, as coordinates
    /// over the content's word basis. Zero exactly when the element
    /// vanishes in the Nichols algebra.
    pub fn symmetrize(&mut self, elt: &TensorElement) -> Result<Vec<FieldElement>, OracleError> {
        let Some(content) = elt.content(self.rank) else {
            return Ok(Vec::new());
        };
        self.check_cap(&content)?;
        self.ensure_block(&content);
        let block = &self.blocks[&content];
        let mut out = vec![FieldElement::zero(); block.words.len()];
        for (w, c) in elt.terms() {
            let col = &block.columns[block.index[w]];
            for (o, x) in out.iter_mut().zip(col) {
                if !x.is_zero() {
                    *o = o.add(&c.mul(x));
                }
            }
        }
        Ok(out)
    }

    /// Graded dimension of the Nichols algebra at a multidegree: the rank
    /// of the quantum symmetrizer on that word space, exact arithmetic.
    pub fn symmetrizer_dim(&mut self, content: &[u32]) -> Result<usize, OracleError> {
        self.check_cap(content)?;
        if let Some(&r) = self.ranks.get(content) {
            return Ok(r);
        }
        self.ensure_block(content);
        let block = &self.blocks[content];
        let mut space = RowSpace::new(block.words.len());
        for col in &block.columns {
            space.insert(col.clone());
        }
        let r = space.rank();
        self.ranks.insert(content.to_vec(), r);
        Ok(r)
    }

    /// Dimensions summed over contents of each total degree `0..=max`.
    pub fn dims_by_total_degree(&mut self, max_degree: u32) -> Result<Vec<usize>, OracleError> {
        (0..=max_degree)
            .map(|t| {
                contents_with_total(self.rank, t)
                    .iter()
                    .map(|c| self.symmetrizer_dim(c))
                    .sum()
            })
            .collect()
    }

    /// Braided adjoint `ad x_i(z) = x_i z - chi(alpha_i, deg z) z x_i`.
    pub fn braided_adjoint(&self, i: usize, z: &TensorElement) -> TensorElement {
        let Some(content) = z.content(self.rank) else {
            return TensorElement::zero();
        };
        let xi = TensorElement::generator(i);
        let deg: Vec<i64> = content.iter().map(|&c| i64::from(c)).collect();
        let alpha: Vec<i64> = (0..self.rank).map(|t| i64::from(t == i)).collect();
        let scalar = self.chi(&alpha, &deg);
        xi.concat_mul(z).sub(&z.concat_mul(&xi).scale(&scalar))
    }

    /// Whether `(ad x_i)^m (x_j)` is nonzero in the Nichols algebra.
    pub fn adjoint_power_nonzero(
        &mut self,
        i: usize,
        j: usize,
        m: u32,
    ) -> Result<bool, OracleError> {
        assert_ne!(i, j, "adjoint power needs distinct indices");
        if m + 1 > self.cap {
            return Err(OracleError::DegreeCapExceeded {
                degree: m + 1,
                cap: self.cap,
            });
        }
        let mut z = TensorElement::generator(j);
        for _ in 0..m {
            z = self.braided_adjoint(i, &z);
        }
        Ok(self.symmetrize(&z)?.iter().any(|c| !c.is_zero()))
    }
}

/// Deconcatenation of one first letter `j`: the left skew derivation
/// `partial^L_f` for the degree-1 dual dual to `x_j`.
fn drop_first_letter(
    coords: &[FieldElement],
    words: &[Word],
    child_index: &HashMap<Word, usize>,
    child_len: usize,
    j: u8,
) -> Vec<FieldElement> {
    let mut out = vec![FieldElement::zero(); child_len];
    for (w, c) in words.iter().zip(coords) {
        if c.is_zero() || w[0] != j {
            continue;
        }
        let t = child_index[&w[1..].to_vec()];
        out[t] = out[t].add(c);
    }
    out
}

/// Matrices of the left skew derivations between consecutive graded
/// components: rows are the images of a basis of the component under
/// `partial^L` for each degree-1 dual.
pub struct SkewDerivationTable {
    pub content: Vec<u32>,
    /// basis of the graded component, as symmetrizer-image coordinates
    pub basis: Vec<Vec<FieldElement>>,
    /// per generator index with nonzero multiplicity: the derivation
    /// images of the basis, as coordinates over the lower word space
    pub maps: Vec<(usize, Vec<Vec<FieldElement>>)>,
}

impl SkewDerivationTable {
    /// The defining non-degeneracy of Nichols algebras: in positive
    /// degree the joint kernel of all skew derivations is zero.
    pub fn joint_kernel_is_trivial(&self) -> bool {
        if self.basis.is_empty() {
            return true;
        }
        let total_len: usize = self.maps.iter().map(|(_, rows)| rows[0].len()).sum();
        let mut stacked = RowSpace::new(total_len);
        let mut rank = 0;
        for t in 0..self.basis.len() {
            let mut row = Vec::with_capacity(total_len);
            for (_, rows) in &self.maps {
                row.extend(rows[t].iter().cloned());
            }
            if stacked.insert(row) {
                rank += 1;
            }
        }
        rank == self.basis.len()
    }
}

impl NicholsOracle {
    /// Skew derivation data of one graded component.
    pub fn skew_derivations(
        &mut self,
        content: &[u32],
    ) -> Result<SkewDerivationTable, OracleError> {
        self.check_cap(content)?;
        let words = self.words(content);
        let mut span = RowSpace::new(words.len());
        self.ensure_block(content);
        for col in self.blocks[content].columns.clone() {
            span.insert(col);
        }
        let basis: Vec<Vec<FieldElement>> = span.rows().to_vec();
        let mut maps = Vec::new();
        for j in 0..self.rank {
            if content[j] == 0 {
                continue;
            }
            let mut child = content.to_vec();
            child[j] -= 1;
            let child_words = self.words(&child);
            let child_index: HashMap<Word, usize> = child_words
                .iter()
                .enumerate()
                .map(|(k, w)| (w.clone(), k))
                .collect();
            let rows = basis
                .iter()
                .map(|b| drop_first_letter(b, &words, &child_index, child_words.len(), j as u8))
                .collect();
            maps.push((j, rows));
        }
        Ok(SkewDerivationTable {
            content: content.to_vec(),
            basis,
            maps,
        })
    }
}

/// All contents of a rank with the exact total degree, lex ascending.
pub fn contents_with_total(rank: usize, total: u32) -> Vec<Vec<u32>> {
    assert!(rank >= 1);
    let mut out = Vec::new();
    let mut current = vec![0u32; rank];
    fn rec(pos: usize, left: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos + 1 == current.len() {
            current[pos] = left;
            out.push(current.clone());
            current[pos] = 0;
            return;
        }
        for v in 0..=left {
            current[pos] = v;
            rec(pos + 1, left - v, current, out);
        }
        current[pos] = 0;
    }
    rec(0, total, &mut current, &mut out);
    out
}

/// All contents with total degree `<= cap`.
pub fn contents_up_to(rank: usize, cap: u32) -> Vec<Vec<u32>> {
    (0..=cap)
        .flat_map(|t| contents_with_total(rank, t))
        .collect()
}

/// Cartan entry from the oracle side: `-max{m : (ad x_i)^m(x_j) != 0}`,
/// or `None` when every power within the cap is nonzero.
pub fn cartan_entry_via_adjoint(
    q: &BraidingMatrix,
    i: usize,
    j: usize,
    config: &OracleConfig,
) -> Option<i64> {
    let mut oracle = NicholsOracle::for_braiding(q, config);
    for m in 1..oracle.cap() {
        if !oracle
            .adjoint_power_nonzero(i, j, m)
            .expect("within cap by construction")
        {
            return Some(1 - i64::from(m));
        }
    }
    None
}

// ---------------------------------------------------------------------
// PBW root vectors along a reduced word
// ---------------------------------------------------------------------

/// Greedily extends a reduced word at `x` to a reduced word of the
/// longest element (finite root-system schemes).
pub fn longest_extension(
    scheme: &CartanScheme,
    x: usize,
    word: &[usize],
) -> Result<Vec<usize>, OracleError> {
    let rank = scheme.rank();
    let mut extended = word.to_vec();
    let mut matrix = LatticeMap::identity(rank);
    let mut source = x;
    for &i in word {
        let s = reflection_matrix(scheme.cartan(source), i).expect("index in range");
        matrix = matrix.compose(&s);
        source = scheme.reflect_object(i, source);
    }
    let limit = extended.len() + 1024;
    loop {
        let next =
            (0..rank).find(|&j| matrix.apply(&RootVector::basis(rank, j)).is_positive());
        let Some(j) = next else {
            return Ok(extended);
        };
        let s = reflection_matrix(scheme.cartan(source), j).expect("index in range");
        matrix = matrix.compose(&s);
        source = scheme.reflect_object(j, source);
        extended.push(j);
        if extended.len() > limit {
            return Err(OracleError::RootVectorConstruction { degree: vec![] });
        }
    }
}

fn simple_index(deg: &[i64]) -> Option<usize> {
    let mut found = None;
    for (i, &c) in deg.iter().enumerate() {
        match c {
            0 => {}
            1 if found.is_none() => found = Some(i),
            _ => return None,
        }
    }
    found
}

/// Root vectors for a convex PBW degree sequence: simple degrees are the
/// generators, every other degree is a braided bracket `[z_a, z_b]_c` of
/// an earlier and a later vector with `beta_a + beta_b = beta_l`, picked
/// closest-first. The downstream closure and dimension checks certify the
/// construction per record, so scalar normalization is irrelevant.
pub fn root_vectors(
    oracle: &NicholsOracle,
    betas: &[RootVector],
) -> Result<Vec<TensorElement>, OracleError> {
    let m = betas.len();
    let degs: Vec<Vec<i64>> = betas.iter().map(|b| b.to_i64_vec()).collect();
    let mut z: Vec<Option<TensorElement>> = vec![None; m];
    for l in 0..m {
        if let Some(i) = simple_index(&degs[l]) {
            z[l] = Some(TensorElement::generator(i));
        }
    }
    while z.iter().any(Option::is_none) {
        let mut progress = false;
        for l in 0..m {
            if z[l].is_some() {
                continue;
            }
            let mut best: Option<(usize, usize)> = None;
            for a in 0..l {
                if z[a].is_none() {
                    continue;
                }
                for b in l + 1..m {
                    if z[b].is_none() {
                        continue;
                    }
                    let matches = degs[a]
                        .iter()
                        .zip(&degs[b])
                        .zip(&degs[l])
                        .all(|((p, q), r)| p + q == *r);
                    if matches {
                        let cand = (l - a, b - l);
                        if best.is_none_or(|(x, y)| cand < (x, y)) {
                            best = Some(cand);
                        }
                    }
                }
            }
            if let Some((da, db)) = best {
                let (a, b) = (l - da, l + db);
                let za = z[a].clone().expect("built");
                let zb = z[b].clone().expect("built");
                let scalar = oracle.chi(&degs[a], &degs[b]);
                z[l] = Some(za.concat_mul(&zb).sub(&zb.concat_mul(&za).scale(&scalar)));
                progress = true;
            }
        }
        if !progress {
            let missing = z.iter().position(Option::is_none).expect("some missing");
            return Err(OracleError::RootVectorConstruction {
                degree: degs[missing].clone(),
            });
        }
    }
    Ok(z.into_iter().map(|v| v.expect("all built")).collect())
}

/// PBW monomials `z_m^{a_m} ... z_1^{a_1}` of one multidegree.
fn pbw_monomials_of_degree(
    vectors: &[(Vec<i64>, TensorElement)],
    target: &[u32],
) -> Vec<TensorElement> {
    let mut remaining: Vec<i64> = target.iter().map(|&c| i64::from(c)).collect();
    let mut exponents = vec![0u32; vectors.len()];
    let mut out = Vec::new();
    fn rec(
        vectors: &[(Vec<i64>, TensorElement)],
        l: usize,
        remaining: &mut Vec<i64>,
        exponents: &mut Vec<u32>,
        out: &mut Vec<TensorElement>,
    ) {
        if l == vectors.len() {
            if remaining.iter().all(|&c| c == 0) {
                let mut monomial = TensorElement::unit();
                for (k, &e) in exponents.iter().enumerate().rev() {
                    if e > 0 {
                        monomial = monomial.concat_mul(&vectors[k].1.pow(e));
                    }
                }
                out.push(monomial);
            }
            return;
        }
        let deg = &vectors[l].0;
        let max = remaining
            .iter()
            .zip(deg)
            .filter(|(_, &d)| d > 0)
            .map(|(r, d)| r / d)
            .min()
            .unwrap_or(0)
            .max(0);
        for e in 0..=max {
            if e > 0 {
                for (r, d) in remaining.iter_mut().zip(deg) {
                    *r -= d;
                }
            }
            exponents[l] = e as u32;
            rec(vectors, l + 1, remaining, exponents, out);
        }
        for (r, d) in remaining.iter_mut().zip(deg) {
            *r += max * d;
        }
        exponents[l] = 0;
    }
    rec(vectors, 0, &mut remaining, &mut exponents, &mut out);
    out
}

/// Deconcatenation of one last letter `j` on symmetrizer images.
fn drop_last_letter(
    coords: &[FieldElement],
    words: &[Word],
    child_index: &HashMap<Word, usize>,
    child_len: usize,
    j: u8,
) -> Vec<FieldElement> {
    let mut out = vec![FieldElement::zero(); child_len];
    for (w, c) in words.iter().zip(coords) {
        if c.is_zero() || *w.last().expect("positive degree") != j {
            continue;
        }
        let t = child_index[&w[..w.len() - 1].to_vec()];
        out[t] = out[t].add(c);
    }
    out
}

struct DegreeSpan {
    words: Vec<Word>,
    index: HashMap<Word, usize>,
    monomials: Vec<TensorElement>,
    space: RowSpace,
}

fn build_spans(
    oracle: &mut NicholsOracle,
    vectors: &[(Vec<i64>, TensorElement)],
    cap: u32,
) -> Result<BTreeMap<Vec<u32>, DegreeSpan>, OracleError> {
    let rank = oracle.rank();
    let mut spans = BTreeMap::new();
    for content in contents_up_to(rank, cap) {
        let words = oracle.words(&content);
        let index: HashMap<Word, usize> = words
            .iter()
            .enumerate()
            .map(|(k, w)| (w.clone(), k))
            .collect();
        let monomials = pbw_monomials_of_degree(vectors, &content);
        let mut space = RowSpace::new(words.len());
        for monomial in &monomials {
            if !monomial.is_zero() {
                space.insert(oracle.symmetrize(monomial)?);
            }
        }
        spans.insert(
            content,
            DegreeSpan {
                words,
                index,
                monomials,
                space,
            },
        );
    }
    Ok(spans)
}

/// Verifies a census record against the shuffle realization:
/// (a) the span of its PBW monomials is closed under multiplication,
/// (b) it is closed under all right-coproduct projections by degree-1
/// duals, and (c) its graded dimensions equal the record's truncated
/// Hilbert series. Exact arithmetic, zero tolerance.
pub fn verify_coideal(
    scheme: &CartanScheme,
    record: &CoidealRecord,
    config: &OracleConfig,
) -> Result<(), OracleError> {
    let x = record.morphism.target;
    let Some(braiding) = &scheme.object(x).braiding else {
        return Err(OracleError::DiagonalDataRequired);
    };
    let Some(hilbert) = &record.hilbert else {
        return Err(OracleError::DiagonalDataRequired);
    };
    let expected = hilbert.truncate(config.degree_cap);
    let mut oracle = NicholsOracle::for_braiding(braiding, config);

    let word = &record.morphism.word;
    let extended = longest_extension(scheme, x, word)?;
    let betas = beta_sequence(scheme, x, &extended).expect("extension is a valid word");
    let all_vectors = root_vectors(&oracle, &betas)?;
    let vectors: Vec<(Vec<i64>, TensorElement)> = betas
        .iter()
        .zip(all_vectors)
        .take(word.len())
        .map(|(b, z)| (b.to_i64_vec(), z))
        .collect();

    let spans = build_spans(&mut oracle, &vectors, config.degree_cap)?;

    // (c) graded dimensions match the truncated Hilbert series
    for (content, span) in &spans {
        if span.space.rank() as u64 != expected.coefficient(content) {
            return Err(OracleError::CheckFailed {
                which: "graded dimension",
                witness: content.clone(),
            });
        }
    }

    // (a) closure under multiplication
    for (d1, span1) in &spans {
        let t1: u32 = d1.iter().sum();
        if t1 == 0 {
            continue;
        }
        for (d2, span2) in &spans {
            let t2: u32 = d2.iter().sum();
            if t2 == 0 || t1 + t2 > config.degree_cap {
                continue;
            }
            let sum: Vec<u32> = d1.iter().zip(d2).map(|(a, b)| a + b).collect();
            for m1 in &span1.monomials {
                for m2 in &span2.monomials {
                    let product = m1.concat_mul(m2);
                    if product.is_zero() {
                        continue;
                    }
                    let image = oracle.symmetrize(&product)?;
                    if image.iter().all(FieldElement::is_zero) {
                        continue;
                    }
                    if !spans[&sum].space.contains(&image) {
                        return Err(OracleError::CheckFailed {
                            which: "multiplication closure",
                            witness: sum,
                        });
                    }
                }
            }
        }
    }

    // (b) closure under right-coproduct projections
    for (content, span) in &spans {
        let total: u32 = content.iter().sum();
        if total == 0 {
            continue;
        }
        for j in 0..oracle.rank() {
            if content[j] == 0 {
                continue;
            }
            let mut child = content.clone();
            child[j] -= 1;
            let child_span = &spans[&child];
            for row in span.space.rows() {
                let leg = drop_last_letter(
                    row,
                    &span.words,
                    &child_span.index,
                    child_span.words.len(),
                    j as u8,
                );
                if leg.iter().all(FieldElement::is_zero) {
                    continue;
                }
                if !child_span.space.contains(&leg) {
                    return Err(OracleError::CheckFailed {
                        which: "right coideal closure",
                        witness: content.clone(),
                    });
                }
            }
        }
    }

    Ok(())
}

/// Commutator containment for a longest-element record: for `k < l`,
/// `z_k z_l - chi(beta_k, beta_l) z_l z_k` lies in the span of PBW
/// monomials in the roots strictly between `k` and `l`. The coproduct
/// variant checks that the left legs of `Delta(z_l) - z_l (x) 1` lie in
/// the span of monomials in strictly earlier root vectors.
pub fn commutator_check(
    scheme: &CartanScheme,
    record: &CoidealRecord,
    config: &OracleConfig,
) -> Result<(), OracleError> {
    let x = record.morphism.target;
    let Some(braiding) = &scheme.object(x).braiding else {
        return Err(OracleError::DiagonalDataRequired);
    };
    let mut oracle = NicholsOracle::for_braiding(braiding, config);
    let word = &record.morphism.word;
    let betas = beta_sequence(scheme, x, word).expect("census words are valid");
    let zs = root_vectors(&oracle, &betas)?;
    let degs: Vec<Vec<i64>> = betas.iter().map(|b| b.to_i64_vec()).collect();
    let m = zs.len();

    for k in 0..m {
        for l in k + 1..m {
            let total: i64 = degs[k].iter().sum::<i64>() + degs[l].iter().sum::<i64>();
            if total > i64::from(config.degree_cap) {
                continue;
            }
            let scalar = oracle.chi(&degs[k], &degs[l]);
            let bracket = zs[k]
                .concat_mul(&zs[l])
                .sub(&zs[l].concat_mul(&zs[k]).scale(&scalar));
            let image = oracle.symmetrize(&bracket)?;
            if image.iter().all(FieldElement::is_zero) {
                continue;
            }
            let target: Vec<u32> = degs[k]
                .iter()
                .zip(&degs[l])
                .map(|(a, b)| u32::try_from(a + b).expect("positive degree"))
                .collect();
            let mid: Vec<(Vec<i64>, TensorElement)> = (k + 1..l)
                .map(|t| (degs[t].clone(), zs[t].clone()))
                .collect();
            let mut space = RowSpace::new(image.len());
            for monomial in pbw_monomials_of_degree(&mid, &target) {
                if !monomial.is_zero() {
                    space.insert(oracle.symmetrize(&monomial)?);
                }
            }
            if !space.contains(&image) {
                return Err(OracleError::CheckFailed {
                    which: "commutator containment",
                    witness: target,
                });
            }
        }
    }

    for l in 0..m {
        let content: Vec<u32> = degs[l]
            .iter()
            .map(|&c| u32::try_from(c).expect("positive degree"))
            .collect();
        let total: u32 = content.iter().sum();
        if total > config.degree_cap {
            continue;
        }
        let image = oracle.symmetrize(&zs[l])?;
        let words = oracle.words(&content);
        let earlier: Vec<(Vec<i64>, TensorElement)> =
            (0..l).map(|t| (degs[t].clone(), zs[t].clone())).collect();
        for split in 1..total {
            let prefix_len = (total - split) as usize;
            let mut legs: BTreeMap<Word, BTreeMap<Word, FieldElement>> = BTreeMap::new();
            for (w, c) in words.iter().zip(&image) {
                if c.is_zero() {
                    continue;
                }
                legs.entry(w[prefix_len..].to_vec())
                    .or_default()
                    .insert(w[..prefix_len].to_vec(), c.clone());
            }
            for (suffix, leg) in legs {
                let suffix_content = content_of_word(&suffix, oracle.rank());
                let d_prime: Vec<u32> = content
                    .iter()
                    .zip(&suffix_content)
                    .map(|(a, b)| a - b)
                    .collect();
                let prefix_words = oracle.words(&d_prime);
                let index: HashMap<Word, usize> = prefix_words
                    .iter()
                    .enumerate()
                    .map(|(k, w)| (w.clone(), k))
                    .collect();
                let mut vector = vec![FieldElement::zero(); prefix_words.len()];
                for (w, c) in leg {
                    vector[index[&w]] = c;
                }
                let mut space = RowSpace::new(prefix_words.len());
                for monomial in pbw_monomials_of_degree(&earlier, &d_prime) {
                    if !monomial.is_zero() {
                        space.insert(oracle.symmetrize(&monomial)?);
                    }
                }
                if !space.contains(&vector) {
                    return Err(OracleError::CheckFailed {
                        which: "coproduct containment",
                        witness: content.clone(),
                    });
                }
            }
        }
    }

    Ok(())
}

/// Exhaustive search over graded subspaces spanned by subsets of the PBW
/// basis of a finite-dimensional Nichols algebra, closed under
/// multiplication and right-coproduct projections, counted up to equality
/// of graded dimension vectors.
pub fn enumerate_coideals_small(
    scheme: &CartanScheme,
    x: usize,
    cap_dim: u64,
    config: &OracleConfig,
) -> Result<usize, OracleError> {
    assert!(cap_dim <= 24, "subset search is exponential in the dimension");
    let Some(braiding) = &scheme.object(x).braiding else {
        return Err(OracleError::DiagonalDataRequired);
    };
    let longest =
        crate::groupoid::longest_elements(scheme, x, 64).map_err(|_| OracleError::NotFinite)?;
    assert_eq!(longest.len(), 1, "unique longest element expected");
    let word = longest[0].word.clone();
    let betas = beta_sequence(scheme, x, &word).expect("valid word");

    let mut heights: Vec<u64> = Vec::new();
    let mut dim: u64 = 1;
    let mut max_total: u32 = 0;
    for beta in &betas {
        match rank1_height(&braiding.bicharacter(beta, beta)) {
            Height::Finite(h) => {
                dim = dim.saturating_mul(h);
                let deg: u32 = beta
                    .to_i64_vec()
                    .iter()
                    .map(|&c| u32::try_from(c).expect("positive root"))
                    .sum();
                max_total += u32::try_from(h - 1).expect("small height") * deg;
                heights.push(h);
            }
            Height::Infinite => return Err(OracleError::NotFiniteDimensional),
        }
    }
    if dim > cap_dim {
        return Err(OracleError::DimCapExceeded { dim, cap: cap_dim });
    }

    let mut oracle = NicholsOracle::for_braiding(
        braiding,
        &OracleConfig {
            degree_cap: 2 * max_total,
            generic_value: config.generic_value,
        },
    );
    let zs = root_vectors(&oracle, &betas)?;
    let degs: Vec<Vec<i64>> = betas.iter().map(|b| b.to_i64_vec()).collect();

    struct BasisElement {
        content: Vec<u32>,
        coords: Vec<FieldElement>,
        tensor: TensorElement,
    }
    let mut basis: Vec<BasisElement> = Vec::new();
    let mut exps = vec![0u64; betas.len()];
    'outer: loop {
        if exps.iter().any(|&e| e > 0) {
            let mut tensor = TensorElement::unit();
            let mut content = vec![0i64; oracle.rank()];
            for (k, &e) in exps.iter().enumerate().rev() {
                if e > 0 {
                    tensor = tensor.concat_mul(&zs[k].pow(e as u32));
                    for (c, d) in content.iter_mut().zip(&degs[k]) {
                        *c += d * e as i64;
                    }
                }
            }
            let content: Vec<u32> = content
                .iter()
                .map(|&c| u32::try_from(c).expect("positive degrees"))
                .collect();
            let coords = oracle.symmetrize(&tensor)?;
            basis.push(BasisElement {
                content,
                coords,
                tensor,
            });
        }
        for k in 0..exps.len() {
            exps[k] += 1;
            if exps[k] < heights[k] {
                continue 'outer;
            }
            exps[k] = 0;
        }
        break;
    }
    assert_eq!(
        basis.len() as u64 + 1,
        dim,
        "PBW monomial count equals the algebra dimension"
    );

    // PBW property: monomials are independent per degree
    {
        let mut by_content: BTreeMap<Vec<u32>, Vec<usize>> = BTreeMap::new();
        for (k, b) in basis.iter().enumerate() {
            by_content.entry(b.content.clone()).or_default().push(k);
        }
        for (content, ks) in &by_content {
            let mut space = RowSpace::new(basis[ks[0]].coords.len());
            for &k in ks {
                space.insert(basis[k].coords.clone());
            }
            if space.rank() != ks.len() {
                return Err(OracleError::CheckFailed {
                    which: "PBW basis",
                    witness: content.clone(),
                });
            }
        }
    }

    let n = basis.len();
    let mut products: Vec<Vec<(Vec<u32>, Vec<FieldElement>)>> = Vec::with_capacity(n);
    for a in 0..n {
        let mut row = Vec::with_capacity(n);
        for b in 0..n {
            let content: Vec<u32> = basis[a]
                .content
                .iter()
                .zip(&basis[b].content)
                .map(|(p, q)| p + q)
                .collect();
            let coords = if content.iter().sum::<u32>() <= max_total {
                oracle.symmetrize(&basis[a].tensor.concat_mul(&basis[b].tensor))?
            } else {
                Vec::new()
            };
            row.push((content, coords));
        }
        products.push(row);
    }
    let mut legs: Vec<Vec<(Vec<u32>, Vec<FieldElement>)>> = Vec::with_capacity(n);
    for b in &basis {
        let words = oracle.words(&b.content);
        let mut per_letter = Vec::new();
        for j in 0..oracle.rank() {
            if b.content[j] == 0 {
                continue;
            }
            let mut child = b.content.clone();
            child[j] -= 1;
            let child_words = oracle.words(&child);
            let child_index: HashMap<Word, usize> = child_words
                .iter()
                .enumerate()
                .map(|(k, w)| (w.clone(), k))
                .collect();
            let leg =
                drop_last_letter(&b.coords, &words, &child_index, child_words.len(), j as u8);
            per_letter.push((child, leg));
        }
        legs.push(per_letter);
    }

    let in_span = |span: &BTreeMap<Vec<u32>, RowSpace>,
                   content: &Vec<u32>,
                   v: &[FieldElement]| {
        if v.iter().all(FieldElement::is_zero) {
            return true;
        }
        if content.iter().all(|&c| c == 0) {
            return true; // the scalars are always present
        }
        span.get(content).is_some_and(|s| s.contains(v))
    };

    let mut dim_vectors: BTreeSet<Vec<(Vec<u32>, usize)>> = BTreeSet::new();
    for mask in 0u64..(1u64 << n) {
        let members: Vec<usize> = (0..n).filter(|&k| mask & (1 << k) != 0).collect();
        let mut span: BTreeMap<Vec<u32>, RowSpace> = BTreeMap::new();
        for &k in &members {
            let b = &basis[k];
            span.entry(b.content.clone())
                .or_insert_with(|| RowSpace::new(b.coords.len()))
                .insert(b.coords.clone());
        }
        let mut closed = true;
        'check: for &a in &members {
            for &b in &members {
                let (content, coords) = &products[a][b];
                if !coords.is_empty() && !in_span(&span, content, coords) {
                    closed = false;
                    break 'check;
                }
            }
            for (content, leg) in &legs[a] {
                if !in_span(&span, content, leg) {
                    closed = false;
                    break 'check;
                }
            }
        }
        if closed {
            let dims: Vec<(Vec<u32>, usize)> =
                span.iter().map(|(c, s)| (c.clone(), s.rank())).collect();
            dim_vectors.insert(dims);
        }
    }
    Ok(dim_vectors.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ScalarValue;

    fn cartan_type_braiding(a: &[&[i64]], d: &[i64]) -> BraidingMatrix {
        let n = a.len();
        let q: Vec<Vec<ScalarValue>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| ScalarValue::generic_power(d[i] * a[i][j]))
                    .collect()
            })
            .collect();
        BraidingMatrix::new(q, false).unwrap()
    }

    #[test]
    fn a2_dims_by_total_degree_match_series() {
        // 1/((1-t)^2 (1-t^2)) = 1,2,4,6,9,12,16 at q = 2 and q = 3
        let q = cartan_type_braiding(&[&[2, -1], &[-1, 2]], &[1, 1]);
        for value in [DEFAULT_GENERIC_VALUE, GUARD_GENERIC_VALUE] {
            let config = OracleConfig {
                degree_cap: 6,
                generic_value: value,
            };
            let mut oracle = NicholsOracle::for_braiding(&q, &config);
            assert_eq!(
                oracle.dims_by_total_degree(6).unwrap(),
                vec![1, 2, 4, 6, 9, 12, 16]
            );
        }
    }

    #[test]
    fn primitive_components_are_one_dimensional() {
        let q = cartan_type_braiding(&[&[2, -1], &[-1, 2]], &[1, 1]);
        let mut oracle = NicholsOracle::for_braiding(&q, &OracleConfig::default());
        assert_eq!(oracle.symmetrizer_dim(&[1, 0]).unwrap(), 1);
        assert_eq!(oracle.symmetrizer_dim(&[0, 1]).unwrap(), 1);
    }

    #[test]
    fn minus_one_rank1_square_vanishes() {
        let q = BraidingMatrix::new(
            vec![vec![ScalarValue::root_of_unity(1, 2)]],
            false,
        )
        .unwrap();
        let mut oracle = NicholsOracle::for_braiding(&q, &OracleConfig::default());
        assert_eq!(oracle.symmetrizer_dim(&[2]).unwrap(), 0);
        assert_eq!(oracle.symmetrizer_dim(&[1]).unwrap(), 1);
    }

    #[test]
    fn adjoint_powers_in_a2() {
        let q = cartan_type_braiding(&[&[2, -1], &[-1, 2]], &[1, 1]);
        let mut oracle = NicholsOracle::for_braiding(&q, &OracleConfig::default());
        assert!(oracle.adjoint_power_nonzero(0, 1, 0).unwrap());
        assert!(oracle.adjoint_power_nonzero(0, 1, 1).unwrap());
        assert!(!oracle.adjoint_power_nonzero(0, 1, 2).unwrap());
        assert_eq!(
            cartan_entry_via_adjoint(&q, 0, 1, &OracleConfig::default()),
            Some(-1)
        );
    }

    #[test]
    fn decoupled_adjoint_vanishes_immediately() {
        let one = ScalarValue::generic_power(0);
        let q2 = ScalarValue::generic_power(2);
        let q = BraidingMatrix::new(
            vec![vec![q2.clone(), one.clone()], vec![one, q2]],
            false,
        )
        .unwrap();
        let mut oracle = NicholsOracle::for_braiding(&q, &OracleConfig::default());
        assert!(!oracle.adjoint_power_nonzero(0, 1, 1).unwrap());
        assert_eq!(
            cartan_entry_via_adjoint(&q, 0, 1, &OracleConfig::default()),
            Some(0)
        );
    }

    #[test]
    fn cap_is_enforced() {
        let q = cartan_type_braiding(&[&[2, -1], &[-1, 2]], &[1, 1]);
        let mut oracle = NicholsOracle::for_braiding(
            &q,
            &OracleConfig {
                degree_cap: 3,
                generic_value: 2,
            },
        );
        assert_eq!(
            oracle.symmetrizer_dim(&[2, 2]).unwrap_err(),
            OracleError::DegreeCapExceeded { degree: 4, cap: 3 }
        );
    }
}
