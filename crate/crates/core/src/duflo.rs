//! The Lambda_+ calculus and the right Duflo (weak) order.
//!
//! `Lambda_+` of a word is computed two ways: the parity rule over the
//! root sequence `beta_k` (the defining form, [`lambda_plus`]) and the
//! first-letter recursion ([`lambda_plus_recursive`]). For schemes whose
//! real roots form a root system the two agree; the property suite checks
//! this on random words.

use crate::gcm::{reflection_matrix, LatticeMap, RootVector};
use crate::groupoid::{enumerate_morphisms_to, Morphism};
use crate::scheme::CartanScheme;
use std::collections::HashMap;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DufloError {
    #[error("invalid word: letter {letter} at position {position} out of range for rank {rank}")]
    InvalidWord {
        letter: usize,
        position: usize,
        rank: usize,
    },
    #[error("morphisms have different targets ({0} vs {1})")]
    TargetMismatch(usize, usize),
    #[error("groupoid not finite within bounds; cannot build the poset")]
    NotFinite,
    #[error("generator covers disagree with the transitive reduction of the subset relation")]
    HasseMismatch,
    #[error("Lambda_+ does not separate morphisms at this object; subset relation is not antisymmetric")]
    NotAPartialOrder,
}

/// Canonical sorted set of positive roots attached to a word/morphism.
/// For root systems its size is the length of the morphism and it
/// determines the morphism together with the target.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LambdaSet {
    base: usize,
    roots: Vec<RootVector>,
}

impl LambdaSet {
    pub fn new(base: usize, mut roots: Vec<RootVector>) -> Self {
        roots.sort();
        roots.dedup();
        LambdaSet { base, roots }
    }

    pub fn empty(base: usize) -> Self {
        LambdaSet {
            base,
            roots: Vec::new(),
        }
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn roots(&self) -> &[RootVector] {
        &self.roots
    }

    pub fn contains(&self, v: &RootVector) -> bool {
        self.roots.binary_search(v).is_ok()
    }

    /// Subset test by a single merge walk over the sorted vectors.
    pub fn is_subset_of(&self, other: &LambdaSet) -> bool {
        if self.roots.len() > other.roots.len() {
            return false;
        }
        let mut it = other.roots.iter();
        'outer: for v in &self.roots {
            for w in it.by_ref() {
                match w.cmp(v) {
                    std::cmp::Ordering::Less => continue,
                    std::cmp::Ordering::Equal => continue 'outer,
                    std::cmp::Ordering::Greater => return false,
                }
            }
            return false;
        }
        true
    }

    pub fn with_root(&self, v: RootVector) -> LambdaSet {
        let mut roots = self.roots.clone();
        if let Err(pos) = roots.binary_search(&v) {
            roots.insert(pos, v);
        }
        LambdaSet {
            base: self.base,
            roots,
        }
    }
}

fn validate_word(scheme: &CartanScheme, word: &[usize]) -> Result<(), DufloError> {
    let rank = scheme.rank();
    for (position, &letter) in word.iter().enumerate() {
        if letter >= rank {
            return Err(DufloError::InvalidWord {
                letter,
                position,
                rank,
            });
        }
    }
    Ok(())
}

/// The root sequence `beta_k = s_{i_1} ... s_{i_{k-1}}(alpha_{i_k})` of a
/// word read at target `x`, together with the object walk.
pub fn beta_sequence(
    scheme: &CartanScheme,
    x: usize,
    word: &[usize],
) -> Result<Vec<RootVector>, DufloError> {
    validate_word(scheme, word)?;
    let rank = scheme.rank();
    let mut betas = Vec::with_capacity(word.len());
    let mut prefix = LatticeMap::identity(rank);
    let mut object = x;
    for &i in word {
        betas.push(prefix.apply(&RootVector::basis(rank, i)));
        let s = reflection_matrix(scheme.cartan(object), i).expect("validated letter");
        prefix = prefix.compose(&s);
        object = scheme.reflect_object(i, object);
    }
    Ok(betas)
}

/// The object walk of a word at target `x`; the last entry is the source.
pub fn object_walk(scheme: &CartanScheme, x: usize, word: &[usize]) -> Vec<usize> {
    let mut walk = Vec::with_capacity(word.len() + 1);
    walk.push(x);
    let mut object = x;
    for &i in word {
        object = scheme.reflect_object(i, object);
        walk.push(object);
    }
    walk
}

/// `Lambda_+` by the parity definition: positive vectors `v` such that
/// `#{k : beta_k = +-v}` is odd.
pub fn lambda_plus(
    scheme: &CartanScheme,
    x: usize,
    word: &[usize],
) -> Result<LambdaSet, DufloError> {
    let betas = beta_sequence(scheme, x, word)?;
    let mut counts: HashMap<RootVector, usize> = HashMap::new();
    for beta in &betas {
        if let Some(rep) = beta.positive_representative() {
            *counts.entry(rep).or_insert(0) += 1;
        }
    }
    let roots: Vec<RootVector> = counts
        .into_iter()
        .filter_map(|(v, c)| (c % 2 == 1).then_some(v))
        .collect();
    Ok(LambdaSet::new(x, roots))
}

/// Infallible wrapper for the enumeration path; the words there are
/// produced internally and always valid.
pub(crate) fn lambda_plus_for_enumeration(
    scheme: &CartanScheme,
    x: usize,
    word: &[usize],
) -> LambdaSet {
    lambda_plus(scheme, x, word).expect("enumeration words are valid")
}

/// `Lambda_+` by the first-letter recursion:
/// `s_{i_1}(L') + {alpha_{i_1}}` when `alpha_{i_1}` is not in `L'`, and
/// `s_{i_1}(L' minus {alpha_{i_1}})` otherwise, folded from the right end
/// of the word.
pub fn lambda_plus_recursive(
    scheme: &CartanScheme,
    x: usize,
    word: &[usize],
) -> Result<LambdaSet, DufloError> {
    validate_word(scheme, word)?;
    let rank = scheme.rank();
    let walk = object_walk(scheme, x, word);
    let mut set: Vec<RootVector> = Vec::new();
    for k in (0..word.len()).rev() {
        let i = word[k];
        let alpha = RootVector::basis(rank, i);
        let s = reflection_matrix(scheme.cartan(walk[k]), i).expect("validated letter");
        let had_alpha = set.contains(&alpha);
        let mut next: Vec<RootVector> = set
            .iter()
            .filter(|v| !had_alpha || **v != alpha)
            .map(|v| s.apply(v))
            .collect();
        if !had_alpha {
            next.push(alpha);
        }
        set = next;
    }
    Ok(LambdaSet::new(x, set))
}

/// A word is reduced exactly when its `Lambda_+` has as many elements as
/// the word has letters.
pub fn is_reduced(scheme: &CartanScheme, x: usize, word: &[usize]) -> Result<bool, DufloError> {
    Ok(lambda_plus(scheme, x, word)?.len() == word.len())
}

/// Two words at the same target present the same morphism iff their
/// `Lambda_+` sets agree; matrices and sources are asserted to match.
pub fn morphisms_equal(
    scheme: &CartanScheme,
    x: usize,
    word1: &[usize],
    word2: &[usize],
) -> Result<bool, DufloError> {
    let l1 = lambda_plus(scheme, x, word1)?;
    let l2 = lambda_plus(scheme, x, word2)?;
    if l1 != l2 {
        return Ok(false);
    }
    let rank = scheme.rank();
    let matrix = |word: &[usize]| {
        let mut prefix = LatticeMap::identity(rank);
        let mut object = x;
        for &i in word {
            let s = reflection_matrix(scheme.cartan(object), i).expect("validated letter");
            prefix = prefix.compose(&s);
            object = scheme.reflect_object(i, object);
        }
        (prefix, object)
    };
    let (m1, s1) = matrix(word1);
    let (m2, s2) = matrix(word2);
    assert!(
        m1 == m2 && s1 == s2,
        "equal Lambda_+ must imply equal matrices and sources"
    );
    Ok(true)
}

/// Right Duflo order on morphisms with a common target:
/// `w1 <=_D w2` iff `Lambda_+(w1)` is a subset of `Lambda_+(w2)`.
pub fn leq_duflo(w1: &Morphism, w2: &Morphism) -> Result<bool, DufloError> {
    if w1.target != w2.target {
        return Err(DufloError::TargetMismatch(w1.target, w2.target));
    }
    Ok(w1.lambda.is_subset_of(&w2.lambda))
}

/// Word-level Duflo comparison at a common target.
pub fn leq_duflo_words(
    scheme: &CartanScheme,
    x: usize,
    word1: &[usize],
    word2: &[usize],
) -> Result<bool, DufloError> {
    let l1 = lambda_plus(scheme, x, word1)?;
    let l2 = lambda_plus(scheme, x, word2)?;
    Ok(l1.is_subset_of(&l2))
}

/// The right Duflo order on `Homto(X)` with covering edges.
#[derive(Debug, Clone)]
pub struct DufloPoset {
    pub target: usize,
    /// Nodes sorted by (length, word); node 0 is the identity.
    pub nodes: Vec<Morphism>,
    /// Full relation: `leq[a][b]` iff node `a` <=_D node `b`.
    pub leq: Vec<Vec<bool>>,
    /// Covering edges `(lower, upper, generator)`, sorted.
    pub hasse: Vec<(usize, usize, usize)>,
}

impl DufloPoset {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Index of the unique maximal node, if unique.
    pub fn maximum(&self) -> Option<usize> {
        let maximal: Vec<usize> = (0..self.nodes.len())
            .filter(|&a| {
                (0..self.nodes.len()).all(|b| b == a || !self.leq[a][b])
            })
            .collect();
        (maximal.len() == 1).then(|| maximal[0])
    }

    /// Nodes per length; the poset is graded by word length.
    pub fn rank_sizes(&self) -> Vec<usize> {
        let max = self.nodes.iter().map(|n| n.length).max().unwrap_or(0);
        let mut sizes = vec![0usize; max + 1];
        for n in &self.nodes {
            sizes[n.length] += 1;
        }
        sizes
    }

    /// DOT rendering of the Hasse diagram; nodes are labeled by reduced
    /// word and |Lambda_+|, ordering is stable.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        out.push_str("digraph duflo {\n  rankdir=BT;\n  node [shape=box];\n");
        for (k, node) in self.nodes.iter().enumerate() {
            let word = if node.word.is_empty() {
                "e".to_string()
            } else {
                node.word
                    .iter()
                    .map(|i| format!("s{}", i + 1))
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            let _ = writeln!(out, "  n{k} [label=\"{word}|{}\"];", node.lambda.len());
        }
        for (a, b, i) in &self.hasse {
            let _ = writeln!(out, "  n{a} -> n{b} [label=\"s{}\"];", i + 1);
        }
        out.push_str("}\n");
        out
    }
}

/// Transitive reduction of a strict partial order given as a full relation.
fn transitive_reduction(leq: &[Vec<bool>]) -> Vec<(usize, usize)> {
    let n = leq.len();
    let mut edges = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a == b || !leq[a][b] {
                continue;
            }
            let implied = (0..n).any(|c| c != a && c != b && leq[a][c] && leq[c][b]);
            if !implied {
                edges.push((a, b));
            }
        }
    }
    edges.sort_unstable();
    edges
}

/// Builds the Duflo poset of `Homto(X)`.
///
/// The Hasse diagram is computed from generator covers `w -> w s_j` with
/// the length incremented by one, then validated against the transitive
/// reduction of the subset relation; a mismatch is a hard error.
pub fn build_poset(
    scheme: &CartanScheme,
    x: usize,
    max_length: usize,
) -> Result<DufloPoset, DufloError> {
    let nodes = enumerate_morphisms_to(scheme, x, max_length).map_err(|_| DufloError::NotFinite)?;
    let n = nodes.len();

    let mut leq = vec![vec![false; n]; n];
    for a in 0..n {
        for b in 0..n {
            leq[a][b] = nodes[a].lambda.is_subset_of(&nodes[b].lambda);
        }
    }
    for a in 0..n {
        for b in 0..n {
            if a != b && leq[a][b] && leq[b][a] {
                return Err(DufloError::NotAPartialOrder);
            }
        }
    }

    let mut by_key: HashMap<(usize, Vec<num_bigint::BigInt>), usize> = HashMap::new();
    for (k, node) in nodes.iter().enumerate() {
        by_key.insert((node.source, node.matrix.flatten()), k);
    }

    let mut hasse = Vec::new();
    for (a, node) in nodes.iter().enumerate() {
        for j in 0..scheme.rank() {
            // right extension w s_j: source moves to r_j(source)
            let s = reflection_matrix(scheme.cartan(node.source), j).expect("index in range");
            let matrix = node.matrix.compose(&s);
            let source = scheme.reflect_object(j, node.source);
            let b = *by_key
                .get(&(source, matrix.flatten()))
                .expect("complete enumeration contains every right extension");
            if nodes[b].length == node.length + 1 {
                hasse.push((a, b, j));
            }
        }
    }
    hasse.sort_unstable();

    let reduction = transitive_reduction(&leq);
    let cover_pairs: Vec<(usize, usize)> = hasse.iter().map(|&(a, b, _)| (a, b)).collect();
    if reduction != cover_pairs {
        return Err(DufloError::HasseMismatch);
    }

    Ok(DufloPoset {
        target: x,
        nodes,
        leq,
        hasse,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gcm::validate_gcm;
    use crate::scheme::{build_from_matrices, three_object_example};

    fn single_object(rows: Vec<Vec<i64>>) -> CartanScheme {
        let a = validate_gcm(rows).unwrap();
        let maps = vec![vec![1]; a.rank()];
        build_from_matrices(vec![(1, a)], maps).unwrap()
    }

    fn a2() -> CartanScheme {
        single_object(vec![vec![2, -1], vec![-1, 2]])
    }

    #[test]
    fn lambda_of_empty_word_is_empty() {
        let scheme = a2();
        assert!(lambda_plus(&scheme, 0, &[]).unwrap().is_empty());
    }

    #[test]
    fn lambda_of_sisi_is_empty() {
        let scheme = a2();
        // Lambda(i,i) = (alpha_i, -alpha_i): both cancel in the parity rule
        let betas = beta_sequence(&scheme, 0, &[0, 0]).unwrap();
        assert_eq!(betas[0], RootVector::from_i64(&[1, 0]));
        assert_eq!(betas[1], RootVector::from_i64(&[-1, 0]));
        assert!(lambda_plus(&scheme, 0, &[0, 0]).unwrap().is_empty());
    }

    #[test]
    fn lambda_of_121_in_a2() {
        let scheme = a2();
        let l = lambda_plus(&scheme, 0, &[0, 1, 0]).unwrap();
        let expected = LambdaSet::new(
            0,
            vec![
                RootVector::from_i64(&[1, 0]),
                RootVector::from_i64(&[1, 1]),
                RootVector::from_i64(&[0, 1]),
            ],
        );
        assert_eq!(l, expected);
    }

    #[test]
    fn parity_and_recursion_agree_on_a2_words() {
        let scheme = a2();
        for word in [
            vec![],
            vec![0],
            vec![0, 1],
            vec![0, 1, 0],
            vec![1, 0, 1],
            vec![0, 0, 1, 1, 0],
            vec![1, 0, 1, 0, 1, 0],
        ] {
            assert_eq!(
                lambda_plus(&scheme, 0, &word).unwrap(),
                lambda_plus_recursive(&scheme, 0, &word).unwrap(),
                "word {word:?}"
            );
        }
    }

    #[test]
    fn reducedness() {
        let scheme = a2();
        assert!(is_reduced(&scheme, 0, &[0, 1, 0]).unwrap());
        assert!(!is_reduced(&scheme, 0, &[0, 0]).unwrap());
        // l((s1 s2)^2) = 2 < 4
        assert!(!is_reduced(&scheme, 0, &[0, 1, 0, 1]).unwrap());
    }

    #[test]
    fn braid_relation_via_lambda() {
        let scheme = a2();
        assert!(morphisms_equal(&scheme, 0, &[0, 1, 0], &[1, 0, 1]).unwrap());
        assert!(!morphisms_equal(&scheme, 0, &[0], &[1]).unwrap());
        assert!(morphisms_equal(&scheme, 0, &[0, 0], &[]).unwrap());
    }

    #[test]
    fn invalid_word_rejected() {
        let scheme = a2();
        assert!(matches!(
            lambda_plus(&scheme, 0, &[0, 7]),
            Err(DufloError::InvalidWord { letter: 7, position: 1, .. })
        ));
    }

    #[test]
    fn duflo_examples_in_a2() {
        let scheme = a2();
        // s1 <=_D s1 s2 but s1 !<=_D s2 s1
        assert!(leq_duflo_words(&scheme, 0, &[0], &[0, 1]).unwrap());
        assert!(!leq_duflo_words(&scheme, 0, &[0], &[1, 0]).unwrap());
        // id below everything
        assert!(leq_duflo_words(&scheme, 0, &[], &[1, 0]).unwrap());
        // everything below the longest element
        for word in [vec![], vec![0], vec![1], vec![0, 1], vec![1, 0]] {
            assert!(leq_duflo_words(&scheme, 0, &word, &[0, 1, 0]).unwrap());
        }
    }

    #[test]
    fn a2_poset_has_six_nodes_six_edges() {
        let scheme = a2();
        let poset = build_poset(&scheme, 0, 10).unwrap();
        assert_eq!(poset.node_count(), 6);
        assert_eq!(poset.hasse.len(), 6);
        assert_eq!(poset.maximum(), Some(5));
        assert_eq!(poset.rank_sizes(), vec![1, 2, 2, 1]);
    }

    #[test]
    fn rank1_poset_is_a_chain_of_two() {
        let scheme = single_object(vec![vec![2]]);
        let poset = build_poset(&scheme, 0, 10).unwrap();
        assert_eq!(poset.node_count(), 2);
        assert_eq!(poset.hasse.len(), 1);
    }

    #[test]
    fn three_object_poset_is_refused() {
        // Without a root system the subset relation is strictly weaker
        // than the length-additive Duflo order (7 comparable pairs at X_1
        // have non-nested Lambda_+ sets), so the consistency gate fires.
        let scheme = three_object_example();
        assert_eq!(
            build_poset(&scheme, 0, 20).unwrap_err(),
            DufloError::HasseMismatch
        );
    }

    #[test]
    fn dot_output_is_stable() {
        let scheme = single_object(vec![vec![2]]);
        let poset = build_poset(&scheme, 0, 10).unwrap();
        let dot = poset.to_dot();
        assert!(dot.contains("n0 [label=\"e|0\"]"));
        assert!(dot.contains("n1 [label=\"s1|1\"]"));
        assert!(dot.contains("n0 -> n1 [label=\"s1\"]"));
    }

    #[test]
    fn affine_scheme_poset_not_finite() {
        let scheme = single_object(vec![vec![2, -2], vec![-2, 2]]);
        assert!(matches!(
            build_poset(&scheme, 0, 8),
            Err(DufloError::NotFinite)
        ));
    }
}
