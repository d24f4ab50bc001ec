//! Weyl groupoid enumeration: morphisms, real roots, root-system and
//! Coxeter-relation checkers, and finiteness detection.
//!
//! Morphisms are identified by (source, target, lattice matrix), which is
//! the groupoid identity for arbitrary Cartan schemes. For schemes
//! admitting a root system this coincides with deduplication by the
//! canonical Lambda_+ key; the enumeration does not assume a root system
//! exists, so schemes like the 3-object example (whose real roots violate
//! (R1)) still enumerate correctly.

use crate::duflo::{lambda_plus_for_enumeration, LambdaSet};
use crate::gcm::{reflection_matrix, LatticeMap, RootVector};
use crate::scheme::CartanScheme;
use num_bigint::BigInt;
use std::collections::{BTreeSet, HashMap};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupoidError {
    #[error("groupoid not saturated within length bound {max_length}")]
    LengthBoundExceeded { max_length: usize },
    #[error("groupoid is not finite within the explored bounds")]
    NotFinite,
    #[error("object index {object} out of range")]
    UnknownObject { object: usize },
}

/// A Weyl groupoid morphism with target `target`, read as
/// `id_X s_{i_1} ... s_{i_m}` for the stored word.
#[derive(Debug, Clone)]
pub struct Morphism {
    pub source: usize,
    pub target: usize,
    /// Canonical word: lexicographically least among the shortest words.
    pub word: Vec<usize>,
    /// The composite as an element of `Aut(Z^theta)`.
    pub matrix: LatticeMap,
    pub length: usize,
    /// Canonical Lambda_+ set (parity definition over the word).
    pub lambda: LambdaSet,
}

impl Morphism {
    pub fn is_identity(&self) -> bool {
        self.length == 0
    }

    pub fn apply(&self, v: &RootVector) -> RootVector {
        self.matrix.apply(v)
    }
}

type MorphKey = (usize, usize, Vec<BigInt>);

/// Result of the breadth-first closure of a scheme's groupoid.
#[derive(Debug, Clone)]
pub struct GroupoidEnumeration {
    /// True when every object's morphism set saturated below the bound.
    pub complete: bool,
    pub max_length: usize,
    /// All discovered morphisms, sorted by (target, length, word).
    pub morphisms: Vec<Morphism>,
    by_target: Vec<Vec<usize>>,
    key_index: HashMap<MorphKey, usize>,
    /// Targets still producing new morphisms when the bound was hit.
    pub unsaturated_targets: BTreeSet<usize>,
}

impl GroupoidEnumeration {
    pub fn morphisms_to(&self, x: usize) -> impl Iterator<Item = &Morphism> {
        self.by_target[x].iter().map(|&k| &self.morphisms[k])
    }

    pub fn count_to(&self, x: usize) -> usize {
        self.by_target[x].len()
    }

    pub fn find(&self, source: usize, target: usize, matrix: &LatticeMap) -> Option<&Morphism> {
        self.key_index
            .get(&(target, source, matrix.flatten()))
            .map(|&k| &self.morphisms[k])
    }
}

/// Breadth-first closure over left extensions `w -> s_i w`, deduplicated
/// by (source, target, matrix). Discovery level equals the length.
pub fn enumerate_groupoid(scheme: &CartanScheme, max_length: usize) -> GroupoidEnumeration {
    struct Node {
        source: usize,
        target: usize,
        word: Vec<usize>,
        matrix: LatticeMap,
        length: usize,
    }

    let rank = scheme.rank();
    let n_objects = scheme.object_count();
    let mut nodes: Vec<Node> = Vec::new();
    let mut key_index: HashMap<MorphKey, usize> = HashMap::new();
    let mut level: Vec<usize> = Vec::new();

    for x in 0..n_objects {
        let matrix = LatticeMap::identity(rank);
        key_index.insert((x, x, matrix.flatten()), nodes.len());
        level.push(nodes.len());
        nodes.push(Node {
            source: x,
            target: x,
            word: Vec::new(),
            matrix,
            length: 0,
        });
    }

    // reflection matrices per (object, i); row i agrees at x and r_i(x) by (C2)
    let refl: Vec<Vec<LatticeMap>> = (0..n_objects)
        .map(|x| {
            (0..rank)
                .map(|i| reflection_matrix(scheme.cartan(x), i).expect("index in range"))
                .collect()
        })
        .collect();

    let mut complete = true;
    let mut unsaturated_targets = BTreeSet::new();
    let mut length = 0usize;

    while !level.is_empty() {
        let next_length = length + 1;
        let overflow = next_length > max_length;
        let mut next_level: Vec<usize> = Vec::new();
        for &k in &level {
            for i in 0..rank {
                let (target, source) = (nodes[k].target, nodes[k].source);
                let new_target = scheme.reflect_object(i, target);
                let matrix = refl[target][i].compose(&nodes[k].matrix);
                let key = (new_target, source, matrix.flatten());
                let mut word = Vec::with_capacity(nodes[k].word.len() + 1);
                word.push(i);
                word.extend_from_slice(&nodes[k].word);
                match key_index.get(&key) {
                    Some(&existing) => {
                        if nodes[existing].length == next_length && word < nodes[existing].word {
                            nodes[existing].word = word;
                        }
                    }
                    None => {
                        if overflow {
                            complete = false;
                            unsaturated_targets.insert(new_target);
                            continue;
                        }
                        key_index.insert(key, nodes.len());
                        next_level.push(nodes.len());
                        nodes.push(Node {
                            source,
                            target: new_target,
                            word,
                            matrix,
                            length: next_length,
                        });
                    }
                }
            }
        }
        if overflow {
            break;
        }
        level = next_level;
        length = next_length;
    }

    let mut order: Vec<usize> = (0..nodes.len()).collect();
    order.sort_by(|&a, &b| {
        (nodes[a].target, nodes[a].length, &nodes[a].word)
            .cmp(&(nodes[b].target, nodes[b].length, &nodes[b].word))
    });

    let mut morphisms = Vec::with_capacity(nodes.len());
    let mut by_target = vec![Vec::new(); n_objects];
    let mut final_key_index = HashMap::with_capacity(nodes.len());
    for (new_idx, &old_idx) in order.iter().enumerate() {
        let node = &nodes[old_idx];
        let lambda = lambda_plus_for_enumeration(scheme, node.target, &node.word);
        debug_assert_eq!(
            lambda.base(),
            node.target,
            "lambda base must match morphism target"
        );
        by_target[node.target].push(new_idx);
        final_key_index.insert((node.target, node.source, node.matrix.flatten()), new_idx);
        morphisms.push(Morphism {
            source: node.source,
            target: node.target,
            word: node.word.clone(),
            matrix: node.matrix.clone(),
            length: node.length,
            lambda,
        });
    }

    GroupoidEnumeration {
        complete,
        max_length,
        morphisms,
        by_target,
        key_index: final_key_index,
        unsaturated_targets,
    }
}

/// All morphisms with target `x`, complete only if the groupoid saturates
/// below `max_length`.
pub fn enumerate_morphisms_to(
    scheme: &CartanScheme,
    x: usize,
    max_length: usize,
) -> Result<Vec<Morphism>, GroupoidError> {
    if x >= scheme.object_count() {
        return Err(GroupoidError::UnknownObject { object: x });
    }
    let enumeration = enumerate_groupoid(scheme, max_length);
    if !enumeration.complete {
        return Err(GroupoidError::LengthBoundExceeded { max_length });
    }
    Ok(enumeration.morphisms_to(x).cloned().collect())
}

/// The real roots of an object: `{ w(alpha_i) }` over all morphisms into it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealRootSet {
    pub object: usize,
    pub roots: BTreeSet<RootVector>,
}

impl RealRootSet {
    pub fn positive_roots(&self) -> Vec<RootVector> {
        self.roots.iter().filter(|r| r.is_positive()).cloned().collect()
    }

    /// (R1)-style symmetry: checked, not assumed.
    pub fn is_negation_closed(&self) -> bool {
        self.roots.iter().all(|r| self.roots.contains(&r.negate()))
    }
}

pub fn real_roots(
    scheme: &CartanScheme,
    x: usize,
    max_length: usize,
) -> Result<RealRootSet, GroupoidError> {
    let morphisms = enumerate_morphisms_to(scheme, x, max_length)?;
    let rank = scheme.rank();
    let mut roots = BTreeSet::new();
    for w in &morphisms {
        for i in 0..rank {
            roots.insert(w.apply(&RootVector::basis(rank, i)));
        }
    }
    Ok(RealRootSet { object: x, roots })
}

/// Per-object root sets used by the axiom checkers; canonical input is
/// [`real_roots`] output for every object.
pub type RootSets = Vec<BTreeSet<RootVector>>;

pub fn real_root_sets(
    scheme: &CartanScheme,
    max_length: usize,
) -> Result<RootSets, GroupoidError> {
    (0..scheme.object_count())
        .map(|x| real_roots(scheme, x, max_length).map(|r| r.roots))
        .collect()
}

/// Table of `m_ij^X = #(roots^X in N_0 alpha_i + N_0 alpha_j)`.
pub type MTable = Vec<Vec<Vec<usize>>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootSystemViolation {
    R1 {
        object: usize,
        witness: RootVector,
    },
    R2 {
        object: usize,
        i: usize,
        witness: Option<RootVector>,
    },
    R3 {
        object: usize,
        i: usize,
    },
    R4 {
        object: usize,
        i: usize,
        j: usize,
        m: usize,
    },
}

impl std::fmt::Display for RootSystemViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        // objects by index, generators 1-based to match word notation
        match self {
            RootSystemViolation::R1 { object, witness } => {
                write!(f, "(R1) object index {object}: root {witness} breaks the sign split")
            }
            RootSystemViolation::R2 { object, i, witness } => match witness {
                Some(v) => write!(f, "(R2) object index {object}, axis {}: extra root {v}", i + 1),
                None => write!(f, "(R2) object index {object}, axis {}: +-alpha missing", i + 1),
            },
            RootSystemViolation::R3 { object, i } => {
                write!(
                    f,
                    "(R3) object index {object}: s{} does not map the roots onto the reflected object's roots",
                    i + 1
                )
            }
            RootSystemViolation::R4 { object, i, j, m } => {
                write!(
                    f,
                    "(R4) object index {object}: (r{} r{})^{m} is not the identity",
                    i + 1,
                    j + 1
                )
            }
        }
    }
}

/// Literal per-axiom report for (R1)-(R4).
#[derive(Debug, Clone)]
pub struct RootSystemReport {
    pub violations: Vec<RootSystemViolation>,
    pub m_table: MTable,
}

impl RootSystemReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations_for_axiom(&self, axiom: u8) -> Vec<&RootSystemViolation> {
        self.violations
            .iter()
            .filter(|v| {
                matches!(
                    (axiom, v),
                    (1, RootSystemViolation::R1 { .. })
                        | (2, RootSystemViolation::R2 { .. })
                        | (3, RootSystemViolation::R3 { .. })
                        | (4, RootSystemViolation::R4 { .. })
                )
            })
            .collect()
    }
}

/// Tests the root-system axioms literally on the given per-object sets.
pub fn check_root_system(scheme: &CartanScheme, roots: &RootSets) -> RootSystemReport {
    let rank = scheme.rank();
    let n = scheme.object_count();
    assert_eq!(roots.len(), n, "one root set per object required");
    let mut violations = Vec::new();

    // (R1): every root positive or negative, and the set is negation-closed
    for (x, set) in roots.iter().enumerate() {
        for v in set {
            let sign_split = v.is_positive() || v.is_negative();
            if !sign_split || !set.contains(&v.negate()) {
                violations.push(RootSystemViolation::R1 {
                    object: x,
                    witness: v.clone(),
                });
            }
        }
    }

    // (R2): roots on the i-th axis are exactly {alpha_i, -alpha_i}
    for (x, set) in roots.iter().enumerate() {
        for i in 0..rank {
            let alpha = RootVector::basis(rank, i);
            let axis: Vec<&RootVector> = set
                .iter()
                .filter(|v| {
                    (0..rank).all(|j| j == i || v.coord(j) == &BigInt::from(0))
                })
                .collect();
            if !set.contains(&alpha) || !set.contains(&alpha.negate()) {
                violations.push(RootSystemViolation::R2 {
                    object: x,
                    i,
                    witness: None,
                });
            }
            for v in axis {
                if *v != alpha && *v != alpha.negate() {
                    violations.push(RootSystemViolation::R2 {
                        object: x,
                        i,
                        witness: Some(v.clone()),
                    });
                }
            }
        }
    }

    // (R3): s_i^X(roots^X) = roots^{r_i(X)}
    for x in 0..n {
        for i in 0..rank {
            let s = reflection_matrix(scheme.cartan(x), i).expect("index in range");
            let image: BTreeSet<RootVector> = roots[x].iter().map(|v| s.apply(v)).collect();
            if image != roots[scheme.reflect_object(i, x)] {
                violations.push(RootSystemViolation::R3 { object: x, i });
            }
        }
    }

    // (R4): (r_i r_j)^{m_ij}(X) = X, with m_ij counted from the given sets
    let mut m_table = vec![vec![vec![0usize; rank]; rank]; n];
    for x in 0..n {
        for i in 0..rank {
            for j in 0..rank {
                let m = roots[x]
                    .iter()
                    .filter(|v| {
                        (0..rank).all(|k| k == i || k == j || v.coord(k) == &BigInt::from(0))
                            && !v.coord(i).lt(&BigInt::from(0))
                            && !v.coord(j).lt(&BigInt::from(0))
                    })
                    .count();
                m_table[x][i][j] = m;
                if i != j {
                    let mut y = x;
                    for _ in 0..m {
                        y = scheme.reflect_object(i, scheme.reflect_object(j, y));
                    }
                    if y != x {
                        violations.push(RootSystemViolation::R4 { object: x, i, j, m });
                    }
                }
            }
        }
    }

    RootSystemReport {
        violations,
        m_table,
    }
}

#[derive(Debug, Clone)]
pub struct CoxeterReport {
    /// (object, i, j) triples where the Coxeter relation fails.
    pub violations: Vec<(usize, usize, usize)>,
    pub relations_checked: usize,
}

impl CoxeterReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Verifies the Coxeter relations: for each object `X` and pair `i, j`
/// with finite `m = m_ij^X`, the alternating `2m`-factor product of
/// reflections along the object orbit is the identity and the orbit
/// returns to `X`. For `i = j` the relation is `s_i^{r_i(X)} s_i^X = id`.
pub fn check_coxeter_relations(scheme: &CartanScheme, m_table: &MTable) -> CoxeterReport {
    let rank = scheme.rank();
    let mut violations = Vec::new();
    let mut relations_checked = 0;
    for x in 0..scheme.object_count() {
        for i in 0..rank {
            for j in 0..rank {
                let m = if i == j { 1 } else { m_table[x][i][j] };
                if m == 0 {
                    continue;
                }
                relations_checked += 1;
                // walk from X applying s_j, s_i, s_j, ... (2m factors)
                let mut object = x;
                let mut product = LatticeMap::identity(rank);
                for step in 0..2 * m {
                    let index = if step % 2 == 0 { j } else { i };
                    let s = reflection_matrix(scheme.cartan(object), index)
                        .expect("index in range");
                    product = s.compose(&product);
                    object = scheme.reflect_object(index, object);
                }
                if object != x || !product.is_identity() {
                    violations.push((x, i, j));
                }
            }
        }
    }
    CoxeterReport {
        violations,
        relations_checked,
    }
}

/// Finiteness verdict for one connected component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComponentVerdict {
    Finite {
        /// #Homto(X), equal for every X in the component.
        homto_count: usize,
        /// #real roots per object, equal across the component.
        real_root_count: usize,
        longest_length: usize,
    },
    UnknownWithinBounds {
        explored_length: usize,
    },
}

#[derive(Debug, Clone)]
pub struct FinitenessReport {
    /// (sorted object indices, verdict) per connected component.
    pub components: Vec<(Vec<usize>, ComponentVerdict)>,
}

impl FinitenessReport {
    pub fn all_finite(&self) -> bool {
        self.components
            .iter()
            .all(|(_, v)| matches!(v, ComponentVerdict::Finite { .. }))
    }
}

/// Decides finiteness per connected component within the length bound.
/// A component that fails to saturate gets an explicit "unknown" verdict,
/// never "infinite".
pub fn is_finite(scheme: &CartanScheme, max_length: usize) -> FinitenessReport {
    let enumeration = enumerate_groupoid(scheme, max_length);
    let rank = scheme.rank();
    let mut components = Vec::new();
    for component in scheme.connected_components() {
        let saturated = enumeration.complete
            || component
                .iter()
                .all(|x| !enumeration.unsaturated_targets.contains(x));
        if !saturated {
            components.push((
                component,
                ComponentVerdict::UnknownWithinBounds {
                    explored_length: max_length,
                },
            ));
            continue;
        }
        let counts: Vec<usize> = component.iter().map(|&x| enumeration.count_to(x)).collect();
        assert!(
            counts.windows(2).all(|w| w[0] == w[1]),
            "morphism counts must agree within a connected component"
        );
        let root_counts: Vec<usize> = component
            .iter()
            .map(|&x| {
                let mut roots = BTreeSet::new();
                for w in enumeration.morphisms_to(x) {
                    for i in 0..rank {
                        roots.insert(w.apply(&RootVector::basis(rank, i)));
                    }
                }
                roots.len()
            })
            .collect();
        assert!(
            root_counts.windows(2).all(|w| w[0] == w[1]),
            "real root counts must agree within a connected component"
        );
        let longest = component
            .iter()
            .flat_map(|&x| enumeration.morphisms_to(x))
            .map(|w| w.length)
            .max()
            .unwrap_or(0);
        components.push((
            component,
            ComponentVerdict::Finite {
                homto_count: counts[0],
                real_root_count: root_counts[0],
                longest_length: longest,
            },
        ));
    }
    FinitenessReport { components }
}

/// The maximal-length morphisms into `x`; for finite root systems this is
/// a single element whose Lambda_+ is the full positive root set.
pub fn longest_elements(
    scheme: &CartanScheme,
    x: usize,
    max_length: usize,
) -> Result<Vec<Morphism>, GroupoidError> {
    let morphisms = enumerate_morphisms_to(scheme, x, max_length)
        .map_err(|_| GroupoidError::NotFinite)?;
    let max = morphisms.iter().map(|w| w.length).max().unwrap_or(0);
    Ok(morphisms.into_iter().filter(|w| w.length == max).collect())
}
