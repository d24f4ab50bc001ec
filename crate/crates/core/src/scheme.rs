//! Cartan schemes: objects with generalized Cartan matrices and involutive
//! object maps `r_i`, either given explicitly or generated by closing a
//! diagonal braiding under reflections.

use crate::braiding::{diagonal_cartan_entry, reflect_braiding, BraidingError, BraidingMatrix, TwistKey};
use crate::gcm::GeneralizedCartanMatrix;
use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

pub const DEFAULT_EXPONENT_BOUND: u64 = 8;
pub const DEFAULT_MAX_OBJECTS: usize = 10_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SchemeError {
    #[error("object {object} is not {i}-finite: Cartan entry ({i},{j}) exceeds the exponent bound")]
    NotIFinite { object: usize, i: usize, j: usize },
    #[error("reflection closure exceeds {max_objects} objects")]
    TooManyObjects { max_objects: usize },
    #[error("axiom (C1) fails: r_{i}^2 != id at object {object}")]
    AxiomC1Violation { i: usize, object: usize },
    #[error("axiom (C2) fails: c_{i}{j} differs between object {object} and r_{i}(object)")]
    AxiomC2Violation { i: usize, j: usize, object: usize },
    #[error("object map r_{i} is not total: no entry for object {object}")]
    MapNotTotal { i: usize, object: usize },
    #[error("unknown object label {label}")]
    UnknownLabel { label: u32 },
    #[error("duplicate object label {label}")]
    DuplicateLabel { label: u32 },
    #[error("all objects must share rank {expected}, object {object} has rank {got}")]
    RankMismatch {
        object: usize,
        expected: usize,
        got: usize,
    },
    #[error("expected {expected} object maps, got {got}")]
    BadMapCount { expected: usize, got: usize },
    #[error(transparent)]
    Braiding(#[from] BraidingError),
}

/// One object of a Cartan scheme.
#[derive(Debug, Clone)]
pub struct SchemeObject {
    /// Canonical index inside the scheme.
    pub index: usize,
    /// User-facing label (generated schemes label objects by index).
    pub label: u32,
    pub cartan: GeneralizedCartanMatrix,
    pub braiding: Option<BraidingMatrix>,
    pub twist_key: Option<TwistKey>,
}

/// A validated Cartan scheme: axioms (C1) and (C2) hold.
#[derive(Debug, Clone)]
pub struct CartanScheme {
    rank: usize,
    objects: Vec<SchemeObject>,
    /// maps[i][x] = index of r_i(object x)
    maps: Vec<Vec<usize>>,
}

impl CartanScheme {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn objects(&self) -> &[SchemeObject] {
        &self.objects
    }

    pub fn object(&self, index: usize) -> &SchemeObject {
        &self.objects[index]
    }

    pub fn reflect_object(&self, i: usize, x: usize) -> usize {
        self.maps[i][x]
    }

    pub fn cartan(&self, x: usize) -> &GeneralizedCartanMatrix {
        &self.objects[x].cartan
    }

    pub fn resolve_label(&self, label: u32) -> Option<usize> {
        self.objects.iter().position(|o| o.label == label)
    }

    /// Whether all objects carry diagonal braiding data.
    pub fn is_diagonal(&self) -> bool {
        self.objects.iter().all(|o| o.braiding.is_some())
    }

    /// Reachability classes under all object maps, each sorted.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.objects.len();
        let mut seen = vec![false; n];
        let mut components = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut stack = vec![start];
            let mut component = Vec::new();
            seen[start] = true;
            while let Some(x) = stack.pop() {
                component.push(x);
                for i in 0..self.rank {
                    let y = self.maps[i][x];
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
            component.sort_unstable();
            components.push(component);
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() == 1
    }

    /// Whether all objects share one Cartan matrix.
    pub fn is_standard(&self) -> bool {
        self.objects
            .iter()
            .all(|o| o.cartan == self.objects[0].cartan)
    }
}

/// A single Cartan-scheme axiom violation with its witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomViolation {
    C1 { i: usize, object: usize },
    C2 { i: usize, j: usize, object: usize },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::C1 { i, object } => {
                write!(f, "(C1) r_{i}^2 != id at object index {object}")
            }
            AxiomViolation::C2 { i, j, object } => write!(
                f,
                "(C2) c_{i}{j} differs between object index {object} and its r_{i}-image"
            ),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct AxiomReport {
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

fn axiom_violations(rank: usize, objects: &[SchemeObject], maps: &[Vec<usize>]) -> AxiomReport {
    let mut violations = Vec::new();
    for i in 0..rank {
        for x in 0..objects.len() {
            let y = maps[i][x];
            if maps[i][y] != x {
                violations.push(AxiomViolation::C1 { i, object: x });
            }
            for j in 0..rank {
                if objects[x].cartan.entry(i, j) != objects[y].cartan.entry(i, j) {
                    violations.push(AxiomViolation::C2 { i, j, object: x });
                }
            }
        }
    }
    AxiomReport { violations }
}

/// Lists every axiom violation of the (not necessarily valid) scheme data.
pub fn check_axioms(scheme: &CartanScheme) -> AxiomReport {
    axiom_violations(scheme.rank, &scheme.objects, &scheme.maps)
}

/// Builds a scheme from explicit objects and reflection tables, verifying
/// (C1) and (C2). `maps[i][k]` is the label of `r_{i+1}` applied to the
/// k-th object.
pub fn build_from_matrices(
    objects: Vec<(u32, GeneralizedCartanMatrix)>,
    maps: Vec<Vec<u32>>,
) -> Result<CartanScheme, SchemeError> {
    assert!(!objects.is_empty(), "scheme needs at least one object");
    let rank = objects[0].1.rank();
    for (k, (_, cartan)) in objects.iter().enumerate() {
        if cartan.rank() != rank {
            return Err(SchemeError::RankMismatch {
                object: k,
                expected: rank,
                got: cartan.rank(),
            });
        }
    }
    if maps.len() != rank {
        return Err(SchemeError::BadMapCount {
            expected: rank,
            got: maps.len(),
        });
    }
    let mut by_label = HashMap::new();
    for (k, (label, _)) in objects.iter().enumerate() {
        if by_label.insert(*label, k).is_some() {
            return Err(SchemeError::DuplicateLabel { label: *label });
        }
    }
    let mut index_maps = vec![vec![0usize; objects.len()]; rank];
    for (i, table) in maps.iter().enumerate() {
        if table.len() != objects.len() {
            return Err(SchemeError::MapNotTotal {
                i,
                object: table.len(),
            });
        }
        for (k, label) in table.iter().enumerate() {
            index_maps[i][k] = *by_label
                .get(label)
                .ok_or(SchemeError::UnknownLabel { label: *label })?;
        }
    }
    let objects: Vec<SchemeObject> = objects
        .into_iter()
        .enumerate()
        .map(|(index, (label, cartan))| SchemeObject {
            index,
            label,
            cartan,
            braiding: None,
            twist_key: None,
        })
        .collect();
    let report = axiom_violations(rank, &objects, &index_maps);
    if let Some(v) = report.violations.first() {
        return Err(match *v {
            AxiomViolation::C1 { i, object } => SchemeError::AxiomC1Violation { i, object },
            AxiomViolation::C2 { i, j, object } => SchemeError::AxiomC2Violation { i, j, object },
        });
    }
    Ok(CartanScheme {
        rank,
        objects,
        maps: index_maps,
    })
}

/// Breadth-first closure of a braiding matrix under reflections.
///
/// Objects are deduplicated by twist key and indexed in discovery order,
/// so the construction is deterministic. The result satisfies (C1), (C2).
pub fn build_from_braiding(
    q: &BraidingMatrix,
    max_objects: usize,
    exponent_bound: u64,
) -> Result<CartanScheme, SchemeError> {
    let rank = q.rank();
    let cartan_of = |b: &BraidingMatrix, object: usize| -> Result<GeneralizedCartanMatrix, SchemeError> {
        b.cartan_matrix(exponent_bound).map_err(|e| match e {
            BraidingError::BoundExceeded { i, j, .. } => SchemeError::NotIFinite { object, i, j },
            other => SchemeError::Braiding(other),
        })
    };

    let mut objects: Vec<SchemeObject> = Vec::new();
    let mut by_key: HashMap<TwistKey, usize> = HashMap::new();
    let mut maps = vec![Vec::<usize>::new(); rank];

    let key0 = q.twist_key();
    objects.push(SchemeObject {
        index: 0,
        label: 0,
        cartan: cartan_of(q, 0)?,
        braiding: Some(q.clone()),
        twist_key: Some(key0.clone()),
    });
    by_key.insert(key0, 0);

    let mut next = 0usize;
    while next < objects.len() {
        let x = next;
        next += 1;
        let braiding = objects[x].braiding.clone().expect("generated object");
        for i in 0..rank {
            let row: Vec<i64> = (0..rank)
                .map(|j| {
                    diagonal_cartan_entry(&braiding, i, j, exponent_bound).map_err(|e| match e {
                        BraidingError::BoundExceeded { i, j, .. } => {
                            SchemeError::NotIFinite { object: x, i, j }
                        }
                        other => SchemeError::Braiding(other),
                    })
                })
                .collect::<Result<_, _>>()?;
            let reflected = reflect_braiding(&braiding, i, &row)?;
            let key = reflected.twist_key();
            let y = match by_key.get(&key) {
                Some(&y) => y,
                None => {
                    if objects.len() >= max_objects {
                        return Err(SchemeError::TooManyObjects { max_objects });
                    }
                    let y = objects.len();
                    objects.push(SchemeObject {
                        index: y,
                        label: y as u32,
                        cartan: cartan_of(&reflected, y)?,
                        braiding: Some(reflected),
                        twist_key: Some(key.clone()),
                    });
                    by_key.insert(key, y);
                    y
                }
            };
            debug_assert_eq!(maps[i].len(), x);
            maps[i].push(y);
        }
    }

    let report = axiom_violations(rank, &objects, &maps);
    if let Some(v) = report.violations.first() {
        return Err(match *v {
            AxiomViolation::C1 { i, object } => SchemeError::AxiomC1Violation { i, object },
            AxiomViolation::C2 { i, j, object } => SchemeError::AxiomC2Violation { i, j, object },
        });
    }
    Ok(CartanScheme {
        rank,
        objects,
        maps,
    })
}

/// The 3-object rank-2 scheme with Cartan matrices [[2,-1],[-3,2]],
/// [[2,-1],[-4,2]], [[2,-1],[-4,2]] and maps r_1 = (1 2), r_2 = (2 3).
/// It is a valid Cartan scheme whose real roots do not form a root system.
pub fn three_object_example() -> CartanScheme {
    use crate::gcm::validate_gcm;
    let a1 = validate_gcm(vec![vec![2, -1], vec![-3, 2]]).unwrap();
    let a2 = validate_gcm(vec![vec![2, -1], vec![-4, 2]]).unwrap();
    build_from_matrices(
        vec![(1, a1), (2, a2.clone()), (3, a2)],
        vec![vec![2, 1, 3], vec![1, 3, 2]],
    )
    .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gcm::validate_gcm;
    use crate::scalar::ScalarValue;

    fn cartan_type_generic(a: &[&[i64]], d: &[i64]) -> BraidingMatrix {
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
    fn three_object_scheme_is_valid() {
        let scheme = three_object_example();
        assert_eq!(scheme.object_count(), 3);
        assert!(check_axioms(&scheme).is_empty());
        assert!(scheme.is_connected());
        assert!(!scheme.is_standard());
    }

    #[test]
    fn broken_three_object_scheme_fails_c2() {
        let a1 = validate_gcm(vec![vec![2, -1], vec![-3, 2]]).unwrap();
        let a2 = validate_gcm(vec![vec![2, -1], vec![-4, 2]]).unwrap();
        // replacing A^{X_2} by A^{X_1} breaks (C2) along the r_2-orbit {X_2, X_3}
        let err = build_from_matrices(
            vec![(1, a1.clone()), (2, a1), (3, a2)],
            vec![vec![2, 1, 3], vec![1, 3, 2]],
        )
        .unwrap_err();
        assert!(matches!(err, SchemeError::AxiomC2Violation { i: 1, .. }));
    }

    #[test]
    fn non_involutive_map_fails_c1() {
        let a = validate_gcm(vec![vec![2, -1], vec![-1, 2]]).unwrap();
        let err = build_from_matrices(
            vec![(1, a.clone()), (2, a.clone()), (3, a)],
            vec![vec![2, 3, 1], vec![1, 2, 3]],
        )
        .unwrap_err();
        assert!(matches!(err, SchemeError::AxiomC1Violation { i: 0, .. }));
    }

    #[test]
    fn single_object_any_gcm_valid() {
        let a = validate_gcm(vec![vec![2, -2], vec![-2, 2]]).unwrap();
        let scheme = build_from_matrices(vec![(7, a)], vec![vec![7], vec![7]]).unwrap();
        assert!(check_axioms(&scheme).is_empty());
        assert_eq!(scheme.resolve_label(7), Some(0));
    }

    #[test]
    fn generic_a2_gives_single_object() {
        let q = cartan_type_generic(&[&[2, -1], &[-1, 2]], &[1, 1]);
        let scheme = build_from_braiding(&q, 100, 8).unwrap();
        assert_eq!(scheme.object_count(), 1);
        assert_eq!(scheme.reflect_object(0, 0), 0);
        assert_eq!(scheme.reflect_object(1, 0), 0);
        assert_eq!(
            scheme.cartan(0).entries(),
            &[vec![2, -1], vec![-1, 2]]
        );
    }

    #[test]
    fn rank1_generic_scheme() {
        let q = BraidingMatrix::new(vec![vec![ScalarValue::generic_power(2)]], false).unwrap();
        let scheme = build_from_braiding(&q, 10, 8).unwrap();
        assert_eq!(scheme.object_count(), 1);
        assert_eq!(scheme.cartan(0).entries(), &[vec![2]]);
    }

    #[test]
    fn super_a2_root_of_unity_scheme() {
        // q_11 = q_22 = -1, q_12 q_21 a primitive 12th root: finitely many
        // objects, all Cartan matrices [[2,-1],[-1,2]]
        let m1 = ScalarValue::root_of_unity(1, 2);
        let z = ScalarValue::root_of_unity(1, 12);
        let one = ScalarValue::root_of_unity(0, 1);
        let q = BraidingMatrix::new(
            vec![vec![m1.clone(), z], vec![one, m1]],
            false,
        )
        .unwrap();
        let scheme = build_from_braiding(&q, 100, 8).unwrap();
        assert!(check_axioms(&scheme).is_empty());
        assert!(scheme.object_count() >= 2);
        for o in scheme.objects() {
            assert_eq!(o.cartan.entries(), &[vec![2, -1], vec![-1, 2]]);
        }
    }

    #[test]
    fn stored_cartan_matches_recomputation() {
        let q = cartan_type_generic(&[&[2, -1], &[-2, 2]], &[2, 1]);
        let scheme = build_from_braiding(&q, 100, 8).unwrap();
        for o in scheme.objects() {
            let b = o.braiding.as_ref().unwrap();
            assert_eq!(&b.cartan_matrix(8).unwrap(), &o.cartan);
        }
    }

    #[test]
    fn non_i_finite_braiding_reports() {
        let one = ScalarValue::generic_power(0);
        let q1 = ScalarValue::generic_power(1);
        let q = BraidingMatrix::new(
            vec![vec![one.clone(), q1.clone()], vec![q1, one]],
            false,
        )
        .unwrap();
        assert!(matches!(
            build_from_braiding(&q, 10, 6),
            Err(SchemeError::NotIFinite { object: 0, i: 0, j: 1 })
        ));
    }
}
