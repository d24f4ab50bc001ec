//! The coideal census: one graded right coideal subalgebra record per
//! Weyl-groupoid morphism, with PBW degree sequences, factored Hilbert
//! series, the inclusion order, and Kharchenko counts.

use crate::braiding::BraidingMatrix;
use crate::duflo::{beta_sequence, lambda_plus, DufloError, LambdaSet};
use crate::gcm::{GeneralizedCartanMatrix, RootVector};
use crate::groupoid::{enumerate_morphisms_to, Morphism};
use crate::scalar::ScalarValue;
use crate::scheme::CartanScheme;
use rayon::prelude::*;
use std::collections::BTreeMap;
use thiserror::Error;

pub const DEFAULT_TRUNCATION_DEGREE: u32 = 8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CensusError {
    #[error("word is not reduced")]
    NotReduced,
    #[error("groupoid not finite within bounds")]
    NotFinite,
    #[error("records belong to different censuses (targets {0} and {1})")]
    TargetMismatch(usize, usize),
    #[error("records are not comparable: the first does not include into the second")]
    NotComparable,
    #[error("operation needs diagonal braiding data")]
    ModeUnsupported,
    #[error("census records are not separated by {what} at object {object}; a larger truncation degree may resolve them")]
    RecordsNotSeparated { what: &'static str, object: usize },
    #[error("Lambda_+ undercounts a shortest word at object {object}: the real roots do not form a root system, so PBW data is unavailable there")]
    LambdaNotFaithful { object: usize },
    #[error(transparent)]
    Word(#[from] DufloError),
}

/// Ordered PBW degrees `beta_1..beta_m` of a reduced word, with the
/// self-braidings `chi(beta_l, beta_l)` in diagonal mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PBWSequence {
    pub degrees: Vec<RootVector>,
    pub self_braidings: Option<Vec<ScalarValue>>,
}

/// PBW degree sequence of a reduced word; degrees are asserted pairwise
/// distinct and positive.
pub fn pbw_degrees(
    scheme: &CartanScheme,
    x: usize,
    word: &[usize],
) -> Result<PBWSequence, CensusError> {
    let lambda = lambda_plus(scheme, x, word)?;
    if lambda.len() != word.len() {
        return Err(CensusError::NotReduced);
    }
    let degrees = beta_sequence(scheme, x, word)?;
    for (k, beta) in degrees.iter().enumerate() {
        assert!(beta.is_positive(), "PBW degree {k} is not positive");
        assert!(
            !degrees[..k].contains(beta),
            "PBW degrees must be pairwise distinct"
        );
    }
    let self_braidings = scheme.object(x).braiding.as_ref().map(|q| {
        degrees
            .iter()
            .map(|beta| q.bicharacter(beta, beta))
            .collect()
    });
    Ok(PBWSequence {
        degrees,
        self_braidings,
    })
}

/// Literal admissibility check: `beta_l != -beta_k` for all `k < l`.
pub fn is_admissible(
    scheme: &CartanScheme,
    x: usize,
    word: &[usize],
) -> Result<bool, CensusError> {
    let betas = beta_sequence(scheme, x, word)?;
    for l in 1..betas.len() {
        let neg = betas[l].negate();
        if betas[..l].contains(&neg) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Height of a rank-1 Hilbert factor: `h` gives `(1-t^{h lam})/(1-t^lam)`,
/// `Infinite` gives `1/(1-t^lam)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Height {
    Finite(u64),
    Infinite,
}

impl Height {
    pub fn as_option(&self) -> Option<u64> {
        match self {
            Height::Finite(h) => Some(*h),
            Height::Infinite => None,
        }
    }
}

/// Rank-1 factor height in characteristic 0: a root of unity of order
/// `h > 1` truncates at `h`; `q = 1` and non-roots of unity give a full
/// polynomial algebra.
pub fn rank1_height(q_lambda: &ScalarValue) -> Height {
    match q_lambda.multiplicative_order() {
        Some(1) | None => Height::Infinite,
        Some(h) => Height::Finite(h),
    }
}

/// Factored multivariate Hilbert series in `rank` variables: one rank-1
/// factor per positive degree, stored sorted for a canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertSeries {
    rank: usize,
    factors: Vec<(RootVector, Height)>,
}

impl HilbertSeries {
    pub fn new(rank: usize, mut factors: Vec<(RootVector, Height)>) -> Self {
        assert!(factors.iter().all(|(d, _)| d.rank() == rank));
        factors.sort();
        HilbertSeries { rank, factors }
    }

    pub fn one(rank: usize) -> Self {
        HilbertSeries {
            rank,
            factors: Vec::new(),
        }
    }

    pub fn factors(&self) -> &[(RootVector, Height)] {
        &self.factors
    }

    pub fn height_at(&self, degree: &RootVector) -> Option<Height> {
        self.factors
            .iter()
            .find(|(d, _)| d == degree)
            .map(|(_, h)| *h)
    }

    /// Expands the factored form to a polynomial truncated at the given
    /// total degree.
    pub fn truncate(&self, total_degree: u32) -> TruncatedSeries {
        let mut series = TruncatedSeries::one(self.rank, total_degree);
        for (degree, height) in &self.factors {
            series = series.mul_rank1_factor(degree, *height);
        }
        series
    }
}

/// Multivariate polynomial truncated at a total degree, with nonnegative
/// integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    rank: usize,
    cap: u32,
    coeffs: BTreeMap<Vec<u32>, u64>,
}

impl TruncatedSeries {
    pub fn one(rank: usize, cap: u32) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(vec![0; rank], 1);
        TruncatedSeries { rank, cap, coeffs }
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn coefficient(&self, degree: &[u32]) -> u64 {
        self.coeffs.get(degree).copied().unwrap_or(0)
    }

    pub fn coefficients(&self) -> &BTreeMap<Vec<u32>, u64> {
        &self.coeffs
    }

    /// Multiplies by `1 + t^d + t^{2d} + ...` up to the height and the cap.
    fn mul_rank1_factor(&self, degree: &RootVector, height: Height) -> TruncatedSeries {
        let rank = self.rank;
        assert_eq!(degree.rank(), rank);
        let d = degree.to_i64_vec();
        assert!(d.iter().all(|&c| c >= 0), "factor degree must be positive");
        let d: Vec<u32> = d.iter().map(|&c| u32::try_from(c).unwrap()).collect();
        let step: u32 = d.iter().sum();
        assert!(step > 0, "factor degree must be nonzero");
        let max_k = match height {
            Height::Finite(h) => (h - 1).min(u64::from(self.cap / step)),
            Height::Infinite => u64::from(self.cap / step),
        };
        let mut coeffs: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
        for (mono, c) in &self.coeffs {
            let total: u32 = mono.iter().sum();
            for k in 0..=max_k {
                let extra = u32::try_from(k).unwrap_or(u32::MAX).saturating_mul(step);
                if total + extra > self.cap {
                    break;
                }
                let mut m = mono.clone();
                for (mi, di) in m.iter_mut().zip(&d) {
                    *mi += di * u32::try_from(k).unwrap();
                }
                let entry = coeffs.entry(m).or_insert(0);
                *entry = entry.checked_add(*c).expect("coefficient overflow");
            }
        }
        TruncatedSeries {
            rank,
            cap: self.cap,
            coeffs,
        }
    }

    /// Coefficients after specializing all variables to one `t`, indexed
    /// by total degree `0..=cap`.
    pub fn specialize_total(&self) -> Vec<u64> {
        let mut out = vec![0u64; self.cap as usize + 1];
        for (mono, c) in &self.coeffs {
            let total: u32 = mono.iter().sum();
            out[total as usize] = out[total as usize]
                .checked_add(*c)
                .expect("coefficient overflow");
        }
        out
    }
}

/// Hilbert series of the coideal attached to a Lambda_+ set: one rank-1
/// factor per root, with height from the root's self-braiding.
pub fn hilbert_series(lambda: &LambdaSet, braiding: &BraidingMatrix) -> HilbertSeries {
    let factors = lambda
        .roots()
        .iter()
        .map(|root| (root.clone(), rank1_height(&braiding.bicharacter(root, root))))
        .collect();
    HilbertSeries::new(braiding.rank(), factors)
}

/// One census record: the coideal `E(w)` of a morphism `w`.
#[derive(Debug, Clone)]
pub struct CoidealRecord {
    pub id: usize,
    pub morphism: Morphism,
    pub pbw: PBWSequence,
    /// Present only for diagonal (braiding-carrying) schemes.
    pub hilbert: Option<HilbertSeries>,
    /// Per generator index: whether `alpha_i` lies in `Lambda_+(w)`.
    pub contains_generator: Vec<bool>,
}

impl CoidealRecord {
    pub fn lambda(&self) -> &LambdaSet {
        &self.morphism.lambda
    }
}

/// The census of `Homto(X)`: one record per morphism, ordered by
/// (length, lexicographic word). Verifies that Lambda_+ keys and (in
/// diagonal mode) truncated Hilbert series separate the records.
pub fn census(
    scheme: &CartanScheme,
    x: usize,
    max_length: usize,
    truncation_degree: u32,
) -> Result<Vec<CoidealRecord>, CensusError> {
    let morphisms =
        enumerate_morphisms_to(scheme, x, max_length).map_err(|_| CensusError::NotFinite)?;
    let braiding = scheme.object(x).braiding.clone();
    let rank = scheme.rank();

    let records: Vec<CoidealRecord> = morphisms
        .into_par_iter()
        .enumerate()
        .map(|(id, morphism)| {
            let pbw = pbw_degrees(scheme, x, &morphism.word).map_err(|e| {
                // enumeration words are shortest, so a NotReduced here
                // means Lambda_+ lost roots (no root system at x)
                match e {
                    CensusError::NotReduced => CensusError::LambdaNotFaithful { object: x },
                    other => other,
                }
            })?;
            let hilbert = braiding
                .as_ref()
                .map(|q| hilbert_series(&morphism.lambda, q));
            let contains_generator = (0..rank)
                .map(|i| morphism.lambda.contains(&RootVector::basis(rank, i)))
                .collect();
            Ok(CoidealRecord {
                id,
                morphism,
                pbw,
                hilbert,
                contains_generator,
            })
        })
        .collect::<Result<_, CensusError>>()?;

    for a in 0..records.len() {
        for b in a + 1..records.len() {
            if records[a].lambda() == records[b].lambda() {
                return Err(CensusError::RecordsNotSeparated {
                    what: "Lambda_+ keys",
                    object: x,
                });
            }
        }
    }
    if braiding.is_some() {
        let truncations: Vec<TruncatedSeries> = records
            .par_iter()
            .map(|r| r.hilbert.as_ref().unwrap().truncate(truncation_degree))
            .collect();
        for a in 0..truncations.len() {
            for b in a + 1..truncations.len() {
                if truncations[a] == truncations[b] {
                    return Err(CensusError::RecordsNotSeparated {
                        what: "truncated Hilbert series",
                        object: x,
                    });
                }
            }
        }
    }
    Ok(records)
}

/// Inclusion of census coideals is the Duflo order on their morphisms.
pub fn inclusion_check(rec1: &CoidealRecord, rec2: &CoidealRecord) -> Result<bool, CensusError> {
    if rec1.morphism.target != rec2.morphism.target {
        return Err(CensusError::TargetMismatch(
            rec1.morphism.target,
            rec2.morphism.target,
        ));
    }
    Ok(rec1.lambda().is_subset_of(rec2.lambda()))
}

/// Freeness consistency: the Hilbert series of the larger coideal equals
/// the product of the smaller one's series with the complement factors,
/// compared as truncations.
pub fn freeness_check(
    rec1: &CoidealRecord,
    rec2: &CoidealRecord,
    truncation_degree: u32,
) -> Result<bool, CensusError> {
    if !inclusion_check(rec1, rec2)? {
        return Err(CensusError::NotComparable);
    }
    let (Some(h1), Some(h2)) = (&rec1.hilbert, &rec2.hilbert) else {
        return Err(CensusError::ModeUnsupported);
    };
    let mut factors = h1.factors().to_vec();
    for root in rec2.lambda().roots() {
        if !rec1.lambda().contains(root) {
            let height = h2.height_at(root).expect("factor exists in larger record");
            factors.push((root.clone(), height));
        }
    }
    let rank = rec1.contains_generator.len();
    let product = HilbertSeries::new(rank, factors).truncate(truncation_degree);
    Ok(product == h2.truncate(truncation_degree))
}

/// Census size plus standardness data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KharchenkoCount {
    pub count: usize,
    /// All objects share one Cartan matrix.
    pub standard: bool,
    /// Classical Weyl group order when the shared matrix is recognized as
    /// finite type.
    pub weyl_group_order: Option<u64>,
}

/// Counts `#Homto(X)`; for standard schemes the count is cross-checked
/// against the classical Weyl group order of the shared Cartan matrix.
pub fn kharchenko_count(
    scheme: &CartanScheme,
    x: usize,
    max_length: usize,
) -> Result<KharchenkoCount, CensusError> {
    let morphisms =
        enumerate_morphisms_to(scheme, x, max_length).map_err(|_| CensusError::NotFinite)?;
    let count = morphisms.len();
    let standard = scheme.is_standard();
    let weyl_group_order = if standard {
        classify_weyl_order(scheme.cartan(0))
    } else {
        None
    };
    if let Some(order) = weyl_group_order {
        assert_eq!(
            count as u64, order,
            "census size must match the classical Weyl group order"
        );
    }
    Ok(KharchenkoCount {
        count,
        standard,
        weyl_group_order,
    })
}

// ---------------------------------------------------------------------
// classical Weyl group orders for finite-type Cartan matrices
// ---------------------------------------------------------------------

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

fn standard_type_matrices(rank: usize) -> Vec<(Vec<Vec<i64>>, u64)> {
    let n = rank;
    let mut out: Vec<(Vec<Vec<i64>>, u64)> = Vec::new();
    let path = |edges: &[(usize, usize, i64)]| -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 2;
        }
        for &(i, j, v) in edges {
            m[i][j] = v;
        }
        m
    };
    let simple_path: Vec<(usize, usize, i64)> = (0..n.saturating_sub(1))
        .flat_map(|i| [(i, i + 1, -1), (i + 1, i, -1)])
        .collect();

    // A_n
    out.push((path(&simple_path), factorial(n as u64 + 1)));
    if n >= 2 {
        // B_n / C_n: double bond at the far end, both orientations
        let mut b = simple_path.clone();
        b[2 * (n - 2)] = (n - 2, n - 1, -2);
        let mut c = simple_path.clone();
        c[2 * (n - 2) + 1] = (n - 1, n - 2, -2);
        let order = 2u64.pow(n as u32) * factorial(n as u64);
        out.push((path(&b), order));
        out.push((path(&c), order));
    }
    if n == 2 {
        // G_2, both orientations
        out.push((vec![vec![2, -1], vec![-3, 2]], 12));
        out.push((vec![vec![2, -3], vec![-1, 2]], 12));
    }
    if n >= 4 {
        // D_n: fork at the end
        let mut edges: Vec<(usize, usize, i64)> = (0..n - 2)
            .flat_map(|i| [(i, i + 1, -1), (i + 1, i, -1)])
            .collect();
        edges.retain(|&(i, j, _)| !(i == n - 2 && j == n - 1 || i == n - 1 && j == n - 2));
        edges.extend([
            (n - 3, n - 1, -1),
            (n - 1, n - 3, -1),
        ]);
        out.push((path(&edges), 2u64.pow(n as u32 - 1) * factorial(n as u64)));
    }
    if n == 4 {
        // F_4, both orientations of the middle double bond
        let mut f = simple_path.clone();
        f[2] = (1, 2, -2);
        out.push((path(&f), 1152));
        let mut f = simple_path.clone();
        f[3] = (2, 1, -2);
        out.push((path(&f), 1152));
    }
    if (6..=8).contains(&n) {
        // E_n: path 0..n-2 with node n-1 attached to node 2
        let mut edges: Vec<(usize, usize, i64)> = (0..n - 2)
            .flat_map(|i| [(i, i + 1, -1), (i + 1, i, -1)])
            .collect();
        edges.extend([(2, n - 1, -1), (n - 1, 2, -1)]);
        let order = match n {
            6 => 51_840,
            7 => 2_903_040,
            _ => 696_729_600,
        };
        out.push((path(&edges), order));
    }
    out
}

fn matches_under_permutation(m: &[Vec<i64>], candidate: &[Vec<i64>]) -> bool {
    let n = m.len();
    let mut perm: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(
        m: &[Vec<i64>],
        cand: &[Vec<i64>],
        perm: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        let k = perm.len();
        if k == m.len() {
            return true;
        }
        for v in 0..m.len() {
            if used[v] {
                continue;
            }
            // candidate index k maps to component index v
            let ok = (0..k).all(|t| {
                cand[k][t] == m[v][perm[t]] && cand[t][k] == m[perm[t]][v]
            });
            if ok {
                used[v] = true;
                perm.push(v);
                if rec(m, cand, perm, used) {
                    return true;
                }
                perm.pop();
                used[v] = false;
            }
        }
        false
    }
    rec(m, candidate, &mut perm, &mut used)
}

/// Weyl group order of a finite-type GCM, or `None` when it is not
/// recognized (affine/indefinite, or a component of rank above 8).
pub fn classify_weyl_order(gcm: &GeneralizedCartanMatrix) -> Option<u64> {
    let n = gcm.rank();
    // split into connected components of the Dynkin graph
    let mut seen = vec![false; n];
    let mut order: u64 = 1;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut stack = vec![start];
        let mut component = Vec::new();
        seen[start] = true;
        while let Some(i) = stack.pop() {
            component.push(i);
            for j in 0..n {
                if !seen[j] && gcm.entry(i, j) != 0 {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        component.sort_unstable();
        if component.len() > 8 {
            return None;
        }
        let sub: Vec<Vec<i64>> = component
            .iter()
            .map(|&i| component.iter().map(|&j| gcm.entry(i, j)).collect())
            .collect();
        let component_order = standard_type_matrices(component.len())
            .into_iter()
            .find(|(cand, _)| matches_under_permutation(&sub, cand))
            .map(|(_, o)| o)?;
        order = order.checked_mul(component_order)?;
    }
    Some(order)
}
