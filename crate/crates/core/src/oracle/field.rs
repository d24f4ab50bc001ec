//! Exact field arithmetic for the oracle: rationals and cyclotomic
//! numbers (dense coefficient vectors over Q modulo the n-th cyclotomic
//! polynomial).

use crate::scalar::ScalarValue;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Monic integer coefficients of the n-th cyclotomic polynomial,
/// ascending degree. Computed by exact division of `x^n - 1` by the
/// cyclotomic polynomials of the proper divisors.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    assert!(n >= 1);
    // x^n - 1
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            num = poly_div_exact(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

/// Exact division of integer polynomials (ascending coefficients), valid
/// when the divisor is monic and divides evenly.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        quot[k] = c.clone();
        for (t, d) in den.iter().enumerate() {
            rem[k + t] -= &c * d;
        }
    }
    assert!(rem.iter().all(Zero::is_zero), "division is not exact");
    quot
}

/// Element of `Q(zeta_n)` as a polynomial in `zeta` of degree < phi(n),
/// reduced modulo the n-th cyclotomic polynomial. The representative is
/// canonical, so equality is coefficient-wise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cyclotomic {
    order: u64,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    fn modulus(order: u64) -> Vec<BigRational> {
        cyclotomic_polynomial(order)
            .into_iter()
            .map(BigRational::from_integer)
            .collect()
    }

    pub fn zero(order: u64) -> Self {
        let deg = Self::modulus(order).len() - 1;
        Cyclotomic {
            order,
            coeffs: vec![BigRational::zero(); deg],
        }
    }

    pub fn from_rational(order: u64, r: BigRational) -> Self {
        let mut out = Self::zero(order);
        if !out.coeffs.is_empty() {
            out.coeffs[0] = r;
        }
        out
    }

    /// `zeta_n^k`
    pub fn root_of_unity(order: u64, power: u64) -> Self {
        let mut poly = vec![BigRational::zero(); (power % order) as usize + 1];
        let last = poly.len() - 1;
        poly[last] = BigRational::one();
        Self::reduce(order, poly)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    fn reduce(order: u64, mut poly: Vec<BigRational>) -> Self {
        let modulus = Self::modulus(order);
        let deg = modulus.len() - 1;
        while poly.len() > deg {
            let k = poly.len() - 1;
            let c = poly[k].clone();
            if !c.is_zero() {
                for (t, m) in modulus.iter().enumerate() {
                    poly[k + t - deg] -= &c * m;
                }
            }
            poly.pop();
        }
        poly.resize(deg, BigRational::zero());
        Cyclotomic {
            order,
            coeffs: poly,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        !self.coeffs.is_empty()
            && self.coeffs[0].is_one()
            && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.order, other.order, "cyclotomic orders must agree");
        Cyclotomic {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.order, other.order, "cyclotomic orders must agree");
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let mut poly = vec![BigRational::zero(); 2 * self.coeffs.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    poly[i + j] += a * b;
                }
            }
        }
        Self::reduce(self.order, poly)
    }

    /// Inverse by the extended Euclidean algorithm against `Phi_n`.
    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        let (mut r0, mut r1) = (Self::modulus(self.order), trim(self.coeffs.clone()));
        let (mut s0, mut s1) = (vec![], vec![BigRational::one()]);
        while !r1.is_empty() {
            let (q, r) = poly_divmod(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        // Phi_n is irreducible, so the gcd is a nonzero constant
        assert_eq!(r0.len(), 1, "element must be coprime to the modulus");
        let scale = r0[0].recip();
        let coeffs = s0.iter().map(|c| c * &scale).collect();
        Self::reduce(self.order, coeffs)
    }
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

fn poly_divmod(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let den = trim(den.to_vec());
    assert!(!den.is_empty(), "division by zero polynomial");
    let mut rem = trim(num.to_vec());
    let dd = den.len() - 1;
    let lead = den[dd].clone();
    let mut quot = vec![BigRational::zero(); rem.len().saturating_sub(dd)];
    while rem.len() > dd {
        let k = rem.len() - 1 - dd;
        let c = &rem[rem.len() - 1] / &lead;
        quot[k] = c.clone();
        for (t, d) in den.iter().enumerate() {
            let v = &c * d;
            rem[k + t] -= v;
        }
        rem = trim(rem);
    }
    (trim(quot), rem)
}

/// Exact scalar for the oracle: a rational or a cyclotomic number.
/// Rationals promote into the cyclotomic field when mixed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldElement {
    Rat(BigRational),
    Cyc(Cyclotomic),
}

impl FieldElement {
    pub fn zero() -> Self {
        FieldElement::Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        FieldElement::Rat(BigRational::one())
    }

    pub fn from_i64(v: i64) -> Self {
        FieldElement::Rat(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rat(r) => r.is_zero(),
            FieldElement::Cyc(c) => c.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rat(r) => r.is_one(),
            FieldElement::Cyc(c) => c.is_one(),
        }
    }

    fn promote(&self, order: u64) -> Cyclotomic {
        match self {
            FieldElement::Rat(r) => Cyclotomic::from_rational(order, r.clone()),
            FieldElement::Cyc(c) => {
                assert_eq!(c.order(), order, "cyclotomic orders must agree");
                c.clone()
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (FieldElement::Rat(a), FieldElement::Rat(b)) => FieldElement::Rat(a + b),
            (FieldElement::Cyc(a), _) => FieldElement::Cyc(a.add(&other.promote(a.order()))),
            (_, FieldElement::Cyc(b)) => FieldElement::Cyc(self.promote(b.order()).add(b)),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        match self {
            FieldElement::Rat(r) => FieldElement::Rat(-r),
            FieldElement::Cyc(c) => FieldElement::Cyc(c.neg()),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (FieldElement::Rat(a), FieldElement::Rat(b)) => FieldElement::Rat(a * b),
            (FieldElement::Cyc(a), _) => FieldElement::Cyc(a.mul(&other.promote(a.order()))),
            (_, FieldElement::Cyc(b)) => FieldElement::Cyc(self.promote(b.order()).mul(b)),
        }
    }

    pub fn inv(&self) -> Self {
        match self {
            FieldElement::Rat(r) => {
                assert!(!r.is_zero(), "division by zero");
                FieldElement::Rat(r.recip())
            }
            FieldElement::Cyc(c) => FieldElement::Cyc(c.inv()),
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    pub fn pow(&self, e: i64) -> Self {
        if e == 0 {
            return FieldElement::one();
        }
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut out = FieldElement::one();
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// Specializes a braiding scalar into the oracle field: roots of unity
    /// land in `Q(zeta_ambient)`, generic powers at the supplied rational.
    pub fn from_scalar(s: &ScalarValue, ambient_order: u64, generic_q: &BigRational) -> Self {
        match s {
            ScalarValue::RootOfUnity { num, den } => {
                assert!(
                    ambient_order % den == 0,
                    "ambient cyclotomic order must be divisible by every scalar order"
                );
                if ambient_order == 1 {
                    return FieldElement::one();
                }
                let power = num * (ambient_order / den);
                FieldElement::Cyc(Cyclotomic::root_of_unity(ambient_order, power))
            }
            ScalarValue::GenericPower { exp } => {
                let e = i64::try_from(exp).expect("generic exponent fits i64");
                FieldElement::Rat(generic_q.clone()).pow(e)
            }
            ScalarValue::Rational(r) => FieldElement::Rat(r.clone()),
        }
    }

    /// Least common multiple of the root-of-unity orders among scalars;
    /// 1 when none are roots of unity.
    pub fn ambient_order<'a>(scalars: impl Iterator<Item = &'a ScalarValue>) -> u64 {
        let mut order = 1u64;
        for s in scalars {
            if let ScalarValue::RootOfUnity { den, .. } = s {
                order = order.lcm(den);
            }
        }
        order
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn cyclotomic_polynomials() {
        let as_i64 =
            |v: Vec<BigInt>| -> Vec<i64> { v.iter().map(|c| i64::try_from(c).unwrap()).collect() };
        assert_eq!(as_i64(cyclotomic_polynomial(1)), vec![-1, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(2)), vec![1, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(3)), vec![1, 1, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(4)), vec![1, 0, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(6)), vec![1, -1, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(12)), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn zeta_powers() {
        let z = Cyclotomic::root_of_unity(3, 1);
        let z2 = z.mul(&z);
        assert_eq!(z2, Cyclotomic::root_of_unity(3, 2));
        assert!(z2.mul(&z).is_one());
        // 1 + z + z^2 = 0 in Q(zeta_3)
        let sum = Cyclotomic::from_rational(3, BigRational::one()).add(&z).add(&z2);
        assert!(sum.is_zero());
    }

    #[test]
    fn cyclotomic_inverse() {
        for (order, power) in [(3u64, 1u64), (4, 1), (5, 2), (12, 7)] {
            let z = Cyclotomic::root_of_unity(order, power);
            assert!(z.mul(&z.inv()).is_one());
        }
        let x = Cyclotomic::from_rational(5, BigRational::one())
            .add(&Cyclotomic::root_of_unity(5, 1));
        assert!(x.mul(&x.inv()).is_one());
    }

    #[test]
    fn field_element_arithmetic() {
        let a = FieldElement::Rat(rat(2, 3));
        let b = FieldElement::Rat(rat(3, 2));
        assert!(a.mul(&b).is_one());
        assert!(a.sub(&a).is_zero());
        assert_eq!(FieldElement::from_i64(2).pow(-2), FieldElement::Rat(rat(1, 4)));

        // (zeta_4)^2 = -1, promoted mixing with rationals
        let z = FieldElement::Cyc(Cyclotomic::root_of_unity(4, 1));
        let minus_one = z.mul(&z);
        assert!(minus_one.add(&FieldElement::one()).is_zero());
        assert!(z.mul(&z.inv()).is_one());
    }

    #[test]
    fn scalar_specialization() {
        let two = BigRational::from_integer(BigInt::from(2));
        assert_eq!(
            FieldElement::from_scalar(&ScalarValue::generic_power(-2), 1, &two),
            FieldElement::Rat(rat(1, 4))
        );
        // zeta_6^2 is a primitive cube root
        let z = ScalarValue::root_of_unity(1, 3);
        assert_eq!(
            FieldElement::from_scalar(&z, 6, &two),
            FieldElement::Cyc(Cyclotomic::root_of_unity(6, 2))
        );
        let one = ScalarValue::root_of_unity(0, 1);
        assert!(FieldElement::from_scalar(&one, 1, &two).is_one());
    }

    #[test]
    fn ambient_order_lcm() {
        let scalars = [
            ScalarValue::root_of_unity(1, 2),
            ScalarValue::root_of_unity(1, 3),
            ScalarValue::root_of_unity(0, 1),
        ];
        assert_eq!(FieldElement::ambient_order(scalars.iter()), 6);
    }
}
