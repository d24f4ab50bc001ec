//! Exact scalar domains for diagonal braidings.
//!
//! Three modes, never mixed inside one braiding matrix:
//!
//! * `RootOfUnity` - `z k/n` stands for `e^{2 pi i k/n}`, stored in lowest
//!   terms with `0 <= k < n`. Arithmetic is addition of exponents mod 1.
//! * `GenericPower` - `q^k` for a formal `q` that is not a root of unity.
//!   Arithmetic is addition of exponents.
//! * `Rational` - an exact fraction; used by the oracle when a generic `q`
//!   is specialized to a concrete rational.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ScalarMode {
    RootOfUnity,
    GenericQ,
    Rational,
}

impl fmt::Display for ScalarMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarMode::RootOfUnity => write!(f, "root_of_unity"),
            ScalarMode::GenericQ => write!(f, "generic_q"),
            ScalarMode::Rational => write!(f, "rational"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScalarError {
    #[error("invalid scalar literal {literal:?} for mode {mode}: {reason}")]
    BadLiteral {
        literal: String,
        mode: ScalarMode,
        reason: String,
    },
    #[error("division by zero scalar")]
    DivisionByZero,
}

/// Exact scalar in one of the three modes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ScalarValue {
    /// `e^{2 pi i num/den}` in lowest terms, `0 <= num < den`.
    RootOfUnity { num: u64, den: u64 },
    /// `q^exp` for a formal non-root-of-unity `q`.
    GenericPower { exp: BigInt },
    /// Exact fraction.
    Rational(BigRational),
}

impl ScalarValue {
    pub fn root_of_unity(num: i64, den: u64) -> Self {
        assert!(den > 0, "root-of-unity order must be positive");
        let d = i128::from(den);
        let k = i128::from(num).rem_euclid(d);
        if k == 0 {
            return ScalarValue::RootOfUnity { num: 0, den: 1 };
        }
        let g = k.gcd(&d);
        ScalarValue::RootOfUnity {
            num: u64::try_from(k / g).expect("root-of-unity exponent overflow"),
            den: u64::try_from(d / g).expect("root-of-unity order overflow"),
        }
    }

    pub fn generic_power(exp: i64) -> Self {
        ScalarValue::GenericPower {
            exp: BigInt::from(exp),
        }
    }

    pub fn rational(num: i64, den: i64) -> Self {
        ScalarValue::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn one(mode: ScalarMode) -> Self {
        match mode {
            ScalarMode::RootOfUnity => ScalarValue::RootOfUnity { num: 0, den: 1 },
            ScalarMode::GenericQ => ScalarValue::GenericPower {
                exp: BigInt::zero(),
            },
            ScalarMode::Rational => ScalarValue::Rational(BigRational::one()),
        }
    }

    pub fn mode(&self) -> ScalarMode {
        match self {
            ScalarValue::RootOfUnity { .. } => ScalarMode::RootOfUnity,
            ScalarValue::GenericPower { .. } => ScalarMode::GenericQ,
            ScalarValue::Rational(_) => ScalarMode::Rational,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            ScalarValue::RootOfUnity { num, .. } => *num == 0,
            ScalarValue::GenericPower { exp } => exp.is_zero(),
            ScalarValue::Rational(r) => r.is_one(),
        }
    }

    pub fn mul(&self, other: &ScalarValue) -> ScalarValue {
        match (self, other) {
            (
                ScalarValue::RootOfUnity { num: k1, den: n1 },
                ScalarValue::RootOfUnity { num: k2, den: n2 },
            ) => {
                let n = u128::from(*n1) * u128::from(*n2);
                let k = (u128::from(*k1) * u128::from(*n2) + u128::from(*k2) * u128::from(*n1))
                    % n;
                let g = k.gcd(&n);
                let (k, n) = if k == 0 { (0, 1) } else { (k / g, n / g) };
                ScalarValue::RootOfUnity {
                    num: u64::try_from(k).expect("root-of-unity exponent overflow"),
                    den: u64::try_from(n).expect("root-of-unity order overflow"),
                }
            }
            (ScalarValue::GenericPower { exp: a }, ScalarValue::GenericPower { exp: b }) => {
                ScalarValue::GenericPower { exp: a + b }
            }
            (ScalarValue::Rational(a), ScalarValue::Rational(b)) => {
                ScalarValue::Rational(a * b)
            }
            _ => panic!(
                "scalar mode mismatch: {} vs {}",
                self.mode(),
                other.mode()
            ),
        }
    }

    pub fn inv(&self) -> Result<ScalarValue, ScalarError> {
        match self {
            ScalarValue::RootOfUnity { num, den } => {
                if *num == 0 {
                    Ok(self.clone())
                } else {
                    Ok(ScalarValue::RootOfUnity {
                        num: den - num,
                        den: *den,
                    })
                }
            }
            ScalarValue::GenericPower { exp } => Ok(ScalarValue::GenericPower { exp: -exp }),
            ScalarValue::Rational(r) => {
                if r.is_zero() {
                    Err(ScalarError::DivisionByZero)
                } else {
                    Ok(ScalarValue::Rational(r.recip()))
                }
            }
        }
    }

    pub fn pow(&self, e: &BigInt) -> ScalarValue {
        match self {
            ScalarValue::RootOfUnity { num, den } => {
                let n = BigInt::from(*den);
                let k = (BigInt::from(*num) * e).mod_floor(&n);
                let k = u64::try_from(&k).expect("root-of-unity exponent overflow");
                let g = k.gcd(den);
                if k == 0 {
                    ScalarValue::RootOfUnity { num: 0, den: 1 }
                } else {
                    ScalarValue::RootOfUnity {
                        num: k / g,
                        den: den / g,
                    }
                }
            }
            ScalarValue::GenericPower { exp } => ScalarValue::GenericPower { exp: exp * e },
            ScalarValue::Rational(r) => {
                let e = i32::try_from(e).expect("rational power exponent too large");
                ScalarValue::Rational(r.pow(e))
            }
        }
    }

    pub fn pow_i64(&self, e: i64) -> ScalarValue {
        self.pow(&BigInt::from(e))
    }

    /// Multiplicative order, when finite.
    pub fn multiplicative_order(&self) -> Option<u64> {
        match self {
            ScalarValue::RootOfUnity { den, .. } => Some(*den),
            ScalarValue::GenericPower { exp } => exp.is_zero().then_some(1),
            ScalarValue::Rational(r) => {
                if r.is_one() {
                    Some(1)
                } else if (-r).is_one() {
                    Some(2)
                } else {
                    None
                }
            }
        }
    }

    /// Whether the quantum integer `(m)_q = 1 + q + ... + q^{m-1}` vanishes.
    ///
    /// Exact in every mode; in generic mode the value is a sum of distinct
    /// formal powers (or `m` itself when the base is 1) and never vanishes.
    pub fn q_integer_is_zero(&self, m: u64) -> bool {
        if m == 0 {
            return true;
        }
        match self {
            ScalarValue::RootOfUnity { num, den } => *num != 0 && m % den == 0,
            ScalarValue::GenericPower { .. } => false,
            ScalarValue::Rational(r) => {
                if r.is_one() {
                    false
                } else {
                    // (m)_q = (q^m - 1)/(q - 1)
                    r.pow(i32::try_from(m).expect("q-integer argument too large"))
                        .is_one()
                }
            }
        }
    }
}

impl fmt::Display for ScalarValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarValue::RootOfUnity { num, den } => write!(f, "z {num}/{den}"),
            ScalarValue::GenericPower { exp } => write!(f, "q^{exp}"),
            ScalarValue::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

/// Parses a scalar literal in the given mode.
///
/// Accepted forms: `z k/n` (root of unity, `k` may be negative), `1` and
/// `-1` as shorthands in root-of-unity mode, `q`, `q^k` and `1` in generic
/// mode, and plain fractions or integers in rational mode.
pub fn parse_scalar(literal: &str, mode: ScalarMode) -> Result<ScalarValue, ScalarError> {
    let s = literal.trim();
    let bad = |reason: &str| ScalarError::BadLiteral {
        literal: literal.to_string(),
        mode,
        reason: reason.to_string(),
    };
    match mode {
        ScalarMode::RootOfUnity => {
            if s == "1" {
                return Ok(ScalarValue::RootOfUnity { num: 0, den: 1 });
            }
            if s == "-1" {
                return Ok(ScalarValue::RootOfUnity { num: 1, den: 2 });
            }
            let rest = s
                .strip_prefix('z')
                .ok_or_else(|| bad("expected `z k/n`, `1` or `-1`"))?
                .trim();
            let (k, n) = rest
                .split_once('/')
                .ok_or_else(|| bad("expected exponent of the form k/n"))?;
            let k: i64 = k.trim().parse().map_err(|_| bad("bad numerator"))?;
            let n: u64 = n.trim().parse().map_err(|_| bad("bad denominator"))?;
            if n == 0 {
                return Err(bad("denominator must be positive"));
            }
            Ok(ScalarValue::root_of_unity(k, n))
        }
        ScalarMode::GenericQ => {
            if s == "1" {
                return Ok(ScalarValue::generic_power(0));
            }
            if s == "q" {
                return Ok(ScalarValue::generic_power(1));
            }
            let rest = s
                .strip_prefix("q^")
                .ok_or_else(|| bad("expected `q^k`, `q` or `1`"))?;
            let e: i64 = rest.trim().parse().map_err(|_| bad("bad exponent"))?;
            Ok(ScalarValue::generic_power(e))
        }
        ScalarMode::Rational => {
            let (num, den) = match s.split_once('/') {
                Some((a, b)) => (a.trim(), b.trim()),
                None => (s, "1"),
            };
            let num: BigInt = num.parse().map_err(|_| bad("bad numerator"))?;
            let den: BigInt = den.parse().map_err(|_| bad("bad denominator"))?;
            if den.is_zero() {
                return Err(bad("denominator must be nonzero"));
            }
            Ok(ScalarValue::Rational(BigRational::new(num, den)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_of_unity_canonical_form() {
        assert_eq!(
            ScalarValue::root_of_unity(2, 6),
            ScalarValue::RootOfUnity { num: 1, den: 3 }
        );
        assert_eq!(
            ScalarValue::root_of_unity(-1, 3),
            ScalarValue::RootOfUnity { num: 2, den: 3 }
        );
        assert_eq!(
            ScalarValue::root_of_unity(6, 3),
            ScalarValue::RootOfUnity { num: 0, den: 1 }
        );
    }

    #[test]
    fn multiplication_and_inverse() {
        let z = ScalarValue::root_of_unity(1, 3);
        assert_eq!(z.mul(&z).mul(&z), ScalarValue::one(ScalarMode::RootOfUnity));
        assert!(z.mul(&z.inv().unwrap()).is_one());

        let q2 = ScalarValue::generic_power(2);
        let qm2 = ScalarValue::generic_power(-2);
        assert!(q2.mul(&qm2).is_one());

        let r = ScalarValue::rational(3, 2);
        assert!(r.mul(&r.inv().unwrap()).is_one());
        assert_eq!(
            ScalarValue::rational(0, 1).inv(),
            Err(ScalarError::DivisionByZero)
        );
    }

    #[test]
    fn q_integer_vanishing() {
        // (2)_{-1} = 0
        assert!(ScalarValue::root_of_unity(1, 2).q_integer_is_zero(2));
        // (3)_{z 1/3} = 0, (2)_{z 1/3} != 0
        let z3 = ScalarValue::root_of_unity(1, 3);
        assert!(z3.q_integer_is_zero(3));
        assert!(!z3.q_integer_is_zero(2));
        // q = 1: (m)_1 = m != 0
        assert!(!ScalarValue::root_of_unity(0, 1).q_integer_is_zero(5));
        // generic powers never vanish
        assert!(!ScalarValue::generic_power(2).q_integer_is_zero(7));
        // rational -1: (2)_{-1} = 0, (3)_{-1} = 1
        assert!(ScalarValue::rational(-1, 1).q_integer_is_zero(2));
        assert!(!ScalarValue::rational(-1, 1).q_integer_is_zero(3));
        assert!(!ScalarValue::rational(2, 1).q_integer_is_zero(4));
    }

    #[test]
    fn orders() {
        assert_eq!(
            ScalarValue::root_of_unity(2, 8).multiplicative_order(),
            Some(4)
        );
        assert_eq!(ScalarValue::generic_power(3).multiplicative_order(), None);
        assert_eq!(ScalarValue::generic_power(0).multiplicative_order(), Some(1));
        assert_eq!(ScalarValue::rational(-1, 1).multiplicative_order(), Some(2));
        assert_eq!(ScalarValue::rational(2, 1).multiplicative_order(), None);
    }

    #[test]
    fn literal_round_trip() {
        for (s, mode) in [
            ("z 1/3", ScalarMode::RootOfUnity),
            ("z 0/1", ScalarMode::RootOfUnity),
            ("q^-2", ScalarMode::GenericQ),
            ("q^1", ScalarMode::GenericQ),
            ("2/3", ScalarMode::Rational),
            ("-5", ScalarMode::Rational),
        ] {
            let v = parse_scalar(s, mode).unwrap();
            assert_eq!(parse_scalar(&v.to_string(), mode).unwrap(), v);
        }
        assert_eq!(
            parse_scalar("-1", ScalarMode::RootOfUnity).unwrap(),
            ScalarValue::root_of_unity(1, 2)
        );
        assert_eq!(
            parse_scalar("q", ScalarMode::GenericQ).unwrap(),
            ScalarValue::generic_power(1)
        );
        assert!(parse_scalar("z 1/0", ScalarMode::RootOfUnity).is_err());
        assert!(parse_scalar("w^2", ScalarMode::GenericQ).is_err());
        assert!(parse_scalar("1/0", ScalarMode::Rational).is_err());
    }
}
