//! Exact coefficient fields: the rationals and prime fields `F_p`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::AlgebraError;

/// Largest modulus accepted for `F_p`; keeps products inside `u128` comfortably.
pub const MAX_PRIME: u64 = (1 << 62) - 1;

/// A coefficient field. `Rational` is the default.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum Field {
    #[default]
    Rational,
    Prime(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Self, AlgebraError> {
        if !(2..=MAX_PRIME).contains(&p) || !is_prime(p) {
            return Err(AlgebraError::NonPrimeModulus(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(&self) -> Coefficient {
        self.from_i64(0)
    }

    pub fn one(&self) -> Coefficient {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Coefficient {
        self.from_bigint(&BigInt::from(v))
    }

    pub fn from_bigint(&self, v: &BigInt) -> Coefficient {
        match *self {
            Field::Rational => Coefficient::Rational(BigRational::from_integer(v.clone())),
            Field::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(p));
                Coefficient::Prime {
                    value: r.to_u64().expect("residue fits in u64"),
                    modulus: p,
                }
            }
        }
    }

    /// `num / den` in this field; `None` when `den` vanishes in the field.
    pub fn ratio(&self, num: &BigInt, den: &BigInt) -> Option<Coefficient> {
        let d = self.from_bigint(den);
        if d.is_zero() {
            return None;
        }
        Some(&self.from_bigint(num) * &d.inverse())
    }

    /// Short tag used in reports: `q` or `fp:P`.
    pub fn tag(&self) -> String {
        match self {
            Field::Rational => "q".to_string(),
            Field::Prime(p) => format!("fp:{p}"),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

impl FromStr for Field {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s {
            "q" | "Q" | "qq" | "QQ" => Ok(Field::Rational),
            _ => {
                let rest = s
                    .strip_prefix("fp:")
                    .or_else(|| s.strip_prefix("FP:"))
                    .ok_or_else(|| AlgebraError::UnknownField(s.to_string()))?;
                let p: u64 = rest
                    .parse()
                    .map_err(|_| AlgebraError::UnknownField(s.to_string()))?;
                Field::prime(p)
            }
        }
    }
}

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    r
}

/// An element of a coefficient field.
///
/// Rationals are kept in lowest terms with positive denominator (guaranteed by
/// `BigRational`); prime-field values always lie in `[0, p)`. Mixing elements
/// of different fields is a logic error and panics.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Coefficient {
    Rational(BigRational),
    Prime { value: u64, modulus: u64 },
}

impl Coefficient {
    pub fn field(&self) -> Field {
        match self {
            Coefficient::Rational(_) => Field::Rational,
            Coefficient::Prime { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coefficient::Rational(r) => r.is_zero(),
            Coefficient::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coefficient::Rational(r) => r.is_one(),
            Coefficient::Prime { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inverse(&self) -> Coefficient {
        assert!(!self.is_zero(), "inverse of zero coefficient");
        match self {
            Coefficient::Rational(r) => Coefficient::Rational(r.recip()),
            Coefficient::Prime { value, modulus } => Coefficient::Prime {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        }
    }

    /// True when the printed form starts with a minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Coefficient::Rational(r) => r.is_negative(),
            Coefficient::Prime { .. } => false,
        }
    }

    pub fn abs(&self) -> Coefficient {
        match self {
            Coefficient::Rational(r) => Coefficient::Rational(r.abs()),
            other => other.clone(),
        }
    }

    /// The value as a rational number, when the field is `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Coefficient::Rational(r) => Some(r),
            Coefficient::Prime { .. } => None,
        }
    }

    /// Integer value when the coefficient is an integer (any element of `F_p`
    /// counts as its canonical representative).
    pub fn to_integer(&self) -> Option<BigInt> {
        match self {
            Coefficient::Rational(r) if r.is_integer() => Some(r.to_integer()),
            Coefficient::Rational(_) => None,
            Coefficient::Prime { value, .. } => Some(BigInt::from(*value)),
        }
    }
}

fn same_prime(a: u64, b: u64) -> u64 {
    assert_eq!(a, b, "coefficients from different prime fields");
    a
}

impl std::ops::Add for &Coefficient {
    type Output = Coefficient;
    fn add(self, rhs: &Coefficient) -> Coefficient {
        match (self, rhs) {
            (Coefficient::Rational(a), Coefficient::Rational(b)) => Coefficient::Rational(a + b),
            (
                Coefficient::Prime { value: a, modulus: p },
                Coefficient::Prime { value: b, modulus: q },
            ) => {
                let p = same_prime(*p, *q);
                Coefficient::Prime {
                    value: ((*a as u128 + *b as u128) % p as u128) as u64,
                    modulus: p,
                }
            }
            _ => panic!("coefficients from different fields"),
        }
    }
}

impl std::ops::Sub for &Coefficient {
    type Output = Coefficient;
    fn sub(self, rhs: &Coefficient) -> Coefficient {
        self + &(-rhs)
    }
}

impl std::ops::Mul for &Coefficient {
    type Output = Coefficient;
    fn mul(self, rhs: &Coefficient) -> Coefficient {
        match (self, rhs) {
            (Coefficient::Rational(a), Coefficient::Rational(b)) => Coefficient::Rational(a * b),
            (
                Coefficient::Prime { value: a, modulus: p },
                Coefficient::Prime { value: b, modulus: q },
            ) => {
                let p = same_prime(*p, *q);
                Coefficient::Prime {
                    value: mul_mod(*a, *b, p),
                    modulus: p,
                }
            }
            _ => panic!("coefficients from different fields"),
        }
    }
}

impl std::ops::Div for &Coefficient {
    type Output = Coefficient;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Coefficient) -> Coefficient {
        self * &rhs.inverse()
    }
}

impl std::ops::Neg for &Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        match self {
            Coefficient::Rational(a) => Coefficient::Rational(-a),
            Coefficient::Prime { value, modulus } => Coefficient::Prime {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Coefficient::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}

impl fmt::Debug for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
