//! Exact coefficient fields: the rationals and prime fields GF(p).
//!
//! A [`Coefficient`] carries its own field tag so that arithmetic never needs
//! a context argument. Values are always canonical: rationals are reduced with
//! a positive denominator, residues live in `[0, p)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("{0} is not a prime in [3, 2^32)")]
    NotPrime(u64),
    #[error("cannot parse coefficient `{0}`")]
    Parse(String),
    #[error("cannot parse field `{0}` (expected `rational` or `prime:<p>`)")]
    ParseField(String),
}

/// The coefficient field of a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

/// Default prime for randomized suites.
pub const DEFAULT_PRIME: u64 = 32003;

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= p {
        if p.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if !(3..1 << 32).contains(&p) || !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn zero(self) -> Coefficient {
        self.from_i64(0)
    }

    pub fn one(self) -> Coefficient {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Coefficient {
        match self {
            FieldSpec::Rationals => Coefficient::Rational(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::Prime(p) => Coefficient::Modular { value: n.rem_euclid(p as i64) as u64, modulus: p },
        }
    }

    pub fn from_rational(self, r: &BigRational) -> Result<Coefficient, FieldError> {
        match self {
            FieldSpec::Rationals => Ok(Coefficient::Rational(r.clone())),
            FieldSpec::Prime(p) => {
                let m = BigInt::from(p);
                let num = r.numer().mod_floor(&m).to_u64().unwrap_or(0);
                let den = r.denom().mod_floor(&m).to_u64().unwrap_or(0);
                let num = Coefficient::Modular { value: num, modulus: p };
                let den = Coefficient::Modular { value: den, modulus: p };
                num.checked_div(&den)
            }
        }
    }

    /// Parses `"3"`, `"-3/7"` (ASCII or Unicode minus) into this field.
    pub fn parse_coefficient(self, s: &str) -> Result<Coefficient, FieldError> {
        let cleaned: String = s.trim().replace('\u{2212}', "-");
        let err = || FieldError::Parse(s.to_string());
        let r = match cleaned.split_once('/') {
            Some((n, d)) => {
                let n = BigInt::from_str(n.trim()).map_err(|_| err())?;
                let d = BigInt::from_str(d.trim()).map_err(|_| err())?;
                if d.is_zero() {
                    return Err(FieldError::DivisionByZero);
                }
                BigRational::new(n, d)
            }
            None => BigRational::from_integer(BigInt::from_str(&cleaned).map_err(|_| err())?),
        };
        self.from_rational(&r)
    }

    /// Small integers in `[-9, 9]` over ℚ; uniform residues over GF(p).
    pub fn random<R: Rng + ?Sized>(self, rng: &mut R) -> Coefficient {
        match self {
            FieldSpec::Rationals => self.from_i64(rng.random_range(-9..=9)),
            FieldSpec::Prime(p) => Coefficient::Modular { value: rng.random_range(0..p), modulus: p },
        }
    }

    pub fn random_nonzero<R: Rng + ?Sized>(self, rng: &mut R) -> Coefficient {
        loop {
            let c = self.random(rng);
            if !c.is_zero() {
                return c;
            }
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => p,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "rational"),
            FieldSpec::Prime(p) => write!(f, "prime:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        match t.to_ascii_lowercase().as_str() {
            "rational" | "rationals" | "q" | "qq" => return Ok(FieldSpec::Rationals),
            _ => {}
        }
        let digits =
            t.strip_prefix("prime:").or_else(|| t.strip_prefix("GF(").and_then(|r| r.strip_suffix(')'))).unwrap_or(t);
        let p: u64 = digits.parse().map_err(|_| FieldError::ParseField(s.to_string()))?;
        FieldSpec::prime(p)
    }
}

/// An element of ℚ or GF(p), in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Coefficient {
    Rational(BigRational),
    Modular { value: u64, modulus: u64 },
}

fn mod_inverse(a: u64, p: u64) -> Option<u64> {
    if a == 0 {
        return None;
    }
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, a as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(p as i64) as u64)
}

impl Coefficient {
    pub fn field(&self) -> FieldSpec {
        match self {
            Coefficient::Rational(_) => FieldSpec::Rationals,
            Coefficient::Modular { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coefficient::Rational(r) => r.is_zero(),
            Coefficient::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coefficient::Rational(r) => r.is_one(),
            Coefficient::Modular { value, .. } => *value == 1,
        }
    }

    /// True when the printed form carries a leading minus sign.
    pub fn is_negative(&self) -> bool {
        matches!(self, Coefficient::Rational(r) if r.is_negative())
    }

    pub fn inv(&self) -> Result<Coefficient, FieldError> {
        match self {
            Coefficient::Rational(r) => {
                if r.is_zero() {
                    Err(FieldError::DivisionByZero)
                } else {
                    Ok(Coefficient::Rational(r.recip()))
                }
            }
            Coefficient::Modular { value, modulus } => mod_inverse(*value, *modulus)
                .map(|v| Coefficient::Modular { value: v, modulus: *modulus })
                .ok_or(FieldError::DivisionByZero),
        }
    }

    pub fn checked_div(&self, other: &Coefficient) -> Result<Coefficient, FieldError> {
        Ok(self * &other.inv()?)
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Coefficient::Rational(r) => Some(r),
            Coefficient::Modular { .. } => None,
        }
    }
}

fn mismatch(a: &Coefficient, b: &Coefficient) -> ! {
    panic!("coefficient field mismatch: {} vs {}", a.field(), b.field())
}

impl Add for &Coefficient {
    type Output = Coefficient;
    fn add(self, rhs: &Coefficient) -> Coefficient {
        match (self, rhs) {
            (Coefficient::Rational(a), Coefficient::Rational(b)) => Coefficient::Rational(a + b),
            (Coefficient::Modular { value: a, modulus: p }, Coefficient::Modular { value: b, modulus: q })
                if p == q =>
            {
                Coefficient::Modular { value: (a + b) % p, modulus: *p }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Sub for &Coefficient {
    type Output = Coefficient;
    fn sub(self, rhs: &Coefficient) -> Coefficient {
        match (self, rhs) {
            (Coefficient::Rational(a), Coefficient::Rational(b)) => Coefficient::Rational(a - b),
            (Coefficient::Modular { value: a, modulus: p }, Coefficient::Modular { value: b, modulus: q })
                if p == q =>
            {
                Coefficient::Modular { value: (a + p - b) % p, modulus: *p }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Mul for &Coefficient {
    type Output = Coefficient;
    fn mul(self, rhs: &Coefficient) -> Coefficient {
        match (self, rhs) {
            (Coefficient::Rational(a), Coefficient::Rational(b)) => Coefficient::Rational(a * b),
            (Coefficient::Modular { value: a, modulus: p }, Coefficient::Modular { value: b, modulus: q })
                if p == q =>
            {
                Coefficient::Modular { value: (a * b) % p, modulus: *p }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        match self {
            Coefficient::Rational(a) => Coefficient::Rational(-a),
            Coefficient::Modular { value, modulus } => {
                Coefficient::Modular { value: (modulus - value) % modulus, modulus: *modulus }
            }
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Coefficient {
            type Output = Coefficient;
            fn $m(self, rhs: Coefficient) -> Coefficient {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        -&self
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
            Coefficient::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}
