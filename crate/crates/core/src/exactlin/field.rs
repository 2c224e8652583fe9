//! Exact scalar fields: the rationals and prime fields.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::LinAlgError;

/// A prime modulus below 2^31, checked at construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u32);

impl Prime {
    pub const MAX_EXCLUSIVE: u64 = 1 << 31;

    pub fn new(p: u64) -> Result<Self, LinAlgError> {
        if p >= Self::MAX_EXCLUSIVE || !is_prime(p) {
            return Err(LinAlgError::NotPrime(p));
        }
        Ok(Prime(p as u32))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The field a matrix or vector lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    PrimeField(Prime),
}

/// A single field element. Rationals are kept in lowest terms with a
/// positive denominator (guaranteed by `BigRational`), residues in `[0, p)`,
/// so derived equality is field equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Elem {
    Rational(BigRational),
    Residue(u32),
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Rational(q) => write!(f, "{q}"),
            Elem::Residue(r) => write!(f, "{r}"),
        }
    }
}

impl Elem {
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Elem::Rational(q) => Some(q),
            Elem::Residue(_) => None,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "F{}", p.get()),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = LinAlgError;

    /// Accepts `Q`, or a prime written as `5`, `F5` or `p=5`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(FieldSpec::Rationals);
        }
        let digits = s
            .strip_prefix("p=")
            .or_else(|| s.strip_prefix('F'))
            .or_else(|| s.strip_prefix('f'))
            .unwrap_or(s);
        let p: u64 = digits
            .parse()
            .map_err(|_| LinAlgError::Parse(format!("unrecognized field `{s}`")))?;
        FieldSpec::prime(p)
    }
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self, LinAlgError> {
        Ok(FieldSpec::PrimeField(Prime::new(p)?))
    }

    pub fn zero(&self) -> Elem {
        match self {
            FieldSpec::Rationals => Elem::Rational(BigRational::zero()),
            FieldSpec::PrimeField(_) => Elem::Residue(0),
        }
    }

    pub fn one(&self) -> Elem {
        match self {
            FieldSpec::Rationals => Elem::Rational(BigRational::one()),
            FieldSpec::PrimeField(_) => Elem::Residue(1),
        }
    }

    pub fn from_i64(&self, v: i64) -> Elem {
        match self {
            FieldSpec::Rationals => Elem::Rational(BigRational::from_integer(BigInt::from(v))),
            FieldSpec::PrimeField(p) => Elem::Residue(v.rem_euclid(i64::from(p.get())) as u32),
        }
    }

    /// Maps a rational into the field; fails over 𝔽_p when the denominator
    /// is divisible by p.
    pub fn from_rational(&self, q: &BigRational) -> Result<Elem, LinAlgError> {
        match self {
            FieldSpec::Rationals => Ok(Elem::Rational(q.clone())),
            FieldSpec::PrimeField(p) => {
                let modulus = BigInt::from(p.get());
                let reduce = |x: &BigInt| -> u32 {
                    let r = ((x % &modulus) + &modulus) % &modulus;
                    r.to_u32().expect("residue fits in u32")
                };
                let num = Elem::Residue(reduce(q.numer()));
                let den = Elem::Residue(reduce(q.denom()));
                let inv = self.inv(&den)?;
                Ok(self.mul(&num, &inv))
            }
        }
    }

    /// Checks that `e` is a canonical element of this field.
    pub fn contains(&self, e: &Elem) -> bool {
        match (self, e) {
            (FieldSpec::Rationals, Elem::Rational(_)) => true,
            (FieldSpec::PrimeField(p), Elem::Residue(r)) => *r < p.get(),
            _ => false,
        }
    }

    pub fn is_zero(&self, e: &Elem) -> bool {
        match e {
            Elem::Rational(q) => q.is_zero(),
            Elem::Residue(r) => *r == 0,
        }
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (FieldSpec::Rationals, Elem::Rational(x), Elem::Rational(y)) => Elem::Rational(x + y),
            (FieldSpec::PrimeField(p), Elem::Residue(x), Elem::Residue(y)) => {
                Elem::Residue(((u64::from(*x) + u64::from(*y)) % u64::from(p.get())) as u32)
            }
            _ => mismatch(self, a, b),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match (self, a) {
            (FieldSpec::Rationals, Elem::Rational(x)) => Elem::Rational(-x),
            (FieldSpec::PrimeField(p), Elem::Residue(x)) => {
                Elem::Residue(if *x == 0 { 0 } else { p.get() - x })
            }
            _ => mismatch(self, a, a),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (FieldSpec::Rationals, Elem::Rational(x), Elem::Rational(y)) => Elem::Rational(x * y),
            (FieldSpec::PrimeField(p), Elem::Residue(x), Elem::Residue(y)) => {
                Elem::Residue(((u64::from(*x) * u64::from(*y)) % u64::from(p.get())) as u32)
            }
            _ => mismatch(self, a, b),
        }
    }

    /// Multiplicative inverse; residues use the extended Euclidean algorithm.
    pub fn inv(&self, a: &Elem) -> Result<Elem, LinAlgError> {
        if self.is_zero(a) {
            return Err(LinAlgError::ZeroInverse);
        }
        match (self, a) {
            (FieldSpec::Rationals, Elem::Rational(x)) => Ok(Elem::Rational(x.recip())),
            (FieldSpec::PrimeField(p), Elem::Residue(x)) => Ok(Elem::Residue(mod_inverse(
                i64::from(*x),
                i64::from(p.get()),
            ))),
            _ => mismatch(self, a, a),
        }
    }

    /// Formats an element for the matrix wire format.
    pub(crate) fn elem_json(self, e: &Elem) -> serde_json::Value {
        match e {
            Elem::Rational(q) if q.is_integer() => match q.numer().to_i64() {
                Some(v) => serde_json::Value::from(v),
                None => serde_json::Value::from(q.numer().to_string()),
            },
            Elem::Rational(q) => serde_json::Value::from(q.to_string()),
            Elem::Residue(r) => serde_json::Value::from(*r),
        }
    }

    /// Sign of a rational element (`None` for residues).
    pub fn sign(&self, e: &Elem) -> Option<std::cmp::Ordering> {
        e.as_rational().map(|q| {
            if q.is_positive() {
                std::cmp::Ordering::Greater
            } else if q.is_negative() {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Equal
            }
        })
    }
}

fn mismatch(field: &FieldSpec, a: &Elem, b: &Elem) -> ! {
    panic!("elements {a:?}, {b:?} do not belong to field {field}")
}

fn mod_inverse(a: i64, p: i64) -> u32 {
    let (mut old_r, mut r) = (a, p);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1);
    old_s.rem_euclid(p) as u32
}

/// Inverse of a nonzero element, in whichever field it belongs to.
pub fn field_inverse(a: &Elem, field: &FieldSpec) -> Result<Elem, LinAlgError> {
    if !field.contains(a) {
        return Err(LinAlgError::FieldMismatch);
    }
    field.inv(a)
}
