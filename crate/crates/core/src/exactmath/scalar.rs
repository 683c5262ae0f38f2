//! Coefficient rings and their elements.
//!
//! Three rings are supported: the rationals (arbitrary precision), prime
//! fields `GF(p)`, and polynomial rings over the rationals in a declared list
//! of parameters. Elements carry enough of their ring to detect mixing.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::param::{ParamPoly, ParamSpace};
use crate::error::{Error, Result};

/// Descriptor of a coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ring {
    Rational,
    Prime(u64),
    Parametric(Arc<ParamSpace>),
}

/// An element of GF(p), stored as a residue in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn new(value: u64, modulus: u64) -> Self {
        Fp {
            value: value % modulus,
            modulus,
        }
    }

    fn add(self, other: Fp) -> Fp {
        let s = (self.value as u128 + other.value as u128) % self.modulus as u128;
        Fp::new(s as u64, self.modulus)
    }

    fn neg(self) -> Fp {
        if self.value == 0 {
            self
        } else {
            Fp::new(self.modulus - self.value, self.modulus)
        }
    }

    fn mul(self, other: Fp) -> Fp {
        let p = (self.value as u128 * other.value as u128) % self.modulus as u128;
        Fp::new(p as u64, self.modulus)
    }

    fn pow(self, mut e: u64) -> Fp {
        let mut base = self;
        let mut acc = Fp::new(1, self.modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            e >>= 1;
        }
        acc
    }

    fn inv(self) -> Option<Fp> {
        if self.value == 0 {
            None
        } else {
            Some(self.pow(self.modulus - 2))
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Largest modulus accepted for prime fields.
pub const MAX_PRIME: u64 = u32::MAX as u64;

impl Ring {
    /// The prime field `GF(p)`; `p` must be prime and at most [`MAX_PRIME`].
    pub fn prime(p: u64) -> Result<Ring> {
        if p > MAX_PRIME || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Ring::Prime(p))
    }

    /// A polynomial ring over the rationals in the given parameters.
    pub fn parametric<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Ring> {
        Ok(Ring::Parametric(Arc::new(ParamSpace::new(names)?)))
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, Ring::Parametric(_))
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Ring::Rational => Scalar::Rational(BigRational::from_integer(n.into())),
            Ring::Prime(p) => {
                let r = n.rem_euclid(*p as i64) as u64;
                Scalar::Modular(Fp::new(r, *p))
            }
            Ring::Parametric(space) => {
                Scalar::Param(ParamPoly::constant(space.clone(), BigRational::from_integer(n.into())))
            }
        }
    }

    /// Maps a rational number into this ring.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        match self {
            Ring::Rational => Ok(Scalar::Rational(q.clone())),
            Ring::Prime(p) => {
                let num = reduce_bigint(q.numer(), *p);
                let den = reduce_bigint(q.denom(), *p);
                let den = Fp::new(den, *p).inv().ok_or(Error::DivisionByZero)?;
                Ok(Scalar::Modular(Fp::new(num, *p).mul(den)))
            }
            Ring::Parametric(space) => Ok(Scalar::Param(ParamPoly::constant(space.clone(), q.clone()))),
        }
    }

    /// Parses a coefficient literal: `a`, `a/b`, or a parameter polynomial.
    pub fn parse(&self, text: &str) -> Result<Scalar> {
        match self {
            Ring::Parametric(space) => Ok(Scalar::Param(ParamPoly::parse(space.clone(), text)?)),
            _ => {
                let q = parse_rational(text)?;
                self.from_rational(&q)
            }
        }
    }

    /// Names of the parameters when the ring is parametric.
    pub fn parameters(&self) -> Option<&Arc<ParamSpace>> {
        match self {
            Ring::Parametric(space) => Some(space),
            _ => None,
        }
    }

    /// The element of this ring that is the named parameter.
    pub fn param(&self, name: &str) -> Result<Scalar> {
        match self {
            Ring::Parametric(space) => Ok(Scalar::Param(ParamPoly::variable_by_name(space.clone(), name)?)),
            other => Err(Error::UnsupportedRing {
                op: "param",
                ring: other.to_string(),
            }),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Rational => write!(f, "QQ"),
            Ring::Prime(p) => write!(f, "GF({p})"),
            Ring::Parametric(space) => write!(f, "QQ[{}]", space.names().join(", ")),
        }
    }
}

fn reduce_bigint(n: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    let mut r = n % &m;
    if r.is_negative() {
        r += &m;
    }
    r.to_u64().expect("residue fits in u64")
}

/// Parses `a`, `-a`, `a/b` (decimal integers). Accepts the unicode minus sign.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let cleaned: String = text.trim().replace('\u{2212}', "-");
    let bad = || Error::Parse(format!("invalid rational literal `{text}`"));
    let (num, den) = match cleaned.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (cleaned.as_str(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(num, den))
}

/// Formats a rational as `a` or `a/b`.
pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// A coefficient: an element of one of the supported rings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Rational(BigRational),
    Modular(Fp),
    Param(ParamPoly),
}

impl Scalar {
    pub fn ring(&self) -> Ring {
        match self {
            Scalar::Rational(_) => Ring::Rational,
            Scalar::Modular(x) => Ring::Prime(x.modulus),
            Scalar::Param(p) => Ring::Parametric(p.space().clone()),
        }
    }

    pub fn belongs_to(&self, ring: &Ring) -> bool {
        match (self, ring) {
            (Scalar::Rational(_), Ring::Rational) => true,
            (Scalar::Modular(x), Ring::Prime(p)) => x.modulus == *p,
            (Scalar::Param(a), Ring::Parametric(space)) => a.space() == space,
            _ => false,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Modular(x) => x.value == 0,
            Scalar::Param(p) => p.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Modular(x) => x.value == 1,
            Scalar::Param(p) => p.constant_value().is_some_and(|c| c.is_one()),
        }
    }

    /// Invertible in its ring: nonzero field elements and nonzero constants
    /// of a parameter ring.
    pub fn is_unit(&self) -> bool {
        match self {
            Scalar::Param(p) => p.constant_value().is_some_and(|c| !c.is_zero()),
            other => !other.is_zero(),
        }
    }

    fn mismatch(&self, other: &Scalar) -> Error {
        Error::MixedRings {
            left: self.ring().to_string(),
            right: other.ring().to_string(),
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a + b)),
            (Scalar::Modular(a), Scalar::Modular(b)) if a.modulus == b.modulus => Ok(Scalar::Modular(a.add(*b))),
            (Scalar::Param(a), Scalar::Param(b)) if a.space() == b.space() => Ok(Scalar::Param(a.add(b))),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a * b)),
            (Scalar::Modular(a), Scalar::Modular(b)) if a.modulus == b.modulus => Ok(Scalar::Modular(a.mul(*b))),
            (Scalar::Param(a), Scalar::Param(b)) if a.space() == b.space() => Ok(Scalar::Param(a.mul(b))),
            _ => Err(self.mismatch(other)),
        }
    }

    /// Multiplicative inverse. Parameter polynomials are invertible only when
    /// they are nonzero constants.
    pub fn checked_inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Rational(q) => {
                if q.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Scalar::Rational(q.recip()))
                }
            }
            Scalar::Modular(x) => x.inv().map(Scalar::Modular).ok_or(Error::DivisionByZero),
            Scalar::Param(p) => match p.constant_value() {
                Some(c) if c.is_zero() => Err(Error::DivisionByZero),
                Some(c) => Ok(Scalar::Param(ParamPoly::constant(p.space().clone(), c.recip()))),
                None => Err(Error::UnsupportedRing {
                    op: "inverse of a non-constant parameter polynomial",
                    ring: self.ring().to_string(),
                }),
            },
        }
    }

    pub fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Modular(x) => Scalar::Modular(x.neg()),
            Scalar::Param(p) => Scalar::Param(p.neg()),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            _ => None,
        }
    }

    pub fn as_param(&self) -> Option<&ParamPoly> {
        match self {
            Scalar::Param(p) => Some(p),
            _ => None,
        }
    }

    /// Reduces a rational coefficient modulo `p`.
    pub fn to_prime(&self, p: u64) -> Result<Scalar> {
        match self {
            Scalar::Rational(q) => Ring::prime(p)?.from_rational(q),
            Scalar::Modular(x) if x.modulus == p => Ok(self.clone()),
            other => Err(Error::UnsupportedRing {
                op: "reduction modulo p",
                ring: other.ring().to_string(),
            }),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{}", format_rational(q)),
            Scalar::Modular(x) => write!(f, "{}", x.value),
            Scalar::Param(p) => write!(f, "{p}"),
        }
    }
}

// Operator forms panic when rings are mixed; callers that cannot guarantee a
// single ring use the `checked_*` methods.
impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.checked_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}
