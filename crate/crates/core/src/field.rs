//! Exact coefficient fields: the rationals and odd prime fields.
//!
//! A [`Field`] value is a lightweight context object; elements are plain data
//! (`BigRational` or a reduced `u64`) and every operation goes through the
//! context. Polynomials and matrices carry their field by value.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which exact field a computation lives over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FieldSpec {
    Rationals,
    Prime { p: u64 },
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime { p } => write!(f, "F_{p}"),
        }
    }
}

/// Arithmetic in Q or F_p. Elements carry no field parameters, so
/// constructors such as `from_i64` take the field by reference.
#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// Image of a rational number; fails when the denominator vanishes.
    fn from_rational(&self, r: &BigRational) -> Result<Self::Elem>;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn format(&self, a: &Self::Elem) -> String;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// The prime `p` when this is `F_p`.
    fn prime(&self) -> Option<u64> {
        match self.spec() {
            FieldSpec::Prime { p } => Some(p),
            FieldSpec::Rationals => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_rational(&self, r: &BigRational) -> Result<BigRational> {
        Ok(r.clone())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn format(&self, a: &BigRational) -> String {
        format_rational(a)
    }
}

/// `n` or `n/d` with the sign on the numerator.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"n"` or `"n/d"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        None => s.parse::<BigInt>().map(BigRational::from_integer).map_err(|_| bad()),
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::InvalidInput(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(n, d))
        }
    }
}

/// The prime field `F_p` for an odd prime `p < 2^31`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p == 2 {
            return Err(Error::CharacteristicTwo);
        }
        if !(3..(1 << 31)).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not an odd prime below 2^31")));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    /// Signed representative in `(-p/2, p/2]`.
    pub fn signed(&self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }

    /// Quadratic character: 0, 1 or -1.
    pub fn legendre(&self, a: u64) -> i64 {
        let a = a % self.p;
        if a == 0 {
            return 0;
        }
        if self.pow(&a, (self.p - 1) / 2) == 1 {
            1
        } else {
            -1
        }
    }

    /// Smallest quadratic non-residue.
    pub fn least_nonresidue(&self) -> u64 {
        (2..self.p).find(|&a| self.legendre(a) == -1).expect("odd prime has a non-residue")
    }

    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.p
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime { p: self.p }
    }
    #[inline]
    fn zero(&self) -> u64 {
        0
    }
    #[inline]
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        self.reduce_i64(v)
    }
    fn from_rational(&self, r: &BigRational) -> Result<u64> {
        let p = BigInt::from(self.p);
        let n = r.numer().mod_floor(&p).to_u64().expect("reduced");
        let d = r.denom().mod_floor(&p).to_u64().expect("reduced");
        if d == 0 {
            return Err(Error::InvalidInput(format!("denominator of {} vanishes mod {}", format_rational(r), self.p)));
        }
        Ok(self.mul(&n, &self.inv(&d).expect("nonzero")))
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(a, self.p - 2))
        }
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
}

/// `F_{p^2} = F_p[w]/(w^2 - nu)` with `nu` the least non-residue.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadraticExtension {
    base: PrimeField,
    nu: u64,
}

/// Element `a + b w`.
pub type Fq2 = (u64, u64);

impl QuadraticExtension {
    pub fn new(base: PrimeField) -> Self {
        QuadraticExtension { base, nu: base.least_nonresidue() }
    }

    pub fn with_nonresidue(base: PrimeField, nu: u64) -> Result<Self> {
        if base.legendre(nu) != -1 {
            return Err(Error::InvalidInput(format!("{nu} is a square mod {}", base.p())));
        }
        Ok(QuadraticExtension { base, nu })
    }

    pub fn base(&self) -> PrimeField {
        self.base
    }

    pub fn nonresidue(&self) -> u64 {
        self.nu
    }

    #[inline]
    pub fn add(&self, x: Fq2, y: Fq2) -> Fq2 {
        (self.base.add(&x.0, &y.0), self.base.add(&x.1, &y.1))
    }

    #[inline]
    pub fn mul(&self, x: Fq2, y: Fq2) -> Fq2 {
        let f = &self.base;
        let p = f.p();
        let re = (x.0 * y.0 + (x.1 * y.1 % p) * self.nu) % p;
        let im = (x.0 * y.1 + x.1 * y.0) % p;
        (re, im)
    }

    /// Norm down to `F_p`: `a^2 - nu b^2`.
    #[inline]
    pub fn norm(&self, x: Fq2) -> u64 {
        let f = &self.base;
        f.sub(&f.mul(&x.0, &x.0), &f.mul(&self.nu, &f.mul(&x.1, &x.1)))
    }

    /// Quadratic character of `F_{p^2}`, computed through the norm.
    #[inline]
    pub fn legendre(&self, x: Fq2) -> i64 {
        self.base.legendre(self.norm(x))
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq2> {
        let p = self.base.p();
        (0..p).flat_map(move |a| (0..p).map(move |b| (a, b)))
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Sign of a rational: -1, 0 or 1.
pub fn sign(r: &BigRational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_rejects_two_and_composites() {
        assert_eq!(PrimeField::new(2), Err(Error::CharacteristicTwo));
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(11).is_ok());
    }

    #[test]
    fn inverse_and_legendre() {
        let f = PrimeField::new(7).unwrap();
        for a in 1..7 {
            assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
        }
        let squares: Vec<u64> = (1..7).filter(|&a| f.legendre(a) == 1).collect();
        assert_eq!(squares, vec![1, 2, 4]);
        assert_eq!(f.least_nonresidue(), 3);
    }

    #[test]
    fn rational_reduction() {
        let f = PrimeField::new(5).unwrap();
        let half = parse_rational("1/2").unwrap();
        assert_eq!(f.from_rational(&half).unwrap(), 3);
        assert!(f.from_rational(&parse_rational("1/10").unwrap()).is_err());
        assert_eq!(f.from_rational(&parse_rational("-7").unwrap()).unwrap(), 3);
    }

    #[test]
    fn extension_character_matches_brute_force_squares() {
        let f = PrimeField::new(5).unwrap();
        let ext = QuadraticExtension::new(f);
        let mut is_square = std::collections::HashSet::new();
        for x in ext.elements() {
            is_square.insert(ext.mul(x, x));
        }
        for x in ext.elements() {
            if x == (0, 0) {
                continue;
            }
            assert_eq!(ext.legendre(x) == 1, is_square.contains(&x), "{x:?}");
        }
    }

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "-3", "5/7", "-2/9"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
