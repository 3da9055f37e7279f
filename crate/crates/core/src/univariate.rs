//! Dense univariate polynomials and binary forms over an exact field.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;

/// Coefficients in ascending degree, trailing zeros trimmed.
#[derive(Clone)]
pub struct UniPoly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> PartialEq for UniPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<F: Field> fmt::Debug for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<String> = self.coeffs.iter().map(|c| self.field.format(c)).collect();
        write!(f, "UniPoly[{}]", cs.join(", "))
    }
}

impl<F: Field> UniPoly<F> {
    pub fn new(field: &F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly { field: field.clone(), coeffs }
    }

    pub fn from_i64(field: &F, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: &F) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(f, (0..n).map(|i| f.add(&self.coeff(i), &other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(f, (0..n).map(|i| f.sub(&self.coeff(i), &other.coeff(i))).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Self::zero(f);
        }
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Self::new(f, out)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        Self::new(f, self.coeffs.iter().map(|a| f.mul(a, c)).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lc) => self.scale(&self.field.inv(lc).expect("nonzero leading coefficient")),
        }
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        Self::new(f, self.coeffs.iter().enumerate().skip(1).map(|(i, c)| f.mul(c, &f.from_i64(i as i64))).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let f = &self.field;
        let dd = d.degree().expect("division by zero polynomial");
        let lc_inv = f.inv(d.leading().unwrap()).unwrap();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![f.zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let top = rem.len() - 1;
            let c = f.mul(&rem[top], &lc_inv);
            let shift = top - dd;
            for (i, b) in d.coeffs.iter().enumerate() {
                rem[shift + i] = f.sub(&rem[shift + i], &f.mul(&c, b));
            }
            quo[shift] = c;
            rem.pop();
            while rem.last().is_some_and(|c| f.is_zero(c)) {
                rem.pop();
            }
        }
        (Self::new(f, quo), Self::new(f, rem))
    }

    /// Monic gcd; the gcd of two zero polynomials is zero.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `gcd(f, f')` has degree 0. Errors on the zero polynomial.
    pub fn is_squarefree(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.gcd(&self.derivative()).degree() == Some(0))
    }

    /// Resultant as the determinant of the Sylvester matrix.
    pub fn resultant(&self, other: &Self) -> F::Elem {
        let f = &self.field;
        let (m, n) = match (self.degree(), other.degree()) {
            (Some(m), Some(n)) => (m, n),
            _ => return f.zero(),
        };
        if m + n == 0 {
            return f.one();
        }
        let size = m + n;
        let mut rows = vec![vec![f.zero(); size]; size];
        for (r, row) in rows.iter_mut().enumerate().take(n) {
            for i in 0..=m {
                row[r + i] = self.coeffs[m - i].clone();
            }
        }
        for r in 0..m {
            for j in 0..=n {
                rows[n + r][r + j] = other.coeffs[n - j].clone();
            }
        }
        Matrix::from_rows(f, rows).det()
    }
}

/// A binary form `F(s0, s1) = Σ c_i s0^{d-i} s1^i` of fixed degree `d`.
#[derive(Clone)]
pub struct BinaryForm<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> PartialEq for BinaryForm<F> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<F: Field> fmt::Debug for BinaryForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryForm({self})")
    }
}

impl<F: Field> BinaryForm<F> {
    pub fn new(field: &F, coeffs: Vec<F::Elem>) -> Self {
        assert!(!coeffs.is_empty(), "binary form needs at least one coefficient");
        BinaryForm { field: field.clone(), coeffs }
    }

    pub fn from_i64(field: &F, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    /// Product of linear forms `a s0 + b s1`.
    pub fn from_linear_factors(field: &F, factors: &[(F::Elem, F::Elem)]) -> Self {
        let mut acc = Self::new(field, vec![field.one()]);
        for (a, b) in factors {
            acc = acc.mul(&Self::new(field, vec![a.clone(), b.clone()]));
        }
        acc
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.field.is_zero(c))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = &self.field;
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Self::new(f, out)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        Self::new(f, self.coeffs.iter().map(|a| f.mul(a, c)).collect())
    }

    pub fn eval(&self, s0: &F::Elem, s1: &F::Elem) -> F::Elem {
        let f = &self.field;
        let d = self.degree() as u64;
        let mut acc = f.zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            let t = f.mul(c, &f.mul(&f.pow(s0, d - i as u64), &f.pow(s1, i as u64)));
            acc = f.add(&acc, &t);
        }
        acc
    }

    /// `F(1, ρ)` as a polynomial in `ρ`.
    pub fn dehomogenize_s0(&self) -> UniPoly<F> {
        UniPoly::new(&self.field, self.coeffs.clone())
    }

    /// `F(σ, 1)` as a polynomial in `σ`.
    pub fn dehomogenize_s1(&self) -> UniPoly<F> {
        UniPoly::new(&self.field, self.coeffs.iter().rev().cloned().collect())
    }

    /// No repeated linear factor over the algebraic closure, checked on
    /// both affine charts so a multiple root at infinity is caught.
    pub fn is_squarefree(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let chart = |u: UniPoly<F>| -> bool {
            match u.degree() {
                Some(0) => true,
                _ => u.gcd(&u.derivative()).degree() == Some(0),
            }
        };
        Ok(chart(self.dehomogenize_s0()) && chart(self.dehomogenize_s1()))
    }

    /// `gcd(F(1,ρ), F'(1,ρ))` in the `s0 = 1` chart.
    pub fn chart_gcd(&self) -> UniPoly<F> {
        let u = self.dehomogenize_s0();
        u.gcd(&u.derivative())
    }

    /// Multiplicity of the root `s0 = 0`, i.e. of the point at infinity of
    /// the `s0 = 1` chart.
    pub fn multiplicity_at_infinity(&self) -> usize {
        self.coeffs.iter().rev().take_while(|c| self.field.is_zero(c)).count()
    }

    /// `F(a s0 + b s1, c s0 + d s1)`.
    pub fn substitute(&self, a: &F::Elem, b: &F::Elem, c: &F::Elem, d: &F::Elem) -> Self {
        let f = &self.field;
        let deg = self.degree();
        let l0 = Self::new(f, vec![a.clone(), b.clone()]);
        let l1 = Self::new(f, vec![c.clone(), d.clone()]);
        let mut out = Self::new(f, vec![f.zero(); deg + 1]);
        for (i, coef) in self.coeffs.iter().enumerate() {
            let mut term = Self::new(f, vec![coef.clone()]);
            for _ in 0..deg - i {
                term = term.mul(&l0);
            }
            for _ in 0..i {
                term = term.mul(&l1);
            }
            out = out.add(&term);
        }
        out
    }

    fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree());
        let f = &self.field;
        Self::new(f, self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f.add(a, b)).collect())
    }

    /// `self = λ·other` for some nonzero `λ`, which is returned.
    pub fn proportional_to(&self, other: &Self) -> Option<F::Elem> {
        let f = &self.field;
        if self.degree() != other.degree() || self.is_zero() || other.is_zero() {
            return None;
        }
        let k = other.coeffs.iter().position(|c| !f.is_zero(c))?;
        let lambda = f.div(&self.coeffs[k], &other.coeffs[k])?;
        if f.is_zero(&lambda) {
            return None;
        }
        self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| *a == f.mul(&lambda, b)).then_some(lambda)
    }
}

impl<F: Field> fmt::Display for BinaryForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars = crate::poly::var_names(&["s0", "s1"]);
        let d = self.degree() as u32;
        let p = crate::poly::Poly::from_terms(
            &self.field,
            &vars,
            self.coeffs.iter().enumerate().map(|(i, c)| (vec![d - i as u32, i as u32], c.clone())),
        );
        write!(f, "{p}")
    }
}
