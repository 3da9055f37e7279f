//! Sparse multivariate polynomials keyed by exponent vectors.
//!
//! Terms live in a `BTreeMap` ordered by graded lexicographic order on
//! monomials, so iteration order (and therefore every printed form) is
//! reproducible. Zero coefficients are never stored.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;

/// Exponent vector, ordered graded-lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn degree_in(&self, vars: &[usize]) -> u32 {
        vars.iter().map(|&i| self.0[i]).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when it divides.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0.iter().zip(&other.0).map(|(a, b)| a.checked_sub(*b)).collect::<Option<Vec<_>>>().map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone)]
pub struct Poly<F: Field> {
    field: F,
    vars: Arc<[String]>,
    terms: BTreeMap<Monomial, F::Elem>,
}

impl<F: Field> PartialEq for Poly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.terms == other.terms
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}

/// Shared variable list.
pub fn var_names<S: AsRef<str>>(names: &[S]) -> Arc<[String]> {
    names.iter().map(|s| s.as_ref().to_string()).collect::<Vec<_>>().into()
}

/// `prefix0, prefix1, ...`
pub fn indexed_vars(prefix: &str, count: usize) -> Arc<[String]> {
    (0..count).map(|i| format!("{prefix}{i}")).collect::<Vec<_>>().into()
}

impl<F: Field> Poly<F> {
    pub fn zero(field: &F, vars: &Arc<[String]>) -> Self {
        Poly { field: field.clone(), vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(field: &F, vars: &Arc<[String]>, c: F::Elem) -> Self {
        let mut p = Self::zero(field, vars);
        p.add_term(Monomial::one(vars.len()), c);
        p
    }

    pub fn one(field: &F, vars: &Arc<[String]>) -> Self {
        Self::constant(field, vars, field.one())
    }

    pub fn var(field: &F, vars: &Arc<[String]>, i: usize) -> Self {
        let mut p = Self::zero(field, vars);
        p.add_term(Monomial::var(vars.len(), i), field.one());
        p
    }

    pub fn monomial(field: &F, vars: &Arc<[String]>, exps: Vec<u32>, c: F::Elem) -> Self {
        assert_eq!(exps.len(), vars.len());
        let mut p = Self::zero(field, vars);
        p.add_term(Monomial(exps), c);
        p
    }

    pub fn from_terms(field: &F, vars: &Arc<[String]>, terms: impl IntoIterator<Item = (Vec<u32>, F::Elem)>) -> Self {
        let mut p = Self::zero(field, vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len());
            p.add_term(Monomial(e), c);
        }
        p
    }

    /// `Σ a_ij x_i x_j` for a (symmetric) Gram matrix.
    pub fn quadratic_form(field: &F, vars: &Arc<[String]>, gram: &[Vec<F::Elem>]) -> Self {
        let n = gram.len();
        let mut p = Self::zero(field, vars);
        for i in 0..n {
            for j in 0..n {
                let mut e = vec![0; vars.len()];
                e[i] += 1;
                e[j] += 1;
                p.add_term(Monomial(e), gram[i][j].clone());
            }
        }
        p
    }

    /// Linear form `Σ c_i x_i`.
    pub fn linear_form(field: &F, vars: &Arc<[String]>, coeffs: &[F::Elem]) -> Self {
        Self::from_terms(
            field,
            vars,
            coeffs.iter().enumerate().map(|(i, c)| (Monomial::var(vars.len(), i).0, c.clone())),
        )
    }

    fn add_term(&mut self, m: Monomial, c: F::Elem) {
        if self.field.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = self.field.add(existing, &c);
                if self.field.is_zero(&s) {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F::Elem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> F::Elem {
        self.terms.get(&Monomial(exps.to_vec())).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Common degree in each of two variable groups, if bihomogeneous.
    pub fn bidegree(&self, first: &[usize], second: &[usize]) -> Option<(u32, u32)> {
        let mut it = self.terms.keys().map(|m| (m.degree_in(first), m.degree_in(second)));
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    fn check_compatible(&self, other: &Self) {
        assert!(self.vars == other.vars, "polynomials over different variable lists");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), self.field.neg(c));
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(&self.field, &self.vars);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), self.field.neg(c));
        }
        out
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let mut out = Self::zero(&self.field, &self.vars);
        if self.field.is_zero(c) {
            return out;
        }
        for (m, a) in &self.terms {
            out.terms.insert(m.clone(), self.field.mul(a, c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut out = Self::zero(&self.field, &self.vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), self.field.mul(c1, c2));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.field, &self.vars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact division by a monomial, if every term is divisible.
    pub fn div_monomial(&self, m: &[u32]) -> Option<Self> {
        let m = Monomial(m.to_vec());
        let mut out = Self::zero(&self.field, &self.vars);
        for (t, c) in &self.terms {
            out.terms.insert(t.div(&m)?, c.clone());
        }
        Some(out)
    }

    pub fn eval(&self, point: &[F::Elem]) -> F::Elem {
        assert_eq!(point.len(), self.nvars());
        let f = &self.field;
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exps()) {
                if e > 0 {
                    t = f.mul(&t, &f.pow(x, e as u64));
                }
            }
            acc = f.add(&acc, &t);
        }
        acc
    }

    /// Substitutes `images[i]` for variable `i`; the result lives over the
    /// images' variable list.
    pub fn compose(&self, images: &[Poly<F>]) -> Result<Poly<F>> {
        if images.len() != self.nvars() {
            return Err(Error::Dimension(format!("substitution needs {} images, got {}", self.nvars(), images.len())));
        }
        let target =
            images.first().map(|p| p.vars.clone()).ok_or_else(|| Error::Dimension("empty substitution".into()))?;
        let mut out = Poly::zero(&self.field, &target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(&self.field, &target, c.clone());
            for (img, &e) in images.iter().zip(m.exps()) {
                if e > 0 {
                    t = t.mul(&img.pow(e));
                }
            }
            out = out.add(&t);
        }
        Ok(out)
    }

    /// Sets variable `var` to the constant `value`.
    pub fn specialize(&self, var: usize, value: &F::Elem) -> Self {
        let f = &self.field;
        let mut out = Self::zero(f, &self.vars);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = e[var];
            e[var] = 0;
            out.add_term(Monomial(e), f.mul(c, &f.pow(value, k as u64)));
        }
        out
    }

    pub fn derivative(&self, var: usize) -> Self {
        let f = &self.field;
        let mut out = Self::zero(f, &self.vars);
        for (m, c) in &self.terms {
            let k = m.0[var];
            if k == 0 {
                continue;
            }
            let mut e = m.0.clone();
            e[var] -= 1;
            out.add_term(Monomial(e), f.mul(c, &f.from_i64(k as i64)));
        }
        out
    }

    /// Same polynomial over a relabelled variable list of equal length.
    pub fn with_vars(&self, vars: &Arc<[String]>) -> Self {
        assert_eq!(vars.len(), self.nvars());
        Poly { field: self.field.clone(), vars: vars.clone(), terms: self.terms.clone() }
    }

    /// Zero-padded embedding into a larger variable list; variable `i`
    /// goes to `positions[i]`.
    pub fn embed(&self, vars: &Arc<[String]>, positions: &[usize]) -> Self {
        let mut out = Self::zero(&self.field, vars);
        for (m, c) in &self.terms {
            let mut e = vec![0; vars.len()];
            for (i, &k) in m.exps().iter().enumerate() {
                e[positions[i]] += k;
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    /// Terms in descending graded-lex order, e.g. `x0^2 - 3*x1*x2 + 1/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let one = self.field.one();
        let minus_one = self.field.neg(&one);
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = m
                .exps()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { self.vars[i].clone() } else { format!("{}^{}", self.vars[i], e) })
                .collect();
            let mono = mono.join("*");
            let (negative, body) = if self.field.prime().is_none() {
                let s = self.field.format(c);
                match s.strip_prefix('-') {
                    Some(rest) => (true, rest.to_string()),
                    None => (false, s),
                }
            } else {
                (false, self.field.format(c))
            };
            let sep = match (k, negative) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            write!(f, "{sep}")?;
            let unit = *c == one || (negative && *c == minus_one);
            if mono.is_empty() {
                write!(f, "{body}")?;
            } else if unit {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{body}*{mono}")?;
            }
        }
        Ok(())
    }
}

/// Parses sums of terms like `3*x0^2*x1 - 1/2*x2 + 7` over the given
/// variables. Coefficients are rationals mapped into the field.
pub fn parse_poly<F: Field>(field: &F, vars: &Arc<[String]>, src: &str) -> Result<Poly<F>> {
    let bad = |msg: String| Error::InvalidInput(format!("cannot parse polynomial {src:?}: {msg}"));
    let cleaned: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    if cleaned.is_empty() {
        return Err(bad("empty".into()));
    }
    // Split on top-level + and -, keeping the sign with each term.
    let mut pieces: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut negative = false;
    for (i, ch) in cleaned.char_indices() {
        if (ch == '+' || ch == '-') && !(i > 0 && cleaned[..i].ends_with('^')) {
            if !cur.is_empty() {
                pieces.push((negative, std::mem::take(&mut cur)));
            } else if i != 0 {
                return Err(bad("dangling sign".into()));
            }
            negative = ch == '-';
        } else {
            cur.push(ch);
        }
    }
    if cur.is_empty() {
        return Err(bad("trailing sign".into()));
    }
    pieces.push((negative, cur));

    let mut out = Poly::zero(field, vars);
    for (negative, term) in pieces {
        let mut coeff = num_rational::BigRational::from_integer(1.into());
        let mut exps = vec![0u32; vars.len()];
        for factor in term.split('*') {
            if factor.is_empty() {
                return Err(bad("empty factor".into()));
            }
            let (base, power) = match factor.split_once('^') {
                Some((b, e)) => (b, e.parse::<u32>().map_err(|_| bad(format!("bad exponent in {factor}")))?),
                None => (factor, 1),
            };
            if let Some(i) = vars.iter().position(|v| v == base) {
                exps[i] += power;
            } else {
                let c = crate::field::parse_rational(base)
                    .map_err(|_| bad(format!("unknown variable or number {base:?}")))?;
                for _ in 0..power {
                    coeff *= c.clone();
                }
            }
        }
        if negative {
            coeff = -coeff;
        }
        let c = field.from_rational(&coeff)?;
        out.add_term(Monomial(exps), c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn q(v: i64) -> num_rational::BigRational {
        Rationals.from_i64(v)
    }

    #[test]
    fn grlex_order() {
        let a = Monomial::new(vec![2, 0]);
        let b = Monomial::new(vec![0, 3]);
        let c = Monomial::new(vec![1, 1]);
        assert!(a < b, "lower degree first");
        assert!(c < a, "x0^2 > x0*x1 at equal degree");
    }

    #[test]
    fn arithmetic_and_zero_pruning() {
        let vars = indexed_vars("x", 2);
        let x = Poly::var(&Rationals, &vars, 0);
        let y = Poly::var(&Rationals, &vars, 1);
        let s = x.add(&y);
        let d = x.sub(&y);
        let prod = s.mul(&d);
        let expect = x.mul(&x).sub(&y.mul(&y));
        assert_eq!(prod, expect);
        assert!(prod.sub(&expect).is_zero());
        assert_eq!(prod.num_terms(), 2);
        assert!(prod.is_homogeneous());
        assert_eq!(prod.total_degree(), Some(2));
    }

    #[test]
    fn compose_and_eval() {
        let vars = indexed_vars("x", 2);
        let f = parse_poly(&Rationals, &vars, "x0^2 - 2*x0*x1 + 3").unwrap();
        let tvars = indexed_vars("t", 1);
        let t = Poly::var(&Rationals, &tvars, 0);
        let one = Poly::one(&Rationals, &tvars);
        let g = f.compose(&[t.clone(), one]).unwrap();
        assert_eq!(g.eval(&[q(5)]), q(25 - 10 + 3));
        assert_eq!(f.eval(&[q(5), q(1)]), q(18));
    }

    #[test]
    fn display_and_parse_agree() {
        let vars = indexed_vars("x", 3);
        let src = "x0^2*x1 - 1/2*x2 + 7";
        let p = parse_poly(&Rationals, &vars, src).unwrap();
        assert_eq!(p.to_string(), src);
        let back = parse_poly(&Rationals, &vars, &p.to_string()).unwrap();
        assert_eq!(back, p);
        assert!(parse_poly(&Rationals, &vars, "x0 + + x1").is_err());
        assert!(parse_poly(&Rationals, &vars, "w^2").is_err());
        assert!(parse_poly(&Rationals, &vars, "é^2+x0").is_err());
        assert!(parse_poly(&Rationals, &vars, "x0-é").is_err());
    }

    #[test]
    fn prime_field_coefficients_reduce() {
        let f = PrimeField::new(3).unwrap();
        let vars = indexed_vars("x", 2);
        let p = parse_poly(&f, &vars, "x0 + 2*x0 + x1").unwrap();
        assert_eq!(p, Poly::var(&f, &vars, 1));
    }

    #[test]
    fn bidegree_and_monomial_division() {
        let vars = var_names(&["y1", "y2", "z1", "z2"]);
        let p = parse_poly(&Rationals, &vars, "y1^2*z1*z2 + y1*y2*z2^2").unwrap();
        assert_eq!(p.bidegree(&[0, 1], &[2, 3]), Some((2, 2)));
        let d = p.div_monomial(&[1, 0, 0, 1]).unwrap();
        assert_eq!(d.to_string(), "y1*z1 + y2*z2");
        assert!(p.div_monomial(&[0, 1, 0, 0]).is_none());
    }

    #[test]
    fn derivative_and_specialize() {
        let vars = indexed_vars("x", 2);
        let p = parse_poly(&Rationals, &vars, "x0^3*x1 + x1^2").unwrap();
        assert_eq!(p.derivative(0).to_string(), "3*x0^2*x1");
        assert_eq!(p.specialize(1, &q(2)).to_string(), "2*x0^3 + 4");
    }
}
