//! Isotropy of quadratic forms and an exhaustive audit of the pencil
//! criterion over `F_q(t)`: `f + t·g` has a zero over `F_q(t)` iff `f` and
//! `g` have a common zero over `F_q`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals};
use crate::finite::points::ProjectiveSpace;
use crate::finite::FlatForm;
use crate::matrix::SymMatrix;

/// Over `ℝ`: isotropic unless definite of full rank.
pub fn isotropic_real(form: &SymMatrix<Rationals>) -> bool {
    let s = form.signature();
    !(s.zero == 0 && (s.pos == 0 || s.neg == 0))
}

/// Over `F_q`, q odd: degenerate forms and forms in at least 3 variables
/// are isotropic; a binary form is isotropic iff `−det` is a square.
/// For `q ≤ 7` the answer is audited by exhaustive search.
pub fn isotropic_finite(form: &SymMatrix<PrimeField>) -> Result<bool> {
    let f = form.field();
    if f.p() == 2 {
        return Err(Error::CharacteristicTwo);
    }
    let n = form.size();
    let det = form.det();
    let by_theorem = if f.is_zero(&det) {
        true
    } else {
        match n {
            1 => false,
            2 => f.legendre(f.neg(&det)) >= 0,
            _ => true,
        }
    };
    if f.p() <= 7 && (f.p() as u128).pow(n as u32) <= 1_000_000 {
        let flat = FlatForm::new(form);
        let found = ProjectiveSpace::new(*f, n - 1).iter().any(|x| flat.eval(&x) == 0);
        if found != by_theorem {
            return Err(Error::Internal(format!("isotropy audit disagrees for {form:?}")));
        }
    }
    Ok(by_theorem)
}

/// Cap on `q^N · q^{(N−1)·D}`, the search estimate of [`amer_harness`].
pub const AMER_GUARD: u128 = 500_000_000;

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct AmerReport {
    pub q: u64,
    pub nvars: usize,
    pub max_degree: usize,
    /// A projective common zero of `f` and `g`.
    pub common_zero: Option<Vec<u64>>,
    /// Coefficient vectors `x_0..x_D` of a solution `x(t)` of
    /// `(f + t·g)(x(t)) ≡ 0`, with `x_0 ≠ 0`.
    pub polynomial_solution: Option<Vec<Vec<u64>>>,
    /// Partial assignments examined by the polynomial search.
    pub nodes: u64,
    /// A common zero gives a constant solution.
    pub constant_solution_checked: bool,
    pub violation: bool,
}

/// Exhaustive audit for a pair of forms in `N ≤ 5` variables over `F_q`,
/// `q ≤ 5`, and solutions of degree `D ≤ 3`.
///
/// Dividing `x(t)` by a power of `t` and rescaling, a solution may be
/// taken with `x_0` a normalized nonzero vector. The coefficient of `t^k`
/// in `(f + t·g)(x(t))` involves only `x_0..x_k`, so partial assignments
/// are pruned level by level.
pub fn amer_harness(f: &SymMatrix<PrimeField>, g: &SymMatrix<PrimeField>, d: usize) -> Result<AmerReport> {
    let field = f.field();
    let q = field.p();
    let n = f.size();
    if g.size() != n || g.field() != field {
        return Err(Error::Dimension("forms must share size and field".into()));
    }
    if q == 2 {
        return Err(Error::CharacteristicTwo);
    }
    if q > 5 || n > 5 || d > 3 {
        return Err(Error::SizeGuard(format!("amer harness needs q <= 5, N <= 5, D <= 3; got q={q}, N={n}, D={d}")));
    }
    let estimate = (q as u128).pow(n as u32) * (q as u128).pow(((n - 1) * d) as u32);
    if estimate > AMER_GUARD {
        return Err(Error::SizeGuard(format!("search estimate {estimate} exceeds {AMER_GUARD}")));
    }
    let (ff, gf) = (FlatForm::new(f), FlatForm::new(g));
    let space = ProjectiveSpace::new(*field, n - 1);

    let common_zero = space.iter().find(|x| ff.eval(x) == 0 && gf.eval(x) == 0);
    let constant_solution_checked = match &common_zero {
        Some(x) => ff.eval(x) == 0 && gf.eval(x) == 0,
        None => true,
    };

    let (polynomial_solution, nodes) = match &common_zero {
        Some(x) => {
            let mut sol = vec![x.clone()];
            sol.extend((0..d).map(|_| vec![0; n]));
            (Some(sol), 1)
        }
        None => {
            let starts: Vec<Vec<u64>> = space.iter().filter(|x| ff.eval(x) == 0).collect();
            let results: Vec<(Option<Vec<Vec<u64>>>, u64)> = starts
                .into_par_iter()
                .map(|x0| {
                    let mut search = Search { ff: &ff, gf: &gf, q, n, d, nodes: 0 };
                    let mut coeffs = vec![x0];
                    let found = search.extend(&mut coeffs).then_some(coeffs);
                    (found, search.nodes)
                })
                .collect();
            let nodes = results.iter().map(|r| r.1).sum();
            (results.into_iter().find_map(|r| r.0), nodes)
        }
    };
    let violation = polynomial_solution.is_some() && common_zero.is_none() || !constant_solution_checked;
    Ok(AmerReport {
        q,
        nvars: n,
        max_degree: d,
        common_zero,
        polynomial_solution,
        nodes,
        constant_solution_checked,
        violation,
    })
}

struct Search<'a> {
    ff: &'a FlatForm,
    gf: &'a FlatForm,
    q: u64,
    n: usize,
    d: usize,
    nodes: u64,
}

impl Search<'_> {
    /// Coefficient of `t^k` in `(f + t·g)(x(t))`, using `x_0..x_k` only.
    fn coefficient(&self, xs: &[Vec<u64>], k: usize) -> u64 {
        let q = self.q;
        let mut acc = 0;
        for i in 0..xs.len().min(k + 1) {
            let j = k - i;
            if j < xs.len() {
                acc = (acc + self.ff.bilinear(&xs[i], &xs[j])) % q;
            }
            if k >= 1 && i < k && k - 1 - i < xs.len() {
                acc = (acc + self.gf.bilinear(&xs[i], &xs[k - 1 - i])) % q;
            }
        }
        acc
    }

    /// `xs` holds `x_0..x_m` with coefficients `0..=m` vanishing.
    fn extend(&mut self, xs: &mut Vec<Vec<u64>>) -> bool {
        self.nodes += 1;
        let m = xs.len() - 1;
        if m == self.d {
            return (self.d + 1..=2 * self.d + 1).all(|k| self.coefficient(xs, k) == 0);
        }
        let total = self.q.pow(self.n as u32);
        for idx in 0..total {
            let mut v = vec![0; self.n];
            let mut rest = idx;
            for c in v.iter_mut().rev() {
                *c = rest % self.q;
                rest /= self.q;
            }
            xs.push(v);
            if self.coefficient(xs, m + 1) == 0 && self.extend(xs) {
                return true;
            }
            xs.pop();
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_isotropy() {
        let q = Rationals;
        assert!(!isotropic_real(&SymMatrix::from_i64(&q, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap()));
        assert!(isotropic_real(&SymMatrix::from_i64(&q, &[vec![1, 0], vec![0, -1]]).unwrap()));
        assert!(isotropic_real(&SymMatrix::from_i64(&q, &[vec![1, 0], vec![0, 0]]).unwrap()));
    }

    #[test]
    fn finite_isotropy() {
        let f3 = PrimeField::new(3).unwrap();
        assert!(isotropic_finite(&SymMatrix::from_i64(&f3, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap())
            .unwrap());
        // x^2 + y^2 over F_3: -1 is not a square.
        assert!(!isotropic_finite(&SymMatrix::from_i64(&f3, &[vec![1, 0], vec![0, 1]]).unwrap()).unwrap());
        let f5 = PrimeField::new(5).unwrap();
        assert!(isotropic_finite(&SymMatrix::from_i64(&f5, &[vec![1, 0], vec![0, 1]]).unwrap()).unwrap());
        assert!(!isotropic_finite(&SymMatrix::from_i64(&f5, &[vec![2]]).unwrap()).unwrap());
    }

    #[test]
    fn amer_examples() {
        let f3 = PrimeField::new(3).unwrap();
        let f = SymMatrix::from_monomial_coeffs(&f3, 3, &[(0, 1, 1)]).unwrap();
        let g = SymMatrix::from_monomial_coeffs(&f3, 3, &[(0, 2, 1)]).unwrap();
        let r = amer_harness(&f, &g, 3).unwrap();
        assert!(r.common_zero.is_some());
        assert!(r.polynomial_solution.is_some());
        assert!(!r.violation);

        let f = SymMatrix::from_monomial_coeffs(&f3, 3, &[(0, 0, 1), (1, 1, 1), (2, 2, 1)]).unwrap();
        let g = SymMatrix::from_monomial_coeffs(&f3, 3, &[(0, 1, 1)]).unwrap();
        let r = amer_harness(&f, &g, 3).unwrap();
        assert_eq!(r.common_zero, None);
        assert_eq!(r.polynomial_solution, None);
        assert!(r.nodes > 0);
        assert!(!r.violation);
    }
}
