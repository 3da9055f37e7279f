//! Projection of `X` from a line it contains, its cubic inverse, and
//! residual lines in 3-planes.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::finite::lines::{lines_on_forms, PluckerLine};
use crate::finite::FlatForm;
use crate::matrix::{Matrix, SymMatrix};
use crate::pencil::Pencil;
use crate::poly::{indexed_vars, Poly};

/// A rational map `ℙ^source ⇢ ℙ^target` given by homogeneous components
/// of a common degree.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalMap<F: Field> {
    source_dim: usize,
    target_dim: usize,
    degree: u32,
    components: Vec<Poly<F>>,
}

impl<F: Field> RationalMap<F> {
    pub fn new(components: Vec<Poly<F>>) -> Result<Self> {
        let first = components.first().ok_or_else(|| Error::Dimension("rational map without components".into()))?;
        let nvars = first.nvars();
        if nvars == 0 {
            return Err(Error::Dimension("rational map on a zero-variable ring".into()));
        }
        let mut degree = None;
        for c in &components {
            if c.nvars() != nvars {
                return Err(Error::Dimension("components over different variable lists".into()));
            }
            if !c.is_homogeneous() {
                return Err(Error::InvalidInput(format!("component {c} is not homogeneous")));
            }
            if let Some(d) = c.total_degree() {
                if degree.is_some_and(|e| e != d) {
                    return Err(Error::InvalidInput("components of different degrees".into()));
                }
                degree = Some(d);
            }
        }
        let degree = degree.ok_or_else(|| Error::InvalidInput("all components are zero".into()))?;
        Ok(RationalMap { source_dim: nvars - 1, target_dim: components.len() - 1, degree, components })
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn components(&self) -> &[Poly<F>] {
        &self.components
    }

    /// Image of a point; `None` on the base locus.
    pub fn apply(&self, x: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let f = self.components[0].field();
        let y: Vec<F::Elem> = self.components.iter().map(|c| c.eval(x)).collect();
        (!y.iter().all(|c| f.is_zero(c))).then_some(y)
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &RationalMap<F>) -> Result<RationalMap<F>> {
        if inner.target_dim != self.source_dim {
            return Err(Error::Dimension("maps do not compose".into()));
        }
        let comps = self.components.iter().map(|c| c.compose(&inner.components)).collect::<Result<Vec<_>>>()?;
        RationalMap::new(comps)
    }
}

/// Two points of projective space agree.
pub fn proportional<F: Field>(field: &F, x: &[F::Elem], y: &[F::Elem]) -> bool {
    x.len() == y.len()
        && (0..x.len()).all(|i| {
            (i + 1..x.len()).all(|j| field.sub(&field.mul(&x[i], &y[j]), &field.mul(&x[j], &y[i])) == field.zero())
        })
        && x.iter().any(|c| !field.is_zero(c))
        && y.iter().any(|c| !field.is_zero(c))
}

/// Output of [`project_from_line`]. In normalized coordinates `x = M y`
/// with the line `{y2 = … = yn = 0}`, each equation reads
/// `Q_i = y0·L_{i0} + y1·L_{i1} + Q_i'` with `L`, `Q'` in `y2..yn`.
#[derive(Debug, Clone)]
pub struct LineProjection<F: Field> {
    /// Columns: the two basis vectors of the line, then the completion.
    pub normalization: Matrix<F>,
    /// `x ↦ (y2 : … : yn)`.
    pub beta: RationalMap<F>,
    /// Cubics given by the 2×2 minors.
    pub beta_inv: RationalMap<F>,
    /// `L_{ij}` and `Q_i'` in the target variables `w0..w_{n-2}`.
    pub l: [[Poly<F>; 2]; 2],
    pub q: [Poly<F>; 2],
    /// Base locus of `beta_inv`: the three 2×2 minors of
    /// `((L00, L10), (L01, L11), (Q0', Q1'))`, the first being
    /// `L00·L11 − L01·L10`.
    pub quintic_curve: Vec<Poly<F>>,
}

impl<F: Field> LineProjection<F> {
    pub fn determinant_equation(&self) -> &Poly<F> {
        &self.quintic_curve[0]
    }

    /// `beta_inv(beta(x))` is proportional to `x`; `None` if `x` is on the
    /// line or `beta(x)` lies on `L00·L11 − L01·L10 = 0`, where the
    /// inverse contracts.
    pub fn round_trip(&self, x: &[F::Elem]) -> Option<bool> {
        let f = self.beta.components[0].field();
        let w = self.beta.apply(x)?;
        if f.is_zero(&self.determinant_equation().eval(&w)) {
            return None;
        }
        let back = self.beta_inv.apply(&w)?;
        Some(proportional(f, x, &back))
    }

    /// `beta(beta_inv(w))` is proportional to `w`; `None` on
    /// `L00·L11 − L01·L10 = 0`.
    pub fn inverse_round_trip(&self, w: &[F::Elem]) -> Option<bool> {
        let f = self.beta.components[0].field();
        if f.is_zero(&self.determinant_equation().eval(w)) {
            return None;
        }
        let x = self.beta_inv.apply(w)?;
        let back = self.beta.apply(&x)?;
        Some(proportional(f, w, &back))
    }
}

/// Projects a smooth `X ⊂ ℙ^n` from a line `ℓ ⊂ X` spanned by `u`, `v`.
pub fn project_from_line<F: Field>(pencil: &Pencil<F>, u: &[F::Elem], v: &[F::Elem]) -> Result<LineProjection<F>> {
    let f = pencil.field();
    let n = pencil.n();
    if n < 3 {
        return Err(Error::Dimension("projection from a line needs n >= 3".into()));
    }
    if u.len() != n + 1 || v.len() != n + 1 {
        return Err(Error::Dimension(format!("line basis vectors must have length {}", n + 1)));
    }
    for (k, q) in [pencil.q0(), pencil.q1()].into_iter().enumerate() {
        if !(f.is_zero(&q.eval(u)) && f.is_zero(&q.eval(v)) && f.is_zero(&q.bilinear(u, v))) {
            return Err(Error::InvalidInput(format!("the line is not contained in Q{k}")));
        }
    }
    pencil.require_smooth()?;
    let mut cols = vec![u.to_vec(), v.to_vec()];
    if Matrix::from_rows(f, cols.clone()).rank() != 2 {
        return Err(Error::InvalidInput("line basis vectors are dependent".into()));
    }
    for i in Matrix::complete_basis(f, &cols, n + 1) {
        let mut e = vec![f.zero(); n + 1];
        e[i] = f.one();
        cols.push(e);
    }
    let m = Matrix::from_columns(f, &cols);
    let minv = m.inverse().ok_or_else(|| Error::Internal("normalization matrix is singular".into()))?;
    let normal = pencil.transform(&m)?;

    let wvars = indexed_vars("w", n - 1);
    let two = f.from_i64(2);
    let split = |b: &SymMatrix<F>| {
        let lin = |row: usize| {
            let coeffs: Vec<F::Elem> = (2..=n).map(|k| f.mul(&two, b.get(row, k))).collect();
            Poly::linear_form(f, &wvars, &coeffs)
        };
        let gram: Vec<Vec<F::Elem>> = (2..=n).map(|i| (2..=n).map(|j| b.get(i, j).clone()).collect()).collect();
        ([lin(0), lin(1)], Poly::quadratic_form(f, &wvars, &gram))
    };
    let (l0, q0) = split(normal.q0());
    let (l1, q1) = split(normal.q1());
    let l = [l0, l1];
    let q = [q0, q1];

    let delta = l[0][0].mul(&l[1][1]).sub(&l[0][1].mul(&l[1][0]));
    if delta.is_zero() {
        return Err(Error::InvalidInput(
            "L00*L11 - L01*L10 vanishes identically; projection from this line degenerates".into(),
        ));
    }
    let y0 = l[0][1].mul(&q[1]).sub(&l[1][1].mul(&q[0]));
    let y1 = l[1][0].mul(&q[0]).sub(&l[0][0].mul(&q[1]));
    let quintic_curve = vec![delta.clone(), l[0][0].mul(&q[1]).sub(&l[1][0].mul(&q[0])), y0.clone()];

    // Cubic parametrization in y-coordinates, then back to x = M y.
    let mut ycubics = vec![y0, y1];
    ycubics.extend((0..n - 1).map(|k| delta.mul(&Poly::var(f, &wvars, k))));
    let xcubics: Vec<Poly<F>> = (0..=n)
        .map(|r| (0..=n).fold(Poly::zero(f, &wvars), |acc, c| acc.add(&ycubics[c].scale(m.get(r, c)))))
        .collect();
    let beta_inv = RationalMap::new(xcubics)?;

    let xvars = indexed_vars("x", n + 1);
    let beta = RationalMap::new((2..=n).map(|r| Poly::linear_form(f, &xvars, minv.row(r))).collect())?;

    // The cubics land on X identically.
    let [e0, e1] = pencil.equations();
    for e in [e0, e1] {
        if !e.compose(beta_inv.components())?.is_zero() {
            return Err(Error::Internal("cubic inverse does not map into X".into()));
        }
    }
    Ok(LineProjection { normalization: m, beta, beta_inv, l, q, quintic_curve })
}

pub fn project_from_plucker(pencil: &Pencil<PrimeField>, line: &PluckerLine) -> Result<LineProjection<PrimeField>> {
    project_from_line(pencil, &line.rows()[0], &line.rows()[1])
}

#[derive(Debug, Clone, Serialize)]
pub struct ResidualLine {
    pub line: PluckerLine,
    /// Degree of `Π ∩ X`, the product of the two restricted quadrics.
    pub curve_degree: u32,
    /// Degree of the complementary curve.
    pub residual_degree: u32,
}

/// The unique line of `Π ∩ X` for a 3-plane `Π` spanned by `basis`.
pub fn residual_line(pencil: &Pencil<PrimeField>, basis: &[Vec<u64>]) -> Result<ResidualLine> {
    let f = pencil.field();
    let n = pencil.n();
    if basis.len() != 4 || basis.iter().any(|b| b.len() != n + 1) {
        return Err(Error::Dimension(format!("a 3-plane needs 4 vectors of length {}", n + 1)));
    }
    if Matrix::from_rows(f, basis.to_vec()).rank() != 4 {
        return Err(Error::InvalidInput("3-plane basis is dependent".into()));
    }
    let p = Matrix::from_columns(f, basis);
    let c0 = pencil.q0().congruence(&p);
    let c1 = pencil.q1().congruence(&p);
    let pair = Matrix::from_rows(f, vec![c0.matrix().rows().concat(), c1.matrix().rows().concat()]);
    if pair.rank() < 2 {
        return Err(Error::InvalidInput("the plane meets X in a surface, not a curve".into()));
    }
    let found = lines_on_forms(f, &[FlatForm::new(&c0), FlatForm::new(&c1)], 3)?.lines;
    let line = match found.as_slice() {
        [] => return Err(Error::NotFound("the plane section contains no line".into())),
        [one] => one,
        many => return Err(Error::InvalidInput(format!("the plane section contains {} lines", many.len()))),
    };
    let to_ambient = |r: &[u64]| p.mul_vec(r);
    let ambient = PluckerLine::from_basis(f, &to_ambient(&line.rows()[0]), &to_ambient(&line.rows()[1]))?;
    Ok(ResidualLine { line: ambient, curve_degree: 4, residual_degree: 3 })
}
