//! Quadric surface bundles: double projection from a point of `X`, the
//! parameter count for bundles over `ℙ¹ × ℙ¹`, and the diagonal
//! degeneration check.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::finite::hyperelliptic::hyperelliptic_counts;
use crate::finite::torsor::signed_discriminant;
use crate::matrix::{Matrix, PolyMatrix};
use crate::pencil::Pencil;
use crate::poly::{var_names, Poly};
use crate::univariate::BinaryForm;

/// A symmetric 4×4 matrix of polynomials, bihomogeneous in two variable
/// groups. A bundle over `ℙ¹` leaves the second group empty.
#[derive(Debug, Clone)]
pub struct BundleMatrix<F: Field> {
    matrix: PolyMatrix<F>,
    groups: [Vec<usize>; 2],
    bidegrees: Vec<Vec<Option<(u32, u32)>>>,
}

impl<F: Field> BundleMatrix<F> {
    pub fn new(matrix: PolyMatrix<F>, groups: [Vec<usize>; 2]) -> Result<Self> {
        if matrix.size() != 4 {
            return Err(Error::Dimension(format!("bundle matrix must be 4x4, got {}", matrix.size())));
        }
        let matrix = PolyMatrix::symmetric(matrix.entries().to_vec())?;
        let mut bidegrees = vec![vec![None; 4]; 4];
        for (i, row) in bidegrees.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                let e = matrix.get(i, j);
                if e.is_zero() {
                    continue;
                }
                *slot = Some(
                    e.bidegree(&groups[0], &groups[1])
                        .ok_or_else(|| Error::InvalidInput(format!("entry ({i},{j}) = {e} is not bihomogeneous")))?,
                );
            }
        }
        Ok(BundleMatrix { matrix, groups, bidegrees })
    }

    pub fn matrix(&self) -> &PolyMatrix<F> {
        &self.matrix
    }

    pub fn groups(&self) -> &[Vec<usize>; 2] {
        &self.groups
    }

    /// `None` marks a zero entry.
    pub fn bidegrees(&self) -> &[Vec<Option<(u32, u32)>>] {
        &self.bidegrees
    }

    /// Every nonzero entry has at most the declared bidegree, and exactly
    /// it when `exact`.
    pub fn conforms_to(&self, table: &[[(u32, u32); 4]; 4], exact: bool) -> bool {
        (0..4).all(|i| {
            (0..4).all(|j| match self.bidegrees[i][j] {
                None => true,
                Some(b) if exact => b == table[i][j],
                Some(b) => b.0 <= table[i][j].0 && b.1 <= table[i][j].1,
            })
        })
    }

    pub fn det(&self) -> Result<Poly<F>> {
        self.matrix.det()
    }
}

#[derive(Debug, Clone)]
pub struct DoubleProjection<F: Field> {
    /// Columns `m0 = x`, `m1..m3` completing `T_xX`, then `m4`, `m5` dual
    /// to the two tangent conditions.
    pub normalization: Matrix<F>,
    /// The bundle over `ℙ¹_{(t:u)}` in fiber coordinates `x1..x4`.
    pub bundle: BundleMatrix<F>,
    pub degeneracy_sextic: BinaryForm<F>,
}

/// Entry degrees in `(t, u)` of the double-projection matrix.
pub const DOUBLE_PROJECTION_DEGREES: [[(u32, u32); 4]; 4] = {
    let a = (1, 0);
    let b = (2, 0);
    [[a, a, a, b], [a, a, a, b], [a, a, a, b], [b, b, b, (3, 0)]]
};

/// Double projection of a smooth `X ⊂ ℙ⁵` from a point `x ∈ X`.
///
/// In coordinates `y` with `x = (1,0,…,0)` and `T_xX = {y4 = y5 = 0}` the
/// equations read `Q0 = 2·y0·y4 + Q0'` and `Q1 = 2·y0·y5 + Q1'`. Setting
/// `(y1, y2, y3, y4, y5) = (x1, x2, x3, u·x4, t·x4)` in `t·Q0' − u·Q1'`
/// gives the bundle; `y0` drops out since `y5·Q0 − y4·Q1` is free of it.
pub fn double_projection<F: Field>(pencil: &Pencil<F>, x: &[F::Elem]) -> Result<DoubleProjection<F>> {
    let f = pencil.field();
    if pencil.n() != 5 {
        return Err(Error::Dimension(format!("double projection needs n = 5, got {}", pencil.n())));
    }
    if x.len() != 6 {
        return Err(Error::Dimension("point must have 6 coordinates".into()));
    }
    if x.iter().all(|c| f.is_zero(c)) || !pencil.contains_point(x) {
        return Err(Error::InvalidInput("point is not on X".into()));
    }
    pencil.require_smooth()?;
    if pencil.jacobian_rank(x) < 2 {
        return Err(Error::SingularVariety("X is singular at the chosen point; choose another".into()));
    }
    let r = Matrix::from_rows(f, vec![pencil.q0().apply(x), pencil.q1().apply(x)]);
    let mut cols = vec![x.to_vec()];
    for k in r.kernel() {
        let mut trial = cols.clone();
        trial.push(k);
        if Matrix::from_rows(f, trial.clone()).rank() == trial.len() {
            cols = trial;
        }
    }
    if cols.len() != 4 {
        return Err(Error::Internal("tangent space is not 3-dimensional".into()));
    }
    for b in [[f.one(), f.zero()], [f.zero(), f.one()]] {
        cols.push(r.solve(&b).ok_or_else(|| Error::Internal("tangent conditions are dependent".into()))?);
    }
    let m = Matrix::from_columns(f, &cols);
    if f.is_zero(&m.det()) {
        return Err(Error::Internal("normalization matrix is singular".into()));
    }
    let normal = pencil.transform(&m)?;

    let vars = var_names(&["t", "u"]);
    let t = Poly::var(f, &vars, 0);
    let u = Poly::var(f, &vars, 1);
    // Gram entries of t·B0 − u·B1 on y1..y5.
    let n = |i: usize, j: usize| t.scale(normal.q0().get(i, j)).sub(&u.scale(normal.q1().get(i, j)));
    // Columns of S: e1, e2, e3, u·e4 + t·e5 in y1..y5 (indices 1..=5).
    let s: Vec<Vec<(usize, Poly<F>)>> = vec![
        vec![(1, Poly::one(f, &vars))],
        vec![(2, Poly::one(f, &vars))],
        vec![(3, Poly::one(f, &vars))],
        vec![(4, u.clone()), (5, t.clone())],
    ];
    let mut entries = vec![vec![Poly::zero(f, &vars); 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            let mut e = Poly::zero(f, &vars);
            for (i, si) in &s[a] {
                for (j, sj) in &s[b] {
                    e = e.add(&si.mul(&n(*i, *j)).mul(sj));
                }
            }
            entries[a][b] = e;
        }
    }
    let bundle = BundleMatrix::new(PolyMatrix::new(entries)?, [vec![0, 1], vec![]])?;
    if !bundle.conforms_to(&DOUBLE_PROJECTION_DEGREES, true) {
        return Err(Error::Internal("bundle entries have unexpected degrees".into()));
    }
    let det = bundle.det()?;
    if det.is_zero() {
        return Err(Error::InvalidInput("every fiber is degenerate; choose another point".into()));
    }
    let degeneracy_sextic = BinaryForm::new(f, (0..=6).map(|i| det.coeff(&[6 - i, i])).collect());
    if !degeneracy_sextic.is_squarefree()? {
        return Err(Error::InvalidInput("degeneracy sextic has a repeated root; choose another point".into()));
    }
    Ok(DoubleProjection { normalization: m, bundle, degeneracy_sextic })
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct DegeneracyComparison {
    pub q: u64,
    /// `(N1, N2)` of `y² = det A`.
    pub degeneracy_counts: (u64, u64),
    /// `(N1, N2)` of the genus-2 curve attached to the pencil.
    pub discriminant_counts: (u64, u64),
    pub equal: bool,
}

/// Point counts of the double cover branched along the degeneracy sextic
/// against those of the pencil's genus-2 curve `y² = −F`.
pub fn compare_degeneracy(
    pencil: &Pencil<PrimeField>,
    dp: &DoubleProjection<PrimeField>,
) -> Result<DegeneracyComparison> {
    let degeneracy_counts = hyperelliptic_counts(&dp.degeneracy_sextic)?;
    let disc = signed_discriminant(&pencil.discriminant_form()?, pencil.q0().size());
    let discriminant_counts = hyperelliptic_counts(&disc)?;
    Ok(DegeneracyComparison {
        q: pencil.field().p(),
        degeneracy_counts,
        discriminant_counts,
        equal: degeneracy_counts == discriminant_counts,
    })
}

/// `h⁰(ℙ¹ × ℙ¹, O(a, b))`.
pub fn h0(a: u64, b: u64) -> u64 {
    (a + 1) * (b + 1)
}

#[derive(Debug, Clone, Copy, Serialize, PartialEq, Eq)]
pub struct ParameterCounts {
    pub family: u64,
    pub generic: u64,
    pub degeneracy_bidegree: (u64, u64),
}

/// Parameter counts for the bundle family of level `d`: the upper 3×3
/// block has entries of bidegree `(1, d)`, the last column `(2, d+1)`,
/// the corner `(3, d+2)`.
pub fn bundle_parameter_counts(d: u64) -> ParameterCounts {
    let block = (1, d);
    let column = (2, d + 1);
    let corner = (3, d + 2);
    let entries = 6 * h0(block.0, block.1) + 3 * h0(column.0, column.1) + h0(corner.0, corner.1);
    // Block automorphisms: GL3 on the first three coordinates, scaling of
    // the fourth, and shifts of it by the first three with (1,1) forms.
    let automorphisms = 9 + 1 + 3 * h0(1, 1);
    let base_automorphisms = 6;
    let family = entries - automorphisms - base_automorphisms;

    // det has the diagonal degrees summed.
    let degeneracy_bidegree = (3 * block.1 + corner.1, 3 * block.0 + corner.0);
    let generic = h0(degeneracy_bidegree.0, degeneracy_bidegree.1) - 1 - base_automorphisms;
    ParameterCounts { family, generic, degeneracy_bidegree }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct FiberTangency {
    pub fiber: String,
    pub restriction: String,
    pub discriminant: String,
    pub identically_zero: bool,
    pub tangent: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct HptReport {
    pub g: String,
    pub determinant: String,
    pub determinant_bidegree: (u32, u32),
    /// Exponents of `y1, y2, z1, z2, g` in the determinant.
    pub factor_exponents: [u32; 5],
    pub identity_holds: bool,
    pub fibers: Vec<FiberTangency>,
    pub all_tangent: bool,
    /// Class of `2(F1 + F1' + F2 + F2') + E`, the determinant divisor.
    pub determinant_divisor_class: (u32, u32),
    /// Class of `2E + F1 + F1' + F2 + F2'`.
    pub configuration_class: (u32, u32),
}

/// Diagonal degeneration `diag(y1·z1, y1·z2, y2·z1, y2·z2·g)` over
/// `ℙ¹ × ℙ¹` for a `(2,2)` form `g` in variables `y1, y2, z1, z2`.
pub fn hpt_check<F: Field>(g: &Poly<F>) -> Result<HptReport> {
    if g.nvars() != 4 {
        return Err(Error::Dimension("g must be a polynomial in y1, y2, z1, z2".into()));
    }
    let (ys, zs) = ([0usize, 1], [2usize, 3]);
    if g.is_zero() || g.bidegree(&ys, &zs) != Some((2, 2)) {
        return Err(Error::InvalidInput(format!("g = {g} is not of bidegree (2,2)")));
    }
    let f = g.field();
    let vars = g.vars().clone();
    let v = |i| Poly::var(f, &vars, i);
    let zero = Poly::zero(f, &vars);
    let diag = [v(0).mul(&v(2)), v(0).mul(&v(3)), v(1).mul(&v(2)), v(1).mul(&v(3)).mul(g)];
    let mut entries = vec![vec![zero.clone(); 4]; 4];
    for (i, d) in diag.iter().enumerate() {
        entries[i][i] = d.clone();
    }
    let bundle = BundleMatrix::new(PolyMatrix::new(entries)?, [ys.to_vec(), zs.to_vec()])?;
    let det = bundle.det()?;
    let determinant_bidegree =
        det.bidegree(&ys, &zs).ok_or_else(|| Error::Internal("determinant is not bihomogeneous".into()))?;
    let mono = Poly::monomial(f, &vars, vec![2, 2, 2, 2], f.one());
    let identity_holds = det == mono.mul(g);

    // Powers of each variable in det beyond those already in g.
    let min_exp = |p: &Poly<F>, i: usize| p.terms().map(|(m, _)| m.exps()[i]).min().unwrap_or(0);
    let mut factor_exponents = [0u32; 5];
    for (i, slot) in factor_exponents.iter_mut().take(4).enumerate() {
        *slot = min_exp(&det, i) - min_exp(g, i);
    }
    let cofactor = Poly::monomial(f, &vars, factor_exponents[..4].to_vec(), f.one());
    factor_exponents[4] = u32::from(cofactor.mul(g) == det);

    let one = f.one();
    let z = f.zero();
    let fibers = [("y1=0", 0usize, 1usize, &zs), ("y2=0", 1, 0, &zs), ("z1=0", 2, 3, &ys), ("z2=0", 3, 2, &ys)]
        .into_iter()
        .map(|(name, killed, kept, free)| {
            let r = g.specialize(killed, &z).specialize(kept, &one);
            let a = r.coeff(&exps_for(free, [2, 0]));
            let b = r.coeff(&exps_for(free, [1, 1]));
            let c = r.coeff(&exps_for(free, [0, 2]));
            let disc = f.sub(&f.mul(&b, &b), &f.mul(&f.from_i64(4), &f.mul(&a, &c)));
            let identically_zero = r.is_zero();
            FiberTangency {
                fiber: name.to_string(),
                restriction: r.to_string(),
                discriminant: f.format(&disc),
                identically_zero,
                tangent: !identically_zero && f.is_zero(&disc),
            }
        })
        .collect::<Vec<_>>();
    let all_tangent = fibers.iter().all(|t| t.tangent);

    let e = (2u32, 2u32);
    let fiber_classes = [(1u32, 0u32), (1, 0), (0, 1), (0, 1)];
    let sum_f = fiber_classes.iter().fold((0, 0), |acc, c| (acc.0 + c.0, acc.1 + c.1));
    let determinant_divisor_class = (2 * sum_f.0 + e.0, 2 * sum_f.1 + e.1);
    let configuration_class = (2 * e.0 + sum_f.0, 2 * e.1 + sum_f.1);

    Ok(HptReport {
        g: g.to_string(),
        determinant: det.to_string(),
        determinant_bidegree,
        factor_exponents,
        identity_holds,
        fibers,
        all_tangent,
        determinant_divisor_class,
        configuration_class,
    })
}

fn exps_for(free: &[usize; 2], e: [u32; 2]) -> Vec<u32> {
    let mut out = vec![0; 4];
    out[free[0]] = e[0];
    out[free[1]] = e[1];
    out
}

/// Variables `y1, y2, z1, z2` for [`hpt_check`] inputs.
pub fn hpt_vars() -> std::sync::Arc<[String]> {
    var_names(&["y1", "y2", "z1", "z2"])
}
