//! The toric threefold `x0x1 - x2x3 = x2x3 - x4x5 = 0` in `ℙ^5`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals};
use crate::finite::lines::{enumerate_lines, PluckerLine};
use crate::finite::points::{count_points, ProjectiveSpace};
use crate::matrix::SymMatrix;
use crate::pencil::Pencil;
use crate::poly::{indexed_vars, Poly};

pub fn toric_pencil<F: Field>(field: &F) -> Pencil<F> {
    let one = field.one();
    let m1 = field.from_i64(-1);
    let q0 = SymMatrix::from_monomial_coeffs(field, 6, &[(0, 1, one.clone()), (2, 3, m1.clone())]).unwrap();
    let q1 = SymMatrix::from_monomial_coeffs(field, 6, &[(2, 3, one), (4, 5, m1)]).unwrap();
    Pencil::new(q0, q1).unwrap()
}

/// The eight planes `{x_a = x_b = x_c = 0}`, one coordinate from each of
/// `{0,1}`, `{2,3}`, `{4,5}`, as their vanishing coordinates.
pub fn coordinate_planes() -> Vec<[usize; 3]> {
    let mut out = Vec::with_capacity(8);
    for a in [0, 1] {
        for b in [2, 3] {
            for c in [4, 5] {
                out.push([a, b, c]);
            }
        }
    }
    out
}

fn coordinate_point(i: usize) -> Vec<u64> {
    let mut v = vec![0; 6];
    v[i] = 1;
    v
}

/// Singular points of `X(F_q)` by an exhaustive Jacobian-rank scan.
pub fn toric_singular_points(field: &PrimeField) -> Result<Vec<Vec<u64>>> {
    let pencil = toric_pencil(field);
    let space = ProjectiveSpace::guarded(*field, 5)?;
    Ok(space.filter_par(|x| pencil.contains_point(x) && pencil.jacobian_rank(x) < 2))
}

/// Singular points over the rationals. The Jacobian's 2×2 minors are
/// monomials, so on each torus stratum `{x_i ≠ 0 ⇔ i ∈ S}` a minor either
/// vanishes identically or nowhere. Strata where every minor vanishes and
/// which meet `X` are collected; each must be a single coordinate point.
pub fn toric_singular_points_rational() -> Result<Vec<Vec<u64>>> {
    let q = Rationals;
    let [f0, f1] = toric_pencil(&q).equations();
    let grads: Vec<Vec<Poly<Rationals>>> =
        [&f0, &f1].iter().map(|f| (0..6).map(|i| f.derivative(i)).collect()).collect();
    let mut minors = Vec::new();
    for i in 0..6 {
        for j in i + 1..6 {
            let m = grads[0][i].mul(&grads[1][j]).sub(&grads[0][j].mul(&grads[1][i]));
            if m.num_terms() > 1 {
                return Err(Error::Internal(format!("minor {m} is not a monomial")));
            }
            if !m.is_zero() {
                minors.push(m);
            }
        }
    }
    let supported = |p: &Poly<Rationals>, support: u32| {
        p.terms().all(|(mono, _)| mono.exps().iter().enumerate().all(|(i, &e)| e == 0 || support & (1 << i) != 0))
    };
    let mut out = Vec::new();
    for support in 1u32..64 {
        if minors.iter().any(|m| supported(m, support)) {
            continue;
        }
        // Every minor vanishes on the stratum; does the stratum meet X?
        let k = support.count_ones();
        if k == 1 {
            let i = support.trailing_zeros() as usize;
            let pt: Vec<_> = (0..6).map(|c| q.from_i64(i64::from(c == i))).collect();
            if q.is_zero(&f0.eval(&pt)) && q.is_zero(&f1.eval(&pt)) {
                out.push(coordinate_point(i));
            }
        } else if stratum_meets_x(support) {
            return Err(Error::Internal(format!("singular stratum of dimension {} on X", k - 1)));
        }
    }
    Ok(out)
}

/// `X` is `p0 = p1 = p2` in the products `p_i = x_{2i} x_{2i+1}`, each of
/// which is either identically zero or free and nonzero on a stratum.
fn stratum_meets_x(support: u32) -> bool {
    let alive = |a: usize| support & (1 << a) != 0 && support & (1 << (a + 1)) != 0;
    let live: Vec<bool> = [0, 2, 4].iter().map(|&a| alive(a)).collect();
    live.iter().all(|&b| b) || live.iter().all(|&b| !b)
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct LineCensus {
    pub q: u64,
    /// Lines in each coordinate plane, in [`coordinate_planes`] order.
    pub planar_by_plane: Vec<u64>,
    /// Lines lying in at least one coordinate plane.
    pub planar: u64,
    pub nonplanar: u64,
    pub total: u64,
}

/// Classifies every `F_q`-line on `X` as planar or not.
pub fn toric_line_census(field: &PrimeField) -> Result<LineCensus> {
    let q = field.p();
    if q > 7 {
        return Err(Error::SizeGuard(format!("toric line census is limited to q <= 7, got {q}")));
    }
    let lines: Vec<PluckerLine> = enumerate_lines(&toric_pencil(field))?.lines;
    let planes = coordinate_planes();
    let planar_by_plane =
        planes.iter().map(|pl| lines.iter().filter(|l| l.in_coordinate_subspace(pl)).count() as u64).collect();
    let planar = lines.iter().filter(|l| planes.iter().any(|pl| l.in_coordinate_subspace(pl))).count() as u64;
    let total = lines.len() as u64;
    Ok(LineCensus { q, planar_by_plane, planar, nonplanar: total - planar, total })
}

/// Inclusion–exclusion prediction: 8 planes of `q² + q + 1` lines each,
/// minus the 12 lines shared by two planes (planes differing in one
/// choice meet in a line; any other two meet in a point), plus the
/// `(q - 1)²` torus points of each of the 4 split sextic del Pezzo
/// components, whose hexagon boundaries consist of planar lines.
pub fn predicted_census(q: u64) -> (u64, u64) {
    let plane_lines = q * q + q + 1;
    let shared = 8 * 3 / 2;
    let planar = 8 * plane_lines - shared;
    let dp6_points = q * q + 4 * q + 1;
    let boundary = 6 * (q - 1) + 6;
    let nonplanar = 4 * (dp6_points - boundary);
    (planar, nonplanar)
}

/// `x0x1 = x2x3 = x4x5 = 0`, the union of the eight planes, counted by
/// scan.
pub fn plane_union_count(field: &PrimeField) -> Result<u64> {
    let vars = indexed_vars("x", 6);
    let eqns: Vec<Poly<PrimeField>> = [[0, 1], [2, 3], [4, 5]]
        .iter()
        .map(|[a, b]| {
            let mut e = vec![0; 6];
            e[*a] = 1;
            e[*b] = 1;
            Poly::monomial(field, &vars, e, 1)
        })
        .collect();
    count_points(field, 6, &eqns)
}

/// The same count by inclusion–exclusion over all nonempty families of
/// planes; an intersection of coordinate planes is the coordinate subspace
/// cut out by the union of their vanishing sets.
pub fn plane_union_inclusion_exclusion(q: u64) -> i64 {
    let planes = coordinate_planes();
    let mut total = 0i64;
    for family in 1u32..(1 << planes.len()) {
        let mut zero = 0u32;
        for (i, pl) in planes.iter().enumerate() {
            if family & (1 << i) != 0 {
                for &c in pl {
                    zero |= 1 << c;
                }
            }
        }
        let free = 6 - zero.count_ones();
        let pts = if free == 0 { 0 } else { ((q.pow(free) - 1) / (q - 1)) as i64 };
        total += if family.count_ones() % 2 == 1 { pts } else { -pts };
    }
    total
}

/// Component-degree bookkeeping of the variety of lines: eight planes of
/// degree 1 and four sextic del Pezzo surfaces of degree 6.
pub fn line_component_degree() -> u64 {
    8 + 4 * 6
}
