//! Lines on `X = {Q0 = Q1 = 0}` over a prime field.
//!
//! Every 2-dimensional subspace of `F_q^{n+1}` has a unique reduced
//! row-echelon basis `(u, v)` with pivots `i < j`. We enumerate `u`
//! first, keep only those on both quadrics, then complete with `v`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::finite::FlatForm;
use crate::matrix::Matrix;
use crate::pencil::Pencil;

/// Upper bound on the number of 2-subspaces a line search may cover.
pub const LINE_GUARD: u64 = 2_000_000_000;

/// A line of `ℙ^n(F_q)` as the reduced row-echelon basis of its
/// 2-dimensional subspace.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PluckerLine {
    rows: [Vec<u64>; 2],
}

impl PluckerLine {
    /// The line spanned by two vectors; errors if they are dependent.
    pub fn from_basis(field: &PrimeField, u: &[u64], v: &[u64]) -> Result<Self> {
        if u.len() != v.len() {
            return Err(Error::Dimension("basis vectors of different length".into()));
        }
        let (r, pivots) = Matrix::from_rows(field, vec![u.to_vec(), v.to_vec()]).rref();
        if pivots.len() != 2 {
            return Err(Error::InvalidInput("vectors do not span a line".into()));
        }
        Ok(PluckerLine { rows: [r.row(0).to_vec(), r.row(1).to_vec()] })
    }

    pub fn rows(&self) -> &[Vec<u64>; 2] {
        &self.rows
    }

    pub fn ambient_dim(&self) -> usize {
        self.rows[0].len() - 1
    }

    /// Pivot columns `(i, j)`.
    pub fn pivots(&self) -> (usize, usize) {
        let lead = |r: &Vec<u64>| r.iter().position(|&c| c != 0).expect("nonzero row");
        (lead(&self.rows[0]), lead(&self.rows[1]))
    }

    /// Plücker coordinates `p_ij = u_i v_j - u_j v_i` for `i < j`.
    pub fn plucker_coordinates(&self, field: &PrimeField) -> Vec<u64> {
        let (u, v) = (&self.rows[0], &self.rows[1]);
        let n = u.len();
        let mut out = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                out.push(field.sub(&field.mul(&u[i], &v[j]), &field.mul(&u[j], &v[i])));
            }
        }
        out
    }

    /// The `q + 1` points, normalized.
    pub fn points(&self, field: &PrimeField) -> Vec<Vec<u64>> {
        let (u, v) = (&self.rows[0], &self.rows[1]);
        let mut pts = vec![v.clone()];
        for t in 0..field.p() {
            pts.push(u.iter().zip(v).map(|(a, b)| field.add(a, &field.mul(&t, b))).collect());
        }
        pts
    }

    /// Both forms vanish identically on the line.
    pub fn lies_on(&self, pencil: &Pencil<PrimeField>) -> bool {
        let (u, v) = (&self.rows[0], &self.rows[1]);
        [pencil.q0(), pencil.q1()].iter().all(|q| {
            let f = q.field();
            f.is_zero(&q.eval(u)) && f.is_zero(&q.eval(v)) && f.is_zero(&q.bilinear(u, v))
        })
    }

    /// Every coordinate in `coords` vanishes on the line.
    pub fn in_coordinate_subspace(&self, coords: &[usize]) -> bool {
        coords.iter().all(|&c| self.rows[0][c] == 0 && self.rows[1][c] == 0)
    }
}

#[derive(Debug, Clone)]
pub struct LineEnumeration {
    pub lines: Vec<PluckerLine>,
    /// 2-subspaces covered, checked or pruned.
    pub visited: u64,
}

/// Number of 2-dimensional subspaces of `F_q^{n+1}`.
pub fn grassmannian_size(q: u64, n: usize) -> u128 {
    let q = q as u128;
    let e = n as u32 + 1;
    (q.pow(e) - 1) * (q.pow(e - 1) - 1) / ((q * q - 1) * (q - 1))
}

/// Lines contained in both quadrics of a pencil.
pub fn enumerate_lines(pencil: &Pencil<PrimeField>) -> Result<LineEnumeration> {
    pencil.require_complete_intersection()?;
    lines_on_forms(pencil.field(), &[FlatForm::new(pencil.q0()), FlatForm::new(pencil.q1())], pencil.n())
}

/// Lines on which every given form vanishes.
pub(crate) fn lines_on_forms(field: &PrimeField, forms: &[FlatForm], n: usize) -> Result<LineEnumeration> {
    let q = field.p();
    let total = grassmannian_size(q, n);
    if total > LINE_GUARD as u128 {
        return Err(Error::SizeGuard(format!("{total} lines in P^{n}(F_{q}) exceeds {LINE_GUARD}")));
    }
    let dim = n + 1;
    let pivot_pairs: Vec<(usize, usize)> = (0..dim).flat_map(|i| (i + 1..dim).map(move |j| (i, j))).collect();

    // One task per (pivot pair, u): u has a 1 at i, zeros before i and at j.
    let tasks: Vec<(usize, usize, u64)> = pivot_pairs
        .iter()
        .flat_map(|&(i, j)| {
            let free_u = (dim - i - 1 - 1) as u32;
            (0..q.pow(free_u)).map(move |idx| (i, j, idx))
        })
        .collect();

    let results: Vec<(u64, Vec<PluckerLine>)> = tasks
        .par_iter()
        .map(|&(i, j, idx)| {
            let free_v = (dim - j - 1) as u32;
            let mut u = vec![0u64; dim];
            u[i] = 1;
            let mut rest = idx;
            for c in (i + 1..dim).rev().filter(|&c| c != j) {
                u[c] = rest % q;
                rest /= q;
            }
            if forms.iter().any(|f| f.eval(&u) != 0) {
                return (q.pow(free_v), Vec::new());
            }
            let mut found = Vec::new();
            let mut v = vec![0u64; dim];
            v[j] = 1;
            for vidx in 0..q.pow(free_v) {
                let mut rest = vidx;
                for c in (j + 1..dim).rev() {
                    v[c] = rest % q;
                    rest /= q;
                }
                if forms.iter().all(|f| f.eval(&v) == 0 && f.bilinear(&u, &v) == 0) {
                    found.push(PluckerLine { rows: [u.clone(), v.clone()] });
                }
            }
            (q.pow(free_v), found)
        })
        .collect();

    let visited = results.iter().map(|r| r.0).sum();
    let lines = results.into_iter().flat_map(|r| r.1).collect();
    Ok(LineEnumeration { lines, visited })
}
