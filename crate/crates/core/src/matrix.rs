//! Dense matrices over an exact field, symmetric Gram matrices, and
//! matrices with polynomial entries.

use std::fmt;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::field::{sign, Field, Rationals};
use crate::poly::Poly;

#[derive(Clone)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<Vec<F::Elem>>,
}

impl<F: Field> PartialEq for Matrix<F> {
    fn eq(&self, other: &Self) -> bool {
        self.data == other.data && self.rows == other.rows && self.cols == other.cols
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> =
            self.data.iter().map(|r| r.iter().map(|c| self.field.format(c)).collect::<Vec<_>>().join(" ")).collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

impl<F: Field> Matrix<F> {
    pub fn from_rows(field: &F, data: Vec<Vec<F::Elem>>) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, Vec::len);
        assert!(data.iter().all(|r| r.len() == cols), "ragged matrix");
        Matrix { field: field.clone(), rows, cols, data }
    }

    pub fn from_i64(field: &F, data: &[Vec<i64>]) -> Self {
        Self::from_rows(field, data.iter().map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect())
    }

    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Self::from_rows(field, vec![vec![field.zero(); cols]; rows])
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i][i] = field.one();
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: &F, cols: &[Vec<F::Elem>]) -> Self {
        let n = cols.first().map_or(0, Vec::len);
        Self::from_rows(field, (0..n).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect())
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn nrows(&self) -> usize {
        self.rows
    }
    pub fn ncols(&self) -> usize {
        self.cols
    }
    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i][j]
    }
    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i][j] = v;
    }
    pub fn rows(&self) -> &[Vec<F::Elem>] {
        &self.data
    }
    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i]
    }
    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        self.data.iter().map(|r| r[j].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_rows(
            &self.field,
            (0..self.cols).map(|j| (0..self.rows).map(|i| self.data[i][j].clone()).collect()).collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "incompatible matrix product");
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if f.is_zero(&self.data[i][k]) {
                    continue;
                }
                for j in 0..other.cols {
                    let t = f.mul(&self.data[i][k], &other.data[k][j]);
                    out.data[i][j] = f.add(&out.data[i][j], &t);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        self.data.iter().map(|r| r.iter().zip(v).fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))).collect()
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        Self::from_rows(f, self.data.iter().map(|r| r.iter().map(|a| f.mul(a, c)).collect()).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        Self::from_rows(
            f,
            self.data
                .iter()
                .zip(&other.data)
                .map(|(r, s)| r.iter().zip(s).map(|(a, b)| f.add(a, b)).collect())
                .collect(),
        )
    }

    /// Reduced row-echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let f = &self.field;
        let mut m = self.data.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !f.is_zero(&m[i][c])) else {
                continue;
            };
            m.swap(r, p);
            let inv = f.inv(&m[r][c]).unwrap();
            for x in m[r].iter_mut() {
                *x = f.mul(x, &inv);
            }
            for i in 0..self.rows {
                if i != r && !f.is_zero(&m[i][c]) {
                    let factor = m[i][c].clone();
                    for j in 0..self.cols {
                        let t = f.mul(&factor, &m[r][j]);
                        m[i][j] = f.sub(&m[i][j], &t);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (Self::from_rows(f, m), pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> F::Elem {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let f = &self.field;
        let n = self.rows;
        let mut m = self.data.clone();
        let mut det = f.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !f.is_zero(&m[i][c])) else {
                return f.zero();
            };
            if p != c {
                m.swap(p, c);
                det = f.neg(&det);
            }
            det = f.mul(&det, &m[c][c]);
            let inv = f.inv(&m[c][c]).unwrap();
            for i in c + 1..n {
                if f.is_zero(&m[i][c]) {
                    continue;
                }
                let factor = f.mul(&m[i][c], &inv);
                for j in c..n {
                    let t = f.mul(&factor, &m[c][j]);
                    m[i][j] = f.sub(&m[i][j], &t);
                }
            }
        }
        det
    }

    /// Basis of the right kernel.
    pub fn kernel(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![f.zero(); self.cols];
                v[fc] = f.one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(&r.data[row][fc]);
                }
                v
            })
            .collect()
    }

    /// One solution of `self · x = b`, if any.
    pub fn solve(&self, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let f = &self.field;
        let aug = Self::from_rows(
            f,
            self.data.iter().zip(b).map(|(r, x)| r.iter().cloned().chain([x.clone()]).collect()).collect(),
        );
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![f.zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.data[row][self.cols].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let f = &self.field;
        let n = self.rows;
        let aug = Self::from_rows(
            f,
            (0..n)
                .map(|i| {
                    let mut row = self.data[i].clone();
                    row.extend((0..n).map(|j| if i == j { f.one() } else { f.zero() }));
                    row
                })
                .collect(),
        );
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_rows(f, r.data.iter().map(|row| row[n..].to_vec()).collect()))
    }

    /// Extends linearly independent vectors to a basis of `F^n` with
    /// standard basis vectors; returns the added indices.
    pub fn complete_basis(field: &F, vectors: &[Vec<F::Elem>], n: usize) -> Vec<usize> {
        let mut current: Vec<Vec<F::Elem>> = vectors.to_vec();
        let mut added = Vec::new();
        for i in 0..n {
            if current.len() == n {
                break;
            }
            let mut e = vec![field.zero(); n];
            e[i] = field.one();
            current.push(e);
            if Self::from_rows(field, current.clone()).rank() == current.len() {
                added.push(i);
            } else {
                current.pop();
            }
        }
        added
    }
}

/// A symmetric matrix, validated at construction.
#[derive(Clone, PartialEq)]
pub struct SymMatrix<F: Field>(Matrix<F>);

impl<F: Field> fmt::Debug for SymMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sym{:?}", self.0)
    }
}

impl<F: Field> SymMatrix<F> {
    pub fn new(m: Matrix<F>) -> Result<Self> {
        if m.rows != m.cols {
            return Err(Error::Dimension(format!("{}x{} matrix is not square", m.rows, m.cols)));
        }
        if m.rows == 0 {
            return Err(Error::Dimension("empty matrix".into()));
        }
        for i in 0..m.rows {
            for j in i + 1..m.cols {
                if m.data[i][j] != m.data[j][i] {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(SymMatrix(m))
    }

    pub fn from_rows(field: &F, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        Self::new(Matrix::from_rows(field, rows))
    }

    pub fn from_i64(field: &F, rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(Matrix::from_i64(field, rows))
    }

    pub fn diagonal(field: &F, diag: &[F::Elem]) -> Self {
        let mut m = Matrix::zeros(field, diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m.data[i][i] = d.clone();
        }
        SymMatrix(m)
    }

    pub fn zero(field: &F, n: usize) -> Self {
        SymMatrix(Matrix::zeros(field, n, n))
    }

    /// Gram matrix of `Σ_{i≤j} c_ij x_i x_j`: `A_ii = c_ii`, `A_ij = c_ij / 2`.
    pub fn from_monomial_coeffs(field: &F, size: usize, terms: &[(usize, usize, F::Elem)]) -> Result<Self> {
        let half = field.inv(&field.from_i64(2)).ok_or(Error::CharacteristicTwo)?;
        let mut m = Matrix::zeros(field, size, size);
        for (i, j, c) in terms {
            let (i, j) = if i <= j { (*i, *j) } else { (*j, *i) };
            if j >= size {
                return Err(Error::Dimension(format!("index {j} out of range for {size} variables")));
            }
            if i == j {
                m.data[i][i] = field.add(&m.data[i][i], c);
            } else {
                let h = field.mul(c, &half);
                m.data[i][j] = field.add(&m.data[i][j], &h);
                m.data[j][i] = m.data[i][j].clone();
            }
        }
        Ok(SymMatrix(m))
    }

    /// Inverse of [`Self::from_monomial_coeffs`]; only nonzero coefficients.
    pub fn monomial_coeffs(&self) -> Vec<(usize, usize, F::Elem)> {
        let f = self.field();
        let mut out = Vec::new();
        for i in 0..self.size() {
            for j in i..self.size() {
                let c = if i == j { self.get(i, i).clone() } else { f.add(self.get(i, j), self.get(i, j)) };
                if !f.is_zero(&c) {
                    out.push((i, j, c));
                }
            }
        }
        out
    }

    pub fn size(&self) -> usize {
        self.0.rows
    }
    pub fn field(&self) -> &F {
        &self.0.field
    }
    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.0.data[i][j]
    }
    pub fn matrix(&self) -> &Matrix<F> {
        &self.0
    }
    pub fn into_matrix(self) -> Matrix<F> {
        self.0
    }
    pub fn is_zero(&self) -> bool {
        self.0.data.iter().flatten().all(|c| self.field().is_zero(c))
    }

    pub fn det(&self) -> F::Elem {
        self.0.det()
    }

    pub fn rank(&self) -> usize {
        self.0.rank()
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        SymMatrix(self.0.scale(c))
    }

    pub fn add(&self, other: &Self) -> Self {
        SymMatrix(self.0.add(&other.0))
    }

    /// `s0·self + s1·other`.
    pub fn combine(&self, s0: &F::Elem, other: &Self, s1: &F::Elem) -> Self {
        self.scale(s0).add(&other.scale(s1))
    }

    /// `Pᵀ · self · P`; `P` may be rectangular.
    pub fn congruence(&self, p: &Matrix<F>) -> Self {
        SymMatrix(p.transpose().mul(&self.0).mul(p))
    }

    /// `Q(x) = xᵀ A x`.
    pub fn eval(&self, x: &[F::Elem]) -> F::Elem {
        self.bilinear(x, x)
    }

    /// `B(x, y) = xᵀ A y`.
    pub fn bilinear(&self, x: &[F::Elem], y: &[F::Elem]) -> F::Elem {
        let f = self.field();
        let ay = self.0.mul_vec(y);
        x.iter().zip(&ay).fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
    }

    /// `A x`, the gradient of `Q` up to the factor 2.
    pub fn apply(&self, x: &[F::Elem]) -> Vec<F::Elem> {
        self.0.mul_vec(x)
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let f = self.field();
        let (a, b) = (self.size(), other.size());
        let mut m = Matrix::zeros(f, a + b, a + b);
        for i in 0..a {
            for j in 0..a {
                m.data[i][j] = self.get(i, j).clone();
            }
        }
        for i in 0..b {
            for j in 0..b {
                m.data[a + i][a + j] = other.get(i, j).clone();
            }
        }
        SymMatrix(m)
    }

    /// Quadratic form as a polynomial in the given variables.
    pub fn to_poly(&self, vars: &std::sync::Arc<[String]>) -> Poly<F> {
        Poly::quadratic_form(self.field(), vars, &self.0.data)
    }

    /// Diagonal of a congruent diagonal form, found by symmetric Gaussian
    /// reduction. Zero pivots are reported as trailing zeros.
    pub fn diagonalize(&self) -> Vec<F::Elem> {
        let f = self.field();
        let mut a = self.0.data.clone();
        let mut active: Vec<usize> = (0..self.size()).collect();
        let mut diag = Vec::with_capacity(self.size());
        while !active.is_empty() {
            let pivot = active.iter().position(|&i| !f.is_zero(&a[i][i]));
            let pivot = match pivot {
                Some(p) => p,
                None => {
                    // All remaining diagonal entries vanish. If some a_ij ≠ 0,
                    // e_i ← e_i + e_j gives a new diagonal entry 2 a_ij.
                    let pair = active.iter().enumerate().find_map(|(pi, &i)| {
                        active.iter().find(|&&j| j != i && !f.is_zero(&a[i][j])).map(|&j| (pi, i, j))
                    });
                    let Some((pi, i, j)) = pair else { break };
                    for k in 0..a.len() {
                        a[i][k] = f.add(&a[i][k], &a[j][k]);
                    }
                    for row in a.iter_mut() {
                        row[i] = f.add(&row[i], &row[j]);
                    }
                    pi
                }
            };
            let i = active.remove(pivot);
            let d = a[i][i].clone();
            let dinv = f.inv(&d).expect("nonzero pivot");
            for &r in &active {
                if f.is_zero(&a[r][i]) {
                    continue;
                }
                let factor = f.mul(&a[r][i], &dinv);
                for &c in &active {
                    let t = f.mul(&factor, &a[i][c]);
                    a[r][c] = f.sub(&a[r][c], &t);
                }
            }
            diag.push(d);
        }
        diag.resize(self.size(), f.zero());
        diag
    }
}

/// Sylvester inertia of a symmetric matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct Signature {
    pub pos: usize,
    pub neg: usize,
    pub zero: usize,
}

impl SymMatrix<Rationals> {
    /// Inertia `(pos, neg, zero)` by exact symmetric reduction.
    pub fn signature(&self) -> Signature {
        let mut s = Signature { pos: 0, neg: 0, zero: 0 };
        for d in self.diagonalize() {
            match sign(&d) {
                1 => s.pos += 1,
                -1 => s.neg += 1,
                _ => s.zero += 1,
            }
        }
        s
    }

    pub fn from_rationals(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        Self::from_rows(&Rationals, rows)
    }
}

/// Square matrix with polynomial entries over a common variable list.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix<F: Field> {
    entries: Vec<Vec<Poly<F>>>,
}

impl<F: Field> PolyMatrix<F> {
    pub fn new(entries: Vec<Vec<Poly<F>>>) -> Result<Self> {
        let n = entries.len();
        if n == 0 || entries.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension("polynomial matrix must be square and nonempty".into()));
        }
        Ok(PolyMatrix { entries })
    }

    /// Validates symmetry.
    pub fn symmetric(entries: Vec<Vec<Poly<F>>>) -> Result<Self> {
        let m = Self::new(entries)?;
        for i in 0..m.size() {
            for j in i + 1..m.size() {
                if m.entries[i][j] != m.entries[j][i] {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(m)
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly<F> {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<Poly<F>>] {
        &self.entries
    }

    /// Determinant by Laplace expansion memoized over column subsets:
    /// `D[S]` is the minor on rows `0..|S|` and columns `S`.
    pub fn det(&self) -> Result<Poly<F>> {
        let n = self.size();
        if n > 8 {
            return Err(Error::SizeGuard(format!("polynomial determinant of size {n} exceeds 8")));
        }
        Ok(self.laplace_det())
    }

    pub(crate) fn laplace_det(&self) -> Poly<F> {
        let n = self.size();
        let p00 = &self.entries[0][0];
        let (field, vars) = (p00.field().clone(), p00.vars().clone());
        let mut d: Vec<Option<Poly<F>>> = vec![None; 1 << n];
        d[0] = Some(Poly::one(&field, &vars));
        for set in 0usize..(1 << n) {
            let Some(minor) = d[set].take() else { continue };
            let r = set.count_ones() as usize;
            if r == n {
                d[set] = Some(minor);
                continue;
            }
            if !minor.is_zero() {
                for j in (0..n).filter(|j| set & (1 << j) == 0) {
                    let entry = &self.entries[r][j];
                    if entry.is_zero() {
                        continue;
                    }
                    let above = (set >> (j + 1)).count_ones();
                    let mut term = entry.mul(&minor);
                    if above % 2 == 1 {
                        term = term.neg();
                    }
                    let slot = &mut d[set | (1 << j)];
                    *slot = Some(match slot.take() {
                        Some(acc) => acc.add(&term),
                        None => term,
                    });
                }
            }
            d[set] = Some(minor);
        }
        d[(1 << n) - 1].take().unwrap_or_else(|| Poly::zero(&field, &vars))
    }

    /// Evaluates every entry at a point.
    pub fn eval(&self, point: &[F::Elem]) -> Matrix<F> {
        let field = self.entries[0][0].field();
        Matrix::from_rows(field, self.entries.iter().map(|r| r.iter().map(|p| p.eval(point)).collect()).collect())
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let p00 = &self.entries[0][0];
        let zero = Poly::zero(p00.field(), p00.vars());
        let (a, b) = (self.size(), other.size());
        let mut e = vec![vec![zero; a + b]; a + b];
        for i in 0..a {
            for j in 0..a {
                e[i][j] = self.entries[i][j].clone();
            }
        }
        for i in 0..b {
            for j in 0..b {
                e[a + i][a + j] = other.entries[i][j].clone();
            }
        }
        PolyMatrix { entries: e }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::poly::{indexed_vars, parse_poly};

    fn sig(rows: &[Vec<i64>]) -> (usize, usize, usize) {
        let s = SymMatrix::from_i64(&Rationals, rows).unwrap().signature();
        (s.pos, s.neg, s.zero)
    }

    #[test]
    fn signature_examples() {
        assert_eq!(sig(&[vec![1, 0, 0], vec![0, -2, 0], vec![0, 0, 3]]), (2, 1, 0));
        assert_eq!(sig(&[vec![0, 1], vec![1, 0]]), (1, 1, 0));
        let id: Vec<Vec<i64>> = (0..6).map(|i| (0..6).map(|j| i64::from(i == j)).collect()).collect();
        assert_eq!(sig(&id), (6, 0, 0));
        assert_eq!(sig(&[vec![0, 0], vec![0, 0]]), (0, 0, 2));
        assert_eq!(sig(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 0]]), (1, 1, 1));
    }

    #[test]
    fn non_symmetric_rejected() {
        let err = SymMatrix::from_i64(&Rationals, &[vec![1, 2], vec![3, 4]]).unwrap_err();
        assert_eq!(err, Error::NotSymmetric { row: 0, col: 1 });
    }

    #[test]
    fn gram_from_monomials() {
        let q = Rationals;
        let m = SymMatrix::from_monomial_coeffs(&q, 4, &[(0, 1, q.from_i64(1)), (2, 3, q.from_i64(-1))]).unwrap();
        assert_eq!(m.get(0, 1), &crate::field::parse_rational("1/2").unwrap());
        let x = vec![q.from_i64(2), q.from_i64(3), q.from_i64(1), q.from_i64(5)];
        assert_eq!(m.eval(&x), q.from_i64(6 - 5));
        assert_eq!(m.monomial_coeffs().len(), 2);
    }

    #[test]
    fn det_kernel_inverse() {
        let f = PrimeField::new(7).unwrap();
        let m = Matrix::from_i64(&f, &[vec![1, 2, 3], vec![0, 1, 4], vec![5, 6, 0]]);
        assert_eq!(m.det(), f.from_i64(1));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(&f, 3));
        let sing = Matrix::from_i64(&f, &[vec![1, 2], vec![2, 4]]);
        assert_eq!(sing.kernel().len(), 1);
        assert!(sing.inverse().is_none());
        let k = &sing.kernel()[0];
        assert!(sing.mul_vec(k).iter().all(|c| *c == 0));
        assert_eq!(sing.solve(&[1, 3]), None);
        assert!(sing.solve(&[1, 2]).is_some());
    }

    #[test]
    fn poly_det_diagonal_and_blocks() {
        let q = Rationals;
        let vars = indexed_vars("s", 2);
        let zero = Poly::zero(&q, &vars);
        let mut e = vec![vec![zero.clone(); 6]; 6];
        let mut expect = Poly::one(&q, &vars);
        for (i, row) in e.iter_mut().enumerate() {
            row[i] = parse_poly(&q, &vars, &format!("s0 + {i}*s1")).unwrap();
            expect = expect.mul(&row[i]);
        }
        let m = PolyMatrix::symmetric(e).unwrap();
        assert_eq!(m.det().unwrap(), expect);

        let c = |k: i64| Poly::constant(&q, &vars, q.from_i64(k));
        let block = |k: i64| PolyMatrix::symmetric(vec![vec![zero.clone(), c(k)], vec![c(k), zero.clone()]]).unwrap();
        let big = block(1).direct_sum(&block(2)).direct_sum(&block(3));
        assert_eq!(big.det().unwrap(), c(-1 * -4 * -9));
    }
}
