//! Exhaustive computations over prime fields.

pub mod hyperelliptic;
pub mod lines;
pub mod points;
pub mod toric;
pub mod torsor;

use crate::field::PrimeField;
use crate::matrix::SymMatrix;

/// A Gram matrix over `F_p` flattened for tight evaluation loops.
#[derive(Debug, Clone)]
pub(crate) struct FlatForm {
    p: u64,
    n: usize,
    a: Vec<u64>,
}

impl FlatForm {
    pub(crate) fn new(m: &SymMatrix<PrimeField>) -> Self {
        let n = m.size();
        let a = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| *m.get(i, j)).collect();
        FlatForm { p: m.field().p(), n, a }
    }

    /// `xᵀ A y mod p`.
    #[inline]
    pub(crate) fn bilinear(&self, x: &[u64], y: &[u64]) -> u64 {
        let mut acc = 0u64;
        for i in 0..self.n {
            if x[i] == 0 {
                continue;
            }
            let row = &self.a[i * self.n..(i + 1) * self.n];
            let mut s = 0u64;
            for j in 0..self.n {
                s += row[j] * y[j] % self.p;
            }
            acc = (acc + x[i] * (s % self.p)) % self.p;
        }
        acc
    }

    #[inline]
    pub(crate) fn eval(&self, x: &[u64]) -> u64 {
        self.bilinear(x, x)
    }
}
