//! Projective points over a prime field and exhaustive point counts.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::poly::Poly;

/// Largest affine search space `q^(n+1)` any exhaustive scan accepts.
pub const SCAN_GUARD: u128 = 1_000_000_000;

/// `ℙ^dim(F_p)`, points indexed by normalized representatives whose first
/// nonzero coordinate is 1.
#[derive(Debug, Clone, Copy)]
pub struct ProjectiveSpace {
    field: PrimeField,
    dim: usize,
}

impl ProjectiveSpace {
    pub fn new(field: PrimeField, dim: usize) -> Self {
        ProjectiveSpace { field, dim }
    }

    pub fn guarded(field: PrimeField, dim: usize) -> Result<Self> {
        let size = (field.p() as u128).checked_pow(dim as u32 + 1).unwrap_or(u128::MAX);
        if size > SCAN_GUARD {
            return Err(Error::SizeGuard(format!(
                "scan of P^{dim}(F_{}) needs about {size} evaluations (limit {SCAN_GUARD})",
                field.p()
            )));
        }
        Ok(Self::new(field, dim))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> u64 {
        let q = self.field.p();
        (q.pow(self.dim as u32 + 1) - 1) / (q - 1)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The `idx`-th point: leading 1 at position `lead`, then a base-`q`
    /// tail.
    pub fn point(&self, mut idx: u64) -> Vec<u64> {
        let q = self.field.p();
        let mut lead = 0;
        loop {
            let block = q.pow((self.dim - lead) as u32);
            if idx < block {
                break;
            }
            idx -= block;
            lead += 1;
        }
        let mut v = vec![0; self.dim + 1];
        v[lead] = 1;
        for slot in v[lead + 1..].iter_mut().rev() {
            *slot = idx % q;
            idx /= q;
        }
        v
    }

    pub fn iter(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        (0..self.len()).map(move |i| self.point(i))
    }

    /// Points satisfying `pred`, in index order.
    pub fn filter_par<P>(&self, pred: P) -> Vec<Vec<u64>>
    where
        P: Fn(&[u64]) -> bool + Sync,
    {
        (0..self.len())
            .into_par_iter()
            .filter_map(|i| {
                let v = self.point(i);
                pred(&v).then_some(v)
            })
            .collect()
    }

    pub fn count_par<P>(&self, pred: P) -> u64
    where
        P: Fn(&[u64]) -> bool + Sync,
    {
        (0..self.len()).into_par_iter().filter(|&i| pred(&self.point(i))).count() as u64
    }
}

/// Number of projective `F_q`-points on the common zero locus of
/// homogeneous equations in `n + 1` variables.
pub fn count_points(field: &PrimeField, nvars: usize, eqns: &[Poly<PrimeField>]) -> Result<u64> {
    if nvars == 0 {
        return Err(Error::Dimension("no variables".into()));
    }
    for e in eqns {
        if e.nvars() != nvars {
            return Err(Error::Dimension(format!("equation in {} variables, expected {nvars}", e.nvars())));
        }
        if !e.is_homogeneous() {
            return Err(Error::InvalidInput(format!("equation {e} is not homogeneous")));
        }
    }
    let space = ProjectiveSpace::guarded(*field, nvars - 1)?;
    Ok(space.count_par(|x| eqns.iter().all(|e| field.is_zero(&e.eval(x)))))
}
