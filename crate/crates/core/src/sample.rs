//! Seeded random pencils for tests, the acceptance suite and the CLI.

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals};
use crate::matrix::{Matrix, SymMatrix};
use crate::pencil::Pencil;

const MAX_TRIES: usize = 10_000;

pub fn random_symmetric<R: Rng>(field: &PrimeField, size: usize, rng: &mut R) -> SymMatrix<PrimeField> {
    let mut rows = vec![vec![0u64; size]; size];
    for i in 0..size {
        for j in i..size {
            let v = rng.gen_range(0..field.p());
            rows[i][j] = v;
            rows[j][i] = v;
        }
    }
    SymMatrix::from_rows(field, rows).expect("symmetric by construction")
}

pub fn random_invertible<R: Rng>(field: &PrimeField, size: usize, rng: &mut R) -> Matrix<PrimeField> {
    loop {
        let rows = (0..size).map(|_| (0..size).map(|_| rng.gen_range(0..field.p())).collect()).collect();
        let m = Matrix::from_rows(field, rows);
        if !field.is_zero(&m.det()) {
            return m;
        }
    }
}

/// A pencil in `ℙ^n` with squarefree discriminant.
pub fn random_smooth_pencil<R: Rng>(field: &PrimeField, n: usize, rng: &mut R) -> Result<Pencil<PrimeField>> {
    for _ in 0..MAX_TRIES {
        let p = Pencil::new(random_symmetric(field, n + 1, rng), random_symmetric(field, n + 1, rng))?;
        if p.discriminant_form().is_ok() && p.is_smooth()? {
            return Ok(p);
        }
    }
    Err(Error::NotFound(format!("no smooth pencil in P^{n} over F_{} after {MAX_TRIES} tries", field.p())))
}

/// A smooth pencil containing the line `x2 = … = xn = 0`: the Gram entries
/// `(0,0)`, `(0,1)`, `(1,1)` vanish.
pub fn random_pencil_with_line<R: Rng>(field: &PrimeField, n: usize, rng: &mut R) -> Result<Pencil<PrimeField>> {
    let kill = |mut m: SymMatrix<PrimeField>| {
        let mut rows = m.matrix().rows().to_vec();
        for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            rows[i][j] = 0;
        }
        m = SymMatrix::from_rows(field, rows).expect("still symmetric");
        m
    };
    for _ in 0..MAX_TRIES {
        let q0 = kill(random_symmetric(field, n + 1, rng));
        let q1 = kill(random_symmetric(field, n + 1, rng));
        let p = Pencil::new(q0, q1)?;
        if p.discriminant_form().is_ok() && p.is_smooth()? {
            return Ok(p);
        }
    }
    Err(Error::NotFound(format!("no smooth pencil with a line over F_{} after {MAX_TRIES} tries", field.p())))
}

/// Some `F_q`-point of `X` off the given points, scanning from a random
/// offset.
pub fn random_point_on<R: Rng>(pencil: &Pencil<PrimeField>, rng: &mut R) -> Option<Vec<u64>> {
    let f = pencil.field();
    let space = crate::finite::points::ProjectiveSpace::new(*f, pencil.n());
    let len = space.len();
    let start = rng.gen_range(0..len);
    (0..len).map(|k| space.point((start + k) % len)).find(|x| pencil.contains_point(x))
}

/// Integer pencil over the rationals with entries in `-bound..=bound`.
pub fn random_rational_pencil<R: Rng>(n: usize, bound: i64, rng: &mut R) -> Result<Pencil<Rationals>> {
    let q = Rationals;
    let sym = |rng: &mut R| {
        let mut rows = vec![vec![0i64; n + 1]; n + 1];
        for i in 0..=n {
            for j in i..=n {
                let v = rng.gen_range(-bound..=bound);
                rows[i][j] = v;
                rows[j][i] = v;
            }
        }
        SymMatrix::from_i64(&q, &rows).expect("symmetric")
    };
    for _ in 0..MAX_TRIES {
        let p = Pencil::new(sym(rng), sym(rng))?;
        if p.discriminant_form().is_ok() && p.is_smooth()? {
            return Ok(p);
        }
    }
    Err(Error::NotFound("no smooth rational pencil".into()))
}
