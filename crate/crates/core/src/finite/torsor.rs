//! Over a finite field the variety of lines on a smooth threefold
//! `X ⊂ ℙ^5` has as many rational points as the Jacobian of the genus-2
//! curve `y² = -F(s0, s1)` (the signed discriminant of the 6×6 pencil).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::finite::hyperelliptic::{hyperelliptic_data, HyperellipticData};
use crate::finite::lines::enumerate_lines;
use crate::pencil::Pencil;
use crate::univariate::BinaryForm;

#[derive(Debug, Clone, Serialize)]
pub struct TorsorReport {
    pub q: u64,
    pub lines: u64,
    pub curve: HyperellipticData,
    pub jac_order: u64,
    pub holds: bool,
}

/// `(-1)^{m(m-1)/2} det`, the sign that makes `y² = disc` the double
/// cover attached to the pencil for `m × m` Gram matrices.
pub fn signed_discriminant(disc: &BinaryForm<PrimeField>, size: usize) -> BinaryForm<PrimeField> {
    let f = disc.field();
    if (size * (size - 1) / 2) % 2 == 1 {
        disc.scale(&f.from_i64(-1))
    } else {
        disc.clone()
    }
}

/// The genus-2 curve of a smooth pencil in `ℙ^5`.
pub fn associated_curve(pencil: &Pencil<PrimeField>) -> Result<HyperellipticData> {
    if pencil.n() != 5 {
        return Err(Error::InvalidInput(format!("genus-2 curve needs n = 5, got n = {}", pencil.n())));
    }
    pencil.require_smooth()?;
    let disc = pencil.discriminant_form()?;
    hyperelliptic_data(&signed_discriminant(&disc, 6))
}

/// Counts lines on `X` and compares with `L_C(1)`.
pub fn torsor_check(pencil: &Pencil<PrimeField>) -> Result<TorsorReport> {
    let q = pencil.field().p();
    if q > 7 {
        return Err(Error::SizeGuard(format!("line enumeration over F_{q} is limited to q <= 7")));
    }
    let curve = associated_curve(pencil)?;
    let lines = enumerate_lines(pencil)?.lines.len() as u64;
    let jac_order = curve.jac_order;
    Ok(TorsorReport { q, lines, jac_order, holds: lines == jac_order, curve })
}
