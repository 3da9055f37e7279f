//! Genus-2 curves `y² = F(s0, s1)` for a binary sextic `F` over `F_q`:
//! point counts over `F_q` and `F_{q²}`, the L-polynomial, and the order
//! of the Jacobian.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, QuadraticExtension};
use crate::univariate::BinaryForm;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HyperellipticData {
    pub q: u64,
    /// `c_0..c_6` of `F = Σ c_i s0^{6-i} s1^i`.
    pub sextic: Vec<u64>,
    pub n1: u64,
    pub n2: u64,
    /// `L(T) = 1 + a1 T + a2 T² + q a1 T³ + q² T⁴`.
    pub l_poly: [i64; 5],
    pub jac_order: u64,
}

/// Number of points over `F_q` at `s1 = 0`: `1 + χ(c_0)`.
fn infinity_count(chi_c0: i64) -> u64 {
    (1 + chi_c0) as u64
}

/// `#C(F_q)` and `#C(F_{q²})` for `C: y² = F`.
pub fn hyperelliptic_counts(sextic: &BinaryForm<PrimeField>) -> Result<(u64, u64)> {
    if sextic.degree() != 6 {
        return Err(Error::InvalidInput(format!("expected a binary sextic, got degree {}", sextic.degree())));
    }
    if !sextic.is_squarefree()? {
        return Err(Error::SingularCurve("sextic has a repeated root".into()));
    }
    let f = *sextic.field();
    let c = sextic.coeffs();
    // F(s, 1) = Σ c_i s^{6-i}, Horner from c_0.
    let mut n1 = infinity_count(f.legendre(c[0]));
    for s in f.elements() {
        let v = c.iter().fold(0, |acc, ci| f.add(&f.mul(&acc, &s), ci));
        n1 += (1 + f.legendre(v)) as u64;
    }
    let ext = QuadraticExtension::new(f);
    let chi0 = if c[0] == 0 { 0 } else { 1 };
    let mut n2 = infinity_count(chi0);
    for s in ext.elements() {
        let v = c.iter().fold((0, 0), |acc, ci| ext.add(ext.mul(acc, s), (*ci, 0)));
        n2 += (1 + ext.legendre(v)) as u64;
    }
    Ok((n1, n2))
}

/// L-polynomial coefficients from `N1`, `N2`; validates the Weil bounds.
pub fn l_polynomial(q: u64, n1: u64, n2: u64) -> Result<[i64; 5]> {
    let q = q as i64;
    let a1 = n1 as i64 - q - 1;
    let twice_a2 = a1 * a1 + n2 as i64 - q * q - 1;
    if twice_a2 % 2 != 0 {
        return Err(Error::Internal(format!("odd 2·a2 = {twice_a2} from N1 = {n1}, N2 = {n2}")));
    }
    if (a1 * a1) > 16 * q {
        return Err(Error::Internal(format!("N1 = {n1} violates the Weil bound for q = {q}")));
    }
    Ok([1, a1, twice_a2 / 2, q * a1, q * q])
}

/// `L(1)` with the Weil interval `[(√q - 1)⁴, (√q + 1)⁴]` enforced.
pub fn jacobian_order_from_l(q: u64, l: &[i64; 5]) -> Result<u64> {
    let value: i64 = l.iter().sum();
    let (lo, hi) = weil_interval(q);
    if value <= 0 || (value as f64) < lo - 1e-9 || (value as f64) > hi + 1e-9 {
        return Err(Error::Internal(format!("L(1) = {value} outside the Weil interval [{lo:.3}, {hi:.3}]")));
    }
    Ok(value as u64)
}

pub fn weil_interval(q: u64) -> (f64, f64) {
    let r = (q as f64).sqrt();
    ((r - 1.0).powi(4), (r + 1.0).powi(4))
}

pub fn hyperelliptic_data(sextic: &BinaryForm<PrimeField>) -> Result<HyperellipticData> {
    let q = sextic.field().p();
    let (n1, n2) = hyperelliptic_counts(sextic)?;
    let l_poly = l_polynomial(q, n1, n2)?;
    let jac_order = jacobian_order_from_l(q, &l_poly)?;
    Ok(HyperellipticData { q, sextic: sextic.coeffs().to_vec(), n1, n2, l_poly, jac_order })
}

pub fn jacobian_order(h: &HyperellipticData) -> Result<u64> {
    jacobian_order_from_l(h.q, &h.l_poly)
}

/// Univariate `f(s) = Σ a_j s^j` of degree 5 or 6 as the sextic
/// `F(s0, s1) = s1^6 f(s0/s1)`.
pub fn sextic_from_univariate(field: &PrimeField, ascending: &[i64]) -> Result<BinaryForm<PrimeField>> {
    if ascending.len() > 7 {
        return Err(Error::InvalidInput("degree above 6".into()));
    }
    let mut c: Vec<u64> = ascending.iter().map(|&a| field.from_i64(a)).collect();
    c.resize(7, 0);
    c.reverse();
    Ok(BinaryForm::new(field, c))
}
