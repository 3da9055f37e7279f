//! Closed-form counts: secants of curves on `X` and singular fibers of a
//! sextic del Pezzo fibration.

use serde::Serialize;

use crate::error::{Error, Result};

fn binom2(n: i64) -> i64 {
    n * (n - 1) / 2
}

#[derive(Debug, Clone, Copy, Serialize, PartialEq, Eq)]
pub struct SecantDegrees {
    /// Number of secant lines of a curve `R` of degree `d` and genus `g`.
    pub sec_deg: i64,
    /// Degree of the sum of the secants of `R` lying in `X`.
    pub sigma_deg: i64,
}

pub fn secant_degrees(d: i64, g: i64) -> Result<SecantDegrees> {
    if d < 3 || g < 0 {
        return Err(Error::InvalidInput(format!("secant degrees need d >= 3 and g >= 0, got ({d}, {g})")));
    }
    Ok(SecantDegrees { sec_deg: binom2(d - 1) - g, sigma_deg: d * d - 4 * d - 4 * g + 4 })
}

/// Solves `m·d + sigma_deg = 4·sec_deg` for `m`, the multiplicity of the
/// residual intersection along `R`.
pub fn secant_multiplicity(d: i64, g: i64) -> Result<i64> {
    let s = secant_degrees(d, g)?;
    let rhs = 4 * s.sec_deg - s.sigma_deg;
    if rhs % d != 0 {
        return Err(Error::InvalidInput(format!("m is not integral for (d, g) = ({d}, {g})")));
    }
    Ok(rhs / d)
}

/// Number of singular fibers `δ` of a fibration over `ℙ¹` with total
/// Euler characteristic `chi`: `chi = (2 − δ)·chi_smooth + δ·chi_singular`.
pub fn singular_fiber_count(chi: i64, chi_smooth: i64, chi_singular: i64) -> Result<i64> {
    let denom = chi_smooth - chi_singular;
    let num = 2 * chi_smooth - chi;
    if denom == 0 || num % denom != 0 || num / denom < 0 {
        return Err(Error::InvalidInput(format!(
            "no nonnegative integral fiber count for chi = {chi}, smooth {chi_smooth}, singular {chi_singular}"
        )));
    }
    Ok(num / denom)
}

/// Euler characteristic of the total space, from the blow-up bookkeeping
/// `4 − 4 + 2 + 2`.
pub fn dp6_euler_characteristic() -> i64 {
    [4, -4, 2, 2].iter().sum()
}

/// Singular fibers of a sextic del Pezzo fibration: smooth fibers have
/// `χ = 6`, singular ones `χ = 5`.
pub fn dp6_fiber_count() -> i64 {
    singular_fiber_count(dp6_euler_characteristic(), 6, 5).expect("integral by construction")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn secant_table() {
        let s = |d, g| {
            let r = secant_degrees(d, g).unwrap();
            (r.sec_deg, r.sigma_deg)
        };
        assert_eq!(s(3, 0), (1, 1));
        assert_eq!(s(4, 1), (2, 0));
        assert_eq!(s(5, 2), (4, 1));
        for (d, g) in [(3, 0), (4, 1), (5, 2)] {
            assert_eq!(secant_multiplicity(d, g).unwrap(), d - 2);
        }
        assert!(secant_degrees(2, 0).is_err());
    }

    #[test]
    fn fiber_count() {
        assert_eq!(dp6_euler_characteristic(), 4);
        assert_eq!(dp6_fiber_count(), 8);
        assert_eq!(singular_fiber_count(4, 6, 5).unwrap(), 8);
        assert!(singular_fiber_count(4, 5, 5).is_err());
    }
}
