//! Real root counting and isolation over the rationals by Sturm sequences.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::field::{sign, Rationals};
use crate::univariate::UniPoly;

pub type QPoly = UniPoly<Rationals>;

#[derive(Debug, Clone)]
pub struct SturmSequence {
    seq: Vec<QPoly>,
}

impl SturmSequence {
    /// `p0 = p`, `p1 = p'`, `p_{i+1} = -rem(p_{i-1}, p_i)`.
    pub fn new(p: &QPoly) -> Self {
        let mut seq = vec![p.clone()];
        let mut next = p.derivative();
        while !next.is_zero() {
            let prev = seq.last().unwrap().clone();
            seq.push(next.clone());
            let r = prev.div_rem(&next).1;
            next = UniPoly::zero(&Rationals).sub(&r);
        }
        SturmSequence { seq }
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    /// Sign changes of the sequence at `x`, zeros skipped.
    pub fn variations(&self, x: &BigRational) -> usize {
        let signs = self.seq.iter().map(|p| sign(&p.eval(x))).filter(|&s| s != 0);
        count_changes(signs)
    }

    /// Sign changes at `+∞` or `-∞`.
    pub fn variations_at_infinity(&self, positive: bool) -> usize {
        let signs = self.seq.iter().filter_map(|p| {
            let d = p.degree()?;
            let s = sign(p.leading().unwrap());
            Some(if positive || d % 2 == 0 { s } else { -s })
        });
        count_changes(signs)
    }

    /// Distinct real roots in `(a, b]`.
    pub fn count_in(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }

    /// Distinct real roots.
    pub fn count_all(&self) -> usize {
        self.variations_at_infinity(false).saturating_sub(self.variations_at_infinity(true))
    }
}

fn count_changes(signs: impl Iterator<Item = i32>) -> usize {
    let mut prev = 0;
    let mut changes = 0;
    for s in signs {
        if prev != 0 && s != prev {
            changes += 1;
        }
        prev = s;
    }
    changes
}

/// `1 + max |a_i / a_d|`: every real root lies strictly inside.
pub fn cauchy_bound(p: &QPoly) -> BigRational {
    let lc = p.leading().expect("nonzero polynomial").abs();
    let m = p.coeffs()[..p.coeffs().len() - 1].iter().map(|c| c.abs() / &lc).fold(BigRational::zero(), |a, b| {
        if b > a {
            b
        } else {
            a
        }
    });
    BigRational::one() + m
}

/// Disjoint isolating intervals `(lo, hi)`, sorted, one distinct real root
/// in each, endpoints never roots. Consecutive intervals may share an
/// endpoint.
pub fn isolate_real_roots(p: &QPoly) -> Vec<(BigRational, BigRational)> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let sq = squarefree_part(p);
    let sturm = SturmSequence::new(&sq);
    let bound = cauchy_bound(&sq) + BigRational::one();
    let mut out = Vec::new();
    bisect(&sq, &sturm, -bound.clone(), bound, &mut out);
    out
}

fn bisect(
    p: &QPoly,
    sturm: &SturmSequence,
    lo: BigRational,
    hi: BigRational,
    out: &mut Vec<(BigRational, BigRational)>,
) {
    match sturm.count_in(&lo, &hi) {
        0 => {}
        1 => out.push((lo, hi)),
        _ => {
            let mid = non_root_near_middle(p, &lo, &hi);
            bisect(p, sturm, lo, mid.clone(), out);
            bisect(p, sturm, mid, hi, out);
        }
    }
}

/// A point strictly inside `(lo, hi)` that is not a root of `p`.
fn non_root_near_middle(p: &QPoly, lo: &BigRational, hi: &BigRational) -> BigRational {
    let two = BigRational::from_integer(BigInt::from(2));
    let width = hi - lo;
    let mid = lo + &width / &two;
    if !p.eval(&mid).is_zero() {
        return mid;
    }
    let mut step = width / BigRational::from_integer(BigInt::from(4));
    loop {
        let cand = &mid + &step;
        if !p.eval(&cand).is_zero() {
            return cand;
        }
        step /= &two;
    }
}

/// `p / gcd(p, p')`.
pub fn squarefree_part(p: &QPoly) -> QPoly {
    let g = p.gcd(&p.derivative());
    p.div_rem(&g).0
}

/// Shrinks an isolating interval until its width is at most `eps`.
pub fn refine(p: &QPoly, interval: &(BigRational, BigRational), eps: &BigRational) -> (BigRational, BigRational) {
    let sq = squarefree_part(p);
    let sturm = SturmSequence::new(&sq);
    let (mut lo, mut hi) = interval.clone();
    while &(&hi - &lo) > eps {
        let mid = non_root_near_middle(&sq, &lo, &hi);
        if sturm.count_in(&lo, &mid) == 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo, hi)
}

/// Rational roots of `p`, sorted. A rational root of an integer polynomial
/// with leading coefficient `a` has the form `m / a`, so refining each
/// isolating interval below width `1/a` leaves at most two candidates.
pub fn rational_roots(p: &QPoly) -> Vec<BigRational> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let denoms = p.coeffs().iter().fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
    let lead = (p.leading().expect("nonzero") * BigRational::from_integer(denoms)).to_integer().abs();
    let eps = BigRational::new(BigInt::one(), &lead * BigInt::from(2));
    let mut out = Vec::new();
    for iv in isolate_real_roots(p) {
        let (lo, hi) = refine(p, &iv, &eps);
        let scaled = |x: &BigRational| x * BigRational::from_integer(lead.clone());
        let mut m = scaled(&lo).floor().to_integer();
        let top = scaled(&hi).ceil().to_integer();
        while m <= top {
            let cand = BigRational::new(m.clone(), lead.clone());
            if lo < cand && cand < hi && p.eval(&cand).is_zero() {
                out.push(cand);
            }
            m += 1;
        }
    }
    out
}
