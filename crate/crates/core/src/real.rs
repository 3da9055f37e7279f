//! Real isotopy invariants of a smooth pencil over the rationals.
//!
//! The circle `S¹ ∋ (s0, s1)` is traversed counter-clockwise starting just
//! after `(0, -1)`. On the right half (`s0 > 0`) the member is a positive
//! multiple of `A0 + ρA1` with `ρ = s1/s0` increasing; then comes `(0, 1)`;
//! on the left half the member is a positive multiple of `-(A0 + ρA1)`,
//! again with `ρ` increasing; then `(0, -1)` closes the loop.

use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{format_rational, Field, Rationals};
use crate::matrix::Signature;
use crate::pencil::Pencil;
use crate::sturm::isolate_real_roots;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Half {
    /// `s0 > 0`
    Right,
    /// `s0 < 0`
    Left,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum JumpLocation {
    /// A real root of `F(1, ρ)` inside `(lo, hi)`, on the given half.
    Root { half: Half, lo: BigRational, hi: BigRational },
    /// `(0, 1)` or `(0, -1)`, a jump iff `det A1 = 0`.
    Pole { s1: i8 },
}

impl fmt::Display for JumpLocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JumpLocation::Root { half, lo, hi } => {
                let h = if *half == Half::Right { "+" } else { "-" };
                write!(f, "{h}(1, ρ), ρ in ({}, {})", format_rational(lo), format_rational(hi))
            }
            JumpLocation::Pole { s1 } => write!(f, "(0, {s1})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Jump {
    pub location: JumpLocation,
    pub sign: i8,
}

/// The positive index function `I⁺` on `S¹`, as jumps and arc signatures.
#[derive(Debug, Clone)]
pub struct IndexCircle {
    pub n: usize,
    /// Cyclically ordered jumps.
    pub jumps: Vec<Jump>,
    /// `arcs[i]` is the open arc after `jumps[i]`; a single arc when
    /// there are no jumps.
    pub arcs: Vec<Signature>,
}

impl IndexCircle {
    pub fn k(&self) -> usize {
        self.jumps.len() / 2
    }

    pub fn jump_signs(&self) -> Vec<i8> {
        self.jumps.iter().map(|j| j.sign).collect()
    }

    pub fn positive_indices(&self) -> Vec<usize> {
        self.arcs.iter().map(|s| s.pos).collect()
    }

    /// Structural checks: even jump count, parity of `k`, unit jumps that
    /// match the arc signatures, full rank on every arc.
    pub fn validate(&self) -> Result<()> {
        let size = self.n + 1;
        let bad = |m: String| Err(Error::Internal(format!("index circle: {m}")));
        if !self.jumps.len().is_multiple_of(2) {
            return bad(format!("odd jump count {}", self.jumps.len()));
        }
        let k = self.k();
        if k > size || (k > 0 && k % 2 != size % 2) || (k == 0 && !size.is_multiple_of(2)) {
            return bad(format!("k = {k} incompatible with n = {}", self.n));
        }
        if self.arcs.iter().any(|s| s.zero != 0 || s.pos + s.neg != size) {
            return bad("degenerate sample on an arc".into());
        }
        if self.jumps.is_empty() {
            return if self.arcs.len() == 1 { Ok(()) } else { bad("arc count".into()) };
        }
        if self.arcs.len() != self.jumps.len() {
            return bad("arc count differs from jump count".into());
        }
        for (i, j) in self.jumps.iter().enumerate() {
            let before = self.arcs[(i + self.arcs.len() - 1) % self.arcs.len()].pos as i64;
            let after = self.arcs[i].pos as i64;
            if j.sign.abs() != 1 || after - before != j.sign as i64 {
                return bad(format!("jump {i} at {} has height {}", j.location, after - before));
            }
        }
        Ok(())
    }
}

/// Signatures of `A0 + ρA1` and of its negative at the same `ρ`; checks
/// the antipodal identity `pos(-s) = n + 1 - pos(s)`.
fn signature_pair(p: &Pencil<Rationals>, rho: &BigRational) -> Result<(Signature, Signature)> {
    let q = Rationals;
    let right = p.member(&q.one(), rho).signature();
    let left = p.member(&q.from_i64(-1), &-rho).signature();
    if right.zero != 0 || left.zero != 0 {
        return Err(Error::Internal(format!("sample ρ = {} hit a root", format_rational(rho))));
    }
    if left.pos != p.n() + 1 - right.pos {
        return Err(Error::Internal(format!(
            "antipodal identity fails at ρ = {}: {} vs {}",
            format_rational(rho),
            left.pos,
            right.pos
        )));
    }
    Ok((right, left))
}

pub fn index_circle(p: &Pencil<Rationals>) -> Result<IndexCircle> {
    p.require_smooth()?;
    let q = Rationals;
    let disc = p.discriminant_form()?;
    let f = disc.dehomogenize_s0();
    let roots = isolate_real_roots(&f);

    // Samples: left of every root, between consecutive intervals, right of
    // every root. Interval endpoints are never roots.
    let mut samples: Vec<BigRational> = Vec::with_capacity(roots.len() + 1);
    match roots.first() {
        None => samples.push(q.zero()),
        Some(first) => {
            samples.push(first.0.clone());
            for w in roots.windows(2) {
                samples.push(w[0].1.clone());
                debug_assert!(w[0].1 <= w[1].0);
            }
            samples.push(roots.last().unwrap().1.clone());
        }
    }
    let sigs = samples.iter().map(|r| signature_pair(p, r)).collect::<Result<Vec<_>>>()?;
    let pole_jump = q.is_zero(&p.q1().det());

    // Walk the circle collecting (location, signature after it).
    let mut events: Vec<(JumpLocation, Signature)> = Vec::new();
    for half in [Half::Right, Half::Left] {
        let pick = |i: usize| if half == Half::Right { sigs[i].0 } else { sigs[i].1 };
        for (i, (lo, hi)) in roots.iter().enumerate() {
            events.push((JumpLocation::Root { half, lo: lo.clone(), hi: hi.clone() }, pick(i + 1)));
        }
        let other_first = if half == Half::Right { sigs[0].1 } else { sigs[0].0 };
        let last = pick(samples.len() - 1);
        if pole_jump {
            let s1 = if half == Half::Right { 1 } else { -1 };
            events.push((JumpLocation::Pole { s1 }, other_first));
        } else if last != other_first {
            return Err(Error::Internal("signature changes across a regular point at infinity".into()));
        }
    }

    let n = p.n();
    let ic = if events.is_empty() {
        IndexCircle { n, jumps: Vec::new(), arcs: vec![sigs[0].0] }
    } else {
        let m = events.len();
        let jumps = (0..m)
            .map(|i| {
                let before = events[(i + m - 1) % m].1.pos as i64;
                let after = events[i].1.pos as i64;
                Jump { location: events[i].0.clone(), sign: (after - before) as i8 }
            })
            .collect();
        IndexCircle { n, jumps, arcs: events.into_iter().map(|e| e.1).collect() }
    };
    ic.validate()?;
    Ok(ic)
}

/// Run lengths `(k_1, …, k_{2s+1})` of positive jumps, or `(0)` for no
/// jumps, in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OddDecomposition(Vec<u32>);

impl OddDecomposition {
    /// Canonicalizes and validates an odd-length list of positive parts,
    /// or the single symbol `[0]`.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts == [0] {
            return Ok(OddDecomposition(parts));
        }
        if parts.is_empty() || parts.len().is_multiple_of(2) || parts.contains(&0) {
            return Err(Error::InvalidInput(format!(
                "decomposition {parts:?} must be (0) or an odd number of positive parts"
            )));
        }
        Ok(OddDecomposition(canonical_form(&parts)))
    }

    pub fn zero() -> Self {
        OddDecomposition(vec![0])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn k(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0]
    }

    /// Consistency with `n`: `k ≤ n + 1`, `k ≡ n + 1 (mod 2)`, and `(0)`
    /// only for odd `n`.
    pub fn check_n(&self, n: usize) -> Result<()> {
        let k = self.k() as usize;
        if k > n + 1 || k % 2 != (n + 1) % 2 {
            return Err(Error::InvalidInput(format!("class {self} is not admissible for n = {n}")));
        }
        Ok(())
    }

    /// The `±1` jump sequence of the canonical walk: positive runs `P_j`
    /// alternate with negative runs `N_j = P_{j-s}` (indices mod `2s+1`),
    /// which makes the sequence shifted by `k` equal to its negative.
    pub fn jump_sequence(&self) -> Vec<i8> {
        if self.is_zero() {
            return Vec::new();
        }
        let r = self.0.len();
        let s = r / 2;
        let mut seq = Vec::with_capacity(2 * self.k() as usize);
        for j in 0..r {
            seq.extend(std::iter::repeat_n(1, self.0[j] as usize));
            seq.extend(std::iter::repeat_n(-1, self.0[(j + r - s) % r] as usize));
        }
        seq
    }

    /// Values of `I⁺` on the arcs of the canonical walk for `n`, starting
    /// with the arc before the first jump.
    pub fn walk(&self, n: usize) -> Result<Vec<usize>> {
        self.check_n(n)?;
        let size = (n + 1) as i64;
        if self.is_zero() {
            return Ok(vec![n.div_ceil(2)]);
        }
        let seq = self.jump_sequence();
        let k = seq.len() / 2;
        if (0..k).any(|i| seq[i + k] != -seq[i]) {
            return Err(Error::Internal(format!("walk for {self} is not antipodal")));
        }
        let s_k: i64 = seq[..k].iter().map(|&x| x as i64).sum();
        // I⁺ after k jumps is n + 1 minus the starting level.
        let start = (size - s_k) / 2;
        let mut level = start;
        let mut out = Vec::with_capacity(seq.len());
        for &x in &seq {
            out.push(level as usize);
            level += x as i64;
        }
        if level != start || out.iter().any(|&l| l as i64 > size) || start < 0 {
            return Err(Error::Internal(format!("walk for {self} leaves [0, {size}]")));
        }
        Ok(out)
    }
}

impl fmt::Display for OddDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Lexicographically greatest list among all rotations of the list and of
/// its reversal.
pub fn canonical_form(parts: &[u32]) -> Vec<u32> {
    let n = parts.len();
    let rev: Vec<u32> = parts.iter().rev().copied().collect();
    let mut best = parts.to_vec();
    for base in [parts, &rev[..]] {
        for r in 0..n {
            let cand: Vec<u32> = base[r..].iter().chain(&base[..r]).copied().collect();
            if cand > best {
                best = cand;
            }
        }
    }
    best
}

/// Run lengths of `+1` entries in a cyclic sign sequence.
pub fn decomposition_from_signs(signs: &[i8]) -> Result<OddDecomposition> {
    if signs.is_empty() {
        return Ok(OddDecomposition::zero());
    }
    if signs.iter().all(|&s| s == 1) {
        return Err(Error::Internal("every jump is positive".into()));
    }
    // Rotate so the sequence starts right after a negative jump.
    let start = (0..signs.len()).find(|&i| signs[i] == 1 && signs[(i + signs.len() - 1) % signs.len()] == -1);
    let Some(start) = start else {
        return Err(Error::Internal("no positive jump".into()));
    };
    let mut runs = Vec::new();
    let mut current = 0u32;
    for i in 0..signs.len() {
        if signs[(start + i) % signs.len()] == 1 {
            current += 1;
        } else if current > 0 {
            runs.push(current);
            current = 0;
        }
    }
    if current > 0 {
        runs.push(current);
    }
    if runs.len() % 2 == 0 {
        return Err(Error::Internal(format!("even number of positive runs: {runs:?}")));
    }
    OddDecomposition::new(runs)
}

pub fn decomposition(ic: &IndexCircle) -> Result<OddDecomposition> {
    decomposition_from_signs(&ic.jump_signs())
}

/// All isotopy classes of smooth complete intersections of two quadrics
/// in `ℙ^n`, ordered by `k`, then number of parts, then descending.
pub fn enumerate_classes(n: usize) -> Result<Vec<OddDecomposition>> {
    if !(2..=9).contains(&n) {
        return Err(Error::InvalidInput(format!("n = {n} outside 2..=9")));
    }
    let mut out = std::collections::BTreeSet::new();
    if n % 2 == 1 {
        out.insert((0, 1, std::cmp::Reverse(vec![0])));
    }
    for k in (1..=n as u32 + 1).filter(|k| (k % 2) as usize == (n + 1) % 2) {
        for parts in (1..=k).step_by(2).flat_map(|r| compositions(k, r)) {
            let c = canonical_form(&parts);
            out.insert((k, c.len(), std::cmp::Reverse(c)));
        }
    }
    Ok(out.into_iter().map(|(_, _, std::cmp::Reverse(c))| OddDecomposition(c)).collect())
}

/// Ordered compositions of `k` into `r` positive parts.
fn compositions(k: u32, r: u32) -> Vec<Vec<u32>> {
    if r == 0 {
        return if k == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    if k < r {
        return Vec::new();
    }
    let mut out = Vec::new();
    for first in 1..=k - (r - 1) {
        for mut rest in compositions(k - first, r - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Dimension `m` of maximal linear subspaces to look for: `dim X = n - 2`
/// is `2m + 1` or `2m`.
pub fn maximal_subspace_dim(n: usize) -> usize {
    (n - 2) / 2
}

/// Bounds on `I⁺` for a real `m`-plane: `m + 1 ≤ I⁺ ≤ n - m`.
pub fn real_subspace_bounds(n: usize) -> (usize, usize) {
    let m = maximal_subspace_dim(n);
    (m + 1, n - m)
}

fn levels_within(levels: &[usize], n: usize) -> bool {
    let (lo, hi) = real_subspace_bounds(n);
    levels.iter().all(|&l| (lo..=hi).contains(&l))
}

/// Real maximal linear subspace criterion on a concrete pencil.
pub fn real_line_exists(p: &Pencil<Rationals>) -> Result<bool> {
    let ic = index_circle(p)?;
    Ok(levels_within(&ic.positive_indices(), p.n()))
}

/// Same criterion applied to the canonical walk of an isotopy class.
pub fn real_line_exists_for_class(d: &OddDecomposition, n: usize) -> Result<bool> {
    Ok(levels_within(&d.walk(n)?, n))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Rational { reason: String },
    Irrational { reason: String, topology: Option<String> },
}

impl Verdict {
    pub fn is_rational(&self) -> bool {
        matches!(self, Verdict::Rational { .. })
    }
}

/// Rationality verdict for the nine real isotopy classes in `ℙ^5`.
pub fn real_verdict_n5(d: &OddDecomposition) -> Result<Verdict> {
    let classes = enumerate_classes(5)?;
    if !classes.contains(d) {
        return Err(Error::InvalidInput(format!("{d} is not an isotopy class for n = 5")));
    }
    if real_line_exists_for_class(d, 5)? {
        return Ok(Verdict::Rational { reason: "contains a real line; projection from it is birational".into() });
    }
    let irr = |reason: &str, topology: Option<&str>| Verdict::Irrational {
        reason: reason.into(),
        topology: topology.map(str::to_string),
    };
    Ok(match d.parts() {
        [6] => irr("empty real locus", None),
        [4, 1, 1] => irr("disconnected real locus", Some("S³ ⊔ S³")),
        [4] => irr("no real line", Some("S³")),
        [3, 2, 1] => irr("no real line", Some("S¹ × S²")),
        _ => return Err(Error::Internal(format!("no verdict rule for {d}"))),
    })
}
