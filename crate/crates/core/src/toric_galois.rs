//! Finite groups of 3×3 integer matrices acting on a character lattice,
//! and the rationality criterion for tori split by a subgroup of
//! `H ≅ S4 × S2`.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};

pub type IntMatrix = [[i64; 3]; 3];

pub const CLOSURE_GUARD: usize = 10_000;

pub const IDENTITY: IntMatrix = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];

pub fn mat_mul(x: &IntMatrix, y: &IntMatrix) -> IntMatrix {
    let mut out = [[0i64; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|k| x[i][k] * y[k][j]).sum();
        }
    }
    out
}

pub fn mat_det(m: &IntMatrix) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

pub fn mat_pow(m: &IntMatrix, e: u32) -> IntMatrix {
    (0..e).fold(IDENTITY, |acc, _| mat_mul(&acc, m))
}

pub fn generator_a() -> IntMatrix {
    [[0, 1, 0], [0, 0, 1], [-1, -1, -1]]
}

pub fn generator_b() -> IntMatrix {
    [[0, 1, 0], [1, 0, 0], [0, 0, 1]]
}

pub fn generator_c() -> IntMatrix {
    [[-1, 0, 0], [0, -1, 0], [0, 0, -1]]
}

/// Generators of the Klein subgroup `U1`: with `a = (1234)` and `b = (12)`
/// these are `(12)(34) = a²·b·a²·b` and `(12)·c`. Every nonidentity element
/// has trace −1. `a²` and `b·c` themselves generate a dihedral group of
/// order 8 containing `U1` with index 2.
pub fn u1_generators() -> Vec<IntMatrix> {
    let (a, b) = (generator_a(), generator_b());
    let a2 = mat_pow(&a, 2);
    let x = mat_mul(&mat_mul(&a2, &b), &mat_mul(&a2, &b));
    vec![x, mat_mul(&b, &generator_c())]
}

/// `⟨a², b·c⟩`.
pub fn dihedral_hull_generators() -> Vec<IntMatrix> {
    vec![mat_pow(&generator_a(), 2), mat_mul(&generator_b(), &generator_c())]
}

pub fn trace(m: &IntMatrix) -> i64 {
    m[0][0] + m[1][1] + m[2][2]
}

#[derive(Debug, Clone, Serialize)]
pub struct IntMatrixGroup {
    pub name: Option<String>,
    pub generators: Vec<IntMatrix>,
    /// Closure in breadth-first order from the identity.
    pub elements: Vec<IntMatrix>,
    #[serde(skip)]
    index: HashMap<IntMatrix, usize>,
}

/// Closure of a set of matrices invertible over `ℤ`.
pub fn group_closure(generators: &[IntMatrix], name: Option<&str>) -> Result<IntMatrixGroup> {
    for g in generators {
        if mat_det(g).abs() != 1 {
            return Err(Error::InvalidInput(format!("generator {g:?} is not invertible over the integers")));
        }
    }
    let mut elements = vec![IDENTITY];
    let mut index = HashMap::from([(IDENTITY, 0usize)]);
    let mut queue = VecDeque::from([IDENTITY]);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = mat_mul(&x, g);
            if let std::collections::hash_map::Entry::Vacant(e) = index.entry(y) {
                if elements.len() >= CLOSURE_GUARD {
                    return Err(Error::SizeGuard(format!(
                        "group is infinite or too large (more than {CLOSURE_GUARD} elements)"
                    )));
                }
                e.insert(elements.len());
                elements.push(y);
                queue.push_back(y);
            }
        }
    }
    Ok(IntMatrixGroup { name: name.map(str::to_string), generators: generators.to_vec(), elements, index })
}

impl IntMatrixGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, m: &IntMatrix) -> bool {
        self.index.contains_key(m)
    }

    pub fn position(&self, m: &IntMatrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().all(|x| self.generators.iter().all(|y| mat_mul(x, y) == mat_mul(y, x)))
    }

    pub fn exponent(&self) -> u64 {
        self.elements.iter().map(element_order).fold(1, lcm)
    }

    pub fn type_tag(&self) -> String {
        type_tag(self.order(), self.exponent(), self.is_abelian())
    }
}

pub fn element_order(m: &IntMatrix) -> u64 {
    let mut x = *m;
    let mut k = 1;
    while x != IDENTITY {
        x = mat_mul(&x, m);
        k += 1;
    }
    k
}

fn lcm(a: u64, b: u64) -> u64 {
    a / num_integer::gcd(a, b) * b
}

/// Isomorphism-type label from order, exponent and commutativity.
pub fn type_tag(order: usize, exponent: u64, abelian: bool) -> String {
    let o = order as u64;
    match (o, exponent, abelian) {
        (1, _, _) => "trivial".into(),
        (4, 2, true) => "Klein four".into(),
        (o, e, true) if e == o => format!("C{o}"),
        (o, 2, true) => format!("elementary abelian 2^{}", o.trailing_zeros()),
        (24, 12, false) => "S4".into(),
        (48, 12, false) => "S4 x S2".into(),
        (6, 6, false) => "S3".into(),
        (8, 4, false) => "dihedral of order 8".into(),
        (o, e, a) => format!("order {o}, exponent {e}, {}", if a { "abelian" } else { "nonabelian" }),
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct RelationAudit {
    pub a4: bool,
    pub b2: bool,
    pub ab3: bool,
    pub c2: bool,
    pub c_central: bool,
}

impl RelationAudit {
    pub fn passes(&self) -> bool {
        self.a4 && self.b2 && self.ab3 && self.c2 && self.c_central
    }
}

pub fn relation_audit(a: &IntMatrix, b: &IntMatrix, c: &IntMatrix) -> RelationAudit {
    RelationAudit {
        a4: mat_pow(a, 4) == IDENTITY,
        b2: mat_pow(b, 2) == IDENTITY,
        ab3: mat_pow(&mat_mul(a, b), 3) == IDENTITY,
        c2: mat_pow(c, 2) == IDENTITY,
        c_central: [a, b].iter().all(|x| mat_mul(x, c) == mat_mul(c, x)),
    }
}

/// `H = ⟨a, b, c⟩`.
pub fn group_h() -> IntMatrixGroup {
    group_closure(&[generator_a(), generator_b(), generator_c()], Some("H")).expect("H is finite")
}

/// `H` with its multiplication table, for subgroup work as bit masks.
#[derive(Debug, Clone)]
pub struct AmbientGroup {
    pub group: IntMatrixGroup,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
}

impl AmbientGroup {
    pub fn new(group: IntMatrixGroup) -> Result<Self> {
        let n = group.order();
        if n > 64 {
            return Err(Error::SizeGuard(format!("subgroup masks need an ambient group of order <= 64, got {n}")));
        }
        let table: Vec<Vec<usize>> = group
            .elements
            .iter()
            .map(|x| group.elements.iter().map(|y| group.index[&mat_mul(x, y)]).collect())
            .collect();
        let inverse = (0..n).map(|i| (0..n).find(|&j| table[i][j] == 0).expect("finite group")).collect();
        Ok(AmbientGroup { group, table, inverse })
    }

    pub fn h() -> Self {
        Self::new(group_h()).expect("H has order 48")
    }

    fn mask_of(&self, ms: &[IntMatrix]) -> Result<u64> {
        ms.iter().try_fold(0u64, |acc, m| {
            let i = self
                .group
                .position(m)
                .ok_or_else(|| Error::InvalidInput(format!("matrix {m:?} is not in {}", self.name())))?;
            Ok(acc | (1 << i))
        })
    }

    fn name(&self) -> &str {
        self.group.name.as_deref().unwrap_or("the ambient group")
    }

    /// Subgroup generated by the elements of a mask.
    pub fn closure(&self, gens: u64) -> u64 {
        let mut s = gens | 1;
        loop {
            let mut next = s;
            for i in bits(s) {
                for j in bits(gens | 1) {
                    next |= 1 << self.table[i][j];
                }
            }
            if next == s {
                return s;
            }
            s = next;
        }
    }

    pub fn conjugate(&self, mask: u64, h: usize) -> u64 {
        bits(mask).fold(0, |acc, i| acc | 1 << self.table[self.table[h][i]][self.inverse[h]])
    }

    /// All subgroups of the subgroup `g`, as masks in increasing order.
    pub fn subgroups(&self, g: u64) -> Vec<u64> {
        let mut seen = BTreeSet::from([1u64]);
        let mut queue = VecDeque::from([1u64]);
        while let Some(s) = queue.pop_front() {
            for x in bits(g & !s) {
                let t = self.closure(s | 1 << x);
                if seen.insert(t) {
                    queue.push_back(t);
                }
            }
        }
        seen.into_iter().collect()
    }

    fn element(&self, i: usize) -> IntMatrix {
        self.group.elements[i]
    }

    fn is_elementary_klein(&self, mask: u64) -> bool {
        mask.count_ones() == 4 && bits(mask).all(|i| self.table[i][i] == 0)
    }
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask & (1 << i) != 0)
}

#[derive(Debug, Clone, Copy, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum TorusRationality {
    Rational,
    Nonrational,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct ConjugacyWitness {
    /// `h` with `h·U1·h⁻¹` equal to the subgroup below.
    pub conjugator: IntMatrix,
    pub subgroup_generators: Vec<IntMatrix>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct TorusVerdict {
    pub verdict: TorusRationality,
    pub order: usize,
    pub type_tag: String,
    pub subgroup_count: usize,
    pub witness: Option<ConjugacyWitness>,
    /// `G` contains a Klein four-group that is not `H`-conjugate to `U1`.
    pub klein_caveat: bool,
}

/// Nonrational iff `G = ⟨gens⟩ ⊂ H` contains an `H`-conjugate of `U1`.
pub fn torus_rationality(h: &AmbientGroup, gens: &[IntMatrix]) -> Result<TorusVerdict> {
    let g = h.closure(h.mask_of(gens)?);
    let u1 = h.closure(h.mask_of(&u1_generators())?);
    let subgroups = h.subgroups(g);
    let conjugates: Vec<(usize, u64)> = (0..h.group.order()).map(|x| (x, h.conjugate(u1, x))).collect();

    let mut witness = None;
    let mut klein_caveat = false;
    for &s in &subgroups {
        if s.count_ones() != 4 {
            continue;
        }
        match conjugates.iter().find(|(_, c)| *c == s) {
            Some(&(x, _)) => {
                if witness.is_none() {
                    let gens: Vec<IntMatrix> = bits(s).skip(1).take(2).map(|i| h.element(i)).collect();
                    witness = Some(ConjugacyWitness { conjugator: h.element(x), subgroup_generators: gens });
                }
            }
            None => klein_caveat |= h.is_elementary_klein(s),
        }
    }
    let sub = group_closure(&bits(g).map(|i| h.element(i)).collect::<Vec<_>>(), None)?;
    Ok(TorusVerdict {
        verdict: if witness.is_some() { TorusRationality::Nonrational } else { TorusRationality::Rational },
        order: g.count_ones() as usize,
        type_tag: type_tag(sub.order(), sub.exponent(), is_abelian_mask(h, g)),
        subgroup_count: subgroups.len(),
        witness,
        klein_caveat,
    })
}

fn is_abelian_mask(h: &AmbientGroup, g: u64) -> bool {
    bits(g).all(|i| bits(g).all(|j| h.table[i][j] == h.table[j][i]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h_has_order_48_and_relations() {
        let h = group_h();
        assert_eq!(h.order(), 48);
        assert_eq!(h.type_tag(), "S4 x S2");
        assert!(relation_audit(&generator_a(), &generator_b(), &generator_c()).passes());
        let u1 = group_closure(&u1_generators(), Some("U1")).unwrap();
        assert_eq!(u1.order(), 4);
        assert_eq!(u1.type_tag(), "Klein four");
        assert!(u1.elements.iter().skip(1).all(|m| trace(m) == -1));
        let hull = group_closure(&dihedral_hull_generators(), None).unwrap();
        assert_eq!(hull.order(), 8);
        assert!(u1.elements.iter().all(|m| hull.contains(m)));
    }

    #[test]
    fn verdicts() {
        let h = AmbientGroup::h();
        let v = |gens: &[IntMatrix]| torus_rationality(&h, gens).unwrap();
        assert_eq!(v(&[generator_a(), generator_b(), generator_c()]).verdict, TorusRationality::Nonrational);
        let s4 = v(&[generator_a(), generator_b()]);
        assert_eq!(s4.verdict, TorusRationality::Rational);
        assert_eq!(s4.type_tag, "S4");
        let u = v(&u1_generators());
        assert_eq!(u.verdict, TorusRationality::Nonrational);
        assert!(u.witness.is_some());
        assert_eq!(v(&[generator_c()]).verdict, TorusRationality::Rational);
        assert_eq!(v(&dihedral_hull_generators()).verdict, TorusRationality::Nonrational);
    }

    #[test]
    fn outside_h_rejected() {
        let h = AmbientGroup::h();
        let m = [[1, 1, 0], [0, 1, 0], [0, 0, 1]];
        assert!(matches!(torus_rationality(&h, &[m]), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn infinite_group_hits_guard() {
        let m = [[1, 1, 0], [0, 1, 0], [0, 0, 1]];
        assert!(matches!(group_closure(&[m], None), Err(Error::SizeGuard(_))));
    }
}
