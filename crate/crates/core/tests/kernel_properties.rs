use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use qpencil::matrix::{Matrix, SymMatrix};
use qpencil::pencil::Pencil;
use qpencil::real::{canonical_form, decomposition, index_circle, OddDecomposition};
use qpencil::sample::{random_invertible, random_rational_pencil, random_symmetric};
use qpencil::sturm::{isolate_real_roots, QPoly, SturmSequence};
use qpencil::univariate::UniPoly;
use qpencil::{Field, PrimeField, Rationals};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn int_sym(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> SymMatrix<Rationals> {
    let mut rows = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i..n {
            let v = rng.gen_range(-bound..=bound);
            rows[i][j] = v;
            rows[j][i] = v;
        }
    }
    SymMatrix::from_i64(&Rationals, &rows).unwrap()
}

fn int_invertible(rng: &mut ChaCha8Rng, n: usize) -> Matrix<Rationals> {
    loop {
        let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        let m = Matrix::from_i64(&Rationals, &rows);
        if !Rationals.is_zero(&m.det()) {
            return m;
        }
    }
}

/// Signature from eigenvalue signs of the characteristic polynomial:
/// Descartes' rule is exact when all roots are real.
fn signature_by_descartes(a: &SymMatrix<Rationals>) -> (usize, usize) {
    let n = a.size();
    // Characteristic polynomial by Faddeev–LeVerrier.
    let q = Rationals;
    let m = a.matrix();
    let mut coeffs = vec![q.zero(); n + 1];
    coeffs[n] = q.one();
    let mut mk = Matrix::zeros(&q, n, n);
    for k in 1..=n {
        let ident_c = Matrix::identity(&q, n).scale(&coeffs[n - k + 1]);
        mk = m.mul(&mk).add(&ident_c);
        let amk = m.mul(&mk);
        let tr = (0..n).fold(q.zero(), |acc, i| q.add(&acc, amk.get(i, i)));
        coeffs[n - k] = q.neg(&q.div(&tr, &q.from_i64(k as i64)).unwrap());
    }
    let sign_changes = |c: &[BigRational]| {
        let signs: Vec<i32> = c.iter().filter(|x| !q.is_zero(x)).map(qpencil::field::sign).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    let pos = sign_changes(&coeffs);
    let neg_coeffs: Vec<BigRational> =
        coeffs.iter().enumerate().map(|(i, c)| if i % 2 == 1 { -c.clone() } else { c.clone() }).collect();
    let neg = sign_changes(&neg_coeffs);
    (pos, neg)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn sylvester_congruence_invariance(seed in any::<u64>(), n in 2usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = int_sym(&mut rng, n, 4);
        let p = int_invertible(&mut rng, n);
        let s = a.signature();
        prop_assert_eq!(s, a.congruence(&p).signature());
        prop_assert_eq!(s.pos + s.neg + s.zero, n);
        prop_assert_eq!((s.pos, s.neg), signature_by_descartes(&a));
    }

    #[test]
    fn squarefree_iff_resultant_nonzero(coeffs in proptest::collection::vec(-4i64..=4, 3..8)) {
        let q = Rationals;
        let mut c = coeffs.clone();
        if *c.last().unwrap() == 0 {
            *c.last_mut().unwrap() = 1;
        }
        let p = UniPoly::from_i64(&q, &c);
        let r = p.resultant(&p.derivative());
        prop_assert_eq!(p.is_squarefree().unwrap(), !q.is_zero(&r));
    }

    #[test]
    fn squarefree_after_squaring_fails(coeffs in proptest::collection::vec(-4i64..=4, 2..5)) {
        let q = Rationals;
        let mut c = coeffs.clone();
        if *c.last().unwrap() == 0 {
            *c.last_mut().unwrap() = 1;
        }
        let p = UniPoly::from_i64(&q, &c);
        prop_assert!(!p.mul(&p).is_squarefree().unwrap());
    }

    #[test]
    fn discriminant_is_gl2_equivariant(seed in any::<u64>()) {
        let f = PrimeField::new(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = Pencil::new(random_symmetric(&f, 4, &mut rng), random_symmetric(&f, 4, &mut rng)).unwrap();
        let g = random_invertible(&f, 2, &mut rng);
        let (a, b, c, d) = (*g.get(0, 0), *g.get(0, 1), *g.get(1, 0), *g.get(1, 1));
        let (Ok(fd), Ok(moved)) = (p.discriminant_form(), p.recombine(&a, &b, &c, &d)) else {
            return Ok(());
        };
        prop_assert_eq!(moved.discriminant_form().unwrap(), fd.substitute(&a, &b, &c, &d));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn sturm_counts_distinct_real_roots(r in proptest::collection::vec(-6i64..=6, 3), d in 1i64..5, twist in any::<bool>()) {
        let q = Rationals;
        let lin = |a: i64| UniPoly::from_i64(&q, &[-a, 1]);
        let mut p: QPoly = r.iter().fold(UniPoly::from_i64(&q, &[1]), |acc, &a| acc.mul(&lin(a)));
        if twist {
            p = p.mul(&UniPoly::from_i64(&q, &[d, 0, 1]));
        }
        let mut distinct = r.clone();
        distinct.sort();
        distinct.dedup();
        prop_assert_eq!(SturmSequence::new(&p).count_all(), distinct.len());
        let intervals = isolate_real_roots(&p);
        prop_assert_eq!(intervals.len(), distinct.len());
        for root in &distinct {
            let x = rat(*root);
            let hits = intervals.iter().filter(|(lo, hi)| lo < &x && &x < hi).count();
            prop_assert_eq!(hits, 1);
        }
    }

    #[test]
    fn smoothness_is_congruence_invariant(seed in any::<u64>()) {
        let f = PrimeField::new(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = Pencil::new(random_symmetric(&f, 5, &mut rng), random_symmetric(&f, 5, &mut rng)).unwrap();
        let m = random_invertible(&f, 5, &mut rng);
        let moved = p.transform(&m).unwrap();
        match (p.is_smooth(), moved.is_smooth()) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a, b),
            (Err(_), Err(_)) => {}
            other => prop_assert!(false, "mismatch {:?}", other),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(25))]

    #[test]
    fn decomposition_is_invariant(seed in any::<u64>(), n in 3usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_rational_pencil(n, 3, &mut rng).unwrap();
        let d = decomposition(&index_circle(&p).unwrap()).unwrap();
        let moved = p.transform(&int_invertible(&mut rng, n + 1)).unwrap();
        prop_assert_eq!(&d, &decomposition(&index_circle(&moved).unwrap()).unwrap());
        let q = Rationals;
        let g = int_invertible(&mut rng, 2);
        let re = p.recombine(g.get(0, 0), g.get(0, 1), g.get(1, 0), g.get(1, 1)).unwrap();
        prop_assert_eq!(&d, &decomposition(&index_circle(&re).unwrap()).unwrap());
        let neg = p.recombine(&q.from_i64(-1), &q.zero(), &q.zero(), &q.from_i64(-1)).unwrap();
        prop_assert_eq!(&d, &decomposition(&index_circle(&neg).unwrap()).unwrap());
    }
}

fn odd_compositions(total: u32) -> Vec<Vec<u32>> {
    fn rec(left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            if cur.len() % 2 == 1 {
                out.push(cur.clone());
            }
            return;
        }
        for first in 1..=left {
            cur.push(first);
            rec(left - first, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, &mut Vec::new(), &mut out);
    out
}

#[test]
fn canonicalization_is_idempotent_and_dihedral_invariant() {
    for total in 1..=6 {
        for parts in odd_compositions(total) {
            let c = canonical_form(&parts);
            assert_eq!(canonical_form(&c), c);
            let r = parts.len();
            let rev: Vec<u32> = parts.iter().rev().copied().collect();
            for shift in 0..r {
                let rot: Vec<u32> = parts[shift..].iter().chain(&parts[..shift]).copied().collect();
                assert_eq!(canonical_form(&rot), c);
                let rrot: Vec<u32> = rev[shift..].iter().chain(&rev[..shift]).copied().collect();
                assert_eq!(canonical_form(&rrot), c);
            }
            assert_eq!(OddDecomposition::new(parts.clone()).unwrap().parts(), &c[..]);
        }
    }
}
