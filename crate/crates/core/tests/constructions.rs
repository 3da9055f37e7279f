use qpencil::constructions::bundle::{compare_degeneracy, double_projection};
use qpencil::constructions::isotropy::{amer_harness, isotropic_finite};
use qpencil::constructions::projection::{project_from_line, residual_line};
use qpencil::finite::lines::PluckerLine;
use qpencil::finite::points::ProjectiveSpace;
use qpencil::matrix::SymMatrix;
use qpencil::pencil::Pencil;
use qpencil::sample::{random_invertible, random_pencil_with_line, random_smooth_pencil, random_symmetric};
use qpencil::{Error, Field, PrimeField};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn points_on(pen: &Pencil<PrimeField>) -> Vec<Vec<u64>> {
    ProjectiveSpace::new(*pen.field(), pen.n()).filter_par(|x| pen.contains_point(x))
}

#[test]
fn projection_round_trip_on_generated_instances() {
    let f = PrimeField::new(11).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let (u, v) = ([1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0]);
    for _ in 0..3 {
        // Hide the coordinate line behind a random change of coordinates.
        let base = random_pencil_with_line(&f, 5, &mut rng).unwrap();
        let m = random_invertible(&f, 6, &mut rng);
        let minv = m.inverse().unwrap();
        let pen = base.transform(&m).unwrap();
        let (u, v) = (minv.mul_vec(&u), minv.mul_vec(&v));
        let proj = project_from_line(&pen, &u, &v).unwrap();
        assert!(proj.quintic_curve.contains(proj.determinant_equation()));
        assert_eq!(proj.determinant_equation().total_degree(), Some(2));

        let mut pts = points_on(&pen);
        pts.shuffle(&mut rng);
        let sampled: Vec<bool> = pts.iter().filter_map(|x| proj.round_trip(x)).take(20).collect();
        assert_eq!(sampled.len(), 20);
        assert!(sampled.iter().all(|&ok| ok));

        let mut inverse_ok = 0;
        while inverse_ok < 20 {
            let w: Vec<u64> = (0..4).map(|_| rng.gen_range(0..11)).collect();
            if w.iter().all(|&c| c == 0) {
                continue;
            }
            if let Some(ok) = proj.inverse_round_trip(&w) {
                assert!(ok);
                assert!(pen.contains_point(&proj.beta_inv.apply(&w).unwrap()));
                inverse_ok += 1;
            }
        }
    }
}

#[test]
fn projection_rejects_line_off_x() {
    let f = PrimeField::new(11).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let pen = random_smooth_pencil(&f, 5, &mut rng).unwrap();
    let r = project_from_line(&pen, &[1, 0, 0, 0, 0, 0], &[0, 1, 0, 0, 0, 0]);
    assert!(matches!(r, Err(Error::InvalidInput(_))));
}

/// `x0x2 − x1²`, `x1x3 − x2²` on `Π = {x4 = x5 = 0}`: a twisted cubic plus
/// the line `x1 = x2 = 0`. Random terms involving `x4`, `x5` extend them to
/// a smooth pencil in `ℙ^5`.
fn planted_pencil(f: &PrimeField, rng: &mut ChaCha8Rng) -> Pencil<PrimeField> {
    let base0 = [(0, 2, 1), (1, 1, -1)];
    let base1 = [(1, 3, 1), (2, 2, -1)];
    loop {
        let extend = |base: &[(usize, usize, i64)], rng: &mut ChaCha8Rng| {
            let mut terms: Vec<(usize, usize, u64)> = base.iter().map(|&(i, j, c)| (i, j, f.reduce_i64(c))).collect();
            for i in 0..6 {
                for j in 4.max(i)..6 {
                    terms.push((i, j, rng.gen_range(0..f.p())));
                }
            }
            SymMatrix::from_monomial_coeffs(f, 6, &terms).unwrap()
        };
        let pen = Pencil::new(extend(&base0, rng), extend(&base1, rng)).unwrap();
        if pen.discriminant_form().is_ok() && pen.is_smooth().unwrap() {
            return pen;
        }
    }
}

#[test]
fn residual_line_of_planted_twisted_cubic() {
    let f = PrimeField::new(11).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..3 {
        let base = planted_pencil(&f, &mut rng);
        let m = random_invertible(&f, 6, &mut rng);
        let minv = m.inverse().unwrap();
        let pen = base.transform(&m).unwrap();
        let e = |i: usize| (0..6).map(|j| u64::from(i == j)).collect::<Vec<u64>>();
        let plane: Vec<Vec<u64>> = (0..4).map(|i| minv.mul_vec(&e(i))).collect();
        let r = residual_line(&pen, &plane).unwrap();
        let expected = PluckerLine::from_basis(&f, &minv.mul_vec(&e(0)), &minv.mul_vec(&e(3))).unwrap();
        assert_eq!(r.line, expected);
        assert_eq!((r.curve_degree, r.residual_degree), (4, 3));
        assert!(r.line.lies_on(&pen));

        // Twisted cubic and line meet in two points: 2(q + 1) − 2 points.
        let on_plane = ProjectiveSpace::new(f, 3)
            .iter()
            .filter(|y| {
                let x: Vec<u64> = (0..6).map(|k| (0..4).fold(0, |acc, i| (acc + plane[i][k] * y[i]) % 11)).collect();
                pen.contains_point(&x)
            })
            .count();
        assert_eq!(on_plane, 22);
    }
}

#[test]
fn generic_plane_section_has_no_line() {
    let f = PrimeField::new(11).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    let pen = random_smooth_pencil(&f, 5, &mut rng).unwrap();
    let m = random_invertible(&f, 6, &mut rng);
    let plane: Vec<Vec<u64>> = (0..4).map(|i| m.column(i)).collect();
    assert!(matches!(residual_line(&pen, &plane), Err(Error::NotFound(_))));
}

#[test]
fn double_projection_matches_discriminant_curve() {
    let f = PrimeField::new(11).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    let mut done = 0;
    while done < 3 {
        let pen = random_smooth_pencil(&f, 5, &mut rng).unwrap();
        let mut pts = points_on(&pen);
        pts.shuffle(&mut rng);
        let Some(dp) = pts.iter().find_map(|x| double_projection(&pen, x).ok()) else { continue };
        assert_eq!(dp.degeneracy_sextic.degree(), 6);
        assert!(dp.degeneracy_sextic.coeffs().iter().any(|c| *c != 0));
        let cmp = compare_degeneracy(&pen, &dp).unwrap();
        assert!(cmp.equal, "{cmp:?}");
        done += 1;
    }
}

#[test]
fn double_projection_rejects_point_off_x() {
    let f = PrimeField::new(11).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(26);
    let pen = random_smooth_pencil(&f, 5, &mut rng).unwrap();
    let off = ProjectiveSpace::new(f, 5).iter().find(|x| !pen.contains_point(x)).unwrap();
    assert!(matches!(double_projection(&pen, &off), Err(Error::InvalidInput(_))));
}

#[test]
fn finite_isotropy_theorem_matches_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(27);
    for p in [3u64, 5, 7] {
        let f = PrimeField::new(p).unwrap();
        for size in 1..=4 {
            for _ in 0..20 {
                // The audit inside errors on any disagreement.
                isotropic_finite(&random_symmetric(&f, size, &mut rng)).unwrap();
            }
        }
    }
}

#[test]
fn amer_biconditional_on_random_pairs() {
    let f = PrimeField::new(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(28);
    let mut without_common_zero = 0;
    for _ in 0..200 {
        let n = rng.gen_range(2..=4);
        let d = rng.gen_range(1..=3);
        let a = random_symmetric(&f, n, &mut rng);
        let b = random_symmetric(&f, n, &mut rng);
        let r = amer_harness(&a, &b, d).unwrap();
        assert!(!r.violation, "{r:?}");
        if r.common_zero.is_none() {
            without_common_zero += 1;
            assert!(r.polynomial_solution.is_none());
        }
    }
    assert!(without_common_zero > 0);
}

#[test]
fn amer_solutions_are_genuine() {
    // x0x1 and x0x2 share (1:0:0); the reported solution must vanish.
    let f = PrimeField::new(5).unwrap();
    let a = SymMatrix::from_monomial_coeffs(&f, 3, &[(0, 1, 1)]).unwrap();
    let b = SymMatrix::from_monomial_coeffs(&f, 3, &[(0, 2, 1)]).unwrap();
    let r = amer_harness(&a, &b, 2).unwrap();
    let x0 = &r.polynomial_solution.unwrap()[0];
    assert!(f.is_zero(&a.eval(x0)) && f.is_zero(&b.eval(x0)));
}
