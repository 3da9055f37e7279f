//! Acceptance suite: one PASS/FAIL line per criterion, each with a wall-clock
//! bound. Runs as a plain binary so the report prints in order.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use qpencil::constructions::bundle::{
    bundle_parameter_counts, compare_degeneracy, double_projection, h0, hpt_check, hpt_vars,
};
use qpencil::constructions::formulas::{secant_degrees, secant_multiplicity};
use qpencil::constructions::isotropy::amer_harness;
use qpencil::constructions::projection::project_from_line;
use qpencil::finite::hyperelliptic::weil_interval;
use qpencil::finite::points::ProjectiveSpace;
use qpencil::finite::toric::{
    line_component_degree, plane_union_count, plane_union_inclusion_exclusion, toric_line_census, toric_pencil,
    toric_singular_points, toric_singular_points_rational,
};
use qpencil::finite::torsor::torsor_check;
use qpencil::matrix::{Matrix, SymMatrix};
use qpencil::pencil::Pencil;
use qpencil::poly::parse_poly;
use qpencil::real::{
    canonical_form, enumerate_classes, index_circle, real_line_exists_for_class, real_verdict_n5, OddDecomposition,
    Verdict,
};
use qpencil::sample::{
    random_invertible, random_pencil_with_line, random_rational_pencil, random_smooth_pencil, random_symmetric,
};
use qpencil::toric_galois::{
    dihedral_hull_generators, generator_a, generator_b, generator_c, group_h, relation_audit, torus_rationality,
    u1_generators, AmbientGroup, TorusRationality,
};
use qpencil::univariate::BinaryForm;
use qpencil::{Field, PrimeField, Rationals};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Jacobian orders computed by earlier criteria, audited against the Weil
/// interval in the property criterion.
#[derive(Default)]
struct Shared {
    jacobians: Vec<(u64, u64)>,
}

fn c1_class_counts(_: &mut Shared) -> Outcome {
    let expected: [(usize, &[&str]); 4] = [
        (2, &["(1)", "(3)", "(1,1,1)"]),
        (3, &["(0)", "(2)", "(2,1,1)", "(4)"]),
        (4, &["(1)", "(3)", "(1,1,1)", "(5)", "(3,1,1)", "(2,2,1)", "(1,1,1,1,1)"]),
        (5, &["(0)", "(2)", "(4)", "(2,1,1)", "(6)", "(4,1,1)", "(3,2,1)", "(2,2,2)", "(2,1,1,1,1)"]),
    ];
    let mut counts = Vec::new();
    for (n, list) in expected {
        let got: Vec<String> = enumerate_classes(n).map_err(err)?.iter().map(|c| c.to_string()).collect();
        let want: BTreeSet<&str> = list.iter().copied().collect();
        let have: BTreeSet<&str> = got.iter().map(String::as_str).collect();
        ensure(got.len() == list.len() && have == want, || format!("n = {n}: {got:?}"))?;
        counts.push(got.len());
    }
    Ok(format!("counts {counts:?}"))
}

fn c2_verdict_table(_: &mut Shared) -> Outcome {
    let rational: BTreeSet<&str> = ["(0)", "(2)", "(2,1,1)", "(2,2,2)", "(2,1,1,1,1)"].into();
    let topology = [("(4)", Some("S³")), ("(4,1,1)", Some("S³ ⊔ S³")), ("(3,2,1)", Some("S¹ × S²")), ("(6)", None)];
    for class in enumerate_classes(5).map_err(err)? {
        let name = class.to_string();
        let line = real_line_exists_for_class(&class, 5).map_err(err)?;
        ensure(line == rational.contains(name.as_str()), || format!("{name}: real line {line}"))?;
        match real_verdict_n5(&class).map_err(err)? {
            Verdict::Rational { .. } => ensure(line, || format!("{name} rational without a real line"))?,
            Verdict::Irrational { topology: t, .. } => {
                let want = topology.iter().find(|(c, _)| *c == name).map(|(_, t)| *t);
                ensure(want == Some(t.as_deref()), || format!("{name}: topology {t:?}"))?;
            }
        }
    }
    Ok("9 classes, 5 rational".into())
}

fn c3_torsor(shared: &mut Shared) -> Outcome {
    let mut lines = Vec::new();
    for (p, count) in [(3u64, 5), (5, 3)] {
        let f = PrimeField::new(p).map_err(err)?;
        let mut rng = ChaCha8Rng::seed_from_u64(300 + p);
        for _ in 0..count {
            let start = Instant::now();
            let pen = random_smooth_pencil(&f, 5, &mut rng).map_err(err)?;
            let r = torsor_check(&pen).map_err(err)?;
            ensure(r.holds, || format!("q = {p}: {} lines vs L(1) = {}", r.lines, r.jac_order))?;
            ensure(start.elapsed() < Duration::from_secs(60), || {
                format!("instance over F_{p} took {:?}", start.elapsed())
            })?;
            shared.jacobians.push((p, r.jac_order));
            lines.push(r.lines);
        }
    }
    Ok(format!("line counts {lines:?}"))
}

fn c4_toric(_: &mut Shared) -> Outcome {
    ensure(toric_singular_points_rational().map_err(err)?.len() == 6, || "over Q".into())?;
    for p in [3, 5] {
        let n = toric_singular_points(&PrimeField::new(p).map_err(err)?).map_err(err)?.len();
        ensure(n == 6, || format!("{n} singular points over F_{p}"))?;
    }
    let q = Rationals;
    let disc = toric_pencil(&q).discriminant_form().map_err(err)?;
    let root = |a: i64, b: i64| (q.from_i64(a), q.from_i64(b));
    let expected = BinaryForm::from_linear_factors(
        &q,
        &[root(1, 0), root(1, 0), root(-1, 1), root(-1, 1), root(0, 1), root(0, 1)],
    )
    .scale(&q.from_i64(-1));
    ensure(disc.proportional_to(&expected).is_some(), || format!("discriminant {disc}"))?;
    // Fixed before the build: 8 planes of 13 lines, 12 shared, plus 4·4
    // torus points on the four del Pezzo components.
    let oracle = 8 * 13 - 12 + 4 * 4;
    let census = toric_line_census(&PrimeField::new(3).map_err(err)?).map_err(err)?;
    ensure(census.total == oracle, || format!("{} lines over F_3, oracle {oracle}", census.total))?;
    let union = plane_union_count(&PrimeField::new(3).map_err(err)?).map_err(err)?;
    ensure(union as i64 == plane_union_inclusion_exclusion(3), || format!("plane union {union}"))?;
    ensure(line_component_degree() == 8 + 4 * 6, || "degree bookkeeping".into())?;
    Ok(format!("6 singular points, {} lines over F_3, degree 32", census.total))
}

fn c5_projection(_: &mut Shared) -> Outcome {
    let f = PrimeField::new(11).map_err(err)?;
    let mut rng = ChaCha8Rng::seed_from_u64(500);
    for instance in 0..3 {
        let base = random_pencil_with_line(&f, 5, &mut rng).map_err(err)?;
        let m = random_invertible(&f, 6, &mut rng);
        let minv = m.inverse().ok_or("singular change of coordinates")?;
        let pen = base.transform(&m).map_err(err)?;
        let u = minv.mul_vec(&[1, 0, 0, 0, 0, 0]);
        let v = minv.mul_vec(&[0, 1, 0, 0, 0, 0]);
        let proj = project_from_line(&pen, &u, &v).map_err(err)?;
        let l = &proj.l;
        let minor = l[0][0].mul(&l[1][1]).sub(&l[0][1].mul(&l[1][0]));
        ensure(proj.quintic_curve.contains(&minor), || format!("instance {instance}: minor missing"))?;
        let mut pts = ProjectiveSpace::new(f, 5).filter_par(|x| pen.contains_point(x));
        pts.shuffle(&mut rng);
        let ok = pts.iter().filter_map(|x| proj.round_trip(x)).take(20).filter(|&b| b).count();
        ensure(ok == 20, || format!("instance {instance}: {ok}/20 round trips"))?;
    }
    Ok("3 instances, 20/20 each".into())
}

fn c6_secants(_: &mut Shared) -> Outcome {
    for ((d, g), want) in [((3, 0), (1, 1)), ((4, 1), (2, 0)), ((5, 2), (4, 1))] {
        let s = secant_degrees(d, g).map_err(err)?;
        ensure((s.sec_deg, s.sigma_deg) == want, || format!("(d, g) = ({d}, {g}): {s:?}"))?;
        let m = secant_multiplicity(d, g).map_err(err)?;
        ensure(m == d - 2, || format!("(d, g) = ({d}, {g}): m = {m}"))?;
    }
    Ok("(1,1) (2,0) (4,1), m = d - 2".into())
}

fn c7_double_projection(_: &mut Shared) -> Outcome {
    let f = PrimeField::new(11).map_err(err)?;
    let mut rng = ChaCha8Rng::seed_from_u64(700);
    let mut found = Vec::new();
    while found.len() < 3 {
        let pen = random_smooth_pencil(&f, 5, &mut rng).map_err(err)?;
        let mut pts = ProjectiveSpace::new(f, 5).filter_par(|x| pen.contains_point(x));
        pts.shuffle(&mut rng);
        let Some(dp) = pts.iter().find_map(|x| double_projection(&pen, x).ok()) else { continue };
        let cmp = compare_degeneracy(&pen, &dp).map_err(err)?;
        ensure(cmp.equal, || format!("{cmp:?}"))?;
        found.push(cmp.degeneracy_counts);
    }
    Ok(format!("(N1, N2) {found:?}"))
}

fn c8_parameter_counts(_: &mut Shared) -> Outcome {
    // Recount: entry spaces minus automorphisms (GL3, scaling, three (1,1)
    // shifts) minus the six of PGL2 × PGL2; generic quadric bundles are a
    // projective space of (deg + 1)(6 + 1) - 1 forms.
    let recount = |d: u64| {
        let entries = 6 * (2 * (d + 1)) + 3 * (3 * (d + 2)) + 4 * (d + 3);
        let family = entries - 9 - 1 - 3 * 4 - 6;
        let bideg = (3 * d + d + 2, 6);
        (family, (bideg.0 + 1) * 7 - 1 - 6, bideg)
    };
    for (d, want) in [(1, (39, 42, (6, 6))), (0, (14, 14, (2, 6)))] {
        let c = bundle_parameter_counts(d);
        let got = (c.family, c.generic, c.degeneracy_bidegree);
        ensure(got == want && got == recount(d), || format!("d = {d}: {got:?}"))?;
        ensure(h0(c.degeneracy_bidegree.0, c.degeneracy_bidegree.1) == (got.2 .0 + 1) * 7, || "h0".into())?;
    }
    Ok("(39, 42, (6,6)) and (14, 14, (2,6))".into())
}

fn c9_hpt(_: &mut Shared) -> Outcome {
    let q = Rationals;
    let vars = hpt_vars();
    // Tangent to all four fibres: each restriction is a perfect square.
    let tangent = parse_poly(&q, &vars, "y1^2*z1^2 + y2^2*z2^2 + 3*y1*y2*z1*z2").map_err(err)?;
    let r = hpt_check(&tangent).map_err(err)?;
    ensure(r.identity_holds && r.determinant_bidegree == (6, 6), || format!("{r:?}"))?;
    ensure(r.factor_exponents == [2, 2, 2, 2, 1], || format!("exponents {:?}", r.factor_exponents))?;
    ensure(r.all_tangent, || "tangency not verified".into())?;
    let generic = parse_poly(&q, &vars, "y1^2*z1^2 + y1*y2*z1*z2 + y2^2*z1^2 + y2^2*z2^2").map_err(err)?;
    let r = hpt_check(&generic).map_err(err)?;
    ensure(r.identity_holds && !r.all_tangent, || "non-tangent g accepted".into())?;
    Ok("det = y1²y2²z1²z2²·g, bidegree (6,6)".into())
}

fn c10_torus(_: &mut Shared) -> Outcome {
    let h = group_h();
    ensure(h.order() == 48, || format!("|H| = {}", h.order()))?;
    ensure(relation_audit(&generator_a(), &generator_b(), &generator_c()).passes(), || "relations".into())?;
    let amb = AmbientGroup::h();
    use TorusRationality::{Nonrational, Rational};
    let cases: [(&str, Vec<_>, TorusRationality); 5] = [
        ("H", vec![generator_a(), generator_b(), generator_c()], Nonrational),
        ("<a,b>", vec![generator_a(), generator_b()], Rational),
        ("U1", u1_generators(), Nonrational),
        ("<c>", vec![generator_c()], Rational),
        ("<a^2,bc>", dihedral_hull_generators(), Nonrational),
    ];
    for (name, gens, want) in cases {
        let v = torus_rationality(&amb, &gens).map_err(err)?;
        ensure(v.verdict == want, || format!("{name}: {:?}", v.verdict))?;
        ensure((want == Nonrational) == v.witness.is_some(), || format!("{name}: witness"))?;
    }
    Ok("|H| = 48, verdicts as expected".into())
}

fn c11_amer(_: &mut Shared) -> Outcome {
    let f = PrimeField::new(3).map_err(err)?;
    let mut rng = ChaCha8Rng::seed_from_u64(1100);
    let mut solvable = 0;
    for i in 0..200 {
        let n = rng.gen_range(2..=4);
        let d = rng.gen_range(1..=3);
        let a = random_symmetric(&f, n, &mut rng);
        let b = random_symmetric(&f, n, &mut rng);
        let r = amer_harness(&a, &b, d).map_err(err)?;
        ensure(!r.violation, || format!("pair {i}: {r:?}"))?;
        solvable += usize::from(r.polynomial_solution.is_some());
    }
    Ok(format!("0 violations, {solvable}/200 with a solution"))
}

fn int_sym(rng: &mut ChaCha8Rng, n: usize) -> SymMatrix<Rationals> {
    let mut rows = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i..n {
            rows[i][j] = rng.gen_range(-4..=4);
            rows[j][i] = rows[i][j];
        }
    }
    SymMatrix::from_i64(&Rationals, &rows).expect("symmetric")
}

fn odd_compositions(total: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if total == 0 {
        if prefix.len() % 2 == 1 {
            out.push(prefix.clone());
        }
        return;
    }
    for first in 1..=total {
        prefix.push(first);
        odd_compositions(total - first, prefix, out);
        prefix.pop();
    }
}

fn c12_properties(shared: &mut Shared) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1200);
    for trial in 0..100 {
        let n = rng.gen_range(2..=5);
        let a = int_sym(&mut rng, n);
        let p = loop {
            let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-3..=3)).collect()).collect();
            let m = Matrix::from_i64(&Rationals, &rows);
            if !Rationals.is_zero(&m.det()) {
                break m;
            }
        };
        ensure(a.signature() == a.congruence(&p).signature(), || format!("Sylvester trial {trial}"))?;
    }

    for &(q, order) in &shared.jacobians {
        let (lo, hi) = weil_interval(q);
        ensure((lo..=hi).contains(&(order as f64)), || format!("#J = {order} over F_{q}"))?;
    }

    let mut circles = 0;
    for n in 2..=5 {
        for _ in 0..10 {
            let pen: Pencil<Rationals> = random_rational_pencil(n, 3, &mut rng).map_err(err)?;
            let ic = index_circle(&pen).map_err(err)?;
            let pos = ic.positive_indices();
            let k = ic.k();
            let antipodal = if k == 0 {
                2 * pos[0] == n + 1
            } else {
                (0..2 * k).all(|i| {
                    pos[i] + pos[(i + k) % (2 * k)] == n + 1 && ic.jumps[i].sign == -ic.jumps[(i + k) % (2 * k)].sign
                })
            };
            ensure(antipodal, || format!("antipodal identity fails: {pos:?}"))?;
            circles += 1;
        }
    }

    let mut classes = 0;
    for total in 1..=6 {
        let mut all = Vec::new();
        odd_compositions(total, &mut Vec::new(), &mut all);
        for parts in all {
            let c = canonical_form(&parts);
            ensure(canonical_form(&c) == c, || format!("{parts:?} not idempotent"))?;
            let d = OddDecomposition::new(parts.clone()).map_err(err)?;
            ensure(d.parts() == &c[..], || format!("{parts:?}"))?;
            classes += 1;
        }
    }
    Ok(format!(
        "100 Sylvester trials, {} Jacobians, {circles} index circles, {classes} compositions",
        shared.jacobians.len()
    ))
}

type Criterion = (&'static str, u64, fn(&mut Shared) -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("isotopy class counts", 1, c1_class_counts),
        ("n = 5 verdict table", 1, c2_verdict_table),
        ("torsor identity", 480, c3_torsor),
        ("toric example", 60, c4_toric),
        ("projection round trip", 5, c5_projection),
        ("secant table", 1, c6_secants),
        ("double projection consistency", 30, c7_double_projection),
        ("bundle parameter counts", 1, c8_parameter_counts),
        ("HPT check", 5, c9_hpt),
        ("torus rationality", 5, c10_torus),
        ("Amer harness", 120, c11_amer),
        ("property suites", 120, c12_properties),
    ];
    let mut shared = Shared::default();
    let mut failed = 0;
    for (i, (name, bound, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run(&mut shared);
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > Duration::from_secs(*bound) => Err(format!("{detail}; exceeded {bound} s")),
            other => other,
        };
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} {:>2} {name} ({:.2} s, bound {bound} s): {detail}", i + 1, elapsed.as_secs_f64());
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
