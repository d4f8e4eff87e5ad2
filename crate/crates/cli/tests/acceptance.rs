//! Acceptance gate: runs every criterion and prints one PASS/FAIL line each.
//! Library results are compared with oracles computed here: a hand-written
//! derivation and bracket, numeric matrix inverses, a separate integrator
//! and closed forms written out by hand.

use std::collections::BTreeMap;
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use densikit::catalog::{danielewski_text, sp_bundle, ExampleBundle};
use densikit::certfile::{certificate_from_json, parse_certificate, render_certificate};
use densikit::certificates::{
    lemma1_check, span_at_point, span_everywhere, sufficiency_from_instance, verify_tuple, wk_recursion, CheckStatus,
    TupleCertificate, Verdict, VerificationReport,
};
use densikit::derivations::{
    algebraic_flow, completeness_certificate, flow_differential_check, kernel_degree, numeric_flow_check, sample_point,
    solve_with_assignment, KernelDegree, VarietyPresentation, VectorField,
};
use densikit::gv::{
    all_partial_checks, build_factor, build_fibration, classify, det_vector_field_named, factor_pairs, fiber_reduce,
    gv_variety_sl, gv_variety_sp, is_symplectic, smoothness_check, var_name, ClassifierVerdict, GroupKind,
};
use densikit::poly::RatMatrix;
use densikit::{PolyMatrix, Polynomial, Rational, VarContext};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

const DANIELEWSKI: [(&str, &str); 3] =
    [("z^2 - 1", "2*z"), ("z^3 - z", "3*z^2 - 1"), ("z^4 - 5*z^2 + 4", "4*z^3 - 10*z")];

fn r(n: i64) -> Rational {
    Rational::from_integer(n)
}

fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.gen_range(-9..=9), rng.gen_range(1..=5))
}

// ---- independent derivation calculus ----

fn apply(a: &VectorField, f: &Polynomial) -> Polynomial {
    let mut out = Polynomial::zero(f.ctx());
    for (j, c) in a.coeffs().iter().enumerate() {
        out = &out + &(c * &f.partial(j));
    }
    out
}

fn bracket(a: &VectorField, b: &VectorField) -> VectorField {
    let coeffs = (0..a.coeffs().len()).map(|i| &apply(a, b.coeff(i)) - &apply(b, a.coeff(i))).collect();
    VectorField::new(a.ctx(), coeffs).unwrap()
}

fn times(a: &VectorField, f: &Polynomial) -> VectorField {
    VectorField::new(a.ctx(), a.coeffs().iter().map(|c| c * f).collect()).unwrap()
}

fn minus(a: &VectorField, b: &VectorField) -> VectorField {
    let coeffs = a.coeffs().iter().zip(b.coeffs()).map(|(p, q)| p - q).collect();
    VectorField::new(a.ctx(), coeffs).unwrap()
}

fn congruent_up_to_sign(a: &VectorField, b: &VectorField, x: &VarietyPresentation) -> bool {
    a.congruent(b, x).unwrap() || a.congruent(&b.neg(), x).unwrap()
}

/// Least `d` with `θ^d(f) ≡ 0`, by repeated application modulo the ideal.
fn degree(f: &Polynomial, theta: &VectorField, x: &VarietyPresentation, cap: usize) -> Option<usize> {
    let mut g = f.clone();
    for d in 0..=cap {
        if x.is_zero(&g).unwrap() {
            return Some(d);
        }
        g = x.normal_form(&apply(theta, &g)).unwrap();
    }
    None
}

fn field(x: &VarietyPresentation, parts: &[(&str, &str)]) -> VectorField {
    VectorField::from_named(x.ambient(), parts).unwrap()
}

// ---- independent rational linear algebra ----

type Mat = Vec<Vec<Rational>>;

fn eval_matrix(m: &PolyMatrix, point: &[Rational]) -> Mat {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j).evaluate(point).unwrap()).collect()).collect()
}

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let (n, k, m) = (a.len(), b.len(), b[0].len());
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut s = Rational::zero();
                    for t in 0..k {
                        s += &(&a[i][t] * &b[t][j]);
                    }
                    s
                })
                .collect()
        })
        .collect()
}

fn transpose(a: &Mat) -> Mat {
    (0..a[0].len()).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

fn identity(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| r((i == j) as i64)).collect()).collect()
}

/// Inverse by solving for each column.
fn inverse(a: &Mat) -> Mat {
    let n = a.len();
    let m = RatMatrix::from_rows(a.clone());
    let cols: Vec<Vec<Rational>> = (0..n).map(|j| m.solve(&identity(n)[j]).expect("invertible")).collect();
    transpose(&cols)
}

fn omega(n: usize) -> Mat {
    let mut m = vec![vec![r(0); 2 * n]; 2 * n];
    for i in 0..n {
        m[i][n + i] = r(1);
        m[n + i][i] = r(-1);
    }
    m
}

// ---- CLI helpers ----

fn densikit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_densikit")).args(args).output().unwrap()
}

fn crate_file(rel: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join(rel).to_str().unwrap().to_string()
}

// ---- criteria ----

fn danielewski_suite() {
    for (p, _) in DANIELEWSKI {
        let start = Instant::now();
        let b = danielewski_text(p).unwrap();
        let rep = verify_tuple(&b.certificate);
        assert!(start.elapsed() < Duration::from_secs(10), "{p} took {:?}", start.elapsed());
        assert_eq!(rep.verdict, Verdict::Verified, "{}", rep.render());
        for c in &rep.checks {
            assert_eq!(c.status, CheckStatus::Pass, "{p}: {}", c.anchor);
        }
        for group in ["tangency", "completeness", "condition (2)(iii)", "condition (1) coverage"] {
            assert!(rep.checks.iter().any(|c| c.anchor.starts_with(group)), "{p}: no {group} check");
        }
        // both edges labelled f_z = z, which has degree 2 for the child and lies in ker θ1
        let x = b.variety();
        let z = x.var("z").unwrap();
        for child in ["theta2", "theta3"] {
            let e = b.certificate.tree.edges.iter().find(|e| e.child == child).unwrap();
            assert_eq!(e.parent, "theta1");
            assert_eq!(e.label, z);
            assert_eq!(degree(&z, b.field(child), x, 4), Some(2));
        }
        assert_eq!(degree(&z, b.field("theta1"), x, 4), Some(1));
    }
}

fn sp4_reference_fields(b: &ExampleBundle) -> [VectorField; 3] {
    let x = b.variety();
    [
        field(x, &[("z2", "-z2*w3"), ("z3", "z2*w2"), ("w1", "w1*w3 - w2^2")]),
        field(x, &[("w1", "z3^2"), ("w2", "-z2*z3"), ("w3", "z2^2")]),
        field(x, &[("z2", "z3^2"), ("w2", "-w1*z3"), ("w3", "w1*z2 - w2*z3")]),
    ]
}

fn determinant_fields() {
    for (p, dp) in DANIELEWSKI {
        let b = danielewski_text(p).unwrap();
        let x = b.variety();
        let rel = x.generators();
        let t1 = field(x, &[("x", "x"), ("y", "-y")]);
        let t2 = field(x, &[("x", dp), ("z", "y")]);
        let t3 = field(x, &[("y", dp), ("z", "x")]);
        assert_eq!(det_vector_field_named(rel, &["x", "y"]).unwrap(), t1, "{p}");
        assert_eq!(det_vector_field_named(rel, &["x", "z"]).unwrap(), t2.neg(), "{p}");
        assert_eq!(det_vector_field_named(rel, &["y", "z"]).unwrap(), t3.neg(), "{p}");
        assert_eq!(b.field("theta1"), &t1);
        assert_eq!(b.field("theta2"), &t2);
        assert_eq!(b.field("theta3"), &t3);
    }
    let b = sp_bundle(2, 2, &[r(1), r(0)]).unwrap();
    let [v1, v2, v3] = sp4_reference_fields(&b);
    assert_eq!(det_vector_field_named(b.variety().generators(), &["w1", "w2", "w3"]).unwrap(), v2);
    assert_eq!(b.field("V1"), &v1);
    assert_eq!(b.field("V2"), &v2);
    assert_eq!(b.field("V3"), &v3);
}

fn random_poly(rng: &mut ChaCha8Rng, ctx: &densikit::Ctx, vars: &[&str], terms: usize, max_deg: u32) -> Polynomial {
    let mut p = Polynomial::zero(ctx);
    for _ in 0..terms {
        let mut t = Polynomial::constant(ctx, r(rng.gen_range(-4..=4)));
        for v in vars {
            t = &t * &Polynomial::var_named(ctx, v).unwrap().pow(rng.gen_range(0..=max_deg));
        }
        p = &p + &t;
    }
    p
}

fn bracket_identity() {
    let names = ["x", "y", "z", "w"];
    let ctx = VarContext::of(&names);
    let x = VarietyPresentation::affine_space(&ctx);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for case in 0..100 {
        // θ leaves the first `fixed` variables alone, so a polynomial in them is in ker θ
        let fixed = rng.gen_range(1..=2);
        let parts: Vec<(&str, Polynomial)> =
            names[fixed..].iter().map(|v| (*v, random_poly(&mut rng, &ctx, &names, 2, 2))).collect();
        let theta = VectorField::from_polys(&ctx, &parts).unwrap();
        let phi_parts: Vec<(&str, Polynomial)> =
            names.iter().map(|v| (*v, random_poly(&mut rng, &ctx, &names, 2, 2))).collect();
        let phi = VectorField::from_polys(&ctx, &phi_parts).unwrap();
        let a = random_poly(&mut rng, &ctx, &names[..fixed], 3, 3);
        assert!(apply(&theta, &a).is_zero());
        let lhs = minus(&bracket(&times(&theta, &a), &phi), &bracket(&theta, &times(&phi, &a)));
        let rhs = times(&theta, &apply(&phi, &a)).neg();
        assert_eq!(lhs, rhs, "case {case}");
        assert!(lemma1_check(&theta, &phi, &a, &x).unwrap(), "case {case}");
    }
    let b = danielewski_text("z^2 - 1").unwrap();
    let x = b.variety();
    let (t1, t2) = (b.field("theta1"), b.field("theta2"));
    let z = x.var("z").unwrap();
    let lhs = minus(&bracket(&times(t1, &z), t2), &bracket(t1, &times(t2, &z)));
    assert!(lhs.congruent(&times(t1, &x.var("y").unwrap()).neg(), x).unwrap());
    assert!(lemma1_check(t1, t2, &z, x).unwrap());
}

/// Bracket recursion and closed form for a depth-one tree, computed here.
fn depth_one_recursion(cert: &TupleCertificate, choices: &BTreeMap<String, Polynomial>) -> (VectorField, VectorField) {
    let x = &cert.variety;
    let one = Polynomial::one(x.ambient());
    let f = |name: &str| choices.get(name).cloned().unwrap_or_else(|| one.clone());
    let root = &cert.tree.root;
    let mut w = times(cert.field(root).unwrap(), &f(root));
    let mut closed = w.clone();
    for e in &cert.tree.edges {
        assert_eq!(&e.parent, root);
        let psi = times(cert.field(&e.child).unwrap(), &f(&e.child));
        w = minus(&bracket(&times(&psi, &e.label), &w), &bracket(&psi, &times(&w, &e.label)));
        closed = times(&closed, &apply(&psi, &e.label));
    }
    (w, closed)
}

fn kernel_choice(rng: &mut ChaCha8Rng, x: &VarietyPresentation, gens: &[&str]) -> Polynomial {
    let mut p = Polynomial::constant(x.ambient(), r(rng.gen_range(1..=3)));
    for g in gens {
        p = &p * &x.parse(g).unwrap().pow(rng.gen_range(0..=2));
    }
    &p + &Polynomial::constant(x.ambient(), r(rng.gen_range(0..=2)))
}

fn wk_recursion_criterion() {
    let b = danielewski_text("z^2 - 1").unwrap();
    let x = b.variety();
    let mut choices = BTreeMap::new();
    choices.insert("theta1".to_string(), x.var("z").unwrap());
    let w = wk_recursion(&b.certificate, &choices).unwrap();
    let xyz_theta1 = times(b.field("theta1"), &x.parse("x*y*z").unwrap());
    assert!(w.closed_form.congruent(&xyz_theta1, x).unwrap());
    assert!(congruent_up_to_sign(&w.recursion, &xyz_theta1, x));

    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for seed in 0..20 {
        let mut choices = BTreeMap::new();
        choices.insert("theta1".to_string(), kernel_choice(&mut rng, x, &["z", "x*y"]));
        choices.insert("theta2".to_string(), kernel_choice(&mut rng, x, &["y"]));
        choices.insert("theta3".to_string(), kernel_choice(&mut rng, x, &["x"]));
        let w = wk_recursion(&b.certificate, &choices).unwrap();
        let (mine, closed) = depth_one_recursion(&b.certificate, &choices);
        assert!(congruent_up_to_sign(&mine, &closed, x), "danielewski seed {seed}");
        assert!(w.closed_form.congruent(&closed, x).unwrap(), "danielewski seed {seed}");
        assert!(w.agrees_up_to_sign(), "danielewski seed {seed}");
        assert!(congruent_up_to_sign(&w.recursion, &closed, x));
    }

    let b = sp_bundle(2, 2, &[r(1), r(0)]).unwrap();
    let x = b.variety();
    for seed in 0..20 {
        let mut choices = BTreeMap::new();
        choices.insert("V1".to_string(), kernel_choice(&mut rng, x, &["w2", "w3"]));
        choices.insert("V2".to_string(), kernel_choice(&mut rng, x, &["z2", "z3"]));
        choices.insert("V3".to_string(), kernel_choice(&mut rng, x, &["z3", "w1"]));
        let w = wk_recursion(&b.certificate, &choices).unwrap();
        let (mine, closed) = depth_one_recursion(&b.certificate, &choices);
        assert!(congruent_up_to_sign(&mine, &closed, x), "sp4 seed {seed}");
        assert!(w.closed_form.congruent(&closed, x).unwrap(), "sp4 seed {seed}");
        assert!(w.agrees_up_to_sign(), "sp4 seed {seed}");
        assert!(w.replacement_admissible, "sp4 seed {seed}");
    }
}

fn sl_partial_derivatives() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in 2..=3 {
        for kk in 2..=3 {
            let fib = build_fibration(GroupKind::Sl, n, kk).unwrap();
            let checks = all_partial_checks(&fib, 3).unwrap();
            assert_eq!(checks.len(), kk * n * (n - 1) / 2 * n, "n={n} K={kk}");
            let points: Vec<Vec<Rational>> =
                (0..3).map(|_| (0..fib.ctx().arity()).map(|_| small_rational(&mut rng)).collect()).collect();
            // numeric M_j at each point, inverted here
            let inverses: Vec<Vec<Mat>> = points
                .iter()
                .map(|pt| fib.factors().iter().map(|f| inverse(&eval_matrix(&f.matrix, pt))).collect())
                .collect();
            for c in &checks {
                assert!(c.identity, "n={n} K={kk} {c:?}");
                let v = fib.var_index(c.factor, c.k, c.l).unwrap();
                for (pt, inv) in points.iter().zip(&inverses) {
                    // P^L = e_nᵀ M_1⁻¹ ⋯ M_L⁻¹
                    let mut row: Mat = vec![identity(n)[n - 1].clone()];
                    for m in &inv[..c.factor] {
                        row = mat_mul(&row, m);
                    }
                    let mut tail = identity(n);
                    for m in &inv[c.factor - 1..] {
                        tail = mat_mul(&tail, m);
                    }
                    let rhs = -&(&row[0][c.k - 1] * &tail[c.l - 1][c.i - 1]);
                    // components are affine in each variable
                    let p = fib.component(c.i);
                    let (mut at1, mut at0) = (pt.clone(), pt.clone());
                    at1[v] = r(1);
                    at0[v] = r(0);
                    let lhs = &p.evaluate(&at1).unwrap() - &p.evaluate(&at0).unwrap();
                    assert_eq!(lhs, rhs, "n={n} K={kk} {c:?}");
                }
                if c.factor == kk {
                    let vc = c.vanishing.as_ref().expect("pattern checked for L = K");
                    let expected = (kk % 2 == 1 && c.l >= c.i) || (kk % 2 == 0 && c.l <= c.i);
                    assert_eq!(vc.expected_nonzero, expected);
                    let lhs = fib.component(c.i).partial(v);
                    if expected {
                        assert!(!lhs.is_zero());
                        assert_eq!((vc.nonzero_samples, vc.samples), (5, 5), "{c:?}");
                    } else {
                        assert!(lhs.is_zero(), "{c:?}");
                    }
                } else {
                    assert!(c.vanishing.is_none());
                }
                assert!(c.passed());
            }
        }
    }
}

fn symplectic_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for n in 2..=3 {
        for f in 1..=4 {
            let m = build_factor(GroupKind::Sp, f, n).unwrap();
            assert!(is_symplectic(&m.matrix).unwrap(), "n={n} factor {f}");
        }
        let fib = build_fibration(GroupKind::Sp, n, 4).unwrap();
        for (from, to) in [(1, 3), (2, 4)] {
            let prod = fib.step_product(from, to).unwrap();
            assert!(is_symplectic(&prod).unwrap(), "n={n} product {from}..{to}");
            for _ in 0..3 {
                let pt: Vec<Rational> = (0..fib.ctx().arity()).map(|_| small_rational(&mut rng)).collect();
                let mut m = identity(2 * n);
                for fm in &fib.factors()[from - 1..to] {
                    m = mat_mul(&m, &eval_matrix(&fm.matrix, &pt));
                }
                assert_eq!(eval_matrix(&prod, &pt), m);
                assert_eq!(mat_mul(&mat_mul(&transpose(&m), &omega(n)), &m), omega(n));
            }
        }
        let doubled = PolyMatrix::identity(fib.ctx(), 2 * n).map(|p| p.scale(&r(2)));
        assert!(!is_symplectic(&doubled).unwrap());
    }
}

fn sp4_tuple() {
    let b = sp_bundle(2, 2, &[r(1), r(0)]).unwrap();
    let rep = verify_tuple(&b.certificate);
    assert_eq!(rep.verdict, Verdict::Verified, "{}", rep.render());
    let x = b.variety();
    let w2 = x.var("w2").unwrap();
    for (name, d) in [("V2", 2), ("V3", 2), ("V1", 1)] {
        assert_eq!(kernel_degree(&w2, b.field(name), x, 8).unwrap(), KernelDegree::Finite(d), "{name}");
        assert_eq!(degree(&w2, b.field(name), x, 8), Some(d), "{name}");
    }
    assert_eq!(b.certificate.tree.root, "V1");
    for e in &b.certificate.tree.edges {
        assert_eq!(e.label, w2);
    }
}

fn smoothness_agreement() {
    let smooth_sl = [(2, 2, 1, 1), (3, 2, 1, 1), (3, 2, 2, 1), (3, 2, 1, 2)];
    let mut count = 0;
    for (n, k, i, a) in smooth_sl {
        let g = gv_variety_sl(n, k, i, r(a)).unwrap();
        assert!(i < n);
        assert_eq!(classify(&g), ClassifierVerdict::Smooth, "{}", g.describe());
        let v = smoothness_check(&g).unwrap();
        assert_eq!(v.agree, Some(true), "{} {v:?}", g.describe());
        count += 1;
    }
    let singular_sp = gv_variety_sp(2, 2, &[r(0), r(1)]).unwrap();
    assert_eq!(classify(&singular_sp), ClassifierVerdict::Singular);
    let others = [
        singular_sp,
        gv_variety_sl(2, 2, 2, r(1)).unwrap(),
        gv_variety_sl(2, 2, 2, r(2)).unwrap(),
        gv_variety_sp(2, 2, &[r(1), r(0)]).unwrap(),
        gv_variety_sp(2, 3, &[r(1), r(0)]).unwrap(),
    ];
    for g in &others {
        let v = smoothness_check(g).unwrap();
        assert_eq!(v.agree, Some(true), "{} {v:?}", g.describe());
        count += 1;
    }
    assert!(count >= 6);
}

/// Hand-written RK4 for θ2 = 2z∂x + y∂z.
fn rk4_theta2(p: [f64; 3], t_end: f64, steps: usize) -> [f64; 3] {
    let f = |s: [f64; 3]| [2.0 * s[2], 0.0, s[1]];
    let h = t_end / steps as f64;
    let mut s = p;
    for _ in 0..steps {
        let k1 = f(s);
        let k2 = f([s[0] + h / 2.0 * k1[0], s[1] + h / 2.0 * k1[1], s[2] + h / 2.0 * k1[2]]);
        let k3 = f([s[0] + h / 2.0 * k2[0], s[1] + h / 2.0 * k2[1], s[2] + h / 2.0 * k2[2]]);
        let k4 = f([s[0] + h * k3[0], s[1] + h * k3[1], s[2] + h * k3[2]]);
        for i in 0..3 {
            s[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }
    s
}

fn flows() {
    let b = danielewski_text("z^2 - 1").unwrap();
    let x = b.variety();
    let t2 = b.field("theta2");
    let cc = completeness_certificate(t2, x).unwrap();
    let flow = algebraic_flow(t2, x, &cc).unwrap();
    let fctx = flow.ctx();
    let expected: Vec<Polynomial> =
        ["x + 2*z*t + y*t^2", "y", "z + t*y"].iter().map(|s| densikit::parse_poly(s, fctx).unwrap()).collect();
    assert_eq!(flow.time_name(), "t");
    assert_eq!(flow.images(), &expected[..]);
    assert!(flow.check_identity_at_zero(x).unwrap());
    assert!(flow.check_initial_velocity(x).unwrap());
    assert!(flow.check_preserves_variety(x).unwrap());
    assert!(flow.check_field_consistency(x).unwrap());
    assert!(flow.check_group_law(x).unwrap());

    for seed in 0..5 {
        let pt = sample_point(x, seed).unwrap();
        let check = numeric_flow_check(&flow, &pt);
        assert!(check.passed && check.max_error <= 1e-8, "{check:?}");
        let p: Vec<f64> = pt.iter().map(Rational::to_f64).collect();
        for k in 0..=4 {
            let t = k as f64 / 4.0;
            let exact = [p[0] + 2.0 * p[2] * t + p[1] * t * t, p[1], p[2] + t * p[1]];
            let num = rk4_theta2([p[0], p[1], p[2]], t, 1000);
            for i in 0..3 {
                assert!((exact[i] - num[i]).abs() / (1.0 + exact[i].abs()) <= 1e-8);
            }
            let tr = Rational::new(k, 4);
            let ev = flow.evaluate(&pt, &tr).unwrap();
            assert!((ev[0].to_f64() - exact[0]).abs() < 1e-9);
        }
    }

    // shears f·V with f ∈ ker V vanishing at the point
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let fields = [b.field("theta1"), b.field("theta2"), b.field("theta3")];
    for s in 0..10u64 {
        let pt = sample_point(x, 100 + s).unwrap();
        let (v, var, idx) = if s % 2 == 0 { (fields[1], "y", 1) } else { (fields[2], "x", 0) };
        let c = r(rng.gen_range(1..=5));
        let base = &x.var(var).unwrap() - &Polynomial::constant(x.ambient(), pt[idx].clone());
        let f = &base * &(&x.var(var).unwrap() + &Polynomial::constant(x.ambient(), c));
        let coeffs: Vec<Rational> = (0..3).map(|_| r(rng.gen_range(-3..=3))).collect();
        let mut w = vec![r(0); 3];
        for (th, cj) in fields.iter().zip(&coeffs) {
            for (wi, ti) in w.iter_mut().zip(th.evaluate(&pt).unwrap()) {
                *wi += &(&ti * cj);
            }
        }
        assert!(x.is_tangent_vector(&pt, &w).unwrap());
        assert!(flow_differential_check(v, &f, x, &pt, &w).unwrap(), "instance {s}");

        // the same differential from the flow of f·V found by the general search
        let fv = times(v, &f);
        let cert = completeness_certificate(&fv, x).unwrap();
        let fl = algebraic_flow(&fv, x, &cert).unwrap();
        let mut dfw = Rational::zero();
        for j in 0..3 {
            dfw += &(&f.partial(j).evaluate(&pt).unwrap() * &w[j]);
        }
        let vx = v.evaluate(&pt).unwrap();
        for tk in 1..=3 {
            let tv = r(tk);
            let mut at = vec![r(0); fl.ctx().arity()];
            at[..3].clone_from_slice(&pt);
            at[fl.time_index()] = tv.clone();
            for i in 0..3 {
                let mut got = Rational::zero();
                for j in 0..3 {
                    got += &(&fl.images()[i].partial(j).evaluate(&at).unwrap() * &w[j]);
                }
                assert_eq!(got, &w[i] + &(&(&tv * &dfw) * &vx[i]), "instance {s}");
            }
        }
    }
}

fn spanning() {
    let b = danielewski_text("z^2 - 1").unwrap();
    let x = b.variety();
    let all = &b.certificate.fields;
    let two = &all[1..];
    assert!(span_everywhere(all, x).unwrap());
    assert!(!span_everywhere(two, x).unwrap());
    let zi = x.ambient().index_of("z").unwrap();
    let xi = x.ambient().index_of("x").unwrap();
    for t in 0..20i64 {
        // half the points on z = 0, where p'(z) vanishes and θ2, θ3 are parallel
        let zval = if t % 2 == 0 { r(0) } else { Rational::new(t + 1, 2) };
        let pt = solve_with_assignment(x, &[(zi, zval.clone()), (xi, Rational::new(t + 1, 3))]).unwrap();
        assert!(span_at_point(all, x, &pt).unwrap());
        // θ2 = (p', 0, y), θ3 = (0, p', x): rank 2 iff p'(z) = 2z ≠ 0
        let expected = !zval.is_zero();
        assert_eq!(span_at_point(two, x, &pt).unwrap(), expected, "{pt:?}");
    }
}

fn sufficiency() {
    let b = danielewski_text("z^2 - 1").unwrap();
    let x = b.variety();
    let inst = b.certificate.sufficiency.clone().unwrap();
    assert_eq!(inst.point, vec![r(1), r(3), r(2)]);
    assert_eq!(inst.fields, vec!["theta2".to_string(), "theta3".to_string()]);
    assert_eq!(inst.functions, vec![x.parse("y - 3").unwrap(), x.parse("x - 1").unwrap()]);
    let rep = sufficiency_from_instance(&b.certificate, &inst, true).unwrap();
    assert!(rep.passed(), "{}", rep.render());

    let mut neg = inst.clone();
    neg.fields.push("theta1".into());
    neg.functions.push(x.parse("z - 2").unwrap());
    let rep = sufficiency_from_instance(&b.certificate, &neg, false).unwrap();
    assert_eq!(rep.failures(), vec!["pairing[2]".to_string()]);
    // d_x f(θ1) computed here: θ1 = x∂x − y∂y at (1, 3, 2)
    let t1 = b.field("theta1");
    for (pair, f) in rep.pairs.iter().zip(&neg.functions) {
        let want = apply(t1, f).evaluate(&neg.point).unwrap();
        assert_eq!(pair.pairing.parse::<Rational>().unwrap(), want);
        assert_eq!(pair.pairing_nonzero, !want.is_zero());
    }
}

fn fiber_reduction() {
    for a in [[1, 1, 1], [2, -1, 3]] {
        let target: Vec<Rational> = a.iter().map(|&v| r(v)).collect();
        let red = fiber_reduce(GroupKind::Sl, 3, 3, &target).unwrap();
        let ctx = red.full.ctx();
        let p = |i: usize| red.reduced.component(i).embed_by_name(ctx).unwrap();
        let c = |v: i64| Polynomial::constant(ctx, r(v));
        let inv_a3 = Rational::new(1, a[2]);
        let z321 = Polynomial::var_named(ctx, "z3_21").unwrap();
        let want_32 = (&p(2) - &c(a[1])).scale(&inv_a3);
        let want_31 = (&(&p(1) - &c(a[0])) - &z321.scale(&r(a[1]))).scale(&inv_a3);
        let val = |name: &str| red.substitutions.iter().find(|(n, _)| n == name).unwrap().1.clone();
        assert_eq!(red.substitutions.len(), 2);
        assert_eq!(val("z3_32"), want_32, "a={a:?}");
        assert_eq!(val("z3_31"), want_31, "a={a:?}");
        assert_eq!(red.free, vec!["z3_21".to_string()]);
        assert!(red.round_trip().unwrap());
        // at sampled points of the residual, with z3_21 free, the substituted
        // coordinates land in the fiber
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let rctx = red.residual.ambient();
        for seed in 0..5 {
            let rp = sample_point(&red.residual, seed).unwrap();
            let mut pt = vec![r(0); ctx.arity()];
            for (j, name) in ctx.names().iter().enumerate() {
                if let Ok(k) = rctx.index_of(name) {
                    pt[j] = rp[k].clone();
                } else if name == "z3_21" {
                    pt[j] = small_rational(&mut rng);
                }
            }
            for (name, v) in &red.substitutions {
                let value = v.evaluate(&pt).unwrap();
                pt[ctx.index_of(name).unwrap()] = value;
            }
            for i in 1..=3 {
                assert_eq!(red.full.component(i).evaluate(&pt).unwrap(), r(a[i - 1]), "component {i} a={a:?}");
            }
        }
    }
    for n in 2..=3 {
        let mut y = vec![r(0); 2 * n];
        y[0] = r(1);
        y[2 * n - 1] = r(2);
        let red = fiber_reduce(GroupKind::Sp, n, 3, &y).unwrap();
        assert!(red.round_trip().unwrap());
        for (k, l) in factor_pairs(GroupKind::Sp, 1, n).into_iter().filter(|&(k, l)| k <= l && l < n) {
            let name = var_name(1, k, l, n);
            assert!(red.free.contains(&name), "n={n} {name}");
            assert!(red.substitutions.iter().all(|(m, _)| m != &name));
        }
    }
}

fn cli_contract() {
    let dir = crate_file("golden/certificates");
    let mut files: Vec<String> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path().to_str().unwrap().to_string())
        .filter(|p| p.ends_with(".cert"))
        .collect();
    files.sort();
    assert!(!files.is_empty());
    for f in &files {
        assert_eq!(densikit(&["verify", f]).status.code(), Some(0), "{f}");
    }
    let mutated = crate_file("tests/data/mutated_label.cert");
    let malformed = crate_file("tests/data/malformed.cert");
    assert_eq!(densikit(&["verify", &mutated]).status.code(), Some(1));
    assert_eq!(densikit(&["verify", &malformed]).status.code(), Some(3));

    let mut args = vec!["verify", "--json", mutated.as_str()];
    args.extend(files.iter().map(String::as_str));
    let out = densikit(&args);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), files.len() + 1);
    for line in text.lines() {
        let v: Value = serde_json::from_str(line).unwrap();
        let rep: VerificationReport = serde_json::from_value(v["report"].clone()).unwrap();
        assert_eq!(serde_json::to_value(&rep).unwrap(), v["report"]);
    }
    for f in &files {
        let json = String::from_utf8(densikit(&["convert", f, "--to", "json"]).stdout).unwrap();
        let original = std::fs::read_to_string(f).unwrap();
        let cert = certificate_from_json(&json).unwrap();
        assert_eq!(render_certificate(&cert), original, "{f}");
        assert_eq!(render_certificate(&parse_certificate(&original).unwrap()), original, "{f}");
    }
}

const CRITERIA: [(&str, fn()); 13] = [
    ("Danielewski suite verifies", danielewski_suite),
    ("determinant fields match the hand-written fields", determinant_fields),
    ("bracket identity on 100 random instances and the Danielewski instance", bracket_identity),
    ("bracket recursion equals the closed form up to sign", wk_recursion_criterion),
    ("SL partial-derivative identity and vanishing pattern", sl_partial_derivatives),
    ("symplectic invariant for factors and 3-fold products", symplectic_invariant),
    ("Sp4 tuple verifies with the stated kernel degrees", sp4_tuple),
    ("smoothness classifier agrees with the Jacobian criterion", smoothness_agreement),
    ("flows: closed form, group law, numeric oracle, differential identity", flows),
    ("spanning case split", spanning),
    ("sufficiency checker positive and designed negative", sufficiency),
    ("fiber reduction substitutions and free variables", fiber_reduction),
    ("CLI contract", cli_contract),
];

fn panic_message(p: &(dyn std::any::Any + Send)) -> String {
    p.downcast_ref::<String>()
        .cloned()
        .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
        .unwrap_or_else(|| "panic".into())
        .lines()
        .next()
        .unwrap_or("")
        .to_string()
}

#[test]
fn acceptance() {
    // written to the process stderr so the lines show up even when output is captured
    let mut err = std::io::stderr();
    let mut failed = Vec::new();
    for (i, (name, check)) in CRITERIA.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check));
        let secs = start.elapsed().as_secs_f64();
        let line = match outcome {
            Ok(()) => format!("PASS criterion {}: {name} ({secs:.1} s)", i + 1),
            Err(p) => {
                failed.push(i + 1);
                format!("FAIL criterion {}: {name}: {}", i + 1, panic_message(p.as_ref()))
            }
        };
        writeln!(err, "{line}").unwrap();
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
