use densikit::catalog::{danielewski_text, sl_bundle, sp_bundle, ExampleBundle};
use densikit::certificates::{span_at_point, span_everywhere, validate_tree, verify_tuple, Verdict};
use densikit::derivations::{is_tangent, sample_points, VarietyPresentation, VectorField};
use densikit::gv::{build_fibration, GroupKind};
use densikit::{parse_poly, Ctx, Polynomial, Rational, VarContext};
use proptest::prelude::*;

const VARS: [&str; 3] = ["x", "y", "z"];

fn ctx() -> Ctx {
    VarContext::of(&VARS)
}

type Terms = Vec<(i64, [u32; 3])>;

fn terms(max: usize) -> impl Strategy<Value = Terms> {
    prop::collection::vec((-6i64..=6, [0u32..=3, 0u32..=3, 0u32..=3]), 0..=max)
}

fn build(ctx: &Ctx, t: &Terms) -> Polynomial {
    let mut p = Polynomial::zero(ctx);
    for (c, e) in t {
        let mut m = Polynomial::constant(ctx, Rational::from_integer(*c));
        for (v, k) in VARS.iter().zip(e) {
            m = &m * &Polynomial::var_named(ctx, v).unwrap().pow(*k);
        }
        p = &p + &m;
    }
    p
}

fn field(ctx: &Ctx, t: &[Terms; 3]) -> VectorField {
    VectorField::new(ctx, t.iter().map(|c| build(ctx, c)).collect()).unwrap()
}

fn field_terms() -> impl Strategy<Value = [Terms; 3]> {
    [terms(3), terms(3), terms(3)]
}

fn danielewski() -> VarietyPresentation {
    danielewski_text("z^3 - z").unwrap().certificate.variety
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_arithmetic_is_exact(a in -50i64..50, b in 1i64..50, c in -50i64..50, d in 1i64..50) {
        let (p, q) = (Rational::new(a, b), Rational::new(c, d));
        prop_assert_eq!(&p + &q, Rational::new(a * d + c * b, b * d));
        prop_assert_eq!(&p * &q, Rational::new(a * c, b * d));
        prop_assert!(p.denom() > &0.into());
        let s = p.to_ratio_string();
        prop_assert_eq!(s.parse::<Rational>().unwrap(), p);
    }

    #[test]
    fn ring_axioms(a in terms(5), b in terms(5), c in terms(5)) {
        let ctx = ctx();
        let (p, q, r) = (build(&ctx, &a), build(&ctx, &b), build(&ctx, &c));
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&(&p + &q) * &r, &(&p * &r) + &(&q * &r));
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(&p * &Polynomial::one(&ctx), p.clone());
    }

    #[test]
    fn parse_inverts_render(a in terms(6)) {
        let ctx = ctx();
        let p = build(&ctx, &a);
        prop_assert_eq!(parse_poly(&p.render(), &ctx).unwrap(), p);
    }

    #[test]
    fn partial_derivative_leibniz(a in terms(4), b in terms(4), v in 0usize..3) {
        let ctx = ctx();
        let (p, q) = (build(&ctx, &a), build(&ctx, &b));
        prop_assert_eq!((&p * &q).partial(v), &(&p * &q.partial(v)) + &(&q * &p.partial(v)));
    }

    #[test]
    fn derivation_leibniz(t in field_terms(), a in terms(4), b in terms(4)) {
        let ctx = ctx();
        let theta = field(&ctx, &t);
        let (f, g) = (build(&ctx, &a), build(&ctx, &b));
        let lhs = theta.apply(&(&f * &g)).unwrap();
        let rhs = &(&f * &theta.apply(&g).unwrap()) + &(&g * &theta.apply(&f).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn jacobi_identity(a in field_terms(), b in field_terms(), c in field_terms()) {
        let ctx = ctx();
        let (t, p, s) = (field(&ctx, &a), field(&ctx, &b), field(&ctx, &c));
        let j1 = t.bracket(&p).unwrap().bracket(&s).unwrap();
        let j2 = p.bracket(&s).unwrap().bracket(&t).unwrap();
        let j3 = s.bracket(&t).unwrap().bracket(&p).unwrap();
        prop_assert!(j1.add(&j2).unwrap().add(&j3).unwrap().is_zero());
    }

    #[test]
    fn normal_form_is_idempotent_and_division_recombines(a in terms(6)) {
        let x = danielewski();
        let p = build(x.ambient(), &a);
        let ideal = x.relations();
        let nf = ideal.normal_form(&p).unwrap();
        prop_assert_eq!(ideal.normal_form(&nf).unwrap(), nf.clone());
        let div = ideal.divide(&p).unwrap();
        prop_assert_eq!(&div.remainder, &nf);
        let gb = ideal.groebner_basis().unwrap();
        let mut sum = div.remainder.clone();
        for (q, g) in div.quotients.iter().zip(gb) {
            sum = &sum + &(q * g);
        }
        prop_assert_eq!(sum, p.clone());
        // multiples of the relations reduce to zero
        let m = &p * &x.generators()[0];
        prop_assert!(ideal.normal_form(&m).unwrap().is_zero());
    }
}

fn catalog() -> Vec<ExampleBundle> {
    let r = Rational::from_integer;
    vec![
        danielewski_text("z^2 - 1").unwrap(),
        danielewski_text("z^4 - 5*z^2 + 4").unwrap(),
        sp_bundle(2, 2, &[r(1), r(0)]).unwrap(),
        sp_bundle(3, 2, &[r(1), r(0), r(0)]).unwrap(),
        sl_bundle(3, 3, 2, r(1)).unwrap(),
    ]
}

#[test]
fn generators_reduce_to_zero() {
    for b in catalog() {
        let x = b.variety();
        for g in x.generators() {
            assert!(x.relations().normal_form(g).unwrap().is_zero());
        }
    }
}

#[test]
fn removing_an_edge_breaks_the_tree() {
    for b in catalog() {
        let cert = &b.certificate;
        assert_eq!(verify_tuple(cert).verdict, Verdict::Verified, "{}", cert.name);
        assert!(validate_tree(&cert.tree, cert).unwrap().passed());
        for k in 0..cert.tree.edges.len() {
            let forest = cert.tree.without_edge(k);
            assert!(forest.shape_error(&cert.field_names).is_some(), "{} edge {k}", cert.name);
            assert!(!validate_tree(&forest, cert).unwrap().passed());
        }
    }
}

#[test]
fn verification_is_deterministic() {
    for b in catalog() {
        let a = verify_tuple(&b.certificate);
        assert_eq!(a, verify_tuple(&b.certificate));
    }
}

#[test]
fn brackets_of_tangent_fields_are_tangent() {
    for b in catalog() {
        let x = b.variety();
        let fields = &b.certificate.fields;
        for (i, f) in fields.iter().enumerate() {
            for g in &fields[i + 1..] {
                assert!(is_tangent(&f.bracket(g).unwrap(), x).unwrap(), "{}", b.certificate.name);
            }
        }
    }
}

#[test]
fn span_everywhere_implies_span_at_points() {
    for b in catalog() {
        let x = b.variety();
        let fields = &b.certificate.fields;
        if span_everywhere(fields, x).unwrap() {
            for pt in sample_points(x, 3, 10).unwrap() {
                assert!(span_at_point(fields, x, &pt).unwrap(), "{} {pt:?}", b.certificate.name);
            }
        }
    }
}

#[test]
fn fibrations_are_recursive() {
    for kind in [GroupKind::Sl, GroupKind::Sp] {
        for n in 2..=3 {
            for k in 2..=4 {
                let big = build_fibration(kind, n, k).unwrap();
                let small = build_fibration(kind, n, k - 1).unwrap();
                let ctx = big.ctx();
                let last = big.step_product(k, k).unwrap();
                let size = last.rows();
                for i in 0..size {
                    let mut want = Polynomial::zero(ctx);
                    for j in 0..size {
                        let p = small.component(j + 1).embed_by_name(ctx).unwrap();
                        want = &want + &(&p * last.get(j, i));
                    }
                    assert_eq!(big.component(i + 1), &want, "{} n={n} K={k} i={i}", kind.name());
                }
            }
        }
    }
}
