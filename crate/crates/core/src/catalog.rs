//! Ready-made certificate bundles for the Danielewski surfaces, the
//! special linear and symplectic Gromov–Vaserstein varieties, and products
//! with a line.

use crate::certificates::{AdmissibleTree, ConditionOneEvidence, SufficiencyInstance, TupleCertificate, Verdict};
use crate::derivations::{completeness_certificate, is_tangent, VarietyPresentation, VectorField};
use crate::error::{invalid, precondition, Result};
use crate::gv::{
    build_fibration, classify, det_vector_field, gv_variety_sl, gv_variety_sp, sp4_presentation, var_name,
    ClassifierVerdict, GroupKind,
};
use crate::poly::{is_squarefree, same_ctx, MonomialOrder, Polynomial, VarContext};
use crate::rational::Rational;

/// A spanning claim about a set of fields of the bundle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanClaim {
    pub fields: Vec<String>,
    /// Expected result of the everywhere-spanning check.
    pub everywhere: bool,
}

/// A certificate together with the claims that accompany it.
#[derive(Clone, Debug)]
pub struct ExampleBundle {
    pub name: String,
    pub certificate: TupleCertificate,
    pub span_claims: Vec<SpanClaim>,
}

impl ExampleBundle {
    pub fn variety(&self) -> &VarietyPresentation {
        &self.certificate.variety
    }

    pub fn field(&self, name: &str) -> &VectorField {
        self.certificate.field(name).expect("bundle field")
    }
}

fn coverage(pairs: impl IntoIterator<Item = (String, String)>) -> Option<ConditionOneEvidence> {
    Some(ConditionOneEvidence::Coverage(pairs.into_iter().collect()))
}

/// `D_p = {xy = p(z)}` with the fields
/// `θ1 = x∂x − y∂y`, `θ2 = p'(z)∂x + y∂z`, `θ3 = p'(z)∂y + x∂z`.
///
/// `p` may live in any context; it must depend on `z` only, be nonconstant
/// and have simple zeros.
pub fn danielewski(p: &Polynomial) -> Result<ExampleBundle> {
    let ctx = VarContext::new(&["x", "y", "z"], MonomialOrder::Degrevlex)?;
    let p = p.embed_by_name(&ctx)?;
    let (x, y, z) = (0, 1, 2);
    if p.depends_on(x) || p.depends_on(y) {
        return Err(invalid("p must be a polynomial in z alone"));
    }
    if p.is_constant() {
        return Err(precondition("p must be nonconstant"));
    }
    if !is_squarefree(&p, z)? {
        return Err(precondition("p must have simple zeros"));
    }
    let rel = &(&Polynomial::var(&ctx, x) * &Polynomial::var(&ctx, y)) - &p;
    let variety = VarietyPresentation::new(&ctx, vec![rel], 2)?;
    let dp = p.partial(z);
    let xv = Polynomial::var(&ctx, x);
    let yv = Polynomial::var(&ctx, y);
    let zero = Polynomial::zero(&ctx);
    let theta1 = VectorField::new(&ctx, vec![xv.clone(), -&yv, zero.clone()])?;
    let theta2 = VectorField::new(&ctx, vec![dp.clone(), zero.clone(), yv.clone()])?;
    let theta3 = VectorField::new(&ctx, vec![zero, dp.clone(), xv.clone()])?;
    let zl = Polynomial::var(&ctx, z);
    let tree = AdmissibleTree::new(
        "theta1",
        vec![AdmissibleTree::edge("theta2", "theta1", zl.clone()), AdmissibleTree::edge("theta3", "theta1", zl)],
    );

    // a point with p(z0) ≠ 0 and p'(z0) ≠ 0, x0 = 1, y0 = p(z0)
    let z0 = (2..)
        .flat_map(|k: i64| [k, -k])
        .map(Rational::from_integer)
        .find(|c| {
            let pt = [Rational::zero(), Rational::zero(), c.clone()];
            !p.evaluate(&pt).unwrap().is_zero() && !dp.evaluate(&pt).unwrap().is_zero()
        })
        .unwrap();
    let y0 = p.evaluate(&[Rational::zero(), Rational::zero(), z0.clone()])?;
    let point = vec![Rational::one(), y0.clone(), z0];
    let sufficiency = SufficiencyInstance {
        fields: vec!["theta2".into(), "theta3".into()],
        functions: vec![&yv - &Polynomial::constant(&ctx, y0), &xv - &Polynomial::one(&ctx)],
        point,
    };
    let certificate = TupleCertificate {
        name: format!("danielewski p={}", p.render()),
        variety,
        field_names: vec!["theta1".into(), "theta2".into(), "theta3".into()],
        fields: vec![theta1, theta2, theta3],
        tree,
        cond1: coverage([("x".into(), "theta3".into()), ("y".into(), "theta2".into()), ("z".into(), "theta1".into())]),
        expect: Some(Verdict::Verified),
        sufficiency: Some(sufficiency),
    };
    Ok(ExampleBundle {
        name: "danielewski".into(),
        certificate,
        span_claims: vec![
            SpanClaim { fields: vec!["theta1".into(), "theta2".into(), "theta3".into()], everywhere: true },
            SpanClaim { fields: vec!["theta2".into(), "theta3".into()], everywhere: false },
        ],
    })
}

/// Parses `p` as a polynomial in `z` and builds [`danielewski`].
pub fn danielewski_text(p: &str) -> Result<ExampleBundle> {
    let ctx = VarContext::of(&["z"]);
    danielewski(&crate::poly::parse_poly(p, &ctx)?)
}

/// The pair `(V2, V1)` of shear fields on `G_{K,i,a}` for the special
/// linear fibration, `n ≥ 3`:
/// `V1 = ∂P/∂z_{1,n2}·∂_{z_{1,n1}} − ∂P/∂z_{1,n1}·∂_{z_{1,n2}}`,
/// `V2 = ∂P/∂z_{2,2n}·∂_{z_{2,1n}} − ∂P/∂z_{2,1n}·∂_{z_{2,2n}}` with `P = P_i^K`.
pub fn sl_bundle(n: usize, k: usize, i: usize, a: Rational) -> Result<ExampleBundle> {
    if n < 3 {
        return Err(precondition(format!("the special linear pair needs n >= 3, got n = {n}")));
    }
    if k < 2 {
        return Err(precondition(format!("the special linear pair needs K >= 2, got K = {k}")));
    }
    let g = gv_variety_sl(n, k, i, a)?;
    if classify(&g) != ClassifierVerdict::Smooth {
        return Err(precondition(format!("{} is singular", g.describe())));
    }
    let fib = &g.fibration;
    let ctx = fib.ctx();
    let p = fib.component(i);
    let idx = |f, kk, l| fib.var_index(f, kk, l);
    let (n1, n2) = (idx(1, n, 1)?, idx(1, n, 2)?);
    let (m1, m2) = (idx(2, 1, n)?, idx(2, 2, n)?);
    let mut c1 = vec![Polynomial::zero(ctx); ctx.arity()];
    c1[n1] = p.partial(n2);
    c1[n2] = -&p.partial(n1);
    let v1 = VectorField::new(ctx, c1)?;
    let mut c2 = vec![Polynomial::zero(ctx); ctx.arity()];
    c2[m1] = p.partial(m2);
    c2[m2] = -&p.partial(m1);
    let v2 = VectorField::new(ctx, c2)?;
    if v1.is_zero() || v2.is_zero() {
        return Err(precondition(format!(
            "P_{i} does not depend on the shear coordinates for n = {n}, K = {k}; the pair degenerates"
        )));
    }
    let label = Polynomial::var(ctx, n2);
    let moved = [ctx.name(n1).to_string(), ctx.name(n2).to_string()];
    let cov = ctx.names().iter().map(|c| {
        let f = if moved.contains(c) { "V2" } else { "V1" };
        (c.clone(), f.to_string())
    });
    let certificate = TupleCertificate {
        name: format!("sl n={n} K={k} i={i} a={}", g.target[0].to_ratio_string()),
        variety: g.presentation.clone(),
        field_names: vec!["V2".into(), "V1".into()],
        fields: vec![v2, v1],
        tree: AdmissibleTree::new("V2", vec![AdmissibleTree::edge("V1", "V2", label)]),
        cond1: coverage(cov.collect::<Vec<_>>()),
        expect: Some(Verdict::Verified),
        sufficiency: None,
    };
    Ok(ExampleBundle { name: "sl".into(), certificate, span_claims: Vec::new() })
}

/// Compatible tuples on the symplectic varieties `G_{K,a}`:
/// `n ≥ 3` gives `(V, γ)`, `n = 2, K ≥ 3` gives `(V, γ̃)`, and
/// `n = 2, K = 2` gives the triple `(V1, V2, V3)` on the 5-variable
/// presentation.
pub fn sp_bundle(n: usize, k: usize, a: &[Rational]) -> Result<ExampleBundle> {
    if n < 2 || k < 2 {
        return Err(precondition(format!("symplectic tuples need n >= 2 and K >= 2, got n = {n}, K = {k}")));
    }
    let g = gv_variety_sp(n, k, a)?;
    if classify(&g) != ClassifierVerdict::Smooth {
        return Err(precondition(format!("{} is singular", g.describe())));
    }
    if n == 2 && k == 2 {
        return sp4_bundle(a);
    }
    let fib = &g.fibration;
    let ctx = fib.ctx().clone();
    let x = &g.presentation;
    let mut xs: Vec<usize> = (1..=n).map(|l| fib.var_index(1, l, n)).collect::<Result<_>>()?;
    xs.push(fib.var_index(2, 1, 1)?);
    let v = det_vector_field(x.generators(), &xs)?;
    let v_name = |f: usize, kk: usize, l: usize| var_name(f, kk.min(l), kk.max(l), n);
    let (gamma, label, name) = if n >= 3 {
        let r2 = Polynomial::var_named(&ctx, &v_name(1, 2, n))?;
        let r3 = Polynomial::var_named(&ctx, &v_name(1, 3, n))?;
        let gamma = VectorField::from_polys(
            &ctx,
            &[(v_name(2, 2, 2), r3.pow(2)), (v_name(2, 2, 3), -&(&r2 * &r3)), (v_name(2, 3, 3), r2.pow(2))],
        )?;
        (gamma, Polynomial::var_named(&ctx, &v_name(2, 2, 2))?, "gamma")
    } else {
        let p2 = build_fibration(GroupKind::Sp, 2, 2)?;
        let q3 = p2.component(3).embed_by_name(&ctx)?;
        let q4 = p2.component(4).embed_by_name(&ctx)?;
        let gamma = VectorField::from_polys(
            &ctx,
            &[(v_name(3, 1, 1), q4.pow(2)), (v_name(3, 1, 2), -&(&q3 * &q4)), (v_name(3, 2, 2), q3.pow(2))],
        )?;
        (gamma, Polynomial::var_named(&ctx, &v_name(3, 1, 1))?, "gamma_tilde")
    };
    let moved: Vec<&str> = xs.iter().map(|&i| ctx.name(i)).collect();
    let cov: Vec<(String, String)> = ctx
        .names()
        .iter()
        .map(|c| {
            let f = if moved.contains(&c.as_str()) { name } else { "V" };
            (c.clone(), f.to_string())
        })
        .collect();
    let a_text: Vec<String> = a.iter().map(Rational::to_ratio_string).collect();
    let certificate = TupleCertificate {
        name: format!("sp n={n} K={k} a={}", a_text.join(",")),
        variety: x.clone(),
        field_names: vec!["V".into(), name.into()],
        fields: vec![v, gamma],
        tree: AdmissibleTree::new("V", vec![AdmissibleTree::edge(name, "V", label)]),
        cond1: coverage(cov),
        expect: Some(Verdict::Verified),
        sufficiency: None,
    };
    Ok(ExampleBundle { name: "sp".into(), certificate, span_claims: Vec::new() })
}

fn sp4_bundle(a: &[Rational]) -> Result<ExampleBundle> {
    let (x, _b) = sp4_presentation(a)?;
    let ctx = x.ambient().clone();
    let v1 = VectorField::from_named(&ctx, &[("z2", "-z2*w3"), ("z3", "z2*w2"), ("w1", "w1*w3 - w2^2")])?;
    let v2 = VectorField::from_named(&ctx, &[("w1", "z3^2"), ("w2", "-z2*z3"), ("w3", "z2^2")])?;
    let v3 = VectorField::from_named(&ctx, &[("z2", "z3^2"), ("w2", "-w1*z3"), ("w3", "w1*z2 - w2*z3")])?;
    let w2 = x.var("w2")?;
    let a_text: Vec<String> = a.iter().map(Rational::to_ratio_string).collect();
    let cov = [("z2", "V2"), ("z3", "V2"), ("w1", "V3"), ("w2", "V1"), ("w3", "V1")]
        .into_iter()
        .map(|(c, f)| (c.to_string(), f.to_string()));
    let certificate = TupleCertificate {
        name: format!("sp n=2 K=2 a={}", a_text.join(",")),
        variety: x,
        field_names: vec!["V1".into(), "V2".into(), "V3".into()],
        fields: vec![v1, v2, v3],
        tree: AdmissibleTree::new(
            "V1",
            vec![AdmissibleTree::edge("V2", "V1", w2.clone()), AdmissibleTree::edge("V3", "V1", w2)],
        ),
        cond1: coverage(cov.collect::<Vec<_>>()),
        expect: Some(Verdict::Verified),
        sufficiency: None,
    };
    Ok(ExampleBundle {
        name: "sp".into(),
        certificate,
        span_claims: vec![SpanClaim { fields: vec!["V1".into(), "V2".into(), "V3".into()], everywhere: false }],
    })
}

/// The pair `(V, ∂/∂t)` on `X × ℂ` with edge label `t`.
///
/// `v` must live on the coordinates of `x`, so its coefficients cannot
/// depend on the new coordinate, be tangent and carry a non-Unknown
/// completeness certificate.
pub fn product_with_line(x: &VarietyPresentation, v: &VectorField, v_name: &str) -> Result<ExampleBundle> {
    if !same_ctx(v.ctx(), x.ambient()) {
        return Err(invalid("the field must be written in the variety's coordinates"));
    }
    if !is_tangent(v, x)? {
        return Err(precondition("the field is not tangent to the variety"));
    }
    if !completeness_certificate(v, x)?.is_known() {
        return Err(precondition("the field has no completeness certificate"));
    }
    let (ext, t) = x.times_line(&["t", "s", "u"])?;
    let ctx = ext.ambient().clone();
    let ve = v.embed(&ctx)?;
    let dt = VectorField::coordinate(&ctx, t);
    let t_name = ctx.name(t).to_string();
    let dt_name = format!("d{t_name}");
    let cov: Vec<(String, String)> = ctx
        .names()
        .iter()
        .map(|c| {
            let f = if *c == t_name { v_name.to_string() } else { dt_name.clone() };
            (c.clone(), f)
        })
        .collect();
    let certificate = TupleCertificate {
        name: format!("product-line {v_name}"),
        variety: ext,
        field_names: vec![v_name.to_string(), dt_name.clone()],
        fields: vec![ve, dt],
        tree: AdmissibleTree::new(v_name, vec![AdmissibleTree::edge(&dt_name, v_name, Polynomial::var(&ctx, t))]),
        cond1: coverage(cov),
        expect: Some(Verdict::Verified),
        sufficiency: None,
    };
    Ok(ExampleBundle { name: "product-line".into(), certificate, span_claims: Vec::new() })
}
