//! Exact polynomial flows of locally nilpotent fields and their shears,
//! with a fourth-order Runge–Kutta oracle.

use super::completeness::{kernel_multiple_certificate, CompletenessCertificate};
use super::field::VectorField;
use super::variety::VarietyPresentation;
use super::{is_tangent, lnd_search, LndOutcome, DEFAULT_LND_BOUND};
use crate::error::{precondition, Result};
use crate::groebner::IdealPresentation;
use crate::poly::{Ctx, Polynomial};
use crate::rational::Rational;

/// Integrator step of the numeric oracle.
pub const RK4_STEP: f64 = 1e-3;
/// Agreement required between exact flow and integrator over `t ∈ [0, 1]`.
pub const RK4_TOLERANCE: f64 = 1e-8;

/// Images of the coordinates under the time-`t` flow of a field, as
/// polynomials in the ambient coordinates and a fresh time variable.
#[derive(Clone, Debug)]
pub struct FlowMap {
    field: VectorField,
    base: Ctx,
    ctx: Ctx,
    time: usize,
    images: Vec<Polynomial>,
}

fn factorial(k: usize) -> Rational {
    (1..=k as i64).fold(Rational::one(), |acc, v| &acc * &Rational::from(v))
}

/// Identity embedding of the ambient coordinates into `ctx`.
fn base_map(base: &Ctx) -> Vec<usize> {
    (0..base.arity()).collect()
}

/// `Σ_{k < d_i} t^k θ^k(z_i) / k!` for every coordinate.
pub fn lnd_flow(theta: &VectorField, depths: &[usize], x: &VarietyPresentation) -> Result<FlowMap> {
    let base = x.ambient().clone();
    let tname = base.fresh_name(&["t", "s"]);
    let ctx = base.extended(&[tname.as_str()])?;
    let time = base.arity();
    let map = base_map(&base);
    let t = Polynomial::var(&ctx, time);
    let mut images = Vec::with_capacity(base.arity());
    for (i, &d) in depths.iter().enumerate() {
        let mut term = Polynomial::var(&base, i);
        let mut acc = Polynomial::zero(&ctx);
        let mut tk = Polynomial::one(&ctx);
        for k in 0..d {
            let lifted = term.embed(&ctx, &map);
            acc = &acc + &(&lifted * &tk).scale(&factorial(k).inv().unwrap());
            term = theta.apply(&term)?;
            tk = &tk * &t;
        }
        images.push(acc);
    }
    Ok(FlowMap { field: theta.clone(), base, ctx, time, images })
}

/// Exact flow for LND and kernel-multiple certificates. For `f·V` the flow
/// of `V` is reparametrized by `t ↦ f·t`.
pub fn algebraic_flow(theta: &VectorField, x: &VarietyPresentation, cert: &CompletenessCertificate) -> Result<FlowMap> {
    match cert {
        CompletenessCertificate::Lnd { depths } => lnd_flow(theta, depths, x),
        CompletenessCertificate::KernelMultipleOfLnd { factor, inner, inner_depths } => {
            let mut flow = lnd_flow(inner, inner_depths, x)?;
            let map = base_map(&flow.base);
            let f = factor.embed(&flow.ctx, &map);
            let subst: Vec<Polynomial> =
                (0..flow.ctx.arity())
                    .map(|i| {
                        if i == flow.time {
                            &f * &Polynomial::var(&flow.ctx, i)
                        } else {
                            Polynomial::var(&flow.ctx, i)
                        }
                    })
                    .collect();
            flow.images = flow.images.iter().map(|p| p.compose(&subst, &flow.ctx)).collect();
            flow.field = inner.times(factor)?;
            Ok(flow)
        }
        other => Err(precondition(format!("no algebraic flow for a {} certificate", other.name()))),
    }
}

impl FlowMap {
    pub fn field(&self) -> &VectorField {
        &self.field
    }

    /// Ambient coordinates followed by the time variable.
    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn time_index(&self) -> usize {
        self.time
    }

    pub fn time_name(&self) -> &str {
        self.ctx.name(self.time)
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    /// Lines `name -> image` in coordinate order.
    pub fn render(&self) -> Vec<String> {
        self.images.iter().enumerate().map(|(i, p)| format!("{} -> {}", self.base.name(i), p)).collect()
    }

    fn ideal(&self, x: &VarietyPresentation, ctx: &Ctx) -> Result<IdealPresentation> {
        x.relations().embed(ctx)
    }

    pub fn evaluate(&self, point: &[Rational], t: &Rational) -> Result<Vec<Rational>> {
        let mut full = point.to_vec();
        full.push(t.clone());
        self.images.iter().map(|p| p.evaluate(&full)).collect()
    }

    pub fn evaluate_f64(&self, point: &[f64], t: f64) -> Vec<f64> {
        let mut full = point.to_vec();
        full.push(t);
        self.images.iter().map(|p| p.evaluate_f64(&full)).collect()
    }

    /// At `t = 0` every image reduces to its coordinate.
    pub fn check_identity_at_zero(&self, x: &VarietyPresentation) -> Result<bool> {
        let ideal = self.ideal(x, &self.ctx)?;
        let zero = Polynomial::zero(&self.ctx);
        for (i, p) in self.images.iter().enumerate() {
            let at0 = p.substitute(self.time, &zero);
            if !ideal.congruent(&at0, &Polynomial::var(&self.ctx, i))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `∂images/∂t` at `t = 0` equals the field's coefficients.
    pub fn check_initial_velocity(&self, x: &VarietyPresentation) -> Result<bool> {
        let ideal = self.ideal(x, &self.ctx)?;
        let zero = Polynomial::zero(&self.ctx);
        let map = base_map(&self.base);
        for (i, p) in self.images.iter().enumerate() {
            let v0 = p.partial(self.time).substitute(self.time, &zero);
            if !ideal.congruent(&v0, &self.field.coeff(i).embed(&self.ctx, &map))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Every relation composed with the flow stays in the relation ideal.
    pub fn check_preserves_variety(&self, x: &VarietyPresentation) -> Result<bool> {
        let ideal = self.ideal(x, &self.ctx)?;
        for g in x.generators() {
            if !ideal.contains(&g.compose(&self.images, &self.ctx))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `∂images/∂t ≡ θ(images)` as polynomial identities in `t`.
    pub fn check_field_consistency(&self, x: &VarietyPresentation) -> Result<bool> {
        let ideal = self.ideal(x, &self.ctx)?;
        for (i, p) in self.images.iter().enumerate() {
            let lhs = p.partial(self.time);
            let rhs = self.field.coeff(i).compose(&self.images, &self.ctx);
            if !ideal.congruent(&lhs, &rhs)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `φ_t ∘ φ_s ≡ φ_{t+s}` in a context with two time variables.
    pub fn check_group_law(&self, x: &VarietyPresentation) -> Result<bool> {
        let n = self.base.arity();
        let sname = self.ctx.fresh_name(&["s", "u"]);
        let ctx2 = self.ctx.extended(&[sname.as_str()])?;
        let t = Polynomial::var(&ctx2, self.time);
        let s = Polynomial::var(&ctx2, n + 1);
        let ideal = self.ideal(x, &ctx2)?;

        let with_time = |tau: &Polynomial| -> Vec<Polynomial> {
            (0..=n).map(|i| if i == self.time { tau.clone() } else { Polynomial::var(&ctx2, i) }).collect()
        };
        let phi_s: Vec<Polynomial> = self.images.iter().map(|p| p.compose(&with_time(&s), &ctx2)).collect();
        let mut outer = phi_s.clone();
        outer.push(t.clone());
        let sum = &t + &s;
        for p in &self.images {
            let composed = p.compose(&outer, &ctx2);
            let direct = p.compose(&with_time(&sum), &ctx2);
            if !ideal.congruent(&composed, &direct)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Numeric integration of `θ` from `x0` over `[0, t_end]` with fixed step,
/// recording the state every `record_every` steps (plus the initial state).
pub fn rk4_flow(field: &VectorField, x0: &[f64], t_end: f64, step: f64, record_every: usize) -> Vec<(f64, Vec<f64>)> {
    let n_steps = (t_end / step).round() as usize;
    let mut state = x0.to_vec();
    let mut out = vec![(0.0, state.clone())];
    let add = |a: &[f64], b: &[f64], h: f64| -> Vec<f64> { a.iter().zip(b).map(|(x, y)| x + h * y).collect() };
    for k in 1..=n_steps {
        let k1 = field.evaluate_f64(&state);
        let k2 = field.evaluate_f64(&add(&state, &k1, step / 2.0));
        let k3 = field.evaluate_f64(&add(&state, &k2, step / 2.0));
        let k4 = field.evaluate_f64(&add(&state, &k3, step));
        for i in 0..state.len() {
            state[i] += step / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        if k % record_every == 0 || k == n_steps {
            out.push((k as f64 * step, state.clone()));
        }
    }
    out
}

/// Comparison of an exact flow against the integrator.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericCheck {
    /// Largest `|exact − numeric| / (1 + |exact|)` over recorded times.
    pub max_error: f64,
    pub passed: bool,
}

/// Integrates the flow's field from `point` over `t ∈ [0, 1]` with step
/// [`RK4_STEP`] and compares at every hundredth step.
pub fn numeric_flow_check(flow: &FlowMap, point: &[Rational]) -> NumericCheck {
    let x0: Vec<f64> = point.iter().map(Rational::to_f64).collect();
    let mut max_error: f64 = 0.0;
    for (t, state) in rk4_flow(&flow.field, &x0, 1.0, RK4_STEP, 100) {
        let exact = flow.evaluate_f64(&x0, t);
        for (e, s) in exact.iter().zip(&state) {
            max_error = max_error.max((e - s).abs() / (1.0 + e.abs()));
        }
    }
    NumericCheck { max_error, passed: max_error.is_finite() && max_error <= RK4_TOLERANCE }
}

/// Checks that the differential at `x` of the flow of `f·V` sends `w` to
/// `w + t·d_xf(w)·V_x`, exactly as polynomials in `t`.
pub fn flow_differential_check(
    v: &VectorField,
    f: &Polynomial,
    x: &VarietyPresentation,
    point: &[Rational],
    w: &[Rational],
) -> Result<bool> {
    x.require_point(point)?;
    if !f.evaluate(point)?.is_zero() {
        return Err(precondition("f does not vanish at the point"));
    }
    if !is_tangent(v, x)? {
        return Err(precondition("vector field is not tangent to the variety"));
    }
    if !x.is_tangent_vector(point, w)? {
        return Err(precondition("vector is not tangent to the variety at the point"));
    }
    if !matches!(lnd_search(v, x, DEFAULT_LND_BOUND)?, LndOutcome::Lnd { .. }) {
        return Err(precondition("vector field is not locally nilpotent"));
    }
    let Some(cert) = kernel_multiple_certificate(f, v, x)? else {
        return Err(precondition("f is not in the kernel of the vector field"));
    };
    let flow = algebraic_flow(&v.times(f)?, x, &cert)?;
    let ctx = flow.ctx();
    let n = x.arity();

    // evaluate at the point, keeping t symbolic
    let at_point: Vec<Polynomial> = (0..ctx.arity())
        .map(|i| if i == flow.time { Polynomial::var(ctx, i) } else { Polynomial::constant(ctx, point[i].clone()) })
        .collect();
    let t = Polynomial::var(ctx, flow.time);
    let mut dfw = Rational::zero();
    for (j, wj) in w.iter().enumerate() {
        dfw += &(&f.partial(j).evaluate(point)? * wj);
    }
    let vx = v.evaluate(point)?;
    for i in 0..n {
        let mut lhs = Polynomial::zero(ctx);
        for (j, wj) in w.iter().enumerate() {
            if wj.is_zero() {
                continue;
            }
            let d = flow.images[i].partial(j).compose(&at_point, ctx);
            lhs = &lhs + &d.scale(wj);
        }
        let rhs = &Polynomial::constant(ctx, w[i].clone()) + &t.scale(&(&dfw * &vx[i]));
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}
