use std::fmt;

use super::variety::VarietyPresentation;
use crate::error::{Error, Result};
use crate::poly::{parse_poly, same_ctx, Ctx, Polynomial};
use crate::rational::Rational;

/// A polynomial vector field `Σ coeffs[i] ∂/∂z_i` on an ambient space,
/// acting as a derivation of the polynomial ring.
#[derive(Clone, PartialEq, Eq)]
pub struct VectorField {
    ctx: Ctx,
    coeffs: Vec<Polynomial>,
}

impl VectorField {
    pub fn new(ctx: &Ctx, coeffs: Vec<Polynomial>) -> Result<Self> {
        if coeffs.len() != ctx.arity() {
            return Err(Error::ArityMismatch { expected: ctx.arity(), got: coeffs.len() });
        }
        if coeffs.iter().any(|c| !same_ctx(c.ctx(), ctx)) {
            return Err(Error::ContextMismatch);
        }
        Ok(VectorField { ctx: ctx.clone(), coeffs })
    }

    pub fn zero(ctx: &Ctx) -> Self {
        VectorField { ctx: ctx.clone(), coeffs: vec![Polynomial::zero(ctx); ctx.arity()] }
    }

    /// The coordinate field `∂/∂z_i`.
    pub fn coordinate(ctx: &Ctx, i: usize) -> Self {
        let mut f = Self::zero(ctx);
        f.coeffs[i] = Polynomial::one(ctx);
        f
    }

    /// Builds a field from `(coordinate name, expression)` pairs; missing
    /// coordinates get coefficient zero.
    pub fn from_named<S: AsRef<str>, T: AsRef<str>>(ctx: &Ctx, parts: &[(S, T)]) -> Result<Self> {
        let mut f = Self::zero(ctx);
        for (name, expr) in parts {
            let i = ctx.index_of(name.as_ref())?;
            let p = parse_poly(expr.as_ref(), ctx)?;
            f.coeffs[i] = &f.coeffs[i] + &p;
        }
        Ok(f)
    }

    /// Like [`VectorField::from_named`] with coefficients already built.
    pub fn from_polys<S: AsRef<str>>(ctx: &Ctx, parts: &[(S, Polynomial)]) -> Result<Self> {
        let mut f = Self::zero(ctx);
        for (name, p) in parts {
            let i = ctx.index_of(name.as_ref())?;
            f.coeffs[i] = &f.coeffs[i] + &p.embed_by_name(ctx)?;
        }
        Ok(f)
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Polynomial {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Polynomial::is_zero)
    }

    /// Coordinates with a nonzero coefficient.
    pub fn active(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&i| !self.coeffs[i].is_zero()).collect()
    }

    fn check(&self, p: &Polynomial) -> Result<()> {
        if same_ctx(p.ctx(), &self.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    /// `θ(f) = Σ coeffs[i] ∂f/∂z_i`, not reduced modulo any ideal.
    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        self.check(f)?;
        let mut acc = Polynomial::zero(&self.ctx);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() || !f.depends_on(i) {
                continue;
            }
            acc = &acc + &(c * &f.partial(i));
        }
        Ok(acc)
    }

    /// `θ^k(f)`.
    pub fn iterate(&self, f: &Polynomial, k: usize) -> Result<Polynomial> {
        let mut g = f.clone();
        for _ in 0..k {
            if g.is_zero() {
                break;
            }
            g = self.apply(&g)?;
        }
        Ok(g)
    }

    /// Lie bracket `[θ, φ]` with coefficients `θ(φ_i) − φ(θ_i)`.
    pub fn bracket(&self, other: &VectorField) -> Result<VectorField> {
        if !same_ctx(&self.ctx, &other.ctx) {
            return Err(Error::ContextMismatch);
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(t, p)| Ok(&self.apply(p)? - &other.apply(t)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(VectorField { ctx: self.ctx.clone(), coeffs })
    }

    /// The field `a·θ`.
    pub fn times(&self, a: &Polynomial) -> Result<VectorField> {
        self.check(a)?;
        Ok(self.map(|c| c * a))
    }

    pub fn scale(&self, c: &Rational) -> VectorField {
        self.map(|p| p.scale(c))
    }

    pub fn add(&self, other: &VectorField) -> Result<VectorField> {
        if !same_ctx(&self.ctx, &other.ctx) {
            return Err(Error::ContextMismatch);
        }
        Ok(VectorField {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &VectorField) -> Result<VectorField> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn neg(&self) -> VectorField {
        self.scale(&-Rational::one())
    }

    pub fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> VectorField {
        VectorField { ctx: self.ctx.clone(), coeffs: self.coeffs.iter().map(f).collect() }
    }

    /// Coefficients reduced to normal form modulo the variety's relations.
    pub fn reduce(&self, x: &VarietyPresentation) -> Result<VectorField> {
        let coeffs = self.coeffs.iter().map(|c| x.normal_form(c)).collect::<Result<Vec<_>>>()?;
        Ok(VectorField { ctx: self.ctx.clone(), coeffs })
    }

    /// Coefficientwise congruence modulo the variety's relations.
    pub fn congruent(&self, other: &VectorField, x: &VarietyPresentation) -> Result<bool> {
        for (a, b) in self.coeffs.iter().zip(&other.coeffs) {
            if !x.congruent(a, b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// If `other ≡ c·self` modulo the variety for a rational `c`, returns it.
    pub fn ratio_to(&self, other: &VectorField, x: &VarietyPresentation) -> Result<Option<Rational>> {
        let a = self.reduce(x)?;
        let b = other.reduce(x)?;
        let Some(k) = (0..a.coeffs.len()).find(|&i| !a.coeffs[i].is_zero()) else {
            return Ok(if b.is_zero() { Some(Rational::one()) } else { None });
        };
        let lead_a = a.coeffs[k].leading_term().unwrap();
        let Some(lead_b) = b.coeffs[k].leading_term() else {
            return Ok(if b.is_zero() { Some(Rational::zero()) } else { None });
        };
        if lead_a.mono != lead_b.mono {
            return Ok(None);
        }
        let c = &lead_b.coeff / &lead_a.coeff;
        Ok(if a.scale(&c) == b { Some(c) } else { None })
    }

    /// Coefficient vector at a point.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Vec<Rational>> {
        self.coeffs.iter().map(|c| c.evaluate(point)).collect()
    }

    pub fn evaluate_f64(&self, point: &[f64]) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.evaluate_f64(point)).collect()
    }

    /// Re-expresses the field in a larger context, matching names; new
    /// coordinates get coefficient zero.
    pub fn embed(&self, target: &Ctx) -> Result<VectorField> {
        let mut f = VectorField::zero(target);
        for (i, c) in self.coeffs.iter().enumerate() {
            let j = target.index_of(self.ctx.name(i))?;
            f.coeffs[j] = c.embed_by_name(target)?;
        }
        Ok(f)
    }

    /// Named nonzero coefficients in coordinate order.
    pub fn named_coeffs(&self) -> Vec<(String, String)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.ctx.name(i).to_string(), c.render()))
            .collect()
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = self.named_coeffs();
        if parts.is_empty() {
            return f.write_str("0");
        }
        let body: Vec<String> = parts.iter().map(|(n, c)| format!("({c})*d/d{n}")).collect();
        f.write_str(&body.join(" + "))
    }
}

impl fmt::Debug for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VectorField({self})")
    }
}
