//! Sufficient syntactic certificates of completeness.

use std::fmt;

use super::field::VectorField;
use super::variety::VarietyPresentation;
use super::{is_tangent, lnd_search, LndOutcome, DEFAULT_LND_BOUND};
use crate::error::{precondition, Result};
use crate::poly::{Monomial, Polynomial};
use crate::rational::Rational;

/// Evidence that a vector field is complete. `Unknown` never asserts
/// incompleteness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CompletenessCertificate {
    /// Locally nilpotent: `NF(θ^{d_i}(z_i)) = 0` for every coordinate.
    Lnd {
        depths: Vec<usize>,
    },
    /// `θ = f·V` with `V` locally nilpotent and `V(f) ≡ 0`.
    KernelMultipleOfLnd {
        factor: Polynomial,
        inner: VectorField,
        inner_depths: Vec<usize>,
    },
    /// Every image `θ(z_i)` is affine in the active coordinates, with
    /// coefficients in the coordinates the field does not move.
    LinearCoefficients,
    /// Along the ordering each image is `α·z + β` with `α, β` in strictly
    /// earlier coordinates, modulo the relations.
    TriangularLinear {
        ordering: Vec<usize>,
    },
    Unknown,
}

impl CompletenessCertificate {
    pub fn name(&self) -> &'static str {
        match self {
            CompletenessCertificate::Lnd { .. } => "LND",
            CompletenessCertificate::KernelMultipleOfLnd { .. } => "KernelMultipleOfLND",
            CompletenessCertificate::LinearCoefficients => "LinearCoefficients",
            CompletenessCertificate::TriangularLinear { .. } => "TriangularLinear",
            CompletenessCertificate::Unknown => "Unknown",
        }
    }

    pub fn is_known(&self) -> bool {
        !matches!(self, CompletenessCertificate::Unknown)
    }

    /// The flow is polynomial in time and computable exactly.
    pub fn has_algebraic_flow(&self) -> bool {
        matches!(self, CompletenessCertificate::Lnd { .. } | CompletenessCertificate::KernelMultipleOfLnd { .. })
    }

    /// Short human-readable evidence, using coordinate names from the field.
    pub fn describe(&self, theta: &VectorField) -> String {
        let ctx = theta.ctx();
        match self {
            CompletenessCertificate::Lnd { depths } => {
                let parts: Vec<String> =
                    depths.iter().enumerate().map(|(i, d)| format!("{}:{d}", ctx.name(i))).collect();
                format!("LND depths ({})", parts.join(", "))
            }
            CompletenessCertificate::KernelMultipleOfLnd { factor, .. } => {
                format!("KernelMultipleOfLND factor {factor}")
            }
            CompletenessCertificate::LinearCoefficients => "LinearCoefficients".into(),
            CompletenessCertificate::TriangularLinear { ordering } => {
                let names: Vec<&str> = ordering.iter().map(|&i| ctx.name(i)).collect();
                format!("TriangularLinear ordering ({})", names.join(", "))
            }
            CompletenessCertificate::Unknown => "Unknown".into(),
        }
    }
}

impl fmt::Display for CompletenessCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Every image is affine in the active coordinates.
pub fn linear_coefficients(theta: &VectorField) -> bool {
    let active = theta.active();
    !active.is_empty() && theta.coeffs().iter().all(|c| c.degree_in_set(&active) <= 1)
}

/// Splits `p` as `α·z_v + β` when `p` has degree ≤ 1 in `z_v`, returning
/// `(α, β)`.
fn affine_split(p: &Polynomial, v: usize) -> Option<(Polynomial, Polynomial)> {
    let mut cs = p.coefficients_in(v);
    match cs.len() {
        1 => Some((Polynomial::zero(p.ctx()), cs.pop().unwrap())),
        2 => {
            let a = cs.pop().unwrap();
            let b = cs.pop().unwrap();
            Some((a, b))
        }
        _ => None,
    }
}

fn placeable(theta: &VectorField, x: &VarietyPresentation, v: usize, placed: &[bool]) -> Result<bool> {
    let raw = theta.coeff(v).clone();
    let reduced = x.normal_form(&raw)?;
    for cand in [raw, reduced] {
        if let Some((a, b)) = affine_split(&cand, v) {
            let ok = a.support().iter().chain(b.support().iter()).all(|&u| placed[u]);
            if ok {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Checks a supplied coordinate ordering for the triangular-affine shape.
pub fn check_triangular_ordering(theta: &VectorField, x: &VarietyPresentation, ordering: &[usize]) -> Result<bool> {
    let n = theta.ctx().arity();
    let mut seen = vec![false; n];
    for &v in ordering {
        if v >= n || seen[v] {
            return Ok(false);
        }
        seen[v] = true;
    }
    if seen.iter().any(|s| !s) {
        return Ok(false);
    }
    let mut placed = vec![false; n];
    for &v in ordering {
        if !placeable(theta, x, v, &placed)? {
            return Ok(false);
        }
        placed[v] = true;
    }
    Ok(true)
}

/// Greedy dependency sort: coordinates the field fixes come first, then
/// repeatedly the first coordinate (in declaration order) whose image is
/// affine in itself over already placed coordinates.
pub fn triangular_linear(theta: &VectorField, x: &VarietyPresentation) -> Result<Option<Vec<usize>>> {
    let n = theta.ctx().arity();
    let mut placed = vec![false; n];
    let mut ordering = Vec::with_capacity(n);
    for v in 0..n {
        if x.normal_form(theta.coeff(v))?.is_zero() {
            placed[v] = true;
            ordering.push(v);
        }
    }
    while ordering.len() < n {
        let mut progress = false;
        for v in 0..n {
            if !placed[v] && placeable(theta, x, v, &placed)? {
                placed[v] = true;
                ordering.push(v);
                progress = true;
                break;
            }
        }
        if !progress {
            return Ok(None);
        }
    }
    Ok(Some(ordering))
}

/// Largest monomial dividing every term of every coefficient.
fn monomial_content(theta: &VectorField) -> Option<Monomial> {
    let mut acc: Option<Vec<u16>> = None;
    for c in theta.coeffs() {
        for t in c.terms() {
            acc = Some(match acc {
                None => t.mono.exps().to_vec(),
                Some(a) => a.iter().zip(t.mono.exps()).map(|(x, y)| *x.min(y)).collect(),
            });
        }
    }
    acc.map(|e| Monomial::from_exps(&e))
}

/// Nontrivial monomial divisors of `m`, highest total degree first.
fn divisors(m: &Monomial) -> Vec<Monomial> {
    let mut out = vec![Vec::<u16>::new()];
    for &e in m.exps() {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=e).map(move |k| {
                    let mut p = prefix.clone();
                    p.push(k);
                    p
                })
            })
            .collect();
        if out.len() > 4096 {
            out.truncate(4096);
        }
    }
    let mut ms: Vec<Monomial> = out.iter().map(|e| Monomial::from_exps(e)).filter(|d| !d.is_one()).collect();
    ms.sort_by(|a, b| b.total_degree().cmp(&a.total_degree()).then_with(|| b.exps().cmp(a.exps())));
    ms
}

fn divide_field(theta: &VectorField, d: &Monomial) -> VectorField {
    theta.map(|c| Polynomial::from_terms(c.ctx(), c.terms().iter().map(|t| (d.quotient_of(&t.mono), t.coeff.clone()))))
}

/// Certificate for `f·V` with `V` locally nilpotent and `f` in its kernel.
pub fn kernel_multiple_certificate(
    f: &Polynomial,
    v: &VectorField,
    x: &VarietyPresentation,
) -> Result<Option<CompletenessCertificate>> {
    if !is_tangent(v, x)? {
        return Ok(None);
    }
    if !x.is_zero(&v.apply(f)?)? {
        return Ok(None);
    }
    match lnd_search(v, x, DEFAULT_LND_BOUND)? {
        LndOutcome::Lnd { depths } => Ok(Some(CompletenessCertificate::KernelMultipleOfLnd {
            factor: f.clone(),
            inner: v.clone(),
            inner_depths: depths,
        })),
        _ => Ok(None),
    }
}

/// First matching certificate among LND, kernel multiple of an LND,
/// linear coefficients and triangular-affine; `Unknown` otherwise.
pub fn completeness_certificate(theta: &VectorField, x: &VarietyPresentation) -> Result<CompletenessCertificate> {
    if !is_tangent(theta, x)? {
        return Err(precondition("vector field is not tangent to the variety"));
    }
    if let LndOutcome::Lnd { depths } = lnd_search(theta, x, DEFAULT_LND_BOUND)? {
        return Ok(CompletenessCertificate::Lnd { depths });
    }
    if let Some(m) = monomial_content(theta) {
        for d in divisors(&m) {
            let inner = divide_field(theta, &d);
            let f = Polynomial::monomial(theta.ctx(), d, Rational::one());
            if let Some(cert) = kernel_multiple_certificate(&f, &inner, x)? {
                return Ok(cert);
            }
        }
    }
    if linear_coefficients(theta) {
        return Ok(CompletenessCertificate::LinearCoefficients);
    }
    if let Some(ordering) = triangular_linear(theta, x)? {
        return Ok(CompletenessCertificate::TriangularLinear { ordering });
    }
    Ok(CompletenessCertificate::Unknown)
}

/// Re-checks the evidence carried by a certificate against the field.
pub fn verify_completeness(
    theta: &VectorField,
    x: &VarietyPresentation,
    cert: &CompletenessCertificate,
) -> Result<bool> {
    match cert {
        CompletenessCertificate::Lnd { depths } => {
            if depths.len() != x.arity() || !is_tangent(theta, x)? {
                return Ok(false);
            }
            for (i, &d) in depths.iter().enumerate() {
                let zi = Polynomial::var(x.ambient(), i);
                if !x.is_zero(&theta.iterate(&zi, d)?)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        CompletenessCertificate::KernelMultipleOfLnd { factor, inner, inner_depths } => {
            let inner_ok =
                verify_completeness(inner, x, &CompletenessCertificate::Lnd { depths: inner_depths.clone() })?;
            Ok(inner_ok && x.is_zero(&inner.apply(factor)?)? && inner.times(factor)?.congruent(theta, x)?)
        }
        CompletenessCertificate::LinearCoefficients => Ok(linear_coefficients(theta)),
        CompletenessCertificate::TriangularLinear { ordering } => check_triangular_ordering(theta, x, ordering),
        CompletenessCertificate::Unknown => Ok(false),
    }
}
