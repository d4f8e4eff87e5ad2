//! Vector fields as derivations of coordinate rings.

mod completeness;
mod field;
mod flow;
mod sample;
mod variety;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use completeness::{
    completeness_certificate, kernel_multiple_certificate, linear_coefficients, triangular_linear, verify_completeness,
    CompletenessCertificate,
};
pub use field::VectorField;
pub use flow::{
    algebraic_flow, flow_differential_check, lnd_flow, numeric_flow_check, rk4_flow, FlowMap, NumericCheck, RK4_STEP,
    RK4_TOLERANCE,
};
pub use sample::{sample_generic_point, sample_point, sample_points, solve_with_assignment};
pub use variety::VarietyPresentation;

use crate::error::{precondition, Error, Result};
use crate::poly::{same_ctx, Polynomial};
use crate::rational::Rational;

/// Iteration bound for the nilpotency search.
pub const DEFAULT_LND_BOUND: usize = 64;

/// Iterates with more terms than this end the nilpotency search for their
/// coordinate as undecided.
pub const LND_TERM_CAP: usize = 2000;

/// `θ(f)` without reduction.
pub fn apply_derivation(theta: &VectorField, f: &Polynomial) -> Result<Polynomial> {
    theta.apply(f)
}

pub fn lie_bracket(theta: &VectorField, phi: &VectorField) -> Result<VectorField> {
    theta.bracket(phi)
}

fn check_ctx(theta: &VectorField, x: &VarietyPresentation) -> Result<()> {
    if same_ctx(theta.ctx(), x.ambient()) {
        Ok(())
    } else {
        Err(Error::ContextMismatch)
    }
}

/// `θ(g)` lies in the relation ideal for every relation generator `g`.
pub fn is_tangent(theta: &VectorField, x: &VarietyPresentation) -> Result<bool> {
    check_ctx(theta, x)?;
    for g in x.generators() {
        if !x.is_zero(&theta.apply(g)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Least `d` with `θ^d(f) ≡ 0` on the variety, or overflow past a cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KernelDegree {
    Finite(usize),
    Overflow,
}

impl KernelDegree {
    pub fn value(self) -> Option<usize> {
        match self {
            KernelDegree::Finite(d) => Some(d),
            KernelDegree::Overflow => None,
        }
    }

    /// Degree at most `d` (overflow is never at most anything).
    pub fn at_most(self, d: usize) -> bool {
        matches!(self, KernelDegree::Finite(k) if k <= d)
    }
}

impl fmt::Display for KernelDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KernelDegree::Finite(d) => write!(f, "{d}"),
            KernelDegree::Overflow => f.write_str("overflow"),
        }
    }
}

/// Kernel degree without the tangency precondition check.
pub(crate) fn kernel_degree_unchecked(
    f: &Polynomial,
    theta: &VectorField,
    x: &VarietyPresentation,
    cap: usize,
) -> Result<KernelDegree> {
    // iterate on normal forms; tangency makes this well defined on the
    // coordinate ring and keeps intermediate sizes small
    let mut g = x.normal_form(f)?;
    for d in 0..=cap {
        if g.is_zero() {
            return Ok(KernelDegree::Finite(d));
        }
        if d == cap {
            break;
        }
        g = x.normal_form(&theta.apply(&g)?)?;
    }
    Ok(KernelDegree::Overflow)
}

/// Least `d ≤ cap` with `NF(θ^d(f)) = 0`; `d = 0` means `f` vanishes on
/// the variety, `d = 1` means `f` is a kernel element.
pub fn kernel_degree(f: &Polynomial, theta: &VectorField, x: &VarietyPresentation, cap: usize) -> Result<KernelDegree> {
    if !same_ctx(f.ctx(), x.ambient()) {
        return Err(Error::ContextMismatch);
    }
    if !is_tangent(theta, x)? {
        return Err(precondition("vector field is not tangent to the variety"));
    }
    kernel_degree_unchecked(f, theta, x, cap)
}

/// Result of the nilpotency search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LndOutcome {
    /// Per-coordinate depths `d_i` with `NF(θ^{d_i}(z_i)) = 0`.
    Lnd {
        depths: Vec<usize>,
    },
    /// `θ(h) ≡ c·h` with `c ≠ 0` and `h ≢ 0` for an iterate `h` of the
    /// given coordinate, so no power of `θ` kills it.
    NotLnd {
        coordinate: usize,
        eigenvalue: Rational,
    },
    Unknown,
}

/// If `b = c·a` for a nonzero rational `c` (with `a ≠ 0`), returns `c`.
fn scalar_ratio(a: &Polynomial, b: &Polynomial) -> Option<Rational> {
    let la = a.leading_term()?;
    let lb = b.leading_term()?;
    if la.mono != lb.mono || a.len() != b.len() {
        return None;
    }
    let c = &lb.coeff / &la.coeff;
    if a.scale(&c) == *b {
        Some(c)
    } else {
        None
    }
}

pub(crate) fn lnd_search(theta: &VectorField, x: &VarietyPresentation, bound: usize) -> Result<LndOutcome> {
    let ctx = x.ambient();
    let mut depths = Vec::with_capacity(ctx.arity());
    for i in 0..ctx.arity() {
        let mut g = x.normal_form(&Polynomial::var(ctx, i))?;
        let mut depth = None;
        for d in 0..=bound {
            if g.is_zero() {
                depth = Some(d);
                break;
            }
            if d == bound || g.len() > LND_TERM_CAP {
                break;
            }
            let next = x.normal_form(&theta.apply(&g)?)?;
            if let Some(c) = scalar_ratio(&g, &next) {
                return Ok(LndOutcome::NotLnd { coordinate: i, eigenvalue: c });
            }
            g = next;
        }
        match depth {
            Some(d) => depths.push(d),
            // one undecided coordinate already makes the outcome Unknown
            None => return Ok(LndOutcome::Unknown),
        }
    }
    Ok(LndOutcome::Lnd { depths })
}

/// Searches for nilpotency of `θ` on every coordinate within `bound`
/// iterations.
pub fn lnd_certificate(theta: &VectorField, x: &VarietyPresentation, bound: usize) -> Result<LndOutcome> {
    if !is_tangent(theta, x)? {
        return Err(precondition("vector field is not tangent to the variety"));
    }
    lnd_search(theta, x, bound)
}
