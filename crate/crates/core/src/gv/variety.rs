use super::factor::GroupKind;
use super::fibration::{build_fibration, build_sp_fibration_reduced, FibrationPresentation};
use crate::derivations::VarietyPresentation;
use crate::error::{invalid, precondition, Result};
use crate::poly::{Polynomial, VarContext};
use crate::rational::Rational;

/// A Gromov–Vaserstein variety with its parameters.
///
/// SL: `G_{L,i,a} = {P_i^L = a}` in `(ℂᵐ)^L`. Sp: `{P_s^K = a}` for even
/// `K`, `{P_f^K = a}` for odd `K`, in `ℂⁿ × (ℂᵐ)^{K−1}`.
#[derive(Clone, Debug)]
pub struct GvVariety {
    pub kind: GroupKind,
    pub n: usize,
    /// Number of factors (`L` for SL, `K` for Sp).
    pub k: usize,
    /// Component index `i` (SL only).
    pub component: Option<usize>,
    pub target: Vec<Rational>,
    pub fibration: FibrationPresentation,
    pub presentation: VarietyPresentation,
}

impl GvVariety {
    pub fn describe(&self) -> String {
        let a: Vec<String> = self.target.iter().map(Rational::to_ratio_string).collect();
        match self.kind {
            GroupKind::Sl => {
                format!("sl n={} L={} i={} a={}", self.n, self.k, self.component.unwrap_or(0), a.join(","))
            }
            GroupKind::Sp => format!("sp n={} K={} a=({})", self.n, self.k, a.join(",")),
        }
    }
}

/// `G_{L,i,a}` for the special linear fibration.
pub fn gv_variety_sl(n: usize, l: usize, i: usize, a: Rational) -> Result<GvVariety> {
    if l < 2 {
        return Err(precondition(format!("need at least two factors, got {l}")));
    }
    if i == 0 || i > n {
        return Err(precondition(format!("component index {i} outside 1..={n}")));
    }
    if a.is_zero() {
        return Err(invalid("target value must be nonzero"));
    }
    let fib = build_fibration(GroupKind::Sl, n, l)?;
    let rel = fib.component(i) - &Polynomial::constant(fib.ctx(), a.clone());
    let dim = fib.ctx().arity() - 1;
    let presentation = VarietyPresentation::new(fib.ctx(), vec![rel], dim)?;
    Ok(GvVariety { kind: GroupKind::Sl, n, k: l, component: Some(i), target: vec![a], fibration: fib, presentation })
}

/// `G_{K,a}` for the symplectic fibration on the reduced first factor.
pub fn gv_variety_sp(n: usize, k: usize, a: &[Rational]) -> Result<GvVariety> {
    if k < 2 {
        return Err(precondition(format!("need at least two factors, got {k}")));
    }
    if a.len() != n {
        return Err(crate::error::Error::ArityMismatch { expected: n, got: a.len() });
    }
    if a.iter().all(Rational::is_zero) {
        return Err(invalid("target vector must be nonzero"));
    }
    let fib = build_sp_fibration_reduced(n, k)?;
    let half = if k.is_multiple_of(2) { fib.second_half() } else { fib.first_half() };
    let rels: Vec<Polynomial> =
        half.iter().zip(a).map(|(p, ai)| p - &Polynomial::constant(fib.ctx(), ai.clone())).collect();
    let dim = fib.ctx().arity() - n;
    let presentation = VarietyPresentation::new(fib.ctx(), rels, dim)?;
    Ok(GvVariety { kind: GroupKind::Sp, n, k, component: None, target: a.to_vec(), fibration: fib, presentation })
}

/// Renaming from the symplectic `n = 2`, `K = 2` variety to the
/// coordinates `(z2, z3, w1, w2, w3)`.
pub const SP4_RENAMING: [(&str, &str); 5] =
    [("z1_12", "z2"), ("z1_22", "z3"), ("z2_11", "w1"), ("z2_12", "w2"), ("z2_22", "w3")];

/// The 5-variable presentation `[[w1, w2], [w2, w3]]·(z2, z3)ᵀ = b` with
/// `b = a − e_2`, obtained by renaming the relations of `G_{2,a}`, together
/// with the variety on the renamed coordinates.
pub fn sp4_presentation(a: &[Rational]) -> Result<(VarietyPresentation, Vec<Rational>)> {
    let g = gv_variety_sp(2, 2, a)?;
    let ctx = VarContext::of(&["z2", "z3", "w1", "w2", "w3"]);
    let src = g.fibration.ctx();
    let map: Vec<usize> = src
        .names()
        .iter()
        .map(|name| {
            let target = SP4_RENAMING.iter().find(|(from, _)| from == name).unwrap().1;
            ctx.index_of(target)
        })
        .collect::<Result<_>>()?;
    let rels: Vec<Polynomial> = g.presentation.generators().iter().map(|p| p.embed(&ctx, &map)).collect();
    let b = vec![a[0].clone(), &a[1] - &Rational::one()];
    Ok((VarietyPresentation::new(&ctx, rels, 3)?, b))
}
