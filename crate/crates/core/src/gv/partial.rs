use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::factor::{factor_pairs, GroupKind};
use super::fibration::FibrationPresentation;
use super::variety::gv_variety_sl;
use crate::derivations::{sample_generic_point, VarietyPresentation};
use crate::error::Error;
use crate::error::{precondition, Result};
use crate::rational::Rational;

/// Number of variety points used for the nonvanishing side.
pub const VANISHING_SAMPLES: usize = 5;

/// Target value of the fiber sampled for the nonvanishing side. The fiber
/// over 1 of the last component is singular with a component on which
/// some derivatives vanish, so a smooth fiber is used.
pub const VANISHING_FIBER: i64 = 2;

/// Derivative pattern for `L = K`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingCheck {
    /// `(K odd and l ≥ i) or (K even and l ≤ i)`.
    pub expected_nonzero: bool,
    /// The derivative is the zero polynomial.
    pub identically_zero: bool,
    /// Sampled generic points of `G_{K,i,2}` where the derivative is nonzero.
    pub nonzero_samples: usize,
    pub samples: usize,
}

impl VanishingCheck {
    pub fn passed(&self) -> bool {
        if self.expected_nonzero {
            !self.identically_zero && self.nonzero_samples == self.samples && self.samples > 0
        } else {
            self.identically_zero
        }
    }
}

/// One instance of `∂P_i^K/∂z_{L,kl} = −P_k^L · e_lᵀ M_L⁻¹ ⋯ M_K⁻¹ e_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialCheck {
    pub factor: usize,
    pub k: usize,
    pub l: usize,
    pub i: usize,
    pub identity: bool,
    pub vanishing: Option<VanishingCheck>,
}

impl PartialCheck {
    pub fn passed(&self) -> bool {
        self.identity && self.vanishing.as_ref().is_none_or(VanishingCheck::passed)
    }
}

/// Checks the derivative identity for one index tuple of an SL fibration;
/// for `L = K` also checks the vanishing pattern, exactly on the zero side
/// and at sampled points of `G_{K,i,2}` on the other.
pub fn partial_identity_check(
    fib: &FibrationPresentation,
    factor: usize,
    k: usize,
    l: usize,
    i: usize,
    seed: u64,
) -> Result<PartialCheck> {
    if fib.kind != GroupKind::Sl {
        return Err(precondition("the derivative identity is stated for the special linear fibration"));
    }
    let kk = fib.k;
    if factor == 0 || factor > kk {
        return Err(precondition(format!("factor {factor} outside 1..={kk}")));
    }
    if !factor_pairs(GroupKind::Sl, factor, fib.n).contains(&(k, l)) {
        return Err(precondition(format!("({k},{l}) is not a variable of factor {factor}")));
    }
    if i == 0 || i > fib.n {
        return Err(precondition(format!("component {i} outside 1..={}", fib.n)));
    }
    let v = fib.var_index(factor, k, l)?;
    let lhs = fib.component(i).partial(v);
    // P^L = e_nᵀ M_1⁻¹ ⋯ M_L⁻¹, its k-th entry
    let p_l = fib.step_product(1, factor)?;
    let p_lk = p_l.get(fib.n - 1, k - 1).clone();
    let tail = fib.step_product(factor, kk)?;
    let rhs = -&(&p_lk * tail.get(l - 1, i - 1));
    let identity = lhs == rhs;
    let vanishing = if factor == kk {
        let expected_nonzero = (kk % 2 == 1 && l >= i) || (kk.is_multiple_of(2) && l <= i);
        let identically_zero = lhs.is_zero();
        let (nonzero_samples, samples) = if expected_nonzero && !identically_zero {
            let g = gv_variety_sl(fib.n, kk, i, Rational::from_integer(VANISHING_FIBER))?;
            let pts = generic_points(&g.presentation, seed, VANISHING_SAMPLES)?;
            let mut nz = 0;
            for p in &pts {
                if !lhs.evaluate(p)?.is_zero() {
                    nz += 1;
                }
            }
            (nz, pts.len())
        } else {
            (0, 0)
        };
        Some(VanishingCheck { expected_nonzero, identically_zero, nonzero_samples, samples })
    } else {
        None
    };
    Ok(PartialCheck { factor, k, l, i, identity, vanishing })
}

/// Sampled points with every coordinate nonzero, which keeps them off the
/// coordinate hyperplanes where the factors in the identity degenerate.
fn generic_points(x: &VarietyPresentation, seed: u64, count: usize) -> Result<Vec<Vec<Rational>>> {
    let mut out = Vec::with_capacity(count);
    for t in 0..64 * count as u64 {
        let p = sample_generic_point(x, seed.wrapping_mul(1 << 16).wrapping_add(t))?;
        if p.iter().all(|c| !c.is_zero()) && !out.contains(&p) {
            out.push(p);
            if out.len() == count {
                return Ok(out);
            }
        }
    }
    Err(Error::SamplingFailed(64 * count))
}

/// All legal index tuples `(L, k, l, i)` of the fibration, checked in
/// parallel and returned in lexicographic order.
pub fn all_partial_checks(fib: &FibrationPresentation, seed: u64) -> Result<Vec<PartialCheck>> {
    let mut tuples = Vec::new();
    for factor in 1..=fib.k {
        for (k, l) in factor_pairs(GroupKind::Sl, factor, fib.n) {
            for i in 1..=fib.n {
                tuples.push((factor, k, l, i));
            }
        }
    }
    tuples.par_iter().map(|&(f, k, l, i)| partial_identity_check(fib, f, k, l, i, seed)).collect()
}
