use serde::{Deserialize, Serialize};

use crate::error::{precondition, Result};
use crate::poly::{Ctx, MonomialOrder, PolyMatrix, Polynomial, VarContext};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    /// Special linear group, factors of size `n`.
    Sl,
    /// Symplectic group, factors of size `2n`.
    Sp,
}

impl GroupKind {
    pub fn name(self) -> &'static str {
        match self {
            GroupKind::Sl => "sl",
            GroupKind::Sp => "sp",
        }
    }

    pub fn parse(s: &str) -> Option<GroupKind> {
        match s.to_ascii_lowercase().as_str() {
            "sl" => Some(GroupKind::Sl),
            "sp" => Some(GroupKind::Sp),
            _ => None,
        }
    }

    /// Number of variables of a full factor.
    pub fn factor_arity(self, n: usize) -> usize {
        match self {
            GroupKind::Sl => n * (n - 1) / 2,
            GroupKind::Sp => n * (n + 1) / 2,
        }
    }
}

/// Structured variable name `z_{K,kl}` (1-based indices), with a separating
/// underscore between `k` and `l` once indices can have two digits.
pub fn var_name(factor: usize, k: usize, l: usize, n: usize) -> String {
    if n >= 10 {
        format!("z{factor}_{k}_{l}")
    } else {
        format!("z{factor}_{k}{l}")
    }
}

/// Index pairs `(k, l)` of the variables of factor `K`, row-major.
///
/// SL: `k > l` for odd `K`, `k < l` for even `K`. Sp: `k ≤ l`.
pub fn factor_pairs(kind: GroupKind, factor: usize, n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for k in 1..=n {
        for l in 1..=n {
            let keep = match kind {
                GroupKind::Sl if factor % 2 == 1 => k > l,
                GroupKind::Sl => k < l,
                GroupKind::Sp => k <= l,
            };
            if keep {
                out.push((k, l));
            }
        }
    }
    out
}

/// Variables of the first symplectic factor that survive projection to the
/// last row: the symmetric entries `(l, n)`, `l = 1..n`.
pub fn sp_last_row_pairs(n: usize) -> Vec<(usize, usize)> {
    (1..=n).map(|l| (l, n)).collect()
}

/// One elementary factor `M_K(Z_K)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorMatrix {
    pub kind: GroupKind,
    pub index: usize,
    pub n: usize,
    pub matrix: PolyMatrix,
    /// Variable names with their `(k, l)` pair.
    pub vars: Vec<(String, (usize, usize))>,
}

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(precondition(format!("block size must be at least 2, got {n}")));
    }
    Ok(())
}

/// Builds `M_K` in its own context of fresh structured variables.
pub fn build_factor(kind: GroupKind, factor: usize, n: usize) -> Result<FactorMatrix> {
    check_n(n)?;
    if factor == 0 {
        return Err(precondition("factor index starts at 1"));
    }
    let pairs = factor_pairs(kind, factor, n);
    let names: Vec<String> = pairs.iter().map(|&(k, l)| var_name(factor, k, l, n)).collect();
    let ctx = VarContext::new(&names, MonomialOrder::Degrevlex)?;
    factor_in(kind, factor, n, &ctx, false)
}

/// Builds `M_K` over `ctx`, which must contain its variables. With
/// `last_row_only`, only the symmetric entries in the last row and column of
/// a symplectic block are variables, the rest are zero.
pub(crate) fn factor_in(
    kind: GroupKind,
    factor: usize,
    n: usize,
    ctx: &Ctx,
    last_row_only: bool,
) -> Result<FactorMatrix> {
    check_n(n)?;
    let pairs = if last_row_only { sp_last_row_pairs(n) } else { factor_pairs(kind, factor, n) };
    let mut vars = Vec::with_capacity(pairs.len());
    let size = match kind {
        GroupKind::Sl => n,
        GroupKind::Sp => 2 * n,
    };
    let mut m = PolyMatrix::identity(ctx, size);
    for &(k, l) in &pairs {
        let name = var_name(factor, k, l, n);
        let v = Polynomial::var_named(ctx, &name)?;
        match kind {
            GroupKind::Sl => m.set(k - 1, l - 1, v),
            GroupKind::Sp => {
                // even: upper-right block Z, odd: lower-left block Z
                let (r0, c0) = if factor.is_multiple_of(2) { (0, n) } else { (n, 0) };
                m.set(r0 + k - 1, c0 + l - 1, v.clone());
                m.set(r0 + l - 1, c0 + k - 1, v);
            }
        }
        vars.push((name, (k, l)));
    }
    Ok(FactorMatrix { kind, index: factor, n, matrix: m, vars })
}

/// The standard skew form `[[0, I], [−I, 0]]` of size `2n`.
pub fn omega(ctx: &Ctx, n: usize) -> PolyMatrix {
    let mut m = PolyMatrix::zero(ctx, 2 * n, 2 * n);
    for i in 0..n {
        m.set(i, n + i, Polynomial::one(ctx));
        m.set(n + i, i, Polynomial::constant(ctx, Rational::from_integer(-1)));
    }
    m
}

/// `MᵀΩM − Ω`, which vanishes exactly for symplectic `M`.
pub fn symplectic_residual(m: &PolyMatrix) -> Result<PolyMatrix> {
    if !m.is_square() || !m.rows().is_multiple_of(2) || m.rows() == 0 {
        return Err(precondition("symplectic check needs an even square matrix"));
    }
    let ctx = m.get(0, 0).ctx().clone();
    let om = omega(&ctx, m.rows() / 2);
    Ok(m.transpose().mul(&om)?.mul(m)?.sub(&om))
}

pub fn is_symplectic(m: &PolyMatrix) -> Result<bool> {
    Ok(symplectic_residual(m)?.is_zero())
}
