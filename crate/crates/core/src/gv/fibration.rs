use super::factor::{factor_in, factor_pairs, sp_last_row_pairs, var_name, FactorMatrix, GroupKind};
use crate::error::{precondition, Result};
use crate::poly::{Ctx, MonomialOrder, PolyMatrix, Polynomial, VarContext};

/// Entry of the variable table: structured name and its position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibrationVar {
    pub name: String,
    pub factor: usize,
    pub k: usize,
    pub l: usize,
    pub column: usize,
}

/// The row vector `P^K` with its factors and variable table.
///
/// SL: `P^K = e_nᵀ M_1⁻¹ ⋯ M_K⁻¹`. Sp: `P^K = e_{2n}ᵀ M_1 ⋯ M_K`.
#[derive(Clone, Debug)]
pub struct FibrationPresentation {
    pub kind: GroupKind,
    pub n: usize,
    pub k: usize,
    /// Symplectic first factor reduced to its last-row variables.
    pub first_row_only: bool,
    ctx: Ctx,
    factors: Vec<FactorMatrix>,
    /// `M_L⁻¹` (SL) or `M_L` (Sp) for each factor.
    steps: Vec<PolyMatrix>,
    components: Vec<Polynomial>,
    table: Vec<FibrationVar>,
}

impl FibrationPresentation {
    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    /// `P_i^K`, 1-based.
    pub fn component(&self, i: usize) -> &Polynomial {
        &self.components[i - 1]
    }

    pub fn factors(&self) -> &[FactorMatrix] {
        &self.factors
    }

    pub fn table(&self) -> &[FibrationVar] {
        &self.table
    }

    pub fn var(&self, factor: usize, k: usize, l: usize) -> Result<Polynomial> {
        Polynomial::var_named(&self.ctx, &var_name(factor, k, l, self.n))
    }

    pub fn var_index(&self, factor: usize, k: usize, l: usize) -> Result<usize> {
        self.ctx.index_of(&var_name(factor, k, l, self.n))
    }

    /// First `n` components.
    pub fn first_half(&self) -> &[Polynomial] {
        &self.components[..self.n]
    }

    /// Last `n` components (Sp only).
    pub fn second_half(&self) -> &[Polynomial] {
        &self.components[self.components.len() - self.n..]
    }

    /// `M_from⁻¹ ⋯ M_to⁻¹` (SL) or `M_from ⋯ M_to` (Sp), 1-based inclusive.
    pub fn step_product(&self, from: usize, to: usize) -> Result<PolyMatrix> {
        let size = self.steps[0].rows();
        let mut acc = PolyMatrix::identity(&self.ctx, size);
        for s in &self.steps[from - 1..to] {
            acc = acc.mul(s)?;
        }
        Ok(acc)
    }

    /// Every component has degree at most one in each variable.
    pub fn is_multilinear(&self) -> bool {
        self.components.iter().all(|p| (0..self.ctx.arity()).all(|v| p.degree_in(v) <= 1))
    }

    /// Rendered components, one per line, `P{i} = expr`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (i, p) in self.components.iter().enumerate() {
            out.push_str(&format!("P{} = {}\n", i + 1, p.render()));
        }
        out
    }

    /// Variable table, one line per variable: column, name, factor, k, l.
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        for v in &self.table {
            out.push_str(&format!("{} {} factor={} k={} l={}\n", v.column, v.name, v.factor, v.k, v.l));
        }
        out
    }
}

fn table_pairs(kind: GroupKind, factor: usize, n: usize, first_row_only: bool) -> Vec<(usize, usize)> {
    if first_row_only && factor == 1 {
        sp_last_row_pairs(n)
    } else {
        factor_pairs(kind, factor, n)
    }
}

fn build(kind: GroupKind, n: usize, k: usize, first_row_only: bool) -> Result<FibrationPresentation> {
    if n < 2 {
        return Err(precondition(format!("block size must be at least 2, got {n}")));
    }
    if k == 0 {
        return Err(precondition("at least one factor is needed"));
    }
    let mut names = Vec::new();
    let mut table = Vec::new();
    for f in 1..=k {
        for (a, b) in table_pairs(kind, f, n, first_row_only) {
            let name = var_name(f, a, b, n);
            table.push(FibrationVar { name: name.clone(), factor: f, k: a, l: b, column: names.len() });
            names.push(name);
        }
    }
    let ctx = VarContext::new(&names, MonomialOrder::Degrevlex)?;
    let mut factors = Vec::with_capacity(k);
    let mut steps = Vec::with_capacity(k);
    for f in 1..=k {
        let m = factor_in(kind, f, n, &ctx, first_row_only && f == 1)?;
        steps.push(match kind {
            GroupKind::Sl => m.matrix.unitriangular_inverse()?,
            GroupKind::Sp => m.matrix.clone(),
        });
        factors.push(m);
    }
    let size = steps[0].rows();
    let mut row = PolyMatrix::zero(&ctx, 1, size);
    row.set(0, size - 1, Polynomial::one(&ctx));
    for s in &steps {
        row = row.mul(s)?;
    }
    let components = row.row(0).to_vec();
    Ok(FibrationPresentation { kind, n, k, first_row_only, ctx, factors, steps, components, table })
}

/// The fibration with all factors in full.
pub fn build_fibration(kind: GroupKind, n: usize, k: usize) -> Result<FibrationPresentation> {
    build(kind, n, k, false)
}

/// The symplectic fibration on `ℂⁿ × (ℂᵐ)^{K−1}`: the first factor keeps
/// only the variables that reach the last row.
pub fn build_sp_fibration_reduced(n: usize, k: usize) -> Result<FibrationPresentation> {
    build(GroupKind::Sp, n, k, true)
}
