use super::factor::{factor_pairs, var_name, GroupKind};
use super::fibration::{build_fibration, FibrationPresentation};
use crate::derivations::VarietyPresentation;
use crate::error::{invalid, precondition, Error, Result};
use crate::groebner::IdealPresentation;
use crate::poly::{PolyMatrix, Polynomial};
use crate::rational::Rational;

/// The fiber `(P^{K+1})^{-1}(y)` written as a residual variety in the first
/// `K` factors times free coordinates.
#[derive(Clone, Debug)]
pub struct FiberReduction {
    pub kind: GroupKind,
    pub n: usize,
    /// Number of factors of the reduced fibration (`K + 1`).
    pub factors: usize,
    pub target: Vec<Rational>,
    /// 1-based pivot index into the nonzero part of the target.
    pub pivot: usize,
    /// Solved variables of the last factor, in solving order. Values are
    /// polynomials over the full `K + 1` factor context in unsolved variables.
    pub substitutions: Vec<(String, Polynomial)>,
    /// Relations in the first `K` factors left over after solving.
    pub residual: VarietyPresentation,
    /// Coordinates on which no relation depends.
    pub free: Vec<String>,
    pub full: FibrationPresentation,
    pub reduced: FibrationPresentation,
}

impl FiberReduction {
    pub fn free_count(&self) -> usize {
        self.free.len()
    }

    fn images(&self) -> Result<Vec<Polynomial>> {
        let ctx = self.full.ctx();
        let mut images: Vec<Polynomial> = (0..ctx.arity()).map(|i| Polynomial::var(ctx, i)).collect();
        for (name, value) in &self.substitutions {
            images[ctx.index_of(name)?] = value.clone();
        }
        Ok(images)
    }

    fn target_row(&self) -> PolyMatrix {
        let ctx = self.full.ctx();
        PolyMatrix::from_rows(vec![self.target.iter().map(|y| Polynomial::constant(ctx, y.clone())).collect()])
    }

    /// `P^{K+1} − y` with the substitutions applied.
    pub fn substituted_equations(&self) -> Result<Vec<Polynomial>> {
        let ctx = self.full.ctx();
        let images = self.images()?;
        Ok(self
            .full
            .components()
            .iter()
            .zip(&self.target)
            .map(|(p, y)| &p.compose(&images, ctx) - &Polynomial::constant(ctx, y.clone()))
            .collect())
    }

    /// The fiber equations solved for `P^K`: `P^K − y·M_{K+1}⁻¹` (Sp) or
    /// `P^K − y·M_{K+1}` (SL), with the substitutions applied.
    pub fn rearranged_equations(&self) -> Result<Vec<Polynomial>> {
        let ctx = self.full.ctx();
        let m = &self.full.factors()[self.factors - 1].matrix;
        let step = match self.kind {
            GroupKind::Sl => m.clone(),
            GroupKind::Sp => m.unitriangular_inverse()?,
        };
        let rhs = self.target_row().mul(&step)?;
        let images = self.images()?;
        self.reduced
            .components()
            .iter()
            .enumerate()
            .map(|(j, p)| Ok((&p.embed_by_name(ctx)? - rhs.get(0, j)).compose(&images, ctx)))
            .collect()
    }

    /// After substitution, exactly one rearranged equation per solved
    /// variable vanishes identically and every fiber equation lies in the
    /// ideal of the residual relations.
    pub fn round_trip(&self) -> Result<bool> {
        let ctx = self.full.ctx();
        let residual = IdealPresentation::new(
            ctx,
            self.residual.generators().iter().map(|g| g.embed_by_name(ctx)).collect::<Result<Vec<_>>>()?,
        )?;
        let rearranged = self.rearranged_equations()?;
        if rearranged.iter().filter(|e| e.is_zero()).count() != self.substitutions.len() {
            return Ok(false);
        }
        for e in rearranged.iter().chain(&self.substituted_equations()?) {
            if !residual.contains(e)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (name, value) in &self.substitutions {
            out.push_str(&format!("{name} = {}\n", value.render()));
        }
        for g in self.residual.generators() {
            out.push_str(&format!("residual: {} = 0\n", g.render()));
        }
        out.push_str(&format!("free: {} ({})\n", self.free.len(), self.free.join(", ")));
        out
    }
}

fn check_target(kind: GroupKind, n: usize, target: &[Rational]) -> Result<()> {
    let len = match kind {
        GroupKind::Sl => n,
        GroupKind::Sp => 2 * n,
    };
    if target.len() != len {
        return Err(Error::ArityMismatch { expected: len, got: target.len() });
    }
    Ok(())
}

/// Solves the last factor of `(P^{K+1})^{-1}(y)` for as many variables as
/// the pivot allows.
///
/// SL: `P^K = y·M_{K+1}`. For odd `K+1` the pivot is the largest `i` with
/// `y_i ≠ 0` and `z_{K+1,ij}` is solved for `j < i`; for even `K+1` the
/// smallest such `i`, solving `z_{K+1,ij}` for `j > i`. The residual is
/// `P_i^K = y_i` together with `P_j^K = 0` on the far side of the pivot.
///
/// Sp: for even `K+1`, `y = (a, b)` gives `P_f^K = a` and
/// `P_s^K = b − a·Z_{K+1}`; for odd `K+1`, `y = (b, a)` gives `P_s^K = a`
/// and `P_f^K = b − a·Z_{K+1}`. With `a_s ≠ 0` the `n` variables
/// `Z_{K+1, sj}` are solved.
pub fn fiber_reduce(kind: GroupKind, n: usize, factors: usize, target: &[Rational]) -> Result<FiberReduction> {
    if factors < 2 {
        return Err(precondition("fiber reduction needs at least two factors"));
    }
    check_target(kind, n, target)?;
    let full = build_fibration(kind, n, factors)?;
    let reduced = build_fibration(kind, n, factors - 1)?;
    match kind {
        GroupKind::Sl => reduce_sl(n, factors, target, full, reduced),
        GroupKind::Sp => reduce_sp(n, factors, target, full, reduced),
    }
}

fn constant(fib: &FibrationPresentation, c: &Rational) -> Polynomial {
    Polynomial::constant(fib.ctx(), c.clone())
}

fn reduce_sl(
    n: usize,
    factors: usize,
    a: &[Rational],
    full: FibrationPresentation,
    reduced: FibrationPresentation,
) -> Result<FiberReduction> {
    let last = factors;
    let odd = last % 2 == 1;
    let nonzero: Vec<usize> = (1..=n).filter(|&i| !a[i - 1].is_zero()).collect();
    let pivot = if odd { nonzero.last() } else { nonzero.first() };
    let Some(&p) = pivot else {
        return Err(precondition("zero pivot: target vector vanishes"));
    };
    let inv = a[p - 1].inv().unwrap();
    let ctx = full.ctx().clone();
    let mut subs = Vec::new();
    let cols: Vec<usize> = if odd { (1..p).collect() } else { (p + 1..=n).collect() };
    for j in cols {
        // (y M)_j = y_j + Σ_i y_i z_{ij} over the structural nonzeros of column j
        let pk = reduced.component(j).embed_by_name(&ctx)?;
        let mut rhs = &pk - &constant(&full, &a[j - 1]);
        let others: Vec<usize> = if odd { (j + 1..=n).collect() } else { (1..j).collect() };
        for i in others {
            if i == p || a[i - 1].is_zero() {
                continue;
            }
            rhs = &rhs - &full.var(last, i, j)?.scale(&a[i - 1]);
        }
        subs.push((var_name(last, p, j, n), rhs.scale(&inv)));
    }
    let rctx = reduced.ctx();
    let mut rels = vec![reduced.component(p) - &Polynomial::constant(rctx, a[p - 1].clone())];
    let far: Vec<usize> = if odd { (p + 1..=n).collect() } else { (1..p).collect() };
    for j in far {
        rels.push(reduced.component(j).clone());
    }
    let dim = rctx.arity() - rels.len();
    let residual = VarietyPresentation::new(rctx, rels, dim)?;
    let solved: Vec<&str> = subs.iter().map(|(s, _)| s.as_str()).collect();
    let free: Vec<String> = factor_pairs(GroupKind::Sl, last, n)
        .into_iter()
        .map(|(k, l)| var_name(last, k, l, n))
        .filter(|s| !solved.contains(&s.as_str()))
        .collect();
    Ok(FiberReduction {
        kind: GroupKind::Sl,
        n,
        factors,
        target: a.to_vec(),
        pivot: p,
        substitutions: subs,
        residual,
        free,
        full,
        reduced,
    })
}

fn reduce_sp(
    n: usize,
    factors: usize,
    y: &[Rational],
    full: FibrationPresentation,
    reduced: FibrationPresentation,
) -> Result<FiberReduction> {
    let last = factors;
    let even = last.is_multiple_of(2);
    // `a` is the part of the target that the first K factors must hit
    let (a, b) = if even { (&y[..n], &y[n..]) } else { (&y[n..], &y[..n]) };
    let Some(s) = (1..=n).find(|&j| !a[j - 1].is_zero()) else {
        return Err(precondition("zero pivot: the fixed half of the target vanishes"));
    };
    let inv = a[s - 1].inv().unwrap();
    let ctx = full.ctx().clone();
    let moving: Vec<Polynomial> = if even { reduced.second_half().to_vec() } else { reduced.first_half().to_vec() };
    let sym = |k: usize, l: usize| -> Result<Polynomial> {
        let (lo, hi) = if k <= l { (k, l) } else { (l, k) };
        full.var(last, lo, hi)
    };
    let sym_name = |k: usize, l: usize| {
        let (lo, hi) = if k <= l { (k, l) } else { (l, k) };
        var_name(last, lo, hi, n)
    };
    // equation j: moving_j = b_j − Σ_k a_k Z_{kj}; solve for Z_{sj}
    let mut solved: Vec<(usize, Polynomial)> = Vec::new();
    let order: Vec<usize> = (1..=n).filter(|&j| j != s).chain(std::iter::once(s)).collect();
    for j in order {
        let mut rhs = &constant(&full, &b[j - 1]) - &moving[j - 1].embed_by_name(&ctx)?;
        for k in 1..=n {
            if k == s || a[k - 1].is_zero() {
                continue;
            }
            let z = if j == s {
                // Z_{ks} = Z_{sk} was solved by equation k
                solved.iter().find(|(jj, _)| *jj == k).map(|(_, v)| v.clone()).unwrap()
            } else {
                sym(k, j)?
            };
            rhs = &rhs - &z.scale(&a[k - 1]);
        }
        solved.push((j, rhs.scale(&inv)));
    }
    let subs: Vec<(String, Polynomial)> = solved.into_iter().map(|(j, v)| (sym_name(s, j), v)).collect();
    let rctx = reduced.ctx();
    let fixed = if even { reduced.first_half() } else { reduced.second_half() };
    let rels: Vec<Polynomial> =
        fixed.iter().zip(a).map(|(p, ai)| p - &Polynomial::constant(rctx, ai.clone())).collect();
    let dim = rctx.arity() - rels.len();
    let residual = VarietyPresentation::new(rctx, rels, dim)?;
    let solved_names: Vec<&str> = subs.iter().map(|(s, _)| s.as_str()).collect();
    let mut free: Vec<String> = factor_pairs(GroupKind::Sp, last, n)
        .into_iter()
        .map(|(k, l)| var_name(last, k, l, n))
        .filter(|s| !solved_names.contains(&s.as_str()))
        .collect();
    // first-factor variables off the last row never reach the fibration
    for (k, l) in factor_pairs(GroupKind::Sp, 1, n) {
        if l < n {
            let name = var_name(1, k, l, n);
            let idx = rctx.index_of(&name)?;
            if residual.generators().iter().any(|g| g.depends_on(idx)) {
                return Err(invalid(format!("residual depends on `{name}`")));
            }
            free.push(name);
        }
    }
    Ok(FiberReduction {
        kind: GroupKind::Sp,
        n,
        factors,
        target: y.to_vec(),
        pivot: s,
        substitutions: subs,
        residual,
        free,
        full,
        reduced,
    })
}
