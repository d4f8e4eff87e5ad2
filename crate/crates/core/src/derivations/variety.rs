use crate::error::{invalid, Error, Result};
use crate::groebner::IdealPresentation;
use crate::poly::{jacobian, parse_poly, Ctx, MonomialOrder, PolyMatrix, Polynomial, RatMatrix, VarContext};
use crate::rational::Rational;

use super::sample::sample_point;

/// An affine variety given by an ambient coordinate context, relation
/// generators and a declared dimension.
///
/// Construction checks that the relations do not generate the unit ideal
/// and that the Jacobian of the relations has rank `arity - dim` at a
/// sampled point (the complete-intersection presentations used here).
#[derive(Clone, Debug)]
pub struct VarietyPresentation {
    ambient: Ctx,
    relations: IdealPresentation,
    dim: usize,
}

impl VarietyPresentation {
    pub fn new(ambient: &Ctx, relations: Vec<Polynomial>, dim: usize) -> Result<Self> {
        let ideal = IdealPresentation::new(ambient, relations)?;
        let v = Self::new_unchecked(ideal, dim);
        v.check_dimension()?;
        Ok(v)
    }

    /// Skips the properness and dimension checks.
    pub fn new_unchecked(relations: IdealPresentation, dim: usize) -> Self {
        VarietyPresentation { ambient: relations.ctx().clone(), relations, dim }
    }

    /// Parses relations given as expression strings.
    pub fn from_text<S: AsRef<str>, R: AsRef<str>>(
        vars: &[S],
        order: MonomialOrder,
        relations: &[R],
        dim: usize,
    ) -> Result<Self> {
        let ctx = VarContext::new(vars, order)?;
        let rels = relations.iter().map(|r| parse_poly(r.as_ref(), &ctx)).collect::<Result<Vec<_>>>()?;
        Self::new(&ctx, rels, dim)
    }

    /// Whole affine space in the given variables.
    pub fn affine_space(ambient: &Ctx) -> Self {
        Self::new_unchecked(IdealPresentation::zero(ambient), ambient.arity())
    }

    fn check_dimension(&self) -> Result<()> {
        let n = self.ambient.arity();
        let r = self.relations.generators().len();
        if self.dim > n {
            return Err(invalid(format!("dimension {} exceeds ambient arity {n}", self.dim)));
        }
        if r == 0 {
            return if self.dim == n {
                Ok(())
            } else {
                Err(invalid(format!("no relations but declared dimension {} < {n}", self.dim)))
            };
        }
        if self.relations.contains_one()? {
            return Err(invalid("relations generate the unit ideal (empty variety)"));
        }
        if r + self.dim != n {
            return Err(invalid(format!(
                "declared dimension {} does not match {n} variables with {r} relations",
                self.dim
            )));
        }
        let jac = self.jacobian()?;
        for seed in 0..8 {
            let Ok(pt) = sample_point(self, seed) else {
                continue;
            };
            if jac.rank_at_point(&pt)? == r {
                return Ok(());
            }
        }
        Err(invalid(format!("could not confirm dimension {}: no sampled point with Jacobian rank {r}", self.dim)))
    }

    pub fn ambient(&self) -> &Ctx {
        &self.ambient
    }

    pub fn arity(&self) -> usize {
        self.ambient.arity()
    }

    pub fn relations(&self) -> &IdealPresentation {
        &self.relations
    }

    pub fn generators(&self) -> &[Polynomial] {
        self.relations.generators()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        parse_poly(text, &self.ambient)
    }

    pub fn var(&self, name: &str) -> Result<Polynomial> {
        Polynomial::var_named(&self.ambient, name)
    }

    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        self.relations.normal_form(p)
    }

    /// `p` vanishes on the variety (membership in the relation ideal).
    pub fn is_zero(&self, p: &Polynomial) -> Result<bool> {
        self.relations.contains(p)
    }

    pub fn congruent(&self, p: &Polynomial, q: &Polynomial) -> Result<bool> {
        self.relations.congruent(p, q)
    }

    pub fn jacobian(&self) -> Result<PolyMatrix> {
        if self.generators().is_empty() {
            return Ok(PolyMatrix::zero(&self.ambient, 0, self.arity()));
        }
        jacobian(self.generators())
    }

    /// Every relation vanishes at `point`.
    pub fn contains_point(&self, point: &[Rational]) -> Result<bool> {
        for g in self.generators() {
            if !g.evaluate(point)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn require_point(&self, point: &[Rational]) -> Result<()> {
        if point.len() != self.arity() {
            return Err(Error::ArityMismatch { expected: self.arity(), got: point.len() });
        }
        if !self.contains_point(point)? {
            return Err(Error::Precondition("point is not on the variety".into()));
        }
        Ok(())
    }

    /// `w` is annihilated by the Jacobian evaluated at `point`.
    pub fn is_tangent_vector(&self, point: &[Rational], w: &[Rational]) -> Result<bool> {
        if w.len() != self.arity() {
            return Err(Error::ArityMismatch { expected: self.arity(), got: w.len() });
        }
        for g in self.generators() {
            let mut acc = Rational::zero();
            for (j, wj) in w.iter().enumerate() {
                if !wj.is_zero() {
                    acc += &(&g.partial(j).evaluate(point)? * wj);
                }
            }
            if !acc.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Basis of the kernel of the evaluated Jacobian.
    pub fn tangent_basis(&self, point: &[Rational]) -> Result<Vec<Vec<Rational>>> {
        let n = self.arity();
        if self.generators().is_empty() {
            return Ok((0..n)
                .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
                .collect());
        }
        let m: RatMatrix = self.jacobian()?.evaluate(point)?;
        Ok(kernel_basis(&m))
    }

    /// The variety times an affine line with a fresh coordinate named from
    /// `candidates`.
    pub fn times_line(&self, candidates: &[&str]) -> Result<(VarietyPresentation, usize)> {
        let name = self.ambient.fresh_name(candidates);
        let ext = self.ambient.extended(&[name.as_str()])?;
        let rels = self.relations.embed(&ext)?;
        let idx = ext.arity() - 1;
        Ok((Self::new_unchecked(rels, self.dim + 1), idx))
    }
}

/// Null-space basis of a rational matrix from its reduced echelon form.
fn kernel_basis(m: &RatMatrix) -> Vec<Vec<Rational>> {
    let (red, pivots) = m.row_echelon();
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); m.cols];
            v[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -&red[r][f];
            }
            v
        })
        .collect()
}
