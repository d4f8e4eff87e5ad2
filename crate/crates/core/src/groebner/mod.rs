//! Ideals, reduced Gröbner bases, normal forms and membership.

mod buchberger;
mod division;

use std::fmt;
use std::sync::OnceLock;

pub use division::{divide, Division};

use crate::error::{Error, Result};
use crate::poly::{same_ctx, Ctx, Polynomial};

/// Reduction steps allowed for one Gröbner computation unless overridden.
pub const DEFAULT_STEP_BUDGET: u64 = 1_000_000;

/// Environment variable consulted by [`default_step_budget`].
pub const STEP_BUDGET_ENV: &str = "DENSIKIT_STEP_BUDGET";

/// The step budget from `DENSIKIT_STEP_BUDGET`, or [`DEFAULT_STEP_BUDGET`].
/// Read once per process.
pub fn default_step_budget() -> u64 {
    static BUDGET: OnceLock<u64> = OnceLock::new();
    *BUDGET.get_or_init(|| {
        std::env::var(STEP_BUDGET_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_STEP_BUDGET)
    })
}

/// Generators of an ideal in a polynomial ring together with a lazily
/// computed reduced Gröbner basis.
///
/// The basis is computed at most once; concurrent readers either see no
/// basis yet or the final one. Budget failures are not cached.
pub struct IdealPresentation {
    ctx: Ctx,
    generators: Vec<Polynomial>,
    budget: u64,
    groebner: OnceLock<Vec<Polynomial>>,
}

impl Clone for IdealPresentation {
    fn clone(&self) -> Self {
        IdealPresentation {
            ctx: self.ctx.clone(),
            generators: self.generators.clone(),
            budget: self.budget,
            groebner: self.groebner.clone(),
        }
    }
}

impl fmt::Debug for IdealPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdealPresentation").field("ctx", &self.ctx).field("generators", &self.generators).finish()
    }
}

impl IdealPresentation {
    /// Zero generators are dropped.
    pub fn new(ctx: &Ctx, generators: Vec<Polynomial>) -> Result<Self> {
        if generators.iter().any(|g| !same_ctx(g.ctx(), ctx)) {
            return Err(Error::ContextMismatch);
        }
        Ok(IdealPresentation {
            ctx: ctx.clone(),
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
            budget: default_step_budget(),
            groebner: OnceLock::new(),
        })
    }

    pub fn zero(ctx: &Ctx) -> Self {
        Self::new(ctx, Vec::new()).unwrap()
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self.groebner = OnceLock::new();
        self
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    /// The ideal with extra generators appended (no basis is shared).
    pub fn with_generators(&self, extra: impl IntoIterator<Item = Polynomial>) -> Result<Self> {
        let mut gens = self.generators.clone();
        gens.extend(extra);
        Ok(Self::new(&self.ctx, gens)?.with_budget(self.budget))
    }

    /// The same generators in a larger context, matched by variable name.
    pub fn embed(&self, target: &Ctx) -> Result<Self> {
        let gens = self.generators.iter().map(|g| g.embed_by_name(target)).collect::<Result<Vec<_>>>()?;
        Ok(Self::new(target, gens)?.with_budget(self.budget))
    }

    /// Reduced Gröbner basis, monic, sorted by increasing leading monomial.
    pub fn groebner_basis(&self) -> Result<&[Polynomial]> {
        if let Some(gb) = self.groebner.get() {
            return Ok(gb);
        }
        let gb = buchberger::reduced_basis(&self.generators, self.budget)?;
        // a concurrent writer may have won; both results are identical
        let _ = self.groebner.set(gb);
        Ok(self.groebner.get().unwrap())
    }

    fn check(&self, p: &Polynomial) -> Result<()> {
        if same_ctx(p.ctx(), &self.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    /// Remainder of `p` under division by the reduced basis: zero exactly
    /// when `p` lies in the ideal.
    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        self.check(p)?;
        let gb = self.groebner_basis()?;
        if gb.is_empty() || p.is_zero() {
            return Ok(p.clone());
        }
        let mut steps = 0;
        division::reduce(p, gb, &mut steps, u64::MAX)
    }

    /// Division by the reduced basis with recorded quotients.
    pub fn divide(&self, p: &Polynomial) -> Result<Division> {
        self.check(p)?;
        Ok(divide(p, self.groebner_basis()?))
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// `p ≡ q` modulo the ideal.
    pub fn congruent(&self, p: &Polynomial, q: &Polynomial) -> Result<bool> {
        self.check(q)?;
        self.contains(&(p - q))
    }

    /// True iff 1 lies in the ideal, i.e. the complex zero set is empty.
    pub fn contains_one(&self) -> Result<bool> {
        let gb = self.groebner_basis()?;
        Ok(gb.len() == 1 && gb[0].is_one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, MonomialOrder, VarContext};

    fn ideal(ctx: &Ctx, gens: &[&str]) -> IdealPresentation {
        IdealPresentation::new(ctx, gens.iter().map(|g| parse_poly(g, ctx).unwrap()).collect()).unwrap()
    }

    #[test]
    fn single_generator_is_its_own_basis() {
        let ctx = VarContext::of(&["x", "y", "z"]);
        let i = ideal(&ctx, &["x*y - z^2 + 1"]);
        assert_eq!(i.groebner_basis().unwrap(), &[parse_poly("x*y - z^2 + 1", &ctx).unwrap()]);
    }

    #[test]
    fn inconsistent_generators_give_one() {
        let ctx = VarContext::of(&["x"]);
        let i = ideal(&ctx, &["x", "x - 1"]);
        assert!(i.groebner_basis().unwrap()[0].is_one());
        assert!(i.contains_one().unwrap());
        assert!(ideal(&ctx, &["1"]).contains_one().unwrap());
    }

    #[test]
    fn zero_ideal() {
        let ctx = VarContext::of(&["x"]);
        let i = IdealPresentation::zero(&ctx);
        assert!(i.groebner_basis().unwrap().is_empty());
        let p = parse_poly("x^2 + 1", &ctx).unwrap();
        assert_eq!(i.normal_form(&p).unwrap(), p);
        assert!(!i.contains_one().unwrap());
    }

    #[test]
    fn danielewski_normal_forms() {
        let ctx = VarContext::of(&["x", "y", "z"]);
        let i = ideal(&ctx, &["x*y - z^2 + 1"]);
        let nf = |s: &str| i.normal_form(&parse_poly(s, &ctx).unwrap()).unwrap();
        assert_eq!(nf("x*y"), parse_poly("z^2 - 1", &ctx).unwrap());
        assert!(nf("x*y - z^2 + 1").is_zero());
        assert!(nf("1").is_one());
        assert!(!i.contains_one().unwrap());
    }

    #[test]
    fn cyclic_three_basis_is_stable() {
        // classical cyclic-3 system; checks basis idempotence and membership
        let ctx = VarContext::of(&["a", "b", "c"]);
        let i = ideal(&ctx, &["a + b + c", "a*b + b*c + c*a", "a*b*c - 1"]);
        let gb = i.groebner_basis().unwrap().to_vec();
        let again = IdealPresentation::new(&ctx, gb.clone()).unwrap();
        assert_eq!(again.groebner_basis().unwrap(), gb.as_slice());
        for g in i.generators() {
            assert!(i.contains(g).unwrap());
        }
        assert!(i.contains(&parse_poly("c^3 - 1", &ctx).unwrap()).unwrap());
    }

    #[test]
    fn lex_elimination() {
        let ctx = VarContext::new(&["x", "y"], MonomialOrder::Lex).unwrap();
        let i = ideal(&ctx, &["x^2 + y^2 - 1", "x - y"]);
        let gb = i.groebner_basis().unwrap();
        assert_eq!(gb.len(), 2);
        assert_eq!(gb[0], parse_poly("y^2 - 1/2", &ctx).unwrap());
        assert_eq!(gb[1], parse_poly("x - y", &ctx).unwrap());
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let ctx = VarContext::of(&["a", "b", "c"]);
        let i = ideal(&ctx, &["a + b + c", "a*b + b*c + c*a", "a*b*c - 1"]).with_budget(1);
        assert_eq!(i.groebner_basis().unwrap_err(), Error::Budget(1));
        assert!(matches!(i.contains_one(), Err(Error::Budget(1))));
    }

    #[test]
    fn division_recombines() {
        let ctx = VarContext::of(&["x", "y", "z"]);
        let i = ideal(&ctx, &["x*y - z^2 + 1", "z^3 - x"]);
        let p = parse_poly("x^3*y^2 + z^5 - 7*x*z + 2", &ctx).unwrap();
        let d = i.divide(&p).unwrap();
        let mut acc = d.remainder.clone();
        for (q, g) in d.quotients.iter().zip(i.groebner_basis().unwrap()) {
            acc = &acc + &(q * g);
        }
        assert_eq!(acc, p);
        assert_eq!(d.remainder, i.normal_form(&p).unwrap());
    }
}
