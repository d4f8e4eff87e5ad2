use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::context::{same_ctx, Ctx};
use super::monomial::Monomial;
use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Term {
    pub mono: Monomial,
    pub coeff: Rational,
}

/// Sparse multivariate polynomial over the rationals.
///
/// Terms are kept sorted in strictly descending monomial order of the
/// context, with no zero coefficients, so structural equality is
/// mathematical equality.
#[derive(Clone)]
pub struct Polynomial {
    ctx: Ctx,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ctx(&self.ctx, &other.ctx) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ctx: &Ctx) -> Self {
        Polynomial { ctx: ctx.clone(), terms: Vec::new() }
    }

    pub fn constant(ctx: &Ctx, c: Rational) -> Self {
        if c.is_zero() {
            return Self::zero(ctx);
        }
        Polynomial { ctx: ctx.clone(), terms: vec![Term { mono: Monomial::one(ctx.arity()), coeff: c }] }
    }

    pub fn one(ctx: &Ctx) -> Self {
        Self::constant(ctx, Rational::one())
    }

    pub fn var(ctx: &Ctx, i: usize) -> Self {
        assert!(i < ctx.arity(), "variable index out of range");
        Polynomial {
            ctx: ctx.clone(),
            terms: vec![Term { mono: Monomial::var(ctx.arity(), i), coeff: Rational::one() }],
        }
    }

    pub fn var_named(ctx: &Ctx, name: &str) -> Result<Self> {
        Ok(Self::var(ctx, ctx.index_of(name)?))
    }

    pub fn monomial(ctx: &Ctx, mono: Monomial, coeff: Rational) -> Self {
        assert_eq!(mono.arity(), ctx.arity());
        if coeff.is_zero() {
            return Self::zero(ctx);
        }
        Polynomial { ctx: ctx.clone(), terms: vec![Term { mono, coeff }] }
    }

    /// Canonicalizes an arbitrary list of terms: merges duplicates, drops
    /// zeros, sorts.
    pub fn from_terms(ctx: &Ctx, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.arity(), ctx.arity(), "monomial arity");
            match acc.get_mut(&m) {
                Some(v) => *v += &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let order = ctx.order();
        let mut terms: Vec<Term> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(mono, coeff)| Term { mono, coeff }).collect();
        terms.sort_by(|a, b| order.compare(&b.mono, &a.mono));
        Polynomial { ctx: ctx.clone(), terms }
    }

    /// Trusts the caller that `terms` is already canonical.
    pub(crate) fn from_sorted(ctx: &Ctx, terms: Vec<Term>) -> Self {
        debug_assert!(terms.iter().all(|t| !t.coeff.is_zero()));
        debug_assert!(terms.windows(2).all(|w| ctx.order().compare(&w[0].mono, &w[1].mono) == Ordering::Greater));
        Polynomial { ctx: ctx.clone(), terms }
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    /// Removes and returns the leading term.
    pub(crate) fn pop_leading(&mut self) -> Option<Term> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    /// Number of terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.mono.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].mono.is_one() && self.terms[0].coeff.is_one()
    }

    /// Constant term (zero if absent).
    pub fn constant_term(&self) -> Rational {
        match self.terms.last() {
            Some(t) if t.mono.is_one() => t.coeff.clone(),
            _ => Rational::zero(),
        }
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.constant_term())
        } else {
            None
        }
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.mono)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.first().map(|t| &t.coeff)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.mono.total_degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> u16 {
        self.terms.iter().map(|t| t.mono.exp(var)).max().unwrap_or(0)
    }

    /// Total degree counted only in the given variables.
    pub fn degree_in_set(&self, vars: &[usize]) -> u32 {
        self.terms.iter().map(|t| vars.iter().map(|&v| t.mono.exp(v) as u32).sum::<u32>()).max().unwrap_or(0)
    }

    /// Indices of variables that occur in some term.
    pub fn support(&self) -> Vec<usize> {
        (0..self.ctx.arity()).filter(|&v| self.terms.iter().any(|t| t.mono.exp(v) > 0)).collect()
    }

    pub fn depends_on(&self, var: usize) -> bool {
        self.terms.iter().any(|t| t.mono.exp(var) > 0)
    }

    fn check_ctx(&self, other: &Polynomial) -> Result<()> {
        if same_ctx(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    fn assert_ctx(&self, other: &Polynomial) {
        assert!(same_ctx(&self.ctx, &other.ctx), "polynomial context mismatch: {:?} vs {:?}", self.ctx, other.ctx);
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ctx(other)?;
        Ok(self.add_scaled(other, &Rational::one(), None))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ctx(other)?;
        Ok(self.mul_impl(other))
    }

    /// `self + c * m * other`, merging sorted term lists.
    pub fn add_scaled(&self, other: &Polynomial, c: &Rational, m: Option<&Monomial>) -> Polynomial {
        self.assert_ctx(other);
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let order = self.ctx.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        let shifted = |t: &Term| -> Term {
            Term {
                mono: match m {
                    Some(m) => t.mono.mul(m),
                    None => t.mono.clone(),
                },
                coeff: &t.coeff * c,
            }
        };
        let mut pending: Option<Term> = other.terms.first().map(shifted);
        while i < self.terms.len() || pending.is_some() {
            match (self.terms.get(i), pending.as_ref()) {
                (Some(a), Some(b)) => match order.compare(&a.mono, &b.mono) {
                    Ordering::Greater => {
                        out.push(a.clone());
                        i += 1;
                    }
                    Ordering::Less => {
                        out.push(pending.take().unwrap());
                        j += 1;
                        pending = other.terms.get(j).map(shifted);
                    }
                    Ordering::Equal => {
                        let s = &a.coeff + &b.coeff;
                        if !s.is_zero() {
                            out.push(Term { mono: a.mono.clone(), coeff: s });
                        }
                        i += 1;
                        j += 1;
                        pending = other.terms.get(j).map(shifted);
                    }
                },
                (Some(a), None) => {
                    out.push(a.clone());
                    i += 1;
                }
                (None, Some(_)) => {
                    out.push(pending.take().unwrap());
                    j += 1;
                    pending = other.terms.get(j).map(shifted);
                }
                (None, None) => unreachable!(),
            }
        }
        Polynomial { ctx: self.ctx.clone(), terms: out }
    }

    fn mul_impl(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ctx);
        }
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        if small.len() == 1 {
            let t = &small.terms[0];
            return big.mul_term(&t.mono, &t.coeff);
        }
        let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(self.len() * other.len());
        for a in &self.terms {
            for b in &other.terms {
                let m = a.mono.mul(&b.mono);
                let c = &a.coeff * &b.coeff;
                match acc.get_mut(&m) {
                    Some(v) => *v += &c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Polynomial::from_terms(&self.ctx, acc)
    }

    /// Multiplication by `c * m`; ordering is preserved by monomial orders.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ctx);
        }
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|t| Term { mono: t.mono.mul(m), coeff: &t.coeff * c }).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        self.mul_term(&Monomial::one(self.ctx.arity()), c)
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ctx);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Divides by the leading coefficient. Zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            Some(c) if !c.is_one() => self.scale(&c.inv().unwrap()),
            _ => self.clone(),
        }
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn partial(&self, var: usize) -> Polynomial {
        assert!(var < self.ctx.arity(), "variable index out of range");
        // dividing every surviving monomial by the same variable keeps the
        // relative order, so the result is already canonical
        let terms = self
            .terms
            .iter()
            .filter(|t| t.mono.exp(var) > 0)
            .map(|t| {
                let e = t.mono.exp(var);
                let mut mono = t.mono.clone();
                mono.set_exp(var, e - 1);
                Term { mono, coeff: &t.coeff * &Rational::from(e as i64) }
            })
            .collect();
        Polynomial::from_sorted(&self.ctx, terms)
    }

    pub fn partial_named(&self, name: &str) -> Result<Polynomial> {
        Ok(self.partial(self.ctx.index_of(name)?))
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.ctx.arity() {
            return Err(Error::ArityMismatch { expected: self.ctx.arity(), got: point.len() });
        }
        let mut cache: Vec<Vec<Rational>> = vec![vec![Rational::one()]; point.len()];
        let mut acc = Rational::zero();
        for t in &self.terms {
            let mut v = t.coeff.clone();
            for (i, &e) in t.mono.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let powers = &mut cache[i];
                while powers.len() <= e as usize {
                    let next = powers.last().unwrap() * &point[i];
                    powers.push(next);
                }
                v *= &powers[e as usize];
            }
            acc += &v;
        }
        Ok(acc)
    }

    pub fn evaluate_f64(&self, point: &[f64]) -> f64 {
        assert_eq!(point.len(), self.ctx.arity());
        self.terms
            .iter()
            .map(|t| t.mono.exps().iter().zip(point).fold(t.coeff.to_f64(), |acc, (&e, &x)| acc * x.powi(e as i32)))
            .sum()
    }

    /// Ring homomorphism sending variable `i` to `images[i]`. The images may
    /// live in another context; the result lives in theirs.
    pub fn compose(&self, images: &[Polynomial], target: &Ctx) -> Polynomial {
        assert_eq!(images.len(), self.ctx.arity());
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| {
                assert!(same_ctx(p.ctx(), target), "image context mismatch");
                vec![Polynomial::one(target), p.clone()]
            })
            .collect();
        let mut acc = Polynomial::zero(target);
        for t in &self.terms {
            let mut v = Polynomial::constant(target, t.coeff.clone());
            for (i, &e) in t.mono.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let ps = &mut powers[i];
                while ps.len() <= e as usize {
                    let next = &ps[ps.len() - 1] * &ps[1];
                    ps.push(next);
                }
                v = &v * &ps[e as usize];
            }
            acc = &acc + &v;
        }
        acc
    }

    /// Substitutes `value` for variable `var`, staying in the same context.
    pub fn substitute(&self, var: usize, value: &Polynomial) -> Polynomial {
        let images: Vec<Polynomial> = (0..self.ctx.arity())
            .map(|i| if i == var { value.clone() } else { Polynomial::var(&self.ctx, i) })
            .collect();
        self.compose(&images, &self.ctx)
    }

    /// Re-expresses the polynomial in `target`, where variable `i` of the
    /// current context becomes variable `map[i]` of the target.
    pub fn embed(&self, target: &Ctx, map: &[usize]) -> Polynomial {
        assert_eq!(map.len(), self.ctx.arity());
        let terms = self.terms.iter().map(|t| {
            let mut m = Monomial::one(target.arity());
            for (i, &e) in t.mono.exps().iter().enumerate() {
                if e > 0 {
                    m.set_exp(map[i], m.exp(map[i]) + e);
                }
            }
            (m, t.coeff.clone())
        });
        Polynomial::from_terms(target, terms)
    }

    /// Embeds by matching variable names. Fails if some used variable is
    /// missing from the target.
    pub fn embed_by_name(&self, target: &Ctx) -> Result<Polynomial> {
        let support = self.support();
        let mut map = vec![0; self.ctx.arity()];
        for (i, slot) in map.iter_mut().enumerate() {
            match target.index_of(self.ctx.name(i)) {
                Ok(j) => *slot = j,
                Err(e) if support.contains(&i) => return Err(e),
                Err(_) => {}
            }
        }
        Ok(self.embed(target, &map))
    }

    /// Same polynomial, reordered for a context with another monomial order
    /// but the same names.
    pub fn reorder(&self, target: &Ctx) -> Polynomial {
        assert_eq!(self.ctx.names(), target.names());
        Polynomial::from_terms(target, self.terms.iter().map(|t| (t.mono.clone(), t.coeff.clone())))
    }

    /// Coefficient list of the polynomial viewed as univariate in `var`:
    /// `result[k]` is the coefficient of `var^k`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Polynomial> {
        let d = self.degree_in(var) as usize;
        let mut buckets: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); d + 1];
        for t in &self.terms {
            let e = t.mono.exp(var) as usize;
            let mut m = t.mono.clone();
            m.set_exp(var, 0);
            buckets[e].push((m, t.coeff.clone()));
        }
        buckets.into_iter().map(|b| Polynomial::from_terms(&self.ctx, b)).collect()
    }

    pub fn render(&self) -> String {
        super::parse::render(self)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self.render())
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.add_scaled(rhs, &Rational::one(), None)
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.add_scaled(rhs, &-Rational::one(), None)
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.assert_ctx(rhs);
        self.mul_impl(rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}
