//! Buchberger completion with the Gebauer–Möller pair criteria and the
//! normal selection strategy.

use std::cmp::Ordering;

use super::division::reduce;
use crate::error::Result;
use crate::poly::{Monomial, MonomialOrder, Polynomial};
use crate::rational::Rational;

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct State {
    basis: Vec<Polynomial>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    order: MonomialOrder,
    steps: u64,
    budget: u64,
}

fn lm(p: &Polynomial) -> &Monomial {
    p.leading_monomial().expect("nonzero basis element")
}

impl State {
    fn reducers(&self) -> Vec<Polynomial> {
        self.basis.iter().zip(&self.active).filter(|(_, &a)| a).map(|(p, _)| p.clone()).collect()
    }

    /// Gebauer–Möller update after appending the new element `h`.
    fn update(&mut self, h: Polynomial) {
        let hi = self.basis.len();
        let h_lm = lm(&h).clone();

        let candidates: Vec<Pair> = (0..hi)
            .filter(|&g| self.active[g])
            .map(|g| Pair { i: g, j: hi, lcm: lm(&self.basis[g]).lcm(&h_lm) })
            .collect();

        // chain criterion among the new pairs: keep a pair unless another new
        // pair has a properly dividing lcm (or an equal lcm seen earlier)
        let mut kept: Vec<Pair> = Vec::new();
        for (k, p) in candidates.iter().enumerate() {
            let g_lm = lm(&self.basis[p.i]);
            if g_lm.coprime(&h_lm) {
                kept.push(p.clone());
                continue;
            }
            let dominated = candidates
                .iter()
                .enumerate()
                .any(|(l, q)| l != k && q.lcm.divides(&p.lcm) && (q.lcm != p.lcm || l < k));
            if !dominated {
                kept.push(p.clone());
            }
        }
        // product criterion: coprime leading monomials need no S-polynomial
        let new_pairs: Vec<Pair> = kept.into_iter().filter(|p| !lm(&self.basis[p.i]).coprime(&h_lm)).collect();

        // chain criterion on old pairs through the new element
        let basis = &self.basis;
        self.pairs.retain(|p| {
            let l = &p.lcm;
            !(h_lm.divides(l) && lm(&basis[p.i]).lcm(&h_lm) != *l && lm(&basis[p.j]).lcm(&h_lm) != *l)
        });
        self.pairs.extend(new_pairs);

        for g in 0..hi {
            if self.active[g] && h_lm.divides(lm(&self.basis[g])) {
                self.active[g] = false;
            }
        }
        self.basis.push(h);
        self.active.push(true);
    }

    fn select(&mut self) -> Option<Pair> {
        let order = self.order;
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| order.compare(&a.lcm, &b.lcm).then(a.j.cmp(&b.j)).then(a.i.cmp(&b.i)))
            .map(|(k, _)| k)?;
        Some(self.pairs.swap_remove(best))
    }
}

fn s_polynomial(f: &Polynomial, g: &Polynomial, lcm: &Monomial) -> Polynomial {
    let f_lt = f.leading_term().unwrap();
    let g_lt = g.leading_term().unwrap();
    let mf = f_lt.mono.quotient_of(lcm);
    let mg = g_lt.mono.quotient_of(lcm);
    let a = f.mul_term(&mf, &f_lt.coeff.inv().unwrap());
    a.add_scaled(g, &-g_lt.coeff.inv().unwrap(), Some(&mg))
}

/// Reduced Gröbner basis of `gens`, monic, sorted by increasing leading
/// monomial. The zero ideal yields an empty basis.
pub(crate) fn reduced_basis(gens: &[Polynomial], budget: u64) -> Result<Vec<Polynomial>> {
    let Some(first) = gens.iter().find(|g| !g.is_zero()) else {
        return Ok(Vec::new());
    };
    let ctx = first.ctx().clone();
    let mut st =
        State { basis: Vec::new(), active: Vec::new(), pairs: Vec::new(), order: ctx.order(), steps: 0, budget };

    // feed generators in increasing leading-monomial order so small
    // elements reduce the larger ones first
    let mut input: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    input.sort_by(|a, b| st.order.compare(lm(a), lm(b)));
    for g in input {
        let r = reduce(&g, &st.reducers(), &mut st.steps, st.budget)?;
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return Ok(vec![Polynomial::one(&ctx)]);
        }
        st.update(r.monic());
    }

    while let Some(pair) = st.select() {
        let s = s_polynomial(&st.basis[pair.i], &st.basis[pair.j], &pair.lcm);
        let r = reduce(&s, &st.reducers(), &mut st.steps, st.budget)?;
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return Ok(vec![Polynomial::one(&ctx)]);
        }
        st.update(r.monic());
    }

    // minimal basis: the active elements have pairwise non-dividing leading
    // monomials; interreduce tails
    let mut minimal = st.reducers();
    minimal.sort_by(|a, b| st.order.compare(lm(a), lm(b)));
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Polynomial> =
            minimal.iter().enumerate().filter(|(l, _)| *l != k).map(|(_, p)| p.clone()).collect();
        let head = minimal[k].leading_term().unwrap().clone();
        let mut tail = minimal[k].clone();
        tail.pop_leading();
        let tail = reduce(&tail, &others, &mut st.steps, st.budget)?;
        let head_poly = Polynomial::monomial(&ctx, head.mono, Rational::one());
        reduced.push((&head_poly + &tail).monic());
    }
    debug_assert!(reduced.windows(2).all(|w| st.order.compare(lm(&w[0]), lm(&w[1])) == Ordering::Less));
    Ok(reduced)
}
