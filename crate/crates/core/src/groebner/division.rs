use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, Term};
use crate::rational::Rational;

/// Outcome of multivariate division: `p = Σ quotients[i]·divisors[i] + remainder`
/// with no term of the remainder divisible by a divisor's leading monomial.
#[derive(Debug, Clone)]
pub struct Division {
    pub quotients: Vec<Polynomial>,
    pub remainder: Polynomial,
}

/// Full reduction of `p` by `divisors`, first divisor in list order wins.
/// Zero divisors are ignored.
pub fn divide(p: &Polynomial, divisors: &[Polynomial]) -> Division {
    let ctx = p.ctx().clone();
    let mut quot: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); divisors.len()];
    let mut rem: Vec<Term> = Vec::new();
    let mut work = p.clone();
    while let Some(lt) = work.leading_term().cloned() {
        let hit = divisors.iter().enumerate().find(|(_, g)| g.leading_monomial().is_some_and(|m| m.divides(&lt.mono)));
        match hit {
            Some((i, g)) => {
                let g_lt = g.leading_term().unwrap();
                let m = g_lt.mono.quotient_of(&lt.mono);
                let c = &lt.coeff / &g_lt.coeff;
                work = work.add_scaled(g, &-&c, Some(&m));
                quot[i].push((m, c));
            }
            None => {
                rem.push(work.pop_leading().unwrap());
            }
        }
    }
    Division {
        quotients: quot.into_iter().map(|q| Polynomial::from_terms(&ctx, q)).collect(),
        remainder: Polynomial::from_sorted(&ctx, rem),
    }
}

/// Remainder only, counting reduction steps against `budget`.
pub(crate) fn reduce(p: &Polynomial, divisors: &[Polynomial], steps: &mut u64, budget: u64) -> Result<Polynomial> {
    let ctx = p.ctx().clone();
    let mut rem: Vec<Term> = Vec::new();
    let mut work = p.clone();
    while let Some(lt) = work.leading_term() {
        let hit = divisors.iter().find(|g| g.leading_monomial().is_some_and(|m| m.divides(&lt.mono)));
        match hit {
            Some(g) => {
                *steps += 1;
                if *steps > budget {
                    return Err(Error::Budget(budget));
                }
                let g_lt = g.leading_term().unwrap();
                let m = g_lt.mono.quotient_of(&lt.mono);
                let c = &lt.coeff / &g_lt.coeff;
                work = work.add_scaled(g, &-&c, Some(&m));
            }
            None => {
                rem.push(work.pop_leading().unwrap());
            }
        }
    }
    Ok(Polynomial::from_sorted(&ctx, rem))
}
