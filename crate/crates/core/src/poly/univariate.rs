//! Dense univariate helpers for squarefree tests.

use super::polynomial::Polynomial;
use crate::error::{precondition, Result};
use crate::rational::Rational;

/// Dense coefficient vector, `c[k]` is the coefficient of `v^k`, trailing
/// zeros trimmed.
fn dense(p: &Polynomial, var: usize) -> Vec<Rational> {
    p.coefficients_in(var)
        .into_iter()
        .map(|c| c.as_constant().expect("univariate input"))
        .collect::<Vec<_>>()
        .into_iter()
        .rev()
        .skip_while(Rational::is_zero)
        .collect::<Vec<_>>()
        .into_iter()
        .rev()
        .collect()
}

fn rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = a.to_vec();
    let lead_inv = b.last().unwrap().inv().unwrap();
    while r.len() >= b.len() {
        let f = r.last().unwrap() * &lead_inv;
        let shift = r.len() - b.len();
        for (i, c) in b.iter().enumerate() {
            let d = &f * c;
            r[shift + i] -= &d;
        }
        r.pop();
        while r.last().is_some_and(Rational::is_zero) {
            r.pop();
        }
    }
    r
}

/// Degree of gcd(p, q) for polynomials in the single variable `var`.
pub fn gcd_degree(p: &Polynomial, q: &Polynomial, var: usize) -> Result<usize> {
    for f in [p, q] {
        if f.support().iter().any(|&v| v != var) {
            return Err(precondition("gcd_degree expects univariate polynomials"));
        }
    }
    let mut a = dense(p, var);
    let mut b = dense(q, var);
    if a.is_empty() && b.is_empty() {
        return Err(precondition("gcd of two zero polynomials"));
    }
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    Ok(a.len() - 1)
}

/// True when `p` (univariate in `var`, nonconstant) has only simple roots.
pub fn is_squarefree(p: &Polynomial, var: usize) -> Result<bool> {
    if p.is_constant() {
        return Err(precondition("squarefree test needs a nonconstant polynomial"));
    }
    Ok(gcd_degree(p, &p.partial(var), var)? == 0)
}
