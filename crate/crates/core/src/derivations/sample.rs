//! Exact rational points on varieties whose relations are affine in some
//! subset of the coordinates.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::variety::VarietyPresentation;
use crate::error::{invalid, Error, Result};
use crate::poly::{combinations, Polynomial, RatMatrix};
use crate::rational::Rational;

const ATTEMPTS_PER_PIVOT_SET: usize = 16;

fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    let num: i64 = rng.gen_range(-4..=4);
    let den: i64 = if rng.gen_bool(0.25) { 2 } else { 1 };
    Rational::new(num, den)
}

/// Pivot sets of size `r` in which every relation is jointly affine.
fn affine_pivot_sets(x: &VarietyPresentation) -> Vec<Vec<usize>> {
    let r = x.generators().len();
    combinations(x.arity(), r).into_iter().filter(|s| x.generators().iter().all(|g| g.degree_in_set(s) <= 1)).collect()
}

/// Solves the relations for the variables outside `fixed`, which must be
/// jointly affine in them and give a uniquely solvable square system.
pub fn solve_with_assignment(x: &VarietyPresentation, fixed: &[(usize, Rational)]) -> Result<Vec<Rational>> {
    let n = x.arity();
    let mut values: Vec<Option<Rational>> = vec![None; n];
    for (i, v) in fixed {
        if *i >= n {
            return Err(invalid(format!("variable index {i} out of range")));
        }
        values[*i] = Some(v.clone());
    }
    let pivots: Vec<usize> = (0..n).filter(|i| values[*i].is_none()).collect();
    let rels = x.generators();
    if pivots.len() != rels.len() {
        return Err(invalid(format!("{} unknowns for {} relations", pivots.len(), rels.len())));
    }
    if rels.iter().any(|g| g.degree_in_set(&pivots) > 1) {
        return Err(invalid("relations are not affine in the unknowns"));
    }
    solve_linear(x, &values, &pivots).ok_or_else(|| Error::Precondition("singular linear system".into()))
}

fn solve_linear(x: &VarietyPresentation, values: &[Option<Rational>], pivots: &[usize]) -> Option<Vec<Rational>> {
    let ctx = x.ambient();
    // substitute fixed values, keep pivots symbolic
    let images: Vec<Polynomial> = values
        .iter()
        .enumerate()
        .map(|(i, v)| match v {
            Some(c) => Polynomial::constant(ctx, c.clone()),
            None => Polynomial::var(ctx, i),
        })
        .collect();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for g in x.generators() {
        let h = g.compose(&images, ctx);
        let row: Vec<Rational> =
            pivots.iter().map(|&p| h.partial(p).as_constant().expect("affine in pivots")).collect();
        rows.push(row);
        rhs.push(-h.constant_term());
    }
    let sol = if pivots.is_empty() { Vec::new() } else { RatMatrix::from_rows(rows).solve(&rhs)? };
    let mut out: Vec<Rational> = values.iter().map(|v| v.clone().unwrap_or_default()).collect();
    for (k, &p) in pivots.iter().enumerate() {
        out[p] = sol[k].clone();
    }
    if x.contains_point(&out).ok()? {
        Some(out)
    } else {
        None
    }
}

/// A rational point on the variety, deterministic per seed.
///
/// Random small rationals are assigned to all coordinates outside a pivot
/// set in which the relations are affine, and the resulting square linear
/// system is solved exactly.
pub fn sample_point(x: &VarietyPresentation, seed: u64) -> Result<Vec<Rational>> {
    sample_with(x, seed, small_rational)
}

/// Like [`sample_point`], with free coordinates drawn as nonzero rationals
/// of larger height, so the point avoids any fixed proper subvariety with
/// high probability.
pub fn sample_generic_point(x: &VarietyPresentation, seed: u64) -> Result<Vec<Rational>> {
    sample_with(x, seed, generic_rational)
}

fn generic_rational(rng: &mut ChaCha8Rng) -> Rational {
    let num: i64 = rng.gen_range(1..=997);
    let den: i64 = rng.gen_range(1..=61);
    let sign = if rng.gen_bool(0.5) { -1 } else { 1 };
    Rational::new(sign * num, den)
}

fn sample_with(x: &VarietyPresentation, seed: u64, draw: fn(&mut ChaCha8Rng) -> Rational) -> Result<Vec<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = x.arity();
    let sets = affine_pivot_sets(x);
    let mut tries = 0;
    for _round in 0..ATTEMPTS_PER_PIVOT_SET {
        for pivots in &sets {
            tries += 1;
            let values: Vec<Option<Rational>> =
                (0..n).map(|i| if pivots.contains(&i) { None } else { Some(draw(&mut rng)) }).collect();
            if let Some(p) = solve_linear(x, &values, pivots) {
                return Ok(p);
            }
        }
    }
    Err(Error::SamplingFailed(tries))
}

/// Several distinct sample points drawn from consecutive seeds.
pub fn sample_points(x: &VarietyPresentation, seed: u64, count: usize) -> Result<Vec<Vec<Rational>>> {
    let mut out: Vec<Vec<Rational>> = Vec::with_capacity(count);
    let mut s = seed;
    let mut misses = 0;
    while out.len() < count {
        let p = sample_point(x, s)?;
        s = s.wrapping_add(1);
        if out.contains(&p) {
            misses += 1;
            if misses > 64 * count {
                return Err(Error::SamplingFailed(misses));
            }
            continue;
        }
        out.push(p);
    }
    Ok(out)
}
