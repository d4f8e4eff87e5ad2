use crate::derivations::{VarietyPresentation, VectorField};
use crate::error::{precondition, Result};
use crate::gv::det_vector_field;
use crate::poly::{Polynomial, RatMatrix};
use crate::rational::Rational;

/// A coordinate function `z_j − x_j` in the kernel of a determinant field
/// that separates a tangent vector from the field's direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelFunction {
    pub function: Polynomial,
    pub coordinate: usize,
    /// `d_x f(W)`, nonzero.
    pub pairing: Rational,
    /// Coefficient of `V_x` in the decomposition of `W`.
    pub lambda: Rational,
    /// Coefficients of the companion fields, indexed by coordinates
    /// outside the variable tuple.
    pub mu: Vec<(usize, Rational)>,
}

/// Given `V = D_y(p)` for the variety's relations, a point `x` and a tangent
/// vector `W ∉ span(V_x)`, writes `W = λV_x + Σ μ_i (V_i)_x` with the
/// companion fields `V_i = D_{(y \ r) ∪ {z_i}}(p)` (pivot `r ∈ y` the first
/// coordinate with `V_r(x) ≠ 0`) and returns `z_j − x_j` for the first `j`
/// with `μ_j ≠ 0`.
pub fn find_kernel_function(
    x: &VarietyPresentation,
    y: &[usize],
    point: &[Rational],
    w: &[Rational],
) -> Result<KernelFunction> {
    x.require_point(point)?;
    if !x.is_tangent_vector(point, w)? {
        return Err(precondition("vector is not tangent to the variety at the point"));
    }
    let rels = x.generators();
    let v = det_vector_field(rels, y)?;
    let vx = v.evaluate(point)?;
    let Some(pos) = y.iter().position(|&r| !vx[r].is_zero()) else {
        return Err(precondition("determinant field vanishes at the point"));
    };
    let in_span = RatMatrix::from_rows(vec![vx.clone(), w.to_vec()]).rank() < 2;
    if in_span {
        return Err(precondition("vector lies in the span of the determinant field"));
    }
    let outside: Vec<usize> = (0..x.arity()).filter(|i| !y.contains(i)).collect();
    let mut columns: Vec<Vec<Rational>> = vec![vx.clone()];
    let mut companions: Vec<VectorField> = Vec::new();
    for &zi in &outside {
        let mut yi = y.to_vec();
        yi[pos] = zi;
        let vi = det_vector_field(rels, &yi)?;
        columns.push(vi.evaluate(point)?);
        companions.push(vi);
    }
    let n = x.arity();
    let k = columns.len();
    let mut aug = Vec::with_capacity(n);
    for r in 0..n {
        let mut row: Vec<Rational> = columns.iter().map(|c| c[r].clone()).collect();
        row.push(w[r].clone());
        aug.push(row);
    }
    let (red, pivots) = RatMatrix::from_rows(aug).row_echelon();
    if pivots.contains(&k) {
        return Err(precondition("vector is not in the span of the determinant field and its companions"));
    }
    let mut coeffs = vec![Rational::zero(); k];
    for (row, &p) in pivots.iter().enumerate() {
        coeffs[p] = red[row][k].clone();
    }
    let mu: Vec<(usize, Rational)> = outside.iter().copied().zip(coeffs[1..].iter().cloned()).collect();
    for (j, m) in &mu {
        if m.is_zero() {
            continue;
        }
        let zj = Polynomial::var(x.ambient(), *j);
        let f = &zj - &Polynomial::constant(x.ambient(), point[*j].clone());
        let pairing = w[*j].clone();
        if x.is_zero(&v.apply(&f)?)? && !pairing.is_zero() {
            return Ok(KernelFunction { function: f, coordinate: *j, pairing, lambda: coeffs[0].clone(), mu });
        }
    }
    Err(precondition("no coordinate function separates the vector"))
}
