use crate::derivations::{VarietyPresentation, VectorField};
use crate::error::{Error, Result};
use crate::poly::{same_ctx, PolyMatrix, RatMatrix};
use crate::rational::Rational;

/// Fields evaluated at a point, one row per field.
pub fn field_matrix_at(fields: &[VectorField], point: &[Rational]) -> Result<RatMatrix> {
    let rows = fields.iter().map(|f| f.evaluate(point)).collect::<Result<Vec<_>>>()?;
    Ok(RatMatrix::from_rows(rows))
}

/// The fields span the tangent space at `point`: the evaluated coefficient
/// matrix has rank equal to the dimension.
pub fn span_at_point(fields: &[VectorField], x: &VarietyPresentation, point: &[Rational]) -> Result<bool> {
    x.require_point(point)?;
    if fields.is_empty() {
        return Ok(x.dim() == 0);
    }
    Ok(field_matrix_at(fields, point)?.rank() == x.dim())
}

/// The fields span the tangent space at every point: the relations together
/// with all `dim × dim` minors of the stacked coefficient matrix generate the
/// unit ideal.
pub fn span_everywhere(fields: &[VectorField], x: &VarietyPresentation) -> Result<bool> {
    let dim = x.dim();
    if dim == 0 {
        return Ok(true);
    }
    if fields.len() < dim {
        return Ok(false);
    }
    for f in fields {
        if !same_ctx(f.ctx(), x.ambient()) {
            return Err(Error::ContextMismatch);
        }
    }
    let m = PolyMatrix::from_rows(fields.iter().map(|f| f.coeffs().to_vec()).collect());
    let minors = m.minors(dim)?;
    x.relations().with_generators(minors)?.contains_one()
}
