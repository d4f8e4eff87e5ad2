use crate::derivations::VectorField;
use crate::error::{precondition, Error, Result};
use crate::poly::{same_ctx, Ctx, PolyMatrix, Polynomial};

/// The field `D_y(p)`: cofactor expansion along the first row of the
/// determinant whose first row holds `∂/∂y_1, …, ∂/∂y_{l+1}` and whose row
/// `i + 1` holds the partials of `p_i` in the `y` variables.
///
/// The field annihilates every `p_i`: applying it to `p_i` yields a
/// determinant with two equal rows.
pub fn det_vector_field(relations: &[Polynomial], y: &[usize]) -> Result<VectorField> {
    let Some(first) = relations.first() else {
        return Err(precondition("determinant field needs at least one relation"));
    };
    let ctx: Ctx = first.ctx().clone();
    if relations.iter().any(|p| !same_ctx(p.ctx(), &ctx)) {
        return Err(Error::ContextMismatch);
    }
    if y.len() != relations.len() + 1 {
        return Err(Error::ArityMismatch { expected: relations.len() + 1, got: y.len() });
    }
    for (k, &v) in y.iter().enumerate() {
        if v >= ctx.arity() {
            return Err(precondition(format!("variable index {v} out of range")));
        }
        if y[..k].contains(&v) {
            return Err(Error::DuplicateVariable(ctx.name(v).to_string()));
        }
    }
    let rows: Vec<Vec<Polynomial>> = relations.iter().map(|p| y.iter().map(|&v| p.partial(v)).collect()).collect();
    let m = PolyMatrix::from_rows(rows);
    let all_rows: Vec<usize> = (0..relations.len()).collect();
    let mut field = VectorField::zero(&ctx);
    let mut coeffs: Vec<Polynomial> = field.coeffs().to_vec();
    for (j, &v) in y.iter().enumerate() {
        let cols: Vec<usize> = (0..y.len()).filter(|&c| c != j).collect();
        let minor = m.submatrix(&all_rows, &cols).det()?;
        coeffs[v] = if j % 2 == 0 { minor } else { -&minor };
    }
    field = VectorField::new(&ctx, coeffs)?;
    Ok(field)
}

/// [`det_vector_field`] with the `y` variables given by name.
pub fn det_vector_field_named(relations: &[Polynomial], y: &[&str]) -> Result<VectorField> {
    let Some(first) = relations.first() else {
        return Err(precondition("determinant field needs at least one relation"));
    };
    let idx = y.iter().map(|n| first.ctx().index_of(n)).collect::<Result<Vec<_>>>()?;
    det_vector_field(relations, &idx)
}
