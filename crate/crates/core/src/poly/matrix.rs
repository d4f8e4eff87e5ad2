use std::collections::HashMap;
use std::fmt;

use super::context::{same_ctx, Ctx};
use super::polynomial::Polynomial;
use crate::error::{precondition, Error, Result};
use crate::rational::Rational;

/// Dense matrix of polynomials sharing one context, stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Polynomial>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count");
        if let Some(first) = entries.first() {
            assert!(entries.iter().all(|e| same_ctx(e.ctx(), first.ctx())));
        }
        PolyMatrix { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Polynomial>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::from_entries(r, c, rows.into_iter().flatten().collect())
    }

    pub fn zero(ctx: &Ctx, rows: usize, cols: usize) -> Self {
        Self::from_entries(rows, cols, vec![Polynomial::zero(ctx); rows * cols])
    }

    pub fn identity(ctx: &Ctx, n: usize) -> Self {
        let mut m = Self::zero(ctx, n, n);
        for i in 0..n {
            m.set(i, i, Polynomial::one(ctx));
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: Polynomial) {
        self.entries[r * self.cols + c] = p;
    }

    pub fn row(&self, r: usize) -> &[Polynomial] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut out = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                out.push(self.get(r, c).clone());
            }
        }
        PolyMatrix::from_entries(self.cols, self.rows, out)
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::ArityMismatch { expected: self.cols, got: other.rows });
        }
        let ctx = self.entries.first().or(other.entries.first()).map(|p| p.ctx().clone());
        let Some(ctx) = ctx else {
            return Ok(PolyMatrix::from_entries(self.rows, other.cols, Vec::new()));
        };
        let mut out = Vec::with_capacity(self.rows * other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = Polynomial::zero(&ctx);
                for k in 0..self.cols {
                    let a = self.get(r, k);
                    let b = other.get(k, c);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.push(acc);
            }
        }
        Ok(PolyMatrix::from_entries(self.rows, other.cols, out))
    }

    pub fn neg(&self) -> PolyMatrix {
        PolyMatrix::from_entries(self.rows, self.cols, self.entries.iter().map(|e| -e).collect())
    }

    pub fn sub(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        PolyMatrix::from_entries(
            self.rows,
            self.cols,
            self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        )
    }

    pub fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> PolyMatrix {
        PolyMatrix::from_entries(self.rows, self.cols, self.entries.iter().map(f).collect())
    }

    /// Submatrix on the given row and column index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let mut out = Vec::with_capacity(rows.len() * cols.len());
        for &r in rows {
            for &c in cols {
                out.push(self.get(r, c).clone());
            }
        }
        PolyMatrix::from_entries(rows.len(), cols.len(), out)
    }

    /// Determinant by Laplace expansion along rows, memoized on column sets.
    pub fn det(&self) -> Result<Polynomial> {
        if !self.is_square() {
            return Err(precondition("determinant of a non-square matrix"));
        }
        let n = self.rows;
        let Some(first) = self.entries.first() else {
            return Err(precondition("determinant of an empty matrix"));
        };
        let ctx = first.ctx().clone();
        if n > 20 {
            return Err(precondition("determinant too large for cofactor expansion"));
        }
        let mut memo: HashMap<u32, Polynomial> = HashMap::new();
        Ok(self.det_rec(0, (1u32 << n) - 1, &ctx, &mut memo))
    }

    fn det_rec(&self, row: usize, cols: u32, ctx: &Ctx, memo: &mut HashMap<u32, Polynomial>) -> Polynomial {
        if cols == 0 {
            return Polynomial::one(ctx);
        }
        if let Some(v) = memo.get(&cols) {
            return v.clone();
        }
        let mut acc = Polynomial::zero(ctx);
        let mut sign_neg = false;
        for c in 0..self.cols {
            if cols & (1 << c) == 0 {
                continue;
            }
            let e = self.get(row, c);
            if !e.is_zero() {
                let minor = self.det_rec(row + 1, cols & !(1 << c), ctx, memo);
                let term = e * &minor;
                acc = if sign_neg { &acc - &term } else { &acc + &term };
            }
            sign_neg = !sign_neg;
        }
        memo.insert(cols, acc.clone());
        acc
    }

    /// All k×k minors with k = number of rows (maximal minors of a wide
    /// matrix), in lexicographic order of the chosen column sets.
    pub fn maximal_minors(&self) -> Result<Vec<Polynomial>> {
        let k = self.rows.min(self.cols);
        let mut out = Vec::new();
        for rows in combinations(self.rows, k) {
            for cols in combinations(self.cols, k) {
                out.push(self.submatrix(&rows, &cols).det()?);
            }
        }
        Ok(out)
    }

    /// All `k`×`k` minors.
    pub fn minors(&self, k: usize) -> Result<Vec<Polynomial>> {
        let mut out = Vec::new();
        for rows in combinations(self.rows, k) {
            for cols in combinations(self.cols, k) {
                out.push(self.submatrix(&rows, &cols).det()?);
            }
        }
        Ok(out)
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<RatMatrix> {
        let vals = self.entries.iter().map(|e| e.evaluate(point)).collect::<Result<Vec<_>>>()?;
        Ok(RatMatrix { rows: self.rows, cols: self.cols, entries: vals })
    }

    /// Exact rank of the matrix evaluated at `point`.
    pub fn rank_at_point(&self, point: &[Rational]) -> Result<usize> {
        Ok(self.evaluate(point)?.rank())
    }

    /// Inverse of a unitriangular matrix (unit diagonal, zero strictly above
    /// or strictly below) by back-substitution.
    pub fn unitriangular_inverse(&self) -> Result<PolyMatrix> {
        if !self.is_square() || self.rows == 0 {
            return Err(precondition("unitriangular inverse needs a non-empty square matrix"));
        }
        let n = self.rows;
        for i in 0..n {
            if !self.get(i, i).is_one() {
                return Err(precondition(format!("diagonal entry ({i},{i}) is not 1")));
            }
        }
        let lower = (0..n).all(|r| (r + 1..n).all(|c| self.get(r, c).is_zero()));
        let upper = (0..n).all(|r| (0..r).all(|c| self.get(r, c).is_zero()));
        if !lower && !upper {
            return Err(precondition("matrix is not unitriangular"));
        }
        let work = if lower { self.clone() } else { self.transpose() };
        // solve L X = I column by column, forward substitution
        let ctx = self.entries[0].ctx().clone();
        let mut inv = PolyMatrix::identity(&ctx, n);
        for c in 0..n {
            for r in (c + 1)..n {
                let mut acc = Polynomial::zero(&ctx);
                for k in c..r {
                    let l = work.get(r, k);
                    if !l.is_zero() {
                        acc = &acc + &(l * inv.get(k, c));
                    }
                }
                inv.set(r, c, -&acc);
            }
        }
        Ok(if lower { inv } else { inv.transpose() })
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|p| p.render()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Jacobian of `polys`: entry (i, j) is the partial of `polys[i]` with
/// respect to variable j of the shared context.
pub fn jacobian(polys: &[Polynomial]) -> Result<PolyMatrix> {
    let Some(first) = polys.first() else {
        return Err(precondition("jacobian of an empty list"));
    };
    let ctx = first.ctx().clone();
    if polys.iter().any(|p| !same_ctx(p.ctx(), &ctx)) {
        return Err(Error::ContextMismatch);
    }
    let n = ctx.arity();
    let mut entries = Vec::with_capacity(polys.len() * n);
    for p in polys {
        for v in 0..n {
            entries.push(p.partial(v));
        }
    }
    Ok(PolyMatrix::from_entries(polys.len(), n, entries))
}

/// Jacobian restricted to the listed variable columns.
pub fn jacobian_in(polys: &[Polynomial], vars: &[usize]) -> Result<PolyMatrix> {
    let full = jacobian(polys)?;
    let rows: Vec<usize> = (0..polys.len()).collect();
    Ok(full.submatrix(&rows, vars))
}

/// Dense rational matrix, the result of evaluating a [`PolyMatrix`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Rational>,
}

impl RatMatrix {
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        RatMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() }
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn rank(&self) -> usize {
        self.row_echelon().1.len()
    }

    /// Row-reduced echelon form and pivot columns.
    pub fn row_echelon(&self) -> (Vec<Vec<Rational>>, Vec<usize>) {
        let mut m: Vec<Vec<Rational>> =
            (0..self.rows).map(|r| self.entries[r * self.cols..(r + 1) * self.cols].to_vec()).collect();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            let Some(p) = (row..self.rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(row, p);
            let inv = m[row][col].inv().unwrap();
            for v in m[row].iter_mut() {
                *v = &*v * &inv;
            }
            for r in 0..self.rows {
                if r != row && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for c in 0..self.cols {
                        let d = &m[row][c] * &f;
                        m[r][c] -= &d;
                    }
                }
            }
            pivots.push(col);
            row += 1;
            if row == self.rows {
                break;
            }
        }
        (m, pivots)
    }

    /// Solves `A x = b` for square nonsingular `A`; `None` when singular.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(self.rows, b.len());
        let mut aug: Vec<Vec<Rational>> = (0..self.rows)
            .map(|r| {
                let mut row = self.entries[r * self.cols..(r + 1) * self.cols].to_vec();
                row.push(b[r].clone());
                row
            })
            .collect();
        let aug_m = RatMatrix::from_rows(std::mem::take(&mut aug));
        let (red, pivots) = aug_m.row_echelon();
        if pivots.len() != self.cols || pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        Some((0..self.cols).map(|i| red[i][self.cols].clone()).collect())
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, VarContext};

    fn p(s: &str, ctx: &Ctx) -> Polynomial {
        parse_poly(s, ctx).unwrap()
    }

    #[test]
    fn combinations_enumerate() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
        assert_eq!(combinations(5, 3).len(), 10);
    }

    #[test]
    fn sp4_jacobian() {
        let ctx = VarContext::of(&["z2", "z3", "w1", "w2", "w3"]);
        let rels = [p("w1*z2 + w2*z3 - 1", &ctx), p("w2*z2 + w3*z3", &ctx)];
        let j = jacobian(&rels).unwrap();
        let expect = [["w1", "w2", "z2", "z3", "0"], ["w2", "w3", "0", "z2", "z3"]];
        for r in 0..2 {
            for c in 0..5 {
                assert_eq!(j.get(r, c), &p(expect[r][c], &ctx));
            }
        }
        let pt: Vec<Rational> = [1, 0, 1, 0, 1].iter().map(|&v| Rational::from(v)).collect();
        assert_eq!(j.rank_at_point(&pt).unwrap(), 2);
    }

    #[test]
    fn rank_edge_cases() {
        let ctx = VarContext::of(&["x"]);
        let pt = [Rational::from(7)];
        assert_eq!(PolyMatrix::identity(&ctx, 3).rank_at_point(&pt).unwrap(), 3);
        assert_eq!(PolyMatrix::zero(&ctx, 2, 3).rank_at_point(&pt).unwrap(), 0);
        assert!(PolyMatrix::identity(&ctx, 2).rank_at_point(&[]).is_err());
    }

    #[test]
    fn constant_jacobian_is_zero() {
        let ctx = VarContext::of(&["x", "y"]);
        let j = jacobian(&[p("3", &ctx), p("-1/2", &ctx)]).unwrap();
        assert!(j.is_zero());
        let g = jacobian(&[p("x^2*y", &ctx)]).unwrap();
        assert_eq!((g.rows(), g.cols()), (1, 2));
    }

    #[test]
    fn det_matches_hand_expansion() {
        let ctx = VarContext::of(&["a", "b", "c", "d"]);
        let m = PolyMatrix::from_rows(vec![vec![p("a", &ctx), p("b", &ctx)], vec![p("c", &ctx), p("d", &ctx)]]);
        assert_eq!(m.det().unwrap(), p("a*d - b*c", &ctx));
        let id = PolyMatrix::identity(&ctx, 4);
        assert!(id.det().unwrap().is_one());
    }

    #[test]
    fn unitriangular_inverse_2x2() {
        let ctx = VarContext::of(&["z"]);
        let m = PolyMatrix::from_rows(vec![vec![p("1", &ctx), p("0", &ctx)], vec![p("z", &ctx), p("1", &ctx)]]);
        let inv = m.unitriangular_inverse().unwrap();
        assert_eq!(inv.get(1, 0), &p("-z", &ctx));
        assert_eq!(inv.get(0, 1), &p("0", &ctx));
    }

    #[test]
    fn unitriangular_inverse_3x3_back_substitution() {
        let ctx = VarContext::of(&["a", "b", "c", "d", "e", "f"]);
        let lower = PolyMatrix::from_rows(vec![
            vec![p("1", &ctx), p("0", &ctx), p("0", &ctx)],
            vec![p("a", &ctx), p("1", &ctx), p("0", &ctx)],
            vec![p("b", &ctx), p("c", &ctx), p("1", &ctx)],
        ]);
        let inv = lower.unitriangular_inverse().unwrap();
        // back-substitution by hand: (3,1) entry is a*c - b
        assert_eq!(inv.get(2, 0), &p("a*c - b", &ctx));
        let id = PolyMatrix::identity(&ctx, 3);
        assert_eq!(lower.mul(&inv).unwrap(), id);
        assert_eq!(inv.mul(&lower).unwrap(), id);

        let upper = PolyMatrix::from_rows(vec![
            vec![p("1", &ctx), p("d", &ctx), p("e", &ctx)],
            vec![p("0", &ctx), p("1", &ctx), p("f", &ctx)],
            vec![p("0", &ctx), p("0", &ctx), p("1", &ctx)],
        ]);
        let uinv = upper.unitriangular_inverse().unwrap();
        assert_eq!(uinv.get(0, 2), &p("d*f - e", &ctx));
        assert_eq!(upper.mul(&uinv).unwrap(), id);
    }

    #[test]
    fn unitriangular_inverse_rejects() {
        let ctx = VarContext::of(&["z"]);
        let m = PolyMatrix::from_rows(vec![vec![p("2", &ctx), p("0", &ctx)], vec![p("z", &ctx), p("1", &ctx)]]);
        assert!(m.unitriangular_inverse().is_err());
        let full = PolyMatrix::from_rows(vec![vec![p("1", &ctx), p("z", &ctx)], vec![p("z", &ctx), p("1", &ctx)]]);
        assert!(full.unitriangular_inverse().is_err());
    }

    #[test]
    fn solve_linear_system() {
        let a = RatMatrix::from_rows(vec![
            vec![Rational::from(2), Rational::from(1)],
            vec![Rational::from(1), Rational::from(3)],
        ]);
        let x = a.solve(&[Rational::from(3), Rational::from(4)]).unwrap();
        assert_eq!(x, vec![Rational::from(1), Rational::from(1)]);
        let sing = RatMatrix::from_rows(vec![
            vec![Rational::from(1), Rational::from(2)],
            vec![Rational::from(2), Rational::from(4)],
        ]);
        assert!(sing.solve(&[Rational::from(1), Rational::from(1)]).is_none());
    }
}
