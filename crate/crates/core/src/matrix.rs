//! Dense matrices over a [`FieldCtx`] and exact Gaussian elimination.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};

/// A column vector, as a plain list of entries.
pub type Vector = Vec<FieldElement>;

#[derive(Clone, PartialEq, Eq)]
pub struct FFMatrix {
    ctx: FieldCtx,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl fmt::Debug for FFMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FFMatrix[{}]", self.ctx.describe())?;
        f.debug_list()
            .entries(
                self.row_iter()
                    .map(|r| r.iter().map(|x| x.encoding()).collect::<Vec<_>>()),
            )
            .finish()
    }
}

impl FFMatrix {
    pub fn new(ctx: &FieldCtx, rows: usize, cols: usize, data: Vec<FieldElement>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch("matrix dimensions must be positive".into()));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|x| !ctx.contains(**x)) {
            return Err(Error::InvalidInput(format!(
                "entry {} is not an element of {}",
                bad.encoding(),
                ctx.describe()
            )));
        }
        Ok(FFMatrix {
            ctx: ctx.clone(),
            rows,
            cols,
            data,
        })
    }

    pub fn from_rows(ctx: &FieldCtx, rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        FFMatrix::new(ctx, r, c, rows.into_iter().flatten().collect())
    }

    /// Matrix from integer rows, reduced into the prime field.
    ///
    /// ```
    /// use pfss::{FieldCtx, FFMatrix};
    /// let f2 = FieldCtx::prime(2).unwrap();
    /// let m = FFMatrix::from_ints(&f2, &[vec![1, 1], vec![0, 3]]).unwrap();
    /// assert_eq!(m.rank(), 2);
    /// ```
    pub fn from_ints(ctx: &FieldCtx, rows: &[Vec<i64>]) -> Result<Self> {
        FFMatrix::from_rows(
            ctx,
            rows.iter()
                .map(|r| r.iter().map(|&v| ctx.from_int(v)).collect())
                .collect(),
        )
    }

    /// Matrix from rows of canonical encodings.
    pub fn from_codes(ctx: &FieldCtx, rows: &[Vec<u64>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| ctx.element(v)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        FFMatrix::from_rows(ctx, rows)
    }

    pub fn zeros(ctx: &FieldCtx, rows: usize, cols: usize) -> Self {
        FFMatrix {
            ctx: ctx.clone(),
            rows,
            cols,
            data: vec![FieldElement::ZERO; rows * cols],
        }
    }

    pub fn identity(ctx: &FieldCtx, n: usize) -> Self {
        let mut m = FFMatrix::zeros(ctx, n, n);
        for i in 0..n {
            m.set(i, i, FieldElement::ONE);
        }
        m
    }

    /// Diagonal matrix.
    pub fn diagonal(ctx: &FieldCtx, diag: &[FieldElement]) -> Self {
        let mut m = FFMatrix::zeros(ctx, diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(ctx: &FieldCtx, cols: &[Vector]) -> Result<Self> {
        let n = cols.first().map_or(0, |c| c.len());
        let mut m = FFMatrix::new(ctx, n, cols.len(), vec![FieldElement::ZERO; n * cols.len()])?;
        for (j, c) in cols.iter().enumerate() {
            if c.len() != n {
                return Err(Error::DimensionMismatch("columns of different lengths".into()));
            }
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        Ok(m)
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: FieldElement) {
        self.data[i * self.cols + j] = x;
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[FieldElement]> {
        self.data.chunks(self.cols)
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_codes(&self) -> Vec<Vec<u64>> {
        self.row_iter()
            .map(|r| r.iter().map(|x| x.encoding()).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| self.get(i, j) == if i == j { FieldElement::ONE } else { FieldElement::ZERO })
            })
    }

    /// Same entries viewed in a larger field of the same tower.
    pub fn embed(&self, ctx: &FieldCtx) -> Result<Self> {
        if !self.ctx.is_subfield_of(ctx) {
            return Err(Error::NotAnExtension);
        }
        let mut m = self.clone();
        m.ctx = ctx.clone();
        Ok(m)
    }

    /// Same entries viewed in the smallest tower prefix containing them.
    pub fn descend(&self) -> Self {
        let mut m = self.clone();
        m.ctx = self.ctx.truncate(self.max_level());
        m
    }

    /// Like [`descend`](Self::descend), but never below `floor`, which
    /// must be a prefix of this matrix's tower.
    pub fn descend_over(&self, floor: &FieldCtx) -> Self {
        let level = self.max_level().max(floor.depth());
        let mut m = self.clone();
        m.ctx = self.ctx.truncate(level);
        m
    }

    /// Largest tower level used by any entry.
    pub fn max_level(&self) -> usize {
        self.data.iter().map(|&x| self.ctx.level_of(x)).max().unwrap_or(0)
    }

    fn common_ctx(&self, other: &FFMatrix) -> Result<FieldCtx> {
        self.ctx.join(&other.ctx)
    }

    pub fn add(&self, other: &FFMatrix) -> Result<Self> {
        self.zip_with(other, |ctx, a, b| ctx.add(a, b))
    }

    pub fn sub(&self, other: &FFMatrix) -> Result<Self> {
        self.zip_with(other, |ctx, a, b| ctx.sub(a, b))
    }

    fn zip_with(
        &self,
        other: &FFMatrix,
        f: impl Fn(&FieldCtx, FieldElement, FieldElement) -> FieldElement,
    ) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let ctx = self.common_ctx(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f(&ctx, a, b))
            .collect();
        Ok(FFMatrix {
            ctx,
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, c: FieldElement) -> Self {
        let mut m = self.clone();
        for x in m.data.iter_mut() {
            *x = self.ctx.mul(*x, c);
        }
        m
    }

    pub fn mul(&self, other: &FFMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let ctx = self.common_ctx(other)?;
        let mut out = FFMatrix::zeros(&ctx, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = ctx.add(out.data[idx], ctx.mul(a, other.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    /// `M v`; the vector is read in this matrix's field.
    pub fn mul_vec(&self, v: &[FieldElement]) -> Vector {
        assert_eq!(v.len(), self.cols, "vector length must match column count");
        self.row_iter()
            .map(|r| {
                r.iter().zip(v).fold(FieldElement::ZERO, |acc, (&a, &b)| {
                    self.ctx.add(acc, self.ctx.mul(a, b))
                })
            })
            .collect()
    }

    pub fn pow(&self, mut e: u128) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("power of a non-square matrix".into()));
        }
        let mut base = self.clone();
        let mut acc = FFMatrix::identity(&self.ctx, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn transpose(&self) -> Self {
        let mut m = FFMatrix::zeros(&self.ctx, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j));
            }
        }
        m
    }

    /// Rows stacked on top of each other.
    pub fn vstack(blocks: &[FFMatrix]) -> Result<Self> {
        let first = blocks
            .first()
            .ok_or_else(|| Error::DimensionMismatch("empty stack".into()))?;
        let mut ctx = first.ctx.clone();
        let mut data = Vec::new();
        for b in blocks {
            if b.cols != first.cols {
                return Err(Error::DimensionMismatch("stacked blocks differ in width".into()));
            }
            ctx = ctx.join(&b.ctx)?;
            data.extend_from_slice(&b.data);
        }
        Ok(FFMatrix {
            ctx,
            rows: data.len() / first.cols,
            cols: first.cols,
            data,
        })
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (FFMatrix, Vec<usize>) {
        let ctx = &self.ctx;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = ctx.inv(m.get(r, c)).expect("nonzero pivot");
            for j in 0..m.cols {
                m.set(r, j, ctx.mul(m.get(r, j), inv));
            }
            for i in 0..m.rows {
                let f = m.get(i, c);
                if i != r && !f.is_zero() {
                    for j in 0..m.cols {
                        let v = ctx.sub(m.get(i, j), ctx.mul(f, m.get(r, j)));
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space `{v : M v = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![FieldElement::ZERO; self.cols];
            v[free] = FieldElement::ONE;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = self.ctx.neg(r.get(row, free));
            }
            basis.push(v);
        }
        basis
    }

    pub fn invert(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = FFMatrix::zeros(&self.ctx, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, FieldElement::ONE);
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::SingularMatrix);
        }
        let mut inv = FFMatrix::zeros(&self.ctx, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j));
            }
        }
        Ok(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// One solution of `M x = b`, if any.
    pub fn solve(&self, b: &[FieldElement]) -> Option<Vector> {
        assert_eq!(b.len(), self.rows, "right-hand side length must match row count");
        let mut aug = FFMatrix::zeros(&self.ctx, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i]);
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![FieldElement::ZERO; self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, self.cols);
        }
        Some(x)
    }
}

/// Product of a list of matrices in the given order: `[A, B, C]` gives `ABC`.
pub fn matmul_chain(ms: &[FFMatrix]) -> Result<FFMatrix> {
    let (first, rest) = ms
        .split_first()
        .ok_or_else(|| Error::DimensionMismatch("empty product".into()))?;
    rest.iter().try_fold(first.clone(), |acc, m| acc.mul(m))
}

/// Rank of a set of vectors of equal length.
pub fn span_rank(ctx: &FieldCtx, vs: &[Vector]) -> usize {
    if vs.is_empty() {
        return 0;
    }
    FFMatrix::from_rows(ctx, vs.to_vec()).map_or(0, |m| m.rank())
}

/// Basis of the intersection of the null spaces of the given matrices.
pub fn common_kernel(ms: &[FFMatrix]) -> Result<Vec<Vector>> {
    Ok(FFMatrix::vstack(ms)?.kernel())
}

pub fn vec_add(ctx: &FieldCtx, a: &[FieldElement], b: &[FieldElement]) -> Vector {
    a.iter().zip(b).map(|(&x, &y)| ctx.add(x, y)).collect()
}

pub fn vec_scale(ctx: &FieldCtx, c: FieldElement, a: &[FieldElement]) -> Vector {
    a.iter().map(|&x| ctx.mul(c, x)).collect()
}

pub fn is_zero_vec(v: &[FieldElement]) -> bool {
    v.iter().all(|x| x.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FieldCtx {
        FieldCtx::prime(2).unwrap()
    }

    #[test]
    fn rank_kernel_inverse() {
        let k = f2();
        let m = FFMatrix::from_ints(&k, &[vec![1, 1], vec![0, 1]]).unwrap();
        assert!(m.kernel().is_empty());
        assert!(m.mul(&m.invert().unwrap()).unwrap().is_identity());
        let s = FFMatrix::from_ints(&k, &[vec![1, 1], vec![0, 0]]).unwrap();
        assert_eq!(s.invert(), Err(Error::SingularMatrix));
        assert_eq!(s.rank(), 1);
        let z = FFMatrix::zeros(&k, 3, 3);
        assert_eq!(z.kernel().len(), 3);
    }

    #[test]
    fn solve_and_chain() {
        let f5 = FieldCtx::prime(5).unwrap();
        let a = FFMatrix::from_ints(&f5, &[vec![1, 2], vec![3, 4]]).unwrap();
        let b = vec![f5.from_int(1), f5.from_int(0)];
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul_vec(&x), b);
        let c = matmul_chain(&[a.clone(), a.clone(), a.clone()]).unwrap();
        assert_eq!(c, a.pow(3).unwrap());
    }

    #[test]
    fn embed_and_descend() {
        let k = f2();
        let gf4 = k.extend(&crate::Poly::from_ints(&k, &[1, 1, 1])).unwrap();
        let m = FFMatrix::identity(&k, 2);
        let e = m.embed(&gf4).unwrap();
        assert_eq!(e.ctx().size(), 4);
        assert_eq!(e.descend(), m);
        assert_eq!(e.embed(&k), Err(Error::NotAnExtension));
    }
}
