//! Dense exact linear algebra over a [`FieldCtx`].
//!
//! Vectors are coordinate columns relative to the fixed standard basis `e`
//! of `V = GF(q)^g`. Subspaces are always passed around as explicit basis
//! sequences.

use crate::error::{Error, Result};
use crate::gf::{Automorphism, FieldCtx, FieldElement};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector(Vec<FieldElement>);

impl Vector {
    pub fn new(entries: Vec<FieldElement>) -> Self {
        Vector(entries)
    }

    pub fn zero(g: usize) -> Self {
        Vector(vec![FieldElement::ZERO; g])
    }

    /// The standard basis vector `e_i` (0-based).
    pub fn unit(g: usize, i: usize) -> Self {
        let mut v = Self::zero(g);
        v.0[i] = FieldElement::ONE;
        v
    }

    pub fn from_codes(ctx: &FieldCtx, codes: &[u32]) -> Result<Self> {
        codes.iter().map(|&c| ctx.element(c)).collect::<Result<Vec<_>>>().map(Vector)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.0
    }

    pub fn codes(&self) -> Vec<u32> {
        self.0.iter().map(|e| e.code()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|e| e.is_zero())
    }

    pub fn add(&self, ctx: &FieldCtx, other: &Vector) -> Vector {
        debug_assert_eq!(self.len(), other.len());
        Vector(self.0.iter().zip(&other.0).map(|(&a, &b)| ctx.add(a, b)).collect())
    }

    pub fn sub(&self, ctx: &FieldCtx, other: &Vector) -> Vector {
        debug_assert_eq!(self.len(), other.len());
        Vector(self.0.iter().zip(&other.0).map(|(&a, &b)| ctx.sub(a, b)).collect())
    }

    pub fn scale(&self, ctx: &FieldCtx, c: FieldElement) -> Vector {
        Vector(self.0.iter().map(|&a| ctx.mul(c, a)).collect())
    }

    /// Applies an automorphism to every coordinate.
    pub fn map_entries(&self, ctx: &FieldCtx, aut: Automorphism) -> Vector {
        Vector(self.0.iter().map(|&a| ctx.frobenius(a, aut)).collect())
    }
}

impl std::ops::Index<usize> for Vector {
    type Output = FieldElement;

    fn index(&self, i: usize) -> &FieldElement {
        &self.0[i]
    }
}

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<FieldElement>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![FieldElement::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = FieldElement::ONE;
        }
        m
    }

    pub fn from_codes(ctx: &FieldCtx, rows: usize, cols: usize, codes: &[u32]) -> Result<Self> {
        let data = codes.iter().map(|&c| ctx.element(c)).collect::<Result<Vec<_>>>()?;
        Self::new(rows, cols, data)
    }

    /// The matrix whose `j`-th column is `vs[j]`.
    pub fn from_columns(rows: usize, vs: &[Vector]) -> Result<Self> {
        if let Some(v) = vs.iter().find(|v| v.len() != rows) {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in a space of dimension {rows}",
                v.len()
            )));
        }
        let cols = vs.len();
        let mut m = Self::zeros(rows, cols);
        for (j, v) in vs.iter().enumerate() {
            for i in 0..rows {
                m.data[i * cols + j] = v[i];
            }
        }
        Ok(m)
    }

    /// The matrix whose `i`-th row is `vs[i]`.
    pub fn from_rows(cols: usize, vs: &[Vector]) -> Result<Self> {
        if let Some(v) = vs.iter().find(|v| v.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in a space of dimension {cols}",
                v.len()
            )));
        }
        let data = vs.iter().flat_map(|v| v.entries().iter().copied()).collect();
        Ok(Matrix { rows: vs.len(), cols, data })
    }

    /// Decodes the matrix whose row-major entries are the little-endian
    /// base-q digits of `code`.
    pub fn from_index(ctx: &FieldCtx, rows: usize, cols: usize, mut code: u64) -> Self {
        let q = ctx.order() as u64;
        let data = (0..rows * cols)
            .map(|_| {
                let e = ctx.element((code % q) as u32).unwrap();
                code /= q;
                e
            })
            .collect();
        Matrix { rows, cols, data }
    }

    pub fn index_code(&self, ctx: &FieldCtx) -> u64 {
        let q = ctx.order() as u64;
        self.data.iter().rev().fold(0, |acc, e| acc * q + e.code() as u64)
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

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vector {
        Vector(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn column(&self, j: usize) -> Vector {
        Vector((0..self.rows).map(|i| self.get(i, j)).collect())
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn mul(&self, ctx: &FieldCtx, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let idx = i * rhs.cols + j;
                    out.data[idx] = ctx.add(out.data[idx], ctx.mul(a, rhs.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, ctx: &FieldCtx, v: &Vector) -> Result<Vector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot apply a {}x{} matrix to a vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok(Vector(
            (0..self.rows)
                .map(|i| {
                    (0..self.cols).fold(FieldElement::ZERO, |acc, j| {
                        ctx.add(acc, ctx.mul(self.get(i, j), v[j]))
                    })
                })
                .collect(),
        ))
    }

    /// Applies an automorphism to every entry.
    pub fn map_entries(&self, ctx: &FieldCtx, aut: Automorphism) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| ctx.frobenius(a, aut)).collect(),
        }
    }

    /// Reduced row echelon form together with its pivot columns.
    ///
    /// Pivots are the leftmost nonzero entries scanning rows top-down; each
    /// pivot is 1 and is the only nonzero entry in its column.
    pub fn rref(&self, ctx: &FieldCtx) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(found) = (row..m.rows).find(|&i| !m.get(i, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, found);
            let inv = ctx.inv(m.get(row, col)).expect("pivot is nonzero");
            for j in col..m.cols {
                let v = ctx.mul(inv, m.get(row, j));
                m.set(row, j, v);
            }
            for i in 0..m.rows {
                if i == row {
                    continue;
                }
                let factor = m.get(i, col);
                if factor.is_zero() {
                    continue;
                }
                for j in col..m.cols {
                    let v = ctx.sub(m.get(i, j), ctx.mul(factor, m.get(row, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self, ctx: &FieldCtx) -> usize {
        self.rref(ctx).1.len()
    }

    /// A basis of `{v : Av = 0}` with one vector per free column.
    pub fn kernel_basis(&self, ctx: &FieldCtx) -> Vec<Vector> {
        let (r, pivots) = self.rref(ctx);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![FieldElement::ZERO; self.cols];
                v[f] = FieldElement::ONE;
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = ctx.neg(r.get(row, f));
                }
                Vector(v)
            })
            .collect()
    }

    pub fn inverse(&self, ctx: &FieldCtx) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "cannot invert a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, FieldElement::ONE);
        }
        let (r, pivots) = aug.rref(ctx);
        if pivots.iter().copied().take(n).ne(0..n) {
            return Err(Error::Singular);
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j));
            }
        }
        Ok(inv)
    }

    /// The canonical (reduced echelon) basis of the column space.
    pub fn column_space_basis(&self, ctx: &FieldCtx) -> Vec<Vector> {
        let (r, pivots) = self.transpose().rref(ctx);
        (0..pivots.len()).map(|i| r.row(i)).collect()
    }
}

/// Dimension of the span of `vs`.
pub fn span_dim(ctx: &FieldCtx, vs: &[Vector]) -> usize {
    let Some(first) = vs.first() else { return 0 };
    match Matrix::from_rows(first.len(), vs) {
        Ok(m) => m.rank(ctx),
        Err(_) => panic!("span_dim: vectors of different lengths"),
    }
}

/// The reduced echelon basis of `Span(vs)` in a space of dimension `g`.
pub fn canonical_basis(ctx: &FieldCtx, g: usize, vs: &[Vector]) -> Result<Vec<Vector>> {
    let m = Matrix::from_rows(g, vs)?;
    let (r, pivots) = m.rref(ctx);
    Ok((0..pivots.len()).map(|i| r.row(i)).collect())
}

pub fn in_span(ctx: &FieldCtx, basis: &[Vector], v: &Vector) -> bool {
    let mut all = basis.to_vec();
    all.push(v.clone());
    span_dim(ctx, &all) == span_dim(ctx, basis)
}

/// Every linear combination of `basis`, in lexicographic coefficient order.
pub fn span_elements(ctx: &FieldCtx, g: usize, basis: &[Vector]) -> Vec<Vector> {
    let mut out = vec![Vector::zero(g)];
    for b in basis {
        let mut next = Vec::with_capacity(out.len() * ctx.order() as usize);
        for c in ctx.elements() {
            let scaled = b.scale(ctx, c);
            next.extend(out.iter().map(|v| v.add(ctx, &scaled)));
        }
        out = next;
    }
    out
}

/// All subspaces of `GF(q)^g`, each given by its reduced echelon basis.
///
/// Enumerates every pivot set and every filling of the free positions, so
/// each subspace appears exactly once.
pub fn subspaces(ctx: &FieldCtx, g: usize) -> Vec<Vec<Vector>> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << g) {
        let pivots: Vec<usize> = (0..g).filter(|&i| mask & (1 << i) != 0).collect();
        // Free slots: row k, column c > pivots[k] with c not a pivot.
        let slots: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(k, &pc)| {
                let pivots = &pivots;
                (pc + 1..g).filter(move |c| !pivots.contains(c)).map(move |c| (k, c))
            })
            .collect();
        let q = ctx.order() as u64;
        let total = q.pow(slots.len() as u32);
        for code in 0..total {
            let mut rows: Vec<Vec<FieldElement>> = pivots
                .iter()
                .map(|&pc| {
                    let mut r = vec![FieldElement::ZERO; g];
                    r[pc] = FieldElement::ONE;
                    r
                })
                .collect();
            let mut c = code;
            for &(k, col) in &slots {
                rows[k][col] = ctx.element((c % q) as u32).unwrap();
                c /= q;
            }
            out.push(rows.into_iter().map(Vector).collect());
        }
    }
    out
}
