//! Dense exact linear algebra over a [`Field`].
//!
//! Pivoting is deterministic (first nonzero entry, scanning rows top-down,
//! columns left to right), so every derived basis and certificate is
//! reproducible byte for byte.

use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};

/// Row-major dense matrix of field element codes.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Wire form: `{"rows":r,"cols":c,"entries":[[[c0,..],..],..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Vec<u32>>>,
}

/// Reduced row echelon form with its pivot columns.
#[derive(Debug, Clone)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// Outcome of [`solve`].
#[derive(Debug, Clone)]
pub enum Solution {
    /// One solution per right-hand column, plus a basis of `ker(a)`.
    Consistent { particular: Matrix, kernel: Vec<Vec<u32>> },
    /// `certificate · a = 0` while `certificate · b ≠ 0`.
    Inconsistent { certificate: Vec<u32> },
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|&c| self.field.render(c)).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

fn shape_err(what: &str, a: (usize, usize), b: (usize, usize)) -> Error {
    Error::ShapeMismatch(format!("{what}: {}x{} vs {}x{}", a.0, a.1, b.0, b.1))
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field: field.clone(), rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from raw codes in row-major order.
    pub fn from_codes(field: &Field, rows: usize, cols: usize, data: Vec<u32>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        if data.iter().any(|&c| c >= field.order()) {
            return Err(Error::BadElement("code out of range".into()));
        }
        Ok(Matrix { field: field.clone(), rows, cols, data })
    }

    /// Rows of codes; all rows must have equal length.
    pub fn from_rows(field: &Field, rows: &[Vec<u32>]) -> Result<Matrix> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Matrix::from_codes(field, rows.len(), cols, rows.concat())
    }

    /// Rows of integers, embedded in the prime subfield.
    pub fn from_ints(field: &Field, rows: &[&[i64]]) -> Matrix {
        let codes: Vec<Vec<u32>> = rows.iter().map(|r| r.iter().map(|&x| field.from_int(x)).collect()).collect();
        Matrix::from_rows(field, &codes).expect("rectangular integer rows")
    }

    /// Column vector from codes.
    pub fn column(field: &Field, v: &[u32]) -> Matrix {
        Matrix { field: field.clone(), rows: v.len(), cols: 1, data: v.to_vec() }
    }

    pub fn field(&self) -> &Field {
        &self.field
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

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn entry(&self, r: usize, c: usize) -> FieldElement {
        self.field.elem(self.get(r, c))
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Matrix::identity(&self.field, self.rows)
    }

    fn check_field(&self, other: &Matrix) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::MixedContexts)
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(shape_err("matmul", (self.rows, self.cols), (other.rows, other.cols)));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                let orow = other.row(k);
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(orow) {
                    if b != 0 {
                        *d = f.add(*d, f.mul(a, b));
                    }
                }
            }
        }
        Ok(out)
    }

    /// `self · v` for a column vector of codes.
    pub fn mul_vec(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.cols {
            return Err(shape_err("matrix-vector", (self.rows, self.cols), (v.len(), 1)));
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|r| self.row(r).iter().zip(v).fold(0, |acc, (&a, &b)| if a == 0 || b == 0 { acc } else { f.add(acc, f.mul(a, b)) }))
            .collect())
    }

    /// `y · self` for a row vector of codes.
    pub fn vec_mul(&self, y: &[u32]) -> Result<Vec<u32>> {
        if y.len() != self.rows {
            return Err(shape_err("vector-matrix", (1, y.len()), (self.rows, self.cols)));
        }
        let f = &self.field;
        let mut out = vec![0; self.cols];
        for (r, &yr) in y.iter().enumerate() {
            if yr == 0 {
                continue;
            }
            for (o, &a) in out.iter_mut().zip(self.row(r)) {
                if a != 0 {
                    *o = f.add(*o, f.mul(yr, a));
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, other: &Matrix, op: impl Fn(u32, u32) -> u32, what: &str) -> Result<Matrix> {
        self.check_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(shape_err(what, (self.rows, self.cols), (other.rows, other.cols)));
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| op(a, b)).collect();
        Ok(Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        let f = self.field.clone();
        self.zip_with(other, move |a, b| f.add(a, b), "add")
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        let f = self.field.clone();
        self.zip_with(other, move |a, b| f.sub(a, b), "sub")
    }

    pub fn scale(&self, c: u32) -> Matrix {
        self.map(|x| self.field.mul(c, x))
    }

    pub fn map(&self, op: impl Fn(u32) -> u32) -> Matrix {
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| op(x)).collect() }
    }

    /// Entrywise p-th power.
    pub fn frobenius(&self) -> Matrix {
        self.map(|x| self.field.frob(x))
    }

    /// Kronecker product with block layout `a_ij · b`.
    pub fn kron(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        let f = &self.field;
        let (rows, cols) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Matrix::zeros(f, rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if b != 0 {
                            out.data[(i * other.rows + k) * cols + j * other.cols + l] = f.mul(a, b);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Matrix) -> Result<Matrix> {
        Matrix::block_diag(&[self, other])
    }

    pub fn block_diag(blocks: &[&Matrix]) -> Result<Matrix> {
        let field = blocks.first().map(|m| m.field.clone()).ok_or_else(|| Error::ShapeMismatch("empty block list".into()))?;
        if blocks.iter().any(|m| m.field != field) {
            return Err(Error::MixedContexts);
        }
        let rows = blocks.iter().map(|m| m.rows).sum();
        let cols = blocks.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(&field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for m in blocks {
            out.paste(r0, c0, m);
            r0 += m.rows;
            c0 += m.cols;
        }
        Ok(out)
    }

    /// Copies `m` into `self` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, m: &Matrix) {
        for r in 0..m.rows {
            let dst = (r0 + r) * self.cols + c0;
            self.data[dst..dst + m.cols].copy_from_slice(m.row(r));
        }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        let mut out = Matrix::zeros(&self.field, rows.len(), cols.len());
        for (i, r) in rows.enumerate() {
            for (j, c) in cols.clone().enumerate() {
                out.data[i * out.cols + j] = self.get(r, c);
            }
        }
        out
    }

    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.rows != other.rows {
            return Err(shape_err("hstack", (self.rows, self.cols), (other.rows, other.cols)));
        }
        let mut out = Matrix::zeros(&self.field, self.rows, self.cols + other.cols);
        out.paste(0, 0, self);
        out.paste(0, self.cols, other);
        Ok(out)
    }

    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.cols {
            return Err(shape_err("vstack", (self.rows, self.cols), (other.rows, other.cols)));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: &Field, len: usize, cols: &[Vec<u32>]) -> Result<Matrix> {
        if cols.iter().any(|c| c.len() != len) {
            return Err(Error::ShapeMismatch("column lengths differ".into()));
        }
        let mut m = Matrix::zeros(field, len, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        Ok(m)
    }

    /// Gauss-Jordan elimination with first-nonzero pivoting.
    pub fn rref(&self) -> Rref {
        self.rref_limited(self.cols)
    }

    /// Like [`Matrix::rref`] but only pivots in the first `pivot_cols` columns.
    fn rref_limited(&self, pivot_cols: usize) -> Rref {
        let f = &self.field;
        let mut m = self.clone();
        let cols = m.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..pivot_cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    m.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in c..cols {
                let v = m.get(r, j);
                m.set(r, j, f.mul(inv, v));
            }
            let pivot_row: Vec<u32> = m.row(r)[c..].to_vec();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor == 0 {
                    continue;
                }
                let nf = f.neg(factor);
                let row = &mut m.data[i * cols + c..(i + 1) * cols];
                for (x, &pv) in row.iter_mut().zip(&pivot_row) {
                    if pv != 0 {
                        *x = f.add(*x, f.mul(nf, pv));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let rank = pivots.len();
        Rref { matrix: m, pivots, rank }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the right kernel `{x : self · x = 0}`, one vector per free
    /// column in increasing order.
    pub fn kernel(&self) -> Vec<Vec<u32>> {
        kernel_from_rref(&self.rref(), self.cols)
    }

    /// Basis of the left kernel `{y : y · self = 0}`.
    pub fn left_kernel(&self) -> Vec<Vec<u32>> {
        self.transpose().kernel()
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(shape_err("inverse", (self.rows, self.cols), (self.cols, self.rows)));
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(&self.field, n))?;
        let red = aug.rref_limited(n);
        if red.rank < n {
            return Err(Error::Singular);
        }
        Ok(red.matrix.submatrix(0..n, n..2 * n))
    }

    /// SHA-256 over the field spec, shape and codes.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        h.update(serde_json::to_vec(&self.field.spec()).expect("field spec serializes"));
        h.update((self.rows as u64).to_le_bytes());
        h.update((self.cols as u64).to_le_bytes());
        for &x in &self.data {
            h.update(x.to_le_bytes());
        }
        hex::encode(h.finalize())
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            entries: (0..self.rows).map(|r| self.row(r).iter().map(|&c| self.field.coeffs(c)).collect()).collect(),
        }
    }

    pub fn from_json(field: &Field, json: &MatrixJson) -> Result<Matrix> {
        if json.entries.len() != json.rows || json.entries.iter().any(|r| r.len() != json.cols) {
            return Err(Error::ShapeMismatch("entries do not match declared shape".into()));
        }
        let mut data = Vec::with_capacity(json.rows * json.cols);
        for row in &json.entries {
            for e in row {
                data.push(field.from_coeffs(e)?);
            }
        }
        Matrix::from_codes(field, json.rows, json.cols, data)
    }
}

/// Row space grown one vector at a time, kept in reduced echelon form so
/// each insertion costs `O(rank · width)`.
#[derive(Debug, Clone)]
pub struct RowBasis {
    field: Field,
    width: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl RowBasis {
    pub fn new(field: &Field, width: usize) -> RowBasis {
        RowBasis { field: field.clone(), width, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// `v` minus its projection onto the current span (zero iff `v` is in it).
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let f = &self.field;
        let mut v = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = v[pc];
            if c == 0 {
                continue;
            }
            let nc = f.neg(c);
            for (x, &r) in v.iter_mut().zip(row) {
                if r != 0 {
                    *x = f.add(*x, f.mul(nc, r));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v` if it is independent of the current rows; returns whether it was.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.width, "row width");
        let f = self.field.clone();
        let mut r = self.reduce(v);
        let Some(pc) = r.iter().position(|&x| x != 0) else { return false };
        let inv = f.inv(r[pc]).expect("nonzero");
        for x in r.iter_mut() {
            *x = f.mul(*x, inv);
        }
        // keep earlier rows reduced at the new pivot
        for row in self.rows.iter_mut() {
            let c = row[pc];
            if c == 0 {
                continue;
            }
            let nc = f.neg(c);
            for (x, &y) in row.iter_mut().zip(&r) {
                if y != 0 {
                    *x = f.add(*x, f.mul(nc, y));
                }
            }
        }
        self.rows.push(r);
        self.pivots.push(pc);
        true
    }

    /// Rows as a matrix (in insertion order, not sorted by pivot).
    pub fn to_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(&self.field, self.rows.len(), self.width);
        for (i, r) in self.rows.iter().enumerate() {
            m.data[i * self.width..(i + 1) * self.width].copy_from_slice(r);
        }
        m
    }
}

fn kernel_from_rref(red: &Rref, ncols: usize) -> Vec<Vec<u32>> {
    let f = red.matrix.field();
    let mut is_pivot = vec![false; ncols];
    for &p in &red.pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![0; ncols];
            v[free] = 1;
            for (r, &pc) in red.pivots.iter().enumerate() {
                v[pc] = f.neg(red.matrix.get(r, free));
            }
            v
        })
        .collect()
}

/// Solves `a · x = b`. On failure the certificate is the first left-kernel
/// basis vector of `a` that does not annihilate `b`.
pub fn solve(a: &Matrix, b: &Matrix) -> Result<Solution> {
    a.check_field(b)?;
    if a.rows != b.rows {
        return Err(shape_err("solve", (a.rows, a.cols), (b.rows, b.cols)));
    }
    let n = a.cols;
    let red = a.hstack(b)?.rref_limited(n + b.cols);
    if red.pivots.iter().any(|&p| p >= n) {
        let certificate = a
            .left_kernel()
            .into_iter()
            .find(|y| b.vec_mul(y).map(|yb| yb.iter().any(|&x| x != 0)).unwrap_or(false))
            .expect("an inconsistent system has a separating left-kernel vector");
        return Ok(Solution::Inconsistent { certificate });
    }
    let mut particular = Matrix::zeros(a.field(), n, b.cols);
    for (r, &pc) in red.pivots.iter().enumerate() {
        for j in 0..b.cols {
            particular.set(pc, j, red.matrix.get(r, n + j));
        }
    }
    // the first n columns of rref([a|b]) form rref(a) since no pivot fell in b
    let a_part = Rref { matrix: red.matrix.submatrix(0..a.rows, 0..n), pivots: red.pivots, rank: red.rank };
    Ok(Solution::Consistent { particular, kernel: kernel_from_rref(&a_part, n) })
}

/// Independent re-check of an inconsistency certificate: `y·a = 0`, `y·b ≠ 0`.
pub fn is_inconsistency_certificate(a: &Matrix, b: &Matrix, y: &[u32]) -> bool {
    match (a.vec_mul(y), b.vec_mul(y)) {
        (Ok(ya), Ok(yb)) => ya.iter().all(|&x| x == 0) && yb.iter().any(|&x| x != 0),
        _ => false,
    }
}

/// `(a ⊗ b) · x` without forming the Kronecker product, where `x` is the
/// row-major flattening of an `a.cols × b.cols` matrix `X`; the result is the
/// row-major flattening of `a · X · bᵀ`.
pub fn kron_apply(a: &Matrix, b: &Matrix, x: &[u32]) -> Result<Vec<u32>> {
    a.check_field(b)?;
    let xm = Matrix::from_codes(a.field(), a.cols, b.cols, x.to_vec())
        .map_err(|_| Error::ShapeMismatch(format!("vector of length {} for a {}x{} kron", x.len(), a.cols, b.cols)))?;
    Ok(a.mul(&xm)?.mul(&b.transpose())?.data)
}
