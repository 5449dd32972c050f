//! Dense exact matrices over a supported number field, with the elimination
//! routines the rest of the workspace relies on: reduced row echelon form,
//! nullspaces, determinants, inverses, Kronecker products and incremental
//! row spans. All pivoting is deterministic (leftmost nonzero column, first
//! usable row), so every caller sees reproducible bases.

use crate::error::{Error, Result};
use crate::field::{FieldElement, NumberField, Q};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatrixNF {
    field: NumberField,
    rows: usize,
    cols: usize,
    /// Row-major entries, length rows * cols.
    entries: Vec<FieldElement>,
}

impl MatrixNF {
    pub fn new(field: NumberField, rows: usize, cols: usize, entries: Vec<FieldElement>) -> MatrixNF {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        assert!(
            entries.iter().all(|e| e.field() == field),
            "entries must live in the matrix field"
        );
        MatrixNF {
            field,
            rows,
            cols,
            entries,
        }
    }

    pub fn from_fn(
        field: NumberField,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> FieldElement,
    ) -> MatrixNF {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        MatrixNF::new(field, rows, cols, entries)
    }

    pub fn zero(field: NumberField, rows: usize, cols: usize) -> MatrixNF {
        MatrixNF {
            field,
            rows,
            cols,
            entries: vec![FieldElement::zero(field); rows * cols],
        }
    }

    pub fn identity(field: NumberField, n: usize) -> MatrixNF {
        MatrixNF::from_fn(field, n, n, |i, j| {
            if i == j {
                FieldElement::one(field)
            } else {
                FieldElement::zero(field)
            }
        })
    }

    /// Build from integer entries, row by row.
    pub fn from_i64(field: NumberField, rows: &[Vec<i64>]) -> MatrixNF {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        MatrixNF::from_fn(field, r, c, |i, j| FieldElement::from_integer(field, rows[i][j]))
    }

    pub fn field(&self) -> NumberField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: FieldElement) {
        assert_eq!(value.field(), self.field);
        self.entries[i * self.cols + j] = value;
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    /// Row-major flattening, the vectorization convention used everywhere.
    pub fn to_vec(&self) -> Vec<FieldElement> {
        self.entries.clone()
    }

    pub fn from_flat(field: NumberField, rows: usize, cols: usize, flat: Vec<FieldElement>) -> MatrixNF {
        MatrixNF::new(field, rows, cols, flat)
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(FieldElement::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self.get(i, j).is_one()
                    } else {
                        self.get(i, j).is_zero()
                    }
                })
            })
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn assert_same_field(&self, other: &MatrixNF) {
        assert_eq!(self.field, other.field, "mixed-field matrix arithmetic");
    }

    pub fn add(&self, other: &MatrixNF) -> MatrixNF {
        self.assert_same_field(other);
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.add(b))
            .collect();
        MatrixNF {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn sub(&self, other: &MatrixNF) -> MatrixNF {
        self.add(&other.negate())
    }

    pub fn negate(&self) -> MatrixNF {
        MatrixNF {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(FieldElement::negate).collect(),
        }
    }

    pub fn scale(&self, factor: &FieldElement) -> MatrixNF {
        assert_eq!(factor.field(), self.field);
        MatrixNF {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.mul(factor)).collect(),
        }
    }

    pub fn scale_rational(&self, factor: &Q) -> MatrixNF {
        self.scale(&FieldElement::from_rational(self.field, factor.clone()))
    }

    pub fn mul(&self, other: &MatrixNF) -> MatrixNF {
        self.assert_same_field(other);
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = FieldElement::zero(self.field);
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul(other.get(k, j)));
                }
                entries.push(acc);
            }
        }
        MatrixNF {
            field: self.field,
            rows: self.rows,
            cols: other.cols,
            entries,
        }
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = FieldElement::zero(self.field);
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if !a.is_zero() {
                        acc = acc.add(&a.mul(&v[k]));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, mut exp: u32) -> MatrixNF {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = MatrixNF::identity(self.field, self.rows);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            exp >>= 1;
        }
        acc
    }

    pub fn transpose(&self) -> MatrixNF {
        MatrixNF::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Entrywise application of the field involution.
    pub fn conjugate(&self) -> MatrixNF {
        MatrixNF {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(FieldElement::conjugate).collect(),
        }
    }

    pub fn conjugate_transpose(&self) -> MatrixNF {
        self.conjugate().transpose()
    }

    pub fn trace(&self) -> FieldElement {
        assert!(self.is_square());
        let mut acc = FieldElement::zero(self.field);
        for i in 0..self.rows {
            acc = acc.add(self.get(i, i));
        }
        acc
    }

    /// Kronecker product under row-major vectorization: for row-major
    /// flattening vec(X), one has vec(A X B) = (A kron B^T) vec(X).
    pub fn kron(&self, other: &MatrixNF) -> MatrixNF {
        self.assert_same_field(other);
        MatrixNF::from_fn(
            self.field,
            self.rows * other.rows,
            self.cols * other.cols,
            |i, j| {
                let (i1, i2) = (i / other.rows, i % other.rows);
                let (j1, j2) = (j / other.cols, j % other.cols);
                self.get(i1, j1).mul(other.get(i2, j2))
            },
        )
    }

    pub fn direct_sum(&self, other: &MatrixNF) -> MatrixNF {
        self.assert_same_field(other);
        let mut out = MatrixNF::zero(self.field, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    /// Reinterpret a matrix with rational-valued entries over another field.
    pub fn embed_into(&self, target: NumberField) -> Result<MatrixNF> {
        if self.field == target {
            return Ok(self.clone());
        }
        let mut entries = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            entries.push(e.embed_into(target)?);
        }
        Ok(MatrixNF {
            field: target,
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Reduced row echelon form together with the pivot column indices.
    /// Deterministic: scans columns left to right, uses the first row with a
    /// nonzero entry in the current column.
    pub fn rref(&self) -> (MatrixNF, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(src) = (pivot_row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(pivot_row, src);
            let inv = m
                .get(pivot_row, col)
                .inverse()
                .expect("pivot entry is nonzero");
            m.scale_row(pivot_row, &inv);
            for r in 0..m.rows {
                if r != pivot_row && !m.get(r, col).is_zero() {
                    let factor = m.get(r, col).clone();
                    m.row_axpy(r, pivot_row, &factor.negate());
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, factor: &FieldElement) {
        for j in 0..self.cols {
            let v = self.get(r, j).mul(factor);
            self.set(r, j, v);
        }
    }

    /// row[target] += factor * row[source]
    fn row_axpy(&mut self, target: usize, source: usize, factor: &FieldElement) {
        for j in 0..self.cols {
            let delta = self.get(source, j).mul(factor);
            let v = self.get(target, j).add(&delta);
            self.set(target, j, v);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right nullspace. Each basis vector has a 1 in one free
    /// column and the negated reduced coefficients in the pivot columns;
    /// vectors are ordered by ascending free column.
    pub fn nullspace(&self) -> Vec<Vec<FieldElement>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![FieldElement::zero(self.field); self.cols];
            v[free] = FieldElement::one(self.field);
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = r.get(row, free).negate();
            }
            basis.push(v);
        }
        basis
    }

    /// Basis of the column space, read off the reduced form of the
    /// transpose so the vectors are echelonized.
    pub fn column_space_basis(&self) -> Vec<Vec<FieldElement>> {
        let (r, pivots) = self.transpose().rref();
        (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
    }

    pub fn det(&self) -> FieldElement {
        assert!(self.is_square());
        let mut m = self.clone();
        let mut det = FieldElement::one(self.field);
        for col in 0..m.cols {
            let Some(src) = (col..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                return FieldElement::zero(self.field);
            };
            if src != col {
                m.swap_rows(col, src);
                det = det.negate();
            }
            let pivot = m.get(col, col).clone();
            det = det.mul(&pivot);
            let inv = pivot.inverse().expect("pivot entry is nonzero");
            for r in col + 1..m.rows {
                if !m.get(r, col).is_zero() {
                    let factor = m.get(r, col).mul(&inv).negate();
                    m.row_axpy(r, col, &factor);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<MatrixNF> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = MatrixNF::zero(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, FieldElement::one(self.field));
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::Singular);
        }
        Ok(MatrixNF::from_fn(self.field, n, n, |i, j| r.get(i, n + j).clone()))
    }

    /// Solve self * x = b; None when inconsistent. For underdetermined
    /// systems the free variables are set to zero.
    pub fn solve(&self, b: &[FieldElement]) -> Option<Vec<FieldElement>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = MatrixNF::zero(self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![FieldElement::zero(self.field); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, self.cols).clone();
        }
        Some(x)
    }
}

/// Incrementally maintained row space in reduced echelon form. Used for
/// span-membership tests, dimension tracking, and deterministic basis
/// completion.
#[derive(Debug, Clone)]
pub struct RowSpan {
    field: NumberField,
    width: usize,
    /// Reduced rows, sorted by pivot column.
    rows: Vec<Vec<FieldElement>>,
    pivots: Vec<usize>,
}

impl RowSpan {
    pub fn new(field: NumberField, width: usize) -> RowSpan {
        RowSpan {
            field,
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn field(&self) -> NumberField {
        self.field
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn basis(&self) -> &[Vec<FieldElement>] {
        &self.rows
    }

    /// Residual of a vector after reduction against the current basis.
    pub fn reduce(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.width);
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let factor = out[p].clone();
            for j in 0..self.width {
                let delta = row[j].mul(&factor);
                out[j] = out[j].sub(&delta);
            }
        }
        out
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        self.reduce(v).iter().all(FieldElement::is_zero)
    }

    /// Insert a vector; returns true when the span grew.
    pub fn insert(&mut self, v: &[FieldElement]) -> bool {
        let mut reduced = self.reduce(v);
        let Some(pivot) = reduced.iter().position(|e| !e.is_zero()) else {
            return false;
        };
        let inv = reduced[pivot].inverse().expect("pivot is nonzero");
        for e in reduced.iter_mut() {
            *e = e.mul(&inv);
        }
        // Back-substitute into the existing rows to keep the basis reduced.
        for row in self.rows.iter_mut() {
            if !row[pivot].is_zero() {
                let factor = row[pivot].clone();
                for j in 0..self.width {
                    let delta = reduced[j].mul(&factor);
                    row[j] = row[j].sub(&delta);
                }
            }
        }
        let pos = self.pivots.partition_point(|&p| p < pivot);
        self.pivots.insert(pos, pivot);
        self.rows.insert(pos, reduced);
        true
    }
}

/// Coordinates of `target` in the given spanning list, when it lies in the
/// span. The coefficient vector refers to the vectors as given.
pub fn express_in_basis(
    field: NumberField,
    basis: &[Vec<FieldElement>],
    target: &[FieldElement],
) -> Option<Vec<FieldElement>> {
    if basis.is_empty() {
        return if target.iter().all(FieldElement::is_zero) {
            Some(vec![])
        } else {
            None
        };
    }
    let n = basis[0].len();
    assert_eq!(target.len(), n);
    let m = MatrixNF::from_fn(field, n, basis.len(), |i, j| basis[j][i].clone());
    m.solve(target)
}
