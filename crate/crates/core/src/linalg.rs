//! Dense matrices over a [`FieldSpec`] and the subspace algebra built on row
//! reduction. Vectors are always rows; a subspace is the row space of its
//! basis matrix and is compared through its RREF.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{Elem, FieldSpec};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// Output of [`Matrix::rref`].
#[derive(Debug, Clone)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn new(field: &FieldSpec, rows: usize, cols: usize, data: Vec<Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { left: data.len(), right: rows * cols });
        }
        if let Some(&bad) = data.iter().find(|&&x| x as usize >= field.order()) {
            return Err(Error::ElementOutOfRange { value: bad as u32, order: field.order() });
        }
        Ok(Matrix { field: field.clone(), rows, cols, data })
    }

    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows, cols, data: vec![0; rows * cols] }
    }

    /// The 0×cols matrix, i.e. a basis of the zero subspace.
    pub fn empty(field: &FieldSpec, cols: usize) -> Self {
        Self::zeros(field, 0, cols)
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows<R: AsRef<[Elem]>>(field: &FieldSpec, cols: usize, rows: &[R]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::DimensionMismatch { left: r.len(), right: cols });
            }
            data.extend_from_slice(r);
        }
        Self::new(field, rows.len(), cols, data)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Elem] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[Elem]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn push_row(&mut self, row: &[Elem]) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::DimensionMismatch { left: row.len(), right: self.cols });
        }
        self.data.extend_from_slice(row);
        self.rows += 1;
        Ok(())
    }

    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if self.cols != other.cols {
            return Err(Error::AmbientMismatch { left: self.cols, right: other.cols });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch { left: self.rows, right: other.rows });
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        Ok(Matrix { field: self.field.clone(), rows: self.rows, cols, data })
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Matrix { field: self.field.clone(), rows: idx.len(), cols: self.cols, data }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(idx.len() * self.rows);
        for r in 0..self.rows {
            let row = self.row(r);
            data.extend(idx.iter().map(|&c| row[c]));
        }
        Matrix { field: self.field.clone(), rows: self.rows, cols: idx.len(), data }
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
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { left: self.cols, right: other.rows });
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let v = f.add(out.get(r, c), f.mul(a, other.get(k, c)));
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    /// `M·vᵀ` as a vector.
    pub fn apply(&self, v: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        self.iter_rows().map(|row| dot(f, row, v)).collect()
    }

    fn same_field(&self, other: &Matrix) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    /// Reduced row echelon form. Zero rows are kept at the bottom so the
    /// shape is preserved.
    pub fn rref(&self) -> Rref {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| m.get(i, c) != 0) else { continue };
            m.swap_rows(r, p);
            let inv = f.inv(m.get(r, c));
            for x in m.row_mut(r) {
                *x = f.mul(*x, inv);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor == 0 {
                    continue;
                }
                let (src, dst) = m.two_rows(r, i);
                axpy(f, dst, f.neg(factor), src);
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, rank: r, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Canonical basis of the row space: the nonzero rows of the RREF.
    pub fn row_space(&self) -> Matrix {
        let Rref { matrix, rank, .. } = self.rref();
        Matrix {
            field: matrix.field,
            rows: rank,
            cols: matrix.cols,
            data: matrix.data[..rank * matrix.cols].to_vec(),
        }
    }

    /// Basis of `{x : M·xᵀ = 0}`.
    pub fn kernel(&self) -> Matrix {
        let f = &self.field;
        let Rref { matrix, pivots, .. } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(f, free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            out.set(k, fc, 1);
            for (i, &pc) in pivots.iter().enumerate() {
                out.set(k, pc, f.neg(matrix.get(i, fc)));
            }
        }
        out
    }

    /// Keep the first rows that are linearly independent of their predecessors,
    /// preserving order.
    pub fn independent_rows(&self) -> Matrix {
        let f = &self.field;
        let mut echelon: Vec<(usize, Vec<Elem>)> = Vec::new();
        let mut keep = Vec::new();
        for i in 0..self.rows {
            let mut v = self.row(i).to_vec();
            for (pc, e) in &echelon {
                let a = v[*pc];
                if a != 0 {
                    axpy(f, &mut v, f.neg(a), e);
                }
            }
            if let Some(pc) = v.iter().position(|&x| x != 0) {
                let inv = f.inv(v[pc]);
                for x in v.iter_mut() {
                    *x = f.mul(*x, inv);
                }
                echelon.push((pc, v));
                keep.push(i);
            }
        }
        self.select_rows(&keep)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    /// (row a, row b mutable), a ≠ b.
    fn two_rows(&mut self, a: usize, b: usize) -> (&[Elem], &mut [Elem]) {
        let cols = self.cols;
        if a < b {
            let (lo, hi) = self.data.split_at_mut(b * cols);
            (&lo[a * cols..(a + 1) * cols], &mut hi[..cols])
        } else {
            let (lo, hi) = self.data.split_at_mut(a * cols);
            (&hi[..cols], &mut lo[b * cols..(b + 1) * cols])
        }
    }
}

/// `dst += a · src`
pub fn axpy(f: &FieldSpec, dst: &mut [Elem], a: Elem, src: &[Elem]) {
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = f.add(*d, f.mul(a, s));
    }
}

pub fn dot(f: &FieldSpec, u: &[Elem], v: &[Elem]) -> Elem {
    u.iter().zip(v).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
}

pub fn scale(f: &FieldSpec, v: &[Elem], a: Elem) -> Vec<Elem> {
    v.iter().map(|&x| f.mul(a, x)).collect()
}

pub fn add_vec(f: &FieldSpec, u: &[Elem], v: &[Elem]) -> Vec<Elem> {
    u.iter().zip(v).map(|(&a, &b)| f.add(a, b)).collect()
}

fn check_ambient(a: &Matrix, b: &Matrix) -> Result<()> {
    if a.field != b.field {
        return Err(Error::FieldMismatch);
    }
    if a.cols != b.cols {
        return Err(Error::AmbientMismatch { left: a.cols, right: b.cols });
    }
    Ok(())
}

/// A + B, canonical basis.
pub fn sum(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    check_ambient(a, b)?;
    Ok(a.vstack(b)?.row_space())
}

/// A ∩ B as the kernel of the stacked orthogonal complements.
pub fn intersect(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    check_ambient(a, b)?;
    let stacked = a.kernel().vstack(&b.kernel())?;
    Ok(stacked.kernel().row_space())
}

/// Whether row space of `a` contains row space of `b`.
pub fn contains(a: &Matrix, b: &Matrix) -> Result<bool> {
    check_ambient(a, b)?;
    Ok(a.vstack(b)?.rank() == a.rank())
}

pub fn same_space(a: &Matrix, b: &Matrix) -> Result<bool> {
    check_ambient(a, b)?;
    Ok(a.row_space() == b.row_space())
}

/// `{x : gram(x, s) = 0 for all rows s of S}` for an F-bilinear `gram` on
/// F^ambient, computed from the values of the form on unit vectors.
pub fn form_complement<G>(s: &Matrix, gram: G) -> Matrix
where
    G: Fn(&[Elem], &[Elem]) -> Elem,
{
    let f = s.field();
    let n = s.cols();
    let mut unit = vec![0; n];
    let mut a = Matrix::zeros(f, s.rows(), n);
    for i in 0..n {
        unit[i] = 1;
        for j in 0..s.rows() {
            a.set(j, i, gram(&unit, s.row(j)));
        }
        unit[i] = 0;
    }
    a.kernel().row_space()
}
