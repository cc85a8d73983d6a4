//! Dense exact linear algebra over a finite field.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{invalid, Result};
use crate::gf::{Elem, Field, FieldSpec};

/// Row-major matrix over a finite field.
#[derive(Clone)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data && *self.field == *other.field
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Elem;
    fn index(&self, (r, c): (usize, usize)) -> &Elem {
        assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Elem {
        assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

/// Reduced row echelon form with its rank and pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn new(field: &Field, rows: usize, cols: usize, data: Vec<Elem>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(invalid!("expected {} entries for a {rows}x{cols} matrix, got {}", rows * cols, data.len()));
        }
        Ok(Matrix { field: field.clone(), rows, cols, data })
    }

    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field: field.clone(), rows, cols, data: vec![Elem::ZERO; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = Elem::ONE;
        }
        m
    }

    /// Builds a matrix from equal-length rows. `cols` is used when `rows` is empty.
    pub fn from_rows(field: &Field, rows: &[Vec<Elem>], cols: usize) -> Result<Matrix> {
        let cols = rows.first().map_or(cols, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(invalid!("rows have different lengths"));
        }
        let data = rows.iter().flatten().copied().collect();
        Matrix::new(field, rows.len(), cols, data)
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

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<Elem> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)];
            }
        }
        t
    }

    /// The submatrix formed by the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out[(r, j)] = self[(r, c)];
            }
        }
        out
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols || *self.field != *other.field {
            return Err(invalid!("cannot stack {}-column and {}-column matrices", self.cols, other.cols));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix::new(&self.field, self.rows + other.rows, self.cols, data)
    }

    /// Applies `f` entrywise.
    pub fn map(&self, f: impl Fn(Elem) -> Elem) -> Matrix {
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&e| f(e)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows || *self.field != *other.field {
            return Err(invalid!("cannot multiply {}x{} by {}x{}", self.rows, self.cols, other.rows, other.cols));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    out[(r, c)] = f.add(out[(r, c)], f.mul(a, other[(k, c)]));
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Elem]) -> Result<Vec<Elem>> {
        if v.len() != self.cols {
            return Err(invalid!("vector of length {} against {} columns", v.len(), self.cols));
        }
        let f = &self.field;
        Ok((0..self.rows).map(|r| dot(f, self.row(r), v)).collect())
    }

    /// Reduced row echelon form. Columns are scanned left to right and the
    /// first row at or below the current pivot row with a nonzero entry is
    /// used as pivot; pivots are scaled to one.
    pub fn rref(&self) -> Rref {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut prow = 0;
        for c in 0..m.cols {
            if prow == m.rows {
                break;
            }
            let Some(r) = (prow..m.rows).find(|&r| !m[(r, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(prow, r);
            let inv = f.inv(m[(prow, c)]).expect("pivot is nonzero");
            for j in c..m.cols {
                m[(prow, j)] = f.mul(m[(prow, j)], inv);
            }
            for r2 in 0..m.rows {
                if r2 == prow {
                    continue;
                }
                let factor = m[(r2, c)];
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.mul(factor, m[(prow, j)]);
                    m[(r2, j)] = f.sub(m[(r2, j)], v);
                }
            }
            pivots.push(c);
            prow += 1;
        }
        Rref { rank: pivots.len(), matrix: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// A basis of `{x : self * x = 0}`, one vector per free column of the
    /// RREF, with a one in that free column.
    pub fn nullspace(&self) -> Vec<Vec<Elem>> {
        let f = &self.field;
        let Rref { matrix, pivots, .. } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![Elem::ZERO; self.cols];
                v[free] = Elem::ONE;
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = f.neg(matrix[(r, free)]);
                }
                v
            })
            .collect()
    }

    pub fn det(&self) -> Result<Elem> {
        if self.rows != self.cols {
            return Err(invalid!("determinant of a non-square {}x{} matrix", self.rows, self.cols));
        }
        let f = &self.field;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Elem::ONE;
        for c in 0..n {
            let Some(r) = (c..n).find(|&r| !m[(r, c)].is_zero()) else {
                return Ok(Elem::ZERO);
            };
            if r != c {
                m.swap_rows(c, r);
                det = f.neg(det);
            }
            let piv = m[(c, c)];
            det = f.mul(det, piv);
            let inv = f.inv(piv).expect("pivot is nonzero");
            for r2 in c + 1..n {
                let factor = f.mul(m[(r2, c)], inv);
                if factor.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = f.mul(factor, m[(c, j)]);
                    m[(r2, j)] = f.sub(m[(r2, j)], v);
                }
            }
        }
        Ok(det)
    }
}

#[inline]
pub fn dot(f: &FieldSpec, a: &[Elem], b: &[Elem]) -> Elem {
    a.iter().zip(b).fold(Elem::ZERO, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

const SMALL_ROWS: usize = 4;
const SMALL_COLS: usize = 6;

/// Rank of the column restriction `h[:, cols]`.
///
/// Restrictions with at most four rows and six columns are eliminated on a
/// stack array; larger ones go through [`Matrix::rank`].
#[allow(clippy::needless_range_loop)]
pub fn restricted_rank(h: &Matrix, cols: &[usize]) -> usize {
    if h.rows > SMALL_ROWS || cols.len() > SMALL_COLS {
        return h.select_columns(cols).rank();
    }
    let f = &h.field;
    let (nr, nc) = (h.rows, cols.len());
    let mut a = [[Elem::ZERO; SMALL_COLS]; SMALL_ROWS];
    for r in 0..nr {
        for (j, &c) in cols.iter().enumerate() {
            a[r][j] = h[(r, c)];
        }
    }
    let mut rank = 0;
    for c in 0..nc {
        if rank == nr {
            break;
        }
        let Some(p) = (rank..nr).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let inv = f.inv(a[rank][c]).expect("pivot is nonzero");
        for r in rank + 1..nr {
            let factor = f.mul(a[r][c], inv);
            if factor.is_zero() {
                continue;
            }
            for j in c..nc {
                let v = f.mul(factor, a[rank][j]);
                a[r][j] = f.sub(a[r][j], v);
            }
        }
        rank += 1;
    }
    rank
}

/// Determinant of a 3x3 array by cofactor expansion.
#[inline]
pub fn det3(f: &FieldSpec, a: &[[Elem; 3]; 3]) -> Elem {
    let minor =
        |r1: usize, r2: usize, c1: usize, c2: usize| f.sub(f.mul(a[r1][c1], a[r2][c2]), f.mul(a[r1][c2], a[r2][c1]));
    let t0 = f.mul(a[0][0], minor(1, 2, 1, 2));
    let t1 = f.mul(a[0][1], minor(1, 2, 0, 2));
    let t2 = f.mul(a[0][2], minor(1, 2, 0, 1));
    f.add(f.sub(t0, t1), t2)
}

/// Determinant of a 4x4 array by Gaussian elimination.
#[allow(clippy::needless_range_loop)]
pub fn det4(f: &FieldSpec, a: &[[Elem; 4]; 4]) -> Elem {
    let mut m = *a;
    let mut det = Elem::ONE;
    for c in 0..4 {
        let Some(r) = (c..4).find(|&r| !m[r][c].is_zero()) else {
            return Elem::ZERO;
        };
        if r != c {
            m.swap(c, r);
            det = f.neg(det);
        }
        let piv = m[c][c];
        det = f.mul(det, piv);
        let inv = f.inv(piv).expect("pivot is nonzero");
        for r2 in c + 1..4 {
            let factor = f.mul(m[r2][c], inv);
            if factor.is_zero() {
                continue;
            }
            for j in c..4 {
                let v = f.mul(factor, m[c][j]);
                m[r2][j] = f.sub(m[r2][j], v);
            }
        }
    }
    det
}
