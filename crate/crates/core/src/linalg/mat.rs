use super::{Int, LinalgError, Ring};
use num_traits::Zero;
use std::fmt;

/// Dense row-major matrix over a [`Ring`]. Entries are kept reduced into
/// `[0, N)` when the ring is `Z/N`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl Mat {
    pub fn zeros(ring: &Ring, rows: usize, cols: usize) -> Self {
        Mat {
            ring: ring.clone(),
            rows,
            cols,
            data: vec![Int::ZERO; rows * cols],
        }
    }

    pub fn identity(ring: &Ring, n: usize) -> Self {
        let mut m = Mat::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, Int::ONE);
        }
        m
    }

    pub fn from_fn(
        ring: &Ring,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Int,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(ring.reduce(f(r, c)));
            }
        }
        Mat {
            ring: ring.clone(),
            rows,
            cols,
            data,
        }
    }

    /// Builds a matrix from rows of small integers. Panics on ragged input.
    pub fn from_rows(ring: &Ring, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        Mat::from_fn(ring, rows.len(), cols, |r, c| Int::from(rows[r][c]))
    }

    pub fn try_from_rows(
        ring: &Ring,
        rows: usize,
        cols: usize,
        entries: Vec<Vec<Int>>,
    ) -> Result<Self, LinalgError> {
        if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
            return Err(LinalgError::DimensionMismatch(format!(
                "expected a {rows}x{cols} matrix"
            )));
        }
        let data = entries
            .into_iter()
            .flatten()
            .map(|x| ring.reduce(x))
            .collect();
        Ok(Mat {
            ring: ring.clone(),
            rows,
            cols,
            data,
        })
    }

    /// Matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(ring: &Ring, rows: usize, columns: &[Vec<Int>]) -> Self {
        Mat::from_fn(ring, rows, columns.len(), |r, c| columns[c][r].clone())
    }

    pub fn column_vector(ring: &Ring, v: &[Int]) -> Self {
        Mat::from_fn(ring, v.len(), 1, |r, _| v[r].clone())
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Int {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Int) {
        self.data[r * self.cols + c] = self.ring.reduce(v);
    }

    pub fn row(&self, r: usize) -> &[Int] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Int> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Int>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Int>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(&self.ring, self.cols, self.rows, |r, c| {
            self.get(c, r).clone()
        })
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat, LinalgError> {
        self.ring.check_same(&other.ring)?;
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = vec![Int::ZERO; self.rows * other.cols];
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        out[r * other.cols + c] += a * b;
                    }
                }
            }
        }
        let data = out.into_iter().map(|x| self.ring.reduce(x)).collect();
        Ok(Mat {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    pub fn mul_vec(&self, v: &[Int]) -> Result<Vec<Int>, LinalgError> {
        if self.cols != v.len() {
            return Err(LinalgError::DimensionMismatch(format!(
                "cannot apply {}x{} matrix to a vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                let s = self
                    .row(r)
                    .iter()
                    .zip(v)
                    .fold(Int::ZERO, |acc, (a, b)| acc + a * b);
                self.ring.reduce(s)
            })
            .collect())
    }

    fn zip_with(&self, other: &Mat, f: impl Fn(&Int, &Int) -> Int) -> Result<Mat, LinalgError> {
        self.ring.check_same(&other.ring)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| self.ring.reduce(f(a, b)))
            .collect();
        Ok(Mat {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn add(&self, other: &Mat) -> Result<Mat, LinalgError> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Mat) -> Result<Mat, LinalgError> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Mat {
        self.scale(&Int::from(-1))
    }

    pub fn scale(&self, k: &Int) -> Mat {
        let data = self.data.iter().map(|a| self.ring.reduce(a * k)).collect();
        Mat {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Mat) -> Result<Mat, LinalgError> {
        self.ring.check_same(&other.ring)?;
        if self.rows != other.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "hstack of {} and {} rows",
                self.rows, other.rows
            )));
        }
        Ok(Mat::from_fn(
            &self.ring,
            self.rows,
            self.cols + other.cols,
            |r, c| {
                if c < self.cols {
                    self.get(r, c).clone()
                } else {
                    other.get(r, c - self.cols).clone()
                }
            },
        ))
    }

    /// `[self; other]`.
    pub fn vstack(&self, other: &Mat) -> Result<Mat, LinalgError> {
        self.ring.check_same(&other.ring)?;
        if self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "vstack of {} and {} columns",
                self.cols, other.cols
            )));
        }
        Ok(Mat::from_fn(
            &self.ring,
            self.rows + other.rows,
            self.cols,
            |r, c| {
                if r < self.rows {
                    self.get(r, c).clone()
                } else {
                    other.get(r - self.rows, c).clone()
                }
            },
        ))
    }

    pub fn block_diag(&self, other: &Mat) -> Result<Mat, LinalgError> {
        self.ring.check_same(&other.ring)?;
        Ok(Mat::from_fn(
            &self.ring,
            self.rows + other.rows,
            self.cols + other.cols,
            |r, c| match (r < self.rows, c < self.cols) {
                (true, true) => self.get(r, c).clone(),
                (false, false) => other.get(r - self.rows, c - self.cols).clone(),
                _ => Int::ZERO,
            },
        ))
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        Mat::from_fn(&self.ring, idx.len(), self.cols, |r, c| {
            self.get(idx[r], c).clone()
        })
    }

    pub fn select_cols(&self, idx: &[usize]) -> Mat {
        Mat::from_fn(&self.ring, self.rows, idx.len(), |r, c| {
            self.get(r, idx[c]).clone()
        })
    }

    /// Same entries read in another ring (re-reduced).
    pub fn with_ring(&self, ring: &Ring) -> Mat {
        Mat::from_fn(ring, self.rows, self.cols, |r, c| self.get(r, c).clone())
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Mat) -> Mat {
        Mat::from_fn(
            &self.ring,
            self.rows * other.rows,
            self.cols * other.cols,
            |r, c| {
                self.get(r / other.rows, c / other.cols) * other.get(r % other.rows, c % other.cols)
            },
        )
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat<{}>{}x{}{}", self.ring, self.rows, self.cols, self)
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
