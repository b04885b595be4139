use super::howell::{augmented_howell, left_kernel_rows, reduce_against, split_pivot_rows};
use super::int::rem_floor;
use super::{smith_normal_form, Int, LinalgError, Mat, Ring};

/// A particular solution of `A x = b` and generators (columns) of the
/// solution set of `A x = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub x: Vec<Int>,
    pub kernel: Mat,
}

enum Backend {
    /// `Z/1`: everything is zero.
    Trivial,
    Integer {
        u: Mat,
        v: Mat,
        diag: Vec<Int>,
    },
    Modular {
        rows: Vec<Vec<Int>>,
        pivots: Vec<usize>,
        transform: Mat,
    },
}

/// Precomputed factorization of `A` for repeated right-hand sides.
pub struct LinearSolver {
    ring: Ring,
    rows: usize,
    cols: usize,
    kernel: Mat,
    backend: Backend,
}

impl LinearSolver {
    pub fn new(a: &Mat) -> Self {
        let ring = a.ring().clone();
        let (rows, cols) = (a.rows(), a.cols());
        if ring.is_zero_ring() {
            return LinearSolver {
                kernel: Mat::zeros(&ring, cols, 0),
                ring,
                rows,
                cols,
                backend: Backend::Trivial,
            };
        }
        if ring.is_integers() {
            let snf = smith_normal_form(a).expect("integer ring");
            let diag = snf.diagonal();
            let rank = diag.iter().filter(|d| !d.is_zero()).count();
            let free: Vec<usize> = (rank..cols).collect();
            let kernel = snf.v.select_cols(&free);
            return LinearSolver {
                ring,
                rows,
                cols,
                kernel,
                backend: Backend::Integer {
                    u: snf.u,
                    v: snf.v,
                    diag,
                },
            };
        }
        // column span of A is the row span of A^T
        let at = a.transpose();
        let aug = augmented_howell(&at);
        let (h, transform) = split_pivot_rows(&ring, &aug, rows, cols);
        let kernel = left_kernel_rows(&ring, &aug, rows, cols).transpose();
        let k = h.rows();
        LinearSolver {
            ring,
            rows,
            cols,
            kernel,
            backend: Backend::Modular {
                rows: h.to_rows(),
                pivots: aug.pivots[..k].to_vec(),
                transform,
            },
        }
    }

    pub fn kernel(&self) -> &Mat {
        &self.kernel
    }

    pub fn solve(&self, b: &[Int]) -> Result<Option<Vec<Int>>, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "right-hand side has length {}, matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        match &self.backend {
            Backend::Trivial => Ok(Some(vec![Int::ZERO; self.cols])),
            Backend::Integer { u, v, diag } => {
                let ub = u.mul_vec(b)?;
                let mut y = vec![Int::ZERO; self.cols];
                for (i, c) in ub.iter().enumerate() {
                    let d = diag.get(i).cloned().unwrap_or(Int::ZERO);
                    if d.is_zero() {
                        if !c.is_zero() {
                            return Ok(None);
                        }
                    } else {
                        if !rem_floor(c, &d).is_zero() {
                            return Ok(None);
                        }
                        y[i] = c / &d;
                    }
                }
                Ok(Some(v.mul_vec(&y)?))
            }
            Backend::Modular {
                rows,
                pivots,
                transform,
            } => {
                let n = self.ring.modulus();
                let Some(coeffs) = reduce_against(rows, pivots, b, n) else {
                    return Ok(None);
                };
                // b = sum q_i h_i and h = T A^T, so x = T^T q
                let x = transform.transpose().mul_vec(&coeffs)?;
                Ok(Some(x))
            }
        }
    }
}

/// Solves `A x = b`. Returns `None` exactly when no solution exists.
pub fn solve_linear(a: &Mat, b: &[Int]) -> Result<Option<Solution>, LinalgError> {
    let solver = LinearSolver::new(a);
    Ok(solver.solve(b)?.map(|x| Solution {
        x,
        kernel: solver.kernel.clone(),
    }))
}

/// Generators (as columns) of `{x : A x = 0}`.
pub fn kernel(a: &Mat) -> Mat {
    LinearSolver::new(a).kernel
}
