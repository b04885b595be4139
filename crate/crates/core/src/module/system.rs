use super::FpModule;
use crate::linalg::{solve_linear, Int, Mat, Ring};

/// Linear congruences over a ring, possibly with different moduli per row.
///
/// Over `Z/N` every modulus divides `N` and rows are rescaled to live mod
/// `N`. Over `Z` a row with positive modulus gets its own slack variable.
pub(crate) struct Congruences {
    ring: Ring,
    nvars: usize,
    rows: Vec<(Vec<Int>, Int, Int)>,
}

impl Congruences {
    pub fn new(ring: &Ring, nvars: usize) -> Self {
        Congruences {
            ring: ring.clone(),
            nvars,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, coeffs: Vec<Int>, rhs: Int, modulus: Int) {
        debug_assert_eq!(coeffs.len(), self.nvars);
        self.rows.push((coeffs, rhs, modulus));
    }

    /// Adds `map * x == rhs` in `module`, where `map` has one row per
    /// generator of `module` and one column per variable.
    pub fn require_equal_in(&mut self, module: &FpModule, map: &[Vec<Int>], rhs: &[Int]) {
        let to_dec = module.to_dec();
        for (i, d) in module.invariants().iter().enumerate() {
            let weights = to_dec.row(i);
            let mut coeffs = vec![Int::ZERO; self.nvars];
            for (w, row) in weights.iter().zip(map) {
                if w.is_zero() {
                    continue;
                }
                for (c, x) in coeffs.iter_mut().zip(row) {
                    if !x.is_zero() {
                        *c += w * x;
                    }
                }
            }
            let r = weights
                .iter()
                .zip(rhs)
                .fold(Int::ZERO, |acc, (w, y)| acc + w * y);
            self.push(coeffs, r, d.clone());
        }
    }

    /// Particular solution and generators of the homogeneous solutions,
    /// restricted to the declared variables.
    pub fn solve(&self) -> Option<(Vec<Int>, Vec<Vec<Int>>)> {
        let n = self.ring.modulus().clone();
        let integers = self.ring.is_integers();
        let slack: Vec<usize> = if integers {
            self.rows
                .iter()
                .enumerate()
                .filter(|(_, r)| !r.2.is_zero())
                .map(|(i, _)| i)
                .collect()
        } else {
            vec![]
        };
        let width = self.nvars + slack.len();
        let mut a = Mat::zeros(&self.ring, self.rows.len(), width);
        let mut b = Vec::with_capacity(self.rows.len());
        for (i, (coeffs, rhs, m)) in self.rows.iter().enumerate() {
            let scale = if integers || m.is_zero() {
                Int::ONE
            } else {
                &n / m
            };
            for (j, c) in coeffs.iter().enumerate() {
                a.set(i, j, c * &scale);
            }
            b.push(self.ring.reduce(rhs * &scale));
        }
        for (k, &i) in slack.iter().enumerate() {
            a.set(i, self.nvars + k, -self.rows[i].2.clone());
        }
        let sol = solve_linear(&a, &b).expect("shapes agree")?;
        let x = sol.x[..self.nvars]
            .iter()
            .map(|v| self.ring.reduce_ref(v))
            .collect();
        let kernel = sol
            .kernel
            .columns()
            .into_iter()
            .map(|col| {
                col[..self.nvars]
                    .iter()
                    .map(|v| self.ring.reduce_ref(v))
                    .collect::<Vec<_>>()
            })
            .filter(|col: &Vec<Int>| col.iter().any(|v| !v.is_zero()))
            .collect();
        Some((x, kernel))
    }
}
