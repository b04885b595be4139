use super::int::{div_floor, rem_floor};
use super::{Int, LinalgError, Mat};
use num_traits::Signed;

/// `u * a * v = d` with `u`, `v` unimodular and `d` diagonal,
/// `d[0] | d[1] | ...`, all diagonal entries non-negative.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: Mat,
    pub u_inv: Mat,
    pub d: Mat,
    pub v: Mat,
}

impl SmithForm {
    /// The `min(rows, cols)` diagonal entries.
    pub fn diagonal(&self) -> Vec<Int> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i).clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

struct Work {
    m: usize,
    n: usize,
    d: Vec<Int>,
    u: Vec<Int>,
    ui: Vec<Int>,
    v: Vec<Int>,
}

impl Work {
    fn at(&self, r: usize, c: usize) -> &Int {
        &self.d[r * self.n + c]
    }

    // row_i += k * row_j
    fn add_row(&mut self, i: usize, j: usize, k: &Int) {
        let (m, n) = (self.m, self.n);
        for c in 0..n {
            let t = &self.d[j * n + c] * k;
            self.d[i * n + c] += t;
        }
        for c in 0..m {
            let t = &self.u[j * m + c] * k;
            self.u[i * m + c] += t;
        }
        // inverse: column j of u_inv -= k * column i
        for r in 0..m {
            let t = &self.ui[r * m + i] * k;
            self.ui[r * m + j] -= t;
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        let (m, n) = (self.m, self.n);
        for c in 0..n {
            self.d.swap(i * n + c, j * n + c);
        }
        for c in 0..m {
            self.u.swap(i * m + c, j * m + c);
        }
        for r in 0..m {
            self.ui.swap(r * m + i, r * m + j);
        }
    }

    fn negate_row(&mut self, i: usize) {
        let (m, n) = (self.m, self.n);
        for c in 0..n {
            self.d[i * n + c] = -std::mem::take(&mut self.d[i * n + c]);
        }
        for c in 0..m {
            self.u[i * m + c] = -std::mem::take(&mut self.u[i * m + c]);
        }
        for r in 0..m {
            self.ui[r * m + i] = -std::mem::take(&mut self.ui[r * m + i]);
        }
    }

    // col_i += k * col_j
    fn add_col(&mut self, i: usize, j: usize, k: &Int) {
        let n = self.n;
        for r in 0..self.m {
            let t = &self.d[r * n + j] * k;
            self.d[r * n + i] += t;
        }
        for r in 0..n {
            let t = &self.v[r * n + j] * k;
            self.v[r * n + i] += t;
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        let n = self.n;
        for r in 0..self.m {
            self.d.swap(r * n + i, r * n + j);
        }
        for r in 0..n {
            self.v.swap(r * n + i, r * n + j);
        }
    }

    fn min_abs_in(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, Int)> = None;
        for r in t..self.m {
            for c in t..self.n {
                let x = self.at(r, c);
                if !x.is_zero() {
                    let a = x.abs();
                    if best.as_ref().is_none_or(|(_, _, b)| a < *b) {
                        best = Some((r, c, a));
                    }
                }
            }
        }
        best.map(|(r, c, _)| (r, c))
    }

    fn min_abs_cross(&self, t: usize) -> (usize, usize) {
        let mut best = (t, t, self.at(t, t).abs());
        for r in t + 1..self.m {
            let a = self.at(r, t).abs();
            if !a.is_zero() && (best.2.is_zero() || a < best.2) {
                best = (r, t, a);
            }
        }
        for c in t + 1..self.n {
            let a = self.at(t, c).abs();
            if !a.is_zero() && (best.2.is_zero() || a < best.2) {
                best = (t, c, a);
            }
        }
        (best.0, best.1)
    }
}

/// Smith normal form of an integer matrix.
pub fn smith_normal_form(a: &Mat) -> Result<SmithForm, LinalgError> {
    let ring = a.ring().clone();
    if !ring.is_integers() {
        return Err(LinalgError::WrongRing {
            expected: "the integers".into(),
            found: ring,
        });
    }
    let (m, n) = (a.rows(), a.cols());
    let ident = |k: usize| -> Vec<Int> {
        (0..k * k)
            .map(|i| if i / k == i % k { Int::ONE } else { Int::ZERO })
            .collect()
    };
    let mut w = Work {
        m,
        n,
        d: a.to_rows().into_iter().flatten().collect(),
        u: ident(m),
        ui: ident(m),
        v: ident(n),
    };

    for t in 0..m.min(n) {
        let Some((pr, pc)) = w.min_abs_in(t) else {
            break;
        };
        w.swap_rows(t, pr);
        w.swap_cols(t, pc);
        loop {
            let p = w.at(t, t).clone();
            let mut residue = false;
            for r in t + 1..m {
                if !w.at(r, t).is_zero() {
                    let q = div_floor(w.at(r, t), &p);
                    w.add_row(r, t, &-q);
                    residue |= !w.at(r, t).is_zero();
                }
            }
            for c in t + 1..n {
                if !w.at(t, c).is_zero() {
                    let q = div_floor(w.at(t, c), &p);
                    w.add_col(c, t, &-q);
                    residue |= !w.at(t, c).is_zero();
                }
            }
            if residue {
                let (r, c) = w.min_abs_cross(t);
                w.swap_rows(t, r);
                w.swap_cols(t, c);
                continue;
            }
            let bad_row =
                (t + 1..m).find(|&r| (t + 1..n).any(|c| !rem_floor(w.at(r, c), &p).is_zero()));
            match bad_row {
                Some(r) => w.add_row(t, r, &Int::ONE),
                None => break,
            }
        }
        if w.at(t, t).is_negative() {
            w.negate_row(t);
        }
    }

    let build = |rows: usize, cols: usize, data: Vec<Int>| {
        let mut it = data.into_iter();
        Mat::from_fn(&ring, rows, cols, |_, _| it.next().unwrap())
    };
    Ok(SmithForm {
        u: build(m, m, w.u),
        u_inv: build(m, m, w.ui),
        d: build(m, n, w.d),
        v: build(n, n, w.v),
    })
}

/// Determinant of a square integer matrix by fraction-free elimination.
pub fn determinant(a: &Mat) -> Int {
    assert_eq!(a.rows(), a.cols());
    let n = a.rows();
    let mut m: Vec<Vec<Int>> = a.to_rows();
    let mut sign = Int::ONE;
    let mut prev = Int::ONE;
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return Int::ZERO,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    if n == 0 {
        Int::ONE
    } else {
        sign * &m[n - 1][n - 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, Ring};

    fn is_unimodular(a: &Mat) -> bool {
        determinant(a).abs() == Int::ONE
    }

    fn check(a: &Mat) -> SmithForm {
        let s = smith_normal_form(a).unwrap();
        assert_eq!(s.u.mul(a).unwrap().mul(&s.v).unwrap(), s.d);
        assert!(is_unimodular(&s.u));
        assert!(is_unimodular(&s.v));
        assert_eq!(
            s.u.mul(&s.u_inv).unwrap(),
            Mat::identity(a.ring(), a.rows())
        );
        let diag = s.diagonal();
        for (i, x) in diag.iter().enumerate() {
            assert!(!x.is_negative());
            if i + 1 < diag.len() {
                let next = &diag[i + 1];
                assert!(if x.is_zero() {
                    next.is_zero()
                } else {
                    rem_floor(next, x).is_zero()
                });
            }
        }
        for r in 0..s.d.rows() {
            for c in 0..s.d.cols() {
                if r != c {
                    assert!(s.d.get(r, c).is_zero());
                }
            }
        }
        s
    }

    #[test]
    fn empty_matrix() {
        let z = Ring::integers();
        let s = check(&Mat::zeros(&z, 0, 0));
        assert_eq!(s.u.rows(), 0);
        assert_eq!(s.v.rows(), 0);
    }

    #[test]
    fn identity_is_fixed() {
        let z = Ring::integers();
        let s = check(&Mat::identity(&z, 2));
        assert_eq!(s.d, Mat::identity(&z, 2));
    }

    #[test]
    fn diag_2_3_becomes_1_6() {
        let z = Ring::integers();
        let s = check(&Mat::from_rows(&z, &[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.diagonal(), vec![int(1), int(6)]);
    }

    #[test]
    fn rejects_modular_input() {
        let a = Mat::identity(&Ring::modulo(4), 2);
        assert!(matches!(
            smith_normal_form(&a),
            Err(LinalgError::WrongRing { .. })
        ));
    }

    #[test]
    fn rectangular_and_degenerate() {
        let z = Ring::integers();
        check(&Mat::from_rows(&z, &[vec![0, 0, 0], vec![0, 4, 6]]));
        check(&Mat::from_rows(&z, &[vec![2], vec![4], vec![-6]]));
        let s = check(&Mat::from_rows(&z, &[vec![6, 4], vec![10, 14], vec![0, 0]]));
        // gcd of entries is 2, |det| of the top block is 44
        assert_eq!(s.diagonal(), vec![int(2), int(22)]);
    }

    #[test]
    fn determinant_matches_cofactor() {
        let z = Ring::integers();
        let a = Mat::from_rows(&z, &[vec![2, -1, 0], vec![1, 3, 4], vec![0, 5, -2]]);
        // 2*(3*-2 - 4*5) - (-1)*(1*-2 - 0) = -52 - 2
        assert_eq!(determinant(&a), int(-54));
    }
}
