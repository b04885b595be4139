use super::int::{div_floor, mod_inverse_unit, rem_floor, xgcd};
use super::{gcd, Int, LinalgError, Mat, Ring};

/// Howell form of a matrix over `Z/N`.
///
/// `h` holds the non-zero rows of the (unique) Howell form of the row span,
/// `u` satisfies `u * a = h`, and `back` satisfies `back * h = a`, so the two
/// row spans coincide. Pivot columns are listed in `pivots`.
#[derive(Clone, Debug)]
pub struct HowellForm {
    pub h: Mat,
    pub u: Mat,
    pub back: Mat,
    pub pivots: Vec<usize>,
}

/// Rows of a Howell basis, each tagged with its pivot column.
pub(crate) struct HowellRows {
    pub rows: Vec<Vec<Int>>,
    pub pivots: Vec<usize>,
}

fn is_zero_row(r: &[Int]) -> bool {
    r.iter().all(|x| x.is_zero())
}

fn combine(a: &[Int], ka: &Int, b: &[Int], kb: &Int, n: &Int) -> Vec<Int> {
    a.iter()
        .zip(b)
        .map(|(x, y)| rem_floor(&(x * ka + y * kb), n))
        .collect()
}

/// Howell basis of the span of `rows` (vectors of length `ncols`) over
/// `Z/n`, `n >= 2`. Deterministic: pivots are taken from the lowest row
/// index and then the lowest column index.
pub(crate) fn howell_rows(rows: Vec<Vec<Int>>, ncols: usize, n: &Int) -> HowellRows {
    let mut rows: Vec<Vec<Int>> = rows
        .into_iter()
        .map(|r| r.iter().map(|x| rem_floor(x, n)).collect::<Vec<_>>())
        .filter(|r| !is_zero_row(r))
        .collect();
    let mut pivots = Vec::new();
    let mut top = 0;
    for c in 0..ncols {
        let Some(first) = (top..rows.len()).find(|&k| !rows[k][c].is_zero()) else {
            continue;
        };
        rows.swap(top, first);
        for k in top + 1..rows.len() {
            if rows[k][c].is_zero() {
                continue;
            }
            let a = rows[top][c].clone();
            let b = rows[k][c].clone();
            let (g, s, t) = xgcd(&a, &b);
            let new_top = combine(&rows[top], &s, &rows[k], &t, n);
            let new_k = combine(&rows[top], &(&b / &g), &rows[k], &-(&a / &g), n);
            rows[top] = new_top;
            rows[k] = new_k;
        }
        let g = rows[top][c].clone();
        let u = mod_inverse_unit(&g, n);
        if !u.is_one() {
            rows[top] = rows[top].iter().map(|x| rem_floor(&(x * &u), n)).collect();
        }
        let d = rows[top][c].clone();
        // the annihilator multiple of the pivot row vanishes at column c
        let ann = n / &d;
        let extra: Vec<Int> = rows[top]
            .iter()
            .map(|x| rem_floor(&(x * &ann), n))
            .collect();
        if !is_zero_row(&extra) {
            rows.push(extra);
        }
        pivots.push(c);
        top += 1;
        // rows above `top` are pivot rows and never zero
        rows.retain(|r| !is_zero_row(r));
    }
    rows.truncate(top);
    debug_assert_eq!(rows.len(), pivots.len());
    // reduce entries above each pivot into [0, pivot)
    for i in 0..rows.len() {
        let c = pivots[i];
        let p = rows[i][c].clone();
        for j in 0..i {
            let q = div_floor(&rows[j][c], &p);
            if !q.is_zero() {
                rows[j] = combine(&rows[j], &Int::ONE, &rows[i], &-q, n);
            }
        }
    }
    HowellRows { rows, pivots }
}

/// Howell form of `a` over `Z/N` with transformation data.
pub fn howell_form(a: &Mat) -> Result<HowellForm, LinalgError> {
    let ring = a.ring().clone();
    if ring.is_integers() {
        return Err(LinalgError::WrongRing {
            expected: "Z/N with N >= 1".into(),
            found: ring,
        });
    }
    let (m, n) = (a.rows(), a.cols());
    if ring.is_zero_ring() {
        return Ok(HowellForm {
            h: Mat::zeros(&ring, 0, n),
            u: Mat::zeros(&ring, 0, m),
            back: Mat::zeros(&ring, m, 0),
            pivots: vec![],
        });
    }
    let aug = augmented_howell(a);
    let (h, u) = split_pivot_rows(&ring, &aug, n, m);
    let back = express_rows(&ring, a, &h, &aug.pivots[..h.rows()]);
    let pivots = aug.pivots[..h.rows()].to_vec();
    Ok(HowellForm { h, u, back, pivots })
}

/// Howell basis of `[a | I]`.
pub(crate) fn augmented_howell(a: &Mat) -> HowellRows {
    let (m, n) = (a.rows(), a.cols());
    let rows: Vec<Vec<Int>> = (0..m)
        .map(|r| {
            let mut row = a.row(r).to_vec();
            row.extend((0..m).map(|k| if k == r { Int::ONE } else { Int::ZERO }));
            row
        })
        .collect();
    howell_rows(rows, n + m, a.ring().modulus())
}

/// Splits an augmented Howell basis of `[a | I]` into the rows with a pivot
/// inside `a` (giving `h` and the transform `u`).
pub(crate) fn split_pivot_rows(ring: &Ring, aug: &HowellRows, n: usize, m: usize) -> (Mat, Mat) {
    let k = aug.pivots.iter().take_while(|&&p| p < n).count();
    let h = Mat::from_fn(ring, k, n, |r, c| aug.rows[r][c].clone());
    let u = Mat::from_fn(ring, k, m, |r, c| aug.rows[r][n + c].clone());
    (h, u)
}

/// Left kernel generators from an augmented Howell basis: rows `y` with
/// `y * a = 0`.
pub(crate) fn left_kernel_rows(ring: &Ring, aug: &HowellRows, n: usize, m: usize) -> Mat {
    let k = aug.pivots.iter().take_while(|&&p| p < n).count();
    let rest = aug.rows.len() - k;
    Mat::from_fn(ring, rest, m, |r, c| aug.rows[k + r][n + c].clone())
}

/// Reduces `v` against Howell rows. Returns the coefficients if `v` lies in
/// their span.
pub(crate) fn reduce_against(
    rows: &[Vec<Int>],
    pivots: &[usize],
    v: &[Int],
    n: &Int,
) -> Option<Vec<Int>> {
    let mut residual: Vec<Int> = v.iter().map(|x| rem_floor(x, n)).collect();
    let mut coeffs = Vec::with_capacity(rows.len());
    for (row, &c) in rows.iter().zip(pivots) {
        let p = &row[c];
        let x = &residual[c];
        if !rem_floor(x, p).is_zero() {
            return None;
        }
        let q = x / p;
        if !q.is_zero() {
            for (r, h) in residual.iter_mut().zip(row) {
                *r = rem_floor(&(&*r - &q * h), n);
            }
        }
        coeffs.push(q);
    }
    if is_zero_row(&residual) {
        Some(coeffs)
    } else {
        None
    }
}

fn express_rows(ring: &Ring, a: &Mat, h: &Mat, pivots: &[usize]) -> Mat {
    let hr = h.to_rows();
    let m = a.rows();
    let mut out = Mat::zeros(ring, m, h.rows());
    for r in 0..m {
        let coeffs = reduce_against(&hr, pivots, a.row(r), ring.modulus())
            .expect("input rows lie in the span of their Howell form");
        for (c, q) in coeffs.into_iter().enumerate() {
            out.set(r, c, q);
        }
    }
    out
}

/// True when `h` satisfies the Howell form shape conditions: echelon, pivots
/// dividing `N`, entries above pivots reduced, no zero rows.
pub fn is_howell_shaped(h: &Mat) -> bool {
    let n = h.ring().modulus().clone();
    let mut last: Option<usize> = None;
    for r in 0..h.rows() {
        let Some(c) = h.row(r).iter().position(|x| !x.is_zero()) else {
            return false;
        };
        if last.is_some_and(|l| c <= l) {
            return false;
        }
        let p = h.get(r, c);
        if gcd(p, &n) != *p {
            return false;
        }
        for above in 0..r {
            if h.get(above, c) >= p {
                return false;
            }
        }
        last = Some(c);
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z4() -> Ring {
        Ring::modulo(4)
    }

    #[test]
    fn identity_is_fixed() {
        let i = Mat::identity(&z4(), 3);
        let hf = howell_form(&i).unwrap();
        assert_eq!(hf.h, i);
    }

    #[test]
    fn two_mod_four_is_canonical() {
        let a = Mat::from_rows(&z4(), &[vec![2]]);
        assert_eq!(howell_form(&a).unwrap().h, a);
    }

    #[test]
    fn annihilator_row_is_added() {
        // span of (2, 1) over Z/4 contains 2*(2,1) = (0, 2)
        let a = Mat::from_rows(&z4(), &[vec![2, 1]]);
        let hf = howell_form(&a).unwrap();
        assert_eq!(hf.h, Mat::from_rows(&z4(), &[vec![2, 1], vec![0, 2]]));
        assert_eq!(hf.u.mul(&a).unwrap(), hf.h);
        assert_eq!(hf.back.mul(&hf.h).unwrap(), a);
    }

    #[test]
    fn unit_pivot_is_normalized() {
        let a = Mat::from_rows(&z4(), &[vec![3, 1]]);
        let hf = howell_form(&a).unwrap();
        assert_eq!(hf.h, Mat::from_rows(&z4(), &[vec![1, 3]]));
    }

    #[test]
    fn rejects_integers() {
        let a = Mat::identity(&Ring::integers(), 1);
        assert!(howell_form(&a).is_err());
    }

    #[test]
    fn zero_ring_is_empty() {
        let a = Mat::identity(&Ring::modulo(1), 2);
        assert_eq!(howell_form(&a).unwrap().h.rows(), 0);
    }
}
