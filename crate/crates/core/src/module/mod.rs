//! Finitely presented modules over `Z` or `Z/N`.
//!
//! A module is given by `ngens` generators and a relation matrix whose
//! columns are relation vectors. Elements are column vectors of generator
//! coordinates and a morphism acts by left multiplication, so
//! `compose(g, f).matrix() == g.matrix() * f.matrix()`.
//!
//! Each module carries its canonical decomposition `R/d_1 + ... + R/d_k`
//! (invariant factors `d_i != 1`, `d_i | d_{i+1}`, with `0` standing for a
//! free summand over `Z`) together with change-of-basis matrices in both
//! directions. Almost every question about elements reduces to these.

mod hom;
mod morphism;
mod ops;
pub(crate) mod system;

pub use hom::{solve_hom, Constraint, HomSpace};
pub use morphism::{compose, Morphism};
pub use ops::{
    codiagonal, cokernel, diagonal, direct_sum, direct_sum_many, image, kernel, oplus, power,
    submodule, Cokernel, DirectSum, Image, Kernel, Submodule,
};

use crate::linalg::{gcd, rem_floor, smith_normal_form, Int, LinalgError, Mat, Ring};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error(
        "matrix does not respect relations: relation {relation} maps outside the target relations"
    )]
    NotWellDefined { relation: usize },
    #[error("endpoint mismatch: {0}")]
    EndpointMismatch(String),
    #[error("module is infinite")]
    Infinite,
}

pub type Result<T, E = ModuleError> = std::result::Result<T, E>;

struct Data {
    ring: Ring,
    ngens: usize,
    relations: Mat,
    invariants: Vec<Int>,
    to_dec: Mat,
    from_dec: Mat,
    // Smith data of [relations | N*I] over Z, used to find certificates
    snf_u: Mat,
    snf_v: Mat,
    snf_diag: Vec<Int>,
}

/// A finitely presented module. Cheap to clone.
#[derive(Clone)]
pub struct FpModule(Arc<Data>);

impl FpModule {
    pub fn present(ring: &Ring, ngens: usize, relations: Mat) -> Result<Self> {
        ring.check_same(relations.ring())?;
        if relations.rows() != ngens {
            return Err(ModuleError::DimensionMismatch(format!(
                "relation vectors have length {}, expected {ngens}",
                relations.rows()
            )));
        }
        let z = Ring::integers();
        let mut full = relations.with_ring(&z);
        if !ring.is_integers() {
            full = full.hstack(&Mat::identity(&z, ngens).scale(ring.modulus()))?;
        }
        let snf = smith_normal_form(&full)?;
        let snf_diag: Vec<Int> = (0..ngens)
            .map(|i| {
                if i < full.cols() {
                    snf.d.get(i, i).clone()
                } else {
                    Int::ZERO
                }
            })
            .collect();
        let keep: Vec<usize> = (0..ngens).filter(|&i| !snf_diag[i].is_one()).collect();
        let invariants = keep.iter().map(|&i| snf_diag[i].clone()).collect();
        let to_dec = snf.u.select_rows(&keep).with_ring(ring);
        let from_dec = snf.u_inv.select_cols(&keep).with_ring(ring);
        Ok(FpModule(Arc::new(Data {
            ring: ring.clone(),
            ngens,
            relations,
            invariants,
            to_dec,
            from_dec,
            snf_u: snf.u,
            snf_v: snf.v,
            snf_diag,
        })))
    }

    pub fn free(ring: &Ring, n: usize) -> Self {
        Self::present(ring, n, Mat::zeros(ring, n, 0)).expect("valid presentation")
    }

    pub fn zero(ring: &Ring) -> Self {
        Self::free(ring, 0)
    }

    /// `R/d`, presented on one generator.
    pub fn cyclic(ring: &Ring, d: impl Into<Int>) -> Self {
        Self::diagonal(ring, &[d.into()])
    }

    /// `R/d_1 + ... + R/d_k`, one generator per factor.
    pub fn diagonal(ring: &Ring, ds: &[Int]) -> Self {
        let k = ds.len();
        let rel = Mat::from_fn(
            ring,
            k,
            k,
            |r, c| if r == c { ds[r].clone() } else { Int::ZERO },
        );
        Self::present(ring, k, rel).expect("valid presentation")
    }

    pub fn ring(&self) -> &Ring {
        &self.0.ring
    }

    pub fn ngens(&self) -> usize {
        self.0.ngens
    }

    pub fn relations(&self) -> &Mat {
        &self.0.relations
    }

    /// Invariant factors of the canonical decomposition, excluding 1.
    pub fn invariants(&self) -> &[Int] {
        &self.0.invariants
    }

    /// Generator coordinates to decomposition coordinates (before reducing
    /// each coordinate modulo its invariant factor).
    pub fn to_dec(&self) -> &Mat {
        &self.0.to_dec
    }

    /// Decomposition coordinates to generator coordinates: column `i` is the
    /// generator of the `i`-th cyclic summand.
    pub fn from_dec(&self) -> &Mat {
        &self.0.from_dec
    }

    pub fn is_zero(&self) -> bool {
        self.0.invariants.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.0.invariants.iter().all(|d| !d.is_zero())
    }

    /// Number of elements, `None` when infinite.
    pub fn order(&self) -> Option<Int> {
        self.is_finite().then(|| self.0.invariants.iter().product())
    }

    /// Order as a machine integer, for enumeration.
    pub fn small_order(&self) -> Option<u64> {
        self.order().and_then(|o| u64::try_from(&o).ok())
    }

    pub fn is_isomorphic(&self, other: &FpModule) -> bool {
        self.ring() == other.ring() && self.invariants() == other.invariants()
    }

    /// A presentation with one generator per invariant factor, and the
    /// isomorphism to it.
    pub fn simplify(&self) -> (FpModule, Morphism) {
        let s = FpModule::diagonal(self.ring(), self.invariants());
        let iso = Morphism::new(self, &s, self.to_dec().clone())
            .expect("decomposition map is well defined");
        (s, iso)
    }

    fn check_len(&self, x: &[Int]) -> Result<()> {
        if x.len() != self.ngens() {
            return Err(ModuleError::DimensionMismatch(format!(
                "element has {} coordinates, module has {} generators",
                x.len(),
                self.ngens()
            )));
        }
        Ok(())
    }

    /// Decomposition coordinates of `x`, each reduced modulo its factor.
    pub fn dec(&self, x: &[Int]) -> Vec<Int> {
        debug_assert_eq!(x.len(), self.ngens());
        let raw = self.to_dec().mul_vec(x).expect("length checked");
        raw.into_iter()
            .zip(&self.0.invariants)
            .map(|(c, d)| if d.is_zero() { c } else { rem_floor(&c, d) })
            .collect()
    }

    /// Generator coordinates of the element with decomposition coordinates `c`.
    pub fn from_dec_coords(&self, c: &[Int]) -> Vec<Int> {
        self.from_dec()
            .mul_vec(c)
            .expect("length matches decomposition")
    }

    /// Canonical representative of the class of `x`.
    pub fn normalize(&self, x: &[Int]) -> Vec<Int> {
        self.from_dec_coords(&self.dec(x))
    }

    pub fn is_zero_element(&self, x: &[Int]) -> bool {
        self.dec(x).iter().all(|c| c.is_zero())
    }

    pub fn elements_equal(&self, x: &[Int], y: &[Int]) -> bool {
        let d: Vec<Int> = x.iter().zip(y).map(|(a, b)| a - b).collect();
        self.is_zero_element(&d)
    }

    pub fn element(&self, coords: Vec<Int>) -> Result<Element> {
        self.check_len(&coords)?;
        let coords = self.normalize(&coords);
        Ok(Element {
            module: self.clone(),
            coords,
        })
    }

    pub fn zero_element(&self) -> Vec<Int> {
        vec![Int::ZERO; self.ngens()]
    }

    /// All elements in normal form, or `Infinite`.
    pub fn elements(&self) -> Result<Vec<Vec<Int>>> {
        if !self.is_finite() {
            return Err(ModuleError::Infinite);
        }
        Ok(mixed_radix(self.invariants())
            .map(|c| self.from_dec_coords(&c))
            .collect())
    }

    /// Additive order of `x`; `None` if it has infinite order.
    pub fn element_order(&self, x: &[Int]) -> Option<Int> {
        let mut acc = Int::ONE;
        for (c, d) in self.dec(x).iter().zip(self.invariants()) {
            if c.is_zero() {
                continue;
            }
            if d.is_zero() {
                return None;
            }
            let o = d / gcd(c, d);
            acc = &acc / gcd(&acc, &o) * o;
        }
        Some(acc)
    }

    /// Some `g` with `relations * g == y` over the ring, when `y` is a
    /// combination of relations.
    pub(crate) fn relation_preimage(&self, y: &[Int]) -> Option<Vec<Int>> {
        let z = self.0.snf_u.mul_vec(y).expect("length matches");
        let width = self.0.snf_v.cols();
        let mut w = vec![Int::ZERO; width];
        for (i, (zi, d)) in z.iter().zip(&self.0.snf_diag).enumerate() {
            if d.is_zero() {
                if !zi.is_zero() {
                    return None;
                }
            } else {
                if !(zi % d).is_zero() {
                    return None;
                }
                w[i] = zi / d;
            }
        }
        let g = self.0.snf_v.mul_vec(&w).expect("length matches");
        let nrel = self.relations().cols();
        Some(
            g[..nrel]
                .iter()
                .map(|v| self.ring().reduce_ref(v))
                .collect(),
        )
    }
}

impl PartialEq for FpModule {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.ring == other.0.ring
                && self.0.ngens == other.0.ngens
                && self.0.relations == other.0.relations)
    }
}

impl Eq for FpModule {}

impl fmt::Debug for FpModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FpModule({}; {} gens; {})",
            self.ring(),
            self.ngens(),
            self
        )
    }
}

/// Prints the decomposition, e.g. `Z/2 + Z/4` or `0`.
impl fmt::Display for FpModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .invariants()
            .iter()
            .map(|d| {
                if d.is_zero() {
                    "Z".to_string()
                } else {
                    format!("Z/{d}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// An element in normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    pub module: FpModule,
    pub coords: Vec<Int>,
}

/// Every tuple `(c_0, ..)` with `0 <= c_i < radices[i]`, first coordinate
/// varying fastest. All radices must be positive.
pub(crate) fn mixed_radix(radices: &[Int]) -> impl Iterator<Item = Vec<Int>> {
    let radices = radices.to_vec();
    let mut next = if radices.iter().any(|r| r.is_zero()) {
        None
    } else {
        Some(vec![Int::ZERO; radices.len()])
    };
    std::iter::from_fn(move || {
        let cur = next.take()?;
        let mut succ = cur.clone();
        for (i, r) in radices.iter().enumerate() {
            succ[i] += Int::ONE;
            if &succ[i] < r {
                next = Some(succ);
                return Some(cur);
            }
            succ[i] = Int::ZERO;
        }
        Some(cur)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn cyclic_quotient_of_z4() {
        let r = Ring::modulo(4);
        let m = FpModule::present(&r, 1, Mat::from_rows(&r, &[vec![2]])).unwrap();
        assert_eq!(m.invariants(), &ints(&[2]));
        assert_eq!(m.order(), Some(int(2)));
    }

    #[test]
    fn free_over_z4() {
        let r = Ring::modulo(4);
        let m = FpModule::free(&r, 1);
        assert_eq!(m.invariants(), &ints(&[4]));
    }

    #[test]
    fn integer_presentation_of_z6() {
        let z = Ring::integers();
        let m = FpModule::present(&z, 2, Mat::from_rows(&z, &[vec![2, 0], vec![0, 3]])).unwrap();
        assert_eq!(m.invariants(), &ints(&[6]));
        assert_eq!(m.order(), Some(int(6)));
        assert_eq!(m.elements().unwrap().len(), 6);
    }

    #[test]
    fn free_integer_summand() {
        let z = Ring::integers();
        let m = FpModule::present(&z, 2, Mat::from_rows(&z, &[vec![3], vec![0]])).unwrap();
        assert_eq!(m.invariants(), &ints(&[3, 0]));
        assert_eq!(m.order(), None);
        assert!(m.elements().is_err());
        assert_eq!(m.element_order(&ints(&[0, 1])), None);
        assert_eq!(m.element_order(&ints(&[1, 0])), Some(int(3)));
    }

    #[test]
    fn dimension_mismatch() {
        let r = Ring::modulo(4);
        assert!(FpModule::present(&r, 2, Mat::from_rows(&r, &[vec![2]])).is_err());
    }

    #[test]
    fn normal_forms_are_unique() {
        let r = Ring::modulo(8);
        let m = FpModule::present(&r, 2, Mat::from_rows(&r, &[vec![2, 4], vec![6, 0]])).unwrap();
        let elems = m.elements().unwrap();
        assert_eq!(int(elems.len() as i64), m.order().unwrap());
        for a in 0..8 {
            for b in 0..8 {
                let x = ints(&[a, b]);
                let nf = m.normalize(&x);
                assert!(elems.contains(&nf));
                assert!(m.elements_equal(&x, &nf));
            }
        }
    }

    #[test]
    fn zero_ring_modules_vanish() {
        let r = Ring::modulo(1);
        assert!(FpModule::free(&r, 3).is_zero());
    }

    #[test]
    fn mixed_radix_counts() {
        assert_eq!(mixed_radix(&ints(&[2, 3])).count(), 6);
        assert_eq!(mixed_radix(&[]).count(), 1);
    }
}
