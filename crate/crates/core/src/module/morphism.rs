use super::{FpModule, ModuleError, Result};
use crate::linalg::{Int, Mat};
use std::fmt;

/// A module homomorphism, stored as a matrix acting on generator
/// coordinates, together with a certificate `G` of well-definedness:
/// `matrix * src.relations == tgt.relations * G`.
///
/// Equality compares induced maps, not raw matrices.
#[derive(Clone)]
pub struct Morphism {
    src: FpModule,
    tgt: FpModule,
    matrix: Mat,
    certificate: Mat,
}

impl Morphism {
    /// Checks the matrix shape and that every relation of `src` lands in the
    /// relations of `tgt`.
    pub fn new(src: &FpModule, tgt: &FpModule, matrix: Mat) -> Result<Self> {
        src.ring().check_same(tgt.ring())?;
        src.ring().check_same(matrix.ring())?;
        if matrix.rows() != tgt.ngens() || matrix.cols() != src.ngens() {
            return Err(ModuleError::DimensionMismatch(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                tgt.ngens(),
                src.ngens()
            )));
        }
        let images = matrix.mul(src.relations())?;
        let mut cols = Vec::with_capacity(images.cols());
        for (j, y) in images.columns().into_iter().enumerate() {
            let g = tgt
                .relation_preimage(&y)
                .ok_or(ModuleError::NotWellDefined { relation: j })?;
            cols.push(g);
        }
        let certificate = Mat::from_columns(src.ring(), tgt.relations().cols(), &cols);
        Ok(Morphism {
            src: src.clone(),
            tgt: tgt.clone(),
            matrix,
            certificate,
        })
    }

    pub fn from_rows(src: &FpModule, tgt: &FpModule, rows: &[Vec<i64>]) -> Result<Self> {
        let m = if rows.is_empty() {
            Mat::zeros(src.ring(), 0, src.ngens())
        } else {
            Mat::from_rows(src.ring(), rows)
        };
        Self::new(src, tgt, m)
    }

    fn from_parts(src: &FpModule, tgt: &FpModule, matrix: Mat, certificate: Mat) -> Self {
        debug_assert_eq!(
            matrix.mul(src.relations()).unwrap(),
            tgt.relations().mul(&certificate).unwrap(),
            "certificate equation"
        );
        Morphism {
            src: src.clone(),
            tgt: tgt.clone(),
            matrix,
            certificate,
        }
    }

    pub fn identity(m: &FpModule) -> Self {
        let r = m.ring();
        Self::from_parts(
            m,
            m,
            Mat::identity(r, m.ngens()),
            Mat::identity(r, m.relations().cols()),
        )
    }

    pub fn zero(src: &FpModule, tgt: &FpModule) -> Self {
        let r = src.ring();
        Self::from_parts(
            src,
            tgt,
            Mat::zeros(r, tgt.ngens(), src.ngens()),
            Mat::zeros(r, tgt.relations().cols(), src.relations().cols()),
        )
    }

    pub fn src(&self) -> &FpModule {
        &self.src
    }

    pub fn tgt(&self) -> &FpModule {
        &self.tgt
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn certificate(&self) -> &Mat {
        &self.certificate
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &Morphism) -> Result<Morphism> {
        compose(self, f)
    }

    pub fn apply(&self, x: &[Int]) -> Result<Vec<Int>> {
        if x.len() != self.src.ngens() {
            return Err(ModuleError::DimensionMismatch(format!(
                "element has {} coordinates, source has {} generators",
                x.len(),
                self.src.ngens()
            )));
        }
        Ok(self.tgt.normalize(&self.matrix.mul_vec(x)?))
    }

    pub fn add(&self, other: &Morphism) -> Result<Morphism> {
        self.check_parallel(other)?;
        Ok(Self::from_parts(
            &self.src,
            &self.tgt,
            self.matrix.add(&other.matrix)?,
            self.certificate.add(&other.certificate)?,
        ))
    }

    pub fn sub(&self, other: &Morphism) -> Result<Morphism> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Morphism {
        Self::from_parts(
            &self.src,
            &self.tgt,
            self.matrix.neg(),
            self.certificate.neg(),
        )
    }

    pub fn scale(&self, k: &Int) -> Morphism {
        Self::from_parts(
            &self.src,
            &self.tgt,
            self.matrix.scale(k),
            self.certificate.scale(k),
        )
    }

    fn check_parallel(&self, other: &Morphism) -> Result<()> {
        if self.src != other.src || self.tgt != other.tgt {
            return Err(ModuleError::EndpointMismatch(
                "morphisms are not parallel".into(),
            ));
        }
        Ok(())
    }

    /// True when every generator maps to zero.
    pub fn is_zero(&self) -> bool {
        self.matrix
            .columns()
            .iter()
            .all(|c| self.tgt.is_zero_element(c))
    }

    /// Some preimage of `y`, if `y` is in the image.
    pub fn preimage(&self, y: &[Int]) -> Result<Option<Vec<Int>>> {
        if y.len() != self.tgt.ngens() {
            return Err(ModuleError::DimensionMismatch(
                "element has wrong length".into(),
            ));
        }
        let n = self.src.ngens();
        let mut sys = super::system::Congruences::new(self.src.ring(), n);
        sys.require_equal_in(&self.tgt, &self.matrix.to_rows(), y);
        Ok(sys.solve().map(|(x, _)| x))
    }

    pub fn is_injective(&self) -> bool {
        super::kernel(self)
            .map(|k| k.module.is_zero())
            .unwrap_or(false)
    }

    pub fn is_surjective(&self) -> bool {
        super::cokernel(self)
            .map(|c| c.module.is_zero())
            .unwrap_or(false)
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Same map with the matrix entries replaced by canonical representatives
    /// of each column's image.
    pub fn normalized(&self) -> Morphism {
        let cols: Vec<Vec<Int>> = self
            .matrix
            .columns()
            .iter()
            .map(|c| self.tgt.normalize(c))
            .collect();
        let m = Mat::from_columns(self.src.ring(), self.tgt.ngens(), &cols);
        Morphism::new(&self.src, &self.tgt, m).expect("same induced map")
    }

    /// Images of the generators in decomposition coordinates of the target.
    /// Two parallel morphisms are equal iff these agree.
    pub fn dec_matrix(&self) -> Vec<Vec<Int>> {
        self.matrix
            .columns()
            .iter()
            .map(|c| self.tgt.dec(c))
            .collect()
    }
}

/// `g ∘ f`.
pub fn compose(g: &Morphism, f: &Morphism) -> Result<Morphism> {
    if f.tgt != g.src {
        return Err(ModuleError::EndpointMismatch(format!(
            "cannot compose {:?} -> {:?} after {:?} -> {:?}",
            g.src, g.tgt, f.src, f.tgt
        )));
    }
    Ok(Morphism::from_parts(
        &f.src,
        &g.tgt,
        g.matrix.mul(&f.matrix)?,
        g.certificate.mul(&f.certificate)?,
    ))
}

impl PartialEq for Morphism {
    fn eq(&self, other: &Self) -> bool {
        self.src == other.src
            && self.tgt == other.tgt
            && self
                .matrix
                .columns()
                .iter()
                .zip(other.matrix.columns())
                .all(|(a, b)| self.tgt.elements_equal(a, &b))
    }
}

impl Eq for Morphism {}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Morphism({:?} -> {:?}, {})",
            self.src, self.tgt, self.matrix
        )
    }
}
