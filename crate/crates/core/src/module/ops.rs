use super::system::Congruences;
use super::{compose, FpModule, ModuleError, Morphism, Result};
use crate::linalg::{Int, Mat};

/// A submodule given by a simplified presentation.
#[derive(Clone, Debug)]
pub struct Submodule {
    pub module: FpModule,
    pub incl: Morphism,
    /// Column `j` expresses the `j`-th given generator in the generators of
    /// `module`.
    pub coords: Mat,
}

#[derive(Clone, Debug)]
pub struct Kernel {
    pub module: FpModule,
    pub incl: Morphism,
}

#[derive(Clone, Debug)]
pub struct Cokernel {
    pub module: FpModule,
    pub proj: Morphism,
}

#[derive(Clone, Debug)]
pub struct Image {
    pub module: FpModule,
    pub incl: Morphism,
    pub corestriction: Morphism,
}

/// Submodule of `ambient` spanned by `gens`, presented on one generator
/// per invariant factor.
pub fn submodule(ambient: &FpModule, gens: &[Vec<Int>]) -> Result<Submodule> {
    let ring = ambient.ring();
    let n = ambient.ngens();
    if let Some(g) = gens.iter().find(|g| g.len() != n) {
        return Err(ModuleError::DimensionMismatch(format!(
            "generator of length {}, expected {n}",
            g.len()
        )));
    }
    let k = gens.len();
    let span = Mat::from_columns(ring, n, gens);
    let mut sys = Congruences::new(ring, k);
    sys.require_equal_in(ambient, &span.to_rows(), &vec![Int::ZERO; n]);
    let (_, syz) = sys.solve().expect("homogeneous system");
    let pres = FpModule::present(ring, k, Mat::from_columns(ring, k, &syz))?;
    let module = FpModule::diagonal(ring, pres.invariants());
    let incl = Morphism::new(&module, ambient, span.mul(pres.from_dec())?)?;
    Ok(Submodule {
        module,
        incl,
        coords: pres.to_dec().clone(),
    })
}

pub fn kernel(f: &Morphism) -> Result<Kernel> {
    let a = f.src();
    let mut sys = Congruences::new(a.ring(), a.ngens());
    sys.require_equal_in(
        f.tgt(),
        &f.matrix().to_rows(),
        &vec![Int::ZERO; f.tgt().ngens()],
    );
    let (_, gens) = sys.solve().expect("homogeneous system");
    let sub = submodule(a, &gens)?;
    Ok(Kernel {
        module: sub.module,
        incl: sub.incl,
    })
}

/// Presented by the target's relations together with the columns of `f`.
pub fn cokernel(f: &Morphism) -> Result<Cokernel> {
    let b = f.tgt();
    let rel = b.relations().hstack(f.matrix())?;
    let module = FpModule::present(b.ring(), b.ngens(), rel)?;
    let proj = Morphism::new(b, &module, Mat::identity(b.ring(), b.ngens()))?;
    Ok(Cokernel { module, proj })
}

pub fn image(f: &Morphism) -> Result<Image> {
    let sub = submodule(f.tgt(), &f.matrix().columns())?;
    let corestriction = Morphism::new(f.src(), &sub.module, sub.coords.clone())?;
    Ok(Image {
        module: sub.module,
        incl: sub.incl,
        corestriction,
    })
}

/// Direct sum with its structure maps.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: FpModule,
    pub summands: Vec<FpModule>,
    pub inj: Vec<Morphism>,
    pub proj: Vec<Morphism>,
}

impl DirectSum {
    /// `(x_0, x_1, ..)` to the sum of the images; the sum of morphisms out
    /// of the summands.
    pub fn copair(&self, maps: &[Morphism]) -> Result<Morphism> {
        self.check_arity(maps.len())?;
        let tgt = maps.first().map(|m| m.tgt().clone());
        let Some(tgt) = tgt else {
            return Err(ModuleError::EndpointMismatch("empty copairing".into()));
        };
        let mut acc = Morphism::zero(&self.module, &tgt);
        for (m, p) in maps.iter().zip(&self.proj) {
            acc = acc.add(&compose(m, p)?)?;
        }
        Ok(acc)
    }

    /// The morphism into the sum with the given components.
    pub fn pair(&self, maps: &[Morphism]) -> Result<Morphism> {
        self.check_arity(maps.len())?;
        let Some(src) = maps.first().map(|m| m.src().clone()) else {
            return Err(ModuleError::EndpointMismatch("empty pairing".into()));
        };
        let mut acc = Morphism::zero(&src, &self.module);
        for (m, i) in maps.iter().zip(&self.inj) {
            acc = acc.add(&compose(i, m)?)?;
        }
        Ok(acc)
    }

    fn check_arity(&self, k: usize) -> Result<()> {
        if k != self.summands.len() {
            return Err(ModuleError::EndpointMismatch(format!(
                "{k} components for a sum of {} modules",
                self.summands.len()
            )));
        }
        Ok(())
    }
}

pub fn direct_sum(a: &FpModule, b: &FpModule) -> Result<DirectSum> {
    direct_sum_many(&[a.clone(), b.clone()])
}

/// Block-diagonal presentation. Deterministic, so calling it twice on the
/// same summands gives equal modules.
pub fn direct_sum_many(mods: &[FpModule]) -> Result<DirectSum> {
    let Some(first) = mods.first() else {
        return Err(ModuleError::EndpointMismatch(
            "direct sum of no modules".into(),
        ));
    };
    let ring = first.ring();
    for m in mods {
        ring.check_same(m.ring())?;
    }
    let mut rel = Mat::zeros(ring, 0, 0);
    for m in mods {
        rel = rel.block_diag(m.relations())?;
    }
    let n: usize = mods.iter().map(FpModule::ngens).sum();
    let module = FpModule::present(ring, n, rel)?;
    let mut inj = Vec::new();
    let mut proj = Vec::new();
    let mut offset = 0;
    for m in mods {
        let k = m.ngens();
        let e = Mat::from_fn(ring, n, k, |r, c| {
            if r == offset + c {
                Int::ONE
            } else {
                Int::ZERO
            }
        });
        inj.push(Morphism::new(m, &module, e.clone())?);
        proj.push(Morphism::new(&module, m, e.transpose())?);
        offset += k;
    }
    Ok(DirectSum {
        module,
        summands: mods.to_vec(),
        inj,
        proj,
    })
}

/// `A^r` as a bare module; the zero module when `r == 0`.
pub fn power(a: &FpModule, r: usize) -> FpModule {
    if r == 0 {
        return FpModule::zero(a.ring());
    }
    direct_sum_many(&vec![a.clone(); r])
        .expect("same ring")
        .module
}

/// `A + A -> A`, `(a, b) -> a + b`.
pub fn codiagonal(a: &FpModule) -> Result<Morphism> {
    let s = direct_sum(a, a)?;
    let id = Morphism::identity(a);
    s.copair(&[id.clone(), id])
}

/// `A -> A + A`, `a -> (a, a)`.
pub fn diagonal(a: &FpModule) -> Result<Morphism> {
    let s = direct_sum(a, a)?;
    let id = Morphism::identity(a);
    s.pair(&[id.clone(), id])
}

/// `f + g: A + B -> C + D`.
pub fn oplus(f: &Morphism, g: &Morphism) -> Result<Morphism> {
    let s = direct_sum(f.src(), g.src())?;
    let t = direct_sum(f.tgt(), g.tgt())?;
    Morphism::new(&s.module, &t.module, f.matrix().block_diag(g.matrix())?)
}
