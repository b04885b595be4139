//! Ext groups through explicit free resolutions.
//!
//! `Ext^i(C, A)` is computed as cocycles modulo coboundaries inside
//! `Hom(F_i, A) = A^{r_i}`, where `F` is a free resolution of `C`, and is
//! presented as a diagonal module so that class coordinates are unique.
//! Cochains are handled as morphisms `F_i -> A`.

use crate::diagram::{DiagramError, ShortExactSeq};
use crate::linalg::{Int, Mat};
use crate::module::{
    cokernel, compose, direct_sum, image, kernel, power, solve_hom, Constraint, FpModule,
    ModuleError, Morphism,
};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtError {
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("degree {0} is not supported (only 0, 1, 2)")]
    Degree(usize),
    #[error("cochain is not a cocycle")]
    NotCocycle,
    #[error("class belongs to a different group: {0}")]
    WrongGroup(String),
}

pub type Result<T, E = ExtError> = std::result::Result<T, E>;

/// `F_3 -> F_2 -> F_1 -> F_0 -> C -> 0`, each `F_k` free.
///
/// `F_0` is free on the generators of the canonical decomposition of `C`,
/// and each later stage is free on the decomposition generators of the
/// previous kernel, which keeps the ranks minimal.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    pub target: FpModule,
    pub stages: Vec<FpModule>,
    /// `d[k]` is the differential `F_{k+1} -> F_k`.
    pub d: Vec<Morphism>,
    pub eps: Morphism,
}

impl FreeResolution {
    pub fn new(c: &FpModule) -> Result<Self> {
        let ring = c.ring();
        let f0 = FpModule::free(ring, c.invariants().len());
        let eps = Morphism::new(&f0, c, c.from_dec().clone())?;
        let mut stages = vec![f0];
        let mut d = Vec::new();
        let mut prev = eps.clone();
        for k in 1..=3 {
            let ker = kernel(&prev)?;
            let fk = FpModule::free(ring, ker.module.ngens());
            let dk = Morphism::new(&fk, &stages[k - 1], ker.incl.matrix().clone())?;
            stages.push(fk);
            d.push(dk.clone());
            prev = dk;
        }
        Ok(FreeResolution {
            target: c.clone(),
            stages,
            d,
            eps,
        })
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.stages.iter().map(FpModule::ngens).collect()
    }

    /// `d_k: F_k -> F_{k-1}` for `k` in `1..=3`.
    pub fn differential(&self, k: usize) -> &Morphism {
        &self.d[k - 1]
    }

    /// Exactness at `C` and at `F_0, F_1, F_2`.
    pub fn is_exact(&self) -> Result<bool> {
        if !self.eps.is_surjective() {
            return Ok(false);
        }
        let mut prev = &self.eps;
        for dk in &self.d {
            if !crate::diagram::is_exact_at(dk, prev)? {
                return Ok(false);
            }
            prev = dk;
        }
        Ok(true)
    }
}

struct ExtData {
    degree: usize,
    resolution: Arc<FreeResolution>,
    coeff: FpModule,
    module: FpModule,
    cocycles: Morphism,
    quotient: Mat,
    section: Mat,
}

/// `Ext^i(C, A)` for `i` in `0..=2`. Cheap to clone.
#[derive(Clone)]
pub struct ExtGroup(Arc<ExtData>);

/// `Hom(F_i, A)` as `A^{r_i}`: column `c` of a cochain matrix sits in block `c`.
fn flatten(phi: &Morphism) -> Vec<Int> {
    phi.matrix().columns().into_iter().flatten().collect()
}

fn unflatten(src: &FpModule, a: &FpModule, v: &[Int]) -> Morphism {
    let na = a.ngens();
    let m = Mat::from_fn(a.ring(), na, src.ngens(), |r, c| v[c * na + r].clone());
    Morphism::new(src, a, m).expect("maps out of free modules are well defined")
}

/// `phi -> phi ∘ d` as a morphism `Hom(F_k, A) -> Hom(F_{k+1}, A)`.
fn coboundary(d: &Morphism, a: &FpModule) -> Result<Morphism> {
    let src = power(a, d.tgt().ngens());
    let tgt = power(a, d.src().ngens());
    let m = d
        .matrix()
        .transpose()
        .kron(&Mat::identity(a.ring(), a.ngens()));
    Ok(Morphism::new(&src, &tgt, m)?)
}

impl ExtGroup {
    pub fn new(degree: usize, resolution: &Arc<FreeResolution>, coeff: &FpModule) -> Result<Self> {
        if degree > 2 {
            return Err(ExtError::Degree(degree));
        }
        let ring = coeff.ring();
        let next = coboundary(&resolution.d[degree], coeff)?;
        let z = kernel(&next)?;
        let mut bcols = Vec::new();
        if degree > 0 {
            let prev = coboundary(&resolution.d[degree - 1], coeff)?;
            for col in prev.matrix().columns() {
                bcols.push(z.incl.preimage(&col)?.expect("coboundaries are cocycles"));
            }
        }
        let nz = z.module.ngens();
        let rel = z
            .module
            .relations()
            .hstack(&Mat::from_columns(ring, nz, &bcols))
            .map_err(ModuleError::from)?;
        let pres = FpModule::present(ring, nz, rel)?;
        let module = FpModule::diagonal(ring, pres.invariants());
        Ok(ExtGroup(Arc::new(ExtData {
            degree,
            resolution: resolution.clone(),
            coeff: coeff.clone(),
            module,
            cocycles: z.incl,
            quotient: pres.to_dec().clone(),
            section: pres.from_dec().clone(),
        })))
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn source(&self) -> &FpModule {
        &self.0.resolution.target
    }

    pub fn coeff(&self) -> &FpModule {
        &self.0.coeff
    }

    pub fn resolution(&self) -> &Arc<FreeResolution> {
        &self.0.resolution
    }

    /// The group as a diagonal module; class coordinates live here.
    pub fn module(&self) -> &FpModule {
        &self.0.module
    }

    pub fn invariants(&self) -> &[Int] {
        self.0.module.invariants()
    }

    pub fn order(&self) -> Option<Int> {
        self.0.module.order()
    }

    /// The free module `F_i` that cocycles start from.
    pub fn stage(&self) -> &FpModule {
        &self.0.resolution.stages[self.0.degree]
    }

    pub fn class(&self, coords: &[Int]) -> Result<ExtClass> {
        if coords.len() != self.0.module.ngens() {
            return Err(ModuleError::DimensionMismatch("class coordinates".into()).into());
        }
        Ok(ExtClass {
            group: self.clone(),
            coords: self.0.module.normalize(coords),
        })
    }

    pub fn zero(&self) -> ExtClass {
        ExtClass {
            group: self.clone(),
            coords: self.0.module.zero_element(),
        }
    }

    /// The standard generators of the cyclic summands.
    pub fn basis(&self) -> Vec<ExtClass> {
        let n = self.0.module.ngens();
        (0..n)
            .map(|j| {
                let e: Vec<Int> = (0..n)
                    .map(|k| if k == j { Int::ONE } else { Int::ZERO })
                    .collect();
                self.class(&e).expect("right length")
            })
            .collect()
    }

    pub fn elements(&self) -> Result<Vec<ExtClass>> {
        Ok(self
            .0
            .module
            .elements()?
            .into_iter()
            .map(|c| ExtClass {
                group: self.clone(),
                coords: c,
            })
            .collect())
    }

    pub fn is_cocycle(&self, phi: &Morphism) -> bool {
        self.0
            .cocycles
            .preimage(&flatten(phi))
            .ok()
            .flatten()
            .is_some()
    }

    /// Class of a cocycle `F_i -> A`.
    pub fn to_class(&self, phi: &Morphism) -> Result<ExtClass> {
        if phi.src() != self.stage() || phi.tgt() != self.coeff() {
            return Err(
                ModuleError::EndpointMismatch("cochain has the wrong endpoints".into()).into(),
            );
        }
        let z = self
            .0
            .cocycles
            .preimage(&flatten(phi))?
            .ok_or(ExtError::NotCocycle)?;
        let c = self.0.quotient.mul_vec(&z).map_err(ModuleError::from)?;
        self.class(&c)
    }

    /// A representative cocycle of a class.
    pub fn to_cocycle(&self, xi: &ExtClass) -> Result<Morphism> {
        self.check_member(xi)?;
        let z = self
            .0
            .section
            .mul_vec(&xi.coords)
            .map_err(ModuleError::from)?;
        let v = self
            .0
            .cocycles
            .matrix()
            .mul_vec(&z)
            .map_err(ModuleError::from)?;
        Ok(unflatten(self.stage(), self.coeff(), &v))
    }

    /// For a cocycle `phi: F_i -> A`, some `psi: F_{i-1} -> A` with
    /// `psi ∘ d_i == phi`, if `phi` is a coboundary.
    pub fn coboundary_witness(&self, phi: &Morphism) -> Result<Option<Morphism>> {
        let i = self.0.degree;
        if i == 0 {
            return Ok(phi.is_zero().then(|| phi.clone()));
        }
        let d = &self.0.resolution.d[i - 1];
        let prev = &self.0.resolution.stages[i - 1];
        Ok(solve_hom(prev, self.coeff(), &[Constraint::before(d, phi)])?.map(|hs| hs.particular))
    }

    fn check_member(&self, xi: &ExtClass) -> Result<()> {
        if &xi.group != self {
            return Err(ExtError::WrongGroup(format!(
                "{:?} is not in {:?}",
                xi, self
            )));
        }
        Ok(())
    }

    /// The additive map to `other` sending each basis class `e` to `f(e)`.
    pub fn map_to(
        &self,
        other: &ExtGroup,
        mut f: impl FnMut(&ExtClass) -> Result<ExtClass>,
    ) -> Result<Morphism> {
        let mut cols = Vec::new();
        for e in self.basis() {
            let y = f(&e)?;
            other.check_member(&y)?;
            cols.push(y.coords);
        }
        let m = Mat::from_columns(self.0.module.ring(), other.0.module.ngens(), &cols);
        Ok(Morphism::new(&self.0.module, &other.0.module, m)?)
    }

    /// For degree 0: the homomorphism `C -> A` of a class.
    pub fn to_hom(&self, xi: &ExtClass) -> Result<Morphism> {
        if self.0.degree != 0 {
            return Err(ExtError::Degree(self.0.degree));
        }
        let phi = self.to_cocycle(xi)?;
        let c = self.source();
        Ok(Morphism::new(
            c,
            self.coeff(),
            phi.matrix().mul(c.to_dec()).map_err(ModuleError::from)?,
        )?)
    }

    /// For degree 0: the class of a homomorphism `C -> A`.
    pub fn of_hom(&self, h: &Morphism) -> Result<ExtClass> {
        if self.0.degree != 0 {
            return Err(ExtError::Degree(self.0.degree));
        }
        self.to_class(&compose(h, &self.0.resolution.eps)?)
    }
}

impl PartialEq for ExtGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.degree == other.0.degree
                && self.0.resolution.target == other.0.resolution.target
                && self.0.coeff == other.0.coeff)
    }
}

impl Eq for ExtGroup {}

impl fmt::Debug for ExtGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Ext^{}({}, {}) = {}",
            self.0.degree,
            self.source(),
            self.coeff(),
            self.0.module
        )
    }
}

/// An element of an Ext group, in normal form.
#[derive(Clone, PartialEq, Eq)]
pub struct ExtClass {
    pub group: ExtGroup,
    pub coords: Vec<Int>,
}

impl ExtClass {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &ExtClass) -> Result<ExtClass> {
        self.group.check_member(other)?;
        let s: Vec<Int> = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        self.group.class(&s)
    }

    pub fn neg(&self) -> ExtClass {
        let s: Vec<Int> = self.coords.iter().map(|a| -a.clone()).collect();
        self.group.class(&s).expect("same length")
    }

    pub fn scale(&self, k: &Int) -> ExtClass {
        let s: Vec<Int> = self.coords.iter().map(|a| a * k).collect();
        self.group.class(&s).expect("same length")
    }

    pub fn cocycle(&self) -> Result<Morphism> {
        self.group.to_cocycle(self)
    }

    /// Image under an additive map between Ext modules.
    pub fn map(&self, f: &Morphism, target: &ExtGroup) -> Result<ExtClass> {
        target.class(&f.apply(&self.coords)?)
    }
}

impl fmt::Debug for ExtClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} in {:?}", self.coords, self.group)
    }
}

pub fn free_resolution(c: &FpModule) -> Result<FreeResolution> {
    FreeResolution::new(c)
}

pub fn ext_group(degree: usize, c: &FpModule, a: &FpModule) -> Result<ExtGroup> {
    ExtGroup::new(degree, &Arc::new(FreeResolution::new(c)?), a)
}

/// Some `h` with `through ∘ h == x`; the source of `x` must be free (or
/// the lift otherwise known to exist).
fn lift(x: &Morphism, through: &Morphism) -> Result<Morphism> {
    let hs = solve_hom(x.src(), through.src(), &[Constraint::after(through, x)])?
        .expect("maps out of free modules lift along surjections");
    Ok(hs.particular)
}

/// Some `h` with `incl ∘ h == x`, for `x` landing in the image of `incl`.
fn factor(x: &Morphism, incl: &Morphism) -> Result<Morphism> {
    lift(x, incl)
}

/// The cocycle `F_1 -> A` of `0 -> A -> B -> C -> 0` on a resolution of `C`.
pub fn ses_cocycle(s: &ShortExactSeq, res: &FreeResolution) -> Result<Morphism> {
    if &res.target != s.quo() {
        return Err(ModuleError::EndpointMismatch("resolution of the wrong module".into()).into());
    }
    let eta = lift(&res.eps, s.p())?;
    let eta_d = compose(&eta, &res.d[0])?;
    factor(&eta_d, s.i())
}

/// The class of a short exact sequence in `group = Ext^1(C, A)`.
pub fn class_of_ses_in(s: &ShortExactSeq, group: &ExtGroup) -> Result<ExtClass> {
    if group.degree() != 1 || group.coeff() != s.sub() {
        return Err(ExtError::WrongGroup(
            "sequence does not belong to this group".into(),
        ));
    }
    group.to_class(&ses_cocycle(s, group.resolution())?)
}

pub fn class_of_ses(s: &ShortExactSeq) -> Result<ExtClass> {
    class_of_ses_in(s, &ext_group(1, s.quo(), s.sub())?)
}

/// An extension realizing a class of `Ext^1(C, A)`: the middle term is the
/// cokernel of `F_1 -> A + F_0`, `x -> (zeta x, -d_1 x)`.
pub fn ses_of_class(xi: &ExtClass) -> Result<ShortExactSeq> {
    let g = &xi.group;
    if g.degree() != 1 {
        return Err(ExtError::Degree(g.degree()));
    }
    let res = g.resolution();
    let zeta = xi.cocycle()?;
    let sum = direct_sum(g.coeff(), &res.stages[0])?;
    let emb = sum.pair(&[zeta, res.d[0].neg()])?;
    let c = cokernel(&emb)?;
    let i = compose(&c.proj, &sum.inj[0])?;
    let down = sum.copair(&[Morphism::zero(g.coeff(), g.source()), res.eps.clone()])?;
    let p = solve_hom(&c.module, g.source(), &[Constraint::before(&c.proj, &down)])?
        .expect("relations map to zero")
        .particular;
    Ok(ShortExactSeq::new(&i, &p)?)
}

/// The 2-cocycle `F_2 -> P` of the splice of `0->P->E->R->0` and
/// `0->R->F->Q->0`, on the resolution of `Q`.
pub fn splice_cocycle(
    s1: &ShortExactSeq,
    s2: &ShortExactSeq,
    res: &FreeResolution,
) -> Result<Morphism> {
    if s1.quo() != s2.sub() {
        return Err(ModuleError::EndpointMismatch(
            "sequences do not share the middle object".into(),
        )
        .into());
    }
    let zeta = ses_cocycle(s2, res)?;
    let lam = lift(&zeta, s1.p())?;
    let top = compose(&lam, &res.d[1])?;
    factor(&top, s1.i())
}

pub fn splice_class_in(
    s1: &ShortExactSeq,
    s2: &ShortExactSeq,
    group: &ExtGroup,
) -> Result<ExtClass> {
    if group.degree() != 2 || group.coeff() != s1.sub() {
        return Err(ExtError::WrongGroup(
            "splice does not belong to this group".into(),
        ));
    }
    group.to_class(&splice_cocycle(s1, s2, group.resolution())?)
}

/// The class of `0 -> P -> E -> F -> Q -> 0` in `Ext^2(Q, P)`.
pub fn splice_class(s1: &ShortExactSeq, s2: &ShortExactSeq) -> Result<ExtClass> {
    splice_class_in(s1, s2, &ext_group(2, s2.quo(), s1.sub())?)
}

/// Class of an exact `0 -> P -a-> M1 -b-> M2 -c-> Q -> 0`, cut at the image
/// of `b` into two short exact sequences and spliced back together.
pub fn class_of_four_term(
    a: &Morphism,
    b: &Morphism,
    c: &Morphism,
    group: &ExtGroup,
) -> Result<ExtClass> {
    let im = image(b)?;
    let s1 = ShortExactSeq::new(a, &im.corestriction)?;
    let s2 = ShortExactSeq::new(&im.incl, c)?;
    splice_class_in(&s1, &s2, group)
}

/// Zero test for a class of degree 2, with `psi: F_1 -> P` whose coboundary
/// is the representative cocycle when the class vanishes.
pub fn is_zero_with_witness(xi: &ExtClass) -> Result<(bool, Option<Morphism>)> {
    if xi.group.degree() != 2 {
        return Err(ExtError::Degree(xi.group.degree()));
    }
    let phi = xi.cocycle()?;
    let w = xi.group.coboundary_witness(&phi)?;
    Ok((w.is_some(), w))
}

/// Chain map `c_k: F'_k -> F_k` for `k <= upto` lifting `f: C' -> C`.
pub fn lift_chain_map(
    f: &Morphism,
    src: &FreeResolution,
    tgt: &FreeResolution,
    upto: usize,
) -> Result<Vec<Morphism>> {
    if f.src() != &src.target || f.tgt() != &tgt.target {
        return Err(
            ModuleError::EndpointMismatch("resolutions do not match the map".into()).into(),
        );
    }
    let mut maps = vec![lift(&compose(f, &src.eps)?, &tgt.eps)?];
    for k in 1..=upto {
        let below = compose(&maps[k - 1], &src.d[k - 1])?;
        maps.push(lift(&below, &tgt.d[k - 1])?);
    }
    Ok(maps)
}

/// `f^*: Ext^i(C, A) -> Ext^i(C', A)` for `f: C' -> C`.
pub fn contravariant_map(f: &Morphism, from: &ExtGroup, to: &ExtGroup) -> Result<Morphism> {
    if from.degree() != to.degree() || from.coeff() != to.coeff() {
        return Err(ExtError::WrongGroup(
            "groups differ in degree or coefficients".into(),
        ));
    }
    let i = from.degree();
    let chain = lift_chain_map(f, to.resolution(), from.resolution(), i)?;
    from.map_to(to, |xi| to.to_class(&compose(&xi.cocycle()?, &chain[i])?))
}

/// `g_*: Ext^i(C, A) -> Ext^i(C, A')` for `g: A -> A'`.
pub fn covariant_map(g: &Morphism, from: &ExtGroup, to: &ExtGroup) -> Result<Morphism> {
    if from.degree() != to.degree() || from.source() != to.source() {
        return Err(ExtError::WrongGroup(
            "groups differ in degree or source".into(),
        ));
    }
    from.map_to(to, |xi| to.to_class(&compose(g, &xi.cocycle()?)?))
}

/// The maps
/// `Hom(M', P) -alpha-> Ext^1(M'', P) -beta-> Ext^1(M, P) -gamma-> Ext^1(M', P) -delta-> Ext^2(M'', P)`
/// of the long exact sequence of `Hom(-, P)` applied to `0 -> M' -> M -> M'' -> 0`.
#[derive(Clone, Debug)]
pub struct LesMaps {
    pub hom_sub: ExtGroup,
    pub ext1_quo: ExtGroup,
    pub ext1_mid: ExtGroup,
    pub ext1_sub: ExtGroup,
    pub ext2_quo: ExtGroup,
    pub alpha: Morphism,
    pub beta: Morphism,
    pub gamma: Morphism,
    pub delta: Morphism,
    /// Cocycle `F_1(M'') -> M'` of the sequence.
    pub ses_cocycle: Morphism,
}

impl LesMaps {
    /// Exactness at `Ext^1(M'', P)`, `Ext^1(M, P)` and `Ext^1(M', P)`.
    pub fn exactness(&self) -> Result<[bool; 3]> {
        use crate::diagram::is_exact_at;
        Ok([
            is_exact_at(&self.alpha, &self.beta)?,
            is_exact_at(&self.beta, &self.gamma)?,
            is_exact_at(&self.gamma, &self.delta)?,
        ])
    }

    pub fn alpha_of(&self, phi: &Morphism) -> Result<ExtClass> {
        self.hom_sub.of_hom(phi)?.map(&self.alpha, &self.ext1_quo)
    }

    pub fn beta_of(&self, xi: &ExtClass) -> Result<ExtClass> {
        xi.map(&self.beta, &self.ext1_mid)
    }

    pub fn gamma_of(&self, xi: &ExtClass) -> Result<ExtClass> {
        xi.map(&self.gamma, &self.ext1_sub)
    }

    pub fn delta_of(&self, xi: &ExtClass) -> Result<ExtClass> {
        xi.map(&self.delta, &self.ext2_quo)
    }
}

pub fn les_maps(s: &ShortExactSeq, p: &FpModule) -> Result<LesMaps> {
    let r_sub = Arc::new(FreeResolution::new(s.sub())?);
    let r_mid = Arc::new(FreeResolution::new(s.mid())?);
    let r_quo = Arc::new(FreeResolution::new(s.quo())?);
    let hom_sub = ExtGroup::new(0, &r_sub, p)?;
    let ext1_quo = ExtGroup::new(1, &r_quo, p)?;
    let ext1_mid = ExtGroup::new(1, &r_mid, p)?;
    let ext1_sub = ExtGroup::new(1, &r_sub, p)?;
    let ext2_quo = ExtGroup::new(2, &r_quo, p)?;

    let zeta = ses_cocycle(s, &r_quo)?;
    let alpha = hom_sub.map_to(&ext1_quo, |phi| {
        ext1_quo.to_class(&compose(&hom_sub.to_hom(phi)?, &zeta)?)
    })?;
    let beta = contravariant_map(s.p(), &ext1_quo, &ext1_mid)?;
    let gamma = contravariant_map(s.i(), &ext1_mid, &ext1_sub)?;
    // lift zeta to a chain map F(M'')[1] -> F(M')
    let k0 = lift(&zeta, &r_sub.eps)?;
    let k1 = lift(&compose(&k0, &r_quo.d[1])?, &r_sub.d[0])?;
    let delta = ext1_sub.map_to(&ext2_quo, |xi| {
        ext2_quo.to_class(&compose(&xi.cocycle()?, &k1)?)
    })?;
    Ok(LesMaps {
        hom_sub,
        ext1_quo,
        ext1_mid,
        ext1_sub,
        ext2_quo,
        alpha,
        beta,
        gamma,
        delta,
        ses_cocycle: zeta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::baer_sum_ses;
    use crate::linalg::{int, Ring};

    fn z4() -> Ring {
        Ring::modulo(4)
    }

    fn nonsplit() -> ShortExactSeq {
        let r = z4();
        let a = FpModule::cyclic(&r, 2);
        let b = FpModule::cyclic(&r, 4);
        let i = Morphism::from_rows(&a, &b, &[vec![2]]).unwrap();
        let p = Morphism::from_rows(&b, &a, &[vec![1]]).unwrap();
        ShortExactSeq::new(&i, &p).unwrap()
    }

    #[test]
    fn resolution_of_free_module() {
        let f = FpModule::free(&z4(), 2);
        let res = free_resolution(&f).unwrap();
        assert_eq!(res.ranks(), vec![2, 0, 0, 0]);
        assert!(res.is_exact().unwrap());
    }

    #[test]
    fn resolution_of_z2_over_z4() {
        let r = z4();
        let res = free_resolution(&FpModule::cyclic(&r, 2)).unwrap();
        assert_eq!(res.ranks(), vec![1, 1, 1, 1]);
        for k in 1..=3 {
            assert_eq!(
                res.differential(k).matrix(),
                &Mat::from_rows(&r, &[vec![2]])
            );
        }
        assert!(res.is_exact().unwrap());
    }

    #[test]
    fn resolution_of_z6_over_z() {
        let z = Ring::integers();
        let res = free_resolution(&FpModule::cyclic(&z, 6)).unwrap();
        assert_eq!(res.ranks(), vec![1, 1, 0, 0]);
        assert_eq!(
            res.differential(1).matrix(),
            &Mat::from_rows(&z, &[vec![6]])
        );
    }

    #[test]
    fn ext_groups() {
        let r = z4();
        let z2 = FpModule::cyclic(&r, 2);
        assert!(ext_group(1, &FpModule::free(&r, 2), &z2)
            .unwrap()
            .module()
            .is_zero());
        assert_eq!(ext_group(0, &z2, &z2).unwrap().invariants(), &[int(2)]);
        assert_eq!(ext_group(1, &z2, &z2).unwrap().invariants(), &[int(2)]);
        assert_eq!(ext_group(2, &z2, &z2).unwrap().invariants(), &[int(2)]);
        let z = Ring::integers();
        let a = FpModule::cyclic(&z, 4);
        let b = FpModule::cyclic(&z, 6);
        assert!(ext_group(2, &a, &b).unwrap().module().is_zero());
        assert_eq!(ext_group(1, &a, &b).unwrap().invariants(), &[int(2)]);
        assert!(ext_group(3, &a, &b).is_err());
    }

    #[test]
    fn classes_of_sequences() {
        let s = nonsplit();
        let split = ShortExactSeq::split(s.sub(), s.quo()).unwrap();
        assert!(class_of_ses(&split).unwrap().is_zero());
        let c = class_of_ses(&s).unwrap();
        assert!(!c.is_zero());
        let back = ses_of_class(&c).unwrap();
        assert_eq!(class_of_ses(&back).unwrap(), c);
        assert!(back.is_equivalent(&s).unwrap());
        let zero = ses_of_class(&c.group.zero()).unwrap();
        assert!(zero.is_split().unwrap());
        assert_eq!(
            class_of_ses(&baer_sum_ses(&s, &s).unwrap()).unwrap(),
            c.scale(&int(2))
        );
    }

    #[test]
    fn middle_order_for_two_generator_quotient() {
        let r = z4();
        let c = FpModule::diagonal(&r, &[int(2), int(2)]);
        let a = FpModule::cyclic(&r, 2);
        let g = ext_group(1, &c, &a).unwrap();
        for xi in g.elements().unwrap() {
            let s = ses_of_class(&xi).unwrap();
            assert_eq!(s.mid().order(), Some(int(8)));
            assert_eq!(class_of_ses(&s).unwrap(), xi);
        }
    }

    #[test]
    fn splices() {
        let s = nonsplit();
        let x = splice_class(&s, &s).unwrap();
        assert!(!x.is_zero());
        let (zero, w) = is_zero_with_witness(&x).unwrap();
        assert!(!zero && w.is_none());
        let split = ShortExactSeq::split(s.sub(), s.quo()).unwrap();
        assert!(splice_class(&s, &split).unwrap().is_zero());
        assert!(splice_class(&split, &s).unwrap().is_zero());
        let (zero, w) = is_zero_with_witness(&x.group.zero()).unwrap();
        assert!(zero && w.is_some());
    }

    #[test]
    fn integer_splice_vanishes() {
        let z = Ring::integers();
        let p = FpModule::cyclic(&z, 2);
        let b = FpModule::cyclic(&z, 4);
        let i = Morphism::from_rows(&p, &b, &[vec![2]]).unwrap();
        let q = Morphism::from_rows(&b, &p, &[vec![1]]).unwrap();
        let s = ShortExactSeq::new(&i, &q).unwrap();
        let x = splice_class(&s, &s).unwrap();
        assert!(x.is_zero());
        assert!(is_zero_with_witness(&x).unwrap().0);
    }

    #[test]
    fn les_of_nonsplit_sequence() {
        let s = nonsplit();
        let p = s.sub().clone();
        let les = les_maps(&s, &p).unwrap();
        assert_eq!(les.exactness().unwrap(), [true, true, true]);
        // delta agrees with the splice
        for xi in les.ext1_sub.elements().unwrap() {
            let e = ses_of_class(&xi).unwrap();
            let via_splice = splice_class_in(&e, &s, &les.ext2_quo).unwrap();
            assert_eq!(les.delta_of(&xi).unwrap(), via_splice);
        }
    }

    #[test]
    fn les_of_split_sequence() {
        let r = Ring::modulo(8);
        let a = FpModule::cyclic(&r, 2);
        let c = FpModule::cyclic(&r, 4);
        let s = ShortExactSeq::split(&a, &c).unwrap();
        let les = les_maps(&s, &FpModule::cyclic(&r, 4)).unwrap();
        assert!(les.delta.is_zero());
        assert!(les.gamma.is_surjective());
        assert_eq!(les.exactness().unwrap(), [true, true, true]);
    }

    #[test]
    fn functorial_identity_and_zero() {
        let r = z4();
        let c = FpModule::diagonal(&r, &[int(2), int(4)]);
        let a = FpModule::cyclic(&r, 2);
        for i in 0..=2 {
            let g = ext_group(i, &c, &a).unwrap();
            let id = contravariant_map(&Morphism::identity(&c), &g, &g).unwrap();
            assert_eq!(id, Morphism::identity(g.module()));
            let zero = contravariant_map(&Morphism::zero(&c, &c), &g, &g).unwrap();
            assert!(zero.is_zero());
            let cid = covariant_map(&Morphism::identity(&a), &g, &g).unwrap();
            assert_eq!(cid, Morphism::identity(g.module()));
        }
    }

    #[test]
    fn hom_round_trip() {
        let r = z4();
        let c = FpModule::diagonal(&r, &[int(2), int(4)]);
        let a = FpModule::cyclic(&r, 4);
        let g = ext_group(0, &c, &a).unwrap();
        assert_eq!(g.order(), Some(int(8)));
        for xi in g.elements().unwrap() {
            let h = g.to_hom(&xi).unwrap();
            assert_eq!(g.of_hom(&h).unwrap(), xi);
        }
    }
}
