//! Short exact sequences, exactness, pullbacks, pushouts, Baer sums and
//! commutativity checks.

use crate::linalg::{Int, Mat};
use crate::module::{
    cokernel, compose, direct_sum, kernel, solve_hom, Constraint, FpModule, ModuleError, Morphism,
};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error("first map is not injective; kernel contains {witness:?}")]
    NotInjective { witness: Vec<Int> },
    #[error("second map is not surjective; {witness:?} is missed")]
    NotSurjective { witness: Vec<Int> },
    #[error("not exact in the middle at {witness:?}")]
    NotExact { witness: Vec<Int> },
    #[error("endpoint mismatch: {0}")]
    EndpointMismatch(String),
    #[error("maps do not commute over the common object")]
    NotCommuting,
    #[error("malformed path in square {0:?}")]
    MalformedPath(String),
}

pub type Result<T, E = DiagramError> = std::result::Result<T, E>;

/// Some nonzero element of `ker f`, in decomposition coordinates of the
/// source.
pub fn injectivity_witness(f: &Morphism) -> Result<Option<Vec<Int>>> {
    let k = kernel(f)?;
    if k.module.is_zero() {
        return Ok(None);
    }
    let x = k.incl.matrix().column(0);
    Ok(Some(f.src().dec(&x)))
}

/// An element of the target outside the image, in decomposition
/// coordinates.
pub fn surjectivity_witness(f: &Morphism) -> Result<Option<Vec<Int>>> {
    let t = f.tgt();
    for y in t.from_dec().columns() {
        if f.preimage(&y)?.is_none() {
            return Ok(Some(t.dec(&y)));
        }
    }
    Ok(None)
}

/// `None` when `im f = ker g`; otherwise an element of the middle object
/// (decomposition coordinates) lying in exactly one of the two.
pub fn exactness_witness(f: &Morphism, g: &Morphism) -> Result<Option<Vec<Int>>> {
    if f.tgt() != g.src() {
        return Err(DiagramError::EndpointMismatch(
            "maps are not composable".into(),
        ));
    }
    let b = f.tgt();
    for x in f.matrix().columns() {
        if !g
            .tgt()
            .is_zero_element(&g.matrix().mul_vec(&x).map_err(ModuleError::from)?)
        {
            return Ok(Some(b.dec(&x)));
        }
    }
    let k = kernel(g)?;
    for y in k.incl.matrix().columns() {
        if f.preimage(&y)?.is_none() {
            return Ok(Some(b.dec(&y)));
        }
    }
    Ok(None)
}

pub fn is_exact_at(f: &Morphism, g: &Morphism) -> Result<bool> {
    Ok(exactness_witness(f, g)?.is_none())
}

/// `0 -> A --i--> B --p--> C -> 0`, validated on construction.
#[derive(Clone, Debug)]
pub struct ShortExactSeq {
    i: Morphism,
    p: Morphism,
}

impl ShortExactSeq {
    pub fn new(i: &Morphism, p: &Morphism) -> Result<Self> {
        if i.tgt() != p.src() {
            return Err(DiagramError::EndpointMismatch(
                "i and p are not composable".into(),
            ));
        }
        if let Some(witness) = injectivity_witness(i)? {
            return Err(DiagramError::NotInjective { witness });
        }
        if let Some(witness) = surjectivity_witness(p)? {
            return Err(DiagramError::NotSurjective { witness });
        }
        if let Some(witness) = exactness_witness(i, p)? {
            return Err(DiagramError::NotExact { witness });
        }
        Ok(ShortExactSeq {
            i: i.clone(),
            p: p.clone(),
        })
    }

    /// `0 -> A -> A + C -> C -> 0`.
    pub fn split(a: &FpModule, c: &FpModule) -> Result<Self> {
        let s = direct_sum(a, c)?;
        Self::new(&s.inj[0], &s.proj[1])
    }

    pub fn i(&self) -> &Morphism {
        &self.i
    }

    pub fn p(&self) -> &Morphism {
        &self.p
    }

    pub fn sub(&self) -> &FpModule {
        self.i.src()
    }

    pub fn mid(&self) -> &FpModule {
        self.i.tgt()
    }

    pub fn quo(&self) -> &FpModule {
        self.p.tgt()
    }

    /// A map of extensions `self.mid -> other.mid` fixing both ends, if the
    /// two are equivalent. Any such map is an isomorphism.
    pub fn equivalence_to(&self, other: &ShortExactSeq) -> Result<Option<Morphism>> {
        if self.sub() != other.sub() || self.quo() != other.quo() {
            return Err(DiagramError::EndpointMismatch(
                "extensions have different ends".into(),
            ));
        }
        let cons = [
            Constraint::before(&self.i, &other.i),
            Constraint::after(&other.p, &self.p),
        ];
        Ok(solve_hom(self.mid(), other.mid(), &cons)?.map(|hs| hs.particular))
    }

    pub fn is_equivalent(&self, other: &ShortExactSeq) -> Result<bool> {
        Ok(self.equivalence_to(other)?.is_some())
    }

    /// True when `p` has a section.
    pub fn is_split(&self) -> Result<bool> {
        let id = Morphism::identity(self.quo());
        Ok(solve_hom(self.quo(), self.mid(), &[Constraint::after(&self.p, &id)])?.is_some())
    }
}

/// Pullback of `f: A -> C` and `g: B -> C`.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub module: FpModule,
    pub pa: Morphism,
    pub pb: Morphism,
    pub f: Morphism,
    pub g: Morphism,
    incl: Morphism,
    sum: crate::module::DirectSum,
}

impl Pullback {
    /// The unique `m: T -> Y` with `pa∘m = u` and `pb∘m = v`.
    pub fn mediate(&self, u: &Morphism, v: &Morphism) -> Result<Morphism> {
        if compose(&self.f, u)? != compose(&self.g, v)? {
            return Err(DiagramError::NotCommuting);
        }
        let pair = self.sum.pair(&[u.clone(), v.clone()])?;
        let hs = solve_hom(
            u.src(),
            &self.module,
            &[Constraint::after(&self.incl, &pair)],
        )?
        .expect("commuting pair factors through the kernel");
        Ok(hs.particular)
    }
}

pub fn pullback(f: &Morphism, g: &Morphism) -> Result<Pullback> {
    if f.tgt() != g.tgt() {
        return Err(DiagramError::EndpointMismatch(
            "pullback needs a common target".into(),
        ));
    }
    let sum = direct_sum(f.src(), g.src())?;
    let d = sum.copair(&[f.clone(), g.neg()])?;
    let k = kernel(&d)?;
    let pa = compose(&sum.proj[0], &k.incl)?;
    let pb = compose(&sum.proj[1], &k.incl)?;
    Ok(Pullback {
        module: k.module,
        pa,
        pb,
        f: f.clone(),
        g: g.clone(),
        incl: k.incl,
        sum,
    })
}

/// Pushout of `f: C -> A` and `g: C -> B`.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub module: FpModule,
    pub ja: Morphism,
    pub jb: Morphism,
    pub f: Morphism,
    pub g: Morphism,
    proj: Morphism,
    sum: crate::module::DirectSum,
}

impl Pushout {
    /// The unique `m: W -> T` with `m∘ja = u` and `m∘jb = v`.
    pub fn mediate(&self, u: &Morphism, v: &Morphism) -> Result<Morphism> {
        if compose(u, &self.f)? != compose(v, &self.g)? {
            return Err(DiagramError::NotCommuting);
        }
        let copair = self.sum.copair(&[u.clone(), v.clone()])?;
        let hs = solve_hom(
            &self.module,
            u.tgt(),
            &[Constraint::before(&self.proj, &copair)],
        )?
        .expect("commuting pair factors through the cokernel");
        Ok(hs.particular)
    }
}

pub fn pushout(f: &Morphism, g: &Morphism) -> Result<Pushout> {
    if f.src() != g.src() {
        return Err(DiagramError::EndpointMismatch(
            "pushout needs a common source".into(),
        ));
    }
    let sum = direct_sum(f.tgt(), g.tgt())?;
    let d = sum.pair(&[f.clone(), g.neg()])?;
    let c = cokernel(&d)?;
    let ja = compose(&c.proj, &sum.inj[0])?;
    let jb = compose(&c.proj, &sum.inj[1])?;
    Ok(Pushout {
        module: c.module,
        ja,
        jb,
        f: f.clone(),
        g: g.clone(),
        proj: c.proj,
        sum,
    })
}

/// Baer sum of two extensions of `Q` by `P`: pull back over `Q`, then divide
/// by the antidiagonal copy of `P`.
pub fn baer_sum_ses(s1: &ShortExactSeq, s2: &ShortExactSeq) -> Result<ShortExactSeq> {
    if s1.sub() != s2.sub() || s1.quo() != s2.quo() {
        return Err(DiagramError::EndpointMismatch(
            "extensions have different ends".into(),
        ));
    }
    let pb = pullback(s1.p(), s2.p())?;
    let anti = pb.mediate(s1.i(), &s2.i().neg())?;
    let c = cokernel(&anti)?;
    let zero = Morphism::zero(s1.sub(), s2.mid());
    let i = compose(&c.proj, &pb.mediate(s1.i(), &zero)?)?;
    let down = compose(s1.p(), &pb.pa)?;
    let p = solve_hom(&c.module, s1.quo(), &[Constraint::before(&c.proj, &down)])?
        .expect("the antidiagonal maps to zero in Q")
        .particular;
    ShortExactSeq::new(&i, &p)
}

/// A square (or any two parallel paths). Paths list morphisms in the order
/// they are applied, so `[f, g]` stands for `g ∘ f`.
#[derive(Clone, Debug)]
pub struct SquareSpec {
    pub name: String,
    pub left: Vec<Morphism>,
    pub right: Vec<Morphism>,
}

impl SquareSpec {
    pub fn new(name: impl Into<String>, left: Vec<Morphism>, right: Vec<Morphism>) -> Self {
        SquareSpec {
            name: name.into(),
            left,
            right,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquareResult {
    pub name: String,
    pub commutes: bool,
    /// Index of the first source generator on which the paths differ.
    pub witness: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagramReport {
    pub squares: Vec<SquareResult>,
}

impl DiagramReport {
    pub fn all_commute(&self) -> bool {
        self.squares.iter().all(|s| s.commutes)
    }
}

fn compose_path(name: &str, path: &[Morphism]) -> Result<Option<Morphism>> {
    let mut it = path.iter();
    let Some(first) = it.next() else {
        return Ok(None);
    };
    let mut acc = first.clone();
    for m in it {
        acc = compose(m, &acc).map_err(|_| DiagramError::MalformedPath(name.to_string()))?;
    }
    Ok(Some(acc))
}

pub fn check_square(sq: &SquareSpec) -> Result<SquareResult> {
    let l = compose_path(&sq.name, &sq.left)?;
    let r = compose_path(&sq.name, &sq.right)?;
    let (l, r) = match (l, r) {
        (Some(l), Some(r)) => (l, r),
        (Some(m), None) | (None, Some(m)) => (m.clone(), Morphism::identity(m.src())),
        (None, None) => return Err(DiagramError::MalformedPath(sq.name.clone())),
    };
    if l.src() != r.src() || l.tgt() != r.tgt() {
        return Err(DiagramError::MalformedPath(sq.name.clone()));
    }
    let t = l.tgt();
    let diff: Mat = l.matrix().sub(r.matrix()).map_err(ModuleError::from)?;
    let witness = diff.columns().iter().position(|c| !t.is_zero_element(c));
    Ok(SquareResult {
        name: sq.name.clone(),
        commutes: witness.is_none(),
        witness,
    })
}

pub fn check_diagram(squares: &[SquareSpec]) -> Result<DiagramReport> {
    Ok(DiagramReport {
        squares: squares.iter().map(check_square).collect::<Result<_>>()?,
    })
}
