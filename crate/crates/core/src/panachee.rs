//! The completion problem for a border of four short exact sequences.
//!
//! ```text
//!    0 -> P --> E --> R -> 0      (top)
//!    0 -> P --> H --> S -> 0      (left)
//!    0 -> R --> F --> Q -> 0      (right)
//!    0 -> S --> G --> Q -> 0      (bottom)
//! ```
//!
//! Write `Y` for the pullback of `F -> Q <- G` and `W` for the pushout of
//! `E + H <- P + P -> P` along the codiagonal. Then `0 -> R+S -> Y -> Q -> 0`
//! and `0 -> P -> W -> R+S -> 0` are exact, and a middle object exists iff
//! the connecting map `delta: Ext^1(R+S, P) -> Ext^2(Q, P)` of the first
//! sequence kills `[W]`. Solutions are the extensions `[X]` of `Y` by `P`
//! with `gamma[X] = [W]`.

use crate::certificate::{check_completion, Border, CheckReport};
use crate::diagram::{pullback, pushout, DiagramError, Pullback, Pushout, ShortExactSeq};
use crate::ext::{
    class_of_four_term, class_of_ses_in, les_maps, ses_of_class, splice_class_in, ExtClass,
    ExtError, ExtGroup, LesMaps,
};
use crate::linalg::Int;
use crate::module::{
    codiagonal, cokernel, compose, diagonal, direct_sum, kernel, oplus, solve_hom, Constraint,
    DirectSum, FpModule, ModuleError, Morphism,
};
use std::fmt;
use thiserror::Error;

/// Sign relating the connecting map to Yoneda splicing in this crate's
/// cocycle conventions: `delta[W] = SIGMA * ([E]∪[F] + [H]∪[G])`.
pub const SIGMA: i64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Corner {
    P,
    R,
    S,
    Q,
}

impl fmt::Display for Corner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Corner::P => "P",
            Corner::R => "R",
            Corner::S => "S",
            Corner::Q => "Q",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Edge {
    Top,
    Left,
    Right,
    Bottom,
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Edge::Top => "top",
            Edge::Left => "left",
            Edge::Right => "right",
            Edge::Bottom => "bottom",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PanacheeError {
    #[error("corner {0} differs between the two sequences that share it")]
    CornerMismatch(Corner),
    #[error("{edge} sequence: {source}")]
    Sequence { edge: Edge, source: DiagramError },
    #[error("the obstruction class is nonzero")]
    Obstructed,
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("solution set is infinite")]
    Infinite,
    #[error(transparent)]
    Ext(#[from] ExtError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Module(#[from] ModuleError),
}

pub type Result<T, E = PanacheeError> = std::result::Result<T, E>;

/// A validated border: four short exact sequences with matching corners.
#[derive(Clone, Debug)]
pub struct PanacheeProblem {
    top: ShortExactSeq,
    left: ShortExactSeq,
    right: ShortExactSeq,
    bottom: ShortExactSeq,
}

impl PanacheeProblem {
    pub fn new(
        top: ShortExactSeq,
        left: ShortExactSeq,
        right: ShortExactSeq,
        bottom: ShortExactSeq,
    ) -> Result<Self> {
        if top.sub() != left.sub() {
            return Err(PanacheeError::CornerMismatch(Corner::P));
        }
        if top.quo() != right.sub() {
            return Err(PanacheeError::CornerMismatch(Corner::R));
        }
        if left.quo() != bottom.sub() {
            return Err(PanacheeError::CornerMismatch(Corner::S));
        }
        if right.quo() != bottom.quo() {
            return Err(PanacheeError::CornerMismatch(Corner::Q));
        }
        Ok(PanacheeProblem {
            top,
            left,
            right,
            bottom,
        })
    }

    /// Validates each pair of maps as a short exact sequence, then the corners.
    pub fn from_maps(edges: [(&Morphism, &Morphism); 4]) -> Result<Self> {
        let kinds = [Edge::Top, Edge::Left, Edge::Right, Edge::Bottom];
        let mut seqs = Vec::with_capacity(4);
        for ((i, p), edge) in edges.into_iter().zip(kinds) {
            seqs.push(
                ShortExactSeq::new(i, p)
                    .map_err(|source| PanacheeError::Sequence { edge, source })?,
            );
        }
        let [t, l, r, b]: [ShortExactSeq; 4] = seqs.try_into().expect("four edges");
        Self::new(t, l, r, b)
    }

    /// All four sequences split.
    pub fn split(p: &FpModule, r: &FpModule, s: &FpModule, q: &FpModule) -> Result<Self> {
        Self::new(
            ShortExactSeq::split(p, r)?,
            ShortExactSeq::split(p, s)?,
            ShortExactSeq::split(r, q)?,
            ShortExactSeq::split(s, q)?,
        )
    }

    pub fn top(&self) -> &ShortExactSeq {
        &self.top
    }

    pub fn left(&self) -> &ShortExactSeq {
        &self.left
    }

    pub fn right(&self) -> &ShortExactSeq {
        &self.right
    }

    pub fn bottom(&self) -> &ShortExactSeq {
        &self.bottom
    }

    pub fn p(&self) -> &FpModule {
        self.top.sub()
    }

    pub fn r(&self) -> &FpModule {
        self.top.quo()
    }

    pub fn s(&self) -> &FpModule {
        self.left.quo()
    }

    pub fn q(&self) -> &FpModule {
        self.right.quo()
    }

    pub fn e(&self) -> &FpModule {
        self.top.mid()
    }

    pub fn h(&self) -> &FpModule {
        self.left.mid()
    }

    pub fn f(&self) -> &FpModule {
        self.right.mid()
    }

    pub fn g(&self) -> &FpModule {
        self.bottom.mid()
    }
}

fn internal<E: fmt::Display>(what: &str) -> impl FnOnce(E) -> PanacheeError + '_ {
    move |e| PanacheeError::Internal(format!("{what}: {e}"))
}

/// `Y = F x_Q G` and `0 -> R+S -> Y -> Q -> 0`.
#[derive(Clone, Debug)]
pub struct YPart {
    pub module: FpModule,
    pub pf: Morphism,
    pub pg: Morphism,
    pub jr: Morphism,
    pub js: Morphism,
    pub jrs: Morphism,
    pub rs: DirectSum,
    pub ses: ShortExactSeq,
    pub pullback: Pullback,
}

pub fn build_y(problem: &PanacheeProblem) -> Result<YPart> {
    let (r, s) = (problem.r(), problem.s());
    let pb = pullback(problem.right.p(), problem.bottom.p())?;
    let jr = pb.mediate(problem.right.i(), &Morphism::zero(r, problem.g()))?;
    let js = pb.mediate(&Morphism::zero(s, problem.f()), problem.bottom.i())?;
    let rs = direct_sum(r, s)?;
    let jrs = rs.copair(&[jr.clone(), js.clone()])?;
    let to_q = compose(problem.right.p(), &pb.pa)?;
    let ses = ShortExactSeq::new(&jrs, &to_q).map_err(internal("0 -> R+S -> Y -> Q -> 0"))?;
    Ok(YPart {
        module: pb.module.clone(),
        pf: pb.pa.clone(),
        pg: pb.pb.clone(),
        jr,
        js,
        jrs,
        rs,
        ses,
        pullback: pb,
    })
}

/// `W`, the pushout of `P+P -> E+H` along the codiagonal, and
/// `0 -> P -> W -> R+S -> 0`.
#[derive(Clone, Debug)]
pub struct WPart {
    pub module: FpModule,
    pub ue: Morphism,
    pub uh: Morphism,
    pub jp: Morphism,
    pub qrs: Morphism,
    pub ses: ShortExactSeq,
    pub pushout: Pushout,
}

pub fn build_w(problem: &PanacheeProblem) -> Result<WPart> {
    let eh = direct_sum(problem.e(), problem.h())?;
    let po = pushout(
        &oplus(problem.top.i(), problem.left.i())?,
        &codiagonal(problem.p())?,
    )?;
    let ue = compose(&po.ja, &eh.inj[0])?;
    let uh = compose(&po.ja, &eh.inj[1])?;
    let jp = po.jb.clone();
    let down = oplus(problem.top.p(), problem.left.p())?;
    let qrs = po.mediate(&down, &Morphism::zero(problem.p(), down.tgt()))?;
    let ses = ShortExactSeq::new(&jp, &qrs).map_err(internal("0 -> P -> W -> R+S -> 0"))?;
    Ok(WPart {
        module: po.module.clone(),
        ue,
        uh,
        jp,
        qrs,
        ses,
        pushout: po,
    })
}

/// Everything the obstruction, completion and torsor share.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub y: YPart,
    pub w: WPart,
    /// Long exact sequence of `Hom(-, P)` on `0 -> R+S -> Y -> Q -> 0`.
    pub les: LesMaps,
    pub class_w: ExtClass,
    pub obstruction: ExtClass,
    /// `[E]∪[F] + [H]∪[G]` in the same group as the obstruction.
    pub splice_sum: ExtClass,
}

impl Analysis {
    pub fn is_obstructed(&self) -> bool {
        !self.obstruction.is_zero()
    }

    pub fn ext2(&self) -> &ExtGroup {
        &self.les.ext2_quo
    }
}

/// Builds `Y`, `W`, the obstruction `delta[W]`, and checks it against the
/// sum of the two splice classes.
pub fn obstruction(problem: &PanacheeProblem) -> Result<Analysis> {
    let y = build_y(problem)?;
    let w = build_w(problem)?;
    let les = les_maps(&y.ses, problem.p())?;
    let class_w = class_of_ses_in(&w.ses, &les.ext1_sub)?;
    let obstruction = les.delta_of(&class_w)?;
    let g2 = &les.ext2_quo;
    let splice_sum = splice_class_in(&problem.top, &problem.right, g2)?.add(&splice_class_in(
        &problem.left,
        &problem.bottom,
        g2,
    )?)?;
    if obstruction != splice_sum.scale(&Int::from(SIGMA)) {
        return Err(PanacheeError::Internal(format!(
            "obstruction {:?} disagrees with the splice sum {:?}",
            obstruction.coords, splice_sum.coords
        )));
    }
    Ok(Analysis {
        y,
        w,
        les,
        class_w,
        obstruction,
        splice_sum,
    })
}

/// A middle object with its four maps, checked against the border.
#[derive(Clone, Debug)]
pub struct Completion {
    pub x: FpModule,
    /// The class of `0 -> P -> X -> Y -> 0` in `Ext^1(Y, P)`.
    pub class_x: ExtClass,
    pub x_ses: ShortExactSeq,
    pub e: Morphism,
    pub h: Morphism,
    pub f: Morphism,
    pub g: Morphism,
    /// Projections of `Y = F x_Q G`.
    pub y_f: Morphism,
    pub y_g: Morphism,
    pub certificate: CheckReport,
}

/// Builds the completion attached to a class `xi` of `Ext^1(Y, P)` with
/// `gamma(xi) = [W]`.
pub fn realize(problem: &PanacheeProblem, an: &Analysis, xi: &ExtClass) -> Result<Completion> {
    if an.les.gamma_of(xi)? != an.class_w {
        return Err(PanacheeError::Internal(
            "class does not restrict to [W]".into(),
        ));
    }
    let raw = ses_of_class(xi)?;
    let (ix, py) = (raw.i(), raw.p());
    let rs = &an.y.rs.module;
    let wp = pullback(py, &an.y.jrs)?;
    let jp2 = wp.mediate(ix, &Morphism::zero(problem.p(), rs))?;
    let cons = [
        Constraint::before(&an.w.jp, &jp2),
        Constraint::after(&wp.pb, &an.w.qrs),
    ];
    let t = solve_hom(&an.w.module, &wp.module, &cons)?
        .ok_or_else(|| PanacheeError::Internal("W is not equivalent to the pullback of X".into()))?
        .particular;
    let mt = compose(&wp.pa, &t)?;
    let e0 = compose(&mt, &an.w.ue)?;
    let h0 = compose(&mt, &an.w.uh)?;
    let f0 = compose(&an.y.pf, py)?;
    let g0 = compose(&an.y.pg, py)?;

    let x0 = raw.mid();
    let (x, iso) = x0.simplify();
    let back = Morphism::new(&x, x0, x0.from_dec().clone())?;
    let e = compose(&iso, &e0)?.normalized();
    let h = compose(&iso, &h0)?.normalized();
    let f = compose(&f0, &back)?.normalized();
    let g = compose(&g0, &back)?.normalized();
    let x_ses = ShortExactSeq::new(
        &compose(&iso, ix)?.normalized(),
        &compose(py, &back)?.normalized(),
    )
    .map_err(internal("0 -> P -> X -> Y -> 0"))?;
    let certificate = check_completion(&Border::of(problem), &e, &h, &f, &g);
    if !certificate.passed() {
        let failed: Vec<&str> = certificate
            .failures()
            .iter()
            .map(|c| c.name.as_str())
            .collect();
        return Err(PanacheeError::Internal(format!(
            "completion fails {}",
            failed.join(", ")
        )));
    }
    let (y_f, y_g) = (an.y.pf.clone(), an.y.pg.clone());
    Ok(Completion {
        x,
        class_x: xi.clone(),
        x_ses,
        e,
        h,
        f,
        g,
        y_f,
        y_g,
        certificate,
    })
}

/// Some `xi` with `gamma(xi) = [W]`, when the obstruction vanishes.
fn base_class(an: &Analysis) -> Result<Option<ExtClass>> {
    let Some(c) = an.les.gamma.preimage(&an.class_w.coords)? else {
        return Ok(None);
    };
    Ok(Some(an.les.ext1_mid.class(&c)?))
}

/// A completion, or `None` when the obstruction is nonzero.
pub fn complete(problem: &PanacheeProblem) -> Result<Option<Completion>> {
    let an = obstruction(problem)?;
    complete_with(problem, &an)
}

pub fn complete_with(problem: &PanacheeProblem, an: &Analysis) -> Result<Option<Completion>> {
    let xi = base_class(an)?;
    match (xi, an.is_obstructed()) {
        (None, true) => Ok(None),
        (Some(xi), false) => realize(problem, an, &xi).map(Some),
        (xi, _) => Err(PanacheeError::Internal(format!(
            "obstruction is {} but gamma{} hits [W]",
            if an.is_obstructed() {
                "nonzero"
            } else {
                "zero"
            },
            if xi.is_some() { "" } else { " never" }
        ))),
    }
}

/// Moves a completion by `lambda` in `Ext^1(Q, P)`: `[X] -> [X] + beta(lambda)`.
pub fn act(
    problem: &PanacheeProblem,
    an: &Analysis,
    c: &Completion,
    lambda: &ExtClass,
) -> Result<Completion> {
    let moved = c.class_x.add(&an.les.beta_of(lambda)?)?;
    realize(problem, an, &moved)
}

/// One completion per class in `[X] + ker(gamma)`, at most `limit`.
pub fn enumerate_solutions(problem: &PanacheeProblem, limit: usize) -> Result<Vec<Completion>> {
    let an = obstruction(problem)?;
    enumerate_with(problem, &an, limit)
}

pub fn enumerate_with(
    problem: &PanacheeProblem,
    an: &Analysis,
    limit: usize,
) -> Result<Vec<Completion>> {
    if an.is_obstructed() {
        return Err(PanacheeError::Obstructed);
    }
    let Some(base) = base_class(an)? else {
        return Err(PanacheeError::Internal(
            "obstruction vanishes but [W] is not hit".into(),
        ));
    };
    if limit == 0 {
        return Ok(vec![]);
    }
    let k = kernel(&an.les.gamma)?;
    let elems = k.module.elements().map_err(|_| PanacheeError::Infinite)?;
    let mut out = Vec::new();
    for z in elems.into_iter().take(limit) {
        let shift = an.les.ext1_mid.class(&k.incl.apply(&z)?)?;
        out.push(realize(problem, an, &base.add(&shift)?)?);
    }
    Ok(out)
}

/// `Ext^1(Q, P) / (im delta_F + im delta_G)`, which acts simply
/// transitively on the classes of completions.
#[derive(Clone, Debug)]
pub struct TorsorDescription {
    pub ext1_qp: ExtGroup,
    /// `Hom(R, P) -> Ext^1(Q, P)`, `phi -> phi_*[F]`.
    pub delta_f: Morphism,
    /// `Hom(S, P) -> Ext^1(Q, P)`, `psi -> psi_*[G]`.
    pub delta_g: Morphism,
    pub quotient: FpModule,
    pub size: Option<Int>,
    pub unique: bool,
}

pub fn torsor(problem: &PanacheeProblem) -> Result<TorsorDescription> {
    let y = build_y(problem)?;
    torsor_with(problem, &les_maps(&y.ses, problem.p())?, &y)
}

pub fn torsor_with(
    problem: &PanacheeProblem,
    les_y: &LesMaps,
    y: &YPart,
) -> Result<TorsorDescription> {
    let p = problem.p();
    let lf = les_maps(&problem.right, p)?;
    let lg = les_maps(&problem.bottom, p)?;
    let ext1 = lf.ext1_quo.clone();
    if ext1.module() != lg.ext1_quo.module() || ext1.module() != les_y.ext1_quo.module() {
        return Err(PanacheeError::Internal(
            "Ext^1(Q, P) presented differently".into(),
        ));
    }
    // alpha of Y splits as delta_F + delta_G along R+S
    for phi in les_y.hom_sub.basis() {
        let hom = les_y.hom_sub.to_hom(&phi)?;
        let via_f = lf.alpha_of(&compose(&hom, &y.rs.inj[0])?)?;
        let via_g = lg.alpha_of(&compose(&hom, &y.rs.inj[1])?)?;
        let direct = phi.map(&les_y.alpha, &les_y.ext1_quo)?;
        let sum = ext1
            .module()
            .normalize(&add_vec(&via_f.coords, &via_g.coords));
        if direct.coords != sum {
            return Err(PanacheeError::Internal(format!(
                "alpha({:?}) = {:?} but delta_F + delta_G gives {:?}",
                phi.coords, direct.coords, sum
            )));
        }
    }
    let both = direct_sum(lf.hom_sub.module(), lg.hom_sub.module())?;
    let span = both.copair(&[lf.alpha.clone(), lg.alpha.clone()])?;
    let (quotient, _) = cokernel(&span)?.module.simplify();
    let size = quotient.order();
    let unique = quotient.is_zero();
    Ok(TorsorDescription {
        ext1_qp: ext1,
        delta_f: lf.alpha,
        delta_g: lg.alpha,
        quotient,
        size,
        unique,
    })
}

fn add_vec(a: &[Int], b: &[Int]) -> Vec<Int> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Both ways around the square relating the sum of two splices to the
/// splice of `[W]` with the pullback of `[F] + [G]` along the diagonal.
#[derive(Clone, Debug)]
pub struct SpliceReport {
    /// `0 -> P -> T -> Y -> Q -> 0`, `T` the pushout of `E <- P -> H`.
    pub via_t_y: ExtClass,
    /// `0 -> P -> W -> Z -> Q -> 0`, `Z` the pullback of `F+G -> Q+Q <- Q`.
    pub via_w_z: ExtClass,
    pub splice_sum: ExtClass,
    pub obstruction: ExtClass,
    pub w_to_t: Morphism,
    pub z_to_y: Morphism,
}

impl SpliceReport {
    pub fn agrees(&self) -> bool {
        let s = self.splice_sum.scale(&Int::from(SIGMA));
        self.via_t_y == self.splice_sum && self.via_w_z == self.via_t_y && self.obstruction == s
    }
}

pub fn splice_crosscheck(problem: &PanacheeProblem) -> Result<SpliceReport> {
    let an = obstruction(problem)?;
    splice_crosscheck_with(problem, &an)
}

pub fn splice_crosscheck_with(problem: &PanacheeProblem, an: &Analysis) -> Result<SpliceReport> {
    let (top, left, right, bottom) = (&problem.top, &problem.left, &problem.right, &problem.bottom);
    let g2 = an.ext2();
    let y = &an.y;

    let t = pushout(top.i(), left.i())?;
    let p_to_t = compose(&t.ja, top.i())?;
    let t_to_y = t.mediate(&compose(&y.jr, top.p())?, &compose(&y.js, left.p())?)?;
    let via_t_y = class_of_four_term(&p_to_t, &t_to_y, y.ses.p(), g2)?;

    let fg = direct_sum(problem.f(), problem.g())?;
    let z = pullback(&oplus(right.p(), bottom.p())?, &diagonal(problem.q())?)?;
    let rs_to_z = z.mediate(
        &oplus(right.i(), bottom.i())?,
        &Morphism::zero(&y.rs.module, problem.q()),
    )?;
    let w_to_z = compose(&rs_to_z, &an.w.qrs)?;
    let via_w_z = class_of_four_term(&an.w.jp, &w_to_z, &z.pb, g2)?;

    let z_to_y = y
        .pullback
        .mediate(&compose(&fg.proj[0], &z.pa)?, &compose(&fg.proj[1], &z.pa)?)?;
    let around = compose(&z_to_y, &w_to_z)?;
    let cons = [
        Constraint::before(&an.w.jp, &p_to_t),
        Constraint::after(&t_to_y, &around),
    ];
    let w_to_t = solve_hom(&an.w.module, &t.module, &cons)?
        .ok_or_else(|| PanacheeError::Internal("no comparison map W -> T".into()))?
        .particular;

    Ok(SpliceReport {
        via_t_y,
        via_w_z,
        splice_sum: an.splice_sum.clone(),
        obstruction: an.obstruction.clone(),
        w_to_t,
        z_to_y,
    })
}
