//! Exhaustive search at tiny scale: modules, extensions, completions and
//! vanishing of degree-2 cocycles, each found by enumeration.

use crate::diagram::{pullback, DiagramError, ShortExactSeq};
use crate::linalg::{Int, Mat, Ring};
use crate::module::{compose, solve_hom, Constraint, FpModule, ModuleError, Morphism};
use crate::panachee::PanacheeProblem;
use std::time::Duration;
use thiserror::Error;

/// Hard cap on the order of any module the oracle will search through.
pub const MAX_ORDER: u64 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("search needs order {needed}, budget allows {cap}")]
    BudgetExceeded { needed: u64, cap: u64 },
    #[error("budget {0} is above the hard cap of {MAX_ORDER}")]
    CapTooLarge(u64),
    #[error("the oracle only classifies modules over Z/N with N >= 2")]
    UnsupportedRing,
    #[error("search results are inconsistent: {0}")]
    Inconsistent(String),
    #[error("search space is infinite")]
    Infinite,
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

pub type Result<T, E = OracleError> = std::result::Result<T, E>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_order: u64,
    pub max_gens: usize,
    /// Advisory only; searches do not poll a clock.
    pub timeout_hint: Option<Duration>,
}

impl SearchBudget {
    pub fn new(max_order: u64) -> Result<Self> {
        if max_order > MAX_ORDER {
            return Err(OracleError::CapTooLarge(max_order));
        }
        Ok(SearchBudget {
            max_order,
            max_gens: 6,
            timeout_hint: None,
        })
    }

    fn admit(&self, order: &Int) -> Result<u64> {
        let needed = u64::try_from(order).map_err(|_| OracleError::Infinite)?;
        if needed > self.max_order {
            return Err(OracleError::BudgetExceeded {
                needed,
                cap: self.max_order,
            });
        }
        Ok(needed)
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget::new(MAX_ORDER).expect("within cap")
    }
}

fn finite_modulus(ring: &Ring) -> Result<u64> {
    match u64::try_from(ring.modulus()) {
        Ok(n) if n >= 2 => Ok(n),
        _ => Err(OracleError::UnsupportedRing),
    }
}

fn order_of(m: &FpModule) -> Result<Int> {
    m.order().ok_or(OracleError::Infinite)
}

/// One module per isomorphism class of the given order: each is the direct
/// sum of `Z/d_i` over a non-increasing list of divisors `d_i > 1` of `N`.
pub fn enumerate_modules(ring: &Ring, order: u64) -> Result<Vec<FpModule>> {
    let n = finite_modulus(ring)?;
    let divisors: Vec<u64> = (2..=n).rev().filter(|d| n % d == 0).collect();
    let mut out = Vec::new();
    let mut stack = Vec::new();
    collect_factorizations(order, &divisors, 0, &mut stack, &mut out);
    Ok(out
        .into_iter()
        .map(|ds| FpModule::diagonal(ring, &ds.into_iter().map(Int::from).collect::<Vec<_>>()))
        .collect())
}

fn collect_factorizations(
    rest: u64,
    divs: &[u64],
    from: usize,
    cur: &mut Vec<u64>,
    out: &mut Vec<Vec<u64>>,
) {
    if rest == 1 {
        out.push(cur.clone());
        return;
    }
    for (k, &d) in divs.iter().enumerate().skip(from) {
        if rest % d == 0 {
            cur.push(d);
            collect_factorizations(rest / d, divs, k, cur, out);
            cur.pop();
        }
    }
}

/// A finite module as a table-driven abelian group. Elements are numbered
/// by their decomposition coordinates, first coordinate least significant,
/// so `0` is the zero element and `scale[j]` is the `j`-th basis element.
struct Group {
    module: FpModule,
    radices: Vec<usize>,
    scale: Vec<usize>,
    size: usize,
    sum: Vec<usize>,
}

impl Group {
    fn new(m: &FpModule) -> Result<Self> {
        let radices: Vec<usize> = m
            .invariants()
            .iter()
            .map(|d| {
                usize::try_from(d)
                    .ok()
                    .filter(|d| *d > 0)
                    .ok_or(OracleError::Infinite)
            })
            .collect::<Result<_>>()?;
        let mut scale = Vec::with_capacity(radices.len());
        let mut size = 1usize;
        for r in &radices {
            scale.push(size);
            size = size
                .checked_mul(*r)
                .filter(|s| *s as u64 <= MAX_ORDER)
                .ok_or(OracleError::BudgetExceeded {
                    needed: u64::MAX,
                    cap: MAX_ORDER,
                })?;
        }
        let mut g = Group {
            module: m.clone(),
            radices,
            scale,
            size,
            sum: Vec::new(),
        };
        let mut sum = vec![0; size * size];
        for a in 0..size {
            let ca = g.coords(a);
            for b in 0..size {
                let cb = g.coords(b);
                sum[a * size + b] = g.from_coords(
                    ca.iter()
                        .zip(&cb)
                        .zip(&g.radices)
                        .map(|((x, y), r)| (x + y) % r),
                );
            }
        }
        g.sum = sum;
        Ok(g)
    }

    fn coords(&self, i: usize) -> Vec<usize> {
        self.radices
            .iter()
            .zip(&self.scale)
            .map(|(r, s)| (i / s) % r)
            .collect()
    }

    fn from_coords(&self, c: impl Iterator<Item = usize>) -> usize {
        c.zip(&self.scale).map(|(x, s)| x * s).sum()
    }

    fn add(&self, a: usize, b: usize) -> usize {
        self.sum[a * self.size + b]
    }

    fn times(&self, k: usize, a: usize) -> usize {
        (0..k).fold(0, |acc, _| self.add(acc, a))
    }

    /// Index of an element given in generator coordinates.
    fn index(&self, x: &[Int]) -> usize {
        self.from_coords(
            self.module
                .dec(x)
                .iter()
                .map(|c| usize::try_from(c).expect("reduced")),
        )
    }

    /// Generator coordinates of an element.
    fn element(&self, i: usize) -> Vec<Int> {
        let c: Vec<Int> = self.coords(i).into_iter().map(Int::from).collect();
        self.module.from_dec_coords(&c)
    }
}

/// A homomorphism between table groups, as the image of every element.
#[derive(Clone, PartialEq, Eq)]
struct Table(Vec<usize>);

impl Table {
    /// The homomorphism sending basis element `j` of `src` to `images[j]`.
    /// The images must respect the basis orders.
    fn from_basis(src: &Group, tgt: &Group, images: &[usize]) -> Self {
        let mut t = vec![0; src.size];
        for i in 1..src.size {
            let c = src.coords(i);
            let j = c.iter().position(|&x| x > 0).expect("nonzero element");
            t[i] = tgt.add(t[i - src.scale[j]], images[j]);
        }
        Table(t)
    }

    fn of(f: &Morphism, src: &Group, tgt: &Group) -> Self {
        let images: Vec<usize> = src
            .scale
            .iter()
            .map(|&s| tgt.index(&f.matrix().mul_vec(&src.element(s)).expect("shapes agree")))
            .collect();
        Self::from_basis(src, tgt, &images)
    }

    fn then(&self, g: &Table) -> Table {
        Table(self.0.iter().map(|&y| g.0[y]).collect())
    }

    fn is_injective(&self) -> bool {
        self.0.iter().filter(|&&i| i == 0).count() == 1
    }

    fn is_surjective(&self, tgt: &Group) -> bool {
        let mut hit = vec![false; tgt.size];
        for &i in &self.0 {
            hit[i] = true;
        }
        hit.into_iter().all(|b| b)
    }

    /// Image of `self` equals the kernel of `next`, `self` being injective.
    fn exact_into(&self, next: &Table) -> bool {
        self.0.iter().all(|&i| next.0[i] == 0)
            && next.0.iter().filter(|&&i| i == 0).count() == self.0.len()
    }

    fn to_morphism(&self, src: &Group, tgt: &Group) -> Result<Morphism> {
        let n = src.module.ngens();
        let cols: Vec<Vec<Int>> = (0..n)
            .map(|j| {
                let unit: Vec<Int> = (0..n)
                    .map(|k| if k == j { Int::ONE } else { Int::ZERO })
                    .collect();
                tgt.element(self.0[src.index(&unit)])
            })
            .collect();
        Ok(Morphism::new(
            &src.module,
            &tgt.module,
            Mat::from_columns(src.module.ring(), tgt.module.ngens(), &cols),
        )?)
    }
}

/// For each basis element of `src`, the candidate images in `tgt` that
/// respect its order, optionally restricted to a preimage set.
fn admissible(src: &Group, tgt: &Group, within: impl Fn(usize) -> Vec<usize>) -> Vec<Vec<usize>> {
    src.radices
        .iter()
        .enumerate()
        .map(|(j, &d)| {
            within(j)
                .into_iter()
                .filter(|&x| tgt.times(d, x) == 0)
                .collect()
        })
        .collect()
}

/// Every choice of one entry per list.
fn choices(lists: &[Vec<usize>]) -> impl Iterator<Item = Vec<usize>> + '_ {
    let total: usize = lists.iter().map(Vec::len).product();
    (0..total).map(move |mut idx| {
        lists
            .iter()
            .map(|l| {
                let v = l[idx % l.len()];
                idx /= l.len();
                v
            })
            .collect()
    })
}

/// All homomorphisms `src -> tgt` as tables.
fn hom_tables(src: &Group, tgt: &Group) -> Vec<Table> {
    let all: Vec<usize> = (0..tgt.size).collect();
    let lists = admissible(src, tgt, |_| all.clone());
    choices(&lists)
        .map(|imgs| Table::from_basis(src, tgt, &imgs))
        .collect()
}

/// Representatives of the equivalence classes of extensions `0 -> a -> B -> c -> 0`.
///
/// For each candidate `B` all exact pairs `(i, p)` are enumerated; the
/// number of classes is `pairs * |stabilizer| / |Aut(B)|` and
/// representatives are picked by pairwise comparison until that many are
/// found.
pub fn enumerate_ses(
    a: &FpModule,
    c: &FpModule,
    budget: &SearchBudget,
) -> Result<Vec<ShortExactSeq>> {
    let ring = a.ring();
    let order = budget.admit(&(order_of(a)? * order_of(c)?))?;
    let (ga, gc) = (Group::new(a)?, Group::new(c)?);
    let mut reps = Vec::new();
    for b in enumerate_modules(ring, order)? {
        let gb = Group::new(&b)?;
        let mut pairs: Vec<(Table, Table)> = Vec::new();
        let ps: Vec<Table> = hom_tables(&gb, &gc)
            .into_iter()
            .filter(|p| p.is_surjective(&gc))
            .collect();
        for i in hom_tables(&ga, &gb) {
            if !i.is_injective() {
                continue;
            }
            for p in &ps {
                if i.exact_into(p) {
                    pairs.push((i.clone(), p.clone()));
                }
            }
        }
        let seqs = pairs.iter().map(|(i, p)| -> Result<ShortExactSeq> {
            Ok(ShortExactSeq::new(
                &i.to_morphism(&ga, &gb)?,
                &p.to_morphism(&gb, &gc)?,
            )?)
        });
        reps.extend(pick_classes(
            pairs.len(),
            &b,
            seqs,
            ses_stabilizer,
            |x, y| Ok(x.is_equivalent(y)?),
        )?);
    }
    Ok(reps)
}

fn ses_stabilizer(s: &ShortExactSeq) -> Result<Int> {
    let cons = [
        Constraint::before(s.i(), s.i()),
        Constraint::after(s.p(), s.p()),
    ];
    let hs = solve_hom(s.mid(), s.mid(), &cons)?.expect("the identity qualifies");
    hs.count().ok_or(OracleError::Infinite)
}

/// Orbit counting under `Aut(m)`, then representatives by pairwise
/// comparison. Every candidate must have the same stabilizer order as the
/// first.
fn pick_classes<T>(
    count: usize,
    m: &FpModule,
    mut items: impl Iterator<Item = Result<T>>,
    stabilizer: impl Fn(&T) -> Result<Int>,
    same: impl Fn(&T, &T) -> Result<bool>,
) -> Result<Vec<T>> {
    let Some(first) = items.next().transpose()? else {
        return Ok(vec![]);
    };
    let stab = stabilizer(&first)?;
    let aut = automorphism_count(m)?;
    let total = Int::from(count) * &stab;
    if !(&total % &aut).is_zero() {
        return Err(OracleError::Inconsistent(format!(
            "{count} candidates with stabilizer {stab} on {m}, |Aut| = {aut}"
        )));
    }
    let classes = usize::try_from(&(total / aut)).map_err(|_| OracleError::Infinite)?;
    let mut reps = vec![first];
    for item in items {
        if reps.len() >= classes {
            break;
        }
        let item = item?;
        let mut fresh = true;
        for r in &reps {
            if same(r, &item)? {
                fresh = false;
                break;
            }
        }
        if fresh {
            reps.push(item);
        }
    }
    if reps.len() != classes {
        return Err(OracleError::Inconsistent(format!(
            "found {} of {classes} classes on {m}",
            reps.len()
        )));
    }
    Ok(reps)
}

/// A middle object found by search, with its four maps.
#[derive(Clone, Debug)]
pub struct BruteCompletion {
    ie: Morphism,
    pub x: FpModule,
    pub e: Morphism,
    pub h: Morphism,
    pub f: Morphism,
    pub g: Morphism,
}

impl BruteCompletion {
    /// `P -> X`, the common composite through `E` and `H`.
    pub fn ip(&self) -> Result<Morphism> {
        Ok(compose(&self.e, &self.ie)?)
    }

    fn constraints<'a>(
        &'a self,
        other: &'a BruteCompletion,
        ips: &'a [Morphism; 2],
    ) -> [Constraint; 3] {
        [
            Constraint::before(&ips[0], &ips[1]),
            Constraint::after(&other.f, &self.f),
            Constraint::after(&other.g, &self.g),
        ]
    }

    /// An isomorphism to `other` fixing `P -> X` and `(f, g): X -> Y`, that
    /// is, the two give the same class of `0 -> P -> X -> Y -> 0`.
    pub fn is_equivalent(&self, other: &BruteCompletion) -> Result<bool> {
        if !self.x.is_isomorphic(&other.x) {
            return Ok(false);
        }
        let ips = [self.ip()?, other.ip()?];
        // any such map is an isomorphism, by the five lemma
        Ok(solve_hom(&self.x, &other.x, &self.constraints(other, &ips))?.is_some())
    }

    /// Number of automorphisms of `X` fixing `P -> X` and `X -> Y`.
    pub fn stabilizer_order(&self) -> Result<Int> {
        let ips = [self.ip()?, self.ip()?];
        let hs = solve_hom(&self.x, &self.x, &self.constraints(self, &ips))?
            .expect("the identity qualifies");
        hs.count().ok_or(OracleError::Infinite)
    }
}

/// All completions of `problem`, one per class of `0 -> P -> X -> Y -> 0`:
/// two completions are identified when an isomorphism of middle objects
/// fixes `P -> X`, `f` and `g`. The maps `e` and `h` of a representative
/// are one choice among several.
pub fn brute_complete(
    problem: &PanacheeProblem,
    budget: &SearchBudget,
) -> Result<Vec<BruteCompletion>> {
    let ring = problem.p().ring();
    let corners = order_of(problem.p())?
        * order_of(problem.r())?
        * order_of(problem.s())?
        * order_of(problem.q())?;
    let order = budget.admit(&corners)?;
    let search = Search::new(problem)?;
    let mut found = Vec::new();
    for x in enumerate_modules(ring, order)? {
        let gx = Group::new(&x)?;
        let mut tuples = search.tuples(&gx);
        let mut seen = std::collections::BTreeSet::new();
        tuples.retain(|t| seen.insert((search.ie.then(&t.e).0, t.f.0.clone(), t.g.0.clone())));
        let items = tuples.iter().map(|t| search.realize(problem, &gx, t));
        found.extend(pick_classes(
            tuples.len(),
            &x,
            items,
            BruteCompletion::stabilizer_order,
            |a, b| a.is_equivalent(b),
        )?);
    }
    Ok(found)
}

/// Number of `(e, h, f, g)` tuples on each candidate `X`, without
/// identifying isomorphic ones.
pub fn completion_tuple_counts(
    problem: &PanacheeProblem,
    budget: &SearchBudget,
) -> Result<Vec<(FpModule, usize)>> {
    let order = budget
        .admit(&(order_of(problem.e())? * order_of(problem.s())? * order_of(problem.q())?))?;
    let search = Search::new(problem)?;
    enumerate_modules(problem.p().ring(), order)?
        .into_iter()
        .map(|x| {
            let n = search.tuples(&Group::new(&x)?).len();
            Ok((x, n))
        })
        .collect()
}

/// Fixed data for the completion search, as tables.
struct Search {
    ge: Group,
    gh: Group,
    gf: Group,
    gg: Group,
    gy: Group,
    /// `Y -> F` and `Y -> G` for the pullback `Y` of `F -> Q <- G`
    pa: Table,
    pb: Table,
    /// `P -> E`, `P -> H`
    ie: Table,
    ih: Table,
    /// where the basis of `E` (resp. `H`) must land in `Y`
    e_target: Vec<usize>,
    h_target: Vec<usize>,
}

struct Tuple {
    e: Table,
    h: Table,
    f: Table,
    g: Table,
}

impl Search {
    fn new(problem: &PanacheeProblem) -> Result<Self> {
        let (top, left, right, bottom) = (
            problem.top(),
            problem.left(),
            problem.right(),
            problem.bottom(),
        );
        let y = pullback(right.p(), bottom.p())?;
        let gp = Group::new(problem.p())?;
        let ge = Group::new(problem.e())?;
        let gh = Group::new(problem.h())?;
        let gf = Group::new(problem.f())?;
        let gg = Group::new(problem.g())?;
        let gy = Group::new(&y.module)?;
        // (f, g) is a map into Y; e must lie over (iF pE, 0) and h over (0, iG pH)
        let over_e = y.mediate(
            &compose(right.i(), top.p())?,
            &Morphism::zero(problem.e(), problem.g()),
        )?;
        let over_h = y.mediate(
            &Morphism::zero(problem.h(), problem.f()),
            &compose(bottom.i(), left.p())?,
        )?;
        let e_target = Table::of(&over_e, &ge, &gy);
        let h_target = Table::of(&over_h, &gh, &gy);
        Ok(Search {
            pa: Table::of(&y.pa, &gy, &gf),
            pb: Table::of(&y.pb, &gy, &gg),
            ie: Table::of(top.i(), &gp, &ge),
            ih: Table::of(left.i(), &gp, &gh),
            e_target: ge.scale.iter().map(|&s| e_target.0[s]).collect(),
            h_target: gh.scale.iter().map(|&s| h_target.0[s]).collect(),
            ge,
            gh,
            gf,
            gg,
            gy,
        })
    }

    fn tuples(&self, gx: &Group) -> Vec<Tuple> {
        let mut out = Vec::new();
        if gx.size != self.gf.size * self.gh.size {
            return out;
        }
        for k in hom_tables(gx, &self.gy) {
            let f = k.then(&self.pa);
            let g = k.then(&self.pb);
            if !f.is_surjective(&self.gf) || !g.is_surjective(&self.gg) {
                continue;
            }
            let mut fibers = vec![Vec::new(); self.gy.size];
            for (x, &y) in k.0.iter().enumerate() {
                fibers[y].push(x);
            }
            let e_lists = admissible(&self.ge, gx, |j| fibers[self.e_target[j]].clone());
            let h_lists = admissible(&self.gh, gx, |j| fibers[self.h_target[j]].clone());
            for ei in choices(&e_lists) {
                let e = Table::from_basis(&self.ge, gx, &ei);
                if !e.is_injective() || !e.exact_into(&g) {
                    continue;
                }
                let p_via_e = self.ie.then(&e);
                for hi in choices(&h_lists) {
                    let h = Table::from_basis(&self.gh, gx, &hi);
                    if self.ih.then(&h) != p_via_e || !h.is_injective() || !h.exact_into(&f) {
                        continue;
                    }
                    out.push(Tuple {
                        e: e.clone(),
                        h,
                        f: f.clone(),
                        g: g.clone(),
                    });
                }
            }
        }
        out
    }

    fn realize(&self, problem: &PanacheeProblem, gx: &Group, t: &Tuple) -> Result<BruteCompletion> {
        Ok(BruteCompletion {
            ie: problem.top().i().clone(),
            x: gx.module.clone(),
            e: t.e.to_morphism(&self.ge, gx)?,
            h: t.h.to_morphism(&self.gh, gx)?,
            f: t.f.to_morphism(gx, &self.gf)?,
            g: t.g.to_morphism(gx, &self.gg)?,
        })
    }
}

/// `|Aut(m)|` for a finite module, from the invariant factors.
///
/// Each primary part `Z/p^e_1 + .. + Z/p^e_n` with `e_1 <= .. <= e_n`
/// contributes `prod_k (p^d_k - p^(k-1)) * prod_j p^(e_j (n - d_j)) *
/// prod_i p^((e_i - 1)(n - c_i + 1))`, where `d_k` and `c_k` are the last
/// and first positions holding the exponent `e_k`.
pub fn automorphism_count(m: &FpModule) -> Result<Int> {
    let mut by_prime: std::collections::BTreeMap<u64, Vec<u32>> = Default::default();
    for d in m.invariants() {
        let mut d = u64::try_from(d)
            .ok()
            .filter(|d| *d > 0)
            .ok_or(OracleError::Infinite)?;
        let mut p = 2;
        while d > 1 {
            let mut e = 0;
            while d % p == 0 {
                d /= p;
                e += 1;
            }
            if e > 0 {
                by_prime.entry(p).or_default().push(e);
            }
            p += 1;
        }
    }
    let mut total = Int::ONE;
    for (p, mut es) in by_prime {
        es.sort_unstable();
        let n = es.len();
        let pow = |k: u32| Int::from(p).pow(k as usize);
        for k in 0..n {
            let d = es.iter().rposition(|&x| x == es[k]).unwrap() + 1;
            let c = es.iter().position(|&x| x == es[k]).unwrap() + 1;
            total *= pow(d as u32) - pow(k as u32);
            total *= pow(es[k] * (n - d) as u32);
            total *= pow((es[k] - 1) * (n - c + 1) as u32);
        }
    }
    Ok(total)
}

/// Whether `cocycle: F_2 -> P` is `psi ∘ d` for some `psi: F_1 -> P`, by
/// trying every matrix. `F_1` must be free.
pub fn brute_is_zero_ext2(d: &Morphism, cocycle: &Morphism) -> Result<bool> {
    let (f1, p) = (d.tgt(), cocycle.tgt());
    let n = finite_modulus(p.ring())?;
    let cells = f1.ngens() * p.ngens();
    let total = (n as u128)
        .checked_pow(cells as u32)
        .filter(|t| *t <= 1 << 20)
        .ok_or(OracleError::BudgetExceeded {
            needed: u64::MAX,
            cap: 1 << 20,
        })?;
    for idx in 0..total {
        let mut rest = idx;
        let m = Mat::from_fn(p.ring(), p.ngens(), f1.ngens(), |_, _| {
            let v = rest % n as u128;
            rest /= n as u128;
            Int::from(v as u64)
        });
        let Ok(psi) = Morphism::new(f1, p, m) else {
            continue;
        };
        if compose(&psi, d)? == *cocycle {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ext::{ext_group, free_resolution, splice_cocycle};
    use crate::linalg::int;
    use crate::sample::prime_square_problem;

    fn z4() -> Ring {
        Ring::modulo(4)
    }

    fn invariants(ms: &[FpModule]) -> Vec<Vec<Int>> {
        ms.iter().map(|m| m.invariants().to_vec()).collect()
    }

    #[test]
    fn module_classes() {
        let r = z4();
        assert_eq!(
            invariants(&enumerate_modules(&r, 1).unwrap()),
            vec![Vec::<Int>::new()]
        );
        assert_eq!(
            invariants(&enumerate_modules(&r, 4).unwrap()),
            vec![vec![int(4)], vec![int(2), int(2)]]
        );
        assert_eq!(
            invariants(&enumerate_modules(&r, 8).unwrap()),
            vec![vec![int(2), int(4)], vec![int(2), int(2), int(2)]]
        );
        let mut sixteen = invariants(&enumerate_modules(&r, 16).unwrap());
        sixteen.sort();
        assert_eq!(
            sixteen,
            vec![
                vec![int(2), int(2), int(2), int(2)],
                vec![int(2), int(2), int(4)],
                vec![int(4), int(4)]
            ]
        );
        assert!(enumerate_modules(&r, 3).unwrap().is_empty());
        assert_eq!(
            enumerate_modules(&Ring::integers(), 4),
            Err(OracleError::UnsupportedRing)
        );
    }

    #[test]
    fn budget_cap() {
        assert!(SearchBudget::new(65).is_err());
        let b = SearchBudget::new(8).unwrap();
        let z4m = FpModule::cyclic(&z4(), 4);
        assert!(matches!(
            enumerate_ses(&z4m, &z4m, &b),
            Err(OracleError::BudgetExceeded { needed: 16, cap: 8 })
        ));
    }

    #[test]
    fn extension_classes() {
        let r = z4();
        let z2 = FpModule::cyclic(&r, 2);
        let b = SearchBudget::default();
        let reps = enumerate_ses(&z2, &z2, &b).unwrap();
        assert_eq!(reps.len(), 2);
        let mut mids: Vec<_> = reps.iter().map(|s| s.mid().invariants().to_vec()).collect();
        mids.sort();
        assert_eq!(mids, vec![vec![int(2), int(2)], vec![int(4)]]);
        assert_eq!(
            enumerate_ses(&FpModule::zero(&r), &z2, &b).unwrap().len(),
            1
        );
        let z4m = FpModule::cyclic(&r, 4);
        let n = enumerate_ses(&z2, &z4m, &b).unwrap().len();
        assert_eq!(
            Some(int(n as i64)),
            ext_group(1, &z4m, &z2).unwrap().order()
        );
    }

    #[test]
    fn completions_of_small_problems() {
        let b = SearchBudget::default();
        assert!(!brute_complete(&prime_square_problem(2, [false; 4]), &b)
            .unwrap()
            .is_empty());
        assert!(
            brute_complete(&prime_square_problem(2, [true, false, true, false]), &b)
                .unwrap()
                .is_empty()
        );
        assert!(!brute_complete(&prime_square_problem(2, [true; 4]), &b)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn degree_two_vanishing() {
        let r = z4();
        let z2 = FpModule::cyclic(&r, 2);
        let res = free_resolution(&z2).unwrap();
        let d = res.differential(2).clone();
        assert!(brute_is_zero_ext2(&d, &Morphism::zero(d.src(), &z2)).unwrap());
        let pr = prime_square_problem(2, [true, false, true, false]);
        let phi = splice_cocycle(pr.top(), pr.right(), &res).unwrap();
        assert!(!brute_is_zero_ext2(&d, &phi).unwrap());
        let psi = Morphism::from_rows(d.tgt(), &z2, &[vec![1]]).unwrap();
        assert!(brute_is_zero_ext2(&d, &compose(&psi, &d).unwrap()).unwrap());
    }

    #[test]
    fn automorphism_counts_match_search() {
        for n in [4u64, 8, 9, 12] {
            let r = Ring::modulo(n);
            for order in 1..=16 {
                for m in enumerate_modules(&r, order).unwrap() {
                    let g = Group::new(&m).unwrap();
                    let autos = hom_tables(&g, &g)
                        .into_iter()
                        .filter(Table::is_injective)
                        .count();
                    assert_eq!(automorphism_count(&m).unwrap(), int(autos as i64), "{m}");
                }
            }
        }
    }

    #[test]
    fn extension_counts_match_ext1() {
        for n in [4u64, 9] {
            let r = Ring::modulo(n);
            let small: Vec<FpModule> = (1..=n)
                .flat_map(|o| enumerate_modules(&r, o).unwrap())
                .collect();
            for a in &small {
                for c in &small {
                    let Ok(reps) = enumerate_ses(a, c, &SearchBudget::new(32).unwrap()) else {
                        continue;
                    };
                    let ext = ext_group(1, c, a).unwrap().order().unwrap();
                    assert_eq!(int(reps.len() as i64), ext, "Ext({c}, {a})");
                }
            }
        }
    }

    #[test]
    fn stabilizers_are_constant() {
        for bits in [[false; 4], [true, true, false, false], [true; 4]] {
            let pr = prime_square_problem(2, bits);
            let search = Search::new(&pr).unwrap();
            let y = pullback(pr.right().p(), pr.bottom().p()).unwrap().module;
            let hom_yp = solve_hom(&y, pr.p(), &[])
                .unwrap()
                .unwrap()
                .count()
                .unwrap();
            let mut seen = 0;
            for x in enumerate_modules(&z4(), 16).unwrap() {
                let gx = Group::new(&x).unwrap();
                for t in search.tuples(&gx).iter().take(40) {
                    let c = search.realize(&pr, &gx, t).unwrap();
                    assert_eq!(c.stabilizer_order().unwrap(), hom_yp, "{bits:?} on {x}");
                    seen += 1;
                }
            }
            assert!(seen > 0);
        }
    }
}
