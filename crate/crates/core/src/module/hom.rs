use super::system::Congruences;
use super::{direct_sum_many, mixed_radix, submodule, FpModule, ModuleError, Morphism, Result};
use crate::linalg::{Int, Mat};

/// `left ∘ h ∘ right == target`. A missing side is the identity.
#[derive(Clone, Debug)]
pub struct Constraint {
    pub left: Option<Morphism>,
    pub right: Option<Morphism>,
    pub target: Morphism,
}

impl Constraint {
    pub fn new(left: Option<Morphism>, right: Option<Morphism>, target: Morphism) -> Self {
        Constraint {
            left,
            right,
            target,
        }
    }

    /// `left ∘ h == target`.
    pub fn after(left: &Morphism, target: &Morphism) -> Self {
        Self::new(Some(left.clone()), None, target.clone())
    }

    /// `h ∘ right == target`.
    pub fn before(right: &Morphism, target: &Morphism) -> Self {
        Self::new(None, Some(right.clone()), target.clone())
    }
}

/// All solutions of a [`solve_hom`] problem: `particular` plus any element of
/// the group generated by `generators`.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub src: FpModule,
    pub tgt: FpModule,
    pub particular: Morphism,
    pub generators: Vec<Morphism>,
}

impl HomSpace {
    /// A basis of the homogeneous solutions as a direct sum of cyclic groups:
    /// each entry is a generator and its additive order (`0` if infinite).
    pub fn basis(&self) -> Vec<(Morphism, Int)> {
        let (ns, nt) = (self.src.ngens(), self.tgt.ngens());
        if ns == 0 || nt == 0 {
            return vec![];
        }
        let cols = direct_sum_many(&vec![self.tgt.clone(); ns]).expect("same ring");
        let flat: Vec<Vec<Int>> = self
            .generators
            .iter()
            .map(|h| (0..ns).flat_map(|c| h.matrix().column(c)).collect())
            .collect();
        let sub = submodule(&cols.module, &flat).expect("lengths agree");
        let ring = self.src.ring();
        sub.module
            .invariants()
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let v = sub.incl.matrix().column(i);
                let m = Mat::from_fn(ring, nt, ns, |r, c| v[c * nt + r].clone());
                (
                    Morphism::new(&self.src, &self.tgt, m).expect("homogeneous solution"),
                    d.clone(),
                )
            })
            .collect()
    }

    /// Number of solutions, `None` if infinite.
    pub fn count(&self) -> Option<Int> {
        let mut n = Int::ONE;
        for (_, d) in self.basis() {
            if d.is_zero() {
                return None;
            }
            n *= d;
        }
        Some(n)
    }

    pub fn is_unique(&self) -> bool {
        self.count().is_some_and(|c| c.is_one())
    }

    /// Every solution exactly once. Fails on an infinite solution set.
    pub fn enumerate(&self) -> Result<Vec<Morphism>> {
        let basis = self.basis();
        if basis.iter().any(|(_, d)| d.is_zero()) {
            return Err(ModuleError::Infinite);
        }
        let orders: Vec<Int> = basis.iter().map(|(_, d)| d.clone()).collect();
        Ok(mixed_radix(&orders)
            .map(|c| {
                let mut h = self.particular.clone();
                for ((b, _), k) in basis.iter().zip(&c) {
                    if !k.is_zero() {
                        h = h.add(&b.scale(k)).expect("parallel");
                    }
                }
                h
            })
            .collect())
    }
}

/// Finds all `h: src -> tgt` meeting every constraint, or `None`.
pub fn solve_hom(
    src: &FpModule,
    tgt: &FpModule,
    constraints: &[Constraint],
) -> Result<Option<HomSpace>> {
    let ring = src.ring();
    ring.check_same(tgt.ring())?;
    let (ns, nt) = (src.ngens(), tgt.ngens());
    let nvars = ns * nt;
    let var = |r: usize, c: usize| r * ns + c;
    let mut sys = Congruences::new(ring, nvars);

    // relations of src must land in relations of tgt
    for rho in src.relations().columns() {
        let map: Vec<Vec<Int>> = (0..nt)
            .map(|r| {
                let mut row = vec![Int::ZERO; nvars];
                for (c, x) in rho.iter().enumerate() {
                    row[var(r, c)] = x.clone();
                }
                row
            })
            .collect();
        sys.require_equal_in(tgt, &map, &vec![Int::ZERO; nt]);
    }

    for (k, con) in constraints.iter().enumerate() {
        let left = con.left.clone().unwrap_or_else(|| Morphism::identity(tgt));
        let right = con.right.clone().unwrap_or_else(|| Morphism::identity(src));
        if left.src() != tgt
            || right.tgt() != src
            || con.target.src() != right.src()
            || con.target.tgt() != left.tgt()
        {
            return Err(ModuleError::EndpointMismatch(format!(
                "constraint {k} does not fit {src:?} -> {tgt:?}"
            )));
        }
        let (l, rt) = (left.matrix(), right.matrix());
        let out = left.tgt();
        for j in 0..right.src().ngens() {
            let map: Vec<Vec<Int>> = (0..out.ngens())
                .map(|a| {
                    let mut row = vec![Int::ZERO; nvars];
                    for r in 0..nt {
                        let lar = l.get(a, r);
                        if lar.is_zero() {
                            continue;
                        }
                        for c in 0..ns {
                            let rcj = rt.get(c, j);
                            if !rcj.is_zero() {
                                row[var(r, c)] += lar * rcj;
                            }
                        }
                    }
                    row
                })
                .collect();
            sys.require_equal_in(out, &map, &con.target.matrix().column(j));
        }
    }

    let Some((x, kernel)) = sys.solve() else {
        return Ok(None);
    };
    let to_mat = |v: &[Int]| Mat::from_fn(ring, nt, ns, |r, c| v[var(r, c)].clone());
    let particular = Morphism::new(src, tgt, to_mat(&x))?;
    let generators = kernel
        .iter()
        .map(|v| Morphism::new(src, tgt, to_mat(v)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Some(HomSpace {
        src: src.clone(),
        tgt: tgt.clone(),
        particular,
        generators,
    }))
}
