//! Seeded generators for problems and extensions, used by tests, benches
//! and the browser demo.

use crate::diagram::ShortExactSeq;
use crate::ext::{ext_group, ses_of_class, ExtError};
use crate::linalg::{Int, Ring};
use crate::module::{FpModule, Morphism};
use crate::panachee::{PanacheeError, PanacheeProblem};
use rand::Rng;

/// Divisors of `n` greater than one, or `2..=6` over the integers.
fn factor_pool(ring: &Ring) -> Vec<u64> {
    match u64::try_from(ring.modulus()) {
        Ok(0) => (2..=6).collect(),
        Ok(n) => (2..=n).filter(|d| n % d == 0).collect(),
        Err(_) => vec![2, 3],
    }
}

/// A random finite module of order at most `max_order`, as a direct sum of
/// cyclic modules. May be zero.
pub fn random_module<R: Rng + ?Sized>(rng: &mut R, ring: &Ring, max_order: u64) -> FpModule {
    let pool = factor_pool(ring);
    let mut factors: Vec<Int> = Vec::new();
    let mut order = 1u64;
    // geometric number of summands keeps small modules common
    while rng.gen_bool(0.6) {
        let fits: Vec<u64> = pool
            .iter()
            .copied()
            .filter(|d| order * d <= max_order)
            .collect();
        if fits.is_empty() {
            break;
        }
        let d = fits[rng.gen_range(0..fits.len())];
        order *= d;
        factors.push(Int::from(d));
    }
    FpModule::diagonal(ring, &factors)
}

/// An extension of `c` by `a` with a uniformly random class.
pub fn random_extension<R: Rng + ?Sized>(
    rng: &mut R,
    a: &FpModule,
    c: &FpModule,
) -> Result<ShortExactSeq, ExtError> {
    let g = ext_group(1, c, a)?;
    let coords: Vec<Int> = g
        .invariants()
        .iter()
        .map(|d| match u64::try_from(d) {
            Ok(0) | Err(_) => Int::from(rng.gen_range(-3i64..=3)),
            Ok(d) => Int::from(rng.gen_range(0..d)),
        })
        .collect();
    ses_of_class(&g.class(&coords)?)
}

/// Random corners of order at most `max_order` and random edge sequences.
pub fn random_problem<R: Rng + ?Sized>(
    rng: &mut R,
    ring: &Ring,
    max_order: u64,
) -> Result<PanacheeProblem, PanacheeError> {
    let p = random_module(rng, ring, max_order);
    let r = random_module(rng, ring, max_order);
    let s = random_module(rng, ring, max_order);
    let q = random_module(rng, ring, max_order);
    PanacheeProblem::new(
        random_extension(rng, &p, &r)?,
        random_extension(rng, &p, &s)?,
        random_extension(rng, &r, &q)?,
        random_extension(rng, &s, &q)?,
    )
}

/// `0 -> Z/p -> Z/p^2 -> Z/p -> 0` over `Z/p^2` (or over `Z`) when
/// `nonsplit`, the direct sum otherwise.
pub fn prime_square_extension(ring: &Ring, p: i64, nonsplit: bool) -> ShortExactSeq {
    let a = FpModule::cyclic(ring, p);
    if !nonsplit {
        return ShortExactSeq::split(&a, &a).expect("same ring");
    }
    let b = FpModule::cyclic(ring, p * p);
    let i = Morphism::from_rows(&a, &b, &[vec![p]]).expect("well defined");
    let q = Morphism::from_rows(&b, &a, &[vec![1]]).expect("well defined");
    ShortExactSeq::new(&i, &q).expect("exact")
}

/// The problem over `Z/p^2` with every corner `Z/p`; `nonsplit` lists the
/// top, left, right and bottom sequences.
pub fn prime_square_problem(p: i64, nonsplit: [bool; 4]) -> PanacheeProblem {
    let ring = Ring::modulo((p * p) as u64);
    let [t, l, r, b] = nonsplit.map(|n| prime_square_extension(&ring, p, n));
    PanacheeProblem::new(t, l, r, b).expect("corners agree")
}

/// The sixteen problems over `Z/4` with all corners `Z/2`.
pub fn z4_grid() -> Vec<([bool; 4], PanacheeProblem)> {
    (0..16u8)
        .map(|m| {
            let bits = [m & 1 != 0, m & 2 != 0, m & 4 != 0, m & 8 != 0];
            (bits, prime_square_problem(2, bits))
        })
        .collect()
}
