//! Exact matrix arithmetic over `Z` and `Z/N`.
//!
//! Every higher layer reduces to three primitives defined here: the Smith
//! normal form over `Z`, the Howell form over `Z/N`, and [`solve_linear`]
//! which dispatches between them.

mod howell;
mod int;
mod mat;
mod snf;
mod solve;

pub use howell::{howell_form, is_howell_shaped, HowellForm};
pub(crate) use int::rem_floor;
pub use int::{gcd, int, mod_inverse_unit, xgcd, Int};
pub use mat::Mat;
pub use snf::{determinant, smith_normal_form, SmithForm};
pub use solve::{kernel, solve_linear, LinearSolver, Solution};

use num_traits::Signed;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("operation requires {expected}, got {found}")]
    WrongRing { expected: String, found: Ring },
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(Ring, Ring),
    #[error("modulus must be non-negative, got {0}")]
    NegativeModulus(Int),
}

/// The coefficient ring: `Z` when the modulus is zero, `Z/N` otherwise.
///
/// `N = 1` is the zero ring; every module over it is trivial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Ring {
    modulus: Int,
}

impl Ring {
    pub fn new(modulus: Int) -> Result<Self, LinalgError> {
        if modulus.is_negative() {
            return Err(LinalgError::NegativeModulus(modulus));
        }
        Ok(Ring { modulus })
    }

    pub fn integers() -> Self {
        Ring { modulus: Int::ZERO }
    }

    pub fn modulo(n: u64) -> Self {
        Ring {
            modulus: Int::from(n),
        }
    }

    pub fn modulus(&self) -> &Int {
        &self.modulus
    }

    pub fn is_integers(&self) -> bool {
        self.modulus.is_zero()
    }

    pub fn is_zero_ring(&self) -> bool {
        self.modulus.is_one()
    }

    /// Canonical representative: `[0, N)` for `Z/N`, unchanged over `Z`.
    pub fn reduce(&self, x: Int) -> Int {
        if self.modulus.is_zero() {
            x
        } else {
            int::rem_floor(&x, &self.modulus)
        }
    }

    pub fn reduce_ref(&self, x: &Int) -> Int {
        if self.modulus.is_zero() {
            x.clone()
        } else {
            int::rem_floor(x, &self.modulus)
        }
    }

    pub(crate) fn check_same(&self, other: &Ring) -> Result<(), LinalgError> {
        if self == other {
            Ok(())
        } else {
            Err(LinalgError::RingMismatch(self.clone(), other.clone()))
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.modulus.is_zero() {
            write!(f, "Z")
        } else {
            write!(f, "Z/{}", self.modulus)
        }
    }
}

impl From<Ring> for String {
    fn from(r: Ring) -> String {
        r.modulus.to_string()
    }
}

impl TryFrom<String> for Ring {
    type Error = String;
    fn try_from(s: String) -> Result<Self, String> {
        let m: Int = s.parse().map_err(|_| format!("bad modulus {s:?}"))?;
        Ring::new(m).map_err(|e| e.to_string())
    }
}
