//! Exact homological algebra over `Z/N` and `Z`.
//!
//! The crate decides whether a 3x3 border diagram of short exact sequences
//!
//! ```text
//!         0     0     0
//!         |     |     |
//!    0 -> P --> E --> R -> 0
//!         |           |
//!    0 -> H    (X)    F -> 0
//!         |           |
//!    0 -> S --> G --> Q -> 0
//!         |     |     |
//!         0     0     0
//! ```
//!
//! admits a middle object `X` making every row and column exact, builds `X`
//! and its four maps when it does, and describes the full set of solutions.
//!
//! Layers, bottom to top:
//!
//! * [`linalg`]: integer and `Z/N` matrices, Smith and Howell normal forms,
//!   linear system solving.
//! * [`module`]: finitely presented modules, morphisms, kernels, cokernels,
//!   images, direct sums and hom-space solving.
//! * [`diagram`]: short exact sequences, pullbacks, pushouts, Baer sums and
//!   commutativity checks.
//! * [`ext`]: free resolutions, `Ext^0..Ext^2`, extension classes, Yoneda
//!   splicing and the long exact sequence maps.
//! * [`panachee`]: the obstruction class, completion, and solution torsor.
//! * [`oracle`]: brute-force ground truth for tiny instances.
//! * [`dsl`], [`report`], [`certificate`]: the text problem format, JSON
//!   reports, and the independent certificate verifier.

pub mod certificate;
pub mod diagram;
pub mod dsl;
pub mod ext;
pub mod linalg;
pub mod module;
pub mod oracle;
pub mod panachee;
pub mod report;
pub mod sample;

pub use linalg::{Int, Mat, Ring};
pub use module::{FpModule, Morphism};
