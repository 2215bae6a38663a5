//! Calculator, optimizer and Monte-Carlo verifier for shadow-sample VC
//! generalization bounds.
//!
//! The crate evaluates transductive bounds (shadow-sample error `r2` in terms
//! of the training error `r1`) and inductive bounds (expected risk `R`) for a
//! training set of `N` points and a shadow sample of `k N` points, searches
//! their free parameters, and checks their coverage by simulation on small
//! enumerable hypothesis classes.
//!
//! ```
//! use vc_bounds::bounds::{transductive_improved, BoundInput};
//!
//! let input = BoundInput::vc(1000, 10, 0.01, 0.2, 16);
//! let res = transductive_improved(&input).unwrap();
//! assert!(res.valid && res.value < 0.421);
//! ```

pub mod bounds;
pub mod cli;
pub mod complexity;
pub mod error;
pub mod montecarlo;
pub mod optimizer;
pub mod special;

pub use bounds::{Alpha, BoundInput, BoundKind, BoundResult, DBar, Level, Theorem};
pub use complexity::ComplexitySpec;
pub use error::BoundError;
