//! Operator-valued norms on finite-dimensional spaces.
//!
//! The crate builds maps `F : X → L(H)` and `F : X → L(C(K))` whose values
//! are positive operators, together with sample-based checkers for their
//! defining axioms and for the inequalities they satisfy. Everything is
//! realized at finite scale: `H = ℂ^d`, `K` a finite point set, operators as
//! dense complex matrices.

pub mod analysis;
pub mod ck;
pub mod embed;
pub mod error;
pub mod gelfand;
pub mod hilbert;
pub mod matrix;
pub mod numkernel;
pub mod ovnorm;
pub mod random;
pub mod report;
pub mod space;

pub use ck::{CKValuedNorm, FiniteCK};
pub use embed::DualBallDiscretization;
pub use error::{Error, Result};
pub use gelfand::CommutativeStarAlgebra;
pub use hilbert::LHValuedNorm;
pub use matrix::{CVector, Operator, C64};
pub use ovnorm::{boundedness_estimate, AxiomConfig, Codomain, OperatorValuedNorm};
pub use report::{AxiomReport, CheckReport, Status, Witness};
pub use space::{NormedSpaceModel, ScalarField};
