//! Brownian and 3-Brownian shift operators on truncated Hardy spaces.
//!
//! The crate models the Hilbert space H²(𝔻²) ⊕ H²(𝔻) ⊕ ℂ at a fixed
//! rectangular truncation and provides:
//!
//! - the Brownian shift B_{σ,θ} on H²(𝔻) ⊕ ℂ and the 3-Brownian shift
//!   T_{σ,θ} on the full space, with adjoints, powers and normalizations;
//! - finite Blaschke products, numerical model spaces K_φ, and the
//!   g-function generating the extra line of a Type II subspace;
//! - constructors and validators for lifted Type I/II invariant
//!   subspaces, including wandering-dimension extraction;
//! - the equivalence decision procedure for restrictions of 3-Brownian
//!   shifts to lifted subspaces, with explicit intertwining unitaries and
//!   a bounded least-squares search certifying negatives;
//! - operator-power asymptotics: power-unboundedness certificates, C₀₀
//!   decay curves of the normalized shift, and the non-cyclicity
//!   experiment for the scalar direction.
//!
//! All vectors are immutable after construction and safe to share across
//! threads. Operations that could push coefficient mass past a truncation
//! bound report overflow instead of silently dropping it.

pub mod asymptotics;
pub mod blaschke;
pub mod equivalence;
pub mod error;
pub mod gfunction;
pub mod gram;
pub mod hardy;
pub mod model_space;
pub mod operators;
pub mod sampling;
pub mod subspace;
pub mod trunc;

pub(crate) mod linalg;

pub use blaschke::BlaschkeProduct;
pub use error::{Error, Result};
pub use gfunction::{check_g, g_function, GCheckReport, GFunction};
pub use hardy::{HardyVec1, HardyVec2, StateVec};
pub use model_space::{model_space_basis, ModelSpaceBasis};
pub use operators::BrownianParams;
pub use subspace::{LiftedSubspaceSpec, SubspaceBasis, SubspaceKind, SummandTag};
pub use trunc::Truncation;
