//! Exact toolkit for proper polyhedral cones: double description, duality,
//! extreme rays, Lyapunov rank, direct-sum decomposition, and checks of the
//! classification of permutation invariant polyhedral cones.

pub mod catalog;
pub mod cone;
pub mod decompose;
mod error;
pub mod exact;
pub mod io;
pub mod jordan;
pub mod lyapunov;
pub mod symmetry;
pub mod verify;

pub use cone::{double_description, Cone, Frame, RayList};
pub use decompose::{decompose, is_irreducible, recognize_orthant_form, Decomposition, OrthantForm};
pub use error::{Error, Result};
pub use exact::{Rat, RatMat, RatVec};
pub use lyapunov::{ll_basis, lyapunov_rank, CompPair, LyapunovBasis};
pub use symmetry::{is_permutation_invariant, orbit_cone, OnesAxis, Perm};
pub use verify::{classify, verify_theorems, Classification, SuiteConfig, Verdict, VerdictTable};
