//! Exact symbolic engine for the deformed Heisenberg-Virasoro algebra.
//!
//! * [`algebra`]: the Lie algebra, its bracket and window-bounded axiom, center and
//!   Witt-quotient checks.
//! * [`lq_module`]: finite-dimensional modules over the subalgebras `L_q`.
//! * [`induced`], [`reduction`], [`probe`]: the induced modules `Ind_q(V)`, PBW
//!   straightening, degree reduction and the bounded-weight probes built on them.
//! * [`witt`]: Witt-algebra anti-automorphisms, the `ad L_0` spectrum and the
//!   triangular-decomposition obstruction.
//! * [`cli`]: the `hvir` command-line front end.
//!
//! All arithmetic is exact over the rationals.

pub mod algebra;
pub mod cli;
pub mod format;
pub mod induced;
pub mod linalg;
pub mod lq_module;
pub mod multi_index;
pub mod parallel;
pub mod probe;
pub mod reduction;
pub mod scalar;
pub mod witt;

pub use algebra::{bracket, bracket_basis, Generator, LieElement};
pub use induced::{BasisKey, IndVector, InducedModule};
pub use lq_module::{make_onedim, validate_lq_module, LqModuleSpec, VVector};
pub use multi_index::MultiIndex;
pub use parallel::Exec;
pub use scalar::Scalar;
pub use witt::{AntiMap, WittElement};
