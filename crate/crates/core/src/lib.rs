//! Numerical range of elementary operators on matrix algebras.
//!
//! For `R_{a,b}(x) = sum_i a_i x b_i` on `M_n(C)` the crate computes the
//! numerical range `V(R_{a,b}, B(M_n))` two ways:
//!
//! * the Banach-algebra side, from norms `||R + s e^{i theta} Id|| - s` along
//!   rays (the disk-intersection characterization of the numerical range),
//!   with each norm reduced to a maximum over unitaries;
//! * the orbit side, the closed union of the fields of values of
//!   `sum_i u^* a_i u b_i` over `u in U(n)`.
//!
//! Both are stored as [`region::SupportRegion`]s so they can be compared in
//! Hausdorff distance. See [`verify`] for the end-to-end checks.

pub mod error;
pub mod linalg;
pub mod region;
pub mod fov;
pub mod optim;
pub mod elemop;
pub mod orbit;
pub mod verify;
pub mod cli;

pub use error::{Error, Result};
