//! Order-p subgroups of the pure mapping class group `N_g^k` of a
//! non-orientable surface with `k` marked points.
//!
//! The crate answers, for an odd prime `p`:
//!
//! - whether `N_g^k` has p-torsion ([`riemann_hurwitz`]);
//! - how many conjugacy classes of order-p subgroups there are, via surface
//!   kernels on NEC groups ([`surface_kernels`], [`nec_presentations`]) and
//!   congruence classes of t-tuples ([`tuple_classes`]);
//! - which slides of the twice-marked projective plane lift through the
//!   genus-p covering ([`liftability`]);
//! - the p-primary Farrell cohomology of `N_p^k` ([`cohomology`]).
//!
//! [`cli`] wraps these as commands with text, JSON and CSV output.

pub mod cli;
pub mod cohomology;
pub mod error;
pub mod liftability;
pub mod modular;
pub mod nec_presentations;
pub mod riemann_hurwitz;
pub mod surface_kernels;
pub mod tuple_classes;

pub use error::{Error, Result};
pub use modular::{Fp, Prime};
