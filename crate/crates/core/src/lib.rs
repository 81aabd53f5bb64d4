//! Orlik-Solomon algebras of line arrangements over prime fields.
//!
//! The crate goes from integer coordinates of projective lines in CP² to
//! the intersection lattice, the deconed affine arrangement, the
//! Orlik-Solomon algebra in degrees 0..=2 (Brieskorn basis in degree 2), the
//! Aomoto complex `(A•, ξ∧)` and its first cohomology rank, the total and
//! directional degeneration homomorphisms, and finally a per-order report
//! of which nontrivial monodromy eigenspaces of the Milnor fiber vanish.
//!
//! ```
//! use milnor_core::{catalog, report::report};
//!
//! let a3 = catalog::braid_a3();
//! let rep = report(&a3).unwrap();
//! assert_eq!(rep.degree, 6);
//! let p3 = rep.primes.iter().find(|r| r.prime == 3).unwrap();
//! assert_eq!(p3.beta1, 1);
//! ```

pub mod aomoto;
pub mod arrangement;
pub mod catalog;
pub mod degeneration;
mod error;
pub mod io;
pub mod linalg;
pub mod os_algebra;
pub mod par;
pub mod report;

pub use error::{Error, Result};
