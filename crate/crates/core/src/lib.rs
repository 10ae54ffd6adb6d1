//! Ron Graham's sequence `g(n)` and its derived family, computed with
//! exponent-vector linear algebra over GF(2).
//!
//! ```
//! use graham_core::{graham, SpfSieve};
//!
//! let sieve = SpfSieve::for_range(100).unwrap();
//! let r = graham::compute_g(8, &sieve).unwrap();
//! assert_eq!(r.g, 15);
//! assert_eq!(r.particular.terms(), &[8, 10, 12, 15]);
//! ```

pub mod bits;
pub mod error;
pub mod gf2;
pub mod graham;
pub mod oracle;
pub mod parallel;
pub mod sieve;

pub use error::{Error, Result};
pub use gf2::Gf2Eliminator;
pub use graham::{CorrespondingSequence, GrahamResult, SequenceCount};
pub use sieve::{ExponentVector, SpfSieve};
