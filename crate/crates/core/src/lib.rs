//! Exact arithmetic over GF(3^m) and GF(3^2m), BCH codes of length `q + 1`,
//! their weight distributions, and two independent near-MDS certifiers.
//!
//! ```
//! use nmds::codes::{bch_build, BchSpec};
//!
//! let code = bch_build(&BchSpec::amds(27)).unwrap();
//! assert_eq!((code.n(), code.k()), (28, 24));
//! ```

pub mod analysis;
pub mod cli;
pub mod codes;
pub mod error;
pub mod gf;
pub mod linalg;
pub mod nmds;
pub mod pipeline;
pub mod poly;

pub use error::{Error, Result};
