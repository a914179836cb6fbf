//! Exact construction and certification of birational maps between
//! hypersurfaces over the rationals and prime fields.
//!
//! The crate is organised bottom-up:
//!
//! - [`field`] and [`poly`]: coefficient fields and sparse multivariate
//!   polynomials (arithmetic, division, gcd, parsing).
//! - [`geom`]: hypersurfaces, points and linear subspaces.
//! - [`ratmap`]: rational functions and maps, composition, restriction and
//!   the birationality verifier.
//! - [`constructions`]: generators for concrete birational maps, each
//!   returning certified output.
//! - [`invariants`]: degree-based classification, volume forms and the
//!   cube criterion for diagonal cubic surfaces.
//! - [`cli`]: fixture formats, reports and the rational point enumerator
//!   behind the `birat` binary.
//!
//! ```
//! use birat::constructions::sphere_stereographic;
//! use birat::field::FieldSpec;
//!
//! let q = FieldSpec::Q;
//! let s = sphere_stereographic(2, &[q.one(), q.one()], q).unwrap();
//! let report = birat::ratmap::verify_birational(
//!     &s.forward, &s.inverse, &s.source, &s.target,
//! ).unwrap();
//! assert!(report.certified());
//! ```

pub mod cli;
pub mod constructions;
pub mod error;
pub mod field;
pub mod geom;
pub mod invariants;
pub mod linalg;
pub mod poly;
pub mod ratmap;

pub use error::{Error, Result};
pub use field::{FieldSpec, Scalar};
pub use poly::{Monomial, Polynomial};
