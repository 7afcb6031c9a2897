//! Exact computations with polynomial vector fields of zero and constant
//! divergence: brackets, truncated bases, closures, tame automorphisms and
//! verification suites for the structure of these Lie algebras.
//!
//! Variable and direction indices are zero-based throughout the API; the
//! text form names them `x1`, `d1`, `H1`, ….

pub mod autos;
pub mod closure;
pub mod error;
pub mod identities;
pub mod linspan;
pub mod poly;
pub mod random;
pub mod vecfield;
pub mod verify;

pub use autos::{Automorphism, ElementaryMap, JacobianMatrix};
pub use closure::{ClosureResult, OrbitResult};
pub use error::{Error, Result};
pub use linspan::{enumerate_basis, Algebra, BasisSpec, SpanSpace};
pub use poly::{Degree, Monomial, Polynomial, Rational};
pub use vecfield::{Derivation, DivClass, WeightClass};
pub use verify::{verify_theorem, Report, Theorem, VerifyOptions};
