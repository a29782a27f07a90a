//! Exact symbolic verification of the Lie-algebraic, motivic and
//! tautological identities behind Fourier-conjugate sl2-triples on
//! compactified Jacobian fibrations.

pub mod check;
pub mod error;
pub mod exact;
pub mod dsl;
pub mod jacobian;
pub mod k3;
pub mod llv;
pub mod mukai;

pub use error::{Error, Result};
pub use exact::{CstPoly, GaussianRational, Poly, QPoly, Rational, SparseMat, Var, GQ};
