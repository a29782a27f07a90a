//! Exact arithmetic substrate.

pub mod gaussian;
pub mod linalg;
pub mod poly;
pub mod rational;
pub mod ring;
pub mod roots;
pub mod sparse;

pub use gaussian::{GaussianRational, GQ};
pub use linalg::Field;
pub use poly::{CstPoly, Poly, QPoly, Var};
pub use rational::{fmt_rational, int, parse_rational, rat, Rational};
pub use ring::{GaussianAlgebra, Ring};
pub use roots::{discriminant, rational_roots};
pub use sparse::SparseMat;
