//! Exact operator calculus over Clifford-valued polynomials.
//!
//! The crate is layered: [`clifford`] (multivectors), [`poly`] (Clifford
//! polynomials and Gaussian-weighted functions), [`ops`] (operator AST and its
//! action), [`dsl`] (text syntax), [`verify`] (identity checking),
//! [`fock`] (Hermite systems, Fischer decomposition) and [`maxwell`]
//! (series solutions and the Landau operator).

pub mod clifford;
pub mod dsl;
pub mod error;
pub mod fock;
pub mod maxwell;
pub mod ops;
pub mod poly;
pub mod scalar;
pub mod verify;

pub use clifford::{Blade, Involution, Multivector, Signature};
pub use dsl::{parse, ParseError};
pub use error::{Error, Result};
pub use ops::{Atom, Expr};
pub use poly::{MultiIndex, Polynomial, Side, Term, WeightedFunction};
pub use scalar::{Coefficient, Rational, Symbolic};
