//! Exact free-field realizations of the Virasoro, Neveu–Schwarz and N=2
//! superconformal algebras, together with abstract Gram matrices and minimal
//! W-algebra structure data.
//!
//! All computation is over ℚ(i); nothing is truncated inside operator application.

pub mod bounds;
pub mod error;
pub mod fock;
pub mod linalg;
pub mod oscillators;
pub mod realizations;
pub mod report;
pub mod scalar;
pub mod superalg;
pub mod verify;
pub mod walgebra;

pub use error::{Error, Result};
pub use fock::{enumerate_basis, inner_product, state_norm_sq, FieldContent, FockState, FockVector};
pub use oscillators::{
    bilinear_mode, boson_mode, circle_derivative_mode, fermion_mode, tail_sum, BilinearSpec, FieldRef, ModeOperator,
};
pub use scalar::{GaussianRational, HalfInt, Parity, Rational};
