// `!(a <= b)` is used on purpose so that NaN fails the comparison.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebras;
pub mod calculus;
pub mod check;
pub mod densemat;
pub mod error;
pub mod expect;
pub mod harness;
pub mod interp;
pub mod jordan;
pub mod lp;
pub mod sampling;

pub use densemat::{CMatrix, C64};
pub use error::{Error, Result};
pub use jordan::{JordanAlgebra, JordanElement, StateFunctional};
