//! Constant terms of Eisenstein series on affine Kac-Moody groups over
//! function fields.
//!
//! Everything symbolic is exact: characters are rational, zeta values and
//! c-functions live in `Q(q)`, and fractional powers of `q` are tracked by
//! [`qfield::ScaledValue`]. Floating point appears only in the numeric
//! convergence bounds of [`cterm::theta`] and the Euler-product comparisons.

pub mod affine_weyl;
pub mod cterm;
pub mod error;
mod linalg;
pub mod local_oracle;
pub mod qfield;
pub mod root_data;
pub mod verify;
pub mod zeta;

pub use affine_weyl::{Decomposition, WeylElement, Word};
pub use cterm::{AutomorphismData, Character, Place, TorusData};
pub use error::{Error, Result};
pub use qfield::{Numeric, Poly, RatFunc, Rational, ScaledValue};
pub use root_data::{AffineDatum, AffineRoot, CartanDatum, CartanType, CorootVector, Functional};
pub use zeta::{LPolynomial, ZetaFunction};
