//! Exact arithmetic for real quadratic function fields `K = F_q(T)(√D)`.
//!
//! The pipeline runs bottom-up through the modules:
//!
//! - [`ff`]: finite fields of odd characteristic,
//! - [`poly`]: the ring `F_q[T]` with factorization,
//! - [`laurent`]: truncated Laurent series in `1/T`, giving `√D`,
//! - [`contfrac`]: the periodic continued fraction of `√D`, fundamental unit, regulator,
//! - [`pell`]: solutions of `X² − DY² = C` and the order-`n` subgroup criterion,
//! - [`families`]: the eight discriminant series with explicit witnesses,
//! - [`classnum`]: class numbers via point counting on `y² = D(x)`,
//! - [`expr`] and [`sweep`]: input parsing and the reproducible sweep harness.

pub mod classnum;
pub mod contfrac;
pub mod error;
pub mod expr;
pub mod families;
pub mod ff;
pub mod laurent;
pub mod limits;
pub mod pell;
pub mod poly;
pub mod sweep;

pub use error::{Error, ErrorKind, Result};
pub use ff::{ff_build, Field, FieldElement, FieldSpec};
pub use poly::{Factorization, Poly};
