//! Exact arithmetic in non-associative skew polynomial rings.
//!
//! Coefficient rings are finite-dimensional algebras over ℚ given by
//! structure constants, matrix rings over them, and polynomial rings built
//! by this crate. On top sit skew polynomial, Laurent polynomial and
//! truncated series rings, the `π` family of an Ore extension, and the
//! algorithms in [`structure`].
#![allow(clippy::should_implement_trait)]

pub mod config;
pub mod error;
pub mod linalg;
pub mod maps;
pub mod poly;
pub mod rational;
pub mod rings;
pub mod sample;
pub mod series;
pub mod structure;
pub mod text;
pub mod verify;

pub use config::{CliConfig, Loaded, RingDescriptor};
pub use error::{Error, Result};
pub use maps::{LinearMap, MapTag, PiFamily, TwistDescriptor, TwistMap};
pub use poly::{RingConfig, Shape, SkewPoly};
pub use rational::Rational;
pub use rings::{Ring, RingElement};
pub use series::TruncatedSeries;
pub use text::Expr;
pub use verify::{run_suite, SuiteReport};
