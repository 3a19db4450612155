//! Exact arithmetic in crossed products `A ⋆ U(𝔤)` of polynomial-type
//! domains with enveloping algebras, and certified constructions of stably
//! free, non-free right ideals in them.
//!
//! The entry point is [`pbw::Algebra`], built from a preset name or a
//! presentation file. See the `examples/` directory for one program per
//! capability.

pub mod certificate;
pub mod cli;
pub mod coefficients;
pub mod error;
pub mod expr;
pub mod linalg;
pub mod pbw;
pub mod properties;
pub mod semigroup;
pub mod stably_free;

use serde::Serialize;

pub use coefficients::{BaseRing, CommPoly, Degree, DerivationSpec, QuotientPresentation, Rational};
pub use error::{Error, ParseError, Result};
pub use pbw::{Algebra, AlgebraPresentation, CrossedElement};
pub use semigroup::{ExpTuple, OrderRule};

/// Three-valued outcome of a bounded check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}
