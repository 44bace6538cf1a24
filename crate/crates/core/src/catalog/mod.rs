//! Built-in catalog: charts, forms, fields, and coordinate maps for the
//! flat model, the Hilbert-Cartan model, the complex rolling models, their
//! Monge presentations, and the angular parametrisation.

pub mod flat;
pub mod hc;
pub mod monge;
pub mod real_param;
pub mod rolling;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::constant::ConstMode;
use crate::error::Error;
use crate::num::{rat, NumElem};

/// The parameter modes a check can run in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum RunMode {
    Generic,
    /// alpha^2 = -1/9
    SquaredNinth,
    /// alpha^2 = -9
    SquaredNine,
    /// alpha = i/3
    LitI3Pos,
    /// alpha = -i/3
    LitI3Neg,
    /// alpha = 3i
    Lit3IPos,
    /// alpha = -3i
    Lit3INeg,
}

impl RunMode {
    pub fn const_mode(&self) -> Arc<ConstMode> {
        match self {
            RunMode::Generic => ConstMode::generic(),
            RunMode::SquaredNinth => ConstMode::specialized(rat(-1, 9)),
            RunMode::SquaredNine => ConstMode::specialized(rat(-9, 1)),
            RunMode::LitI3Pos => ConstMode::literal(NumElem::i().scale(&rat(1, 3))),
            RunMode::LitI3Neg => ConstMode::literal(NumElem::i().scale(&rat(-1, 3))),
            RunMode::Lit3IPos => ConstMode::literal(NumElem::i().scale(&rat(3, 1))),
            RunMode::Lit3INeg => ConstMode::literal(NumElem::i().scale(&rat(-3, 1))),
        }
    }

    /// Upper-sign variant? (for the literal modes)
    pub fn plus(&self) -> bool {
        matches!(self, RunMode::LitI3Pos | RunMode::Lit3IPos)
    }

    pub fn all() -> [RunMode; 7] {
        [
            RunMode::Generic,
            RunMode::SquaredNinth,
            RunMode::SquaredNine,
            RunMode::LitI3Pos,
            RunMode::LitI3Neg,
            RunMode::Lit3IPos,
            RunMode::Lit3INeg,
        ]
    }
}

impl fmt::Display for RunMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RunMode::Generic => "generic",
            RunMode::SquaredNinth => "alpha2=-1/9",
            RunMode::SquaredNine => "alpha2=-9",
            RunMode::LitI3Pos => "alpha=+i/3",
            RunMode::LitI3Neg => "alpha=-i/3",
            RunMode::Lit3IPos => "alpha=+3i",
            RunMode::Lit3INeg => "alpha=-3i",
        };
        write!(f, "{}", s)
    }
}

impl FromStr for RunMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "generic" => Ok(RunMode::Generic),
            "alpha2=-1/9" => Ok(RunMode::SquaredNinth),
            "alpha2=-9" => Ok(RunMode::SquaredNine),
            "alpha=+i/3" | "alpha=i/3" => Ok(RunMode::LitI3Pos),
            "alpha=-i/3" => Ok(RunMode::LitI3Neg),
            "alpha=+3i" | "alpha=3i" => Ok(RunMode::Lit3IPos),
            "alpha=-3i" => Ok(RunMode::Lit3INeg),
            other => Err(Error::ModeMismatch {
                check: "-".into(),
                mode: other.into(),
            }),
        }
    }
}
