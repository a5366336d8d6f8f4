//! t-norms, t-conorms and negations on the unit interval.
//!
//! The three enumerations are closed: every kind has a closed-form
//! evaluation and a config name used by partition documents and the CLI.
//! A [`ConnectiveTriple`] bundles a strong negation with a t-norm and a
//! t-conorm that are dual to each other under it.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{check_degree, Error, Result};

/// Largest `|S(x, y) - N(T(N(x), N(y)))|` accepted as dual.
pub const DUALITY_TOLERANCE: f64 = 1e-12;

/// Grid step used when a triple is checked at construction.
pub const DEFAULT_DUALITY_STEP: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum TNorm {
    Minimum,
    Product,
    Lukasiewicz,
    Drastic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum TConorm {
    Maximum,
    ProbabilisticSum,
    BoundedSum,
    Drastic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Negation {
    /// `1 - x`
    Standard,
    /// `1 - x²`
    StrictSquare,
    /// 1 at 0, 0 elsewhere.
    Goedel,
}

/// Position of a negation in the negation ⊃ strict ⊃ strong hierarchy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum NegationClass {
    Negation,
    Strict,
    Strong,
}

impl TNorm {
    pub const ALL: [TNorm; 4] = [TNorm::Minimum, TNorm::Product, TNorm::Lukasiewicz, TNorm::Drastic];

    pub fn name(self) -> &'static str {
        match self {
            TNorm::Minimum => "min",
            TNorm::Product => "product",
            TNorm::Lukasiewicz => "lukasiewicz",
            TNorm::Drastic => "drastic",
        }
    }

    pub fn apply(self, x: f64, y: f64) -> Result<f64> {
        check_degree("t-norm argument", x)?;
        check_degree("t-norm argument", y)?;
        Ok(self.eval(x, y))
    }

    /// Evaluates without range checks. Arguments must already be degrees.
    pub fn eval(self, x: f64, y: f64) -> f64 {
        match self {
            TNorm::Minimum => x.min(y),
            TNorm::Product => x * y,
            TNorm::Lukasiewicz => {
                // a - (1 - b) keeps T(a, 1) = a exact and is symmetric by ordering.
                let (a, b) = if x <= y { (x, y) } else { (y, x) };
                (a - (1.0 - b)).max(0.0)
            }
            TNorm::Drastic => {
                if x == 1.0 || y == 1.0 {
                    x.min(y)
                } else {
                    0.0
                }
            }
        }
    }

    /// Left fold in argument order; the empty fold is 1.
    pub fn fold<I: IntoIterator<Item = f64>>(self, degrees: I) -> f64 {
        degrees.into_iter().fold(1.0, |acc, d| self.eval(acc, d))
    }

    /// Pointwise application keeps piecewise-linear functions piecewise linear.
    pub fn preserves_pl(self) -> bool {
        matches!(self, TNorm::Minimum | TNorm::Lukasiewicz)
    }
}

impl TConorm {
    pub const ALL: [TConorm; 4] = [
        TConorm::Maximum,
        TConorm::ProbabilisticSum,
        TConorm::BoundedSum,
        TConorm::Drastic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TConorm::Maximum => "max",
            TConorm::ProbabilisticSum => "probsum",
            TConorm::BoundedSum => "boundedsum",
            TConorm::Drastic => "drastic",
        }
    }

    pub fn apply(self, x: f64, y: f64) -> Result<f64> {
        check_degree("t-conorm argument", x)?;
        check_degree("t-conorm argument", y)?;
        Ok(self.eval(x, y))
    }

    pub fn eval(self, x: f64, y: f64) -> f64 {
        match self {
            TConorm::Maximum => x.max(y),
            TConorm::ProbabilisticSum => {
                // larger argument first keeps S(x, 0) = x and S(x, 1) = 1 exact
                let (a, b) = if x >= y { (x, y) } else { (y, x) };
                a + b * (1.0 - a)
            }
            TConorm::BoundedSum => (x + y).min(1.0),
            TConorm::Drastic => {
                if x == 0.0 || y == 0.0 {
                    x.max(y)
                } else {
                    1.0
                }
            }
        }
    }

    /// Left fold in argument order; the empty fold is 0.
    pub fn fold<I: IntoIterator<Item = f64>>(self, degrees: I) -> f64 {
        degrees.into_iter().fold(0.0, |acc, d| self.eval(acc, d))
    }

    pub fn preserves_pl(self) -> bool {
        matches!(self, TConorm::Maximum | TConorm::BoundedSum)
    }
}

impl Negation {
    pub const ALL: [Negation; 3] = [Negation::Standard, Negation::StrictSquare, Negation::Goedel];

    pub fn name(self) -> &'static str {
        match self {
            Negation::Standard => "standard",
            Negation::StrictSquare => "square",
            Negation::Goedel => "goedel",
        }
    }

    pub fn class(self) -> NegationClass {
        match self {
            Negation::Standard => NegationClass::Strong,
            Negation::StrictSquare => NegationClass::Strict,
            Negation::Goedel => NegationClass::Negation,
        }
    }

    pub fn is_strong(self) -> bool {
        self.class() == NegationClass::Strong
    }

    pub fn apply(self, x: f64) -> Result<f64> {
        check_degree("negation argument", x)?;
        Ok(self.eval(x))
    }

    pub fn eval(self, x: f64) -> f64 {
        match self {
            Negation::Standard => 1.0 - x,
            Negation::StrictSquare => 1.0 - x * x,
            Negation::Goedel => {
                if x == 0.0 {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }
}

macro_rules! named_kind {
    ($ty:ty, $what:literal) => {
        impl FromStr for $ty {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                let s = s.trim();
                <$ty>::ALL
                    .into_iter()
                    .find(|k| k.name().eq_ignore_ascii_case(s))
                    .ok_or_else(|| {
                        let names: Vec<_> = <$ty>::ALL.iter().map(|k| k.name()).collect();
                        Error::Unsupported(format!(
                            "unknown {} `{}` (expected one of {})",
                            $what,
                            s,
                            names.join(", ")
                        ))
                    })
            }
        }

        impl TryFrom<String> for $ty {
            type Error = Error;

            fn try_from(s: String) -> Result<Self> {
                s.parse()
            }
        }

        impl From<$ty> for String {
            fn from(k: $ty) -> String {
                k.name().to_string()
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.name())
            }
        }
    };
}

named_kind!(TNorm, "t-norm");
named_kind!(TConorm, "t-conorm");
named_kind!(Negation, "negation");

/// Outcome of a grid duality check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualityCheck {
    pub dual: bool,
    /// Worst `|S(x, y) - N(T(N(x), N(y)))|` over the grid.
    pub residual: f64,
    /// Grid point where the worst residual occurs (first in scan order).
    pub witness: (f64, f64),
    /// Grid spacing actually used.
    pub step: f64,
}

/// Checks `S(x, y) = N(T(N(x), N(y)))` on a square grid over `[0, 1]²`.
///
/// The grid spacing is the largest power of two not exceeding `grid_step`,
/// so every grid point and its standard negation are exact binary fractions.
pub fn check_duality(
    negation: Negation,
    tnorm: TNorm,
    tconorm: TConorm,
    grid_step: f64,
) -> Result<DualityCheck> {
    if !negation.is_strong() {
        return Err(Error::NotStrong(negation.name()));
    }
    if !(grid_step > 0.0 && grid_step <= 1.0) {
        return Err(Error::Domain {
            what: "grid step range (0, 1]".into(),
            value: grid_step,
        });
    }
    let cells = (1.0 / grid_step).ceil().min((1u64 << 20) as f64) as u64;
    let cells = cells.next_power_of_two();
    let step = 1.0 / cells as f64;

    let mut worst = DualityCheck {
        dual: true,
        residual: 0.0,
        witness: (0.0, 0.0),
        step,
    };
    for i in 0..=cells {
        let x = i as f64 * step;
        for j in 0..=cells {
            let y = j as f64 * step;
            let direct = tconorm.eval(x, y);
            let via_dual = negation.eval(tnorm.eval(negation.eval(x), negation.eval(y)));
            let r = (direct - via_dual).abs();
            if r > worst.residual {
                worst.residual = r;
                worst.witness = (x, y);
            }
        }
    }
    worst.dual = worst.residual <= DUALITY_TOLERANCE;
    Ok(worst)
}

/// The basic t-conorm dual to `tnorm` under the standard negation.
pub fn dual_of(tnorm: TNorm, negation: Negation) -> Result<TConorm> {
    if negation != Negation::Standard {
        return Err(Error::Unsupported(format!(
            "dual pairing is only tabulated for the standard negation, not `{}`",
            negation.name()
        )));
    }
    Ok(match tnorm {
        TNorm::Minimum => TConorm::Maximum,
        TNorm::Product => TConorm::ProbabilisticSum,
        TNorm::Lukasiewicz => TConorm::BoundedSum,
        TNorm::Drastic => TConorm::Drastic,
    })
}

/// A strong negation with a t-norm and t-conorm that are dual under it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ConnectiveTriple {
    negation: Negation,
    tnorm: TNorm,
    tconorm: TConorm,
}

impl ConnectiveTriple {
    pub fn new(negation: Negation, tnorm: TNorm, tconorm: TConorm) -> Result<Self> {
        let check = check_duality(negation, tnorm, tconorm, DEFAULT_DUALITY_STEP)?;
        if !check.dual {
            return Err(Error::NotDual {
                negation: negation.name(),
                tnorm: tnorm.name(),
                tconorm: tconorm.name(),
                residual: check.residual,
                x: check.witness.0,
                y: check.witness.1,
            });
        }
        Ok(ConnectiveTriple {
            negation,
            tnorm,
            tconorm,
        })
    }

    /// Standard negation with the dual pair built on `tnorm`.
    pub fn standard(tnorm: TNorm) -> Self {
        let tconorm = dual_of(tnorm, Negation::Standard).expect("standard negation is tabulated");
        ConnectiveTriple {
            negation: Negation::Standard,
            tnorm,
            tconorm,
        }
    }

    pub fn negation(&self) -> Negation {
        self.negation
    }

    pub fn tnorm(&self) -> TNorm {
        self.tnorm
    }

    pub fn tconorm(&self) -> TConorm {
        self.tconorm
    }

    /// Every connective keeps piecewise-linear membership functions piecewise linear.
    pub fn preserves_pl(&self) -> bool {
        self.negation == Negation::Standard && self.tnorm.preserves_pl() && self.tconorm.preserves_pl()
    }
}

impl Default for ConnectiveTriple {
    fn default() -> Self {
        ConnectiveTriple::standard(TNorm::Minimum)
    }
}

impl fmt::Display for ConnectiveTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.negation, self.tnorm, self.tconorm)
    }
}

/// Parses `negation,tnorm,tconorm`.
impl FromStr for ConnectiveTriple {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        let [n, t, c] = parts.as_slice() else {
            return Err(Error::Unsupported(format!(
                "triple `{s}` must have the form negation,tnorm,tconorm"
            )));
        };
        ConnectiveTriple::new(n.parse()?, t.parse()?, c.parse()?)
    }
}

#[derive(Deserialize)]
struct TripleFields {
    negation: Negation,
    tnorm: TNorm,
    tconorm: TConorm,
}

impl<'de> Deserialize<'de> for ConnectiveTriple {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let f = TripleFields::deserialize(d)?;
        ConnectiveTriple::new(f.negation, f.tnorm, f.tconorm).map_err(serde::de::Error::custom)
    }
}
