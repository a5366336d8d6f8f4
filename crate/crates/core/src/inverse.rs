//! Recovering objects from membership degrees.
//!
//! Given target degrees for some blocks of a partition, the answer is the
//! intersection of the blocks' level sets: a finite union of points and
//! closed intervals, possibly empty.

use std::str::FromStr;

use indexmap::IndexMap;
use serde::Serialize;

use crate::error::{check_degree, Error, Result};
use crate::partition::VaguePartition;
use crate::plfunc::{Component, LevelSet};

/// Widths up to this many ulps are reported as single points.
const SLIVER_ULPS: u32 = 4;

#[derive(Debug, Clone, PartialEq)]
pub struct TargetVector {
    targets: IndexMap<String, f64>,
    tolerance: f64,
}

impl TargetVector {
    pub fn new<I, S>(targets: I, tolerance: f64) -> Result<Self>
    where
        I: IntoIterator<Item = (S, f64)>,
        S: Into<String>,
    {
        if !(tolerance >= 0.0 && tolerance.is_finite()) {
            return Err(Error::InvalidTarget(format!("tolerance {tolerance} must be finite and >= 0")));
        }
        let mut map = IndexMap::new();
        for (name, t) in targets {
            let name = name.into();
            check_degree(&format!("target for `{name}`"), t)
                .map_err(|_| Error::InvalidTarget(format!("`{name}` = {t} is outside [0, 1]")))?;
            if map.insert(name.clone(), t).is_some() {
                return Err(Error::InvalidTarget(format!("`{name}` given twice")));
            }
        }
        if map.is_empty() {
            return Err(Error::InvalidTarget("at least one target is required".into()));
        }
        Ok(TargetVector { targets: map, tolerance })
    }

    /// Parses `name=value` pairs.
    pub fn parse_pairs<'a, I>(pairs: I, tolerance: f64) -> Result<Self>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let parsed = pairs
            .into_iter()
            .map(|s| s.parse::<TargetPair>().map(|p| (p.name, p.degree)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(parsed, tolerance)
    }

    pub fn targets(&self) -> impl Iterator<Item = (&str, f64)> {
        self.targets.iter().map(|(k, &v)| (k.as_str(), v))
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// Copy with one more target.
    pub fn with(&self, name: &str, degree: f64) -> Result<Self> {
        let mut pairs: Vec<(String, f64)> = self.targets.iter().map(|(k, &v)| (k.clone(), v)).collect();
        pairs.push((name.to_string(), degree));
        Self::new(pairs, self.tolerance)
    }
}

/// One `name=value` argument.
#[derive(Debug, Clone, PartialEq)]
pub struct TargetPair {
    pub name: String,
    pub degree: f64,
}

impl FromStr for TargetPair {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, value) = s
            .split_once('=')
            .ok_or_else(|| Error::InvalidTarget(format!("`{s}` is not of the form name=value")))?;
        let name = name.trim();
        if name.is_empty() {
            return Err(Error::InvalidTarget(format!("`{s}` has an empty name")));
        }
        let degree: f64 = value
            .trim()
            .parse()
            .map_err(|_| Error::InvalidTarget(format!("`{value}` is not a number")))?;
        Ok(TargetPair {
            name: name.to_string(),
            degree,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlockDiagnostic {
    pub name: String,
    pub target: f64,
    /// Range of the block's membership function.
    pub range: (f64, f64),
    /// How far the target lies outside that range (0 when inside).
    pub gap: f64,
    /// Points where this block alone meets its target.
    pub solutions: LevelSet,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Inversion {
    pub solutions: LevelSet,
    pub per_block: Vec<BlockDiagnostic>,
}

impl Inversion {
    /// Blocks whose own constraint already has no solution.
    pub fn infeasible_blocks(&self) -> impl Iterator<Item = &BlockDiagnostic> {
        self.per_block.iter().filter(|b| b.solutions.is_empty())
    }
}

/// Objects whose degrees match every target within the vector's tolerance.
pub fn invert(p: &VaguePartition, targets: &TargetVector) -> Result<Inversion> {
    solve(p, targets, targets.tolerance)
}

/// Objects whose degrees lie within `tol` of every target.
pub fn invert_approx(p: &VaguePartition, targets: &TargetVector, tol: f64) -> Result<Inversion> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidTarget(format!("tolerance {tol} must be positive")));
    }
    solve(p, targets, tol)
}

fn solve(p: &VaguePartition, targets: &TargetVector, tol: f64) -> Result<Inversion> {
    let d = p.domain();
    let mut acc = LevelSet::from_sorted(vec![Component { lo: d.lo(), hi: d.hi() }]);
    let mut per_block = Vec::with_capacity(targets.targets.len());
    let mut ends = Vec::new();
    for (name, &t) in &targets.targets {
        let f = p.block(name).ok_or_else(|| Error::UnboundAtom(name.clone()))?;
        let solutions = f.level_set(t, tol);
        ends.extend(solutions.components().iter().flat_map(|c| [c.lo, c.hi]));
        acc = acc.intersect(&solutions.widen_ulp());
        let e = f.extrema();
        per_block.push(BlockDiagnostic {
            name: name.clone(),
            target: t,
            range: (e.min.value, e.max.value),
            gap: (e.min.value - t).max(t - e.max.value).max(0.0),
            solutions,
        });
    }
    ends.sort_by(f64::total_cmp);
    Ok(Inversion {
        solutions: snap(&acc, &ends).collapse_slivers(SLIVER_ULPS),
        per_block,
    })
}

/// Undoes the one-ulp widening where an endpoint came from an exact
/// level-set endpoint.
fn snap(set: &LevelSet, ends: &[f64]) -> LevelSet {
    let parts = set
        .components()
        .iter()
        .map(|c| {
            let lo = ends
                .iter()
                .copied()
                .filter(|&e| e >= c.lo && e <= c.lo.next_up().next_up() && e <= c.hi)
                .fold(c.lo, f64::max);
            let hi = ends
                .iter()
                .copied()
                .filter(|&e| e <= c.hi && e >= c.hi.next_down().next_down() && e >= lo)
                .fold(c.hi, f64::min);
            Component { lo, hi }
        })
        .collect();
    LevelSet::from_sorted(parts)
}
