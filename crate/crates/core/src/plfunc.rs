//! Piecewise-linear functions on a closed interval.
//!
//! A [`PiecewiseLinearFn`] is stored as its breakpoints; between two
//! adjacent breakpoints the value is the linear interpolation. Level sets,
//! extrema and pointwise min/max/bounded sums are all computed exactly from
//! the breakpoints. Anything that is not closed under piecewise linearity
//! goes through [`SampledFn`], which always reports itself as approximate.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute tolerance for "equals 1", "equals 0" and "> 0" verdicts.
pub const BOUNDARY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() || lo >= hi {
            return Err(Error::InvalidFunction(format!(
                "interval [{lo}, {hi}] must be finite with lo < hi"
            )));
        }
        Ok(Interval { lo, hi })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub(crate) fn check(&self, x: f64) -> Result<f64> {
        if self.contains(x) {
            Ok(x)
        } else {
            Err(Error::Domain {
                what: format!("domain {self}"),
                value: x,
            })
        }
    }
}

impl TryFrom<[f64; 2]> for Interval {
    type Error = Error;

    fn try_from([lo, hi]: [f64; 2]) -> Result<Self> {
        Interval::new(lo, hi)
    }
}

impl From<Interval> for [f64; 2] {
    fn from(i: Interval) -> Self {
        [i.lo, i.hi]
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Binary operations that map piecewise-linear pairs to piecewise-linear results.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExactOp {
    Min,
    Max,
    /// `min(f + g, 1)`
    BoundedSum,
    /// `max(f - g, 0)`
    BoundedDifference,
    /// `max(f + g - 1, 0)`
    LukasiewiczAnd,
}

impl ExactOp {
    fn apply(self, a: f64, b: f64) -> f64 {
        match self {
            ExactOp::Min => a.min(b),
            ExactOp::Max => a.max(b),
            ExactOp::BoundedSum => (a + b).min(1.0),
            ExactOp::BoundedDifference => (a - b).max(0.0),
            ExactOp::LukasiewiczAnd => {
                let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
                (lo - (1.0 - hi)).max(0.0)
            }
        }
    }

    /// The expression whose sign change marks a switch between branches.
    fn switch(self, a: f64, b: f64) -> f64 {
        match self {
            ExactOp::Min | ExactOp::Max | ExactOp::BoundedDifference => a - b,
            ExactOp::BoundedSum | ExactOp::LukasiewiczAnd => a + b - 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseLinearFn {
    domain: Interval,
    points: Vec<(f64, f64)>,
}

impl PiecewiseLinearFn {
    /// Builds a function from `(x, y)` breakpoints; the domain spans the first
    /// and last abscissa.
    pub fn new(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidFunction(format!(
                "need at least 2 breakpoints, got {}",
                points.len()
            )));
        }
        for (i, &(x, y)) in points.iter().enumerate() {
            if !x.is_finite() {
                return Err(Error::InvalidFunction(format!("breakpoint {i}: x = {x} is not finite")));
            }
            if !(0.0..=1.0).contains(&y) {
                return Err(Error::InvalidFunction(format!(
                    "breakpoint {i}: y = {y} outside [0, 1]"
                )));
            }
        }
        if let Some(i) = points.windows(2).position(|w| w[0].0 >= w[1].0) {
            return Err(Error::InvalidFunction(format!(
                "breakpoint abscissae must strictly increase (breakpoints {} and {}: {} then {})",
                i,
                i + 1,
                points[i].0,
                points[i + 1].0
            )));
        }
        let domain = Interval::new(points[0].0, points[points.len() - 1].0)?;
        Ok(PiecewiseLinearFn { domain, points })
    }

    /// Builds a function and checks that it spans `domain` exactly.
    pub fn on(domain: Interval, points: Vec<(f64, f64)>) -> Result<Self> {
        let f = Self::new(points)?;
        if f.domain != domain {
            return Err(Error::InvalidFunction(format!(
                "breakpoints span {} but the domain is {}",
                f.domain, domain
            )));
        }
        Ok(f)
    }

    pub fn constant(domain: Interval, y: f64) -> Result<Self> {
        Self::new(vec![(domain.lo, y), (domain.hi, y)])
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    pub fn breakpoints(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        self.domain.check(x)?;
        Ok(self.value_at(x))
    }

    /// Interpolated value; `x` must lie in the domain.
    pub(crate) fn value_at(&self, x: f64) -> f64 {
        let i = self.points.partition_point(|p| p.0 < x);
        if i < self.points.len() && self.points[i].0 == x {
            return self.points[i].1;
        }
        let i = i.clamp(1, self.points.len() - 1);
        interpolate(self.points[i - 1], self.points[i], x)
    }

    /// `1 - f`, applied breakpoint by breakpoint.
    pub fn complement(&self) -> Self {
        PiecewiseLinearFn {
            domain: self.domain,
            points: self.points.iter().map(|&(x, y)| (x, 1.0 - y)).collect(),
        }
    }

    /// `min(1, factor · f)`, with a breakpoint added wherever the clamp engages.
    pub fn scale_clamped(&self, factor: f64) -> Result<Self> {
        if !(factor.is_finite() && factor >= 0.0) {
            return Err(Error::Domain {
                what: "scale factor range [0, inf)".into(),
                value: factor,
            });
        }
        let scaled: Vec<(f64, f64)> = self.points.iter().map(|&(x, y)| (x, factor * y)).collect();
        let mut out = Vec::with_capacity(scaled.len());
        for (k, &(x, y)) in scaled.iter().enumerate() {
            if k > 0 {
                let (xa, ya) = scaled[k - 1];
                let (da, db) = (ya - 1.0, y - 1.0);
                if da * db < 0.0 {
                    let c = xa + (x - xa) * (da / (da - db));
                    if xa < c && c < x {
                        out.push((c, 1.0));
                    }
                }
            }
            out.push((x, y.min(1.0)));
        }
        Ok(PiecewiseLinearFn {
            domain: self.domain,
            points: squeeze_flat(out),
        })
    }

    /// Exact pointwise combination. The result's breakpoints are the union of
    /// both breakpoint sets plus every abscissa where the operation switches
    /// branch inside a segment.
    pub fn combine(&self, other: &Self, op: ExactOp) -> Result<Self> {
        if self.domain != other.domain {
            return Err(Error::Domain {
                what: format!("combination of functions on {} and {}", self.domain, other.domain),
                value: other.domain.lo,
            });
        }
        let xs = merged_abscissae([self, other]);
        let mut out = Vec::with_capacity(xs.len() * 2);
        let mut prev: Option<(f64, f64, f64)> = None;
        for &x in &xs {
            let (a, b) = (self.value_at(x), other.value_at(x));
            if let Some((xa, fa, ga)) = prev {
                let (da, db) = (op.switch(fa, ga), op.switch(a, b));
                if da * db < 0.0 {
                    let c = xa + (x - xa) * (da / (da - db));
                    if xa < c && c < x {
                        let fc = interpolate((xa, fa), (x, a), c);
                        let gc = interpolate((xa, ga), (x, b), c);
                        out.push((c, op.apply(fc, gc).clamp(0.0, 1.0)));
                    }
                }
            }
            out.push((x, op.apply(a, b)));
            prev = Some((x, a, b));
        }
        Ok(PiecewiseLinearFn {
            domain: self.domain,
            points: squeeze_flat(out),
        })
    }

    /// Exact minimum and maximum. Both occur at breakpoints; ties go to the
    /// smallest abscissa.
    pub fn extrema(&self) -> Extrema {
        let (x0, y0) = self.points[0];
        let mut e = Extrema {
            min: Extremum { value: y0, x: x0 },
            max: Extremum { value: y0, x: x0 },
        };
        for &(x, y) in &self.points[1..] {
            if y < e.min.value {
                e.min = Extremum { value: y, x };
            }
            if y > e.max.value {
                e.max = Extremum { value: y, x };
            }
        }
        e
    }

    /// `{x : |f(x) - t| <= tol}` as disjoint closed intervals and points.
    pub fn level_set(&self, t: f64, tol: f64) -> LevelSet {
        let (lo_t, hi_t) = (t - tol, t + tol);
        let mut parts = Vec::new();
        for w in self.points.windows(2) {
            let ((x0, y0), (x1, y1)) = (w[0], w[1]);
            let (ymin, ymax) = (y0.min(y1), y0.max(y1));
            let (vlo, vhi) = (lo_t.max(ymin), hi_t.min(ymax));
            if vlo > vhi {
                continue;
            }
            if y0 == y1 {
                parts.push(Component { lo: x0, hi: x1 });
                continue;
            }
            let solve = |v: f64| -> f64 {
                if v == y0 {
                    x0
                } else if v == y1 {
                    x1
                } else {
                    (x0 + (x1 - x0) * ((v - y0) / (y1 - y0))).clamp(x0, x1)
                }
            };
            let (a, b) = (solve(vlo), solve(vhi));
            parts.push(Component {
                lo: a.min(b),
                hi: a.max(b),
            });
        }
        LevelSet::from_sorted(parts)
    }

    /// Checks the unit-plateau shape: `f` reaches 1, is non-decreasing up to
    /// its first maximizer, stays at 1 until its last maximizer and is
    /// non-increasing afterwards.
    pub fn unimodality(&self) -> Unimodality {
        let top = 1.0 - BOUNDARY_TOLERANCE;
        let first = self.points.iter().position(|p| p.1 >= top);
        let last = self.points.iter().rposition(|p| p.1 >= top);
        let (Some(first), Some(last)) = (first, last) else {
            return Unimodality {
                holds: false,
                plateau: None,
                violation: Some(UnimodalityViolation {
                    segment: None,
                    reason: format!("never reaches 1 (max {})", self.extrema().max.value),
                }),
            };
        };
        let plateau = Some((self.points[first].0, self.points[last].0));
        let violation = self.points.windows(2).enumerate().find_map(|(k, w)| {
            let ((x0, y0), (x1, y1)) = (w[0], w[1]);
            let reason = if k < first && y1 < y0 - BOUNDARY_TOLERANCE {
                "decreases before the first maximizer"
            } else if k >= first && k < last && y1 < top {
                "leaves 1 between maximizers"
            } else if k >= last && y1 > y0 + BOUNDARY_TOLERANCE {
                "increases after the last maximizer"
            } else {
                return None;
            };
            Some(UnimodalityViolation {
                segment: Some(((x0, y0), (x1, y1))),
                reason: reason.to_string(),
            })
        });
        Unimodality {
            holds: violation.is_none(),
            plateau,
            violation,
        }
    }
}

impl fmt::Display for PiecewiseLinearFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pts: Vec<String> = self.points.iter().map(|(x, y)| format!("({x}, {y})")).collect();
        write!(f, "PL[{}]", pts.join(", "))
    }
}

fn interpolate((x0, y0): (f64, f64), (x1, y1): (f64, f64), x: f64) -> f64 {
    if x == x0 {
        return y0;
    }
    if x == x1 {
        return y1;
    }
    y0 + (y1 - y0) * ((x - x0) / (x1 - x0))
}

/// Drops interior breakpoints of runs with identical ordinates.
fn squeeze_flat(points: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    let mut out: Vec<(f64, f64)> = Vec::with_capacity(points.len());
    for p in points {
        let n = out.len();
        if n >= 2 && out[n - 1].1 == p.1 && out[n - 2].1 == p.1 {
            out[n - 1] = p;
        } else {
            out.push(p);
        }
    }
    out
}

/// Sorted union of the breakpoint abscissae of `fns`.
pub fn merged_abscissae<'a, I>(fns: I) -> Vec<f64>
where
    I: IntoIterator<Item = &'a PiecewiseLinearFn>,
{
    let mut xs: Vec<f64> = fns.into_iter().flat_map(|f| f.points.iter().map(|p| p.0)).collect();
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    xs
}

/// Arithmetic sum of `fns` at every merged breakpoint. Between consecutive
/// abscissae the sum is linear, so these samples determine it exactly.
pub fn sum_at_breakpoints(fns: &[&PiecewiseLinearFn]) -> Vec<(f64, f64)> {
    merged_abscissae(fns.iter().copied())
        .into_iter()
        .map(|x| (x, fns.iter().map(|f| f.value_at(x)).sum()))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Extremum {
    pub value: f64,
    pub x: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Extrema {
    pub min: Extremum,
    pub max: Extremum,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UnimodalityViolation {
    /// Offending segment as its two endpoints; `None` when 1 is never reached.
    pub segment: Option<((f64, f64), (f64, f64))>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Unimodality {
    pub holds: bool,
    /// First and last maximizer.
    pub plateau: Option<(f64, f64)>,
    pub violation: Option<UnimodalityViolation>,
}

/// A closed interval `[lo, hi]`; a point when `lo == hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Component {
    pub lo: f64,
    pub hi: f64,
}

impl Component {
    pub fn point(x: f64) -> Self {
        Component { lo: x, hi: x }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

/// Sorted, pairwise disjoint closed intervals and points.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct LevelSet {
    parts: Vec<Component>,
}

impl LevelSet {
    pub fn empty() -> Self {
        LevelSet::default()
    }

    /// Merges overlapping or touching components of a list sorted by `lo`.
    pub fn from_sorted(parts: Vec<Component>) -> Self {
        let mut out: Vec<Component> = Vec::with_capacity(parts.len());
        for c in parts {
            match out.last_mut() {
                Some(last) if c.lo <= last.hi => last.hi = last.hi.max(c.hi),
                _ => out.push(c),
            }
        }
        LevelSet { parts: out }
    }

    pub fn from_components(mut parts: Vec<Component>) -> Self {
        parts.sort_by(|a, b| a.lo.total_cmp(&b.lo));
        Self::from_sorted(parts)
    }

    pub fn components(&self) -> &[Component] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn contains(&self, x: f64) -> bool {
        self.parts.iter().any(|c| c.contains(x))
    }

    pub fn measure(&self) -> f64 {
        self.parts.iter().map(|c| c.hi - c.lo).sum()
    }

    pub fn intersect(&self, other: &LevelSet) -> LevelSet {
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < self.parts.len() && j < other.parts.len() {
            let (a, b) = (self.parts[i], other.parts[j]);
            let lo = a.lo.max(b.lo);
            let hi = a.hi.min(b.hi);
            if lo <= hi {
                out.push(Component { lo, hi });
            }
            if a.hi < b.hi {
                i += 1;
            } else {
                j += 1;
            }
        }
        LevelSet::from_sorted(out)
    }

    /// Moves every endpoint one ulp outward.
    pub fn widen_ulp(&self) -> LevelSet {
        LevelSet::from_sorted(
            self.parts
                .iter()
                .map(|c| Component {
                    lo: c.lo.next_down(),
                    hi: c.hi.next_up(),
                })
                .collect(),
        )
    }

    /// Replaces components no wider than `ulps` units in the last place by
    /// their midpoint.
    pub fn collapse_slivers(&self, ulps: u32) -> LevelSet {
        let parts = self
            .parts
            .iter()
            .map(|&c| {
                let mut edge = c.lo;
                for _ in 0..ulps {
                    edge = edge.next_up();
                }
                if c.hi <= edge && !c.is_point() {
                    Component::point(c.lo + (c.hi - c.lo) / 2.0)
                } else {
                    c
                }
            })
            .collect();
        LevelSet { parts }
    }
}

/// Uniform samples of a function with linear interpolation in between.
/// Always approximate.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFn {
    domain: Interval,
    values: Vec<f64>,
}

impl SampledFn {
    /// Samples `f` at `cells + 1` evenly spaced points, `cells >= 1`.
    pub fn sample<F: FnMut(f64) -> f64>(domain: Interval, cells: usize, mut f: F) -> Self {
        let cells = cells.max(1);
        let values = (0..=cells).map(|i| f(Self::node(domain, cells, i))).collect();
        SampledFn { domain, values }
    }

    /// Cell count whose spacing does not exceed `step`.
    pub fn cells_for_step(domain: Interval, step: f64) -> Result<usize> {
        if !(step > 0.0 && step.is_finite()) {
            return Err(Error::Domain {
                what: "grid step range (0, inf)".into(),
                value: step,
            });
        }
        let cells = (domain.width() / step).ceil();
        if cells > 1e8 {
            return Err(Error::Unsupported(format!("grid step {step} needs {cells} cells")));
        }
        Ok((cells as usize).max(1))
    }

    fn node(domain: Interval, cells: usize, i: usize) -> f64 {
        if i == cells {
            domain.hi
        } else {
            domain.lo + domain.width() * (i as f64 / cells as f64)
        }
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    pub fn step(&self) -> f64 {
        self.domain.width() / (self.values.len() - 1) as f64
    }

    pub fn samples(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        let cells = self.values.len() - 1;
        self.values
            .iter()
            .enumerate()
            .map(move |(i, &v)| (Self::node(self.domain, cells, i), v))
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        self.domain.check(x)?;
        let cells = self.values.len() - 1;
        let pos = (x - self.domain.lo) / self.domain.width() * cells as f64;
        let i = (pos.floor() as usize).min(cells - 1);
        let (x0, x1) = (Self::node(self.domain, cells, i), Self::node(self.domain, cells, i + 1));
        Ok(interpolate((x0, self.values[i]), (x1, self.values[i + 1]), x))
    }

    /// Extrema over the sample nodes.
    pub fn extrema(&self) -> Extrema {
        let mut it = self.samples();
        let (x0, y0) = it.next().expect("at least two samples");
        let mut e = Extrema {
            min: Extremum { value: y0, x: x0 },
            max: Extremum { value: y0, x: x0 },
        };
        for (x, y) in it {
            if y < e.min.value {
                e.min = Extremum { value: y, x };
            }
            if y > e.max.value {
                e.max = Extremum { value: y, x };
            }
        }
        e
    }
}

/// A membership function materialized exactly or by sampling.
#[derive(Debug, Clone, PartialEq)]
pub enum MembershipFn {
    Exact(PiecewiseLinearFn),
    Sampled(SampledFn),
}

impl MembershipFn {
    pub fn is_exact(&self) -> bool {
        matches!(self, MembershipFn::Exact(_))
    }

    pub fn domain(&self) -> Interval {
        match self {
            MembershipFn::Exact(f) => f.domain(),
            MembershipFn::Sampled(s) => s.domain(),
        }
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        match self {
            MembershipFn::Exact(f) => f.eval(x),
            MembershipFn::Sampled(s) => s.eval(x),
        }
    }

    pub fn extrema(&self) -> Extrema {
        match self {
            MembershipFn::Exact(f) => f.extrema(),
            MembershipFn::Sampled(s) => s.extrema(),
        }
    }

    /// Grid spacing for sampled functions.
    pub fn grid_step(&self) -> Option<f64> {
        match self {
            MembershipFn::Exact(_) => None,
            MembershipFn::Sampled(s) => Some(s.step()),
        }
    }

    pub fn as_exact(&self) -> Option<&PiecewiseLinearFn> {
        match self {
            MembershipFn::Exact(f) => Some(f),
            MembershipFn::Sampled(_) => None,
        }
    }
}

/// Pointwise combination of two functions on the same domain: exact for the
/// [`ExactOp`] family on piecewise-linear inputs, sampled with `cells` cells
/// otherwise.
pub fn combine_with<F>(f: &MembershipFn, g: &MembershipFn, op: F, cells: usize) -> Result<MembershipFn>
where
    F: Fn(f64, f64) -> f64,
{
    if f.domain() != g.domain() {
        return Err(Error::Domain {
            what: format!("combination of functions on {} and {}", f.domain(), g.domain()),
            value: g.domain().lo(),
        });
    }
    Ok(MembershipFn::Sampled(SampledFn::sample(f.domain(), cells, |x| {
        op(f.eval(x).unwrap_or(0.0), g.eval(x).unwrap_or(0.0))
    })))
}
