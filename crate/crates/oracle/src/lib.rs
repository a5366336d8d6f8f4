//! Brute-force reference implementations for cross-checking `vague-core`.
//!
//! Nothing here shares evaluation code with the library: connectives are
//! re-derived from their formulas, membership functions are interpolated
//! from raw breakpoints, and every domain-wide quantity is found by dense
//! sampling. Slow on purpose.

use vague_core::{
    ConnectiveTriple, Error, Interval, Judgement, Negation, PartitionCandidate, TConorm, TNorm, VagueExpr,
};

/// Tolerance for "= 1", "= 0" and "> 0" on sampled values.
pub const TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GridSpec {
    Step(f64),
    Points(usize),
}

impl GridSpec {
    /// Cell count over `domain`; at least 100.
    pub fn cells(&self, domain: Interval) -> usize {
        let n = match *self {
            GridSpec::Step(h) => (domain.width() / h).ceil() as usize,
            GridSpec::Points(p) => p.saturating_sub(1),
        };
        n.max(100)
    }

    pub fn nodes(&self, domain: Interval) -> Vec<f64> {
        let n = self.cells(domain);
        (0..=n)
            .map(|i| {
                if i == n {
                    domain.hi()
                } else {
                    domain.lo() + (domain.hi() - domain.lo()) * i as f64 / n as f64
                }
            })
            .collect()
    }
}

fn t_norm(kind: TNorm, x: f64, y: f64) -> f64 {
    match kind {
        TNorm::Minimum => {
            if x < y {
                x
            } else {
                y
            }
        }
        TNorm::Product => x * y,
        TNorm::Lukasiewicz => {
            let s = x + y - 1.0;
            if s > 0.0 {
                s
            } else {
                0.0
            }
        }
        TNorm::Drastic => {
            if x < 1.0 && y < 1.0 {
                0.0
            } else if x < y {
                x
            } else {
                y
            }
        }
    }
}

fn t_conorm(kind: TConorm, x: f64, y: f64) -> f64 {
    match kind {
        TConorm::Maximum => {
            if x > y {
                x
            } else {
                y
            }
        }
        TConorm::ProbabilisticSum => 1.0 - (1.0 - x) * (1.0 - y),
        TConorm::BoundedSum => {
            let s = x + y;
            if s < 1.0 {
                s
            } else {
                1.0
            }
        }
        TConorm::Drastic => {
            if x > 0.0 && y > 0.0 {
                1.0
            } else if x > y {
                x
            } else {
                y
            }
        }
    }
}

fn negate(kind: Negation, x: f64) -> f64 {
    match kind {
        Negation::Standard => 1.0 - x,
        Negation::StrictSquare => 1.0 - x * x,
        Negation::Goedel => {
            if x > 0.0 {
                0.0
            } else {
                1.0
            }
        }
    }
}

/// Plain structural recursion over the expression.
pub fn oracle_eval(j: &Judgement, triple: &ConnectiveTriple, e: &VagueExpr) -> Result<f64, Error> {
    Ok(match e {
        VagueExpr::Bot => 0.0,
        VagueExpr::Top => 1.0,
        VagueExpr::Atom(a) => j.degree(a).ok_or_else(|| Error::UnboundAtom(a.clone()))?,
        VagueExpr::Neg(c) => negate(triple.negation(), oracle_eval(j, triple, c)?),
        VagueExpr::And(l, r) => t_norm(triple.tnorm(), oracle_eval(j, triple, l)?, oracle_eval(j, triple, r)?),
        VagueExpr::Or(l, r) => t_conorm(triple.tconorm(), oracle_eval(j, triple, l)?, oracle_eval(j, triple, r)?),
    })
}

/// Linear interpolation through raw breakpoints, found by linear scan.
pub fn interpolate(points: &[(f64, f64)], x: f64) -> f64 {
    for w in points.windows(2) {
        let ((x0, y0), (x1, y1)) = (w[0], w[1]);
        if x == x0 {
            return y0;
        }
        if x == x1 {
            return y1;
        }
        if x0 < x && x < x1 {
            let t = (x - x0) / (x1 - x0);
            return y0 * (1.0 - t) + y1 * t;
        }
    }
    f64::NAN
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Min,
    Max,
}

/// Grid argmin/argmax; ties go to the first node.
pub fn oracle_extremum<F: Fn(f64) -> f64>(f: F, domain: Interval, grid: GridSpec, mode: Mode) -> (f64, f64) {
    let mut best: Option<(f64, f64)> = None;
    for x in grid.nodes(domain) {
        let v = f(x);
        let better = match (best, mode) {
            (None, _) => true,
            (Some((b, _)), Mode::Min) => v < b,
            (Some((b, _)), Mode::Max) => v > b,
        };
        if better {
            best = Some((v, x));
        }
    }
    best.expect("grids have at least 101 nodes")
}

/// Discrete shape check: values rise to the first unit sample, stay at 1
/// until the last one and fall afterwards.
pub fn unimodal_samples(values: &[f64]) -> bool {
    let top = 1.0 - TOL;
    let (Some(first), Some(last)) = (
        values.iter().position(|&v| v >= top),
        values.iter().rposition(|&v| v >= top),
    ) else {
        return false;
    };
    values[..=first].windows(2).all(|w| w[1] >= w[0] - TOL)
        && values[first..=last].iter().all(|&v| v >= top)
        && values[last..].windows(2).all(|w| w[1] <= w[0] + TOL)
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleVerdicts {
    /// Conditions 1 to 5; condition 2 is `None` because sampling cannot
    /// detect a discontinuity.
    pub conditions: [Option<bool>; 5],
    /// Grid point where a failing pointwise condition was observed.
    pub witnesses: [Option<f64>; 5],
    pub regular: bool,
    pub sum_range: (f64, f64),
}

impl OracleVerdicts {
    pub fn valid(&self) -> bool {
        self.conditions.iter().all(|c| c.unwrap_or(true))
    }
}

pub fn oracle_validate(candidate: &PartitionCandidate, grid: GridSpec) -> OracleVerdicts {
    let xs = grid.nodes(candidate.domain());
    let samples: Vec<Vec<f64>> = candidate
        .blocks()
        .iter()
        .map(|b| xs.iter().map(|&x| interpolate(b.function().breakpoints(), x)).collect())
        .collect();
    let n = xs.len();
    let mut witnesses = [None; 5];

    let mut c1 = true;
    for i in 0..n {
        if samples.iter().all(|s| s[i] <= TOL) {
            c1 = false;
            witnesses[0] = Some(xs[i]);
            break;
        }
    }

    let c3 = samples.iter().all(|s| s.iter().any(|&v| v >= 1.0 - TOL));
    let c4 = samples.iter().all(|s| unimodal_samples(s));

    let sums: Vec<f64> = (0..n).map(|i| samples.iter().map(|s| s[i]).sum()).collect();
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    let mut c5 = true;
    for (i, &s) in sums.iter().enumerate() {
        lo = lo.min(s);
        hi = hi.max(s);
        if c5 && (s <= TOL || s > 1.0 + TOL) {
            c5 = false;
            witnesses[4] = Some(xs[i]);
        }
    }
    // an overflow is reported where the sum peaks
    if hi > 1.0 + TOL {
        let i = sums.iter().position(|&s| s == hi).expect("hi is a sample");
        witnesses[4] = Some(xs[i]);
    }
    let regular = sums.iter().all(|&s| (s - 1.0).abs() <= TOL);

    OracleVerdicts {
        conditions: [Some(c1), None, Some(c3), Some(c4), Some(c5)],
        witnesses,
        regular,
        sum_range: (lo, hi),
    }
}
