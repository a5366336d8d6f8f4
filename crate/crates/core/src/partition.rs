//! Vague partitions of a real interval.
//!
//! A candidate (interval plus named piecewise-linear blocks) becomes a
//! [`VaguePartition`] only after [`validate_partition`] accepts all five
//! conditions:
//!
//! 1. at every point some block is positive;
//! 2. every block is continuous;
//! 3. every block reaches 1;
//! 4. every block rises to its unit plateau and falls after it;
//! 5. the arithmetic sum of the blocks lies in `(0, 1]` everywhere.
//!
//! The partition is regular when that sum is identically 1. All checks are
//! exact: they run over the merged breakpoints of the blocks.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::plfunc::{sum_at_breakpoints, ExactOp, Interval, PiecewiseLinearFn, BOUNDARY_TOLERANCE};

#[derive(Debug, Clone, PartialEq)]
pub struct Block {
    name: String,
    function: PiecewiseLinearFn,
}

impl Block {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn function(&self) -> &PiecewiseLinearFn {
        &self.function
    }
}

/// An interval with named membership functions, not yet validated.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionCandidate {
    domain: Interval,
    blocks: Vec<Block>,
}

impl PartitionCandidate {
    pub fn new(domain: Interval, blocks: Vec<(String, PiecewiseLinearFn)>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::MalformedCandidate("a partition needs at least one block".into()));
        }
        let mut seen = HashSet::new();
        for (i, (name, f)) in blocks.iter().enumerate() {
            if name.trim().is_empty() {
                return Err(Error::MalformedCandidate(format!("block {i} has an empty name")));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::MalformedCandidate(format!("duplicate block name `{name}`")));
            }
            if f.domain() != domain {
                return Err(Error::MalformedCandidate(format!(
                    "block `{name}` is defined on {} but the partition domain is {domain}",
                    f.domain()
                )));
            }
        }
        let blocks = blocks
            .into_iter()
            .map(|(name, function)| Block { name, function })
            .collect();
        Ok(PartitionCandidate { domain, blocks })
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Copy with block `index` replaced by `min(1, factor · f)`.
    pub fn with_block_scaled(&self, index: usize, factor: f64) -> Result<Self> {
        let mut out = self.clone();
        let block = out.blocks.get_mut(index).ok_or_else(|| {
            Error::MalformedCandidate(format!("no block {index} (have {})", self.blocks.len()))
        })?;
        block.function = block.function.scale_clamped(factor)?;
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Point { x: f64 },
    Block { index: usize, name: String },
    BlockPoint { index: usize, name: String, x: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionVerdict {
    pub condition: u8,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl ConditionVerdict {
    fn pass(condition: u8) -> Self {
        ConditionVerdict {
            condition,
            holds: true,
            witness: None,
            reason: None,
        }
    }

    fn fail(condition: u8, witness: Witness, reason: String) -> Self {
        ConditionVerdict {
            condition,
            holds: false,
            witness: Some(witness),
            reason: Some(reason),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    /// Verdicts for conditions 1 through 5, in order.
    pub conditions: Vec<ConditionVerdict>,
    pub valid: bool,
    pub regular: bool,
    /// First merged breakpoint where the block sum differs from 1.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regularity_witness: Option<f64>,
    /// Smallest and largest value of the block sum.
    pub sum_range: (f64, f64),
}

impl ValidationReport {
    pub fn condition(&self, n: u8) -> &ConditionVerdict {
        &self.conditions[usize::from(n) - 1]
    }

    pub fn failures(&self) -> impl Iterator<Item = &ConditionVerdict> {
        self.conditions.iter().filter(|c| !c.holds)
    }
}

pub fn validate_partition(candidate: &PartitionCandidate) -> ValidationReport {
    let blocks = &candidate.blocks;
    let mut conditions = Vec::with_capacity(5);

    // (1) pointwise max stays positive
    let upper = blocks[1..].iter().fold(blocks[0].function.clone(), |acc, b| {
        acc.combine(&b.function, ExactOp::Max)
            .expect("candidate blocks share the domain")
    });
    let low = upper.extrema().min;
    conditions.push(if low.value > BOUNDARY_TOLERANCE {
        ConditionVerdict::pass(1)
    } else {
        ConditionVerdict::fail(
            1,
            Witness::Point { x: low.x },
            format!("every block is {} at x = {}", low.value, low.x),
        )
    });

    // (2) holds by representation
    conditions.push(ConditionVerdict::pass(2));

    // (3) each block attains 1
    let c3 = blocks.iter().enumerate().find_map(|(i, b)| {
        let top = b.function.extrema().max;
        (top.value < 1.0 - BOUNDARY_TOLERANCE).then(|| {
            ConditionVerdict::fail(
                3,
                Witness::Block {
                    index: i,
                    name: b.name.clone(),
                },
                format!("block `{}` peaks at {} (x = {})", b.name, top.value, top.x),
            )
        })
    });
    conditions.push(c3.unwrap_or_else(|| ConditionVerdict::pass(3)));

    // (4) rise, unit plateau, fall
    let c4 = blocks.iter().enumerate().find_map(|(i, b)| {
        let shape = b.function.unimodality();
        let v = shape.violation?;
        let x = v.segment.map_or(b.function.domain().lo(), |s| s.0 .0);
        Some(ConditionVerdict::fail(
            4,
            Witness::BlockPoint {
                index: i,
                name: b.name.clone(),
                x,
            },
            format!("block `{}` {}", b.name, v.reason),
        ))
    });
    conditions.push(c4.unwrap_or_else(|| ConditionVerdict::pass(4)));

    // (5) arithmetic sum in (0, 1]
    let fns: Vec<&PiecewiseLinearFn> = blocks.iter().map(|b| &b.function).collect();
    let sums = sum_at_breakpoints(&fns);
    let mut min = sums[0];
    let mut max = sums[0];
    for &s in &sums[1..] {
        if s.1 < min.1 {
            min = s;
        }
        if s.1 > max.1 {
            max = s;
        }
    }
    conditions.push(if max.1 > 1.0 + BOUNDARY_TOLERANCE {
        ConditionVerdict::fail(
            5,
            Witness::Point { x: max.0 },
            format!("block sum is {} > 1 at x = {}", max.1, max.0),
        )
    } else if min.1 <= BOUNDARY_TOLERANCE {
        ConditionVerdict::fail(
            5,
            Witness::Point { x: min.0 },
            format!("block sum is {} at x = {}", min.1, min.0),
        )
    } else {
        ConditionVerdict::pass(5)
    });

    let regularity_witness = sums
        .iter()
        .find(|s| (s.1 - 1.0).abs() > BOUNDARY_TOLERANCE)
        .map(|s| s.0);
    ValidationReport {
        valid: conditions.iter().all(|c| c.holds),
        conditions,
        regular: regularity_witness.is_none(),
        regularity_witness,
        sum_range: (min.1, max.1),
    }
}

/// A validated vague partition.
#[derive(Debug, Clone, PartialEq)]
pub struct VaguePartition {
    concept: String,
    attribute: String,
    candidate: PartitionCandidate,
    regular: bool,
}

impl VaguePartition {
    /// Validates `candidate`; a failing report comes back inside
    /// [`Error::InvalidPartition`].
    pub fn new(concept: impl Into<String>, attribute: impl Into<String>, candidate: PartitionCandidate) -> Result<Self> {
        let report = validate_partition(&candidate);
        if !report.valid {
            return Err(Error::InvalidPartition(Box::new(report)));
        }
        Ok(VaguePartition {
            concept: concept.into(),
            attribute: attribute.into(),
            candidate,
            regular: report.regular,
        })
    }

    pub fn concept(&self) -> &str {
        &self.concept
    }

    pub fn attribute(&self) -> &str {
        &self.attribute
    }

    pub fn domain(&self) -> Interval {
        self.candidate.domain
    }

    pub fn blocks(&self) -> &[Block] {
        &self.candidate.blocks
    }

    pub fn candidate(&self) -> &PartitionCandidate {
        &self.candidate
    }

    pub fn len(&self) -> usize {
        self.candidate.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.blocks().iter().map(|b| b.name.as_str())
    }

    pub fn block(&self, name: &str) -> Option<&PiecewiseLinearFn> {
        self.blocks().iter().find(|b| b.name == name).map(|b| &b.function)
    }

    pub fn is_regular(&self) -> bool {
        self.regular
    }

    fn degrees(&self, x: f64) -> Result<Vec<f64>> {
        self.domain().check(x)?;
        Ok(self.blocks().iter().map(|b| b.function.value_at(x)).collect())
    }

    /// `0 < μ_i(x) + max_{j≠i} μ_j(x) <= 1` for every block `i`.
    pub fn check_max_exclusion(&self, x: f64) -> Result<bool> {
        let v = self.degrees(x)?;
        Ok((0..v.len()).all(|i| {
            let others = v
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &d)| d)
                .fold(0.0, f64::max);
            let s = v[i] + others;
            s > 0.0 && s <= 1.0 + BOUNDARY_TOLERANCE
        }))
    }

    /// A block at 1 forces every other block to 0.
    pub fn check_unit_exclusion(&self, x: f64) -> Result<bool> {
        Ok(unit_exclusion(&self.degrees(x)?))
    }
}

pub(crate) fn unit_exclusion(v: &[f64]) -> bool {
    v.iter().enumerate().all(|(i, &d)| {
        d < 1.0 - BOUNDARY_TOLERANCE
            || v.iter()
                .enumerate()
                .all(|(j, &e)| j == i || e <= BOUNDARY_TOLERANCE)
    })
}

/// A deterministic regular partition of `domain` into `n` blocks: a chain of
/// trapezoids whose neighbouring ramps sum to 1.
pub fn random_partition(seed: u64, domain: Interval, n: usize) -> Result<VaguePartition> {
    generate(seed, domain, n, false)
}

/// Like [`random_partition`], but each rising ramp starts late so the block
/// sum dips below 1 inside every transition. For `n = 1` the single block
/// has a plateau strictly inside the domain and positive shoulders.
pub fn random_irregular_partition(seed: u64, domain: Interval, n: usize) -> Result<VaguePartition> {
    generate(seed, domain, n, true)
}

fn generate(seed: u64, domain: Interval, n: usize, irregular: bool) -> Result<VaguePartition> {
    if n == 0 {
        return Err(Error::Generation("block count must be at least 1".into()));
    }
    let (lo, hi) = (domain.lo(), domain.hi());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names: Vec<String> = (0..n).map(|i| format!("b{i}")).collect();

    if n == 1 {
        let f = if irregular {
            let a = lo + domain.width() * rng.gen_range(0.2..0.4);
            let b = lo + domain.width() * rng.gen_range(0.6..0.8);
            let (ya, yb) = (rng.gen_range(0.1..0.9), rng.gen_range(0.1..0.9));
            PiecewiseLinearFn::new(vec![(lo, ya), (a, 1.0), (b, 1.0), (hi, yb)])?
        } else {
            PiecewiseLinearFn::constant(domain, 1.0)?
        };
        let c = PartitionCandidate::new(domain, vec![(names[0].clone(), f)])?;
        return VaguePartition::new("generated", "x", c);
    }

    // 2n - 1 gaps: plateau, ramp, plateau, ..., plateau.
    let gaps: Vec<f64> = (0..2 * n - 1).map(|_| rng.gen_range(0.2..1.0)).collect();
    let total: f64 = gaps.iter().sum();
    let mut cuts = Vec::with_capacity(2 * n - 2);
    let mut acc = 0.0;
    for g in &gaps[..gaps.len() - 1] {
        acc += g;
        cuts.push(lo + domain.width() * (acc / total));
    }
    let magnitude = lo.abs().max(hi.abs());
    let min_gap = (domain.width() * 1e-9).max(16.0 * (magnitude.next_up() - magnitude));
    let mut prev = lo;
    for &c in cuts.iter().chain(std::iter::once(&hi)) {
        if c - prev <= min_gap || c <= prev {
            return Err(Error::Generation(format!(
                "{n} blocks do not fit in {domain} at resolution {min_gap:e}"
            )));
        }
        prev = c;
    }

    // Transition k (between blocks k and k+1) spans [cuts[2k], cuts[2k+1]].
    let rise_start: Vec<f64> = (0..n - 1)
        .map(|k| {
            let (a, b) = (cuts[2 * k], cuts[2 * k + 1]);
            if irregular {
                a + (b - a) * rng.gen_range(0.2..0.8)
            } else {
                a
            }
        })
        .collect();

    let mut blocks = Vec::with_capacity(n);
    for i in 0..n {
        let mut pts = Vec::with_capacity(6);
        if i == 0 {
            pts.push((lo, 1.0));
        } else {
            let (start, top) = (rise_start[i - 1], cuts[2 * (i - 1) + 1]);
            pts.push((lo, 0.0));
            if start > lo {
                pts.push((start, 0.0));
            }
            pts.push((top, 1.0));
        }
        if i == n - 1 {
            pts.push((hi, 1.0));
        } else {
            let (fall, bottom) = (cuts[2 * i], cuts[2 * i + 1]);
            pts.push((fall, 1.0));
            pts.push((bottom, 0.0));
            if bottom < hi {
                pts.push((hi, 0.0));
            }
        }
        pts.dedup_by(|b, a| a.0 == b.0);
        blocks.push((names[i].clone(), PiecewiseLinearFn::on(domain, pts)?));
    }
    let c = PartitionCandidate::new(domain, blocks)?;
    VaguePartition::new("generated", "x", c).map_err(|e| match e {
        Error::InvalidPartition(r) => Error::Generation(format!(
            "generated candidate failed validation: {:?}",
            r.failures().collect::<Vec<_>>()
        )),
        other => other,
    })
}
