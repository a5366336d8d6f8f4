//! Membership measures, vague judgements and partition-based fuzzy sets.
//!
//! A [`Judgement`] records, for one object `x`, the degree of every
//! elementary value. [`eval_measure`] extends it compositionally to any
//! [`VagueExpr`]: `bot` is 0, `top` is 1, negation, conjunction and
//! disjunction go through the connective triple. [`check_axioms`] decides
//! whether a judgement satisfies positivity and mutual exclusion and
//! classifies the space as regular and/or normal.

use std::sync::Arc;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::connectives::{ConnectiveTriple, TConorm, TNorm};
use crate::error::{check_degree, Error, Result};
use crate::expr::VagueExpr;
use crate::partition::VaguePartition;
use crate::plfunc::{ExactOp, MembershipFn, PiecewiseLinearFn, SampledFn, BOUNDARY_TOLERANCE};

/// Cells used when a membership function has to be sampled.
pub const DEFAULT_GRID_CELLS: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawJudgement")]
pub struct Judgement {
    x: f64,
    degrees: IndexMap<String, f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawJudgement {
    x: f64,
    degrees: IndexMap<String, f64>,
}

impl TryFrom<RawJudgement> for Judgement {
    type Error = Error;

    fn try_from(r: RawJudgement) -> Result<Self> {
        Judgement::new(r.x, r.degrees)
    }
}

impl Judgement {
    /// A judgement given directly as degrees, in block order.
    pub fn new<I, S>(x: f64, degrees: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, f64)>,
        S: Into<String>,
    {
        let mut map = IndexMap::new();
        for (name, d) in degrees {
            let name = name.into();
            check_degree(&format!("degree of `{name}`"), d)?;
            if name.is_empty() {
                return Err(Error::MalformedCandidate("empty elementary value name".into()));
            }
            if map.insert(name.clone(), d).is_some() {
                return Err(Error::MalformedCandidate(format!("duplicate elementary value `{name}`")));
            }
        }
        if map.is_empty() {
            return Err(Error::MalformedCandidate("a judgement needs at least one value".into()));
        }
        Ok(Judgement { x, degrees: map })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn degree(&self, name: &str) -> Option<f64> {
        self.degrees.get(name).copied()
    }

    pub fn degrees(&self) -> impl Iterator<Item = (&str, f64)> {
        self.degrees.iter().map(|(k, &v)| (k.as_str(), v))
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }
}

/// Degrees of every block of `p` at `x`.
pub fn judge(p: &VaguePartition, x: f64) -> Result<Judgement> {
    p.domain().check(x)?;
    Ok(Judgement {
        x,
        degrees: p
            .blocks()
            .iter()
            .map(|b| (b.name().to_string(), b.function().value_at(x)))
            .collect(),
    })
}

fn check_bound<F: Fn(&str) -> bool>(e: &VagueExpr, has: F) -> Result<()> {
    match e.atoms().into_iter().find(|a| !has(a)) {
        Some(a) => Err(Error::UnboundAtom(a.to_string())),
        None => Ok(()),
    }
}

fn eval_bound(j: &Judgement, t: &ConnectiveTriple, e: &VagueExpr) -> f64 {
    match e {
        VagueExpr::Bot => 0.0,
        VagueExpr::Top => 1.0,
        VagueExpr::Atom(a) => j.degrees[a.as_str()],
        // the triple's negation is strong, hence an involution
        VagueExpr::Neg(c) => match c.as_ref() {
            VagueExpr::Neg(inner) => eval_bound(j, t, inner),
            _ => t.negation().eval(eval_bound(j, t, c)),
        },
        VagueExpr::And(l, r) => t.tnorm().eval(eval_bound(j, t, l), eval_bound(j, t, r)),
        VagueExpr::Or(l, r) => t.tconorm().eval(eval_bound(j, t, l), eval_bound(j, t, r)),
    }
}

/// Degree of `e` under the judgement.
pub fn eval_measure(j: &Judgement, triple: &ConnectiveTriple, e: &VagueExpr) -> Result<f64> {
    check_bound(e, |a| j.degrees.contains_key(a))?;
    Ok(eval_bound(j, triple, e))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExclusionResidual {
    pub name: String,
    /// `M(p) + ⊕{M(q) : q ≠ p}`
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MembershipSpaceReport {
    pub tconorm: TConorm,
    /// All degrees in `[0, 1]` and at least one positive.
    pub axiom1: bool,
    /// Every exclusion residual lies in `(0, 1]`.
    pub axiom5: bool,
    pub residuals: Vec<ExclusionResidual>,
    /// First elementary value whose residual is out of range.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axiom5_witness: Option<String>,
    /// Every residual equals 1.
    pub regular: bool,
    /// Some elementary value has degree 1.
    pub normal: bool,
    /// Same as `normal`: the object is a clear case of some value.
    pub crisp: bool,
}

pub fn check_axioms(j: &Judgement, triple: &ConnectiveTriple) -> MembershipSpaceReport {
    let s = triple.tconorm();
    let degrees: Vec<f64> = j.degrees.values().copied().collect();
    let axiom1 = degrees.iter().all(|d| (0.0..=1.0).contains(d)) && degrees.iter().any(|&d| d > 0.0);
    let residuals: Vec<ExclusionResidual> = j
        .degrees
        .iter()
        .enumerate()
        .map(|(i, (name, &d))| {
            let others = s.fold(
                degrees
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != i)
                    .map(|(_, &v)| v),
            );
            ExclusionResidual {
                name: name.clone(),
                value: d + others,
            }
        })
        .collect();
    let axiom5_witness = residuals
        .iter()
        .find(|r| !(r.value > 0.0 && r.value <= 1.0 + BOUNDARY_TOLERANCE))
        .map(|r| r.name.clone());
    let regular = residuals
        .iter()
        .all(|r| (r.value - 1.0).abs() <= BOUNDARY_TOLERANCE);
    let normal = degrees.iter().any(|&d| (d - 1.0).abs() <= BOUNDARY_TOLERANCE);
    MembershipSpaceReport {
        tconorm: s,
        axiom1,
        axiom5: axiom5_witness.is_none(),
        residuals,
        axiom5_witness,
        regular,
        normal,
        crisp: normal,
    }
}

/// A fuzzy set derived from the blocks of a vague partition.
#[derive(Debug, Clone)]
pub struct FuzzySet {
    partition: Arc<VaguePartition>,
    expr: VagueExpr,
    triple: ConnectiveTriple,
    derived: MembershipFn,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetOp {
    And,
    Or,
}

impl FuzzySet {
    /// Materializes the membership function of `expr` over `partition`:
    /// exactly when every connective keeps piecewise linearity, otherwise by
    /// sampling on [`DEFAULT_GRID_CELLS`] cells.
    pub fn derive(partition: Arc<VaguePartition>, triple: ConnectiveTriple, expr: VagueExpr) -> Result<Self> {
        Self::derive_with_cells(partition, triple, expr, DEFAULT_GRID_CELLS)
    }

    pub fn derive_with_cells(
        partition: Arc<VaguePartition>,
        triple: ConnectiveTriple,
        expr: VagueExpr,
        cells: usize,
    ) -> Result<Self> {
        check_bound(&expr, |a| partition.block(a).is_some())?;
        let derived = if triple.preserves_pl() {
            MembershipFn::Exact(materialize(&partition, &triple, &expr)?)
        } else {
            let p = &partition;
            MembershipFn::Sampled(SampledFn::sample(p.domain(), cells, |x| {
                let j = judge(p, x).expect("sample nodes lie in the domain");
                eval_bound(&j, &triple, &expr)
            }))
        };
        Ok(FuzzySet {
            partition,
            expr,
            triple,
            derived,
        })
    }

    pub fn partition(&self) -> &Arc<VaguePartition> {
        &self.partition
    }

    pub fn expr(&self) -> &VagueExpr {
        &self.expr
    }

    pub fn triple(&self) -> &ConnectiveTriple {
        &self.triple
    }

    pub fn derived(&self) -> &MembershipFn {
        &self.derived
    }

    /// Degree of `x`, evaluated directly from the partition's judgement.
    pub fn membership(&self, x: f64) -> Result<f64> {
        let j = judge(&self.partition, x)?;
        Ok(eval_bound(&j, &self.triple, &self.expr))
    }

    fn same_space(&self, other: &FuzzySet) -> bool {
        (Arc::ptr_eq(&self.partition, &other.partition) || *self.partition == *other.partition)
            && self.triple == other.triple
    }

    /// Conjunction or disjunction of two fuzzy sets over the same partition
    /// and triple. Sets over different partitions cannot be combined.
    pub fn combine(&self, other: &FuzzySet, op: SetOp) -> Result<FuzzySet> {
        if !self.same_space(other) {
            return Err(Error::CrossPartition);
        }
        let (a, b) = (self.expr.clone(), other.expr.clone());
        let expr = match op {
            SetOp::And => VagueExpr::and(a, b),
            SetOp::Or => VagueExpr::or(a, b),
        };
        self.rederive(expr)
    }

    pub fn complement(&self) -> Result<FuzzySet> {
        self.rederive(VagueExpr::not(self.expr.clone()))
    }

    fn rederive(&self, expr: VagueExpr) -> Result<FuzzySet> {
        let cells = match &self.derived {
            MembershipFn::Sampled(s) => ((s.domain().width() / s.step()).round() as usize).max(1),
            MembershipFn::Exact(_) => DEFAULT_GRID_CELLS,
        };
        Self::derive_with_cells(self.partition.clone(), self.triple, expr, cells)
    }
}

fn materialize(p: &VaguePartition, t: &ConnectiveTriple, e: &VagueExpr) -> Result<PiecewiseLinearFn> {
    Ok(match e {
        VagueExpr::Bot => PiecewiseLinearFn::constant(p.domain(), 0.0)?,
        VagueExpr::Top => PiecewiseLinearFn::constant(p.domain(), 1.0)?,
        VagueExpr::Atom(a) => p
            .block(a)
            .cloned()
            .ok_or_else(|| Error::UnboundAtom(a.clone()))?,
        VagueExpr::Neg(c) => match c.as_ref() {
            VagueExpr::Neg(inner) => materialize(p, t, inner)?,
            _ => materialize(p, t, c)?.complement(),
        },
        VagueExpr::And(l, r) => {
            let op = match t.tnorm() {
                TNorm::Minimum => ExactOp::Min,
                TNorm::Lukasiewicz => ExactOp::LukasiewiczAnd,
                other => return Err(Error::Unsupported(format!("t-norm `{other}` is not piecewise linear"))),
            };
            materialize(p, t, l)?.combine(&materialize(p, t, r)?, op)?
        }
        VagueExpr::Or(l, r) => {
            let op = match t.tconorm() {
                TConorm::Maximum => ExactOp::Max,
                TConorm::BoundedSum => ExactOp::BoundedSum,
                other => return Err(Error::Unsupported(format!("t-conorm `{other}` is not piecewise linear"))),
            };
            materialize(p, t, l)?.combine(&materialize(p, t, r)?, op)?
        }
    })
}

/// A value computed over the whole domain, with the point attaining it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Quantity {
    pub value: f64,
    pub x: f64,
    pub exact: bool,
    /// Grid spacing when the value was found by sampling.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid_step: Option<f64>,
}

/// `⊕`-fold of the judgement at `x`, in block order.
pub fn sharpness(p: &VaguePartition, triple: &ConnectiveTriple, x: f64) -> Result<f64> {
    let j = judge(p, x)?;
    Ok(triple.tconorm().fold(j.degrees.values().copied()))
}

/// `1 - min_x sharpness(x)`. Exact for the maximum and bounded-sum
/// t-conorms; otherwise sampled on `cells` cells.
pub fn separation(p: &VaguePartition, triple: &ConnectiveTriple, cells: usize) -> Result<Quantity> {
    let exact_op = match triple.tconorm() {
        TConorm::Maximum => Some(ExactOp::Max),
        TConorm::BoundedSum => Some(ExactOp::BoundedSum),
        _ => None,
    };
    let blocks = p.blocks();
    let (min, exact, grid_step) = match exact_op {
        Some(op) => {
            let mut acc = blocks[0].function().clone();
            for b in &blocks[1..] {
                acc = acc.combine(b.function(), op)?;
            }
            (acc.extrema().min, true, None)
        }
        None => {
            let s = SampledFn::sample(p.domain(), cells, |x| {
                sharpness(p, triple, x).expect("sample nodes lie in the domain")
            });
            (s.extrema().min, false, Some(s.step()))
        }
    };
    Ok(Quantity {
        value: 1.0 - min.value,
        x: min.x,
        exact,
        grid_step,
    })
}

/// `max_x M_x(a ⊼ b)`.
pub fn consistent_degree(
    p: &Arc<VaguePartition>,
    triple: &ConnectiveTriple,
    a: &VagueExpr,
    b: &VagueExpr,
    cells: usize,
) -> Result<Quantity> {
    let fs = FuzzySet::derive_with_cells(p.clone(), *triple, VagueExpr::and(a.clone(), b.clone()), cells)?;
    let max = fs.derived().extrema().max;
    Ok(Quantity {
        value: max.value,
        x: max.x,
        exact: fs.derived().is_exact(),
        grid_step: fs.derived().grid_step(),
    })
}

/// Whether `a ⊼ b` has degree 0 everywhere.
pub fn incompatible(
    p: &Arc<VaguePartition>,
    triple: &ConnectiveTriple,
    a: &VagueExpr,
    b: &VagueExpr,
    cells: usize,
) -> Result<bool> {
    Ok(consistent_degree(p, triple, a, b, cells)?.value <= BOUNDARY_TOLERANCE)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn minmax() -> ConnectiveTriple {
        ConnectiveTriple::standard(TNorm::Minimum)
    }

    fn age() -> Judgement {
        Judgement::new(35.0, [("young", 0.6), ("old", 0.4)]).unwrap()
    }

    #[test]
    fn eval_examples() {
        let t = minmax();
        assert_eq!(eval_measure(&age(), &t, &parse("young | old").unwrap()).unwrap(), 0.6);
        assert_eq!(eval_measure(&age(), &t, &parse("!old").unwrap()).unwrap(), 0.6);
        assert_eq!(eval_measure(&age(), &t, &parse("top").unwrap()).unwrap(), 1.0);
        assert_eq!(eval_measure(&age(), &t, &parse("bot").unwrap()).unwrap(), 0.0);
        assert_eq!(eval_measure(&age(), &t, &parse("!!young").unwrap()).unwrap(), 0.6);
        match eval_measure(&age(), &t, &parse("young & giant").unwrap()) {
            Err(Error::UnboundAtom(a)) => assert_eq!(a, "giant"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn axiom_examples() {
        let r = check_axioms(&age(), &minmax());
        assert!(r.axiom1 && r.axiom5 && r.regular);
        assert!(!r.normal && !r.crisp);
        assert_eq!(r.residuals[0].value, 1.0);
        assert_eq!(r.residuals[1].value, 1.0);

        let crisp = Judgement::new(
            25.0,
            [("[0,40]", 1.0), ("(40,80]", 0.0), ("(80,120]", 0.0), ("(120,160]", 0.0), ("(160,200]", 0.0)],
        )
        .unwrap();
        let r = check_axioms(&crisp, &minmax());
        assert!(r.axiom1 && r.axiom5 && r.regular && r.normal && r.crisp);

        let heavy = Judgement::new(0.0, [("a", 0.9), ("b", 0.9)]).unwrap();
        let r = check_axioms(&heavy, &ConnectiveTriple::standard(TNorm::Lukasiewicz));
        assert!(!r.axiom5);
        assert_eq!(r.axiom5_witness.as_deref(), Some("a"));
        assert!((r.residuals[0].value - 1.8).abs() < 1e-12);

        let zero = Judgement::new(0.0, [("a", 0.0), ("b", 0.0)]).unwrap();
        let r = check_axioms(&zero, &minmax());
        assert!(!r.axiom1 && !r.axiom5);
    }

    #[test]
    fn judgement_rejects_bad_degrees() {
        assert!(Judgement::new(0.0, [("a", 1.5)]).is_err());
        assert!(Judgement::new(0.0, [("a", 0.5), ("a", 0.5)]).is_err());
        assert!(Judgement::new(0.0, Vec::<(String, f64)>::new()).is_err());
        let j: Judgement = serde_json::from_str(r#"{"x": 35, "degrees": {"young": 0.6, "old": 0.4}}"#).unwrap();
        assert_eq!(j, age());
        assert!(serde_json::from_str::<Judgement>(r#"{"x": 1, "degrees": {"a": 2}}"#).is_err());
    }
}
