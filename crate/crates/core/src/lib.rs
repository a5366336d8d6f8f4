//! Vague partitions of real intervals, membership measures over the free
//! algebra of vague attribute values, and fuzzy sets derived from a
//! partition's blocks.
//!
//! The usual flow: load or build a [`VaguePartition`], [`judge`] an object
//! against it, evaluate [`VagueExpr`]s with a [`ConnectiveTriple`], derive
//! [`FuzzySet`]s, and [`invert`] degrees back to objects.

pub mod connectives;
pub mod error;
pub mod expr;
pub mod inverse;
pub mod measure;
pub mod partition;
pub mod plfunc;
pub mod specio;

pub use connectives::{check_duality, dual_of, ConnectiveTriple, DualityCheck, Negation, NegationClass, TConorm, TNorm};
pub use error::{Error, Result};
pub use expr::{parse, ParseError, VagueExpr};
pub use inverse::{invert, invert_approx, Inversion, TargetPair, TargetVector};
pub use measure::{
    check_axioms, consistent_degree, eval_measure, incompatible, judge, separation, sharpness, FuzzySet, Judgement,
    MembershipSpaceReport, Quantity, SetOp,
};
pub use partition::{
    random_irregular_partition, random_partition, validate_partition, PartitionCandidate, ValidationReport,
    VaguePartition, Witness,
};
pub use plfunc::{
    Component, ExactOp, Interval, LevelSet, MembershipFn, PiecewiseLinearFn, SampledFn, BOUNDARY_TOLERANCE,
};
pub use specio::{load_partition, load_partition_str, save_partition, LoadError, PartitionDocument, ReportDocument};
