//! Finite-order (Vassiliev) invariant tooling.
//!
//! The pieces fit together like this: [`InvariantDescriptor`] names a
//! numerical invariant; [`Evaluator`] computes it on knots and, through
//! alternating sums over crossing resolutions, on singular diagrams;
//! growth sequences along connected-sum powers separate polynomial from
//! exponential behavior; witness-point certificates rule out finite order
//! for derivative evaluations away from a small locus, which
//! [`Evaluator::homfly_locus`] computes per knot; and the composition
//! criterion transfers the verdicts through a change of variable given by
//! Taylor data.
//!
//! Certificates are one-sided by design: a negative verdict always ships
//! the witness data that justifies it, and anything the margins cannot
//! settle is reported as inconclusive rather than guessed.

mod criterion;
mod descriptor;
mod eval;
mod growth;
mod samples;

pub use criterion::{
    intersect_scalars, laurent_roots, CriterionOutcome, CriterionVerdict, LocusReport,
    TaylorCertificate, TaylorVerdict, WitnessEvaluation,
};
pub use descriptor::{parse_descriptor, parse_scalar_expr, InvariantDescriptor};
pub use eval::{DegreeBoundOutcome, Evaluator, PolyFamily};
pub use growth::{DerPolLaw, ExponentialFit, GrowthReport, GrowthVerdict};
pub use samples::{singular_samples, SingularSample};

use crate::diagram::LinkDiagram;
use crate::error::Result;
use crate::table::KnotTable;

/// The standard witness set for the point criteria: the three smallest
/// knots whose locus sets are known to intersect only at the obvious
/// points.
pub const DEFAULT_WITNESS_NAMES: [&str; 3] = ["3_1", "4_1", "6_1"];

/// Resolve the default witness knots from a table.
pub fn default_witnesses(table: &KnotTable) -> Result<Vec<(String, LinkDiagram)>> {
    DEFAULT_WITNESS_NAMES
        .iter()
        .map(|n| Ok((n.to_string(), table.resolve(n)?)))
        .collect()
}
