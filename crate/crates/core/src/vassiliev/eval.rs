//! Descriptor evaluation on knots and on diagrams with double points.

use super::InvariantDescriptor;
use crate::diagram::{LinkDiagram, SingularDiagram};
use crate::error::{Error, Result};
use crate::poly::LaurentPoly;
use crate::scalar::Scalar;
use crate::skein::{SkeinConfig, SkeinEngine};
use serde::{Deserialize, Serialize};

/// The one-variable polynomial families the growth and composition
/// criteria quantify over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolyFamily {
    Jones,
    Conway,
    Alexander,
    Q,
}

impl PolyFamily {
    pub fn name(self) -> &'static str {
        match self {
            PolyFamily::Jones => "jones",
            PolyFamily::Conway => "conway",
            PolyFamily::Alexander => "alexander",
            PolyFamily::Q => "q",
        }
    }

    pub fn parse(name: &str) -> Result<PolyFamily> {
        match name {
            "jones" => Ok(PolyFamily::Jones),
            "conway" => Ok(PolyFamily::Conway),
            "alexander" => Ok(PolyFamily::Alexander),
            "q" => Ok(PolyFamily::Q),
            other => Err(Error::Syntax {
                pos: 0,
                msg: format!("unknown polynomial family '{other}'"),
            }),
        }
    }
}

/// Outcome of probing an order bound with singular evaluations.
///
/// `AllVanish` is evidence, not proof: it says every probed alternating
/// sum was zero, nothing more.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum DegreeBoundOutcome {
    AllVanish,
    Counterexample { sample_index: usize, value: Scalar },
}

/// Evaluates descriptors against a shared skein engine, so polynomial
/// work is cached across calls on the same diagrams.
pub struct Evaluator {
    engine: SkeinEngine,
    max_double_points: usize,
    grid_budget: usize,
    tol: f64,
}

impl Default for Evaluator {
    fn default() -> Self {
        Evaluator::new(SkeinEngine::new(SkeinConfig::default()))
    }
}

impl Evaluator {
    pub fn new(engine: SkeinEngine) -> Self {
        Evaluator {
            engine,
            max_double_points: 12,
            grid_budget: 1024,
            tol: 1e-9,
        }
    }

    pub fn with_config(config: SkeinConfig) -> Self {
        Evaluator::new(SkeinEngine::new(config))
    }

    /// Cap on double points per singular evaluation; each one doubles the
    /// number of resolutions.
    pub fn max_double_points(mut self, bound: usize) -> Self {
        self.max_double_points = bound;
        self
    }

    /// Cap on evaluation points per interpolation grid.
    pub fn grid_budget(mut self, budget: usize) -> Self {
        self.grid_budget = budget;
        self
    }

    /// Tolerance for zero tests on approximate values. Exact values are
    /// always decided structurally.
    pub fn tolerance(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn engine(&self) -> &SkeinEngine {
        &self.engine
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn max_grid_points(&self) -> usize {
        self.grid_budget
    }

    /// Evaluate a descriptor on a knot diagram. Exact points give exact
    /// values; the result is approximate only when the descriptor carries
    /// an approximate evaluation point.
    pub fn eval_invariant(&self, v: &InvariantDescriptor, k: &LinkDiagram) -> Result<Scalar> {
        if !k.is_knot() {
            return Err(Error::NotAKnot(format!(
                "invariant evaluation needs a knot, got {} components",
                k.component_count()
            )));
        }
        self.eval_leafwise(v, k)
    }

    fn eval_leafwise(&self, v: &InvariantDescriptor, k: &LinkDiagram) -> Result<Scalar> {
        use InvariantDescriptor::*;
        match v {
            Const(c) => Ok(c.clone()),
            ConwayCoeff(idx) => Ok(self.engine.conway(k)?.coeff(2 * i64::from(*idx))),
            JonesDeriv { order, at } => deriv_at(self.engine.jones(k)?, *order, at),
            AlexanderDeriv { order, at } => deriv_at(self.engine.alexander(k)?, *order, at),
            ConwayDeriv { order, at } => deriv_at(self.engine.conway(k)?, *order, at),
            QDeriv { order, at } => deriv_at(self.engine.qpoly(k)?, *order, at),
            HomflyDeriv {
                a_order,
                z_order,
                at_a,
                at_z,
            } => self
                .engine
                .homfly(k)?
                .derivative("a", *a_order)?
                .derivative("z", *z_order)?
                .evaluate(at_a, at_z),
            HomflyCoeffDeriv { coeff, order, at } => {
                deriv_at(self.engine.homfly_coeff(k, i64::from(*coeff))?, *order, at)
            }
            KauffmanCoeffDeriv { coeff, order, at } => deriv_at(
                self.engine.kauffman_coeff(k, i64::from(*coeff))?,
                *order,
                at,
            ),
            Sum(parts) => {
                let mut acc = Scalar::zero();
                for p in parts {
                    acc = &acc + &self.eval_leafwise(p, k)?;
                }
                Ok(acc)
            }
            Product(parts) => {
                let mut acc = Scalar::one();
                for p in parts {
                    acc = &acc * &self.eval_leafwise(p, k)?;
                }
                Ok(acc)
            }
            Scale(c, inner) => Ok(c * &self.eval_leafwise(inner, k)?),
        }
    }

    /// Alternating sum over all sign resolutions of the double points:
    /// positive resolutions count +, each negative resolution flips the
    /// sign. With no double points this is plain evaluation.
    pub fn eval_singular(&self, v: &InvariantDescriptor, s: &SingularDiagram) -> Result<Scalar> {
        let points: Vec<usize> = s.double_points().collect();
        if points.len() > self.max_double_points {
            return Err(Error::TooManyDoublePoints {
                points: points.len(),
                bound: self.max_double_points,
            });
        }
        let mut acc = Scalar::zero();
        for mask in 0u64..(1u64 << points.len()) {
            let mut current = s.clone();
            let mut negatives = 0u32;
            for (bit, &idx) in points.iter().enumerate() {
                let sign = if mask & (1 << bit) == 0 {
                    1
                } else {
                    negatives += 1;
                    -1
                };
                current = current.resolve(idx, sign)?;
            }
            let value = self.eval_invariant(v, current.base())?;
            acc = if negatives % 2 == 0 {
                &acc + &value
            } else {
                &acc - &value
            };
        }
        Ok(acc)
    }

    /// Probe "vanishes on all diagrams with `bound + 1` double points".
    /// Every sample should carry exactly `bound + 1` double points; the
    /// first nonvanishing alternating sum is returned as a counterexample.
    pub fn degree_bound_test(
        &self,
        v: &InvariantDescriptor,
        bound: usize,
        samples: &[SingularDiagram],
    ) -> Result<DegreeBoundOutcome> {
        for (i, s) in samples.iter().enumerate() {
            debug_assert_eq!(
                s.num_double_points(),
                bound + 1,
                "sample {i} does not probe order {bound}"
            );
            let value = self.eval_singular(v, s)?;
            if !value.is_zero_within(self.tol) {
                return Ok(DegreeBoundOutcome::Counterexample {
                    sample_index: i,
                    value,
                });
            }
        }
        Ok(DegreeBoundOutcome::AllVanish)
    }

    /// The named one-variable polynomial of a diagram.
    pub fn family_poly(&self, family: PolyFamily, k: &LinkDiagram) -> Result<LaurentPoly> {
        match family {
            PolyFamily::Jones => self.engine.jones(k),
            PolyFamily::Conway => self.engine.conway(k),
            PolyFamily::Alexander => self.engine.alexander(k),
            PolyFamily::Q => self.engine.qpoly(k),
        }
    }
}

fn deriv_at(p: LaurentPoly, order: u32, at: &Scalar) -> Result<Scalar> {
    p.derivative(order).evaluate(at)
}
