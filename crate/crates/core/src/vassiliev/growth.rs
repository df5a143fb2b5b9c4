//! Growth of invariants along connected-sum powers.
//!
//! The sequences v(K # L^i) separate polynomial from exponential growth:
//! order-n invariants land on a degree-n polynomial in i, while derivative
//! evaluations away from the distinguished points grow like c^i times a
//! polynomial, with c the underlying polynomial value of the pattern knot.

use super::eval::{Evaluator, PolyFamily};
use super::InvariantDescriptor;
use crate::diagram::LinkDiagram;
use crate::error::{Error, Result};
use crate::poly::{finite_diff_degree, interp_grid, DegreeFit, LaurentPoly};
use crate::scalar::Scalar;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum GrowthVerdict {
    /// The sampled sequence matches a polynomial within the degree bound.
    ConsistentWithDegree(usize),
    /// Some forward difference up to the bound refused to vanish.
    ExceedsDegree(usize),
}

/// Informational fit of v_i against c^i * p(i) when polynomial growth
/// fails. `base` is the pattern knot's underlying polynomial value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExponentialFit {
    pub base: Scalar,
    pub quotient_fit: DegreeFit,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthReport {
    pub descriptor: String,
    pub degree_bound: usize,
    pub i_max: usize,
    /// v(K # L^i) for i = 0..=i_max.
    pub values: Vec<Scalar>,
    pub fit: DegreeFit,
    pub verdict: GrowthVerdict,
    /// Present only when the polynomial bound fails and the descriptor
    /// exposes an order-zero base value.
    pub exponential: Option<ExponentialFit>,
}

/// Outcome of checking the quotient law f^(m) at a point against a
/// degree-m polynomial in the connected-sum exponent.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum DerPolLaw {
    /// Coefficients c_0..c_m of the interpolated polynomial p, so that
    /// f^(m) on the i-th power equals f_L(a)^i * p(i) for all sampled i
    /// beyond the interpolation window.
    LawHolds { coefficients: Vec<Scalar> },
    LawFails { reason: String },
}

impl Evaluator {
    /// Sample v(base # pattern^i) for i = 0..=i_max and test the sequence
    /// against a polynomial of degree at most `degree`.
    ///
    /// Needs i_max >= degree + 2 so at least one difference row of order
    /// degree + 1 exists.
    pub fn growth_sequence(
        &self,
        v: &InvariantDescriptor,
        base: &LinkDiagram,
        pattern: &LinkDiagram,
        degree: usize,
        i_max: usize,
    ) -> Result<GrowthReport> {
        if i_max < degree + 2 {
            return Err(Error::TooFewValues {
                got: i_max + 1,
                need: degree + 3,
            });
        }
        let mut values = Vec::with_capacity(i_max + 1);
        let mut power = base.clone();
        for i in 0..=i_max {
            if i > 0 {
                power = power.connected_sum(pattern)?;
            }
            values.push(self.eval_invariant(v, &power)?);
        }
        let fit = finite_diff_degree(&values, degree, self.tol())?;
        let verdict = match fit {
            DegreeFit::FitsDegree(_) => GrowthVerdict::ConsistentWithDegree(degree),
            DegreeFit::Exceeds => GrowthVerdict::ExceedsDegree(degree),
        };
        let exponential = if fit == DegreeFit::Exceeds {
            self.exponential_fit(v, pattern, &values, degree)?
        } else {
            None
        };
        Ok(GrowthReport {
            descriptor: v.to_string(),
            degree_bound: degree,
            i_max,
            values,
            fit,
            verdict,
            exponential,
        })
    }

    fn exponential_fit(
        &self,
        v: &InvariantDescriptor,
        pattern: &LinkDiagram,
        values: &[Scalar],
        degree: usize,
    ) -> Result<Option<ExponentialFit>> {
        let Some(base_desc) = order_zero(v) else {
            return Ok(None);
        };
        let base = self.eval_invariant(&base_desc, pattern)?;
        if base.is_zero_within(self.tol()) {
            return Ok(None);
        }
        let mut quotients = Vec::with_capacity(values.len());
        for (i, val) in values.iter().enumerate() {
            let divided = val.div(&base.pow(i as i64)?)?;
            quotients.push(divided);
        }
        let quotient_fit = finite_diff_degree(&quotients, degree, self.tol())?;
        let residual = match quotient_fit {
            DegreeFit::FitsDegree(_) => 0.0,
            DegreeFit::Exceeds => top_difference_norm(&quotients, degree + 1),
        };
        Ok(Some(ExponentialFit {
            base,
            quotient_fit,
            residual,
        }))
    }

    /// Check the multiplicative quotient law for the m-th derivative of a
    /// polynomial family at a point: after dividing v_i = f^(m) on the
    /// i-th connected-sum power by f_L(at)^i, the quotients must lie on a
    /// polynomial of degree at most m for i > m.
    ///
    /// The polynomial is pinned on i = m+1..=2m+1 and verified on every
    /// later sampled index, so i_max >= 2m + 2 is required.
    pub fn derpol_check(
        &self,
        family: PolyFamily,
        pattern: &LinkDiagram,
        at: &Scalar,
        order: usize,
        i_max: usize,
    ) -> Result<DerPolLaw> {
        if i_max < 2 * order + 2 {
            return Err(Error::TooFewValues {
                got: i_max,
                need: 2 * order + 2,
            });
        }
        let base_poly = self.family_poly(family, pattern)?;
        let base = base_poly.evaluate(at)?;
        if base.is_zero_within(self.tol()) {
            return Ok(DerPolLaw::LawFails {
                reason: format!(
                    "{}({at}) = 0 on the pattern knot, the quotient law needs a nonzero base value",
                    family.name()
                ),
            });
        }
        let mut quotients = Vec::with_capacity(i_max + 1);
        let mut power = LinkDiagram::unknot();
        for i in 0..=i_max {
            if i > 0 {
                power = power.connected_sum(pattern)?;
            }
            let value = self
                .family_poly(family, &power)?
                .derivative(order as u32)
                .evaluate(at)?;
            quotients.push(value.div(&base.pow(i as i64)?)?);
        }
        let window = &quotients[order + 1..=2 * order + 1];
        let pinned = interp_grid("i", window)?;
        let p = shift_argument(&pinned, (order + 1) as i64);
        for (i, q) in quotients.iter().enumerate().skip(2 * order + 2) {
            let predicted = p.evaluate(&Scalar::int(i as i64))?;
            if !predicted.approx_eq(q, self.tol()) {
                return Ok(DerPolLaw::LawFails {
                    reason: format!("the interpolated law breaks at i = {i}"),
                });
            }
        }
        let coefficients = (0..=order).map(|j| p.coeff(2 * j as i64)).collect();
        Ok(DerPolLaw::LawHolds { coefficients })
    }
}

/// Strip the derivative orders off a leaf, giving the plain polynomial
/// value whose powers drive exponential growth. Composite descriptors
/// have no single base value.
fn order_zero(v: &InvariantDescriptor) -> Option<InvariantDescriptor> {
    use InvariantDescriptor::*;
    match v {
        JonesDeriv { at, .. } => Some(JonesDeriv {
            order: 0,
            at: at.clone(),
        }),
        AlexanderDeriv { at, .. } => Some(AlexanderDeriv {
            order: 0,
            at: at.clone(),
        }),
        ConwayDeriv { at, .. } => Some(ConwayDeriv {
            order: 0,
            at: at.clone(),
        }),
        QDeriv { at, .. } => Some(QDeriv {
            order: 0,
            at: at.clone(),
        }),
        HomflyDeriv { at_a, at_z, .. } => Some(HomflyDeriv {
            a_order: 0,
            z_order: 0,
            at_a: at_a.clone(),
            at_z: at_z.clone(),
        }),
        HomflyCoeffDeriv { coeff, at, .. } => Some(HomflyCoeffDeriv {
            coeff: *coeff,
            order: 0,
            at: at.clone(),
        }),
        KauffmanCoeffDeriv { coeff, at, .. } => Some(KauffmanCoeffDeriv {
            coeff: *coeff,
            order: 0,
            at: at.clone(),
        }),
        Scale(_, inner) => order_zero(inner),
        _ => None,
    }
}

/// Replace the argument: returns q(x - shift), for polynomials with
/// nonnegative integer exponents.
fn shift_argument(q: &LaurentPoly, shift: i64) -> LaurentPoly {
    let var = q.var_name();
    let mut lin = LaurentPoly::monomial(var, 2, Scalar::one());
    lin.add_term(0, Scalar::int(-shift));
    let mut out = LaurentPoly::zero(var);
    for (e2, c) in q.terms() {
        debug_assert!(e2 >= 0 && e2 % 2 == 0, "argument shift needs a plain polynomial");
        out = out.add(&lin.pow((e2 / 2) as u32).scale(c));
    }
    out
}

fn top_difference_norm(values: &[Scalar], order: usize) -> f64 {
    let mut row: Vec<Scalar> = values.to_vec();
    for _ in 0..order {
        if row.len() < 2 {
            return 0.0;
        }
        row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    row.iter()
        .map(|v| v.to_complex().norm())
        .fold(0.0, f64::max)
}
