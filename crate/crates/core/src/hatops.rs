//! Polynomial-valued invariants from connected-sum grids.
//!
//! A Vassiliev invariant of degree n restricted to connected-sum powers
//! K^i is a polynomial in i of degree at most n, so sampling at
//! i = 0..=n pins down a unique interpolant. The bar operation walks
//! v(L # K^i), the star operation walks v(K # L^i), and the hat
//! operation walks a full tensor grid v(K^{i_0} # L_1^{i_1} # ...),
//! one variable per axis. Each returns the interpolant together with
//! the raw grid so the result can be audited.
//!
//! The module also carries exact rank tooling over evaluation matrices,
//! enough to check independence and basis claims for the finite-degree
//! invariant spaces on concrete knot samples.

use crate::diagram::LinkDiagram;
use crate::error::{Error, Result};
use crate::poly::{interp_grid, interp_multigrid, LaurentPoly, MultiPoly};
use crate::scalar::Scalar;
use crate::table::KnotTableEntry;
use crate::vassiliev::{Evaluator, InvariantDescriptor};
use serde::Serialize;
use std::fmt;

/// Which grid family a [`HatResult`] interpolated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HatOperation {
    Bar,
    Star,
    Hat,
}

/// Interpolant through a grid: one variable for bar and star, one per
/// axis for hat.
#[derive(Debug, Clone, PartialEq)]
pub enum HatPolynomial {
    Single(LaurentPoly),
    Multi(MultiPoly),
}

impl HatPolynomial {
    /// Evaluate at one scalar per grid axis.
    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar> {
        match self {
            HatPolynomial::Single(p) => {
                if point.len() != 1 {
                    return Err(Error::IndexOutOfRange {
                        index: point.len(),
                        len: 1,
                    });
                }
                p.evaluate(&point[0])
            }
            HatPolynomial::Multi(p) => p.evaluate(point),
        }
    }

    /// Degree in the variable of axis `idx`. Interpolants never carry
    /// negative exponents.
    pub fn degree_in(&self, idx: usize) -> u32 {
        match self {
            HatPolynomial::Single(p) => {
                debug_assert_eq!(idx, 0);
                p.max_exp2().map(|e2| (e2 / 2) as u32).unwrap_or(0)
            }
            HatPolynomial::Multi(p) => p.degree_in(idx),
        }
    }
}

impl fmt::Display for HatPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HatPolynomial::Single(p) => p.fmt(f),
            HatPolynomial::Multi(p) => p.fmt(f),
        }
    }
}

impl Serialize for HatPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A polynomial-valued invariant, kept with the data that produced it.
///
/// Invariants: re-evaluating `polynomial` at every grid point
/// reproduces `grid`, and no variable exceeds degree `degree`. Both are
/// checked by [`HatResult::is_consistent`].
#[derive(Debug, Clone, Serialize)]
pub struct HatResult {
    pub operation: HatOperation,
    /// Canonical text of the interpolated descriptor.
    pub descriptor: String,
    /// Declared degree bound; every grid axis runs 0..=degree.
    pub degree: usize,
    /// The knot argument K.
    pub knot: String,
    /// Pattern knots: the fixed summand (bar), the powered generator
    /// (star), or one generator per extra axis (hat).
    pub patterns: Vec<String>,
    /// One variable name per grid axis.
    pub variables: Vec<String>,
    /// Raw values, row-major with the first axis slowest.
    pub grid: Vec<Scalar>,
    pub polynomial: HatPolynomial,
}

impl HatResult {
    /// Check the declared invariants: grid shape, per-variable degree
    /// bounds, and that the interpolant reproduces every raw value
    /// (structurally for exact scalars, within `tol` otherwise).
    pub fn is_consistent(&self, tol: f64) -> bool {
        let n = self.degree;
        let axes = self.variables.len();
        let Some(expected) = (n + 1).checked_pow(axes as u32) else {
            return false;
        };
        if self.grid.len() != expected {
            return false;
        }
        if (0..axes).any(|i| self.polynomial.degree_in(i) as usize > n) {
            return false;
        }
        for (flat, want) in self.grid.iter().enumerate() {
            let mut point = Vec::with_capacity(axes);
            let mut rem = flat;
            let mut stride = expected;
            for _ in 0..axes {
                stride /= n + 1;
                point.push(Scalar::int((rem / stride) as i64));
                rem %= stride;
            }
            let Ok(got) = self.polynomial.evaluate(&point) else {
                return false;
            };
            let same = if got.is_exact() && want.is_exact() {
                got == *want
            } else {
                got.approx_eq(want, tol)
            };
            if !same {
                return false;
            }
        }
        true
    }
}

/// Exact evaluation matrix of invariants against knots, with its rank.
#[derive(Debug, Clone, Serialize)]
pub struct RankReport {
    /// Canonical descriptor texts, one per column.
    pub invariants: Vec<String>,
    /// Knot names, one per row.
    pub knots: Vec<String>,
    /// matrix[i][j] = invariant j evaluated on knot i.
    pub matrix: Vec<Vec<Scalar>>,
    pub rank: usize,
    /// Lexicographically first maximal independent set of column
    /// indices.
    pub independent: Vec<usize>,
}

impl Evaluator {
    /// Interpolate v(L # K^i) for i = 0..=n in the variable x. With L
    /// the unknot the result at x = 1 is v(K).
    pub fn bar_op(
        &self,
        v: &InvariantDescriptor,
        n: usize,
        l: &KnotTableEntry,
        k: &KnotTableEntry,
    ) -> Result<HatResult> {
        self.check_grid(n + 1)?;
        let grid = self.power_line(v, n, &l.diagram, &k.diagram)?;
        let polynomial = HatPolynomial::Single(interp_grid("x", &grid)?);
        Ok(HatResult {
            operation: HatOperation::Bar,
            descriptor: v.to_string(),
            degree: n,
            knot: k.name.clone(),
            patterns: vec![l.name.clone()],
            variables: vec!["x".to_string()],
            grid,
            polynomial,
        })
    }

    /// Interpolate v(K # L^i) for i = 0..=n in the variable x. The
    /// result at x = 0 is always v(K).
    pub fn star_op(
        &self,
        v: &InvariantDescriptor,
        n: usize,
        l: &KnotTableEntry,
        k: &KnotTableEntry,
    ) -> Result<HatResult> {
        self.check_grid(n + 1)?;
        let grid = self.power_line(v, n, &k.diagram, &l.diagram)?;
        let polynomial = HatPolynomial::Single(interp_grid("x", &grid)?);
        Ok(HatResult {
            operation: HatOperation::Star,
            descriptor: v.to_string(),
            degree: n,
            knot: k.name.clone(),
            patterns: vec![l.name.clone()],
            variables: vec!["x".to_string()],
            grid,
            polynomial,
        })
    }

    /// Interpolate v(K^{i_0} # L_1^{i_1} # ... # L_k^{i_k}) over the
    /// full grid {0..=n}^{k+1} in variables x_0..x_k. The grid has
    /// (n+1)^{k+1} points and is refused beyond the configured budget.
    pub fn hat_op(
        &self,
        v: &InvariantDescriptor,
        n: usize,
        k: &KnotTableEntry,
        patterns: &[KnotTableEntry],
    ) -> Result<HatResult> {
        let axes = patterns.len() + 1;
        let points = (n + 1)
            .checked_pow(axes as u32)
            .ok_or(Error::GridBudgetExceeded {
                points: usize::MAX,
                budget: self.max_grid_points(),
            })?;
        self.check_grid(points)?;
        let steps: Vec<&LinkDiagram> = std::iter::once(&k.diagram)
            .chain(patterns.iter().map(|p| &p.diagram))
            .collect();
        let mut grid = Vec::with_capacity(points);
        self.fill_grid(v, n, &LinkDiagram::unknot(), &steps, &mut grid)?;
        let variables: Vec<String> = (0..axes).map(|i| format!("x_{i}")).collect();
        let polynomial = HatPolynomial::Multi(interp_multigrid(&variables, n, &grid)?);
        Ok(HatResult {
            operation: HatOperation::Hat,
            descriptor: v.to_string(),
            degree: n,
            knot: k.name.clone(),
            patterns: patterns.iter().map(|p| p.name.clone()).collect(),
            variables,
            grid,
            polynomial,
        })
    }

    /// Evaluate every descriptor on every knot and compute the exact
    /// column rank of the resulting matrix. All entries must come out
    /// exact; the first descriptor that evaluates approximately is
    /// reported in the error.
    pub fn rank_report(
        &self,
        invariants: &[InvariantDescriptor],
        knots: &[KnotTableEntry],
    ) -> Result<RankReport> {
        if invariants.is_empty() || knots.is_empty() {
            return Err(Error::TooFewValues { got: 0, need: 1 });
        }
        let mut matrix = Vec::with_capacity(knots.len());
        for k in knots {
            let mut row = Vec::with_capacity(invariants.len());
            for v in invariants {
                let value = self.eval_invariant(v, &k.diagram)?;
                if !value.is_exact() {
                    return Err(Error::RankNeedsExact(v.to_string()));
                }
                row.push(value);
            }
            matrix.push(row);
        }
        let independent = independent_columns(&matrix)?;
        Ok(RankReport {
            invariants: invariants.iter().map(|v| v.to_string()).collect(),
            knots: knots.iter().map(|k| k.name.clone()).collect(),
            rank: independent.len(),
            independent,
            matrix,
        })
    }

    fn check_grid(&self, points: usize) -> Result<()> {
        let budget = self.max_grid_points();
        if points > budget {
            return Err(Error::GridBudgetExceeded { points, budget });
        }
        Ok(())
    }

    /// v(base # step^i) for i = 0..=n, built by summing one copy of
    /// step at a time.
    fn power_line(
        &self,
        v: &InvariantDescriptor,
        n: usize,
        base: &LinkDiagram,
        step: &LinkDiagram,
    ) -> Result<Vec<Scalar>> {
        let mut values = Vec::with_capacity(n + 1);
        let mut cur = base.clone();
        values.push(self.eval_invariant(v, &cur)?);
        for _ in 1..=n {
            cur = cur.connected_sum(step)?;
            values.push(self.eval_invariant(v, &cur)?);
        }
        Ok(values)
    }

    /// Depth-first walk of the tensor grid, one axis per level, powers
    /// ascending, so output order is row-major with axis 0 slowest.
    fn fill_grid(
        &self,
        v: &InvariantDescriptor,
        n: usize,
        acc: &LinkDiagram,
        steps: &[&LinkDiagram],
        out: &mut Vec<Scalar>,
    ) -> Result<()> {
        let Some((step, rest)) = steps.split_first() else {
            out.push(self.eval_invariant(v, acc)?);
            return Ok(());
        };
        let mut cur = acc.clone();
        self.fill_grid(v, n, &cur, rest, out)?;
        for _ in 1..=n {
            cur = cur.connected_sum(step)?;
            self.fill_grid(v, n, &cur, rest, out)?;
        }
        Ok(())
    }
}

/// Greedy left-to-right elimination over exact scalars. Each column is
/// reduced against the pivots found so far and kept iff a nonzero
/// entry survives; greedy selection yields the lexicographically first
/// maximal independent subset. Division of exact scalars is exact, so
/// no tolerance enters.
fn independent_columns(matrix: &[Vec<Scalar>]) -> Result<Vec<usize>> {
    let rows = matrix.len();
    let cols = matrix[0].len();
    // (pivot row, reduced column): unit at the pivot row, zero at the
    // pivot rows of all earlier pivots.
    let mut pivots: Vec<(usize, Vec<Scalar>)> = Vec::new();
    let mut independent = Vec::new();
    for j in 0..cols {
        let mut col: Vec<Scalar> = (0..rows).map(|i| matrix[i][j].clone()).collect();
        for (prow, pcol) in &pivots {
            let f = col[*prow].clone();
            if f.is_zero() {
                continue;
            }
            for (c, p) in col.iter_mut().zip(pcol) {
                *c = &*c - &(&f * p);
            }
        }
        if let Some(p) = (0..rows).find(|&i| !col[i].is_zero()) {
            let lead = col[p].clone();
            for c in col.iter_mut() {
                *c = c.div(&lead)?;
            }
            pivots.push((p, col));
            independent.push(j);
        }
    }
    Ok(independent)
}
