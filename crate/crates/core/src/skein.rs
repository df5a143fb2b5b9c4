//! Skein-recursion engines for the two-variable link polynomials and the
//! one-variable specializations obtained from them by substitution.
//!
//! Conventions, pinned by the golden tests:
//! - HOMFLY: a·P(D₊) − a⁻¹·P(D₋) = z·P(D₀), P(unknot) = 1, so a descending
//!   diagram with c components evaluates to ((a − a⁻¹)/z)^(c−1).
//! - Kauffman: Λ(D₊) + Λ(D₋) = x·(Λ(D₀) + Λ(D∞)) on unoriented diagrams,
//!   Λ(curl±) = a^(±1)·Λ, Λ(unknot) = 1, and F(D) = a^(−w(D))·Λ(D) with w
//!   the writhe of the oriented input.
//!
//! Both recursions branch at the first crossing met on its under-strand
//! while walking components from their smallest edge label. Switching that
//! crossing lowers the count of such crossings and smoothing lowers the
//! crossing count, so the recursion terminates; descending diagrams are the
//! base case.

use crate::diagram::{LinkDiagram, Shadow, SmoothKind, SmoothMode};
use crate::error::{Error, Result};
use crate::poly::{LaurentPoly, LaurentPoly2, SubstRule};
use crate::scalar::Scalar;
use std::collections::HashMap;
use std::sync::Mutex;

#[derive(Debug, Clone)]
pub struct SkeinConfig {
    /// Largest input crossing count accepted by the engine.
    pub max_crossings: usize,
    /// Share skein subtrees through canonically relabeled diagram codes.
    pub use_memo: bool,
    /// Reduce diagrams with Reidemeister I/II moves before branching.
    pub use_simplify: bool,
}

impl Default for SkeinConfig {
    fn default() -> Self {
        SkeinConfig {
            max_crossings: 16,
            use_memo: true,
            use_simplify: true,
        }
    }
}

/// Memoizing polynomial engine. Cheap to share; all methods take `&self`
/// and may run concurrently.
#[derive(Debug, Default)]
pub struct SkeinEngine {
    config: SkeinConfig,
    homfly_cache: Mutex<HashMap<Vec<u32>, LaurentPoly2>>,
    lambda_cache: Mutex<HashMap<Vec<u32>, LaurentPoly2>>,
}

/// (a − a⁻¹)/z, the value a split union adds as a factor.
fn homfly_delta() -> LaurentPoly2 {
    let mut d = LaurentPoly2::zero("a", "z");
    d.add_term(2, -2, Scalar::one());
    d.add_term(-2, -2, Scalar::int(-1));
    d
}

/// (a + a⁻¹)/x − 1, its unoriented counterpart.
fn kauffman_delta() -> LaurentPoly2 {
    let mut d = LaurentPoly2::zero("a", "x");
    d.add_term(2, -2, Scalar::one());
    d.add_term(-2, -2, Scalar::one());
    d.add_term(0, 0, Scalar::int(-1));
    d
}

impl SkeinEngine {
    pub fn new(config: SkeinConfig) -> Self {
        SkeinEngine {
            config,
            ..SkeinEngine::default()
        }
    }

    pub fn config(&self) -> &SkeinConfig {
        &self.config
    }

    fn check_size(&self, d: &LinkDiagram) -> Result<()> {
        if d.num_crossings() > self.config.max_crossings {
            return Err(Error::DiagramTooLarge {
                crossings: d.num_crossings(),
                bound: self.config.max_crossings,
            });
        }
        Ok(())
    }

    pub fn homfly(&self, d: &LinkDiagram) -> Result<LaurentPoly2> {
        self.check_size(d)?;
        let p = self.homfly_rec(d.clone());
        if d.is_knot() {
            debug_assert!(
                p.terms().all(|((e0, e1), _)| e0 % 4 == 0 && e1 % 4 == 0 && e1 >= 0)
                    && p.has_integer_coefficients(),
                "knot HOMFLY left Z[a^±2, z²]: {p}"
            );
        }
        Ok(p)
    }

    fn homfly_rec(&self, d: LinkDiagram) -> LaurentPoly2 {
        let d = if self.config.use_simplify {
            d.simplify()
        } else {
            d
        };
        let key = self.config.use_memo.then(|| d.canonical_key());
        if let Some(k) = &key {
            if let Some(hit) = self.homfly_cache.lock().unwrap().get(k) {
                return hit.clone();
            }
        }
        let val = match d.first_ascending() {
            None => homfly_delta().pow(d.component_count() - 1),
            Some(idx) => {
                let switched = self
                    .homfly_rec(d.switch_crossing(idx).expect("branch index in range"));
                let smoothed = self.homfly_rec(
                    d.smooth_crossing(idx, SmoothMode::Oriented)
                        .expect("branch index in range"),
                );
                let one = Scalar::one();
                if d.sign(idx).expect("branch index in range") > 0 {
                    // P₊ = a⁻²·P₋ + a⁻¹z·P₀
                    switched
                        .mul_monomial(-4, 0, &one)
                        .add(&smoothed.mul_monomial(-2, 2, &one))
                } else {
                    // P₋ = a²·P₊ − a·z·P₀
                    switched
                        .mul_monomial(4, 0, &one)
                        .sub(&smoothed.mul_monomial(2, 2, &one))
                }
            }
        };
        if let Some(k) = key {
            self.homfly_cache.lock().unwrap().insert(k, val.clone());
        }
        val
    }

    pub fn kauffman(&self, d: &LinkDiagram) -> Result<LaurentPoly2> {
        self.check_size(d)?;
        let lambda = self.lambda_rec(d.shadow());
        let f = lambda.mul_monomial(-2 * d.writhe(), 0, &Scalar::one());
        if d.is_knot() {
            debug_assert!(
                f.terms().all(|((e0, e1), _)| e0 % 2 == 0 && e1 % 2 == 0 && e1 >= 0)
                    && f.has_integer_coefficients(),
                "knot Kauffman left Z[a^±1, x]: {f}"
            );
        }
        Ok(f)
    }

    fn lambda_rec(&self, s: Shadow) -> LaurentPoly2 {
        let (s, curls) = if self.config.use_simplify {
            s.simplify()
        } else {
            (s, 0)
        };
        let key = self.config.use_memo.then(|| s.canonical_key());
        let cached = key
            .as_ref()
            .and_then(|k| self.lambda_cache.lock().unwrap().get(k).cloned());
        let val = cached.unwrap_or_else(|| {
            let oriented = s.orient();
            let val = match oriented.first_ascending() {
                None => {
                    // Descending diagrams split, so Λ = a^w·δ^(c−1) with w
                    // the writhe of the (orientation-independent) pieces.
                    let delta = kauffman_delta().pow(s.component_count() - 1);
                    delta.mul_monomial(2 * oriented.writhe(), 0, &Scalar::one())
                }
                Some(idx) => {
                    let zero = self.lambda_rec(s.smooth(idx, SmoothKind::Zero).unwrap());
                    let inf = self.lambda_rec(s.smooth(idx, SmoothKind::Infinity).unwrap());
                    let switched = self.lambda_rec(s.switch(idx).unwrap());
                    zero.add(&inf)
                        .mul_monomial(0, 2, &Scalar::one())
                        .sub(&switched)
                }
            };
            if let Some(k) = key {
                self.lambda_cache.lock().unwrap().insert(k, val.clone());
            }
            val
        });
        val.mul_monomial(2 * curls, 0, &Scalar::one())
    }

    /// J(t) = P(t, t^{1/2} − t^{−1/2}).
    pub fn jones(&self, d: &LinkDiagram) -> Result<LaurentPoly> {
        self.homfly(d)?
            .substitute([&SubstRule::Var { e2: 2 }, &SubstRule::SqrtDiff], "t")
    }

    /// ∇(z) = P(1, z).
    pub fn conway(&self, d: &LinkDiagram) -> Result<LaurentPoly> {
        self.homfly(d)?.substitute(
            [&SubstRule::Constant(Scalar::one()), &SubstRule::Var { e2: 2 }],
            "z",
        )
    }

    /// Δ(t) = P(1, t^{1/2} − t^{−1/2}).
    pub fn alexander(&self, d: &LinkDiagram) -> Result<LaurentPoly> {
        self.homfly(d)?.substitute(
            [&SubstRule::Constant(Scalar::one()), &SubstRule::SqrtDiff],
            "t",
        )
    }

    /// Q(x) = F(1, x).
    pub fn qpoly(&self, d: &LinkDiagram) -> Result<LaurentPoly> {
        self.kauffman(d)?.substitute(
            [&SubstRule::Constant(Scalar::one()), &SubstRule::Var { e2: 2 }],
            "x",
        )
    }

    /// The coefficient of z^k in P as a polynomial in a.
    pub fn homfly_coeff(&self, d: &LinkDiagram, k: i64) -> Result<LaurentPoly> {
        Ok(self.homfly(d)?.coeff_of_second(2 * k))
    }

    /// The coefficient of x^k in F as a polynomial in a.
    pub fn kauffman_coeff(&self, d: &LinkDiagram, k: i64) -> Result<LaurentPoly> {
        Ok(self.kauffman(d)?.coeff_of_second(2 * k))
    }

    /// Maximal z-degree of the Conway polynomial; 0 for the unknot.
    pub fn conway_degree(&self, d: &LinkDiagram) -> Result<i64> {
        Ok(self.conway(d)?.max_exp2().map_or(0, |e| e / 2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::KnotTable;

    fn knot(name: &str) -> LinkDiagram {
        KnotTable::bundled().get(name).unwrap().diagram.clone()
    }

    fn poly2(vars: (&str, &str), terms: &[(i64, i64, i64)]) -> LaurentPoly2 {
        let mut p = LaurentPoly2::zero(vars.0, vars.1);
        for &(e0, e1, c) in terms {
            p.add_term(2 * e0, 2 * e1, Scalar::int(c));
        }
        p
    }

    fn poly1(var: &str, terms: &[(i64, i64)]) -> LaurentPoly {
        let mut p = LaurentPoly::zero(var);
        for &(e, c) in terms {
            p.add_term(2 * e, Scalar::int(c));
        }
        p
    }

    #[test]
    fn unknot_maps_to_one() {
        let eng = SkeinEngine::default();
        let u = LinkDiagram::unknot();
        assert_eq!(eng.homfly(&u).unwrap(), LaurentPoly2::one("a", "z"));
        assert_eq!(eng.kauffman(&u).unwrap(), LaurentPoly2::one("a", "x"));
        assert_eq!(eng.jones(&u).unwrap(), LaurentPoly::one("t"));
    }

    #[test]
    fn split_union_evaluates_to_delta() {
        let eng = SkeinEngine::default();
        let two = LinkDiagram::from_quadruples(vec![], 2).unwrap();
        assert_eq!(eng.homfly(&two).unwrap(), homfly_delta());
        assert_eq!(eng.kauffman(&two).unwrap(), kauffman_delta());
    }

    #[test]
    fn trefoil_homfly_matches_golden_value() {
        let eng = SkeinEngine::default();
        let p = eng.homfly(&knot("3_1")).unwrap();
        let expected = poly2(("a", "z"), &[(-4, 0, -1), (-2, 0, 2), (-2, 2, 1)]);
        assert_eq!(p, expected);
        assert_eq!(p.to_string(), "-1*a^-4 + 2*a^-2 + 1*a^-2*z^2");
    }

    #[test]
    fn figure_eight_homfly_matches_golden_value() {
        let eng = SkeinEngine::default();
        let p = eng.homfly(&knot("4_1")).unwrap();
        let expected = poly2(("a", "z"), &[(-2, 0, 1), (0, 0, -1), (2, 0, 1), (0, 2, -1)]);
        assert_eq!(p, expected);
    }

    #[test]
    fn positive_hopf_homfly() {
        let eng = SkeinEngine::default();
        let hopf = LinkDiagram::parse_pd("X[1,3,4,2] X[3,1,2,4]").unwrap();
        let p = eng.homfly(&hopf).unwrap();
        let expected = poly2(("a", "z"), &[(-1, -1, 1), (-3, -1, -1), (-1, 1, 1)]);
        assert_eq!(p, expected);
    }

    #[test]
    fn jones_and_conway_of_small_knots() {
        let eng = SkeinEngine::default();
        assert_eq!(
            eng.jones(&knot("3_1")).unwrap(),
            poly1("t", &[(-4, -1), (-3, 1), (-1, 1)])
        );
        assert_eq!(
            eng.conway(&knot("4_1")).unwrap(),
            poly1("z", &[(0, 1), (2, -1)])
        );
        assert_eq!(
            eng.conway(&knot("3_1")).unwrap(),
            poly1("z", &[(0, 1), (2, 1)])
        );
        assert_eq!(eng.conway_degree(&knot("3_1")).unwrap(), 2);
        assert_eq!(
            eng.conway_degree(&LinkDiagram::unknot()).unwrap(),
            0
        );
    }

    #[test]
    fn alexander_detects_the_determinant() {
        let eng = SkeinEngine::default();
        // |Δ(−1)| is the knot determinant: 3 for the trefoil, 5 for 4_1.
        let d3 = eng
            .alexander(&knot("3_1"))
            .unwrap()
            .evaluate(&Scalar::int(-1))
            .unwrap();
        assert!(d3 == Scalar::int(3) || d3 == Scalar::int(-3));
        let d4 = eng
            .alexander(&knot("4_1"))
            .unwrap()
            .evaluate(&Scalar::int(-1))
            .unwrap();
        assert!(d4 == Scalar::int(5) || d4 == Scalar::int(-5));
    }

    #[test]
    fn q_polynomial_identities() {
        let eng = SkeinEngine::default();
        for name in ["3_1", "4_1"] {
            let q = eng.qpoly(&knot(name)).unwrap();
            assert_eq!(q.evaluate(&Scalar::one()).unwrap(), Scalar::one());
            // Q'(−2) equals J''(1).
            let qd = q.derivative(1).evaluate(&Scalar::int(-2)).unwrap();
            let jdd = eng
                .jones(&knot(name))
                .unwrap()
                .derivative(2)
                .evaluate(&Scalar::one())
                .unwrap();
            assert_eq!(qd, jdd);
        }
        let j2 = eng
            .jones(&knot("3_1"))
            .unwrap()
            .derivative(2)
            .evaluate(&Scalar::one())
            .unwrap();
        assert_eq!(j2, Scalar::int(-6));
    }

    #[test]
    fn kauffman_of_figure_eight_is_amphichiral() {
        let eng = SkeinEngine::default();
        let f = eng.kauffman(&knot("4_1")).unwrap();
        let mut mirrored = LaurentPoly2::zero("a", "x");
        for ((e0, e1), c) in f.terms() {
            mirrored.add_term(-e0, e1, c.clone());
        }
        assert_eq!(f, mirrored);
    }

    #[test]
    fn coefficient_extraction() {
        let eng = SkeinEngine::default();
        assert_eq!(
            eng.homfly_coeff(&knot("3_1"), 2).unwrap(),
            poly1("a", &[(-2, 1)])
        );
        assert_eq!(
            eng.homfly_coeff(&knot("4_1"), 0).unwrap(),
            poly1("a", &[(-2, 1), (0, -1), (2, 1)])
        );
        assert!(eng.homfly_coeff(&knot("3_1"), 4).unwrap().is_zero());
    }

    #[test]
    fn multiplicative_under_connected_sum() {
        let eng = SkeinEngine::default();
        let t = knot("3_1");
        let sum = t.connected_sum(&t).unwrap();
        assert_eq!(
            eng.homfly(&sum).unwrap(),
            eng.homfly(&t).unwrap().mul(&eng.homfly(&t).unwrap())
        );
        assert_eq!(
            eng.kauffman(&sum).unwrap(),
            eng.kauffman(&t).unwrap().mul(&eng.kauffman(&t).unwrap())
        );
    }

    #[test]
    fn cache_and_simplify_are_transparent() {
        let plain = SkeinEngine::new(SkeinConfig {
            use_memo: false,
            use_simplify: false,
            ..SkeinConfig::default()
        });
        let full = SkeinEngine::default();
        for name in ["3_1", "4_1", "5_2"] {
            let d = knot(name);
            assert_eq!(full.homfly(&d).unwrap(), plain.homfly(&d).unwrap());
            assert_eq!(full.kauffman(&d).unwrap(), plain.kauffman(&d).unwrap());
        }
    }

    #[test]
    fn size_bound_is_enforced() {
        let eng = SkeinEngine::new(SkeinConfig {
            max_crossings: 2,
            ..SkeinConfig::default()
        });
        assert!(matches!(
            eng.homfly(&knot("3_1")),
            Err(Error::DiagramTooLarge {
                crossings: 3,
                bound: 2
            })
        ));
    }
}
