//! Strategies and check bodies shared between the property suites and
//! the acceptance target, so both exercise the same structural laws.
//!
//! Each check takes its case data and returns a `TestCaseResult`, which
//! lets `proptest!` wrappers forward with `?` and lets a programmatic
//! `TestRunner` drive the same function directly.

#![allow(dead_code)]

use knotpoly::diagram::{braid_closure, LinkDiagram, SingularDiagram, SmoothMode};
use knotpoly::scalar::Scalar;
use knotpoly::skein::{SkeinConfig, SkeinEngine};
use knotpoly::vassiliev::{Evaluator, InvariantDescriptor};
use proptest::prelude::*;
use proptest::test_runner::{RngSeed, TestCaseResult};
use std::sync::OnceLock;

pub fn engine() -> SkeinEngine {
    SkeinEngine::new(SkeinConfig::default())
}

pub fn config(seed: u64) -> ProptestConfig {
    ProptestConfig {
        cases: 128,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

/// Closures of short braid words on 2 to 4 strands: always planar,
/// oriented, and small enough that even memo-less evaluation is quick.
pub fn any_closure() -> impl Strategy<Value = LinkDiagram> {
    (2u32..=4)
        .prop_flat_map(|strands| {
            let max = strands as i32 - 1;
            let letter = prop_oneof![1..=max, -max..=-1];
            prop::collection::vec(letter, 1..=8)
                .prop_map(move |word| braid_closure(strands, &word).expect("letters in range"))
        })
        .prop_filter("connected diagram", |d| d.component_count() >= 1)
}

/// Closures with one marked crossing index.
pub fn closure_with_crossing() -> impl Strategy<Value = (LinkDiagram, usize)> {
    any_closure().prop_flat_map(|d| {
        let n = d.num_crossings();
        (Just(d), 0..n)
    })
}

/// One-component closures only.
pub fn knot_closure() -> impl Strategy<Value = LinkDiagram> {
    any_closure().prop_filter("closure must be a knot", LinkDiagram::is_knot)
}

/// Two independent one-component closures.
pub fn knot_pair() -> impl Strategy<Value = (LinkDiagram, LinkDiagram)> {
    (knot_closure(), knot_closure())
}

/// A one-component closure with one to three chosen crossing indices.
pub fn knot_with_points() -> impl Strategy<Value = (LinkDiagram, Vec<usize>)> {
    knot_closure().prop_flat_map(|d| {
        let indices: Vec<usize> = (0..d.num_crossings()).collect();
        let size = indices.len().min(3);
        (Just(d), prop::sample::subsequence(indices, 1..=size))
    })
}

/// Both polynomials split multiplicatively over a connected sum.
pub fn check_multiplicativity(k: &LinkDiagram, l: &LinkDiagram) -> TestCaseResult {
    let e = engine();
    let sum = k.connected_sum(l).unwrap();
    let p = e.homfly(&sum).unwrap();
    prop_assert_eq!(&p, &e.homfly(k).unwrap().mul(&e.homfly(l).unwrap()));
    let f = e.kauffman(&sum).unwrap();
    prop_assert_eq!(&f, &e.kauffman(k).unwrap().mul(&e.kauffman(l).unwrap()));
    Ok(())
}

/// a P(+) - a^-1 P(-) = z P(0) at the marked crossing.
pub fn check_skein_identity(d: &LinkDiagram, idx: usize) -> TestCaseResult {
    let e = engine();
    let switched = d.switch_crossing(idx).unwrap();
    let (pos, neg) = if d.sign(idx).unwrap() > 0 {
        (d, &switched)
    } else {
        (&switched, d)
    };
    let smoothed = d.smooth_crossing(idx, SmoothMode::Oriented).unwrap();
    let one = Scalar::one();
    let lhs = e
        .homfly(pos)
        .unwrap()
        .mul_monomial(2, 0, &one)
        .sub(&e.homfly(neg).unwrap().mul_monomial(-2, 0, &one));
    let rhs = e.homfly(&smoothed).unwrap().mul_monomial(0, 2, &one);
    prop_assert_eq!(lhs, rhs);
    Ok(())
}

/// Reduction never grows the diagram, keeps the component count, and
/// preserves both polynomials.
pub fn check_simplify_invariance(d: &LinkDiagram) -> TestCaseResult {
    let e = engine();
    let s = d.simplify();
    prop_assert!(s.num_crossings() <= d.num_crossings());
    prop_assert_eq!(s.component_count(), d.component_count());
    prop_assert_eq!(e.homfly(&s).unwrap(), e.homfly(d).unwrap());
    prop_assert_eq!(e.kauffman(&s).unwrap(), e.kauffman(d).unwrap());
    Ok(())
}

// One engine shared across all cases, so later cases hit entries cached
// by earlier ones.
fn warm() -> &'static SkeinEngine {
    static WARM: OnceLock<SkeinEngine> = OnceLock::new();
    WARM.get_or_init(engine)
}

/// A memoized engine and a memo-less one agree, and the warm engine
/// replays its own cached answer.
pub fn check_cache_transparency(d: &LinkDiagram) -> TestCaseResult {
    let bare = SkeinEngine::new(SkeinConfig {
        use_memo: false,
        ..SkeinConfig::default()
    });
    let via_cache = warm().homfly(d).unwrap();
    prop_assert_eq!(&via_cache, &bare.homfly(d).unwrap());
    prop_assert_eq!(&via_cache, &warm().homfly(d).unwrap());
    Ok(())
}

/// Difference of the two resolutions at each point of `order`, in that
/// order, then plain evaluation.
fn expand(
    ev: &Evaluator,
    v: &InvariantDescriptor,
    s: &SingularDiagram,
    order: &[usize],
) -> Scalar {
    let Some((&i, rest)) = order.split_first() else {
        return ev.eval_singular(v, s).unwrap();
    };
    let plus = expand(ev, v, &s.resolve(i, 1).unwrap(), rest);
    let minus = expand(ev, v, &s.resolve(i, -1).unwrap(), rest);
    &plus - &minus
}

fn permutations(points: &[usize]) -> Vec<Vec<usize>> {
    if points.len() <= 1 {
        return vec![points.to_vec()];
    }
    let mut out = Vec::new();
    for (i, &p) in points.iter().enumerate() {
        let mut rest: Vec<usize> = points.to_vec();
        rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, p);
            out.push(tail);
        }
    }
    out
}

/// Resolving the marked points in any order gives the same singular
/// evaluation as the one-shot recursion.
pub fn check_resolution_bilinearity(d: &LinkDiagram, points: &[usize]) -> TestCaseResult {
    let ev = Evaluator::default();
    let v = InvariantDescriptor::a2();
    let mut s = SingularDiagram::new(d.clone());
    for &i in points {
        s = s.singularize(i).unwrap();
    }
    let direct = ev.eval_singular(&v, &s).unwrap();
    for order in permutations(points) {
        prop_assert_eq!(&direct, &expand(&ev, &v, &s, &order));
    }
    Ok(())
}
