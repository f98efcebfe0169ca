//! The six worked instances.

use crate::algebra::Cardinal::{self, Finite, Omega};
use crate::interval::{AffinePiece, Interval, IntervalSet, PiecewiseAffineMap};
use crate::scalar::{int, rat};
use crate::topograph::{DiscreteGraphPresentation, GraphPresentation, IntervalGraphPresentation};

pub fn discrete(vs: &[(&str, Cardinal)], es: &[(&str, &str, &str, Cardinal)]) -> DiscreteGraphPresentation {
    DiscreteGraphPresentation::new(
        vs.iter().map(|(n, c)| (n.to_string(), *c)).collect(),
        es.iter().map(|(n, s, r, m)| (n.to_string(), s.to_string(), r.to_string(), *m)).collect(),
    )
    .expect("corpus graphs are well formed")
}

/// One vertex with a loop.
pub fn loop_l() -> GraphPresentation {
    GraphPresentation::Discrete(discrete(&[("v", Finite(1))], &[("e", "v", "v", Finite(1))]))
}

/// A single edge `u → v`.
pub fn arrow_a() -> GraphPresentation {
    GraphPresentation::Discrete(discrete(&[("u", Finite(1)), ("v", Finite(1))], &[("e", "u", "v", Finite(1))]))
}

/// Infinitely many edges into one vertex.
pub fn star_omega() -> GraphPresentation {
    GraphPresentation::Discrete(discrete(&[("V", Finite(1)), ("W", Omega)], &[("E", "W", "V", Finite(1))]))
}

/// The infinite star with a disjoint arm `Z → U`.
pub fn star_arm() -> GraphPresentation {
    GraphPresentation::Discrete(discrete(
        &[("V", Finite(1)), ("W", Omega), ("U", Finite(1)), ("Z", Finite(1))],
        &[("E", "W", "V", Finite(1)), ("F", "Z", "U", Finite(1))],
    ))
}

fn unit_interval() -> IntervalSet {
    IntervalSet::from_interval(Interval::closed(int(0), int(1)))
}

/// `G⁰ = [0,1]`, `G¹ = [0,1/2]`, `r = id`, `s(x) = 2x`. The point 1/2 has no
/// incoming edges nearby on the right, so `r⁻¹(reg) ≠ G¹`.
pub fn interval_i1() -> GraphPresentation {
    let g0 = unit_interval();
    let half = Interval::closed(int(0), rat(1, 2));
    let g1 = IntervalSet::from_interval(half.clone());
    let r = PiecewiseAffineMap::identity(g1.clone(), g0.clone()).expect("identity");
    let s = PiecewiseAffineMap::new(vec![AffinePiece::new(half, int(2), int(0))], g1.clone(), g0.clone()).expect("2x");
    GraphPresentation::Interval(IntervalGraphPresentation::new(g0, g1, r, s).expect("I1"))
}

/// `G⁰ = G¹ = [0,1]` with `r = s = id`.
pub fn interval_i2() -> GraphPresentation {
    let g0 = unit_interval();
    let id = PiecewiseAffineMap::identity(g0.clone(), g0.clone()).expect("identity");
    GraphPresentation::Interval(IntervalGraphPresentation::new(g0.clone(), g0, id.clone(), id).expect("I2"))
}

/// `(name, instance, expected hyperrigid)`.
pub fn worked_corpus() -> Vec<(&'static str, GraphPresentation, bool)> {
    vec![
        ("L", loop_l(), true),
        ("A", arrow_a(), true),
        ("SA", star_arm(), false),
        ("S_omega", star_omega(), false),
        ("I1", interval_i1(), false),
        ("I2", interval_i2(), true),
    ]
}
