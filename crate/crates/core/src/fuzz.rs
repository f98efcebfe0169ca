//! Seeded random instance generators.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::Cardinal;
use crate::interval::{AffinePiece, Endpoint, Interval, IntervalSet, PiecewiseAffineMap};
use crate::scalar::{int, rat, Rational};
use crate::topograph::{DiscreteGraphPresentation, IntervalGraphPresentation};

#[derive(Clone, Copy, Debug)]
pub struct FuzzConfig {
    pub max_classes: usize,
    pub max_edges: usize,
    pub omega_prob: f64,
    /// Bound on the pieces of `G⁰` plus the pieces of `G¹`.
    pub max_pieces: usize,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        Self { max_classes: 8, max_edges: 20, omega_prob: 0.2, max_pieces: 6 }
    }
}

fn cardinal<R: Rng>(rng: &mut R, omega_prob: f64) -> Cardinal {
    if rng.gen_bool(omega_prob) {
        Cardinal::Omega
    } else {
        Cardinal::Finite(rng.gen_range(1..=3))
    }
}

pub fn random_discrete<R: Rng>(rng: &mut R, cfg: &FuzzConfig) -> DiscreteGraphPresentation {
    let n = rng.gen_range(1..=cfg.max_classes);
    let vertices: Vec<(String, Cardinal)> = (0..n).map(|i| (format!("v{i}"), cardinal(rng, cfg.omega_prob))).collect();
    let m = rng.gen_range(0..=cfg.max_edges);
    let edges = (0..m)
        .map(|i| {
            let s = rng.gen_range(0..n);
            let r = rng.gen_range(0..n);
            (format!("e{i}"), vertices[s].0.clone(), vertices[r].0.clone(), cardinal(rng, cfg.omega_prob))
        })
        .collect();
    DiscreteGraphPresentation::new(vertices, edges).expect("generated graphs are well formed")
}

/// A discrete graph with every count and multiplicity finite.
pub fn random_finite_discrete<R: Rng>(rng: &mut R, cfg: &FuzzConfig) -> DiscreteGraphPresentation {
    random_discrete(rng, &FuzzConfig { omega_prob: 0.0, ..*cfg })
}

/// One component of `G⁰`: `(lo, hi, lo_closed, hi_closed)`.
#[derive(Clone, Debug)]
struct Component {
    lo: Endpoint,
    hi: Endpoint,
    lo_closed: bool,
    hi_closed: bool,
}

impl Component {
    fn interval(&self) -> Interval {
        Interval::new(self.lo.clone(), self.lo_closed, self.hi.clone(), self.hi_closed)
            .expect("valid")
            .expect("non-empty")
    }

    fn is_compact(&self) -> bool {
        self.lo_closed && self.hi_closed
    }

    /// Finite stand-ins for the ends, used to pick interior points.
    fn span(&self) -> (Rational, Rational) {
        match (self.lo.finite(), self.hi.finite()) {
            (Some(a), Some(b)) => (a.clone(), b.clone()),
            (Some(a), None) => (a.clone(), a + int(3)),
            (None, Some(b)) => (b - int(3), b.clone()),
            (None, None) => (int(0), int(3)),
        }
    }

    fn interior_point<R: Rng>(&self, rng: &mut R) -> Rational {
        let (a, b) = self.span();
        let k = rng.gen_range(1..4);
        &a + (&b - &a) * rat(k, 4)
    }

    /// A point of the closure that an end of `G¹` may map to.
    fn point<R: Rng>(&self, rng: &mut R, end_open: bool) -> Rational {
        let mut options = vec![None];
        if let Some(a) = self.lo.finite().filter(|_| self.lo_closed || end_open) {
            options.push(Some(a.clone()));
        }
        if let Some(b) = self.hi.finite().filter(|_| self.hi_closed || end_open) {
            options.push(Some(b.clone()));
        }
        match options.choose(rng).cloned().flatten() {
            Some(x) => x,
            None => self.interior_point(rng),
        }
    }
}

fn random_g0<R: Rng>(rng: &mut R, count: usize, compact_only: bool) -> Vec<Component> {
    (0..count)
        .map(|i| {
            let base = 4 * i as i64;
            let lo = int(base + rng.gen_range(0..=1));
            let hi = &lo + int(rng.gen_range(1..=2));
            let (lo_closed, hi_closed) = if compact_only { (true, true) } else { (rng.gen_bool(0.6), rng.gen_bool(0.6)) };
            let unbounded_lo = !compact_only && i == 0 && rng.gen_bool(0.15);
            let unbounded_hi = !compact_only && i + 1 == count && rng.gen_bool(0.15);
            Component {
                lo: if unbounded_lo { Endpoint::NegInf } else { Endpoint::Finite(lo) },
                hi: if unbounded_hi { Endpoint::PosInf } else { Endpoint::Finite(hi) },
                lo_closed: lo_closed && !unbounded_lo,
                hi_closed: hi_closed && !unbounded_hi,
            }
        })
        .collect()
}

/// `x ↦ y0 + (y1 − y0)(x − p)` on a unit-length piece starting at `p`.
fn affine_through(dom: Interval, p: &Rational, y0: &Rational, y1: &Rational) -> AffinePiece {
    let slope = y1 - y0;
    let offset = y0 - &slope * p;
    AffinePiece::new(dom, slope, offset)
}

fn build_interval<R: Rng>(rng: &mut R, cfg: &FuzzConfig, compact_base: bool) -> Option<IntervalGraphPresentation> {
    let n0 = rng.gen_range(1..=3.min(cfg.max_pieces - 1));
    let g0c = random_g0(rng, n0, compact_base);
    let compact_targets: Vec<&Component> = g0c.iter().filter(|c| c.is_compact() && c.lo.finite().is_some()).collect();
    let n1 = rng.gen_range(1..=(cfg.max_pieces - n0).min(3));
    let mut g1_pieces = Vec::new();
    let mut r_pieces = Vec::new();
    let mut s_pieces = Vec::new();
    for k in 0..n1 {
        let p = int(3 * k as i64);
        let q = &p + int(1);
        let whole_copy = !compact_targets.is_empty() && rng.gen_bool(0.5);
        let (dom, s_piece) = if whole_copy {
            let c = compact_targets.choose(rng).expect("non-empty");
            let (a, b) = c.span();
            let dom = Interval::new(Endpoint::Finite(p.clone()), c.lo_closed, Endpoint::Finite(q.clone()), c.hi_closed)
                .expect("valid")
                .expect("non-empty");
            let (y0, y1) = if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
            let dom = if y0 > y1 {
                Interval::new(Endpoint::Finite(p.clone()), c.hi_closed, Endpoint::Finite(q.clone()), c.lo_closed)
                    .expect("valid")
                    .expect("non-empty")
            } else {
                dom
            };
            (dom.clone(), affine_through(dom, &p, &y0, &y1))
        } else {
            let c = g0c.choose(rng).expect("non-empty");
            let (a, b) = c.span();
            let (u, v) = (rng.gen_range(0..2), rng.gen_range(2..4));
            let (y0, y1) = (&a + (&b - &a) * rat(u, 4), &a + (&b - &a) * rat(v, 4));
            let (y0, y1) = if u == 0 && c.lo_closed { (&a + (&b - &a) * rat(1, 8), y1) } else { (y0, y1) };
            let (y0, y1) = if rng.gen_bool(0.5) { (y0, y1) } else { (y1, y0) };
            let dom = Interval::open(Endpoint::Finite(p.clone()), Endpoint::Finite(q.clone()));
            (dom.clone(), affine_through(dom, &p, &y0, &y1))
        };
        let d = g0c.choose(rng).expect("non-empty");
        let y0 = d.point(rng, !dom.lo_closed());
        let y1 = if rng.gen_bool(0.2) { y0.clone() } else { d.point(rng, !dom.hi_closed()) };
        r_pieces.push(affine_through(dom.clone(), &p, &y0, &y1));
        s_pieces.push(s_piece);
        g1_pieces.push(dom);
    }
    let g0 = IntervalSet::normalize(g0c.iter().map(Component::interval));
    let g1 = IntervalSet::normalize(g1_pieces);
    let r = PiecewiseAffineMap::new(r_pieces, g1.clone(), g0.clone()).ok()?;
    let s = PiecewiseAffineMap::new(s_pieces, g1.clone(), g0.clone()).ok()?;
    IntervalGraphPresentation::new(g0, g1, r, s).ok()
}

/// Resamples until the instance is accepted; candidates rejected by the
/// boundary-limit rule or by an invalid `s` are discarded.
pub fn random_interval<R: Rng>(rng: &mut R, cfg: &FuzzConfig) -> IntervalGraphPresentation {
    loop {
        if let Some(g) = build_interval(rng, cfg, false) {
            return g;
        }
    }
}

/// An interval graph with compact vertex space; the edge space may or may not be compact.
pub fn random_compact_base<R: Rng>(rng: &mut R, cfg: &FuzzConfig) -> IntervalGraphPresentation {
    loop {
        if let Some(g) = build_interval(rng, cfg, true) {
            return g;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_respect_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let cfg = FuzzConfig::default();
        for _ in 0..100 {
            let d = random_discrete(&mut rng, &cfg);
            assert!(d.vertices().len() <= 8 && d.edges().len() <= 20);
            assert!(random_finite_discrete(&mut rng, &cfg).is_finite());
            let i = random_interval(&mut rng, &cfg);
            assert!(i.g0().pieces().len() + i.g1().pieces().len() <= 6);
            assert!(random_compact_base(&mut rng, &cfg).g0().is_compact());
        }
    }

    #[test]
    fn seeds_are_reproducible() {
        let cfg = FuzzConfig::default();
        let a = random_interval(&mut ChaCha8Rng::seed_from_u64(3), &cfg);
        let b = random_interval(&mut ChaCha8Rng::seed_from_u64(3), &cfg);
        assert_eq!(a.g1(), b.g1());
        assert_eq!(a.r().pieces(), b.r().pieces());
    }
}
