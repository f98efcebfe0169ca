//! Exact topology on finite unions of intervals with rational endpoints.
//!
//! An [`IntervalSet`] is kept in canonical form: pieces are non-empty,
//! pairwise disjoint, sorted, and no two of them can be merged into a single
//! interval. Each piece is therefore a connected component of the set.
//! Relative topology is always taken inside an explicit ambient set.

use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

use crate::error::{domain, malformed, Result};
use crate::scalar::{format_rational, int, Rational};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Endpoint {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl Endpoint {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Endpoint::Finite(x) => Some(x),
            _ => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        !matches!(self, Endpoint::Finite(_))
    }

    fn lt_point(&self, x: &Rational) -> bool {
        match self {
            Endpoint::NegInf => true,
            Endpoint::Finite(a) => a < x,
            Endpoint::PosInf => false,
        }
    }

    fn gt_point(&self, x: &Rational) -> bool {
        match self {
            Endpoint::NegInf => false,
            Endpoint::Finite(a) => a > x,
            Endpoint::PosInf => true,
        }
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endpoint::NegInf => write!(f, "-inf"),
            Endpoint::Finite(x) => write!(f, "{}", format_rational(x)),
            Endpoint::PosInf => write!(f, "inf"),
        }
    }
}

/// A non-empty interval. Infinite endpoints are always open.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Endpoint,
    lo_closed: bool,
    hi: Endpoint,
    hi_closed: bool,
}

impl Interval {
    /// Strict constructor for user input. `Ok(None)` for an empty interval such as `(a,a)`.
    pub fn new(lo: Endpoint, lo_closed: bool, hi: Endpoint, hi_closed: bool) -> Result<Option<Self>> {
        if lo == Endpoint::PosInf || hi == Endpoint::NegInf {
            return malformed(format!("interval endpoints out of order: {lo} .. {hi}"));
        }
        if (lo.is_infinite() && lo_closed) || (hi.is_infinite() && hi_closed) {
            return malformed("an infinite endpoint cannot be closed");
        }
        if lo > hi {
            return malformed(format!("lower endpoint {lo} exceeds upper endpoint {hi}"));
        }
        Ok(Self::make(lo, lo_closed, hi, hi_closed))
    }

    /// Lenient constructor: coerces flags at infinity and returns `None` for anything empty.
    pub(crate) fn make(lo: Endpoint, lo_closed: bool, hi: Endpoint, hi_closed: bool) -> Option<Self> {
        let lo_closed = lo_closed && !lo.is_infinite();
        let hi_closed = hi_closed && !hi.is_infinite();
        match lo.cmp(&hi) {
            Ordering::Greater => None,
            Ordering::Equal if !(lo_closed && hi_closed) => None,
            _ => Some(Self { lo, lo_closed, hi, hi_closed }),
        }
    }

    pub fn closed(a: Rational, b: Rational) -> Self {
        Self::make(Endpoint::Finite(a), true, Endpoint::Finite(b), true).expect("a <= b")
    }

    pub fn open(a: Endpoint, b: Endpoint) -> Self {
        Self::make(a, false, b, false).expect("a < b")
    }

    pub fn closed_open(a: Rational, b: Endpoint) -> Self {
        Self::make(Endpoint::Finite(a), true, b, false).expect("a < b")
    }

    pub fn open_closed(a: Endpoint, b: Rational) -> Self {
        Self::make(a, false, Endpoint::Finite(b), true).expect("a < b")
    }

    pub fn point(a: Rational) -> Self {
        Self::closed(a.clone(), a)
    }

    pub fn lo(&self) -> &Endpoint {
        &self.lo
    }

    pub fn hi(&self) -> &Endpoint {
        &self.hi
    }

    pub fn lo_closed(&self) -> bool {
        self.lo_closed
    }

    pub fn hi_closed(&self) -> bool {
        self.hi_closed
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn is_compact(&self) -> bool {
        self.lo_closed && self.hi_closed
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let above = match &self.lo {
            Endpoint::NegInf => true,
            Endpoint::Finite(a) => x > a || (x == a && self.lo_closed),
            Endpoint::PosInf => false,
        };
        let below = match &self.hi {
            Endpoint::PosInf => true,
            Endpoint::Finite(b) => x < b || (x == b && self.hi_closed),
            Endpoint::NegInf => false,
        };
        above && below
    }

    /// Whether `x` lies in the closure of the interval.
    fn closure_contains(&self, x: &Rational) -> bool {
        !self.lo.gt_point(x) && !self.hi.lt_point(x)
    }

    // closed lower bounds sort before open ones at the same point
    fn lower_key(&self) -> (&Endpoint, bool) {
        (&self.lo, !self.lo_closed)
    }

    // open upper bounds sort before closed ones at the same point
    fn upper_key(&self) -> (&Endpoint, bool) {
        (&self.hi, self.hi_closed)
    }

    pub fn intersect(&self, other: &Self) -> Option<Self> {
        let (lo, lc) = if self.lower_key() >= other.lower_key() {
            (&self.lo, self.lo_closed)
        } else {
            (&other.lo, other.lo_closed)
        };
        let (hi, hc) = if self.upper_key() <= other.upper_key() {
            (&self.hi, self.hi_closed)
        } else {
            (&other.hi, other.hi_closed)
        };
        Self::make(lo.clone(), lc, hi.clone(), hc)
    }

    fn closure(&self) -> Self {
        Self::make(self.lo.clone(), true, self.hi.clone(), true).expect("non-empty")
    }

    fn interior(&self) -> Option<Self> {
        Self::make(self.lo.clone(), false, self.hi.clone(), false)
    }

    /// Some rational point of the interval, chosen deterministically.
    pub fn sample_point(&self) -> Rational {
        match (&self.lo, &self.hi) {
            (Endpoint::Finite(a), _) if self.lo_closed => a.clone(),
            (_, Endpoint::Finite(b)) if self.hi_closed => b.clone(),
            (Endpoint::Finite(a), Endpoint::Finite(b)) => (a + b) / int(2),
            (Endpoint::Finite(a), _) => a + int(1),
            (_, Endpoint::Finite(b)) => b - int(1),
            _ => Rational::zero(),
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            return write!(f, "{{{}}}", self.lo);
        }
        let l = if self.lo_closed { '[' } else { '(' };
        let r = if self.hi_closed { ']' } else { ')' };
        write!(f, "{l}{},{}{r}", self.lo, self.hi)
    }
}

/// A finite union of intervals in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntervalSet {
    pieces: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn real_line() -> Self {
        Self { pieces: vec![Interval::open(Endpoint::NegInf, Endpoint::PosInf)] }
    }

    pub fn from_interval(i: Interval) -> Self {
        Self { pieces: vec![i] }
    }

    /// Canonical form of an arbitrary list of intervals. Idempotent.
    pub fn normalize(raw: impl IntoIterator<Item = Interval>) -> Self {
        let mut items: Vec<Interval> = raw.into_iter().collect();
        items.sort_by(|a, b| a.lower_key().cmp(&b.lower_key()));
        let mut out: Vec<Interval> = Vec::with_capacity(items.len());
        for next in items {
            if let Some(cur) = out.last_mut() {
                let touches = match next.lo.cmp(&cur.hi) {
                    Ordering::Less => true,
                    Ordering::Equal => cur.hi_closed || next.lo_closed,
                    Ordering::Greater => false,
                };
                if touches {
                    if next.upper_key() > cur.upper_key() {
                        cur.hi = next.hi;
                        cur.hi_closed = next.hi_closed;
                    }
                    continue;
                }
            }
            out.push(next);
        }
        Self { pieces: out }
    }

    /// Builds a set from `(lo, lo_closed, hi, hi_closed)` tuples, rejecting malformed intervals.
    pub fn from_bounds(raw: impl IntoIterator<Item = (Endpoint, bool, Endpoint, bool)>) -> Result<Self> {
        let mut items = Vec::new();
        for (lo, lc, hi, hc) in raw {
            if let Some(i) = Interval::new(lo, lc, hi, hc)? {
                items.push(i);
            }
        }
        Ok(Self::normalize(items))
    }

    pub fn pieces(&self) -> &[Interval] {
        &self.pieces
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.pieces.iter().any(|p| p.contains(x))
    }

    pub fn union(&self, other: &Self) -> Self {
        Self::normalize(self.pieces.iter().chain(&other.pieces).cloned())
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut out = Vec::new();
        for a in &self.pieces {
            for b in &other.pieces {
                if let Some(i) = a.intersect(b) {
                    out.push(i);
                }
            }
        }
        Self::normalize(out)
    }

    /// Complement inside the real line.
    pub fn complement(&self) -> Self {
        let mut out = Vec::new();
        let mut lo = Endpoint::NegInf;
        let mut lo_closed = false;
        for p in &self.pieces {
            if let Some(gap) = Interval::make(lo, lo_closed, p.lo.clone(), !p.lo_closed) {
                out.push(gap);
            }
            lo = p.hi.clone();
            lo_closed = !p.hi_closed;
        }
        if let Some(gap) = Interval::make(lo, lo_closed, Endpoint::PosInf, false) {
            out.push(gap);
        }
        Self { pieces: out }
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.intersection(&other.complement())
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.difference(other).is_empty()
    }

    pub fn is_compact(&self) -> bool {
        self.pieces.iter().all(Interval::is_compact)
    }

    fn closure_real(&self) -> Self {
        Self::normalize(self.pieces.iter().map(Interval::closure))
    }

    fn interior_real(&self) -> Self {
        Self::normalize(self.pieces.iter().filter_map(Interval::interior))
    }

    fn check_inside(&self, ambient: &Self) -> Result<()> {
        if self.is_subset_of(ambient) {
            Ok(())
        } else {
            domain(format!("{self} is not contained in the ambient set {ambient}"))
        }
    }

    /// Closure relative to `ambient`.
    pub fn closure_in(&self, ambient: &Self) -> Result<Self> {
        self.check_inside(ambient)?;
        Ok(self.closure_real().intersection(ambient))
    }

    /// Interior relative to `ambient`: points of `self` having a neighbourhood
    /// whose trace on `ambient` stays inside `self`.
    pub fn interior_in(&self, ambient: &Self) -> Result<Self> {
        self.check_inside(ambient)?;
        let padded = self.union(&ambient.complement());
        Ok(self.intersection(&padded.interior_real()))
    }

    pub fn is_open_in(&self, ambient: &Self) -> Result<bool> {
        Ok(self.interior_in(ambient)? == *self)
    }

    pub fn is_closed_in(&self, ambient: &Self) -> Result<bool> {
        Ok(self.closure_in(ambient)? == *self)
    }

    /// Whether every neighbourhood of `y` meets the set strictly to the left of `y`.
    pub fn accumulates_left(&self, y: &Rational) -> bool {
        self.pieces.iter().any(|p| p.lo.lt_point(y) && !p.hi.lt_point(y))
    }

    /// Whether every neighbourhood of `y` meets the set strictly to the right of `y`.
    pub fn accumulates_right(&self, y: &Rational) -> bool {
        self.pieces.iter().any(|p| !p.lo.gt_point(y) && p.hi.gt_point(y))
    }

    pub fn sample_point(&self) -> Option<Rational> {
        self.pieces.first().map(Interval::sample_point)
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pieces.is_empty() {
            return write!(f, "∅");
        }
        for (k, p) in self.pieces.iter().enumerate() {
            if k > 0 {
                write!(f, "∪")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Closure of `s`, relative to `ambient` or to the real line when no ambient is given.
pub fn closure(s: &IntervalSet, ambient: Option<&IntervalSet>) -> Result<IntervalSet> {
    match ambient {
        Some(a) => s.closure_in(a),
        None => Ok(s.closure_real()),
    }
}

/// Interior of `s`, relative to `ambient` or to the real line when no ambient is given.
pub fn interior(s: &IntervalSet, ambient: Option<&IntervalSet>) -> Result<IntervalSet> {
    match ambient {
        Some(a) => s.interior_in(a),
        None => Ok(s.interior_real()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffinePiece {
    pub domain: Interval,
    pub slope: Rational,
    pub offset: Rational,
}

impl AffinePiece {
    pub fn new(domain: Interval, slope: Rational, offset: Rational) -> Self {
        Self { domain, slope, offset }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        &self.slope * x + &self.offset
    }

    fn map_endpoint(&self, e: &Endpoint) -> Endpoint {
        match e {
            Endpoint::Finite(x) => Endpoint::Finite(self.eval(x)),
            Endpoint::NegInf if self.slope.is_positive() => Endpoint::NegInf,
            Endpoint::NegInf => Endpoint::PosInf,
            Endpoint::PosInf if self.slope.is_positive() => Endpoint::PosInf,
            Endpoint::PosInf => Endpoint::NegInf,
        }
    }

    fn unmap_endpoint(&self, e: &Endpoint) -> Endpoint {
        match e {
            Endpoint::Finite(y) => Endpoint::Finite((y - &self.offset) / &self.slope),
            Endpoint::NegInf if self.slope.is_positive() => Endpoint::NegInf,
            Endpoint::NegInf => Endpoint::PosInf,
            Endpoint::PosInf if self.slope.is_positive() => Endpoint::PosInf,
            Endpoint::PosInf => Endpoint::NegInf,
        }
    }

    /// Image of a non-empty sub-interval of the domain.
    fn image_of(&self, i: &Interval) -> Interval {
        if self.slope.is_zero() {
            return Interval::point(self.offset.clone());
        }
        let (a, b) = (self.map_endpoint(&i.lo), self.map_endpoint(&i.hi));
        let built = if self.slope.is_positive() {
            Interval::make(a, i.lo_closed, b, i.hi_closed)
        } else {
            Interval::make(b, i.hi_closed, a, i.lo_closed)
        };
        built.expect("affine image of a non-empty interval is non-empty")
    }

    /// Points of the domain mapped into `j`.
    fn preimage_of(&self, j: &Interval) -> Option<Interval> {
        if self.slope.is_zero() {
            return j.contains(&self.offset).then(|| self.domain.clone());
        }
        let (a, b) = (self.unmap_endpoint(&j.lo), self.unmap_endpoint(&j.hi));
        let pre = if self.slope.is_positive() {
            Interval::make(a, j.lo_closed, b, j.hi_closed)
        } else {
            Interval::make(b, j.hi_closed, a, j.lo_closed)
        }?;
        pre.intersect(&self.domain)
    }
}

/// Limit of a map along a non-compact end of its source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EndLimit {
    Finite(Rational),
    Infinite,
}

/// A non-compact end of a set: an open finite endpoint or ±∞ of one of its components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct End {
    pub at: Endpoint,
    /// `true` when the set lies to the right of the end (a lower end).
    pub lower: bool,
}

/// Continuous-candidate piecewise-affine map between interval sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PiecewiseAffineMap {
    pieces: Vec<AffinePiece>,
    source: IntervalSet,
    target: IntervalSet,
}

impl PiecewiseAffineMap {
    /// Validates that the piece domains partition `source` (overlapping only at
    /// single shared points where the formulas agree) and that every piece maps into `target`.
    pub fn new(mut pieces: Vec<AffinePiece>, source: IntervalSet, target: IntervalSet) -> Result<Self> {
        pieces.sort_by(|a, b| a.domain.lower_key().cmp(&b.domain.lower_key()));
        for (i, a) in pieces.iter().enumerate() {
            for b in &pieces[i + 1..] {
                let Some(common) = a.domain.intersect(&b.domain) else {
                    continue;
                };
                let Some(p) = common.is_point().then(|| common.lo.finite().cloned()).flatten() else {
                    return malformed(format!("pieces {} and {} overlap", a.domain, b.domain));
                };
                if a.eval(&p) != b.eval(&p) {
                    return malformed(format!(
                        "map is not well defined at {}: pieces disagree",
                        format_rational(&p)
                    ));
                }
            }
        }
        let covered = IntervalSet::normalize(pieces.iter().map(|p| p.domain.clone()));
        if covered != source {
            return malformed(format!("piece domains cover {covered}, expected source {source}"));
        }
        let map = Self { pieces, source, target };
        for p in &map.pieces {
            let img = p.image_of(&p.domain);
            if !IntervalSet::from_interval(img.clone()).is_subset_of(&map.target) {
                return malformed(format!("image {img} of piece {} leaves the target", p.domain));
            }
        }
        Ok(map)
    }

    pub fn identity(on: IntervalSet, target: IntervalSet) -> Result<Self> {
        let pieces = on
            .pieces()
            .iter()
            .map(|d| AffinePiece::new(d.clone(), Rational::one(), Rational::zero()))
            .collect();
        Self::new(pieces, on, target)
    }

    pub fn pieces(&self) -> &[AffinePiece] {
        &self.pieces
    }

    pub fn source(&self) -> &IntervalSet {
        &self.source
    }

    pub fn target(&self) -> &IntervalSet {
        &self.target
    }

    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        self.pieces.iter().find(|p| p.domain.contains(x)).map(|p| p.eval(x))
    }

    /// Exact image of `s ⊆ source`.
    pub fn image(&self, s: &IntervalSet) -> Result<IntervalSet> {
        if !s.is_subset_of(&self.source) {
            return domain(format!("{s} is not contained in the source {}", self.source));
        }
        let mut out = Vec::new();
        for p in &self.pieces {
            for i in s.pieces() {
                if let Some(part) = p.domain.intersect(i) {
                    out.push(p.image_of(&part));
                }
            }
        }
        Ok(IntervalSet::normalize(out))
    }

    pub fn range(&self) -> IntervalSet {
        self.image(&self.source).expect("source is inside itself")
    }

    pub fn preimage(&self, t: &IntervalSet) -> IntervalSet {
        let mut out = Vec::new();
        for p in &self.pieces {
            for j in t.pieces() {
                out.extend(p.preimage_of(j));
            }
        }
        IntervalSet::normalize(out)
    }

    /// All source points mapped to `y`, when there are finitely many.
    pub fn fiber(&self, y: &Rational) -> Option<Vec<Rational>> {
        let mut pts: Vec<Rational> = Vec::new();
        for p in &self.pieces {
            if p.slope.is_zero() {
                if &p.offset == y {
                    if !p.domain.is_point() {
                        return None;
                    }
                    pts.push(p.domain.sample_point());
                }
            } else {
                let x = (y - &p.offset) / &p.slope;
                if p.domain.contains(&x) {
                    pts.push(x);
                }
            }
        }
        pts.sort();
        pts.dedup();
        Some(pts)
    }

    /// Non-compact ends of the source.
    pub fn source_ends(&self) -> Vec<End> {
        let mut ends = Vec::new();
        for c in self.source.pieces() {
            if !c.lo_closed {
                ends.push(End { at: c.lo.clone(), lower: true });
            }
            if !c.hi_closed {
                ends.push(End { at: c.hi.clone(), lower: false });
            }
        }
        ends
    }

    /// Limit of the map along a source end.
    pub fn limit_at(&self, end: &End) -> EndLimit {
        let piece = self
            .pieces
            .iter()
            .find(|p| {
                !p.domain.is_point()
                    && if end.lower {
                        p.domain.lo == end.at && !p.domain.lo_closed
                    } else {
                        p.domain.hi == end.at && !p.domain.hi_closed
                    }
            })
            .expect("every open end of the source is approached by a piece");
        match &end.at {
            Endpoint::Finite(a) => EndLimit::Finite(piece.eval(a)),
            _ if piece.slope.is_zero() => EndLimit::Finite(piece.offset.clone()),
            _ => EndLimit::Infinite,
        }
    }

    /// Preimages of compact subsets of the target are compact. Decided by
    /// checking that every non-compact end of the source escapes the target.
    pub fn is_proper(&self) -> bool {
        self.source_ends().iter().all(|e| match self.limit_at(e) {
            EndLimit::Infinite => true,
            EndLimit::Finite(l) => !self.target.contains(&l),
        })
    }

    /// Finite piece endpoints that belong to the source.
    fn breakpoints(&self) -> Vec<Rational> {
        let mut pts: Vec<Rational> = self
            .pieces
            .iter()
            .flat_map(|p| [p.domain.lo.finite().cloned(), p.domain.hi.finite().cloned()])
            .flatten()
            .filter(|x| self.source.contains(x))
            .collect();
        pts.sort();
        pts.dedup();
        pts
    }

    pub fn is_continuous(&self) -> bool {
        self.breakpoints().iter().all(|x| {
            let mut vals = self
                .pieces
                .iter()
                .filter(|p| p.domain.closure_contains(x))
                .map(|p| p.eval(x));
            let first = vals.next();
            vals.all(|v| Some(&v) == first.as_ref())
        })
    }

    fn side_slopes(&self, x: &Rational) -> (Option<&Rational>, Option<&Rational>) {
        let left = self
            .pieces
            .iter()
            .find(|p| !p.domain.is_point() && p.domain.lo.lt_point(x) && !p.domain.hi.lt_point(x))
            .map(|p| &p.slope);
        let right = self
            .pieces
            .iter()
            .find(|p| !p.domain.is_point() && !p.domain.lo.gt_point(x) && p.domain.hi.gt_point(x))
            .map(|p| &p.slope);
        (left, right)
    }

    /// Every source point has a neighbourhood mapped homeomorphically onto an
    /// open subset of the target.
    pub fn is_local_homeomorphism(&self) -> bool {
        if !self.is_continuous() {
            return false;
        }
        if self.pieces.iter().any(|p| !p.domain.is_point() && p.slope.is_zero()) {
            return false;
        }
        self.breakpoints().iter().all(|x| {
            let y = self.eval(x).expect("breakpoint lies in the source");
            let t = &self.target;
            match self.side_slopes(x) {
                (Some(l), Some(r)) => l.signum() == r.signum(),
                (None, Some(r)) if r.is_positive() => !t.accumulates_left(&y),
                (None, Some(_)) => !t.accumulates_right(&y),
                (Some(l), None) if l.is_positive() => !t.accumulates_right(&y),
                (Some(_), None) => !t.accumulates_left(&y),
                (None, None) => !t.accumulates_left(&y) && !t.accumulates_right(&y),
            }
        })
    }

    /// Whether `f(source) ⊆ int(cl(f(source)))`, both taken relative to the target.
    pub fn range_condition(&self) -> bool {
        let img = self.range();
        let hull = img
            .closure_in(&self.target)
            .and_then(|c| c.interior_in(&self.target))
            .expect("the range lies in the target");
        img.is_subset_of(&hull)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::scalar::rat;
    use proptest::prelude::*;

    pub fn fin(n: i64, d: i64) -> Endpoint {
        Endpoint::Finite(rat(n, d))
    }

    pub fn cc(a: (i64, i64), b: (i64, i64)) -> Interval {
        Interval::closed(rat(a.0, a.1), rat(b.0, b.1))
    }

    pub fn set(items: Vec<Interval>) -> IntervalSet {
        IntervalSet::normalize(items)
    }

    fn unit() -> IntervalSet {
        set(vec![cc((0, 1), (1, 1))])
    }

    #[test]
    fn normalize_merges_adjacent_closed() {
        let s = set(vec![cc((0, 1), (1, 1)), cc((1, 1), (2, 1))]);
        assert_eq!(s, set(vec![cc((0, 1), (2, 1))]));
    }

    #[test]
    fn normalize_keeps_punctured_union() {
        let s = set(vec![Interval::open(fin(0, 1), fin(1, 1)), Interval::open(fin(1, 1), fin(2, 1))]);
        assert_eq!(s.pieces().len(), 2);
        assert!(!s.contains(&rat(1, 1)));
    }

    #[test]
    fn normalize_empty() {
        assert!(IntervalSet::normalize(vec![]).is_empty());
    }

    #[test]
    fn reversed_interval_is_malformed() {
        let r = Interval::new(fin(2, 1), true, fin(1, 1), true);
        assert!(matches!(r, Err(crate::Error::Malformed(_))));
        assert_eq!(Interval::new(fin(1, 1), false, fin(1, 1), false).unwrap(), None);
    }

    #[test]
    fn relative_interior_and_closure() {
        let half = set(vec![cc((0, 1), (1, 2))]);
        let int = half.interior_in(&unit()).unwrap();
        assert_eq!(int, set(vec![Interval::closed_open(rat(0, 1), fin(1, 2))]));
        let open_unit = set(vec![Interval::open(fin(0, 1), fin(1, 1))]);
        assert_eq!(open_unit.closure_in(&unit()).unwrap(), unit());
        let e = IntervalSet::empty();
        assert!(e.closure_in(&unit()).unwrap().interior_in(&unit()).unwrap().is_empty());
    }

    #[test]
    fn closure_outside_ambient_is_domain_error() {
        let s = set(vec![cc((0, 1), (2, 1))]);
        assert!(matches!(s.closure_in(&unit()), Err(crate::Error::Domain(_))));
        assert!(matches!(s.interior_in(&unit()), Err(crate::Error::Domain(_))));
    }

    #[test]
    fn images_of_affine_maps() {
        let half = set(vec![cc((0, 1), (1, 2))]);
        let id = PiecewiseAffineMap::identity(half.clone(), unit()).unwrap();
        assert_eq!(id.image(&half).unwrap(), half);

        let double = PiecewiseAffineMap::new(
            vec![AffinePiece::new(cc((0, 1), (1, 1)), rat(2, 1), rat(0, 1))],
            unit(),
            set(vec![cc((0, 1), (2, 1))]),
        )
        .unwrap();
        let quarter = set(vec![cc((0, 1), (1, 4))]);
        assert_eq!(double.image(&quarter).unwrap(), half);

        let zero = PiecewiseAffineMap::new(
            vec![AffinePiece::new(cc((0, 1), (1, 1)), rat(0, 1), rat(0, 1))],
            unit(),
            unit(),
        )
        .unwrap();
        assert_eq!(zero.image(&unit()).unwrap(), set(vec![Interval::point(rat(0, 1))]));
    }

    #[test]
    fn properness_examples() {
        let half = set(vec![cc((0, 1), (1, 2))]);
        assert!(PiecewiseAffineMap::identity(half, unit()).unwrap().is_proper());

        let punctured = set(vec![Interval::open_closed(fin(0, 1), rat(1, 1))]);
        assert!(!PiecewiseAffineMap::identity(punctured, unit()).unwrap().is_proper());

        let ray = set(vec![Interval::closed_open(rat(0, 1), Endpoint::PosInf)]);
        assert!(PiecewiseAffineMap::identity(ray.clone(), ray).unwrap().is_proper());
    }

    #[test]
    fn local_homeomorphism_examples() {
        assert!(PiecewiseAffineMap::identity(unit(), unit()).unwrap().is_local_homeomorphism());
        let zero = PiecewiseAffineMap::new(
            vec![AffinePiece::new(cc((0, 1), (1, 1)), rat(0, 1), rat(0, 1))],
            unit(),
            unit(),
        )
        .unwrap();
        assert!(!zero.is_local_homeomorphism());
        let fold = PiecewiseAffineMap::new(
            vec![
                AffinePiece::new(cc((0, 1), (1, 2)), rat(-1, 1), rat(1, 2)),
                AffinePiece::new(cc((1, 2), (1, 1)), rat(1, 1), rat(-1, 2)),
            ],
            unit(),
            unit(),
        )
        .unwrap();
        assert!(fold.is_continuous());
        assert!(!fold.is_local_homeomorphism());
    }

    #[test]
    fn half_interval_inclusion_is_not_open() {
        let half = set(vec![cc((0, 1), (1, 2))]);
        let inc = PiecewiseAffineMap::identity(half, unit()).unwrap();
        assert!(!inc.is_local_homeomorphism());
    }

    #[test]
    fn ill_defined_map_is_rejected() {
        let r = PiecewiseAffineMap::new(
            vec![
                AffinePiece::new(cc((0, 1), (1, 2)), rat(1, 1), rat(0, 1)),
                AffinePiece::new(cc((1, 2), (1, 1)), rat(1, 1), rat(1, 4)),
            ],
            unit(),
            set(vec![cc((0, 1), (2, 1))]),
        );
        assert!(matches!(r, Err(crate::Error::Malformed(_))));
    }

    #[test]
    fn discontinuous_map_is_detected() {
        let f = PiecewiseAffineMap::new(
            vec![
                AffinePiece::new(Interval::closed_open(rat(0, 1), fin(1, 2)), rat(1, 1), rat(0, 1)),
                AffinePiece::new(cc((1, 2), (1, 1)), rat(1, 1), rat(1, 4)),
            ],
            unit(),
            set(vec![cc((0, 1), (2, 1))]),
        )
        .unwrap();
        assert!(!f.is_continuous());
    }

    #[test]
    fn range_condition_examples() {
        // the closure/interior oracle: int(cl([0,1/2])) = [0,1/2) in [0,1]
        let half = set(vec![cc((0, 1), (1, 2))]);
        let hull = half.closure_in(&unit()).unwrap().interior_in(&unit()).unwrap();
        assert!(!half.is_subset_of(&hull));
        assert!(!PiecewiseAffineMap::identity(half, unit()).unwrap().range_condition());

        assert!(PiecewiseAffineMap::identity(unit(), unit()).unwrap().range_condition());

        let open_half = set(vec![Interval::open(fin(0, 1), fin(1, 2))]);
        let hull = open_half.closure_in(&unit()).unwrap().interior_in(&unit()).unwrap();
        assert_eq!(hull, set(vec![Interval::closed_open(rat(0, 1), fin(1, 2))]));
        assert!(PiecewiseAffineMap::identity(open_half, unit()).unwrap().range_condition());
    }

    fn arb_endpoint() -> impl Strategy<Value = Rational> {
        (-8i64..8).prop_map(|n| rat(n, 2))
    }

    fn arb_interval() -> impl Strategy<Value = Interval> {
        (arb_endpoint(), 0i64..6, any::<bool>(), any::<bool>(), 0u8..10).prop_filter_map(
            "non-empty",
            |(a, len, lc, hc, inf)| {
                let b = &a + rat(len, 2);
                let lo = if inf == 0 { Endpoint::NegInf } else { Endpoint::Finite(a) };
                let hi = if inf == 1 { Endpoint::PosInf } else { Endpoint::Finite(b) };
                Interval::make(lo, lc, hi, hc)
            },
        )
    }

    pub fn arb_set() -> impl Strategy<Value = IntervalSet> {
        proptest::collection::vec(arb_interval(), 0..5).prop_map(IntervalSet::normalize)
    }

    proptest! {
        #[test]
        fn normalize_is_idempotent(s in arb_set()) {
            prop_assert_eq!(IntervalSet::normalize(s.pieces().to_vec()), s);
        }

        #[test]
        fn closure_and_interior_are_idempotent(s in arb_set(), amb in arb_set()) {
            let amb = amb.union(&s);
            let c = s.closure_in(&amb).unwrap();
            prop_assert_eq!(c.closure_in(&amb).unwrap(), c.clone());
            let i = s.interior_in(&amb).unwrap();
            prop_assert_eq!(i.interior_in(&amb).unwrap(), i.clone());
            prop_assert!(i.is_subset_of(&s) && s.is_subset_of(&c));
        }

        #[test]
        fn de_morgan_within_ambient(s in arb_set(), amb in arb_set()) {
            let amb = amb.union(&s);
            let lhs = s.interior_in(&amb).unwrap();
            let rhs = amb.difference(&amb.difference(&s).closure_in(&amb).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn complement_partitions_the_line(s in arb_set(), x in -10i64..10) {
            let x = rat(x, 3);
            prop_assert!(s.contains(&x) != s.complement().contains(&x));
        }

        #[test]
        fn image_respects_unions(a in arb_set(), b in arb_set(), slope in -3i64..4, off in -2i64..3) {
            let src = a.union(&b);
            prop_assume!(!src.is_empty());
            let pieces = src.pieces().iter()
                .map(|d| AffinePiece::new(d.clone(), rat(slope, 1), rat(off, 1)))
                .collect();
            let f = PiecewiseAffineMap::new(pieces, src.clone(), IntervalSet::real_line()).unwrap();
            let lhs = f.image(&src).unwrap();
            let rhs = f.image(&a).unwrap().union(&f.image(&b).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn compact_sources_are_proper(
            raw in proptest::collection::vec((-8i64..8, 0i64..4), 1..5),
            slope in -3i64..4,
        ) {
            let s = IntervalSet::normalize(raw.iter().map(|&(a, l)| Interval::closed(rat(a, 2), rat(a + l, 2))));
            prop_assert!(s.is_compact());
            let pieces = s.pieces().iter()
                .map(|d| AffinePiece::new(d.clone(), rat(slope, 1), rat(0, 1)))
                .collect();
            let f = PiecewiseAffineMap::new(pieces, s, IntervalSet::real_line()).unwrap();
            prop_assert!(f.is_proper());
        }

        #[test]
        fn preimage_of_image_contains_source(s in arb_set(), slope in -3i64..4, off in -2i64..3) {
            prop_assume!(!s.is_empty());
            let pieces = s.pieces().iter()
                .map(|d| AffinePiece::new(d.clone(), rat(slope, 1), rat(off, 1)))
                .collect();
            let f = PiecewiseAffineMap::new(pieces, s.clone(), IntervalSet::real_line()).unwrap();
            prop_assert_eq!(f.preimage(&f.range()), s);
        }
    }
}
