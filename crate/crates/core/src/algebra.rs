//! Commutative coefficient algebras `C₀(V)` over presented discrete sets.
//!
//! A vertex set is presented by classes of interchangeable copies, each with a
//! count in `ℕ₊ ∪ {ω}`. Ideals are unions of whole classes; representations are
//! finite direct sums of point evaluations.

use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul};
use std::sync::Arc;

use crate::error::{domain, malformed, Result};
use crate::linalg::SparseMatrix;
use crate::scalar::Scalar;

/// A count in `ℕ ∪ {ω}` with `ω + n = ω`, `n·ω = ω` for `n ≥ 1`, and `0·ω = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cardinal {
    Finite(u64),
    Omega,
}

impl Cardinal {
    pub const ZERO: Cardinal = Cardinal::Finite(0);

    pub fn is_finite(self) -> bool {
        matches!(self, Cardinal::Finite(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Cardinal::Finite(n) => Some(n),
            Cardinal::Omega => None,
        }
    }

    pub fn is_zero(self) -> bool {
        self == Cardinal::ZERO
    }
}

impl Add for Cardinal {
    type Output = Cardinal;

    fn add(self, rhs: Cardinal) -> Cardinal {
        match (self, rhs) {
            (Cardinal::Finite(a), Cardinal::Finite(b)) => {
                a.checked_add(b).map_or(Cardinal::Omega, Cardinal::Finite)
            }
            _ => Cardinal::Omega,
        }
    }
}

impl Mul for Cardinal {
    type Output = Cardinal;

    fn mul(self, rhs: Cardinal) -> Cardinal {
        match (self, rhs) {
            (Cardinal::Finite(0), _) | (_, Cardinal::Finite(0)) => Cardinal::ZERO,
            (Cardinal::Finite(a), Cardinal::Finite(b)) => {
                a.checked_mul(b).map_or(Cardinal::Omega, Cardinal::Finite)
            }
            _ => Cardinal::Omega,
        }
    }
}

impl std::iter::Sum for Cardinal {
    fn sum<I: Iterator<Item = Cardinal>>(iter: I) -> Cardinal {
        iter.fold(Cardinal::ZERO, Add::add)
    }
}

impl fmt::Display for Cardinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinal::Finite(n) => write!(f, "{n}"),
            Cardinal::Omega => write!(f, "ω"),
        }
    }
}

/// The spectrum of a commutative coefficient algebra, presented by classes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AtomSet {
    classes: Vec<(String, Cardinal)>,
}

impl AtomSet {
    pub fn new(classes: Vec<(String, Cardinal)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (name, count) in &classes {
            if !seen.insert(name.as_str()) {
                return malformed(format!("duplicate vertex class {name:?}"));
            }
            if count.is_zero() {
                return malformed(format!("vertex class {name:?} must have a positive count"));
            }
        }
        Ok(Self { classes })
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn name(&self, class: usize) -> &str {
        &self.classes[class].0
    }

    pub fn count(&self, class: usize) -> Cardinal {
        self.classes[class].1
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.classes.iter().position(|(n, _)| n == name)
    }

    pub fn classes(&self) -> impl Iterator<Item = (usize, &str, Cardinal)> {
        self.classes.iter().enumerate().map(|(i, (n, c))| (i, n.as_str(), *c))
    }

    pub fn contains_atom(&self, atom: &Atom) -> bool {
        atom.class < self.classes.len()
            && atom.copy >= 1
            && match self.count(atom.class) {
                Cardinal::Finite(n) => atom.copy <= n,
                Cardinal::Omega => true,
            }
    }

    /// Copies `1..=limit` of a class, clipped to its count.
    pub fn copies(&self, class: usize, limit: u64) -> impl Iterator<Item = Atom> {
        let n = match self.count(class) {
            Cardinal::Finite(n) => n.min(limit),
            Cardinal::Omega => limit,
        };
        (1..=n).map(move |copy| Atom { class, copy })
    }

    pub fn atom_label(&self, atom: &Atom) -> String {
        format!("{}#{}", self.name(atom.class), atom.copy)
    }

    pub fn parse_atom(&self, label: &str) -> Result<Atom> {
        let Some((name, copy)) = label.rsplit_once('#') else {
            return malformed(format!("atom label {label:?} is not of the form NAME#COPY"));
        };
        let class = self
            .index_of(name)
            .ok_or_else(|| crate::Error::Malformed(format!("unknown vertex class {name:?}")))?;
        let copy: u64 = copy
            .parse()
            .map_err(|_| crate::Error::Malformed(format!("bad copy index in {label:?}")))?;
        let atom = Atom { class, copy };
        if !self.contains_atom(&atom) {
            return domain(format!("atom {label} is outside the vertex set"));
        }
        Ok(atom)
    }
}

/// One copy (1-based) of a vertex class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub class: usize,
    pub copy: u64,
}

impl Atom {
    pub fn new(class: usize, copy: u64) -> Self {
        Self { class, copy }
    }
}

/// An ideal `C₀(U)` with `U` a union of vertex classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealSpec {
    parent: Arc<AtomSet>,
    support: BTreeSet<usize>,
}

impl IdealSpec {
    pub fn new(parent: Arc<AtomSet>, support: impl IntoIterator<Item = usize>) -> Result<Self> {
        let support: BTreeSet<usize> = support.into_iter().collect();
        if let Some(bad) = support.iter().find(|&&c| c >= parent.len()) {
            return domain(format!("class index {bad} is outside the algebra"));
        }
        Ok(Self { parent, support })
    }

    pub fn zero(parent: Arc<AtomSet>) -> Self {
        Self { parent, support: BTreeSet::new() }
    }

    pub fn full(parent: Arc<AtomSet>) -> Self {
        let support = (0..parent.len()).collect();
        Self { parent, support }
    }

    pub fn from_names(parent: Arc<AtomSet>, names: &[&str]) -> Result<Self> {
        let mut idx = Vec::new();
        for n in names {
            idx.push(
                parent
                    .index_of(n)
                    .ok_or_else(|| crate::Error::Malformed(format!("unknown vertex class {n:?}")))?,
            );
        }
        Self::new(parent, idx)
    }

    pub fn parent(&self) -> &Arc<AtomSet> {
        &self.parent
    }

    pub fn support(&self) -> &BTreeSet<usize> {
        &self.support
    }

    pub fn contains_class(&self, class: usize) -> bool {
        self.support.contains(&class)
    }

    pub fn contains_atom(&self, atom: &Atom) -> bool {
        self.contains_class(atom.class)
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.support.len() == self.parent.len()
    }

    pub fn names(&self) -> Vec<String> {
        self.support.iter().map(|&c| self.parent.name(c).to_string()).collect()
    }

    /// The annihilator `I^⊥`, i.e. functions supported on the complementary classes.
    pub fn complement(&self) -> Self {
        let support = (0..self.parent.len()).filter(|c| !self.support.contains(c)).collect();
        Self { parent: self.parent.clone(), support }
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.same_parent(other)?;
        let support = self.support.intersection(&other.support).copied().collect();
        Ok(Self { parent: self.parent.clone(), support })
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.same_parent(other)?;
        let support = self.support.union(&other.support).copied().collect();
        Ok(Self { parent: self.parent.clone(), support })
    }

    fn same_parent(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.parent, &other.parent) || self.parent == other.parent {
            Ok(())
        } else {
            domain("ideals belong to different algebras")
        }
    }
}

/// An element of `C₀(V)`: a class-constant part plus finitely many point corrections.
///
/// The value at an atom is `class_values[class] + point_values[atom]`. Zero
/// entries are never stored.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct AlgebraElement {
    class_values: BTreeMap<usize, Scalar>,
    point_values: BTreeMap<Atom, Scalar>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_class_values(values: impl IntoIterator<Item = (usize, Scalar)>) -> Self {
        let class_values = values.into_iter().filter(|(_, z)| !z.is_zero()).collect();
        Self { class_values, point_values: BTreeMap::new() }
    }

    pub fn class_indicator(class: usize) -> Self {
        Self::from_class_values([(class, crate::scalar::one())])
    }

    pub fn delta(atom: Atom) -> Self {
        Self::from_points([(atom, crate::scalar::one())])
    }

    pub fn from_points(values: impl IntoIterator<Item = (Atom, Scalar)>) -> Self {
        let mut out = Self::zero();
        for (a, z) in values {
            out.add_point(a, &z);
        }
        out
    }

    pub fn add_point(&mut self, atom: Atom, z: &Scalar) {
        let e = self.point_values.entry(atom).or_insert_with(Scalar::zero);
        *e = &*e + z;
        if e.is_zero() {
            self.point_values.remove(&atom);
        }
    }

    pub fn class_value(&self, class: usize) -> Scalar {
        self.class_values.get(&class).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn value_at(&self, atom: &Atom) -> Scalar {
        let p = self.point_values.get(atom).cloned().unwrap_or_else(Scalar::zero);
        self.class_value(atom.class) + p
    }

    pub fn class_values(&self) -> &BTreeMap<usize, Scalar> {
        &self.class_values
    }

    pub fn point_values(&self) -> &BTreeMap<Atom, Scalar> {
        &self.point_values
    }

    pub fn is_zero(&self) -> bool {
        self.class_values.is_empty() && self.point_values.is_empty()
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Self) -> Self {
        let class_values = self
            .class_values
            .iter()
            .filter_map(|(c, a)| other.class_values.get(c).map(|b| (*c, a * b)))
            .filter(|(_, z)| !z.is_zero())
            .collect();
        let mut out = Self { class_values, point_values: BTreeMap::new() };
        let atoms: BTreeSet<Atom> = self.point_values.keys().chain(other.point_values.keys()).copied().collect();
        for a in atoms {
            let full = self.value_at(&a) * other.value_at(&a);
            let base = self.class_value(a.class) * other.class_value(a.class);
            out.add_point(a, &(full - base));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (c, z) in &other.class_values {
            let e = out.class_values.entry(*c).or_insert_with(Scalar::zero);
            *e = &*e + z;
        }
        out.class_values.retain(|_, z| !z.is_zero());
        for (a, z) in &other.point_values {
            out.add_point(*a, z);
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut out = Self::zero();
        for (c, z) in &self.class_values {
            out.class_values.insert(*c, z * s);
        }
        out.class_values.retain(|_, z| !z.is_zero());
        for (a, z) in &self.point_values {
            out.add_point(*a, &(z * s));
        }
        out
    }

    /// Pointwise complex conjugate, the involution of `C₀(V)`.
    pub fn adjoint(&self) -> Self {
        Self {
            class_values: self.class_values.iter().map(|(c, z)| (*c, z.conj())).collect(),
            point_values: self.point_values.iter().map(|(a, z)| (*a, z.conj())).collect(),
        }
    }

    /// Classes on which the element is not identically zero.
    pub fn support_classes(&self) -> BTreeSet<usize> {
        self.class_values.keys().chain(self.point_values.keys().map(|a| &a.class)).copied().collect()
    }
}

/// A finite direct sum of evaluations at distinct atoms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvaluationRep {
    atoms: Vec<Atom>,
}

impl EvaluationRep {
    pub fn new(algebra: &AtomSet, atoms: Vec<Atom>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for a in &atoms {
            if !algebra.contains_atom(a) {
                return domain(format!("atom {a:?} is outside the vertex set"));
            }
            if !seen.insert(*a) {
                return malformed(format!("atom {} listed twice", algebra.atom_label(a)));
            }
        }
        Ok(Self { atoms })
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn dim(&self) -> usize {
        self.atoms.len()
    }

    /// The diagonal matrix `σ(f)`.
    pub fn evaluate(&self, f: &AlgebraElement) -> SparseMatrix {
        let mut m = SparseMatrix::zeros(self.dim(), self.dim());
        for (k, a) in self.atoms.iter().enumerate() {
            m.set(k, k, f.value_at(a));
        }
        m
    }
}
