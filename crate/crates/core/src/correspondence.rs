//! Graph correspondences over commutative coefficient algebras.
//!
//! A correspondence is presented by edge classes between vertex classes. Module
//! elements are finitely supported functions on edge copies, with
//! `⟨F, H⟩(v) = Σ_{s(e)=v} conj(F(e)) H(e)` and `(f·F·g)(e) = f(r(e)) F(e) g(s(e))`.

use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::algebra::{AlgebraElement, Atom, AtomSet, Cardinal, EvaluationRep, IdealSpec};
use crate::error::{domain, malformed, Error, Result};
use crate::linalg::SparseEchelon;
use crate::scalar::{abs_sq, Rational, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeClass {
    pub name: String,
    pub source: usize,
    pub range: usize,
    pub mult: Cardinal,
}

/// One edge of a class: a (source copy, range copy, multiplicity unit) triple, all 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeCopy {
    pub class: usize,
    pub source_copy: u64,
    pub range_copy: u64,
    pub unit: u64,
}

impl EdgeCopy {
    pub fn new(class: usize, source_copy: u64, range_copy: u64, unit: u64) -> Self {
        Self { class, source_copy, range_copy, unit }
    }

    /// The first copy of a class.
    pub fn first(class: usize) -> Self {
        Self::new(class, 1, 1, 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Correspondence {
    algebra: Arc<AtomSet>,
    edges: Vec<EdgeClass>,
}

/// A submodule spanned by whole edge classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Submodule {
    span: BTreeSet<usize>,
    generators: usize,
}

impl Submodule {
    pub fn new(span: impl IntoIterator<Item = usize>, generators: usize) -> Result<Self> {
        let span: BTreeSet<usize> = span.into_iter().collect();
        if span.iter().any(|&e| e >= generators) {
            return domain("submodule spans an edge class outside the correspondence");
        }
        Ok(Self { span, generators })
    }

    pub fn span(&self) -> &BTreeSet<usize> {
        &self.span
    }

    pub fn contains_class(&self, class: usize) -> bool {
        self.span.contains(&class)
    }

    pub fn is_full(&self) -> bool {
        self.span.len() == self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.span.is_empty()
    }

    pub fn orthogonal_complement(&self) -> Submodule {
        Self {
            span: (0..self.generators).filter(|e| !self.span.contains(e)).collect(),
            generators: self.generators,
        }
    }

    pub fn names(&self, c: &Correspondence) -> Vec<String> {
        self.span.iter().map(|&e| c.edges[e].name.clone()).collect()
    }
}

/// A finitely supported function on edge copies.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ModuleElement {
    coeffs: BTreeMap<EdgeCopy, Scalar>,
}

impl ModuleElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(e: EdgeCopy) -> Self {
        Self::from_terms([(e, Scalar::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (EdgeCopy, Scalar)>) -> Self {
        let mut out = Self::zero();
        for (e, z) in terms {
            out.add_term(e, &z);
        }
        out
    }

    pub fn add_term(&mut self, e: EdgeCopy, z: &Scalar) {
        let entry = self.coeffs.entry(e).or_insert_with(Scalar::zero);
        *entry = &*entry + z;
        if entry.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn coeff(&self, e: &EdgeCopy) -> Scalar {
        self.coeffs.get(e).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> &BTreeMap<EdgeCopy, Scalar> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, z) in &other.coeffs {
            out.add_term(*e, z);
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(e, z)| (*e, z * s)))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Scalar::one()))
    }
}

/// Rank-one operator `θ_{x,y}: z ↦ x⟨y, z⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct Theta {
    pub x: ModuleElement,
    pub y: ModuleElement,
}

/// An elementary tensor `e₁ ⊗ … ⊗ eₙ ⊗ h` where `h` indexes a basis vector of the representation space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathVector {
    pub path: Vec<EdgeCopy>,
    pub h: usize,
}

impl PathVector {
    pub fn level(&self) -> usize {
        self.path.len()
    }
}

/// A formal combination of composable elementary tensors of one level.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorVector {
    pub level: usize,
    terms: BTreeMap<PathVector, Scalar>,
}

impl TensorVector {
    /// Builds the vector, identifying non-composable elementary tensors with zero.
    pub fn new(
        c: &Correspondence,
        sigma: &EvaluationRep,
        level: usize,
        terms: impl IntoIterator<Item = (PathVector, Scalar)>,
    ) -> Result<Self> {
        let mut out = BTreeMap::new();
        for (pv, z) in terms {
            if pv.level() != level {
                return malformed(format!("tensor of level {} in a level-{level} vector", pv.level()));
            }
            if pv.h >= sigma.dim() {
                return domain(format!("basis index {} exceeds the representation dimension", pv.h));
            }
            if !c.is_composable(&pv, sigma) || z.is_zero() {
                continue;
            }
            let e = out.entry(pv).or_insert_with(Scalar::zero);
            *e = &*e + z;
        }
        out.retain(|_, z: &mut Scalar| !z.is_zero());
        Ok(Self { level, terms: out })
    }

    pub fn terms(&self) -> &BTreeMap<PathVector, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// A σ-degeneracy certificate: `f ⊗ h ≠ 0` orthogonal to `φ(J)X ⊗_σ H`.
#[derive(Clone, Debug, PartialEq)]
pub struct SigmaWitness {
    pub rep: EvaluationRep,
    pub edge_class: usize,
    pub vector: TensorVector,
    /// `‖f ⊗ h‖²`.
    pub norm_sq: Rational,
    /// Largest `|⟨b, f ⊗ h⟩|²` over the checked basis `b` of `φ(J)X ⊗_σ H`.
    pub pairing: Rational,
    /// Whether `pairing` ranged over a complete basis. False when that basis is infinite,
    /// in which case only copies matching the witness indices were checked.
    pub pairing_exhaustive: bool,
}

/// `X^{⊗(n−1)} ⊗_σ H` presented as a new representation space `K` of the coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorPowerReduction {
    pub n: usize,
    pub k_basis: Vec<PathVector>,
    /// Atom through which the coefficients act on each basis vector of `K`.
    pub k_atoms: Vec<Atom>,
    /// Non-zero elementary tensors `e ⊗ k` of `X ⊗ K`.
    pub x_tensor_k: Vec<(EdgeCopy, usize)>,
    /// Dimension of `X^{⊗n} ⊗_σ H` by direct path enumeration.
    pub direct_dim: usize,
    /// `φ(J)X^{⊗n} ⊗_σ H ≠ X^{⊗n} ⊗_σ H`, by direct enumeration.
    pub degenerate_direct: bool,
    /// `φ(J)X ⊗ K ≠ X ⊗ K`.
    pub degenerate_reduced: bool,
}

impl TensorPowerReduction {
    pub fn dimension_identity_holds(&self) -> bool {
        self.x_tensor_k.len() == self.direct_dim
    }
}

impl Correspondence {
    /// The left action is automatically non-degenerate for graph data: each edge has a range.
    pub fn new(algebra: Arc<AtomSet>, edges: Vec<EdgeClass>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for e in &edges {
            if !seen.insert(e.name.as_str()) {
                return malformed(format!("duplicate edge class {:?}", e.name));
            }
            if e.source >= algebra.len() || e.range >= algebra.len() {
                return malformed(format!("edge class {:?} references a missing vertex class", e.name));
            }
            if e.mult.is_zero() {
                return malformed(format!("edge class {:?} must have positive multiplicity", e.name));
            }
        }
        Ok(Self { algebra, edges })
    }

    pub fn algebra(&self) -> &Arc<AtomSet> {
        &self.algebra
    }

    pub fn edges(&self) -> &[EdgeClass] {
        &self.edges
    }

    pub fn edge_index(&self, name: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.name == name)
    }

    pub fn full_submodule(&self) -> Submodule {
        Submodule { span: (0..self.edges.len()).collect(), generators: self.edges.len() }
    }

    pub fn source_atom(&self, e: &EdgeCopy) -> Atom {
        Atom::new(self.edges[e.class].source, e.source_copy)
    }

    pub fn range_atom(&self, e: &EdgeCopy) -> Atom {
        Atom::new(self.edges[e.class].range, e.range_copy)
    }

    pub fn contains_copy(&self, e: &EdgeCopy) -> bool {
        e.class < self.edges.len()
            && self.algebra.contains_atom(&self.source_atom(e))
            && self.algebra.contains_atom(&self.range_atom(e))
            && e.unit >= 1
            && self.edges[e.class].mult.finite().is_none_or(|m| e.unit <= m)
    }

    pub fn copy_label(&self, e: &EdgeCopy) -> String {
        format!("{}({},{},{})", self.edges[e.class].name, e.source_copy, e.range_copy, e.unit)
    }

    pub fn parse_copy(&self, label: &str) -> Result<EdgeCopy> {
        let bad = || Error::Malformed(format!("edge label {label:?} is not NAME(s,r,u)"));
        let (name, rest) = label.split_once('(').ok_or_else(bad)?;
        let inner = rest.strip_suffix(')').ok_or_else(bad)?;
        let nums: Vec<u64> = inner
            .split(',')
            .map(|t| t.trim().parse::<u64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad())?;
        let [s, r, u] = nums[..] else { return Err(bad()) };
        let class = self
            .edge_index(name)
            .ok_or_else(|| Error::Malformed(format!("unknown edge class {name:?}")))?;
        let e = EdgeCopy::new(class, s, r, u);
        if !self.contains_copy(&e) {
            return domain(format!("edge {label} is outside the graph"));
        }
        Ok(e)
    }

    /// Number of edges received by one copy of `class`.
    pub fn in_degree(&self, class: usize) -> Cardinal {
        self.edges
            .iter()
            .filter(|e| e.range == class)
            .map(|e| self.algebra.count(e.source) * e.mult)
            .sum()
    }

    /// Number of edges emitted by one copy of `class`.
    pub fn out_degree(&self, class: usize) -> Cardinal {
        self.edges
            .iter()
            .filter(|e| e.source == class)
            .map(|e| self.algebra.count(e.range) * e.mult)
            .sum()
    }

    /// All edges with source `a`, in a fixed order.
    pub fn edges_sourced_at(&self, a: &Atom) -> Result<Vec<EdgeCopy>> {
        self.sourced_filtered(a, |_| true)
    }

    fn sourced_filtered(&self, a: &Atom, keep: impl Fn(usize) -> bool) -> Result<Vec<EdgeCopy>> {
        let mut out = Vec::new();
        for (k, e) in self.edges.iter().enumerate().filter(|(k, e)| e.source == a.class && keep(*k)) {
            let (Some(nr), Some(m)) = (self.algebra.count(e.range).finite(), e.mult.finite()) else {
                return Err(Error::SymbolicOnly(format!(
                    "infinitely many {} edges leave {}",
                    e.name,
                    self.algebra.atom_label(a)
                )));
            };
            for r in 1..=nr {
                for u in 1..=m {
                    out.push(EdgeCopy::new(k, a.copy, r, u));
                }
            }
        }
        Ok(out)
    }

    /// All edges with range `a`, in a fixed order.
    pub fn edges_ranging_at(&self, a: &Atom) -> Result<Vec<EdgeCopy>> {
        let mut out = Vec::new();
        for (k, e) in self.edges.iter().enumerate().filter(|(_, e)| e.range == a.class) {
            let (Some(ns), Some(m)) = (self.algebra.count(e.source).finite(), e.mult.finite()) else {
                return domain(format!(
                    "{} receives infinitely many {} edges",
                    self.algebra.atom_label(a),
                    e.name
                ));
            };
            for s in 1..=ns {
                for u in 1..=m {
                    out.push(EdgeCopy::new(k, s, a.copy, u));
                }
            }
        }
        Ok(out)
    }

    pub fn inner(&self, x: &ModuleElement, y: &ModuleElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (e, a) in &x.coeffs {
            if let Some(b) = y.coeffs.get(e) {
                out.add_point(self.source_atom(e), &(a.conj() * b));
            }
        }
        out
    }

    pub fn right_act(&self, x: &ModuleElement, f: &AlgebraElement) -> ModuleElement {
        ModuleElement::from_terms(x.coeffs.iter().map(|(e, z)| (*e, z * f.value_at(&self.source_atom(e)))))
    }

    pub fn left_act(&self, f: &AlgebraElement, x: &ModuleElement) -> ModuleElement {
        ModuleElement::from_terms(x.coeffs.iter().map(|(e, z)| (*e, f.value_at(&self.range_atom(e)) * z)))
    }

    /// `ker φ`: classes receiving no edges.
    pub fn kernel_of_left_action(&self) -> IdealSpec {
        let support = (0..self.algebra.len()).filter(|&v| self.edges.iter().all(|e| e.range != v));
        IdealSpec::new(self.algebra.clone(), support).expect("classes are in range")
    }

    /// `φ⁻¹(K(X))`: classes of finite in-degree.
    pub fn compacts_preimage(&self) -> IdealSpec {
        let support = (0..self.algebra.len()).filter(|&v| self.in_degree(v).is_finite());
        IdealSpec::new(self.algebra.clone(), support).expect("classes are in range")
    }

    /// Katsura's ideal `ker φ^⊥ ∩ φ⁻¹(K(X))`.
    pub fn katsura_ideal(&self) -> IdealSpec {
        self.kernel_of_left_action()
            .complement()
            .intersect(&self.compacts_preimage())
            .expect("same algebra")
    }

    /// `φ(J)X`: edge classes whose range lies in `j`.
    pub fn ideal_act_submodule(&self, j: &IdealSpec) -> Submodule {
        let span = self.edges.iter().enumerate().filter(|(_, e)| j.contains_class(e.range)).map(|(k, _)| k);
        Submodule { span: span.collect(), generators: self.edges.len() }
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.ideal_act_submodule(&self.katsura_ideal()).is_full()
    }

    /// Non-degeneracy of `φ(J)` decided by exact rank over every edge copy. Only for finite graphs.
    ///
    /// Here `J` is recomputed atom by atom from the action itself: in finite
    /// dimensions every operator is compact, so `J = (ker φ)^⊥`.
    pub fn nondegenerate_by_rank(&self) -> Result<bool> {
        let all = self.all_edge_copies()?;
        let atoms = self.all_atoms()?;
        let index: BTreeMap<EdgeCopy, usize> = all.iter().enumerate().map(|(i, e)| (*e, i)).collect();
        let images = |a: &Atom| -> Vec<ModuleElement> {
            let d = AlgebraElement::delta(*a);
            all.iter().map(|e| self.left_act(&d, &ModuleElement::basis(*e))).collect()
        };
        let mut ech = SparseEchelon::new();
        for a in &atoms {
            let imgs = images(a);
            if imgs.iter().all(ModuleElement::is_zero) {
                continue;
            }
            for v in imgs {
                ech.insert(v.coeffs.iter().map(|(e, z)| (index[e], z.clone())).collect());
            }
        }
        Ok(ech.rank() == all.len())
    }

    fn all_atoms(&self) -> Result<Vec<Atom>> {
        let mut out = Vec::new();
        for (c, name, count) in self.algebra.classes() {
            let Some(n) = count.finite() else {
                return domain(format!("vertex class {name} is infinite"));
            };
            out.extend((1..=n).map(|k| Atom::new(c, k)));
        }
        Ok(out)
    }

    fn all_edge_copies(&self) -> Result<Vec<EdgeCopy>> {
        let mut out = Vec::new();
        for a in self.all_atoms()? {
            out.extend(self.edges_sourced_at(&a).map_err(|e| Error::Domain(e.to_string()))?);
        }
        Ok(out)
    }

    /// A σ-degeneracy witness when `φ(J)` acts degenerately.
    pub fn sigma_degeneracy_witness(&self) -> Option<SigmaWitness> {
        let span = self.ideal_act_submodule(&self.katsura_ideal());
        let e = (0..self.edges.len()).find(|k| !span.contains_class(*k))?;
        let f = EdgeCopy::first(e);
        let rep = EvaluationRep::new(&self.algebra, vec![self.source_atom(&f)]).expect("first copies exist");
        let pv = PathVector { path: vec![f], h: 0 };
        let vector = TensorVector::new(self, &rep, 1, [(pv, Scalar::one())]).expect("valid witness tensor");
        let norm_sq = self.tensor_inner(&rep, &vector, &vector).re;
        let (basis, exhaustive) = match self.interior_tensor(&span, &rep) {
            Ok(b) => (b, true),
            Err(_) => (self.matching_copies(&span, &f), false),
        };
        let pairing = basis
            .into_iter()
            .map(|b| {
                let bv = TensorVector::new(self, &rep, 1, [(b, Scalar::one())]).expect("basis tensor");
                abs_sq(&self.tensor_inner(&rep, &bv, &vector))
            })
            .max()
            .unwrap_or_else(Rational::zero);
        Some(SigmaWitness { rep, edge_class: e, vector, norm_sq, pairing, pairing_exhaustive: exhaustive })
    }

    fn matching_copies(&self, s: &Submodule, f: &EdgeCopy) -> Vec<PathVector> {
        s.span
            .iter()
            .map(|&k| EdgeCopy::new(k, f.source_copy, f.range_copy, f.unit))
            .filter(|e| self.contains_copy(e) && self.source_atom(e) == self.source_atom(f))
            .map(|e| PathVector { path: vec![e], h: 0 })
            .collect()
    }

    /// Basis `{e ⊗ h : e ∈ s, s(e) = atom of h}` of `s ⊗_σ H`.
    pub fn interior_tensor(&self, s: &Submodule, sigma: &EvaluationRep) -> Result<Vec<PathVector>> {
        let mut out = Vec::new();
        for (h, a) in sigma.atoms().iter().enumerate() {
            for e in self.edges_sourced_at_within(a, Some(s))? {
                out.push(PathVector { path: vec![e], h });
            }
        }
        Ok(out)
    }

    fn edges_sourced_at_within(&self, a: &Atom, s: Option<&Submodule>) -> Result<Vec<EdgeCopy>> {
        self.sourced_filtered(a, |k| s.is_none_or(|s| s.contains_class(k)))
    }

    pub fn is_composable(&self, pv: &PathVector, sigma: &EvaluationRep) -> bool {
        let Some(anchor) = sigma.atoms().get(pv.h) else {
            return false;
        };
        pv.path.iter().all(|e| self.contains_copy(e))
            && pv.path.windows(2).all(|w| self.source_atom(&w[0]) == self.range_atom(&w[1]))
            && pv.path.last().is_none_or(|e| self.source_atom(e) == *anchor)
    }

    /// Atom through which the coefficients act on an elementary tensor.
    pub fn anchor(&self, pv: &PathVector, sigma: &EvaluationRep) -> Atom {
        match pv.path.first() {
            Some(e) => self.range_atom(e),
            None => sigma.atoms()[pv.h],
        }
    }

    /// Bases of `X^{⊗n} ⊗_σ H` for `n = 0..=levels`, built by prepending edges.
    pub fn tensor_basis(&self, sigma: &EvaluationRep, levels: usize, budget: usize) -> Result<Vec<Vec<PathVector>>> {
        let mut out: Vec<Vec<PathVector>> =
            vec![(0..sigma.dim()).map(|h| PathVector { path: Vec::new(), h }).collect()];
        let mut total = out[0].len();
        if total > budget {
            return Err(Error::Budget { needed: total, budget });
        }
        for _ in 0..levels {
            let mut next = Vec::new();
            for pv in out.last().expect("level 0 exists") {
                for e in self.edges_sourced_at(&self.anchor(pv, sigma))? {
                    let mut path = Vec::with_capacity(pv.path.len() + 1);
                    path.push(e);
                    path.extend_from_slice(&pv.path);
                    next.push(PathVector { path, h: pv.h });
                    total += 1;
                    if total > budget {
                        return Err(Error::Budget { needed: total, budget });
                    }
                }
            }
            next.sort();
            out.push(next);
        }
        Ok(out)
    }

    /// `⟨a, b⟩` on `X^{⊗n} ⊗_σ H`, computed from the module inner product:
    /// `⟨x₁⊗…⊗xₙ⊗h, y₁⊗…⊗yₙ⊗h'⟩ = ⟨h, σ(⟨xₙ, φ(⋯⟨x₁,y₁⟩⋯)yₙ⟩)h'⟩`.
    pub fn tensor_inner(&self, sigma: &EvaluationRep, a: &TensorVector, b: &TensorVector) -> Scalar {
        if a.level != b.level {
            return Scalar::zero();
        }
        let mut total = Scalar::zero();
        for (p, alpha) in &a.terms {
            for (q, beta) in &b.terms {
                if p.h != q.h {
                    continue;
                }
                let value = self.elementary_inner(p, q).value_at(&sigma.atoms()[p.h]);
                let value = if p.path.is_empty() { Scalar::one() } else { value };
                total += alpha.conj() * beta * value;
            }
        }
        total
    }

    fn elementary_inner(&self, p: &PathVector, q: &PathVector) -> AlgebraElement {
        let mut acc: Option<AlgebraElement> = None;
        for (x, y) in p.path.iter().zip(&q.path) {
            let y = ModuleElement::basis(*y);
            let y = match &acc {
                Some(a) => self.left_act(a, &y),
                None => y,
            };
            acc = Some(self.inner(&ModuleElement::basis(*x), &y));
        }
        acc.unwrap_or_default()
    }

    /// Re-expresses level `n` as `X ⊗ K` with `K = X^{⊗(n−1)} ⊗_σ H`.
    pub fn tensor_power_reduction(&self, n: usize, sigma: &EvaluationRep, budget: usize) -> Result<TensorPowerReduction> {
        if n == 0 {
            return domain("tensor powers start at n = 1");
        }
        let levels = self.tensor_basis(sigma, n, budget)?;
        let k_basis = levels[n - 1].clone();
        let k_atoms: Vec<Atom> = k_basis.iter().map(|pv| self.anchor(pv, sigma)).collect();
        let mut x_tensor_k = Vec::new();
        for (k, a) in k_atoms.iter().enumerate() {
            for e in self.edges_sourced_at(a)? {
                x_tensor_k.push((e, k));
            }
        }
        let span = self.ideal_act_submodule(&self.katsura_ideal());
        let direct = &levels[n];
        let degenerate_direct = direct.iter().any(|pv| !span.contains_class(pv.path[0].class));
        let degenerate_reduced = x_tensor_k.iter().any(|(e, _)| !span.contains_class(e.class));
        Ok(TensorPowerReduction {
            n,
            k_basis,
            k_atoms,
            x_tensor_k,
            direct_dim: direct.len(),
            degenerate_direct,
            degenerate_reduced,
        })
    }

    /// Writes `φ(f)` as a finite sum of rank-one operators, `φ(δ_u) = Σ_{r(e)=u} θ_{e,e}`.
    pub fn left_action_as_compacts(&self, f: &AlgebraElement) -> Result<Vec<Theta>> {
        let fin = self.compacts_preimage();
        let mut atoms = BTreeSet::new();
        for &c in f.class_values().keys() {
            if !fin.contains_class(c) {
                return domain(format!("φ(f) is not compact: f is non-zero on {}", self.algebra.name(c)));
            }
            match self.algebra.count(c).finite() {
                Some(n) => atoms.extend((1..=n).map(|k| Atom::new(c, k))),
                None if self.in_degree(c).is_zero() => {}
                None => {
                    return domain(format!(
                        "a non-zero constant on the infinite class {} is not in C₀",
                        self.algebra.name(c)
                    ))
                }
            }
        }
        for a in f.point_values().keys() {
            if !fin.contains_class(a.class) {
                return domain(format!("φ(f) is not compact: f is non-zero at {}", self.algebra.atom_label(a)));
            }
            atoms.insert(*a);
        }
        let mut out = Vec::new();
        for a in atoms {
            let z = f.value_at(&a);
            if z.is_zero() {
                continue;
            }
            for e in self.edges_ranging_at(&a)? {
                out.push(Theta { x: ModuleElement::from_terms([(e, z.clone())]), y: ModuleElement::basis(e) });
            }
        }
        Ok(out)
    }

    pub fn apply_thetas(&self, terms: &[Theta], z: &ModuleElement) -> ModuleElement {
        terms
            .iter()
            .fold(ModuleElement::zero(), |acc, t| acc.add(&self.right_act(&t.x, &self.inner(&t.y, z))))
    }
}

/// A second decomposition of the same compact operator, using
/// `θ_{x₁,y₁} + θ_{x₂,y₂} = θ_{x₁+x₂, y₁} + θ_{x₂, y₂−y₁}` on consecutive pairs.
pub fn regroup_thetas(terms: &[Theta]) -> Vec<Theta> {
    let mut out = Vec::new();
    for pair in terms.chunks(2) {
        match pair {
            [a, b] => {
                out.push(Theta { x: a.x.add(&b.x), y: a.y.clone() });
                out.push(Theta { x: b.x.clone(), y: b.y.sub(&a.y) });
            }
            [a] => out.push(a.clone()),
            _ => unreachable!(),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{imag_unit, sc};
    use num_traits::Signed;
    use proptest::prelude::*;

    fn graph(vs: &[(&str, Cardinal)], es: &[(&str, &str, &str, Cardinal)]) -> Correspondence {
        let atoms = Arc::new(AtomSet::new(vs.iter().map(|(n, c)| (n.to_string(), *c)).collect()).unwrap());
        let idx = |n: &str| atoms.index_of(n).unwrap();
        let edges = es
            .iter()
            .map(|(n, s, r, m)| EdgeClass { name: n.to_string(), source: idx(s), range: idx(r), mult: *m })
            .collect();
        Correspondence::new(atoms.clone(), edges).unwrap()
    }

    use Cardinal::{Finite as F, Omega};

    fn loop_l() -> Correspondence {
        graph(&[("v", F(1))], &[("e", "v", "v", F(1))])
    }
    fn arrow() -> Correspondence {
        graph(&[("u", F(1)), ("v", F(1))], &[("e", "u", "v", F(1))])
    }
    fn star() -> Correspondence {
        graph(&[("V", F(1)), ("W", Omega)], &[("E", "W", "V", F(1))])
    }
    fn star_arm() -> Correspondence {
        graph(
            &[("V", F(1)), ("W", Omega), ("U", F(1)), ("Z", F(1))],
            &[("E", "W", "V", F(1)), ("F", "Z", "U", F(1))],
        )
    }

    /// Kernel oracle: classes whose first copy's delta kills every sampled generator.
    fn kernel_oracle(c: &Correspondence) -> Vec<String> {
        let samples: Vec<EdgeCopy> = (0..c.edges().len()).map(EdgeCopy::first).collect();
        (0..c.algebra().len())
            .filter(|&v| {
                let d = AlgebraElement::delta(Atom::new(v, 1));
                samples.iter().all(|e| c.left_act(&d, &ModuleElement::basis(*e)).is_zero())
            })
            .map(|v| c.algebra().name(v).to_string())
            .collect()
    }

    #[test]
    fn kernel_examples() {
        for c in [loop_l(), arrow(), star()] {
            assert_eq!(c.kernel_of_left_action().names(), kernel_oracle(&c));
        }
        assert!(loop_l().kernel_of_left_action().is_empty());
        assert_eq!(arrow().kernel_of_left_action().names(), ["u"]);
        assert_eq!(star().kernel_of_left_action().names(), ["W"]);
    }

    #[test]
    fn compacts_and_katsura_examples() {
        assert_eq!(loop_l().compacts_preimage().names(), ["v"]);
        assert_eq!(star().compacts_preimage().names(), ["W"]);
        assert_eq!(star_arm().compacts_preimage().names(), ["W", "U", "Z"]);
        assert_eq!(loop_l().katsura_ideal().names(), ["v"]);
        assert!(star().katsura_ideal().is_empty());
        assert_eq!(star_arm().katsura_ideal().names(), ["U"]);
    }

    #[test]
    fn ideal_action_and_nondegeneracy() {
        let l = loop_l();
        assert!(l.ideal_act_submodule(&l.katsura_ideal()).is_full());
        let sa = star_arm();
        assert_eq!(sa.ideal_act_submodule(&sa.katsura_ideal()).names(&sa), ["F"]);
        let s = star();
        assert!(s.ideal_act_submodule(&s.katsura_ideal()).is_zero());
        assert!(l.is_nondegenerate());
        assert!(arrow().is_nondegenerate());
        assert!(!sa.is_nondegenerate());
    }

    #[test]
    fn complement_examples() {
        let sa = star_arm();
        let s = sa.ideal_act_submodule(&sa.katsura_ideal());
        assert_eq!(s.orthogonal_complement().names(&sa), ["E"]);
        let l = loop_l();
        assert!(l.full_submodule().orthogonal_complement().is_zero());
        assert!(Submodule::new([], 2).unwrap().orthogonal_complement().is_full());
        for x in s.span() {
            for y in s.orthogonal_complement().span() {
                let g = sa.inner(&ModuleElement::basis(EdgeCopy::first(*x)), &ModuleElement::basis(EdgeCopy::first(*y)));
                assert!(g.is_zero());
            }
        }
    }

    #[test]
    fn sigma_witness_examples() {
        assert!(loop_l().sigma_degeneracy_witness().is_none());
        for c in [star(), star_arm()] {
            let w = c.sigma_degeneracy_witness().unwrap();
            assert_eq!(c.algebra().atom_label(&w.rep.atoms()[0]), "W#1");
            assert_eq!(c.edges()[w.edge_class].name, "E");
            assert_eq!(w.norm_sq, Rational::one());
            assert!(w.pairing.is_zero());
            assert!(w.pairing_exhaustive);
        }
    }

    #[test]
    fn interior_tensor_examples() {
        let s = star();
        let rep = EvaluationRep::new(s.algebra(), vec![Atom::new(1, 1)]).unwrap();
        let b = s.interior_tensor(&s.full_submodule(), &rep).unwrap();
        assert_eq!(b, vec![PathVector { path: vec![EdgeCopy::first(0)], h: 0 }]);

        let sa = star_arm();
        let rep = EvaluationRep::new(sa.algebra(), vec![Atom::new(1, 1)]).unwrap();
        let span = sa.ideal_act_submodule(&sa.katsura_ideal());
        assert!(sa.interior_tensor(&span, &rep).unwrap().is_empty());
        let f = TensorVector::new(&sa, &rep, 1, [(PathVector { path: vec![EdgeCopy::first(1)], h: 0 }, sc(1))]).unwrap();
        assert!(f.is_zero(), "F is sourced at Z, not at w₁");

        let a = arrow();
        let rep = EvaluationRep::new(a.algebra(), vec![Atom::new(1, 1)]).unwrap();
        assert!(a.interior_tensor(&a.full_submodule(), &rep).unwrap().is_empty());
    }

    #[test]
    fn infinite_fiber_is_symbolic_only() {
        let c = graph(&[("V", Omega), ("W", F(1))], &[("E", "W", "V", F(1))]);
        let rep = EvaluationRep::new(c.algebra(), vec![Atom::new(1, 1)]).unwrap();
        assert!(matches!(c.interior_tensor(&c.full_submodule(), &rep), Err(Error::SymbolicOnly(_))));
    }

    #[test]
    fn tensor_power_examples() {
        let l = loop_l();
        let rep = EvaluationRep::new(l.algebra(), vec![Atom::new(0, 1)]).unwrap();
        let one = l.tensor_power_reduction(1, &rep, 100).unwrap();
        assert_eq!(one.k_atoms, rep.atoms());
        let three = l.tensor_power_reduction(3, &rep, 100).unwrap();
        assert_eq!(three.k_basis.len(), 1);
        assert_eq!(three.x_tensor_k.len(), 1);
        assert!(three.dimension_identity_holds());

        let sa = star_arm();
        let rep = EvaluationRep::new(sa.algebra(), vec![Atom::new(1, 1)]).unwrap();
        let two = sa.tensor_power_reduction(2, &rep, 100).unwrap();
        assert_eq!(two.k_basis, vec![PathVector { path: vec![EdgeCopy::first(0)], h: 0 }]);
        assert!(two.x_tensor_k.is_empty());
        assert!(two.dimension_identity_holds());
    }

    #[test]
    fn theta_decomposition_examples() {
        let sa = star_arm();
        let u = sa.algebra().index_of("U").unwrap();
        let thetas = sa.left_action_as_compacts(&AlgebraElement::class_indicator(u)).unwrap();
        assert_eq!(thetas.len(), 1);
        let f1 = ModuleElement::basis(EdgeCopy::first(1));
        let e1 = ModuleElement::basis(EdgeCopy::first(0));
        assert!(sa.apply_thetas(&thetas, &e1).is_zero());
        assert_eq!(sa.apply_thetas(&thetas, &f1), f1);

        let l = loop_l();
        let t = l.left_action_as_compacts(&AlgebraElement::class_indicator(0)).unwrap();
        assert_eq!(t, vec![Theta { x: ModuleElement::basis(EdgeCopy::first(0)), y: ModuleElement::basis(EdgeCopy::first(0)) }]);
        assert!(l.left_action_as_compacts(&AlgebraElement::zero()).unwrap().is_empty());

        let v = sa.algebra().index_of("V").unwrap();
        assert!(matches!(sa.left_action_as_compacts(&AlgebraElement::class_indicator(v)), Err(Error::Domain(_))));
    }

    #[test]
    fn rank_check_agrees_on_small_finite_graphs() {
        let c = graph(
            &[("a", F(2)), ("b", F(3))],
            &[("x", "a", "b", F(2)), ("y", "b", "b", F(1))],
        );
        assert!(c.nondegenerate_by_rank().unwrap());
        assert!(c.is_nondegenerate());
        assert!(star().nondegenerate_by_rank().is_err());
    }

    fn multi() -> Correspondence {
        graph(
            &[("a", F(2)), ("b", F(2))],
            &[("x", "a", "b", F(2)), ("y", "b", "a", F(1)), ("z", "b", "b", F(1))],
        )
    }

    fn arb_scalar() -> impl Strategy<Value = Scalar> {
        (-3i64..4, -3i64..4).prop_map(|(a, b)| sc(a) + sc(b) * imag_unit())
    }

    fn arb_module(c: Correspondence) -> impl Strategy<Value = ModuleElement> {
        let copies: Vec<EdgeCopy> = c.all_edge_copies().unwrap();
        proptest::collection::vec((proptest::sample::select(copies), arb_scalar()), 0..5)
            .prop_map(ModuleElement::from_terms)
    }

    fn arb_algebra() -> impl Strategy<Value = AlgebraElement> {
        proptest::collection::vec((0usize..2, 1u64..3, arb_scalar()), 0..4)
            .prop_map(|v| AlgebraElement::from_points(v.into_iter().map(|(c, k, z)| (Atom::new(c, k), z))))
    }

    proptest! {
        #[test]
        fn gram_is_positive_and_hermitian(x in arb_module(multi()), y in arb_module(multi())) {
            let c = multi();
            let g = c.inner(&x, &x);
            for a in c.all_atoms().unwrap() {
                let v = g.value_at(&a);
                prop_assert!(v.im.is_zero() && !v.re.is_negative());
            }
            prop_assert_eq!(g.is_zero(), x.is_zero());
            prop_assert_eq!(c.inner(&x, &y).adjoint(), c.inner(&y, &x));
        }

        #[test]
        fn bimodule_axioms(x in arb_module(multi()), y in arb_module(multi()), f in arb_algebra()) {
            let c = multi();
            prop_assert_eq!(c.inner(&c.left_act(&f, &x), &y), c.inner(&x, &c.left_act(&f.adjoint(), &y)));
            prop_assert_eq!(c.inner(&x, &c.right_act(&y, &f)), c.inner(&x, &y).mul(&f));
        }

        #[test]
        fn theta_regrouping_preserves_the_operator(z in arb_module(multi()), f in arb_algebra()) {
            let c = multi();
            let t = c.left_action_as_compacts(&f).unwrap();
            let lhs = c.apply_thetas(&t, &z);
            prop_assert_eq!(&lhs, &c.left_act(&f, &z));
            prop_assert_eq!(c.apply_thetas(&regroup_thetas(&t), &z), lhs);
        }
    }

    #[test]
    fn tensor_gram_matches_path_basis() {
        let c = multi();
        let rep = EvaluationRep::new(c.algebra(), vec![Atom::new(0, 1), Atom::new(1, 2)]).unwrap();
        let levels = c.tensor_basis(&rep, 3, 10_000).unwrap();
        for (n, basis) in levels.iter().enumerate() {
            for (i, p) in basis.iter().enumerate() {
                for (j, q) in basis.iter().enumerate() {
                    let a = TensorVector::new(&c, &rep, n, [(p.clone(), sc(1))]).unwrap();
                    let b = TensorVector::new(&c, &rep, n, [(q.clone(), sc(1))]).unwrap();
                    let expected = if i == j { sc(1) } else { sc(0) };
                    assert_eq!(c.tensor_inner(&rep, &a, &b), expected);
                }
            }
        }
    }
}
