//! Truncated Fock representations and the invariant, non-reducing subspace
//! that certifies a failure of hyperrigidity.
//!
//! Level `n` of the truncated space has the orthonormal basis of composable
//! paths `e₁ ⊗ … ⊗ eₙ ⊗ h`. `t₀(x)` prepends `x` and kills the top level, so
//! every Toeplitz relation is checked on levels `0..N` only.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::ops::Range;

use crate::algebra::{AlgebraElement, Atom, EvaluationRep, IdealSpec};
use crate::correspondence::{Correspondence, EdgeCopy, ModuleElement, PathVector, TensorVector, Theta};
use crate::error::{Error, Result};
use crate::linalg::SparseMatrix;
use crate::scalar::{abs_sq, format_rational, format_scalar, parse_rational, parse_scalar, Rational, Scalar};
use crate::topograph::{
    build_correspondence, decide_hyperrigid, Certificate, GraphPresentation, WitnessHandle, DEFAULT_BASIS_BUDGET,
    DEFAULT_FOCK_LEVEL,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FockConfig {
    pub level: usize,
    pub budget: usize,
}

impl Default for FockConfig {
    fn default() -> Self {
        Self { level: DEFAULT_FOCK_LEVEL, budget: DEFAULT_BASIS_BUDGET }
    }
}

/// Sparse vector on the whole truncated space, keyed by global basis index.
pub type SVec = BTreeMap<usize, Scalar>;

fn sinner(a: &SVec, b: &SVec) -> Scalar {
    let (small, large, flip) = if a.len() <= b.len() { (a, b, false) } else { (b, a, true) };
    small.iter().fold(Scalar::zero(), |acc, (i, x)| match large.get(i) {
        Some(y) if flip => acc + y.conj() * x,
        Some(y) => acc + x.conj() * y,
        None => acc,
    })
}

fn snorm_sq(a: &SVec) -> Rational {
    a.values().map(abs_sq).fold(Rational::zero(), |s, x| s + x)
}

fn smax_abs_sq(a: &SVec) -> Rational {
    a.values().map(abs_sq).fold(Rational::zero(), max)
}

fn saxpy(acc: &mut SVec, k: &Scalar, v: &SVec) {
    for (i, x) in v {
        let e = acc.entry(*i).or_insert_with(Scalar::zero);
        *e = &*e + k * x;
        if e.is_zero() {
            acc.remove(i);
        }
    }
}

fn ssub(a: &SVec, b: &SVec) -> SVec {
    let mut out = a.clone();
    saxpy(&mut out, &-Scalar::one(), b);
    out
}

/// Orthogonal (not normalised) basis built by exact Gram–Schmidt.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct OrthoBasis {
    vecs: Vec<SVec>,
    norms: Vec<Rational>,
}

impl OrthoBasis {
    pub fn spanning(vs: impl IntoIterator<Item = SVec>) -> Self {
        let mut b = Self::default();
        for v in vs {
            b.push(v);
        }
        b
    }

    pub fn len(&self) -> usize {
        self.vecs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vecs.is_empty()
    }

    pub fn vectors(&self) -> &[SVec] {
        &self.vecs
    }

    /// `v − P v`.
    pub fn residual(&self, v: &SVec) -> SVec {
        let mut r = v.clone();
        for (b, n) in self.vecs.iter().zip(&self.norms) {
            let c = sinner(b, v);
            if !c.is_zero() {
                saxpy(&mut r, &-(c / Scalar::from(n.clone())), b);
            }
        }
        r
    }

    pub fn project(&self, v: &SVec) -> SVec {
        ssub(v, &self.residual(v))
    }

    /// Adds the part of `v` orthogonal to the current span; false if there is none.
    pub fn push(&mut self, v: SVec) -> bool {
        let r = self.residual(&v);
        if r.is_empty() {
            return false;
        }
        self.norms.push(snorm_sq(&r));
        self.vecs.push(r);
        true
    }

    pub fn contains(&self, v: &SVec) -> bool {
        self.residual(v).is_empty()
    }

    pub fn same_span(&self, other: &Self) -> bool {
        self.len() == other.len() && other.vecs.iter().all(|v| self.contains(v))
    }

    fn projector(&self, dim: usize) -> SparseMatrix {
        let mut p = SparseMatrix::zeros(dim, dim);
        for (b, n) in self.vecs.iter().zip(&self.norms) {
            let inv = Scalar::from(n.clone()).inv();
            for (i, x) in b {
                for (j, y) in b {
                    p.add_at(*i, *j, &(x * y.conj() * &inv));
                }
            }
        }
        p
    }
}

/// Column-indexed copy of a matrix for repeated sparse application.
#[derive(Clone, Debug)]
struct Op {
    cols: HashMap<usize, Vec<(usize, Scalar)>>,
}

impl Op {
    fn new(m: &SparseMatrix) -> Self {
        let mut cols: HashMap<usize, Vec<(usize, Scalar)>> = HashMap::new();
        for (&(r, c), z) in m.entries() {
            cols.entry(c).or_default().push((r, z.clone()));
        }
        Self { cols }
    }

    fn apply(&self, v: &SVec) -> SVec {
        let mut out = SVec::new();
        for (c, x) in v {
            for (r, z) in self.cols.get(c).into_iter().flatten() {
                let e = out.entry(*r).or_insert_with(Scalar::zero);
                *e = &*e + z * x;
            }
        }
        out.retain(|_, z| !z.is_zero());
        out
    }
}

#[derive(Clone, Debug)]
pub struct TruncatedFock {
    corr: Correspondence,
    sigma: EvaluationRep,
    levels: Vec<Vec<PathVector>>,
    offsets: Vec<usize>,
    index: HashMap<PathVector, usize>,
    anchors: Vec<Atom>,
    gram_diagonal: Vec<Vec<Rational>>,
    canonical: ToeplitzCache,
}

#[derive(Clone, Debug, Default)]
struct ToeplitzCache {
    family: ToeplitzFamily,
    t: BTreeMap<EdgeCopy, Op>,
}

/// An operator on the truncated space that shifts levels by `degree`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedOperator {
    pub degree: i32,
    pub matrix: SparseMatrix,
}

impl GradedOperator {
    /// The block from level `n` to level `n + degree`.
    pub fn block(&self, fock: &TruncatedFock, n: usize) -> Option<SparseMatrix> {
        let to = usize::try_from(n as i64 + self.degree as i64).ok()?;
        (to <= fock.top_level()).then(|| fock.block(&self.matrix, n, to))
    }
}

/// `ρ` on the point masses and `t` on the edge copies that meet the truncated space.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ToeplitzFamily {
    pub rho: BTreeMap<Atom, SparseMatrix>,
    pub t: BTreeMap<EdgeCopy, SparseMatrix>,
}

/// Squared deviations for the isometric-representation checks; all must be exactly zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsometricReport {
    /// `t(x)*t(y) = ρ(⟨x,y⟩)` below the top level.
    pub inner: Rational,
    /// `ρ(c)t(x) = t(φ(c)x)` below the top level.
    pub left: Rational,
    /// Distance from the operators rebuilt out of the correspondence. Catches gauge
    /// changes such as a sign flip on `t`, which the two relations cannot see.
    pub canonical: Rational,
    /// `ρ(δ_a)ρ(δ_b) = δ_{ab}ρ(δ_a)` and `ρ(δ_a)* = ρ(δ_a)`.
    pub rho_hom: Rational,
}

impl IsometricReport {
    pub fn named(&self) -> [(&'static str, &Rational); 4] {
        [("inner", &self.inner), ("left", &self.left), ("canonical", &self.canonical), ("rho_hom", &self.rho_hom)]
    }

    pub fn first_failure(&self) -> Option<&'static str> {
        self.named().into_iter().find(|(_, r)| !r.is_zero()).map(|(n, _)| n)
    }
}

/// `M₀` inside level 1 and the graded subspace `M` it generates; level 0 of `M` is zero.
#[derive(Clone, Debug, PartialEq)]
pub struct WitnessSubspace {
    pub m0: OrthoBasis,
    pub levels: Vec<OrthoBasis>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CovarianceReport {
    pub residual: Rational,
    /// `M ⊖ t(X)M`, level by level.
    pub complement: Vec<OrthoBasis>,
}

/// A vector of `M^⊥` pushed into `M` by a generator.
#[derive(Clone, Debug, PartialEq)]
pub struct NonReducing {
    pub vacuum: usize,
    pub generator: EdgeCopy,
    pub projection_norm_sq: Rational,
}

pub fn build_fock(c: &Correspondence, sigma: &EvaluationRep, cfg: FockConfig) -> Result<TruncatedFock> {
    let levels = c.tensor_basis(sigma, cfg.level, cfg.budget)?;
    let mut offsets = vec![0];
    for l in &levels {
        offsets.push(offsets.last().unwrap() + l.len());
    }
    let index = levels.iter().flatten().enumerate().map(|(i, pv)| (pv.clone(), i)).collect();
    let anchors = levels.iter().flatten().map(|pv| c.anchor(pv, sigma)).collect();
    let mut fock = TruncatedFock {
        corr: c.clone(),
        sigma: sigma.clone(),
        levels,
        offsets,
        index,
        anchors,
        gram_diagonal: Vec::new(),
        canonical: ToeplitzCache::default(),
    };
    fock.gram_diagonal = fock.compute_gram()?;
    let family = ToeplitzFamily {
        rho: fock.atoms().into_iter().map(|a| (a, fock.rho(&AlgebraElement::delta(a)))).collect(),
        t: fock.generators().into_iter().map(|e| (e, fock.t(&ModuleElement::basis(e)))).collect(),
    };
    fock.canonical = ToeplitzCache {
        t: family.t.iter().map(|(e, m)| (*e, Op::new(m))).collect(),
        family,
    };
    Ok(fock)
}

impl TruncatedFock {
    pub fn top_level(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn dim(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn level(&self, n: usize) -> &[PathVector] {
        &self.levels[n]
    }

    pub fn level_dim(&self, n: usize) -> usize {
        self.levels[n].len()
    }

    /// Global indices of level `n`.
    pub fn level_range(&self, n: usize) -> Range<usize> {
        self.offsets[n]..self.offsets[n + 1]
    }

    pub fn level_of(&self, i: usize) -> usize {
        self.offsets.partition_point(|&o| o <= i) - 1
    }

    pub fn correspondence(&self) -> &Correspondence {
        &self.corr
    }

    pub fn sigma(&self) -> &EvaluationRep {
        &self.sigma
    }

    pub fn gram_diagonal(&self) -> &[Vec<Rational>] {
        &self.gram_diagonal
    }

    pub fn label(&self, pv: &PathVector) -> String {
        let mut parts: Vec<String> = pv.path.iter().map(|e| self.corr.copy_label(e)).collect();
        parts.push(self.corr.algebra().atom_label(&self.sigma.atoms()[pv.h]));
        parts.join("⊗")
    }

    pub fn level_labels(&self) -> Vec<Vec<String>> {
        self.levels.iter().map(|l| l.iter().map(|pv| self.label(pv)).collect()).collect()
    }

    /// Gram matrix of each level, which must be the identity. Paths that differ in
    /// some factor are orthogonal already at that factor, so off-diagonal entries are
    /// computed for paths sharing a first edge; large buckets check sorted neighbours.
    fn compute_gram(&self) -> Result<Vec<Vec<Rational>>> {
        const FULL_BUCKET: usize = 64;
        let mut diag = Vec::new();
        for (n, level) in self.levels.iter().enumerate() {
            let tv = |pv: &PathVector| {
                TensorVector::new(&self.corr, &self.sigma, n, [(pv.clone(), Scalar::one())]).expect("basis tensor")
            };
            let vecs: Vec<TensorVector> = level.iter().map(tv).collect();
            let mut d = Vec::with_capacity(level.len());
            for v in &vecs {
                let g = self.corr.tensor_inner(&self.sigma, v, v);
                if !g.im.is_zero() || g.re.is_zero() {
                    return Err(Error::Inconsistency(format!("degenerate Gram entry at level {n}")));
                }
                d.push(g.re);
            }
            let mut buckets: BTreeMap<Option<EdgeCopy>, Vec<usize>> = BTreeMap::new();
            for (i, pv) in level.iter().enumerate() {
                buckets.entry(pv.path.first().copied()).or_default().push(i);
            }
            for members in buckets.values() {
                let pairs: Vec<(usize, usize)> = if members.len() <= FULL_BUCKET {
                    members.iter().flat_map(|&i| members.iter().map(move |&j| (i, j))).filter(|(i, j)| i != j).collect()
                } else {
                    members.windows(2).map(|w| (w[0], w[1])).collect()
                };
                for (i, j) in pairs {
                    if !self.corr.tensor_inner(&self.sigma, &vecs[i], &vecs[j]).is_zero() {
                        return Err(Error::Inconsistency(format!("level {n} basis is not orthogonal")));
                    }
                }
            }
            if d.iter().any(|g| !g.is_one()) {
                return Err(Error::Inconsistency(format!("level {n} basis is not normalised")));
            }
            diag.push(d);
        }
        Ok(diag)
    }

    /// Edge copies that occur as a first factor somewhere in the truncated space.
    pub fn generators(&self) -> Vec<EdgeCopy> {
        let set: BTreeSet<EdgeCopy> = self.levels.iter().flatten().filter_map(|pv| pv.path.first().copied()).collect();
        set.into_iter().collect()
    }

    /// Atoms through which the coefficients act on some basis vector.
    pub fn atoms(&self) -> Vec<Atom> {
        let set: BTreeSet<Atom> = self.anchors.iter().copied().collect();
        set.into_iter().collect()
    }

    pub fn index_of(&self, pv: &PathVector) -> Option<usize> {
        self.index.get(pv).copied()
    }

    /// `ρ₀(f)`, diagonal with entries `f(r(e₁))`, or `f(atom of h)` on level 0.
    pub fn rho(&self, f: &AlgebraElement) -> SparseMatrix {
        let mut m = SparseMatrix::zeros(self.dim(), self.dim());
        for (i, a) in self.anchors.iter().enumerate() {
            m.set(i, i, f.value_at(a));
        }
        m
    }

    /// `t₀(x)`: prepends `x`; zero on the top level.
    pub fn t(&self, x: &ModuleElement) -> SparseMatrix {
        let mut by_source: BTreeMap<Atom, Vec<(EdgeCopy, &Scalar)>> = BTreeMap::new();
        for (e, z) in x.terms() {
            by_source.entry(self.corr.source_atom(e)).or_default().push((*e, z));
        }
        let mut m = SparseMatrix::zeros(self.dim(), self.dim());
        for n in 0..self.top_level() {
            for (k, pv) in self.levels[n].iter().enumerate() {
                let col = self.offsets[n] + k;
                let Some(terms) = by_source.get(&self.anchors[col]) else { continue };
                for (e, z) in terms {
                    let mut path = vec![*e];
                    path.extend_from_slice(&pv.path);
                    let row = self.index[&PathVector { path, h: pv.h }];
                    m.set(row, col, (*z).clone());
                }
            }
        }
        m
    }

    pub fn family(&self) -> ToeplitzFamily {
        self.canonical.family.clone()
    }

    fn t_op(&self, e: &EdgeCopy) -> Option<&Op> {
        self.canonical.t.get(e)
    }

    /// The block of `m` from level `from` to level `to`, in level coordinates.
    pub fn block(&self, m: &SparseMatrix, from: usize, to: usize) -> SparseMatrix {
        let (cols, rows) = (self.level_range(from), self.level_range(to));
        let mut out = SparseMatrix::zeros(rows.len(), cols.len());
        for (&(r, c), z) in m.entries() {
            if rows.contains(&r) && cols.contains(&c) {
                out.set(r - rows.start, c - cols.start, z.clone());
            }
        }
        out
    }

    pub fn basis_vector(&self, i: usize) -> SVec {
        SVec::from([(i, Scalar::one())])
    }

    /// Keeps only columns below the top level.
    fn below_top(&self, m: &SparseMatrix) -> SparseMatrix {
        let cut = self.offsets[self.top_level()];
        let mut out = SparseMatrix::zeros(m.rows, m.cols);
        for (&(r, c), z) in m.entries() {
            if c < cut {
                out.set(r, c, z.clone());
            }
        }
        out
    }
}

fn max(a: Rational, b: Rational) -> Rational {
    if b > a {
        b
    } else {
        a
    }
}

fn row_support(m: &SparseMatrix) -> BTreeSet<usize> {
    m.entries().map(|(&(r, _), _)| r).collect()
}

/// `(inner, left, rho_hom)` for an arbitrary family on the truncated space.
fn relation_residuals(fock: &TruncatedFock, fam: &ToeplitzFamily) -> (Rational, Rational, Rational) {
    let dim = fock.dim();
    let zero = SparseMatrix::zeros(dim, dim);
    let c = &fock.corr;
    let rho_at = |a: &Atom| fam.rho.get(a).unwrap_or(&zero);
    let t_at = |e: &EdgeCopy| fam.t.get(e).unwrap_or(&zero);
    let gens: Vec<EdgeCopy> =
        fock.generators().into_iter().chain(fam.t.keys().copied()).collect::<BTreeSet<_>>().into_iter().collect();
    let atoms: Vec<Atom> =
        fock.atoms().into_iter().chain(fam.rho.keys().copied()).collect::<BTreeSet<_>>().into_iter().collect();
    let supports: Vec<BTreeSet<usize>> = gens.iter().map(|e| row_support(t_at(e))).collect();

    let mut inner = Rational::zero();
    for (i, e) in gens.iter().enumerate() {
        for (j, f) in gens.iter().enumerate() {
            let expected = if e == f { fock.below_top(rho_at(&c.source_atom(e))) } else { zero.clone() };
            if supports[i].is_disjoint(&supports[j]) && expected.is_zero() {
                continue;
            }
            let prod = fock.below_top(&t_at(e).adjoint().mul(t_at(f)));
            inner = max(inner, prod.sub(&expected).max_abs_sq());
        }
    }

    let mut left = Rational::zero();
    for a in &atoms {
        for e in &gens {
            let lhs = fock.below_top(&rho_at(a).mul(t_at(e)));
            let rhs = if c.range_atom(e) == *a { fock.below_top(t_at(e)) } else { zero.clone() };
            left = max(left, lhs.sub(&rhs).max_abs_sq());
        }
    }

    let mut rho_hom = Rational::zero();
    let rho_supports: Vec<BTreeSet<usize>> = atoms.iter().map(|a| row_support(rho_at(a))).collect();
    for (i, a) in atoms.iter().enumerate() {
        rho_hom = max(rho_hom, rho_at(a).adjoint().sub(rho_at(a)).max_abs_sq());
        for (j, b) in atoms.iter().enumerate() {
            if i != j && rho_supports[i].is_disjoint(&rho_supports[j]) {
                continue;
            }
            let expected = if a == b { rho_at(a).clone() } else { zero.clone() };
            rho_hom = max(rho_hom, rho_at(a).mul(rho_at(b)).sub(&expected).max_abs_sq());
        }
    }
    (inner, left, rho_hom)
}

pub fn verify_isometric_rep(fock: &TruncatedFock, fam: &ToeplitzFamily) -> IsometricReport {
    let (inner, left, rho_hom) = relation_residuals(fock, fam);
    let canon = &fock.canonical.family;
    let zero = SparseMatrix::zeros(fock.dim(), fock.dim());
    let mut canonical = Rational::zero();
    for a in canon.rho.keys().chain(fam.rho.keys()) {
        let d = fam.rho.get(a).unwrap_or(&zero).sub(canon.rho.get(a).unwrap_or(&zero));
        canonical = max(canonical, d.max_abs_sq());
    }
    for e in canon.t.keys().chain(fam.t.keys()) {
        let d = fam.t.get(e).unwrap_or(&zero).sub(canon.t.get(e).unwrap_or(&zero));
        canonical = max(canonical, d.max_abs_sq());
    }
    IsometricReport { inner, left, canonical, rho_hom }
}

/// `ψ_t(Σ θ_{xᵢ,yᵢ}) = Σ t(xᵢ)t(yᵢ)*`.
pub fn psi_t(fock: &TruncatedFock, thetas: &[Theta]) -> GradedOperator {
    let dim = fock.dim();
    let matrix = thetas
        .iter()
        .fold(SparseMatrix::zeros(dim, dim), |acc, th| acc.add(&fock.t(&th.x).mul(&fock.t(&th.y).adjoint())));
    GradedOperator { degree: 0, matrix }
}

/// `t₀(X)` applied to every vector of `space`.
fn t_images<'a>(fock: &'a TruncatedFock, space: &'a OrthoBasis) -> impl Iterator<Item = SVec> + 'a {
    fock.canonical.t.values().flat_map(move |op| space.vectors().iter().map(move |v| op.apply(v)))
}

/// `M₀ = (φ(J)X ⊗_σ H)^⊥` in level 1 and `Mₙ = X^{⊗(n−1)} ⊗ M₀`, cross-checked
/// against the span of `t₀(X)` applied repeatedly to `M₀`.
pub fn build_witness_subspace(fock: &TruncatedFock, j: &IdealSpec) -> Result<WitnessSubspace> {
    let c = &fock.corr;
    let span = c.ideal_act_submodule(j);
    if span.is_full() {
        return Err(Error::Refused("φ(J)X = X: the ideal acts non-degenerately, so no counterexample exists".into()));
    }
    if fock.top_level() < 1 {
        return Err(Error::Domain("the witness needs at least one Fock level".into()));
    }
    let m0 = OrthoBasis::spanning(
        fock.level_range(1)
            .zip(&fock.levels[1])
            .filter(|(_, pv)| !span.contains_class(pv.path[0].class))
            .map(|(i, _)| fock.basis_vector(i)),
    );
    if m0.is_empty() {
        return Err(Error::Refused("φ(J)X ⊗_σ H = X ⊗_σ H for this σ".into()));
    }
    let mut levels = vec![OrthoBasis::default(), m0.clone()];
    for n in 2..=fock.top_level() {
        let mut groups: BTreeMap<&[EdgeCopy], Vec<(usize, usize)>> = BTreeMap::new();
        for (i, pv) in fock.level_range(n).zip(&fock.levels[n]) {
            let tail = PathVector { path: vec![pv.path[n - 1]], h: pv.h };
            let k = fock.index_of(&tail).ok_or_else(|| Error::Inconsistency("path tail missing from level 1".into()))?;
            groups.entry(&pv.path[..n - 1]).or_default().push((i, k));
        }
        let vs = groups.values().flat_map(|members| {
            m0.vectors().iter().map(move |m| {
                members.iter().filter_map(|&(i, k)| m.get(&k).map(|z| (i, z.clone()))).collect::<SVec>()
            })
        });
        levels.push(OrthoBasis::spanning(vs));
    }
    let mut closure = m0.clone();
    for (n, expected) in levels.iter().enumerate().skip(2) {
        closure = OrthoBasis::spanning(t_images(fock, &closure).collect::<Vec<_>>());
        if !closure.same_span(expected) {
            return Err(Error::Inconsistency(format!("level {n} of M differs from the t₀(X)-closure of M₀")));
        }
    }
    Ok(WitnessSubspace { m0, levels })
}

fn diag_apply(fock: &TruncatedFock, a: &Atom, v: &SVec) -> SVec {
    v.iter().filter(|(i, _)| fock.anchors[**i] == *a).map(|(i, z)| (*i, z.clone())).collect()
}

/// Squared residuals of `ρ₀(J)M₀ = 0` and `span ρ₀(C)M₀ = M₀`.
pub fn verify_eq_use(fock: &TruncatedFock, m0: &OrthoBasis, j: &IdealSpec) -> (Rational, Rational) {
    let atoms: BTreeSet<Atom> = fock.level_range(1).map(|i| fock.anchors[i]).collect();
    let mut use1 = Rational::zero();
    for a in atoms.iter().filter(|a| j.contains_atom(a)) {
        for m in m0.vectors() {
            use1 = max(use1, smax_abs_sq(&diag_apply(fock, a, m)));
        }
    }
    let images =
        OrthoBasis::spanning(atoms.iter().flat_map(|a| m0.vectors().iter().map(move |m| diag_apply(fock, a, m))));
    let mut use2 = Rational::zero();
    for m in m0.vectors() {
        use2 += snorm_sq(&images.residual(m));
    }
    for v in images.vectors() {
        use2 += snorm_sq(&m0.residual(v));
    }
    (use1, use2)
}

/// `space ⊖ t(X)space`, level by level. Requires `t₀(X)space ⊆ space`.
pub fn wandering_complement(fock: &TruncatedFock, space: &[OrthoBasis]) -> Result<Vec<OrthoBasis>> {
    let mut out = Vec::new();
    for (n, basis) in space.iter().enumerate() {
        if n == 0 {
            out.push(basis.clone());
            continue;
        }
        let img = OrthoBasis::spanning(t_images(fock, &space[n - 1]).collect::<Vec<_>>());
        if !img.vectors().iter().all(|v| basis.contains(v)) {
            return Err(Error::Domain(format!("level {n} of the subspace is not t₀-invariant")));
        }
        out.push(OrthoBasis::spanning(basis.vectors().iter().map(|b| img.residual(b))));
    }
    Ok(out)
}

/// Covariance `ψ_t(φ(δ_u))h = ρ(δ_u)h` for atoms `u` of `J` on `h ∈ space ⊖ t(X)space`.
pub fn check_cuntz_pimsner(fock: &TruncatedFock, space: &[OrthoBasis], j: &IdealSpec) -> Result<CovarianceReport> {
    const COPY_CAP: u64 = 64;
    let complement = wandering_complement(fock, space)?;
    let c = &fock.corr;
    let mut atoms: BTreeSet<Atom> = fock.atoms().into_iter().filter(|a| j.contains_atom(a)).collect();
    for &class in j.support() {
        atoms.extend(c.algebra().copies(class, COPY_CAP));
    }
    let mut residual = Rational::zero();
    for u in atoms {
        let thetas = c.left_action_as_compacts(&AlgebraElement::delta(u))?;
        let psi = Op::new(&psi_t(fock, &thetas).matrix);
        for h in complement.iter().flat_map(OrthoBasis::vectors) {
            residual = max(residual, smax_abs_sq(&ssub(&psi.apply(h), &diag_apply(fock, &u, h))));
        }
    }
    Ok(CovarianceReport { residual, complement })
}

/// Squared distance from `M` of `ρ₀(C)M` and of `t₀(X)M` below the top level.
pub fn invariance_residual(fock: &TruncatedFock, m: &WitnessSubspace) -> Rational {
    let mut res = Rational::zero();
    let top = fock.top_level();
    for n in 0..=top {
        for v in m.levels[n].vectors() {
            if n < top {
                for op in fock.canonical.t.values() {
                    res = max(res, snorm_sq(&m.levels[n + 1].residual(&op.apply(v))));
                }
            }
            let touched: BTreeSet<Atom> = v.keys().map(|i| fock.anchors[*i]).collect();
            for a in touched {
                res = max(res, snorm_sq(&m.levels[n].residual(&diag_apply(fock, &a, v))));
            }
        }
    }
    res
}

/// The relations for the compression `(P ρ₀ P, P t₀ P)` to `M`.
pub fn restricted_residual(fock: &TruncatedFock, m: &WitnessSubspace) -> Rational {
    let dim = fock.dim();
    let p = m.levels.iter().fold(SparseMatrix::zeros(dim, dim), |acc, l| acc.add(&l.projector(dim)));
    let compress = |x: &SparseMatrix| p.mul(x).mul(&p);
    let canon = &fock.canonical.family;
    let fam = ToeplitzFamily {
        rho: canon.rho.iter().map(|(a, r)| (*a, compress(r))).collect(),
        t: canon.t.iter().map(|(e, t)| (*e, compress(t))).collect(),
    };
    let (inner, left, rho_hom) = relation_residuals(fock, &fam);
    max(max(inner, left), rho_hom)
}

/// A level-0 vector `h ⊥ M` and a generator `x` with `P_M t₀(x)h ≠ 0`.
pub fn check_reducing(fock: &TruncatedFock, m: &WitnessSubspace) -> Result<NonReducing> {
    for h in fock.level_range(0) {
        let hv = fock.basis_vector(h);
        if m.levels[0].vectors().iter().any(|b| !sinner(b, &hv).is_zero()) {
            continue;
        }
        for (e, op) in &fock.canonical.t {
            let p = snorm_sq(&m.levels[1].project(&op.apply(&hv)));
            if !p.is_zero() {
                return Ok(NonReducing { vacuum: h, generator: *e, projection_norm_sq: p });
            }
        }
    }
    Err(Error::Inconsistency("no vacuum vector is moved into M; M would be reducing".into()))
}

/// Level-local sparse vector: `[index, value]` pairs.
pub type SparseEntries = Vec<(usize, String)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonReducingRecord {
    pub vacuum: String,
    pub generator: String,
    pub projection_norm_sq: String,
}

/// Serialized non-maximality certificate. Every number is an exact rational or
/// Gaussian rational written as a string; vectors are sparse in level coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessCertificate {
    /// `"discrete"`, or `"interval"` for the finite model of an interval graph around `σ`.
    pub instance_kind: String,
    pub sigma: Vec<String>,
    pub fock_level: usize,
    pub levels: Vec<Vec<String>>,
    pub gram: Vec<Vec<String>>,
    pub ideal: Vec<String>,
    pub m0: Vec<SparseEntries>,
    pub m: Vec<Vec<SparseEntries>>,
    pub residuals: BTreeMap<String, String>,
    pub non_reducing: NonReducingRecord,
    pub conclusion: String,
}

pub const RESIDUAL_NAMES: [&str; 9] =
    ["inner", "left", "canonical", "rho_hom", "eq_use1", "eq_use2", "covariance", "invariance", "restricted"];

/// Every residual of the pipeline for a Fock space, a family and a candidate `M`.
pub fn run_checks(
    fock: &TruncatedFock,
    fam: &ToeplitzFamily,
    m: &WitnessSubspace,
    j: &IdealSpec,
) -> Result<(BTreeMap<&'static str, Rational>, Vec<OrthoBasis>)> {
    let iso = verify_isometric_rep(fock, fam);
    let (use1, use2) = verify_eq_use(fock, &m.m0, j);
    let cp = check_cuntz_pimsner(fock, &m.levels, j)?;
    let mut residuals: BTreeMap<&'static str, Rational> = iso.named().into_iter().map(|(n, r)| (n, r.clone())).collect();
    residuals.insert("eq_use1", use1);
    residuals.insert("eq_use2", use2);
    residuals.insert("covariance", cp.residual);
    residuals.insert("invariance", invariance_residual(fock, m));
    residuals.insert("restricted", restricted_residual(fock, m));
    Ok((residuals, cp.complement))
}

fn emit_vec(fock: &TruncatedFock, n: usize, v: &SVec) -> SparseEntries {
    let off = fock.offsets[n];
    v.iter().map(|(i, z)| (i - off, format_scalar(z))).collect()
}

/// Builds and checks the counterexample for a given correspondence, representation and ideal.
pub fn construct_witness(
    c: &Correspondence,
    sigma: &EvaluationRep,
    j: &IdealSpec,
    cfg: FockConfig,
    instance_kind: &str,
) -> Result<WitnessCertificate> {
    let fock = build_fock(c, sigma, cfg)?;
    let m = build_witness_subspace(&fock, j)?;
    let (residuals, complement) = run_checks(&fock, &fock.canonical.family, &m, j)?;
    if let Some((name, r)) = residuals.iter().find(|(_, r)| !r.is_zero()) {
        return Err(Error::Inconsistency(format!("residual {name} = {} on a constructed witness", format_rational(r))));
    }
    let wandering_is_m0 = complement
        .iter()
        .enumerate()
        .all(|(n, w)| if n == 1 { w.same_span(&m.m0) } else { w.is_empty() });
    if !wandering_is_m0 {
        return Err(Error::Inconsistency("M ⊖ t(X)M differs from 0 ⊕ M₀ ⊕ 0 ⊕ …".into()));
    }
    let nr = check_reducing(&fock, &m)?;
    Ok(WitnessCertificate {
        instance_kind: instance_kind.to_string(),
        sigma: sigma.atoms().iter().map(|a| c.algebra().atom_label(a)).collect(),
        fock_level: fock.top_level(),
        levels: fock.level_labels(),
        gram: fock.gram_diagonal.iter().map(|l| l.iter().map(format_rational).collect()).collect(),
        ideal: j.names(),
        m0: m.m0.vectors().iter().map(|v| emit_vec(&fock, 1, v)).collect(),
        m: m.levels.iter().enumerate().map(|(n, l)| l.vectors().iter().map(|v| emit_vec(&fock, n, v)).collect()).collect(),
        residuals: residuals.iter().map(|(k, v)| (k.to_string(), format_rational(v))).collect(),
        non_reducing: NonReducingRecord {
            vacuum: fock.label(&fock.levels[0][nr.vacuum]),
            generator: c.copy_label(&nr.generator),
            projection_norm_sq: format_rational(&nr.projection_norm_sq),
        },
        conclusion: "M is invariant and not reducing, and the compression to M is covariant; \
                     that compression is a non-maximal representation"
            .into(),
    })
}

/// The correspondence, representation and ideal a certificate is built from.
#[derive(Clone, Debug)]
pub struct Setting {
    pub corr: Correspondence,
    pub sigma: EvaluationRep,
    pub ideal: IdealSpec,
}

/// Discrete graphs use the σ-witness of the correspondence itself; interval graphs use
/// the finite local model around the witness vertex, explored to the Fock level.
pub fn setting_for(g: &GraphPresentation, cfg: FockConfig) -> Result<Setting> {
    match g {
        GraphPresentation::Discrete(d) => {
            let corr = build_correspondence(d);
            if corr.is_nondegenerate() {
                return Err(Error::Refused("the graph is hyperrigid; there is no counterexample to build".into()));
            }
            let w = corr.sigma_degeneracy_witness().expect("degenerate correspondences have a witness");
            let ideal = corr.katsura_ideal();
            Ok(Setting { sigma: w.rep, ideal, corr })
        }
        GraphPresentation::Interval(i) => {
            let verdict = decide_hyperrigid(g)?;
            let Certificate::SigmaWitness(WitnessHandle::Interval { atom, .. }) = verdict.certificate else {
                return Err(Error::Refused("the graph is hyperrigid; there is no counterexample to build".into()));
            };
            let model = i.local_model(&atom, cfg.level, cfg.budget)?;
            Ok(Setting { corr: model.corr, sigma: model.sigma, ideal: model.ideal })
        }
    }
}

fn kind_of(g: &GraphPresentation) -> &'static str {
    match g {
        GraphPresentation::Discrete(_) => "discrete",
        GraphPresentation::Interval(_) => "interval",
    }
}

/// Full counterexample pipeline for a graph that is not hyperrigid.
pub fn witness_for(g: &GraphPresentation, cfg: FockConfig) -> Result<WitnessCertificate> {
    let s = setting_for(g, cfg)?;
    construct_witness(&s.corr, &s.sigma, &s.ideal, cfg, kind_of(g))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOutcome {
    pub ok: bool,
    /// Name of the first failing check.
    pub failing: Option<String>,
}

impl VerifyOutcome {
    fn pass() -> Self {
        Self { ok: true, failing: None }
    }

    fn fail(name: impl Into<String>) -> Self {
        Self { ok: false, failing: Some(name.into()) }
    }
}

/// Parses claimed vectors of level `n`; `None` if malformed or dependent.
fn parse_basis(fock: &TruncatedFock, n: usize, rows: &[SparseEntries]) -> Option<OrthoBasis> {
    let mut basis = OrthoBasis::default();
    for row in rows {
        let mut v = SVec::new();
        for (i, s) in row {
            if *i >= fock.level_dim(n) || v.contains_key(&(fock.offsets[n] + i)) {
                return None;
            }
            let z = parse_scalar(s).ok()?;
            if !z.is_zero() {
                v.insert(fock.offsets[n] + i, z);
            }
        }
        if !basis.push(v) {
            return None;
        }
    }
    Some(basis)
}

/// Rebuilds everything from the instance and re-checks the certificate's claims.
pub fn verify_certificate(cert: &WitnessCertificate, g: &GraphPresentation, budget: usize) -> VerifyOutcome {
    if cert.instance_kind != kind_of(g) {
        return VerifyOutcome::fail("instance_kind");
    }
    let cfg = FockConfig { level: cert.fock_level, budget };
    let Ok(Setting { corr, sigma: expected_sigma, ideal }) = setting_for(g, cfg) else {
        return VerifyOutcome::fail("instance");
    };
    let sigma = cert
        .sigma
        .iter()
        .map(|l| corr.algebra().parse_atom(l))
        .collect::<Result<Vec<_>>>()
        .and_then(|atoms| EvaluationRep::new(corr.algebra(), atoms));
    let sigma = match sigma {
        Ok(s) if s == expected_sigma => s,
        _ => return VerifyOutcome::fail("sigma"),
    };
    if cert.ideal != ideal.names() {
        return VerifyOutcome::fail("ideal");
    }
    let Ok(fock) = build_fock(&corr, &sigma, cfg) else {
        return VerifyOutcome::fail("fock");
    };
    if cert.levels != fock.level_labels() {
        return VerifyOutcome::fail("levels");
    }
    let gram: Vec<Vec<String>> = fock.gram_diagonal.iter().map(|l| l.iter().map(format_rational).collect()).collect();
    if cert.gram != gram {
        return VerifyOutcome::fail("gram");
    }
    let Ok(rebuilt) = build_witness_subspace(&fock, &ideal) else {
        return VerifyOutcome::fail("m0");
    };
    let m0 = match parse_basis(&fock, 1, &cert.m0) {
        Some(b) if b.same_span(&rebuilt.m0) => b,
        _ => return VerifyOutcome::fail("m0"),
    };
    if cert.m.len() != fock.top_level() + 1 {
        return VerifyOutcome::fail("m");
    }
    let mut levels = Vec::new();
    for (n, rows) in cert.m.iter().enumerate() {
        match parse_basis(&fock, n, rows) {
            Some(b) if b.same_span(&rebuilt.levels[n]) => levels.push(b),
            _ => return VerifyOutcome::fail("m"),
        }
    }
    let claimed = WitnessSubspace { m0, levels };
    let Ok((residuals, _)) = run_checks(&fock, &fock.canonical.family, &claimed, &ideal) else {
        return VerifyOutcome::fail("residual:covariance");
    };
    for name in RESIDUAL_NAMES {
        let actual = &residuals[name];
        let ok = cert
            .residuals
            .get(name)
            .and_then(|s| parse_rational(s).ok())
            .is_some_and(|c| &c == actual && c.is_zero());
        if !ok {
            return VerifyOutcome::fail(format!("residual:{name}"));
        }
    }
    let nr = &cert.non_reducing;
    let vacuum = fock.level_range(0).find(|&i| fock.label(&fock.levels[0][i]) == nr.vacuum);
    let generator = corr.parse_copy(&nr.generator).ok();
    let claimed_norm = parse_rational(&nr.projection_norm_sq).ok();
    let (Some(h), Some(e), Some(claimed_norm)) = (vacuum, generator, claimed_norm) else {
        return VerifyOutcome::fail("non_reducing");
    };
    let hv = fock.basis_vector(h);
    let in_perp = claimed.levels[0].vectors().iter().all(|b| sinner(b, &hv).is_zero());
    let p = fock
        .t_op(&e)
        .map(|op| snorm_sq(&claimed.levels[1].project(&op.apply(&hv))))
        .unwrap_or_else(Rational::zero);
    if !in_perp || p.is_zero() || p != claimed_norm {
        return VerifyOutcome::fail("non_reducing");
    }
    VerifyOutcome::pass()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AtomSet;
    use crate::algebra::Cardinal::{self, Finite as F, Omega};
    use crate::correspondence::EdgeClass;
    use crate::scalar::{imag_unit, sc};
    use std::sync::Arc;

    fn graph(vs: &[(&str, Cardinal)], es: &[(&str, &str, &str, Cardinal)]) -> Correspondence {
        let atoms = Arc::new(AtomSet::new(vs.iter().map(|(n, c)| (n.to_string(), *c)).collect()).unwrap());
        let idx = |n: &str| atoms.index_of(n).unwrap();
        let edges = es
            .iter()
            .map(|(n, s, r, m)| EdgeClass { name: n.to_string(), source: idx(s), range: idx(r), mult: *m })
            .collect();
        Correspondence::new(atoms.clone(), edges).unwrap()
    }

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

    fn at(c: &Correspondence, label: &str) -> EvaluationRep {
        EvaluationRep::new(c.algebra(), vec![c.algebra().parse_atom(label).unwrap()]).unwrap()
    }

    fn cfg(level: usize) -> FockConfig {
        FockConfig { level, budget: 10_000 }
    }

    fn dims(f: &TruncatedFock) -> Vec<usize> {
        (0..=f.top_level()).map(|n| f.level_dim(n)).collect()
    }

    fn unit_at(f: &TruncatedFock, n: usize) -> SVec {
        f.basis_vector(f.level_range(n).start)
    }

    #[test]
    fn fock_dimensions() {
        let sa = star_arm();
        assert_eq!(dims(&build_fock(&sa, &at(&sa, "W#1"), cfg(3)).unwrap()), [1, 1, 0, 0]);
        let l = loop_l();
        assert_eq!(dims(&build_fock(&l, &at(&l, "v#1"), cfg(3)).unwrap()), [1, 1, 1, 1]);
        let a = arrow();
        assert_eq!(dims(&build_fock(&a, &at(&a, "v#1"), cfg(2)).unwrap()), [1, 0, 0]);
    }

    #[test]
    fn budget_and_symbolic_errors() {
        let big = graph(&[("v", F(1))], &[("e", "v", "v", F(30))]);
        let r = build_fock(&big, &at(&big, "v#1"), FockConfig { level: 3, budget: 1000 });
        assert!(matches!(r, Err(Error::Budget { .. })));
        let wide = graph(&[("V", Omega), ("W", F(1))], &[("E", "W", "V", F(1))]);
        assert!(matches!(build_fock(&wide, &at(&wide, "W#1"), cfg(2)), Err(Error::SymbolicOnly(_))));
    }

    #[test]
    fn isometric_relations_hold_exactly() {
        for (c, a) in [(loop_l(), "v#1"), (star_arm(), "W#1"), (star(), "W#1")] {
            let f = build_fock(&c, &at(&c, a), cfg(3)).unwrap();
            assert_eq!(verify_isometric_rep(&f, &f.family()).first_failure(), None);
        }
    }

    #[test]
    fn sign_flips_are_reported() {
        let l = loop_l();
        let f = build_fock(&l, &at(&l, "v#1"), cfg(3)).unwrap();
        let mut fam = f.family();
        let t = fam.t.values_mut().next().unwrap();
        let (&(r, c), z) = t.entries().next().map(|(k, z)| (k, z.clone())).unwrap();
        t.set(r, c, -z);
        let rep = verify_isometric_rep(&f, &fam);
        assert!(rep.inner.is_zero() && rep.left.is_zero(), "a sign flip on t is a gauge symmetry");
        assert_eq!(rep.first_failure(), Some("canonical"));

        let mut fam = f.family();
        fam.rho.values_mut().next().unwrap().set(0, 0, -sc(1));
        assert!(!verify_isometric_rep(&f, &fam).rho_hom.is_zero());
    }

    #[test]
    fn random_combinations_satisfy_the_inner_relation() {
        let c = graph(
            &[("a", F(2)), ("b", F(1))],
            &[("x", "a", "b", F(2)), ("y", "b", "a", F(1)), ("z", "b", "b", F(1))],
        );
        let sigma = EvaluationRep::new(c.algebra(), vec![Atom::new(0, 1), Atom::new(1, 1)]).unwrap();
        let f = build_fock(&c, &sigma, cfg(3)).unwrap();
        let g = f.generators();
        let x = ModuleElement::from_terms(g.iter().enumerate().map(|(i, e)| (*e, sc(i as i64 + 1))));
        let y = ModuleElement::from_terms(g.iter().enumerate().map(|(i, e)| (*e, sc(2 - i as i64) * imag_unit())));
        let lhs = f.below_top(&f.t(&x).adjoint().mul(&f.t(&y)));
        let rhs = f.below_top(&f.rho(&c.inner(&x, &y)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn psi_examples() {
        let l = loop_l();
        let f = build_fock(&l, &at(&l, "v#1"), cfg(3)).unwrap();
        let thetas = l.left_action_as_compacts(&AlgebraElement::class_indicator(0)).unwrap();
        let psi = psi_t(&f, &thetas);
        let e1 = unit_at(&f, 1);
        assert_eq!(Op::new(&psi.matrix).apply(&e1), e1);
        assert_eq!(psi.block(&f, 1).unwrap(), SparseMatrix::identity(1));
        assert!(psi_t(&f, &[]).matrix.is_zero());
        assert_eq!(psi_t(&f, &crate::correspondence::regroup_thetas(&thetas)), psi);
    }

    #[test]
    fn witness_subspace_examples() {
        let sa = star_arm();
        let f = build_fock(&sa, &at(&sa, "W#1"), cfg(3)).unwrap();
        let m = build_witness_subspace(&f, &sa.katsura_ideal()).unwrap();
        assert_eq!(m.m0.vectors(), [unit_at(&f, 1)]);
        assert!(m.levels[2].is_empty() && m.levels[3].is_empty());

        let s = star();
        let f = build_fock(&s, &at(&s, "W#1"), cfg(3)).unwrap();
        assert_eq!(build_witness_subspace(&f, &s.katsura_ideal()).unwrap().m0.vectors(), [unit_at(&f, 1)]);

        let l = loop_l();
        let f = build_fock(&l, &at(&l, "v#1"), cfg(3)).unwrap();
        assert!(matches!(build_witness_subspace(&f, &l.katsura_ideal()), Err(Error::Refused(_))));
    }

    #[test]
    fn eq_use_and_wrong_ideal() {
        let sa = star_arm();
        let f = build_fock(&sa, &at(&sa, "W#1"), cfg(3)).unwrap();
        let j = sa.katsura_ideal();
        let m = build_witness_subspace(&f, &j).unwrap();
        assert_eq!(verify_eq_use(&f, &m.m0, &j), (Rational::zero(), Rational::zero()));
        let wrong = IdealSpec::from_names(sa.algebra().clone(), &["V"]).unwrap();
        assert!(!verify_eq_use(&f, &m.m0, &wrong).0.is_zero());
    }

    #[test]
    fn plain_fock_space_is_not_covariant() {
        let l = loop_l();
        let f = build_fock(&l, &at(&l, "v#1"), cfg(3)).unwrap();
        let full: Vec<OrthoBasis> = (0..=3).map(|n| OrthoBasis::spanning([unit_at(&f, n)])).collect();
        let rep = check_cuntz_pimsner(&f, &full, &l.katsura_ideal()).unwrap();
        assert_eq!(rep.residual, Rational::one());
        assert_eq!(rep.complement[0].len(), 1);
        assert!(rep.complement[1..].iter().all(OrthoBasis::is_empty));
    }

    #[test]
    fn non_invariant_space_is_rejected() {
        let l = loop_l();
        let f = build_fock(&l, &at(&l, "v#1"), cfg(3)).unwrap();
        let only_vacuum = vec![OrthoBasis::spanning([unit_at(&f, 0)]), OrthoBasis::default(), OrthoBasis::default(), OrthoBasis::default()];
        assert!(matches!(wandering_complement(&f, &only_vacuum), Err(Error::Domain(_))));
    }

    #[test]
    fn gram_schmidt_spans() {
        let v = |xs: &[(usize, i64)]| xs.iter().map(|(i, x)| (*i, sc(*x))).collect::<SVec>();
        let b = OrthoBasis::spanning([v(&[(0, 1), (1, 1)]), v(&[(0, 1), (1, -1)]), v(&[(0, 3)])]);
        assert_eq!(b.len(), 2);
        assert!(b.contains(&v(&[(1, 5)])));
        assert!(!b.contains(&v(&[(2, 1)])));
        let p = b.projector(3);
        assert_eq!(p.get(0, 0), sc(1));
        assert_eq!(p.get(2, 2), sc(0));
    }

    #[test]
    fn full_pipeline_on_degenerate_graphs() {
        for c in [star(), star_arm()] {
            let w = c.sigma_degeneracy_witness().unwrap();
            let cert = construct_witness(&c, &w.rep, &c.katsura_ideal(), cfg(3), "discrete").unwrap();
            assert_eq!(cert.sigma, ["W#1"]);
            assert_eq!(cert.m0.len(), 1);
            assert_eq!(cert.non_reducing.projection_norm_sq, "1");
            assert_eq!(cert.non_reducing.generator, "E(1,1,1)");
            assert!(cert.residuals.values().all(|r| r == "0"));
        }
    }
}
