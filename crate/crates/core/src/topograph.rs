//! Discrete and interval graph presentations, Katsura's vertex sets, and the
//! hyperrigidity decision with all of its routes cross-checked.

use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

use crate::algebra::{AtomSet, Cardinal, EvaluationRep, IdealSpec};
use crate::correspondence::{Correspondence, EdgeClass, Submodule};
use crate::error::{malformed, Error, Result};
use crate::interval::{EndLimit, IntervalSet, PiecewiseAffineMap};
use crate::scalar::{format_rational, Rational};

/// Truncation level used when probing whether a witness is finite.
pub const DEFAULT_FOCK_LEVEL: usize = 3;
pub const DEFAULT_BASIS_BUDGET: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscreteGraphPresentation {
    vertices: Arc<AtomSet>,
    edges: Vec<EdgeClass>,
}

impl DiscreteGraphPresentation {
    /// Vertex classes `(name, count)` and edge classes `(name, source, range, multiplicity)`.
    pub fn new(
        vertices: Vec<(String, Cardinal)>,
        edges: Vec<(String, String, String, Cardinal)>,
    ) -> Result<Self> {
        let vertices = Arc::new(AtomSet::new(vertices)?);
        let lookup = |n: &str| {
            vertices
                .index_of(n)
                .ok_or_else(|| Error::Malformed(format!("edge references unknown vertex class {n:?}")))
        };
        let edges = edges
            .into_iter()
            .map(|(name, s, r, mult)| Ok(EdgeClass { name, source: lookup(&s)?, range: lookup(&r)?, mult }))
            .collect::<Result<Vec<_>>>()?;
        // Validates names and multiplicities.
        Correspondence::new(vertices.clone(), edges.clone())?;
        Ok(Self { vertices, edges })
    }

    pub fn vertices(&self) -> &Arc<AtomSet> {
        &self.vertices
    }

    pub fn edges(&self) -> &[EdgeClass] {
        &self.edges
    }

    pub fn is_finite(&self) -> bool {
        self.vertices.classes().all(|(_, _, c)| c.is_finite()) && self.edges.iter().all(|e| e.mult.is_finite())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalGraphPresentation {
    g0: IntervalSet,
    g1: IntervalSet,
    r: PiecewiseAffineMap,
    s: PiecewiseAffineMap,
}

impl IntervalGraphPresentation {
    /// Checks that `r` is continuous, `s` is a local homeomorphism, and that no open
    /// end of `G¹` is sent by `r` towards a vertex of `G⁰` outside `r(G¹)`.
    pub fn new(g0: IntervalSet, g1: IntervalSet, r: PiecewiseAffineMap, s: PiecewiseAffineMap) -> Result<Self> {
        for (name, m) in [("r", &r), ("s", &s)] {
            if m.source() != &g1 || m.target() != &g0 {
                return malformed(format!("{name} must map G¹ = {g1} into G⁰ = {g0}"));
            }
        }
        if !r.is_continuous() {
            return malformed("r is not continuous");
        }
        if !s.is_local_homeomorphism() {
            return malformed("s is not a local homeomorphism");
        }
        let range = r.range();
        for end in r.source_ends() {
            if let EndLimit::Finite(l) = r.limit_at(&end) {
                if g0.contains(&l) && !range.contains(&l) {
                    return malformed(format!(
                        "an open end of G¹ at {} is sent by r to {}, a vertex outside r(G¹)",
                        end.at,
                        format_rational(&l)
                    ));
                }
            }
        }
        Ok(Self { g0, g1, r, s })
    }

    pub fn g0(&self) -> &IntervalSet {
        &self.g0
    }

    pub fn g1(&self) -> &IntervalSet {
        &self.g1
    }

    pub fn r(&self) -> &PiecewiseAffineMap {
        &self.r
    }

    pub fn s(&self) -> &PiecewiseAffineMap {
        &self.s
    }

    /// Finite limits of `r` at the open ends of `G¹` that land in `G⁰`.
    fn escaping_limits(&self) -> IntervalSet {
        let pts = self.r.source_ends().into_iter().filter_map(|e| match self.r.limit_at(&e) {
            EndLimit::Finite(l) if self.g0.contains(&l) => Some(crate::interval::Interval::point(l)),
            _ => None,
        });
        IntervalSet::normalize(pts)
    }

    /// The finite discrete graph seen by evaluation at `root` along paths of length `≤ depth`.
    ///
    /// Every vertex point becomes a one-copy class `v:<point>` and every edge point a
    /// one-copy class `e:<point>`. The returned ideal holds the vertices lying in `G⁰_reg`.
    pub fn local_model(&self, root: &Rational, depth: usize, budget: usize) -> Result<LocalModel> {
        if !self.g0.contains(root) {
            return Err(Error::Domain(format!("{} is not a vertex", format_rational(root))));
        }
        let mut vertices: BTreeMap<Rational, usize> = BTreeMap::new();
        let mut names = Vec::new();
        let mut edges: Vec<(Rational, usize, usize)> = Vec::new();
        let mut vertex = |p: &Rational, names: &mut Vec<(String, Cardinal)>| -> usize {
            *vertices.entry(p.clone()).or_insert_with(|| {
                names.push((format!("v:{}", format_rational(p)), Cardinal::Finite(1)));
                names.len() - 1
            })
        };
        vertex(root, &mut names);
        let mut frontier: VecDeque<(Rational, usize)> = VecDeque::from([(root.clone(), 0)]);
        let mut expanded = BTreeSet::new();
        while let Some((v, d)) = frontier.pop_front() {
            if d == depth || !expanded.insert(v.clone()) {
                continue;
            }
            let fiber = self.s.fiber(&v).ok_or_else(|| {
                Error::SymbolicOnly(format!("s has an infinite fiber over {}", format_rational(&v)))
            })?;
            for x in fiber {
                let y = self.r.eval(&x).expect("edge point lies in G¹");
                let (si, ri) = (vertex(&v, &mut names), vertex(&y, &mut names));
                if !edges.iter().any(|(p, _, _)| p == &x) {
                    edges.push((x, si, ri));
                    if edges.len() > budget {
                        return Err(Error::Budget { needed: edges.len(), budget });
                    }
                }
                frontier.push_back((y, d + 1));
            }
        }
        let atoms = Arc::new(AtomSet::new(names)?);
        let classes = edges
            .iter()
            .map(|(x, s, r)| EdgeClass {
                name: format!("e:{}", format_rational(x)),
                source: *s,
                range: *r,
                mult: Cardinal::Finite(1),
            })
            .collect();
        let corr = Correspondence::new(atoms.clone(), classes)?;
        let reg = classify_interval(self).reg;
        let ideal = IdealSpec::new(
            atoms.clone(),
            vertices.iter().filter(|(p, _)| reg.contains(p)).map(|(_, i)| *i),
        )?;
        let sigma = EvaluationRep::new(&atoms, vec![crate::algebra::Atom::new(0, 1)])?;
        Ok(LocalModel { corr, sigma, ideal })
    }
}

/// A finite discrete stand-in for an interval graph near one vertex.
#[derive(Clone, Debug)]
pub struct LocalModel {
    pub corr: Correspondence,
    pub sigma: EvaluationRep,
    pub ideal: IdealSpec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphPresentation {
    Discrete(DiscreteGraphPresentation),
    Interval(IntervalGraphPresentation),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VertexClassification {
    Discrete { sce: IdealSpec, fin: IdealSpec, reg: IdealSpec },
    Interval(IntervalClassification),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalClassification {
    pub sce: IntervalSet,
    pub fin: IntervalSet,
    pub reg: IntervalSet,
}

/// Per-route answers. `nondegeneracy` is only computed for discrete graphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Routes {
    /// `φ(J_X)X = X`.
    pub nondegeneracy: Option<bool>,
    /// `r` proper and `r(G¹) ⊆ int(cl r(G¹))`.
    pub range_condition: bool,
    /// `r⁻¹(G⁰_reg) = G¹`.
    pub reg_preimage: bool,
}

impl Routes {
    pub fn agree(&self) -> Option<bool> {
        let v = self.reg_preimage;
        (self.range_condition == v && self.nondegeneracy.is_none_or(|n| n == v)).then_some(v)
    }
}

/// The two halves of the properness lemma, each decided two ways.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaSplit {
    pub proper: bool,
    pub fin_preimage_is_everything: bool,
    pub range_condition: bool,
    pub sce_closure_preimage_is_empty: bool,
}

impl LemmaSplit {
    pub fn holds(&self) -> bool {
        self.proper == self.fin_preimage_is_everything
            && self.range_condition == self.sce_closure_preimage_is_empty
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum WitnessHandle {
    /// Evaluation at the first copy of `s(e)` and the vector `e ⊗ 1`.
    Discrete {
        edge_class: String,
        atom: String,
        norm_sq: Rational,
        pairing: Rational,
        /// Whether the truncated Fock space at the default level is finite.
        witness_finite: bool,
    },
    /// Evaluation at `s(e)` for an edge point `e ∉ r⁻¹(G⁰_reg)`, with a function equal to 1
    /// at `e` and 0 at the other points of the finite fiber `s⁻¹(s(e))`.
    Interval { edge_point: Rational, atom: Rational, fiber: Vec<Rational>, norm_sq: Rational, pairing: Rational },
}

#[derive(Clone, Debug, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum Certificate {
    /// `φ(J_X)` acts non-degenerately; hyperrigidity is a consequence, not a computation.
    NondegeneracyTheorem,
    SigmaWitness(WitnessHandle),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub hyperrigid: bool,
    pub routes: Routes,
    pub certificate: Certificate,
}

pub fn build_correspondence(g: &DiscreteGraphPresentation) -> Correspondence {
    Correspondence::new(g.vertices.clone(), g.edges.clone()).expect("validated at construction")
}

pub fn classify_discrete(g: &DiscreteGraphPresentation) -> (IdealSpec, IdealSpec, IdealSpec) {
    let c = build_correspondence(g);
    let sce = c.kernel_of_left_action();
    let fin = c.compacts_preimage();
    let reg = fin.intersect(&sce.complement()).expect("same algebra");
    (sce, fin, reg)
}

pub fn classify_interval(g: &IntervalGraphPresentation) -> IntervalClassification {
    let range = g.r.range();
    let closure = |s: &IntervalSet| s.closure_in(&g.g0).expect("subset of G⁰");
    let sce = g.g0.difference(&closure(&range));
    let fin = g.g0.difference(&g.escaping_limits());
    let reg = fin.difference(&closure(&sce));
    IntervalClassification { sce, fin, reg }
}

pub fn classify_vertices(g: &GraphPresentation) -> VertexClassification {
    match g {
        GraphPresentation::Discrete(d) => {
            let (sce, fin, reg) = classify_discrete(d);
            VertexClassification::Discrete { sce, fin, reg }
        }
        GraphPresentation::Interval(i) => VertexClassification::Interval(classify_interval(i)),
    }
}

pub fn check_row_finite(g: &DiscreteGraphPresentation) -> bool {
    let c = build_correspondence(g);
    (0..g.vertices.len()).all(|v| c.in_degree(v).is_finite())
}

/// `N(r⁻¹(S₁) ∪ S₂)`: edge classes outside `S₂` whose range avoids `S₁`.
pub fn vanishing_submodule(
    g: &DiscreteGraphPresentation,
    s1: &BTreeSet<usize>,
    s2: &BTreeSet<usize>,
) -> Result<Submodule> {
    if s1.iter().any(|&v| v >= g.vertices.len()) || s2.iter().any(|&e| e >= g.edges.len()) {
        return Err(Error::Domain("vanishing set outside the graph".into()));
    }
    let span = g
        .edges
        .iter()
        .enumerate()
        .filter(|(k, e)| !s2.contains(k) && !s1.contains(&e.range))
        .map(|(k, _)| k);
    Submodule::new(span, g.edges.len())
}

pub fn properness_lemma(g: &IntervalGraphPresentation) -> LemmaSplit {
    let cls = classify_interval(g);
    let sce_closure = cls.sce.closure_in(&g.g0).expect("subset of G⁰");
    LemmaSplit {
        proper: g.r.is_proper(),
        fin_preimage_is_everything: g.r.preimage(&cls.fin) == g.g1,
        range_condition: g.r.range_condition(),
        sce_closure_preimage_is_empty: g.r.preimage(&sce_closure).is_empty(),
    }
}

fn discrete_routes(g: &DiscreteGraphPresentation) -> Routes {
    let c = build_correspondence(g);
    let (_, _, reg) = classify_discrete(g);
    // In the discrete topology compact means finite, and every subset is clopen.
    let proper = (0..g.vertices.len()).all(|v| c.in_degree(v).is_finite());
    Routes {
        nondegeneracy: Some(c.is_nondegenerate()),
        range_condition: proper,
        reg_preimage: g.edges.iter().all(|e| reg.contains_class(e.range)),
    }
}

fn interval_routes(g: &IntervalGraphPresentation) -> Routes {
    let cls = classify_interval(g);
    Routes {
        nondegeneracy: None,
        range_condition: g.r.is_proper() && g.r.range_condition(),
        reg_preimage: g.r.preimage(&cls.reg) == g.g1,
    }
}

pub fn decide_hyperrigid(g: &GraphPresentation) -> Result<Verdict> {
    let routes = match g {
        GraphPresentation::Discrete(d) => discrete_routes(d),
        GraphPresentation::Interval(i) => {
            let split = properness_lemma(i);
            if !split.holds() {
                return Err(Error::Inconsistency(format!("properness lemma halves disagree: {split:?}")));
            }
            interval_routes(i)
        }
    };
    let Some(hyperrigid) = routes.agree() else {
        return Err(Error::Inconsistency(format!("decision routes disagree: {routes:?}")));
    };
    let certificate = if hyperrigid {
        Certificate::NondegeneracyTheorem
    } else {
        Certificate::SigmaWitness(match g {
            GraphPresentation::Discrete(d) => discrete_witness(d)?,
            GraphPresentation::Interval(i) => interval_witness(i)?,
        })
    };
    Ok(Verdict { hyperrigid, routes, certificate })
}

fn discrete_witness(g: &DiscreteGraphPresentation) -> Result<WitnessHandle> {
    let c = build_correspondence(g);
    let w = c
        .sigma_degeneracy_witness()
        .ok_or_else(|| Error::Inconsistency("negative verdict without a degenerate edge class".into()))?;
    let witness_finite = !matches!(
        c.tensor_basis(&w.rep, DEFAULT_FOCK_LEVEL, DEFAULT_BASIS_BUDGET),
        Err(Error::SymbolicOnly(_))
    );
    Ok(WitnessHandle::Discrete {
        edge_class: c.edges()[w.edge_class].name.clone(),
        atom: c.algebra().atom_label(&w.rep.atoms()[0]),
        norm_sq: w.norm_sq,
        pairing: w.pairing,
        witness_finite,
    })
}

fn interval_witness(g: &IntervalGraphPresentation) -> Result<WitnessHandle> {
    let reg = classify_interval(g).reg;
    let outside = g.g1.difference(&g.r.preimage(&reg));
    let e = outside
        .sample_point()
        .ok_or_else(|| Error::Inconsistency("negative verdict but r⁻¹(G⁰_reg) = G¹".into()))?;
    let atom = g.s.eval(&e).expect("edge point lies in G¹");
    let fiber = g
        .s
        .fiber(&atom)
        .ok_or_else(|| Error::Inconsistency("a local homeomorphism has finite fibers".into()))?;
    if !fiber.contains(&e) {
        return Err(Error::Inconsistency("edge point missing from its own fiber".into()));
    }
    // The test function F is 1 at e and 0 on the rest of the fiber, so
    // ‖F ⊗ 1‖² = Σ_{s(x)=s(e)} |F(x)|² = 1, and ⟨G ⊗ 1, F ⊗ 1⟩ = conj(G(e)) = 0 for every
    // G ∈ φ(J)X because such G vanish off the open set r⁻¹(G⁰_reg).
    let norm_sq: Rational = fiber.iter().map(|x| if x == &e { Rational::one() } else { Rational::zero() }).sum();
    let pairing = if reg.contains(&g.r.eval(&e).expect("edge point")) { Rational::one() } else { Rational::zero() };
    Ok(WitnessHandle::Interval { edge_point: e, atom, fiber, norm_sq, pairing })
}

/// For a compact base: hyperrigid iff `G¹` is compact and `r(G¹)` is clopen in `G⁰`.
/// `None` when `G⁰` is not compact.
pub fn compact_base_shortcut(g: &IntervalGraphPresentation) -> Result<Option<bool>> {
    if !g.g0.is_compact() {
        return Ok(None);
    }
    let range = g.r.range();
    let clopen = range.is_open_in(&g.g0)? && range.is_closed_in(&g.g0)?;
    let shortcut = g.g1.is_compact() && clopen;
    let full = decide_hyperrigid(&GraphPresentation::Interval(g.clone()))?.hyperrigid;
    if shortcut != full {
        return Err(Error::Inconsistency(format!("compact-base shortcut says {shortcut}, decision says {full}")));
    }
    Ok(Some(shortcut))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::{AffinePiece, Endpoint, Interval};
    use crate::scalar::{int, rat};
    use Cardinal::{Finite as F, Omega};

    fn discrete(vs: &[(&str, Cardinal)], es: &[(&str, &str, &str, Cardinal)]) -> DiscreteGraphPresentation {
        DiscreteGraphPresentation::new(
            vs.iter().map(|(n, c)| (n.to_string(), *c)).collect(),
            es.iter().map(|(n, s, r, m)| (n.to_string(), s.to_string(), r.to_string(), *m)).collect(),
        )
        .unwrap()
    }

    fn unit() -> IntervalSet {
        IntervalSet::from_interval(Interval::closed(int(0), int(1)))
    }

    fn affine(dom: Interval, slope: Rational, offset: Rational, src: &IntervalSet, tgt: &IntervalSet) -> PiecewiseAffineMap {
        PiecewiseAffineMap::new(vec![AffinePiece::new(dom, slope, offset)], src.clone(), tgt.clone()).unwrap()
    }

    fn i1() -> IntervalGraphPresentation {
        let g0 = unit();
        let half = Interval::closed(int(0), rat(1, 2));
        let g1 = IntervalSet::from_interval(half.clone());
        let r = PiecewiseAffineMap::identity(g1.clone(), g0.clone()).unwrap();
        let s = affine(half, int(2), int(0), &g1, &g0);
        IntervalGraphPresentation::new(g0, g1, r, s).unwrap()
    }

    fn i2() -> IntervalGraphPresentation {
        let g0 = unit();
        let id = PiecewiseAffineMap::identity(g0.clone(), g0.clone()).unwrap();
        IntervalGraphPresentation::new(g0.clone(), g0, id.clone(), id).unwrap()
    }

    fn star() -> DiscreteGraphPresentation {
        discrete(&[("V", F(1)), ("W", Omega)], &[("E", "W", "V", F(1))])
    }

    fn star_arm() -> DiscreteGraphPresentation {
        discrete(
            &[("V", F(1)), ("W", Omega), ("U", F(1)), ("Z", F(1))],
            &[("E", "W", "V", F(1)), ("F", "Z", "U", F(1))],
        )
    }

    #[test]
    fn discrete_classification_examples() {
        let a = discrete(&[("u", F(1)), ("v", F(1))], &[("e", "u", "v", F(1))]);
        let (sce, fin, reg) = classify_discrete(&a);
        assert_eq!((sce.names(), fin.names(), reg.names()), (vec!["u".into()], vec!["u".into(), "v".into()], vec!["v".into()]));
        let (sce, fin, reg) = classify_discrete(&star());
        assert_eq!(sce.names(), ["W"]);
        assert_eq!(fin.names(), ["W"]);
        assert!(reg.is_empty());
    }

    #[test]
    fn interval_classification_example() {
        let c = classify_interval(&i1());
        let open_half_to_one = IntervalSet::from_interval(Interval::open_closed(Endpoint::Finite(rat(1, 2)), int(1)));
        assert_eq!(c.sce, open_half_to_one);
        assert_eq!(c.fin, unit());
        assert_eq!(c.reg, IntervalSet::from_interval(Interval::closed_open(int(0), Endpoint::Finite(rat(1, 2)))));
    }

    #[test]
    fn decisions_on_named_instances() {
        let l = discrete(&[("v", F(1))], &[("e", "v", "v", F(1))]);
        let v = decide_hyperrigid(&GraphPresentation::Discrete(l)).unwrap();
        assert!(v.hyperrigid);
        assert_eq!(v.certificate, Certificate::NondegeneracyTheorem);

        let v = decide_hyperrigid(&GraphPresentation::Discrete(star())).unwrap();
        assert!(!v.hyperrigid);
        assert_eq!(v.routes, Routes { nondegeneracy: Some(false), range_condition: false, reg_preimage: false });
        match v.certificate {
            Certificate::SigmaWitness(WitnessHandle::Discrete { atom, norm_sq, pairing, witness_finite, .. }) => {
                assert_eq!(atom, "W#1");
                assert!(norm_sq.is_one() && pairing.is_zero() && witness_finite);
            }
            other => panic!("unexpected certificate {other:?}"),
        }

        assert!(!decide_hyperrigid(&GraphPresentation::Interval(i1())).unwrap().hyperrigid);
        assert!(decide_hyperrigid(&GraphPresentation::Interval(i2())).unwrap().hyperrigid);
    }

    #[test]
    fn interval_witness_is_exact() {
        let v = decide_hyperrigid(&GraphPresentation::Interval(i1())).unwrap();
        let Certificate::SigmaWitness(WitnessHandle::Interval { edge_point, atom, fiber, norm_sq, pairing }) = v.certificate
        else {
            panic!("expected an interval witness");
        };
        assert_eq!(edge_point, rat(1, 2));
        assert_eq!(atom, int(1));
        assert_eq!(fiber, vec![rat(1, 2)]);
        assert!(norm_sq.is_one() && pairing.is_zero());
    }

    #[test]
    fn compact_base_examples() {
        assert_eq!(compact_base_shortcut(&i2()).unwrap(), Some(true));
        assert_eq!(compact_base_shortcut(&i1()).unwrap(), Some(false));
        let g0 = IntervalSet::from_interval(Interval::closed_open(int(0), Endpoint::PosInf));
        let id = PiecewiseAffineMap::identity(g0.clone(), g0.clone()).unwrap();
        let g = IntervalGraphPresentation::new(g0.clone(), g0, id.clone(), id).unwrap();
        assert_eq!(compact_base_shortcut(&g).unwrap(), None);
    }

    #[test]
    fn boundary_limit_outside_range_is_rejected() {
        let g0 = unit();
        let g1 = IntervalSet::from_interval(Interval::open_closed(Endpoint::Finite(int(0)), int(1)));
        let r = PiecewiseAffineMap::identity(g1.clone(), g0.clone()).unwrap();
        assert!(matches!(IntervalGraphPresentation::new(g0, g1, r.clone(), r), Err(Error::Malformed(_))));
    }

    #[test]
    fn local_homeomorphism_is_required_of_s() {
        let g0 = unit();
        let g1 = IntervalSet::from_interval(Interval::closed(int(0), rat(1, 2)));
        let r = PiecewiseAffineMap::identity(g1.clone(), g0.clone()).unwrap();
        // The image of s = id stops at 1/2 inside [0,1]: not open there.
        assert!(IntervalGraphPresentation::new(g0, g1, r.clone(), r).is_err());
    }

    #[test]
    fn vanishing_submodule_examples() {
        let sa = star_arm();
        let c = build_correspondence(&sa);
        let j = c.katsura_ideal();
        let s1: BTreeSet<usize> = j.complement().support().clone();
        let via_n = vanishing_submodule(&sa, &s1, &BTreeSet::new()).unwrap();
        assert_eq!(via_n, c.ideal_act_submodule(&j));
        assert_eq!(via_n.names(&c), ["F"]);
        assert!(vanishing_submodule(&sa, &BTreeSet::new(), &BTreeSet::new()).unwrap().is_full());
        assert!(vanishing_submodule(&sa, &(0..4).collect(), &BTreeSet::new()).unwrap().is_zero());
    }

    #[test]
    fn row_finiteness_examples() {
        let finite = discrete(&[("a", F(2)), ("b", F(1))], &[("x", "a", "b", F(3))]);
        assert!(check_row_finite(&finite));
        assert!(!check_row_finite(&star()));
        assert!(!check_row_finite(&star_arm()));
    }

    #[test]
    fn build_correspondence_examples() {
        use crate::algebra::{AlgebraElement, Atom};
        use crate::correspondence::{EdgeCopy, ModuleElement};
        let a = discrete(&[("u", F(1)), ("v", F(1))], &[("e", "u", "v", F(1))]);
        let c = build_correspondence(&a);
        let e = ModuleElement::basis(EdgeCopy::first(0));
        assert_eq!(c.inner(&e, &e), AlgebraElement::delta(Atom::new(0, 1)));
        let f = AlgebraElement::from_class_values([(1, crate::scalar::sc(5))]);
        assert_eq!(c.left_act(&f, &e), e.scale(&crate::scalar::sc(5)));
        let sa = build_correspondence(&star_arm());
        let (e1, f1) = (ModuleElement::basis(EdgeCopy::first(0)), ModuleElement::basis(EdgeCopy::first(1)));
        assert!(sa.inner(&e1, &f1).is_zero());
    }

    #[test]
    fn local_model_follows_point_paths() {
        let m = i1().local_model(&int(1), 3, 100).unwrap();
        let names: Vec<_> = m.corr.edges().iter().map(|e| e.name.clone()).collect();
        assert_eq!(names, ["e:1/2", "e:1/4", "e:1/8"]);
        assert_eq!(m.ideal.names(), ["v:1/4", "v:1/8"]);
    }
}
