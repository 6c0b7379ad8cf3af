//! Group diagrams `(G, H, K_-, K_+)` / `(G, H, K)` / `(G, H)` at Lie-algebra
//! fidelity, plus the validation rules the classification theorems need.
//!
//! Identity components are carried as subalgebras of `g`; zero-dimensional
//! isotropy inside a torus is carried exactly as finite generator sets. The
//! sphere condition on non-principal isotropy is checked as dimension and
//! component bookkeeping only, with the `S^0 => two components` rule spelled
//! out because the flat-type classification consumes it.

use crate::error::{Error, Result};
use crate::lie::{LieAlgebraModel, Subspace, DEFAULT_IDENTITY_TOL, DEFAULT_RANK_TOL};
use crate::linalg;
use crate::scalar::Real;
use crate::torus::{FiniteTorusSubgroup, TorusElement};

/// Orbit-space shape of a cohomogeneity one action.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagramKind {
    /// closed, orbit space a circle
    Circle,
    /// closed, orbit space an interval, two non-principal orbits
    Interval,
    /// open, orbit space a line
    Line,
    /// open, orbit space a ray, one non-principal orbit
    Ray,
}

impl DiagramKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DiagramKind::Circle => "circle",
            DiagramKind::Interval => "interval",
            DiagramKind::Line => "line",
            DiagramKind::Ray => "ray",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "circle" => Ok(DiagramKind::Circle),
            "interval" => Ok(DiagramKind::Interval),
            "line" => Ok(DiagramKind::Line),
            "ray" => Ok(DiagramKind::Ray),
            other => Err(Error::Parse(format!("unknown diagram kind `{other}`"))),
        }
    }
}

/// A closed subgroup of `G` at the fidelity the theorems need: the Lie
/// algebra of its identity component, a component count, and (inside tori
/// only) exact generators for its finite part.
#[derive(Debug, Clone)]
pub struct SubgroupDescriptor<S> {
    pub algebra: Subspace<S>,
    pub component_count: usize,
    pub finite_generators: Vec<TorusElement>,
}

impl<S: Real> SubgroupDescriptor<S> {
    /// The trivial subgroup.
    pub fn trivial(ambient_dim: usize) -> Self {
        Self {
            algebra: Subspace::zero(ambient_dim),
            component_count: 1,
            finite_generators: Vec::new(),
        }
    }

    /// A connected subgroup with the given subalgebra.
    pub fn connected(algebra: Subspace<S>) -> Self {
        Self {
            algebra,
            component_count: 1,
            finite_generators: Vec::new(),
        }
    }

    /// A finite subgroup of a torus, generated by `generators`.
    pub fn finite(ambient_dim: usize, generators: Vec<TorusElement>) -> Result<Self> {
        let group = FiniteTorusSubgroup::generate(ambient_dim, &generators)?;
        Ok(Self {
            algebra: Subspace::zero(ambient_dim),
            component_count: group.order(),
            finite_generators: generators,
        })
    }

    /// The order-2 subgroup of a torus generated by `generator`.
    pub fn z2(ambient_dim: usize, generator: TorusElement) -> Result<Self> {
        let d = Self::finite(ambient_dim, vec![generator])?;
        if d.component_count != 2 {
            return Err(Error::InvalidParameter(
                "generator does not have order 2".into(),
            ));
        }
        Ok(d)
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn is_trivial(&self) -> bool {
        self.dim() == 0
            && self.component_count == 1
            && self.finite_generators.iter().all(TorusElement::is_zero)
    }

    /// The generated finite group, for zero-dimensional descriptors.
    pub fn finite_group(&self) -> Result<FiniteTorusSubgroup> {
        if self.dim() != 0 {
            return Err(Error::InvalidParameter(
                "finite part requested for a positive-dimensional subgroup".into(),
            ));
        }
        FiniteTorusSubgroup::generate(self.algebra.ambient_dim(), &self.finite_generators)
    }
}

/// True iff the two zero-dimensional descriptors generate the same subgroup
/// of their common torus. Errors on positive-dimensional input.
pub fn finite_subgroups_equal<S: Real>(
    a: &SubgroupDescriptor<S>,
    b: &SubgroupDescriptor<S>,
) -> Result<bool> {
    if a.algebra.ambient_dim() != b.algebra.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: a.algebra.ambient_dim(),
            got: b.algebra.ambient_dim(),
        });
    }
    Ok(a.finite_group()? == b.finite_group()?)
}

/// A cohomogeneity one group diagram. `G` is assumed connected; reductions
/// from disconnected groups are presupposed in input form.
#[derive(Debug, Clone)]
pub struct GroupDiagram<S> {
    pub kind: DiagramKind,
    pub algebra: LieAlgebraModel<S>,
    pub h: SubgroupDescriptor<S>,
    pub k_minus: Option<SubgroupDescriptor<S>>,
    pub k_plus: Option<SubgroupDescriptor<S>>,
    pub k: Option<SubgroupDescriptor<S>>,
    /// `Ad_a` of the gluing element (circle diagrams only). Stored for
    /// validation; the classification never reads it.
    pub monodromy: Option<Vec<Vec<S>>>,
    pub label: String,
}

impl<S: Real> GroupDiagram<S> {
    pub fn circle(
        algebra: LieAlgebraModel<S>,
        h: SubgroupDescriptor<S>,
        monodromy: Option<Vec<Vec<S>>>,
        label: impl Into<String>,
    ) -> Self {
        Self {
            kind: DiagramKind::Circle,
            algebra,
            h,
            k_minus: None,
            k_plus: None,
            k: None,
            monodromy,
            label: label.into(),
        }
    }

    pub fn interval(
        algebra: LieAlgebraModel<S>,
        h: SubgroupDescriptor<S>,
        k_minus: SubgroupDescriptor<S>,
        k_plus: SubgroupDescriptor<S>,
        label: impl Into<String>,
    ) -> Self {
        Self {
            kind: DiagramKind::Interval,
            algebra,
            h,
            k_minus: Some(k_minus),
            k_plus: Some(k_plus),
            k: None,
            monodromy: None,
            label: label.into(),
        }
    }

    pub fn line(
        algebra: LieAlgebraModel<S>,
        h: SubgroupDescriptor<S>,
        label: impl Into<String>,
    ) -> Self {
        Self {
            kind: DiagramKind::Line,
            algebra,
            h,
            k_minus: None,
            k_plus: None,
            k: None,
            monodromy: None,
            label: label.into(),
        }
    }

    pub fn ray(
        algebra: LieAlgebraModel<S>,
        h: SubgroupDescriptor<S>,
        k: SubgroupDescriptor<S>,
        label: impl Into<String>,
    ) -> Self {
        Self {
            kind: DiagramKind::Ray,
            algebra,
            h,
            k_minus: None,
            k_plus: None,
            k: Some(k),
            monodromy: None,
            label: label.into(),
        }
    }

    /// `n = dim G - dim H + 1`.
    pub fn manifold_dim(&self) -> usize {
        self.algebra.dim() - self.h.dim() + 1
    }

    /// The non-principal isotropy descriptors present for this kind, with
    /// stable names for reporting.
    pub fn non_principal(&self) -> Vec<(&'static str, &SubgroupDescriptor<S>)> {
        let mut out = Vec::new();
        if let Some(km) = &self.k_minus {
            out.push(("K_minus", km));
        }
        if let Some(kp) = &self.k_plus {
            out.push(("K_plus", kp));
        }
        if let Some(k) = &self.k {
            out.push(("K", k));
        }
        out
    }
}

/// A homogeneous space `G/H`.
#[derive(Debug, Clone)]
pub struct HomogeneousPair<S> {
    pub algebra: LieAlgebraModel<S>,
    pub h: SubgroupDescriptor<S>,
    pub label: String,
}

impl<S: Real> HomogeneousPair<S> {
    pub fn new(
        algebra: LieAlgebraModel<S>,
        h: SubgroupDescriptor<S>,
        label: impl Into<String>,
    ) -> Self {
        Self {
            algebra,
            h,
            label: label.into(),
        }
    }

    /// `n = dim G - dim H`.
    pub fn manifold_dim(&self) -> usize {
        self.algebra.dim() - self.h.dim()
    }
}

/// Validation outcome. Any violation means rejection for the classifiers.
#[derive(Debug, Clone)]
pub struct DiagramValidation {
    pub violations: Vec<String>,
    /// Per non-principal isotropy: name and whether `K/H` was recognized as
    /// the two-element group.
    pub z2_recognition: Vec<(String, bool)>,
    pub manifold_dim: usize,
}

impl DiagramValidation {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

fn check_subgroup<S: Real>(
    name: &str,
    g: &LieAlgebraModel<S>,
    d: &SubgroupDescriptor<S>,
    g_abelian: bool,
    rank_tol: f64,
    violations: &mut Vec<String>,
) {
    if d.algebra.ambient_dim() != g.dim() {
        violations.push(format!("{name}: ambient dimension mismatch"));
        return;
    }
    match d.algebra.subalgebra_defect(g) {
        Ok(defect) => {
            if defect.as_f64() > rank_tol {
                violations.push(format!(
                    "{name}: not closed under the bracket (defect {:.3e})",
                    defect.as_f64()
                ));
            }
        }
        Err(e) => violations.push(format!("{name}: {e}")),
    }
    if d.component_count == 0 {
        violations.push(format!("{name}: component count must be positive"));
    }
    if !d.finite_generators.is_empty() {
        if !g_abelian {
            violations.push(format!(
                "{name}: finite generators are only supported inside tori"
            ));
        }
        if d.dim() != 0 && d.finite_generators.iter().any(|t| !t.is_zero()) {
            // mixed continuous/finite descriptors stay out of scope
            violations.push(format!(
                "{name}: finite generators on a positive-dimensional subgroup are not supported"
            ));
        }
        if d.finite_generators.iter().any(|t| t.rank() != g.dim()) {
            violations.push(format!("{name}: finite generator rank mismatch"));
        }
    }
    if d.dim() == 0 && g_abelian && d.finite_generators.iter().all(|t| t.rank() == g.dim()) {
        match d.finite_group() {
            Ok(group) => {
                if group.order() != d.component_count {
                    violations.push(format!(
                        "{name}: component count {} does not match generated order {}",
                        d.component_count,
                        group.order()
                    ));
                }
            }
            Err(e) => violations.push(format!("{name}: {e}")),
        }
    }
}

/// Containment, sphere bookkeeping and the `Z_2` recognition for one
/// non-principal isotropy.
fn check_non_principal<S: Real>(
    name: &str,
    h: &SubgroupDescriptor<S>,
    k: &SubgroupDescriptor<S>,
    g_abelian: bool,
    rank_tol: f64,
    violations: &mut Vec<String>,
) -> bool {
    if !k.algebra.contains(&h.algebra, rank_tol) {
        violations.push(format!(
            "containment violated: H is not contained in {name}"
        ));
        return false;
    }
    let sphere_dim = k.dim() - h.dim();
    let exact = g_abelian && k.dim() == 0 && h.dim() == 0;
    if exact {
        match (h.finite_group(), k.finite_group()) {
            (Ok(hg), Ok(kg)) => {
                if !hg.is_subgroup_of(&kg) {
                    violations.push(format!(
                        "containment violated: H is not a subgroup of {name}"
                    ));
                    return false;
                }
                let index = kg.order() / hg.order();
                if index != 2 {
                    violations.push(format!(
                        "{name}/H has {index} elements; a zero-dimensional sphere has exactly two"
                    ));
                    return false;
                }
                return true;
            }
            _ => return false,
        }
    }
    if sphere_dim == 0 {
        // S^0 at component fidelity
        if k.component_count != 2 * h.component_count {
            violations.push(format!(
                "{name}/H is zero-dimensional but has {} components over {}; expected ratio 2",
                k.component_count, h.component_count
            ));
            return false;
        }
        true
    } else {
        // positive-dimensional spheres are connected
        if k.component_count != h.component_count {
            violations.push(format!(
                "{name}/H must be connected (component counts {} vs {})",
                k.component_count, h.component_count
            ));
        }
        false
    }
}

/// Checks every `GroupDiagram` invariant and reports the `S^0`/`Z_2`
/// recognition result for each non-principal isotropy.
pub fn validate_diagram<S: Real>(d: &GroupDiagram<S>) -> DiagramValidation {
    validate_diagram_with(d, DEFAULT_IDENTITY_TOL, DEFAULT_RANK_TOL)
}

pub fn validate_diagram_with<S: Real>(
    d: &GroupDiagram<S>,
    identity_tol: f64,
    rank_tol: f64,
) -> DiagramValidation {
    let mut violations = Vec::new();
    let mut z2 = Vec::new();
    let g = &d.algebra;

    let algebra_report = g.validate(identity_tol);
    for v in algebra_report.violations() {
        violations.push(format!("G: {v}"));
    }
    let g_abelian = g.is_abelian(rank_tol);

    // slot/kind consistency
    let (want_pm, want_k) = match d.kind {
        DiagramKind::Interval => (true, false),
        DiagramKind::Ray => (false, true),
        DiagramKind::Circle | DiagramKind::Line => (false, false),
    };
    if (d.k_minus.is_some() || d.k_plus.is_some()) != want_pm {
        violations.push(format!(
            "kind `{}` and K_-/K_+ slots are inconsistent",
            d.kind.as_str()
        ));
    }
    if d.k.is_some() != want_k {
        violations.push(format!(
            "kind `{}` and K slot are inconsistent",
            d.kind.as_str()
        ));
    }
    if d.monodromy.is_some() && d.kind != DiagramKind::Circle {
        violations.push("monodromy data is only meaningful on circle diagrams".into());
    }

    check_subgroup("H", g, &d.h, g_abelian, rank_tol, &mut violations);
    for (name, k) in d.non_principal() {
        check_subgroup(name, g, k, g_abelian, rank_tol, &mut violations);
        let recognized = check_non_principal(name, &d.h, k, g_abelian, rank_tol, &mut violations);
        z2.push((name.to_string(), recognized));
    }

    let n = d.manifold_dim();
    if n < 2 {
        violations.push(format!("manifold dimension n = {n} is below 2"));
    }

    // effectiveness: a kernel-free action of a torus has trivial principal isotropy
    if g_abelian && !d.h.is_trivial() {
        violations.push(
            "G is abelian but H is non-trivial; H would act trivially on every orbit \
             (apply the effective reduction first)"
                .into(),
        );
    }

    if let Some(m) = &d.monodromy {
        if m.len() != g.dim() || m.iter().any(|row| row.len() != g.dim()) {
            violations.push("monodromy matrix has the wrong shape".into());
        } else {
            let defect = linalg::orthogonality_defect(m).as_f64();
            if defect > rank_tol {
                violations.push(format!(
                    "monodromy does not preserve Q (defect {defect:.3e})"
                ));
            }
            for b in d.h.algebra.basis() {
                let img = linalg::mat_vec(m, b);
                if !d.h.algebra.contains_vector(&img, rank_tol) {
                    violations.push("monodromy does not map the algebra of H to itself".into());
                    break;
                }
            }
        }
    }

    DiagramValidation {
        violations,
        z2_recognition: z2,
        manifold_dim: n,
    }
}

/// Validation for homogeneous pairs: subalgebra, `n >= 2`, effectiveness for
/// abelian `G`.
pub fn validate_pair<S: Real>(p: &HomogeneousPair<S>) -> DiagramValidation {
    validate_pair_with(p, DEFAULT_IDENTITY_TOL, DEFAULT_RANK_TOL)
}

pub fn validate_pair_with<S: Real>(
    p: &HomogeneousPair<S>,
    identity_tol: f64,
    rank_tol: f64,
) -> DiagramValidation {
    let mut violations = Vec::new();
    let algebra_report = p.algebra.validate(identity_tol);
    for v in algebra_report.violations() {
        violations.push(format!("G: {v}"));
    }
    let g_abelian = p.algebra.is_abelian(rank_tol);
    check_subgroup("H", &p.algebra, &p.h, g_abelian, rank_tol, &mut violations);
    let n = p.manifold_dim();
    if n < 2 {
        violations.push(format!("manifold dimension n = {n} is below 2"));
    }
    if g_abelian && !p.h.is_trivial() {
        violations.push("G is abelian but H is non-trivial; the action has a kernel".into());
    }
    DiagramValidation {
        violations,
        z2_recognition: Vec::new(),
        manifold_dim: n,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::Rat;

    type L = LieAlgebraModel<f64>;

    fn z2_gen(rank: usize, at: usize) -> TorusElement {
        let mut v = vec![Rat::new(0, 1); rank];
        v[at] = Rat::new(1, 2);
        TorusElement::from_rationals(v)
    }

    #[test]
    fn klein_style_interval_validates() {
        let t2 = L::abelian(2, "t2");
        let h = SubgroupDescriptor::trivial(2);
        let km = SubgroupDescriptor::z2(2, z2_gen(2, 0)).unwrap();
        let kp = SubgroupDescriptor::z2(2, z2_gen(2, 0)).unwrap();
        let d = GroupDiagram::interval(t2, h, km, kp, "test");
        let report = validate_diagram(&d);
        assert!(report.passes(), "{:?}", report.violations);
        assert_eq!(report.manifold_dim, 3);
        assert!(report.z2_recognition.iter().all(|(_, ok)| *ok));
    }

    #[test]
    fn su2_ray_validates() {
        let su2 = L::su2();
        let h = SubgroupDescriptor::connected(Subspace::span(3, &[vec![0.0, 0.0, 1.0]], 1e-9));
        let k = SubgroupDescriptor::connected(Subspace::full(3));
        let d = GroupDiagram::ray(su2, h, k, "test");
        let report = validate_diagram(&d);
        assert!(report.passes(), "{:?}", report.violations);
        // K/H is a 2-sphere, not S^0
        assert_eq!(report.z2_recognition, vec![("K".to_string(), false)]);
    }

    #[test]
    fn containment_violation_detected() {
        let t2 = L::abelian(2, "t2");
        // H = Z_2 in the first circle, K = Z_2 in the second: H is not in K
        let h = SubgroupDescriptor::z2(2, z2_gen(2, 0)).unwrap();
        let km = SubgroupDescriptor::z2(2, z2_gen(2, 1)).unwrap();
        let kp = SubgroupDescriptor::z2(2, z2_gen(2, 1)).unwrap();
        let d = GroupDiagram::interval(t2, h, km, kp, "bad");
        let report = validate_diagram(&d);
        assert!(!report.passes());
        assert!(report
            .violations
            .iter()
            .any(|v| v.contains("containment") || v.contains("subgroup")));
    }

    #[test]
    fn finite_subgroup_equality() {
        let a = SubgroupDescriptor::<f64>::z2(2, z2_gen(2, 0)).unwrap();
        let b = SubgroupDescriptor::<f64>::z2(2, z2_gen(2, 0)).unwrap();
        let c = SubgroupDescriptor::<f64>::z2(2, z2_gen(2, 1)).unwrap();
        assert!(finite_subgroups_equal(&a, &b).unwrap());
        assert!(!finite_subgroups_equal(&a, &c).unwrap());

        let both = TorusElement::from_rationals(vec![Rat::new(1, 2), Rat::new(1, 2)]);
        let d = SubgroupDescriptor::<f64>::z2(2, both.clone()).unwrap();
        let e = SubgroupDescriptor::<f64>::z2(2, both).unwrap();
        assert!(finite_subgroups_equal(&d, &e).unwrap());

        // positive-dimensional input errors
        let pos = SubgroupDescriptor::connected(Subspace::<f64>::span(2, &[vec![1.0, 0.0]], 1e-9));
        assert!(finite_subgroups_equal(&pos, &a).is_err());
    }

    #[test]
    fn abelian_with_nontrivial_h_rejected() {
        let t1 = L::abelian(1, "t1");
        let h = SubgroupDescriptor::z2(1, z2_gen(1, 0)).unwrap();
        let k =
            SubgroupDescriptor::finite(1, vec![TorusElement::from_rationals(vec![Rat::new(1, 4)])])
                .unwrap();
        let d = GroupDiagram::ray(t1, h, k, "ineffective");
        let report = validate_diagram(&d);
        assert!(!report.passes());
        assert!(report.violations.iter().any(|v| v.contains("abelian")));
    }

    #[test]
    fn monodromy_checks() {
        let t2 = L::abelian(2, "t2");
        let h = SubgroupDescriptor::trivial(2);
        let rot = vec![vec![0.0, -1.0], vec![1.0, 0.0]];
        let d = GroupDiagram::circle(t2.clone(), h.clone(), Some(rot), "ok");
        assert!(validate_diagram(&d).passes());

        let shear = vec![vec![1.0, 1.0], vec![0.0, 1.0]];
        let bad = GroupDiagram::circle(t2, h, Some(shear), "bad");
        let report = validate_diagram(&bad);
        assert!(report.violations.iter().any(|v| v.contains("preserve Q")));
    }
}
