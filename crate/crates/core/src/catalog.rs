//! Built-in algebras, diagrams and homogeneous pairs used by the test
//! batteries and the CLI.

use crate::diagram::{GroupDiagram, HomogeneousPair, SubgroupDescriptor};
use crate::error::{Error, Result};
use crate::lie::{LieAlgebraModel, Subspace};
use crate::scalar::Real;
use crate::torus::{Rat, TorusElement};

/// A named catalog object.
#[derive(Debug, Clone)]
pub enum CatalogEntry<S> {
    Algebra(LieAlgebraModel<S>),
    Diagram(GroupDiagram<S>),
    Pair(HomogeneousPair<S>),
}

fn z2_gen(rank: usize, at: usize) -> TorusElement {
    let mut v = vec![Rat::new(0, 1); rank];
    v[at] = Rat::new(1, 2);
    TorusElement::from_rationals(v)
}

/// Names and one-line descriptions of every catalog entry, in listing order.
pub fn catalog_names() -> Vec<(&'static str, &'static str)> {
    vec![
        ("t1", "abelian algebra of the circle T^1"),
        ("t2", "abelian algebra of the torus T^2"),
        ("t3", "abelian algebra of the torus T^3"),
        ("t4", "abelian algebra of the torus T^4"),
        ("su2", "su(2) with cyclic structure constants"),
        ("so3", "so(3); same constants as su(2), distinct label"),
        ("su2+t1", "direct sum su(2) + t^1"),
        ("su2+t2", "direct sum su(2) + t^2"),
        (
            "diagram:t2-circle",
            "circle diagram (T^2, e); total space the 3-torus",
        ),
        (
            "diagram:klein-bottle-x-s1",
            "interval diagram (T^2, e, Z_2, Z_2) with equal isotropy; Klein bottle x S^1",
        ),
        (
            "diagram:A-3mfd",
            "interval diagram (T^2, e, Z_2(1/2,0), Z_2(0,1/2)); the flat 3-manifold A",
        ),
        (
            "diagram:t1-line",
            "line diagram (T^1, e); total space T^1 x R",
        ),
        (
            "diagram:moebius",
            "ray diagram (T^1, e, Z_2); the open Moebius band",
        ),
        (
            "diagram:su2-interval",
            "interval diagram (SU(2), e, SU(2), SU(2))",
        ),
        (
            "diagram:su2-ray",
            "ray diagram (SU(2), e, SU(2)); R^4 with the cone action",
        ),
        ("pair:t3", "homogeneous pair (T^3, e); the 3-torus"),
        ("pair:su2", "homogeneous pair (SU(2), e); the 3-sphere"),
        (
            "pair:su2-s2",
            "homogeneous pair (SU(2), U(1)); the 2-sphere",
        ),
    ]
}

/// Looks up a catalog entry by name.
pub fn catalog_lookup<S: Real>(name: &str) -> Result<CatalogEntry<S>> {
    let entry = match name {
        "t1" => CatalogEntry::Algebra(LieAlgebraModel::abelian(1, "t1")),
        "t2" => CatalogEntry::Algebra(LieAlgebraModel::abelian(2, "t2")),
        "t3" => CatalogEntry::Algebra(LieAlgebraModel::abelian(3, "t3")),
        "t4" => CatalogEntry::Algebra(LieAlgebraModel::abelian(4, "t4")),
        "su2" => CatalogEntry::Algebra(LieAlgebraModel::su2()),
        "so3" => CatalogEntry::Algebra(LieAlgebraModel::so3()),
        "su2+t1" => CatalogEntry::Algebra(
            LieAlgebraModel::su2().direct_sum(&LieAlgebraModel::abelian(1, "t1"), "su2+t1"),
        ),
        "su2+t2" => CatalogEntry::Algebra(
            LieAlgebraModel::su2().direct_sum(&LieAlgebraModel::abelian(2, "t2"), "su2+t2"),
        ),
        "diagram:t2-circle" => CatalogEntry::Diagram(GroupDiagram::circle(
            LieAlgebraModel::abelian(2, "t2"),
            SubgroupDescriptor::trivial(2),
            None,
            name,
        )),
        "diagram:klein-bottle-x-s1" => CatalogEntry::Diagram(GroupDiagram::interval(
            LieAlgebraModel::abelian(2, "t2"),
            SubgroupDescriptor::trivial(2),
            SubgroupDescriptor::z2(2, z2_gen(2, 0))?,
            SubgroupDescriptor::z2(2, z2_gen(2, 0))?,
            name,
        )),
        "diagram:A-3mfd" => CatalogEntry::Diagram(GroupDiagram::interval(
            LieAlgebraModel::abelian(2, "t2"),
            SubgroupDescriptor::trivial(2),
            SubgroupDescriptor::z2(2, z2_gen(2, 0))?,
            SubgroupDescriptor::z2(2, z2_gen(2, 1))?,
            name,
        )),
        "diagram:t1-line" => CatalogEntry::Diagram(GroupDiagram::line(
            LieAlgebraModel::abelian(1, "t1"),
            SubgroupDescriptor::trivial(1),
            name,
        )),
        "diagram:moebius" => CatalogEntry::Diagram(GroupDiagram::ray(
            LieAlgebraModel::abelian(1, "t1"),
            SubgroupDescriptor::trivial(1),
            SubgroupDescriptor::z2(1, z2_gen(1, 0))?,
            name,
        )),
        "diagram:su2-interval" => CatalogEntry::Diagram(GroupDiagram::interval(
            LieAlgebraModel::su2(),
            SubgroupDescriptor::trivial(3),
            SubgroupDescriptor::connected(Subspace::full(3)),
            SubgroupDescriptor::connected(Subspace::full(3)),
            name,
        )),
        "diagram:su2-ray" => CatalogEntry::Diagram(GroupDiagram::ray(
            LieAlgebraModel::su2(),
            SubgroupDescriptor::trivial(3),
            SubgroupDescriptor::connected(Subspace::full(3)),
            name,
        )),
        "pair:t3" => CatalogEntry::Pair(HomogeneousPair::new(
            LieAlgebraModel::abelian(3, "t3"),
            SubgroupDescriptor::trivial(3),
            name,
        )),
        "pair:su2" => CatalogEntry::Pair(HomogeneousPair::new(
            LieAlgebraModel::su2(),
            SubgroupDescriptor::trivial(3),
            name,
        )),
        "pair:su2-s2" => CatalogEntry::Pair(HomogeneousPair::new(
            LieAlgebraModel::su2(),
            SubgroupDescriptor::connected(Subspace::span(
                3,
                &[vec![S::zero(), S::zero(), S::one()]],
                crate::lie::DEFAULT_RANK_TOL,
            )),
            name,
        )),
        _ => return Err(Error::UnknownCatalogEntry(name.to_string())),
    };
    Ok(entry)
}

/// All catalog algebras (including the algebras of diagram/pair entries'
/// groups would be redundant; this is the plain algebra battery).
pub fn catalog_algebras<S: Real>() -> Vec<LieAlgebraModel<S>> {
    catalog_names()
        .iter()
        .filter(|(n, _)| !n.contains(':'))
        .map(
            |(n, _)| match catalog_lookup::<S>(n).expect("catalog entry") {
                CatalogEntry::Algebra(a) => a,
                _ => unreachable!(),
            },
        )
        .collect()
}

/// All catalog diagrams.
pub fn catalog_diagrams<S: Real>() -> Vec<GroupDiagram<S>> {
    catalog_names()
        .iter()
        .filter(|(n, _)| n.starts_with("diagram:"))
        .map(
            |(n, _)| match catalog_lookup::<S>(n).expect("catalog entry") {
                CatalogEntry::Diagram(d) => d,
                _ => unreachable!(),
            },
        )
        .collect()
}

/// All catalog homogeneous pairs.
pub fn catalog_pairs<S: Real>() -> Vec<HomogeneousPair<S>> {
    catalog_names()
        .iter()
        .filter(|(n, _)| n.starts_with("pair:"))
        .map(
            |(n, _)| match catalog_lookup::<S>(n).expect("catalog entry") {
                CatalogEntry::Pair(p) => p,
                _ => unreachable!(),
            },
        )
        .collect()
}
