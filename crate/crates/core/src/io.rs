//! JSON file formats: diagram/pair ingestion and verdict emission.
//!
//! Diagram files are UTF-8 JSON:
//!
//! ```json
//! {
//!   "kind": "interval",
//!   "G": {"catalog": "t2"},
//!   "H": {"basis": [], "components": 1},
//!   "K_minus": {"components": 2, "finite_generators": [[0.5, 0.0]]},
//!   "K_plus":  {"components": 2, "finite_generators": [[0.0, 0.5]]}
//! }
//! ```
//!
//! `G` is either a catalog reference or an inline algebra
//! `{"dim": n, "structure_constants": [[i, j, k, value], ...]}` with
//! 0-based indices; omitted entries are zero and both orientations of each
//! bracket must be listed. Subgroup objects take `"basis"` (rows spanning
//! the subalgebra), `"components"`, and `"finite_generators"` (torus
//! elements with entries in `[0, 1)`). `"kind": "homogeneous"` selects a
//! homogeneous pair, which uses only `G` and `H`. Circle diagrams may carry
//! a square `"monodromy"` matrix.

use serde::{Deserialize, Serialize};

use crate::catalog::{catalog_lookup, CatalogEntry};
use crate::classify::{FlatType, Side, Statement, Verdict, Witness};
use crate::diagram::{DiagramKind, GroupDiagram, HomogeneousPair, SubgroupDescriptor};
use crate::error::{Error, Result};
use crate::lie::{LieAlgebraModel, Subspace, DEFAULT_RANK_TOL};
use crate::torus::TorusElement;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraDto {
    catalog: Option<String>,
    dim: Option<usize>,
    structure_constants: Option<Vec<(usize, usize, usize, f64)>>,
    label: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SubgroupDto {
    basis: Option<Vec<Vec<f64>>>,
    components: Option<usize>,
    finite_generators: Option<Vec<Vec<f64>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct DiagramDto {
    kind: String,
    #[serde(rename = "G")]
    g: AlgebraDto,
    #[serde(rename = "H")]
    h: Option<SubgroupDto>,
    #[serde(rename = "K_minus")]
    k_minus: Option<SubgroupDto>,
    #[serde(rename = "K_plus")]
    k_plus: Option<SubgroupDto>,
    #[serde(rename = "K")]
    k: Option<SubgroupDto>,
    monodromy: Option<Vec<Vec<f64>>>,
    label: Option<String>,
}

/// A parsed classification input.
#[derive(Debug, Clone)]
pub enum ClassifyInput {
    Diagram(GroupDiagram<f64>),
    Pair(HomogeneousPair<f64>),
}

fn algebra_from_dto(dto: &AlgebraDto) -> Result<LieAlgebraModel<f64>> {
    if let Some(name) = &dto.catalog {
        return match catalog_lookup::<f64>(name)? {
            CatalogEntry::Algebra(a) => Ok(a),
            _ => Err(Error::Parse(format!(
                "catalog entry `{name}` is not an algebra"
            ))),
        };
    }
    let dim = dto
        .dim
        .ok_or_else(|| Error::Parse("algebra needs either `catalog` or `dim`".into()))?;
    let triples = dto.structure_constants.clone().unwrap_or_default();
    LieAlgebraModel::from_triples(
        dim,
        dto.label.clone().unwrap_or_else(|| "inline".to_string()),
        &triples,
    )
    .map_err(|e| Error::Parse(e.to_string()))
}

fn subgroup_from_dto(dto: Option<&SubgroupDto>, ambient: usize) -> Result<SubgroupDescriptor<f64>> {
    let Some(dto) = dto else {
        return Ok(SubgroupDescriptor::trivial(ambient));
    };
    let basis_rows = dto.basis.clone().unwrap_or_default();
    for row in &basis_rows {
        if row.len() != ambient {
            return Err(Error::Parse(format!(
                "subgroup basis vector has length {}, ambient dimension is {ambient}",
                row.len()
            )));
        }
    }
    let algebra = Subspace::span(ambient, &basis_rows, DEFAULT_RANK_TOL);
    if algebra.dim() < basis_rows.len() {
        return Err(Error::Parse(
            "subgroup basis vectors are linearly dependent".into(),
        ));
    }
    let finite_generators = dto
        .finite_generators
        .as_deref()
        .unwrap_or(&[])
        .iter()
        .map(|v| TorusElement::from_floats(v, 1e-9))
        .collect::<Result<Vec<_>>>()?;
    let component_count = dto.components.unwrap_or_else(|| {
        if algebra.dim() == 0 && !finite_generators.is_empty() {
            // default to the generated order
            crate::torus::FiniteTorusSubgroup::generate(ambient, &finite_generators)
                .map(|g| g.order())
                .unwrap_or(1)
        } else {
            1
        }
    });
    Ok(SubgroupDescriptor {
        algebra,
        component_count,
        finite_generators,
    })
}

/// Parses a classification input file.
pub fn parse_classify_input(json: &str) -> Result<ClassifyInput> {
    let dto: DiagramDto =
        serde_json::from_str(json).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    let g = algebra_from_dto(&dto.g)?;
    let ambient = g.dim();
    let h = subgroup_from_dto(dto.h.as_ref(), ambient)?;
    let label = dto.label.clone().unwrap_or_else(|| "input".to_string());
    if dto.kind == "homogeneous" {
        if dto.k.is_some()
            || dto.k_minus.is_some()
            || dto.k_plus.is_some()
            || dto.monodromy.is_some()
        {
            return Err(Error::Parse(
                "homogeneous inputs take only `G` and `H`".into(),
            ));
        }
        return Ok(ClassifyInput::Pair(HomogeneousPair::new(g, h, label)));
    }
    let kind = DiagramKind::parse(&dto.kind)?;
    let diagram = GroupDiagram {
        kind,
        h,
        k_minus: dto
            .k_minus
            .as_ref()
            .map(|d| subgroup_from_dto(Some(d), ambient))
            .transpose()?,
        k_plus: dto
            .k_plus
            .as_ref()
            .map(|d| subgroup_from_dto(Some(d), ambient))
            .transpose()?,
        k: dto
            .k
            .as_ref()
            .map(|d| subgroup_from_dto(Some(d), ambient))
            .transpose()?,
        monodromy: dto.monodromy,
        algebra: g,
        label,
    };
    Ok(ClassifyInput::Diagram(diagram))
}

/// Serializes a diagram back into the file format (used by the round-trip
/// checks and `catalog --json`).
pub fn diagram_to_json(d: &GroupDiagram<f64>) -> serde_json::Value {
    let sub = |s: &SubgroupDescriptor<f64>| {
        serde_json::json!({
            "basis": s.algebra.basis(),
            "components": s.component_count,
            "finite_generators": s.finite_generators.iter().map(|t| t.coords_f64()).collect::<Vec<_>>(),
        })
    };
    let mut v = serde_json::json!({
        "kind": d.kind.as_str(),
        "G": {
            "dim": d.algebra.dim(),
            "structure_constants": d.algebra.triples(),
            "label": d.algebra.label(),
        },
        "H": sub(&d.h),
        "label": d.label,
    });
    let obj = v.as_object_mut().expect("object");
    if let Some(km) = &d.k_minus {
        obj.insert("K_minus".into(), sub(km));
    }
    if let Some(kp) = &d.k_plus {
        obj.insert("K_plus".into(), sub(kp));
    }
    if let Some(k) = &d.k {
        obj.insert("K".into(), sub(k));
    }
    if let Some(m) = &d.monodromy {
        obj.insert("monodromy".into(), serde_json::json!(m));
    }
    v
}

#[derive(Debug, Serialize)]
struct FlatTypeDto {
    kind: &'static str,
    n: usize,
}

#[derive(Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum WitnessDto {
    BracketInP {
        i: usize,
        j: usize,
        bracket_norm: f64,
    },
    BracketInM {
        i: usize,
        j: usize,
        bracket_norm: f64,
    },
    PNontrivial {
        side: Option<&'static str>,
        dim: usize,
    },
}

#[derive(Debug, Serialize)]
struct StatementDto {
    id: u8,
    applicable: bool,
    value: Option<bool>,
}

#[derive(Debug, Serialize)]
struct VerdictDto {
    psc: bool,
    flat_type: Option<FlatTypeDto>,
    n: usize,
    statements: Vec<StatementDto>,
    witness: Option<WitnessDto>,
    notes: String,
}

/// Verdict serialization: `{psc, flat_type, n, statements, witness, notes}`.
pub fn verdict_to_json(v: &Verdict) -> serde_json::Value {
    let flat_type = v.flat_type.as_ref().map(|f| FlatTypeDto {
        kind: f.kind_str(),
        n: f.n(),
    });
    let witness = v.witness.as_ref().map(|w| match *w {
        Witness::BracketInP { i, j, bracket_norm } => WitnessDto::BracketInP { i, j, bracket_norm },
        Witness::BracketInM { i, j, bracket_norm } => WitnessDto::BracketInM { i, j, bracket_norm },
        Witness::PNonTrivial { side, dim } => WitnessDto::PNontrivial {
            side: side.map(|s| match s {
                Side::Minus => "minus",
                Side::Plus => "plus",
            }),
            dim,
        },
    });
    let dto = VerdictDto {
        psc: v.psc,
        flat_type,
        n: v.n,
        statements: v
            .statements
            .iter()
            .map(|s: &Statement| StatementDto {
                id: s.id,
                applicable: s.applicable,
                value: s.value,
            })
            .collect(),
        witness,
        notes: v.notes.clone(),
    };
    serde_json::to_value(dto).expect("verdict serialization")
}

/// Re-exported flat-type naming for text output.
pub fn flat_type_name(f: &FlatType) -> String {
    format!("{}({})", f.kind_str(), f.n())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{classify_cohom1, classify_homogeneous, Tolerances};

    #[test]
    fn parse_interval_with_catalog_group() {
        let json = r#"{
            "kind": "interval",
            "G": {"catalog": "t2"},
            "H": {"basis": [], "components": 1},
            "K_minus": {"components": 2, "finite_generators": [[0.5, 0.0]]},
            "K_plus": {"components": 2, "finite_generators": [[0.0, 0.5]]}
        }"#;
        let input = parse_classify_input(json).unwrap();
        let ClassifyInput::Diagram(d) = input else {
            panic!("expected diagram")
        };
        let v = classify_cohom1(&d, Tolerances::default()).unwrap();
        assert!(!v.psc);
        assert_eq!(verdict_to_json(&v)["flat_type"]["kind"], "a_times_torus");
    }

    #[test]
    fn parse_homogeneous_with_inline_algebra() {
        let json = r#"{
            "kind": "homogeneous",
            "G": {"dim": 3, "structure_constants": [
                [0,1,2, 1.0], [1,0,2,-1.0],
                [1,2,0, 1.0], [2,1,0,-1.0],
                [2,0,1, 1.0], [0,2,1,-1.0]
            ], "label": "su2-inline"},
            "H": {"basis": [[0.0, 0.0, 1.0]]}
        }"#;
        let input = parse_classify_input(json).unwrap();
        let ClassifyInput::Pair(p) = input else {
            panic!("expected pair")
        };
        let v = classify_homogeneous(&p, Tolerances::default()).unwrap();
        assert!(v.psc);
    }

    #[test]
    fn malformed_inputs_error() {
        assert!(parse_classify_input("not json").is_err());
        assert!(parse_classify_input(r#"{"kind": "blob", "G": {"catalog": "t2"}}"#).is_err());
        assert!(parse_classify_input(r#"{"kind": "ray", "G": {"catalog": "t1"}, "K": {"finite_generators": [[0.123456789]]}}"#).is_err());
    }

    #[test]
    fn verdict_json_shape() {
        let json = r#"{"kind": "homogeneous", "G": {"catalog": "t3"}}"#;
        let ClassifyInput::Pair(p) = parse_classify_input(json).unwrap() else {
            panic!()
        };
        let v = classify_homogeneous(&p, Tolerances::default()).unwrap();
        let j = verdict_to_json(&v);
        assert_eq!(j["psc"], false);
        assert_eq!(j["flat_type"]["kind"], "torus");
        assert_eq!(j["flat_type"]["n"], 3);
        assert_eq!(j["statements"].as_array().unwrap().len(), 5);
        assert!(j["witness"].is_null());
    }

    #[test]
    fn monodromy_round_trips() {
        use crate::diagram::{GroupDiagram, SubgroupDescriptor};
        use crate::lie::LieAlgebraModel;
        let rot = vec![vec![0.0, -1.0], vec![1.0, 0.0]];
        let d = GroupDiagram::circle(
            LieAlgebraModel::abelian(2, "t2"),
            SubgroupDescriptor::trivial(2),
            Some(rot.clone()),
            "rotated-circle",
        );
        let json = diagram_to_json(&d).to_string();
        let ClassifyInput::Diagram(back) = parse_classify_input(&json).unwrap() else {
            panic!()
        };
        assert_eq!(back.monodromy, Some(rot));
        let v1 = classify_cohom1(&d, Tolerances::default()).unwrap();
        let v2 = classify_cohom1(&back, Tolerances::default()).unwrap();
        assert_eq!(verdict_to_json(&v1), verdict_to_json(&v2));
    }

    #[test]
    fn diagram_round_trip_same_verdict() {
        for d in crate::catalog::catalog_diagrams::<f64>() {
            let json = diagram_to_json(&d).to_string();
            let ClassifyInput::Diagram(back) = parse_classify_input(&json).unwrap() else {
                panic!("expected diagram")
            };
            let v1 = classify_cohom1(&d, Tolerances::default()).unwrap();
            let v2 = classify_cohom1(&back, Tolerances::default()).unwrap();
            assert_eq!(verdict_to_json(&v1), verdict_to_json(&v2), "{}", d.label);
        }
    }
}
