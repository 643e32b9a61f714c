//! On-disk polytope format: vertices plus facet normals, offsets, and
//! incidence lists, with every rational written as a "p" or "p/q" string.

use serde::{Deserialize, Serialize};
use std::path::Path;

use polyskel::exact::{parse_rat, rat_string};
use polyskel::polytope::Facet;
use polyskel::{Polytope, Rat, RatVector};

use crate::CliError;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FacetDoc {
    pub normal: Vec<String>,
    pub offset: String,
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolytopeDocument {
    pub name: String,
    pub dim: usize,
    pub vertices: Vec<Vec<String>>,
    pub facets: Vec<FacetDoc>,
}

impl PolytopeDocument {
    pub fn from_polytope(p: &Polytope) -> Self {
        PolytopeDocument {
            name: p.name.clone(),
            dim: p.dim,
            vertices: p
                .vertices
                .iter()
                .map(|v| v.iter().map(rat_string).collect())
                .collect(),
            facets: p
                .facets
                .iter()
                .map(|f| FacetDoc {
                    normal: f.normal.iter().map(rat_string).collect(),
                    offset: rat_string(&f.offset),
                    vertices: f.incident_vertices.clone(),
                })
                .collect(),
        }
    }

    /// Rebuilds the polytope and re-validates everything the format
    /// promises: parseable rationals, in-range indices, exact incidence.
    pub fn to_polytope(&self) -> Result<Polytope, CliError> {
        let vertices = self
            .vertices
            .iter()
            .map(|v| parse_vector(v))
            .collect::<Result<Vec<RatVector>, CliError>>()?;
        let n = vertices.len();
        let facets = self
            .facets
            .iter()
            .map(|f| {
                if let Some(&bad) = f.vertices.iter().find(|&&i| i >= n) {
                    return Err(CliError::input(format!(
                        "facet vertex index {bad} out of range (document has {n} vertices)"
                    )));
                }
                Ok(Facet {
                    normal: parse_vector(&f.normal)?,
                    offset: parse_doc_rat(&f.offset)?,
                    incident_vertices: f.vertices.clone(),
                })
            })
            .collect::<Result<Vec<Facet>, CliError>>()?;
        let p = Polytope::from_parts(self.name.clone(), vertices, facets)
            .map_err(|e| CliError::input(format!("document does not assemble: {e}")))?;
        let violations = p.validate();
        if !violations.is_empty() {
            return Err(CliError::input(format!(
                "document fails validation: {}",
                violations.join("; ")
            )));
        }
        if p.dim != self.dim {
            return Err(CliError::input(format!(
                "document says dim {} but the vertices span dimension {}",
                self.dim, p.dim
            )));
        }
        Ok(p)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::input(format!("cannot parse {}: {e}", path.display())))
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("document serializes");
        text.push('\n');
        text
    }
}

fn parse_doc_rat(text: &str) -> Result<Rat, CliError> {
    parse_rat(text).map_err(|e| CliError::input(format!("bad rational {text:?}: {e}")))
}

pub fn parse_vector(coords: &[String]) -> Result<RatVector, CliError> {
    coords.iter().map(|c| parse_doc_rat(c)).collect()
}

/// Comma-separated rationals, e.g. "3,2,1" or "1/4,0,-2".
pub fn parse_cost(text: &str) -> Result<RatVector, CliError> {
    text.split(',')
        .map(|part| parse_doc_rat(part.trim()))
        .collect()
}
