//! Polytope model: vertices, facets with supporting inequalities, derived
//! edges, face enumeration for simple polytopes, and the smallest-face
//! closure operator.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::exact::{dot, Rat, RatVector};
use crate::linalg::affine_dim;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolytopeError {
    #[error("polytope has no vertices")]
    NoVertices,
    #[error("coordinate length mismatch (expected {expected}, got {got})")]
    MixedDimensions { expected: usize, got: usize },
    #[error("face enumeration requires a simple polytope")]
    NotSimple,
}

/// Facet: supporting inequality normal·x <= offset plus the vertices
/// satisfying it with equality (sorted indices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub normal: RatVector,
    pub offset: Rat,
    pub incident_vertices: Vec<usize>,
}

/// Face identified by its vertex set; `defining_facets` is canonical: every
/// facet containing the whole vertex set. The improper face has an empty
/// defining set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub defining_facets: Vec<usize>,
    pub vertex_set: Vec<usize>,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    pub name: String,
    pub dim: usize,
    pub vertices: Vec<RatVector>,
    pub facets: Vec<Facet>,
    pub simple: bool,
}

impl Polytope {
    /// Builds a polytope from supporting inequalities; facet incidence is
    /// recomputed exactly from the coordinates.
    pub fn from_inequalities(
        name: impl Into<String>,
        vertices: Vec<RatVector>,
        inequalities: Vec<(RatVector, Rat)>,
    ) -> Result<Polytope, PolytopeError> {
        check_coordinates(&vertices, inequalities.iter().map(|(n, _)| n))?;
        let facets = inequalities
            .into_iter()
            .map(|(normal, offset)| {
                let incident_vertices = vertices
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| dot(&normal, v) == offset)
                    .map(|(i, _)| i)
                    .collect();
                Facet {
                    normal,
                    offset,
                    incident_vertices,
                }
            })
            .collect();
        Ok(Polytope::assemble(name.into(), vertices, facets))
    }

    /// Stores the given facet incidence as-is; `validate` checks it against
    /// the coordinates.
    pub fn from_parts(
        name: impl Into<String>,
        vertices: Vec<RatVector>,
        facets: Vec<Facet>,
    ) -> Result<Polytope, PolytopeError> {
        check_coordinates(&vertices, facets.iter().map(|f| &f.normal))?;
        Ok(Polytope::assemble(name.into(), vertices, facets))
    }

    fn assemble(name: String, vertices: Vec<RatVector>, mut facets: Vec<Facet>) -> Polytope {
        for f in &mut facets {
            f.incident_vertices.sort_unstable();
            f.incident_vertices.dedup();
        }
        let dim = affine_dim(&vertices).expect("nonempty vertex set");
        let mut on_count = vec![0usize; vertices.len()];
        for f in &facets {
            for &v in &f.incident_vertices {
                on_count[v] += 1;
            }
        }
        let simple = on_count.iter().all(|&c| c == dim);
        Polytope {
            name,
            dim,
            vertices,
            facets,
            simple,
        }
    }

    /// Checks every model invariant; violations are returned as data, not
    /// raised. An empty list means the polytope is valid.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (fi, f) in self.facets.iter().enumerate() {
            let mut equality = Vec::new();
            for (vi, v) in self.vertices.iter().enumerate() {
                let lhs = dot(&f.normal, v);
                if lhs > f.offset {
                    out.push(format!("vertex {vi} violates facet {fi} inequality"));
                } else if lhs == f.offset {
                    equality.push(vi);
                }
            }
            if equality != f.incident_vertices {
                out.push(format!("facet {fi}: equality set mismatch"));
            }
            if f.incident_vertices.is_empty() {
                out.push(format!("facet {fi}: empty incidence set"));
            } else {
                let pts: Vec<RatVector> = f
                    .incident_vertices
                    .iter()
                    .filter(|&&v| v < self.vertices.len())
                    .map(|&v| self.vertices[v].clone())
                    .collect();
                if affine_dim(&pts) != Ok(self.dim.saturating_sub(1)) {
                    out.push(format!(
                        "facet {fi}: incident vertices do not span dimension {}",
                        self.dim.saturating_sub(1)
                    ));
                }
            }
        }
        let mut on_count = vec![0usize; self.vertices.len()];
        for f in &self.facets {
            for &v in &f.incident_vertices {
                if v < self.vertices.len() {
                    on_count[v] += 1;
                }
            }
        }
        for (vi, &c) in on_count.iter().enumerate() {
            if c < self.dim {
                out.push(format!(
                    "vertex {vi} lies on {c} facets, fewer than dimension {}",
                    self.dim
                ));
            }
        }
        let distinct: BTreeSet<&RatVector> = self.vertices.iter().collect();
        if distinct.len() != self.vertices.len() {
            out.push("duplicate vertex coordinates".to_string());
        }
        let incidences: BTreeSet<&Vec<usize>> =
            self.facets.iter().map(|f| &f.incident_vertices).collect();
        if incidences.len() != self.facets.len() {
            out.push("two facets share an incidence set".to_string());
        }
        out
    }

    pub fn facets_through(&self, v: usize) -> Vec<usize> {
        self.facets
            .iter()
            .enumerate()
            .filter(|(_, f)| f.incident_vertices.binary_search(&v).is_ok())
            .map(|(i, _)| i)
            .collect()
    }

    /// Vertices lying on every facet in `facet_ids`; all vertices when the
    /// set is empty.
    fn vertices_on_all(&self, facet_ids: &[usize]) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&v| {
                facet_ids
                    .iter()
                    .all(|&f| self.facets[f].incident_vertices.binary_search(&v).is_ok())
            })
            .collect()
    }

    /// Edge rule: (u,v) is an edge iff the vertices on every facet common to
    /// u and v are exactly {u,v}; simple polytopes additionally require
    /// dim-1 common facets.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let through: Vec<Vec<usize>> = (0..self.vertices.len())
            .map(|v| self.facets_through(v))
            .collect();
        let mut out = Vec::new();
        for u in 0..self.vertices.len() {
            for v in u + 1..self.vertices.len() {
                let common: Vec<usize> = through[u]
                    .iter()
                    .copied()
                    .filter(|f| through[v].binary_search(f).is_ok())
                    .collect();
                if self.simple && common.len() != self.dim.saturating_sub(1) {
                    continue;
                }
                if self.vertices_on_all(&common) == [u, v] {
                    out.push((u, v));
                }
            }
        }
        out
    }

    fn face_from_vertex_set(&self, vertex_set: Vec<usize>) -> Face {
        let defining_facets = self
            .facets
            .iter()
            .enumerate()
            .filter(|(_, f)| {
                vertex_set
                    .iter()
                    .all(|v| f.incident_vertices.binary_search(v).is_ok())
            })
            .map(|(i, _)| i)
            .collect();
        let pts: Vec<RatVector> = vertex_set
            .iter()
            .map(|&v| self.vertices[v].clone())
            .collect();
        let dim = affine_dim(&pts).expect("faces have vertices");
        Face {
            defining_facets,
            vertex_set,
            dim,
        }
    }

    /// Inclusion-minimal face containing all of `s` (the closure of `s`
    /// under the facet-intersection operator). Returns the improper face
    /// when no facet contains all of `s`.
    pub fn smallest_face(&self, s: &[usize]) -> Face {
        assert!(!s.is_empty(), "smallest_face of an empty set");
        let defining: Vec<usize> = self
            .facets
            .iter()
            .enumerate()
            .filter(|(_, f)| {
                s.iter()
                    .all(|v| f.incident_vertices.binary_search(v).is_ok())
            })
            .map(|(i, _)| i)
            .collect();
        self.face_from_vertex_set(self.vertices_on_all(&defining))
    }

    /// All nonempty faces (proper and improper), deduplicated. Uses the
    /// simple-polytope local method: every face through a vertex v is cut
    /// out by a subset of the dim facets through v.
    pub fn all_faces(&self) -> Result<Vec<Face>, PolytopeError> {
        if !self.simple {
            return Err(PolytopeError::NotSimple);
        }
        let mut vertex_sets = BTreeSet::new();
        for v in 0..self.vertices.len() {
            let through = self.facets_through(v);
            for mask in 0..(1u32 << through.len()) {
                let subset: Vec<usize> = through
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &f)| f)
                    .collect();
                vertex_sets.insert(self.vertices_on_all(&subset));
            }
        }
        let mut faces: Vec<Face> = vertex_sets
            .into_iter()
            .map(|vs| self.face_from_vertex_set(vs))
            .collect();
        faces.sort_by(|a, b| (a.dim, &a.vertex_set).cmp(&(b.dim, &b.vertex_set)));
        Ok(faces)
    }
}

fn check_coordinates<'a>(
    vertices: &[RatVector],
    normals: impl Iterator<Item = &'a RatVector>,
) -> Result<(), PolytopeError> {
    let Some(first) = vertices.first() else {
        return Err(PolytopeError::NoVertices);
    };
    let expected = first.len();
    for v in vertices {
        if v.len() != expected {
            return Err(PolytopeError::MixedDimensions {
                expected,
                got: v.len(),
            });
        }
    }
    for n in normals {
        if n.len() != expected {
            return Err(PolytopeError::MixedDimensions {
                expected,
                got: n.len(),
            });
        }
    }
    Ok(())
}
