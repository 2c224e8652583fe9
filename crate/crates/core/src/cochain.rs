//! Cochain complexes `Ω⁰ → Ω¹ → Ω²` of graphs drawn on closed surfaces.
//!
//! Each edge carries one stored orientation; a face is a closed walk of
//! `(edge, ±1)` steps. `d0` is the discrete gradient (head minus tail) and
//! `d1` the circulation around each face. Cohomology dimensions come from
//! rank–nullity over an exact field.

use serde_json::{json, Value};
use thiserror::Error;

use crate::exactlin::{rank, Elem, ExactMatrix, FieldSpec, LinAlgError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CochainError {
    #[error("expected {expected} values, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("edge {edge} has endpoint {vertex} but only {vertices} vertices exist")]
    BadEdge {
        edge: usize,
        vertex: usize,
        vertices: usize,
    },
    #[error("face {face} refers to missing edge {edge}")]
    BadFaceEdge { face: usize, edge: usize },
    #[error("face {face} has sign {sign}; signs must be +1 or -1")]
    BadSign { face: usize, sign: i64 },
    #[error("face {face} is not a closed walk (break after step {step})")]
    OpenWalk { face: usize, step: usize },
    #[error("edge {edge} appears {count} times in face boundaries; a closed surface needs 2")]
    NotClosed { edge: usize, count: usize },
    #[error("bad parameter: {0}")]
    BadParam(String),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Boundary step: an edge index traversed with (+1) or against (-1) its
/// stored orientation.
pub type Step = (usize, i8);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellComplex2 {
    vertices: usize,
    edges: Vec<(usize, usize)>,
    faces: Vec<Vec<Step>>,
    closed: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cohomology {
    pub h0: usize,
    pub h1: usize,
    pub h2: usize,
}

impl Cohomology {
    pub fn euler(&self) -> i64 {
        self.h0 as i64 - self.h1 as i64 + self.h2 as i64
    }
}

impl CellComplex2 {
    pub fn new(
        vertices: usize,
        edges: Vec<(usize, usize)>,
        faces: Vec<Vec<Step>>,
        closed: bool,
    ) -> Result<Self, CochainError> {
        for (edge, &(t, h)) in edges.iter().enumerate() {
            for vertex in [t, h] {
                if vertex >= vertices {
                    return Err(CochainError::BadEdge {
                        edge,
                        vertex,
                        vertices,
                    });
                }
            }
        }
        let mut multiplicity = vec![0usize; edges.len()];
        for (face, walk) in faces.iter().enumerate() {
            for &(edge, sign) in walk {
                if edge >= edges.len() {
                    return Err(CochainError::BadFaceEdge { face, edge });
                }
                if sign != 1 && sign != -1 {
                    return Err(CochainError::BadSign {
                        face,
                        sign: sign.into(),
                    });
                }
                multiplicity[edge] += 1;
            }
            let ends = |(e, s): Step| {
                if s > 0 {
                    edges[e]
                } else {
                    (edges[e].1, edges[e].0)
                }
            };
            for step in 0..walk.len() {
                let (_, head) = ends(walk[step]);
                let (tail, _) = ends(walk[(step + 1) % walk.len()]);
                if head != tail {
                    return Err(CochainError::OpenWalk { face, step });
                }
            }
        }
        if closed {
            if let Some((edge, &count)) = multiplicity.iter().enumerate().find(|(_, &c)| c != 2) {
                return Err(CochainError::NotClosed { edge, count });
            }
        }
        Ok(CellComplex2 {
            vertices,
            edges,
            faces,
            closed,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn faces(&self) -> &[Vec<Step>] {
        &self.faces
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// `V - E + F`.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    /// Gradient matrix, `E × V`.
    pub fn d0_matrix(&self, field: FieldSpec) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(field, self.edges.len(), self.vertices);
        for (e, &(t, h)) in self.edges.iter().enumerate() {
            if t != h {
                m.set(e, h, field.one()).expect("field element");
                m.set(e, t, field.from_i64(-1)).expect("field element");
            }
        }
        m
    }

    /// Curl matrix, `F × E`; repeated edges in a walk accumulate.
    pub fn d1_matrix(&self, field: FieldSpec) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(field, self.faces.len(), self.edges.len());
        for (f, walk) in self.faces.iter().enumerate() {
            for &(e, s) in walk {
                let v = field.add(m.get(f, e), &field.from_i64(s.into()));
                m.set(f, e, v).expect("field element");
            }
        }
        m
    }

    /// Splits every edge at a new midpoint vertex.
    pub fn subdivide_edges(&self) -> CellComplex2 {
        let v = self.vertices;
        let mut edges = Vec::with_capacity(2 * self.edges.len());
        for (e, &(t, h)) in self.edges.iter().enumerate() {
            edges.push((t, v + e));
            edges.push((v + e, h));
        }
        let faces = self
            .faces
            .iter()
            .map(|walk| {
                walk.iter()
                    .flat_map(|&(e, s)| {
                        if s > 0 {
                            [(2 * e, 1), (2 * e + 1, 1)]
                        } else {
                            [(2 * e + 1, -1), (2 * e, -1)]
                        }
                    })
                    .collect()
            })
            .collect();
        CellComplex2 {
            vertices: v + self.edges.len(),
            edges,
            faces,
            closed: self.closed,
        }
    }

    pub fn from_json(v: &Value) -> Result<Self, CochainError> {
        let perr = |m: &str| CochainError::Parse(m.to_string());
        let vertices = v
            .get("V")
            .and_then(Value::as_u64)
            .ok_or_else(|| perr("missing integer \"V\""))? as usize;
        let pair = |x: &Value| -> Result<(u64, i64), CochainError> {
            match x.as_array().map(Vec::as_slice) {
                Some([a, b]) => Ok((
                    a.as_u64().ok_or_else(|| perr("bad index"))?,
                    b.as_i64().ok_or_else(|| perr("bad integer"))?,
                )),
                _ => Err(perr("expected a pair")),
            }
        };
        let edges = v
            .get("edges")
            .and_then(Value::as_array)
            .ok_or_else(|| perr("missing \"edges\""))?
            .iter()
            .map(|e| {
                let (t, h) = pair(e)?;
                let h = usize::try_from(h).map_err(|_| perr("negative vertex"))?;
                Ok((t as usize, h))
            })
            .collect::<Result<Vec<_>, CochainError>>()?;
        let faces = v
            .get("faces")
            .and_then(Value::as_array)
            .ok_or_else(|| perr("missing \"faces\""))?
            .iter()
            .enumerate()
            .map(|(face, walk)| {
                walk.as_array()
                    .ok_or_else(|| perr("face must be an array of steps"))?
                    .iter()
                    .map(|step| {
                        let (e, s) = pair(step)?;
                        let sign = i8::try_from(s).ok().filter(|s| *s == 1 || *s == -1);
                        sign.map(|s| (e as usize, s))
                            .ok_or(CochainError::BadSign { face, sign: s })
                    })
                    .collect::<Result<Vec<Step>, CochainError>>()
            })
            .collect::<Result<Vec<_>, CochainError>>()?;
        let closed = v.get("closed").and_then(Value::as_bool).unwrap_or(false);
        Self::new(vertices, edges, faces, closed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "V": self.vertices,
            "edges": self.edges.iter().map(|&(t, h)| json!([t, h])).collect::<Vec<_>>(),
            "faces": self.faces.iter().map(|w| w.iter().map(|&(e, s)| json!([e, s])).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "closed": self.closed,
        })
    }
}

fn check_len(expected: usize, got: usize) -> Result<(), CochainError> {
    if expected != got {
        return Err(CochainError::SizeMismatch { expected, got });
    }
    Ok(())
}

/// Gradient: `f0(head) - f0(tail)` on every edge.
pub fn d0(x: &CellComplex2, field: FieldSpec, f0: &[Elem]) -> Result<Vec<Elem>, CochainError> {
    check_len(x.vertices, f0.len())?;
    if f0.iter().any(|e| !field.contains(e)) {
        return Err(LinAlgError::FieldMismatch.into());
    }
    Ok(x.edges
        .iter()
        .map(|&(t, h)| field.sub(&f0[h], &f0[t]))
        .collect())
}

/// Circulation: signed sum of edge values around every face.
pub fn d1(x: &CellComplex2, field: FieldSpec, f1: &[Elem]) -> Result<Vec<Elem>, CochainError> {
    check_len(x.edges.len(), f1.len())?;
    if f1.iter().any(|e| !field.contains(e)) {
        return Err(LinAlgError::FieldMismatch.into());
    }
    Ok(x.faces
        .iter()
        .map(|walk| {
            walk.iter().fold(field.zero(), |acc, &(e, s)| {
                if s > 0 {
                    field.add(&acc, &f1[e])
                } else {
                    field.sub(&acc, &f1[e])
                }
            })
        })
        .collect())
}

pub fn cohomology_dims(x: &CellComplex2, field: FieldSpec) -> Cohomology {
    let r0 = rank(&x.d0_matrix(field));
    let r1 = rank(&x.d1_matrix(field));
    let h = Cohomology {
        h0: x.vertices - r0,
        h1: x.edges.len() - r0 - r1,
        h2: x.faces.len() - r1,
    };
    assert_eq!(
        h.euler(),
        x.euler_characteristic(),
        "alternating sum must equal V - E + F"
    );
    h
}

/// `k × k` square grid on the torus: vertex `(i, j)` is `i + k j`, edge
/// `j k + i` goes right from `(i, j)`, edge `k² + j k + i` goes up.
pub fn torus_grid(k: usize) -> Result<CellComplex2, CochainError> {
    if k < 2 {
        return Err(CochainError::BadParam(format!(
            "torus grid needs k >= 2, got {k}"
        )));
    }
    let vtx = |i: usize, j: usize| (i % k) + k * (j % k);
    let right = |i: usize, j: usize| (j % k) * k + (i % k);
    let up = |i: usize, j: usize| k * k + (j % k) * k + (i % k);
    let mut edges = vec![(0, 0); 2 * k * k];
    for j in 0..k {
        for i in 0..k {
            edges[right(i, j)] = (vtx(i, j), vtx(i + 1, j));
            edges[up(i, j)] = (vtx(i, j), vtx(i, j + 1));
        }
    }
    let faces = (0..k)
        .flat_map(|j| (0..k).map(move |i| (i, j)))
        .map(|(i, j)| {
            vec![
                (right(i, j), 1),
                (up(i + 1, j), 1),
                (right(i, j + 1), -1),
                (up(i, j), -1),
            ]
        })
        .collect();
    CellComplex2::new(k * k, edges, faces, true)
}

/// Surface of a cube: 8 vertices, 12 edges, 6 square faces.
pub fn cube_surface() -> CellComplex2 {
    // Vertex bits: x = 1, y = 2, z = 4.
    let edges = vec![
        (0, 1),
        (2, 3),
        (4, 5),
        (6, 7), // x-direction
        (0, 2),
        (1, 3),
        (4, 6),
        (5, 7), // y-direction
        (0, 4),
        (1, 5),
        (2, 6),
        (3, 7), // z-direction
    ];
    let faces = vec![
        vec![(0, 1), (5, 1), (1, -1), (4, -1)],   // z = 0
        vec![(2, 1), (7, 1), (3, -1), (6, -1)],   // z = 1
        vec![(0, 1), (9, 1), (2, -1), (8, -1)],   // y = 0
        vec![(1, 1), (11, 1), (3, -1), (10, -1)], // y = 1
        vec![(4, 1), (10, 1), (6, -1), (8, -1)],  // x = 0
        vec![(5, 1), (11, 1), (7, -1), (9, -1)],  // x = 1
    ];
    CellComplex2::new(8, edges, faces, true).expect("cube fixture is a closed surface")
}

/// Triangulated torus with 9 vertices: the 3 × 3 grid with every square cut
/// along its diagonal (27 edges, 18 triangles). Stands in for the hexagon
/// gluing, which has no vertex-distinct polygonal form.
pub fn triangulated_torus() -> CellComplex2 {
    let grid = torus_grid(3).expect("k = 3 is valid");
    let k = 3;
    let mut edges = grid.edges.clone();
    let vtx = |i: usize, j: usize| (i % k) + k * (j % k);
    let right = |i: usize, j: usize| (j % k) * k + (i % k);
    let up = |i: usize, j: usize| k * k + (j % k) * k + (i % k);
    let mut faces = Vec::new();
    for j in 0..k {
        for i in 0..k {
            let diag = edges.len();
            edges.push((vtx(i, j), vtx(i + 1, j + 1)));
            faces.push(vec![(right(i, j), 1), (up(i + 1, j), 1), (diag, -1)]);
            faces.push(vec![(diag, 1), (right(i, j + 1), -1), (up(i, j), -1)]);
        }
    }
    CellComplex2::new(9, edges, faces, true).expect("triangulated torus fixture is closed")
}
