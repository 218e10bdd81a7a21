//! Independent computation of `H1(F, S+; Z)` from a cell structure.
//!
//! Every component is built from one 0-cell `v0` with `2g` loops (the
//! handles), each boundary circle subdivided at its sutures (a circle
//! without sutures gets one vertex and one loop), a connecting edge from
//! `v0` to the first vertex of each circle, and a single 2-cell glued along
//! the handle commutators and the boundary circles. The `S+` subcomplex is
//! made of the `S+` edges and their endpoints. Relative homology is read
//! off the Smith normal forms of the relative boundary maps.

use num_bigint::BigInt;
use num_traits::One;

use crate::linalg::{smith_normal_form, DenseMatrix};
use crate::surface::{BoundaryArc, BoundaryCircle, SuturedSurface};

/// Rank and torsion of `H1(F, S+)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleHomology {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
    pub relative_edges: usize,
    pub relative_vertices: usize,
}

#[derive(Default)]
struct Complex {
    /// Whether each vertex lies in `S+`.
    vertex_plus: Vec<bool>,
    /// `(from, to, in S+)` for each edge.
    edges: Vec<(usize, usize, bool)>,
    /// Boundary of each 2-cell as signed edge counts.
    faces: Vec<Vec<(usize, i64)>>,
}

impl Complex {
    fn vertex(&mut self, plus: bool) -> usize {
        self.vertex_plus.push(plus);
        self.vertex_plus.len() - 1
    }

    fn edge(&mut self, from: usize, to: usize, plus: bool) -> usize {
        self.edges.push((from, to, plus));
        self.edges.len() - 1
    }
}

fn build(f: &SuturedSurface) -> Complex {
    let mut cx = Complex::default();
    for comp in &f.components {
        let v0 = cx.vertex(false);
        for _ in 0..2 * comp.genus {
            cx.edge(v0, v0, false);
        }
        let mut face = Vec::new();
        for circle in &comp.boundary {
            let first = match circle {
                BoundaryCircle::FullPlus(_) | BoundaryCircle::FullMinus => {
                    let plus = matches!(circle, BoundaryCircle::FullPlus(_));
                    let v = cx.vertex(plus);
                    face.push((cx.edge(v, v, plus), 1));
                    v
                }
                BoundaryCircle::Mixed(word) => {
                    // vertex k is where arc k starts; every suture touches S+
                    let verts: Vec<usize> = (0..word.len()).map(|_| cx.vertex(true)).collect();
                    for (k, arc) in word.iter().enumerate() {
                        let plus = matches!(arc, BoundaryArc::Plus(_));
                        let e = cx.edge(verts[k], verts[(k + 1) % word.len()], plus);
                        face.push((e, 1));
                    }
                    verts[0]
                }
            };
            cx.edge(v0, first, false);
        }
        // the handle commutators and the connecting edges cancel
        cx.faces.push(face);
    }
    cx
}

/// `H1(F, S+)` from the cell structure.
pub fn relative_h1(f: &SuturedSurface) -> OracleHomology {
    let cx = build(f);
    let rel_vertices: Vec<usize> = (0..cx.vertex_plus.len()).filter(|&v| !cx.vertex_plus[v]).collect();
    let rel_edges: Vec<usize> = (0..cx.edges.len()).filter(|&e| !cx.edges[e].2).collect();
    let mut vpos = vec![usize::MAX; cx.vertex_plus.len()];
    for (k, &v) in rel_vertices.iter().enumerate() {
        vpos[v] = k;
    }
    let mut epos = vec![usize::MAX; cx.edges.len()];
    for (k, &e) in rel_edges.iter().enumerate() {
        epos[e] = k;
    }

    let mut d1 = DenseMatrix::zeros(rel_vertices.len(), rel_edges.len());
    for (k, &e) in rel_edges.iter().enumerate() {
        let (from, to, _) = cx.edges[e];
        if from == to {
            continue;
        }
        if vpos[to] != usize::MAX {
            let x = d1.get(vpos[to], k) + BigInt::one();
            d1.set(vpos[to], k, x);
        }
        if vpos[from] != usize::MAX {
            let x = d1.get(vpos[from], k) - BigInt::one();
            d1.set(vpos[from], k, x);
        }
    }
    let mut d2 = DenseMatrix::zeros(rel_edges.len(), cx.faces.len());
    for (c, face) in cx.faces.iter().enumerate() {
        for &(e, s) in face {
            if epos[e] != usize::MAX {
                let x = d2.get(epos[e], c) + BigInt::from(s);
                d2.set(epos[e], c, x);
            }
        }
    }
    let rank1 = smith_normal_form(&d1).rank();
    let s2 = smith_normal_form(&d2);
    let torsion: Vec<BigInt> = s2
        .invariant_factors()
        .into_iter()
        .filter(|x| !x.is_one())
        .collect();
    OracleHomology {
        rank: rel_edges.len() - rank1 - s2.rank(),
        torsion,
        relative_edges: rel_edges.len(),
        relative_vertices: rel_vertices.len(),
    }
}
