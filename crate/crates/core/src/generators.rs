//! Extremal example constructions and reproducible corpora of 3-connected
//! cubic planar graphs.

use crate::fixtures;
use crate::graph::{
    cyclically_4_edge_connected, has_triangle, is_three_connected, light_face_pair, Face,
    PlanarGraph, Vertex,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("n must be even and at least 4, got {0}")]
    BadN(usize),
}

/// The prism with one edge outside its triangles subdivided: a 7-vertex
/// planar graph whose square is K7. All three subdivision choices are
/// isomorphic; the lexicographically first edge is used.
pub fn prism_gadget() -> PlanarGraph {
    let prism = fixtures::prism();
    let triangle_edges: BTreeSet<(Vertex, Vertex)> = prism
        .faces()
        .iter()
        .filter(|f| f.len() == 3)
        .flat_map(|f| f.walk().iter().map(|&(u, v)| (u.min(v), u.max(v))))
        .collect();
    let (u, v) = prism
        .edges()
        .into_iter()
        .find(|e| !triangle_edges.contains(e))
        .expect("the prism has non-triangle edges");
    let (g, _) = prism.subdivide_edge(u, v).expect("edge exists");
    g
}

/// Two copies of the subdivided prism joined by an edge between their
/// degree-2 vertices: a cubic planar graph whose square has chromatic
/// number 7.
pub fn wegner_tight() -> PlanarGraph {
    let gadget = prism_gadget();
    let n = gadget.n();
    let a = (0..n).find(|&v| gadget.degree(v) == 2).expect("subdivision vertex");
    let b = a + n;
    let mut rot: Vec<Vec<Vertex>> = gadget.rotations().to_vec();
    for row in gadget.rotations() {
        rot.push(row.iter().map(|&v| v + n).collect());
    }
    rot[a].push(b);
    rot[b].push(a);
    PlanarGraph::from_rotation(rot).expect("joining two embeddings by a cut edge stays planar")
}

/// One face-edge expansion: picks a face and two of its edges, subdivides
/// both, and joins the two new vertices by a chord inside the face. Adds two
/// vertices; preserves planarity, cubicity, and 3-connectivity.
fn expand(g: &PlanarGraph, rng: &mut ChaCha8Rng) -> PlanarGraph {
    let faces = g.faces();
    let fi = rng.random_range(0..faces.len());
    let len = faces[fi].len();
    let i = rng.random_range(0..len);
    let j = loop {
        let j = rng.random_range(0..len);
        if j != i {
            break j;
        }
    };
    expand_at(g, &faces, fi, i, j)
}

/// The expansion surgery at face `fi`, subdividing its walk edges `i` and
/// `j` and joining the new vertices inside the face.
fn expand_at(g: &PlanarGraph, faces: &[Face], fi: usize, i: usize, j: usize) -> PlanarGraph {
    let walk = faces[fi].walk();
    let (x1, y1) = walk[i];
    let (x2, y2) = walk[j];
    let a = g.n();
    let b = g.n() + 1;
    let mut rot: Vec<Vec<Vertex>> = g.rotations().to_vec();
    let replace = |row: &mut Vec<Vertex>, from: Vertex, to: Vertex| {
        let k = row.iter().position(|&w| w == from).expect("walk edge in rotation");
        row[k] = to;
    };
    replace(&mut rot[x1], y1, a);
    replace(&mut rot[y1], x1, a);
    replace(&mut rot[x2], y2, b);
    replace(&mut rot[y2], x2, b);
    // Walking the face enters the new vertices from x1 / x2; placing the
    // chord endpoint between the walk neighbors routes it inside the face.
    rot.push(vec![x1, b, y1]);
    rot.push(vec![x2, a, y2]);
    PlanarGraph::from_rotation(rot).expect("expansion preserves the embedding")
}

/// A pseudorandom 3-connected cubic planar graph on n vertices, grown from
/// K4 by face-edge expansions. Deterministic in (n, seed); not uniform.
pub fn random_cubic_planar(n: usize, seed: u64) -> Result<PlanarGraph, GenError> {
    if n < 4 || n % 2 != 0 {
        return Err(GenError::BadN(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = fixtures::k4();
    while g.n() < n {
        g = expand(&g, &mut rng);
    }
    assert!(
        is_three_connected(&g.to_simple()),
        "expansion broke 3-connectivity"
    );
    Ok(g)
}

fn triangle_count(g: &PlanarGraph) -> usize {
    let s = g.to_simple();
    let mut count = 0;
    for (u, v) in s.edges() {
        count += s
            .neighbors(u)
            .filter(|&w| w > v && s.has_edge(v, w))
            .count();
    }
    count
}

/// Like `random_cubic_planar`, but each expansion is chosen among those
/// minimizing the resulting triangle count. Reaches a triangle-free graph
/// for n ≥ 8 (two adjacent edge picks are forced only while triangles
/// remain; non-adjacent picks never create one and picks on triangle edges
/// destroy them).
pub fn random_cubic_planar_steered(n: usize, seed: u64) -> Result<PlanarGraph, GenError> {
    if n < 4 || n % 2 != 0 {
        return Err(GenError::BadN(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = fixtures::k4();
    while g.n() < n {
        let faces = g.faces();
        let mut best: Vec<PlanarGraph> = Vec::new();
        let mut best_count = usize::MAX;
        for (fi, f) in faces.iter().enumerate() {
            let len = f.len();
            for i in 0..len {
                for j in i + 1..len {
                    let h = expand_at(&g, &faces, fi, i, j);
                    let c = triangle_count(&h);
                    if c < best_count {
                        best_count = c;
                        best.clear();
                    }
                    if c == best_count {
                        best.push(h);
                    }
                }
            }
        }
        g = best.swap_remove(rng.random_range(0..best.len()));
    }
    assert!(
        is_three_connected(&g.to_simple()),
        "expansion broke 3-connectivity"
    );
    Ok(g)
}

/// Structural facts recorded for each corpus member.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct CorpusMeta {
    pub n: usize,
    pub triangle_free: bool,
    pub three_connected: bool,
    pub cyclically_4_edge_connected: Option<bool>,
    /// Face lengths of the lightest adjacent face pair, when one exists.
    pub light_pair: Option<(usize, usize)>,
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub label: String,
    pub graph: PlanarGraph,
    pub meta: CorpusMeta,
}

#[derive(Debug, Clone)]
pub struct CorpusSpec {
    /// Vertex counts to generate at (each must be even, ≥ 4).
    pub sizes: Vec<usize>,
    /// Graphs per size.
    pub count: usize,
    pub seed: u64,
    /// Also include the composite hosts built from the subdivided prism.
    pub include_composites: bool,
}

fn meta_for(g: &PlanarGraph) -> CorpusMeta {
    let simple = g.to_simple();
    CorpusMeta {
        n: g.n(),
        triangle_free: !has_triangle(&simple),
        three_connected: is_three_connected(&simple),
        cyclically_4_edge_connected: cyclically_4_edge_connected(&simple).ok(),
        light_pair: light_face_pair(g).ok().map(|p| (p.f1.len(), p.f2.len())),
    }
}

/// A reproducible labeled corpus: `count` pseudorandom 3-connected cubic
/// planar graphs per size — alternating free expansions (`rc` labels) with
/// triangle-minimizing ones (`tf` labels) — each with structural metadata,
/// plus the tight composite host when requested.
pub fn corpus(spec: &CorpusSpec) -> Result<Vec<CorpusEntry>, GenError> {
    let mut out = Vec::new();
    for &n in &spec.sizes {
        for c in 0..spec.count {
            let member_seed = spec
                .seed
                .wrapping_mul(0x9e37_79b9_7f4a_7c15)
                .wrapping_add(((n as u64) << 32) | c as u64);
            let (label, g) = if c % 2 == 0 {
                (format!("rc{n}-{c}"), random_cubic_planar(n, member_seed)?)
            } else {
                (format!("tf{n}-{c}"), random_cubic_planar_steered(n, member_seed)?)
            };
            out.push(CorpusEntry {
                label,
                meta: meta_for(&g),
                graph: g,
            });
        }
    }
    if spec.include_composites {
        let g = wegner_tight();
        out.push(CorpusEntry {
            label: "tight-14".into(),
            meta: meta_for(&g),
            graph: g,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    #[test]
    fn gadget_matches_reference() {
        let g = prism_gadget();
        assert_eq!(g.rotations(), fixtures::prism_gadget().rotations());
        let mut degs: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
        degs.sort_unstable();
        assert_eq!(degs, vec![2, 3, 3, 3, 3, 3, 3]);
        assert_eq!(g.edges().len(), 10);
        let sq = g.square();
        assert_eq!(sq.edge_count(), 21);
        let mut lens: Vec<usize> = g.faces().iter().map(|f| f.len()).collect();
        lens.sort_unstable();
        assert_eq!(lens, vec![3, 3, 4, 5, 5]);
    }

    /// Edge-preserving vertex bijection between two graphs on equally many
    /// vertices, by exhaustive search.
    fn isomorphic(g: &PlanarGraph, h: &PlanarGraph) -> bool {
        if g.n() != h.n() {
            return false;
        }
        let ge: BTreeSet<(Vertex, Vertex)> = g.edges().into_iter().collect();
        let he: BTreeSet<(Vertex, Vertex)> = h.edges().into_iter().collect();
        if ge.len() != he.len() {
            return false;
        }
        fn go(
            perm: &mut Vec<Vertex>,
            used: &mut Vec<bool>,
            g: &PlanarGraph,
            he: &BTreeSet<(Vertex, Vertex)>,
        ) -> bool {
            let v = perm.len();
            if v == g.n() {
                return true;
            }
            'cand: for img in 0..g.n() {
                if used[img] {
                    continue;
                }
                for u in 0..v {
                    let adj = g.has_edge(u, v);
                    let (a, b) = (perm[u].min(img), perm[u].max(img));
                    if adj != he.contains(&(a, b)) {
                        continue 'cand;
                    }
                }
                perm.push(img);
                used[img] = true;
                if go(perm, used, g, he) {
                    return true;
                }
                perm.pop();
                used[img] = false;
            }
            false
        }
        go(&mut Vec::new(), &mut vec![false; g.n()], g, &he)
    }

    #[test]
    fn subdivision_choice_is_immaterial() {
        let prism = fixtures::prism();
        let triangle_edges: BTreeSet<(Vertex, Vertex)> = prism
            .faces()
            .iter()
            .filter(|f| f.len() == 3)
            .flat_map(|f| f.walk().iter().map(|&(u, v)| (u.min(v), u.max(v))))
            .collect();
        let choices: Vec<(Vertex, Vertex)> = prism
            .edges()
            .into_iter()
            .filter(|e| !triangle_edges.contains(e))
            .collect();
        assert_eq!(choices.len(), 3);
        let subdivided: Vec<PlanarGraph> = choices
            .iter()
            .map(|&(u, v)| prism.subdivide_edge(u, v).unwrap().0)
            .collect();
        for other in &subdivided[1..] {
            assert!(isomorphic(&subdivided[0], other));
        }
    }

    #[test]
    fn tight_matches_reference() {
        let g = wegner_tight();
        assert_eq!(g.rotations(), fixtures::tight_example().rotations());
        assert_eq!(g.n(), 14);
        assert!((0..14).all(|v| g.degree(v) == 3));
        assert_eq!(g.edges().len(), 21);
    }

    #[test]
    fn expansions_reach_requested_size() {
        assert_eq!(
            random_cubic_planar(4, 99).unwrap().rotations(),
            fixtures::k4().rotations()
        );
        for seed in [0, 1, 2] {
            let g = random_cubic_planar(12, seed).unwrap();
            assert_eq!(g.n(), 12);
            assert!((0..12).all(|v| g.degree(v) == 3));
            assert!(is_three_connected(&g.to_simple()));
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let a = random_cubic_planar(16, 42).unwrap();
        let b = random_cubic_planar(16, 42).unwrap();
        assert_eq!(a.rotations(), b.rotations());
    }

    #[test]
    fn rejects_bad_sizes() {
        assert_eq!(random_cubic_planar(7, 0), Err(GenError::BadN(7)));
        assert_eq!(random_cubic_planar(2, 0), Err(GenError::BadN(2)));
        assert!(matches!(
            corpus(&CorpusSpec {
                sizes: vec![8, 9],
                count: 1,
                seed: 0,
                include_composites: false,
            }),
            Err(GenError::BadN(9))
        ));
    }

    #[test]
    fn corpus_shape_and_metadata() {
        let spec = CorpusSpec {
            sizes: vec![8, 10],
            count: 3,
            seed: 7,
            include_composites: true,
        };
        let entries = corpus(&spec).unwrap();
        assert_eq!(entries.len(), 7);
        assert_eq!(entries[6].label, "tight-14");
        assert!(!entries[6].meta.three_connected, "the joining edge is a bridge");
        for e in &entries[..6] {
            assert!(e.meta.three_connected);
            let (k1, k2) = e.meta.light_pair.expect("cubic 3-connected planar");
            assert!(k1 + k2 <= 11, "{}: {k1}+{k2}", e.label);
        }
        let again = corpus(&spec).unwrap();
        for (x, y) in entries.iter().zip(&again) {
            assert_eq!(x.graph.rotations(), y.graph.rotations());
            assert_eq!(x.meta, y.meta);
        }
    }

    #[test]
    fn tight_square_needs_seven_colors() {
        let sq = wegner_tight().square();
        assert!(oracle::k_color(&sq, 6).is_none());
        assert!(oracle::k_color(&sq, 7).is_some());
    }
}
