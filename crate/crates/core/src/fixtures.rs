//! Small named graphs with fixed embeddings, shared by tests and examples.
//!
//! Each rotation system here is a frozen expected value: generators and
//! algorithms are tested against these, not the other way around.

use crate::graph::PlanarGraph;

/// K4 embedded with four triangular faces.
pub fn k4() -> PlanarGraph {
    PlanarGraph::from_rotation(vec![
        vec![1, 2, 3],
        vec![2, 0, 3],
        vec![3, 0, 1],
        vec![1, 0, 2],
    ])
    .unwrap()
}

/// The triangular prism: triangles 0-1-2 and 3-4-5, verticals i — i+3.
pub fn prism() -> PlanarGraph {
    PlanarGraph::from_rotation(vec![
        vec![3, 2, 1],
        vec![0, 2, 4],
        vec![5, 1, 0],
        vec![5, 0, 4],
        vec![3, 1, 5],
        vec![4, 2, 3],
    ])
    .unwrap()
}

/// The prism with its edge 0-3 subdivided by a new vertex 6. Its square is K7.
pub fn prism_gadget() -> PlanarGraph {
    PlanarGraph::from_rotation(vec![
        vec![6, 2, 1],
        vec![0, 2, 4],
        vec![5, 1, 0],
        vec![5, 6, 4],
        vec![3, 1, 5],
        vec![4, 2, 3],
        vec![0, 3],
    ])
    .unwrap()
}

/// Two copies of the 7-vertex gadget joined by an edge between their
/// degree-2 vertices: a cubic planar graph on 14 vertices whose square
/// needs exactly 7 colors.
pub fn tight_example() -> PlanarGraph {
    PlanarGraph::from_rotation(vec![
        vec![6, 2, 1],
        vec![0, 2, 4],
        vec![5, 1, 0],
        vec![5, 6, 4],
        vec![3, 1, 5],
        vec![4, 2, 3],
        vec![0, 3, 13],
        vec![13, 9, 8],
        vec![7, 9, 11],
        vec![12, 8, 7],
        vec![12, 13, 11],
        vec![10, 8, 12],
        vec![11, 9, 10],
        vec![7, 10, 6],
    ])
    .unwrap()
}

/// The cube: bottom square 0-1-2-3, top square 4-5-6-7, verticals i — i+4.
pub fn cube() -> PlanarGraph {
    PlanarGraph::from_rotation(vec![
        vec![1, 4, 3],
        vec![2, 5, 0],
        vec![1, 3, 6],
        vec![0, 7, 2],
        vec![5, 7, 0],
        vec![1, 6, 4],
        vec![5, 2, 7],
        vec![4, 6, 3],
    ])
    .unwrap()
}

/// The dodecahedron: 20 vertices, 12 pentagonal faces, cyclically
/// 4-edge-connected.
pub fn dodecahedron() -> PlanarGraph {
    PlanarGraph::from_rotation(vec![
        vec![1, 5, 4],
        vec![2, 6, 0],
        vec![1, 3, 7],
        vec![8, 2, 4],
        vec![0, 9, 3],
        vec![0, 10, 14],
        vec![1, 11, 10],
        vec![11, 2, 12],
        vec![12, 3, 13],
        vec![14, 13, 4],
        vec![6, 15, 5],
        vec![6, 7, 16],
        vec![7, 8, 17],
        vec![18, 8, 9],
        vec![5, 19, 9],
        vec![10, 16, 19],
        vec![11, 17, 15],
        vec![16, 12, 18],
        vec![19, 17, 13],
        vec![15, 18, 14],
    ])
    .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_valid_embeddings() {
        for (g, n, m) in [
            (k4(), 4, 6),
            (prism(), 6, 9),
            (prism_gadget(), 7, 10),
            (tight_example(), 14, 21),
            (cube(), 8, 12),
            (dodecahedron(), 20, 30),
        ] {
            assert_eq!(g.n(), n);
            assert_eq!(g.edge_count(), m);
        }
    }

    #[test]
    fn dodecahedron_faces_are_pentagons() {
        let faces = dodecahedron().faces();
        assert_eq!(faces.len(), 12);
        assert!(faces.iter().all(|f| f.len() == 5));
    }

    #[test]
    fn tight_example_is_cubic() {
        let g = tight_example();
        assert!((0..g.n()).all(|v| g.degree(v) == 3));
        let mut lens: Vec<usize> = g.faces().iter().map(|f| f.len()).collect();
        lens.sort_unstable();
        assert_eq!(lens, vec![3, 3, 3, 3, 4, 4, 5, 5, 12]);
    }
}
