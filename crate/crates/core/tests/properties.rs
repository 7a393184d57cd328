//! Randomized structural properties of the generator, the embedding, the
//! text format, and the coloring pipeline.

use proptest::prelude::*;
use wegner7::generators::random_cubic_planar;
use wegner7::graph;
use wegner7::io::{parse_rot, write_rot};
use wegner7::solver::{kempe_swap, seven_color, verify_square_coloring};

/// Even vertex counts the expansion generator accepts, paired with a seed.
fn cubic_instance() -> impl Strategy<Value = (usize, u64)> {
    ((2usize..=7), any::<u64>()).prop_map(|(half, seed)| (2 * half, seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Every generated embedding satisfies the face-count identities of a
    /// connected planar graph: face lengths sum to 2E, and V - E + F = 2.
    #[test]
    fn generated_embeddings_satisfy_euler((n, seed) in cubic_instance()) {
        let g = random_cubic_planar(n, seed).unwrap();
        let faces = g.faces();
        let walk_total: usize = faces.iter().map(|f| f.walk().len()).sum();
        prop_assert_eq!(walk_total, 2 * g.edge_count());
        prop_assert_eq!(g.n() + faces.len(), g.edge_count() + 2);
    }

    /// Writing a graph to text and parsing it back reproduces the rotation
    /// system exactly.
    #[test]
    fn rot_text_round_trips((n, seed) in cubic_instance()) {
        let g = random_cubic_planar(n, seed).unwrap();
        let back = parse_rot(&write_rot(&g)).unwrap();
        prop_assert_eq!(back.rotations(), g.rotations());
    }

    /// A facial bend reads as the opposite turn when traversed backwards.
    #[test]
    fn turns_flip_under_reversal((n, seed) in cubic_instance()) {
        let g = random_cubic_planar(n, seed).unwrap();
        for v in 0..g.n() {
            let rot = g.rotation(v).to_vec();
            for (i, &u) in rot.iter().enumerate() {
                let w = rot[(i + 1) % rot.len()];
                if u == w {
                    continue;
                }
                let forward = g.turn_direction(u, v, w).unwrap();
                let backward = g.turn_direction(w, v, u).unwrap();
                prop_assert_eq!(forward, backward.opposite());
            }
        }
    }

    /// Subdividing any edge and smoothing the new vertex is the identity on
    /// the embedding.
    #[test]
    fn smoothing_inverts_subdivision((n, seed) in cubic_instance(), pick in any::<usize>()) {
        let g = random_cubic_planar(n, seed).unwrap();
        let edges = g.edges();
        let (u, v) = edges[pick % edges.len()];
        let (sub, mid) = g.subdivide_edge(u, v).unwrap();
        let (back, old_of_new) = sub.smooth_vertex(mid).unwrap();
        prop_assert_eq!(back.rotations(), g.rotations());
        // The relabeling must be the identity: mid was the last vertex.
        prop_assert_eq!(old_of_new, (0..g.n()).collect::<Vec<_>>());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// The pipeline colors every generated instance with at most 7 colors,
    /// verified against the square, and a random recoloring swap applied
    /// twice restores the original coloring.
    #[test]
    fn pipeline_colors_and_swaps_invert(
        (n, seed) in cubic_instance(),
        start_pick in any::<usize>(),
        other in 1u8..=7,
    ) {
        let g = random_cubic_planar(n, seed).unwrap();
        let out = seven_color(&g).unwrap();
        prop_assert!(verify_square_coloring(&g, &out.coloring));
        prop_assert!(out.coloring.colors_used().len() <= 7);

        let sq = graph::square(&g.to_simple());
        let start = start_pick % g.n();
        let own = out.coloring.get(start).unwrap();
        let swapped = kempe_swap(&out.coloring, &sq, start, own, other).unwrap();
        for (a, b) in sq.edges() {
            prop_assert_ne!(swapped.get(a), swapped.get(b));
        }
        let back = kempe_swap(&swapped, &sq, start, own, other).unwrap();
        prop_assert_eq!(&back, &out.coloring);
    }
}
