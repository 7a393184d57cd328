//! Independent exact reference implementations used to cross-check the main
//! algorithms: chromatic numbers by branch and bound, complete k-coloring
//! search, exhaustive cycle enumeration, and brute-force decomposition
//! search.

use crate::graph::{CycleRef, PlanarGraph, SimpleGraph, Vertex};
use crate::precolor::{
    self, BoundarySpec, Mark, PrecolorError, RBColoring,
};
use std::collections::BTreeSet;

/// A proper coloring of `g` with at most `k` colors (0-based), or None.
/// Complete search: DSATUR vertex order with new-color symmetry breaking.
pub fn k_color(g: &SimpleGraph, k: usize) -> Option<Vec<usize>> {
    let n = g.n();
    if n == 0 {
        return Some(vec![]);
    }
    if k == 0 {
        return None;
    }
    let mut colors = vec![usize::MAX; n];
    if assign(g, k, &mut colors, 0) {
        Some(colors)
    } else {
        None
    }
}

fn assign(g: &SimpleGraph, k: usize, colors: &mut Vec<usize>, done: usize) -> bool {
    let n = g.n();
    if done == n {
        return true;
    }
    // Most saturated uncolored vertex; ties by degree, then index.
    let mut best: Option<(usize, usize, Vertex)> = None;
    for v in 0..n {
        if colors[v] != usize::MAX {
            continue;
        }
        let sat = g
            .neighbors(v)
            .filter(|&u| colors[u] != usize::MAX)
            .map(|u| colors[u])
            .collect::<BTreeSet<_>>()
            .len();
        let key = (sat, g.degree(v), v);
        if best.is_none_or(|(s, d, w)| (sat, g.degree(v)) > (s, d) || ((sat, g.degree(v)) == (s, d) && v < w))
        {
            best = Some(key);
        }
    }
    let (_, _, v) = best.unwrap();
    let used: BTreeSet<usize> = g
        .neighbors(v)
        .filter(|&u| colors[u] != usize::MAX)
        .map(|u| colors[u])
        .collect();
    let max_used = colors.iter().filter(|&&c| c != usize::MAX).max().copied();
    let limit = k.min(max_used.map_or(1, |m| m + 2));
    for c in 0..limit {
        if used.contains(&c) {
            continue;
        }
        colors[v] = c;
        if assign(g, k, colors, done + 1) {
            return true;
        }
        colors[v] = usize::MAX;
    }
    false
}

/// Greedy DSATUR coloring; the number of colors is an upper bound for the
/// chromatic number.
pub fn greedy_coloring(g: &SimpleGraph) -> Vec<usize> {
    let n = g.n();
    let mut colors = vec![usize::MAX; n];
    for _ in 0..n {
        let mut best: Option<(usize, usize, Vertex)> = None;
        for v in 0..n {
            if colors[v] != usize::MAX {
                continue;
            }
            let sat = g
                .neighbors(v)
                .filter(|&u| colors[u] != usize::MAX)
                .map(|u| colors[u])
                .collect::<BTreeSet<_>>()
                .len();
            if best.is_none_or(|(s, d, _)| (sat, g.degree(v)) > (s, d)) {
                best = Some((sat, g.degree(v), v));
            }
        }
        let (_, _, v) = best.unwrap();
        let used: BTreeSet<usize> = g
            .neighbors(v)
            .filter(|&u| colors[u] != usize::MAX)
            .map(|u| colors[u])
            .collect();
        colors[v] = (0..).find(|c| !used.contains(c)).unwrap();
    }
    colors
}

/// A large clique found greedily from each start vertex; its size is a lower
/// bound for the chromatic number.
pub fn greedy_clique(g: &SimpleGraph) -> Vec<Vertex> {
    let n = g.n();
    let mut order: Vec<Vertex> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut best: Vec<Vertex> = Vec::new();
    for &start in &order {
        let mut clique = vec![start];
        for &v in &order {
            if v != start && clique.iter().all(|&u| g.has_edge(u, v)) {
                clique.push(v);
            }
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best
}

/// The exact chromatic number, by trying increasing k between a greedy
/// clique lower bound and a greedy coloring upper bound.
pub fn chromatic_number(g: &SimpleGraph) -> usize {
    let n = g.n();
    if n == 0 {
        return 0;
    }
    if g.edge_count() == 0 {
        return 1;
    }
    let lb = greedy_clique(g).len().max(2);
    let ub = greedy_coloring(g).iter().max().unwrap() + 1;
    for k in lb..ub {
        if k_color(g, k).is_some() {
            return k;
        }
    }
    ub
}

/// All simple cycles of length at most `max_len`, each rooted at its
/// smallest vertex and traversed in a canonical direction.
pub fn all_cycles(g: &SimpleGraph, max_len: usize) -> Vec<CycleRef> {
    let n = g.n();
    let mut out = Vec::new();
    let mut on_path = vec![false; n];
    for root in 0..n {
        let mut path = vec![root];
        on_path[root] = true;
        rooted_cycles(g, root, max_len, &mut path, &mut on_path, &mut out);
        on_path[root] = false;
    }
    out
}

fn rooted_cycles(
    g: &SimpleGraph,
    root: Vertex,
    max_len: usize,
    path: &mut Vec<Vertex>,
    on_path: &mut Vec<bool>,
    out: &mut Vec<CycleRef>,
) {
    let last = *path.last().unwrap();
    for w in g.neighbors(last).collect::<Vec<_>>() {
        if w == root && path.len() >= 3 && path[1] < last {
            out.push(CycleRef::new(path.clone()));
        } else if w > root && !on_path[w] && path.len() < max_len {
            path.push(w);
            on_path[w] = true;
            rooted_cycles(g, root, max_len, path, on_path, out);
            on_path[w] = false;
            path.pop();
        }
    }
}

/// The count-based characterization of a dangerous cycle: length 1 mod 3
/// with exactly one non-blue vertex, or length 2 mod 3 with exactly two.
pub fn dangerous_by_count(rb: &RBColoring, c: &CycleRef) -> bool {
    let len = c.len();
    let non_blue = c
        .vertices()
        .iter()
        .filter(|&&v| rb.get(v) != Mark::Blue)
        .count();
    (len % 3 == 1 && non_blue == 1) || (len % 3 == 2 && non_blue == 2)
}

/// Whether a total marking is an acceptable decomposition: every red facial
/// 4-path (and forbidden-turn 3-path) is absent and the blue square graph is
/// 3-colorable.
pub fn decomposition_valid(g: &PlanarGraph, spec: &BoundarySpec, rb: &RBColoring) -> bool {
    rb.is_total()
        && precolor::red_facial_4paths(g, rb, spec).is_empty()
        && k_color(&precolor::blue_square_graph(g, rb), 3).is_some()
}

/// Brute-force search over every red/blue completion of the derived
/// precoloring (after the r0 preassignment). True iff some completion is an
/// acceptable decomposition. Limited to 20 free vertices.
pub fn exists_decomposition(
    g: &PlanarGraph,
    spec: &BoundarySpec,
) -> Result<bool, PrecolorError> {
    let initial = precolor::derive_precoloring(g, spec)?;
    let initial = precolor::r0_red_preassignment(g, spec, initial);
    let free: Vec<Vertex> = (0..g.n())
        .filter(|&v| initial.get(v) == Mark::Uncolored)
        .collect();
    assert!(
        free.len() <= 20,
        "brute-force decomposition limited to 20 free vertices, got {}",
        free.len()
    );
    for mask in 0u32..(1u32 << free.len()) {
        let mut rb = initial.clone();
        for (i, &v) in free.iter().enumerate() {
            let m = if mask >> i & 1 == 1 {
                Mark::Blue
            } else {
                Mark::Red
            };
            rb.set(v, m);
        }
        if decomposition_valid(g, spec, &rb) {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::precolor::{is_dangerous_cycle, R0Kind};

    fn cycle(n: usize) -> SimpleGraph {
        SimpleGraph::from_edges(n, &(0..n).map(|v| (v, (v + 1) % n)).collect::<Vec<_>>())
    }

    fn petersen() -> SimpleGraph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((5 + i, 5 + (i + 2) % 5));
            e.push((i, 5 + i));
        }
        SimpleGraph::from_edges(10, &e)
    }

    #[test]
    fn chromatic_numbers_of_known_graphs() {
        assert_eq!(chromatic_number(&SimpleGraph::new(0)), 0);
        assert_eq!(chromatic_number(&SimpleGraph::new(5)), 1);
        assert_eq!(chromatic_number(&cycle(4)), 2);
        assert_eq!(chromatic_number(&cycle(5)), 3);
        assert_eq!(chromatic_number(&petersen()), 3);
        assert_eq!(chromatic_number(&fixtures::k4().to_simple()), 4);
        assert_eq!(chromatic_number(&fixtures::cube().to_simple()), 2);
        assert_eq!(chromatic_number(&fixtures::prism_gadget().square()), 7);
    }

    #[test]
    fn k_color_boundaries() {
        let c5 = cycle(5);
        assert!(k_color(&c5, 2).is_none());
        let coloring = k_color(&c5, 3).unwrap();
        for (u, v) in c5.edges() {
            assert_ne!(coloring[u], coloring[v]);
        }
        assert!(k_color(&petersen(), 2).is_none());
        assert!(k_color(&SimpleGraph::new(3), 0).is_none());
        assert!(k_color(&SimpleGraph::new(0), 0).is_some());
    }

    #[test]
    fn cycle_counts_match_per_edge_enumeration() {
        for g in [
            fixtures::k4(),
            fixtures::prism(),
            fixtures::prism_gadget(),
            fixtures::cube(),
        ] {
            let rooted: BTreeSet<CycleRef> =
                all_cycles(&g.to_simple(), 12).into_iter().collect();
            let edged: BTreeSet<CycleRef> =
                precolor::cycles_up_to(&g, 12).into_iter().collect();
            assert_eq!(rooted, edged);
        }
    }

    #[test]
    fn frozen_cycle_counts() {
        let by_len = |g: &SimpleGraph| {
            let mut m = std::collections::BTreeMap::new();
            for c in all_cycles(g, 12) {
                *m.entry(c.len()).or_insert(0usize) += 1;
            }
            m
        };
        assert_eq!(by_len(&fixtures::prism().to_simple()), [(3, 2), (4, 3), (5, 6), (6, 3)].into());
        assert_eq!(
            by_len(&fixtures::prism_gadget().to_simple()),
            [(3, 2), (4, 1), (5, 4), (6, 5), (7, 2)].into()
        );
        assert_eq!(by_len(&fixtures::k4().to_simple()), [(3, 4), (4, 3)].into());
    }

    #[test]
    fn dangerous_characterization_matches_definition() {
        for n in [4usize, 5, 7] {
            let rot: Vec<Vec<Vertex>> = (0..n)
                .map(|v| vec![(v + 1) % n, (v + n - 1) % n])
                .collect();
            let g = PlanarGraph::from_rotation(rot).unwrap();
            let c = CycleRef::new((0..n).collect());
            for code in 0..3usize.pow(n as u32) {
                let mut rb = RBColoring::uncolored(n);
                let mut x = code;
                for v in 0..n {
                    rb.set(v, [Mark::Red, Mark::Blue, Mark::Uncolored][x % 3]);
                    x /= 3;
                }
                assert_eq!(
                    is_dangerous_cycle(&g, &rb, &c),
                    dangerous_by_count(&rb, &c),
                    "n={n} code={code}"
                );
            }
        }
    }

    #[test]
    fn gadget_boundary_has_decomposition() {
        let g = fixtures::prism_gadget();
        let spec = BoundarySpec::all_red(vec![1, 0, 6, 3, 4], 1, R0Kind::FourForbidden);
        assert!(exists_decomposition(&g, &spec).unwrap());
    }

    /// Outer 10-cycle with an inner 5-cycle spoked to 0, 2, 4, 6, 8. Both
    /// completions of the one free inner vertex fail: blue gives an all-blue
    /// 5-cycle, red leaves the other four inner vertices pairwise close.
    fn pentaring() -> PlanarGraph {
        PlanarGraph::from_rotation(vec![
            vec![9, 1, 10],
            vec![0, 2],
            vec![1, 3, 11],
            vec![2, 4],
            vec![3, 5, 12],
            vec![4, 6],
            vec![5, 7, 13],
            vec![6, 8],
            vec![7, 9, 14],
            vec![8, 0],
            vec![14, 0, 11],
            vec![10, 2, 12],
            vec![11, 4, 13],
            vec![12, 6, 14],
            vec![13, 8, 10],
        ])
        .unwrap()
    }

    #[test]
    fn pentaring_has_no_decomposition() {
        let g = pentaring();
        let outer = vec![0, 1, 2, 3, 4, 5, 6, 7, 8, 9];
        let spec = BoundarySpec::all_red(outer, 0, R0Kind::FourForbidden);
        assert!(!exists_decomposition(&g, &spec).unwrap());
    }

    #[test]
    fn ring_decomposition_forced_red() {
        // Outer 8-cycle, inner 4-cycle spoked at 0, 2, 4, 6: the one free
        // inner vertex must go red (blue would make the inner square a K4 in
        // the blue square graph).
        let g = PlanarGraph::from_rotation(vec![
            vec![7, 1, 8],
            vec![0, 2],
            vec![1, 3, 9],
            vec![2, 4],
            vec![3, 5, 10],
            vec![4, 6],
            vec![5, 7, 11],
            vec![6, 0],
            vec![11, 0, 9],
            vec![8, 2, 10],
            vec![9, 4, 11],
            vec![10, 6, 8],
        ])
        .unwrap();
        let spec = BoundarySpec::all_red(
            vec![0, 1, 2, 3, 4, 5, 6, 7],
            0,
            R0Kind::FourForbidden,
        );
        assert!(exists_decomposition(&g, &spec).unwrap());
        let initial = precolor::derive_precoloring(&g, &spec).unwrap();
        let mut all_blue = initial.clone();
        all_blue.set(8, Mark::Blue);
        assert!(!decomposition_valid(&g, &spec, &all_blue));
        let mut red8 = initial;
        red8.set(8, Mark::Red);
        assert!(decomposition_valid(&g, &spec, &red8));
    }
}
