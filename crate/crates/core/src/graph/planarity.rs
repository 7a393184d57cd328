//! Planarity testing for abstract graphs by incremental face embedding
//! (Demoucron–Malgrange–Pertuiset) over biconnected blocks.

use super::SimpleGraph;
use std::collections::{BTreeSet, HashSet};

/// True iff the graph has a planar embedding. Works blockwise: a graph is
/// planar exactly when each of its biconnected blocks is.
pub fn is_planar(g: &SimpleGraph) -> bool {
    blocks(g).into_iter().all(|b| block_is_planar(&b))
}

/// Biconnected blocks as edge lists.
fn blocks(g: &SimpleGraph) -> Vec<Vec<(usize, usize)>> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0usize;
    let mut estack: Vec<(usize, usize)> = Vec::new();
    let mut out = Vec::new();
    // Iterative DFS: (vertex, parent, neighbor cursor).
    let mut stack: Vec<(usize, usize, Vec<usize>, usize)> = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        stack.push((root, usize::MAX, g.neighbors(root).collect(), 0));
        while let Some(&mut (v, parent, ref nbrs, ref mut cursor)) = stack.last_mut() {
            if *cursor < nbrs.len() {
                let u = nbrs[*cursor];
                *cursor += 1;
                if disc[u] == usize::MAX {
                    estack.push((v, u));
                    disc[u] = time;
                    low[u] = time;
                    time += 1;
                    stack.push((u, v, g.neighbors(u).collect(), 0));
                } else if u != parent && disc[u] < disc[v] {
                    estack.push((v, u));
                    low[v] = low[v].min(disc[u]);
                }
            } else {
                stack.pop();
                if let Some(&mut (p, _, _, _)) = stack.last_mut() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut block = Vec::new();
                        while let Some(&e) = estack.last() {
                            if disc[e.0] >= disc[v] || e == (p, v) {
                                block.push(e);
                                estack.pop();
                                if e == (p, v) {
                                    break;
                                }
                            } else {
                                break;
                            }
                        }
                        if !block.is_empty() {
                            out.push(block);
                        }
                    }
                }
            }
        }
    }
    out
}

fn block_is_planar(block_edges: &[(usize, usize)]) -> bool {
    let mut verts: Vec<usize> = block_edges
        .iter()
        .flat_map(|&(u, v)| [u, v])
        .collect();
    verts.sort_unstable();
    verts.dedup();
    let n = verts.len();
    let m = block_edges.len();
    if m <= 2 || n <= 3 {
        return true;
    }
    if m > 3 * n - 6 {
        return false;
    }
    let index: std::collections::HashMap<usize, usize> =
        verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut g = SimpleGraph::new(n);
    for &(u, v) in block_edges {
        g.add_edge(index[&u], index[&v]);
    }
    dmp(&g)
}

/// Demoucron–Malgrange–Pertuiset on a biconnected graph.
fn dmp(g: &SimpleGraph) -> bool {
    let n = g.n();
    let start_cycle = find_cycle(g);
    let mut in_h = vec![false; n];
    let mut h_edges: HashSet<(usize, usize)> = HashSet::new();
    for &v in &start_cycle {
        in_h[v] = true;
    }
    let k = start_cycle.len();
    for i in 0..k {
        let (a, b) = (start_cycle[i], start_cycle[(i + 1) % k]);
        h_edges.insert(key(a, b));
    }
    let mut faces: Vec<Vec<usize>> = vec![
        start_cycle.clone(),
        start_cycle.iter().rev().copied().collect(),
    ];

    loop {
        // Fragments: chords between embedded vertices, and bridges hanging
        // off connected components of the unembedded part.
        struct Fragment {
            attachments: BTreeSet<usize>,
            comp: Vec<usize>, // empty for a chord
            chord: Option<(usize, usize)>,
        }
        let mut fragments: Vec<Fragment> = Vec::new();
        for (u, v) in g.edges() {
            if in_h[u] && in_h[v] && !h_edges.contains(&key(u, v)) {
                fragments.push(Fragment {
                    attachments: [u, v].into_iter().collect(),
                    comp: Vec::new(),
                    chord: Some((u, v)),
                });
            }
        }
        let mut seen = vec![false; n];
        for s in 0..n {
            if in_h[s] || seen[s] {
                continue;
            }
            let mut comp = vec![s];
            let mut attach = BTreeSet::new();
            seen[s] = true;
            let mut qi = 0;
            while qi < comp.len() {
                let v = comp[qi];
                qi += 1;
                for u in g.neighbors(v) {
                    if in_h[u] {
                        attach.insert(u);
                    } else if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                    }
                }
            }
            fragments.push(Fragment {
                attachments: attach,
                comp,
                chord: None,
            });
        }
        if fragments.is_empty() {
            return true;
        }

        let face_sets: Vec<HashSet<usize>> = faces
            .iter()
            .map(|f| f.iter().copied().collect())
            .collect();
        let mut best: Option<(usize, usize, usize)> = None; // (#admissible, frag, face)
        for (fi, frag) in fragments.iter().enumerate() {
            let mut count = 0;
            let mut first_face = usize::MAX;
            for (i, fs) in face_sets.iter().enumerate() {
                if frag.attachments.iter().all(|a| fs.contains(a)) {
                    count += 1;
                    if first_face == usize::MAX {
                        first_face = i;
                    }
                }
            }
            if count == 0 {
                return false;
            }
            if best.as_ref().is_none_or(|b| count < b.0) {
                best = Some((count, fi, first_face));
            }
        }
        let (_, fi, face_idx) = best.unwrap();
        let frag = &fragments[fi];

        // A path through the fragment between two attachment vertices.
        let path: Vec<usize> = if let Some((u, v)) = frag.chord {
            vec![u, v]
        } else {
            let mut iter = frag.attachments.iter();
            let a1 = *iter.next().unwrap();
            frag_path(g, &in_h, &frag.comp, a1, &frag.attachments)
        };

        // Split the host face along the path.
        let face = faces.swap_remove(face_idx);
        let (a1, a2) = (path[0], *path.last().unwrap());
        let i = face.iter().position(|&x| x == a1).unwrap();
        let j = face.iter().position(|&x| x == a2).unwrap();
        let len = face.len();
        let mut arc1 = Vec::new(); // a1 .. a2 along the face
        let mut t = i;
        loop {
            arc1.push(face[t]);
            if t == j {
                break;
            }
            t = (t + 1) % len;
        }
        let mut arc2 = Vec::new(); // a2 .. a1 along the face
        let mut t = j;
        loop {
            arc2.push(face[t]);
            if t == i {
                break;
            }
            t = (t + 1) % len;
        }
        let interior: Vec<usize> = path[1..path.len() - 1].to_vec();
        let mut f1 = arc1;
        f1.extend(interior.iter().rev());
        let mut f2 = arc2;
        f2.extend(interior.iter());
        faces.push(f1);
        faces.push(f2);

        for w in path.windows(2) {
            h_edges.insert(key(w[0], w[1]));
        }
        for &v in &interior {
            in_h[v] = true;
        }
    }
}

fn key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

/// Any cycle in a graph of minimum degree >= 2.
fn find_cycle(g: &SimpleGraph) -> Vec<usize> {
    let n = g.n();
    let mut parent = vec![usize::MAX; n];
    let mut state = vec![0u8; n]; // 0 unseen, 1 on stack, 2 done
    let mut stack = vec![(0usize, usize::MAX)];
    while let Some((v, p)) = stack.pop() {
        if state[v] == 1 {
            state[v] = 2;
            continue;
        }
        if state[v] != 0 {
            continue;
        }
        state[v] = 1;
        parent[v] = p;
        stack.push((v, p)); // marker to close v
        for u in g.neighbors(v) {
            if u == p {
                continue;
            }
            if state[u] == 1 {
                // Back edge v -> u: walk parents from v to u.
                let mut cyc = vec![v];
                let mut x = v;
                while x != u {
                    x = parent[x];
                    cyc.push(x);
                }
                return cyc;
            }
            if state[u] == 0 {
                stack.push((u, v));
            }
        }
    }
    unreachable!("biconnected block with >= 3 edges contains a cycle");
}

/// BFS inside the fragment component from attachment `a1` to any other
/// attachment, intermediate vertices drawn from the component only.
fn frag_path(
    g: &SimpleGraph,
    in_h: &[bool],
    comp: &[usize],
    a1: usize,
    attachments: &BTreeSet<usize>,
) -> Vec<usize> {
    let n = g.n();
    let mut in_comp = vec![false; n];
    for &v in comp {
        in_comp[v] = true;
    }
    let mut prev = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    // Seed with component neighbors of a1.
    for u in g.neighbors(a1) {
        if in_comp[u] && prev[u] == usize::MAX {
            prev[u] = a1;
            queue.push_back(u);
        }
    }
    while let Some(v) = queue.pop_front() {
        for u in g.neighbors(v) {
            if in_comp[u] {
                if prev[u] == usize::MAX {
                    prev[u] = v;
                    queue.push_back(u);
                }
            } else if in_h[u] && u != a1 && attachments.contains(&u) {
                // Found the far endpoint; reconstruct.
                let mut path = vec![u, v];
                let mut x = v;
                while x != a1 {
                    x = prev[x];
                    path.push(x);
                }
                path.reverse();
                return path;
            }
        }
    }
    unreachable!("fragment with >= 2 attachments must connect them");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::square;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn complete(n: usize) -> SimpleGraph {
        let mut g = SimpleGraph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    fn complete_bipartite(a: usize, b: usize) -> SimpleGraph {
        let mut g = SimpleGraph::new(a + b);
        for u in 0..a {
            for v in 0..b {
                g.add_edge(u, a + v);
            }
        }
        g
    }

    fn cycle(n: usize) -> SimpleGraph {
        let mut g = SimpleGraph::new(n);
        for v in 0..n {
            g.add_edge(v, (v + 1) % n);
        }
        g
    }

    #[test]
    fn known_planar_graphs() {
        for g in [
            fixtures::k4().to_simple(),
            fixtures::prism().to_simple(),
            fixtures::prism_gadget().to_simple(),
            fixtures::tight_example().to_simple(),
            fixtures::cube().to_simple(),
            fixtures::dodecahedron().to_simple(),
        ] {
            assert!(is_planar(&g));
        }
        assert!(is_planar(&complete(4)));
        assert!(is_planar(&cycle(9)));
        assert!(is_planar(&square(&cycle(6))));
        assert!(is_planar(&SimpleGraph::new(0)));
        assert!(is_planar(&SimpleGraph::new(3)));
    }

    #[test]
    fn known_nonplanar_graphs() {
        assert!(!is_planar(&complete(5)));
        assert!(!is_planar(&complete(6)));
        assert!(!is_planar(&complete_bipartite(3, 3)));
        assert!(!is_planar(&square(&cycle(7))));
        assert!(!is_planar(&square(&fixtures::cube().to_simple())));
    }

    #[test]
    fn cut_vertices_are_handled_blockwise() {
        // Bowtie: two triangles sharing vertex 2.
        let bowtie = SimpleGraph::from_edges(
            5,
            &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)],
        );
        assert!(is_planar(&bowtie));
        // K5 with a pendant path attached.
        let mut g = complete(5);
        let mut h = SimpleGraph::new(7);
        for (u, v) in g.edges() {
            h.add_edge(u, v);
        }
        h.add_edge(4, 5);
        h.add_edge(5, 6);
        g = h;
        assert!(!is_planar(&g));
    }

    // Independent ground truth: a graph is planar iff it contains no
    // subdivision of K5 or K3,3.
    fn has_subdivision(g: &SimpleGraph, parts: &[usize], pairs: &[(usize, usize)]) -> bool {
        let n = g.n();
        let total: usize = parts.iter().sum();
        if n < total {
            return false;
        }
        let min_deg_needed = if parts.len() == 1 { 4 } else { 3 };
        let candidates: Vec<usize> =
            (0..n).filter(|&v| g.degree(v) >= min_deg_needed).collect();
        let mut chosen: Vec<usize> = Vec::new();
        choose_branch(g, &candidates, parts, pairs, &mut chosen)
    }

    fn choose_branch(
        g: &SimpleGraph,
        cands: &[usize],
        parts: &[usize],
        pairs: &[(usize, usize)],
        chosen: &mut Vec<usize>,
    ) -> bool {
        let total: usize = parts.iter().sum();
        if chosen.len() == total {
            let mut used = vec![false; g.n()];
            for &v in chosen.iter() {
                used[v] = true;
            }
            return pack_paths(g, chosen, pairs, &mut used);
        }
        // Within a part, keep choices ascending to kill symmetry.
        let part_start: usize = {
            let mut s = 0;
            for &p in parts {
                if chosen.len() < s + p {
                    break;
                }
                s += p;
            }
            s
        };
        let floor = if chosen.len() > part_start {
            chosen[chosen.len() - 1] + 1
        } else {
            0
        };
        for &v in cands {
            if v < floor || chosen.contains(&v) {
                continue;
            }
            chosen.push(v);
            if choose_branch(g, cands, parts, pairs, chosen) {
                chosen.pop();
                return true;
            }
            chosen.pop();
        }
        false
    }

    fn pack_paths(
        g: &SimpleGraph,
        branch: &[usize],
        pairs: &[(usize, usize)],
        used: &mut Vec<bool>,
    ) -> bool {
        let Some(&(ai, bi)) = pairs.first() else {
            return true;
        };
        let (a, b) = (branch[ai], branch[bi]);
        let mut path = vec![a];
        extend_path(g, branch, pairs, used, b, &mut path)
    }

    fn extend_path(
        g: &SimpleGraph,
        branch: &[usize],
        pairs: &[(usize, usize)],
        used: &mut Vec<bool>,
        target: usize,
        path: &mut Vec<usize>,
    ) -> bool {
        let cur = *path.last().unwrap();
        for v in g.neighbors(cur) {
            if v == target && path.len() >= 1 {
                // Mark interior and recurse on the remaining pairs.
                for &w in &path[1..] {
                    used[w] = true;
                }
                let ok = pack_paths(g, branch, &pairs[1..], used);
                for &w in &path[1..] {
                    used[w] = false;
                }
                if ok {
                    return true;
                }
            } else if !used[v] && !path.contains(&v) {
                path.push(v);
                if extend_path(g, branch, pairs, used, target, path) {
                    path.pop();
                    return true;
                }
                path.pop();
            }
        }
        false
    }

    fn kuratowski_free(g: &SimpleGraph) -> bool {
        let k5_pairs: Vec<(usize, usize)> = (0..5)
            .flat_map(|i| ((i + 1)..5).map(move |j| (i, j)))
            .collect();
        let k33_pairs: Vec<(usize, usize)> = (0..3)
            .flat_map(|i| (3..6).map(move |j| (i, j)))
            .collect();
        !has_subdivision(g, &[5], &k5_pairs) && !has_subdivision(g, &[3, 3], &k33_pairs)
    }

    #[test]
    fn matches_kuratowski_search_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(20210);
        let mut planar_seen = 0;
        let mut nonplanar_seen = 0;
        for trial in 0..60 {
            let n = 5 + (trial % 4); // 5..=8
            let p = [0.3, 0.5, 0.7][trial % 3];
            let mut g = SimpleGraph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.random::<f64>() < p {
                        g.add_edge(u, v);
                    }
                }
            }
            let fast = is_planar(&g);
            let slow = kuratowski_free(&g);
            assert_eq!(fast, slow, "disagreement on trial {trial}: {:?}", g.edges());
            if fast {
                planar_seen += 1;
            } else {
                nonplanar_seen += 1;
            }
        }
        assert!(planar_seen > 5 && nonplanar_seen > 5, "sweep not diverse");
    }
}
