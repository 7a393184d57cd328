//! Embedded graphs given by clockwise rotation systems, their faces, and
//! the structural queries the decomposition machinery needs.

pub mod planarity;

pub use planarity::is_planar;

use std::collections::BTreeSet;
use thiserror::Error;

/// Vertices are dense indices `0..n`.
pub type Vertex = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate neighbor {nbr} in rotation of vertex {vertex}")]
    DuplicateNeighbor { vertex: usize, nbr: usize },
    #[error("vertex {vertex} has degree {degree}, maximum supported is 3")]
    DegreeExceeded { vertex: usize, degree: usize },
    #[error("rotations are asymmetric: {u} lists {v} but {v} does not list {u}")]
    AsymmetricAdjacency { u: usize, v: usize },
    #[error("rotation system is not planar on the component of vertex {component}: V={vertices} E={edges} F={faces} violates Euler's formula")]
    EulerViolation { component: usize, vertices: usize, edges: usize, faces: usize },
    #[error("turn undefined at vertex {vertex}: degree {degree} < 3")]
    DegreeTooLow { vertex: usize, degree: usize },
    #[error("turn undefined: {u}-{v}-{w} is not a corner of the embedding")]
    NotFacial { u: usize, v: usize, w: usize },
    #[error("not a path: {0}")]
    NotAPath(String),
    #[error("graph is not cubic: vertex {vertex} has degree {degree}")]
    NotCubic { vertex: usize, degree: usize },
    #[error("no pair of adjacent faces with total length at most 11")]
    NoLightPair,
    #[error("no such edge: {0}-{1}")]
    NoSuchEdge(usize, usize),
}

/// Which way a facial path bends at its middle vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Turn {
    Left,
    Right,
}

impl Turn {
    pub fn opposite(self) -> Turn {
        match self {
            Turn::Left => Turn::Right,
            Turn::Right => Turn::Left,
        }
    }
}

/// One face of the embedding: its boundary walk as directed edge traversals,
/// clockwise by convention.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    walk: Vec<(Vertex, Vertex)>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.walk.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walk.is_empty()
    }

    /// Directed boundary traversals in walk order.
    pub fn walk(&self) -> &[(Vertex, Vertex)] {
        &self.walk
    }

    /// Boundary vertices in walk order (tails of the directed edges).
    pub fn vertices(&self) -> Vec<Vertex> {
        self.walk.iter().map(|&(u, _)| u).collect()
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.walk.iter().any(|&(u, _)| u == v)
    }

    pub fn contains_directed(&self, u: Vertex, v: Vertex) -> bool {
        self.walk.contains(&(u, v))
    }

    pub fn contains_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.contains_directed(u, v) || self.contains_directed(v, u)
    }

    /// True when the boundary walk visits no vertex twice, i.e. the face is
    /// bounded by a cycle.
    pub fn is_simple_cycle(&self) -> bool {
        if self.walk.len() < 3 {
            return false;
        }
        let mut seen = BTreeSet::new();
        self.walk.iter().all(|&(u, _)| seen.insert(u))
    }
}

/// A subcubic graph with a combinatorial embedding: for every vertex, the
/// clockwise cyclic order of its neighbors. Construction validates that the
/// rotation system describes a planar embedding (Euler's formula holds on
/// every component).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarGraph {
    rot: Vec<Vec<Vertex>>,
}

impl PlanarGraph {
    /// Validates and wraps a rotation system. Fails on out-of-range entries,
    /// self-loops, duplicate neighbors, degrees above 3, asymmetric adjacency,
    /// or a rotation system that is not planar.
    pub fn from_rotation(rot: Vec<Vec<Vertex>>) -> Result<Self, GraphError> {
        let n = rot.len();
        for (v, nbrs) in rot.iter().enumerate() {
            if nbrs.len() > 3 {
                return Err(GraphError::DegreeExceeded {
                    vertex: v,
                    degree: nbrs.len(),
                });
            }
            let mut seen = BTreeSet::new();
            for &u in nbrs {
                if u >= n {
                    return Err(GraphError::VertexOutOfRange(u));
                }
                if u == v {
                    return Err(GraphError::SelfLoop(v));
                }
                if !seen.insert(u) {
                    return Err(GraphError::DuplicateNeighbor { vertex: v, nbr: u });
                }
            }
        }
        for (v, nbrs) in rot.iter().enumerate() {
            for &u in nbrs {
                if !rot[u].contains(&v) {
                    return Err(GraphError::AsymmetricAdjacency { u: v, v: u });
                }
            }
        }
        let g = PlanarGraph { rot };
        g.check_euler()?;
        Ok(g)
    }

    fn check_euler(&self) -> Result<(), GraphError> {
        let n = self.n();
        let mut comp = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(s);
            comp[s] = id;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &u in &self.rot[v] {
                    if comp[u] == usize::MAX {
                        comp[u] = id;
                        stack.push(u);
                    }
                }
            }
        }
        let mut vcount = vec![0usize; reps.len()];
        let mut ecount2 = vec![0usize; reps.len()];
        for v in 0..n {
            vcount[comp[v]] += 1;
            ecount2[comp[v]] += self.rot[v].len();
        }
        let mut fcount = vec![0usize; reps.len()];
        for f in self.faces() {
            fcount[comp[f.walk[0].0]] += 1;
        }
        for (id, &rep) in reps.iter().enumerate() {
            let (vc, ec, fc) = (vcount[id], ecount2[id] / 2, fcount[id]);
            if ec == 0 {
                continue;
            }
            if vc + fc != ec + 2 {
                return Err(GraphError::EulerViolation {
                    component: rep,
                    vertices: vc,
                    edges: ec,
                    faces: fc,
                });
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.rot.len()
    }

    pub fn rotation(&self, v: Vertex) -> &[Vertex] {
        &self.rot[v]
    }

    pub fn rotations(&self) -> &[Vec<Vertex>] {
        &self.rot
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.rot[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.rot[u].contains(&v)
    }

    /// Undirected edges as (min, max) pairs in ascending order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for (v, nbrs) in self.rot.iter().enumerate() {
            for &u in nbrs {
                if v < u {
                    out.push((v, u));
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn edge_count(&self) -> usize {
        self.rot.iter().map(|nbrs| nbrs.len()).sum::<usize>() / 2
    }

    /// Clockwise successor of `u` in the rotation at `v`.
    pub fn rotation_successor(&self, v: Vertex, u: Vertex) -> Option<Vertex> {
        let nbrs = &self.rot[v];
        let i = nbrs.iter().position(|&x| x == u)?;
        Some(nbrs[(i + 1) % nbrs.len()])
    }

    /// Clockwise predecessor of `u` in the rotation at `v`.
    pub fn rotation_predecessor(&self, v: Vertex, u: Vertex) -> Option<Vertex> {
        let nbrs = &self.rot[v];
        let i = nbrs.iter().position(|&x| x == u)?;
        Some(nbrs[(i + nbrs.len() - 1) % nbrs.len()])
    }

    /// The directed edge that continues a face walk after traversing u -> v.
    pub fn next_in_face(&self, u: Vertex, v: Vertex) -> (Vertex, Vertex) {
        let w = self
            .rotation_successor(v, u)
            .expect("next_in_face on a non-edge");
        (v, w)
    }

    /// All faces of the embedding, traced deterministically: orbits of the
    /// face-successor map, discovered in order of their smallest directed edge.
    pub fn faces(&self) -> Vec<Face> {
        let n = self.n();
        let mut visited = vec![[false; 3]; n];
        let mut out = Vec::new();
        for u in 0..n {
            for s in 0..self.rot[u].len() {
                if visited[u][s] {
                    continue;
                }
                let mut walk = Vec::new();
                let (mut a, mut b) = (u, self.rot[u][s]);
                loop {
                    let slot = self.rot[a].iter().position(|&x| x == b).unwrap();
                    if visited[a][slot] {
                        break;
                    }
                    visited[a][slot] = true;
                    walk.push((a, b));
                    let (na, nb) = self.next_in_face(a, b);
                    a = na;
                    b = nb;
                }
                out.push(Face { walk });
            }
        }
        out
    }

    /// Whether the facial path u-v-w bends right or left at v.
    ///
    /// Right means w immediately follows u clockwise around v, so the walk
    /// u -> v -> w stays on the face to its right; Left is the mirror image.
    /// Defined only at degree-3 vertices, where exactly one of the two holds.
    pub fn turn_direction(&self, u: Vertex, v: Vertex, w: Vertex) -> Result<Turn, GraphError> {
        for x in [u, v, w] {
            if x >= self.n() {
                return Err(GraphError::VertexOutOfRange(x));
            }
        }
        let deg = self.degree(v);
        if deg < 3 {
            return Err(GraphError::DegreeTooLow { vertex: v, degree: deg });
        }
        if u == w || !self.has_edge(v, u) || !self.has_edge(v, w) {
            return Err(GraphError::NotFacial { u, v, w });
        }
        if self.rotation_successor(v, u) == Some(w) {
            Ok(Turn::Right)
        } else {
            Ok(Turn::Left)
        }
    }

    /// True iff the path lies contiguously on the boundary walk of some face,
    /// in either direction. A single vertex or a single edge is always facial.
    pub fn is_facial_path(&self, path: &[Vertex]) -> Result<bool, GraphError> {
        if path.is_empty() {
            return Err(GraphError::NotAPath("empty".into()));
        }
        for &v in path {
            if v >= self.n() {
                return Err(GraphError::VertexOutOfRange(v));
            }
        }
        let mut seen = BTreeSet::new();
        if !path.iter().all(|&v| seen.insert(v)) {
            return Err(GraphError::NotAPath("repeated vertex".into()));
        }
        for w in path.windows(2) {
            if !self.has_edge(w[0], w[1]) {
                return Err(GraphError::NotAPath(format!(
                    "{} and {} are not adjacent",
                    w[0], w[1]
                )));
            }
        }
        if path.len() <= 2 {
            return Ok(true);
        }
        let follows = |seq: &[Vertex]| -> bool {
            let (mut a, mut b) = (seq[0], seq[1]);
            for k in 2..seq.len() {
                let (na, nb) = self.next_in_face(a, b);
                if (na, nb) != (seq[k - 1], seq[k]) {
                    return false;
                }
                a = na;
                b = nb;
            }
            true
        };
        let rev: Vec<Vertex> = path.iter().rev().copied().collect();
        Ok(follows(path) || follows(&rev))
    }

    /// The same graph with one edge removed from the embedding (rotation
    /// orders of the endpoints otherwise preserved).
    pub fn delete_edge(&self, u: Vertex, v: Vertex) -> Result<PlanarGraph, GraphError> {
        if !self.has_edge(u, v) {
            return Err(GraphError::NoSuchEdge(u, v));
        }
        let mut rot = self.rot.clone();
        rot[u].retain(|&x| x != v);
        rot[v].retain(|&x| x != u);
        PlanarGraph::from_rotation(rot)
    }

    /// Subdivides edge u-v: the new vertex takes index n, replacing v in the
    /// rotation at u and u in the rotation at v. Returns the graph and the
    /// new vertex.
    pub fn subdivide_edge(&self, u: Vertex, v: Vertex) -> Result<(PlanarGraph, Vertex), GraphError> {
        if !self.has_edge(u, v) {
            return Err(GraphError::NoSuchEdge(u, v));
        }
        let mut rot = self.rot.clone();
        let m = rot.len();
        for x in rot[u].iter_mut() {
            if *x == v {
                *x = m;
            }
        }
        for x in rot[v].iter_mut() {
            if *x == u {
                *x = m;
            }
        }
        rot.push(vec![u.min(v), u.max(v)]);
        Ok((PlanarGraph::from_rotation(rot)?, m))
    }

    /// The embedded subgraph on the kept vertices, renumbered densely.
    /// Returns the graph and the old index of each new vertex.
    pub fn induced_embedded(
        &self,
        keep: &[bool],
    ) -> Result<(PlanarGraph, Vec<Vertex>), GraphError> {
        assert_eq!(keep.len(), self.n());
        let old_of_new: Vec<Vertex> = (0..self.n()).filter(|&v| keep[v]).collect();
        let mut new_of_old = vec![usize::MAX; self.n()];
        for (new, &old) in old_of_new.iter().enumerate() {
            new_of_old[old] = new;
        }
        let rot: Vec<Vec<Vertex>> = old_of_new
            .iter()
            .map(|&old| {
                self.rot[old]
                    .iter()
                    .filter(|&&u| keep[u])
                    .map(|&u| new_of_old[u])
                    .collect()
            })
            .collect();
        Ok((PlanarGraph::from_rotation(rot)?, old_of_new))
    }

    /// The embedded graph without vertex `v`, renumbered densely. Returns the
    /// graph and the old index of each new vertex.
    pub fn delete_vertex(&self, v: Vertex) -> Result<(PlanarGraph, Vec<Vertex>), GraphError> {
        let keep: Vec<bool> = (0..self.n()).map(|u| u != v).collect();
        self.induced_embedded(&keep)
    }

    /// Replaces a degree-2 vertex `v` by an edge between its two neighbors
    /// (the inverse of subdividing), keeping the embedding. Requires the
    /// neighbors to be non-adjacent. Returns the graph and the old index of
    /// each new vertex.
    pub fn smooth_vertex(&self, v: Vertex) -> Result<(PlanarGraph, Vec<Vertex>), GraphError> {
        if v >= self.n() {
            return Err(GraphError::VertexOutOfRange(v));
        }
        let nbrs = self.rotation(v);
        let [x, y] = nbrs else {
            return Err(GraphError::NotAPath(format!(
                "vertex {v} has degree {}, smoothing needs 2",
                nbrs.len()
            )));
        };
        let (x, y) = (*x, *y);
        if self.has_edge(x, y) {
            return Err(GraphError::DuplicateNeighbor { vertex: x, nbr: y });
        }
        let mut rot: Vec<Vec<Vertex>> = Vec::with_capacity(self.n() - 1);
        let mut old_of_new = Vec::with_capacity(self.n() - 1);
        let renum = |u: Vertex| if u > v { u - 1 } else { u };
        for u in 0..self.n() {
            if u == v {
                continue;
            }
            old_of_new.push(u);
            let row = self.rotation(u).iter().map(|&w| {
                if w == v {
                    renum(if u == x { y } else { x })
                } else {
                    renum(w)
                }
            });
            rot.push(row.collect());
        }
        let g = PlanarGraph::from_rotation(rot)?;
        Ok((g, old_of_new))
    }

    /// Forgets the embedding.
    pub fn to_simple(&self) -> SimpleGraph {
        let mut g = SimpleGraph::new(self.n());
        for (v, nbrs) in self.rot.iter().enumerate() {
            for &u in nbrs {
                g.add_edge(v, u);
            }
        }
        g
    }

    /// The square: original edges plus an edge between every pair of vertices
    /// at distance exactly 2.
    pub fn square(&self) -> SimpleGraph {
        square(&self.to_simple())
    }
}

/// The square of an abstract graph.
pub fn square(g: &SimpleGraph) -> SimpleGraph {
    let mut sq = g.clone();
    for v in 0..g.n() {
        let nbrs: Vec<Vertex> = g.neighbors(v).collect();
        for i in 0..nbrs.len() {
            for j in i + 1..nbrs.len() {
                sq.add_edge(nbrs[i], nbrs[j]);
            }
        }
    }
    sq
}

/// An abstract simple graph on `0..n` with sorted adjacency sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<BTreeSet<Vertex>>,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        SimpleGraph {
            adj: vec![BTreeSet::new(); n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Self {
        let mut g = SimpleGraph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    /// Adds an undirected edge; returns false if it was already present.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        assert!(u != v && u < self.n() && v < self.n(), "bad edge {u}-{v}");
        let fresh = self.adj[u].insert(v);
        self.adj[v].insert(u);
        fresh
    }

    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        let had = self.adj[u].remove(&v);
        self.adj[v].remove(&u);
        had
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.adj[u].contains(&v)
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(|s| s.len()).max().unwrap_or(0)
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for v in 0..self.n() {
            for &u in &self.adj[v] {
                if v < u {
                    out.push((v, u));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    /// Component id per vertex, ids dense from 0 in order of smallest member.
    pub fn components(&self) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.n()];
        let mut next = 0;
        for s in 0..self.n() {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &u in &self.adj[v] {
                    if comp[u] == usize::MAX {
                        comp[u] = next;
                        stack.push(u);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn component_count(&self) -> usize {
        self.components().iter().max().map_or(0, |m| m + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.component_count() == 1
    }

    /// The subgraph induced by `keep`, with vertex indices preserved
    /// (non-kept vertices become isolated).
    pub fn induced(&self, keep: &[bool]) -> SimpleGraph {
        let mut g = SimpleGraph::new(self.n());
        for v in 0..self.n() {
            if !keep[v] {
                continue;
            }
            for &u in &self.adj[v] {
                if v < u && keep[u] {
                    g.add_edge(v, u);
                }
            }
        }
        g
    }

    /// BFS distances from a set of sources; usize::MAX for unreachable.
    pub fn distances_from(&self, sources: &[Vertex]) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n()];
        let mut queue = std::collections::VecDeque::new();
        for &s in sources {
            if dist[s] == usize::MAX {
                dist[s] = 0;
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            for &u in &self.adj[v] {
                if dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        dist
    }
}

/// A simple cycle stored in canonical form: the lexicographically smallest
/// vertex sequence over all rotations of both directions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CycleRef {
    vs: Vec<Vertex>,
}

impl CycleRef {
    /// Canonicalizes a cyclic vertex sequence (length >= 3, vertices distinct).
    pub fn new(vs: Vec<Vertex>) -> CycleRef {
        assert!(vs.len() >= 3, "cycle needs at least 3 vertices");
        debug_assert!(
            {
                let mut s = vs.clone();
                s.sort_unstable();
                s.windows(2).all(|w| w[0] != w[1])
            },
            "cycle vertices must be distinct"
        );
        let k = vs.len();
        let rev: Vec<Vertex> = vs.iter().rev().copied().collect();
        let mut best: Option<Vec<Vertex>> = None;
        for seq in [&vs, &rev] {
            for s in 0..k {
                let cand: Vec<Vertex> = (0..k).map(|i| seq[(s + i) % k]).collect();
                if best.as_ref().is_none_or(|b| cand < *b) {
                    best = Some(cand);
                }
            }
        }
        CycleRef { vs: best.unwrap() }
    }

    pub fn len(&self) -> usize {
        self.vs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vs
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vs.contains(&v)
    }

    /// Consecutive pairs, including the closing edge.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let k = self.vs.len();
        (0..k)
            .map(|i| {
                let (a, b) = (self.vs[i], self.vs[(i + 1) % k]);
                (a.min(b), a.max(b))
            })
            .collect()
    }
}

/// True iff no cut of at most 3 edges splits the cubic graph into parts of
/// which two or more contain a cycle. Checks every edge subset of size <= 3.
pub fn cyclically_4_edge_connected(g: &SimpleGraph) -> Result<bool, GraphError> {
    for v in 0..g.n() {
        if g.degree(v) != 3 {
            return Err(GraphError::NotCubic {
                vertex: v,
                degree: g.degree(v),
            });
        }
    }
    let edges = g.edges();
    let m = edges.len();
    let mut cut: Vec<(Vertex, Vertex)> = Vec::with_capacity(3);
    let separates = |cut: &[(Vertex, Vertex)]| -> bool {
        let mut h = g.clone();
        for &(u, v) in cut {
            h.remove_edge(u, v);
        }
        let comp = h.components();
        let nc = comp.iter().max().map_or(0, |m| m + 1);
        let mut vcount = vec![0usize; nc];
        let mut ecount = vec![0usize; nc];
        for v in 0..h.n() {
            vcount[comp[v]] += 1;
            ecount[comp[v]] += h.degree(v);
        }
        let cyclic = (0..nc).filter(|&c| ecount[c] / 2 >= vcount[c]).count();
        cyclic >= 2
    };
    for i in 0..m {
        cut.clear();
        cut.push(edges[i]);
        if separates(&cut) {
            return Ok(false);
        }
        for j in i + 1..m {
            cut.truncate(1);
            cut.push(edges[j]);
            if separates(&cut) {
                return Ok(false);
            }
            for k in j + 1..m {
                cut.truncate(2);
                cut.push(edges[k]);
                if separates(&cut) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Every bridge (cut edge), found by removal and reconnection check.
pub fn bridges(g: &SimpleGraph) -> Vec<(Vertex, Vertex)> {
    g.edges()
        .into_iter()
        .filter(|&(u, v)| {
            let mut h = g.clone();
            h.remove_edge(u, v);
            h.distances_from(&[u])[v] == usize::MAX
        })
        .collect()
}

/// True iff the graph is connected, has at least 4 vertices, and stays
/// connected after removing any two vertices.
pub fn is_three_connected(g: &SimpleGraph) -> bool {
    let n = g.n();
    if n < 4 || !g.is_connected() {
        return false;
    }
    let mut keep = vec![true; n];
    for u in 0..n {
        for v in u + 1..n {
            keep[u] = false;
            keep[v] = false;
            let h = g.induced(&keep);
            let start = (0..n).find(|&w| keep[w]).unwrap();
            let dist = h.distances_from(&[start]);
            let connected = (0..n).filter(|&w| keep[w]).all(|w| dist[w] != usize::MAX);
            keep[u] = true;
            keep[v] = true;
            if !connected {
                return false;
            }
        }
    }
    true
}

/// True iff some three vertices are pairwise adjacent.
pub fn has_triangle(g: &SimpleGraph) -> bool {
    g.edges()
        .into_iter()
        .any(|(u, v)| g.neighbors(u).any(|w| w != v && g.has_edge(v, w)))
}

/// Two distinct faces sharing an edge, with total boundary length at most 11.
#[derive(Debug, Clone)]
pub struct LightFacePair {
    /// The shorter face (ties broken toward the face left of the shared edge).
    pub f1: Face,
    pub f2: Face,
    /// Shared edge as (min, max).
    pub shared_edge: (Vertex, Vertex),
}

/// Finds the lightest adjacent face pair: minimal total length, then minimal
/// shorter length, then smallest shared edge. Errors if every adjacent pair
/// has total length above 11.
pub fn light_face_pair(g: &PlanarGraph) -> Result<LightFacePair, GraphError> {
    let faces = g.faces();
    let mut face_of = vec![[usize::MAX; 3]; g.n()];
    for (fi, f) in faces.iter().enumerate() {
        for &(u, v) in f.walk() {
            let slot = g.rotation(u).iter().position(|&x| x == v).unwrap();
            face_of[u][slot] = fi;
        }
    }
    let fid = |u: Vertex, v: Vertex| -> usize {
        let slot = g.rotation(u).iter().position(|&x| x == v).unwrap();
        face_of[u][slot]
    };
    let mut best: Option<(usize, usize, (Vertex, Vertex), usize, usize)> = None;
    for (u, v) in g.edges() {
        let (a, b) = (fid(u, v), fid(v, u));
        if a == b {
            continue;
        }
        let (la, lb) = (faces[a].len(), faces[b].len());
        let (k1, k2, fa, fb) = if la <= lb { (la, lb, a, b) } else { (lb, la, b, a) };
        if k1 + k2 > 11 {
            continue;
        }
        let key = (k1 + k2, k1, (u, v), fa, fb);
        if best.as_ref().is_none_or(|b| (key.0, key.1, key.2) < (b.0, b.1, b.2)) {
            best = Some(key);
        }
    }
    match best {
        Some((_, _, e, fa, fb)) => Ok(LightFacePair {
            f1: faces[fa].clone(),
            f2: faces[fb].clone(),
            shared_edge: e,
        }),
        None => Err(GraphError::NoLightPair),
    }
}
