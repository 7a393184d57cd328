//! Decomposition search, blue/red class colorings, Kempe-chain recoloring,
//! and the end-to-end 7-coloring pipeline.

use crate::graph::{
    self, bridges, has_triangle, light_face_pair, PlanarGraph, SimpleGraph, Vertex,
};
use crate::oracle;
use crate::precolor::{
    self, BoundarySpec, ConditionReport, Mark, PrecolorError, R0Kind, RBColoring, Special,
};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

/// A (partial) assignment of palette colors 1..=7; colors 1-3 are the blue
/// class, 4-7 the red class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaletteColoring {
    colors: Vec<Option<u8>>,
}

/// The class a palette color belongs to.
pub fn class_of_color(c: u8) -> Mark {
    match c {
        1..=3 => Mark::Blue,
        4..=7 => Mark::Red,
        _ => panic!("palette color {c} out of range"),
    }
}

impl PaletteColoring {
    pub fn empty(n: usize) -> Self {
        PaletteColoring {
            colors: vec![None; n],
        }
    }

    pub fn n(&self) -> usize {
        self.colors.len()
    }

    pub fn get(&self, v: Vertex) -> Option<u8> {
        self.colors[v]
    }

    pub fn set(&mut self, v: Vertex, c: u8) {
        assert!((1..=7).contains(&c), "palette color {c} out of range");
        self.colors[v] = c.into();
    }

    pub fn clear(&mut self, v: Vertex) {
        self.colors[v] = None;
    }

    pub fn class(&self, v: Vertex) -> Option<Mark> {
        self.colors[v].map(class_of_color)
    }

    pub fn is_total(&self) -> bool {
        self.colors.iter().all(|c| c.is_some())
    }

    pub fn colors_used(&self) -> BTreeSet<u8> {
        self.colors.iter().flatten().copied().collect()
    }

    /// Copies every assigned color of `other` into self.
    pub fn absorb(&mut self, other: &PaletteColoring) {
        for v in 0..self.n() {
            if let Some(c) = other.colors[v] {
                self.set(v, c);
            }
        }
    }
}

/// True iff the coloring is total, uses only colors 1..=7, and is proper on
/// the square of `g`.
pub fn verify_square_coloring(g: &PlanarGraph, pal: &PaletteColoring) -> bool {
    if pal.n() != g.n() || !pal.is_total() {
        return false;
    }
    let sq = g.square();
    sq.edges()
        .into_iter()
        .all(|(u, v)| pal.get(u) != pal.get(v))
}

/// Proper coloring of `members` within `h` using colors
/// `offset..offset + k`, by backtracking in degree order. Vertices outside
/// `members` stay uncolored and unconstrained.
fn color_class_members(
    h: &SimpleGraph,
    members: &[Vertex],
    k: u8,
    offset: u8,
) -> Option<PaletteColoring> {
    let mut order: Vec<Vertex> = members.to_vec();
    order.sort_by_key(|&v| (std::cmp::Reverse(h.degree(v)), v));
    let mut pal = PaletteColoring::empty(h.n());
    fn go(
        h: &SimpleGraph,
        order: &[Vertex],
        depth: usize,
        k: u8,
        offset: u8,
        pal: &mut PaletteColoring,
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let v = order[depth];
        for c in offset..offset + k {
            let clash = h
                .neighbors(v)
                .any(|u| pal.get(u) == Some(c));
            if clash {
                continue;
            }
            pal.set(v, c);
            if go(h, order, depth + 1, k, offset, pal) {
                return true;
            }
            pal.clear(v);
        }
        false
    }
    go(h, &order, 0, k, offset, &mut pal).then_some(pal)
}

#[derive(Debug, Error)]
pub enum ClassColoringError {
    #[error("blue square graph violates the Brooks precondition at vertex {vertex}")]
    BrooksPreconditionFailed { vertex: Vertex },
    #[error("blue square graph unexpectedly not 3-colorable")]
    Unsat3,
    #[error("red square graph is not planar")]
    NotPlanar,
    #[error("red square graph unexpectedly not 4-colorable")]
    Unsat4,
}

/// 3-colors the blue square graph with colors 1-3. Preconditions: max degree
/// at most 3 and no K4 component (Brooks' guarantee).
pub fn color_blue_square(
    g: &PlanarGraph,
    rb: &RBColoring,
) -> Result<PaletteColoring, ClassColoringError> {
    let blues = rb.vertices_with(Mark::Blue);
    let h = precolor::blue_square_graph(g, rb);
    if let Some(&v) = blues.iter().find(|&&v| h.degree(v) > 3) {
        return Err(ClassColoringError::BrooksPreconditionFailed { vertex: v });
    }
    if let Some(v) = k4_component(&h, &blues) {
        return Err(ClassColoringError::BrooksPreconditionFailed { vertex: v });
    }
    color_class_members(&h, &blues, 3, 1).ok_or(ClassColoringError::Unsat3)
}

/// A vertex of some K4 component of `h` restricted to `members`, if any.
fn k4_component(h: &SimpleGraph, members: &[Vertex]) -> Option<Vertex> {
    let comp = h.components();
    let mut by_comp: std::collections::BTreeMap<usize, Vec<Vertex>> = Default::default();
    for &v in members {
        by_comp.entry(comp[v]).or_default().push(v);
    }
    for vs in by_comp.values() {
        if vs.len() == 4
            && vs
                .iter()
                .all(|&a| vs.iter().all(|&b| a == b || h.has_edge(a, b)))
        {
            return Some(vs[0]);
        }
    }
    None
}

/// 4-colors the red square graph with colors 4-7. Precondition: the red
/// square graph is planar (then the Four Color Theorem guarantees success).
pub fn color_red_square(
    g: &PlanarGraph,
    rb: &RBColoring,
) -> Result<PaletteColoring, ClassColoringError> {
    let reds = rb.vertices_with(Mark::Red);
    let h = precolor::red_square_graph(g, rb);
    if !graph::is_planar(&h) {
        return Err(ClassColoringError::NotPlanar);
    }
    color_class_members(&h, &reds, 4, 4).ok_or(ClassColoringError::Unsat4)
}

#[derive(Debug, Error)]
pub enum SwapError {
    #[error("vertex {start} has color {found:?}, not one of the swap colors {i}, {j}")]
    StartNotInColors {
        start: Vertex,
        found: Option<u8>,
        i: u8,
        j: u8,
    },
}

/// Exchanges colors i and j on the Kempe chain of `start`: the connected
/// component of the i/j-colored vertices of `gsq` containing `start`.
pub fn kempe_swap(
    pal: &PaletteColoring,
    gsq: &SimpleGraph,
    start: Vertex,
    i: u8,
    j: u8,
) -> Result<PaletteColoring, SwapError> {
    let c0 = pal.get(start);
    if c0 != Some(i) && c0 != Some(j) {
        return Err(SwapError::StartNotInColors {
            start,
            found: c0,
            i,
            j,
        });
    }
    let mut out = pal.clone();
    if i == j {
        return Ok(out);
    }
    let in_chain_colors = |v: Vertex| pal.get(v) == Some(i) || pal.get(v) == Some(j);
    let mut seen = vec![false; gsq.n()];
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(v) = stack.pop() {
        let c = pal.get(v).unwrap();
        out.set(v, if c == i { j } else { i });
        for u in gsq.neighbors(v) {
            if !seen[u] && in_chain_colors(u) {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    Ok(out)
}

/// Verifiable facts about a decomposition certificate.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CertificateChecks {
    /// No red facial 4-path (nor forbidden-turn 3-path at r0).
    pub no_red_facial_4path: bool,
    /// blue3 properly 3-colors the blue square graph.
    pub blue3_proper: bool,
    /// r0' is red, when the spec makes that applicable.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r0_prime_red: Option<bool>,
}

impl CertificateChecks {
    pub fn all_pass(&self) -> bool {
        self.no_red_facial_4path && self.blue3_proper && self.r0_prime_red.unwrap_or(true)
    }
}

/// A red/blue extension of the boundary precoloring together with a proper
/// 3-coloring of its blue square graph and re-verifiable checks.
#[derive(Debug, Clone)]
pub struct DecompositionCertificate {
    pub rb: RBColoring,
    pub blue3: PaletteColoring,
    pub checks: CertificateChecks,
}

/// Recomputes every certificate check from scratch.
pub fn verify_certificate(
    g: &PlanarGraph,
    spec: &BoundarySpec,
    cert: &DecompositionCertificate,
) -> CertificateChecks {
    let no_red_facial_4path = precolor::red_facial_4paths(g, &cert.rb, spec).is_empty();
    let h = precolor::blue_square_graph(g, &cert.rb);
    let blues = cert.rb.vertices_with(Mark::Blue);
    let blue3_proper = blues
        .iter()
        .all(|&v| matches!(cert.blue3.get(v), Some(1..=3)))
        && (0..g.n()).all(|v| cert.rb.get(v) == Mark::Blue || cert.blue3.get(v).is_none())
        && h.edges()
            .into_iter()
            .all(|(u, v)| cert.blue3.get(u) != cert.blue3.get(v));
    let r0_prime_red = r0_prime(g, spec).map(|rp| cert.rb.get(rp) == Mark::Red);
    CertificateChecks {
        no_red_facial_4path,
        blue3_proper,
        r0_prime_red,
    }
}

/// The interior neighbor of a left-/right-forbidden r0, when it has no other
/// boundary contact (the situation in which the decomposition must keep it
/// red).
fn r0_prime(g: &PlanarGraph, spec: &BoundarySpec) -> Option<Vertex> {
    let (r0, kind) = spec.r0()?;
    if kind == R0Kind::FourForbidden {
        return None;
    }
    let rp = g
        .rotation(r0)
        .iter()
        .copied()
        .find(|&u| !spec.contains(u))?;
    let other_on_c = g
        .rotation(rp)
        .iter()
        .any(|&u| u != r0 && spec.contains(u));
    (!other_on_c).then_some(rp)
}

#[derive(Debug, Error)]
pub enum SolverError {
    #[error(transparent)]
    Spec(#[from] PrecolorError),
    #[error("boundary conditions failed: {0:?}")]
    PreconditionFailed(Box<ConditionReport>),
    #[error("no decomposition exists for this boundary")]
    NoDecomposition,
    #[error("search budget of {budget} nodes exhausted")]
    BudgetExhausted { budget: u64 },
}

#[derive(Debug, Clone, Copy)]
pub struct SolveConfig {
    /// Backtracking node budget before giving up.
    pub node_budget: u64,
    /// Cycle length bound for the forbidden-cycle scan.
    pub scan_len: usize,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            node_budget: 10_000_000,
            scan_len: precolor::DEFAULT_SCAN_LEN,
        }
    }
}

/// Searches for a red/blue extension of the derived boundary precoloring
/// whose blue square graph is 3-colorable and which contains no red facial
/// 4-path (nor forbidden-turn 3-path). Preconditions (the nine boundary
/// conditions) are checked first.
pub fn solve_decomposition(
    g: &PlanarGraph,
    spec: &BoundarySpec,
) -> Result<DecompositionCertificate, SolverError> {
    solve_decomposition_with(g, spec, SolveConfig::default())
}

struct CycleState {
    len: usize,
    non_blue: usize,
}

impl CycleState {
    fn forbidden(&self) -> bool {
        (self.len % 3 != 0 && self.non_blue == 0) || (self.len % 3 == 2 && self.non_blue == 1)
    }
}

struct Search<'a> {
    g: &'a PlanarGraph,
    rb: RBColoring,
    order: Vec<Vertex>,
    cycles: Vec<CycleState>,
    cycles_of: Vec<Vec<usize>>,
    /// Windows that must not become all red; counts of not-yet-red vertices.
    window_non_red: Vec<usize>,
    windows_of: Vec<Vec<usize>>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    /// Applies the mark; returns false if a cycle became forbidden or a
    /// window became all red (the caller must still undo).
    fn apply(&mut self, v: Vertex, m: Mark) -> bool {
        self.rb.set(v, m);
        let mut ok = true;
        match m {
            Mark::Blue => {
                for &ci in &self.cycles_of[v] {
                    self.cycles[ci].non_blue -= 1;
                    if self.cycles[ci].forbidden() {
                        ok = false;
                    }
                }
            }
            Mark::Red => {
                for &wi in &self.windows_of[v] {
                    self.window_non_red[wi] -= 1;
                    if self.window_non_red[wi] == 0 {
                        ok = false;
                    }
                }
            }
            Mark::Uncolored => unreachable!(),
        }
        ok
    }

    fn undo(&mut self, v: Vertex, m: Mark) {
        match m {
            Mark::Blue => {
                for &ci in &self.cycles_of[v] {
                    self.cycles[ci].non_blue += 1;
                }
            }
            Mark::Red => {
                for &wi in &self.windows_of[v] {
                    self.window_non_red[wi] += 1;
                }
            }
            Mark::Uncolored => unreachable!(),
        }
        self.rb.set(v, Mark::Uncolored);
    }

    fn dfs(&mut self, depth: usize) -> Result<bool, SolverError> {
        if depth == self.order.len() {
            return Ok(self.leaf_ok());
        }
        let v = self.order[depth];
        for m in [Mark::Red, Mark::Blue] {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(SolverError::BudgetExhausted {
                    budget: self.budget,
                });
            }
            if self.apply(v, m) && self.dfs(depth + 1)? {
                return Ok(true);
            }
            self.undo(v, m);
        }
        Ok(false)
    }

    fn leaf_ok(&self) -> bool {
        let blues = self.rb.vertices_with(Mark::Blue);
        let h = precolor::blue_square_graph(self.g, &self.rb);
        color_class_members(&h, &blues, 3, 1).is_some()
    }
}

/// `solve_decomposition` with an explicit budget and scan bound.
pub fn solve_decomposition_with(
    g: &PlanarGraph,
    spec: &BoundarySpec,
    cfg: SolveConfig,
) -> Result<DecompositionCertificate, SolverError> {
    let initial = precolor::derive_precoloring(g, spec)?;
    let report = precolor::check_conditions_with(g, spec, &initial, cfg.scan_len)?;
    if !report.all_pass() {
        return Err(SolverError::PreconditionFailed(Box::new(report)));
    }
    let rb = precolor::r0_red_preassignment(g, spec, initial);

    let cycle_list = precolor::cycles_up_to(g, cfg.scan_len);
    let mut cycles = Vec::with_capacity(cycle_list.len());
    let mut cycles_of: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (ci, c) in cycle_list.iter().enumerate() {
        let non_blue = c
            .vertices()
            .iter()
            .filter(|&&v| rb.get(v) != Mark::Blue)
            .count();
        cycles.push(CycleState {
            len: c.len(),
            non_blue,
        });
        for &v in c.vertices() {
            if rb.get(v) == Mark::Uncolored {
                cycles_of[v].push(ci);
            }
        }
    }

    let window_list = precolor::facial_path_windows(g, spec);
    let mut window_non_red = Vec::with_capacity(window_list.len());
    let mut windows_of: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (wi, w) in window_list.iter().enumerate() {
        let non_red = w.iter().filter(|&&v| rb.get(v) != Mark::Red).count();
        if non_red == 0 {
            // Already all red before the search starts: unsolvable as given.
            return Err(SolverError::NoDecomposition);
        }
        window_non_red.push(non_red);
        for &v in w {
            if rb.get(v) == Mark::Uncolored {
                windows_of[v].push(wi);
            }
        }
    }

    let dist = g.to_simple().distances_from(&spec.outer);
    let mut order: Vec<Vertex> = (0..g.n())
        .filter(|&v| rb.get(v) == Mark::Uncolored)
        .collect();
    order.sort_by_key(|&v| (dist[v], v));

    let mut search = Search {
        g,
        rb,
        order,
        cycles,
        cycles_of,
        window_non_red,
        windows_of,
        nodes: 0,
        budget: cfg.node_budget,
    };
    if !search.dfs(0)? {
        return Err(SolverError::NoDecomposition);
    }
    let rb = search.rb;
    let blues = rb.vertices_with(Mark::Blue);
    let h = precolor::blue_square_graph(g, &rb);
    let blue3 = color_class_members(&h, &blues, 3, 1).expect("leaf check guaranteed this");
    let cert = DecompositionCertificate {
        rb,
        blue3,
        checks: CertificateChecks {
            no_red_facial_4path: true,
            blue3_proper: true,
            r0_prime_red: None,
        },
    };
    let checks = verify_certificate(g, spec, &cert);
    debug_assert!(checks.no_red_facial_4path && checks.blue3_proper);
    Ok(DecompositionCertificate { checks, ..cert })
}

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("input violates pipeline preconditions: {0}")]
    InputViolation(String),
    #[error("graph has {n} vertices, exact fallback limited to {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("internal certification failure: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize, PartialEq, Eq)]
pub struct PipelinePath {
    /// Degree or bridge reductions were applied somewhere.
    pub reduced: bool,
    /// Base cases solved through a boundary decomposition.
    pub decompositions: usize,
    /// Base cases solved by the exact oracle.
    pub oracle_calls: usize,
}

/// The boundary decomposition behind a pipeline coloring, for re-checking.
#[derive(Debug, Clone)]
pub struct PipelineCertificate {
    pub spec: BoundarySpec,
    /// Final marking (the reopened edge's endpoints made blue).
    pub rb: RBColoring,
    /// The edge removed before solving; the decomposition lives on the graph
    /// without it.
    pub removed_edge: (Vertex, Vertex),
}

#[derive(Debug, Clone)]
pub struct SevenColoring {
    pub coloring: PaletteColoring,
    pub path: PipelinePath,
    /// Present when the top-level graph itself was solved by decomposition.
    pub certificate: Option<PipelineCertificate>,
}

#[derive(Debug, Clone, Copy)]
pub struct PipelineBudget {
    /// Largest n the exact oracle fallback accepts.
    pub oracle_max_n: usize,
    pub solve: SolveConfig,
}

impl Default for PipelineBudget {
    fn default() -> Self {
        PipelineBudget {
            oracle_max_n: 20,
            solve: SolveConfig::default(),
        }
    }
}

/// Properly colors the square of a planar graph of maximum degree 3 with at
/// most 7 colors: reduce low-degree vertices and bridges, solve a boundary
/// decomposition on a light face pair, 3-color the blue class and 4-color
/// the red class, falling back to the exact oracle when a step does not
/// apply.
pub fn seven_color(g: &PlanarGraph) -> Result<SevenColoring, PipelineError> {
    seven_color_with(g, PipelineBudget::default())
}

/// `seven_color` with explicit budgets.
pub fn seven_color_with(
    g: &PlanarGraph,
    budget: PipelineBudget,
) -> Result<SevenColoring, PipelineError> {
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) > 3) {
        return Err(PipelineError::InputViolation(format!(
            "vertex {v} has degree {} > 3",
            g.degree(v)
        )));
    }
    let mut path = PipelinePath::default();
    let (coloring, certificate) = color_rec(g, budget, &mut path)?;
    if !verify_square_coloring(g, &coloring) {
        return Err(PipelineError::Internal(
            "pipeline produced an improper coloring".into(),
        ));
    }
    Ok(SevenColoring {
        coloring,
        path,
        certificate,
    })
}

fn color_rec(
    g: &PlanarGraph,
    budget: PipelineBudget,
    path: &mut PipelinePath,
) -> Result<(PaletteColoring, Option<PipelineCertificate>), PipelineError> {
    let n = g.n();
    if n == 0 {
        return Ok((PaletteColoring::empty(0), None));
    }
    if n == 1 {
        let mut pal = PaletteColoring::empty(1);
        pal.set(0, 1);
        return Ok((pal, None));
    }

    // Low-degree reduction: a vertex of degree < 3 has at most 6 neighbors
    // in the square, so color the rest first and give it a leftover color.
    // A degree-2 vertex with non-adjacent neighbors is smoothed into an
    // edge, keeping those neighbors square-adjacent; when the neighborhood
    // is a clique, plain deletion already preserves every distance-2 pair.
    if let Some(v) = (0..n).find(|&v| g.degree(v) < 3) {
        path.reduced = true;
        let nbrs = g.rotation(v);
        let smoothable = nbrs.len() == 2 && !g.has_edge(nbrs[0], nbrs[1]);
        let (h, old_of_new) = if smoothable {
            g.smooth_vertex(v)
        } else {
            g.delete_vertex(v)
        }
        .map_err(|e| PipelineError::Internal(format!("vertex reduction failed: {e}")))?;
        let (sub, _) = color_rec(&h, budget, path)?;
        let mut pal = PaletteColoring::empty(n);
        for (new, &old) in old_of_new.iter().enumerate() {
            pal.set(old, sub.get(new).expect("recursive coloring is total"));
        }
        let sq = g.square();
        let taken: BTreeSet<u8> = sq.neighbors(v).filter_map(|u| pal.get(u)).collect();
        let c = (1..=7u8)
            .find(|c| !taken.contains(c))
            .expect("at most 6 square neighbors");
        pal.set(v, c);
        return Ok((pal, None));
    }

    // Components color independently: no square edge crosses.
    let simple = g.to_simple();
    let comp = simple.components();
    let nc = comp.iter().max().map_or(0, |m| m + 1);
    if nc > 1 {
        let mut pal = PaletteColoring::empty(n);
        for c in 0..nc {
            let keep: Vec<bool> = (0..n).map(|v| comp[v] == c).collect();
            let (h, old_of_new) = g
                .induced_embedded(&keep)
                .map_err(|e| PipelineError::Internal(format!("component split failed: {e}")))?;
            let (sub, _) = color_rec(&h, budget, path)?;
            for (new, &old) in old_of_new.iter().enumerate() {
                pal.set(old, sub.get(new).expect("recursive coloring is total"));
            }
        }
        return Ok((pal, None));
    }

    // Bridge reduction: split at a cut edge, color both sides, then align
    // the sides by permuting one side's palette.
    if let Some(&(u, v)) = bridges(&simple).first() {
        path.reduced = true;
        let cut = g
            .delete_edge(u, v)
            .map_err(|e| PipelineError::Internal(format!("bridge removal failed: {e}")))?;
        let comp = cut.to_simple().components();
        let keep_a: Vec<bool> = (0..n).map(|w| comp[w] == comp[u]).collect();
        let keep_b: Vec<bool> = (0..n).map(|w| comp[w] != comp[u]).collect();
        let (ga, old_a) = cut
            .induced_embedded(&keep_a)
            .map_err(|e| PipelineError::Internal(format!("bridge split failed: {e}")))?;
        let (gb, old_b) = cut
            .induced_embedded(&keep_b)
            .map_err(|e| PipelineError::Internal(format!("bridge split failed: {e}")))?;
        let (pa, _) = color_rec(&ga, budget, path)?;
        let (pb, _) = color_rec(&gb, budget, path)?;
        let mut pal = PaletteColoring::empty(n);
        for (new, &old) in old_a.iter().enumerate() {
            pal.set(old, pa.get(new).expect("recursive coloring is total"));
        }
        let sq = g.square();
        let cross: Vec<(Vertex, Vertex)> = sq
            .edges()
            .into_iter()
            .filter(|&(a, b)| keep_a[a] != keep_a[b])
            .collect();
        let mut perm: Vec<u8> = (1..=7).collect();
        let found = permutations(&mut perm, 0, &mut |p| {
            let color_b = |w: Vertex| -> Option<u8> {
                if keep_a[w] {
                    pal.get(w)
                } else {
                    let new = old_b.iter().position(|&o| o == w).unwrap();
                    Some(p[(pb.get(new).unwrap() - 1) as usize])
                }
            };
            cross.iter().all(|&(a, b)| color_b(a) != color_b(b))
        });
        let Some(p) = found else {
            return Err(PipelineError::Internal(
                "no palette permutation aligns the bridge sides".into(),
            ));
        };
        for (new, &old) in old_b.iter().enumerate() {
            let c = pb.get(new).expect("recursive coloring is total");
            pal.set(old, p[(c - 1) as usize]);
        }
        return Ok((pal, None));
    }

    // Base cases: triangles route to the oracle; otherwise try boundary
    // decompositions over a light face pair, oracle as last resort.
    if has_triangle(&simple) {
        return Ok((oracle_color(g, budget, path)?, None));
    }
    if let Some(out) = decomposition_attempts(g, budget) {
        path.decompositions += 1;
        return Ok((out.0, Some(out.1)));
    }
    Ok((oracle_color(g, budget, path)?, None))
}

/// Tries each permutation of `perm` (Heap's algorithm); returns the first
/// accepted by `check`.
fn permutations(
    perm: &mut Vec<u8>,
    k: usize,
    check: &mut impl FnMut(&[u8]) -> bool,
) -> Option<Vec<u8>> {
    if k == perm.len() {
        return check(perm).then(|| perm.clone());
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        if let Some(p) = permutations(perm, k + 1, check) {
            return Some(p);
        }
        perm.swap(k, i);
    }
    None
}

fn oracle_color(
    g: &PlanarGraph,
    budget: PipelineBudget,
    path: &mut PipelinePath,
) -> Result<PaletteColoring, PipelineError> {
    if g.n() > budget.oracle_max_n {
        return Err(PipelineError::TooLarge {
            n: g.n(),
            limit: budget.oracle_max_n,
        });
    }
    path.oracle_calls += 1;
    let sq = g.square();
    let colors = oracle::k_color(&sq, 7).ok_or_else(|| {
        PipelineError::Internal("square not 7-colorable — theorem violated".into())
    })?;
    let mut pal = PaletteColoring::empty(g.n());
    for (v, &c) in colors.iter().enumerate() {
        pal.set(v, c as u8 + 1);
    }
    Ok(pal)
}

/// The merged boundary cycle of a light face pair: both face walks joined
/// across the shared edge. None if the walks are degenerate or overlap
/// beyond the shared edge.
fn merged_boundary(lp: &graph::LightFacePair) -> Option<Vec<Vertex>> {
    let (x, y) = lp.shared_edge;
    let seq = |f: &graph::Face, from: Vertex| -> Option<Vec<Vertex>> {
        if !f.is_simple_cycle() {
            return None;
        }
        let vs = f.vertices();
        let i = vs.iter().position(|&v| v == from)?;
        Some((0..vs.len()).map(|k| vs[(i + k) % vs.len()]).collect())
    };
    // Orient each walk to leave from the shared edge.
    let (a, b) = if lp.f1.contains_directed(x, y) {
        (seq(&lp.f1, y)?, seq(&lp.f2, x)?)
    } else {
        (seq(&lp.f1, x)?, seq(&lp.f2, y)?)
    };
    // a runs from one endpoint around f1 to the other; b's interior follows.
    let mut outer = a;
    outer.extend(b[1..b.len() - 1].iter().copied());
    let mut seen = BTreeSet::new();
    if !outer.iter().all(|&v| seen.insert(v)) {
        return None;
    }
    Some(outer)
}

/// The boundary specifications the pipeline tries on `g`: the merged
/// light-face-pair cycle with each admissible distinguished vertex, in
/// deterministic trial order. Returns the graph with the shared edge
/// removed, the specs, and the removed edge.
pub fn boundary_candidates(
    g: &PlanarGraph,
) -> Option<(PlanarGraph, Vec<BoundarySpec>, (Vertex, Vertex))> {
    let lp = light_face_pair(g).ok()?;
    let (x, y) = lp.shared_edge;
    let gm = g.delete_edge(x, y).ok()?;
    let outer = merged_boundary(&lp)?;
    let k = outer.len();
    let mut candidates: Vec<Vertex> = Vec::new();
    for &end in &[x, y] {
        let i = outer.iter().position(|&v| v == end)?;
        for nb in [outer[(i + k - 1) % k], outer[(i + 1) % k]] {
            if nb != x && nb != y && !candidates.contains(&nb) {
                candidates.push(nb);
            }
        }
    }
    let mut specs: Vec<BoundarySpec> = Vec::new();
    for &cand in &candidates {
        for kind in [
            R0Kind::FourForbidden,
            R0Kind::RightForbidden,
            R0Kind::LeftForbidden,
        ] {
            specs.push(BoundarySpec {
                outer: outer.clone(),
                special: Special::R0 {
                    vertex: cand,
                    forbidden: kind,
                },
            });
        }
    }
    for &cand in &candidates {
        specs.push(BoundarySpec {
            outer: outer.clone(),
            special: Special::B0 { vertex: cand },
        });
    }
    Some((gm, specs, (x, y)))
}

fn decomposition_attempts(
    g: &PlanarGraph,
    budget: PipelineBudget,
) -> Option<(PaletteColoring, PipelineCertificate)> {
    let (gm, specs, removed) = boundary_candidates(g)?;
    specs
        .iter()
        .find_map(|spec| try_candidate(g, &gm, spec, removed, budget))
}

fn try_candidate(
    g: &PlanarGraph,
    gm: &PlanarGraph,
    spec: &BoundarySpec,
    removed: (Vertex, Vertex),
    budget: PipelineBudget,
) -> Option<(PaletteColoring, PipelineCertificate)> {
    let cert = solve_decomposition_with(gm, spec, budget.solve).ok()?;
    let (x, y) = removed;
    let mut rb = cert.rb;
    rb.set(x, Mark::Blue);
    rb.set(y, Mark::Blue);
    // Re-establish the no-red-path conclusion on the final marking (making
    // x, y blue only removes red vertices, but stay defensive).
    if !precolor::red_facial_4paths(gm, &rb, spec).is_empty() {
        return None;
    }
    // Class colorings live on the original graph: its square contains the
    // xy constraint and every cross pair through x and y.
    let blue3 = color_blue_square(g, &rb).ok()?;
    let red4 = color_red_square(g, &rb).ok()?;
    let mut pal = blue3;
    pal.absorb(&red4);
    verify_square_coloring(g, &pal).then(|| {
        (
            pal,
            PipelineCertificate {
                spec: spec.clone(),
                rb,
                removed_edge: removed,
            },
        )
    })
}
