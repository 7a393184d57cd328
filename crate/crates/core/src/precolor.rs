//! Red/blue/uncolored vertex markings, the forbidden and dangerous cycle
//! predicates, boundary-condition checking with witnesses, and red facial
//! path detection.

use crate::graph::{CycleRef, PlanarGraph, SimpleGraph, Turn, Vertex};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

/// Default bound on cycle length for forbidden/dangerous scanning.
pub const DEFAULT_SCAN_LEN: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mark {
    Red,
    Blue,
    Uncolored,
}

/// A per-vertex red/blue/uncolored marking.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RBColoring {
    marks: Vec<Mark>,
}

impl RBColoring {
    pub fn uncolored(n: usize) -> Self {
        RBColoring {
            marks: vec![Mark::Uncolored; n],
        }
    }

    pub fn from_marks(marks: Vec<Mark>) -> Self {
        RBColoring { marks }
    }

    pub fn n(&self) -> usize {
        self.marks.len()
    }

    pub fn get(&self, v: Vertex) -> Mark {
        self.marks[v]
    }

    pub fn set(&mut self, v: Vertex, m: Mark) {
        self.marks[v] = m;
    }

    pub fn marks(&self) -> &[Mark] {
        &self.marks
    }

    pub fn is_total(&self) -> bool {
        self.marks.iter().all(|&m| m != Mark::Uncolored)
    }

    pub fn vertices_with(&self, m: Mark) -> Vec<Vertex> {
        (0..self.n()).filter(|&v| self.marks[v] == m).collect()
    }

    pub fn count(&self, m: Mark) -> usize {
        self.marks.iter().filter(|&&x| x == m).count()
    }
}

/// What a designated boundary vertex forbids in conclusion (i).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum R0Kind {
    /// Red facial 3-paths from r0 turning sharp left at r0's interior
    /// neighbor are forbidden (right turns allowed).
    LeftForbidden,
    /// Mirror image: sharp right turns forbidden.
    RightForbidden,
    /// Only red facial 4-paths are forbidden at r0.
    FourForbidden,
}

/// The distinguished boundary vertex, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "role", rename_all = "lowercase")]
pub enum Special {
    None,
    /// The unique blue vertex of the boundary.
    B0 { vertex: Vertex },
    /// The designated red vertex of an all-red boundary.
    R0 { vertex: Vertex, forbidden: R0Kind },
}

/// The outer cycle and its distinguished vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundarySpec {
    /// Boundary vertices in cyclic order.
    pub outer: Vec<Vertex>,
    pub special: Special,
}

impl BoundarySpec {
    pub fn all_red(outer: Vec<Vertex>, r0: Vertex, kind: R0Kind) -> Self {
        BoundarySpec {
            outer,
            special: Special::R0 {
                vertex: r0,
                forbidden: kind,
            },
        }
    }

    pub fn with_b0(outer: Vec<Vertex>, b0: Vertex) -> Self {
        BoundarySpec {
            outer,
            special: Special::B0 { vertex: b0 },
        }
    }

    pub fn len(&self) -> usize {
        self.outer.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outer.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.outer.contains(&v)
    }

    pub fn b0(&self) -> Option<Vertex> {
        match self.special {
            Special::B0 { vertex } => Some(vertex),
            _ => None,
        }
    }

    pub fn r0(&self) -> Option<(Vertex, R0Kind)> {
        match self.special {
            Special::R0 { vertex, forbidden } => Some((vertex, forbidden)),
            _ => None,
        }
    }

    /// The two cyclic neighbors of v on the boundary.
    pub fn cycle_neighbors(&self, v: Vertex) -> Option<(Vertex, Vertex)> {
        let k = self.outer.len();
        let i = self.outer.iter().position(|&x| x == v)?;
        Some((self.outer[(i + k - 1) % k], self.outer[(i + 1) % k]))
    }

    /// Boundary edges as (min, max) pairs.
    pub fn cycle_edges(&self) -> BTreeSet<(Vertex, Vertex)> {
        let k = self.outer.len();
        (0..k)
            .map(|i| {
                let (a, b) = (self.outer[i], self.outer[(i + 1) % k]);
                (a.min(b), a.max(b))
            })
            .collect()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PrecolorError {
    #[error("boundary spec does not match the graph: {0}")]
    SpecMismatch(String),
}

/// True iff the cycle's marks make a proper 3-coloring of its blue vertices
/// impossible in the cycle's square: all blue with length not divisible by 3,
/// or exactly one non-blue with length congruent to 2 mod 3. Uncolored
/// vertices count as non-blue.
pub fn is_forbidden_cycle(g: &PlanarGraph, rb: &RBColoring, c: &CycleRef) -> bool {
    debug_assert!(cycle_in_graph(g, c), "cycle not in host graph");
    let len = c.len();
    let non_blue = c
        .vertices()
        .iter()
        .filter(|&&v| rb.get(v) != Mark::Blue)
        .count();
    (len % 3 != 0 && non_blue == 0) || (len % 3 == 2 && non_blue == 1)
}

/// True iff the cycle is one blue-flip away from forbidden: it has at least
/// one non-blue vertex, is not itself forbidden, and recoloring any single
/// non-blue vertex blue yields a forbidden cycle. Checked literally by
/// performing each flip.
pub fn is_dangerous_cycle(g: &PlanarGraph, rb: &RBColoring, c: &CycleRef) -> bool {
    debug_assert!(cycle_in_graph(g, c), "cycle not in host graph");
    if is_forbidden_cycle(g, rb, c) {
        return false;
    }
    let non_blue: Vec<Vertex> = c
        .vertices()
        .iter()
        .copied()
        .filter(|&v| rb.get(v) != Mark::Blue)
        .collect();
    if non_blue.is_empty() {
        return false;
    }
    non_blue.iter().all(|&v| {
        let mut flipped = rb.clone();
        flipped.set(v, Mark::Blue);
        is_forbidden_cycle(g, &flipped, c)
    })
}

fn cycle_in_graph(g: &PlanarGraph, c: &CycleRef) -> bool {
    c.edges().iter().all(|&(u, v)| g.has_edge(u, v))
}

/// All simple cycles of length at most `max_len`, by per-edge path closure.
pub fn cycles_up_to(g: &PlanarGraph, max_len: usize) -> Vec<CycleRef> {
    let mut found: BTreeSet<CycleRef> = BTreeSet::new();
    let n = g.n();
    let mut on_path = vec![false; n];
    for (u, v) in g.edges() {
        let mut path = vec![u, v];
        on_path[u] = true;
        on_path[v] = true;
        close_paths(g, u, max_len, &mut path, &mut on_path, &mut found);
        on_path[u] = false;
        on_path[v] = false;
    }
    found.into_iter().collect()
}

fn close_paths(
    g: &PlanarGraph,
    home: Vertex,
    max_len: usize,
    path: &mut Vec<Vertex>,
    on_path: &mut Vec<bool>,
    found: &mut BTreeSet<CycleRef>,
) {
    let last = *path.last().unwrap();
    for &w in g.rotation(last) {
        if w == home && path.len() >= 3 {
            found.insert(CycleRef::new(path.clone()));
        } else if !on_path[w] && path.len() < max_len {
            path.push(w);
            on_path[w] = true;
            close_paths(g, home, max_len, path, on_path, found);
            on_path[w] = false;
            path.pop();
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CycleBadness {
    Forbidden,
    Dangerous,
}

/// All forbidden and dangerous cycles up to `max_len`. When a boundary spec
/// with a blue b0 is supplied, a dangerous cycle through b0 and exactly one
/// other boundary vertex is exempt and not reported.
pub fn scan_cycles(
    g: &PlanarGraph,
    rb: &RBColoring,
    max_len: usize,
    spec: Option<&BoundarySpec>,
) -> Vec<(CycleRef, CycleBadness)> {
    let mut out = Vec::new();
    for c in cycles_up_to(g, max_len) {
        let badness = if is_forbidden_cycle(g, rb, &c) {
            Some(CycleBadness::Forbidden)
        } else if is_dangerous_cycle(g, rb, &c) {
            if spec.is_some_and(|s| exempt_dangerous(s, &c)) {
                None
            } else {
                Some(CycleBadness::Dangerous)
            }
        } else {
            None
        };
        if let Some(b) = badness {
            out.push((c, b));
        }
    }
    out
}

fn exempt_dangerous(spec: &BoundarySpec, c: &CycleRef) -> bool {
    let Some(b0) = spec.b0() else {
        return false;
    };
    if !c.contains(b0) {
        return false;
    }
    let on_boundary = c
        .vertices()
        .iter()
        .filter(|&&v| spec.contains(v))
        .count();
    on_boundary == 2
}

/// Failure evidence attached to a condition verdict.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Vertex { vertex: Vertex },
    Cut {
        vertex: Vertex,
        removed: Vec<(Vertex, Vertex)>,
    },
    Cycle {
        vertices: Vec<Vertex>,
        class: CycleBadness,
    },
    Note { text: String },
}

#[derive(Debug, Clone, Serialize)]
pub struct ConditionEntry {
    pub condition: &'static str,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// Verdicts for the nine boundary conditions, in order c1..c9.
#[derive(Debug, Clone, Serialize)]
pub struct ConditionReport {
    pub entries: Vec<ConditionEntry>,
}

impl ConditionReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn failed(&self) -> Vec<&'static str> {
        self.entries
            .iter()
            .filter(|e| !e.pass)
            .map(|e| e.condition)
            .collect()
    }

    pub fn entry(&self, condition: &str) -> Option<&ConditionEntry> {
        self.entries.iter().find(|e| e.condition == condition)
    }
}

impl fmt::Display for ConditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            write!(f, "{}: {}", e.condition, if e.pass { "pass" } else { "FAIL" })?;
            if let Some(w) = &e.witness {
                write!(f, "  ({w:?})")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Validated boundary context shared by the condition checks.
struct SpecContext {
    on_c: Vec<bool>,
    interior: Vec<Vertex>,
    /// Interior edges: every edge not on the boundary cycle (edges from the
    /// boundary into the interior included).
    interior_edges: Vec<(Vertex, Vertex)>,
}

fn validate_spec(g: &PlanarGraph, spec: &BoundarySpec) -> Result<SpecContext, PrecolorError> {
    let n = g.n();
    let k = spec.outer.len();
    if k < 3 {
        return Err(PrecolorError::SpecMismatch(format!(
            "outer cycle has {k} vertices, need at least 3"
        )));
    }
    let mut on_c = vec![false; n];
    for &v in &spec.outer {
        if v >= n {
            return Err(PrecolorError::SpecMismatch(format!(
                "boundary vertex {v} out of range"
            )));
        }
        if on_c[v] {
            return Err(PrecolorError::SpecMismatch(format!(
                "boundary vertex {v} repeated"
            )));
        }
        on_c[v] = true;
    }
    for i in 0..k {
        let (a, b) = (spec.outer[i], spec.outer[(i + 1) % k]);
        if !g.has_edge(a, b) {
            return Err(PrecolorError::SpecMismatch(format!(
                "boundary vertices {a} and {b} are consecutive but not adjacent"
            )));
        }
    }
    let target = CycleRef::new(spec.outer.clone());
    let is_face = g.faces().iter().any(|f| {
        f.len() == k && f.is_simple_cycle() && CycleRef::new(f.vertices()) == target
    });
    if !is_face {
        return Err(PrecolorError::SpecMismatch(
            "outer cycle is not a face of the embedding".into(),
        ));
    }
    // Chordless: no edge between non-consecutive boundary vertices.
    let cycle_edges = spec.cycle_edges();
    for i in 0..k {
        for j in i + 1..k {
            let (a, b) = (spec.outer[i], spec.outer[j]);
            let e = (a.min(b), a.max(b));
            if g.has_edge(a, b) && !cycle_edges.contains(&e) {
                return Err(PrecolorError::SpecMismatch(format!(
                    "outer cycle has a chord {a}-{b}"
                )));
            }
        }
    }
    match spec.special {
        Special::None => {}
        Special::B0 { vertex } | Special::R0 { vertex, .. } => {
            if vertex >= n || !on_c[vertex] {
                return Err(PrecolorError::SpecMismatch(format!(
                    "designated vertex {vertex} is not on the boundary"
                )));
            }
        }
    }
    let interior: Vec<Vertex> = (0..n).filter(|&v| !on_c[v]).collect();
    let interior_edges: Vec<(Vertex, Vertex)> = g
        .edges()
        .into_iter()
        .filter(|e| !cycle_edges.contains(e))
        .collect();
    Ok(SpecContext {
        on_c,
        interior,
        interior_edges,
    })
}

/// The interior neighbor of a boundary vertex, if it has one (degree <= 3 and
/// a chordless boundary make it unique).
fn interior_neighbor(g: &PlanarGraph, ctx: &SpecContext, v: Vertex) -> Option<Vertex> {
    g.rotation(v).iter().copied().find(|&u| !ctx.on_c[u])
}

/// The marking mandated by c7: boundary red except b0 blue; an interior
/// vertex with a red boundary neighbor other than r0 is blue; for a left- or
/// right-forbidden r0 whose interior neighbor r0' has both other neighbors
/// interior, the one reached by the forbidden turn is blue; everything else
/// uncolored.
pub fn derive_precoloring(
    g: &PlanarGraph,
    spec: &BoundarySpec,
) -> Result<RBColoring, PrecolorError> {
    let ctx = validate_spec(g, spec)?;
    Ok(derive_with_ctx(g, spec, &ctx))
}

fn derive_with_ctx(g: &PlanarGraph, spec: &BoundarySpec, ctx: &SpecContext) -> RBColoring {
    let mut rb = RBColoring::uncolored(g.n());
    for &v in &spec.outer {
        rb.set(v, Mark::Red);
    }
    if let Some(b0) = spec.b0() {
        rb.set(b0, Mark::Blue);
    }
    let r0 = spec.r0().map(|(v, _)| v);
    for &v in &ctx.interior {
        let forced = g
            .rotation(v)
            .iter()
            .any(|&u| ctx.on_c[u] && rb.get(u) == Mark::Red && Some(u) != r0);
        if forced {
            rb.set(v, Mark::Blue);
        }
    }
    if let Some((r0v, kind)) = spec.r0() {
        let turn = match kind {
            R0Kind::RightForbidden => Some(Turn::Right),
            R0Kind::LeftForbidden => Some(Turn::Left),
            R0Kind::FourForbidden => None,
        };
        if let (Some(rp), Some(turn)) = (interior_neighbor(g, ctx, r0v), turn) {
            let others: Vec<Vertex> = g
                .rotation(rp)
                .iter()
                .copied()
                .filter(|&u| u != r0v)
                .collect();
            if others.len() == 2 && others.iter().all(|&u| !ctx.on_c[u]) {
                for &a in &others {
                    if g.turn_direction(r0v, rp, a) == Ok(turn) {
                        rb.set(a, Mark::Blue);
                    }
                }
            }
        }
    }
    rb
}

/// Checks the nine boundary conditions with the default cycle-scan bound.
pub fn check_conditions(
    g: &PlanarGraph,
    spec: &BoundarySpec,
    rb: &RBColoring,
) -> Result<ConditionReport, PrecolorError> {
    check_conditions_with(g, spec, rb, DEFAULT_SCAN_LEN)
}

/// Checks the nine boundary conditions, scanning cycles up to `scan_len`.
pub fn check_conditions_with(
    g: &PlanarGraph,
    spec: &BoundarySpec,
    rb: &RBColoring,
    scan_len: usize,
) -> Result<ConditionReport, PrecolorError> {
    if rb.n() != g.n() {
        return Err(PrecolorError::SpecMismatch(format!(
            "marking covers {} vertices, graph has {}",
            rb.n(),
            g.n()
        )));
    }
    let ctx = validate_spec(g, spec)?;
    let mut entries = Vec::with_capacity(9);
    let mut push = |condition: &'static str, result: Result<(), Witness>| {
        entries.push(match result {
            Ok(()) => ConditionEntry {
                condition,
                pass: true,
                witness: None,
            },
            Err(w) => ConditionEntry {
                condition,
                pass: false,
                witness: Some(w),
            },
        });
    };

    push("c1", check_c1(g, &ctx));
    push("c2", check_c2(g, &ctx));
    push("c3", check_c3(spec, rb));
    push("c4", check_c4(g, spec));
    push("c5", check_c5(spec, rb));
    push("c6", check_c6(g, spec, &ctx));
    push("c7", check_c7(g, spec, rb, &ctx));
    push("c8", check_c8(g, spec, rb, scan_len));
    push("c9", check_c9(g, spec, &ctx));
    Ok(ConditionReport { entries })
}

/// c1: every interior vertex still reaches the boundary after removing any
/// set of at most two interior edges.
fn check_c1(g: &PlanarGraph, ctx: &SpecContext) -> Result<(), Witness> {
    if ctx.interior.is_empty() {
        return Ok(());
    }
    let simple = g.to_simple();
    let boundary: Vec<Vertex> = (0..g.n()).filter(|&v| ctx.on_c[v]).collect();
    let ie = &ctx.interior_edges;
    let mut removal_sets: Vec<Vec<(Vertex, Vertex)>> = vec![vec![]];
    for i in 0..ie.len() {
        removal_sets.push(vec![ie[i]]);
        for j in i + 1..ie.len() {
            removal_sets.push(vec![ie[i], ie[j]]);
        }
    }
    for removed in removal_sets {
        let mut h = simple.clone();
        for &(u, v) in &removed {
            h.remove_edge(u, v);
        }
        let dist = h.distances_from(&boundary);
        if let Some(&v) = ctx.interior.iter().find(|&&v| dist[v] == usize::MAX) {
            return Err(Witness::Cut {
                vertex: v,
                removed,
            });
        }
    }
    Ok(())
}

/// c2: all degrees at most 3, interior degrees exactly 3.
fn check_c2(g: &PlanarGraph, ctx: &SpecContext) -> Result<(), Witness> {
    for v in 0..g.n() {
        if g.degree(v) > 3 {
            return Err(Witness::Vertex { vertex: v });
        }
    }
    match ctx.interior.iter().find(|&&v| g.degree(v) != 3) {
        Some(&v) => Err(Witness::Vertex { vertex: v }),
        None => Ok(()),
    }
}

/// c3: boundary fully red/blue with at most one blue, which must be the
/// designated b0.
fn check_c3(spec: &BoundarySpec, rb: &RBColoring) -> Result<(), Witness> {
    for &v in &spec.outer {
        if rb.get(v) == Mark::Uncolored {
            return Err(Witness::Vertex { vertex: v });
        }
    }
    let blues: Vec<Vertex> = spec
        .outer
        .iter()
        .copied()
        .filter(|&v| rb.get(v) == Mark::Blue)
        .collect();
    if blues.len() > 1 {
        return Err(Witness::Vertex { vertex: blues[1] });
    }
    match (blues.first().copied(), spec.b0()) {
        (Some(b), Some(b0)) if b == b0 => Ok(()),
        (None, None) => Ok(()),
        (Some(b), _) => Err(Witness::Vertex { vertex: b }),
        (None, Some(b0)) => Err(Witness::Vertex { vertex: b0 }),
    }
}

/// c4: if b0 exists, one of its boundary neighbors has degree 2.
fn check_c4(g: &PlanarGraph, spec: &BoundarySpec) -> Result<(), Witness> {
    let Some(b0) = spec.b0() else {
        return Ok(());
    };
    let (p, s) = spec.cycle_neighbors(b0).unwrap();
    if g.degree(p) == 2 || g.degree(s) == 2 {
        Ok(())
    } else {
        Err(Witness::Vertex { vertex: b0 })
    }
}

/// c5: an all-red boundary requires a designated r0.
fn check_c5(spec: &BoundarySpec, rb: &RBColoring) -> Result<(), Witness> {
    let any_blue = spec.outer.iter().any(|&v| rb.get(v) == Mark::Blue);
    if any_blue {
        return Ok(());
    }
    match spec.special {
        Special::R0 { .. } => Ok(()),
        _ => Err(Witness::Note {
            text: "all-red boundary needs a designated r0".into(),
        }),
    }
}

/// c6: the interior is nonempty and connected and touches the designated
/// vertex.
fn check_c6(g: &PlanarGraph, spec: &BoundarySpec, ctx: &SpecContext) -> Result<(), Witness> {
    if ctx.interior.is_empty() {
        return Err(Witness::Note {
            text: "interior is empty".into(),
        });
    }
    let simple = g.to_simple();
    let keep: Vec<bool> = (0..g.n()).map(|v| !ctx.on_c[v]).collect();
    let induced = simple.induced(&keep);
    let dist = induced.distances_from(&ctx.interior[..1]);
    if let Some(&v) = ctx.interior.iter().find(|&&v| dist[v] == usize::MAX) {
        return Err(Witness::Vertex { vertex: v });
    }
    let anchor = match spec.special {
        Special::B0 { vertex } => vertex,
        Special::R0 { vertex, .. } => vertex,
        Special::None => {
            return Err(Witness::Note {
                text: "no designated vertex to anchor the interior".into(),
            })
        }
    };
    if ctx
        .interior
        .iter()
        .any(|&v| g.has_edge(anchor, v))
    {
        Ok(())
    } else {
        Err(Witness::Vertex { vertex: anchor })
    }
}

/// c7: the interior marking equals the derived precoloring exactly.
fn check_c7(
    g: &PlanarGraph,
    spec: &BoundarySpec,
    rb: &RBColoring,
    ctx: &SpecContext,
) -> Result<(), Witness> {
    let expected = derive_with_ctx(g, spec, ctx);
    match ctx
        .interior
        .iter()
        .find(|&&v| rb.get(v) != expected.get(v))
    {
        Some(&v) => Err(Witness::Vertex { vertex: v }),
        None => Ok(()),
    }
}

/// c8: no forbidden cycle, and no dangerous cycle apart from the allowed
/// b0 exception.
fn check_c8(
    g: &PlanarGraph,
    spec: &BoundarySpec,
    rb: &RBColoring,
    scan_len: usize,
) -> Result<(), Witness> {
    let bad = scan_cycles(g, rb, scan_len, Some(spec));
    match bad.into_iter().next() {
        Some((c, class)) => Err(Witness::Cycle {
            vertices: c.vertices().to_vec(),
            class,
        }),
        None => Ok(()),
    }
}

/// c9: for a left- or right-forbidden r0 whose interior neighbor r0' has no
/// other boundary neighbor, some facial cycle contains r0' and avoids the
/// boundary.
fn check_c9(g: &PlanarGraph, spec: &BoundarySpec, ctx: &SpecContext) -> Result<(), Witness> {
    let Some((r0, kind)) = spec.r0() else {
        return Ok(());
    };
    if kind == R0Kind::FourForbidden {
        return Ok(());
    }
    let Some(rp) = interior_neighbor(g, ctx, r0) else {
        return Ok(());
    };
    let other_on_c = g
        .rotation(rp)
        .iter()
        .any(|&u| u != r0 && ctx.on_c[u]);
    if other_on_c {
        return Ok(());
    }
    let ok = g.faces().iter().any(|f| {
        f.is_simple_cycle()
            && f.contains_vertex(rp)
            && f.vertices().iter().all(|&v| !ctx.on_c[v])
    });
    if ok {
        Ok(())
    } else {
        Err(Witness::Vertex { vertex: rp })
    }
}

/// Every facial 4-vertex window whose three edges avoid the boundary cycle,
/// plus — for a left-/right-forbidden r0 — the facial 3-path from r0 making
/// the forbidden turn at r0'. Marks-independent: a window is an offending
/// red path precisely when all its vertices are red. Windows are vertex
/// sequences, lexicographically normalized.
pub fn facial_path_windows(g: &PlanarGraph, spec: &BoundarySpec) -> Vec<Vec<Vertex>> {
    let cycle_edges = spec.cycle_edges();
    let interior_edge =
        |a: Vertex, b: Vertex| !cycle_edges.contains(&(a.min(b), a.max(b)));
    let mut found: BTreeSet<Vec<Vertex>> = BTreeSet::new();
    for f in g.faces() {
        let walk = f.walk();
        let len = walk.len();
        if len < 3 {
            continue;
        }
        for i in 0..len {
            let (a, b) = walk[i];
            let (_, c) = walk[(i + 1) % len];
            let (_, d) = walk[(i + 2) % len];
            let vs = [a, b, c, d];
            let distinct = (0..4).all(|x| (x + 1..4).all(|y| vs[x] != vs[y]));
            if !distinct {
                continue;
            }
            if !(interior_edge(a, b) && interior_edge(b, c) && interior_edge(c, d)) {
                continue;
            }
            let fwd = vs.to_vec();
            let rev: Vec<Vertex> = vs.iter().rev().copied().collect();
            found.insert(fwd.min(rev));
        }
    }
    if let Some((r0, kind)) = spec.r0() {
        let turn = match kind {
            R0Kind::RightForbidden => Some(Turn::Right),
            R0Kind::LeftForbidden => Some(Turn::Left),
            R0Kind::FourForbidden => None,
        };
        let on_c: BTreeSet<Vertex> = spec.outer.iter().copied().collect();
        let rp = g
            .rotation(r0)
            .iter()
            .copied()
            .find(|u| !on_c.contains(u));
        if let (Some(rp), Some(turn)) = (rp, turn) {
            if g.degree(rp) == 3 {
                for &z in g.rotation(rp) {
                    if z != r0
                        && g.turn_direction(r0, rp, z) == Ok(turn)
                        && interior_edge(r0, rp)
                        && interior_edge(rp, z)
                    {
                        found.insert(vec![r0, rp, z]);
                    }
                }
            }
        }
    }
    found.into_iter().collect()
}

/// All red facial 4-paths whose three edges avoid the boundary cycle, plus —
/// for a left-/right-forbidden r0 — the red facial 3-path from r0 making the
/// forbidden turn at r0'. These are the paths a valid decomposition must not
/// contain.
pub fn red_facial_4paths(
    g: &PlanarGraph,
    rb: &RBColoring,
    spec: &BoundarySpec,
) -> Vec<Vec<Vertex>> {
    facial_path_windows(g, spec)
        .into_iter()
        .filter(|w| w.iter().all(|&v| rb.get(v) == Mark::Red))
        .collect()
}

/// For a left- or right-forbidden r0 whose interior neighbor has no other
/// boundary contact, the decomposition may fix that neighbor red. Applies
/// that choice to an initial marking; otherwise returns it unchanged.
pub fn r0_red_preassignment(
    g: &PlanarGraph,
    spec: &BoundarySpec,
    mut rb: RBColoring,
) -> RBColoring {
    let Some((r0, kind)) = spec.r0() else {
        return rb;
    };
    if kind == R0Kind::FourForbidden {
        return rb;
    }
    let Some(rp) = g
        .rotation(r0)
        .iter()
        .copied()
        .find(|&u| !spec.contains(u))
    else {
        return rb;
    };
    let other_on_c = g
        .rotation(rp)
        .iter()
        .any(|&u| u != r0 && spec.contains(u));
    if !other_on_c && rb.get(rp) == Mark::Uncolored {
        rb.set(rp, Mark::Red);
    }
    rb
}

/// The subgraph of the square induced by the blue vertices (other vertices
/// kept as isolated points).
pub fn blue_square_graph(g: &PlanarGraph, rb: &RBColoring) -> SimpleGraph {
    class_square_graph(g, rb, Mark::Blue)
}

/// The subgraph of the square induced by the red vertices; includes the red
/// edges of the graph itself.
pub fn red_square_graph(g: &PlanarGraph, rb: &RBColoring) -> SimpleGraph {
    class_square_graph(g, rb, Mark::Red)
}

fn class_square_graph(g: &PlanarGraph, rb: &RBColoring, mark: Mark) -> SimpleGraph {
    let sq = g.square();
    let keep: Vec<bool> = (0..g.n()).map(|v| rb.get(v) == mark).collect();
    sq.induced(&keep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn cycle_graph(n: usize) -> PlanarGraph {
        let rot: Vec<Vec<Vertex>> = (0..n)
            .map(|v| vec![(v + 1) % n, (v + n - 1) % n])
            .collect();
        PlanarGraph::from_rotation(rot).unwrap()
    }

    fn marks(n: usize, blue: &[Vertex], red: &[Vertex]) -> RBColoring {
        let mut rb = RBColoring::uncolored(n);
        for &v in blue {
            rb.set(v, Mark::Blue);
        }
        for &v in red {
            rb.set(v, Mark::Red);
        }
        rb
    }

    /// Outer 8-cycle with an inner 4-cycle 8-9-10-11 spoked to 0, 2, 4, 6.
    fn ring_host() -> PlanarGraph {
        PlanarGraph::from_rotation(vec![
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
        .unwrap()
    }

    fn c8_of(report: &ConditionReport) -> &ConditionEntry {
        report.entry("c8").unwrap()
    }

    #[test]
    fn forbidden_cycle_cases() {
        let c4 = cycle_graph(4);
        let cyc = CycleRef::new(vec![0, 1, 2, 3]);
        assert!(is_forbidden_cycle(&c4, &marks(4, &[0, 1, 2, 3], &[]), &cyc));
        assert!(!is_forbidden_cycle(&c4, &marks(4, &[0, 1, 2], &[3]), &cyc));

        let c6 = cycle_graph(6);
        let cyc6 = CycleRef::new((0..6).collect());
        assert!(!is_forbidden_cycle(
            &c6,
            &marks(6, &[0, 1, 2, 3, 4, 5], &[]),
            &cyc6
        ));

        let c5 = cycle_graph(5);
        let cyc5 = CycleRef::new((0..5).collect());
        assert!(is_forbidden_cycle(&c5, &marks(5, &[0, 1, 2, 3], &[4]), &cyc5));
        // Uncolored counts as non-blue.
        assert!(is_forbidden_cycle(&c5, &marks(5, &[0, 1, 2, 3], &[]), &cyc5));
        assert!(!is_forbidden_cycle(&c5, &marks(5, &[0, 1, 2], &[3, 4]), &cyc5));
    }

    #[test]
    fn dangerous_cycle_cases() {
        let c4 = cycle_graph(4);
        let cyc = CycleRef::new(vec![0, 1, 2, 3]);
        assert!(is_dangerous_cycle(&c4, &marks(4, &[0, 1, 2], &[3]), &cyc));
        // A forbidden cycle is not dangerous: the classes are disjoint.
        assert!(!is_dangerous_cycle(&c4, &marks(4, &[0, 1, 2, 3], &[]), &cyc));

        let c5 = cycle_graph(5);
        let cyc5 = CycleRef::new((0..5).collect());
        assert!(is_dangerous_cycle(&c5, &marks(5, &[0, 1, 2], &[3, 4]), &cyc5));
        assert!(!is_dangerous_cycle(&c5, &marks(5, &[0, 1, 2, 3], &[4]), &cyc5));
    }

    #[test]
    fn no_six_cycle_is_dangerous() {
        let c6 = cycle_graph(6);
        let cyc = CycleRef::new((0..6).collect());
        for code in 0..3usize.pow(6) {
            let mut rb = RBColoring::uncolored(6);
            let mut c = code;
            for v in 0..6 {
                rb.set(v, [Mark::Red, Mark::Blue, Mark::Uncolored][c % 3]);
                c /= 3;
            }
            assert!(!is_dangerous_cycle(&c6, &rb, &cyc));
        }
    }

    #[test]
    fn cycle_enumeration_counts() {
        let count_by_len = |g: &PlanarGraph| {
            let mut m = std::collections::BTreeMap::new();
            for c in cycles_up_to(g, 12) {
                *m.entry(c.len()).or_insert(0usize) += 1;
            }
            m
        };
        let prism = count_by_len(&fixtures::prism());
        assert_eq!(prism, [(3, 2), (4, 3), (5, 6), (6, 3)].into());
        let gadget = count_by_len(&fixtures::prism_gadget());
        assert_eq!(gadget, [(3, 2), (4, 1), (5, 4), (6, 5), (7, 2)].into());
        let k4 = count_by_len(&fixtures::k4());
        assert_eq!(k4, [(3, 4), (4, 3)].into());
    }

    #[test]
    fn scan_respects_marks_and_exemption() {
        let g = ring_host();
        // All red: no blue vertex, nothing to report.
        let all_red = marks(12, &[], &(0..12).collect::<Vec<_>>());
        assert!(scan_cycles(&g, &all_red, 12, None).is_empty());

        // All-blue inner square: forbidden (4 is not a multiple of 3).
        let rb = marks(12, &[8, 9, 10, 11], &[0, 1, 2, 3, 4, 5, 6, 7]);
        let hits = scan_cycles(&g, &rb, 12, None);
        assert!(hits
            .iter()
            .any(|(c, b)| *b == CycleBadness::Forbidden
                && c.vertices() == [8, 9, 10, 11]));
    }

    /// Square boundary 0-1-2-3 with an inner path 0-5-4-1 closing a 4-cycle
    /// through the boundary edge 0-1.
    fn pocket_host() -> PlanarGraph {
        PlanarGraph::from_rotation(vec![
            vec![3, 1, 5],
            vec![0, 2, 4],
            vec![1, 3],
            vec![2, 0],
            vec![1, 5],
            vec![4, 0],
        ])
        .unwrap()
    }

    #[test]
    fn dangerous_exemption_at_b0() {
        let g = pocket_host();
        let rb = marks(6, &[0, 4, 5], &[1, 2, 3]);
        let cyc = CycleRef::new(vec![0, 1, 4, 5]);
        assert!(is_dangerous_cycle(&g, &rb, &cyc));
        let no_spec = scan_cycles(&g, &rb, 12, None);
        assert_eq!(no_spec.len(), 1);
        assert_eq!(no_spec[0].1, CycleBadness::Dangerous);

        let spec = BoundarySpec::with_b0(vec![0, 1, 2, 3], 0);
        assert!(scan_cycles(&g, &rb, 12, Some(&spec)).is_empty());

        // The exemption needs b0 on the cycle: designate 2 instead.
        let spec2 = BoundarySpec::with_b0(vec![0, 1, 2, 3], 2);
        let rb2 = marks(6, &[1, 2, 4, 5], &[0, 3]);
        assert!(is_dangerous_cycle(&g, &rb2, &cyc));
        let still = scan_cycles(&g, &rb2, 12, Some(&spec2));
        assert!(!still.is_empty());
    }

    fn gadget_pentagon() -> (PlanarGraph, Vec<Vertex>) {
        (fixtures::prism_gadget(), vec![1, 0, 6, 3, 4])
    }

    #[test]
    fn gadget_boundary_all_conditions_pass() {
        let (g, outer) = gadget_pentagon();
        let spec = BoundarySpec::all_red(outer, 1, R0Kind::FourForbidden);
        let rb = derive_precoloring(&g, &spec).unwrap();
        assert_eq!(rb.get(2), Mark::Blue);
        assert_eq!(rb.get(5), Mark::Blue);
        let report = check_conditions(&g, &spec, &rb).unwrap();
        assert!(report.all_pass(), "failed: {:?}", report.failed());
    }

    #[test]
    fn r0_without_interior_neighbor_fails_c6() {
        let (g, outer) = gadget_pentagon();
        // Vertex 6 has no interior neighbor.
        let spec = BoundarySpec::all_red(outer, 6, R0Kind::FourForbidden);
        let rb = derive_precoloring(&g, &spec).unwrap();
        let report = check_conditions(&g, &spec, &rb).unwrap();
        assert_eq!(report.failed(), vec!["c6"]);
    }

    #[test]
    fn planted_blue_square_fails_c8_with_witness() {
        let g = ring_host();
        let spec = BoundarySpec::all_red(vec![0, 1, 2, 3, 4, 5, 6, 7], 0, R0Kind::FourForbidden);
        let mut rb = derive_precoloring(&g, &spec).unwrap();
        assert_eq!(rb.get(8), Mark::Uncolored);
        for v in [8, 9, 10, 11] {
            rb.set(v, Mark::Blue);
        }
        let report = check_conditions(&g, &spec, &rb).unwrap();
        assert!(!report.all_pass());
        match &c8_of(&report).witness {
            Some(Witness::Cycle { vertices, class }) => {
                assert_eq!(vertices, &[8, 9, 10, 11]);
                assert_eq!(*class, CycleBadness::Forbidden);
            }
            w => panic!("expected cycle witness, got {w:?}"),
        }
    }

    #[test]
    fn derived_ring_marking_has_dangerous_square() {
        let g = ring_host();
        let spec = BoundarySpec::all_red(vec![0, 1, 2, 3, 4, 5, 6, 7], 0, R0Kind::FourForbidden);
        let rb = derive_precoloring(&g, &spec).unwrap();
        assert_eq!(rb.get(9), Mark::Blue);
        assert_eq!(rb.get(10), Mark::Blue);
        assert_eq!(rb.get(11), Mark::Blue);
        assert_eq!(rb.get(8), Mark::Uncolored);
        let report = check_conditions(&g, &spec, &rb).unwrap();
        assert_eq!(report.failed(), vec!["c8"]);
        match &c8_of(&report).witness {
            Some(Witness::Cycle { class, .. }) => assert_eq!(*class, CycleBadness::Dangerous),
            w => panic!("expected cycle witness, got {w:?}"),
        }
    }

    #[test]
    fn spec_mismatch_cases() {
        let g = ring_host();
        // A cycle of the graph that is not a face.
        let not_face = BoundarySpec::all_red(
            vec![0, 1, 2, 3, 4, 10, 9, 8],
            0,
            R0Kind::FourForbidden,
        );
        assert!(derive_precoloring(&g, &not_face).is_err());
        // Not even a cycle.
        let not_cycle = BoundarySpec::all_red(vec![0, 1, 9], 0, R0Kind::FourForbidden);
        assert!(derive_precoloring(&g, &not_cycle).is_err());
        // Designated vertex off the boundary.
        let off = BoundarySpec::all_red(vec![0, 1, 2, 3, 4, 5, 6, 7], 9, R0Kind::FourForbidden);
        assert!(derive_precoloring(&g, &off).is_err());
    }

    /// Ring host with spokes only at 0 and 4, so r0' = 8 has two interior
    /// neighbors free of boundary contact.
    fn sparse_ring() -> PlanarGraph {
        PlanarGraph::from_rotation(vec![
            vec![7, 1, 8],
            vec![0, 2],
            vec![1, 3],
            vec![2, 4],
            vec![3, 5, 10],
            vec![4, 6],
            vec![5, 7],
            vec![6, 0],
            vec![11, 0, 9],
            vec![8, 10],
            vec![9, 4, 11],
            vec![10, 8],
        ])
        .unwrap()
    }

    #[test]
    fn derived_precoloring_turn_rule() {
        let g = sparse_ring();
        let outer = vec![0, 1, 2, 3, 4, 5, 6, 7];
        let right = BoundarySpec::all_red(outer.clone(), 0, R0Kind::RightForbidden);
        let rb = derive_precoloring(&g, &right).unwrap();
        assert_eq!(rb.get(9), Mark::Blue, "sharp-right neighbor is precolored");
        assert_eq!(rb.get(11), Mark::Uncolored);
        assert_eq!(rb.get(10), Mark::Blue, "boundary contact forces blue");
        assert_eq!(rb.get(8), Mark::Uncolored);

        let left = BoundarySpec::all_red(outer.clone(), 0, R0Kind::LeftForbidden);
        let rb = derive_precoloring(&g, &left).unwrap();
        assert_eq!(rb.get(11), Mark::Blue, "sharp-left neighbor is precolored");
        assert_eq!(rb.get(9), Mark::Uncolored);

        let four = BoundarySpec::all_red(outer, 0, R0Kind::FourForbidden);
        let rb = derive_precoloring(&g, &four).unwrap();
        assert_eq!(rb.get(9), Mark::Uncolored);
        assert_eq!(rb.get(11), Mark::Uncolored);
    }

    #[test]
    fn red_facial_4path_detection() {
        let g = ring_host();
        let spec = BoundarySpec::all_red(vec![0, 1, 2, 3, 4, 5, 6, 7], 0, R0Kind::FourForbidden);
        let all_red = marks(12, &[], &(0..12).collect::<Vec<_>>());
        let paths = red_facial_4paths(&g, &all_red, &spec);
        assert_eq!(paths.len(), 8);
        assert!(paths.contains(&vec![0, 8, 9, 2]));
        assert!(paths.contains(&vec![8, 11, 10, 9]));

        let rb = derive_precoloring(&g, &spec).unwrap();
        assert!(red_facial_4paths(&g, &rb, &spec).is_empty());
    }

    #[test]
    fn forbidden_turn_3path_detection() {
        let g = sparse_ring();
        let outer = vec![0, 1, 2, 3, 4, 5, 6, 7];
        let mut rb = marks(12, &[], &outer);
        rb.set(8, Mark::Red);
        rb.set(9, Mark::Red);
        rb.set(11, Mark::Red);
        rb.set(10, Mark::Red);

        let right = BoundarySpec::all_red(outer.clone(), 0, R0Kind::RightForbidden);
        let paths = red_facial_4paths(&g, &rb, &right);
        assert!(paths.contains(&vec![0, 8, 9]), "got {paths:?}");
        assert!(!paths.contains(&vec![0, 8, 11]));

        let left = BoundarySpec::all_red(outer.clone(), 0, R0Kind::LeftForbidden);
        let paths = red_facial_4paths(&g, &rb, &left);
        assert!(paths.contains(&vec![0, 8, 11]));
        assert!(!paths.contains(&vec![0, 8, 9]));

        let four = BoundarySpec::all_red(outer.clone(), 0, R0Kind::FourForbidden);
        let paths = red_facial_4paths(&g, &rb, &four);
        assert!(!paths.iter().any(|p| p.len() == 3));

        // Kind rules only bite when the whole 3-path is red.
        rb.set(9, Mark::Blue);
        let paths = red_facial_4paths(&g, &rb, &right);
        assert!(!paths.contains(&vec![0, 8, 9]));
    }

    #[test]
    fn preassignment_fixes_isolated_interior_neighbor_red() {
        let g = sparse_ring();
        let spec = BoundarySpec::all_red(
            vec![0, 1, 2, 3, 4, 5, 6, 7],
            0,
            R0Kind::RightForbidden,
        );
        let rb = derive_precoloring(&g, &spec).unwrap();
        assert_eq!(rb.get(8), Mark::Uncolored);
        let rb = r0_red_preassignment(&g, &spec, rb);
        assert_eq!(rb.get(8), Mark::Red);

        // With another boundary contact at r0', nothing is preassigned.
        let (g, outer) = gadget_pentagon();
        let spec = BoundarySpec::all_red(outer, 1, R0Kind::RightForbidden);
        let rb = derive_precoloring(&g, &spec).unwrap();
        let before = rb.clone();
        assert_eq!(r0_red_preassignment(&g, &spec, rb), before);

        // Four-forbidden kinds never preassign.
        let g2 = sparse_ring();
        let spec2 = BoundarySpec::all_red(
            vec![0, 1, 2, 3, 4, 5, 6, 7],
            0,
            R0Kind::FourForbidden,
        );
        let rb2 = derive_precoloring(&g2, &spec2).unwrap();
        let kept = r0_red_preassignment(&g2, &spec2, rb2.clone());
        assert_eq!(kept, rb2);
    }

    #[test]
    fn class_square_graphs() {
        let c6 = cycle_graph(6);
        let rb = marks(6, &[0, 2, 4], &[1, 3, 5]);
        let blue = blue_square_graph(&c6, &rb);
        assert_eq!(blue.edges(), vec![(0, 2), (0, 4), (2, 4)]);
        let red = red_square_graph(&c6, &rb);
        assert_eq!(red.edges(), vec![(1, 3), (1, 5), (3, 5)]);

        let all_blue = marks(6, &[0, 1, 2, 3, 4, 5], &[]);
        let blue = blue_square_graph(&c6, &all_blue);
        assert_eq!(blue.edge_count(), c6.square().edge_count());
        assert_eq!(red_square_graph(&c6, &all_blue).edge_count(), 0);
    }

    #[test]
    fn c9_facial_cycle_requirement() {
        // In the sparse ring, r0' = 8 lies on the inner square face 8-9-10-11,
        // which avoids the boundary: c9 holds.
        let g = sparse_ring();
        let spec = BoundarySpec::all_red(
            vec![0, 1, 2, 3, 4, 5, 6, 7],
            0,
            R0Kind::RightForbidden,
        );
        let rb = derive_precoloring(&g, &spec).unwrap();
        let report = check_conditions(&g, &spec, &rb).unwrap();
        assert!(report.entry("c9").unwrap().pass);
        // c2 fails here (vertices 9 and 11 have degree 2 in the interior).
        assert!(!report.entry("c2").unwrap().pass);
    }
}
