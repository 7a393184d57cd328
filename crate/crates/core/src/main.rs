//! Command-line surface: square construction, verified 7-coloring,
//! re-verification of stored colorings, and reproducible corpus runs.

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;
use wegner7::generators::{corpus, CorpusEntry, CorpusSpec};
use wegner7::graph::{is_planar, square, PlanarGraph, SimpleGraph};
use wegner7::io::{
    edge_list_hash, graph_hash, parse_graph6, parse_rot, write_rot, ColoringFile, RunReport,
    TimingsMs,
};
use wegner7::oracle;
use wegner7::solver::{
    kempe_swap, seven_color_with, verify_square_coloring, PaletteColoring, PipelineBudget,
    PipelineError, PipelinePath,
};

const EXIT_INPUT: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_BUG: u8 = 4;

#[derive(Parser)]
#[command(
    name = "wegner7",
    version,
    about = "Verified 7-coloring of squares of planar graphs with maximum degree 3"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Decomposition pipeline with exact fallback.
    Auto,
    /// Decomposition pipeline only; fail rather than fall back.
    Decomp,
    /// Exact search on the square only.
    Oracle,
}

impl Mode {
    fn name(self) -> &'static str {
        match self {
            Mode::Auto => "auto",
            Mode::Decomp => "decomp",
            Mode::Oracle => "oracle",
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the edge list of the square of the input graph.
    Square {
        /// Graph file: rotation system (.rot) or graph6 (.g6).
        input: PathBuf,
    },
    /// Produce a verified coloring of the square with at most 7 colors.
    Color {
        /// Graph file: rotation system (.rot) or graph6 (.g6).
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Auto)]
        mode: Mode,
        /// Derive an alternative verified coloring by seeded recolorings.
        #[arg(long)]
        seed: Option<u64>,
        /// Emit the full run report as JSON on stdout.
        #[arg(long)]
        json: bool,
        /// Also write the coloring JSON to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a stored coloring against a graph; exit 0 iff it is proper.
    Verify {
        /// Graph file: rotation system (.rot) or graph6 (.g6).
        input: PathBuf,
        /// Coloring JSON produced by `color --out`.
        coloring: PathBuf,
    },
    /// Generate a reproducible corpus, color every member, and summarize.
    Corpus {
        /// Vertex counts, even and at least 4.
        #[arg(long, value_delimiter = ',', default_value = "8,10,12,14,16")]
        sizes: Vec<usize>,
        /// Graphs per size.
        #[arg(long, default_value_t = 4)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Threads to spread instances over; per-instance work is
        /// single-threaded and per-instance results are independent of this.
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Include the tight composite host.
        #[arg(long)]
        include_tight: bool,
        /// Write each member as .rot plus a JSON sidecar into this directory.
        #[arg(long)]
        emit_dir: Option<PathBuf>,
        /// Emit all run reports as JSON on stdout.
        #[arg(long)]
        json: bool,
    },
}

struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn input(msg: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_INPUT,
            msg: msg.into(),
        }
    }

    fn budget(msg: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_BUDGET,
            msg: msg.into(),
        }
    }

    fn bug(msg: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_BUG,
            msg: msg.into(),
        }
    }
}

enum Loaded {
    Embedded(PlanarGraph),
    Abstract(SimpleGraph),
}

impl Loaded {
    fn simple(&self) -> SimpleGraph {
        match self {
            Loaded::Embedded(g) => g.to_simple(),
            Loaded::Abstract(g) => g.clone(),
        }
    }

    fn n(&self) -> usize {
        match self {
            Loaded::Embedded(g) => g.n(),
            Loaded::Abstract(g) => g.n(),
        }
    }

    fn hash(&self) -> String {
        match self {
            Loaded::Embedded(g) => graph_hash(g),
            Loaded::Abstract(g) => edge_list_hash(g),
        }
    }

    fn format(&self) -> &'static str {
        match self {
            Loaded::Embedded(_) => "rot",
            Loaded::Abstract(_) => "graph6",
        }
    }
}

fn load_graph(path: &Path) -> Result<Loaded, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    let is_g6 = path
        .extension()
        .is_some_and(|e| e == "g6" || e == "graph6")
        || text.trim_start().starts_with(">>graph6<<");
    if is_g6 {
        let g = parse_graph6(&text)
            .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
        Ok(Loaded::Abstract(g))
    } else {
        let g = parse_rot(&text)
            .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
        Ok(Loaded::Embedded(g))
    }
}

/// WEGNER7_BUDGET overrides the largest n the exact search accepts.
fn effective_budget() -> Result<PipelineBudget, Failure> {
    let mut budget = PipelineBudget::default();
    if let Ok(raw) = std::env::var("WEGNER7_BUDGET") {
        let n = raw
            .parse::<usize>()
            .map_err(|_| Failure::input(format!("WEGNER7_BUDGET={raw:?} is not a number")))?;
        budget.oracle_max_n = n;
    }
    Ok(budget)
}

fn main() -> ExitCode {
    // Die quietly on a closed pipe (`wegner7 square g.rot | head`) instead of
    // panicking mid-print.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Square { input } => cmd_square(&input),
        Cmd::Color {
            input,
            mode,
            seed,
            json,
            out,
        } => cmd_color(&input, mode, seed, json, out.as_deref()),
        Cmd::Verify { input, coloring } => cmd_verify(&input, &coloring),
        Cmd::Corpus {
            sizes,
            count,
            seed,
            workers,
            include_tight,
            emit_dir,
            json,
        } => cmd_corpus(&sizes, count, seed, workers, include_tight, emit_dir.as_deref(), json),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn cmd_square(input: &Path) -> Result<(), Failure> {
    let loaded = load_graph(input)?;
    let sq = match &loaded {
        Loaded::Embedded(g) => g.square(),
        Loaded::Abstract(g) => square(g),
    };
    println!("# square of {} ({} vertices, {} edges)", input.display(), sq.n(), sq.edge_count());
    for (u, v) in sq.edges() {
        println!("{u} {v}");
    }
    Ok(())
}

fn color_loaded(
    loaded: &Loaded,
    mode: Mode,
    budget: PipelineBudget,
) -> Result<(PaletteColoring, Option<PipelinePath>), Failure> {
    let simple = loaded.simple();
    if let Some(v) = (0..simple.n()).find(|&v| simple.degree(v) > 3) {
        return Err(Failure::input(format!(
            "vertex {v} has degree {} > 3",
            simple.degree(v)
        )));
    }
    match (loaded, mode) {
        (Loaded::Abstract(_), Mode::Decomp) => Err(Failure::input(
            "decomposition mode needs an embedding; provide a .rot file",
        )),
        (Loaded::Abstract(g), _) => {
            if !is_planar(g) {
                return Err(Failure::input("input graph is not planar"));
            }
            Ok((oracle_color(g, budget.oracle_max_n)?, None))
        }
        (Loaded::Embedded(g), Mode::Oracle) => {
            Ok((oracle_color(&g.to_simple(), budget.oracle_max_n)?, None))
        }
        (Loaded::Embedded(g), _) => {
            let mut budget = budget;
            if mode == Mode::Decomp {
                budget.oracle_max_n = 0;
            }
            let out = seven_color_with(g, budget).map_err(|e| match e {
                PipelineError::InputViolation(m) => Failure::input(m),
                PipelineError::TooLarge { n, limit } => Failure::budget(format!(
                    "exact fallback needed but n = {n} exceeds the limit {limit}"
                )),
                PipelineError::Internal(m) => Failure::bug(m),
            })?;
            Ok((out.coloring, Some(out.path)))
        }
    }
}

fn oracle_color(g: &SimpleGraph, max_n: usize) -> Result<PaletteColoring, Failure> {
    if g.n() > max_n {
        return Err(Failure::budget(format!(
            "exact search limited to {max_n} vertices, got {}; raise WEGNER7_BUDGET",
            g.n()
        )));
    }
    let sq = square(g);
    let colors = oracle::k_color(&sq, 7)
        .ok_or_else(|| Failure::bug("square not 7-colorable — theorem violated"))?;
    let mut pal = PaletteColoring::empty(g.n());
    for (v, &c) in colors.iter().enumerate() {
        pal.set(v, c as u8 + 1);
    }
    Ok(pal)
}

/// Walks the coloring to a different verified one, deterministically in the
/// seed, via recolorings that preserve properness.
fn reseed_coloring(pal: &mut PaletteColoring, sq: &SimpleGraph, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..4 * sq.n().max(4) {
        let v = rng.random_range(0..sq.n());
        let i = pal.get(v).expect("coloring is total");
        let j = rng.random_range(1..=7);
        if let Ok(next) = kempe_swap(pal, sq, v, i, j) {
            *pal = next;
        }
    }
}

fn cmd_color(
    input: &Path,
    mode: Mode,
    seed: Option<u64>,
    json: bool,
    out: Option<&Path>,
) -> Result<(), Failure> {
    let total_start = Instant::now();
    let loaded = load_graph(input)?;
    let budget = effective_budget()?;
    let color_start = Instant::now();
    let (mut pal, path) = color_loaded(&loaded, mode, budget)?;
    let color_ms = color_start.elapsed().as_millis();
    let sq = square(&loaded.simple());
    if let Some(seed) = seed {
        reseed_coloring(&mut pal, &sq, seed);
    }
    let verify_start = Instant::now();
    let verified = verify_proper(&loaded, &pal);
    let verify_ms = verify_start.elapsed().as_millis();
    if !verified {
        return Err(Failure::bug("produced coloring failed verification"));
    }
    let report = RunReport {
        input: input.display().to_string(),
        format: loaded.format().into(),
        mode: mode.name().into(),
        n: loaded.n(),
        verified,
        colors_used: pal.colors_used().len(),
        path,
        coloring: ColoringFile::new(loaded.hash(), &pal),
        timings_ms: TimingsMs {
            total: total_start.elapsed().as_millis(),
            color: color_ms,
            verify: verify_ms,
        },
    };
    if let Some(out_path) = out {
        let text = serde_json::to_string_pretty(&report.coloring)
            .map_err(|e| Failure::bug(format!("serialize coloring: {e}")))?;
        std::fs::write(out_path, text)
            .map_err(|e| Failure::input(format!("cannot write {}: {e}", out_path.display())))?;
    }
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report)
                .map_err(|e| Failure::bug(format!("serialize report: {e}")))?
        );
    } else {
        print_human_report(&report);
    }
    Ok(())
}

fn print_human_report(report: &RunReport) {
    println!(
        "{} ({}, {} vertices)  hash {}",
        report.input,
        report.format,
        report.n,
        &report.coloring.graph_hash[..12]
    );
    match &report.path {
        Some(p) => println!(
            "mode {}: reduced={} decompositions={} oracle_calls={}",
            report.mode, p.reduced, p.decompositions, p.oracle_calls
        ),
        None => println!("mode {}: exact search", report.mode),
    }
    println!(
        "colors used: {}  verified: {}  ({} ms)",
        report.colors_used, report.verified, report.timings_ms.total
    );
    for vc in &report.coloring.colors {
        println!("{}: {} ({})", vc.vertex, vc.color, vc.class);
    }
}

fn verify_proper(loaded: &Loaded, pal: &PaletteColoring) -> bool {
    match loaded {
        Loaded::Embedded(g) => verify_square_coloring(g, pal),
        Loaded::Abstract(g) => {
            pal.n() == g.n()
                && pal.is_total()
                && square(g)
                    .edges()
                    .into_iter()
                    .all(|(u, v)| pal.get(u) != pal.get(v))
        }
    }
}

fn cmd_verify(input: &Path, coloring: &Path) -> Result<(), Failure> {
    let loaded = load_graph(input)?;
    let text = std::fs::read_to_string(coloring)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", coloring.display())))?;
    let file: ColoringFile = serde_json::from_str(&text)
        .map_err(|e| Failure::input(format!("{}: {e}", coloring.display())))?;
    let want = loaded.hash();
    if file.graph_hash != want {
        return Err(Failure::input(format!(
            "graph hash mismatch: coloring is for {}, input hashes to {}",
            file.graph_hash, want
        )));
    }
    if file.n != loaded.n() {
        return Err(Failure::input(format!(
            "vertex count mismatch: coloring has {}, graph has {}",
            file.n,
            loaded.n()
        )));
    }
    let pal = file
        .to_coloring()
        .map_err(|e| Failure::input(e.to_string()))?;
    if !pal.is_total() {
        return Err(Failure::input("coloring leaves vertices uncolored"));
    }
    let sq = square(&loaded.simple());
    if let Some((u, v)) = sq
        .edges()
        .into_iter()
        .find(|&(u, v)| pal.get(u) == pal.get(v))
    {
        return Err(Failure::input(format!(
            "improper: square edge {u}-{v} has color {} on both ends",
            pal.get(u).unwrap()
        )));
    }
    println!("verified: {} colors on {} vertices", pal.colors_used().len(), file.n);
    Ok(())
}

struct CorpusRow {
    entry: CorpusEntry,
    report: RunReport,
}

fn run_corpus_member(entry: &CorpusEntry, budget: PipelineBudget) -> Result<RunReport, Failure> {
    let start = Instant::now();
    let out = seven_color_with(&entry.graph, budget).map_err(|e| match e {
        PipelineError::InputViolation(m) => Failure::input(format!("{}: {m}", entry.label)),
        PipelineError::TooLarge { n, limit } => Failure::budget(format!(
            "{}: exact fallback needed but n = {n} exceeds the limit {limit}",
            entry.label
        )),
        PipelineError::Internal(m) => Failure::bug(format!("{}: {m}", entry.label)),
    })?;
    let color_ms = start.elapsed().as_millis();
    let verify_start = Instant::now();
    let verified = verify_square_coloring(&entry.graph, &out.coloring);
    if !verified {
        return Err(Failure::bug(format!(
            "{}: coloring failed verification",
            entry.label
        )));
    }
    Ok(RunReport {
        input: entry.label.clone(),
        format: "rot".into(),
        mode: "auto".into(),
        n: entry.graph.n(),
        verified,
        colors_used: out.coloring.colors_used().len(),
        path: Some(out.path),
        coloring: ColoringFile::new(graph_hash(&entry.graph), &out.coloring),
        timings_ms: TimingsMs {
            total: start.elapsed().as_millis(),
            color: color_ms,
            verify: verify_start.elapsed().as_millis(),
        },
    })
}

fn cmd_corpus(
    sizes: &[usize],
    count: usize,
    seed: u64,
    workers: usize,
    include_tight: bool,
    emit_dir: Option<&Path>,
    json: bool,
) -> Result<(), Failure> {
    let spec = CorpusSpec {
        sizes: sizes.to_vec(),
        count,
        seed,
        include_composites: include_tight,
    };
    let entries = corpus(&spec).map_err(|e| Failure::input(e.to_string()))?;
    let budget = effective_budget()?;
    let workers = workers.max(1);

    let results: Vec<Result<RunReport, Failure>> = std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for chunk_id in 0..workers {
            let entries = &entries;
            handles.push(scope.spawn(move || {
                let mut out = Vec::new();
                for (i, entry) in entries.iter().enumerate() {
                    if i % workers == chunk_id {
                        out.push((i, run_corpus_member(entry, budget)));
                    }
                }
                out
            }));
        }
        let mut merged: Vec<Option<Result<RunReport, Failure>>> =
            (0..entries.len()).map(|_| None).collect();
        for handle in handles {
            for (i, r) in handle.join().expect("worker panicked") {
                merged[i] = Some(r);
            }
        }
        merged.into_iter().map(|r| r.expect("all indices covered")).collect()
    });

    let mut rows = Vec::new();
    for (entry, result) in entries.into_iter().zip(results) {
        let report = result.map_err(|f| Failure {
            code: f.code,
            msg: format!("corpus run failed — {}", f.msg),
        })?;
        rows.push(CorpusRow { entry, report });
    }

    if let Some(dir) = emit_dir {
        std::fs::create_dir_all(dir)
            .map_err(|e| Failure::input(format!("cannot create {}: {e}", dir.display())))?;
        for row in &rows {
            let rot_path = dir.join(format!("{}.rot", row.entry.label));
            std::fs::write(&rot_path, write_rot(&row.entry.graph))
                .map_err(|e| Failure::input(format!("cannot write {}: {e}", rot_path.display())))?;
            let sidecar = serde_json::json!({
                "label": row.entry.label,
                "meta": row.entry.meta,
                "report": row.report,
            });
            let json_path = dir.join(format!("{}.json", row.entry.label));
            std::fs::write(&json_path, serde_json::to_string_pretty(&sidecar).unwrap())
                .map_err(|e| Failure::input(format!("cannot write {}: {e}", json_path.display())))?;
        }
    }

    if json {
        let reports: Vec<&RunReport> = rows.iter().map(|r| &r.report).collect();
        println!(
            "{}",
            serde_json::to_string_pretty(&reports)
                .map_err(|e| Failure::bug(format!("serialize reports: {e}")))?
        );
        return Ok(());
    }

    println!(
        "{:<10} {:>3} {:>8} {:>6} {:>5} {:>7} {:>6} {:>14} {:>8}",
        "label", "n", "tri-free", "3conn", "c4ec", "light", "colors", "path", "verified"
    );
    for row in &rows {
        let m = &row.entry.meta;
        let p = row.report.path.expect("corpus runs use the pipeline");
        println!(
            "{:<10} {:>3} {:>8} {:>6} {:>5} {:>7} {:>6} {:>14} {:>8}",
            row.entry.label,
            m.n,
            m.triangle_free,
            m.three_connected,
            m.cyclically_4_edge_connected.map_or("-".into(), |b| b.to_string()),
            m.light_pair.map_or("-".into(), |(a, b)| format!("{a}+{b}")),
            row.report.colors_used,
            format!("d{}/o{}", p.decompositions, p.oracle_calls),
            row.report.verified
        );
    }
    let max_colors = rows.iter().map(|r| r.report.colors_used).max().unwrap_or(0);
    println!(
        "{}/{} verified, max colors {}",
        rows.iter().filter(|r| r.report.verified).count(),
        rows.len(),
        max_colors
    );
    Ok(())
}
