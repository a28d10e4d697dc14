//! `quiverconf`: configurations of stable translation quivers from the command line.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use quiverconf::bijection::{classical_quotient, verify_bijection};
use quiverconf::brauer::{count, enumerate, Family};
use quiverconf::config::{count_mod_tau, enumerate_with_stats, is_configuration, SearchOptions};
use quiverconf::exceptional::{
    dry_run, exceptional_table, run_all, write_outputs, CountRow, CountTable, EXCEPTIONAL_KINDS,
};
use quiverconf::export::{
    ascii_grid, configuration_from_json, configuration_to_json, quiver_from_json, quiver_to_ascii, quiver_to_dot,
    quiver_to_json, vertex_text,
};
use quiverconf::hom::{h_table, HomData, HomTable, ZCover};
use quiverconf::quiver::{build_quotient, build_z_window, CoverVertex, GroupSpec, TranslationQuiver};
use quiverconf::verify::{verify_paper, VerifyOptions};
use quiverconf::{build_dynkin, DynkinDiagram, DynkinKind, LabelScheme, VertexLabel};

#[derive(Parser)]
#[command(name = "quiverconf", version, about = "Configurations of stable translation quivers of Dynkin type")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Directory for written artifacts.
    #[arg(long, global = true, env = "QUIVERCONF_OUT")]
    out: Option<PathBuf>,
    /// Wall-clock limit for each configuration search, in seconds.
    #[arg(long, global = true)]
    time_budget: Option<f64>,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Accepted for compatibility; output never depends on a seed or on scheduling.
    #[arg(long, global = true)]
    seedless_determinism: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Show a Dynkin diagram with its valuations and row numbering.
    Dynkin(DiagramArgs),
    /// Build a window or quotient of ZΔ and export it.
    Quiver(QuiverArgs),
    /// The θ rows and h(-, x) for one base vertex.
    H(HArgs),
    #[command(subcommand)]
    Brauer(BrauerCommand),
    #[command(subcommand)]
    Config(ConfigCommand),
    #[command(subcommand)]
    Exceptional(ExceptionalCommand),
    /// Recompute every published number and print a pass/fail matrix.
    VerifyPaper(VerifyArgs),
}

#[derive(Args, Clone)]
struct DiagramArgs {
    /// Dynkin type: A, B, C, D, E6, E7, E8, F4 or G2.
    #[arg(long = "type")]
    kind: DynkinKind,
    /// Rank; implied for the exceptional types.
    #[arg(long, alias = "n")]
    rank: Option<usize>,
}

impl DiagramArgs {
    fn diagram(&self) -> Result<DynkinDiagram> {
        let rank = match (self.rank, self.kind.fixed_rank()) {
            (Some(r), _) | (None, Some(r)) => r,
            (None, None) => bail!("--rank is required for type {}", self.kind),
        };
        Ok(build_dynkin(self.kind, rank)?)
    }
}

#[derive(Args, Clone)]
struct ShapeArgs {
    #[command(flatten)]
    diagram: DiagramArgs,
    /// Group such as tau4, tau^4 or tau5rho; defaults to the period of the label torus.
    #[arg(long)]
    group: Option<GroupSpec>,
    /// A window `FIRST:COLUMNS` of ZΔ instead of a quotient.
    #[arg(long, conflicts_with = "group")]
    window: Option<String>,
}

/// The label-torus period: `n` for `A_{n+1}`, `2n` for `B_{n+1}`, `C_{n+1}`, `D_{n+2}`.
fn default_group(d: &DynkinDiagram) -> Result<GroupSpec> {
    let shift = match d.kind {
        DynkinKind::A => d.rank - 1,
        DynkinKind::B | DynkinKind::C => 2 * (d.rank - 1),
        DynkinKind::D => 2 * (d.rank - 2),
        other => return Ok(quiverconf::exceptional::job(other)?.group),
    };
    Ok(GroupSpec::tau(shift as u32)?)
}

impl ShapeArgs {
    fn build(&self) -> Result<TranslationQuiver> {
        let d = self.diagram.diagram()?;
        if let Some(w) = &self.window {
            let (first, num) = w.split_once(':').ok_or_else(|| anyhow!("window must look like FIRST:COLUMNS"))?;
            return Ok(build_z_window(&d, first.trim().parse()?, num.trim().parse()?)?);
        }
        let group = match self.group {
            Some(g) => g,
            None => default_group(&d)?,
        };
        Ok(build_quotient(&d, group)?)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
    Ascii,
}

#[derive(Args)]
struct QuiverArgs {
    #[command(flatten)]
    shape: ShapeArgs,
    #[arg(long, value_enum, default_value = "ascii")]
    format: Format,
    /// Vertices to mark, by id or label.
    #[arg(long, value_delimiter = ',')]
    mark: Vec<String>,
}

#[derive(Args)]
struct HArgs {
    #[command(flatten)]
    shape: ShapeArgs,
    /// Base vertex: an id, `COLUMN,VERTEX` or a label such as `[1 3]`.
    #[arg(long)]
    base: String,
    /// Work on ZΔ itself rather than a quotient.
    #[arg(long)]
    cover: bool,
}

#[derive(Subcommand)]
enum BrauerCommand {
    /// List the relations of one family.
    Enum {
        #[arg(long)]
        family: Family,
        /// Rank for plain relations, half the rank for the others.
        #[arg(long)]
        n: usize,
        /// Draw each relation as arcs over its points.
        #[arg(long)]
        ascii_disk: bool,
    },
    /// The three counting sequences.
    Count {
        #[arg(long, default_value_t = 10)]
        upto: usize,
    },
}

#[derive(Subcommand)]
enum ConfigCommand {
    /// Enumerate all configurations of a quotient.
    Enum {
        #[command(flatten)]
        shape: ShapeArgs,
        /// Also count τ-orbits.
        #[arg(long)]
        mod_tau: bool,
        /// Show each configuration on the diagonal grid.
        #[arg(long)]
        ascii: bool,
    },
    /// Check one vertex set against the definition.
    Check {
        #[arg(long)]
        quiver: PathBuf,
        #[arg(long)]
        set: PathBuf,
    },
    /// The correspondence with 2-Brauer relations on a classical quotient.
    Bijection {
        #[command(flatten)]
        diagram: DiagramArgs,
        /// Run both round trips over every instance.
        #[arg(long)]
        verify: bool,
    },
}

#[derive(Subcommand)]
enum ExceptionalCommand {
    Run {
        /// Restrict to these types.
        #[arg(long, value_delimiter = ',')]
        only: Vec<DynkinKind>,
        /// Print the counts modulo τ as well.
        #[arg(long)]
        mod_tau: bool,
        /// Only build the quivers and report their sizes.
        #[arg(long)]
        dry_run: bool,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Check ids to skip, such as E8.
    #[arg(long, value_delimiter = ',')]
    skip: Vec<String>,
    /// Corrupt one valuation first; the report must then fail.
    #[arg(long)]
    mutate: bool,
}

struct Ctx {
    json: bool,
    out: Option<PathBuf>,
    search: SearchOptions,
}

impl Ctx {
    fn emit(&self, text: &str) -> Result<()> {
        let mut stdout = std::io::stdout().lock();
        stdout.write_all(text.as_bytes())?;
        if !text.ends_with('\n') {
            stdout.write_all(b"\n")?;
        }
        Ok(())
    }

    fn emit_json(&self, value: &serde_json::Value) -> Result<()> {
        self.emit(&serde_json::to_string_pretty(value)?)
    }

    fn write_artifact(&self, name: &str, text: &str) -> Result<()> {
        if let Some(dir) = &self.out {
            fs::create_dir_all(dir)?;
            let path = dir.join(name);
            fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
        }
        Ok(())
    }
}

fn file_stem(q: &TranslationQuiver) -> String {
    q.name().chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect()
}

/// Resolves a vertex given as id, `COLUMN,VERTEX` or label.
fn resolve_vertex(q: &TranslationQuiver, text: &str) -> Result<usize> {
    let text = text.trim();
    if let Ok(id) = text.parse::<usize>() {
        return if id < q.len() { Ok(id) } else { bail!("no vertex {id}") };
    }
    if let Some((c, v)) = text.split_once(',') {
        if let (Ok(c), Ok(v)) = (c.trim().parse::<i64>(), v.trim().parse::<usize>()) {
            return q.project((c, v)).ok_or_else(|| anyhow!("no vertex at column {c}, diagram vertex {v}"));
        }
    }
    let label: VertexLabel = text.parse()?;
    let ids = quiverconf::labels::vertices_with_labels(q, &[label])?;
    ids.first().copied().ok_or_else(|| anyhow!("no vertex carries {label}"))
}

fn resolve_cover_vertex(d: &DynkinDiagram, text: &str) -> Result<CoverVertex> {
    if let Some((c, v)) = text.split_once(',') {
        if let (Ok(c), Ok(v)) = (c.trim().parse::<i64>(), v.trim().parse::<usize>()) {
            if v >= d.rank {
                bail!("{} has no vertex {v}", d.name());
            }
            return Ok((c, v));
        }
    }
    let label: VertexLabel = text.parse()?;
    Ok(LabelScheme::new(d)?.vertex_of(&label, 0)?)
}

fn cmd_dynkin(ctx: &Ctx, args: &DiagramArgs) -> Result<()> {
    let d = args.diagram()?;
    if ctx.json {
        return ctx.emit_json(&json!({
            "diagram": d,
            "rows": d.rows(),
            "twist": d.twist(),
            "symmetrizer": d.symmetrizer(),
        }));
    }
    let mut out = format!("{}\n", d.name());
    for e in &d.edges {
        out.push_str(&format!("  {} -- {}  ({},{})\n", e.i, e.j, e.d_ij, e.d_ji));
    }
    out.push_str(&format!("rows: {:?}\n", d.rows()));
    if let Some(t) = d.twist() {
        out.push_str(&format!("twist: {t:?}\n"));
    }
    ctx.emit(&out)
}

fn cmd_quiver(ctx: &Ctx, args: &QuiverArgs) -> Result<()> {
    let q = args.shape.build()?;
    let marks = args.mark.iter().map(|m| resolve_vertex(&q, m)).collect::<Result<Vec<_>>>()?;
    let format = if ctx.json { Format::Json } else { args.format };
    let (text, ext) = match format {
        Format::Json => (quiver_to_json(&q) + "\n", "json"),
        Format::Dot => (quiver_to_dot(&q, &marks), "dot"),
        Format::Ascii => (format!("{}\n{}", q.name(), quiver_to_ascii(&q, &marks)), "txt"),
    };
    ctx.write_artifact(&format!("{}.{ext}", file_stem(&q)), &text)?;
    ctx.emit(&text)
}

fn rows_json<V: Ord + Copy>(t: &HomTable<V>, name: impl Fn(V) -> serde_json::Value) -> serde_json::Value {
    let combo = |c: &quiverconf::combo::VertexCombination<V>| {
        c.iter().map(|(v, k)| json!({"vertex": name(v), "coefficient": k})).collect::<Vec<_>>()
    };
    json!({
        "base": name(t.base),
        "m": t.m,
        "omega": name(t.omega),
        "rows": t.rows.iter().map(combo).collect::<Vec<_>>(),
        "totals": combo(&t.totals),
    })
}

fn cell(h: u64) -> String {
    if h == 0 {
        ".".into()
    } else {
        h.to_string()
    }
}

fn cmd_h(ctx: &Ctx, args: &HArgs) -> Result<()> {
    if args.cover {
        let d = args.shape.diagram.diagram()?;
        let cover = ZCover::new(&d);
        let x = resolve_cover_vertex(&d, &args.base)?;
        let t = h_table(&cover, x)?;
        if ctx.json {
            return ctx.emit_json(&rows_json(&t, |(p, v)| json!([p, v])));
        }
        let first = t.support().iter().map(|y| y.0).min().unwrap_or(x.0);
        let last = t.support().iter().map(|y| y.0).max().unwrap_or(x.0);
        let w = build_z_window(&d, first, (last - first + 1) as usize)?;
        let mut out = format!("Z{} base {:?}, m = {}, omega = {:?}\n", d.name(), x, t.m, t.omega);
        for (n, row) in t.rows.iter().enumerate() {
            let parts: Vec<String> = row.iter().map(|((p, v), k)| format!("{k}*({p},{v})")).collect();
            out.push_str(&format!("theta_{n}: {}\n", parts.join(" + ")));
        }
        let value = |v: usize| w.position(v).map(|y| cell(t.h(y))).unwrap_or_default();
        out.push_str(&ascii_grid(&w, &|v| value(v), &|v| w.position(v) == Some(x)));
        return ctx.emit(&out);
    }
    let q = args.shape.build()?;
    let x = resolve_vertex(&q, &args.base)?;
    let t = h_table(&q, x)?;
    if ctx.json {
        return ctx.emit_json(&rows_json(&t, |v| json!(v)));
    }
    let names = vertex_text(&q);
    let mut out = format!("{} base {} ({}), m = {}, omega = {} ({})\n", q.name(), x, names[x], t.m, t.omega, names[t.omega]);
    for (n, row) in t.rows.iter().enumerate() {
        let parts: Vec<String> = row.iter().map(|(v, k)| format!("{k}*{v}")).collect();
        out.push_str(&format!("theta_{n}: {}\n", parts.join(" + ")));
    }
    out.push_str(&ascii_grid(&q, &|v| cell(t.h(v)), &|v| v == x));
    ctx.emit(&out)
}

fn cmd_brauer(ctx: &Ctx, cmd: &BrauerCommand) -> Result<()> {
    match cmd {
        BrauerCommand::Enum { family, n, ascii_disk } => {
            let list = enumerate(*family, *n);
            if ctx.json {
                let items: Vec<_> = list.iter().map(|b| json!({"sigma": b.one_based(), "classes": b.classes()})).collect();
                return ctx.emit_json(&json!({"family": family.name(), "n": n, "count": list.len(), "relations": items}));
            }
            let mut out = format!("{} relations, {} family, n = {n}\n", list.len(), family.name());
            for (k, b) in list.iter().enumerate() {
                out.push_str(&format!("B{}: {b}\n", k + 1));
                if *ascii_disk {
                    out.push_str(&b.ascii());
                    out.push_str("\n\n");
                }
            }
            ctx.emit(&out)
        }
        BrauerCommand::Count { upto } => {
            let row = |name: &str, f: Family, provenance: &str| CountRow {
                name: name.into(),
                values: (0..=*upto).map(|n| count(f, n).to_string()).collect(),
                provenance: provenance.into(),
            };
            let table = CountTable {
                columns: (0..=*upto).map(|n| n.to_string()).collect(),
                rows: vec![
                    row("M(n)", Family::Plain, "recursion"),
                    row("Ms(n)", Family::Symmetric, "recursion"),
                    row("Mc(n)", Family::Crossing, "recursion"),
                ],
            };
            if ctx.json {
                return ctx.emit_json(&serde_json::to_value(&table)?);
            }
            ctx.emit(&table.render())
        }
    }
}

fn cmd_config(ctx: &Ctx, cmd: &ConfigCommand) -> Result<bool> {
    match cmd {
        ConfigCommand::Enum { shape, mod_tau, ascii } => {
            let q = shape.build()?;
            let hom = HomData::compute(&q)?;
            let (configs, stats) = enumerate_with_stats(&q, &hom, ctx.search)?;
            let orbits = if *mod_tau { Some(count_mod_tau(&q, &configs)?) } else { None };
            let sets: Vec<serde_json::Value> = configs
                .iter()
                .map(|c| serde_json::from_str(&configuration_to_json(&q, c, true)))
                .collect::<std::result::Result<_, _>>()?;
            let doc = json!({
                "quiver": q.name(),
                "count": configs.len(),
                "mod_tau": orbits,
                "search_nodes": stats.nodes,
                "configurations": sets,
            });
            ctx.write_artifact(&format!("{}.configs.json", file_stem(&q)), &serde_json::to_string_pretty(&doc)?)?;
            if ctx.json {
                ctx.emit_json(&doc)?;
                return Ok(true);
            }
            let names = vertex_text(&q);
            let mut out = format!("{}: {} configurations", q.name(), configs.len());
            if let Some(o) = orbits {
                out.push_str(&format!(", {o} modulo tau"));
            }
            out.push('\n');
            for (k, c) in configs.iter().enumerate() {
                let mut shown: Vec<&str> = c.members.iter().map(|&v| names[v].as_str()).collect();
                shown.dedup();
                out.push_str(&format!("C{}: {}\n", k + 1, shown.join(" | ")));
                if *ascii {
                    out.push_str(&quiver_to_ascii(&q, &c.members));
                    out.push('\n');
                }
            }
            ctx.emit(&out)?;
            Ok(true)
        }
        ConfigCommand::Check { quiver, set } => {
            let q = quiver_from_json(&read(quiver)?)?;
            let c = configuration_from_json(&q, &read(set)?)?;
            let hom = HomData::compute(&q)?;
            let report = is_configuration(&q, &hom, &c.members)?;
            if ctx.json {
                ctx.emit_json(&serde_json::to_value(&report)?)?;
            } else {
                let mut out = format!("{}: {}\n", q.name(), if report.verdict { "configuration" } else { "not a configuration" });
                for v in &report.violations {
                    out.push_str(&format!("  {}: {} (vertices {:?})\n", v.condition, v.detail, v.witnesses));
                }
                ctx.emit(&out)?;
            }
            Ok(report.verdict)
        }
        ConfigCommand::Bijection { diagram, verify } => {
            let d = diagram.diagram()?;
            let n = match d.kind {
                DynkinKind::A | DynkinKind::B | DynkinKind::C => d.rank - 1,
                DynkinKind::D => d.rank - 2,
                other => bail!("{other} has no Brauer correspondence"),
            };
            let q = classical_quotient(d.kind, n)?;
            let report = verify_bijection(d.kind, n, ctx.search)?;
            if ctx.json {
                ctx.emit_json(&serde_json::to_value(&report)?)?;
                return Ok(!*verify || report.ok());
            }
            let mut out = format!("{}: {} configurations", q.name(), report.configurations);
            if d.kind == DynkinKind::D {
                out.push_str(&format!(
                    " ({} in the first class, {} in the second); {} symmetric and {} crossing relations\n",
                    report.first_class, report.second_class, report.relations, report.crossing_relations
                ));
            } else {
                out.push_str(&format!("; {} relations\n", report.relations));
            }
            if *verify {
                out.push_str(&format!("round trips: {}\n", if report.ok() { "identity on every instance" } else { "FAILED" }));
                for f in &report.failures {
                    out.push_str(&format!("  {f}\n"));
                }
            }
            ctx.emit(&out)?;
            Ok(!*verify || report.ok())
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn cmd_exceptional(ctx: &Ctx, cmd: &ExceptionalCommand) -> Result<bool> {
    let ExceptionalCommand::Run { only, mod_tau, dry_run: dry } = cmd;
    let kinds: Vec<DynkinKind> = if only.is_empty() { EXCEPTIONAL_KINDS.to_vec() } else { only.clone() };
    if *dry {
        let sizes = dry_run(&kinds)?;
        if ctx.json {
            let items: Vec<_> = sizes.iter().map(|(k, n)| json!({"kind": k, "vertices": n})).collect();
            ctx.emit_json(&json!(items))?;
        } else {
            ctx.emit(&sizes.iter().map(|(k, n)| format!("{k}: {n} vertices\n")).collect::<String>())?;
        }
        return Ok(true);
    }
    let results = run_all(&kinds, ctx.search).into_iter().collect::<quiverconf::Result<Vec<_>>>()?;
    if let Some(dir) = &ctx.out {
        write_outputs(dir, &results)?;
    }
    let ok = results.iter().all(|r| r.matches() && r.twist_stable != Some(false));
    if ctx.json {
        ctx.emit_json(&serde_json::to_value(&results)?)?;
        return Ok(ok);
    }
    let mut table = exceptional_table(&results);
    if !*mod_tau {
        table.rows.truncate(1);
    }
    table.rows.push(CountRow {
        name: "expected".into(),
        values: results.iter().map(|r| r.expected_total.to_string()).collect(),
        provenance: "published".into(),
    });
    if *mod_tau {
        table.rows.push(CountRow {
            name: "expected mod tau".into(),
            values: results.iter().map(|r| r.expected_mod_tau.to_string()).collect(),
            provenance: "published".into(),
        });
    }
    let mut out = table.render();
    out.push('\n');
    for r in &results {
        out.push_str(&format!("{}: {}\n", r.kind, if r.matches() { "PASS" } else { "FAIL" }));
    }
    ctx.emit(&out)?;
    Ok(ok)
}

fn cmd_verify(ctx: &Ctx, args: &VerifyArgs) -> Result<bool> {
    let opts = VerifyOptions { skip: args.skip.clone(), mutate: args.mutate, search: ctx.search };
    let report = verify_paper(&opts);
    ctx.write_artifact("verify-paper.json", &serde_json::to_string_pretty(&report)?)?;
    if ctx.json {
        ctx.emit_json(&serde_json::to_value(&report)?)?;
    } else {
        ctx.emit(&report.render())?;
    }
    Ok(report.passed())
}

fn run(cli: Cli) -> Result<bool> {
    if let Some(workers) = cli.workers {
        rayon::ThreadPoolBuilder::new().num_threads(workers).build_global()?;
    }
    let search = SearchOptions {
        time_budget: cli
            .time_budget
            .map(Duration::try_from_secs_f64)
            .transpose()
            .map_err(|e| anyhow!("bad --time-budget: {e}"))?,
    };
    let ctx = Ctx { json: cli.json, out: cli.out, search };
    match &cli.command {
        Command::Dynkin(a) => cmd_dynkin(&ctx, a).map(|_| true),
        Command::Quiver(a) => cmd_quiver(&ctx, a).map(|_| true),
        Command::H(a) => cmd_h(&ctx, a).map(|_| true),
        Command::Brauer(c) => cmd_brauer(&ctx, c).map(|_| true),
        Command::Config(c) => cmd_config(&ctx, c),
        Command::Exceptional(c) => cmd_exceptional(&ctx, c),
        Command::VerifyPaper(a) => cmd_verify(&ctx, a),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
