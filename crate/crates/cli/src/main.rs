use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use radial_core::arrangement::{self, build_arrangement, check_budget, classify_edges};
use radial_core::constructions::{
    gen_circle_pattern, gen_convex, gen_four_pattern, gen_random_sgp, verify_four_pattern_conditions,
    ColorScheme,
};
use radial_core::enumeration::{census, growth_experiment, walk_around, ExperimentKind};
use radial_core::kernel::format_rational;
use radial_core::verify::verify_all;
use radial_core::{
    build_order_partition, compute_stats, validate_strong_general_position, ArrangementStats,
    ColoredPointSet, Validation,
};

const VERSION: &str = env!("CARGO_PKG_VERSION");
const THREADS_ENV: &str = "RADIAL_THREADS";

#[derive(Parser, Debug)]
#[command(name = "radial", version, about = "Exact radial orderings of planar point sets")]
struct Cli {
    /// Largest projected face count C(C(n,2),2) a command may build.
    #[arg(long, global = true, default_value_t = 2_000_000)]
    budget: u128,
    /// Worker threads; overrides RADIAL_THREADS.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a point set.
    Gen {
        #[arg(long, value_enum)]
        kind: GenKind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// Designated observation points (lower4 only).
        #[arg(long)]
        qpoints: Option<PathBuf>,
        /// Coloring for random and convex sets.
        #[arg(long, value_enum, default_value_t = Colors::None)]
        colors: Colors,
    },
    /// Count or list the radial orderings of a set.
    Orderings {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        colored: bool,
        #[arg(long, conflicts_with = "count")]
        list: bool,
        #[arg(long)]
        count: bool,
    },
    /// Arrangement statistics as one CSV row, optionally an SVG drawing.
    Partition {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        stats: bool,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Walk around one point of the set.
    Walk {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        center: usize,
        #[arg(long)]
        csv: PathBuf,
    },
    /// Census growth over several sizes.
    Experiment {
        #[arg(long, value_enum)]
        kind: ExpKind,
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        csv: PathBuf,
    },
    /// Run the full invariant suite on a set.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GenKind {
    Random,
    Lower4,
    Upper2,
    Convex,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ExpKind {
    Random,
    Lower4,
    Upper2,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Colors {
    None,
    Balanced,
    Alternating,
}

impl From<Colors> for ColorScheme {
    fn from(c: Colors) -> Self {
        match c {
            Colors::None => ColorScheme::None,
            Colors::Balanced => ColorScheme::Balanced,
            Colors::Alternating => ColorScheme::Alternating,
        }
    }
}

/// Usage errors exit with 2, like argument errors.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = init_threads(cli.threads) {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) if e.downcast_ref::<Usage>().is_some() => {
            eprintln!("usage error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn init_threads(flag: Option<usize>) -> Result<()> {
    let count = match flag {
        Some(k) => Some(k),
        None => match std::env::var(THREADS_ENV) {
            Ok(v) => Some(v.trim().parse().with_context(|| format!("{THREADS_ENV}={v:?}"))?),
            Err(_) => None,
        },
    };
    if let Some(k) = count {
        rayon::ThreadPoolBuilder::new().num_threads(k).build_global()?;
    }
    Ok(())
}

/// `Ok(false)` when a requested check failed.
fn run(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::Gen { kind, n, seed, out, qpoints, colors } => {
            cmd_gen(*kind, *n, *seed, out, qpoints.as_deref(), *colors)
        }
        Command::Orderings { input, colored, list, count } => {
            cmd_orderings(input, *colored, *list, *count, cli.budget)
        }
        Command::Partition { input, stats, svg } => cmd_partition(input, *stats, svg.as_deref(), cli.budget),
        Command::Walk { input, center, csv } => cmd_walk(input, *center, csv),
        Command::Experiment { kind, sizes, seed, csv } => cmd_experiment(*kind, sizes, *seed, csv, cli.budget),
        Command::Verify { input } => cmd_verify(input, cli.budget),
    }
}

/// Writes next to `path` first, then renames over it.
fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let name = path.file_name().context("output path has no file name")?;
    let mut tmp_name = std::ffi::OsString::from(".");
    tmp_name.push(name);
    tmp_name.push(format!(".tmp{}", std::process::id()));
    let tmp = path.with_file_name(tmp_name);
    fs::write(&tmp, contents).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, path).with_context(|| format!("renaming onto {}", path.display()))?;
    Ok(())
}

fn read_set(path: &Path) -> Result<ColoredPointSet> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(ColoredPointSet::from_json(&text).with_context(|| format!("parsing {}", path.display()))?.set)
}

/// Refuses sets that are not in strong general position, printing why.
fn gate(s: &ColoredPointSet) -> Result<bool> {
    match validate_strong_general_position(s) {
        Validation::Valid => Ok(true),
        Validation::Violation(v) => {
            println!("FAIL validation: {v}");
            Ok(false)
        }
    }
}

fn csv_comment(command: &str, params: &[(&str, String)]) -> String {
    let mut line = format!("# radial {VERSION} {command}");
    for (k, v) in params {
        let _ = write!(line, " {k}={v}");
    }
    line.push('\n');
    line
}

fn meta(kind: &str, n: usize, seed: u64, params: Value) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("tool".into(), json!(format!("radial {VERSION}")));
    m.insert("kind".into(), json!(kind));
    m.insert("n".into(), json!(n));
    m.insert("seed".into(), json!(seed));
    m.insert("params".into(), params);
    m
}

fn cmd_gen(
    kind: GenKind,
    n: usize,
    seed: u64,
    out: &Path,
    qpoints: Option<&Path>,
    colors: Colors,
) -> Result<bool> {
    if qpoints.is_some() && !matches!(kind, GenKind::Lower4) {
        bail!(Usage("--qpoints is only produced by --kind lower4".into()));
    }
    let (set, params, q) = match kind {
        GenKind::Random => {
            let s = gen_random_sgp(n, colors.into(), seed)?;
            (s, json!({ "colors": format!("{colors:?}").to_lowercase() }), None)
        }
        GenKind::Convex => {
            let s = gen_convex(n, colors.into(), seed)?;
            (s, json!({ "colors": format!("{colors:?}").to_lowercase() }), None)
        }
        GenKind::Upper2 => {
            if n % 2 != 0 || n < 8 {
                bail!(Usage(format!("upper2 needs an even n of at least 8, got {n}")));
            }
            let cp = gen_circle_pattern(n, seed)?;
            let p = &cp.params;
            let params = json!({
                "half_n": p.half_n,
                "delta": format_rational(&p.delta),
                "perturbation": format_rational(&p.perturbation),
                "halvings": p.halvings,
                "rho_colored": cp.rho_colored,
            });
            (cp.set, params, None)
        }
        GenKind::Lower4 => {
            if n % 2 != 0 || n < 20 {
                bail!(Usage(format!("lower4 needs an even n of at least 20, got {n}")));
            }
            let fp = gen_four_pattern(n, seed)?;
            let p = &fp.params;
            let conditions = verify_four_pattern_conditions(&fp);
            let params = json!({
                "m": p.m,
                "r": p.r,
                "epsilon": format_rational(&p.epsilon),
                "alpha_t": format_rational(&p.alpha_t),
                "delta": format_rational(&p.delta),
                "far_spacing": format_rational(&p.far_spacing),
                "retry_budget": p.retry_budget,
                "halvings": p.halvings,
                "q_points": fp.q_points.len(),
                "conditions_hold": conditions.all(),
            });
            let q = ColoredPointSet::uncolored(fp.q_points.clone())?;
            (fp.set, params, Some(q))
        }
    };
    let kind_name = format!("{kind:?}").to_lowercase();
    let m = meta(&kind_name, n, seed, params);
    write_atomic(out, &set.to_json(Some(&m)))?;
    if let (Some(path), Some(q)) = (qpoints, &q) {
        let mut qm = m.clone();
        qm.insert("role".into(), json!("designated observation points"));
        write_atomic(path, &q.to_json(Some(&qm)))?;
    }
    println!("wrote {} points to {}", set.len(), out.display());
    if let (Some(path), Some(q)) = (qpoints, &q) {
        println!("wrote {} designated points to {}", q.len(), path.display());
    }
    Ok(true)
}

fn cmd_orderings(input: &Path, colored: bool, list: bool, count: bool, budget: u128) -> Result<bool> {
    let s = read_set(input)?;
    if !gate(&s)? {
        return Ok(false);
    }
    check_budget(s.len(), budget)?;
    if colored && s.colors().is_none() {
        bail!(Usage(format!("{} has no colors", input.display())));
    }
    let c = census(&s)?;
    let total = if colored { c.rho_colored.expect("colored set") } else { c.rho };
    if list {
        if colored {
            for (w, cells) in c.colored_class_sizes.as_ref().expect("colored set") {
                println!("{w} {cells}");
            }
        } else {
            for (o, cells) in &c.class_sizes {
                println!("{o} {cells}");
            }
        }
    } else if count {
        println!("{total}");
    } else {
        println!("rho={} rho_colored={} order_cells={} faces={}",
            c.rho,
            c.rho_colored.map(|v| v.to_string()).unwrap_or_else(|| "-".into()),
            c.order_cells,
            c.faces
        );
    }
    Ok(true)
}

fn cmd_partition(input: &Path, stats: bool, svg: Option<&Path>, budget: u128) -> Result<bool> {
    let s = read_set(input)?;
    if !gate(&s)? {
        return Ok(false);
    }
    check_budget(s.len(), budget)?;
    let arr = build_arrangement(&s)?;
    let kinds = classify_edges(&arr);
    let partition = build_order_partition(&arr, &kinds);
    if stats {
        let st = compute_stats(&arr, &partition)?;
        print!("{}", csv_comment("partition", &[("in", input.display().to_string())]));
        println!("{}", ArrangementStats::CSV_HEADER);
        println!("{}", st.csv_row());
    }
    if let Some(path) = svg {
        write_atomic(path, &arrangement::svg::render(&arr, &kinds, &s))?;
    }
    Ok(true)
}

fn cmd_walk(input: &Path, center: usize, csv: &Path) -> Result<bool> {
    let s = read_set(input)?;
    if !gate(&s)? {
        return Ok(false);
    }
    if center >= s.len() {
        bail!(Usage(format!("center {center} out of range for {} points", s.len())));
    }
    let w = walk_around(&s, center)?;
    let mut out = csv_comment(
        "walk",
        &[
            ("in", input.display().to_string()),
            ("center", center.to_string()),
            ("radius", format_rational(&w.radius)),
        ],
    );
    out.push_str("event,partner,observation_x,observation_y,order_before,word_before\n");
    for (i, e) in w.events.iter().enumerate() {
        let q = &w.observation_points[i];
        let word = w.words_seen.as_ref().map(|ws| ws[i].to_string()).unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{},\"{}\",{}",
            e.interval,
            e.partner,
            format_rational(&q.x),
            format_rational(&q.y),
            w.orders_seen[i],
            word
        );
    }
    write_atomic(csv, &out)?;
    let composes = w.compose_events().is_some_and(|o| o == w.orders_seen[0]);
    println!(
        "{} events, {} distinct words, transpositions compose to the identity: {composes}",
        w.events.len(),
        w.distinct_words()
    );
    Ok(composes)
}

fn cmd_experiment(kind: ExpKind, sizes: &[usize], seed: u64, csv: &Path, budget: u128) -> Result<bool> {
    let kind = match kind {
        ExpKind::Random => ExperimentKind::Random,
        ExpKind::Lower4 => ExperimentKind::Lower4,
        ExpKind::Upper2 => ExperimentKind::Upper2,
    };
    let table = growth_experiment(kind, sizes, seed, budget)?;
    let sizes_text: Vec<String> = sizes.iter().map(|s| s.to_string()).collect();
    let mut out = csv_comment(
        "experiment",
        &[
            ("kind", kind.name().into()),
            ("sizes", sizes_text.join(";")),
            ("seed", seed.to_string()),
            ("budget", budget.to_string()),
        ],
    );
    out.push_str(&table.to_csv());
    write_atomic(csv, &out)?;
    print!("{}", table.to_csv());
    Ok(true)
}

fn cmd_verify(input: &Path, budget: u128) -> Result<bool> {
    let s = read_set(input)?;
    if !gate(&s)? {
        return Ok(false);
    }
    check_budget(s.len(), budget)?;
    let report = verify_all(&s)?;
    for c in &report.checks {
        println!("{c}");
    }
    println!("{}", ArrangementStats::CSV_HEADER);
    println!("{}", report.stats.csv_row());
    Ok(report.all_passed())
}
