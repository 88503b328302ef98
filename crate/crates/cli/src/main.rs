//! `spincalc`: enumerate spin structures, verify generation statements on
//! their finite shadows, build square-tiled surfaces and run curve-graph
//! experiments.
//!
//! Exit status: 0 on success, 1 when a verification fails, 2 on bad usage.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use spincalc::engine::{
    e6_chain_relation, long_arm_chain_relation, star_chain_relation, verify_main2, verify_main3,
    RelationCheck, VerificationReport, VerifyOptions,
};
use spincalc::graphs::{build_shadow, export_dot, graph_report, ShadowKind, DEFAULT_VERTEX_BOUND};
use spincalc::spin::{census, DEFAULT_ENUMERATION_BOUND};
use spincalc::systems::{preset, preset_table, AdmissibleSystem};
use spincalc::veech::Origami;
use spincalc::{Modulus, Parity, SpinStructure};

const DOMAIN_ENV: &str = "SPINCALC_MAX_DOMAIN";

/// `println!` that tolerates a closed stdout (e.g. piped into `head`).
macro_rules! out {
    ($($arg:tt)*) => {{
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    }};
}

#[derive(Parser)]
#[command(
    name = "spincalc",
    version,
    about = "Spin structures, twist groups and square-tiled surfaces"
)]
struct Cli {
    /// Worker threads for parallel stages (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for randomized steps; runs without it are fully deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count all Z/r spin structures of a genus, split by parity.
    Enumerate {
        #[arg(long)]
        genus: usize,
        #[arg(long = "r", default_value_t = 2)]
        r: u32,
        /// Refuse to enumerate more than this many structures.
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BOUND)]
        bound: u128,
        #[command(flatten)]
        out: JsonOut,
    },
    /// Run a verifier and print its report.
    Verify {
        #[command(subcommand)]
        which: Verify,
    },
    /// Build the square-tiled surface of a curve system.
    Origami {
        /// Preset name (E6, A4, C, V, S, U).
        #[arg(long, conflicts_with = "system")]
        preset: Option<String>,
        /// Genus for the families that need one.
        #[arg(long)]
        genus: Option<usize>,
        /// A system document instead of a preset.
        #[arg(long)]
        system: Option<PathBuf>,
        /// Print genus, stratum and parity.
        #[arg(long)]
        report: bool,
        #[command(flatten)]
        out: JsonOut,
    },
    /// Build a finite curve-graph shadow and check connectivity.
    Graph {
        #[arg(long, value_parser = parse_kind)]
        kind: ShadowKind,
        #[arg(long)]
        genus: usize,
        #[arg(long, value_enum)]
        parity: Option<ParityArg>,
        /// Explicit basis values instead of the standard structure.
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            conflicts_with = "parity"
        )]
        values: Option<Vec<i64>>,
        #[arg(long, default_value_t = DEFAULT_VERTEX_BOUND)]
        bound: usize,
        /// Write the graph in DOT format.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[command(flatten)]
        out: JsonOut,
    },
    /// List the built-in curve systems.
    Presets {
        #[command(flatten)]
        out: JsonOut,
    },
}

#[derive(Subcommand)]
enum Verify {
    /// Odd forms via C_g (S_2 in genus 2), even forms via V_g.
    Main2 {
        #[arg(long)]
        genus: usize,
        #[arg(long, value_enum)]
        parity: ParityArg,
        #[command(flatten)]
        common: VerifyArgs,
    },
    /// The Z/4 structure fixed by the E6 system.
    Main3 {
        #[command(flatten)]
        common: VerifyArgs,
    },
    /// Chain relations on homology.
    Relations {
        #[arg(long, default_value_t = 4)]
        genus: usize,
        /// Exponent of the three-curve chain on E6.
        #[arg(long, default_value_t = 6)]
        exponent: usize,
        #[command(flatten)]
        out: JsonOut,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Shift the reference splitting by this cocycle (2g integers).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    cocycle: Option<Vec<i64>>,
    #[command(flatten)]
    out: JsonOut,
}

#[derive(Args)]
struct JsonOut {
    /// Write the machine-readable report here.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ParityArg {
    Even,
    Odd,
}

impl From<ParityArg> for Parity {
    fn from(p: ParityArg) -> Parity {
        match p {
            ParityArg::Even => Parity::Even,
            ParityArg::Odd => Parity::Odd,
        }
    }
}

fn parse_kind(s: &str) -> Result<ShadowKind, String> {
    s.parse().map_err(|e: spincalc::Error| e.to_string())
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Verification,
    Io(String),
}

impl From<spincalc::Error> for Failure {
    fn from(e: spincalc::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

/// Writes next to the destination, then renames into place.
fn write_atomic(path: &Path, contents: &str) -> Outcome {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let io = |e: std::io::Error| Failure::Io(format!("{}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    if !contents.ends_with('\n') {
        tmp.write_all(b"\n").map_err(io)?;
    }
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

fn emit(out: &JsonOut, json: impl FnOnce() -> String) -> Outcome {
    match &out.json {
        Some(p) => write_atomic(p, &json()),
        None => Ok(()),
    }
}

fn domain_bound() -> Result<Option<usize>, Failure> {
    match std::env::var(DOMAIN_ENV) {
        Ok(v) => v.trim().parse().map(Some).map_err(|_| {
            Failure::Usage(format!(
                "{DOMAIN_ENV} must be a positive integer, got `{v}`"
            ))
        }),
        Err(_) => Ok(None),
    }
}

fn print_report(r: &VerificationReport) {
    out!("theorem     {}", r.theorem);
    out!(
        "system      {} (genus {}, r = {})",
        r.inputs.preset,
        r.inputs.genus,
        r.inputs.modulus
    );
    if let Some(s) = &r.structure {
        let vals: Vec<String> = s.values.iter().map(u32::to_string).collect();
        out!(
            "structure   [{}] mod {}, {} ({} solution(s))",
            vals.join(","),
            s.modulus,
            s.parity,
            s.solutions
        );
    }
    out!("order       {}", r.order);
    out!("expected    {}", r.expected_order);
    out!("oracle      {}", r.oracle);
    out!("claim       {}", r.relationship);
    for c in &r.checks {
        out!(
            "{:<11} {}: {}",
            if c.passed { "ok" } else { "FAILED" },
            c.name,
            c.detail
        );
    }
    out!("verdict     {}", if r.passed() { "pass" } else { "fail" });
}

fn finish_report(r: VerificationReport, out: &JsonOut) -> Outcome {
    print_report(&r);
    emit(out, || r.to_json())?;
    if r.passed() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn verify_options(common: &VerifyArgs, seed: Option<u64>) -> Result<VerifyOptions, Failure> {
    Ok(VerifyOptions {
        domain_bound: domain_bound()?,
        cocycle: common.cocycle.clone(),
        shuffle_seed: seed,
    })
}

fn relations(genus: usize, exponent: usize, out: &JsonOut) -> Outcome {
    let checks: Vec<RelationCheck> = vec![
        star_chain_relation(genus)?,
        long_arm_chain_relation(genus)?,
        e6_chain_relation(exponent)?,
    ];
    for c in &checks {
        out!(
            "{:<14} {:<4} {}",
            if c.holds { "holds" } else { "does not hold" },
            c.system,
            c.relation
        );
    }
    emit(out, || {
        serde_json::to_string_pretty(&serde_json::json!({
            "schema": spincalc::engine::REPORT_SCHEMA,
            "theorem": "relations",
            "checks": checks,
            "verdict": if checks.iter().all(|c| c.holds) { "pass" } else { "fail" },
        }))
        .expect("serializable")
    })?;
    if checks.iter().all(|c| c.holds) {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn origami(
    name: Option<&str>,
    genus: Option<usize>,
    system: Option<&Path>,
    report: bool,
    out: &JsonOut,
) -> Outcome {
    let s: AdmissibleSystem = match (name, system) {
        (Some(n), None) => preset(n, genus)?,
        (None, Some(p)) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
            AdmissibleSystem::from_json(&text)?
        }
        _ => {
            return Err(Failure::Usage(
                "give exactly one of --preset or --system".into(),
            ))
        }
    };
    let o: Origami = s.origami();
    out!("system      {} ({} curves)", s.name(), s.len());
    out!("squares     {}", o.squares());
    out!("h           {:?}", o.h());
    out!("v           {:?}", o.v());
    if report {
        let r = o.report();
        let zeros: Vec<String> = r.stratum.iter().map(u32::to_string).collect();
        out!("genus       {}", r.genus);
        out!("stratum     H({})", zeros.join(","));
        match r.parity {
            Some(p) => out!("parity      {p}"),
            None => out!("parity      undefined"),
        }
    }
    emit(out, || {
        if report {
            o.to_report_json()
        } else {
            o.to_json()
        }
    })
}

#[allow(clippy::too_many_arguments)]
fn graph(
    kind: ShadowKind,
    genus: usize,
    parity: Option<ParityArg>,
    values: Option<&[i64]>,
    bound: usize,
    dot: Option<&Path>,
    out: &JsonOut,
) -> Outcome {
    let r = Modulus::new(kind.modulus())?;
    let phi = match (values, parity) {
        (Some(v), _) => {
            if v.len() != 2 * genus {
                return Err(Failure::Usage(format!(
                    "--values needs {} entries for genus {genus}",
                    2 * genus
                )));
            }
            SpinStructure::new(r, v)?
        }
        (None, Some(p)) => {
            let std = SpinStructure::standard(genus, p.into());
            let vals: Vec<i64> = std.values().iter().map(|&x| x as i64).collect();
            SpinStructure::new(r, &vals)?
        }
        (None, None) => return Err(Failure::Usage("give --parity or --values".into())),
    };
    if genus == 0 {
        return Err(Failure::Usage("genus must be positive".into()));
    }
    let g = build_shadow(kind, &phi, bound)?;
    let rep = graph_report(&g)?;
    out!(
        "shadow      {} (genus {}, r = {})",
        rep.kind,
        rep.genus,
        rep.modulus
    );
    out!("structure   {phi}, {}", rep.parity);
    out!("vertices    {}", rep.vertices);
    out!("edges       {}", rep.edges);
    if rep.components.count <= 12 {
        out!(
            "components  {} (sizes {:?})",
            rep.components.count,
            rep.components.sizes
        );
    } else {
        let largest = rep.components.sizes.iter().max().copied().unwrap_or(0);
        out!("components  {} (largest {largest})", rep.components.count);
    }
    out!("diameter    {}", rep.components.largest_diameter);
    out!("statement   {}", rep.statement);
    for c in &rep.caveats {
        out!("caveat      {c}");
    }
    if let Some(p) = dot {
        write_atomic(p, &export_dot(&g, bound)?)?;
    }
    emit(out, || rep.to_json())
}

fn presets(out: &JsonOut) -> Outcome {
    let table = preset_table();
    out!(
        "{:<6} {:<6} {:<11} {:<7} shape",
        "family",
        "curves",
        "genus",
        "valid"
    );
    for p in &table {
        out!(
            "{:<6} {:<6} {:<11} {:<7} {}",
            p.family,
            p.size,
            p.genus,
            p.valid,
            p.shape
        );
    }
    emit(out, || {
        serde_json::to_string_pretty(&table).expect("serializable")
    })
}

fn run(cli: Cli) -> Outcome {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(Failure::Usage("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    match cli.command {
        Command::Enumerate {
            genus,
            r,
            bound,
            out,
        } => {
            if genus == 0 {
                return Err(Failure::Usage("genus must be positive".into()));
            }
            let c = census(genus, Modulus::new(r)?, bound)?;
            out!("genus {genus}, r = {r}: {} structures", c.total);
            if let (Some(e), Some(o)) = (c.even, c.odd) {
                out!("even={e} odd={o}");
            }
            emit(&out, || {
                serde_json::to_string_pretty(&c).expect("serializable")
            })
        }
        Command::Verify { which } => match which {
            Verify::Main2 {
                genus,
                parity,
                common,
            } => {
                let opts = verify_options(&common, cli.seed)?;
                finish_report(verify_main2(genus, parity.into(), &opts)?, &common.out)
            }
            Verify::Main3 { common } => {
                let opts = verify_options(&common, cli.seed)?;
                finish_report(verify_main3(&opts)?, &common.out)
            }
            Verify::Relations {
                genus,
                exponent,
                out,
            } => relations(genus, exponent, &out),
        },
        Command::Origami {
            preset,
            genus,
            system,
            report,
            out,
        } => origami(preset.as_deref(), genus, system.as_deref(), report, &out),
        Command::Graph {
            kind,
            genus,
            parity,
            values,
            bound,
            dot,
            out,
        } => graph(
            kind,
            genus,
            parity,
            values.as_deref(),
            bound,
            dot.as_deref(),
            &out,
        ),
        Command::Presets { out } => presets(&out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("spincalc: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("spincalc: cannot write {msg}");
            ExitCode::from(1)
        }
    }
}
