mod config;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use systolic_core::complex::{to_dot, Largeness, TypedComplex};
use systolic_core::coxeter::{build_coxeter_ball, CoxeterSystem};
use systolic_core::systolize::{davis_systolization, systolize, tetrahedron_of, CaseLabel};
use systolic_core::verify::{self, VerificationReport, RANK3_MARGIN, RANK4_MARGIN, SIX_CYCLE_MARGIN};

use config::{parse_exponents, PipelineConfig};

#[derive(Parser)]
#[command(name = "systolic", version, about = "Build, systolize and check finite balls in Coxeter complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the ball of a given radius around the base chamber.
    Build {
        /// l,k,m for a triangle group, or ab,ac,ad,bc,bd,cd for a tetrahedral one.
        #[arg(long)]
        exponents: String,
        #[arg(long)]
        radius: u32,
        /// Letter assignment to use for a rank-4 system that fits both cases.
        #[arg(long)]
        case: Option<CaseLabel>,
        #[arg(long, env = "SYSTOLIC_NODE_BUDGET", default_value_t = systolic_core::coxeter::DEFAULT_NODE_BUDGET)]
        node_budget: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Add the friend and acquaintance edges.
    Systolize {
        input: PathBuf,
        /// Apply the rank-3 construction to an excluded triangle type.
        #[arg(long)]
        force: bool,
        /// Output the face complex of the systolization instead.
        #[arg(long)]
        davis: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run verification suites; exits 1 when any check finds a violation.
    Check {
        /// Complex to check; not needed for the oracle suite.
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = 6)]
        k: usize,
        /// Depth below which objects are skipped (default depends on the check).
        #[arg(long)]
        margin: Option<u32>,
        /// Ball the input was systolized from, for the triangle check.
        #[arg(long)]
        original: Option<PathBuf>,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 10)]
        max_vertices: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write the complex as Graphviz or canonical JSON.
    Export {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Randomized checks of the k-largeness lemmas and the face complex.
    Oracle {
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 10)]
        max_vertices: usize,
        #[arg(long, default_value_t = 100)]
        face_trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Structural,
    Links,
    Edges,
    Triangles,
    Full6,
    Oracles,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Dot,
    Json,
}

fn read_complex(path: &Path) -> Result<TypedComplex> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let c = TypedComplex::from_json(&text).with_context(|| format!("parsing {}", path.display()))?;
    c.validate().with_context(|| format!("validating {}", path.display()))?;
    Ok(c)
}

fn write_out(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            match writeln!(out, "{text}") {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                r => r.context("writing to stdout"),
            }
        }
    }
}

fn system_of(c: &TypedComplex) -> Result<&CoxeterSystem> {
    c.metadata.system.as_ref().context("complex carries no Coxeter system")
}

fn has_new_edges(c: &TypedComplex) -> bool {
    c.edges().any(|e| e.2.is_new())
}

/// The complex with its new edges dropped.
fn original_of(c: &TypedComplex) -> Result<TypedComplex> {
    let edges = c.edges().filter(|e| !e.2.is_new()).collect::<Vec<_>>();
    let mut meta = c.metadata.clone();
    meta.provenance = "coxeter ball".into();
    Ok(TypedComplex::flag_span(c.vertices().to_vec(), edges, meta)?)
}

fn cmd_build(cfg: &PipelineConfig, output: Option<&Path>) -> Result<()> {
    let sys = cfg.system.as_ref().context("no system given")?;
    let mut ball = build_coxeter_ball(sys, &cfg.ball_options())?;
    if let Some(case) = cfg.case {
        ball.metadata.case = Some(case.to_string());
        tetrahedron_of(&ball, sys)?;
    }
    eprintln!(
        "built ball of radius {}: {} chambers, {} vertices, {} edges",
        cfg.radius,
        ball.maximal_simplices().len(),
        ball.vertex_count(),
        ball.edge_count()
    );
    write_out(output, &ball.to_json(true)?)
}

fn cmd_systolize(input: &Path, force: bool, davis: bool, output: Option<&Path>) -> Result<()> {
    let ball = read_complex(input)?;
    let sys = system_of(&ball)?.clone();
    let out = if davis { davis_systolization(&ball, &sys, force)? } else { systolize(&ball, &sys, force)? };
    let new = out.edges().filter(|e| e.2.is_new()).count();
    eprintln!("{}: {} vertices, {} edges ({new} new)", out.metadata.provenance, out.vertex_count(), out.edge_count());
    write_out(output, &out.to_json(true)?)
}

struct CheckArgs {
    suite: Suite,
    original: Option<PathBuf>,
    trials: usize,
    max_vertices: usize,
}

fn rank_of(c: &TypedComplex) -> Result<usize> {
    Ok(system_of(c)?.rank())
}

fn cmd_check(cfg: &PipelineConfig, input: Option<&Path>, args: &CheckArgs) -> Result<Vec<VerificationReport>> {
    let k = Largeness::Finite(cfg.k);
    let mut reports = Vec::new();
    let wants = |s: Suite| args.suite == s || args.suite == Suite::All;
    let complex = match input {
        Some(p) => Some(read_complex(p)?),
        None if args.suite == Suite::Oracles => None,
        None => bail!("suite {:?} needs an input complex", args.suite),
    };
    if let Some(c) = &complex {
        let rank = rank_of(c)?;
        let default_margin = if rank == 4 { RANK4_MARGIN } else { RANK3_MARGIN };
        let margin = cfg.margin.unwrap_or(default_margin);
        let systolized = has_new_edges(c) || c.metadata.provenance.contains("systolization");
        if wants(Suite::Links) {
            reports.push(verify::check_vertex_links(c, k, margin));
        }
        if wants(Suite::Edges) && (rank == 4 || args.suite == Suite::Edges) {
            reports.push(verify::check_edge_links(c, k, margin));
        }
        if wants(Suite::Structural) {
            if systolized {
                if args.suite == Suite::Structural {
                    bail!("structural checks run on an unsystolized ball");
                }
            } else if rank == 3 {
                reports.push(verify::check_structural_rank3(c));
            } else {
                let case = tetrahedron_of(c, system_of(c)?)?.case;
                if case != CaseLabel::AllGeq3 {
                    reports.push(verify::check_structural_rank4(c, case, margin));
                }
            }
        }
        if wants(Suite::Triangles) && (systolized || args.suite == Suite::Triangles) {
            let original = match &args.original {
                Some(p) => read_complex(p)?,
                None => original_of(c)?,
            };
            reports.push(verify::check_new_edge_triangles(&original, c));
        }
        if wants(Suite::Full6) && (systolized || args.suite == Suite::Full6) {
            reports.push(verify::check_full_six_cycles(c, cfg.margin.unwrap_or(SIX_CYCLE_MARGIN)));
        }
    }
    if wants(Suite::Oracles) {
        reports.push(verify::run_lemma_oracles(args.trials, args.max_vertices, cfg.seed)?);
        reports.push(verify::run_face_complex_oracle(args.trials.min(100), args.max_vertices.min(8), cfg.seed)?);
    }
    Ok(reports)
}

fn summarize(reports: &[VerificationReport]) {
    for r in reports {
        eprintln!(
            "{:<8} {}: scanned {}, skipped {}, violations {}, margin {} ({:.2?})",
            if r.passed() { "PASS" } else { "FAIL" },
            r.check_name,
            r.scanned,
            r.skipped_boundary,
            r.violations.len(),
            r.margin_used,
            r.elapsed
        );
    }
}

fn finish_reports(reports: &[VerificationReport], output: Option<&Path>) -> Result<ExitCode> {
    summarize(reports);
    write_out(output, &serde_json::to_string_pretty(reports)?)?;
    Ok(if reports.iter().all(VerificationReport::passed) { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_export(input: &Path, format: Format, output: Option<&Path>) -> Result<()> {
    let c = read_complex(input)?;
    let text = match format {
        Format::Dot => to_dot(&c),
        Format::Json => c.to_json(true)?,
    };
    write_out(output, text.trim_end())
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Build { exponents, radius, case, node_budget, output } => {
            let cfg = PipelineConfig {
                system: Some(parse_exponents(&exponents)?),
                radius,
                case,
                node_budget,
                ..Default::default()
            };
            cfg.validate()?;
            cmd_build(&cfg, output.as_deref())?;
        }
        Command::Systolize { input, force, davis, output } => cmd_systolize(&input, force, davis, output.as_deref())?,
        Command::Check { input, suite, k, margin, original, trials, max_vertices, seed, output } => {
            let cfg = PipelineConfig { k, margin, seed, ..Default::default() };
            cfg.validate()?;
            let args = CheckArgs { suite, original, trials, max_vertices };
            let reports = cmd_check(&cfg, input.as_deref(), &args)?;
            return finish_reports(&reports, output.as_deref());
        }
        Command::Export { input, format, output } => cmd_export(&input, format, output.as_deref())?,
        Command::Oracle { trials, max_vertices, face_trials, seed, output } => {
            let reports = vec![
                verify::run_lemma_oracles(trials, max_vertices, seed)?,
                verify::run_face_complex_oracle(face_trials, max_vertices.min(8), seed)?,
            ];
            return finish_reports(&reports, output.as_deref());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
