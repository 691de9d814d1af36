use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use nkit_core::algebraic::AlgebraicNumber;
use nkit_core::chow::{cycle_chow_form, philippon_height, philippon_tilde_height, PhilipponOptions, ProjectiveCycle};
use nkit_core::cm::{class_polynomial, cm_profile, fundamental_discriminants, weighted_exponent_probe, CMProfileRow};
use nkit_core::dynamics::{
    canonical_height, dyn_constants, forms_from_json, height_gap_bound, make_selfmap, preperiodic_test,
};
use nkit_core::error::Error;
use nkit_core::experiment::{emit_report, run_finiteness_experiment, ExperimentConfig, ReportFormat};
use nkit_core::heights::{house, l2_height, projective_height, weil_height, ProjectiveTuple};
use nkit_core::northcott::{
    build_tower, nc_house_lower_bound, nc_lower_bound, nc_upper_bound, BoundMode, Direction, Metric,
};
use nkit_core::numeric::Ball;
use nkit_core::thresholds::{threshold_abvar, threshold_dyn, threshold_main, threshold_proj};

#[derive(Parser)]
#[command(name = "nkit", version, about = "Heights, Northcott numbers and finiteness censuses")]
struct Cli {
    /// Working precision in bits.
    #[arg(long, global = true, env = "NKIT_PRECISION", default_value_t = 128)]
    precision_bits: u32,
    /// Seed for randomized quadrature.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Height of an algebraic number or projective point.
    Height {
        #[arg(long, value_enum)]
        kind: HeightKindArg,
        /// JSON, or a path to a JSON file.
        #[arg(long)]
        input: String,
    },
    Northcott {
        #[command(subcommand)]
        cmd: NorthcottCmd,
    },
    Tower {
        #[command(subcommand)]
        cmd: TowerCmd,
    },
    /// Chow form of a cycle.
    Chow {
        #[arg(long)]
        cycle: String,
    },
    /// Philippon height of a cycle.
    Philippon {
        #[arg(long)]
        cycle: String,
        /// Only the max-coefficient variant.
        #[arg(long)]
        tilde: bool,
        /// Quadrature nodes for curves.
        #[arg(long)]
        nodes: Option<usize>,
    },
    Dyn {
        #[command(subcommand)]
        cmd: DynCmd,
    },
    Cm {
        #[command(subcommand)]
        cmd: CmCmd,
    },
    Threshold {
        #[command(subcommand)]
        cmd: ThresholdCmd,
    },
    /// Census of objects below a height cutoff.
    Experiment(ExperimentArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum HeightKindArg {
    Weil,
    House,
    L2,
    Projective,
}

#[derive(Subcommand)]
enum NorthcottCmd {
    Bound {
        #[arg(long, value_enum)]
        direction: DirectionArg,
        #[arg(long, value_enum, default_value = "weil")]
        metric: MetricArg,
        #[arg(long = "C", allow_hyphen_values = true)]
        c: f64,
        #[arg(long)]
        d: u32,
        #[arg(long, value_enum, default_value = "simple")]
        mode: ModeArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DirectionArg {
    Lower,
    Upper,
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricArg {
    Weil,
    House,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Simple,
    Optimal,
    PerJConservative,
}

#[derive(Subcommand)]
enum TowerCmd {
    Build {
        #[arg(long)]
        t: f64,
        #[arg(long)]
        count: usize,
    },
}

#[derive(Subcommand)]
enum DynCmd {
    Canonical {
        #[arg(long)]
        map: String,
        #[arg(long)]
        point: String,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    Constants {
        #[arg(long)]
        n: u32,
        #[arg(long = "D")]
        d: u32,
    },
    /// Bound on |h(f(P)) - D h(P)|.
    Gap {
        #[arg(long)]
        map: String,
    },
    Preperiodic {
        #[arg(long)]
        map: String,
        #[arg(long)]
        point: String,
        #[arg(long, default_value_t = 64)]
        budget: usize,
    },
}

#[derive(Subcommand)]
enum CmCmd {
    Classpoly {
        #[arg(long, allow_hyphen_values = true)]
        disc: i64,
    },
    Profile {
        #[arg(long)]
        max_disc: i64,
        #[arg(long, default_value_t = 3)]
        min_disc: i64,
        #[arg(long, value_enum, default_value = "json")]
        format: TableFormat,
        /// Add a weighted-height probe at this exponent.
        #[arg(long, allow_hyphen_values = true)]
        gamma: Option<f64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum ThresholdCmd {
    Proj {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
        #[arg(long = "C", allow_hyphen_values = true)]
        c: f64,
        #[arg(long)]
        relative_c: Option<f64>,
        /// Accepted for symmetry; output is always JSON.
        #[arg(long)]
        json: bool,
    },
    Abvar {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        d: u32,
        #[arg(long = "C", allow_hyphen_values = true)]
        c: f64,
        #[arg(long)]
        h2: f64,
        /// Ambient dimension of the theta embedding.
        #[arg(long)]
        n: u32,
        #[arg(long)]
        json: bool,
    },
    Dyn {
        #[arg(long)]
        n: u32,
        #[arg(long = "D")]
        big_d: u32,
        #[arg(long)]
        d: u32,
        #[arg(long = "C", allow_hyphen_values = true)]
        c: f64,
        #[arg(long, default_value_t = 0.0)]
        h_f: f64,
        #[arg(long)]
        json: bool,
    },
    Main {
        #[arg(long)]
        d: u32,
        #[arg(long = "C", allow_hyphen_values = true)]
        c: f64,
        #[arg(long = "R", allow_hyphen_values = true)]
        r: f64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct ExperimentArgs {
    /// Full config as JSON or a path; overrides the flags below.
    #[arg(long)]
    config: Option<String>,
    #[arg(long, value_enum, default_value = "points")]
    target: TargetArg,
    #[arg(long, default_value_t = 1)]
    n: u32,
    #[arg(long, default_value_t = 1)]
    degree: u32,
    #[arg(long, default_value = "log 2")]
    cutoff: String,
    /// Self-map for the dynamics target.
    #[arg(long)]
    map: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    Points,
    ZeroCycles,
    PlaneDivisors,
    Dynamics,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Markdown,
}

type CliResult<T> = Result<T, Error>;

/// Inline JSON, or the contents of a file at that path.
fn json_input(s: &str) -> CliResult<Value> {
    let text = if Path::new(s).is_file() {
        std::fs::read_to_string(s).map_err(|e| Error::Parse(format!("{s}: {e}")))?
    } else {
        s.to_string()
    };
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))
}

fn parse<T: serde::de::DeserializeOwned>(v: Value) -> CliResult<T> {
    serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn profile_csv(rows: &[CMProfileRow]) -> String {
    let mut w = csv::Writer::from_writer(vec![]);
    w.write_record([
        "disc",
        "class_number",
        "height_mid",
        "height_rad",
        "house_log_mid",
        "house_log_rad",
        "ratio_h_mid",
        "ratio_house_mid",
    ])
    .expect("in-memory write");
    let mr = |b: &Ball| {
        let d = nkit_core::numeric::decimal::render(b);
        (d.mid, d.rad)
    };
    for r in rows {
        let (hm, hr) = mr(&r.height);
        let (lm, lr) = mr(&r.house_log);
        w.write_record([
            r.disc.to_string(),
            r.class_number.to_string(),
            hm,
            hr,
            lm,
            lr,
            mr(&r.ratio_h).0,
            mr(&r.ratio_house).0,
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf8")
}

fn run(cli: &Cli) -> CliResult<String> {
    let prec = cli.precision_bits.max(32);
    Ok(match &cli.cmd {
        Cmd::Height { kind, input } => {
            let v = json_input(input)?;
            let b = match kind {
                HeightKindArg::Weil => weil_height(&parse::<AlgebraicNumber>(v)?, prec)?,
                HeightKindArg::House => house(&parse::<AlgebraicNumber>(v)?, prec)?,
                HeightKindArg::L2 => l2_height(&parse::<ProjectiveTuple>(v)?, prec)?,
                HeightKindArg::Projective => projective_height(&parse::<ProjectiveTuple>(v)?, prec)?,
            };
            pretty(&b)
        }
        Cmd::Northcott {
            cmd: NorthcottCmd::Bound { direction, metric, c, d, mode },
        } => {
            let mode = match mode {
                ModeArg::Simple => BoundMode::Simple,
                ModeArg::Optimal => BoundMode::Optimal,
                ModeArg::PerJConservative => BoundMode::PerJConservative,
            };
            let (direction, metric) = (
                match direction {
                    DirectionArg::Lower => Direction::Lower,
                    DirectionArg::Upper => Direction::Upper,
                },
                match metric {
                    MetricArg::Weil => Metric::Weil,
                    MetricArg::House => Metric::House,
                },
            );
            let r = match (direction, metric) {
                (Direction::Lower, Metric::Weil) => nc_lower_bound(*c, *d, mode, prec)?,
                (Direction::Lower, Metric::House) => nc_house_lower_bound(*c, *d, mode, prec)?,
                (Direction::Upper, Metric::Weil) => nc_upper_bound(*c, *d, mode, prec)?,
                (Direction::Upper, Metric::House) => {
                    return Err(Error::Domain("upper bounds are for the Weil height only".into()))
                }
            };
            pretty(&r)
        }
        Cmd::Tower {
            cmd: TowerCmd::Build { t, count },
        } => pretty(&build_tower(*t, *count)?),
        Cmd::Chow { cycle } => {
            let v: ProjectiveCycle = parse(json_input(cycle)?)?;
            pretty(&cycle_chow_form(&v)?)
        }
        Cmd::Philippon { cycle, tilde, nodes } => {
            let v: ProjectiveCycle = parse(json_input(cycle)?)?;
            if *tilde {
                pretty(&json!({"h_ph_tilde": philippon_tilde_height(&v, prec)?}))
            } else {
                let mut opts = PhilipponOptions {
                    prec,
                    ..Default::default()
                };
                opts.qmc.seed = cli.seed;
                opts.qmc.threads = cli.threads;
                if let Some(k) = nodes {
                    opts.qmc.nodes = *k;
                }
                pretty(&philippon_height(&v, &opts)?)
            }
        }
        Cmd::Dyn { cmd } => match cmd {
            DynCmd::Canonical { map, point, tol } => {
                let f = make_selfmap(forms_from_json(&json_input(map)?)?)?;
                let p: ProjectiveTuple = parse(json_input(point)?)?;
                pretty(&canonical_height(&f, &p, *tol, prec)?)
            }
            DynCmd::Constants { n, d } => pretty(&dyn_constants(*n, *d, prec)?),
            DynCmd::Gap { map } => {
                let f = make_selfmap(forms_from_json(&json_input(map)?)?)?;
                pretty(&height_gap_bound(&f, prec)?)
            }
            DynCmd::Preperiodic { map, point, budget } => {
                let f = make_selfmap(forms_from_json(&json_input(map)?)?)?;
                let p: ProjectiveTuple = parse(json_input(point)?)?;
                pretty(&preperiodic_test(&f, &p, *budget)?)
            }
        },
        Cmd::Cm { cmd } => match cmd {
            CmCmd::Classpoly { disc } => {
                let h = class_polynomial(*disc)?;
                pretty(&json!({"disc": disc, "class_number": h.deg(), "coefficients": h}))
            }
            CmCmd::Profile { max_disc, min_disc, format, gamma } => {
                let discs: Vec<i64> = fundamental_discriminants(*max_disc)
                    .into_iter()
                    .filter(|d| d.abs() >= *min_disc)
                    .collect();
                let rows = cm_profile(&discs, prec)?;
                match format {
                    TableFormat::Csv => profile_csv(&rows),
                    TableFormat::Json => match gamma {
                        Some(g) => pretty(&json!({
                            "rows": rows,
                            "probe": weighted_exponent_probe(&rows, *g)?,
                        })),
                        None => pretty(&rows),
                    },
                }
            }
        },
        Cmd::Threshold { cmd } => {
            let r = match cmd {
                ThresholdCmd::Proj { n, d, c, relative_c, .. } => threshold_proj(*n, *d, *c, *relative_c, prec)?,
                ThresholdCmd::Abvar { g, d, c, h2, n, .. } => threshold_abvar(*g, *d, *c, *h2, *n, prec)?,
                ThresholdCmd::Dyn { n, big_d, d, c, h_f, .. } => threshold_dyn(*n, *big_d, *d, *c, *h_f, prec)?,
                ThresholdCmd::Main { d, c, r, .. } => {
                    if !r.is_finite() {
                        return Err(Error::Domain("R must be finite".into()));
                    }
                    threshold_main(*d, *c, &Ball::from_f64(*r, prec), prec)?
                }
            };
            pretty(&r)
        }
        Cmd::Experiment(a) => {
            let cfg = match &a.config {
                Some(s) => parse::<ExperimentConfig>(json_input(s)?)?,
                None => {
                    let mut cfg = ExperimentConfig::rational_points(a.n, a.degree, a.cutoff.parse()?);
                    cfg.precision_bits = prec;
                    cfg.target = match a.target {
                        TargetArg::Points => nkit_core::experiment::Target::Points { n: a.n },
                        TargetArg::ZeroCycles => nkit_core::experiment::Target::ZeroCycles { n: a.n },
                        TargetArg::PlaneDivisors => nkit_core::experiment::Target::PlaneDivisors,
                        TargetArg::Dynamics => {
                            let m = a
                                .map
                                .as_ref()
                                .ok_or_else(|| Error::Domain("the dynamics target needs --map".into()))?;
                            nkit_core::experiment::Target::Dynamics { map: json_input(m)? }
                        }
                    };
                    cfg
                }
            };
            let t = Instant::now();
            let r = run_finiteness_experiment(&cfg)?;
            eprintln!("census: {} witnesses in {:.2?}", r.total, t.elapsed());
            let fmt = match a.format {
                FormatArg::Json => ReportFormat::Json,
                FormatArg::Csv => ReportFormat::Csv,
                FormatArg::Markdown => ReportFormat::Markdown,
            };
            emit_report(&r, fmt)
        }
    })
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Resource(_) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        // fails only if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global();
    }
    match run(&cli) {
        Ok(doc) => {
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, doc) {
                    eprintln!("nkit: cannot write {}: {e}", path.display());
                    return ExitCode::from(1);
                }
            } else {
                print!("{doc}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("nkit: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
