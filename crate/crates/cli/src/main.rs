use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anacont::formats::{self, FormatError};
use anacont::monodromy::expected_winding;
use anacont::{
    build_map, classify, continuable_exact, continue_along, expexp_demo, f_element_at_base, h_germ, lift_log,
    log_germ, reach_path, truth_table, ChainStatus, Complex64, ContinuationChain, ContinuationOptions, PathPolyline,
    Staircase, Truncation, Verdict,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Parser, Debug)]
#[command(name = "anacont", version, about = "Analytic continuation along paths around the staircase domain")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Truncation order of power-series germs (at least 8).
    #[arg(long, global = true, default_value_t = anacont::tol::ORDER, value_parser = clap::value_parser!(usize))]
    order: usize,
    #[arg(long, global = true, default_value_t = anacont::tol::LIFT_TOL)]
    lift_tol: f64,
    #[arg(long, global = true, default_value_t = anacont::tol::GEOM_TOL)]
    geom_tol: f64,
    #[arg(long, global = true, default_value_t = anacont::tol::CROSS_TOL)]
    cross_tol: f64,
    /// Truncated domain as n_min:n_max:y_max; y_max accepts a `pi` suffix, e.g. 8pi.
    #[arg(long, global = true, default_value = "-2:2:8pi", value_parser = parse_truncation, allow_hyphen_values = true)]
    truncation: Truncation,
    /// Boundary nodes of the conformal map.
    #[arg(long, global = true, default_value_t = 256)]
    resolution: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Open-path winding number of a path.
    Wind {
        #[arg(long)]
        path: PathBuf,
    },
    /// Logarithm lift of a path as CSV.
    Lift {
        #[arg(long)]
        path: PathBuf,
        /// Imaginary part of the lift at the first point.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        branch: f64,
    },
    /// Continue a germ along a path and emit the chain as CSV.
    Continue {
        #[arg(long)]
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = GermKind::F)]
        germ: GermKind,
        /// Branch of the logarithm germ at the path start.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        branch: f64,
    },
    /// Exact continuability of f along a path starting at 0.5.
    Oracle {
        #[arg(long)]
        path: PathBuf,
    },
    /// Classify a slit target for given M and N.
    Classify {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        omega: Complex64,
        #[arg(long = "m", allow_hyphen_values = true)]
        m: i64,
        #[arg(long = "n", allow_hyphen_values = true)]
        n: i64,
        /// Write the witness path (when continuable) to this file.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Truth table of slit classifications.
    Table {
        #[arg(long, value_parser = parse_range, default_value = "-2:2", allow_hyphen_values = true)]
        m_range: (i64, i64),
        #[arg(long, value_delimiter = ',', default_value = "0,1,2", allow_hyphen_values = true)]
        n_offsets: Vec<i64>,
        #[arg(long, default_value_t = 8)]
        samples: usize,
    },
    /// Path from 0.5 to a target along which f continues.
    Reach {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, required_unless_present = "random")]
        omega: Option<Complex64>,
        /// Check this many seeded random targets with |ω| in [e^-3, e^3] instead.
        #[arg(long, conflicts_with = "omega")]
        random: Option<usize>,
    },
    /// The two inverse branches of exp∘exp continued from e towards 1.
    DemoExpexp,
    /// Build the conformal map and emit its boundary nodes as CSV.
    BuildMap,
    /// Quality report of the conformal map as JSON.
    MapReport,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GermKind {
    Log,
    Lacunary,
    F,
}

enum CliError {
    Usage(String),
    Domain(String),
}

type Result<T> = std::result::Result<T, CliError>;

fn domain(e: impl std::fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

fn parse_truncation(s: &str) -> std::result::Result<Truncation, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, y] = parts[..] else {
        return Err("expected n_min:n_max:y_max".into());
    };
    let n_min = a.trim().parse::<i64>().map_err(|e| format!("n_min: {e}"))?;
    let n_max = b.trim().parse::<i64>().map_err(|e| format!("n_max: {e}"))?;
    let y = y.trim();
    let y_max = match y.strip_suffix("pi") {
        Some(k) if k.is_empty() => PI,
        Some(k) => k.parse::<f64>().map_err(|e| format!("y_max: {e}"))? * PI,
        None => y.parse::<f64>().map_err(|e| format!("y_max: {e}"))?,
    };
    Truncation::new(n_min, n_max, y_max).map_err(|e| e.to_string())
}

fn parse_complex(s: &str) -> std::result::Result<Complex64, String> {
    let (re, im) = s.split_once(',').ok_or("expected re,im")?;
    let re = re.trim().parse::<f64>().map_err(|e| format!("re: {e}"))?;
    let im = im.trim().parse::<f64>().map_err(|e| format!("im: {e}"))?;
    Ok(Complex64::new(re, im))
}

fn parse_range(s: &str) -> std::result::Result<(i64, i64), String> {
    let (a, b) = s.split_once(':').ok_or("expected lo:hi")?;
    let lo = a.trim().parse::<i64>().map_err(|e| format!("lo: {e}"))?;
    let hi = b.trim().parse::<i64>().map_err(|e| format!("hi: {e}"))?;
    Ok((lo, hi))
}

fn read_path(file: &PathBuf) -> Result<PathPolyline> {
    let text = std::fs::read_to_string(file).map_err(|e| CliError::Usage(format!("{}: {e}", file.display())))?;
    formats::parse_path_json(&text).map_err(|e| match e {
        FormatError::Malformed { .. } => CliError::Usage(format!("{}: {e}", file.display())),
        FormatError::InvalidPath(p) => CliError::Domain(format!("{}: {p}", file.display())),
    })
}

fn fmt_complex(z: Complex64) -> String {
    format!("{},{}", z.re, z.im)
}

fn chain_summary(chain: &ContinuationChain) -> String {
    match &chain.status {
        ChainStatus::Completed => format!("status: completed\nfinal_value: {}\n", fmt_complex(chain.last().value())),
        ChainStatus::Failed { t_fail, reason } => format!("status: failed\nt_fail: {t_fail}\nreason: {reason}\n"),
    }
}

fn run(cli: Cli) -> Result<String> {
    let g = &cli.global;
    if g.order < 8 {
        return Err(CliError::Usage(format!("--order must be at least 8, got {}", g.order)));
    }
    if g.resolution < 64 {
        return Err(CliError::Usage(format!("--resolution must be at least 64, got {}", g.resolution)));
    }
    let staircase = Staircase::new(g.geom_tol);
    let opts = ContinuationOptions {
        lift_tol: g.lift_tol,
        geom_tol: g.geom_tol,
        cross_tol: g.cross_tol,
        ..Default::default()
    };
    opts.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    let build = || build_map(g.truncation, g.resolution).map_err(domain);

    match &cli.command {
        Command::Wind { path } => {
            let p = read_path(path)?;
            let delta = lift_log(&p, 0.0).delta_im();
            let w = ((delta + g.lift_tol) / std::f64::consts::TAU).floor() as i64;
            Ok(format!("W={w}\n"))
        }
        Command::Lift { path, branch } => Ok(formats::lift_csv(&lift_log(&read_path(path)?, *branch))),
        Command::Continue { path, germ, branch } => {
            let p = read_path(path)?;
            let chain = match germ {
                GermKind::Log => {
                    let start = log_germ(p.start(), *branch, g.order).map_err(domain)?;
                    continue_along(&start, &p, &opts)
                }
                GermKind::Lacunary => {
                    let start = h_germ(p.start(), g.order).map_err(domain)?;
                    continue_along(&start, &p, &opts)
                }
                GermKind::F => {
                    if (p.start() - Complex64::new(0.5, 0.0)).norm() > 1e-12 {
                        return Err(CliError::Domain("the f germ is based at 0.5; the path must start there".into()));
                    }
                    let start = f_element_at_base(Arc::new(build()?), g.order).map_err(domain)?;
                    continue_along(&start, &p, &opts)
                }
            }
            .map_err(domain)?;
            eprint!("{}", chain_summary(&chain));
            Ok(formats::chain_csv(&chain))
        }
        Command::Oracle { path } => {
            let v = continuable_exact(&read_path(path)?, &staircase).map_err(domain)?;
            let mut out = format!("verdict: {}\n", v.verdict);
            if let Some(t) = v.first_exit_t {
                writeln!(out, "first_exit_t: {t}").unwrap();
            }
            writeln!(out, "lift_end: {}", fmt_complex(v.lift_end)).unwrap();
            Ok(out)
        }
        Command::Classify { omega, m, n, witness } => {
            let r = classify(*omega, *m, *n, &staircase).map_err(domain)?;
            let mut out = String::new();
            writeln!(out, "omega: {}", fmt_complex(r.omega)).unwrap();
            writeln!(out, "M: {}\nN: {}", r.m, r.n).unwrap();
            writeln!(out, "lift_end: {}", fmt_complex(r.lift_end)).unwrap();
            writeln!(out, "verdict: {}", r.verdict).unwrap();
            writeln!(out, "definition_winding: {}", r.definition_winding).unwrap();
            if let (Some(file), Some(w)) = (witness, &r.witness_path) {
                std::fs::write(file, formats::path_json(w)).map_err(|e| domain(format!("{}: {e}", file.display())))?;
            }
            Ok(out)
        }
        Command::Table { m_range, n_offsets, samples } => {
            let t = truth_table(m_range.0..=m_range.1, n_offsets, *samples, &staircase)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            Ok(formats::table_csv(&t))
        }
        Command::Reach { omega: Some(omega), .. } => {
            let p = reach_path(*omega, &staircase).map_err(domain)?;
            Ok(formats::path_json(&p) + "\n")
        }
        Command::Reach { omega: None, random } => {
            let count = random.unwrap_or(0);
            let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
            let mut out = String::from("omega_re,omega_im,lift_re,lift_im,winding,verdict\n");
            let mut all_ok = true;
            for _ in 0..count {
                let omega = Complex64::from_polar(rng.gen_range(-3.0f64..=3.0).exp(), rng.gen_range(-PI..PI));
                let p = reach_path(omega, &staircase).map_err(domain)?;
                let v = continuable_exact(&p, &staircase).map_err(domain)?;
                let target = staircase.choose_lift_target(omega);
                let w = anacont::winding_number(&p);
                let ok = v.verdict == Verdict::Continuable
                    && (v.lift_end - target).norm() < g.lift_tol
                    && w == expected_winding(omega, &staircase);
                all_ok &= ok;
                writeln!(out, "{},{},{},{},{},{}", omega.re, omega.im, v.lift_end.re, v.lift_end.im, w, v.verdict).unwrap();
            }
            writeln!(out, "reachability: {}", if all_ok { "PASS" } else { "FAIL" }).unwrap();
            Ok(out)
        }
        Command::DemoExpexp => {
            let r = expexp_demo(&opts).map_err(domain)?;
            let mut out = String::from("[branch A: l2 o l1]\n");
            out += &chain_summary(&r.branch_a);
            if let Some(z) = r.a_fail_point {
                writeln!(out, "fail_point: {}", fmt_complex(z)).unwrap();
            }
            out += "[branch B: l2 o l3]\n";
            out += &chain_summary(&r.branch_b);
            writeln!(out, "expected: {}", fmt_complex(r.b_expected)).unwrap();
            writeln!(out, "a_fails_near_1: {}", r.a_fails_near_one()).unwrap();
            writeln!(out, "b_matches: {}", r.b_matches(1e-6)).unwrap();
            Ok(out)
        }
        Command::BuildMap => {
            let m = build()?;
            let q = m.quality_report();
            eprintln!("quality: {}", if q.passes() { "PASS" } else { "FAIL" });
            Ok(formats::points_csv(m.nodes()))
        }
        Command::MapReport => Ok(formats::map_report_json(&build()?.quality_report()) + "\n"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.global.out.clone();
    match run(cli) {
        Ok(text) => {
            let written = match &out {
                Some(file) => std::fs::write(file, text),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            match written {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: cannot write output: {e}");
                    ExitCode::from(1)
                }
            }
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
