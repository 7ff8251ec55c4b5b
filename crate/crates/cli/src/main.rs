//! `braidspectra`: batch experiments over Burau representations of 3-strand
//! braids, written out as CSV with JSON metadata headers.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use braidspectra::braid::BraidWord;
use braidspectra::explab::{self, VerifyConfig, WordSampler};
use braidspectra::lyapunov::{self, McParams, MuSpec};
use braidspectra::sl2walk;
use braidspectra::spectral::GridField;
use braidspectra_cli::report::{fmt_f64, write_csv};

#[derive(Parser)]
#[command(name = "braidspectra", version, about)]
struct Cli {
    /// Root seed; every output records it.
    #[arg(long, global = true, default_value_t = 12345)]
    seed: u64,
    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// Scale preset: `ci` finishes in minutes, `paper` reproduces
    /// publication-scale statistics.
    #[arg(long, global = true, value_enum, default_value_t = Preset::Ci)]
    preset: Preset,
    /// Circle-membership tolerance for root classification.
    #[arg(long, global = true, default_value_t = 1e-6)]
    tol: f64,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Preset {
    Ci,
    Paper,
}

#[derive(Args)]
struct LengthArgs {
    /// Mean word length for the truncated-normal sampler.
    #[arg(long)]
    length_mean: Option<f64>,
    /// Length standard deviation.
    #[arg(long)]
    length_std: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Alexander-root clouds for random positive knot words.
    RootCloud {
        /// Number of sampled words.
        #[arg(long)]
        count: Option<usize>,
        /// Word-list file (one word over a/b/A/B per line, `#` comments);
        /// overrides sampling.
        #[arg(long)]
        words: Option<PathBuf>,
        #[command(flatten)]
        length: LengthArgs,
    },
    /// Theorem-backed verification sweeps; exits nonzero on any violation.
    Verify,
    /// Rademacher drift of the uniform walk.
    Drift {
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// First-syllable hitting masses of the walk boundary.
    Hitting {
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long)]
        samples: Option<usize>,
        /// Require a stable prefix over the trailing half of each walk.
        #[arg(long)]
        confirm: bool,
    },
    /// Normalized signature statistics across walk lengths.
    Clt {
        /// Comma-separated walk lengths.
        #[arg(long, value_delimiter = ',')]
        lengths: Option<Vec<usize>>,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Lyapunov exponent and bifurcation density on a grid.
    LyapunovGrid {
        /// Grid as x0,x1,y0,y1,nx,ny.
        #[arg(long, value_delimiter = ',')]
        grid: Option<Vec<f64>>,
        #[arg(long)]
        walks: Option<usize>,
        #[arg(long)]
        walk_length: Option<usize>,
    },
    /// Scan right-half-plane polynomial coefficients for sign failures.
    RhScan {
        #[arg(long)]
        count: Option<usize>,
        #[arg(long)]
        max_length: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if rayon::ThreadPoolBuilder::new().num_threads(n).build_global().is_err() {
            eprintln!("warning: thread pool already initialized");
        }
    }
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn meta(cli: &Cli, command: &str, params: serde_json::Value) -> serde_json::Value {
    serde_json::json!({
        "command": command,
        "seed": cli.seed,
        "preset": match cli.preset { Preset::Ci => "ci", Preset::Paper => "paper" },
        "tol": cli.tol,
        "params": params,
        "version": format!("braidspectra {}", env!("CARGO_PKG_VERSION")),
    })
}

fn read_word_file(path: &Path) -> Result<Vec<BraidWord>, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let mut words = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        words.push(
            line.parse::<BraidWord>()
                .map_err(|e| format!("{}:{}: {e}", path.display(), i + 1))?,
        );
    }
    Ok(words)
}

fn run(cli: &Cli) -> Result<ExitCode, String> {
    match &cli.command {
        Command::RootCloud { count, words, length } => {
            let (mean, std) = match cli.preset {
                Preset::Ci => (300.0, 80.0),
                Preset::Paper => (500.0, 170.0),
            };
            let mean = length.length_mean.unwrap_or(mean);
            let std = length.length_std.unwrap_or(std);
            let n = count.unwrap_or(match cli.preset {
                Preset::Ci => 100,
                Preset::Paper => 2500,
            });
            let result = if let Some(file) = words {
                let list = read_word_file(file)?;
                explab::root_cloud_for_words(&list, cli.tol).map_err(|e| e.to_string())?
            } else {
                let sampler = WordSampler::LengthDistribution { mean, std };
                explab::root_cloud(n, &sampler, cli.seed, cli.tol).map_err(|e| e.to_string())?
            };
            let m = meta(
                cli,
                "root-cloud",
                serde_json::json!({"count": n, "length_mean": mean, "length_std": std,
                                   "words_file": words.as_ref().map(|p| p.display().to_string())}),
            );
            let dir = cli.out.join("root-cloud");
            write_csv(
                dir.join("roots.csv"),
                &m,
                &["word_id", "re", "im", "multiplicity", "flags"],
                result.roots.iter().map(|r| {
                    vec![
                        r.word_id.to_string(),
                        fmt_f64(r.re),
                        fmt_f64(r.im),
                        r.multiplicity.to_string(),
                        r.flags.clone(),
                    ]
                }),
            )
            .map_err(|e| e.to_string())?;
            write_csv(
                dir.join("words.csv"),
                &m,
                &[
                    "word_id",
                    "word",
                    "length",
                    "delta_degree",
                    "n_roots",
                    "n_on_circle",
                    "circle_fraction",
                    "on_arc_right_exact",
                    "two_thirds_bound",
                    "bound_sharp",
                ],
                result.words.iter().map(|w| {
                    vec![
                        w.word_id.to_string(),
                        w.word.clone(),
                        w.length.to_string(),
                        w.delta_degree.to_string(),
                        w.n_roots.to_string(),
                        w.n_on_circle.to_string(),
                        fmt_f64(w.circle_fraction),
                        w.on_arc_right_exact.to_string(),
                        w.two_thirds_bound.to_string(),
                        w.bound_sharp.to_string(),
                    ]
                }),
            )
            .map_err(|e| e.to_string())?;
            write_csv(
                dir.join("summary.csv"),
                &m,
                &["mean_circle_fraction", "sharp_fraction", "n_words"],
                [vec![
                    fmt_f64(result.mean_circle_fraction),
                    fmt_f64(result.sharp_fraction),
                    result.words.len().to_string(),
                ]],
            )
            .map_err(|e| e.to_string())?;
            println!(
                "root-cloud: {} words, mean circle fraction {:.4}, sharp fraction {:.4}",
                result.words.len(),
                result.mean_circle_fraction,
                result.sharp_fraction
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify => {
            let cfg = match cli.preset {
                Preset::Ci => VerifyConfig::ci(cli.seed),
                Preset::Paper => {
                    let mut c = VerifyConfig::ci(cli.seed);
                    c.definite_cases *= 10;
                    c.root_free_cases *= 10;
                    c.det_cases *= 10;
                    c.arc_cases *= 10;
                    c.bound_cases *= 10;
                    c
                }
            };
            let report = explab::verify(&cfg);
            let m = meta(cli, "verify", serde_json::to_value(cfg).unwrap());
            write_csv(
                cli.out.join("verify").join("verify.csv"),
                &m,
                &["suite", "cases", "violations", "offenders"],
                report.suites.iter().map(|s| {
                    vec![
                        s.name.clone(),
                        s.cases.to_string(),
                        s.violations.to_string(),
                        s.offenders.join("|"),
                    ]
                }),
            )
            .map_err(|e| e.to_string())?;
            for s in &report.suites {
                println!(
                    "verify {: <32} cases {: >6} violations {}",
                    s.name, s.cases, s.violations
                );
            }
            if report.ok() {
                println!("verify: all suites clean");
                Ok(ExitCode::SUCCESS)
            } else {
                println!("verify: VIOLATIONS FOUND");
                Ok(ExitCode::from(1))
            }
        }
        Command::Drift { steps, samples } => {
            let steps = steps.unwrap_or(10_000);
            let samples = samples.unwrap_or(match cli.preset {
                Preset::Ci => 10_000,
                Preset::Paper => 100_000,
            });
            let result = sl2walk::drift_experiment(steps, samples, cli.seed);
            let m = meta(cli, "drift", serde_json::json!({"steps": steps, "samples": samples}));
            let dir = cli.out.join("drift");
            write_csv(
                dir.join("samples.csv"),
                &m,
                &["sample_id", "rademacher", "normalized"],
                result.per_sample.iter().enumerate().map(|(i, &r)| {
                    vec![i.to_string(), r.to_string(), fmt_f64(r as f64 / steps as f64)]
                }),
            )
            .map_err(|e| e.to_string())?;
            write_csv(
                dir.join("stats.csv"),
                &m,
                &["n_steps", "mean_normalized", "variance_normalized", "batch", "exact_drift"],
                [vec![
                    result.stats.n_steps.to_string(),
                    fmt_f64(result.stats.mean),
                    fmt_f64(result.stats.variance_normalized),
                    result.stats.batch.to_string(),
                    fmt_f64(sl2walk::exact_drift()),
                ]],
            )
            .map_err(|e| e.to_string())?;
            println!(
                "drift: mean R/n = {:.6} (target {:.6}), normalized variance {:.4}",
                result.stats.mean,
                sl2walk::exact_drift(),
                result.stats.variance_normalized
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Hitting { steps, samples, confirm } => {
            let steps = steps.unwrap_or(match cli.preset {
                Preset::Ci => 256,
                Preset::Paper => 1024,
            });
            let samples = samples.unwrap_or(match cli.preset {
                Preset::Ci => 100_000,
                Preset::Paper => 1_000_000,
            });
            let r = sl2walk::hitting_measure_experiment(steps, samples, cli.seed, *confirm);
            let m = meta(
                cli,
                "hitting",
                serde_json::json!({"steps": steps, "samples": samples, "confirm": confirm}),
            );
            write_csv(
                cli.out.join("hitting").join("hitting.csv"),
                &m,
                &["p_a", "p_b", "p_B", "n_used", "n_discarded", "stderr_a", "stderr_b", "stderr_B"],
                [vec![
                    fmt_f64(r.p_a),
                    fmt_f64(r.p_b),
                    fmt_f64(r.p_b_inv),
                    r.n_used.to_string(),
                    r.n_discarded.to_string(),
                    fmt_f64((r.p_a * (1.0 - r.p_a) / r.n_used as f64).sqrt()),
                    fmt_f64((r.p_b * (1.0 - r.p_b) / r.n_used as f64).sqrt()),
                    fmt_f64((r.p_b_inv * (1.0 - r.p_b_inv) / r.n_used as f64).sqrt()),
                ]],
            )
            .map_err(|e| e.to_string())?;
            println!(
                "hitting: p_a = {:.5} (1/2), p_b = {:.5} ({:.5}), p_B = {:.5} ({:.5})",
                r.p_a,
                r.p_b,
                (5f64.sqrt() - 1.0) / 4.0,
                r.p_b_inv,
                (3.0 - 5f64.sqrt()) / 4.0,
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Clt { lengths, samples } => {
            let lengths = lengths.clone().unwrap_or_else(|| match cli.preset {
                Preset::Ci => (1..=6).map(|k| 500 * k).collect(),
                Preset::Paper => (1..=30).map(|k| 500 * k).collect(),
            });
            let samples = samples.unwrap_or(match cli.preset {
                Preset::Ci => 100,
                Preset::Paper => 10_000,
            });
            let rows = sl2walk::clt_experiment(&lengths, samples, cli.seed, true);
            let m = meta(
                cli,
                "clt",
                serde_json::json!({"lengths": lengths, "samples": samples, "knots_only": true}),
            );
            let dir = cli.out.join("clt");
            write_csv(
                dir.join("clt.csv"),
                &m,
                &["n", "mean_abs_normalized", "std", "count"],
                rows.iter().map(|r| {
                    vec![
                        r.n_steps.to_string(),
                        fmt_f64(r.mean_abs_normalized),
                        fmt_f64(r.std_dev),
                        r.count.to_string(),
                    ]
                }),
            )
            .map_err(|e| e.to_string())?;
            write_csv(
                dir.join("values.csv"),
                &m,
                &["n", "abs_normalized"],
                rows.iter().flat_map(|r| {
                    let n = r.n_steps;
                    r.values
                        .iter()
                        .map(move |v| vec![n.to_string(), fmt_f64(*v)])
                        .collect::<Vec<_>>()
                }),
            )
            .map_err(|e| e.to_string())?;
            for r in &rows {
                println!(
                    "clt: n = {: >6}  mean |σ̂|/n = {:.5}  std = {:.5}  (limit {:.5})",
                    r.n_steps,
                    r.mean_abs_normalized,
                    r.std_dev,
                    sl2walk::signature_drift()
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::LyapunovGrid { grid, walks, walk_length } => {
            let g = grid.clone().unwrap_or_else(|| vec![-1.6, 1.6, -1.6, 1.6]);
            let (bounds, res) = match (g.len(), cli.preset) {
                (6, _) => ((g[0], g[1], g[2], g[3]), (g[4] as usize, g[5] as usize)),
                (4, Preset::Ci) => ((g[0], g[1], g[2], g[3]), (60, 60)),
                (4, Preset::Paper) => ((g[0], g[1], g[2], g[3]), (300, 300)),
                _ => return Err("grid must be x0,x1,y0,y1[,nx,ny]".to_string()),
            };
            let params = McParams {
                n_walks: walks.unwrap_or(match cli.preset {
                    Preset::Ci => 1_000,
                    Preset::Paper => 10_000,
                }),
                walk_length: walk_length.unwrap_or(match cli.preset {
                    Preset::Ci => 100,
                    Preset::Paper => 300,
                }),
                seed: cli.seed,
            };
            let mu = MuSpec::uniform_generators();
            let field = GridField::sample(bounds.0, bounds.1, bounds.2, bounds.3, res.0, res.1);
            let grid_result = lyapunov::lyapunov_grid(field, &mu, params);
            let m = meta(
                cli,
                "lyapunov-grid",
                serde_json::json!({
                    "bounds": [bounds.0, bounds.1, bounds.2, bounds.3],
                    "resolution": [res.0, res.1],
                    "n_walks": params.n_walks,
                    "walk_length": params.walk_length,
                    "mu": "uniform {sigma1, sigma2}",
                }),
            );
            let dir = cli.out.join("lyapunov-grid");
            let f = &grid_result.lambda;
            write_csv(
                dir.join("grid.csv"),
                &m,
                &["x", "y", "lambda_hat", "stderr", "chi", "density"],
                (0..f.ny).flat_map(|iy| (0..f.nx).map(move |ix| (ix, iy))).map(|(ix, iy)| {
                    let (x, y) = f.point(ix, iy);
                    vec![
                        fmt_f64(x),
                        fmt_f64(y),
                        fmt_f64(grid_result.lambda.get(ix, iy)),
                        fmt_f64(grid_result.stderr.get(ix, iy)),
                        fmt_f64(grid_result.chi.get(ix, iy)),
                        fmt_f64(grid_result.density.get(ix, iy)),
                    ]
                }),
            )
            .map_err(|e| e.to_string())?;
            write_csv(
                dir.join("zero_locus.csv"),
                &m,
                &["polyline_id", "x", "y"],
                grid_result.zero_locus.iter().enumerate().flat_map(|(id, line)| {
                    line.iter()
                        .map(move |&(x, y)| vec![id.to_string(), fmt_f64(x), fmt_f64(y)])
                        .collect::<Vec<_>>()
                }),
            )
            .map_err(|e| e.to_string())?;
            println!(
                "lyapunov-grid: {} x {} points, total bifurcation mass {:.4}",
                res.0,
                res.1,
                grid_result.total_mass()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::RhScan { count, max_length } => {
            let count = count.unwrap_or(match cli.preset {
                Preset::Ci => 500,
                Preset::Paper => 5_000,
            });
            let max_length = max_length.unwrap_or(match cli.preset {
                Preset::Ci => 60,
                Preset::Paper => 120,
            });
            let scan = explab::rh_scan(count, max_length, cli.seed);
            let m = meta(
                cli,
                "rh-scan",
                serde_json::json!({"count": count, "max_length": max_length}),
            );
            write_csv(
                cli.out.join("rh-scan").join("rh.csv"),
                &m,
                &["word", "half_length", "min_coefficient", "all_positive"],
                scan.rows.iter().map(|r| {
                    vec![
                        r.word.clone(),
                        r.half_length.to_string(),
                        r.min_coefficient.clone(),
                        r.all_positive.to_string(),
                    ]
                }),
            )
            .map_err(|e| e.to_string())?;
            println!(
                "rh-scan: {} words, {} with a nonpositive coefficient",
                scan.rows.len(),
                scan.nonpositive_count
            );
            Ok(ExitCode::SUCCESS)
        }
    }
}
