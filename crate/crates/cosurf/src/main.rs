use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use cosurf::formats::{resolve_group, AnyGroupoid, ComplexFile, GroupoidSpec, SeriesFile};
use cosurf::suites;
use cosurf::Report;
use cosurf_core::algebra::FiniteGroup;

#[derive(Parser, Debug)]
#[command(name = "cosurf", version, about = "Exact checks of graded-groupoid series and lattice cosurface measures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Groupoid: `nat`, `interval:A..B` or `box:D:LO..HI`.
    #[arg(long)]
    groupoid: Option<GroupoidSpec>,
    /// Built-in group: Z2..Z12, S3, Q8.
    #[arg(long)]
    group: Option<String>,
    /// Cayley table file (JSON).
    #[arg(long)]
    table_file: Option<PathBuf>,
    /// Truncation order N.
    #[arg(long)]
    trunc: Option<usize>,
    /// Tolerance of floating-point checks.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Report file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// exp/log round trips and product-integral checks.
    Series {
        #[command(flatten)]
        common: Common,
        /// Number of random series per groupoid.
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// A series file to round-trip instead of random series.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Convergence table of the Euler product.
    Expmap {
        #[command(flatten)]
        common: Common,
        /// Only report this grade.
        #[arg(long)]
        grade: Option<usize>,
        /// Step counts, each double the previous.
        #[arg(long, value_delimiter = ',', default_values_t = [8, 16, 32, 64])]
        n: Vec<usize>,
    },
    /// Measure checks on lattice complexes.
    Cosurface {
        #[command(subcommand)]
        command: CosurfaceCommand,
    },
    /// Axioms of the heat semigroup.
    Semigroup {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',', default_values_t = [0.25, 0.5, 1.0, 2.0])]
        t: Vec<f64>,
    },
    /// Invariance of the measure under reordering of the complex.
    Reorder {
        #[command(flatten)]
        common: Common,
    },
    /// Dimension extension: refinement invariance, cube, centre.
    Extend {
        #[command(flatten)]
        common: Common,
        /// Random samples for cross-checks and searches.
        #[arg(long, default_value_t = 2000)]
        samples: usize,
    },
    /// The non-regular diffeomorphism example.
    Nonregular {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        t: Vec<f64>,
        /// Grid size.
        #[arg(long, default_value_t = 1_000_000)]
        points: usize,
    },
}

#[derive(Subcommand, Debug)]
enum CosurfaceCommand {
    /// Conditional independence across a splitting subcomplex.
    MarkovCheck {
        #[command(flatten)]
        common: Common,
        /// Complex file with a `split` range.
        #[arg(long)]
        complex: Option<PathBuf>,
    },
    /// Factorization of the measure under cutting and pasting.
    CutPaste {
        #[command(flatten)]
        common: Common,
        /// Complex file of a cobordism box.
        #[arg(long, requires = "time")]
        complex: Option<PathBuf>,
        /// Time of the cut.
        #[arg(long)]
        time: Option<i64>,
    },
    /// Multiplicativity of the measure-valued series.
    Series {
        #[command(flatten)]
        common: Common,
    },
}

fn groups_or(common: &Common, defaults: &[&str]) -> Result<Vec<FiniteGroup>> {
    if common.group.is_some() || common.table_file.is_some() {
        return Ok(vec![resolve_group(common.group.as_deref(), common.table_file.as_deref())?]);
    }
    defaults.iter().map(|n| Ok(FiniteGroup::by_name(n)?)).collect()
}

fn positive_tol(common: &Common, default: f64) -> Result<f64> {
    let tol = common.tol.unwrap_or(default);
    if tol.is_nan() || tol < 0.0 {
        bail!("--tol must be nonnegative");
    }
    Ok(tol)
}

fn run(command: Command) -> Result<(Report, Common)> {
    Ok(match command {
        Command::Series { common, count, input } => {
            let report = match input {
                Some(path) => {
                    let text = std::fs::read_to_string(&path)?;
                    let file: SeriesFile = serde_json::from_str(&text)?;
                    let spec: GroupoidSpec = file.groupoid.parse()?;
                    let label = path.display().to_string();
                    match spec.build()? {
                        AnyGroupoid::Nat(g) => suites::series_file_roundtrip(&label, &file.to_series(&g)?)?,
                        AnyGroupoid::Interval(g) => suites::series_file_roundtrip(&label, &file.to_series(&g)?)?,
                        AnyGroupoid::Box(g) => suites::series_file_roundtrip(&label, &file.to_series(&g)?)?,
                    }
                }
                None => {
                    let specs = match &common.groupoid {
                        Some(s) => vec![s.clone()],
                        None => vec![GroupoidSpec::Nat, GroupoidSpec::Interval(0, 6)],
                    };
                    let trunc = common.trunc.unwrap_or(6);
                    let mut r = suites::series_roundtrip(&specs, count, trunc, 2, common.seed)?;
                    r.extend(suites::product_integral_suite(&specs, 20, common.seed)?);
                    r
                }
            };
            (report, common)
        }
        Command::Expmap { common, grade, n } => {
            let spec = common.groupoid.clone().unwrap_or(GroupoidSpec::Nat);
            (suites::expmap(&spec, grade, common.trunc.unwrap_or(3), &n)?, common)
        }
        Command::Semigroup { common, t } => {
            let groups = groups_or(&common, &suites::SEMIGROUP_GROUPS)?;
            (suites::semigroup_suite(&groups, &t, positive_tol(&common, 1e-12)?)?, common)
        }
        Command::Reorder { common } => {
            let nonabelian = match (&common.group, &common.table_file) {
                (None, None) => FiniteGroup::symmetric3(),
                (g, f) => resolve_group(g.as_deref(), f.as_deref())?,
            };
            let abelian = FiniteGroup::cyclic(3)?;
            (suites::reorder_suite(&abelian, &nonabelian, positive_tol(&common, 1e-12)?)?, common)
        }
        Command::Extend { common, samples } => {
            let mut opts = suites::ExtensionOptions { samples, seed: common.seed, ..Default::default() };
            if common.group.is_some() || common.table_file.is_some() {
                let g = resolve_group(common.group.as_deref(), common.table_file.as_deref())?;
                if g.is_abelian() {
                    opts.abelian = vec![g.clone()];
                    opts.cube_group = g;
                } else {
                    opts.nonabelian = g;
                }
            }
            (suites::extension_suite(&opts)?, common)
        }
        Command::Nonregular { common, t, points } => {
            let ts = if t.is_empty() { suites::NONREGULAR_TS.to_vec() } else { t };
            (suites::nonregular_suite(&ts, points)?, common)
        }
        Command::Cosurface { command } => match command {
            CosurfaceCommand::MarkovCheck { common, complex } => {
                let tol = positive_tol(&common, 1e-12)?;
                let report = match complex {
                    Some(path) => {
                        let file = ComplexFile::load(&path)?;
                        let [a, b] = file.split.ok_or_else(|| anyhow!("the complex file needs a split range"))?;
                        let (k, doms) = file.build()?;
                        let g = resolve_group(common.group.as_deref(), common.table_file.as_deref())?;
                        suites::markov_custom(&g, k, doms, a..b, tol)?
                    }
                    None => suites::markov_suite(&groups_or(&common, &["Z2", "Z3", "S3"])?, tol)?,
                };
                (report, common)
            }
            CosurfaceCommand::CutPaste { common, complex, time } => {
                let tol = positive_tol(&common, 1e-12)?;
                let report = match (complex, time) {
                    (Some(path), Some(time)) => {
                        let g = resolve_group(common.group.as_deref(), common.table_file.as_deref())?;
                        suites::cut_paste_custom(&g, &ComplexFile::load(&path)?.build_cobordism()?, time, tol)?
                    }
                    _ => suites::cut_paste_suite(&groups_or(&common, &["Z2", "Z3", "S3"])?, tol)?,
                };
                (report, common)
            }
            CosurfaceCommand::Series { common } => {
                let spec = common.groupoid.clone().unwrap_or(GroupoidSpec::Interval(0, 5));
                let g = groups_or(&common, &["Z3"])?.remove(0);
                let trunc = common.trunc.unwrap_or(match &spec {
                    GroupoidSpec::Interval(a, b) => (b - a) as usize,
                    _ => 5,
                });
                (suites::measure_series_suite(&spec, trunc, &g, positive_tol(&common, 1e-12)?)?, common)
            }
        },
    })
}

fn write(report: &Report, common: &Common) -> Result<()> {
    let sink: Box<dyn Write> = match &common.out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    };
    match common.format {
        Format::Json => {
            let mut sink = sink;
            report.write_json(&mut sink)?;
            writeln!(sink)?;
            sink.flush()?;
        }
        Format::Csv => report.write_csv(sink)?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command).and_then(|(report, common)| write(&report, &common).map(|_| report)) {
        Ok(report) => {
            let failed = report.failures().count();
            eprintln!(
                "{}: {} cases, {} failed, max residual {:.3e}",
                if report.pass { "PASS" } else { "FAIL" },
                report.cases.len(),
                failed,
                report.max_residual
            );
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
