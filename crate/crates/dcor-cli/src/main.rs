//! `dcor` — distance covariance and distance correlation from the command
//! line.
//!
//! Subcommands wrap the library one-to-one: `sample` for data-driven
//! statistics, `gaussian` for exact multivariate normal population values,
//! `acf`/`ccf` for distance correlograms, and `mc` for Monte Carlo
//! consistency runs. Results go to standard output (JSON or CSV),
//! diagnostics to standard error. Exit codes: 0 success, 1 I/O error,
//! 2 domain or validation error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use dcor::gaussian::{
    aidcor_gaussian, aidvar2_gaussian, dcov2_gaussian_scalar, grid_curves, grid_halfdisc,
    grid_surface, limit_fixed_q_cov_ratio, limit_fixed_q_ratio, limit_highdim_equal,
    limit_smalllambda_ratio, pearson_to_dcor_gaussian, GaussianSpec,
};
use dcor::io::{load_gaussian_spec, read_csv_table};
use dcor::linalg::Matrix;
use dcor::mc::{consistency_experiment, RngSpec};
use dcor::stats::{dcor_sample, dcor_sample_affine};
use dcor::timeseries::{auto_dcor, cross_dcor, VectorSeries};
use dcor::{DcovResult, Error, Variant};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "dcor",
    version,
    about = "Distance covariance and distance correlation toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample distance correlation between two column selections of a CSV file
    Sample(SampleArgs),
    /// Exact values for multivariate normal populations
    #[command(subcommand)]
    Gaussian(GaussianCmd),
    /// Auto distance correlation function of a (vector) series
    Acf(AcfArgs),
    /// Cross distance correlation function of two (vector) series
    Ccf(CcfArgs),
    /// Monte Carlo consistency run of the sample statistic
    Mc(McArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
}

#[derive(Args)]
struct SampleArgs {
    /// CSV data file (first row holds column names)
    #[arg(long)]
    file: PathBuf,
    /// Columns forming the first variable
    #[arg(long, short = 'x', value_delimiter = ',', required = true)]
    x: Vec<String>,
    /// Columns forming the second variable
    #[arg(long, short = 'y', value_delimiter = ',', required = true)]
    y: Vec<String>,
    /// Affinely invariant variant (covariance-whitened)
    #[arg(long)]
    affine: bool,
    #[arg(long, value_enum, default_value_t = OutFormat::Json)]
    out: OutFormat,
}

#[derive(Subcommand)]
enum GaussianCmd {
    /// Affinely invariant distance correlation of a Gaussian pair
    Exact(SpecOrRho),
    /// Affinely invariant distance variance of a p-dimensional Gaussian
    Variance {
        #[arg(long)]
        p: usize,
    },
    /// Standard distance covariance for scalar marginal covariances
    ScalarStandard {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Limit constants for small dependence and growing dimension
    Limits {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        /// Also evaluate the equal-dimension pair at dependence level r
        #[arg(long)]
        r: Option<f64>,
    },
    /// Dependence tables over parameter grids (CSV)
    Grid {
        #[arg(long, value_enum)]
        kind: GridKind,
        #[arg(long, default_value_t = 0.1)]
        step: f64,
    },
    /// Pearson correlation converted to distance correlation under Gaussianity
    ConvertPearson(SpecOrRho),
}

#[derive(Clone, Copy, ValueEnum)]
enum GridKind {
    /// p = q = 2 curves: cross blocks diag(0,r), diag(r,r), all-entries-r
    Curves,
    /// p = q = 2 surface over cross block diag(r, s)
    Surface,
    /// p = 2, q = 1 surface over cross block (r, s)'
    QuarterDisc,
}

#[derive(Args)]
struct SpecOrRho {
    /// JSON covariance specification file
    #[arg(long, conflicts_with = "rho")]
    spec: Option<PathBuf>,
    /// Shortcut: identity marginals with dependence rho on the diagonal
    #[arg(long, required_unless_present = "spec")]
    rho: Option<f64>,
    #[arg(long, default_value_t = 1, requires = "rho")]
    p: usize,
    #[arg(long, default_value_t = 1, requires = "rho")]
    q: usize,
}

#[derive(Args)]
struct AcfArgs {
    #[arg(long)]
    file: PathBuf,
    /// Columns of the series, one coordinate per column
    #[arg(long, value_delimiter = ',', required = true)]
    series: Vec<String>,
    #[arg(long)]
    max_lag: usize,
    #[arg(long)]
    affine: bool,
}

#[derive(Args)]
struct CcfArgs {
    #[arg(long)]
    file: PathBuf,
    #[arg(long, value_delimiter = ',', required = true)]
    series: Vec<String>,
    #[arg(long, value_delimiter = ',', required = true)]
    series2: Vec<String>,
    #[arg(long)]
    max_lag: usize,
    #[arg(long)]
    affine: bool,
}

#[derive(Args)]
struct McArgs {
    #[arg(long)]
    spec: PathBuf,
    #[arg(long)]
    n: usize,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    replicates: u32,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 0)]
    stream: u64,
    /// "exact": report a z-score against the exact population value
    #[arg(long, value_parser = ["exact"])]
    target: Option<String>,
}

/// 17 significant digits: round-trips any f64 exactly.
fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(cli) {
        eprintln!("error: {err}");
        let code = match err {
            Error::Io(_) | Error::FileNotFound { .. } => 1,
            _ => 2,
        };
        std::process::exit(code);
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Sample(args) => cmd_sample(args),
        Command::Gaussian(cmd) => cmd_gaussian(cmd),
        Command::Acf(args) => cmd_acf(args),
        Command::Ccf(args) => cmd_ccf(args),
        Command::Mc(args) => cmd_mc(args),
    }
}

fn cmd_sample(args: SampleArgs) -> Result<(), Error> {
    let table = read_csv_table(&args.file)?;
    let x_cols: Vec<&str> = args.x.iter().map(String::as_str).collect();
    let y_cols: Vec<&str> = args.y.iter().map(String::as_str).collect();
    let x = table.select(&x_cols)?;
    let y = table.select(&y_cols)?;
    let result = if args.affine {
        dcor_sample_affine(&x, &y)?
    } else {
        dcor_sample(&x, &y)?
    };
    if result.degenerate {
        eprintln!("warning: degenerate input (constant sample or singular covariance); r = 0 by convention");
    }
    print_dcov_result(&result, args.out)?;
    Ok(())
}

fn print_dcov_result(result: &DcovResult, out: OutFormat) -> Result<(), Error> {
    match out {
        OutFormat::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(result).expect("result serializes")
            );
        }
        OutFormat::Csv => {
            println!("v2,v2_xx,v2_yy,r,variant,degenerate");
            let variant = match result.variant {
                Variant::Standard => "standard",
                Variant::Affine => "affine",
            };
            println!(
                "{},{},{},{},{},{}",
                fmt(result.v2),
                fmt(result.v2_xx),
                fmt(result.v2_yy),
                fmt(result.r),
                variant,
                result.degenerate
            );
        }
    }
    Ok(())
}

fn spec_from(args: &SpecOrRho) -> Result<GaussianSpec, Error> {
    if let Some(path) = &args.spec {
        return load_gaussian_spec(path);
    }
    let rho = args.rho.expect("clap enforces spec or rho");
    let mut cross = Matrix::zeros(args.p, args.q);
    for i in 0..args.p.min(args.q) {
        cross.set(i, i, rho);
    }
    GaussianSpec::with_identity_margins(args.p, args.q, cross)
}

fn cmd_gaussian(cmd: GaussianCmd) -> Result<(), Error> {
    match cmd {
        GaussianCmd::Exact(args) => {
            let spec = spec_from(&args)?;
            let result = aidcor_gaussian(&spec)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&result).expect("result serializes")
            );
        }
        GaussianCmd::Variance { p } => {
            if p < 1 {
                return Err(Error::domain("dimension p must be at least 1"));
            }
            println!("{}", fmt(aidvar2_gaussian(p)));
        }
        GaussianCmd::ScalarStandard { spec } => {
            let spec = load_gaussian_spec(&spec)?;
            let v2 = dcov2_gaussian_scalar(&spec)?;
            println!("{{\"v2\": {v2}}}");
        }
        GaussianCmd::Limits { p, q, r } => {
            if p < 1 || q < 1 {
                return Err(Error::domain("dimensions must be at least 1"));
            }
            let mut doc = serde_json::json!({
                "small_dependence_r2_per_trace": limit_smalllambda_ratio(p, q),
                "fixed_q_r2_ratio": limit_fixed_q_ratio(q),
                "fixed_q_v2_ratio": limit_fixed_q_cov_ratio(q),
            });
            if let Some(r) = r {
                let (v2, r_tilde) = limit_highdim_equal(r, p)?;
                doc["equal_dim_v2"] = serde_json::json!(v2);
                doc["equal_dim_r"] = serde_json::json!(r_tilde);
            }
            println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
        }
        GaussianCmd::Grid { kind, step } => match kind {
            GridKind::Curves => {
                println!("r,diag_0r,diag_rr,all_r");
                for row in grid_curves(step)? {
                    let all_r = row.all_r.map(fmt).unwrap_or_default();
                    println!(
                        "{},{},{},{}",
                        fmt(row.r),
                        fmt(row.diag_0r),
                        fmt(row.diag_rr),
                        all_r
                    );
                }
            }
            GridKind::Surface => {
                println!("r,s,r_affine");
                for pt in grid_surface(step)? {
                    println!("{},{},{}", fmt(pt.r), fmt(pt.s), fmt(pt.value));
                }
            }
            GridKind::QuarterDisc => {
                println!("r,s,r_affine");
                for pt in grid_halfdisc(step)? {
                    println!("{},{},{}", fmt(pt.r), fmt(pt.s), fmt(pt.value));
                }
            }
        },
        GaussianCmd::ConvertPearson(args) => {
            let spec = spec_from(&args)?;
            println!("{}", fmt(pearson_to_dcor_gaussian(&spec)?));
        }
    }
    Ok(())
}

const LAG_CONVENTION: &str = "# lag k pairs observation j of the first series with observation j+k of the second; \
a peak at a negative lag means the second series runs ahead of the first";

fn series_from_table(
    table: &dcor::io::CsvTable,
    columns: &[String],
    label: &str,
) -> Result<VectorSeries, Error> {
    let cols: Vec<&str> = columns.iter().map(String::as_str).collect();
    let data = table.select(&cols)?;
    let dim = data.dim();
    let values: Vec<f64> = (0..data.n()).flat_map(|i| data.sample(i).to_vec()).collect();
    VectorSeries::new(dim, values, label)
}

fn cmd_acf(args: AcfArgs) -> Result<(), Error> {
    let table = read_csv_table(&args.file)?;
    let series = series_from_table(&table, &args.series, "series")?;
    let variant = if args.affine { Variant::Affine } else { Variant::Standard };
    let result = auto_dcor(&series, args.max_lag, variant)?;
    if result.degenerate {
        eprintln!("warning: degenerate series; all values are 0 by convention");
    }
    println!("{LAG_CONVENTION}");
    println!("lag,value,n_effective");
    for ((lag, value), n_eff) in result
        .lags
        .iter()
        .zip(&result.values)
        .zip(&result.n_effective)
    {
        println!("{},{},{}", lag, fmt(*value), n_eff);
    }
    Ok(())
}

fn cmd_ccf(args: CcfArgs) -> Result<(), Error> {
    let table = read_csv_table(&args.file)?;
    let first = series_from_table(&table, &args.series, "first")?;
    let second = series_from_table(&table, &args.series2, "second")?;
    let variant = if args.affine { Variant::Affine } else { Variant::Standard };
    let result = cross_dcor(&first, &second, args.max_lag, variant)?;
    if result.degenerate {
        eprintln!("warning: degenerate series; all values are 0 by convention");
    }
    println!("{LAG_CONVENTION}");
    println!("lag,value,n_effective");
    for ((lag, value), n_eff) in result
        .lags
        .iter()
        .zip(&result.values)
        .zip(&result.n_effective)
    {
        println!("{},{},{}", lag, fmt(*value), n_eff);
    }
    Ok(())
}

fn cmd_mc(args: McArgs) -> Result<(), Error> {
    let spec = load_gaussian_spec(&args.spec)?;
    let rng = RngSpec::new(args.seed, args.stream);
    let reports = consistency_experiment(&spec, &[args.n], args.replicates as usize, rng)?;
    let mut report = reports[0].1;
    if args.target.is_none() {
        report.target = None;
        report.z_score = None;
    }
    let doc = serde_json::json!({
        "n": args.n,
        "estimate": report.estimate,
        "replicates": report.replicates,
        "std_error": report.std_error,
        "target": report.target,
        "z_score": report.z_score,
    });
    println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
    Ok(())
}
