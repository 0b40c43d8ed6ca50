//! Command-line surface behind the `lwf` binary: function evaluation,
//! lattice generation with density diagnostics, transform grids, frame
//! bounds, threshold sweeps, and the verification suites.
//!
//! Every numeric option can come from a JSON config file (`--config`);
//! explicit flags win over file values. Floats are serialized with 17
//! significant digits so identical runs produce byte-identical output.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::frames::{threshold_sweep, AtomSequence, FrameAnalysisConfig};
use crate::geometry::{
    cayley_to_disc, density_thresholds, generate_lattice, lattice_density_estimate,
    lower_density, separation_constant, HyperbolicLattice,
};
use crate::quadrature::RuleCache;
use crate::special::{
    analyzing_wavelet, circular_jacobi, laguerre_function, laguerre_polynomial, WaveletOrder,
};
use crate::transforms::{paul_wavelet, wavelet_coefficient, SpectralSignal, TimeScalePoint};
use crate::verify::{self, VerifyOptions, SUITE_NAMES};

/// 17 significant digits: round-trip exact for f64 and byte-stable.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum OutputFormat {
    Csv,
    Json,
}

fn parse_format(format: Option<&str>, default: OutputFormat) -> Result<OutputFormat> {
    match format {
        None => Ok(default),
        Some("csv") => Ok(OutputFormat::Csv),
        Some("json") => Ok(OutputFormat::Json),
        Some(other) => Err(Error::Config(format!(
            "unknown format `{other}` (expected csv or json)"
        ))),
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "lwf",
    version,
    about = "Wavelet frames from Fourier transforms of Laguerre functions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a function family on a grid and emit CSV.
    Eval(EvalArgs),
    /// Generate a hyperbolic lattice; emit point CSV and a JSON summary.
    Lattice(LatticeArgs),
    /// Wavelet coefficients of a spectral signal on an (x, s) grid.
    Transform(TransformArgs),
    /// Frame-bound estimation for a lattice configuration.
    Framebounds(FrameboundsArgs),
    /// Frame bounds across a list of lattice parameters and basis sizes.
    Sweep(SweepArgs),
    /// Run the verification suites.
    Verify(VerifyArgs),
}

macro_rules! overlay {
    ($flag:expr, $file:expr; $($field:ident),* $(,)?) => {
        $( $flag.$field = $flag.$field.take().or($file.$field); )*
    };
}

fn load_config<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::Config(format!("cannot parse {}: {e}", path.display())))
}

fn require<T>(value: Option<T>, name: &str) -> Result<T> {
    value.ok_or_else(|| Error::Config(format!("missing required parameter `{name}`")))
}

fn write_output(path: Option<&PathBuf>, content: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, content)
            .map_err(|e| Error::Config(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

/// Entry point used by the binary: returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let outcome = match cli.command {
        Command::Eval(args) => cmd_eval(args),
        Command::Lattice(args) => cmd_lattice(args),
        Command::Transform(args) => cmd_transform(args),
        Command::Framebounds(args) => cmd_framebounds(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Verify(args) => cmd_verify(args),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}

// ---------------------------------------------------------------- eval

#[derive(Debug, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EvalArgs {
    /// Function family: S | laguerre | laguerre-fn | circular-jacobi | paul
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    /// Evaluate at a single argument value.
    #[arg(long, allow_negative_numbers = true)]
    pub t: Option<f64>,
    /// Alias for --t used with the real-valued families.
    #[arg(long, allow_negative_numbers = true)]
    pub x: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub tmin: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub tmax: Option<f64>,
    #[arg(long)]
    pub steps: Option<usize>,
    /// Output format: csv or json.
    #[arg(long)]
    pub format: Option<String>,
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

fn eval_grid(args: &EvalArgs) -> Vec<f64> {
    if let Some(t) = args.t.or(args.x) {
        return vec![t];
    }
    let lo = args.tmin.unwrap_or(-10.0);
    let hi = args.tmax.unwrap_or(10.0);
    let steps = args.steps.unwrap_or(201).max(1);
    if steps == 1 {
        return vec![lo];
    }
    (0..steps)
        .map(|i| lo + (hi - lo) * i as f64 / (steps - 1) as f64)
        .collect()
}

fn cmd_eval(mut args: EvalArgs) -> Result<i32> {
    if let Some(path) = args.config.clone() {
        let file: EvalArgs = load_config(&path)?;
        overlay!(args, file; family, n, alpha, t, x, tmin, tmax, steps, format);
    }
    let family = require(args.family.clone(), "family")?;
    let alpha = require(args.alpha, "alpha")?;
    let format = parse_format(args.format.as_deref(), OutputFormat::Csv)?;
    let grid = eval_grid(&args);

    enum Rows {
        Complex(Vec<(f64, Complex64)>),
        Real(Vec<(f64, f64)>),
    }
    let rows = match family.as_str() {
        "S" => {
            let order = WaveletOrder::new(require(args.n, "n")?, alpha)?;
            let mut rows = Vec::with_capacity(grid.len());
            for &t in &grid {
                rows.push((t, analyzing_wavelet(&order, t)?));
            }
            Rows::Complex(rows)
        }
        "laguerre" => {
            let order = WaveletOrder::new(require(args.n, "n")?, alpha)?;
            Rows::Real(
                grid.iter()
                    .map(|&x| (x, laguerre_polynomial(&order, x)))
                    .collect(),
            )
        }
        "laguerre-fn" => {
            let order = WaveletOrder::new(require(args.n, "n")?, alpha)?;
            let mut rows = Vec::with_capacity(grid.len());
            for &x in &grid {
                rows.push((x, laguerre_function(&order, x)?));
            }
            Rows::Real(rows)
        }
        "circular-jacobi" => {
            // evaluated on the unit circle at angle t
            let order = WaveletOrder::new(require(args.n, "n")?, alpha)?;
            let mut rows = Vec::with_capacity(grid.len());
            for &t in &grid {
                rows.push((t, circular_jacobi(&order, Complex64::from_polar(1.0, t))?));
            }
            Rows::Complex(rows)
        }
        "paul" => Rows::Complex(grid.iter().map(|&t| (t, paul_wavelet(alpha, t))).collect()),
        other => {
            return Err(Error::Config(format!(
                "unknown family `{other}` (expected S, laguerre, laguerre-fn, circular-jacobi or paul)"
            )))
        }
    };

    let text = match (format, &rows) {
        (OutputFormat::Csv, Rows::Complex(rows)) => {
            let mut csv = String::from("t,re,im\n");
            for (t, v) in rows {
                let _ = writeln!(csv, "{},{},{}", fmt_f64(*t), fmt_f64(v.re), fmt_f64(v.im));
            }
            csv
        }
        (OutputFormat::Csv, Rows::Real(rows)) => {
            let mut csv = String::from("x,value\n");
            for (x, v) in rows {
                let _ = writeln!(csv, "{},{}", fmt_f64(*x), fmt_f64(*v));
            }
            csv
        }
        (OutputFormat::Json, Rows::Complex(rows)) => {
            let items: Vec<serde_json::Value> = rows
                .iter()
                .map(|(t, v)| serde_json::json!({"t": t, "re": v.re, "im": v.im}))
                .collect();
            let mut text = serde_json::to_string_pretty(&items).expect("serialization");
            text.push('\n');
            text
        }
        (OutputFormat::Json, Rows::Real(rows)) => {
            let items: Vec<serde_json::Value> = rows
                .iter()
                .map(|(x, v)| serde_json::json!({"x": x, "value": v}))
                .collect();
            let mut text = serde_json::to_string_pretty(&items).expect("serialization");
            text.push('\n');
            text
        }
    };
    write_output(args.out.as_ref(), &text)?;
    Ok(0)
}

// ------------------------------------------------------------- lattice

#[derive(Debug, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LatticeArgs {
    #[arg(long)]
    pub a: Option<f64>,
    #[arg(long)]
    pub b: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub jmin: Option<i32>,
    #[arg(long, allow_negative_numbers = true)]
    pub jmax: Option<i32>,
    #[arg(long, allow_negative_numbers = true)]
    pub kmin: Option<i32>,
    #[arg(long, allow_negative_numbers = true)]
    pub kmax: Option<i32>,
    /// Wavelet degree used for the thresholds in the summary.
    #[arg(long, default_value_t = 0)]
    #[serde(skip)]
    pub n: usize,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    /// Truncation radius of the density estimate.
    #[arg(long)]
    pub r: Option<f64>,
    /// Estimate the density on the configured ranges only (coverage
    /// violations then surface as exit code 3).
    #[arg(long)]
    #[serde(skip)]
    pub no_auto_extend: bool,
    /// Output format: csv or json.
    #[arg(long)]
    pub format: Option<String>,
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, serde::Serialize)]
struct LatticeSummary {
    density_estimate: f64,
    theoretical_density: f64,
    disc_threshold: f64,
    lattice_threshold: f64,
    separated: bool,
}

fn cmd_lattice(mut args: LatticeArgs) -> Result<i32> {
    if let Some(path) = args.config.clone() {
        let file: LatticeArgs = load_config(&path)?;
        overlay!(args, file; a, b, jmin, jmax, kmin, kmax, alpha, r, format);
    }
    let a = require(args.a, "a")?;
    let b = require(args.b, "b")?;
    let alpha = args.alpha.unwrap_or(2.0);
    let order = WaveletOrder::new(args.n, alpha)?;
    let r = args.r.unwrap_or(0.99);
    let lattice = HyperbolicLattice::new(
        a,
        b,
        (args.jmin.unwrap_or(-2), args.jmax.unwrap_or(2)),
        (args.kmin.unwrap_or(-8), args.kmax.unwrap_or(8)),
    )?;

    let mut csv = String::from("j,k,re_u,im_u,re_d,im_d\n");
    for (j, k, z) in lattice.indexed_points() {
        let w = cayley_to_disc(z)?;
        let _ = writeln!(
            csv,
            "{j},{k},{},{},{},{}",
            fmt_f64(z.re),
            fmt_f64(z.im),
            fmt_f64(w.re),
            fmt_f64(w.im)
        );
    }

    let points = generate_lattice(&lattice)?;
    let density_estimate = if points.is_empty() {
        0.0
    } else if args.no_auto_extend {
        let grid: Vec<Complex64> = lattice
            .indexed_points()
            .iter()
            .map(|(_, _, z)| cayley_to_disc(*z))
            .collect::<Result<_>>()?;
        lower_density(&points, r, &grid)?
    } else {
        lattice_density_estimate(&lattice, r)?.estimate
    };
    let separated = if points.len() >= 2 {
        separation_constant(&points)? > 1e-9
    } else {
        true
    };
    let (disc_threshold, lattice_threshold) = density_thresholds(&order);
    let summary = LatticeSummary {
        density_estimate,
        theoretical_density: lattice.theoretical_density(),
        disc_threshold,
        lattice_threshold,
        separated,
    };
    let summary_json = serde_json::to_string_pretty(&summary).expect("summary serialization");
    match parse_format(args.format.as_deref(), OutputFormat::Csv)? {
        OutputFormat::Json => {
            // single document: points plus summary
            let points_json: Vec<serde_json::Value> = lattice
                .indexed_points()
                .into_iter()
                .map(|(j, k, z)| {
                    let w = cayley_to_disc(z).expect("validated above");
                    serde_json::json!({
                        "j": j, "k": k,
                        "re_u": z.re, "im_u": z.im,
                        "re_d": w.re, "im_d": w.im,
                    })
                })
                .collect();
            let doc = serde_json::json!({
                "points": points_json,
                "summary": serde_json::to_value(&summary).expect("summary"),
            });
            let mut text = serde_json::to_string_pretty(&doc).expect("serialization");
            text.push('\n');
            write_output(args.out.as_ref(), &text)?;
        }
        OutputFormat::Csv => match args.out.as_ref() {
            Some(_) => {
                write_output(args.out.as_ref(), &csv)?;
                println!("{summary_json}");
            }
            None => {
                print!("{csv}");
                eprintln!("{summary_json}");
            }
        },
    }
    Ok(0)
}

// ----------------------------------------------------------- transform

#[derive(Debug, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TransformArgs {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub xmin: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub xmax: Option<f64>,
    #[arg(long)]
    pub xsteps: Option<usize>,
    #[arg(long)]
    pub smin: Option<f64>,
    #[arg(long)]
    pub smax: Option<f64>,
    #[arg(long)]
    pub ssteps: Option<usize>,
    /// Basis parameter of the signal (defaults to the wavelet's alpha).
    #[arg(long)]
    pub basis_alpha: Option<f64>,
    /// Signal coefficients as re:im pairs, e.g. "1:0,0:-0.5".
    #[arg(long)]
    pub coeffs: Option<String>,
    /// Extra floor on the quadrature order.
    #[arg(long)]
    pub quad_order: Option<usize>,
    /// Output format: csv or json.
    #[arg(long)]
    pub format: Option<String>,
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

fn parse_coeffs(text: &str) -> Result<Vec<Complex64>> {
    text.split(',')
        .map(|pair| {
            let mut it = pair.split(':');
            let re = it
                .next()
                .and_then(|s| s.trim().parse::<f64>().ok())
                .ok_or_else(|| Error::Config(format!("bad coefficient `{pair}`")))?;
            let im = match it.next() {
                Some(s) => s
                    .trim()
                    .parse::<f64>()
                    .map_err(|_| Error::Config(format!("bad coefficient `{pair}`")))?,
                None => 0.0,
            };
            if it.next().is_some() {
                return Err(Error::Config(format!("bad coefficient `{pair}`")));
            }
            Ok(Complex64::new(re, im))
        })
        .collect()
}

fn linspace(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    if steps <= 1 {
        return vec![lo];
    }
    (0..steps)
        .map(|i| lo + (hi - lo) * i as f64 / (steps - 1) as f64)
        .collect()
}

fn geomspace(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    if steps <= 1 {
        return vec![lo];
    }
    let (llo, lhi) = (lo.ln(), hi.ln());
    (0..steps)
        .map(|i| (llo + (lhi - llo) * i as f64 / (steps - 1) as f64).exp())
        .collect()
}

fn cmd_transform(mut args: TransformArgs) -> Result<i32> {
    if let Some(path) = args.config.clone() {
        let file: TransformArgs = load_config(&path)?;
        overlay!(args, file; n, alpha, xmin, xmax, xsteps, smin, smax, ssteps,
                 basis_alpha, coeffs, quad_order, format);
    }
    let alpha = require(args.alpha, "alpha")?;
    let order = WaveletOrder::new(require(args.n, "n")?, alpha)?;
    let basis_alpha = args.basis_alpha.unwrap_or(alpha);
    let coefficients = match args.coeffs.as_deref() {
        Some(text) => parse_coeffs(text)?,
        None => vec![Complex64::new(1.0, 0.0)],
    };
    let signal = SpectralSignal::new(basis_alpha, coefficients)?;
    let xs = linspace(
        args.xmin.unwrap_or(-5.0),
        args.xmax.unwrap_or(5.0),
        args.xsteps.unwrap_or(41),
    );
    let smin = args.smin.unwrap_or(0.25);
    let smax = args.smax.unwrap_or(4.0);
    if !(smin > 0.0 && smax >= smin) {
        return Err(Error::Parameter {
            name: "smin",
            value: smin,
            constraint: "scale grid needs 0 < smin <= smax",
        });
    }
    let ss = geomspace(smin, smax, args.ssteps.unwrap_or(17));
    let cache = RuleCache::with_floor(args.quad_order.unwrap_or(0));
    let mut rows = Vec::with_capacity(xs.len() * ss.len());
    for &x in &xs {
        for &s in &ss {
            let p = TimeScalePoint::new(x, s)?;
            rows.push((x, s, wavelet_coefficient(&signal, &order, &p, &cache)?));
        }
    }
    let text = match parse_format(args.format.as_deref(), OutputFormat::Csv)? {
        OutputFormat::Csv => {
            let mut csv = String::from("x,s,re,im\n");
            for (x, s, w) in &rows {
                let _ = writeln!(
                    csv,
                    "{},{},{},{}",
                    fmt_f64(*x),
                    fmt_f64(*s),
                    fmt_f64(w.re),
                    fmt_f64(w.im)
                );
            }
            csv
        }
        OutputFormat::Json => {
            let items: Vec<serde_json::Value> = rows
                .iter()
                .map(|(x, s, w)| serde_json::json!({"x": x, "s": s, "re": w.re, "im": w.im}))
                .collect();
            let mut text = serde_json::to_string_pretty(&items).expect("serialization");
            text.push('\n');
            text
        }
    };
    write_output(args.out.as_ref(), &text)?;
    Ok(0)
}

// --------------------------------------------------------- framebounds

#[derive(Debug, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FrameboundsArgs {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub a: Option<f64>,
    #[arg(long)]
    pub b: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub jmin: Option<i32>,
    #[arg(long, allow_negative_numbers = true)]
    pub jmax: Option<i32>,
    #[arg(long, allow_negative_numbers = true)]
    pub kmin: Option<i32>,
    #[arg(long, allow_negative_numbers = true)]
    pub kmax: Option<i32>,
    #[arg(long)]
    pub basis_size: Option<usize>,
    #[arg(long)]
    pub basis_alpha: Option<f64>,
    #[arg(long)]
    pub quad_order: Option<usize>,
    /// Use the configured ranges literally instead of extending them.
    #[arg(long)]
    #[serde(skip)]
    pub no_auto_extend: bool,
    /// Output format: csv or json.
    #[arg(long)]
    pub format: Option<String>,
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

fn cmd_framebounds(mut args: FrameboundsArgs) -> Result<i32> {
    if let Some(path) = args.config.clone() {
        let file: FrameboundsArgs = load_config(&path)?;
        overlay!(args, file; n, alpha, a, b, jmin, jmax, kmin, kmax,
                 basis_size, basis_alpha, quad_order, format);
    }
    let alpha = require(args.alpha, "alpha")?;
    let order = WaveletOrder::new(require(args.n, "n")?, alpha)?;
    let lattice = HyperbolicLattice::new(
        require(args.a, "a")?,
        require(args.b, "b")?,
        (args.jmin.unwrap_or(-3), args.jmax.unwrap_or(3)),
        (args.kmin.unwrap_or(-12), args.kmax.unwrap_or(12)),
    )?;
    let cfg = FrameAnalysisConfig {
        order,
        atoms: AtomSequence::Lattice(lattice),
        basis_size: args.basis_size.unwrap_or(16),
        basis_alpha: args.basis_alpha.unwrap_or(alpha),
        quadrature_order: args.quad_order.unwrap_or(0),
        auto_extend: !args.no_auto_extend,
    };
    if parse_format(args.format.as_deref(), OutputFormat::Json)? != OutputFormat::Json {
        return Err(Error::Config(
            "framebounds reports are JSON only".to_string(),
        ));
    }
    let report = crate::frames::frame_bounds(&cfg)?;
    let mut json = report.to_json();
    json.push('\n');
    write_output(args.out.as_ref(), &json)?;
    Ok(0)
}

// --------------------------------------------------------------- sweep

#[derive(Debug, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepArgs {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    /// Lattice parameters as a:b pairs, e.g. "2.0:1.0,4.81:0.5".
    #[arg(long)]
    pub pairs: Option<String>,
    /// Basis sizes, e.g. "8,16,32".
    #[arg(long)]
    pub m_schedule: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    pub jmin: Option<i32>,
    #[arg(long, allow_negative_numbers = true)]
    pub jmax: Option<i32>,
    #[arg(long, allow_negative_numbers = true)]
    pub kmin: Option<i32>,
    #[arg(long, allow_negative_numbers = true)]
    pub kmax: Option<i32>,
    /// Output format: csv or json.
    #[arg(long)]
    pub format: Option<String>,
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

fn cmd_sweep(mut args: SweepArgs) -> Result<i32> {
    if let Some(path) = args.config.clone() {
        let file: SweepArgs = load_config(&path)?;
        overlay!(args, file; n, alpha, pairs, m_schedule, jmin, jmax, kmin, kmax, format);
    }
    let alpha = require(args.alpha, "alpha")?;
    let order = WaveletOrder::new(require(args.n, "n")?, alpha)?;
    let pairs_text = require(args.pairs.clone(), "pairs")?;
    // malformed pairs become failed rows rather than aborting the sweep
    let pairs: Vec<(f64, f64)> = pairs_text
        .split(',')
        .map(|pair| {
            let mut it = pair.split(':');
            let a = it.next().and_then(|s| s.trim().parse::<f64>().ok());
            let b = it.next().and_then(|s| s.trim().parse::<f64>().ok());
            match (a, b, it.next()) {
                (Some(a), Some(b), None) => (a, b),
                _ => (f64::NAN, f64::NAN),
            }
        })
        .collect();
    let m_schedule: Vec<usize> = require(args.m_schedule.clone(), "m-schedule")?
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::Config(format!("bad basis size `{s}`")))
        })
        .collect::<Result<_>>()?;
    let rows = threshold_sweep(
        order,
        &pairs,
        &m_schedule,
        (args.jmin.unwrap_or(-3), args.jmax.unwrap_or(3)),
        (args.kmin.unwrap_or(-12), args.kmax.unwrap_or(12)),
    );
    let text = match parse_format(args.format.as_deref(), OutputFormat::Csv)? {
        OutputFormat::Csv => {
            let mut csv = String::from("blog_a,density_est,threshold,inside,M,a_est,b_est\n");
            for row in &rows {
                let inside = if row.failed {
                    "failed".to_string()
                } else if row.inside {
                    "1".to_string()
                } else {
                    "0".to_string()
                };
                let _ = writeln!(
                    csv,
                    "{},{},{},{},{},{},{}",
                    fmt_f64(row.b_log_a),
                    fmt_f64(row.density_est),
                    fmt_f64(row.threshold),
                    inside,
                    row.m,
                    fmt_f64(row.a_est),
                    fmt_f64(row.b_est)
                );
            }
            csv
        }
        OutputFormat::Json => {
            let mut text = serde_json::to_string_pretty(&rows).expect("serialization");
            text.push('\n');
            text
        }
    };
    write_output(args.out.as_ref(), &text)?;
    Ok(0)
}

// -------------------------------------------------------------- verify

#[derive(Debug, Default, Args)]
pub struct VerifyArgs {
    /// Run a single suite: route, laguerre-orth, circle-orth, repcomb,
    /// proportionality, isometry, derivative or density.
    #[arg(long)]
    pub only: Option<String>,
    /// Self-test: clamp one tolerance to zero and expect exit code 1.
    #[arg(long)]
    pub inject_failure: bool,
    /// Write the suite results as JSON in addition to the table.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn cmd_verify(args: VerifyArgs) -> Result<i32> {
    if let Some(only) = args.only.as_deref() {
        if !SUITE_NAMES.contains(&only) {
            return Err(Error::Config(format!(
                "unknown suite `{only}` (expected one of {})",
                SUITE_NAMES.join(", ")
            )));
        }
    }
    let options = VerifyOptions {
        only: args.only.clone(),
        inject_failure: args.inject_failure,
    };
    let results = verify::run(&options)?;
    let mut all_pass = true;
    for suite in &results {
        println!(
            "suite {:<14} {}",
            suite.name,
            if suite.passed { "PASS" } else { "FAIL" }
        );
        for check in &suite.checks {
            println!(
                "  [{}] {} : {:.3e} (tolerance {:.3e})",
                if check.pass { "ok  " } else { "FAIL" },
                check.label,
                check.value,
                check.threshold
            );
        }
        for note in &suite.notes {
            println!("  note: {note}");
        }
        all_pass &= suite.passed;
    }
    println!(
        "verification: {}",
        if all_pass { "all suites passed" } else { "FAILURES present" }
    );
    if let Some(path) = args.out.as_ref() {
        let json =
            serde_json::to_string_pretty(&results).expect("suite serialization");
        std::fs::write(path, json)
            .map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(if all_pass { 0 } else { 1 })
}
