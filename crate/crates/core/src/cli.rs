//! The `sl2r` command line.
//!
//! Arrays go out as CSV and reports as JSON, on stdout unless `--out` names a
//! file. Failures print a JSON record `{"error": kind, "message": ...}` on
//! stderr and exit nonzero; `verify` exits with its failure count, capped at 125.

use crate::config::{RunConfig, CONFIG_ENV};
use crate::convolution::{intertwine, BiTypeProfile, IntertwineConfig};
use crate::error::{domain, Result};
use crate::io::{read_bitype, read_profile, read_symbol, write_json, write_profile, write_symbol, write_table};
use crate::kernels::{heat_kernel, resolvent_kernel};
use crate::special::{binomial_residue_formula, c_function, c_inv_poles, SpectralParam};
use crate::spherical::{phi_big, phi_radial};
use crate::transform::{
    invert_axis_many, invert_contour_many, plancherel_check, HeatSymbol, RationalSymbol, SphericalSymbol,
    TabulatedSymbol, TransformSymbol,
};
use crate::verify;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64 as C64;
use serde::Serialize;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Debug, Parser)]
#[command(name = "sl2r", version, about = "Spherical harmonic analysis of type m on SL(2,R)")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub cmd: Command,
}

/// Flags shared by every subcommand; they override the config file.
#[derive(Debug, Args)]
pub struct Common {
    /// JSON run configuration (defaults to the file named by SL2R_CONFIG).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// K-type.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub m: Option<i64>,
    /// Weight exponent α of ω(x) = ‖x‖^α.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Also write the main output as tidy CSV `series,x,y`.
    #[arg(long, global = true)]
    pub plot_data: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Upper bound on worker threads.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EvalKind {
    /// φ_{m,s}(a_r) on the r-grid.
    #[value(name = "phi")]
    Phi,
    /// Φ_{m,s}(a_r) on the r-grid.
    #[value(name = "Phi")]
    BigPhi,
    /// c_m(s) and |c_m(s)|⁻².
    C,
    /// Positive poles of c_m⁻¹ and their residues.
    #[value(name = "cinv-poles")]
    CinvPoles,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate spherical functions or the c-function.
    Eval {
        #[arg(long, value_enum)]
        kind: EvalKind,
        /// Spectral parameter `RE,IM`.
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        s: Option<C64>,
        /// Radii `a:b:n`.
        #[arg(long, value_parser = parse_grid)]
        r_grid: Option<Grid>,
    },
    /// Spherical transform of a profile on the axis `s = iλ`.
    Transform {
        #[arg(long = "in")]
        input: PathBuf,
        /// λ values `a:b:n`.
        #[arg(long, value_parser = parse_grid)]
        axis: Grid,
    },
    /// Inverse transform of a tabulated, heat or resolvent symbol.
    Invert {
        /// Tabulated symbol (`lambda,re,im` plus sidecar).
        #[arg(long = "in", conflicts_with_all = ["heat", "resolvent"])]
        input: Option<PathBuf>,
        /// Heat symbol at this time.
        #[arg(long, conflicts_with = "resolvent")]
        heat: Option<f64>,
        /// Resolvent symbol `(z² - s²)⁻¹` at `RE,IM`.
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        resolvent: Option<C64>,
        #[arg(long, value_parser = parse_grid)]
        r_grid: Grid,
        /// Integrate along Re s = δ instead of the axis.
        #[arg(long, allow_hyphen_values = true)]
        delta: Option<f64>,
    },
    /// Heat kernel h_t.
    Heat {
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
    },
    /// Resolvent kernel r_z.
    Resolvent {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        z: C64,
    },
    /// Both sides of the Plancherel identity for a profile.
    Plancherel {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// `f * g` against `g * f'`; without files, uses radius-1 bumps of types (0, 0) and (0, 2).
    Intertwine {
        /// Profile of type n.
        #[arg(long)]
        f: Option<PathBuf>,
        /// Profile of type (n, m).
        #[arg(long)]
        g: Option<PathBuf>,
        /// Probe radii, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "0.25,0.5,1,1.5")]
        probes: Vec<f64>,
    },
    /// Run acceptance checks and print a JSON scorecard.
    Verify {
        /// `all`, `fast`, or comma-separated check ids.
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

/// `"1.5,-2"` or `"1.5"`.
pub fn parse_complex(text: &str) -> std::result::Result<C64, String> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let num = |p: &str| p.parse::<f64>().map_err(|_| format!("bad number {p:?} in {text:?}"));
    match parts.as_slice() {
        [re] => Ok(C64::new(num(re)?, 0.0)),
        [re, im] => Ok(C64::new(num(re)?, num(im)?)),
        _ => Err(format!("expected RE,IM, found {text:?}")),
    }
}

/// Points parsed from `a:b:n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid(pub Vec<f64>);

/// `"a:b:n"`: n equally spaced points from a to b inclusive.
pub fn parse_grid(text: &str) -> std::result::Result<Grid, String> {
    let parts: Vec<&str> = text.split(':').map(str::trim).collect();
    let [a, b, n] = parts.as_slice() else {
        return Err(format!("expected a:b:n, found {text:?}"));
    };
    let a: f64 = a.parse().map_err(|_| format!("bad start in {text:?}"))?;
    let b: f64 = b.parse().map_err(|_| format!("bad end in {text:?}"))?;
    let n: usize = n.parse().map_err(|_| format!("bad count in {text:?}"))?;
    if n == 0 || !a.is_finite() || !b.is_finite() || (n > 1 && !(b > a)) {
        return Err(format!("{text:?} needs n >= 1 and a < b"));
    }
    if n == 1 {
        return Ok(Grid(vec![a]));
    }
    Ok(Grid((0..n).map(|k| a + (b - a) * k as f64 / (n - 1) as f64).collect()))
}

/// Config file overlaid with the explicit flags; `env_config` is the value of
/// `SL2R_CONFIG`.
pub fn resolve_config(c: &Common, env_config: Option<PathBuf>) -> Result<RunConfig> {
    let mut cfg = RunConfig::load_with(c.config.as_deref(), env_config)?;
    if let Some(m) = c.m {
        cfg.m = m;
    }
    if let Some(a) = c.alpha {
        cfg.alpha = a;
    }
    if c.out.is_some() {
        cfg.out = c.out.clone();
    }
    if c.plot_data.is_some() {
        cfg.plot_data = c.plot_data.clone();
    }
    if let Some(s) = c.seed {
        cfg.seed = s;
    }
    if let Some(t) = c.threads {
        cfg.threads = t;
    }
    cfg.validate()?;
    Ok(cfg)
}

/// A table whose first column is the abscissa.
struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<f64>>,
}

impl Table {
    fn complex(x: &'static str, xs: &[f64], values: &[C64]) -> Self {
        Table { header: vec![x, "re", "im"], rows: xs.iter().zip(values).map(|(x, v)| vec![*x, v.re, v.im]).collect() }
    }

    fn tidy(&self) -> Table {
        let mut rows = Vec::new();
        for (j, _) in self.header.iter().enumerate().skip(1) {
            for row in &self.rows {
                rows.push(vec![j as f64, row[0], row[j]]);
            }
        }
        Table { header: vec!["series", "x", "y"], rows }
    }
}

fn write_plot(path: &Path, t: &Table) -> Result<()> {
    // the series column carries names, so it is written by hand
    let tidy = t.tidy();
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(&tidy.header)?;
    for row in &tidy.rows {
        let name = t.header[row[0] as usize];
        w.write_record([name.to_string(), format!("{:?}", row[1]), format!("{:?}", row[2])])?;
    }
    w.flush()?;
    Ok(())
}

fn emit_table(cfg: &RunConfig, out: &mut dyn Write, t: &Table) -> Result<()> {
    match &cfg.out {
        Some(p) => write_table(std::fs::File::create(p)?, &t.header, &t.rows)?,
        None => write_table(out, &t.header, &t.rows)?,
    }
    if let Some(p) = &cfg.plot_data {
        write_plot(p, t)?;
    }
    Ok(())
}

fn emit_json<T: Serialize>(value: &T, to: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    match to {
        Some(p) => write_json(p, value),
        None => {
            serde_json::to_writer_pretty(&mut *out, value)?;
            writeln!(out)?;
            Ok(())
        }
    }
}

fn emit_profile(cfg: &RunConfig, out: &mut dyn Write, p: &crate::transform::RadialProfile) -> Result<()> {
    let t = Table::complex("r", p.grid.nodes(), &p.values);
    match &cfg.out {
        Some(path) => write_profile(path, p)?,
        None => write_table(out, &t.header, &t.rows)?,
    }
    if let Some(path) = &cfg.plot_data {
        write_plot(path, &t)?;
    }
    Ok(())
}

fn need<T>(v: Option<T>, what: &str) -> Result<T> {
    v.ok_or_else(|| domain(format!("this command needs --{what}")))
}

fn eval(cfg: &RunConfig, out: &mut dyn Write, kind: EvalKind, s: Option<C64>, rs: Option<Grid>) -> Result<()> {
    let m = cfg.m;
    match kind {
        EvalKind::Phi | EvalKind::BigPhi => {
            let sp = SpectralParam { s: need(s, "s")? };
            let rs = need(rs, "r-grid")?.0;
            let values = if kind == EvalKind::Phi {
                phi_radial(m, sp, &rs)?
            } else {
                rs.iter().map(|&r| phi_big(m, sp, r)).collect::<Result<Vec<_>>>()?
            };
            emit_table(cfg, out, &Table::complex("r", &rs, &values))
        }
        EvalKind::C => {
            let s = need(s, "s")?;
            let c = c_function(m, SpectralParam { s })?;
            let t = Table {
                header: vec!["s_re", "s_im", "re", "im", "abs_inv_sq"],
                rows: vec![vec![s.re, s.im, c.re, c.im, c.norm_sqr().recip()]],
            };
            emit_table(cfg, out, &t)
        }
        EvalKind::CinvPoles => {
            let rows = c_inv_poles(m)
                .positive
                .iter()
                .map(|p| vec![p.location.value(), p.j as f64, p.residue, binomial_residue_formula(m, p.j)])
                .collect();
            emit_table(cfg, out, &Table { header: vec!["s", "j", "residue", "binomial_formula"], rows })
        }
    }
}

fn transform(cfg: &RunConfig, out: &mut dyn Write, input: &Path, axis: Vec<f64>) -> Result<()> {
    let f = read_profile(input)?;
    let psi = TransformSymbol::new(f);
    let values = axis.iter().map(|&l| psi.eval(C64::new(0.0, l))).collect::<Result<Vec<_>>>()?;
    let t = Table::complex("lambda", &axis, &values);
    match &cfg.out {
        // a file keeps the discrete values as well, so it can be inverted
        Some(p) => write_symbol(p, &TabulatedSymbol::sample(&psi, axis)?)?,
        None => write_table(out, &t.header, &t.rows)?,
    }
    if let Some(p) = &cfg.plot_data {
        write_plot(p, &t)?;
    }
    Ok(())
}

fn invert(
    cfg: &RunConfig,
    out: &mut dyn Write,
    input: Option<PathBuf>,
    heat: Option<f64>,
    resolvent: Option<C64>,
    rs: Vec<f64>,
    delta: Option<f64>,
) -> Result<()> {
    let psi: Box<dyn SphericalSymbol> = match (input, heat, resolvent) {
        (Some(p), _, _) => Box::new(read_symbol(&p)?),
        (_, Some(t), _) => Box::new(HeatSymbol::new(cfg.m, t)?),
        (_, _, Some(z)) => Box::new(RationalSymbol::resolvent(cfg.m, z)?),
        _ => return Err(domain("invert needs one of --in, --heat or --resolvent")),
    };
    let q = cfg.spectral();
    let values = match delta {
        Some(d) => invert_contour_many(psi.as_ref(), &rs, d, &q)?,
        None => invert_axis_many(psi.as_ref(), &rs, &q)?,
    };
    emit_table(cfg, out, &Table::complex("r", &rs, &values))
}

#[derive(Serialize)]
struct PlancherelOut {
    m: i64,
    lhs: f64,
    rhs: f64,
    continuous: f64,
    discrete: f64,
    ratio: f64,
}

#[derive(Serialize)]
struct IntertwineOut {
    n: i64,
    m: i64,
    probes: Vec<f64>,
    lhs: Vec<[f64; 2]>,
    rhs: Vec<[f64; 2]>,
    residual: f64,
}

fn intertwine_cmd(cfg: &RunConfig, out: &mut dyn Write, f: Option<PathBuf>, g: Option<PathBuf>, probes: Vec<f64>) -> Result<()> {
    let g = match g {
        Some(p) => read_bitype(&p)?,
        None => BiTypeProfile::bump(0, 2, 1.0)?,
    };
    let f = match f {
        Some(p) => read_profile(&p)?,
        None => BiTypeProfile::bump(g.n, g.n, 1.0)?.radial,
    };
    let res = intertwine(&f, &g, &probes, &IntertwineConfig::default())?;
    if let Some(p) = &cfg.out {
        write_profile(p, &res.f_prime)?;
    }
    let pair = |v: &Vec<C64>| v.iter().map(|c| [c.re, c.im]).collect();
    let report = IntertwineOut {
        n: g.n,
        m: g.m(),
        probes: res.probes.clone(),
        lhs: pair(&res.lhs),
        rhs: pair(&res.rhs),
        residual: res.residual,
    };
    if let Some(p) = &cfg.plot_data {
        let rows = probes.iter().zip(res.lhs.iter().zip(&res.rhs)).map(|(r, (a, b))| vec![*r, a.re, b.re]).collect();
        write_plot(p, &Table { header: vec!["r", "lhs_re", "rhs_re"], rows })?;
    }
    emit_json(&report, None, out)
}

/// Returns the number of failed checks.
fn verify_cmd(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write, suite: &str) -> Result<usize> {
    let ids = verify::suite(suite)?;
    let mut checks = Vec::new();
    for id in ids {
        let o = verify::run_check(id, cfg.seed);
        writeln!(err, "{}", o.line())?;
        checks.push(o.check);
    }
    emit_json(&checks, cfg.out.as_deref(), out)?;
    if let Some(p) = &cfg.plot_data {
        let rows = checks.iter().enumerate().map(|(i, c)| vec![i as f64, c.measured]).collect();
        write_plot(p, &Table { header: vec!["index", "measured"], rows })?;
    }
    Ok(checks.iter().filter(|c| !c.pass).count())
}

/// Runs a parsed command; the value is the process exit code.
pub fn execute(cli: Cli, env_config: Option<PathBuf>, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let cfg = resolve_config(&cli.common, env_config)?;
    match cli.cmd {
        Command::Eval { kind, s, r_grid } => eval(&cfg, out, kind, s, r_grid)?,
        Command::Transform { input, axis } => transform(&cfg, out, &input, axis.0)?,
        Command::Invert { input, heat, resolvent, r_grid, delta } => {
            invert(&cfg, out, input, heat, resolvent, r_grid.0, delta)?
        }
        Command::Heat { t } => emit_profile(&cfg, out, &heat_kernel(cfg.m, t, &cfg.cutoffs()?, &cfg.kernel()?)?)?,
        Command::Resolvent { z } => {
            emit_profile(&cfg, out, &resolvent_kernel(cfg.m, z, &cfg.cutoffs()?, &cfg.kernel()?)?)?
        }
        Command::Plancherel { input } => {
            let f = read_profile(&input)?;
            let r = plancherel_check(&f, &cfg.spectral())?;
            let report = PlancherelOut {
                m: f.m,
                lhs: r.lhs,
                rhs: r.rhs,
                continuous: r.continuous,
                discrete: r.discrete,
                ratio: r.ratio(),
            };
            emit_json(&report, cfg.out.as_deref(), out)?;
        }
        Command::Intertwine { f, g, probes } => intertwine_cmd(&cfg, out, f, g, probes)?,
        Command::Verify { suite } => return Ok(verify_cmd(&cfg, out, err, &suite)?.min(125) as i32),
    }
    Ok(0)
}

fn error_record(err: &mut dyn Write, kind: &str, message: &str) {
    let rec = serde_json::json!({ "error": kind, "message": message });
    // nothing sensible is left to do if stderr is gone
    let _ = writeln!(err, "{rec}");
}

/// Parses `args` (including the program name) and runs the command against
/// the process streams and environment.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let env_config = std::env::var_os(CONFIG_ENV).map(PathBuf::from);
    run_with(args, env_config, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

/// As [`run`], with explicit streams and `SL2R_CONFIG` value.
pub fn run_with<I, T>(args: I, env_config: Option<PathBuf>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = write!(out, "{e}");
            return 0;
        }
        Err(e) => {
            error_record(err, "usage", e.to_string().trim());
            return 2;
        }
    };
    let code = match execute(cli, env_config, out, err) {
        Ok(code) => code,
        Err(e) => {
            error_record(err, e.kind(), &e.to_string());
            1
        }
    };
    let _ = out.flush();
    code
}
