//! Command-line front end for `satotate-core`.
//!
//! Every subcommand produces a [`Table`] that is rendered as CSV (header row
//! first) or as a JSON array of objects. Reals use 12 significant digits;
//! big integers and rationals are strings. Output does not depend on the
//! thread count.

pub mod output;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use satotate_core::beurling::{selberg, IntervalJ, Sign};
use satotate_core::classnumber::hurwitz;
use satotate_core::curves::{trace_histogram, verify_deuring, HistogramMode};
use satotate_core::ff::{prime_power, FieldContext};
use satotate_core::modforms::trace_tk_mf;
use satotate_core::satotate::{
    count_in_histogram, default_degree, discrepancy_table, exponent_fit, interval_grid,
    moment_sum, sandwich, AngleInterval, Endpoints,
};
use satotate_core::traceformula::trace_tk_es;

pub use output::{format_g, Cell, Format, Table};

pub const THREADS_ENV: &str = "SATOTATE_THREADS";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] satotate_core::Error),
    #[error("cannot write output: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

#[derive(Debug, Parser)]
#[command(name = "satotate", version, about = "Exact Sato-Tate experiments for y^2 = x^3 + ax + b over F_q")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "csv")]
    pub format: Format,

    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Worker threads (0 = all cores).
    #[arg(long, global = true, env = THREADS_ENV, default_value_t = 0)]
    pub threads: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct FieldArgs {
    /// Characteristic, at least 5.
    #[arg(long)]
    pub p: Option<u64>,
    /// Extension degree (1 when only --p is given).
    #[arg(long)]
    pub r: Option<u32>,
    /// Field order p^r.
    #[arg(long)]
    pub q: Option<u64>,
}

impl FieldArgs {
    pub fn context(&self) -> Result<FieldContext, CliError> {
        let (p, r) = match (self.p, self.r, self.q) {
            (Some(p), r, _) => (p, r.unwrap_or(1)),
            (None, _, Some(q)) => {
                prime_power(q).ok_or_else(|| CliError::Usage(format!("{q} is not a prime power")))?
            }
            (None, _, None) => return Err(CliError::Usage("give --p [--r] or --q".into())),
        };
        if let Some(r_flag) = self.r {
            if r_flag != r {
                return Err(CliError::Usage(format!("--r {r_flag} is inconsistent with --q")));
            }
        }
        let ctx = FieldContext::new(p, r).map_err(|e| CliError::Usage(e.to_string()))?;
        if let Some(q) = self.q {
            if q != ctx.q() {
                return Err(CliError::Usage(format!(
                    "--q {q} is inconsistent with p^r = {p}^{r} = {}",
                    ctx.q()
                )));
            }
        }
        Ok(ctx)
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Mode {
    /// Enumerate every pair (a, b).
    Brute,
    /// Enumerate twist-orbit representatives.
    Orbit,
    /// Orbit mode above q = 200, brute otherwise.
    Auto,
}

impl Mode {
    fn resolve(self, q: u64) -> HistogramMode {
        match self {
            Mode::Brute => HistogramMode::Brute,
            Mode::Orbit => HistogramMode::Orbit,
            Mode::Auto => HistogramMode::default_for(q),
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SignArg {
    /// Majorant S+.
    Plus,
    /// Minorant S-.
    Minus,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Number of nonsingular curves with Frobenius angle in an interval.
    /// Emits `q,alpha,beta,N_I`.
    Count {
        #[command(flatten)]
        field: FieldArgs,
        /// Angles in radians, 0 <= ALPHA < BETA <= pi (pi = 3.14159265358979).
        #[arg(long, num_args = 2, value_names = ["ALPHA", "BETA"], required = true)]
        interval: Vec<f64>,
        /// Exclude BETA.
        #[arg(long)]
        half_open: bool,
        #[arg(long, value_enum, default_value = "auto")]
        mode: Mode,
    },
    /// Trace histogram over nonsingular (a, b). Emits `q,t,count`.
    Histogram {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_enum, default_value = "auto")]
        mode: Mode,
    },
    /// Hurwitz class numbers as 12 H(N). Emits `N,twelve_H,form_count`.
    Classnum {
        #[arg(long)]
        n: u64,
        /// Emit every N from --n through --to.
        #[arg(long)]
        to: Option<u64>,
    },
    /// Trace of T_q on S_k from class numbers, term by term.
    /// Emits `k,q,square_term,elliptic_term,divisor_term,total`.
    TraceEs {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        q: u64,
    },
    /// Trace of T_n on S_k from q-expansions. Emits `k,n,trace`.
    TraceMf {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: u64,
    },
    /// Compare both trace computations for even k <= KMAX and prime powers
    /// 5 <= q <= QMAX with p >= 5. Emits `k,q,es_total,mf_total,match`;
    /// exits 1 on any mismatch.
    VerifyEs {
        #[arg(long, default_value_t = 30)]
        kmax: u32,
        #[arg(long, default_value_t = 49)]
        qmax: u64,
    },
    /// Compare counts[t] with (q - 1) H(4q - t^2) / 2 for t^2 < 4q.
    /// Emits `q,t,count,twelve_h,expected,status` where status is `match`,
    /// `mismatch` or `unasserted` (rows with p | t); exits 1 on any mismatch.
    VerifyDeuring {
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Fourier coefficients of the Beurling-Selberg polynomial for
    /// J = [ALPHA, BETA] in R/Z. Emits `m,re,im` for -M <= m <= M.
    BsCoeffs {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        beta: f64,
        #[arg(long = "M")]
        m: usize,
        #[arg(long, value_enum)]
        sign: SignArg,
    },
    /// Normalized discrepancy |N_I - mu_ST(I) q^2| / q^{7/4}.
    /// Emits `q,alpha,beta,N_I,main,diff,normalized`, or with --fit
    /// `alpha,beta,slope,points`.
    Discrepancy {
        /// Comma-separated field orders.
        #[arg(long, value_delimiter = ',', required = true)]
        qs: Vec<u64>,
        /// Single closed interval in radians instead of the grid.
        #[arg(long, num_args = 2, value_names = ["ALPHA", "BETA"])]
        interval: Option<Vec<f64>>,
        /// Number of grid cells partitioning [0, pi].
        #[arg(long, default_value_t = 16)]
        cells: usize,
        /// Emit the fitted exponent of |diff| against q per interval.
        #[arg(long)]
        fit: bool,
    },
    /// Beurling-Selberg lower and upper bounds around N_I.
    /// Emits `q,alpha,beta,M,lower,N_I,upper`.
    Sandwich {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, num_args = 2, value_names = ["ALPHA", "BETA"], required = true)]
        interval: Vec<f64>,
        /// Polynomial degree (default max(3, floor(q^{1/4}))).
        #[arg(long = "M")]
        m: Option<usize>,
    },
    /// Even moments of the character sum over all (a, b).
    /// Emits `q,R,value,ratio`.
    Moments {
        #[command(flatten)]
        field: FieldArgs,
        /// Comma-separated orders R (moment 2R), each at most 5.
        #[arg(long = "R", value_delimiter = ',', required = true)]
        orders: Vec<u32>,
    },
}

/// A rendered table and whether every verification it carries passed.
#[derive(Debug)]
pub struct Report {
    pub table: Table,
    pub verified: bool,
}

impl Report {
    fn plain(table: Table) -> Self {
        Report { table, verified: true }
    }
}

fn angle_interval(v: &[f64], endpoints: Endpoints) -> Result<AngleInterval, CliError> {
    AngleInterval::new(v[0], v[1], endpoints).map_err(|e| CliError::Usage(e.to_string()))
}

fn usage<T>(r: satotate_core::Result<T>) -> Result<T, CliError> {
    r.map_err(|e| CliError::Usage(e.to_string()))
}

/// Runs one subcommand on the current rayon pool.
pub fn execute(command: &Command) -> Result<Report, CliError> {
    match command {
        Command::Count { field, interval, half_open, mode } => {
            let ctx = field.context()?;
            let endpoints = if *half_open { Endpoints::HalfOpen } else { Endpoints::Closed };
            let i = angle_interval(interval, endpoints)?;
            let hist = trace_histogram(&ctx, mode.resolve(ctx.q()));
            let mut t = Table::new(&["q", "alpha", "beta", "N_I"]);
            t.push(vec![ctx.q().into(), i.alpha.into(), i.beta.into(), count_in_histogram(&hist, &i).into()]);
            Ok(Report::plain(t))
        }
        Command::Histogram { field, mode } => {
            let ctx = field.context()?;
            let hist = trace_histogram(&ctx, mode.resolve(ctx.q()));
            let mut t = Table::new(&["q", "t", "count"]);
            for (tr, c) in hist.iter() {
                t.push(vec![ctx.q().into(), tr.into(), c.into()]);
            }
            Ok(Report::plain(t))
        }
        Command::Classnum { n, to } => {
            let last = to.unwrap_or(*n);
            if last < *n {
                return Err(CliError::Usage("--to must be at least --n".into()));
            }
            let mut t = Table::new(&["N", "twelve_H", "form_count"]);
            for v in *n..=last {
                let h = usage(hurwitz(v as i64))?;
                t.push(vec![v.into(), h.twelve_h.into(), h.form_count.into()]);
            }
            Ok(Report::plain(t))
        }
        Command::TraceEs { k, q } => {
            let es = usage(trace_tk_es(*k, *q))?;
            let mut t = Table::new(&["k", "q", "square_term", "elliptic_term", "divisor_term", "total"]);
            t.push(vec![
                es.k.into(),
                es.q.into(),
                es.square_term.to_string().into(),
                es.elliptic_term.to_string().into(),
                es.divisor_term.to_string().into(),
                es.total.to_string().into(),
            ]);
            Ok(Report::plain(t))
        }
        Command::TraceMf { k, n } => {
            let trace = usage(trace_tk_mf(*k, *n))?;
            let mut t = Table::new(&["k", "n", "trace"]);
            t.push(vec![(*k).into(), (*n).into(), trace.to_string().into()]);
            Ok(Report::plain(t))
        }
        Command::VerifyEs { kmax, qmax } => {
            let qs: Vec<u64> = (5..=*qmax)
                .filter(|&q| prime_power(q).is_some_and(|(p, _)| p >= 5))
                .collect();
            let pairs: Vec<(u32, u64)> = (4..=*kmax)
                .step_by(2)
                .flat_map(|k| qs.iter().map(move |&q| (k, q)))
                .collect();
            let results = pairs
                .par_iter()
                .map(|&(k, q)| Ok((k, q, trace_tk_es(k, q)?.total, trace_tk_mf(k, q)?)))
                .collect::<satotate_core::Result<Vec<_>>>();
            let results = usage(results)?;
            let mut t = Table::new(&["k", "q", "es_total", "mf_total", "match"]);
            let mut verified = true;
            for (k, q, es, mf) in results {
                let ok = es == mf;
                verified &= ok;
                t.push(vec![k.into(), q.into(), es.to_string().into(), mf.to_string().into(), ok.into()]);
            }
            Ok(Report { table: t, verified })
        }
        Command::VerifyDeuring { field } => {
            let ctx = field.context()?;
            let hist = trace_histogram(&ctx, HistogramMode::Brute);
            let report = verify_deuring(&ctx, &hist);
            let mut t = Table::new(&["q", "t", "count", "twelve_h", "expected", "status"]);
            for row in &report.rows {
                let status = match (row.asserted, row.matches()) {
                    (false, _) => "unasserted",
                    (true, true) => "match",
                    (true, false) => "mismatch",
                };
                t.push(vec![
                    ctx.q().into(),
                    row.t.into(),
                    row.count.into(),
                    row.twelve_h.into(),
                    row.expected.to_string().into(),
                    status.into(),
                ]);
            }
            Ok(Report { table: t, verified: report.passed() })
        }
        Command::BsCoeffs { alpha, beta, m, sign } => {
            let j = usage(IntervalJ::new(*alpha, *beta))?;
            let sign = match sign {
                SignArg::Plus => Sign::Majorant,
                SignArg::Minus => Sign::Minorant,
            };
            let s = usage(selberg(j, *m, sign))?;
            let mut t = Table::new(&["m", "re", "im"]);
            for (idx, c) in s.iter() {
                t.push(vec![idx.into(), c.re.into(), c.im.into()]);
            }
            Ok(Report::plain(t))
        }
        Command::Discrepancy { qs, interval, cells, fit } => {
            let grid = match interval {
                Some(v) => vec![angle_interval(v, Endpoints::Closed)?],
                None if *cells == 0 => return Err(CliError::Usage("--cells must be positive".into())),
                None => interval_grid(*cells),
            };
            let rows = usage(discrepancy_table(qs, &grid))?;
            if *fit {
                let mut t = Table::new(&["alpha", "beta", "slope", "points"]);
                for i in &grid {
                    let pts: Vec<(u64, f64)> = rows
                        .iter()
                        .filter(|r| r.alpha == i.alpha && r.beta == i.beta)
                        .map(|r| (r.q, r.diff))
                        .collect();
                    let slope = exponent_fit(&pts).unwrap_or(f64::NAN);
                    t.push(vec![i.alpha.into(), i.beta.into(), slope.into(), pts.len().into()]);
                }
                return Ok(Report::plain(t));
            }
            let mut t = Table::new(&["q", "alpha", "beta", "N_I", "main", "diff", "normalized"]);
            for r in rows {
                t.push(vec![
                    r.q.into(),
                    r.alpha.into(),
                    r.beta.into(),
                    r.n_i.into(),
                    r.main.into(),
                    r.diff.into(),
                    r.normalized.into(),
                ]);
            }
            Ok(Report::plain(t))
        }
        Command::Sandwich { field, interval, m } => {
            let ctx = field.context()?;
            let i = angle_interval(interval, Endpoints::Closed)?;
            let degree = m.unwrap_or_else(|| default_degree(ctx.q()).max(3));
            let hist = trace_histogram(&ctx, HistogramMode::default_for(ctx.q()));
            let s = usage(sandwich(&hist, &i, degree))?;
            let mut t = Table::new(&["q", "alpha", "beta", "M", "lower", "N_I", "upper"]);
            t.push(vec![
                ctx.q().into(),
                i.alpha.into(),
                i.beta.into(),
                degree.into(),
                s.lower.into(),
                count_in_histogram(&hist, &i).into(),
                s.upper.into(),
            ]);
            Ok(Report::plain(t))
        }
        Command::Moments { field, orders } => {
            let ctx = field.context()?;
            let hist = trace_histogram(&ctx, HistogramMode::default_for(ctx.q()));
            let mut t = Table::new(&["q", "R", "value", "ratio"]);
            for &r in orders {
                let m = usage(moment_sum(&ctx, &hist, r))?;
                t.push(vec![ctx.q().into(), r.into(), m.value.to_string().into(), m.ratio.into()]);
            }
            Ok(Report::plain(t))
        }
    }
}

/// Runs the parsed command inside a pool of the requested size and writes
/// the result. Returns the process exit code.
pub fn run(cli: &Cli) -> Result<i32, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let report = pool.install(|| execute(&cli.command))?;
    let text = report.table.render(cli.format);
    match &cli.output {
        Some(path) => fs::write(path, text)?,
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(if report.verified { 0 } else { 1 })
}
