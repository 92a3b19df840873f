use std::path::PathBuf;

use clap::{Args, ValueEnum};
use thasym::symbols::ising::IsingParams;
use thasym::symbols::{SymbolFamily, SymbolPair};
use thasym::Precision;

use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SymbolName {
    Trivial,
    Exp,
    Rational,
    Ising,
    /// Symbols given by `--phi-expr` and one of `--d-expr`, `--w-expr`.
    Expr,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Flags shared by every subcommand.
#[derive(Args, Clone, Debug)]
pub struct ConfigArgs {
    /// Working precision in decimal digits (at least 50).
    #[arg(long, global = true, default_value_t = 120)]
    pub precision: u32,
    /// Fourier truncation order M.
    #[arg(long, global = true, default_value_t = 128)]
    pub trunc_order: usize,
    /// Quadrature nodes N (a power of two, at least 4M).
    #[arg(long, global = true, default_value_t = 1024)]
    pub nodes: usize,
    /// Inner contour radius r_* in (r_0, 1); defaults to sqrt(r_0).
    #[arg(long, global = true)]
    pub r_star: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = SymbolName::Ising)]
    pub symbol: SymbolName,
    #[arg(long, global = true)]
    pub phi_expr: Option<String>,
    #[arg(long, global = true)]
    pub d_expr: Option<String>,
    #[arg(long, global = true)]
    pub w_expr: Option<String>,
    /// Analyticity annulus `r_i,r_o`; required for expression symbols.
    #[arg(long, global = true)]
    pub annulus: Option<String>,
    /// Ising parameter q in (0,1).
    #[arg(long, global = true, default_value = "0.5")]
    pub q: String,
    /// Ising boundary parameter; defaults to q^2, the critical line.
    #[arg(long, global = true)]
    pub r_param: Option<String>,
    /// Offsets `r,s`.
    #[arg(long, global = true)]
    pub offsets: Option<String>,
    #[arg(long, global = true)]
    pub n_min: Option<usize>,
    #[arg(long, global = true)]
    pub n_max: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Negate the kernel g23 (fault-injection control).
    #[arg(long, global = true)]
    pub flip_g23: bool,
    /// Lower bound for the h^(0,1) genericity monitors.
    #[arg(long, global = true, default_value_t = 1e-30)]
    pub monitor_threshold: f64,
    /// Seed for synthetic solver data.
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
}

/// Validated run configuration.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub args: ConfigArgs,
    pub prec: Precision,
    pub annulus: Option<(f64, f64)>,
    pub offsets: Option<(i64, i64)>,
}

fn parse_pair<T: std::str::FromStr>(flag: &str, s: &str) -> CliResult<(T, T)> {
    let bad = || CliError::Config(format!("--{flag} expects two comma-separated numbers, got {s:?}"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

impl RunConfig {
    pub fn from_args(args: ConfigArgs) -> CliResult<Self> {
        if args.precision < 50 {
            return Err(CliError::Config(format!("--precision must be at least 50, got {}", args.precision)));
        }
        if !args.nodes.is_power_of_two() || args.nodes < 4 * args.trunc_order {
            return Err(CliError::Config(format!(
                "--nodes must be a power of two and at least 4 * --trunc-order ({}), got {}",
                4 * args.trunc_order,
                args.nodes
            )));
        }
        if let Some(r) = args.r_star {
            if !(r > 0.0 && r < 1.0) {
                return Err(CliError::Config(format!("--r-star must lie in (0, 1), got {r}")));
            }
        }
        if !(args.monitor_threshold >= 0.0) {
            return Err(CliError::Config("--monitor-threshold must be nonnegative".into()));
        }
        let annulus = args.annulus.as_deref().map(|s| parse_pair::<f64>("annulus", s)).transpose()?;
        if let Some((r_i, r_o)) = annulus {
            if !(0.0 <= r_i && r_i < 1.0 && 1.0 < r_o) {
                return Err(CliError::Config(format!("--annulus must satisfy r_i < 1 < r_o, got {r_i},{r_o}")));
            }
        }
        let offsets = args.offsets.as_deref().map(|s| parse_pair::<i64>("offsets", s)).transpose()?;
        if let (Some(a), Some(b)) = (args.n_min, args.n_max) {
            if a > b {
                return Err(CliError::Config(format!("--n-min {a} exceeds --n-max {b}")));
            }
        }
        Ok(Self { prec: Precision::from_digits(args.precision), args, annulus, offsets })
    }

    pub fn digits(&self) -> usize {
        self.args.precision as usize
    }

    pub fn m(&self) -> usize {
        self.args.trunc_order
    }

    pub fn nodes(&self) -> usize {
        self.args.nodes
    }

    pub fn n_range(&self, lo: usize, hi: usize) -> (usize, usize) {
        (self.args.n_min.unwrap_or(lo), self.args.n_max.unwrap_or(hi))
    }

    pub fn ising_params(&self) -> CliResult<IsingParams> {
        let p = match &self.args.r_param {
            Some(r) => IsingParams::new(self.prec, &self.args.q, r)?,
            None => IsingParams::critical(self.prec, &self.args.q)?,
        };
        Ok(p)
    }

    pub fn family(&self) -> CliResult<SymbolFamily> {
        Ok(match self.args.symbol {
            SymbolName::Trivial => SymbolFamily::Trivial,
            SymbolName::Exp => SymbolFamily::ExpType,
            SymbolName::Rational => SymbolFamily::Rational,
            SymbolName::Ising => {
                let params = self.ising_params()?;
                let r = thasym::numerics::float_to_decimal(&params.r, self.digits());
                SymbolFamily::Ising { q: self.args.q.clone(), r }
            }
            SymbolName::Expr => {
                let phi = self.args.phi_expr.clone().ok_or_else(|| CliError::Config("--symbol expr needs --phi-expr".into()))?;
                let (r_i, r_o) = self.annulus.ok_or_else(|| CliError::Config("--symbol expr needs --annulus".into()))?;
                SymbolFamily::Custom { phi, d: self.args.d_expr.clone(), w: self.args.w_expr.clone(), r_i, r_o }
            }
        })
    }

    pub fn pair(&self) -> CliResult<SymbolPair> {
        let pair = self.family()?.build(self.prec)?;
        Ok(match (self.annulus, self.args.symbol) {
            (Some((r_i, r_o)), s) if s != SymbolName::Expr => pair.with_annulus(r_i, r_o),
            _ => pair,
        })
    }

    /// Echo of the configuration for JSON output.
    pub fn to_json(&self) -> serde_json::Value {
        let a = &self.args;
        serde_json::json!({
            "precision": a.precision.to_string(),
            "trunc_order": a.trunc_order.to_string(),
            "nodes": a.nodes.to_string(),
            "r_star": a.r_star.map(|r| r.to_string()),
            "symbol": format!("{:?}", a.symbol).to_lowercase(),
            "q": a.q,
            "r_param": a.r_param,
            "offsets": self.offsets.map(|(r, s)| format!("{r},{s}")),
            "annulus": self.annulus.map(|(r_i, r_o)| format!("{r_i},{r_o}")),
        })
    }
}
