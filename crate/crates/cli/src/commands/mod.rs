mod asymp;
mod check;

pub use asymp::asymp_compare;
pub use check::check;

use thasym::determinants::THSystem;
use thasym::fourier::{fit_line, fourier_coeffs};
use thasym::ising::{criticality_study, MagnetizationSystem};
use thasym::symbols::ising::IsingCase;

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::output::{re_im, real, Table};

pub fn verdict(table: Table) -> CliResult<()> {
    table.failure.map_or(Ok(()), Err)
}

pub fn coeffs(cfg: &RunConfig) -> CliResult<Table> {
    let pair = cfg.pair()?;
    let (p, m, n) = (cfg.prec, cfg.m(), cfg.nodes());
    let phi = fourier_coeffs(&pair.phi, p, m, n)?;
    let w = fourier_coeffs(&pair.w, p, m, n)?;
    let mut t = Table::new("coeffs", &["k", "phi_re", "phi_im", "w_re", "w_im"]);
    for k in -(m as i64)..=m as i64 {
        let [a, b] = re_im(&phi.coeff(k), cfg.digits());
        let [c, d] = re_im(&w.coeff(k), cfg.digits());
        t.push(vec![k.to_string(), a, b, c, d]);
    }
    t.summarize("symbol", pair.name);
    Ok(t)
}

pub fn det(cfg: &RunConfig) -> CliResult<Table> {
    let pair = cfg.pair()?;
    let (p, m, n) = (cfg.prec, cfg.m(), cfg.nodes());
    let (r, s) = cfg.offsets.or(pair.offsets).unwrap_or((0, 0));
    let sys = THSystem::new(fourier_coeffs(&pair.phi, p, m, n)?, fourier_coeffs(&pair.w, p, m, n)?, r, s, p);
    let (lo, hi) = cfg.n_range(0, 10);
    let mut t = Table::new("det", &["n", "det_re", "det_im", "h_re", "h_im", "orth_residual", "status"]);
    for k in lo..=hi {
        let d = sys.det(k)?;
        let [dr, di] = re_im(&d, cfg.digits());
        let row = match sys.orthopoly(k).and_then(|poly| Ok((sys.norm_h(k)?, sys.max_scaled_residual(&poly)?))) {
            Ok((h, res)) => {
                let [hr, hi] = re_im(&h, cfg.digits());
                vec![k.to_string(), dr, di, hr, hi, real(&res, 6), "ok".into()]
            }
            Err(e) => {
                t.warn(format!("n = {k}: {e}"));
                vec![k.to_string(), dr, di, String::new(), String::new(), String::new(), "singular".into()]
            }
        };
        t.push(row);
    }
    t.summarize("symbol", pair.name);
    t.summarize("offsets", format!("{r},{s}"));
    Ok(t)
}

pub fn ising(cfg: &RunConfig) -> CliResult<Table> {
    let params = cfg.ising_params()?;
    let (lo, hi) = cfg.n_range(1, 16);
    if lo < 1 {
        return Err(CliError::Config("--n-min must be at least 1 for ising".into()));
    }
    let mut t = Table::new("ising", &["n", "case", "r", "s", "m_re", "m_im", "increment"]);
    let case = params.case();
    if case == IsingCase::Critical && hi > lo {
        let study = criticality_study(&params, lo, hi, cfg.m(), cfg.nodes())?;
        for row in &study.rows {
            let [a, b] = re_im(&row.m_n, cfg.digits());
            let inc = row.increment.as_ref().map(|v| real(&v.abs(), cfg.digits())).unwrap_or_default();
            t.push(vec![row.n.to_string(), case.label().into(), "0".into(), "1".into(), a, b, inc]);
        }
        if let Some(ratio) = study.fitted_ratio {
            t.summarize("fitted_ratio", ratio.to_string());
        }
        t.summarize("fitted_points", study.fitted_points.to_string());
    } else {
        let sys = MagnetizationSystem::new(&params, cfg.m(), cfg.nodes())?;
        let mut prev = sys.magnetization(lo - 1)?.m_n;
        let mut pts = Vec::new();
        for k in lo..=hi {
            let res = sys.magnetization(k)?;
            let inc = (&res.m_n - &prev).abs();
            if inc > 0.0 {
                pts.push((k as f64, inc.clone().ln().to_f64()));
            }
            let [a, b] = re_im(&res.m_n, cfg.digits());
            let (r, s) = res.offsets;
            t.push(vec![k.to_string(), case.label().into(), r.to_string(), s.to_string(), a, b, real(&inc, cfg.digits())]);
            prev = res.m_n;
        }
        if let Some((slope, _)) = fit_line(&pts) {
            t.summarize("fitted_ratio", slope.exp().to_string());
        }
    }
    t.summarize("case", case.label());
    Ok(t)
}
