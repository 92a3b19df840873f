use std::sync::Arc;

use thasym::asymptotics::{Asymptotics, ContourConfig};
use thasym::determinants::THSystem;
use thasym::fourier::{fit_line, fourier_coeffs};
use thasym::numerics::rel_diff;
use thasym::szego::SzegoModel;
use thasym::Error;

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::output::{re_im, real, Table};

const HEADERS: [&str; 12] =
    ["n", "h_exact_re", "h_exact_im", "h_pred_re", "h_pred_im", "rel_err", "status", "m1", "m2", "m3", "m4", "detail"];

pub fn asymp_compare(cfg: &RunConfig, strict: bool) -> CliResult<Table> {
    let pair = cfg.pair()?;
    let d = pair.d.clone().ok_or_else(|| CliError::Config(format!("{} has no factorization w = d phi", pair.name)))?;
    let (r, s) = cfg.offsets.or(pair.offsets).unwrap_or((1, 1));
    if (r, s) != (1, 1) && (r, s) != (0, 1) {
        return Err(CliError::Config(format!("asymp-compare supports offsets 1,1 and 0,1, got {r},{s}")));
    }
    let (p, m, nodes) = (cfg.prec, cfg.m(), cfg.nodes());
    let model = Arc::new(SzegoModel::new(pair.phi.clone(), d, p, m, nodes)?);
    let mut cc = ContourConfig::default_for(&model, nodes);
    if let Some(r) = cfg.args.r_star {
        cc.r_star = r;
    }
    let asy = Asymptotics::new(model, cc, cfg.args.flip_g23)?;
    let sys = THSystem::new(fourier_coeffs(&pair.phi, p, m, nodes)?, fourier_coeffs(&pair.w, p, m, nodes)?, r, s, p);

    let (lo, hi) = cfg.n_range(6, 20);
    if lo < 2 {
        return Err(CliError::Config("--n-min must be at least 2 for asymp-compare".into()));
    }
    let digits = cfg.digits();
    let mut t = Table::new("asymp-compare", &HEADERS);
    let mut pts = Vec::new();
    for n in lo..=hi {
        let mut row = vec![n.to_string()];
        let exact = sys.norm_h(n - 1);
        match &exact {
            Ok(h) => row.extend(re_im(h, digits)),
            Err(_) => row.extend([String::new(), String::new()]),
        }
        let ni = n as i64;
        let pred = if (r, s) == (1, 1) { asy.predict_h11(ni) } else { asy.predict_h01(ni, cfg.args.monitor_threshold) };
        let (status, detail) = match (&exact, &pred) {
            (Ok(h), Ok(hp)) => {
                let err = rel_diff(h, hp);
                row.extend(re_im(hp, digits));
                row.push(real(&err, 6));
                if err > 0.0 {
                    pts.push((n as f64, err.ln().to_f64()));
                }
                ("ok", String::new())
            }
            (exact, pred) => {
                match pred {
                    Ok(hp) => row.extend(re_im(hp, digits)),
                    Err(_) => row.extend([String::new(), String::new()]),
                }
                row.push(String::new());
                match (exact, pred) {
                    (Err(e), _) => ("exact-singular", e.to_string()),
                    (_, Err(Error::GenericityFailed(m))) => ("genericity", m.clone()),
                    (_, Err(e)) => ("degenerate", e.to_string()),
                    _ => unreachable!(),
                }
            }
        };
        row.push(status.into());
        if (r, s) == (0, 1) {
            row.extend(asy.monitors(ni).values.iter().map(|v| real(v, 6)));
        } else {
            row.extend(std::iter::repeat(String::new()).take(4));
        }
        if status != "ok" {
            t.warn(format!("n = {n}: {status}: {detail}"));
        }
        row.push(detail);
        t.push(row);
    }
    t.summarize("symbol", pair.name);
    t.summarize("offsets", format!("{r},{s}"));
    t.summarize("r_star", cc_string(&asy));
    t.summarize("alpha0", real(&asy.alpha0.re, digits));
    t.summarize("c_rho0", real(&asy.c_rho0.re, digits));
    t.summarize("flagged_rows", t.warnings.len().to_string());
    match fit_line(&pts) {
        Some((slope, _)) => t.summarize("fitted_slope", slope.to_string()),
        None => t.summarize("fitted_slope", ""),
    }
    if strict && !t.warnings.is_empty() {
        t.failure = Some(CliError::Degenerate(format!("{} flagged rows", t.warnings.len())));
    }
    Ok(t)
}

fn cc_string(asy: &Asymptotics) -> String {
    asy.table.cfg.r_star.to_string()
}
