use std::sync::Arc;

use rug::Float;
use thasym::asymptotics::{
    offset00_residual, offset01_residual, offset02_lu_crosscheck, offset02_residual, solve_offset00, solve_offset01,
    solve_offset02, wsym_residual, Asymptotics, ContourConfig, KernelId, RHPData,
};
use thasym::fourier::{LaurentSeries, Twiddles};
use thasym::numerics::rel_diff;
use thasym::symbols::SymbolPair;
use thasym::szego::{Side, SzegoModel};
use thasym::{Error, PrecComplex, Precision};

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::output::{real, Table};

const CIRCLE_NODES: usize = 64;

struct Recorder<'a> {
    t: &'a mut Table,
    failed: Vec<String>,
}

impl Recorder<'_> {
    fn record(&mut self, suite: &str, metric: &str, value: &Float, threshold: &Float) {
        let ok = value.is_finite() && value < threshold;
        if !ok {
            self.failed.push(format!("{suite}/{metric}"));
        }
        let status = if ok { "pass" } else { "fail" };
        self.t.push(vec![suite.into(), metric.into(), real(value, 6), real(threshold, 3), status.into()]);
    }

    fn skip(&mut self, suite: &str, metric: &str, why: String) {
        self.t.warn(format!("{suite}/{metric} skipped: {why}"));
        self.t.push(vec![suite.into(), metric.into(), String::new(), String::new(), "skip".into()]);
    }
}

fn fmax(a: Float, b: Float) -> Float {
    if b > a {
        b
    } else {
        a
    }
}

pub fn check(cfg: &RunConfig) -> CliResult<Table> {
    let pair = cfg.pair()?;
    let p = cfg.prec;
    let mut t = Table::new("check", &["suite", "metric", "value", "threshold", "status"]);
    let mut rec = Recorder { t: &mut t, failed: Vec::new() };

    wsym_suite(&mut rec, &pair, p);
    match pair.d.clone() {
        Some(d) => {
            let model = Arc::new(SzegoModel::new(pair.phi.clone(), d, p, cfg.m(), cfg.nodes())?);
            plemelj_suite(&mut rec, &model, p);
            let jump = model.max_jump_residual(CIRCLE_NODES);
            rec.record("lambda-jump", "max_jump_residual", &jump, &p.float(1e-30));
            let r0 = model.r0();
            let r_star = cfg.args.r_star.unwrap_or(ContourConfig::default_for(&model, cfg.nodes()).r_star);
            let asy = Asymptotics::new(model.clone(), ContourConfig { r_star, nodes: cfg.nodes() }, cfg.args.flip_g23)?;
            kernel_suite(&mut rec, &asy, r_star, p);
            let r_alt = (r0 + r_star) / 2.0;
            let alt = Asymptotics::new(model, ContourConfig { r_star: r_alt, nodes: cfg.nodes() }, cfg.args.flip_g23)?;
            radius_suite(&mut rec, &asy, &alt, cfg.n_range(4, 12), p);
            let n = cfg.n_range(10, 10).0 as i64;
            let mut data = asy.p_asymptotic(n);
            data.x2inf.fill_seeded(p, cfg.args.seed);
            solver_suite(&mut rec, "solvers-asymptotic", &data, p);
        }
        None => {
            for suite in ["plemelj", "lambda-jump", "kernels", "radius", "solvers-asymptotic"] {
                rec.skip(suite, "all", format!("{} has no factorization w = d phi", pair.name));
            }
        }
    }
    solver_suite(&mut rec, "solvers-synthetic", &RHPData::synthetic(p, cfg.args.seed), p);

    let failed = std::mem::take(&mut rec.failed);
    t.summarize("symbol", pair.name);
    t.summarize("failed", failed.len().to_string());
    if !failed.is_empty() {
        t.failure = Some(CliError::Invariant(failed.join(", ")));
    }
    Ok(t)
}

fn wsym_suite(rec: &mut Recorder, pair: &SymbolPair, p: Precision) {
    let tw = Twiddles::new(p, CIRCLE_NODES);
    for (r, s) in [(0, 0), (0, 1), (0, 2), (1, 1)] {
        let mut worst = Float::new(p.bits());
        for j in 0..CIRCLE_NODES {
            match wsym_residual(&pair.phi, &pair.w, r, s, tw.root(j)) {
                Ok(v) => worst = fmax(worst, v),
                Err(_) => worst = p.float(f64::INFINITY),
            }
        }
        rec.record("wsym", &format!("offsets {r},{s}"), &worst, &p.eps_scaled(15));
    }
}

fn plemelj_suite(rec: &mut Recorder, model: &SzegoModel, p: Precision) {
    let tw = Twiddles::new(p, CIRCLE_NODES);
    let (mut a, mut b, mut c) = (Float::new(p.bits()), Float::new(p.bits()), Float::new(p.bits()));
    for j in 0..CIRCLE_NODES {
        let t = tw.root(j);
        a = fmax(a, rel_diff(&model.alpha.interior(t), &(model.alpha.exterior(t) * model.phi.eval_unchecked(t))));
        b = fmax(b, rel_diff(&model.beta.interior(t), &(model.beta.exterior(t) * model.d.eval_unchecked(t))));
        let jump = model.rho.c_rho_side(t, Side::Inner) - model.rho.c_rho_side(t, Side::Outer);
        c = fmax(c, rel_diff(&jump, &(-model.rho.eval(t))));
    }
    let floor = p.eps_scaled(20);
    rec.record("plemelj", "alpha", &a, &fmax(floor.clone(), tail(&model.alpha.ln_coeffs)));
    rec.record("plemelj", "beta", &b, &fmax(floor.clone(), tail(&model.beta.ln_coeffs)));
    rec.record("plemelj", "c_rho", &c, &fmax(floor, tail(&model.rho.coeffs)));
}

/// `100 max(|c_M|, |c_-M|)`: the accuracy a truncation at order `M` can deliver.
fn tail(s: &LaurentSeries) -> Float {
    let m = s.order() as i64;
    fmax(s.coeff(m).abs(), s.coeff(-m).abs()) * 100u32
}

fn kernel_suite(rec: &mut Recorder, asy: &Asymptotics, r_star: f64, p: Precision) {
    let radius = p.float(r_star);
    let mut worst = Float::new(p.bits());
    for j in 0..16 {
        let z = PrecComplex::root_of_unity(p, j, 16, &radius);
        worst = fmax(worst, asy.kernels.g23_identity_residual(&z));
    }
    rec.record("kernels", "g23_identity", &worst, &p.eps_scaled(20));
}

fn radius_suite(rec: &mut Recorder, a: &Asymptotics, b: &Asymptotics, (lo, hi): (usize, usize), p: Precision) {
    for id in KernelId::ALL {
        let mut worst = Float::new(p.bits());
        for n in lo.max(1)..=hi {
            let (x, y) = (a.r(id, n as i64), b.r(id, n as i64));
            let scale = fmax(x.abs(), y.abs()).max(&p.float(1.0));
            worst = fmax(worst, (&x - &y).abs() / scale);
        }
        rec.record("radius", id.name(), &worst, &p.eps_scaled(20));
    }
}

fn solver_suite(rec: &mut Recorder, suite: &str, data: &RHPData, p: Precision) {
    let th = p.eps_scaled(12);
    let mut run = |metric: &str, v: Result<Float, Error>| match v {
        Ok(v) => rec.record(suite, metric, &v, &th),
        Err(e @ Error::GenericConditionFailed(_)) => rec.skip(suite, metric, e.to_string()),
        Err(e) => rec.record(suite, &format!("{metric} ({e})"), &p.float(f64::INFINITY), &th),
    };
    run("offset01", solve_offset01(data).and_then(|s| offset01_residual(data, &s)));
    run("offset00", solve_offset00(data).and_then(|s| offset00_residual(data, &s)));
    let s02 = solve_offset02(data);
    run("offset02", s02.clone().map(|s| offset02_residual(&s)));
    run("offset02_lu", s02.and_then(|s| offset02_lu_crosscheck(&s)));
}
