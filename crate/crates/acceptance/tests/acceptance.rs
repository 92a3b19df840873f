use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use thasym::asymptotics::*;
use thasym::determinants::THSystem;
use thasym::fourier::{fit_line, fourier_coeffs, Twiddles};
use thasym::ising::criticality_study;
use thasym::numerics::rel_diff;
use thasym::symbols::ising::IsingParams;
use thasym::symbols::{SymbolFamily, SymbolPair};
use thasym::szego::SzegoModel;
use thasym::{Error, PrecComplex, Precision};
use thasym_acceptance::{prec, report, NODES, TRUNC};

fn ising_family() -> SymbolFamily {
    SymbolFamily::Ising { q: "0.5".into(), r: "0.25".into() }
}

fn model(pair: &SymbolPair, p: Precision, nodes: usize) -> Arc<SzegoModel> {
    Arc::new(SzegoModel::new(pair.phi.clone(), pair.d.clone().unwrap(), p, TRUNC, nodes).unwrap())
}

fn asymptotics(pair: &SymbolPair, r_star: Option<f64>, nodes: usize) -> Asymptotics {
    let m = model(pair, prec(), nodes);
    let r_star = r_star.unwrap_or_else(|| m.r0().sqrt());
    Asymptotics::new(m, ContourConfig { r_star, nodes }, false).unwrap()
}

fn system(pair: &SymbolPair, offsets: (i64, i64), nodes: usize) -> THSystem {
    let p = prec();
    let phi = fourier_coeffs(&pair.phi, p, TRUNC, nodes).unwrap();
    let w = fourier_coeffs(&pair.w, p, TRUNC, nodes).unwrap();
    THSystem::new(phi, w, offsets.0, offsets.1, p)
}

fn fmt(x: f64) -> String {
    format!("{x:.3e}")
}

/// Pass rule shared by both norm predictors: 10x drop from n = 10 to 20 and a fitted log slope below -0.05.
fn convergence_verdict(errors: &[(i64, f64)]) -> (bool, String) {
    let at = |n| errors.iter().find(|(m, _)| *m == n).map(|e| e.1);
    let pts: Vec<(f64, f64)> = errors.iter().map(|&(n, e)| (n as f64, e.ln())).collect();
    let slope = fit_line(&pts).map(|(s, _)| s);
    match (at(10), at(20), slope) {
        (Some(e10), Some(e20), Some(slope)) => {
            let pass = e10 >= 10.0 * e20 && slope < -0.05;
            (pass, format!("err(10) = {}, err(20) = {}, improvement {:.2}x, slope {slope:.4}", fmt(e10), fmt(e20), e10 / e20))
        }
        _ => (false, "no usable rows at n = 10 and n = 20".into()),
    }
}

fn criterion_1() -> bool {
    let start = Instant::now();
    let pair = ising_family().build(prec()).unwrap();
    let asy = asymptotics(&pair, None, NODES);
    let sys = system(&pair, (1, 1), NODES);
    let errors: Vec<(i64, f64)> = (10..=20)
        .map(|n| {
            let exact = sys.norm_h(n as usize - 1).unwrap();
            (n, rel_diff(&exact, &asy.predict_h11(n).unwrap()).to_f64())
        })
        .collect();
    let (pass, detail) = convergence_verdict(&errors);
    let secs = start.elapsed().as_secs_f64();
    report(1, "h11 convergence (ising a=1)", pass && secs < 300.0, format!("{detail}, {secs:.1}s"))
}

fn criterion_2() -> bool {
    let pair = ising_family().build(prec()).unwrap();
    let asy = asymptotics(&pair, None, NODES);
    let sys = system(&pair, (0, 1), NODES);
    let mut errors = Vec::new();
    let mut aborted = Vec::new();
    for n in 10..=20i64 {
        match asy.predict_h01(n, 1e-30) {
            Ok(pred) => errors.push((n, rel_diff(&sys.norm_h(n as usize - 1).unwrap(), &pred).to_f64())),
            Err(Error::GenericityFailed(msg)) => aborted.push(format!("n={n}: {msg}")),
            Err(e) => aborted.push(format!("n={n}: {e}")),
        }
    }
    let (pass, detail) = convergence_verdict(&errors);
    let summary = match aborted.first() {
        Some(first) => format!("{} of 11 rows aborted by genericity monitors (first {first}); {detail}", aborted.len()),
        None => detail,
    };
    report(2, "h01 convergence (ising a=1)", pass && aborted.is_empty(), summary)
}

fn criterion_3() -> bool {
    let p = prec();
    let th = p.eps_scaled(15);
    let mut worst = 0.0f64;
    let mut failures = Vec::new();
    for fam in [SymbolFamily::Trivial, SymbolFamily::ExpType, ising_family()] {
        let pair = fam.build(p).unwrap();
        let sys = system(&pair, pair.offsets.unwrap_or((0, 0)), NODES);
        for n in 0..=24 {
            let ok = (|| -> thasym::Result<f64> {
                let poly = sys.orthopoly(n)?;
                let norm = rel_diff(&poly.h, &sys.norm_h(n)?);
                let orth = sys.max_scaled_residual(&poly)?;
                Ok(norm.to_f64().max(orth.to_f64()))
            })();
            match ok {
                Ok(v) if v < th => worst = worst.max(v),
                Ok(v) => failures.push(format!("{} n={n}: {}", pair.name, fmt(v))),
                Err(e) => failures.push(format!("{} n={n}: {e}", pair.name)),
            }
        }
    }
    let detail = format!("worst {} vs {}; {} failing rows {}", fmt(worst), fmt(th.to_f64()), failures.len(), failures.join(", "));
    report(3, "exactness ladder n <= 24", failures.is_empty(), detail)
}

fn criterion_4() -> bool {
    let p = Precision::from_digits(60);
    let pair = ising_family().build(p).unwrap();
    let worst = model(&pair, p, NODES).max_jump_residual(64).to_f64();
    report(4, "model problem jump", worst < 1e-30, format!("max residual {} over 64 nodes", fmt(worst)))
}

fn criterion_5() -> bool {
    let p = prec();
    let th = p.eps_scaled(15);
    let tw = Twiddles::new(p, 64);
    let mut worst = 0.0f64;
    let mut pass = true;
    for fam in [ising_family(), SymbolFamily::ExpType] {
        let pair = fam.build(p).unwrap();
        for (r, s) in [(0, 0), (0, 1), (0, 2), (1, 1)] {
            for j in 0..64 {
                let v = wsym_residual(&pair.phi, &pair.w, r, s, tw.root(j)).unwrap();
                pass &= v < th;
                worst = worst.max(v.to_f64());
            }
        }
    }
    report(5, "W symmetry", pass, format!("worst {} vs {}", fmt(worst), fmt(th.to_f64())))
}

fn criterion_6() -> bool {
    let p = prec();
    let th = p.eps_scaled(12);
    let rational = asymptotics(&SymbolFamily::Rational.build(p).unwrap(), None, NODES);
    let mut cases: Vec<(String, RHPData)> = [1u64, 7, 99].iter().map(|&s| (format!("seed {s}"), RHPData::synthetic(p, s))).collect();
    for n in [8, 16] {
        let mut data = rational.p_asymptotic(n);
        data.x2inf.fill_seeded(p, 5);
        cases.push((format!("rational n={n}"), data));
    }
    let mut worst = 0.0f64;
    let mut failures = Vec::new();
    for (name, data) in &cases {
        let residuals = (|| -> thasym::Result<[f64; 4]> {
            let s01 = solve_offset01(data)?;
            let s00 = solve_offset00(data)?;
            let s02 = solve_offset02(data)?;
            Ok([
                offset01_residual(data, &s01)?.to_f64(),
                offset00_residual(data, &s00)?.to_f64(),
                offset02_residual(&s02).to_f64(),
                offset02_lu_crosscheck(&s02)?.to_f64(),
            ])
        })();
        match residuals {
            Ok(rs) => {
                let m = rs.iter().cloned().fold(0.0, f64::max);
                worst = worst.max(m);
                if m >= th.to_f64() {
                    failures.push(format!("{name}: {}", fmt(m)));
                }
            }
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    let detail = format!("{} data sets, worst {} vs {} {}", cases.len(), fmt(worst), fmt(th.to_f64()), failures.join(", "));
    report(6, "offset solver plug-back", failures.is_empty(), detail)
}

fn criterion_7() -> bool {
    let p = prec();
    let mut pair = ising_family().build(p).unwrap();
    let (ri, ro) = (0.55, 1.0 / 0.55);
    pair.phi = pair.phi.with_radii(ri, ro);
    pair.d = pair.d.map(|d| d.with_radii(ri, ro));
    pair.w = pair.w.with_radii(ri, ro);
    let (a, b) = (asymptotics(&pair, Some(0.6), NODES), asymptotics(&pair, Some(0.7), NODES));
    let th = p.eps_scaled(20).to_f64();
    let mut radius = 0.0f64;
    for id in KernelId::ALL {
        for n in 1..=24 {
            let (x, y) = (a.r(id, n), b.r(id, n));
            let scale = x.abs_f64().max(y.abs_f64()).max(1.0);
            radius = radius.max((&x - &y).abs_f64() / scale);
        }
    }

    let base = ising_family().build(p).unwrap();
    let (coarse, fine) = (asymptotics(&base, None, NODES), asymptotics(&base, None, 2 * NODES));
    let (s_coarse, s_fine) = (system(&base, (0, 1), NODES), system(&base, (0, 1), 2 * NODES));
    let (h_coarse, h_fine) = (system(&base, (1, 1), NODES), system(&base, (1, 1), 2 * NODES));
    let mut doubling = 0.0f64;
    let mut kernel_doubling = 0.0f64;
    let mut bump = |x: &PrecComplex, y: &PrecComplex| doubling = doubling.max(rel_diff(x, y).to_f64());
    let mut bump_abs = |d: f64| kernel_doubling = kernel_doubling.max(d);
    bump(&coarse.alpha0, &fine.alpha0);
    bump(&coarse.c_rho0, &fine.c_rho0);
    for n in 1..=20i64 {
        for id in KernelId::ALL {
            let (x, y) = (coarse.r(id, n), fine.r(id, n));
            let scale = x.abs_f64().max(y.abs_f64()).max(1.0);
            bump_abs((&x - &y).abs_f64() / scale);
        }
        bump(&coarse.predict_h11(n).unwrap(), &fine.predict_h11(n).unwrap());
        bump(&s_coarse.det(n as usize).unwrap(), &s_fine.det(n as usize).unwrap());
        bump(&h_coarse.norm_h(n as usize - 1).unwrap(), &h_fine.norm_h(n as usize - 1).unwrap());
    }
    let pass = radius < th && doubling.max(kernel_doubling) < 1e-40;
    let detail = format!(
        "radius 0.6 vs 0.7: {} vs {}; node doubling: {} on R, {} on norms and determinants vs 1e-40",
        fmt(radius),
        fmt(th),
        fmt(kernel_doubling),
        fmt(doubling)
    );
    report(7, "contour robustness", pass, detail)
}

fn criterion_8() -> bool {
    let p = prec();
    let params = IsingParams::critical(p, "0.5").unwrap();
    let study = criticality_study(&params, 4, 16, TRUNC, NODES).unwrap();
    let imag = study.rows.iter().map(|r| r.m_n.im.to_f64().abs() / r.m_n.abs_f64()).fold(0.0, f64::max);
    let th = p.eps_scaled(20).to_f64();
    let ratio = study.fitted_ratio;
    let pass = ratio.is_some_and(|r| r < 0.9) && imag < th;
    let detail = format!("fitted ratio {:?} over {} increments, M_16 = {}, max Im/|M| {}", ratio, study.fitted_points, study.last().m_n.re.to_f64(), fmt(imag));
    report(8, "ising magnetization", pass, detail)
}

fn main() -> ExitCode {
    let results =
        [criterion_1(), criterion_2(), criterion_3(), criterion_4(), criterion_5(), criterion_6(), criterion_7(), criterion_8()];
    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, ok)| !**ok).map(|(i, _)| i + 1).collect();
    println!("acceptance: {} of {} criteria pass", results.len() - failed.len(), results.len());
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {failed:?}");
        ExitCode::FAILURE
    }
}
