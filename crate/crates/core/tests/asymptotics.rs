use std::sync::{Arc, OnceLock};

use rug::Float;
use thasym::asymptotics::*;
use thasym::determinants::THSystem;
use thasym::fourier::{fit_line, fourier_coeffs, Twiddles};
use thasym::numerics::rel_diff;
use thasym::symbols::{AnnulusFunction, SymbolFamily, SymbolPair};
use thasym::szego::{Side, SzegoModel};
use thasym::{Error, PrecComplex, Precision};

const M: usize = 128;
const N: usize = 1024;

fn p() -> Precision {
    Precision::from_digits(80)
}

fn ising_pair() -> SymbolPair {
    SymbolFamily::Ising { q: "0.5".into(), r: "0.25".into() }.build(p()).unwrap()
}

fn build(pair: &SymbolPair, r_star: Option<f64>, flip: bool) -> Asymptotics {
    let model = Arc::new(SzegoModel::new(pair.phi.clone(), pair.d.clone().unwrap(), p(), M, N).unwrap());
    let r_star = r_star.unwrap_or_else(|| model.r0().sqrt());
    Asymptotics::new(model, ContourConfig { r_star, nodes: N }, flip).unwrap()
}

fn ising() -> &'static Asymptotics {
    static A: OnceLock<Asymptotics> = OnceLock::new();
    A.get_or_init(|| build(&ising_pair(), None, false))
}

fn rational() -> &'static Asymptotics {
    static A: OnceLock<Asymptotics> = OnceLock::new();
    A.get_or_init(|| build(&SymbolFamily::Rational.build(p()).unwrap(), None, false))
}

fn trivial() -> Asymptotics {
    let one = AnnulusFunction::constant(PrecComplex::one(p()));
    let model = Arc::new(SzegoModel::new(one.clone().with_radii(0.25, 4.0), one.with_radii(0.25, 4.0), p(), 16, 64).unwrap());
    Asymptotics::new(model, ContourConfig { r_star: 0.5, nodes: 64 }, false).unwrap()
}

fn exact(pair: &SymbolPair, offsets: (i64, i64)) -> THSystem {
    THSystem::new(fourier_coeffs(&pair.phi, p(), M, N).unwrap(), fourier_coeffs(&pair.w, p(), M, N).unwrap(), offsets.0, offsets.1, p())
}

#[test]
fn trivial_kernels_and_predictors() {
    let a = trivial();
    let z = p().complex(0.3, 0.2);
    assert!(a.kernels.eval(KernelId::G12, &z).abs() < 1e-70);
    assert!((&a.kernels.eval(KernelId::G14, &z) - &PrecComplex::one(p())).abs() < 1e-70);
    for n in 1..6 {
        assert!(a.energy(n).abs() < 1e-70);
    }
    assert!(matches!(a.predict_h11(5), Err(Error::DegeneratePredictor(_))));
    assert!(matches!(a.predict_h01(5, 1e-30), Err(Error::GenericityFailed(_))));
}

#[test]
fn trivial_leading_order_p() {
    let a = trivial();
    let pm = a.p_matrix(4);
    let expect = [[0.0, 0.0, 0.0, -1.0], [-1.0, 0.0, 0.0, 0.0], [0.0, -1.0, 0.0, 0.0], [1.0, 0.0, 1.0, 0.0]];
    for i in 0..4 {
        for j in 0..4 {
            assert!((&pm[(i, j)] - &p().complex(expect[i][j], 0.0)).abs() < 1e-70, "P[{i}][{j}]");
        }
    }
    let data = a.p_asymptotic(4);
    assert!(matches!(solve_offset01(&data), Err(Error::GenericConditionFailed(_))));
    assert!(matches!(exact_h01_from_data(&data), Err(Error::GenericConditionFailed(_))));
}

#[test]
fn p43_is_one_at_leading_order() {
    for a in [ising(), rational()] {
        for n in [3, 9, 15] {
            assert!((&a.p_matrix(n)[(3, 2)] - &PrecComplex::one(p())).abs() < 1e-70);
        }
    }
}

#[test]
fn g23_defining_identity_on_ising() {
    let a = ising();
    let r = Float::with_val(p().bits(), a.table.cfg.r_star);
    for j in 0..16 {
        let z = PrecComplex::root_of_unity(p(), j, 16, &r);
        assert!(a.kernels.g23_identity_residual(&z) < p().eps_scaled(20));
    }
}

#[test]
fn kernels_analytic_inside_give_vanishing_coefficients() {
    let a = ising();
    for id in [KernelId::G14, KernelId::G23, KernelId::G21, KernelId::G34] {
        for n in [2, 8, 14] {
            assert!(a.r(id, n).abs() < p().eps_scaled(10), "{} at n = {n}", id.name());
        }
    }
    for id in [KernelId::G12, KernelId::G43, KernelId::G32, KernelId::G41] {
        assert!(a.r(id, 6).abs() > 1e-8, "{}", id.name());
    }
}

#[test]
fn contour_integral_primitives() {
    let cfg = ContourConfig { r_star: 0.7, nodes: 64 };
    for n in 1..5 {
        let g = AnnulusFunction::monomial(-n).with_radii(0.1, 10.0);
        let v = r1jk_zero(&g, n, Side::Inner, &cfg, p()).unwrap();
        assert!((&v - &PrecComplex::one(p())).abs() < 1e-70);
        let one = AnnulusFunction::constant(PrecComplex::one(p()));
        assert!(r1jk_zero(&one, n, Side::Inner, &cfg, p()).unwrap().abs() < 1e-70);
        assert!(r1jk_zero(&one, n, Side::Outer, &cfg, p()).unwrap().abs() < 1e-70);
    }
    let one = AnnulusFunction::constant(PrecComplex::one(p()));
    assert!(r1jk_zero(&one, 0, Side::Inner, &cfg, p()).is_err());
}

#[test]
fn table_agrees_with_direct_quadrature() {
    let a = rational();
    let cfg = a.table.cfg.clone();
    for id in KernelId::ALL {
        let direct = r1jk_zero(&a.kernels.function(id), 7, id.side(), &cfg, p()).unwrap();
        assert!((&direct - &a.r(id, 7)).abs() < p().eps_scaled(10), "{}", id.name());
    }
}

#[test]
fn coefficients_independent_of_contour_radius() {
    let pair = SymbolFamily::Rational.build(p()).unwrap();
    let other = build(&pair, Some(0.5), false);
    let base = rational();
    for id in KernelId::ALL {
        for n in [3, 10, 17] {
            let (x, y) = (base.r(id, n), other.r(id, n));
            assert!((&x - &y).abs() < p().eps_scaled(20), "{} n = {n}", id.name());
        }
    }
    assert!(rel_diff(&base.predict_h11(12).unwrap(), &other.predict_h11(12).unwrap()) < p().eps_scaled(20));
}

#[test]
fn energy_decays_geometrically_on_ising() {
    let a = ising();
    let pts: Vec<(f64, f64)> = (6..=16).map(|n| (n as f64, a.energy(n).abs().ln().to_f64())).collect();
    let (slope, _) = fit_line(&pts).unwrap();
    assert!(slope.exp() < 1.0);
    let e2 = a.energy(6).abs() * 2u32;
    let doubled = (a.r(KernelId::G43, 6) * PrecComplex::from_real(Float::with_val(p().bits(), 4)) / &a.alpha0).abs();
    assert!((e2 - doubled).abs() < 1e-70);
}

#[test]
fn h11_converges_geometrically_on_rational_symbols() {
    let pair = SymbolFamily::Rational.build(p()).unwrap();
    let sys = exact(&pair, (1, 1));
    let err = |n: i64| rel_diff(&sys.norm_h(n as usize - 1).unwrap(), &rational().predict_h11(n).unwrap()).to_f64();
    let (e10, e20) = (err(10), err(20));
    assert!(e20 * 10.0 < e10, "{e10} vs {e20}");
}

#[test]
fn h11_error_decreases_on_ising() {
    let sys = exact(&ising_pair(), (1, 1));
    let errs: Vec<f64> = [8i64, 12, 16, 20].iter().map(|&n| rel_diff(&sys.norm_h(n as usize - 1).unwrap(), &ising().predict_h11(n).unwrap()).to_f64()).collect();
    assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
}

#[test]
fn h01_monitors_refuse_ising() {
    let a = ising();
    let mon = a.monitors(12);
    assert!(mon.failing(1e-30).contains(&0));
    match a.predict_h01(12, 1e-30) {
        Err(Error::GenericityFailed(msg)) => assert!(msg.contains("m1")),
        other => panic!("expected refusal, got {other:?}"),
    }
}

#[test]
fn h01_predictor_algebra() {
    let a = rational();
    let n = 9;
    assert!(a.monitors(n).failing(1e-30).is_empty());
    let (r12, r14, r32, r34, r32p) =
        (a.r(KernelId::G12, n), a.r(KernelId::G14, n), a.r(KernelId::G32, n), a.r(KernelId::G34, n), a.r(KernelId::G32, n - 1));
    let (a0, c0) = (&a.alpha0, &a.c_rho0);
    let num = &r32 * &r14 * (c0 * a0 * &r34 + &r32 - &r32p);
    let den = (&r12 - &(a0 * &r32p)) * (&r32 * &r14 - &(&r12 * &r34));
    let f = num / den;
    assert!(rel_diff(&f, &a.f_n(n)) < p().eps_scaled(10));
    let h = a.predict_h01(n, 1e-30).unwrap();
    assert!(rel_diff(&h, &(-f.recip())) < p().eps_scaled(10));
    assert!(h.im.to_f64().abs() < 1e-60 * h.abs_f64(), "real symbols give a real predictor");
    assert!(a.alpha0.re > 0.0 && a.alpha0.im.to_f64().abs() < 1e-70);
}

#[test]
fn leading_x1inf_index_shifts() {
    let a = rational();
    let n = 8;
    let x = a.x1inf_leading(n);
    assert!((&x[(2, 1)] + &a.r(KernelId::G32, n - 1)).abs() < 1e-70);
    assert!((&x[(0, 1)] + &a.r(KernelId::G12, n + 1)).abs() < 1e-70);
    assert!((&x[(3, 2)] + &a.r(KernelId::G43, n + 1)).abs() < 1e-70);
    assert!((&x[(3, 0)] + &a.r(KernelId::G41, n - 1)).abs() < 1e-70);
    for (i, j) in [(0, 2), (1, 3), (2, 0)] {
        assert!(x[(i, j)].is_zero());
    }
    let data = a.p_asymptotic(n);
    assert!(data.x1inf.is_set(3, 2) && !data.x2inf.is_set(3, 4));
    assert!(matches!(solve_offset00(&data), Err(Error::MissingData(_))));
}

#[test]
fn w_inverse_defect_shrinks() {
    for a in [ising(), rational()] {
        let d10 = a.p_asymptotic(10).w_inverse_defect().unwrap();
        let d20 = a.p_asymptotic(20).w_inverse_defect().unwrap();
        assert!(d20 < d10);
    }
}

#[test]
fn w_symmetry_of_the_jump() {
    let one = AnnulusFunction::constant(PrecComplex::one(p()));
    assert!(wsym_residual(&one, &one, 0, 1, &PrecComplex::one(p())).unwrap() < 1e-70);
    let pair = ising_pair();
    let tw = Twiddles::new(p(), 64);
    for (r, s) in [(0, 0), (0, 1), (0, 2), (1, 1)] {
        for j in 0..64 {
            assert!(wsym_residual(&pair.phi, &pair.w, r, s, tw.root(j)).unwrap() < p().eps_scaled(15));
        }
    }
}

fn assert_plug_back(data: &RHPData) {
    let th = p().eps_scaled(12);
    let s01 = solve_offset01(data).unwrap();
    assert!(offset01_residual(data, &s01).unwrap() < th);
    let s00 = solve_offset00(data).unwrap();
    assert!(offset00_residual(data, &s00).unwrap() < th);
    let s02 = solve_offset02(data).unwrap();
    assert!(offset02_residual(&s02) < th);
    assert!(offset02_lu_crosscheck(&s02).unwrap() < th);
}

#[test]
fn solvers_on_seeded_data() {
    for seed in [1, 7, 99] {
        assert_plug_back(&RHPData::synthetic(p(), seed));
    }
}

#[test]
fn solvers_on_asymptotic_data() {
    for n in [6, 12] {
        let mut data = rational().p_asymptotic(n);
        data.x2inf.fill_seeded(p(), 5);
        assert_plug_back(&data);
    }
}

#[test]
fn offset00_decoupled_case() {
    let mut data = RHPData::synthetic(p(), 3);
    data.p[(2, 2)] = PrecComplex::one(p());
    data.x1inf.set(3, 4, PrecComplex::zero(p()));
    data.x1circ.set(4, 3, PrecComplex::zero(p()));
    let s = solve_offset00(&data).unwrap();
    assert!((&s.yhat[3] - &PrecComplex::one(p())).abs() < 1e-70);
    assert!(s.y[3].abs() < 1e-70);
}

#[test]
fn minors_are_antisymmetric() {
    let data = RHPData::synthetic(p(), 11);
    let pm = &data.p;
    for (r, s, j, k) in [(1, 2, 3, 4), (3, 3, 1, 1), (2, 4, 1, 3)] {
        let d = minor(pm, r, s, j, k);
        assert!((&d + &minor(pm, r, k, j, s)).abs() < 1e-70);
        assert!((&d + &minor(pm, j, s, r, k)).abs() < 1e-70);
        let direct = &pm[(j - 1, k - 1)] * &pm[(r - 1, s - 1)] - &pm[(j - 1, s - 1)] * &pm[(r - 1, k - 1)];
        assert!((&d - &direct).abs() < 1e-70);
    }
}

#[test]
fn flipped_g23_is_isolated_to_the_kernels() {
    let pair = SymbolFamily::Rational.build(p()).unwrap();
    let flipped = build(&pair, None, true);
    let z = p().complex(0.7, 0.1);
    assert!(flipped.kernels.g23_identity_residual(&z) > 1.0);
    assert!((&flipped.r(KernelId::G23, 5) + &rational().r(KernelId::G23, 5)).abs() < 1e-70);
    assert!(rel_diff(&flipped.predict_h11(10).unwrap(), &rational().predict_h11(10).unwrap()) > 1e-6);
    assert!(flipped.kernels.model.max_jump_residual(16) < 1e-30);
}
