use rug::Float;
use thasym::determinants::THSystem;
use thasym::fourier::{fourier_coeffs, LaurentSeries};
use thasym::numerics::rel_diff;
use thasym::symbols::{AnnulusFunction, SymbolFamily};
use thasym::{Error, PrecComplex, Precision};

fn constant(p: Precision, v: f64) -> LaurentSeries {
    fourier_coeffs(&AnnulusFunction::constant(p.complex(v, 0.0)), p, 64, 256).unwrap()
}

fn system(fam: SymbolFamily, p: Precision, m: usize, nodes: usize, offsets: (i64, i64)) -> THSystem {
    let pair = fam.build(p).unwrap();
    THSystem::new(fourier_coeffs(&pair.phi, p, m, nodes).unwrap(), fourier_coeffs(&pair.w, p, m, nodes).unwrap(), offsets.0, offsets.1, p)
}

fn ising() -> SymbolFamily {
    SymbolFamily::Ising { q: "0.5".into(), r: "0.25".into() }
}

#[test]
fn identity_toeplitz_has_unit_norms() {
    let p = Precision::from_digits(50);
    let sys = THSystem::new(constant(p, 1.0), constant(p, 0.0), 0, 0, p);
    let m3 = sys.build_matrix(3).unwrap();
    assert!(m3.sub(&thasym::PrecMatrix::identity(p, 3)).unwrap().max_abs() < 1e-45);
    for n in 0..8 {
        assert!((&sys.norm_h(n).unwrap() - &PrecComplex::one(p)).abs() < 1e-45);
        let poly = sys.orthopoly(n).unwrap();
        assert!(poly.coeffs.iter().all(|c| c.abs() < 1e-45), "P_{n} = z^{n}");
    }
}

#[test]
fn hankel_offset_one_kills_constant_w() {
    let p = Precision::from_digits(50);
    let sys = THSystem::new(constant(p, 1.0), constant(p, 1.0), 0, 1, p);
    for n in 1..10 {
        assert!((&sys.det(n).unwrap() - &PrecComplex::one(p)).abs() < 1e-45);
    }
}

#[test]
fn single_entry_and_zeroth_norm() {
    let p = Precision::from_digits(50);
    let sys = system(SymbolFamily::Rational, p, 32, 128, (1, 2));
    let direct = sys.phi.coeff(1) + sys.w.coeff(2);
    assert!((&sys.det(1).unwrap() - &direct).abs() < 1e-45);
    assert!((&sys.orthopoly(0).unwrap().h - &direct).abs() < 1e-45);
}

#[test]
fn norm_times_det_is_next_det() {
    let p = Precision::from_digits(60);
    let sys = system(SymbolFamily::ExpType, p, 64, 256, (0, 0));
    for n in 1..12 {
        let lhs = sys.norm_h(n).unwrap() * sys.det(n).unwrap();
        assert!(rel_diff(&lhs, &sys.det(n + 1).unwrap()) < p.eps_scaled(12));
    }
}

#[test]
fn ising_determinant_survives_refinement() {
    let coarse = Precision::from_digits(60);
    let fine = Precision::from_digits(120);
    let a = system(ising(), coarse, 64, 256, (0, 1)).det(6).unwrap();
    let b = system(ising(), fine, 128, 1024, (0, 1)).det(6).unwrap();
    let (bre, bim) = b.to_decimal_strings(70);
    let b60 = PrecComplex::parse(coarse, &bre, &bim).unwrap();
    assert!(rel_diff(&a, &b60) < 1e-40);
}

#[test]
fn ising_norm_regression_fixture() {
    let p = Precision::from_digits(120);
    let h = system(ising(), p, 128, 1024, (0, 1)).norm_h(12).unwrap();
    let fixture = Float::parse("1.00000000000000000209782903390131594278490537366940476929310").unwrap();
    let fixture = PrecComplex::from_real(Float::with_val(p.bits(), fixture));
    assert!(rel_diff(&h, &fixture) < 1e-55);
    assert!(h.im.to_f64().abs() < 1e-100);
}

#[test]
fn orthogonality_matches_determinant_ratio() {
    let p = Precision::from_digits(80);
    let sys = system(ising(), p, 96, 512, (0, 1));
    let poly = sys.orthopoly(4).unwrap();
    assert!(rel_diff(&poly.h, &sys.norm_h(4).unwrap()) < p.eps_scaled(15));
    assert!(sys.norm_h_checked(4).is_ok());
    assert!(sys.max_scaled_residual(&poly).unwrap() < p.eps_scaled(15));
}

#[test]
fn perturbed_polynomial_is_detected() {
    let p = Precision::from_digits(60);
    let sys = system(SymbolFamily::Rational, p, 64, 256, (0, 0));
    let mut poly = sys.orthopoly(6).unwrap();
    assert!(sys.max_scaled_residual(&poly).unwrap() < p.eps_scaled(15));
    poly.coeffs[3] += &p.complex(1e-5, 0.0);
    let worst = (0..=6).map(|k| sys.orthogonality_residual(&poly, k).unwrap().0.to_f64()).fold(0.0, f64::max);
    assert!(worst > 1e-8, "worst {worst}");
}

#[test]
fn entries_stable_under_node_doubling() {
    let p = Precision::from_digits(80);
    let a = system(ising(), p, 64, 512, (0, 1)).build_matrix(10).unwrap();
    let b = system(ising(), p, 64, 1024, (0, 1)).build_matrix(10).unwrap();
    assert!(a.sub(&b).unwrap().max_abs() < p.eps_scaled(10));
}

#[test]
fn truncation_and_singularity_errors() {
    let p = Precision::from_digits(50);
    let sys = system(SymbolFamily::Trivial, p, 4, 16, (0, 0));
    assert!(matches!(sys.build_matrix(4), Err(Error::TruncationExceeded { .. })));
    let zero = THSystem::new(constant(p, 0.0), constant(p, 0.0), 0, 0, p);
    assert!(matches!(zero.norm_h(2), Err(Error::SingularDn { n: 2 })));
}
