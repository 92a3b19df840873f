//! Shared settings and reporting for the acceptance suite.

use thasym::Precision;

/// Working precision of the suite, in decimal digits.
pub const DIGITS: u32 = 120;
pub const TRUNC: usize = 128;
pub const NODES: usize = 1024;

pub fn prec() -> Precision {
    Precision::from_digits(DIGITS)
}

/// Prints the one-line verdict for criterion `k` and returns `pass`.
pub fn report(k: u32, name: &str, pass: bool, detail: impl AsRef<str>) -> bool {
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("criterion {k}: {verdict} {name}: {}", detail.as_ref());
    pass
}
