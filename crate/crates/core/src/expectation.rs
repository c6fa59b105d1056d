//! Gibbs expectation values of the Bost-Connes dynamics.
//!
//! In the standard representation on `l^2(N)` the Hamiltonian has spectrum
//! `log n`, the partition function is the Riemann zeta function, and a basis
//! symbol `e(r)` acts diagonally through the root of unity `zeta_r`, so
//!
//! ```text
//! <e(r)>_beta = Li_beta(zeta_r) / zeta(beta).
//! ```
//!
//! The polylogarithm at a root of unity reduces to finitely many Hurwitz
//! zeta values, which are evaluated by Euler-Maclaurin summation with
//! Bernoulli corrections through `B_8` and the truncation point chosen so
//! the first omitted term is below 1e-12. Everything is deterministic `f64`
//! arithmetic (`libm`, so results are identical across platforms).

use alloc::collections::BTreeMap;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::bc::BcElem;
use crate::error::Error;
use crate::group_ring::{Coeff, GroupRingElem, IntElem};
use crate::orbits::OrbitSum;
use crate::qz::QZ;

/// An inverse temperature, strictly above the abscissa of convergence.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Beta(f64);

impl Beta {
    pub fn new(value: f64) -> Result<Beta, Error> {
        if value.is_finite() && value > 1.0 {
            Ok(Beta(value))
        } else {
            Err(Error::BetaOutOfDomain)
        }
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

// B_2, B_4, B_6, B_8 and |B_10| for the truncation estimate.
const BERNOULLI: [(f64, f64); 4] = [(1.0, 6.0), (-1.0, 30.0), (1.0, 42.0), (-1.0, 30.0)];
const B10_ABS: f64 = 5.0 / 66.0;

/// Hurwitz zeta `sum_{k >= 0} (k + a)^{-beta}` for `0 < a <= 1`, by
/// Euler-Maclaurin:
///
/// ```text
/// sum_{k < N} (k+a)^{-beta} + (N+a)^{1-beta}/(beta-1) + (N+a)^{-beta}/2
///   + sum_{j=1..4} B_{2j}/(2j)! * (beta)_{2j-1} * (N+a)^{-beta-2j+1}
/// ```
pub fn hurwitz_zeta(beta: Beta, a: f64) -> Result<f64, Error> {
    if !(a > 0.0 && a <= 1.0) || !a.is_finite() {
        return Err(Error::HurwitzParamOutOfDomain);
    }
    let s = beta.value();
    // first omitted term ~ B_10/10! * (s)_9 * (N+a)^{-s-9}
    let mut n = 16u32;
    let rising9 = |s: f64| -> f64 { (0..9).map(|i| s + i as f64).product() };
    while B10_ABS / factorial(10) * rising9(s) * libm::pow(n as f64 + a, -s - 9.0) >= 1e-13 {
        n *= 2;
    }
    let mut sum = 0.0f64;
    // small-to-large accumulation keeps the partial sum accurate
    for k in (0..n).rev() {
        sum += libm::pow(k as f64 + a, -s);
    }
    let x = n as f64 + a;
    let mut total = sum + libm::pow(x, 1.0 - s) / (s - 1.0) + 0.5 * libm::pow(x, -s);
    let mut rising = s; // (s)_1
    for (j, (num, den)) in BERNOULLI.iter().enumerate() {
        let order = 2 * (j + 1);
        total += num / den / factorial(order) * rising * libm::pow(x, -s - (order as f64 - 1.0));
        rising *= (s + order as f64 - 1.0) * (s + order as f64);
    }
    Ok(total)
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// Riemann zeta as the Hurwitz special case `a = 1`.
pub fn riemann_zeta(beta: Beta) -> f64 {
    hurwitz_zeta(beta, 1.0).expect("a = 1 is in domain")
}

/// `Li_beta(zeta_r) = sum_{n >= 1} zeta_r^n n^{-beta}` through the finite
/// Hurwitz decomposition
/// `q^{-beta} sum_{m=1..q} zeta_r^m hurwitz_zeta(beta, m/q)` for `r = p/q`.
pub fn polylog_at_root(beta: Beta, r: QZ) -> Complex64 {
    let q = r.denom();
    let s = beta.value();
    let scale = libm::pow(q as f64, -s);
    let mut total = Complex64::new(0.0, 0.0);
    for m in 1..=q {
        let h = hurwitz_zeta(beta, m as f64 / q as f64).expect("m/q lies in (0, 1]");
        let k = ((r.numer() as u128 * m as u128) % q as u128) as u64;
        total += root_of_unity(k, q) * h;
    }
    total * scale
}

/// `exp(2 pi i k / q)` for `0 <= k < q`.
fn root_of_unity(k: u64, q: u64) -> Complex64 {
    let theta = 2.0 * PI * (k as f64) / (q as f64);
    Complex64::new(libm::cos(theta), libm::sin(theta))
}

/// The Gibbs expectation of a group-ring element:
/// `zeta(beta)^{-1} sum c_r Li_beta(zeta_r)`; linear, with `<e(0)> = 1`.
pub fn expectation_groupring<C: Coeff>(x: &GroupRingElem<C>, beta: Beta) -> Complex64 {
    let z = riemann_zeta(beta);
    let mut total = Complex64::new(0.0, 0.0);
    for (r, c) in x.terms() {
        total += polylog_at_root(beta, *r) * c.to_f64();
    }
    total / z
}

/// The expectation of an equivariant class: the composition of the Euler
/// characteristic with the Gibbs state. `zeta(beta)` times the value is a
/// Z-combination of polylogarithm values at roots of unity.
pub fn expectation_class(x: &OrbitSum, beta: Beta) -> Complex64 {
    expectation_groupring(&x.chi(), beta)
}

/// The expectation of a Bost-Connes normal form: off-diagonal words
/// `mu_tilde_a x mu_b^*` with `a != b` are traceless in the standard basis,
/// so only the injected part contributes.
pub fn expectation_bc(u: &BcElem, beta: Beta) -> Complex64 {
    match u.coeff(1, 1) {
        Some(x) => expectation_groupring(x, beta),
        None => Complex64::new(0.0, 0.0),
    }
}

/// An equivariant Hodge-Deligne table: the class `E^{p,q}` in `Z[Q/Z]` for
/// each bidegree.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct HodgeTable {
    entries: BTreeMap<(u32, u32), IntElem>,
}

impl HodgeTable {
    pub fn new() -> HodgeTable {
        HodgeTable::default()
    }

    pub fn from_entries(entries: impl IntoIterator<Item = ((u32, u32), IntElem)>) -> HodgeTable {
        HodgeTable {
            entries: entries.into_iter().filter(|(_, x)| !x.is_zero()).collect(),
        }
    }

    pub fn insert(&mut self, p: u32, q: u32, x: IntElem) {
        if x.is_zero() {
            self.entries.remove(&(p, q));
        } else {
            self.entries.insert((p, q), x);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(u32, u32), &IntElem)> {
        self.entries.iter()
    }

    /// The total class `sum E^{p,q}`, whose expectation the `w = 1`
    /// specialization must reproduce.
    pub fn total_class(&self) -> IntElem {
        self.entries
            .values()
            .fold(IntElem::zero(), |acc, x| acc.add(x))
    }
}

/// The expectation polynomial `sum <E^{p,q}>_beta u^p v^q`.
#[derive(Clone, Debug, Default)]
pub struct HodgeExpectation {
    coeffs: BTreeMap<(u32, u32), Complex64>,
}

impl HodgeExpectation {
    /// Coefficients by bidegree `(p, q)`.
    pub fn coeffs(&self) -> impl Iterator<Item = (&(u32, u32), &Complex64)> {
        self.coeffs.iter()
    }

    /// The weight specialization `u = v = w`: coefficients by total degree.
    pub fn weight_poly(&self) -> BTreeMap<u32, Complex64> {
        let mut out: BTreeMap<u32, Complex64> = BTreeMap::new();
        for (&(p, q), c) in &self.coeffs {
            *out.entry(p + q).or_insert_with(|| Complex64::new(0.0, 0.0)) += c;
        }
        out.retain(|_, c| c.norm_sqr() != 0.0);
        out
    }

    /// Evaluation at `u = v = 1`, which recovers the expectation of the
    /// total class.
    pub fn at_one(&self) -> Complex64 {
        self.coeffs
            .values()
            .fold(Complex64::new(0.0, 0.0), |a, c| a + c)
    }

    pub fn eval(&self, u: Complex64, v: Complex64) -> Complex64 {
        let mut total = Complex64::new(0.0, 0.0);
        for (&(p, q), c) in &self.coeffs {
            total += c * u.powu(p) * v.powu(q);
        }
        total
    }
}

/// Takes the Gibbs expectation of every `E^{p,q}`.
pub fn hodge_expectation(table: &HodgeTable, beta: Beta) -> HodgeExpectation {
    HodgeExpectation {
        coeffs: table
            .entries
            .iter()
            .map(|(&k, x)| (k, expectation_groupring(x, beta)))
            .collect(),
    }
}
