//! The self-test suites: every module's stated invariants, run at their
//! full sizes with seeded randomness. Each suite returns a short summary on
//! success or a description of the first violated invariant on failure.
//! These are the same checks the acceptance tests assert.

use std::time::Instant;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use bc_core::arith::divisors;
use bc_core::bc::{BcElem, CrossedElem, RationalBcElem};
use bc_core::cyclo::{cyclotomic_factorize, cyclotomic_poly, IntPoly};
use bc_core::dynamical::GradedEndo;
use bc_core::expectation::{
    expectation_groupring, hodge_expectation, polylog_at_root, riemann_zeta, Beta, HodgeTable,
};
use bc_core::group_ring::{IntElem, RatElem};
use bc_core::matrix::{companion, IntMatrix};
use bc_core::orbits::{bold_chi, BoldK0Elem, OrbitSum};
use bc_core::qz::{division_points, QZ};
use bc_core::scissors::{
    finite_set_assembler, induced_k0_map, parse_orbit_label, rho_images, sigma_images, K0Group,
};
use bc_core::witt::{burnside_to_witt, fixed_points, TruncationSet, WittVector};

use crate::json;

pub const DEFAULT_SEED: u64 = 0xBC0_5EED;

pub const SUITE_NAMES: [&str; 9] = [
    "qz",
    "groupring",
    "bc",
    "equiv",
    "witt",
    "dyn",
    "expect",
    "k0",
    "cli",
];

pub struct SuiteResult {
    pub name: &'static str,
    pub outcome: Result<String, String>,
    pub millis: u128,
}

pub fn run_suite(name: &str, seed: u64) -> Option<SuiteResult> {
    let f: fn(u64) -> Result<String, String> = match name {
        "qz" => qz_suite,
        "groupring" => groupring_suite,
        "bc" => bc_suite,
        "equiv" => equiv_suite,
        "witt" => witt_suite,
        "dyn" => dyn_suite,
        "expect" => expect_suite,
        "k0" => k0_suite,
        "cli" => cli_suite,
        _ => return None,
    };
    let start = Instant::now();
    let outcome = f(seed);
    let name = SUITE_NAMES.iter().find(|&&n| n == name).copied()?;
    Some(SuiteResult {
        name,
        outcome,
        millis: start.elapsed().as_millis(),
    })
}

pub fn run_all(seed: u64) -> Vec<SuiteResult> {
    SUITE_NAMES
        .iter()
        .map(|n| run_suite(n, seed).expect("known suite"))
        .collect()
}

fn fail(msg: impl Into<String>) -> Result<String, String> {
    Err(msg.into())
}

// ---- random generators ------------------------------------------------

fn random_qz(rng: &mut ChaCha8Rng, max_den: i64) -> QZ {
    let den = rng.gen_range(1..=max_den);
    QZ::new(rng.gen_range(0..den), den).unwrap()
}

fn random_int_elem(rng: &mut ChaCha8Rng, max_den: i64, max_terms: usize) -> IntElem {
    let terms = rng.gen_range(1..=max_terms);
    IntElem::from_terms((0..terms).map(|_| {
        let c = loop {
            let c = rng.gen_range(-9i64..=9);
            if c != 0 {
                break c;
            }
        };
        (random_qz(rng, max_den), BigInt::from(c))
    }))
}

fn random_orbit_sum(rng: &mut ChaCha8Rng, max_len: u64) -> OrbitSum {
    let terms = rng.gen_range(1..=3);
    OrbitSum::from_orbits((0..terms).map(|_| {
        (
            rng.gen_range(1..=max_len),
            BigInt::from(rng.gen_range(-4i64..=4)),
        )
    }))
}

// ---- suites -------------------------------------------------------------

/// Q/Z arithmetic and the cyclotomic machinery.
fn qz_suite(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..500 {
        let r = random_qz(&mut rng, 24);
        let n = rng.gen_range(1..=12u64);
        let pre = r.preimages(n);
        if pre.len() != n as usize || pre.iter().any(|p| p.mul_nat(n) != r) {
            return fail(format!("preimage property violated at r = {r}, n = {n}"));
        }
    }
    for n in 1..=64u64 {
        let mut prod = IntPoly::one();
        for d in divisors(n) {
            prod = prod.mul(&cyclotomic_poly(d));
        }
        if prod != IntPoly::t_pow_minus_one(n as usize) {
            return fail(format!(
                "cyclotomic product of divisors of {n} != t^{n} - 1"
            ));
        }
    }
    for n in 1..=24u64 {
        let mut pre = QZ::ZERO.preimages(n);
        let mut div = division_points(n);
        pre.sort();
        div.sort();
        if pre != div {
            return fail(format!("preimages(0, {n}) != division_points({n})"));
        }
    }
    for _ in 0..100 {
        let mut p = IntPoly::monomial(rng.gen_range(0..3));
        for _ in 0..rng.gen_range(0..3) {
            p = p.mul(&cyclotomic_poly(rng.gen_range(1..=10)));
        }
        p = p.mul(&IntPoly::from_i64(&[
            rng.gen_range(-3..=3),
            rng.gen_range(-3..=3),
            1,
        ]));
        let fac = cyclotomic_factorize(&p).map_err(|e| e.to_string())?;
        if fac.reassemble() != p {
            return fail("cyclotomic factorization does not re-multiply to its input");
        }
    }
    Ok(
        "preimage property x500, cyclotomic products to n = 64, factorization round-trips x100"
            .into(),
    )
}

/// The Bost-Connes maps on `Z[Q/Z]` and the fixed-subring test.
fn groupring_suite(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0usize;
    for _ in 0..250 {
        let x = random_int_elem(&mut rng, 24, 4);
        let y = random_int_elem(&mut rng, 24, 4);
        let n = rng.gen_range(1..=12u64);
        let m = rng.gen_range(1..=12u64);
        // rho~_n(sigma_n(x) y) = x rho~_n(y)
        if x.sigma(n).mul(&y).rho_tilde(n) != x.mul(&y.rho_tilde(n)) {
            return fail(format!("projection formula fails at n = {n}"));
        }
        // sigma_n(rho~_m(x)) = gcd * rho~_{m'}(sigma_{n'}(x))
        let g = num_integer::gcd(n, m);
        if x.rho_tilde(m).sigma(n) != x.sigma(n / g).rho_tilde(m / g).scale(&BigInt::from(g)) {
            return fail(format!("gcd compatibility fails at n = {n}, m = {m}"));
        }
        // sigma_n rho~_n = n id; rationally rho~_n sigma_n = n pi_n
        if x.rho_tilde(n).sigma(n) != x.scale(&BigInt::from(n)) {
            return fail(format!("sigma_n rho~_n != n id at n = {n}"));
        }
        let q = x.to_rational();
        let n_pi_n = RatElem::pi(n).scale(&BigRational::from_integer(BigInt::from(n)));
        if q.sigma(n).rho_tilde(n) != n_pi_n.mul(&q) {
            return fail(format!("rho~_n sigma_n != n pi_n mult at n = {n}"));
        }
        checked += 4;
    }
    // Remark: the range of rho~_n is the principal ideal of rho~_n(1)
    for _ in 0..100 {
        let r = random_qz(&mut rng, 24);
        let n = rng.gen_range(1..=12u64);
        let lhs = IntElem::basis(r).rho_tilde(n);
        for rp in r.preimages(n) {
            if lhs != IntElem::basis(rp).mul(&IntElem::one().rho_tilde(n)) {
                return fail("rho~_n(e(r)) != e(r') rho~_n(1)");
            }
        }
        checked += 1;
    }
    // the subring spanned by the n pi_n is sigma-stable and product-closed
    for a in 1..=12u64 {
        for b in 1..=12u64 {
            let g = num_integer::gcd(a, b);
            let l = num_integer::lcm(a, b);
            if IntElem::division_sum(a).mul(&IntElem::division_sum(b))
                != IntElem::division_sum(l).scale(&BigInt::from(g))
            {
                return fail(format!("span product rule fails at a = {a}, b = {b}"));
            }
            checked += 1;
        }
    }
    for _ in 0..50 {
        let x = (0..rng.gen_range(1..=3)).fold(IntElem::zero(), |acc, _| {
            acc.add(
                &IntElem::division_sum(rng.gen_range(1..=12))
                    .scale(&BigInt::from(rng.gen_range(-5i64..=5))),
            )
        });
        if x.in_fixed_subring().is_none() {
            return fail("span element not recognised by the membership test");
        }
        for n in 1..=12 {
            if x.sigma(n).in_fixed_subring().is_none() {
                return fail(format!("sigma_{n} leaves the fixed subring"));
            }
        }
        checked += 13;
    }
    for n in 1..=12u64 {
        let pi = RatElem::pi(n);
        if pi.mul(&pi) != pi {
            return fail(format!("pi_{n} is not idempotent"));
        }
        checked += 1;
    }
    Ok(format!("{checked} relation instances"))
}

/// The integral Bost-Connes algebra: the defining relations of the
/// generators, normal-form associativity, and the rational crossed product.
fn bc_suite(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for n in 1..=12u64 {
        for m in 1..=12u64 {
            if BcElem::mu_tilde(n * m) != BcElem::mu_tilde(n).mul(&BcElem::mu_tilde(m)) {
                return fail(format!("mu~_{{nm}} != mu~_n mu~_m at ({n}, {m})"));
            }
            if BcElem::mu_star(n * m) != BcElem::mu_star(n).mul(&BcElem::mu_star(m)) {
                return fail(format!("mu*_{{nm}} != mu*_n mu*_m at ({n}, {m})"));
            }
            if num_integer::gcd(n, m) == 1
                && BcElem::mu_tilde(n).mul(&BcElem::mu_star(m))
                    != BcElem::mu_star(m).mul(&BcElem::mu_tilde(n))
            {
                return fail(format!("coprime commutation fails at ({n}, {m})"));
            }
        }
        if BcElem::mu_star(n).mul(&BcElem::mu_tilde(n)) != BcElem::unit().scale_nat(n) {
            return fail(format!("mu*_n mu~_n != n at n = {n}"));
        }
    }
    // the conjugation relations on >= 1000 randomized elements
    for _ in 0..1000 {
        let x = random_int_elem(&mut rng, 24, 3);
        let n = rng.gen_range(1..=12u64);
        let xi = BcElem::inject(x.clone());
        let mt = BcElem::mu_tilde(n);
        let ms = BcElem::mu_star(n);
        if xi.mul(&mt) != mt.mul(&BcElem::inject(x.sigma(n))) {
            return fail(format!("x mu~_n != mu~_n sigma_n(x) at n = {n}"));
        }
        if ms.mul(&xi) != BcElem::inject(x.sigma(n)).mul(&ms) {
            return fail(format!("mu*_n x != sigma_n(x) mu*_n at n = {n}"));
        }
        if mt.mul(&xi).mul(&ms) != BcElem::inject(x.rho_tilde(n)) {
            return fail(format!("mu~_n x mu*_n != rho~_n(x) at n = {n}"));
        }
    }
    // associativity on 500 random single-term triples
    let term = |rng: &mut ChaCha8Rng| {
        CrossedElem::from_term(
            rng.gen_range(1..=6),
            random_int_elem(rng, 12, 3),
            rng.gen_range(1..=6),
        )
    };
    for i in 0..500 {
        let u = term(&mut rng);
        let v = term(&mut rng);
        let w = term(&mut rng);
        if u.mul(&v).mul(&w) != u.mul(&v.mul(&w)) {
            return fail(format!("associativity fails on triple {i}"));
        }
    }
    // the rational crossed-product presentation
    for n in 1..=12u64 {
        if RationalBcElem::mu_star(n).mul(&RationalBcElem::mu(n)) != RationalBcElem::unit() {
            return fail(format!("mu*_n mu_n != 1 at n = {n}"));
        }
        let x = random_int_elem(&mut rng, 24, 3).to_rational();
        let lhs = RationalBcElem::mu(n)
            .mul(&RationalBcElem::inject(x.clone()))
            .mul(&RationalBcElem::mu_star(n));
        if lhs != RationalBcElem::inject(x.rho(n)) {
            return fail(format!("mu_n x mu*_n != rho_n(x) at n = {n}"));
        }
    }
    Ok("defining relations on generators to 12 and 1000 random elements, 500 associativity triples".into())
}

/// The orbit model: Euler characteristic diagrams and the lifted relations.
fn equiv_suite(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for d in 1..=12u64 {
        let x = OrbitSum::orbit(d);
        for n in 1..=12u64 {
            if x.sigma(n).chi() != x.chi().sigma(n) {
                return fail(format!("chi sigma diagram fails at d = {d}, n = {n}"));
            }
            if x.rho_tilde(n).chi() != x.chi().rho_tilde(n) {
                return fail(format!("chi rho~ diagram fails at d = {d}, n = {n}"));
            }
            if x.rho_tilde(n).sigma(n) != x.scale(&BigInt::from(n)) {
                return fail(format!("sigma rho~ != n id at d = {d}, n = {n}"));
            }
            if x.sigma(n).rho_tilde(n) != x.mul(&OrbitSum::orbit(n)) {
                return fail(format!("rho~ sigma != . * [Z/n] at d = {d}, n = {n}"));
            }
        }
        for e in 1..=12u64 {
            let y = OrbitSum::orbit(e);
            if x.mul(&y).chi() != x.chi().mul(&y.chi()) {
                return fail(format!("chi not multiplicative at ({d}, {e})"));
            }
            if x.chi().in_fixed_subring().is_none() {
                return fail("chi image leaves the fixed subring");
            }
        }
    }
    // bold ring homomorphism on random pairs
    let bold = |rng: &mut ChaCha8Rng| {
        let mut out = BoldK0Elem::zero();
        for _ in 0..rng.gen_range(1..=2) {
            out = out.add(&CrossedElem::from_term(
                rng.gen_range(1..=6),
                random_orbit_sum(rng, 8),
                rng.gen_range(1..=6),
            ));
        }
        out
    };
    for _ in 0..200 {
        let u = bold(&mut rng);
        let v = bold(&mut rng);
        if bold_chi(&u.mul(&v)) != bold_chi(&u).mul(&bold_chi(&v)) {
            return fail("bold chi is not multiplicative");
        }
        if bold_chi(&u.add(&v)) != bold_chi(&u).add(&bold_chi(&v)) {
            return fail("bold chi is not additive");
        }
    }
    Ok("diagrams for d, n <= 12; bold homomorphism on 200 random pairs".into())
}

/// Ghost calculus, Frobenius/Verschiebung, and the Burnside correspondence.
fn witt_suite(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t24 = TruncationSet::divisors_of(24);
    let random_witt = |rng: &mut ChaCha8Rng, t: &TruncationSet| {
        WittVector::from_coords(
            t.clone(),
            t.iter()
                .map(|d| (d, BigInt::from(rng.gen_range(-9i64..=9)))),
        )
        .unwrap()
    };
    for _ in 0..200 {
        let w = random_witt(&mut rng, &t24);
        if WittVector::from_ghost(t24.clone(), &w.ghost()).unwrap() != w {
            return fail("ghost round-trip fails");
        }
    }
    // V_n(F_n(a) b) = a V_n(b) on divisors of 24
    for n in [2u64, 3, 4] {
        for _ in 0..50 {
            let a = random_witt(&mut rng, &t24);
            let b = random_witt(&mut rng, &t24);
            let fa = a.frobenius(n).unwrap();
            let b_small = b.restrict(fa.trunc()).unwrap();
            let lhs = fa.mul(&b_small).unwrap().verschiebung(n);
            let vb = b_small.verschiebung(n);
            let rhs = a.restrict(vb.trunc()).unwrap().mul(&vb).unwrap();
            if lhs != rhs {
                return fail(format!("V_n(F_n(a) b) != a V_n(b) at n = {n}"));
            }
        }
    }
    // marks are ring homomorphisms; the Burnside map is a ring homomorphism
    let t12 = TruncationSet::divisors_of(12);
    for d in 1..=12u64 {
        for e in 1..=12u64 {
            let x = OrbitSum::orbit(d);
            let y = OrbitSum::orbit(e);
            for m in 1..=24u64 {
                if fixed_points(&x.mul(&y), m) != fixed_points(&x, m) * fixed_points(&y, m) {
                    return fail(format!("marks not multiplicative at ({d}, {e}, {m})"));
                }
            }
            let ix = burnside_to_witt(&x, &t12);
            let iy = burnside_to_witt(&y, &t12);
            if burnside_to_witt(&x.mul(&y), &t12) != ix.mul(&iy).unwrap() {
                return fail(format!("Burnside map not multiplicative at ({d}, {e})"));
            }
            if burnside_to_witt(&x.add(&y), &t12) != ix.add(&iy).unwrap() {
                return fail(format!("Burnside map not additive at ({d}, {e})"));
            }
        }
    }
    // sigma_n <-> F_n and rho~_n <-> V_n at ghost level
    for d in 1..=8u64 {
        let x = OrbitSum::orbit(d);
        let img = burnside_to_witt(&x, &t24);
        for n in 1..=6u64 {
            let sig = burnside_to_witt(&x.sigma(n), &t24);
            for m in t24.iter() {
                if t24.contains(n * m) && sig.ghost_at(m) != img.ghost_at(n * m) {
                    return fail(format!(
                        "sigma/Frobenius mismatch at d = {d}, n = {n}, m = {m}"
                    ));
                }
            }
            let rho = burnside_to_witt(&x.rho_tilde(n), &t24);
            for m in t24.iter() {
                let expect = if m % n == 0 {
                    BigInt::from(n) * img.ghost_at(m / n)
                } else {
                    BigInt::from(0)
                };
                if rho.ghost_at(m) != expect {
                    return fail(format!(
                        "rho~/Verschiebung mismatch at d = {d}, n = {n}, m = {m}"
                    ));
                }
            }
        }
    }
    Ok("ghost round-trips x200, projection formula, Burnside homomorphism d, e <= 12, F/V correspondence n <= 6".into())
}

/// The dynamical model: spectrum homomorphism and the lifted maps.
fn dyn_suite(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random_pair = |rng: &mut ChaCha8Rng| -> GradedEndo {
        let degrees = rng.gen_range(1..=2u32);
        GradedEndo::new((0..degrees).map(|k| {
            let d = rng.gen_range(1..=12u64);
            (k, companion(&cyclotomic_poly(d)).unwrap())
        }))
        .unwrap()
    };
    for signed in [false, true] {
        for _ in 0..200 {
            let g = random_pair(&mut rng);
            let h = random_pair(&mut rng);
            let sg = g.spectrum_euler(signed).unwrap();
            let sh = h.spectrum_euler(signed).unwrap();
            if g.disjoint_union(&h).spectrum_euler(signed).unwrap() != sg.add(&sh) {
                return fail("spectrum not additive on unions");
            }
            if g.product(&h).spectrum_euler(signed).unwrap() != sg.mul(&sh) {
                return fail("spectrum not multiplicative on products");
            }
        }
    }
    // lifted relations at matrix and spectrum level
    for n in 1..=6u64 {
        let g = random_pair(&mut rng);
        let spec = g.spectrum_euler(false).unwrap();
        let lhs = g.rho_tilde_n(n).sigma_n(n);
        let mut union = GradedEndo::empty();
        for _ in 0..n {
            union = union.disjoint_union(&g);
        }
        if lhs != union {
            return fail(format!("sigma_n rho~_n != n-fold union at n = {n}"));
        }
        let rhs = g.sigma_n(n).rho_tilde_n(n).spectrum_euler(false).unwrap();
        let prod = spec.mul(
            &GradedEndo::cyclic_pair(n as usize)
                .spectrum_euler(false)
                .unwrap(),
        );
        if rhs != prod {
            return fail(format!("rho~_n sigma_n != . x (Z_n, gamma) at n = {n}"));
        }
        if g.rho_tilde_n(n).spectrum_euler(false).unwrap() != spec.rho_tilde(n) {
            return fail(format!("spectrum does not intertwine rho~ at n = {n}"));
        }
        if g.sigma_n(n).spectrum_euler(false).unwrap() != spec.sigma(n) {
            return fail(format!("spectrum does not intertwine sigma at n = {n}"));
        }
        if spec.in_fixed_subring().is_none() {
            return fail("spectrum coefficients are not Galois-stable");
        }
    }
    // the rotation example: sigma_2 of the quarter turn is 2 e(1/2)
    let rot = GradedEndo::single(0, IntMatrix::from_rows(&[vec![0, -1], vec![1, 0]]));
    let expected = IntElem::basis(QZ::new(1, 2).unwrap()).scale(&BigInt::from(2));
    if rot.sigma_n(2).spectrum_euler(false).unwrap() != expected {
        return fail("sigma_2 of the rotation pair != 2 e(1/2)");
    }
    Ok(
        "ring homomorphism on 200 random companion pairs per sign mode, lifted relations n <= 6"
            .into(),
    )
}

/// The numeric layer, against direct-summation oracles.
fn expect_suite(_seed: u64) -> Result<String, String> {
    let b2 = Beta::new(2.0).unwrap();
    let z2 = riemann_zeta(b2);
    if (z2 - std::f64::consts::PI.powi(2) / 6.0).abs() >= 1e-10 {
        return fail("zeta(2) misses pi^2/6 by more than 1e-10");
    }
    let half = expectation_groupring(&IntElem::basis(QZ::new(1, 2).unwrap()), b2);
    if (half.re + 0.5).abs() >= 1e-9 || half.im.abs() >= 1e-9 {
        return fail("<e(1/2)>_2 misses -1/2 by more than 1e-9");
    }
    // polylog against a one-million-term direct sum
    for (num, den) in [(0i64, 1i64), (1, 2), (1, 3), (1, 4), (1, 5)] {
        let r = QZ::new(num, den).unwrap();
        let mut direct = Complex64::new(0.0, 0.0);
        let q = r.denom();
        for n in (1..=1_000_000u64).rev() {
            let theta = 2.0 * std::f64::consts::PI * ((r.numer() * (n % q)) % q) as f64 / q as f64;
            direct += Complex64::new(theta.cos(), theta.sin()) * (n as f64).powf(-2.0);
        }
        let fast = polylog_at_root(b2, r);
        if (fast - direct).norm() >= 1e-6 {
            return fail(format!("polylog at {r} differs from the direct sum"));
        }
        let conj = polylog_at_root(b2, QZ::new(den - num, den).unwrap());
        if (fast - conj.conj()).norm() >= 1e-12 {
            return fail(format!("conjugation symmetry fails at {r}"));
        }
    }
    // distribution relation and sigma-invariant expectations
    for n in [2u64, 3] {
        for (num, den) in [(0i64, 1i64), (1, 2), (2, 3)] {
            let r = QZ::new(num, den).unwrap();
            let mut lhs = Complex64::new(0.0, 0.0);
            for rp in r.preimages(n) {
                lhs += polylog_at_root(b2, rp);
            }
            let rhs = polylog_at_root(b2, r) * (n as f64).powf(-1.0);
            if (lhs - rhs).norm() >= 1e-8 {
                return fail(format!("distribution relation fails at n = {n}, r = {r}"));
            }
        }
        let v = expectation_groupring(&IntElem::division_sum(n), b2);
        if (v.re - (n as f64).powf(-1.0)).abs() >= 1e-8 || v.im.abs() >= 1e-8 {
            return fail(format!("<n pi_n> != n^(1-beta) at n = {n}"));
        }
    }
    // Hodge additivity at u = v = 1
    let table = HodgeTable::from_entries([
        ((0, 0), IntElem::one()),
        ((1, 1), IntElem::basis(QZ::new(1, 2).unwrap())),
        ((2, 0), IntElem::division_sum(3)),
    ]);
    let poly = hodge_expectation(&table, b2);
    let total = expectation_groupring(&table.total_class(), b2);
    if (poly.at_one() - total).norm() >= 1e-12 {
        return fail("Hodge polynomial at u = v = 1 differs from the total class");
    }
    Ok("zeta/polylog oracles at beta = 2, distribution relation, Hodge additivity".into())
}

/// Assembler K_0: ranks, orbit bases, and endofunctor coherence.
fn k0_suite(_seed: u64) -> Result<String, String> {
    for n in 1..=12u64 {
        let p = finite_set_assembler(n);
        let k = K0Group::from_presentation(&p).map_err(|e| e.to_string())?;
        if k.rank != divisors(n).len() || !k.torsion.is_empty() {
            return fail(format!(
                "K_0 at level {n}: got rank {} torsion {:?}, want free of rank tau({n})",
                k.rank, k.torsion
            ));
        }
        // the orbit classes are the basis: each object's class is its orbit
        // multiplicity vector, so the isomorphism to orbit sums is additive
        let divs = divisors(n);
        for label in &p.objects {
            let m = parse_orbit_label(label).map_err(|e| e.to_string())?;
            let class = k.class_of_label(label).map_err(|e| e.to_string())?;
            let expected: Vec<BigInt> = divs
                .iter()
                .map(|d| BigInt::from(m.get(d).copied().unwrap_or(0)))
                .collect();
            if class != expected.as_slice() {
                return fail(format!(
                    "class of {label} at level {n} is not its orbit vector"
                ));
            }
        }
    }
    for n in 1..=4u64 {
        for level in [2u64, 4, 6, 8] {
            let p = finite_set_assembler(level);
            let k = K0Group::from_presentation(&p).map_err(|e| e.to_string())?;
            let divs = divisors(level);
            let m = induced_k0_map(&k, &k, &sigma_images(&p, n).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            for (j, &d) in divs.iter().enumerate() {
                let img = OrbitSum::orbit(d).sigma(n);
                for (i, &e) in divs.iter().enumerate() {
                    if m[i][j] != img.multiplicity(e) {
                        return fail(format!(
                            "sigma_{n} induced map differs from the orbit model at level {level}"
                        ));
                    }
                }
            }
            // rho~ into level n * level; targets above 12 blow past desk scale
            if n * level > 12 {
                continue;
            }
            let q = finite_set_assembler(n * level);
            let kq = K0Group::from_presentation(&q).map_err(|e| e.to_string())?;
            let m = induced_k0_map(&k, &kq, &rho_images(&p, n).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            let qdivs = divisors(n * level);
            for (j, &d) in divs.iter().enumerate() {
                let img = OrbitSum::orbit(d).rho_tilde(n);
                for (i, &e) in qdivs.iter().enumerate() {
                    if m[i][j] != img.multiplicity(e) {
                        return fail(format!(
                            "rho~_{n} induced map differs from the orbit model at level {level}"
                        ));
                    }
                }
            }
        }
    }
    // sigma respects products on the orbit basis, rho~ does not
    let x = OrbitSum::orbit(2);
    if OrbitSum::orbit(1).mul(&OrbitSum::orbit(1)).rho_tilde(2)
        == OrbitSum::orbit(1)
            .rho_tilde(2)
            .mul(&OrbitSum::orbit(1).rho_tilde(2))
    {
        return fail("rho~ unexpectedly multiplicative");
    }
    if x.mul(&x).sigma(2) != x.sigma(2).mul(&x.sigma(2)) {
        return fail("sigma_2 not multiplicative on orbit classes");
    }
    Ok("ranks tau(N) with orbit bases for N <= 12; endofunctor coherence for n <= 4, levels <= 8 (rho targets <= 12)".into())
}

/// JSON round-trips and byte-determinism of the wire formats.
fn cli_suite(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..200 {
        let x = random_int_elem(&mut rng, 24, 4);
        let v = json::int_elem_to_value(&x);
        if json::parse_int_elem(&v, "$").map_err(|e| e.to_string())? != x {
            return fail("group-ring element does not round-trip");
        }
        if serde_json::to_string(&v).unwrap()
            != serde_json::to_string(&json::int_elem_to_value(&x)).unwrap()
        {
            return fail("group-ring serialization not deterministic");
        }
        let o = random_orbit_sum(&mut rng, 12);
        let v = json::orbit_sum_to_value(&o);
        if json::parse_orbit_sum(&v, "$").map_err(|e| e.to_string())? != o {
            return fail("orbit sum does not round-trip");
        }
        let u = BcElem::from_term(
            rng.gen_range(1..=6),
            random_int_elem(&mut rng, 12, 2),
            rng.gen_range(1..=6),
        );
        let v = json::bc_elem_to_value(&u);
        if json::parse_bc_elem(&v, "$").map_err(|e| e.to_string())? != u {
            return fail("Bost-Connes element does not round-trip");
        }
    }
    let t = TruncationSet::divisors_of(24);
    for _ in 0..100 {
        let w = WittVector::from_coords(
            t.clone(),
            t.iter()
                .map(|d| (d, BigInt::from(rng.gen_range(-9i64..=9)))),
        )
        .unwrap();
        let v = json::witt_to_value(&w);
        if json::parse_witt(&v, "$").map_err(|e| e.to_string())? != w {
            return fail("Witt vector does not round-trip");
        }
    }
    for _ in 0..50 {
        let g = GradedEndo::new([(
            rng.gen_range(0..3u32),
            companion(&cyclotomic_poly(rng.gen_range(1..=10))).unwrap(),
        )])
        .unwrap();
        let v = json::graded_endo_to_value(&g);
        if json::parse_graded_endo(&v, "$").map_err(|e| e.to_string())? != g {
            return fail("graded endomorphism does not round-trip");
        }
        // rational-mode elements keep their mode through the wire
        let x = random_int_elem(&mut rng, 12, 3)
            .to_rational()
            .scale(&BigRational::new(
                BigInt::from(1),
                BigInt::from(rng.gen_range(1..=6)),
            ));
        let v = json::rat_elem_to_value(&x);
        if json::parse_rat_elem(&v, "$").map_err(|e| e.to_string())? != x {
            return fail("rational element does not round-trip");
        }
        let p = cyclotomic_poly(rng.gen_range(1..=12))
            .mul(&IntPoly::from_i64(&[rng.gen_range(-3..=3), 1]));
        let v = json::int_poly_to_value(&p);
        if json::parse_int_poly(&v, "$").map_err(|e| e.to_string())? != p {
            return fail("polynomial does not round-trip");
        }
        let bold = CrossedElem::from_term(
            rng.gen_range(1..=6),
            random_orbit_sum(&mut rng, 8),
            rng.gen_range(1..=6),
        );
        let v = json::bold_elem_to_value(&bold);
        if json::parse_bold_elem(&v, "$").map_err(|e| e.to_string())? != bold {
            return fail("bold element does not round-trip");
        }
    }
    for _ in 0..20 {
        let t = HodgeTable::from_entries([
            (
                (rng.gen_range(0..3), rng.gen_range(0..3)),
                random_int_elem(&mut rng, 8, 2),
            ),
            (
                (rng.gen_range(3..5), rng.gen_range(0..3)),
                random_int_elem(&mut rng, 8, 2),
            ),
        ]);
        let v = json::hodge_table_to_value(&t);
        if json::parse_hodge_table(&v, "$").map_err(|e| e.to_string())? != t {
            return fail("Hodge table does not round-trip");
        }
        let p = finite_set_assembler(rng.gen_range(1..=6));
        let v = json::presentation_to_value(&p);
        if json::parse_presentation(&v, "$").map_err(|e| e.to_string())? != p {
            return fail("assembler presentation does not round-trip");
        }
    }
    Ok("round-trips for every wire type: elements (both modes), normal forms, orbit and bold sums, Witt vectors, polynomials, endomorphisms, Hodge tables, presentations".into())
}
