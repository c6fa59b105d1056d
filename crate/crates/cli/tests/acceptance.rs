//! Acceptance criteria, one test per criterion. Each test prints a PASS
//! line on success; the underlying checks live in `bc_cli::suites` so the
//! `selftest` subcommand runs exactly the same code.

use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use bc_cli::suites::{run_suite, DEFAULT_SEED};
use bc_core::bc::{BcElem, CrossedElem};
use bc_core::group_ring::IntElem;
use bc_core::orbits::OrbitSum;
use bc_core::qz::QZ;

fn suite_passes(name: &str) -> Duration {
    let start = Instant::now();
    let r = run_suite(name, DEFAULT_SEED).expect("known suite");
    let elapsed = start.elapsed();
    if let Err(v) = r.outcome {
        panic!("suite {name} violated an invariant: {v}");
    }
    elapsed
}

#[test]
fn criterion_1_bost_connes_relations() {
    // the defining relations on generators for n, m <= 12 and on >= 1000
    // randomized elements live in the bc suite; the sigma/rho compatibility
    // relations on randomized elements live in the groupring suite
    let elapsed = suite_passes("bc") + suite_passes("groupring");
    assert!(
        elapsed < Duration::from_secs(10),
        "relation suites took {elapsed:?}, budget 10 s"
    );
    println!("criterion 1: PASS - Bost-Connes relations exact, {elapsed:?}");
}

#[test]
fn criterion_2_frobenius_verschiebung_in_the_orbit_model() {
    for d in 1..=12u64 {
        let x = OrbitSum::orbit(d);
        for n in 1..=12u64 {
            assert_eq!(
                x.rho_tilde(n).sigma(n),
                x.scale(&BigInt::from(n)),
                "sigma_n rho~_n = n id at d = {d}, n = {n}"
            );
            assert_eq!(
                x.sigma(n).rho_tilde(n),
                x.mul(&OrbitSum::orbit(n)),
                "rho~_n sigma_n = . * [Z_n, gamma_n] at d = {d}, n = {n}"
            );
        }
    }
    println!("criterion 2: PASS - orbit-model lifts exact for d, n <= 12");
}

#[test]
fn criterion_3_euler_characteristic_diagrams() {
    for d in 1..=12u64 {
        let x = OrbitSum::orbit(d);
        for n in 1..=12u64 {
            assert_eq!(x.sigma(n).chi(), x.chi().sigma(n), "sigma diagram");
            assert_eq!(x.rho_tilde(n).chi(), x.chi().rho_tilde(n), "rho diagram");
        }
        // the image generates inside the sigma-stable subring
        let cert = x
            .chi()
            .in_fixed_subring()
            .expect("chi lands in the subring");
        for n in 1..=12u64 {
            assert!(x.chi().sigma(n).in_fixed_subring().is_some());
        }
        assert!(!cert.is_empty());
    }
    println!("criterion 3: PASS - chi intertwines sigma and rho~ for d, n <= 12");
}

#[test]
fn criterion_4_normal_form_associativity_with_mutation_check() {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let term = |rng: &mut ChaCha8Rng| -> BcElem {
        let den = rng.gen_range(1..=12);
        let x = IntElem::from_terms([(
            QZ::new(rng.gen_range(0..den), den).unwrap(),
            BigInt::from(rng.gen_range(1..=9)),
        )]);
        CrossedElem::from_term(rng.gen_range(1..=6), x, rng.gen_range(1..=6))
    };
    // the corrupted rewrite drops the gcd scalar from mu_b^* mu_tilde_c
    let corrupted = |u: &BcElem, v: &BcElem| -> BcElem {
        let mut out = BcElem::zero();
        for (&(a, b), x) in u.terms() {
            for (&(c, d), y) in v.terms() {
                let g = num_integer::gcd(b, c);
                let (bp, cp) = (b / g, c / g);
                let z = x.sigma(cp).mul(&y.sigma(bp));
                out = out.add(&BcElem::from_term(a * cp, z, bp * d));
            }
        }
        out
    };
    let mut corrupted_caught = false;
    for i in 0..500 {
        let (u, v, w) = (term(&mut rng), term(&mut rng), term(&mut rng));
        assert_eq!(
            u.mul(&v).mul(&w),
            u.mul(&v.mul(&w)),
            "associativity fails on triple {i}"
        );
        if corrupted(&corrupted(&u, &v), &w) != corrupted(&u, &corrupted(&v, &w)) {
            corrupted_caught = true;
        }
    }
    assert!(
        corrupted_caught,
        "the associativity suite must detect the corrupted rewrite rule"
    );
    println!("criterion 4: PASS - 500 triples associate; corrupted rule detected");
}

#[test]
fn criterion_5_witt_suite() {
    suite_passes("witt");
    println!("criterion 5: PASS - ghost round-trip, projection formula, Burnside homomorphism, F/V correspondence");
}

#[test]
fn criterion_6_dynamical_suite() {
    suite_passes("dyn");
    println!("criterion 6: PASS - spectrum homomorphism on 200 random pairs, Verschiebung spectra, rotation example");
}

#[test]
fn criterion_7_numerics() {
    let elapsed = suite_passes("expect");
    assert!(
        elapsed < Duration::from_secs(5),
        "numeric suite took {elapsed:?}, budget 5 s"
    );
    println!("criterion 7: PASS - zeta, polylog and distribution tolerances, {elapsed:?}");
}

#[test]
fn criterion_8_scissors_suite() {
    suite_passes("k0");
    println!("criterion 8: PASS - K_0 ranks tau(N) for N <= 12 and endofunctor coherence");
}

#[test]
fn criterion_9_selftest_binary_and_byte_stable_cli() {
    let bin = env!("CARGO_BIN_EXE_bc-cli");
    let start = Instant::now();
    let out = Command::new(bin)
        .arg("selftest")
        .output()
        .expect("selftest runs");
    let elapsed = start.elapsed();
    assert!(
        out.status.success(),
        "selftest exited with {:?}:\n{}",
        out.status.code(),
        String::from_utf8_lossy(&out.stdout)
    );
    assert!(
        elapsed < Duration::from_secs(60),
        "selftest took {elapsed:?}, budget 60 s"
    );
    // byte-identical output across invocations, JSON and numeric alike
    let cases: &[&[&str]] = &[
        &[
            "groupring",
            "sigma",
            "--n",
            "2",
            "--elem",
            r#"[{"r":"1/3","c":1}]"#,
        ],
        &["groupring", "pi", "--n", "6"],
        &[
            "bc",
            "mul",
            "--lhs",
            r#"[{"a":2,"b":3,"x":[{"r":"1/2","c":1}]}]"#,
            "--rhs",
            r#"[{"a":3,"b":2,"x":[{"r":"1/3","c":2}]}]"#,
        ],
        &[
            "expect",
            "value",
            "--beta",
            "2",
            "--elem",
            r#"[{"r":"1/4","c":1}]"#,
        ],
        &[
            "witt",
            "from-burnside",
            "--trunc",
            "24",
            "--orbits",
            r#"{"orbits":{"6":2,"4":-1}}"#,
        ],
        &[
            "dyn",
            "spectrum",
            "--g",
            r#"{"blocks":[{"degree":0,"matrix":[[0,-1],[1,0]]}]}"#,
        ],
        &["k0", "finite-sets", "--n", "6"],
    ];
    for args in cases {
        let a = Command::new(bin).args(*args).output().expect("cli runs");
        let b = Command::new(bin).args(*args).output().expect("cli runs");
        assert!(a.status.success(), "command {args:?} failed");
        assert_eq!(a.stdout, b.stdout, "output of {args:?} is not byte-stable");
    }
    println!(
        "criterion 9: PASS - selftest exit 0 in {elapsed:?}; {} CLI invocations byte-stable",
        cases.len()
    );
}
