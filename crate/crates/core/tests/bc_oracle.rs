//! Cross-checks of the Bost-Connes normal-form engine against an
//! independent step-by-step word rewriter, plus the mutation sanity check:
//! a deliberately corrupted rewrite rule must break associativity.

use num_bigint::BigInt;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use bc_core::bc::BcElem;
use bc_core::group_ring::IntElem;
use bc_core::qz::QZ;

/// A word in the generators, rewritten only through the single-step
/// defining relations; never calls the normal-form multiplication.
#[derive(Clone, Debug)]
enum Gen {
    MuTilde(u64),
    MuStar(u64),
    Elem(IntElem),
}

fn rewrite_word(mut word: Vec<Gen>) -> BcElem {
    use Gen::*;
    for _ in 0..10_000 {
        let mut changed = false;
        let mut i = 0;
        while i + 1 < word.len() {
            let replacement: Option<Vec<Gen>> = match (&word[i], &word[i + 1]) {
                (MuTilde(n), MuTilde(m)) => Some(vec![MuTilde(n * m)]),
                (MuStar(n), MuStar(m)) => Some(vec![MuStar(n * m)]),
                (Elem(x), Elem(y)) => Some(vec![Elem(x.mul(y))]),
                // x mu_tilde_n = mu_tilde_n sigma_n(x)
                (Elem(x), MuTilde(n)) => Some(vec![MuTilde(*n), Elem(x.sigma(*n))]),
                // mu_n^* x = sigma_n(x) mu_n^*
                (MuStar(n), Elem(x)) => Some(vec![Elem(x.sigma(*n)), MuStar(*n)]),
                (MuStar(n), MuTilde(m)) => {
                    let g = n.gcd(m);
                    if g > 1 {
                        // mu_n^* mu_tilde_n = n, peeled off the common factor
                        let scalar = IntElem::one().scale(&BigInt::from(g));
                        Some(vec![MuStar(n / g), Elem(scalar), MuTilde(m / g)])
                    } else {
                        // coprime commutation
                        Some(vec![MuTilde(*m), MuStar(*n)])
                    }
                }
                _ => None,
            };
            if let Some(r) = replacement {
                word.splice(i..i + 2, r);
                changed = true;
            } else {
                i += 1;
            }
        }
        if !changed {
            break;
        }
    }
    // the word is now mu_tilde_a x mu_b^* (some pieces possibly missing)
    let mut a = 1u64;
    let mut b = 1u64;
    let mut x = IntElem::one();
    for g in word {
        match g {
            Gen::MuTilde(n) => a *= n,
            Gen::MuStar(n) => b *= n,
            Gen::Elem(e) => x = x.mul(&e),
        }
    }
    // from_term applies the final coprimality reduction
    BcElem::from_term(a, x, b)
}

fn random_elem(rng: &mut ChaCha8Rng, max_den: i64) -> IntElem {
    let terms = rng.gen_range(1..=3);
    IntElem::from_terms((0..terms).map(|_| {
        let den = rng.gen_range(1..=max_den);
        let num = rng.gen_range(0..den);
        let c = loop {
            let c = rng.gen_range(-9i64..=9);
            if c != 0 {
                break c;
            }
        };
        (QZ::new(num, den).unwrap(), BigInt::from(c))
    }))
}

fn random_single_term(rng: &mut ChaCha8Rng) -> (u64, IntElem, u64) {
    (
        rng.gen_range(1..=6),
        random_elem(rng, 12),
        rng.gen_range(1..=6),
    )
}

#[test]
fn products_of_words_match_the_step_by_step_rewriter() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let (a, x, b) = random_single_term(&mut rng);
        let (c, y, d) = random_single_term(&mut rng);
        let engine = BcElem::from_term(a, x.clone(), b).mul(&BcElem::from_term(c, y.clone(), d));
        let oracle = rewrite_word(vec![
            Gen::MuTilde(a),
            Gen::Elem(x),
            Gen::MuStar(b),
            Gen::MuTilde(c),
            Gen::Elem(y),
            Gen::MuStar(d),
        ]);
        assert_eq!(engine, oracle);
    }
}

#[test]
fn triple_products_associate() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for i in 0..500 {
        let (a, x, b) = random_single_term(&mut rng);
        let (c, y, d) = random_single_term(&mut rng);
        let (e, z, f) = random_single_term(&mut rng);
        let u = BcElem::from_term(a, x, b);
        let v = BcElem::from_term(c, y, d);
        let w = BcElem::from_term(e, z, f);
        assert_eq!(u.mul(&v).mul(&w), u.mul(&v.mul(&w)), "triple {i}");
    }
}

/// The corrupted engine: the same rewrite but dropping the scalar factor
/// `gcd(b, c)` from `mu_b^* mu_tilde_c`.
fn corrupted_mul(u: &BcElem, v: &BcElem) -> BcElem {
    let mut out = BcElem::zero();
    for (&(a, b), x) in u.terms() {
        for (&(c, d), y) in v.terms() {
            let g = b.gcd(&c);
            let (bp, cp) = (b / g, c / g);
            let z = x.sigma(cp).mul(&y.sigma(bp));
            // missing: z.scale_nat(g)
            out = out.add(&BcElem::from_term(a * cp, z, bp * d));
        }
    }
    out
}

#[test]
fn corrupted_rewrite_fails_the_associativity_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut corrupted_failures = 0;
    for _ in 0..500 {
        let (a, x, b) = random_single_term(&mut rng);
        let (c, y, d) = random_single_term(&mut rng);
        let (e, z, f) = random_single_term(&mut rng);
        let u = BcElem::from_term(a, x, b);
        let v = BcElem::from_term(c, y, d);
        let w = BcElem::from_term(e, z, f);
        if corrupted_mul(&corrupted_mul(&u, &v), &w) != corrupted_mul(&u, &corrupted_mul(&v, &w)) {
            corrupted_failures += 1;
        }
    }
    assert!(
        corrupted_failures > 0,
        "the corrupted rule must be caught by the associativity suite"
    );
}

#[test]
fn bc_product_restricted_to_the_group_ring_is_gr_mul() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..100 {
        let x = random_elem(&mut rng, 24);
        let y = random_elem(&mut rng, 24);
        assert_eq!(
            BcElem::inject(x.clone()).mul(&BcElem::inject(y.clone())),
            BcElem::inject(x.mul(&y))
        );
    }
}
