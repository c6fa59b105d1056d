//! Coherence of the lifted structure across modules: the Euler
//! characteristic intertwines the orbit model with the group ring, the
//! noncommutative extension maps onto the Bost-Connes algebra, the Burnside
//! correspondence matches Frobenius and Verschiebung, and the assembler
//! K-groups agree with the orbit basis.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use bc_core::arith::divisors;
use bc_core::bc::CrossedElem;
use bc_core::orbits::{bold_chi, BoldK0Elem, OrbitSum};
use bc_core::scissors::{finite_set_assembler, K0Group};
use bc_core::witt::{burnside_to_witt, TruncationSet};

fn random_orbit_sum(rng: &mut ChaCha8Rng, max_len: u64) -> OrbitSum {
    let terms = rng.gen_range(1..=3);
    OrbitSum::from_orbits((0..terms).map(|_| {
        (
            rng.gen_range(1..=max_len),
            BigInt::from(rng.gen_range(-4i64..=4)),
        )
    }))
}

fn random_bold(rng: &mut ChaCha8Rng) -> BoldK0Elem {
    let terms = rng.gen_range(1..=2);
    let mut out = BoldK0Elem::zero();
    for _ in 0..terms {
        out = out.add(&CrossedElem::from_term(
            rng.gen_range(1..=6),
            random_orbit_sum(rng, 8),
            rng.gen_range(1..=6),
        ));
    }
    out
}

#[test]
fn chi_intertwines_on_random_virtual_sums() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..200 {
        let x = random_orbit_sum(&mut rng, 12);
        let y = random_orbit_sum(&mut rng, 12);
        assert_eq!(x.mul(&y).chi(), x.chi().mul(&y.chi()));
        for n in 1..=12u64 {
            assert_eq!(x.sigma(n).chi(), x.chi().sigma(n));
            assert_eq!(x.rho_tilde(n).chi(), x.chi().rho_tilde(n));
        }
    }
}

#[test]
fn bold_chi_is_a_ring_homomorphism_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..200 {
        let u = random_bold(&mut rng);
        let v = random_bold(&mut rng);
        assert_eq!(bold_chi(&u.mul(&v)), bold_chi(&u).mul(&bold_chi(&v)));
        assert_eq!(bold_chi(&u.add(&v)), bold_chi(&u).add(&bold_chi(&v)));
    }
}

#[test]
fn bold_relations_hold_with_orbit_coefficients() {
    // the same Frobenius/Verschiebung shape as in the commutative model, inside the
    // normal form: mu~_n x mu*_n = rho~_n(x), mu*_n mu~_n = n
    for n in 1..=12u64 {
        for d in 1..=12u64 {
            let x = OrbitSum::orbit(d);
            let u = BoldK0Elem::mu_tilde(n)
                .mul(&BoldK0Elem::inject(x.clone()))
                .mul(&BoldK0Elem::mu_star(n));
            assert_eq!(u, BoldK0Elem::inject(x.rho_tilde(n)));
        }
        assert_eq!(
            BoldK0Elem::mu_star(n).mul(&BoldK0Elem::mu_tilde(n)),
            BoldK0Elem::unit().scale_nat(n)
        );
    }
}

#[test]
fn burnside_correspondence_on_random_virtual_sums() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let t = TruncationSet::divisors_of(24);
    for _ in 0..100 {
        let x = random_orbit_sum(&mut rng, 12);
        let y = random_orbit_sum(&mut rng, 12);
        let ix = burnside_to_witt(&x, &t);
        let iy = burnside_to_witt(&y, &t);
        assert_eq!(burnside_to_witt(&x.add(&y), &t), ix.add(&iy).unwrap());
        assert_eq!(burnside_to_witt(&x.mul(&y), &t), ix.mul(&iy).unwrap());
    }
}

#[test]
fn k0_rank_is_the_divisor_count_through_level_twelve() {
    for n in 1..=12u64 {
        let p = finite_set_assembler(n);
        let k = K0Group::from_presentation(&p).unwrap();
        assert_eq!(k.rank, divisors(n).len(), "rank at level {n}");
        assert!(k.torsion.is_empty(), "free at level {n}");
    }
}
