//! Finite cyclic-orbit sums: the effective zero-dimensional model of the
//! equivariant Grothendieck ring.
//!
//! A finite set with a profinite-cyclic action factoring through `Z/N` is,
//! up to equivariant isomorphism, a multiset of orbits `[Z/d]` with `d | N`;
//! its class is the integer combination of orbit lengths stored here.
//! Virtual (negative-multiplicity) combinations are allowed, as classes in a
//! Grothendieck ring are formal differences. On this sector
//!
//! * product: `[Z/d] * [Z/e] = gcd(d,e) [Z/lcm(d,e)]` (diagonal action),
//! * `sigma_n`: orbits of translation-by-`n`, `[Z/d] -> gcd(n,d) [Z/(d/gcd)]`,
//! * `rho_tilde_n`: the cyclic extension `[Z/d] -> [Z/nd]` (Verschiebung),
//! * `chi`: the Euler characteristic to `Z[Q/Z]`, `[Z/d] -> sum_{ds=0} e(s)`.

use alloc::collections::BTreeMap;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::bc::{BcCoeff, BcElem, CrossedElem};
use crate::group_ring::IntElem;

/// An integer combination of cyclic-orbit classes `[Z/d]`, keyed by orbit
/// length; zero multiplicities are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct OrbitSum {
    orbits: BTreeMap<u64, BigInt>,
}

impl OrbitSum {
    pub fn zero() -> OrbitSum {
        OrbitSum::default()
    }

    /// The class of a single orbit `[Z/d]`.
    pub fn orbit(d: u64) -> OrbitSum {
        assert!(d >= 1, "orbit: length must be positive");
        OrbitSum {
            orbits: BTreeMap::from([(d, BigInt::from(1))]),
        }
    }

    /// The one-point set `[Z/1]`, the ring unit.
    pub fn one() -> OrbitSum {
        OrbitSum::orbit(1)
    }

    pub fn from_orbits(orbits: impl IntoIterator<Item = (u64, BigInt)>) -> OrbitSum {
        let mut s = OrbitSum::zero();
        for (d, m) in orbits {
            s.insert_add(d, m);
        }
        s
    }

    fn insert_add(&mut self, d: u64, m: BigInt) {
        assert!(d >= 1, "orbit lengths are positive");
        if m.is_zero() {
            return;
        }
        let entry = self.orbits.entry(d).or_insert_with(BigInt::zero);
        *entry += m;
        if entry.is_zero() {
            self.orbits.remove(&d);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.orbits.is_empty()
    }

    /// True when every multiplicity is nonnegative, i.e. the class comes
    /// from a genuine finite set rather than a virtual difference.
    pub fn is_effective(&self) -> bool {
        self.orbits.values().all(|m| !m.is_negative())
    }

    /// Orbit multiplicities in increasing length order.
    pub fn orbits(&self) -> impl Iterator<Item = (&u64, &BigInt)> {
        self.orbits.iter()
    }

    pub fn multiplicity(&self, d: u64) -> BigInt {
        self.orbits.get(&d).cloned().unwrap_or_else(BigInt::zero)
    }

    /// The finite level through which the action factors: lcm of the
    /// supported orbit lengths.
    pub fn level(&self) -> u64 {
        self.orbits.keys().fold(1, |l, &d| l.lcm(&d))
    }

    /// Total number of points, `sum d * mult_d` (may be negative for
    /// virtual classes).
    pub fn size(&self) -> BigInt {
        self.orbits
            .iter()
            .map(|(&d, m)| BigInt::from(d) * m)
            .fold(BigInt::zero(), |a, b| a + b)
    }

    pub fn add(&self, rhs: &OrbitSum) -> OrbitSum {
        let mut out = self.clone();
        for (&d, m) in &rhs.orbits {
            out.insert_add(d, m.clone());
        }
        out
    }

    pub fn neg(&self) -> OrbitSum {
        OrbitSum {
            orbits: self.orbits.iter().map(|(&d, m)| (d, -m)).collect(),
        }
    }

    pub fn sub(&self, rhs: &OrbitSum) -> OrbitSum {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, c: &BigInt) -> OrbitSum {
        if c.is_zero() {
            return OrbitSum::zero();
        }
        OrbitSum::from_orbits(self.orbits.iter().map(|(&d, m)| (d, m * c)))
    }

    /// Bilinear extension of the diagonal-action product
    /// `[Z/d] * [Z/e] = gcd(d, e) [Z/lcm(d, e)]`.
    pub fn mul(&self, rhs: &OrbitSum) -> OrbitSum {
        let mut out = OrbitSum::zero();
        for (&d, m) in &self.orbits {
            for (&e, n) in &rhs.orbits {
                let g = d.gcd(&e);
                out.insert_add(d.lcm(&e), m * n * BigInt::from(g));
            }
        }
        out
    }

    /// Precomposition of the action with `zeta -> zeta^n`: each orbit `[Z/d]`
    /// splits into `gcd(n, d)` orbits of translation-by-`n`, each of length
    /// `d / gcd(n, d)`.
    pub fn sigma(&self, n: u64) -> OrbitSum {
        assert!(n >= 1, "sigma: n must be positive");
        let mut out = OrbitSum::zero();
        for (&d, m) in &self.orbits {
            let g = n.gcd(&d);
            out.insert_add(d / g, m * BigInt::from(g));
        }
        out
    }

    /// The cyclic extension (Verschiebung): rotating `n` slots and applying
    /// the original action once per revolution turns each orbit of length `d`
    /// into a single orbit of length `nd`.
    pub fn rho_tilde(&self, n: u64) -> OrbitSum {
        assert!(n >= 1, "rho_tilde: n must be positive");
        OrbitSum::from_orbits(
            self.orbits
                .iter()
                .map(|(&d, m)| (d.checked_mul(n).expect("orbit length overflow"), m.clone())),
        )
    }

    /// The equivariant Euler characteristic into `Z[Q/Z]`: the linear and
    /// multiplicative extension of `[Z/d] -> sum over ds = 0 of e(s)`. Its
    /// image lies in the subring recognised by `IntElem::in_fixed_subring`.
    pub fn chi(&self) -> IntElem {
        let mut out = IntElem::zero();
        for (&d, m) in &self.orbits {
            out = out.add(&IntElem::division_sum(d).scale(m));
        }
        out
    }
}

impl fmt::Debug for OrbitSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orbits.is_empty() {
            return write!(f, "0");
        }
        for (i, (d, m)) in self.orbits.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{m}[Z/{d}]")?;
        }
        Ok(())
    }
}

impl BcCoeff for OrbitSum {
    fn one() -> Self {
        OrbitSum::one()
    }
    fn is_zero(&self) -> bool {
        OrbitSum::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        OrbitSum::add(self, rhs)
    }
    fn neg(&self) -> Self {
        OrbitSum::neg(self)
    }
    fn mul(&self, rhs: &Self) -> Self {
        OrbitSum::mul(self, rhs)
    }
    fn scale_nat(&self, n: u64) -> Self {
        self.scale(&BigInt::from(n))
    }
    fn sigma(&self, n: u64) -> Self {
        OrbitSum::sigma(self, n)
    }
    fn rho_tilde(&self, n: u64) -> Self {
        OrbitSum::rho_tilde(self, n)
    }
}

/// The noncommutative extension: normal forms `sum mu_tilde_a x mu_b^*` with
/// orbit-sum coefficients, multiplied by the same rewrite engine as the
/// Bost-Connes algebra.
pub type BoldK0Elem = CrossedElem<OrbitSum>;

/// Applies the Euler characteristic to every coefficient, keeping the
/// `(a, b)` keys: a ring homomorphism onto the Bost-Connes algebra.
pub fn bold_chi(u: &BoldK0Elem) -> BcElem {
    u.map_coeffs(OrbitSum::chi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_ring::int_elem;
    use alloc::vec::Vec;

    /// Brute-force oracle: orbit decomposition of an explicit permutation,
    /// returned as orbit-length multiplicities.
    fn cycle_type(perm: &[usize]) -> BTreeMap<u64, u64> {
        let mut seen = alloc::vec![false; perm.len()];
        let mut out: BTreeMap<u64, u64> = BTreeMap::new();
        for start in 0..perm.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = perm[i];
                len += 1;
            }
            *out.entry(len).or_insert(0) += 1;
        }
        out
    }

    fn orbit_sum_of(perm: &[usize]) -> OrbitSum {
        OrbitSum::from_orbits(
            cycle_type(perm)
                .into_iter()
                .map(|(d, m)| (d, BigInt::from(m))),
        )
    }

    /// The generator of the diagonal translation action on `Z/d x Z/e`.
    fn diagonal_translation(d: usize, e: usize) -> Vec<usize> {
        let mut perm = alloc::vec![0; d * e];
        for i in 0..d {
            for j in 0..e {
                perm[i * e + j] = ((i + 1) % d) * e + (j + 1) % e;
            }
        }
        perm
    }

    /// Translation by `n` on `Z/d`.
    fn translation_by(n: usize, d: usize) -> Vec<usize> {
        (0..d).map(|i| (i + n) % d).collect()
    }

    /// The explicit Verschiebung permutation on `X x Z/n` where the action on
    /// `X` is given by `perm`: slots rotate, `perm` applies on wrap-around.
    fn verschiebung_perm(perm: &[usize], n: usize) -> Vec<usize> {
        let s = perm.len();
        let mut out = alloc::vec![0; s * n];
        for x in 0..s {
            for i in 0..n {
                out[x * n + i] = if i + 1 < n {
                    x * n + i + 1
                } else {
                    perm[x] * n
                };
            }
        }
        out
    }

    #[test]
    fn product_matches_point_counting_oracle() {
        assert_eq!(
            OrbitSum::orbit(2).mul(&OrbitSum::orbit(3)),
            orbit_sum_of(&diagonal_translation(2, 3))
        );
        assert_eq!(
            OrbitSum::orbit(4).mul(&OrbitSum::orbit(6)),
            orbit_sum_of(&diagonal_translation(4, 6))
        );
        assert_eq!(
            OrbitSum::orbit(4).mul(&OrbitSum::orbit(6)),
            OrbitSum::orbit(12).scale(&BigInt::from(2))
        );
        for d in 1..=12 {
            for e in 1..=12 {
                assert_eq!(
                    OrbitSum::orbit(d as u64).mul(&OrbitSum::orbit(e as u64)),
                    orbit_sum_of(&diagonal_translation(d, e)),
                    "d = {d}, e = {e}"
                );
            }
        }
    }

    #[test]
    fn unit_orbit() {
        let x = OrbitSum::from_orbits([(2, BigInt::from(3)), (5, BigInt::from(-1))]);
        assert_eq!(OrbitSum::one().mul(&x), x);
    }

    #[test]
    fn sigma_matches_cycle_oracle() {
        assert_eq!(
            OrbitSum::orbit(4).sigma(2),
            OrbitSum::orbit(2).scale(&BigInt::from(2))
        );
        assert_eq!(OrbitSum::orbit(2).sigma(3), OrbitSum::orbit(2));
        assert_eq!(OrbitSum::orbit(1).sigma(7), OrbitSum::orbit(1));
        for d in 1..=12 {
            for n in 1..=12 {
                assert_eq!(
                    OrbitSum::orbit(d as u64).sigma(n as u64),
                    orbit_sum_of(&translation_by(n, d)),
                    "d = {d}, n = {n}"
                );
            }
        }
    }

    #[test]
    fn sigma_is_semigroup_action() {
        let x = OrbitSum::from_orbits([(4, BigInt::from(1)), (6, BigInt::from(-2))]);
        for n in 1..=6 {
            for m in 1..=6 {
                assert_eq!(x.sigma(n * m), x.sigma(m).sigma(n));
            }
        }
    }

    #[test]
    fn rho_tilde_matches_verschiebung_oracle() {
        assert_eq!(OrbitSum::orbit(1).rho_tilde(2), OrbitSum::orbit(2));
        assert_eq!(OrbitSum::orbit(2).rho_tilde(3), OrbitSum::orbit(6));
        let x = OrbitSum::from_orbits([(3, BigInt::from(2))]);
        assert_eq!(x.rho_tilde(1), x);
        for d in 1..=8 {
            for n in 1..=6 {
                let direct = OrbitSum::orbit(d as u64).rho_tilde(n as u64);
                let oracle = orbit_sum_of(&verschiebung_perm(&translation_by(1, d), n));
                assert_eq!(direct, oracle, "d = {d}, n = {n}");
            }
        }
    }

    #[test]
    fn frobenius_verschiebung_relations() {
        for d in 1..=12u64 {
            let x = OrbitSum::orbit(d);
            for n in 1..=12u64 {
                assert_eq!(
                    x.rho_tilde(n).sigma(n),
                    x.scale(&BigInt::from(n)),
                    "sigma_n rho_tilde_n = n at d = {d}, n = {n}"
                );
                assert_eq!(
                    x.sigma(n).rho_tilde(n),
                    x.mul(&OrbitSum::orbit(n)),
                    "rho_tilde_n sigma_n = product with [Z/n] at d = {d}, n = {n}"
                );
            }
        }
    }

    #[test]
    fn chi_examples() {
        assert_eq!(OrbitSum::orbit(2).chi(), int_elem(&[(1, 0, 1), (1, 1, 2)]));
        assert_eq!(OrbitSum::one().chi(), IntElem::one());
        assert_eq!(
            OrbitSum::orbit(4).chi(),
            int_elem(&[(1, 0, 1), (1, 1, 4), (1, 1, 2), (1, 3, 4)])
        );
    }

    #[test]
    fn chi_is_a_ring_homomorphism_into_the_fixed_subring() {
        for d in 1..=12u64 {
            for e in 1..=12u64 {
                let x = OrbitSum::orbit(d);
                let y = OrbitSum::orbit(e);
                assert_eq!(x.mul(&y).chi(), x.chi().mul(&y.chi()));
            }
        }
        let v = OrbitSum::from_orbits([(6, BigInt::from(2)), (4, BigInt::from(-3))]);
        assert!(v.chi().in_fixed_subring().is_some());
    }

    #[test]
    fn chi_intertwines_sigma_and_rho_tilde() {
        for d in 1..=12u64 {
            let x = OrbitSum::orbit(d);
            for n in 1..=12u64 {
                assert_eq!(x.sigma(n).chi(), x.chi().sigma(n));
                assert_eq!(x.rho_tilde(n).chi(), x.chi().rho_tilde(n));
            }
        }
    }

    #[test]
    fn bold_chi_examples() {
        assert_eq!(
            bold_chi(&BoldK0Elem::inject(OrbitSum::orbit(2))),
            BcElem::inject(int_elem(&[(1, 0, 1), (1, 1, 2)]))
        );
        assert_eq!(bold_chi(&BoldK0Elem::unit()), BcElem::unit());
        // mu~_2 [Z/1] mu*_2 normalizes to the injected Verschiebung image
        let u = BoldK0Elem::mu_tilde(2)
            .mul(&BoldK0Elem::inject(OrbitSum::one()))
            .mul(&BoldK0Elem::mu_star(2));
        assert_eq!(u, BoldK0Elem::inject(OrbitSum::orbit(2)));
        assert_eq!(
            bold_chi(&u),
            BcElem::inject(int_elem(&[(1, 0, 1), (1, 1, 2)]))
        );
    }

    #[test]
    fn size_and_effectivity() {
        let x = OrbitSum::from_orbits([(2, BigInt::from(3)), (3, BigInt::from(1))]);
        assert_eq!(x.size(), BigInt::from(9));
        assert!(x.is_effective());
        assert!(!x.sub(&OrbitSum::orbit(5)).is_effective());
        assert_eq!(x.level(), 6);
    }
}
