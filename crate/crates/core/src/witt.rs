//! Truncated big Witt vectors over `Z` and the Burnside correspondence.
//!
//! A truncation set is a finite divisor-closed set of positive integers; a
//! Witt vector on it is a coordinate family `(x_d)` with ghost components
//! `g_m = sum over d | m of d * x_d^{m/d}`. Ring operations go through the
//! ghost map and back: over a torsion-free base this is exact, and the
//! triangular solve certifies integrality. Under the identification of the
//! completed Burnside ring of the profinite integers with `W(Z)`, the ghost
//! components of an orbit sum are its fixed-point marks, `sigma_n`
//! corresponds to the Frobenius `F_n` and `rho_tilde_n` to the Verschiebung
//! `V_n`.

use alloc::collections::{BTreeMap, BTreeSet};
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::arith::divisors;
use crate::error::Error;
use crate::orbits::OrbitSum;

/// A finite set of positive integers closed under taking divisors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncationSet {
    divs: BTreeSet<u64>,
}

impl TruncationSet {
    /// The divisor closure of the given generators; always contains 1.
    pub fn from_gens(gens: impl IntoIterator<Item = u64>) -> TruncationSet {
        let mut divs = BTreeSet::from([1]);
        for g in gens {
            assert!(g >= 1, "truncation generators must be positive");
            divs.extend(divisors(g));
        }
        TruncationSet { divs }
    }

    /// All divisors of `n`.
    pub fn divisors_of(n: u64) -> TruncationSet {
        TruncationSet::from_gens([n])
    }

    pub fn contains(&self, d: u64) -> bool {
        self.divs.contains(&d)
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.divs.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.divs.len()
    }

    pub fn is_empty(&self) -> bool {
        false // 1 is always present
    }

    pub fn is_subset_of(&self, other: &TruncationSet) -> bool {
        self.divs.is_subset(&other.divs)
    }
}

/// A truncated big Witt vector over `Z`.
#[derive(Clone, PartialEq, Eq)]
pub struct WittVector {
    trunc: TruncationSet,
    coords: BTreeMap<u64, BigInt>,
}

impl WittVector {
    pub fn zero(trunc: TruncationSet) -> WittVector {
        let coords = trunc.iter().map(|d| (d, BigInt::zero())).collect();
        WittVector { trunc, coords }
    }

    /// The Teichmueller representative `[c] = (c, 0, 0, ...)`, with ghost
    /// components `g_m = c^m`. `[1]` is the ring unit.
    pub fn teichmuller(trunc: TruncationSet, c: BigInt) -> WittVector {
        let mut w = WittVector::zero(trunc);
        w.coords.insert(1, c);
        w
    }

    pub fn one(trunc: TruncationSet) -> WittVector {
        WittVector::teichmuller(trunc, BigInt::from(1))
    }

    /// Builds a vector from explicit coordinates; unspecified coordinates
    /// are zero, keys outside the truncation set are rejected.
    pub fn from_coords(
        trunc: TruncationSet,
        coords: impl IntoIterator<Item = (u64, BigInt)>,
    ) -> Result<WittVector, Error> {
        let mut w = WittVector::zero(trunc);
        for (d, x) in coords {
            if !w.trunc.contains(d) {
                return Err(Error::TruncationMismatch);
            }
            w.coords.insert(d, x);
        }
        Ok(w)
    }

    pub fn trunc(&self) -> &TruncationSet {
        &self.trunc
    }

    pub fn coord(&self, d: u64) -> BigInt {
        self.coords.get(&d).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Coordinates in increasing divisor order.
    pub fn coords(&self) -> impl Iterator<Item = (&u64, &BigInt)> {
        self.coords.iter()
    }

    /// The ghost component `g_m = sum over d | m of d * x_d^{m/d}`.
    pub fn ghost_at(&self, m: u64) -> BigInt {
        assert!(self.trunc.contains(m), "ghost component outside truncation");
        let mut g = BigInt::zero();
        for d in divisors(m) {
            let x = &self.coords[&d];
            if x.is_zero() {
                continue;
            }
            g += BigInt::from(d) * x.pow((m / d) as u32);
        }
        g
    }

    /// All ghost components on the truncation set.
    pub fn ghost(&self) -> BTreeMap<u64, BigInt> {
        self.trunc.iter().map(|m| (m, self.ghost_at(m))).collect()
    }

    /// Inverts the ghost map by the triangular solve
    /// `m * x_m = g_m - sum over d | m, d < m of d * x_d^{m/d}`,
    /// failing on the first non-integral coordinate. This is the
    /// integrality certificate: ghost data lies in the image over `Z`
    /// iff every division is exact.
    pub fn from_ghost(
        trunc: TruncationSet,
        ghosts: &BTreeMap<u64, BigInt>,
    ) -> Result<WittVector, Error> {
        let mut w = WittVector::zero(trunc);
        for m in w.trunc.clone().iter() {
            let g = ghosts.get(&m).ok_or(Error::GhostIncomplete(m))?;
            let mut rest = BigInt::zero();
            for d in divisors(m) {
                if d == m {
                    continue;
                }
                let x = &w.coords[&d];
                if x.is_zero() {
                    continue;
                }
                rest += BigInt::from(d) * x.pow((m / d) as u32);
            }
            let (q, r) = (g - rest).div_rem(&BigInt::from(m));
            if !r.is_zero() {
                return Err(Error::NotAWittVector(m));
            }
            w.coords.insert(m, q);
        }
        Ok(w)
    }

    fn ghost_op(
        &self,
        rhs: &WittVector,
        op: impl Fn(&BigInt, &BigInt) -> BigInt,
    ) -> Result<WittVector, Error> {
        if self.trunc != rhs.trunc {
            return Err(Error::TruncationMismatch);
        }
        let ghosts = self
            .trunc
            .iter()
            .map(|m| (m, op(&self.ghost_at(m), &rhs.ghost_at(m))))
            .collect();
        Ok(WittVector::from_ghost(self.trunc.clone(), &ghosts)
            .expect("W(Z) is closed under ring operations"))
    }

    /// Witt addition: ghost-componentwise sum.
    pub fn add(&self, rhs: &WittVector) -> Result<WittVector, Error> {
        self.ghost_op(rhs, |a, b| a + b)
    }

    /// Witt multiplication: ghost-componentwise product.
    pub fn mul(&self, rhs: &WittVector) -> Result<WittVector, Error> {
        self.ghost_op(rhs, |a, b| a * b)
    }

    pub fn neg(&self) -> WittVector {
        let ghosts = self.trunc.iter().map(|m| (m, -self.ghost_at(m))).collect();
        WittVector::from_ghost(self.trunc.clone(), &ghosts).expect("W(Z) is closed under negation")
    }

    pub fn sub(&self, rhs: &WittVector) -> Result<WittVector, Error> {
        self.ghost_op(rhs, |a, b| a - b)
    }

    /// The Frobenius `F_n`, defined on ghosts by
    /// `ghost_m(F_n w) = ghost_{nm}(w)`; the output lives on
    /// `{m : nm in trunc}`, which is nonempty iff `n` is in the truncation.
    pub fn frobenius(&self, n: u64) -> Result<WittVector, Error> {
        assert!(n >= 1, "frobenius: n must be positive");
        if !self.trunc.contains(n) {
            return Err(Error::TruncationTooSmall(n));
        }
        let out_trunc = TruncationSet {
            divs: self
                .trunc
                .iter()
                .filter(|&t| t % n == 0)
                .map(|t| t / n)
                .collect::<BTreeSet<_>>(),
        };
        let ghosts = out_trunc
            .iter()
            .map(|m| (m, self.ghost_at(n * m)))
            .collect();
        Ok(WittVector::from_ghost(out_trunc, &ghosts).expect("Frobenius preserves integrality"))
    }

    /// The Verschiebung `V_n`: on coordinates the shift placing `x_d` at
    /// `nd`; on ghosts `ghost_m = n * ghost_{m/n}` when `n | m` and zero
    /// otherwise. The output lives on the divisor closure of `n * trunc`.
    pub fn verschiebung(&self, n: u64) -> WittVector {
        assert!(n >= 1, "verschiebung: n must be positive");
        let out_trunc = TruncationSet::from_gens(
            self.trunc
                .iter()
                .map(|d| d.checked_mul(n).expect("truncation overflow")),
        );
        let mut w = WittVector::zero(out_trunc);
        for (&d, x) in &self.coords {
            w.coords.insert(n * d, x.clone());
        }
        w
    }

    /// Projection to a smaller truncation set (coordinates restrict).
    pub fn restrict(&self, trunc: &TruncationSet) -> Result<WittVector, Error> {
        if !trunc.is_subset_of(&self.trunc) {
            return Err(Error::TruncationMismatch);
        }
        let coords = trunc.iter().map(|d| (d, self.coord(d))).collect();
        Ok(WittVector {
            trunc: trunc.clone(),
            coords,
        })
    }
}

impl fmt::Debug for WittVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, (d, x)) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "x_{d} = {x}")?;
        }
        write!(f, ")")
    }
}

/// The mark homomorphism: the number of points of the orbit sum fixed by the
/// index-`m` subgroup, `sum over d | m of d * mult_d`. For each fixed `m`
/// this is a ring homomorphism to `Z`.
pub fn fixed_points(x: &OrbitSum, m: u64) -> BigInt {
    assert!(m >= 1, "fixed_points: m must be positive");
    let mut total = BigInt::zero();
    for (&d, mult) in x.orbits() {
        if m.is_multiple_of(d) {
            total += BigInt::from(d) * mult;
        }
    }
    total
}

/// The Burnside-to-Witt correspondence at a finite truncation: the Witt
/// vector whose ghost components are the fixed-point marks. Orbits whose
/// length lies outside the truncation set are projected away, matching the
/// truncation `W(Z) -> W_T(Z)` of the full correspondence; the triangular
/// solve is exact for every (possibly virtual) orbit sum.
pub fn burnside_to_witt(x: &OrbitSum, trunc: &TruncationSet) -> WittVector {
    let ghosts = trunc.iter().map(|m| (m, fixed_points(x, m))).collect();
    WittVector::from_ghost(trunc.clone(), &ghosts)
        .expect("marks of an orbit sum are integral ghost data")
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    fn t12() -> TruncationSet {
        TruncationSet::divisors_of(12)
    }

    fn t2() -> TruncationSet {
        TruncationSet::divisors_of(2)
    }

    fn w(trunc: &TruncationSet, coords: &[(u64, i64)]) -> WittVector {
        WittVector::from_coords(
            trunc.clone(),
            coords.iter().map(|&(d, x)| (d, BigInt::from(x))),
        )
        .unwrap()
    }

    #[test]
    fn truncation_sets_close_under_divisors() {
        let t = TruncationSet::from_gens([12]);
        assert_eq!(t.iter().collect::<Vec<_>>(), [1, 2, 3, 4, 6, 12]);
        let t = TruncationSet::from_gens([4, 6]);
        assert_eq!(t.iter().collect::<Vec<_>>(), [1, 2, 3, 4, 6]);
    }

    #[test]
    fn ghost_examples() {
        let v = w(&t2(), &[(1, 2), (2, 0)]);
        assert_eq!(
            v.ghost(),
            BTreeMap::from([(1, BigInt::from(2)), (2, BigInt::from(4))])
        );
    }

    #[test]
    fn from_ghost_examples() {
        let g = BTreeMap::from([(1, BigInt::from(1)), (2, BigInt::from(1))]);
        assert_eq!(
            WittVector::from_ghost(t2(), &g).unwrap(),
            WittVector::one(t2())
        );
        let g = BTreeMap::from([(1, BigInt::from(0)), (2, BigInt::from(1))]);
        assert_eq!(
            WittVector::from_ghost(t2(), &g),
            Err(Error::NotAWittVector(2))
        );
        let g = BTreeMap::from([(1, BigInt::from(0))]);
        assert_eq!(
            WittVector::from_ghost(t2(), &g),
            Err(Error::GhostIncomplete(2))
        );
    }

    #[test]
    fn ghost_round_trip() {
        let v = w(&t12(), &[(1, 3), (2, -2), (3, 5), (4, 1), (6, -1), (12, 2)]);
        assert_eq!(WittVector::from_ghost(t12(), &v.ghost()).unwrap(), v);
    }

    #[test]
    fn addition_frozen_values() {
        let one = WittVector::one(t2());
        // ghosts (2, 2): solve x_1 = 2, 4 + 2 x_2 = 2
        assert_eq!(one.add(&one).unwrap(), w(&t2(), &[(1, 2), (2, -1)]));
    }

    #[test]
    fn multiplication_frozen_from_ghost_oracle() {
        let two = WittVector::teichmuller(t2(), BigInt::from(2));
        // [2]*[2] has ghosts (4, 16); the solve gives (4, 0), i.e. [4]
        let prod = two.mul(&two).unwrap();
        assert_eq!(prod, w(&t2(), &[(1, 4), (2, 0)]));
        assert_eq!(prod, WittVector::teichmuller(t2(), BigInt::from(4)));
    }

    #[test]
    fn teichmuller_one_is_unit() {
        let v = w(&t12(), &[(1, 2), (3, -1), (12, 4)]);
        assert_eq!(WittVector::one(t12()).mul(&v).unwrap(), v);
        assert_eq!(v.sub(&v).unwrap(), WittVector::zero(t12()));
    }

    #[test]
    fn truncation_mismatch_is_an_error() {
        let a = WittVector::one(t2());
        let b = WittVector::one(t12());
        assert_eq!(a.add(&b), Err(Error::TruncationMismatch));
    }

    #[test]
    fn verschiebung_examples() {
        let v = WittVector::one(TruncationSet::divisors_of(1));
        assert_eq!(v.verschiebung(2), w(&t2(), &[(1, 0), (2, 1)]));
        let x = w(&t12(), &[(1, 5), (2, -3)]);
        assert_eq!(x.frobenius(1).unwrap(), x);
        assert_eq!(x.verschiebung(1), x);
    }

    #[test]
    fn verschiebung_coordinate_shift_matches_ghost_definition() {
        let x = w(&t12(), &[(1, 2), (2, 1), (3, -4), (4, 2), (6, 1), (12, -1)]);
        for n in [2u64, 3, 4] {
            let v = x.verschiebung(n);
            for m in v.trunc().iter() {
                let expected = if m % n == 0 && x.trunc().contains(m / n) {
                    BigInt::from(n) * x.ghost_at(m / n)
                } else if m % n == 0 {
                    continue; // m/n outside input truncation
                } else {
                    BigInt::zero()
                };
                assert_eq!(v.ghost_at(m), expected, "n = {n}, m = {m}");
            }
        }
    }

    #[test]
    fn frobenius_outside_the_truncation_is_an_error() {
        let x = w(&t12(), &[(1, 1)]);
        assert_eq!(x.frobenius(5), Err(Error::TruncationTooSmall(5)));
        assert_eq!(x.frobenius(24), Err(Error::TruncationTooSmall(24)));
        assert!(x.frobenius(6).is_ok());
    }

    #[test]
    fn frobenius_ghosts() {
        let x = w(&t12(), &[(1, 1), (2, 2), (3, 3), (4, 4), (6, 6), (12, 12)]);
        for n in [2u64, 3, 4, 6] {
            let f = x.frobenius(n).unwrap();
            for m in f.trunc().iter() {
                assert_eq!(f.ghost_at(m), x.ghost_at(n * m), "n = {n}, m = {m}");
            }
        }
    }

    #[test]
    fn frobenius_of_verschiebung_is_multiplication_by_n() {
        let x = w(&t12(), &[(1, 3), (2, -1), (3, 2), (4, 0), (6, 1), (12, 5)]);
        for n in [2u64, 3] {
            let fv = x.verschiebung(n).frobenius(n).unwrap();
            let fv = fv.restrict(x.trunc()).unwrap();
            // n-fold Witt sum of x
            let mut sum = WittVector::zero(t12());
            for _ in 0..n {
                sum = sum.add(&x).unwrap();
            }
            assert_eq!(fv, sum, "n = {n}");
        }
    }

    #[test]
    fn projection_formula_for_witt_vectors() {
        // V_n(F_n(a) b) = a V_n(b) on truncation divisors-of-24
        let t = TruncationSet::divisors_of(24);
        let a = w(
            &t,
            &[
                (1, 2),
                (2, 1),
                (3, -1),
                (4, 3),
                (6, 0),
                (8, 1),
                (12, -2),
                (24, 1),
            ],
        );
        let b = w(
            &t,
            &[
                (1, -1),
                (2, 2),
                (3, 1),
                (4, 0),
                (6, 2),
                (8, -1),
                (12, 1),
                (24, 0),
            ],
        );
        for n in [2u64, 3, 4] {
            let fa = a.frobenius(n).unwrap();
            let b_small = b.restrict(fa.trunc()).unwrap();
            let lhs = fa.mul(&b_small).unwrap().verschiebung(n);
            let vb = b_small.verschiebung(n);
            let rhs = a.restrict(vb.trunc()).unwrap().mul(&vb).unwrap();
            assert_eq!(lhs, rhs, "n = {n}");
        }
    }

    #[test]
    fn fixed_point_examples() {
        assert_eq!(fixed_points(&OrbitSum::orbit(2), 2), BigInt::from(2));
        assert_eq!(fixed_points(&OrbitSum::orbit(2), 1), BigInt::from(0));
        for m in 1..=8 {
            assert_eq!(fixed_points(&OrbitSum::one(), m), BigInt::from(1));
        }
    }

    #[test]
    fn marks_are_ring_homomorphisms() {
        for d in 1..=12u64 {
            for e in 1..=12u64 {
                let x = OrbitSum::orbit(d);
                let y = OrbitSum::orbit(e);
                for m in 1..=24u64 {
                    assert_eq!(
                        fixed_points(&x.mul(&y), m),
                        fixed_points(&x, m) * fixed_points(&y, m),
                        "d = {d}, e = {e}, m = {m}"
                    );
                    assert_eq!(
                        fixed_points(&x.add(&y), m),
                        fixed_points(&x, m) + fixed_points(&y, m)
                    );
                }
            }
        }
    }

    #[test]
    fn burnside_images() {
        assert_eq!(
            burnside_to_witt(&OrbitSum::one(), &t12()),
            WittVector::one(t12())
        );
        assert_eq!(
            burnside_to_witt(&OrbitSum::orbit(2), &t2()),
            w(&t2(), &[(1, 0), (2, 1)])
        );
        assert_eq!(
            burnside_to_witt(&OrbitSum::orbit(2), &t2()),
            WittVector::one(TruncationSet::divisors_of(1)).verschiebung(2)
        );
    }

    #[test]
    fn burnside_map_is_a_ring_homomorphism() {
        let t = t12();
        for d in 1..=12u64 {
            for e in 1..=12u64 {
                let x = OrbitSum::orbit(d);
                let y = OrbitSum::orbit(e);
                let img = |v: &OrbitSum| burnside_to_witt(v, &t);
                assert_eq!(
                    img(&x.mul(&y)),
                    img(&x).mul(&img(&y)).unwrap(),
                    "product route d = {d}, e = {e}"
                );
                assert_eq!(img(&x.add(&y)), img(&x).add(&img(&y)).unwrap());
            }
        }
    }

    #[test]
    fn sigma_rho_match_frobenius_verschiebung_at_ghost_level() {
        let t = TruncationSet::divisors_of(24);
        for d in 1..=8u64 {
            let x = OrbitSum::orbit(d);
            for n in 1..=6u64 {
                // sigma_n <-> F_n
                let lhs = burnside_to_witt(&x.sigma(n), &t);
                for m in t.iter() {
                    if t.contains(n * m) {
                        assert_eq!(
                            lhs.ghost_at(m),
                            burnside_to_witt(&x, &t).ghost_at(n * m),
                            "F: d = {d}, n = {n}, m = {m}"
                        );
                    }
                }
                // rho_tilde_n <-> V_n
                let rhs = burnside_to_witt(&x.rho_tilde(n), &t);
                for m in t.iter() {
                    let expect = if m % n == 0 {
                        BigInt::from(n) * burnside_to_witt(&x, &t).ghost_at(m / n)
                    } else {
                        BigInt::zero()
                    };
                    assert_eq!(rhs.ghost_at(m), expect, "V: d = {d}, n = {n}, m = {m}");
                }
            }
        }
    }
}
