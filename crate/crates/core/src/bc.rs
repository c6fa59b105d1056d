//! The integral Bost-Connes algebra as a normal-form calculator.
//!
//! Elements are finite sums of words `mu_tilde_a * x * mu_b^*` with
//! `gcd(a, b) = 1` and `x` in the coefficient ring; the integer scalars live
//! inside `x`. Every word in the generators reduces to this form through the
//! defining relations
//!
//! ```text
//! mu_tilde_{nm} = mu_tilde_n mu_tilde_m      mu_{nm}^* = mu_n^* mu_m^*
//! mu_n^* mu_tilde_n = n                      mu_tilde_n mu_m^* = mu_m^* mu_tilde_n  (gcd(n,m) = 1)
//! x mu_tilde_n = mu_tilde_n sigma_n(x)       mu_n^* x = sigma_n(x) mu_n^*
//! mu_tilde_n x mu_n^* = rho_tilde_n(x)
//! ```
//!
//! The engine is generic over the coefficient ring, so the same rewrite
//! implements both the Bost-Connes algebra over `Z[Q/Z]` and its lift with
//! cyclic-orbit coefficients.

use alloc::collections::BTreeMap;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

use crate::group_ring::{Coeff, GroupRingElem, IntElem, RatElem};

/// A commutative coefficient ring carrying the semigroup of Frobenius-type
/// endomorphisms `sigma_n` and the additive Verschiebung-type maps
/// `rho_tilde_n`.
pub trait BcCoeff: Clone + PartialEq + fmt::Debug {
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn scale_nat(&self, n: u64) -> Self;
    fn sigma(&self, n: u64) -> Self;
    fn rho_tilde(&self, n: u64) -> Self;
}

impl<C: Coeff> BcCoeff for GroupRingElem<C> {
    fn one() -> Self {
        GroupRingElem::one()
    }
    fn is_zero(&self) -> bool {
        GroupRingElem::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        GroupRingElem::add(self, rhs)
    }
    fn neg(&self) -> Self {
        GroupRingElem::neg(self)
    }
    fn mul(&self, rhs: &Self) -> Self {
        GroupRingElem::mul(self, rhs)
    }
    fn scale_nat(&self, n: u64) -> Self {
        self.scale(&C::from_int(n as i64))
    }
    fn sigma(&self, n: u64) -> Self {
        GroupRingElem::sigma(self, n)
    }
    fn rho_tilde(&self, n: u64) -> Self {
        GroupRingElem::rho_tilde(self, n)
    }
}

/// A normal-form element `sum mu_tilde_a x mu_b^*` with coprime `(a, b)`
/// keys, at most one term per key and no zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct CrossedElem<R: BcCoeff> {
    terms: BTreeMap<(u64, u64), R>,
}

/// The integral Bost-Connes algebra over `Z[Q/Z]`.
pub type BcElem = CrossedElem<IntElem>;
/// The same normal form with rational group-ring coefficients.
pub type BcElemQ = CrossedElem<RatElem>;

impl<R: BcCoeff> CrossedElem<R> {
    pub fn zero() -> Self {
        CrossedElem {
            terms: BTreeMap::new(),
        }
    }

    pub fn unit() -> Self {
        Self::inject(R::one())
    }

    /// The embedding of the coefficient ring: the term `(1, x, 1)`.
    pub fn inject(x: R) -> Self {
        Self::from_term(1, x, 1)
    }

    /// The isometry generator `mu_tilde_n = (n, 1, 1)`.
    pub fn mu_tilde(n: u64) -> Self {
        assert!(n >= 1);
        Self::from_term(n, R::one(), 1)
    }

    /// The adjoint generator `mu_n^* = (1, 1, n)`.
    pub fn mu_star(n: u64) -> Self {
        assert!(n >= 1);
        Self::from_term(1, R::one(), n)
    }

    /// A single word `mu_tilde_a x mu_b^*`, normalized: a common factor `g`
    /// of `(a, b)` is removed through `mu_tilde_g x mu_g^* = rho_tilde_g(x)`.
    pub fn from_term(a: u64, x: R, b: u64) -> Self {
        let mut out = Self::zero();
        out.insert_term(a, x, b);
        out
    }

    fn insert_term(&mut self, a: u64, x: R, b: u64) {
        assert!(a >= 1 && b >= 1);
        let g = a.gcd(&b);
        let (a, b) = (a / g, b / g);
        let x = if g == 1 { x } else { x.rho_tilde(g) };
        if x.is_zero() {
            return;
        }
        match self.terms.entry((a, b)) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(x);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&x);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u64, R, u64)>) -> Self {
        let mut out = Self::zero();
        for (a, x, b) in terms {
            out.insert_term(a, x, b);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms `((a, b), x)` in key order.
    pub fn terms(&self) -> impl Iterator<Item = (&(u64, u64), &R)> {
        self.terms.iter()
    }

    /// The coefficient at key `(a, b)`, or `None`.
    pub fn coeff(&self, a: u64, b: u64) -> Option<&R> {
        self.terms.get(&(a, b))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&(a, b), x) in &rhs.terms {
            out.insert_term(a, x.clone(), b);
        }
        out
    }

    pub fn neg(&self) -> Self {
        CrossedElem {
            terms: self.terms.iter().map(|(k, x)| (*k, x.neg())).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn scale_nat(&self, n: u64) -> Self {
        let mut out = Self::zero();
        for (&(a, b), x) in &self.terms {
            out.insert_term(a, x.scale_nat(n), b);
        }
        out
    }

    /// The product, computed termwise by the rewrite
    ///
    /// ```text
    /// (mu_tilde_a x mu_b^*)(mu_tilde_c y mu_d^*)
    ///   = g * mu_tilde_{a c'} [sigma_{c'}(x) sigma_{b'}(y)] mu_{b' d}^*
    /// ```
    ///
    /// with `g = gcd(b, c)`, `b' = b/g`, `c' = c/g`; `insert_term` then
    /// restores coprimality of the outer indices via `rho_tilde`.
    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (&(a, b), x) in &self.terms {
            for (&(c, d), y) in &rhs.terms {
                let g = b.gcd(&c);
                let (bp, cp) = (b / g, c / g);
                let mut z = x.sigma(cp).mul(&y.sigma(bp));
                if g > 1 {
                    z = z.scale_nat(g);
                }
                let na = a.checked_mul(cp).expect("index overflow in product");
                let nb = bp.checked_mul(d).expect("index overflow in product");
                out.insert_term(na, z, nb);
            }
        }
        out
    }

    /// Applies a coefficient-ring homomorphism to every term, keeping the
    /// `(a, b)` keys.
    pub fn map_coeffs<S: BcCoeff>(&self, f: impl Fn(&R) -> S) -> CrossedElem<S> {
        let mut out = CrossedElem::zero();
        for (&(a, b), x) in &self.terms {
            out.insert_term(a, f(x), b);
        }
        out
    }
}

impl<R: BcCoeff> fmt::Debug for CrossedElem<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&(a, b), x)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "mu~_{a}[{x:?}]mu*_{b}")?;
        }
        Ok(())
    }
}

impl BcElem {
    /// Promotes the coefficients to rationals, keeping the `mu_tilde` basis.
    pub fn to_rational(&self) -> BcElemQ {
        self.map_coeffs(IntElem::to_rational)
    }
}

/// The rational crossed product `Q[Q/Z] x| N`, presented on the generators
/// `mu_n = n^{-1} mu_tilde_n` (so `mu_n^* mu_n = 1` and
/// `mu_n x mu_n^* = rho_n(x)`). A term `(a, x, b)` denotes `mu_a x mu_b^*`.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalBcElem {
    terms: BTreeMap<(u64, u64), RatElem>,
}

impl RationalBcElem {
    pub fn zero() -> Self {
        RationalBcElem {
            terms: BTreeMap::new(),
        }
    }

    pub fn unit() -> Self {
        Self::inject(RatElem::one())
    }

    pub fn inject(x: RatElem) -> Self {
        Self::from_mu_term(1, x, 1)
    }

    pub fn mu(n: u64) -> Self {
        assert!(n >= 1);
        Self::from_mu_term(n, RatElem::one(), 1)
    }

    pub fn mu_star(n: u64) -> Self {
        assert!(n >= 1);
        Self::from_mu_term(1, RatElem::one(), n)
    }

    /// A single word `mu_a x mu_b^*`, normalized through the mu_tilde form.
    pub fn from_mu_term(a: u64, x: RatElem, b: u64) -> Self {
        Self::from_tilde(&BcElemQ::from_term(a, scale_div(&x, a), b))
    }

    /// Change of basis `mu_tilde_a x mu_b^* = mu_a (a x) mu_b^*`.
    fn from_tilde(u: &BcElemQ) -> Self {
        RationalBcElem {
            terms: u
                .terms()
                .map(|(&(a, b), x)| ((a, b), scale_mul(x, a)))
                .collect(),
        }
    }

    fn to_tilde(&self) -> BcElemQ {
        BcElemQ::from_terms(
            self.terms
                .iter()
                .map(|(&(a, b), x)| (a, scale_div(x, a), b)),
        )
    }

    /// Terms `((a, b), x)` denoting `mu_a x mu_b^*`, in key order.
    pub fn terms(&self) -> impl Iterator<Item = (&(u64, u64), &RatElem)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::from_tilde(&self.to_tilde().add(&rhs.to_tilde()))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self::from_tilde(&self.to_tilde().sub(&rhs.to_tilde()))
    }

    /// Multiplication through the integral rewrite engine on the
    /// `mu_tilde` basis.
    pub fn mul(&self, rhs: &Self) -> Self {
        Self::from_tilde(&self.to_tilde().mul(&rhs.to_tilde()))
    }
}

impl fmt::Debug for RationalBcElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&(a, b), x)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "mu_{a}[{x:?}]mu*_{b}")?;
        }
        Ok(())
    }
}

/// Rewrites an integral element in the rational crossed-product presentation:
/// each `mu_tilde_a x mu_b^*` becomes `mu_a (a x) mu_b^*`.
pub fn rationalize(u: &BcElem) -> RationalBcElem {
    RationalBcElem::from_tilde(&u.to_rational())
}

fn scale_mul(x: &RatElem, n: u64) -> RatElem {
    x.scale(&BigRational::from_integer(BigInt::from(n)))
}

fn scale_div(x: &RatElem, n: u64) -> RatElem {
    x.scale(&BigRational::new(BigInt::from(1), BigInt::from(n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_ring::int_elem;
    use crate::qz::QZ;

    fn e(n: i64, d: i64) -> IntElem {
        IntElem::basis(QZ::new(n, d).unwrap())
    }

    #[test]
    fn generator_constructors() {
        let inj = BcElem::inject(e(1, 2));
        assert_eq!(inj.coeff(1, 1), Some(&e(1, 2)));
        assert_eq!(BcElem::mu_tilde(6).coeff(6, 1), Some(&IntElem::one()));
        assert_eq!(BcElem::mu_star(1), BcElem::unit());
    }

    #[test]
    fn mu_star_mu_tilde_is_n() {
        for n in 1..=12u64 {
            let lhs = BcElem::mu_star(n).mul(&BcElem::mu_tilde(n));
            assert_eq!(lhs, BcElem::unit().scale_nat(n), "n = {n}");
        }
    }

    #[test]
    fn mu_tilde_x_mu_star_is_rho_tilde() {
        for n in 1..=8u64 {
            let x = int_elem(&[(1, 0, 1), (2, 1, 3)]);
            let lhs = BcElem::mu_tilde(n)
                .mul(&BcElem::inject(x.clone()))
                .mul(&BcElem::mu_star(n));
            assert_eq!(lhs, BcElem::inject(x.rho_tilde(n)), "n = {n}");
        }
    }

    #[test]
    fn mixed_product_frozen_from_step_by_step_rewriting() {
        // (mu~_2 mu*_3)(mu~_3 mu*_2) = mu~_2 (mu*_3 mu~_3) mu*_2
        //                            = 3 mu~_2 mu*_2 = 3 rho~_2(e(0))
        let u = BcElem::mu_tilde(2).mul(&BcElem::mu_star(3));
        let v = BcElem::mu_tilde(3).mul(&BcElem::mu_star(2));
        let expected = BcElem::inject(int_elem(&[(3, 0, 1), (3, 1, 2)]));
        assert_eq!(u.mul(&v), expected);
        // and in the other order: mu~_3 (mu*_2 mu~_2) mu*_3 = 2 rho~_3(e(0))
        let expected_rev = BcElem::inject(int_elem(&[(2, 0, 1), (2, 1, 3), (2, 2, 3)]));
        assert_eq!(v.mul(&u), expected_rev);
    }

    #[test]
    fn injected_elements_multiply_like_the_group_ring() {
        let x = int_elem(&[(2, 1, 4), (1, 1, 3)]);
        let y = int_elem(&[(1, 1, 2), (-1, 0, 1)]);
        assert_eq!(
            BcElem::inject(x.clone()).mul(&BcElem::inject(y.clone())),
            BcElem::inject(x.mul(&y))
        );
    }

    #[test]
    fn term_normalization_restores_coprimality() {
        // mu~_4 x mu*_6 = mu~_2 rho~_2(x) mu*_3
        let x = e(1, 3);
        let t = BcElem::from_term(4, x.clone(), 6);
        assert_eq!(t, BcElem::from_term(2, x.rho_tilde(2), 3));
    }

    #[test]
    fn isometry_relations_on_generators() {
        for n in 1..=12u64 {
            for m in 1..=12u64 {
                assert_eq!(
                    BcElem::mu_tilde(n * m),
                    BcElem::mu_tilde(n).mul(&BcElem::mu_tilde(m))
                );
                assert_eq!(
                    BcElem::mu_star(n * m),
                    BcElem::mu_star(n).mul(&BcElem::mu_star(m))
                );
                if num_integer::gcd(n, m) == 1 {
                    assert_eq!(
                        BcElem::mu_tilde(n).mul(&BcElem::mu_star(m)),
                        BcElem::mu_star(m).mul(&BcElem::mu_tilde(n)),
                        "commutation for coprime n = {n}, m = {m}"
                    );
                }
            }
        }
    }

    #[test]
    fn conjugation_relations() {
        let xs = [
            int_elem(&[(1, 1, 3), (2, 1, 8)]),
            int_elem(&[(-1, 5, 6), (1, 0, 1)]),
        ];
        for x in &xs {
            let xi = BcElem::inject(x.clone());
            for n in 1..=12u64 {
                let mt = BcElem::mu_tilde(n);
                let ms = BcElem::mu_star(n);
                assert_eq!(xi.mul(&mt), mt.mul(&BcElem::inject(x.sigma(n))));
                assert_eq!(ms.mul(&xi), BcElem::inject(x.sigma(n)).mul(&ms));
                assert_eq!(mt.mul(&xi).mul(&ms), BcElem::inject(x.rho_tilde(n)));
            }
        }
    }

    #[test]
    fn rationalize_examples() {
        assert_eq!(
            rationalize(&BcElem::mu_tilde(2)),
            RationalBcElem::mu(2).add(&RationalBcElem::mu(2))
        );
        assert_eq!(rationalize(&BcElem::unit()), RationalBcElem::unit());
        let u = BcElem::mu_tilde(2)
            .mul(&BcElem::inject(IntElem::one()))
            .mul(&BcElem::mu_star(2));
        assert_eq!(
            rationalize(&u),
            RationalBcElem::inject(int_elem(&[(1, 0, 1), (1, 1, 2)]).to_rational())
        );
    }

    #[test]
    fn rational_crossed_product_relations() {
        for n in 1..=10u64 {
            assert_eq!(
                RationalBcElem::mu_star(n).mul(&RationalBcElem::mu(n)),
                RationalBcElem::unit(),
                "mu*_n mu_n = 1 at n = {n}"
            );
        }
        let x = int_elem(&[(2, 1, 3), (1, 0, 1)]).to_rational();
        for n in 1..=8u64 {
            let lhs = RationalBcElem::mu(n)
                .mul(&RationalBcElem::inject(x.clone()))
                .mul(&RationalBcElem::mu_star(n));
            assert_eq!(lhs, RationalBcElem::inject(x.rho(n)), "n = {n}");
        }
    }
}
