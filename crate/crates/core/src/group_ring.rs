//! The group rings `Z[Q/Z]` and `Q[Q/Z]` with the Bost-Connes maps.
//!
//! An element is a finite sparse combination of basis symbols `e(r)`,
//! `r` in `Q/Z`, with `e(r) * e(r') = e(r + r')` and unit `e(0)`. The
//! coefficient mode — exact integers or exact rationals — is a type
//! parameter rather than a runtime flag, so the integrality-sensitive
//! operations (`in_fixed_subring`, the Bost-Connes normal form) can demand
//! integer coefficients at compile time. The divided maps `rho_n` and the
//! idempotents `pi_n` exist only on the rational ring.

use alloc::collections::BTreeMap;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::divisors;
use crate::qz::{division_points, QZ};

/// Exact coefficient rings for the group ring: `BigInt` or `BigRational`.
/// `Zero`/`One` come from `num_traits`; the reference-based arithmetic here
/// avoids cloning in the sparse inner loops.
pub trait Coeff: Clone + PartialEq + fmt::Debug + Zero + One {
    fn add_refs(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn mul_refs(&self, rhs: &Self) -> Self;
    fn from_int(n: i64) -> Self;
    /// Closest double, used only by the numeric expectation layer.
    fn to_f64(&self) -> f64;
}

impl Coeff for BigInt {
    fn add_refs(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn mul_refs(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn from_int(n: i64) -> Self {
        BigInt::from(n)
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

impl Coeff for BigRational {
    fn add_refs(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn mul_refs(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

/// A finite sparse combination of basis symbols `e(r)`; no stored
/// coefficient is zero and the support is kept in the canonical basis order.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupRingElem<C: Coeff> {
    terms: BTreeMap<QZ, C>,
}

/// `Z[Q/Z]`.
pub type IntElem = GroupRingElem<BigInt>;
/// `Q[Q/Z]`.
pub type RatElem = GroupRingElem<BigRational>;

impl<C: Coeff> GroupRingElem<C> {
    pub fn zero() -> Self {
        GroupRingElem {
            terms: BTreeMap::new(),
        }
    }

    /// The unit `e(0)`.
    pub fn one() -> Self {
        Self::basis(QZ::ZERO)
    }

    /// The basis element `e(r)`.
    pub fn basis(r: QZ) -> Self {
        Self::from_terms([(r, C::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (QZ, C)>) -> Self {
        let mut e = Self::zero();
        for (r, c) in terms {
            e.insert_add(r, c);
        }
        e
    }

    fn insert_add(&mut self, r: QZ, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(r) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add_refs(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical basis order (by order of the root, then numerator).
    pub fn terms(&self) -> impl Iterator<Item = (&QZ, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, r: &QZ) -> C {
        self.terms.get(r).cloned().unwrap_or_else(C::zero)
    }

    /// The lcm of the denominators in the support (1 for the zero element):
    /// the finite level through which the element factors.
    pub fn level(&self) -> u64 {
        self.terms
            .keys()
            .fold(1u64, |l, r| num_integer::lcm(l, r.order()))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (r, c) in &rhs.terms {
            out.insert_add(*r, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        GroupRingElem {
            terms: self.terms.iter().map(|(r, c)| (*r, c.neg_ref())).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_terms(self.terms.iter().map(|(r, v)| (*r, v.mul_refs(c))))
    }

    /// Convolution product: bilinear extension of `e(r) e(r') = e(r + r')`.
    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (r, c) in &self.terms {
            for (s, d) in &rhs.terms {
                out.insert_add(*r + *s, c.mul_refs(d));
            }
        }
        out
    }

    /// The ring endomorphism `sigma_n`: linear extension of `e(r) -> e(nr)`.
    pub fn sigma(&self, n: u64) -> Self {
        assert!(n >= 1, "sigma: n must be positive");
        Self::from_terms(self.terms.iter().map(|(r, c)| (r.mul_nat(n), c.clone())))
    }

    /// The additive map `rho_tilde_n`: linear extension of
    /// `e(r) -> sum over the n preimages r' with n r' = r of e(r')`.
    /// Additive but not multiplicative.
    pub fn rho_tilde(&self, n: u64) -> Self {
        assert!(n >= 1, "rho_tilde: n must be positive");
        let mut out = Self::zero();
        for (r, c) in &self.terms {
            for p in r.preimages(n) {
                out.insert_add(p, c.clone());
            }
        }
        out
    }

    /// The sum of all `e(s)` with `d s = 0`: the image of `[Z/d]` under the
    /// equivariant Euler characteristic, equal to `d * pi_d` rationally.
    pub fn division_sum(d: u64) -> Self {
        Self::from_terms(division_points(d).into_iter().map(|r| (r, C::one())))
    }
}

impl IntElem {
    pub fn to_rational(&self) -> RatElem {
        RatElem::from_terms(
            self.terms
                .iter()
                .map(|(r, c)| (*r, BigRational::from_integer(c.clone()))),
        )
    }

    /// Membership test for the subring of `Z[Q/Z]` spanned by the elements
    /// `n pi_n = sum over ns = 0 of e(s)` — the image of the equivariant
    /// Euler characteristic over `Q`. On success returns the expansion
    /// coefficients `a_d` (zero entries omitted).
    ///
    /// The span consists exactly of the elements whose coefficient at `e(r)`
    /// depends only on `order(r)`, and the triangular system
    /// `c(m) = sum over m | d, d | N of a_d` is then solvable top-down over
    /// the divisors of the level `N`.
    pub fn in_fixed_subring(&self) -> Option<BTreeMap<u64, BigInt>> {
        let level = self.level();
        let divs = divisors(level);
        let mut by_order: BTreeMap<u64, BigInt> = BTreeMap::new();
        for &d in &divs {
            let mut value: Option<BigInt> = None;
            for k in 0..d {
                if num_integer::gcd(k, d) != 1 {
                    continue;
                }
                let c = self.coeff(&QZ::new(k as i64, d as i64).unwrap());
                match &value {
                    None => value = Some(c),
                    Some(v) if *v == c => {}
                    Some(_) => return None,
                }
            }
            by_order.insert(d, value.expect("every d >= 1 has a primitive residue"));
        }
        let mut coeffs: BTreeMap<u64, BigInt> = BTreeMap::new();
        for &d in divs.iter().rev() {
            let mut a = by_order[&d].clone();
            for (&e, b) in &coeffs {
                if e % d == 0 {
                    a -= b;
                }
            }
            if !Zero::is_zero(&a) {
                coeffs.insert(d, a);
            }
        }
        debug_assert_eq!(
            coeffs.iter().fold(IntElem::zero(), |acc, (&d, a)| acc
                .add(&IntElem::division_sum(d).scale(a))),
            *self
        );
        Some(coeffs)
    }
}

impl RatElem {
    pub fn from_int_elem(x: &IntElem) -> RatElem {
        x.to_rational()
    }

    /// The divided map `rho_n = rho_tilde_n / n`, a homomorphism onto the
    /// corner `pi_n Q[Q/Z]` with `sigma_n(rho_n(x)) = x`.
    pub fn rho(&self, n: u64) -> RatElem {
        assert!(n >= 1, "rho: n must be positive");
        let inv_n = BigRational::new(<BigInt as One>::one(), BigInt::from(n));
        self.rho_tilde(n).scale(&inv_n)
    }

    /// The idempotent `pi_n = n^{-1} sum over ns = 0 of e(s)`.
    pub fn pi(n: u64) -> RatElem {
        assert!(n >= 1, "pi: n must be positive");
        let inv_n = BigRational::new(<BigInt as One>::one(), BigInt::from(n));
        RatElem::division_sum(n).scale(&inv_n)
    }
}

impl<C: Coeff> fmt::Debug for GroupRingElem<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (r, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c:?}*e({r})")?;
        }
        Ok(())
    }
}

impl<C: Coeff> core::ops::Add for &GroupRingElem<C> {
    type Output = GroupRingElem<C>;
    fn add(self, rhs: Self) -> GroupRingElem<C> {
        GroupRingElem::add(self, rhs)
    }
}

impl<C: Coeff> core::ops::Sub for &GroupRingElem<C> {
    type Output = GroupRingElem<C>;
    fn sub(self, rhs: Self) -> GroupRingElem<C> {
        GroupRingElem::sub(self, rhs)
    }
}

impl<C: Coeff> core::ops::Mul for &GroupRingElem<C> {
    type Output = GroupRingElem<C>;
    fn mul(self, rhs: Self) -> GroupRingElem<C> {
        GroupRingElem::mul(self, rhs)
    }
}

impl<C: Coeff> core::ops::Neg for &GroupRingElem<C> {
    type Output = GroupRingElem<C>;
    fn neg(self) -> GroupRingElem<C> {
        GroupRingElem::neg(self)
    }
}

/// Convenience constructor for tests and callers: the integer element
/// `sum c_i e(num_i/den_i)`.
pub fn int_elem(terms: &[(i64, i64, i64)]) -> IntElem {
    IntElem::from_terms(
        terms
            .iter()
            .map(|&(c, num, den)| (QZ::new(num, den).unwrap(), BigInt::from(c))),
    )
}
