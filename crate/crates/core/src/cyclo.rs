//! Integer polynomials and cyclotomic factorization.
//!
//! `cyclotomic_factorize` decides constructively whether a polynomial is — up
//! to a power of `t` and a sign — a product of cyclotomics. By Kronecker's
//! theorem a monic integer polynomial has all roots on the unit circle iff it
//! is such a product, so bounded trial division against every `Phi_d` with
//! `phi(d) <= deg` is a complete decision procedure; no general factorization
//! is needed.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{divisors, euler_phi};
use crate::error::Error;

/// A dense integer polynomial, constant term first, leading coefficient
/// nonzero. The zero polynomial is the empty coefficient list.
#[derive(Clone, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> IntPoly {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> IntPoly {
        IntPoly {
            coeffs: vec![BigInt::one()],
        }
    }

    /// Builds a polynomial from coefficients, constant term first, trimming
    /// leading zeros.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> IntPoly {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `t^n - 1`.
    pub fn t_pow_minus_one(n: usize) -> IntPoly {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = -BigInt::one();
        coeffs[n] = BigInt::one();
        IntPoly::from_coeffs(coeffs)
    }

    /// `t^k`.
    pub fn monomial(k: usize) -> IntPoly {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        IntPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// True for the constants `1` and `-1`.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].abs().is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        IntPoly::from_coeffs(coeffs)
    }

    pub fn sub(&self, rhs: &IntPoly) -> IntPoly {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(coeffs)
    }

    pub fn pow(&self, mut e: u32) -> IntPoly {
        let mut base = self.clone();
        let mut acc = IntPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact division: returns `Some(q)` with `self = q * divisor`, or `None`
    /// if the division leaves a remainder at any step.
    pub fn exact_div(&self, divisor: &IntPoly) -> Option<IntPoly> {
        assert!(!divisor.is_zero(), "exact_div: division by zero polynomial");
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let dd = divisor.degree().unwrap();
        let nd = self.degree().unwrap();
        if nd < dd {
            return None;
        }
        let lead = divisor.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for k in (0..quot.len()).rev() {
            let top = core::mem::take(&mut rem[k + dd]);
            if top.is_zero() {
                continue;
            }
            let (q, r) = num_integer::Integer::div_rem(&top, lead);
            if !r.is_zero() {
                return None;
            }
            for (j, b) in divisor.coeffs.iter().take(dd).enumerate() {
                rem[k + j] -= &q * b;
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPoly::from_coeffs(quot))
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            if k == 0 {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                if k == 1 {
                    write!(f, "t")?;
                } else {
                    write!(f, "t^{k}")?;
                }
            }
        }
        Ok(())
    }
}

/// The `d`-th cyclotomic polynomial `Phi_d`, monic of degree `phi(d)`,
/// computed by exact division of `t^d - 1` by the `Phi_e` for proper
/// divisors `e` of `d`.
pub fn cyclotomic_poly(d: u64) -> IntPoly {
    assert!(d >= 1, "cyclotomic_poly: d must be positive");
    let mut p = IntPoly::t_pow_minus_one(d as usize);
    for e in divisors(d) {
        if e == d {
            continue;
        }
        p = p
            .exact_div(&cyclotomic_poly(e))
            .expect("Phi_e divides t^d - 1 for e | d");
    }
    p
}

/// The result of extracting the maximal power of `t` and all cyclotomic
/// factors from a polynomial: `t^zero_mult * prod Phi_d^mult * remainder`
/// reproduces the input exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloFactorization {
    /// Multiplicity of the factor `t` (a zero eigenvalue of the source map).
    pub zero_mult: u32,
    /// Multiplicity of each `Phi_d` that divides the input.
    pub cyclo: BTreeMap<u64, u32>,
    /// The non-cyclotomic part; a unit iff the input was a product of
    /// `t`-powers and cyclotomics up to sign.
    pub remainder: IntPoly,
}

impl CycloFactorization {
    /// True when the input splits completely into `t`-powers and cyclotomics:
    /// the corresponding endomorphism is quasi-idempotent (eigenvalues zero
    /// or roots of unity).
    pub fn is_quasi_idempotent(&self) -> bool {
        self.remainder.is_unit()
    }

    /// Quasi-unipotent additionally forbids zero eigenvalues.
    pub fn is_quasi_unipotent(&self) -> bool {
        self.is_quasi_idempotent() && self.zero_mult == 0
    }

    /// Re-multiplies the factorization; equals the input polynomial.
    pub fn reassemble(&self) -> IntPoly {
        let mut p = IntPoly::monomial(self.zero_mult as usize);
        for (&d, &m) in &self.cyclo {
            p = p.mul(&cyclotomic_poly(d).pow(m));
        }
        p.mul(&self.remainder)
    }
}

/// Extracts the maximal power of `t`, then trial-divides by every `Phi_d`
/// with `phi(d) <= deg` — a finite set since `phi(d) >= sqrt(d/2)`.
pub fn cyclotomic_factorize(p: &IntPoly) -> Result<CycloFactorization, Error> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let zero_mult = p.coeffs.iter().take_while(|c| c.is_zero()).count();
    let mut rem = IntPoly::from_coeffs(p.coeffs[zero_mult..].to_vec());
    let mut cyclo = BTreeMap::new();
    let mut d = 1u64;
    loop {
        let deg = rem.degree().unwrap() as u64;
        if deg == 0 || d > 2 * deg * deg {
            break;
        }
        if euler_phi(d) <= deg {
            let phi = cyclotomic_poly(d);
            while let Some(q) = rem.exact_div(&phi) {
                *cyclo.entry(d).or_insert(0) += 1;
                rem = q;
                if rem.degree() == Some(0) {
                    break;
                }
            }
        }
        d += 1;
    }
    let fac = CycloFactorization {
        zero_mult: zero_mult as u32,
        cyclo,
        remainder: rem,
    };
    debug_assert_eq!(&fac.reassemble(), p);
    Ok(fac)
}
