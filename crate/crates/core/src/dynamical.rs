//! Dynamical structures: pairs of a space and a map, represented by the
//! induced integer matrices on homology, one block per degree.
//!
//! The eigenvalue spectrum of a quasi-unipotent endomorphism consists of
//! roots of unity; recording them with multiplicity gives an element of
//! `Z[Q/Z]`, the spectrum Euler characteristic. It is computed symbolically
//! through cyclotomic factorization of the characteristic polynomials,
//! never through floating-point eigenvalues. Disjoint union is the
//! degreewise direct sum, the Cartesian product is the Kuenneth tensor rule,
//! `sigma_n` replaces the map by its `n`-th power, and `rho_tilde_n` is the
//! block-companion Verschiebung.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::cyclo::{cyclotomic_factorize, CycloFactorization};
use crate::error::Error;
use crate::group_ring::IntElem;
use crate::matrix::{cyclic_permutation, IntMatrix};
use crate::qz::QZ;

/// A graded integer endomorphism: the action on homology modulo torsion,
/// one square block per degree. Degrees are distinct and blocks of size 0
/// are dropped.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedEndo {
    blocks: Vec<(u32, IntMatrix)>,
}

impl GradedEndo {
    /// The class of the empty space.
    pub fn empty() -> GradedEndo {
        GradedEndo { blocks: Vec::new() }
    }

    /// The one-point space with the identity map: the ring unit.
    pub fn point() -> GradedEndo {
        GradedEndo::single(0, IntMatrix::identity(1))
    }

    /// The cyclic permutation pair: `n` points rotated by the map.
    pub fn cyclic_pair(n: usize) -> GradedEndo {
        GradedEndo::single(0, cyclic_permutation(n))
    }

    pub fn single(degree: u32, m: IntMatrix) -> GradedEndo {
        GradedEndo::new([(degree, m)]).expect("single degree cannot repeat")
    }

    pub fn new(blocks: impl IntoIterator<Item = (u32, IntMatrix)>) -> Result<GradedEndo, Error> {
        let mut map: BTreeMap<u32, IntMatrix> = BTreeMap::new();
        for (k, m) in blocks {
            if m.size() == 0 {
                continue;
            }
            if map.insert(k, m).is_some() {
                return Err(Error::DuplicateDegree(k));
            }
        }
        Ok(GradedEndo {
            blocks: map.into_iter().collect(),
        })
    }

    /// Blocks in increasing degree order.
    pub fn blocks(&self) -> &[(u32, IntMatrix)] {
        &self.blocks
    }

    /// Factorizes every characteristic polynomial; the pair passes when each
    /// remainder is a unit, with zero eigenvalues permitted only when
    /// `allow_zero` is set (the quasi-idempotent rather than quasi-unipotent
    /// condition).
    pub fn quasi_unipotent_check(&self, allow_zero: bool) -> QuasiUnipotentCheck {
        let certificates: Vec<(u32, CycloFactorization)> = self
            .blocks
            .iter()
            .map(|(k, m)| {
                (
                    *k,
                    cyclotomic_factorize(&m.char_poly())
                        .expect("characteristic polynomials are monic, hence nonzero"),
                )
            })
            .collect();
        let passed = certificates.iter().all(|(_, fac)| {
            if allow_zero {
                fac.is_quasi_idempotent()
            } else {
                fac.is_quasi_unipotent()
            }
        });
        QuasiUnipotentCheck {
            passed,
            allow_zero,
            certificates,
        }
    }

    /// The spectrum Euler characteristic: for each degree, each eigenvalue
    /// `zeta_{j/d}` (with multiplicity) contributes `e(j/d)`; degrees are
    /// combined with weight `(-1)^k` when `signed`, weight 1 otherwise.
    /// Requires the strict quasi-unipotent condition.
    pub fn spectrum_euler(&self, signed: bool) -> Result<IntElem, Error> {
        let check = self.quasi_unipotent_check(false);
        let mut out = IntElem::zero();
        for (k, fac) in &check.certificates {
            if !fac.is_quasi_unipotent() {
                return Err(Error::NotQuasiUnipotent(*k));
            }
            let weight = if signed && k % 2 == 1 {
                BigInt::from(-1)
            } else {
                BigInt::one()
            };
            for (&d, &mult) in &fac.cyclo {
                let w = &weight * BigInt::from(mult);
                for j in 0..d {
                    if num_integer::gcd(j, d) == 1 {
                        let r = QZ::new(j as i64, d as i64).expect("d >= 1");
                        out = out.add(&IntElem::basis(r).scale(&w));
                    }
                }
            }
        }
        Ok(out)
    }

    /// `sigma_n`: the same space with the `n`-th power of the map.
    pub fn sigma_n(&self, n: u64) -> GradedEndo {
        assert!(n >= 1, "sigma_n: n must be positive");
        GradedEndo {
            blocks: self.blocks.iter().map(|(k, m)| (*k, m.pow(n))).collect(),
        }
    }

    /// `rho_tilde_n`: the Verschiebung block-companion construction. Each
    /// block of size `s` becomes the `ns x ns` matrix cyclically shifting
    /// `n` copies, with the original block applied on the wrap-around.
    pub fn rho_tilde_n(&self, n: u64) -> GradedEndo {
        assert!(n >= 1, "rho_tilde_n: n must be positive");
        let n = n as usize;
        GradedEndo {
            blocks: self
                .blocks
                .iter()
                .map(|(k, m)| (*k, verschiebung_block(m, n)))
                .collect(),
        }
    }

    /// Degreewise block-diagonal direct sum.
    pub fn disjoint_union(&self, rhs: &GradedEndo) -> GradedEndo {
        let mut map: BTreeMap<u32, IntMatrix> = self.blocks.iter().cloned().collect();
        for (k, m) in &rhs.blocks {
            match map.entry(*k) {
                alloc::collections::btree_map::Entry::Vacant(v) => {
                    v.insert(m.clone());
                }
                alloc::collections::btree_map::Entry::Occupied(mut o) => {
                    let s = o.get().direct_sum(m);
                    *o.get_mut() = s;
                }
            }
        }
        GradedEndo {
            blocks: map.into_iter().collect(),
        }
    }

    /// Kuenneth product: the degree-`m` block is the direct sum over
    /// `k + l = m` of the tensor products of the degree-`k` and degree-`l`
    /// blocks.
    pub fn product(&self, rhs: &GradedEndo) -> GradedEndo {
        let mut map: BTreeMap<u32, IntMatrix> = BTreeMap::new();
        for (k, a) in &self.blocks {
            for (l, b) in &rhs.blocks {
                let t = a.kron(b);
                match map.entry(k + l) {
                    alloc::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(t);
                    }
                    alloc::collections::btree_map::Entry::Occupied(mut o) => {
                        let s = o.get().direct_sum(&t);
                        *o.get_mut() = s;
                    }
                }
            }
        }
        GradedEndo {
            blocks: map.into_iter().collect(),
        }
    }
}

/// The result of a quasi-unipotence test, with the per-degree cyclotomic
/// factorizations as certificate.
#[derive(Clone, Debug)]
pub struct QuasiUnipotentCheck {
    pub passed: bool,
    pub allow_zero: bool,
    pub certificates: Vec<(u32, CycloFactorization)>,
}

/// The matrix of the Verschiebung on `H^{(+n)}`: block `(j, j-1)` is the
/// identity and block `(0, n-1)` is `m`.
fn verschiebung_block(m: &IntMatrix, n: usize) -> IntMatrix {
    let s = m.size();
    let mut out = IntMatrix::zeros(n * s);
    for j in 1..n {
        for t in 0..s {
            out.set(j * s + t, (j - 1) * s + t, BigInt::one());
        }
    }
    for t in 0..s {
        for u in 0..s {
            let v = m.get(t, u).clone();
            out.set(t, (n - 1) * s + u, v);
        }
    }
    out
}
