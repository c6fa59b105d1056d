//! Dense square integer matrices, sized for homology data of desk-scale
//! examples. Coefficients are arbitrary-precision: characteristic
//! polynomials of moderate matrices overflow fixed-width words.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::cyclo::IntPoly;

/// A square integer matrix in row-major order.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> IntMatrix {
        IntMatrix {
            n,
            data: vec![BigInt::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> IntMatrix {
        let n = rows.len();
        let mut m = IntMatrix::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "matrix must be square");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(v));
            }
        }
        m
    }

    pub fn from_bigint_rows(rows: Vec<Vec<BigInt>>) -> IntMatrix {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            assert_eq!(row.len(), n, "matrix must be square");
            data.extend(row);
        }
        IntMatrix { n, data }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.n + j] = v;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[BigInt]> {
        self.data.chunks(self.n.max(1))
    }

    pub fn trace(&self) -> BigInt {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, rhs.n, "size mismatch in matrix product");
        let n = self.n;
        let mut out = IntMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    out.data[i * n + j] += a * b;
                }
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> IntMatrix {
        let mut base = self.clone();
        let mut acc = IntMatrix::identity(self.n);
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

    /// Kronecker (tensor) product; block `(i, j)` is `self[i][j] * rhs`.
    pub fn kron(&self, rhs: &IntMatrix) -> IntMatrix {
        let (n, m) = (self.n, rhs.n);
        let mut out = IntMatrix::zeros(n * m);
        for i in 0..n {
            for j in 0..n {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..m {
                    for l in 0..m {
                        let b = rhs.get(k, l);
                        if !b.is_zero() {
                            out.set(i * m + k, j * m + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(&self, rhs: &IntMatrix) -> IntMatrix {
        let (n, m) = (self.n, rhs.n);
        let mut out = IntMatrix::zeros(n + m);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..m {
            for j in 0..m {
                out.set(n + i, n + j, rhs.get(i, j).clone());
            }
        }
        out
    }

    fn plus_scalar_diag(&self, c: &BigInt) -> IntMatrix {
        let mut out = self.clone();
        for i in 0..self.n {
            let v = out.get(i, i) + c;
            out.set(i, i, v);
        }
        out
    }

    /// The characteristic polynomial `det(t I - M)`, monic, computed exactly
    /// by the Faddeev-LeVerrier recurrence (whose scalar divisions are exact
    /// over `Z`).
    pub fn char_poly(&self) -> IntPoly {
        let n = self.n;
        // descending coefficients c_0 = 1, c_1, ..., c_n
        let mut desc = vec![BigInt::one()];
        let mut m = IntMatrix::zeros(n);
        for k in 1..=n {
            m = self.mul(&m.plus_scalar_diag(&desc[k - 1]));
            let (c, r) = (-m.trace()).div_rem(&BigInt::from(k as u64));
            debug_assert!(r.is_zero(), "Faddeev-LeVerrier division must be exact");
            desc.push(c);
        }
        desc.reverse();
        IntPoly::from_coeffs(desc)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.n {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

/// The companion matrix of a monic polynomial, or `None` if the polynomial
/// is not monic of degree at least 1.
pub fn companion(p: &IntPoly) -> Option<IntMatrix> {
    if !p.is_monic() || p.degree() == Some(0) {
        return None;
    }
    let n = p.degree()?;
    let mut m = IntMatrix::zeros(n);
    for i in 1..n {
        m.set(i, i - 1, BigInt::one());
    }
    for i in 0..n {
        m.set(i, n - 1, -p.coeff(i));
    }
    Some(m)
}

/// The permutation matrix of the cyclic shift on `n` points.
pub fn cyclic_permutation(n: usize) -> IntMatrix {
    assert!(n >= 1);
    let mut m = IntMatrix::zeros(n);
    for i in 0..n {
        m.set((i + 1) % n, i, BigInt::one());
    }
    m
}
