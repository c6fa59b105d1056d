//! pi_0-level scissor congruence: K_0 of a finitely presented assembler.
//!
//! A presentation lists objects and finite disjoint covering families; K_0 is
//! the free abelian group on the objects modulo one relation
//! `[A] = sum [A_i]` per family. The quotient is computed by a sparse
//! unit-pivot elimination (each eliminated column records how its generator
//! rewrites into the others) followed by a dense Smith normal form of the
//! small remaining core, so presentations with tens of thousands of families
//! stay cheap. Coordinates of the computed group are listed torsion-first,
//! then free.

use alloc::borrow::ToOwned;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::divisors;
use crate::error::Error;
use crate::snf;

/// One finite disjoint covering family: the target is covered by the parts
/// (with list semantics, so a repeated part label means multiplicity).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoveringFamily {
    pub target: String,
    pub parts: Vec<String>,
}

/// A finite presentation of an assembler: object labels plus covering
/// families, the only data that survives to pi_0.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AssemblerPresentation {
    pub objects: Vec<String>,
    pub families: Vec<CoveringFamily>,
}

impl AssemblerPresentation {
    pub fn new(
        objects: Vec<String>,
        families: Vec<CoveringFamily>,
    ) -> Result<AssemblerPresentation, Error> {
        let mut seen = BTreeSet::new();
        for o in &objects {
            if !seen.insert(o.clone()) {
                return Err(Error::DuplicateObject(o.clone()));
            }
        }
        for f in &families {
            if !seen.contains(&f.target) {
                return Err(Error::UnknownObject(f.target.clone()));
            }
            for p in &f.parts {
                if !seen.contains(p) {
                    return Err(Error::UnknownObject(p.clone()));
                }
            }
        }
        Ok(AssemblerPresentation { objects, families })
    }
}

/// A formal Z-combination of objects assigned to each source object: the
/// effect of an endofunctor on generators.
pub type ObjectImages = BTreeMap<String, Vec<(String, BigInt)>>;

/// The computed group `K_0 = Z^objects / relations`, isomorphic to
/// `Z/d_1 x ... x Z/d_t x Z^rank`; coordinates are listed torsion-first.
pub struct K0Group {
    labels: Vec<String>,
    index: BTreeMap<String, usize>,
    families: Vec<CoveringFamily>,
    pub rank: usize,
    /// Invariant factors greater than 1, in divisibility order.
    pub torsion: Vec<BigInt>,
    /// Per object, its class in coordinates (torsion entries reduced).
    classes: Vec<Vec<BigInt>>,
    /// Per coordinate, a representative as a sparse object combination.
    reps: Vec<BTreeMap<usize, BigInt>>,
}

impl K0Group {
    pub fn from_presentation(p: &AssemblerPresentation) -> Result<K0Group, Error> {
        let p = AssemblerPresentation::new(p.objects.clone(), p.families.clone())?;
        let n = p.objects.len();
        let index: BTreeMap<String, usize> = p
            .objects
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();

        // sparse relation rows [target] - sum [parts]
        let mut rows: Vec<BTreeMap<usize, BigInt>> = Vec::new();
        for f in &p.families {
            let mut row: BTreeMap<usize, BigInt> = BTreeMap::new();
            add_to(&mut row, index[&f.target], BigInt::one());
            for part in &f.parts {
                add_to(&mut row, index[part], -BigInt::one());
            }
            if !row.is_empty() {
                rows.push(row);
            }
        }

        // column -> rows with a nonzero entry there
        let mut occ: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for (r, row) in rows.iter().enumerate() {
            for &c in row.keys() {
                occ[c].insert(r);
            }
        }
        let mut alive: Vec<bool> = vec![true; rows.len()];
        let mut eliminated: Vec<bool> = vec![false; n];
        // (column, its rewrite into not-yet-eliminated columns)
        let mut subs: Vec<(usize, BTreeMap<usize, BigInt>)> = Vec::new();

        // one descending pass; columns without a unit entry go to the core
        for col in (0..n).rev() {
            let pivot_row = occ[col]
                .iter()
                .copied()
                .find(|&r| alive[r] && rows[r].get(&col).is_some_and(|v| v.abs().is_one()));
            let Some(pr) = pivot_row else { continue };
            let pivot = core::mem::take(&mut rows[pr]);
            alive[pr] = false;
            let sign = pivot[&col].clone(); // +-1
            for &c in pivot.keys() {
                occ[c].remove(&pr);
            }
            let touched: Vec<usize> = occ[col].iter().copied().filter(|&r| alive[r]).collect();
            for r in touched {
                let factor = rows[r][&col].clone() * &sign; // coefficient / sign
                for (&c, v) in &pivot {
                    let before = rows[r].contains_key(&c);
                    add_to(&mut rows[r], c, -&factor * v);
                    let after = rows[r].contains_key(&c);
                    if before && !after {
                        occ[c].remove(&r);
                    } else if !before && after {
                        occ[c].insert(r);
                    }
                }
                debug_assert!(!rows[r].contains_key(&col));
                if rows[r].is_empty() {
                    alive[r] = false;
                }
            }
            // sign * e_col + sum a_j e_j = 0  =>  e_col = -sign * sum a_j e_j
            let expr: BTreeMap<usize, BigInt> = pivot
                .iter()
                .filter(|(&c, _)| c != col)
                .map(|(&c, v)| (c, -&sign * v))
                .collect();
            eliminated[col] = true;
            subs.push((col, expr));
        }

        // dense core on the surviving rows and columns
        let core_cols: Vec<usize> = (0..n).filter(|&c| !eliminated[c]).collect();
        let col_pos: BTreeMap<usize, usize> =
            core_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let core_rows: Vec<&BTreeMap<usize, BigInt>> = rows
            .iter()
            .enumerate()
            .filter(|(r, row)| alive[*r] && !row.is_empty())
            .map(|(_, row)| row)
            .collect();
        let mat: snf::Mat = core_rows
            .iter()
            .map(|row| {
                let mut dense = vec![BigInt::zero(); core_cols.len()];
                for (&c, v) in row.iter() {
                    dense[col_pos[&c]] = v.clone();
                }
                dense
            })
            .collect();
        let m = core_cols.len();
        let dec = if mat.is_empty() {
            // no relations left: the core is free on its columns
            snf::Smith {
                diag: Vec::new(),
                u: Vec::new(),
                v: snf::identity(m),
                v_inv: snf::identity(m),
            }
        } else {
            snf::smith(&mat)
        };

        // kept coordinates: torsion first (d > 1), then free (d = 0 / absent)
        let nonzero = dec.diag.iter().filter(|d| !d.is_zero()).count();
        let torsion_idx: Vec<usize> = (0..nonzero).filter(|&i| !dec.diag[i].is_one()).collect();
        let free_idx: Vec<usize> = (nonzero..m).collect();
        let torsion: Vec<BigInt> = torsion_idx.iter().map(|&i| dec.diag[i].clone()).collect();
        let rank = free_idx.len();
        let kept: Vec<usize> = torsion_idx.iter().chain(free_idx.iter()).copied().collect();
        let dims = kept.len();

        // class of a core column = its row of V, restricted to kept coords
        let mut class_by_col: BTreeMap<usize, Vec<BigInt>> = BTreeMap::new();
        for (i, &c) in core_cols.iter().enumerate() {
            let coords = kept.iter().map(|&j| dec.v[i][j].clone()).collect();
            class_by_col.insert(c, coords);
        }
        // back-substitute eliminated columns, most recently eliminated first
        for (col, expr) in subs.iter().rev() {
            let mut coords = vec![BigInt::zero(); dims];
            for (c, w) in expr {
                let base = &class_by_col[c];
                for (x, y) in coords.iter_mut().zip(base.iter()) {
                    *x += w * y;
                }
            }
            class_by_col.insert(*col, coords);
        }

        let mut classes: Vec<Vec<BigInt>> = (0..n)
            .map(|c| class_by_col.remove(&c).expect("every column classified"))
            .collect();
        for coords in classes.iter_mut() {
            reduce_torsion(coords, &torsion);
        }

        // representative of kept coordinate j: row j of V^{-1} over core cols
        let reps: Vec<BTreeMap<usize, BigInt>> = kept
            .iter()
            .map(|&j| {
                dec.v_inv[j]
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(i, v)| (core_cols[i], v.clone()))
                    .collect()
            })
            .collect();

        Ok(K0Group {
            labels: p.objects,
            index,
            families: p.families,
            rank,
            torsion,
            classes,
            reps,
        })
    }

    /// Number of stored coordinates: torsion count plus rank.
    pub fn dims(&self) -> usize {
        self.torsion.len() + self.rank
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// The class of a single object.
    pub fn class_of_label(&self, label: &str) -> Result<&[BigInt], Error> {
        let i = self
            .index
            .get(label)
            .ok_or_else(|| Error::UnknownObject(label.to_owned()))?;
        Ok(&self.classes[*i])
    }

    /// The class of a formal combination of objects.
    pub fn class_of(&self, combo: &[(String, BigInt)]) -> Result<Vec<BigInt>, Error> {
        let mut coords = vec![BigInt::zero(); self.dims()];
        for (label, w) in combo {
            let base = self.class_of_label(label)?;
            for (x, y) in coords.iter_mut().zip(base.iter()) {
                *x += w * y;
            }
        }
        reduce_torsion(&mut coords, &self.torsion);
        Ok(coords)
    }

    /// Whether the combination lies in the relation lattice, i.e. maps to 0.
    pub fn is_relation(&self, combo: &[(String, BigInt)]) -> Result<bool, Error> {
        Ok(self.class_of(combo)?.iter().all(Zero::is_zero))
    }

    /// Object label -> class vector, for serialization.
    pub fn basis_map(&self) -> impl Iterator<Item = (&String, &[BigInt])> {
        self.labels
            .iter()
            .zip(self.classes.iter().map(Vec::as_slice))
    }
}

fn add_to(row: &mut BTreeMap<usize, BigInt>, c: usize, v: BigInt) {
    if v.is_zero() {
        return;
    }
    let entry = row.entry(c).or_insert_with(BigInt::zero);
    *entry += v;
    if entry.is_zero() {
        row.remove(&c);
    }
}

fn reduce_torsion(coords: &mut [BigInt], torsion: &[BigInt]) {
    for (x, d) in coords.iter_mut().zip(torsion.iter()) {
        *x = x.mod_floor(d);
    }
}

/// The matrix of the homomorphism induced on pi_0 by a functor given through
/// its effect on generators. Every covering family of the source must map to
/// a relation of the target (checked via the computed groups); the matrix
/// sends source coordinates to target coordinates, one column per source
/// coordinate.
pub fn induced_k0_map(
    src: &K0Group,
    dst: &K0Group,
    images: &ObjectImages,
) -> Result<Vec<Vec<BigInt>>, Error> {
    let image_of = |label: &String| -> Result<&Vec<(String, BigInt)>, Error> {
        images
            .get(label)
            .ok_or_else(|| Error::MissingImage(label.clone()))
    };
    // relation check: [F target] - sum [F parts] must vanish in dst
    for f in &src.families {
        let mut combo: Vec<(String, BigInt)> = Vec::new();
        for (l, w) in image_of(&f.target)? {
            combo.push((l.clone(), w.clone()));
        }
        for part in &f.parts {
            for (l, w) in image_of(part)? {
                combo.push((l.clone(), -w));
            }
        }
        if !dst.is_relation(&combo)? {
            return Err(Error::RelationViolation(f.target.clone()));
        }
    }
    // column j = class in dst of the image of the j-th source representative
    let mut columns: Vec<Vec<BigInt>> = Vec::with_capacity(src.dims());
    for rep in &src.reps {
        let mut combo: Vec<(String, BigInt)> = Vec::new();
        for (&obj, w) in rep {
            for (l, v) in image_of(&src.labels[obj])? {
                combo.push((l.clone(), w * v));
            }
        }
        columns.push(dst.class_of(&combo)?);
    }
    let rows = dst.dims();
    Ok((0..rows)
        .map(|i| columns.iter().map(|col| col[i].clone()).collect())
        .collect())
}

/// Canonical label of an orbit multiset, e.g. `Z/1+Z/1+Z/3`.
pub fn orbit_label(multiset: &BTreeMap<u64, u64>) -> String {
    let mut parts: Vec<String> = Vec::new();
    for (&d, &m) in multiset {
        for _ in 0..m {
            parts.push(format!("Z/{d}"));
        }
    }
    parts.join("+")
}

/// Parses a label produced by [`orbit_label`].
pub fn parse_orbit_label(label: &str) -> Result<BTreeMap<u64, u64>, Error> {
    let mut out: BTreeMap<u64, u64> = BTreeMap::new();
    for part in label.split('+') {
        let d = part
            .strip_prefix("Z/")
            .and_then(|s| s.parse::<u64>().ok())
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::UnknownObject(label.to_owned()))?;
        *out.entry(d).or_insert(0) += 1;
    }
    Ok(out)
}

/// The level-`n` finite-set assembler: objects are the isomorphism classes
/// of `Z/n`-sets of size at most `2n` (orbit multisets over the divisors of
/// `n`), families are all two-part disjoint decompositions. Its K_0 is free
/// on the single-orbit classes; single orbits come first in the object
/// order, ascending by length.
pub fn finite_set_assembler(n: u64) -> AssemblerPresentation {
    assert!(n >= 1, "finite_set_assembler: level must be positive");
    let divs = divisors(n);
    let mut multisets: Vec<BTreeMap<u64, u64>> = Vec::new();
    enumerate_multisets(&divs, 2 * n, 0, &mut BTreeMap::new(), &mut multisets);
    // order: orbit count, then size, then label — targets of families always
    // have more orbits than their parts, so elimination keeps single orbits
    // as the basis
    multisets.sort_by_key(|m| {
        let count: u64 = m.values().sum();
        let size: u64 = m.iter().map(|(d, c)| d * c).sum();
        (count, size, orbit_label(m))
    });
    let objects: Vec<String> = multisets.iter().map(orbit_label).collect();
    let mut families = Vec::new();
    for m in &multisets {
        for (left, right) in two_part_splits(m) {
            families.push(CoveringFamily {
                target: orbit_label(m),
                parts: vec![orbit_label(&left), orbit_label(&right)],
            });
        }
    }
    AssemblerPresentation { objects, families }
}

fn enumerate_multisets(
    divs: &[u64],
    budget: u64,
    i: usize,
    cur: &mut BTreeMap<u64, u64>,
    out: &mut Vec<BTreeMap<u64, u64>>,
) {
    if i == divs.len() {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        return;
    }
    let d = divs[i];
    let max = budget / d;
    for m in 0..=max {
        if m > 0 {
            cur.insert(d, m);
        }
        enumerate_multisets(divs, budget - m * d, i + 1, cur, out);
    }
    cur.remove(&d);
}

/// Unordered pairs of nonempty sub-multisets partitioning `m`; symmetric
/// splits appear once.
fn two_part_splits(m: &BTreeMap<u64, u64>) -> Vec<(BTreeMap<u64, u64>, BTreeMap<u64, u64>)> {
    let keys: Vec<u64> = m.keys().copied().collect();
    let mults: Vec<u64> = keys.iter().map(|d| m[d]).collect();
    let mut out = Vec::new();
    let mut counter: Vec<u64> = vec![0; keys.len()];
    'outer: loop {
        // advance the mixed-radix counter
        let mut i = 0;
        loop {
            if i == keys.len() {
                break 'outer;
            }
            counter[i] += 1;
            if counter[i] <= mults[i] {
                break;
            }
            counter[i] = 0;
            i += 1;
        }
        let left: BTreeMap<u64, u64> = keys
            .iter()
            .zip(&counter)
            .filter(|(_, &c)| c > 0)
            .map(|(&d, &c)| (d, c))
            .collect();
        let right: BTreeMap<u64, u64> = keys
            .iter()
            .zip(&counter)
            .map(|(&d, &c)| (d, m[&d] - c))
            .filter(|(_, c)| *c > 0)
            .collect();
        if right.is_empty() {
            continue; // the full split
        }
        // emit each unordered pair once
        if orbit_label(&left) <= orbit_label(&right) {
            out.push((left, right));
        }
    }
    out
}

/// Images of the `sigma_n` endofunctor on a finite-set presentation: each
/// orbit of length `d` splits into `gcd(n, d)` orbits of length
/// `d / gcd(n, d)`; the image of a multiset is again a single object of the
/// same presentation.
pub fn sigma_images(p: &AssemblerPresentation, n: u64) -> Result<ObjectImages, Error> {
    assert!(n >= 1);
    let mut out = ObjectImages::new();
    for label in &p.objects {
        let m = parse_orbit_label(label)?;
        let mut image: BTreeMap<u64, u64> = BTreeMap::new();
        for (&d, &c) in &m {
            let g = n.gcd(&d);
            *image.entry(d / g).or_insert(0) += g * c;
        }
        out.insert(label.clone(), vec![(orbit_label(&image), BigInt::one())]);
    }
    Ok(out)
}

/// Images of the `rho_tilde_n` endofunctor from a level-`N` presentation into
/// the level-`nN` one: each orbit of length `d` becomes one of length `nd`.
pub fn rho_images(p: &AssemblerPresentation, n: u64) -> Result<ObjectImages, Error> {
    assert!(n >= 1);
    let mut out = ObjectImages::new();
    for label in &p.objects {
        let m = parse_orbit_label(label)?;
        let image: BTreeMap<u64, u64> = m.iter().map(|(&d, &c)| (d * n, c)).collect();
        out.insert(label.clone(), vec![(orbit_label(&image), BigInt::one())]);
    }
    Ok(out)
}
