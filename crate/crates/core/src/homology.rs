//! Integral simplicial homology through Smith normal form.

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::complex::Complex;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("boundary index {k} out of range 1..={d}")]
    BadDimension { k: usize, d: usize },
    #[error("orientability needs a connected closed pseudomanifold")]
    NotClosedManifold,
}

/// Dense integer matrix with arbitrary-precision entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        IntegerMatrix {
            rows: r,
            cols: c,
            entries: rows.iter().flatten().cloned().map(Into::into).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntegerMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.entries[idx] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    fn to_i64(&self) -> Option<Vec<i64>> {
        self.entries.iter().map(|e| e.to_i64()).collect()
    }
}

/// Arithmetic needed by the elimination. `None` signals overflow.
trait Entry: Clone + PartialEq {
    fn e_is_zero(&self) -> bool;
    fn magnitude_lt(&self, other: &Self) -> bool;
    fn quotient(&self, d: &Self) -> Self;
    /// `self − q·b`
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self>;
    fn into_big(self) -> BigInt;
}

impl Entry for i64 {
    fn e_is_zero(&self) -> bool {
        *self == 0
    }
    fn magnitude_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn quotient(&self, d: &Self) -> Self {
        self / d
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        q.checked_mul(*b).and_then(|p| self.checked_sub(p))
    }
    fn into_big(self) -> BigInt {
        BigInt::from(self)
    }
}

impl Entry for BigInt {
    fn e_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn magnitude_lt(&self, other: &Self) -> bool {
        self.abs() < other.abs()
    }
    fn quotient(&self, d: &Self) -> Self {
        self / d
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self - q * b)
    }
    fn into_big(self) -> BigInt {
        self
    }
}

/// Diagonalizes by unimodular row and column operations, always pivoting on
/// the entry of least magnitude. Returns the nonzero diagonal.
fn diagonalize<T: Entry>(mut a: Vec<T>, rows: usize, cols: usize) -> Option<Vec<T>> {
    let at = |i: usize, j: usize| i * cols + j;
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let e = &a[at(i, j)];
                if !e.e_is_zero() && pivot.is_none_or(|(pi, pj)| e.magnitude_lt(&a[at(pi, pj)])) {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((mut pi, mut pj)) = pivot else { break };
        loop {
            if pi != t {
                for j in 0..cols {
                    a.swap(at(pi, j), at(t, j));
                }
            }
            if pj != t {
                for i in 0..rows {
                    a.swap(at(i, pj), at(i, t));
                }
            }
            let p = a[at(t, t)].clone();
            for i in t + 1..rows {
                if a[at(i, t)].e_is_zero() {
                    continue;
                }
                let q = a[at(i, t)].quotient(&p);
                if q.e_is_zero() {
                    continue;
                }
                for j in t..cols {
                    let v = a[at(i, j)].sub_mul(&q, &a[at(t, j)])?;
                    a[at(i, j)] = v;
                }
            }
            for j in t + 1..cols {
                if a[at(t, j)].e_is_zero() {
                    continue;
                }
                let q = a[at(t, j)].quotient(&p);
                if q.e_is_zero() {
                    continue;
                }
                for i in t..rows {
                    let v = a[at(i, j)].sub_mul(&q, &a[at(i, t)])?;
                    a[at(i, j)] = v;
                }
            }
            // Remainders smaller than the pivot become the next pivot.
            let mut next: Option<(usize, usize)> = None;
            let mut best = p.clone();
            for i in t + 1..rows {
                let e = &a[at(i, t)];
                if !e.e_is_zero() && e.magnitude_lt(&best) {
                    best = e.clone();
                    next = Some((i, t));
                }
            }
            for j in t + 1..cols {
                let e = &a[at(t, j)];
                if !e.e_is_zero() && e.magnitude_lt(&best) {
                    best = e.clone();
                    next = Some((t, j));
                }
            }
            match next {
                Some((i, j)) => {
                    pi = i;
                    pj = j;
                }
                None => break,
            }
        }
        diag.push(a[at(t, t)].clone());
    }
    Some(diag)
}

fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut x, mut y) = (a.abs(), b.abs());
    while !y.is_zero() {
        let r = &x % &y;
        x = y;
        y = r;
    }
    x
}

/// Invariant factors `d₁ | d₂ | … | d_r` of an integer matrix.
pub fn smith_normal_form(mat: &IntegerMatrix) -> Vec<BigInt> {
    let diag: Vec<BigInt> = match mat.to_i64() {
        Some(small) => diagonalize(small, mat.rows, mat.cols)
            .map(|d| d.into_iter().map(Entry::into_big).collect()),
        None => None,
    }
    .unwrap_or_else(|| {
        diagonalize(mat.entries.clone(), mat.rows, mat.cols).expect("big integers do not overflow")
    });
    let mut d: Vec<BigInt> = diag.into_iter().map(|x| x.abs()).collect();
    // A diagonal matrix with entries (a, b) is equivalent to (gcd, lcm).
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = gcd(&d[i], &d[j]);
            if g != d[i] {
                let l = &d[i] / &g * &d[j];
                d[i] = g;
                d[j] = l;
            }
        }
    }
    d
}

/// Matrix of ∂ₖ from `k`-faces (columns) to `(k−1)`-faces (rows), both in
/// lexicographic order.
pub fn boundary_matrix(c: &Complex, k: usize) -> Result<IntegerMatrix, HomologyError> {
    if k == 0 || k > c.dim() || c.is_empty() {
        return Err(HomologyError::BadDimension { k, d: c.dim() });
    }
    let lower = c.faces(k - 1);
    let upper = c.faces(k);
    let index: HashMap<_, usize> = lower.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let mut m = IntegerMatrix::zeros(lower.len(), upper.len());
    for (j, f) in upper.iter().enumerate() {
        for (pos, g) in f.boundary() {
            let v = if pos % 2 == 0 { 1 } else { -1 };
            m.set(index[&g], j, BigInt::from(v));
        }
    }
    Ok(m)
}

/// Homology groups in the unreduced convention.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomologyGroups {
    pub ranks: Vec<usize>,
    pub torsion: Vec<Vec<BigUint>>,
}

impl HomologyGroups {
    pub fn reduced_ranks(&self) -> Vec<usize> {
        let mut r = self.ranks.clone();
        if let Some(h0) = r.first_mut() {
            *h0 = h0.saturating_sub(1);
        }
        r
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.ranks
            .iter()
            .enumerate()
            .map(|(i, &r)| if i % 2 == 0 { r as i64 } else { -(r as i64) })
            .sum()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.iter().all(|t| t.is_empty())
    }

    /// Compact form, e.g. `1, 1+Z2, 0`.
    pub fn compact_string(&self) -> String {
        let parts: Vec<String> = self
            .ranks
            .iter()
            .zip(&self.torsion)
            .map(|(&r, t)| {
                let mut terms: Vec<String> = Vec::new();
                if r > 0 || t.is_empty() {
                    terms.push(r.to_string());
                }
                terms.extend(t.iter().map(|z| format!("Z{z}")));
                terms.join("+")
            })
            .collect();
        parts.join(", ")
    }

    /// Inverse of [`HomologyGroups::compact_string`]; surrounding parentheses
    /// are optional.
    pub fn parse_compact(text: &str) -> Option<Self> {
        let t = text.trim().trim_start_matches('(').trim_end_matches(')');
        let mut ranks = Vec::new();
        let mut torsion = Vec::new();
        for part in t.split(',') {
            let mut r = 0usize;
            let mut tor = Vec::new();
            for term in part.trim().split('+') {
                let term = term.trim();
                if let Some(z) = term.strip_prefix('Z') {
                    tor.push(z.parse::<BigUint>().ok()?);
                } else {
                    r += term.parse::<usize>().ok()?;
                }
            }
            ranks.push(r);
            torsion.push(tor);
        }
        Some(HomologyGroups { ranks, torsion })
    }
}

impl fmt::Display for HomologyGroups {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.compact_string())
    }
}

/// Homology of `c` in dimensions `0..=dim`.
///
/// Degree 0 is computed through the augmented complex and shifted back, so
/// the result uses the unreduced convention.
pub fn homology(c: &Complex) -> HomologyGroups {
    if c.is_empty() {
        return HomologyGroups {
            ranks: vec![0],
            torsion: vec![vec![]],
        };
    }
    let d = c.dim();
    let fv = c.face_vector().0;
    let mut rank = vec![0usize; d + 2];
    let mut factors: Vec<Vec<BigInt>> = vec![Vec::new(); d + 2];
    for k in 1..=d {
        let snf = smith_normal_form(&boundary_matrix(c, k).expect("k in range"));
        rank[k] = snf.len();
        factors[k] = snf;
    }
    // Augmentation C₀ → ℤ has rank one on a nonempty complex.
    let aug_rank = 1;
    let mut ranks = Vec::with_capacity(d + 1);
    let mut torsion = Vec::with_capacity(d + 1);
    for k in 0..=d {
        let into = if k == 0 { aug_rank } else { rank[k] };
        let mut r = fv[k] - into - rank[k + 1];
        if k == 0 {
            r += 1;
        }
        ranks.push(r);
        torsion.push(
            factors[k + 1]
                .iter()
                .filter(|x| !x.is_one())
                .map(|x| x.magnitude().clone())
                .collect(),
        );
    }
    HomologyGroups { ranks, torsion }
}

/// Top homology has rank one.
pub fn is_orientable(c: &Complex) -> Result<bool, HomologyError> {
    if !c.is_closed_pseudomanifold() || !c.is_connected() {
        return Err(HomologyError::NotClosedManifold);
    }
    Ok(homology(c).ranks[c.dim()] == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Simplex;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn snf_small_cases() {
        assert_eq!(
            smith_normal_form(&IntegerMatrix::identity(3)),
            big(&[1, 1, 1])
        );
        let d = IntegerMatrix::from_rows(&[vec![2, 0], vec![0, 4]]);
        assert_eq!(smith_normal_form(&d), big(&[2, 4]));
        let e = IntegerMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(smith_normal_form(&e), big(&[1, 6]));
        assert!(smith_normal_form(&IntegerMatrix::zeros(2, 3)).is_empty());
        let f = IntegerMatrix::from_rows(&[vec![6, 4], vec![4, 6]]);
        assert_eq!(smith_normal_form(&f), big(&[2, 10]));
    }

    #[test]
    fn snf_falls_back_to_big_integers() {
        let huge = i64::MAX / 2;
        let m = IntegerMatrix::from_rows(&[vec![huge, huge - 1], vec![huge - 3, huge]]);
        let d = smith_normal_form(&m);
        let det = BigInt::from(huge) * BigInt::from(huge)
            - BigInt::from(huge - 1) * BigInt::from(huge - 3);
        let prod: BigInt = d.iter().product();
        assert_eq!(prod, det.abs());
    }

    #[test]
    fn triangle_boundary_signs() {
        let c = Complex::from_lists(&[[1, 2, 3]]).unwrap();
        let m = boundary_matrix(&c, 2).unwrap();
        let col: Vec<i64> = (0..3).map(|i| m.get(i, 0).to_i64().unwrap()).collect();
        assert_eq!(col, [1, -1, 1]);
        let d1 = boundary_matrix(&c, 1).unwrap();
        for j in 0..d1.cols() {
            let col: Vec<i64> = (0..d1.rows())
                .map(|i| d1.get(i, j).to_i64().unwrap())
                .collect();
            assert_eq!(col.iter().filter(|&&x| x == 1).count(), 1);
            assert_eq!(col.iter().filter(|&&x| x == -1).count(), 1);
        }
        assert!(d1.mul(&m).is_zero());
    }

    #[test]
    fn sphere_and_projective_plane() {
        let s2 = Complex::from_lists(&[[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]]).unwrap();
        let h = homology(&s2);
        assert_eq!(h.ranks, vec![1, 0, 1]);
        assert_eq!(h.compact_string(), "1, 0, 1");
        assert!(is_orientable(&s2).unwrap());
        let rp2 = Complex::from_lists(&[
            [1, 2, 3],
            [1, 3, 4],
            [1, 4, 5],
            [1, 5, 6],
            [1, 2, 6],
            [2, 3, 5],
            [2, 4, 5],
            [2, 4, 6],
            [3, 4, 6],
            [3, 5, 6],
        ])
        .unwrap();
        let h = homology(&rp2);
        assert_eq!(h.compact_string(), "1, Z2, 0");
        assert_eq!(h.reduced_ranks(), vec![0, 0, 0]);
        assert!(!is_orientable(&rp2).unwrap());
        assert_eq!(h.euler_characteristic(), 1);
    }

    #[test]
    fn compact_strings_round_trip() {
        for s in ["1, 1+Z2, 0", "1, 10, 1", "1, 1, 1, 1", "1, Z2, 0"] {
            let h = HomologyGroups::parse_compact(s).unwrap();
            assert_eq!(h.compact_string(), s);
        }
        assert!(HomologyGroups::parse_compact("(1, x, 0)").is_none());
    }

    #[test]
    fn orientability_requires_closed_input() {
        let disk = Complex::new(vec![Simplex::new([1, 2, 3]).unwrap()]).unwrap();
        assert_eq!(is_orientable(&disk), Err(HomologyError::NotClosedManifold));
    }
}
