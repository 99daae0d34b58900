//! Dense exact linear algebra over prime fields GF(p), p <= 251.

use alloc::vec::Vec;
use core::fmt;

use crate::arith::is_prime;
use crate::error::{Error, Result};

/// Checks that `p` is a prime that fits the `u8` residue storage.
pub fn check_modulus(p: u32) -> Result<()> {
    if p <= 251 && is_prime(p as u64) {
        Ok(())
    } else {
        Err(Error::BadModulus(p))
    }
}

#[inline]
pub(crate) fn add(p: u32, a: u8, b: u8) -> u8 {
    ((a as u32 + b as u32) % p) as u8
}

#[inline]
pub(crate) fn sub(p: u32, a: u8, b: u8) -> u8 {
    ((a as u32 + p - b as u32) % p) as u8
}

#[inline]
pub(crate) fn mul(p: u32, a: u8, b: u8) -> u8 {
    ((a as u32 * b as u32) % p) as u8
}

/// Multiplicative inverse of a nonzero residue.
pub(crate) fn inv(p: u32, a: u8) -> u8 {
    debug_assert!(a != 0);
    // a^(p-2)
    let mut base = a as u32 % p;
    let mut e = p - 2;
    let mut acc = 1u32;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc as u8
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GFVector {
    p: u32,
    entries: Vec<u8>,
}

impl GFVector {
    pub fn zero(p: u32, len: usize) -> Self {
        GFVector {
            p,
            entries: alloc::vec![0; len],
        }
    }

    /// Reduces every entry mod `p`.
    pub fn new(p: u32, entries: &[i64]) -> Self {
        GFVector {
            p,
            entries: entries
                .iter()
                .map(|&e| e.rem_euclid(p as i64) as u8)
                .collect(),
        }
    }

    pub(crate) fn from_residues(p: u32, entries: Vec<u8>) -> Self {
        debug_assert!(entries.iter().all(|&e| (e as u32) < p));
        GFVector { p, entries }
    }

    pub fn unit(p: u32, len: usize, i: usize) -> Self {
        let mut v = Self::zero(p, len);
        v.entries[i] = 1;
        v
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> u8 {
        self.entries[i]
    }

    pub fn set(&mut self, i: usize, x: u8) {
        self.entries[i] = (x as u32 % self.p) as u8;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = self.p;
        GFVector {
            p,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| add(p, a, b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let p = self.p;
        GFVector {
            p,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| sub(p, a, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: u8) -> Self {
        let p = self.p;
        GFVector {
            p,
            entries: self.entries.iter().map(|&a| mul(p, a, c)).collect(),
        }
    }

    /// `self += c * other`.
    pub fn axpy(&mut self, c: u8, other: &Self) {
        if c == 0 {
            return;
        }
        let p = self.p;
        for (a, &b) in self.entries.iter_mut().zip(&other.entries) {
            *a = ((*a as u32 + c as u32 * b as u32) % p) as u8;
        }
    }

    pub fn dot(&self, other: &Self) -> u8 {
        let p = self.p;
        (self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| a as u32 * b as u32 % p)
            .sum::<u32>()
            % p) as u8
    }

    /// Row vector times matrix.
    pub fn mul_mat(&self, m: &GFMatrix) -> GFVector {
        debug_assert_eq!(self.len(), m.rows);
        let p = self.p;
        let mut acc = alloc::vec![0u32; m.cols];
        for (i, &a) in self.entries.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let row = m.row_slice(i);
            for (c, &b) in acc.iter_mut().zip(row) {
                *c += a as u32 * b as u32;
            }
        }
        GFVector {
            p,
            entries: acc.into_iter().map(|c| (c % p) as u8).collect(),
        }
    }

    /// Index of the first nonzero entry.
    pub fn leading(&self) -> Option<usize> {
        self.entries.iter().position(|&x| x != 0)
    }

    /// Scales so that the leading entry is 1.
    pub fn normalized(&self) -> Self {
        match self.leading() {
            Some(i) => self.scale(inv(self.p, self.entries[i])),
            None => self.clone(),
        }
    }

    /// Integer encoding in base `p`, entry 0 least significant.
    pub fn to_index(&self) -> u64 {
        self.entries
            .iter()
            .rev()
            .fold(0u64, |acc, &x| acc * self.p as u64 + x as u64)
    }

    pub fn from_index(p: u32, len: usize, mut index: u64) -> Self {
        let mut entries = alloc::vec![0u8; len];
        for e in entries.iter_mut() {
            *e = (index % p as u64) as u8;
            index /= p as u64;
        }
        GFVector { p, entries }
    }
}

impl fmt::Debug for GFVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}){:?}", self.p, self.entries)
    }
}

/// Row-major dense matrix over GF(p).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GFMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl fmt::Debug for GFMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GFMatrix(p={}, {}x{})", self.p, self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row_slice(r))?;
        }
        Ok(())
    }
}

impl GFMatrix {
    pub fn zero(p: u32, rows: usize, cols: usize) -> Self {
        GFMatrix {
            p,
            rows,
            cols,
            data: alloc::vec![0; rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zero(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds from integer rows, reducing mod `p`.
    pub fn from_rows(p: u32, rows: &[&[i64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape(alloc::string::String::from("ragged rows")));
        }
        let mut m = Self::zero(p, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            for (j, &x) in r.iter().enumerate() {
                m.data[i * cols + j] = x.rem_euclid(p as i64) as u8;
            }
        }
        Ok(m)
    }

    pub fn from_vectors(p: u32, cols: usize, vs: &[GFVector]) -> Self {
        let mut m = Self::zero(p, vs.len(), cols);
        for (i, v) in vs.iter().enumerate() {
            m.data[i * cols..(i + 1) * cols].copy_from_slice(v.entries());
        }
        m
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: u8) {
        self.data[r * self.cols + c] = (x as u32 % self.p) as u8;
    }

    pub(crate) fn row_slice(&self, r: usize) -> &[u8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row(&self, r: usize) -> GFVector {
        GFVector::from_residues(self.p, self.row_slice(r).to_vec())
    }

    pub fn row_vectors(&self) -> Vec<GFVector> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.cols, other.rows);
        let mut out = Self::zero(self.p, self.rows, other.cols);
        for r in 0..self.rows {
            let v = self.row(r).mul_mat(other);
            out.data[r * other.cols..(r + 1) * other.cols].copy_from_slice(v.entries());
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = self.p;
        GFMatrix {
            p,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| add(p, a, b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let p = self.p;
        GFMatrix {
            p,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| sub(p, a, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: u8) -> Self {
        let p = self.p;
        GFMatrix {
            p,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| mul(p, a, c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.p, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn trace(&self) -> u8 {
        let mut t = 0u8;
        for i in 0..self.rows.min(self.cols) {
            t = add(self.p, t, self.get(i, i));
        }
        t
    }

    /// Reduced row echelon form, pivot columns and rank.
    pub fn rref(&self) -> (GFMatrix, Vec<usize>, usize) {
        let p = self.p;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, pr);
            let s = inv(p, m.get(r, c));
            m.scale_row(r, s);
            for i in 0..m.rows {
                if i != r {
                    let f = m.get(i, c);
                    if f != 0 {
                        m.row_axpy(i, p as u8 - f, r);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let rank = pivots.len();
        (m, pivots, rank)
    }

    pub fn rank(&self) -> usize {
        self.rref().2
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, s: u8) {
        let p = self.p;
        for x in &mut self.data[r * self.cols..(r + 1) * self.cols] {
            *x = mul(p, *x, s);
        }
    }

    /// `row[dst] += f * row[src]`.
    fn row_axpy(&mut self, dst: usize, f: u8, src: usize) {
        let p = self.p;
        let cols = self.cols;
        for c in 0..cols {
            let s = self.data[src * cols + c];
            if s != 0 {
                let d = &mut self.data[dst * cols + c];
                *d = ((*d as u32 + f as u32 * s as u32) % p) as u8;
            }
        }
    }

    /// Basis of `{x : A x = 0}` (column vectors, returned as vectors).
    pub fn nullspace(&self) -> Vec<GFVector> {
        let p = self.p;
        let (r, pivots, _) = self.rref();
        let mut is_pivot = alloc::vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = GFVector::zero(p, self.cols);
            v.entries[free] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                let a = r.get(i, free);
                if a != 0 {
                    v.entries[pc] = (p as u8).wrapping_sub(a) % p as u8;
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Basis of `{v : v A = 0}` (row vectors).
    pub fn left_nullspace(&self) -> Vec<GFVector> {
        self.transpose().nullspace()
    }

    /// Some `x` with `A x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &GFVector) -> Result<Option<GFVector>> {
        if b.len() != self.rows {
            return Err(Error::Shape(alloc::format!(
                "matrix has {} rows, right-hand side has {} entries",
                self.rows,
                b.len()
            )));
        }
        let p = self.p;
        let mut aug = Self::zero(p, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.data[r * (self.cols + 1) + c] = self.get(r, c);
            }
            aug.data[r * (self.cols + 1) + self.cols] = b.get(r);
        }
        let (red, pivots, _) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = GFVector::zero(p, self.cols);
        for (i, &pc) in pivots.iter().enumerate() {
            x.entries[pc] = red.get(i, self.cols);
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::Shape(alloc::string::String::from("non-square inverse")));
        }
        let n = self.rows;
        let mut aug = Self::zero(self.p, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.data[r * 2 * n + c] = self.get(r, c);
            }
            aug.data[r * 2 * n + n + r] = 1;
        }
        let (red, pivots, _) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let mut out = Self::zero(self.p, n, n);
        for r in 0..n {
            for c in 0..n {
                out.data[r * n + c] = red.get(r, n + c);
            }
        }
        Ok(out)
    }

    /// Matrix of `v -> v A` acting on all `p^rows` vectors, as a permutation
    /// of their base-`p` indices.
    pub(crate) fn vector_permutation_images(&self) -> Vec<u32> {
        let n = self.rows;
        let total = (self.p as u64).pow(n as u32);
        (0..total)
            .map(|i| {
                GFVector::from_index(self.p, n, i)
                    .mul_mat(self)
                    .to_index() as u32
            })
            .collect()
    }
}

/// `solve_linear` in the sense of the toolkit: a solution of `A x = b` if any.
pub fn solve_linear(a: &GFMatrix, b: &GFVector) -> Result<Option<GFVector>> {
    a.solve(b)
}

/// A subspace of GF(p)^n kept as a fully reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    p: u32,
    ambient: usize,
    rows: Vec<GFVector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(p: u32, ambient: usize) -> Self {
        Subspace {
            p,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(p: u32, ambient: usize) -> Self {
        Self::spanned_by(p, ambient, &GFMatrix::identity(p, ambient).row_vectors())
    }

    pub fn spanned_by(p: u32, ambient: usize, vs: &[GFVector]) -> Self {
        let mut s = Self::zero(p, ambient);
        for v in vs {
            s.insert(v);
        }
        s
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Basis in reduced row echelon form, sorted by pivot.
    pub fn basis(&self) -> Vec<GFVector> {
        let mut idx: Vec<usize> = (0..self.rows.len()).collect();
        idx.sort_by_key(|&i| self.pivots[i]);
        idx.into_iter().map(|i| self.rows[i].clone()).collect()
    }

    pub fn pivots_sorted(&self) -> Vec<usize> {
        let mut p = self.pivots.clone();
        p.sort_unstable();
        p
    }

    /// Reduces `v` modulo the subspace; the result is zero iff `v` lies in it.
    pub fn reduce(&self, v: &GFVector) -> GFVector {
        let mut w = v.clone();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = w.get(pc);
            if c != 0 {
                w.axpy(self.p as u8 - c, row);
            }
        }
        w
    }

    pub fn contains(&self, v: &GFVector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v`; returns true if the dimension grew.
    pub fn insert(&mut self, v: &GFVector) -> bool {
        let w = self.reduce(v);
        let Some(pc) = w.leading() else {
            return false;
        };
        let w = w.scale(inv(self.p, w.get(pc)));
        for row in self.rows.iter_mut() {
            let c = row.get(pc);
            if c != 0 {
                row.axpy(self.p as u8 - c, &w);
            }
        }
        self.rows.push(w);
        self.pivots.push(pc);
        true
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(r);
        }
        s
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // Solve a·A = b·B over the stacked basis.
        let (a, b) = (self.basis(), other.basis());
        let n = self.ambient;
        let mut stacked = a.clone();
        stacked.extend(b.iter().map(|v| v.scale(self.p as u8 - 1)));
        let m = GFMatrix::from_vectors(self.p, n, &stacked);
        let mut out = Subspace::zero(self.p, n);
        for coeffs in m.left_nullspace() {
            let mut v = GFVector::zero(self.p, n);
            for (i, row) in a.iter().enumerate() {
                v.axpy(coeffs.get(i), row);
            }
            out.insert(&v);
        }
        out
    }

    /// Coordinates of a member vector with respect to [`basis`](Self::basis):
    /// the entries at the pivot columns.
    pub fn coordinates(&self, v: &GFVector) -> GFVector {
        let piv = self.pivots_sorted();
        GFVector::from_residues(self.p, piv.iter().map(|&c| v.get(c)).collect())
    }

    /// Coordinates of `v` modulo the subspace, in the complement spanned by
    /// the unit vectors at non-pivot columns.
    pub fn quotient_coordinates(&self, v: &GFVector) -> GFVector {
        let w = self.reduce(v);
        let piv = self.pivots_sorted();
        GFVector::from_residues(
            self.p,
            (0..self.ambient)
                .filter(|c| piv.binary_search(c).is_err())
                .map(|c| w.get(c))
                .collect(),
        )
    }

    /// Non-pivot columns, in increasing order.
    pub fn complement_columns(&self) -> Vec<usize> {
        let piv = self.pivots_sorted();
        (0..self.ambient)
            .filter(|c| piv.binary_search(c).is_err())
            .collect()
    }

    /// `{v : v·w = 0 for all w in self}`.
    pub fn annihilator(&self) -> Subspace {
        if self.rows.is_empty() {
            return Subspace::full(self.p, self.ambient);
        }
        let m = GFMatrix::from_vectors(self.p, self.ambient, &self.rows);
        Subspace::spanned_by(self.p, self.ambient, &m.nullspace())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_examples() {
        let id = GFMatrix::identity(5, 3);
        let (r, piv, rank) = id.rref();
        assert_eq!((r, piv, rank), (id.clone(), alloc::vec![0, 1, 2], 3));
        let z = GFMatrix::zero(5, 2, 3);
        assert_eq!(z.rref().2, 0);
        let m = GFMatrix::from_rows(5, &[&[1, 2], &[2, 4]]).unwrap();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn nullspace_examples() {
        assert!(GFMatrix::identity(5, 3).nullspace().is_empty());
        assert_eq!(GFMatrix::zero(5, 2, 2).nullspace().len(), 2);
        let m = GFMatrix::from_rows(5, &[&[1, 2], &[2, 4]]).unwrap();
        let ns = m.nullspace();
        assert_eq!(ns, alloc::vec![GFVector::new(5, &[3, 1])]);
    }

    #[test]
    fn solve_examples() {
        let b = GFVector::new(5, &[1, 2, 3]);
        assert_eq!(GFMatrix::identity(5, 3).solve(&b).unwrap(), Some(b.clone()));
        assert_eq!(GFMatrix::zero(5, 3, 3).solve(&b).unwrap(), None);
        let a = GFMatrix::from_rows(5, &[&[2]]).unwrap();
        assert_eq!(a.solve(&GFVector::new(5, &[3])).unwrap(), Some(GFVector::new(5, &[4])));
        assert!(a.solve(&b).is_err());
    }

    #[test]
    fn inverse_and_subspaces() {
        let m = GFMatrix::from_rows(7, &[&[1, 2], &[3, 4]]).unwrap();
        let mi = m.inverse().unwrap();
        assert_eq!(m.mul(&mi), GFMatrix::identity(7, 2));
        assert!(matches!(
            GFMatrix::from_rows(5, &[&[1, 2], &[2, 4]]).unwrap().inverse(),
            Err(Error::Singular)
        ));
        let a = Subspace::spanned_by(3, 3, &[GFVector::new(3, &[1, 1, 0]), GFVector::new(3, &[0, 1, 1])]);
        let b = Subspace::spanned_by(3, 3, &[GFVector::new(3, &[1, 0, 0]), GFVector::new(3, &[0, 0, 1])]);
        let i = a.intersection(&b);
        assert_eq!(i.dim(), 1);
        assert!(a.contains(&i.basis()[0]) && b.contains(&i.basis()[0]));
        assert_eq!(a.sum(&b).dim(), 3);
        assert_eq!(a.annihilator().dim(), 1);
    }

    #[test]
    fn modulus_check() {
        assert!(check_modulus(5).is_ok());
        assert!(check_modulus(4).is_err());
        assert!(check_modulus(257).is_err());
    }
}
