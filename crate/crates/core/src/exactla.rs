//! Dense exact linear algebra over a prime field `F_p`.
//!
//! Everything downstream (kernels of graded pieces, homotopy lifts, spectral
//! sequence pages) bottoms out in the routines here. Elimination is
//! deterministic: pivots are taken at the first nonzero column, scanning rows
//! top to bottom, so every computed basis is a function of the input alone.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Default characteristic.
pub const DEFAULT_PRIME: u32 = 32003;

/// The prime field `F_p`, with `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u32,
}

/// A residue in `[0, p)`.
pub type FieldElem = u32;

impl Fp {
    /// Panics if `p` is not a prime below `2^31`.
    pub fn new(p: u32) -> Self {
        assert!(is_prime(p), "{p} is not prime");
        assert!(p < (1 << 31));
        Fp { p }
    }

    /// Like [`Fp::new`] but without the panic.
    pub fn try_new(p: u32) -> Option<Self> {
        (is_prime(p) && p < (1 << 31)).then_some(Fp { p })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    /// `a * b + c`
    #[inline]
    pub fn mul_add(self, a: u32, b: u32, c: u32) -> u32 {
        ((a as u64 * b as u64 + c as u64) % self.p as u64) as u32
    }

    pub fn pow(self, mut a: u32, mut e: u64) -> u32 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero");
        self.pow(a, (self.p - 2) as u64)
    }

    /// Reduces a signed integer.
    pub fn from_i64(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    /// The symmetric representative in `(-p/2, p/2]`.
    pub fn to_signed(self, a: u32) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }

    /// `+1` or `-1` according to the parity of `e`.
    #[inline]
    pub fn sign(self, odd: bool) -> u32 {
        if odd {
            self.p - 1
        } else {
            1
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A dense row-major matrix over `F_p`. Zero rows or zero columns are legal.
#[derive(Clone, PartialEq, Eq)]
pub struct KMatrix {
    field: Fp,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for KMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "KMatrix {}x{} over F_{}",
            self.rows, self.cols, self.field.p
        )?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl KMatrix {
    pub fn zeros(field: Fp, rows: usize, cols: usize) -> Self {
        KMatrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Fp, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Entries are reduced mod `p`.
    pub fn from_rows(field: Fp, rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        let data = entries.iter().map(|&v| field.from_i64(v)).collect();
        KMatrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn from_row_vecs(field: Fp, cols: usize, rows: &[Vec<u32>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend_from_slice(r);
        }
        KMatrix {
            field,
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_col_vecs(field: Fp, rows: usize, cols: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(field, rows, cols.len());
        for (c, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (r, &v) in col.iter().enumerate() {
                m.set(r, c, v);
            }
        }
        m
    }

    #[inline]
    pub fn field(&self) -> Fp {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> KMatrix {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &KMatrix) -> KMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let f = self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b != 0 {
                        let idx = r * out.cols + c;
                        out.data[idx] = f.mul_add(a, b, out.data[idx]);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        let f = self.field;
        (0..self.rows)
            .map(|r| {
                let mut acc = 0u64;
                for (a, b) in self.row(r).iter().zip(v) {
                    acc += *a as u64 * *b as u64;
                    if acc >= 1 << 62 {
                        acc %= f.p as u64;
                    }
                }
                (acc % f.p as u64) as u32
            })
            .collect()
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (KMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.clone().rref_in_place().len()
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for k in 0..cols {
                    self.data.swap(pr * cols + k, r * cols + k);
                }
            }
            let inv = f.inv(self.data[r * cols + c]);
            for k in c..cols {
                let idx = r * cols + k;
                self.data[idx] = f.mul(self.data[idx], inv);
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = self.data[i * cols + c];
                if factor == 0 {
                    continue;
                }
                let neg = f.neg(factor);
                for k in c..cols {
                    let pv = self.data[r * cols + k];
                    if pv != 0 {
                        let idx = i * cols + k;
                        self.data[idx] = f.mul_add(neg, pv, self.data[idx]);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Columns form the canonical free-variable basis of the null space.
    pub fn kernel_basis(&self) -> KMatrix {
        let f = self.field;
        let (red, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut basis = Self::zeros(f, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            basis.set(fc, k, 1);
            for (pr, &pc) in pivots.iter().enumerate() {
                basis.set(pc, k, f.neg(red.get(pr, fc)));
            }
        }
        basis
    }

    /// The solution of `self * x = b` with all free variables zero, if any
    /// solution exists.
    pub fn solve_particular(&self, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.rows, "right-hand side has wrong length");
        let f = self.field;
        let cols = self.cols;
        let mut aug = Self::zeros(f, self.rows, cols + 1);
        for r in 0..self.rows {
            aug.data[r * (cols + 1)..r * (cols + 1) + cols].copy_from_slice(self.row(r));
            aug.data[r * (cols + 1) + cols] = b[r] % f.p;
        }
        let pivots = aug.rref_in_place();
        if pivots.last() == Some(&cols) {
            return None;
        }
        let mut x = vec![0; cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(r, cols);
        }
        Some(x)
    }
}

/// An incrementally built subspace of `F_p^n`, kept in reduced echelon form.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Fp,
    dim: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: Fp, dim: usize) -> Self {
        Echelon {
            field,
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_vectors<'a>(
        field: Fp,
        dim: usize,
        vs: impl IntoIterator<Item = &'a Vec<u32>>,
    ) -> Self {
        let mut e = Self::new(field, dim);
        for v in vs {
            e.insert(v);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of `v` after clearing every pivot column.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut w = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = w[pc];
            if c == 0 {
                continue;
            }
            let neg = f.neg(c);
            for (k, &rv) in row.iter().enumerate().skip(pc) {
                if rv != 0 {
                    w[k] = f.mul_add(neg, rv, w[k]);
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Inserts `v`; returns its reduced form if it enlarged the space.
    pub fn insert(&mut self, v: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(v.len(), self.dim);
        let f = self.field;
        let mut w = self.reduce(v);
        let pc = w.iter().position(|&x| x != 0)?;
        let inv = f.inv(w[pc]);
        for x in w.iter_mut() {
            *x = f.mul(*x, inv);
        }
        // keep the rows fully reduced against the new pivot
        for row in self.rows.iter_mut() {
            let c = row[pc];
            if c == 0 {
                continue;
            }
            let neg = f.neg(c);
            for k in pc..self.dim {
                if w[k] != 0 {
                    row[k] = f.mul_add(neg, w[k], row[k]);
                }
            }
        }
        let pos = self.pivots.partition_point(|&p| p < pc);
        self.pivots.insert(pos, pc);
        self.rows.insert(pos, w.clone());
        Some(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> Fp {
        Fp::new(5)
    }

    #[test]
    fn rref_of_zero_is_zero() {
        let m = KMatrix::from_rows(f5(), 1, 1, &[0]);
        let (r, piv) = m.rref();
        assert_eq!(r, m);
        assert!(piv.is_empty());
    }

    #[test]
    fn rref_of_identity() {
        let id = KMatrix::identity(f5(), 3);
        let (r, piv) = id.rref();
        assert_eq!(r, id);
        assert_eq!(piv, [0, 1, 2]);
    }

    #[test]
    fn rref_dependent_rows_over_f5() {
        let m = KMatrix::from_rows(f5(), 2, 2, &[1, 2, 2, 4]);
        let (r, piv) = m.rref();
        assert_eq!(r, KMatrix::from_rows(f5(), 2, 2, &[1, 2, 0, 0]));
        assert_eq!(piv, [0]);
    }

    #[test]
    fn kernel_of_identity_and_zero() {
        let id = KMatrix::identity(f5(), 3);
        assert_eq!(id.kernel_basis().cols(), 0);
        let z = KMatrix::zeros(f5(), 2, 4);
        assert_eq!(z.kernel_basis(), KMatrix::identity(f5(), 4));
    }

    #[test]
    fn kernel_of_row_matches_enumeration() {
        let f = f5();
        let m = KMatrix::from_rows(f, 1, 2, &[1, 2]);
        // enumerate F_5^2 and keep solutions of x + 2y = 0
        let sols: Vec<(u32, u32)> = (0..5)
            .flat_map(|x| (0..5).map(move |y| (x, y)))
            .filter(|&(x, y)| (x + 2 * y) % 5 == 0)
            .collect();
        assert_eq!(sols.len(), 5);
        let k = m.kernel_basis();
        assert_eq!(k.cols(), 1);
        assert_eq!(k.col(0), [3, 1]);
        assert!(sols.contains(&(3, 1)));
    }

    #[test]
    fn solve_identity_and_zero() {
        let f = Fp::new(7);
        let id = KMatrix::identity(f, 3);
        assert_eq!(id.solve_particular(&[4, 0, 6]), Some(vec![4, 0, 6]));
        let z = KMatrix::zeros(f, 2, 2);
        assert_eq!(z.solve_particular(&[1, 0]), None);
        assert_eq!(z.solve_particular(&[0, 0]), Some(vec![0, 0]));
    }

    #[test]
    fn solve_zeroes_free_variables() {
        let f = Fp::new(7);
        let m = KMatrix::from_rows(f, 2, 2, &[1, 1, 0, 0]);
        // all solutions of x + y = 2 over F_7; the one with free variable y = 0 is (2, 0)
        let all: Vec<_> = (0..7u32).map(|y| ((2 + 7 - y) % 7, y)).collect();
        assert!(all.contains(&(2, 0)));
        assert_eq!(m.solve_particular(&[2, 0]), Some(vec![2, 0]));
    }

    #[test]
    fn empty_shapes_have_rank_zero() {
        let f = f5();
        assert_eq!(KMatrix::zeros(f, 0, 4).rank(), 0);
        assert_eq!(KMatrix::zeros(f, 4, 0).rank(), 0);
        assert_eq!(KMatrix::zeros(f, 0, 3).kernel_basis().cols(), 3);
    }

    #[test]
    fn echelon_insert_and_reduce() {
        let f = f5();
        let mut e = Echelon::new(f, 3);
        assert!(e.insert(&[1, 2, 0]).is_some());
        assert!(e.insert(&[2, 4, 0]).is_none());
        assert!(e.insert(&[0, 1, 1]).is_some());
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&[1, 3, 1]));
        assert!(!e.contains(&[0, 0, 1]));
    }
}
