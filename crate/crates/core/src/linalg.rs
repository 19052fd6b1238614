//! Dense exact linear algebra over prime fields.
//!
//! Matrices are stored row-major with residues in `[0, p)`. Every binary
//! operation checks that both operands carry the same modulus; the
//! operator impls panic on mismatch while the `try_*` methods report it.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

/// Errors raised by the linear algebra layer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinalgError {
    NotPrime(u32),
    ModulusMismatch { left: u32, right: u32 },
    ShapeMismatch { op: &'static str, left: (usize, usize), right: (usize, usize) },
    EntryOutOfRange { value: u64, modulus: u32 },
    BadLength { expected: usize, found: usize },
}

impl fmt::Display for LinalgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinalgError::NotPrime(p) => write!(f, "modulus {p} is not prime"),
            LinalgError::ModulusMismatch { left, right } => {
                write!(f, "modulus mismatch: {left} vs {right}")
            }
            LinalgError::ShapeMismatch { op, left, right } => write!(
                f,
                "shape mismatch in {op}: {}x{} vs {}x{}",
                left.0, left.1, right.0, right.1
            ),
            LinalgError::EntryOutOfRange { value, modulus } => {
                write!(f, "entry {value} out of range for modulus {modulus}")
            }
            LinalgError::BadLength { expected, found } => {
                write!(f, "expected {expected} entries, found {found}")
            }
        }
    }
}

impl core::error::Error for LinalgError {}

/// A prime modulus, validated at construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Modulus(u32);

impl Modulus {
    pub fn new(p: u32) -> Result<Self, LinalgError> {
        if is_prime(p) {
            Ok(Modulus(p))
        } else {
            Err(LinalgError::NotPrime(p))
        }
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        (s % self.0 as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        self.add(a, self.0 - b % self.0)
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    /// Reduces an arbitrary signed integer into `[0, p)`.
    pub fn reduce(self, a: i64) -> u32 {
        a.rem_euclid(self.0 as i64) as u32
    }

    /// Multiplicative inverse of a nonzero residue.
    pub fn inv(self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.0), "inverse of zero");
        self.pow(a, self.0 - 2)
    }

    pub fn pow(self, mut base: u32, mut exp: u32) -> u32 {
        let mut acc = 1 % self.0;
        base %= self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p as u64 {
        if (p as u64).is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A single field element together with its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u32,
    modulus: Modulus,
}

impl Fp {
    pub fn new(value: u64, modulus: Modulus) -> Self {
        Fp { value: (value % modulus.get() as u64) as u32, modulus }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> Modulus {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inverse(self) -> Option<Fp> {
        if self.value == 0 {
            None
        } else {
            Some(Fp { value: self.modulus.inv(self.value), modulus: self.modulus })
        }
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        assert_eq!(self.modulus, rhs.modulus, "modulus mismatch");
        Fp { value: self.modulus.add(self.value, rhs.value), modulus: self.modulus }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        assert_eq!(self.modulus, rhs.modulus, "modulus mismatch");
        Fp { value: self.modulus.sub(self.value, rhs.value), modulus: self.modulus }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        assert_eq!(self.modulus, rhs.modulus, "modulus mismatch");
        Fp { value: self.modulus.mul(self.value, rhs.value), modulus: self.modulus }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp { value: self.modulus.neg(self.value), modulus: self.modulus }
    }
}

/// Dense row-major matrix over `F_p`. Zero rows or zero columns are allowed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    modulus: Modulus,
    data: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[{}x{} mod {}]", self.rows, self.cols, self.modulus.get())?;
        for r in 0..self.rows {
            write!(f, " {:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// Output of [`Matrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(modulus: Modulus, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, modulus, data: vec![0; rows * cols] }
    }

    pub fn identity(modulus: Modulus, n: usize) -> Self {
        let mut m = Matrix::zeros(modulus, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % modulus.get();
        }
        m
    }

    /// Scalar multiple of the identity.
    pub fn scalar(modulus: Modulus, n: usize, c: u32) -> Self {
        let mut m = Matrix::zeros(modulus, n, n);
        for i in 0..n {
            m.data[i * n + i] = c % modulus.get();
        }
        m
    }

    /// Builds a matrix from row-major data, rejecting out-of-range entries.
    pub fn from_vec(
        modulus: Modulus,
        rows: usize,
        cols: usize,
        data: Vec<u32>,
    ) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::BadLength { expected: rows * cols, found: data.len() });
        }
        if let Some(&bad) = data.iter().find(|&&x| x >= modulus.get()) {
            return Err(LinalgError::EntryOutOfRange { value: bad as u64, modulus: modulus.get() });
        }
        Ok(Matrix { rows, cols, modulus, data })
    }

    /// Convenience constructor used heavily in tests; entries are reduced mod p.
    pub fn from_rows(modulus: Modulus, rows: &[&[u32]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().map(|&x| x % modulus.get()));
        }
        Matrix { rows: r, cols: c, modulus, data }
    }

    /// A single column vector.
    pub fn column_vector(modulus: Modulus, entries: &[u32]) -> Self {
        Matrix {
            rows: entries.len(),
            cols: 1,
            modulus,
            data: entries.iter().map(|&x| x % modulus.get()).collect(),
        }
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
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn entry(&self, r: usize, c: usize) -> Fp {
        Fp { value: self.get(r, c), modulus: self.modulus }
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.modulus.get();
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.modulus, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    fn check_modulus(&self, other: &Matrix) -> Result<(), LinalgError> {
        if self.modulus != other.modulus {
            Err(LinalgError::ModulusMismatch {
                left: self.modulus.get(),
                right: other.modulus.get(),
            })
        } else {
            Ok(())
        }
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.check_modulus(other)?;
        if self.cols != other.rows {
            return Err(LinalgError::ShapeMismatch {
                op: "mul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let p = self.modulus.get() as u64;
        let mut out = Matrix::zeros(self.modulus, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for r in 0..self.rows {
            acc.iter_mut().for_each(|x| *x = 0);
            for k in 0..self.cols {
                let a = self.get(r, k) as u64;
                if a == 0 {
                    continue;
                }
                let orow = other.row(k);
                for (slot, &b) in acc.iter_mut().zip(orow) {
                    *slot = (*slot + a * b as u64) % p;
                }
            }
            for (c, &v) in acc.iter().enumerate() {
                out.data[r * other.cols + c] = v as u32;
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.check_modulus(other)?;
        if self.shape() != other.shape() {
            return Err(LinalgError::ShapeMismatch {
                op: "add",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let m = self.modulus;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| m.add(a, b)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, modulus: m, data })
    }

    pub fn try_sub(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.try_add(&other.neg_ref())
    }

    fn neg_ref(&self) -> Matrix {
        let m = self.modulus;
        Matrix {
            rows: self.rows,
            cols: self.cols,
            modulus: m,
            data: self.data.iter().map(|&a| m.neg(a)).collect(),
        }
    }

    pub fn scale(&self, c: u32) -> Matrix {
        let m = self.modulus;
        Matrix {
            rows: self.rows,
            cols: self.cols,
            modulus: m,
            data: self.data.iter().map(|&a| m.mul(a, c)).collect(),
        }
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.modulus, other.modulus, "modulus mismatch");
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let cols = self.cols + other.cols;
        let mut out = Matrix::zeros(self.modulus, self.rows, cols);
        for r in 0..self.rows {
            out.data[r * cols..r * cols + self.cols].copy_from_slice(self.row(r));
            out.data[r * cols + self.cols..(r + 1) * cols].copy_from_slice(other.row(r));
        }
        out
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.modulus, other.modulus, "modulus mismatch");
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix { rows: self.rows + other.rows, cols: self.cols, modulus: self.modulus, data }
    }

    /// Concatenates a list of blocks horizontally; all must share `rows`.
    pub fn hcat(modulus: Modulus, rows: usize, blocks: &[Matrix]) -> Matrix {
        blocks.iter().fold(Matrix::zeros(modulus, rows, 0), |acc, b| acc.hstack(b))
    }

    /// Concatenates a list of blocks vertically; all must share `cols`.
    pub fn vcat(modulus: Modulus, cols: usize, blocks: &[Matrix]) -> Matrix {
        blocks.iter().fold(Matrix::zeros(modulus, 0, cols), |acc, b| acc.vstack(b))
    }

    pub fn block_diag(modulus: Modulus, blocks: &[Matrix]) -> Matrix {
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(modulus, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            assert_eq!(b.modulus, modulus, "modulus mismatch");
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Overwrites the block starting at `(r0, c0)` with `b`.
    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for r in 0..b.rows {
            for c in 0..b.cols {
                self.data[(r0 + r) * self.cols + c0 + c] = b.get(r, c);
            }
        }
    }

    /// The submatrix of rows `r0..r0+nr` and columns `c0..c0+nc`.
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Matrix {
        let mut out = Matrix::zeros(self.modulus, nr, nc);
        for r in 0..nr {
            for c in 0..nc {
                out.data[r * nc + c] = self.get(r0 + r, c0 + c);
            }
        }
        out
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.modulus, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.data[r * cols.len() + j] = self.get(r, c);
            }
        }
        out
    }

    /// Gauss-Jordan elimination; pivots are chosen left to right, top to bottom.
    pub fn rref(&self) -> Rref {
        let m = self.modulus;
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..a.cols {
            if row == a.rows {
                break;
            }
            let Some(pr) = (row..a.rows).find(|&r| a.get(r, col) != 0) else {
                continue;
            };
            if pr != row {
                for c in 0..a.cols {
                    a.data.swap(pr * a.cols + c, row * a.cols + c);
                }
            }
            let inv = m.inv(a.get(row, col));
            for c in col..a.cols {
                let v = a.get(row, c);
                a.data[row * a.cols + c] = m.mul(v, inv);
            }
            for r in 0..a.rows {
                if r == row {
                    continue;
                }
                let factor = a.get(r, col);
                if factor == 0 {
                    continue;
                }
                for c in col..a.cols {
                    let v = m.sub(a.get(r, c), m.mul(factor, a.get(row, c)));
                    a.data[r * a.cols + c] = v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref { reduced: a, rank: pivots.len(), pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Columns form the canonical basis of the null space, one per free column
    /// of the rref, in increasing free-column order.
    pub fn kernel_basis(&self) -> Matrix {
        let Rref { reduced, pivots, .. } = self.rref();
        let m = self.modulus;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zeros(m, self.cols, free.len());
        for (j, &f) in free.iter().enumerate() {
            k.set(f, j, 1);
            for (i, &pc) in pivots.iter().enumerate() {
                k.set(pc, j, m.neg(reduced.get(i, f)));
            }
        }
        k
    }

    /// Canonical solution of `self * x = b` (free variables zero), or `None`.
    pub fn solve(&self, b: &Matrix) -> Result<Option<Matrix>, LinalgError> {
        self.check_modulus(b)?;
        if self.rows != b.rows {
            return Err(LinalgError::ShapeMismatch {
                op: "solve",
                left: self.shape(),
                right: b.shape(),
            });
        }
        let aug = self.hstack(b);
        let Rref { reduced, pivots, .. } = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(self.modulus, self.cols, b.cols);
        for (i, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, reduced.get(i, self.cols + j));
            }
        }
        Ok(Some(x))
    }

    /// Columns of `self` at the rref pivot positions: a basis of the column space.
    pub fn column_space_basis(&self) -> Matrix {
        let pivots = self.rref().pivots;
        self.select_columns(&pivots)
    }

    /// Rows spanning `{y : y * self = 0}`, stacked as a matrix.
    pub fn left_kernel_basis(&self) -> Matrix {
        self.transpose().kernel_basis().transpose()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let sol = self.solve(&Matrix::identity(self.modulus, n)).ok()??;
        if self.rank() == n {
            Some(sol)
        } else {
            None
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        match self.try_mul(rhs) {
            Ok(m) => m,
            Err(e) => panic!("{e}"),
        }
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        match self.try_add(rhs) {
            Ok(m) => m,
            Err(e) => panic!("{e}"),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        match self.try_sub(rhs) {
            Ok(m) => m,
            Err(e) => panic!("{e}"),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.neg_ref()
    }
}
