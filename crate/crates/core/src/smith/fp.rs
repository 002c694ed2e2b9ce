//! Dense linear algebra over the prime field `F_p`.

use std::fmt;

/// Reduces a signed integer into `0..p`.
pub fn reduce(x: i64, p: u32) -> u32 {
    x.rem_euclid(p as i64) as u32
}

fn inv(a: u32, p: u32) -> u32 {
    // Fermat: a^(p-2)
    let (mut base, mut exp, mut acc) = (a as u64, p as u64 - 2, 1u64);
    let m = p as u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc as u32
}

/// Row-major matrix over `F_p`.
#[derive(Clone, PartialEq, Eq)]
pub struct FpMatrix {
    rows: usize,
    cols: usize,
    p: u32,
    data: Vec<u32>,
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix {}x{} over F_{}", self.rows, self.cols, self.p)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

impl FpMatrix {
    pub fn zeros(rows: usize, cols: usize, p: u32) -> Self {
        Self {
            rows,
            cols,
            p,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, p: u32) -> Self {
        let mut m = Self::zeros(n, n, p);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<u32>], p: u32) -> Self {
        let mut m = Self::zeros(rows, columns.len(), p);
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, &x) in c.iter().enumerate() {
                m.data[i * m.cols + j] = x;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.p;
    }

    /// Adds a signed integer to entry `(i, j)`.
    pub fn add_at(&mut self, i: usize, j: usize, v: i64) {
        let cur = self.data[i * self.cols + j] as i64;
        self.data[i * self.cols + j] = reduce(cur + v, self.p);
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows, self.p);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    /// `self · other`, skipping zero entries of `self`.
    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        assert_eq!(self.p, other.p);
        let p = self.p as u64;
        let mut acc = vec![0u64; other.cols];
        let mut out = Self::zeros(self.rows, other.cols, self.p);
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for (k, &a) in self.row(i).iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for (slot, &b) in acc.iter_mut().zip(other.row(k)) {
                    *slot = (*slot + a as u64 * b as u64) % p;
                }
            }
            for (j, &a) in acc.iter().enumerate() {
                out.data[i * out.cols + j] = a as u32;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len());
        let p = self.p as u64;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0u64, |s, (&a, &b)| (s + a as u64 * b as u64) % p) as u32
            })
            .collect()
    }

    pub fn add(&self, other: &FpMatrix) -> FpMatrix {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &FpMatrix) -> FpMatrix {
        self.combine(other, self.p - 1)
    }

    fn combine(&self, other: &FpMatrix, factor: u32) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let p = self.p as u64;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| ((a as u64 + factor as u64 * b as u64) % p) as u32)
            .collect();
        FpMatrix { data, ..*self }
    }

    pub fn pow(&self, k: usize) -> FpMatrix {
        assert_eq!(self.rows, self.cols);
        (0..k).fold(Self::identity(self.rows, self.p), |acc, _| acc.mul(self))
    }

    /// Reduced row echelon form in place; returns pivot columns.
    fn rref_in_place(&mut self) -> Vec<usize> {
        let p = self.p as u64;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..self.cols {
                    self.data.swap(piv * self.cols + j, r * self.cols + j);
                }
            }
            let s = inv(self.get(r, c), self.p) as u64;
            for j in c..self.cols {
                let x = &mut self.data[r * self.cols + j];
                *x = (*x as u64 * s % p) as u32;
            }
            let pivot_row: Vec<u32> = self.row(r)[c..].to_vec();
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c);
                if f == 0 {
                    continue;
                }
                let neg = p - f as u64;
                for (j, &b) in pivot_row.iter().enumerate() {
                    if b == 0 {
                        continue;
                    }
                    let x = &mut self.data[i * self.cols + c + j];
                    *x = ((*x as u64 + neg * b as u64) % p) as u32;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().len()
    }

    /// Basis of the null space `{x : self·x = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<u32>> {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let p = self.p;
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut x = vec![0u32; self.cols];
                x[free] = 1;
                for (r, &c) in pivots.iter().enumerate() {
                    let a = m.get(r, free);
                    x[c] = (p - a) % p;
                }
                x
            })
            .collect()
    }

    /// Some `x` with `self·x = b`, if one exists.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zeros(self.rows, self.cols + 1, self.p);
        for i in 0..self.rows {
            aug.data[i * aug.cols..i * aug.cols + self.cols].copy_from_slice(self.row(i));
            aug.data[i * aug.cols + self.cols] = b[i] % self.p;
        }
        let pivots = aug.rref_in_place();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0u32; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(r, self.cols);
        }
        Some(x)
    }

    /// Whether `b` lies in the column space.
    pub fn in_column_space(&self, b: &[u32]) -> bool {
        self.solve(b).is_some()
    }
}

pub fn add_vec(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| ((x as u64 + y as u64) % p as u64) as u32)
        .collect()
}

pub fn sub_vec(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| ((x as u64 + (p - y % p) as u64) % p as u64) as u32)
        .collect()
}

pub fn is_zero_vec(v: &[u32]) -> bool {
    v.iter().all(|&x| x == 0)
}

/// Incrementally built echelon basis that remembers how each stored row was
/// formed from the vectors offered to it.
#[derive(Clone, Debug)]
pub struct Span {
    p: u32,
    len: usize,
    offered: usize,
    rows: Vec<(usize, Vec<u32>, Vec<u32>)>,
}

impl Span {
    pub fn new(len: usize, p: u32) -> Self {
        Self {
            p,
            len,
            offered: 0,
            rows: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Number of vectors offered so far.
    pub fn offered(&self) -> usize {
        self.offered
    }

    /// Offers a vector; returns `true` if it was independent of the span.
    /// Every offered vector gets the next original index, independent or not.
    pub fn offer(&mut self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.len);
        let id = self.offered;
        self.offered += 1;
        let (mut res, mut combo) = self.reduce(v);
        // combo expresses v - res in originals; res = v - combo
        for c in combo.iter_mut() {
            *c = (self.p - *c) % self.p;
        }
        combo.resize(self.offered, 0);
        combo[id] = 1;
        let Some(piv) = res.iter().position(|&x| x != 0) else {
            return false;
        };
        let s = inv(res[piv], self.p) as u64;
        let p = self.p as u64;
        for x in res.iter_mut().chain(combo.iter_mut()) {
            *x = (*x as u64 * s % p) as u32;
        }
        self.rows.push((piv, res, combo));
        true
    }

    /// Residual of `v` after elimination, and the combination of originals that
    /// was subtracted.
    fn reduce(&self, v: &[u32]) -> (Vec<u32>, Vec<u32>) {
        let p = self.p as u64;
        let mut res = v.to_vec();
        let mut combo = vec![0u32; self.offered];
        for (piv, row, rc) in &self.rows {
            let c = res[*piv];
            if c == 0 {
                continue;
            }
            let neg = p - c as u64;
            for (x, &y) in res.iter_mut().zip(row) {
                *x = ((*x as u64 + neg * y as u64) % p) as u32;
            }
            for (x, &y) in combo.iter_mut().zip(rc) {
                *x = ((*x as u64 + c as u64 * y as u64) % p) as u32;
            }
        }
        (res, combo)
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        is_zero_vec(&self.reduce(v).0)
    }

    /// Coefficients `a` with `v = Σ a_i · original_i`, or `None` if `v` is outside
    /// the span.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        let (res, combo) = self.reduce(v);
        is_zero_vec(&res).then_some(combo)
    }
}
