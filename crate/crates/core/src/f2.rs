//! Dense linear algebra over the field with two elements.
//!
//! Vectors are bit-packed into `u64` words. Matrices are stored row-major and act on
//! column vectors: an `r × c` matrix sends a length-`c` vector to a length-`r` vector.
//! Every elimination picks the lowest-index available pivot, so bases returned by
//! [`F2Matrix::kernel_basis`] are deterministic.

use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A vector over F2 of fixed length.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2Vector {
    len: usize,
    words: Vec<u64>,
}

impl F2Vector {
    #[must_use]
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// The standard basis vector with a single one at `index`.
    #[must_use]
    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    #[must_use]
    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Builds a vector from the positions of its nonzero entries.
    #[must_use]
    pub fn from_ones(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.flip(i);
        }
        v
    }

    /// Parses a string of `0`/`1` characters.
    pub fn from_bitstring(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!("invalid bit character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_bits(&bits))
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.len
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[must_use]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[must_use]
    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Adds `other` into `self`; panics on a length mismatch.
    pub fn add_assign(&mut self, other: &F2Vector) {
        assert_eq!(self.len, other.len, "vector length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Checked addition.
    pub fn try_add(&self, other: &F2Vector) -> Result<F2Vector> {
        if self.len != other.len {
            return Err(Error::DimensionMismatch(format!(
                "cannot add vectors of lengths {} and {}",
                self.len, other.len
            )));
        }
        let mut out = self.clone();
        out.add_assign(other);
        Ok(out)
    }

    /// Entrywise product.
    #[must_use]
    pub fn and(&self, other: &F2Vector) -> F2Vector {
        assert_eq!(self.len, other.len, "vector length mismatch");
        F2Vector {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    /// Inner product mod 2.
    #[must_use]
    pub fn dot(&self, other: &F2Vector) -> bool {
        assert_eq!(self.len, other.len, "vector length mismatch");
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones % 2 == 1
    }

    /// Index of the lowest nonzero entry.
    #[must_use]
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * WORD + w.trailing_zeros() as usize)
    }

    /// Iterates over the positions of nonzero entries in increasing order.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(k * WORD + bit)
            })
        })
    }

    /// Concatenation `self ++ other`.
    #[must_use]
    pub fn concat(&self, other: &F2Vector) -> F2Vector {
        let mut out = F2Vector::zeros(self.len + other.len);
        out.words[..self.words.len()].copy_from_slice(&self.words);
        for i in other.ones() {
            out.set(self.len + i, true);
        }
        out
    }

    /// Copies entries `start..start + len` into a new vector.
    #[must_use]
    pub fn slice(&self, start: usize, len: usize) -> F2Vector {
        assert!(start + len <= self.len, "slice out of range");
        let mut out = F2Vector::zeros(len);
        for i in self.ones().skip_while(|&i| i < start).take_while(|&i| i < start + len) {
            out.set(i - start, true);
        }
        out
    }

    /// Adds `other` into the entries starting at `offset`.
    pub fn add_at(&mut self, offset: usize, other: &F2Vector) {
        assert!(offset + other.len <= self.len, "block out of range");
        if offset.is_multiple_of(WORD) {
            let start = offset / WORD;
            for (k, w) in other.words.iter().enumerate() {
                self.words[start + k] ^= w;
            }
        } else {
            for i in other.ones() {
                self.flip(offset + i);
            }
        }
    }

    #[must_use]
    pub fn to_bits(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }

    #[must_use]
    pub fn to_bitstring(&self) -> String {
        (0..self.len).map(|i| if self.get(i) { '1' } else { '0' }).collect()
    }
}

impl fmt::Debug for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2Vector[{}]", self.to_bitstring())
    }
}

/// A dense matrix over F2, stored as a list of rows.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<F2Vector>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: F2Matrix,
    pub pivots: Vec<usize>,
}

impl F2Matrix {
    #[must_use]
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![F2Vector::zeros(cols); rows],
        }
    }

    #[must_use]
    pub fn identity(n: usize) -> Self {
        Self {
            rows: n,
            cols: n,
            data: (0..n).map(|i| F2Vector::unit(n, i)).collect(),
        }
    }

    /// Builds a matrix from rows that must all have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<F2Vector>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "row of length {} in a matrix with {cols} columns",
                bad.len()
            )));
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows,
        })
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[F2Vector]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::DimensionMismatch(format!(
                    "column of length {} in a matrix with {rows} rows",
                    c.len()
                )));
            }
            for i in c.ones() {
                m.data[i].set(j, true);
            }
        }
        Ok(m)
    }

    /// Builds a matrix from nested 0/1 entries.
    pub fn from_u8_rows(rows: &[&[u8]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .map(|r| {
                if r.len() != cols {
                    return Err(Error::DimensionMismatch("ragged rows".into()));
                }
                Ok(F2Vector::from_bits(&r.iter().map(|&b| b & 1 == 1).collect::<Vec<_>>()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(cols, data)
    }

    #[must_use]
    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.data[i].set(j, true);
                }
            }
        }
        m
    }

    #[must_use]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[must_use]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[must_use]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.data[i].set(j, value);
    }

    #[must_use]
    pub fn row(&self, i: usize) -> &F2Vector {
        &self.data[i]
    }

    pub fn row_vectors(&self) -> &[F2Vector] {
        &self.data
    }

    #[must_use]
    pub fn column(&self, j: usize) -> F2Vector {
        let mut c = F2Vector::zeros(self.rows);
        for (i, r) in self.data.iter().enumerate() {
            if r.get(j) {
                c.set(i, true);
            }
        }
        c
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F2Vector::is_zero)
    }

    #[must_use]
    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| self.data[i] == F2Vector::unit(self.cols, i))
    }

    /// Matrix-vector product; panics on a shape mismatch.
    #[must_use]
    pub fn mul_vec(&self, v: &F2Vector) -> F2Vector {
        assert_eq!(v.len(), self.cols, "matrix-vector shape mismatch");
        let mut out = F2Vector::zeros(self.rows);
        for (i, r) in self.data.iter().enumerate() {
            if r.dot(v) {
                out.set(i, true);
            }
        }
        out
    }

    pub fn try_mul_vec(&self, v: &F2Vector) -> Result<F2Vector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix applied to a vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok(self.mul_vec(v))
    }

    /// Matrix product `self · other`; panics on a shape mismatch.
    #[must_use]
    pub fn mul(&self, other: &F2Matrix) -> F2Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let data = self
            .data
            .iter()
            .map(|r| {
                let mut acc = F2Vector::zeros(other.cols);
                for k in r.ones() {
                    acc.add_assign(&other.data[k]);
                }
                acc
            })
            .collect();
        F2Matrix {
            rows: self.rows,
            cols: other.cols,
            data,
        }
    }

    pub fn try_mul(&self, other: &F2Matrix) -> Result<F2Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.mul(other))
    }

    /// Entrywise sum; panics on a shape mismatch.
    #[must_use]
    pub fn add(&self, other: &F2Matrix) -> F2Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix sum shape mismatch");
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            a.add_assign(b);
        }
        out
    }

    #[must_use]
    pub fn transpose(&self) -> F2Matrix {
        let mut t = F2Matrix::zeros(self.cols, self.rows);
        for (i, r) in self.data.iter().enumerate() {
            for j in r.ones() {
                t.data[j].set(i, true);
            }
        }
        t
    }

    /// Places `self` and `other` side by side.
    pub fn hstack(&self, other: &F2Matrix) -> Result<F2Matrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack row counts differ".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.concat(b)).collect();
        Ok(F2Matrix {
            rows: self.rows,
            cols: self.cols + other.cols,
            data,
        })
    }

    /// Places `self` above `other`.
    pub fn vstack(&self, other: &F2Matrix) -> Result<F2Matrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch("vstack column counts differ".into()));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(F2Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Reduced row echelon form, choosing the lowest available pivot column at each step.
    #[must_use]
    pub fn echelon(&self) -> Echelon {
        let mut rows = self.data.clone();
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..self.cols {
            let Some(found) = (next..rows.len()).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(next, found);
            let pivot_row = rows[next].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != next && row.get(col) {
                    row.add_assign(&pivot_row);
                }
            }
            pivots.push(col);
            next += 1;
            if next == rows.len() {
                break;
            }
        }
        Echelon {
            reduced: F2Matrix {
                rows: self.rows,
                cols: self.cols,
                data: rows,
            },
            pivots,
        }
    }

    #[must_use]
    pub fn rank(&self) -> usize {
        let mut space = RowSpace::new(self.cols);
        for r in &self.data {
            space.insert(r.clone());
        }
        space.rank()
    }

    /// A basis of `{x : self·x = 0}` with `cols − rank` vectors, one per free column
    /// in increasing order.
    #[must_use]
    pub fn kernel_basis(&self) -> Vec<F2Vector> {
        let mut space = RowSpace::new(self.cols);
        for r in &self.data {
            space.insert(r.clone());
        }
        space.annihilator()
    }

    /// Some `x` with `self·x = b`, or `None` when the system is inconsistent.
    /// Free variables are set to zero.
    pub fn solve(&self, b: &F2Vector) -> Result<Option<F2Vector>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} for a matrix with {} rows",
                b.len(),
                self.rows
            )));
        }
        let augmented = self.hstack(&F2Matrix::from_columns(self.rows, std::slice::from_ref(b))?)?;
        let ech = augmented.echelon();
        if ech.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = F2Vector::zeros(self.cols);
        for (r, &p) in ech.pivots.iter().enumerate() {
            if ech.reduced.get(r, self.cols) {
                x.set(p, true);
            }
        }
        Ok(Some(x))
    }

    /// Renders rows as `0`/`1` strings.
    #[must_use]
    pub fn to_bitstrings(&self) -> Vec<String> {
        self.data.iter().map(F2Vector::to_bitstring).collect()
    }
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "F2Matrix {}x{}", self.rows, self.cols)?;
        for r in &self.data {
            writeln!(f, "  {}", r.to_bitstring())?;
        }
        Ok(())
    }
}

/// An incrementally built row space kept in semi-echelon form: every stored row has a
/// distinct leading (lowest) bit and no stored row has a bit at another row's lead.
///
/// Streaming constraint rows through this structure avoids materialising the full
/// constraint matrix.
#[derive(Clone, Debug)]
pub struct RowSpace {
    width: usize,
    rows: Vec<F2Vector>,
    lead_of: Vec<Option<usize>>,
    lead_mask: F2Vector,
}

impl RowSpace {
    #[must_use]
    pub fn new(width: usize) -> Self {
        Self {
            width,
            rows: Vec::new(),
            lead_of: vec![None; width],
            lead_mask: F2Vector::zeros(width),
        }
    }

    #[must_use]
    pub fn width(&self) -> usize {
        self.width
    }

    #[must_use]
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored rows.
    pub fn reduce(&self, v: &mut F2Vector) {
        let hits: Vec<usize> = v
            .words
            .iter()
            .zip(&self.lead_mask.words)
            .enumerate()
            .flat_map(|(k, (a, b))| {
                let mut rest = a & b;
                std::iter::from_fn(move || {
                    if rest == 0 {
                        return None;
                    }
                    let bit = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(k * WORD + bit)
                })
            })
            .collect();
        // Stored rows carry no bits at other leads, so one pass clears every lead bit.
        for lead in hits {
            v.add_assign(&self.rows[self.lead_of[lead].unwrap()]);
        }
    }

    #[must_use]
    pub fn contains(&self, v: &F2Vector) -> bool {
        let mut w = v.clone();
        self.reduce(&mut w);
        w.is_zero()
    }

    /// Inserts `v`; returns `true` when the rank grew.
    pub fn insert(&mut self, mut v: F2Vector) -> bool {
        assert_eq!(v.len(), self.width, "row width mismatch");
        self.reduce(&mut v);
        let Some(lead) = v.first_one() else {
            return false;
        };
        for r in &mut self.rows {
            if r.get(lead) {
                r.add_assign(&v);
            }
        }
        self.lead_of[lead] = Some(self.rows.len());
        self.lead_mask.set(lead, true);
        self.rows.push(v);
        true
    }

    /// Pivot columns in increasing order.
    #[must_use]
    pub fn pivots(&self) -> Vec<usize> {
        (0..self.width).filter(|&c| self.lead_of[c].is_some()).collect()
    }

    /// Basis of the vectors orthogonal to every stored row (the kernel of the matrix
    /// whose rows are stored here), one vector per non-pivot column in increasing order.
    #[must_use]
    pub fn annihilator(&self) -> Vec<F2Vector> {
        (0..self.width)
            .filter(|&c| self.lead_of[c].is_none())
            .map(|free| {
                let mut x = F2Vector::unit(self.width, free);
                for r in &self.rows {
                    if r.get(free) {
                        x.set(r.first_one().unwrap(), true);
                    }
                }
                x
            })
            .collect()
    }
}

/// Coordinates with respect to a fixed linearly independent family of vectors.
#[derive(Clone, Debug)]
pub struct Coordinates {
    ambient: usize,
    dim: usize,
    transform: F2Matrix,
}

impl Coordinates {
    /// Prepares coordinate extraction for the span of `basis`, which must be linearly
    /// independent vectors of length `ambient`.
    pub fn new(ambient: usize, basis: &[F2Vector]) -> Result<Self> {
        let b = F2Matrix::from_columns(ambient, basis)?;
        let ech = b.hstack(&F2Matrix::identity(ambient))?.echelon();
        let dim = basis.len();
        if ech.pivots.len() < dim || ech.pivots[..dim].iter().enumerate().any(|(i, &p)| i != p) {
            return Err(Error::Invariant("coordinate family is linearly dependent".into()));
        }
        let transform = F2Matrix {
            rows: ambient,
            cols: ambient,
            data: ech
                .reduced
                .data
                .iter()
                .map(|r| r.slice(dim, ambient))
                .collect(),
        };
        Ok(Self {
            ambient,
            dim,
            transform,
        })
    }

    #[must_use]
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coordinates of `v`, or `None` if `v` is outside the span.
    #[must_use]
    pub fn coords(&self, v: &F2Vector) -> Option<F2Vector> {
        assert_eq!(v.len(), self.ambient, "ambient length mismatch");
        let w = self.transform.mul_vec(v);
        if w.slice(self.dim, self.ambient - self.dim).is_zero() {
            Some(w.slice(0, self.dim))
        } else {
            None
        }
    }
}
