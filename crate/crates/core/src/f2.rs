//! Dense linear algebra over F2 with bit-packed rows.
//!
//! Besides rank, products and inverses this module carries the congruence
//! machinery used on anti-commutation matrices: the elementary congruence
//! `Eᵀ M E` with `E = I + e_i e_jᵀ`, and a constructive reduction of any
//! symmetric zero-diagonal matrix to a direct sum of hyperbolic blocks
//! `[[0,1],[1,0]]` followed by zeros.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::bits::BitVec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum F2Error {
    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("congruence needs distinct indices, got {0} twice")]
    SameIndex(usize),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix has a nonzero diagonal entry at {0}")]
    NonZeroDiagonal(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("empty matrix text")]
    Empty,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVec>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix {
            cols,
            rows: (0..rows).map(|_| BitVec::zeros(cols)).collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BitMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from row vectors, which must share one length.
    pub fn from_rows(rows: Vec<BitVec>) -> Result<Self, F2Error> {
        let cols = rows.first().map_or(0, BitVec::len);
        for r in &rows {
            if r.len() != cols {
                return Err(F2Error::ShapeMismatch {
                    left: (rows.len(), cols),
                    right: (1, r.len()),
                });
            }
        }
        Ok(BitMatrix { cols, rows })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = BitMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Matrix text: one row per line of `0`/`1`, blank lines and `#` comments ignored.
    pub fn parse_text(text: &str) -> Result<Self, F2Error> {
        let mut rows = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut bits = Vec::with_capacity(line.len());
            for ch in line.chars() {
                match ch {
                    '0' => bits.push(false),
                    '1' => bits.push(true),
                    _ => {
                        return Err(F2Error::Parse {
                            line: k + 1,
                            msg: format!("unexpected character {ch:?}"),
                        })
                    }
                }
            }
            let row = BitVec::from_bools(bits);
            if let Some(first) = rows.first() {
                let first: &BitVec = first;
                if first.len() != row.len() {
                    return Err(F2Error::Parse {
                        line: k + 1,
                        msg: format!("row has {} entries, expected {}", row.len(), first.len()),
                    });
                }
            }
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(F2Error::Empty);
        }
        BitMatrix::from_rows(rows)
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.nrows(), self.ncols())
    }

    pub fn is_square(&self) -> bool {
        self.nrows() == self.ncols()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.rows[i].set(j, value)
    }

    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVec::is_zero)
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.ncols(), self.nrows());
        for (i, row) in self.rows.iter().enumerate() {
            for j in row.iter_ones() {
                t.set(j, i, true);
            }
        }
        t
    }

    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix, F2Error> {
        if self.ncols() != other.nrows() {
            return Err(F2Error::ShapeMismatch {
                left: self.shape(),
                right: other.shape(),
            });
        }
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc = BitVec::zeros(other.ncols());
                for k in row.iter_ones() {
                    acc.xor_assign(&other.rows[k]);
                }
                acc
            })
            .collect();
        Ok(BitMatrix {
            cols: other.ncols(),
            rows,
        })
    }

    /// Row rank by forward elimination.
    pub fn rank(&self) -> usize {
        let mut rows = self.rows.clone();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot) = (rank..rows.len()).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(rank, pivot);
            let (head, tail) = rows.split_at_mut(rank + 1);
            let pivot_row = &head[rank];
            for r in tail.iter_mut() {
                if r.get(col) {
                    r.xor_assign(pivot_row);
                }
            }
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rank
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.nrows()
    }

    /// Gauss–Jordan inverse.
    pub fn invert(&self) -> Result<BitMatrix, F2Error> {
        if !self.is_square() {
            return Err(F2Error::NotSquare {
                rows: self.nrows(),
                cols: self.ncols(),
            });
        }
        let n = self.nrows();
        let mut a = self.rows.clone();
        let mut inv = BitMatrix::identity(n).rows;
        for col in 0..n {
            let pivot = (col..n).find(|&r| a[r].get(col)).ok_or(F2Error::Singular)?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            for r in 0..n {
                if r != col && a[r].get(col) {
                    let (pa, pi) = (a[col].clone(), inv[col].clone());
                    a[r].xor_assign(&pa);
                    inv[r].xor_assign(&pi);
                }
            }
        }
        Ok(BitMatrix { cols: n, rows: inv })
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn first_nonzero_diagonal(&self) -> Option<usize> {
        (0..self.nrows().min(self.ncols())).find(|&i| self.get(i, i))
    }

    fn check_pair(&self, i: usize, j: usize) -> Result<(), F2Error> {
        if !self.is_square() {
            return Err(F2Error::NotSquare {
                rows: self.nrows(),
                cols: self.ncols(),
            });
        }
        let n = self.nrows();
        for idx in [i, j] {
            if idx >= n {
                return Err(F2Error::IndexOutOfRange { index: idx, dim: n });
            }
        }
        if i == j {
            return Err(F2Error::SameIndex(i));
        }
        Ok(())
    }

    /// Adds column `i` onto column `j` in place.
    fn add_col(&mut self, i: usize, j: usize) {
        for row in &mut self.rows {
            if row.get(i) {
                row.flip(j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in &mut self.rows {
            let (a, b) = (row.get(i), row.get(j));
            if a != b {
                row.flip(i);
                row.flip(j);
            }
        }
    }

    /// In-place `Eᵀ M E` with `E = I + e_i e_jᵀ`: row `i` is added onto row
    /// `j` and column `i` onto column `j`.
    pub fn congruence_add_in_place(&mut self, i: usize, j: usize) -> Result<(), F2Error> {
        self.check_pair(i, j)?;
        let ri = self.rows[i].clone();
        self.rows[j].xor_assign(&ri);
        self.add_col(i, j);
        Ok(())
    }

    /// Returns `Eᵀ M E` for `E = (e_1 … (e_i + e_j) … e_n)`, the elementary
    /// matrix whose column `j` is `e_i + e_j`.
    pub fn congruence_add(&self, i: usize, j: usize) -> Result<BitMatrix, F2Error> {
        let mut out = self.clone();
        out.congruence_add_in_place(i, j)?;
        Ok(out)
    }

    /// In-place simultaneous swap of rows and columns `i`, `j`.
    pub fn congruence_swap_in_place(&mut self, i: usize, j: usize) -> Result<(), F2Error> {
        if i == j {
            return Ok(());
        }
        self.check_pair(i, j)?;
        self.rows.swap(i, j);
        self.swap_cols(i, j);
        Ok(())
    }

    /// The elementary matrix `I + e_i e_jᵀ` used by [`BitMatrix::congruence_add`].
    pub fn elementary_add(n: usize, i: usize, j: usize) -> Result<BitMatrix, F2Error> {
        let mut e = BitMatrix::identity(n);
        e.check_pair(i, j)?;
        e.set(i, j, true);
        Ok(e)
    }

    /// `Pᵀ M P`.
    pub fn congruent_transform(&self, p: &BitMatrix) -> Result<BitMatrix, F2Error> {
        p.transpose().mul(self)?.mul(p)
    }

    /// Direct sum of `rank / 2` hyperbolic blocks padded with zeros to `size`.
    pub fn canonical(size: usize, rank: usize) -> BitMatrix {
        assert!(rank.is_multiple_of(2) && rank <= size, "invalid canonical rank {rank} for size {size}");
        let mut m = BitMatrix::zeros(size, size);
        for b in 0..rank / 2 {
            m.set(2 * b, 2 * b + 1, true);
            m.set(2 * b + 1, 2 * b, true);
        }
        m
    }

    /// Validates that `self` is symmetric with zero diagonal.
    pub fn check_alternating(&self) -> Result<(), F2Error> {
        if !self.is_square() {
            return Err(F2Error::NotSquare {
                rows: self.nrows(),
                cols: self.ncols(),
            });
        }
        if let Some(i) = self.first_nonzero_diagonal() {
            return Err(F2Error::NonZeroDiagonal(i));
        }
        if !self.is_symmetric() {
            return Err(F2Error::NotSymmetric);
        }
        Ok(())
    }

    /// Lowest-index nonzero entry in row-major order within the trailing
    /// block `start..n`.
    fn first_entry_from(&self, start: usize) -> Option<(usize, usize)> {
        (start..self.nrows()).find_map(|i| {
            self.rows[i]
                .iter_ones()
                .find(|&j| j >= start)
                .map(|j| (i, j))
        })
    }
}

/// Invertible `p` with `pᵀ Γ p = canonical(size, rank)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceCertificate {
    pub p: BitMatrix,
    pub rank: usize,
}

impl CongruenceCertificate {
    pub fn size(&self) -> usize {
        self.p.nrows()
    }

    pub fn canonical_form(&self) -> BitMatrix {
        BitMatrix::canonical(self.size(), self.rank)
    }

    /// Checks invertibility of `p` and `pᵀ g p = canonical` bit-exactly.
    pub fn verifies(&self, g: &BitMatrix) -> bool {
        self.rank.is_multiple_of(2)
            && self.p.is_invertible()
            && g.congruent_transform(&self.p)
                .map(|m| m == self.canonical_form())
                .unwrap_or(false)
    }
}

/// Reduces a symmetric zero-diagonal matrix to hyperbolic canonical form.
///
/// Repeatedly takes the lowest nonzero entry of the unreduced block, swaps it
/// into the next block position and clears the rest of that row/column pair
/// with elementary congruences. `p` is the product of every elementary matrix
/// applied.
pub fn canonical_congruence(g: &BitMatrix) -> Result<CongruenceCertificate, F2Error> {
    g.check_alternating()?;
    let n = g.nrows();
    let mut m = g.clone();
    let mut p = BitMatrix::identity(n);
    let mut t = 0;
    while t + 1 < n {
        let Some((i, j)) = m.first_entry_from(t) else {
            break;
        };
        m.congruence_swap_in_place(t, i)?;
        p.swap_cols(t, i);
        let j = if j == t { i } else { j };
        m.congruence_swap_in_place(t + 1, j)?;
        p.swap_cols(t + 1, j);
        debug_assert!(m.get(t, t + 1));
        for k in t + 2..n {
            if m.get(t, k) {
                m.congruence_add_in_place(t + 1, k)?;
                p.add_col(t + 1, k);
            }
            if m.get(t + 1, k) {
                m.congruence_add_in_place(t, k)?;
                p.add_col(t, k);
            }
        }
        t += 2;
    }
    let rank = t;
    debug_assert!(m == BitMatrix::canonical(n, rank));
    Ok(CongruenceCertificate { p, rank })
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.nrows(), self.ncols())?;
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for BitMatrix {
    type Err = F2Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BitMatrix::parse_text(s)
    }
}
