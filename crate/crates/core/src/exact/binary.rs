use rayon::prelude::*;

use super::{int, ExactMatrix};

/// Square 0/1 matrix with bit-packed rows.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BinaryMatrix {
    dim: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl BinaryMatrix {
    pub fn zeros(dim: usize) -> Self {
        let words_per_row = dim.div_ceil(64).max(1);
        BinaryMatrix {
            dim,
            words_per_row,
            bits: vec![0; dim * words_per_row],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |r, c| r == c)
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(dim);
        for r in 0..dim {
            for c in 0..dim {
                if f(r, c) {
                    m.set(r, c);
                }
            }
        }
        m
    }

    /// Builds from explicit packed rows (used by the parallel adjacency builder).
    pub(crate) fn from_rows(dim: usize, rows: Vec<Vec<u64>>) -> Self {
        let words_per_row = dim.div_ceil(64).max(1);
        debug_assert!(rows.iter().all(|r| r.len() == words_per_row));
        BinaryMatrix {
            dim,
            words_per_row,
            bits: rows.into_iter().flatten().collect(),
        }
    }

    pub(crate) fn words_per_row(dim: usize) -> usize {
        dim.div_ceil(64).max(1)
    }

    fn set(&mut self, row: usize, col: usize) {
        self.bits[row * self.words_per_row + col / 64] |= 1u64 << (col % 64);
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.bits[row * self.words_per_row + col / 64] >> (col % 64) & 1 == 1
    }

    fn row_words(&self, row: usize) -> &[u64] {
        &self.bits[row * self.words_per_row..(row + 1) * self.words_per_row]
    }

    pub fn row_sum(&self, row: usize) -> usize {
        self.row_words(row)
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self.get(c, r))
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    /// Positions of the set bits in `row`.
    pub fn row_support(&self, row: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.dim).filter(move |&c| self.get(row, c))
    }

    /// Entrywise AND.
    pub fn and(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "matrix dimension mismatch");
        BinaryMatrix {
            dim: self.dim,
            words_per_row: self.words_per_row,
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    /// Integer product `self * other`, computed by popcounts.
    pub fn mul_counts(&self, other: &Self) -> CountMatrix {
        assert_eq!(self.dim, other.dim, "matrix dimension mismatch");
        let d = self.dim;
        let cols = other.transpose();
        let entries: Vec<i64> = (0..d)
            .into_par_iter()
            .flat_map_iter(|r| {
                let row = self.row_words(r);
                let cols = &cols;
                (0..d).map(move |c| {
                    row.iter()
                        .zip(cols.row_words(c))
                        .map(|(a, b)| (a & b).count_ones() as i64)
                        .sum::<i64>()
                })
            })
            .collect();
        CountMatrix { dim: d, entries }
    }

    pub fn to_counts(&self) -> CountMatrix {
        CountMatrix::from_fn(self.dim, |r, c| i64::from(self.get(r, c)))
    }

    pub fn to_exact(&self) -> ExactMatrix {
        ExactMatrix::from_fn(self.dim, |r, c| int(i64::from(self.get(r, c))))
    }
}

/// Dense integer matrix, used for products of 0/1 matrices before any
/// rational coefficient enters.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CountMatrix {
    dim: usize,
    entries: Vec<i64>,
}

impl CountMatrix {
    pub fn zeros(dim: usize) -> Self {
        CountMatrix {
            dim,
            entries: vec![0; dim * dim],
        }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                entries.push(f(r, c));
            }
        }
        CountMatrix { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.entries[row * self.dim + col]
    }

    /// `self + coeff * m`.
    pub fn add_scaled(&self, coeff: i64, m: &BinaryMatrix) -> Self {
        assert_eq!(self.dim, m.dim(), "matrix dimension mismatch");
        let d = self.dim;
        CountMatrix::from_fn(d, |r, c| {
            self.get(r, c) + if m.get(r, c) { coeff } else { 0 }
        })
    }

    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        self.entries
            .iter()
            .zip(&other.entries)
            .position(|(a, b)| a != b)
            .map(|p| (p / self.dim, p % self.dim))
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|r| (r + 1..self.dim).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn to_exact(&self) -> ExactMatrix {
        ExactMatrix::from_fn(self.dim, |r, c| int(self.get(r, c)))
    }
}
