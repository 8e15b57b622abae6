use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use super::{bit_len, Scalar};
use crate::error::{Error, Result};

/// Square matrix of exact rationals, row-major.
///
/// Values are immutable once built; every operation returns a fresh matrix so
/// instances can be shared freely across threads.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    dim: usize,
    entries: Vec<Scalar>,
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix({}x{})", self.dim, self.dim)?;
        for r in 0..self.dim {
            let row: Vec<String> = self.row(r).iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl ExactMatrix {
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                entries.push(f(r, c));
            }
        }
        ExactMatrix { dim, entries }
    }

    /// Builds from row-major entries. Fails unless `entries.len() == dim * dim`.
    pub fn from_entries(dim: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::Usage(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                entries.len()
            )));
        }
        Ok(ExactMatrix { dim, entries })
    }

    pub fn zeros(dim: usize) -> Self {
        ExactMatrix {
            dim,
            entries: vec![Scalar::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::scalar(dim, Scalar::one())
    }

    /// `value * I`.
    pub fn scalar(dim: usize, value: Scalar) -> Self {
        Self::from_fn(dim, |r, c| {
            if r == c {
                value.clone()
            } else {
                Scalar::zero()
            }
        })
    }

    /// The all-ones matrix `J`.
    pub fn ones(dim: usize) -> Self {
        ExactMatrix {
            dim,
            entries: vec![Scalar::one(); dim * dim],
        }
    }

    pub fn diagonal(values: Vec<Scalar>) -> Self {
        let dim = values.len();
        let mut m = Self::zeros(dim);
        for (i, v) in values.into_iter().enumerate() {
            m.entries[i * dim + i] = v;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &Scalar {
        &self.entries[row * self.dim + col]
    }

    pub fn row(&self, row: usize) -> &[Scalar] {
        &self.entries[row * self.dim..(row + 1) * self.dim]
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn diagonal_entries(&self) -> Vec<Scalar> {
        (0..self.dim).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn trace(&self) -> Scalar {
        (0..self.dim).fold(Scalar::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self.get(c, r).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|r| (r + 1..self.dim).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.dim).all(|r| (0..self.dim).all(|c| r == c || self.get(r, c).is_zero()))
    }

    /// First position (row-major) where `self` and `other` differ.
    pub fn first_difference(&self, other: &ExactMatrix) -> Option<(usize, usize)> {
        if self.dim != other.dim {
            return Some((0, 0));
        }
        self.entries
            .iter()
            .zip(&other.entries)
            .position(|(a, b)| a != b)
            .map(|p| (p / self.dim, p % self.dim))
    }

    /// First nonzero entry, if any.
    pub fn first_nonzero(&self) -> Option<(usize, usize)> {
        self.entries
            .iter()
            .position(|e| !e.is_zero())
            .map(|p| (p / self.dim, p % self.dim))
    }

    pub fn scale(&self, factor: &Scalar) -> Self {
        ExactMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|e| e * factor).collect(),
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Self {
        assert_eq!(self.dim, other.dim, "matrix dimension mismatch");
        ExactMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    /// Inverse by Gauss-Jordan elimination; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.dim;
        let rows: Vec<Vec<Scalar>> = (0..n).map(|r| self.row(r).to_vec()).collect();
        let rhs: Vec<Vec<Scalar>> = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| {
                        if r == c {
                            Scalar::one()
                        } else {
                            Scalar::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        let sol = solve_system(&rows, &rhs)?;
        Some(ExactMatrix {
            dim: n,
            entries: sol.into_iter().flatten().collect(),
        })
    }

    /// Common denominator and integer numerators of all entries.
    pub(crate) fn integer_form(&self) -> (BigInt, Vec<BigInt>) {
        let denom = self
            .entries
            .iter()
            .fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
        let nums = self
            .entries
            .iter()
            .map(|e| e.numer() * (&denom / e.denom()))
            .collect();
        (denom, nums)
    }

    fn mul_diagonal_left(diag: &Self, other: &Self) -> Self {
        let d = diag.dim;
        Self::from_fn(d, |r, c| diag.get(r, r) * other.get(r, c))
    }

    fn mul_diagonal_right(other: &Self, diag: &Self) -> Self {
        let d = diag.dim;
        Self::from_fn(d, |r, c| other.get(r, c) * diag.get(c, c))
    }

    fn mul_dense(&self, other: &Self) -> Self {
        let d = self.dim;
        let (la, na) = self.integer_form();
        let (lb, nb) = other.integer_form();
        let denom = la * lb;
        let bits_a = na.iter().map(bit_len).max().unwrap_or(0);
        let bits_b = nb.iter().map(bit_len).max().unwrap_or(0);
        let bits_dim = u64::from(usize::BITS - d.leading_zeros());

        let entries: Vec<Scalar> = if bits_a + bits_b + bits_dim < 126 {
            let na: Vec<i128> = na.iter().map(|x| x.to_i128().unwrap()).collect();
            let nb: Vec<i128> = nb.iter().map(|x| x.to_i128().unwrap()).collect();
            let rows: Vec<Vec<i128>> = (0..d)
                .into_par_iter()
                .map(|i| {
                    let mut acc = vec![0i128; d];
                    for k in 0..d {
                        let a = na[i * d + k];
                        if a == 0 {
                            continue;
                        }
                        for (slot, b) in acc.iter_mut().zip(&nb[k * d..(k + 1) * d]) {
                            *slot += a * b;
                        }
                    }
                    acc
                })
                .collect();
            rows.into_iter()
                .flatten()
                .map(|x| Scalar::new(BigInt::from(x), denom.clone()))
                .collect()
        } else {
            let rows: Vec<Vec<BigInt>> = (0..d)
                .into_par_iter()
                .map(|i| {
                    let mut acc = vec![BigInt::zero(); d];
                    for k in 0..d {
                        let a = &na[i * d + k];
                        if a.is_zero() {
                            continue;
                        }
                        for (slot, b) in acc.iter_mut().zip(&nb[k * d..(k + 1) * d]) {
                            if !b.is_zero() {
                                *slot += a * b;
                            }
                        }
                    }
                    acc
                })
                .collect();
            rows.into_iter()
                .flatten()
                .map(|x| Scalar::new(x, denom.clone()))
                .collect()
        };
        ExactMatrix { dim: d, entries }
    }

    fn product(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "matrix dimension mismatch");
        if self.is_diagonal() {
            Self::mul_diagonal_left(self, other)
        } else if other.is_diagonal() {
            Self::mul_diagonal_right(self, other)
        } else {
            self.mul_dense(other)
        }
    }

    /// `self * self * ... ` (`exp` factors); `I` for `exp == 0`.
    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::identity(self.dim), |acc, _| &acc * self)
    }

    /// `ab + ba`.
    pub fn anticommutator(&self, other: &Self) -> Self {
        &(self * other) + &(other * self)
    }

    /// `ab - ba`.
    pub fn bracket(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn hadamard(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a * b)
    }
}

fn check_dims(a: &ExactMatrix, b: &ExactMatrix) -> Result<()> {
    if a.dim != b.dim {
        return Err(Error::Usage(format!(
            "dimension mismatch: {} vs {}",
            a.dim, b.dim
        )));
    }
    Ok(())
}

/// Exact matrix product.
pub fn mat_mul(a: &ExactMatrix, b: &ExactMatrix) -> Result<ExactMatrix> {
    check_dims(a, b)?;
    Ok(a.product(b))
}

/// Entrywise product.
pub fn hadamard(a: &ExactMatrix, b: &ExactMatrix) -> Result<ExactMatrix> {
    check_dims(a, b)?;
    Ok(a.hadamard(b))
}

/// `ab - ba`.
pub fn commutator(a: &ExactMatrix, b: &ExactMatrix) -> Result<ExactMatrix> {
    check_dims(a, b)?;
    Ok(a.bracket(b))
}

impl Mul for &ExactMatrix {
    type Output = ExactMatrix;
    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.product(rhs)
    }
}

impl Add for &ExactMatrix {
    type Output = ExactMatrix;
    fn add(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &ExactMatrix {
    type Output = ExactMatrix;
    fn sub(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &ExactMatrix {
    type Output = ExactMatrix;
    fn neg(self) -> ExactMatrix {
        ExactMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|e| -e).collect(),
        }
    }
}

/// Solves `A X = B` exactly for a rectangular `A` (m rows, d columns) and
/// right-hand side `B` (m rows, c columns).
///
/// Returns `None` if `A` has rank below `d` or the system is inconsistent.
/// Overdetermined but consistent systems are accepted.
pub fn solve_system(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Option<Vec<Vec<Scalar>>> {
    let m = a.len();
    if m != b.len() {
        return None;
    }
    let d = a.first().map_or(0, Vec::len);
    let c = b.first().map_or(0, Vec::len);
    let mut rows: Vec<Vec<Scalar>> = a
        .iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().chain(rb).cloned().collect())
        .collect();

    let mut pivot_row = 0;
    for col in 0..d {
        let found = (pivot_row..m).find(|&r| !rows[r][col].is_zero())?;
        rows.swap(pivot_row, found);
        let inv = rows[pivot_row][col].recip();
        for e in rows[pivot_row].iter_mut() {
            *e *= &inv;
        }
        let pivot = rows[pivot_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == pivot_row || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (e, p) in row.iter_mut().zip(&pivot) {
                if !p.is_zero() {
                    *e -= &f * p;
                }
            }
        }
        pivot_row += 1;
    }
    // remaining rows must be consistent
    if rows[d..]
        .iter()
        .any(|row| row[d..].iter().any(|e| !e.is_zero()))
    {
        return None;
    }
    Some(
        rows.into_iter()
            .take(d)
            .map(|row| row[d..d + c].to_vec())
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, ratio};

    fn small(entries: &[i64], dim: usize) -> ExactMatrix {
        ExactMatrix::from_entries(dim, entries.iter().map(|&e| int(e)).collect()).unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let m = small(&[1, 2, 3, 4, 5, 6, 7, 8, 9], 3);
        assert_eq!(&ExactMatrix::identity(3) * &m, m);
        assert_eq!(&m * &ExactMatrix::identity(3), m);
    }

    #[test]
    fn ones_squared_is_v_times_ones() {
        let j = ExactMatrix::ones(5);
        assert_eq!(&j * &j, j.scale(&int(5)));
    }

    #[test]
    fn dimension_mismatch_is_usage_error() {
        let a = ExactMatrix::identity(2);
        let b = ExactMatrix::identity(3);
        assert!(matches!(mat_mul(&a, &b), Err(Error::Usage(_))));
        assert!(matches!(hadamard(&a, &b), Err(Error::Usage(_))));
        assert!(matches!(commutator(&a, &b), Err(Error::Usage(_))));
    }

    #[test]
    fn hadamard_with_ones_is_neutral() {
        let m = small(&[1, -2, 3, 0], 2);
        assert_eq!(hadamard(&m, &ExactMatrix::ones(2)).unwrap(), m);
    }

    #[test]
    fn self_commutator_vanishes() {
        let m = small(&[1, 2, 3, 4], 2);
        assert!(commutator(&m, &m).unwrap().is_zero());
    }

    #[test]
    fn diagonal_matrices_commute() {
        let a = ExactMatrix::diagonal(vec![int(1), ratio(1, 2), int(-3)]);
        let b = ExactMatrix::diagonal(vec![int(7), int(0), ratio(5, 3)]);
        assert!(commutator(&a, &b).unwrap().is_zero());
    }

    #[test]
    fn rational_product_matches_naive() {
        let a = ExactMatrix::from_fn(4, |r, c| {
            ratio(r as i64 - 2 * c as i64, 1 + r as i64 + c as i64)
        });
        let b = ExactMatrix::from_fn(4, |r, c| ratio(3 * r as i64 + c as i64 + 1, 2 + c as i64));
        let naive = ExactMatrix::from_fn(4, |r, c| {
            (0..4).fold(Scalar::zero(), |acc, k| acc + a.get(r, k) * b.get(k, c))
        });
        assert_eq!(&a * &b, naive);
    }

    #[test]
    fn huge_entries_take_the_bigint_path() {
        let big = int(1 << 62) * int(1 << 62);
        let a = ExactMatrix::from_fn(3, |r, c| &big * int((r + c) as i64 + 1));
        let naive = ExactMatrix::from_fn(3, |r, c| {
            (0..3).fold(Scalar::zero(), |acc, k| acc + a.get(r, k) * a.get(k, c))
        });
        assert_eq!(&a * &a, naive);
    }

    #[test]
    fn inverse_roundtrip_and_singular() {
        let m = small(&[2, 1, 0, 1, 3, 1, 0, 1, 4], 3);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, ExactMatrix::identity(3));
        assert!(small(&[1, 2, 2, 4], 2).inverse().is_none());
    }

    #[test]
    fn overdetermined_consistent_system() {
        // columns (1,1,0,0) and (0,0,1,1); rhs = 2*col0 - col1
        let a = vec![
            vec![int(1), int(0)],
            vec![int(1), int(0)],
            vec![int(0), int(1)],
            vec![int(0), int(1)],
        ];
        let b = vec![vec![int(2)], vec![int(2)], vec![int(-1)], vec![int(-1)]];
        let x = solve_system(&a, &b).unwrap();
        assert_eq!(x, vec![vec![int(2)], vec![int(-1)]]);
        let bad = vec![vec![int(2)], vec![int(3)], vec![int(-1)], vec![int(-1)]];
        assert!(solve_system(&a, &bad).is_none());
    }
}
