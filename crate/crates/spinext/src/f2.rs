//! Bit-packed vectors and matrices over the two-element field.
//!
//! Bit index 0 lives in the lowest-order bit of the first packed word.
//! The text form of a vector is a '0'/'1' string with index 0 leftmost;
//! a matrix is a list of row strings. All bits beyond `dim - 1` are kept
//! zero so that equality, hashing and ordering are plain word comparisons.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

fn words_for(dim: usize) -> usize {
    dim.div_ceil(WORD_BITS)
}

/// A vector over GF(2) of fixed dimension.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Vec {
    dim: usize,
    words: Vec<u64>,
}

impl F2Vec {
    pub fn zeros(dim: usize) -> Self {
        F2Vec {
            dim,
            words: vec![0; words_for(dim)],
        }
    }

    /// The standard basis vector e_i.
    pub fn basis(dim: usize, i: usize) -> Self {
        assert!(i < dim, "basis index {i} out of range for dim {dim}");
        let mut v = Self::zeros(dim);
        v.set(i, true);
        v
    }

    /// Vector whose bit k is bit k of `index`. Requires dim <= 64.
    pub fn from_index(dim: usize, index: u64) -> Self {
        assert!(dim <= 64, "from_index requires dim <= 64");
        let mut v = Self::zeros(dim);
        if dim > 0 {
            v.words[0] = index & mask_low(dim);
        }
        v
    }

    /// Low word of the packed representation; inverse of `from_index` for dim <= 64.
    pub fn to_index(&self) -> u64 {
        assert!(self.dim <= 64, "to_index requires dim <= 64");
        self.words.first().copied().unwrap_or(0)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.dim, "bit index {i} out of range for dim {}", self.dim);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.dim, "bit index {i} out of range for dim {}", self.dim);
        let w = i / WORD_BITS;
        let b = i % WORD_BITS;
        if value {
            self.words[w] |= 1 << b;
        } else {
            self.words[w] &= !(1 << b);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn check_dim(&self, other: &F2Vec) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        Ok(())
    }

    /// Componentwise XOR.
    pub fn add(&self, other: &F2Vec) -> Result<F2Vec> {
        self.check_dim(other)?;
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a ^ b)
            .collect();
        Ok(F2Vec {
            dim: self.dim,
            words,
        })
    }

    pub fn add_assign(&mut self, other: &F2Vec) -> Result<()> {
        self.check_dim(other)?;
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
        Ok(())
    }

    /// Parity of the bitwise AND.
    pub fn dot(&self, other: &F2Vec) -> Result<bool> {
        self.check_dim(other)?;
        let parity: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        Ok(parity & 1 == 1)
    }

    /// Swap bits 2k and 2k+1 for every k. Used by the symplectic pairing.
    pub(crate) fn swap_adjacent(&self) -> F2Vec {
        debug_assert!(self.dim % 2 == 0);
        const EVEN: u64 = 0x5555_5555_5555_5555;
        let words = self
            .words
            .iter()
            .map(|&w| ((w & EVEN) << 1) | ((w >> 1) & EVEN))
            .collect();
        F2Vec {
            dim: self.dim,
            words,
        }
    }

    pub fn to_bit_string(&self) -> String {
        (0..self.dim)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect()
    }
}

fn mask_low(bits: usize) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

impl FromStr for F2Vec {
    type Err = Error;

    fn from_str(s: &str) -> Result<F2Vec> {
        let mut v = F2Vec::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, true),
                _ => return Err(Error::BadBitString(s.to_string())),
            }
        }
        Ok(v)
    }
}

impl fmt::Display for F2Vec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bit_string())
    }
}

impl fmt::Debug for F2Vec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2Vec({})", self.to_bit_string())
    }
}

// Lexicographic on the bit string, index 0 most significant.
impl Ord for F2Vec {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dim.cmp(&other.dim).then_with(|| {
            for (a, b) in self.words.iter().zip(&other.words) {
                let ord = a.reverse_bits().cmp(&b.reverse_bits());
                if ord != Ordering::Equal {
                    return ord;
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for F2Vec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A matrix over GF(2), stored as packed bit-rows.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2Mat {
    rows: usize,
    cols: usize,
    data: Vec<F2Vec>,
}

impl F2Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        F2Mat {
            rows,
            cols,
            data: vec![F2Vec::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(data: Vec<F2Vec>) -> Result<Self> {
        let cols = data.first().map_or(0, F2Vec::dim);
        for row in &data {
            if row.dim() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    got: row.dim(),
                });
            }
        }
        Ok(F2Mat {
            rows: data.len(),
            cols,
            data,
        })
    }

    pub fn from_columns(cols: &[F2Vec]) -> Result<Self> {
        Ok(Self::from_rows(cols.to_vec())?.transpose())
    }

    pub fn from_bit_strings(rows: &[&str]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.parse()).collect::<Result<_>>()?)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.data[i].set(j, value);
    }

    pub fn row(&self, i: usize) -> &F2Vec {
        &self.data[i]
    }

    pub fn column(&self, j: usize) -> F2Vec {
        let mut v = F2Vec::zeros(self.rows);
        for i in 0..self.rows {
            if self.get(i, j) {
                v.set(i, true);
            }
        }
        v
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Matrix-vector product; entry i is row_i . v.
    pub fn apply(&self, v: &F2Vec) -> Result<F2Vec> {
        if self.cols != v.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: v.dim(),
            });
        }
        let mut out = F2Vec::zeros(self.rows);
        for i in 0..self.rows {
            if self.data[i].dot(v)? {
                out.set(i, true);
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &F2Mat) -> Result<F2Mat> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        // row_i(AB) = sum over k with A[i,k] = 1 of row_k(B)
        let mut data = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut row = F2Vec::zeros(other.cols);
            for k in 0..self.cols {
                if self.get(i, k) {
                    row.add_assign(&other.data[k])?;
                }
            }
            data.push(row);
        }
        Ok(F2Mat {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    pub fn transpose(&self) -> F2Mat {
        let mut m = F2Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    m.set(j, i, true);
                }
            }
        }
        m
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.data.clone();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot) = (rank..rows.len()).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(rank, pivot);
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row.get(col) {
                    row.add_assign(&pivot_row).unwrap();
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Gauss-Jordan elimination over GF(2).
    pub fn inverse(&self) -> Result<F2Mat> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: self.cols,
            });
        }
        let n = self.rows;
        let mut mat = self.data.clone();
        let mut inv: Vec<F2Vec> = (0..n).map(|i| F2Vec::basis(n, i)).collect();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| mat[r].get(col)) else {
                return Err(Error::SingularMatrix);
            };
            mat.swap(col, pivot);
            inv.swap(col, pivot);
            let (mrow, irow) = (mat[col].clone(), inv[col].clone());
            for r in 0..n {
                if r != col && mat[r].get(col) {
                    mat[r].add_assign(&mrow).unwrap();
                    inv[r].add_assign(&irow).unwrap();
                }
            }
        }
        F2Mat::from_rows(inv)
    }

    pub fn to_bit_strings(&self) -> Vec<String> {
        self.data.iter().map(F2Vec::to_bit_string).collect()
    }

    /// Basis of the right null space, i.e. all v with Mv = 0.
    pub fn null_space(&self) -> Vec<F2Vec> {
        let mut rows = self.data.clone();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot) = (rank..rows.len()).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(rank, pivot);
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row.get(col) {
                    row.add_assign(&pivot_row).unwrap();
                }
            }
            pivots.push(col);
            rank += 1;
        }
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = F2Vec::zeros(self.cols);
            v.set(f, true);
            for (r, &p) in pivots.iter().enumerate() {
                if rows[r].get(f) {
                    v.set(p, true);
                }
            }
            basis.push(v);
        }
        basis
    }
}

impl fmt::Debug for F2Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2Mat{:?}", self.to_bit_strings())
    }
}

impl fmt::Display for F2Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.data.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{row}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> F2Vec {
        s.parse().unwrap()
    }

    #[test]
    fn vec_add_examples() {
        assert_eq!(v("01").add(&v("11")).unwrap(), v("10"));
        let x = v("1011");
        assert!(x.add(&x).unwrap().is_zero());
        assert_eq!(x.add(&F2Vec::zeros(4)).unwrap(), x);
        assert!(matches!(
            v("01").add(&v("011")),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn dot_examples() {
        assert!(v("11").dot(&v("10")).unwrap());
        assert!(!v("1101").dot(&F2Vec::zeros(4)).unwrap());
        assert!(!v("11").dot(&v("11")).unwrap());
    }

    #[test]
    fn mat_vec_examples() {
        let id = F2Mat::identity(3);
        assert_eq!(id.apply(&v("101")).unwrap(), v("101"));
        let zero = F2Mat::zeros(3, 3);
        assert!(zero.apply(&v("111")).unwrap().is_zero());
        let m = F2Mat::from_bit_strings(&["01", "11"]).unwrap();
        assert_eq!(m.apply(&v("10")).unwrap(), v("01"));
    }

    #[test]
    fn mat_mul_examples() {
        let m = F2Mat::from_bit_strings(&["01", "11"]).unwrap();
        assert_eq!(m.mul(&F2Mat::identity(2)).unwrap(), m);
        // this element has order 3 in GL(2,2)
        let cube = m.mul(&m).unwrap().mul(&m).unwrap();
        assert_eq!(cube, F2Mat::identity(2));
        let e = F2Mat::from_bit_strings(&["10", "11"]).unwrap();
        assert_eq!(e.mul(&e).unwrap(), F2Mat::identity(2));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(F2Mat::identity(4).inverse().unwrap(), F2Mat::identity(4));
        let e = F2Mat::from_bit_strings(&["10", "11"]).unwrap();
        assert_eq!(e.inverse().unwrap(), e);
        let sing = F2Mat::from_bit_strings(&["11", "11"]).unwrap();
        assert_eq!(sing.inverse(), Err(Error::SingularMatrix));
    }

    #[test]
    fn add_exhaustive_small_dims() {
        // associativity, commutativity, self-inverse over every dim <= 8 triple
        for dim in 0..=8usize {
            let n: u64 = 1 << dim;
            for a in 0..n {
                let va = F2Vec::from_index(dim, a);
                assert_eq!(va.add(&va).unwrap(), F2Vec::zeros(dim));
                for b in 0..n {
                    let vb = F2Vec::from_index(dim, b);
                    assert_eq!(va.add(&vb).unwrap(), vb.add(&va).unwrap());
                    assert_eq!(va.add(&vb).unwrap().to_index(), a ^ b);
                }
            }
        }
    }

    #[test]
    fn mul_apply_associativity_randomized() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(1..=16usize);
            let rand_mat = |rng: &mut rand_chacha::ChaCha8Rng| {
                let mut m = F2Mat::zeros(n, n);
                for i in 0..n {
                    for j in 0..n {
                        m.set(i, j, rng.gen());
                    }
                }
                m
            };
            let a = rand_mat(&mut rng);
            let b = rand_mat(&mut rng);
            let x = F2Vec::from_index(n, rng.gen_range(0..(1u64 << n)));
            assert_eq!(
                a.mul(&b).unwrap().apply(&x).unwrap(),
                a.apply(&b.apply(&x).unwrap()).unwrap()
            );
        }
    }

    #[test]
    fn inverse_round_trip_randomized() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut found = 0;
        while found < 100 {
            let n = rng.gen_range(1..=12usize);
            let mut m = F2Mat::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    m.set(i, j, rng.gen());
                }
            }
            let Ok(inv) = m.inverse() else { continue };
            found += 1;
            assert_eq!(m.mul(&inv).unwrap(), F2Mat::identity(n));
            assert_eq!(inv.mul(&m).unwrap(), F2Mat::identity(n));
        }
    }

    #[test]
    fn bit_string_round_trip() {
        let s = "0110100101";
        assert_eq!(v(s).to_bit_string(), s);
        assert!(matches!("01x".parse::<F2Vec>(), Err(Error::BadBitString(_))));
    }

    #[test]
    fn ordering_is_lexicographic_on_bit_strings() {
        let mut vecs: Vec<F2Vec> = (0..32).map(|i| F2Vec::from_index(5, i)).collect();
        vecs.sort();
        let strings: Vec<String> = vecs.iter().map(F2Vec::to_bit_string).collect();
        let mut sorted = strings.clone();
        sorted.sort();
        assert_eq!(strings, sorted);
    }

    #[test]
    fn null_space_of_singular_matrix() {
        let m = F2Mat::from_bit_strings(&["110", "110", "001"]).unwrap();
        let ns = m.null_space();
        assert_eq!(ns.len(), 1);
        for b in &ns {
            assert!(m.apply(b).unwrap().is_zero());
        }
    }
}
