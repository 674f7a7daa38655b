//! Dense linear algebra over GF(2).
//!
//! Vectors are packed little-endian into 64-bit words: bit `i` lives in word
//! `i / 64` at position `i % 64`. Matrices are stored row-major as a list of
//! [`BitVector`] rows, so elimination is a sequence of word-wise row XORs.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

const WORD: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

fn tail_mask(len: usize) -> u64 {
    match len % WORD {
        0 => u64::MAX,
        r => (1u64 << r) - 1,
    }
}

/// A fixed-length binary vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Builds a vector from raw words; bits past `len` are cleared.
    pub fn from_words(len: usize, mut words: Vec<u64>) -> Self {
        words.resize(words_for(len), 0);
        if let Some(last) = words.last_mut() {
            *last &= tail_mask(len);
        }
        BitVector { len, words }
    }

    /// Vector with ones at the given positions.
    pub fn from_support(len: usize, support: &[usize]) -> Self {
        let mut v = Self::zeros(len);
        for &i in support {
            v.set(i, true);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVector) -> BitVector {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BitVector) -> bool {
        debug_assert_eq!(self.len, other.len);
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones & 1 == 1
    }

    pub fn distance(&self, other: &BitVector) -> usize {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD + b)
            })
        })
    }

    /// Lexicographic comparison with bit 0 most significant.
    pub fn lex_cmp(&self, other: &BitVector) -> Ordering {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter().zip(&other.words) {
            let diff = a ^ b;
            if diff != 0 {
                let low = diff.trailing_zeros();
                return if (a >> low) & 1 == 1 {
                    Ordering::Greater
                } else {
                    Ordering::Less
                };
            }
        }
        Ordering::Equal
    }

    /// Picks the listed coordinates, in order.
    pub fn gather(&self, positions: &[usize]) -> BitVector {
        let mut out = BitVector::zeros(positions.len());
        for (j, &p) in positions.iter().enumerate() {
            if self.get(p) {
                out.set(j, true);
            }
        }
        out
    }

    /// Writes `sub` back into the listed coordinates.
    pub fn scatter(&mut self, positions: &[usize], sub: &BitVector) {
        debug_assert_eq!(positions.len(), sub.len());
        for (j, &p) in positions.iter().enumerate() {
            self.set(p, sub.get(j));
        }
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.len).map(|i| if self.get(i) { '1' } else { '0' }).collect();
        f.write_str(&s)
    }
}

impl FromStr for BitVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut v = BitVector::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, true),
                other => return Err(Error::Parse(format!("unexpected character {other:?} in bit string"))),
            }
        }
        Ok(v)
    }
}

impl Serialize for BitVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BitVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A dense binary matrix, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVector>,
}

/// Result of Gauss-Jordan elimination: the reduced rows and the pivot column
/// of each nonzero row.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: BitMatrix,
    pub pivots: Vec<usize>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix {
            cols,
            rows: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVector>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::Dimension(format!(
                "row of length {} in a matrix with {} columns",
                bad.len(),
                cols
            )));
        }
        Ok(BitMatrix { cols, rows })
    }

    /// Parses rows given as '0'/'1' strings.
    pub fn from_strs(rows: &[&str]) -> Result<Self> {
        let parsed: Vec<BitVector> = rows.iter().map(|r| r.parse()).collect::<Result<_>>()?;
        let cols = parsed.first().map_or(0, BitVector::len);
        Self::from_rows(cols, parsed)
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn row_vectors(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value)
    }

    pub fn push_row(&mut self, row: BitVector) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::Dimension(format!(
                "row of length {} pushed into matrix with {} columns",
                row.len(),
                self.cols
            )));
        }
        self.rows.push(row);
        Ok(())
    }

    /// `M · x` over GF(2); the result has one bit per row.
    pub fn mul_vec(&self, x: &BitVector) -> BitVector {
        assert_eq!(x.len(), self.cols, "vector length must equal column count");
        let mut out = BitVector::zeros(self.rows.len());
        for (i, r) in self.rows.iter().enumerate() {
            if r.dot(x) {
                out.set(i, true);
            }
        }
        out
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows.len());
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.iter_ones() {
                t.set(j, i, true);
            }
        }
        t
    }

    /// Gauss-Jordan elimination. Columns are scanned left to right; the pivot
    /// for a column is the first remaining row (top-down) with that bit set.
    pub fn echelon(&self) -> Echelon {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..self.cols {
            if next == rows.len() {
                break;
            }
            let Some(found) = (next..rows.len()).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(next, found);
            let pivot = rows[next].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != next && row.get(col) {
                    row.xor_assign(&pivot);
                }
            }
            pivots.push(col);
            next += 1;
        }
        rows.truncate(next);
        Echelon {
            reduced: BitMatrix { cols: self.cols, rows },
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of `{x : M x = 0}`, one row per free column (in column order).
    pub fn nullspace_basis(&self) -> BitMatrix {
        let Echelon { reduced, pivots } = self.echelon();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::with_capacity(self.cols - pivots.len());
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = BitVector::zeros(self.cols);
            v.set(free, true);
            for (r, &p) in pivots.iter().enumerate() {
                if reduced.get(r, free) {
                    v.set(p, true);
                }
            }
            basis.push(v);
        }
        BitMatrix {
            cols: self.cols,
            rows: basis,
        }
    }

    /// Sum of the rows selected by the set bits of `mask`.
    pub fn combination(&self, mask: u64) -> BitVector {
        let mut acc = BitVector::zeros(self.cols);
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            acc.xor_assign(&self.rows[i]);
            m &= m - 1;
        }
        acc
    }

    /// Number of vectors of each weight in the row span, by Gray-code
    /// enumeration of all `2^rows` combinations. Rows are assumed independent
    /// (as for a nullspace basis); otherwise counts include multiplicities.
    pub fn span_weight_census(&self) -> Vec<u64> {
        let k = self.rows.len();
        assert!(k < 63, "span enumeration needs fewer than 63 rows");
        let total: u64 = 1 << k;
        let chunk_bits = k.min(14);
        let chunk: u64 = 1 << chunk_bits;
        let chunks = total / chunk;
        let partial: Vec<Vec<u64>> = (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut census = vec![0u64; self.cols + 1];
                let start = c * chunk;
                let mut cur = self.combination(start ^ (start >> 1));
                census[cur.weight()] += 1;
                for i in start + 1..start + chunk {
                    let flip = i.trailing_zeros() as usize;
                    cur.xor_assign(&self.rows[flip]);
                    census[cur.weight()] += 1;
                }
                census
            })
            .collect();
        let mut census = vec![0u64; self.cols + 1];
        for p in partial {
            for (a, b) in census.iter_mut().zip(p) {
                *a += b;
            }
        }
        census
    }
}

impl fmt::Display for BitMatrix {
    /// Text format: `rows cols` on the first line, then one '0'/'1' line per row.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.rows.len(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

impl FromStr for BitMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty matrix text".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad matrix header {header:?}: {e}")))
            })
            .collect::<Result<_>>()?;
        let [rows, cols] = dims[..] else {
            return Err(Error::Parse(format!(
                "matrix header must be `rows cols`, got {header:?}"
            )));
        };
        let mut out = Vec::with_capacity(rows);
        for _ in 0..rows {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("expected {rows} matrix rows")))?;
            let v: BitVector = line.parse()?;
            if v.len() != cols {
                return Err(Error::Parse(format!(
                    "matrix row has {} bits, header says {cols}",
                    v.len()
                )));
            }
            out.push(v);
        }
        if lines.next().is_some() {
            return Err(Error::Parse("trailing lines after matrix rows".into()));
        }
        BitMatrix::from_rows(cols, out)
    }
}

/// `r × n` matrix of i.i.d. uniform bits drawn from ChaCha8 seeded with `seed`.
pub fn random_parity_matrix(r: usize, n: usize, seed: u64) -> BitMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_matrix_from(&mut rng, r, n)
}

/// Same as [`random_parity_matrix`] but drawing from a caller-owned stream.
pub fn random_matrix_from<R: RngCore>(rng: &mut R, r: usize, n: usize) -> BitMatrix {
    let rows = (0..r)
        .map(|_| {
            let words = (0..words_for(n)).map(|_| rng.next_u64()).collect();
            BitVector::from_words(n, words)
        })
        .collect();
    BitMatrix { cols: n, rows }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hamming7() -> BitMatrix {
        BitMatrix::from_strs(&["1010101", "0110011", "0001111"]).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(BitMatrix::identity(3).rank(), 3);
        assert_eq!(BitMatrix::zeros(2, 4).rank(), 0);
        assert_eq!(hamming7().rank(), 3);
    }

    #[test]
    fn nullspace_of_identity_is_trivial() {
        let b = BitMatrix::identity(5).nullspace_basis();
        assert_eq!(b.rows(), 0);
        assert_eq!(b.cols(), 5);
    }

    #[test]
    fn nullspace_of_all_ones_row_is_even_weight_code() {
        let m = BitMatrix::from_strs(&["111"]).unwrap();
        let b = m.nullspace_basis();
        assert_eq!(b.rows(), 2);
        assert_eq!(b.rank(), 2);
        for r in b.row_vectors() {
            assert_eq!(r.weight() % 2, 0);
        }
    }

    #[test]
    fn nullspace_of_hamming_spans_sixteen_codewords() {
        let h = hamming7();
        let b = h.nullspace_basis();
        assert_eq!(b.rows(), 4);
        let mut seen = std::collections::HashSet::new();
        for mask in 0..16u64 {
            let c = b.combination(mask);
            assert!(h.mul_vec(&c).is_zero());
            seen.insert(c);
        }
        assert_eq!(seen.len(), 16);
        assert_eq!(b.span_weight_census(), vec![1, 0, 0, 7, 7, 0, 0, 1]);
    }

    #[test]
    fn random_matrix_is_deterministic() {
        assert_eq!(random_parity_matrix(3, 7, 42), random_parity_matrix(3, 7, 42));
        assert_ne!(random_parity_matrix(3, 7, 42), random_parity_matrix(3, 7, 43));
    }

    #[test]
    fn zero_row_random_matrix_has_full_kernel() {
        let m = random_parity_matrix(0, 5, 9);
        assert_eq!(m.rows(), 0);
        assert_eq!(m.nullspace_basis().rows(), 5);
    }

    #[test]
    fn random_bits_are_balanced() {
        // 10^4 draws of 8x8: 640000 bits, sd of the mean = 0.5/800 = 6.25e-4.
        let mut ones = 0usize;
        for seed in 0..10_000u64 {
            ones += random_parity_matrix(8, 8, seed)
                .row_vectors()
                .iter()
                .map(BitVector::weight)
                .sum::<usize>();
        }
        let frac = ones as f64 / 640_000.0;
        assert!((frac - 0.5).abs() < 0.01, "fraction {frac}");
        assert!((frac - 0.5).abs() < 3.0 * 6.25e-4, "fraction {frac} outside 3 sigma");
    }

    #[test]
    fn text_format_round_trip() {
        let m = hamming7();
        let text = m.to_string();
        assert!(text.starts_with("3 7\n1010101\n"));
        assert_eq!(text.parse::<BitMatrix>().unwrap(), m);
        assert!("2 3\n101\n".parse::<BitMatrix>().is_err());
        assert!("1 3\n1x1\n".parse::<BitMatrix>().is_err());
    }

    #[test]
    fn lex_order_puts_bit_zero_first() {
        let a: BitVector = "0111".parse().unwrap();
        let b: BitVector = "1000".parse().unwrap();
        assert_eq!(a.lex_cmp(&b), Ordering::Less);
        assert_eq!(b.lex_cmp(&a), Ordering::Greater);
        assert_eq!(a.lex_cmp(&a), Ordering::Equal);
        // Across a word boundary.
        let mut c = BitVector::zeros(70);
        let mut d = BitVector::zeros(70);
        c.set(65, true);
        d.set(69, true);
        assert_eq!(c.lex_cmp(&d), Ordering::Greater);
    }

    #[test]
    fn from_words_masks_tail() {
        let v = BitVector::from_words(3, vec![u64::MAX]);
        assert_eq!(v.weight(), 3);
        assert_eq!(v, "111".parse().unwrap());
    }

    #[test]
    fn gather_scatter() {
        let mut x: BitVector = "1100101".parse().unwrap();
        let sub = x.gather(&[6, 0, 3]);
        assert_eq!(sub.to_string(), "110");
        x.scatter(&[6, 0, 3], &"001".parse().unwrap());
        assert_eq!(x.to_string(), "0101100");
    }
}
