//! Short binary linear codes used as constituent codes at the vertices of a
//! hypergraph, with exact weight enumerators and exhaustive decoding.

use std::cmp::Ordering;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};

/// Largest dimension for which codewords are enumerated exhaustively.
pub const ENUMERATION_CAP: usize = 26;

/// Codes up to this dimension keep their full codeword list in memory.
const TABLE_CAP: usize = 16;

/// Primitive polynomial x^5 + x^2 + 1 defining GF(32) for the BCH code.
pub const BCH31_PRIMITIVE_POLY: u32 = 0b100101;

/// Golay [23,12,7] generator polynomial x^11+x^10+x^6+x^5+x^4+x^2+1.
pub const GOLAY23_GENERATOR: u64 = 0b1100_0111_0101;

#[derive(Clone, Debug)]
pub struct LocalCode {
    name: Option<String>,
    n: usize,
    k: usize,
    parity_check: BitMatrix,
    generator: BitMatrix,
    d1: usize,
    weight_enumerator: Vec<u64>,
    table: Option<Vec<BitVector>>,
}

impl LocalCode {
    /// Builds the code `{x : H x = 0}` and enumerates it.
    pub fn from_parity_check(parity_check: BitMatrix) -> Result<Self> {
        Self::from_parity_check_with_cap(parity_check, ENUMERATION_CAP)
    }

    pub fn from_parity_check_with_cap(parity_check: BitMatrix, cap: usize) -> Result<Self> {
        let n = parity_check.cols();
        if n == 0 {
            return Err(Error::InvalidParameter("local code length must be at least 1".into()));
        }
        let generator = parity_check.nullspace_basis();
        let k = generator.rows();
        if k > cap {
            return Err(Error::SizeCap(format!(
                "local code dimension {k} exceeds the enumeration cap {cap}"
            )));
        }
        let weight_enumerator = generator.span_weight_census();
        let d1 = weight_enumerator
            .iter()
            .skip(1)
            .position(|&a| a > 0)
            .map_or(0, |i| i + 1);
        let table = (k <= TABLE_CAP).then(|| (0..1u64 << k).map(|m| generator.combination(m)).collect());
        Ok(LocalCode {
            name: None,
            n,
            k,
            parity_check,
            generator,
            d1,
            weight_enumerator,
            table,
        })
    }

    /// Builds the code spanned by the rows of `generator`.
    pub fn from_generator(generator: &BitMatrix) -> Result<Self> {
        Self::from_parity_check(generator.nullspace_basis())
    }

    fn named(mut self, name: &str) -> Self {
        self.name = Some(name.to_string());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Minimum distance; 0 for the zero-dimensional code.
    pub fn d1(&self) -> usize {
        self.d1
    }

    pub fn rate(&self) -> f64 {
        self.k as f64 / self.n as f64
    }

    pub fn relative_distance(&self) -> f64 {
        self.d1 as f64 / self.n as f64
    }

    pub fn parity_check(&self) -> &BitMatrix {
        &self.parity_check
    }

    pub fn generator(&self) -> &BitMatrix {
        &self.generator
    }

    /// Codeword counts `a_0..a_n` by weight.
    pub fn weight_enumerator(&self) -> &[u64] {
        &self.weight_enumerator
    }

    pub fn contains(&self, y: &BitVector) -> bool {
        y.len() == self.n && self.parity_check.mul_vec(y).is_zero()
    }

    fn for_each_codeword(&self, mut f: impl FnMut(&BitVector)) {
        if let Some(table) = &self.table {
            table.iter().for_each(f);
            return;
        }
        let mut cur = BitVector::zeros(self.n);
        f(&cur);
        for i in 1..1u64 << self.k {
            cur.xor_assign(self.generator.row(i.trailing_zeros() as usize));
            f(&cur);
        }
    }

    /// Closest codeword to `y`; among equally close codewords the
    /// lexicographically smallest one (bit 0 most significant).
    pub fn nearest_codeword(&self, y: &BitVector) -> (BitVector, usize) {
        let (c, d, _) = self.nearest_codeword_with_ties(y);
        (c, d)
    }

    /// Like [`nearest_codeword`](Self::nearest_codeword), also returning how
    /// many codewords share the minimum distance.
    pub fn nearest_codeword_with_ties(&self, y: &BitVector) -> (BitVector, usize, usize) {
        assert_eq!(y.len(), self.n, "received word has wrong length");
        if self.contains(y) {
            return (y.clone(), 0, 1);
        }
        let mut best: Option<BitVector> = None;
        let mut best_d = usize::MAX;
        let mut ties = 0;
        self.for_each_codeword(|c| {
            let d = c.distance(y);
            match d.cmp(&best_d) {
                Ordering::Less => {
                    best_d = d;
                    best = Some(c.clone());
                    ties = 1;
                }
                Ordering::Equal => {
                    ties += 1;
                    if best.as_ref().is_some_and(|b| c.lex_cmp(b) == Ordering::Less) {
                        best = Some(c.clone());
                    }
                }
                Ordering::Greater => {}
            }
        });
        (best.expect("a linear code always contains the zero word"), best_d, ties)
    }

    /// The threshold decoder: replace `y` by its nearest codeword only if that
    /// codeword is within `d1 / kappa`, otherwise leave it untouched.
    pub fn threshold_decode(&self, y: &BitVector, kappa: Kappa) -> BitVector {
        let (c, dist) = self.nearest_codeword(y);
        if kappa.admits(dist, self.d1) {
            c
        } else {
            y.clone()
        }
    }

    pub fn to_file_string(&self) -> String {
        format!("localcode n={}\n{}", self.n, self.parity_check)
    }

    pub fn from_file_str(s: &str) -> Result<Self> {
        let s = s.trim_start();
        let (header, rest) = s.split_once('\n').unwrap_or((s, ""));
        let n = header
            .trim()
            .strip_prefix("localcode n=")
            .and_then(|v| v.trim().parse::<usize>().ok())
            .ok_or_else(|| Error::Parse(format!("bad local code header {header:?}")))?;
        let h: BitMatrix = rest.parse()?;
        if h.cols() != n {
            return Err(Error::Parse(format!(
                "local code header says n={n} but parity check has {} columns",
                h.cols()
            )));
        }
        Self::from_parity_check(h)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
        Self::from_file_str(&text)
    }
}

impl PartialEq for LocalCode {
    fn eq(&self, other: &Self) -> bool {
        self.parity_check == other.parity_check
    }
}

/// Canonical codes by name: `hamming_<2^r-1>`, `bch_31_21`, `golay_23`,
/// `repetition_<n>` and `full_space_<n>`.
pub fn make_named_code(name: &str) -> Result<LocalCode> {
    let unknown = || Error::UnknownCode(name.to_string());
    let code = if let Some(n) = name.strip_prefix("hamming_") {
        let n: usize = n.parse().map_err(|_| unknown())?;
        if n < 3 || !(n + 1).is_power_of_two() {
            return Err(unknown());
        }
        LocalCode::from_parity_check(hamming_parity_check(n.trailing_ones() as usize))?
    } else if name == "bch_31_21" {
        LocalCode::from_generator(&cyclic_generator_matrix(bch31_21_generator_poly(), 31))?
    } else if name == "golay_23" {
        LocalCode::from_generator(&cyclic_generator_matrix(GOLAY23_GENERATOR, 23))?
    } else if let Some(n) = name.strip_prefix("repetition_") {
        let n: usize = n.parse().map_err(|_| unknown())?;
        if n == 0 {
            return Err(unknown());
        }
        let mut h = BitMatrix::zeros(n - 1, n);
        for i in 0..n - 1 {
            h.set(i, 0, true);
            h.set(i, i + 1, true);
        }
        LocalCode::from_parity_check(h)?
    } else if let Some(n) = name.strip_prefix("full_space_") {
        let n: usize = n.parse().map_err(|_| unknown())?;
        if n == 0 {
            return Err(unknown());
        }
        LocalCode::from_parity_check(BitMatrix::zeros(0, n))?
    } else {
        return Err(unknown());
    };
    Ok(code.named(name))
}

/// Parity check of the length `2^r - 1` Hamming code: column `j` is the
/// binary expansion of `j + 1`, least significant bit in row 0.
pub fn hamming_parity_check(r: usize) -> BitMatrix {
    let n = (1usize << r) - 1;
    let mut h = BitMatrix::zeros(r, n);
    for j in 0..n {
        for i in 0..r {
            if ((j + 1) >> i) & 1 == 1 {
                h.set(i, j, true);
            }
        }
    }
    h
}

/// Generator matrix of a cyclic code: rows are `x^i g(x)`, `i < n - deg g`.
/// Bit `j` of `poly` is the coefficient of `x^j`.
pub fn cyclic_generator_matrix(poly: u64, n: usize) -> BitMatrix {
    let deg = 63 - poly.leading_zeros() as usize;
    let k = n - deg;
    let mut g = BitMatrix::zeros(k, n);
    for i in 0..k {
        for j in 0..=deg {
            if (poly >> j) & 1 == 1 {
                g.set(i, i + j, true);
            }
        }
    }
    g
}

fn gf32_mul(a: u32, b: u32) -> u32 {
    let mut acc = 0;
    let mut a = a;
    let mut b = b;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a & 0b100000 != 0 {
            a ^= BCH31_PRIMITIVE_POLY;
        }
    }
    acc
}

fn gf32_pow(base: u32, e: usize) -> u32 {
    (0..e).fold(1, |acc, _| gf32_mul(acc, base))
}

/// Minimal polynomial over GF(2) of `alpha^j`, alpha a root of the primitive polynomial.
fn gf32_minimal_poly(j: usize) -> u64 {
    let mut conj = Vec::new();
    let mut e = j % 31;
    while !conj.contains(&e) {
        conj.push(e);
        e = (2 * e) % 31;
    }
    // Product of (x + alpha^e) with GF(32) coefficients, lowest degree first.
    let alpha = 0b10;
    let mut poly: Vec<u32> = vec![1];
    for &e in &conj {
        let root = gf32_pow(alpha, e);
        let mut next = vec![0u32; poly.len() + 1];
        for (i, &c) in poly.iter().enumerate() {
            next[i + 1] ^= c;
            next[i] ^= gf32_mul(c, root);
        }
        poly = next;
    }
    poly.iter().enumerate().fold(0u64, |acc, (i, &c)| {
        debug_assert!(c <= 1, "minimal polynomial must have binary coefficients");
        acc | (u64::from(c) << i)
    })
}

fn gf2_poly_mul(a: u64, b: u64) -> u64 {
    (0..64).filter(|i| (b >> i) & 1 == 1).fold(0, |acc, i| acc ^ (a << i))
}

/// Generator of the primitive double-error-correcting BCH code of length 31:
/// the product of the minimal polynomials of alpha and alpha^3.
pub fn bch31_21_generator_poly() -> u64 {
    gf2_poly_mul(gf32_minimal_poly(1), gf32_minimal_poly(3))
}

/// A rational threshold divisor `kappa = num / den >= 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Kappa {
    num: u64,
    den: u64,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl Kappa {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num < 2 * den {
            return Err(Error::InvalidParameter(format!(
                "kappa must be a rational >= 2, got {num}/{den}"
            )));
        }
        let g = gcd(num, den);
        Ok(Kappa {
            num: num / g,
            den: den / g,
        })
    }

    pub fn integer(k: u64) -> Result<Self> {
        Self::new(k, 1)
    }

    pub fn numer(&self) -> u64 {
        self.num
    }

    pub fn denom(&self) -> u64 {
        self.den
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `dist <= d1 / kappa`, evaluated exactly.
    pub fn admits(&self, dist: usize, d1: usize) -> bool {
        (dist as u128) * (self.num as u128) <= (d1 as u128) * (self.den as u128)
    }
}

impl fmt::Display for Kappa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Kappa {
    type Err = Error;

    /// Accepts `p`, `p/q` or a terminating decimal such as `3.25`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("cannot parse kappa from {s:?}"));
        if let Some((p, q)) = s.split_once('/') {
            return Kappa::new(
                p.trim().parse().map_err(|_| bad())?,
                q.trim().parse().map_err(|_| bad())?,
            );
        }
        if let Some((int, frac)) = s.split_once('.') {
            if frac.len() > 9 || !frac.chars().all(|c| c.is_ascii_digit()) {
                return Err(bad());
            }
            let den = 10u64.pow(frac.len() as u32);
            let int: u64 = if int.is_empty() {
                0
            } else {
                int.parse().map_err(|_| bad())?
            };
            let frac: u64 = if frac.is_empty() {
                0
            } else {
                frac.parse().map_err(|_| bad())?
            };
            return Kappa::new(int * den + frac, den);
        }
        Kappa::integer(s.parse().map_err(|_| bad())?)
    }
}

impl Serialize for Kappa {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Kappa {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}
