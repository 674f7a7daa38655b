//! The code `C(H, {A_v})`: words of length `N` whose restriction to the edges
//! at every vertex is a codeword of that vertex's local code.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf2::{random_matrix_from, BitMatrix, BitVector};
use crate::hypergraphs::{path_hypergraph, random_hypergraph, Graph, Hypergraph};
use crate::local_codes::{make_named_code, LocalCode, ENUMERATION_CAP};

/// Largest blocklength for the exhaustive ensemble-average spectrum.
pub const EXACT_SPECTRUM_CAP: usize = 24;

#[derive(Clone, Debug)]
pub struct HypergraphCode {
    hypergraph: Hypergraph,
    /// `local[p * m + v]` is the code at vertex `v` of part `p`.
    local: Vec<Arc<LocalCode>>,
    parity: BitMatrix,
    basis: BitMatrix,
}

impl HypergraphCode {
    /// Assembles the global parity check: one row block per vertex, parts in
    /// order and vertices in order within a part.
    pub fn build(hypergraph: Hypergraph, local: Vec<Arc<LocalCode>>) -> Result<Self> {
        let (t, m, n) = (hypergraph.t(), hypergraph.m(), hypergraph.n());
        if local.len() != t * m {
            return Err(Error::Dimension(format!(
                "need {} local codes, got {}",
                t * m,
                local.len()
            )));
        }
        if let Some(bad) = local.iter().position(|c| c.n() != n) {
            return Err(Error::Dimension(format!(
                "local code at part {} vertex {} has length {}, vertex degree is {n}",
                bad / m,
                bad % m,
                local[bad].n()
            )));
        }
        let parity = global_parity(&hypergraph, local.iter().map(|c| c.parity_check()))?;
        let basis = parity.nullspace_basis();
        Ok(HypergraphCode {
            hypergraph,
            local,
            parity,
            basis,
        })
    }

    /// Same local code at every vertex.
    pub fn uniform(hypergraph: Hypergraph, code: LocalCode) -> Result<Self> {
        let code = Arc::new(code);
        let count = hypergraph.t() * hypergraph.m();
        Self::build(hypergraph, vec![code; count])
    }

    pub fn hypergraph(&self) -> &Hypergraph {
        &self.hypergraph
    }

    pub fn local_code(&self, part: usize, v: usize) -> &LocalCode {
        &self.local[part * self.hypergraph.m() + v]
    }

    pub fn blocklength(&self) -> usize {
        self.hypergraph.num_edges()
    }

    pub fn dimension(&self) -> usize {
        self.basis.rows()
    }

    pub fn rate(&self) -> f64 {
        self.dimension() as f64 / self.blocklength() as f64
    }

    /// `1 - (total local parity rows) / N`, which is `t R1 - (t - 1)` when all
    /// local codes have nominal rate `R1`. The dimension never falls below it.
    pub fn rate_lower_bound(&self) -> f64 {
        let rows: usize = self.local.iter().map(|c| c.parity_check().rows()).sum();
        1.0 - rows as f64 / self.blocklength() as f64
    }

    pub fn parity_check(&self) -> &BitMatrix {
        &self.parity
    }

    /// Kernel basis in reduced form: each row is the unit vector of a free
    /// coordinate plus pivot coordinates, so encoding is systematic on the
    /// free coordinates.
    pub fn generator(&self) -> &BitMatrix {
        &self.basis
    }

    /// Codeword carrying `message` (one bit per basis row).
    pub fn encode(&self, message: &BitVector) -> Result<BitVector> {
        if message.len() != self.dimension() {
            return Err(Error::Dimension(format!(
                "message has {} bits, dimension is {}",
                message.len(),
                self.dimension()
            )));
        }
        let mut x = BitVector::zeros(self.blocklength());
        for i in message.iter_ones() {
            x.xor_assign(self.basis.row(i));
        }
        Ok(x)
    }

    /// The subvector `x(v)`, ordered as the incidence list of `v`.
    pub fn subvector(&self, x: &BitVector, part: usize, v: usize) -> BitVector {
        x.gather(self.hypergraph.vertex_edges(part, v))
    }

    pub fn contains(&self, x: &BitVector) -> bool {
        x.len() == self.blocklength() && self.unsatisfied_vertices(x) == 0
    }

    /// Number of vertices whose subvector is not a local codeword.
    pub fn unsatisfied_vertices(&self, x: &BitVector) -> usize {
        let (t, m) = (self.hypergraph.t(), self.hypergraph.m());
        (0..t * m)
            .filter(|&i| !self.local[i].contains(&self.subvector(x, i / m, i % m)))
            .count()
    }

    /// Exact codeword count per weight, `B_0..B_N`.
    pub fn brute_weight_distribution(&self) -> Result<Vec<u64>> {
        if self.dimension() > ENUMERATION_CAP {
            return Err(Error::SizeCap(format!(
                "code dimension {} exceeds the enumeration cap {ENUMERATION_CAP}",
                self.dimension()
            )));
        }
        Ok(self.basis.span_weight_census())
    }

    /// Minimum distance from the exact census; `None` for the zero code.
    pub fn brute_min_distance(&self) -> Result<Option<usize>> {
        let b = self.brute_weight_distribution()?;
        Ok(b.iter().skip(1).position(|&x| x > 0).map(|i| i + 1))
    }
}

/// Stacks the local parity checks, placing column `j` of vertex `v`'s check
/// on coordinate `E(v)[j]`. Matrices are given in part-major vertex order.
pub fn global_parity<'a>(h: &Hypergraph, local: impl IntoIterator<Item = &'a BitMatrix>) -> Result<BitMatrix> {
    let (m, n, big_n) = (h.m(), h.n(), h.num_edges());
    let mut parity = BitMatrix::zeros(0, big_n);
    for (i, hv) in local.into_iter().enumerate() {
        if hv.cols() != n {
            return Err(Error::Dimension(format!(
                "local parity check has {} columns, expected {n}",
                hv.cols()
            )));
        }
        if i >= h.t() * m {
            return Err(Error::Dimension("more local parity checks than vertices".into()));
        }
        let edges = h.vertex_edges(i / m, i % m);
        for row in hv.row_vectors() {
            let mut g = BitVector::zeros(big_n);
            g.scatter(edges, row);
            parity.push_row(g)?;
        }
    }
    Ok(parity)
}

/// Independent `r × n` uniform parity matrices, one per vertex in
/// part-major order, drawn from `rng`.
pub fn random_local_parities<R: RngCore>(h: &Hypergraph, r: usize, rng: &mut R) -> Vec<BitMatrix> {
    (0..h.t() * h.m()).map(|_| random_matrix_from(rng, r, h.n())).collect()
}

/// Per-vertex bit masks of the edge sets, for `N <= 64`.
fn vertex_masks(h: &Hypergraph) -> Vec<u64> {
    let (t, m) = (h.t(), h.m());
    (0..t * m)
        .map(|i| h.vertex_edges(i / m, i % m).iter().fold(0u64, |acc, &e| acc | 1 << e))
        .collect()
}

fn c3_term(masks: &[u64], x: u64, r: usize) -> f64 {
    let active = masks.iter().filter(|&&mv| mv & x != 0).count();
    (-((r * active) as f64)).exp2()
}

/// Average number of weight-`w` codewords when every vertex of `h` gets an
/// independent uniform `r × n` parity matrix: each weight-`w` word counts
/// `2^(-r · #{v : x(v) != 0})`.
pub fn expected_spectrum_c3_exact(h: &Hypergraph, r: usize, w: usize) -> Result<f64> {
    let big_n = h.num_edges();
    if big_n > EXACT_SPECTRUM_CAP {
        return Err(Error::SizeCap(format!("N = {big_n} exceeds {EXACT_SPECTRUM_CAP}")));
    }
    if w > big_n {
        return Ok(0.0);
    }
    if w == 0 {
        return Ok(1.0);
    }
    let masks = vertex_masks(h);
    let limit = 1u64 << big_n;
    // Gosper's hack over all w-subsets of the N coordinates
    let mut x: u64 = (1 << w) - 1;
    let mut total = 0.0;
    while x < limit {
        total += c3_term(&masks, x, r);
        let c = x & x.wrapping_neg();
        let rr = x + c;
        x = (((rr ^ x) >> 2) / c) | rr;
    }
    Ok(total)
}

/// [`expected_spectrum_c3_exact`] for every weight `0..=N` in one pass.
pub fn expected_spectrum_c3_all(h: &Hypergraph, r: usize) -> Result<Vec<f64>> {
    let big_n = h.num_edges();
    if big_n > EXACT_SPECTRUM_CAP {
        return Err(Error::SizeCap(format!("N = {big_n} exceeds {EXACT_SPECTRUM_CAP}")));
    }
    let masks = vertex_masks(h);
    let chunk_bits = big_n.min(12);
    let chunks = 1u64 << (big_n - chunk_bits);
    let partial: Vec<Vec<f64>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut acc = vec![0.0; big_n + 1];
            for x in c << chunk_bits..(c + 1) << chunk_bits {
                acc[x.count_ones() as usize] += c3_term(&masks, x, r);
            }
            acc
        })
        .collect();
    let mut out = vec![0.0; big_n + 1];
    for p in partial {
        for (a, b) in out.iter_mut().zip(p) {
            *a += b;
        }
    }
    Ok(out)
}

/// How the local code at a vertex is obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CodeSource {
    /// A canonical code such as `hamming_7`.
    Named(String),
    /// A code file, relative paths resolved against the manifest directory.
    File(PathBuf),
    /// A uniform random parity matrix with this many rows, drawn from the
    /// manifest seed.
    Random(usize),
}

impl fmt::Display for CodeSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeSource::Named(name) => write!(f, "{name}"),
            CodeSource::File(p) => write!(f, "file:{}", p.display()),
            CodeSource::Random(r) => write!(f, "random:{r}"),
        }
    }
}

impl FromStr for CodeSource {
    type Err = Error;

    /// `file:<path>`, `random:<rows>` or a code name.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(p) = s.strip_prefix("file:") {
            Ok(CodeSource::File(PathBuf::from(p)))
        } else if let Some(r) = s.strip_prefix("random:") {
            r.parse()
                .map(CodeSource::Random)
                .map_err(|_| Error::Parse(format!("bad random code rows in {s:?}")))
        } else if s.is_empty() {
            Err(Error::Parse("empty code source".into()))
        } else {
            Ok(CodeSource::Named(s.to_string()))
        }
    }
}

/// Key=value description of a constructed code: the hypergraph file, the
/// default local code, per-vertex overrides and the seed it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Manifest {
    pub t: usize,
    pub m: usize,
    pub n: usize,
    pub hypergraph: PathBuf,
    pub code: CodeSource,
    /// `(part, vertex)` overrides of `code`.
    pub overrides: BTreeMap<(usize, usize), CodeSource>,
    pub seed: u64,
    pub model: String,
}

impl Manifest {
    /// Loads the hypergraph and local codes, resolving relative paths
    /// against `base`.
    pub fn build(&self, base: &Path) -> Result<HypergraphCode> {
        self.build_on(Hypergraph::load(resolve(base, &self.hypergraph))?, base)
    }

    /// Like [`build`](Self::build) with the hypergraph already in hand.
    pub fn build_on(&self, h: Hypergraph, base: &Path) -> Result<HypergraphCode> {
        if (h.t(), h.m(), h.n()) != (self.t, self.m, self.n) {
            return Err(Error::Parse(format!(
                "manifest says t={} m={} n={} but the hypergraph has t={} m={} n={}",
                self.t,
                self.m,
                self.n,
                h.t(),
                h.m(),
                h.n()
            )));
        }
        // stream 1 of the seed is reserved for random local codes
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(1);
        let mut cache: BTreeMap<String, Arc<LocalCode>> = BTreeMap::new();
        let mut local = Vec::with_capacity(self.t * self.m);
        for p in 0..self.t {
            for v in 0..self.m {
                let src = self.overrides.get(&(p, v)).unwrap_or(&self.code);
                let code = match src {
                    CodeSource::Random(r) => {
                        Arc::new(LocalCode::from_parity_check(random_matrix_from(&mut rng, *r, self.n))?)
                    }
                    CodeSource::Named(name) => cached(&mut cache, src, || make_named_code(name))?,
                    CodeSource::File(path) => cached(&mut cache, src, || LocalCode::load(resolve(base, path)))?,
                };
                local.push(code);
            }
        }
        HypergraphCode::build(h, local)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
        text.parse()
    }
}

fn cached(
    cache: &mut BTreeMap<String, Arc<LocalCode>>,
    src: &CodeSource,
    make: impl FnOnce() -> Result<LocalCode>,
) -> Result<Arc<LocalCode>> {
    let key = src.to_string();
    if let Some(c) = cache.get(&key) {
        return Ok(c.clone());
    }
    let c = Arc::new(make()?);
    cache.insert(key, c.clone());
    Ok(c)
}

fn resolve(base: &Path, p: &Path) -> PathBuf {
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

impl fmt::Display for Manifest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "t={}", self.t)?;
        writeln!(f, "m={}", self.m)?;
        writeln!(f, "n={}", self.n)?;
        writeln!(f, "hypergraph={}", self.hypergraph.display())?;
        writeln!(f, "code={}", self.code)?;
        for ((p, v), src) in &self.overrides {
            writeln!(f, "code.{p}.{v}={src}")?;
        }
        writeln!(f, "seed={}", self.seed)?;
        writeln!(f, "model={}", self.model)
    }
}

impl FromStr for Manifest {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut kv = BTreeMap::new();
        let mut overrides = BTreeMap::new();
        for line in s
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
        {
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("manifest line is not key=value: {line:?}")))?;
            let (k, v) = (k.trim(), v.trim());
            if let Some(pv) = k.strip_prefix("code.") {
                let (p, vtx) = pv
                    .split_once('.')
                    .and_then(|(p, x)| Some((p.parse().ok()?, x.parse().ok()?)))
                    .ok_or_else(|| Error::Parse(format!("bad override key {k:?}")))?;
                overrides.insert((p, vtx), v.parse()?);
            } else {
                kv.insert(k.to_string(), v.to_string());
            }
        }
        let get = |key: &str| {
            kv.get(key)
                .ok_or_else(|| Error::Parse(format!("manifest is missing `{key}`")))
        };
        let num = |key: &str| -> Result<u64> {
            get(key)?
                .parse()
                .map_err(|_| Error::Parse(format!("manifest `{key}` is not a number")))
        };
        Ok(Manifest {
            t: num("t")? as usize,
            m: num("m")? as usize,
            n: num("n")? as usize,
            hypergraph: PathBuf::from(get("hypergraph")?),
            code: get("code")?.parse()?,
            overrides,
            seed: num("seed")?,
            model: get("model")?.clone(),
        })
    }
}

/// How to obtain the hypergraph of a new code.
#[derive(Clone, Debug)]
pub enum Model {
    Random { t: usize, m: usize, n: usize },
    Path { graph: Graph, t: usize },
}

/// Result of [`construct`]: the built code, its manifest and, for the path
/// model, the homogeneity parameter.
#[derive(Clone, Debug)]
pub struct Construction {
    pub code: HypergraphCode,
    pub epsilon: Option<f64>,
    pub manifest: Manifest,
}

/// Builds a code from a model and a local code source without writing
/// anything; the manifest refers to the hypergraph as `hypergraph_file`.
pub fn construct(
    model: &Model,
    code: CodeSource,
    seed: u64,
    hypergraph_file: &Path,
    base: &Path,
) -> Result<Construction> {
    let (h, epsilon, name) = match model {
        Model::Random { t, m, n } => (random_hypergraph(*t, *m, *n, seed)?, None, "random"),
        Model::Path { graph, t } => {
            let (h, eps) = path_hypergraph(graph, *t)?;
            (h, Some(eps), "path")
        }
    };
    let manifest = Manifest {
        t: h.t(),
        m: h.m(),
        n: h.n(),
        hypergraph: hypergraph_file.to_path_buf(),
        code,
        overrides: BTreeMap::new(),
        seed,
        model: name.to_string(),
    };
    let code = manifest.build_on(h, base)?;
    Ok(Construction {
        code,
        epsilon,
        manifest,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraphs::Graph;
    use rand::Rng;

    fn binom(n: usize, k: usize) -> f64 {
        (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
    }

    fn identity_hypergraph(t: usize, m: usize, n: usize) -> Hypergraph {
        let id: Vec<usize> = (0..m * n).collect();
        Hypergraph::from_permutations(t, m, n, &vec![id; t - 1]).unwrap()
    }

    #[test]
    fn full_space_locals_give_full_space() {
        let h = random_hypergraph(2, 2, 2, 0).unwrap();
        let c = HypergraphCode::uniform(h, make_named_code("full_space_2").unwrap()).unwrap();
        assert_eq!(c.dimension(), 4);
        assert_eq!(c.brute_weight_distribution().unwrap(), vec![1, 4, 6, 4, 1]);
    }

    #[test]
    fn single_vertex_parts_intersect_local_codes() {
        let h = identity_hypergraph(2, 1, 7);
        let c = HypergraphCode::uniform(h, make_named_code("hamming_7").unwrap()).unwrap();
        assert_eq!(c.brute_weight_distribution().unwrap(), vec![1, 0, 0, 7, 7, 0, 0, 1]);

        // different codes: even-weight ∩ repetition = repetition of even length
        let h = identity_hypergraph(2, 1, 4);
        let local = vec![
            Arc::new(LocalCode::from_parity_check(BitMatrix::from_strs(&["1111"]).unwrap()).unwrap()),
            Arc::new(make_named_code("repetition_4").unwrap()),
        ];
        let c = HypergraphCode::build(h, local).unwrap();
        assert_eq!(c.brute_weight_distribution().unwrap(), vec![1, 0, 0, 0, 1]);
    }

    #[test]
    fn rate_respects_local_rate_bound() {
        for seed in 0..5 {
            let h = random_hypergraph(2, 7, 7, seed).unwrap();
            let c = HypergraphCode::uniform(h, make_named_code("hamming_7").unwrap()).unwrap();
            assert!((c.rate_lower_bound() - 1.0 / 7.0).abs() < 1e-12);
            assert!(c.rate() >= 1.0 / 7.0, "seed {seed}");
        }
        let h = random_hypergraph(3, 5, 7, 1).unwrap();
        let c = HypergraphCode::uniform(h, make_named_code("hamming_7").unwrap()).unwrap();
        assert!(c.dimension() as f64 >= c.blocklength() as f64 * c.rate_lower_bound());
    }

    #[test]
    fn length_mismatch_rejected() {
        let h = random_hypergraph(2, 3, 5, 0).unwrap();
        assert!(matches!(
            HypergraphCode::uniform(h, make_named_code("hamming_7").unwrap()),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn membership_agrees_with_global_parity() {
        let h = random_hypergraph(2, 4, 4, 3).unwrap();
        let c = HypergraphCode::uniform(h, make_named_code("repetition_4").unwrap()).unwrap();
        let big_n = c.blocklength();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut hits = 0;
        for i in 0..10_000 {
            let x = if i % 2 == 0 {
                let msg = BitVector::from_bools(&(0..c.dimension()).map(|_| rng.gen()).collect::<Vec<bool>>());
                c.encode(&msg).unwrap()
            } else {
                BitVector::from_bools(&(0..big_n).map(|_| rng.gen()).collect::<Vec<bool>>())
            };
            let by_parity = c.parity_check().mul_vec(&x).is_zero();
            assert_eq!(c.contains(&x), by_parity);
            hits += by_parity as usize;
        }
        assert!(hits >= 5000);
    }

    #[test]
    fn membership_simple_cases() {
        let h = random_hypergraph(3, 3, 7, 2).unwrap();
        let c = HypergraphCode::uniform(h, make_named_code("hamming_7").unwrap()).unwrap();
        assert!(c.contains(&BitVector::zeros(21)));
        for i in 0..21 {
            assert!(!c.contains(&BitVector::unit(21, i)));
        }
    }

    #[test]
    fn c3_spectrum_trivial_cases() {
        let h = random_hypergraph(2, 2, 3, 4).unwrap();
        assert_eq!(expected_spectrum_c3_exact(&h, 2, 0).unwrap(), 1.0);
        for w in 0..=6 {
            assert_eq!(expected_spectrum_c3_exact(&h, 0, w).unwrap(), binom(6, w));
        }
        let all = expected_spectrum_c3_all(&h, 2).unwrap();
        for (w, a) in all.iter().enumerate() {
            assert!((a - expected_spectrum_c3_exact(&h, 2, w).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn c3_spectrum_matches_hand_count() {
        // t=2, m=2, n=2, r=1: each pair of edges touches some set of vertices
        let h = random_hypergraph(2, 2, 2, 9).unwrap();
        let mut expect = 0.0;
        for a in 0..4 {
            for b in a + 1..4 {
                let mut touched = std::collections::BTreeSet::new();
                for e in [a, b] {
                    for (p, &v) in h.edge(e).iter().enumerate() {
                        touched.insert((p, v));
                    }
                }
                expect += 0.5f64.powi(touched.len() as i32);
            }
        }
        assert!((expected_spectrum_c3_exact(&h, 1, 2).unwrap() - expect).abs() < 1e-15);
    }

    #[test]
    fn c3_spectrum_cap() {
        let h = random_hypergraph(2, 5, 5, 0).unwrap();
        assert!(matches!(expected_spectrum_c3_exact(&h, 1, 2), Err(Error::SizeCap(_))));
    }

    #[test]
    fn manifest_round_trip_and_build() {
        let dir = tempfile::tempdir().unwrap();
        let h = random_hypergraph(2, 3, 7, 12).unwrap();
        std::fs::write(dir.path().join("h.txt"), h.to_string()).unwrap();
        std::fs::write(
            dir.path().join("rep.txt"),
            make_named_code("repetition_7").unwrap().to_file_string(),
        )
        .unwrap();
        let mut overrides = BTreeMap::new();
        overrides.insert((1, 2), CodeSource::File("rep.txt".into()));
        overrides.insert((0, 1), CodeSource::Random(3));
        let man = Manifest {
            t: 2,
            m: 3,
            n: 7,
            hypergraph: "h.txt".into(),
            code: CodeSource::Named("hamming_7".into()),
            overrides,
            seed: 12,
            model: "random".into(),
        };
        let text = man.to_string();
        assert!(text.contains("code.1.2=file:rep.txt\n"));
        let back: Manifest = text.parse().unwrap();
        assert_eq!(back, man);
        let c = back.build(dir.path()).unwrap();
        assert_eq!(c.local_code(1, 2).k(), 1);
        assert_eq!(c.local_code(0, 0).k(), 4);
        assert_eq!(c.local_code(0, 1).parity_check().rows(), 3);
        // deterministic random local codes
        let again = man.build(dir.path()).unwrap();
        assert_eq!(again.parity_check(), c.parity_check());
        assert!("t=2\nm=3\n".parse::<Manifest>().is_err());
    }

    #[test]
    fn construct_path_model() {
        let out = construct(
            &Model::Path {
                graph: Graph::complete(4),
                t: 3,
            },
            CodeSource::Named("full_space_9".into()),
            0,
            Path::new("h.txt"),
            Path::new("."),
        )
        .unwrap();
        assert_eq!(out.code.blocklength(), 36);
        assert!((out.epsilon.unwrap() - 4.0 / 3.0).abs() < 1e-9);
        assert_eq!(out.manifest.model, "path");
    }
}
