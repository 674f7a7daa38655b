//! t-partite, n-regular, t-uniform hypergraphs.
//!
//! Edges are indexed `0..N` with `N = m n`. Edge `(i-1) n + j` always meets
//! vertex `i` of the first part, so the first part's incidence lists are
//! consecutive blocks. Incidence lists of the other parts are in ascending
//! edge order; this makes the edge list alone (the file format) determine
//! the coordinate order seen by every local code.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use nalgebra::DMatrix;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Largest graph accepted by the dense eigensolvers.
pub const EIGEN_CAP: usize = 2000;

/// Largest number of `(D_1, ..., D_{t-1})` subset tuples visited by
/// [`homogeneity_exact`].
pub const HOMOGENEITY_CAP: u64 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    t: usize,
    m: usize,
    n: usize,
    /// Flat `N × t` table of vertex indices.
    edges: Vec<u32>,
    /// `incidence[p * m + v]` lists the edges at vertex `v` of part `p`.
    incidence: Vec<Vec<usize>>,
    /// `slot[e * t + p]` is the position of edge `e` in its part-`p` incidence list.
    slot: Vec<u32>,
}

impl Hypergraph {
    /// Validates and indexes an edge list given as `N` rows of `t` vertex indices.
    pub fn from_edges(t: usize, m: usize, n: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        if t < 2 || m < 1 || n < 1 {
            return Err(Error::InvalidParameter(format!(
                "need t >= 2, m >= 1, n >= 1 (got t={t}, m={m}, n={n})"
            )));
        }
        let big_n = m * n;
        if edges.len() != big_n {
            return Err(Error::Dimension(format!("expected {big_n} edges, got {}", edges.len())));
        }
        let mut flat = Vec::with_capacity(big_n * t);
        let mut incidence = vec![Vec::with_capacity(n); t * m];
        for (e, edge) in edges.iter().enumerate() {
            if edge.len() != t {
                return Err(Error::Dimension(format!(
                    "edge {e} has {} vertices, expected {t}",
                    edge.len()
                )));
            }
            if edge[0] != e / n {
                return Err(Error::InvalidParameter(format!(
                    "edge {e} must meet vertex {} of the first part (found {})",
                    e / n,
                    edge[0]
                )));
            }
            for (p, &v) in edge.iter().enumerate() {
                if v >= m {
                    return Err(Error::InvalidParameter(format!(
                        "edge {e}: vertex {v} out of range in part {p}"
                    )));
                }
                incidence[p * m + v].push(e);
                flat.push(v as u32);
            }
        }
        if let Some(pos) = incidence.iter().position(|l| l.len() != n) {
            return Err(Error::InvalidParameter(format!(
                "vertex {} of part {} has degree {}, expected {n}",
                pos % m,
                pos / m,
                incidence[pos].len()
            )));
        }
        let mut slot = vec![0u32; big_n * t];
        for (idx, list) in incidence.iter().enumerate() {
            let p = idx / m;
            for (j, &e) in list.iter().enumerate() {
                slot[e * t + p] = j as u32;
            }
        }
        Ok(Hypergraph {
            t,
            m,
            n,
            edges: flat,
            incidence,
            slot,
        })
    }

    /// The permutation model with explicit permutations, one per part `2..=t`:
    /// slot `(i-1) n + j` of part `p` holds edge `perms[p-2][(i-1) n + j]`,
    /// which then meets vertex `i` of that part.
    pub fn from_permutations(t: usize, m: usize, n: usize, perms: &[Vec<usize>]) -> Result<Self> {
        if perms.len() + 1 != t {
            return Err(Error::Dimension(format!(
                "need {} permutations for t={t}",
                t.saturating_sub(1)
            )));
        }
        let big_n = m * n;
        let mut edges: Vec<Vec<usize>> = (0..big_n).map(|e| vec![e / n.max(1)]).collect();
        for perm in perms {
            if perm.len() != big_n {
                return Err(Error::Dimension(format!(
                    "permutation of length {} for N={big_n}",
                    perm.len()
                )));
            }
            let mut owner = vec![usize::MAX; big_n];
            for (s, &e) in perm.iter().enumerate() {
                if e >= big_n || owner[e] != usize::MAX {
                    return Err(Error::InvalidParameter("not a permutation".into()));
                }
                owner[e] = s / n;
            }
            for (e, edge) in edges.iter_mut().enumerate() {
                edge.push(owner[e]);
            }
        }
        Self::from_edges(t, m, n, edges)
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges, which is also the blocklength `N = m n`.
    pub fn num_edges(&self) -> usize {
        self.m * self.n
    }

    pub fn edge(&self, e: usize) -> &[u32] {
        &self.edges[e * self.t..(e + 1) * self.t]
    }

    pub fn vertex_edges(&self, part: usize, v: usize) -> &[usize] {
        &self.incidence[part * self.m + v]
    }

    /// Position of edge `e` inside the incidence list of its part-`part` vertex.
    pub fn slot(&self, e: usize, part: usize) -> usize {
        self.slot[e * self.t + part] as usize
    }

    /// Number of edges that meet `D_p` in every part `p`; `masks[p]` has bit
    /// `v` set when vertex `v` of part `p` is in `D_p`.
    pub fn count_edges_meeting(&self, masks: &[u64]) -> usize {
        assert_eq!(masks.len(), self.t);
        (0..self.num_edges())
            .filter(|&e| self.edge(e).iter().zip(masks).all(|(&v, &mask)| (mask >> v) & 1 == 1))
            .count()
    }

    /// Second largest singular value of the `m × m` biadjacency matrix of a
    /// `t = 2` hypergraph (multi-edges counted). This is the `λ` for which
    /// the expander mixing lemma makes the graph `λ/n`-homogeneous.
    pub fn biadjacency_lambda(&self) -> Result<f64> {
        if self.t != 2 {
            return Err(Error::InvalidParameter("biadjacency is defined for t = 2 only".into()));
        }
        if self.m > EIGEN_CAP {
            return Err(Error::SizeCap(format!(
                "m = {} exceeds eigensolver cap {EIGEN_CAP}",
                self.m
            )));
        }
        let mut b = DMatrix::<f64>::zeros(self.m, self.m);
        for e in 0..self.num_edges() {
            let edge = self.edge(e);
            b[(edge[0] as usize, edge[1] as usize)] += 1.0;
        }
        let mut sv: Vec<f64> = b.singular_values().iter().copied().collect();
        sv.sort_by(|a, b| b.total_cmp(a));
        Ok(sv.get(1).copied().unwrap_or(0.0))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
        text.parse()
    }
}

impl fmt::Display for Hypergraph {
    /// `hypergraph t=<t> m=<m> n=<n>` followed by one line of `t` 0-based
    /// vertex indices per edge, in edge order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "hypergraph t={} m={} n={}", self.t, self.m, self.n)?;
        for e in 0..self.num_edges() {
            let line: Vec<String> = self.edge(e).iter().map(u32::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

fn parse_header_fields<'a>(header: &'a str, tag: &str) -> Result<Vec<(&'a str, usize)>> {
    let mut parts = header.split_whitespace();
    if parts.next() != Some(tag) {
        return Err(Error::Parse(format!("expected `{tag}` header, got {header:?}")));
    }
    parts
        .map(|kv| {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("bad header field {kv:?}")))?;
            let v = v
                .parse()
                .map_err(|_| Error::Parse(format!("bad value in header field {kv:?}")))?;
            Ok((k, v))
        })
        .collect()
}

fn header_value(fields: &[(&str, usize)], key: &str) -> Result<usize> {
    fields
        .iter()
        .find(|(k, _)| *k == key)
        .map(|&(_, v)| v)
        .ok_or_else(|| Error::Parse(format!("header is missing `{key}=`")))
}

impl FromStr for Hypergraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty hypergraph file".into()))?;
        let fields = parse_header_fields(header, "hypergraph")?;
        let (t, m, n) = (
            header_value(&fields, "t")?,
            header_value(&fields, "m")?,
            header_value(&fields, "n")?,
        );
        let edges = lines
            .map(|l| {
                l.split_whitespace()
                    .map(|v| {
                        v.parse::<usize>()
                            .map_err(|_| Error::Parse(format!("bad vertex index in {l:?}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Hypergraph::from_edges(t, m, n, edges)
    }
}

/// Random hypergraph from the permutation model: part 1 is wired canonically
/// and each further part is attached through an independent uniform
/// permutation of the `N` edge slots (Fisher-Yates over ChaCha8 seeded with `seed`).
pub fn random_hypergraph(t: usize, m: usize, n: usize, seed: u64) -> Result<Hypergraph> {
    if t < 2 || m < 1 || n < 1 {
        return Err(Error::InvalidParameter(format!(
            "need t >= 2, m >= 1, n >= 1 (got t={t}, m={m}, n={n})"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let perms: Vec<Vec<usize>> = (1..t)
        .map(|_| {
            let mut p: Vec<usize> = (0..m * n).collect();
            p.shuffle(&mut rng);
            p
        })
        .collect();
    Hypergraph::from_permutations(t, m, n, &perms)
}

/// A regular undirected (multi)graph with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn from_edges(vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); vertices];
        for &(u, v) in edges {
            if u >= vertices || v >= vertices {
                return Err(Error::InvalidParameter(format!("edge ({u}, {v}) out of range")));
            }
            adj[u].push(v);
            if u != v {
                adj[v].push(u);
            }
        }
        for l in &mut adj {
            l.sort_unstable();
        }
        Ok(Graph { adj })
    }

    pub fn complete(k: usize) -> Self {
        let edges: Vec<(usize, usize)> = (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v))).collect();
        Self::from_edges(k, &edges).expect("in range")
    }

    pub fn cycle(k: usize) -> Self {
        let edges: Vec<(usize, usize)> = (0..k).map(|u| (u, (u + 1) % k)).collect();
        Self::from_edges(k, &edges).expect("in range")
    }

    pub fn petersen() -> Self {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        Self::from_edges(10, &edges).expect("in range")
    }

    pub fn vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// The common degree, or `None` if the graph is not regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first()?.len();
        self.adj.iter().all(|l| l.len() == d).then_some(d)
    }

    pub fn is_connected(&self) -> bool {
        if self.adj.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.adj.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
        text.parse()
    }
}

impl fmt::Display for Graph {
    /// `graph v=<count>` then one `u v` line per undirected edge (`u <= v`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "graph v={}", self.adj.len())?;
        for (u, l) in self.adj.iter().enumerate() {
            for &v in l.iter().filter(|&&v| v >= u) {
                writeln!(f, "{u} {v}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty graph file".into()))?;
        let fields = parse_header_fields(header, "graph")?;
        let v = header_value(&fields, "v")?;
        let edges = lines
            .map(|l| {
                let ends: Vec<usize> = l
                    .split_whitespace()
                    .map(|x| x.parse().map_err(|_| Error::Parse(format!("bad edge line {l:?}"))))
                    .collect::<Result<_>>()?;
                match ends[..] {
                    [a, b] => Ok((a, b)),
                    _ => Err(Error::Parse(format!("edge line must have two vertices: {l:?}"))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Graph::from_edges(v, &edges)
    }
}

/// Largest absolute adjacency eigenvalue after removing one copy of the
/// degree `Δ`. A `-Δ` eigenvalue (bipartite graphs) is kept, so bipartite
/// graphs report `λ = Δ`.
pub fn second_eigenvalue(g: &Graph) -> Result<f64> {
    let delta = g
        .regular_degree()
        .ok_or_else(|| Error::InvalidParameter("second eigenvalue needs a regular graph".into()))?;
    let k = g.vertices();
    if k > EIGEN_CAP {
        return Err(Error::SizeCap(format!(
            "{k} vertices exceeds eigensolver cap {EIGEN_CAP}"
        )));
    }
    if k <= 1 {
        return Ok(0.0);
    }
    let mut a = DMatrix::<f64>::zeros(k, k);
    for u in 0..k {
        for &v in g.neighbors(u) {
            a[(u, v)] += 1.0;
        }
    }
    let mut eig: Vec<f64> = a.symmetric_eigen().eigenvalues.iter().copied().collect();
    let top = eig
        .iter()
        .enumerate()
        .min_by(|a, b| (a.1 - delta as f64).abs().total_cmp(&(b.1 - delta as f64).abs()))
        .map(|(i, _)| i)
        .expect("nonempty");
    eig.remove(top);
    Ok(eig.iter().fold(0.0f64, |acc, x| acc.max(x.abs())))
}

/// Hypergraph whose edges are the directed walks `(v_1, ..., v_t)` of a
/// regular connected graph, so `n = Δ^(t-1)`. Walks may revisit vertices.
/// Returns the homogeneity parameter `ε = 2 (t-1) λ / Δ`.
pub fn path_hypergraph(g: &Graph, t: usize) -> Result<(Hypergraph, f64)> {
    if t < 2 {
        return Err(Error::InvalidParameter("t must be at least 2".into()));
    }
    let delta = g
        .regular_degree()
        .ok_or_else(|| Error::InvalidParameter("path construction needs a regular graph".into()))?;
    if delta == 0 || !g.is_connected() {
        return Err(Error::InvalidParameter(
            "path construction needs a connected graph".into(),
        ));
    }
    let n = delta
        .checked_pow(t as u32 - 1)
        .ok_or_else(|| Error::SizeCap("Δ^(t-1) overflows".into()))?;
    let m = g.vertices();
    let mut edges = Vec::with_capacity(m * n);
    let mut walk = Vec::with_capacity(t);
    fn extend(g: &Graph, t: usize, walk: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if walk.len() == t {
            out.push(walk.clone());
            return;
        }
        let last = *walk.last().expect("walk starts nonempty");
        for &next in g.neighbors(last) {
            walk.push(next);
            extend(g, t, walk, out);
            walk.pop();
        }
    }
    for v in 0..m {
        walk.clear();
        walk.push(v);
        extend(g, t, &mut walk, &mut edges);
    }
    let lambda = second_eigenvalue(g)?;
    let h = Hypergraph::from_edges(t, m, n, edges)?;
    Ok((h, 2.0 * (t - 1) as f64 * lambda / delta as f64))
}

/// Outcome of an exhaustive homogeneity check.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Homogeneity {
    pub holds: bool,
    /// Largest value of `|E(D_1..D_t)|/N - (Π α_i + ε min √(α_i α_j))` over
    /// all nonempty subset tuples; `holds` iff it is at most `1e-12`.
    pub worst_violation: f64,
}

/// Checks ε-homogeneity over every tuple of nonempty subsets.
///
/// The first `t - 1` subsets are enumerated (the first one in Gray-code
/// order with incremental edge counts); for the last part, the worst subset
/// of each size is the set of vertices with the most qualifying edges, so it
/// is found by sorting instead of enumerating.
pub fn homogeneity_exact(h: &Hypergraph, epsilon: f64) -> Result<Homogeneity> {
    let (t, m) = (h.t(), h.m());
    let tuples = if m >= 63 {
        u64::MAX
    } else {
        ((1u64 << m) - 1).checked_pow(t as u32 - 1).unwrap_or(u64::MAX)
    };
    if tuples > HOMOGENEITY_CAP {
        return Err(Error::SizeCap(format!(
            "{tuples} subset tuples for t={t}, m={m} exceeds cap {HOMOGENEITY_CAP}"
        )));
    }
    let full: u64 = (1 << m) - 1;
    let big_n = h.num_edges() as f64;
    let mf = m as f64;
    let middle = t - 2;
    let outer: u64 = full.pow(middle as u32);

    let worst = (0..outer)
        .into_par_iter()
        .map(|code| {
            // masks for parts 1..t-1 (0-based), each nonempty
            let mut mids = Vec::with_capacity(middle);
            let mut c = code;
            for _ in 0..middle {
                mids.push(c % full + 1);
                c /= full;
            }
            let mid_alpha: Vec<f64> = mids.iter().map(|x| x.count_ones() as f64 / mf).collect();
            let qualifies = |e: usize| {
                let edge = h.edge(e);
                mids.iter().enumerate().all(|(i, &mask)| (mask >> edge[i + 1]) & 1 == 1)
            };
            let mut counts = vec![0i64; m];
            let mut sorted = vec![0i64; m];
            let mut first = 0u64;
            let mut worst = f64::NEG_INFINITY;
            for i in 1..=full {
                let bit = i.trailing_zeros() as usize;
                let gray = i ^ (i >> 1);
                let added = (gray >> bit) & 1 == 1;
                first ^= 1 << bit;
                debug_assert_eq!(first, gray);
                for &e in h.vertex_edges(0, bit) {
                    if qualifies(e) {
                        let u = h.edge(e)[t - 1] as usize;
                        counts[u] += if added { 1 } else { -1 };
                    }
                }
                let mut alphas = Vec::with_capacity(t);
                alphas.push(first.count_ones() as f64 / mf);
                alphas.extend_from_slice(&mid_alpha);
                let prod: f64 = alphas.iter().product();
                sorted.copy_from_slice(&counts);
                sorted.sort_unstable_by(|a, b| b.cmp(a));
                let mut prefix = 0i64;
                for (k, &c) in sorted.iter().enumerate() {
                    prefix += c;
                    let last = (k + 1) as f64 / mf;
                    let mut min_pair = f64::INFINITY;
                    let alpha = |i: usize| if i == t - 1 { last } else { alphas[i] };
                    for a in 0..t {
                        for b in a + 1..t {
                            min_pair = min_pair.min((alpha(a) * alpha(b)).sqrt());
                        }
                    }
                    let bound = prod * last + epsilon * min_pair;
                    worst = worst.max(prefix as f64 / big_n - bound);
                }
            }
            worst
        })
        .reduce(|| f64::NEG_INFINITY, f64::max);
    Ok(Homogeneity {
        holds: worst <= 1e-12,
        worst_violation: worst,
    })
}
