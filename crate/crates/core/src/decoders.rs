//! Iterative decoders for hypergraph codes: the parallel majority decoder,
//! in which every vertex keeps its own copy of its bits, and the branching
//! threshold decoder, which explores all `t` single-part threshold steps for
//! `s` levels before handing every candidate to a finishing decoder.

use std::collections::HashSet;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::code::HypergraphCode;
use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::local_codes::Kappa;

/// How ties between equally close decoded candidates are broken.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TieRule {
    #[default]
    LexSmallest,
}

/// How each vertex combines the decoded opinions of an edge's vertices.
///
/// With `t` even, every vertex takes the majority of the other `t - 1`
/// (an odd number of) opinions. With `t` odd that count is even, so the
/// vote also includes the vertex's own opinion, again an odd count.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OddFinish {
    /// Finish odd-`t` candidates with the majority decoder over all `t` opinions.
    #[default]
    Majority,
    /// Keep branching (up to `bh_max_iters` more levels) until some candidate
    /// is a codeword; no majority voting at all.
    BranchOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecoderConfig {
    pub kappa: Kappa,
    pub depth: usize,
    pub bh_max_iters: usize,
    pub candidate_cap: usize,
    pub tie_rule: TieRule,
    pub odd_finish: OddFinish,
}

impl DecoderConfig {
    /// `kappa = t + 1`, depth 2, 50 majority rounds, at most 4096 candidates.
    pub fn for_t(t: usize) -> Self {
        DecoderConfig {
            kappa: Kappa::integer(t as u64 + 1).expect("t + 1 >= 3"),
            depth: 2,
            bh_max_iters: 50,
            candidate_cap: 4096,
            tie_rule: TieRule::LexSmallest,
            odd_finish: OddFinish::Majority,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.candidate_cap == 0 {
            return Err(Error::InvalidParameter("candidate_cap must be at least 1".into()));
        }
        Ok(())
    }
}

/// One subprocedure application: at branching level `iteration`, candidate
/// `candidate` was passed through part `part`'s threshold step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRow {
    pub iteration: usize,
    pub candidate: usize,
    pub part: usize,
    pub changed_bits: usize,
    /// Distance of the output to the transmitted codeword, when known.
    pub residual: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecodeOutcome {
    /// The decoded codeword, or `None` on failure.
    pub result: Option<BitVector>,
    pub candidates_examined: usize,
    /// Majority rounds run (summed over candidates for the branching decoder).
    pub rounds: usize,
    /// Local decodings in the majority rounds where several codewords were
    /// equally close, so the lexicographic rule decided.
    pub local_ties: usize,
    pub branch_trace: Vec<TraceRow>,
}

impl DecodeOutcome {
    pub fn succeeded(&self) -> bool {
        self.result.is_some()
    }

    /// `iteration,candidate,part,changed_bits,residual` rows; an unknown
    /// residual is left empty.
    pub fn trace_csv(&self) -> String {
        let mut s = String::from("iteration,candidate,part,changed_bits,residual\n");
        for r in &self.branch_trace {
            let residual = r.residual.map(|x| x.to_string()).unwrap_or_default();
            writeln!(
                s,
                "{},{},{},{},{}",
                r.iteration, r.candidate, r.part, r.changed_bits, residual
            )
            .unwrap();
        }
        s
    }
}

/// Applies the threshold decoder at every vertex of part `part`. The edges
/// at distinct vertices of one part are disjoint, so the order is irrelevant.
pub fn subprocedure(code: &HypergraphCode, y: &BitVector, part: usize, kappa: Kappa) -> BitVector {
    let h = code.hypergraph();
    assert!(part < h.t(), "part index out of range");
    assert_eq!(y.len(), code.blocklength(), "received word has wrong length");
    let mut out = y.clone();
    for v in 0..h.m() {
        let edges = h.vertex_edges(part, v);
        let sub = y.gather(edges);
        let dec = code.local_code(part, v).threshold_decode(&sub, kappa);
        if dec != sub {
            out.scatter(edges, &dec);
        }
    }
    out
}

/// Parallel majority decoding. Each round, every vertex decodes its own copy
/// to the nearest local codeword; if all vertices of every edge then agree,
/// the agreed word is returned. Otherwise each stored bit is replaced by the
/// majority opinion (see [`OddFinish`] for odd `t`) and the round repeats,
/// up to `bh_max_iters` rounds.
pub fn bh_decode(code: &HypergraphCode, y: &BitVector, cfg: &DecoderConfig) -> DecodeOutcome {
    let run = majority_rounds(code, y, cfg.bh_max_iters);
    DecodeOutcome {
        result: run.result,
        candidates_examined: 1,
        rounds: run.rounds,
        local_ties: run.ties,
        branch_trace: Vec::new(),
    }
}

struct MajorityRun {
    result: Option<BitVector>,
    rounds: usize,
    ties: usize,
}

fn majority_rounds(code: &HypergraphCode, y: &BitVector, max_rounds: usize) -> MajorityRun {
    let h = code.hypergraph();
    let (t, m) = (h.t(), h.m());
    assert_eq!(y.len(), code.blocklength(), "received word has wrong length");
    let include_own = t % 2 == 1;
    let mut copies: Vec<BitVector> = (0..t * m).map(|i| code.subvector(y, i / m, i % m)).collect();
    let mut ties = 0;
    for round in 1..=max_rounds {
        let opinions: Vec<BitVector> = copies
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let (w, _, tied) = code.local_code(i / m, i % m).nearest_codeword_with_ties(c);
                ties += (tied > 1) as usize;
                w
            })
            .collect();
        let opinion = |e: usize, p: usize| {
            let v = h.edge(e)[p] as usize;
            opinions[p * m + v].get(h.slot(e, p))
        };
        let agreed = (0..code.blocklength()).all(|e| {
            let first = opinion(e, 0);
            (1..t).all(|p| opinion(e, p) == first)
        });
        if agreed {
            let x = BitVector::from_bools(&(0..code.blocklength()).map(|e| opinion(e, 0)).collect::<Vec<_>>());
            return MajorityRun {
                result: Some(x),
                rounds: round,
                ties,
            };
        }
        for e in 0..code.blocklength() {
            let ones = (0..t).filter(|&p| opinion(e, p)).count();
            for p in 0..t {
                let own = opinion(e, p) as usize;
                let (votes, voters) = if include_own { (ones, t) } else { (ones - own, t - 1) };
                let v = h.edge(e)[p] as usize;
                copies[p * m + v].set(h.slot(e, p), 2 * votes > voters);
            }
        }
    }
    MajorityRun {
        result: None,
        rounds: max_rounds,
        ties,
    }
}

/// The branching threshold decoder.
pub fn branching_decode(code: &HypergraphCode, y: &BitVector, cfg: &DecoderConfig) -> DecodeOutcome {
    branching_decode_traced(code, y, cfg, None)
}

/// [`branching_decode`], recording residual weights against `truth`.
pub fn branching_decode_traced(
    code: &HypergraphCode,
    y: &BitVector,
    cfg: &DecoderConfig,
    truth: Option<&BitVector>,
) -> DecodeOutcome {
    let t = code.hypergraph().t();
    let branch_only = t % 2 == 1 && cfg.odd_finish == OddFinish::BranchOnly;
    let mut trace = Vec::new();
    let mut candidates = vec![y.clone()];
    let mut examined = 0;
    let mut rounds = 0;
    let mut local_ties = 0;
    let mut successes: Vec<BitVector> = Vec::new();

    let max_level = if branch_only {
        cfg.depth + cfg.bh_max_iters
    } else {
        cfg.depth
    };
    for level in 0..=max_level {
        if branch_only && level >= cfg.depth {
            examined += candidates.len();
            successes.extend(candidates.iter().filter(|c| code.contains(c)).cloned());
            if !successes.is_empty() || level == max_level {
                break;
            }
        } else if level == cfg.depth {
            break;
        }
        candidates = expand(code, &candidates, cfg, level + 1, truth, &mut trace);
    }

    if !branch_only {
        examined = candidates.len();
        let finished: Vec<MajorityRun> = candidates
            .par_iter()
            .map(|c| majority_rounds(code, c, cfg.bh_max_iters))
            .collect();
        for run in finished {
            rounds += run.rounds;
            local_ties += run.ties;
            successes.extend(run.result);
        }
    }

    let result = successes.into_iter().min_by(|a, b| {
        a.distance(y).cmp(&b.distance(y)).then_with(|| match cfg.tie_rule {
            TieRule::LexSmallest => a.lex_cmp(b),
        })
    });
    DecodeOutcome {
        result,
        candidates_examined: examined,
        rounds,
        local_ties,
        branch_trace: trace,
    }
}

/// One branching level: every candidate yields its `t` subprocedure outputs,
/// in (candidate, part) order. Duplicates keep their first occurrence; above
/// the cap, candidates with the fewest unsatisfied vertices are kept (ties
/// lexicographic) and then restored to creation order.
fn expand(
    code: &HypergraphCode,
    candidates: &[BitVector],
    cfg: &DecoderConfig,
    iteration: usize,
    truth: Option<&BitVector>,
    trace: &mut Vec<TraceRow>,
) -> Vec<BitVector> {
    let t = code.hypergraph().t();
    let outputs: Vec<Vec<BitVector>> = candidates
        .par_iter()
        .map(|c| (0..t).map(|p| subprocedure(code, c, p, cfg.kappa)).collect())
        .collect();
    let mut seen = HashSet::new();
    let mut next = Vec::new();
    for (ci, (c, outs)) in candidates.iter().zip(outputs).enumerate() {
        for (p, out) in outs.into_iter().enumerate() {
            trace.push(TraceRow {
                iteration,
                candidate: ci,
                part: p,
                changed_bits: out.distance(c),
                residual: truth.map(|x| out.distance(x)),
            });
            if seen.insert(out.clone()) {
                next.push(out);
            }
        }
    }
    if next.len() > cfg.candidate_cap {
        let mut ranked: Vec<(usize, usize)> = next
            .par_iter()
            .enumerate()
            .map(|(i, c)| (code.unsatisfied_vertices(c), i))
            .collect();
        ranked.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| next[a.1].lex_cmp(&next[b.1])));
        let mut keep: Vec<usize> = ranked.into_iter().take(cfg.candidate_cap).map(|(_, i)| i).collect();
        keep.sort_unstable();
        next = keep.into_iter().map(|i| next[i].clone()).collect();
    }
    next
}

/// Which decoder to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecoderKind {
    Bh,
    Branching,
}

impl std::str::FromStr for DecoderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bh" => Ok(DecoderKind::Bh),
            "branching" => Ok(DecoderKind::Branching),
            _ => Err(Error::Parse(format!(
                "unknown decoder {s:?} (expected bh or branching)"
            ))),
        }
    }
}

impl std::fmt::Display for DecoderKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            DecoderKind::Bh => "bh",
            DecoderKind::Branching => "branching",
        })
    }
}

pub fn decode(kind: DecoderKind, code: &HypergraphCode, y: &BitVector, cfg: &DecoderConfig) -> DecodeOutcome {
    match kind {
        DecoderKind::Bh => bh_decode(code, y, cfg),
        DecoderKind::Branching => branching_decode(code, y, cfg),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraphs::random_hypergraph;
    use crate::local_codes::make_named_code;

    fn hamming_code(t: usize, m: usize, seed: u64) -> HypergraphCode {
        let h = random_hypergraph(t, m, 7, seed).unwrap();
        HypergraphCode::uniform(h, make_named_code("hamming_7").unwrap()).unwrap()
    }

    #[test]
    fn subprocedure_fixes_codewords() {
        let c = hamming_code(2, 7, 1);
        let k = Kappa::integer(2).unwrap();
        let x = c.encode(&BitVector::from_bools(&vec![true; c.dimension()])).unwrap();
        for p in 0..2 {
            assert_eq!(subprocedure(&c, &x, p, k), x);
        }
    }

    #[test]
    fn subprocedure_removes_single_errors() {
        let c = hamming_code(2, 7, 2);
        let k = Kappa::integer(2).unwrap();
        for e in 0..c.blocklength() {
            let y = BitVector::unit(c.blocklength(), e);
            for p in 0..2 {
                assert!(subprocedure(&c, &y, p, k).is_zero(), "edge {e} part {p}");
            }
        }
    }

    #[test]
    fn subprocedure_leaves_far_vertices_alone() {
        let c = hamming_code(2, 7, 3);
        // kappa = 4 puts the threshold at 0.75: one error is too far
        let k = Kappa::integer(4).unwrap();
        let y = BitVector::unit(c.blocklength(), 5);
        assert_eq!(subprocedure(&c, &y, 0, k), y);
    }

    #[test]
    fn bh_returns_codeword_after_one_round() {
        let c = hamming_code(4, 3, 4);
        let cfg = DecoderConfig::for_t(4);
        let out = bh_decode(&c, &BitVector::zeros(c.blocklength()), &cfg);
        assert_eq!(out.result, Some(BitVector::zeros(c.blocklength())));
        assert_eq!(out.rounds, 1);
    }

    #[test]
    fn bh_corrects_low_weight_errors_at_t4() {
        let c = hamming_code(4, 3, 5);
        let cfg = DecoderConfig::for_t(4);
        let big_n = c.blocklength();
        for a in 0..big_n {
            for b in a..big_n {
                let y = BitVector::from_support(big_n, &[a, b]);
                let out = bh_decode(&c, &y, &cfg);
                if let Some(r) = &out.result {
                    assert!(c.contains(r));
                }
                if a == b || y.weight() == 1 {
                    assert!(out.result.as_ref().is_some_and(BitVector::is_zero));
                }
            }
        }
    }

    #[test]
    fn bh_output_is_always_a_codeword() {
        let c = hamming_code(2, 7, 6);
        let cfg = DecoderConfig::for_t(2);
        let big_n = c.blocklength();
        for seed in 0..200u64 {
            let support: Vec<usize> = (0..6).map(|i| ((seed * 31 + i * 17) % big_n as u64) as usize).collect();
            let y = BitVector::from_support(big_n, &support);
            if let Some(r) = bh_decode(&c, &y, &cfg).result {
                assert!(c.contains(&r));
            }
        }
    }

    #[test]
    fn depth_zero_matches_majority_decoder() {
        let c = hamming_code(2, 7, 7);
        let mut cfg = DecoderConfig::for_t(2);
        cfg.depth = 0;
        for e in (0..c.blocklength()).step_by(3) {
            let y = BitVector::from_support(c.blocklength(), &[e, (e * 7 + 3) % c.blocklength()]);
            assert_eq!(branching_decode(&c, &y, &cfg).result, bh_decode(&c, &y, &cfg).result);
        }
    }

    #[test]
    fn candidate_tree_has_bounded_arity() {
        let c = hamming_code(3, 4, 8);
        let mut cfg = DecoderConfig::for_t(3);
        cfg.kappa = Kappa::integer(2).unwrap();
        for s in 0..4 {
            cfg.depth = s;
            let y = BitVector::from_support(c.blocklength(), &[0, 9, 17]);
            let out = branching_decode(&c, &y, &cfg);
            assert!(out.candidates_examined <= 3usize.pow(s as u32));
            let rows: usize = (1..=s)
                .map(|l| out.branch_trace.iter().filter(|r| r.iteration == l).count())
                .sum();
            assert_eq!(rows, out.branch_trace.len());
        }
    }

    #[test]
    fn candidate_cap_bounds_the_tree() {
        let c = hamming_code(3, 4, 9);
        let mut cfg = DecoderConfig::for_t(3);
        cfg.kappa = Kappa::integer(2).unwrap();
        cfg.depth = 4;
        cfg.candidate_cap = 2;
        let y = BitVector::from_support(c.blocklength(), &[0, 9, 17, 22]);
        assert!(branching_decode(&c, &y, &cfg).candidates_examined <= 2);
    }

    #[test]
    fn branching_corrects_single_errors_for_odd_t() {
        let c = hamming_code(3, 4, 10);
        let cfg = DecoderConfig::for_t(3);
        for e in 0..c.blocklength() {
            let y = BitVector::unit(c.blocklength(), e);
            let out = branching_decode_traced(&c, &y, &cfg, Some(&BitVector::zeros(c.blocklength())));
            assert!(out.result.is_some_and(|r| r.is_zero()), "edge {e}");
        }
    }

    #[test]
    fn branch_only_finish_searches_for_codewords() {
        let c = hamming_code(3, 4, 11);
        let mut cfg = DecoderConfig::for_t(3);
        cfg.odd_finish = OddFinish::BranchOnly;
        cfg.kappa = Kappa::integer(2).unwrap();
        let y = BitVector::unit(c.blocklength(), 3);
        let out = branching_decode(&c, &y, &cfg);
        assert!(out.result.is_some_and(|r| r.is_zero()));
        // kappa = 4 never acts on Hamming-7, so no candidate becomes a codeword
        cfg.kappa = Kappa::integer(4).unwrap();
        cfg.bh_max_iters = 3;
        assert!(branching_decode(&c, &y, &cfg).result.is_none());
    }

    #[test]
    fn trace_csv_layout() {
        let c = hamming_code(2, 7, 12);
        let mut cfg = DecoderConfig::for_t(2);
        cfg.kappa = Kappa::integer(2).unwrap();
        cfg.depth = 1;
        let y = BitVector::unit(c.blocklength(), 0);
        let out = branching_decode_traced(&c, &y, &cfg, Some(&BitVector::zeros(c.blocklength())));
        let csv = out.trace_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "iteration,candidate,part,changed_bits,residual");
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[1], "1,0,0,1,0");
    }

    #[test]
    fn decoding_is_deterministic() {
        let c = hamming_code(3, 5, 13);
        let cfg = DecoderConfig::for_t(3);
        let y = BitVector::from_support(c.blocklength(), &[1, 2, 30]);
        assert_eq!(branching_decode(&c, &y, &cfg), branching_decode(&c, &y, &cfg));
    }
}
