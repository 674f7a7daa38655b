//! Monte-Carlo experiments on constructed instances.
//!
//! Trial `i` of a run with master seed `s` draws from ChaCha8 seeded with `s`
//! on stream `i` (decode sweeps use stream `weight_index << 32 | i`). Trials
//! are grouped in fixed blocks whose statistics are merged in block order,
//! so results do not depend on the number of worker threads.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::seq::index::sample;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::code::{global_parity, random_local_parities, HypergraphCode, EXACT_SPECTRUM_CAP};
use crate::decoders::{decode, DecoderConfig, DecoderKind};
use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::hypergraphs::{random_hypergraph, Hypergraph};
use crate::local_codes::LocalCode;

/// Trials per statistics block.
const BLOCK: usize = 64;

/// Largest number of patterns [`exhaustive_radius_check`] will visit.
pub const EXHAUSTIVE_CAP: u64 = 10_000_000;

/// Running count, mean and sum of squared deviations.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Moments {
    pub count: u64,
    pub mean: f64,
    m2: f64,
}

impl Moments {
    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let d = x - self.mean;
        self.mean += d / self.count as f64;
        self.m2 += d * (x - self.mean);
    }

    /// Pairwise combination of two partial results.
    pub fn merge(&mut self, other: &Moments) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = *other;
            return;
        }
        let n = (self.count + other.count) as f64;
        let d = other.mean - self.mean;
        self.mean += d * other.count as f64 / n;
        self.m2 += other.m2 + d * d * self.count as f64 * other.count as f64 / n;
        self.count += other.count;
    }

    /// Unbiased sample variance (0 for fewer than two samples).
    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            self.m2 / (self.count - 1) as f64
        }
    }

    pub fn std_error(&self) -> f64 {
        (self.variance() / self.count.max(1) as f64).sqrt()
    }
}

/// Statistics of one row of a report: a weight `w` and the per-trial
/// quantity measured at it (codeword count `B_w`, or decoding success).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub weight: usize,
    pub trials: u64,
    pub mean: f64,
    pub variance: f64,
    /// Trials in which a lexicographic tie decided a local decoding.
    pub ties: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialReport {
    pub experiment: String,
    pub seed: u64,
    pub config: serde_json::Value,
    pub rows: Vec<Row>,
    /// Excluded from serialized output so that reruns are byte-identical.
    #[serde(skip)]
    pub wall_time: Duration,
}

impl TrialReport {
    /// `weight,trials,mean,variance,ties`, one row per weight.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("weight,trials,mean,variance,ties\n");
        for r in &self.rows {
            writeln!(s, "{},{},{},{},{}", r.weight, r.trials, r.mean, r.variance, r.ties).unwrap();
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }
}

fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Runs `trials` independent trials producing `width` values each, merging
/// per-value moments block by block in order.
fn run_blocks(trials: usize, width: usize, trial: impl Fn(usize) -> Result<Vec<f64>> + Sync) -> Result<Vec<Moments>> {
    let blocks = trials.div_ceil(BLOCK);
    let partial: Vec<Vec<Moments>> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut acc = vec![Moments::default(); width];
            for i in b * BLOCK..((b + 1) * BLOCK).min(trials) {
                for (m, x) in acc.iter_mut().zip(trial(i)?) {
                    m.push(x);
                }
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;
    let mut total = vec![Moments::default(); width];
    for p in &partial {
        for (a, b) in total.iter_mut().zip(p) {
            a.merge(b);
        }
    }
    Ok(total)
}

/// The three random ensembles of hypergraph codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ensemble {
    /// Random hypergraph, random local codes.
    C1,
    /// Random hypergraph, one fixed local code.
    C2,
    /// Fixed hypergraph, random local codes.
    C3,
}

impl std::str::FromStr for Ensemble {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "c1" | "C1" => Ok(Ensemble::C1),
            "c2" | "C2" => Ok(Ensemble::C2),
            "c3" | "C3" => Ok(Ensemble::C3),
            _ => Err(Error::Parse(format!("unknown ensemble {s:?}"))),
        }
    }
}

/// Local codes of an ensemble: uniform random `r × n` parity matrices, or
/// one fixed code.
#[derive(Clone, Debug)]
pub enum LocalSpec {
    Random { rows: usize },
    Fixed(LocalCode),
}

#[derive(Clone, Debug)]
pub struct SpectrumSpec {
    pub ensemble: Ensemble,
    pub t: usize,
    pub m: usize,
    pub n: usize,
    pub local: LocalSpec,
    /// The fixed hypergraph of ensemble C3; drawn from the master seed if absent.
    pub hypergraph: Option<Hypergraph>,
}

/// Mean and variance of the exact weight distribution `B_0..B_N` over
/// `trials` samples of an ensemble.
pub fn ensemble_spectrum_mc(spec: &SpectrumSpec, trials: usize, seed: u64) -> Result<TrialReport> {
    let start = Instant::now();
    let big_n = spec.m * spec.n;
    if big_n > EXACT_SPECTRUM_CAP {
        return Err(Error::SizeCap(format!("N = {big_n} exceeds {EXACT_SPECTRUM_CAP}")));
    }
    if trials == 0 {
        return Err(Error::InvalidParameter("need at least one trial".into()));
    }
    let (needs_random, fixed) = match (&spec.ensemble, &spec.local) {
        (Ensemble::C2, LocalSpec::Fixed(c)) => (false, Some(c)),
        (Ensemble::C2, _) => return Err(Error::InvalidParameter("ensemble C2 needs a fixed local code".into())),
        (_, LocalSpec::Random { .. }) => (true, None),
        (_, LocalSpec::Fixed(_)) => {
            return Err(Error::InvalidParameter(
                "ensembles C1 and C3 draw random local codes".into(),
            ))
        }
    };
    if let Some(c) = fixed {
        if c.n() != spec.n {
            return Err(Error::Dimension(format!(
                "local code length {} but n = {}",
                c.n(),
                spec.n
            )));
        }
    }
    let fixed_h = match spec.ensemble {
        Ensemble::C3 => Some(match &spec.hypergraph {
            Some(h) => h.clone(),
            None => random_hypergraph(spec.t, spec.m, spec.n, seed)?,
        }),
        _ => None,
    };
    let rows = match spec.local {
        LocalSpec::Random { rows } => rows,
        LocalSpec::Fixed(_) => 0,
    };
    let moments = run_blocks(trials, big_n + 1, |i| {
        let mut rng = trial_rng(seed, i as u64);
        let h = match &fixed_h {
            Some(h) => h.clone(),
            None => random_hypergraph(spec.t, spec.m, spec.n, rng.next_u64())?,
        };
        let parity = if needs_random {
            global_parity(&h, &random_local_parities(&h, rows, &mut rng))?
        } else {
            let c = fixed.expect("fixed code");
            global_parity(&h, std::iter::repeat_n(c.parity_check(), h.t() * h.m()))?
        };
        Ok(parity
            .nullspace_basis()
            .span_weight_census()
            .into_iter()
            .map(|b| b as f64)
            .collect())
    })?;
    let config = serde_json::json!({
        "ensemble": spec.ensemble,
        "t": spec.t,
        "m": spec.m,
        "n": spec.n,
        "local": match &spec.local {
            LocalSpec::Random { rows } => format!("random:{rows}"),
            LocalSpec::Fixed(c) => c.name().map_or_else(|| "fixed".to_string(), str::to_string),
        },
        "hypergraph": fixed_h.as_ref().map(Hypergraph::to_string),
        "trials": trials,
    });
    Ok(TrialReport {
        experiment: "spectrum".into(),
        seed,
        config,
        rows: moments
            .iter()
            .enumerate()
            .map(|(w, m)| Row {
                weight: w,
                trials: m.count,
                mean: m.mean,
                variance: m.variance(),
                ties: 0,
            })
            .collect(),
        wall_time: start.elapsed(),
    })
}

/// Where error patterns are added.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Origin {
    #[default]
    ZeroCodeword,
    RandomCodeword,
}

/// Uniform weight-`w` pattern of length `n`.
pub fn random_error<R: Rng>(rng: &mut R, n: usize, w: usize) -> BitVector {
    let mut support = sample(rng, n, w).into_vec();
    support.sort_unstable();
    BitVector::from_support(n, &support)
}

/// Exact-recovery rate of a decoder against random weight-`w` errors.
pub fn decode_success_sweep(
    code: &HypergraphCode,
    kind: DecoderKind,
    cfg: &DecoderConfig,
    weights: &[usize],
    trials: usize,
    seed: u64,
    origin: Origin,
) -> Result<TrialReport> {
    let start = Instant::now();
    cfg.validate()?;
    let big_n = code.blocklength();
    if let Some(&w) = weights.iter().find(|&&w| w > big_n) {
        return Err(Error::InvalidParameter(format!("weight {w} exceeds N = {big_n}")));
    }
    if trials == 0 {
        return Err(Error::InvalidParameter("need at least one trial".into()));
    }
    let mut rows = Vec::with_capacity(weights.len());
    for (wi, &w) in weights.iter().enumerate() {
        let m = run_blocks(trials, 2, |i| {
            let mut rng = trial_rng(seed, (wi as u64) << 32 | i as u64);
            // the pattern is drawn first so both origins see the same errors
            let error = random_error(&mut rng, big_n, w);
            let sent = match origin {
                Origin::ZeroCodeword => BitVector::zeros(big_n),
                Origin::RandomCodeword => {
                    let msg: Vec<bool> = (0..code.dimension()).map(|_| rng.gen()).collect();
                    code.encode(&BitVector::from_bools(&msg))?
                }
            };
            let y = sent.xor(&error);
            let out = decode(kind, code, &y, cfg);
            let ok = out.result.as_ref() == Some(&sent);
            Ok(vec![ok as u8 as f64, (out.local_ties > 0) as u8 as f64])
        })?;
        rows.push(Row {
            weight: w,
            trials: m[0].count,
            mean: m[0].mean,
            variance: m[0].variance(),
            ties: (m[1].mean * m[1].count as f64).round() as u64,
        });
    }
    let config = serde_json::json!({
        "decoder": kind,
        "decoder_config": cfg,
        "weights": weights,
        "trials": trials,
        "origin": origin,
        "N": big_n,
        "dimension": code.dimension(),
    });
    Ok(TrialReport {
        experiment: "decode_sweep".into(),
        seed,
        config,
        rows,
        wall_time: start.elapsed(),
    })
}

/// Outcome of [`exhaustive_radius_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadiusCheck {
    /// Largest `w` such that every pattern of weight at most `w` was corrected.
    pub verified: usize,
    pub patterns_tested: u64,
    /// Lexicographically first uncorrected pattern of weight `verified + 1`.
    pub first_failure: Option<BitVector>,
}

fn binom_u64(n: usize, k: usize) -> u64 {
    (0..k)
        .fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
        .min(u64::MAX as u128) as u64
}

/// Calls `f` on every `k`-subset of `start..n` in lexicographic order
/// (prefix given), stopping at the first `false`.
fn for_each_subset(
    prefix: &mut Vec<usize>,
    start: usize,
    n: usize,
    k: usize,
    f: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    if prefix.len() == k {
        return f(prefix);
    }
    for i in start..n {
        prefix.push(i);
        let go = for_each_subset(prefix, i + 1, n, k, f);
        prefix.pop();
        if !go {
            return false;
        }
    }
    true
}

/// Decodes every error pattern up to `max_weight` on the zero codeword.
pub fn exhaustive_radius_check(
    code: &HypergraphCode,
    kind: DecoderKind,
    cfg: &DecoderConfig,
    max_weight: usize,
) -> Result<RadiusCheck> {
    let big_n = code.blocklength();
    let max_weight = max_weight.min(big_n);
    let total: u64 = (0..=max_weight)
        .map(|w| binom_u64(big_n, w))
        .fold(0u64, u64::saturating_add);
    if total > EXHAUSTIVE_CAP {
        return Err(Error::SizeCap(format!(
            "{total} patterns exceeds the cap {EXHAUSTIVE_CAP}"
        )));
    }
    let zero = BitVector::zeros(big_n);
    let corrected = |support: &[usize]| {
        let y = BitVector::from_support(big_n, support);
        decode(kind, code, &y, cfg).result.as_ref() == Some(&zero)
    };
    let mut tested = 0u64;
    if !corrected(&[]) {
        return Ok(RadiusCheck {
            verified: 0,
            patterns_tested: 1,
            first_failure: Some(zero),
        });
    }
    tested += 1;
    for w in 1..=max_weight {
        // split on the first coordinate; keep the lexicographically first failure
        let per_first: Vec<(u64, Option<Vec<usize>>)> = (0..big_n)
            .into_par_iter()
            .map(|first| {
                let mut count = 0u64;
                let mut failure = None;
                let mut prefix = vec![first];
                for_each_subset(&mut prefix, first + 1, big_n, w, &mut |s| {
                    count += 1;
                    if corrected(s) {
                        true
                    } else {
                        failure = Some(s.to_vec());
                        false
                    }
                });
                (count, failure)
            })
            .collect();
        tested += per_first.iter().map(|p| p.0).sum::<u64>();
        if let Some(fail) = per_first.into_iter().find_map(|p| p.1) {
            return Ok(RadiusCheck {
                verified: w - 1,
                patterns_tested: tested,
                first_failure: Some(BitVector::from_support(big_n, &fail)),
            });
        }
    }
    Ok(RadiusCheck {
        verified: max_weight,
        patterns_tested: tested,
        first_failure: None,
    })
}
