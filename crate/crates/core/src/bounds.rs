//! Weight-spectrum exponents of hypergraph-code ensembles, the distances
//! they imply, and decoding-radius formulas.
//!
//! Exponents are in bits per symbol: an ensemble with exponent `F(ω)` has
//! about `2^{N F(ω)}` codewords of weight `ωN` on average. Logarithms are
//! base 2 except inside the Chernoff bound, which works in natural log and
//! converts at the end.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Scan step used by [`spectrum_first_zero`] before bisection.
pub const SCAN_STEP: f64 = 1e-4;

/// Largest accepted root residual.
const RESIDUAL_TOL: f64 = 1e-9;

/// Binary entropy in bits; exactly 0 at both endpoints.
pub fn entropy(x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        return 0.0;
    }
    -x * x.log2() - (1.0 - x) * (1.0 - x).log2()
}

/// Bisection for a sign change of `f` on `[lo, hi]`, run until the bracket
/// stops shrinking. Returns the endpoint on the side where `f` has the
/// sign of `f(lo)`'s opposite, i.e. the first point at or past the crossing.
fn bisect(mut f: impl FnMut(f64) -> f64, mut lo: f64, mut hi: f64) -> Result<f64> {
    let flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() || flo.is_nan() || fhi.is_nan() {
        return Err(Error::RootNotConverged(format!(
            "no sign change on [{lo}, {hi}] (values {flo}, {fhi})"
        )));
    }
    let low_negative = flo < 0.0;
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm < 0.0) == low_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

fn check_residual(what: &str, residual: f64, tol: f64) -> Result<()> {
    if residual.abs() <= tol {
        Ok(())
    } else {
        Err(Error::RootNotConverged(format!("{what}: residual {residual:e}")))
    }
}

/// The relative Gilbert-Varshamov distance `h^{-1}(1 - R)`, the root of
/// `h(δ) = 1 - R` in `[0, 1/2]`.
pub fn entropy_inv_gv(rate: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&rate) {
        return Err(Error::InvalidParameter(format!("rate {rate} outside [0, 1]")));
    }
    if rate >= 1.0 {
        return Ok(0.0);
    }
    if rate <= 0.0 {
        return Ok(0.5);
    }
    bisect(|d| entropy(d) - (1.0 - rate), 0.0, 0.5)
}

fn check_unit(name: &str, x: f64) -> Result<()> {
    if x > 0.0 && x < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} = {x} must lie in (0, 1)")))
    }
}

fn check_t(t: usize) -> Result<()> {
    if t >= 2 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("t = {t} must be at least 2")))
    }
}

/// Which algebraic form of the small-weight branch of the random-ensemble
/// exponent to evaluate. The two differ in the sign of the logarithm term;
/// only [`C1Form::Consistent`] agrees with the zero-crossing equation used
/// by [`c1_min_distance`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum C1Form {
    #[default]
    Consistent,
    Printed,
}

/// Exponent of the average spectrum over random hypergraphs with random
/// local codes (all local rates `(R + t - 1)/t`).
pub fn c1_exponent(t: usize, rate: f64, omega: f64) -> f64 {
    c1_exponent_form(t, rate, omega, C1Form::Consistent)
}

pub fn c1_exponent_form(t: usize, rate: f64, omega: f64, form: C1Form) -> f64 {
    let tf = t as f64;
    let z = ((rate - 1.0) / tf).exp2();
    if omega <= 1.0 - z {
        let log_term = match form {
            C1Form::Consistent => (z / (1.0 - z)).log2(),
            C1Form::Printed => (((1.0 - rate) / tf).exp2() - 1.0).log2(),
        };
        omega * tf * log_term - (tf - 1.0) * entropy(omega)
    } else {
        entropy(omega) + rate - 1.0
    }
}

/// Relative distance guaranteed by the random ensemble: the nonzero root of
/// `ω (R - 1 - t log2(1 - 2^{(R-1)/t})) = (t - 1) h(ω)` when it falls on the
/// small-weight branch, and `δ_GV(R)` otherwise.
pub fn c1_min_distance(t: usize, rate: f64) -> Result<f64> {
    check_t(t)?;
    check_unit("rate", rate)?;
    let tf = t as f64;
    let z = ((rate - 1.0) / tf).exp2();
    let slope = rate - 1.0 - tf * (1.0 - z).log2();
    let g = |w: f64| w * slope - (tf - 1.0) * entropy(w);
    // g < 0 just right of 0 and g(1) = slope > 0
    let root = bisect(g, 1e-300, 1.0)?;
    check_residual("c1 root", g(root), RESIDUAL_TOL)?;
    if root <= 1.0 - z {
        Ok(root)
    } else {
        entropy_inv_gv(rate)
    }
}

/// The rate below which the random ensembles reach the GV distance: the
/// root of `R - 1 - t log2(1 - δ_GV(R)) = 0`. For rates at or below it the
/// first zero of the ensemble exponent is `δ_GV(R)`.
pub fn gv_attainment_threshold(t: usize) -> Result<f64> {
    check_t(t)?;
    let tf = t as f64;
    let g = |r: f64| r - 1.0 - tf * (1.0 - entropy_inv_gv(r).expect("rate in range")).log2();
    let mut hi = 1.0 - 1e-7;
    while g(hi) >= 0.0 {
        hi = 1.0 - (1.0 - hi) / 100.0;
        if 1.0 - hi < 1e-15 {
            return Err(Error::RootNotConverged(format!("no GV threshold bracket for t={t}")));
        }
    }
    bisect(g, 0.0, hi)
}

/// Natural-log weight enumerator `ln a_0 .. ln a_n`; `-inf` marks absent weights.
#[derive(Clone, Debug, PartialEq)]
pub struct LogEnumerator {
    ln_a: Vec<f64>,
}

impl LogEnumerator {
    pub fn from_counts(a: &[u64]) -> Result<Self> {
        Self::from_ln(
            a.iter()
                .map(|&c| if c == 0 { f64::NEG_INFINITY } else { (c as f64).ln() })
                .collect(),
        )
    }

    pub fn from_ln(ln_a: Vec<f64>) -> Result<Self> {
        if ln_a.len() < 2 {
            return Err(Error::InvalidParameter("enumerator needs length at least 1".into()));
        }
        if ln_a[0] != 0.0 {
            return Err(Error::InvalidParameter("enumerator must have a_0 = 1".into()));
        }
        Ok(LogEnumerator { ln_a })
    }

    /// Average enumerator of random `[n, n - r]` codes given by uniform `r × n`
    /// parity matrices: `a_0 = 1`, `a_i = C(n, i) 2^{-r}`.
    pub fn random_code_average(n: usize, r: usize) -> Self {
        let ln_a = (0..=n)
            .map(|i| {
                if i == 0 {
                    0.0
                } else {
                    ln_binom(n, i) - r as f64 * std::f64::consts::LN_2
                }
            })
            .collect();
        LogEnumerator { ln_a }
    }

    pub fn n(&self) -> usize {
        self.ln_a.len() - 1
    }

    pub fn max_weight(&self) -> usize {
        self.ln_a.iter().rposition(|x| x.is_finite()).unwrap_or(0)
    }

    /// `ln a(e^s)` and the tilted mean weight `a'(e^s) e^s / a(e^s)`.
    fn tilt(&self, s: f64) -> (f64, f64) {
        let top = self
            .ln_a
            .iter()
            .enumerate()
            .filter(|(_, x)| x.is_finite())
            .map(|(i, &x)| x + s * i as f64)
            .fold(f64::NEG_INFINITY, f64::max);
        let (mut z, mut zi) = (0.0, 0.0);
        for (i, &x) in self.ln_a.iter().enumerate() {
            if x.is_finite() {
                let e = (x + s * i as f64 - top).exp();
                z += e;
                zi += e * i as f64;
            }
        }
        (top + z.ln(), zi / z)
    }
}

fn ln_binom(n: usize, k: usize) -> f64 {
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}

fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|i| (i as f64).ln()).sum()
}

/// Chernoff-bound exponent of the ensemble with a fixed local code of
/// enumerator `a` on a random hypergraph:
/// `-(t-1) h(ω) + (t / ln 2) ((1/n) ln a(e^{s*}) - s* ω)` with `s*` the
/// saddle point where the tilted mean weight equals `ωn`.
pub fn c2_chernov_exponent(a: &LogEnumerator, t: usize, omega: f64) -> Result<f64> {
    check_t(t)?;
    let n = a.n() as f64;
    let target = omega * n;
    if !(target > 0.0 && target < a.max_weight() as f64) {
        return Err(Error::InvalidParameter(format!(
            "ω n = {target} outside the achievable mean weights (0, {})",
            a.max_weight()
        )));
    }
    let mean = |s: f64| a.tilt(s).1 - target;
    let (mut lo, mut hi) = (-1.0, 1.0);
    while mean(lo) > 0.0 {
        lo *= 2.0;
        if lo < -1e6 {
            return Err(Error::RootNotConverged("saddle point bracket (low side)".into()));
        }
    }
    while mean(hi) < 0.0 {
        hi *= 2.0;
        if hi > 1e6 {
            return Err(Error::RootNotConverged("saddle point bracket (high side)".into()));
        }
    }
    let s = bisect(mean, lo, hi)?;
    check_residual("saddle point", mean(s) / n, RESIDUAL_TOL)?;
    let tf = t as f64;
    let (ln_a, _) = a.tilt(s);
    Ok(-(tf - 1.0) * entropy(omega) + tf / std::f64::consts::LN_2 * (ln_a / n - s * omega))
}

/// The positive root `x_0` of `ωn + Σ_{i=d1}^n C(n,i)(ωn - i) x^i = 0`,
/// returned as `ln x_0`.
pub fn c2_mindist_root(n: usize, d1: usize, omega: f64) -> Result<f64> {
    if d1 == 0 || d1 > n {
        return Err(Error::InvalidParameter(format!("need 1 <= d1 <= n (d1={d1}, n={n})")));
    }
    check_unit("omega", omega)?;
    let wn = omega * n as f64;
    // terms (ln magnitude, signed coefficient) in ln x
    let g = |lx: f64| {
        let logs: Vec<f64> = (d1..=n).map(|i| ln_binom(n, i) + i as f64 * lx).collect();
        let top = logs.iter().copied().fold(wn.ln(), f64::max);
        let mut acc = wn * (-top).exp();
        for (j, &l) in logs.iter().enumerate() {
            acc += (wn - (d1 + j) as f64) * (l - top).exp();
        }
        acc
    };
    let (mut lo, mut hi) = (-1.0, 1.0);
    while g(lo) <= 0.0 {
        lo *= 2.0;
        if lo < -1e6 {
            return Err(Error::RootNotConverged("mindist root bracket".into()));
        }
    }
    while g(hi) >= 0.0 {
        hi *= 2.0;
        if hi > 1e6 {
            return Err(Error::RootNotConverged("mindist root bracket".into()));
        }
    }
    let lx = bisect(g, lo, hi)?;
    check_residual("mindist root (scaled)", g(lx), RESIDUAL_TOL)?;
    Ok(lx)
}

/// Exponent from the minimum distance alone:
/// `(t/n) log2((1 + Σ_{i=d1}^n C(n,i) x_0^i) / x_0^{ωn}) - (t-1) h(ω)`.
pub fn c2_mindist_exponent(n: usize, d1: usize, t: usize, omega: f64) -> Result<f64> {
    check_t(t)?;
    let lx = c2_mindist_root(n, d1, omega)?;
    let logs: Vec<f64> = std::iter::once(0.0)
        .chain((d1..=n).map(|i| ln_binom(n, i) + i as f64 * lx))
        .collect();
    let top = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let ln_sum = top + logs.iter().map(|l| (l - top).exp()).sum::<f64>().ln();
    let (tf, nf) = (t as f64, n as f64);
    Ok(tf / nf * (ln_sum - omega * nf * lx) / std::f64::consts::LN_2 - (tf - 1.0) * entropy(omega))
}

/// Leading term `(tω/δ1) h(δ1) - (t-1) h(ω)` of the relative-distance form
/// of the minimum-distance exponent.
pub fn c2_corollary_exponent(delta1: f64, t: usize, omega: f64) -> f64 {
    let tf = t as f64;
    tf * omega / delta1 * entropy(delta1) - (tf - 1.0) * entropy(omega)
}

/// The finite-length term dropped by [`c2_corollary_exponent`]; adding it
/// back makes the result an upper bound on [`c2_mindist_exponent`].
pub fn c2_corollary_slack(n: usize, d1: usize, t: usize) -> f64 {
    t as f64 / n as f64 * ((n - d1 + 2) as f64).log2()
}

/// Whether a fixed local code of distance `d1` makes the random ensemble
/// contain asymptotically good codes: `d1 (t - 1) > t`.
pub fn asymptotically_good_condition(d1: usize, t: usize) -> bool {
    d1 * (t - 1) > t
}

/// The root of `t x^{t-1} log2(x^t / (x^t - ω)) = 1 - R` on `x > ω^{1/t}`,
/// returned as `L = log2(x^t / (x^t - ω))` so that large `L` stays exact.
fn c3_root_l(t: usize, rate: f64, omega: f64) -> Result<f64> {
    let tf = t as f64;
    let g = |l: f64| {
        let u = -(-l * std::f64::consts::LN_2).exp_m1();
        tf * (omega / u).powf((tf - 1.0) / tf) * l - (1.0 - rate)
    };
    let mut hi = 1.0;
    while g(hi) < 0.0 {
        hi *= 2.0;
        if hi > 1e300 {
            return Err(Error::RootNotConverged("c3 root bracket".into()));
        }
    }
    let l = bisect(g, f64::MIN_POSITIVE, hi)?;
    check_residual("c3 root", g(l), RESIDUAL_TOL)?;
    Ok(l)
}

/// Exponent of the average spectrum over random local codes on a fixed
/// homogeneous hypergraph.
pub fn c3_exponent(t: usize, rate: f64, omega: f64) -> Result<f64> {
    check_t(t)?;
    check_unit("rate", rate)?;
    check_unit("omega", omega)?;
    let tf = t as f64;
    let l = c3_root_l(t, rate, omega)?;
    let u = -(-l * std::f64::consts::LN_2).exp_m1();
    let x0 = (omega / u).powf(1.0 / tf);
    if x0 < 1.0 {
        // h(u) with 1 - u = 2^{-L}
        let h_u = -u * u.log2() + (-l).exp2() * l;
        Ok(-x0 * (1.0 - rate) + x0.powi(t as i32) * h_u)
    } else {
        Ok(entropy(omega) + rate - 1.0)
    }
}

/// `x_0` for [`c3_exponent`].
pub fn c3_root(t: usize, rate: f64, omega: f64) -> Result<f64> {
    let l = c3_root_l(t, rate, omega)?;
    let u = -(-l * std::f64::consts::LN_2).exp_m1();
    Ok((omega / u).powf(1.0 / t as f64))
}

/// Exponent of the random linear code of rate `R`: `h(ω) + R - 1`.
pub fn random_linear_exponent(rate: f64, omega: f64) -> f64 {
    entropy(omega) + rate - 1.0
}

/// Leading term `δ1^{t/(t-1)}` of the designed relative distance.
pub fn designed_distance(delta1: f64, t: usize) -> f64 {
    delta1.powf(t as f64 / (t as f64 - 1.0))
}

/// Relative radius of the parallel majority decoder:
/// `C(t-1, t/2)^{-2/t} (δ1/2)^{(t+2)/t}`, defined for even `t`.
pub fn radius_bh(t: usize, delta1: f64) -> Result<f64> {
    if t < 2 || t % 2 == 1 {
        return Err(Error::InvalidParameter(format!(
            "majority radius needs even t >= 2, got {t}"
        )));
    }
    let tf = t as f64;
    let c = (0..t / 2).fold(1.0, |acc, i| acc * (t - 1 - i) as f64 / (i + 1) as f64);
    Ok(c.powf(-2.0 / tf) * (delta1 / 2.0).powf((tf + 2.0) / tf))
}

/// Radius of the branching decoder with `κ = t + 1`:
/// `(1 - α) δ1^{t/(t-1)} / (t+1)^{(t+1)/(t-1)}`.
pub fn radius_simple(t: usize, delta1: f64, alpha: f64) -> f64 {
    let tf = t as f64;
    (1.0 - alpha) * designed_distance(delta1, t) / (tf + 1.0).powf((tf + 1.0) / (tf - 1.0))
}

/// Radius with explicit `κ` and homogeneity `ε`:
/// `δ1^{t/(t-1)} ((1 - t/κ - εκ/δ1) / κ^t)^{1/(t-1)}`, or 0 when the bracket
/// is not positive.
pub fn radius_with_epsilon(t: usize, delta1: f64, kappa: f64, epsilon: f64) -> f64 {
    let tf = t as f64;
    let bracket = 1.0 - tf / kappa - epsilon * kappa / delta1;
    if bracket <= 0.0 {
        return 0.0;
    }
    designed_distance(delta1, t) * (bracket / kappa.powf(tf)).powf(1.0 / (tf - 1.0))
}

/// `f(μ, κ) = [1 - t(1-μ)/(κ-μ)]^{1/(t-1)} / (κ^{t/(t-1)} [μ + (1-μ)/(κ-1)]^{t/(t-1)})`,
/// taken as 0 where the bracket is negative.
pub fn refined_objective(t: usize, mu: f64, kappa: f64) -> f64 {
    let tf = t as f64;
    let bracket = 1.0 - tf * (1.0 - mu) / (kappa - mu);
    if bracket <= 0.0 {
        return 0.0;
    }
    let e = tf / (tf - 1.0);
    bracket.powf(1.0 / (tf - 1.0)) / (kappa.powf(e) * (mu + (1.0 - mu) / (kappa - 1.0)).powf(e))
}

/// Golden-section search for the minimum of a unimodal `f` on `[a, b]`.
fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > 1e-12 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// `min_{μ ∈ [0,1]} f(μ, κ)` and its argmin, by grid plus golden refinement.
fn refined_inner(t: usize, kappa: f64) -> (f64, f64) {
    const GRID: usize = 200;
    let (mut best_mu, mut best) = (0.0, f64::INFINITY);
    for i in 0..=GRID {
        let mu = i as f64 / GRID as f64;
        let v = refined_objective(t, mu, kappa);
        if v < best {
            best = v;
            best_mu = mu;
        }
    }
    let lo = (best_mu - 1.0 / GRID as f64).max(0.0);
    let hi = (best_mu + 1.0 / GRID as f64).min(1.0);
    let (mu, v) = golden_min(|mu| refined_objective(t, mu, kappa), lo, hi);
    if v < best {
        (mu, v)
    } else {
        (best_mu, best)
    }
}

/// A decoding radius as a fraction of `N`, with the parameters it used.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadiusReport {
    pub t: usize,
    pub delta1: f64,
    pub radius_fraction: f64,
    pub kappa: Option<f64>,
    pub mu: Option<f64>,
    pub formula: String,
}

impl RadiusReport {
    /// `radius_fraction / δ1^{t/(t-1)}`.
    pub fn constant(&self) -> f64 {
        self.radius_fraction / designed_distance(self.delta1, self.t)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }
}

/// `δ1^{t/(t-1)} max_{κ >= 2} min_{μ ∈ [0,1]} f(μ, κ)`, with the optimal κ and μ.
pub fn radius_refined(t: usize, delta1: f64) -> Result<RadiusReport> {
    check_t(t)?;
    let outer = |kappa: f64| refined_inner(t, kappa).1;
    let kmax = 4.0 * (t as f64 + 1.0);
    let step = 0.02;
    let steps = ((kmax - 2.0) / step) as usize;
    let grid: Vec<(f64, f64)> = (0..=steps)
        .into_par_iter()
        .map(|i| {
            let k = 2.0 + i as f64 * step;
            (k, outer(k))
        })
        .collect();
    let (k0, _) = grid
        .iter()
        .copied()
        .fold((2.0, f64::NEG_INFINITY), |best, p| if p.1 > best.1 { p } else { best });
    let (kappa, neg) = golden_min(|k| -outer(k), (k0 - step).max(2.0), k0 + step);
    let (mu, _) = refined_inner(t, kappa);
    Ok(RadiusReport {
        t,
        delta1,
        radius_fraction: designed_distance(delta1, t) * -neg,
        kappa: Some(kappa),
        mu: Some(mu),
        formula: "refined".into(),
    })
}

/// Supremum of the initial interval `(lo, ω_0)` on which `f < 0`: a scan
/// with step [`SCAN_STEP`] followed by bisection. Returns `lo` if `f(lo) >= 0`
/// and `hi` if `f` stays negative.
pub fn spectrum_first_zero(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
    if f(lo) >= 0.0 {
        return lo;
    }
    let mut prev = lo;
    let mut k = 1usize;
    loop {
        let w = (lo + k as f64 * SCAN_STEP).min(hi);
        if f(w) >= 0.0 {
            return bisect(|x| if f(x) >= 0.0 { 1.0 } else { -1.0 }, prev, w).expect("sign change bracketed");
        }
        if w >= hi {
            return hi;
        }
        prev = w;
        k += 1;
    }
}

/// [`spectrum_first_zero`] over `(0, 1)` for an exponent that may fail at a
/// point; failures count as "not negative".
pub fn first_zero_of(f: impl Fn(f64) -> Result<f64>) -> f64 {
    spectrum_first_zero(|w| f(w).unwrap_or(f64::INFINITY), SCAN_STEP, 1.0 - SCAN_STEP)
}

/// Sampled exponent curve with its description.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExponentCurve {
    pub ensemble: String,
    pub params: Vec<(String, String)>,
    pub samples: Vec<(f64, f64)>,
}

impl ExponentCurve {
    /// Evaluates `f` on `grid` (strictly increasing, inside `(0, 1)`).
    pub fn sample(
        ensemble: &str,
        params: Vec<(String, String)>,
        grid: &[f64],
        f: impl Fn(f64) -> Result<f64> + Sync,
    ) -> Result<Self> {
        if grid.windows(2).any(|w| w[0] >= w[1]) || grid.iter().any(|&w| !(w > 0.0 && w < 1.0)) {
            return Err(Error::InvalidParameter(
                "grid must be strictly increasing inside (0, 1)".into(),
            ));
        }
        let samples = grid
            .par_iter()
            .map(|&w| f(w).map(|v| (w, v)))
            .collect::<Result<Vec<_>>>()?;
        Ok(ExponentCurve {
            ensemble: ensemble.into(),
            params,
            samples,
        })
    }

    /// `omega,F` header and one row per sample.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("omega,F\n");
        for (w, f) in &self.samples {
            writeln!(s, "{w},{f}").unwrap();
        }
        s
    }
}

/// `count` equally spaced points strictly inside `(a, b)`.
pub fn open_grid(a: f64, b: f64, count: usize) -> Vec<f64> {
    (1..=count)
        .map(|i| a + (b - a) * i as f64 / (count + 1) as f64)
        .collect()
}
