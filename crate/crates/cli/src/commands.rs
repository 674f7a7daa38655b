use std::fs;
use std::path::{Path, PathBuf};

use hypercode::bounds::{
    c1_exponent, c1_min_distance, c2_chernov_exponent, c2_corollary_exponent, c2_mindist_exponent, c3_exponent,
    first_zero_of, open_grid, radius_bh, radius_refined, radius_simple, radius_with_epsilon, random_linear_exponent,
    spectrum_first_zero, SCAN_STEP,
};
use hypercode::code::{construct, Model};
use hypercode::decoders::{branching_decode_traced, decode};
use hypercode::simulator::{decode_success_sweep, ensemble_spectrum_mc, LocalSpec, Origin, SpectrumSpec};
use hypercode::{
    make_named_code, BitVector, CodeSource, DecoderConfig, DecoderKind, Ensemble, ExponentCurve, Graph, Kappa,
    LocalCode, LogEnumerator, Manifest, OddFinish, RadiusReport,
};

use crate::{
    BoundEnsemble, BoundsArgs, ConstructArgs, DecodeArgs, DecoderArgs, EnsembleArg, Failure, ModelKind, OddFinishArg,
    OriginArg, RadiusFormula, RunConfig, SimulateArgs, SpectrumArgs, DEFAULT_SEED,
};

type Outcome = Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn need<T: Copy>(value: Option<T>, flag: &str) -> Result<T, Failure> {
    value.ok_or_else(|| usage(format!("{flag} is required here")))
}

fn write(path: &Path, contents: &str) -> Outcome {
    fs::write(path, contents).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))
}

fn resolve_seed(seed: &mut Option<u64>) -> Outcome {
    if seed.is_none() {
        *seed = Some(match std::env::var("HYPERCODE_SEED") {
            Ok(s) => s
                .trim()
                .parse()
                .map_err(|_| usage(format!("HYPERCODE_SEED={s:?} is not a u64")))?,
            Err(_) => DEFAULT_SEED,
        });
    }
    Ok(())
}

fn out_dir(cfg: &mut RunConfig) -> &mut PathBuf {
    match cfg {
        RunConfig::Bounds(a) => &mut a.out_dir,
        RunConfig::Construct(a) => &mut a.out_dir,
        RunConfig::Decode(a) => &mut a.out_dir,
        RunConfig::Simulate(a) => &mut a.out_dir,
        RunConfig::Spectrum(a) => &mut a.out_dir,
    }
}

/// Resolves defaults, echoes the configuration and runs it.
pub fn run(mut cfg: RunConfig, jobs: Option<usize>) -> Outcome {
    match &mut cfg {
        RunConfig::Construct(a) => resolve_seed(&mut a.seed)?,
        RunConfig::Simulate(a) => resolve_seed(&mut a.seed)?,
        _ => {}
    }
    let dir = out_dir(&mut cfg).clone();
    fs::create_dir_all(&dir).map_err(|e| usage(format!("cannot create {}: {e}", dir.display())))?;
    let echo = serde_json::to_string_pretty(&cfg).expect("plain data") + "\n";
    write(&dir.join("config.json"), &echo)?;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| usage(format!("cannot start worker threads: {e}")))?;
    pool.install(|| match &cfg {
        RunConfig::Bounds(a) => bounds(a),
        RunConfig::Construct(a) => construct_cmd(a),
        RunConfig::Decode(a) => decode_cmd(a),
        RunConfig::Simulate(a) => simulate(a),
        RunConfig::Spectrum(a) => spectrum(a),
    })
}

pub fn replay(path: &Path, out: Option<PathBuf>, jobs: Option<usize>) -> Outcome {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let mut cfg: RunConfig =
        serde_json::from_str(&text).map_err(|e| usage(format!("bad config {}: {e}", path.display())))?;
    if let Some(out) = out {
        *out_dir(&mut cfg) = out;
    }
    run(cfg, jobs)
}

/// A named code or `file:<path>`.
fn load_code(spec: &str) -> Result<LocalCode, Failure> {
    Ok(match spec.strip_prefix("file:") {
        Some(path) => LocalCode::load(path)?,
        None => make_named_code(spec)?,
    })
}

fn load_graph(spec: &str) -> Result<Graph, Failure> {
    let size = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| usage(format!("bad graph size in {spec:?}")))
    };
    if let Some(k) = spec.strip_prefix("complete:") {
        Ok(Graph::complete(size(k)?))
    } else if let Some(k) = spec.strip_prefix("cycle:") {
        Ok(Graph::cycle(size(k)?))
    } else if spec == "petersen" {
        Ok(Graph::petersen())
    } else {
        Ok(Graph::load(spec)?)
    }
}

fn read_word(path: &Path, len: usize) -> Result<BitVector, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let word: BitVector = text.trim().parse()?;
    if word.len() != len {
        return Err(usage(format!(
            "{} holds {} bits, the code has length {len}",
            path.display(),
            word.len()
        )));
    }
    Ok(word)
}

fn bounds(a: &BoundsArgs) -> Outcome {
    let t = a.t;
    let dir = &a.out_dir;
    if let Some(ensemble) = a.ensemble {
        let grid = open_grid(0.0, 1.0, a.points);
        let mut params = vec![("t".to_string(), t.to_string())];
        let (zero, curve) = match ensemble {
            BoundEnsemble::C1 | BoundEnsemble::C3 => {
                let rate = need(a.rate, "--rate")?;
                params.push(("rate".into(), rate.to_string()));
                if ensemble == BoundEnsemble::C1 {
                    let f = |w| Ok(c1_exponent(t, rate, w));
                    (
                        c1_min_distance(t, rate)?,
                        ExponentCurve::sample("c1", params, &grid, f)?,
                    )
                } else {
                    let f = |w| c3_exponent(t, rate, w);
                    (first_zero_of(f), ExponentCurve::sample("c3", params, &grid, f)?)
                }
            }
            BoundEnsemble::C2chernov => {
                let spec = a.code.as_deref().ok_or_else(|| usage("--code is required here"))?;
                let enumerator = LogEnumerator::from_counts(load_code(spec)?.weight_enumerator())?;
                params.push(("code".into(), spec.into()));
                let f = |w| c2_chernov_exponent(&enumerator, t, w);
                (first_zero_of(f), ExponentCurve::sample("c2chernov", params, &grid, f)?)
            }
            BoundEnsemble::C2mindist => {
                let spec = a.code.as_deref().ok_or_else(|| usage("--code is required here"))?;
                let code = load_code(spec)?;
                params.push(("code".into(), spec.into()));
                let f = |w| c2_mindist_exponent(code.n(), code.d1(), t, w);
                (first_zero_of(f), ExponentCurve::sample("c2mindist", params, &grid, f)?)
            }
            BoundEnsemble::C2corollary => {
                let delta1 = delta1_of(a)?;
                params.push(("delta1".into(), delta1.to_string()));
                let f = |w| c2_corollary_exponent(delta1, t, w);
                let zero = spectrum_first_zero(f, SCAN_STEP, 1.0 - SCAN_STEP);
                (zero, ExponentCurve::sample("c2corollary", params, &grid, |w| Ok(f(w)))?)
            }
        };
        write(&dir.join("curve.csv"), &curve.to_csv())?;
        println!("{zero:.7}");
        return Ok(());
    }

    let formula = need(a.radius, "--ensemble or --radius")?;
    let delta1 = delta1_of(a)?;
    let report = |radius_fraction: f64, kappa: Option<f64>, formula: &str| RadiusReport {
        t,
        delta1,
        radius_fraction,
        kappa,
        mu: None,
        formula: formula.into(),
    };
    let kappa = a.kappa.unwrap_or(t as f64 + 1.0);
    let r = match formula {
        RadiusFormula::Refined => radius_refined(t, delta1)?,
        RadiusFormula::Simple => report(radius_simple(t, delta1, a.alpha), Some(t as f64 + 1.0), "simple"),
        RadiusFormula::Bh => report(radius_bh(t, delta1)?, None, "bh"),
        RadiusFormula::Epsilon => {
            let eps = need(a.epsilon, "--epsilon")?;
            report(radius_with_epsilon(t, delta1, kappa, eps), Some(kappa), "epsilon")
        }
    };
    write(&dir.join("radius.json"), &(r.to_json() + "\n"))?;
    println!("{:.7}", r.radius_fraction);
    Ok(())
}

fn delta1_of(a: &BoundsArgs) -> Result<f64, Failure> {
    match (a.delta1, &a.code) {
        (Some(d), _) => Ok(d),
        (None, Some(spec)) => Ok(load_code(spec)?.relative_distance()),
        (None, None) => Err(usage("--delta1 or --code is required here")),
    }
}

fn construct_cmd(a: &ConstructArgs) -> Outcome {
    let model = match a.model {
        ModelKind::Random => Model::Random {
            t: a.t,
            m: need(a.m, "--m")?,
            n: need(a.n, "--n")?,
        },
        ModelKind::Path => {
            if a.m.is_some() || a.n.is_some() {
                return Err(usage("--m and --n apply to the random model only"));
            }
            let graph = a
                .graph
                .as_deref()
                .ok_or_else(|| usage("--graph is required for the path model"))?;
            Model::Path {
                graph: load_graph(graph)?,
                t: a.t,
            }
        }
    };
    let mut source: CodeSource = a.code.parse()?;
    if let CodeSource::File(p) = &source {
        // the manifest resolves relative paths against its own directory
        source = CodeSource::File(std::path::absolute(p).map_err(|e| usage(e.to_string()))?);
    }
    let seed = a.seed.expect("resolved");
    let built = construct(&model, source, seed, Path::new("hypergraph.txt"), &a.out_dir)?;
    let code = &built.code;
    write(&a.out_dir.join("hypergraph.txt"), &code.hypergraph().to_string())?;
    write(&a.out_dir.join("manifest.txt"), &built.manifest.to_string())?;
    println!("N={}", code.blocklength());
    println!("dimension={}", code.dimension());
    println!("rate={:.6}", code.rate());
    if let Some(eps) = built.epsilon {
        println!("epsilon={eps:.6}");
    }
    Ok(())
}

fn decoder_config(a: &DecoderArgs, t: usize) -> Result<(DecoderKind, DecoderConfig), Failure> {
    let kind: DecoderKind = a.decoder.parse()?;
    let mut cfg = DecoderConfig::for_t(t);
    if let Some(k) = &a.kappa {
        cfg.kappa = k.parse::<Kappa>()?;
    }
    cfg.depth = a.depth;
    cfg.bh_max_iters = a.max_iters;
    cfg.candidate_cap = a.candidate_cap;
    cfg.odd_finish = match a.odd_finish {
        OddFinishArg::Majority => OddFinish::Majority,
        OddFinishArg::BranchOnly => OddFinish::BranchOnly,
    };
    cfg.validate()?;
    Ok((kind, cfg))
}

fn manifest_dir(path: &Path) -> &Path {
    path.parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."))
}

fn decode_cmd(a: &DecodeArgs) -> Outcome {
    let code = Manifest::load(&a.manifest)?.build(manifest_dir(&a.manifest))?;
    let n = code.blocklength();
    let y = read_word(&a.input, n)?;
    let truth = a.truth.as_deref().map(|p| read_word(p, n)).transpose()?;
    let (kind, cfg) = decoder_config(&a.decoder, code.hypergraph().t())?;
    let outcome = match kind {
        DecoderKind::Branching => branching_decode_traced(&code, &y, &cfg, truth.as_ref()),
        DecoderKind::Bh => decode(kind, &code, &y, &cfg),
    };
    let dir = &a.out_dir;
    let json = serde_json::to_string_pretty(&outcome).expect("plain data") + "\n";
    write(&dir.join("outcome.json"), &json)?;
    write(&dir.join("trace.csv"), &outcome.trace_csv())?;
    let decoded = dir.join("decoded.txt");
    match &outcome.result {
        Some(word) => {
            write(&decoded, &format!("{word}\n"))?;
            println!("{word}");
            Ok(())
        }
        None => {
            if decoded.exists() {
                fs::remove_file(&decoded).map_err(|e| usage(format!("cannot remove {}: {e}", decoded.display())))?;
            }
            eprintln!("decoding failed after {} candidates", outcome.candidates_examined);
            Err(Failure::Decode)
        }
    }
}

/// `a..b` with both ends included.
fn parse_sweep(s: &str) -> Result<Vec<usize>, Failure> {
    let bad = || usage(format!("--sweep expects a..b, got {s:?}"));
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    let lo: usize = lo.trim().parse().map_err(|_| bad())?;
    let hi: usize = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo..=hi).collect())
}

fn simulate(a: &SimulateArgs) -> Outcome {
    let seed = a.seed.expect("resolved");
    if a.trials == 0 {
        return Err(usage("--trials must be positive"));
    }
    let report = match a.ensemble {
        Some(ens) => {
            let local = match ens {
                EnsembleArg::C2 => {
                    let spec = a.code.as_deref().ok_or_else(|| usage("--code is required for c2"))?;
                    LocalSpec::Fixed(load_code(spec)?)
                }
                EnsembleArg::C1 | EnsembleArg::C3 => LocalSpec::Random {
                    rows: need(a.rows, "--rows")?,
                },
            };
            let spec = SpectrumSpec {
                ensemble: match ens {
                    EnsembleArg::C1 => Ensemble::C1,
                    EnsembleArg::C2 => Ensemble::C2,
                    EnsembleArg::C3 => Ensemble::C3,
                },
                t: need(a.t, "--t")?,
                m: need(a.m, "--m")?,
                n: need(a.n, "--n")?,
                local,
                hypergraph: None,
            };
            ensemble_spectrum_mc(&spec, a.trials, seed)?
        }
        None => {
            let path = a
                .manifest
                .as_deref()
                .ok_or_else(|| usage("--manifest or --ensemble is required"))?;
            let code = Manifest::load(path)?.build(manifest_dir(path))?;
            let (kind, cfg) = decoder_config(&a.decoder, code.hypergraph().t())?;
            let origin = match a.origin {
                OriginArg::Zero => Origin::ZeroCodeword,
                OriginArg::Random => Origin::RandomCodeword,
            };
            let mut weights = parse_sweep(&a.sweep)?;
            weights.retain(|&w| w <= code.blocklength());
            decode_success_sweep(&code, kind, &cfg, &weights, a.trials, seed, origin)?
        }
    };
    write(&a.out_dir.join("report.csv"), &report.to_csv())?;
    write(&a.out_dir.join("report.json"), &(report.to_json() + "\n"))?;
    print!("{}", report.to_csv());
    eprintln!("{} trials per weight in {:.2?}", a.trials, report.wall_time);
    Ok(())
}

fn spectrum(a: &SpectrumArgs) -> Outcome {
    let (t, rate) = (a.t, a.rate);
    let grid = open_grid(0.0, 1.0, a.points);
    let c1 = ExponentCurve::sample("c1", vec![], &grid, |w| Ok(c1_exponent(t, rate, w)))?;
    let c3 = ExponentCurve::sample("c3", vec![], &grid, |w| Ok(c3_exponent(t, rate, w).unwrap_or(f64::NAN)))?;
    let mut csv = String::from("omega,c1,c3,random_linear\n");
    for ((w, f1), (_, f3)) in c1.samples.iter().zip(&c3.samples) {
        let f3 = if f3.is_nan() { String::new() } else { f3.to_string() };
        csv.push_str(&format!("{w},{f1},{f3},{}\n", random_linear_exponent(rate, *w)));
    }
    write(&a.out_dir.join("spectrum.csv"), &csv)?;
    println!("c1 first zero {:.7}", c1_min_distance(t, rate)?);
    println!("c3 first zero {:.7}", first_zero_of(|w| c3_exponent(t, rate, w)));
    println!(
        "random linear first zero {:.7}",
        spectrum_first_zero(|w| random_linear_exponent(rate, w), SCAN_STEP, 1.0 - SCAN_STEP)
    );
    Ok(())
}
