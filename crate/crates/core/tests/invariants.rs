//! Property tests over randomly drawn matrices, codes and hypergraphs.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use hypercode::code::random_local_parities;
use hypercode::decoders::{branching_decode, decode};
use hypercode::local_codes::hamming_parity_check;
use hypercode::{
    bh_decode, make_named_code, random_hypergraph, random_parity_matrix, subprocedure, BitMatrix, BitVector,
    DecoderConfig, DecoderKind, HypergraphCode, Kappa, LocalCode,
};

fn random_code(t: usize, m: usize, n: usize, r: usize, seed: u64) -> HypergraphCode {
    let h = random_hypergraph(t, m, n, seed).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xabcd);
    let local = random_local_parities(&h, r, &mut rng)
        .into_iter()
        .map(|p| std::sync::Arc::new(LocalCode::from_parity_check(p).unwrap()))
        .collect();
    HypergraphCode::build(h, local).unwrap()
}

fn bits(len: usize) -> impl Strategy<Value = BitVector> {
    proptest::collection::vec(any::<bool>(), len).prop_map(|b| BitVector::from_bools(&b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_plus_nullity_is_cols(r in 0usize..12, n in 1usize..80, seed in any::<u64>()) {
        let m = random_parity_matrix(r, n, seed);
        let ker = m.nullspace_basis();
        prop_assert_eq!(m.rank() + ker.rows(), n);
        for row in ker.row_vectors() {
            prop_assert!(m.mul_vec(row).is_zero());
        }
    }

    #[test]
    fn kernel_combinations_are_in_kernel(r in 1usize..10, n in 2usize..40, seed in any::<u64>(), mask in any::<u64>()) {
        let m = random_parity_matrix(r, n, seed);
        let ker = m.nullspace_basis();
        let bound = if ker.rows() >= 64 { u64::MAX } else { (1u64 << ker.rows()) - 1 };
        let x = ker.combination(mask & bound);
        prop_assert!(m.mul_vec(&x).is_zero());
    }

    #[test]
    fn elimination_is_deterministic(r in 1usize..10, n in 1usize..40, seed in any::<u64>()) {
        let a = random_parity_matrix(r, n, seed).nullspace_basis();
        let b = random_parity_matrix(r, n, seed).nullspace_basis();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn enumerator_sums_to_code_size(r in 0usize..8, n in 1usize..16, seed in any::<u64>()) {
        let code = LocalCode::from_parity_check(random_parity_matrix(r, n, seed)).unwrap();
        let total: u64 = code.weight_enumerator().iter().sum();
        prop_assert_eq!(total, 1u64 << code.k());
    }

    #[test]
    fn threshold_decode_acts_or_leaves_unchanged(y in bits(15), extra in 0u64..7, den in 1u64..3) {
        let code = LocalCode::from_parity_check(hamming_parity_check(4)).unwrap();
        let kappa = Kappa::new(2 * den + extra, den).unwrap();
        let (nearest, dist) = code.nearest_codeword(&y);
        let out = code.threshold_decode(&y, kappa);
        if kappa.admits(dist, code.d1()) {
            prop_assert_eq!(out, nearest);
        } else {
            prop_assert_eq!(out, y);
        }
    }

    #[test]
    fn contains_matches_global_parity(seed in any::<u64>(), x in bits(12)) {
        let code = random_code(2, 4, 3, 1, seed);
        let syndrome = code.parity_check().mul_vec(&x);
        prop_assert_eq!(code.contains(&x), syndrome.is_zero());
    }

    #[test]
    fn rate_respects_lower_bound(t in 2usize..4, m in 2usize..6, n in 3usize..7, r in 0usize..3, seed in any::<u64>()) {
        let code = random_code(t, m, n, r.min(n), seed);
        prop_assert!(code.rate() + 1e-12 >= code.rate_lower_bound());
        let h = code.hypergraph();
        for part in 0..t {
            for v in 0..m {
                prop_assert_eq!(h.vertex_edges(part, v).len(), n);
            }
        }
    }

    #[test]
    fn encoded_messages_are_codewords(seed in any::<u64>(), msg in any::<u64>()) {
        let code = random_code(2, 5, 4, 1, seed);
        let k = code.dimension();
        let words = vec![if k >= 64 { msg } else { msg & ((1u64 << k) - 1) }];
        let c = code.encode(&BitVector::from_words(k, words)).unwrap();
        prop_assert!(code.contains(&c));
    }

    #[test]
    fn subprocedure_is_idempotent_on_its_output(seed in 0u64..1000, y in bits(49), part in 0usize..2) {
        let h = random_hypergraph(2, 7, 7, seed).unwrap();
        let code = HypergraphCode::uniform(h, make_named_code("hamming_7").unwrap()).unwrap();
        let kappa = Kappa::integer(3).unwrap();
        let once = subprocedure(&code, &y, part, kappa);
        let twice = subprocedure(&code, &once, part, kappa);
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn bh_results_are_codewords(seed in 0u64..1000, y in bits(49)) {
        let h = random_hypergraph(2, 7, 7, seed).unwrap();
        let code = HypergraphCode::uniform(h, make_named_code("hamming_7").unwrap()).unwrap();
        let out = bh_decode(&code, &y, &DecoderConfig::for_t(2));
        if let Some(c) = &out.result {
            prop_assert!(code.contains(c));
        }
    }

    #[test]
    fn decoding_is_deterministic(seed in 0u64..1000, y in bits(63)) {
        let h = random_hypergraph(3, 9, 7, seed).unwrap();
        let code = HypergraphCode::uniform(h, make_named_code("hamming_7").unwrap()).unwrap();
        let cfg = DecoderConfig::for_t(3);
        prop_assert_eq!(branching_decode(&code, &y, &cfg), branching_decode(&code, &y, &cfg));
    }
}

#[test]
fn unique_decoding_within_half_distance() {
    for name in ["hamming_7", "hamming_15", "golay_23", "repetition_5"] {
        let code = make_named_code(name).unwrap();
        let n = code.n();
        let radius = (code.d1() - 1) / 2;
        let codewords: Vec<BitVector> = (0..1u64 << code.k())
            .step_by(37)
            .map(|m| code.generator().combination(m))
            .collect();
        let errors: Vec<BitVector> = if n <= 15 {
            (0..1u64 << n)
                .filter(|e| e.count_ones() as usize <= radius)
                .map(|e| BitVector::from_words(n, vec![e]))
                .collect()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(5);
            (0..500)
                .map(|_| hypercode::simulator::random_error(&mut rng, n, radius))
                .collect()
        };
        for c in &codewords {
            for e in &errors {
                assert_eq!(&code.nearest_codeword(&c.xor(e)).0, c, "{name}");
            }
        }
    }
}

/// Every pattern of weight at most `w` that `cfg` corrects, as a bit per pattern.
fn success_set(code: &HypergraphCode, cfg: &DecoderConfig, w: usize) -> Vec<bool> {
    let n = code.blocklength();
    let zero = BitVector::zeros(n);
    let mut out = Vec::new();
    for i in 0..n {
        out.push(decode(DecoderKind::Branching, code, &BitVector::unit(n, i), cfg).result == Some(zero.clone()));
        if w >= 2 {
            for j in i + 1..n {
                let y = BitVector::from_support(n, &[i, j]);
                out.push(decode(DecoderKind::Branching, code, &y, cfg).result == Some(zero.clone()));
            }
        }
    }
    out
}

#[test]
fn branching_success_grows_with_depth() {
    let h7 = make_named_code("hamming_7").unwrap();
    for (t, m, seed) in [(2usize, 7usize, 2024u64), (2, 7, 5), (3, 9, 2024)] {
        let code = HypergraphCode::uniform(random_hypergraph(t, m, 7, seed).unwrap(), h7.clone()).unwrap();
        let mut cfg = DecoderConfig::for_t(t);
        let mut prev: Option<Vec<bool>> = None;
        for depth in 0..=3 {
            cfg.depth = depth;
            let now = success_set(&code, &cfg, 2);
            if let Some(prev) = &prev {
                for (k, (a, b)) in prev.iter().zip(&now).enumerate() {
                    assert!(!a || *b, "t={t} seed={seed}: pattern {k} lost at depth {depth}");
                }
            }
            prev = Some(now);
        }
    }
}

#[test]
fn empty_matrix_has_full_kernel() {
    let m = BitMatrix::zeros(0, 5);
    assert_eq!(m.nullspace_basis().rows(), 5);
}
