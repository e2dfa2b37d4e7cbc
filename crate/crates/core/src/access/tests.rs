use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::encoding::{AnyEncoding, EncodingI, Scheme};
use crate::testing::{chain, compressed_random, doubled, fibonacci, grammar_a, grammar_b, grammar_one, left_chain, random_slp};
use crate::Slp;

const SCHEMES: [Scheme; 3] = [Scheme::I, Scheme::II, Scheme::III];

fn lg(n: u64) -> f64 {
    (n as f64).log2()
}

fn check_access_bounds(st: &QueryStats, n: u64) {
    assert!(st.non_sc_hops as f64 <= 2.0 * lg(n), "{st:?} for N={n}");
    assert!((st.trie_nodes + st.non_sc_hops) as f64 <= 6.0 * lg(n) + 32.0, "{st:?} for N={n}");
}

fn check_extract_bounds(st: &QueryStats, n: u64, width: u64) {
    assert!(st.marginal_hops as f64 <= 2.0 * lg(n), "{st:?}");
    assert!(st.work() as f64 <= 6.0 * lg(n) + 8.0 * width as f64 + 32.0, "{st:?} for N={n}, width {width}");
}

#[test]
fn access_examples() {
    let b = EncodingI::build(&grammar_b()).unwrap();
    let (c, st) = access(&b, 5).unwrap();
    assert_eq!((c, st.non_sc_hops), (b'a', 1));
    let (c, st) = access(&b, 2).unwrap();
    assert_eq!((c, st.non_sc_hops), (b'a', 2));
    let a = EncodingI::build(&grammar_a()).unwrap();
    assert_eq!(access(&a, 4).unwrap().0, b'b');
    assert!(access(&a, 0).is_err());
    assert!(access(&a, 5).is_err());
}

#[test]
fn extract_examples() {
    let b = EncodingI::build(&grammar_b()).unwrap();
    let (got, st) = extract(&b, 2, 4).unwrap();
    assert_eq!(got, b"aaa");
    assert_eq!((st.non_sc_hops, st.marginal_hops), (3, 2));
    let a = EncodingI::build(&grammar_a()).unwrap();
    assert_eq!(extract(&a, 1, 4).unwrap().0, b"abab");
    assert_eq!(extract(&a, 2, 3).unwrap().0, b"ba");
    assert!(extract(&a, 3, 2).is_err());
    assert!(extract(&a, 0, 2).is_err());
    assert!(extract(&a, 4, 5).is_err());
}

fn exhaustive(slp: &Slp) {
    let text = slp.text();
    let n = slp.len();
    for scheme in SCHEMES {
        let enc = AnyEncoding::build(slp, scheme).unwrap();
        let e = enc.as_dyn();
        for p in 1..=n {
            let (c, st) = access(e, p).unwrap();
            assert_eq!(c, text[p as usize - 1], "{scheme} access {p}");
            check_access_bounds(&st, n);
            for q in p..=n {
                let (got, st) = extract(e, p, q).unwrap();
                assert_eq!(got, &text[p as usize - 1..q as usize], "{scheme} extract {p}..{q}");
                check_extract_bounds(&st, n, q - p + 1);
            }
        }
    }
}

#[test]
fn exhaustive_on_fixtures() {
    for slp in [grammar_a(), grammar_b(), grammar_one(), chain(40), left_chain(40), fibonacci(9)] {
        exhaustive(&slp);
    }
}

#[test]
fn exhaustive_on_small_random_grammars() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..60 {
        let n = rng.gen_range(1..40);
        let sigma = rng.gen_range(1..5);
        exhaustive(&random_slp(&mut rng, n, sigma, 200));
    }
}

#[test]
fn chain_access_is_logarithmic() {
    let slp = chain(20_000);
    let n = slp.len();
    for scheme in SCHEMES {
        let enc = AnyEncoding::build(&slp, scheme).unwrap();
        for p in (1..=n).step_by(97).chain([n]) {
            let (c, st) = access(enc.as_dyn(), p).unwrap();
            assert_eq!(c, b'a');
            check_access_bounds(&st, n);
        }
    }
}

#[test]
fn long_ranges_on_a_repetitive_text() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let slp = doubled(&compressed_random(&mut rng, 300, 4), 10);
    let n = slp.len();
    let text = slp.text();
    for scheme in SCHEMES {
        let enc = AnyEncoding::build(&slp, scheme).unwrap();
        for _ in 0..50 {
            let p = rng.gen_range(1..=n);
            let q = (p + rng.gen_range(0..5000)).min(n);
            let (got, st) = extract(enc.as_dyn(), p, q).unwrap();
            assert_eq!(got, &text[p as usize - 1..q as usize]);
            check_extract_bounds(&st, n, q - p + 1);
        }
    }
}

#[test]
fn stack_depth_stays_within_the_hop_count() {
    let slp = fibonacci(20);
    let enc = AnyEncoding::build(&slp, Scheme::I).unwrap();
    let n = slp.len();
    let (_, st) = extract(enc.as_dyn(), 1, n).unwrap();
    assert!(st.stack_max <= st.marginal_hops);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_ranges_match_the_text(seed in any::<u64>(), n in 1usize..300, sigma in 1usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let slp = random_slp(&mut rng, n, sigma, 1 << 16);
        let text = slp.text();
        let len = slp.len();
        for scheme in SCHEMES {
            let enc = AnyEncoding::build(&slp, scheme).unwrap();
            for _ in 0..20 {
                let p = rng.gen_range(1..=len);
                let q = rng.gen_range(p..=len.min(p + 600));
                let (got, st) = extract(enc.as_dyn(), p, q).unwrap();
                prop_assert_eq!(&got[..], &text[p as usize - 1..q as usize]);
                check_extract_bounds(&st, len, q - p + 1);
                let (c, st) = access(enc.as_dyn(), p).unwrap();
                prop_assert_eq!(c, text[p as usize - 1]);
                check_access_bounds(&st, len);
            }
        }
    }
}
