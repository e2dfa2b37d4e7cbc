//! Simple deterministic text-to-grammar builder: repeated most-frequent-pair
//! replacement followed by balanced pairing of whatever sequence remains.

use std::collections::HashMap;

use super::{Slp, SymbolId};
use crate::error::{Error, Result};

/// Non-overlapping occurrence counts of adjacent pairs.
fn pair_counts(seq: &[u32]) -> HashMap<(u32, u32), u32> {
    let mut counts = HashMap::new();
    let mut prev: Option<(u32, u32)> = None;
    let mut prev_counted = false;
    for w in seq.windows(2) {
        let pair = (w[0], w[1]);
        if prev_counted && prev == Some(pair) {
            prev_counted = false;
        } else {
            *counts.entry(pair).or_insert(0) += 1;
            prev_counted = true;
        }
        prev = Some(pair);
    }
    counts
}

fn replace(seq: &[u32], pair: (u32, u32), id: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(seq.len());
    let mut i = 0;
    while i < seq.len() {
        if i + 1 < seq.len() && (seq[i], seq[i + 1]) == pair {
            out.push(id);
            i += 2;
        } else {
            out.push(seq[i]);
            i += 1;
        }
    }
    out
}

pub fn compress(text: &[u8]) -> Result<Slp> {
    if text.len() < 2 {
        return Err(Error::TextTooShort(text.len()));
    }
    let mut alphabet: Vec<u8> = text.to_vec();
    alphabet.sort_unstable();
    alphabet.dedup();
    let mut rank = [0u32; 256];
    for (i, &b) in alphabet.iter().enumerate() {
        rank[b as usize] = i as u32;
    }
    let sigma = alphabet.len() as u32;

    // working ids: terminals 0..sigma, rules sigma.. in creation order
    let mut seq: Vec<u32> = text.iter().map(|&b| rank[b as usize]).collect();
    let mut rules: Vec<(u32, u32)> = Vec::new();
    let mut known: HashMap<(u32, u32), u32> = HashMap::new();

    loop {
        if seq.len() < 2 {
            break;
        }
        let counts = pair_counts(&seq);
        let best = counts
            .iter()
            .filter(|&(_, &c)| c >= 2)
            .max_by(|a, b| a.1.cmp(b.1).then_with(|| b.0.cmp(a.0)));
        let Some((&pair, _)) = best else { break };
        let id = sigma + rules.len() as u32;
        rules.push(pair);
        known.insert(pair, id);
        seq = replace(&seq, pair, id);
    }

    while seq.len() > 1 {
        let mut next = Vec::with_capacity(seq.len().div_ceil(2));
        for c in seq.chunks(2) {
            if let [l, r] = *c {
                let id = *known.entry((l, r)).or_insert_with(|| {
                    rules.push((l, r));
                    sigma + rules.len() as u32 - 1
                });
                next.push(id);
            } else {
                next.push(c[0]);
            }
        }
        seq = next;
    }

    // Renumber: rule created last becomes variable 1.
    let n = rules.len() as u32;
    let map = |w: u32| -> SymbolId {
        if w < sigma {
            SymbolId(n + w + 1)
        } else {
            SymbolId(n - (w - sigma))
        }
    };
    let mut out = vec![(SymbolId(0), SymbolId(0)); n as usize];
    for (k, &(l, r)) in rules.iter().enumerate() {
        out[(n - k as u32 - 1) as usize] = (map(l), map(r));
    }
    let start = map(seq[0]);
    let slp = Slp::from_parts_unchecked(n as usize, sigma as usize, start, out, alphabet);
    debug_assert!(slp.validate().is_ok());
    Ok(slp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_examples() {
        let aa = compress(b"aa").unwrap();
        assert_eq!(aa.n(), 1);
        assert_eq!(aa.rules(), &[(SymbolId(2), SymbolId(2))]);

        let abab = compress(b"abab").unwrap();
        assert_eq!(abab.text(), b"abab");

        let aaaa = compress(b"aaaa").unwrap();
        assert_eq!(aaaa.text(), b"aaaa");
        assert!(aaaa.n() <= 3);

        assert!(matches!(compress(b"a"), Err(Error::TextTooShort(1))));
        assert!(matches!(compress(b""), Err(Error::TextTooShort(0))));
    }

    #[test]
    fn overlapping_pairs() {
        let c = pair_counts(&[0, 0, 0]);
        assert_eq!(c[&(0, 0)], 1);
        let c = pair_counts(&[0, 0, 0, 0]);
        assert_eq!(c[&(0, 0)], 2);
        assert_eq!(replace(&[0, 0, 0], (0, 0), 9), vec![9, 0]);
    }

    #[test]
    fn deterministic() {
        let t = b"the quick brown fox jumps over the lazy dog the end";
        assert_eq!(compress(t).unwrap(), compress(t).unwrap());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn round_trip(sigma in 1u8..=16, raw in proptest::collection::vec(any::<u8>(), 2..2000)) {
            let text: Vec<u8> = raw.iter().map(|b| b'a' + b % sigma).collect();
            let slp = compress(&text).unwrap();
            prop_assert!(slp.validate().is_ok());
            prop_assert_eq!(slp.text(), text);
        }
    }

    #[test]
    fn round_trip_long() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for sigma in [1u8, 2, 4, 16] {
            let text: Vec<u8> = (0..10_000).map(|_| b'a' + rng.gen_range(0..sigma)).collect();
            let slp = compress(&text).unwrap();
            assert_eq!(slp.text(), text);
        }
    }
}
