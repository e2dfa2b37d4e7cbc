//! Checks an encoding against the grammar it was built from.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::access::{access, extract};
use crate::encoding::SlpEncoding;
use crate::slp::Slp;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// `k` random accesses and `k` random ranges
    Samples(usize),
    /// every position, every prefix and suffix, and every range when `N <= 256`
    Full,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub p: u64,
    pub q: u64,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct VerifyReport {
    pub queries: usize,
    pub mismatches: Vec<Mismatch>,
    pub hop_violations: Vec<u64>,
    pub max_hops: usize,
    pub formula_holds: bool,
    pub length_matches: bool,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.hop_violations.is_empty() && self.formula_holds && self.length_matches
    }
}

pub fn verify(enc: &dyn SlpEncoding, slp: &Slp, mode: Mode, seed: u64) -> VerifyReport {
    let n = enc.len();
    let mut rep = VerifyReport {
        formula_holds: enc.space_report().formula_holds,
        length_matches: n == slp.len(),
        ..Default::default()
    };
    if !rep.length_matches {
        return rep;
    }
    let text = slp.text();
    let hop_limit = 2.0 * (n as f64).log2();

    let check_access = |p: u64, rep: &mut VerifyReport| {
        rep.queries += 1;
        match access(enc, p) {
            Ok((c, st)) => {
                if c != text[p as usize - 1] {
                    rep.mismatches.push(Mismatch {
                        p,
                        q: p,
                        detail: format!("access gave {c:#04x}, expected {:#04x}", text[p as usize - 1]),
                    });
                }
                rep.max_hops = rep.max_hops.max(st.non_sc_hops);
                if st.non_sc_hops as f64 > hop_limit {
                    rep.hop_violations.push(p);
                }
            }
            Err(e) => rep.mismatches.push(Mismatch { p, q: p, detail: e.to_string() }),
        }
    };
    let check_range = |p: u64, q: u64, rep: &mut VerifyReport| {
        rep.queries += 1;
        let want = &text[p as usize - 1..q as usize];
        match extract(enc, p, q) {
            Ok((got, _)) if got == want => {}
            Ok((got, _)) => {
                let at = got.iter().zip(want).position(|(a, b)| a != b).unwrap_or(got.len().min(want.len()));
                rep.mismatches.push(Mismatch { p, q, detail: format!("first difference at offset {at}") });
            }
            Err(e) => rep.mismatches.push(Mismatch { p, q, detail: e.to_string() }),
        }
    };

    match mode {
        Mode::Samples(k) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..k {
                check_access(rng.gen_range(1..=n), &mut rep);
                let p = rng.gen_range(1..=n);
                let q = rng.gen_range(p..=n.min(p + 4096));
                check_range(p, q, &mut rep);
            }
        }
        Mode::Full => {
            for p in 1..=n {
                check_access(p, &mut rep);
            }
            if n <= 256 {
                for p in 1..=n {
                    for q in p..=n {
                        check_range(p, q, &mut rep);
                    }
                }
            } else {
                for p in 1..=n {
                    check_range(p, n, &mut rep);
                    check_range(1, p, &mut rep);
                }
            }
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoding::{AnyEncoding, Scheme};
    use crate::testing::{fibonacci, grammar_a, grammar_b};

    #[test]
    fn matching_pair_passes() {
        for slp in [grammar_a(), grammar_b(), fibonacci(10)] {
            for scheme in [Scheme::I, Scheme::II, Scheme::III] {
                let enc = AnyEncoding::build(&slp, scheme).unwrap();
                assert!(verify(enc.as_dyn(), &slp, Mode::Full, 0).passed());
                let rep = verify(enc.as_dyn(), &slp, Mode::Samples(50), 1);
                assert!(rep.passed());
                assert_eq!(rep.queries, 100);
            }
        }
    }

    #[test]
    fn different_grammar_fails() {
        let a = fibonacci(10);
        let b = crate::slp::compress(&a.text().iter().rev().copied().collect::<Vec<_>>()).unwrap();
        let enc = AnyEncoding::build(&b, Scheme::I).unwrap();
        let rep = verify(enc.as_dyn(), &a, Mode::Full, 0);
        assert!(!rep.passed());
        assert!(!rep.mismatches.is_empty());

        let enc = AnyEncoding::build(&grammar_a(), Scheme::II).unwrap();
        assert!(!verify(enc.as_dyn(), &grammar_b(), Mode::Full, 0).passed());
    }
}
