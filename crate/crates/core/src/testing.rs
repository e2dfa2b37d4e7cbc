//! Fixture grammars and random grammar generators for tests and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::slp::{compress, Slp, SymbolId};

/// X1 -> X2 X2, X2 -> a b  (derives "abab")
pub fn grammar_a() -> Slp {
    Slp::new(2, 1, vec![(2, 2), (3, 4)], b"ab".to_vec()).unwrap()
}

/// X1 -> X2 a, X2 -> X3 a, X3 -> X4 a, X4 -> a a  (derives "aaaaa")
pub fn grammar_b() -> Slp {
    Slp::new(1, 1, vec![(2, 5), (3, 5), (4, 5), (5, 5)], b"a".to_vec()).unwrap()
}

/// X1 -> a b
pub fn grammar_one() -> Slp {
    Slp::new(2, 1, vec![(2, 3)], b"ab".to_vec()).unwrap()
}

/// X_i -> X_{i+1} a for i < n, X_n -> a a. Height n, length n+1.
pub fn chain(n: usize) -> Slp {
    let a = (n + 1) as u32;
    let rules = (1..=n as u32).map(|i| if (i as usize) < n { (i + 1, a) } else { (a, a) }).collect();
    Slp::new(1, 1, rules, b"a".to_vec()).unwrap()
}

/// X_i -> a X_{i+1} for i < n, X_n -> a a. Every path node branches left.
pub fn left_chain(n: usize) -> Slp {
    let a = (n + 1) as u32;
    let rules = (1..=n as u32).map(|i| if (i as usize) < n { (a, i + 1) } else { (a, a) }).collect();
    Slp::new(1, 1, rules, b"a".to_vec()).unwrap()
}

/// Fibonacci words: X_k -> X_{k+1} X_{k+2}, bottoming out at `ab`.
pub fn fibonacci(n: usize) -> Slp {
    assert!(n >= 1);
    let a = (n + 1) as u32;
    let b = (n + 2) as u32;
    let mut rules = Vec::with_capacity(n);
    for i in 1..=n as u32 {
        let next = |k: u32| if k <= n as u32 { k } else if k == n as u32 + 1 { a } else { b };
        rules.push(if i as usize == n { (a, b) } else { (next(i + 1), next(i + 2)) });
    }
    Slp::new(2, 1, rules, b"ab".to_vec()).unwrap()
}

/// Random byte string over the first `sigma` lowercase letters.
pub fn random_text<R: Rng>(rng: &mut R, len: usize, sigma: usize) -> Vec<u8> {
    (0..len).map(|_| b'a' + rng.gen_range(0..sigma) as u8).collect()
}

/// Random grammar with at most `n` variables over `sigma` terminals, every
/// expansion capped at `max_len` bytes. Variables are created bottom-up,
/// preferring children that nothing references yet, then unreachable ones
/// are dropped and the remaining ids shuffled.
pub fn random_slp<R: Rng>(rng: &mut R, n: usize, sigma: usize, max_len: u64) -> Slp {
    assert!(n >= 1 && (1..=255).contains(&sigma) && max_len >= 2);
    let sigma_u = sigma as u32;
    // working ids: terminals 0..sigma, variables sigma..
    let mut len: Vec<u64> = vec![1; sigma];
    let mut rules: Vec<(u32, u32)> = Vec::with_capacity(n);
    let mut unreferenced: Vec<u32> = Vec::new();
    for _ in 0..n {
        let pick = |rng: &mut R, budget: u64, unreferenced: &mut Vec<u32>| -> u32 {
            if !unreferenced.is_empty() && rng.gen_bool(0.7) {
                let k = rng.gen_range(0..unreferenced.len());
                let c = unreferenced[k];
                if len[c as usize] <= budget {
                    unreferenced.swap_remove(k);
                    return c;
                }
            }
            let total = len.len() as u32;
            let c = rng.gen_range(0..total);
            if len[c as usize] <= budget {
                if let Some(k) = unreferenced.iter().position(|&u| u == c) {
                    unreferenced.swap_remove(k);
                }
                c
            } else {
                rng.gen_range(0..sigma_u)
            }
        };
        let l = pick(rng, max_len - 1, &mut unreferenced);
        let r = pick(rng, max_len - len[l as usize], &mut unreferenced);
        let id = len.len() as u32;
        len.push(len[l as usize] + len[r as usize]);
        rules.push((l, r));
        unreferenced.push(id);
    }
    let start = len.len() as u32 - 1;

    let mut reach = vec![false; len.len()];
    reach[start as usize] = true;
    for w in (sigma_u..=start).rev() {
        if reach[w as usize] {
            let (l, r) = rules[(w - sigma_u) as usize];
            reach[l as usize] = true;
            reach[r as usize] = true;
        }
    }
    let mut live: Vec<u32> = (sigma_u..=start).filter(|&w| reach[w as usize]).collect();
    live.shuffle(rng);
    let nn = live.len() as u32;
    let mut map = vec![0u32; len.len()];
    for (k, &w) in live.iter().enumerate() {
        map[w as usize] = k as u32 + 1;
    }
    for t in 0..sigma_u {
        map[t as usize] = nn + t + 1;
    }
    let mut out = vec![(SymbolId(0), SymbolId(0)); nn as usize];
    for &w in &live {
        let (l, r) = rules[(w - sigma_u) as usize];
        out[map[w as usize] as usize - 1] = (SymbolId(map[l as usize]), SymbolId(map[r as usize]));
    }
    let alphabet = (0..sigma).map(|i| if sigma <= 26 { b'a' + i as u8 } else { i as u8 }).collect();
    let slp = Slp::from_parts_unchecked(nn as usize, sigma, SymbolId(map[start as usize]), out, alphabet);
    debug_assert!(slp.validate().is_ok());
    slp
}

/// Grammar for `text` built by [`compress`].
pub fn compressed_random<R: Rng>(rng: &mut R, len: usize, sigma: usize) -> Slp {
    compress(&random_text(rng, len, sigma)).unwrap()
}

/// Wraps `slp` in `k` doubling rules, so the result derives `<start>^(2^k)`.
pub fn doubled(slp: &Slp, k: usize) -> Slp {
    assert!(k >= 1);
    let n = slp.n();
    let shift = |x: SymbolId| SymbolId(x.0 + k as u32);
    let mut rules = Vec::with_capacity(n + k);
    for j in 1..=k as u32 {
        let child = if (j as usize) < k { SymbolId(j + 1) } else { shift(slp.start()) };
        rules.push((child, child));
    }
    rules.extend(slp.rules().iter().map(|&(l, r)| (shift(l), shift(r))));
    let out = Slp::from_parts_unchecked(n + k, slp.sigma(), SymbolId(1), rules, slp.alphabet().to_vec());
    debug_assert!(out.validate().is_ok());
    out
}

/// Brute-force references for the decomposition and the encodings, written
/// directly from the definitions and sharing no code with the library.
pub mod oracle {
    use std::collections::HashMap;

    use crate::slp::{Slp, SymbolId};

    fn floor_lg(x: u64) -> u32 {
        63 - x.leading_zeros()
    }

    /// Number of root-to-node paths for every symbol, by walking every path
    /// of the derivation tree.
    pub fn in_paths(slp: &Slp) -> Vec<u64> {
        let mut count = vec![0u64; slp.n() + slp.sigma() + 1];
        let mut stack = vec![slp.start()];
        while let Some(x) = stack.pop() {
            count[x.get()] += 1;
            if slp.is_variable(x) {
                let (l, r) = slp.rule(x);
                stack.push(l);
                stack.push(r);
            }
        }
        count
    }

    /// SC-paths ordered by the id of their topmost node.
    pub fn sc_paths(slp: &Slp) -> Vec<Vec<SymbolId>> {
        let inp = in_paths(slp);
        let out: Vec<u64> =
            (0..=slp.n() + slp.sigma()).map(|x| if x == 0 { 0 } else { slp.expand(SymbolId(x as u32)).len() as u64 }).collect();
        let class = |x: SymbolId| (floor_lg(inp[x.get()]), floor_lg(out[x.get()]));
        let sc_child = |u: SymbolId| -> Option<SymbolId> {
            let (l, r) = slp.rule(u);
            [l, r].into_iter().find(|&c| slp.is_variable(c) && class(c) == class(u))
        };
        let mut has_parent = vec![false; slp.n() + 1];
        for u in 1..=slp.n() {
            if let Some(c) = sc_child(SymbolId(u as u32)) {
                has_parent[c.get()] = true;
            }
        }
        let mut paths = Vec::new();
        for u in 1..=slp.n() {
            if has_parent[u] {
                continue;
            }
            let mut path = vec![SymbolId(u as u32)];
            while let Some(c) = sc_child(*path.last().unwrap()) {
                path.push(c);
            }
            paths.push(path);
        }
        paths
    }

    /// Non-SC children of a path in left-to-right order of their expansions.
    pub fn endpoints(slp: &Slp, path: &[SymbolId]) -> Vec<SymbolId> {
        let mut left = Vec::new();
        let mut right = Vec::new();
        for w in path.windows(2) {
            let (l, r) = slp.rule(w[0]);
            if l == w[1] {
                right.push(r);
            } else {
                left.push(l);
            }
        }
        let (l, r) = slp.rule(*path.last().unwrap());
        left.push(l);
        left.push(r);
        left.extend(right.into_iter().rev());
        left
    }

    /// Whether the two grammars are equal up to renaming variables.
    pub fn isomorphic(a: &Slp, b: &Slp) -> bool {
        if a.n() != b.n() || a.sigma() != b.sigma() || a.alphabet() != b.alphabet() {
            return false;
        }
        let mut map: HashMap<u32, u32> = HashMap::new();
        let mut back: HashMap<u32, u32> = HashMap::new();
        let mut stack = vec![(a.start(), b.start())];
        while let Some((x, y)) = stack.pop() {
            if a.is_variable(x) != b.is_variable(y) {
                return false;
            }
            if !a.is_variable(x) {
                if x.get() - a.n() != y.get() - b.n() {
                    return false;
                }
                continue;
            }
            match (map.get(&x.0), back.get(&y.0)) {
                (Some(&y2), _) if y2 != y.0 => return false,
                (_, Some(&x2)) if x2 != x.0 => return false,
                (Some(_), _) => continue,
                _ => {}
            }
            map.insert(x.0, y.0);
            back.insert(y.0, x.0);
            let (xl, xr) = a.rule(x);
            let (yl, yr) = b.rule(y);
            stack.push((xl, yl));
            stack.push((xr, yr));
        }
        map.len() == a.n()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn fixtures_derive_expected_text() {
        assert_eq!(grammar_a().text(), b"abab");
        assert_eq!(grammar_b().text(), b"aaaaa");
        assert_eq!(chain(10).len(), 11);
        assert_eq!(chain(10).height(), 10);
        assert_eq!(left_chain(6).text(), b"aaaaaaa");
        assert_eq!(fibonacci(5).text(), b"abaababaabaab");
        let d = doubled(&grammar_a(), 3);
        assert_eq!(d.text(), b"abab".repeat(8));
    }

    #[test]
    fn random_grammars_are_valid() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let n = rng.gen_range(1..300);
            let sigma = rng.gen_range(1..=16);
            let slp = random_slp(&mut rng, n, sigma, 1 << 20);
            assert!(slp.validate().is_ok());
            assert!(slp.len() <= 1 << 20);
        }
    }
}
