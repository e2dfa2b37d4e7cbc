//! Symmetric centroid decomposition of the derivation DAG.
//!
//! An edge `u -> v` is an SC-edge when `(lg in(u), lg out(u)) = (lg in(v), lg out(v))`,
//! where `in` counts root-to-node paths and `out` node-to-leaf paths (both
//! floored logarithms). Maximal chains of SC-edges are SC-paths.

use crate::error::{Error, Result};
use crate::slp::{Slp, SymbolId};

/// `floor(lg x)` for `x >= 1`.
#[inline]
pub fn floor_lg(x: u64) -> u32 {
    debug_assert!(x >= 1);
    63 - x.leading_zeros()
}

/// `ceil(lg x)` for `x >= 1`.
#[inline]
pub fn ceil_lg(x: u64) -> u32 {
    debug_assert!(x >= 1);
    if x <= 1 {
        0
    } else {
        64 - (x - 1).leading_zeros()
    }
}

/// Path counts per symbol id (index 0 unused).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathCounts {
    pub in_paths: Vec<u64>,
    pub out_paths: Vec<u64>,
}

impl PathCounts {
    #[inline]
    pub fn class(&self, x: SymbolId) -> (u32, u32) {
        (floor_lg(self.in_paths[x.get()]), floor_lg(self.out_paths[x.get()]))
    }

    #[inline]
    pub fn is_sc_edge(&self, u: SymbolId, v: SymbolId) -> bool {
        self.class(u) == self.class(v)
    }
}

pub fn path_counts(slp: &Slp) -> Result<PathCounts> {
    let size = slp.n() + slp.sigma() + 1;
    let mut in_paths = vec![0u64; size];
    in_paths[slp.start().get()] = 1;
    for v in slp.topological_order() {
        let c = in_paths[v.get()];
        let (l, r) = slp.rule(v);
        for x in [l, r] {
            in_paths[x.get()] =
                in_paths[x.get()].checked_add(c).ok_or(Error::PathCountOverflow(x.0))?;
        }
    }
    let out_paths = slp.lengths().to_vec();
    Ok(PathCounts { in_paths, out_paths })
}

/// Variables grouped into SC-paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScDecomposition {
    paths: Vec<Vec<SymbolId>>,
    /// per variable id: (path index, position), both 1-based
    node_path: Vec<(u32, u32)>,
    /// variable id in the grammar this decomposition was first computed on
    /// -> variable id in the grammar it currently describes
    renumber: Vec<u32>,
}

impl ScDecomposition {
    pub fn new(slp: &Slp) -> Result<Self> {
        Ok(sc_decompose(slp, &path_counts(slp)?))
    }

    pub fn paths(&self) -> &[Vec<SymbolId>] {
        &self.paths
    }

    pub fn n_prime(&self) -> usize {
        self.paths.len()
    }

    /// (path index, position) of a variable, both 1-based.
    pub fn node_path(&self, x: SymbolId) -> (usize, usize) {
        let (r, k) = self.node_path[x.get()];
        (r as usize, k as usize)
    }

    /// Variable id after all renumberings applied so far, indexed by the
    /// original variable id (index 0 unused).
    pub fn renumber(&self) -> &[u32] {
        &self.renumber
    }

    /// Whether path `k` (1-based) occupies ids `first..first+m` topmost first.
    pub fn is_consecutive(&self) -> bool {
        let mut next = 1u32;
        for path in &self.paths {
            for v in path {
                if v.0 != next {
                    return false;
                }
                next += 1;
            }
        }
        true
    }

    fn from_paths(n: usize, paths: Vec<Vec<SymbolId>>, renumber: Vec<u32>) -> Self {
        let mut node_path = vec![(0, 0); n + 1];
        for (r, path) in paths.iter().enumerate() {
            for (k, v) in path.iter().enumerate() {
                node_path[v.get()] = (r as u32 + 1, k as u32 + 1);
            }
        }
        ScDecomposition { paths, node_path, renumber }
    }
}

/// Splits the variables into SC-paths, ordered by their topmost node's id.
pub fn sc_decompose(slp: &Slp, counts: &PathCounts) -> ScDecomposition {
    let n = slp.n();
    let mut next: Vec<Option<SymbolId>> = vec![None; n + 1];
    let mut has_in = vec![false; n + 1];
    for u in 1..=n {
        let u = SymbolId(u as u32);
        let (l, r) = slp.rule(u);
        for v in [l, r] {
            if !counts.is_sc_edge(u, v) {
                continue;
            }
            assert!(slp.is_variable(v), "SC-edge {u} -> {v} reaches a terminal");
            assert!(next[u.get()].is_none(), "two SC-edges leave {u}");
            assert!(!has_in[v.get()], "two SC-edges enter {v}");
            next[u.get()] = Some(v);
            has_in[v.get()] = true;
        }
    }
    let mut paths = Vec::new();
    for top in 1..=n {
        if has_in[top] {
            continue;
        }
        let mut path = vec![SymbolId(top as u32)];
        while let Some(v) = next[path.last().unwrap().get()] {
            path.push(v);
        }
        paths.push(path);
    }
    debug_assert_eq!(paths.iter().map(Vec::len).sum::<usize>(), n);
    ScDecomposition::from_paths(n, paths, (0..=n as u32).collect())
}

/// Relabels variables so that `order[k]` (a 0-based path index) occupies the
/// `k`-th block of consecutive ids, topmost node first. Terminal ids are
/// unchanged.
pub fn renumber(slp: &Slp, dec: &ScDecomposition, order: &[usize]) -> (Slp, ScDecomposition) {
    let n = slp.n();
    assert_eq!(order.len(), dec.n_prime(), "order must list every path once");
    let mut new_id = vec![0u32; n + 1];
    let mut next = 1u32;
    let mut seen = vec![false; dec.n_prime()];
    for &k in order {
        assert!(!std::mem::replace(&mut seen[k], true), "path {k} listed twice");
        for v in &dec.paths[k] {
            new_id[v.get()] = next;
            next += 1;
        }
    }
    let map = |x: SymbolId| if slp.is_variable(x) { SymbolId(new_id[x.get()]) } else { x };
    let mut rules = vec![(SymbolId(0), SymbolId(0)); n];
    for (i, &(l, r)) in slp.rules().iter().enumerate() {
        rules[new_id[i + 1] as usize - 1] = (map(l), map(r));
    }
    let out = Slp::from_parts_unchecked(n, slp.sigma(), map(slp.start()), rules, slp.alphabet().to_vec());
    let paths = order.iter().map(|&k| dec.paths[k].iter().map(|&v| map(v)).collect()).collect();
    let renum = dec.renumber.iter().map(|&v| new_id[v as usize]).collect();
    (out, ScDecomposition::from_paths(n, paths, renum))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::*;
    use rand::{Rng, SeedableRng};

    fn ids(v: &[u32]) -> Vec<SymbolId> {
        v.iter().map(|&x| SymbolId(x)).collect()
    }

    #[test]
    fn counts_on_examples() {
        let a = path_counts(&grammar_a()).unwrap();
        assert_eq!(&a.in_paths[1..], &[1, 2, 2, 2]);
        assert_eq!(&a.out_paths[1..], &[4, 2, 1, 1]);
        let b = path_counts(&grammar_b()).unwrap();
        assert_eq!(&b.in_paths[1..], &[1, 1, 1, 1, 5]);
        assert_eq!(&b.out_paths[1..], &[5, 4, 3, 2, 1]);
    }

    /// Root-to-node path counts by enumerating every root-to-leaf walk.
    fn brute_in_paths(slp: &Slp) -> Vec<u64> {
        let mut cnt = vec![0u64; slp.n() + slp.sigma() + 1];
        let mut stack = vec![slp.start()];
        while let Some(x) = stack.pop() {
            cnt[x.get()] += 1;
            if slp.is_variable(x) {
                let (l, r) = slp.rule(x);
                stack.push(l);
                stack.push(r);
            }
        }
        cnt
    }

    #[test]
    fn counts_match_enumeration() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let (n, sigma) = (rng.gen_range(1..40), rng.gen_range(1..5));
            let slp = random_slp(&mut rng, n, sigma, 3000);
            let c = path_counts(&slp).unwrap();
            let brute = brute_in_paths(&slp);
            for x in 1..=slp.n() + slp.sigma() {
                if brute[x] > 0 {
                    assert_eq!(c.in_paths[x], brute[x]);
                }
                assert!(c.out_paths[x] <= slp.len());
                assert!(c.in_paths[x] <= slp.len());
            }
        }
    }

    #[test]
    fn decompositions_on_examples() {
        let a = ScDecomposition::new(&grammar_a()).unwrap();
        assert_eq!(a.paths(), &[ids(&[1]), ids(&[2])]);
        let b = ScDecomposition::new(&grammar_b()).unwrap();
        assert_eq!(b.paths(), &[ids(&[1, 2]), ids(&[3, 4])]);
        assert_eq!(b.n_prime(), 2);
        assert_eq!(b.node_path(SymbolId(4)), (2, 2));
        let one = ScDecomposition::new(&grammar_one()).unwrap();
        assert_eq!(one.paths(), &[ids(&[1])]);
    }

    #[test]
    fn renumber_examples() {
        let b = grammar_b();
        let dec = ScDecomposition::new(&b).unwrap();
        let (same, d1) = renumber(&b, &dec, &[0, 1]);
        assert_eq!(same, b);
        assert!(d1.is_consecutive());
        let (sw, d2) = renumber(&b, &dec, &[1, 0]);
        assert_eq!(&d2.renumber()[1..], &[3, 4, 1, 2]);
        assert_eq!(sw.rules(), &[(SymbolId(2), SymbolId(5)), (SymbolId(5), SymbolId(5)), (SymbolId(4), SymbolId(5)), (SymbolId(1), SymbolId(5))]);
        assert_eq!(sw.start(), SymbolId(3));
        assert_eq!(sw.text(), b.text());
        assert!(d2.is_consecutive());
        assert_eq!(d2.paths(), ScDecomposition::new(&sw).unwrap().paths());
    }

    /// Non-SC-edges on the root-to-leaf walk to position `p`.
    fn non_sc_on_walk(slp: &Slp, c: &PathCounts, mut p: u64) -> usize {
        let mut x = slp.start();
        let mut hops = 0;
        while slp.is_variable(x) {
            let (l, r) = slp.rule(x);
            let ll = slp.expansion_length(l);
            let next = if p <= ll { l } else { p -= ll; r };
            if !c.is_sc_edge(x, next) {
                hops += 1;
            }
            x = next;
        }
        hops
    }

    #[test]
    fn structural_properties() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let mut grammars = vec![grammar_a(), grammar_b(), grammar_one(), chain(300), left_chain(200), fibonacci(20)];
        for _ in 0..60 {
            let n = rng.gen_range(1..200);
            let s = rng.gen_range(1..=16);
            grammars.push(random_slp(&mut rng, n, s, 1 << 14));
        }
        for _ in 0..10 {
            let len = rng.gen_range(2..3000);
            let sigma = rng.gen_range(1..=4);
            grammars.push(compressed_random(&mut rng, len, sigma));
        }
        for slp in &grammars {
            let c = path_counts(slp).unwrap();
            let dec = sc_decompose(slp, &c);
            // partition
            let mut seen = vec![0; slp.n() + 1];
            for (r, path) in dec.paths().iter().enumerate() {
                for (k, v) in path.iter().enumerate() {
                    seen[v.get()] += 1;
                    assert_eq!(dec.node_path(*v), (r + 1, k + 1));
                    if k + 1 < path.len() {
                        let (l, rr) = slp.rule(*v);
                        assert!(l == path[k + 1] || rr == path[k + 1]);
                        assert!(c.is_sc_edge(*v, path[k + 1]));
                    }
                }
            }
            assert!(seen[1..].iter().all(|&s| s == 1));
            // no SC-edge reaches a terminal
            for u in 1..=slp.n() {
                let (l, r) = slp.rule(SymbolId(u as u32));
                for x in [l, r] {
                    if !slp.is_variable(x) {
                        assert!(!c.is_sc_edge(SymbolId(u as u32), x));
                    }
                }
            }
            // hop bound
            let n_big = slp.len();
            let bound = 2.0 * (n_big as f64).log2();
            let step = (n_big / 2000).max(1);
            let mut p = 1;
            while p <= n_big {
                assert!(non_sc_on_walk(slp, &c, p) as f64 <= bound);
                p += step;
            }
            // renumbering preserves the derived text
            let mut order: Vec<usize> = (0..dec.n_prime()).collect();
            order.reverse();
            let (re, rdec) = renumber(slp, &dec, &order);
            assert!(re.validate().is_ok());
            assert!(rdec.is_consecutive());
            if n_big <= 10_000 {
                assert_eq!(re.text(), slp.text());
            }
        }
    }

    #[test]
    fn log_helpers() {
        assert_eq!(floor_lg(1), 0);
        assert_eq!(floor_lg(5), 2);
        assert_eq!(floor_lg(u64::MAX), 63);
        assert_eq!(ceil_lg(1), 0);
        assert_eq!(ceil_lg(2), 1);
        assert_eq!(ceil_lg(5), 3);
        assert_eq!(ceil_lg(8), 3);
        assert_eq!(ceil_lg(9), 4);
    }
}
