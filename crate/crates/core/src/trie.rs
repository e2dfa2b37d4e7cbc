//! Compacted binary tries over prefix sums, answering interval-biased search:
//! given `p`, find `k` with `p` in `(g_k, g_{k+1}]` in time logarithmic in
//! `g_m / (g_{k+1} - g_k)`.
//!
//! Leaf `i` carries the code `g_i - 1`, so every code fits in `ceil(lg g_m)`
//! bits even when `g_m` is a power of two. The trie splits each group at the
//! highest bit where its smallest and largest codes differ and is emitted in
//! post-order (leaf `0`, internal node `1`).

use crate::error::{Error, Result};
use crate::succinct::{BitVec, PostOrderTree};

/// Code width of a trie whose largest prefix sum is `gm`, with `ceil(lg 1) = 1`.
pub fn code_width(gm: u64) -> u32 {
    if gm <= 2 {
        1
    } else {
        64 - (gm - 1).leading_zeros()
    }
}

fn check_sums(a: &[u64]) -> Result<()> {
    if a.is_empty() {
        return Err(Error::NotIncreasing { index: 0 });
    }
    if a[0] == 0 {
        return Err(Error::NotIncreasing { index: 1 });
    }
    if let Some(k) = a.windows(2).position(|w| w[0] >= w[1]) {
        return Err(Error::NotIncreasing { index: k + 2 });
    }
    Ok(())
}

/// Post-order bits of the trie for `a = [g_1, ..., g_m]`.
pub fn build_trie(a: &[u64]) -> Result<BitVec> {
    let mut out = BitVec::with_capacity(2 * a.len());
    push_trie(a, &mut out)?;
    Ok(out)
}

/// Appends the trie for `a` to `out`.
pub fn push_trie(a: &[u64], out: &mut BitVec) -> Result<()> {
    check_sums(a)?;
    emit(a, out);
    Ok(())
}

fn emit(a: &[u64], out: &mut BitVec) {
    if a.len() == 1 {
        out.push(false);
        return;
    }
    let lo = a[0] - 1;
    let hi = a[a.len() - 1] - 1;
    let bit = 63 - (lo ^ hi).leading_zeros();
    // sorted codes sharing every bit above `bit`: the split is where it turns on
    let split = a.partition_point(|&g| (g - 1) >> bit & 1 == 0);
    emit(&a[..split], out);
    emit(&a[split..], out);
    out.push(true);
}

/// Returns `(k, visited)` with `p` in `(g(k), g(k+1)]`, where `g(0) = 0` and
/// `g(i)` for `1 <= i <= m` is the `i`-th prefix sum stored at the leaves of
/// `t`. `visited` counts the internal nodes inspected.
pub fn interval_search(t: &PostOrderTree<'_>, g: impl Fn(usize) -> u64, p: u64) -> Result<(usize, usize)> {
    let m = t.leaves();
    let gm = g(m);
    if p == 0 || p > gm {
        return Err(Error::PositionOutOfRange { pos: p, len: gm });
    }
    if p <= g(1) {
        return Ok((0, 0));
    }
    let mut v = t.root();
    let mut visited = 0;
    loop {
        visited += 1;
        let left = t.lchild(v)?;
        let i = t.leafrank(t.rmleaf(left));
        if p <= g(i) {
            v = left;
        } else if p > g(i + 1) {
            v = t.rchild(v)?;
        } else {
            return Ok((i, visited));
        }
    }
}

/// Checks `2^(w - depth(u)) > g_{i+1} - g_i` at every internal node `u`,
/// where `u` separates leaves `i` and `i+1` and `w = code_width(g_m)`.
/// Returns the first violating `(node, depth)`.
pub fn check_depth_bound(t: &PostOrderTree<'_>, a: &[u64]) -> std::result::Result<(), (usize, usize)> {
    let w = code_width(*a.last().unwrap()) as i64;
    let mut stack = vec![(t.root(), 0usize)];
    while let Some((v, depth)) = stack.pop() {
        if t.is_leaf(v) {
            continue;
        }
        let left = t.lchild(v).map_err(|_| (v, depth))?;
        let i = t.leafrank(t.rmleaf(left));
        let gap = a[i] - a[i - 1];
        let exp = w - depth as i64;
        if exp < 0 || (exp < 64 && (1u64 << exp) <= gap) {
            return Err((v, depth));
        }
        stack.push((left, depth + 1));
        stack.push((v - 1, depth + 1));
    }
    Ok(())
}
