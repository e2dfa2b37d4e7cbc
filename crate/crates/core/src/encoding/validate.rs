//! Consistency checks for encodings read from untrusted input.

use super::{Common, SlpEncoding, Sym};
use crate::error::{Error, Result};
use crate::scd::{ceil_lg, path_counts};
use crate::slp::SymbolId;
use crate::succinct::BitVec;
use crate::trie::push_trie;

fn corrupt(msg: impl Into<String>) -> Error {
    Error::Corrupt(msg.into())
}

impl Common {
    /// Size and count checks that make every path-context computation safe.
    pub(crate) fn check_shape(&self) -> Result<()> {
        let (n, np) = (self.n, self.n_prime);
        if n == 0 || np == 0 || np > n {
            return Err(corrupt(format!("impossible sizes n={n}, n'={np}")));
        }
        if self.sigma == 0 || self.alphabet.len() != self.sigma {
            return Err(corrupt("alphabet size mismatch"));
        }
        if self.len < 2 {
            return Err(corrupt("derived length below 2"));
        }
        if self.start == 0 || self.start > n {
            return Err(corrupt(format!("start variable {} out of range", self.start)));
        }
        if self.p.len() != n || self.p.count_ones() != np || !self.p.bit(n) {
            return Err(corrupt("P does not mark n' path ends"));
        }
        if self.d.len() != n - np {
            return Err(corrupt("D length is not n - n'"));
        }
        if self.g.len() != n || self.g.width() != ceil_lg(self.len) as usize {
            return Err(corrupt("G size mismatch"));
        }
        if self.b.len() != 2 * n - np {
            return Err(corrupt("B length is not 2n - n'"));
        }
        Ok(())
    }
}

/// Checks that the encoding describes an acyclic grammar in which every
/// variable is reachable, that the start variable derives `N` bytes, that
/// the stored paths are exactly its SC-paths, and that `G` and `B` agree
/// with the lengths derived from the rules.
pub fn validate_encoding(e: &dyn SlpEncoding) -> Result<()> {
    let c = e.common();
    c.check_shape()?;
    let n = c.n;

    // lengths bottom-up with cycle detection
    let mut len = vec![0u64; n + 1];
    let mut state = vec![0u8; n + 1];
    let sym_len = |s: Sym, len: &[u64]| match s {
        Sym::Term(_) => 1,
        Sym::Var(u) => len[u],
    };
    for root in 1..=n {
        if state[root] != 0 {
            continue;
        }
        let mut stack = vec![(root, false)];
        while let Some((u, expanded)) = stack.pop() {
            if expanded {
                let (l, r) = e.children_sym(u);
                len[u] = sym_len(l, &len)
                    .checked_add(sym_len(r, &len))
                    .ok_or_else(|| corrupt(format!("length of variable {u} overflows")))?;
                state[u] = 2;
                continue;
            }
            if state[u] == 2 {
                continue;
            }
            state[u] = 1;
            stack.push((u, true));
            let (l, r) = e.children_sym(u);
            for s in [r, l] {
                if let Sym::Var(v) = s {
                    match state[v] {
                        0 => stack.push((v, false)),
                        1 => return Err(corrupt(format!("cycle through variable {v}"))),
                        _ => {}
                    }
                }
            }
        }
    }

    let mut seen = vec![false; n + 1];
    let mut stack = vec![c.start];
    seen[c.start] = true;
    while let Some(u) = stack.pop() {
        let (l, r) = e.children_sym(u);
        for s in [l, r] {
            if let Sym::Var(v) = s {
                if !std::mem::replace(&mut seen[v], true) {
                    stack.push(v);
                }
            }
        }
    }
    if let Some(u) = (1..=n).find(|&u| !seen[u]) {
        return Err(corrupt(format!("variable {u} is unreachable")));
    }
    if len[c.start] != c.len {
        return Err(corrupt(format!("start derives {} bytes, header says {}", len[c.start], c.len)));
    }

    let slp = e.to_slp();
    let counts = path_counts(&slp).map_err(|err| corrupt(err.to_string()))?;
    for r in 1..=c.n_prime {
        let ctx = c.path_ctx(r);
        for u in ctx.u1()..=ctx.um() {
            let (l, rr) = slp.rule(SymbolId(u as u32));
            let next = (u < ctx.um()).then(|| SymbolId(u as u32 + 1));
            for child in [l, rr] {
                let sc = counts.is_sc_edge(SymbolId(u as u32), child);
                if sc != (Some(child) == next) {
                    return Err(corrupt(format!("path {r} disagrees with the SC-edges at variable {u}")));
                }
            }
        }
    }

    let mut b = BitVec::with_capacity(c.b.len());
    let mut sums = Vec::new();
    for r in 1..=c.n_prime {
        let ctx = c.path_ctx(r);
        sums.clear();
        let mut acc = 0u64;
        for i in 1..=ctx.m + 1 {
            let piece = if i == ctx.t + 1 {
                len[ctx.um()]
            } else if i == ctx.t + 2 {
                continue;
            } else {
                sym_len(e.endpoint(&ctx, i), &len)
            };
            acc += piece;
            sums.push(acc);
        }
        for (j, &want) in sums.iter().enumerate() {
            if c.g(&ctx, j + 1) != want {
                return Err(corrupt(format!("G entry {} of path {r} is inconsistent", j + 1)));
            }
        }
        push_trie(&sums, &mut b)?;
    }
    if &b != c.b.bits() {
        return Err(corrupt("B does not match the tries of G"));
    }
    Ok(())
}
