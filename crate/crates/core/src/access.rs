//! Random access and substring extraction over an encoding.
//!
//! A query walks down the SC-paths: on each path it maps its position into
//! `<u_1>`, locates the endpoint `v_s` holding it with the path's trie, and
//! hops along the non-SC-edge to `v_s`. Extraction runs this walk for `p`
//! and `q` together until they part, then emits the bytes in between from
//! the endpoints hanging off the two diverging walks.

use serde::Serialize;

use crate::encoding::{PathCtx, SlpEncoding, Sym};
use crate::error::{Error, Result};

/// Work counters for one query.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct QueryStats {
    /// non-SC-edges crossed, over all walks of the query
    pub non_sc_hops: usize,
    /// non-SC-edges on the longest single root-to-leaf walk
    pub marginal_hops: usize,
    pub trie_nodes: usize,
    /// symbols visited while expanding whole endpoints
    pub expanded_symbols: usize,
    /// peak number of pending `(s, z)` frames
    pub stack_max: usize,
}

impl QueryStats {
    pub fn work(&self) -> usize {
        self.trie_nodes + self.non_sc_hops + self.expanded_symbols
    }
}

/// `T[p]`, 1-based.
pub fn access<E: SlpEncoding + ?Sized>(enc: &E, p: u64) -> Result<(u8, QueryStats)> {
    let c = enc.common();
    if p == 0 || p > c.len() {
        return Err(Error::PositionOutOfRange { pos: p, len: c.len() });
    }
    let mut st = QueryStats::default();
    let mut u = c.start_var();
    let mut pos = p;
    loop {
        let ctx = c.ctx_of(u);
        let pp = pos + c.g(&ctx, c.lefts_above(&ctx, u));
        let (s, off, visited) = enc.locate(&ctx, pp)?;
        st.trie_nodes += visited;
        st.non_sc_hops += 1;
        match enc.endpoint(&ctx, s) {
            Sym::Term(r) => {
                st.marginal_hops = st.non_sc_hops;
                return Ok((c.byte(r), st));
            }
            Sym::Var(v) => {
                u = v;
                pos = off;
            }
        }
    }
}

struct Extractor<'a, E: SlpEncoding + ?Sized> {
    enc: &'a E,
    out: Vec<u8>,
    st: QueryStats,
    stack: Vec<Sym>,
}

impl<E: SlpEncoding + ?Sized> Extractor<'_, E> {
    fn step(&mut self, ctx: &PathCtx, pos_in_u: u64, u: usize) -> Result<(usize, u64)> {
        let c = self.enc.common();
        let pp = pos_in_u + c.g(ctx, c.lefts_above(ctx, u));
        let (s, off, visited) = self.enc.locate(ctx, pp)?;
        self.st.trie_nodes += visited;
        self.st.non_sc_hops += 1;
        Ok((s, off))
    }

    /// Appends all of `<x>`, a variable being the run `v_a .. v_z` of the
    /// endpoints below it on its path.
    fn full(&mut self, x: Sym) {
        self.stack.push(x);
        while let Some(s) = self.stack.pop() {
            self.st.expanded_symbols += 1;
            match s {
                Sym::Term(r) => self.out.push(self.enc.common().byte(r)),
                Sym::Var(u) => {
                    let c = self.enc.common();
                    let ctx = c.ctx_of(u);
                    let a = c.lefts_above(&ctx, u) + 1;
                    let z = c.last_endpoint_below(&ctx, u);
                    for i in (a..=z).rev() {
                        self.stack.push(self.enc.endpoint(&ctx, i));
                    }
                }
            }
        }
    }

    /// Appends `<x>[off..]`; returns the number of hops taken.
    fn suffix(&mut self, x: Sym, off: u64) -> Result<usize> {
        let mut frames: Vec<(PathCtx, usize, usize)> = Vec::new();
        let mut hops = 0;
        let mut cur = x;
        let mut pos = off;
        while let Sym::Var(u) = cur {
            let ctx = self.enc.common().ctx_of(u);
            let (s, o) = self.step(&ctx, pos, u)?;
            hops += 1;
            let z = self.enc.common().last_endpoint_below(&ctx, u);
            if s < z {
                frames.push((ctx, s + 1, z));
                self.st.stack_max = self.st.stack_max.max(frames.len());
            }
            cur = self.enc.endpoint(&ctx, s);
            pos = o;
        }
        if let Sym::Term(r) = cur {
            self.out.push(self.enc.common().byte(r));
        }
        while let Some((ctx, from, z)) = frames.pop() {
            for i in from..=z {
                self.full(self.enc.endpoint(&ctx, i));
            }
        }
        Ok(hops)
    }

    /// Appends `<x>[..=off]`; returns the number of hops taken.
    fn prefix(&mut self, x: Sym, off: u64) -> Result<usize> {
        let mut hops = 0;
        let mut cur = x;
        let mut pos = off;
        while let Sym::Var(u) = cur {
            let c = self.enc.common();
            let ctx = c.ctx_of(u);
            let first = c.lefts_above(&ctx, u) + 1;
            let (s, o) = self.step(&ctx, pos, u)?;
            hops += 1;
            for i in first..s {
                self.full(self.enc.endpoint(&ctx, i));
            }
            cur = self.enc.endpoint(&ctx, s);
            pos = o;
        }
        if let Sym::Term(r) = cur {
            self.out.push(self.enc.common().byte(r));
        }
        Ok(hops)
    }
}

/// `T[p..=q]`, 1-based inclusive.
pub fn extract<E: SlpEncoding + ?Sized>(enc: &E, p: u64, q: u64) -> Result<(Vec<u8>, QueryStats)> {
    let c = enc.common();
    if p == 0 || p > q || q > c.len() {
        return Err(Error::RangeOutOfBounds { p, q, len: c.len() });
    }
    let mut ex = Extractor {
        enc,
        out: Vec::with_capacity((q - p + 1) as usize),
        st: QueryStats::default(),
        stack: Vec::new(),
    };
    let mut u = c.start_var();
    let (mut lo, mut hi) = (p, q);
    let mut shared = 0;
    loop {
        let ctx = c.ctx_of(u);
        let shift = c.g(&ctx, c.lefts_above(&ctx, u));
        let (sp, offp) = ex.step(&ctx, lo, u)?;
        shared += 1;
        if hi + shift <= enc.ps(&ctx, sp) {
            match enc.endpoint(&ctx, sp) {
                Sym::Term(r) => {
                    ex.out.push(c.byte(r));
                    ex.st.marginal_hops = shared;
                    return Ok((ex.out, ex.st));
                }
                Sym::Var(v) => {
                    hi = offp + (hi - lo);
                    lo = offp;
                    u = v;
                    continue;
                }
            }
        }
        let (sq, offq, visited) = enc.locate(&ctx, hi + shift)?;
        ex.st.trie_nodes += visited;
        let left = ex.suffix(enc.endpoint(&ctx, sp), offp)?;
        for i in sp + 1..sq {
            ex.full(enc.endpoint(&ctx, i));
        }
        let right = ex.prefix(enc.endpoint(&ctx, sq), offq)?;
        // the hop to v_sq leaves the shared walk as well
        ex.st.non_sc_hops += 1;
        ex.st.marginal_hops = shared + left.max(right);
        debug_assert_eq!(ex.out.len() as u64, q - p + 1);
        return Ok((ex.out, ex.st));
    }
}

#[cfg(test)]
mod tests;
