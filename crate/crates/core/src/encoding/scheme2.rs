//! Encoding II: SC-paths form a tree `T_E` in which every non-root path hangs
//! below one path that reaches its topmost node through a non-SC-edge. Those
//! edges are implied by `T_E` (stored as LOUDS, paths numbered in BFS order)
//! and marked in `M_E`; the remaining endpoints are stored in `R_E`.
//!
//! Conceptually `L` lists `v_1 .. v_{m+1}` of every path back to back, so
//! `v_i` of path `r` sits at `L[u0 + r - 1 + i]`.

use std::collections::VecDeque;

use super::{layout, path_shape, widths, Common, PathCtx, Scheme, SlpEncoding, Sym};
use crate::error::{Error, Result};
use crate::scd::{renumber, ScDecomposition};
use crate::slp::{Slp, SymbolId};
use crate::succinct::{BitVec, IntVec, Louds, RankSelect};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EncodingII {
    pub(crate) common: Common,
    /// symbol id - 1
    pub(crate) re: IntVec,
    pub(crate) me: RankSelect,
    pub(crate) te: Louds,
}

/// Builds encoding II. The parent of a non-root path is the path holding the
/// source of the incoming non-SC-edge minimal by (source path in `dec`
/// order, source position on that path, left before right).
pub fn build_encoding_ii(slp: &Slp, dec: &ScDecomposition) -> EncodingII {
    let np = dec.n_prime();
    let shapes: Vec<_> = dec.paths().iter().map(|p| path_shape(slp, p)).collect();

    // parent[q] = (source path, endpoint index, tie-break key)
    let mut parent: Vec<Option<(usize, usize, (usize, usize, bool))>> = vec![None; np];
    for (k, shape) in shapes.iter().enumerate() {
        for (i, (&v, &(pos, right))) in shape.endpoints.iter().zip(&shape.sources).enumerate() {
            if !slp.is_variable(v) {
                continue;
            }
            let (q, qpos) = dec.node_path(v);
            if qpos != 1 {
                continue;
            }
            let key = (k, pos, right);
            let q = q - 1;
            if parent[q].is_none_or(|(_, _, best)| key < best) {
                parent[q] = Some((k, i + 1, key));
            }
        }
    }
    let root = dec.node_path(slp.start()).0 - 1;
    debug_assert!(parent[root].is_none());

    let mut kids: Vec<Vec<(usize, usize)>> = vec![Vec::new(); np];
    for (q, par) in parent.iter().enumerate() {
        if let Some((k, i, _)) = *par {
            kids[k].push((i, q));
        }
    }
    for list in &mut kids {
        list.sort_unstable();
    }

    let mut order = Vec::with_capacity(np);
    let mut queue = VecDeque::from([root]);
    while let Some(k) = queue.pop_front() {
        order.push(k);
        queue.extend(kids[k].iter().map(|&(_, q)| q));
    }
    assert_eq!(order.len(), np, "every path reaches the root of T_E");
    let mut bfs = vec![0usize; np];
    for (rank, &k) in order.iter().enumerate() {
        bfs[k] = rank;
    }

    let (slp2, dec2) = renumber(slp, dec, &order);
    let lay = layout(&slp2, &dec2);
    let common = Common::from_layout(&slp2, &lay);
    let w = common.sym_width();

    let mut me = BitVec::with_capacity(common.n + np);
    let mut re = IntVec::new(w);
    for (rank, &k) in order.iter().enumerate() {
        let marked: Vec<usize> = kids[k].iter().map(|&(i, _)| i).collect();
        for (i, v) in lay.endpoints[rank].iter().enumerate() {
            if marked.binary_search(&(i + 1)).is_ok() {
                me.push(true);
            } else {
                me.push(false);
                re.push(v.0 as u64 - 1);
            }
        }
    }
    let degrees: Vec<usize> = order.iter().map(|&k| kids[k].len()).collect();
    debug_assert!(order.iter().all(|&k| kids[k].iter().all(|&(_, q)| bfs[q] > bfs[k])));
    EncodingII { common, re, me: RankSelect::new(me), te: Louds::from_degrees(&degrees) }
}

impl EncodingII {
    pub fn build(slp: &Slp) -> Result<Self> {
        Ok(build_encoding_ii(slp, &ScDecomposition::new(slp)?))
    }

    /// Stored `R_E` as symbol ids.
    pub fn re(&self) -> Vec<u64> {
        self.re.iter().map(|x| x + 1).collect()
    }

    pub fn me(&self) -> &BitVec {
        self.me.bits()
    }

    pub fn te(&self) -> &Louds {
        &self.te
    }

    pub(crate) fn from_parts(common: Common, re: BitVec, me: BitVec, te: BitVec) -> Result<Self> {
        let w = common.sym_width();
        let (n, np) = (common.n, common.n_prime);
        let re = IntVec::from_bits(re, w)?;
        let me = RankSelect::new(me);
        let te = Louds::from_bits(te)?;
        if re.len() != n + 1 || me.len() != n + np || me.count_ones() != np - 1 || te.node_count() != np {
            return Err(Error::Container("R_E/M_E/T_E sizes do not match the header".into()));
        }
        let limit = (n + common.sigma) as u64;
        if re.iter().any(|x| x >= limit) {
            return Err(Error::Container("R_E symbol id out of range".into()));
        }
        for r in 1..=np {
            let ctx = common.path_ctx(r);
            let base = ctx.u0 + r - 1;
            let marks = me.rank1(base + ctx.m + 1) - me.rank1(base);
            if marks != te.degree(r) {
                return Err(Error::Container(format!("M_E marks of path {r} disagree with T_E")));
            }
            for k in 1..=marks {
                if te.child(r, k)? <= r {
                    return Err(Error::Container("T_E is not in breadth-first order".into()));
                }
            }
        }
        Ok(EncodingII { common, re, me, te })
    }

    #[inline]
    fn decode(&self, raw: u64) -> Sym {
        let id = raw as usize + 1;
        if id <= self.common.n {
            Sym::Var(id)
        } else {
            Sym::Term(id - self.common.n)
        }
    }
}

impl SlpEncoding for EncodingII {
    fn common(&self) -> &Common {
        &self.common
    }

    fn scheme(&self) -> Scheme {
        Scheme::II
    }

    fn endpoint(&self, ctx: &PathCtx, i: usize) -> Sym {
        let base = ctx.u0 + ctx.r - 1;
        let idx = base + i;
        if self.me.bit(idx) {
            let k = self.me.rank1(idx) - self.me.rank1(base);
            let child = self.te.child(ctx.r, k).expect("validated T_E");
            Sym::Var(self.common.p.select1(child - 1) + 1)
        } else {
            self.decode(self.re.get(self.me.rank0(idx) - 1))
        }
    }

    fn symbol_id(&self, s: Sym) -> SymbolId {
        match s {
            Sym::Var(u) => SymbolId(u as u32),
            Sym::Term(r) => SymbolId((self.common.n + r) as u32),
        }
    }

    fn sym_of(&self, id: SymbolId) -> Option<Sym> {
        let (n, sigma) = (self.common.n, self.common.sigma);
        match id.get() {
            0 => None,
            x if x <= n => Some(Sym::Var(x)),
            x if x <= n + sigma => Some(Sym::Term(x - n)),
            _ => None,
        }
    }

    fn scheme_components(&self) -> Vec<(&'static str, &BitVec)> {
        vec![("R_E", self.re.bits()), ("M_E", self.me.bits()), ("T_E", self.te.bits())]
    }

    fn scheme_overhead_bits(&self) -> usize {
        self.me.overhead_bits() + self.te.overhead_bits()
    }

    fn formula(&self) -> (u64, u64) {
        let c = &self.common;
        let (gw, w) = widths(c);
        let (n, np) = (c.n as u64, c.n_prime as u64);
        let published = n * gw + n * w + 5 * n + np;
        // R_E keeps n+1 entries and the LOUDS string carries a super-root
        (published, published + w + 1)
    }
}
