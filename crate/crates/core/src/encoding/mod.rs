//! The three succinct grammar encodings.
//!
//! All three share the per-path skeleton held in [`Common`]:
//!
//! * `P` marks the last node of every SC-path (paths occupy consecutive ids),
//! * `D` gives, for every other node, the side of its non-SC child (`1` = right),
//! * `G` holds per path the prefix sums of the pieces
//!   `<v_1> .. <v_t> <u_m> <v_{t+3}> .. <v_{m+1}>` that make up `<u_1>`,
//! * `B` concatenates the post-order tries built over those prefix sums.
//!
//! They differ in how the non-SC endpoints `v_1 .. v_{m+1}` of a path are
//! stored; see [`EncodingI`], [`EncodingII`] and [`EncodingIII`].

mod scheme1;
mod scheme2;
mod scheme3;
mod validate;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

pub use scheme1::{build_encoding_i, EncodingI};
pub use scheme2::{build_encoding_ii, EncodingII};
pub use scheme3::{build_encoding_iii, EncodingIII};

use crate::error::{Error, Result};
use crate::scd::{ceil_lg, ScDecomposition};
use crate::slp::{Slp, SymbolId};
use crate::succinct::{BitVec, IntVec, PostOrderBits, PostOrderTree, RankSelect};
use crate::trie::{interval_search, push_trie};

/// A symbol independent of any numbering convention.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sym {
    /// Variable index `1..=n` in path order.
    Var(usize),
    /// Terminal rank `1..=sigma`.
    Term(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Scheme {
    I,
    II,
    III,
}

impl Scheme {
    pub fn code(self) -> u8 {
        match self {
            Scheme::I => 1,
            Scheme::II => 2,
            Scheme::III => 3,
        }
    }

    pub fn from_code(c: u8) -> Option<Scheme> {
        match c {
            1 => Some(Scheme::I),
            2 => Some(Scheme::II),
            3 => Some(Scheme::III),
            _ => None,
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::I => "I",
            Scheme::II => "II",
            Scheme::III => "III",
        })
    }
}

/// Location of SC-path `r` inside the shared arrays.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PathCtx {
    pub r: usize,
    /// id of the node preceding the path; the path is `u0+1 ..= u0+m`
    pub u0: usize,
    pub m: usize,
    /// `rank0(P, u0)`: entries of `D` owned by earlier paths
    pub d0: usize,
    /// number of left-branching nodes on the path
    pub t: usize,
    pub rank0_d0: usize,
    pub rank1_d0: usize,
}

impl PathCtx {
    pub fn u1(&self) -> usize {
        self.u0 + 1
    }

    pub fn um(&self) -> usize {
        self.u0 + self.m
    }
}

/// Components shared by all schemes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Common {
    pub(crate) len: u64,
    pub(crate) n: usize,
    pub(crate) n_prime: usize,
    pub(crate) sigma: usize,
    /// start variable index
    pub(crate) start: usize,
    pub(crate) alphabet: Vec<u8>,
    pub(crate) p: RankSelect,
    pub(crate) d: RankSelect,
    /// `g - 1` in `ceil(lg N)` bits
    pub(crate) g: IntVec,
    pub(crate) b: PostOrderBits,
}

impl Common {
    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn n_prime(&self) -> usize {
        self.n_prime
    }

    pub fn sigma(&self) -> usize {
        self.sigma
    }

    pub fn alphabet(&self) -> &[u8] {
        &self.alphabet
    }

    pub fn start_var(&self) -> usize {
        self.start
    }

    pub fn p_bits(&self) -> &BitVec {
        self.p.bits()
    }

    pub fn d_bits(&self) -> &BitVec {
        self.d.bits()
    }

    pub fn b_bits(&self) -> &BitVec {
        self.b.bits()
    }

    pub fn g_array(&self) -> &IntVec {
        &self.g
    }

    /// Stored prefix sums, `G[1..n]`.
    pub fn g_values(&self) -> Vec<u64> {
        self.g.iter().map(|x| x + 1).collect()
    }

    pub fn g_width(&self) -> usize {
        ceil_lg(self.len) as usize
    }

    pub fn sym_width(&self) -> usize {
        ceil_lg((self.n + self.sigma) as u64) as usize
    }

    pub fn path_ctx(&self, r: usize) -> PathCtx {
        let u0 = self.p.select1(r - 1);
        let m = self.p.select1(r) - u0;
        let d0 = u0 - (r - 1);
        let rank0_d0 = self.d.rank0(d0);
        let rank1_d0 = d0 - rank0_d0;
        let t = self.d.rank0(d0 + m - 1) - rank0_d0;
        PathCtx { r, u0, m, d0, t, rank0_d0, rank1_d0 }
    }

    /// Context of the path holding variable `u`.
    #[inline]
    pub fn ctx_of(&self, u: usize) -> PathCtx {
        self.path_ctx(self.p.rank1(u - 1) + 1)
    }

    /// `g_j` of the path, with `g_0 = 0`.
    #[inline]
    pub fn g(&self, ctx: &PathCtx, j: usize) -> u64 {
        if j == 0 {
            0
        } else {
            self.g.get(ctx.u0 + j - 1) + 1
        }
    }

    pub fn trie(&self, ctx: &PathCtx) -> PostOrderTree<'_> {
        self.b.slice(2 * ctx.u1() - ctx.r, 2 * ctx.m - 1)
    }

    /// Left-branching nodes strictly above `u` on its path.
    #[inline]
    pub fn lefts_above(&self, ctx: &PathCtx, u: usize) -> usize {
        self.d.rank0(ctx.d0 + u - ctx.u1()) - ctx.rank0_d0
    }

    /// Index of the last endpoint inside `<u>`.
    #[inline]
    pub fn last_endpoint_below(&self, ctx: &PathCtx, u: usize) -> usize {
        ctx.m + 1 - (self.d.rank1(ctx.d0 + u - ctx.u1()) - ctx.rank1_d0)
    }

    #[inline]
    pub fn byte(&self, rank: usize) -> u8 {
        self.alphabet[rank - 1]
    }

    fn from_layout(slp: &Slp, layout: &Layout) -> Common {
        let n = slp.n();
        let len = slp.len();
        let gw = ceil_lg(len) as usize;
        Common {
            len,
            n,
            n_prime: layout.endpoints.len(),
            sigma: slp.sigma(),
            start: slp.start().get(),
            alphabet: slp.alphabet().to_vec(),
            p: RankSelect::new(layout.p.clone()),
            d: RankSelect::new(layout.d.clone()),
            g: IntVec::from_values(gw, layout.g.iter().map(|&x| x - 1)),
            b: PostOrderBits::new(layout.b.clone()),
        }
    }

    fn overhead_bits(&self) -> usize {
        self.p.overhead_bits() + self.d.overhead_bits() + self.b.overhead_bits()
    }
}

/// Endpoints of one SC-path in preorder, with the number of left-branching
/// nodes and, per endpoint, the 1-based position of its source node and
/// whether it hangs off the right side.
pub(crate) struct PathShape {
    pub endpoints: Vec<SymbolId>,
    pub t: usize,
    pub sources: Vec<(usize, bool)>,
}

pub(crate) fn path_shape(slp: &Slp, path: &[SymbolId]) -> PathShape {
    let m = path.len();
    let mut lefts = Vec::new();
    let mut rights = Vec::new();
    for k in 0..m - 1 {
        let (l, r) = slp.rule(path[k]);
        if l == path[k + 1] {
            rights.push((r, (k + 1, true)));
        } else {
            debug_assert_eq!(r, path[k + 1]);
            lefts.push((l, (k + 1, false)));
        }
    }
    let t = lefts.len();
    let (l, r) = slp.rule(path[m - 1]);
    let all: Vec<(SymbolId, (usize, bool))> = lefts
        .into_iter()
        .chain([(l, (m, false)), (r, (m, true))])
        .chain(rights.into_iter().rev())
        .collect();
    PathShape {
        endpoints: all.iter().map(|x| x.0).collect(),
        t,
        sources: all.iter().map(|x| x.1).collect(),
    }
}

/// Everything the shared components need, computed from a grammar whose
/// SC-paths occupy consecutive ids.
pub(crate) struct Layout {
    pub p: BitVec,
    pub d: BitVec,
    pub endpoints: Vec<Vec<SymbolId>>,
    pub ts: Vec<usize>,
    /// non-SC child of every non-last node, in id order
    pub branch: Vec<SymbolId>,
    pub g: Vec<u64>,
    pub b: BitVec,
}

pub(crate) fn layout(slp: &Slp, dec: &ScDecomposition) -> Layout {
    assert!(dec.is_consecutive(), "paths must occupy consecutive ids");
    let n = slp.n();
    let mut p = BitVec::with_capacity(n);
    let mut d = BitVec::with_capacity(n);
    let mut branch = Vec::with_capacity(n);
    let mut g = Vec::with_capacity(n);
    let mut b = BitVec::with_capacity(2 * n);
    let mut endpoints = Vec::with_capacity(dec.n_prime());
    let mut ts = Vec::with_capacity(dec.n_prime());
    for path in dec.paths() {
        let m = path.len();
        for k in 0..m {
            p.push(k + 1 == m);
            if k + 1 < m {
                let (l, r) = slp.rule(path[k]);
                let right = l == path[k + 1];
                d.push(right);
                branch.push(if right { r } else { l });
            }
        }
        let shape = path_shape(slp, path);
        let t = shape.t;
        let mut acc = 0u64;
        let start = g.len();
        for (i, &v) in shape.endpoints.iter().enumerate() {
            let piece = match i {
                i if i == t => slp.expansion_length(path[m - 1]),
                i if i == t + 1 => continue,
                _ => slp.expansion_length(v),
            };
            acc += piece;
            g.push(acc);
        }
        push_trie(&g[start..], &mut b).expect("piece lengths are positive");
        endpoints.push(shape.endpoints);
        ts.push(t);
    }
    Layout { p, d, endpoints, ts, branch, g, b }
}

/// Bit counts of every stored component plus the closed-form totals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpaceReport {
    pub scheme: Scheme,
    #[serde(rename = "N")]
    pub len: u64,
    pub n: usize,
    pub n_prime: usize,
    pub sigma: usize,
    pub components: BTreeMap<String, usize>,
    pub core_bits: u64,
    /// the closed form as published
    pub formula_bits: u64,
    /// what the stored components must add up to exactly
    pub expected_core_bits: u64,
    pub formula_holds: bool,
    /// rank/select directories, excess summaries and LOUDS directories
    pub overhead_bits: u64,
}

/// Operations common to all three encodings. Variables are addressed by
/// their index `1..=n` unless a method takes a [`SymbolId`], in which case
/// the scheme's own numbering applies.
pub trait SlpEncoding {
    fn common(&self) -> &Common;

    fn scheme(&self) -> Scheme;

    /// `v_i` of the path described by `ctx`, `1 <= i <= m+1`.
    fn endpoint(&self, ctx: &PathCtx, i: usize) -> Sym;

    /// Symbol id in this scheme's numbering.
    fn symbol_id(&self, s: Sym) -> SymbolId;

    /// Inverse of [`SlpEncoding::symbol_id`].
    fn sym_of(&self, id: SymbolId) -> Option<Sym>;

    /// Scheme-specific components, in container order.
    fn scheme_components(&self) -> Vec<(&'static str, &BitVec)>;

    fn scheme_overhead_bits(&self) -> usize;

    /// `(published closed form, exact expected total)` for the core bits.
    fn formula(&self) -> (u64, u64);

    /// All components in container order.
    fn components(&self) -> Vec<(&'static str, &BitVec)> {
        let c = self.common();
        let mut v = vec![("P", c.p_bits()), ("D", c.d_bits())];
        v.extend(self.scheme_components());
        v.push(("G", c.g.bits()));
        v.push(("B", c.b_bits()));
        v
    }

    fn len(&self) -> u64 {
        self.common().len
    }

    fn is_empty(&self) -> bool {
        self.common().len == 0
    }

    fn start(&self) -> SymbolId {
        self.symbol_id(Sym::Var(self.common().start))
    }

    /// Children of variable `u` (index `1..=n`).
    fn children_sym(&self, u: usize) -> (Sym, Sym) {
        let c = self.common();
        let ctx = c.ctx_of(u);
        if c.p.bit(u) {
            return (self.endpoint(&ctx, ctx.t + 1), self.endpoint(&ctx, ctx.t + 2));
        }
        let dk = ctx.d0 + u - ctx.u0;
        if c.d.bit(dk) {
            let i = ctx.m + 2 - (c.d.rank1(dk) - ctx.rank1_d0);
            (Sym::Var(u + 1), self.endpoint(&ctx, i))
        } else {
            let i = c.d.rank0(dk) - ctx.rank0_d0;
            (self.endpoint(&ctx, i), Sym::Var(u + 1))
        }
    }

    /// `|<u>|` for variable index `u`.
    fn var_len(&self, u: usize) -> u64 {
        let c = self.common();
        let ctx = c.ctx_of(u);
        let i = u - ctx.u0;
        let hi = ctx.m - (c.d.rank1(ctx.d0 + i - 1) - ctx.rank1_d0);
        let lo = c.d.rank0(ctx.d0 + i - 1) - ctx.rank0_d0;
        c.g(&ctx, hi) - c.g(&ctx, lo)
    }

    fn sym_len(&self, s: Sym) -> u64 {
        match s {
            Sym::Term(_) => 1,
            Sym::Var(u) => self.var_len(u),
        }
    }

    /// `|<v_1>| + .. + |<v_i>|`.
    fn ps(&self, ctx: &PathCtx, i: usize) -> u64 {
        let c = self.common();
        if i <= ctx.t {
            c.g(ctx, i)
        } else if i == ctx.t + 1 {
            c.g(ctx, ctx.t) + self.sym_len(self.endpoint(ctx, ctx.t + 1))
        } else {
            c.g(ctx, i - 1)
        }
    }

    /// Endpoint index `s`, offset inside `<v_s>`, and trie nodes visited, for
    /// position `pp` of `<u_1>`.
    fn locate(&self, ctx: &PathCtx, pp: u64) -> Result<(usize, u64, usize)> {
        let c = self.common();
        let trie = c.trie(ctx);
        let (k, visited) = interval_search(&trie, |j| c.g(ctx, j), pp)?;
        let off = pp - c.g(ctx, k);
        let j = k + 1;
        let (s, off) = if j <= ctx.t {
            (j, off)
        } else if j == ctx.t + 1 {
            let first = self.sym_len(self.endpoint(ctx, ctx.t + 1));
            if off <= first {
                (j, off)
            } else {
                (j + 1, off - first)
            }
        } else {
            (j + 1, off)
        };
        Ok((s, off, visited))
    }

    fn var_index(&self, u: SymbolId) -> Result<usize> {
        match self.sym_of(u) {
            Some(Sym::Var(x)) => Ok(x),
            _ => Err(Error::PositionOutOfRange { pos: u.0 as u64, len: self.common().n as u64 }),
        }
    }

    fn check_path(&self, r: usize) -> Result<PathCtx> {
        let c = self.common();
        if r == 0 || r > c.n_prime {
            return Err(Error::PositionOutOfRange { pos: r as u64, len: c.n_prime as u64 });
        }
        Ok(c.path_ctx(r))
    }

    fn check_endpoint_index(&self, ctx: &PathCtx, i: usize) -> Result<()> {
        if i == 0 || i > ctx.m + 1 {
            return Err(Error::PositionOutOfRange { pos: i as u64, len: ctx.m as u64 + 1 });
        }
        Ok(())
    }

    /// Children of variable `u`.
    fn children(&self, u: SymbolId) -> Result<(SymbolId, SymbolId)> {
        let (l, r) = self.children_sym(self.var_index(u)?);
        Ok((self.symbol_id(l), self.symbol_id(r)))
    }

    /// `v_i` of path `r`.
    fn branch_endpoint(&self, r: usize, i: usize) -> Result<SymbolId> {
        let ctx = self.check_path(r)?;
        self.check_endpoint_index(&ctx, i)?;
        Ok(self.symbol_id(self.endpoint(&ctx, i)))
    }

    /// `|<v_1>| + .. + |<v_i>|` on path `r`.
    fn prefix_sum(&self, r: usize, i: usize) -> Result<u64> {
        let ctx = self.check_path(r)?;
        self.check_endpoint_index(&ctx, i)?;
        Ok(self.ps(&ctx, i))
    }

    fn var_length(&self, u: SymbolId) -> Result<u64> {
        Ok(self.var_len(self.var_index(u)?))
    }

    /// `(r, u_1, u_m)` of the path holding `u`.
    fn sc_path_of(&self, u: SymbolId) -> Result<(usize, SymbolId, SymbolId)> {
        let ctx = self.common().ctx_of(self.var_index(u)?);
        Ok((ctx.r, self.symbol_id(Sym::Var(ctx.u1())), self.symbol_id(Sym::Var(ctx.um()))))
    }

    /// Position in `<u_1>` of position `p` of `<u>`, for `u` on path `r`.
    fn entry_offset(&self, r: usize, u: SymbolId, p: u64) -> Result<u64> {
        let ctx = self.check_path(r)?;
        let x = self.var_index(u)?;
        if x <= ctx.u0 || x > ctx.um() {
            return Err(Error::PositionOutOfRange { pos: x as u64, len: ctx.um() as u64 });
        }
        let len = self.var_len(x);
        if p == 0 || p > len {
            return Err(Error::PositionOutOfRange { pos: p, len });
        }
        let c = self.common();
        Ok(p + c.g(&ctx, c.lefts_above(&ctx, x)))
    }

    /// `(s, offset)` with position `pp` of `<u_1>` inside `<v_s>` on path `r`.
    fn biased_locate(&self, r: usize, pp: u64) -> Result<(usize, u64)> {
        let ctx = self.check_path(r)?;
        let (s, off, _) = self.locate(&ctx, pp)?;
        Ok((s, off))
    }

    /// The grammar in path order, variables `1..=n` then terminals.
    fn to_slp(&self) -> Slp {
        let c = self.common();
        let id = |s: Sym| match s {
            Sym::Var(u) => SymbolId(u as u32),
            Sym::Term(r) => SymbolId((c.n + r) as u32),
        };
        let rules = (1..=c.n)
            .map(|u| {
                let (l, r) = self.children_sym(u);
                (id(l), id(r))
            })
            .collect();
        Slp::from_parts_unchecked(c.n, c.sigma, SymbolId(c.start as u32), rules, c.alphabet.clone())
    }

    fn space_report(&self) -> SpaceReport {
        let c = self.common();
        let components: BTreeMap<String, usize> =
            self.components().into_iter().map(|(k, v)| (k.to_string(), v.len())).collect();
        let core_bits = components.values().map(|&x| x as u64).sum();
        let (formula_bits, expected_core_bits) = self.formula();
        let formula_holds = core_bits == expected_core_bits
            && (self.scheme() != Scheme::III || core_bits <= formula_bits);
        SpaceReport {
            scheme: self.scheme(),
            len: c.len,
            n: c.n,
            n_prime: c.n_prime,
            sigma: c.sigma,
            components,
            core_bits,
            formula_bits,
            expected_core_bits,
            formula_holds,
            overhead_bits: (c.overhead_bits() + self.scheme_overhead_bits()) as u64,
        }
    }
}

/// `(ceil(lg N), ceil(lg(n+sigma)))`, the two widths every closed form uses.
pub(crate) fn widths(c: &Common) -> (u64, u64) {
    (c.g_width() as u64, c.sym_width() as u64)
}

/// Any of the three encodings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyEncoding {
    I(EncodingI),
    II(EncodingII),
    III(EncodingIII),
}

impl AnyEncoding {
    pub fn build(slp: &Slp, scheme: Scheme) -> Result<AnyEncoding> {
        let dec = ScDecomposition::new(slp)?;
        Ok(match scheme {
            Scheme::I => AnyEncoding::I(build_encoding_i(slp, &dec)),
            Scheme::II => AnyEncoding::II(build_encoding_ii(slp, &dec)),
            Scheme::III => AnyEncoding::III(build_encoding_iii(slp, &dec)?),
        })
    }

    pub fn as_dyn(&self) -> &dyn SlpEncoding {
        match self {
            AnyEncoding::I(e) => e,
            AnyEncoding::II(e) => e,
            AnyEncoding::III(e) => e,
        }
    }
}

pub use validate::validate_encoding;
