//! Encoding III: terminals are numbered `1..=sigma` and variables
//! `sigma+1..=sigma+n`. One endpoint per path, `v_{t+1}` (the left child of
//! the last node), is stored implicitly: paths are ordered so that these
//! chosen ids never decrease, and `S` keeps the sequence as unary gaps.
//! The other `m` endpoints of each path go to `R_X`.

use super::{layout, widths, Common, PathCtx, Scheme, SlpEncoding, Sym};
use crate::error::{Error, Result};
use crate::scd::{renumber, ScDecomposition};
use crate::slp::{Slp, SymbolId};
use crate::succinct::{BitVec, IntVec, RankSelect};

#[derive(Clone, Debug)]
pub struct EncodingIII {
    pub(crate) common: Common,
    /// symbol id - 1, in this scheme's numbering
    pub(crate) rx: IntVec,
    pub(crate) s: RankSelect,
    rounds: Option<usize>,
}

impl PartialEq for EncodingIII {
    fn eq(&self, other: &Self) -> bool {
        self.common == other.common && self.rx == other.rx && self.s == other.s
    }
}

impl Eq for EncodingIII {}

/// Orders the paths of `dec` so that chosen endpoint ids are non-decreasing,
/// by re-sorting stably until the order stops changing. Returns the order
/// (0-based path indices) and the number of sorting rounds.
fn monotone_order(slp: &Slp, dec: &ScDecomposition) -> Result<(Vec<usize>, usize)> {
    let np = dec.n_prime();
    let sigma = slp.sigma();
    let chosen: Vec<SymbolId> = dec.paths().iter().map(|p| slp.rule(*p.last().unwrap()).0).collect();
    let mut order: Vec<usize> = (0..np).collect();
    let mut first_id = vec![0usize; np];
    let ids = |order: &[usize], first_id: &mut [usize]| -> Vec<usize> {
        let mut next = sigma + 1;
        for &k in order {
            first_id[k] = next;
            next += dec.paths()[k].len();
        }
        chosen
            .iter()
            .map(|&v| {
                if slp.is_variable(v) {
                    let (q, pos) = dec.node_path(v);
                    first_id[q - 1] + pos - 1
                } else {
                    v.get() - slp.n()
                }
            })
            .collect()
    };
    let cap = 2 * np + 2;
    for round in 1..=cap {
        let key = ids(&order, &mut first_id);
        let mut next = order.clone();
        next.sort_by_key(|&k| key[k]);
        if next == order {
            return Ok((order, round));
        }
        order = next;
    }
    let key = ids(&order, &mut first_id);
    let pairs = order
        .windows(2)
        .filter(|w| key[w[0]] > key[w[1]])
        .map(|w| (w[0] + 1, w[1] + 1))
        .collect();
    Err(Error::NoMonotoneOrder { pairs })
}

/// Builds encoding III.
pub fn build_encoding_iii(slp: &Slp, dec: &ScDecomposition) -> Result<EncodingIII> {
    let (order, rounds) = monotone_order(slp, dec)?;
    let (slp2, dec2) = renumber(slp, dec, &order);
    let lay = layout(&slp2, &dec2);
    let common = Common::from_layout(&slp2, &lay);
    let (n, sigma) = (common.n, common.sigma);
    let id3 = |v: SymbolId| -> u64 {
        if v.get() <= n {
            (sigma + v.get()) as u64
        } else {
            (v.get() - n) as u64
        }
    };
    let mut s = BitVec::new();
    let mut rx = IntVec::new(common.sym_width());
    let mut prev = 0u64;
    for (eps, &t) in lay.endpoints.iter().zip(&lay.ts) {
        let c = id3(eps[t]);
        if c < prev {
            return Err(Error::NoMonotoneOrder { pairs: Vec::new() });
        }
        for _ in prev..c {
            s.push(false);
        }
        s.push(true);
        prev = c;
        for (i, &v) in eps.iter().enumerate() {
            if i != t {
                rx.push(id3(v) - 1);
            }
        }
    }
    Ok(EncodingIII { common, rx, s: RankSelect::new(s), rounds: Some(rounds) })
}

impl EncodingIII {
    pub fn build(slp: &Slp) -> Result<Self> {
        build_encoding_iii(slp, &ScDecomposition::new(slp)?)
    }

    /// Sorting rounds the builder needed; `None` for a loaded encoding.
    pub fn rounds(&self) -> Option<usize> {
        self.rounds
    }

    /// Stored `R_X` as symbol ids.
    pub fn rx(&self) -> Vec<u64> {
        self.rx.iter().map(|x| x + 1).collect()
    }

    pub fn s(&self) -> &BitVec {
        self.s.bits()
    }

    /// Chosen endpoint ids `select1(S, r) - r` for every path.
    pub fn chosen(&self) -> Vec<u64> {
        (1..=self.common.n_prime).map(|r| (self.s.select1(r) - r) as u64).collect()
    }

    pub(crate) fn from_parts(common: Common, rx: BitVec, s: BitVec) -> Result<Self> {
        let w = common.sym_width();
        let rx = IntVec::from_bits(rx, w)?;
        let s = RankSelect::new(s);
        let limit = common.n + common.sigma;
        if rx.len() != common.n || s.count_ones() != common.n_prime {
            return Err(Error::Container("R_X/S sizes do not match the header".into()));
        }
        if !s.is_empty() && !s.bit(s.len()) {
            return Err(Error::Container("S has trailing zeros".into()));
        }
        if s.count_zeros() > limit || (s.count_ones() > 0 && s.select1(1) == 1) {
            return Err(Error::Container("S decodes to an out-of-range id".into()));
        }
        if rx.iter().any(|x| x as usize >= limit) {
            return Err(Error::Container("R_X symbol id out of range".into()));
        }
        Ok(EncodingIII { common, rx, s, rounds: None })
    }

    #[inline]
    fn decode(&self, id: usize) -> Sym {
        if id <= self.common.sigma {
            Sym::Term(id)
        } else {
            Sym::Var(id - self.common.sigma)
        }
    }
}

impl SlpEncoding for EncodingIII {
    fn common(&self) -> &Common {
        &self.common
    }

    fn scheme(&self) -> Scheme {
        Scheme::III
    }

    fn endpoint(&self, ctx: &PathCtx, i: usize) -> Sym {
        if i == ctx.t + 1 {
            self.decode(self.s.select1(ctx.r) - ctx.r)
        } else {
            let k = ctx.u0 + i - usize::from(i > ctx.t + 1);
            self.decode(self.rx.get(k - 1) as usize + 1)
        }
    }

    fn symbol_id(&self, s: Sym) -> SymbolId {
        match s {
            Sym::Var(u) => SymbolId((self.common.sigma + u) as u32),
            Sym::Term(r) => SymbolId(r as u32),
        }
    }

    fn sym_of(&self, id: SymbolId) -> Option<Sym> {
        let (n, sigma) = (self.common.n, self.common.sigma);
        match id.get() {
            0 => None,
            x if x <= sigma => Some(Sym::Term(x)),
            x if x <= n + sigma => Some(Sym::Var(x - sigma)),
            _ => None,
        }
    }

    fn scheme_components(&self) -> Vec<(&'static str, &BitVec)> {
        vec![("R_X", self.rx.bits()), ("S", self.s.bits())]
    }

    fn scheme_overhead_bits(&self) -> usize {
        self.s.overhead_bits()
    }

    fn formula(&self) -> (u64, u64) {
        let c = &self.common;
        let (gw, w) = widths(c);
        let (n, np, sigma) = (c.n as u64, c.n_prime as u64, c.sigma as u64);
        let published = n * gw + n * w + 5 * n - np + sigma;
        let exact = n * gw + n * w + 4 * n - 2 * np + self.s.len() as u64;
        (published, exact)
    }
}

