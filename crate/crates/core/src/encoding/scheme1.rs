//! Encoding I: every non-SC endpoint stored explicitly. `R1` holds the
//! endpoint of each non-last node, `R2` both children of each last node.

use super::{layout, widths, Common, PathCtx, Scheme, SlpEncoding, Sym};
use crate::error::{Error, Result};
use crate::scd::{renumber, ScDecomposition};
use crate::slp::{Slp, SymbolId};
use crate::succinct::{BitVec, IntVec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EncodingI {
    pub(crate) common: Common,
    /// symbol id - 1
    pub(crate) r1: IntVec,
    pub(crate) r2: IntVec,
}

/// Builds encoding I with the paths of `dec` in their given order.
pub fn build_encoding_i(slp: &Slp, dec: &ScDecomposition) -> EncodingI {
    let order: Vec<usize> = (0..dec.n_prime()).collect();
    let (slp, dec) = renumber(slp, dec, &order);
    let lay = layout(&slp, &dec);
    let common = Common::from_layout(&slp, &lay);
    let w = common.sym_width();
    let r1 = IntVec::from_values(w, lay.branch.iter().map(|x| x.0 as u64 - 1));
    let r2 = IntVec::from_values(
        w,
        dec.paths().iter().flat_map(|path| {
            let (l, r) = slp.rule(*path.last().unwrap());
            [l.0 as u64 - 1, r.0 as u64 - 1]
        }),
    );
    EncodingI { common, r1, r2 }
}

impl EncodingI {
    pub fn build(slp: &Slp) -> Result<Self> {
        Ok(build_encoding_i(slp, &ScDecomposition::new(slp)?))
    }

    /// Stored `R1` as symbol ids.
    pub fn r1(&self) -> Vec<u64> {
        self.r1.iter().map(|x| x + 1).collect()
    }

    /// Stored `R2` as symbol ids.
    pub fn r2(&self) -> Vec<u64> {
        self.r2.iter().map(|x| x + 1).collect()
    }

    pub(crate) fn from_parts(common: Common, r1: BitVec, r2: BitVec) -> Result<Self> {
        let w = common.sym_width();
        let r1 = IntVec::from_bits(r1, w)?;
        let r2 = IntVec::from_bits(r2, w)?;
        if r1.len() != common.n - common.n_prime || r2.len() != 2 * common.n_prime {
            return Err(Error::Container("R1/R2 lengths do not match the header".into()));
        }
        let limit = (common.n + common.sigma) as u64;
        if r1.iter().chain(r2.iter()).any(|x| x >= limit) {
            return Err(Error::Container("R1/R2 symbol id out of range".into()));
        }
        Ok(EncodingI { common, r1, r2 })
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

impl SlpEncoding for EncodingI {
    fn common(&self) -> &Common {
        &self.common
    }

    fn scheme(&self) -> Scheme {
        Scheme::I
    }

    fn endpoint(&self, ctx: &PathCtx, i: usize) -> Sym {
        let d = &self.common.d;
        if i <= ctx.t {
            self.decode(self.r1.get(d.select0(ctx.rank0_d0 + i) - 1))
        } else if i <= ctx.t + 2 {
            self.decode(self.r2.get(2 * (ctx.r - 1) + i - ctx.t - 1))
        } else {
            self.decode(self.r1.get(d.select1(ctx.rank1_d0 + ctx.m + 2 - i) - 1))
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
        vec![("R1", self.r1.bits()), ("R2", self.r2.bits())]
    }

    fn scheme_overhead_bits(&self) -> usize {
        0
    }

    fn formula(&self) -> (u64, u64) {
        let c = &self.common;
        let (gw, w) = widths(c);
        let (n, np) = (c.n as u64, c.n_prime as u64);
        let f = n * gw + (n + np) * w + 4 * n - 2 * np;
        (f, f)
    }
}
