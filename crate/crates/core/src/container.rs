//! Binary container for the encodings.
//!
//! ```text
//! "SLPX" | version u8 = 1 | scheme u8 (1, 2, 3)
//! N, n, n', sigma, start        u64 little-endian each; start in the scheme's numbering
//! alphabet                      sigma raw bytes
//! components                    u64 LE bit length + LSB-first packed bytes, each
//! ```
//!
//! Component order: `P, D`, the scheme's arrays, `G, B`.

use crate::encoding::{validate_encoding, AnyEncoding, Common, EncodingI, EncodingII, EncodingIII};
use crate::encoding::{Scheme, SlpEncoding, Sym};
use crate::error::{Error, Result};
use crate::scd::ceil_lg;
use crate::slp::SymbolId;
use crate::succinct::{BitVec, IntVec, PostOrderBits, RankSelect};

pub const MAGIC: &[u8; 4] = b"SLPX";
pub const VERSION: u8 = 1;

fn bad(msg: impl Into<String>) -> Error {
    Error::Container(msg.into())
}

pub fn to_bytes(enc: &dyn SlpEncoding) -> Vec<u8> {
    let c = enc.common();
    let mut out = Vec::new();
    out.extend_from_slice(MAGIC);
    out.push(VERSION);
    out.push(enc.scheme().code());
    for x in [c.len(), c.n() as u64, c.n_prime() as u64, c.sigma() as u64, enc.start().0 as u64] {
        out.extend_from_slice(&x.to_le_bytes());
    }
    out.extend_from_slice(c.alphabet());
    for (_, bits) in enc.components() {
        out.extend_from_slice(&(bits.len() as u64).to_le_bytes());
        out.extend_from_slice(&bits.to_bytes());
    }
    out
}

struct Reader<'a> {
    buf: &'a [u8],
    at: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, k: usize, what: &str) -> Result<&'a [u8]> {
        if self.buf.len() - self.at < k {
            return Err(bad(format!("truncated while reading {what}")));
        }
        let s = &self.buf[self.at..self.at + k];
        self.at += k;
        Ok(s)
    }

    fn u64(&mut self, what: &str) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8, what)?.try_into().unwrap()))
    }

    fn usize(&mut self, what: &str) -> Result<usize> {
        usize::try_from(self.u64(what)?).map_err(|_| bad(format!("{what} does not fit in memory")))
    }

    fn bits(&mut self, what: &str) -> Result<BitVec> {
        let len = self.u64(what)?;
        let nbytes = len.div_ceil(8);
        if nbytes > (self.buf.len() - self.at) as u64 {
            return Err(bad(format!("truncated while reading {what}")));
        }
        let bytes = self.take(nbytes as usize, what)?;
        BitVec::from_bytes(len as usize, bytes).map_err(|e| bad(format!("{what}: {e}")))
    }
}

/// Parses and fully validates a container.
pub fn from_bytes(buf: &[u8]) -> Result<AnyEncoding> {
    let mut rd = Reader { buf, at: 0 };
    if rd.take(4, "magic")? != MAGIC {
        return Err(bad("bad magic"));
    }
    let version = rd.take(1, "version")?[0];
    if version != VERSION {
        return Err(bad(format!("unsupported version {version}")));
    }
    let code = rd.take(1, "scheme")?[0];
    let scheme = Scheme::from_code(code).ok_or_else(|| bad(format!("unknown scheme {code}")))?;
    let len = rd.u64("N")?;
    let n = rd.usize("n")?;
    let n_prime = rd.usize("n'")?;
    let sigma = rd.usize("sigma")?;
    let start_id = rd.u64("start")?;
    let alphabet = rd.take(sigma, "alphabet")?.to_vec();

    let names: &[&str] = match scheme {
        Scheme::I => &["P", "D", "R1", "R2", "G", "B"],
        Scheme::II => &["P", "D", "R_E", "M_E", "T_E", "G", "B"],
        Scheme::III => &["P", "D", "R_X", "S", "G", "B"],
    };
    let mut parts = Vec::with_capacity(names.len());
    for name in names {
        parts.push(rd.bits(name)?);
    }
    if rd.at != buf.len() {
        return Err(bad(format!("{} trailing bytes", buf.len() - rd.at)));
    }

    let start = match scheme {
        Scheme::I | Scheme::II => start_id,
        Scheme::III => start_id.wrapping_sub(sigma as u64),
    };
    if start == 0 || start > n as u64 {
        return Err(bad(format!("start symbol {start_id} is not a variable")));
    }
    let mut it = parts.into_iter();
    let p = it.next().unwrap();
    let d = it.next().unwrap();
    let mut scheme_parts: Vec<BitVec> = it.by_ref().take(names.len() - 4).collect();
    let g = it.next().unwrap();
    let b = it.next().unwrap();
    let gw = ceil_lg(len.max(1)) as usize;
    let common = Common {
        len,
        n,
        n_prime,
        sigma,
        start: start as usize,
        alphabet,
        p: RankSelect::new(p),
        d: RankSelect::new(d),
        g: IntVec::from_bits(g, gw)?,
        b: PostOrderBits::new(b),
    };
    common.check_shape()?;

    let enc = match scheme {
        Scheme::I => {
            let r2 = scheme_parts.pop().unwrap();
            let r1 = scheme_parts.pop().unwrap();
            AnyEncoding::I(EncodingI::from_parts(common, r1, r2)?)
        }
        Scheme::II => {
            let te = scheme_parts.pop().unwrap();
            let me = scheme_parts.pop().unwrap();
            let re = scheme_parts.pop().unwrap();
            AnyEncoding::II(EncodingII::from_parts(common, re, me, te)?)
        }
        Scheme::III => {
            let s = scheme_parts.pop().unwrap();
            let rx = scheme_parts.pop().unwrap();
            AnyEncoding::III(EncodingIII::from_parts(common, rx, s)?)
        }
    };
    debug_assert_eq!(enc.as_dyn().sym_of(SymbolId(start_id as u32)), Some(Sym::Var(start as usize)));
    validate_encoding(enc.as_dyn())?;
    Ok(enc)
}

pub fn write_file(path: &std::path::Path, enc: &dyn SlpEncoding) -> Result<()> {
    std::fs::write(path, to_bytes(enc))?;
    Ok(())
}

pub fn read_file(path: &std::path::Path) -> Result<AnyEncoding> {
    from_bytes(&std::fs::read(path)?)
}
