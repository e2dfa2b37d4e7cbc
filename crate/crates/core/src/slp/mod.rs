//! Straight-line programs in normal form.
//!
//! Symbol ids follow the usual convention: variables are `1..=n` and
//! terminals are `n+1..=n+sigma`. Terminal rank `r` maps to `alphabet[r-1]`.

mod compress;
mod text;

use std::fmt;
use std::sync::OnceLock;

pub use compress::compress;
pub use text::{parse_text, to_text};

use crate::error::{Error, Result, Violation};

/// Integer symbol id in `1..=n+sigma`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymbolId(pub u32);

impl SymbolId {
    #[inline]
    pub fn get(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for SymbolId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug)]
pub struct Slp {
    n: usize,
    sigma: usize,
    start: SymbolId,
    rules: Vec<(SymbolId, SymbolId)>,
    alphabet: Vec<u8>,
    lengths: OnceLock<Vec<u64>>,
}

impl Clone for Slp {
    fn clone(&self) -> Self {
        Slp::from_parts_unchecked(self.n, self.sigma, self.start, self.rules.clone(), self.alphabet.clone())
    }
}

impl PartialEq for Slp {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.sigma == other.sigma
            && self.start == other.start
            && self.rules == other.rules
            && self.alphabet == other.alphabet
    }
}

impl Eq for Slp {}

impl Slp {
    /// Builds a grammar and checks every invariant.
    pub fn new(
        sigma: usize,
        start: u32,
        rules: Vec<(u32, u32)>,
        alphabet: Vec<u8>,
    ) -> Result<Slp> {
        let slp = Slp::from_parts_unchecked(
            rules.len(),
            sigma,
            SymbolId(start),
            rules.into_iter().map(|(l, r)| (SymbolId(l), SymbolId(r))).collect(),
            alphabet,
        );
        slp.validate().map_err(Error::InvalidGrammar)?;
        Ok(slp)
    }

    /// Builds a grammar without checking it. Call [`Slp::validate`] before
    /// using any derived quantity.
    pub fn from_parts_unchecked(
        n: usize,
        sigma: usize,
        start: SymbolId,
        rules: Vec<(SymbolId, SymbolId)>,
        alphabet: Vec<u8>,
    ) -> Slp {
        Slp { n, sigma, start, rules, alphabet, lengths: OnceLock::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sigma(&self) -> usize {
        self.sigma
    }

    pub fn start(&self) -> SymbolId {
        self.start
    }

    pub fn rules(&self) -> &[(SymbolId, SymbolId)] {
        &self.rules
    }

    pub fn alphabet(&self) -> &[u8] {
        &self.alphabet
    }

    /// Righthand side of variable `x`.
    #[inline]
    pub fn rule(&self, x: SymbolId) -> (SymbolId, SymbolId) {
        self.rules[x.get() - 1]
    }

    #[inline]
    pub fn is_variable(&self, x: SymbolId) -> bool {
        x.0 >= 1 && x.get() <= self.n
    }

    #[inline]
    pub fn terminal(&self, rank: usize) -> SymbolId {
        SymbolId((self.n + rank) as u32)
    }

    /// Byte of terminal symbol `x`.
    #[inline]
    pub fn terminal_byte(&self, x: SymbolId) -> u8 {
        self.alphabet[x.get() - self.n - 1]
    }

    pub fn validate(&self) -> std::result::Result<(), Vec<Violation>> {
        let mut out = Vec::new();
        if self.n == 0 {
            out.push(Violation::NoVariables);
        }
        if self.sigma == 0 {
            out.push(Violation::EmptyAlphabet);
        }
        if self.alphabet.len() != self.sigma {
            out.push(Violation::AlphabetSize { expected: self.sigma, found: self.alphabet.len() });
        }
        if self.rules.len() != self.n {
            out.push(Violation::NoVariables);
        }
        if !out.is_empty() {
            return Err(out);
        }
        if !self.is_variable(self.start) {
            out.push(Violation::StartNotVariable { start: self.start.0 as u64 });
        }
        let total = self.n + self.sigma;
        for (i, &(l, r)) in self.rules.iter().enumerate() {
            for s in [l, r] {
                if s.0 == 0 || s.get() > total {
                    out.push(Violation::SymbolOutOfRange { var: i as u32 + 1, symbol: s.0 as u64 });
                }
            }
        }
        if !out.is_empty() {
            return Err(out);
        }

        let cycles = self.find_cycles();
        if !cycles.is_empty() {
            out.extend(cycles.into_iter().map(|var| Violation::Cycle { var }));
            return Err(out);
        }

        let reach = self.reachable();
        for v in 1..=self.n {
            if !reach[v] {
                out.push(Violation::Unreachable { var: v as u32 });
            }
        }

        match self.compute_lengths() {
            Err(var) => out.push(Violation::LengthOverflow { var }),
            Ok(len) => {
                let big_n = len[self.start.get()];
                if big_n < 2 {
                    out.push(Violation::TooShort { len: big_n });
                }
            }
        }
        if out.is_empty() {
            Ok(())
        } else {
            Err(out)
        }
    }

    /// Variables that close a cycle, in increasing order.
    fn find_cycles(&self) -> Vec<u32> {
        // 0 = unseen, 1 = on stack, 2 = done
        let mut color = vec![0u8; self.n + 1];
        let mut found = Vec::new();
        let mut stack: Vec<(usize, u8)> = Vec::new();
        for root in 1..=self.n {
            if color[root] != 0 {
                continue;
            }
            stack.push((root, 0));
            color[root] = 1;
            while let Some(&mut (v, ref mut next)) = stack.last_mut() {
                if *next < 2 {
                    let (l, r) = self.rules[v - 1];
                    let c = if *next == 0 { l } else { r };
                    *next += 1;
                    if self.is_variable(c) {
                        match color[c.get()] {
                            0 => {
                                color[c.get()] = 1;
                                stack.push((c.get(), 0));
                            }
                            1 => found.push(c.0),
                            _ => {}
                        }
                    }
                } else {
                    color[v] = 2;
                    stack.pop();
                }
            }
        }
        found.sort_unstable();
        found.dedup();
        found
    }

    fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.n + 1];
        let mut stack = vec![self.start.get()];
        seen[self.start.get()] = true;
        while let Some(v) = stack.pop() {
            let (l, r) = self.rules[v - 1];
            for c in [l, r] {
                if self.is_variable(c) && !seen[c.get()] {
                    seen[c.get()] = true;
                    stack.push(c.get());
                }
            }
        }
        seen
    }

    /// Variables in an order where every variable precedes its children.
    /// Only valid on acyclic grammars.
    pub fn topological_order(&self) -> Vec<SymbolId> {
        let mut post = Vec::with_capacity(self.n);
        let mut seen = vec![false; self.n + 1];
        let mut stack: Vec<(usize, u8)> = Vec::new();
        for root in std::iter::once(self.start.get()).chain(1..=self.n) {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            stack.push((root, 0));
            while let Some(&mut (v, ref mut next)) = stack.last_mut() {
                if *next < 2 {
                    let (l, r) = self.rules[v - 1];
                    let c = if *next == 0 { l } else { r };
                    *next += 1;
                    if self.is_variable(c) && !seen[c.get()] {
                        seen[c.get()] = true;
                        stack.push((c.get(), 0));
                    }
                } else {
                    post.push(SymbolId(v as u32));
                    stack.pop();
                }
            }
        }
        post.reverse();
        post
    }

    fn compute_lengths(&self) -> std::result::Result<Vec<u64>, u32> {
        let mut len = vec![1u64; self.n + self.sigma + 1];
        len[0] = 0;
        for &v in self.topological_order().iter().rev() {
            let (l, r) = self.rule(v);
            len[v.get()] = len[l.get()].checked_add(len[r.get()]).ok_or(v.0)?;
        }
        Ok(len)
    }

    /// Expansion lengths indexed by symbol id (index 0 unused).
    pub fn lengths(&self) -> &[u64] {
        self.lengths.get_or_init(|| {
            self.compute_lengths().expect("expansion length overflow on a validated grammar")
        })
    }

    pub fn expansion_length(&self, x: SymbolId) -> u64 {
        self.lengths()[x.get()]
    }

    /// Length `N` of the derived string.
    pub fn len(&self) -> u64 {
        self.expansion_length(self.start)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn expand(&self, x: SymbolId) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.expansion_length(x) as usize);
        let mut stack = vec![x];
        while let Some(s) = stack.pop() {
            if self.is_variable(s) {
                let (l, r) = self.rule(s);
                stack.push(r);
                stack.push(l);
            } else {
                out.push(self.terminal_byte(s));
            }
        }
        out
    }

    pub fn text(&self) -> Vec<u8> {
        self.expand(self.start)
    }

    /// Character at 1-based position `p` by root-to-leaf descent.
    pub fn naive_access(&self, p: u64) -> Result<u8> {
        self.naive_access_counted(p).map(|(b, _)| b)
    }

    /// Like [`Slp::naive_access`], also returning the number of visited nodes.
    pub fn naive_access_counted(&self, p: u64) -> Result<(u8, usize)> {
        let big_n = self.len();
        if p < 1 || p > big_n {
            return Err(Error::PositionOutOfRange { pos: p, len: big_n });
        }
        let len = self.lengths();
        let mut x = self.start;
        let mut pos = p;
        let mut visits = 1;
        while self.is_variable(x) {
            let (l, r) = self.rule(x);
            if pos <= len[l.get()] {
                x = l;
            } else {
                pos -= len[l.get()];
                x = r;
            }
            visits += 1;
        }
        Ok((self.terminal_byte(x), visits))
    }

    /// `T[p..=q]`, 1-based inclusive.
    pub fn naive_extract(&self, p: u64, q: u64) -> Result<Vec<u8>> {
        let big_n = self.len();
        if p < 1 || p > q || q > big_n {
            return Err(Error::RangeOutOfBounds { p, q, len: big_n });
        }
        let len = self.lengths();
        let mut out = Vec::with_capacity((q - p + 1) as usize);
        // (symbol, offset of its first character in T)
        let mut stack = vec![(self.start, 1u64)];
        while let Some((s, off)) = stack.pop() {
            let end = off + len[s.get()] - 1;
            if end < p || off > q {
                continue;
            }
            if self.is_variable(s) {
                let (l, r) = self.rule(s);
                stack.push((r, off + len[l.get()]));
                stack.push((l, off));
            } else {
                out.push(self.terminal_byte(s));
            }
        }
        Ok(out)
    }

    /// Number of edges on the longest root-to-leaf path of the derivation tree.
    pub fn height(&self) -> usize {
        let mut h = vec![0usize; self.n + self.sigma + 1];
        for &v in self.topological_order().iter().rev() {
            let (l, r) = self.rule(v);
            h[v.get()] = 1 + h[l.get()].max(h[r.get()]);
        }
        h[self.start.get()]
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    pub use crate::testing::{grammar_a, grammar_b, grammar_one};
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn validate_examples() {
        assert!(grammar_one().validate().is_ok());
        assert!(grammar_b().validate().is_ok());

        let cyclic = Slp::from_parts_unchecked(
            1,
            1,
            SymbolId(1),
            vec![(SymbolId(1), SymbolId(2))],
            b"a".to_vec(),
        );
        let v = cyclic.validate().unwrap_err();
        assert_eq!(v, vec![Violation::Cycle { var: 1 }]);
        assert_eq!(v[0].to_string(), "cycle at variable 1");
    }

    #[test]
    fn validate_errors() {
        let unreachable = Slp::from_parts_unchecked(
            2,
            1,
            SymbolId(1),
            vec![(SymbolId(3), SymbolId(3)), (SymbolId(3), SymbolId(3))],
            b"a".to_vec(),
        );
        assert_eq!(unreachable.validate().unwrap_err(), vec![Violation::Unreachable { var: 2 }]);

        let out_of_range = Slp::new(1, 1, vec![(2, 7)], b"a".to_vec()).unwrap_err();
        assert!(matches!(
            out_of_range,
            Error::InvalidGrammar(ref v) if v == &[Violation::SymbolOutOfRange { var: 1, symbol: 7 }]
        ));

        let long_cycle = Slp::from_parts_unchecked(
            3,
            1,
            SymbolId(1),
            vec![
                (SymbolId(2), SymbolId(4)),
                (SymbolId(3), SymbolId(4)),
                (SymbolId(1), SymbolId(4)),
            ],
            b"a".to_vec(),
        );
        assert!(matches!(long_cycle.validate().unwrap_err()[0], Violation::Cycle { .. }));

        // 64 doublings overflow u64
        let mut rules: Vec<(u32, u32)> = (1..64).map(|i| (i + 1, i + 1)).collect();
        rules.push((65, 65));
        let err = Slp::new(1, 1, rules, b"a".to_vec()).unwrap_err();
        assert!(matches!(err, Error::InvalidGrammar(ref v) if matches!(v[0], Violation::LengthOverflow { .. })));
    }

    #[test]
    fn lengths_and_expansion() {
        let b = grammar_b();
        assert_eq!(b.expansion_length(SymbolId(5)), 1);
        assert_eq!(b.expansion_length(SymbolId(1)), 5);
        assert_eq!(b.expansion_length(SymbolId(3)), 3);
        assert_eq!(b.expand(SymbolId(4)), b"aa");
        assert_eq!(b.expand(SymbolId(1)), b"aaaaa");
        assert_eq!(grammar_a().expand(SymbolId(1)), b"abab");
        let a = grammar_a();
        for v in 1..=a.n() as u32 {
            let (l, r) = a.rule(SymbolId(v));
            assert_eq!(
                a.expansion_length(SymbolId(v)),
                a.expansion_length(l) + a.expansion_length(r)
            );
        }
    }

    #[test]
    fn naive_queries() {
        let a = grammar_a();
        assert_eq!(a.naive_access(3).unwrap(), b'a');
        assert_eq!(a.naive_access(4).unwrap(), b'b');
        assert_eq!(grammar_b().naive_access(5).unwrap(), b'a');
        assert!(a.naive_access(0).is_err());
        assert!(a.naive_access(5).is_err());

        assert_eq!(a.naive_extract(2, 3).unwrap(), b"ba");
        assert_eq!(a.naive_extract(1, 4).unwrap(), b"abab");
        assert_eq!(grammar_b().naive_extract(1, 1).unwrap(), b"a");
        assert!(a.naive_extract(3, 2).is_err());
        assert!(a.naive_extract(1, 5).is_err());
    }

    #[test]
    fn heights() {
        assert_eq!(grammar_a().height(), 2);
        assert_eq!(grammar_b().height(), 4);
        assert_eq!(grammar_one().height(), 1);
    }

    #[test]
    fn naive_access_visit_bound() {
        for slp in [grammar_a(), grammar_b(), grammar_one()] {
            let h = slp.height();
            for p in 1..=slp.len() {
                let (_, visits) = slp.naive_access_counted(p).unwrap();
                assert!(visits <= h + 1);
            }
        }
    }

    #[test]
    fn naive_extract_exhaustive() {
        let texts: [&[u8]; 4] = [b"abracadabra", b"aaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaaa", b"mississippi river", b"xy"];
        for t in texts {
            let slp = compress(t).unwrap();
            let full = slp.text();
            assert_eq!(full, t);
            let n = full.len() as u64;
            for p in 1..=n {
                for q in p..=n {
                    assert_eq!(
                        slp.naive_extract(p, q).unwrap(),
                        &full[(p - 1) as usize..q as usize]
                    );
                }
            }
        }
    }
}
