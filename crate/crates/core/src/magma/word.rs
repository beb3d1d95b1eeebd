use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Token marking an internal product node in the prefix encoding.
pub(crate) const NODE: u16 = 0;
/// Token marking the hole of a [`Context`].
pub(crate) const HOLE: u16 = u16::MAX;

/// A variable `x1, x2, ...` of the free algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VarId(u16);

impl VarId {
    pub const MAX_INDEX: u32 = (u16::MAX - 1) as u32;

    pub fn new(index: u32) -> Result<Self> {
        if index == 0 || index > Self::MAX_INDEX {
            return Err(Error::InvalidVariable(index));
        }
        Ok(VarId(index as u16))
    }

    /// Panics on an out-of-range index; for internal construction with known-good indices.
    pub fn of(index: u32) -> Self {
        Self::new(index).expect("variable index out of range")
    }

    pub fn index(self) -> u32 {
        self.0 as u32
    }

    pub(crate) fn token(self) -> u16 {
        self.0
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

/// A nonassociative monomial: a full binary tree whose leaves carry variables.
///
/// Stored in prefix (Polish) order: `0` is a product node, any other token is a
/// leaf variable. A word of degree `n` therefore has `2n - 1` tokens, which
/// makes the degree-lexicographic order a plain `(len, tokens)` comparison.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MagmaWord {
    tokens: Box<[u16]>,
}

impl MagmaWord {
    pub fn leaf(v: VarId) -> Self {
        MagmaWord {
            tokens: Box::new([v.token()]),
        }
    }

    pub fn var(index: u32) -> Self {
        Self::leaf(VarId::of(index))
    }

    pub fn product(left: &MagmaWord, right: &MagmaWord) -> Self {
        let mut tokens = Vec::with_capacity(1 + left.tokens.len() + right.tokens.len());
        tokens.push(NODE);
        tokens.extend_from_slice(&left.tokens);
        tokens.extend_from_slice(&right.tokens);
        MagmaWord {
            tokens: tokens.into_boxed_slice(),
        }
    }

    /// Builds a word from prefix tokens that are already known to be well formed.
    pub(crate) fn from_tokens(tokens: Vec<u16>) -> Self {
        debug_assert!(is_well_formed(&tokens, false));
        MagmaWord {
            tokens: tokens.into_boxed_slice(),
        }
    }

    pub(crate) fn tokens(&self) -> &[u16] {
        &self.tokens
    }

    pub fn degree(&self) -> usize {
        self.tokens.len().div_ceil(2)
    }

    pub fn is_leaf(&self) -> bool {
        self.tokens.len() == 1
    }

    pub fn as_leaf(&self) -> Option<VarId> {
        if self.is_leaf() {
            Some(VarId(self.tokens[0]))
        } else {
            None
        }
    }

    /// Left and right factors, or `None` for a leaf.
    pub fn split(&self) -> Option<(MagmaWord, MagmaWord)> {
        if self.is_leaf() {
            return None;
        }
        let end = subtree_end(&self.tokens, 1);
        Some((
            MagmaWord::from_tokens(self.tokens[1..end].to_vec()),
            MagmaWord::from_tokens(self.tokens[end..].to_vec()),
        ))
    }

    /// Leaves from left to right.
    pub fn leaves(&self) -> impl Iterator<Item = VarId> + '_ {
        self.tokens.iter().filter(|&&t| t != NODE).map(|&t| VarId(t))
    }

    pub fn multidegree(&self) -> Multidegree {
        let mut m = Multidegree::default();
        for v in self.leaves() {
            *m.exponents.entry(v).or_insert(0) += 1;
        }
        m
    }

    /// Replaces every leaf by the token sequence chosen for it.
    pub(crate) fn splice<'a>(&self, image: impl Fn(VarId) -> &'a [u16]) -> MagmaWord {
        let mut out = Vec::with_capacity(self.tokens.len() * 2);
        for &t in self.tokens.iter() {
            if t == NODE {
                out.push(NODE);
            } else {
                out.extend_from_slice(image(VarId(t)));
            }
        }
        MagmaWord::from_tokens(out)
    }

    /// Relabels leaves; the shape is unchanged.
    pub fn relabel(&self, mut f: impl FnMut(VarId) -> VarId) -> MagmaWord {
        let tokens = self
            .tokens
            .iter()
            .map(|&t| if t == NODE { NODE } else { f(VarId(t)).token() })
            .collect::<Vec<_>>();
        MagmaWord::from_tokens(tokens)
    }

    /// Relabels the leaves, in left-to-right order, with the given sequence.
    pub fn with_leaves(&self, labels: &[VarId]) -> MagmaWord {
        debug_assert_eq!(labels.len(), self.degree());
        let mut it = labels.iter();
        self.relabel(|_| *it.next().expect("label count matches degree"))
    }

    /// The associative word obtained by forgetting the bracketing.
    pub fn flatten(&self) -> Vec<VarId> {
        self.leaves().collect()
    }
}

impl Ord for MagmaWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.tokens
            .len()
            .cmp(&other.tokens.len())
            .then_with(|| self.tokens.cmp(&other.tokens))
    }
}

impl PartialOrd for MagmaWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MagmaWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tokens(f, &self.tokens)
    }
}

impl fmt::Debug for MagmaWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tokens(f, &self.tokens)
    }
}

/// A word with exactly one distinguished hole leaf, written `_`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Context {
    tokens: Box<[u16]>,
}

impl Context {
    /// The trivial context: just the hole.
    pub fn hole() -> Self {
        Context {
            tokens: Box::new([HOLE]),
        }
    }

    pub(crate) fn from_tokens(tokens: Vec<u16>) -> Self {
        debug_assert!(is_well_formed(&tokens, true));
        Context {
            tokens: tokens.into_boxed_slice(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.tokens.len() == 1
    }

    /// Multidegree of the context with the hole removed.
    pub fn multidegree(&self) -> Multidegree {
        let mut m = Multidegree::default();
        for &t in self.tokens.iter() {
            if t != NODE && t != HOLE {
                *m.exponents.entry(VarId(t)).or_insert(0) += 1;
            }
        }
        m
    }

    /// Fills the hole with `w`.
    pub fn plug(&self, w: &MagmaWord) -> MagmaWord {
        if self.is_trivial() {
            return w.clone();
        }
        let mut out = Vec::with_capacity(self.tokens.len() + w.tokens.len());
        for &t in self.tokens.iter() {
            if t == HOLE {
                out.extend_from_slice(&w.tokens);
            } else {
                out.push(t);
            }
        }
        MagmaWord::from_tokens(out)
    }

    /// The context as an ordinary word, with the hole replaced by `v`.
    pub fn to_word_with(&self, v: VarId) -> MagmaWord {
        self.plug(&MagmaWord::leaf(v))
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tokens(f, &self.tokens)
    }
}

impl fmt::Debug for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tokens(f, &self.tokens)
    }
}

fn write_tokens(f: &mut fmt::Formatter<'_>, tokens: &[u16]) -> fmt::Result {
    fn go(f: &mut fmt::Formatter<'_>, tokens: &[u16], pos: usize) -> std::result::Result<usize, fmt::Error> {
        match tokens[pos] {
            NODE => {
                f.write_str("(")?;
                let mid = go(f, tokens, pos + 1)?;
                f.write_str("*")?;
                let end = go(f, tokens, mid)?;
                f.write_str(")")?;
                Ok(end)
            }
            HOLE => {
                f.write_str("_")?;
                Ok(pos + 1)
            }
            v => {
                write!(f, "x{v}")?;
                Ok(pos + 1)
            }
        }
    }
    go(f, tokens, 0).map(|_| ())
}

/// Index one past the subtree starting at `start`.
pub(crate) fn subtree_end(tokens: &[u16], start: usize) -> usize {
    let mut need = 1usize;
    let mut i = start;
    while need > 0 {
        if tokens[i] == NODE {
            need += 1;
        } else {
            need -= 1;
        }
        i += 1;
    }
    i
}

fn is_well_formed(tokens: &[u16], with_hole: bool) -> bool {
    if tokens.is_empty() {
        return false;
    }
    let mut need = 1isize;
    let mut holes = 0;
    for (i, &t) in tokens.iter().enumerate() {
        if need == 0 {
            return false;
        }
        if t == NODE {
            need += 1;
        } else {
            if t == HOLE {
                holes += 1;
            }
            need -= 1;
        }
        if need == 0 && i + 1 != tokens.len() {
            return false;
        }
    }
    need == 0 && holes == usize::from(with_hole)
}

/// Exponent of each variable in a monomial.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multidegree {
    exponents: BTreeMap<VarId, u32>,
}

impl Multidegree {
    pub fn new(exponents: impl IntoIterator<Item = (VarId, u32)>) -> Self {
        Multidegree {
            exponents: exponents.into_iter().filter(|&(_, e)| e > 0).collect(),
        }
    }

    /// `x1^e[0] x2^e[1] ...`; zero entries are skipped.
    pub fn from_exponents(e: &[u32]) -> Self {
        Self::new(
            e.iter()
                .enumerate()
                .map(|(i, &k)| (VarId::of(i as u32 + 1), k)),
        )
    }

    /// The multilinear multidegree `(1,1,...,1)` on `x1..xn`.
    pub fn multilinear(n: usize) -> Self {
        Self::from_exponents(&vec![1; n])
    }

    pub fn total(&self) -> usize {
        self.exponents.values().map(|&e| e as usize).sum()
    }

    pub fn get(&self, v: VarId) -> u32 {
        self.exponents.get(&v).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (VarId, u32)> + '_ {
        self.exponents.iter().map(|(&v, &e)| (v, e))
    }

    pub fn variables(&self) -> impl Iterator<Item = VarId> + '_ {
        self.exponents.keys().copied()
    }

    pub fn is_multilinear(&self) -> bool {
        self.exponents.values().all(|&e| e == 1)
    }

    pub fn max_var(&self) -> Option<VarId> {
        self.exponents.keys().next_back().copied()
    }

    /// Dense exponent vector indexed by `var - 1`, up to the largest variable.
    pub fn dense(&self) -> Vec<u32> {
        let n = self.max_var().map_or(0, |v| v.index() as usize);
        let mut out = vec![0; n];
        for (v, e) in self.iter() {
            out[v.index() as usize - 1] = e;
        }
        out
    }

    pub fn permuted(&self, sigma: impl Fn(VarId) -> VarId) -> Multidegree {
        Multidegree::new(self.iter().map(|(v, e)| (sigma(v), e)))
    }

    /// Parses the comma-separated dense form, e.g. `3,1,1`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut exps = Vec::new();
        for part in s.split(',') {
            let part = part.trim();
            let e: u32 = part
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent {part:?} in multidegree {s:?}")))?;
            exps.push(e);
        }
        if exps.len() > VarId::MAX_INDEX as usize {
            return Err(Error::Parse("too many variables".into()));
        }
        let m = Self::from_exponents(&exps);
        if m.total() == 0 {
            return Err(Error::Parse(format!("multidegree {s:?} has total degree 0")));
        }
        Ok(m)
    }
}

impl fmt::Display for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dense = self.dense();
        let parts: Vec<String> = dense.iter().map(|e| e.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_degree() {
        let w = MagmaWord::product(&MagmaWord::var(1), &MagmaWord::var(2));
        assert_eq!(w.to_string(), "(x1*x2)");
        assert_eq!(w.degree(), 2);
        let (l, r) = w.split().unwrap();
        assert_eq!(l, MagmaWord::var(1));
        assert_eq!(r, MagmaWord::var(2));
    }

    #[test]
    fn multidegree_of_words() {
        let x1 = MagmaWord::var(1);
        let x2 = MagmaWord::var(2);
        let w = MagmaWord::product(&MagmaWord::product(&x1, &x1), &x2);
        assert_eq!(w.multidegree(), Multidegree::from_exponents(&[2, 1]));
        assert_eq!(
            MagmaWord::product(&x1, &x2).multidegree(),
            Multidegree::from_exponents(&[1, 1])
        );
        assert_eq!(
            MagmaWord::var(3).multidegree(),
            Multidegree::new([(VarId::of(3), 1)])
        );
        assert_eq!(MagmaWord::var(3).multidegree().to_string(), "0,0,1");
    }

    #[test]
    fn order_is_degree_first() {
        let x1 = MagmaWord::var(1);
        let x9 = MagmaWord::var(9);
        let x1x1 = MagmaWord::product(&x1, &x1);
        assert!(x9 < x1x1);
        let left = MagmaWord::product(&x1x1, &x1);
        let right = MagmaWord::product(&x1, &x1x1);
        assert!(left < right);
    }

    #[test]
    fn context_plug() {
        let c = Context::from_tokens(vec![NODE, 3, HOLE]);
        assert_eq!(c.to_string(), "(x3*_)");
        let w = c.plug(&MagmaWord::product(&MagmaWord::var(1), &MagmaWord::var(2)));
        assert_eq!(w.to_string(), "(x3*(x1*x2))");
        assert_eq!(c.multidegree(), Multidegree::new([(VarId::of(3), 1)]));
    }

    #[test]
    fn multidegree_parse_roundtrip() {
        let m = Multidegree::parse("3,1,1").unwrap();
        assert_eq!(m.total(), 5);
        assert_eq!(m.to_string(), "3,1,1");
        assert!(Multidegree::parse("0,0").is_err());
        assert!(Multidegree::parse("a").is_err());
    }
}
