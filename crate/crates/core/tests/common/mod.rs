//! Independent oracles for the integration tests: a naive word enumerator, a
//! naive T-ideal spanning set, and dense fraction-free (Bareiss) rank.
#![allow(dead_code)]

use std::collections::HashMap;

use altskew::magma::parse_word;
use altskew::variety::Variety;
use altskew::{Coefficient, MagmaWord, MultiPoly, VarId};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Every word whose leaves are exactly the multiset `vars` (1-based indices).
pub fn words_over(vars: &[u32]) -> Vec<MagmaWord> {
    let mut cache = HashMap::new();
    let mut sorted = vars.to_vec();
    sorted.sort_unstable();
    let mut out = words_rec(&sorted, &mut cache);
    out.sort();
    out.dedup();
    out
}

fn words_rec(vars: &[u32], cache: &mut HashMap<Vec<u32>, Vec<MagmaWord>>) -> Vec<MagmaWord> {
    if let Some(w) = cache.get(vars) {
        return w.clone();
    }
    let out = if vars.len() == 1 {
        vec![MagmaWord::var(vars[0])]
    } else {
        let n = vars.len();
        let mut out = Vec::new();
        // every proper nonempty sub-multiset, via bitmasks (duplicates removed below)
        for mask in 1..(1u32 << n) - 1 {
            let left: Vec<u32> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| vars[i]).collect();
            let right: Vec<u32> = (0..n).filter(|i| mask >> i & 1 == 0).map(|i| vars[i]).collect();
            for a in words_rec(&left, cache) {
                for b in words_rec(&right, cache) {
                    out.push(MagmaWord::product(&a, &b));
                }
            }
        }
        out.sort();
        out.dedup();
        out
    };
    cache.insert(vars.to_vec(), out.clone());
    out
}

fn sub_multisets(vars: &[u32]) -> Vec<(Vec<u32>, Vec<u32>)> {
    let n = vars.len();
    let mut out: Vec<(Vec<u32>, Vec<u32>)> = (0..1u32 << n)
        .map(|mask| {
            let a = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| vars[i]).collect();
            let b = (0..n).filter(|i| mask >> i & 1 == 0).map(|i| vars[i]).collect();
            (a, b)
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Splits of `vars` into `k` ordered nonempty sub-multisets.
fn ordered_splits(vars: &[u32], k: usize) -> Vec<Vec<Vec<u32>>> {
    if k == 0 {
        return if vars.is_empty() { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for (first, rest) in sub_multisets(vars) {
        if first.is_empty() {
            continue;
        }
        for mut tail in ordered_splits(&rest, k - 1) {
            tail.insert(0, first.clone());
            out.push(tail);
        }
    }
    out
}

/// A (redundant) spanning set of the T-ideal component on the multiset
/// `vars`: substitution instances of each identity, closed under
/// multiplication by words on either side.
pub fn naive_ideal_span(variety: &Variety, vars: &[u32]) -> Vec<MultiPoly> {
    let mut sorted = vars.to_vec();
    sorted.sort_unstable();
    let mut memo = HashMap::new();
    ideal_rec(variety, &sorted, &mut memo)
}

fn ideal_rec(variety: &Variety, vars: &[u32], memo: &mut HashMap<Vec<u32>, Vec<MultiPoly>>) -> Vec<MultiPoly> {
    if let Some(v) = memo.get(vars) {
        return v.clone();
    }
    let mut out = Vec::new();
    for id in &variety.identities {
        for split in ordered_splits(vars, id.arity) {
            let choices: Vec<Vec<MagmaWord>> = split.iter().map(|s| words_over(s)).collect();
            let mut idx = vec![0usize; id.arity];
            loop {
                let assignment: HashMap<VarId, MultiPoly> = (0..id.arity)
                    .map(|i| (VarId::of(i as u32 + 1), MultiPoly::from_word(choices[i][idx[i]].clone())))
                    .collect();
                let p = id.poly.substitute(&assignment).unwrap();
                if !p.is_zero() {
                    out.push(p);
                }
                let Some(i) = (0..id.arity).rev().find(|&i| idx[i] + 1 < choices[i].len()) else {
                    break;
                };
                idx[i] += 1;
                for j in i + 1..id.arity {
                    idx[j] = 0;
                }
            }
        }
    }
    for (a, b) in sub_multisets(vars) {
        if a.is_empty() || b.is_empty() {
            continue;
        }
        let inner = ideal_rec(variety, &a, memo);
        for w in words_over(&b) {
            let wp = MultiPoly::from_word(w);
            for g in &inner {
                out.push(g.multiply(&wp));
                out.push(wp.multiply(g));
            }
        }
    }
    memo.insert(vars.to_vec(), out.clone());
    out
}

/// Coordinates of each polynomial over the sorted word list.
pub fn dense_rows(polys: &[MultiPoly], words: &[MagmaWord]) -> Vec<Vec<Coefficient>> {
    let index: HashMap<&MagmaWord, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    polys
        .iter()
        .map(|p| {
            let mut row = vec![Coefficient::zero(); words.len()];
            for (w, c) in p.terms() {
                row[index[w]] += c;
            }
            row
        })
        .collect()
}

/// Rank by Bareiss fraction-free elimination after clearing denominators.
pub fn bareiss_rank(rows: &[Vec<Coefficient>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            let l = r.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            r.iter().map(|c| c.numer() * (&l / c.denom())).collect()
        })
        .collect();
    let Some(cols) = m.first().map(Vec::len) else {
        return 0;
    };
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..m.len() {
            for c in col + 1..cols {
                let v = (&m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c]) / &prev;
                m[r][c] = v;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Dimension of the relatively free component on `vars`, by the oracles only.
pub fn oracle_dimension(variety: &Variety, vars: &[u32]) -> usize {
    let words = words_over(vars);
    let gens = naive_ideal_span(variety, vars);
    words.len() - bareiss_rank(&dense_rows(&gens, &words))
}

pub fn w(s: &str) -> MagmaWord {
    parse_word(s).unwrap()
}
