use std::collections::HashMap;

use super::word::{Context, MagmaWord, Multidegree, HOLE, NODE};

/// All words of multidegree `d`, in canonical order.
pub fn enumerate_words(d: &Multidegree) -> Vec<MagmaWord> {
    if d.total() == 0 {
        return Vec::new();
    }
    let dense = d.dense();
    let labels: Vec<u16> = (1..=dense.len() as u16).collect();
    let mut memo = HashMap::new();
    let mut words: Vec<MagmaWord> = shapes_for(&dense, &labels, &mut memo)
        .iter()
        .map(|t| MagmaWord::from_tokens(t.clone()))
        .collect();
    words.sort();
    words
}

/// All one-hole contexts whose non-hole leaves have multidegree `d`.
/// For `d = 0` this is the single trivial context.
pub fn enumerate_contexts(d: &Multidegree) -> Vec<Context> {
    let mut dense = d.dense();
    let mut labels: Vec<u16> = (1..=dense.len() as u16).collect();
    dense.push(1);
    labels.push(HOLE);
    let mut memo = HashMap::new();
    let mut ctxs: Vec<Context> = shapes_for(&dense, &labels, &mut memo)
        .iter()
        .map(|t| Context::from_tokens(t.clone()))
        .collect();
    ctxs.sort();
    ctxs
}

/// `n! / prod(d_i!) * Catalan(n - 1)`, the size of a multihomogeneous component.
pub fn word_count(d: &Multidegree) -> u128 {
    let n = d.total() as u128;
    if n == 0 {
        return 0;
    }
    let mut arrangements: u128 = 1;
    let mut placed: u128 = 0;
    for (_, e) in d.iter() {
        for k in 1..=e as u128 {
            placed += 1;
            arrangements = arrangements * placed / k;
        }
    }
    arrangements * catalan(n - 1)
}

pub fn catalan(n: u128) -> u128 {
    let mut c: u128 = 1;
    for k in 0..n {
        c = c * 2 * (2 * k + 1) / (k + 2);
    }
    c
}

fn shapes_for(
    d: &[u32],
    labels: &[u16],
    memo: &mut HashMap<Vec<u32>, Vec<Vec<u16>>>,
) -> Vec<Vec<u16>> {
    if let Some(hit) = memo.get(d) {
        return hit.clone();
    }
    let total: u32 = d.iter().sum();
    let mut out = Vec::new();
    if total == 1 {
        let i = d.iter().position(|&e| e == 1).expect("one nonzero entry");
        out.push(vec![labels[i]]);
    } else {
        for left in sub_vectors(d) {
            let lt: u32 = left.iter().sum();
            if lt == 0 || lt == total {
                continue;
            }
            let right: Vec<u32> = d.iter().zip(&left).map(|(a, b)| a - b).collect();
            let ls = shapes_for(&left, labels, memo);
            let rs = shapes_for(&right, labels, memo);
            for l in &ls {
                for r in &rs {
                    let mut t = Vec::with_capacity(1 + l.len() + r.len());
                    t.push(NODE);
                    t.extend_from_slice(l);
                    t.extend_from_slice(r);
                    out.push(t);
                }
            }
        }
    }
    memo.insert(d.to_vec(), out.clone());
    out
}

/// Every vector `a` with `0 <= a <= d` componentwise.
pub(crate) fn sub_vectors(d: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::with_capacity(d.len())];
    for &e in d {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for prefix in &out {
            for k in 0..=e {
                let mut v = prefix.clone();
                v.push(k);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_counts() {
        assert_eq!(enumerate_words(&Multidegree::multilinear(3)).len(), 12);
        assert_eq!(enumerate_words(&Multidegree::from_exponents(&[2, 1])).len(), 6);
        assert_eq!(enumerate_words(&Multidegree::multilinear(4)).len(), 120);
    }

    #[test]
    fn words_have_requested_multidegree_and_are_sorted() {
        let d = Multidegree::from_exponents(&[2, 0, 1]);
        let ws = enumerate_words(&d);
        assert!(ws.iter().all(|w| w.multidegree() == d));
        assert!(ws.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn contexts_of_small_multidegree() {
        assert_eq!(enumerate_contexts(&Multidegree::default()).len(), 1);
        // (_*x1), (x1*_)
        assert_eq!(enumerate_contexts(&Multidegree::multilinear(1)).len(), 2);
        // 3!/1 * Catalan(2) = 12 labelled words on {x1, x2, _}
        assert_eq!(enumerate_contexts(&Multidegree::multilinear(2)).len(), 12);
    }

    #[test]
    fn catalan_numbers() {
        let got: Vec<u128> = (0..8).map(catalan).collect();
        assert_eq!(got, vec![1, 1, 2, 5, 14, 42, 132, 429]);
    }
}
