//! Linearization, skew-symmetrization and alternation of polynomials.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::magma::{MagmaWord, MultiPoly, Multidegree, VarId};
use crate::Coefficient;

/// A polynomial in a single variable, homogeneous of degree `degree`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneVarElement {
    poly: MultiPoly,
    degree: usize,
}

impl OneVarElement {
    pub fn new(poly: MultiPoly) -> Result<Self> {
        let vars = poly.variables();
        if vars.len() > 1 {
            return Err(Error::NotHomogeneous(format!(
                "{poly} involves more than one variable"
            )));
        }
        let degree = match poly.multidegree() {
            Some(d) => d.total(),
            None if poly.is_zero() => 0,
            None => return Err(Error::NotHomogeneous(poly.to_string())),
        };
        Ok(OneVarElement { poly, degree })
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.degree
    }
}

/// Every permutation of `0..n` with its sign, in Heap's-algorithm order.
pub(crate) fn signed_permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    let mut even = true;
    let mut c = vec![0usize; n];
    out.push((perm.clone(), even));
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            even = !even;
            out.push((perm.clone(), even));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

fn signed(c: &Coefficient, even: bool) -> Coefficient {
    if even {
        c.clone()
    } else {
        -c.clone()
    }
}

/// Full linearization. A variable of exponent `k` is replaced by `k` fresh
/// variables summed over all placements, with no factorial normalization.
/// Fresh variables are numbered from `x1` in blocks following the order of the
/// original variables, so a multilinear input only gets renamed.
pub fn linearize(p: &MultiPoly) -> Result<MultiPoly> {
    if p.is_zero() {
        return Ok(MultiPoly::zero());
    }
    let d = p
        .multidegree()
        .ok_or_else(|| Error::NotHomogeneous(p.to_string()))?;
    let mut base: BTreeMap<VarId, u32> = BTreeMap::new();
    let mut offset = 0u32;
    for (v, e) in d.iter() {
        base.insert(v, offset);
        offset += e;
    }
    let mut out = MultiPoly::zero();
    for (w, c) in p.terms() {
        let mut positions: BTreeMap<VarId, Vec<usize>> = BTreeMap::new();
        for (i, v) in w.leaves().enumerate() {
            positions.entry(v).or_default().push(i);
        }
        let mut labelings: Vec<Vec<VarId>> = vec![vec![VarId::of(1); w.degree()]];
        for (v, pos) in &positions {
            let perms = signed_permutations(pos.len());
            let mut next = Vec::with_capacity(labelings.len() * perms.len());
            for labels in &labelings {
                for (perm, _) in &perms {
                    let mut l = labels.clone();
                    for (k, &at) in pos.iter().enumerate() {
                        l[at] = VarId::of(base[v] + perm[k] as u32 + 1);
                    }
                    next.push(l);
                }
            }
            labelings = next;
        }
        for labels in labelings {
            out.add_term(w.with_leaves(&labels), c.clone());
        }
    }
    Ok(out)
}

/// Skew-symmetrization of a one-variable element: leaves of each word get
/// `x1..xn` from left to right, then the result is summed with signs over
/// all permutations of the variables.
pub fn skew(u: &OneVarElement) -> MultiPoly {
    let n = u.degree();
    if n == 0 {
        return MultiPoly::zero();
    }
    let perms = signed_permutations(n);
    let words: Vec<(&MagmaWord, &Coefficient)> = u.poly().terms().collect();
    perms
        .par_chunks(256)
        .map(|chunk| {
            let mut acc = MultiPoly::zero();
            for (perm, even) in chunk {
                let labels: Vec<VarId> = perm.iter().map(|&i| VarId::of(i as u32 + 1)).collect();
                for (w, c) in &words {
                    acc.add_term(w.with_leaves(&labels), signed(c, *even));
                }
            }
            acc
        })
        .reduce(MultiPoly::zero, |a, b| a + b)
}

/// Identifies `xj` with `xi`.
pub fn collapse(p: &MultiPoly, i: VarId, j: VarId) -> MultiPoly {
    p.rename(|v| if v == j { i } else { v })
}

/// Number of variables `n` if `p` is multilinear in exactly `x1..xn`.
pub fn multilinear_arity(p: &MultiPoly) -> Result<usize> {
    let Some(d) = p.multidegree() else {
        return Err(Error::NotMultilinear(0));
    };
    let n = d.total();
    if d != Multidegree::multilinear(n) {
        return Err(Error::NotMultilinear(n));
    }
    Ok(n)
}

/// `sum over sigma of sgn(sigma) * sigma(p)` for `p` multilinear in `x1..xn`.
pub fn alternate(p: &MultiPoly) -> Result<MultiPoly> {
    if p.is_zero() {
        return Ok(MultiPoly::zero());
    }
    let n = multilinear_arity(p)?;
    let perms = signed_permutations(n);
    let terms: Vec<(&MagmaWord, &Coefficient)> = p.terms().collect();
    Ok(perms
        .par_chunks(256)
        .map(|chunk| {
            let mut acc = MultiPoly::zero();
            for (perm, even) in chunk {
                for (w, c) in &terms {
                    let image = w.relabel(|v| VarId::of(perm[v.index() as usize - 1] as u32 + 1));
                    acc.add_term(image, signed(c, *even));
                }
            }
            acc
        })
        .reduce(MultiPoly::zero, |a, b| a + b))
}

/// True if `p` vanishes under every identification `xj -> xi`.
pub fn is_skew_symmetric(p: &MultiPoly, n: usize) -> bool {
    (1..=n as u32).all(|i| {
        (i + 1..=n as u32).all(|j| collapse(p, VarId::of(i), VarId::of(j)).is_zero())
    })
}
