use std::collections::HashMap;
use std::sync::Arc;

use super::{Identity, Variety};
use crate::magma::{
    enumerate_contexts, enumerate_words, sub_vectors, Context, MagmaWord, MultiPoly, Multidegree,
};
use crate::Coefficient;

/// A consequence generator `context[identity(u1, ..., uk)]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorDescriptor {
    /// Index into the variety's identity list.
    pub identity: usize,
    /// `substitution[i]` replaces `x(i+1)`.
    pub substitution: Vec<MagmaWord>,
    pub context: Context,
}

impl GeneratorDescriptor {
    /// Terms of the expanded generator, possibly with repeated words.
    pub(crate) fn expand_terms<'a>(
        &'a self,
        identity: &'a Identity,
    ) -> impl Iterator<Item = (MagmaWord, &'a Coefficient)> + 'a {
        identity.poly.terms().map(move |(w, c)| {
            let inner = w.splice(|v| self.substitution[v.index() as usize - 1].tokens());
            (self.context.plug(&inner), c)
        })
    }

    pub fn expand(&self, variety: &Variety) -> MultiPoly {
        let identity = &variety.identities[self.identity];
        MultiPoly::from_terms(self.expand_terms(identity).map(|(w, c)| (w, c.clone())))
    }

    pub fn describe(&self, variety: &Variety) -> String {
        let subs: Vec<String> = self
            .substitution
            .iter()
            .enumerate()
            .map(|(i, w)| format!("x{}->{}", i + 1, w))
            .collect();
        format!(
            "{}[{}] in {}",
            variety.identities[self.identity].name,
            subs.join(", "),
            self.context
        )
    }
}

/// One family of generators sharing an identity and the multidegrees of the
/// context and of each substituted slot.
pub(crate) struct Block {
    identity: usize,
    contexts: Arc<Vec<Context>>,
    slots: Vec<Arc<Vec<MagmaWord>>>,
}

impl Block {
    pub(crate) fn len(&self) -> u128 {
        self.slots
            .iter()
            .fold(self.contexts.len() as u128, |n, s| n * s.len() as u128)
    }

    /// The `i`-th descriptor in mixed-radix order (context outermost).
    pub(crate) fn descriptor(&self, mut i: u128) -> GeneratorDescriptor {
        let mut picks = vec![0usize; self.slots.len()];
        for (k, slot) in self.slots.iter().enumerate().rev() {
            let n = slot.len() as u128;
            picks[k] = (i % n) as usize;
            i /= n;
        }
        GeneratorDescriptor {
            identity: self.identity,
            substitution: picks
                .iter()
                .zip(&self.slots)
                .map(|(&p, s)| s[p].clone())
                .collect(),
            context: self.contexts[i as usize].clone(),
        }
    }
}

#[derive(Default)]
struct WordCache {
    words: HashMap<Vec<u32>, Arc<Vec<MagmaWord>>>,
    contexts: HashMap<Vec<u32>, Arc<Vec<Context>>>,
}

impl WordCache {
    fn words(&mut self, d: &[u32]) -> Arc<Vec<MagmaWord>> {
        self.words
            .entry(d.to_vec())
            .or_insert_with(|| Arc::new(enumerate_words(&Multidegree::from_exponents(d))))
            .clone()
    }

    fn contexts(&mut self, d: &[u32]) -> Arc<Vec<Context>> {
        self.contexts
            .entry(d.to_vec())
            .or_insert_with(|| Arc::new(enumerate_contexts(&Multidegree::from_exponents(d))))
            .clone()
    }
}

/// Ordered tuples of `k` nonzero vectors summing to `r`.
fn compositions(r: &[u32], k: usize) -> Vec<Vec<Vec<u32>>> {
    let total: u32 = r.iter().sum();
    if k == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    if (total as usize) < k {
        return Vec::new();
    }
    if k == 1 {
        return vec![vec![r.to_vec()]];
    }
    let mut out = Vec::new();
    for first in sub_vectors(r) {
        let ft: u32 = first.iter().sum();
        if ft == 0 || ((total - ft) as usize) < k - 1 {
            continue;
        }
        let rest: Vec<u32> = r.iter().zip(&first).map(|(a, b)| a - b).collect();
        for mut tail in compositions(&rest, k - 1) {
            tail.insert(0, first.clone());
            out.push(tail);
        }
    }
    out
}

pub(crate) fn blocks(variety: &Variety, d: &Multidegree) -> Vec<Block> {
    let dense = d.dense();
    let mut cache = WordCache::default();
    let mut out = Vec::new();
    for (idx, identity) in variety.identities.iter().enumerate() {
        for ctx_deg in sub_vectors(&dense) {
            let rest: Vec<u32> = dense.iter().zip(&ctx_deg).map(|(a, b)| a - b).collect();
            let parts = compositions(&rest, identity.arity);
            if parts.is_empty() {
                continue;
            }
            let contexts = cache.contexts(&ctx_deg);
            for tuple in parts {
                let slots = tuple.iter().map(|a| cache.words(a)).collect();
                out.push(Block {
                    identity: idx,
                    contexts: contexts.clone(),
                    slots,
                });
            }
        }
    }
    out
}

/// Number of consequence generators of `variety` at multidegree `d`.
pub fn generator_count(variety: &Variety, d: &Multidegree) -> u128 {
    blocks(variety, d).iter().map(Block::len).sum()
}

/// Every consequence generator at multidegree `d` with its expansion, in a
/// fixed order: identity, context multidegree, slot multidegrees, then words.
pub fn consequence_generators<'a>(
    variety: &'a Variety,
    d: &Multidegree,
) -> impl Iterator<Item = (MultiPoly, GeneratorDescriptor)> + 'a {
    descriptors(blocks(variety, d)).map(move |g| (g.expand(variety), g))
}

pub(crate) fn descriptors(blocks: Vec<Block>) -> impl Iterator<Item = GeneratorDescriptor> {
    blocks
        .into_iter()
        .flat_map(|b| (0..b.len()).map(move |i| b.descriptor(i)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::variety::builtin_variety;
    use std::collections::HashSet;

    #[test]
    fn multilinear_degree_three_counts() {
        let alt = builtin_variety("alt").unwrap();
        let d = Multidegree::multilinear(3);
        assert_eq!(generator_count(&alt, &d), 12);
        assert_eq!(consequence_generators(&alt, &d).count(), 12);
        let assoc = builtin_variety("assoc").unwrap();
        assert_eq!(generator_count(&assoc, &d), 6);
    }

    #[test]
    fn descriptors_are_distinct_and_have_the_right_multidegree() {
        let flex = builtin_variety("flex").unwrap();
        let d = Multidegree::from_exponents(&[2, 1, 1]);
        let gens: Vec<_> = consequence_generators(&flex, &d).collect();
        assert_eq!(gens.len() as u128, generator_count(&flex, &d));
        let distinct: HashSet<_> = gens.iter().map(|(_, g)| g.clone()).collect();
        assert_eq!(distinct.len(), gens.len());
        for (p, _) in &gens {
            if let Some(m) = p.multidegree() {
                assert_eq!(m, d);
            } else {
                assert!(p.is_zero());
            }
        }
    }

    #[test]
    fn flexible_at_two_one() {
        // Slots take x1, x1, x2 in some order; the context is trivial.
        // Ordered placements of the multiset {x1, x1, x2}: 3.
        let flex = builtin_variety("flex").unwrap();
        let d = Multidegree::from_exponents(&[2, 1]);
        assert_eq!(generator_count(&flex, &d), 3);
    }

    #[test]
    fn too_small_degree_yields_nothing() {
        let alt = builtin_variety("alt").unwrap();
        assert_eq!(generator_count(&alt, &Multidegree::multilinear(2)), 0);
    }
}
