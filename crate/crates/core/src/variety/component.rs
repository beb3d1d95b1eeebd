use std::collections::HashMap;

use num_traits::Zero;
use rayon::prelude::*;

use super::certificate::MembershipCertificate;
use super::generators::{blocks, descriptors, Block, GeneratorDescriptor};
use super::Variety;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::linalg::modular::{primes, reduce_vector, solve_multimodular, ModpEchelon};
use crate::linalg::{EchelonAccumulator, SpanMembership, SparseVec};
use crate::magma::{enumerate_words, word_count, MagmaWord, MultiPoly, Multidegree};
use crate::Coefficient;

const BATCH: usize = 4096;
/// Primes tried before the modular path gives up on reconstruction.
const MAX_PRIMES: usize = 48;

/// Where an inserted vector came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Generator(GeneratorDescriptor),
    /// A vector added by hand, e.g. a candidate term of a decomposition.
    Extra(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expressed {
    Member(Vec<(Source, Coefficient)>),
    /// The leading word of the nonzero remainder.
    NonMember { witness: MagmaWord },
}

#[derive(Debug, Clone, Default)]
pub struct BuildOptions {
    pub provenance: bool,
    /// Stop streaming as soon as this polynomial lies in the span.
    pub stop_when_contains: Option<MultiPoly>,
}

/// The span of the consequence generators of a variety in one
/// multihomogeneous component of the free magma algebra.
#[derive(Debug, Clone)]
pub struct ComponentSpace {
    variety: Variety,
    multidegree: Multidegree,
    words: Vec<MagmaWord>,
    index: HashMap<MagmaWord, usize>,
    acc: EchelonAccumulator,
    sources: HashMap<usize, Source>,
    streamed: usize,
    complete: bool,
}

impl ComponentSpace {
    /// All generators, with provenance.
    pub fn build(variety: &Variety, d: &Multidegree, config: &Config) -> Result<Self> {
        Self::build_with(
            variety,
            d,
            config,
            BuildOptions {
                provenance: true,
                stop_when_contains: None,
            },
        )
    }

    pub fn build_with(
        variety: &Variety,
        d: &Multidegree,
        config: &Config,
        options: BuildOptions,
    ) -> Result<Self> {
        let (mut space, blocks) = Self::empty(variety, d, config, options.provenance)?;
        let target = options
            .stop_when_contains
            .as_ref()
            .map(|p| space.vector(p))
            .transpose()?;
        if let Some(t) = &target {
            if space.acc.contains(t)? {
                return Ok(space);
            }
        }
        config.install(|| space.stream(blocks, target.as_ref()))?;
        Ok(space)
    }

    /// Checks the resource limits and sets up the word index; no generators yet.
    fn empty(
        variety: &Variety,
        d: &Multidegree,
        config: &Config,
        provenance: bool,
    ) -> Result<(Self, Vec<Block>)> {
        let ambient = word_count(d);
        if ambient > config.max_ambient_dimension as u128 {
            return Err(Error::ResourceLimit {
                what: "ambient dimension",
                value: ambient,
                limit: config.max_ambient_dimension as u128,
            });
        }
        let blocks = blocks(variety, d);
        let total: u128 = blocks.iter().map(Block::len).sum();
        if total > config.max_generators as u128 {
            return Err(Error::ResourceLimit {
                what: "consequence generators",
                value: total,
                limit: config.max_generators as u128,
            });
        }
        let words = enumerate_words(d);
        let index = words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
        let space = ComponentSpace {
            variety: variety.clone(),
            multidegree: d.clone(),
            acc: EchelonAccumulator::with_provenance(words.len(), provenance),
            words,
            index,
            sources: HashMap::new(),
            streamed: 0,
            complete: false,
        };
        Ok((space, blocks))
    }

    fn stream(&mut self, blocks: Vec<Block>, target: Option<&SparseVec>) -> Result<()> {
        let mut pending = descriptors(blocks).peekable();
        while pending.peek().is_some() {
            let batch: Vec<GeneratorDescriptor> = pending.by_ref().take(BATCH).collect();
            let vectors: Vec<SparseVec> = batch
                .par_iter()
                .map(|g| self.generator_vector(g))
                .collect::<Result<_>>()?;
            for (g, v) in batch.into_iter().zip(vectors) {
                let slot = self.acc.inserted_count();
                self.streamed += 1;
                if self.acc.insert_reduce(&v)? {
                    self.sources.insert(slot, Source::Generator(g));
                    if self.acc.rank() == self.words.len() {
                        self.complete = true;
                        return Ok(());
                    }
                }
            }
            if let Some(t) = target {
                if self.acc.contains(t)? {
                    return Ok(());
                }
            }
        }
        self.complete = true;
        Ok(())
    }

    fn generator_vector(&self, g: &GeneratorDescriptor) -> Result<SparseVec> {
        let identity = &self.variety.identities[g.identity];
        let entries = g
            .expand_terms(identity)
            .map(|(w, c)| (self.index[&w], c.clone()))
            .collect::<Vec<_>>();
        SparseVec::new(self.words.len(), entries)
    }

    /// Coordinates of `p` over the ambient words.
    pub fn vector(&self, p: &MultiPoly) -> Result<SparseVec> {
        let mut entries = Vec::with_capacity(p.len());
        for (w, c) in p.terms() {
            let Some(&i) = self.index.get(w) else {
                return Err(Error::NotHomogeneous(format!(
                    "word {w} is not of multidegree {}",
                    self.multidegree
                )));
            };
            entries.push((i, c.clone()));
        }
        SparseVec::new(self.words.len(), entries)
    }

    pub fn polynomial(&self, v: &SparseVec) -> MultiPoly {
        MultiPoly::from_terms(
            v.entries()
                .iter()
                .map(|(i, c)| (self.words[*i].clone(), c.clone())),
        )
    }

    pub fn variety(&self) -> &Variety {
        &self.variety
    }

    pub fn multidegree(&self) -> &Multidegree {
        &self.multidegree
    }

    pub fn words(&self) -> &[MagmaWord] {
        &self.words
    }

    pub fn ambient_dimension(&self) -> usize {
        self.words.len()
    }

    pub fn rank(&self) -> usize {
        self.acc.rank()
    }

    /// Dimension of the component of the relatively free algebra. Only
    /// meaningful once [`Self::is_complete`].
    pub fn dimension(&self) -> usize {
        self.words.len() - self.acc.rank()
    }

    /// Whether every generator has been accounted for (streamed, or the span
    /// already fills the ambient space).
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn generators_streamed(&self) -> usize {
        self.streamed
    }

    pub fn accumulator(&self) -> &EchelonAccumulator {
        &self.acc
    }

    /// Inserts an extra vector after the generators.
    pub fn insert_extra(&mut self, label: impl Into<String>, p: &MultiPoly) -> Result<bool> {
        let v = self.vector(p)?;
        let slot = self.acc.inserted_count();
        let grew = self.acc.insert_reduce(&v)?;
        if grew {
            self.sources.insert(slot, Source::Extra(label.into()));
        }
        Ok(grew)
    }

    pub fn contains(&self, p: &MultiPoly) -> Result<bool> {
        self.acc.contains(&self.vector(p)?)
    }

    pub fn express(&self, p: &MultiPoly) -> Result<Expressed> {
        match self.acc.express_in_span(&self.vector(p)?)? {
            SpanMembership::InSpan(coeffs) => Ok(Expressed::Member(
                coeffs
                    .into_iter()
                    .map(|(slot, c)| (self.sources[&slot].clone(), c))
                    .collect(),
            )),
            SpanMembership::NotInSpan { leading_column, .. } => Ok(Expressed::NonMember {
                witness: self.words[leading_column].clone(),
            }),
        }
    }

    /// A certificate for `p`, or `None` if `p` is not in the span of the
    /// generators alone.
    pub fn certificate(&self, p: &MultiPoly) -> Result<Option<MembershipCertificate>> {
        let Expressed::Member(terms) = self.express(p)? else {
            return Ok(None);
        };
        let mut gens = Vec::with_capacity(terms.len());
        for (source, c) in terms {
            match source {
                Source::Generator(g) => gens.push((g, c)),
                Source::Extra(_) => return Ok(None),
            }
        }
        Ok(Some(MembershipCertificate::new(
            p,
            &self.variety,
            &self.multidegree.to_string(),
            &gens,
        )))
    }
}

/// Dimension of the multidegree-`d` component of the relatively free algebra.
pub fn component_dimension(variety: &Variety, d: &Multidegree, config: &Config) -> Result<usize> {
    let space = ComponentSpace::build_with(variety, d, config, BuildOptions::default())?;
    Ok(space.dimension())
}

/// Membership of `part` in one component via row reduction modulo a prime,
/// with the exact coefficients recovered by [`solve_multimodular`] (which
/// checks them over the rationals). `None` means "undecided": the target is
/// not in the span modulo the first prime, or reconstruction failed.
fn modular_member(
    variety: &Variety,
    d: &Multidegree,
    part: &MultiPoly,
    config: &Config,
) -> Result<Option<(Vec<(GeneratorDescriptor, Coefficient)>, usize, usize)>> {
    let (space, blocks) = ComponentSpace::empty(variety, d, config, false)?;
    let target = space.vector(part)?;
    let p = primes().next().expect("infinitely many primes");
    let Some(t) = reduce_vector(&target, p) else {
        return Ok(None);
    };
    let mut acc = ModpEchelon::new(space.ambient_dimension(), p);
    let mut kept: HashMap<usize, (GeneratorDescriptor, SparseVec)> = HashMap::new();
    let found = config.install(|| -> Result<bool> {
        if acc.contains(&t) {
            return Ok(true);
        }
        let mut pending = descriptors(blocks).peekable();
        while pending.peek().is_some() {
            let batch: Vec<GeneratorDescriptor> = pending.by_ref().take(BATCH).collect();
            let vectors: Vec<SparseVec> = batch
                .par_iter()
                .map(|g| space.generator_vector(g))
                .collect::<Result<_>>()?;
            for (g, v) in batch.into_iter().zip(vectors) {
                let Some(r) = reduce_vector(&v, p) else {
                    return Ok(false);
                };
                let slot = acc.inserted_count();
                if acc.insert_reduce(&r) {
                    kept.insert(slot, (g, v));
                }
            }
            if acc.contains(&t) {
                return Ok(true);
            }
        }
        Ok(false)
    })?;
    if !found {
        return Ok(None);
    }
    let Some(support) = acc.express(&t) else {
        return Ok(None);
    };
    let (descs, basis): (Vec<GeneratorDescriptor>, Vec<SparseVec>) = support
        .into_iter()
        .map(|(slot, _)| kept.remove(&slot).expect("pivot generator kept"))
        .unzip();
    let Some(coefficients) = solve_multimodular(&basis, &target, MAX_PRIMES) else {
        return Ok(None);
    };
    let terms = descs
        .into_iter()
        .zip(coefficients)
        .filter(|(_, c)| !c.is_zero())
        .collect();
    Ok(Some((terms, space.ambient_dimension(), acc.rank())))
}

#[derive(Debug, Clone)]
pub struct Membership {
    pub member: bool,
    pub certificate: Option<MembershipCertificate>,
    /// For non-members: the component and the leading word of the remainder.
    pub witness: Option<(Multidegree, MagmaWord)>,
    /// `(multidegree, ambient, rank)` per component examined.
    pub components: Vec<(Multidegree, usize, usize)>,
}

/// Decides whether `p` lies in the T-ideal of `variety`, one multihomogeneous
/// component at a time.
pub fn is_member(p: &MultiPoly, variety: &Variety, config: &Config) -> Result<Membership> {
    let mut all_terms: Vec<(GeneratorDescriptor, Coefficient)> = Vec::new();
    let mut degrees = Vec::new();
    let mut components = Vec::new();
    for (d, part) in p.homogeneous_components() {
        if let Some((terms, ambient, rank)) = modular_member(variety, &d, &part, config)? {
            components.push((d.clone(), ambient, rank));
            all_terms.extend(terms);
            degrees.push(d.to_string());
            continue;
        }
        let space = ComponentSpace::build_with(
            variety,
            &d,
            config,
            BuildOptions {
                provenance: true,
                stop_when_contains: Some(part.clone()),
            },
        )?;
        components.push((d.clone(), space.ambient_dimension(), space.rank()));
        match space.express(&part)? {
            Expressed::NonMember { witness } => {
                return Ok(Membership {
                    member: false,
                    certificate: None,
                    witness: Some((d, witness)),
                    components,
                });
            }
            Expressed::Member(terms) => {
                for (s, c) in terms {
                    if let Source::Generator(g) = s {
                        all_terms.push((g, c));
                    }
                }
                degrees.push(d.to_string());
            }
        }
    }
    Ok(Membership {
        member: true,
        certificate: Some(MembershipCertificate::new(
            p,
            variety,
            &degrees.join(";"),
            &all_terms,
        )),
        witness: None,
        components,
    })
}
