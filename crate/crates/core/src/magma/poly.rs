use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use super::word::{MagmaWord, Multidegree, VarId};
use crate::error::{Error, Result};
use crate::Coefficient;

/// A finite linear combination of magma words with exact rational coefficients.
///
/// Zero coefficients are never stored and iteration follows the word order.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    terms: BTreeMap<MagmaWord, Coefficient>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn var(index: u32) -> Self {
        Self::from_word(MagmaWord::var(index))
    }

    pub fn from_word(w: MagmaWord) -> Self {
        let mut p = Self::zero();
        p.terms.insert(w, Coefficient::one());
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (MagmaWord, Coefficient)>) -> Self {
        let mut p = Self::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MagmaWord, &Coefficient)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &MagmaWord) -> Coefficient {
        self.terms.get(w).cloned().unwrap_or_else(Coefficient::zero)
    }

    pub fn add_term(&mut self, w: MagmaWord, c: Coefficient) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &MultiPoly, c: &Coefficient) {
        if c.is_zero() {
            return;
        }
        for (w, a) in other.terms() {
            self.add_term(w.clone(), a * c);
        }
    }

    pub fn scale(&self, c: &Coefficient) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(w, a)| (w.clone(), a * c)).collect(),
        }
    }

    /// Bilinear extension of the magma product.
    pub fn multiply(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (u, a) in self.terms() {
            for (v, b) in other.terms() {
                out.add_term(MagmaWord::product(u, v), a * b);
            }
        }
        out
    }

    pub fn variables(&self) -> BTreeSet<VarId> {
        self.terms.keys().flat_map(|w| w.leaves()).collect()
    }

    /// Terms grouped by multidegree.
    pub fn homogeneous_components(&self) -> BTreeMap<Multidegree, MultiPoly> {
        let mut out: BTreeMap<Multidegree, MultiPoly> = BTreeMap::new();
        for (w, c) in self.terms() {
            out.entry(w.multidegree())
                .or_default()
                .terms
                .insert(w.clone(), c.clone());
        }
        out
    }

    /// The common multidegree of all terms, if there is one.
    pub fn multidegree(&self) -> Option<Multidegree> {
        let mut it = self.terms.keys();
        let first = it.next()?.multidegree();
        it.all(|w| w.multidegree() == first).then_some(first)
    }

    /// Applies the algebra homomorphism determined by `assignment`.
    pub fn substitute(&self, assignment: &HashMap<VarId, MultiPoly>) -> Result<MultiPoly> {
        let mut cache: HashMap<MagmaWord, MultiPoly> = HashMap::new();
        let mut out = MultiPoly::zero();
        for (w, c) in self.terms() {
            let image = substitute_word(w, assignment, &mut cache)?;
            out.add_scaled(&image, c);
        }
        Ok(out)
    }

    /// Renames variables; the map must be defined on every variable present.
    pub fn rename(&self, f: impl Fn(VarId) -> VarId) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (w, c) in self.terms() {
            out.add_term(w.relabel(&f), c.clone());
        }
        out
    }

    /// The image in the free associative algebra: brackets are forgotten.
    pub fn associative_projection(&self) -> BTreeMap<Vec<VarId>, Coefficient> {
        let mut out: BTreeMap<Vec<VarId>, Coefficient> = BTreeMap::new();
        for (w, c) in self.terms() {
            let e = out.entry(w.flatten()).or_insert_with(Coefficient::zero);
            *e += c;
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// True if every coefficient is an integer.
    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }
}

fn substitute_word(
    w: &MagmaWord,
    assignment: &HashMap<VarId, MultiPoly>,
    cache: &mut HashMap<MagmaWord, MultiPoly>,
) -> Result<MultiPoly> {
    if let Some(v) = w.as_leaf() {
        return assignment
            .get(&v)
            .cloned()
            .ok_or(Error::UnassignedVariable(v.index()));
    }
    if let Some(p) = cache.get(w) {
        return Ok(p.clone());
    }
    let (l, r) = w.split().expect("non-leaf word splits");
    let lp = substitute_word(&l, assignment, cache)?;
    let rp = substitute_word(&r, assignment, cache)?;
    let p = lp.multiply(&rp);
    cache.insert(w.clone(), p.clone());
    Ok(p)
}

/// `ab - ba`
pub fn commutator(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    a.multiply(b) - b.multiply(a)
}

/// `ab + ba`
pub fn jordan(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    a.multiply(b) + b.multiply(a)
}

/// `(ab)c - a(bc)`
pub fn associator(a: &MultiPoly, b: &MultiPoly, c: &MultiPoly) -> MultiPoly {
    a.multiply(b).multiply(c) - a.multiply(&b.multiply(c))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProductKind {
    Commutator,
    Jordan,
    Associator,
}

impl ProductKind {
    pub fn arity(self) -> usize {
        match self {
            ProductKind::Commutator | ProductKind::Jordan => 2,
            ProductKind::Associator => 3,
        }
    }
}

pub fn derived_product(kind: ProductKind, args: &[MultiPoly]) -> Result<MultiPoly> {
    if args.len() != kind.arity() {
        return Err(Error::Arity {
            expected: kind.arity(),
            got: args.len(),
        });
    }
    Ok(match kind {
        ProductKind::Commutator => commutator(&args[0], &args[1]),
        ProductKind::Jordan => jordan(&args[0], &args[1]),
        ProductKind::Associator => associator(&args[0], &args[1], &args[2]),
    })
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        for (w, c) in rhs.terms() {
            self.add_term(w.clone(), c.clone());
        }
    }
}

impl SubAssign<&MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: &MultiPoly) {
        for (w, c) in rhs.terms() {
            self.add_term(w.clone(), -c.clone());
        }
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(mut self, rhs: MultiPoly) -> MultiPoly {
        self += &rhs;
        self
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(mut self, rhs: MultiPoly) -> MultiPoly {
        self -= &rhs;
        self
    }
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.into_iter().map(|(w, c)| (w, -c)).collect(),
        }
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.multiply(rhs)
    }
}

impl std::fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Display::fmt(self, f)
    }
}
