use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::generators::GeneratorDescriptor;
use super::Variety;
use crate::error::{Error, Result};
use crate::magma::{
    format_rational, parse_context, parse_poly, parse_rational, parse_word, MultiPoly, VarId,
};
use crate::Coefficient;

/// One summand `coefficient * context[identity(substitution)]`, in text form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateTerm {
    pub identity: String,
    /// Variable name (`x1`, ...) to the word substituted for it.
    pub substitution: BTreeMap<String, String>,
    /// A word with a single `_` hole.
    pub context: String,
    pub coefficient: String,
}

/// A witness that `target` lies in the T-ideal of `variety`: the target is
/// the sum of the listed generators with their coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipCertificate {
    pub target: String,
    pub variety: String,
    /// The target's multidegree; components are separated by `;`.
    pub multidegree: String,
    pub generators: Vec<CertificateTerm>,
}

impl MembershipCertificate {
    pub fn new(
        target: &MultiPoly,
        variety: &Variety,
        multidegree: &str,
        terms: &[(GeneratorDescriptor, Coefficient)],
    ) -> Self {
        let generators = terms
            .iter()
            .map(|(g, c)| CertificateTerm {
                identity: variety.identities[g.identity].name.clone(),
                substitution: g
                    .substitution
                    .iter()
                    .enumerate()
                    .map(|(i, w)| (format!("x{}", i + 1), w.to_string()))
                    .collect(),
                context: g.context.to_string(),
                coefficient: format_rational(c),
            })
            .collect();
        MembershipCertificate {
            target: target.to_string(),
            variety: variety.name.clone(),
            multidegree: multidegree.to_string(),
            generators,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

/// Expands one certificate term using only substitution in the free algebra.
pub fn expand_term(term: &CertificateTerm, variety: &Variety) -> Result<MultiPoly> {
    let identity = variety
        .identity(&term.identity)
        .ok_or_else(|| Error::UnknownIdentity(term.identity.clone()))?;
    let mut assignment: HashMap<VarId, MultiPoly> = HashMap::new();
    for (name, word) in &term.substitution {
        let index: u32 = name
            .strip_prefix('x')
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad variable name {name:?}")))?;
        assignment.insert(VarId::new(index)?, MultiPoly::from_word(parse_word(word)?));
    }
    let inner = identity.poly.substitute(&assignment)?;

    // Put a fresh variable in the hole and substitute the inner polynomial for it.
    let context = parse_context(&term.context)?;
    let hole = VarId::new(
        context
            .multidegree()
            .max_var()
            .map_or(1, |v| v.index() + 1)
            .max(1),
    )?;
    let outer = MultiPoly::from_word(context.to_word_with(hole));
    let mut fill: HashMap<VarId, MultiPoly> = outer
        .variables()
        .into_iter()
        .map(|v| (v, MultiPoly::from_word(crate::magma::MagmaWord::leaf(v))))
        .collect();
    fill.insert(hole, inner);
    outer.substitute(&fill)
}

/// Re-expands every term and compares the sum with the target.
pub fn recheck_certificate(cert: &MembershipCertificate, variety: &Variety) -> Result<bool> {
    let mut sum = MultiPoly::zero();
    for term in &cert.generators {
        let c = parse_rational(&term.coefficient)?;
        sum.add_scaled(&expand_term(term, variety)?, &c);
    }
    Ok(sum == parse_poly(&cert.target)?)
}
