//! Varieties given by multilinear identities, and their T-ideal components.

mod certificate;
mod component;
mod generators;

use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};
use crate::magma::{associator, commutator, parse_poly, MultiPoly};
use crate::symmetrize::{linearize, multilinear_arity};

pub use certificate::{expand_term, recheck_certificate, CertificateTerm, MembershipCertificate};
pub use component::{
    component_dimension, is_member, BuildOptions, ComponentSpace, Expressed, Membership, Source,
};
pub use generators::{consequence_generators, generator_count, GeneratorDescriptor};

/// A named multilinear identity in `x1..xk`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Identity {
    pub name: String,
    pub poly: MultiPoly,
    pub arity: usize,
}

impl Identity {
    /// Fully linearizes `poly`; char 0 makes this equivalent to the original.
    pub fn new(name: impl Into<String>, poly: &MultiPoly) -> Result<Self> {
        let name = name.into();
        let poly = linearize(poly)?;
        if poly.is_zero() {
            return Err(Error::InvalidParameters(format!("identity {name:?} is zero")));
        }
        let arity = multilinear_arity(&poly)?;
        Ok(Identity { name, poly, arity })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Variety {
    pub name: String,
    pub identities: Vec<Identity>,
}

impl Variety {
    pub fn new(name: impl Into<String>, identities: Vec<Identity>) -> Self {
        Variety {
            name: name.into(),
            identities,
        }
    }

    /// The free magma algebra: no identities.
    pub fn free() -> Self {
        Variety::new("free", Vec::new())
    }

    pub fn identity(&self, name: &str) -> Option<&Identity> {
        self.identities.iter().find(|i| i.name == name)
    }

    /// Adds identities; the result is named `name`.
    pub fn extended(&self, name: impl Into<String>, more: Vec<Identity>) -> Self {
        let mut identities = self.identities.clone();
        identities.extend(more);
        Variety::new(name, identities)
    }

    /// One identity per nonblank line; lines starting with `#` are skipped.
    pub fn parse_custom(name: impl Into<String>, text: &str) -> Result<Self> {
        let name = name.into();
        let mut identities = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let p = parse_poly(line)?;
            if p.multidegree().is_none() {
                return Err(Error::NotHomogeneous(format!("line {}: {line}", lineno + 1)));
            }
            identities.push(Identity::new(format!("{name}.{}", identities.len() + 1), &p)?);
        }
        Ok(Variety::new(name, identities))
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "custom".into());
        Self::parse_custom(name, &text)
    }
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "variety {}", self.name)?;
        for id in &self.identities {
            writeln!(f, "  {} = {}", id.name, id.poly)?;
        }
        Ok(())
    }
}

fn x(i: u32) -> MultiPoly {
    MultiPoly::var(i)
}

/// Names accepted by [`builtin_variety`].
pub const BUILTIN_VARIETIES: &[&str] = &["free", "assoc", "alt", "flex", "ncj_cor1"];

/// `assoc`, `alt`, `flex`, `ncj_cor1` (noncommutative Jordan with
/// `([x,y],z,z) = 0`), or `free`. Custom varieties come from
/// [`Variety::parse_custom`].
pub fn builtin_variety(name: &str) -> Result<Variety> {
    let (a, b, c) = (x(1), x(2), x(3));
    let v = match name {
        "free" => Variety::free(),
        "assoc" => Variety::new("assoc", vec![Identity::new("associative", &associator(&a, &b, &c))?]),
        "alt" => Variety::new(
            "alt",
            vec![
                Identity::new("right_alternative", &associator(&a, &b, &b))?,
                Identity::new("left_alternative", &associator(&a, &a, &b))?,
            ],
        ),
        "flex" => Variety::new("flex", vec![flexible()?]),
        "ncj_cor1" => {
            let sq = a.multiply(&a);
            Variety::new(
                "ncj_cor1",
                vec![
                    flexible()?,
                    Identity::new("jordan_square", &associator(&sq, &b, &a))?,
                    Identity::new("commutator_middle", &associator(&commutator(&a, &b), &c, &c))?,
                ],
            )
        }
        other => return Err(Error::UnknownVariety(other.to_string())),
    };
    Ok(v)
}

fn flexible() -> Result<Identity> {
    Identity::new("flexible", &associator(&x(1), &x(2), &x(1)))
}
