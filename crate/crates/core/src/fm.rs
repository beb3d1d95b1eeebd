//! The skew-symmetric family `f_m`, bracket words of the free alternative
//! superalgebra on one odd generator, and the catalogue of its base elements.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::magma::{MagmaWord, MultiPoly, Multidegree, VarId};
use crate::symmetrize::{skew, OneVarElement};
use crate::variety::{builtin_variety, ComponentSpace, Expressed, MembershipCertificate, Source};
use crate::Coefficient;

/// `f_1 = x1`, `f_2 = [x1, x2]`, and
/// `f_{m+1} = sum_{i<j} (-1)^(i+j-1) f_m([xi, xj], x1, .., ^xi, .., ^xj, .., x_{m+1})`.
pub fn fm(m: usize) -> Result<MultiPoly> {
    if m == 0 {
        return Err(Error::InvalidParameters("f_m needs m >= 1".into()));
    }
    let mut f = MultiPoly::var(1);
    if m == 1 {
        return Ok(f);
    }
    f = MultiPoly::from_terms([
        (word2(1, 2), Coefficient::one()),
        (word2(2, 1), -Coefficient::one()),
    ]);
    for n in 2..m {
        f = next_fm(&f, n);
    }
    Ok(f)
}

fn word2(a: u32, b: u32) -> MagmaWord {
    MagmaWord::product(&MagmaWord::var(a), &MagmaWord::var(b))
}

/// `f_{n+1}` from `f_n`.
fn next_fm(f: &MultiPoly, n: usize) -> MultiPoly {
    let n1 = n as u32 + 1;
    let mut out = MultiPoly::zero();
    for i in 1..=n1 {
        for j in i + 1..=n1 {
            let sign_positive = (i + j - 1) % 2 == 0;
            // Slot 1 gets [xi, xj]; slots 2..n get the remaining variables in order.
            let rest: Vec<u16> = (1..=n1)
                .filter(|&k| k != i && k != j)
                .map(|k| VarId::of(k).token())
                .collect();
            let ij = word2(i, j);
            let ji = word2(j, i);
            for (w, c) in f.terms() {
                let c = if sign_positive { c.clone() } else { -c.clone() };
                let slot_tokens = |first: &MagmaWord| {
                    w.splice(|v| {
                        let k = v.index() as usize;
                        if k == 1 {
                            first.tokens()
                        } else {
                            std::slice::from_ref(&rest[k - 2])
                        }
                    })
                };
                let a = slot_tokens(&ij);
                let b = slot_tokens(&ji);
                out.add_term(a, c.clone());
                out.add_term(b, -c);
            }
        }
    }
    out
}

/// A homogeneous element of the one-odd-generator superalgebra, written as a
/// polynomial in the single variable `x1`. Its parity is its degree mod 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperWord {
    poly: MultiPoly,
    degree: usize,
}

impl SuperWord {
    /// The odd generator.
    pub fn generator() -> Self {
        SuperWord {
            poly: MultiPoly::var(1),
            degree: 1,
        }
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Ordinary (unsigned) product.
    pub fn mul(&self, other: &SuperWord) -> SuperWord {
        SuperWord {
            poly: self.poly.multiply(&other.poly),
            degree: self.degree + other.degree,
        }
    }

    pub fn scale(&self, c: &Coefficient) -> SuperWord {
        SuperWord {
            poly: self.poly.scale(c),
            degree: self.degree,
        }
    }

    pub fn add(&self, other: &SuperWord) -> Result<SuperWord> {
        if self.degree != other.degree {
            return Err(Error::NotHomogeneous(format!(
                "degrees {} and {} differ",
                self.degree, other.degree
            )));
        }
        Ok(SuperWord {
            poly: &self.poly + &other.poly,
            degree: self.degree,
        })
    }

    pub fn to_one_var(&self) -> OneVarElement {
        OneVarElement::new(self.poly.clone()).expect("single variable, homogeneous")
    }

    /// Skew-symmetrization of this element.
    pub fn skew(&self) -> MultiPoly {
        skew(&self.to_one_var())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuperProduct {
    Commutator,
    Jordan,
}

/// `[a,b]_s = ab - (-1)^{|a||b|} ba` and `a o_s b = ab + (-1)^{|a||b|} ba`.
pub fn super_product(kind: SuperProduct, a: &SuperWord, b: &SuperWord) -> SuperWord {
    let ab = a.poly.multiply(&b.poly);
    let ba = b.poly.multiply(&a.poly);
    let both_odd = a.is_odd() && b.is_odd();
    let subtract = matches!(kind, SuperProduct::Commutator) != both_odd;
    SuperWord {
        poly: if subtract { ab - ba } else { ab + ba },
        degree: a.degree + b.degree,
    }
}

/// `x^[1] = x`, `x^[k+1] = [x^[k], x]_s`.
pub fn bracket_power(k: usize) -> Result<SuperWord> {
    if k == 0 {
        return Err(Error::InvalidParameters("x^[k] needs k >= 1".into()));
    }
    let x = SuperWord::generator();
    let mut w = x.clone();
    for _ in 1..k {
        w = super_product(SuperProduct::Commutator, &w, &x);
    }
    Ok(w)
}

/// `t = x^[2] = 2 x x`.
pub fn t_element() -> SuperWord {
    bracket_power(2).expect("k = 2")
}

/// `t^m`, left-associated. `m >= 1`.
pub fn t_power(m: usize) -> Result<SuperWord> {
    if m == 0 {
        return Err(Error::InvalidParameters("t^m needs m >= 1".into()));
    }
    let t = t_element();
    let mut w = t.clone();
    for _ in 1..m {
        w = w.mul(&t);
    }
    Ok(w)
}

/// `z^[k] = [x^[k], t]_s`, defined for `k >= 2`.
pub fn z_element(k: usize) -> Result<SuperWord> {
    if k < 2 {
        return Err(Error::InvalidParameters("z^[k] needs k >= 2".into()));
    }
    Ok(super_product(
        SuperProduct::Commutator,
        &bracket_power(k)?,
        &t_element(),
    ))
}

/// `u^[k] = x^[k] o_s x^[3]`, defined for `k >= 2`.
pub fn u_element(k: usize) -> Result<SuperWord> {
    if k < 2 {
        return Err(Error::InvalidParameters("u^[k] needs k >= 2".into()));
    }
    Ok(super_product(
        SuperProduct::Jordan,
        &bracket_power(k)?,
        &bracket_power(3)?,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseFamily {
    /// `t^m x^sigma`
    Power,
    /// `t^m (x^[k+2] x^sigma)`
    Bracket,
    /// `t^m (u^[4k+eps] x^sigma)`
    UFamily,
    /// `t^m (z^[4k+eps] x^sigma)`
    ZFamily,
}

/// One element of the base catalogue of the free alternative superalgebra
/// on one odd generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BaseDescriptor {
    pub family: BaseFamily,
    pub m: usize,
    pub sigma: u8,
    /// Unused (zero) for [`BaseFamily::Power`].
    pub k: usize,
    /// Only meaningful for the `u` and `z` families.
    pub epsilon: u8,
}

impl BaseDescriptor {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidParameters(format!("{msg}: {self:?}")));
        if self.sigma > 1 || self.epsilon > 1 {
            return bad("sigma and epsilon must be 0 or 1");
        }
        match self.family {
            BaseFamily::Power => {
                if self.m + self.sigma as usize == 0 {
                    return bad("power family needs m + sigma >= 1");
                }
                if self.k != 0 || self.epsilon != 0 {
                    return bad("power family takes no k or epsilon");
                }
            }
            BaseFamily::Bracket => {
                if self.k == 0 {
                    return bad("k must be positive");
                }
                if self.epsilon != 0 {
                    return bad("bracket family takes no epsilon");
                }
            }
            BaseFamily::UFamily | BaseFamily::ZFamily => {
                if self.k == 0 {
                    return bad("k must be positive");
                }
            }
        }
        Ok(())
    }

    /// Index of the bracket, `u` or `z` factor.
    fn inner_index(&self) -> usize {
        match self.family {
            BaseFamily::Power => 0,
            BaseFamily::Bracket => self.k + 2,
            BaseFamily::UFamily | BaseFamily::ZFamily => 4 * self.k + self.epsilon as usize,
        }
    }

    pub fn degree(&self) -> usize {
        let tail = 2 * self.m + self.sigma as usize;
        tail + match self.family {
            BaseFamily::Power => 0,
            BaseFamily::Bracket => self.inner_index(),
            BaseFamily::UFamily => self.inner_index() + 3,
            BaseFamily::ZFamily => self.inner_index() + 2,
        }
    }
}

impl fmt::Display for BaseDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner = match self.family {
            BaseFamily::Power => String::new(),
            BaseFamily::Bracket => format!("x[{}]", self.inner_index()),
            BaseFamily::UFamily => format!("u[{}]", self.inner_index()),
            BaseFamily::ZFamily => format!("z[{}]", self.inner_index()),
        };
        let factor = match (inner.is_empty(), self.sigma) {
            (true, 1) => "x".to_string(),
            (true, _) => String::new(),
            (false, 1) => format!("({inner}*x)"),
            (false, _) => inner,
        };
        let power = match self.m {
            0 => String::new(),
            1 => "t".to_string(),
            m => format!("t^{m}"),
        };
        match (power.is_empty(), factor.is_empty()) {
            (true, _) => f.write_str(&factor),
            (false, true) => f.write_str(&power),
            (false, false) => write!(f, "{power}*{factor}"),
        }
    }
}

/// Builds the element named by `d`: powers of `t` left-associated, then the
/// displayed bracketing `t^m * (inner * x^sigma)`.
pub fn base_element(d: &BaseDescriptor) -> Result<SuperWord> {
    d.validate()?;
    let x = SuperWord::generator();
    let inner = match d.family {
        BaseFamily::Power => None,
        BaseFamily::Bracket => Some(bracket_power(d.inner_index())?),
        BaseFamily::UFamily => Some(u_element(d.inner_index())?),
        BaseFamily::ZFamily => Some(z_element(d.inner_index())?),
    };
    let factor = match (inner, d.sigma) {
        (None, 1) => Some(x),
        (None, _) => None,
        (Some(i), 1) => Some(i.mul(&x)),
        (Some(i), _) => Some(i),
    };
    Ok(match (d.m, factor) {
        (0, Some(f)) => f,
        (m, None) => t_power(m)?,
        (m, Some(f)) => t_power(m)?.mul(&f),
    })
}

/// Every base descriptor of the given degree, in a fixed order.
pub fn base_descriptors(degree: usize) -> Vec<BaseDescriptor> {
    let mut out = Vec::new();
    for m in 0..=degree / 2 {
        for sigma in 0..=1u8 {
            let d = BaseDescriptor {
                family: BaseFamily::Power,
                m,
                sigma,
                k: 0,
                epsilon: 0,
            };
            if d.validate().is_ok() && d.degree() == degree {
                out.push(d);
            }
            for k in 1..=degree {
                for (family, epsilons) in [
                    (BaseFamily::Bracket, 0..=0u8),
                    (BaseFamily::UFamily, 0..=1u8),
                    (BaseFamily::ZFamily, 0..=1u8),
                ] {
                    for epsilon in epsilons {
                        let d = BaseDescriptor {
                            family,
                            m,
                            sigma,
                            k,
                            epsilon,
                        };
                        if d.degree() == degree {
                            out.push(d);
                        }
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// Number of base descriptors of the given degree.
pub fn basea_count(degree: usize) -> usize {
    base_descriptors(degree).len()
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `N(m) = m + C(m,2) + C(m,3)`: every `m`-generated alternative algebra
/// satisfies `f_{n+1} = 0` for `n > 1 + N(m)`.
pub fn n_bound(m: u64) -> u64 {
    m + binomial(m, 2) + binomial(m, 3)
}

/// Smallest index `n + 1` with `f_{n+1}` guaranteed to vanish on `m` generators.
pub fn first_vanishing_index(m: u64) -> u64 {
    n_bound(m) + 3
}

/// Result of writing `f_m` as `Skew(alpha x^[m] + beta z^[m-2])` modulo the
/// alternative T-ideal.
#[derive(Debug, Clone)]
pub enum DecompositionOutcome {
    Solved(Decomposition),
    NoSolution { witness: MagmaWord },
}

#[derive(Debug, Clone)]
pub struct Decomposition {
    pub m: usize,
    pub alpha: Coefficient,
    /// `None` when the `z` term is not part of the family (`m < 4`, or
    /// `z^[m-2]` is zero).
    pub beta: Option<Coefficient>,
    /// `f_m - Skew(alpha x^[m] + beta z^[m-2])`, a member of the T-ideal.
    pub residual: MultiPoly,
    pub certificate: MembershipCertificate,
    pub ambient: usize,
    pub rank: usize,
}

const X_LABEL: &str = "skew(x[m])";
const Z_LABEL: &str = "skew(z[m-2])";

/// Finds `alpha, beta` with `f_m - Skew(alpha x^[m] + beta z^[m-2])` in the
/// alternative T-ideal at multilinear degree `m`.
pub fn solve_skew_decomposition(m: usize, config: &Config) -> Result<DecompositionOutcome> {
    if m < 2 {
        return Err(Error::InvalidParameters(
            "decomposition needs m >= 2".into(),
        ));
    }
    let alt = builtin_variety("alt")?;
    let target = fm(m)?;
    let x_term = bracket_power(m)?.skew();
    let z_term = if m >= 4 {
        let z = z_element(m - 2)?;
        (!z.is_zero()).then(|| z.skew())
    } else {
        None
    };

    let mut space = ComponentSpace::build(&alt, &Multidegree::multilinear(m), config)?;
    space.insert_extra(X_LABEL, &x_term)?;
    if let Some(z) = &z_term {
        space.insert_extra(Z_LABEL, z)?;
    }
    let terms = match space.express(&target)? {
        Expressed::NonMember { witness } => return Ok(DecompositionOutcome::NoSolution { witness }),
        Expressed::Member(terms) => terms,
    };
    let mut alpha = Coefficient::zero();
    let mut beta = Coefficient::zero();
    for (source, c) in terms {
        if let Source::Extra(label) = source {
            if label == X_LABEL {
                alpha = c;
            } else if label == Z_LABEL {
                beta = c;
            }
        }
    }
    let mut residual = target;
    residual.add_scaled(&x_term, &-alpha.clone());
    if let Some(z) = &z_term {
        residual.add_scaled(z, &-beta.clone());
    }
    let certificate = space.certificate(&residual)?.ok_or_else(|| {
        Error::InvalidParameters("residual is not in the span of the generators".into())
    })?;
    Ok(DecompositionOutcome::Solved(Decomposition {
        m,
        alpha,
        beta: z_term.map(|_| beta),
        residual,
        certificate,
        ambient: space.ambient_dimension(),
        rank: space.rank(),
    }))
}

/// The standard polynomial `S_n` in the free associative algebra.
pub fn standard_polynomial(n: usize) -> BTreeMap<Vec<VarId>, Coefficient> {
    crate::symmetrize::signed_permutations(n)
        .into_iter()
        .map(|(perm, even)| {
            let word = perm.iter().map(|&i| VarId::of(i as u32 + 1)).collect();
            let c = if even {
                Coefficient::one()
            } else {
                -Coefficient::one()
            };
            (word, c)
        })
        .collect()
}
