use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use rand::rngs::StdRng;
use rand::seq::index::sample;
use rand::SeedableRng;
use serde_json::json;

use super::Outcome;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::fm::{
    base_element, basea_count, bracket_power, fm, solve_skew_decomposition, standard_polynomial,
    BaseDescriptor, BaseFamily, DecompositionOutcome,
};
use crate::magma::{commutator, enumerate_words, jordan, MagmaWord, MultiPoly, Multidegree, VarId};
use crate::symmetrize::{collapse, skew, OneVarElement};
use crate::variety::{
    builtin_variety, component_dimension, is_member, recheck_certificate, BuildOptions,
    ComponentSpace, Expressed, Source, Variety,
};
use crate::Coefficient;

type Params = BTreeMap<String, u64>;

fn param(params: &Params, key: &str) -> u64 {
    params[key]
}

fn ranged(params: &Params, key: &str, lo: u64, hi: u64) -> Result<usize> {
    let v = param(params, key);
    if v < lo || v > hi {
        return Err(Error::InvalidParameters(format!(
            "{key} = {v} is outside {lo}..={hi}"
        )));
    }
    Ok(v as usize)
}

fn x(i: u32) -> MultiPoly {
    MultiPoly::var(i)
}

fn fmt_q(c: &Coefficient) -> String {
    crate::magma::format_rational(c)
}

/// Membership in `variety`, with the certificate re-checked independently.
fn membership_outcome(target: &MultiPoly, variety: &Variety, config: &Config) -> Result<Outcome> {
    let m = is_member(target, variety, config)?;
    let components: Vec<_> = m
        .components
        .iter()
        .map(|(d, ambient, rank)| json!({ "multidegree": d.to_string(), "ambient": ambient, "rank": rank }))
        .collect();
    match m.certificate {
        Some(cert) => {
            let rechecked = recheck_certificate(&cert, variety)?;
            Ok(Outcome {
                pass: rechecked,
                details: json!({
                    "member": true,
                    "components": components,
                    "certificate_terms": cert.generators.len(),
                    "certificate_rechecked": rechecked,
                }),
                certificates: vec![cert],
            })
        }
        None => {
            let (d, w) = m.witness.expect("non-members carry a witness");
            Ok(Outcome {
                pass: false,
                details: json!({
                    "member": false,
                    "components": components,
                    "witness_multidegree": d.to_string(),
                    "witness": w.to_string(),
                }),
                certificates: Vec::new(),
            })
        }
    }
}

pub(super) fn lemma1(params: &Params, _config: &Config) -> Result<Outcome> {
    let m = ranged(params, "m", 2, 8)?;
    let f = fm(m)?;
    let mut failing = Vec::new();
    let mut pairs = 0;
    for i in 1..=m as u32 {
        for j in i + 1..=m as u32 {
            pairs += 1;
            if !collapse(&f, VarId::of(i), VarId::of(j)).is_zero() {
                failing.push(format!("x{i}=x{j}"));
            }
        }
    }
    Ok(Outcome {
        pass: failing.is_empty(),
        details: json!({ "terms": f.len(), "pairs": pairs, "nonvanishing": failing }),
        certificates: Vec::new(),
    })
}

pub(super) fn eq1(_params: &Params, config: &Config) -> Result<Outcome> {
    let (a, b) = (x(1), x(2));
    let target = commutator(&a.multiply(&a), &b) - jordan(&a, &commutator(&a, &b));
    membership_outcome(&target, &builtin_variety("flex")?, config)
}

pub(super) fn lemma2(params: &Params, config: &Config) -> Result<Outcome> {
    let m = ranged(params, "m", 2, 7)?;
    let f = fm(m)?;
    let mut assignment: HashMap<VarId, MultiPoly> = HashMap::new();
    assignment.insert(VarId::of(1), x(1).multiply(&x(1)));
    assignment.insert(VarId::of(2), x(1));
    for k in 3..=m as u32 {
        assignment.insert(VarId::of(k), x(k - 1));
    }
    let target = f.substitute(&assignment)?;
    membership_outcome(&target, &builtin_variety("flex")?, config)
}

pub(super) fn eq4(params: &Params, config: &Config) -> Result<Outcome> {
    let k = ranged(params, "k", 1, 5)?;
    let f = fm(k + 1)?;
    let (a, b, c) = (x(1), x(2), x(3));
    // f(first, x4, .., x_{k+2}, last)
    let eval = |first: MultiPoly, last: MultiPoly| -> Result<MultiPoly> {
        let mut s: HashMap<VarId, MultiPoly> = HashMap::new();
        s.insert(VarId::of(1), first);
        for i in 2..=k as u32 {
            s.insert(VarId::of(i), x(i + 2));
        }
        s.insert(VarId::of(k as u32 + 1), last);
        f.substitute(&s)
    };
    let target = eval(jordan(&a, &b), c.clone())? - eval(a.clone(), jordan(&c, &b))? - eval(b, jordan(&c, &a))?;
    membership_outcome(&target, &builtin_variety("flex")?, config)
}

pub(super) fn fm_nonzero(params: &Params, config: &Config) -> Result<Outcome> {
    let m = ranged(params, "m", 2, 7)?;
    let mut out = membership_outcome(&fm(m)?, &builtin_variety("alt")?, config)?;
    out.pass = !out.pass && out.details["member"] == json!(false);
    out.certificates.clear();
    Ok(out)
}

/// The alternate of every bracketing shape of degree `d`, as skew-symmetrized
/// one-variable words.
fn shape_alternates(d: usize) -> Result<Vec<(MagmaWord, MultiPoly)>> {
    enumerate_words(&Multidegree::from_exponents(&[d as u32]))
        .into_iter()
        .map(|w| {
            let u = OneVarElement::new(MultiPoly::from_word(w.clone()))?;
            Ok((w, skew(&u)))
        })
        .collect()
}

pub(super) fn skew_dim(params: &Params, config: &Config) -> Result<Outcome> {
    let d = ranged(params, "d", 1, 12)?;
    let alt = builtin_variety("alt")?;
    let mut space = ComponentSpace::build_with(
        &alt,
        &Multidegree::multilinear(d),
        config,
        BuildOptions::default(),
    )?;
    let base_rank = space.rank();
    let shapes = shape_alternates(d)?;
    for (w, a) in &shapes {
        space.insert_extra(w.to_string(), a)?;
    }
    let dim = space.rank() - base_rank;
    let expected = basea_count(d);
    Ok(Outcome {
        pass: dim == expected,
        details: json!({
            "dimension": dim,
            "expected": expected,
            "shapes": shapes.len(),
            "ambient": space.ambient_dimension(),
            "ideal_rank": base_rank,
        }),
        certificates: Vec::new(),
    })
}

/// The words of degree `1..=bound` in `x1, x2` of the free associative algebra.
fn two_letter_words(bound: usize) -> Vec<Vec<VarId>> {
    let mut out: Vec<Vec<VarId>> = Vec::new();
    let mut layer: Vec<Vec<VarId>> = vec![Vec::new()];
    for _ in 0..bound {
        layer = layer
            .iter()
            .flat_map(|w| {
                [1, 2].map(|i| {
                    let mut w = w.clone();
                    w.push(VarId::of(i));
                    w
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Evaluates an associative polynomial at `x_i -> words[i-1]`.
fn evaluate_associative(
    p: &BTreeMap<Vec<VarId>, Coefficient>,
    words: &[&Vec<VarId>],
) -> BTreeMap<Vec<VarId>, Coefficient> {
    let mut out: BTreeMap<Vec<VarId>, Coefficient> = BTreeMap::new();
    for (mono, c) in p {
        let w: Vec<VarId> = mono
            .iter()
            .flat_map(|v| words[v.index() as usize - 1].iter().copied())
            .collect();
        *out.entry(w).or_insert_with(Coefficient::zero) += c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

/// All `k`-subsets of `0..n` in lexicographic order.
fn all_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// `f_m` on `m`-subsets of two-letter associative words: exhaustive when
/// there are at most `samples` subsets, otherwise `samples` seeded draws.
fn two_generated_evaluation(params: &Params, config: &Config) -> Result<(bool, serde_json::Value)> {
    let m = ranged(params, "m", 2, 8)?;
    let bound = ranged(params, "degree_bound", 1, 6)?;
    let samples = param(params, "samples") as usize;
    let words = two_letter_words(bound);
    let projection = fm(m)?.associative_projection();
    let total = binomial(words.len(), m);
    let exhaustive = total <= samples as u128;
    let subsets: Vec<Vec<usize>> = if exhaustive {
        all_subsets(words.len(), m)
    } else {
        let mut rng = StdRng::seed_from_u64(config.random_seed);
        (0..samples)
            .map(|_| {
                let mut s = sample(&mut rng, words.len(), m).into_vec();
                s.sort_unstable();
                s
            })
            .collect()
    };
    let mut nonzero = Vec::new();
    for s in &subsets {
        let chosen: Vec<&Vec<VarId>> = s.iter().map(|&i| &words[i]).collect();
        if !evaluate_associative(&projection, &chosen).is_empty() {
            nonzero.push(s.clone());
        }
    }
    let details = json!({
        "words": words.len(),
        "subsets_total": total.to_string(),
        "subsets_checked": subsets.len(),
        "exhaustive": exhaustive,
        "seed": if exhaustive { None } else { Some(config.random_seed) },
        "associative_projection_terms": projection.len(),
        "nonvanishing_subsets": nonzero.len(),
    });
    Ok((nonzero.is_empty(), details))
}

pub(super) fn cor2_assoc(params: &Params, config: &Config) -> Result<Outcome> {
    let (vanishes, details) = two_generated_evaluation(params, config)?;
    Ok(Outcome {
        pass: vanishes,
        details,
        certificates: Vec::new(),
    })
}

/// Reported, never failed: the outcome is recorded under `vanishes`.
pub(super) fn cor2_assoc_probe(params: &Params, config: &Config) -> Result<Outcome> {
    let (vanishes, mut details) = two_generated_evaluation(params, config)?;
    details["vanishes"] = json!(vanishes);
    Ok(Outcome {
        pass: true,
        details,
        certificates: Vec::new(),
    })
}

pub(super) fn assoc_projection(params: &Params, _config: &Config) -> Result<Outcome> {
    let d = ranged(params, "d", 3, 12)?;
    let sd = ranged(params, "skew_degree", 1, 8)?;
    let mut bracket_failures = Vec::new();
    for k in 3..=d {
        if !bracket_power(k)?.poly().associative_projection().is_empty() {
            bracket_failures.push(k);
        }
    }
    let mut power_failures = Vec::new();
    let mut power_checked = Vec::new();
    for m in 0..=sd / 2 {
        for sigma in 0..=1u8 {
            let n = 2 * m + sigma as usize;
            if n == 0 || n > sd {
                continue;
            }
            let desc = BaseDescriptor {
                family: BaseFamily::Power,
                m,
                sigma,
                k: 0,
                epsilon: 0,
            };
            let projected = base_element(&desc)?.skew().associative_projection();
            let two_m = Coefficient::from_integer((1u64 << m).into());
            let mut expected = standard_polynomial(n);
            for c in expected.values_mut() {
                *c *= &two_m;
            }
            power_checked.push(desc.to_string());
            if projected != expected {
                power_failures.push(desc.to_string());
            }
        }
    }
    Ok(Outcome {
        pass: bracket_failures.is_empty() && power_failures.is_empty(),
        details: json!({
            "bracket_degrees": format!("3..={d}"),
            "bracket_nonzero": bracket_failures,
            "power_elements": power_checked,
            "power_mismatches": power_failures,
        }),
        certificates: Vec::new(),
    })
}

pub(super) fn lemma3(params: &Params, config: &Config) -> Result<Outcome> {
    let m = ranged(params, "m", 2, 7)?;
    match solve_skew_decomposition(m, config)? {
        DecompositionOutcome::NoSolution { witness } => Ok(Outcome {
            pass: false,
            details: json!({ "solved": false, "witness": witness.to_string() }),
            certificates: Vec::new(),
        }),
        DecompositionOutcome::Solved(dec) => {
            let rechecked = recheck_certificate(&dec.certificate, &builtin_variety("alt")?)?;
            Ok(Outcome {
                pass: !dec.alpha.is_zero() && rechecked,
                details: json!({
                    "solved": true,
                    "alpha": fmt_q(&dec.alpha),
                    "beta": dec.beta.as_ref().map(fmt_q),
                    "ambient": dec.ambient,
                    "rank": dec.rank,
                    "residual_terms": dec.residual.len(),
                    "certificate_terms": dec.certificate.generators.len(),
                    "certificate_rechecked": rechecked,
                }),
                certificates: vec![dec.certificate],
            })
        }
    }
}

pub(super) fn cor4_tiny(params: &Params, _config: &Config) -> Result<Outcome> {
    let k = ranged(params, "k", 1, 7)?;
    let max_power = ranged(params, "max_power", 1, 6)?;
    let s = bracket_power(k)?.skew();
    // In the commutative ring a monomial evaluates to x^(sum of the exponents
    // of its leaves); collect by that total.
    let mut tuples = 0usize;
    let mut nonzero = Vec::new();
    let mut exps = vec![1usize; k];
    loop {
        tuples += 1;
        let mut value: BTreeMap<usize, Coefficient> = BTreeMap::new();
        for (w, c) in s.terms() {
            let deg: usize = w.leaves().map(|v| exps[v.index() as usize - 1]).sum();
            *value.entry(deg).or_insert_with(Coefficient::zero) += c;
        }
        if value.values().any(|c| !c.is_zero()) {
            nonzero.push(exps.clone());
        }
        let Some(i) = (0..k).rev().find(|&i| exps[i] < max_power) else {
            break;
        };
        exps[i] += 1;
        for e in exps.iter_mut().skip(i + 1) {
            *e = 1;
        }
    }
    Ok(Outcome {
        pass: nonzero.is_empty(),
        details: json!({
            "skew_terms": s.len(),
            "substitutions": tuples,
            "nonvanishing": nonzero,
        }),
        certificates: Vec::new(),
    })
}

/// `sum_{i<j} (-1)^(i+j) [f_{m-2}(x1, .., ^xi, .., ^xj, .., xm), [xi, xj]]`.
fn bracket_sum(m: usize) -> Result<MultiPoly> {
    let inner = fm(m - 2)?;
    let mut out = MultiPoly::zero();
    for i in 1..=m as u32 {
        for j in i + 1..=m as u32 {
            let rest: Vec<u32> = (1..=m as u32).filter(|&k| k != i && k != j).collect();
            let f = inner.rename(|v| VarId::of(rest[v.index() as usize - 1]));
            let term = commutator(&f, &commutator(&x(i), &x(j)));
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            out.add_scaled(&term, &Coefficient::from_integer(sign.into()));
        }
    }
    Ok(out)
}

pub(super) fn skew_bracket_relation(params: &Params, config: &Config) -> Result<Outcome> {
    let m = ranged(params, "m", 3, 7)?;
    let alt = builtin_variety("alt")?;
    let target = bracket_power(m)?.skew();
    let f = fm(m)?;
    let r = bracket_sum(m)?;
    let mut space = ComponentSpace::build(&alt, &Multidegree::multilinear(m), config)?;
    space.insert_extra("f_m", &f)?;
    space.insert_extra("bracket_sum", &r)?;
    let terms = match space.express(&target)? {
        Expressed::NonMember { witness } => {
            return Ok(Outcome {
                pass: false,
                details: json!({ "solved": false, "witness": witness.to_string() }),
                certificates: Vec::new(),
            })
        }
        Expressed::Member(terms) => terms,
    };
    let (mut lambda, mut nu) = (Coefficient::zero(), Coefficient::zero());
    for (source, c) in terms {
        if let Source::Extra(label) = source {
            if label == "f_m" {
                lambda = c;
            } else {
                nu = c;
            }
        }
    }
    let mut residual = target;
    residual.add_scaled(&f, &-lambda.clone());
    residual.add_scaled(&r, &-nu.clone());
    let cert = space
        .certificate(&residual)?
        .ok_or_else(|| Error::InvalidParameters("residual outside the generator span".into()))?;
    let rechecked = recheck_certificate(&cert, &alt)?;
    Ok(Outcome {
        pass: !lambda.is_zero() && rechecked,
        details: json!({
            "solved": true,
            "lambda": fmt_q(&lambda),
            "nu": fmt_q(&nu),
            "bracket_sum_in_ideal": space.contains(&r)?,
            "ambient": space.ambient_dimension(),
            "certificate_terms": cert.generators.len(),
            "certificate_rechecked": rechecked,
        }),
        certificates: vec![cert],
    })
}

pub(super) fn assoc_dim(params: &Params, config: &Config) -> Result<Outcome> {
    let n = ranged(params, "n", 1, 7)?;
    let dim = component_dimension(&builtin_variety("assoc")?, &Multidegree::multilinear(n), config)?;
    let expected: usize = (1..=n).product();
    Ok(Outcome {
        pass: dim == expected,
        details: json!({ "dimension": dim, "expected": expected }),
        certificates: Vec::new(),
    })
}
