//! Named, reproducible checks with structured reports.
//!
//! Each check is registered with a parameter schema (name and default value)
//! and a runner. [`verify`] times the runner, maps resource exhaustion to its
//! own verdict, and writes certificates when a directory is configured.

mod checks;

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::variety::MembershipCertificate;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    ResourceLimit,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::ResourceLimit => "resource_limit",
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub check: String,
    pub params: BTreeMap<String, u64>,
    pub verdict: Verdict,
    pub details: Value,
    /// Paths of certificate files written for this report.
    pub certificates: Vec<String>,
    pub elapsed_ms: u128,
    /// The certificates themselves, whether or not they were written.
    #[serde(skip)]
    pub certificate_payloads: Vec<MembershipCertificate>,
}

impl Report {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    /// `check(params): verdict` plus a compact detail line.
    pub fn summary(&self) -> String {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!(
            "{}({}): {} [{} ms] {}",
            self.check,
            params.join(", "),
            self.verdict,
            self.elapsed_ms,
            self.details
        )
    }
}

/// Outcome of a runner before timing and certificate handling.
pub(crate) struct Outcome {
    pub pass: bool,
    pub details: Value,
    pub certificates: Vec<MembershipCertificate>,
}

type Runner = fn(&BTreeMap<String, u64>, &Config) -> Result<Outcome>;

/// A registered check: its name, parameters with defaults, and what it checks.
pub struct CheckSpec {
    pub name: &'static str,
    pub params: &'static [(&'static str, u64)],
    pub summary: &'static str,
    runner: Runner,
}

pub const REGISTRY: &[CheckSpec] = &[
    CheckSpec {
        name: "lemma1",
        params: &[("m", 5)],
        summary: "f_m vanishes when any two arguments coincide (free magma algebra)",
        runner: checks::lemma1,
    },
    CheckSpec {
        name: "eq1",
        params: &[],
        summary: "[x^2, y] - x o [x, y] lies in the flexible T-ideal",
        runner: checks::eq1,
    },
    CheckSpec {
        name: "lemma2",
        params: &[("m", 4)],
        summary: "f_m(x^2, x, x1, ..) lies in the flexible T-ideal",
        runner: checks::lemma2,
    },
    CheckSpec {
        name: "eq4",
        params: &[("k", 2)],
        summary: "f(x o y, .., z) - f(x, .., z o y) - f(y, .., z o x) lies in the flexible T-ideal",
        runner: checks::eq4,
    },
    CheckSpec {
        name: "fm_nonzero",
        params: &[("m", 3)],
        summary: "f_m is not in the alternative T-ideal",
        runner: checks::fm_nonzero,
    },
    CheckSpec {
        name: "skew_dim",
        params: &[("d", 4)],
        summary: "skew-symmetric part of the free alternative algebra has the size of the base catalogue",
        runner: checks::skew_dim,
    },
    CheckSpec {
        name: "cor2_assoc",
        params: &[("m", 6), ("degree_bound", 2), ("samples", 100)],
        summary: "f_m vanishes on distinct associative words in two letters",
        runner: checks::cor2_assoc,
    },
    CheckSpec {
        name: "cor2_assoc_probe",
        params: &[("m", 5), ("degree_bound", 3), ("samples", 100)],
        summary: "exploratory: does f_m vanish on associative words in two letters (reported, not asserted)",
        runner: checks::cor2_assoc_probe,
    },
    CheckSpec {
        name: "assoc_projection",
        params: &[("d", 9), ("skew_degree", 5)],
        summary: "x^[k] projects to 0 and Skew(t^m x^s) to 2^m S_(2m+s) in the associative algebra",
        runner: checks::assoc_projection,
    },
    CheckSpec {
        name: "lemma3",
        params: &[("m", 4)],
        summary: "f_m = Skew(alpha x^[m] + beta z^[m-2]) modulo the alternative T-ideal, alpha != 0",
        runner: checks::lemma3,
    },
    CheckSpec {
        name: "cor4_tiny",
        params: &[("k", 4), ("max_power", 3)],
        summary: "Skew x^[k] vanishes on powers of one variable in the commutative ring",
        runner: checks::cor4_tiny,
    },
    CheckSpec {
        name: "skew_bracket_relation",
        params: &[("m", 4)],
        summary: "Skew x^[m] = lambda f_m + nu sum +-[f_(m-2)(..), [xi, xj]] modulo the alternative T-ideal, lambda != 0",
        runner: checks::skew_bracket_relation,
    },
    CheckSpec {
        name: "assoc_dim",
        params: &[("n", 4)],
        summary: "the multilinear degree-n component of the free associative algebra has dimension n!",
        runner: checks::assoc_dim,
    },
];

pub fn find_check(name: &str) -> Option<&'static CheckSpec> {
    REGISTRY.iter().find(|c| c.name == name)
}

/// Fills defaults and rejects parameters the check does not take.
pub fn resolve_params(
    spec: &CheckSpec,
    given: &BTreeMap<String, u64>,
) -> Result<BTreeMap<String, u64>> {
    for key in given.keys() {
        if !spec.params.iter().any(|(k, _)| k == key) {
            return Err(Error::InvalidParameters(format!(
                "check {} takes no parameter {key:?}",
                spec.name
            )));
        }
    }
    Ok(spec
        .params
        .iter()
        .map(|(k, d)| (k.to_string(), given.get(*k).copied().unwrap_or(*d)))
        .collect())
}

/// Runs one check. Resource exhaustion becomes [`Verdict::ResourceLimit`];
/// other errors (bad parameters, IO) are returned.
pub fn verify(name: &str, given: &BTreeMap<String, u64>, config: &Config) -> Result<Report> {
    let spec = find_check(name).ok_or_else(|| Error::InvalidParameters(format!("unknown check {name:?}")))?;
    let params = resolve_params(spec, given)?;
    let start = Instant::now();
    let outcome = (spec.runner)(&params, config);
    let elapsed_ms = start.elapsed().as_millis();
    let (verdict, details, payloads) = match outcome {
        Ok(o) => (
            if o.pass { Verdict::Pass } else { Verdict::Fail },
            o.details,
            o.certificates,
        ),
        Err(e @ Error::ResourceLimit { .. }) => (
            Verdict::ResourceLimit,
            serde_json::json!({ "error": e.to_string() }),
            Vec::new(),
        ),
        Err(e) => return Err(e),
    };
    let mut certificates = Vec::new();
    if let Some(dir) = &config.certificate_directory {
        std::fs::create_dir_all(dir)?;
        let tag: Vec<String> = params.iter().map(|(k, v)| format!("{k}{v}")).collect();
        for (i, cert) in payloads.iter().enumerate() {
            let path = dir.join(format!("{}_{}_{}.json", name, tag.join("_"), i));
            cert.write(&path)?;
            certificates.push(path.display().to_string());
        }
    }
    Ok(Report {
        check: name.to_string(),
        params,
        verdict,
        details,
        certificates,
        elapsed_ms,
        certificate_payloads: payloads,
    })
}

/// The desk-scale suite: every check instance that must pass.
pub fn desk_suite() -> Vec<(&'static str, BTreeMap<String, u64>)> {
    let p = |pairs: &[(&str, u64)]| -> BTreeMap<String, u64> {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    };
    let mut out = Vec::new();
    for m in 3..=7 {
        out.push(("lemma1", p(&[("m", m)])));
    }
    out.push(("eq1", p(&[])));
    for m in 3..=5 {
        out.push(("lemma2", p(&[("m", m)])));
    }
    for k in 2..=3 {
        out.push(("eq4", p(&[("k", k)])));
    }
    for m in 3..=5 {
        out.push(("fm_nonzero", p(&[("m", m)])));
    }
    for d in 1..=5 {
        out.push(("skew_dim", p(&[("d", d)])));
    }
    out.push(("cor2_assoc", p(&[("m", 6), ("degree_bound", 2), ("samples", 100)])));
    out.push(("cor2_assoc", p(&[("m", 6), ("degree_bound", 3), ("samples", 100)])));
    out.push(("assoc_projection", p(&[("d", 9), ("skew_degree", 5)])));
    for m in 4..=5 {
        out.push(("lemma3", p(&[("m", m)])));
    }
    out.push(("cor4_tiny", p(&[])));
    for m in 4..=5 {
        out.push(("skew_bracket_relation", p(&[("m", m)])));
    }
    for n in 1..=5 {
        out.push(("assoc_dim", p(&[("n", n)])));
    }
    out
}

/// Runs [`desk_suite`] in order.
pub fn run_desk_suite(config: &Config) -> Result<Vec<Report>> {
    desk_suite()
        .into_iter()
        .map(|(name, params)| verify(name, &params, config))
        .collect()
}
