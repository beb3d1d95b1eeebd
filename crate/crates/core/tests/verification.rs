use std::collections::BTreeMap;

use altskew::magma::{format_rational, parse_rational};
use altskew::variety::{builtin_variety, recheck_certificate, MembershipCertificate};
use altskew::verification::{desk_suite, find_check, verify, Verdict, REGISTRY};
use altskew::{Coefficient, Config, Error};

fn p(pairs: &[(&str, u64)]) -> BTreeMap<String, u64> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

#[test]
fn documented_examples() {
    let cfg = Config::default();
    assert_eq!(verify("lemma1", &p(&[("m", 5)]), &cfg).unwrap().verdict, Verdict::Pass);
    let r = verify("skew_dim", &p(&[("d", 4)]), &cfg).unwrap();
    assert_eq!(r.verdict, Verdict::Pass);
    assert_eq!(r.details["dimension"], 3);
    let r = verify("fm_nonzero", &p(&[("m", 3)]), &cfg).unwrap();
    assert_eq!(r.verdict, Verdict::Pass);
    assert!(r.details["witness"].is_string());
}

#[test]
fn report_json_schema() {
    let r = verify("eq1", &BTreeMap::new(), &Config::default()).unwrap();
    let v: serde_json::Value = serde_json::from_str(&r.to_json().unwrap()).unwrap();
    let mut keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    keys.sort_unstable();
    assert_eq!(keys, ["certificates", "check", "details", "elapsed_ms", "params", "verdict"]);
    assert_eq!(v["verdict"], "pass");
}

#[test]
fn resource_limit_is_its_own_verdict() {
    let cfg = Config {
        max_ambient_dimension: 50,
        ..Config::default()
    };
    let r = verify("fm_nonzero", &p(&[("m", 4)]), &cfg).unwrap();
    assert_eq!(r.verdict, Verdict::ResourceLimit);
    assert!(r.details["error"].as_str().unwrap().contains("ambient"));
    let json = r.to_json().unwrap();
    assert!(json.contains("\"resource_limit\""));
}

#[test]
fn parameter_errors() {
    let cfg = Config::default();
    assert!(matches!(
        verify("lemma1", &p(&[("q", 1)]), &cfg),
        Err(Error::InvalidParameters(_))
    ));
    assert!(matches!(
        verify("nope", &BTreeMap::new(), &cfg),
        Err(Error::InvalidParameters(_))
    ));
    assert!(matches!(
        verify("lemma1", &p(&[("m", 40)]), &cfg),
        Err(Error::InvalidParameters(_))
    ));
}

#[test]
fn registry_covers_the_desk_suite() {
    for (name, params) in desk_suite() {
        let spec = find_check(name).unwrap();
        for key in params.keys() {
            assert!(spec.params.iter().any(|(k, _)| k == key), "{name}: {key}");
        }
    }
    let mut names: Vec<&str> = REGISTRY.iter().map(|c| c.name).collect();
    names.sort_unstable();
    names.dedup();
    assert_eq!(names.len(), REGISTRY.len());
}

#[test]
fn certificates_are_written_and_recheck() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = Config {
        certificate_directory: Some(dir.path().to_path_buf()),
        ..Config::default()
    };
    let r = verify("lemma2", &p(&[("m", 4)]), &cfg).unwrap();
    assert_eq!(r.verdict, Verdict::Pass);
    assert_eq!(r.certificates.len(), 1);
    let cert = MembershipCertificate::read(std::path::Path::new(&r.certificates[0])).unwrap();
    let flex = builtin_variety("flex").unwrap();
    assert!(recheck_certificate(&cert, &flex).unwrap());

    // A tampered coefficient must be caught.
    let mut bad = cert.clone();
    let c = parse_rational(&bad.generators[0].coefficient).unwrap();
    bad.generators[0].coefficient = format_rational(&(c + Coefficient::from_integer(1.into())));
    assert!(!recheck_certificate(&bad, &flex).unwrap());
    // Against the wrong variety the identity names do not resolve.
    let alt = builtin_variety("alt").unwrap();
    assert!(matches!(recheck_certificate(&cert, &alt), Err(Error::UnknownIdentity(_))));
}

#[test]
fn sampled_checks_are_reproducible() {
    let cfg = Config::default();
    let params = p(&[("m", 6), ("degree_bound", 3), ("samples", 30)]);
    let a = verify("cor2_assoc", &params, &cfg).unwrap();
    let b = verify("cor2_assoc", &params, &cfg).unwrap();
    assert_eq!(a.details, b.details);
    assert_eq!(a.details["seed"], cfg.random_seed);
    let probe = verify("cor2_assoc_probe", &BTreeMap::new(), &cfg).unwrap();
    assert_eq!(probe.verdict, Verdict::Pass);
    assert!(probe.details["vanishes"].is_boolean());
}
