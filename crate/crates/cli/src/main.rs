use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use altskew::config::OutputFormat;
use altskew::fm::{base_descriptors, fm};
use altskew::magma::{parse_poly, parse_word};
use altskew::symmetrize::{skew, OneVarElement};
use altskew::variety::{
    builtin_variety, component_dimension, is_member, recheck_certificate, MembershipCertificate,
    Variety,
};
use altskew::verification::{run_desk_suite, verify, Report, Verdict, REGISTRY};
use altskew::{Config, Error, MultiPoly, Multidegree};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

#[derive(Parser)]
#[command(name = "altskew", version, about = "Skew-symmetric identities and T-ideal membership in free nonassociative algebras")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, env = "ALTSKEW_FORMAT", default_value = "text")]
    format: Format,
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, env = "ALTSKEW_THREADS", default_value_t = 0)]
    threads: usize,
    /// Largest ambient word space for one component.
    #[arg(long, global = true, env = "ALTSKEW_MAX_AMBIENT")]
    max_ambient: Option<usize>,
    /// Largest number of consequence generators for one component.
    #[arg(long, global = true, env = "ALTSKEW_MAX_GENERATORS")]
    max_generators: Option<usize>,
    /// Directory for certificates written by `verify`.
    #[arg(long, global = true, env = "ALTSKEW_CERT_DIR")]
    cert_dir: Option<PathBuf>,
    /// Seed for sampled checks.
    #[arg(long, global = true, env = "ALTSKEW_SEED")]
    seed: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print f_m.
    Fm {
        #[arg(long)]
        m: usize,
    },
    /// Print the skew-symmetrization of a one-variable word, e.g. `((x1*x1)*x1)`.
    Skew {
        #[arg(long)]
        word: String,
    },
    /// Dimension of one component of a relatively free algebra.
    Dim {
        #[arg(long)]
        variety: Option<String>,
        /// Exponents, e.g. `2,1`.
        #[arg(long)]
        multideg: String,
        /// Extra identities, one polynomial per line.
        #[arg(long)]
        identities: Option<PathBuf>,
    },
    /// Decide T-ideal membership of the polynomial in a file.
    Member {
        #[arg(long)]
        variety: Option<String>,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        identities: Option<PathBuf>,
        /// Write the membership certificate here.
        #[arg(long)]
        certify: Option<PathBuf>,
    },
    /// Number of base elements of the given degree.
    BasisCount {
        #[arg(long)]
        degree: usize,
    },
    /// Re-expand a certificate and compare with its target.
    CheckCert {
        #[arg(long)]
        cert: PathBuf,
        #[arg(long)]
        variety: Option<String>,
        #[arg(long)]
        identities: Option<PathBuf>,
    },
    /// Run a named check, or the whole desk suite.
    Verify(VerifyArgs),
    /// List the registered checks and their parameters.
    Checks,
}

#[derive(Args)]
struct VerifyArgs {
    /// Check name; see `altskew checks`.
    #[arg(required_unless_present = "all_desk")]
    check: Option<String>,
    /// Run every desk-scale check; exits 0 iff all pass.
    #[arg(long, conflicts_with = "check")]
    all_desk: bool,
    #[arg(long)]
    m: Option<u64>,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long)]
    d: Option<u64>,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    degree_bound: Option<u64>,
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long)]
    skew_degree: Option<u64>,
    #[arg(long)]
    max_power: Option<u64>,
}

impl VerifyArgs {
    fn params(&self) -> BTreeMap<String, u64> {
        [
            ("m", self.m),
            ("k", self.k),
            ("d", self.d),
            ("n", self.n),
            ("degree_bound", self.degree_bound),
            ("samples", self.samples),
            ("skew_degree", self.skew_degree),
            ("max_power", self.max_power),
        ]
        .into_iter()
        .filter_map(|(k, v)| v.map(|v| (k.to_string(), v)))
        .collect()
    }
}

fn config(g: &Global) -> Config {
    let mut c = Config::default();
    if let Some(v) = g.max_ambient {
        c.max_ambient_dimension = v;
    }
    if let Some(v) = g.max_generators {
        c.max_generators = v;
    }
    if let Some(v) = g.seed {
        c.random_seed = v;
    }
    c.thread_count = g.threads;
    c.certificate_directory = g.cert_dir.clone();
    c.output_format = match g.format {
        Format::Text => OutputFormat::Text,
        Format::Json => OutputFormat::Json,
    };
    c
}

fn load_variety(name: Option<&str>, identities: Option<&PathBuf>) -> altskew::Result<Variety> {
    match (name, identities) {
        (Some(n), None) => builtin_variety(n),
        (None, Some(path)) => Variety::from_file(path),
        (Some(n), Some(path)) => {
            let base = builtin_variety(n)?;
            let extra = Variety::from_file(path)?;
            Ok(base.extended(format!("{n}+{}", extra.name), extra.identities))
        }
        (None, None) => Err(Error::InvalidParameters(
            "give --variety, --identities, or both".into(),
        )),
    }
}

struct Out {
    json: bool,
}

impl Out {
    fn emit(&self, text: impl std::fmt::Display, value: serde_json::Value) {
        if self.json {
            println!("{value}");
        } else {
            println!("{text}");
        }
    }
}

fn report_exit(reports: &[Report]) -> u8 {
    if reports.iter().any(|r| r.verdict == Verdict::Fail) {
        EXIT_FAIL
    } else if reports.iter().any(|r| r.verdict == Verdict::ResourceLimit) {
        EXIT_RESOURCE
    } else {
        0
    }
}

fn run(cli: Cli) -> altskew::Result<u8> {
    let cfg = config(&cli.global);
    let out = Out {
        json: matches!(cli.global.format, Format::Json),
    };
    match cli.command {
        Command::Fm { m } => {
            let f = fm(m)?;
            out.emit(&f, json!({ "m": m, "terms": f.len(), "poly": f.to_string() }));
            Ok(0)
        }
        Command::Skew { word } => {
            let u = OneVarElement::new(MultiPoly::from_word(parse_word(&word)?))?;
            let s = cfg.install(|| skew(&u));
            out.emit(&s, json!({ "word": word, "degree": u.degree(), "terms": s.len(), "poly": s.to_string() }));
            Ok(0)
        }
        Command::Dim {
            variety,
            multideg,
            identities,
        } => {
            let v = load_variety(variety.as_deref(), identities.as_ref())?;
            let d = Multidegree::parse(&multideg)?;
            let dim = component_dimension(&v, &d, &cfg)?;
            out.emit(
                dim,
                json!({ "variety": v.name, "multidegree": d.to_string(), "dimension": dim }),
            );
            Ok(0)
        }
        Command::Member {
            variety,
            input,
            identities,
            certify,
        } => {
            let v = load_variety(variety.as_deref(), identities.as_ref())?;
            let p = parse_poly(std::fs::read_to_string(&input)?.trim())?;
            let m = is_member(&p, &v, &cfg)?;
            if let (Some(path), Some(cert)) = (&certify, &m.certificate) {
                cert.write(path)?;
            }
            let components: Vec<_> = m
                .components
                .iter()
                .map(|(d, a, r)| json!({ "multidegree": d.to_string(), "ambient": a, "rank": r }))
                .collect();
            let witness = m.witness.as_ref().map(|(d, w)| json!({ "multidegree": d.to_string(), "word": w.to_string() }));
            let text = match &m.witness {
                None => "member".to_string(),
                Some((d, w)) => format!("not a member (component {d}, remainder leads with {w})"),
            };
            out.emit(
                text,
                json!({
                    "variety": v.name,
                    "member": m.member,
                    "components": components,
                    "witness": witness,
                    "certificate": certify.as_ref().filter(|_| m.member).map(|p| p.display().to_string()),
                }),
            );
            Ok(if m.member { 0 } else { EXIT_FAIL })
        }
        Command::BasisCount { degree } => {
            let descs = base_descriptors(degree);
            let names: Vec<String> = descs.iter().map(|d| d.to_string()).collect();
            let text = if names.is_empty() {
                "0".to_string()
            } else {
                format!("{}\n{}", names.len(), names.join("\n"))
            };
            out.emit(text, json!({ "degree": degree, "count": names.len(), "elements": names }));
            Ok(0)
        }
        Command::CheckCert {
            cert,
            variety,
            identities,
        } => {
            let c = MembershipCertificate::read(&cert)?;
            let name = variety.unwrap_or_else(|| c.variety.clone());
            let v = load_variety(Some(&name), identities.as_ref())
                .or_else(|_| load_variety(None, identities.as_ref()))?;
            let ok = recheck_certificate(&c, &v)?;
            out.emit(
                if ok { "valid" } else { "invalid" },
                json!({ "certificate": cert.display().to_string(), "variety": v.name, "valid": ok }),
            );
            Ok(if ok { 0 } else { EXIT_FAIL })
        }
        Command::Checks => {
            for c in REGISTRY {
                let params: Vec<String> = c.params.iter().map(|(k, d)| format!("--{} {d}", k.replace('_', "-"))).collect();
                out.emit(
                    format!("{:<18} {:<40} {}", c.name, params.join(" "), c.summary),
                    json!({ "check": c.name, "params": c.params.iter().map(|(k, d)| (k.to_string(), *d)).collect::<BTreeMap<_, _>>(), "summary": c.summary }),
                );
            }
            Ok(0)
        }
        Command::Verify(args) => {
            let reports = if args.all_desk {
                run_desk_suite(&cfg)?
            } else {
                let name = args.check.as_deref().expect("clap enforces a check name");
                vec![verify(name, &args.params(), &cfg)?]
            };
            for r in &reports {
                out.emit(r.summary(), serde_json::to_value(r)?);
            }
            if args.all_desk && !out.json {
                let passed = reports.iter().filter(|r| r.verdict == Verdict::Pass).count();
                println!("{passed}/{} passed", reports.len());
            }
            Ok(report_exit(&reports))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::ResourceLimit { .. } => EXIT_RESOURCE,
                _ => EXIT_USAGE,
            })
        }
    }
}
