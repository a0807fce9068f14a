use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gf2_normal::construct::Status;
use gf2_normal::normal::{corresponding_vector, find_normal, is_normal};
use gf2_normal::oracle::{is_normal_by_rank, Oracle};
use gf2_normal::{
    compose, prescribe_with, prescribe_with_beta, validate_vector, weight3, Error, FieldElem,
    FieldSpec, Poly, Strategy, TraceVector, NO_SUCH_ELEMENT,
};
use serde::Serialize;
use serde_json::{json, Value};

const EXIT_INVALID_VECTOR: u8 = 1;
const EXIT_VERIFY: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "gf2-normal", version, about = "Normal elements of GF(2^n) with prescribed trace vectors")]
struct Cli {
    /// Single-line JSON records instead of tables.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Field definitions.
    #[command(subcommand)]
    Field(FieldCmd),
    /// Find or test normal elements.
    #[command(subcommand)]
    Normal(NormalCmd),
    /// Corresponding vector a_i = Tr(alpha * alpha^(2^i)) of an element.
    Vector {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        element: String,
    },
    /// Normal element with a prescribed corresponding vector.
    Prescribe {
        #[command(flatten)]
        field: FieldArgs,
        /// Comma-separated bits a_0,...,a_(n-1).
        #[arg(long)]
        vector: String,
        /// Random search for the starting normal element.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, hide = true)]
        force_beta: Option<String>,
    },
    /// Product of normal elements from GF(2^(2^s)) and GF(2^m), m odd.
    Compose {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        vector_pow2: String,
        #[arg(long)]
        vector_odd: String,
    },
    /// Normal element whose vector has weight 3 (requires 4 | n).
    Weight3 {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value_t = 1)]
        i0: usize,
    },
    /// Exhaustive checks of the characterization results.
    Audit {
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        modulus: Option<String>,
        #[arg(long, value_enum)]
        mode: AuditMode,
    },
}

#[derive(Subcommand)]
enum FieldCmd {
    /// Smallest irreducible polynomial of the given degree.
    Find {
        #[arg(long)]
        degree: usize,
    },
}

#[derive(Subcommand)]
enum NormalCmd {
    /// A normal element: deterministic scan, or seeded random search.
    Find {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Normality verdict for an element.
    Check {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        element: String,
    },
}

#[derive(Args)]
struct FieldArgs {
    #[arg(long)]
    degree: usize,
    /// Hex (0x1002D) or terms (x^16+x^5+x^3+x^2+1); defaults to the
    /// smallest irreducible polynomial.
    #[arg(long)]
    modulus: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum AuditMode {
    Characterization,
    Factorization,
    Necessary,
    Selfdual,
}

#[derive(Serialize)]
struct Modulus {
    hex: String,
    text: String,
}

#[derive(Serialize)]
struct Construction {
    name: &'static str,
    params: BTreeMap<&'static str, Value>,
}

#[derive(Serialize)]
struct OutputRecord {
    degree: usize,
    modulus: Modulus,
    element: String,
    vector: Vec<u8>,
    normal: bool,
    construction: Construction,
    verified: bool,
}

#[derive(Serialize)]
struct AuditRecord {
    degree: usize,
    mode: &'static str,
    holds: bool,
    summary: String,
    details: Vec<String>,
}

enum Failure {
    Usage(String),
    InvalidVector(String),
    Verify(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidVector(_) => Failure::InvalidVector(e.to_string()),
            Error::Internal(_) | Error::NotInH(_) => Failure::Verify(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Run = Result<(), Failure>;

fn spec_of(degree: usize, modulus: Option<&str>) -> Result<FieldSpec, Failure> {
    match modulus {
        None => Ok(FieldSpec::with_default_modulus(degree)?),
        Some(m) => {
            let poly: Poly = m.parse()?;
            Ok(FieldSpec::new(degree, poly)?)
        }
    }
}

fn field_spec(f: &FieldArgs) -> Result<FieldSpec, Failure> {
    spec_of(f.degree, f.modulus.as_deref())
}

fn modulus_of(p: &Poly) -> Modulus {
    Modulus {
        hex: p.to_hex(),
        text: p.to_string(),
    }
}

fn bits(v: &TraceVector) -> Vec<u8> {
    v.bits().into_iter().map(u8::from).collect()
}

fn join_bits(v: &[u8]) -> String {
    v.iter().map(u8::to_string).collect::<Vec<_>>().join(",")
}

/// Recomputes vector and normality from the element before anything is
/// printed; `expected` must match when given.
fn emit(
    json: bool,
    spec: &FieldSpec,
    element: FieldElem,
    expected: Option<&TraceVector>,
    name: &'static str,
    params: BTreeMap<&'static str, Value>,
) -> Run {
    let vector = corresponding_vector(spec, element);
    let normal = is_normal(spec, element);
    let agrees = normal == is_normal_by_rank(spec, element);
    let verified = agrees && expected.is_none_or(|e| *e == vector);
    let record = OutputRecord {
        degree: spec.n(),
        modulus: modulus_of(spec.modulus()),
        element: element.to_string(),
        vector: bits(&vector),
        normal,
        construction: Construction { name, params },
        verified,
    };
    if json {
        println!("{}", serde_json::to_string(&record).expect("record serializes"));
    } else {
        let params = record
            .construction
            .params
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}={s}"),
                other => format!("{k}={other}"),
            })
            .collect::<Vec<_>>()
            .join(" ");
        let rows = [
            ("degree", record.degree.to_string()),
            ("modulus", format!("{} ({})", record.modulus.hex, record.modulus.text)),
            ("element", record.element.clone()),
            ("vector", join_bits(&record.vector)),
            ("normal", record.normal.to_string()),
            ("construction", format!("{name} {params}").trim_end().to_string()),
            ("verified", record.verified.to_string()),
        ];
        for (k, v) in rows {
            println!("{k:<13}{v}");
        }
    }
    if verified {
        Ok(())
    } else {
        Err(Failure::Verify(format!(
            "recomputed vector {vector} of {element} does not match"
        )))
    }
}

fn parse_vector(s: &str, n: usize) -> Result<TraceVector, Failure> {
    let v = TraceVector::parse(s)?;
    if v.n() != n {
        return Err(Failure::Usage(format!("vector has length {}, expected {n}", v.n())));
    }
    Ok(v)
}

fn check_vector(n: usize, a: &TraceVector) -> Run {
    let verdict = validate_vector(n, a)?;
    if verdict.status == Status::Invalid {
        return Err(Failure::InvalidVector(format!(
            "{NO_SUCH_ELEMENT}: {}",
            verdict.failures().join("; ")
        )));
    }
    Ok(())
}

fn audit(json: bool, degree: usize, modulus: Option<&str>, mode: AuditMode) -> Run {
    let oracle = Oracle::default();
    let (name, holds, summary, details) = match mode {
        AuditMode::Characterization => {
            let spec = spec_of(degree, modulus)?;
            let r = oracle.check_characterization(&spec)?;
            let summary = if r.holds() {
                format!("achievable = predicted, {} vectors", r.achievable)
            } else {
                format!("achievable {} != predicted {}", r.achievable, r.predicted)
            };
            let details = r
                .missing
                .iter()
                .map(|v| format!("missing {v}"))
                .chain(r.unexpected.iter().map(|v| format!("unexpected {v}")))
                .collect();
            ("characterization", r.holds(), summary, details)
        }
        AuditMode::Factorization => {
            let r = oracle.check_factorization(degree)?;
            let mut summary = format!("image of g -> g*g^* has {} elements", r.image_size);
            if let (Some(g), Some(h)) = (r.g_size, r.h_size) {
                summary.push_str(&format!(", |G| = {g}, |H| = {h}"));
            }
            ("factorization", r.holds(), summary, r.violations.clone())
        }
        AuditMode::Necessary => {
            let spec = spec_of(degree, modulus)?;
            let r = oracle.check_necessary(&spec)?;
            let summary = format!(
                "{} normal elements, {} violate the necessary conditions",
                r.normal_elements,
                r.failures.len()
            );
            let details = r
                .failures
                .iter()
                .map(|(e, f)| format!("{e}: {}", f.join("; ")))
                .collect();
            ("necessary", r.holds(), summary, details)
        }
        AuditMode::Selfdual => {
            let r = oracle.check_self_dual_existence(degree)?;
            let exists: Vec<String> = r
                .entries
                .iter()
                .filter(|e| e.exists)
                .map(|e| e.n.to_string())
                .collect();
            let summary = format!("self-dual normal elements exist for n = {}", exists.join(","));
            let details = r
                .entries
                .iter()
                .filter(|e| e.exists != e.predicted)
                .map(|e| format!("n = {}: exists {}, predicted {}", e.n, e.exists, e.predicted))
                .collect();
            ("selfdual", r.holds(), summary, details)
        }
    };
    if json {
        let record = AuditRecord {
            degree,
            mode: name,
            holds,
            summary: summary.clone(),
            details: details.clone(),
        };
        println!("{}", serde_json::to_string(&record).expect("record serializes"));
    } else {
        println!("{:<10}{degree}", "degree");
        println!("{:<10}{name}", "mode");
        println!("{:<10}{}", "result", if holds { "holds" } else { "VIOLATED" });
        println!("{summary}");
        for d in &details {
            println!("  {d}");
        }
    }
    if holds {
        Ok(())
    } else {
        Err(Failure::Verify(format!("{name} audit found violations")))
    }
}

fn run(cli: Cli) -> Run {
    let json = cli.json;
    match cli.command {
        Command::Field(FieldCmd::Find { degree }) => {
            let spec = FieldSpec::with_default_modulus(degree)?;
            let m = modulus_of(spec.modulus());
            if json {
                let record = json!({ "degree": degree, "modulus": m });
                println!("{record}");
            } else {
                println!("{:<9}{degree}", "degree");
                println!("{:<9}{} ({})", "modulus", m.hex, m.text);
            }
            Ok(())
        }
        Command::Normal(NormalCmd::Find { field, seed }) => {
            let spec = field_spec(&field)?;
            let (strategy, params) = match seed {
                Some(s) => (Strategy::Random(s), BTreeMap::from([("seed", json!(s))])),
                None => (Strategy::Scan, BTreeMap::from([("strategy", json!("scan"))])),
            };
            let alpha = find_normal(&spec, strategy);
            emit(json, &spec, alpha, None, "find_normal", params)
        }
        Command::Normal(NormalCmd::Check { field, element }) => {
            let spec = field_spec(&field)?;
            let alpha = spec.parse_elem(&element)?;
            emit(json, &spec, alpha, None, "check", BTreeMap::new())
        }
        Command::Vector { field, element } => {
            let spec = field_spec(&field)?;
            let alpha = spec.parse_elem(&element)?;
            emit(json, &spec, alpha, None, "vector", BTreeMap::new())
        }
        Command::Prescribe {
            field,
            vector,
            seed,
            force_beta,
        } => {
            let spec = field_spec(&field)?;
            let a = parse_vector(&vector, spec.n())?;
            check_vector(spec.n(), &a)?;
            let mut params = BTreeMap::new();
            let p = match force_beta {
                Some(b) => {
                    let beta = spec.parse_elem(&b)?;
                    prescribe_with_beta(&spec, &a, beta)?
                }
                None => {
                    let strategy = seed.map_or(Strategy::Scan, Strategy::Random);
                    if let Some(s) = seed {
                        params.insert("seed", json!(s));
                    }
                    prescribe_with(&spec, &a, strategy)?
                }
            };
            params.insert("beta", json!(p.beta.to_string()));
            params.insert("coefficients", json!(p.coefficients.to_bit_string()));
            emit(json, &spec, p.element, Some(&a), "prescribe", params)
        }
        Command::Compose {
            field,
            vector_pow2,
            vector_odd,
        } => {
            let spec = field_spec(&field)?;
            let a = TraceVector::parse(&vector_pow2)?;
            let b = TraceVector::parse(&vector_odd)?;
            check_vector(a.n(), &a)?;
            check_vector(b.n(), &b)?;
            let c = compose(&spec, &a, &b)?;
            let params = BTreeMap::from([
                ("vector_pow2", json!(a.as_poly().to_bit_string())),
                ("vector_odd", json!(b.as_poly().to_bit_string())),
                ("two_power_part", json!(c.two_power_part.to_string())),
                ("odd_part", json!(c.odd_part.to_string())),
            ]);
            emit(json, &spec, c.element, Some(&c.vector), "compose", params)
        }
        Command::Weight3 { field, i0 } => {
            let spec = field_spec(&field)?;
            let w = weight3(&spec, i0)?;
            let params = BTreeMap::from([
                ("i0", json!(w.i0)),
                ("j0", json!(w.j0)),
                ("two_power", json!(w.two_power)),
                ("odd_part", json!(w.odd_part)),
            ]);
            emit(json, &spec, w.element, Some(&w.vector), "weight3", params)
        }
        Command::Audit {
            degree,
            modulus,
            mode,
        } => audit(json, degree, modulus.as_deref(), mode),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::InvalidVector(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(EXIT_INVALID_VECTOR)
        }
        Err(Failure::Verify(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(EXIT_VERIFY)
        }
    }
}
