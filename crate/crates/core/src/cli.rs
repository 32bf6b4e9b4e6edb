//! The `icfk` command line.
//!
//! Exit codes: 0 success, 1 a decided negative answer, 2 invalid input.

use std::collections::HashMap;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::complex::{
    deep_errors, homology_type, phi, psi, validate, IotaComplex, ValidationErrors, ValidationLevel,
};
use crate::constructions::{direct_sum, dual, tensor, Variant};
use crate::corpus::CORPUS_TEXT;
use crate::io::{parse_certificate, parse_complex_file, serialize_certificate, serialize_complex, serialize_map, serialize_split};
use crate::localeq::{decide_local_equivalence, LocalEquivCertificate, LocalEquivalence};
use crate::splitting::{split_involution, split_with_solver, stable_witness, SplitError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "icfk", version, about = "Involutive knot Floer complexes over F2[U,U^-1]")]
struct Cli {
    /// Emit a JSON report instead of the text summary.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Inputs {
    /// Complex files (.icx). Without any, the bundled corpus is used.
    files: Vec<PathBuf>,
    /// Write the produced artifact here instead of stdout.
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct Pair {
    #[arg(long)]
    left: String,
    #[arg(long)]
    right: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate every complex (or one) in the inputs.
    Validate {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        complex: Option<String>,
        /// Also check homology and the involution-square axiom.
        #[arg(long)]
        deep: bool,
    },
    /// Homology type of a complex.
    Homology {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        complex: String,
    },
    /// The formal derivatives of the differential.
    Derive {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        complex: String,
    },
    /// Product of two complexes.
    Tensor {
        #[command(flatten)]
        inputs: Inputs,
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
        variant: u8,
    },
    /// The dual complex.
    Dual {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        complex: String,
    },
    /// Direct sum of two complexes.
    Sum {
        #[command(flatten)]
        inputs: Inputs,
        #[command(flatten)]
        pair: Pair,
    },
    /// Decide local equivalence, with a certificate or a refutation.
    Localeq {
        #[command(flatten)]
        inputs: Inputs,
        #[command(flatten)]
        pair: Pair,
    },
    /// Split a locally trivial complex into the unit plus an acyclic summand.
    Split {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        complex: String,
        /// Certificate relating the complex to the unknot; solved for when absent.
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Stabilize two locally equivalent complexes by acyclic summands.
    Stable {
        #[command(flatten)]
        inputs: Inputs,
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
        variant: u8,
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Deep validation of one complex.
    Selfcheck {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        complex: String,
    },
}

struct Failure {
    code: i32,
    message: String,
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_INVALID, message: message.into() }
}

struct Report {
    result: Value,
    certificates: Vec<Value>,
    text: String,
    artifact: Option<String>,
    code: i32,
}

impl Report {
    fn ok(result: Value, text: String) -> Self {
        Self { result, certificates: Vec::new(), text, artifact: None, code: EXIT_OK }
    }
}

/// Named complexes from the inputs, resolved lazily with constructions.
struct Env {
    complexes: Vec<Arc<IotaComplex>>,
    by_name: HashMap<String, Arc<IotaComplex>>,
}

impl Env {
    fn load(files: &[PathBuf]) -> Result<(Env, Vec<String>), Failure> {
        let mut texts = Vec::new();
        let mut inputs = Vec::new();
        if files.is_empty() {
            texts.push(("corpus".to_string(), CORPUS_TEXT.to_string()));
            inputs.push("corpus".to_string());
        }
        for f in files {
            let text = std::fs::read_to_string(f).map_err(|e| invalid(format!("IoError: {}: {e}", f.display())))?;
            texts.push((f.display().to_string(), text));
            inputs.push(f.display().to_string());
        }
        let mut complexes = Vec::new();
        for (label, text) in texts {
            let raws = parse_complex_file(&text).map_err(|e| invalid(format!("{label}: {e}")))?;
            for raw in raws {
                let c = validate(&raw, ValidationLevel::Structural)
                    .map_err(|e| invalid(format!("{label}: complex {}: {e}", raw.name)))?;
                complexes.push(c);
            }
        }
        let by_name = complexes.iter().map(|c| (c.name().to_string(), c.clone())).collect();
        Ok((Env { complexes, by_name }, inputs))
    }

    /// `NAME`, `dual(X)`, `tensor1(X,Y)`, `tensor2(X,Y)` or `sum(X,Y)`.
    fn resolve(&self, expr: &str) -> Result<Arc<IotaComplex>, Failure> {
        let expr = expr.trim();
        if let Some(c) = self.by_name.get(expr) {
            return Ok(c.clone());
        }
        let Some(open) = expr.find('(') else {
            return Err(invalid(format!("UnknownComplex: {expr}")));
        };
        if !expr.ends_with(')') {
            return Err(invalid(format!("SyntaxError: malformed expression {expr}")));
        }
        let (head, args) = (&expr[..open], split_args(&expr[open + 1..expr.len() - 1]));
        let built = match (head, args.as_slice()) {
            ("dual", [x]) => dual(&self.resolve(x)?).map_err(validation)?,
            ("sum", [x, y]) => direct_sum(&self.resolve(x)?, &self.resolve(y)?).map_err(validation)?,
            ("tensor1" | "tensor2", [x, y]) => {
                let v = if head == "tensor1" { Variant::One } else { Variant::Two };
                tensor(&self.resolve(x)?, &self.resolve(y)?, v).map_err(validation)?
            }
            _ => return Err(invalid(format!("SyntaxError: unknown expression {expr}"))),
        };
        Ok(built)
    }
}

fn validation(e: ValidationErrors) -> Failure {
    invalid(e.to_string())
}

fn split_args(s: &str) -> Vec<&str> {
    let mut depth = 0usize;
    let mut start = 0;
    let mut out = Vec::new();
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out
}

fn load_certificate(path: &PathBuf) -> Result<LocalEquivCertificate, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| invalid(format!("IoError: {}: {e}", path.display())))?;
    parse_certificate(&text).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn certificate_json(cert: &LocalEquivCertificate) -> Value {
    json!({
        "left": cert.left.name(),
        "right": cert.right.name(),
        "checked": cert.check().is_ok(),
        "text": serialize_certificate(cert),
    })
}

fn homology_json(c: &IotaComplex) -> Value {
    let h = homology_type(c);
    json!({"complex": c.name(), "type": h.tag, "even": h.even, "odd": h.odd})
}

fn split_error(e: SplitError) -> Failure {
    match e {
        SplitError::NotLocallyTrivial(_) => Failure { code: EXIT_NEGATIVE, message: e.to_string() },
        other => invalid(other.to_string()),
    }
}

fn execute(command: &Command, env: &Env) -> Result<Report, Failure> {
    match command {
        Command::Validate { complex, deep, .. } => {
            let targets = match complex {
                Some(name) => vec![env.resolve(name)?],
                None => env.complexes.clone(),
            };
            let results: Vec<(String, Vec<String>)> = std::thread::scope(|s| {
                let handles: Vec<_> = targets
                    .iter()
                    .map(|c| {
                        s.spawn(move || {
                            let errs = if *deep { deep_errors(c) } else { Vec::new() };
                            (c.name().to_string(), errs.iter().map(|e| e.to_string()).collect())
                        })
                    })
                    .collect();
                handles.into_iter().map(|h| h.join().expect("validation thread")).collect()
            });
            let mut text = String::new();
            let mut code = EXIT_OK;
            for (name, errs) in &results {
                if errs.is_empty() {
                    text.push_str(&format!("{name}: ok\n"));
                } else {
                    code = EXIT_INVALID;
                    text.push_str(&format!("{name}: invalid\n"));
                    for e in errs {
                        text.push_str(&format!("  {e}\n"));
                    }
                }
            }
            let result = json!(results
                .iter()
                .map(|(n, e)| json!({"complex": n, "valid": e.is_empty(), "errors": e}))
                .collect::<Vec<_>>());
            Ok(Report { code, ..Report::ok(result, text) })
        }
        Command::Homology { complex, .. } => {
            let c = env.resolve(complex)?;
            let h = homology_type(&c);
            Ok(Report::ok(homology_json(&c), format!("{}: {} (even {}, odd {})\n", c.name(), h, h.even, h.odd)))
        }
        Command::Derive { complex, .. } => {
            let c = env.resolve(complex)?;
            let (p, q) = (phi(&c), psi(&c));
            let artifact = format!("{}{}", serialize_map("Phi", &p), serialize_map("Psi", &q));
            let result = json!({"complex": c.name(), "phi": p.named_entries(), "psi": q.named_entries()});
            let text = format!("{}: Phi has {} entries, Psi has {} entries\n", c.name(), p.len(), q.len());
            Ok(Report { artifact: Some(artifact), ..Report::ok(result, text) })
        }
        Command::Tensor { pair, variant, .. } => {
            let v = Variant::from_number(*variant).expect("range-checked");
            let c = tensor(&env.resolve(&pair.left)?, &env.resolve(&pair.right)?, v).map_err(validation)?;
            Ok(complex_report(&c))
        }
        Command::Dual { complex, .. } => Ok(complex_report(&dual(&env.resolve(complex)?).map_err(validation)?)),
        Command::Sum { pair, .. } => Ok(complex_report(
            &direct_sum(&env.resolve(&pair.left)?, &env.resolve(&pair.right)?).map_err(validation)?,
        )),
        Command::Localeq { pair, .. } => {
            let (l, r) = (env.resolve(&pair.left)?, env.resolve(&pair.right)?);
            match decide_local_equivalence(&l, &r) {
                LocalEquivalence::Equivalent(cert) => {
                    let text = format!("{} and {} are locally equivalent (certificate checked)\n", l.name(), r.name());
                    let result = json!({"equivalent": true});
                    Ok(Report {
                        certificates: vec![certificate_json(&cert)],
                        artifact: Some(serialize_certificate(&cert)),
                        ..Report::ok(result, text)
                    })
                }
                LocalEquivalence::NotEquivalent(reasons) => {
                    let mut text = format!("{} and {} are not locally equivalent\n", l.name(), r.name());
                    for r in &reasons {
                        text.push_str(&format!("  {r}\n"));
                    }
                    let result = json!({"equivalent": false, "refutation": reasons});
                    Ok(Report { code: EXIT_NEGATIVE, ..Report::ok(result, text) })
                }
            }
        }
        Command::Split { complex, certificate, .. } => {
            let c = env.resolve(complex)?;
            let (cert, split) = match certificate {
                Some(path) => {
                    let cert = load_certificate(path)?;
                    let split = split_involution(&c, &cert).map_err(split_error)?;
                    (cert, split)
                }
                None => split_with_solver(&c).map_err(split_error)?,
            };
            let a = &split.acyclic_summand;
            let text = format!(
                "{}: unit summand {} plus acyclic summand of {} generators ({})\n",
                c.name(),
                split.unit_summand.generators()[0].name,
                a.len(),
                homology_type(a)
            );
            let result = json!({
                "complex": c.name(),
                "acyclic_generators": a.len(),
                "acyclic_homology": homology_json(a),
                "report": split.report,
            });
            Ok(Report {
                certificates: vec![certificate_json(&cert)],
                artifact: Some(serialize_split(&split)),
                ..Report::ok(result, text)
            })
        }
        Command::Stable { pair, variant, certificate, .. } => {
            let (l, r) = (env.resolve(&pair.left)?, env.resolve(&pair.right)?);
            let v = Variant::from_number(*variant).expect("range-checked");
            let cert = match certificate {
                Some(path) => load_certificate(path)?,
                None => match decide_local_equivalence(&l, &r) {
                    LocalEquivalence::Equivalent(cert) => cert,
                    LocalEquivalence::NotEquivalent(reasons) => {
                        let text = reasons.iter().map(|r| format!("  {r}\n")).collect::<String>();
                        let result = json!({"equivalent": false, "refutation": reasons});
                        return Ok(Report {
                            code: EXIT_NEGATIVE,
                            ..Report::ok(result, format!("{} and {} are not locally equivalent\n{text}", l.name(), r.name()))
                        });
                    }
                },
            };
            let w = stable_witness(&l, &r, &cert, v).map_err(split_error)?;
            let heuristic = w.heuristic.summary();
            let mut certificates = vec![certificate_json(&cert)];
            if let Some(c) = &w.certificate {
                certificates.push(certificate_json(c));
            }
            let result = json!({
                "x1": homology_json(&w.x1),
                "x2": homology_json(&w.x2),
                "homology_matches": w.homology_matches(),
                "x1_generators": w.x1.len(),
                "x2_generators": w.x2.len(),
                "locally_equivalent": w.certificate.is_some(),
                "association": w.association,
                "left_distributes": w.left_distributes,
                "right_distributes": w.right_distributes,
                "homotopy_equivalence_heuristic": heuristic,
            });
            let text = format!(
                "X1 = {} ({} generators), X2 = {} ({} generators)\nhomology {} / {}\nlocal equivalence: {}\nhomotopy equivalence (heuristic, at most {} rounds): {}\n",
                w.x1.name(),
                w.x1.len(),
                w.x2.name(),
                w.x2.len(),
                w.homology_x1,
                w.homology_x2,
                if w.certificate.is_some() { "certified" } else { "refuted" },
                crate::localeq::MAX_HEURISTIC_ROUNDS,
                heuristic.status,
            );
            let mut artifact = format!("{}{}", serialize_complex(&w.x1), serialize_complex(&w.x2));
            if let Some(c) = &w.certificate {
                artifact.push_str(&serialize_certificate(c));
            }
            let code = if w.certificate.is_some() { EXIT_OK } else { EXIT_NEGATIVE };
            Ok(Report { code, certificates, artifact: Some(artifact), ..Report::ok(result, text) })
        }
        Command::Selfcheck { complex, .. } => {
            let c = env.resolve(complex)?;
            let errs = deep_errors(&c);
            let names: Vec<String> = errs.iter().map(|e| e.to_string()).collect();
            let mut text = format!("{}: {}\n", c.name(), if errs.is_empty() { "passes deep validation" } else { "fails deep validation" });
            for e in &names {
                text.push_str(&format!("  {e}\n"));
            }
            let code = if errs.is_empty() { EXIT_OK } else { EXIT_NEGATIVE };
            Ok(Report { code, ..Report::ok(json!({"complex": c.name(), "valid": errs.is_empty(), "errors": names}), text) })
        }
    }
}

fn complex_report(c: &Arc<IotaComplex>) -> Report {
    let h = homology_type(c);
    let text = format!("{}: {} generators, {}\n", c.name(), c.len(), h);
    Report { artifact: Some(serialize_complex(c)), ..Report::ok(homology_json(c), text) }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Homology { .. } => "homology",
        Command::Derive { .. } => "derive",
        Command::Tensor { .. } => "tensor",
        Command::Dual { .. } => "dual",
        Command::Sum { .. } => "sum",
        Command::Localeq { .. } => "localeq",
        Command::Split { .. } => "split",
        Command::Stable { .. } => "stable",
        Command::Selfcheck { .. } => "selfcheck",
    }
}

fn inputs_of(c: &Command) -> &Inputs {
    match c {
        Command::Validate { inputs, .. }
        | Command::Homology { inputs, .. }
        | Command::Derive { inputs, .. }
        | Command::Tensor { inputs, .. }
        | Command::Dual { inputs, .. }
        | Command::Sum { inputs, .. }
        | Command::Localeq { inputs, .. }
        | Command::Split { inputs, .. }
        | Command::Stable { inputs, .. }
        | Command::Selfcheck { inputs, .. } => inputs,
    }
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run_cli(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let started = Instant::now();
    let inputs = inputs_of(&cli.command).clone();
    let outcome = Env::load(&inputs.files).and_then(|(env, names)| {
        let load_ms = started.elapsed().as_secs_f64() * 1e3;
        execute(&cli.command, &env).map(|r| (r, names, load_ms))
    });
    let (report, names, load_ms) = match outcome {
        Ok(v) => v,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            if cli.json {
                let _ = writeln!(
                    out,
                    "{}",
                    json!({"command": command_name(&cli.command), "inputs": [], "result": {"error": f.message}, "certificates": [], "timings": {}})
                );
            }
            return f.code;
        }
    };
    if let (Some(path), Some(artifact)) = (&inputs.output, &report.artifact) {
        if let Err(e) = std::fs::write(path, artifact) {
            let _ = writeln!(err, "error: IoError: {}: {e}", path.display());
            return EXIT_INVALID;
        }
    }
    let total_ms = started.elapsed().as_secs_f64() * 1e3;
    if cli.json {
        let value = json!({
            "command": command_name(&cli.command),
            "inputs": names,
            "result": report.result,
            "certificates": report.certificates,
            "timings": {"load_ms": load_ms, "total_ms": total_ms},
        });
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&value).expect("json"));
    } else {
        let _ = write!(out, "{}", report.text);
        if inputs.output.is_none() {
            if let Some(artifact) = &report.artifact {
                let _ = write!(out, "{artifact}");
            }
        }
    }
    report.code
}
