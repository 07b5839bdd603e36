use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use thom_cli::{evaluate, parse_expr, report, ParseError, RingDecl};
use thom_core::chern::{a1_thom, expand_product_schur, stable_expand, verify_a1_identity, BundleRing, Variance};
use thom_core::grassmannian::{giambelli, integrate, schubert_multiply, GrassmannClass, GrassmannRing};
use thom_core::symmetric::lr_coefficients;
use thom_core::thom::{binomial_det, check_positivity, corank_thom};
use thom_core::Partition;

#[derive(Parser)]
#[command(name = "thom", version, about = "Schur expansions of Chern-class polynomials and Thom polynomials")]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Also write the JSON report to this file.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expand a polynomial in products of Schur classes, one per bundle.
    Expand {
        /// Bundles as `name:rank` pairs, e.g. "E:2,F:3".
        #[arg(long)]
        ring: String,
        #[arg(long)]
        expr: String,
        /// Bundles to expand in Schur classes of their duals.
        #[arg(long, value_delimiter = ',')]
        dual: Vec<String>,
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Expand a stable polynomial in Schur classes of `E~ - F~`.
    StableExpand {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        expr: String,
        /// Defaults to the first declared bundle.
        #[arg(long)]
        e: Option<String>,
        /// Defaults to the second declared bundle.
        #[arg(long)]
        f: Option<String>,
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Littlewood-Richardson coefficients of a product of two Schur functions.
    Lr {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Evaluate the Giambelli determinant in the Grassmannian with an `m x n` box.
    Giambelli {
        #[arg(long)]
        partition: String,
        /// Box rows: the subspace dimension.
        #[arg(long)]
        m: u32,
        /// Box columns: the quotient rank.
        #[arg(long)]
        n: u32,
    },
    /// Intersection number of two Schubert classes on a product of Grassmannians.
    Pair {
        /// Boxes such as "(2,2);(1,3)".
        #[arg(long)]
        boxes: String,
        /// One partition per box, separated by ';'.
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Binomial determinant `d_{I,J}` of size `m`.
    #[command(name = "dIJ")]
    DIj {
        #[arg(long = "I")]
        i: String,
        #[arg(long = "J")]
        j: String,
        #[arg(long)]
        m: usize,
    },
    /// Locus of quadratic forms of corank at least `q` on a rank `m` bundle.
    CorankThom {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        m: u32,
    },
    /// Thom polynomial of the fold singularity from rank `m` to rank `n`.
    A1 {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        /// Check against the Schur-class formula.
        #[arg(long)]
        verify: bool,
    },
}

enum Failure {
    Syntax { code: &'static str, message: String, position: Option<usize> },
    Domain { code: &'static str, message: String },
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        match e.kind {
            thom_cli::ParseErrorKind::SyntaxError => {
                Failure::Syntax { code: e.kind.code(), message: e.message, position: Some(e.position) }
            }
            _ => Failure::Domain { code: e.kind.code(), message: format!("{} (offset {})", e.message, e.position) },
        }
    }
}

impl From<thom_core::Error> for Failure {
    fn from(e: thom_core::Error) -> Self {
        Failure::Domain { code: e.code(), message: e.to_string() }
    }
}

struct Report {
    text: String,
    json: Value,
}

fn partition(s: &str) -> Result<Partition, Failure> {
    s.parse().map_err(|e: thom_core::Error| Failure::Syntax { code: "SyntaxError", message: e.to_string(), position: None })
}

fn partitions(s: &str) -> Result<Vec<Partition>, Failure> {
    s.split(';').map(partition).collect()
}

fn boxes(s: &str) -> Result<Vec<(u32, u32)>, Failure> {
    s.split(';')
        .map(|b| {
            let p: Vec<u32> = b
                .trim()
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|inner| inner.split(',').map(|t| t.trim().parse().ok()).collect::<Option<Vec<u32>>>())
                .filter(|v| v.len() == 2 && v[0] > 0 && v[1] > 0)
                .ok_or_else(|| Failure::Syntax { code: "SyntaxError", message: format!("bad box {b:?}"), position: None })?;
            Ok((p[0], p[1]))
        })
        .collect()
}

fn ring(decl: &str, max_degree: Option<u32>) -> Result<Arc<BundleRing>, Failure> {
    Ok(decl.parse::<RingDecl>()?.with_max_degree(max_degree).build()?)
}

fn run(command: Command) -> Result<Report, Failure> {
    match command {
        Command::Expand { ring: decl, expr, dual, max_degree } => {
            let ring = ring(&decl, max_degree)?;
            let p = evaluate(&parse_expr(&expr, &ring)?, &ring)?;
            let mut variance = vec![Variance::Plain; ring.slots().len()];
            for name in &dual {
                variance[ring.slot_index(name.trim())?] = Variance::Dual;
            }
            let exp = expand_product_schur(&p, &variance)?;
            let rep = check_positivity(&exp);
            Ok(Report { text: format!("{exp}\n{}", report::positivity_line(&rep)), json: report::expansion(&exp, &rep) })
        }
        Command::StableExpand { ring: decl, expr, e, f, max_degree } => {
            let ring = ring(&decl, max_degree)?;
            let p = evaluate(&parse_expr(&expr, &ring)?, &ring)?;
            let name = |given: Option<String>, k: usize| -> Result<String, Failure> {
                given.or_else(|| ring.slots().get(k).map(|s| s.name.clone())).ok_or_else(|| Failure::Domain {
                    code: "Invalid",
                    message: "stable expansion needs two bundles".into(),
                })
            };
            let (e, f) = (name(e, 0)?, name(f, 1)?);
            let st = stable_expand(&p, &e, &f)?;
            Ok(Report { text: st.to_string(), json: report::stable(&ring, &st) })
        }
        Command::Lr { left, right } => {
            let (i, j) = (partition(&left)?, partition(&right)?);
            let lr = lr_coefficients(&i, &j);
            let text: Vec<String> = lr.iter().rev().map(|(k, c)| format!("{k}:{c}")).collect();
            let terms: Vec<Value> = lr.iter().rev().map(|(k, c)| json!({ "partition": k, "coeff": c.to_string() })).collect();
            Ok(Report { text: format!("{{{}}}", text.join(",")), json: json!({ "left": i, "right": j, "coefficients": terms }) })
        }
        Command::Giambelli { partition: p, m, n } => {
            let i = partition(&p)?;
            let ring = GrassmannRing::new(&[(m, n)]);
            let class = giambelli(&i, &ring, 0)?;
            let matches = class == GrassmannClass::basis(&ring, vec![i.clone()])?;
            let text = format!("{class}\ngiambelli determinant {} sigma[{i}] in the {m}x{n} box", if matches { "equals" } else { "differs from" });
            let json = json!({ "partition": i, "box": [m, n], "class": report::grassmann_class(&class), "matches_basis": matches });
            if !matches {
                return Err(Failure::Domain { code: "GiambelliMismatch", message: text });
            }
            Ok(Report { text, json })
        }
        Command::Pair { boxes: b, left, right } => {
            let shapes = boxes(&b)?;
            let (l, r) = (partitions(&left)?, partitions(&right)?);
            let ring = GrassmannRing::new(&shapes);
            let a = GrassmannClass::basis(&ring, l.clone())?;
            let c = GrassmannClass::basis(&ring, r.clone())?;
            let value = integrate(&schubert_multiply(&a, &c)?);
            Ok(Report { text: value.to_string(), json: json!({ "boxes": shapes, "left": l, "right": r, "value": value.to_string() }) })
        }
        Command::DIj { i, j, m } => {
            let (i, j) = (partition(&i)?, partition(&j)?);
            let d = binomial_det(&i, &j, m)?;
            Ok(Report { text: d.to_string(), json: json!({ "I": i, "J": j, "m": m, "d": d.to_string() }) })
        }
        Command::CorankThom { q, m } => {
            let r = corank_thom(q, m)?;
            let rep = check_positivity(&r.expansion);
            let mut json = report::expansion(&r.expansion, &rep);
            let obj = json.as_object_mut().expect("object");
            obj.insert("q".into(), json!(q));
            obj.insert("m".into(), json!(m));
            obj.insert("scale".into(), json!(r.scale.to_string()));
            obj.insert("integral".into(), json!(r.integral));
            let text = format!("{}\nscale: {}\n{}", r.expansion, r.scale, report::positivity_line(&rep));
            Ok(Report { text, json })
        }
        Command::A1 { m, n, verify } => {
            let t = a1_thom(m, n)?;
            let mut json = json!({ "m": m, "n": n, "degree": n - m + 1, "polynomial": t.to_string() });
            let mut text = t.to_string();
            if verify {
                let ok = verify_a1_identity(m, n)?;
                json["verified"] = json!(ok);
                text.push_str(if ok { "\nidentity: verified" } else { "\nidentity: FAILED" });
                if !ok {
                    return Err(Failure::Domain { code: "IdentityFailed", message: text });
                }
            }
            Ok(Report { text, json })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (json_out, out) = (cli.json, cli.out);
    match run(cli.command) {
        Ok(report) => {
            if let Some(path) = &out {
                let body = serde_json::to_string_pretty(&report.json).expect("serializable") + "\n";
                if let Err(e) = std::fs::write(path, body) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(1);
                }
            }
            if json_out {
                println!("{}", serde_json::to_string_pretty(&report.json).expect("serializable"));
            } else {
                println!("{}", report.text);
            }
            ExitCode::SUCCESS
        }
        Err(failure) => {
            let (status, code, message, position) = match failure {
                Failure::Syntax { code, message, position } => (2, code, message, position),
                Failure::Domain { code, message } => (1, code, message, None),
            };
            if json_out {
                let mut err = json!({ "code": code, "message": message });
                if let Some(p) = position {
                    err["position"] = json!(p);
                }
                println!("{}", serde_json::to_string_pretty(&json!({ "error": err })).expect("serializable"));
            } else {
                match position {
                    Some(p) => eprintln!("error[{code}] at offset {p}: {message}"),
                    None => eprintln!("error[{code}]: {message}"),
                }
            }
            ExitCode::from(status)
        }
    }
}
