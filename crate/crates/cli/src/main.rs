use std::io::{IsTerminal, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use bbk_core::*;
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

/// Homogeneous border bases on infinite order ideals.
///
/// Input is a JSON workspace read from --input or standard input; the
/// --structure, --prebasis and --ideal documents are merged over it in that
/// order. Reports go to standard output as JSON.
#[derive(Parser, Debug)]
#[command(name = "bbk", version)]
struct Cli {
    /// Workspace document; standard input when absent.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Document with a `tie_break` field.
    #[arg(long, global = true)]
    structure: Option<PathBuf>,
    /// Document with `polynomials` and optionally `max_degree` and `coefficient_field`.
    #[arg(long, global = true)]
    prebasis: Option<PathBuf>,
    /// Document with `generators`.
    #[arg(long, global = true)]
    ideal: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Border terms of one degree.
    Border {
        #[arg(long)]
        degree: u32,
    },
    /// Hilbert function values and the Gotzmann bound.
    Hilbert {
        #[arg(long)]
        through: u32,
    },
    /// Index of a term, given as `[3,1]` or `x^3*y`.
    Index {
        #[arg(long)]
        term: String,
    },
    /// Labels of the reduction structure through a degree.
    Structure {
        /// Also list cone owners and multiplicative sets.
        #[arg(long)]
        describe: bool,
        #[arg(long)]
        degree: u32,
    },
    /// Normal form of a polynomial with its reduction trace.
    Reduce {
        #[arg(long)]
        poly: PathBuf,
    },
    /// Formal multiplication matrices from degree d to d+1.
    Matrices {
        #[arg(long)]
        degree: u32,
    },
    /// Commutator of two multiplication matrices.
    Commutator {
        #[arg(long)]
        degree: u32,
        /// Two variables, by name or position.
        #[arg(long, num_args = 2, value_names = ["R", "S"])]
        vars: Vec<String>,
    },
    /// Decides whether the prebasis is a border basis.
    Check,
    /// Conditions on the parameters for the prebasis to be a basis.
    Conditions {
        /// One polynomial per line instead of JSON.
        #[arg(long)]
        lines: bool,
    },
    /// Border basis of the ideal generated by `generators`.
    FromIdeal {
        #[arg(long)]
        through: u32,
    },
    /// Extends a certified basis.
    Extend {
        #[arg(long)]
        to: u32,
    },
}

struct Outcome {
    report: Output,
    code: u8,
}

enum Output {
    Json(Value),
    Lines(Vec<String>),
}

fn ok(v: Value) -> Result<Outcome> {
    Ok(Outcome {
        report: Output::Json(v),
        code: 0,
    })
}

fn read_doc(path: &Path) -> Result<WorkspaceDoc> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    WorkspaceDoc::from_json(&text).with_context(|| format!("in {}", path.display()))
}

fn load(cli: &Cli) -> Result<WorkspaceDoc> {
    let mut doc = match &cli.input {
        Some(p) => read_doc(p)?,
        None => {
            let mut text = String::new();
            let stdin = std::io::stdin();
            if !stdin.is_terminal() {
                stdin
                    .lock()
                    .read_to_string(&mut text)
                    .context("reading standard input")?;
            }
            if text.trim().is_empty() {
                WorkspaceDoc::default()
            } else {
                WorkspaceDoc::from_json(&text).context("in standard input")?
            }
        }
    };
    for p in [&cli.structure, &cli.prebasis, &cli.ideal].into_iter().flatten() {
        doc = doc.merge(read_doc(p)?);
    }
    Ok(doc)
}

fn gotzmann_cap() -> Result<u32> {
    match std::env::var("BBK_GOTZMANN_CAP") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| anyhow!("BBK_GOTZMANN_CAP must be a nonnegative integer, got `{s}`")),
        Err(_) => Ok(DEFAULT_GOTZMANN_CAP),
    }
}

fn term_json(t: &Term, names: &[String]) -> Value {
    json!({ "exponents": t.exponents(), "text": t.display_with(names) })
}

fn terms_json(ts: &[Term], names: &[String]) -> Value {
    Value::Array(ts.iter().map(|t| term_json(t, names)).collect())
}

fn poly_json(p: &Polynomial, names: &[String]) -> Value {
    json!({ "text": p.display_with(names), "terms": PolynomialDoc::from_polynomial(p) })
}

fn matrix_json(m: &ExactMatrix) -> Value {
    Value::Array(
        m.rows()
            .map(|r| Value::Array(r.iter().map(|c| Value::String(c.to_string())).collect()))
            .collect(),
    )
}

fn parse_term(text: &str, names: &[String]) -> Result<Term> {
    if text.trim_start().starts_with('[') {
        let exps: Vec<u32> = serde_json::from_str(text).map_err(|e| anyhow!("bad term `{text}`: {e}"))?;
        if exps.len() != names.len() {
            bail!(
                "term `{text}` has {} exponents for {} variables",
                exps.len(),
                names.len()
            );
        }
        Ok(Term::new(exps)?)
    } else {
        Ok(Term::parse_with(text, names)?)
    }
}

fn parse_var(text: &str, names: &[String]) -> Result<usize> {
    if let Some(i) = names.iter().position(|n| n == text) {
        return Ok(i);
    }
    let i: usize = text.parse().map_err(|_| anyhow!("unknown variable `{text}`"))?;
    if i >= names.len() {
        bail!("variable index {i} out of range for {} variables", names.len());
    }
    Ok(i)
}

fn witness_json(w: &Witness, names: &[String]) -> Value {
    match w {
        Witness::Commutator {
            degree,
            r,
            s,
            row,
            col,
            entry,
        } => json!({
            "kind": "commutator",
            "d": degree,
            "vars": [names[*r], names[*s]],
            "row": row,
            "col": col,
            "entry": entry.to_string(),
        }),
        Witness::Extension {
            head,
            supplied,
            expected,
        } => json!({
            "kind": "extension",
            "head": term_json(head, names),
            "supplied": poly_json(supplied, names),
            "expected": poly_json(expected, names),
        }),
    }
}

fn certificate_json(c: &BasisCertificate, names: &[String]) -> Value {
    json!({
        "verdict": c.verdict.as_str(),
        "t": c.gotzmann_t,
        "checked_d": c.checked,
        "required_degree": c.required_degree,
        "witness": c.witness.as_ref().map(|w| witness_json(w, names)),
    })
}

fn prebasis_doc(base: &WorkspaceDoc, g: &Prebasis) -> Value {
    let out = base.clone().merge(WorkspaceDoc::from_prebasis(g));
    serde_json::to_value(out).expect("documents serialize")
}

fn run(cli: &Cli) -> Result<Outcome> {
    let doc = load(cli)?;
    let o = doc.order_ideal()?;
    let names = o.variables().to_vec();
    match &cli.cmd {
        Cmd::Border { degree } => ok(json!({
            "degree": degree,
            "border": terms_json(&o.border_slice(*degree), &names),
        })),
        Cmd::Hilbert { through } => {
            let h = o.hilbert_series(*through)?;
            let t = o.gotzmann_bound(gotzmann_cap()?)?;
            ok(json!({ "h": h, "t": t }))
        }
        Cmd::Index { term } => {
            let t = parse_term(term, &names)?;
            ok(json!({ "term": term_json(&t, &names), "index": o.index(&t) }))
        }
        Cmd::Structure { describe, degree } => structure(&doc, &o, *describe, *degree),
        Cmd::Reduce { poly } => {
            let g = doc.prebasis(&o)?;
            let s = doc.structure(&o)?;
            let text = std::fs::read_to_string(poly).with_context(|| format!("reading {}", poly.display()))?;
            let f = read_polynomial(&text, &names, g.ring()).with_context(|| format!("in {}", poly.display()))?;
            let tr = g.reduce(&s, &f)?;
            let steps: Vec<Value> = tr
                .steps
                .iter()
                .map(|st| {
                    json!({
                        "coefficient": st.coefficient.to_string(),
                        "multiplier": term_json(&st.multiplier, &names),
                        "head": term_json(&st.head, &names),
                    })
                })
                .collect();
            ok(json!({ "normal_form": poly_json(&tr.result, &names), "steps": steps }))
        }
        Cmd::Matrices { degree } => {
            let g = doc.prebasis(&o)?;
            let m = build_matrices(&g, *degree)?;
            let mats: serde_json::Map<String, Value> =
                names.iter().cloned().zip(m.matrices.iter().map(matrix_json)).collect();
            ok(json!({
                "degree": degree,
                "columns": terms_json(&m.columns, &names),
                "rows": terms_json(&m.rows, &names),
                "matrices": mats,
            }))
        }
        Cmd::Commutator { degree, vars } => {
            let g = doc.prebasis(&o)?;
            let r = parse_var(&vars[0], &names)?;
            let s = parse_var(&vars[1], &names)?;
            let c = commutator(&g, *degree, r, s)?;
            ok(json!({
                "degree": degree,
                "vars": [names[r], names[s]],
                "columns": terms_json(o.slice(*degree).terms(), &names),
                "rows": terms_json(o.slice(*degree + 2).terms(), &names),
                "matrix": matrix_json(&c),
                "zero": c.is_zero(),
            }))
        }
        Cmd::Check => {
            let g = doc.prebasis(&o)?;
            let c = check_basis_with_cap(&g, gotzmann_cap()?)?;
            Ok(Outcome {
                code: if c.verdict == Verdict::Indeterminate { 2 } else { 0 },
                report: Output::Json(certificate_json(&c, &names)),
            })
        }
        Cmd::Conditions { lines } => {
            let g = doc.prebasis(&o)?;
            let conds: Vec<String> = parametric_conditions_with_cap(&g, gotzmann_cap()?)?
                .iter()
                .map(|c| c.to_string())
                .collect();
            if *lines {
                Ok(Outcome {
                    report: Output::Lines(conds),
                    code: 0,
                })
            } else {
                ok(json!({ "count": conds.len(), "conditions": conds }))
            }
        }
        Cmd::FromIdeal { through } => {
            let j = doc.ideal_presentation()?;
            let rep = basis_from_ideal(&j, o.clone(), *through)?;
            match rep.result {
                Ok(g) => ok(prebasis_doc(&doc, &g)),
                Err(fail) => {
                    let defect = match &fail.defect {
                        Defect::Intersection { witness } => {
                            json!({ "kind": "intersection", "witness": poly_json(witness, &names) })
                        }
                        Defect::RankDeficit { expected, found } => {
                            json!({ "kind": "rank-deficit", "expected": expected, "found": found })
                        }
                    };
                    let dims: Vec<Value> = rep
                        .dimensions
                        .iter()
                        .map(|d| json!({ "d": d.degree, "ideal": d.ideal_dim, "order": d.order_dim, "ambient": d.ambient_dim }))
                        .collect();
                    ok(json!({ "failure": { "degree": fail.degree, "defect": defect }, "dimensions": dims }))
                }
            }
        }
        Cmd::Extend { to } => {
            let g = doc.prebasis(&o)?;
            let c = check_basis_with_cap(&g, gotzmann_cap()?)?;
            match c.verdict {
                Verdict::Basis => ok(prebasis_doc(&doc, &extend(&g, *to)?)),
                Verdict::Indeterminate => {
                    eprintln!(
                        "bbk: cannot certify the prebasis; it needs degree {}",
                        c.required_degree
                    );
                    Ok(Outcome {
                        report: Output::Json(certificate_json(&c, &names)),
                        code: 2,
                    })
                }
                Verdict::NotBasis => {
                    eprintln!("bbk: only a border basis can be extended");
                    Ok(Outcome {
                        report: Output::Json(certificate_json(&c, &names)),
                        code: 1,
                    })
                }
            }
        }
    }
}

fn read_polynomial(text: &str, names: &[String], ring: &Ring) -> Result<Polynomial> {
    #[derive(serde::Deserialize)]
    #[serde(untagged)]
    enum PolyFile {
        Wrapped { polynomial: PolynomialDoc },
        Bare(PolynomialDoc),
    }
    let f: PolyFile = serde_json::from_str(text).map_err(|e| anyhow!("bad polynomial document: {e}"))?;
    let doc = match f {
        PolyFile::Wrapped { polynomial } | PolyFile::Bare(polynomial) => polynomial,
    };
    Ok(doc.to_polynomial(names, ring)?)
}

fn structure(doc: &WorkspaceDoc, o: &Arc<OrderIdeal>, describe: bool, d: u32) -> Result<Outcome> {
    let s = doc.structure(o)?;
    let names = o.variables();
    let mut out = json!({
        "degree": d,
        "labels": terms_json(&s.labels_through(d), names),
    });
    if describe {
        let cones: Vec<Value> = s
            .describe(d)
            .iter()
            .map(|c| {
                json!({
                    "term": term_json(&c.term, names),
                    "owner": term_json(&c.owner, names),
                    "multiplier": term_json(&c.multiplier, names),
                })
            })
            .collect();
        let mut mult = Vec::new();
        for k in 1..=d {
            for sigma in o.border_slice(k).iter() {
                mult.push(json!({
                    "head": term_json(sigma, names),
                    "multipliers": terms_json(&s.multiplicative_slice(sigma, d - k)?, names),
                }));
            }
        }
        out["cones"] = Value::Array(cones);
        out["multiplicative"] = Value::Array(mult);
    }
    ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome { report, code }) => {
            let text = match report {
                Output::Json(v) => serde_json::to_string_pretty(&v).expect("reports serialize") + "\n",
                Output::Lines(ls) => ls.iter().map(|l| format!("{l}\n")).collect(),
            };
            // a closed pipe is not an error of ours
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("bbk: {e:#}");
            ExitCode::from(1)
        }
    }
}
