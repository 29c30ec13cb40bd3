use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use ulrich_forge::algebra::{
    parse_polynomial, parse_polynomial_list, ExponentVector, Field, ParseOptions, Ring,
};
use ulrich_forge::closure::{is_reduction, DEFAULT_T_MAX};
use ulrich_forge::groebner::Colength;
use ulrich_forge::koszul::{parse_ideal_expr, parse_module, parse_semigroup_ref};
use ulrich_forge::semigroup::GapSetResult;
use ulrich_forge::sequences::{analyze, parse_family, parse_range};
use ulrich_forge::subring::parse_ring_spec;
use ulrich_forge::verify::{
    verify_face_localization, verify_no_ulrich, verify_ulrich_equivalence, REPORT_SCHEMA,
};
use ulrich_forge::Error;

const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

/// Verdicts that exit nonzero when `--expect` is not given.
const FAILURE_VERDICTS: &[&str] = &[
    "PRECONDITION_FAILED",
    "REFUSED",
    "MISMATCH",
    "INCONSISTENT",
    "ULRICH_CRITERION_MET",
];

#[derive(Parser)]
#[command(name = "ulrich-forge", version, about = "Exact checks for Ulrich modules over monomial subrings of k[x, y]")]
struct Cli {
    /// Write the full report as JSON to this path.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Exit 0 only if the overall verdict equals this string.
    #[arg(long, global = true)]
    expect: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// No-Ulrich check for the pinched plane R_n.
    #[command(name = "verify-35")]
    NoUlrich {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "q")]
        field: Field,
    },
    /// Decide IS = m_R S for a monomial ring read from FILE.
    #[command(name = "verify-51")]
    Equivalence {
        #[arg(long)]
        ring: PathBuf,
    },
    /// Multiplicity and face localization of the homogenized ring T_n.
    #[command(name = "verify-37")]
    Localization {
        #[arg(long)]
        n: u32,
    },
    /// Groebner basis, normal forms, colength and ideal equality.
    Groebner {
        #[arg(long)]
        ideal: String,
        #[command(flatten)]
        query: GroebnerQuery,
        #[command(flatten)]
        ambient: Ambient,
    },
    /// Affine semigroup data: gaps, multiplicity, Hilbert-Samuel function.
    Semigroup {
        /// `sg d {(..),..}`, `pinched:N`, `homogenized:N` or `full`.
        #[arg(long)]
        gens: String,
        #[command(flatten)]
        query: SemigroupQuery,
    },
    /// Decide whether IDEAL is a reduction of the ideal given by --in.
    Reduction {
        #[arg(long)]
        ideal: String,
        #[arg(long = "in")]
        target: String,
        #[arg(long, default_value_t = DEFAULT_T_MAX)]
        tmax: u32,
        #[command(flatten)]
        ambient: Ambient,
    },
    /// Koszul homology lengths of a module on a system of parameters.
    Koszul {
        #[arg(long)]
        module: String,
        /// Two comma-separated elements, e.g. "x^2,y^2".
        #[arg(long)]
        sop: String,
        #[arg(long, default_value = "q")]
        field: Field,
    },
    /// Asymptotic table and verdict for a module family indexed by n.
    Analyze {
        #[arg(long)]
        family: String,
        #[arg(long, default_value = "1..12")]
        range: String,
    },
}

#[derive(Args)]
#[group(multiple = false)]
struct GroebnerQuery {
    /// Normal form of EXPR modulo the ideal.
    #[arg(long)]
    nf: Option<String>,
    /// Colength of the ideal.
    #[arg(long)]
    colength: bool,
    /// Compare with another ideal.
    #[arg(long)]
    equal: Option<String>,
}

#[derive(Args)]
#[group(multiple = false)]
struct SemigroupQuery {
    #[arg(long)]
    gaps: bool,
    #[arg(long)]
    multiplicity: bool,
    /// Hilbert-Samuel values for t = 0..=T.
    #[arg(long, value_name = "T")]
    hilbert: Option<u64>,
}

#[derive(Args)]
struct Ambient {
    /// Comma-separated variable names.
    #[arg(long, default_value = "x,y")]
    vars: String,
    #[arg(long, default_value = "q")]
    field: Field,
}

impl Ambient {
    fn ring(&self) -> Arc<Ring> {
        let names: Vec<&str> = self.vars.split(',').map(str::trim).collect();
        Ring::new(&names, self.field)
    }
}

/// What a subcommand produced: text for stdout, a JSON document and a verdict.
struct Outcome {
    text: String,
    json: Value,
    verdict: String,
}

impl Outcome {
    fn simple(pipeline: &str, inputs: Value, result: Value, text: String, verdict: &str) -> Self {
        Outcome {
            text,
            json: json!({
                "schema": REPORT_SCHEMA,
                "pipeline": pipeline,
                "inputs": inputs,
                "result": result,
                "verdict": verdict,
            }),
            verdict: verdict.into(),
        }
    }
}

fn run(command: &Command) -> Result<Outcome, Error> {
    let report = match command {
        Command::NoUlrich { n, field } => verify_no_ulrich(*n, *field)?,
        Command::Equivalence { ring } => {
            let text = fs::read_to_string(ring)
                .map_err(|e| Error::parse(format!("cannot read {}: {e}", ring.display())))?;
            verify_ulrich_equivalence(&parse_ring_spec(&text)?)?
        }
        Command::Localization { n } => verify_face_localization(*n)?,
        Command::Groebner { ideal, query, ambient } => return groebner(ideal, query, ambient),
        Command::Semigroup { gens, query } => return semigroup(gens, query),
        Command::Reduction { ideal, target, tmax, ambient } => {
            let ring = ambient.ring();
            let i = parse_ideal_expr(ideal, &ring, &ParseOptions::default())?;
            let j = parse_ideal_expr(target, &ring, &ParseOptions::default())?;
            let cert = is_reduction(&i, &j, *tmax)?;
            return Ok(Outcome::simple(
                "reduction",
                json!({ "ideal": i.to_string(), "in": j.to_string(), "tmax": tmax }),
                serde_json::to_value(&cert).expect("certificate serializes"),
                format!("{} as a reduction of {}: {}", i, j, cert.label()),
                cert.label(),
            ));
        }
        Command::Koszul { module, sop, field } => {
            let ring = Ring::new(&["x", "y"], *field);
            let opts = ParseOptions::default();
            let m = parse_module(module, &ring, &opts)?;
            let sop = parse_polynomial_list(sop, &ring, &opts)?;
            if sop.len() != 2 {
                return Err(Error::parse("--sop needs exactly two elements"));
            }
            let tally = m.koszul(&sop[0], &sop[1])?;
            return Ok(Outcome::simple(
                "koszul",
                json!({ "module": module, "sop": [sop[0].to_string(), sop[1].to_string()] }),
                serde_json::to_value(tally).expect("tally serializes"),
                format!("{tally}"),
                "OK",
            ));
        }
        Command::Analyze { family, range } => {
            let range = parse_range(range)?;
            let table = analyze(&parse_family(family, range)?)?;
            let verdict = table.verdict.to_string();
            return Ok(Outcome {
                text: table.to_text(),
                json: json!({
                    "schema": REPORT_SCHEMA,
                    "pipeline": "analyze",
                    "table": table,
                    "verdict": verdict,
                }),
                verdict,
            });
        }
    };
    Ok(Outcome {
        text: report.to_text(),
        json: serde_json::to_value(&report).expect("reports serialize"),
        verdict: report.verdict.clone(),
    })
}

fn groebner(ideal: &str, query: &GroebnerQuery, ambient: &Ambient) -> Result<Outcome, Error> {
    let ring = ambient.ring();
    let i = parse_ideal_expr(ideal, &ring, &ParseOptions::default())?;
    let inputs = json!({ "ideal": i.to_string(), "vars": ambient.vars, "field": ambient.field.tag() });
    if let Some(p) = &query.nf {
        let p = parse_polynomial(p, &ring)?;
        let nf = i.normal_form(&p)?;
        let verdict = if nf.is_zero() { "ZERO" } else { "NONZERO" };
        return Ok(Outcome::simple(
            "groebner",
            inputs,
            json!({ "nf_of": p.to_string(), "normal_form": nf.to_string() }),
            nf.to_string(),
            verdict,
        ));
    }
    if query.colength {
        let c = i.colength();
        let (text, verdict) = match c {
            Colength::Finite(n) => (n.to_string(), "FINITE"),
            Colength::Infinite => ("infinite".to_string(), "INFINITE"),
        };
        return Ok(Outcome::simple(
            "groebner",
            inputs,
            json!({ "colength": c.finite() }),
            text,
            verdict,
        ));
    }
    if let Some(other) = &query.equal {
        let j = parse_ideal_expr(other, &ring, &ParseOptions::default())?;
        let eq = i.equals(&j)?;
        let verdict = if eq { "EQUAL" } else { "UNEQUAL" };
        return Ok(Outcome::simple(
            "groebner",
            inputs,
            json!({ "other": j.to_string(), "equal": eq }),
            verdict.to_lowercase(),
            verdict,
        ));
    }
    let basis: Vec<String> = i.groebner_basis().iter().map(|g| g.to_string()).collect();
    Ok(Outcome::simple(
        "groebner",
        inputs,
        json!({ "groebner_basis": basis }),
        basis.join("\n"),
        "OK",
    ))
}

fn semigroup(gens: &str, query: &SemigroupQuery) -> Result<Outcome, Error> {
    let sg = parse_semigroup_ref(gens, &ParseOptions::default())?;
    let inputs = json!({ "semigroup": sg.to_string() });
    if query.gaps {
        let res = sg.gap_set_auto(1024)?;
        let (text, verdict) = match &res {
            GapSetResult::Finite(g) => {
                let pts: Vec<String> = g.gaps.iter().map(point).collect();
                (format!("{} gaps: {}", g.len(), pts.join(" ")), "FINITE")
            }
            GapSetResult::NotFiniteWithinBound { bound, witness } => (
                format!(
                    "not finite within degree {bound}{}",
                    witness.as_ref().map(|w| format!(" (gap {})", point(w))).unwrap_or_default()
                ),
                "NOT_FINITE_WITHIN_BOUND",
            ),
        };
        let result = serde_json::to_value(&res).expect("gap sets serialize");
        return Ok(Outcome::simple("semigroup", inputs, result, text, verdict));
    }
    if query.multiplicity {
        let m = sg.multiplicity()?;
        let result = serde_json::to_value(&m).expect("multiplicity serializes");
        return Ok(Outcome::simple("semigroup", inputs, result, m.value.to_string(), "OK"));
    }
    if let Some(t) = query.hilbert {
        let table = sg.hilbert_samuel_table(t);
        let text = table.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
        return Ok(Outcome::simple("semigroup", inputs, json!({ "hilbert_samuel": table }), text, "OK"));
    }
    let mins: Vec<String> = sg.minimal_generators().iter().map(point).collect();
    Ok(Outcome::simple(
        "semigroup",
        inputs,
        json!({ "minimal_generators": mins, "embedding_dimension": mins.len() }),
        format!("{sg}\nminimal generators ({}): {}", mins.len(), mins.join(" ")),
        "OK",
    ))
}

fn point(v: &ExponentVector) -> String {
    let parts: Vec<String> = v.as_slice().iter().map(u32::to_string).collect();
    format!("({})", parts.join(","))
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::Algebra(_) => EXIT_USAGE,
        Error::Inconclusive(_) | Error::IncreaseBound { .. } => EXIT_INCONCLUSIVE,
        _ => EXIT_MISMATCH,
    }
}

fn verdict_code(verdict: &str, expect: Option<&str>) -> u8 {
    match expect {
        Some(e) if e == verdict => 0,
        _ if verdict == "INCONCLUSIVE" => EXIT_INCONCLUSIVE,
        Some(_) => EXIT_MISMATCH,
        None if FAILURE_VERDICTS.contains(&verdict) => EXIT_MISMATCH,
        None => 0,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = match run(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(error_code(&e));
        }
    };
    print!("{}", outcome.text);
    if !outcome.text.ends_with('\n') {
        println!();
    }
    if let Some(path) = &cli.json {
        let body = serde_json::to_string_pretty(&outcome.json).expect("json output") + "\n";
        if let Err(e) = fs::write(path, body).with_context(|| format!("writing {}", path.display())) {
            eprintln!("error: {e:#}");
            return ExitCode::from(EXIT_MISMATCH);
        }
    }
    eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    ExitCode::from(verdict_code(&outcome.verdict, cli.expect.as_deref()))
}
