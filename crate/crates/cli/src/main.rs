use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use twistfree::classify::{
    classify_vc, enumerate_covers_with, Classification, CoverOptions, CoverRow, ManifoldLabel, VCGroupSpec,
    DEFAULT_INDEX_BOUND,
};
use twistfree::intlat::{canonicalize_involution, conjugates, IntMatrix, LatticeError};
use twistfree::realize::{
    realizable_general_with, verify_action_model, ActionModelReport, Decision, SearchOptions, Verdict,
    DEFAULT_SEED, DEFAULT_WITNESS_CAP,
};
use twistfree::selfcheck::run_selfcheck;
use twistfree::twistgrp::{free_product_with_z2, parse_group_record, DyerScottClaim, GroupRecord, InputError};

const EXIT_DECIDED: u8 = 0;
const EXIT_INVALID: u8 = 1;
const EXIT_UNKNOWN: u8 = 2;

#[derive(Parser)]
#[command(name = "twistfree", version, about = "Realizability of Z/2-twisted free group actions on even spheres")]
struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether {rank, theta, phi} is realizable.
    Realizable {
        input: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_WITNESS_CAP)]
        max_witness_length: usize,
        /// Echoed in the output; the decision itself is deterministic.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Invariants (k, r, s) and a conjugator to A(k, r, s).
    CanonicalForm {
        input: Option<PathBuf>,
        /// Matrix text such as "1 0; 1 -1".
        #[arg(long)]
        matrix: Option<String>,
    },
    /// Orbit space of a virtually cyclic group {shape, phi_z?, phi_t?}.
    ClassifyVc { input: Option<PathBuf> },
    /// Finite groups acting freely on the given manifold.
    Covers {
        cover: String,
        #[arg(long, default_value_t = DEFAULT_INDEX_BOUND)]
        max_index: u64,
        #[arg(long, default_value_t = DEFAULT_INDEX_BOUND)]
        index_bound: u64,
    },
    /// Free product of a list of twisted groups with amalgamated Z/2 presentation.
    FreeProduct { input: Option<PathBuf> },
    /// Check a claimed free-factor decomposition {group, claim}.
    VerifyDyerScott { input: Option<PathBuf> },
    /// Exercise the explicit action model on random samples.
    VerifyAction {
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        max_length: usize,
    },
    /// Run the acceptance suites.
    Selfcheck,
}

enum Output {
    Json(Value, Option<String>),
    Text(String),
}

struct Outcome {
    output: Output,
    code: u8,
}

impl Outcome {
    fn json(value: Value, pretty: Option<String>, code: u8) -> Self {
        Outcome {
            output: Output::Json(value, pretty),
            code,
        }
    }
}

fn read_text(input: &Option<PathBuf>) -> Result<String, InputError> {
    let mut text = String::new();
    match input {
        Some(path) => {
            text = std::fs::read_to_string(path)
                .map_err(|e| InputError::new("input", format!("cannot read {}: {e}", path.display())))?;
        }
        None => {
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| InputError::new("input", format!("cannot read stdin: {e}")))?;
        }
    }
    Ok(text)
}

fn read_json(input: &Option<PathBuf>) -> Result<Value, InputError> {
    let text = read_text(input)?;
    serde_json::from_str(&text).map_err(|e| InputError::new("input", format!("invalid JSON: {e}")))
}

fn lattice_error(e: LatticeError) -> InputError {
    InputError::new("matrix", e.to_string())
}

fn cmd_realizable(input: &Option<PathBuf>, cap: usize, seed: u64) -> Result<Outcome, InputError> {
    let record = parse_group_record(&read_json(input)?, "")?;
    let phi = record.require_phi("")?;
    let options = SearchOptions {
        cap,
        ..Default::default()
    };
    let decision = realizable_general_with(&record.group, phi, options)
        .map_err(|e| InputError::new("max_witness_length", e.to_string()))?;
    let mut out = decision.to_json();
    out["seed"] = json!(seed);
    let code = match decision.verdict {
        Verdict::Unknown { .. } => EXIT_UNKNOWN,
        _ => EXIT_DECIDED,
    };
    Ok(Outcome::json(out, Some(render_decision(&decision)), code))
}

fn render_decision(d: &Decision) -> String {
    let kernel: Vec<String> = d
        .kernel_basis
        .vectors()
        .iter()
        .map(|v| format!("({})", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")))
        .collect();
    let mut out = match &d.verdict {
        Verdict::Realizable => "realizable\n".to_string(),
        Verdict::NotRealizable(w) => format!("not realizable, witness g = {}\n", w.word()),
        Verdict::Unknown { budget_used } => {
            format!("unknown: lattice obstruction but no witness up to length {budget_used}\n")
        }
    };
    out.push_str(&format!("ker(rho + I) basis: {}\n", if kernel.is_empty() { "none".into() } else { kernel.join(" ") }));
    out.push_str(&format!("search budget: {}\n", d.budget));
    out
}

fn cmd_canonical_form(input: &Option<PathBuf>, matrix: &Option<String>) -> Result<Outcome, InputError> {
    let text = match matrix {
        Some(m) => m.clone(),
        None => read_text(input)?,
    };
    let m = IntMatrix::parse(text.trim()).map_err(lattice_error)?;
    let (shape, p) = canonicalize_involution(&m).map_err(lattice_error)?;
    let verified = conjugates(&m, &p, &shape.matrix());
    let out = json!({
        "k": shape.k,
        "r": shape.r,
        "s": shape.s,
        "P": twistfree::json::matrix(&p),
        "verified": verified,
    });
    let pretty = format!("A({}, {}, {})\nP =\n{}\nP^-1 M P = A verified: {verified}\n", shape.k, shape.r, shape.s, p);
    Ok(Outcome::json(out, Some(pretty), EXIT_DECIDED))
}

fn cmd_classify_vc(input: &Option<PathBuf>) -> Result<Outcome, InputError> {
    let spec = VCGroupSpec::from_json(&read_json(input)?)?;
    match classify_vc(&spec) {
        Classification::InvalidInput(msg) => Err(InputError::new("", msg)),
        c => {
            let pretty = match &c {
                Classification::Realizable(l) => format!("orbit space {} ({})\n", l.name(), l.notation()),
                Classification::NotRealizable { reason, .. } => format!("not realizable: {reason}\n"),
                Classification::InvalidInput(_) => unreachable!(),
            };
            Ok(Outcome::json(c.to_json(), Some(pretty), EXIT_DECIDED))
        }
    }
}

fn render_rows(cover: ManifoldLabel, rows: &[CoverRow]) -> String {
    let mut out = format!("free actions on {} ({})\n", cover.name(), cover.notation());
    out.push_str(&format!("{:>5}  {:<20} {:<12} {}\n", "index", "group", "orbit space", "subgroup"));
    for r in rows {
        out.push_str(&format!(
            "{:>5}  {:<20} {:<12} {}\n",
            r.index,
            r.group.to_string(),
            r.base.name(),
            r.subgroup
        ));
    }
    out
}

fn cmd_covers(cover: &str, max_index: u64, index_bound: u64) -> Result<Outcome, InputError> {
    let label: ManifoldLabel = cover.parse().map_err(|e: twistfree::classify::ClassifyError| InputError::new("cover", e.to_string()))?;
    let options = CoverOptions {
        index_bound,
        ..Default::default()
    };
    let rows = enumerate_covers_with(label, max_index, options).map_err(|e| {
        let at = if matches!(e, twistfree::classify::ClassifyError::IndexBoundExceeded { .. }) {
            "max_index"
        } else {
            "cover"
        };
        InputError::new(at, e.to_string())
    })?;
    let out = json!({
        "cover": label.name(),
        "max_index": max_index,
        "rows": rows.iter().map(CoverRow::to_json).collect::<Vec<_>>(),
    });
    Ok(Outcome::json(out, Some(render_rows(label, &rows)), EXIT_DECIDED))
}

fn cmd_free_product(input: &Option<PathBuf>) -> Result<Outcome, InputError> {
    let value = read_json(input)?;
    let list = value
        .as_array()
        .ok_or_else(|| InputError::new("", "expected an array of twisted groups"))?;
    let records = list
        .iter()
        .enumerate()
        .map(|(i, v)| parse_group_record(v, &format!("[{i}]")))
        .collect::<Result<Vec<GroupRecord>, _>>()?;
    let groups: Vec<_> = records.iter().map(|r| r.group.clone()).collect();
    let (group, report) = free_product_with_z2(&groups).map_err(|e| InputError::new("", e.to_string()))?;
    let phi = if records.iter().all(|r| r.phi.is_some()) {
        let phis = records
            .iter()
            .enumerate()
            .map(|(i, r)| r.require_phi(&format!("[{i}]")).cloned())
            .collect::<Result<Vec<_>, _>>()?;
        Some(report.combine_orientations(&phis).map_err(|e| InputError::new("", e.to_string()))?)
    } else {
        None
    };
    let record = GroupRecord { group, phi };
    let out = json!({
        "group": record.to_json(),
        "factors": serde_json::to_value(&report.factors).expect("serializable"),
    });
    Ok(Outcome::json(out, None, EXIT_DECIDED))
}

fn cmd_verify_dyer_scott(input: &Option<PathBuf>) -> Result<Outcome, InputError> {
    let value = read_json(input)?;
    let record = parse_group_record(
        value.get("group").ok_or_else(|| InputError::new("group", "missing field"))?,
        "group",
    )?;
    let claim: DyerScottClaim = serde_json::from_value(
        value.get("claim").cloned().ok_or_else(|| InputError::new("claim", "missing field"))?,
    )
    .map_err(|e| InputError::new("claim", e.to_string()))?;
    let mismatches = claim
        .mismatches(&record.group)
        .map_err(|e| InputError::new("claim", e.to_string()))?;
    let out = json!({
        "holds": mismatches.is_empty(),
        "mismatches": serde_json::to_value(&mismatches).expect("serializable"),
    });
    Ok(Outcome::json(out, None, EXIT_DECIDED))
}

fn render_action(r: &ActionModelReport) -> String {
    let mut out = format!(
        "{} samples (seed {}, max length {}): {}\n",
        r.samples,
        r.seed,
        r.max_length,
        if r.passed { "passed" } else { "failed" }
    );
    for f in &r.axiom_failures {
        out.push_str(&format!("axiom failure: {f}\n"));
    }
    for g in &r.freeness_failures {
        out.push_str(&format!("not free: ({g}, 1) is an orientation-preserving involution\n"));
    }
    out
}

fn cmd_verify_action(
    input: &Option<PathBuf>,
    samples: usize,
    seed: u64,
    max_length: usize,
) -> Result<Outcome, InputError> {
    let record = parse_group_record(&read_json(input)?, "")?;
    let phi = record.require_phi("")?;
    let report = verify_action_model(&record.group, phi, samples, max_length, seed)
        .map_err(|e| InputError::new("phi", e.to_string()))?;
    let out = serde_json::to_value(&report).expect("serializable");
    Ok(Outcome::json(out, Some(render_action(&report)), EXIT_DECIDED))
}

fn run(cli: &Cli) -> Result<Outcome, InputError> {
    match &cli.command {
        Command::Realizable {
            input,
            max_witness_length,
            seed,
        } => cmd_realizable(input, *max_witness_length, *seed),
        Command::CanonicalForm { input, matrix } => cmd_canonical_form(input, matrix),
        Command::ClassifyVc { input } => cmd_classify_vc(input),
        Command::Covers {
            cover,
            max_index,
            index_bound,
        } => cmd_covers(cover, *max_index, *index_bound),
        Command::FreeProduct { input } => cmd_free_product(input),
        Command::VerifyDyerScott { input } => cmd_verify_dyer_scott(input),
        Command::VerifyAction {
            input,
            samples,
            seed,
            max_length,
        } => cmd_verify_action(input, *samples, *seed, *max_length),
        Command::Selfcheck => {
            let (log, passed) = run_selfcheck();
            Ok(Outcome {
                output: Output::Text(log),
                code: if passed { EXIT_DECIDED } else { EXIT_INVALID },
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, code) = match run(&cli) {
        Ok(Outcome { output, code }) => {
            let text = match output {
                Output::Text(t) => t,
                Output::Json(_, Some(p)) if cli.pretty => p,
                Output::Json(v, _) if cli.pretty => format!("{}\n", serde_json::to_string_pretty(&v).expect("json")),
                Output::Json(v, _) => format!("{v}\n"),
            };
            (text, code)
        }
        Err(e) => (format!("{}\n", e.to_json()), EXIT_INVALID),
    };
    print!("{text}");
    ExitCode::from(code)
}
