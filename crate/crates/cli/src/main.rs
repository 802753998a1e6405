use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use imdp_core::bisim::{
    check_imdp, check_pa, quotient_imdp, quotient_pa, refine, BisimReport, BisimWitness,
};
use imdp_core::compose::{imdp_interleaved_product, imdp_sync_product, pa_sync_product};
use imdp_core::geometry::{MembershipCertificate, Side};
use imdp_core::model::AnyModel;
use imdp_core::rational::format_fraction;
use imdp_core::transform::{demonstrate_incompleteness, fold, unfold};
use imdp_core::{dot, io, Error, Model, Partition, Rational};

#[derive(Parser)]
#[command(
    name = "imdp",
    version,
    about = "Interval MDP and probabilistic automaton toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct DotOut {
    /// Also write a Graphviz description of the resulting model here.
    #[arg(long, value_name = "FILE")]
    dot: Option<PathBuf>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ProductKind {
    /// Synchronous product (IMDPs or PAs).
    #[arg(long)]
    sync: bool,
    /// Interleaved product (IMDPs only).
    #[arg(long)]
    interleave: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Check model invariants; exit 1 if any is violated.
    Validate { file: PathBuf },
    /// Unfold an IMDP into a PA.
    Unfold {
        file: PathBuf,
        #[command(flatten)]
        out: DotOut,
    },
    /// Fold a PA into a single-action IMDP.
    Fold {
        file: PathBuf,
        #[command(flatten)]
        out: DotOut,
    },
    /// Compose two models.
    Product {
        #[command(flatten)]
        kind: ProductKind,
        left: PathBuf,
        right: PathBuf,
        #[command(flatten)]
        out: DotOut,
    },
    /// Decide bisimilarity of two models of the same kind; exit 1 if not.
    Bisim { left: PathBuf, right: PathBuf },
    /// Quotient a model by its coarsest bisimulation.
    Minimize {
        file: PathBuf,
        #[command(flatten)]
        out: DotOut,
    },
    /// Look for a distribution the folded PA allows but the PA cannot
    /// realise; exit 1 if folding is exact.
    Incompleteness { file: PathBuf },
}

/// What a command produced: the JSON report and whether the property it
/// checks holds.
struct Outcome {
    report: Value,
    holds: bool,
}

impl Outcome {
    fn ok(report: Value) -> Self {
        Self {
            report,
            holds: true,
        }
    }
}

struct CliError(String);

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError(e.to_string())
    }
}

impl From<&str> for CliError {
    fn from(msg: &str) -> Self {
        CliError(msg.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

fn read_model(path: &Path) -> CliResult<AnyModel> {
    let text =
        fs::read_to_string(path).map_err(|e| CliError(format!("{}: {e}", path.display())))?;
    io::parse_model(&text).map_err(|e| CliError(format!("{}: {e}", path.display())))
}

fn emit_model(m: AnyModel, out: &DotOut) -> CliResult<Outcome> {
    write_dot(&m, out)?;
    Ok(Outcome::ok(io::model_to_json(&m)))
}

fn write_dot(m: &AnyModel, out: &DotOut) -> CliResult<()> {
    if let Some(path) = &out.dot {
        fs::write(path, dot::to_dot(m))
            .map_err(|e| CliError(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn fractions(xs: &[Rational]) -> Value {
    Value::Array(xs.iter().map(|x| json!(format_fraction(x))).collect())
}

fn certificate_json(c: &MembershipCertificate) -> Value {
    match c {
        MembershipCertificate::Inside { terms } => json!({
            "inside": true,
            "terms": terms.iter().map(|t| json!({
                "source": t.source,
                "weight": format_fraction(&t.weight),
                "point": fractions(&t.point),
            })).collect::<Vec<_>>(),
        }),
        MembershipCertificate::Outside { normal, offset } => json!({
            "inside": false,
            "normal": fractions(normal),
            "offset": format_fraction(offset),
        }),
    }
}

fn partition_json(p: &Partition, names: &[String]) -> Value {
    json!(p
        .blocks()
        .iter()
        .map(|b| b.iter().map(|&s| names[s].as_str()).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

fn bisim_json(r: &BisimReport) -> Value {
    let mut out = json!({
        "bisimilar": r.bisimilar,
        "partition": partition_json(&r.partition, &r.state_names),
    });
    let witness = match &r.witness {
        None => return out,
        Some(BisimWitness::Labels { left, right }) => json!({
            "kind": "labels",
            "left": left,
            "right": right,
        }),
        // coordinates follow the blocks listed under "partition"
        Some(BisimWitness::Hulls(sep)) => json!({
            "kind": "hull",
            "side": match sep.side { Side::Left => "left", Side::Right => "right" },
            "point": fractions(&sep.point),
            "certificate": certificate_json(&sep.certificate),
        }),
    };
    out["witness"] = witness;
    out
}

fn validate(file: &Path) -> CliResult<Outcome> {
    let m = read_model(file)?;
    let violations: Vec<String> = m
        .as_model()
        .validate()
        .iter()
        .map(ToString::to_string)
        .collect();
    Ok(Outcome {
        holds: violations.is_empty(),
        report: json!({
            "kind": m.kind(),
            "states": m.as_model().num_states(),
            "valid": violations.is_empty(),
            "violations": violations,
        }),
    })
}

fn product(kind: &ProductKind, left: &Path, right: &Path, out: &DotOut) -> CliResult<Outcome> {
    let result = match (read_model(left)?, read_model(right)?) {
        (AnyModel::Imdp(l), AnyModel::Imdp(r)) if kind.sync => imdp_sync_product(&l, &r)?.into(),
        (AnyModel::Imdp(l), AnyModel::Imdp(r)) => {
            l.ensure_valid()?;
            r.ensure_valid()?;
            imdp_interleaved_product(&l, &r)?.into()
        }
        (AnyModel::Pa(l), AnyModel::Pa(r)) if kind.sync => pa_sync_product(&l, &r)?.into(),
        (AnyModel::Pa(_), AnyModel::Pa(_)) => {
            return Err("interleaved products are defined for IMDPs only".into())
        }
        _ => return Err("both operands must be of the same kind".into()),
    };
    emit_model(result, out)
}

fn bisim(left: &Path, right: &Path) -> CliResult<Outcome> {
    let report = match (read_model(left)?, read_model(right)?) {
        (AnyModel::Imdp(l), AnyModel::Imdp(r)) => check_imdp(&l, &r)?,
        (AnyModel::Pa(l), AnyModel::Pa(r)) => check_pa(&l, &r)?,
        _ => return Err("both operands must be of the same kind".into()),
    };
    Ok(Outcome {
        holds: report.bisimilar,
        report: bisim_json(&report),
    })
}

fn minimize(file: &Path, out: &DotOut) -> CliResult<Outcome> {
    let m = read_model(file)?;
    let model = m.as_model();
    model.ensure_valid()?;
    let n = model.num_states();
    let (partition, quotient): (Partition, AnyModel) = match &m {
        AnyModel::Imdp(x) => {
            let p = refine(x, &Partition::trivial(n))?;
            let q = quotient_imdp(x, &p)?;
            (p, q.into())
        }
        AnyModel::Pa(x) => {
            let p = refine(x, &Partition::trivial(n))?;
            let q = quotient_pa(x, &p)?;
            (p, q.into())
        }
    };
    write_dot(&quotient, out)?;
    Ok(Outcome::ok(json!({
        "model": io::model_to_json(&quotient),
        "partition": partition_json(&partition, model.state_names()),
        "states_before": n,
        "states_after": partition.num_blocks(),
    })))
}

fn incompleteness(file: &Path) -> CliResult<Outcome> {
    let a = match read_model(file)? {
        AnyModel::Pa(a) => a,
        AnyModel::Imdp(_) => return Err("incompleteness expects a PA".into()),
    };
    let witness = demonstrate_incompleteness(&a)?;
    Ok(Outcome {
        holds: witness.is_some(),
        report: json!({
            "witness": witness.map(|w| json!({
                "state": a.state_name(w.state),
                "distribution": io::distribution_to_json(&a, &w.distribution),
                "coordinates": w.dims.iter().map(|&s| a.state_name(s)).collect::<Vec<_>>(),
                "certificate": certificate_json(&w.certificate),
            })),
        }),
    })
}

fn run(cli: Cli) -> CliResult<Outcome> {
    match cli.command {
        Command::Validate { file } => validate(&file),
        Command::Unfold { file, out } => match read_model(&file)? {
            AnyModel::Imdp(m) => emit_model(unfold(&m)?.into(), &out),
            AnyModel::Pa(_) => Err("unfold expects an IMDP".into()),
        },
        Command::Fold { file, out } => match read_model(&file)? {
            AnyModel::Pa(a) => emit_model(fold(&a)?.into(), &out),
            AnyModel::Imdp(_) => Err("fold expects a PA".into()),
        },
        Command::Product {
            kind,
            left,
            right,
            out,
        } => product(&kind, &left, &right, &out),
        Command::Bisim { left, right } => bisim(&left, &right),
        Command::Minimize { file, out } => minimize(&file, &out),
        Command::Incompleteness { file } => incompleteness(&file),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome { report, holds }) => {
            print!("{}", io::to_canonical_string(&report));
            ExitCode::from(if holds { 0 } else { 1 })
        }
        Err(CliError(msg)) => {
            eprintln!("error: {msg}");
            print!("{}", io::to_canonical_string(&json!({ "error": msg })));
            ExitCode::from(2)
        }
    }
}
