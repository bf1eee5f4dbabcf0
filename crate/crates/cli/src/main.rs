use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use surgeon_core::audit::{self, emit_report, Ranges};
use surgeon_core::cusped::{enumerate_short_slopes, hk_certify, is_symmetry_breaking, load_manifold_data, Multislope};
use surgeon_core::families::{
    cable_slope, classify_cable, compute_y, compute_ystar, magic_matches, realizable_as, whitehead_filling, LensFamily,
};
use surgeon_core::lens::{canonicalize, chain_eval, chain_h1_oracle, Orientation};
use surgeon_core::{Chain, ExtRational, ManifoldData, Params};

#[derive(Parser)]
#[command(name = "surgeon", version, about = "Exact surgery calculus and table verification")]
struct Cli {
    /// Output format. Reports default to CSV; other commands print plain text unless set.
    #[arg(long, global = true, value_enum)]
    format: Option<OutFormat>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Reproduce an embedded table.
    Verify {
        #[command(subcommand)]
        what: VerifyTarget,
    },
    /// Evaluate surgery on a chain, e.g. `5/2,4` or `[2,3,inf,4]`.
    EvalChain {
        #[arg(allow_hyphen_values = true)]
        coeffs: String,
    },
    /// Compare L(P,Q) with L(P2,Q2).
    LensHomeo {
        #[arg(allow_hyphen_values = true)]
        p: i128,
        #[arg(allow_hyphen_values = true)]
        q: i128,
        #[arg(allow_hyphen_values = true)]
        p2: i128,
        #[arg(allow_hyphen_values = true)]
        q2: i128,
        /// Require an orientation preserving homeomorphism.
        #[arg(long)]
        oriented: bool,
    },
    /// Evaluate Y or Y* for family parameters.
    Family {
        which: Which,
        #[arg(long, allow_hyphen_values = true)]
        m: String,
        #[arg(long, allow_hyphen_values = true)]
        r: String,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        k: String,
    },
    /// Fill the magic manifold along three slopes.
    Magic {
        #[arg(allow_hyphen_values = true)]
        a: ExtRational,
        #[arg(allow_hyphen_values = true)]
        b: ExtRational,
        #[arg(allow_hyphen_values = true)]
        c: ExtRational,
    },
    /// Fill the Whitehead link exterior along two slopes.
    Whitehead {
        #[arg(allow_hyphen_values = true)]
        a: ExtRational,
        #[arg(allow_hyphen_values = true)]
        b: ExtRational,
    },
    /// Cable space slope for (m, r, k) and its classification.
    Cable {
        #[arg(allow_hyphen_values = true)]
        m: ExtRational,
        #[arg(allow_hyphen_values = true)]
        r: ExtRational,
        #[arg(allow_hyphen_values = true)]
        k: i128,
    },
    /// Search the two-parameter families for a lens space.
    Realizable {
        #[arg(allow_hyphen_values = true)]
        p: i128,
        #[arg(allow_hyphen_values = true)]
        q: i128,
        #[arg(long, value_enum)]
        family: FamilyArg,
    },
    /// List slopes on one cusp with normalized length at most N.
    Slopes {
        /// Manifold data file (JSON).
        #[arg(long)]
        cusp: PathBuf,
        #[arg(long, default_value_t = 0)]
        index: usize,
        #[arg(long)]
        max_length: f64,
    },
    /// Print true when every non-trivial declared isometry moves the multislope.
    Symmetry {
        #[arg(long)]
        data: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        multislope: Multislope,
    },
    /// Check the universal hyperbolic Dehn filling bound.
    Certify {
        #[arg(long)]
        data: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        multislope: Multislope,
    },
}

#[derive(Subcommand)]
enum VerifyTarget {
    /// The census table of lens space fillings.
    Dhl,
    /// Any embedded table, instantiated over a range of its variables.
    Table {
        #[arg(long)]
        id: String,
        /// Inclusive range for every symbolic variable, e.g. `-4..4`.
        #[arg(long, allow_hyphen_values = true, default_value = "-6..6")]
        range: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Y,
    Ystar,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    #[value(name = "33")]
    F33,
    #[value(name = "24")]
    F24,
}

/// Print a result either as text or as a JSON object / two-column CSV.
fn output(format: Option<OutFormat>, text: String, fields: serde_json::Value) {
    match format {
        None => println!("{text}"),
        Some(OutFormat::Json) => println!("{}", serde_json::to_string_pretty(&fields).expect("json value")),
        Some(OutFormat::Csv) => {
            println!("key,value");
            if let serde_json::Value::Object(map) = fields {
                for (k, v) in map {
                    let v = match v {
                        serde_json::Value::String(s) => s,
                        other => other.to_string(),
                    };
                    println!("{k},\"{}\"", v.replace('"', "\"\""));
                }
            }
        }
    }
}

fn read(path: &PathBuf) -> anyhow::Result<ManifoldData> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(load_manifold_data(&text)?)
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    let fmt = cli.format;
    match cli.command {
        Command::Verify { what } => {
            let report = match what {
                VerifyTarget::Dhl => audit::verify_dhl(),
                VerifyTarget::Table { id, range } => {
                    audit::audit_table(&id, &Ranges::uniform(Ranges::parse_range(&range)?))?
                }
            };
            let format = match fmt {
                Some(OutFormat::Json) => audit::Format::Json,
                _ => audit::Format::Csv,
            };
            print!("{}", emit_report(&report, format)?);
            let s = report.summary();
            eprintln!(
                "{} rows: {} pass-oriented, {} pass-unoriented, {} mismatch, {} unsupported; {} unexplained mismatches",
                s.rows, s.pass_oriented, s.pass_unoriented, s.mismatch, s.unsupported, s.unexplained
            );
            return Ok(report.exit_code() as u8);
        }
        Command::EvalChain { coeffs } => {
            let chain: Chain = coeffs.parse()?;
            let m = chain_eval(&chain)?;
            let mut fields =
                json!({ "chain": chain.to_string(), "manifold": m.to_string(), "h1_order": m.h1_order().to_string() });
            if chain.coefficients().iter().all(|c| c.is_integer()) {
                fields["oracle_order"] = json!(chain_h1_oracle(&chain).abs().to_string());
            }
            output(fmt, m.to_string(), fields);
        }
        Command::LensHomeo { p, q, p2, q2, oriented } => {
            let (a, b) = (canonicalize(p, q)?, canonicalize(p2, q2)?);
            let mode = if oriented {
                Orientation::Oriented
            } else {
                Orientation::Unoriented
            };
            let same = a.is_homeomorphic(&b, mode);
            output(
                fmt,
                same.to_string(),
                json!({ "left": a.to_string(), "right": b.to_string(), "oriented": oriented, "homeomorphic": same }),
            );
        }
        Command::Family { which, m, r, s, b, k } => {
            let params = Params::parse(&m, &r, &s, &b, &k)?;
            let (name, result) = match which {
                Which::Y => ("Y", compute_y(&params)?),
                Which::Ystar => ("Y*", Some(compute_ystar(&params)?)),
            };
            let shown = result.as_ref().map_or_else(|| "none".to_string(), |m| m.to_string());
            output(
                fmt,
                shown.clone(),
                json!({ "family": name, "params": params.to_string(), "manifold": shown }),
            );
        }
        Command::Magic { a, b, c } => {
            let matches = magic_matches(&a, &b, &c)?;
            let first = matches
                .first()
                .map_or_else(|| "none".to_string(), |m| m.result.to_string());
            let list: Vec<_> = matches
                .iter()
                .map(|m| {
                    json!({
                        "pattern": format!("{:?}", m.pattern),
                        "args": m.args.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                        "result": m.result.to_string(),
                    })
                })
                .collect();
            output(fmt, first.clone(), json!({ "manifold": first, "matches": list }));
        }
        Command::Whitehead { a, b } => {
            let shown = whitehead_filling(&a, &b).map_or_else(|| "none".to_string(), |m| m.to_string());
            output(fmt, shown.clone(), json!({ "manifold": shown }));
        }
        Command::Cable { m, r, k } => {
            let x = cable_slope(&m, &r, &k)?;
            let kind = classify_cable(&x);
            output(
                fmt,
                format!("{x} {kind}"),
                json!({ "slope": x.to_string(), "space": kind.to_string() }),
            );
        }
        Command::Realizable { p, q, family } => {
            let family = match family {
                FamilyArg::F33 => LensFamily::F33,
                FamilyArg::F24 => LensFamily::F24,
            };
            let target = canonicalize(p, q)?;
            let witness = realizable_as(&target, family)?;
            let shown = witness
                .as_ref()
                .map_or_else(|| "none".to_string(), |(x, y)| format!("{x} {y}"));
            let w = witness.map(|(x, y)| json!([x.to_string(), y.to_string()]));
            output(fmt, shown, json!({ "target": target.to_string(), "witness": w }));
        }
        Command::Slopes {
            cusp,
            index,
            max_length,
        } => {
            let data = read(&cusp)?;
            let Some(shape) = data.cusps.get(index) else {
                bail!("cusp index {index} out of range ({} cusps)", data.cusps.len());
            };
            let slopes: Vec<String> = enumerate_short_slopes(shape, max_length)
                .iter()
                .map(|s| s.to_string())
                .collect();
            output(
                fmt,
                slopes.join("\n"),
                json!({ "cusp": index, "max_length": max_length, "slopes": slopes }),
            );
        }
        Command::Symmetry { data, multislope } => {
            let data = read(&data)?;
            let breaking = is_symmetry_breaking(&multislope, &data)?;
            output(
                fmt,
                breaking.to_string(),
                json!({ "multislope": multislope.to_string(), "symmetry_breaking": breaking }),
            );
        }
        Command::Certify { data, multislope } => {
            let data = read(&data)?;
            let ok = hk_certify(&multislope, &data.cusps)?;
            output(
                fmt,
                ok.to_string(),
                json!({ "multislope": multislope.to_string(), "hyperbolic_certified": ok }),
            );
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
