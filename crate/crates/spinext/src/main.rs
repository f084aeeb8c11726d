//! Command-line surface for the spin-structure computations, with
//! reproducible machine-readable output. Every invocation prints one
//! envelope: command, params, result payload, optional seed, version.

use std::collections::BTreeMap;
use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Deserialize;
use serde_json::{json, Value};

use spinext::error::Error;
use spinext::group::{
    enumerate_group, semidirect_index_check, Perm, PermGroupSpec, DEFAULT_GROUP_BUDGET,
    DEFAULT_STATE_BUDGET,
};
use spinext::surface::{
    self, count_formula, counting_bound_check, enumerate_spin, index_lower_bound_surface,
    no_extension_witness, parse_form, spin_orbit_with_budget, transitivity_witness,
};
use spinext::symplectic::SymplecticSpace;
use spinext::torus::{
    index_lower_bound_torus, t3_signature_gate, torus_generators, torus_orbit_with_budget,
    TorusSpin,
};

const BUDGET_ENV: &str = "SPINEXT_BUDGET";

#[derive(Parser)]
#[command(name = "spinext", version, about = "Spin structures on surfaces and tori over GF(2)")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Spin structures on the genus-g surface
    Surface {
        #[command(subcommand)]
        cmd: SurfaceCmd,
    },
    /// Quadratic refinements directly
    Quad {
        #[command(subcommand)]
        cmd: QuadCmd,
    },
    /// Spin structures on the p-torus
    Torus {
        #[command(subcommand)]
        cmd: TorusCmd,
    },
    /// Finite-group utilities
    Group {
        #[command(subcommand)]
        cmd: GroupCmd,
    },
    /// The symplectic group itself
    Sp {
        #[command(subcommand)]
        cmd: SpCmd,
    },
}

#[derive(Subcommand)]
enum SurfaceCmd {
    /// Bounding/unbounding counts, closed form and optional brute force
    Count {
        #[arg(short, long)]
        genus: usize,
        /// Enumerate all 2^{2g} refinements and compare with the formula
        #[arg(long)]
        brute_force: bool,
    },
    /// Orbit of a refinement under all transvection pullbacks
    Orbits {
        #[arg(short, long)]
        genus: usize,
        /// Seed refinement as a 2g-bit string (default: all zeros)
        #[arg(long)]
        form: Option<String>,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// An element of Sp(2g, Z2) fixing no bounding structure
    WitnessNoExtension {
        #[arg(short, long)]
        genus: usize,
        #[arg(long, default_value_t = surface::DEFAULT_WITNESS_SEED)]
        seed: u64,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Explicit symplectic map carrying one refinement to another
    Transitivity {
        #[arg(short, long)]
        genus: usize,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Extension-index lower bound attached to a refinement
    Index {
        #[arg(long)]
        form: String,
    },
}

#[derive(Subcommand)]
enum QuadCmd {
    /// Arf invariant by zero counting, with the basis-formula cross-check
    Arf {
        #[arg(long)]
        form: String,
    },
    /// Evaluate a refinement on a vector
    Eval {
        #[arg(long)]
        form: String,
        #[arg(long)]
        vec: String,
    },
    /// Symplectic normal form and the change of basis reaching it
    Reduce {
        #[arg(long)]
        form: String,
    },
}

#[derive(Subcommand)]
enum TorusCmd {
    /// Orbit of a spin structure under the mod-2 Dehn twists
    Orbit {
        #[arg(short = 'p', long)]
        dim: usize,
        /// Difference from the Lie structure as a p-bit string
        #[arg(long)]
        spin: String,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Extension-index lower bound for a torus spin structure
    Index {
        #[arg(short = 'p', long)]
        dim: usize,
        #[arg(long)]
        spin: String,
    },
    /// Seifert-hypersurface signature gate for T^3
    T3Gate {
        #[arg(long)]
        signature: i64,
    },
    /// The p(p-1) mod-2 Dehn twist matrices
    Generators {
        #[arg(short = 'p', long)]
        dim: usize,
    },
}

#[derive(Subcommand)]
enum GroupCmd {
    /// Verify the semidirect index inequality on a decomposition file
    CheckSemidirect(CheckSemidirectArgs),
}

#[derive(Args)]
struct CheckSemidirectArgs {
    /// JSON file with degree and generator lists for n, h, g, ambient;
    /// "-" reads stdin
    #[arg(long)]
    input: String,
    #[arg(long)]
    budget: Option<usize>,
}

#[derive(Subcommand)]
enum SpCmd {
    /// |Sp(2g, Z2)| via a point-stabilizer chain
    Order {
        #[arg(short, long)]
        genus: usize,
    },
}

#[derive(Deserialize)]
struct DecompositionInput {
    degree: usize,
    n: Vec<Vec<usize>>,
    h: Vec<Vec<usize>>,
    g: Vec<Vec<usize>>,
    ambient: Vec<Vec<usize>>,
}

struct Report {
    command: String,
    params: BTreeMap<String, String>,
    result: Value,
    seed: Option<u64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(report) => {
            print!("{}", render(&report, cli.format));
            ExitCode::SUCCESS
        }
        Err(err) => {
            let kind = match err {
                Error::BadBitString(_)
                | Error::BadPermutation(_)
                | Error::OutOfRange { .. }
                | Error::DimensionMismatch { .. } => "usage",
                _ => "computation",
            };
            eprintln!("{}", json!({ "error": err.to_string(), "kind": kind }));
            if kind == "usage" {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn run(command: &Command) -> Result<Report, Error> {
    match command {
        Command::Surface { cmd } => run_surface(cmd),
        Command::Quad { cmd } => run_quad(cmd),
        Command::Torus { cmd } => run_torus(cmd),
        Command::Group { cmd } => run_group(cmd),
        Command::Sp { cmd } => run_sp(cmd),
    }
}

fn run_surface(cmd: &SurfaceCmd) -> Result<Report, Error> {
    match cmd {
        SurfaceCmd::Count { genus, brute_force } => {
            let (formula_b, formula_u) = checked_formula(*genus)?;
            let (b, u, matches) = if *brute_force {
                let p = enumerate_spin(*genus)?;
                let b = BigUint::from(p.bounding.len());
                let u = BigUint::from(p.unbounding.len());
                let matches = b == formula_b && u == formula_u;
                (b, u, matches)
            } else {
                (formula_b.clone(), formula_u.clone(), true)
            };
            Ok(Report {
                command: "surface count".into(),
                params: params([
                    ("genus", genus.to_string()),
                    ("brute_force", brute_force.to_string()),
                ]),
                result: json!({
                    "g": genus,
                    "b": big(&b),
                    "u": big(&u),
                    "formula_b": big(&formula_b),
                    "formula_u": big(&formula_u),
                    "match": matches,
                }),
                seed: None,
            })
        }
        SurfaceCmd::Orbits {
            genus,
            form,
            budget,
        } => {
            let seed_form = match form {
                Some(bits) => parse_form(bits, Some(*genus))?,
                None => surface::bounding_seed(*genus),
            };
            let orbit = spin_orbit_with_budget(*genus, &seed_form, resolve_budget(*budget))?;
            let points: Vec<String> = orbit
                .points
                .iter()
                .map(|f| f.basis_values().to_bit_string())
                .collect();
            Ok(Report {
                command: "surface orbits".into(),
                params: params([
                    ("genus", genus.to_string()),
                    ("form", seed_form.basis_values().to_bit_string()),
                ]),
                result: json!({
                    "seed": seed_form.basis_values().to_bit_string(),
                    "size": orbit.size,
                    "generator_count": orbit.generator_count,
                    "points": points,
                }),
                seed: None,
            })
        }
        SurfaceCmd::WitnessNoExtension {
            genus,
            seed,
            budget,
        } => {
            let attempts = budget
                .or_else(env_budget)
                .unwrap_or(surface::DEFAULT_WITNESS_ATTEMPTS);
            let witness = no_extension_witness(*genus, *seed, attempts)?;
            let bound = counting_bound_check(*genus)?;
            Ok(Report {
                command: "surface witness-no-extension".into(),
                params: params([("genus", genus.to_string())]),
                result: json!({
                    "g": genus,
                    "matrix": witness.element.matrix().to_bit_strings(),
                    "fixed_bounding_count": 0,
                    "attempts": witness.attempts,
                    "seed": witness.seed,
                    "counting_bound": {
                        "lhs": big(&bound.lhs),
                        "group_order": big(&bound.order),
                        "ok": bound.ok,
                    },
                }),
                seed: witness.seed,
            })
        }
        SurfaceCmd::Transitivity { genus, from, to } => {
            let q1 = parse_form(from, Some(*genus))?;
            let q2 = parse_form(to, Some(*genus))?;
            let witness = transitivity_witness(&q1, &q2)?;
            Ok(Report {
                command: "surface transitivity".into(),
                params: params([
                    ("genus", genus.to_string()),
                    ("from", from.clone()),
                    ("to", to.clone()),
                ]),
                result: json!({
                    "from": from,
                    "to": to,
                    "matrix": witness.matrix().to_bit_strings(),
                    "verified": q1.pullback(&witness)? == q2,
                }),
                seed: None,
            })
        }
        SurfaceCmd::Index { form } => {
            let q = parse_form(form, None)?;
            let bound = index_lower_bound_surface(&q);
            Ok(Report {
                command: "surface index".into(),
                params: params([("form", form.clone())]),
                result: json!({
                    "g": q.genus(),
                    "arf": q.arf() as u8,
                    "bound": big(&bound),
                }),
                seed: None,
            })
        }
    }
}

fn run_quad(cmd: &QuadCmd) -> Result<Report, Error> {
    match cmd {
        QuadCmd::Arf { form } => {
            let q = parse_form(form, None)?;
            Ok(Report {
                command: "quad arf".into(),
                params: params([("form", form.clone())]),
                result: json!({
                    "g": q.genus(),
                    "form": form,
                    "arf": q.arf() as u8,
                    "zero_count": q.zero_count(),
                }),
                seed: None,
            })
        }
        QuadCmd::Eval { form, vec } => {
            let q = parse_form(form, None)?;
            let x: spinext::F2Vec = vec.parse()?;
            let value = q.eval(&x)?;
            Ok(Report {
                command: "quad eval".into(),
                params: params([("form", form.clone()), ("vec", vec.clone())]),
                result: json!({ "value": value as u8 }),
                seed: None,
            })
        }
        QuadCmd::Reduce { form } => {
            let q = parse_form(form, None)?;
            let (m, s) = q.reduce_to_standard();
            Ok(Report {
                command: "quad reduce".into(),
                params: params([("form", form.clone())]),
                result: json!({
                    "matrix": m.matrix().to_bit_strings(),
                    "standard": s.basis_values().to_bit_string(),
                    "verified": s.pullback(&m)? == q,
                }),
                seed: None,
            })
        }
    }
}

fn run_torus(cmd: &TorusCmd) -> Result<Report, Error> {
    match cmd {
        TorusCmd::Orbit { dim, spin, budget } => {
            let s = parse_spin(spin, *dim)?;
            let orbit = torus_orbit_with_budget(*dim, &s, resolve_budget(*budget))?;
            let points: Vec<String> =
                orbit.points.iter().map(|t| t.diff().to_bit_string()).collect();
            Ok(Report {
                command: "torus orbit".into(),
                params: params([("dim", dim.to_string()), ("spin", spin.clone())]),
                result: json!({
                    "p": dim,
                    "spin": spin,
                    "size": orbit.size,
                    "points": points,
                }),
                seed: None,
            })
        }
        TorusCmd::Index { dim, spin } => {
            let s = parse_spin(spin, *dim)?;
            Ok(Report {
                command: "torus index".into(),
                params: params([("dim", dim.to_string()), ("spin", spin.clone())]),
                result: json!({
                    "p": dim,
                    "lie": s.is_lie(),
                    "bound": index_lower_bound_torus(&s),
                }),
                seed: None,
            })
        }
        TorusCmd::T3Gate { signature } => {
            let verdict = t3_signature_gate(*signature);
            Ok(Report {
                command: "torus t3-gate".into(),
                params: params([("signature", signature.to_string())]),
                result: json!({
                    "tag": verdict.tag(),
                    "bound": verdict.bound(),
                }),
                seed: None,
            })
        }
        TorusCmd::Generators { dim } => {
            let gens: Vec<Value> = torus_generators(*dim)
                .into_iter()
                .map(|(i, j, m)| json!({ "i": i, "j": j, "matrix": m.to_bit_strings() }))
                .collect();
            Ok(Report {
                command: "torus generators".into(),
                params: params([("dim", dim.to_string())]),
                result: json!({ "p": dim, "generators": gens }),
                seed: None,
            })
        }
    }
}

fn run_group(cmd: &GroupCmd) -> Result<Report, Error> {
    let GroupCmd::CheckSemidirect(args) = cmd;
    let text = if args.input == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::BadPermutation(e.to_string()))?;
        buf
    } else {
        std::fs::read_to_string(&args.input)
            .map_err(|e| Error::BadPermutation(format!("{}: {e}", args.input)))?
    };
    let input: DecompositionInput =
        serde_json::from_str(&text).map_err(|e| Error::BadPermutation(e.to_string()))?;
    let budget = args
        .budget
        .or_else(env_budget)
        .unwrap_or(DEFAULT_GROUP_BUDGET);
    let spec = |gens: &[Vec<usize>]| -> Result<PermGroupSpec, Error> {
        PermGroupSpec::new(
            input.degree,
            gens.iter()
                .map(|g| Perm::new(g.clone()))
                .collect::<Result<_, _>>()?,
        )
    };
    let (n, h, g, ambient) = (
        spec(&input.n)?,
        spec(&input.h)?,
        spec(&input.g)?,
        spec(&input.ambient)?,
    );
    let check = semidirect_index_check(&n, &h, &g, &ambient, budget)?;
    let ambient_order = enumerate_group(&ambient, budget)?.len();
    Ok(Report {
        command: "group check-semidirect".into(),
        params: params([("input", args.input.clone())]),
        result: json!({
            "ambient_order": ambient_order,
            "lhs": check.lhs,
            "rhs": check.rhs,
            "ok": check.ok,
        }),
        seed: None,
    })
}

fn run_sp(cmd: &SpCmd) -> Result<Report, Error> {
    let SpCmd::Order { genus } = cmd;
    if *genus < 1 || *genus > surface::G_MAX {
        return Err(Error::OutOfRange {
            what: "genus",
            value: *genus,
            max: surface::G_MAX,
        });
    }
    let order = SymplecticSpace::new(*genus).group_order();
    Ok(Report {
        command: "sp order".into(),
        params: params([("genus", genus.to_string())]),
        result: json!({ "g": genus, "order": big(&order) }),
        seed: None,
    })
}

fn checked_formula(g: usize) -> Result<(BigUint, BigUint), Error> {
    if g < 1 {
        return Err(Error::OutOfRange {
            what: "genus",
            value: g,
            max: usize::MAX,
        });
    }
    Ok(count_formula(g))
}

fn parse_spin(bits: &str, p: usize) -> Result<TorusSpin, Error> {
    let s = TorusSpin::from_bit_string(bits)?;
    if s.dim() != p {
        return Err(Error::DimensionMismatch {
            expected: p,
            got: s.dim(),
        });
    }
    Ok(s)
}

fn params<const N: usize>(pairs: [(&str, String); N]) -> BTreeMap<String, String> {
    pairs
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect()
}

fn resolve_budget(flag: Option<usize>) -> usize {
    flag.or_else(env_budget).unwrap_or(DEFAULT_STATE_BUDGET)
}

fn env_budget() -> Option<usize> {
    std::env::var(BUDGET_ENV).ok()?.parse().ok()
}

/// Numbers that fit in u64 are emitted as JSON numbers, larger ones as strings.
fn big(n: &BigUint) -> Value {
    match u64::try_from(n.clone()) {
        Ok(v) => Value::from(v),
        Err(_) => Value::String(n.to_string()),
    }
}

fn envelope(report: &Report) -> Value {
    json!({
        "command": report.command,
        "params": report.params,
        "result": report.result,
        "seed": report.seed,
        "tool_version": env!("CARGO_PKG_VERSION"),
    })
}

fn render(report: &Report, format: Format) -> String {
    let env = envelope(report);
    match format {
        Format::Json => format!("{env}\n"),
        Format::Csv => {
            let flat = flatten(&env);
            let header: Vec<String> = flat.iter().map(|(k, _)| csv_cell(k)).collect();
            let row: Vec<String> = flat.iter().map(|(_, v)| csv_cell(v)).collect();
            format!("{}\n{}\n", header.join(","), row.join(","))
        }
        Format::Table => {
            let flat = flatten(&env);
            let width = flat.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            let mut out = String::new();
            for (k, v) in flat {
                out.push_str(&format!("{k:<width$}  {v}\n"));
            }
            out
        }
    }
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Dotted-key flattening; scalar arrays join with ';', anything else
/// is embedded as compact JSON.
fn flatten(value: &Value) -> Vec<(String, String)> {
    let mut out = Vec::new();
    flatten_into("", value, &mut out);
    out
}

fn flatten_into(prefix: &str, value: &Value, out: &mut Vec<(String, String)>) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten_into(&key, v, out);
            }
        }
        Value::Array(items) if items.iter().all(|v| !v.is_object() && !v.is_array()) => {
            let joined: Vec<String> = items.iter().map(scalar_text).collect();
            out.push((prefix.to_string(), joined.join(";")));
        }
        Value::Array(_) => out.push((prefix.to_string(), value.to_string())),
        _ => out.push((prefix.to_string(), scalar_text(value))),
    }
}

fn scalar_text(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
