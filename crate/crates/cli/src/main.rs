use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use dqm::config::{field_from_parts, parse_field_config, parse_modulus};
use dqm::expr::{parse_qm, parse_rat, qm_to_json, series_to_json};
use dqm::hyperd::{kernel_on_modular, DerivationEngine, Generator};
use dqm::qmring::{grading, qm_basis, Grading, QmPoly};
use dqm::tseries::evaluate;
use dqm::verify::suites::{self, CheckRecord, DEFAULT_SEED, MAIN_FIELDS};
use dqm::verify::{check_hyperstable, IdealId};
use dqm::{Error, FieldConfig};

/// Divided derivatives of Drinfeld quasi-modular forms, exactly.
#[derive(Parser, Debug)]
#[command(name = "dqm", version, about)]
struct Cli {
    #[command(flatten)]
    field: FieldArgs,

    /// Truncation order of t-expansions (default q^2 + q + 2).
    #[arg(long, global = true)]
    order: Option<usize>,

    /// Largest order tested by `ideal` and `verify`.
    #[arg(long, global = true, default_value_t = 64)]
    n_max: u64,

    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,

    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct FieldArgs {
    /// Characteristic.
    #[arg(long, global = true)]
    p: Option<u32>,
    /// Degree of F_q over F_p.
    #[arg(long, global = true)]
    e: Option<u32>,
    /// Field size; selects the default modulus.
    #[arg(long, global = true)]
    q: Option<u32>,
    /// Coefficients of the defining polynomial of F_q over F_p, low to high, e.g. "1 0 1".
    #[arg(long, global = true)]
    modulus: Option<String>,
    /// File with `p`, `e`, `q`, `modulus` lines.
    #[arg(long, global = true, conflicts_with_all = ["p", "e", "q", "modulus"])]
    field: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print D_n of an expression in E, g, h.
    Derive {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        n: u64,
    },
    /// Print the t-expansion of an expression.
    Expand {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        order: Option<usize>,
    },
    /// Monomials E^a g^b h^c of weight w, type m and depth at most l.
    Basis { w: u64, m: u32, l: u32 },
    /// Modular forms of weight w and type m killed by D_1, D_p, ..., D_{p^k}.
    Kernel { w: u64, m: u32, k: u32 },
    /// Check that D_n maps an ideal into itself for n <= --n-max.
    Ideal {
        #[arg(value_enum, ignore_case = true)]
        ideal: IdealKind,
        /// The parameter d of Pd, as an expression in T.
        #[arg(long)]
        d: Option<String>,
        /// The parameter c of MaxC, as an expression in T.
        #[arg(long)]
        c: Option<String>,
    },
    /// Run the checking suites; exit status 0 iff all checks pass.
    Verify {
        #[arg(value_enum, ignore_case = true, default_value_t = Suite::All)]
        suite: Suite,
        /// Randomized cases for the property suite.
        #[arg(long, default_value_t = 1000)]
        cases: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum IdealKind {
    /// (h)
    H,
    /// (E, h)
    P0,
    /// (g, h)
    Pinf,
    /// (h, E^{q-1} - d g)
    Pd,
    /// (E, g - c, h)
    #[value(name = "maxc")]
    MaxC,
    /// (E)
    E,
    /// (g)
    G,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    All,
    ClosedForms,
    Series,
    LeadingTerms,
    Properties,
    Ideals,
    Congruence,
    Kernels,
    HPowers,
}

fn resolve_field(args: &FieldArgs) -> Result<Option<FieldConfig>, Error> {
    if let Some(path) = &args.field {
        let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidField(format!("{}: {e}", path.display())))?;
        return parse_field_config(&text).map(Some);
    }
    if args.p.is_none() && args.e.is_none() && args.q.is_none() && args.modulus.is_none() {
        return Ok(None);
    }
    let modulus = args.modulus.as_deref().map(parse_modulus).transpose()?;
    field_from_parts(args.p, args.e, args.q, modulus).map(Some)
}

fn default_field() -> FieldConfig {
    FieldConfig::for_q(5).expect("F_5 exists")
}

fn field_json(f: FieldConfig) -> Value {
    json!({ "p": f.p(), "e": f.e(), "q": f.q(), "modulus": f.modulus() })
}

fn grading_text(x: &QmPoly) -> String {
    match grading(x) {
        Ok(Grading::Zero) => "zero".into(),
        Ok(Grading::Isobaric(s)) => format!("weight {}, type {}, depth {}", s.weight, s.typ, s.depth),
        Err(_) => "not isobaric".into(),
    }
}

fn grading_json(x: &QmPoly) -> Value {
    match grading(x) {
        Ok(Grading::Isobaric(s)) => serde_json::to_value(s).expect("serializable"),
        Ok(Grading::Zero) => json!("zero"),
        Err(_) => Value::Null,
    }
}

fn emit(json_out: bool, value: Value, text: String) {
    if json_out {
        println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
    } else {
        println!("{text}");
    }
}

fn run(cli: Cli) -> Result<bool, Error> {
    let chosen = resolve_field(&cli.field)?;
    let f = chosen.unwrap_or_else(default_field);
    let order = cli.order.unwrap_or_else(|| suites::default_order(f.q()));
    match cli.command {
        Command::Derive { expr, n } => {
            let x = parse_qm(f, &expr)?;
            let d = DerivationEngine::new(f).derive(&x, n)?;
            let value = json!({
                "field": field_json(f),
                "input": expr,
                "n": n,
                "result": qm_to_json(&d),
                "text": d.to_string(),
                "grading": grading_json(&d),
            });
            emit(cli.json, value, format!("{d}\n# {}", grading_text(&d)));
            Ok(true)
        }
        Command::Expand { expr, order: local } => {
            let x = parse_qm(f, &expr)?;
            let s = evaluate(&x, f, local.unwrap_or(order));
            let value = json!({ "field": field_json(f), "input": expr, "series": series_to_json(&s) });
            emit(cli.json, value, s.to_string());
            Ok(true)
        }
        Command::Basis { w, m, l } => {
            let basis = qm_basis(w, m, l, f);
            let value = json!({
                "field": field_json(f),
                "weight": w, "type": m, "depth": l,
                "basis": basis.iter().map(|b| [b.e, b.g, b.h]).collect::<Vec<_>>(),
            });
            let text = basis.iter().map(|b| b.to_string()).collect::<Vec<_>>().join("\n");
            emit(cli.json, value, text);
            Ok(true)
        }
        Command::Kernel { w, m, k } => {
            let ker = kernel_on_modular(&mut DerivationEngine::new(f), w, m, k)?;
            let value = json!({
                "field": field_json(f),
                "weight": w, "type": m, "k": k,
                "kernel": ker.iter().map(qm_to_json).collect::<Vec<_>>(),
            });
            let text = ker.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("\n");
            emit(cli.json, value, text);
            Ok(true)
        }
        Command::Ideal { ideal, d, c } => {
            let param = |s: Option<String>, name: &str| -> Result<dqm::RatT, Error> {
                let s = s.ok_or_else(|| Error::Parse { pos: 0, msg: format!("--{name} is required for this ideal") })?;
                parse_rat(f, &s)
            };
            let id = match ideal {
                IdealKind::H => IdealId::PrincipalH,
                IdealKind::P0 => IdealId::P0,
                IdealKind::Pinf => IdealId::Pinf,
                IdealKind::Pd => {
                    let d = param(d, "d")?;
                    if d.is_zero() {
                        return Err(Error::DivisionByZero);
                    }
                    IdealId::Pd(d)
                }
                IdealKind::MaxC => IdealId::MaxC(param(c, "c")?),
                IdealKind::E => IdealId::Principal(Generator::E),
                IdealKind::G => IdealId::Principal(Generator::G),
            };
            let mut engine = DerivationEngine::new(f);
            let n_max = cli.n_max.min(engine.limit());
            let report = check_hyperstable(&mut engine, &id, n_max)?;
            let pass = report.pass();
            let mut text = vec![format!("{} {} up to n = {n_max}", if pass { "PASS" } else { "FAIL" }, report.ideal)];
            for g in &report.generators {
                match (&g.failed_at, &g.witness) {
                    (Some(n), Some(w)) => text.push(format!("  {}: leaves the ideal at n = {n}, residue {w}", g.generator)),
                    _ => text.push(format!("  {}: stays in the ideal", g.generator)),
                }
            }
            let value = json!({ "field": field_json(f), "pass": pass, "report": report });
            emit(cli.json, value, text.join("\n"));
            Ok(pass)
        }
        Command::Verify { suite, cases } => {
            let fields: Vec<u32> = match chosen {
                Some(f) => vec![f.q()],
                None => MAIN_FIELDS.to_vec(),
            };
            let records = run_suites(suite, &fields, cli.order, cli.n_max, cases, cli.seed);
            let pass = records.iter().all(|r| r.pass);
            let text = records.iter().map(CheckRecord::line).chain([summary(&records)]).collect::<Vec<_>>().join("\n");
            let value = json!({ "pass": pass, "seed": cli.seed, "checks": records });
            emit(cli.json, value, text);
            Ok(pass)
        }
    }
}

fn summary(records: &[CheckRecord]) -> String {
    let passed = records.iter().filter(|r| r.pass).count();
    format!("{passed} of {} checks passed", records.len())
}

fn run_suites(suite: Suite, fields: &[u32], order: Option<usize>, n_max: u64, cases: usize, seed: u64) -> Vec<CheckRecord> {
    let want = |s: Suite| suite == Suite::All || suite == s;
    let mut out = Vec::new();
    let per_field = |run: &dyn Fn(u32) -> Vec<CheckRecord>| fields.iter().flat_map(|&q| run(q)).collect::<Vec<_>>();
    if want(Suite::ClosedForms) {
        out.extend(per_field(&suites::golden_tables));
    }
    if want(Suite::Series) {
        out.extend(per_field(&|q| suites::series_cross_validation(q, order.unwrap_or_else(|| suites::default_order(q)))));
    }
    if want(Suite::LeadingTerms) {
        out.extend(per_field(&suites::expansion_leading_terms));
    }
    if want(Suite::Properties) {
        out.extend(suites::property_suites(fields, cases, seed));
    }
    if want(Suite::Ideals) {
        out.extend(per_field(&|q| suites::ideal_classification(q, n_max, seed)));
    }
    if want(Suite::Congruence) {
        out.extend(per_field(&|q| suites::munu_suite(q, 6, 32)));
    }
    if want(Suite::Kernels) {
        let kernel_fields: Vec<u32> = if fields == MAIN_FIELDS { vec![4, 5] } else { fields.to_vec() };
        out.extend(kernel_fields.iter().flat_map(|&q| suites::kernel_suite(q, &[0, 1], seed)));
    }
    if want(Suite::HPowers) {
        out.extend(per_field(&|q| suites::h_power_suite(q, 5, n_max)));
    }
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
