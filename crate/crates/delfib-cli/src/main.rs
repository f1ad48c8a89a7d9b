//! Command-line surface over the `delfib` library.
//!
//! Every subcommand emits one machine-readable envelope
//! `{command, parameters, precision_digits, results, artifact_version}` as
//! JSON (default) or as flattened `key,value` CSV.  Arbitrary-size integers
//! are rendered as decimal strings.  Exit codes: 0 success, 1 verification
//! failure, 2 usage error, 3 precision or enumeration-cap error.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use delfib::ap::{Complex, PrecisionContext, Real};
use delfib::characteristic::{
    binet_eval, fib_coefficients, gib_coefficients, golden_roots, plastic_roots, quartic_roots,
    CoeffMethod,
};
use delfib::sequences::{Family, RecurrenceSpec, Term};
use delfib::{asymptotics, combinatorics, intertwine, Error, VerificationReport};
use num_traits::One;
use serde_json::{json, Value};

const BUNDLED_TABLES: &str = include_str!("../../delfib/fixtures/tables.txt");

#[derive(Parser)]
#[command(name = "delfib", version, about = "Delayed Fibonacci sequence toolkit")]
struct Cli {
    /// Decimal digits of working precision for real-valued output.
    #[arg(long, global = true, default_value_t = 50)]
    digits: u32,
    /// Output format for the result envelope.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Path to a chain-structure fixture overriding the bundled tables.
    #[arg(long, global = true)]
    seed_fixtures: Option<std::path::PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    /// Undelayed Fibonacci, F_n = F_{n-1} + F_{n-2}.
    F,
    /// One-step delayed, G_n = G_{n-2} + G_{n-3}.
    G,
    /// Doubly delayed, H_n = H_{n-3} + H_{n-4}.
    H,
}

#[derive(Clone, Copy, ValueEnum)]
enum RootSet {
    Quadratic,
    Cubic,
    Quartic,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    ClosedForm,
    LinearSolve,
}

#[derive(Clone, Copy, ValueEnum)]
enum Report {
    Ratio,
    Mystery,
    Alignment,
}

#[derive(Subcommand)]
enum Command {
    /// Print exact sequence terms over an index range.
    Seq {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Delay parameter selecting the higher family F^(ell) instead of F.
        #[arg(long)]
        ell: Option<usize>,
        /// Override the initial terms (comma-separated integers or p/q).
        #[arg(long)]
        initial: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        from: i64,
        #[arg(long, allow_hyphen_values = true)]
        to: i64,
    },
    /// Characteristic roots of the quadratic, cubic or quartic equation.
    Roots {
        #[arg(long, value_enum)]
        set: RootSet,
    },
    /// Binet-style coefficients for F or G.
    Coeffs {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, value_enum, default_value_t = Method::ClosedForm)]
        method: Method,
    },
    /// Bracket position of F_n among the G values.
    Rank {
        #[arg(long)]
        n: u64,
    },
    /// Stage decomposition of one residue row (or all rows).
    Breakpoints {
        /// Residue row 0..6, or "all".
        #[arg(long, default_value = "all")]
        row: String,
        #[arg(long, default_value_t = 200)]
        k_max: u64,
    },
    /// Run the bundled verification suite; exits 1 on any failed check.
    Verify {
        #[arg(long, default_value_t = 100)]
        k_max: u64,
    },
    /// Enumerate or count the chain structures of length `length`.
    Chains {
        #[arg(long)]
        ell: u32,
        #[arg(long)]
        length: u64,
        /// Report the count only, bypassing the enumeration cap.
        #[arg(long)]
        count_only: bool,
        #[arg(long, default_value_t = combinatorics::DEFAULT_ENUM_CAP)]
        cap: u64,
    },
    /// Growth-ratio, logarithmic-quotient or alignment reports.
    Asymptotics {
        #[arg(long, value_enum)]
        report: Report,
        /// Alignment index M (required for --report alignment).
        #[arg(long)]
        m: Option<u64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let digits = cli.digits;
    match run(&cli) {
        Ok((name, parameters, results, ok)) => {
            let envelope = json!({
                "command": name,
                "parameters": parameters,
                "precision_digits": digits,
                "results": results,
                "artifact_version": delfib::ARTIFACT_VERSION,
            });
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&envelope).unwrap()),
                Format::Csv => print_csv(&envelope),
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::DigitsTooLow(_)
        | Error::InsufficientPrecision { .. }
        | Error::CapExceeded { .. }
        | Error::NoConvergence(_) => 3,
        Error::InvalidSpec(_) | Error::EmptyRange { .. } | Error::Fixture(_) => 2,
    }
}

type Outcome = (String, Value, Value, bool);

fn run(cli: &Cli) -> delfib::Result<Outcome> {
    let ctx = PrecisionContext::new(cli.digits)?;
    let digits = cli.digits;
    match &cli.command {
        Command::Seq { family, ell, initial, from, to } => {
            let mut spec = match (family, ell) {
                (FamilyArg::F, None) => RecurrenceSpec::fibonacci(),
                (FamilyArg::F, Some(l)) => RecurrenceSpec::higher(*l)?,
                (FamilyArg::G, None) => RecurrenceSpec::gibonacci(),
                (FamilyArg::H, None) => RecurrenceSpec::double_delayed(),
                _ => {
                    return Err(Error::InvalidSpec(
                        "--ell applies only to --family f".into(),
                    ))
                }
            };
            if let Some(text) = initial {
                spec = spec.with_initial(parse_initial(text)?)?;
            }
            let terms: Vec<Value> =
                spec.stream(*from, *to)?.iter().map(|t| Value::from(term_string(t))).collect();
            let params = json!({
                "family": family_name(*family),
                "ell": ell.map(|l| l as u64),
                "initial": initial,
                "from": from,
                "to": to,
            });
            Ok(("seq".into(), params, json!({ "terms": terms }), true))
        }
        Command::Roots { set } => {
            let results = match set {
                RootSet::Quadratic => {
                    let r = golden_roots(&ctx);
                    json!({
                        "eta_a": dec(&r.eta_a, digits),
                        "eta_b": dec(&r.eta_b, digits),
                    })
                }
                RootSet::Cubic => {
                    let r = plastic_roots(&ctx);
                    json!({
                        "x0": dec(&r.x0, digits),
                        "d_plus": dec(&r.d_plus, digits),
                        "d_minus": dec(&r.d_minus, digits),
                        "rho_a": dec(&r.rho_a, digits),
                        "rho_d": dec(&r.rho_d, digits),
                        "rho_b": cdec(&r.rho_b, digits),
                        "rho_c": cdec(&r.rho_c, digits),
                    })
                }
                RootSet::Quartic => {
                    let r = quartic_roots(&ctx)?;
                    json!({
                        "real_roots": [dec(&r.real_roots[0], digits), dec(&r.real_roots[1], digits)],
                        "tau_plus": cdec(&r.tau_plus, digits),
                        "tau_minus": cdec(&r.tau_minus, digits),
                    })
                }
            };
            let params = json!({ "set": set_name(*set) });
            Ok(("roots".into(), params, results, true))
        }
        Command::Coeffs { family, method } => {
            let results = match family {
                FamilyArg::F => {
                    let c = fib_coefficients(&ctx);
                    json!({ "a": dec(&c.a, digits), "b": dec(&c.b, digits) })
                }
                FamilyArg::G => {
                    let m = match method {
                        Method::ClosedForm => CoeffMethod::ClosedForm,
                        Method::LinearSolve => CoeffMethod::LinearSolve,
                    };
                    let c = gib_coefficients(&ctx, m);
                    json!({
                        "a": dec(&c.a_coeff, digits),
                        "k": dec(&c.k, digits),
                        "l": dec(&c.l, digits),
                        "sigma": dec(&c.sigma, digits),
                        "delta": dec(&c.delta, digits),
                        "b": cdec(&c.b(), digits),
                        "c": cdec(&c.c(), digits),
                    })
                }
                FamilyArg::H => {
                    return Err(Error::InvalidSpec(
                        "coefficients are available for families f and g".into(),
                    ))
                }
            };
            let params = json!({
                "family": family_name(*family),
                "method": method_name(*method),
            });
            Ok(("coeffs".into(), params, results, true))
        }
        Command::Rank { n } => {
            let r = intertwine::rank(*n);
            let (lo, hi) = r.bracket_range();
            let results = json!({
                "n": r.n,
                "lower_m": r.lower_m,
                "tie_above": r.tie_above,
                "tie_below": r.tie_below,
                "tie_count": r.tie_count,
                "bracket": [lo, hi],
            });
            Ok(("rank".into(), json!({ "n": n }), results, true))
        }
        Command::Breakpoints { row, k_max } => {
            let rows: Vec<u32> = if row == "all" {
                (0..7).collect()
            } else {
                let r: u32 = row
                    .parse()
                    .map_err(|_| Error::InvalidSpec(format!("row must be 0..6 or all, got {row}")))?;
                if r > 6 {
                    return Err(Error::InvalidSpec(format!("row must be 0..6, got {r}")));
                }
                vec![r]
            };
            let mut records = Vec::new();
            for r in rows {
                for b in intertwine::scan_breakpoints(r, *k_max) {
                    records.push(json!({
                        "row": b.row,
                        "stage": b.stage,
                        "k_start": b.k_start,
                        "k_end": b.k_end,
                        "offset": b.offset,
                    }));
                }
            }
            let params = json!({ "row": row, "k_max": k_max });
            Ok(("breakpoints".into(), params, json!({ "stages": records }), true))
        }
        Command::Verify { k_max } => {
            let mut report = intertwine::verify_stage_tables(*k_max);
            for ell in 1..=3 {
                report.merge(combinatorics::identity_check(ell, 60));
            }
            let fixture_text = match &cli.seed_fixtures {
                Some(path) => std::fs::read_to_string(path)
                    .map_err(|e| Error::Fixture(format!("{}: {e}", path.display())))?,
                None => BUNDLED_TABLES.to_string(),
            };
            report.merge(combinatorics::verify_fixture(&fixture_text)?);
            report.merge(binet_cross_check(&ctx)?);
            let checks: Vec<Value> = report
                .checks()
                .iter()
                .map(|c| json!({ "name": c.name, "pass": c.pass, "detail": c.detail }))
                .collect();
            let ok = report.passed();
            let params = json!({ "k_max": k_max });
            let results = json!({ "checks": checks, "passed": ok });
            Ok(("verify".into(), params, results, ok))
        }
        Command::Chains { ell, length, count_only, cap } => {
            let count = combinatorics::binomial_sum(*ell as u64, *length);
            let results = if *count_only {
                json!({ "count": count.to_string() })
            } else {
                let chains = combinatorics::enumerate_chains_with_cap(*ell, *length, *cap)?;
                let structures: Vec<String> =
                    chains.iter().map(|c| c.symbols()).collect();
                json!({ "count": count.to_string(), "structures": structures })
            };
            let params = json!({
                "ell": ell,
                "length": length,
                "count_only": count_only,
                "cap": cap,
            });
            Ok(("chains".into(), params, results, true))
        }
        Command::Asymptotics { report, m } => {
            let results = match report {
                Report::Ratio => {
                    let r = asymptotics::log_ratio(&ctx)?;
                    json!({
                        "ratio": dec(&r.ratio, digits),
                        "partials": r.partials.iter().map(|p| dec(p, digits)).collect::<Vec<_>>(),
                        "residuals": r.residuals.iter().map(|p| dec(p, digits)).collect::<Vec<_>>(),
                    })
                }
                Report::Mystery => {
                    let r = asymptotics::mystery_quotient(&ctx)?;
                    json!({
                        "log_quotient": dec(&r.log_quotient, digits),
                        "approx_value": dec(&r.approx_value, digits),
                        "rho5_relative_error": dec(&r.rho5_relative_error, digits),
                    })
                }
                Report::Alignment => {
                    let m = m.ok_or_else(|| {
                        Error::InvalidSpec("--report alignment requires --m".into())
                    })?;
                    let s = asymptotics::growth_alignment(m, &ctx);
                    json!({
                        "m": s.m,
                        "n": s.n,
                        "g_m": s.g_m.to_string(),
                        "f_n": s.f_n.to_string(),
                        "log_gap": dec(&s.log_gap, digits),
                    })
                }
            };
            let params = json!({ "report": report_name(*report), "m": m });
            Ok(("asymptotics".into(), params, results, true))
        }
    }
}

fn binet_cross_check(ctx: &PrecisionContext) -> delfib::Result<VerificationReport> {
    let mut report = VerificationReport::new();
    for family in [Family::F, Family::G] {
        let spec = family.spec();
        for n in [0u64, 1, 5, 10, 25, 50] {
            let (rounded, residual) = binet_eval(family, n, ctx)?;
            let exact = spec.natural_term(n as i64);
            let pass = rounded == exact && residual.abs() < ctx.tolerance();
            report.record(
                format!("binet {family:?} n={n}"),
                pass,
                format!("rounded {rounded} vs exact {exact}"),
            );
        }
    }
    Ok(report)
}

fn parse_initial(text: &str) -> delfib::Result<Vec<Term>> {
    text.split(',')
        .map(|piece| {
            let piece = piece.trim();
            let parse_int = |s: &str| {
                s.parse::<i64>()
                    .map_err(|_| Error::InvalidSpec(format!("bad initial term {piece:?}")))
            };
            match piece.split_once('/') {
                Some((num, den)) => {
                    let den = parse_int(den)?;
                    if den == 0 {
                        return Err(Error::InvalidSpec("zero denominator in initial term".into()));
                    }
                    Ok(delfib::sequences::ratio(parse_int(num)?, den))
                }
                None => Ok(Term::from_integer(parse_int(piece)?.into())),
            }
        })
        .collect()
}

fn term_string(t: &Term) -> String {
    if t.denom().is_one() {
        t.numer().to_string()
    } else {
        format!("{}/{}", t.numer(), t.denom())
    }
}

fn dec(r: &Real, digits: u32) -> String {
    r.to_decimal(digits)
}

fn cdec(c: &Complex, digits: u32) -> Value {
    json!({ "re": c.re.to_decimal(digits), "im": c.im.to_decimal(digits) })
}

fn family_name(f: FamilyArg) -> &'static str {
    match f {
        FamilyArg::F => "F",
        FamilyArg::G => "G",
        FamilyArg::H => "H",
    }
}

fn set_name(s: RootSet) -> &'static str {
    match s {
        RootSet::Quadratic => "quadratic",
        RootSet::Cubic => "cubic",
        RootSet::Quartic => "quartic",
    }
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::ClosedForm => "closed-form",
        Method::LinearSolve => "linear-solve",
    }
}

fn report_name(r: Report) -> &'static str {
    match r {
        Report::Ratio => "ratio",
        Report::Mystery => "mystery",
        Report::Alignment => "alignment",
    }
}

/// Renders the envelope as `key,value` rows with dotted paths for nesting.
fn print_csv(envelope: &Value) {
    let mut rows = Vec::new();
    flatten("", envelope, &mut rows);
    let mut writer = csv::Writer::from_writer(std::io::stdout());
    writer.write_record(["key", "value"]).unwrap();
    for (key, value) in rows {
        writer.write_record([key, value]).unwrap();
    }
    writer.flush().unwrap();
}

fn flatten(prefix: &str, value: &Value, rows: &mut Vec<(String, String)>) {
    let path = |key: &str| {
        if prefix.is_empty() {
            key.to_string()
        } else {
            format!("{prefix}.{key}")
        }
    };
    match value {
        Value::Object(map) => {
            for (key, child) in map {
                flatten(&path(key), child, rows);
            }
        }
        Value::Array(items) => {
            for (index, child) in items.iter().enumerate() {
                flatten(&path(&index.to_string()), child, rows);
            }
        }
        Value::Null => rows.push((prefix.to_string(), String::new())),
        Value::String(s) => rows.push((prefix.to_string(), s.clone())),
        other => rows.push((prefix.to_string(), other.to_string())),
    }
}
