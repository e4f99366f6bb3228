use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use radical_hopf::cyclotomic::FieldDescriptor;
use radical_hopf::gp_enum::{census, enumerate_report, GroupPairInput, SearchConfig};
use radical_hopf::hopf::{act, e_basis, HElt, RadicalElt};
use radical_hopf::profinite::inverse_system_check;
use radical_hopf::profinite::nu_h;
use radical_hopf::report::{params, render_text, timed, Outcome, Report};
use radical_hopf::smash::{decompose_endomorphism, smash_mult, to_end_matrix, QMatrix, SmashElt, DEFAULT_SEED};
use radical_hopf::suite::{verify_all, SuiteConfig};
use radical_hopf::variants::{containment_matrix, variant_nu_check, variants_check};
use radical_hopf::{Error, Rat};

#[derive(Parser)]
#[command(name = "radical-hopf", version, about = "Hopf algebras acting on radical extensions Q(a^(1/p^n))/Q")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Record wall-clock time in reports.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Clone)]
struct Level {
    #[arg(long, default_value_t = 3)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    n: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Emit e_{n,i} as a group-ring element.
    Basis {
        #[command(flatten)]
        level: Level,
        #[arg(long, default_value_t = 0)]
        i: u64,
    },
    /// Apply h ∈ H_n to x ∈ Q(w_n).
    Act {
        #[command(flatten)]
        level: Level,
        #[arg(long, default_value = "2")]
        a: Rat,
        /// h = e_{n,i}.
        #[arg(long, conflicts_with = "h")]
        i: Option<u64>,
        /// h as comma-separated e-coordinates.
        #[arg(long)]
        h: Option<String>,
        /// x as comma-separated coordinates on 1, w, w², ...
        #[arg(long)]
        x: String,
    },
    /// Multiply w^j # e_i by w^k # e_l, or emit the matrix of one element.
    Smash {
        #[command(flatten)]
        level: Level,
        #[arg(long, default_value = "2")]
        a: Rat,
        /// j,i
        #[arg(long)]
        left: String,
        /// k,l
        #[arg(long)]
        right: Option<String>,
    },
    /// Write a matrix as Σ c_{j,i} w^j # e_i.
    Decompose {
        #[command(flatten)]
        level: Level,
        #[arg(long, default_value = "2")]
        a: Rat,
        /// Matrix as JSON rows of "num/den" strings, or a path to such a file.
        #[arg(long)]
        matrix: String,
    },
    /// Apply ν_{n,m} to e_{n,i}.
    Nu {
        #[command(flatten)]
        level: Level,
        #[arg(long, default_value_t = 0)]
        i: u64,
        /// Target level, default n - 1.
        #[arg(long)]
        m: Option<u32>,
    },
    /// Inverse-system and fixed-truncation suite up to level L.
    Profinite {
        #[arg(long, default_value_t = 3)]
        p: u64,
        #[arg(long = "level", default_value_t = 3)]
        level: u32,
    },
    /// Build H_{n,i} over Q(ζ_1) and run its checks.
    Variants {
        #[arg(long, default_value_t = 3)]
        p: u64,
        #[arg(long, default_value_t = 2)]
        n: u32,
        #[arg(long, default_value = "2")]
        a: Rat,
    },
    /// Count Hopf–Galois structures on Q(ζ_r, a^{1/p^n})/Q(ζ_r), or on a given (Γ, Δ).
    Census {
        #[arg(long, default_value_t = 3)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        r: u32,
        /// JSON file {"gamma": [[...]], "delta": [[...]]} of generator image vectors.
        #[arg(long, conflicts_with_all = ["p", "n", "r"])]
        input: Option<PathBuf>,
        #[arg(long)]
        budget_ms: Option<u64>,
        /// Include the element lists of every subgroup.
        #[arg(long)]
        subgroups: bool,
    },
    /// Run every acceptance criterion.
    VerifyAll {
        #[arg(long, requires = "n")]
        p: Option<u64>,
        #[arg(long, requires = "p")]
        n: Option<u32>,
        #[arg(long, default_value = "2")]
        a: Rat,
        #[arg(long = "level", default_value_t = 3)]
        level: u32,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 64)]
        samples: usize,
    },
}

enum Output {
    Value(Value),
    Reports(Vec<Report>),
}

fn parse_rats(s: &str) -> Result<Vec<Rat>, Error> {
    s.split(',').map(|t| t.trim().parse::<Rat>()).collect()
}

fn parse_pair(s: &str) -> Result<(u64, u64), Error> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [a, b] => Ok((
            a.parse().map_err(|_| Error::Parse(format!("bad index {a}")))?,
            b.parse().map_err(|_| Error::Parse(format!("bad index {b}")))?,
        )),
        _ => Err(Error::Parse(format!("expected two comma-separated indices, got {s}"))),
    }
}

fn run(command: Command, timing: bool) -> Result<Output, Error> {
    Ok(match command {
        Command::Basis { level, i } => {
            let e = e_basis(level.p, level.n, i)?;
            Output::Value(json!({ "p": level.p, "n": level.n, "i": i, "coeffs": e.to_json() }))
        }
        Command::Act { level, a, i, h, x } => {
            let field = FieldDescriptor::new(level.p, level.n)?;
            let h = match (i, h) {
                (Some(i), _) => HElt::basis(field, i),
                (None, Some(h)) => HElt::new(field, parse_rats(&h)?)?,
                (None, None) => return Err(Error::Parse("give --i or --h".into())),
            };
            let x = RadicalElt::new(level.p, level.n, a, parse_rats(&x)?)?;
            Output::Value(serde_json::to_value(act(&h, &x)?).expect("serializable"))
        }
        Command::Smash { level, a, left, right } => {
            radical_hopf::hopf::validate_radicand(level.p, &a)?;
            FieldDescriptor::new(level.p, level.n)?;
            let (j, i) = parse_pair(&left)?;
            let x = SmashElt::basis(level.p, level.n, a.clone(), j, i);
            match right {
                Some(r) => {
                    let (k, l) = parse_pair(&r)?;
                    let y = SmashElt::basis(level.p, level.n, a.clone(), k, l);
                    let z = smash_mult(&x, &y)?;
                    Output::Value(json!({
                        "product": z.to_json(),
                        "matrix": to_end_matrix(&z).to_json(level.p, level.n, &a),
                    }))
                }
                None => Output::Value(to_end_matrix(&x).to_json(level.p, level.n, &a)),
            }
        }
        Command::Decompose { level, a, matrix } => {
            let text = if matrix.trim_start().starts_with('[') || matrix.trim_start().starts_with('{') {
                matrix
            } else {
                fs::read_to_string(&matrix).map_err(|e| Error::Parse(format!("{matrix}: {e}")))?
            };
            let value: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
            let m = QMatrix::from_json(&value)?;
            Output::Value(decompose_endomorphism(&m, level.p, level.n, &a)?.to_json())
        }
        Command::Nu { level, i, m } => {
            let field = FieldDescriptor::new(level.p, level.n)?;
            let m = m.unwrap_or(level.n.saturating_sub(1));
            if m > level.n {
                return Err(Error::Parse(format!("target level {m} exceeds n = {}", level.n)));
            }
            let mut image = HElt::basis(field, i);
            for k in (m + 1..=level.n).rev() {
                image = nu_h(k, &image)?;
            }
            Output::Value(json!({ "p": level.p, "n": m, "coords": image.to_json() }))
        }
        Command::Profinite { p, level } => Output::Reports(vec![timed(
            "inverse_system",
            params([("p", json!(p)), ("L", json!(level))]),
            timing,
            || inverse_system_check(p, level),
        )]),
        Command::Variants { p, n, a } => {
            let prm = || params([("p", json!(p)), ("n", json!(n)), ("a", json!(a))]);
            let mut reports = vec![timed("variants", prm(), timing, || variants_check(p, n, &a))];
            if n >= 3 {
                reports.push(timed("variant_nu", prm(), timing, || variant_nu_check(p, n)));
                reports.push(timed("fixed_field_tower", prm(), timing, || {
                    let m = containment_matrix(p, n, &a)?;
                    let predicted = m.iter().enumerate().all(|(i, row)| row.iter().all(|&c| c == (i == 0)));
                    Ok(Outcome::check(predicted, json!({ "contained": m }), || json!({ "contained": m })))
                }));
            }
            Output::Reports(reports)
        }
        Command::Census { p, n, r, input, budget_ms, subgroups } => {
            let config = SearchConfig { budget: budget_ms.map(Duration::from_millis), ..SearchConfig::default() };
            let start = std::time::Instant::now();
            let elapsed = || if timing { start.elapsed().as_millis() as u64 } else { 0 };
            let report = match input {
                Some(path) => {
                    let text =
                        fs::read_to_string(&path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                    let pair: GroupPairInput = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
                    let (gamma, delta) = pair.into_groups()?;
                    let mut data = enumerate_report(&gamma, &delta, &config)?;
                    if !subgroups {
                        data.as_object_mut().expect("object").remove("subgroups");
                    }
                    let prm = params([("input", json!(path.display().to_string()))]);
                    Report::from_outcome("census", prm, Outcome::pass(data), elapsed())
                }
                None => {
                    let c = census(p, n, r, &config)?;
                    let mut outcome = c.to_outcome();
                    if subgroups {
                        outcome.data["subgroups"] = serde_json::to_value(&c.structures).expect("serializable");
                    }
                    let prm = params([("p", json!(p)), ("n", json!(n)), ("r", json!(r))]);
                    Report::from_outcome("census", prm, outcome, elapsed())
                }
            };
            Output::Reports(vec![report])
        }
        Command::VerifyAll { p, n, a, level, seed, samples } => {
            let mut config = SuiteConfig { radicand: a, level, seed, samples, timing, ..SuiteConfig::default() };
            if let (Some(p), Some(n)) = (p, n) {
                config.instances = vec![(p, n)];
            }
            Output::Reports(verify_all(&config))
        }
    })
}

fn render(output: &Output, format: Format) -> String {
    match (output, format) {
        (Output::Value(v), Format::Json) => format!("{v}\n"),
        (Output::Value(v), Format::Text) => format!("{}\n", serde_json::to_string_pretty(v).expect("serializable")),
        (Output::Reports(rs), Format::Json) => {
            rs.iter().map(|r| format!("{}\n", serde_json::to_string(r).expect("serializable"))).collect()
        }
        (Output::Reports(rs), Format::Text) => render_text(rs),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = match run(cli.command, cli.timing) {
        Ok(o) => o,
        Err(e @ (Error::CapExceeded { .. } | Error::BudgetExhausted { .. })) => {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let text = render(&output, cli.format);
    let written = match &cli.out {
        Some(path) => fs::write(path, &text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match output {
        Output::Reports(rs) if rs.iter().any(|r| !r.passed()) => ExitCode::from(1),
        _ => ExitCode::SUCCESS,
    }
}
