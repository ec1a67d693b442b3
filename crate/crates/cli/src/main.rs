use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use kneading_core::admissibility::{is_admissible, KneadingTable};
use kneading_core::cubic::{realize, DEFAULT_SCAN};
use kneading_core::markov::{
    char_poly, decompose, is_irreducibly_complex, otimes, spectral_radius, transition_matrix,
    verify_factorization, PerronRegistry, TransitionMatrix, DEFAULT_TOL,
};
use kneading_core::star::{associativity_experiment, star};
use kneading_core::trees::{generate_tree, Family};
use kneading_core::{parse_kneading, Alphabet, Error, ErrorClass, KneadingData, Sequence};
use serde_json::{json, Value};

mod format;

use format::{sig12, sig12_value};

const MAX_DEPTH: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
    Dot,
}

#[derive(Parser)]
#[command(name = "kneading", version, about = "Kneading data of symmetric bimodal maps")]
struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a tree of kneading data (D1, T, U, F or G)
    Tree {
        #[arg(long, default_value = "D1")]
        family: Family,
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// Star product of symmetric kneading data with a right factor
    Star { left: String, right: String },
    /// Transition matrix of the Markov partition
    Matrix { seq: String },
    /// det(I - tA) of the transition matrix
    Charpoly { seq: String },
    /// Check d_S(t) = (1 - t) d_P(t) d_P(-t) for a node of D1
    Factorize { seq: String },
    /// Topological entropy
    Entropy {
        seq: String,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Use a single estimator (power, sturm) instead of requiring agreement
        #[arg(long)]
        method: Option<String>,
    },
    /// Admissibility of kneading data
    Admissible { arg: String },
    /// Grid of admissible pairs of words up to a given length
    Table1 {
        #[arg(long, default_value_t = 4)]
        max_len: usize,
        /// Comma-separated row words, in the order to print them
        #[arg(long, value_delimiter = ',')]
        rows: Option<Vec<String>>,
    },
    /// Transition matrix of a product assembled from its factors
    Otimes { v: String, w: String },
    /// Primitive with no primitive proper principal submatrix
    Complexity {
        /// Kneading data, or a 0/1 matrix with rows separated by ';'
        arg: String,
        #[arg(long)]
        matrix: bool,
    },
    /// Parameter of the odd cubic family realizing the data
    Realize {
        seq: String,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long, default_value_t = DEFAULT_SCAN)]
        scan: usize,
    },
    /// Block form of the transition matrix of a node of D1
    Decompose { seq: String },
    /// Compare (f * x) * y with f * (x * y) for unimodal x, y
    Associate { f: String, x: String, y: String },
}

struct Failure {
    code: u8,
    message: String,
    /// A negative answer rather than an error: printed on stdout.
    answer: bool,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e.class() {
            ErrorClass::Input => 1,
            ErrorClass::Negative => 2,
            ErrorClass::Numerical => 3,
        };
        Failure {
            code,
            message: e.to_string(),
            answer: false,
        }
    }
}

type Outcome = Result<String, Failure>;

fn bad_format(cmd: &str, f: Format) -> Failure {
    Failure {
        code: 1,
        message: format!("{cmd} does not support --format {f:?}").to_lowercase(),
        answer: false,
    }
}

fn negative(text: String) -> Failure {
    Failure {
        code: 2,
        message: text,
        answer: true,
    }
}

/// Parse with a caret under the offending character.
fn parse(text: &str) -> Result<KneadingData, Failure> {
    parse_kneading(text).map_err(|e| {
        let at = match &e {
            Error::Syntax { offset, .. } => Some(*offset),
            Error::UnknownSymbol { index, .. } | Error::AlphabetMix { index, .. } => Some(*index),
            _ => None,
        };
        let mut f = Failure::from(e);
        if let Some(i) = at {
            let col = text.chars().take(i).count();
            f.message = format!("{}\n  {text}\n  {}^", f.message, " ".repeat(col));
        }
        f
    })
}

fn with_schema(mut v: Value) -> String {
    if let Value::Object(m) = &mut v {
        m.insert("schema".into(), json!("1"));
    }
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

fn matrix_output(m: &TransitionMatrix, f: Format) -> Outcome {
    match f {
        Format::Text => Ok(m.to_text()),
        Format::Csv => Ok(m.to_csv()),
        Format::Json => Ok(with_schema(m.to_json())),
        Format::Dot => Err(bad_format("matrix", f)),
    }
}

fn run(cli: Cli) -> Outcome {
    let fmt = cli.format;
    match cli.command {
        Command::Tree { family, depth } => {
            if depth > MAX_DEPTH {
                return Err(Error::InvalidArgument(format!("depth {depth} exceeds {MAX_DEPTH}")).into());
            }
            let t = generate_tree(family, depth)?;
            match fmt {
                Format::Text => Ok(t.to_text()),
                Format::Json => Ok(with_schema(t.to_json())),
                Format::Dot => Ok(t.to_dot()),
                Format::Csv => Err(bad_format("tree", fmt)),
            }
        }
        Command::Star { left, right } => {
            let r = star(&parse(&left)?, &parse(&right)?)?;
            let p = &r.product;
            match fmt {
                Format::Text => Ok(format!("{p}\n")),
                Format::Json => Ok(with_schema(json!({
                    "left": left,
                    "right": right,
                    "type": r.rule,
                    "product": p.to_string(),
                    "length": p.first().len(),
                    "admissible": is_admissible(p)?,
                }))),
                _ => Err(bad_format("star", fmt)),
            }
        }
        Command::Matrix { seq } => matrix_output(&transition_matrix(&parse(&seq)?)?, fmt),
        Command::Otimes { v, w } => matrix_output(&otimes(&parse(&v)?, &parse(&w)?)?, fmt),
        Command::Charpoly { seq } => {
            let p = char_poly(&transition_matrix(&parse(&seq)?)?);
            match fmt {
                Format::Text => Ok(format!("{p}\n")),
                Format::Json => Ok(with_schema(json!({"coefficients": p, "text": p.to_string()}))),
                _ => Err(bad_format("charpoly", fmt)),
            }
        }
        Command::Factorize { seq } => {
            let r = verify_factorization(&parse(&seq)?)?;
            let out = match fmt {
                Format::Text => {
                    let [a, b, c] = &r.factors;
                    format!(
                        "d_S(t) = {}\nfactors: ({a}) ({b}) ({c})\nproduct = {}\nverified = {}\n",
                        r.d_s, r.product, r.holds
                    )
                }
                Format::Json => with_schema(json!({
                    "d_s": r.d_s,
                    "d_p": r.d_p,
                    "factors": r.factors.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                    "product": r.product,
                    "verified": r.holds,
                })),
                _ => return Err(bad_format("factorize", fmt)),
            };
            if r.holds {
                Ok(out)
            } else {
                Err(negative(out))
            }
        }
        Command::Entropy { seq, tol, method } => {
            if !(tol > 0.0) {
                return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")).into());
            }
            let m = transition_matrix(&parse(&seq)?)?;
            let rho = match method {
                None => spectral_radius(&m, tol)?,
                Some(name) => {
                    let reg = PerronRegistry::default();
                    let est = reg.get(&name).ok_or_else(|| {
                        Error::InvalidArgument(format!(
                            "unknown method {name:?} (expected one of {})",
                            reg.names().join(", ")
                        ))
                    })?;
                    est.estimate(&m, tol)?
                }
            };
            let h = rho.ln().max(0.0);
            match fmt {
                Format::Text => Ok(format!("{}\n", sig12(h))),
                Format::Json => Ok(with_schema(json!({
                    "entropy": sig12_value(h),
                    "spectral_radius": sig12_value(rho),
                }))),
                Format::Csv => Ok(format!("entropy,spectral_radius\n{},{}\n", sig12(h), sig12(rho))),
                Format::Dot => Err(bad_format("entropy", fmt)),
            }
        }
        Command::Admissible { arg } => {
            let d = parse(&arg)?;
            let ok = is_admissible(&d)?;
            let out = match fmt {
                Format::Json => with_schema(json!({"input": d.to_string(), "admissible": ok})),
                _ if ok => "admissible\n".to_string(),
                _ => "not admissible\n".to_string(),
            };
            if ok {
                Ok(out)
            } else {
                Err(negative(out))
            }
        }
        Command::Table1 { max_len, rows } => {
            let t = match rows {
                Some(rows) => KneadingTable::with_rows(
                    rows.iter()
                        .map(|r| Sequence::parse(r, Alphabet::Bimodal, false))
                        .collect::<Result<_, _>>()?,
                )?,
                None => KneadingTable::compute(max_len)?,
            };
            match fmt {
                Format::Text => Ok(t.to_text()),
                Format::Csv => Ok(t.to_csv()),
                Format::Json => Ok(with_schema(serde_json::to_value(&t).expect("serializable"))),
                Format::Dot => Err(bad_format("table1", fmt)),
            }
        }
        Command::Complexity { arg, matrix } => {
            let m = if matrix {
                TransitionMatrix::parse(&arg)?
            } else {
                transition_matrix(&parse(&arg)?)?
            };
            let yes = is_irreducibly_complex(&m)?;
            let out = match fmt {
                Format::Json => with_schema(json!({"order": m.order(), "irreducibly_complex": yes})),
                _ => format!("irreducibly complex: {yes}\n"),
            };
            if yes {
                Ok(out)
            } else {
                Err(negative(out))
            }
        }
        Command::Realize { seq, tol, scan } => {
            let d = parse(&seq)?;
            let r = realize(&d, tol, scan)?;
            match fmt {
                Format::Text => Ok(format!(
                    "a = {}\ndefect = {:.3e}\nitinerary = {}\nc2 itinerary = {}\n",
                    sig12(r.a),
                    r.defect,
                    r.itinerary,
                    r.c2_itinerary
                )),
                Format::Json => Ok(with_schema(json!({
                    "target": d.to_string(),
                    "a": sig12_value(r.a),
                    "defect": r.defect,
                    "itinerary": r.itinerary.to_string(),
                    "c2_itinerary": r.c2_itinerary.to_string(),
                }))),
                Format::Csv => {
                    let h = spectral_radius(&transition_matrix(&d)?, DEFAULT_TOL)?.ln().max(0.0);
                    Ok(format!("a,entropy\n{},{}\n", sig12(r.a), sig12(h)))
                }
                Format::Dot => Err(bad_format("realize", fmt)),
            }
        }
        Command::Decompose { seq } => {
            let r = decompose(&parse(&seq)?)?;
            match fmt {
                Format::Json => Ok(with_schema(serde_json::to_value(&r).expect("serializable"))),
                Format::Text => {
                    let rows = |m: &[Vec<u8>]| {
                        m.iter()
                            .map(|r| r.iter().map(|x| x.to_string()).collect::<String>())
                            .collect::<Vec<_>>()
                            .join("\n")
                    };
                    Ok(format!(
                        "permutation: {:?}\n{}\nA_P:\n{}\nmatch = {}\n",
                        r.permutation,
                        rows(&r.permuted),
                        rows(&r.a_p),
                        r.matches
                    ))
                }
                _ => Err(bad_format("decompose", fmt)),
            }
        }
        Command::Associate { f, x, y } => {
            let uni = |s: &str| Sequence::parse(s, Alphabet::Unimodal, true);
            let (l, r) = associativity_experiment(&parse(&f)?, &uni(&x)?, &uni(&y)?)?;
            let equal = l == r;
            match fmt {
                Format::Text => Ok(format!("left = {l}\nright = {r}\nequal = {equal}\n")),
                Format::Json => Ok(with_schema(json!({
                    "left": l.to_string(),
                    "right": r.to_string(),
                    "equal": equal,
                }))),
                _ => Err(bad_format("associate", fmt)),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) if f.answer => {
            print!("{}", f.message);
            ExitCode::from(f.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
