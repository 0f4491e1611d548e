mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Continued fractions, twist braids, knot invariants and lattice forms.
#[derive(Debug, Parser)]
#[command(name = "plugtwist", version)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Negative continued fractions.
    #[command(subcommand)]
    Cf(CfCmd),
    /// Twist words φ_{p,q}.
    #[command(subcommand)]
    Twist(TwistCmd),
    /// 3-strand braid words.
    #[command(subcommand)]
    Braid(BraidCmd),
    /// Knot and link invariants.
    #[command(subcommand)]
    Inv(InvCmd),
    /// Integral quadratic forms.
    #[command(subcommand)]
    Form(FormCmd),
    /// Non-diffeomorphism certificates for the Y family.
    #[command(subcommand)]
    Obstruct(ObstructCmd),
}

#[derive(Debug, Subcommand)]
enum CfCmd {
    /// Ceiling-division expansion of p/q.
    Expand {
        #[arg(allow_hyphen_values = true)]
        rational: String,
    },
    /// Parity normal form of p/q with a move witness.
    Normalize {
        #[arg(allow_hyphen_values = true)]
        rational: String,
    },
    /// Value of b1,b2,...
    Eval {
        #[arg(allow_hyphen_values = true)]
        coeffs: String,
    },
    /// Apply one move (e.g. expand@1+, contract@2, append-, trim-end).
    Move {
        #[arg(allow_hyphen_values = true)]
        coeffs: String,
        #[arg(allow_hyphen_values = true)]
        r#move: String,
    },
}

#[derive(Debug, Subcommand)]
enum TwistCmd {
    /// The word φ_{p,q} in psi and phi.
    Word {
        #[arg(allow_hyphen_values = true)]
        rational: String,
    },
    /// Decide whether φ_{p,q} is the identity.
    IsTrivial {
        #[arg(allow_hyphen_values = true)]
        rational: String,
    },
}

#[derive(Debug, Subcommand)]
enum BraidCmd {
    /// Reduced Burau image of a word such as "s1 s2^-1".
    Burau {
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
}

#[derive(Debug, Subcommand)]
enum InvCmd {
    /// Alexander polynomial of the 2-bridge knot or link of p/q.
    Alexander {
        #[arg(allow_hyphen_values = true)]
        rational: String,
    },
    /// Alexander polynomial of the closure of a 3-braid word.
    Closure {
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Two-variable polynomial of the torus link L_n.
    TorusLink {
        #[arg(allow_hyphen_values = true)]
        n: i64,
    },
    /// Basic classes of the link-surgery family.
    BasicClasses {
        #[arg(allow_hyphen_values = true)]
        n: i64,
    },
    /// Genus of the (a, b) torus knot.
    Genus {
        #[arg(allow_hyphen_values = true)]
        a: i64,
        #[arg(allow_hyphen_values = true)]
        b: i64,
    },
}

#[derive(Debug, Subcommand)]
enum FormCmd {
    /// Plug or g-cork for φ_{p,q}.
    Classify {
        #[arg(allow_hyphen_values = true)]
        rational: String,
    },
    /// Isometries of a named form with bounded entries.
    Isometries {
        name: String,
        #[arg(long, default_value_t = 3)]
        bound: u32,
    },
    /// Gram matrix and invariants of a named form.
    Show { name: String },
}

#[derive(Debug, Subcommand)]
enum ObstructCmd {
    /// Case table showing Y_m and Y_n are not diffeomorphic.
    Certify {
        #[arg(allow_hyphen_values = true)]
        m: i64,
        #[arg(allow_hyphen_values = true)]
        n: i64,
    },
}

/// Result of one command before rendering.
pub struct Outcome {
    pub payload: Map<String, Value>,
    pub text: String,
    pub warnings: Vec<String>,
    pub inconclusive: bool,
}

impl Outcome {
    pub fn new(payload: Value, text: impl Into<String>) -> Self {
        let payload = match payload {
            Value::Object(m) => m,
            other => {
                let mut m = Map::new();
                m.insert("value".into(), other);
                m
            }
        };
        Outcome {
            payload,
            text: text.into(),
            warnings: Vec::new(),
            inconclusive: false,
        }
    }
}

fn render(format: Format, status: &str, outcome: &Outcome) -> String {
    match format {
        Format::Json => {
            let mut m = outcome.payload.clone();
            m.insert("status".into(), Value::from(status));
            m.insert("warnings".into(), Value::from(outcome.warnings.clone()));
            serde_json::to_string_pretty(&Value::Object(m)).expect("JSON values serialize")
        }
        Format::Text => {
            let mut s = outcome.text.trim_end().to_string();
            for w in &outcome.warnings {
                s.push_str("\nwarning: ");
                s.push_str(w);
            }
            s
        }
    }
}

/// Writes one line to stdout; a closed pipe is not an error.
fn emit(s: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{s}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli.command) {
        Ok(outcome) => {
            let status = if outcome.inconclusive { "inconclusive" } else { "ok" };
            emit(&render(cli.format, status, &outcome));
            ExitCode::from(if outcome.inconclusive { 2 } else { 0 })
        }
        Err(e) => {
            match cli.format {
                Format::Json => {
                    let mut m = Map::new();
                    m.insert("error".into(), Value::from(e.to_string()));
                    let out = Outcome::new(Value::Object(m), String::new());
                    emit(&render(Format::Json, "user_error", &out));
                }
                Format::Text => eprintln!("error: {e}"),
            }
            ExitCode::from(1)
        }
    }
}
