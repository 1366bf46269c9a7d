use std::io::{self, BufRead, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use permcode::enumerate::{double_eulerian, Check, Options, Report, TableReport, DEFAULT_CAP};
use permcode::slicer::{format_lambda, format_trace};
use permcode::{
    b_decode, b_encode, lambda_perm, lambda_seq, lehmer_decode, lehmer_encode, Permutation, Side,
    SubexcedantSeq,
};

const EXIT_COUNTEREXAMPLE: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "permcode",
    version,
    about = "The permutation code b and its statistics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Code {
    B,
    Lehmer,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Perm,
    Seq,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Perms,
    Seqs,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Theorem {
    #[value(name = "2")]
    Theorem2,
    Bijection,
    Corollary2,
    Eulerian,
    Lambda,
    Slices,
    Chain,
}

impl From<Theorem> for Check {
    fn from(t: Theorem) -> Check {
        match t {
            Theorem::Theorem2 => Check::Theorem2,
            Theorem::Bijection => Check::Bijection,
            Theorem::Corollary2 => Check::Corollary2,
            Theorem::Eulerian => Check::Eulerian,
            Theorem::Lambda => Check::Lambda,
            Theorem::Slices => Check::Slices,
            Theorem::Chain => Check::Chain,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Permutation to subexcedant sequence. Reads one word per line from
    /// stdin when WORD is omitted.
    Encode {
        #[arg(long, value_enum, default_value = "b")]
        code: Code,
        word: Option<String>,
    },
    /// Subexcedant sequence to permutation.
    Decode {
        #[arg(long, value_enum, default_value = "b")]
        code: Code,
        word: Option<String>,
    },
    /// The five set statistics and the lambda sequence of a word.
    Stats {
        #[arg(long, value_enum)]
        kind: Kind,
        word: Option<String>,
    },
    /// Slices and profiles of a permutation, step by step.
    Trace { word: String },
    /// Exhaustive verification over all words of length n.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "2")]
        theorem: Theorem,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Largest n accepted.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// The double Eulerian table.
    Table {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "perms")]
        side: SideArg,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

type LineResult = Result<String, permcode::Error>;

fn encode(code: Code, text: &str) -> LineResult {
    let p: Permutation = text.parse()?;
    Ok(match code {
        Code::B => b_encode(&p),
        Code::Lehmer => lehmer_encode(&p),
    }
    .to_string())
}

fn decode(code: Code, text: &str) -> LineResult {
    let s: SubexcedantSeq = text.parse()?;
    Ok(match code {
        Code::B => b_decode(&s),
        Code::Lehmer => lehmer_decode(&s),
    }
    .to_string())
}

fn stats(kind: Kind, text: &str) -> LineResult {
    let (tuple, lambda) = match kind {
        Kind::Perm => {
            let p: Permutation = text.parse()?;
            (p.five_tuple(), lambda_perm(&p))
        }
        Kind::Seq => {
            let s: SubexcedantSeq = text.parse()?;
            (s.five_tuple(), lambda_seq(&s))
        }
    };
    Ok(format!("{tuple} lambda={}", format_lambda(&lambda)))
}

fn trace(text: &str) -> LineResult {
    let p: Permutation = text.parse()?;
    Ok(format_trace(&p).trim_end().to_string())
}

/// Applies `f` to the argument, or to every stdin line when there is none.
fn per_word(word: Option<String>, f: impl Fn(&str) -> LineResult) -> ExitCode {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    if let Some(w) = word {
        return match f(&w) {
            Ok(line) => {
                let _ = writeln!(out, "{line}");
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(EXIT_USAGE)
            }
        };
    }
    let mut failed = false;
    for (k, line) in io::stdin().lock().lines().enumerate() {
        let line = match line {
            Ok(l) => l,
            Err(e) => {
                eprintln!("error: reading stdin: {e}");
                return ExitCode::from(EXIT_USAGE);
            }
        };
        match f(&line) {
            Ok(res) => {
                let _ = writeln!(out, "{res}");
            }
            Err(e) => {
                failed = true;
                eprintln!("line {}: {e}", k + 1);
            }
        }
    }
    if failed {
        ExitCode::from(EXIT_USAGE)
    } else {
        ExitCode::SUCCESS
    }
}

fn emit(report: &Report, format: Format) {
    match format {
        Format::Text => print!("{report}"),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(report).expect("reports always serialize")
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Encode { code, word } => per_word(word, |w| encode(code, w)),
        Command::Decode { code, word } => per_word(word, |w| decode(code, w)),
        Command::Stats { kind, word } => per_word(word, |w| stats(kind, w)),
        Command::Trace { word } => per_word(Some(word), trace),
        Command::Verify {
            n,
            theorem,
            jobs,
            cap,
            format,
        } => match Check::from(theorem).run(n, &Options { cap, jobs }) {
            Ok(report) => {
                emit(&report, format);
                if report.pass {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(EXIT_COUNTEREXAMPLE)
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(EXIT_USAGE)
            }
        },
        Command::Table {
            n,
            side,
            jobs,
            cap,
            format,
        } => {
            let side = match side {
                SideArg::Perms => Side::Perms,
                SideArg::Seqs => Side::Seqs,
            };
            match double_eulerian(n, side, &Options { cap, jobs }) {
                Ok(table) => {
                    let total = table.total();
                    let report = Report {
                        n,
                        check: "double_eulerian".into(),
                        pass: total == permcode::enumerate::factorial(n),
                        checked: total,
                        counterexample: None,
                        table: Some(TableReport::new(side, &table)),
                        distributions: Default::default(),
                        bistatistic_pass: None,
                        notes: Vec::new(),
                    };
                    emit(&report, format);
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(EXIT_USAGE)
                }
            }
        }
    }
}
