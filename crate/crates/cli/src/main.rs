use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use permlab::perm::PatternPair;
use permlab_cli::{
    cmd_bijection, cmd_distribution, cmd_forms, cmd_series, cmd_table2, cmd_triangle, cmd_verify, Format, Limits,
    Method, Suite,
};

#[derive(Parser)]
#[command(name = "permlab", version, about = "First-letter statistics on pattern-avoiding permutations")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "tsv")]
    format: Format,
    /// Raise the enumeration cap from 9 to 11.
    #[arg(long, global = true)]
    big: bool,
    /// Explicit enumeration cap.
    #[arg(long, global = true, env = "PERMLAB_MAX_N")]
    max_n: Option<usize>,
    /// Also write the output to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print rows 1..=n of the Schröder triangle.
    Triangle {
        #[arg(long, default_value_t = 6)]
        n: usize,
    },
    /// First-letter distribution of one pattern pair.
    Distribution {
        #[arg(long)]
        pair: PatternPair,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "brute")]
        method: Method,
        /// Run every applicable method and compare.
        #[arg(long)]
        check: bool,
    },
    /// Recompute the n = 8 table of all symmetry classes and diff it.
    Table2,
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, conflicts_with = "n")]
        deg: Option<usize>,
    },
    /// Map a (1342,1432)-avoider and print each stage.
    Bijection { perm: String },
    /// Dump the coefficients of a closed form.
    Series {
        form: String,
        #[arg(long, default_value_t = 8)]
        deg: usize,
    },
    /// List the closed forms.
    Forms,
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), String> {
    print!("{text}");
    if let Some(path) = out {
        std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8, String> {
    let limits = Limits::new(cli.big, cli.max_n);
    let fmt = cli.format;
    let err = |e: permlab::Error| e.to_string();
    let (text, code) = match cli.command {
        Command::Triangle { n } => (cmd_triangle(n, fmt).map_err(err)?, 0),
        Command::Distribution { pair, n, method, check } => {
            let d = cmd_distribution(&pair, n, method, check, limits).map_err(err)?;
            (d.render(fmt), u8::from(!d.agree()))
        }
        Command::Table2 => {
            let r = cmd_table2();
            (r.render(fmt), r.exit_code() as u8)
        }
        Command::Verify { suite, n, deg } => {
            let r = cmd_verify(suite, n.or(deg), limits).map_err(err)?;
            (r.render(fmt), r.exit_code() as u8)
        }
        Command::Bijection { perm } => (cmd_bijection(&perm, fmt).map_err(err)?, 0),
        Command::Series { form, deg } => (cmd_series(&form, deg, fmt).map_err(err)?, 0),
        Command::Forms => (cmd_forms(), 0),
    };
    emit(&text, &cli.out)?;
    Ok(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("permlab: {e}");
            ExitCode::from(2)
        }
    }
}
