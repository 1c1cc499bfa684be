mod cache;
mod cli;
mod commands;
mod output;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use cmheight::{Error, PrecisionContext};

use cache::GroupCache;
use cli::{Cli, Command, Format};
use commands::Env;

const EXIT_ERROR: u8 = 2;
const EXIT_VERIFY_FAILED: u8 = 3;

fn run(cli: &Cli) -> Result<(output::Report, bool), Error> {
    let env = Env {
        ctx: PrecisionContext::new(cli.prec)?,
        seed: cli.seed,
        cache: GroupCache::new(cli.cache_dir.clone()),
    };
    match &cli.command {
        Command::Characters(a) => commands::characters(&env, a).map(|r| (r, true)),
        Command::Lfun(a) => commands::lfun(&env, a).map(|r| (r, true)),
        Command::Height(a) => commands::height(&env, a).map(|r| (r, true)),
        Command::Torsion(a) => commands::torsion(&env, a).map(|r| (r, true)),
        Command::Relation(a) => commands::relation(&env, a).map(|r| (r, true)),
        Command::Verify(a) => commands::verify(&env, a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(&cli) {
        Ok((report, ok)) => {
            if let Err(e) = report.write(format, cli.prec, cli.seed, &mut out) {
                eprintln!("error: {e}");
                return ExitCode::from(EXIT_ERROR);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_VERIFY_FAILED)
            }
        }
        Err(e) => {
            if format == Format::Json {
                let doc = output::error_json(e.kind(), &e.to_string());
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).unwrap_or_default());
            } else {
                eprintln!("error[{}]: {e}", e.kind());
            }
            ExitCode::from(EXIT_ERROR)
        }
    }
}
