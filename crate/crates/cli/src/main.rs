//! `pdt`: command-line front end for the toric P-difference algebra library.

mod input;
mod run;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use pdt_core::SearchBounds;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use input::{parse_document, PartialBounds};
use run::{run, tally, Command, Tally};

#[derive(Debug, Parser)]
#[command(
    name = "pdt",
    version,
    about = "Exact algebra for toric P-difference varieties"
)]
struct Cli {
    command: Command,
    input: PathBuf,
    /// Maximum coefficient degree for bounded searches.
    #[arg(long)]
    bounds_deg: Option<usize>,
    /// Integer coefficient box for bounded searches.
    #[arg(long)]
    bounds_box: Option<u32>,
    /// Emit the result document as a single JSON line.
    #[arg(long)]
    json: bool,
    /// Print nothing; report through the exit code only.
    #[arg(long)]
    quiet: bool,
}

#[derive(Serialize)]
struct Digested<'a> {
    command: &'a str,
    input_digest: &'a str,
    bounds: SearchBounds,
    result: &'a Value,
    verdicts: Tally,
}

#[derive(Serialize)]
struct ResultDocument<'a> {
    command: &'a str,
    input_digest: &'a str,
    bounds: SearchBounds,
    result: &'a Value,
    verdicts: Tally,
    digest: String,
    wall_time_ms: u128,
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn fail(msg: &str) -> ExitCode {
    eprintln!("pdt: {msg}");
    ExitCode::from(1)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let started = Instant::now();
    let bytes = match std::fs::read(&cli.input) {
        Ok(b) => b,
        Err(e) => return fail(&format!("cannot read {}: {e}", cli.input.display())),
    };
    let Ok(text) = std::str::from_utf8(&bytes) else {
        return fail("input is not UTF-8");
    };
    let doc = match parse_document(text) {
        Ok(d) => d,
        Err(e) => return fail(&e.0),
    };
    let env = match std::env::var("PDT_DEFAULT_BOUNDS") {
        Ok(s) => match PartialBounds::parse_env(&s) {
            Ok(b) => b,
            Err(e) => return fail(&e),
        },
        Err(_) => PartialBounds::default(),
    };
    let flags = PartialBounds {
        max_deg: cli.bounds_deg,
        coeff_box: cli.bounds_box,
    };
    let bounds = flags
        .or(doc.bounds.unwrap_or_default())
        .or(env)
        .resolve(doc.default_bounds());

    let result = match run(cli.command, &doc, bounds) {
        Ok(v) => v,
        Err(e) => return fail(&e.0),
    };
    let verdicts = tally(&result);
    let command = cli.command.name();
    let input_digest = sha256_hex(&bytes);
    let digested = Digested {
        command: &command,
        input_digest: &input_digest,
        bounds,
        result: &result,
        verdicts,
    };
    let digest = sha256_hex(
        serde_json::to_string(&digested)
            .expect("serializable")
            .as_bytes(),
    );
    let doc = ResultDocument {
        command: &command,
        input_digest: &input_digest,
        bounds,
        result: &result,
        verdicts,
        digest,
        wall_time_ms: started.elapsed().as_millis(),
    };
    if !cli.quiet {
        let text = if cli.json {
            serde_json::to_string(&doc).expect("serializable")
        } else {
            format!(
                "command:  {command}\ninput:    {input_digest}\nbounds:   degree {} box {}\nverdicts: {} yes, {} no, {} unknown\n{}",
                bounds.max_deg,
                bounds.coeff_box,
                verdicts.yes,
                verdicts.no,
                verdicts.unknown,
                serde_json::to_string_pretty(&result).expect("serializable")
            )
        };
        let _ = writeln!(std::io::stdout().lock(), "{text}");
    }
    if verdicts.unknown > 0 {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    }
}
