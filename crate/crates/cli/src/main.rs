//! `conelie` command line.
//!
//! Exit codes: 0 when every check passes, 2 when a check fails, 3 for parse
//! and usage errors, 4 when the oracle size cap limited the computation.

use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use conelie::dynkin_io::{self, tables, Fixtures, Format, Report};
use conelie::grading::CrossedDiagram;
use conelie::homology::DEFAULT_CAP;
use conelie::rootsys::LieType;
use conelie::Error;

#[derive(Parser)]
#[command(name = "conelie", version, about = "Nested parabolic pairs, Kostant predictions and a Hodge oracle.")]
struct Cli {
    /// Output format: json, text or latex (latex only for `tables`).
    #[arg(long, global = true, default_value = "json")]
    format: String,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Grading data of a crossed diagram such as `B4:**x*`.
    Info(DiagramArgs),
    /// Bigrading and bracket identities of the nested pair at a maximal parabolic.
    Nested(DiagramArgs),
    /// Kostant's components of H_2(p_+, g) at a maximal parabolic.
    Kostant(DiagramArgs),
    /// Sweep every maximal parabolic up to a rank.
    Classify {
        #[arg(long, default_value_t = 8)]
        max_rank: usize,
    },
    /// Brute-force Hodge decomposition compared with Kostant's prediction.
    Oracle {
        #[command(flatten)]
        diagram: DiagramArgs,
        /// Largest chain space the oracle builds.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Regenerate the VMRT tables and check them against the fixtures.
    Tables {
        /// Table number (1, 2 or 3); all tables when omitted.
        #[arg(long)]
        table: Option<u8>,
        /// Fixture file; the bundled one when omitted.
        #[arg(long)]
        fixtures: Option<String>,
    },
}

#[derive(clap::Args)]
struct DiagramArgs {
    /// `B4:**x*`, or a bare type such as `E7` together with `--cross`.
    diagram: String,
    /// Crossed nodes, e.g. `1` or `2,3`.
    #[arg(long)]
    cross: Option<String>,
}

impl DiagramArgs {
    fn parse(&self) -> Result<CrossedDiagram, Error> {
        dynkin_io::parse_with_crosses(&self.diagram, self.cross.as_deref())
    }

    fn maximal(&self) -> Result<(LieType, usize), Error> {
        let d = self.parse()?;
        match d.node() {
            Some(i) => Ok((d.lie_type(), i)),
            None => Err(Error::Semantic(format!("{d} is not a maximal parabolic; cross exactly one node"))),
        }
    }
}

const EXIT_CHECK: u8 = 2;
const EXIT_USAGE: u8 = 3;
const EXIT_CAP: u8 = 4;

fn fail(e: &Error) -> ExitCode {
    let doc = serde_json::json!({ "error": e.code(), "message": e.to_string() });
    eprintln!("{doc}");
    ExitCode::from(if matches!(e, Error::SizeCap { .. }) { EXIT_CAP } else { EXIT_USAGE })
}

fn render_report(r: &Report, format: Format) -> Result<String, Error> {
    match format {
        Format::Json => Ok(r.to_json()),
        Format::Text => {
            let mut out = String::new();
            for (name, c) in &r.checks {
                let status = if c.pass { "PASS" } else { "FAIL" };
                match &c.witness {
                    Some(w) => out.push_str(&format!("{status} {name} ({w})\n")),
                    None => out.push_str(&format!("{status} {name}\n")),
                }
            }
            Ok(out)
        }
        Format::Latex => Err(Error::Semantic("latex output is only available for tables".into())),
    }
}

fn report_exit(r: &Report) -> ExitCode {
    if !r.all_pass() {
        ExitCode::from(EXIT_CHECK)
    } else if r.size_capped {
        ExitCode::from(EXIT_CAP)
    } else {
        ExitCode::SUCCESS
    }
}

fn run_tables(table: Option<u8>, fixtures: Option<String>, format: Format) -> Result<ExitCode, Error> {
    let fx = match fixtures {
        Some(path) => {
            let text = fs::read_to_string(&path)
                .map_err(|e| Error::Semantic(format!("cannot read fixtures {path}: {e}")))?;
            Fixtures::load(&text)?
        }
        None => Fixtures::builtin(),
    };
    let which: Vec<u8> = match table {
        Some(t) => vec![t],
        None => fx.tables.iter().map(|t| t.table).collect(),
    };
    let mut failed = Vec::new();
    for &t in &which {
        for (row, check) in tables::table_rows(&fx, t)? {
            if !check.pass() {
                failed.push(format!("table {t}, {} {}: {}", row.label, row.g, check.mismatches.join("; ")));
            }
        }
    }
    let docs = which
        .iter()
        .map(|&t| tables::emit_table(&fx, t, format))
        .collect::<Result<Vec<_>, _>>()?;
    print!("{}", docs.join("\n"));
    for f in &failed {
        eprintln!("fixture mismatch: {f}");
    }
    Ok(if failed.is_empty() { ExitCode::SUCCESS } else { ExitCode::from(EXIT_CHECK) })
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    let format: Format = cli.format.parse()?;
    let report = match cli.command {
        Command::Info(d) => dynkin_io::cmd_info(&d.parse()?)?,
        Command::Nested(d) => {
            let (t, i) = d.maximal()?;
            dynkin_io::cmd_nested(t, i)?
        }
        Command::Kostant(d) => {
            let (t, i) = d.maximal()?;
            dynkin_io::cmd_kostant(t, i)?
        }
        Command::Classify { max_rank } => dynkin_io::cmd_classify(max_rank)?,
        Command::Oracle { diagram, cap } => {
            let (t, i) = diagram.maximal()?;
            dynkin_io::cmd_oracle(t, i, cap)?
        }
        Command::Tables { table, fixtures } => return run_tables(table, fixtures, format),
    };
    print!("{}", render_report(&report, format)?);
    Ok(report_exit(&report))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => fail(&e),
    }
}
