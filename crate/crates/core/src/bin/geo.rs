use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use geokernel::script::{self, registry, render_svg, Report};
use geokernel::Tolerances;

/// Evaluate construction scripts for the plane geometry kernel.
#[derive(Parser)]
#[command(name = "geo", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and evaluate a script, check its assertions, write its figures.
    ///
    /// Exit status: 0 all assertions pass, 1 parse or input error,
    /// 2 assertion failure, 3 geometric error.
    Run {
        file: PathBuf,
        /// Assertion band for geometric predicates (eps_assert).
        #[arg(long, value_name = "EPS")]
        tol: Option<f64>,
        /// Tolerance file with `key = value` lines (eq, assert, degenerate).
        #[arg(long, value_name = "FILE")]
        config: Option<PathBuf>,
        /// Write an SVG of every binding to this path.
        #[arg(long, value_name = "OUT")]
        render: Option<PathBuf>,
        /// Pixel width of the --render figure.
        #[arg(long, default_value_t = 600)]
        width: u32,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        report: ReportFormat,
    },
    /// List the script operations.
    Ops,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Text,
}

const INPUT_ERROR: u8 = 1;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { INPUT_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::Ops => {
            for op in registry::REGISTRY {
                let mut line = String::from(op.kind);
                if let Some(k) = op.keyword {
                    line.push(' ');
                    line.push_str(k);
                }
                for a in op.args {
                    line.push_str(&format!(" <{}>", a.describe()));
                }
                println!("{line:<60} -> {}", op.ret.as_str());
            }
            ExitCode::SUCCESS
        }
        Command::Run { file, tol, config, render, width, report } => {
            match run(&file, tol, config.as_deref(), render.as_deref(), width, report) {
                Ok(code) => ExitCode::from(code),
                Err(e) => {
                    eprintln!("geo: {e:#}");
                    ExitCode::from(INPUT_ERROR)
                }
            }
        }
    }
}

fn run(
    file: &Path,
    tol: Option<f64>,
    config: Option<&Path>,
    render: Option<&Path>,
    width: u32,
    format: ReportFormat,
) -> Result<u8> {
    let mut tolerances = match config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            Tolerances::from_config_str(&text)?
        }
        None => Tolerances::default(),
    };
    if let Some(eps) = tol {
        tolerances.eps_assert = eps;
        tolerances.validate()?;
    }

    let text = fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let parsed = match script::parse(&text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{}:{e}", file.display());
            return Ok(INPUT_ERROR);
        }
    };
    let report = script::evaluate(&parsed, &tolerances);

    let base = file.parent().unwrap_or(Path::new("."));
    for req in &report.renders {
        let svg = render_svg(&report, &req.selection, req.model, req.width)?;
        write_svg(&base.join(&req.path), &svg)?;
    }
    if let Some(out) = render {
        let svg = render_svg(&report, &[], report.model, width)?;
        write_svg(out, &svg)?;
    }

    print_report(&report, format)?;
    Ok(report.status.exit_code() as u8)
}

fn write_svg(path: &Path, svg: &str) -> Result<()> {
    fs::write(path, svg).with_context(|| format!("writing {}", path.display()))
}

fn print_report(report: &Report, format: ReportFormat) -> Result<()> {
    match format {
        ReportFormat::Text => print!("{report}"),
        ReportFormat::Json => println!("{}", serde_json::to_string_pretty(report)?),
    }
    Ok(())
}
