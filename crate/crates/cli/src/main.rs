mod args;
mod commands;
mod records;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::{CliError, Done, PolygonArgs, RunConfig};

fn config(cli: &Cli) -> Result<RunConfig, CliError> {
    let c = &cli.common;
    let shape = goss_zeta::FieldShape::new(c.p, c.s)?;
    if c.budget == 0 {
        return Err(CliError::Usage("--budget must be positive".into()));
    }
    if c.jobs == 0 {
        return Err(CliError::Usage("--jobs must be positive".into()));
    }
    Ok(RunConfig {
        shape,
        budget: c.budget,
        jobs: c.jobs,
        format: c.format,
        output: c.output.clone(),
    })
}

fn run(cli: &Cli) -> Result<(RunConfig, Done), CliError> {
    let cfg = config(cli)?;
    let done = match &cli.command {
        Command::Enumerate(a) => commands::enumerate_cmd(&cfg, a),
        Command::Greedy(a) => commands::greedy_cmd(&cfg, a),
        Command::Optimal(a) => commands::optimal_cmd(&cfg, a),
        Command::Member { n, gamma, m } => commands::member_cmd(&cfg, n.as_deref(), gamma.as_deref(), *m),
        Command::VerifyTheorem12 { grid, mode } => commands::verify_optimum_cmd(&cfg, grid, *mode),
        Command::VerifyTheorem14 { shapes, k_max, n_max } => {
            commands::verify_power_sums_cmd(&cfg, shapes, *k_max, *n_max)
        }
        Command::PowerSum { k, n } => commands::power_sum_cmd(&cfg, *k, *n),
        Command::NewtonPolygon {
            y,
            max_m,
            t_cap,
            window,
            svg,
        } => commands::newton_polygon_cmd(
            &cfg,
            PolygonArgs {
                y,
                max_m: *max_m,
                t_cap: *t_cap,
                window: *window,
                svg: svg.as_ref(),
            },
        ),
    }?;
    Ok((cfg, done))
}

fn emit(cfg: &RunConfig, text: &str) -> std::io::Result<()> {
    match &cfg.output {
        Some(path) => std::fs::write(path, text),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 5 } else { 0 });
        }
    };
    match run(&cli) {
        Ok((cfg, done)) => {
            if let Some(note) = &done.note {
                eprintln!("{note}");
            }
            if let Err(e) = emit(&cfg, &done.text) {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            ExitCode::from(done.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
