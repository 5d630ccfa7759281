use std::process::ExitCode;

use clap::Parser;

use branchlab_cli::{
    exit_code, parse_int_list, parse_rat_list, parse_zeta, render, run, BranchMethod, Command, Format, JobSpec,
};

/// Exact branching of finite-dimensional representations to symmetric subalgebras.
#[derive(Parser, Debug)]
#[command(name = "branchlab", version)]
struct Args {
    #[arg(value_enum)]
    command: Command,
    /// Type name such as A2 or a Cartan matrix such as "2,-1;-1,2"; checked against the real form.
    #[arg(long)]
    algebra: Option<String>,
    /// Preset name (sl2R, sl3R, sp4R, g2R, su21, su31) or path of a ThetaSpec JSON file.
    #[arg(long)]
    realform: String,
    /// Highest weight as comma-separated fundamental coordinates.
    #[arg(long, allow_hyphen_values = true)]
    weight: Option<String>,
    #[arg(long)]
    bound: Option<i64>,
    /// Character of F_s as comma-separated signs.
    #[arg(long, allow_hyphen_values = true)]
    zeta: Option<String>,
    /// Values on the basis of h_m, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    nu: Option<String>,
    #[arg(long, value_enum, default_value_t = BranchMethod::Kostant)]
    method: BranchMethod,
    /// Output file; standard output when absent.
    #[arg(long)]
    output: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

fn job_from(args: Args) -> branchlab::Result<JobSpec> {
    Ok(JobSpec {
        command: args.command,
        algebra: args.algebra,
        realform: args.realform,
        weight: args.weight.as_deref().map(parse_int_list).transpose()?,
        bound: args.bound,
        zeta: args.zeta.as_deref().map(parse_zeta).transpose()?,
        nu: args.nu.as_deref().map(parse_rat_list).transpose()?,
        method: args.method,
        output: args.output,
        format: args.format,
    })
}

fn main() -> ExitCode {
    let args = Args::parse();
    let result = job_from(args).and_then(|job| run(&job).map(|r| (job, r)));
    let (job, report) = match result {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let text = render(&report);
    match &job.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: cannot write {path}: {e}");
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        eprintln!("error: identity violation");
        ExitCode::from(4)
    }
}
