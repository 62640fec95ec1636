use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod input;

#[derive(Parser)]
#[command(
    name = "graphfair",
    version,
    about = "Fair division of indivisible goods on graphs"
)]
struct Cli {
    /// Machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Structural summary of an instance's graph.
    Analyze {
        /// Instance file, or catalog name with optional `:key=value,...`.
        instance: String,
    },
    /// Runs an allocator and reports per-agent values and MMS ratios.
    Allocate {
        instance: String,
        #[arg(long, value_parser = ["mms", "ef1", "efk", "ips"])]
        goal: String,
        /// Override the automatic choice.
        #[arg(long)]
        algorithm: Option<String>,
        /// Write the allocation file here.
        #[arg(short, long)]
        output: Option<String>,
        /// Skip the MMS ratio report (it needs exhaustive MMS).
        #[arg(long)]
        no_ratios: bool,
    },
    /// Checks an allocation: exit 0 on pass, 1 on failure.
    Check {
        instance: String,
        allocation: String,
        /// connected | ef | ef1 | efk:K | efx | mms:ALPHA | ips
        #[arg(long)]
        criterion: String,
    },
    /// Exact MMS, G-MMS or their ratio, per agent.
    Oracle {
        instance: String,
        #[arg(long, value_parser = ["mms", "gmms", "poc-ratio"])]
        what: String,
        /// Only this agent.
        #[arg(long)]
        agent: Option<usize>,
    },
    /// Searches integer valuations for a low G-MMS/MMS ratio on a graph.
    OracleSearch {
        /// Graph name (`cycle:6`, `kab:2,3`, ...) or instance file.
        graph: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        max_value: i64,
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Writes a catalog or random instance.
    Gen {
        /// Catalog name, or `random` (keys: kind, m, n, seed, max, valuation).
        name: String,
        /// Parameters as `key=value`.
        params: Vec<String>,
        #[arg(short, long)]
        output: Option<String>,
    },
    /// Reproduction suite.
    Bench {
        #[arg(value_parser = ["paper"])]
        suite: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze { instance } => commands::analyze(&instance, cli.json),
        Command::Allocate {
            instance,
            goal,
            algorithm,
            output,
            no_ratios,
        } => commands::allocate(
            &instance,
            &goal,
            algorithm.as_deref(),
            output.as_deref(),
            !no_ratios,
            cli.json,
        ),
        Command::Check {
            instance,
            allocation,
            criterion,
        } => commands::check(&instance, &allocation, &criterion, cli.json),
        Command::Oracle {
            instance,
            what,
            agent,
        } => commands::oracle(&instance, &what, agent, cli.json),
        Command::OracleSearch {
            graph,
            n,
            max_value,
            budget,
            seed,
        } => commands::oracle_search(&graph, n, max_value, budget, seed, cli.json),
        Command::Gen {
            name,
            params,
            output,
        } => commands::gen(&name, &params, output.as_deref()),
        Command::Bench { .. } => commands::bench_suite(cli.json),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::json!({ "error": e.message, "kind": e.kind() })
                );
            } else {
                eprintln!("error: {}", e.message);
            }
            ExitCode::from(e.exit_code())
        }
    }
}
