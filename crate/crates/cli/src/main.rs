use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use nonconv_core::{presets, ScenarioConfig};

#[derive(Parser)]
#[command(name = "nonconv", version, about = "Nonlocal convection with a variable horizon")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario and write its CSV files, meta.txt and plot.gp
    Run(RunArgs),
    /// Print the preset names with a short description
    ListPresets,
    /// Check a scenario file and print its normalized form
    Validate {
        #[arg(long, value_name = "FILE")]
        config: PathBuf,
    },
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    source: Source,
    /// Output directory (default: <out-root>/<scenario name>)
    #[arg(long, value_name = "DIR")]
    out_dir: Option<PathBuf>,
    /// Root for default output directories
    #[arg(long, value_name = "DIR", env = "NONCONV_OUT_DIR", default_value = "runs")]
    out_root: PathBuf,
    /// Also write the assembled stencil as stencil.csv
    #[arg(long)]
    dump_stencil: bool,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    #[arg(long, value_name = "NAME")]
    preset: Option<String>,
}

fn read_config(path: &Path) -> Result<ScenarioConfig> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    ScenarioConfig::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn run(args: RunArgs) -> Result<()> {
    let (name, config) = match (&args.source.config, &args.source.preset) {
        (Some(path), _) => {
            let stem = path.file_stem().unwrap_or_default().to_string_lossy().into_owned();
            (stem, read_config(path)?)
        }
        (None, Some(name)) => (name.clone(), presets::find(name)?.config),
        (None, None) => unreachable!("clap requires one source"),
    };
    let dir = args
        .out_dir
        .or_else(|| config.out_dir.clone())
        .unwrap_or_else(|| args.out_root.join(&name));

    let started = Instant::now();
    let scenario = config.validate()?;
    let grid = scenario.grid();
    log::info!(
        "{name}: {} nodes on [{}, {}], max bandwidth {}, stability margin {:.3}",
        grid.n_nodes(),
        grid.x_left(),
        grid.x_right(),
        scenario.stencil().max_bandwidth(),
        scenario.stability().margin
    );
    let (sim, outputs) = scenario.run(&dir, args.dump_stencil)?;
    log::info!(
        "{name}: {} snapshots, u in [{:.3e}, {:.3e}], boundary max {:.1e}, {:.1?}",
        sim.snapshots.len(),
        sim.extremes.min,
        sim.extremes.max,
        sim.extremes.boundary,
        started.elapsed()
    );
    for path in outputs.all() {
        println!("{}", path.display());
    }
    Ok(())
}

fn validate(path: &Path) -> Result<()> {
    let scenario = read_config(path)?.validate()?;
    print!("{}", scenario.config().to_text());
    let grid = scenario.grid();
    eprintln!(
        "ok: {} nodes on [{}, {}], stability margin {:.3}",
        grid.n_nodes(),
        grid.x_left(),
        grid.x_right(),
        scenario.stability().margin
    );
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => run(args),
        Command::ListPresets => {
            for p in presets::catalog() {
                println!("{:<24}{}", p.name, p.description);
            }
            Ok(())
        }
        Command::Validate { config } => validate(&config),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
