use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use lattice_cli::config::{
    parse_config, Preset, Scenario, ScenarioConfig, DEFAULT_OUTPUTS, FIG2_MOMENTA, FIG2_TILTS,
};
use lattice_cli::{run_scenario, CliError};

/// Quantum particle on a tilted lattice: run a scenario from a config file or
/// a figure preset.
#[derive(Parser, Debug)]
#[command(name = "simulate", version)]
struct Args {
    /// Scenario config file.
    #[arg(required_unless_present = "preset", conflicts_with = "preset")]
    config: Option<PathBuf>,

    /// Only parse and validate the config file.
    #[arg(long, requires = "config")]
    validate: bool,

    /// Figure preset to run instead of a config file.
    #[arg(long, value_parser = ["fig1", "fig2", "fig3", "fig4", "fig5"], requires = "out")]
    preset: Option<String>,

    /// Output directory of a preset run.
    #[arg(long, requires = "preset")]
    out: Option<PathBuf>,

    /// Worker threads, 0 for one per core.
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

fn load(args: &Args) -> Result<(String, ScenarioConfig), CliError> {
    if let Some(name) = &args.preset {
        let preset = Preset::from_name(name).expect("clap restricts preset names");
        let config = ScenarioConfig {
            tunneling: 1.0,
            output_dir: args.out.clone().expect("clap requires --out"),
            outputs: DEFAULT_OUTPUTS.to_vec(),
            scenario: Scenario::FigurePreset {
                preset,
                fig2_tilts: FIG2_TILTS.to_vec(),
                fig2_momenta: FIG2_MOMENTA.to_vec(),
            },
        };
        return Ok((format!("preset {name}"), config));
    }
    let path = args.config.as_ref().expect("clap requires a config");
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })?;
    let config = parse_config(&text)?;
    Ok((path.display().to_string(), config))
}

fn main() -> ExitCode {
    let args = Args::parse();
    let (origin, config) = match load(&args) {
        Ok(loaded) => loaded,
        Err(e) => {
            let origin = args.config.as_ref().map(|p| p.display().to_string()).unwrap_or_default();
            eprintln!("simulate: {origin}: {e}");
            // an unreadable config file is still a config problem
            return ExitCode::from(match e {
                CliError::Io { .. } => 2,
                other => other.exit_code() as u8,
            });
        }
    };
    if args.validate {
        println!("{origin}: ok ({} mode)", config.mode().name());
        return ExitCode::SUCCESS;
    }

    let pool = match rayon::ThreadPoolBuilder::new().num_threads(args.threads).build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("simulate: cannot start {} threads: {e}", args.threads);
            return ExitCode::from(3);
        }
    };
    match pool.install(|| run_scenario(&config)) {
        Ok(summaries) => {
            for s in summaries {
                println!(
                    "{}: {} samples, max center deviation {:.3e}, {} files in {}",
                    s.name,
                    s.samples,
                    s.max_deviation,
                    s.files.len(),
                    s.dir.display()
                );
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("simulate: {origin}: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
