use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, ValueEnum};
use oraclebench::config::parse_config;
use oraclebench::emit::{write_outputs, Format};
use oraclebench::presets::{named_bound, repro, run_config, RunOutput, BOUND_NAMES, NAMES};
use oraclebench::Error;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
    Both,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
            FormatArg::Both => Format::Both,
        }
    }
}

/// Oracle-complexity testbed: run experiments, named reproductions, or
/// evaluate a single bound formula.
#[derive(Debug, Parser)]
#[command(name = "oraclebench", version)]
#[command(group(ArgGroup::new("command").required(true).args(["config", "repro", "bound"])))]
struct Cli {
    /// Experiment config file (TOML).
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Named preset.
    #[arg(long, value_name = "NAME", value_parser = clap::builder::PossibleValuesParser::new(NAMES))]
    repro: Option<String>,

    /// Named bound formula; parameters via `--param key=value`.
    #[arg(long, value_name = "NAME", value_parser = clap::builder::PossibleValuesParser::new(BOUND_NAMES))]
    bound: Option<String>,

    #[arg(long = "param", value_name = "KEY=VALUE", requires = "bound", value_parser = parse_param)]
    params: Vec<(String, f64)>,

    /// Overrides the config or preset seed.
    #[arg(long, value_name = "U64")]
    seed: Option<u64>,

    #[arg(long, value_name = "DIR", default_value = "out")]
    out: PathBuf,

    #[arg(long, value_enum, default_value = "both")]
    format: FormatArg,

    /// Worker threads for the simulation; defaults to all cores.
    #[arg(long, value_name = "N")]
    jobs: Option<usize>,

    /// Also print bound values in bits.
    #[arg(long)]
    bits: bool,
}

fn parse_param(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| format!("expected KEY=VALUE, got `{s}`"))?;
    let v: f64 = v.trim().parse().map_err(|e| format!("`{k}`: {e}"))?;
    Ok((k.trim().to_string(), v))
}

fn read_config(path: &Path, seed: Option<u64>) -> oraclebench::Result<(String, RunOutput, u64)> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let mut cfg = parse_config(&text)?;
    if let Some(s) = seed {
        cfg.base_seed = s;
    }
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "config".into());
    Ok((stem, run_config(&cfg)?, cfg.base_seed))
}

fn execute(cli: &Cli) -> oraclebench::Result<bool> {
    let format = Format::from(cli.format);
    if let Some(name) = &cli.bound {
        let params: BTreeMap<String, f64> = cli.params.iter().cloned().collect();
        let report = named_bound(name, &params)?;
        if cli.bits {
            println!(
                "{name}: {} nats = {} bits",
                report.value,
                report.value / std::f64::consts::LN_2
            );
        } else {
            println!("{name}: {} nats", report.value);
        }
        let valid = report.is_valid();
        for p in report.validity.iter().filter(|p| !p.satisfied) {
            eprintln!("precondition not met: {}", p.condition);
        }
        let written = write_outputs(&cli.out, name, cli.seed.unwrap_or(0), format, None, &[report])?;
        report_paths(&written);
        return Ok(valid);
    }

    let (stem, output, seed) = if let Some(path) = &cli.config {
        read_config(path, cli.seed)?
    } else {
        let name = cli.repro.as_deref().expect("clap enforces one command");
        let cfg_seed = oraclebench::presets::preset_config(name)?.base_seed;
        let seed = cli.seed.unwrap_or(cfg_seed);
        (name.to_string(), repro(name, Some(seed))?, seed)
    };
    let written = write_outputs(&cli.out, &stem, seed, format, Some(&output.result), &output.reports)?;
    report_paths(&written);
    let mut valid = true;
    for r in &output.reports {
        for p in r.validity.iter().filter(|p| !p.satisfied) {
            eprintln!("{}: precondition not met: {}", r.name, p.condition);
            valid = false;
        }
    }
    Ok(valid)
}

fn report_paths(paths: &[PathBuf]) {
    for p in paths {
        println!("wrote {}", p.display());
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            eprintln!("error: --jobs: {e}");
            return ExitCode::from(2);
        }
    }
    match execute(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
