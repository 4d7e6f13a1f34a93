//! Command-line front end.
//!
//! Thin dispatch over the library: graph generation, single-graph spectra,
//! configured ensemble runs, exact-vs-sampled sphere verification,
//! exhaustive small-graph enumeration, and figure data extraction.
//! Exit codes: 0 success, 1 a check or cell failed, 2 bad input.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use iprlab::graphgen::{
    enumerate_connected_regular, generate_regular, graph_to_string, GraphSpec,
};
use iprlab::harness::{
    emit_figure_data, graph_seed, parse_config, run_ensemble, verify_analytics, write_manifest,
    RunConfig, SUPPORTED_FIGURES,
};
use iprlab::iprstats::ipr;
use iprlab::spectra::{eigendecompose, laplacian, DEFAULT_EIGEN_TOL};
use iprlab::{Error, Result};

#[derive(Parser)]
#[command(
    name = "iprlab",
    version,
    about = "Eigenvector participation statistics on random regular graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw random connected z-regular graphs and print them.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        z: usize,
        /// Master seed; graph k uses a seed derived from (seed, n, z, k).
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Write to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Diagonalize one graph Laplacian and print eigenvalue/IPR per mode.
    Spectrum {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        z: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every cell in a config file and write all outputs.
    Ensemble {
        /// Plain-text key=value configuration file.
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check closed-form sphere averages against the independent engines.
    SphereVerify {
        /// Subsphere dimensions to test.
        #[arg(long, value_delimiter = ',', default_values_t = vec![3, 4, 5, 6, 7, 8])]
        ns: Vec<usize>,
        #[arg(long, default_value_t = 1_000_000)]
        mc_samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Emit the report as JSON instead of text.
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count (and optionally print) all connected z-regular graphs on n vertices.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        z: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print every graph, not just the census count.
        #[arg(long)]
        print_graphs: bool,
    },
    /// Run a config and extract the data files behind one figure.
    FigureData {
        config: PathBuf,
        #[arg(long)]
        figure: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Config(_)
        | Error::InvalidSpec(_)
        | Error::InvalidArgument(_)
        | Error::UnknownFigure(_)
        | Error::Budget(_) => 2,
        _ => 1,
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn dispatch(command: Command) -> Result<bool> {
    match command {
        Command::Generate {
            n,
            z,
            seed,
            count,
            out,
        } => {
            let mut text = String::new();
            for k in 0..count {
                let s = graph_seed(seed, n, z, k);
                let g = generate_regular(&GraphSpec::new(n, z, s))?;
                if k > 0 {
                    text.push('\n');
                }
                text.push_str(&graph_to_string(&g, s));
            }
            emit(&text, out.as_deref())?;
            Ok(true)
        }
        Command::Spectrum { n, z, seed, out } => {
            let g = generate_regular(&GraphSpec::new(n, z, seed))?;
            let d = eigendecompose(&laplacian(&g), DEFAULT_EIGEN_TOL)?;
            let zero = iprlab::spectra::zero_mode_index(&d, DEFAULT_EIGEN_TOL)?;
            let mut text = String::from("mode_index,eigenvalue,ipr,zero_mode\n");
            for k in 0..d.n() {
                text.push_str(&format!(
                    "{k},{:.16e},{:.16e},{}\n",
                    d.eigenvalues()[k],
                    ipr(d.vector(k))?,
                    usize::from(k == zero)
                ));
            }
            emit(&text, out.as_deref())?;
            Ok(true)
        }
        Command::Ensemble {
            config,
            seed,
            workers,
            out,
        } => {
            let cfg = load_config(&config, seed, workers, out)?;
            let record = run_ensemble(&cfg)?;
            for cell in &record.cells {
                let s = &cell.stats;
                println!(
                    "cell n={} z={}{}: graphs={} mean_ipr={:.6} std_ipr={:.6} mean_var={:.6} delta1={:+.3e} delta2={:+.3e}",
                    s.n,
                    s.z,
                    if cell.exhaustive { " (census)" } else { "" },
                    s.graph_count,
                    s.mean_ipr,
                    s.std_ipr,
                    s.mean_var,
                    s.delta1,
                    s.delta2
                );
            }
            for f in &record.failures {
                println!(
                    "cell n={} z={}{}: FAILED: {}",
                    f.n,
                    f.z,
                    if f.exhaustive { " (census)" } else { "" },
                    f.message
                );
            }
            if let Some(report) = &record.verify {
                let passed = report.checks.iter().filter(|c| c.pass).count();
                println!("verify: {passed}/{} checks passed", report.checks.len());
            }
            println!("outputs in {}", record.out_dir.display());
            Ok(record.all_ok())
        }
        Command::SphereVerify {
            ns,
            mc_samples,
            seed,
            json,
            out,
        } => {
            let report = verify_analytics(&ns, mc_samples, seed)?;
            let text = if json {
                let mut js = serde_json::to_string_pretty(&report)
                    .map_err(|e| Error::Numeric(format!("report serialization: {e}")))?;
                js.push('\n');
                js
            } else {
                report.render_text()
            };
            emit(&text, out.as_deref())?;
            if out.is_some() {
                println!(
                    "verify: {}/{} checks passed",
                    report.checks.iter().filter(|c| c.pass).count(),
                    report.checks.len()
                );
            }
            Ok(report.all_pass())
        }
        Command::Enumerate {
            n,
            z,
            out,
            print_graphs,
        } => {
            let census = enumerate_connected_regular(n, z)?;
            let mut text = String::new();
            if print_graphs {
                for (k, g) in census.graphs.iter().enumerate() {
                    if k > 0 {
                        text.push('\n');
                    }
                    text.push_str(&graph_to_string(g, k as u64));
                }
            }
            text.push_str(&format!("{}\n", census.count));
            emit(&text, out.as_deref())?;
            Ok(true)
        }
        Command::FigureData {
            config,
            figure,
            out,
        } => {
            if !SUPPORTED_FIGURES.contains(&figure) {
                return Err(Error::UnknownFigure(figure.to_string()));
            }
            let cfg = load_config(&config, None, None, out)?;
            let record = run_ensemble(&cfg)?;
            let paths = emit_figure_data(&record, figure)?;
            write_manifest(&record.out_dir)?;
            for p in &paths {
                println!("{}", p.display());
            }
            Ok(record.all_ok())
        }
    }
}

fn load_config(
    path: &Path,
    seed: Option<u64>,
    workers: Option<usize>,
    out: Option<PathBuf>,
) -> Result<RunConfig> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    let mut cfg = parse_config(&text)?;
    if let Some(s) = seed {
        cfg.seed = s;
    }
    if let Some(w) = workers {
        cfg.workers = w;
    }
    if let Some(o) = out {
        cfg.out = o;
    }
    Ok(cfg)
}
