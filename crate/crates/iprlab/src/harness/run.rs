//! Deterministic ensemble orchestration and file emission.
//!
//! Every graph draw is seeded by mixing (master seed, n, z, graph index), so
//! results depend only on the configuration, never on worker count or
//! scheduling. Workers own whole graphs; the collector aggregates in index
//! order and performs all writes.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::graphgen::{
    enumerate_connected_regular, generate_regular, GraphSpec, RegularGraph, RNG_ALGORITHM,
};
use crate::iprstats::{
    ensemble_stats, gaussian_fit, graph_ipr_summary, ipr_histogram, EnsembleIprStats, GaussianFit,
    GraphIprSummary, IprHistogram,
};
use crate::spectra::{
    eigendecompose, eigenvalue_histogram_from_slices, kesten_mckay_bin_mass, laplacian,
    SpectralDensityHistogram, DEFAULT_EIGEN_TOL,
};
use crate::sphere::exact::{mu1_exact, mu2_exact, rational_to_f64};

use super::config::RunConfig;
use super::verify::{verify_analytics, VerifyReport};

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Fold a sequence of values into one seed; the first element starts the chain.
pub fn mix_seed(parts: &[u64]) -> u64 {
    let mut s = 0u64;
    for &p in parts {
        s = splitmix64(s ^ p);
    }
    s
}

/// Seed of graph `index` within cell (n, z).
pub fn graph_seed(master: u64, n: usize, z: usize, index: usize) -> u64 {
    mix_seed(&[master, n as u64, z as u64, index as u64])
}

/// Everything measured for one completed (n, z) cell.
#[derive(Debug, Clone)]
pub struct CellData {
    pub n: usize,
    pub z: usize,
    pub exhaustive: bool,
    pub stats: EnsembleIprStats,
    pub eigen_hist: SpectralDensityHistogram,
    pub ipr_hist: IprHistogram,
    pub gaussian: Option<GaussianFit>,
    /// (graph index, mode-averaged IPR, IPR variance, max IPR) per graph.
    pub graph_rows: Vec<(usize, f64, f64, f64)>,
    /// (graph index, mode index, eigenvalue, IPR) per non-zero mode.
    pub mode_rows: Vec<(usize, usize, f64, f64)>,
}

#[derive(Debug, Clone)]
pub struct CellFailure {
    pub n: usize,
    pub z: usize,
    pub exhaustive: bool,
    pub message: String,
}

#[derive(Debug)]
pub struct OutputRecord {
    pub out_dir: PathBuf,
    pub cells: Vec<CellData>,
    pub failures: Vec<CellFailure>,
    pub verify: Option<VerifyReport>,
    /// (relative path, sha256) pairs mirrored in manifest.txt.
    pub manifest: Vec<(String, String)>,
}

impl OutputRecord {
    pub fn all_ok(&self) -> bool {
        self.failures.is_empty() && self.verify.as_ref().is_none_or(|v| v.all_pass())
    }
}

pub(crate) fn fmt_real(v: f64) -> String {
    format!("{v:.16e}")
}

pub(crate) fn cell_tag(n: usize, z: usize, exhaustive: bool) -> String {
    format!("n{n}_z{z}{}", if exhaustive { "_census" } else { "" })
}

/// Run every configured cell, write all outputs, and build the manifest.
///
/// A failing cell writes an error file and is recorded in `failures`; sibling
/// cells are unaffected. The returned record carries everything the figure
/// emitters need.
pub fn run_ensemble(cfg: &RunConfig) -> Result<OutputRecord> {
    cfg.validate()?;
    fs::create_dir_all(&cfg.out)?;
    let started = unix_now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::Config(format!("cannot build worker pool: {e}")))?;

    let mut cells = Vec::new();
    let mut failures = Vec::new();
    let planned: Vec<(usize, usize, bool)> = cfg
        .cells
        .iter()
        .map(|&(n, z)| (n, z, false))
        .chain(cfg.exhaustive_cells.iter().map(|&(n, z)| (n, z, true)))
        .collect();
    for (n, z, exhaustive) in planned {
        let outcome = pool.install(|| run_cell(cfg, n, z, exhaustive));
        match outcome {
            Ok(cell) => cells.push(cell),
            Err(e) => {
                let message = e.to_string();
                write_text(
                    &cfg.out,
                    &format!("error_{}.txt", cell_tag(n, z, exhaustive)),
                    &format!("cell n={n} z={z}{}: {message}\n", if exhaustive { " (census)" } else { "" }),
                )?;
                failures.push(CellFailure {
                    n,
                    z,
                    exhaustive,
                    message,
                });
            }
        }
    }

    write_ensemble_summary(&cfg.out, &cells)?;

    let verify = if cfg.sphere_verify {
        let report = verify_analytics(&cfg.sphere_ns, cfg.mc_samples, cfg.seed)?;
        write_text(&cfg.out, "verify_report.txt", &report.render_text())?;
        let js = serde_json::to_string_pretty(&report)
            .map_err(|e| Error::Numeric(format!("verify report serialization: {e}")))?;
        write_text(&cfg.out, "verify_report.json", &js)?;
        Some(report)
    } else {
        None
    };

    write_metadata(cfg, started, unix_now(), cells.len(), failures.len())?;
    let manifest = write_manifest(&cfg.out)?;

    Ok(OutputRecord {
        out_dir: cfg.out.clone(),
        cells,
        failures,
        verify,
        manifest,
    })
}

struct PerGraph {
    eigenvalues: Vec<f64>,
    summary: GraphIprSummary,
    mode_rows: Vec<(usize, usize, f64, f64)>,
    vector_dump: Option<String>,
}

fn realize_graph(cfg: &RunConfig, graph: &RegularGraph, index: usize) -> Result<PerGraph> {
    let l = laplacian(graph);
    let d = eigendecompose(&l, DEFAULT_EIGEN_TOL)?;
    let summary = graph_ipr_summary(&d)?;
    let mut mode_rows = Vec::with_capacity(summary.iprs.len());
    let mut next = 0usize;
    for k in 0..d.n() {
        if k == summary.zero_mode {
            continue;
        }
        mode_rows.push((index, k, d.eigenvalues()[k], summary.iprs[next]));
        next += 1;
    }
    let vector_dump = cfg.dump_eigenvectors.then(|| {
        let mut s = String::new();
        for k in 0..d.n() {
            s.push_str(&fmt_real(d.eigenvalues()[k]));
            for c in d.vector(k) {
                s.push(',');
                s.push_str(&fmt_real(*c));
            }
            s.push('\n');
        }
        s
    });
    Ok(PerGraph {
        eigenvalues: d.eigenvalues().to_vec(),
        summary,
        mode_rows,
        vector_dump,
    })
}

fn run_cell(cfg: &RunConfig, n: usize, z: usize, exhaustive: bool) -> Result<CellData> {
    let per: Vec<PerGraph> = if exhaustive {
        let census = enumerate_connected_regular(n, z)?;
        census
            .graphs
            .par_iter()
            .enumerate()
            .map(|(g, graph)| realize_graph(cfg, graph, g))
            .collect::<Result<_>>()?
    } else {
        (0..cfg.graphs)
            .into_par_iter()
            .map(|g| {
                let spec = GraphSpec::new(n, z, graph_seed(cfg.seed, n, z, g));
                let graph = generate_regular(&spec)?;
                realize_graph(cfg, &graph, g)
            })
            .collect::<Result<_>>()?
    };

    let summaries: Vec<GraphIprSummary> = per.iter().map(|p| p.summary.clone()).collect();
    let stats = ensemble_stats(
        &summaries,
        rational_to_f64(&mu1_exact(n)),
        rational_to_f64(&mu2_exact(n)),
    )?;
    let spectra_refs: Vec<&[f64]> = per.iter().map(|p| p.eigenvalues.as_slice()).collect();
    let eigen_hist = eigenvalue_histogram_from_slices(n, z, &spectra_refs, cfg.eigen_bins, None)?;
    let ipr_hist = ipr_histogram(&summaries, cfg.ipr_bins, cfg.ipr_range)?;
    let gaussian = gaussian_fit(&ipr_hist).ok();
    let graph_rows: Vec<(usize, f64, f64, f64)> = summaries
        .iter()
        .enumerate()
        .map(|(g, s)| (g, s.mean_ipr, s.var_ipr, s.max_ipr))
        .collect();
    let mode_rows: Vec<(usize, usize, f64, f64)> =
        per.iter().flat_map(|p| p.mode_rows.iter().copied()).collect();

    let cell = CellData {
        n,
        z,
        exhaustive,
        stats,
        eigen_hist,
        ipr_hist,
        gaussian,
        graph_rows,
        mode_rows,
    };
    write_cell_files(cfg, &cell)?;
    for (g, p) in per.iter().enumerate() {
        if let Some(dump) = &p.vector_dump {
            write_text(
                &cfg.out,
                &format!("eigenvectors_{}_g{g}.csv", cell_tag(n, z, exhaustive)),
                dump,
            )?;
        }
    }
    Ok(cell)
}

fn write_cell_files(cfg: &RunConfig, cell: &CellData) -> Result<()> {
    let tag = cell_tag(cell.n, cell.z, cell.exhaustive);

    let mut csv = String::from("graph_index,mode_index,eigenvalue,ipr\n");
    for &(g, k, eig, ipr) in &cell.mode_rows {
        let _ = writeln!(csv, "{g},{k},{},{}", fmt_real(eig), fmt_real(ipr));
    }
    write_text(&cfg.out, &format!("ipr_per_mode_{tag}.csv"), &csv)?;

    let mut csv = format!(
        "# zero_mode_mass = {}\nbin_lo,bin_hi,mass,km_mass\n",
        fmt_real(cell.eigen_hist.delta_mass)
    );
    for (k, pair) in cell.eigen_hist.edges.windows(2).enumerate() {
        let km = kesten_mckay_bin_mass(pair[0], pair[1], cell.z);
        let _ = writeln!(
            csv,
            "{},{},{},{}",
            fmt_real(pair[0]),
            fmt_real(pair[1]),
            fmt_real(cell.eigen_hist.masses[k]),
            fmt_real(km)
        );
    }
    write_text(&cfg.out, &format!("eigen_hist_{tag}.csv"), &csv)?;

    let mut csv = String::new();
    if let Some(fit) = &cell.gaussian {
        let _ = writeln!(csv, "# gaussian_amplitude = {}", fmt_real(fit.amplitude));
        let _ = writeln!(csv, "# gaussian_mean = {}", fmt_real(fit.mean));
        let _ = writeln!(csv, "# gaussian_sigma = {}", fmt_real(fit.sigma));
        let _ = writeln!(csv, "# gaussian_residual = {}", fmt_real(fit.residual));
    }
    csv.push_str("bin_lo,bin_hi,mass\n");
    for (k, pair) in cell.ipr_hist.edges.windows(2).enumerate() {
        let _ = writeln!(
            csv,
            "{},{},{}",
            fmt_real(pair[0]),
            fmt_real(pair[1]),
            fmt_real(cell.ipr_hist.masses[k])
        );
    }
    write_text(&cfg.out, &format!("ipr_hist_{tag}.csv"), &csv)?;

    let mut csv = String::from("graph_index,mean_ipr,var_ipr,max_ipr\n");
    for &(g, mean, var, max) in &cell.graph_rows {
        let _ = writeln!(
            csv,
            "{g},{},{},{}",
            fmt_real(mean),
            fmt_real(var),
            fmt_real(max)
        );
    }
    write_text(&cfg.out, &format!("graph_summaries_{tag}.csv"), &csv)?;
    Ok(())
}

fn write_ensemble_summary(out: &Path, cells: &[CellData]) -> Result<()> {
    let mut csv =
        String::from("n,z,N_G,mean_ipr,std_ipr,mean_var,mu1_exact,mu2_exact,delta1,delta2\n");
    for cell in cells {
        let s = &cell.stats;
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{},{},{},{}",
            s.n,
            s.z,
            s.graph_count,
            fmt_real(s.mean_ipr),
            fmt_real(s.std_ipr),
            fmt_real(s.mean_var),
            fmt_real(rational_to_f64(&mu1_exact(s.n))),
            fmt_real(rational_to_f64(&mu2_exact(s.n))),
            fmt_real(s.delta1),
            fmt_real(s.delta2)
        );
    }
    write_text(out, "ensemble_summary.csv", &csv)
}

fn write_metadata(
    cfg: &RunConfig,
    started: u64,
    finished: u64,
    completed: usize,
    failed: usize,
) -> Result<()> {
    let mut text = String::new();
    let _ = writeln!(text, "started_unix = {started}");
    let _ = writeln!(text, "finished_unix = {finished}");
    let _ = writeln!(text, "rng_algorithm = {RNG_ALGORITHM}");
    let _ = writeln!(text, "seed = {}", cfg.seed);
    let _ = writeln!(text, "graphs = {}", cfg.graphs);
    let _ = writeln!(text, "workers = {}", cfg.workers);
    let _ = writeln!(text, "eigen_bins = {}", cfg.eigen_bins);
    let _ = writeln!(text, "ipr_bins = {}", cfg.ipr_bins);
    let _ = writeln!(text, "ipr_range = {},{}", cfg.ipr_range.0, cfg.ipr_range.1);
    let _ = writeln!(text, "dump_eigenvectors = {}", cfg.dump_eigenvectors);
    let _ = writeln!(text, "sphere_verify = {}", cfg.sphere_verify);
    if cfg.sphere_verify {
        let ns: Vec<String> = cfg.sphere_ns.iter().map(|n| n.to_string()).collect();
        let _ = writeln!(text, "sphere_ns = {}", ns.join(","));
        let _ = writeln!(text, "mc_samples = {}", cfg.mc_samples);
    }
    for &(n, z) in &cfg.cells {
        let _ = writeln!(text, "cell = {n},{z}");
    }
    for &(n, z) in &cfg.exhaustive_cells {
        let _ = writeln!(text, "exhaustive_cell = {n},{z}");
    }
    let _ = writeln!(text, "cells_completed = {completed}");
    let _ = writeln!(text, "cells_failed = {failed}");
    write_text(&cfg.out, "run_metadata.txt", &text)
}

fn write_text(dir: &Path, name: &str, contents: &str) -> Result<()> {
    fs::write(dir.join(name), contents)?;
    Ok(())
}

fn unix_now() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

fn collect_files(dir: &Path, into: &mut Vec<PathBuf>) -> Result<()> {
    let mut entries: Vec<PathBuf> = fs::read_dir(dir)?
        .map(|e| e.map(|e| e.path()))
        .collect::<std::io::Result<_>>()?;
    entries.sort();
    for path in entries {
        if path.is_dir() {
            collect_files(&path, into)?;
        } else {
            into.push(path);
        }
    }
    Ok(())
}

/// Checksum every file under `dir` (except the manifest itself) into
/// manifest.txt, one `sha256  relative-path` line per file, sorted by path.
pub fn write_manifest(dir: &Path) -> Result<Vec<(String, String)>> {
    let mut files = Vec::new();
    collect_files(dir, &mut files)?;
    let mut entries = Vec::new();
    for path in files {
        let rel = path
            .strip_prefix(dir)
            .unwrap_or(&path)
            .to_string_lossy()
            .into_owned();
        if rel == "manifest.txt" {
            continue;
        }
        let bytes = fs::read(&path)?;
        let digest = Sha256::digest(&bytes);
        let mut hex = String::with_capacity(64);
        for b in digest {
            let _ = write!(hex, "{b:02x}");
        }
        entries.push((rel, hex));
    }
    let mut text = String::new();
    for (rel, hex) in &entries {
        let _ = writeln!(text, "{hex}  {rel}");
    }
    fs::write(dir.join("manifest.txt"), text)?;
    Ok(entries)
}
