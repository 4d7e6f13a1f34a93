//! Plot-ready data extraction from a completed run.
//!
//! Each supported figure id maps the in-memory run record onto small CSV
//! files a plotting script can consume directly. Emission never recomputes
//! physics; it only reshapes what the run already measured.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::spectra::kesten_mckay_bin_mass;
use crate::sphere::exact::{mu1_exact, mu2_exact, rational_to_f64};

use super::run::{cell_tag, fmt_real, CellData, OutputRecord};

/// Figure ids `emit_figure_data` understands.
pub const SUPPORTED_FIGURES: [u32; 8] = [2, 3, 5, 6, 7, 8, 9, 10];

/// Write the data files behind one figure into the run's output directory.
/// Returns the paths written.
pub fn emit_figure_data(record: &OutputRecord, figure: u32) -> Result<Vec<PathBuf>> {
    match figure {
        2 => emit_eigen_density(record),
        3 => emit_ipr_density(record),
        5 => emit_scaling(record, 5),
        6 => emit_scaling(record, 6),
        7 => emit_scaling(record, 7),
        8 => emit_scaling(record, 8),
        9 => emit_fixed_degree(record),
        10 => emit_census(record),
        other => Err(Error::UnknownFigure(other.to_string())),
    }
}

fn require_cells(record: &OutputRecord, what: &str) -> Result<()> {
    if record.cells.is_empty() {
        return Err(Error::MissingFigureInput(format!(
            "no completed cells to draw {what} from"
        )));
    }
    Ok(())
}

fn write_file(record: &OutputRecord, name: String, contents: &str) -> Result<PathBuf> {
    let path = record.out_dir.join(name);
    fs::write(&path, contents)?;
    Ok(path)
}

fn emit_eigen_density(record: &OutputRecord) -> Result<Vec<PathBuf>> {
    require_cells(record, "spectral densities")?;
    let mut paths = Vec::new();
    for cell in &record.cells {
        let mut csv = String::from("bin_center,mass,km_mass\n");
        for (k, pair) in cell.eigen_hist.edges.windows(2).enumerate() {
            let center = 0.5 * (pair[0] + pair[1]);
            let km = kesten_mckay_bin_mass(pair[0], pair[1], cell.z);
            let _ = writeln!(
                csv,
                "{},{},{}",
                fmt_real(center),
                fmt_real(cell.eigen_hist.masses[k]),
                fmt_real(km)
            );
        }
        let name = format!("fig2_{}.csv", cell_tag(cell.n, cell.z, cell.exhaustive));
        paths.push(write_file(record, name, &csv)?);
    }
    Ok(paths)
}

fn emit_ipr_density(record: &OutputRecord) -> Result<Vec<PathBuf>> {
    require_cells(record, "IPR densities")?;
    let mut paths = Vec::new();
    for cell in &record.cells {
        let mut csv = String::new();
        if let Some(fit) = &cell.gaussian {
            let _ = writeln!(csv, "# gaussian_amplitude = {}", fmt_real(fit.amplitude));
            let _ = writeln!(csv, "# gaussian_mean = {}", fmt_real(fit.mean));
            let _ = writeln!(csv, "# gaussian_sigma = {}", fmt_real(fit.sigma));
        }
        csv.push_str("bin_center,mass\n");
        for (k, pair) in cell.ipr_hist.edges.windows(2).enumerate() {
            let center = 0.5 * (pair[0] + pair[1]);
            let _ = writeln!(
                csv,
                "{},{}",
                fmt_real(center),
                fmt_real(cell.ipr_hist.masses[k])
            );
        }
        let name = format!("fig3_{}.csv", cell_tag(cell.n, cell.z, cell.exhaustive));
        paths.push(write_file(record, name, &csv)?);
    }
    Ok(paths)
}

fn sorted_cells(record: &OutputRecord) -> Vec<&CellData> {
    let mut cells: Vec<&CellData> = record.cells.iter().collect();
    cells.sort_by_key(|c| (c.z, c.n));
    cells
}

fn emit_scaling(record: &OutputRecord, figure: u32) -> Result<Vec<PathBuf>> {
    require_cells(record, "size-scaling trends")?;
    let (name, header) = match figure {
        5 => ("fig5.csv", "n,z,mean_ipr,std_ipr,mu1_exact"),
        6 => ("fig6.csv", "n,z,delta1"),
        7 => ("fig7.csv", "n,z,mean_var,mu2_exact"),
        _ => ("fig8.csv", "n,z,abs_delta2"),
    };
    let mut csv = format!("{header}\n");
    for cell in sorted_cells(record) {
        let s = &cell.stats;
        let line = match figure {
            5 => format!(
                "{},{},{},{},{}",
                s.n,
                s.z,
                fmt_real(s.mean_ipr),
                fmt_real(s.std_ipr),
                fmt_real(rational_to_f64(&mu1_exact(s.n)))
            ),
            6 => format!("{},{},{}", s.n, s.z, fmt_real(s.delta1)),
            7 => format!(
                "{},{},{},{}",
                s.n,
                s.z,
                fmt_real(s.mean_var),
                fmt_real(rational_to_f64(&mu2_exact(s.n)))
            ),
            _ => format!("{},{},{}", s.n, s.z, fmt_real(s.delta2.abs())),
        };
        csv.push_str(&line);
        csv.push('\n');
    }
    Ok(vec![write_file(record, name.to_string(), &csv)?])
}

fn emit_fixed_degree(record: &OutputRecord) -> Result<Vec<PathBuf>> {
    let mut rows: Vec<&CellData> = record.cells.iter().filter(|c| c.z == 3).collect();
    if rows.is_empty() {
        return Err(Error::MissingFigureInput(
            "no degree-3 cells in this run".into(),
        ));
    }
    rows.sort_by_key(|c| c.n);
    let mut csv = String::from("n,mean_ipr,std_ipr,mean_var\n");
    for cell in rows {
        let s = &cell.stats;
        let _ = writeln!(
            csv,
            "{},{},{},{}",
            s.n,
            fmt_real(s.mean_ipr),
            fmt_real(s.std_ipr),
            fmt_real(s.mean_var)
        );
    }
    Ok(vec![write_file(record, "fig9.csv".to_string(), &csv)?])
}

fn emit_census(record: &OutputRecord) -> Result<Vec<PathBuf>> {
    let census: Vec<&CellData> = record.cells.iter().filter(|c| c.exhaustive).collect();
    if census.is_empty() {
        return Err(Error::MissingFigureInput(
            "no exhaustive cells in this run".into(),
        ));
    }
    let mut paths = Vec::new();
    for cell in census {
        let tag = cell_tag(cell.n, cell.z, cell.exhaustive);
        let mut csv = String::from("eigenvalue,ipr\n");
        for &(_, _, eig, ipr) in &cell.mode_rows {
            let _ = writeln!(csv, "{},{}", fmt_real(eig), fmt_real(ipr));
        }
        paths.push(write_file(record, format!("fig10_modes_{tag}.csv"), &csv)?);

        let mut csv = String::from("graph_index,max_ipr\n");
        for &(g, _, _, max) in &cell.graph_rows {
            let _ = writeln!(csv, "{g},{}", fmt_real(max));
        }
        paths.push(write_file(record, format!("fig10_max_ipr_{tag}.csv"), &csv)?);
    }
    Ok(paths)
}
