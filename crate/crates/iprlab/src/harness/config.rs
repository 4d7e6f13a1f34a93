//! Flat key-value run configuration.
//!
//! Format: one `key = value` per line, `#` comments, blank lines ignored.
//! `cell = n,z` may repeat to build the ensemble sweep; `exhaustive_cell = n,z`
//! likewise for census cells that diagonalize every connected (n, z) graph.

use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::graphgen::GraphSpec;

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// Random-ensemble (n, z) cells.
    pub cells: Vec<(usize, usize)>,
    /// Exhaustive-census (n, z) cells.
    pub exhaustive_cells: Vec<(usize, usize)>,
    /// Graph realizations per random cell.
    pub graphs: usize,
    /// Master seed; per-graph seeds are mixed from (seed, n, z, index).
    pub seed: u64,
    /// Worker threads; 0 picks the machine default.
    pub workers: usize,
    /// Output directory.
    pub out: PathBuf,
    /// Eigenvalue histogram bins over the Kesten-McKay band.
    pub eigen_bins: usize,
    /// IPR histogram bins.
    pub ipr_bins: usize,
    /// IPR histogram window.
    pub ipr_range: (f64, f64),
    /// Write one eigenvector matrix file per graph (O(n²) each).
    pub dump_eigenvectors: bool,
    /// Run the analytic identity suite and include its report in the output.
    pub sphere_verify: bool,
    /// Dimensions handed to the analytic suite.
    pub sphere_ns: Vec<usize>,
    /// Monte-Carlo samples per dimension in the analytic suite.
    pub mc_samples: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            cells: Vec::new(),
            exhaustive_cells: Vec::new(),
            graphs: 100,
            seed: 1,
            workers: 0,
            out: PathBuf::from("out"),
            eigen_bins: 50,
            ipr_bins: 50,
            ipr_range: (1.0, 6.0),
            dump_eigenvectors: false,
            sphere_verify: false,
            sphere_ns: (3..=8).collect(),
            mc_samples: 1_000_000,
        }
    }
}

impl RunConfig {
    /// A config must name at least one thing to do and satisfy graph invariants.
    pub fn validate(&self) -> Result<()> {
        if self.cells.is_empty() && self.exhaustive_cells.is_empty() && !self.sphere_verify {
            return Err(Error::Config(
                "no cells, no exhaustive cells, and sphere_verify off: nothing to run".into(),
            ));
        }
        if self.graphs == 0 {
            return Err(Error::Config("graphs must be at least 1".into()));
        }
        for &(n, z) in self.cells.iter().chain(&self.exhaustive_cells) {
            GraphSpec::new(n, z, 0)
                .validate()
                .map_err(|e| Error::Config(format!("cell {n},{z}: {e}")))?;
        }
        let (lo, hi) = self.ipr_range;
        if self.eigen_bins == 0 || self.ipr_bins == 0 || !(lo.is_finite() && hi.is_finite() && lo < hi)
        {
            return Err(Error::Config("bad histogram settings".into()));
        }
        if self.mc_samples < 100 {
            return Err(Error::Config("mc_samples must be at least 100".into()));
        }
        for &n in &self.sphere_ns {
            if n < 2 {
                return Err(Error::Config(format!("sphere_ns entry {n} below 2")));
            }
        }
        Ok(())
    }
}

fn parse_pair(value: &str, key: &str) -> Result<(usize, usize)> {
    let parts: Vec<&str> = value.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        return Err(Error::Config(format!("{key} wants \"n,z\", got {value:?}")));
    }
    let n = parts[0]
        .parse()
        .map_err(|_| Error::Config(format!("{key}: bad n in {value:?}")))?;
    let z = parts[1]
        .parse()
        .map_err(|_| Error::Config(format!("{key}: bad z in {value:?}")))?;
    Ok((n, z))
}

fn parse_num<T: std::str::FromStr>(value: &str, key: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| Error::Config(format!("{key}: cannot parse {value:?}")))
}

fn parse_bool(value: &str, key: &str) -> Result<bool> {
    match value.trim() {
        "true" | "on" | "1" => Ok(true),
        "false" | "off" | "0" => Ok(false),
        other => Err(Error::Config(format!("{key}: expected true/false, got {other:?}"))),
    }
}

/// Parse configuration text. Unknown keys are errors so typos cannot silently
/// fall back to defaults.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let mut cfg = RunConfig::default();
    let mut sphere_ns_set = false;
    for (lineno, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::Config(format!("line {}: expected key = value", lineno + 1))
        })?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "cell" => cfg.cells.push(parse_pair(value, key)?),
            "exhaustive_cell" => cfg.exhaustive_cells.push(parse_pair(value, key)?),
            "graphs" => cfg.graphs = parse_num(value, key)?,
            "seed" => cfg.seed = parse_num(value, key)?,
            "workers" => cfg.workers = parse_num(value, key)?,
            "out" => cfg.out = PathBuf::from(value),
            "eigen_bins" => cfg.eigen_bins = parse_num(value, key)?,
            "ipr_bins" => cfg.ipr_bins = parse_num(value, key)?,
            "ipr_range" => {
                let parts: Vec<&str> = value.split(',').map(str::trim).collect();
                if parts.len() != 2 {
                    return Err(Error::Config(format!("ipr_range wants \"lo,hi\", got {value:?}")));
                }
                cfg.ipr_range = (parse_num(parts[0], key)?, parse_num(parts[1], key)?);
            }
            "dump_eigenvectors" => cfg.dump_eigenvectors = parse_bool(value, key)?,
            "sphere_verify" => cfg.sphere_verify = parse_bool(value, key)?,
            "sphere_ns" => {
                if !sphere_ns_set {
                    cfg.sphere_ns.clear();
                    sphere_ns_set = true;
                }
                for part in value.split(',') {
                    cfg.sphere_ns.push(parse_num(part, key)?);
                }
            }
            "mc_samples" => cfg.mc_samples = parse_num(value, key)?,
            other => {
                return Err(Error::Config(format!(
                    "line {}: unknown key {other:?}",
                    lineno + 1
                )))
            }
        }
    }
    cfg.validate()?;
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_config_round_trip() {
        let text = "\
# ensemble sweep
cell = 100, 3
cell = 200,10
exhaustive_cell = 8,3
graphs = 25
seed = 42
workers = 4
out = /tmp/somewhere
eigen_bins = 40
ipr_bins = 60
ipr_range = 1.0, 5.5
dump_eigenvectors = true
sphere_verify = on
sphere_ns = 3,4,5
mc_samples = 20000
";
        let cfg = parse_config(text).unwrap();
        assert_eq!(cfg.cells, vec![(100, 3), (200, 10)]);
        assert_eq!(cfg.exhaustive_cells, vec![(8, 3)]);
        assert_eq!(cfg.graphs, 25);
        assert_eq!(cfg.seed, 42);
        assert_eq!(cfg.workers, 4);
        assert_eq!(cfg.out, PathBuf::from("/tmp/somewhere"));
        assert_eq!(cfg.eigen_bins, 40);
        assert_eq!(cfg.ipr_bins, 60);
        assert_eq!(cfg.ipr_range, (1.0, 5.5));
        assert!(cfg.dump_eigenvectors);
        assert!(cfg.sphere_verify);
        assert_eq!(cfg.sphere_ns, vec![3, 4, 5]);
        assert_eq!(cfg.mc_samples, 20_000);
    }

    #[test]
    fn defaults_fill_unset_keys() {
        let cfg = parse_config("cell = 50,4\n").unwrap();
        assert_eq!(cfg.graphs, 100);
        assert_eq!(cfg.seed, 1);
        assert_eq!(cfg.eigen_bins, 50);
        assert_eq!(cfg.ipr_range, (1.0, 6.0));
        assert!(!cfg.dump_eigenvectors);
        assert_eq!(cfg.sphere_ns, vec![3, 4, 5, 6, 7, 8]);
    }

    #[test]
    fn unknown_keys_and_bad_values_are_config_errors() {
        assert!(matches!(
            parse_config("cel = 10,3\n"),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            parse_config("cell = 10\n"),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            parse_config("cell = 10,3\ngraphs = many\n"),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            parse_config("cell = 10,3\ndump_eigenvectors = maybe\n"),
            Err(Error::Config(_))
        ));
        assert!(matches!(parse_config("graphs = 5\n"), Err(Error::Config(_))));
    }

    #[test]
    fn invalid_cells_are_rejected_at_parse_time() {
        // odd n·z violates handshake parity
        assert!(matches!(
            parse_config("cell = 7,3\n"),
            Err(Error::Config(_))
        ));
        // z must stay below n
        assert!(matches!(
            parse_config("cell = 4,4\n"),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            parse_config("cell = 10,3\nipr_range = 6,1\n"),
            Err(Error::Config(_))
        ));
    }
}
