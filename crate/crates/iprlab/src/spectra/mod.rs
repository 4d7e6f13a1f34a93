//! Graph Laplacians, their full spectra, and comparison against the Kesten-McKay law.
//!
//! The Laplacian of a z-regular graph is L = z·I − A. Its spectrum lives in [0, 2z]; for a
//! connected graph the kernel is exactly the span of the constant vector, and as n grows the
//! nonzero eigenvalues fill the band z ± 2√(z−1) with the Kesten-McKay density.

pub mod eigen;

pub use eigen::{eigendecompose, zero_mode_index, EigenDecomposition, DEFAULT_EIGEN_TOL};

use crate::error::{Error, Result};
use crate::graphgen::RegularGraph;
use std::f64::consts::PI;

/// Eigenvalues at or below this magnitude are treated as the Laplacian's zero mode and kept
/// out of band statistics.
pub const ZERO_MODE_EPS: f64 = 1e-8;

/// Dense symmetric Laplacian L = z·I − A stored as a flat n×n array.
#[derive(Debug, Clone)]
pub struct LaplacianMatrix {
    n: usize,
    z: usize,
    entries: Vec<f64>,
}

impl LaplacianMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn z(&self) -> usize {
        self.z
    }

    /// Flat entries; the matrix is symmetric so the layout convention is immaterial.
    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }
}

pub fn laplacian(g: &RegularGraph) -> LaplacianMatrix {
    let n = g.n();
    let z = g.z();
    let mut entries = vec![0.0; n * n];
    for i in 0..n {
        entries[i * n + i] = z as f64;
        for &w in g.neighbors(i) {
            entries[i * n + w as usize] = -1.0;
        }
    }
    LaplacianMatrix { n, z, entries }
}

/// Continuum part of the Kesten-McKay eigenvalue density for z-regular graphs,
/// (z/2π)·√(4(z−1)−(ε−z)²)/(z²−(ε−z)²) inside the band |ε−z| ≤ 2√(z−1), zero outside.
/// The finite-n delta of weight 1/n at ε = 0 is reported separately in histograms.
pub fn kesten_mckay_density(eps: f64, z: usize) -> f64 {
    let zf = z as f64;
    let x = eps - zf;
    let width_sq = 4.0 * (zf - 1.0);
    if x * x >= width_sq {
        return 0.0;
    }
    zf / (2.0 * PI) * (width_sq - x * x).sqrt() / (zf * zf - x * x)
}

/// Support of the continuum density, (z − 2√(z−1), z + 2√(z−1)).
pub fn kesten_mckay_band(z: usize) -> (f64, f64) {
    let zf = z as f64;
    let half = 2.0 * (zf - 1.0).sqrt();
    (zf - half, zf + half)
}

/// Integral of the continuum density over [a, b], clipped to the band.
///
/// For z = 2 the density is the arcsine law with a closed-form antiderivative. For z ≥ 3 the
/// substitution ε = z + 2√(z−1)·sin t removes the inverse-square-root edges and leaves a
/// smooth integrand, (z/2π)·w²cos²t/(z²−w²sin²t) with w = 2√(z−1), handled by adaptive
/// Simpson quadrature.
pub fn kesten_mckay_bin_mass(a: f64, b: f64, z: usize) -> f64 {
    let zf = z as f64;
    let w = 2.0 * (zf - 1.0).sqrt();
    let lo = a.max(zf - w);
    let hi = b.min(zf + w);
    if hi <= lo {
        return 0.0;
    }
    if z == 2 {
        return (((hi - zf) / w).asin() - ((lo - zf) / w).asin()) / PI;
    }
    let ta = ((lo - zf) / w).clamp(-1.0, 1.0).asin();
    let tb = ((hi - zf) / w).clamp(-1.0, 1.0).asin();
    let f = |t: f64| {
        let c = t.cos();
        let s = t.sin();
        zf / (2.0 * PI) * w * w * c * c / (zf * zf - w * w * s * s)
    };
    adaptive_simpson(&f, ta, tb, 1e-12)
}

fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, eps: f64) -> f64 {
    fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &impl Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        eps: f64,
        depth: usize,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(fa, flm, fm, a, m);
        let right = simpson(fm, frm, fb, m, b);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * eps {
            left + right + delta / 15.0
        } else {
            recurse(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1)
                + recurse(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1)
        }
    }
    let m = 0.5 * (a + b);
    let fa = f(a);
    let fm = f(m);
    let fb = f(b);
    recurse(f, a, b, fa, fm, fb, simpson(fa, fm, fb, a, b), eps, 40)
}

/// Graph-averaged eigenvalue histogram.
#[derive(Debug, Clone)]
pub struct SpectralDensityHistogram {
    /// bins+1 ascending bin edges.
    pub edges: Vec<f64>,
    /// Average per-graph bin masses; each graph's in-range eigenvalues carry total mass 1.
    pub masses: Vec<f64>,
    /// Number of decompositions averaged over.
    pub graph_count: usize,
    /// Average fraction of modes excluded as zero modes (1/n per connected graph).
    pub delta_mass: f64,
}

/// Histogram of nonzero eigenvalues, normalized per graph and then averaged with equal
/// weight per graph. `range` defaults to the Kesten-McKay band for the common degree.
pub fn eigenvalue_histogram(
    decomps: &[EigenDecomposition],
    bins: usize,
    range: Option<(f64, f64)>,
) -> Result<SpectralDensityHistogram> {
    if decomps.is_empty() {
        return Err(Error::InvalidArgument(
            "eigenvalue_histogram needs at least one decomposition".into(),
        ));
    }
    let n = decomps[0].n();
    let z = decomps[0].z();
    if decomps.iter().any(|d| d.n() != n || d.z() != z) {
        return Err(Error::InvalidArgument(
            "eigenvalue_histogram needs decompositions of a single (n, z) cell".into(),
        ));
    }
    let sets: Vec<&[f64]> = decomps.iter().map(|d| d.eigenvalues()).collect();
    eigenvalue_histogram_from_slices(n, z, &sets, bins, range)
}

/// Body of [`eigenvalue_histogram`] on raw spectra, so callers that discarded the
/// eigenvectors can still build the density.
pub(crate) fn eigenvalue_histogram_from_slices(
    n: usize,
    z: usize,
    sets: &[&[f64]],
    bins: usize,
    range: Option<(f64, f64)>,
) -> Result<SpectralDensityHistogram> {
    if sets.is_empty() {
        return Err(Error::InvalidArgument(
            "eigenvalue_histogram needs at least one spectrum".into(),
        ));
    }
    if bins == 0 {
        return Err(Error::InvalidArgument(
            "eigenvalue_histogram needs at least one bin".into(),
        ));
    }
    let (lo, hi) = match range {
        Some((a, b)) => {
            if !(a.is_finite() && b.is_finite() && a < b) {
                return Err(Error::InvalidArgument(format!(
                    "bad histogram range [{}, {}]",
                    a, b
                )));
            }
            (a, b)
        }
        None => kesten_mckay_band(z),
    };
    let width = (hi - lo) / bins as f64;
    let edges: Vec<f64> = (0..=bins).map(|k| lo + k as f64 * width).collect();
    let mut masses = vec![0.0; bins];
    let mut delta_total = 0.0;
    for d in sets {
        let mut counts = vec![0u64; bins];
        let mut in_range = 0u64;
        let mut zero_modes = 0u64;
        for &eps in d.iter() {
            if eps.abs() <= ZERO_MODE_EPS {
                zero_modes += 1;
                continue;
            }
            if eps < lo || eps > hi {
                continue;
            }
            let mut k = ((eps - lo) / width) as usize;
            if k >= bins {
                k = bins - 1;
            }
            counts[k] += 1;
            in_range += 1;
        }
        if in_range > 0 {
            for (m, &c) in masses.iter_mut().zip(counts.iter()) {
                *m += c as f64 / in_range as f64;
            }
        }
        delta_total += zero_modes as f64 / n as f64;
    }
    let g = sets.len() as f64;
    for m in &mut masses {
        *m /= g;
    }
    Ok(SpectralDensityHistogram {
        edges,
        masses,
        graph_count: sets.len(),
        delta_mass: delta_total / g,
    })
}
