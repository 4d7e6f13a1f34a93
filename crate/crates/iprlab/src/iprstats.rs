//! Inverse participation ratios of Laplacian eigenvectors and their statistics.
//!
//! For a unit vector x on n sites, IPR(x) = n·Σx_i⁴ runs from 1 (uniform magnitudes) to n/2
//! (two-site modes; eigenvectors of a connected graph Laplacian are orthogonal to the
//! constant vector, which rules out single-site concentration). The reciprocal is the
//! participation ratio, the effective fraction of occupied sites. Per-graph statistics
//! average over all modes except the zero mode, and ensemble statistics average those over
//! graphs; for histograms each graph is normalized first and graphs enter with equal weight,
//! which is not the same as pooling all modes.

use crate::error::{Error, Result};
use crate::spectra::{EigenDecomposition, ZERO_MODE_EPS};
use num_bigint::BigUint;
use num_traits::One;

/// IPR(x) = n·Σ x_i⁴ for a unit vector.
pub fn ipr(x: &[f64]) -> Result<f64> {
    let norm_sq: f64 = x.iter().map(|&v| v * v).sum();
    if (norm_sq.sqrt() - 1.0).abs() >= 1e-8 {
        return Err(Error::InvalidArgument(format!(
            "ipr needs a unit vector, got norm {}",
            norm_sq.sqrt()
        )));
    }
    let n = x.len() as f64;
    Ok(n * x.iter().map(|&v| v * v * v * v).sum::<f64>())
}

/// Participation ratio p = (μ¹)²/(μ⁰μ²) with μ^r = Σ|x_i|^{2r}, for any nonzero vector.
/// For unit vectors p·IPR = 1.
pub fn participation_ratio(x: &[f64]) -> Result<f64> {
    let mu1: f64 = x.iter().map(|&v| v * v).sum();
    if x.is_empty() || mu1 == 0.0 {
        return Err(Error::InvalidArgument(
            "participation ratio of the zero vector".into(),
        ));
    }
    let mu0 = x.len() as f64;
    let mu2: f64 = x.iter().map(|&v| v * v * v * v).sum();
    Ok(mu1 * mu1 / (mu0 * mu2))
}

/// Per-graph IPR statistics over the n−1 modes other than the zero mode.
#[derive(Debug, Clone)]
pub struct GraphIprSummary {
    pub n: usize,
    pub z: usize,
    /// Mode-averaged IPR, written p̄⁻¹.
    pub mean_ipr: f64,
    /// Variance of the per-mode IPR values (moment convention, divisor n−1 = mode count).
    pub var_ipr: f64,
    pub max_ipr: f64,
    /// Index the zero mode held in the decomposition, so per-mode rows can be aligned.
    pub zero_mode: usize,
    /// Per-mode IPR values in eigenvalue order, zero mode skipped.
    pub iprs: Vec<f64>,
}

pub fn graph_ipr_summary(d: &EigenDecomposition) -> Result<GraphIprSummary> {
    let zero_mode = crate::spectra::zero_mode_index(d, crate::spectra::DEFAULT_EIGEN_TOL)?;
    let n = d.n();
    let mut iprs = Vec::with_capacity(n - 1);
    for k in 0..n {
        if k == zero_mode {
            continue;
        }
        iprs.push(ipr(d.vector(k))?);
    }
    let count = iprs.len() as f64;
    let mean_ipr = iprs.iter().sum::<f64>() / count;
    let var_ipr = iprs.iter().map(|&v| (v - mean_ipr) * (v - mean_ipr)).sum::<f64>() / count;
    let max_ipr = iprs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    Ok(GraphIprSummary {
        n,
        z: d.z(),
        mean_ipr,
        var_ipr,
        max_ipr,
        zero_mode,
        iprs,
    })
}

/// Ensemble statistics across graphs, with residuals against analytic moments.
#[derive(Debug, Clone)]
pub struct EnsembleIprStats {
    pub n: usize,
    pub z: usize,
    pub graph_count: usize,
    /// ⟨p̄⁻¹⟩ over graphs.
    pub mean_ipr: f64,
    /// Sample standard deviation of p̄⁻¹ over graphs.
    pub std_ipr: f64,
    /// ⟨per-graph variance⟩ over graphs.
    pub mean_var: f64,
    /// Δ1 = 1 − ⟨p̄⁻¹⟩/μ1.
    pub delta1: f64,
    /// Δ2 = 1 − ⟨variance⟩/μ2.
    pub delta2: f64,
}

pub fn ensemble_stats(
    summaries: &[GraphIprSummary],
    mu1: f64,
    mu2: f64,
) -> Result<EnsembleIprStats> {
    if summaries.is_empty() {
        return Err(Error::InvalidArgument("empty ensemble".into()));
    }
    let (n, z) = (summaries[0].n, summaries[0].z);
    if summaries.iter().any(|s| s.n != n || s.z != z) {
        return Err(Error::InvalidArgument(
            "ensemble mixes different (n, z) cells".into(),
        ));
    }
    if mu1.is_nan() || mu1 <= 0.0 || mu2.is_nan() || mu2 <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "analytic moments must be positive, got mu1 ={}, mu2 = {}",
            mu1, mu2
        )));
    }
    let g = summaries.len() as f64;
    let mean_ipr = summaries.iter().map(|s| s.mean_ipr).sum::<f64>() / g;
    let std_ipr = if summaries.len() > 1 {
        (summaries
            .iter()
            .map(|s| (s.mean_ipr - mean_ipr) * (s.mean_ipr - mean_ipr))
            .sum::<f64>()
            / (g - 1.0))
            .sqrt()
    } else {
        0.0
    };
    let mean_var = summaries.iter().map(|s| s.var_ipr).sum::<f64>() / g;
    Ok(EnsembleIprStats {
        n,
        z,
        graph_count: summaries.len(),
        mean_ipr,
        std_ipr,
        mean_var,
        delta1: 1.0 - mean_ipr / mu1,
        delta2: 1.0 - mean_var / mu2,
    })
}

/// Graph-averaged IPR histogram; per-graph normalization first, then equal graph weights.
///
/// Each graph contributes mass 1/(mode count) per mode; modes outside the window
/// are dropped, so a graph's in-window mass can be below one.
#[derive(Debug, Clone)]
pub struct IprHistogram {
    pub edges: Vec<f64>,
    pub masses: Vec<f64>,
    pub graph_count: usize,
}

pub fn ipr_histogram(
    summaries: &[GraphIprSummary],
    bins: usize,
    range: (f64, f64),
) -> Result<IprHistogram> {
    if summaries.is_empty() {
        return Err(Error::InvalidArgument("empty ensemble".into()));
    }
    let (lo, hi) = range;
    if bins == 0 || !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::InvalidArgument(format!(
            "bad histogram shape: {} bins over [{}, {}]",
            bins, lo, hi
        )));
    }
    let width = (hi - lo) / bins as f64;
    let edges: Vec<f64> = (0..=bins).map(|k| lo + k as f64 * width).collect();
    let mut masses = vec![0.0; bins];
    for s in summaries {
        let mut counts = vec![0u64; bins];
        for &v in &s.iprs {
            if v < lo || v > hi {
                continue;
            }
            let mut k = ((v - lo) / width) as usize;
            if k >= bins {
                k = bins - 1;
            }
            counts[k] += 1;
        }
        let modes = s.iprs.len();
        if modes > 0 {
            for (m, &c) in masses.iter_mut().zip(counts.iter()) {
                *m += c as f64 / modes as f64;
            }
        }
    }
    let g = summaries.len() as f64;
    for m in &mut masses {
        *m /= g;
    }
    Ok(IprHistogram {
        edges,
        masses,
        graph_count: summaries.len(),
    })
}

/// Least-squares Gaussian fit to histogram heights.
#[derive(Debug, Clone)]
pub struct GaussianFit {
    pub mean: f64,
    pub sigma: f64,
    pub amplitude: f64,
    /// Residual sum of squares at the optimum.
    pub residual: f64,
}

/// Fit a·exp(−(c−μ)²/2σ²) to the bin heights at bin centers by Levenberg-Marquardt.
/// Needs at least three nonzero bins to pin three parameters.
pub fn gaussian_fit(h: &IprHistogram) -> Result<GaussianFit> {
    let bins = h.masses.len();
    let centers: Vec<f64> = (0..bins).map(|k| 0.5 * (h.edges[k] + h.edges[k + 1])).collect();
    let nonzero = h.masses.iter().filter(|&&m| m > 0.0).count();
    if nonzero < 3 {
        return Err(Error::Fit(format!(
            "gaussian fit needs at least 3 nonzero bins, got {}",
            nonzero
        )));
    }
    let total: f64 = h.masses.iter().sum();
    let mut mean = centers
        .iter()
        .zip(h.masses.iter())
        .map(|(&c, &m)| c * m)
        .sum::<f64>()
        / total;
    let mut sigma = (centers
        .iter()
        .zip(h.masses.iter())
        .map(|(&c, &m)| m * (c - mean) * (c - mean))
        .sum::<f64>()
        / total)
        .sqrt();
    if sigma.is_nan() || sigma <= 0.0 {
        return Err(Error::Fit("histogram has zero spread".into()));
    }
    let mut amp = h.masses.iter().cloned().fold(0.0, f64::max);

    let rss = |a: f64, mu: f64, s: f64| -> f64 {
        centers
            .iter()
            .zip(h.masses.iter())
            .map(|(&c, &m)| {
                let r = a * (-(c - mu) * (c - mu) / (2.0 * s * s)).exp() - m;
                r * r
            })
            .sum()
    };

    let mut lambda = 1e-3;
    let mut current = rss(amp, mean, sigma);
    for _ in 0..200 {
        // residuals and Jacobian of the model at the current parameters
        let mut jtj = [[0.0f64; 3]; 3];
        let mut jtr = [0.0f64; 3];
        for (&c, &m) in centers.iter().zip(h.masses.iter()) {
            let u = (c - mean) / sigma;
            let e = (-0.5 * u * u).exp();
            let f = amp * e;
            let j = [e, f * u / sigma, f * u * u / sigma];
            let r = f - m;
            for p in 0..3 {
                jtr[p] += j[p] * r;
                for q in 0..3 {
                    jtj[p][q] += j[p] * j[q];
                }
            }
        }
        let mut a = jtj;
        for (p, row) in a.iter_mut().enumerate() {
            row[p] *= 1.0 + lambda;
        }
        let step = match solve3(&a, &jtr) {
            Some(s) => s,
            None => break,
        };
        let trial = (amp - step[0], mean - step[1], sigma - step[2]);
        let trial_rss = rss(trial.0, trial.1, trial.2);
        if trial_rss.is_finite() && trial_rss < current && trial.2.abs() > 1e-12 {
            let improvement = current - trial_rss;
            amp = trial.0;
            mean = trial.1;
            sigma = trial.2.abs();
            current = trial_rss;
            lambda = (lambda * 0.3).max(1e-12);
            if improvement < 1e-15 * (1.0 + current) {
                break;
            }
        } else {
            lambda *= 10.0;
            if lambda > 1e12 {
                break;
            }
        }
    }
    if !(sigma > 0.0 && sigma.is_finite() && mean.is_finite() && amp > 0.0) {
        return Err(Error::Fit(format!(
            "fit collapsed: amplitude {}, mean {}, sigma {}",
            amp, mean, sigma
        )));
    }
    Ok(GaussianFit {
        mean,
        sigma,
        amplitude: amp,
        residual: current,
    })
}

fn solve3(a: &[[f64; 3]; 3], b: &[f64; 3]) -> Option<[f64; 3]> {
    let mut m = *a;
    let mut rhs = *b;
    for col in 0..3 {
        let mut piv = col;
        for row in col + 1..3 {
            if m[row][col].abs() > m[piv][col].abs() {
                piv = row;
            }
        }
        if m[piv][col].abs() < 1e-300 {
            return None;
        }
        m.swap(col, piv);
        rhs.swap(col, piv);
        for row in col + 1..3 {
            let f = m[row][col] / m[col][col];
            for k in col..3 {
                m[row][k] -= f * m[col][k];
            }
            rhs[row] -= f * rhs[col];
        }
    }
    let mut x = [0.0; 3];
    for col in (0..3).rev() {
        let mut acc = rhs[col];
        for k in col + 1..3 {
            acc -= m[col][k] * x[k];
        }
        x[col] = acc / m[col][col];
    }
    Some(x)
}

/// Number of sign-balanced k = 2m site patterns: n!/(m!·m!·(n−2m)!).
pub fn localized_candidate_count(n: usize, m: usize) -> Result<BigUint> {
    if m == 0 || 2 * m > n {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= m <= n/2, got m = {} at n = {}",
            m, n
        )));
    }
    let fact = |k: usize| -> BigUint {
        let mut acc = BigUint::one();
        for i in 2..=k {
            acc *= BigUint::from(i);
        }
        acc
    };
    Ok(fact(n) / (fact(m).pow(2) * fact(n - 2 * m)))
}

/// Default absolute threshold distinguishing zero from occupied components; far below 1/√n
/// for every n this crate handles.
pub const DEFAULT_SUPPORT_TOL: f64 = 1e-6;

/// One eigenvector whose nonzero components all share a single magnitude 1/√k.
#[derive(Debug, Clone)]
pub struct LocalizedMode {
    pub mode_index: usize,
    pub eigenvalue: f64,
    pub ipr: f64,
    /// Number of components above the support threshold.
    pub support: usize,
    /// Equal counts of positive and negative components.
    pub balanced: bool,
    /// IPR within relative 1e-6 of n/support.
    pub ipr_matches_n_over_k: bool,
}

#[derive(Debug, Clone)]
pub struct LocalizedModeReport {
    pub n: usize,
    pub support_tol: f64,
    pub modes: Vec<LocalizedMode>,
    /// For each balanced even support size k found, the count of candidate ±1/√k patterns,
    /// n!/((k/2)!·(k/2)!·(n−k)!).
    pub candidate_counts: Vec<(usize, BigUint)>,
}

/// Scan the nonzero modes for uniform-magnitude supports of any size k, the structure of
/// exactly localized eigenvectors with IPR = n/k.
pub fn detect_localized(d: &EigenDecomposition, support_tol: f64) -> LocalizedModeReport {
    let n = d.n();
    let mut modes = Vec::new();
    for k in 0..n {
        let eps = d.eigenvalues()[k];
        if eps.abs() <= ZERO_MODE_EPS {
            continue;
        }
        let v = d.vector(k);
        let support = v.iter().filter(|&&x| x.abs() > support_tol).count();
        if support == 0 {
            continue;
        }
        let target = 1.0 / (support as f64).sqrt();
        let uniform = v
            .iter()
            .filter(|&&x| x.abs() > support_tol)
            .all(|&x| (x.abs() - target).abs() <= support_tol);
        if !uniform {
            continue;
        }
        let pos = v.iter().filter(|&&x| x > support_tol).count();
        let neg = v.iter().filter(|&&x| x < -support_tol).count();
        let mode_ipr = ipr(v).unwrap_or(f64::NAN);
        let expect = n as f64 / support as f64;
        modes.push(LocalizedMode {
            mode_index: k,
            eigenvalue: eps,
            ipr: mode_ipr,
            support,
            balanced: pos == neg,
            ipr_matches_n_over_k: (mode_ipr - expect).abs() <= 1e-6 * expect,
        });
    }
    let mut sizes: Vec<usize> = modes
        .iter()
        .filter(|m| m.balanced && m.support % 2 == 0)
        .map(|m| m.support)
        .collect();
    sizes.sort_unstable();
    sizes.dedup();
    let candidate_counts = sizes
        .into_iter()
        .filter_map(|k| localized_candidate_count(n, k / 2).ok().map(|c| (k, c)))
        .collect();
    LocalizedModeReport {
        n,
        support_tol,
        modes,
        candidate_counts,
    }
}
