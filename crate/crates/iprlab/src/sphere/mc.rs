//! Monte-Carlo moments of the IPR over the sum-zero unit sphere.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// A point of the unit sphere restricted to the sum-zero hyperplane.
#[derive(Debug, Clone)]
pub struct SubspherePoint {
    coords: Vec<f64>,
}

impl SubspherePoint {
    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }
}

/// Uniform sample: n standard normals, mean removed, normalized.
///
/// Degenerate draws (projected norm below 1e-12) are redrawn internally.
pub fn sample_subsphere<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<SubspherePoint> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "subsphere needs n >= 2, got {n}"
        )));
    }
    loop {
        let mut v: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        let mean = v.iter().sum::<f64>() / n as f64;
        for x in &mut v {
            *x -= mean;
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm < 1e-12 {
            continue;
        }
        for x in &mut v {
            *x /= norm;
        }
        return Ok(SubspherePoint { coords: v });
    }
}

/// Sample mean and population variance of the IPR with jackknife standard errors.
#[derive(Debug, Clone, Copy)]
pub struct McIprMoments {
    pub mean: f64,
    pub variance: f64,
    pub mean_se: f64,
    pub variance_se: f64,
    pub samples: usize,
    pub blocks: usize,
}

/// Monte-Carlo estimate of the sphere-averaged IPR moments at dimension n.
///
/// Standard errors come from a delete-one-block jackknife (100 blocks, or 10
/// below 10⁴ samples), which covers the nonlinearity of the variance estimator.
pub fn mc_ipr_moments<R: Rng + ?Sized>(
    n: usize,
    samples: usize,
    rng: &mut R,
) -> Result<McIprMoments> {
    if samples < 100 {
        return Err(Error::InvalidArgument(format!(
            "need at least 100 samples, got {samples}"
        )));
    }
    let blocks = if samples < 10_000 { 10 } else { 100 };
    let base = samples / blocks;
    let extra = samples % blocks;
    let mut block_s1 = vec![0.0f64; blocks];
    let mut block_s2 = vec![0.0f64; blocks];
    let mut block_len = vec![0usize; blocks];
    for b in 0..blocks {
        let len = base + usize::from(b < extra);
        let (mut s1, mut s2) = (0.0, 0.0);
        for _ in 0..len {
            let p = sample_subsphere(n, rng)?;
            let q: f64 = p.coords().iter().map(|x| x * x * x * x).sum();
            let ipr = n as f64 * q;
            s1 += ipr;
            s2 += ipr * ipr;
        }
        block_s1[b] = s1;
        block_s2[b] = s2;
        block_len[b] = len;
    }
    let t1: f64 = block_s1.iter().sum();
    let t2: f64 = block_s2.iter().sum();
    let nf = samples as f64;
    let mean = t1 / nf;
    let variance = t2 / nf - mean * mean;

    let mut jack_mean = Vec::with_capacity(blocks);
    let mut jack_var = Vec::with_capacity(blocks);
    for b in 0..blocks {
        let rest = (samples - block_len[b]) as f64;
        let m = (t1 - block_s1[b]) / rest;
        jack_mean.push(m);
        jack_var.push((t2 - block_s2[b]) / rest - m * m);
    }
    let se = |vals: &[f64]| {
        let c = vals.iter().sum::<f64>() / blocks as f64;
        let ss: f64 = vals.iter().map(|v| (v - c) * (v - c)).sum();
        ((blocks as f64 - 1.0) / blocks as f64 * ss).sqrt()
    };
    Ok(McIprMoments {
        mean,
        variance,
        mean_se: se(&jack_mean),
        variance_se: se(&jack_var),
        samples,
        blocks,
    })
}
