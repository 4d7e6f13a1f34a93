//! Dense symmetric eigensolver: Householder tridiagonalization followed by implicit-shift
//! QL iteration with eigenvector accumulation, the classic EISPACK tred2/tql2 pair.
//!
//! Eigenvectors are stored column-major so the rank-2 updates in the reduction and the plane
//! rotations in the QL sweeps all stream contiguous memory. Deflation uses machine epsilon
//! rather than the caller's tolerance; the caller's `tol` only scales the cheap spectral
//! range check at the end. A looser deflation threshold would contaminate the near-zero
//! eigenvalue of connected Laplacians, which downstream code resolves to 1e-10.

use super::LaplacianMatrix;
use crate::error::{Error, Result};

/// Default relative tolerance for decomposition sanity checks and zero-mode detection.
pub const DEFAULT_EIGEN_TOL: f64 = 1e-10;

const MAX_QL_SWEEPS: usize = 50;

/// Full spectrum of a Laplacian with orthonormal eigenvectors, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    n: usize,
    z: usize,
    eigenvalues: Vec<f64>,
    /// Column-major: entry i of eigenvector k sits at [k*n + i].
    vectors: Vec<f64>,
}

impl EigenDecomposition {
    /// Assemble a decomposition from explicit eigenpairs, e.g. a hand-picked basis for a
    /// degenerate eigenspace. Checks ordering and orthonormality.
    pub fn from_parts(z: usize, eigenvalues: Vec<f64>, vectors: Vec<Vec<f64>>) -> Result<Self> {
        let n = eigenvalues.len();
        if n == 0 || vectors.len() != n || vectors.iter().any(|v| v.len() != n) {
            return Err(Error::InvalidArgument(
                "need n eigenvalues and n eigenvectors of length n".into(),
            ));
        }
        if eigenvalues.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidArgument("eigenvalues must be ascending".into()));
        }
        for a in 0..n {
            for b in a..n {
                let dot: f64 = vectors[a].iter().zip(vectors[b].iter()).map(|(x, y)| x * y).sum();
                let want = if a == b { 1.0 } else { 0.0 };
                if (dot - want).abs() > 1e-8 {
                    return Err(Error::InvalidArgument(format!(
                        "vectors {} and {} are not orthonormal (dot {})",
                        a, b, dot
                    )));
                }
            }
        }
        let mut flat = Vec::with_capacity(n * n);
        for v in &vectors {
            flat.extend_from_slice(v);
        }
        Ok(EigenDecomposition {
            n,
            z,
            eigenvalues,
            vectors: flat,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn z(&self) -> usize {
        self.z
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// The k-th eigenvector, paired with eigenvalues()[k].
    pub fn vector(&self, k: usize) -> &[f64] {
        &self.vectors[k * self.n..(k + 1) * self.n]
    }
}

pub fn eigendecompose(l: &LaplacianMatrix, tol: f64) -> Result<EigenDecomposition> {
    let n = l.n();
    if n == 0 {
        return Err(Error::InvalidArgument("empty matrix".into()));
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::InvalidArgument(format!("bad tolerance {}", tol)));
    }
    let mut v = l.entries().to_vec();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    tred2(n, &mut v, &mut d, &mut e);
    tql2(n, &mut v, &mut d, &mut e)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].partial_cmp(&d[b]).unwrap());
    let mut eigenvalues = Vec::with_capacity(n);
    let mut vectors = vec![0.0; n * n];
    for (new_k, &old_k) in order.iter().enumerate() {
        eigenvalues.push(d[old_k]);
        let col = &v[old_k * n..(old_k + 1) * n];
        let mut lead = 0;
        for (i, &x) in col.iter().enumerate() {
            if x.abs() > col[lead].abs() {
                lead = i;
            }
        }
        let flip = if col[lead] < 0.0 { -1.0 } else { 1.0 };
        let dst = &mut vectors[new_k * n..(new_k + 1) * n];
        for (dst_i, &x) in dst.iter_mut().zip(col.iter()) {
            *dst_i = flip * x;
        }
    }

    let norm = 2.0 * l.z() as f64;
    if eigenvalues[0] < -tol * norm.max(1.0) || eigenvalues[n - 1] > norm + tol * norm.max(1.0) {
        return Err(Error::Numeric(format!(
            "spectrum [{:e}, {:e}] escapes the Gershgorin interval [0, {}]",
            eigenvalues[0],
            eigenvalues[n - 1],
            norm
        )));
    }
    Ok(EigenDecomposition {
        n,
        z: l.z(),
        eigenvalues,
        vectors,
    })
}

/// Index of the unique near-zero eigenvalue of a connected graph's Laplacian. Verifies that
/// its eigenvector is the constant Perron-Frobenius mode up to sign.
pub fn zero_mode_index(d: &EigenDecomposition, tol: f64) -> Result<usize> {
    let hits: Vec<usize> = d
        .eigenvalues()
        .iter()
        .enumerate()
        .filter(|(_, &eps)| eps.abs() < tol)
        .map(|(k, _)| k)
        .collect();
    if hits.len() != 1 {
        return Err(Error::Disconnected(format!(
            "{} eigenvalues below {:e}; the graph is not connected (or tol is off)",
            hits.len(),
            tol
        )));
    }
    let k = hits[0];
    let n = d.n() as f64;
    let overlap = d.vector(k).iter().sum::<f64>().abs() / n.sqrt();
    if overlap <= 1.0 - 1e-8 {
        return Err(Error::Numeric(format!(
            "zero-mode overlap with the constant vector is only {}",
            overlap
        )));
    }
    Ok(k)
}

/// Householder reduction to symmetric tridiagonal form with accumulated transformations.
/// On exit `d` holds the diagonal, `e[1..]` the subdiagonal, and `v` the accumulated
/// orthogonal matrix, column-major.
fn tred2(n: usize, v: &mut [f64], d: &mut [f64], e: &mut [f64]) {
    for j in 0..n {
        d[j] = v[j * n + n - 1];
    }

    for i in (1..n).rev() {
        let mut h = 0.0;
        let mut scale = 0.0;
        for &dk in d[..i].iter() {
            scale += dk.abs();
        }
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[j * n + i - 1];
                v[j * n + i] = 0.0;
                v[i * n + j] = 0.0;
            }
        } else {
            for dk in d[..i].iter_mut() {
                *dk /= scale;
                h += *dk * *dk;
            }
            let f = d[i - 1];
            let mut g = h.sqrt();
            if f > 0.0 {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for ej in e[..i].iter_mut() {
                *ej = 0.0;
            }

            for j in 0..i {
                let f = d[j];
                v[i * n + j] = f;
                let mut g = e[j] + v[j * n + j] * f;
                let col_j = &v[j * n..j * n + i];
                for k in j + 1..i {
                    g += col_j[k] * d[k];
                    e[k] += col_j[k] * f;
                }
                e[j] = g;
            }
            let mut f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                let f = d[j];
                let g = e[j];
                let col_j = &mut v[j * n..j * n + i];
                for k in j..i {
                    col_j[k] -= f * e[k] + g * d[k];
                }
                d[j] = v[j * n + i - 1];
                v[j * n + i] = 0.0;
            }
        }
        d[i] = h;
    }

    for i in 0..n - 1 {
        v[i * n + n - 1] = v[i * n + i];
        v[i * n + i] = 1.0;
        let h = d[i + 1];
        if h != 0.0 {
            for k in 0..=i {
                d[k] = v[(i + 1) * n + k] / h;
            }
            for j in 0..=i {
                let mut g = 0.0;
                {
                    let col_next = &v[(i + 1) * n..(i + 1) * n + i + 1];
                    let col_j = &v[j * n..j * n + i + 1];
                    for k in 0..=i {
                        g += col_next[k] * col_j[k];
                    }
                }
                let col_j = &mut v[j * n..j * n + i + 1];
                for k in 0..=i {
                    col_j[k] -= g * d[k];
                }
            }
        }
        for k in 0..=i {
            v[(i + 1) * n + k] = 0.0;
        }
    }
    for j in 0..n {
        d[j] = v[j * n + n - 1];
        v[j * n + n - 1] = 0.0;
    }
    v[(n - 1) * n + n - 1] = 1.0;
    e[0] = 0.0;
}

/// Implicit-shift QL iteration on the tridiagonal (d, e) with eigenvector accumulation
/// into the column-major `v`. Eigenvalues land in `d`, unsorted.
fn tql2(n: usize, v: &mut [f64], d: &mut [f64], e: &mut [f64]) -> Result<()> {
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    let eps = 2f64.powi(-52);
    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > MAX_QL_SWEEPS {
                    return Err(Error::NonConvergence {
                        index: l,
                        sweeps: MAX_QL_SWEEPS,
                    });
                }

                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d[l + 2..n].iter_mut() {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);

                    let (left, right) = v.split_at_mut((i + 1) * n);
                    let col_i = &mut left[i * n..];
                    let col_next = &mut right[..n];
                    for (xi, xn) in col_i.iter_mut().zip(col_next.iter_mut()) {
                        let h = *xn;
                        *xn = s * *xi + c * h;
                        *xi = c * *xi - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;

                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}
