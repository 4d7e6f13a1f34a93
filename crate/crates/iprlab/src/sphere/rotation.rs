//! Rotation aligning the constant unit vector with the last coordinate axis.
//!
//! The componentwise entry formula, the δ-coefficient form of its entry powers,
//! and the closed forms of the entry-power sums entering the first two IPR
//! moments, each paired with a brute-force evaluation for cross-checking.

use crate::error::{Error, Result};

/// Entry Q_ij (1-based) of the rotation taking (1,…,1)/√n to the last axis.
pub fn q_component(i: usize, j: usize, n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "rotation needs n >= 2, got {n}"
        )));
    }
    if i < 1 || i > n || j < 1 || j > n {
        return Err(Error::InvalidArgument(format!(
            "index ({i}, {j}) outside 1..={n}"
        )));
    }
    Ok(q_entry(i, j, n, (n as f64).sqrt()))
}

fn q_entry(i: usize, j: usize, n: usize, r: f64) -> f64 {
    let nf = n as f64;
    let d_ij = if i == j { 1.0 } else { 0.0 };
    let d_in = if i == n { 1.0 } else { 0.0 };
    let d_nj = if j == n { 1.0 } else { 0.0 };
    d_ij + ((1.0 - r) / (nf - 1.0) * (1.0 - d_in - d_nj + nf * d_nj * d_in) + d_in - d_nj) / r
}

/// Full n×n rotation from the componentwise entry formula, row-major.
pub fn q_matrix(n: usize) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "rotation needs n >= 2, got {n}"
        )));
    }
    let r = (n as f64).sqrt();
    let mut q = vec![0.0; n * n];
    for i in 1..=n {
        for j in 1..=n {
            q[(i - 1) * n + (j - 1)] = q_entry(i, j, n, r);
        }
    }
    Ok(q)
}

/// The same rotation assembled from its plane-rotation form:
/// identity plus rank-two corrections in the span of the constant vector v₁
/// and its Gram-Schmidt partner v₂, with cos θ = 1/√n.
pub fn q_matrix_tensor(n: usize) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "rotation needs n >= 2, got {n}"
        )));
    }
    let nf = n as f64;
    let r = nf.sqrt();
    let cos = 1.0 / r;
    let sin = ((nf - 1.0) / nf).sqrt();
    let v1: Vec<f64> = vec![1.0 / r; n];
    let v2: Vec<f64> = (1..=n)
        .map(|i| {
            let d_ni = if i == n { nf } else { 0.0 };
            (d_ni - 1.0) / (nf * (nf - 1.0)).sqrt()
        })
        .collect();
    let mut q = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            let mut e = if i == j { 1.0 } else { 0.0 };
            e += sin * (v2[i] * v1[j] - v1[i] * v2[j]);
            e += (cos - 1.0) * (v1[i] * v1[j] + v2[i] * v2[j]);
            q[i * n + j] = e;
        }
    }
    Ok(q)
}

/// δ-coefficients of the entry power identity for rows below n:
/// (Q_ij)^s = [(−1)^s + α_s δ_nj + β_s δ_ij] / (n+√n)^s.
#[derive(Debug, Clone, Copy)]
pub struct QPowerCoeffs {
    pub s: u32,
    pub n: usize,
    pub alpha: f64,
    pub beta: f64,
}

/// α_s(n), β_s(n) for s ∈ {1, 2, 3, 4, 6, 8}.
pub fn q_power_coeffs(s: u32, n: usize) -> Result<QPowerCoeffs> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "rotation needs n >= 2, got {n}"
        )));
    }
    let x = n as f64;
    let r = x.sqrt();
    let (alpha, beta) = match s {
        1 => (-r, x + r),
        2 => (x + 2.0 * r, (x - 1.0) * (x + 2.0 * r)),
        3 => (
            -r * (3.0 + 3.0 * r + x),
            (x + r) * (3.0 - 3.0 * r - 2.0 * x + 2.0 * x * r + x * x),
        ),
        4 => (
            (x + 2.0 * r) * (2.0 + 2.0 * r + x),
            (x - 1.0) * (x + 2.0 * r) * (x * x + 2.0 * x * r - x - 2.0 * r + 2.0),
        ),
        6 => (
            (x + 2.0 * r) * (1.0 + r + x) * (3.0 + 3.0 * r + x),
            (x + 2.0 * r)
                * (x - 1.0)
                * (1.0 - r + 2.0 * x * r + x * x)
                * (3.0 - 3.0 * r - 2.0 * x + 2.0 * x * r + x * x),
        ),
        8 => (
            (x + 2.0 * r)
                * (2.0 + 2.0 * r + x)
                * (2.0 + 4.0 * r + 6.0 * x + 4.0 * x * r + x * x),
            (x + 2.0 * r)
                * (x - 1.0)
                * (2.0 - 2.0 * r - x + 2.0 * x * r + x * x)
                * (2.0 - 4.0 * r + 2.0 * x + 8.0 * x * r - 5.0 * x * x - 8.0 * x * x * r
                    + 2.0 * x * x * x
                    + 4.0 * x * x * x * r
                    + x * x * x * x),
        ),
        _ => {
            return Err(Error::InvalidArgument(format!(
                "entry power {s} has no tabulated coefficients"
            )))
        }
    };
    Ok(QPowerCoeffs { s, n, alpha, beta })
}

/// The five entry-power sums appearing in the sphere moments, closed form.
///
/// `quartic` and `two_two` build the first moment; `eighth`, `six_two`, and
/// `mixed` are the representative second-moment sums. Primed sums run over
/// pairwise-distinct row indices below n; column indices run to n.
#[derive(Debug, Clone, Copy)]
pub struct QClosedFormSums {
    pub quartic: f64,
    pub two_two: f64,
    pub eighth: f64,
    pub six_two: f64,
    pub mixed: f64,
}

pub fn q_closed_form_sums(n: usize) -> Result<QClosedFormSums> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "rotation needs n >= 2, got {n}"
        )));
    }
    let x = n as f64;
    let r = x.sqrt();
    let quartic = x - (29.0 + 30.0 * r + 5.0 * x) / ((1.0 + r) * (1.0 + r)) + 24.0 / r - 9.0 / x;
    let two_two = (r - 1.0) * (3.0 * r + 5.0) * (x - 2.0) / (x * (r + 1.0) * (r + 1.0));
    let shell = (1.0 + r).powi(6) * x * x * x;
    let eighth = (r - 1.0) / shell
        * (49.0 + 7.0 * r - 7.0 * x + 119.0 * x * r + 21.0 * x * x - 133.0 * x * x * r
            + 9.0 * x * x * x
            + 111.0 * x * x * x * r
            + x * x * x * x
            - 57.0 * x * x * x * x * r
            - 13.0 * x.powi(5)
            + 13.0 * x.powi(5) * r
            + 7.0 * x.powi(6)
            + x.powi(6) * r);
    let six_two = (r - 1.0) * (x - 2.0) / shell
        * (37.0 + 31.0 * r + 10.0 * x + 40.0 * x * r + 29.0 * x * x
            - 15.0 * x * x * r
            - 14.0 * x * x * x
            + 4.0 * x * x * x * r
            + 5.0 * x * x * x * x
            + x * x * x * x * r);
    let mixed = (1.0 - r) * (x - 2.0) * (x - 3.0) / shell
        * (29.0 + 39.0 * r + 4.0 * x - 28.0 * x * r - 12.0 * x * x
            + 12.0 * x * x * r
            + 10.0 * x * x * x
            + 2.0 * x * x * x * r);
    Ok(QClosedFormSums {
        quartic,
        two_two,
        eighth,
        six_two,
        mixed,
    })
}

#[derive(Default, Clone, Copy)]
struct Kahan {
    sum: f64,
    carry: f64,
}

impl Kahan {
    fn add(&mut self, v: f64) {
        let y = v - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }
}

/// Σ_{i≤n} Σ_{k<n} Q_ki⁴ by direct summation.
pub fn quartic_sum_brute(n: usize) -> Result<f64> {
    let q = q_matrix(n)?;
    let mut acc = Kahan::default();
    for k in 0..n - 1 {
        for i in 0..n {
            acc.add(q[k * n + i].powi(4));
        }
    }
    Ok(acc.sum)
}

/// Σ_{i≤n} Σ'_{k,ℓ<n} Q_ki² Q_ℓi² by direct summation.
pub fn two_two_sum_brute(n: usize) -> Result<f64> {
    let q = q_matrix(n)?;
    let mut acc = Kahan::default();
    for k in 0..n - 1 {
        for l in 0..n - 1 {
            if l == k {
                continue;
            }
            for i in 0..n {
                acc.add(q[k * n + i].powi(2) * q[l * n + i].powi(2));
            }
        }
    }
    Ok(acc.sum)
}

/// Σ_{k<n} Σ_{i≤n} Q_ki⁸ by direct summation.
pub fn eighth_sum_brute(n: usize) -> Result<f64> {
    let q = q_matrix(n)?;
    let mut acc = Kahan::default();
    for k in 0..n - 1 {
        for i in 0..n {
            acc.add(q[k * n + i].powi(8));
        }
    }
    Ok(acc.sum)
}

/// Σ'_{k,ℓ<n} Σ_{i≤n} Q_ki⁶ Q_ℓi² by direct summation.
pub fn six_two_sum_brute(n: usize) -> Result<f64> {
    let q = q_matrix(n)?;
    let mut acc = Kahan::default();
    for k in 0..n - 1 {
        for l in 0..n - 1 {
            if l == k {
                continue;
            }
            for i in 0..n {
                acc.add(q[k * n + i].powi(6) * q[l * n + i].powi(2));
            }
        }
    }
    Ok(acc.sum)
}

/// Σ'_{k,ℓ,m<n} Σ'_{i,j≤n} Q_ki³ Q_ℓi Q_kj Q_ℓj Q_mj² by direct summation.
pub fn mixed_sum_brute(n: usize) -> Result<f64> {
    let q = q_matrix(n)?;
    let mut acc = Kahan::default();
    for k in 0..n - 1 {
        for l in 0..n - 1 {
            if l == k {
                continue;
            }
            for m in 0..n - 1 {
                if m == k || m == l {
                    continue;
                }
                for i in 0..n {
                    for j in 0..n {
                        if j == i {
                            continue;
                        }
                        acc.add(
                            q[k * n + i].powi(3)
                                * q[l * n + i]
                                * q[k * n + j]
                                * q[l * n + j]
                                * q[m * n + j].powi(2),
                        );
                    }
                }
            }
        }
    }
    Ok(acc.sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sphere::exact::{mu1_exact, rational_to_f64};

    fn max_abs(v: impl Iterator<Item = f64>) -> f64 {
        v.fold(0.0, |m, x| m.max(x.abs()))
    }

    #[test]
    fn row_sums_vanish_except_last() {
        for n in [2usize, 3, 10, 37] {
            let rt = (n as f64).sqrt();
            for i in 1..=n {
                let sum: f64 = (1..=n).map(|j| q_component(i, j, n).unwrap()).sum();
                let want = if i == n { rt } else { 0.0 };
                assert!((sum - want).abs() < 1e-12, "n={n} row {i}: {sum}");
            }
        }
    }

    #[test]
    fn orthogonality_up_to_two_hundred() {
        for n in [2usize, 3, 5, 10, 50, 200] {
            let q = q_matrix(n).unwrap();
            let mut worst = 0.0f64;
            for i in 0..n {
                for j in 0..n {
                    let dot: f64 = (0..n).map(|k| q[i * n + k] * q[j * n + k]).sum();
                    let want = if i == j { 1.0 } else { 0.0 };
                    worst = worst.max((dot - want).abs());
                }
            }
            assert!(worst < 1e-12, "n={n}: {worst}");
        }
    }

    #[test]
    fn constant_vector_maps_to_last_axis() {
        for n in [2usize, 3, 8, 41] {
            let q = q_matrix(n).unwrap();
            let rt = (n as f64).sqrt();
            for i in 0..n {
                let y: f64 = (0..n).map(|j| q[i * n + j] / rt).sum();
                let want = if i == n - 1 { 1.0 } else { 0.0 };
                assert!((y - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn tensor_and_componentwise_constructions_agree() {
        for n in [2usize, 3, 7, 25] {
            let a = q_matrix(n).unwrap();
            let b = q_matrix_tensor(n).unwrap();
            let diff = max_abs(a.iter().zip(&b).map(|(x, y)| x - y));
            assert!(diff < 1e-12, "n={n}: {diff}");
        }
    }

    #[test]
    fn tabulated_low_power_coefficients() {
        let c = q_power_coeffs(1, 9).unwrap();
        assert!((c.alpha + 3.0).abs() < 1e-12);
        assert!((c.beta - 12.0).abs() < 1e-12);
        let c = q_power_coeffs(2, 9).unwrap();
        assert!((c.alpha - 15.0).abs() < 1e-12);
        assert!((c.beta - 8.0 * 15.0).abs() < 1e-12);
        assert!(matches!(
            q_power_coeffs(5, 9),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            q_power_coeffs(2, 1),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn entry_powers_match_delta_coefficient_form() {
        for n in [4usize, 9, 17] {
            let nf = n as f64;
            let d = nf + nf.sqrt();
            for s in [1u32, 2, 3, 4, 6, 8] {
                let c = q_power_coeffs(s, n).unwrap();
                let sign = if s % 2 == 0 { 1.0 } else { -1.0 };
                for i in 1..n {
                    for j in [1usize, i, i % (n - 1) + 1, n] {
                        let d_nj = if j == n { 1.0 } else { 0.0 };
                        let d_ij = if i == j { 1.0 } else { 0.0 };
                        let want =
                            (sign + c.alpha * d_nj + c.beta * d_ij) / d.powi(s as i32);
                        let got = q_component(i, j, n).unwrap().powi(s as i32);
                        let scale = want.abs().max(1e-30);
                        assert!(
                            ((got - want) / scale).abs() < 1e-10,
                            "n={n} s={s} i={i} j={j}: {got} vs {want}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn closed_forms_match_brute_force() {
        for n in [5usize, 10, 20] {
            let cf = q_closed_form_sums(n).unwrap();
            let pairs = [
                (cf.quartic, quartic_sum_brute(n).unwrap(), "quartic"),
                (cf.two_two, two_two_sum_brute(n).unwrap(), "two_two"),
                (cf.eighth, eighth_sum_brute(n).unwrap(), "eighth"),
                (cf.six_two, six_two_sum_brute(n).unwrap(), "six_two"),
                (cf.mixed, mixed_sum_brute(n).unwrap(), "mixed"),
            ];
            for (closed, brute, name) in pairs {
                let scale = brute.abs().max(1e-30);
                assert!(
                    ((closed - brute) / scale).abs() < 1e-10,
                    "n={n} {name}: closed {closed} vs brute {brute}"
                );
            }
        }
    }

    #[test]
    fn degenerate_prefactors_vanish() {
        assert_eq!(q_closed_form_sums(2).unwrap().two_two, 0.0);
        assert_eq!(q_closed_form_sums(3).unwrap().mixed, 0.0);
    }

    #[test]
    fn first_moment_recovered_from_sums() {
        // μ₁ = 3n/((n+1)(n−1)) · (quartic + two_two), equivalently
        // quartic + two_two = (n−1)²/n.
        for n in [4usize, 5, 10, 20, 50, 100] {
            let cf = q_closed_form_sums(n).unwrap();
            let nf = n as f64;
            let combo = cf.quartic + cf.two_two;
            let want = (nf - 1.0) * (nf - 1.0) / nf;
            assert!(((combo - want) / want).abs() < 1e-12, "n={n}");
            let mu1 = 3.0 * nf / ((nf + 1.0) * (nf - 1.0)) * combo;
            let exact = rational_to_f64(&mu1_exact(n));
            assert!(((mu1 - exact) / exact).abs() < 1e-12, "n={n}");
        }
    }

    #[test]
    fn index_validation() {
        assert!(matches!(
            q_component(0, 1, 5),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            q_component(1, 6, 5),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(q_matrix(1), Err(Error::InvalidArgument(_))));
    }
}
