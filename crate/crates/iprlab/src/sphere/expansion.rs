//! End-to-end exact moment oracle by direct monomial expansion.
//!
//! Expands IPR(Qᵀy)^p over the equatorial variables y₁…y_{n−1}, averages each
//! monomial with the exact sphere integral, and sums in ℚ(√n). No closed-form
//! entry-power sums are used, so the result is independent of the tabulated
//! δ-coefficients and the printed sum formulas it cross-checks.
//!
//! Scaled entries D·Q_ki with D = n+√n are elements of ℤ[√n], kept as integer
//! pairs (a, b) meaning a + b√n. Monomial exponents are nibble-packed into a
//! u64 so equal monomials from different index choices accumulate in one slot.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::sphere::exact::{sphere_average, ExponentVector};

/// Low bit of each nibble: set where the packed exponent is odd.
const ODD_BITS: u64 = 0x1111_1111_1111_1111;

fn mul_pair(a: (i128, i128), b: (i128, i128), n: i128) -> (i128, i128) {
    (a.0 * b.0 + n * a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn unpack(sig: u64, m: usize) -> ExponentVector {
    let exps: Vec<u64> = (0..m).map(|k| (sig >> (4 * k)) & 0xF).collect();
    ExponentVector::new(exps)
}

/// Sphere average of IPR^power over sum-zero unit vectors in ℝⁿ, power ∈ {1, 2},
/// computed by raw expansion. Complexity grows as (n−1)^(4·power); n is capped at 8.
pub fn expansion_moment_exact(n: usize, power: u32) -> Result<BigRational> {
    if !(3..=8).contains(&n) {
        return Err(Error::Budget(format!(
            "expansion oracle supports 3 <= n <= 8, got {n}"
        )));
    }
    if power != 1 && power != 2 {
        return Err(Error::InvalidArgument(format!(
            "moment power must be 1 or 2, got {power}"
        )));
    }
    let m = n - 1;
    let ni = n as i128;
    // D·Q_ki for row k < n, column i ≤ n
    let coeff = |k: usize, i: usize| -> (i128, i128) {
        if i == n {
            (-1, -1)
        } else if k == i {
            (ni - 1, 1)
        } else {
            (-1, 0)
        }
    };

    // Σ_i (Σ_k D·Q_ki y_k)⁴ as a signature-keyed polynomial
    let mut poly: HashMap<u64, (i128, i128)> = HashMap::new();
    for i in 1..=n {
        for k1 in 1..=m {
            for k2 in k1..=m {
                for k3 in k2..=m {
                    for k4 in k3..=m {
                        let ks = [k1, k2, k3, k4];
                        let mut perms = 24i128;
                        let mut run = 1i128;
                        for t in 1..4 {
                            if ks[t] == ks[t - 1] {
                                run += 1;
                                perms /= run;
                            } else {
                                run = 1;
                            }
                        }
                        let mut c = (perms, 0i128);
                        let mut sig = 0u64;
                        for &k in &ks {
                            c = mul_pair(c, coeff(k, i), ni);
                            sig += 1 << (4 * (k - 1));
                        }
                        let slot = poly.entry(sig).or_insert((0, 0));
                        slot.0 += c.0;
                        slot.1 += c.1;
                    }
                }
            }
        }
    }

    // contract with exact monomial averages, odd monomials dropped
    let mut combined: HashMap<u64, (i128, i128)> = HashMap::new();
    match power {
        1 => {
            for (&sig, &c) in &poly {
                if sig & ODD_BITS == 0 {
                    let slot = combined.entry(sig).or_insert((0, 0));
                    slot.0 += c.0;
                    slot.1 += c.1;
                }
            }
        }
        _ => {
            for (&s1, &c1) in &poly {
                for (&s2, &c2) in &poly {
                    if (s1 ^ s2) & ODD_BITS != 0 {
                        continue;
                    }
                    let c = mul_pair(c1, c2, ni);
                    let slot = combined.entry(s1 + s2).or_insert((0, 0));
                    slot.0 += c.0;
                    slot.1 += c.1;
                }
            }
        }
    }
    let mut total = (BigRational::zero(), BigRational::zero());
    for (&sig, &c) in &combined {
        let avg = sphere_average(&unpack(sig, m));
        if avg.is_zero() {
            continue;
        }
        total.0 += &avg * BigRational::from_integer(BigInt::from(c.0));
        total.1 += avg * BigRational::from_integer(BigInt::from(c.1));
    }

    // moment = n^p · total / (n+√n)^(4p)
    let mut d_pow = (1i128, 0i128);
    for _ in 0..4 * power {
        d_pow = mul_pair(d_pow, (ni, 1), ni);
    }
    let n_pow = BigRational::from_integer(BigInt::from(ni.pow(power)));
    let u = total.0 * &n_pow;
    let v = total.1 * &n_pow;
    let (a, b) = (
        BigRational::from_integer(BigInt::from(d_pow.0)),
        BigRational::from_integer(BigInt::from(d_pow.1)),
    );
    // (u + v√n)(a − b√n) / (a² − n b²)
    let n_rat = BigRational::from_integer(BigInt::from(ni));
    let norm = &a * &a - &n_rat * &b * &b;
    let rational = (&u * &a - &n_rat * &v * &b) / &norm;
    let surd = (&v * &a - &u * &b) / norm;
    if !surd.is_zero() {
        return Err(Error::Numeric(format!(
            "√n component of expansion moment did not cancel for n = {n}"
        )));
    }
    Ok(rational)
}
