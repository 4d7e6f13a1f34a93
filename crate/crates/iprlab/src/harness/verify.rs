//! Analytic identity suite: cross-checks the three moment routes and the
//! rotation-sum closed forms, reporting every identity as pass/fail.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::sphere::exact::{ipr2_sphere_average_exact, mu1_exact, mu2_exact, rational_to_f64};
use crate::sphere::expansion::expansion_moment_exact;
use crate::sphere::mc::mc_ipr_moments;
use crate::sphere::rotation::{
    eighth_sum_brute, mixed_sum_brute, q_closed_form_sums, q_component, q_matrix,
    quartic_sum_brute, six_two_sum_brute, two_two_sum_brute,
};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyCheck {
    pub name: String,
    pub detail: String,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyReport {
    pub mc_samples: usize,
    pub seed: u64,
    pub checks: Vec<VerifyCheck>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "analytic identity suite: mc_samples = {}, seed = {}\n",
            self.mc_samples, self.seed
        ));
        for c in &self.checks {
            let mark = if c.pass { "PASS" } else { "FAIL" };
            out.push_str(&format!("[{mark}] {}: {}\n", c.name, c.detail));
        }
        let verdict = if self.all_pass() { "all passed" } else { "FAILURES PRESENT" };
        out.push_str(&format!(
            "{} of {} checks passed ({verdict})\n",
            self.checks.iter().filter(|c| c.pass).count(),
            self.checks.len()
        ));
        out
    }
}

fn check(name: &str, detail: String, pass: bool) -> VerifyCheck {
    VerifyCheck {
        name: name.to_string(),
        detail,
        pass,
    }
}

/// Run every analytic cross-check. MC dimensions come from `n_list`; exact
/// expansion comparisons run for the subset within the oracle budget.
pub fn verify_analytics(n_list: &[usize], mc_samples: usize, seed: u64) -> Result<VerifyReport> {
    let mut checks = Vec::new();

    // exact rational identity ipr2 − mu1² = mu2
    let bad = (2..=100)
        .filter(|&n| {
            let mu1 = mu1_exact(n);
            ipr2_sphere_average_exact(n) - &mu1 * &mu1 != mu2_exact(n)
        })
        .count();
    checks.push(check(
        "variance-identity",
        format!("ipr2(n) − mu1(n)² = mu2(n) exactly for n = 2..=100 ({bad} violations)"),
        bad == 0,
    ));

    let degenerate = mu2_exact(2).is_zero() && mu2_exact(3).is_zero() && mu1_exact(2).is_one();
    checks.push(check(
        "degenerate-dimensions",
        "mu2(2) = mu2(3) = 0 and mu1(2) = 1".into(),
        degenerate,
    ));

    // expansion oracle vs closed forms, exact equality
    for &n in n_list {
        if !(3..=8).contains(&n) {
            continue;
        }
        let first = expansion_moment_exact(n, 1)?;
        let second = expansion_moment_exact(n, 2)?;
        let ok = first == mu1_exact(n) && second == ipr2_sphere_average_exact(n);
        checks.push(check(
            &format!("expansion-oracle-n{n}"),
            format!(
                "raw expansion gives mu1 = {first}, ipr2 = {second}; closed forms {} and {}",
                mu1_exact(n),
                ipr2_sphere_average_exact(n)
            ),
            ok,
        ));
    }

    // closed-form rotation sums vs brute force
    for n in [5usize, 10, 20] {
        let cf = q_closed_form_sums(n)?;
        let pairs = [
            ("quartic", cf.quartic, quartic_sum_brute(n)?),
            ("two_two", cf.two_two, two_two_sum_brute(n)?),
            ("eighth", cf.eighth, eighth_sum_brute(n)?),
            ("six_two", cf.six_two, six_two_sum_brute(n)?),
            ("mixed", cf.mixed, mixed_sum_brute(n)?),
        ];
        let mut worst = 0.0f64;
        for (_, closed, brute) in pairs {
            worst = worst.max(((closed - brute) / brute.abs().max(1e-30)).abs());
        }
        checks.push(check(
            &format!("rotation-sums-n{n}"),
            format!("five closed forms vs direct summation, worst relative error {worst:.3e}"),
            worst < 1e-10,
        ));
    }

    // rotation orthogonality and row sums
    let mut worst_orth = 0.0f64;
    let mut worst_row = 0.0f64;
    for n in [2usize, 3, 5, 10, 50, 100, 200] {
        let q = q_matrix(n)?;
        for i in 0..n {
            let mut row = 0.0;
            for j in 0..n {
                row += q[i * n + j];
                let dot: f64 = (0..n).map(|k| q[i * n + k] * q[j * n + k]).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                worst_orth = worst_orth.max((dot - want).abs());
            }
            let want = if i == n - 1 { (n as f64).sqrt() } else { 0.0 };
            worst_row = worst_row.max((row - want).abs());
        }
        // spot-check the componentwise entry against the assembled matrix
        let spot = q_component(1, n, n)? - q[n - 1];
        worst_orth = worst_orth.max(spot.abs());
    }
    checks.push(check(
        "rotation-orthogonality",
        format!("‖QQᵀ − I‖max = {worst_orth:.3e}, row-sum deviation {worst_row:.3e}, n ≤ 200"),
        worst_orth < 1e-12 && worst_row < 1e-12,
    ));

    // Monte Carlo vs closed forms
    for &n in n_list {
        let mut rng = mc_rng(seed, n);
        let m = mc_ipr_moments(n, mc_samples, &mut rng)?;
        let mu1 = rational_to_f64(&mu1_exact(n));
        let mu2 = rational_to_f64(&mu2_exact(n));
        let mean_ok = (m.mean - mu1).abs() < (4.0 * m.mean_se).max(1e-12);
        let var_ok = if mu2 == 0.0 {
            m.variance.abs() < 1e-12
        } else {
            (m.variance - mu2).abs() < (5.0 * m.variance_se).max(0.05 * mu2)
        };
        checks.push(check(
            &format!("mc-moments-n{n}"),
            format!(
                "mean {:.6} vs {mu1:.6} (se {:.2e}), variance {:.6} vs {mu2:.6} (se {:.2e})",
                m.mean, m.mean_se, m.variance, m.variance_se
            ),
            mean_ok && var_ok,
        ));
    }

    Ok(VerifyReport {
        mc_samples,
        seed,
        checks,
    })
}

fn mc_rng(seed: u64, n: usize) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    let s = super::run::mix_seed(&[seed, 0x5348_4552_u64, n as u64]);
    rand_chacha::ChaCha8Rng::seed_from_u64(s)
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_suite_passes_at_modest_sample_counts() {
        let report = verify_analytics(&[2, 3, 4, 5], 20_000, 7).unwrap();
        assert!(report.all_pass(), "{}", report.render_text());
        // identity, degenerate, 3 expansions (3,4,5), 3 sum cells, orthogonality, 4 MC
        assert_eq!(report.checks.len(), 13);
        let text = report.render_text();
        assert!(text.contains("[PASS] variance-identity"));
        assert!(text.contains("mc-moments-n5"));
    }

    #[test]
    fn report_serializes_to_json_and_back() {
        let report = verify_analytics(&[3], 1_000, 1).unwrap();
        let js = serde_json::to_string_pretty(&report).unwrap();
        let back: VerifyReport = serde_json::from_str(&js).unwrap();
        assert_eq!(back.checks.len(), report.checks.len());
        assert_eq!(back.seed, 1);
    }
}
