//! Census forensics for maximally localized modes.
//!
//! A two-site Laplacian eigenvector (IPR = n/2) exists exactly when the graph
//! has a twin pair: two vertices whose neighborhoods agree away from the
//! pair. Adjacent twins pin eigenvalue z + 1, non-adjacent twins eigenvalue
//! z. This walks the full (16, 3) census and separates the basis-independent
//! counts (twin pairs exist) from what one solver's eigenbasis happens to
//! expose, which differ whenever the twin eigenvalue is degenerate.

use iprlab::graphgen::enumerate_connected_regular;

fn main() {
    let census = enumerate_connected_regular(16, 3).unwrap();
    let mut adjacent_twins = 0usize;
    let mut nonadjacent_twins = 0usize;
    let mut any_twins = 0usize;
    for g in &census.graphs {
        let n = g.n();
        let mut has_adj = false;
        let mut has_non = false;
        for i in 0..n {
            for j in (i + 1)..n {
                let ni: Vec<u32> = g
                    .neighbors(i)
                    .iter()
                    .copied()
                    .filter(|&w| w != j as u32)
                    .collect();
                let nj: Vec<u32> = g
                    .neighbors(j)
                    .iter()
                    .copied()
                    .filter(|&w| w != i as u32)
                    .collect();
                if ni == nj {
                    if g.has_edge(i, j) {
                        has_adj = true;
                    } else {
                        has_non = true;
                    }
                }
            }
        }
        adjacent_twins += usize::from(has_adj);
        nonadjacent_twins += usize::from(has_non);
        any_twins += usize::from(has_adj || has_non);
    }
    // Lower bound every correct solver must report: a twin mode whose
    // eigenvalue is simple leaves the solver no basis freedom.
    use iprlab::spectra::{eigendecompose, laplacian, DEFAULT_EIGEN_TOL};
    let mut forced = 0usize;
    let mut basis_reached = 0usize;
    for g in &census.graphs {
        let d = eigendecompose(&laplacian(g), DEFAULT_EIGEN_TOL).unwrap();
        let evs = d.eigenvalues();
        let mut has_forced = false;
        let mut reached = false;
        for k in 0..g.n() {
            let v = d.vector(k);
            let ipr = 16.0 * v.iter().map(|c| c.powi(4)).sum::<f64>();
            if ipr >= 8.0 - 1e-6 {
                reached = true;
                let mult = evs
                    .iter()
                    .filter(|&&e| (e - evs[k]).abs() < 1e-8)
                    .count();
                if mult == 1 {
                    has_forced = true;
                }
            }
        }
        forced += usize::from(has_forced);
        basis_reached += usize::from(reached);
    }
    let total = census.count as f64;
    println!(
        "graphs reaching 8 in this solver basis: {} ({:.1}%)",
        basis_reached,
        100.0 * basis_reached as f64 / total
    );
    println!(
        "graphs forced to reach 8 (simple twin eigenvalue): {} ({:.1}%)",
        forced,
        100.0 * forced as f64 / total
    );
    println!(
        "graphs with adjacent twins: {} ({:.1}%)",
        adjacent_twins,
        100.0 * adjacent_twins as f64 / total
    );
    println!(
        "graphs with nonadjacent twins: {} ({:.1}%)",
        nonadjacent_twins,
        100.0 * nonadjacent_twins as f64 / total
    );
    println!(
        "graphs with any twin pair: {} ({:.1}%)",
        any_twins,
        100.0 * any_twins as f64 / total
    );
}
