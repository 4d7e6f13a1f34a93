//! Exact and Monte-Carlo averages of IPR-type monomials over the sum-zero unit sphere.
//!
//! Three mutually independent routes to the same moments live here: closed-form
//! rationals ([`exact`]), raw monomial expansion through the rotation ([`expansion`]),
//! and uniform subsphere sampling ([`mc`]). [`rotation`] carries the change of basis
//! they share and the entry-power sums behind the closed forms.

pub mod exact;
pub mod expansion;
pub mod mc;
pub mod rotation;

pub use exact::{
    folland_integral, gamma_half_ratio, ipr2_sphere_average_exact, mu1_exact, mu2_exact,
    sphere_average, ExactSphereValue, ExponentVector,
};
pub use expansion::expansion_moment_exact;
pub use mc::{mc_ipr_moments, sample_subsphere, McIprMoments, SubspherePoint};
pub use rotation::{
    q_closed_form_sums, q_component, q_matrix, q_matrix_tensor, q_power_coeffs, QClosedFormSums,
    QPowerCoeffs,
};
