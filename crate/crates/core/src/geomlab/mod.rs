//! Numeric curvature checks.
//!
//! Metrics are evaluated on nested forward-mode jets, so Christoffel
//! symbols, curvature and its covariant derivative come out exact up to
//! rounding with no finite differencing. Two charts:
//!
//! - the unit sphere `S^m`, stereographic: `g_ab = 4 δ_ab / (1 + |x|²)²`;
//! - `CP_n` in the affine chart `z_j = x_{2j} + i x_{2j+1}` with the
//!   Fubini–Study metric scaled so that
//!   `R_abcd = g_ac g_bd − g_bc g_ad + J_ac J_bd − J_bc J_ad + 2J_ab J_cd`,
//!   i.e. `g_ab = δ_ab/(1+|z|²) − (u_a u_b + v_a v_b)/(1+|z|²)²` where
//!   `Σ z̄_j dz_j = (u_a + i v_a) dx^a`. `CP_1` is the round sphere of radius 1/2.
//!
//! Curvature follows `(∇_a∇_b − ∇_b∇_a) X^c = R_ab^c_d X^d`, so the unit
//! sphere has `R_abcd = g_ac g_bd − g_bc g_ad`.
//!
//! Connection checks apply a connection twice to sections whose
//! coefficients are seeded random quadratics and antisymmetrize.

mod chart;
mod checks;
mod connections;
mod jet;

pub use chart::{
    chart_complex_structure, fs_chart, fs_metric, sphere_chart, sphere_metric, ChartFrame, Space,
};
pub use checks::{
    check_chart_invariants, check_cpn_curvature, check_killing_connection_flat_on_sphere,
    check_killing_curvature, check_ktractor_curvature, check_mu_identity,
    check_riemannian_tractor_curvature, check_riemannian_tractor_flat_on_sphere,
    check_sphere_curvature, check_tractor_parallelism, check_wedge_matches_killing_on_sphere,
    check_wedge_tractor_flat_on_sphere, run_battery, CheckOutcome, DEFAULT_SEED, DEFAULT_TOL,
};
pub use connections::Connection;
pub use jet::{Dual, Jet2, Scalar};

/// The second-order jet over `f64`.
pub type SecondOrderScalar = Jet2<f64>;
