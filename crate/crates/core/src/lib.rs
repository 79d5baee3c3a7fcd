//! Values of the Riemann zeta-function on the critical line where the curve
//! `t ↦ ζ(1/2+it)` meets a line `e^{iφ}ℝ` through the origin.
//!
//! The crate evaluates the special functions involved (log Γ, Δ(s), ϑ(t),
//! ζ(s), Hardy's Z), enumerates the crossing points `t_n^φ`, locates
//! critical-line zeros, and computes the discrete moments of ζ over the
//! crossings together with their asymptotic main terms.

// `!(x >= a)` is used on purpose so that NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod angle;
pub mod crossing;
pub mod error;
pub mod moments;
pub mod special_fn;
pub mod summation;
pub mod zeros;
pub mod zeta_eval;

pub use angle::LineAngle;
pub use crossing::{
    count_crossings, enumerate_crossings, enumerate_window, scan_low, solve_crossing, CountReport,
    CrossingPoint,
};
pub use error::{Error, Result};
pub use moments::{
    first_moment, gram_sums, large_value_search, mean_of_means, mean_value, nonzero_crossing_bound,
    second_moment, CrossingBound, GramSumReport, LargeValue, MomentEngine, MomentReport, ValueSign,
};
pub use special_fn::{
    delta, delta_asymptotic, digamma, log_delta_derivative, log_gamma, theta, theta_derivative,
    ComplexValue, ThetaValue,
};
pub use zeros::{
    count_zeros, gram_law_audit, n_main_term, scan_zeros, GramAudit, ZeroCount, ZeroRecord,
    ZeroScan,
};
pub use zeta_eval::{critical_point, hardy_z, phi_fn, z_rs, zeta_em, CriticalLinePoint};

/// Version tag stored with cached tables.
pub const CODE_VERSION: &str = env!("CARGO_PKG_VERSION");
