//! One-dimensional oscillatory machinery.
//!
//! The workhorse is [`sinc_log_moment`], the integral
//! `∫₀^T sinc(u) · ln(T/u)^p / p! du`. Repeated averaging collapses onto it:
//! with `H f(x) = (1/x) ∫₀^x f`,
//!
//! ```text
//! H^l F(x)          = sinc_log_moment(x, l − 1) / x        (l ≥ 1)
//! ∫₀^T H^l F(u) du  = sinc_log_moment(T, l)
//! ```
//!
//! and the cube integral of `sin(∏t)/∏t` over `[−N, N]^k` equals
//! `2^k ∫₀^{N^k} H^{k−1}F = 2^k · sinc_log_moment(N^k, k − 1)`.

mod average;
mod cube;
mod special;

pub use average::{
    iterated_average, iterated_average_at, iterated_average_integral, sinc_log_moment,
    IteratedAverageTable, DEFAULT_POINTS_PER_DECADE, TABLE_X_MIN,
};
pub use cube::{brute_force_cube_integral, cube_integral, lower_bound_series, LowerBoundPoint};
pub use special::{cisi, cosine_integral, sinc, sine_integral};
