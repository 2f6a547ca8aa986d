//! Integrals of `sin(t₁⋯t_k)/(t₁⋯t_k)` over support polytopes, and a direct
//! principal-value oracle for the full chirp kernel.
//!
//! Two routes evaluate the polytope integral:
//!
//! * slicing: the last coordinate is integrated in closed form,
//!   `∫_a^b sin(Ps)/(Ps) ds = (Si(Pb) − Si(Pa))/P`, and the outer coordinates
//!   adaptively;
//! * level sets: `I = ∫₀^∞ sinc(v) ρ(v) dv` where `ρ(v)` is the density of
//!   `|t₁⋯t_k|` on the polytope, computed with the innermost logarithmic
//!   integral done exactly.
//!
//! Slicing needs work proportional to the number of oscillations of the
//! integrand, so it is the route for `k = 2`. The level-set route costs
//! roughly the same for every `N` and is the route for `k = 3`.

mod complement;
mod density;
mod pv;
mod slicing;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::SupportPolytope;

pub use complement::{complement_integral, dyadic_shell_decomposition, half_space_piece, ShellIntegral};
pub use density::{product_density, sinprod_by_level_sets, DensityTable};
pub use pv::{pv_reference_1d, pv_tensor_oracle, required_spacing};
pub use slicing::{closure, quadratic_sin_part, sinprod_by_slicing};

/// Which route `sinprod_over_polytope` takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PolytopeMethod {
    /// Slicing for `k = 2`, level sets for `k = 3`.
    #[default]
    Auto,
    Slicing,
    LevelSets,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuadSpec {
    /// Kronrod nodes per `2π` of outer phase in the initial partition.
    pub outer_points_per_unit_oscillation: u32,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    pub method: PolytopeMethod,
    /// Samples per decade of the product-density table.
    pub density_points_per_decade: usize,
}

impl Default for QuadSpec {
    fn default() -> Self {
        Self {
            outer_points_per_unit_oscillation: 8,
            abs_tol: 1e-6,
            max_subdivisions: 200_000,
            method: PolytopeMethod::Auto,
            density_points_per_decade: 64,
        }
    }
}

impl QuadSpec {
    pub fn validate(&self) -> Result<()> {
        if self.outer_points_per_unit_oscillation < 8 {
            return Err(Error::InvalidInput(format!(
                "outer_points_per_unit_oscillation must be at least 8, got {}",
                self.outer_points_per_unit_oscillation
            )));
        }
        if !(self.abs_tol > 0.0) || self.max_subdivisions == 0 {
            return Err(Error::InvalidInput("abs_tol and max_subdivisions must be positive".into()));
        }
        if self.density_points_per_decade < 16 {
            return Err(Error::GridTooCoarse { points_per_decade: self.density_points_per_decade });
        }
        Ok(())
    }

    /// Longest initial panel for an outer phase changing at rate `omega`.
    pub(crate) fn panel_width(&self, omega: f64) -> f64 {
        15.0 * std::f64::consts::TAU / (self.outer_points_per_unit_oscillation as f64 * omega.max(1e-300))
    }
}

/// `f(x) = amplitude · χ_N(x) · exp(i · phase_coefficient · x^degree)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChirpSpec {
    pub phase_coefficient: f64,
    pub degree: u32,
    pub cutoff: f64,
    #[serde(default = "unit")]
    pub amplitude: f64,
}

fn unit() -> f64 {
    1.0
}

impl ChirpSpec {
    pub fn new(phase_coefficient: f64, degree: u32, cutoff: f64) -> Result<Self> {
        if !(cutoff > 0.0) {
            return Err(Error::InvalidInput(format!("chirp cutoff must be positive, got {cutoff}")));
        }
        Ok(Self { phase_coefficient, degree, cutoff, amplitude: 1.0 })
    }

    pub fn eval(&self, x: f64) -> num_complex::Complex64 {
        if x.abs() > self.cutoff {
            return num_complex::Complex64::new(0.0, 0.0);
        }
        let phase = self.phase_coefficient * x.powi(self.degree as i32);
        num_complex::Complex64::from_polar(self.amplitude, phase)
    }
}

/// `∫_D sin(t₁⋯t_k)/(t₁⋯t_k) dt` for `k ∈ {2, 3}`.
pub fn sinprod_over_polytope(polytope: &SupportPolytope, spec: &QuadSpec) -> Result<f64> {
    spec.validate()?;
    if !(2..=3).contains(&polytope.k) {
        return Err(Error::InvalidInput(format!("polytope integrals need k in {{2, 3}}, got {}", polytope.k)));
    }
    let method = match spec.method {
        PolytopeMethod::Auto if polytope.k == 2 => PolytopeMethod::Slicing,
        PolytopeMethod::Auto => PolytopeMethod::LevelSets,
        m => m,
    };
    match method {
        PolytopeMethod::Slicing => sinprod_by_slicing(polytope, spec),
        _ => sinprod_by_level_sets(polytope, spec),
    }
}
