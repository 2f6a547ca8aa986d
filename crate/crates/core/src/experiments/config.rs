use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::integrate::QuadSpec;
use crate::phase::{binomial, sample_generic_alphas, AlphaMatrix, DEFAULT_MARGIN, DEFAULT_TOL_PHASE};

/// Thresholds behind every verdict.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Lower bound: fitted exponent within `k − 1 ± lower_band`.
    pub lower_band: f64,
    /// Upper bound: fitted exponent at most `k − 2 + upper_slack`.
    pub upper_slack: f64,
    /// Counterexample: fitted exponent within `k − 1 ± counterexample_band`.
    pub counterexample_band: f64,
    pub counterexample_min_r2: f64,
    pub fresnel_min_exponent: f64,
    pub fresnel_max_exponent: f64,
    /// Identity: relative gap between the reduction and the tensor rule.
    pub identity_rel: f64,
    /// Oracle: allowed shortfall of `|oracle|` below the sine part, relative.
    pub oracle_rel_gap: f64,
    /// Oracle with `k = 1`: agreement with the 1-D principal value.
    pub oracle_k1_rel: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            lower_band: 0.2,
            upper_slack: 0.3,
            counterexample_band: 0.25,
            counterexample_min_r2: 0.9,
            fresnel_min_exponent: 0.75,
            fresnel_max_exponent: 1.25,
            identity_rel: 1e-2,
            oracle_rel_gap: 0.3,
            oracle_k1_rel: 1e-3,
        }
    }
}

/// Everything an experiment reads. Unset optional fields fall back to
/// per-experiment defaults (see [`ExperimentKind::default_sweep`]).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub k: usize,
    pub n: Option<usize>,
    pub seed: Option<u64>,
    pub delta: f64,
    #[serde(rename = "N_list")]
    pub n_list: Option<Vec<f64>>,
    /// Evaluation points as multiples of `N`.
    pub x_points: Vec<f64>,
    pub c_tilde: f64,
    pub tol_phase: f64,
    pub quad: QuadSpec,
    #[serde(rename = "fit_min_N")]
    pub fit_min_n: f64,
    /// Nodes per half-axis for the principal-value oracle; derived from the
    /// chirp frequencies when unset.
    pub oracle_resolution: Option<usize>,
    /// Use the dedicated `k = 2, n = 4` phase solver.
    pub n4k2: bool,
    /// Explicit `k × (n − 1)` direction matrix; sampled from `seed` when unset.
    pub alphas: Option<Vec<Vec<f64>>>,
    pub tolerances: Tolerances,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            k: 2,
            n: None,
            seed: None,
            delta: DEFAULT_MARGIN,
            n_list: None,
            x_points: vec![0.0, -0.03, 0.03],
            c_tilde: 0.05,
            tol_phase: DEFAULT_TOL_PHASE,
            quad: QuadSpec::default(),
            fit_min_n: 100.0,
            oracle_resolution: None,
            n4k2: false,
            alphas: None,
            tolerances: Tolerances::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    Identity,
    LowerBound,
    UpperBound,
    Counterexample,
    Fresnel,
    Oracle,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::Identity => "identity",
            Self::LowerBound => "lower-bound",
            Self::UpperBound => "upper-bound",
            Self::Counterexample => "counterexample",
            Self::Fresnel => "fresnel",
            Self::Oracle => "oracle",
        }
    }

    /// Sweep used when `N_list` is unset (cutoffs `Λ` for the Fresnel case).
    pub fn default_sweep(self, k: usize) -> Vec<f64> {
        match self {
            Self::Identity if k >= 3 => vec![2.0, 4.0],
            Self::Identity => vec![2.0, 4.0, 8.0],
            Self::LowerBound if k == 1 => vec![1e2, 1e3, 1e4, 1e5, 1e6],
            Self::LowerBound => vec![1e2, 3e2, 1e3, 3e3, 1e4],
            Self::UpperBound => vec![1e2, 2e2, 5e2, 1e3],
            Self::Counterexample => vec![1e2, 2e2, 3e2, 5e2, 1e3],
            Self::Fresnel => vec![1e2, 3e2, 1e3, 3e3, 1e4],
            Self::Oracle => vec![10.0],
        }
    }
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::InvalidInput(format!("config: {e}")))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    /// `n` if set, else the smallest size with a generic solution,
    /// `C(2k, k) − 1`.
    pub fn n_or_default(&self) -> usize {
        self.n.unwrap_or_else(|| match self.k {
            1 => 2,
            k => binomial(2 * k as u64, k as u64).expect("small k") as usize - 1,
        })
    }

    pub fn require_seed(&self) -> Result<u64> {
        self.seed.ok_or_else(|| Error::InvalidInput("this experiment samples alphas and needs a seed".into()))
    }

    /// The explicit `alphas`, or a seeded generic sample of size `n`
    /// (falling back to `default_n`).
    pub fn alpha_matrix(&self, default_n: usize) -> Result<AlphaMatrix> {
        let Some(rows) = &self.alphas else {
            return sample_generic_alphas(self.k, self.n.unwrap_or(default_n), self.require_seed()?, self.delta);
        };
        let a = AlphaMatrix::new(rows.first().map_or(0, Vec::len) + 1, rows.clone())?;
        if a.k() != self.k || self.n.is_some_and(|n| n != a.n()) {
            return Err(Error::DimensionMismatch(format!(
                "alphas are {} x {} but the config asks for k = {}, n = {:?}",
                a.k(),
                a.n() - 1,
                self.k,
                self.n
            )));
        }
        Ok(a)
    }

    pub fn sweep(&self, kind: ExperimentKind) -> Vec<f64> {
        self.n_list.clone().unwrap_or_else(|| kind.default_sweep(self.k))
    }

    /// Checks shared invariants plus the sweep limits of `kind`.
    pub fn validate(&self, kind: ExperimentKind) -> Result<()> {
        self.quad.validate()?;
        if self.k == 0 {
            return Err(Error::InvalidInput("k must be positive".into()));
        }
        if !(self.delta >= 0.0) || !(self.c_tilde > 0.0) || !(self.tol_phase > 0.0) {
            return Err(Error::InvalidInput("delta, c_tilde and tol_phase must be positive".into()));
        }
        let list = self.sweep(kind);
        if list.is_empty() || list.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidInput("N_list must be non-empty and strictly increasing".into()));
        }
        let (lo, hi) = (list[0], list[list.len() - 1]);
        let ok = match kind {
            ExperimentKind::Identity => lo > 0.0 && hi <= 8.0,
            ExperimentKind::Oracle => lo > 0.0 && hi <= 20.0,
            ExperimentKind::Fresnel => lo > 0.0,
            _ => lo >= 10.0,
        };
        if !ok {
            return Err(Error::InvalidInput(format!("N_list [{lo}, {hi}] is outside the range allowed for {}", kind.name())));
        }
        if let Some(x) = self.x_points.iter().find(|x| x.abs() > self.c_tilde) {
            return Err(Error::InvalidInput(format!("x point {x}·N lies outside the window ±{}·N", self.c_tilde)));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_keys_rejected() {
        assert!(ExperimentConfig::from_toml("k = 2\nbogus = 1\n").is_err());
        assert!(ExperimentConfig::from_toml("[quad]\nabs_tol = 1e-6\nextra = 2\n").is_err());
        assert!(ExperimentConfig::from_toml("[tolerances]\nnope = 1\n").is_err());
    }

    #[test]
    fn round_trip_and_defaults() {
        let c = ExperimentConfig::from_toml("k = 3\nseed = 7\nN_list = [100.0, 1000.0]\nfit_min_N = 50.0\n").unwrap();
        assert_eq!(c.k, 3);
        assert_eq!(c.n_or_default(), 19);
        assert_eq!(c.fit_min_n, 50.0);
        assert_eq!(c.quad, QuadSpec::default());
        let back = ExperimentConfig::from_toml(&c.to_toml()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn explicit_alphas() {
        let c = ExperimentConfig::from_toml("k = 2\nalphas = [[2.0, 3.0, 4.0], [5.0, 6.0, 7.5]]\n").unwrap();
        let a = c.alpha_matrix(5).unwrap();
        assert_eq!((a.k(), a.n()), (2, 4));
        let c = ExperimentConfig { n: Some(5), ..c };
        assert!(c.alpha_matrix(5).is_err());
        let c = ExperimentConfig { alphas: None, seed: Some(3), ..c };
        assert_eq!(c.alpha_matrix(4).unwrap().n(), 5);
    }

    #[test]
    fn sweep_limits() {
        let mut c = ExperimentConfig { n_list: Some(vec![5.0, 20.0]), ..Default::default() };
        assert!(c.validate(ExperimentKind::LowerBound).is_err());
        assert!(c.validate(ExperimentKind::Oracle).is_ok());
        c.n_list = Some(vec![2.0, 16.0]);
        assert!(c.validate(ExperimentKind::Identity).is_err());
        c.n_list = None;
        c.x_points = vec![0.2];
        assert!(c.validate(ExperimentKind::Counterexample).is_err());
    }
}
