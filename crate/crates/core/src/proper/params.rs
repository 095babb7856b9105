use crate::error::{Error, Result};

/// Density constants of the proper-colouring track, as fractions of `n`.
///
/// `gamma`, `tau` and `mu` are normally derived per branch; setting them
/// overrides the derived value in the strict checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PipelineParams {
    /// Fraction of `n` giving the number of spiders.
    pub alpha: f64,
    pub phi: f64,
    /// Colours with at least `epsilon * n` edges are the fat colours `C_F`.
    pub epsilon: f64,
    pub gamma: Option<f64>,
    pub tau: Option<f64>,
    /// Low-degree slack of the leg-count surgery.
    pub delta: f64,
    pub mu: Option<f64>,
    /// Admissible leg counts, as fractions of `n`.
    pub t_min: f64,
    pub t_max: f64,
    /// Enforce every compound inequality; otherwise only the concrete counts.
    pub strict: bool,
}

impl Default for PipelineParams {
    fn default() -> Self {
        PipelineParams::published()
    }
}

impl PipelineParams {
    pub const PUBLISHED_ALPHA: f64 = 0.000001;
    pub const PUBLISHED_PHI: f64 = 0.0005;
    pub const PUBLISHED_EPSILON: f64 = 0.06;

    pub fn published() -> PipelineParams {
        PipelineParams {
            alpha: Self::PUBLISHED_ALPHA,
            phi: Self::PUBLISHED_PHI,
            epsilon: Self::PUBLISHED_EPSILON,
            gamma: None,
            tau: None,
            delta: 0.0006,
            mu: None,
            t_min: 0.0007,
            t_max: 0.2,
            strict: true,
        }
    }

    /// Desk-scale constants: two spiders at `n = 1000`.
    pub fn relaxed() -> PipelineParams {
        PipelineParams {
            alpha: 0.002,
            phi: 0.01,
            epsilon: 0.06,
            delta: 0.01,
            strict: false,
            ..PipelineParams::published()
        }
    }

    /// Window of the several-shapes variant.
    pub fn multi_shape(self) -> PipelineParams {
        PipelineParams { t_min: 0.003, ..self }
    }

    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: f64) -> Result<()> {
        let frac = |v: f64| {
            if v > 0.0 && v < 1.0 {
                Ok(v)
            } else {
                Err(Error::Input(format!("{key} = {v} is not in (0, 1)")))
            }
        };
        match key {
            "alpha" => self.alpha = frac(value)?,
            "phi" => self.phi = frac(value)?,
            "epsilon" => self.epsilon = frac(value)?,
            "gamma" => self.gamma = Some(frac(value)?),
            "tau" => self.tau = Some(frac(value)?),
            "delta" => self.delta = frac(value)?,
            "mu" => self.mu = Some(frac(value)?),
            "t_min" => self.t_min = frac(value)?,
            "t_max" => self.t_max = frac(value)?,
            "strict" => self.strict = value != 0.0,
            _ => return Err(Error::Input(format!("unknown parameter {key}"))),
        }
        Ok(())
    }

    /// Number of spiders, `⌊αn⌋`.
    pub fn spider_count(&self, n: usize) -> usize {
        (self.alpha * n as f64 + 1e-9).floor() as usize
    }

    /// Colours with at least this many edges are fat.
    pub fn fat_threshold(&self, n: usize) -> usize {
        (self.epsilon * n as f64 - 1e-9).ceil() as usize
    }
}
