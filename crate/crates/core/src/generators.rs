//! Synthetic test processes: a stationary AR(1), a mean jump, and a
//! cyclo-stationary phasor in noise.
//!
//! All noise is complex Gaussian `(x + i y) / sqrt(2)` with independent
//! standard-normal `x` and `y`, drawn from the `GENERATE` stream of the seed.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::hypothesis::Sidedness;
use crate::random::{domain, RandomSource};
use crate::spectral::ComplexSignal;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProcessKind {
    Ar1,
    Jump,
    Cyclo,
}

impl ProcessKind {
    pub const ALL: [ProcessKind; 3] = [ProcessKind::Ar1, ProcessKind::Jump, ProcessKind::Cyclo];

    pub fn as_str(self) -> &'static str {
        match self {
            ProcessKind::Ar1 => "ar1",
            ProcessKind::Jump => "jump",
            ProcessKind::Cyclo => "cyclo",
        }
    }

    /// Parameters of the reference experiments.
    pub fn default_process(self) -> Process {
        match self {
            ProcessKind::Ar1 => Process::Ar1 { coefficient: 0.9, innovation_scale: 0.1 },
            ProcessKind::Jump => Process::Jump { low_level: 1.0, high_level: 3.0, noise_scale: 1.0 },
            ProcessKind::Cyclo => Process::Cyclo { amplitude: 1.0, frequency: 10.0 },
        }
    }

    /// The tail each process is tested on: the AR(1) calibrates size with a
    /// two-sided test, the jump raises power variance, the phasor lowers it.
    pub fn reference_sidedness(self) -> Sidedness {
        match self {
            ProcessKind::Ar1 => Sidedness::TwoSided,
            ProcessKind::Jump => Sidedness::HighTail,
            ProcessKind::Cyclo => Sidedness::LowTail,
        }
    }
}

impl fmt::Display for ProcessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for ProcessKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ar1" | "ar" => Ok(ProcessKind::Ar1),
            "jump" => Ok(ProcessKind::Jump),
            "cyclo" | "cs" => Ok(ProcessKind::Cyclo),
            other => Err(Error::InvalidArgument(format!("unknown process `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Process {
    /// `x_n = coefficient * x_{n-1} + innovation_scale * e_n`, same for `y`, started
    /// from the stationary distribution.
    Ar1 { coefficient: f64, innovation_scale: f64 },
    /// `low_level` for `n <= N/2` (0-based), `high_level` after, plus scaled noise.
    Jump { low_level: f64, high_level: f64, noise_scale: f64 },
    /// `amplitude * exp(i frequency n / N)` plus unit-variance noise.
    Cyclo { amplitude: f64, frequency: f64 },
}

impl Process {
    pub fn kind(&self) -> ProcessKind {
        match self {
            Process::Ar1 { .. } => ProcessKind::Ar1,
            Process::Jump { .. } => ProcessKind::Jump,
            Process::Cyclo { .. } => ProcessKind::Cyclo,
        }
    }

    fn validate(&self) -> Result<()> {
        let finite = |name: &str, v: f64| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidArgument(format!("{name} must be finite, got {v}")))
            }
        };
        match *self {
            Process::Ar1 { coefficient, innovation_scale } => {
                finite("coefficient", coefficient)?;
                finite("innovation_scale", innovation_scale)?;
                if coefficient.abs() >= 1.0 {
                    return Err(Error::InvalidArgument(format!(
                        "AR(1) coefficient must satisfy |c| < 1, got {coefficient}"
                    )));
                }
                if innovation_scale < 0.0 {
                    return Err(Error::InvalidArgument("innovation_scale must be nonnegative".into()));
                }
            }
            Process::Jump { low_level, high_level, noise_scale } => {
                finite("low_level", low_level)?;
                finite("high_level", high_level)?;
                finite("noise_scale", noise_scale)?;
                if noise_scale < 0.0 {
                    return Err(Error::InvalidArgument("noise_scale must be nonnegative".into()));
                }
            }
            Process::Cyclo { amplitude, frequency } => {
                finite("amplitude", amplitude)?;
                finite("frequency", frequency)?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProcessSpec {
    pub process: Process,
    pub n: usize,
    pub seed: u64,
}

impl ProcessSpec {
    pub fn new(kind: ProcessKind, n: usize, seed: u64) -> Self {
        Self { process: kind.default_process(), n, seed }
    }

    pub fn ar1(n: usize, seed: u64) -> Self {
        Self::new(ProcessKind::Ar1, n, seed)
    }

    pub fn jump(n: usize, seed: u64) -> Self {
        Self::new(ProcessKind::Jump, n, seed)
    }

    pub fn cyclo(n: usize, seed: u64) -> Self {
        Self::new(ProcessKind::Cyclo, n, seed)
    }

    pub fn kind(&self) -> ProcessKind {
        self.process.kind()
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidArgument(format!("process length must be at least 2, got {}", self.n)));
        }
        self.process.validate()
    }
}

fn complex_noise<R: Rng>(rng: &mut R) -> Complex64 {
    let x: f64 = rng.sample(StandardNormal);
    let y: f64 = rng.sample(StandardNormal);
    Complex64::new(x, y) * FRAC_1_SQRT_2
}

pub fn generate(spec: &ProcessSpec) -> Result<ComplexSignal> {
    spec.validate()?;
    let n = spec.n;
    let mut rng = RandomSource::new(spec.seed, domain::GENERATE).rng();
    let samples: Vec<Complex64> = match spec.process {
        Process::Ar1 { coefficient, innovation_scale } => {
            let stationary_sd = innovation_scale / (1.0 - coefficient * coefficient).sqrt();
            let mut x: f64 = stationary_sd * rng.sample::<f64, _>(StandardNormal);
            let mut y: f64 = stationary_sd * rng.sample::<f64, _>(StandardNormal);
            let mut out = Vec::with_capacity(n);
            out.push(Complex64::new(x, y) * FRAC_1_SQRT_2);
            for _ in 1..n {
                x = coefficient * x + innovation_scale * rng.sample::<f64, _>(StandardNormal);
                y = coefficient * y + innovation_scale * rng.sample::<f64, _>(StandardNormal);
                out.push(Complex64::new(x, y) * FRAC_1_SQRT_2);
            }
            out
        }
        Process::Jump { low_level, high_level, noise_scale } => (0..n)
            .map(|i| {
                // i <= N/2 with real division: 2i <= N.
                let level = if 2 * i <= n { low_level } else { high_level };
                let noise = complex_noise(&mut rng);
                Complex64::new(level, 0.0) + noise * noise_scale
            })
            .collect(),
        Process::Cyclo { amplitude, frequency } => (0..n)
            .map(|i| {
                let phasor = Complex64::from_polar(amplitude, frequency * i as f64 / n as f64);
                phasor + complex_noise(&mut rng)
            })
            .collect(),
    };
    ComplexSignal::new(samples)
}
