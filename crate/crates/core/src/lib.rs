//! Bootstrap power-variance test for second-order nonstationarity in
//! complex-valued signals.
//!
//! The test compares the observed power variance of a signal (the time
//! average of squared deviations of `|z_n|^2` from its mean) against the
//! distribution obtained from phase-randomized surrogates, which share the
//! signal's Fourier amplitudes but are stationary by construction. The
//! surrogate mean is also available in closed form from the amplitudes
//! alone, see [`stats::expected_null_power_variance`].
//!
//! ```
//! use powervar::{generators::{generate, ProcessSpec}, hypothesis::{run_test, Sidedness, TestConfig}};
//!
//! let signal = generate(&ProcessSpec::jump(1000, 7)).unwrap();
//! let config = TestConfig { bootstraps: 200, sidedness: Sidedness::HighTail, ..TestConfig::default() };
//! let result = run_test(&signal, &config).unwrap();
//! assert!(result.p_value <= 1.0);
//! ```
//!
//! Modules:
//!
//! - [`spectral`]: arbitrary-length FFT (mixed radix with a Bluestein fallback).
//! - [`stats`]: power variance and its analytic surrogate expectation.
//! - [`random`]: reproducible, counter-indexed random streams.
//! - [`surrogate`]: phase-randomized replicates.
//! - [`hypothesis`]: the bootstrap test itself.
//! - [`generators`]: AR(1), jump and cyclo-stationary synthetic processes.
//! - [`montecarlo`]: rejection-rate experiments over a grid of lengths.
//! - [`cli_io`]: file formats and the `powervar` command line.

pub mod cli_io;
mod error;
pub mod generators;
pub mod hypothesis;
pub mod montecarlo;
pub mod random;
pub mod spectral;
pub mod stats;
pub mod surrogate;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use spectral::{ComplexSignal, Spectrum};
pub use stats::{AmplitudeSpectrum, PowerSummary};
