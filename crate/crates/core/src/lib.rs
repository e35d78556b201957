//! Digital filters from continuous transfer functions.
//!
//! Converts any causal `H(s)` into difference-equation coefficients with
//! Tustin's bilinear transform, runs the resulting filter at its fixed loop
//! rate, and measures what it actually does with chirps and stepped sines.
//!
//! ```
//! use tustin::{catalog, discretize::tustin_horner, runtime::Filter};
//!
//! let tf = catalog::butterworth2(catalog::hz(10.0)).unwrap();
//! let coeffs = tustin_horner(&tf, 1000.0).unwrap();
//! let mut filter = Filter::new(coeffs);
//! let y = filter.tick(5.0).unwrap();
//! assert!((y - 5.0).abs() < 1e-12);
//! ```
//!
//! Runnable walkthroughs for each capability live under `examples/`.

pub mod analysis;
pub mod catalog;
pub mod cli;
pub mod discretize;
pub mod error;
pub mod io;
pub mod polynomial;
pub mod runtime;
pub mod signals;
pub mod tfparse;

pub use discretize::{
    tustin_direct, tustin_horner, ContinuousTransferFunction, DigitalFilterCoefficients,
};
pub use error::{Error, Result};
pub use polynomial::Polynomial;
pub use runtime::Filter;
pub use signals::{ChirpKind, ChirpSpec, TimeSeries};
