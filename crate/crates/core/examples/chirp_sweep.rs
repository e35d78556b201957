//! Exponential chirp from 0.1 to 100 Hz at 1000 Hz: a few samples, the
//! instantaneous frequency along the sweep, and the oscillator's drift
//! from the unit circle.
//!
//! cargo run --example chirp_sweep

use std::f64::consts::PI;

use tustin::catalog::hz;
use tustin::signals::ChirpOscillator;
use tustin::{ChirpKind, ChirpSpec};

fn main() -> tustin::Result<()> {
    let spec = ChirpSpec {
        kind: ChirpKind::Exponential,
        omega_min: hz(0.1),
        omega_max: hz(100.0),
        duration: 60.0,
        amplitude: 1.0,
        sample_rate: 1000.0,
    };
    for t in [0.0, 15.0, 30.0, 45.0, 60.0] {
        println!(
            "f({t:>4} s) = {:.6} Hz",
            spec.instantaneous_frequency(t)? / (2.0 * PI)
        );
    }

    let mut drift = 0.0f64;
    let mut last = None;
    for s in ChirpOscillator::new(spec)? {
        drift = drift.max((s.cos * s.cos + s.sin * s.sin - 1.0).abs());
        if s.index % 15_000 == 0 {
            println!("  t = {:>6.3}  x = {:>9.6}", s.t, s.value);
        }
        last = Some(s);
    }
    let last = last.expect("non-empty sweep");
    println!(
        "{} samples, final phase {:.1} rad, max norm drift {drift:.1e}",
        last.index + 1,
        last.phase
    );
    Ok(())
}
