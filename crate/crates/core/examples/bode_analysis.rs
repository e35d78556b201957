//! Four views of the notch filter's frequency response: the continuous
//! model, the exact digital response, a stepped-sine measurement and a
//! chirp measurement, with their deviations from the digital curve.
//!
//! The digital null sits where the bilinear map sends 60 Hz, slightly
//! below it. A chirp window spans several cycles, so it cannot resolve a
//! null that narrow; its deviation is reported outside the notch band.
//!
//! cargo run --release --example bode_analysis

use std::f64::consts::PI;

use tustin::analysis::{
    analytic_response_digital, chirp_bode, compare_responses, continuous_bode, digital_bode,
    log_grid, stepped_sine_bode, FrequencyResponsePoint,
};
use tustin::catalog::{hz, notch};
use tustin::{tustin_horner, ChirpKind, ChirpSpec};

fn main() -> tustin::Result<()> {
    let rate = 1000.0;
    let tf = notch(hz(60.0), 5.0)?;
    let c = tustin_horner(&tf, rate)?;
    let grid = log_grid(1.0, 400.0, 80)?;

    let analog = continuous_bode(&tf, &grid)?;
    let digital = digital_bode(&c, &grid)?;
    let stepped = stepped_sine_bode(&c, &grid, 20, 10)?;
    let chirp = chirp_bode(
        &c,
        &ChirpSpec {
            kind: ChirpKind::Exponential,
            omega_min: hz(0.1),
            omega_max: hz(400.0),
            duration: 100.0,
            amplitude: 1.0,
            sample_rate: rate,
        },
    )?;

    let null_hz = rate * (hz(60.0) / (2.0 * rate)).atan() / PI;
    for f in [null_hz, 60.0] {
        let h = analytic_response_digital(&c, hz(f))?;
        println!(
            "digital response at {f:.3} Hz: {:.1} dB",
            20.0 * h.norm().log10()
        );
    }

    let outside = |curve: &[FrequencyResponsePoint]| -> Vec<FrequencyResponsePoint> {
        curve
            .iter()
            .filter(|p| !(30.0..=120.0).contains(&p.freq_hz))
            .copied()
            .collect()
    };
    let chirp = outside(&chirp);
    for (name, curve) in [
        ("continuous", &analog),
        ("stepped", &stepped),
        ("chirp*", &chirp),
    ] {
        let d = compare_responses(curve, &digital)?;
        println!(
            "{name:>10} vs digital: max {:.3} dB / {:.2} deg, mean {:.4} dB",
            d.max_db, d.max_deg, d.mean_db
        );
    }
    println!("* chirp compared outside 30-120 Hz");
    Ok(())
}
