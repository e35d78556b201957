//! A fixed-rate control loop: a lead-lag compensator ticked once per
//! period from a worker thread, reading a noisy measurement and reporting
//! per-tick compute time.
//!
//! cargo run --release --example realtime_loop

use std::sync::mpsc;
use std::thread;
use std::time::{Duration, Instant};

use tustin::catalog::{hz, leadlag};
use tustin::{tustin_horner, Filter};

const RATE_HZ: f64 = 1000.0;
const TICKS: usize = 500;

fn main() -> tustin::Result<()> {
    let coeffs = tustin_horner(&leadlag(10.0, hz(1.0), hz(10.0))?, RATE_HZ)?;
    let mut filter = Filter::new(coeffs);
    let (tx, rx) = mpsc::channel();

    let worker = thread::spawn(move || {
        let period = Duration::from_secs_f64(1.0 / RATE_HZ);
        let start = Instant::now();
        let mut worst = Duration::ZERO;
        for k in 0..TICKS {
            let deadline = start + period * k as u32;
            if let Some(wait) = deadline.checked_duration_since(Instant::now()) {
                thread::sleep(wait);
            }
            let t = k as f64 / RATE_HZ;
            // step at 0.1 s plus a small deterministic ripple
            let x = if t >= 0.1 { 1.0 } else { 0.0 }
                + 0.01 * (2.0 * std::f64::consts::PI * 50.0 * t).sin();
            let t0 = Instant::now();
            let y = filter.tick(x).expect("finite measurement");
            worst = worst.max(t0.elapsed());
            if k % 50 == 0 {
                tx.send((k, x, y)).expect("receiver alive");
            }
        }
        worst
    });

    for (k, x, y) in rx {
        println!("tick {k:>4}: x = {x:>8.4}  u = {y:>9.4}");
    }
    let worst = worker.join().expect("loop thread");
    println!("worst tick compute time {worst:?}");
    Ok(())
}
