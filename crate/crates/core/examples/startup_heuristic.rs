//! The first-tick history fill. A Butterworth low-pass fed a constant 5
//! with and without filling the histories from the first input.
//!
//! cargo run --example startup_heuristic

use tustin::catalog::{butterworth2, hz};
use tustin::{tustin_horner, Filter};

fn main() -> tustin::Result<()> {
    let c = tustin_horner(&butterworth2(hz(10.0))?, 1000.0)?;
    let mut warm = Filter::new(c.clone());
    let mut cold = Filter::new(c).with_startup_fill(false);

    println!("{:>5} {:>12} {:>12}", "tick", "filled", "zeroed");
    for k in 0..200 {
        let (a, b) = (warm.tick(5.0)?, cold.tick(5.0)?);
        if k < 5 || k % 40 == 0 {
            println!("{k:>5} {a:>12.6} {b:>12.6}");
        }
    }
    Ok(())
}
