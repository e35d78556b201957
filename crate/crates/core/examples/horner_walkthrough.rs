//! Step-by-step Horner discretization of 1/(10s + 1) at 0.1 Hz, printing
//! every intermediate polynomial, then the same filter by direct
//! substitution for comparison.
//!
//! cargo run --example horner_walkthrough

use tustin::discretize::horner_stages;
use tustin::{tustin_direct, tustin_horner, ContinuousTransferFunction, Polynomial};

fn show(label: &str, p: &Polynomial) {
    println!("  {label:<22} {p}");
}

fn main() -> tustin::Result<()> {
    let tf = ContinuousTransferFunction::new(&[1.0], &[10.0, 1.0])?;
    let rate = 0.1;
    println!("H(s) = {tf}, loop rate {rate} Hz\n");

    for (name, p) in [
        ("numerator", tf.numerator()),
        ("denominator", tf.denominator()),
    ] {
        let st = horner_stages(p, tf.order(), rate)?;
        println!("{name}:");
        show("s -> 2 f_l / x", &st.substituted);
        show("x -> x + 1", &st.shifted);
        show("x -> 1/x", &st.reciprocal);
        show("x -> x/2", &st.scaled);
        show("x -> x - 1, as F[z]", &st.z_domain);
    }

    let c = tustin_horner(&tf, rate)?;
    println!("\na_hat = {:?}\nb_hat = {:?}", c.a_hat(), c.b_hat());

    let d = tustin_direct(&tf, rate)?;
    println!(
        "direct substitution agrees: {}",
        c.a_hat() == d.a_hat() && c.b_hat() == d.b_hat()
    );
    Ok(())
}
