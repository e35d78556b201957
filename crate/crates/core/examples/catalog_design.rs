//! Discretizes every reference filter at 1000 Hz and prints its
//! coefficients in 5-significant-figure notation together with the
//! z-plane pole radii.
//!
//! cargo run --example catalog_design

use tustin::catalog::reference_filters;
use tustin::io::format_coefficient_list;
use tustin::tustin_horner;

fn main() -> tustin::Result<()> {
    let rate = 1000.0;
    for entry in reference_filters() {
        let c = tustin_horner(&entry.transfer_function, rate)?;
        println!("{} : H(s) = {}", entry.name, entry.transfer_function);
        println!("  a_hat      = {}", format_coefficient_list(c.a_hat()));
        println!("  b_hat      = {}", format_coefficient_list(c.b_hat()));
        println!(
            "  pole radii = {}",
            format_coefficient_list(&c.pole_radii())
        );
    }
    Ok(())
}
