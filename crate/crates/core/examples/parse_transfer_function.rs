//! Parsing transfer functions from text, and what the errors look like.
//!
//! cargo run --example parse_transfer_function

use tustin::tfparse::{parse_coeff_lists, parse_expression};

fn main() {
    let inputs = [
        "1/(10s + 1)",
        "2 / (s^2 + 2*s + 2)",
        "(s^2 + 142122.30)/(s^2 + 75.398s + 142122.30)",
        "s/(s+1) - 1",
        "1/(s^2 + ",
        "s^2/(s + 1)",
    ];
    for text in inputs {
        match parse_expression(text) {
            Ok(tf) => println!("{text:<48} -> {tf} (order {})", tf.order()),
            Err(e) => println!("{text:<48} -> error: {e}"),
        }
    }
    match parse_coeff_lists("1", "10, 1") {
        Ok(tf) => println!("{:<48} -> {tf}", "num 1, den 10,1"),
        Err(e) => println!("error: {e}"),
    }
}
