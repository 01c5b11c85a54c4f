//! Two constants of Ramanujan's, from closed forms and from their defining sums.
use cyclo::constants::ramanujan::{g1_expr, g1_from_sum, h1_expr, ramanujan_values};

fn main() -> cyclo::Result<()> {
    let (g, h) = ramanujan_values(30)?;
    println!("G(1) = {}\n     = {}", g1_expr(), g.to_string_radix(10, Some(25)));
    println!("H(1) = {}\n     = {}", h1_expr(), h.to_string_radix(10, Some(25)));
    println!("G(1) by summation: {}", g1_from_sum(30)?.to_string_radix(10, Some(25)));
    Ok(())
}
