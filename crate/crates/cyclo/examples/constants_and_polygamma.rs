//! Infinite sums at N -> ∞, weight-one closed forms and reduction of polygamma values.
use cyclo::constants::{eval::sigma_numeric, polygamma::polygamma_reduce, w1::sigma_w1_closed_form};
use cyclo::constants::special::polygamma;
use rug::Rational;

fn main() -> cyclo::Result<()> {
    let s = sigma_numeric(&"S[{2,1,-1}]".parse()?, 30)?;
    println!("σ_{{2,1,-1}} = {}  (π/4 - 1)", s.to_string_radix(10, Some(30)));

    for m in 1..4 {
        println!("σ_{{4,{m},-1}} = {}", sigma_w1_closed_form(4, m, -1)?);
    }
    println!("ψ'(1/4) = {}", polygamma_reduce(1, 1, 4)?);
    println!("ψ'(1/4) ≈ {}", polygamma(1, &Rational::from((1, 4)), 128)?.to_string_radix(10, Some(30)));
    Ok(())
}
