//! Cyclotomic polynomials, factorizations of x^l ± 1 and partial fractions.
use cyclo::cyclopoly::{cyclotomic, factor_xn_minus_1, factor_xn_plus_1, partial_fraction_inverse, recombine};

fn main() -> cyclo::Result<()> {
    for k in [1, 2, 3, 4, 6, 12, 105] {
        println!("Φ_{k}(x) = {}", cyclotomic(k)?);
    }
    println!("x^12 - 1 = Π Φ_k, k in {:?}", factor_xn_minus_1(12));
    println!("x^12 + 1 = Π Φ_k, k in {:?}", factor_xn_plus_1(12));

    let lc = partial_fraction_inverse(1, 6)?;
    println!("1/(x^6+1) = {lc}");
    let (num, den) = recombine(&lc);
    println!("recombined: numerator {num:?} over {den}");
    Ok(())
}
