//! The φ_k(l, N) integrals: exact recurrences and their large-N expansions.
use cyclo::numerics::asymptotic::{derived_coefficients, listed_pairs, phi_asymptotic};
use cyclo::numerics::phi::{phi, phi_sequence};

fn main() -> cyclo::Result<()> {
    for n in [1, 5, 20] {
        println!("φ_4(1, {n}) = {}", phi(4, 1, n, 30, false)?.to_string_radix(10, Some(25)));
    }
    println!("expansion coefficients of φ_4(1,N): {:?}", derived_coefficients(4, 1, 6)?);
    let (k, l) = listed_pairs()[0];
    let exact = phi_sequence(k, l, 500, 30, k == 1)?.pop().expect("nonempty");
    let approx = phi_asymptotic(k, l, 500, 12, 30)?;
    println!("φ_{k}({l}, N):");
    println!("N = 500: recurrence {}  expansion {}", exact.to_string_radix(10, Some(25)), approx.to_string_radix(10, Some(25)));
    Ok(())
}
