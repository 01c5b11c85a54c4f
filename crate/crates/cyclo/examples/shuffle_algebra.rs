//! Shuffle products of letter words and Lyndon bases.
use cyclo::words::{lyndon_basis, shuffle, witt_count};
use cyclo::{Letter, Word};

fn main() -> cyclo::Result<()> {
    let a: Word = "w[1:0,0:0]".parse()?;
    let b: Word = "w[4:1]".parse()?;
    println!("{a} ш {b} = {}", shuffle(&a, &b));

    let alphabet = [Letter::new(0, 0)?, Letter::new(1, 0)?, Letter::new(4, 0)?];
    for n in 1..=4 {
        let basis = lyndon_basis(&alphabet, n)?;
        println!("weight {n}: {} Lyndon words (Witt count {})", basis.len(), witt_count(3, n as u64));
        if n <= 2 {
            for w in &basis {
                println!("  {w}");
            }
        }
    }
    Ok(())
}
