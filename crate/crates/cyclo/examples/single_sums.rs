//! Single cyclotomic sums rewritten in terms of harmonic sums and φ functions.
use cyclo::sums::single::{direct, single_sum_representation, Evaluator};

fn main() -> cyclo::Result<()> {
    let s = single_sum_representation(4, 1, 1, -1)?;
    println!("{s}");
    let mut ev = Evaluator::new(20, 30);
    for n in [3, 10, 20] {
        let v = ev.eval(&s, n)?;
        println!("N = {n}: representation {:.20}  direct {:.20}", v.to_f64(), direct(4, 1, 1, -1, n).to_f64());
    }
    Ok(())
}
