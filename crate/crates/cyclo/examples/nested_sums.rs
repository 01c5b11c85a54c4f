//! Cyclotomic harmonic sums and their quasi-shuffle, synchronization and duplication relations.
use cyclo::sums::{duplicate_h1, eval_sum_definition, stuffle, synchronize};
use cyclo::SumIndex;

fn main() -> cyclo::Result<()> {
    let x: SumIndex = "S[{2,1,-1}]".parse()?;
    let y: SumIndex = "S[{1,0,1}]".parse()?;
    println!("{x}(10) = {}", eval_sum_definition(&x, 10)?);

    let p = stuffle(&x, &y);
    println!("{x} * {y} = {p}");

    let s = synchronize(&x, 2)?;
    println!("synchronization k=2 holds at N=7: {}", s.check(7)?);
    let d = duplicate_h1(&y)?;
    println!("duplication holds at N=9: {}", d.check(9)?);
    println!("{}", serde_json::to_string(&d.to_json()).expect("json"));
    Ok(())
}
