//! Sums as Mellin transforms of polylogarithms, the inverse map and derivatives in N.
use cyclo::sums::mellin::{differentiate, eval_mellin, mellin_to_sum, sum_to_mellin, SumExpr};
use cyclo::SumIndex;

fn main() -> cyclo::Result<()> {
    let idx: SumIndex = "S[{2,1,-1},{1,0,1}]".parse()?;
    let m = sum_to_mellin(&idx)?;
    println!("{idx}(N) = {m}");
    for n in [3, 8] {
        let a = eval_mellin(&m, n, 30)?;
        let b = SumExpr::from_index(&idx).eval(n, 30)?;
        println!("N = {n}: Mellin side {:.20}  sum {:.20}", a.to_f64(), b.to_f64());
    }
    println!("inverse: {}", mellin_to_sum(&m)?);

    let (_, d) = differentiate(&"S[{1,0,1}]".parse()?, 1)?;
    println!("d/dN S_1(N) = {d}");
    Ok(())
}
