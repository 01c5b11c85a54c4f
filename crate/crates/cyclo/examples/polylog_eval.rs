//! Cyclotomic polylogarithms: series against quadrature, and values at x = 1.
use cyclo::constants::hpl_one::hpl_at_one;
use cyclo::numerics::quad::eval_hpl_quadrature;
use cyclo::numerics::series::eval_hpl_series;
use cyclo::Word;
use rug::Float;

fn main() -> cyclo::Result<()> {
    let x = Float::with_val(128, Float::parse("0.3").expect("literal"));
    for spec in ["w[1:0]", "w[4:0,0:0]", "w[4:1,1:0]"] {
        let w: Word = spec.parse()?;
        let s = eval_hpl_series(&w, &x, 30)?;
        let q = eval_hpl_quadrature(&w, &x, 30)?;
        println!("H_{w}(0.3): series {:.25}  quadrature {:.25}", s.to_f64(), q.to_f64());
    }
    // the weight-two value at 1 is, up to sign, Catalan's constant
    let c = hpl_at_one(&"w[0:0,4:0]".parse()?, 30)?;
    println!("H_w[0:0,4:0](1) = {}", c.to_string_radix(10, Some(30)));
    Ok(())
}
