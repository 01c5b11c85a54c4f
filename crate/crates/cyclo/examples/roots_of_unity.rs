//! Polylogarithms at roots of unity and generalized sums with root-valued arguments.
use cyclo::constants::roots::{li_root, sigma11, RootOfUnity};

fn main() -> cyclo::Result<()> {
    for (l, k) in [(2, 1), (3, 1), (4, 1), (6, 1)] {
        let v = li_root(2, l, k, 30)?;
        println!("Li_2(e_{l}^{k}): Re = {}   Im = {}", v.re, v.im);
    }
    let x = RootOfUnity::new(1, 4);
    let y = RootOfUnity::new(-1, 4);
    let s = sigma11(&x, &y, 30)?;
    println!("σ_{{1,1}}({x}, {y}) = {:.20} + {:.20} i", s.re.to_f64(), s.im.to_f64());
    Ok(())
}
