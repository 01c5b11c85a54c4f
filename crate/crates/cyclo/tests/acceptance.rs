//! One PASS/FAIL line per acceptance criterion. Failing criteria are reported, not fatal:
//! several are known conflicts with printed values, analysed in the decisions notes.

use cyclo::verify::{run_criterion, CRITERIA};

fn main() {
    let mut passed = 0;
    for (id, ..) in CRITERIA {
        let o = run_criterion(id).expect("listed criterion");
        passed += o.pass as usize;
        println!("{}", o.line());
    }
    println!("{passed}/{} criteria pass", CRITERIA.len());
}
