//! Counting formulas for words and sums, and relation ranks from exact linear algebra.
use cyclo::constants::counting::{basis_count_w1, count_table5, Table5Column};
use cyclo::constants::rank::{relation_rank, RankMethod};
use cyclo::sums::{count_table2, Table2Column};
use cyclo::words::witt_count;

fn main() -> cyclo::Result<()> {
    println!("Lyndon words, 5 letters, weight 4: {}", witt_count(5, 4));
    for w in 1..=4 {
        println!("w = {w}: all sums {}", count_table2(w, Table2Column::All)?);
    }
    let row: Vec<u64> = (1..=12).map(basis_count_w1).collect();
    println!("weight-one basis sizes, l = 1..12: {row:?}");
    for l in 1..=4 {
        println!("l = {l}: weight-two basis after A+SH {}", count_table5(l, Table5Column::ASh)?);
    }
    let r = relation_rank(2, 2, RankMethod::Stuffle)?;
    println!("stuffle rank at w=2, l=2: {} sums, rank {}, basis {}", r.sums, r.rank, r.basis);
    Ok(())
}
