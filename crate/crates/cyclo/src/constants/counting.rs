//! Basis counts: weight one by cyclotomy, weight two by relation set, and the motivic bound.

use crate::cyclopoly::{factorize, totient};
use crate::{Error, Result};
use rug::{Integer, Rational};
use std::str::FromStr;

/// Table rows `l = 1..20` at weight one: number of sums, basis, new basis.
pub const TABLE4_SUMS: [u64; 20] = [2, 4, 6, 8, 10, 12, 14, 16, 18, 20, 22, 24, 26, 28, 30, 32, 34, 36, 38, 40];
pub const TABLE4_BASIS: [u64; 20] = [2, 3, 4, 5, 6, 6, 8, 9, 8, 10, 12, 10, 14, 14, 11, 17, 18, 14, 20, 18];
pub const TABLE4_NEW_BASIS: [u64; 20] = [2, 1, 2, 2, 4, 1, 6, 4, 4, 3, 10, 2, 12, 5, 3, 8, 16, 4, 18, 6];

/// Every way of reading `l` in the piecewise weight-one count; all must agree.
fn w1_cases(l: u64) -> Vec<u64> {
    if l == 1 || l.is_power_of_two() {
        return vec![l + 1];
    }
    let f = factorize(l);
    let two = f.iter().find(|(p, _)| *p == 2).map(|x| x.1).unwrap_or(0);
    let odd: Vec<(u64, u32)> = f.iter().copied().filter(|(p, _)| *p != 2).collect();
    if two == 0 && odd.len() == 1 {
        let (p, k) = odd[0];
        return vec![(p - 1) * p.pow(k - 1) + 2];
    }
    if two > 0 {
        // 2^k Π p_i^{k_i}: 2 φ(2^{k-1} Π) - n - 1
        let n = odd.len() as u64;
        return vec![2 * basis_count_w1(l / 2) - n - 1];
    }
    // odd with at least two distinct primes: single out any q
    let mut out = Vec::new();
    for &(q, k) in &odd {
        let n = odd.len() as u64 - 1;
        let rest = l / q;
        if k == 1 {
            // (q-1) φ(Π) - n(q-2) - q + 3
            out.push(((q - 1) * basis_count_w1(rest) + 3).checked_sub(n * (q - 2) + q).expect("positive count"));
        } else {
            // q φ(q^{k-1} Π) - (n+2)(q-1)
            out.push(q * basis_count_w1(rest) - (n + 2) * (q - 1));
        }
    }
    out
}

/// Number of weight-one basis elements at cyclotomy `l`, by the piecewise recursion over the
/// factorization of `l`.
pub fn basis_count_w1(l: u64) -> u64 {
    assert!(l >= 1, "cyclotomy starts at 1");
    let c = w1_cases(l);
    // prefer a prime with exponent one, as the case split lists it first
    let f = factorize(l);
    if l % 2 == 1 && f.len() > 1 {
        if let Some(i) = f.iter().position(|(_, k)| *k == 1) {
            return c[i];
        }
    }
    c[0]
}

/// All readings of the recursion for `l`, for consistency checks.
pub fn basis_count_w1_all_readings(l: u64) -> Vec<u64> {
    w1_cases(l)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Table5Column {
    /// number of sums
    NS,
    SH,
    A,
    ASh,
    AShH1,
    AShH1H2,
    /// with the multiple-argument relations `M`; no counting formula
    AShH1H2M,
}

impl Table5Column {
    pub const ALL: [Table5Column; 7] = [
        Table5Column::NS,
        Table5Column::SH,
        Table5Column::A,
        Table5Column::ASh,
        Table5Column::AShH1,
        Table5Column::AShH1H2,
        Table5Column::AShH1H2M,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            Table5Column::NS => "NS",
            Table5Column::SH => "SH",
            Table5Column::A => "A",
            Table5Column::ASh => "A+SH",
            Table5Column::AShH1 => "A+SH+H1",
            Table5Column::AShH1H2 => "A+SH+H1+H2",
            Table5Column::AShH1H2M => "A+SH+H1+H2+M",
        }
    }

    fn index(&self) -> usize {
        Table5Column::ALL.iter().position(|c| c == self).unwrap()
    }
}

impl FromStr for Table5Column {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let norm = s.replace(' ', "").to_ascii_uppercase();
        Table5Column::ALL
            .iter()
            .copied()
            .find(|c| c.label() == norm)
            .ok_or_else(|| Error::Parse(format!("unknown relation set {s:?}")))
    }
}

/// Printed weight-two counts, `l = 1..20`, columns in [`Table5Column::ALL`] order.
pub const TABLE5: [[u64; 7]; 20] = [
    [6, 4, 3, 1, 1, 1, 1],
    [20, 13, 10, 3, 3, 2, 1],
    [42, 27, 21, 7, 6, 6, 5],
    [72, 46, 36, 12, 11, 10, 3],
    [110, 70, 55, 19, 17, 17, 16],
    [156, 99, 78, 27, 25, 24, 5],
    [210, 133, 105, 37, 34, 34, 33],
    [272, 172, 136, 48, 45, 44, 12],
    [342, 216, 171, 61, 57, 57, 52],
    [420, 265, 210, 75, 71, 70, 22],
    [506, 319, 253, 91, 86, 86, 85],
    [600, 378, 300, 108, 103, 102, 21],
    [702, 442, 351, 127, 121, 121, 120],
    [812, 551, 406, 147, 141, 140, 49],
    [930, 585, 465, 169, 162, 162, 145],
    [1056, 664, 528, 192, 185, 184, 50],
    [1190, 748, 595, 217, 209, 209, 208],
    [1332, 837, 666, 243, 235, 234, 63],
    [1482, 931, 741, 271, 262, 262, 261],
    [1640, 1030, 820, 300, 291, 290, 74],
];

pub fn table5_printed(l: u64, col: Table5Column) -> Option<u64> {
    TABLE5.get((l as usize).checked_sub(1)?).map(|r| r[col.index()])
}

fn alt(l: u64) -> i64 {
    if l.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn exact(q: Rational) -> Integer {
    assert!(q.denom() == &1, "count formula gave a non-integer");
    q.numer().clone()
}

/// Weight-two basis counts from the closed formulas. `A+SH+H1` uses `+(-1)^l`; the `+M`
/// column has no formula.
pub fn count_table5(l: u64, col: Table5Column) -> Result<Integer> {
    if l == 0 {
        return Err(Error::Domain("cyclotomy starts at 1".into()));
    }
    let li = l as i64;
    Ok(match col {
        Table5Column::NS => Integer::from(2 * li * (2 * li + 1)),
        Table5Column::A => Integer::from(li * (2 * li + 1)),
        Table5Column::SH => exact(Rational::from(((5 * li + 3) * li, 2))),
        Table5Column::ASh => exact(Rational::from((6 * li * li + 1 - alt(l), 8))),
        Table5Column::AShH1 => exact(Rational::from((6 * li * li - 4 * li + 7 + alt(l), 8))),
        Table5Column::AShH1H2 => exact(broad(l)),
        Table5Column::AShH1H2M => {
            return Err(Error::Unsupported("no counting formula for the +M column".into()))
        }
    })
}

/// `A+SH+H1` with `-(-1)^l`, as printed; not an integer.
pub fn n_ash_h1_printed(l: u64) -> Rational {
    let li = l as i64;
    Rational::from((6 * li * li - 4 * li + 7 - alt(l), 8))
}

/// `(6l² - 4l + 3(1 - (-1)^l))/8`
pub fn broad(l: u64) -> Rational {
    let li = l as i64;
    Rational::from((6 * li * li - 4 * li + 3 * (1 - alt(l)), 8))
}

/// `3/4 l² - l/2 + (1 if l even, 3/4 if l odd)`
pub fn db1(l: u64) -> Rational {
    let li = Rational::from(l);
    let off = if l.is_multiple_of(2) { Rational::from(1) } else { Rational::from((3, 4)) };
    Rational::from((3, 4)) * Rational::from(&li * &li) - li / 2u32 + off
}

/// Taylor coefficients `a(0..n)` of `[1 + x³/(1+x)]/(1-x)³ = (1 + x + x³)/((1+x)(1-x)³)`.
pub fn db2_coefficients(n: usize) -> Vec<Integer> {
    let num = [1i64, 1, 0, 1];
    // (1+x)(1-x)^3 = 1 - 2x + 2x^3 - x^4
    let den = [1i64, -2, 0, 2, -1];
    let mut a: Vec<Integer> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut v = Integer::from(*num.get(i).unwrap_or(&0));
        for j in 1..den.len().min(i + 1) {
            v -= Integer::from(den[j]) * &a[i - j];
        }
        a.push(v);
    }
    a
}

/// `n`-th Taylor coefficient of `G_1 = 1/(1-x²-x³)`, `G_2 = 1/(1-x-x²)`, and for `k >= 3`
/// `G_k = 1/(1 - (φ(k)+ν)/2 x - (ν-1) x²)` with `ν` the number of distinct primes of `k`.
/// The `k >= 3` coefficients are rational in general (`k = 3` gives `3/2` at `n = 1`).
pub fn motivic_dim(k: u64, n: usize) -> Result<Rational> {
    if k == 0 {
        return Err(Error::Domain("G_k needs k >= 1".into()));
    }
    let (c1, c2, c3) = match k {
        1 => (Rational::new(), Rational::from(1), Rational::from(1)),
        2 => (Rational::from(1), Rational::from(1), Rational::new()),
        _ => {
            let nu = factorize(k).len() as u64;
            (Rational::from((totient(k) + nu, 2)), Rational::from(nu as i64 - 1), Rational::new())
        }
    };
    let mut d: Vec<Rational> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut v = if i == 0 { Rational::from(1) } else { Rational::new() };
        if i >= 1 {
            v += Rational::from(&c1 * &d[i - 1]);
        }
        if i >= 2 {
            v += Rational::from(&c2 * &d[i - 2]);
        }
        if i >= 3 {
            v += Rational::from(&c3 * &d[i - 3]);
        }
        d.push(v);
    }
    Ok(d.swap_remove(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_one_row() {
        let got: Vec<u64> = (1..=20).map(basis_count_w1).collect();
        assert_eq!(got, TABLE4_BASIS);
        for l in 1..=20u64 {
            assert_eq!(TABLE4_SUMS[l as usize - 1], 2 * l);
        }
    }

    #[test]
    fn readings_agree() {
        for l in 1..=700u64 {
            let r = basis_count_w1_all_readings(l);
            assert!(r.windows(2).all(|w| w[0] == w[1]), "l={l}: {r:?}");
        }
    }

    #[test]
    fn weight_two_columns() {
        let mut mismatches = Vec::new();
        for l in 1..=20u64 {
            for col in &Table5Column::ALL[..6] {
                let f = count_table5(l, *col).unwrap();
                if f != table5_printed(l, *col).unwrap() {
                    mismatches.push((l, col.label(), f));
                }
            }
        }
        assert_eq!(mismatches, vec![(14, "SH", Integer::from(511))]);
        assert!(count_table5(3, Table5Column::AShH1H2M).is_err());
    }

    #[test]
    fn generating_function_formulas() {
        let a = db2_coefficients(40);
        for l in 1..=40u64 {
            assert_eq!(Rational::from(a[l as usize - 1].clone()), db1(l));
            assert_eq!(db1(l), Rational::from(count_table5(l, Table5Column::AShH1).unwrap()));
            let d = db1(l) - broad(l);
            assert_eq!(d, if l % 2 == 0 { 1 } else { 0 });
        }
        assert!(n_ash_h1_printed(1).denom() != &1);
    }

    #[test]
    fn motivic_series() {
        let fib: Vec<Rational> = (0..6).map(|n| motivic_dim(2, n).unwrap()).collect();
        assert_eq!(fib, [1, 1, 2, 3, 5, 8].map(Rational::from));
        assert_eq!(motivic_dim(6, 2).unwrap(), 5);
        // 1/(1-x²-x³): 1,0,1,1,1,2,2
        assert_eq!(motivic_dim(1, 6).unwrap(), 2);
    }
}
