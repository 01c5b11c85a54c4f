//! Dense Gaussian elimination over the rationals.

use rug::Rational;

/// Rank of a rational matrix given as rows.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    echelon(&mut m).len()
}

/// Reduces `m` in place to reduced row echelon form; returns pivot columns.
pub fn echelon(m: &mut [Vec<Rational>]) -> Vec<usize> {
    let ncols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rational::from(1) / &m[r][col];
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        let (head, tail) = m.split_at_mut(r + 1);
        let (above, pivot_row) = head.split_at_mut(r);
        let prow = &pivot_row[0];
        for row in above.iter_mut() {
            eliminate(row, prow, col);
        }
        for row in tail.iter_mut() {
            eliminate(row, prow, col);
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

fn eliminate(row: &mut [Rational], prow: &[Rational], col: usize) {
    if row[col] == 0 {
        return;
    }
    let f = row[col].clone();
    for (v, p) in row.iter_mut().zip(prow) {
        if *p != 0 {
            *v -= Rational::from(&f * p);
        }
    }
}

/// Solves the square or overdetermined system `a x = b`; `None` if singular or inconsistent.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.first()?.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, v)| {
            let mut r = row.clone();
            r.push(v.clone());
            r
        })
        .collect();
    let pivots = echelon(&mut m);
    if pivots.len() != n || pivots.contains(&n) {
        return None;
    }
    Some((0..n).map(|i| m[i][n].clone()).collect())
}
