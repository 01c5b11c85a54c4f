//! Limits of slowly converging partial sums by generalized Richardson extrapolation.

use rug::Float;

/// Solve `a x = b` in place by Gaussian elimination with partial pivoting.
pub(crate) fn solve_dense(mut a: Vec<Vec<Float>>, mut b: Vec<Float>) -> Option<Vec<Float>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].clone().abs().partial_cmp(&a[j][col].clone().abs()).unwrap())?;
        if a[piv][col].is_zero() {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..n {
            let f = Float::with_val(b[r].prec(), &a[r][col] / &a[col][col]);
            if f.is_zero() {
                continue;
            }
            for c in col..n {
                let t = Float::with_val(f.prec(), &f * &a[col][c]);
                a[r][c] -= t;
            }
            let t = Float::with_val(f.prec(), &f * &b[col]);
            b[r] -= t;
        }
    }
    let mut x = vec![Float::new(b[0].prec()); n];
    for r in (0..n).rev() {
        let mut v = b[r].clone();
        for c in r + 1..n {
            v -= Float::with_val(v.prec(), &a[r][c] * &x[c]);
        }
        x[r] = v / &a[r][r];
    }
    Some(x)
}

/// Fits `S(N) = L + Σ_{i=1..I} Σ_{j=0..logs} c_ij ln^j N / N^i` through the given points
/// and returns `L`. The point count fixes `I`.
pub fn extrapolate(points: &[(u64, Float)], logs: usize) -> Option<Float> {
    let prec = points.first()?.1.prec();
    let per = logs + 1;
    let orders = (points.len() - 1) / per;
    let m = 1 + orders * per;
    let pts = &points[points.len() - m..];
    let mut a = Vec::with_capacity(m);
    let mut b = Vec::with_capacity(m);
    for (n, s) in pts {
        let inv = Float::with_val(prec, 1) / *n;
        let ln = Float::with_val(prec, *n).ln();
        let mut row = vec![Float::with_val(prec, 1)];
        let mut p = Float::with_val(prec, 1);
        for _ in 0..orders {
            p *= &inv;
            let mut q = p.clone();
            for _ in 0..per {
                row.push(q.clone());
                q *= &ln;
            }
        }
        a.push(row);
        b.push(s.clone());
    }
    solve_dense(a, b).map(|x| x[0].clone())
}

/// Sampling plan: `count` points `n0, n0+step, ...`.
pub fn sample_points(n0: u64, step: u64, count: usize) -> Vec<u64> {
    (0..count as u64).map(|j| n0 + j * step).collect()
}
