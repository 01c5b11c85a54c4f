//! Words over the cyclotomic alphabet, their shuffle algebra and Lyndon bases.

use crate::cyclopoly::{divisors, moebius, Letter};
use crate::lincomb::LinComb;
use crate::Error;
use rug::ops::Pow;
use rug::{Integer, Rational};
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

/// `C_{k_1..k_m}^{l_1..l_m}`; the first letter is the outermost integration.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn zeros(m: usize) -> Self {
        Word(vec![Letter::zero(); m])
    }

    pub fn weight(&self) -> usize {
        self.0.len()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn trailing_zeros(&self) -> usize {
        self.0.iter().rev().take_while(|l| l.k == 0).count()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w[")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}:{}", l.k, l.l)?;
        }
        write!(f, "]")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let inner = s
            .strip_prefix("w[")
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected w[k:l,...], got {s:?}")))?;
        if inner.trim().is_empty() {
            return Ok(Word::empty());
        }
        let mut letters = Vec::new();
        for part in inner.split(',') {
            let (k, l) = part
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("bad letter {part:?}")))?;
            let k: u32 = k.trim().parse().map_err(|_| Error::Parse(format!("bad k in {part:?}")))?;
            let l: u32 = l.trim().parse().map_err(|_| Error::Parse(format!("bad l in {part:?}")))?;
            letters.push(Letter::new(k, l)?);
        }
        Ok(Word(letters))
    }
}

/// All order-preserving interleavings, with multiplicity.
pub fn shuffle(w1: &Word, w2: &Word) -> LinComb<Word> {
    let mut memo = HashMap::new();
    let raw = shuffle_rec(&w1.0, &w2.0, &mut memo);
    raw.into_iter().map(|(w, c)| (Word(w), Rational::from(c))).collect()
}

type ShuffleMemo = HashMap<(usize, usize), Vec<(Vec<Letter>, Integer)>>;

fn shuffle_rec(a: &[Letter], b: &[Letter], memo: &mut ShuffleMemo) -> Vec<(Vec<Letter>, Integer)> {
    if a.is_empty() || b.is_empty() {
        let w = if a.is_empty() { b.to_vec() } else { a.to_vec() };
        return vec![(w, Integer::from(1))];
    }
    let key = (a.len(), b.len());
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let mut acc: HashMap<Vec<Letter>, Integer> = HashMap::new();
    for (rest, c) in shuffle_rec(&a[1..], b, memo) {
        let mut w = vec![a[0]];
        w.extend(rest);
        *acc.entry(w).or_default() += c;
    }
    for (rest, c) in shuffle_rec(a, &b[1..], memo) {
        let mut w = vec![b[0]];
        w.extend(rest);
        *acc.entry(w).or_default() += c;
    }
    let out: Vec<_> = acc.into_iter().collect();
    memo.insert(key, out.clone());
    out
}

/// Bilinear extension of [`shuffle`].
pub fn shuffle_lc(x: &LinComb<Word>, y: &LinComb<Word>) -> LinComb<Word> {
    let mut out = LinComb::new();
    for (w1, c1) in x.iter() {
        for (w2, c2) in y.iter() {
            out.add_scaled(&shuffle(w1, w2), &Rational::from(c1 * c2));
        }
    }
    out
}

/// `w ⧢ 0^m`, i.e. the word combination of `ln^m(x)/m! · C_w(x)`.
pub fn log_power_shuffle(w: &Word, m: usize) -> LinComb<Word> {
    shuffle(w, &Word::zeros(m))
}

/// Rewrites `C_w` as `Σ c · C_u(x) · ln^k(x)` with every `u` free of trailing zeros.
pub fn extract_log_powers(w: &Word) -> LinComb<(Word, usize)> {
    let m = w.trailing_zeros();
    if m == 0 {
        return LinComb::single((w.clone(), 0));
    }
    if m == w.weight() {
        let mut f = Integer::from(1);
        for i in 2..=m {
            f *= i as u32;
        }
        return LinComb::term((Word::empty(), m), Rational::from((1, f)));
    }
    // C_0 · C_{w'} = m C_w + (words with fewer trailing zeros)
    let shorter = Word(w.0[..w.0.len() - 1].to_vec());
    let mut rest = shuffle(&shorter, &Word::zeros(1));
    rest.add_term(w.clone(), Rational::from(-(m as i64)));
    let mut out = LinComb::new();
    for ((u, k), c) in extract_log_powers(&shorter).iter() {
        out.add_term((u.clone(), k + 1), c.clone());
    }
    for (v, c) in rest.iter() {
        out.add_scaled(&extract_log_powers(v), &Rational::from(-c));
    }
    out.scaled(&Rational::from((1, m as u64)))
}

/// Number of Lyndon words of length `w` over `m` letters.
pub fn witt_count(m: u64, w: u64) -> Integer {
    let mut acc = Integer::new();
    for d in divisors(w) {
        acc += Integer::from(m).pow(d as u32) * moebius(w / d);
    }
    acc / w
}

/// Lyndon words of length `n` over the ordered alphabet, by Duval's algorithm.
pub fn lyndon_basis(alphabet: &[Letter], n: usize) -> Result<Vec<Word>, Error> {
    if alphabet.is_empty() {
        return Err(Error::Domain("empty alphabet".into()));
    }
    let mut sorted = alphabet.to_vec();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != alphabet.len() {
        return Err(Error::Domain("alphabet letters must be distinct".into()));
    }
    Ok(lyndon_indices(sorted.len(), n)
        .into_iter()
        .map(|idx| Word(idx.into_iter().map(|i| sorted[i]).collect()))
        .collect())
}

/// Lyndon words of length exactly `n` as index sequences over `0..k`.
pub fn lyndon_indices(k: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if n == 0 || k == 0 {
        return out;
    }
    let mut w: Vec<usize> = vec![0];
    loop {
        if w.len() == n {
            out.push(w.clone());
        }
        let m = w.len();
        while w.len() < n {
            let c = w[w.len() - m];
            w.push(c);
        }
        while w.last() == Some(&(k - 1)) {
            w.pop();
        }
        match w.last_mut() {
            Some(last) => *last += 1,
            None => break,
        }
    }
    out
}

/// Default letter order: (k,l) lexicographic, so `f_0^0` is smallest.
pub fn parse_letters(spec: &str) -> Result<Vec<Letter>, Error> {
    spec.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|part| {
            let (k, l) = part.split_once(':').unwrap_or((part, "0"));
            let k = k.trim().parse().map_err(|_| Error::Parse(format!("bad letter {part:?}")))?;
            let l = l.trim().parse().map_err(|_| Error::Parse(format!("bad letter {part:?}")))?;
            Letter::new(k, l)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn parse_roundtrip() {
        let x = w("w[0:0,4:0]");
        assert_eq!(x.to_string(), "w[0:0,4:0]");
        assert!("w[4:2]".parse::<Word>().is_err());
        assert!("[1:0]".parse::<Word>().is_err());
    }

    #[test]
    fn small_shuffles() {
        let ab = shuffle(&w("w[1:0]"), &w("w[2:0]"));
        assert_eq!(ab.len(), 2);
        assert_eq!(ab.coeff(&w("w[1:0,2:0]")), 1);
        let zz = shuffle(&w("w[0:0]"), &w("w[0:0]"));
        assert_eq!(zz, LinComb::term(w("w[0:0,0:0]"), Rational::from(2)));
        let lp = log_power_shuffle(&w("w[4:0]"), 1);
        assert_eq!(lp.coeff(&w("w[0:0,4:0]")), 1);
        assert_eq!(lp.coeff(&w("w[4:0,0:0]")), 1);
        assert_eq!(log_power_shuffle(&w("w[4:0]"), 0), LinComb::single(w("w[4:0]")));
        // C_{4,0} = ln(x) C_4 - C_{0,4}
        let e = extract_log_powers(&w("w[4:0,0:0]"));
        assert_eq!(e.coeff(&(w("w[4:0]"), 1)), 1);
        assert_eq!(e.coeff(&(w("w[0:0,4:0]"), 0)), -1);
        assert_eq!(e.len(), 2);
    }

    #[test]
    fn witt_and_lyndon() {
        assert_eq!(witt_count(2, 3), 2);
        assert_eq!(witt_count(8, 8), 2096640);
        assert_eq!(witt_count(1, 1), 1);
        let ab = [Letter::zero(), Letter { k: 1, l: 0 }];
        assert_eq!(lyndon_basis(&ab, 2).unwrap(), vec![w("w[0:0,1:0]")]);
        assert_eq!(lyndon_basis(&ab, 3).unwrap(), vec![w("w[0:0,0:0,1:0]"), w("w[0:0,1:0,1:0]")]);
        assert_eq!(lyndon_indices(5, 4).len(), 150);
    }
}
