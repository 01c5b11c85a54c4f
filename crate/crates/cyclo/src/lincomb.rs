use rug::Rational;
use std::collections::BTreeMap;
use std::fmt;

/// Finite formal sum with exact rational coefficients. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinComb<T: Ord> {
    terms: BTreeMap<T, Rational>,
}

impl<T: Ord> Default for LinComb<T> {
    fn default() -> Self {
        LinComb { terms: BTreeMap::new() }
    }
}

impl<T: Ord + Clone> LinComb<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(t: T) -> Self {
        Self::term(t, Rational::from(1))
    }

    pub fn term(t: T, c: Rational) -> Self {
        let mut lc = Self::new();
        lc.add_term(t, c);
        lc
    }

    pub fn add_term(&mut self, t: T, c: Rational) {
        if c == 0 {
            return;
        }
        match self.terms.get_mut(&t) {
            Some(v) => {
                *v += c;
                if *v == 0 {
                    self.terms.remove(&t);
                }
            }
            None => {
                self.terms.insert(t, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &LinComb<T>, c: &Rational) {
        for (t, v) in &other.terms {
            self.add_term(t.clone(), Rational::from(v * c));
        }
    }

    pub fn add(&mut self, other: &LinComb<T>) {
        self.add_scaled(other, &Rational::from(1));
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        let mut out = Self::new();
        out.add_scaled(self, c);
        out
    }

    pub fn coeff(&self, t: &T) -> Rational {
        self.terms.get(t).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&T, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn map_keys<U: Ord + Clone>(&self, mut f: impl FnMut(&T) -> U) -> LinComb<U> {
        let mut out = LinComb::new();
        for (t, c) in &self.terms {
            out.add_term(f(t), c.clone());
        }
        out
    }
}

impl<T: Ord + Clone> FromIterator<(T, Rational)> for LinComb<T> {
    fn from_iter<I: IntoIterator<Item = (T, Rational)>>(iter: I) -> Self {
        let mut lc = LinComb::new();
        for (t, c) in iter {
            lc.add_term(t, c);
        }
        lc
    }
}

impl<T: Ord + fmt::Display> fmt::Display for LinComb<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (t, c)) in self.terms.iter().enumerate() {
            let neg = *c < 0;
            let abs = Rational::from(c.abs_ref());
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if abs == 1 {
                write!(f, "{t}")?;
            } else {
                write!(f, "{abs}*{t}")?;
            }
        }
        Ok(())
    }
}

pub fn rational_json(q: &Rational) -> serde_json::Value {
    serde_json::json!({
        "num": q.numer().to_string(),
        "den": q.denom().to_string(),
    })
}
