//! Linear combinations of words with exact coefficients.

use super::symbol::{canonical_word, word_to_string, Letter, Word};
use crate::qscalar::{split_sign, QScalar};
use std::collections::BTreeMap;
use std::fmt;

/// Sum of coefficient * word with no zero coefficients and canonical words.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Expression {
    terms: BTreeMap<Word, QScalar>,
}

impl Expression {
    pub fn zero() -> Self {
        Expression { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::scalar(QScalar::one())
    }

    pub fn scalar(c: QScalar) -> Self {
        Self::term(c, Vec::new())
    }

    pub fn letter(x: Letter) -> Self {
        Self::term(QScalar::one(), vec![x])
    }

    pub fn word(w: impl IntoIterator<Item = Letter>) -> Self {
        Self::term(QScalar::one(), w)
    }

    pub fn term(c: QScalar, w: impl IntoIterator<Item = Letter>) -> Self {
        let mut e = Self::zero();
        e.add_term(canonical_word(w), c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &QScalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &[Letter]) -> QScalar {
        self.terms.get(w).cloned().unwrap_or_else(QScalar::zero)
    }

    /// Adds c * w, where w must already be canonical.
    pub(crate) fn add_term(&mut self, w: Word, c: QScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(old) => {
                let s = &*old + &c;
                if s.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub(crate) fn pop_first(&mut self) -> Option<(Word, QScalar)> {
        self.terms.pop_first()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-QScalar::one()))
    }

    pub fn scale(&self, c: &QScalar) -> Self {
        let mut out = Self::zero();
        if c.is_zero() {
            return out;
        }
        for (w, d) in &self.terms {
            out.add_term(w.clone(), c * d);
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (a, c) in &self.terms {
            for (b, d) in &o.terms {
                let w = canonical_word(a.iter().chain(b.iter()).copied());
                out.add_term(w, c * d);
            }
        }
        out
    }

    /// [a, b]_x = a b - x b a.
    pub fn qcommutator(a: &Self, b: &Self, x: &QScalar) -> Self {
        a.mul(b).sub(&b.mul(a).scale(x))
    }

    /// Every letter occurring anywhere in the expression.
    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.terms.keys().flat_map(|w| w.iter().copied())
    }

    /// Replaces each letter by an expression; letters mapped to `None` are kept.
    pub fn substitute(&self, f: &mut impl FnMut(Letter) -> Option<Expression>) -> Expression {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            let mut acc = Expression::scalar(c.clone());
            for &x in w {
                let piece = f(x).unwrap_or_else(|| Expression::letter(x));
                acc = acc.mul(&piece);
                if acc.is_zero() {
                    break;
                }
            }
            out = out.add(&acc);
        }
        out
    }

    /// Evaluates coefficients at a numerical q.
    pub fn numeric(&self, q: f64) -> Vec<(f64, Word)> {
        self.terms.iter().map(|(w, c)| (c.eval(q), w.clone())).collect()
    }
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = split_sign(c);
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if w.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", word_to_string(w))?;
            } else {
                write!(f, "{mag} * {}", word_to_string(w))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
