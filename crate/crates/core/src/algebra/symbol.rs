//! Generator letters, words and their printed names.

use crate::error::{Error, Result};
use crate::scalar::Dimension;
use std::fmt;

/// One generator, possibly raised to a power.
///
/// `K` carries its exponent in halves, so `K(1, 1)` is (k^1)^{1/2}.
/// `W(i, e)` is the e-th power of (p.p)_i; for odd N the index 0 stands for p^0 p^0 / (1 + q^{-1}).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    P(i32),
    L(i32, i32),
    BL(i32, i32),
    K(i32, i32),
    Lam(i32),
    W(i32, i32),
}

impl Letter {
    pub fn is_root(self) -> bool {
        matches!(self, Letter::L(..) | Letter::BL(..))
    }

    pub fn is_bold(self) -> bool {
        matches!(self, Letter::BL(..))
    }

    pub fn root(self) -> Option<(i32, i32)> {
        match self {
            Letter::L(i, j) | Letter::BL(i, j) => Some((i, j)),
            _ => None,
        }
    }

    /// Checks indices against the dimension.
    pub fn validate(self, dim: Dimension) -> Result<()> {
        match self {
            Letter::P(i) => dim.check_index(i),
            Letter::L(i, j) | Letter::BL(i, j) => {
                dim.check_index(i)?;
                dim.check_index(j)?;
                if i >= j || i == -j {
                    Err(Error::NotARoot { i, j })
                } else {
                    Ok(())
                }
            }
            Letter::K(i, _) => {
                if i >= 1 && i <= dim.n() {
                    Ok(())
                } else {
                    Err(Error::IndexOutOfRange { index: i, n_dim: dim.big_n() })
                }
            }
            Letter::W(i, _) => {
                if i >= dim.h() && i <= dim.n() {
                    Ok(())
                } else {
                    Err(Error::IndexOutOfRange { index: i, n_dim: dim.big_n() })
                }
            }
            Letter::Lam(_) => Ok(()),
        }
    }
}

pub(crate) fn index_name(i: i32) -> String {
    if i < 0 {
        format!("m{}", -i)
    } else {
        i.to_string()
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let repeat = |f: &mut fmt::Formatter<'_>, unit: &str, k: i32| -> fmt::Result {
            let parts: Vec<&str> = (0..k).map(|_| unit).collect();
            write!(f, "{}", parts.join("*"))
        };
        match *self {
            Letter::P(i) => write!(f, "p{}", index_name(i)),
            Letter::L(i, j) => write!(f, "L{}{}", index_name(i), index_name(j)),
            Letter::BL(i, j) => write!(f, "BL{}{}", index_name(i), index_name(j)),
            Letter::K(i, e2) => {
                let whole = e2 / 2;
                let half = e2 % 2;
                let mut parts = Vec::new();
                let unit = if whole >= 0 { format!("k{i}") } else { format!("k{i}inv") };
                for _ in 0..whole.abs() {
                    parts.push(unit.clone());
                }
                match half {
                    1 => parts.push(format!("k{i}sqrt")),
                    -1 => parts.push(format!("k{i}sqrtinv")),
                    _ => {}
                }
                write!(f, "{}", parts.join("*"))
            }
            Letter::Lam(e) => repeat(f, if e > 0 { "Lam" } else { "Laminv" }, e.abs()),
            Letter::W(i, e) => {
                let unit = if e > 0 { format!("W{i}") } else { format!("W{i}inv") };
                repeat(f, &unit, e.abs())
            }
        }
    }
}

/// A product of letters, left to right.
pub type Word = Vec<Letter>;

/// Merges adjacent powers of the same K, W or Lambda and drops trivial powers.
pub fn canonical_word(letters: impl IntoIterator<Item = Letter>) -> Word {
    let mut out: Word = Vec::new();
    for x in letters {
        let x = match x {
            Letter::K(_, 0) | Letter::W(_, 0) | Letter::Lam(0) => continue,
            x => x,
        };
        let merged = match (out.last().copied(), x) {
            (Some(Letter::K(i, a)), Letter::K(j, b)) if i == j => Some(Letter::K(i, a + b)),
            (Some(Letter::W(i, a)), Letter::W(j, b)) if i == j => Some(Letter::W(i, a + b)),
            (Some(Letter::Lam(a)), Letter::Lam(b)) => Some(Letter::Lam(a + b)),
            _ => None,
        };
        match merged {
            Some(m) => {
                out.pop();
                match m {
                    Letter::K(_, 0) | Letter::W(_, 0) | Letter::Lam(0) => {}
                    m => out.push(m),
                }
            }
            None => out.push(x),
        }
    }
    out
}

pub fn word_to_string(w: &[Letter]) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    w.iter().map(|l| l.to_string()).collect::<Vec<_>>().join("*")
}
