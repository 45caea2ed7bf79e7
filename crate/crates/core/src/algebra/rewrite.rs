//! Normal ordering by repeated rewriting of adjacent out-of-order pairs.

use super::catalog::{direct_rule, is_bad_pair, ls_coefficient};
use super::expr::Expression;
use super::roots::{is_positive, RootSystem};
use super::symbol::{canonical_word, word_to_string, Letter};
use crate::error::{Error, Result};
use crate::qscalar::QScalar;
use crate::scalar::Dimension;
use std::cell::RefCell;
use std::collections::{HashMap, HashSet};

/// Which out-of-order pair to rewrite first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

pub const DEFAULT_BUDGET: usize = 2_000_000;

pub struct Rewriter {
    rs: RootSystem,
    budget: usize,
    memo: RefCell<HashMap<(Letter, Letter), Expression>>,
    active: RefCell<HashSet<(Letter, Letter)>>,
}

impl Rewriter {
    pub fn new(dim: Dimension) -> Self {
        Self::with_budget(dim, DEFAULT_BUDGET)
    }

    pub fn with_budget(dim: Dimension, budget: usize) -> Self {
        Rewriter {
            rs: RootSystem::new(dim),
            budget,
            memo: RefCell::new(HashMap::new()),
            active: RefCell::new(HashSet::new()),
        }
    }

    pub fn roots(&self) -> &RootSystem {
        &self.rs
    }

    pub fn dim(&self) -> Dimension {
        self.rs.dim()
    }

    pub fn is_normal(&self, w: &[Letter]) -> bool {
        w.windows(2).all(|p| !is_bad_pair(&self.rs, p[0], p[1]))
    }

    fn find_bad(&self, w: &[Letter], strategy: Strategy) -> Option<usize> {
        let bad = |k: &usize| is_bad_pair(&self.rs, w[*k], w[*k + 1]);
        let n = w.len().saturating_sub(1);
        match strategy {
            Strategy::Leftmost => (0..n).find(bad),
            Strategy::Rightmost => (0..n).rev().find(bad),
        }
    }

    pub fn normal_order(&self, e: &Expression) -> Result<Expression> {
        self.normal_order_with(e, Strategy::Leftmost)
    }

    pub fn normal_order_with(&self, e: &Expression, strategy: Strategy) -> Result<Expression> {
        for x in e.letters() {
            x.validate(self.dim())?;
        }
        let mut pending = e.clone();
        let mut done = Expression::zero();
        let mut steps = 0usize;
        while let Some((w, c)) = pending.pop_first() {
            let Some(k) = self.find_bad(&w, strategy) else {
                done.add_term(w, c);
                continue;
            };
            steps += 1;
            if steps > self.budget {
                return Err(Error::StepBudget { budget: self.budget, word: word_to_string(&w) });
            }
            let rhs = self.rule(w[k], w[k + 1])?;
            for (rw, rc) in rhs.terms() {
                let nw = canonical_word(w[..k].iter().chain(rw.iter()).chain(w[k + 2..].iter()).copied());
                pending.add_term(nw, &c * rc);
            }
        }
        Ok(done)
    }

    /// Rewrite of the out-of-order pair x*y as a combination of words.
    pub fn rule(&self, x: Letter, y: Letter) -> Result<Expression> {
        if let Some(e) = self.memo.borrow().get(&(x, y)) {
            return Ok(e.clone());
        }
        let e = self.derive_rule(x, y)?;
        self.memo.borrow_mut().insert((x, y), e.clone());
        Ok(e)
    }

    fn unsupported(x: Letter, y: Letter) -> Error {
        Error::UnsupportedReordering { left: x.to_string(), right: y.to_string() }
    }

    fn derive_rule(&self, x: Letter, y: Letter) -> Result<Expression> {
        if let Some((_, e)) = direct_rule(&self.rs, x, y) {
            return Ok(e);
        }
        if let (Some(rx), Some(ry)) = (x.root(), y.root()) {
            if x.is_bold() != y.is_bold() {
                return Err(Self::unsupported(x, y));
            }
            let same_sign = is_positive(rx) == is_positive(ry);
            if same_sign && !self.rs.has_between_decomposition(rx, ry) {
                return Ok(Expression::term(ls_coefficient(&self.rs, rx, ry), [y, x]));
            }
        }
        self.expand_rule(x, y)
    }

    /// Replaces a non-simple root by its defining q-commutator and normal orders the result.
    fn expand_rule(&self, x: Letter, y: Letter) -> Result<Expression> {
        let derived = |l: Letter| l.root().is_some_and(|r| !self.rs.is_simple(r));
        if !derived(x) && !derived(y) {
            return Err(Self::unsupported(x, y));
        }
        if !self.active.borrow_mut().insert((x, y)) {
            return Err(Self::unsupported(x, y));
        }
        let mut result = Err(Self::unsupported(x, y));
        for (pos, l) in [(0, x), (1, y)] {
            if !derived(l) {
                continue;
            }
            let def = self.rs.definition(l.root().unwrap(), l.is_bold());
            let def = match def {
                Ok(d) => d,
                Err(e) => {
                    result = Err(e);
                    continue;
                }
            };
            // Move the other letter through the expansion before the expansion recombines.
            let (e, strategy) = if pos == 0 {
                (def.mul(&Expression::letter(y)), Strategy::Rightmost)
            } else {
                (Expression::letter(x).mul(&def), Strategy::Leftmost)
            };
            match self.normal_order_with(&e, strategy) {
                Ok(r) => {
                    result = Ok(r);
                    break;
                }
                Err(err) => result = Err(err),
            }
        }
        self.active.borrow_mut().remove(&(x, y));
        result
    }

    /// Replaces every root letter by its expansion in simple roots of the same kind.
    pub fn expand_to_simple(&self, e: &Expression) -> Result<Expression> {
        let mut err = None;
        let out = e.substitute(&mut |l| match l.root() {
            Some(r) if !self.rs.is_simple(r) => match self.rs.derived_root(r, l.is_bold()) {
                Ok(d) => Some(d),
                Err(x) => {
                    err = Some(x);
                    None
                }
            },
            _ => None,
        });
        match err {
            Some(x) => Err(x),
            None => Ok(out),
        }
    }
}

/// Normal form of `e` using the leftmost strategy and the default budget.
pub fn normal_order(dim: Dimension, e: &Expression) -> Result<Expression> {
    Rewriter::new(dim).normal_order(e)
}

/// Bold simple root in terms of the shifted one: BL = L - c W^{-1} p p.
pub fn bold_to_shifted(rs: &RootSystem, r: (i32, i32)) -> Option<Expression> {
    use super::roots::Simple;
    let dim = rs.dim();
    let (simple, raising) = rs.simple_of(r)?;
    let one_minus_q2 = QScalar::laurent(&[(0, 1), (4, -1)]);
    let (m, a, b) = match (simple, raising) {
        (Simple::Twelve, true) => (1, 1, 2),
        (Simple::Twelve, false) => (1, -2, -1),
        (Simple::Chain(k), true) => (k - 1, -(k - 1), k),
        (Simple::Chain(k), false) => (k - 1, -k, k - 1),
    };
    let top = match simple {
        Simple::Twelve => 2,
        Simple::Chain(k) => k,
    };
    let extra = if raising { 2 } else { 1 };
    let c = QScalar::s_pow(2 * dim.rho2(top) + 2 * extra).div(&one_minus_q2);
    let shift = Expression::term(c, [Letter::W(m, -1), Letter::P(a), Letter::P(b)]);
    Some(Expression::letter(Letter::L(r.0, r.1)).sub(&shift))
}
