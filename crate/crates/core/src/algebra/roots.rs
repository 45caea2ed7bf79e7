//! Root data: weights, the convex ordering family, simple roots and the
//! q-commutator constructions of non-simple roots.

use super::expr::Expression;
use super::symbol::Letter;
use crate::error::{Error, Result};
use crate::qscalar::QScalar;
use crate::scalar::Dimension;
use std::collections::HashMap;

/// A root generator L^{ij}, i < j, j != -i.
pub type Root = (i32, i32);

/// Simple root labels: `Chain(m)` is E_m = L^{1-m,m}; `Twelve` is E_12 = L^{12} (even N only).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Simple {
    Chain(i32),
    Twelve,
}

/// [a, b]_x = c * target.
#[derive(Clone, Debug)]
pub struct Construction {
    pub target: Root,
    pub a: Root,
    pub b: Root,
    pub x: QScalar,
    pub c: QScalar,
    pub tag: &'static str,
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    dim: Dimension,
    /// Positive roots in normal order.
    pub positive: Vec<Root>,
    /// Negative roots in normal order.
    pub negative: Vec<Root>,
    position: HashMap<Root, usize>,
    pub constructions: Vec<Construction>,
}

/// ε-component of the index k: (slot, sign) with slot = |k| - 1, or None for k = 0.
fn unit(k: i32) -> Option<(usize, i32)> {
    if k == 0 {
        None
    } else {
        Some(((k.abs() - 1) as usize, k.signum()))
    }
}

pub fn is_positive(r: Root) -> bool {
    r.0 + r.1 > 0
}

impl RootSystem {
    pub fn new(dim: Dimension) -> Self {
        let idx = dim.indices();
        let mut all = Vec::new();
        for &i in &idx {
            for &j in &idx {
                if i < j && i != -j {
                    all.push((i, j));
                }
            }
        }
        let n = dim.n() as usize;
        // Convex ordering: positive roots sorted by f/g with f(ε_k) = 4^k, g(ε_k) = k.
        let fg = |w: &[i32]| -> (i128, i128) {
            let mut f = 0i128;
            let mut g = 0i128;
            for (slot, &c) in w.iter().enumerate() {
                f += c as i128 * 4i128.pow(slot as u32 + 1);
                g += c as i128 * (slot as i128 + 1);
            }
            (f, g)
        };
        let cmp = |a: &Vec<i32>, b: &Vec<i32>| {
            let (fa, ga) = fg(a);
            let (fb, gb) = fg(b);
            (fa * gb).cmp(&(fb * ga))
        };
        let weight = |r: Root| weight_of(n, r);
        let mut positive: Vec<Root> = all.iter().copied().filter(|&r| is_positive(r)).collect();
        positive.sort_by(|&a, &b| cmp(&weight(a), &weight(b)));
        for w in positive.windows(2) {
            assert!(cmp(&weight(w[0]), &weight(w[1])).is_lt(), "convex order is not strict");
        }
        let neg_of = |w: Vec<i32>| -> Vec<i32> { w.into_iter().map(|c| -c).collect() };
        let mut negative: Vec<Root> = all.iter().copied().filter(|&r| !is_positive(r)).collect();
        negative.sort_by(|&a, &b| cmp(&neg_of(weight(b)), &neg_of(weight(a))));
        let mut position = HashMap::new();
        for (k, &r) in positive.iter().enumerate() {
            position.insert(r, k);
        }
        for (k, &r) in negative.iter().enumerate() {
            position.insert(r, k);
        }
        let mut rs = RootSystem { dim, positive, negative, position, constructions: Vec::new() };
        rs.constructions = rs.build_constructions();
        rs
    }

    pub fn dim(&self) -> Dimension {
        self.dim
    }

    pub fn is_root(&self, r: Root) -> bool {
        self.position.contains_key(&r)
    }

    /// Position within its sign class.
    pub fn position(&self, r: Root) -> usize {
        self.position[&r]
    }

    /// Weight of L^{ij} = e(i) + e(j) in the ε basis.
    pub fn weight(&self, r: Root) -> Vec<i32> {
        weight_of(self.dim.n() as usize, r)
    }

    pub fn simple_roots(&self) -> Vec<Simple> {
        let mut out = Vec::new();
        if !self.dim.is_odd() {
            out.push(Simple::Twelve);
        }
        for m in (self.dim.h() + 1)..=self.dim.n() {
            out.push(Simple::Chain(m));
        }
        out
    }

    pub fn e_root(s: Simple) -> Root {
        match s {
            Simple::Chain(m) => (1 - m, m),
            Simple::Twelve => (1, 2),
        }
    }

    pub fn f_root(s: Simple) -> Root {
        match s {
            Simple::Chain(m) => (-m, m - 1),
            Simple::Twelve => (-2, -1),
        }
    }

    /// Identifies a simple root and whether it is the raising (E) member.
    pub fn simple_of(&self, r: Root) -> Option<(Simple, bool)> {
        let h = self.dim.h();
        let n = self.dim.n();
        let (i, j) = r;
        if !self.dim.is_odd() && r == (1, 2) && n >= 2 {
            return Some((Simple::Twelve, true));
        }
        if !self.dim.is_odd() && r == (-2, -1) && n >= 2 {
            return Some((Simple::Twelve, false));
        }
        if j >= h + 1 && j <= n && i == 1 - j {
            return Some((Simple::Chain(j), true));
        }
        if i <= -(h + 1) && i >= -n && j == -i - 1 {
            return Some((Simple::Chain(-i), false));
        }
        None
    }

    pub fn is_simple(&self, r: Root) -> bool {
        self.simple_of(r).is_some()
    }

    /// The q-commutator constructions available for each non-simple root.
    fn build_constructions(&self) -> Vec<Construction> {
        let dim = self.dim;
        let n = dim.n();
        let h = dim.h();
        let q = QScalar::q();
        let qinv = QScalar::q_pow(-1);
        let rho = |l: i32| QScalar::s_pow(dim.rho2(l));
        let mut out = Vec::new();
        let ok = |r: Root| -> bool { self.is_root(r) };
        // [L^{-j,l}, L^{-l,k}]_q = q^{rho_l} L^{-j,k}, n >= k > l > j >= -h.
        for k in -n..=n {
            for l in 1..=n {
                for j in -h..=n {
                    if !(n >= k && k > l && l > j && j >= -h) || -j == l || -l == k {
                        continue;
                    }
                    let (a, b, t) = ((-j, l), (-l, k), (-j, k));
                    if ok(a) && ok(b) && ok(t) {
                        out.push(Construction { target: t, a, b, x: q.clone(), c: rho(l), tag: "raise-chain" });
                    }
                }
            }
        }
        // [L^{-k,l}, L^{-l,j}]_q = q^{rho_l + 1} L^{-k,j}, n >= k > l > j >= -h.
        for k in 1..=n {
            for l in 1..=n {
                for j in -h..=n {
                    if !(k > l && l > j && j >= -h) || -j == l || l == k {
                        continue;
                    }
                    let (a, b, t) = ((-k, l), (-l, j), (-k, j));
                    if ok(a) && ok(b) && ok(t) {
                        out.push(Construction {
                            target: t,
                            a,
                            b,
                            x: q.clone(),
                            c: &rho(l) * &q,
                            tag: "lower-chain",
                        });
                    }
                }
            }
        }
        // [L^{l-1,k}, L^{1-l,l}]_{1/q} = q^{rho_l - 1} L^{lk} and its lowering mirror.
        for l in 2..=n {
            for k in (l + 1)..=n {
                let (a, b, t) = ((l - 1, k), (1 - l, l), (l, k));
                if ok(a) && ok(b) && ok(t) {
                    out.push(Construction { target: t, a, b, x: qinv.clone(), c: &rho(l) * &qinv, tag: "raise-cross" });
                }
                let (a, b, t) = ((-l, l - 1), (-k, 1 - l), (-k, -l));
                if ok(a) && ok(b) && ok(t) {
                    out.push(Construction { target: t, a, b, x: qinv.clone(), c: rho(l), tag: "lower-cross" });
                }
            }
        }
        if dim.is_odd() {
            // [L^{0k}, L^{01}] = q^{-1} L^{1k}, [L^{-1,0}, L^{-k,0}] = L^{-k,-1}.
            for k in 2..=n {
                out.push(Construction {
                    target: (1, k),
                    a: (0, k),
                    b: (0, 1),
                    x: QScalar::one(),
                    c: qinv.clone(),
                    tag: "raise-zero",
                });
                out.push(Construction {
                    target: (-k, -1),
                    a: (-1, 0),
                    b: (-k, 0),
                    x: QScalar::one(),
                    c: QScalar::one(),
                    tag: "lower-zero",
                });
            }
        }
        out
    }

    /// Constructions whose target is r.
    pub fn constructions_of(&self, r: Root) -> impl Iterator<Item = &Construction> {
        self.constructions.iter().filter(move |c| c.target == r)
    }

    /// One-level definition of a non-simple root: c^{-1}(a b - x b a).
    pub fn definition(&self, r: Root, bold: bool) -> Result<Expression> {
        if !self.is_root(r) {
            return Err(Error::NotARoot { i: r.0, j: r.1 });
        }
        let c = self
            .constructions_of(r)
            .next()
            .ok_or(Error::UnreachableRoot { i: r.0, j: r.1 })?;
        let mk = |x: Root| Expression::letter(if bold { Letter::BL(x.0, x.1) } else { Letter::L(x.0, x.1) });
        Ok(Expression::qcommutator(&mk(c.a), &mk(c.b), &c.x).scale(&c.c.inv()))
    }

    /// Whether the sum of two same-sign roots decomposes into roots strictly between them.
    pub fn has_between_decomposition(&self, a: Root, b: Root) -> bool {
        let pos = is_positive(a);
        debug_assert_eq!(pos, is_positive(b));
        let (lo, hi) = {
            let (x, y) = (self.position(a), self.position(b));
            (x.min(y), x.max(y))
        };
        let class = if pos { &self.positive } else { &self.negative };
        let sign = if pos { 1 } else { -1 };
        let between: Vec<Vec<i32>> = class[lo + 1..hi]
            .iter()
            .map(|&r| self.weight(r).into_iter().map(|c| c * sign).collect())
            .collect();
        let target: Vec<i32> = self
            .weight(a)
            .iter()
            .zip(self.weight(b))
            .map(|(x, y)| (x + y) * sign)
            .collect();
        fn height(w: &[i32]) -> i32 {
            w.iter().enumerate().map(|(k, &c)| c * (k as i32 + 1)).sum()
        }
        fn search(rest: &[i32], pieces: &[Vec<i32>], start: usize) -> bool {
            if rest.iter().all(|&c| c == 0) {
                return true;
            }
            if height(rest) <= 0 {
                return false;
            }
            for k in start..pieces.len() {
                let next: Vec<i32> = rest.iter().zip(&pieces[k]).map(|(x, y)| x - y).collect();
                if search(&next, pieces, k) {
                    return true;
                }
            }
            false
        }
        search(&target, &between, 0)
    }

    /// Fully expanded form of a root in simple root letters of the same kind.
    pub fn derived_root(&self, r: Root, bold: bool) -> Result<Expression> {
        let mut memo = HashMap::new();
        self.derived_rec(r, bold, &mut memo)
    }

    fn derived_rec(&self, r: Root, bold: bool, memo: &mut HashMap<Root, Expression>) -> Result<Expression> {
        if !self.is_root(r) {
            return Err(Error::NotARoot { i: r.0, j: r.1 });
        }
        if self.is_simple(r) {
            return Ok(Expression::letter(if bold { Letter::BL(r.0, r.1) } else { Letter::L(r.0, r.1) }));
        }
        if let Some(e) = memo.get(&r) {
            return Ok(e.clone());
        }
        let c = self
            .constructions_of(r)
            .next()
            .ok_or(Error::UnreachableRoot { i: r.0, j: r.1 })?
            .clone();
        let a = self.derived_rec(c.a, bold, memo)?;
        let b = self.derived_rec(c.b, bold, memo)?;
        let e = Expression::qcommutator(&a, &b, &c.x).scale(&c.c.inv());
        memo.insert(r, e.clone());
        Ok(e)
    }

    /// Exponent of q in b = q^{-<|wt|, e(i)>}, the q-commutation factor L p^i = b p^i L.
    pub fn b_exponent(&self, r: Root, i: i32) -> i32 {
        let sign = if is_positive(r) { 1 } else { -1 };
        let w = self.weight(r);
        match unit(i) {
            None => 0,
            Some((slot, s)) => -sign * w[slot] * s,
        }
    }
}

pub(crate) fn weight_of(n: usize, r: Root) -> Vec<i32> {
    let mut w = vec![0; n];
    for k in [r.0, r.1] {
        if let Some((slot, s)) = unit(k) {
            w[slot] += s;
        }
    }
    w
}

pub fn inner(a: &[i32], b: &[i32]) -> i32 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Public entry point: expansion of L^{ij} into simple root generators.
pub fn derived_root(dim: Dimension, i: i32, j: i32) -> Result<Expression> {
    dim.check_index(i)?;
    dim.check_index(j)?;
    RootSystem::new(dim).derived_root((i, j), false)
}
