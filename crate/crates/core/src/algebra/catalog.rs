//! Defining relations as oriented pair rules.
//!
//! A word is in normal order when its letters appear in the class order
//! Lambda, negative roots, K, W, positive roots, p, with roots sorted by the
//! convex order, K and W by ascending index and p by descending index.
//! `direct_rule` rewrites one out-of-order adjacent pair using a relation that
//! is stated explicitly; everything else is derived by the rewriter.

use super::expr::Expression;
use super::roots::{inner, is_positive, Root, RootSystem, Simple};
use super::symbol::Letter;
use crate::qscalar::QScalar;

/// Sort key of a letter in the normal order.
pub fn rank(rs: &RootSystem, x: Letter) -> (u8, i64) {
    match x {
        Letter::Lam(_) => (0, 0),
        Letter::K(i, _) => (2, i as i64),
        Letter::W(i, _) => (3, i as i64),
        Letter::P(i) => (5, -(i as i64)),
        Letter::L(i, j) | Letter::BL(i, j) => {
            let key = 2 * rs.position((i, j)) as i64 + x.is_bold() as i64;
            if is_positive((i, j)) {
                (4, key)
            } else {
                (1, key)
            }
        }
    }
}

pub fn is_bad_pair(rs: &RootSystem, x: Letter, y: Letter) -> bool {
    rank(rs, x) > rank(rs, y)
}

fn s(e: i32) -> QScalar {
    QScalar::s_pow(e)
}

fn mono(c: QScalar, w: &[Letter]) -> Expression {
    Expression::term(c, w.iter().copied())
}

fn root_letter(r: Root, bold: bool) -> Letter {
    if bold {
        Letter::BL(r.0, r.1)
    } else {
        Letter::L(r.0, r.1)
    }
}

/// 1/(1 - q^2).
fn inv_one_minus_q2() -> QScalar {
    QScalar::laurent(&[(0, 1), (4, -1)]).inv()
}

/// 1/(q - q^{-1}).
fn inv_q_minus_qinv() -> QScalar {
    QScalar::laurent(&[(2, 1), (-2, -1)]).inv()
}

/// kappa_j in p^{-j} p^j = p^j p^{-j} + kappa_j W_{j-1}.
fn kappa(rs: &RootSystem, j: i32) -> QScalar {
    let dim = rs.dim();
    let c_prev = if j - 1 >= 1 {
        QScalar::one() + s(-2 * dim.rho2(j - 1))
    } else {
        QScalar::one() + QScalar::q_pow(-1)
    };
    s(dim.rho2(j)) * (c_prev - QScalar::one() - s(-2 * dim.rho2(j)))
}

/// Bold simple root against p^i: [BL, p^i]_b = c p^{t}. Returns (c, t).
pub fn bold_p_term(rs: &RootSystem, r: Root, i: i32) -> Option<(QScalar, i32)> {
    let dim = rs.dim();
    let (simple, raising) = rs.simple_of(r)?;
    match simple {
        Simple::Twelve => {
            let r2 = s(dim.rho2(2));
            match (raising, i) {
                (true, -2) => Some((r2, 1)),
                (true, -1) => Some((-r2, 2)),
                (false, 1) => Some((r2, -2)),
                (false, 2) => Some((-r2, -1)),
                _ => None,
            }
        }
        Simple::Chain(m) => {
            let rm = s(dim.rho2(m));
            if raising {
                if m == 1 && i == 0 {
                    return Some((-QScalar::q_pow(-1), 1));
                }
                if i == -m {
                    Some((rm, i + 1))
                } else if i == m - 1 {
                    Some((-rm, i + 1))
                } else {
                    None
                }
            } else {
                if m == 1 && i == 0 {
                    return Some((QScalar::one(), -1));
                }
                if i == 1 - m {
                    Some((rm, i - 1))
                } else if i == m {
                    Some((-rm, i - 1))
                } else {
                    None
                }
            }
        }
    }
}

/// Serre-type relations [X, Y]_a = 0 between same-sign roots whose weights do not add to a root.
pub fn serre_relations(rs: &RootSystem) -> Vec<(String, Root, Root, QScalar)> {
    let dim = rs.dim();
    let n = dim.n();
    let h = dim.h();
    let q = QScalar::q();
    let qi = QScalar::q_pow(-1);
    let mut out = Vec::new();
    let chain: Vec<i32> = ((h + 1)..=n).collect();
    let e = |m: i32| RootSystem::e_root(Simple::Chain(m));
    let f = |m: i32| RootSystem::f_root(Simple::Chain(m));
    for &m in &chain {
        for &k in &chain {
            if k > m + 1 {
                out.push((format!("S1 E{m} E{k}"), e(m), e(k), QScalar::one()));
                out.push((format!("S1 F{m} F{k}"), f(m), f(k), QScalar::one()));
            }
        }
    }
    for m in 3..=n {
        for (k, a) in [(m, q.clone()), (m - 1, qi.clone())] {
            out.push((format!("S2 E{k} L(2-{m},{m})"), e(k), (2 - m, m), a.clone()));
            out.push((format!("S2 L(-{m},{m}-2) F{k}"), (-m, m - 2), f(k), a));
        }
    }
    if dim.is_odd() && n >= 2 {
        out.push(("S3 L01 L12".into(), (0, 1), (1, 2), qi.clone()));
        out.push(("S3 Lm12 L02".into(), (-1, 2), (0, 2), q.clone()));
        out.push(("S3 Lm2m1 Lm10".into(), (-2, -1), (-1, 0), qi.clone()));
        out.push(("S3 Lm20 Lm21".into(), (-2, 0), (-2, 1), q.clone()));
    }
    if !dim.is_odd() {
        for &m in &chain {
            if m != 3 {
                out.push((format!("S1 E12 E{m}"), (1, 2), e(m), QScalar::one()));
                out.push((format!("S1 F12 F{m}"), (-2, -1), f(m), QScalar::one()));
            }
        }
        if n >= 3 {
            out.push(("S2 E3 L13".into(), e(3), (1, 3), q.clone()));
            out.push(("S2 E12 L13".into(), (1, 2), (1, 3), qi.clone()));
            out.push(("S2 Lm3m1 F3".into(), (-3, -1), f(3), q.clone()));
            out.push(("S2 Lm3m1 F12".into(), (-3, -1), (-2, -1), qi));
        }
    }
    out
}

/// The relation for the bad pair x*y, if one is stated directly. Returns (family, rhs).
pub fn direct_rule(rs: &RootSystem, x: Letter, y: Letter) -> Option<(&'static str, Expression)> {
    debug_assert!(is_bad_pair(rs, x, y));
    let dim = rs.dim();
    use Letter::*;
    let swap = |c: QScalar| mono(c, &[y, x]);
    match (x, y) {
        (P(l), P(i)) => {
            if l == -i {
                let j = i;
                let mut e = mono(QScalar::one(), &[P(j), P(-j)]);
                if j == 1 && dim.is_odd() {
                    e = e.add(&mono(s(-1) - s(1), &[P(0), P(0)]));
                } else if j >= 2 {
                    e = e.add(&mono(kappa(rs, j), &[W(j - 1, 1)]));
                }
                Some(("pp-elim", e))
            } else {
                Some(("pp", swap(QScalar::q())))
            }
        }
        (P(l), L(a, b)) => Some(("Lp", swap(s(-2 * rs.b_exponent((a, b), l))))),
        (P(l), BL(a, b)) => {
            let r = (a, b);
            if !rs.is_simple(r) {
                return None;
            }
            let binv = s(-2 * rs.b_exponent(r, l));
            let mut e = swap(binv.clone());
            if let Some((c, t)) = bold_p_term(rs, r, l) {
                e = e.add(&mono(-(binv * c), &[P(t)]));
            }
            Some(("BLp", e))
        }
        (P(l), K(i, e2)) => {
            let d = (l == i) as i32 - (l == -i) as i32;
            Some(("kp", swap(s(-2 * d * e2))))
        }
        (P(l), W(j, f)) => {
            let t = if l.abs() <= j {
                0
            } else if l > j {
                1
            } else {
                -1
            };
            Some(("Wp", swap(s(-4 * t * f))))
        }
        (P(_), Lam(e)) => Some(("pLam", swap(s(2 * e)))),
        (L(..) | BL(..), K(i, e2)) => {
            let w = rs.weight(x.root().unwrap());
            Some(("kL", swap(s(-2 * w[(i - 1) as usize] * e2))))
        }
        (K(i, e2), L(..) | BL(..)) => {
            let w = rs.weight(y.root().unwrap());
            Some(("kL", swap(s(2 * w[(i - 1) as usize] * e2))))
        }
        (L(..), W(..)) | (W(..), L(..)) => Some(("LW", swap(QScalar::one()))),
        (L(..) | BL(..), Lam(_)) => Some(("LamL", swap(QScalar::one()))),
        (W(..), K(..)) | (K(..), K(..)) | (K(..), Lam(_)) | (W(..), W(..)) => {
            Some(("commute", swap(QScalar::one())))
        }
        (W(_, f), Lam(e)) => Some(("WLam", swap(s(4 * e * f)))),
        (L(..), L(..)) | (BL(..), BL(..)) => root_rule(rs, x, y),
        _ => None,
    }
}

fn root_rule(rs: &RootSystem, x: Letter, y: Letter) -> Option<(&'static str, Expression)> {
    let bold = x.is_bold();
    let (rx, ry) = (x.root().unwrap(), y.root().unwrap());
    match (is_positive(rx), is_positive(ry)) {
        (true, false) => ef_rule(rs, rx, ry, bold).map(|e| ("EF", e)),
        (px, py) if px == py => {
            for c in &rs.constructions {
                let t = root_letter(c.target, bold);
                if (c.a, c.b) == (rx, ry) {
                    return Some(("def", mono(c.x.clone(), &[y, x]).add(&mono(c.c.clone(), &[t]))));
                }
                if (c.a, c.b) == (ry, rx) {
                    let xi = c.x.inv();
                    return Some(("def", mono(xi.clone(), &[y, x]).sub(&mono(&xi * &c.c, &[t]))));
                }
            }
            for (_, a, b, coef) in serre_relations(rs) {
                if (a, b) == (rx, ry) {
                    return Some(("serre", mono(coef, &[y, x])));
                }
                if (a, b) == (ry, rx) {
                    return Some(("serre", mono(coef.inv(), &[y, x])));
                }
            }
            None
        }
        _ => None,
    }
}

/// W_{m-2} W_m W_{m-1}^{-2} term of the E_m F_m relation.
fn c_term(rs: &RootSystem, m: i32) -> Expression {
    let dim = rs.dim();
    let pre = s(2 * dim.rho2(m - 1)) * inv_one_minus_q2();
    let mut e = Expression::scalar(pre.clone());
    if m - 2 >= dim.h() {
        e = e.sub(&mono(pre, &[Letter::W(m - 2, 1), Letter::W(m - 1, -2), Letter::W(m, 1)]));
    }
    e
}

fn ef_rule(rs: &RootSystem, e_root: Root, f_root: Root, bold: bool) -> Option<Expression> {
    use Letter::*;
    let dim = rs.dim();
    let (se, true) = rs.simple_of(e_root)? else { return None };
    let (sf, false) = rs.simple_of(f_root)? else { return None };
    let xe = root_letter(e_root, bold);
    let yf = root_letter(f_root, bold);
    let fe = |c: QScalar| mono(c, &[yf, xe]);
    if se == sf {
        return Some(match se {
            Simple::Chain(1) => {
                if bold {
                    fe(QScalar::q())
                        .add(&Expression::scalar(s(-1) * inv_q_minus_qinv()))
                        .sub(&mono(s(-1) * inv_q_minus_qinv(), &[K(1, -2)]))
                } else {
                    let pre = s(1) * inv_one_minus_q2();
                    fe(QScalar::q())
                        .add(&mono(pre.clone(), &[K(1, -2)]))
                        .add(&mono(pre * QScalar::q(), &[W(0, -1), W(1, 1)]))
                }
            }
            Simple::Chain(m) => {
                let pre = s(2 + 2 * dim.rho2(m)) * inv_q_minus_qinv();
                let mut e = fe(QScalar::q_pow(2))
                    .add(&Expression::scalar(pre.clone()))
                    .sub(&mono(pre, &[K(m - 1, 2), K(m, -2)]));
                if !bold {
                    e = e.add(&c_term(rs, m));
                }
                e
            }
            Simple::Twelve => {
                let pre = s(2 + 2 * dim.rho2(2)) * inv_q_minus_qinv();
                let mut e = fe(QScalar::q_pow(2))
                    .add(&Expression::scalar(pre.clone()))
                    .sub(&mono(pre, &[K(1, -2), K(2, -2)]));
                if !bold {
                    e = e.add(&c_term(rs, 2));
                }
                e
            }
        });
    }
    let central = |p: i32| mono(inv_one_minus_q2(), &[W(1, -2), W(2, 1), P(p), P(p)]);
    Some(match (se, sf) {
        (Simple::Twelve, Simple::Chain(2)) => {
            if bold {
                fe(QScalar::one())
            } else {
                fe(QScalar::one()).add(&central(1))
            }
        }
        (Simple::Chain(2), Simple::Twelve) => {
            if bold {
                fe(QScalar::one())
            } else {
                fe(QScalar::one()).add(&central(-1))
            }
        }
        (Simple::Twelve, Simple::Chain(k)) | (Simple::Chain(k), Simple::Twelve) => {
            fe(if k == 3 { QScalar::q_pow(-1) } else { QScalar::one() })
        }
        (Simple::Chain(m), Simple::Chain(k)) => fe(if (m - k).abs() == 1 { QScalar::q_pow(-1) } else { QScalar::one() }),
        _ => unreachable!(),
    })
}

/// Levendorskii-Soibelman exponent: X Y = q^{(wt X, wt Y)} Y X.
pub fn ls_coefficient(rs: &RootSystem, x: Root, y: Root) -> QScalar {
    QScalar::q_pow(inner(&rs.weight(x), &rs.weight(y)))
}

/// A named rule lhs -> rhs with a two-letter lhs.
#[derive(Clone, Debug)]
pub struct RewriteRule {
    pub id: String,
    pub lhs: (Letter, Letter),
    pub rhs: Expression,
}

/// Letters with unit exponents (and half powers of k) used to enumerate the catalog.
pub fn unit_alphabet(rs: &RootSystem) -> Vec<Letter> {
    let dim = rs.dim();
    let mut out = Vec::new();
    for i in dim.indices() {
        out.push(Letter::P(i));
    }
    for &r in rs.positive.iter().chain(rs.negative.iter()) {
        out.push(Letter::L(r.0, r.1));
        out.push(Letter::BL(r.0, r.1));
    }
    for i in 1..=dim.n() {
        for e in [-2, -1, 1, 2] {
            out.push(Letter::K(i, e));
        }
    }
    for i in dim.h()..=dim.n() {
        out.push(Letter::W(i, 1));
        out.push(Letter::W(i, -1));
    }
    out.push(Letter::Lam(1));
    out.push(Letter::Lam(-1));
    out
}

/// Every directly stated pair rule over the unit alphabet.
pub fn relation_catalog(rs: &RootSystem) -> Vec<RewriteRule> {
    let alphabet = unit_alphabet(rs);
    let mut out = Vec::new();
    for &x in &alphabet {
        for &y in &alphabet {
            if !is_bad_pair(rs, x, y) {
                continue;
            }
            if let Some((fam, rhs)) = direct_rule(rs, x, y) {
                out.push(RewriteRule { id: format!("{fam}: {x}*{y}"), lhs: (x, y), rhs });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Dimension;

    #[test]
    fn three_has_p_rule() {
        let rs = RootSystem::new(Dimension::new(3).unwrap());
        let cat = relation_catalog(&rs);
        let r = cat.iter().find(|r| r.lhs == (Letter::P(-1), Letter::P(0))).unwrap();
        assert_eq!(r.rhs, mono(QScalar::q(), &[Letter::P(0), Letter::P(-1)]));
    }

    #[test]
    fn kappa_one_odd_matches_p0_term() {
        let rs = RootSystem::new(Dimension::new(5).unwrap());
        // kappa_1 W_0 with W_0 = p0 p0/(1 + 1/q) equals (q^{-1/2} - q^{1/2}) p0 p0.
        let lhs = kappa(&rs, 1) * (QScalar::one() + QScalar::q_pow(-1)).inv();
        assert_eq!(lhs, s(-1) - s(1));
    }
}
