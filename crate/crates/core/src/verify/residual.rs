//! Relation residuals and adjointness on window interiors.

use crate::algebra::catalog::{relation_catalog, serre_relations};
use crate::algebra::roots::{RootSystem, Simple};
use crate::algebra::{parse, Expression, Letter};
use crate::error::{Error, Result};
use crate::qscalar::QScalar;
use crate::rep::Rep;
use rayon::prelude::*;

/// An identity lhs = rhs to be tested in a representation.
#[derive(Clone, Debug)]
pub struct Identity {
    pub id: String,
    pub lhs: Expression,
    pub rhs: Expression,
}

impl Identity {
    pub fn new(id: impl Into<String>, lhs: Expression, rhs: Expression) -> Self {
        Identity { id: id.into(), lhs, rhs }
    }

    pub fn parsed(id: impl Into<String>, lhs: &str, rhs: &str, rs: &RootSystem) -> Result<Self> {
        let dim = rs.dim();
        Ok(Identity { id: id.into(), lhs: parse(lhs, dim)?, rhs: parse(rhs, dim)? })
    }
}

#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub id: String,
    /// Largest absolute residual component over interior states.
    pub max_abs: f64,
    /// Largest single-term amplitude over interior states.
    pub scale: f64,
    pub interior_states: usize,
}

impl IdentityReport {
    pub fn relative(&self) -> f64 {
        if self.scale > 0.0 {
            self.max_abs / self.scale
        } else {
            self.max_abs
        }
    }
}

/// Residual of one identity over the interior of the window.
pub fn identity_residual(rep: &Rep, ident: &Identity) -> Result<IdentityReport> {
    let diff = rep.compile(&ident.lhs.sub(&ident.rhs))?;
    let lhs = rep.compile(&ident.lhs)?;
    let rhs = rep.compile(&ident.rhs)?;
    let per_state: Vec<Result<Option<(f64, f64)>>> = rep
        .basis
        .states
        .par_iter()
        .map(|s| {
            let a = rep.apply(&lhs, s)?;
            let b = rep.apply(&rhs, s)?;
            if !(a.interior && b.interior) {
                return Ok(None);
            }
            let d = rep.apply(&diff, s)?;
            let res = d.out.iter().fold(0.0f64, |m, x| m.max(x.1.abs()));
            Ok(Some((res, a.scale.max(b.scale))))
        })
        .collect();
    let mut rep_out = IdentityReport { id: ident.id.clone(), max_abs: 0.0, scale: 0.0, interior_states: 0 };
    for r in per_state {
        if let Some((res, sc)) = r? {
            rep_out.interior_states += 1;
            rep_out.max_abs = rep_out.max_abs.max(res);
            rep_out.scale = rep_out.scale.max(sc);
        }
    }
    if rep_out.interior_states == 0 {
        return Err(Error::NoInterior(ident.id.clone()));
    }
    Ok(rep_out)
}

/// The N = 3 relation list written out generator by generator.
pub fn n3_closed_list(rs: &RootSystem) -> Result<Vec<Identity>> {
    if rs.dim().big_n() != 3 {
        return Err(Error::InvalidParameter("the closed relation list is for N = 3".into()));
    }
    let rows: &[(&str, &str, &str)] = &[
        ("p-1 p0", "pm1*p0", "q*p0*pm1"),
        ("p0 p1", "p0*p1", "q*p1*p0"),
        ("p-1 p1", "pm1*p1", "p1*pm1 + (q^{-1/2} - q^{1/2})*p0*p0"),
        ("p0 p0", "p0*p0", "(1 + 1/q)*W0"),
        ("W1", "W1", "q^{-1/2}*pm1*p1 + W0"),
        ("k p-1", "k1*pm1", "q^{-2}*pm1*k1"),
        ("k p0", "k1*p0", "p0*k1"),
        ("k p1", "k1*p1", "q^{2}*p1*k1"),
        ("L01 p-1", "L01*pm1", "q*pm1*L01"),
        ("L01 p0", "L01*p0", "p0*L01"),
        ("L01 p1", "L01*p1", "q^{-1}*p1*L01"),
        ("L-10 p-1", "Lm10*pm1", "q*pm1*Lm10"),
        ("L-10 p0", "Lm10*p0", "p0*Lm10"),
        ("L-10 p1", "Lm10*p1", "q^{-1}*p1*Lm10"),
        ("k L01", "k1*L01", "q^{2}*L01*k1"),
        ("k L-10", "k1*Lm10", "q^{-2}*Lm10*k1"),
        ("L01 L-10", "L01*Lm10", "q*Lm10*L01 + q^{1/2}/(1 - q^{2})*(k1inv + q*W1*W0inv)"),
        ("Lam L01", "Lam*L01", "L01*Lam"),
        ("Lam L-10", "Lam*Lm10", "Lm10*Lam"),
        ("Lam k", "Lam*k1", "k1*Lam"),
        ("p-1 Lam", "pm1*Lam", "q*Lam*pm1"),
        ("p0 Lam", "p0*Lam", "q*Lam*p0"),
        ("p1 Lam", "p1*Lam", "q*Lam*p1"),
        ("W Lam", "W1*Lam", "q^{2}*Lam*W1"),
    ];
    rows.iter().map(|(id, l, r)| Identity::parsed(*id, l, r, rs)).collect()
}

/// (p.p)_j in terms of the momenta, and the full metric contraction.
pub fn metric_identities(rs: &RootSystem) -> Vec<Identity> {
    let dim = rs.dim();
    let mut out = Vec::new();
    for j in dim.h().max(1)..=dim.n() {
        let mut w = Expression::zero();
        let mut full = Expression::zero();
        for l in 1..=j {
            w = w.add(&Expression::term(QScalar::s_pow(dim.rho2(l)), [Letter::P(-l), Letter::P(l)]));
            full = full
                .add(&Expression::term(QScalar::s_pow(dim.rho2(l)), [Letter::P(-l), Letter::P(l)]))
                .add(&Expression::term(QScalar::s_pow(-dim.rho2(l)), [Letter::P(l), Letter::P(-l)]));
        }
        if dim.is_odd() {
            w = w.add(&Expression::letter(Letter::W(0, 1)));
            full = full.add(&Expression::word([Letter::P(0), Letter::P(0)]));
        }
        let wj = Expression::letter(Letter::W(j, 1));
        out.push(Identity::new(format!("W{j} as sum"), wj.clone(), w));
        let c = QScalar::one() + QScalar::s_pow(-2 * dim.rho2(j));
        out.push(Identity::new(format!("metric contraction {j}"), full, wj.scale(&c)));
    }
    if dim.is_odd() {
        let c = QScalar::one() + QScalar::q_pow(-1);
        out.push(Identity::new(
            "W0",
            Expression::word([Letter::P(0), Letter::P(0)]),
            Expression::letter(Letter::W(0, 1)).scale(&c),
        ));
    }
    out
}

/// Catalog rules, Serre relations and metric identities.
pub fn general_identities(rs: &RootSystem) -> Vec<Identity> {
    let mut out: Vec<Identity> = relation_catalog(rs)
        .into_iter()
        .map(|r| Identity::new(r.id, Expression::word([r.lhs.0, r.lhs.1]), r.rhs))
        .collect();
    for bold in [false, true] {
        for (id, a, b, x) in serre_relations(rs) {
            let mk = |r: (i32, i32)| Expression::letter(if bold { Letter::BL(r.0, r.1) } else { Letter::L(r.0, r.1) });
            let tag = if bold { "bold " } else { "" };
            out.push(Identity::new(format!("{tag}{id}"), Expression::qcommutator(&mk(a), &mk(b), &x), Expression::zero()));
        }
    }
    out.extend(metric_identities(rs));
    out
}

/// q-commutation of every (shifted or bold) root with every momentum, including derived roots.
pub fn root_momentum_identities(rs: &RootSystem, bold: bool) -> Vec<Identity> {
    let dim = rs.dim();
    let mut out = Vec::new();
    for &r in rs.positive.iter().chain(rs.negative.iter()) {
        if bold && !rs.is_simple(r) {
            continue;
        }
        let l = if bold { Letter::BL(r.0, r.1) } else { Letter::L(r.0, r.1) };
        for i in dim.indices() {
            let b = QScalar::s_pow(2 * rs.b_exponent(r, i));
            let mut rhs = Expression::term(b, [Letter::P(i), l]);
            if bold {
                if let Some((c, t)) = crate::algebra::catalog::bold_p_term(rs, r, i) {
                    rhs = rhs.add(&Expression::term(c, [Letter::P(t)]));
                }
            }
            out.push(Identity::new(format!("{l} p{i}"), Expression::word([l, Letter::P(i)]), rhs));
        }
    }
    out
}

/// Summary of a batch of identities.
#[derive(Clone, Debug, Default)]
pub struct SuiteReport {
    pub reports: Vec<IdentityReport>,
    pub skipped: Vec<String>,
}

impl SuiteReport {
    pub fn worst(&self) -> Option<&IdentityReport> {
        self.reports.iter().max_by(|a, b| a.relative().total_cmp(&b.relative()))
    }

    pub fn max_relative(&self) -> f64 {
        self.worst().map(|r| r.relative()).unwrap_or(0.0)
    }

    pub fn failures(&self, tol: f64) -> Vec<&IdentityReport> {
        self.reports.iter().filter(|r| !(r.relative() < tol)).collect()
    }
}

/// Runs identities; those without interior states are listed as skipped.
pub fn run_identities(rep: &Rep, ids: &[Identity]) -> Result<SuiteReport> {
    let mut s = SuiteReport::default();
    for id in ids {
        match identity_residual(rep, id) {
            Ok(r) => s.reports.push(r),
            Err(Error::NoInterior(name)) => s.skipped.push(name),
            Err(e) => return Err(e),
        }
    }
    Ok(s)
}

/// Default relation suite for the representation's dimension.
pub fn relation_residual_suite(rep: &Rep) -> Result<SuiteReport> {
    let rs = rep.roots();
    let mut ids = if rs.dim().big_n() == 3 { n3_closed_list(rs)? } else { Vec::new() };
    ids.extend(general_identities(rs));
    ids.extend(root_momentum_identities(rs, false));
    run_identities(rep, &ids)
}

/// Adjoint of a generator under the star structure, when it is a single generator.
pub fn star_letter(rs: &RootSystem, x: Letter) -> Option<Expression> {
    let dim = rs.dim();
    let one = |c: QScalar, l: Letter| Some(Expression::term(c, [l]));
    match x {
        Letter::P(i) => one(QScalar::s_pow(dim.rho2(i)), Letter::P(-i)),
        Letter::K(..) | Letter::W(..) => one(QScalar::one(), x),
        Letter::Lam(e) => one(QScalar::one(), Letter::Lam(-e)),
        Letter::L(a, b) => {
            let (simple, raising) = rs.simple_of((a, b))?;
            let e = if simple == Simple::Chain(1) { 3 } else { 4 };
            if raising {
                let f = RootSystem::f_root(simple);
                one(QScalar::s_pow(-e), Letter::L(f.0, f.1))
            } else {
                let r = RootSystem::e_root(simple);
                one(QScalar::s_pow(e), Letter::L(r.0, r.1))
            }
        }
        Letter::BL(..) => None,
    }
}

/// Generators whose adjointness is checked.
pub fn star_generators(rs: &RootSystem) -> Vec<Letter> {
    let dim = rs.dim();
    let mut out: Vec<Letter> = dim.indices().into_iter().map(Letter::P).collect();
    for s in rs.simple_roots() {
        let e = RootSystem::e_root(s);
        let f = RootSystem::f_root(s);
        out.push(Letter::L(e.0, e.1));
        out.push(Letter::L(f.0, f.1));
    }
    for i in 1..=dim.n() {
        out.push(Letter::K(i, 2));
        out.push(Letter::K(i, 1));
    }
    for i in dim.h()..=dim.n() {
        out.push(Letter::W(i, 1));
    }
    out.push(Letter::Lam(1));
    out
}

/// max |Gamma(g)_{ts} - Gamma(g*)_{st}| relative to the largest entry, per generator.
pub fn star_suite(rep: &Rep) -> Result<SuiteReport> {
    let rs = rep.roots();
    let mut out = SuiteReport::default();
    for g in star_generators(rs) {
        let gs = star_letter(rs, g).expect("star of a generator");
        let a = rep.compile(&Expression::letter(g))?;
        let b = rep.compile(&gs)?;
        let mut max_abs: f64 = 0.0;
        let mut scale: f64 = 0.0;
        let mut count = 0;
        for s in &rep.basis.states {
            let img = rep.apply(&a, s)?;
            for (t, v) in &img.out {
                if rep.basis.index_of(t).is_none() {
                    continue;
                }
                let back = rep.apply(&b, t)?;
                let w = back.out.iter().find(|x| x.0 == *s).map(|x| x.1).unwrap_or(0.0);
                max_abs = max_abs.max((v - w).abs());
                scale = scale.max(v.abs());
                count += 1;
            }
            // Entries of g* that have no partner in g.
            let back = rep.apply(&b, s)?;
            for (t, w) in &back.out {
                if rep.basis.index_of(t).is_none() {
                    continue;
                }
                let fwd = rep.apply(&a, t)?;
                if !fwd.out.iter().any(|x| x.0 == *s) {
                    max_abs = max_abs.max(w.abs());
                }
            }
        }
        out.reports.push(IdentityReport { id: format!("star {g}"), max_abs, scale, interior_states: count });
    }
    Ok(out)
}
