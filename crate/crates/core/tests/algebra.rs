use proptest::prelude::*;
use qeuclid::algebra::{
    derived_root, normal_order, parse, relation_catalog, serre_relations, unit_alphabet, Expression, Letter, RewriteRule,
    Rewriter, RootSystem, Strategy as Order,
};
use qeuclid::rep::{Rep, RepConfig, TruncationWindow};
use qeuclid::verify::{identity_residual, Identity};
use qeuclid::{Dimension, Error, QScalar};

fn d(n: usize) -> Dimension {
    Dimension::new(n).unwrap()
}

fn s(e: i32) -> QScalar {
    QScalar::s_pow(e)
}

fn rule<'a>(cat: &'a [RewriteRule], x: Letter, y: Letter) -> &'a RewriteRule {
    cat.iter().find(|r| r.lhs == (x, y)).unwrap_or_else(|| panic!("no rule for {x}*{y}"))
}

#[test]
fn catalog_has_p_commutation() {
    let rs = RootSystem::new(d(3));
    let cat = relation_catalog(&rs);
    let r = rule(&cat, Letter::P(-1), Letter::P(0));
    assert_eq!(r.rhs, Expression::term(QScalar::q(), [Letter::P(0), Letter::P(-1)]));
}

#[test]
fn catalog_pm1_p1_sign() {
    // p^{-1} p^1 = p^1 p^{-1} + (q^{-1/2} - q^{1/2}) p^0 p^0; the matrices fix the sign.
    let rs = RootSystem::new(d(3));
    let cat = relation_catalog(&rs);
    let r = rule(&cat, Letter::P(-1), Letter::P(1));
    let want = Expression::word([Letter::P(1), Letter::P(-1)])
        .add(&Expression::term(s(-1) - s(1), [Letter::P(0), Letter::P(0)]));
    assert_eq!(r.rhs, want);
}

#[test]
fn printed_pm1_p1_sign_fails_in_the_representation() {
    let dim = d(3);
    let rep = Rep::new(RepConfig::new(3, 0.5, 1.0, 0).unwrap(), &TruncationWindow::uniform(dim, 5, 2, -5)).unwrap();
    let good = Identity::parsed("good", "pm1*p1", "p1*pm1 + (q^{-1/2} - q^{1/2})*p0*p0", rep.roots()).unwrap();
    let printed = Identity::parsed("printed", "pm1*p1", "p1*pm1 + (q^{1/2} - q^{-1/2})*p0*p0", rep.roots()).unwrap();
    assert!(identity_residual(&rep, &good).unwrap().relative() < 1e-12);
    assert!(identity_residual(&rep, &printed).unwrap().relative() > 1e-2);
}

#[test]
fn parse_examples() {
    let e = parse("p1*pm1 - pm1*p1", d(3)).unwrap();
    assert_eq!(e.len(), 2);
    assert_eq!(e.coefficient(&[Letter::P(1), Letter::P(-1)]), QScalar::one());
    assert_eq!(e.coefficient(&[Letter::P(-1), Letter::P(1)]), QScalar::from_int(-1));
    let e = parse("q^{1/2}*p0*p0", d(3)).unwrap();
    assert_eq!(e, Expression::term(s(1), [Letter::P(0), Letter::P(0)]));
    let a = Expression::letter(Letter::L(0, 1));
    let b = Expression::letter(Letter::L(-1, 0));
    assert_eq!(parse("L01*Lm10 - q*Lm10*L01", d(3)).unwrap(), Expression::qcommutator(&a, &b, &QScalar::q()));
}

#[test]
fn normal_order_examples() {
    let dim = d(3);
    let e = parse("pm1*p0", dim).unwrap();
    assert_eq!(normal_order(dim, &e).unwrap(), Expression::term(QScalar::q(), [Letter::P(0), Letter::P(-1)]));
    assert_eq!(normal_order(dim, &Expression::one()).unwrap(), Expression::one());
    assert_eq!(normal_order(dim, &Expression::zero()).unwrap(), Expression::zero());
}

#[test]
fn e1_f1_commutator_normal_form() {
    // [L^{01}, L^{-10}]_q = q^{1/2} ((k^1)^{-1} + q W_1 W_0^{-1}) / (1 - q^2)
    let dim = d(3);
    let got = normal_order(dim, &parse("L01*Lm10 - q*Lm10*L01", dim).unwrap()).unwrap();
    let pre = s(1).div(&(QScalar::one() - QScalar::q_pow(2)));
    let want = Expression::term(pre.clone(), [Letter::K(1, -2)])
        .add(&Expression::term(pre * QScalar::q(), [Letter::W(0, -1), Letter::W(1, 1)]));
    assert_eq!(got, want);
}

#[test]
fn four_dimensional_central_term() {
    let dim = d(4);
    let got = normal_order(dim, &parse("L12*Lm21 - Lm21*L12", dim).unwrap()).unwrap();
    let c = QScalar::one().div(&(QScalar::one() - QScalar::q_pow(2)));
    let want = Expression::term(c, [Letter::W(1, -1), Letter::W(1, -1), Letter::W(2, 1), Letter::P(1), Letter::P(1)]);
    assert_eq!(got, want);
}

#[test]
fn derived_root_errors() {
    assert!(matches!(derived_root(d(5), -2, 2), Err(Error::NotARoot { .. })));
    assert!(derived_root(d(5), 1, 2).is_ok());
    assert!(matches!(derived_root(d(5), 1, 3), Err(Error::IndexOutOfRange { .. })));
}

#[test]
fn derived_root_commutes_with_momentum_square() {
    let dim = d(5);
    let rep = Rep::new(RepConfig::new(5, 0.5, 1.0, 0).unwrap(), &TruncationWindow::uniform(dim, 2, 1, -2)).unwrap();
    let l12 = derived_root(dim, 1, 2).unwrap();
    for i in 0..=2 {
        let w = Expression::letter(Letter::W(i, 1));
        let id = Identity::new(format!("[L12, W{i}]"), l12.mul(&w), w.mul(&l12));
        assert!(identity_residual(&rep, &id).unwrap().relative() < 1e-10);
    }
}

#[test]
fn serre_relations_vanish_exactly() {
    for n in 3..=6 {
        let rw = Rewriter::new(d(n));
        for bold in [false, true] {
            for (id, a, b, x) in serre_relations(rw.roots()) {
                let mk = |r: (i32, i32)| Expression::letter(if bold { Letter::BL(r.0, r.1) } else { Letter::L(r.0, r.1) });
                let e = Expression::qcommutator(&mk(a), &mk(b), &x);
                assert!(rw.normal_order(&e).unwrap().is_zero(), "N={n} bold={bold} {id}");
                let simple = rw.expand_to_simple(&e).unwrap();
                assert!(rw.normal_order(&simple).unwrap().is_zero(), "N={n} bold={bold} {id} expanded");
            }
        }
    }
}

#[test]
fn catalog_embeds_into_the_next_dimension() {
    for n in 3..=6 {
        let small = RootSystem::new(d(n));
        let big = RootSystem::new(d(n + 2));
        let top = small.dim().n() + 1;
        let excluded = |l: Letter| match l {
            Letter::P(i) => i.abs() == top,
            Letter::L(a, b) | Letter::BL(a, b) => a.abs() == top || b.abs() == top,
            Letter::K(i, _) | Letter::W(i, _) => i == top,
            Letter::Lam(_) => true,
        };
        let cat_b = relation_catalog(&big);
        let mut compared = 0;
        for r in relation_catalog(&small) {
            if excluded(r.lhs.0) || excluded(r.lhs.1) {
                continue;
            }
            let rb = rule(&cat_b, r.lhs.0, r.lhs.1);
            let proj = rb.rhs.substitute(&mut |l| if excluded(l) { Some(Expression::zero()) } else { None });
            assert_eq!(proj, r.rhs, "N={n} {}", r.id);
            compared += 1;
        }
        assert!(compared > 50);
    }
}

/// Every catalog rule agrees with the matrices of the N = 5 singlet.
#[test]
fn pair_rules_match_the_representation() {
    let dim = d(5);
    let rep = Rep::new(RepConfig::new(5, 0.6, 1.3, 0).unwrap(), &TruncationWindow::uniform(dim, 3, 2, -3)).unwrap();
    let rw = Rewriter::new(dim);
    let letters: Vec<Letter> = unit_alphabet(rw.roots()).into_iter().filter(|l| !l.is_bold()).collect();
    let mut checked = 0;
    for &x in &letters {
        for &y in &letters {
            let w = Expression::word([x, y]);
            let nf = rw.normal_order(&w).unwrap();
            if nf == w {
                continue;
            }
            let id = Identity::new(format!("{x}*{y}"), w, nf);
            match identity_residual(&rep, &id) {
                Ok(r) => {
                    assert!(r.relative() < 1e-10, "{} residual {}", r.id, r.relative());
                    checked += 1;
                }
                Err(Error::NoInterior(_)) => {}
                Err(e) => panic!("{e}"),
            }
        }
    }
    assert!(checked > 100, "only {checked} pairs checked");
}

fn alphabet(n: usize) -> Vec<Letter> {
    let rs = RootSystem::new(d(n));
    unit_alphabet(&rs).into_iter().filter(|l| !l.is_bold()).collect()
}

fn word(n: usize, max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    let a = alphabet(n);
    prop::collection::vec(prop::sample::select(a), 0..=max_len)
}

fn coefficient() -> impl Strategy<Value = QScalar> {
    (prop::collection::vec((-4i32..=4, -3i64..=3), 1..3), prop::collection::vec((0i32..=4, 1i64..=2), 0..2))
        .prop_map(|(a, b)| {
            let num = QScalar::laurent(&a);
            let den = QScalar::laurent(&b);
            if den.is_zero() {
                num
            } else {
                num.div(&den)
            }
        })
}

fn expression(n: usize) -> impl Strategy<Value = Expression> {
    prop::collection::vec((coefficient(), word(n, 4)), 0..4)
        .prop_map(|ts| ts.into_iter().fold(Expression::zero(), |acc, (c, w)| acc.add(&Expression::term(c, w))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(250))]

    #[test]
    fn print_parse_round_trip_three(e in expression(3)) {
        prop_assert_eq!(parse(&e.to_string(), d(3)).unwrap(), e);
    }

    #[test]
    fn print_parse_round_trip_five(e in expression(5)) {
        prop_assert_eq!(parse(&e.to_string(), d(5)).unwrap(), e);
    }

    #[test]
    fn normal_order_is_idempotent(w in word(4, 4)) {
        let rw = Rewriter::new(d(4));
        let nf = rw.normal_order(&Expression::word(w)).unwrap();
        prop_assert_eq!(rw.normal_order(&nf).unwrap(), nf.clone());
        prop_assert!(nf.terms().all(|(w, _)| rw.is_normal(w)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn strategies_agree_three(w in word(3, 5)) {
        let rw = Rewriter::new(d(3));
        let e = Expression::word(w);
        prop_assert_eq!(rw.normal_order_with(&e, Order::Leftmost).unwrap(), rw.normal_order_with(&e, Order::Rightmost).unwrap());
    }

    #[test]
    fn strategies_agree_four(w in word(4, 5)) {
        let rw = Rewriter::new(d(4));
        let e = Expression::word(w);
        prop_assert_eq!(rw.normal_order_with(&e, Order::Leftmost).unwrap(), rw.normal_order_with(&e, Order::Rightmost).unwrap());
    }
}

fn oracle_rep(n: usize) -> Rep {
    let dim = d(n);
    let win = if n == 3 { TruncationWindow::uniform(dim, 7, 4, -7) } else { TruncationWindow::uniform(dim, 5, 4, -5) };
    Rep::new(RepConfig::new(n, 0.6, 1.2, 0).unwrap(), &win).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn normal_form_has_the_same_matrix_three(w in word(3, 4)) {
        let rep = oracle_rep(3);
        let e = Expression::word(w);
        let nf = Rewriter::new(d(3)).normal_order(&e).unwrap();
        let r = identity_residual(&rep, &Identity::new("word", e, nf)).unwrap();
        prop_assert!(r.relative() < 1e-10, "residual {}", r.relative());
    }

    #[test]
    fn normal_form_has_the_same_matrix_four(w in word(4, 4)) {
        let rep = oracle_rep(4);
        let e = Expression::word(w);
        let nf = Rewriter::new(d(4)).normal_order(&e).unwrap();
        let r = identity_residual(&rep, &Identity::new("word", e, nf)).unwrap();
        prop_assert!(r.relative() < 1e-10, "residual {}", r.relative());
    }
}
