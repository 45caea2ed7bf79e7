//! Exact scalars: rational functions in s = q^{1/2} over Q.
//!
//! A value is stored as s^shift * num(s) / den(s) with num, den ordinary
//! polynomials, both with nonzero constant term, den monic and coprime to num.
//! This form is canonical, so equality is structural.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

type Poly = Vec<BigRational>;

fn trim(p: &mut Poly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_add(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    trim(&mut out);
    out
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn poly_scale(a: &Poly, c: &BigRational) -> Poly {
    a.iter().map(|x| x * c).collect()
}

fn shift_up(a: &Poly, k: usize) -> Poly {
    if a.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); k];
    out.extend(a.iter().cloned());
    out
}

fn poly_divrem(a: &Poly, b: &Poly) -> (Poly, Poly) {
    let mut rem = a.clone();
    trim(&mut rem);
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lead = b.last().expect("division by zero polynomial");
    let mut quot = vec![BigRational::zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() && !rem.is_empty() {
        let k = rem.len() - b.len();
        let c = rem.last().unwrap() / lead;
        for (i, y) in b.iter().enumerate() {
            rem[k + i] -= &c * y;
        }
        quot[k] = c;
        rem.pop();
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

fn make_monic(a: &Poly) -> Poly {
    match a.last() {
        Some(lead) => poly_scale(a, &lead.recip()),
        None => Vec::new(),
    }
}

fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    let mut x = a.clone();
    let mut y = b.clone();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = poly_divrem(&x, &y);
        x = y;
        y = r;
    }
    make_monic(&x)
}

fn low_order(p: &Poly) -> usize {
    p.iter().position(|c| !c.is_zero()).unwrap_or(0)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QScalar {
    shift: i32,
    num: Poly,
    den: Poly,
}

impl QScalar {
    pub fn zero() -> Self {
        QScalar { shift: 0, num: Vec::new(), den: vec![BigRational::one()] }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(k: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(k)))
    }

    pub fn from_ratio(a: i64, b: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(a), BigInt::from(b)))
    }

    pub fn from_rational(c: BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        QScalar { shift: 0, num: vec![c], den: vec![BigRational::one()] }
    }

    /// s^e, i.e. q^{e/2}.
    pub fn s_pow(e: i32) -> Self {
        QScalar { shift: e, num: vec![BigRational::one()], den: vec![BigRational::one()] }
    }

    /// q^k for integer k.
    pub fn q_pow(k: i32) -> Self {
        Self::s_pow(2 * k)
    }

    pub fn q() -> Self {
        Self::s_pow(2)
    }

    /// Laurent polynomial sum c_e s^e from (exponent, coefficient) pairs.
    pub fn laurent(terms: &[(i32, i64)]) -> Self {
        terms.iter().fold(Self::zero(), |acc, &(e, c)| acc + Self::from_int(c) * Self::s_pow(e))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn build(shift: i32, num: Poly, den: Poly) -> Self {
        let mut num = num;
        let mut den = den;
        trim(&mut num);
        trim(&mut den);
        assert!(!den.is_empty(), "zero denominator");
        if num.is_empty() {
            return Self::zero();
        }
        let ln = low_order(&num);
        let ld = low_order(&den);
        let shift = shift + ln as i32 - ld as i32;
        let mut num: Poly = num[ln..].to_vec();
        let mut den: Poly = den[ld..].to_vec();
        if den.len() > 1 {
            let g = poly_gcd(&num, &den);
            if g.len() > 1 {
                num = poly_divrem(&num, &g).0;
                den = poly_divrem(&den, &g).0;
            }
        }
        let lead = den.last().unwrap().clone();
        if !lead.is_one() {
            let inv = lead.recip();
            num = poly_scale(&num, &inv);
            den = poly_scale(&den, &inv);
        }
        QScalar { shift, num, den }
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero scalar");
        Self::build(-self.shift, self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Self {
        self * &other.inv()
    }

    pub fn pow(&self, k: i32) -> Self {
        let base = if k < 0 { self.inv() } else { self.clone() };
        let mut out = Self::one();
        for _ in 0..k.unsigned_abs() {
            out = &out * &base;
        }
        out
    }

    /// Value at s = q^{1/2}.
    pub fn eval_s(&self, s: f64) -> f64 {
        let horner = |p: &Poly| p.iter().rev().fold(0.0, |acc, c| acc * s + c.to_f64().unwrap_or(f64::NAN));
        s.powi(self.shift) * horner(&self.num) / horner(&self.den)
    }

    pub fn eval(&self, q: f64) -> f64 {
        self.eval_s(q.sqrt())
    }

    /// Single monomial c * s^e with c rational, if the value has that form.
    pub fn as_monomial(&self) -> Option<(BigRational, i32)> {
        if self.den.len() == 1 && self.num.len() == 1 {
            Some((self.num[0].clone(), self.shift))
        } else {
            None
        }
    }

    fn is_polynomial(&self) -> bool {
        self.den.len() == 1
    }

    /// Sign of the highest-power numerator coefficient, which is what prints first.
    fn looks_negative(&self) -> bool {
        self.num.last().is_some_and(|c| c.is_negative())
    }
}

impl Default for QScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl Add for &QScalar {
    type Output = QScalar;
    fn add(self, o: &QScalar) -> QScalar {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let base = self.shift.min(o.shift);
        let a = shift_up(&self.num, (self.shift - base) as usize);
        let b = shift_up(&o.num, (o.shift - base) as usize);
        if self.den == o.den {
            return QScalar::build(base, poly_add(&a, &b), self.den.clone());
        }
        let num = poly_add(&poly_mul(&a, &o.den), &poly_mul(&b, &self.den));
        QScalar::build(base, num, poly_mul(&self.den, &o.den))
    }
}

impl Mul for &QScalar {
    type Output = QScalar;
    fn mul(self, o: &QScalar) -> QScalar {
        if self.is_zero() || o.is_zero() {
            return QScalar::zero();
        }
        let num = poly_mul(&self.num, &o.num);
        if self.is_polynomial() && o.is_polynomial() {
            return QScalar { shift: self.shift + o.shift, num, den: vec![BigRational::one()] };
        }
        QScalar::build(self.shift + o.shift, num, poly_mul(&self.den, &o.den))
    }
}

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar { shift: self.shift, num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }
}

impl Sub for &QScalar {
    type Output = QScalar;
    fn sub(self, o: &QScalar) -> QScalar {
        self + &(-o)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QScalar {
            type Output = QScalar;
            fn $m(self, o: QScalar) -> QScalar {
                (&self).$m(&o)
            }
        }
        impl $tr<&QScalar> for QScalar {
            type Output = QScalar;
            fn $m(self, o: &QScalar) -> QScalar {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        -&self
    }
}

fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn fmt_qpow(e: i32) -> String {
    match e {
        2 => "q".to_string(),
        e if e % 2 == 0 => format!("q^{{{}}}", e / 2),
        e => format!("q^{{{}/2}}", e),
    }
}

/// Laurent polynomial s^shift * p printed as a sum of q-powers, highest power first.
fn fmt_laurent(shift: i32, p: &Poly) -> (String, usize) {
    let mut parts: Vec<(bool, String)> = Vec::new();
    for (k, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let e = shift + k as i32;
        let mag = c.abs();
        let body = match (e, mag.is_one()) {
            (0, _) => fmt_rational(&mag),
            (_, true) => fmt_qpow(e),
            (_, false) => format!("{}*{}", fmt_rational(&mag), fmt_qpow(e)),
        };
        parts.push((c.is_negative(), body));
    }
    let count = parts.len();
    let mut out = String::new();
    for (i, (neg, body)) in parts.into_iter().enumerate() {
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    (out, count)
}

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let (num, nterms) = fmt_laurent(self.shift, &self.num);
        if self.is_polynomial() {
            let c = &self.den[0];
            debug_assert!(c.is_one());
            return if nterms > 1 { write!(f, "({num})") } else { write!(f, "{num}") };
        }
        let (den, dterms) = fmt_laurent(0, &self.den);
        let num = if nterms > 1 { format!("({num})") } else { num };
        let den = if dterms > 1 { format!("({den})") } else { den };
        write!(f, "{num}/{den}")
    }
}

impl fmt::Debug for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Printing helpers for expressions: the term sign and the magnitude text.
pub(crate) fn split_sign(c: &QScalar) -> (bool, QScalar) {
    if c.looks_negative() {
        (true, -c)
    } else {
        (false, c.clone())
    }
}
