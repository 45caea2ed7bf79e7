//! Truncated lattice representations.
//!
//! Basis vectors |pi; j> carry pi_h..pi_n (pi_i >= 0 for i < n, pi_n any integer)
//! and j_1..j_n with j_i <= pi_{i-1} for i > h. Every primitive generator maps a
//! basis vector to a multiple of one other basis vector, so words act as
//! monomial maps and can be evaluated exactly on the infinite lattice. The
//! window only decides which vectors are kept as matrix rows and columns.

mod casimir;
mod operator;

pub use casimir::{casimir_omega1_expr, projected_omega_expr};
pub use operator::{dump_operator, SparseOperator};

use crate::algebra::roots::{RootSystem, Simple};
use crate::algebra::{bold_to_shifted, Expression, Letter};
use crate::error::{Error, Result};
use crate::scalar::Dimension;
use std::collections::HashMap;
use std::fmt;

/// Largest rank n supported by the fixed-size state layout.
pub const MAX_RANK: usize = 11;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisState {
    pi: [i16; MAX_RANK + 1],
    j: [i16; MAX_RANK],
}

impl BasisState {
    /// `pi` lists pi_h..pi_n, `j` lists j_1..j_n.
    pub fn new(pi: &[i32], j: &[i32]) -> Self {
        let mut s = BasisState { pi: [0; MAX_RANK + 1], j: [0; MAX_RANK] };
        for (k, &v) in pi.iter().enumerate() {
            s.pi[k] = v as i16;
        }
        for (k, &v) in j.iter().enumerate() {
            s.j[k] = v as i16;
        }
        s
    }

    pub fn pi_vec(&self, dim: Dimension) -> Vec<i32> {
        (dim.h()..=dim.n()).map(|i| self.pi(dim, i)).collect()
    }

    pub fn j_vec(&self, dim: Dimension) -> Vec<i32> {
        (1..=dim.n()).map(|i| self.j(i)).collect()
    }

    pub fn pi(&self, dim: Dimension, i: i32) -> i32 {
        self.pi[(i - dim.h()) as usize] as i32
    }

    pub fn j(&self, i: i32) -> i32 {
        self.j[(i - 1) as usize] as i32
    }

    fn bump_pi(&mut self, dim: Dimension, i: i32, d: i32) {
        self.pi[(i - dim.h()) as usize] += d as i16;
    }

    fn bump_j(&mut self, i: i32, d: i32) {
        self.j[(i - 1) as usize] += d as i16;
    }

    pub fn display(&self, dim: Dimension) -> StateDisplay {
        StateDisplay { pi: self.pi_vec(dim), j: self.j_vec(dim) }
    }
}

pub struct StateDisplay {
    pi: Vec<i32>,
    j: Vec<i32>,
}

impl fmt::Display for StateDisplay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[i32]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "pi=({}) j=({})", join(&self.pi), join(&self.j))
    }
}

/// Parameters of the representation.
#[derive(Clone, Debug)]
pub struct RepConfig {
    pub dim: Dimension,
    pub q: f64,
    pub m: f64,
    /// Weight label w; only N = 3 admits w != 0.
    pub w: i32,
    pub p0_sign: i32,
}

impl RepConfig {
    pub fn new(n_dim: usize, q: f64, m: f64, w: i32) -> Result<Self> {
        let cfg = RepConfig { dim: Dimension::new(n_dim)?, q, m, w, p0_sign: 1 };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_p0_sign(mut self, sign: i32) -> Result<Self> {
        self.p0_sign = sign;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.q > 0.0 && self.q < 1.0) {
            return Err(Error::InvalidParameter(format!("q must satisfy 0 < q < 1, got {}", self.q)));
        }
        if !(self.m > 0.0 && self.m.is_finite()) {
            return Err(Error::InvalidParameter(format!("M must be positive and finite, got {}", self.m)));
        }
        if self.w != 0 && self.dim.big_n() != 3 {
            return Err(Error::InvalidParameter(format!(
                "w = {} is only supported for N = 3; N = {} uses the singlet w = 0",
                self.w,
                self.dim.big_n()
            )));
        }
        if self.p0_sign != 1 && self.p0_sign != -1 {
            return Err(Error::InvalidParameter(format!("p0 sign must be +1 or -1, got {}", self.p0_sign)));
        }
        if self.dim.n() as usize > MAX_RANK {
            return Err(Error::InvalidParameter(format!("N = {} exceeds the supported rank", self.dim.big_n())));
        }
        Ok(())
    }
}

/// Finite window of the lattice.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncationWindow {
    /// Upper bounds for pi_h..pi_{n-1}.
    pub pmax: Vec<i32>,
    /// pi_n ranges over [-smin, smax].
    pub smin: i32,
    pub smax: i32,
    /// Lower bounds for j_1..j_n.
    pub jmin: Vec<i32>,
    /// Upper bound for j_1 when N is even.
    pub j1max: i32,
}

impl TruncationWindow {
    /// Uniform window: pi_i <= pmax, |pi_n| <= s, j_i >= jmin, j_1 <= -jmin for even N.
    pub fn uniform(dim: Dimension, pmax: i32, s: i32, jmin: i32) -> Self {
        let n = dim.n();
        TruncationWindow {
            pmax: vec![pmax; (n - dim.h()) as usize],
            smin: s,
            smax: s,
            jmin: vec![jmin; n as usize],
            j1max: -jmin,
        }
    }

    pub fn validate(&self, dim: Dimension) -> Result<()> {
        let n = dim.n();
        if self.pmax.len() != (n - dim.h()) as usize {
            return Err(Error::InvalidParameter(format!(
                "window needs {} pmax entries for N = {}, got {}",
                n - dim.h(),
                dim.big_n(),
                self.pmax.len()
            )));
        }
        if self.jmin.len() != n as usize {
            return Err(Error::InvalidParameter(format!(
                "window needs {} jmin entries for N = {}, got {}",
                n,
                dim.big_n(),
                self.jmin.len()
            )));
        }
        if self.pmax.iter().any(|&p| p < 0) || self.smin < -self.smax {
            return Err(Error::EmptyWindow);
        }
        let lim = i16::MAX as i32 / 2;
        let big = self.pmax.iter().chain(self.jmin.iter()).any(|v| v.abs() > lim)
            || self.smin.abs() > lim
            || self.smax.abs() > lim
            || self.j1max.abs() > lim;
        if big {
            return Err(Error::InvalidParameter("window bounds too large".into()));
        }
        Ok(())
    }

    pub fn contains(&self, dim: Dimension, s: &BasisState) -> bool {
        let h = dim.h();
        let n = dim.n();
        for i in h..n {
            if s.pi(dim, i) > self.pmax[(i - h) as usize] {
                return false;
            }
        }
        let pn = s.pi(dim, n);
        if pn < -self.smin || pn > self.smax {
            return false;
        }
        for i in 1..=n {
            if s.j(i) < self.jmin[(i - 1) as usize] {
                return false;
            }
        }
        !(h == 1 && s.j(1) > self.j1max)
    }

    /// Number of single-letter steps needed to leave the window from s.
    pub fn depth(&self, dim: Dimension, s: &BasisState) -> i32 {
        let h = dim.h();
        let n = dim.n();
        let mut d = i32::MAX;
        for i in h..n {
            d = d.min(self.pmax[(i - h) as usize] - s.pi(dim, i) + 1);
        }
        let pn = s.pi(dim, n);
        d = d.min(self.smax - pn + 1).min(pn + self.smin + 1);
        for i in 1..=n {
            d = d.min(s.j(i) - self.jmin[(i - 1) as usize] + 1);
        }
        if h == 1 {
            d = d.min(self.j1max - s.j(1) + 1);
        }
        d
    }
}

/// Ordered basis of a window.
#[derive(Clone, Debug)]
pub struct Basis {
    pub dim: Dimension,
    pub window: TruncationWindow,
    pub states: Vec<BasisState>,
    index: HashMap<BasisState, usize>,
}

impl Basis {
    pub fn index_of(&self, s: &BasisState) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }
}

/// Lexicographically ordered basis states of the window.
pub fn enumerate_basis(dim: Dimension, window: &TruncationWindow) -> Result<Basis> {
    window.validate(dim)?;
    let h = dim.h();
    let n = dim.n();
    let mut pis: Vec<Vec<i32>> = vec![Vec::new()];
    for i in h..=n {
        let range: Vec<i32> = if i < n {
            (0..=window.pmax[(i - h) as usize]).collect()
        } else {
            (-window.smin..=window.smax).collect()
        };
        pis = pis
            .into_iter()
            .flat_map(|p| {
                range.iter().map(move |&v| {
                    let mut p = p.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    let mut states = Vec::new();
    for pi in &pis {
        let mut js: Vec<Vec<i32>> = vec![Vec::new()];
        for i in 1..=n {
            let lo = window.jmin[(i - 1) as usize];
            let hi = if i > h { pi[(i - 1 - h) as usize] } else { window.j1max };
            js = js
                .into_iter()
                .flat_map(|j| {
                    (lo..=hi).map(move |v| {
                        let mut j = j.clone();
                        j.push(v);
                        j
                    })
                })
                .collect();
        }
        for j in js {
            states.push(BasisState::new(pi, &j));
        }
    }
    if states.is_empty() {
        return Err(Error::EmptyWindow);
    }
    states.sort();
    let index = states.iter().enumerate().map(|(k, s)| (*s, k)).collect();
    Ok(Basis { dim, window: window.clone(), states, index })
}

/// Expression with numerical coefficients over primitive letters.
#[derive(Clone, Debug, Default)]
pub struct Compiled {
    pub terms: Vec<(f64, Vec<Letter>)>,
}

impl Compiled {
    /// Longest word, i.e. how far one application can move a state.
    pub fn reach(&self) -> usize {
        self.terms.iter().map(|(_, w)| w.len()).max().unwrap_or(0)
    }
}

/// Image of one basis vector under a compiled expression.
#[derive(Clone, Debug, Default)]
pub struct Image {
    /// Nonzero components, sorted by state.
    pub out: Vec<(BasisState, f64)>,
    /// Largest |coefficient * amplitude| of a single word.
    pub scale: f64,
    /// Whether every intermediate and final state stayed inside the window.
    pub interior: bool,
}

/// A representation: parameters, window and generator actions.
#[derive(Clone, Debug)]
pub struct Rep {
    pub cfg: RepConfig,
    pub basis: Basis,
    rs: RootSystem,
}

impl Rep {
    pub fn new(cfg: RepConfig, window: &TruncationWindow) -> Result<Self> {
        cfg.validate()?;
        let basis = enumerate_basis(cfg.dim, window)?;
        let rs = RootSystem::new(cfg.dim);
        Ok(Rep { cfg, basis, rs })
    }

    pub fn dim(&self) -> Dimension {
        self.cfg.dim
    }

    pub fn roots(&self) -> &RootSystem {
        &self.rs
    }

    pub fn window(&self) -> &TruncationWindow {
        &self.basis.window
    }

    /// sum_{k=l}^{n} (1 + pi_k).
    fn sig(&self, s: &BasisState, l: i32) -> i32 {
        let dim = self.dim();
        (l.max(dim.h())..=dim.n()).map(|k| 1 + s.pi(dim, k)).sum()
    }

    fn qp(&self, e: i32) -> f64 {
        self.cfg.q.powi(e)
    }

    /// Eigenvalue of (p.p)_i.
    pub fn pp_value(&self, s: &BasisState, i: i32) -> f64 {
        self.cfg.m * self.cfg.m * self.qp(2 * self.sig(s, i))
    }

    /// Eigenvalue of p^0 (odd N).
    pub fn p0_value(&self, s: &BasisState) -> f64 {
        self.cfg.p0_sign as f64 * self.cfg.m * (1.0 + 1.0 / self.cfg.q).sqrt() * self.qp(self.sig(s, 0))
    }

    /// Exponent of q in the k^i eigenvalue.
    pub fn k_exponent(&self, s: &BasisState, i: i32) -> i32 {
        let w = if i == 1 && self.dim().big_n() == 3 { self.cfg.w } else { 0 };
        2 * s.j(i) + w
    }

    /// Applies a primitive letter. `None` means the image is exactly zero.
    pub fn apply_letter(&self, x: Letter, s: &BasisState) -> Result<Option<(BasisState, f64)>> {
        let dim = self.dim();
        let q = self.cfg.q;
        let mm = self.cfg.m;
        let h = dim.h();
        let mut t = *s;
        match x {
            Letter::Lam(e) => {
                t.bump_pi(dim, dim.n(), e);
                Ok(Some((t, 1.0)))
            }
            Letter::K(i, e2) => Ok(Some((t, q.powf(self.k_exponent(s, i) as f64 * e2 as f64 / 2.0)))),
            Letter::W(i, e) => Ok(Some((t, self.pp_value(s, i).powi(e)))),
            Letter::P(0) => Ok(Some((t, self.p0_value(s)))),
            Letter::P(l) if h == 1 && l.abs() == 1 => {
                t.bump_j(1, l);
                Ok(Some((t, mm * self.qp(self.sig(s, 1)))))
            }
            Letter::P(l) if l > 0 => {
                let pprev = s.pi(dim, l - 1);
                t.bump_pi(dim, l - 1, 1);
                t.bump_j(l, 1);
                let amp = mm * (1.0 - self.qp(2 * (pprev + 1))).sqrt() * self.qp(self.sig(s, l));
                Ok(Some((t, amp)))
            }
            Letter::P(l) => {
                let l = -l;
                let pprev = s.pi(dim, l - 1);
                if pprev == 0 {
                    return Ok(None);
                }
                t.bump_pi(dim, l - 1, -1);
                t.bump_j(l, -1);
                let amp = mm * (1.0 - self.qp(2 * pprev)).sqrt() * q.powf(-dim.rho(l) + self.sig(s, l) as f64);
                Ok(Some((t, amp)))
            }
            Letter::L(a, b) => self.apply_simple(a, b, s),
            Letter::BL(..) => Err(Error::Unsupported(format!("{x} must be lowered before application"))),
        }
    }

    /// Shifts of a simple root: (index, delta) pairs applied to j.
    fn simple_shift(simple: Simple, raising: bool) -> [(i32, i32); 2] {
        let sg = if raising { 1 } else { -1 };
        match simple {
            Simple::Chain(1) => [(1, sg), (1, 0)],
            Simple::Chain(m) => [(m, sg), (m - 1, -sg)],
            Simple::Twelve => [(1, sg), (2, sg)],
        }
    }

    fn in_domain(&self, s: &BasisState) -> bool {
        let dim = self.dim();
        (dim.h() + 1..=dim.n()).all(|i| s.j(i) <= s.pi(dim, i - 1))
    }

    /// Squared raising amplitude at the source of E, with an exact zero test.
    fn g_sq(&self, simple: Simple, s: &BasisState) -> Option<f64> {
        let dim = self.dim();
        let q = self.cfg.q;
        let qp = |e: i32| q.powi(e);
        let oq2 = 1.0 - q * q;
        match simple {
            Simple::Chain(1) => {
                let p0 = s.pi(dim, 0);
                let a = p0 - s.j(1);
                if a == 0 {
                    return None;
                }
                let w = self.cfg.w;
                Some(qp(-2 - 2 * p0) * (1.0 - qp(a)) * (1.0 + qp(a - w)) / (oq2 * (1.0 - q)))
            }
            Simple::Chain(2) if dim.h() == 1 => {
                let p1 = s.pi(dim, 1);
                let a = p1 - s.j(2);
                if a == 0 {
                    return None;
                }
                let sum = s.j(1) + s.j(2);
                Some(qp(2 * sum - 4 * p1 - 4 + 2 * a) * (1.0 - qp(2 * a)) / (oq2 * oq2))
            }
            Simple::Twelve => {
                let p1 = s.pi(dim, 1);
                let a = p1 - s.j(2);
                if a == 0 {
                    return None;
                }
                let sum = s.j(2) - s.j(1);
                Some(qp(2 * sum - 4 * p1 - 4 + 2 * a) * (1.0 - qp(2 * a)) / (oq2 * oq2))
            }
            Simple::Chain(m) => {
                let am = s.pi(dim, m - 1) - s.j(m);
                if am == 0 {
                    return None;
                }
                let am1 = s.pi(dim, m - 2) - s.j(m - 1);
                let e = dim.rho2(m - 1) - 4 + 2 * (s.pi(dim, m - 2) - s.pi(dim, m - 1)) - 2 * am1;
                Some(qp(e) * (1.0 - qp(2 * am)) * (1.0 - qp(2 * am1 + 2)) / (oq2 * oq2))
            }
        }
    }

    fn apply_simple(&self, a: i32, b: i32, s: &BasisState) -> Result<Option<(BasisState, f64)>> {
        let (simple, raising) = self
            .rs
            .simple_of((a, b))
            .ok_or_else(|| Error::Unsupported(format!("L{a}{b} is not simple; lower it first")))?;
        let mut t = *s;
        for (i, d) in Self::simple_shift(simple, raising) {
            if d != 0 {
                t.bump_j(i, d);
            }
        }
        if !self.in_domain(&t) {
            return Ok(None);
        }
        if raising {
            Ok(self.g_sq(simple, s).map(|g| (t, g.sqrt())))
        } else {
            let pre = match simple {
                Simple::Chain(1) => self.cfg.q.powf(1.5),
                _ => self.cfg.q * self.cfg.q,
            };
            Ok(self.g_sq(simple, &t).map(|g| (t, pre * g.sqrt())))
        }
    }

    /// Rewrites derived and bold roots in terms of primitive letters.
    pub fn lower(&self, e: &Expression) -> Result<Expression> {
        let rs = &self.rs;
        let mut err = None;
        let mut step = |l: Letter| -> Option<Expression> {
            let r = l.root()?;
            let res = (|| -> Result<Option<Expression>> {
                if !l.is_bold() {
                    if rs.is_simple(r) {
                        return Ok(None);
                    }
                    return Ok(Some(rs.derived_root(r, false)?));
                }
                let d = rs.derived_root(r, true)?;
                Ok(Some(d.substitute(&mut |x| match x {
                    Letter::BL(i, j) => bold_to_shifted(rs, (i, j)),
                    _ => None,
                })))
            })();
            match res {
                Ok(v) => v,
                Err(x) => {
                    err = Some(x);
                    None
                }
            }
        };
        let out = e.substitute(&mut step);
        match err {
            Some(x) => Err(x),
            None => Ok(out),
        }
    }

    pub fn compile(&self, e: &Expression) -> Result<Compiled> {
        for x in e.letters() {
            x.validate(self.dim())?;
        }
        let low = self.lower(e)?;
        Ok(Compiled { terms: low.numeric(self.cfg.q) })
    }

    /// Applies a compiled expression to a basis vector on the full lattice.
    pub fn apply(&self, c: &Compiled, s: &BasisState) -> Result<Image> {
        let dim = self.dim();
        let win = self.window();
        let mut out: Vec<(BasisState, f64)> = Vec::with_capacity(c.terms.len());
        let mut scale: f64 = 0.0;
        let mut interior = win.contains(dim, s);
        'words: for (coef, w) in &c.terms {
            let mut cur = *s;
            let mut amp = *coef;
            for &x in w.iter().rev() {
                match self.apply_letter(x, &cur)? {
                    None => continue 'words,
                    Some((t, a)) => {
                        cur = t;
                        amp *= a;
                        if !win.contains(dim, &cur) {
                            interior = false;
                        }
                    }
                }
            }
            if amp != 0.0 {
                scale = scale.max(amp.abs());
                out.push((cur, amp));
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(BasisState, f64)> = Vec::with_capacity(out.len());
        for (t, a) in out {
            match merged.last_mut() {
                Some((u, b)) if *u == t => *b += a,
                _ => merged.push((t, a)),
            }
        }
        Ok(Image { out: merged, scale, interior })
    }

    pub fn apply_expr(&self, e: &Expression, s: &BasisState) -> Result<Image> {
        self.apply(&self.compile(e)?, s)
    }

    pub fn build(&self, e: &Expression) -> Result<SparseOperator> {
        SparseOperator::build(self, e)
    }

    pub fn p0_eigenvalue(&self, s: &BasisState) -> Result<f64> {
        if !self.dim().is_odd() {
            return Err(Error::InvalidParameter("p0 exists only for odd N".into()));
        }
        Ok(self.p0_value(s))
    }

    pub fn pp_eigenvalue(&self, s: &BasisState, i: i32) -> Result<f64> {
        Letter::W(i, 1).validate(self.dim())?;
        Ok(self.pp_value(s, i))
    }

    pub fn k_eigenvalue(&self, s: &BasisState, i: i32) -> Result<f64> {
        Letter::K(i, 2).validate(self.dim())?;
        Ok(self.cfg.q.powi(self.k_exponent(s, i)))
    }

    /// h_i = log_{q^2} of the k^i eigenvalue.
    pub fn h_eigenvalue(&self, s: &BasisState, i: i32) -> Result<f64> {
        Letter::K(i, 2).validate(self.dim())?;
        Ok(self.k_exponent(s, i) as f64 / 2.0)
    }
}
