//! Highest weights, observable spectra, Gram positivity and the norm recursion.

use super::residual::{star_generators, star_letter};
use crate::algebra::{Expression, Letter};
use crate::error::{Error, Result};
use crate::rep::{BasisState, Rep};
use nalgebra::DMatrix;

/// Basis states annihilated by every positive root and every lowering momentum p^{-l}, l > h.
pub fn highest_weight_search(rep: &Rep) -> Result<Vec<BasisState>> {
    let dim = rep.dim();
    let rs = rep.roots();
    let mut ops = Vec::new();
    for &r in &rs.positive {
        ops.push(rep.compile(&Expression::letter(Letter::L(r.0, r.1)))?);
    }
    for l in (dim.h() + 1)..=dim.n() {
        ops.push(rep.compile(&Expression::letter(Letter::P(-l)))?);
    }
    let mut out = Vec::new();
    'states: for s in &rep.basis.states {
        for c in &ops {
            let img = rep.apply(c, s)?;
            let norm = img.out.iter().fold(0.0f64, |m, x| m.max(x.1.abs()));
            if norm > 1e-12 * img.scale.max(1e-300) {
                continue 'states;
            }
        }
        out.push(*s);
    }
    Ok(out)
}

/// The states the classification predicts inside the window.
pub fn predicted_highest_weights(rep: &Rep) -> Vec<BasisState> {
    let dim = rep.dim();
    rep.basis
        .states
        .iter()
        .filter(|s| {
            let pi_ok = (dim.h()..dim.n()).all(|i| s.pi(dim, i) == 0);
            let j_from = if dim.is_odd() { 1 } else { 2 };
            pi_ok && (j_from..=dim.n()).all(|i| s.j(i) == 0)
        })
        .copied()
        .collect()
}

/// Distinct eigenvalues of one diagonal observable with multiplicities.
#[derive(Clone, Debug)]
pub struct ObservableSpectrum {
    pub name: String,
    pub values: Vec<(f64, usize)>,
}

#[derive(Clone, Debug)]
pub struct SpectrumTable {
    pub observables: Vec<ObservableSpectrum>,
    /// (i, min j_i, whether j_i <= pi_{i-1} on every state) for i > h.
    pub pt_bounds: Vec<(i32, i32, bool)>,
}

fn group(mut v: Vec<f64>) -> Vec<(f64, usize)> {
    v.sort_by(|a, b| a.total_cmp(b));
    let mut out: Vec<(f64, usize)> = Vec::new();
    for x in v {
        match out.last_mut() {
            Some((y, k)) if (x - *y).abs() <= 1e-12 * x.abs().max(y.abs()).max(1e-300) => *k += 1,
            _ => out.push((x, 1)),
        }
    }
    out
}

pub fn spectrum_report(rep: &Rep) -> Result<SpectrumTable> {
    let dim = rep.dim();
    let states = &rep.basis.states;
    let mut observables = Vec::new();
    if dim.is_odd() {
        let v = states.iter().map(|s| rep.p0_eigenvalue(s)).collect::<Result<Vec<_>>>()?;
        observables.push(ObservableSpectrum { name: "p0".into(), values: group(v) });
    }
    for i in 1..=dim.n() {
        let v = states.iter().map(|s| rep.pp_eigenvalue(s, i)).collect::<Result<Vec<_>>>()?;
        observables.push(ObservableSpectrum { name: format!("pp{i}"), values: group(v) });
    }
    for i in 1..=dim.n() {
        let v = states.iter().map(|s| rep.k_eigenvalue(s, i)).collect::<Result<Vec<_>>>()?;
        observables.push(ObservableSpectrum { name: format!("k{i}"), values: group(v) });
        let v = states.iter().map(|s| rep.h_eigenvalue(s, i)).collect::<Result<Vec<_>>>()?;
        observables.push(ObservableSpectrum { name: format!("h{i}"), values: group(v) });
    }
    let mut pt_bounds = Vec::new();
    for i in (dim.h() + 1)..=dim.n() {
        let min_j = states.iter().map(|s| s.j(i)).min().unwrap_or(0);
        let bounded = states.iter().all(|s| s.j(i) <= s.pi(dim, i - 1));
        pt_bounds.push((i, min_j, bounded));
    }
    Ok(SpectrumTable { observables, pt_bounds })
}

#[derive(Clone, Debug)]
pub struct GramReport {
    pub size: usize,
    pub min_eigenvalue: f64,
    pub max_eigenvalue: f64,
    /// max |<s|g_a^* g_b|t> - (Gamma(g_a)s, Gamma(g_b)t)|.
    pub star_mismatch: f64,
}

/// Gram matrix of the vectors g|s> for generators g and the `n_states` deepest interior states,
/// with entries computed through the star structure.
pub fn gram_psd_check(rep: &Rep, n_states: usize) -> Result<GramReport> {
    let dim = rep.dim();
    let rs = rep.roots();
    let gens: Vec<Letter> = star_generators(rs);
    let mut states: Vec<BasisState> = rep.basis.states.clone();
    states.sort_by_key(|s| std::cmp::Reverse(rep.window().depth(dim, s)));
    states.truncate(n_states);
    if states.is_empty() {
        return Err(Error::EmptyWindow);
    }
    let mut vecs: Vec<(Letter, BasisState)> = Vec::new();
    for s in &states {
        for &g in &gens {
            vecs.push((g, *s));
        }
    }
    let direct: Vec<Vec<(BasisState, f64)>> = vecs
        .iter()
        .map(|(g, s)| rep.apply_expr(&Expression::letter(*g), s).map(|i| i.out))
        .collect::<Result<_>>()?;
    let n = vecs.len();
    let mut g_star = DMatrix::<f64>::zeros(n, n);
    let mut mismatch: f64 = 0.0;
    for a in 0..n {
        let (ga, sa) = vecs[a];
        let adj = star_letter(rs, ga).expect("generator has an adjoint");
        for b in 0..n {
            let (gb, sb) = vecs[b];
            let prod = adj.mul(&Expression::letter(gb));
            let img = rep.apply_expr(&prod, &sb)?;
            let v = img.out.iter().find(|x| x.0 == sa).map(|x| x.1).unwrap_or(0.0);
            g_star[(a, b)] = v;
            let d: f64 = direct[a]
                .iter()
                .map(|(t, x)| direct[b].iter().find(|y| y.0 == *t).map(|y| x * y.1).unwrap_or(0.0))
                .sum();
            mismatch = mismatch.max((v - d).abs());
        }
    }
    let sym = (&g_star + g_star.transpose()) * 0.5;
    let eig = sym.symmetric_eigenvalues();
    let min_eigenvalue = eig.iter().cloned().fold(f64::INFINITY, f64::min);
    let max_eigenvalue = eig.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    Ok(GramReport { size: n, min_eigenvalue, max_eigenvalue, star_mismatch: mismatch })
}

/// One step psi_{-r} -> p^{-1} psi_{-r} of the N = 3 descent from pi_0 = R.
#[derive(Clone, Debug)]
pub struct NormStep {
    pub start: i32,
    pub r: i32,
    /// ||p^{-1} psi_{-r}||^2 / ||psi_{-r}||^2 from the matrices.
    pub measured: f64,
    /// q^2 (M^2 - q^{-2r-2} m^2), m the p^0 eigenvalue of the starting vector.
    pub literal: f64,
    /// q ((p.p)_1 - q^{-2r-2} (p.p)_0), evaluated on the starting vector.
    pub consistent: f64,
}

#[derive(Clone, Debug)]
pub struct NormRecursion {
    pub steps: Vec<NormStep>,
    /// Number of applications of p^{-1} before the image vanishes, per start.
    pub annihilation: Vec<(i32, i32)>,
}

pub fn norm_recursion_check(rep: &Rep, starts: &[i32]) -> Result<NormRecursion> {
    let dim = rep.dim();
    if dim.big_n() != 3 {
        return Err(Error::InvalidParameter("the norm recursion is stated for N = 3".into()));
    }
    let q = rep.cfg.q;
    let m2 = rep.cfg.m * rep.cfg.m;
    let pm1 = rep.compile(&Expression::letter(Letter::P(-1)))?;
    let mut steps = Vec::new();
    let mut annihilation = Vec::new();
    for &big_r in starts {
        let psi0 = BasisState::new(&[big_r, 0], &[0]);
        let mval = rep.p0_eigenvalue(&psi0)?;
        let w0 = rep.pp_eigenvalue(&psi0, 0)?;
        let w1 = rep.pp_eigenvalue(&psi0, 1)?;
        let mut cur = psi0;
        let mut norm2 = 1.0;
        let mut r = 0;
        loop {
            let img = rep.apply(&pm1, &cur)?;
            let Some(&(next, amp)) = img.out.first() else { break };
            let new_norm2 = norm2 * amp * amp;
            let qr = q.powi(-2 * r - 2);
            steps.push(NormStep {
                start: big_r,
                r,
                measured: new_norm2 / norm2,
                literal: q * q * (m2 - qr * mval * mval),
                consistent: q * (w1 - qr * w0),
            });
            cur = next;
            norm2 = new_norm2;
            r += 1;
            if r > big_r + 5 {
                break;
            }
        }
        annihilation.push((big_r, r));
    }
    Ok(NormRecursion { steps, annihilation })
}
