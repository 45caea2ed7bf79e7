//! The q -> 1 limit of the singlet representation.
//!
//! A classical momentum mu = (mu_h, .., mu_n) is approximated by the lattice point
//! pi~(mu, q) whose (p.p)_i eigenvalues sit just below mu_i. The renormalized kets
//! alpha(q, mu) |pi~; j> become delta-normalized as q -> 1.
//!
//! Cells and quadrature live in the ratio coordinates z_i = mu_i / mu_{i+1}
//! (z_0 = mu_0^2 / mu_1), where a lattice cell is a box.

use crate::error::{Error, Result};
use crate::scalar::Dimension;
use gauss_quad::GaussLegendre;
use rayon::prelude::*;
use std::num::NonZeroUsize;

/// Default quadrature order per ratio coordinate.
pub const DEFAULT_NODES: usize = 24;

/// Classical eigenvalues of (p.p)_h..(p.p)_n; entry 0 is p_0 when N is odd.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalMomentum {
    pub dim: Dimension,
    pub m: f64,
    pub mu: Vec<f64>,
}

impl ClassicalMomentum {
    pub fn new(dim: Dimension, m: f64, mu: Vec<f64>) -> Result<Self> {
        let c = ClassicalMomentum { dim, m, mu };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        let want = (self.dim.n() - self.dim.h() + 1) as usize;
        if self.mu.len() != want {
            return Err(Error::Domain(format!(
                "N = {} needs {want} momentum components, got {}",
                self.dim.big_n(),
                self.mu.len()
            )));
        }
        if !(self.m > 0.0 && self.m.is_finite()) {
            return Err(Error::Domain(format!("M must be positive, got {}", self.m)));
        }
        if self.mu.iter().any(|x| !(*x > 0.0 && x.is_finite())) {
            return Err(Error::Domain("momentum components must be positive and finite".into()));
        }
        for i in 1..self.dim.n() {
            if self.get(i) > self.get(i + 1) {
                return Err(Error::Domain(format!("ordering mu_{i} <= mu_{} violated", i + 1)));
            }
        }
        if self.dim.is_odd() && self.get(0) * self.get(0) > self.get(1) {
            return Err(Error::Domain("ordering mu_0^2 <= mu_1 violated".into()));
        }
        Ok(())
    }

    /// mu_i for i in h..=n+1, with mu_{n+1} = M^2.
    pub fn get(&self, i: i32) -> f64 {
        if i == self.dim.n() + 1 {
            self.m * self.m
        } else {
            self.mu[(i - self.dim.h()) as usize]
        }
    }

    /// Ratio coordinates z_h..z_n.
    pub fn ratios(&self) -> Vec<f64> {
        ratios_of(self.dim, self.m, &self.mu)
    }
}

fn ratios_of(dim: Dimension, m: f64, mu: &[f64]) -> Vec<f64> {
    let h = dim.h();
    let at = |i: i32| if i == dim.n() + 1 { m * m } else { mu[(i - h) as usize] };
    (h..=dim.n())
        .map(|i| if i == 0 { at(0) * at(0) / at(1) } else { at(i) / at(i + 1) })
        .collect()
}

/// Inverse of the ratio map.
fn momentum_of(dim: Dimension, m: f64, z: &[f64]) -> Vec<f64> {
    let h = dim.h();
    let mut mu = vec![0.0; z.len()];
    let mut acc = m * m;
    for i in (1..=dim.n()).rev() {
        acc *= z[(i - h) as usize];
        mu[(i - h) as usize] = acc;
    }
    if h == 0 {
        mu[0] = (z[0] * mu[1]).sqrt();
    }
    mu
}

/// |d mu / d z| of the ratio map.
fn jacobian(dim: Dimension, m: f64, z: &[f64]) -> f64 {
    let h = dim.h();
    let n = dim.n();
    // d mu_i / d z_i = mu_i / z_i on the triangular part.
    let mu = momentum_of(dim, m, z);
    let mut j = 1.0;
    for i in 1..=n {
        j *= mu[(i - h) as usize] / z[(i - h) as usize];
    }
    if h == 0 {
        j *= mu[0] / (2.0 * z[0]);
    }
    j
}

fn check_q(q: f64) -> Result<()> {
    if q > 0.0 && q < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("the limit construction needs 0 < q < 1, got {q}")))
    }
}

fn log_q2(x: f64, q: f64) -> f64 {
    x.ln() / (q * q).ln()
}

/// The lattice point pi~(mu, q), components h..n.
pub fn pi_tilde(mu: &ClassicalMomentum, q: f64) -> Result<Vec<i32>> {
    check_q(q)?;
    mu.validate()?;
    let out: Vec<i32> = mu.ratios().iter().map(|&z| log_q2(z, q).floor() as i32).collect();
    let n_idx = out.len() - 1;
    if out[..n_idx].iter().any(|&p| p < 0) {
        return Err(Error::Domain("pi~ has a negative component below pi_n".into()));
    }
    Ok(out)
}

/// Lattice cell of pi in ratio coordinates, (q^{2 pi_i + 2}, q^{2 pi_i}]: the ratios whose
/// integral part of log_{q^2} is pi_i.
pub fn cell(pi: &[i32], q: f64) -> Vec<(f64, f64)> {
    pi.iter().map(|&p| (q.powi(2 * p + 2), q.powi(2 * p))).collect()
}

/// Eigenvalues of (p.p)_i at the lattice point pi; entry 0 is p_0 (positive branch) for odd N.
pub fn eigenvalues(dim: Dimension, m: f64, q: f64, pi: &[i32]) -> Vec<f64> {
    let h = dim.h();
    let sig = |l: i32| -> i32 { (l..=dim.n()).map(|k| 1 + pi[(k - h) as usize]).sum() };
    (h..=dim.n())
        .map(|i| {
            if i == 0 {
                m * (1.0 + 1.0 / q).sqrt() * q.powi(sig(0))
            } else {
                m * m * q.powi(2 * sig(i))
            }
        })
        .collect()
}

/// Normalization making the renormalized kets delta-normalized in the limit.
pub fn alpha_norm(mu: &ClassicalMomentum, q: f64) -> Result<f64> {
    check_q(q)?;
    mu.validate()?;
    Ok(alpha_raw(mu.dim, &mu.mu, q))
}

fn alpha_raw(dim: Dimension, mu: &[f64], q: f64) -> f64 {
    let h = dim.h();
    let mut a = 1.0;
    for i in 1..=dim.n() {
        a /= (mu[(i - h) as usize] * (q.powi(-2) - 1.0)).sqrt();
    }
    if h == 0 {
        a /= (mu[0] * (1.0 / q - 1.0) / 2.0).sqrt();
    }
    a
}

/// D(mu', mu): alpha(mu') alpha(mu) when mu' lies in the lattice cell of mu, else 0.
pub fn overlap_kernel(mu_p: &ClassicalMomentum, mu: &ClassicalMomentum, q: f64) -> Result<f64> {
    if mu_p.dim != mu.dim || mu_p.m != mu.m {
        return Err(Error::Domain("momenta belong to different representations".into()));
    }
    let pi = pi_tilde(mu, q)?;
    mu_p.validate()?;
    let inside = cell(&pi, q).iter().zip(mu_p.ratios()).all(|(&(a, b), z)| z > a && z <= b);
    if !inside {
        return Ok(0.0);
    }
    Ok(alpha_raw(mu.dim, &mu_p.mu, q) * alpha_raw(mu.dim, &mu.mu, q))
}

/// Smooth test functions for the delta-convergence check.
#[derive(Clone, Debug, PartialEq)]
pub enum TestFunction {
    Constant(f64),
    /// exp(-|mu' - center|^2 / (2 width^2)).
    Gaussian { center: Vec<f64>, width: f64 },
    /// sum_k c_k s^k with s the sum of the components.
    Polynomial(Vec<f64>),
}

impl TestFunction {
    pub fn eval(&self, mu: &[f64]) -> f64 {
        match self {
            TestFunction::Constant(c) => *c,
            TestFunction::Gaussian { center, width } => {
                let d2: f64 = mu.iter().zip(center).map(|(a, b)| (a - b) * (a - b)).sum();
                (-d2 / (2.0 * width * width)).exp()
            }
            TestFunction::Polynomial(c) => {
                let s: f64 = mu.iter().sum();
                c.iter().rev().fold(0.0, |acc, ck| acc * s + ck)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DeltaRow {
    pub q: f64,
    pub integral: f64,
    pub error: f64,
    pub pi_tilde: Vec<i32>,
    pub alpha: f64,
}

/// int d mu' D(mu', mu) f(mu'), by a tensor Gauss-Legendre rule on the cell of mu.
pub fn delta_integral(f: &TestFunction, mu: &ClassicalMomentum, q: f64, nodes: usize) -> Result<DeltaRow> {
    let pi = pi_tilde(mu, q)?;
    let alpha = alpha_raw(mu.dim, &mu.mu, q);
    let nodes = NonZeroUsize::new(nodes).ok_or_else(|| Error::InvalidParameter("quadrature needs nodes".into()))?;
    let rule = GaussLegendre::new(nodes);
    let pairs = rule.as_node_weight_pairs();
    let boxes = cell(&pi, q);
    let d = boxes.len();
    let mut idx = vec![0usize; d];
    let mut z = vec![0.0; d];
    let mut total = 0.0;
    loop {
        let mut w = 1.0;
        for k in 0..d {
            let (a, b) = boxes[k];
            let (x, wx) = pairs[idx[k]];
            z[k] = 0.5 * ((b - a) * x + (b + a));
            w *= 0.5 * (b - a) * wx;
        }
        let mp = momentum_of(mu.dim, mu.m, &z);
        let v = f.eval(&mp);
        if !v.is_finite() {
            return Err(Error::Domain("test function is not finite on the cell".into()));
        }
        total += w * jacobian(mu.dim, mu.m, &z) * alpha_raw(mu.dim, &mp, q) * v;
        let mut k = 0;
        loop {
            if k == d {
                let integral = alpha * total;
                if !integral.is_finite() {
                    return Err(Error::Domain("quadrature produced a non-finite value".into()));
                }
                let error = (integral - f.eval(&mu.mu)).abs();
                return Ok(DeltaRow { q, integral, error, pi_tilde: pi, alpha });
            }
            idx[k] += 1;
            if idx[k] < pairs.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Delta-convergence table along a q sequence, evaluated in parallel and kept in input order.
pub fn delta_convergence(f: &TestFunction, mu: &ClassicalMomentum, qs: &[f64], nodes: usize) -> Result<Vec<DeltaRow>> {
    qs.par_iter().map(|&q| delta_integral(f, mu, q, nodes)).collect()
}

/// q_k = 1 - 2^{-k} for k in kmin..=kmax.
pub fn q_sequence(kmin: i32, kmax: i32) -> Vec<f64> {
    (kmin..=kmax).map(|k| 1.0 - 0.5f64.powi(k)).collect()
}

/// |c_i(q, pi~) - mu_i| for each component; entry 0 compares p_0 with mu_0 when N is odd.
pub fn eigenvalue_errors(mu: &ClassicalMomentum, q: f64) -> Result<Vec<f64>> {
    let pi = pi_tilde(mu, q)?;
    let c = eigenvalues(mu.dim, mu.m, q, &pi);
    Ok(c.iter().zip(&mu.mu).map(|(a, b)| (a - b).abs()).collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct PtRow {
    pub q: f64,
    /// pi~_{i-1} for i = h+1..n: the upper bound on j_i.
    pub bounds: Vec<i32>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PtReport {
    pub rows: Vec<PtRow>,
    /// Indices i with mu_{i-1} = mu_i, where the bound stays at 0.
    pub degenerate: Vec<i32>,
}

impl PtReport {
    /// Whether every non-degenerate bound is nondecreasing along the sequence up to `slack`.
    pub fn monotone(&self, slack: i32) -> bool {
        self.rows.windows(2).all(|w| w[0].bounds.iter().zip(&w[1].bounds).all(|(a, b)| *b + slack >= *a))
    }
}

/// How the upper bounds j_i <= pi~_{i-1} move as q -> 1.
pub fn pt_restoration(mu: &ClassicalMomentum, qs: &[f64]) -> Result<PtReport> {
    let dim = mu.dim;
    let h = dim.h();
    let rows = qs
        .iter()
        .map(|&q| {
            let pi = pi_tilde(mu, q)?;
            Ok(PtRow { q, bounds: ((h + 1)..=dim.n()).map(|i| pi[(i - 1 - h) as usize]).collect() })
        })
        .collect::<Result<Vec<_>>>()?;
    let z = mu.ratios();
    let degenerate = ((h + 1)..=dim.n()).filter(|&i| z[(i - 1 - h) as usize] == 1.0).collect();
    Ok(PtReport { rows, degenerate })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mom(n: usize, mu: &[f64]) -> ClassicalMomentum {
        ClassicalMomentum::new(Dimension::new(n).unwrap(), 1.0, mu.to_vec()).unwrap()
    }

    #[test]
    fn ratio_map_round_trips() {
        for (n, mu) in [(4usize, vec![0.5, 0.8]), (5, vec![0.4, 0.3, 0.9]), (6, vec![0.2, 0.5, 1.7])] {
            let m = mom(n, &mu);
            let back = momentum_of(m.dim, m.m, &m.ratios());
            for (a, b) in back.iter().zip(&mu) {
                assert!((a - b).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn jacobian_matches_finite_differences() {
        let dim = Dimension::new(5).unwrap();
        let z = [0.7, 0.6, 0.9];
        let h = 1e-6;
        let mut jm = nalgebra::DMatrix::<f64>::zeros(3, 3);
        for c in 0..3 {
            let mut zp = z;
            let mut zm = z;
            zp[c] += h;
            zm[c] -= h;
            let (a, b) = (momentum_of(dim, 1.3, &zp), momentum_of(dim, 1.3, &zm));
            for r in 0..3 {
                jm[(r, c)] = (a[r] - b[r]) / (2.0 * h);
            }
        }
        assert!((jm.determinant().abs() - jacobian(dim, 1.3, &z)).abs() < 1e-7);
    }

    #[test]
    fn equal_neighbours_give_zero() {
        let m = mom(4, &[0.8, 0.8]);
        assert_eq!(pi_tilde(&m, 0.9).unwrap()[0], 0);
    }

    #[test]
    fn rejects_bad_ordering_and_q() {
        let dim = Dimension::new(4).unwrap();
        assert!(ClassicalMomentum::new(dim, 1.0, vec![0.9, 0.5]).is_err());
        assert!(ClassicalMomentum::new(Dimension::new(3).unwrap(), 1.0, vec![0.9, 0.5]).is_err());
        assert!(alpha_norm(&mom(4, &[0.5, 0.8]), 1.0).is_err());
    }

    #[test]
    fn polynomial_is_horner() {
        let f = TestFunction::Polynomial(vec![1.0, 2.0, 3.0]);
        assert_eq!(f.eval(&[0.5, 1.5]), 1.0 + 4.0 + 12.0);
    }
}
