//! Dimension-dependent constants: parity, the rho vector and the q-metric.

use crate::error::{Error, Result};

/// Space dimension N together with its rank n = floor(N/2) and parity h.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Dimension {
    n_dim: usize,
}

impl Dimension {
    pub fn new(n_dim: usize) -> Result<Self> {
        if n_dim < 3 {
            return Err(Error::InvalidDimension(n_dim));
        }
        Ok(Dimension { n_dim })
    }

    /// N.
    pub fn big_n(self) -> usize {
        self.n_dim
    }

    /// n = floor(N/2).
    pub fn n(self) -> i32 {
        (self.n_dim / 2) as i32
    }

    /// h = 0 for odd N, 1 for even N.
    pub fn h(self) -> i32 {
        if self.n_dim % 2 == 0 {
            1
        } else {
            0
        }
    }

    pub fn is_odd(self) -> bool {
        self.h() == 0
    }

    /// Whether `i` is a legal space index: |i| <= n, and 0 only for odd N.
    pub fn valid_index(self, i: i32) -> bool {
        i.abs() <= self.n() && (i != 0 || self.is_odd())
    }

    pub fn check_index(self, i: i32) -> Result<()> {
        if self.valid_index(i) {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: i, n_dim: self.n_dim })
        }
    }

    /// Space indices in ascending order.
    pub fn indices(self) -> Vec<i32> {
        (-self.n()..=self.n()).filter(|&i| self.valid_index(i)).collect()
    }

    /// Twice rho_i, as an integer.
    ///
    /// Odd N: rho_i = 1/2 - i for i > 0, rho_0 = 0. Even N: rho_i = 1 - i for i > 0.
    /// In both cases rho_{-i} = -rho_i, so the values do not depend on n.
    pub fn rho2(self, i: i32) -> i32 {
        debug_assert!(self.valid_index(i));
        if i == 0 {
            return 0;
        }
        let k = i.abs();
        let pos = if self.is_odd() { 1 - 2 * k } else { 2 - 2 * k };
        if i > 0 {
            pos
        } else {
            -pos
        }
    }

    pub fn rho(self, i: i32) -> f64 {
        self.rho2(i) as f64 / 2.0
    }

    /// The rho vector indexed in ascending index order.
    pub fn rho_vector(self) -> RhoVector {
        RhoVector { entries: self.indices().into_iter().map(|i| (i, self.rho(i))).collect() }
    }
}

/// (index, rho_index) pairs in ascending index order.
#[derive(Clone, Debug, PartialEq)]
pub struct RhoVector {
    pub entries: Vec<(i32, f64)>,
}

impl RhoVector {
    pub fn get(&self, i: i32) -> Option<f64> {
        self.entries.iter().find(|(k, _)| *k == i).map(|(_, r)| *r)
    }
}

pub fn rho_vector(n_dim: usize) -> Result<RhoVector> {
    Ok(Dimension::new(n_dim)?.rho_vector())
}

/// The antidiagonal metric C_ij = q^{-rho_i} delta_{i,-j}.
#[derive(Clone, Debug)]
pub struct MetricC {
    dim: Dimension,
    q: f64,
}

impl MetricC {
    pub fn new(dim: Dimension, q: f64) -> Result<Self> {
        if !(q > 0.0 && q <= 1.0) {
            return Err(Error::InvalidParameter(format!("metric requires 0 < q <= 1, got {q}")));
        }
        Ok(MetricC { dim, q })
    }

    pub fn entry(&self, i: i32, j: i32) -> f64 {
        if i == -j {
            self.q.powf(-self.dim.rho(i))
        } else {
            0.0
        }
    }

    /// Dense matrix in ascending index order.
    pub fn matrix(&self) -> Vec<Vec<f64>> {
        let idx = self.dim.indices();
        idx.iter().map(|&i| idx.iter().map(|&j| self.entry(i, j)).collect()).collect()
    }

    /// a_i = C_ij a^j, with `upper` given in ascending index order.
    pub fn lower(&self, upper: &[f64]) -> Vec<f64> {
        let idx = self.dim.indices();
        idx.iter()
            .map(|&i| idx.iter().zip(upper).map(|(&j, a)| self.entry(i, j) * a).sum())
            .collect()
    }
}

pub fn metric(dim: Dimension, q: f64) -> Result<MetricC> {
    MetricC::new(dim, q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rho_three() {
        let r = rho_vector(3).unwrap();
        assert_eq!(r.entries, vec![(-1, 0.5), (0, 0.0), (1, -0.5)]);
    }

    #[test]
    fn rho_four() {
        let r = rho_vector(4).unwrap();
        assert_eq!(r.entries, vec![(-2, 1.0), (-1, 0.0), (1, 0.0), (2, -1.0)]);
    }

    #[test]
    fn rho_rejects_small_dimension() {
        assert!(rho_vector(2).is_err());
    }

    #[test]
    fn metric_three_entries() {
        let q: f64 = 0.37;
        let c = metric(Dimension::new(3).unwrap(), q).unwrap();
        assert!((c.entry(1, -1) - q.powf(0.5)).abs() < 1e-15);
        assert_eq!(c.entry(0, 0), 1.0);
        assert!((c.entry(-1, 1) - q.powf(-0.5)).abs() < 1e-15);
    }

    #[test]
    fn metric_at_one_is_permutation() {
        let c = metric(Dimension::new(6).unwrap(), 1.0).unwrap();
        let m = c.matrix();
        for (a, row) in m.iter().enumerate() {
            for (b, v) in row.iter().enumerate() {
                let expect = if a + b == m.len() - 1 { 1.0 } else { 0.0 };
                assert_eq!(*v, expect);
            }
        }
    }

    #[test]
    fn lowering_uses_antidiagonal() {
        let c = metric(Dimension::new(3).unwrap(), 0.5).unwrap();
        let low = c.lower(&[1.0, 2.0, 3.0]);
        assert!((low[0] - 3.0 * 0.5f64.powf(-0.5)).abs() < 1e-14);
        assert!((low[1] - 2.0).abs() < 1e-14);
        assert!((low[2] - 0.5f64.powf(0.5)).abs() < 1e-14);
    }
}
