//! Column-sparse operators on a window basis.

use super::{BasisState, Rep};
use crate::algebra::Expression;
use crate::error::{Error, Result};
use rayon::prelude::*;
use std::fmt::Write as _;
use std::sync::Arc;

/// Truncated operator. Column c holds the window part of the image of basis vector c.
///
/// `exact[c]` says whether column c equals the window projection of the
/// untruncated operator; `leakage` lists image components outside the window.
#[derive(Clone, Debug)]
pub struct SparseOperator {
    pub basis: Arc<super::Basis>,
    pub columns: Vec<Vec<(usize, f64)>>,
    pub leakage: Vec<(usize, BasisState, f64)>,
    pub exact: Vec<bool>,
    /// Largest number of single steps one application can take.
    pub reach: usize,
}

impl SparseOperator {
    pub fn build(rep: &Rep, e: &Expression) -> Result<Self> {
        let c = rep.compile(e)?;
        let basis = Arc::new(rep.basis.clone());
        let cols: Vec<Result<(Vec<(usize, f64)>, Vec<(BasisState, f64)>)>> = basis
            .states
            .par_iter()
            .map(|s| {
                let img = rep.apply(&c, s)?;
                let mut col = Vec::new();
                let mut leak = Vec::new();
                for (t, a) in img.out {
                    if a == 0.0 {
                        continue;
                    }
                    match basis.index_of(&t) {
                        Some(k) => col.push((k, a)),
                        None => leak.push((t, a)),
                    }
                }
                col.sort_by_key(|x| x.0);
                Ok((col, leak))
            })
            .collect();
        let mut columns = Vec::with_capacity(cols.len());
        let mut leakage = Vec::new();
        for (src, r) in cols.into_iter().enumerate() {
            let (col, leak) = r?;
            columns.push(col);
            leakage.extend(leak.into_iter().map(|(t, a)| (src, t, a)));
        }
        let n = columns.len();
        Ok(SparseOperator { basis, columns, leakage, exact: vec![true; n], reach: c.reach() })
    }

    pub fn dimension(&self) -> usize {
        self.columns.len()
    }

    fn leaky_columns(&self) -> Vec<bool> {
        let mut v = vec![false; self.columns.len()];
        for (src, _, _) in &self.leakage {
            v[*src] = true;
        }
        v
    }

    fn same_basis(&self, o: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.basis, &o.basis) || self.basis.states == o.basis.states {
            Ok(())
        } else {
            Err(Error::InvalidParameter("operators live on different window bases".into()))
        }
    }

    /// self * o.
    pub fn compose(&self, o: &Self) -> Result<Self> {
        self.same_basis(o)?;
        let leaky = o.leaky_columns();
        let mut columns = Vec::with_capacity(o.columns.len());
        let mut exact = Vec::with_capacity(o.columns.len());
        for (c, col) in o.columns.iter().enumerate() {
            let mut acc: Vec<(usize, f64)> = Vec::new();
            let mut ok = o.exact[c] && !leaky[c];
            for &(r, v) in col {
                ok &= self.exact[r];
                for &(r2, u) in &self.columns[r] {
                    acc.push((r2, u * v));
                }
            }
            columns.push(merge(acc));
            exact.push(ok);
        }
        let mut leakage: Vec<(usize, BasisState, f64)> = o.leakage.clone();
        for (c, col) in o.columns.iter().enumerate() {
            for &(r, v) in col {
                for (src, t, a) in &self.leakage {
                    if *src == r {
                        leakage.push((c, *t, a * v));
                    }
                }
            }
        }
        Ok(SparseOperator { basis: self.basis.clone(), columns, leakage, exact, reach: self.reach + o.reach })
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_basis(o)?;
        let columns = self
            .columns
            .iter()
            .zip(&o.columns)
            .map(|(a, b)| merge(a.iter().chain(b.iter()).copied().collect()))
            .collect();
        let exact = self.exact.iter().zip(&o.exact).map(|(a, b)| *a && *b).collect();
        let mut leakage = self.leakage.clone();
        leakage.extend(o.leakage.iter().cloned());
        Ok(SparseOperator { basis: self.basis.clone(), columns, leakage, exact, reach: self.reach.max(o.reach) })
    }

    pub fn scale(&self, c: f64) -> Self {
        let mut out = self.clone();
        for col in &mut out.columns {
            for e in col.iter_mut() {
                e.1 *= c;
            }
            col.retain(|e| e.1 != 0.0);
        }
        for l in &mut out.leakage {
            l.2 *= c;
        }
        out
    }

    /// Transpose. Column r is exact only if no state outside the window can reach r.
    pub fn adjoint(&self) -> Self {
        let n = self.columns.len();
        let mut columns: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
        let mut exact: Vec<bool> = (0..n)
            .map(|r| {
                let s = &self.basis.states[r];
                self.basis.window.depth(self.basis.dim, s) > self.reach as i32
            })
            .collect();
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                columns[r].push((c, v));
                if !self.exact[c] {
                    exact[r] = false;
                }
            }
        }
        for col in &mut columns {
            col.sort_by_key(|x| x.0);
        }
        SparseOperator { basis: self.basis.clone(), columns, leakage: Vec::new(), exact, reach: self.reach }
    }

    pub fn entry(&self, row: usize, col: usize) -> f64 {
        self.columns[col].iter().find(|e| e.0 == row).map(|e| e.1).unwrap_or(0.0)
    }

    /// Applies the matrix to a vector given in basis coordinates.
    pub fn matvec(&self, v: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.columns.len()];
        for (c, col) in self.columns.iter().enumerate() {
            if v[c] == 0.0 {
                continue;
            }
            for &(r, a) in col {
                out[r] += a * v[c];
            }
        }
        out
    }
}

fn merge(mut v: Vec<(usize, f64)>) -> Vec<(usize, f64)> {
    v.sort_by_key(|x| x.0);
    let mut out: Vec<(usize, f64)> = Vec::with_capacity(v.len());
    for (k, a) in v {
        match out.last_mut() {
            Some((j, b)) if *j == k => *b += a,
            _ => out.push((k, a)),
        }
    }
    out.retain(|x| x.1 != 0.0);
    out
}

/// Text dump: a header, the basis listing and sorted `src tgt amp` lines.
pub fn dump_operator(rep: &Rep, symbol: &str, op: &SparseOperator) -> String {
    let dim = rep.dim();
    let w = rep.window();
    let mut s = String::new();
    let cfg = &rep.cfg;
    let _ = writeln!(s, "# qeuclid operator dump");
    let _ = writeln!(
        s,
        "# N={} q={:?} M={:?} w={} p0_sign={}",
        dim.big_n(),
        cfg.q,
        cfg.m,
        cfg.w,
        cfg.p0_sign
    );
    let _ = writeln!(
        s,
        "# window pmax={:?} smin={} smax={} jmin={:?} j1max={}",
        w.pmax, w.smin, w.smax, w.jmin, w.j1max
    );
    let _ = writeln!(s, "# symbol {symbol}");
    let _ = writeln!(s, "# states {}", op.basis.len());
    for (k, st) in op.basis.states.iter().enumerate() {
        let _ = writeln!(s, "# {k} {}", st.display(dim));
    }
    let mut lines: Vec<(usize, usize, f64)> = Vec::new();
    for (c, col) in op.columns.iter().enumerate() {
        for &(r, a) in col {
            lines.push((c, r, a));
        }
    }
    lines.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
    for (c, r, a) in lines {
        let _ = writeln!(s, "{c} {r} {a:.17e}");
    }
    s
}
