//! Casimir scalarity and commutation.

use super::residual::{identity_residual, star_generators, Identity, IdentityReport};
use crate::algebra::{Expression, Letter};
use crate::error::{Error, Result};
use crate::rep::Rep;
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Eigenvalue estimate on one pi_n sector.
#[derive(Clone, Debug)]
pub struct SectorValue {
    pub pi_n: i32,
    pub lambda: f64,
    /// max(|diagonal - lambda|, |off-diagonal|) / scale over the sector.
    pub deviation: f64,
    pub scale: f64,
    pub states: usize,
}

#[derive(Clone, Debug)]
pub struct CasimirReport {
    pub sectors: Vec<SectorValue>,
}

impl CasimirReport {
    /// Worst relative deviation from a multiple of the identity, sector by sector.
    pub fn max_deviation(&self) -> f64 {
        self.sectors.iter().map(|s| s.deviation).fold(0.0, f64::max)
    }

    pub fn sector(&self, pi_n: i32) -> Option<&SectorValue> {
        self.sectors.iter().find(|s| s.pi_n == pi_n)
    }
}

/// Tests whether `op` acts as a scalar on each pi_n sector of the interior.
///
/// Lambda shifts pi_n and rescales Omega_1, so scalarity holds per sector.
pub fn casimir_scalarity(rep: &Rep, op: &Expression) -> Result<CasimirReport> {
    let c = rep.compile(op)?;
    let dim = rep.dim();
    let rows: Vec<Result<Option<(i32, f64, f64, f64)>>> = rep
        .basis
        .states
        .par_iter()
        .map(|s| {
            let img = rep.apply(&c, s)?;
            if !img.interior {
                return Ok(None);
            }
            let mut diag = 0.0;
            let mut off: f64 = 0.0;
            for (t, a) in &img.out {
                if t == s {
                    diag = *a;
                } else {
                    off = off.max(a.abs());
                }
            }
            Ok(Some((s.pi(dim, dim.n()), diag, off, img.scale)))
        })
        .collect();
    let mut by_sector: BTreeMap<i32, Vec<(f64, f64, f64)>> = BTreeMap::new();
    for r in rows {
        if let Some((pn, d, o, sc)) = r? {
            by_sector.entry(pn).or_default().push((d, o, sc));
        }
    }
    if by_sector.is_empty() {
        return Err(Error::NoInterior("Casimir".into()));
    }
    let sectors = by_sector
        .into_iter()
        .map(|(pi_n, v)| {
            let lambda = v.iter().map(|x| x.0).sum::<f64>() / v.len() as f64;
            let scale = v.iter().map(|x| x.2).fold(lambda.abs(), f64::max);
            let worst = v.iter().map(|x| (x.0 - lambda).abs().max(x.1)).fold(0.0, f64::max);
            let deviation = if scale > 0.0 { worst / scale } else { worst };
            SectorValue { pi_n, lambda, deviation, scale, states: v.len() }
        })
        .collect();
    Ok(CasimirReport { sectors })
}

/// [op, g] for the generators of the algebra without Lambda.
pub fn casimir_commutators(rep: &Rep, op: &Expression) -> Result<Vec<IdentityReport>> {
    let mut out = Vec::new();
    for g in star_generators(rep.roots()) {
        if matches!(g, Letter::Lam(_)) {
            continue;
        }
        let gl = Expression::letter(g);
        let id = Identity::new(format!("[Omega, {g}]"), op.mul(&gl), gl.mul(op));
        match identity_residual(rep, &id) {
            Ok(r) => out.push(r),
            Err(Error::NoInterior(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}
