//! Weight bookkeeping for singlet x U_q(so(N)) tensor products.
//!
//! No coproduct is used. The N = 3 check compares h_1 weight multiplicities of the
//! product with those of the predicted direct sum, sector by sector.

use crate::error::{Error, Result};
use crate::rep::Rep;
use crate::scalar::Dimension;
use std::collections::BTreeMap;

/// A predicted component: highest weight and the (l, l') labels it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub weight: Vec<i32>,
    pub labels: (i32, i32),
}

/// Highest weights of the components of the product with the so(N) irrep of highest weight u.
pub fn predicted_highest_weights(u: &[i32], dim: Dimension) -> Result<Vec<Component>> {
    match (dim.big_n(), u) {
        (3, &[u1]) => {
            if u1 < 0 {
                return Err(Error::Domain(format!("highest weight must be dominant, got u = {u1}")));
            }
            Ok((0..=2 * u1).map(|l| Component { weight: vec![u1 - l], labels: (l, 0) }).collect())
        }
        (4, &[u1, u2]) => {
            if u1 < 0 || u2 < 0 {
                return Err(Error::Domain(format!("highest weight must be dominant, got u = ({u1}, {u2})")));
            }
            let s = (u2 - u1).signum();
            let mut out = Vec::new();
            for l in 0..=(u2 - u1).abs() {
                for lp in 0..=(u1 + u2) {
                    // u - l s (y2 - y1) - l' (y2 + y1)
                    out.push(Component { weight: vec![u1 + l * s - lp, u2 - l * s - lp], labels: (l, lp) });
                }
            }
            Ok(out)
        }
        (3 | 4, _) => Err(Error::Domain(format!(
            "N = {} needs a weight with {} components",
            dim.big_n(),
            dim.big_n() - 2
        ))),
        (n, _) => Err(Error::Unsupported(format!("the decomposition is tabulated for N = 3, 4 only, not N = {n}"))),
    }
}

/// Number of components the decomposition predicts.
pub fn component_count(u: &[i32], dim: Dimension) -> Result<usize> {
    predicted_highest_weights(u, dim).map(|v| v.len())
}

/// Outcome of the multiplicity comparison on one pi sector.
#[derive(Clone, Debug, PartialEq)]
pub struct SectorCheck {
    pub pi: Vec<i32>,
    /// Top h_1 weight of each component, as read off the product multiplicities.
    pub tops: Vec<i32>,
    /// Offsets delta(w) with top(w) = pi_0 + delta(w) + w, one per predicted w.
    pub offsets: Vec<(i32, i32)>,
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MultiplicityReport {
    pub u: i32,
    pub components: usize,
    pub sectors: Vec<SectorCheck>,
}

impl MultiplicityReport {
    pub fn consistent(&self) -> bool {
        self.sectors.iter().all(|s| s.consistent)
    }

    /// Whether delta = 0 for every component in every sector.
    pub fn zero_offsets(&self) -> bool {
        self.sectors.iter().all(|s| s.offsets.iter().all(|o| o.1 == 0))
    }
}

/// Compares the h_1 multiplicities of singlet x spin u with the predicted components.
///
/// In h units the spin-u factor contributes m in [-u, u] and the component of weight w
/// contributes j' + w, j' <= pi_0 + delta(w). Only weights at least floor + u are compared,
/// since lower ones feel the window floor. Offsets are searched in [-2u, 2u].
pub fn weight_multiplicity_check(rep: &Rep, u: i32) -> Result<MultiplicityReport> {
    let dim = rep.dim();
    if dim.big_n() != 3 || rep.cfg.w != 0 {
        return Err(Error::InvalidParameter("the multiplicity check needs the N = 3 singlet".into()));
    }
    if u < 0 {
        return Err(Error::Domain(format!("spin must be nonnegative, got {u}")));
    }
    let comps = predicted_highest_weights(&[u], dim)?;
    let mut sectors: BTreeMap<Vec<i32>, Vec<i32>> = BTreeMap::new();
    for s in &rep.basis.states {
        sectors.entry(s.pi_vec(dim)).or_default().push(s.j(1));
    }
    let floor = rep.window().jmin[0];
    let mut out = Vec::new();
    for (pi, js) in sectors {
        let pi0 = pi[0];
        if pi0 - floor < 2 * u {
            return Err(Error::InvalidParameter(format!(
                "window too small to disambiguate: need pi_0 - floor >= 2u, have {} < {}",
                pi0 - floor,
                2 * u
            )));
        }
        let mut product: BTreeMap<i32, i64> = BTreeMap::new();
        for &j in &js {
            for m in -u..=u {
                *product.entry(j + m).or_default() += 1;
            }
        }
        let lo = floor + u;
        let hi = product.keys().next_back().copied().unwrap_or(lo);
        let count = |v: i32| product.get(&v).copied().unwrap_or(0);
        // In the band, #components with top >= v equals the product multiplicity at v.
        let mut tops = Vec::new();
        let mut ok = true;
        for v in (lo..=hi).rev() {
            let k = count(v) - count(v + 1);
            if k < 0 {
                ok = false;
            }
            for _ in 0..k.max(0) {
                tops.push(v);
            }
        }
        if count(lo) != comps.len() as i64 {
            ok = false;
        }
        // Sorted tops against sorted weights is the matching with least offset spread.
        let mut ws: Vec<i32> = comps.iter().map(|c| c.weight[0]).collect();
        ws.sort_unstable_by(|a, b| b.cmp(a));
        let offsets: Vec<(i32, i32)> = ws.iter().zip(&tops).map(|(&w, &t)| (w, t - pi0 - w)).collect();
        if tops.len() != ws.len() || offsets.iter().any(|o| o.1.abs() > 2 * u) {
            ok = false;
        }
        if ok {
            // Rebuild the band multiplicities from the components and compare.
            for v in lo..=hi {
                let c = tops.iter().filter(|&&t| t >= v).count() as i64;
                if c != count(v) {
                    ok = false;
                }
            }
        }
        out.push(SectorCheck { pi, tops, offsets, consistent: ok });
    }
    Ok(MultiplicityReport { u, components: comps.len(), sectors: out })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spin_one_weights() {
        let w: Vec<i32> = predicted_highest_weights(&[1], Dimension::new(3).unwrap())
            .unwrap()
            .into_iter()
            .map(|c| c.weight[0])
            .collect();
        assert_eq!(w, vec![1, 0, -1]);
    }

    #[test]
    fn four_dimensional_grid() {
        let d = Dimension::new(4).unwrap();
        let c = predicted_highest_weights(&[1, 0], d).unwrap();
        assert_eq!(c.len(), 4);
        assert_eq!(c[0].weight, vec![1, 0]);
        assert!(predicted_highest_weights(&[1], d).is_err());
        assert!(predicted_highest_weights(&[1, 0, 0], Dimension::new(5).unwrap()).is_err());
    }
}
