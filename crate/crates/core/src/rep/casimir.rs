//! The Pauli-Lubanski type Casimir for N = 3, 4.

use crate::algebra::{parse, Expression};
use crate::error::{Error, Result};
use crate::scalar::Dimension;

/// Omega_1 as an expression in the generators.
///
/// For N = 3 the factor (p.p)_1 / p^0 is written as q W1 W0^{-1} p0 / (q + 1),
/// using p^0 p^0 = (1 + q^{-1}) W0.
pub fn casimir_omega1_expr(dim: Dimension) -> Result<Expression> {
    let src = match dim.big_n() {
        3 => concat!(
            "p0*k1sqrtinv - q^{2} * W1*W0inv*p0*k1sqrt",
            " + q^{1/2}*(1 - q)*(1 - q^{2}) * Lm10*L01*k1sqrt*p0"
        ),
        4 => concat!(
            "Lm21*Lm12*Lm2m1*L12*k2*W1",
            " + q^{-2}/(q^{2} - 1)^{2} * W1*(k1*Lm2m1*L12 + k1inv*Lm21*Lm12)",
            " + q^{-4}/(q^{2} - 1)^{4} * W1*k2inv*(1 - q^{2}*k2*W2*W1inv)*(1 - q^{2}*k2*W2*W1inv)",
            " - q^{-2}/(1 - q^{2})^{2} * W2*W1inv*(pm1*pm1*Lm21*L12 + p1*p1*Lm2m1*Lm12)*k2"
        ),
        n => return Err(Error::Unsupported(format!("Omega_1 is available for N = 3, 4 only, not N = {n}"))),
    };
    parse(&expand_powers(src), dim)
}

/// Omega restricted to the pi = 0 sector of N = 3, with prefactor q^{e2/2} on the k part.
///
/// The printed form uses e2 = 1; e2 = -1 is the value for which it is a
/// multiple of the identity on that sector.
pub fn projected_omega_expr(e2: i32) -> Result<Expression> {
    let dim = Dimension::new(3)?;
    let src = format!("Lm10*L01*k1sqrt + q^{{{e2}/2}}/((q^{{2}} - 1)*(q - 1)) * (k1sqrtinv - k1sqrt)");
    parse(&src, dim)
}

/// The parser has no power operator; spell out `(X)^{k}` on parenthesised scalars.
fn expand_powers(src: &str) -> String {
    let mut s = src.to_string();
    for (pat, k) in [("(q^{2} - 1)^{2}", 2), ("(q^{2} - 1)^{4}", 4), ("(1 - q^{2})^{2}", 2)] {
        let base = &pat[..pat.rfind('^').unwrap()];
        let rep = vec![base; k].join("*");
        s = s.replace(pat, &format!("({rep})"));
    }
    s
}
