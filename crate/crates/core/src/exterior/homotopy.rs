//! The cone (homotopy) operator for the origin-centred star-shaped domain ℝⁿ.

use super::DifferentialForm;
use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial};

/// `(Kw)(x) = Σ_I Σ_j (-1)^j x^{I_j} [∫₀¹ t^{p-1} w_I(tx) dt] dx^{I∖I_j}`.
///
/// For every form of degree `p ≥ 1`, `d(Kw) + K(dw) = w`; in particular a
/// closed `w` has the primitive `Kw`. Functions are rejected since on them
/// the identity degrades to `f - f(0)`.
pub fn homotopy_operator(w: &DifferentialForm) -> Result<DifferentialForm> {
    let p = w.degree();
    if p == 0 {
        return Err(Error::InvalidDegree {
            degree: 0,
            reason: "homotopy operator needs a form of degree at least 1",
        });
    }
    let n = w.dim();
    let mut weight = vec![0u32; n + 1];
    weight[0] = (p - 1) as u32;
    let weight = Polynomial::monomial(Monomial::new(weight), num_traits::One::one());

    let mut out = DifferentialForm::zero(n, p - 1);
    for (blade, c) in w.terms() {
        let averaged = (&c.compose_scale() * &weight)
            .integrate_unit_interval(0)
            .expect("t is variable 0");
        for (position, &k) in blade.indices().iter().enumerate() {
            let (sign, rest) = blade.remove_at(position);
            let term = &averaged * &Polynomial::var(n, k);
            out.add_term(rest, if sign < 0 { -term } else { term });
        }
    }
    Ok(out)
}

impl DifferentialForm {
    pub fn homotopy(&self) -> Result<DifferentialForm> {
        homotopy_operator(self)
    }
}
