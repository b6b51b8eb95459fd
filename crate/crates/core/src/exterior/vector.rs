//! Classical vector calculus on ℝ³ expressed through forms.
//!
//! `grad = d` on functions, `curl = ⋆d` on 1-forms and `div = -δ` on
//! 1-forms. With `δ = (-1)^{n(p+1)+1}⋆d⋆` the codifferential of a 1-form on
//! ℝ³ is minus the divergence, hence the sign.

use super::DifferentialForm;
use crate::error::{Error, Result};

fn require(w: &DifferentialForm, degree: usize) -> Result<()> {
    if w.dim() != 3 {
        return Err(Error::DimensionMismatch {
            left: 3,
            right: w.dim(),
        });
    }
    if w.degree() != degree {
        return Err(Error::DegreeMismatch {
            expected: degree,
            found: w.degree(),
        });
    }
    Ok(())
}

pub fn grad(f: &DifferentialForm) -> Result<DifferentialForm> {
    require(f, 0)?;
    Ok(f.d())
}

pub fn curl(w: &DifferentialForm) -> Result<DifferentialForm> {
    require(w, 1)?;
    Ok(w.d().star())
}

pub fn div(w: &DifferentialForm) -> Result<DifferentialForm> {
    require(w, 1)?;
    Ok(-w.codiff())
}
