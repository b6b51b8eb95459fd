//! Electromagnetism in exterior form on Euclidean ℝ⁴.

use super::DifferentialForm;
use crate::error::{Error, Result};
use crate::integrate::{integrate_form, EmbeddedChain};
use crate::poly::{rat, Rational};

/// Field report for a potential `A`.
///
/// The source current is `J = -(1/4π) δF`. Since `π` is not rational the
/// report carries `4π·J = -δF` exactly; `δJ = 0` is insensitive to the
/// constant factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxwellReport {
    /// `F = dA`.
    pub field: DifferentialForm,
    /// `dF = 0`.
    pub bianchi_ok: bool,
    /// `4π·J = -δF`.
    pub four_pi_current: DifferentialForm,
    /// `δJ = 0`.
    pub continuity_ok: bool,
}

pub fn maxwell_field(potential: &DifferentialForm) -> Result<MaxwellReport> {
    if potential.dim() != 4 {
        return Err(Error::DimensionMismatch {
            left: 4,
            right: potential.dim(),
        });
    }
    if potential.degree() != 1 {
        return Err(Error::DegreeMismatch {
            expected: 1,
            found: potential.degree(),
        });
    }
    let field = potential.d();
    let bianchi_ok = field.d().is_zero();
    let four_pi_current = -field.codiff();
    let continuity_ok = four_pi_current.codiff().is_zero();
    Ok(MaxwellReport {
        field,
        bianchi_ok,
        four_pi_current,
        continuity_ok,
    })
}

/// `S = ½ ∫_domain F ∧ ⋆F` over a full-degree chain.
pub fn maxwell_action(field: &DifferentialForm, domain: &EmbeddedChain) -> Result<Rational> {
    if field.degree() != 2 {
        return Err(Error::DegreeMismatch {
            expected: 2,
            found: field.degree(),
        });
    }
    let density = field.wedge(&field.star())?;
    Ok(integrate_form(&density, domain)? * rat(1, 2))
}
