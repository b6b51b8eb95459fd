//! Euclidean Hodge star and the operators built from it.

use super::{parity_sign, DifferentialForm};
use crate::error::{Error, Result};
use crate::poly::{Polynomial, Rational};

/// The fixed orthonormal metric `g_ij = δ_ij` on ℝⁿ with orientation
/// `dx1 ∧ … ∧ dxn`. Since `det g = 1` the volume form is `⋆1 = dx1∧…∧dxn`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MetricContext {
    dim: usize,
}

impl MetricContext {
    pub fn euclidean(dim: usize) -> Self {
        MetricContext { dim }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn volume_form(&self) -> DifferentialForm {
        DifferentialForm::blade(self.dim, &(0..self.dim).collect::<Vec<_>>()).expect("indices below dimension")
    }

    fn check(&self, w: &DifferentialForm) -> Result<()> {
        if w.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: w.dim(),
            });
        }
        Ok(())
    }

    /// `⋆(f dx^I) = sign(I, Iᶜ) f dx^{Iᶜ}`.
    pub fn star(&self, w: &DifferentialForm) -> Result<DifferentialForm> {
        self.check(w)?;
        let mut out = DifferentialForm::zero(self.dim, self.dim - w.degree());
        for (blade, c) in w.terms() {
            let (sign, rest) = blade.complement(self.dim);
            let coeff = if sign < 0 { -c } else { c.clone() };
            out.add_term(rest, coeff);
        }
        Ok(out)
    }

    /// Pointwise inner product `⟨a, b⟩ = Σ_I a_I b_I`.
    pub fn inner(&self, a: &DifferentialForm, b: &DifferentialForm) -> Result<Polynomial> {
        self.check(a)?;
        self.check(b)?;
        if a.degree() != b.degree() {
            return Err(Error::DegreeMismatch {
                expected: a.degree(),
                found: b.degree(),
            });
        }
        let mut acc = Polynomial::zero(self.dim);
        for (blade, ca) in a.terms() {
            if let Some(cb) = b.terms.get(blade) {
                acc += ca * cb;
            }
        }
        Ok(acc)
    }

    /// `δ = (-1)^{n(p+1)+1} ⋆ d ⋆` on p-forms; zero on functions.
    pub fn codifferential(&self, w: &DifferentialForm) -> Result<DifferentialForm> {
        self.check(w)?;
        let p = w.degree();
        if p == 0 {
            return Ok(DifferentialForm::zero(self.dim, 0));
        }
        let inner = self.star(&self.star(w)?.d())?;
        Ok(inner.scale(&parity_sign(self.dim * (p + 1) + 1)))
    }

    /// `Δ = δd + dδ`. The `δd` term is absent on top-degree forms and the
    /// `dδ` term on functions.
    pub fn laplacian(&self, w: &DifferentialForm) -> Result<DifferentialForm> {
        self.check(w)?;
        let p = w.degree();
        let mut out = DifferentialForm::zero(self.dim, p);
        if p < self.dim {
            out = &out + &self.codifferential(&w.d())?;
        }
        if p > 0 {
            out = &out + &self.codifferential(w)?.d();
        }
        Ok(out)
    }

    /// Tests `dw = 0` and `δw = 0` separately.
    pub fn is_harmonic(&self, w: &DifferentialForm) -> Result<HarmonicCheck> {
        Ok(HarmonicCheck {
            closed: w.d().is_zero(),
            coclosed: self.codifferential(w)?.is_zero(),
        })
    }
}

/// Outcome of [`MetricContext::is_harmonic`]; names the failing condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HarmonicCheck {
    pub closed: bool,
    pub coclosed: bool,
}

impl HarmonicCheck {
    pub fn is_harmonic(&self) -> bool {
        self.closed && self.coclosed
    }
}

impl DifferentialForm {
    fn metric(&self) -> MetricContext {
        MetricContext::euclidean(self.dim)
    }

    /// Euclidean Hodge star.
    pub fn star(&self) -> DifferentialForm {
        self.metric().star(self).expect("own dimension")
    }

    pub fn codiff(&self) -> DifferentialForm {
        self.metric().codifferential(self).expect("own dimension")
    }

    pub fn laplacian(&self) -> DifferentialForm {
        self.metric().laplacian(self).expect("own dimension")
    }

    pub fn inner(&self, other: &DifferentialForm) -> Result<Polynomial> {
        self.metric().inner(self, other)
    }

    pub fn is_harmonic(&self) -> HarmonicCheck {
        self.metric().is_harmonic(self).expect("own dimension")
    }
}

/// Sign `(-1)^{p(n-p)}` of `⋆⋆` on p-forms.
pub fn double_star_sign(n: usize, p: usize) -> Rational {
    parity_sign(p * (n - p))
}
