//! Combinatorial Hodge theory on cochains.
//!
//! The inner product on p-cochains is the plain dot product over the
//! p-simplex basis, so the codifferential is `δ = dᵀ` and the Hodge
//! Laplacian `L_p = d_pᵀ d_p + d_{p-1} d_{p-1}ᵀ` is a symmetric positive
//! semi-definite rational matrix. Everything below is exact.

use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::complex::{same_complex, Chain, SimplicialComplex};
use crate::error::{Error, Result};
use crate::linalg::{self, ColumnOrder, SparseMatrix};
use crate::poly::Rational;

/// Rational p-cochain, one value per p-simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    complex: Arc<SimplicialComplex>,
    degree: usize,
    values: Vec<Rational>,
}

impl Cochain {
    pub fn zero(complex: &Arc<SimplicialComplex>, degree: usize) -> Self {
        Cochain {
            complex: Arc::clone(complex),
            degree,
            values: vec![Rational::zero(); complex.count(degree)],
        }
    }

    pub fn from_values(complex: &Arc<SimplicialComplex>, degree: usize, values: Vec<Rational>) -> Result<Self> {
        if values.len() != complex.count(degree) {
            return Err(Error::DimensionMismatch {
                left: complex.count(degree),
                right: values.len(),
            });
        }
        Ok(Cochain {
            complex: Arc::clone(complex),
            degree,
            values,
        })
    }

    /// The constant 0-cochain.
    pub fn constant(complex: &Arc<SimplicialComplex>, value: Rational) -> Self {
        Cochain {
            complex: Arc::clone(complex),
            degree: 0,
            values: vec![value; complex.count(0)],
        }
    }

    pub fn complex(&self) -> &Arc<SimplicialComplex> {
        &self.complex
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Cochain {
            complex: Arc::clone(&self.complex),
            degree: self.degree,
            values: self.values.iter().map(|v| v * factor).collect(),
        }
    }

    /// Combinatorial inner product `(a, b) = Σ_σ a(σ) b(σ)`.
    pub fn inner(&self, other: &Cochain) -> Result<Rational> {
        self.check_compatible(other)?;
        Ok(linalg::dot(&self.values, &other.values))
    }

    fn check_compatible(&self, other: &Cochain) -> Result<()> {
        if !same_complex(&self.complex, &other.complex) {
            return Err(Error::ComplexMismatch);
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Cochain) -> Result<Cochain> {
        self.check_compatible(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Cochain) -> Result<Cochain> {
        self.check_compatible(other)?;
        Ok(self - other)
    }

    fn apply(&self, m: &SparseMatrix, degree: usize) -> Cochain {
        Cochain {
            complex: Arc::clone(&self.complex),
            degree,
            values: m.mul_vec(&self.values),
        }
    }

    pub fn d(&self) -> Cochain {
        coboundary(self)
    }

    pub fn codiff(&self) -> Cochain {
        codifferential(self)
    }

    pub fn laplacian(&self) -> Cochain {
        laplacian(self)
    }
}

impl Add for &Cochain {
    type Output = Cochain;
    fn add(self, rhs: &Cochain) -> Cochain {
        assert_eq!(self.degree, rhs.degree, "cochains of different degree");
        assert_eq!(self.values.len(), rhs.values.len(), "cochains on different complexes");
        Cochain {
            complex: Arc::clone(&self.complex),
            degree: self.degree,
            values: self.values.iter().zip(&rhs.values).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Cochain {
    type Output = Cochain;
    fn sub(self, rhs: &Cochain) -> Cochain {
        self + &(-rhs)
    }
}

impl Neg for &Cochain {
    type Output = Cochain;
    fn neg(self) -> Cochain {
        self.scale(&-Rational::one())
    }
}

/// `d_p = ∂_{p+1}ᵀ`. On top-degree cochains the result is the (empty)
/// cochain of degree `N + 1`, the zero vector of a zero-dimensional space.
pub fn coboundary(w: &Cochain) -> Cochain {
    if w.degree > w.complex.dim() {
        return Cochain::zero(&w.complex, w.degree + 1);
    }
    w.apply(w.complex.coboundary_matrix(w.degree), w.degree + 1)
}

/// `δ_p = d_{p-1}ᵀ`, the adjoint of `d` for the combinatorial inner product.
/// Zero on 0-cochains.
pub fn codifferential(w: &Cochain) -> Cochain {
    if w.degree == 0 {
        return Cochain::zero(&w.complex, 0);
    }
    w.apply(w.complex.boundary_matrix(w.degree), w.degree - 1)
}

/// `L_p = d_pᵀ d_p + d_{p-1} d_{p-1}ᵀ` as a sparse matrix.
pub fn laplacian_matrix(complex: &SimplicialComplex, p: usize) -> SparseMatrix {
    let n = complex.count(p);
    let mut l = SparseMatrix::zeros(n, n);
    if p <= complex.dim() {
        let d = complex.coboundary_matrix(p);
        l = l.add(&d.transpose().matmul(d));
    }
    if p >= 1 && p <= complex.dim() + 1 {
        let d = complex.coboundary_matrix(p - 1);
        l = l.add(&d.matmul(&d.transpose()));
    }
    l
}

pub fn laplacian(w: &Cochain) -> Cochain {
    w.apply(&laplacian_matrix(&w.complex, w.degree), w.degree)
}

/// Period `⟨c, w⟩`.
pub fn pairing(c: &Chain, w: &Cochain) -> Result<Rational> {
    if !same_complex(c.complex(), &w.complex) {
        return Err(Error::ComplexMismatch);
    }
    if c.degree() != w.degree {
        return Err(Error::DegreeMismatch {
            expected: c.degree(),
            found: w.degree,
        });
    }
    Ok(linalg::dot(c.coeffs(), &w.values))
}

/// Exact rational basis of `ker L_p`.
pub fn harmonic_basis(complex: &Arc<SimplicialComplex>, p: usize) -> Vec<Cochain> {
    linalg::nullspace(&laplacian_matrix(complex, p))
        .into_iter()
        .map(|values| Cochain {
            complex: Arc::clone(complex),
            degree: p,
            values,
        })
        .collect()
}

/// Orthogonal splitting `w = dα + δβ + γ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeSplit {
    /// `dα`
    pub exact: Cochain,
    /// `δβ`
    pub coexact: Cochain,
    /// `γ`, closed and coclosed
    pub harmonic: Cochain,
    /// Minimum-norm potential of degree `p - 1`; absent for `p = 0`.
    pub alpha: Option<Cochain>,
    /// Minimum-norm copotential of degree `p + 1`.
    pub beta: Cochain,
}

pub fn hodge_decompose(w: &Cochain) -> HodgeSplit {
    hodge_decompose_with(w, ColumnOrder::Forward)
}

/// [`hodge_decompose`] with an explicit elimination order. The result is the
/// same for every order.
pub fn hodge_decompose_with(w: &Cochain, order: ColumnOrder) -> HodgeSplit {
    let k = &w.complex;
    let p = w.degree;

    let (exact, alpha) = if p == 0 {
        (Cochain::zero(k, 0), None)
    } else {
        // d_{p-1}ᵀ d_{p-1} α = d_{p-1}ᵀ w
        let d = k.coboundary_matrix(p - 1);
        let dt = d.transpose();
        let normal = dt.matmul(d);
        let rhs = dt.mul_vec(&w.values);
        let a = linalg::solve_min_norm(&normal, &rhs, order).expect("normal equations are consistent");
        let alpha = Cochain {
            complex: Arc::clone(k),
            degree: p - 1,
            values: a,
        };
        (coboundary(&alpha), Some(alpha))
    };

    // d_p d_pᵀ β = d_p w
    let beta = if p <= k.dim() {
        let d = k.coboundary_matrix(p);
        let normal = d.matmul(&d.transpose());
        let rhs = d.mul_vec(&w.values);
        let b = linalg::solve_min_norm(&normal, &rhs, order).expect("normal equations are consistent");
        Cochain {
            complex: Arc::clone(k),
            degree: p + 1,
            values: b,
        }
    } else {
        Cochain::zero(k, p + 1)
    };
    let coexact = if p <= k.dim() {
        codifferential(&beta)
    } else {
        Cochain::zero(k, p)
    };

    let harmonic = &(w - &exact) - &coexact;
    HodgeSplit {
        exact,
        coexact,
        harmonic,
        alpha,
        beta,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyReport {
    /// `b_0, …, b_N`
    pub betti: Vec<usize>,
    /// `χ = Σ (-1)^p b_p`
    pub euler: i64,
    pub harmonic_basis: Vec<Vec<Cochain>>,
}

/// Betti numbers computed as `dim ker L_p` and cross-checked against
/// `nullity(d_p) - rank(d_{p-1})`; the Euler characteristic is
/// cross-checked against the alternating simplex count.
pub fn cohomology_report(complex: &Arc<SimplicialComplex>) -> Result<CohomologyReport> {
    let top = complex.dim();
    let ranks: Vec<usize> = (0..=top).map(|p| linalg::rank(complex.coboundary_matrix(p))).collect();
    let mut betti = Vec::with_capacity(top + 1);
    let mut bases = Vec::with_capacity(top + 1);
    for p in 0..=top {
        let basis = harmonic_basis(complex, p);
        let nullity = complex.count(p) - ranks[p];
        let image = if p == 0 { 0 } else { ranks[p - 1] };
        let quotient = nullity - image;
        if basis.len() != quotient {
            return Err(Error::Invariant(format!(
                "degree {p}: harmonic dimension {} differs from cohomology rank {quotient}",
                basis.len()
            )));
        }
        betti.push(quotient);
        bases.push(basis);
    }
    let alternate = |xs: &[usize]| -> i64 {
        xs.iter()
            .enumerate()
            .map(|(p, &b)| if p % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    };
    let euler = alternate(&betti);
    let by_count = alternate(&complex.counts());
    if euler != by_count {
        return Err(Error::Invariant(format!(
            "Euler characteristic {euler} from Betti numbers differs from simplex count {by_count}"
        )));
    }
    Ok(CohomologyReport {
        betti,
        euler,
        harmonic_basis: bases,
    })
}

fn require_closed(w: &Cochain) -> Result<()> {
    if coboundary(w).is_zero() {
        Ok(())
    } else {
        Err(Error::NotClosed)
    }
}

/// Whether two closed cochains differ by a coboundary; returns `θ` with
/// `w1 - w2 = dθ` when it exists (none is needed in degree 0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologousReport {
    pub cohomologous: bool,
    pub witness: Option<Cochain>,
}

pub fn cohomologous(w1: &Cochain, w2: &Cochain) -> Result<CohomologousReport> {
    let diff = w1.checked_sub(w2)?;
    require_closed(w1)?;
    require_closed(w2)?;
    if w1.degree == 0 {
        return Ok(CohomologousReport {
            cohomologous: diff.is_zero(),
            witness: None,
        });
    }
    let k = &w1.complex;
    let theta = linalg::solve(k.coboundary_matrix(w1.degree - 1), &diff.values).map(|values| Cochain {
        complex: Arc::clone(k),
        degree: w1.degree - 1,
        values,
    });
    Ok(CohomologousReport {
        cohomologous: theta.is_some(),
        witness: theta,
    })
}

/// The unique harmonic cochain cohomologous to a closed `w`.
pub fn harmonic_representative(w: &Cochain) -> Result<Cochain> {
    require_closed(w)?;
    Ok(hodge_decompose(w).harmonic)
}
