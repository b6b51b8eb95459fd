//! Exact integration of polynomial forms over affine simplices in ℝⁿ.
//!
//! A form is pulled back through the affine parametrization
//! `x = v0 + Σ tₖ (vₖ - v0)` of each simplex, which turns it into
//! `g(t) dt1∧…∧dtp` on the standard simplex. Monomials then integrate by
//! `∫ t^a dt = (∏ aᵢ!) / (p + Σ aᵢ)!`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exterior::DifferentialForm;
use crate::linalg::{rank, SparseMatrix};
use crate::poly::{Polynomial, Rational};

pub type Point = Vec<Rational>;

/// Oriented affine p-simplex with rational vertices. The orientation is the
/// vertex order, flipped when `orientation` is `-1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EmbeddedSimplex {
    vertices: Vec<Point>,
    orientation: i8,
}

impl EmbeddedSimplex {
    pub fn new(vertices: Vec<Point>, orientation: i8) -> Result<Self> {
        if orientation != 1 && orientation != -1 {
            return Err(Error::DegenerateSimplex(format!(
                "orientation must be +1 or -1, got {orientation}"
            )));
        }
        let Some(first) = vertices.first() else {
            return Err(Error::DegenerateSimplex("simplex has no vertices".into()));
        };
        let ambient = first.len();
        if ambient == 0 {
            return Err(Error::DegenerateSimplex("vertices have no coordinates".into()));
        }
        if let Some(v) = vertices.iter().find(|v| v.len() != ambient) {
            return Err(Error::DimensionMismatch {
                left: ambient,
                right: v.len(),
            });
        }
        let p = vertices.len() - 1;
        if p > ambient {
            return Err(Error::DegenerateSimplex(format!(
                "{p}-simplex cannot be affinely independent in R^{ambient}"
            )));
        }
        let edges: Vec<Vec<Rational>> = vertices[1..]
            .iter()
            .map(|v| v.iter().zip(first).map(|(a, b)| a - b).collect())
            .collect();
        if p > 0 && rank(&SparseMatrix::from_dense(&edges)) < p {
            return Err(Error::DegenerateSimplex(format!(
                "vertices of the {p}-simplex are affinely dependent"
            )));
        }
        Ok(EmbeddedSimplex { vertices, orientation })
    }

    /// Positively ordered simplex from integer coordinates.
    pub fn from_ints(vertices: &[&[i64]]) -> Result<Self> {
        let pts = vertices
            .iter()
            .map(|v| v.iter().map(|&c| Rational::from_integer(c.into())).collect())
            .collect();
        Self::new(pts, 1)
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn orientation(&self) -> i8 {
        self.orientation
    }

    pub fn ambient(&self) -> usize {
        self.vertices[0].len()
    }

    pub fn degree(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn reversed(&self) -> Self {
        EmbeddedSimplex {
            vertices: self.vertices.clone(),
            orientation: -self.orientation,
        }
    }

    /// Facets with their alternating signs `(-1)^i` (vertex `i` omitted).
    pub fn facets(&self) -> Vec<(i8, EmbeddedSimplex)> {
        (0..self.vertices.len())
            .map(|i| {
                let mut vs = self.vertices.clone();
                vs.remove(i);
                let sign = if i % 2 == 0 { 1 } else { -1 };
                (
                    sign,
                    EmbeddedSimplex {
                        vertices: vs,
                        orientation: self.orientation,
                    },
                )
            })
            .collect()
    }

    /// Sorted vertex list and the sign relating it to this oriented simplex.
    fn canonical(&self) -> (i8, Vec<Point>) {
        let mut vs = self.vertices.clone();
        let mut sign = self.orientation;
        for i in 1..vs.len() {
            let mut j = i;
            while j > 0 && vs[j - 1] > vs[j] {
                vs.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        (sign, vs)
    }
}

/// Formal rational combination of oriented p-simplices in ℝⁿ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedChain {
    ambient: usize,
    degree: usize,
    terms: Vec<(Rational, EmbeddedSimplex)>,
}

impl EmbeddedChain {
    pub fn new(ambient: usize, degree: usize) -> Self {
        EmbeddedChain {
            ambient,
            degree,
            terms: Vec::new(),
        }
    }

    pub fn from_simplex(simplex: EmbeddedSimplex) -> Self {
        let mut c = Self::new(simplex.ambient(), simplex.degree());
        c.terms.push((Rational::one(), simplex));
        c
    }

    pub fn push(&mut self, coeff: Rational, simplex: EmbeddedSimplex) -> Result<()> {
        if simplex.ambient() != self.ambient {
            return Err(Error::DimensionMismatch {
                left: self.ambient,
                right: simplex.ambient(),
            });
        }
        if simplex.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: simplex.degree(),
            });
        }
        self.terms.push((coeff, simplex));
        Ok(())
    }

    pub fn with(mut self, coeff: Rational, simplex: EmbeddedSimplex) -> Result<Self> {
        self.push(coeff, simplex)?;
        Ok(self)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &[(Rational, EmbeddedSimplex)] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        EmbeddedChain {
            ambient: self.ambient,
            degree: self.degree,
            terms: self.terms.iter().map(|(c, s)| (c * factor, s.clone())).collect(),
        }
    }

    pub fn reversed(&self) -> Self {
        EmbeddedChain {
            ambient: self.ambient,
            degree: self.degree,
            terms: self.terms.iter().map(|(c, s)| (c.clone(), s.reversed())).collect(),
        }
    }

    /// Formal sum.
    pub fn concat(&self, other: &EmbeddedChain) -> Result<Self> {
        let mut out = self.clone();
        for (c, s) in &other.terms {
            out.push(c.clone(), s.clone())?;
        }
        Ok(out)
    }

    /// Merge terms over the same vertex set (sign from vertex order and
    /// orientation) and drop zero coefficients.
    pub fn simplified(&self) -> Self {
        let mut merged: BTreeMap<Vec<Point>, Rational> = BTreeMap::new();
        for (c, s) in &self.terms {
            let (sign, key) = s.canonical();
            let entry = merged.entry(key).or_insert_with(Rational::zero);
            if sign < 0 {
                *entry -= c;
            } else {
                *entry += c;
            }
        }
        EmbeddedChain {
            ambient: self.ambient,
            degree: self.degree,
            terms: merged
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(vertices, c)| {
                    (
                        c,
                        EmbeddedSimplex {
                            vertices,
                            orientation: 1,
                        },
                    )
                })
                .collect(),
        }
    }
}

fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `∫_{Δᵖ} t₁^{a₁}…t_p^{a_p} dt = (∏ aᵢ!) / (p + Σ aᵢ)!` over the standard
/// p-simplex `{t ≥ 0, Σ t ≤ 1}`.
pub fn simplex_moment(exponents: &[u32]) -> Rational {
    let p = exponents.len() as u32;
    let numer = exponents.iter().fold(BigInt::one(), |acc, &a| acc * factorial(a));
    let total: u32 = exponents.iter().sum();
    Rational::new(numer, factorial(p + total))
}

/// Integral of a polynomial in `t1..tp` over the standard p-simplex.
pub fn integrate_standard_simplex(g: &Polynomial) -> Rational {
    g.terms()
        .map(|(m, c)| c * simplex_moment(m.exponents()))
        .fold(Rational::zero(), |acc, v| acc + v)
}

fn integrate_simplex(w: &DifferentialForm, s: &EmbeddedSimplex) -> Rational {
    let p = s.degree();
    let n = s.ambient();
    let v0 = &s.vertices[0];
    let value = if p == 0 {
        w.as_scalar().expect("degree checked").eval(v0)
    } else {
        let edges: Vec<Vec<Rational>> = s.vertices[1..]
            .iter()
            .map(|v| v.iter().zip(v0).map(|(a, b)| a - b).collect())
            .collect();
        // x_j = v0_j + Σ_k t_k e_k[j]
        let images: Vec<Polynomial> = (0..n)
            .map(|j| {
                let mut x = Polynomial::constant(p, v0[j].clone());
                for (k, e) in edges.iter().enumerate() {
                    x += Polynomial::var(p, k).scale(&e[j]);
                }
                x
            })
            .collect();
        // dx^j pulls back to Σ_k e_k[j] dt_k
        let pulled_dx: Vec<DifferentialForm> = (0..n)
            .map(|j| DifferentialForm::one_form(edges.iter().map(|e| Polynomial::constant(p, e[j].clone())).collect()))
            .collect();
        let top = crate::exterior::MultiIndex::new((0..p).collect()).expect("increasing");
        let mut integrand = Polynomial::zero(p);
        for (blade, c) in w.terms() {
            let mut jac = DifferentialForm::constant(p, Rational::one());
            for &j in blade.indices() {
                jac = jac.wedge(&pulled_dx[j]).expect("same dimension");
            }
            let det = jac.coeff(&top);
            if det.is_zero() {
                continue;
            }
            integrand += &c.substitute(&images) * &det;
        }
        integrate_standard_simplex(&integrand)
    };
    if s.orientation < 0 {
        -value
    } else {
        value
    }
}

/// Period `⟨C, w⟩ = ∫_C w`.
pub fn integrate_form(w: &DifferentialForm, c: &EmbeddedChain) -> Result<Rational> {
    if w.dim() != c.ambient {
        return Err(Error::DimensionMismatch {
            left: w.dim(),
            right: c.ambient,
        });
    }
    if w.degree() != c.degree {
        return Err(Error::DegreeMismatch {
            expected: c.degree,
            found: w.degree(),
        });
    }
    Ok(c.terms
        .iter()
        .filter(|(coeff, _)| !coeff.is_zero())
        .map(|(coeff, s)| coeff * integrate_simplex(w, s))
        .fold(Rational::zero(), |acc, v| acc + v))
}

/// Alternating facet sum, simplified so that `∂∂c` is the empty chain.
pub fn chain_boundary(c: &EmbeddedChain) -> Result<EmbeddedChain> {
    if c.degree == 0 {
        return Err(Error::InvalidDegree {
            degree: 0,
            reason: "a 0-chain has no boundary",
        });
    }
    let mut out = EmbeddedChain::new(c.ambient, c.degree - 1);
    for (coeff, s) in &c.terms {
        for (sign, facet) in s.facets() {
            let k = if sign < 0 { -coeff } else { coeff.clone() };
            out.terms.push((k, facet));
        }
    }
    Ok(out.simplified())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StokesReport {
    /// `∫_{∂C} w`
    pub lhs: Rational,
    /// `∫_C dw`
    pub rhs: Rational,
    pub equal: bool,
}

pub fn stokes_check(w: &DifferentialForm, c: &EmbeddedChain) -> Result<StokesReport> {
    if c.degree != w.degree() + 1 {
        return Err(Error::DegreeMismatch {
            expected: w.degree() + 1,
            found: c.degree,
        });
    }
    let lhs = integrate_form(w, &chain_boundary(c)?)?;
    let rhs = integrate_form(&w.d(), c)?;
    let equal = lhs == rhs;
    Ok(StokesReport { lhs, rhs, equal })
}

fn check_domain(a: &DifferentialForm, domain: &EmbeddedChain) -> Result<()> {
    if domain.degree != domain.ambient {
        return Err(Error::DegreeMismatch {
            expected: domain.ambient,
            found: domain.degree,
        });
    }
    if a.dim() != domain.ambient {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: domain.ambient,
        });
    }
    Ok(())
}

/// `(a, b) = ∫_domain a ∧ ⋆b` over a full-degree chain.
pub fn l2_inner(a: &DifferentialForm, b: &DifferentialForm, domain: &EmbeddedChain) -> Result<Rational> {
    check_domain(a, domain)?;
    if a.degree() != b.degree() {
        return Err(Error::DegreeMismatch {
            expected: a.degree(),
            found: b.degree(),
        });
    }
    integrate_form(&a.wedge(&b.star())?, domain)
}

/// `‖a‖ = ∫_domain ⟨a, a⟩ ⋆1`.
pub fn norm_functional(a: &DifferentialForm, domain: &EmbeddedChain) -> Result<Rational> {
    l2_inner(a, a, domain)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjointnessReport {
    /// `(da, b)`
    pub lhs: Rational,
    /// `(a, δb)`
    pub rhs: Rational,
    pub difference: Rational,
    /// `∫_{∂domain} a ∧ ⋆b`; equals `difference` exactly.
    pub boundary_term: Rational,
}

/// Compares `(da, b)` with `(a, δb)` on a bounded domain. Since
/// `d(a∧⋆b) = da∧⋆b - a∧⋆δb`, the two differ by the boundary flux
/// `∫_{∂domain} a∧⋆b`, which is reported alongside.
pub fn adjointness_check(
    a: &DifferentialForm,
    b: &DifferentialForm,
    domain: &EmbeddedChain,
) -> Result<AdjointnessReport> {
    check_domain(a, domain)?;
    if b.degree() != a.degree() + 1 {
        return Err(Error::DegreeMismatch {
            expected: a.degree() + 1,
            found: b.degree(),
        });
    }
    let lhs = l2_inner(&a.d(), b, domain)?;
    let rhs = l2_inner(a, &b.codiff(), domain)?;
    let boundary_term = integrate_form(&a.wedge(&b.star())?, &chain_boundary(domain)?)?;
    Ok(AdjointnessReport {
        difference: &lhs - &rhs,
        lhs,
        rhs,
        boundary_term,
    })
}

/// Standard simplex `(0, e1, …, en)`, positively oriented.
pub fn standard_simplex(n: usize) -> EmbeddedSimplex {
    let mut vertices = vec![vec![Rational::zero(); n]];
    for i in 0..n {
        let mut v = vec![Rational::zero(); n];
        v[i] = Rational::one();
        vertices.push(v);
    }
    EmbeddedSimplex::new(vertices, 1).expect("standard simplex is nondegenerate")
}

/// Positively oriented Kuhn triangulation of `[0, 1]ⁿ` into `n!` simplices.
pub fn unit_cube(n: usize) -> EmbeddedChain {
    fn permutations(n: usize) -> Vec<(i8, Vec<usize>)> {
        if n == 0 {
            return vec![(1, Vec::new())];
        }
        let mut out = Vec::new();
        for (sign, perm) in permutations(n - 1) {
            // insert n-1 at every position; moving it left past k entries flips k times
            for pos in 0..=perm.len() {
                let mut p = perm.clone();
                p.insert(pos, n - 1);
                let flips = perm.len() - pos;
                out.push((if flips % 2 == 0 { sign } else { -sign }, p));
            }
        }
        out
    }
    let mut chain = EmbeddedChain::new(n, n);
    for (sign, perm) in permutations(n) {
        let mut v = vec![Rational::zero(); n];
        let mut vertices = vec![v.clone()];
        for &axis in &perm {
            v[axis] = Rational::one();
            vertices.push(v.clone());
        }
        let simplex = EmbeddedSimplex::new(vertices, 1).expect("Kuhn simplex is nondegenerate");
        chain
            .push(Rational::from_integer(sign.into()), simplex)
            .expect("consistent shape");
    }
    chain
}
