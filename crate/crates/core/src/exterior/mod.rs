//! Symbolic exterior calculus on ℝⁿ with polynomial coefficients.
//!
//! A [`DifferentialForm`] of degree `p` is a finite sum `Σ_I w_I dx^I` over
//! strictly increasing multi-indices `I` of length `p`, with each `w_I` an
//! exact [`Polynomial`] in `x1..xn`. The wedge product, exterior derivative,
//! Euclidean Hodge star, codifferential and Hodge Laplacian are all closed on
//! this representation, so every identity between them can be checked as an
//! exact equality of coefficient maps.
//!
//! Indices are zero-based in the API (`dx^0` is printed as `dx1`).

mod homotopy;
mod maxwell;
mod star;
mod vector;

pub use homotopy::homotopy_operator;
pub use maxwell::{maxwell_action, maxwell_field, MaxwellReport};
pub use star::{double_star_sign, HarmonicCheck, MetricContext};
pub use vector::{curl, div, grad};

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::poly::{format_rational, Polynomial, Rational};

/// Strictly increasing tuple of zero-based coordinate indices naming the
/// basis blade `dx^{i1} ∧ … ∧ dx^{ip}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    /// The empty index, basis of 0-forms.
    pub fn empty() -> Self {
        MultiIndex(Vec::new())
    }

    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidDegree {
                degree: indices.len(),
                reason: "multi-index must be strictly increasing",
            });
        }
        Ok(MultiIndex(indices))
    }

    /// Sort an arbitrary index list, returning the permutation sign, or
    /// `None` when an index repeats (the blade vanishes).
    pub fn sorted(mut indices: Vec<usize>) -> Option<(i8, Self)> {
        let mut sign = 1i8;
        // insertion sort, counting transpositions
        for i in 1..indices.len() {
            let mut j = i;
            while j > 0 && indices[j - 1] > indices[j] {
                indices.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((sign, MultiIndex(indices)))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.0.binary_search(&index).is_ok()
    }

    /// `dx^I ∧ dx^J = sign · dx^{I∪J}`, or `None` if they share an index.
    pub fn wedge(&self, other: &MultiIndex) -> Option<(i8, MultiIndex)> {
        let mut sign = 1i8;
        for &a in &self.0 {
            for &b in &other.0 {
                if a == b {
                    return None;
                }
                if a > b {
                    sign = -sign;
                }
            }
        }
        let mut merged: Vec<usize> = self.0.iter().chain(&other.0).copied().collect();
        merged.sort_unstable();
        Some((sign, MultiIndex(merged)))
    }

    /// Complement within `0..n` together with the sign of the permutation
    /// `(I, Iᶜ)` relative to `(0, …, n-1)`.
    pub fn complement(&self, n: usize) -> (i8, MultiIndex) {
        let rest = MultiIndex((0..n).filter(|i| !self.contains(*i)).collect());
        let (sign, _) = self
            .wedge(&rest)
            .expect("a multi-index and its complement are disjoint");
        (sign, rest)
    }

    /// Remove the entry at `position`, returning `(-1)^position` and the rest.
    pub fn remove_at(&self, position: usize) -> (i8, MultiIndex) {
        let mut rest = self.0.clone();
        rest.remove(position);
        let sign = if position.is_multiple_of(2) { 1 } else { -1 };
        (sign, MultiIndex(rest))
    }

    /// All strictly increasing multi-indices of length `p` in `0..n`.
    pub fn all(n: usize, p: usize) -> Vec<MultiIndex> {
        fn rec(start: usize, n: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<MultiIndex>) {
            if cur.len() == p {
                out.push(MultiIndex(cur.clone()));
                return;
            }
            for i in start..n {
                cur.push(i);
                rec(i + 1, n, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if p <= n {
            rec(0, n, p, &mut Vec::with_capacity(p), &mut out);
        }
        out
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| format!("dx{}", i + 1)).collect();
        f.write_str(&parts.join("^"))
    }
}

/// A degree-`p` polynomial differential form on ℝⁿ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DifferentialForm {
    dim: usize,
    degree: usize,
    terms: BTreeMap<MultiIndex, Polynomial>,
}

impl DifferentialForm {
    /// The zero form of degree `degree` on ℝ^`dim`. Panics if `degree > dim`.
    pub fn zero(dim: usize, degree: usize) -> Self {
        assert!(degree <= dim, "degree {degree} exceeds dimension {dim}");
        DifferentialForm {
            dim,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// A 0-form (function).
    pub fn scalar(f: Polynomial) -> Self {
        let mut w = Self::zero(f.nvars(), 0);
        w.add_term(MultiIndex::empty(), f);
        w
    }

    pub fn constant(dim: usize, value: Rational) -> Self {
        Self::scalar(Polynomial::constant(dim, value))
    }

    /// `coeff · dx^I` for an increasing multi-index `I`.
    pub fn monomial(dim: usize, blade: MultiIndex, coeff: Polynomial) -> Result<Self> {
        if coeff.nvars() != dim {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: coeff.nvars(),
            });
        }
        if let Some(&last) = blade.indices().last() {
            if last >= dim {
                return Err(Error::IndexOutOfRange {
                    index: last,
                    bound: dim,
                });
            }
        }
        let mut w = Self::zero(dim, blade.degree());
        w.add_term(blade, coeff);
        Ok(w)
    }

    /// The basis blade `dx^{i1} ∧ … ∧ dx^{ip}` for arbitrary (possibly
    /// unsorted or repeated) zero-based indices.
    pub fn blade(dim: usize, indices: &[usize]) -> Result<Self> {
        if let Some(&bad) = indices.iter().find(|&&i| i >= dim) {
            return Err(Error::IndexOutOfRange { index: bad, bound: dim });
        }
        if indices.len() > dim {
            return Ok(Self::zero(dim, dim));
        }
        let mut w = Self::zero(dim, indices.len());
        if let Some((sign, blade)) = MultiIndex::sorted(indices.to_vec()) {
            w.add_term(blade, Polynomial::constant(dim, Rational::from_integer(sign.into())));
        }
        Ok(w)
    }

    /// `Σ_i coeffs[i] dx^i`.
    pub fn one_form(coeffs: Vec<Polynomial>) -> Self {
        let dim = coeffs.len();
        let mut w = Self::zero(dim, 1);
        for (i, c) in coeffs.into_iter().enumerate() {
            assert_eq!(c.nvars(), dim);
            w.add_term(MultiIndex(vec![i]), c);
        }
        w
    }

    /// Build from `(blade, coefficient)` pairs of a common degree.
    pub fn from_terms<I>(dim: usize, degree: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Polynomial)>,
    {
        if degree > dim {
            return Err(Error::InvalidDegree {
                degree,
                reason: "form degree exceeds ambient dimension",
            });
        }
        let mut w = Self::zero(dim, degree);
        for (blade, coeff) in terms {
            let part = Self::monomial(dim, blade, coeff)?;
            if part.degree != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: part.degree,
                });
            }
            w = &w + &part;
        }
        Ok(w)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Polynomial)> {
        self.terms.iter()
    }

    pub fn coeff(&self, blade: &MultiIndex) -> Polynomial {
        self.terms
            .get(blade)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(self.dim))
    }

    /// The coefficient of a 0-form.
    pub fn as_scalar(&self) -> Option<Polynomial> {
        (self.degree == 0).then(|| self.coeff(&MultiIndex::empty()))
    }

    fn add_term(&mut self, blade: MultiIndex, coeff: Polynomial) {
        debug_assert_eq!(blade.degree(), self.degree);
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(blade) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Apply `f` to every coefficient, keeping the blade structure.
    pub fn map_coeffs(&self, mut f: impl FnMut(&Polynomial) -> Polynomial) -> Self {
        let mut out = Self::zero(self.dim, self.degree);
        for (blade, c) in &self.terms {
            out.add_term(blade.clone(), f(c));
        }
        out
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        self.map_coeffs(|c| c.scale(factor))
    }

    /// Multiply by a function.
    pub fn mul_scalar(&self, f: &Polynomial) -> Self {
        self.map_coeffs(|c| c * f)
    }

    /// Sum that rejects mismatched dimension or degree. A zero operand of
    /// another degree is treated as the additive identity.
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        if self.degree != other.degree {
            if other.is_zero() {
                return Ok(self.clone());
            }
            if self.is_zero() {
                return Ok(other.clone());
            }
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        Ok(self + other)
    }

    /// Exterior product. When `p + q > n` every blade vanishes and the zero
    /// form of degree `n` is returned.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        let degree = self.degree + other.degree;
        if degree > self.dim {
            return Ok(Self::zero(self.dim, self.dim));
        }
        let mut out = Self::zero(self.dim, degree);
        for (ia, ca) in &self.terms {
            for (ib, cb) in &other.terms {
                if let Some((sign, blade)) = ia.wedge(ib) {
                    let prod = ca * cb;
                    out.add_term(blade, if sign < 0 { -prod } else { prod });
                }
            }
        }
        Ok(out)
    }

    /// Exterior derivative `dw = Σ_I Σ_i ∂_i w_I dx^i ∧ dx^I`.
    ///
    /// `d` of a top-degree form is the zero form of degree `n`.
    pub fn d(&self) -> Self {
        if self.degree >= self.dim {
            return Self::zero(self.dim, self.dim);
        }
        let mut out = Self::zero(self.dim, self.degree + 1);
        for (blade, c) in &self.terms {
            for i in 0..self.dim {
                let Some((sign, merged)) = MultiIndex(vec![i]).wedge(blade) else {
                    continue;
                };
                let di = c.partial(i).expect("index below dimension");
                out.add_term(merged, if sign < 0 { -di } else { di });
            }
        }
        out
    }

    /// Witten-deformed differential `d_t w = dw + t·(df ∧ w)`, the action of
    /// `e^{-tf} d e^{tf}` on polynomial forms.
    pub fn witten_d(&self, f: &Polynomial, t: &Rational) -> Result<Self> {
        if f.nvars() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: f.nvars(),
            });
        }
        let df = Self::scalar(f.clone()).d();
        let twist = df.wedge(self)?.scale(t);
        Ok(&self.d() + &twist)
    }
}

/// Exterior derivative as a free function.
pub fn exterior_derivative(w: &DifferentialForm) -> DifferentialForm {
    w.d()
}

/// Exterior product as a free function.
pub fn wedge(a: &DifferentialForm, b: &DifferentialForm) -> Result<DifferentialForm> {
    a.wedge(b)
}

/// `d_t = d + t·df∧`.
pub fn witten_derivative(w: &DifferentialForm, f: &Polynomial, t: &Rational) -> Result<DifferentialForm> {
    w.witten_d(f, t)
}

/// Whether `d(a∧b) = da∧b + (-1)^p a∧db` holds exactly.
pub fn graded_leibniz_check(a: &DifferentialForm, b: &DifferentialForm) -> Result<bool> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch {
            left: a.dim,
            right: b.dim,
        });
    }
    let lhs = a.wedge(b)?.d();
    let first = a.d().wedge(b)?;
    let mut second = a.wedge(&b.d())?;
    if a.degree % 2 == 1 {
        second = -second;
    }
    if a.degree + b.degree + 1 > a.dim {
        // every term has more than n blade factors
        return Ok(lhs.is_zero() && first.is_zero() && second.is_zero());
    }
    Ok(lhs == &first + &second)
}

impl Add for &DifferentialForm {
    type Output = DifferentialForm;

    /// Panics on mismatched dimension or degree; see [`DifferentialForm::checked_add`].
    fn add(self, rhs: &DifferentialForm) -> DifferentialForm {
        assert_eq!(self.dim, rhs.dim, "forms on different spaces");
        assert_eq!(self.degree, rhs.degree, "forms of different degree");
        let mut out = self.clone();
        for (blade, c) in &rhs.terms {
            out.add_term(blade.clone(), c.clone());
        }
        out
    }
}

impl Add for DifferentialForm {
    type Output = DifferentialForm;
    fn add(self, rhs: DifferentialForm) -> DifferentialForm {
        &self + &rhs
    }
}

impl Sub for &DifferentialForm {
    type Output = DifferentialForm;
    fn sub(self, rhs: &DifferentialForm) -> DifferentialForm {
        self + &(-rhs)
    }
}

impl Sub for DifferentialForm {
    type Output = DifferentialForm;
    fn sub(self, rhs: DifferentialForm) -> DifferentialForm {
        &self - &rhs
    }
}

impl Neg for &DifferentialForm {
    type Output = DifferentialForm;
    fn neg(self) -> DifferentialForm {
        self.map_coeffs(|c| -c)
    }
}

impl Neg for DifferentialForm {
    type Output = DifferentialForm;
    fn neg(self) -> DifferentialForm {
        -&self
    }
}

/// Coefficient rendering: `(sign, body)` where `body` is safe to follow with `*dx…`.
fn coeff_parts(c: &Polynomial) -> (bool, Option<String>) {
    if c.len() == 1 {
        let (m, r) = c.terms().next().expect("one term");
        let negative = r.is_negative();
        let magnitude = r.abs();
        if m.degree() == 0 {
            return (negative, (!magnitude.is_one()).then(|| format_rational(&magnitude)));
        }
        let positive = Polynomial::monomial(m.clone(), magnitude);
        return (negative, Some(positive.to_string()));
    }
    (false, Some(format!("({c})")))
}

/// Canonical text in the CLI expression language, e.g.
/// `(x1 + x2)*dx1^dx2 - 3/2*x3*dx1^dx3`. A zero form of positive degree is
/// printed as `0*dx1^…^dxp` so that its degree survives re-parsing.
impl fmt::Display for DifferentialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 0 {
            return write!(f, "{}", self.coeff(&MultiIndex::empty()));
        }
        if self.terms.is_empty() {
            let blade = MultiIndex((0..self.degree).collect());
            return write!(f, "0*{blade}");
        }
        for (k, (blade, c)) in self.terms.iter().enumerate() {
            let (negative, body) = coeff_parts(c);
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            match body {
                Some(body) => write!(f, "{body}*{blade}")?,
                None => write!(f, "{blade}")?,
            }
        }
        Ok(())
    }
}

/// Sign of `(-1)^k`.
pub(crate) fn parity_sign(k: usize) -> Rational {
    if k.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}
