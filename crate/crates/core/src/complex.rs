//! Oriented abstract simplicial complexes and rational chains.
//!
//! Simplices are stored as strictly increasing vertex-id tuples, sorted
//! lexicographically within each dimension, so the index of a simplex (and
//! therefore every boundary matrix) is a deterministic function of the facet
//! list. The boundary of `[v0, …, vp]` is `Σ (-1)^i [v0, …, v̂i, …, vp]`.

use std::collections::{BTreeSet, HashMap};
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, SparseMatrix};
use crate::poly::Rational;

pub type Simplex = Vec<usize>;

/// Sort a vertex tuple, returning the parity of the sorting permutation.
/// `None` if a vertex repeats.
pub fn orient(vertices: &[usize]) -> Option<(i8, Simplex)> {
    let mut vs = vertices.to_vec();
    let mut sign = 1i8;
    for i in 1..vs.len() {
        let mut j = i;
        while j > 0 && vs[j - 1] > vs[j] {
            vs.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if vs.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((sign, vs))
}

#[derive(Debug)]
pub struct SimplicialComplex {
    simplices: Vec<Vec<Simplex>>,
    lookup: Vec<HashMap<Simplex, usize>>,
    /// `boundaries[p]` maps p-chains to (p-1)-chains, for `1 ≤ p ≤ N + 1`.
    boundaries: Vec<SparseMatrix>,
    /// `coboundaries[p] = boundaries[p + 1]ᵀ`, for `0 ≤ p ≤ N`.
    coboundaries: Vec<SparseMatrix>,
    /// Input facets, sorted, with the parity of their input vertex order.
    facets: Vec<(i8, Simplex)>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.simplices == other.simplices
    }
}

impl Eq for SimplicialComplex {}

impl SimplicialComplex {
    /// Face closure of `facets`. Vertices may be listed in any order; the
    /// ordering's parity is kept as the facet's orientation.
    pub fn build(facets: &[Vec<usize>]) -> Result<Self> {
        let mut oriented = Vec::with_capacity(facets.len());
        let mut by_dim: Vec<BTreeSet<Simplex>> = Vec::new();
        for facet in facets {
            if facet.is_empty() {
                return Err(Error::InvalidComplex("empty facet".into()));
            }
            let Some((sign, sorted)) = orient(facet) else {
                return Err(Error::InvalidComplex(format!("facet {facet:?} repeats a vertex")));
            };
            let k = sorted.len();
            if by_dim.len() < k {
                by_dim.resize(k, BTreeSet::new());
            }
            // every non-empty subset, as a bitmask over the sorted facet
            for mask in 1u64..(1u64 << k) {
                let face: Simplex = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| sorted[i]).collect();
                by_dim[face.len() - 1].insert(face);
            }
            oriented.push((sign, sorted));
        }
        if by_dim.is_empty() {
            by_dim.push(BTreeSet::new());
        }
        let simplices: Vec<Vec<Simplex>> = by_dim.into_iter().map(|s| s.into_iter().collect()).collect();
        let lookup: Vec<HashMap<Simplex, usize>> = simplices
            .iter()
            .map(|list| list.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect())
            .collect();
        let top = simplices.len() - 1;

        let mut boundaries = vec![SparseMatrix::zeros(0, simplices[0].len())];
        for p in 1..=top {
            let mut m = SparseMatrix::zeros(simplices[p - 1].len(), simplices[p].len());
            for (j, s) in simplices[p].iter().enumerate() {
                for i in 0..s.len() {
                    let mut face = s.clone();
                    face.remove(i);
                    let row = lookup[p - 1][&face];
                    let sign = if i % 2 == 0 { Rational::one() } else { -Rational::one() };
                    m.set(row, j, sign);
                }
            }
            boundaries.push(m);
        }
        boundaries.push(SparseMatrix::zeros(simplices[top].len(), 0));
        let coboundaries = (0..=top).map(|p| boundaries[p + 1].transpose()).collect();

        Ok(SimplicialComplex {
            simplices,
            lookup,
            boundaries,
            coboundaries,
            facets: oriented,
        })
    }

    /// Top dimension `N`.
    pub fn dim(&self) -> usize {
        self.simplices.len() - 1
    }

    /// Number of p-simplices; zero above the top dimension.
    pub fn count(&self, p: usize) -> usize {
        self.simplices.get(p).map_or(0, Vec::len)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn simplices(&self, p: usize) -> &[Simplex] {
        self.simplices.get(p).map_or(&[], Vec::as_slice)
    }

    pub fn vertices(&self) -> Vec<usize> {
        self.simplices[0].iter().map(|s| s[0]).collect()
    }

    /// Position of a sorted simplex within its dimension.
    pub fn index_of(&self, simplex: &[usize]) -> Option<usize> {
        let p = simplex.len().checked_sub(1)?;
        self.lookup.get(p)?.get(simplex).copied()
    }

    pub fn facets(&self) -> &[(i8, Simplex)] {
        &self.facets
    }

    /// Signed incidence matrix `∂_p`, shape `#(p-1) × #p`, for `0 ≤ p ≤ N + 1`
    /// (`∂_0` is the empty map out of vertices).
    pub fn boundary_matrix(&self, p: usize) -> &SparseMatrix {
        assert!(
            p < self.boundaries.len(),
            "boundary matrix of degree {p} outside 0..={}",
            self.dim() + 1
        );
        &self.boundaries[p]
    }

    /// Coboundary `d_p = ∂_{p+1}ᵀ`, shape `#(p+1) × #p`, for `0 ≤ p ≤ N`.
    pub fn coboundary_matrix(&self, p: usize) -> &SparseMatrix {
        assert!(p <= self.dim(), "coboundary of degree {p} above top dimension");
        &self.coboundaries[p]
    }

    /// Cone with a fresh apex vertex. Every cone is contractible.
    pub fn cone(&self) -> Result<SimplicialComplex> {
        let apex = self.vertices().into_iter().max().map_or(0, |v| v + 1);
        let facets: Vec<Vec<usize>> = if self.facets.is_empty() {
            vec![vec![apex]]
        } else {
            self.facets
                .iter()
                .map(|(_, f)| {
                    let mut f = f.clone();
                    f.push(apex);
                    f
                })
                .collect()
        };
        SimplicialComplex::build(&facets)
    }
}

/// Build a complex from facets (see [`SimplicialComplex::build`]).
pub fn build_complex(facets: &[Vec<usize>]) -> Result<Arc<SimplicialComplex>> {
    SimplicialComplex::build(facets).map(Arc::new)
}

pub(crate) fn same_complex(a: &Arc<SimplicialComplex>, b: &Arc<SimplicialComplex>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Rational p-chain on a complex, one coefficient per p-simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    complex: Arc<SimplicialComplex>,
    degree: usize,
    coeffs: Vec<Rational>,
}

impl Chain {
    pub fn zero(complex: &Arc<SimplicialComplex>, degree: usize) -> Self {
        Chain {
            complex: Arc::clone(complex),
            degree,
            coeffs: vec![Rational::zero(); complex.count(degree)],
        }
    }

    pub fn from_coeffs(complex: &Arc<SimplicialComplex>, degree: usize, coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() != complex.count(degree) {
            return Err(Error::DimensionMismatch {
                left: complex.count(degree),
                right: coeffs.len(),
            });
        }
        Ok(Chain {
            complex: Arc::clone(complex),
            degree,
            coeffs,
        })
    }

    /// The oriented simplex `[v0, …, vp]` as a chain; an odd vertex order
    /// gives coefficient `-1` on the sorted simplex.
    pub fn simplex(complex: &Arc<SimplicialComplex>, vertices: &[usize]) -> Result<Self> {
        let (sign, sorted) =
            orient(vertices).ok_or_else(|| Error::InvalidComplex(format!("simplex {vertices:?} repeats a vertex")))?;
        let idx = complex
            .index_of(&sorted)
            .ok_or_else(|| Error::InvalidComplex(format!("simplex {vertices:?} not in complex")))?;
        let mut c = Self::zero(complex, sorted.len() - 1);
        c.coeffs[idx] = Rational::from_integer(sign.into());
        Ok(c)
    }

    /// Sum of the top-dimensional input facets with their input orientations.
    pub fn fundamental(complex: &Arc<SimplicialComplex>) -> Self {
        let top = complex.dim();
        let mut c = Self::zero(complex, top);
        for (sign, f) in complex.facets() {
            if f.len() == top + 1 {
                let idx = complex.index_of(f).expect("facet stored");
                c.coeffs[idx] += Rational::from_integer((*sign).into());
            }
        }
        c
    }

    pub fn complex(&self) -> &Arc<SimplicialComplex> {
        &self.complex
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Chain {
            complex: Arc::clone(&self.complex),
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    fn check_compatible(&self, other: &Chain) -> Result<()> {
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

    pub fn checked_add(&self, other: &Chain) -> Result<Chain> {
        self.check_compatible(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Chain) -> Result<Chain> {
        self.check_compatible(other)?;
        Ok(self - other)
    }
}

impl Add for &Chain {
    type Output = Chain;
    fn add(self, rhs: &Chain) -> Chain {
        assert_eq!(self.degree, rhs.degree, "chains of different degree");
        assert_eq!(self.coeffs.len(), rhs.coeffs.len(), "chains on different complexes");
        Chain {
            complex: Arc::clone(&self.complex),
            degree: self.degree,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Chain {
    type Output = Chain;
    fn sub(self, rhs: &Chain) -> Chain {
        self + &(-rhs)
    }
}

impl Neg for &Chain {
    type Output = Chain;
    fn neg(self) -> Chain {
        self.scale(&-Rational::one())
    }
}

/// `∂c`; 0-chains have no boundary.
pub fn boundary(c: &Chain) -> Result<Chain> {
    if c.degree == 0 {
        return Err(Error::InvalidDegree {
            degree: 0,
            reason: "a 0-chain has no boundary",
        });
    }
    let m = c.complex.boundary_matrix(c.degree);
    Ok(Chain {
        complex: Arc::clone(&c.complex),
        degree: c.degree - 1,
        coeffs: m.mul_vec(&c.coeffs),
    })
}

pub fn is_cycle(c: &Chain) -> bool {
    c.degree == 0 || boundary(c).expect("positive degree").is_zero()
}

/// A chain `b` with `∂b = c`, if one exists.
pub fn is_boundary(c: &Chain) -> Option<Chain> {
    let m = c.complex.boundary_matrix(c.degree + 1);
    let x = linalg::solve(m, &c.coeffs)?;
    Some(Chain {
        complex: Arc::clone(&c.complex),
        degree: c.degree + 1,
        coeffs: x,
    })
}

/// Whether two cycles differ by a boundary; returns the witness `b` with
/// `c1 - c2 = ∂b`.
pub fn homologous(c1: &Chain, c2: &Chain) -> Result<Option<Chain>> {
    let diff = c1.checked_sub(c2)?;
    if !is_cycle(c1) || !is_cycle(c2) {
        return Err(Error::NotCycle);
    }
    Ok(is_boundary(&diff))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    fn octahedron() -> Vec<Vec<usize>> {
        let mut facets = Vec::new();
        for (a, sa) in [(0, 1i32), (1, -1)] {
            for (b, sb) in [(2, 1), (3, -1)] {
                for (c, sc) in [(4, 1), (5, -1)] {
                    facets.push(if sa * sb * sc > 0 { vec![a, b, c] } else { vec![a, c, b] });
                }
            }
        }
        facets
    }

    #[test]
    fn single_triangle_closure() {
        let k = build_complex(&[vec![0, 1, 2]]).unwrap();
        assert_eq!(k.counts(), vec![3, 3, 1]);
    }

    #[test]
    fn hollow_triangle() {
        let k = build_complex(&[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert_eq!(k.counts(), vec![3, 3]);
        assert_eq!(k.dim(), 1);
    }

    #[test]
    fn octahedron_counts_and_boundary_squared() {
        let k = build_complex(&octahedron()).unwrap();
        assert_eq!(k.counts(), vec![6, 12, 8]);
        assert!(k.boundary_matrix(1).matmul(k.boundary_matrix(2)).is_zero());
    }

    #[test]
    fn duplicate_vertex_rejected() {
        assert!(matches!(build_complex(&[vec![0, 1, 1]]), Err(Error::InvalidComplex(_))));
        assert!(build_complex(&[vec![]]).is_err());
    }

    #[test]
    fn triangle_boundary() {
        let k = build_complex(&[vec![0, 1, 2]]).unwrap();
        let t = Chain::simplex(&k, &[0, 1, 2]).unwrap();
        let expected = &(&Chain::simplex(&k, &[1, 2]).unwrap() - &Chain::simplex(&k, &[0, 2]).unwrap())
            + &Chain::simplex(&k, &[0, 1]).unwrap();
        assert_eq!(boundary(&t).unwrap(), expected);
        assert!(boundary(&Chain::zero(&k, 0)).is_err());
    }

    #[test]
    fn octahedron_fundamental_cycle() {
        let k = build_complex(&octahedron()).unwrap();
        let fund = Chain::fundamental(&k);
        assert!(fund.coeffs().iter().all(|c| c == &int(1) || c == &int(-1)));
        assert!(boundary(&fund).unwrap().is_zero());
    }

    #[test]
    fn cycles_and_boundaries() {
        let hollow = build_complex(&[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let lp = &(&Chain::simplex(&hollow, &[0, 1]).unwrap() + &Chain::simplex(&hollow, &[1, 2]).unwrap())
            + &Chain::simplex(&hollow, &[2, 0]).unwrap();
        assert!(is_cycle(&lp));
        assert!(is_boundary(&lp).is_none());

        let filled = build_complex(&[vec![0, 1, 2]]).unwrap();
        let b = boundary(&Chain::simplex(&filled, &[0, 1, 2]).unwrap()).unwrap();
        assert!(is_cycle(&b));
        let witness = is_boundary(&b).unwrap();
        assert_eq!(boundary(&witness).unwrap(), b);

        let z = Chain::zero(&filled, 1);
        assert!(is_cycle(&z));
        assert!(is_boundary(&z).is_some());
    }

    #[test]
    fn homologous_rejects_non_cycles() {
        let k = build_complex(&[vec![0, 1, 2]]).unwrap();
        let e = Chain::simplex(&k, &[0, 1]).unwrap();
        assert!(matches!(homologous(&e, &Chain::zero(&k, 1)), Err(Error::NotCycle)));
    }

    #[test]
    fn permuted_facet_records_parity() {
        let k = build_complex(&[vec![2, 0, 1], vec![1, 0, 3]]).unwrap();
        assert_eq!(k.facets()[0], (1, vec![0, 1, 2]));
        assert_eq!(k.facets()[1], (-1, vec![0, 1, 3]));
        assert_eq!(
            Chain::simplex(&k, &[1, 0]).unwrap(),
            -&Chain::simplex(&k, &[0, 1]).unwrap()
        );
    }

    #[test]
    fn deterministic_indexing() {
        let a = build_complex(&octahedron()).unwrap();
        let b = build_complex(&octahedron()).unwrap();
        for p in 1..=2 {
            assert_eq!(a.boundary_matrix(p), b.boundary_matrix(p));
        }
    }
}
