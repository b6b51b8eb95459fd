//! Seeded generators, fixed test complexes and independent oracles shared by
//! the integration and acceptance tests.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use hodgelab::cochain::Cochain;
use hodgelab::complex::{build_complex, SimplicialComplex};
use hodgelab::exterior::{DifferentialForm, MultiIndex};
use hodgelab::integrate::{EmbeddedChain, EmbeddedSimplex};
use hodgelab::poly::{int, rat, Polynomial, Rational};
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn small_rational(rng: &mut StdRng) -> Rational {
    rat(rng.gen_range(-5..=5), rng.gen_range(1..=3))
}

pub fn nonzero_rational(rng: &mut StdRng) -> Rational {
    loop {
        let r = small_rational(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

/// Random polynomial in `n` variables, total degree at most `max_deg`.
pub fn random_poly(rng: &mut StdRng, n: usize, max_deg: u32) -> Polynomial {
    let terms = rng.gen_range(0..=4);
    let mut out = Vec::with_capacity(terms);
    for _ in 0..terms {
        let mut budget = rng.gen_range(0..=max_deg);
        let mut exps = vec![0u32; n];
        while budget > 0 {
            exps[rng.gen_range(0..n)] += 1;
            budget -= 1;
        }
        out.push((exps, small_rational(rng)));
    }
    Polynomial::from_terms(n, out)
}

pub fn random_form(rng: &mut StdRng, n: usize, p: usize, max_deg: u32) -> DifferentialForm {
    let mut terms: Vec<(MultiIndex, Polynomial)> = Vec::new();
    for b in MultiIndex::all(n, p) {
        if rng.gen_bool(0.6) {
            terms.push((b, random_poly(rng, n, max_deg)));
        }
    }
    DifferentialForm::from_terms(n, p, terms).expect("blades have degree p")
}

/// Nondegenerate p-simplex in ℝⁿ with small integer vertices.
pub fn random_simplex(rng: &mut StdRng, n: usize, p: usize) -> EmbeddedSimplex {
    loop {
        let vertices: Vec<Vec<Rational>> = (0..=p)
            .map(|_| (0..n).map(|_| int(rng.gen_range(-2..=2))).collect())
            .collect();
        let orientation = if rng.gen_bool(0.5) { 1 } else { -1 };
        if let Ok(s) = EmbeddedSimplex::new(vertices, orientation) {
            return s;
        }
    }
}

pub fn random_chain(rng: &mut StdRng, n: usize, p: usize) -> EmbeddedChain {
    let mut c = EmbeddedChain::new(n, p);
    for _ in 0..rng.gen_range(1..=2) {
        let coeff = nonzero_rational(rng);
        c.push(coeff, random_simplex(rng, n, p)).expect("shapes agree");
    }
    c
}

/// Random complex on at most 8 vertices with facets of dimension at most 3,
/// listed in random vertex orders.
pub fn random_facets(rng: &mut StdRng) -> Vec<Vec<usize>> {
    let nv = rng.gen_range(3..=8);
    let nf = rng.gen_range(2..=8);
    let verts: Vec<usize> = (0..nv).collect();
    (0..nf)
        .map(|_| {
            let k = rng.gen_range(1..=4.min(nv));
            let mut f: Vec<usize> = verts.choose_multiple(rng, k).cloned().collect();
            f.shuffle(rng);
            f
        })
        .collect()
}

pub fn random_complex(rng: &mut StdRng) -> Arc<SimplicialComplex> {
    build_complex(&random_facets(rng)).expect("random facets are valid")
}

pub fn random_cochain(rng: &mut StdRng, k: &Arc<SimplicialComplex>, p: usize) -> Cochain {
    let values = (0..k.count(p)).map(|_| small_rational(rng)).collect();
    Cochain::from_values(k, p, values).expect("length matches")
}

pub fn hollow_triangle() -> Vec<Vec<usize>> {
    vec![vec![0, 1], vec![1, 2], vec![2, 0]]
}

pub fn filled_triangle() -> Vec<Vec<usize>> {
    vec![vec![0, 1, 2]]
}

/// Boundary of the octahedron on ±e₁, ±e₂, ±e₃ (vertex 2i is +e, 2i+1 is -e),
/// consistently oriented by the outward normal.
pub fn octahedron() -> Vec<Vec<usize>> {
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

/// Seven-vertex torus: triangles {i, i+1, i+3} and {i, i+2, i+3} mod 7.
pub fn torus() -> Vec<Vec<usize>> {
    (0..7)
        .flat_map(|i| [vec![i, (i + 1) % 7, (i + 3) % 7], vec![i, (i + 2) % 7, (i + 3) % 7]])
        .collect()
}

/// Annulus between the loops 0-1-2 and 3-4-5.
pub fn annulus() -> Vec<Vec<usize>> {
    vec![
        vec![0, 1, 3],
        vec![1, 3, 4],
        vec![1, 2, 4],
        vec![2, 4, 5],
        vec![2, 0, 5],
        vec![0, 5, 3],
    ]
}

/// Named fixed complexes used across suites.
pub fn fixed_complexes() -> Vec<(&'static str, Arc<SimplicialComplex>)> {
    [
        ("hollow triangle", hollow_triangle()),
        ("filled triangle", filled_triangle()),
        ("octahedron", octahedron()),
        ("torus", torus()),
        ("annulus", annulus()),
    ]
    .into_iter()
    .map(|(name, f)| (name, build_complex(&f).unwrap()))
    .collect()
}

/// Rank of a dense rational matrix by plain Gaussian elimination.
pub fn oracle_rank(mut m: Vec<Vec<Rational>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && !row[c].is_zero() {
                let factor = &row[c] / &pivot_row[c];
                for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                    *x -= &factor * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// All faces of the given facets, grouped by dimension, sorted.
pub fn oracle_faces(facets: &[Vec<usize>]) -> Vec<Vec<Vec<usize>>> {
    let mut by_dim: Vec<BTreeSet<Vec<usize>>> = Vec::new();
    for f in facets {
        let mut f = f.clone();
        f.sort();
        let k = f.len();
        for mask in 1u32..(1 << k) {
            let face: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).collect();
            if by_dim.len() < face.len() {
                by_dim.resize(face.len(), BTreeSet::new());
            }
            by_dim[face.len() - 1].insert(face);
        }
    }
    by_dim.into_iter().map(|s| s.into_iter().collect()).collect()
}

/// Dense boundary matrix from p-faces to (p-1)-faces.
pub fn oracle_boundary(faces: &[Vec<Vec<usize>>], p: usize) -> Vec<Vec<Rational>> {
    let lower = &faces[p - 1];
    let upper = &faces[p];
    let mut m = vec![vec![Rational::zero(); upper.len()]; lower.len()];
    for (j, s) in upper.iter().enumerate() {
        for i in 0..s.len() {
            let mut face = s.clone();
            face.remove(i);
            let row = lower.iter().position(|f| *f == face).unwrap();
            m[row][j] = if i % 2 == 0 { Rational::one() } else { -Rational::one() };
        }
    }
    m
}

/// Betti numbers from ranks of boundary matrices computed from scratch.
pub fn oracle_betti(facets: &[Vec<usize>]) -> Vec<usize> {
    let faces = oracle_faces(facets);
    let top = faces.len() - 1;
    let ranks: Vec<usize> = (0..=top + 1)
        .map(|p| {
            if p == 0 || p > top {
                0
            } else {
                oracle_rank(oracle_boundary(&faces, p))
            }
        })
        .collect();
    (0..=top).map(|p| faces[p].len() - ranks[p] - ranks[p + 1]).collect()
}

pub fn alternating_count(k: &SimplicialComplex) -> i64 {
    k.counts()
        .iter()
        .enumerate()
        .map(|(p, &c)| if p % 2 == 0 { c as i64 } else { -(c as i64) })
        .sum()
}

pub fn fixture(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn golden(name: &str) -> Vec<u8> {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

/// Run the binary from the fixtures directory; returns (exit code, stdout).
pub fn run_cli(args: &[&str]) -> (i32, Vec<u8>) {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_hodgelab"))
        .args(args)
        .current_dir(fixture(""))
        .env_remove("HODGELAB_MAX_DIM")
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

pub fn run_cli_json(args: &[&str]) -> (i32, serde_json::Value) {
    let (code, stdout) = run_cli(args);
    let v = serde_json::from_slice(&stdout)
        .unwrap_or_else(|e| panic!("{args:?}: non-JSON output {:?}: {e}", String::from_utf8_lossy(&stdout)));
    (code, v)
}

pub const OCTAHEDRON_BETTI: &[&str] = &["betti", "--complex", "octahedron.off"];
pub const GREEN_STOKES: &[&str] = &["stokes", "-x2*dx1 + x1*dx2", "--chain", "unit_square.json"];
pub const ANNULUS_DECOMPOSE: &[&str] = &[
    "decompose",
    "--complex",
    "annulus.json",
    "--cochain",
    "annulus_cochain.json",
];
