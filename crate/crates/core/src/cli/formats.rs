//! JSON and OFF encodings of forms, chains, complexes and cochains.
//!
//! Rationals are always written as strings (`"3/2"`); on input, JSON numbers
//! are also accepted and read exactly from their decimal text.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_traits::Zero;
use serde_json::{json, Map, Value};

use super::parse::parse_polynomial;
use super::CliError;
use crate::cochain::Cochain;
use crate::complex::{build_complex, orient, Chain, SimplicialComplex};
use crate::exterior::{DifferentialForm, MultiIndex};
use crate::integrate::{EmbeddedChain, EmbeddedSimplex, Point};
use crate::poly::{format_rational, parse_rational, Rational};

fn bad(message: impl Into<String>) -> CliError {
    CliError::Format(message.into())
}

fn field<'a>(obj: &'a Value, key: &str) -> Result<&'a Value, CliError> {
    obj.get(key).ok_or_else(|| bad(format!("missing field '{key}'")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>, CliError> {
    v.as_array().ok_or_else(|| bad(format!("'{what}' must be an array")))
}

fn as_usize(v: &Value, what: &str) -> Result<usize, CliError> {
    v.as_u64()
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| bad(format!("'{what}' must be a non-negative integer")))
}

fn as_rational(v: &Value, what: &str) -> Result<Rational, CliError> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        _ => return Err(bad(format!("'{what}' must be a rational string"))),
    };
    parse_rational(text.trim()).ok_or_else(|| bad(format!("'{what}': cannot read '{text}' as a rational")))
}

fn as_indices(v: &Value, what: &str) -> Result<Vec<usize>, CliError> {
    as_array(v, what)?.iter().map(|x| as_usize(x, what)).collect()
}

fn rational_json(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

/// `{dimension, degree, terms: [{blade, coeff}]}` with one-based blades.
pub fn form_to_json(w: &DifferentialForm) -> Value {
    let terms: Vec<Value> = w
        .terms()
        .map(|(blade, coeff)| {
            json!({
                "blade": blade.indices().iter().map(|i| i + 1).collect::<Vec<_>>(),
                "coeff": coeff.to_string(),
            })
        })
        .collect();
    json!({ "dimension": w.dim(), "degree": w.degree(), "terms": terms })
}

pub fn form_from_json(v: &Value) -> Result<DifferentialForm, CliError> {
    let dim = as_usize(field(v, "dimension")?, "dimension")?;
    let degree = as_usize(field(v, "degree")?, "degree")?;
    if dim == 0 || degree > dim {
        return Err(bad(format!("invalid form shape: degree {degree} in dimension {dim}")));
    }
    let mut terms = Vec::new();
    for t in as_array(field(v, "terms")?, "terms")? {
        let blade = as_indices(field(t, "blade")?, "blade")?;
        if blade.iter().any(|&i| i == 0 || i > dim) || blade.windows(2).any(|p| p[0] >= p[1]) {
            return Err(bad(format!("blade {blade:?} is not increasing within 1..{dim}")));
        }
        let blade = MultiIndex::new(blade.iter().map(|i| i - 1).collect()).map_err(CliError::domain)?;
        let coeff = match field(t, "coeff")? {
            Value::String(s) => parse_polynomial(s, dim).map_err(bad)?,
            _ => return Err(bad("'coeff' must be a polynomial string")),
        };
        terms.push((blade, coeff));
    }
    DifferentialForm::from_terms(dim, degree, terms).map_err(CliError::domain)
}

/// `{ambient, degree, simplices: [{coeff, vertices, orientation?}]}`;
/// orientation is written only when it is -1.
pub fn chain_to_json(c: &EmbeddedChain) -> Value {
    let simplices: Vec<Value> = c
        .terms()
        .iter()
        .map(|(coeff, s)| {
            let mut obj = Map::new();
            obj.insert("coeff".into(), rational_json(coeff));
            let vertices: Vec<Value> = s
                .vertices()
                .iter()
                .map(|p| Value::Array(p.iter().map(rational_json).collect()))
                .collect();
            obj.insert("vertices".into(), Value::Array(vertices));
            if s.orientation() < 0 {
                obj.insert("orientation".into(), json!(-1));
            }
            Value::Object(obj)
        })
        .collect();
    json!({ "ambient": c.ambient(), "degree": c.degree(), "simplices": simplices })
}

pub fn chain_from_json(v: &Value) -> Result<EmbeddedChain, CliError> {
    let ambient = as_usize(field(v, "ambient")?, "ambient")?;
    let degree = as_usize(field(v, "degree")?, "degree")?;
    let mut chain = EmbeddedChain::new(ambient, degree);
    for s in as_array(field(v, "simplices")?, "simplices")? {
        let coeff = match s.get("coeff") {
            Some(c) => as_rational(c, "coeff")?,
            None => Rational::from_integer(1.into()),
        };
        let vertices = as_array(field(s, "vertices")?, "vertices")?
            .iter()
            .map(|p| {
                as_array(p, "vertex")?
                    .iter()
                    .map(|x| as_rational(x, "coordinate"))
                    .collect::<Result<Point, _>>()
            })
            .collect::<Result<Vec<Point>, _>>()?;
        let orientation = match s.get("orientation") {
            None => 1,
            Some(o) => match o.as_i64() {
                Some(1) => 1,
                Some(-1) => -1,
                _ => return Err(bad("'orientation' must be 1 or -1")),
            },
        };
        let simplex = EmbeddedSimplex::new(vertices, orientation).map_err(CliError::domain)?;
        chain.push(coeff, simplex).map_err(CliError::domain)?;
    }
    Ok(chain)
}

/// `{facets: [[vertex ids]]}`, each facet in its input orientation.
pub fn complex_to_json(k: &SimplicialComplex) -> Value {
    let facets: Vec<Vec<usize>> = k
        .facets()
        .iter()
        .map(|(sign, s)| {
            let mut s = s.clone();
            if *sign < 0 {
                s.swap(0, 1);
            }
            s
        })
        .collect();
    json!({ "facets": facets })
}

pub fn complex_from_json(v: &Value) -> Result<Arc<SimplicialComplex>, CliError> {
    let facets = as_array(field(v, "facets")?, "facets")?
        .iter()
        .map(|f| as_indices(f, "facet"))
        .collect::<Result<Vec<_>, _>>()?;
    build_complex(&facets).map_err(CliError::domain)
}

fn values_to_json(k: &SimplicialComplex, degree: usize, values: &[Rational]) -> Value {
    let entries: Vec<Value> = k
        .simplices(degree)
        .iter()
        .zip(values)
        .map(|(s, v)| json!({ "simplex": s, "value": format_rational(v) }))
        .collect();
    json!({ "degree": degree, "values": entries })
}

fn values_from_json(v: &Value, k: &SimplicialComplex) -> Result<(usize, Vec<Rational>), CliError> {
    let degree = as_usize(field(v, "degree")?, "degree")?;
    let mut values = vec![Rational::zero(); k.count(degree)];
    let mut seen = BTreeSet::new();
    for entry in as_array(field(v, "values")?, "values")? {
        let simplex = as_indices(field(entry, "simplex")?, "simplex")?;
        let value = as_rational(field(entry, "value")?, "value")?;
        if simplex.len() != degree + 1 {
            return Err(bad(format!("simplex {simplex:?} does not have degree {degree}")));
        }
        let (sign, sorted) = orient(&simplex).ok_or_else(|| bad(format!("simplex {simplex:?} repeats a vertex")))?;
        let index = k
            .index_of(&sorted)
            .ok_or_else(|| bad(format!("simplex {simplex:?} is not in the complex")))?;
        if !seen.insert(index) {
            return Err(bad(format!("simplex {simplex:?} listed twice")));
        }
        values[index] = if sign < 0 { -value } else { value };
    }
    Ok((degree, values))
}

/// `{degree, values: [{simplex, value}]}` listing every p-simplex.
pub fn cochain_to_json(w: &Cochain) -> Value {
    values_to_json(w.complex(), w.degree(), w.values())
}

/// Entries may name a simplex in any vertex order (an odd order negates the
/// value); unlisted simplices get 0.
pub fn cochain_from_json(v: &Value, k: &Arc<SimplicialComplex>) -> Result<Cochain, CliError> {
    let (degree, values) = values_from_json(v, k)?;
    Cochain::from_values(k, degree, values).map_err(CliError::domain)
}

/// Chains on a complex share the cochain layout.
pub fn complex_chain_to_json(c: &Chain) -> Value {
    values_to_json(c.complex(), c.degree(), c.coeffs())
}

pub fn complex_chain_from_json(v: &Value, k: &Arc<SimplicialComplex>) -> Result<Chain, CliError> {
    let (degree, values) = values_from_json(v, k)?;
    Chain::from_coeffs(k, degree, values).map_err(CliError::domain)
}

/// A triangle surface read from OFF.
#[derive(Clone, Debug)]
pub struct OffMesh {
    pub complex: Arc<SimplicialComplex>,
    pub coordinates: Vec<[Rational; 3]>,
    pub faces: Vec<[usize; 3]>,
}

impl OffMesh {
    /// The faces as an embedded 2-chain in ℝ³, each with coefficient 1.
    pub fn embedded_chain(&self) -> crate::Result<EmbeddedChain> {
        let mut chain = EmbeddedChain::new(3, 2);
        for face in &self.faces {
            let vertices = face.iter().map(|&v| self.coordinates[v].to_vec()).collect();
            chain.push(Rational::from_integer(1.into()), EmbeddedSimplex::new(vertices, 1)?)?;
        }
        Ok(chain)
    }
}

/// Parse the `OFF` subset: header, `V F E` counts, `V` lines of three
/// decimal coordinates, `F` lines `3 i j k`. `#` starts a comment.
pub fn parse_off(text: &str) -> Result<OffMesh, CliError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (_, header) = lines.next().ok_or_else(|| bad("OFF: empty file"))?;
    let mut header_tokens = header.split_whitespace();
    if header_tokens.next() != Some("OFF") {
        return Err(bad("OFF: missing 'OFF' header"));
    }
    let rest: Vec<&str> = header_tokens.collect();
    let counts_line: (usize, Vec<&str>) = if rest.is_empty() {
        let (no, l) = lines.next().ok_or_else(|| bad("OFF: missing counts line"))?;
        (no, l.split_whitespace().collect())
    } else {
        (1, rest)
    };
    let (no, counts) = counts_line;
    if counts.len() != 3 {
        return Err(bad(format!("OFF line {no}: expected 'V F E' counts")));
    }
    let count = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| bad(format!("OFF line {no}: bad count '{s}'")))
    };
    let (nv, nf) = (count(counts[0])?, count(counts[1])?);
    count(counts[2])?;

    let mut coordinates = Vec::with_capacity(nv);
    for _ in 0..nv {
        let (no, l) = lines
            .next()
            .ok_or_else(|| bad("OFF: fewer vertex lines than declared"))?;
        let tokens: Vec<&str> = l.split_whitespace().collect();
        if tokens.len() != 3 {
            return Err(bad(format!("OFF line {no}: expected 3 coordinates")));
        }
        let mut xyz = tokens
            .iter()
            .map(|t| parse_rational(t).ok_or_else(|| bad(format!("OFF line {no}: bad coordinate '{t}'"))));
        coordinates.push([xyz.next().unwrap()?, xyz.next().unwrap()?, xyz.next().unwrap()?]);
    }

    let mut faces = Vec::with_capacity(nf);
    for _ in 0..nf {
        let (no, l) = lines.next().ok_or_else(|| bad("OFF: fewer face lines than declared"))?;
        let tokens: Vec<usize> = l
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| bad(format!("OFF line {no}: bad index '{t}'"))))
            .collect::<Result<_, _>>()?;
        if tokens.first() != Some(&3) || tokens.len() != 4 {
            return Err(bad(format!("OFF line {no}: only triangular faces are supported")));
        }
        if let Some(&v) = tokens[1..].iter().find(|&&v| v >= nv) {
            return Err(bad(format!("OFF line {no}: vertex {v} out of range (V = {nv})")));
        }
        faces.push([tokens[1], tokens[2], tokens[3]]);
    }
    if let Some((no, _)) = lines.next() {
        return Err(bad(format!("OFF line {no}: unexpected trailing data")));
    }

    let mut used = vec![false; nv];
    let mut facets: Vec<Vec<usize>> = Vec::with_capacity(nf + nv);
    for f in &faces {
        for &v in f {
            used[v] = true;
        }
        facets.push(f.to_vec());
    }
    facets.extend((0..nv).filter(|&v| !used[v]).map(|v| vec![v]));
    let complex = build_complex(&facets).map_err(CliError::domain)?;
    Ok(OffMesh {
        complex,
        coordinates,
        faces,
    })
}

/// A complex from either OFF text or complex JSON, told apart by the header.
pub fn complex_from_text(text: &str) -> Result<Arc<SimplicialComplex>, CliError> {
    if text.trim_start().starts_with("OFF") {
        return Ok(parse_off(text)?.complex);
    }
    let v: Value = serde_json::from_str(text).map_err(|e| bad(format!("invalid JSON: {e}")))?;
    complex_from_json(&v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::cohomology_report;
    use crate::integrate::integrate_form;
    use crate::poly::int;

    const TETRA: &str = "OFF\n4 4 6\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n3 0 2 1\n3 0 1 3\n3 0 3 2\n3 1 2 3\n";

    #[test]
    fn tetrahedron_surface() {
        let mesh = parse_off(TETRA).unwrap();
        assert_eq!(cohomology_report(&mesh.complex).unwrap().betti, vec![1, 0, 1]);
        // outward normals everywhere, so the enclosed volume via x dy^dz is 1/6
        let w = DifferentialForm::blade(3, &[1, 2])
            .unwrap()
            .mul_scalar(&crate::Polynomial::var(3, 0));
        assert_eq!(
            integrate_form(&w, &mesh.embedded_chain().unwrap()).unwrap(),
            crate::poly::rat(1, 6)
        );
    }

    #[test]
    fn isolated_vertices() {
        let mesh = parse_off("OFF\n3 0 0\n0 0 0\n1.5 0 0\n0 2e-1 0\n").unwrap();
        assert_eq!(cohomology_report(&mesh.complex).unwrap().betti, vec![3]);
        assert_eq!(mesh.coordinates[2][1], crate::poly::rat(1, 5));
    }

    #[test]
    fn off_errors() {
        for text in [
            "",
            "OF\n0 0 0\n",
            "OFF\n1 1\n",
            "OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n4 0 1 2 0\n",
            "OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 3\n",
            "OFF\n2 0 0\n0 0 0\n",
        ] {
            assert!(matches!(parse_off(text), Err(CliError::Format(_))), "{text:?}");
        }
    }

    #[test]
    fn header_with_counts() {
        let mesh = parse_off("OFF 3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 2\n").unwrap();
        assert_eq!(mesh.complex.counts(), vec![3, 3, 1]);
    }

    #[test]
    fn cochain_orientation_on_input() {
        let k = build_complex(&[vec![0, 1, 2]]).unwrap();
        let v = json!({"degree": 1, "values": [{"simplex": [1, 0], "value": "2"}, {"simplex": [1, 2], "value": 3}]});
        let w = cochain_from_json(&v, &k).unwrap();
        assert_eq!(w.values(), &[int(-2), int(0), int(3)]);
        assert_eq!(cochain_from_json(&cochain_to_json(&w), &k).unwrap(), w);
        let dup = json!({"degree": 0, "values": [{"simplex": [0], "value": "1"}, {"simplex": [0], "value": "1"}]});
        assert!(cochain_from_json(&dup, &k).is_err());
        let missing = json!({"degree": 1, "values": [{"simplex": [0, 5], "value": "1"}]});
        assert!(cochain_from_json(&missing, &k).is_err());
    }

    #[test]
    fn complex_keeps_orientation() {
        let k = build_complex(&[vec![1, 0, 2], vec![2, 3]]).unwrap();
        let v = complex_to_json(&k);
        assert_eq!(v, json!({"facets": [[1, 0, 2], [2, 3]]}));
        let back = complex_from_json(&v).unwrap();
        assert_eq!(*back, *k);
        assert_eq!(back.facets(), k.facets());
    }

    #[test]
    fn form_and_chain_round_trip() {
        let w = super::super::parse::evaluate(
            &super::super::parse::parse_form("(x1 - 3/2*x2^2)*dx1^dx3 + 7*dx2^dx3", 3).unwrap(),
            3,
        )
        .unwrap();
        assert_eq!(form_from_json(&form_to_json(&w)).unwrap(), w);
        let chain = EmbeddedChain::from_simplex(
            EmbeddedSimplex::from_ints(&[&[0, 0], &[1, 0], &[0, 1]])
                .unwrap()
                .reversed(),
        );
        let chain = chain
            .with(
                crate::poly::rat(-1, 3),
                EmbeddedSimplex::from_ints(&[&[0, 0], &[2, 0], &[0, 1]]).unwrap(),
            )
            .unwrap();
        let v = chain_to_json(&chain);
        assert_eq!(v["simplices"][0]["orientation"], json!(-1));
        assert!(v["simplices"][1].get("orientation").is_none());
        assert_eq!(chain_from_json(&v).unwrap(), chain);
    }
}
