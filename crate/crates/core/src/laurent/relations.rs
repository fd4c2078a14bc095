use std::fmt;

use serde::Serialize;

use super::orbit::{shift_matrix_orbit, ShiftOrbit};
use crate::error::{Error, Result};
use crate::exactmath::{Field, NullspaceBuilder, PrimeField, SubspaceBasis};

pub const MAX_RELATION_LEVEL: usize = 8;
pub const MAX_RELATION_DEGREE: usize = 2;
pub const MAX_MONOMIALS: usize = 100_000;

/// A coordinate `T_ij` of an `(l+1) × (l+1)` matrix, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Coordinate {
    pub row: usize,
    pub col: usize,
}

impl fmt::Display for Coordinate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T_{}{}", self.row, self.col)
    }
}

/// A polynomial in the coordinates with coefficients in `F_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoordinatePolynomial {
    /// `(coefficient, sorted coordinates of the monomial)`; the empty
    /// monomial is the constant `1`.
    pub terms: Vec<(u32, Vec<Coordinate>)>,
}

impl CoordinatePolynomial {
    pub fn eval(&self, f: &PrimeField, orbit: &ShiftOrbit, k: usize) -> u32 {
        self.terms.iter().fold(0, |acc, (c, mono)| {
            let v = mono.iter().fold(f.one(), |m, t| f.mul(&m, &orbit.entry(k, t.row, t.col)));
            f.add(&acc, &f.mul(c, &v))
        })
    }
}

pub fn coord(row: usize, col: usize) -> Coordinate {
    Coordinate { row, col }
}

/// `x - y` for two monomials.
pub fn difference(x: &[Coordinate], y: &[Coordinate], p: u32) -> CoordinatePolynomial {
    let mut xs = x.to_vec();
    let mut ys = y.to_vec();
    xs.sort();
    ys.sort();
    CoordinatePolynomial { terms: vec![(1, xs), (p - 1, ys)] }
}

/// The polynomials of degree at most `d` in the coordinates and `1` that
/// vanish on the orbit of `1+T`, as a subspace of the monomial space.
#[derive(Debug, Clone)]
pub struct RelationBasis {
    pub p: u32,
    pub level: usize,
    pub degree: usize,
    pub orbit_size: usize,
    /// Monomials in graded order: `1`, the coordinates, then products.
    pub monomials: Vec<Vec<Coordinate>>,
    pub basis: SubspaceBasis<PrimeField>,
}

impl RelationBasis {
    pub fn monomial_index(&self, mono: &[Coordinate]) -> Option<usize> {
        let mut m = mono.to_vec();
        m.sort();
        self.monomials.binary_search_by(|x| monomial_key(x).cmp(&monomial_key(&m))).ok()
    }

    pub fn to_vector(&self, poly: &CoordinatePolynomial) -> Result<Vec<u32>> {
        let f = self.basis.field();
        let mut v = vec![0u32; self.monomials.len()];
        for (c, mono) in &poly.terms {
            let i = self
                .monomial_index(mono)
                .ok_or_else(|| Error::InvalidElement(format!("monomial of degree {} is out of range", mono.len())))?;
            v[i] = f.add(&v[i], c);
        }
        Ok(v)
    }

    pub fn contains(&self, poly: &CoordinatePolynomial) -> Result<bool> {
        Ok(self.basis.contains_vector(&self.to_vector(poly)?))
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// Re-evaluates every basis polynomial on every orbit point.
    pub fn certify(&self, orbit: &ShiftOrbit) -> Result<()> {
        let f = self.basis.field();
        for row in self.basis.rows() {
            for k in 0..orbit.order() {
                let mut acc = 0u32;
                for (c, mono) in row.iter().zip(&self.monomials) {
                    if *c != 0 {
                        let v = mono.iter().fold(f.one(), |m, t| f.mul(&m, &orbit.entry(k, t.row, t.col)));
                        acc = f.add(&acc, &f.mul(c, &v));
                    }
                }
                if acc != 0 {
                    return Err(Error::InvalidElement(format!("relation does not vanish at k = {k}")));
                }
            }
        }
        Ok(())
    }

    pub fn format_vector(&self, v: &[u32]) -> String {
        let parts: Vec<String> = v
            .iter()
            .zip(&self.monomials)
            .filter(|(c, _)| **c != 0)
            .map(|(c, m)| {
                let name = if m.is_empty() {
                    "1".to_string()
                } else {
                    m.iter().map(|t| t.to_string()).collect::<Vec<_>>().join("*")
                };
                if *c == 1 {
                    name
                } else {
                    format!("{c}*{name}")
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

fn monomial_key(m: &[Coordinate]) -> (usize, Vec<Coordinate>) {
    (m.len(), m.to_vec())
}

fn monomials(l: usize, d: usize) -> Vec<Vec<Coordinate>> {
    let coords: Vec<Coordinate> = (1..=l + 1).flat_map(|r| (1..=l + 1).map(move |c| coord(r, c))).collect();
    let mut out: Vec<Vec<Coordinate>> = vec![Vec::new()];
    let mut layer: Vec<Vec<Coordinate>> = vec![Vec::new()];
    for _ in 0..d {
        let mut next = Vec::new();
        for m in &layer {
            let start = m.last().map_or(0, |last| coords.iter().position(|c| c == last).unwrap());
            for c in &coords[start..] {
                let mut n = m.clone();
                n.push(*c);
                next.push(n);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out.sort_by_key(|m| monomial_key(m));
    out
}

/// Null space of the evaluation matrix whose rows are orbit points and
/// whose columns are monomials of degree `≤ d`.
pub fn vanishing_relations(p: u32, l: usize, d: usize) -> Result<RelationBasis> {
    if p != 2 && p != 3 {
        return Err(Error::UnsupportedField(format!("vanishing relations are computed for p = 2, 3 (got {p})")));
    }
    if l == 0 || l > MAX_RELATION_LEVEL {
        return Err(Error::LevelOutOfRange { level: l, max: MAX_RELATION_LEVEL });
    }
    if d > MAX_RELATION_DEGREE {
        return Err(Error::DimensionLimit { what: "relation degree", size: d as u128, limit: MAX_RELATION_DEGREE as u128 });
    }
    let vars = (l + 1) * (l + 1);
    let count = (0..=d).map(|k| num_integer::binomial(vars + k - 1, k)).sum::<usize>();
    if count > MAX_MONOMIALS {
        return Err(Error::DimensionLimit { what: "monomial count", size: count as u128, limit: MAX_MONOMIALS as u128 });
    }
    let orbit = shift_matrix_orbit(p, l)?;
    let f = PrimeField::new(p)?;
    let monos = monomials(l, d);
    let mut nb = NullspaceBuilder::new(f, monos.len());
    for k in 0..orbit.order() {
        let row: Vec<(usize, u32)> = monos
            .iter()
            .enumerate()
            .map(|(i, m)| (i, m.iter().fold(1u32, |acc, t| f.mul(&acc, &orbit.entry(k, t.row, t.col)))))
            .filter(|(_, v)| *v != 0)
            .collect();
        nb.push_sparse(&row)?;
    }
    let rb = RelationBasis { p, level: l, degree: d, orbit_size: orbit.order(), monomials: monos, basis: nb.finish() };
    rb.certify(&orbit)?;
    Ok(rb)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum GeneratorVerdict {
    Vanishes,
    Fails { witness: usize, left: u32, right: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorCheck {
    pub generator: String,
    #[serde(flatten)]
    pub verdict: GeneratorVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealAuditLevel {
    pub level: usize,
    pub order: usize,
    /// Dimension of the algebra of functions on the orbit.
    pub function_algebra_dim: usize,
    /// Non-constant coordinate functions left independent after the linear
    /// relations.
    pub independent_coordinates: usize,
    pub generators: Vec<GeneratorCheck>,
}

impl IdealAuditLevel {
    pub fn all_vanish(&self) -> bool {
        self.generators.iter().all(|g| g.verdict == GeneratorVerdict::Vanishes)
    }

    pub fn check(&self, name: &str) -> Option<&GeneratorVerdict> {
        self.generators.iter().find(|g| g.generator == name).map(|g| &g.verdict)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealAudit {
    pub p: u32,
    pub levels: Vec<IdealAuditLevel>,
}

/// Generators listed for `O(P_l)`, `l = 1..4`, beyond the families
/// `T_ij (i < j)` and `T_ii - 1`, as pairs of coordinates whose difference
/// is claimed to vanish.
fn listed_differences(l: usize) -> Vec<(Coordinate, Coordinate)> {
    let pairs: &[((usize, usize), (usize, usize))] = match l {
        1 => &[],
        2 => &[((2, 1), (3, 2))],
        3 => &[((2, 1), (3, 2)), ((3, 2), (4, 3)), ((3, 1), (4, 2)), ((2, 1), (4, 1))],
        4 => &[
            ((2, 1), (4, 1)),
            ((2, 1), (3, 2)),
            ((3, 2), (4, 3)),
            ((4, 3), (5, 4)),
            ((3, 1), (4, 2)),
            ((4, 2), (5, 3)),
            ((4, 1), (5, 2)),
        ],
        _ => &[],
    };
    pairs.iter().map(|&((a, b), (c, d))| (coord(a, b), coord(c, d))).collect()
}

fn audit_level(l: usize) -> Result<IdealAuditLevel> {
    let orbit = shift_matrix_orbit(2, l)?;
    let n = l + 1;
    let mut generators = Vec::new();
    let mut check = |name: String, left: &dyn Fn(usize) -> u32, right: &dyn Fn(usize) -> u32| {
        let witness = (0..orbit.order()).find(|&k| left(k) != right(k));
        let verdict = match witness {
            None => GeneratorVerdict::Vanishes,
            Some(k) => GeneratorVerdict::Fails { witness: k, left: left(k), right: right(k) },
        };
        generators.push(GeneratorCheck { generator: name, verdict });
    };
    for i in 1..=n {
        for j in i + 1..=n {
            check(coord(i, j).to_string(), &|k| orbit.entry(k, i, j), &|_| 0);
        }
    }
    for i in 1..=n {
        check(format!("{} - 1", coord(i, i)), &|k| orbit.entry(k, i, i), &|_| 1);
    }
    for (x, y) in listed_differences(l) {
        check(format!("{x} - {y}"), &|k| orbit.entry(k, x.row, x.col), &|k| orbit.entry(k, y.row, y.col));
    }
    let linear = vanishing_relations(2, l, 1)?;
    // functions spanned by 1 and the coordinates, minus the constant
    let independent_coordinates = linear.monomials.len() - linear.dim() - 1;
    Ok(IdealAuditLevel {
        level: l,
        order: orbit.order(),
        function_algebra_dim: orbit.order(),
        independent_coordinates,
        generators,
    })
}

/// Evaluates each listed generator of `O(P_1), ..., O(P_4)` over `F_2` on
/// every orbit point.
pub fn paper_ideal_audit() -> Result<IdealAudit> {
    let levels = (1..=4).map(audit_level).collect::<Result<_>>()?;
    Ok(IdealAudit { p: 2, levels })
}
