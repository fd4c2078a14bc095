use std::collections::HashMap;

use serde::Serialize;

use super::binomial::{binomial_poly, BinomialPolynomial};
use crate::error::{Error, Result};
use crate::exactmath::{Field, PrimeField};
use crate::groupalgebra::{CompletionProfile, GradedFlag, GradedRow, ProfileLevel};
use crate::FpMatrix;

/// Largest orbit enumerated by [`shift_matrix_orbit`].
pub const ORBIT_CAP: usize = 1 << 20;
/// Largest level accepted by [`order_profile`] and [`laurent_tower`].
pub const MAX_PROFILE_LEVEL: usize = 64;
/// Largest index accepted by [`graded_p_vs_j`].
pub const MAX_GRADED_INDEX: usize = 32;

/// The powers of `M = I + N`, the matrix of `1+T` on `k[[T]]/(T^(l+1))`
/// in the basis `1, T, ..., T^l`.
#[derive(Debug, Clone)]
pub struct ShiftOrbit {
    pub p: u32,
    pub level: usize,
    pub matrix: FpMatrix,
    /// `M^0, M^1, ..., M^(order-1)`.
    pub orbit: Vec<FpMatrix>,
}

impl ShiftOrbit {
    pub fn order(&self) -> usize {
        self.orbit.len()
    }

    /// `(M^k)_(r,c)` with 1-based indices, `k` read modulo the order.
    pub fn entry(&self, k: usize, r: usize, c: usize) -> u32 {
        *self.orbit[k % self.order()].get(r - 1, c - 1)
    }
}

fn shift_matrix(f: PrimeField, l: usize) -> FpMatrix {
    let mut m = FpMatrix::identity(f, l + 1);
    for r in 1..=l {
        m.set(r, r - 1, f.one());
    }
    m
}

/// Memoized `c_d(k) mod p`, evaluated from the rational polynomials.
struct BinomialResidues {
    p: u32,
    polys: Vec<BinomialPolynomial>,
    values: HashMap<(usize, u64), u32>,
}

impl BinomialResidues {
    fn new(p: u32) -> Self {
        BinomialResidues { p, polys: Vec::new(), values: HashMap::new() }
    }

    fn get(&mut self, d: usize, k: u64) -> u32 {
        while self.polys.len() <= d {
            self.polys.push(binomial_poly(self.polys.len() as u32));
        }
        let (p, poly) = (self.p, &self.polys[d]);
        *self.values.entry((d, k)).or_insert_with(|| poly.eval_mod(k, p))
    }
}

/// Checks that every power is lower unitriangular Toeplitz with
/// `(M^k)_(r,c) = c_(r-c)(k) mod p`.
fn certify_orbit(orbit: &[FpMatrix], residues: &mut BinomialResidues) -> Result<()> {
    for (k, m) in orbit.iter().enumerate() {
        let n = m.rows();
        for d in 0..n {
            let expected = residues.get(d, k as u64);
            for c in 0..n - d {
                if *m.get(c + d, c) != expected {
                    return Err(Error::InvalidElement(format!("entry ({}, {}) of M^{k} is not c_{d}({k})", c + d + 1, c + 1)));
                }
            }
            if d > 0 {
                for c in d..n {
                    if *m.get(c - d, c) != 0 {
                        return Err(Error::InvalidElement(format!("M^{k} is not lower triangular")));
                    }
                }
            }
        }
    }
    Ok(())
}

pub fn shift_matrix_orbit(p: u32, l: usize) -> Result<ShiftOrbit> {
    orbit_with(p, l, &mut BinomialResidues::new(p))
}

fn orbit_with(p: u32, l: usize, residues: &mut BinomialResidues) -> Result<ShiftOrbit> {
    let f = PrimeField::new(p)?;
    if l < 1 {
        return Err(Error::LevelOutOfRange { level: l, max: MAX_PROFILE_LEVEL });
    }
    let m = shift_matrix(f, l);
    let id = FpMatrix::identity(f, l + 1);
    let mut orbit = vec![id.clone()];
    let mut current = m.clone();
    while current != id {
        if orbit.len() >= ORBIT_CAP {
            return Err(Error::EnumerationLimit(ORBIT_CAP));
        }
        orbit.push(current.clone());
        current = current.mul(&m)?;
    }
    certify_orbit(&orbit, residues)?;
    Ok(ShiftOrbit { p, level: l, matrix: m, orbit })
}

/// `min { p^d : p^d ≥ l+1 }`
pub fn closed_form_order(p: u32, l: usize) -> u64 {
    let mut q = 1u64;
    while q < l as u64 + 1 {
        q *= p as u64;
    }
    q
}

/// `p^d` with `p^d ≤ l < p^(d+1)`: the order the text's band statement
/// assigns to level `l`.
pub fn band_order(p: u32, l: usize) -> u64 {
    let mut q = 1u64;
    while q * p as u64 <= l as u64 {
        q *= p as u64;
    }
    q
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderRow {
    pub level: usize,
    pub order: u64,
    pub closed_form: u64,
    pub band_statement: u64,
    pub closed_form_agrees: bool,
    pub band_statement_agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderProfile {
    pub p: u32,
    pub rows: Vec<OrderRow>,
}

impl OrderProfile {
    pub fn orders(&self) -> Vec<u64> {
        self.rows.iter().map(|r| r.order).collect()
    }
}

fn check_level(l_max: usize, limit: usize) -> Result<()> {
    if l_max == 0 || l_max > limit {
        return Err(Error::LevelOutOfRange { level: l_max, max: limit });
    }
    Ok(())
}

/// Orders of `1+T` at levels `1..=l_max`.
pub fn order_profile(p: u32, l_max: usize) -> Result<OrderProfile> {
    check_level(l_max, MAX_PROFILE_LEVEL)?;
    let mut residues = BinomialResidues::new(p);
    let rows = (1..=l_max)
        .map(|l| {
            let order = orbit_with(p, l, &mut residues)?.order() as u64;
            let (closed_form, band_statement) = (closed_form_order(p, l), band_order(p, l));
            Ok(OrderRow {
                level: l,
                order,
                closed_form,
                band_statement,
                closed_form_agrees: order == closed_form,
                band_statement_agrees: order == band_statement,
            })
        })
        .collect::<Result<_>>()?;
    Ok(OrderProfile { p, rows })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TowerTransition {
    pub from_level: usize,
    pub to_level: usize,
    pub source_order: u64,
    pub target_order: u64,
    /// Truncating `M_(l+1)^k` gives `M_l^k` for every `k`.
    pub homomorphism: bool,
    pub surjective: bool,
    pub identity: bool,
    /// Both levels lie in one band `[p^d, p^(d+1) - 1]`.
    pub same_band: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LaurentTower {
    pub p: u32,
    pub profile: CompletionProfile,
    pub transitions: Vec<TowerTransition>,
}

/// The tower `P_l = <1+T>` for `G = Z` over `F_p`, each `P_l` cyclic of
/// the computed order, with the truncation maps between levels.
pub fn laurent_tower(p: u32, l_max: usize) -> Result<LaurentTower> {
    check_level(l_max, MAX_PROFILE_LEVEL)?;
    let mut residues = BinomialResidues::new(p);
    let orbits: Vec<ShiftOrbit> = (1..=l_max + 1).map(|l| orbit_with(p, l, &mut residues)).collect::<Result<_>>()?;
    let mut levels = Vec::with_capacity(l_max);
    let mut transitions = Vec::with_capacity(l_max);
    for l in 1..=l_max {
        let (lower, upper) = (&orbits[l - 1], &orbits[l]);
        let homomorphism = (0..upper.order()).all(|k| {
            let m = &upper.orbit[k];
            let target = &lower.orbit[k % lower.order()];
            (0..=l).all(|r| (0..=l).all(|c| m.get(r, c) == target.get(r, c)))
        });
        // k ↦ k mod |P_l| is onto because the generator maps to the generator
        let surjective = homomorphism && upper.order() % lower.order() == 0;
        transitions.push(TowerTransition {
            from_level: l + 1,
            to_level: l,
            source_order: upper.order() as u64,
            target_order: lower.order() as u64,
            homomorphism,
            surjective,
            identity: surjective && upper.order() == lower.order(),
            same_band: band_order(p, l) == band_order(p, l + 1),
        });
        let order = lower.order() as u64;
        levels.push(ProfileLevel {
            level: l,
            order,
            abelian: true,
            invariants: Some(if order > 1 { vec![order] } else { Vec::new() }),
            transition_surjective: Some(surjective),
        });
    }
    let graded = graded_p_vs_j(p, l_max.min(MAX_GRADED_INDEX))?
        .rows
        .into_iter()
        .map(|r| GradedRow {
            index: r.index,
            group_quotient_order: r.group_quotient_order,
            ideal_quotient_dim: 1,
            predicted_order: Some(p as u64),
            flag: r.flag,
        })
        .collect();
    let profile = CompletionProfile {
        group: "Z".into(),
        field: format!("F{p}"),
        group_order: None,
        j_dims: Vec::new(),
        j_stable_index: None,
        levels,
        stable_level: None,
        stable_fingerprint: None,
        graded,
        notes: vec!["P_l is cyclic of p-power order at every level; the inverse limit is Z_p".into()],
    };
    Ok(LaurentTower { p, profile, transitions })
}

/// Least `k ≥ 1` with `(1+T)^k ≡ 1 mod T^i`, by repeated multiplication of
/// truncated coefficient vectors.
pub fn minimal_exponent(p: u32, i: usize) -> u64 {
    if i <= 1 {
        return 1;
    }
    let mut v = vec![0u32; i];
    v[0] = 1;
    let mut k = 0u64;
    loop {
        for j in (1..i).rev() {
            v[j] = (v[j] + v[j - 1]) % p;
        }
        k += 1;
        if v[1..].iter().all(|c| *c == 0) {
            return k;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedPvsJRow {
    pub index: usize,
    /// Generator of `P^i` as a power of `1+T`.
    pub exponent: u64,
    pub next_exponent: u64,
    pub group_quotient_order: u64,
    pub predicted_order: u64,
    pub flag: GradedFlag,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedPvsJ {
    pub p: u32,
    pub rows: Vec<GradedPvsJRow>,
}

/// `|P^i/P^(i+1)|` with `P^i = {(1+T)^k : (1+T)^k ≡ 1 mod T^i}` in the
/// limit group, against `p^(dim J^i/J^(i+1)) = p`.
pub fn graded_p_vs_j(p: u32, l_max: usize) -> Result<GradedPvsJ> {
    PrimeField::new(p)?;
    check_level(l_max, MAX_GRADED_INDEX)?;
    let rows = (1..=l_max)
        .map(|i| {
            let (exponent, next_exponent) = (minimal_exponent(p, i), minimal_exponent(p, i + 1));
            let order = next_exponent / exponent;
            GradedPvsJRow {
                index: i,
                exponent,
                next_exponent,
                group_quotient_order: order,
                predicted_order: p as u64,
                flag: if order == p as u64 { GradedFlag::Match } else { GradedFlag::Mismatch },
            }
        })
        .collect();
    Ok(GradedPvsJ { p, rows })
}
