use serde::Serialize;

use super::algebra::{j_power_filtration, h1_dimension, GroupAlgebra, JFiltration};
use super::units::{unit_image_of_group, UnitImage};
use crate::error::{Error, Result};
use crate::exactmath::{Field, FieldSpec, PrimeField};
use crate::groups::{
    abelian_invariants, enumerate_elements, fingerprint, p_lower_central_terms, quotient_group, Element,
    FiniteGroup, FingerprintVerdict, GroupFingerprint, Homomorphism, Subgroup,
};
use crate::Rationals;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum GradedFlag {
    Match,
    Mismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProfileLevel {
    pub level: usize,
    pub order: u64,
    pub abelian: bool,
    pub invariants: Option<Vec<u64>>,
    /// Whether `P_(l+1) → P_l` is onto; absent at the last computed level.
    pub transition_surjective: Option<bool>,
}

/// `|P^i / P^(i+1)|` against `p^(dim J^i/J^(i+1))`, where
/// `P^i = {x ∈ P : x - 1 ∈ J^i}` inside the stable `P`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedRow {
    pub index: usize,
    pub group_quotient_order: u64,
    pub ideal_quotient_dim: usize,
    pub predicted_order: Option<u64>,
    pub flag: GradedFlag,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompletionProfile {
    pub group: String,
    pub field: String,
    /// `None` for infinite groups.
    pub group_order: Option<u64>,
    pub j_dims: Vec<usize>,
    pub j_stable_index: Option<usize>,
    pub levels: Vec<ProfileLevel>,
    pub stable_level: Option<usize>,
    pub stable_fingerprint: Option<GroupFingerprint>,
    pub graded: Vec<GradedRow>,
    pub notes: Vec<String>,
}

impl CompletionProfile {
    pub fn stable_order(&self) -> Option<u64> {
        self.stable_fingerprint.as_ref().map(|f| f.order)
    }
}

/// Levels `1..=top` to compute and the level expected to be stable.
fn level_range(jf_stable: Option<usize>, computed: usize) -> (usize, Option<usize>) {
    match jf_stable {
        Some(n) => {
            let s = n.saturating_sub(1).max(1);
            (s + 1, Some(s))
        }
        None => (computed.saturating_sub(1).max(1), None),
    }
}

fn trivial_fingerprint() -> GroupFingerprint {
    GroupFingerprint { order: 1, exponent: 1, abelianization: Vec::new(), derived_length: Some(0) }
}

/// `P_(l+1) → P_l`, reducing `A_(l+1)` onto `A_l`.
pub fn transition_map(upper: &UnitImage, lower: &UnitImage) -> Result<Homomorphism> {
    let (qu, ql) = (upper.algebra.clone(), lower.algebra.clone());
    Homomorphism::from_fn(upper.group.group(), lower.group.group(), move |x: &Element| {
        Element(ql.project(&qu.lift(&x.0)))
    })
}

fn graded_table(
    a: &GroupAlgebra<PrimeField>,
    jf: &JFiltration<PrimeField>,
    stable: &UnitImage,
) -> Result<Vec<GradedRow>> {
    let f = a.field();
    let p = f.p() as u64;
    let id = a.identity_index();
    let q = &stable.algebra;
    let deltas: Vec<Vec<u32>> = stable
        .group
        .elements()
        .iter()
        .map(|x| {
            let mut v = q.lift(&x.0);
            v[id] = f.sub(&v[id], &f.one());
            v
        })
        .collect();
    let filtration_order = |i: usize| -> Result<u64> {
        if i > stable.level {
            return Ok(1);
        }
        let ji = jf.power(i)?;
        Ok(deltas.iter().filter(|v| ji.contains_vector(v)).count() as u64)
    };
    let mut rows = Vec::new();
    for i in 1..=stable.level {
        let (hi, lo) = (filtration_order(i)?, filtration_order(i + 1)?);
        let dim = jf.power(i)?.dim() - jf.power(i + 1)?.dim();
        let predicted = u32::try_from(dim).ok().and_then(|d| p.checked_pow(d));
        let observed = hi / lo;
        let flag = if predicted == Some(observed) { GradedFlag::Match } else { GradedFlag::Mismatch };
        rows.push(GradedRow { index: i, group_quotient_order: observed, ideal_quotient_dim: dim, predicted_order: predicted, flag });
    }
    Ok(rows)
}

fn profile_level(image: &UnitImage) -> Result<ProfileLevel> {
    let abelian = image.group.is_abelian();
    let invariants = if abelian { Some(abelian_invariants(&image.group)?) } else { None };
    Ok(ProfileLevel { level: image.level, order: image.order() as u64, abelian, invariants, transition_surjective: None })
}

fn prime_profile(g: &FiniteGroup, all: &Subgroup, f: PrimeField, max_l: usize, cap: usize) -> Result<CompletionProfile> {
    let a = GroupAlgebra::new(all, f)?;
    let jf = j_power_filtration(&a, max_l)?;
    let (top, expected) = level_range(jf.stable_index(), jf.computed());
    let mut images = Vec::with_capacity(top);
    for l in 1..=top {
        if l + 1 > jf.computed() && jf.stable_index().is_none() {
            break;
        }
        images.push(unit_image_of_group(&a, &jf, l, cap)?);
    }
    let mut levels: Vec<ProfileLevel> = images.iter().map(profile_level).collect::<Result<_>>()?;
    let mut bijective_last = false;
    for i in 0..images.len().saturating_sub(1) {
        let (lower, upper) = (&images[i], &images[i + 1]);
        let t = transition_map(upper, lower)?;
        t.certify(&upper.group)?;
        let image_order = t.image(&upper.group)?.order();
        levels[i].transition_surjective = Some(image_order == lower.order());
        bijective_last = image_order == lower.order() && upper.order() == lower.order();
    }
    let mut notes = Vec::new();
    let stable_level = match expected {
        Some(s) if bijective_last && images.len() > s => Some(s),
        Some(_) => {
            notes.push("J-filtration stabilized but the last transition is not bijective".into());
            None
        }
        None => {
            notes.push(format!("J-filtration did not stabilize within {max_l} powers"));
            None
        }
    };
    let (stable_fingerprint, graded) = match stable_level {
        Some(s) => {
            let st = &images[s - 1];
            (Some(fingerprint(&st.group, cap)?), graded_table(&a, &jf, st)?)
        }
        None => (None, Vec::new()),
    };
    Ok(CompletionProfile {
        group: g.label().to_string(),
        field: f.spec().to_string(),
        group_order: Some(all.order() as u64),
        j_dims: jf.dims(),
        j_stable_index: jf.stable_index(),
        levels,
        stable_level,
        stable_fingerprint,
        graded,
        notes,
    })
}

fn rational_profile(g: &FiniteGroup, all: &Subgroup, max_l: usize) -> Result<CompletionProfile> {
    let a = GroupAlgebra::new(all, Rationals::new())?;
    let jf = j_power_filtration(&a, max_l)?;
    let n = jf.stable_index().ok_or_else(|| {
        Error::UnsupportedField(format!("J-filtration over Q did not stabilize within {max_l} powers"))
    })?;
    let stable_dim = a.dim() - jf.power(n)?.dim();
    if stable_dim != 1 {
        return Err(Error::UnsupportedField(format!(
            "Q-points of a non-trivial unipotent group (kG/J^N of dimension {stable_dim}) are not enumerable"
        )));
    }
    let (top, _) = level_range(Some(n), jf.computed());
    let levels = (1..=top)
        .map(|l| ProfileLevel {
            level: l,
            order: 1,
            abelian: true,
            invariants: Some(Vec::new()),
            transition_surjective: (l < top).then_some(true),
        })
        .collect();
    Ok(CompletionProfile {
        group: g.label().to_string(),
        field: FieldSpec::Rationals.to_string(),
        group_order: Some(all.order() as u64),
        j_dims: jf.dims(),
        j_stable_index: Some(n),
        levels,
        stable_level: Some(top - 1),
        stable_fingerprint: Some(trivial_fingerprint()),
        graded: Vec::new(),
        notes: vec!["kG/J^N is the field itself, so every P_l is trivial".into()],
    })
}

/// Orders of `P_l`, transition maps and the stable group. Over `Q` only
/// the case where `kG/J^N` is one-dimensional is handled.
pub fn completion_profile(g: &FiniteGroup, f: FieldSpec, max_l: usize, cap: usize) -> Result<CompletionProfile> {
    let all = enumerate_elements(g, cap)?;
    match f {
        FieldSpec::Prime(p) => prime_profile(g, &all, PrimeField::new(p)?, max_l, cap),
        FieldSpec::Rationals => rational_profile(g, &all, max_l),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct H1Comparison {
    pub field: String,
    pub level: usize,
    pub h1_group: usize,
    pub h1_pl: usize,
    pub pl_order: u64,
    pub equal: bool,
}

/// `dim J/J^2` for `kG` and for `k[P_l]`.
pub fn h1_group_vs_pl(g: &FiniteGroup, f: FieldSpec, l: usize, cap: usize) -> Result<H1Comparison> {
    let all = enumerate_elements(g, cap)?;
    let (h1_group, h1_pl, pl_order) = match f {
        FieldSpec::Prime(p) => {
            let field = PrimeField::new(p)?;
            let a = GroupAlgebra::new(&all, field)?;
            let jf = j_power_filtration(&a, l + 1)?;
            let pl = unit_image_of_group(&a, &jf, l, cap)?;
            let b = GroupAlgebra::new(&pl.group, field)?;
            let jb = j_power_filtration(&b, 2)?;
            (h1_dimension(&jf)?, h1_dimension(&jb)?, pl.order() as u64)
        }
        FieldSpec::Rationals => {
            let a = GroupAlgebra::new(&all, Rationals::new())?;
            let jf = j_power_filtration(&a, l.max(2) + 1)?;
            let quotient_dim = a.dim() - jf.power(l + 1)?.dim();
            if quotient_dim != 1 {
                return Err(Error::UnsupportedField(format!("A_{l} over Q has dimension {quotient_dim}")));
            }
            (h1_dimension(&jf)?, 0, 1)
        }
    };
    Ok(H1Comparison { field: f.to_string(), level: l, h1_group, h1_pl, pl_order, equal: h1_group == h1_pl })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PCompletionComparison {
    pub group: String,
    pub p: u32,
    /// `G / Γ_p^∞`
    pub p_quotient: GroupFingerprint,
    /// The stable `P` over `F_p`.
    pub completion: GroupFingerprint,
    pub verdict: FingerprintVerdict,
}

/// Compares the stable quotient of the `p`-lower central series with the
/// stable group of the `F_p` completion profile.
pub fn fp_vs_pcompletion(g: &FiniteGroup, p: u32, cap: usize) -> Result<PCompletionComparison> {
    let all = enumerate_elements(g, cap)?;
    let terms = p_lower_central_terms(&all, p, cap)?;
    let last = terms.last().expect("series has a first term");
    let quotient = enumerate_elements(&quotient_group(&all, last, cap)?, cap)?;
    let p_quotient = fingerprint(&quotient, cap)?;
    let profile = prime_profile(g, &all, PrimeField::new(p)?, all.order() + 1, cap)?;
    let completion = profile
        .stable_fingerprint
        .ok_or_else(|| Error::GrouplikeViolation("completion profile did not stabilize".into()))?;
    let verdict = if p_quotient == completion {
        FingerprintVerdict::FingerprintMatch
    } else {
        FingerprintVerdict::FingerprintMismatch
    };
    Ok(PCompletionComparison { group: g.label().to_string(), p, p_quotient, completion, verdict })
}
