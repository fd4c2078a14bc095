use serde::Serialize;

use super::group::{construct_group, enumerate_elements, Closure, FiniteGroup, Subgroup};
use super::law::Element;
use super::spec::{GroupSpec, RingSpec};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesKind {
    LowerCentral,
    PLowerCentral { p: u32 },
    Congruence,
    TruncatedSl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ComparisonFlag {
    Equal,
    ProperSubgroup,
    Incomparable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FingerprintVerdict {
    FingerprintMatch,
    FingerprintMismatch,
}

/// The quotient of two consecutive terms of a series.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedStep {
    pub order: u64,
    /// Rank as an elementary abelian group, `None` when the quotient is not
    /// elementary abelian.
    pub elementary_rank: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeriesReport {
    pub kind: SeriesKind,
    pub group: String,
    pub orders: Vec<u64>,
    pub steps: Vec<GradedStep>,
    /// The filtration the series is compared against, when there is one.
    pub reference: Option<ReferenceFiltration>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReferenceFiltration {
    pub name: String,
    pub orders: Vec<u64>,
    pub steps: Vec<GradedStep>,
    /// Per level, how the series term sits inside the filtration term.
    pub flags: Vec<ComparisonFlag>,
    /// Per graded step of the filtration, whether order and rank agree with
    /// those of `sl_n(F_p)`.
    pub sl_fingerprints: Vec<FingerprintVerdict>,
}

impl SeriesReport {
    /// True when the series equals the reference filtration at every level.
    pub fn all_equal(&self) -> bool {
        self.reference
            .as_ref()
            .is_some_and(|r| r.flags.iter().all(|f| *f == ComparisonFlag::Equal))
    }
}

/// `[a, b]`, generated by the commutators of every element of `a` with the
/// generators of `b` and closed under conjugation by `b`.
pub fn commutator_subgroup(a: &Subgroup, b: &Subgroup, cap: usize) -> Result<Subgroup> {
    let g = a.group();
    let law = g.law().as_ref();
    let b_gens: Vec<(Element, Element)> = b.generators().iter().map(|s| (s.clone(), g.invert(s))).collect();
    let mut c = Closure::new(law);
    for x in a.elements() {
        let xi = g.invert(x);
        for (s, si) in &b_gens {
            let comm = g.multiply(&g.multiply(&xi, si), &g.multiply(x, s));
            if !c.contains(&comm) {
                c.extend(law, &[comm], cap)?;
            }
        }
    }
    close_under_conjugation(g, &mut c, &b_gens, cap)?;
    Subgroup::from_closure(g, c)
}

fn close_under_conjugation(g: &FiniteGroup, c: &mut Closure, by: &[(Element, Element)], cap: usize) -> Result<()> {
    let law = g.law().as_ref();
    loop {
        let mut grew = false;
        let gens = c.gens.clone();
        for h in &gens {
            for (s, si) in by {
                let conj = g.multiply(&g.multiply(si, h), s);
                if !c.contains(&conj) {
                    c.extend(law, &[conj], cap)?;
                    grew = true;
                }
            }
        }
        if !grew {
            return Ok(());
        }
    }
}

fn graded_step(upper: &Subgroup, lower: &Subgroup) -> GradedStep {
    let order = (upper.order() / lower.order()) as u64;
    if order == 1 {
        return GradedStep { order, elementary_rank: Some(0) };
    }
    let Some((p, r)) = super::spec::prime_power(order as u32) else {
        return GradedStep { order, elementary_rank: None };
    };
    let g = upper.group();
    let gens = upper.generators();
    let elementary = gens.iter().all(|x| lower.contains(&g.pow(x, p as u64)))
        && gens
            .iter()
            .enumerate()
            .all(|(i, x)| gens[i + 1..].iter().all(|y| lower.contains(&g.commutator(x, y))));
    GradedStep { order, elementary_rank: elementary.then_some(r) }
}

fn steps_of(terms: &[Subgroup]) -> Vec<GradedStep> {
    terms.windows(2).map(|w| graded_step(&w[0], &w[1])).collect()
}

fn push_term(terms: &mut Vec<Subgroup>, next: Subgroup) -> Result<bool> {
    let prev = terms.last().expect("series starts with the group");
    if !next.is_subgroup_of(prev) {
        return Err(Error::ClosureViolation);
    }
    let stop = next.is_trivial() || next.order() == prev.order();
    terms.push(next);
    Ok(!stop)
}

/// Terms `Γ^1 = G ⊇ Γ^2 ⊇ ...` until a term is trivial or repeats.
pub fn lower_central_terms(g: &Subgroup, cap: usize) -> Result<Vec<Subgroup>> {
    let mut terms = vec![g.clone()];
    if g.is_trivial() {
        return Ok(terms);
    }
    loop {
        let next = commutator_subgroup(terms.last().unwrap(), g, cap)?;
        if !push_term(&mut terms, next)? {
            return Ok(terms);
        }
    }
}

/// Terms of the `p`-lower central series: each step adds the `p`-th powers
/// of the previous term to its commutator with `G`.
pub fn p_lower_central_terms(g: &Subgroup, p: u32, cap: usize) -> Result<Vec<Subgroup>> {
    if !crate::exactmath::is_prime(p as u64) {
        return Err(Error::SpecError(format!("{p} is not prime")));
    }
    let group = g.group();
    let law = group.law().as_ref();
    let mut terms = vec![g.clone()];
    if g.is_trivial() {
        return Ok(terms);
    }
    loop {
        let prev = terms.last().unwrap();
        let comm = commutator_subgroup(prev, g, cap)?;
        let mut c = comm.to_closure();
        for x in prev.elements() {
            let xp = group.pow(x, p as u64);
            if !c.contains(&xp) {
                c.extend(law, &[xp], cap)?;
            }
        }
        let next = Subgroup::from_closure(group, c)?;
        if !prev.elements().iter().all(|x| next.contains(&group.pow(x, p as u64))) || !comm.is_subgroup_of(&next) {
            return Err(Error::ClosureViolation);
        }
        if !push_term(&mut terms, next)? {
            return Ok(terms);
        }
    }
}

fn plain_report(kind: SeriesKind, g: &Subgroup, terms: &[Subgroup]) -> SeriesReport {
    SeriesReport {
        kind,
        group: g.group().label().to_string(),
        orders: terms.iter().map(|t| t.order() as u64).collect(),
        steps: steps_of(terms),
        reference: None,
        notes: Vec::new(),
    }
}

pub fn lower_central_series(g: &Subgroup, cap: usize) -> Result<SeriesReport> {
    let terms = lower_central_terms(g, cap)?;
    Ok(plain_report(SeriesKind::LowerCentral, g, &terms))
}

pub fn p_lower_central_series(g: &Subgroup, p: u32, cap: usize) -> Result<SeriesReport> {
    let terms = p_lower_central_terms(g, p, cap)?;
    Ok(plain_report(SeriesKind::PLowerCentral { p }, g, &terms))
}

/// Elements commuting with every generator, checked against the full
/// element set.
pub fn center(g: &Subgroup) -> Result<Subgroup> {
    let group = g.group();
    let gens = g.generators();
    let z: Vec<Element> = g
        .elements()
        .iter()
        .filter(|x| gens.iter().all(|s| group.multiply(x, s) == group.multiply(s, x)))
        .cloned()
        .collect();
    let gens = z.clone();
    Subgroup::certified(group, z, gens)
}

/// Level-wise comparison of a series with a filtration; the shorter list is
/// padded with its last term.
pub fn compare_series(series: &[Subgroup], filtration: &[Subgroup]) -> Vec<ComparisonFlag> {
    let len = series.len().max(filtration.len());
    (0..len)
        .map(|i| {
            let s = &series[i.min(series.len() - 1)];
            let f = &filtration[i.min(filtration.len() - 1)];
            if s.same_elements(f) {
                ComparisonFlag::Equal
            } else if s.is_subgroup_of(f) {
                ComparisonFlag::ProperSubgroup
            } else {
                ComparisonFlag::Incomparable
            }
        })
        .collect()
}

fn sl_fingerprints(steps: &[GradedStep], n: u32, p: u32) -> Vec<FingerprintVerdict> {
    let dim = n * n - 1;
    let order = (p as u64).pow(dim);
    steps
        .iter()
        .map(|s| {
            if s.order == order && s.elementary_rank == Some(dim) {
                FingerprintVerdict::FingerprintMatch
            } else {
                FingerprintVerdict::FingerprintMismatch
            }
        })
        .collect()
}

/// The filtration `K^1 ⊇ K^2 ⊇ ... ⊇ K^e = 1` by congruence level, as
/// subgroups of `K^1`.
pub fn congruence_filtration(n: u32, ring: RingSpec, cap: usize) -> Result<Vec<Subgroup>> {
    let (_, e) = ring
        .local_data()
        .ok_or_else(|| Error::SpecError(format!("{ring} is not a local ring")))?;
    if e < 2 {
        return Err(Error::SpecError(format!("{ring} has no non-trivial congruence kernel")));
    }
    let k1_group = construct_group(&GroupSpec::CongruenceKernel { n, ring, level: 1 })?;
    let k1 = enumerate_elements(&k1_group, cap)?;
    let mut terms = vec![k1];
    for level in 2..e {
        let gi = construct_group(&GroupSpec::CongruenceKernel { n, ring, level })?;
        let ki = enumerate_elements(&gi, cap)?;
        let sub = Subgroup::certified(&k1_group, ki.elements().to_vec(), gi.generators().to_vec())?;
        terms.push(sub);
    }
    let id = k1_group.identity();
    terms.push(Subgroup::certified(&k1_group, vec![id], Vec::new())?);
    Ok(terms)
}

fn filtration_report(kind: SeriesKind, n: u32, ring: RingSpec, name: &str, cap: usize) -> Result<SeriesReport> {
    let (p, _) = ring.local_data().expect("checked by congruence_filtration");
    let filtration = congruence_filtration(n, ring, cap)?;
    let lcs = lower_central_terms(&filtration[0], cap)?;
    let f_steps = steps_of(&filtration);
    let reference = ReferenceFiltration {
        name: name.to_string(),
        orders: filtration.iter().map(|t| t.order() as u64).collect(),
        sl_fingerprints: sl_fingerprints(&f_steps, n, p),
        steps: f_steps,
        flags: compare_series(&lcs, &filtration),
    };
    let mut report = plain_report(kind, &filtration[0], &lcs);
    report.reference = Some(reference);
    Ok(report)
}

/// Lower central series of `K^1 = ker(SL_n(Z/p^m) → SL_n(F_p))` against the
/// congruence filtration.
pub fn congruence_filtration_report(n: u32, p: u32, m: u32, cap: usize) -> Result<SeriesReport> {
    if !crate::exactmath::is_prime(p as u64) {
        return Err(Error::SpecError(format!("{p} is not prime")));
    }
    let modulus = p
        .checked_pow(m)
        .filter(|q| *q <= 1 << 16)
        .ok_or_else(|| Error::SpecError(format!("{p}^{m} is too large")))?;
    let mut report =
        filtration_report(SeriesKind::Congruence, n, RingSpec::Zmod { m: modulus }, "congruence", cap)?;
    report.notes.push(format!(
        "the finite quotient of the level-{p} congruence subgroup of SL{n}(Z) modulo level {p}^{m} is \
         identified with the kernel of SL{n}(Z/{modulus}) -> SL{n}(F{p}) (strong approximation assumed)"
    ));
    Ok(report)
}

/// Lower central series of `ker(SL_n(F_p[t]/t^l) → SL_n(F_p))` against the
/// `t`-adic filtration.
pub fn truncated_sl_filtration_report(n: u32, p: u32, l: u32, cap: usize) -> Result<SeriesReport> {
    let ring = RingSpec::PolyTrunc { p, l };
    ring.validate()?;
    filtration_report(SeriesKind::TruncatedSl, n, ring, "t-adic", cap)
}
