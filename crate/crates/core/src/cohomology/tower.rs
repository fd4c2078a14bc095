use serde::{Deserialize, Serialize};

use super::bar::{BarComplex, CohomologyResult};
use crate::error::{Error, Result};
use crate::exactmath::{DenseMatrix, PrimeField};
use crate::groups::{construct_group, enumerate_elements, Element, FiniteGroup, GroupSpec, Homomorphism, Subgroup};
use crate::FpMatrix;

/// The map `H^n(G) → H^n(G')` induced by a surjection `G' ↠ G`, in the
/// class representatives of both sides.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InflationMap {
    pub degree: usize,
    pub p: u32,
    /// `G`
    pub quotient: String,
    /// `G'`
    pub cover: String,
    pub quotient_dim: usize,
    pub cover_dim: usize,
    /// `cover_dim × quotient_dim`; column `j` is the image of the `j`-th
    /// class of `G`.
    pub matrix: Vec<Vec<u32>>,
    pub rank: usize,
}

impl InflationMap {
    pub fn to_matrix(&self) -> Result<FpMatrix> {
        DenseMatrix::from_rows(PrimeField::new(self.p)?, self.quotient_dim, self.matrix.clone())
    }
}

/// A cohomology computation attached to its bar complex.
struct Level {
    complex: BarComplex,
    h: [CohomologyResult; 2],
}

impl Level {
    fn new(all: &Subgroup, field: PrimeField, label: &str) -> Result<Self> {
        let complex = BarComplex::from_subgroup(all, field, label)?;
        let h = [complex.cohomology(1)?, complex.cohomology(2)?];
        Ok(Level { complex, h })
    }
}

/// Element-index map of a surjection, after certifying it on the cover.
fn index_map(q: &Homomorphism, cover: &Subgroup, quotient: &Subgroup) -> Result<Vec<usize>> {
    q.certify(cover)?;
    let map = cover
        .elements()
        .iter()
        .map(|x| quotient.index_of(&q.apply(x)).ok_or_else(|| Error::InvalidElement(format!("image of {:?} is outside the quotient", x.0))))
        .collect::<Result<Vec<_>>>()?;
    let mut hit = vec![false; quotient.order()];
    map.iter().for_each(|&i| hit[i] = true);
    let image = hit.iter().filter(|h| **h).count();
    if image != quotient.order() {
        return Err(Error::NotSurjective { image, target: quotient.order() });
    }
    Ok(map)
}

fn inflate(cover: &BarComplex, hc: &CohomologyResult, quotient: &BarComplex, hq: &CohomologyResult, qmap: &[usize]) -> Result<InflationMap> {
    let n = hc.degree;
    let columns = hq
        .representatives()
        .iter()
        .map(|f| hc.class_coordinates(&cover.pullback(quotient, qmap, n, f)?))
        .collect::<Result<Vec<_>>>()?;
    let matrix: Vec<Vec<u32>> = (0..hc.dimension()).map(|r| columns.iter().map(|c| c[r]).collect()).collect();
    let rank = DenseMatrix::from_rows(quotient.field(), hq.dimension(), matrix.clone())?.rank();
    Ok(InflationMap {
        degree: n,
        p: quotient.field().p(),
        quotient: quotient.label().to_string(),
        cover: cover.label().to_string(),
        quotient_dim: hq.dimension(),
        cover_dim: hc.dimension(),
        matrix,
        rank,
    })
}

/// Inflation along `q: G' ↠ G` in degree 1 or 2.
pub fn inflation_map(q: &Homomorphism, p: u32, degree: usize, cap: usize) -> Result<InflationMap> {
    let field = PrimeField::new(p)?;
    let cover_all = enumerate_elements(q.source(), cap)?;
    let quotient_all = enumerate_elements(q.target(), cap)?;
    let qmap = index_map(q, &cover_all, &quotient_all)?;
    let cover = BarComplex::from_subgroup(&cover_all, field, q.source().label())?;
    let quotient = BarComplex::from_subgroup(&quotient_all, field, q.target().label())?;
    let (hc, hq) = (cover.cohomology(degree)?, quotient.cohomology(degree)?);
    if degree == 0 {
        return Err(Error::LevelOutOfRange { level: 0, max: 2 });
    }
    inflate(&cover, &hc, &quotient, &hq, &qmap)
}

/// An inverse system `G_0 ← G_1 ← …` of finite groups.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerSpec {
    pub levels: Vec<GroupSpec>,
    /// `maps[i]` lists the images in `levels[i]` of the generators of
    /// `levels[i+1]`; when absent the natural maps are used.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub maps: Option<Vec<Vec<Vec<u32>>>>,
    pub p: u32,
}

impl TowerSpec {
    /// `Z/p ← Z/p^2 ← … ← Z/p^depth` with reduction maps.
    pub fn cyclic(p: u32, depth: u32) -> Self {
        TowerSpec { levels: (1..=depth).map(|e| GroupSpec::Cyclic { n: p.pow(e) }).collect(), maps: None, p }
    }

    /// `count` copies of one group with identity maps.
    pub fn constant(spec: GroupSpec, count: usize, p: u32) -> Self {
        TowerSpec { levels: vec![spec; count], maps: None, p }
    }

    /// The groups and the certified maps `levels[i+1] → levels[i]`.
    pub fn build(&self) -> Result<(Vec<FiniteGroup>, Vec<Homomorphism>)> {
        if self.levels.is_empty() {
            return Err(Error::SpecError("a tower needs at least one level".into()));
        }
        let groups = self.levels.iter().map(construct_group).collect::<Result<Vec<_>>>()?;
        let maps = match &self.maps {
            None => groups.windows(2).map(|w| Homomorphism::natural(&w[1], &w[0])).collect::<Result<Vec<_>>>()?,
            Some(images) => {
                if images.len() + 1 != groups.len() {
                    return Err(Error::SpecError(format!("{} levels need {} maps", groups.len(), groups.len() - 1)));
                }
                groups
                    .windows(2)
                    .zip(images)
                    .map(|(w, img)| {
                        let img: Vec<Element> = img.iter().cloned().map(Element).collect();
                        Homomorphism::from_generator_images(&w[1], &w[0], &img, usize::MAX)
                    })
                    .collect::<Result<Vec<_>>>()?
            }
        };
        Ok((groups, maps))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TowerLevel {
    pub index: usize,
    pub group: String,
    pub order: usize,
    pub h1: usize,
    pub h2: usize,
}

/// The direct system `H^n(G_0) → H^n(G_1) → …` in one degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Colimit {
    pub degree: usize,
    /// Rank of each inflation `H^n(G_i) → H^n(G_(i+1))`.
    pub step_ranks: Vec<usize>,
    /// Rank of the composite `H^n(G_i) → H^n(G_top)` for each `i < top`.
    pub composite_ranks: Vec<usize>,
    /// The last composite rank, or `dim H^n(G_0)` for a one-level tower.
    pub dimension: usize,
    /// The last two composite ranks agree.
    pub stabilized: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TowerReport {
    pub p: u32,
    pub levels: Vec<TowerLevel>,
    pub degree1: Colimit,
    pub degree2: Colimit,
    pub notes: Vec<String>,
}

impl TowerReport {
    pub fn colimit(&self, degree: usize) -> Result<&Colimit> {
        match degree {
            1 => Ok(&self.degree1),
            2 => Ok(&self.degree2),
            _ => Err(Error::LevelOutOfRange { level: degree, max: 2 }),
        }
    }
}

fn colimit(degree: usize, steps: &[InflationMap], base_dim: usize) -> Result<Colimit> {
    let step_ranks = steps.iter().map(|s| s.rank).collect();
    let mut composite_ranks = vec![0; steps.len()];
    if let Some(last) = steps.last() {
        let mut acc = last.to_matrix()?;
        composite_ranks[steps.len() - 1] = acc.rank();
        for i in (0..steps.len() - 1).rev() {
            acc = acc.mul(&steps[i].to_matrix()?)?;
            composite_ranks[i] = acc.rank();
        }
    }
    let dimension = composite_ranks.last().copied().unwrap_or(base_dim);
    let stabilized = composite_ranks.len() >= 2 && composite_ranks[composite_ranks.len() - 2] == dimension;
    Ok(Colimit { degree, step_ranks, composite_ranks, dimension, stabilized })
}

/// `H^1` and `H^2` of every level, the inflations between consecutive
/// levels and the colimits in both degrees.
pub fn tower_continuous_cohomology(t: &TowerSpec, cap: usize) -> Result<TowerReport> {
    let field = PrimeField::new(t.p)?;
    let (groups, maps) = t.build()?;
    let subgroups = groups.iter().map(|g| enumerate_elements(g, cap)).collect::<Result<Vec<_>>>()?;
    let levels = subgroups.iter().zip(&groups).map(|(s, g)| Level::new(s, field, g.label())).collect::<Result<Vec<_>>>()?;
    let mut steps: [Vec<InflationMap>; 2] = [Vec::new(), Vec::new()];
    for (i, q) in maps.iter().enumerate() {
        let qmap = index_map(q, &subgroups[i + 1], &subgroups[i])?;
        let (lower, upper) = (&levels[i], &levels[i + 1]);
        for d in 0..2 {
            steps[d].push(inflate(&upper.complex, &upper.h[d], &lower.complex, &lower.h[d], &qmap)?);
        }
    }
    let report_levels = levels
        .iter()
        .enumerate()
        .map(|(index, l)| TowerLevel {
            index,
            group: l.complex.label().to_string(),
            order: l.complex.order(),
            h1: l.h[0].dimension(),
            h2: l.h[1].dimension(),
        })
        .collect();
    let [s1, s2] = steps;
    Ok(TowerReport {
        p: t.p,
        levels: report_levels,
        degree1: colimit(1, &s1, levels[0].h[0].dimension())?,
        degree2: colimit(2, &s2, levels[0].h[1].dimension())?,
        notes: vec!["the colimit is taken over this tower, assumed cofinal among the finite quotients".into()],
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ConsistencyVerdict {
    Consistent,
    Violation,
}

/// The tower colimits against the cohomology of the discrete group: `H^1`
/// should agree and `H^2` of the tower should inject.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma51Report {
    pub colimit_h1: usize,
    pub colimit_h2: usize,
    pub discrete_h1: usize,
    pub discrete_h2: usize,
    pub h1_isomorphic: bool,
    pub h2_injective: bool,
    pub stabilized: bool,
    pub verdict: ConsistencyVerdict,
}

pub fn lemma51_consistency(t: &TowerReport, discrete_h1: usize, discrete_h2: usize) -> Lemma51Report {
    let (c1, c2) = (t.degree1.dimension, t.degree2.dimension);
    let h1_isomorphic = c1 == discrete_h1;
    let h2_injective = c2 <= discrete_h2;
    Lemma51Report {
        colimit_h1: c1,
        colimit_h2: c2,
        discrete_h1,
        discrete_h2,
        h1_isomorphic,
        h2_injective,
        stabilized: t.degree1.stabilized && t.degree2.stabilized,
        verdict: if h1_isomorphic && h2_injective { ConsistencyVerdict::Consistent } else { ConsistencyVerdict::Violation },
    }
}
