use clap::{Args, Subcommand, ValueEnum};
use serde_json::{json, Value};

use completion_lab::cohomology::{
    bar_cohomology, lemma51_consistency, periodic_cyclic_oracle, tower_continuous_cohomology, ConsistencyVerdict,
    TowerSpec, MAX_COHOMOLOGY_DEGREE,
};
use completion_lab::exactmath::{Field, FieldSpec, PrimeField};
use completion_lab::groupalgebra::{
    build_group_algebra, completion_profile, fp_vs_pcompletion, h1_dimension, j_power_filtration, GradedFlag,
};
use completion_lab::groups::{
    construct_group, elementary_complement_obstruction, enumerate_elements, find_section, lower_central_series,
    p_lower_central_series, congruence_filtration_report, prime_power, truncated_sl_filtration_report,
    FingerprintVerdict, FiniteGroup, GroupFingerprint, GroupSpec, Homomorphism, ObstructionVerdict, RingSpec, SectionCaps,
    SectionVerdict, SeriesReport,
};
use completion_lab::laurent::{
    binomial_poly, char_zero_injectivity, graded_p_vs_j, laurent_tower, order_profile, paper_ideal_audit,
    vandermonde_check, vanishing_relations, GeneratorVerdict, InjectivityVerdict,
};
use completion_lab::{RationalPolynomial, Rationals, Q};

use crate::report::{Claim, Report, Verdict};
use crate::CliError;

type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, Subcommand)]
pub enum Invocation {
    /// Dimensions of the powers of the augmentation ideal of a group algebra
    Jpowers(JpowersArgs),
    /// Orders of the finite stages of the unipotent completion
    CompletionProfile(ProfileArgs),
    /// Orders, coefficients and graded pieces for the infinite cyclic group
    LaurentReport(LaurentArgs),
    /// Checks the listed ideal generators on the finite orbits of 1 + T
    IdealAudit(IdealArgs),
    /// Lower central, p-lower central, congruence and t-adic series
    Series(SeriesArgs),
    /// Exhaustive search for a section of a surjection
    SectionSearch(SectionArgs),
    /// Certificate that a central elementary abelian extension does not split
    NonsplitCert(MapArgs),
    /// Bar cohomology with trivial F_p coefficients
    Cohomology(CohomologyArgs),
    /// Colimits of cohomology along a tower of finite quotients
    Tower(TowerArgs),
    /// Runs the fixed table of checks
    AuditAll(AuditArgs),
}

fn parse_group(s: &str) -> std::result::Result<GroupSpec, String> {
    let spec: GroupSpec = serde_json::from_str(s).map_err(|e| format!("bad group JSON: {e}"))?;
    spec.validate().map_err(|e| e.to_string())?;
    Ok(spec)
}

fn parse_field(s: &str) -> std::result::Result<FieldSpec, String> {
    s.parse().map_err(|e: completion_lab::Error| e.to_string())
}

fn parse_tower(s: &str) -> std::result::Result<TowerSpec, String> {
    serde_json::from_str(s).map_err(|e| format!("bad tower JSON: {e}"))
}

fn group_json(g: &GroupSpec) -> String {
    serde_json::to_string(g).expect("specs serialize")
}

#[derive(Debug, Clone, Args)]
pub struct JpowersArgs {
    #[arg(long, value_parser = parse_group)]
    pub group: GroupSpec,
    #[arg(long, value_parser = parse_field, default_value = "F2")]
    pub field: FieldSpec,
    #[arg(long, default_value_t = 8)]
    pub max_l: usize,
}

#[derive(Debug, Clone, Args)]
pub struct ProfileArgs {
    #[arg(long, value_parser = parse_group)]
    pub group: GroupSpec,
    #[arg(long, value_parser = parse_field, default_value = "F2")]
    pub field: FieldSpec,
    #[arg(long, default_value_t = 16)]
    pub max_l: usize,
}

#[derive(Debug, Clone, Args)]
pub struct LaurentArgs {
    #[arg(long, default_value_t = 2)]
    pub p: u32,
    #[arg(long, default_value_t = 7)]
    pub l_max: usize,
    #[arg(long, default_value_t = 8)]
    pub graded_max: usize,
}

#[derive(Debug, Clone, Args)]
pub struct IdealArgs {
    /// Also compute all vanishing relations on the orbit at this level
    #[arg(long)]
    pub relations: Option<usize>,
    #[arg(long, default_value_t = 2)]
    pub degree: usize,
    #[arg(long, default_value_t = 2)]
    pub p: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeriesKindArg {
    Lcs,
    Plcs,
    Congruence,
    TruncatedSl,
}

impl SeriesKindArg {
    fn name(self) -> &'static str {
        match self {
            SeriesKindArg::Lcs => "lcs",
            SeriesKindArg::Plcs => "plcs",
            SeriesKindArg::Congruence => "congruence",
            SeriesKindArg::TruncatedSl => "truncated-sl",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct SeriesArgs {
    #[arg(long, value_enum)]
    pub kind: SeriesKindArg,
    /// Group for `lcs` and `plcs`
    #[arg(long, value_parser = parse_group)]
    pub group: Option<GroupSpec>,
    #[arg(long)]
    pub p: Option<u32>,
    /// Matrix size for `congruence` and `truncated-sl`
    #[arg(long)]
    pub n: Option<u32>,
    /// Exponent of the modulus p^m for `congruence`
    #[arg(long)]
    pub m: Option<u32>,
    /// Truncation degree for `truncated-sl`
    #[arg(long)]
    pub l: Option<u32>,
}

#[derive(Debug, Clone, Args)]
pub struct MapArgs {
    #[arg(long, value_parser = parse_group)]
    pub group: GroupSpec,
    #[arg(long, value_parser = parse_group)]
    pub onto: GroupSpec,
}

#[derive(Debug, Clone, Args)]
pub struct SectionArgs {
    #[arg(long, value_parser = parse_group)]
    pub group: GroupSpec,
    #[arg(long, value_parser = parse_group)]
    pub onto: GroupSpec,
    /// Largest number of lift tuples to try
    #[arg(long)]
    pub max_tuples: Option<u128>,
}

#[derive(Debug, Clone, Args)]
pub struct CohomologyArgs {
    #[arg(long, value_parser = parse_group)]
    pub group: GroupSpec,
    #[arg(long, default_value_t = 2)]
    pub p: u32,
    #[arg(long, default_value_t = 2)]
    pub degree: usize,
}

#[derive(Debug, Clone, Args)]
pub struct TowerArgs {
    #[arg(long, value_parser = parse_tower)]
    pub tower: TowerSpec,
    /// Dimension of H^1 of the discrete group the tower completes
    #[arg(long)]
    pub discrete_h1: Option<usize>,
    /// Dimension of H^2 of the discrete group the tower completes
    #[arg(long)]
    pub discrete_h2: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct AuditArgs {
    /// Comma-separated row ids or sections (for example `laurent,graded/i3`)
    #[arg(long, value_delimiter = ',')]
    pub rows: Vec<String>,
    /// Rows not started within this many seconds are reported as inconclusive
    #[arg(long)]
    pub budget_secs: Option<u64>,
}

impl Invocation {
    pub fn name(&self) -> &'static str {
        match self {
            Invocation::Jpowers(_) => "jpowers",
            Invocation::CompletionProfile(_) => "completion-profile",
            Invocation::LaurentReport(_) => "laurent-report",
            Invocation::IdealAudit(_) => "ideal-audit",
            Invocation::Series(_) => "series",
            Invocation::SectionSearch(_) => "section-search",
            Invocation::NonsplitCert(_) => "nonsplit-cert",
            Invocation::Cohomology(_) => "cohomology",
            Invocation::Tower(_) => "tower",
            Invocation::AuditAll(_) => "audit-all",
        }
    }

    /// Flags that reproduce this invocation, subcommand first.
    pub fn argv(&self) -> Vec<String> {
        let mut v = vec![self.name().to_string()];
        let mut flag = |k: &str, x: String| {
            v.push(format!("--{k}"));
            v.push(x);
        };
        match self {
            Invocation::Jpowers(a) => {
                flag("group", group_json(&a.group));
                flag("field", a.field.to_string());
                flag("max-l", a.max_l.to_string());
            }
            Invocation::CompletionProfile(a) => {
                flag("group", group_json(&a.group));
                flag("field", a.field.to_string());
                flag("max-l", a.max_l.to_string());
            }
            Invocation::LaurentReport(a) => {
                flag("p", a.p.to_string());
                flag("l-max", a.l_max.to_string());
                flag("graded-max", a.graded_max.to_string());
            }
            Invocation::IdealAudit(a) => {
                if let Some(l) = a.relations {
                    flag("relations", l.to_string());
                    flag("degree", a.degree.to_string());
                    flag("p", a.p.to_string());
                }
            }
            Invocation::Series(a) => {
                flag("kind", a.kind.name().to_string());
                if let Some(g) = &a.group {
                    flag("group", group_json(g));
                }
                for (k, x) in [("n", a.n), ("p", a.p), ("m", a.m), ("l", a.l)] {
                    if let Some(x) = x {
                        flag(k, x.to_string());
                    }
                }
            }
            Invocation::SectionSearch(a) => {
                flag("group", group_json(&a.group));
                flag("onto", group_json(&a.onto));
                if let Some(t) = a.max_tuples {
                    flag("max-tuples", t.to_string());
                }
            }
            Invocation::NonsplitCert(a) => {
                flag("group", group_json(&a.group));
                flag("onto", group_json(&a.onto));
            }
            Invocation::Cohomology(a) => {
                flag("group", group_json(&a.group));
                flag("p", a.p.to_string());
                flag("degree", a.degree.to_string());
            }
            Invocation::Tower(a) => {
                flag("tower", serde_json::to_string(&a.tower).expect("towers serialize"));
                if let Some(h) = a.discrete_h1 {
                    flag("discrete-h1", h.to_string());
                }
                if let Some(h) = a.discrete_h2 {
                    flag("discrete-h2", h.to_string());
                }
            }
            Invocation::AuditAll(a) => {
                if !a.rows.is_empty() {
                    flag("rows", a.rows.join(","));
                }
                if let Some(b) = a.budget_secs {
                    flag("budget-secs", b.to_string());
                }
            }
        }
        v
    }

    pub fn input(&self) -> Value {
        match self {
            Invocation::Jpowers(a) => json!({"group": a.group, "field": a.field.to_string(), "max_l": a.max_l}),
            Invocation::CompletionProfile(a) => {
                json!({"group": a.group, "field": a.field.to_string(), "max_l": a.max_l})
            }
            Invocation::LaurentReport(a) => json!({"p": a.p, "l_max": a.l_max, "graded_max": a.graded_max}),
            Invocation::IdealAudit(a) => json!({"relations": a.relations, "degree": a.degree, "p": a.p}),
            Invocation::Series(a) => {
                json!({"kind": a.kind.name(), "group": a.group, "n": a.n, "p": a.p, "m": a.m, "l": a.l})
            }
            Invocation::SectionSearch(a) => json!({"group": a.group, "onto": a.onto, "max_tuples": a.max_tuples}),
            Invocation::NonsplitCert(a) => json!({"group": a.group, "onto": a.onto}),
            Invocation::Cohomology(a) => json!({"group": a.group, "p": a.p, "degree": a.degree}),
            Invocation::Tower(a) => {
                json!({"tower": a.tower, "discrete_h1": a.discrete_h1, "discrete_h2": a.discrete_h2})
            }
            Invocation::AuditAll(a) => json!({"rows": a.rows, "budget_secs": a.budget_secs}),
        }
    }
}

/// Runs one single-purpose subcommand.
pub fn execute(inv: &Invocation, cap: usize) -> Result<Report> {
    let (results, verdicts) = match inv {
        Invocation::Jpowers(a) => jpowers(a, cap)?,
        Invocation::CompletionProfile(a) => profile(a, cap)?,
        Invocation::LaurentReport(a) => laurent(a)?,
        Invocation::IdealAudit(a) => ideal(a)?,
        Invocation::Series(a) => series(a, cap)?,
        Invocation::SectionSearch(a) => section(a, cap)?,
        Invocation::NonsplitCert(a) => nonsplit(a, cap)?,
        Invocation::Cohomology(a) => cohomology(a, cap)?,
        Invocation::Tower(a) => tower(a, cap)?,
        Invocation::AuditAll(a) => return crate::audit::audit_all(a, cap),
    };
    Ok(Report { command: inv.name().to_string(), input: inv.input(), results, verdicts })
}

type Outcome = Result<(Value, Vec<Claim>)>;

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn valuation(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

fn j_dims<F: Field>(g: &FiniteGroup, f: F, max_l: usize, cap: usize) -> Result<(Vec<usize>, Option<usize>, usize)> {
    let a = build_group_algebra(g, f, cap)?;
    let jf = j_power_filtration(&a, max_l.max(2))?;
    let h1 = h1_dimension(&jf)?;
    let mut dims = jf.dims();
    dims.truncate(max_l + 1);
    Ok((dims, jf.stable_index(), h1))
}

fn jpowers(a: &JpowersArgs, cap: usize) -> Outcome {
    let g = construct_group(&a.group)?;
    let (dims, stable, h1) = match a.field {
        FieldSpec::Prime(p) => j_dims(&g, PrimeField::new(p)?, a.max_l, cap)?,
        FieldSpec::Rationals => j_dims(&g, Rationals::new(), a.max_l, cap)?,
    };
    let order = dims[0];
    let mut claims = Vec::new();
    let stable_dim = stable.map(|_| *dims.last().expect("J^0 is present"));
    match (&a.group, a.field) {
        (GroupSpec::Cyclic { n }, FieldSpec::Prime(p)) => {
            let pd = (p as u64).pow(valuation(*n as u64, p as u64)) as usize;
            if pd == *n as usize && pd > 1 {
                let expected: Vec<usize> = (0..=pd).rev().collect();
                let verdict = match stable {
                    Some(_) => Verdict::from_bool(dims == expected),
                    None => Verdict::Inconclusive,
                };
                claims.push(Claim::new(
                    "cyclic-powers",
                    format!("(1-t)^i spans J^i in F_{p}[Z/{n}], so dim J^i = {n} - i and J^{n} = 0"),
                    verdict,
                    format!("computed {dims:?}, expected {expected:?}"),
                ));
            }
            let expected = *n as usize - pd;
            claims.push(Claim::new(
                "stable-codimension",
                format!("the powers of J in F_{p}[Z/{n}] stabilize in codimension {pd}"),
                stable_dim.map_or(Verdict::Inconclusive, |d| Verdict::from_bool(d == expected)),
                format!("stable dimension {}, expected {expected}", shown(stable_dim)),
            ));
        }
        (_, FieldSpec::Rationals) => claims.push(Claim::new(
            "idempotent-augmentation",
            "J^2 = J for a finite group over Q",
            Verdict::from_bool(dims.get(2) == dims.get(1)),
            format!("dims {dims:?}"),
        )),
        _ => claims.push(Claim::new("coverage", "no statement is checked for this input", Verdict::NotApplicable, "")),
    }
    let results = json!({
        "group_order": order,
        "dims": dims,
        "stable_index": stable,
        "h1": h1,
    });
    Ok((results, claims))
}

fn profile(a: &ProfileArgs, cap: usize) -> Outcome {
    let g = construct_group(&a.group)?;
    let prof = completion_profile(&g, a.field, a.max_l, cap)?;
    let mut claims = Vec::new();
    let stable = prof.stable_order();
    match (&a.group, a.field) {
        (GroupSpec::Cyclic { n }, FieldSpec::Prime(p)) => {
            let expected = (p as u64).pow(valuation(*n as u64, p as u64));
            let cyclic = prof.stable_fingerprint.as_ref().is_some_and(|f| f.order == expected && f.exponent == expected);
            let claim = if expected == 1 {
                format!("the F_{p}-completion of Z/{n} is trivial")
            } else {
                format!("the F_{p}-completion of Z/{n} is cyclic of order {expected}")
            };
            claims.push(Claim::new(
                "cyclic-completion",
                claim,
                if stable.is_some() { Verdict::from_bool(cyclic) } else { Verdict::Inconclusive },
                match &prof.stable_fingerprint {
                    Some(f) => format!("stable quotient: {}", describe(f)),
                    None => "the profile did not stabilize".to_string(),
                },
            ));
        }
        (_, FieldSpec::Rationals) => claims.push(Claim::new(
            "trivial-completion",
            "the Q-completion of a finite group is trivial",
            if stable.is_some() { Verdict::from_bool(stable == Some(1)) } else { Verdict::Inconclusive },
            format!("stable order {}", shown(stable)),
        )),
        _ => {}
    }
    let mut results = json!({ "profile": to_value(&prof) });
    if let FieldSpec::Prime(p) = a.field {
        let cmp = fp_vs_pcompletion(&g, p, cap)?;
        claims.push(Claim::new(
            "p-completion",
            format!("the F_{p}-completion of a finite group is its maximal {p}-quotient"),
            Verdict::from_bool(cmp.verdict == FingerprintVerdict::FingerprintMatch),
            format!("p-quotient: {}; completion: {}", describe(&cmp.p_quotient), describe(&cmp.completion)),
        ));
        results["p_completion"] = to_value(&cmp);
    }
    for row in &prof.graded {
        if row.predicted_order.is_some() {
            claims.push(Claim::new(
                format!("graded-{}", row.index),
                format!("|P^{0}/P^{1}| = |J^{0}/J^{1}| for this group", row.index, row.index + 1),
                Verdict::from_bool(row.flag == GradedFlag::Match),
                format!("group quotient {}, predicted {}", row.group_quotient_order, shown(row.predicted_order)),
            ));
        }
    }
    Ok((results, claims))
}

fn shown<T: std::fmt::Display>(x: Option<T>) -> String {
    x.map_or_else(|| "not reached".to_string(), |v| v.to_string())
}

fn describe(f: &GroupFingerprint) -> String {
    format!("order {}, exponent {}, abelianization {:?}", f.order, f.exponent, f.abelianization)
}

fn rational(s: &str) -> Q {
    s.parse().expect("literal rationals parse")
}

fn univariate(coeffs: &[&str]) -> RationalPolynomial {
    coeffs.iter().enumerate().fold(RationalPolynomial::zero(1), |acc, (k, c)| {
        acc.add(&RationalPolynomial::monomial(1, [k as u32, 0], rational(c)))
    })
}

fn laurent(a: &LaurentArgs) -> Outcome {
    let orders = order_profile(a.p, a.l_max)?;
    let tower = laurent_tower(a.p, a.l_max)?;
    let graded = graded_p_vs_j(a.p, a.graded_max)?;
    let vandermonde = vandermonde_check(12);
    let injectivity = char_zero_injectivity(a.l_max as u32);
    let computed: Vec<u64> = orders.rows.iter().map(|r| r.order).collect();
    let mut claims = Vec::new();

    if a.p == 2 {
        let listed = [2u64, 4, 4, 8];
        let k = listed.len().min(computed.len());
        claims.push(Claim::new(
            "orders-listed",
            "P_1, P_2, P_3, P_4 have orders 2, 4, 4, 8",
            Verdict::from_bool(computed[..k] == listed[..k]),
            format!("computed {:?}", &computed[..k]),
        ));
    } else {
        claims.push(Claim::new("orders-listed", "explicit orders are listed for p = 2 only", Verdict::NotApplicable, ""));
    }

    let off: Vec<String> = orders
        .rows
        .iter()
        .filter(|r| !r.band_statement_agrees)
        .map(|r| format!("l = {}: order {}, band gives {}", r.level, r.order, r.band_statement))
        .collect();
    claims.push(Claim::new(
        "band-orders",
        "1 + T has order p^d in P_l for p^d <= l <= p^(d+1) - 1",
        Verdict::from_bool(off.is_empty()),
        if off.is_empty() { String::new() } else { off.join("; ") },
    ));

    let closed = orders.rows.iter().all(|r| r.closed_form_agrees);
    claims.push(Claim::new(
        "closed-form",
        "the order of P_l is the least power of p exceeding l",
        Verdict::from_bool(closed),
        format!("computed {computed:?}"),
    ));

    let bad: Vec<String> = tower
        .transitions
        .iter()
        .filter(|t| t.identity != t.same_band)
        .map(|t| format!("{} -> {}", t.from_level, t.to_level))
        .collect();
    claims.push(Claim::new(
        "band-transitions",
        "P_(l+1) -> P_l is the identity exactly when both levels lie in one band",
        Verdict::from_bool(bad.is_empty()),
        if bad.is_empty() { format!("{} transitions", tower.transitions.len()) } else { bad.join(", ") },
    ));

    let p = a.p as u64;
    let power_of_p = |mut x: u64| {
        while x % p == 0 {
            x /= p;
        }
        x == 1
    };
    let surjections = tower.transitions.iter().all(|t| t.homomorphism && t.surjective);
    let growing = computed.iter().all(|&o| power_of_p(o)) && computed.last() > computed.first();
    claims.push(Claim::new(
        "limit-Zp",
        format!("the F_{0}-completion of Z is Z_{0}", a.p),
        Verdict::from_bool(surjections && growing),
        format!("transitions are surjective homomorphisms: {surjections}; orders {computed:?}"),
    ));

    let c2 = binomial_poly(2).poly;
    let c3 = binomial_poly(3).poly;
    let coeff_ok = c2 == univariate(&["0", "-1/2", "1/2"]) && c3 == univariate(&["0", "1/3", "-1/2", "1/6"]);
    claims.push(Claim::new(
        "coefficients",
        "c_2 = a^2/2 - a/2 and c_3 = a/3 - a^2/2 + a^3/6",
        Verdict::from_bool(coeff_ok),
        format!("c_2 = {c2}, c_3 = {c3}"),
    ));
    claims.push(Claim::new(
        "vandermonde",
        "c_i(a + b) = sum of c_j(a) c_(i-j)(b)",
        Verdict::from_bool(vandermonde.all_hold()),
        format!("checked i <= {}", vandermonde.max_index),
    ));
    claims.push(Claim::new(
        "char-zero",
        "over Q the binomial coordinates embed Z and the completion is the additive group",
        match injectivity.verdict {
            InjectivityVerdict::Confirmed => Verdict::Confirmed,
            InjectivityVerdict::Refuted => Verdict::Mismatch,
        },
        format!("checked up to level {}", injectivity.level),
    ));
    for row in &graded.rows {
        claims.push(Claim::new(
            format!("graded-{}", row.index),
            format!("P^{0}/P^{1} has the order of J^{0}/J^{1}", row.index, row.index + 1),
            Verdict::from_bool(row.flag == GradedFlag::Match),
            format!("group quotient {}, predicted {}", row.group_quotient_order, row.predicted_order),
        ));
    }

    let coefficients: serde_json::Map<String, Value> =
        (0..=4).map(|i| (format!("c{i}"), Value::String(binomial_poly(i).poly.to_string()))).collect();
    let results = json!({
        "orders": to_value(&orders),
        "transitions": to_value(&tower.transitions),
        "coefficients": coefficients,
        "vandermonde": to_value(&vandermonde),
        "char_zero": to_value(&injectivity),
        "graded": to_value(&graded),
    });
    Ok((results, claims))
}

fn ideal(a: &IdealArgs) -> Outcome {
    let audit = paper_ideal_audit()?;
    let mut claims = Vec::new();
    for lvl in &audit.levels {
        let failing: Vec<String> = lvl
            .generators
            .iter()
            .filter_map(|g| match g.verdict {
                GeneratorVerdict::Vanishes => None,
                GeneratorVerdict::Fails { witness, left, right } => {
                    Some(format!("{} fails at k = {witness} ({left} vs {right})", g.generator))
                }
            })
            .collect();
        claims.push(Claim::new(
            format!("ideal-l{}", lvl.level),
            format!("the listed generators of the ideal of O(P_{}) vanish on the orbit", lvl.level),
            Verdict::from_bool(failing.is_empty()),
            if failing.is_empty() {
                format!("{} generators vanish", lvl.generators.len())
            } else {
                failing.join("; ")
            },
        ));
        let stated = match lvl.level {
            2 | 3 => 2,
            4 => 3,
            _ => continue,
        };
        let (fa, ic) = (lvl.function_algebra_dim, lvl.independent_coordinates);
        let verdict = match (fa == stated, ic == stated) {
            (true, true) => Verdict::Confirmed,
            (false, false) => Verdict::Mismatch,
            _ => Verdict::Inconclusive,
        };
        claims.push(Claim::new(
            format!("dimension-l{}", lvl.level),
            format!("O(P_{}) is {stated}-dimensional", lvl.level),
            verdict,
            format!("function algebra dimension {fa}, independent coordinates {ic}"),
        ));
    }
    let mut results = json!({ "audit": to_value(&audit) });
    if let Some(l) = a.relations {
        let basis = vanishing_relations(a.p, l, a.degree)?;
        let relations: Vec<String> = basis.basis.rows().iter().map(|r| basis.format_vector(r)).collect();
        results["relations"] = json!({
            "p": basis.p,
            "level": basis.level,
            "degree": basis.degree,
            "orbit_size": basis.orbit_size,
            "monomials": basis.monomials.len(),
            "dimension": basis.dim(),
            "basis": relations,
        });
    }
    Ok((results, claims))
}

fn require<T>(x: Option<T>, flag: &str, kind: SeriesKindArg) -> Result<T> {
    x.ok_or_else(|| CliError::Usage(format!("series --kind {} needs --{flag}", kind.name())))
}

fn reference_claim(r: &SeriesReport, n: u32) -> Vec<Claim> {
    let Some(f) = &r.reference else { return Vec::new() };
    let sl_dim = n * n - 1;
    let fingerprints = f.sl_fingerprints.iter().all(|v| *v == FingerprintVerdict::FingerprintMatch);
    let equal = r.all_equal();
    let ranks: Vec<String> = f.steps.iter().map(|s| shown(s.elementary_rank)).collect();
    let flags: Vec<String> = f.flags.iter().map(|x| to_value(x).as_str().unwrap_or_default().to_string()).collect();
    vec![Claim::new(
        format!("lcs-equals-{}", f.name),
        format!("the lower central series is the {} filtration with graded pieces sl_{n}(F_p)", f.name),
        Verdict::from_bool(equal && fingerprints),
        format!(
            "flags [{}]; series orders {:?}, filtration orders {:?}; graded ranks [{}] against {sl_dim}",
            flags.join(", "),
            r.orders,
            f.orders,
            ranks.join(", ")
        ),
    )]
}

fn series(a: &SeriesArgs, cap: usize) -> Outcome {
    let (report, claims) = match a.kind {
        SeriesKindArg::Lcs | SeriesKindArg::Plcs => {
            let spec = require(a.group.clone(), "group", a.kind)?;
            let all = enumerate_elements(&construct_group(&spec)?, cap)?;
            let r = match a.kind {
                SeriesKindArg::Lcs => lower_central_series(&all, cap)?,
                _ => p_lower_central_series(&all, require(a.p, "p", a.kind)?, cap)?,
            };
            (r, vec![Claim::new("coverage", "no statement is checked for this input", Verdict::NotApplicable, "")])
        }
        SeriesKindArg::Congruence => {
            let (n, p, m) = (require(a.n, "n", a.kind)?, require(a.p, "p", a.kind)?, require(a.m, "m", a.kind)?);
            let r = congruence_filtration_report(n, p, m, cap)?;
            let c = reference_claim(&r, n);
            (r, c)
        }
        SeriesKindArg::TruncatedSl => {
            let (n, p, l) = (require(a.n, "n", a.kind)?, require(a.p, "p", a.kind)?, require(a.l, "l", a.kind)?);
            let r = truncated_sl_filtration_report(n, p, l, cap)?;
            let c = reference_claim(&r, n);
            (r, c)
        }
    };
    Ok((to_value(&report), claims))
}

fn natural_map(group: &GroupSpec, onto: &GroupSpec) -> Result<Homomorphism> {
    Ok(Homomorphism::natural(&construct_group(group)?, &construct_group(onto)?)?)
}

fn reduction_prime(group: &GroupSpec, onto: &GroupSpec) -> Option<u32> {
    match (group, onto) {
        (GroupSpec::Sl { n, ring: RingSpec::Zmod { m } }, GroupSpec::Sl { n: n2, ring: RingSpec::Zmod { m: q } })
            if n == n2 =>
        {
            let (p, k) = prime_power(*m)?;
            (k >= 2 && *q == p).then_some(p)
        }
        _ => None,
    }
}

fn section(a: &SectionArgs, cap: usize) -> Outcome {
    let q = natural_map(&a.group, &a.onto)?;
    let mut caps = SectionCaps { elements: cap, ..SectionCaps::default() };
    if let Some(t) = a.max_tuples {
        caps.tuples = t;
    }
    let r = find_section(&q, None, caps)?;
    let claim = match reduction_prime(&a.group, &a.onto) {
        None => Claim::new("no-splitting", "the claim concerns SL_n(Z/p^k) -> SL_n(F_p)", Verdict::NotApplicable, ""),
        Some(_) => {
            let (verdict, detail) = match &r.verdict {
                SectionVerdict::None => {
                    (Verdict::Confirmed, format!("all {} lift tuples fail", r.search_space))
                }
                SectionVerdict::Found { images } => {
                    (Verdict::Mismatch, format!("lifts {images:?} of {:?} define a section", r.quotient_generators))
                }
                SectionVerdict::Inconclusive { reason } => (Verdict::Inconclusive, reason.clone()),
            };
            Claim::new("no-splitting", "the reduction map has no section", verdict, detail)
        }
    };
    Ok((to_value(&r), vec![claim]))
}

fn nonsplit(a: &MapArgs, cap: usize) -> Outcome {
    let q = natural_map(&a.group, &a.onto)?;
    let r = elementary_complement_obstruction(&q, cap)?;
    let (verdict, detail) = match &r.verdict {
        ObstructionVerdict::NonsplitCertified { witness, cosets_without } => (
            Verdict::Confirmed,
            format!("{cosets_without} cosets of the kernel have no element of order {}; witness {witness:?}", r.p),
        ),
        ObstructionVerdict::Inconclusive => {
            (Verdict::Inconclusive, "every coset of the kernel contains an element of order p".to_string())
        }
    };
    let claim = Claim::new("nonsplit", "the extension by the elementary abelian kernel does not split", verdict, detail);
    Ok((to_value(&r), vec![claim]))
}

fn cohomology(a: &CohomologyArgs, cap: usize) -> Outcome {
    if a.degree > MAX_COHOMOLOGY_DEGREE {
        return Err(CliError::Usage(format!("--degree must be at most {MAX_COHOMOLOGY_DEGREE}")));
    }
    let g = construct_group(&a.group)?;
    let dims = (0..=a.degree)
        .map(|n| bar_cohomology(&g, a.p, n, cap).map(|r| r.summary()))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let mut claims = Vec::new();
    if let GroupSpec::Cyclic { n } = a.group {
        let expected: Vec<usize> =
            (0..=a.degree).map(|d| periodic_cyclic_oracle(n as u64, a.p as u64, d)).collect();
        let computed: Vec<usize> = dims.iter().map(|s| s.dimension).collect();
        claims.push(Claim::new(
            "periodic",
            format!("H^i(Z/{n}, F_{}) follows the periodic resolution", a.p),
            Verdict::from_bool(computed == expected),
            format!("computed {computed:?}, expected {expected:?}"),
        ));
    }
    let jf = j_power_filtration(&build_group_algebra(&g, PrimeField::new(a.p)?, cap)?, 2)?;
    let h1_j = h1_dimension(&jf)?;
    if a.degree >= 1 {
        claims.push(Claim::new(
            "h1-augmentation",
            "dim H^1(G, F_p) = dim J/J^2",
            Verdict::from_bool(dims[1].dimension == h1_j),
            format!("bar complex {}, dim J/J^2 = {h1_j}", dims[1].dimension),
        ));
    }
    Ok((json!({ "cohomology": to_value(&dims), "h1_augmentation": h1_j }), claims))
}

fn tower(a: &TowerArgs, cap: usize) -> Outcome {
    let t = tower_continuous_cohomology(&a.tower, cap)?;
    let mut results = json!({ "tower": to_value(&t) });
    let claim = match (a.discrete_h1, a.discrete_h2) {
        (Some(h1), Some(h2)) => {
            let l = lemma51_consistency(&t, h1, h2);
            results["consistency"] = to_value(&l);
            let verdict = if !l.stabilized {
                Verdict::Inconclusive
            } else {
                Verdict::from_bool(l.verdict == ConsistencyVerdict::Consistent)
            };
            Claim::new(
                "tower-comparison",
                "H^1_cts agrees with H^1 of the discrete group and H^2_cts injects into H^2",
                verdict,
                format!(
                    "colimit dims ({}, {}) against discrete ({h1}, {h2}); degree-2 step ranks {:?}",
                    l.colimit_h1, l.colimit_h2, t.degree2.step_ranks
                ),
            )
        }
        _ => Claim::new(
            "tower-comparison",
            "comparison with the discrete group needs --discrete-h1 and --discrete-h2",
            Verdict::NotApplicable,
            "",
        ),
    };
    Ok((results, vec![claim]))
}
