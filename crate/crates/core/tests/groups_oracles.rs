use std::collections::HashSet;

use completion_lab::groups::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};

const CAP: usize = DEFAULT_ELEMENT_CAP;

fn whole(spec: GroupSpec) -> Subgroup {
    enumerate_elements(&construct_group(&spec).unwrap(), CAP).unwrap()
}

fn zmod(m: u32) -> RingSpec {
    RingSpec::Zmod { m }
}

// Independent 3x3 integer arithmetic used as the oracle below.
type M3 = [[i64; 3]; 3];

fn det3(a: &M3) -> i64 {
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

fn mat_from(coords: &[u32]) -> M3 {
    let mut m = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = coords[3 * i + j] as i64;
        }
    }
    m
}

fn to_coords(m: &M3, modulus: i64) -> Vec<u32> {
    m.iter().flatten().map(|x| x.rem_euclid(modulus) as u32).collect()
}

/// All `I + step*A` over `Z/modulus` with determinant one.
fn kernel_oracle(modulus: i64, step: i64) -> HashSet<Vec<u32>> {
    let q = modulus / step;
    let mut out = HashSet::new();
    for code in 0..q.pow(9) {
        let mut m = [[0i64; 3]; 3];
        let mut c = code;
        for k in 0..9 {
            m[k / 3][k % 3] = (c % q) * step + if k % 4 == 0 { 1 } else { 0 };
            c /= q;
        }
        if det3(&m).rem_euclid(modulus) == 1 {
            out.insert(to_coords(&m, modulus));
        }
    }
    out
}

fn elements_of(s: &Subgroup) -> HashSet<Vec<u32>> {
    s.elements().iter().map(|e| e.0.clone()).collect()
}

#[test]
fn sl3_f2_order_matches_full_enumeration() {
    let oracle = (0u32..512)
        .filter(|code| {
            let m: Vec<u32> = (0..9).map(|k| (code >> k) & 1).collect();
            det3(&mat_from(&m)).rem_euclid(2) == 1
        })
        .count();
    assert_eq!(oracle, 168);
    assert_eq!(whole(GroupSpec::Sl { n: 3, ring: zmod(2) }).order(), oracle);
}

#[test]
fn congruence_kernels_match_direct_counts() {
    let k4 = whole(GroupSpec::CongruenceKernel { n: 3, ring: zmod(4), level: 1 });
    assert_eq!(elements_of(&k4), kernel_oracle(4, 2));
    assert_eq!(k4.order(), 256);
    let k8 = whole(GroupSpec::CongruenceKernel { n: 3, ring: zmod(8), level: 1 });
    let oracle = kernel_oracle(8, 2);
    assert_eq!(oracle.len(), 65536);
    assert_eq!(elements_of(&k8), oracle);
}

#[test]
fn kernel_generators_generate_the_enumerated_set() {
    let g = construct_group(&GroupSpec::CongruenceKernel { n: 3, ring: zmod(8), level: 1 }).unwrap();
    let direct = enumerate_elements(&g, CAP).unwrap();
    let bfs = subgroup_generated(&g, g.generators(), CAP).unwrap();
    assert!(bfs.same_elements(&direct));
}

#[test]
fn truncated_sl3_order() {
    // |SL3(F2)| times the kernel counted by enumerating I + tA with
    // A over F2 and checking the determinant over F2[t]/t^2 by hand:
    // det(I + tA) = 1 + t tr(A), so the kernel is the trace-zero A.
    let kernel = (0u32..512)
        .filter(|code| ((code & 1) + ((code >> 4) & 1) + ((code >> 8) & 1)) % 2 == 0)
        .count();
    assert_eq!(kernel, 256);
    let g = whole(GroupSpec::Sl { n: 3, ring: RingSpec::PolyTrunc { p: 2, l: 2 } });
    assert_eq!(g.order(), 168 * kernel);
}

#[test]
fn small_generated_subgroup() {
    let g = construct_group(&GroupSpec::CongruenceKernel { n: 3, ring: zmod(4), level: 1 }).unwrap();
    let mut a = mat_from(&[1, 0, 0, 0, 1, 0, 0, 0, 1]);
    a[0][1] = 2;
    let mut b = mat_from(&[1, 0, 0, 0, 1, 0, 0, 0, 1]);
    b[1][0] = 2;
    let gens = [Element(to_coords(&a, 4)), Element(to_coords(&b, 4))];
    assert_eq!(subgroup_generated(&g, &gens, CAP).unwrap().order(), 4);
}

fn brute_commutator_closure(s: &Subgroup) -> HashSet<Element> {
    let g = s.group();
    let comms: Vec<Element> = s
        .elements()
        .iter()
        .flat_map(|x| s.elements().iter().map(move |y| g.commutator(x, y)))
        .collect();
    subgroup_generated(g, &comms, CAP).unwrap().elements().iter().cloned().collect()
}

#[test]
fn commutators_match_pairwise_oracle() {
    for spec in [
        GroupSpec::Unitriangular { n: 3, p: 2 },
        GroupSpec::Unitriangular { n: 4, p: 2 },
        GroupSpec::Sl { n: 2, ring: zmod(3) },
        GroupSpec::Sl { n: 2, ring: zmod(4) },
    ] {
        let s = whole(spec);
        let c = commutator_subgroup(&s, &s, CAP).unwrap();
        let oracle = brute_commutator_closure(&s);
        assert_eq!(c.elements().iter().cloned().collect::<HashSet<_>>(), oracle);
    }
    let h = whole(GroupSpec::Unitriangular { n: 3, p: 2 });
    assert_eq!(commutator_subgroup(&h, &h, CAP).unwrap().order(), 2);
}

#[test]
fn kernel_commutator_is_next_level() {
    let k = whole(GroupSpec::CongruenceKernel { n: 3, ring: zmod(8), level: 1 });
    let c = commutator_subgroup(&k, &k, CAP).unwrap();
    let level2 = kernel_oracle(8, 4);
    assert_eq!(level2.len(), 256);
    assert_eq!(elements_of(&c), level2);
    let g = k.group();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20_000 {
        let x = &k.elements()[rng.gen_range(0..k.order())];
        let y = &k.elements()[rng.gen_range(0..k.order())];
        assert!(c.contains(&g.commutator(x, y)));
    }
}

#[test]
fn series_examples() {
    let lcs = |s| lower_central_series(&whole(s), CAP).unwrap().orders;
    assert_eq!(lcs(GroupSpec::Cyclic { n: 9 }), vec![9, 1]);
    assert_eq!(lcs(GroupSpec::Unitriangular { n: 3, p: 3 }), vec![27, 3, 1]);
    assert_eq!(lcs(GroupSpec::CongruenceKernel { n: 3, ring: zmod(8), level: 1 }), vec![65536, 256, 1]);
    let plcs = |s, p| p_lower_central_series(&whole(s), p, CAP).unwrap().orders;
    assert_eq!(plcs(GroupSpec::Cyclic { n: 4 }, 2), vec![4, 2, 1]);
    assert_eq!(plcs(GroupSpec::Cyclic { n: 4 }, 3), vec![4, 4]);
    assert_eq!(plcs(GroupSpec::Unitriangular { n: 3, p: 2 }, 2), vec![8, 2, 1]);
}

#[test]
fn centers() {
    assert_eq!(center(&whole(GroupSpec::Cyclic { n: 10 })).unwrap().order(), 10);
    assert_eq!(center(&whole(GroupSpec::Unitriangular { n: 3, p: 2 })).unwrap().order(), 2);
    let z = center(&whole(GroupSpec::Sl { n: 2, ring: zmod(3) })).unwrap();
    let expected: HashSet<Vec<u32>> = [vec![1, 0, 0, 1], vec![2, 0, 0, 2]].into_iter().collect();
    assert_eq!(elements_of(&z), expected);
}

#[test]
fn kernel_quotient_is_elementary_abelian() {
    let k1 = whole(GroupSpec::CongruenceKernel { n: 3, ring: zmod(8), level: 1 });
    let c = commutator_subgroup(&k1, &k1, CAP).unwrap();
    let q = quotient_group(&k1, &c, CAP).unwrap();
    let qa = enumerate_elements(&q, CAP).unwrap();
    assert_eq!(qa.order(), 256);
    for x in qa.elements() {
        assert_eq!(q.multiply(x, x), q.identity());
        for y in qa.elements().iter().step_by(17) {
            assert_eq!(q.multiply(x, y), q.multiply(y, x));
        }
    }
    assert_eq!(abelian_invariants(&qa).unwrap(), vec![2; 8]);
}

#[test]
fn filtration_reports() {
    for (n, p, m, orders) in [(3, 2, 2, vec![256, 1]), (3, 2, 3, vec![65536, 256, 1]), (3, 3, 2, vec![6561, 1])] {
        let r = congruence_filtration_report(n, p, m, CAP).unwrap();
        assert_eq!(r.orders, orders);
        assert!(r.all_equal());
        let f = r.reference.unwrap();
        assert_eq!(f.orders, orders);
        assert!(f.steps.iter().all(|s| s.elementary_rank == Some(8)));
    }
    for (n, p, l, orders) in [(3, 2, 2, vec![256, 1]), (3, 2, 3, vec![65536, 256, 1])] {
        let r = truncated_sl_filtration_report(n, p, l, CAP).unwrap();
        assert_eq!(r.orders, orders);
        assert!(r.all_equal());
    }
    let r = truncated_sl_filtration_report(2, 2, 3, CAP).unwrap();
    assert_eq!(r.orders, vec![64, 2, 1]);
    assert_eq!(r.reference.unwrap().flags, vec![ComparisonFlag::Equal, ComparisonFlag::ProperSubgroup, ComparisonFlag::Equal]);
}

#[test]
fn section_search_examples() {
    let nat = |a, b| Homomorphism::natural(&construct_group(&a).unwrap(), &construct_group(&b).unwrap()).unwrap();
    let r = find_section(&nat(GroupSpec::Cyclic { n: 12 }, GroupSpec::Cyclic { n: 3 }), None, SectionCaps::default()).unwrap();
    assert_eq!(r.verdict, SectionVerdict::Found { images: vec![vec![4]] });
    let r = find_section(
        &nat(GroupSpec::Sl { n: 3, ring: RingSpec::PolyTrunc { p: 2, l: 2 } }, GroupSpec::Sl { n: 3, ring: zmod(2) }),
        None,
        SectionCaps::default(),
    )
    .unwrap();
    assert!(matches!(r.verdict, SectionVerdict::Found { .. }));
    let tiny = SectionCaps { elements: CAP, tuples: 10 };
    let r = find_section(&nat(GroupSpec::Sl { n: 3, ring: zmod(4) }, GroupSpec::Sl { n: 3, ring: zmod(2) }), None, tiny).unwrap();
    assert!(matches!(r.verdict, SectionVerdict::Inconclusive { .. }));
}

/// Checks a reported splitting of SL3(Z/4) -> SL3(F2) without the library:
/// close the two lifts under multiplication mod 4 and compare with 168.
#[test]
fn sl3_z4_section_is_genuine() {
    let nat = Homomorphism::natural(
        &construct_group(&GroupSpec::Sl { n: 3, ring: zmod(4) }).unwrap(),
        &construct_group(&GroupSpec::Sl { n: 3, ring: zmod(2) }).unwrap(),
    )
    .unwrap();
    let r = find_section(&nat, None, SectionCaps::default()).unwrap();
    let SectionVerdict::Found { images } = r.verdict else { panic!("expected a section, got {:?}", r.verdict) };
    let mul = |a: &M3, b: &M3| {
        let mut c = [[0i64; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                c[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum::<i64>().rem_euclid(4);
            }
        }
        c
    };
    let gens: Vec<M3> = images.iter().map(|v| mat_from(v)).collect();
    let id = mat_from(&[1, 0, 0, 0, 1, 0, 0, 0, 1]);
    let mut seen = HashSet::from([id]);
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in &gens {
            let y = mul(&x, g);
            if seen.insert(y) {
                frontier.push(y);
            }
        }
    }
    assert_eq!(seen.len(), 168);
    let reductions: HashSet<Vec<i64>> = seen.iter().map(|m| m.iter().flatten().map(|x| x % 2).collect()).collect();
    assert_eq!(reductions.len(), 168);
    for (img, q) in images.iter().zip(&r.quotient_generators) {
        assert_eq!(img.iter().map(|x| x % 2).collect::<Vec<_>>(), *q);
    }
}

#[test]
fn obstruction_certifies_kernel_extension() {
    let nat = Homomorphism::natural(
        &construct_group(&GroupSpec::CongruenceKernel { n: 3, ring: zmod(8), level: 1 }).unwrap(),
        &construct_group(&GroupSpec::CongruenceKernel { n: 3, ring: zmod(4), level: 1 }).unwrap(),
    )
    .unwrap();
    let r = elementary_complement_obstruction(&nat, CAP).unwrap();
    let ObstructionVerdict::NonsplitCertified { witness, .. } = r.verdict else { panic!("{:?}", r.verdict) };
    // square census: no lift of the witness squares to the identity mod 8
    let w = mat_from(&witness);
    let sq = |m: &M3| {
        let mut c = [[0i64; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                c[i][j] = (0..3).map(|k| m[i][k] * m[k][j]).sum::<i64>().rem_euclid(8);
            }
        }
        c
    };
    let id = mat_from(&[1, 0, 0, 0, 1, 0, 0, 0, 1]);
    for lift in kernel_oracle(8, 2) {
        let m = mat_from(&lift);
        if (0..3).all(|i| (0..3).all(|j| (m[i][j] - w[i][j]).rem_euclid(4) == 0)) {
            assert_ne!(sq(&m), id);
        }
    }
}

fn small_specs() -> impl Strategy<Value = GroupSpec> {
    prop_oneof![
        (1u32..40).prop_map(|n| GroupSpec::Cyclic { n }),
        ((1u32..8), (1u32..8)).prop_map(|(a, b)| GroupSpec::Product {
            factors: vec![GroupSpec::Cyclic { n: a }, GroupSpec::Cyclic { n: b }]
        }),
        Just(GroupSpec::Unitriangular { n: 3, p: 2 }),
        Just(GroupSpec::Unitriangular { n: 3, p: 3 }),
        Just(GroupSpec::Sl { n: 2, ring: RingSpec::Zmod { m: 3 } }),
        Just(GroupSpec::Sl { n: 2, ring: RingSpec::Zmod { m: 4 } }),
        Just(GroupSpec::CongruenceKernel { n: 2, ring: RingSpec::Zmod { m: 8 }, level: 1 }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn generated_subgroups_are_closed(spec in small_specs(), picks in prop::collection::vec(any::<prop::sample::Index>(), 1..3)) {
        let g = whole(spec);
        let gens: Vec<Element> = picks.iter().map(|i| g.elements()[i.index(g.order())].clone()).collect();
        let h = subgroup_generated(g.group(), &gens, CAP).unwrap();
        let grp = g.group();
        for x in h.elements() {
            for y in h.elements() {
                prop_assert!(h.contains(&grp.multiply(x, &grp.invert(y))));
            }
        }
        prop_assert_eq!(g.order() % h.order(), 0);
        prop_assert!(h.elements().windows(2).all(|w| w[0].encode() < w[1].encode()));
    }

    #[test]
    fn quotient_orders_divide(spec in small_specs()) {
        let g = whole(spec);
        let d = commutator_subgroup(&g, &g, CAP).unwrap();
        let q = enumerate_elements(&quotient_group(&g, &d, CAP).unwrap(), CAP).unwrap();
        prop_assert_eq!(q.order() * d.order(), g.order());
        let inv = abelian_invariants(&q).unwrap();
        prop_assert_eq!(inv.iter().product::<u64>(), q.order() as u64);
    }

    #[test]
    fn series_descend_and_contain_powers(spec in small_specs(), p in prop::sample::select(vec![2u32, 3, 5])) {
        let g = whole(spec);
        let terms = p_lower_central_terms(&g, p, CAP).unwrap();
        for w in terms.windows(2) {
            prop_assert!(w[1].is_subgroup_of(&w[0]));
            let grp = g.group();
            for x in w[0].elements() {
                prop_assert!(w[1].contains(&grp.pow(x, p as u64)));
                for s in g.generators() {
                    prop_assert!(w[1].contains(&grp.commutator(x, s)));
                }
            }
        }
        let lcs = lower_central_terms(&g, CAP).unwrap();
        for w in lcs.windows(2) {
            prop_assert!(w[1].is_subgroup_of(&w[0]));
        }
    }

    #[test]
    fn reports_are_deterministic(spec in small_specs()) {
        let a = lower_central_series(&whole(spec.clone()), CAP).unwrap();
        let b = lower_central_series(&whole(spec), CAP).unwrap();
        prop_assert_eq!(a, b);
    }
}
