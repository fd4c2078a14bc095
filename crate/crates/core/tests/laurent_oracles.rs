use completion_lab::groupalgebra::GradedFlag;
use completion_lab::laurent::*;
use completion_lab::Q;
use num_bigint::BigInt;
use proptest::prelude::*;

fn q(a: i64, b: i64) -> Q {
    Q::new(a.into(), b.into())
}

/// Pascal's triangle up to `n`.
fn pascal(n: usize) -> Vec<Vec<i64>> {
    let mut t = vec![vec![0i64; n + 1]; n + 1];
    for m in 0..=n {
        t[m][0] = 1;
        for i in 1..=m {
            t[m][i] = t[m - 1][i - 1] + if i <= m - 1 { t[m - 1][i] } else { 0 };
        }
    }
    t
}

/// `binomial(k, i) mod p` by Lucas' theorem.
fn lucas(mut k: u64, mut i: u64, p: u64) -> u64 {
    let small = |n: u64, r: u64| -> u64 {
        if r > n {
            return 0;
        }
        let mut acc = 1u64;
        for j in 0..r {
            acc = acc * (n - j) / (j + 1);
        }
        acc % p
    };
    let mut acc = 1;
    while i > 0 || k > 0 {
        acc = acc * small(k % p, i % p) % p;
        k /= p;
        i /= p;
    }
    acc
}

/// `x(x-1)...(x-i+1)/i!` by the product formula.
fn falling(x: &Q, i: u32) -> Q {
    let mut acc = q(1, 1);
    for j in 0..i {
        acc = acc * (x - Q::from_integer(BigInt::from(j))) / Q::from_integer(BigInt::from(j + 1));
    }
    acc
}

/// Order of the `(l+1) × (l+1)` shift matrix by direct powering in i64.
fn oracle_order(p: i64, l: usize) -> u64 {
    let n = l + 1;
    let mut m = vec![vec![0i64; n]; n];
    for r in 0..n {
        m[r][r] = 1;
        if r > 0 {
            m[r][r - 1] = 1;
        }
    }
    let mut cur = m.clone();
    let mut k = 1;
    loop {
        let is_id = (0..n).all(|r| (0..n).all(|c| cur[r][c] == (r == c) as i64));
        if is_id {
            return k;
        }
        let mut next = vec![vec![0i64; n]; n];
        for r in 0..n {
            for c in 0..n {
                next[r][c] = (0..n).map(|t| cur[r][t] * m[t][c]).sum::<i64>() % p;
            }
        }
        cur = next;
        k += 1;
    }
}

#[test]
fn displayed_coefficients() {
    let c2 = binomial_poly(2).poly;
    assert_eq!(c2.coeff([2, 0]), q(1, 2));
    assert_eq!(c2.coeff([1, 0]), q(-1, 2));
    assert_eq!(c2.total_degree(), Some(2));
    let c3 = binomial_poly(3).poly;
    assert_eq!((c3.coeff([1, 0]), c3.coeff([2, 0]), c3.coeff([3, 0])), (q(1, 3), q(-1, 2), q(1, 6)));
    assert_eq!(c3.coeff([0, 0]), q(0, 1));
    assert_eq!(binomial_poly(1).eval(&q(7, 3)), q(7, 3));
}

#[test]
fn coefficients_match_pascal() {
    let t = pascal(12);
    for i in 0..=12u32 {
        let c = binomial_poly(i);
        assert_eq!(c.eval_int(0), if i == 0 { q(1, 1) } else { q(0, 1) });
        for m in 0..=12i64 {
            assert_eq!(c.eval_int(m), q(t[m as usize][i as usize], 1), "c_{i}({m})");
        }
    }
}

#[test]
fn vandermonde_to_twelve_and_numeric_cross_check() {
    let r = vandermonde_check(12);
    assert!(r.all_hold());
    assert_eq!(r.rows.len(), 13);
    // i = 5 at a few rational points, both sides by the product formula
    for (a, b) in [(q(1, 2), q(-3, 7)), (q(5, 1), q(2, 3)), (q(-11, 4), q(9, 5))] {
        let lhs = falling(&(a.clone() + b.clone()), 5);
        let rhs = (0..=5).fold(q(0, 1), |acc, j| acc + falling(&a, j) * falling(&b, 5 - j));
        assert_eq!(lhs, rhs);
        assert_eq!(binomial_poly(5).eval(&a), falling(&a, 5));
    }
}

#[test]
fn char_zero_injectivity_examples() {
    for l in [2, 4, 5] {
        let r = char_zero_injectivity(l);
        assert_eq!(r.verdict, InjectivityVerdict::Confirmed);
        assert!(r.homomorphism);
    }
}

#[test]
fn displayed_orders() {
    assert_eq!(shift_matrix_orbit(2, 1).unwrap().order(), 2);
    assert_eq!(shift_matrix_orbit(2, 2).unwrap().order(), 4);
    assert_eq!(shift_matrix_orbit(2, 3).unwrap().order(), 4);
    assert_eq!(shift_matrix_orbit(2, 4).unwrap().order(), 8);
    assert_eq!(order_profile(2, 7).unwrap().orders(), vec![2, 4, 4, 8, 8, 8, 8]);
    assert_eq!(order_profile(3, 8).unwrap().orders(), vec![3, 3, 9, 9, 9, 9, 9, 9]);
    assert_eq!(order_profile(5, 4).unwrap().orders()[3], 5);
}

#[test]
fn orders_match_direct_powering_and_closed_form() {
    for p in [2u32, 3, 5, 7] {
        let prof = order_profile(p, 40).unwrap();
        for row in &prof.rows {
            assert_eq!(row.order, oracle_order(p as i64, row.level), "p = {p}, l = {}", row.level);
            assert!(row.closed_form_agrees);
        }
    }
    let full = order_profile(2, 64).unwrap();
    assert!(full.rows.iter().all(|r| r.closed_form_agrees));
    assert!(order_profile(2, 65).is_err());
    // the band statement is off by one at l = 2
    let p2 = order_profile(2, 4).unwrap();
    assert_eq!(p2.rows[1].band_statement, 2);
    assert!(!p2.rows[1].band_statement_agrees);
}

#[test]
fn orbit_entries_and_homomorphism_exhaustive() {
    for (p, l) in [(2u32, 7usize), (3, 8), (5, 6)] {
        let o = shift_matrix_orbit(p, l).unwrap();
        let n = o.order();
        for k in 0..n {
            for r in 1..=l + 1 {
                for c in 1..=l + 1 {
                    let expected = if r >= c { lucas(k as u64, (r - c) as u64, p as u64) as u32 } else { 0 };
                    assert_eq!(o.entry(k, r, c), expected);
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                assert_eq!(o.orbit[a].mul(&o.orbit[b]).unwrap(), o.orbit[(a + b) % n]);
            }
        }
    }
}

#[test]
fn tower_transitions() {
    let t = laurent_tower(2, 7).unwrap();
    let orders: Vec<u64> = t.profile.levels.iter().map(|l| l.order).collect();
    assert_eq!(orders, vec![2, 4, 4, 8, 8, 8, 8]);
    let p2p1 = &t.transitions[0];
    assert_eq!((p2p1.from_level, p2p1.to_level, p2p1.source_order, p2p1.target_order), (2, 1, 4, 2));
    assert!(p2p1.surjective && !p2p1.identity);
    let p3p2 = &t.transitions[1];
    assert!(p3p2.identity && p3p2.homomorphism);
    for tr in &t.transitions {
        assert!(tr.homomorphism && tr.surjective);
        assert_eq!(tr.identity, tr.same_band, "{} -> {}", tr.from_level, tr.to_level);
    }
    assert_eq!(t.profile.levels[3].invariants, Some(vec![8]));
    let t3 = laurent_tower(3, 8).unwrap();
    assert!(t3.profile.levels[2..].iter().all(|l| l.order == 9));
}

#[test]
fn graded_audit_against_minimal_exponents() {
    let g = graded_p_vs_j(2, 8).unwrap();
    let flags: Vec<(usize, GradedFlag)> = g.rows.iter().map(|r| (r.index, r.flag)).collect();
    let expect = |i: usize| if [1, 2, 4, 8].contains(&i) { GradedFlag::Match } else { GradedFlag::Mismatch };
    assert_eq!(flags, (1..=8).map(|i| (i, expect(i))).collect::<Vec<_>>());
    assert_eq!(g.rows[0].group_quotient_order, 2);
    assert_eq!(g.rows[2].group_quotient_order, 1);
    assert_eq!(g.rows[3].group_quotient_order, 2);
    // P^i is generated by (1+T)^{k_i}, k_i the order at level i - 1
    for p in [2u32, 3] {
        let g = graded_p_vs_j(p, 20).unwrap();
        for r in &g.rows {
            let k = |i: usize| if i <= 1 { 1 } else { oracle_order(p as i64, i - 1) };
            assert_eq!((r.exponent, r.next_exponent), (k(r.index), k(r.index + 1)));
        }
    }
}

#[test]
fn vanishing_relation_examples() {
    let r1 = vanishing_relations(2, 1, 1).unwrap();
    assert_eq!(r1.orbit_size, 2);
    assert_eq!(r1.dim(), 3);
    assert!(r1.contains(&CoordinatePolynomial { terms: vec![(1, vec![coord(1, 2)])] }).unwrap());
    assert!(r1.contains(&CoordinatePolynomial { terms: vec![(1, vec![coord(1, 1)]), (1, vec![])] }).unwrap());
    assert!(r1.contains(&CoordinatePolynomial { terms: vec![(1, vec![coord(2, 2)]), (1, vec![])] }).unwrap());
    assert!(!r1.contains(&CoordinatePolynomial { terms: vec![(1, vec![coord(2, 1)])] }).unwrap());

    let r2 = vanishing_relations(2, 2, 1).unwrap();
    assert!(r2.contains(&difference(&[coord(2, 1)], &[coord(3, 2)], 2)).unwrap());

    let r3 = vanishing_relations(2, 3, 2).unwrap();
    let rel = difference(&[coord(4, 1)], &[coord(2, 1), coord(3, 1)], 2);
    assert!(r3.contains(&rel).unwrap());
    // the same relation checked point by point with Lucas' theorem
    for k in 0..4u64 {
        assert_eq!(lucas(k, 3, 2), lucas(k, 1, 2) * lucas(k, 2, 2));
    }
    assert!(!r3.contains(&difference(&[coord(2, 1)], &[coord(4, 1)], 2)).unwrap());

    let r33 = vanishing_relations(3, 2, 2).unwrap();
    assert_eq!(r33.orbit_size, 3);
    assert!(vanishing_relations(5, 2, 1).is_err());
    assert!(vanishing_relations(2, 9, 1).is_err());
}

#[test]
fn relation_bases_vanish_under_lucas_evaluation() {
    for (p, l, d) in [(2u32, 2usize, 2usize), (2, 4, 2), (3, 3, 2), (2, 8, 1)] {
        let rb = vanishing_relations(p, l, d).unwrap();
        for row in rb.basis.rows() {
            for k in 0..rb.orbit_size as u64 {
                let mut acc = 0u64;
                for (c, m) in row.iter().zip(&rb.monomials) {
                    let v = m.iter().fold(1u64, |a, t| {
                        let e = if t.row >= t.col { lucas(k, (t.row - t.col) as u64, p as u64) } else { 0 };
                        a * e % p as u64
                    });
                    acc = (acc + *c as u64 * v) % p as u64;
                }
                assert_eq!(acc, 0, "p = {p}, l = {l}, relation {}", rb.format_vector(row));
            }
        }
    }
}

#[test]
fn ideal_audit() {
    let audit = paper_ideal_audit().unwrap();
    assert!(audit.levels[0].all_vanish());
    assert!(audit.levels[1].all_vanish());
    for l in [3usize, 4] {
        let lvl = &audit.levels[l - 1];
        assert_eq!(
            lvl.check("T_21 - T_41"),
            Some(&GeneratorVerdict::Fails { witness: 1, left: 1, right: 0 }),
            "level {l}"
        );
    }
    assert_eq!(audit.levels[3].check("T_31 - T_42"), Some(&GeneratorVerdict::Vanishes));
    assert_eq!(audit.levels[3].check("T_41 - T_52"), Some(&GeneratorVerdict::Vanishes));
    let l2 = &audit.levels[1];
    assert_eq!((l2.function_algebra_dim, l2.independent_coordinates), (4, 2));
    let l4 = &audit.levels[3];
    assert_eq!(l4.function_algebra_dim, 8);
    // every generator except T_21 - T_41 vanishes
    for lvl in &audit.levels {
        for g in &lvl.generators {
            assert_eq!(g.verdict == GeneratorVerdict::Vanishes, g.generator != "T_21 - T_41", "{}", g.generator);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn entries_are_binomials_mod_p(p in prop::sample::select(vec![2u32, 3, 5, 7]), l in 1usize..24, k in 0usize..200) {
        let o = shift_matrix_orbit(p, l).unwrap();
        for r in 1..=l + 1 {
            for c in 1..=r {
                prop_assert_eq!(o.entry(k, r, c) as u64, lucas(k as u64, (r - c) as u64, p as u64));
            }
        }
    }

    #[test]
    fn order_is_least_power_covering_the_level(p in prop::sample::select(vec![2u32, 3, 5]), l in 1usize..30) {
        let o = shift_matrix_orbit(p, l).unwrap();
        prop_assert_eq!(o.order() as u64, closed_form_order(p, l));
        prop_assert_eq!(minimal_exponent(p, l + 1), o.order() as u64);
    }

    #[test]
    fn coefficients_satisfy_vandermonde_numerically(a in -50i64..50, b in -50i64..50, i in 0u32..10) {
        let (x, y) = (q(a, 3), q(b, 7));
        let lhs = binomial_poly(i).eval(&(x.clone() + y.clone()));
        let rhs = (0..=i).fold(q(0, 1), |acc, j| acc + binomial_poly(j).eval(&x) * binomial_poly(i - j).eval(&y));
        prop_assert_eq!(lhs, rhs);
    }
}
