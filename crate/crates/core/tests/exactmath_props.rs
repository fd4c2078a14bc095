use completion_lab::exactmath::{echelonize, nullspace, EchelonBuilder, Field, PrimeField};
use completion_lab::FpMatrix;
use proptest::prelude::*;
use rayon::prelude::*;

/// Determinant of the k x k minor on rows `rs` and columns `cs` by cofactor
/// expansion along the first row; oracle only.
fn minor_det(p: i64, e: &[u32], cols: usize, rs: &[usize], cs: &[usize]) -> i64 {
    let k = rs.len();
    if k == 1 {
        return e[rs[0] * cols + cs[0]] as i64;
    }
    let mut total = 0i64;
    let mut rest = [0usize; 4];
    for j in 0..k {
        let a = e[rs[0] * cols + cs[j]] as i64;
        if a == 0 {
            continue;
        }
        let mut n = 0;
        for (jj, &c) in cs.iter().enumerate() {
            if jj != j {
                rest[n] = c;
                n += 1;
            }
        }
        let sub = minor_det(p, e, cols, &rs[1..], &rest[..n]);
        let term = a * sub % p;
        total = if j % 2 == 0 { total + term } else { total - term };
    }
    total.rem_euclid(p)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n).filter(|m| m.count_ones() as usize == k).map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect()).collect()
}

/// Largest k with a non-vanishing k x k minor.
fn minor_rank(p: u32, rows: usize, cols: usize, e: &[u32], subsets_by_size: &[Vec<Vec<Vec<usize>>>; 2]) -> usize {
    for k in (1..=rows.min(cols)).rev() {
        for rs in &subsets_by_size[0][k] {
            for cs in &subsets_by_size[1][k] {
                if minor_det(p as i64, e, cols, rs, cs) != 0 {
                    return k;
                }
            }
        }
    }
    0
}

fn decode(mut code: u64, p: u32, len: usize) -> Vec<u32> {
    (0..len)
        .map(|_| {
            let d = (code % p as u64) as u32;
            code /= p as u64;
            d
        })
        .collect()
}

fn exhaustive_rank_check(p: u32, rows: usize, cols: usize) {
    let f = PrimeField::new(p).unwrap();
    let total = (p as u64).pow((rows * cols) as u32);
    let subs = [
        (0..=rows).map(|k| subsets(rows, k)).collect::<Vec<_>>(),
        (0..=cols).map(|k| subsets(cols, k)).collect::<Vec<_>>(),
    ];
    let bad = (0..total).into_par_iter().find_any(|&code| {
        let e = decode(code, p, rows * cols);
        let m = FpMatrix::new(f, rows, cols, e.clone()).unwrap();
        let (basis, rank) = echelonize(&m, f).unwrap();
        rank != minor_rank(p, rows, cols, &e, &subs) || !basis.is_reduced_echelon()
    });
    assert_eq!(bad, None, "rank mismatch over F{p} for shape {rows}x{cols}");
}

#[test]
fn rank_matches_minor_oracle_over_f2() {
    for rows in 1..=4 {
        for cols in 1..=4 {
            exhaustive_rank_check(2, rows, cols);
        }
    }
}

#[test]
fn rank_matches_minor_oracle_over_f3() {
    for rows in 1..=4 {
        for cols in 1..=4 {
            exhaustive_rank_check(3, rows, cols);
        }
    }
}

fn matrix_strategy() -> impl Strategy<Value = (u32, usize, usize, Vec<u32>)> {
    (prop::sample::select(vec![2u32, 3, 5, 7, 101]), 1usize..7, 1usize..9).prop_flat_map(|(p, r, c)| {
        (Just(p), Just(r), Just(c), prop::collection::vec(0..p, r * c))
    })
}

proptest! {
    #[test]
    fn echelonize_is_idempotent((p, r, c, e) in matrix_strategy()) {
        let f = PrimeField::new(p).unwrap();
        let m = FpMatrix::new(f, r, c, e).unwrap();
        let (basis, rank) = echelonize(&m, f).unwrap();
        let again = FpMatrix::from_rows(f, c, basis.rows().to_vec()).unwrap();
        let (basis2, rank2) = echelonize(&again, f).unwrap();
        prop_assert_eq!(rank, rank2);
        prop_assert_eq!(basis, basis2);
    }

    #[test]
    fn nullspace_dimension_and_annihilation((p, r, c, e) in matrix_strategy()) {
        let f = PrimeField::new(p).unwrap();
        let m = FpMatrix::new(f, r, c, e).unwrap();
        let n = nullspace(&m, f).unwrap();
        prop_assert_eq!(n.dim(), c - m.rank());
        prop_assert!(n.is_reduced_echelon());
        for v in n.rows() {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(|x| *x == 0));
        }
    }

    #[test]
    fn coordinates_reconstruct_members((p, r, c, e) in matrix_strategy(), weights in prop::collection::vec(0u32..1000, 6)) {
        let f = PrimeField::new(p).unwrap();
        let m = FpMatrix::new(f, r, c, e).unwrap();
        let (basis, _) = echelonize(&m, f).unwrap();
        let mut v = vec![0u32; c];
        for (row, w) in m.row_vecs().zip(&weights) {
            let w = w % p;
            for (x, y) in v.iter_mut().zip(&row) {
                *x = f.add(x, &f.mul(&w, y));
            }
        }
        let coords = basis.coordinates(&v).unwrap().expect("combination of rows lies in the row space");
        prop_assert_eq!(basis.combine(&coords), v);
    }

    #[test]
    fn pushing_a_member_never_grows_rank((p, r, c, e) in matrix_strategy()) {
        let f = PrimeField::new(p).unwrap();
        let m = FpMatrix::new(f, r, c, e).unwrap();
        let mut b = EchelonBuilder::new(f, c);
        for row in m.row_vecs() {
            b.push(row).unwrap();
        }
        let rank = b.rank();
        for row in m.row_vecs() {
            prop_assert!(!b.push(row).unwrap());
        }
        prop_assert_eq!(b.rank(), rank);
    }
}
