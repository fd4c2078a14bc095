use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::{RationalPolynomial, Q};

/// `c_i(α)`, the coefficient of `T^i` in `(1+T)^α`, as a polynomial in `α`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinomialPolynomial {
    pub index: u32,
    pub poly: RationalPolynomial,
}

impl BinomialPolynomial {
    /// Horner evaluation at `α`.
    pub fn eval(&self, alpha: &Q) -> Q {
        let mut acc = Q::zero();
        for d in (0..=self.index).rev() {
            acc = acc * alpha + self.poly.coeff([d, 0]);
        }
        acc
    }

    pub fn eval_int(&self, m: i64) -> Q {
        self.eval(&Q::from_integer(BigInt::from(m)))
    }

    /// `c_i(k) mod p` for a non-negative integer `k`.
    pub fn eval_mod(&self, k: u64, p: u32) -> u32 {
        let v = self.eval(&Q::from_integer(BigInt::from(k)));
        debug_assert!(v.is_integer());
        let r = v.to_integer() % BigInt::from(p);
        u32::try_from(r).expect("residue fits in u32")
    }
}

/// `α(α-1)...(α-i+1)/i!` expanded in monomials.
pub fn binomial_poly(i: u32) -> BinomialPolynomial {
    let alpha = RationalPolynomial::var(1, 0);
    let mut poly = RationalPolynomial::one(1);
    for j in 0..i {
        let factor = alpha.sub(&RationalPolynomial::constant(1, Q::from_integer(BigInt::from(j))));
        poly = poly.mul(&factor).scale(&Q::new(BigInt::one(), BigInt::from(j + 1)));
    }
    BinomialPolynomial { index: i, poly }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VandermondeRow {
    pub index: u32,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VandermondeReport {
    pub max_index: u32,
    pub rows: Vec<VandermondeRow>,
}

impl VandermondeReport {
    pub fn all_hold(&self) -> bool {
        self.rows.iter().all(|r| r.holds)
    }
}

/// `c_i(α+β) = Σ_{a+b=i} c_a(α) c_b(β)` as an identity of polynomials in
/// two variables, for every `i ≤ l`.
pub fn vandermonde_check(l: u32) -> VandermondeReport {
    let sum = RationalPolynomial::var(2, 0).add(&RationalPolynomial::var(2, 1));
    let polys: Vec<BinomialPolynomial> = (0..=l).map(binomial_poly).collect();
    let rows = (0..=l)
        .map(|i| {
            let lhs = polys[i as usize].poly.compose_univariate(&sum);
            let mut rhs = RationalPolynomial::zero(2);
            for a in 0..=i {
                let term = polys[a as usize].poly.embed(0).mul(&polys[(i - a) as usize].poly.embed(1));
                rhs = rhs.add(&term);
            }
            VandermondeRow { index: i, holds: lhs == rhs }
        })
        .collect();
    VandermondeReport { max_index: l, rows }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum InjectivityVerdict {
    Confirmed,
    Refuted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InjectivityReport {
    pub level: u32,
    /// Every `c_i` with `1 ≤ i ≤ l` vanishes at `α = 0`.
    pub vanish_at_zero: bool,
    /// `c_1(α) = α`, so `M(α) ≡ I mod T^2` forces `α = 0`.
    pub first_coefficient_is_alpha: bool,
    /// `M(α) M(β) = M(α+β)` entrywise, from the Vandermonde identity.
    pub homomorphism: bool,
    pub verdict: InjectivityVerdict,
}

/// Over `Q`, the only `α` with `(1+T)^α ≡ 1 mod T^2` is `0`, and then
/// every coefficient vanishes, so `α ↦ M(α)` is injective at level `l ≥ 2`.
pub fn char_zero_injectivity(l: u32) -> InjectivityReport {
    let l = l.max(2);
    let polys: Vec<BinomialPolynomial> = (0..=l).map(binomial_poly).collect();
    let vanish_at_zero = polys[1..].iter().all(|c| c.eval(&Q::zero()).is_zero());
    let first_coefficient_is_alpha = polys[1].poly == RationalPolynomial::var(1, 0);
    let homomorphism = vandermonde_check(l).all_hold();
    let verdict = if vanish_at_zero && first_coefficient_is_alpha && homomorphism {
        InjectivityVerdict::Confirmed
    } else {
        InjectivityVerdict::Refuted
    };
    InjectivityReport { level: l, vanish_at_zero, first_coefficient_is_alpha, homomorphism, verdict }
}
