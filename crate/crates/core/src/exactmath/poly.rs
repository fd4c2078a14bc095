use std::collections::BTreeMap;
use std::fmt::{self, Display};


use super::field::ExactScalar;

/// Polynomial in one or two variables with coefficients in an exact scalar
/// type. Exponent pairs index the coefficient table; univariate polynomials
/// keep the second exponent at zero. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial<T> {
    vars: usize,
    terms: BTreeMap<[u32; 2], T>,
}

impl<T: ExactScalar> Polynomial<T> {
    pub fn zero(vars: usize) -> Self {
        assert!(vars == 1 || vars == 2, "only one or two variables are supported");
        Polynomial { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: usize, c: T) -> Self {
        Self::monomial(vars, [0, 0], c)
    }

    pub fn one(vars: usize) -> Self {
        Self::constant(vars, T::one())
    }

    pub fn monomial(vars: usize, exp: [u32; 2], c: T) -> Self {
        let mut p = Self::zero(vars);
        assert!(vars == 2 || exp[1] == 0);
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    /// The `i`-th variable (0 or 1) as a polynomial.
    pub fn var(vars: usize, i: usize) -> Self {
        let mut e = [0, 0];
        e[i] = 1;
        Self::monomial(vars, e, T::one())
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; 2], &T)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: [u32; 2]) -> T {
        self.terms.get(&exp).cloned().unwrap_or_else(T::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e[0] + e[1]).max()
    }

    fn add_term(&mut self, exp: [u32; 2], c: T) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(T::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.vars = self.vars.max(other.vars);
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &T) -> Self {
        let mut out = Self::zero(self.vars);
        for (e, x) in &self.terms {
            out.add_term(*e, x.clone() * c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-T::one()))
    }

    /// Product with every term of total degree above `bound` dropped.
    pub fn mul_truncated(&self, other: &Self, bound: Option<u32>) -> Self {
        let mut out = Self::zero(self.vars.max(other.vars));
        for (ea, a) in &self.terms {
            for (eb, b) in &other.terms {
                let e = [ea[0] + eb[0], ea[1] + eb[1]];
                if bound.is_some_and(|d| e[0] + e[1] > d) {
                    continue;
                }
                out.add_term(e, a.clone() * b.clone());
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.mul_truncated(other, None)
    }

    pub fn eval(&self, x: &T, y: &T) -> T {
        let mut acc = T::zero();
        for (e, c) in &self.terms {
            acc = acc + c.clone() * num_traits::pow(x.clone(), e[0] as usize) * num_traits::pow(y.clone(), e[1] as usize);
        }
        acc
    }

    /// Substitute `x ↦ a` (a polynomial in the target ring) into a univariate polynomial.
    pub fn compose_univariate(&self, a: &Self) -> Self {
        assert_eq!(self.vars, 1);
        let mut out = Self::zero(a.vars);
        let mut power = Self::one(a.vars);
        let max = self.total_degree().unwrap_or(0);
        for k in 0..=max {
            let c = self.coeff([k, 0]);
            if !c.is_zero() {
                out = out.add(&power.scale(&c));
            }
            power = power.mul(a);
        }
        out
    }

    /// Re-read a univariate polynomial as a polynomial in variable `i` of two.
    pub fn embed(&self, i: usize) -> Self {
        assert_eq!(self.vars, 1);
        let mut out = Self::zero(2);
        for (e, c) in &self.terms {
            let mut ne = [0, 0];
            ne[i] = e[0];
            out.add_term(ne, c.clone());
        }
        out
    }
}

/// Product of two polynomials keeping only terms of total degree `≤ bound`.
pub fn truncated_poly_multiply<T: ExactScalar>(a: &Polynomial<T>, b: &Polynomial<T>, bound: u32) -> Polynomial<T> {
    a.mul_truncated(b, Some(bound))
}

impl<T: ExactScalar + Display> Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = if self.vars == 1 { ["a", ""] } else { ["a", "b"] };
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono: Vec<String> = (0..2)
                .filter(|i| e[*i] > 0)
                .map(|i| if e[i] == 1 { names[i].to_string() } else { format!("{}^{}", names[i], e[i]) })
                .collect();
            if mono.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "({c})*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{RationalPolynomial, Q};

    fn q(a: i64, b: i64) -> Q {
        Q::new(a.into(), b.into())
    }

    fn one_plus_t() -> RationalPolynomial {
        RationalPolynomial::one(1).add(&RationalPolynomial::var(1, 0))
    }

    #[test]
    fn truncated_square() {
        let p = truncated_poly_multiply(&one_plus_t(), &one_plus_t(), 1);
        assert_eq!(p.coeff([0, 0]), q(1, 1));
        assert_eq!(p.coeff([1, 0]), q(2, 1));
        assert_eq!(p.total_degree(), Some(1));
    }

    #[test]
    fn fourth_power_binomial() {
        let sq = one_plus_t().mul(&one_plus_t());
        let p = truncated_poly_multiply(&sq, &sq, 4);
        let coeffs: Vec<Q> = (0..=4).map(|k| p.coeff([k, 0])).collect();
        assert_eq!(coeffs, vec![q(1, 1), q(4, 1), q(6, 1), q(4, 1), q(1, 1)]);
    }

    #[test]
    fn product_of_second_binomials() {
        // (a^2 - a)/2 * (b^2 - b)/2 computed by hand with fractions
        let c2a = RationalPolynomial::monomial(2, [2, 0], q(1, 2)).add(&RationalPolynomial::monomial(2, [1, 0], q(-1, 2)));
        let c2b = RationalPolynomial::monomial(2, [0, 2], q(1, 2)).add(&RationalPolynomial::monomial(2, [0, 1], q(-1, 2)));
        let p = truncated_poly_multiply(&c2a, &c2b, 4);
        assert_eq!(p.coeff([2, 2]), q(1, 4));
        assert_eq!(p.coeff([2, 1]), q(-1, 4));
        assert_eq!(p.coeff([1, 1]), q(1, 4));
        let dropped = truncated_poly_multiply(&c2a, &c2b, 3);
        assert_eq!(dropped.coeff([2, 2]), q(0, 1));
    }

    #[test]
    fn no_zero_coefficients_stored() {
        let p = one_plus_t().sub(&one_plus_t());
        assert!(p.is_zero());
    }
}
