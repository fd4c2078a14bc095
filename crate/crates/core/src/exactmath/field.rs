use std::fmt::{self, Debug, Display};
use std::marker::PhantomData;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed};

use crate::error::{Error, Result};

/// Which field a computation runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Prime(u32),
    Rationals,
}

impl FieldSpec {
    pub fn prime(p: u32) -> Result<Self> {
        PrimeField::new(p).map(|f| f.spec())
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            FieldSpec::Prime(p) => *p,
            FieldSpec::Rationals => 0,
        }
    }
}

impl Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "F{p}"),
            FieldSpec::Rationals => write!(f, "Q"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        let digits = t
            .strip_prefix('F')
            .ok_or_else(|| Error::SpecError(format!("unknown field `{s}` (expected F<p> or Q)")))?;
        let p: u32 = digits
            .parse()
            .map_err(|_| Error::SpecError(format!("bad characteristic in `{s}`")))?;
        FieldSpec::prime(p)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A field together with the representation of its elements.
///
/// Implementations are value-like context objects: `PrimeField` carries its
/// characteristic at run time, `NumField<T>` wraps any exact `num_traits::Num`
/// type such as `BigRational`.
pub trait Field: Clone + Debug + PartialEq + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// True when `a` is in canonical form for this field.
    fn contains(&self, a: &Self::Elem) -> bool;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `dst[i] -= c * src[i]`
    fn sub_scaled(&self, dst: &mut [Self::Elem], c: &Self::Elem, src: &[Self::Elem]) {
        for (d, s) in dst.iter_mut().zip(src) {
            if !self.is_zero(s) {
                *d = self.sub(d, &self.mul(c, s));
            }
        }
    }

    fn scale(&self, v: &mut [Self::Elem], c: &Self::Elem) {
        for x in v.iter_mut() {
            *x = self.mul(x, c);
        }
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// The prime field F_p with elements stored as canonical residues in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if p >= 1 << 31 || !is_prime(p as u64) {
            return Err(Error::SpecError(format!("{p} is not a prime below 2^31")));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }
    #[inline]
    fn zero(&self) -> u32 {
        0
    }
    #[inline]
    fn one(&self) -> u32 {
        1 % self.p
    }
    fn from_i64(&self, v: i64) -> u32 {
        self.reduce_i64(v)
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        (s % self.p as u64) as u32
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + self.p as u64 - *b as u64;
        (s % self.p as u64) as u32
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(a, self.p as u64 - 2))
        }
    }
    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn contains(&self, a: &u32) -> bool {
        *a < self.p
    }

    fn sub_scaled(&self, dst: &mut [u32], c: &u32, src: &[u32]) {
        if *c == 0 {
            return;
        }
        let p = self.p as u64;
        let nc = (p - *c as u64) % p;
        if self.p == 2 {
            for (d, s) in dst.iter_mut().zip(src) {
                *d ^= *s;
            }
            return;
        }
        for (d, s) in dst.iter_mut().zip(src) {
            *d = ((*d as u64 + nc * *s as u64) % p) as u32;
        }
    }
}

/// Any exact numeric type from the `num` ecosystem, viewed as a field.
///
/// Only types whose arithmetic is exact and whose non-zero elements are
/// invertible (rationals) give a genuine field.
pub struct NumField<T>(PhantomData<T>);

impl<T> NumField<T> {
    pub const fn new() -> Self {
        NumField(PhantomData)
    }
}

impl<T> Default for NumField<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T> Clone for NumField<T> {
    fn clone(&self) -> Self {
        Self::new()
    }
}

impl<T> Copy for NumField<T> {}

impl<T> PartialEq for NumField<T> {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl<T> Debug for NumField<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumField<{}>", std::any::type_name::<T>())
    }
}

/// Scalars that can back a `NumField`.
pub trait ExactScalar: Num + Clone + Debug + Signed + Send + Sync {
    fn from_int(v: i64) -> Self;
}

impl ExactScalar for BigRational {
    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

impl<T: ExactScalar> Field for NumField<T> {
    type Elem = T;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn zero(&self) -> T {
        T::zero()
    }
    fn one(&self) -> T {
        T::one()
    }
    fn from_i64(&self, v: i64) -> T {
        T::from_int(v)
    }
    fn add(&self, a: &T, b: &T) -> T {
        a.clone() + b.clone()
    }
    fn sub(&self, a: &T, b: &T) -> T {
        a.clone() - b.clone()
    }
    fn mul(&self, a: &T, b: &T) -> T {
        a.clone() * b.clone()
    }
    fn neg(&self, a: &T) -> T {
        -a.clone()
    }
    fn inv(&self, a: &T) -> Option<T> {
        if a.is_zero() {
            None
        } else {
            Some(T::one() / a.clone())
        }
    }
    fn is_zero(&self, a: &T) -> bool {
        a.is_zero()
    }
    fn contains(&self, _: &T) -> bool {
        true
    }
    fn is_one(&self, a: &T) -> bool {
        a.is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Q;

    #[test]
    fn parses_field_flags() {
        assert_eq!("F2".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(2));
        assert_eq!("F13".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(13));
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert!("F4".parse::<FieldSpec>().is_err());
        assert!("R".parse::<FieldSpec>().is_err());
        assert_eq!(FieldSpec::Prime(7).to_string(), "F7");
    }

    #[test]
    fn rejects_composite_characteristic() {
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(2_147_483_647).is_ok());
    }

    #[test]
    fn fermat_holds_exhaustively() {
        for p in [2u32, 3, 5, 7, 11, 13] {
            let f = PrimeField::new(p).unwrap();
            for x in 0..p {
                assert_eq!(f.pow(&x, p as u64), x);
                if x != 0 {
                    assert_eq!(f.mul(&x, &f.inv(&x).unwrap()), 1);
                }
            }
        }
    }

    #[test]
    fn rational_reciprocals() {
        let f = crate::Rationals::new();
        for (a, b) in [(3i64, 7i64), (-5, 12), (1, 1), (22, -6)] {
            let x = Q::new(a.into(), b.into());
            let y = Q::new(b.into(), a.into());
            assert!(f.is_one(&f.mul(&x, &y)));
            assert!(x.denom() > &0.into());
        }
    }

    #[test]
    fn sub_scaled_matches_scalar_ops() {
        let f = PrimeField::new(5).unwrap();
        let mut d = vec![1, 2, 3, 4];
        f.sub_scaled(&mut d, &3, &[4, 4, 0, 1]);
        assert_eq!(d, vec![4, 0, 3, 1]);
        let f2 = PrimeField::new(2).unwrap();
        let mut d = vec![1, 0, 1];
        f2.sub_scaled(&mut d, &1, &[1, 1, 0]);
        assert_eq!(d, vec![0, 1, 1]);
    }
}
