use super::spec::RingSpec;

/// Arithmetic in `Z/m` or `F_p[t]/(t^l)` on coefficient slices.
///
/// An element of `Z/m` is one residue; an element of `F_p[t]/(t^l)` is `l`
/// coefficients, lowest degree first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ring {
    spec: RingSpec,
}

impl Ring {
    pub fn new(spec: RingSpec) -> Self {
        Ring { spec }
    }

    pub fn spec(&self) -> RingSpec {
        self.spec
    }

    pub fn width(&self) -> usize {
        match self.spec {
            RingSpec::Zmod { .. } => 1,
            RingSpec::PolyTrunc { l, .. } => l as usize,
        }
    }

    /// Modulus of each stored coordinate.
    pub fn coordinate_modulus(&self) -> u32 {
        match self.spec {
            RingSpec::Zmod { m } => m,
            RingSpec::PolyTrunc { p, .. } => p,
        }
    }

    pub fn size(&self) -> u64 {
        (self.coordinate_modulus() as u64).pow(self.width() as u32)
    }

    pub fn zero(&self) -> Vec<u32> {
        vec![0; self.width()]
    }

    pub fn one(&self) -> Vec<u32> {
        let mut v = self.zero();
        v[0] = 1 % self.coordinate_modulus();
        v
    }

    pub fn from_int(&self, k: i64) -> Vec<u32> {
        let mut v = self.zero();
        v[0] = k.rem_euclid(self.coordinate_modulus() as i64) as u32;
        v
    }

    pub fn is_zero(&self, a: &[u32]) -> bool {
        a.iter().all(|x| *x == 0)
    }

    pub fn add_into(&self, a: &[u32], b: &[u32], out: &mut [u32]) {
        let m = self.coordinate_modulus();
        for i in 0..a.len() {
            out[i] = (a[i] + b[i]) % m;
        }
    }

    pub fn add(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let mut out = self.zero();
        self.add_into(a, b, &mut out);
        out
    }

    pub fn neg(&self, a: &[u32]) -> Vec<u32> {
        let m = self.coordinate_modulus();
        a.iter().map(|x| (m - x) % m).collect()
    }

    pub fn sub(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        self.add(a, &self.neg(b))
    }

    /// `out += a * b`
    #[inline]
    pub fn mul_add(&self, a: &[u32], b: &[u32], out: &mut [u32]) {
        match self.spec {
            RingSpec::Zmod { m } => {
                out[0] = ((out[0] as u64 + a[0] as u64 * b[0] as u64) % m as u64) as u32;
            }
            RingSpec::PolyTrunc { p, l } => {
                let l = l as usize;
                for i in 0..l {
                    if a[i] == 0 {
                        continue;
                    }
                    for j in 0..l - i {
                        out[i + j] = (out[i + j] + a[i] * b[j]) % p;
                    }
                }
            }
        }
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let mut out = self.zero();
        self.mul_add(a, b, &mut out);
        out
    }

    pub fn pow(&self, a: &[u32], mut e: u64) -> Vec<u32> {
        let mut base = a.to_vec();
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

    pub fn is_unit(&self, a: &[u32]) -> bool {
        match self.spec {
            RingSpec::Zmod { m } => num_integer::gcd(a[0], m) == 1,
            RingSpec::PolyTrunc { .. } => a[0] != 0,
        }
    }

    /// Inverse of a unit. The unit group is finite, so `a^(|R^*|-1)` works,
    /// but a direct search is cheaper for the ring sizes used here.
    pub fn inverse(&self, a: &[u32]) -> Option<Vec<u32>> {
        if !self.is_unit(a) {
            return None;
        }
        match self.spec {
            RingSpec::Zmod { m } => (1..m).find(|x| (*x as u64 * a[0] as u64) % m as u64 == 1).map(|x| vec![x]),
            RingSpec::PolyTrunc { p, l } => {
                // Newton-free: solve a * b = 1 degree by degree
                let l = l as usize;
                let inv0 = (1..p).find(|x| (x * a[0]) % p == 1)?;
                let mut b = vec![0u32; l];
                b[0] = inv0;
                for k in 1..l {
                    let mut s = 0u32;
                    for i in 1..=k {
                        s = (s + a[i] * b[k - i]) % p;
                    }
                    b[k] = ((p - s) % p * inv0) % p;
                }
                Some(b)
            }
        }
    }

    /// Generator of the maximal ideal for a local ring.
    pub fn uniformizer(&self) -> Option<Vec<u32>> {
        let (p, _) = self.spec.local_data()?;
        match self.spec {
            RingSpec::Zmod { .. } => Some(vec![p % self.coordinate_modulus()]),
            RingSpec::PolyTrunc { l, .. } => {
                let mut v = self.zero();
                if l > 1 {
                    v[1] = 1;
                }
                Some(v)
            }
        }
    }

    /// Whether `a` lies in the `i`-th power of the maximal ideal.
    pub fn in_ideal_power(&self, a: &[u32], i: u32) -> bool {
        match self.spec {
            RingSpec::Zmod { m } => {
                let (p, _) = self.spec.local_data().expect("local ring");
                let q = p.saturating_pow(i);
                a[0] % q.min(m) == 0 || (q >= m && a[0] == 0)
            }
            RingSpec::PolyTrunc { .. } => a.iter().take(i as usize).all(|x| *x == 0),
        }
    }

    /// All elements of the `i`-th power of the maximal ideal.
    pub fn ideal_power_elements(&self, i: u32) -> Vec<Vec<u32>> {
        match self.spec {
            RingSpec::Zmod { m } => {
                let (p, _) = self.spec.local_data().expect("local ring");
                let q = p.saturating_pow(i).min(m);
                (0..m / q).map(|a| vec![a * q]).collect()
            }
            RingSpec::PolyTrunc { p, l } => {
                let free = l.saturating_sub(i) as usize;
                let count = (p as u64).pow(free as u32);
                (0..count)
                    .map(|mut code| {
                        let mut v = vec![0u32; l as usize];
                        for k in 0..free {
                            v[i as usize + k] = (code % p as u64) as u32;
                            code /= p as u64;
                        }
                        v
                    })
                    .collect()
            }
        }
    }

    /// Additive generators used for elementary matrices: `1` for `Z/m`,
    /// `1, t, ..., t^(l-1)` for truncated polynomials.
    pub fn elementary_scalars(&self) -> Vec<Vec<u32>> {
        match self.spec {
            RingSpec::Zmod { .. } => vec![self.one()],
            RingSpec::PolyTrunc { l, .. } => (0..l as usize)
                .map(|k| {
                    let mut v = self.zero();
                    v[k] = 1;
                    v
                })
                .collect(),
        }
    }

    /// Reduction of an element of this ring into `target`, when the
    /// natural quotient map exists.
    pub fn reduce_to(&self, target: &Ring, a: &[u32]) -> Option<Vec<u32>> {
        match (self.spec, target.spec) {
            (RingSpec::Zmod { m }, RingSpec::Zmod { m: d }) if m % d == 0 => Some(vec![a[0] % d]),
            (RingSpec::PolyTrunc { p, l }, RingSpec::PolyTrunc { p: q, l: k }) if p == q && k <= l => {
                Some(a[..k as usize].to_vec())
            }
            (RingSpec::PolyTrunc { p, .. }, RingSpec::Zmod { m }) if m == p => Some(vec![a[0]]),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncated_inverse() {
        let r = Ring::new(RingSpec::PolyTrunc { p: 2, l: 3 });
        let one_plus_t = vec![1, 1, 0];
        let inv = r.inverse(&one_plus_t).unwrap();
        assert_eq!(inv, vec![1, 1, 1]);
        assert_eq!(r.mul(&one_plus_t, &inv), r.one());
        assert!(r.inverse(&[0, 1, 0]).is_none());
    }

    #[test]
    fn zmod_units_and_ideals() {
        let r = Ring::new(RingSpec::Zmod { m: 8 });
        assert_eq!(r.inverse(&[3]).unwrap(), vec![3]);
        assert!(r.inverse(&[2]).is_none());
        assert!(r.in_ideal_power(&[4], 2));
        assert!(!r.in_ideal_power(&[2], 2));
        assert_eq!(r.ideal_power_elements(1).len(), 4);
        assert_eq!(r.ideal_power_elements(3), vec![vec![0]]);
    }

    #[test]
    fn poly_ideal_powers() {
        let r = Ring::new(RingSpec::PolyTrunc { p: 3, l: 3 });
        assert_eq!(r.ideal_power_elements(1).len(), 9);
        assert_eq!(r.ideal_power_elements(3).len(), 1);
        assert!(r.in_ideal_power(&[0, 0, 2], 2));
        assert!(!r.in_ideal_power(&[0, 1, 0], 2));
    }
}
