use std::collections::HashMap;
use std::fmt::Debug;
use std::sync::Arc;

use super::ring::Ring;
use super::spec::RingSpec;
use crate::error::Result;

/// A group element in canonical form.
///
/// The octet encoding is the big-endian 4-byte form of every coordinate, so
/// the derived ordering on the coordinates is the lexicographic order on
/// encodings.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(pub Vec<u32>);

impl Element {
    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn encode(&self) -> Vec<u8> {
        self.0.iter().flat_map(|x| x.to_be_bytes()).collect()
    }
}

/// Multiplication rule of a finite group on canonical elements.
pub trait GroupLaw: Send + Sync + Debug {
    fn identity(&self) -> Element;
    fn multiply(&self, a: &Element, b: &Element) -> Element;
    fn invert(&self, a: &Element) -> Element;
    /// Whether `a` is a canonical element of this group.
    fn is_element(&self, a: &Element) -> bool;

    /// The full element list, when the law can produce it without a
    /// closure computation. Sorted canonically.
    fn direct_elements(&self, _cap: usize) -> Option<Result<Vec<Element>>> {
        None
    }
}

#[derive(Debug, Clone)]
pub struct CyclicLaw {
    pub n: u32,
}

impl GroupLaw for CyclicLaw {
    fn identity(&self) -> Element {
        Element(vec![0])
    }
    fn multiply(&self, a: &Element, b: &Element) -> Element {
        Element(vec![((a.0[0] as u64 + b.0[0] as u64) % self.n as u64) as u32])
    }
    fn invert(&self, a: &Element) -> Element {
        Element(vec![(self.n - a.0[0]) % self.n])
    }
    fn is_element(&self, a: &Element) -> bool {
        a.0.len() == 1 && a.0[0] < self.n
    }
    fn direct_elements(&self, cap: usize) -> Option<Result<Vec<Element>>> {
        if self.n as usize > cap {
            return Some(Err(crate::Error::EnumerationLimit(cap)));
        }
        Some(Ok((0..self.n).map(|r| Element(vec![r])).collect()))
    }
}

/// Direct product; elements are the concatenation of the factor encodings.
#[derive(Debug, Clone)]
pub struct ProductLaw {
    pub factors: Vec<Arc<dyn GroupLaw>>,
    pub widths: Vec<usize>,
}

impl ProductLaw {
    pub fn new(factors: Vec<Arc<dyn GroupLaw>>) -> Self {
        let widths = factors.iter().map(|f| f.identity().0.len()).collect();
        ProductLaw { factors, widths }
    }

    pub fn split(&self, a: &Element) -> Vec<Element> {
        let mut out = Vec::with_capacity(self.factors.len());
        let mut at = 0;
        for w in &self.widths {
            out.push(Element(a.0[at..at + w].to_vec()));
            at += w;
        }
        out
    }

    pub fn join(parts: &[Element]) -> Element {
        Element(parts.iter().flat_map(|p| p.0.iter().copied()).collect())
    }

    pub fn embed(&self, i: usize, x: &Element) -> Element {
        let parts: Vec<Element> = self
            .factors
            .iter()
            .enumerate()
            .map(|(k, f)| if k == i { x.clone() } else { f.identity() })
            .collect();
        Self::join(&parts)
    }
}

impl GroupLaw for ProductLaw {
    fn identity(&self) -> Element {
        Self::join(&self.factors.iter().map(|f| f.identity()).collect::<Vec<_>>())
    }
    fn multiply(&self, a: &Element, b: &Element) -> Element {
        let (xa, xb) = (self.split(a), self.split(b));
        let parts: Vec<Element> = self.factors.iter().zip(xa.iter().zip(&xb)).map(|(f, (x, y))| f.multiply(x, y)).collect();
        Self::join(&parts)
    }
    fn invert(&self, a: &Element) -> Element {
        let parts: Vec<Element> = self.factors.iter().zip(self.split(a)).map(|(f, x)| f.invert(&x)).collect();
        Self::join(&parts)
    }
    fn is_element(&self, a: &Element) -> bool {
        a.0.len() == self.widths.iter().sum::<usize>()
            && self.factors.iter().zip(self.split(a)).all(|(f, x)| f.is_element(&x))
    }
}

/// Which matrices over the ring belong to the group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixKind {
    Special,
    /// Determinant one and congruent to the identity modulo the given
    /// power of the maximal ideal.
    Kernel(u32),
    UpperUnitriangular,
}

/// `n x n` matrices over `Z/m` or `F_p[t]/(t^l)`, stored row-major with each
/// entry occupying `ring.width()` coordinates.
#[derive(Debug, Clone)]
pub struct MatrixLaw {
    pub n: usize,
    pub ring: Ring,
    pub kind: MatrixKind,
    perms: Arc<Vec<(Vec<usize>, bool)>>,
    sub_perms: Arc<Vec<(Vec<usize>, bool)>>,
}

fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let n = used.len();
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out.into_iter()
        .map(|p| {
            let mut inversions = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if p[i] > p[j] {
                        inversions += 1;
                    }
                }
            }
            (p, inversions % 2 == 1)
        })
        .collect()
}

impl MatrixLaw {
    pub fn new(n: usize, ring: RingSpec, kind: MatrixKind) -> Self {
        MatrixLaw {
            n,
            ring: Ring::new(ring),
            kind,
            perms: Arc::new(permutations(n)),
            sub_perms: Arc::new(permutations(n.saturating_sub(1))),
        }
    }

    fn w(&self) -> usize {
        self.ring.width()
    }

    pub fn entry<'a>(&self, a: &'a Element, i: usize, j: usize) -> &'a [u32] {
        let w = self.w();
        let at = (i * self.n + j) * w;
        &a.0[at..at + w]
    }

    pub fn from_entries(&self, entries: &[Vec<u32>]) -> Element {
        Element(entries.iter().flat_map(|e| e.iter().copied()).collect())
    }

    /// `I + s E_ij`
    pub fn elementary(&self, i: usize, j: usize, s: &[u32]) -> Element {
        let mut m = self.identity();
        let w = self.w();
        let at = (i * self.n + j) * w;
        let cur = m.0[at..at + w].to_vec();
        let v = self.ring.add(&cur, s);
        m.0[at..at + w].copy_from_slice(&v);
        m
    }

    pub fn diagonal(&self, d: &[Vec<u32>]) -> Element {
        let mut entries = vec![self.ring.zero(); self.n * self.n];
        for (i, x) in d.iter().enumerate() {
            entries[i * self.n + i] = x.clone();
        }
        self.from_entries(&entries)
    }

    /// Determinant of the submatrix on the given rows and columns.
    fn minor(&self, a: &Element, rows: &[usize], cols: &[usize], perms: &[(Vec<usize>, bool)]) -> Vec<u32> {
        let r = &self.ring;
        let mut acc = r.zero();
        for (perm, odd) in perms {
            let mut term = r.one();
            for (k, &row) in rows.iter().enumerate() {
                term = r.mul(&term, self.entry(a, row, cols[perm[k]]));
                if r.is_zero(&term) {
                    break;
                }
            }
            if *odd {
                acc = r.sub(&acc, &term);
            } else {
                acc = r.add(&acc, &term);
            }
        }
        acc
    }

    pub fn determinant(&self, a: &Element) -> Vec<u32> {
        let all: Vec<usize> = (0..self.n).collect();
        self.minor(a, &all, &all, &self.perms)
    }

    fn in_kind(&self, a: &Element) -> bool {
        let n = self.n;
        match self.kind {
            MatrixKind::Special => true,
            MatrixKind::Kernel(level) => (0..n).all(|i| {
                (0..n).all(|j| {
                    let e = self.entry(a, i, j);
                    let d = if i == j { self.ring.sub(e, &self.ring.one()) } else { e.to_vec() };
                    self.ring.in_ideal_power(&d, level)
                })
            }),
            MatrixKind::UpperUnitriangular => (0..n).all(|i| {
                (0..=i).all(|j| {
                    let e = self.entry(a, i, j);
                    if i == j {
                        e == self.ring.one().as_slice()
                    } else {
                        self.ring.is_zero(e)
                    }
                })
            }),
        }
    }

    /// Direct enumeration of a congruence kernel: every `I + X` with `X`
    /// entrywise in the ideal power, kept when the determinant is one.
    pub fn kernel_elements(&self, level: u32, cap: usize) -> Result<Vec<Element>> {
        let ideal = self.ring.ideal_power_elements(level);
        let nn = self.n * self.n;
        // the kernel has |ideal|^(n^2 - 1) elements
        let expected = (ideal.len() as u128).checked_pow(nn as u32 - 1).unwrap_or(u128::MAX);
        if expected > cap as u128 {
            return Err(crate::Error::EnumerationLimit(cap));
        }
        let candidates = (ideal.len() as u128).saturating_mul(expected);
        if candidates > 1 << 28 {
            return Err(crate::Error::EnumerationLimit(cap));
        }
        let one = self.ring.one();
        let shifted: Vec<Vec<Vec<u32>>> = (0..nn)
            .map(|k| {
                ideal
                    .iter()
                    .map(|x| if k % (self.n + 1) == 0 { self.ring.add(x, &one) } else { x.clone() })
                    .collect()
            })
            .collect();
        let mut out = Vec::with_capacity(expected as usize);
        let mut idx = vec![0usize; nn];
        let q = ideal.len();
        loop {
            let entries: Vec<Vec<u32>> = (0..nn).map(|k| shifted[k][idx[k]].clone()).collect();
            let m = self.from_entries(&entries);
            if self.determinant(&m) == one {
                out.push(m);
            }
            let mut k = nn;
            loop {
                if k == 0 {
                    out.sort();
                    return Ok(out);
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < q {
                    break;
                }
                idx[k] = 0;
            }
        }
    }
}

impl GroupLaw for MatrixLaw {
    fn identity(&self) -> Element {
        let mut entries = vec![self.ring.zero(); self.n * self.n];
        for i in 0..self.n {
            entries[i * self.n + i] = self.ring.one();
        }
        self.from_entries(&entries)
    }

    fn multiply(&self, a: &Element, b: &Element) -> Element {
        let n = self.n;
        match self.ring.spec() {
            RingSpec::Zmod { m } => {
                let m = m as u64;
                let mut out = vec![0u32; n * n];
                for i in 0..n {
                    for k in 0..n {
                        let mut s = 0u64;
                        for j in 0..n {
                            s += a.0[i * n + j] as u64 * b.0[j * n + k] as u64;
                        }
                        out[i * n + k] = (s % m) as u32;
                    }
                }
                Element(out)
            }
            RingSpec::PolyTrunc { .. } => {
                let w = self.w();
                let mut out = vec![0u32; n * n * w];
                for i in 0..n {
                    for k in 0..n {
                        let at = (i * n + k) * w;
                        for j in 0..n {
                            self.ring.mul_add(self.entry(a, i, j), self.entry(b, j, k), &mut out[at..at + w]);
                        }
                    }
                }
                Element(out)
            }
        }
    }

    /// Adjugate; every matrix in these groups has determinant one.
    fn invert(&self, a: &Element) -> Element {
        let n = self.n;
        if n == 2 {
            let r = &self.ring;
            let entries = vec![
                self.entry(a, 1, 1).to_vec(),
                r.neg(self.entry(a, 0, 1)),
                r.neg(self.entry(a, 1, 0)),
                self.entry(a, 0, 0).to_vec(),
            ];
            return self.from_entries(&entries);
        }
        let mut entries = vec![self.ring.zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                let rows: Vec<usize> = (0..n).filter(|r| *r != i).collect();
                let cols: Vec<usize> = (0..n).filter(|c| *c != j).collect();
                let d = self.minor(a, &rows, &cols, &self.sub_perms);
                entries[j * n + i] = if (i + j) % 2 == 1 { self.ring.neg(&d) } else { d };
            }
        }
        self.from_entries(&entries)
    }

    fn is_element(&self, a: &Element) -> bool {
        let w = self.w();
        let modulus = self.ring.coordinate_modulus();
        a.0.len() == self.n * self.n * w
            && a.0.iter().all(|x| *x < modulus)
            && self.determinant(a) == self.ring.one()
            && self.in_kind(a)
    }

    fn direct_elements(&self, cap: usize) -> Option<Result<Vec<Element>>> {
        match self.kind {
            MatrixKind::Kernel(level) => Some(self.kernel_elements(level, cap)),
            _ => None,
        }
    }
}

/// Group law on coset representatives: each coset of a normal subgroup is
/// represented by its canonically smallest member.
#[derive(Debug, Clone)]
pub struct QuotientLaw {
    pub parent: Arc<dyn GroupLaw>,
    pub rep_of: Arc<HashMap<Element, Element>>,
    pub reps: Arc<Vec<Element>>,
}

impl QuotientLaw {
    pub fn project(&self, x: &Element) -> Element {
        self.rep_of[x].clone()
    }
}

impl GroupLaw for QuotientLaw {
    fn identity(&self) -> Element {
        self.project(&self.parent.identity())
    }
    fn multiply(&self, a: &Element, b: &Element) -> Element {
        self.project(&self.parent.multiply(a, b))
    }
    fn invert(&self, a: &Element) -> Element {
        self.project(&self.parent.invert(a))
    }
    fn is_element(&self, a: &Element) -> bool {
        self.rep_of.get(a) == Some(a)
    }
    fn direct_elements(&self, cap: usize) -> Option<Result<Vec<Element>>> {
        if self.reps.len() > cap {
            return Some(Err(crate::Error::EnumerationLimit(cap)));
        }
        Some(Ok(self.reps.as_ref().clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjugate_inverts() {
        for ring in [RingSpec::Zmod { m: 8 }, RingSpec::PolyTrunc { p: 3, l: 2 }] {
            let law = MatrixLaw::new(3, ring, MatrixKind::Special);
            let r = Ring::new(ring);
            let s = r.elementary_scalars();
            let a = law.elementary(0, 1, &s[s.len() - 1]);
            let b = law.elementary(2, 0, &r.from_int(2));
            let c = law.elementary(1, 2, &r.from_int(1));
            let x = law.multiply(&law.multiply(&a, &b), &c);
            assert!(law.is_element(&x));
            assert_eq!(law.multiply(&x, &law.invert(&x)), law.identity());
            assert_eq!(law.multiply(&law.invert(&x), &x), law.identity());
        }
    }

    #[test]
    fn encoding_order_matches_element_order() {
        let a = Element(vec![1, 0x100]);
        let b = Element(vec![1, 0x2]);
        assert!(b < a);
        assert!(b.encode() < a.encode());
        assert_eq!(a.encode(), vec![0, 0, 0, 1, 0, 0, 1, 0]);
    }

    #[test]
    fn kernel_count_small() {
        let law = MatrixLaw::new(2, RingSpec::Zmod { m: 4 }, MatrixKind::Kernel(1));
        let els = law.kernel_elements(1, 1000).unwrap();
        assert_eq!(els.len(), 8);
        assert!(els.iter().all(|e| law.is_element(e)));
    }
}
