use super::echelon::{span, SubspaceBasis};
use super::field::Field;
use crate::error::{Error, Result};

type SparseRow<E> = Vec<(usize, E)>;

/// Row reduction of sparse rows into a (non-reduced) echelon form, for
/// null spaces of large sparse systems with few solutions.
///
/// Each stored row is scaled so its leading entry is one; rows are never
/// back-substituted, which keeps fill-in low.
#[derive(Debug, Clone)]
pub struct SparseEliminator<F: Field> {
    field: F,
    cols: usize,
    pivot_rows: Vec<Option<SparseRow<F::Elem>>>,
    rank: usize,
}

impl<F: Field> SparseEliminator<F> {
    pub fn new(field: F, cols: usize) -> Self {
        SparseEliminator { field, cols, pivot_rows: vec![None; cols], rank: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    fn normalize(&self, entries: &[(usize, F::Elem)]) -> Result<SparseRow<F::Elem>> {
        let f = &self.field;
        let mut v: SparseRow<F::Elem> = entries.to_vec();
        if let Some((c, _)) = v.iter().find(|(c, _)| *c >= self.cols) {
            return Err(Error::DimensionMismatch { expected: self.cols, found: c + 1 });
        }
        v.sort_by_key(|(c, _)| *c);
        let mut out: SparseRow<F::Elem> = Vec::with_capacity(v.len());
        for (c, x) in v {
            match out.last_mut() {
                Some((lc, lx)) if *lc == c => *lx = f.add(lx, &x),
                _ => out.push((c, x)),
            }
        }
        out.retain(|(_, x)| !f.is_zero(x));
        Ok(out)
    }

    /// `v - a * row`, both sorted by column.
    fn sub_scaled(&self, v: &[(usize, F::Elem)], a: &F::Elem, row: &[(usize, F::Elem)]) -> SparseRow<F::Elem> {
        let f = &self.field;
        let mut out = Vec::with_capacity(v.len() + row.len());
        let (mut i, mut j) = (0, 0);
        while i < v.len() || j < row.len() {
            let take_v = j == row.len() || (i < v.len() && v[i].0 < row[j].0);
            let take_r = i == v.len() || (j < row.len() && row[j].0 < v[i].0);
            if take_v {
                out.push(v[i].clone());
                i += 1;
            } else if take_r {
                out.push((row[j].0, f.neg(&f.mul(a, &row[j].1))));
                j += 1;
            } else {
                let x = f.sub(&v[i].1, &f.mul(a, &row[j].1));
                if !f.is_zero(&x) {
                    out.push((v[i].0, x));
                }
                i += 1;
                j += 1;
            }
        }
        out
    }

    /// Adds a row given as `(column, value)` pairs; returns whether the rank grew.
    pub fn push(&mut self, entries: &[(usize, F::Elem)]) -> Result<bool> {
        let mut v = self.normalize(entries)?;
        while let Some((c, a)) = v.first().cloned() {
            match &self.pivot_rows[c] {
                Some(row) => v = self.sub_scaled(&v, &a, row),
                None => {
                    let inv = self.field.inv(&a).expect("non-zero element of a field is invertible");
                    for (_, x) in v.iter_mut() {
                        *x = self.field.mul(x, &inv);
                    }
                    self.pivot_rows[c] = Some(v);
                    self.rank += 1;
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    /// Reduced echelon basis of the solutions of all pushed rows.
    pub fn nullspace(&self) -> Result<SubspaceBasis<F>> {
        let f = &self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| self.pivot_rows[*c].is_none()).collect();
        let mut solutions = Vec::with_capacity(free.len());
        for &j in &free {
            let mut x = vec![f.zero(); self.cols];
            x[j] = f.one();
            for c in (0..self.cols).rev() {
                if let Some(row) = &self.pivot_rows[c] {
                    let mut acc = f.zero();
                    for (k, a) in &row[1..] {
                        if !f.is_zero(&x[*k]) {
                            acc = f.add(&acc, &f.mul(a, &x[*k]));
                        }
                    }
                    x[c] = f.neg(&acc);
                }
            }
            solutions.push(x);
        }
        span(f.clone(), self.cols, solutions)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{nullspace, DenseMatrix, PrimeField};

    #[test]
    fn agrees_with_dense_nullspace() {
        let f = PrimeField::new(5).unwrap();
        let m = DenseMatrix::from_i64(f, 3, 5, &[1, 2, 0, 0, 3, 0, 1, 4, 0, 0, 2, 4, 4, 1, 1]).unwrap();
        let mut s = SparseEliminator::new(f, 5);
        for r in 0..3 {
            let row: Vec<(usize, u32)> = m.row(r).iter().enumerate().map(|(c, x)| (c, *x)).collect();
            s.push(&row).unwrap();
        }
        assert_eq!(s.rank(), m.rank());
        assert_eq!(s.nullspace().unwrap(), nullspace(&m, f).unwrap());
    }

    #[test]
    fn repeated_columns_are_summed() {
        let f = PrimeField::new(2).unwrap();
        let mut s = SparseEliminator::new(f, 3);
        assert!(!s.push(&[(1, 1), (1, 1)]).unwrap());
        assert!(s.push(&[(2, 1), (0, 1)]).unwrap());
        assert_eq!(s.nullspace().unwrap().dim(), 2);
        assert!(s.push(&[(7, 1)]).is_err());
    }
}
