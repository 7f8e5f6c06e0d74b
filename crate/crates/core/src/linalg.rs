//! Exact linear algebra over `Q(ζ_N)`: an incrementally built subspace in
//! reduced row echelon form.

use std::sync::Arc;

use crate::cyclo::{CycloField, CycloNum, FieldExt};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Subspace {
    field: Arc<CycloField>,
    len: usize,
    /// rows with a leading 1 at `pivots[i]`, zero in every other pivot column
    rows: Vec<Vec<CycloNum>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(field: &Arc<CycloField>, len: usize) -> Subspace {
        Subspace { field: field.clone(), len, rows: Vec::new(), pivots: Vec::new() }
    }

    /// The whole ambient space, with the standard basis.
    pub fn full(field: &Arc<CycloField>, len: usize) -> Subspace {
        let rows = (0..len).map(|i| (0..len).map(|j| if i == j { field.one() } else { field.zero() }).collect()).collect();
        Subspace { field: field.clone(), len, rows, pivots: (0..len).collect() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.len
    }

    pub fn basis(&self) -> &[Vec<CycloNum>] {
        &self.rows
    }

    fn reduce(&self, v: &[CycloNum]) -> Result<Vec<CycloNum>> {
        if v.len() != self.len {
            return Err(Error::Precondition(format!("vector of length {} in a space of length {}", v.len(), self.len)));
        }
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = &*x - &(&c * r);
                }
            }
        }
        Ok(v)
    }

    pub fn contains(&self, v: &[CycloNum]) -> Result<bool> {
        Ok(self.reduce(v)?.iter().all(|x| x.is_zero()))
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[CycloNum]) -> Result<bool> {
        let mut v = self.reduce(v)?;
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return Ok(false);
        };
        let inv = v[p].inv()?;
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let c = row[p].clone();
            for (x, r) in row.iter_mut().zip(&v) {
                if !r.is_zero() {
                    *x = &*x - &(&c * r);
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        Ok(true)
    }

    pub fn zero_vector(&self) -> Vec<CycloNum> {
        vec![self.field.zero(); self.len]
    }
}

/// Rank of a list of equal-length vectors.
pub fn rank(field: &Arc<CycloField>, len: usize, vectors: &[Vec<CycloNum>]) -> Result<usize> {
    let mut s = Subspace::new(field, len);
    for v in vectors {
        s.insert(v)?;
    }
    Ok(s.dim())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn span_membership() {
        let f = CycloField::new(4);
        let i = f.zeta(1);
        let one = f.one();
        let zero = f.zero();
        let mut s = Subspace::new(&f, 3);
        assert!(s.insert(&[one.clone(), i.clone(), zero.clone()]).unwrap());
        assert!(!s.insert(&[i.clone(), &i * &i, zero.clone()]).unwrap());
        assert!(s.contains(&[i.clone(), f.from_int(-1), zero.clone()]).unwrap());
        assert!(!s.contains(&[one.clone(), one.clone(), zero.clone()]).unwrap());
        assert!(s.insert(&[zero.clone(), zero.clone(), one.clone()]).unwrap());
        assert_eq!(s.dim(), 2);
        assert_eq!(rank(&f, 3, s.basis()).unwrap(), 2);
    }
}
