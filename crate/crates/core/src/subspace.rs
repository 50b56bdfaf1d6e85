//! Subspaces of F_p^n held by their canonical (rref) basis.

use crate::error::{Error, Result};
use crate::field::{Fp, Vector};
use crate::matrix::FpMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: Fp,
    dim_ambient: usize,
    basis: Vec<Vector>,
}

impl Subspace {
    pub fn span(field: Fp, dim_ambient: usize, gens: &[Vector]) -> Result<Self> {
        for (i, g) in gens.iter().enumerate() {
            if g.len() != dim_ambient {
                return Err(Error::DimensionMismatch(format!(
                    "generator {i} has length {}, ambient dimension is {dim_ambient}",
                    g.len()
                )));
            }
        }
        let r = FpMatrix::from_rows(field, dim_ambient, gens)?.rref();
        let basis = (0..r.rank).map(|i| r.matrix.row(i).to_vec()).collect();
        Ok(Subspace { field, dim_ambient, basis })
    }

    pub fn zero(field: Fp, dim_ambient: usize) -> Self {
        Subspace { field, dim_ambient, basis: Vec::new() }
    }

    pub fn full(field: Fp, dim_ambient: usize) -> Self {
        let basis = FpMatrix::identity(field, dim_ambient).row_vecs();
        Subspace { field, dim_ambient, basis }
    }

    /// Canonical rref basis.
    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn dim_ambient(&self) -> usize {
        self.dim_ambient
    }

    fn compatible(&self, other: &Subspace) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.p(), other.field.p()));
        }
        if self.dim_ambient != other.dim_ambient {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of F_p^{} and F_p^{}",
                self.dim_ambient, other.dim_ambient
            )));
        }
        Ok(())
    }

    pub fn contains_vector(&self, v: &[u32]) -> bool {
        let mut gens = self.basis.clone();
        gens.push(v.to_vec());
        FpMatrix::from_rows(self.field, self.dim_ambient, &gens)
            .map(|m| m.rank() == self.dim())
            .unwrap_or(false)
    }

    /// Does `self` contain `other`?
    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.compatible(other)?;
        Ok(self.sum(other)?.dim() == self.dim())
    }

    pub fn equals(&self, other: &Subspace) -> Result<bool> {
        self.compatible(other)?;
        Ok(self.basis == other.basis)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.compatible(other)?;
        let gens: Vec<Vector> = self.basis.iter().chain(&other.basis).cloned().collect();
        Subspace::span(self.field, self.dim_ambient, &gens)
    }

    /// Intersection via the kernel of `[U | -V]`.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.compatible(other)?;
        let f = self.field;
        let (a, b) = (self.dim(), other.dim());
        if a == 0 || b == 0 {
            return Ok(Subspace::zero(f, self.dim_ambient));
        }
        let mut cols: Vec<Vector> = self.basis.clone();
        cols.extend(other.basis.iter().map(|v| v.iter().map(|&x| f.neg(x)).collect()));
        let m = FpMatrix::from_cols(f, self.dim_ambient, &cols)?;
        let gens: Vec<Vector> = m
            .kernel_basis()
            .iter()
            .map(|coef| {
                let mut v = vec![0; self.dim_ambient];
                for (c, u) in coef[..a].iter().zip(&self.basis) {
                    f.axpy(&mut v, *c, u);
                }
                v
            })
            .collect();
        Subspace::span(f, self.dim_ambient, &gens)
    }

    /// Annihilator in the dual space, as row functionals.
    pub fn annihilator(&self) -> Subspace {
        let ker = if self.basis.is_empty() {
            FpMatrix::identity(self.field, self.dim_ambient).row_vecs()
        } else {
            FpMatrix::from_rows(self.field, self.dim_ambient, &self.basis)
                .expect("basis rows have ambient length")
                .kernel_basis()
        };
        Subspace::span(self.field, self.dim_ambient, &ker).expect("kernel vectors have ambient length")
    }

    /// Extends the basis of `self` to a basis of the ambient space using
    /// standard basis vectors, returning only the added vectors.
    pub fn complement_basis(&self) -> Vec<Vector> {
        let mut current = self.basis.clone();
        let mut added = Vec::new();
        for i in 0..self.dim_ambient {
            let mut e = vec![0; self.dim_ambient];
            e[i] = 1;
            current.push(e.clone());
            let r = FpMatrix::from_rows(self.field, self.dim_ambient, &current)
                .expect("ambient length")
                .rank();
            if r == current.len() {
                added.push(e);
            } else {
                current.pop();
            }
        }
        added
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u32) -> Fp {
        Fp::new(p).unwrap()
    }

    #[test]
    fn equal_and_containment() {
        let f = fp(5);
        let u = Subspace::span(f, 2, &[vec![1, 0]]).unwrap();
        let v = Subspace::span(f, 2, &[vec![1, 0]]).unwrap();
        assert!(u.equals(&v).unwrap());
        let w = Subspace::span(f, 2, &[vec![1, 0], vec![0, 1]]).unwrap();
        assert!(w.contains(&u).unwrap());
        assert!(!u.contains(&w).unwrap());
        assert!(!u.equals(&w).unwrap());
    }

    #[test]
    fn two_generating_sets_of_the_full_plane() {
        let f = fp(2);
        let u = Subspace::span(f, 2, &[vec![1, 0], vec![0, 1]]).unwrap();
        let v = Subspace::span(f, 2, &[vec![1, 1], vec![1, 0]]).unwrap();
        assert!(u.equals(&v).unwrap());
        assert_eq!(v.basis(), &[vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn intersection_and_sum() {
        let f = fp(3);
        let u = Subspace::span(f, 3, &[vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        let v = Subspace::span(f, 3, &[vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        let i = u.intersection(&v).unwrap();
        assert_eq!(i.basis(), &[vec![0, 1, 0]]);
        assert_eq!(u.sum(&v).unwrap().dim(), 3);
        let brute = f
            .all_vectors(3)
            .filter(|x| u.contains_vector(x) && v.contains_vector(x))
            .count();
        assert_eq!(brute, 3usize.pow(i.dim() as u32));
    }

    #[test]
    fn mismatches_are_errors() {
        let u = Subspace::span(fp(3), 2, &[vec![1, 0]]).unwrap();
        let v = Subspace::span(fp(5), 2, &[vec![1, 0]]).unwrap();
        assert!(matches!(u.equals(&v), Err(Error::FieldMismatch(3, 5))));
        let w = Subspace::span(fp(3), 3, &[vec![1, 0, 0]]).unwrap();
        assert!(matches!(u.intersection(&w), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn annihilator_and_complement() {
        let f = fp(3);
        let u = Subspace::span(f, 3, &[vec![1, 1, 0]]).unwrap();
        let ann = u.annihilator();
        assert_eq!(ann.dim(), 2);
        for h in ann.basis() {
            assert_eq!(f.dot(h, &[1, 1, 0]), 0);
        }
        let comp = u.complement_basis();
        assert_eq!(comp.len(), 2);
        let mut all = u.basis().to_vec();
        all.extend(comp);
        assert_eq!(Subspace::span(f, 3, &all).unwrap().dim(), 3);
    }
}
