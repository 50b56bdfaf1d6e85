//! Monodromy description of a Z_p^m action.
//!
//! The quotient surface `S` has genus `g` and `r` branch points. Fix a
//! basis `A_1..A_g, B_1..B_g, X_1..X_r` of `H_1(S - B; Z_p)` with
//! `(A_i, B_j) = δ_ij` and `X_j` the boundary of a small disc around the
//! j-th branch point. The action is recorded by the images `u_i`, `v_i`,
//! `c_j` of these classes in `G = F_p^m`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Fp, Vector};
use crate::matrix::{rank_of, FpMatrix};
use crate::subspace::Subspace;
use crate::symplectic::AlternatingForm;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionData {
    pub p: u32,
    pub m: usize,
    pub g: usize,
    pub alpha_images: Vec<Vector>,
    pub beta_images: Vec<Vector>,
    pub branch_images: Vec<Vector>,
}

impl ActionData {
    /// Builds and validates.
    pub fn new(
        p: u32,
        m: usize,
        alpha_images: Vec<Vector>,
        beta_images: Vec<Vector>,
        branch_images: Vec<Vector>,
    ) -> Result<Self> {
        let a = ActionData { p, m, g: alpha_images.len(), alpha_images, beta_images, branch_images };
        a.validate()?;
        Ok(a)
    }

    pub fn from_json(s: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn r(&self) -> usize {
        self.branch_images.len()
    }

    pub fn field(&self) -> Result<Fp> {
        Fp::new(self.p)
    }

    /// Checks shape, ranges and the three monodromy conditions: nonzero
    /// branch images, zero branch sum, surjectivity.
    pub fn validate(&self) -> Result<()> {
        let f = self.field()?;
        if self.m == 0 {
            return Err(Error::ZeroRank);
        }
        for (name, list) in [("alpha_images", &self.alpha_images), ("beta_images", &self.beta_images)] {
            if list.len() != self.g {
                return Err(Error::DimensionMismatch(format!(
                    "{name}: expected {} vectors (one per handle), got {}",
                    self.g,
                    list.len()
                )));
            }
        }
        for (name, list) in [
            ("alpha_images", &self.alpha_images),
            ("beta_images", &self.beta_images),
            ("branch_images", &self.branch_images),
        ] {
            for (i, v) in list.iter().enumerate() {
                let label = format!("{name}[{i}]");
                if v.len() != self.m {
                    return Err(Error::DimensionMismatch(format!(
                        "{label}: expected length {}, got {}",
                        self.m,
                        v.len()
                    )));
                }
                f.check_vec(&label, v)?;
            }
        }
        if let Some(index) = self.branch_images.iter().position(|c| c.iter().all(|&x| x == 0)) {
            return Err(Error::ZeroBranchImage { index });
        }
        let sum = f.sum_vecs(self.m, &self.branch_images);
        if sum.iter().any(|&x| x != 0) {
            return Err(Error::NonzeroBranchSum { sum });
        }
        let rank = rank_of(f, self.m, &self.all_images());
        if rank != self.m {
            return Err(Error::NotSurjective { rank, m: self.m });
        }
        Ok(())
    }

    pub fn all_images(&self) -> Vec<Vector> {
        self.alpha_images
            .iter()
            .chain(&self.beta_images)
            .chain(&self.branch_images)
            .cloned()
            .collect()
    }

    /// `G_fix`, the span of the branch images.
    pub fn fixed_subgroup(&self) -> Result<Subspace> {
        Subspace::span(self.field()?, self.m, &self.branch_images)
    }

    /// The `m × 2g` matrix of the monodromy on `H_1(S)` in the coordinates
    /// of the standard symplectic space: column `i` is `u_{i+1}`, column
    /// `2g-1-i` is `v_{i+1}`.
    pub fn handle_matrix(&self) -> Result<FpMatrix> {
        let f = self.field()?;
        let n = 2 * self.g;
        let mut cols = vec![Vec::new(); n];
        for i in 0..self.g {
            cols[i] = self.alpha_images[i].clone();
            cols[n - 1 - i] = self.beta_images[i].clone();
        }
        FpMatrix::from_cols(f, self.m, &cols)
    }

    /// Replaces the handle images by `T·M` where `T` is
    /// [`Self::handle_matrix`]; with `M` symplectic this is the effect of a
    /// homeomorphism of the quotient fixing a disc around the branch points.
    pub fn recoordinatize(&self, m: &FpMatrix) -> Result<ActionData> {
        let t = self.handle_matrix()?.mul(m)?;
        let n = 2 * self.g;
        Ok(ActionData {
            alpha_images: (0..self.g).map(|i| t.col(i)).collect(),
            beta_images: (0..self.g).map(|i| t.col(n - 1 - i)).collect(),
            ..self.clone()
        })
    }

    /// Genus of the covering surface:
    /// `1 + p^m (g - 1) + r p^{m-1} (p - 1) / 2`.
    pub fn total_genus(&self) -> Result<u64> {
        self.validate()?;
        let p = self.p as i128;
        let pm = p.pow(self.m as u32);
        let twice = 2 + 2 * pm * (self.g as i128 - 1) + self.r() as i128 * (pm / p) * (p - 1);
        if twice < 0 || twice % 2 != 0 {
            return Err(Error::Internal(format!("non-integral genus 2g = {twice}")));
        }
        u64::try_from(twice / 2).map_err(|e| Error::Internal(e.to_string()))
    }

    /// Canonical basis of `Ann(G_fix) ⊆ G*` and the Gram matrix of the
    /// induced form on it,
    /// `(e, f) = Σ_i e(u_i) f(v_i) - e(v_i) f(u_i)`.
    ///
    /// Functionals in the annihilator kill every branch image, so the
    /// result does not depend on which lifts of the handle classes were
    /// used to record `u_i`, `v_i`.
    pub fn induced_form(&self) -> Result<(Vec<Vector>, AlternatingForm)> {
        self.validate()?;
        let f = self.field()?;
        let ann = self.fixed_subgroup()?.annihilator();
        let basis = ann.basis().to_vec();
        let d = basis.len();
        let mut gram = FpMatrix::zeros(f, d, d);
        let eu: Vec<Vec<u32>> = basis
            .iter()
            .map(|e| self.alpha_images.iter().map(|u| f.dot(e, u)).collect())
            .collect();
        let ev: Vec<Vec<u32>> = basis
            .iter()
            .map(|e| self.beta_images.iter().map(|v| f.dot(e, v)).collect())
            .collect();
        for a in 0..d {
            for b in 0..d {
                let s = f.dot(&eu[a], &ev[b]);
                let t = f.dot(&ev[a], &eu[b]);
                gram.set(a, b, f.sub(s, t));
            }
        }
        Ok((basis, AlternatingForm::new(gram)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(p: u32, m: usize, u: &[&[u32]], v: &[&[u32]], c: &[&[u32]]) -> ActionData {
        let to = |l: &[&[u32]]| l.iter().map(|x| x.to_vec()).collect::<Vec<_>>();
        ActionData { p, m, g: u.len(), alpha_images: to(u), beta_images: to(v), branch_images: to(c) }
    }

    #[test]
    fn validation_examples() {
        assert_eq!(data(2, 1, &[], &[], &[&[1], &[1]]).validate(), Ok(()));
        assert!(matches!(
            data(2, 1, &[], &[], &[&[1]]).validate(),
            Err(Error::NonzeroBranchSum { .. })
        ));
        assert_eq!(
            data(2, 2, &[&[1, 0]], &[&[0, 0]], &[]).validate(),
            Err(Error::NotSurjective { rank: 1, m: 2 })
        );
        assert_eq!(
            data(2, 1, &[], &[], &[&[1], &[0], &[1]]).validate(),
            Err(Error::ZeroBranchImage { index: 1 })
        );
        assert_eq!(data(4, 1, &[], &[], &[&[1], &[3]]).validate(), Err(Error::NotPrime(4)));
        let bad = data(3, 2, &[&[1, 0, 0]], &[&[0, 1]], &[]).validate().unwrap_err();
        assert!(bad.to_string().contains("alpha_images[0]"), "{bad}");
        let bad = data(3, 2, &[&[1, 3]], &[&[0, 1]], &[]).validate().unwrap_err();
        assert!(bad.to_string().contains("alpha_images[0]"), "{bad}");
        let mut short = data(3, 2, &[&[1, 0]], &[&[0, 1]], &[]);
        short.beta_images.clear();
        assert!(short.validate().unwrap_err().to_string().contains("beta_images"));
    }

    #[test]
    fn total_genus_examples() {
        assert_eq!(data(2, 1, &[], &[], &[&[1u32][..]; 6]).total_genus(), Ok(2));
        assert_eq!(data(3, 1, &[], &[], &[&[1u32][..]; 3]).total_genus(), Ok(1));
        assert_eq!(data(2, 1, &[&[1], &[0]], &[&[0], &[0]], &[]).total_genus(), Ok(3));
        assert_eq!(data(2, 1, &[], &[], &[&[1], &[1]]).total_genus(), Ok(0));
        assert_eq!(data(5, 2, &[&[1, 0]], &[&[0, 1]], &[]).total_genus(), Ok(1));
    }

    #[test]
    fn induced_form_examples() {
        for p in [2u32, 3, 5] {
            let a = data(p, 2, &[&[1, 0]], &[&[0, 1]], &[]);
            let (basis, form) = a.induced_form().unwrap();
            assert_eq!(basis, vec![vec![1, 0], vec![0, 1]]);
            assert_eq!(form.gram().row_vecs(), vec![vec![0, 1], vec![p - 1, 0]]);
            assert_eq!(form.radical().1, 0);
        }
        let a = data(3, 2, &[&[1, 0], &[0, 1]], &[&[0, 0], &[0, 0]], &[]);
        let (_, form) = a.induced_form().unwrap();
        assert_eq!(form.rank(), 0);
        assert_eq!(form.radical().1, 2);

        let a = data(2, 2, &[&[1, 0]], &[&[0, 0]], &[&[0, 1], &[0, 1]]);
        let (basis, form) = a.induced_form().unwrap();
        assert_eq!(basis, vec![vec![1, 0]]);
        assert_eq!(form.gram().row_vecs(), vec![vec![0]]);
        assert_eq!(form.radical().1, 1);
    }

    #[test]
    fn induced_form_ignores_branch_twists() {
        let a = data(3, 2, &[&[1, 0]], &[&[0, 0]], &[&[0, 1], &[0, 2]]);
        let b = data(3, 2, &[&[1, 2]], &[&[0, 1]], &[&[0, 1], &[0, 2]]);
        assert_eq!(a.induced_form().unwrap(), b.induced_form().unwrap());
    }

    #[test]
    fn json_shape() {
        let a = data(2, 1, &[], &[], &[&[1], &[1]]);
        let back = ActionData::from_json(&a.to_json()).unwrap();
        assert_eq!(back, a);
        let raw = r#"{"p":3,"m":1,"g":0,"alpha_images":[],"beta_images":[],"branch_images":[[1],[1],[1]]}"#;
        assert_eq!(ActionData::from_json(raw).unwrap().r(), 3);
        assert!(ActionData::from_json(r#"{"p":3,"m":1}"#).is_err());
    }
}
