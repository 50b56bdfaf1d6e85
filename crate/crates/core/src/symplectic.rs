//! Alternating bilinear forms over F_p.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Fp, Vector};
use crate::matrix::{rank_of, FpMatrix};

/// An alternating form, `(x, y) = xᵀ·gram·y`, with zero diagonal and
/// `gram[i][j] = -gram[j][i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlternatingForm {
    gram: FpMatrix,
}

impl AlternatingForm {
    pub fn new(gram: FpMatrix) -> Result<Self> {
        if gram.rows() != gram.cols() {
            return Err(Error::NotAlternating(format!(
                "Gram matrix is {}x{}",
                gram.rows(),
                gram.cols()
            )));
        }
        let f = gram.field();
        for i in 0..gram.rows() {
            if gram.get(i, i) != 0 {
                return Err(Error::NotAlternating(format!("diagonal entry {i} is nonzero")));
            }
            for j in 0..i {
                if gram.get(i, j) != f.neg(gram.get(j, i)) {
                    return Err(Error::NotAlternating(format!("entries ({i},{j}) and ({j},{i})")));
                }
            }
        }
        Ok(AlternatingForm { gram })
    }

    pub fn zero(field: Fp, dim: usize) -> Self {
        AlternatingForm { gram: FpMatrix::zeros(field, dim, dim) }
    }

    pub fn gram(&self) -> &FpMatrix {
        &self.gram
    }

    pub fn field(&self) -> Fp {
        self.gram.field()
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn eval(&self, x: &[u32], y: &[u32]) -> u32 {
        let gy = self.gram.mul_vec(y).expect("vector length matches form dimension");
        self.field().dot(x, &gy)
    }

    /// Gram matrix of the form restricted to the span of `vs`, in those
    /// coordinates.
    pub fn restrict(&self, vs: &[Vector]) -> AlternatingForm {
        let n = vs.len();
        let mut g = FpMatrix::zeros(self.field(), n, n);
        for i in 0..n {
            for j in 0..n {
                g.set(i, j, self.eval(&vs[i], &vs[j]));
            }
        }
        AlternatingForm { gram: g }
    }

    pub fn rank(&self) -> usize {
        self.gram.rank()
    }

    /// Does `m` preserve the form: `mᵀ·gram·m = gram`?
    pub fn preserved_by(&self, m: &FpMatrix) -> bool {
        m.rows() == self.dim()
            && m.cols() == self.dim()
            && m.transpose()
                .mul(&self.gram)
                .and_then(|t| t.mul(m))
                .map(|t| t == self.gram)
                .unwrap_or(false)
    }

    /// Radical `{x : gram·x = 0}` and its dimension `k`.
    pub fn radical(&self) -> (Vec<Vector>, usize) {
        let basis = self.gram.kernel_basis();
        let k = basis.len();
        (basis, k)
    }

    /// Greedy adapted basis: take the first candidate with a partner of
    /// nonzero pairing, normalize the pair, project the remaining
    /// candidates onto the orthogonal complement of the pair, and repeat.
    /// Leftover candidates span the radical.
    pub fn symplectic_basis(&self) -> SymplecticBasis {
        let f = self.field();
        let mut candidates = FpMatrix::identity(f, self.dim()).row_vecs();
        let mut pairs_a = Vec::new();
        let mut pairs_b = Vec::new();
        loop {
            let found = (0..candidates.len()).find_map(|i| {
                (0..candidates.len())
                    .filter(|&j| j != i)
                    .find_map(|j| {
                        let v = self.eval(&candidates[i], &candidates[j]);
                        (v != 0).then_some((i, j, v))
                    })
            });
            let Some((i, j, v)) = found else { break };
            let x = candidates[i].clone();
            let y = f.scale_vec(f.inv(v), &candidates[j]);
            candidates = candidates
                .into_iter()
                .enumerate()
                .filter(|&(idx, _)| idx != i && idx != j)
                .map(|(_, mut z)| {
                    // z - (z,y) x + (z,x) y
                    let zy = self.eval(&z, &y);
                    let zx = self.eval(&z, &x);
                    f.axpy(&mut z, f.neg(zy), &x);
                    f.axpy(&mut z, zx, &y);
                    z
                })
                .collect();
            pairs_a.push(x);
            pairs_b.push(y);
        }
        pairs_a.extend(candidates);
        SymplecticBasis { a: pairs_a, b: pairs_b }
    }
}

/// Adapted basis: `(a_i, a_j) = (b_i, b_j) = 0`, `(a_i, b_j) = δ_ij`. The
/// first `s` of the `a` vectors are paired with the `b` vectors; the
/// remaining `a` vectors span the radical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticBasis {
    pub a: Vec<Vector>,
    pub b: Vec<Vector>,
}

impl SymplecticBasis {
    pub fn r(&self) -> usize {
        self.a.len()
    }

    pub fn s(&self) -> usize {
        self.b.len()
    }

    /// Radical dimension `r - s`.
    pub fn k(&self) -> usize {
        self.r() - self.s()
    }

    pub fn radical_part(&self) -> &[Vector] {
        &self.a[self.s()..]
    }

    /// Checks the pairing relations and that the vectors form a basis.
    /// Returns a description of the first failure.
    pub fn check(&self, form: &AlternatingForm) -> std::result::Result<(), String> {
        let m = form.dim();
        if self.s() > self.r() || self.r() + self.s() != m {
            return Err(format!("sizes r={} s={} for dimension {m}", self.r(), self.s()));
        }
        for (i, ai) in self.a.iter().enumerate() {
            for (j, aj) in self.a.iter().enumerate() {
                if form.eval(ai, aj) != 0 {
                    return Err(format!("(a_{i}, a_{j}) != 0"));
                }
            }
            for (j, bj) in self.b.iter().enumerate() {
                let want = u32::from(i == j);
                if form.eval(ai, bj) != want {
                    return Err(format!("(a_{i}, b_{j}) != {want}"));
                }
            }
        }
        for (i, bi) in self.b.iter().enumerate() {
            for (j, bj) in self.b.iter().enumerate() {
                if form.eval(bi, bj) != 0 {
                    return Err(format!("(b_{i}, b_{j}) != 0"));
                }
            }
        }
        let all: Vec<Vector> = self.a.iter().chain(&self.b).cloned().collect();
        if rank_of(form.field(), m, &all) != m {
            return Err("vectors do not form a basis".into());
        }
        Ok(())
    }
}

/// F_p^{2g} with `(e_i, e_j) = 1` when `i < j` and `i + j = 2g - 1`
/// (0-indexed). Under the identification `e_i = A_{i+1}` for `i < g` and
/// `e_{2g-1-i} = B_{i+1}`, this is the intersection form of a genus-g
/// surface with `(A_i, B_i) = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardSymplecticSpace {
    g: usize,
    form: AlternatingForm,
}

impl StandardSymplecticSpace {
    pub fn new(p: u32, g: usize) -> Result<Self> {
        let f = Fp::new(p)?;
        let n = 2 * g;
        let mut gram = FpMatrix::zeros(f, n, n);
        for i in 0..n {
            let j = n - 1 - i;
            gram.set(i, j, if i < j { 1 } else { p - 1 });
        }
        Ok(StandardSymplecticSpace { g, form: AlternatingForm { gram } })
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn dim(&self) -> usize {
        2 * self.g
    }

    pub fn field(&self) -> Fp {
        self.form.field()
    }

    pub fn form(&self) -> &AlternatingForm {
        &self.form
    }

    /// Index of the coordinate dual to `A_i` (0-indexed handle `i`).
    pub fn alpha_index(&self, i: usize) -> usize {
        i
    }

    /// Index of the coordinate dual to `B_i`.
    pub fn beta_index(&self, i: usize) -> usize {
        2 * self.g - 1 - i
    }

    /// Extends a form-preserving isomorphism `domain[i] ↦ images[i]`
    /// between subspaces to a matrix preserving the whole form.
    ///
    /// Both sides get a full symplectic basis: an adapted basis of the
    /// subspace (computed once and transported by the map), hyperbolic
    /// partners for its radical vectors, then a symplectic basis of what is
    /// orthogonal to all of that. The result sends one basis to the other.
    pub fn extend_isometry(&self, domain: &[Vector], images: &[Vector]) -> Result<FpMatrix> {
        let f = self.field();
        let n = self.dim();
        if domain.len() != images.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} generators but {} images",
                domain.len(),
                images.len()
            )));
        }
        for v in domain.iter().chain(images) {
            if v.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "vector of length {} in F_p^{n}",
                    v.len()
                )));
            }
            f.check_vec("isometry generator", v)?;
        }

        // Independent subset of the domain, and consistency of the rest.
        let mut kept: Vec<usize> = Vec::new();
        for (i, v) in domain.iter().enumerate() {
            let mut trial: Vec<Vector> = kept.iter().map(|&k| domain[k].clone()).collect();
            trial.push(v.clone());
            if rank_of(f, n, &trial) == trial.len() {
                kept.push(i);
            }
        }
        let w: Vec<Vector> = kept.iter().map(|&i| domain[i].clone()).collect();
        let w_img: Vec<Vector> = kept.iter().map(|&i| images[i].clone()).collect();
        if !w.is_empty() {
            let basis_cols = FpMatrix::from_cols(f, n, &w)?;
            for (v, img) in domain.iter().zip(images) {
                let coef = basis_cols.solve(v)?.expect("vector lies in the span");
                let mut expected = vec![0; n];
                for (c, wi) in coef.iter().zip(&w_img) {
                    f.axpy(&mut expected, *c, wi);
                }
                if &expected != img {
                    return Err(Error::NotWellDefined);
                }
            }
        }
        if rank_of(f, n, &w_img) != w_img.len() {
            return Err(Error::NotInjective);
        }
        for i in 0..w.len() {
            for j in 0..w.len() {
                let before = self.form.eval(&w[i], &w[j]);
                let after = self.form.eval(&w_img[i], &w_img[j]);
                if before != after {
                    return Err(Error::NotIsometry { i, j, before, after });
                }
            }
        }

        let local = self.form.restrict(&w).symplectic_basis();
        let combine = |coef: &Vector, gens: &[Vector]| {
            let mut v = vec![0; n];
            for (c, g) in coef.iter().zip(gens) {
                f.axpy(&mut v, *c, g);
            }
            v
        };
        let transport = |gens: &[Vector]| {
            let pairs: Vec<(Vector, Vector)> = local
                .a
                .iter()
                .zip(&local.b)
                .map(|(a, b)| (combine(a, gens), combine(b, gens)))
                .collect();
            let radical: Vec<Vector> =
                local.radical_part().iter().map(|a| combine(a, gens)).collect();
            (pairs, radical)
        };
        let (dom_pairs, dom_rad) = transport(&w);
        let (img_pairs, img_rad) = transport(&w_img);
        let dom = self.complete(dom_pairs, dom_rad)?;
        let img = self.complete(img_pairs, img_rad)?;

        let flatten = |pairs: &[(Vector, Vector)]| -> Vec<Vector> {
            pairs.iter().flat_map(|(a, b)| [a.clone(), b.clone()]).collect()
        };
        let b_dom = FpMatrix::from_cols(f, n, &flatten(&dom))?;
        let b_img = FpMatrix::from_cols(f, n, &flatten(&img))?;
        let inv = b_dom
            .inverse()
            .ok_or_else(|| Error::Internal("completed basis is singular".into()))?;
        let m = b_img.mul(&inv)?;

        if !self.form.preserved_by(&m) {
            return Err(Error::Internal("extension does not preserve the form".into()));
        }
        for (v, img) in domain.iter().zip(images) {
            if &m.mul_vec(v)? != img {
                return Err(Error::Internal("extension does not restrict to the map".into()));
            }
        }
        Ok(m)
    }

    /// Completes hyperbolic pairs plus isotropic radical vectors to a full
    /// list of `g` hyperbolic pairs.
    fn complete(
        &self,
        mut pairs: Vec<(Vector, Vector)>,
        radical: Vec<Vector>,
    ) -> Result<Vec<(Vector, Vector)>> {
        let f = self.field();
        let n = self.dim();
        let gram = self.form.gram();
        // Row functional x ↦ (v, x).
        let pairing_row = |v: &Vector| -> Vector {
            gram.transpose().mul_vec(v).expect("length matches")
        };
        for (t, a) in radical.iter().enumerate() {
            let mut rows = Vec::new();
            let mut rhs = Vec::new();
            for (x, y) in &pairs {
                rows.push(pairing_row(x));
                rows.push(pairing_row(y));
                rhs.extend([0, 0]);
            }
            for (u, other) in radical.iter().enumerate().skip(t) {
                rows.push(pairing_row(other));
                rhs.push(u32::from(u == t));
            }
            let sys = FpMatrix::from_rows(f, n, &rows)?;
            let b = sys
                .solve(&rhs)?
                .ok_or_else(|| Error::Internal("no hyperbolic partner found".into()))?;
            pairs.push((a.clone(), b));
        }
        let rows: Vec<Vector> =
            pairs.iter().flat_map(|(x, y)| [pairing_row(x), pairing_row(y)]).collect();
        let rest = if rows.is_empty() {
            FpMatrix::identity(f, n).row_vecs()
        } else {
            FpMatrix::from_rows(f, n, &rows)?.kernel_basis()
        };
        let sb = self.form.restrict(&rest).symplectic_basis();
        if sb.k() != 0 {
            return Err(Error::Internal("orthogonal complement is degenerate".into()));
        }
        let lift = |coef: &Vector| {
            let mut v = vec![0; n];
            for (c, g) in coef.iter().zip(&rest) {
                f.axpy(&mut v, *c, g);
            }
            v
        };
        pairs.extend(sb.a.iter().zip(&sb.b).map(|(a, b)| (lift(a), lift(b))));
        Ok(pairs)
    }
}

/// The standard symplectic space of genus `g` over F_p.
pub fn standard_form(p: u32, g: usize) -> Result<StandardSymplecticSpace> {
    StandardSymplecticSpace::new(p, g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::sp_group;
    use crate::limits::Limits;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn fp(p: u32) -> Fp {
        Fp::new(p).unwrap()
    }

    fn form(p: u32, rows: &[&[u32]]) -> AlternatingForm {
        let rows: Vec<Vector> = rows.iter().map(|r| r.to_vec()).collect();
        AlternatingForm::new(FpMatrix::from_rows(fp(p), rows.len(), &rows).unwrap()).unwrap()
    }

    #[test]
    fn standard_forms() {
        assert_eq!(standard_form(2, 1).unwrap().form(), &form(2, &[&[0, 1], &[1, 0]]));
        assert_eq!(standard_form(3, 1).unwrap().form(), &form(3, &[&[0, 1], &[2, 0]]));
        assert_eq!(standard_form(5, 0).unwrap().dim(), 0);
        let s = standard_form(5, 2).unwrap();
        assert_eq!(s.form().eval(&[1, 0, 0, 0], &[0, 0, 0, 1]), 1);
        assert_eq!(s.form().eval(&[0, 1, 0, 0], &[0, 0, 1, 0]), 1);
        assert_eq!(s.form().eval(&[0, 0, 1, 0], &[0, 1, 0, 0]), 4);
        assert!(matches!(standard_form(6, 1), Err(Error::NotPrime(6))));
    }

    #[test]
    fn rejects_non_alternating() {
        let f = fp(2);
        let sym = FpMatrix::from_rows(f, 2, &[vec![1, 1], vec![1, 0]]).unwrap();
        assert!(AlternatingForm::new(sym).is_err());
        let f3 = fp(3);
        let sym3 = FpMatrix::from_rows(f3, 2, &[vec![0, 1], vec![1, 0]]).unwrap();
        assert!(AlternatingForm::new(sym3).is_err());
    }

    #[test]
    fn radical_examples() {
        assert_eq!(standard_form(3, 1).unwrap().form().radical().1, 0);
        assert_eq!(AlternatingForm::zero(fp(5), 4).radical().1, 4);
        let f = form(2, &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 0]]);
        let (basis, k) = f.radical();
        assert_eq!(k, 1);
        assert_eq!(basis, vec![vec![0, 0, 1]]);
    }

    #[test]
    fn adapted_basis_examples() {
        let s = standard_form(3, 2).unwrap();
        let sb = s.form().symplectic_basis();
        assert_eq!((sb.r(), sb.s()), (2, 2));
        assert_eq!(sb.a, vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0]]);
        assert_eq!(sb.b, vec![vec![0, 0, 0, 1], vec![0, 0, 1, 0]]);

        let z = AlternatingForm::zero(fp(2), 3).symplectic_basis();
        assert_eq!((z.r(), z.s()), (3, 0));
        assert_eq!(z.a, FpMatrix::identity(fp(2), 3).row_vecs());

        // Only (e1, e3) = 1 over F_2 in dimension 4.
        let f = form(2, &[&[0, 0, 1, 0], &[0, 0, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 0]]);
        let sb = f.symplectic_basis();
        assert_eq!((sb.s(), sb.k()), (1, 2));
        sb.check(&f).unwrap();
    }

    fn random_form(rng: &mut impl Rng, p: u32, m: usize) -> AlternatingForm {
        let f = fp(p);
        let mut g = FpMatrix::zeros(f, m, m);
        for i in 0..m {
            for j in i + 1..m {
                let v = rng.gen_range(0..p);
                g.set(i, j, v);
                g.set(j, i, f.neg(v));
            }
        }
        AlternatingForm::new(g).unwrap()
    }

    proptest! {
        #[test]
        fn adapted_basis_properties(seed in any::<u64>(), pi in 0usize..3, m in 0usize..=6) {
            let p = [2, 3, 5][pi];
            let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
            let f = random_form(&mut rng, p, m);
            let sb = f.symplectic_basis();
            prop_assert_eq!(sb.check(&f), Ok(()));
            prop_assert_eq!(2 * sb.s(), f.rank());
            let (_, k) = f.radical();
            prop_assert_eq!(k, sb.k());
            prop_assert_eq!(k % 2, m % 2);
            prop_assert_eq!(&f.symplectic_basis(), &sb);
        }
    }

    #[test]
    fn extension_of_full_isometry_is_itself() {
        let s = standard_form(3, 1).unwrap();
        let group = sp_group(3, 1, &Limits::default()).unwrap();
        let m = &group[7];
        let e = FpMatrix::identity(fp(3), 2).row_vecs();
        let images = m.col_vecs();
        assert_eq!(&s.extend_isometry(&e, &images).unwrap(), m);
    }

    #[test]
    fn extension_from_empty_is_identity() {
        for (p, g) in [(2, 1), (3, 2), (5, 3)] {
            let s = standard_form(p, g).unwrap();
            assert_eq!(s.extend_isometry(&[], &[]).unwrap(), FpMatrix::identity(fp(p), 2 * g));
        }
    }

    #[test]
    fn extension_sending_e1_to_e2_over_f2() {
        let s = standard_form(2, 1).unwrap();
        let group = sp_group(2, 1, &Limits::default()).unwrap();
        let witnesses: Vec<_> = group
            .iter()
            .filter(|m| m.mul_vec(&[1, 0]).unwrap() == vec![0, 1])
            .collect();
        assert!(!witnesses.is_empty());
        let m = s.extend_isometry(&[vec![1, 0]], &[vec![0, 1]]).unwrap();
        assert!(group.contains(&m));
        assert_eq!(m.mul_vec(&[1, 0]).unwrap(), vec![0, 1]);
    }

    #[test]
    fn extension_errors() {
        let s = standard_form(3, 2).unwrap();
        // (e1, e4) = 1 but (e1, e2) = 0.
        let err = s
            .extend_isometry(&[vec![1, 0, 0, 0], vec![0, 0, 0, 1]], &[
                vec![1, 0, 0, 0],
                vec![0, 1, 0, 0],
            ])
            .unwrap_err();
        assert!(matches!(err, Error::NotIsometry { .. }));
        let err = s
            .extend_isometry(&[vec![1, 0, 0, 0], vec![0, 1, 0, 0]], &[
                vec![1, 0, 0, 0],
                vec![1, 0, 0, 0],
            ])
            .unwrap_err();
        assert_eq!(err, Error::NotInjective);
        let err = s
            .extend_isometry(&[vec![1, 0, 0, 0], vec![2, 0, 0, 0]], &[
                vec![1, 0, 0, 0],
                vec![0, 1, 0, 0],
            ])
            .unwrap_err();
        assert_eq!(err, Error::NotWellDefined);
    }
}
