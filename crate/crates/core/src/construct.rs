//! Witness actions built from invariants.

use crate::action::ActionData;
use crate::error::{Error, Result};
use crate::field::{Fp, Vector};
use crate::subspace::Subspace;

fn inadmissible(condition: &str, detail: String) -> Error {
    Error::Inadmissible { condition: condition.to_string(), detail }
}

/// Builds an action with quotient genus `g`, branch data `multiset` and an
/// induced form of radical dimension `k`.
///
/// Multiset vectors shorter than `m` are zero-padded, i.e. read inside the
/// first coordinates of F_p^m. With `n = dim span(multiset)`, the handles
/// carry `(m - n - k) / 2` hyperbolic pairs of a complement of the span,
/// then the `k` remaining complement vectors on further `A` handles, and
/// zeros on the rest.
pub fn construct_action(p: u32, m: usize, k: usize, g: usize, multiset: &[Vector]) -> Result<ActionData> {
    let f = Fp::new(p)?;
    if m == 0 {
        return Err(Error::ZeroRank);
    }
    let mut items = Vec::with_capacity(multiset.len());
    for (i, c) in multiset.iter().enumerate() {
        if c.len() > m {
            return Err(Error::DimensionMismatch(format!(
                "multiset element {i} has length {}, more than m = {m}",
                c.len()
            )));
        }
        f.check_vec(&format!("multiset[{i}]"), c)?;
        let mut v = c.clone();
        v.resize(m, 0);
        if v.iter().all(|&x| x == 0) {
            return Err(Error::ZeroBranchImage { index: i });
        }
        items.push(v);
    }
    let sum = f.sum_vecs(m, &items);
    if sum.iter().any(|&x| x != 0) {
        return Err(Error::NonzeroBranchSum { sum });
    }
    let span = Subspace::span(f, m, &items)?;
    let n = span.dim();
    let r = items.len();
    if r < n {
        return Err(inadmissible("r >= n", format!("r = {r}, n = {n}")));
    }
    let free = m - n;
    if k > free {
        return Err(inadmissible("k <= m-n", format!("k = {k}, m-n = {free}")));
    }
    if !(free - k).is_multiple_of(2) {
        return Err(inadmissible("k = (m-n) mod 2", format!("k = {k}, m-n = {free}")));
    }
    let need = (free + k) / 2;
    if g < need {
        return Err(inadmissible("g >= (m-n+k)/2", format!("g = {g}, (m-n+k)/2 = {need}")));
    }

    let comp = span.complement_basis();
    debug_assert_eq!(comp.len(), free);
    let pairs = (free - k) / 2;
    let zero = vec![0u32; m];
    let mut alpha = vec![zero.clone(); g];
    let mut beta = vec![zero; g];
    for i in 0..pairs {
        alpha[i] = comp[2 * i].clone();
        beta[i] = comp[2 * i + 1].clone();
    }
    for j in 0..k {
        alpha[pairs + j] = comp[2 * pairs + j].clone();
    }
    ActionData::new(p, m, alpha, beta, items)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariant::weak_invariant;

    #[test]
    fn examples() {
        let a = construct_action(3, 1, 0, 0, &[vec![1], vec![1], vec![1]]).unwrap();
        assert_eq!(a.total_genus(), Ok(1));

        let a = construct_action(2, 2, 0, 1, &[]).unwrap();
        assert_eq!((a.alpha_images[0].clone(), a.beta_images[0].clone()), (vec![1, 0], vec![0, 1]));
        assert_eq!(a.induced_form().unwrap().1.radical().1, 0);

        let err = construct_action(2, 3, 1, 1, &[]).unwrap_err();
        assert_eq!(err.to_string(), "g >= (m-n+k)/2 violated (g = 1, (m-n+k)/2 = 2)");
    }

    #[test]
    fn violations_are_named() {
        let cond = |e: Error| match e {
            Error::Inadmissible { condition, .. } => condition,
            other => panic!("unexpected {other:?}"),
        };
        assert_eq!(cond(construct_action(3, 2, 2, 5, &[vec![1], vec![2]]).unwrap_err()), "k <= m-n");
        assert_eq!(cond(construct_action(3, 3, 1, 5, &[vec![1], vec![2]]).unwrap_err()), "k = (m-n) mod 2");
        assert!(matches!(
            construct_action(3, 2, 1, 5, &[vec![1]]),
            Err(Error::NonzeroBranchSum { .. })
        ));
        assert!(matches!(
            construct_action(3, 2, 1, 5, &[vec![0, 0]]),
            Err(Error::ZeroBranchImage { index: 0 })
        ));
        assert!(matches!(construct_action(3, 1, 0, 1, &[vec![1, 2]]), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn embedded_multiset_keeps_its_class() {
        let c = vec![vec![1, 0], vec![0, 1], vec![2, 2]];
        let a = construct_action(3, 3, 1, 2, &c).unwrap();
        let w = weak_invariant(&a).unwrap();
        assert_eq!((w.k, w.g, w.n, w.r), (1, 2, 2, 3));
        assert_eq!(a.induced_form().unwrap().1.radical().1, 1);
    }
}
