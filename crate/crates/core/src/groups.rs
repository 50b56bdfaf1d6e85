//! Finite matrix groups materialized at desk scale: the symplectic group of
//! the standard form, the general linear group, and the subgroup generated
//! by reductions of integral symplectic transvections.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use crate::error::Result;
use crate::field::{Fp, Vector};
use crate::limits::Limits;
use crate::matrix::{rank_of, FpMatrix};
use crate::symplectic::StandardSymplecticSpace;

/// `p^{g²} ∏_{i=1..g} (p^{2i} - 1)`, used only to guard enumeration.
pub fn sp_order_formula(p: u32, g: usize) -> u128 {
    let p = p as u128;
    let mut order = p.saturating_pow((g * g) as u32);
    for i in 1..=g {
        order = order.saturating_mul(p.saturating_pow(2 * i as u32) - 1);
    }
    order
}

/// `∏_{i=0..n-1} (p^n - p^i)`, used only to guard enumeration.
pub fn gl_order_formula(p: u32, n: usize) -> u128 {
    let p = p as u128;
    let pn = p.saturating_pow(n as u32);
    (0..n).fold(1u128, |acc, i| acc.saturating_mul(pn - p.pow(i as u32)))
}

/// Every matrix preserving the standard form of genus `g`, found by
/// column-by-column backtracking over all of F_p^{2g}: column `j` is kept
/// only if its pairings with the earlier columns match those of `e_j`.
pub fn sp_group(p: u32, g: usize, limits: &Limits) -> Result<Vec<FpMatrix>> {
    let space = StandardSymplecticSpace::new(p, g)?;
    Limits::check("symplectic group order", sp_order_formula(p, g), limits.max_group_order)?;
    let f = space.field();
    let n = space.dim();
    let form = space.form();
    let candidates: Vec<Vector> = f.all_vectors(n).filter(|v| v.iter().any(|&x| x != 0)).collect();
    let target = |i: usize, j: usize| {
        let mut ei = vec![0; n];
        let mut ej = vec![0; n];
        ei[i] = 1;
        ej[j] = 1;
        form.eval(&ei, &ej)
    };
    let mut out = Vec::new();
    let mut cols: Vec<Vector> = Vec::with_capacity(n);
    fn rec(
        cols: &mut Vec<Vector>,
        n: usize,
        candidates: &[Vector],
        fits: &dyn Fn(&[Vector], &Vector) -> bool,
        out: &mut Vec<Vector>,
    ) {
        if cols.len() == n {
            out.push(cols.iter().flatten().copied().collect());
            return;
        }
        for c in candidates {
            if fits(cols, c) {
                cols.push(c.clone());
                rec(cols, n, candidates, fits, out);
                cols.pop();
            }
        }
    }
    let fits = |prev: &[Vector], c: &Vector| {
        let j = prev.len();
        prev.iter().enumerate().all(|(i, v)| form.eval(v, c) == target(i, j))
    };
    let mut flat = Vec::new();
    if n == 0 {
        flat.push(Vec::new());
    } else {
        rec(&mut cols, n, &candidates, &fits, &mut flat);
    }
    for colmajor in flat {
        // `colmajor` holds columns back to back; transpose into row-major.
        let m = FpMatrix::new(f, n, n, colmajor)?.transpose();
        out.push(m);
    }
    Ok(out)
}

/// Counts form-preserving matrices by testing every one of the `p^{4g²}`
/// matrices. Independent of [`sp_group`].
pub fn sp_order_by_filter(p: u32, g: usize, limits: &Limits) -> Result<u64> {
    let space = StandardSymplecticSpace::new(p, g)?;
    let n = space.dim();
    let total = (p as u128).saturating_pow((n * n) as u32);
    Limits::check("matrices to filter", total, limits.max_candidates)?;
    let f = space.field();
    let count = f
        .all_vectors(n * n)
        .filter(|data| {
            let m = FpMatrix::new(f, n, n, data.clone()).expect("entries reduced");
            space.form().preserved_by(&m)
        })
        .count();
    Ok(count as u64)
}

/// Every invertible `n×n` matrix over F_p, by backtracking on columns
/// outside the span of the earlier ones.
pub fn gl_group(p: u32, n: usize, limits: &Limits) -> Result<Vec<FpMatrix>> {
    let f = Fp::new(p)?;
    Limits::check("general linear group order", gl_order_formula(p, n), limits.max_group_order)?;
    let candidates: Vec<Vector> = f.all_vectors(n).filter(|v| v.iter().any(|&x| x != 0)).collect();
    let mut out = Vec::new();
    let mut cols: Vec<Vector> = Vec::new();
    fn rec(f: Fp, n: usize, cols: &mut Vec<Vector>, cands: &[Vector], out: &mut Vec<FpMatrix>) {
        if cols.len() == n {
            out.push(FpMatrix::from_cols(f, n, cols).expect("columns have length n"));
            return;
        }
        for c in cands {
            cols.push(c.clone());
            if rank_of(f, n, cols) == cols.len() {
                rec(f, n, cols, cands, out);
            }
            cols.pop();
        }
    }
    rec(f, n, &mut cols, &candidates, &mut out);
    Ok(out)
}

/// Integral symplectic transvections `x ↦ x + (v, x) v` for `v` among the
/// basis vectors `e_i` and the sums and differences `e_i ± e_j`, reduced
/// mod p.
pub fn integral_symplectic_generators(p: u32, g: usize) -> Result<Vec<FpMatrix>> {
    let space = StandardSymplecticSpace::new(p, g)?;
    let n = space.dim();
    let mut dirs: Vec<Vec<i64>> = Vec::new();
    for i in 0..n {
        let mut v = vec![0i64; n];
        v[i] = 1;
        dirs.push(v);
        for j in i + 1..n {
            for sign in [1i64, -1] {
                let mut v = vec![0i64; n];
                v[i] = 1;
                v[j] = sign;
                dirs.push(v);
            }
        }
    }
    // Integral Gram matrix of the standard form.
    let omega = |i: usize, j: usize| -> i64 {
        if i + j + 1 == n {
            if i < j {
                1
            } else {
                -1
            }
        } else {
            0
        }
    };
    let f = space.field();
    dirs.iter()
        .map(|v| {
            // T = I + v·(vᵀΩ)
            let row: Vec<i64> = (0..n).map(|j| (0..n).map(|i| v[i] * omega(i, j)).sum()).collect();
            let mut entries = vec![0i64; n * n];
            for a in 0..n {
                for b in 0..n {
                    entries[a * n + b] = i64::from(a == b) + v[a] * row[b];
                }
            }
            FpMatrix::from_signed(f, n, n, &entries)
        })
        .collect()
}

/// Breadth-first closure of a generating set under multiplication.
pub fn closure(field: Fp, n: usize, gens: &[FpMatrix], limit: u128) -> Result<HashSet<FpMatrix>> {
    let id = FpMatrix::identity(field, n);
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for gen in gens {
            let y = x.mul(gen)?;
            if seen.insert(y.clone()) {
                Limits::check("generated group order", seen.len() as u128, limit)?;
                queue.push_back(y);
            }
        }
    }
    Ok(seen)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SurjectivityReport {
    pub ok: bool,
    pub generated_order: u64,
    pub full_order: u64,
}

/// Compares the group generated by mod-p reductions of integral symplectic
/// transvections with the full symplectic group over F_p, counted by
/// exhaustive search.
pub fn verify_reduction_surjectivity(p: u32, g: usize, limits: &Limits) -> Result<SurjectivityReport> {
    let full = sp_group(p, g, limits)?;
    let gens = integral_symplectic_generators(p, g)?;
    let space = StandardSymplecticSpace::new(p, g)?;
    let generated = closure(space.field(), space.dim(), &gens, limits.max_group_order)?;
    let full_set: HashSet<FpMatrix> = full.iter().cloned().collect();
    let ok = generated.len() == full.len() && generated.iter().all(|m| full_set.contains(m));
    Ok(SurjectivityReport {
        ok,
        generated_order: generated.len() as u64,
        full_order: full.len() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn symplectic_orders_match_exhaustive_filter() {
        let limits = Limits::default();
        for (p, g, want) in [(2, 1, 6u64), (3, 1, 24), (2, 2, 720)] {
            assert_eq!(sp_order_by_filter(p, g, &limits).unwrap(), want);
            assert_eq!(sp_group(p, g, &limits).unwrap().len() as u64, want);
            assert_eq!(sp_order_formula(p, g), want as u128);
        }
        assert_eq!(sp_group(7, 0, &limits).unwrap().len(), 1);
    }

    #[test]
    fn symplectic_group_is_a_group() {
        let limits = Limits::default();
        for (p, g) in [(2, 1), (3, 1), (2, 2)] {
            let space = StandardSymplecticSpace::new(p, g).unwrap();
            let group = sp_group(p, g, &limits).unwrap();
            let set: HashSet<&FpMatrix> = group.iter().collect();
            assert_eq!(set.len(), group.len());
            for (i, a) in group.iter().enumerate().step_by(7) {
                assert!(space.form().preserved_by(a));
                assert!(set.contains(&a.inverse().unwrap()));
                for b in group.iter().skip(i % 5).step_by(11) {
                    assert!(set.contains(&a.mul(b).unwrap()));
                }
            }
        }
    }

    #[test]
    fn general_linear_orders() {
        let limits = Limits::default();
        for (p, n, want) in [(2, 1, 1usize), (3, 1, 2), (2, 2, 6), (3, 2, 48), (2, 3, 168)] {
            let group = gl_group(p, n, &limits).unwrap();
            assert_eq!(group.len(), want);
            assert_eq!(gl_order_formula(p, n), want as u128);
            assert!(group.iter().all(FpMatrix::is_invertible));
        }
        assert_eq!(gl_group(5, 0, &limits).unwrap().len(), 1);
    }

    #[test]
    fn transvections_preserve_the_form() {
        for (p, g) in [(2, 1), (3, 2), (5, 3)] {
            let space = StandardSymplecticSpace::new(p, g).unwrap();
            for t in integral_symplectic_generators(p, g).unwrap() {
                assert!(space.form().preserved_by(&t));
            }
        }
    }

    #[test]
    fn surjectivity_small_cases() {
        let limits = Limits::default();
        for (p, g, order) in [(2, 1, 6), (3, 1, 24), (2, 2, 720)] {
            let r = verify_reduction_surjectivity(p, g, &limits).unwrap();
            assert_eq!(r, SurjectivityReport { ok: true, generated_order: order, full_order: order });
        }
    }

    #[test]
    fn guards_refuse_large_instances() {
        let err = sp_group(3, 3, &Limits::default()).unwrap_err();
        assert!(matches!(err, Error::TooLarge { .. }));
        assert!(verify_reduction_surjectivity(5, 3, &Limits::default()).is_err());
    }
}
