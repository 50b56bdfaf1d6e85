//! Listing weak equivalence classes.

use std::collections::BTreeSet;

use crate::canonical::canonical_multiset;
use crate::error::Result;
use crate::field::{Fp, Vector};
use crate::invariant::WeakInvariant;
use crate::limits::Limits;
use crate::matrix::rank_of;

/// Admissible radical dimensions `k` for the induced form on a free
/// part of rank `free` over a quotient of genus `g`: `k <= free`,
/// `k ≡ free (mod 2)` and `2g >= free + k`.
pub fn admissible_k(free: usize, g: usize) -> Vec<usize> {
    (free % 2..=free).step_by(2).filter(|&k| 2 * g >= free + k).collect()
}

/// Weak classes of fixed point free actions of Z_p^m over a genus-g
/// quotient, as the list of radical dimensions. Independent of p.
pub fn enumerate_free_classes(m: usize, g: usize) -> Vec<usize> {
    admissible_k(m, g)
}

/// Canonical representatives of the Aut-orbits of r-element multisets of
/// nonzero vectors of F_p^n that sum to zero and span F_p^n.
pub fn multiset_classes(field: Fp, n: usize, r: usize) -> Result<Vec<Vec<Vector>>> {
    if n == 0 {
        return Ok(if r == 0 { vec![Vec::new()] } else { Vec::new() });
    }
    if r < 2 {
        return Ok(Vec::new());
    }
    let nonzero: Vec<Vector> = field.all_vectors(n).skip(1).collect();
    let mut found = BTreeSet::new();
    let mut idx = vec![0usize; r - 1];
    // Non-decreasing choices for the first r-1 entries; the last entry is
    // forced by the zero-sum condition and must not precede them.
    loop {
        let partial: Vec<Vector> = idx.iter().map(|&i| nonzero[i].clone()).collect();
        let s = field.sum_vecs(n, &partial);
        let last: Vector = s.iter().map(|&x| field.neg(x)).collect();
        if last.iter().any(|&x| x != 0) && &last >= partial.last().expect("r >= 2") {
            let mut items = partial;
            items.push(last);
            if rank_of(field, n, &items) == n {
                found.insert(canonical_multiset(field, n, &items)?.1);
            }
        }
        // Advance the non-decreasing index tuple.
        let mut pos = r - 1;
        loop {
            if pos == 0 {
                return Ok(found.into_iter().collect());
            }
            pos -= 1;
            if idx[pos] + 1 < nonzero.len() {
                let v = idx[pos] + 1;
                for slot in &mut idx[pos..] {
                    *slot = v;
                }
                break;
            }
        }
    }
}

/// Every weak class of Z_p^m actions with quotient genus `g` and at most
/// `r_max` branch points, sorted.
pub fn enumerate_weak_classes(
    p: u32,
    m: usize,
    g: usize,
    r_max: usize,
    limits: &Limits,
) -> Result<Vec<WeakInvariant>> {
    let f = Fp::new(p)?;
    let n_max = m.min(r_max);
    let candidates: u128 = (0..=n_max)
        .map(|n| (p as u128).saturating_pow((n * r_max) as u32))
        .fold(0u128, u128::saturating_add);
    Limits::check("candidate branch tuples", candidates, limits.max_candidates)?;

    let mut out = Vec::new();
    for n in 0..=n_max {
        let ks = admissible_k(m - n, g);
        if ks.is_empty() {
            continue;
        }
        let r_lo = if n == 0 { 0 } else { n.max(2) };
        let r_hi = if n == 0 { 0 } else { r_max };
        for r in r_lo..=r_hi {
            for multiset in multiset_classes(f, n, r)? {
                for &k in &ks {
                    out.push(WeakInvariant {
                        p,
                        m,
                        k,
                        g,
                        n,
                        r,
                        canonical_multiset: multiset.clone(),
                    });
                }
            }
        }
    }
    out.sort_by(|a, b| {
        (a.g, a.n, a.r, a.k, &a.canonical_multiset).cmp(&(b.g, b.n, b.r, b.k, &b.canonical_multiset))
    });
    Ok(out)
}
