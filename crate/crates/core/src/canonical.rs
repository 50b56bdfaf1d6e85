//! Canonical representatives of branch multisets under Aut(G).
//!
//! Two multisets in F_p^m lie in the same GL(m, p)-orbit iff their images
//! under isomorphisms `span(C) → F_p^n` can be made equal. The canonical
//! form is the lexicographically smallest sorted image.
//!
//! The search picks preimages of the standard basis from the last
//! coordinate backwards. Once `w_n, ..., w_q` are fixed, every element of
//! `span(w_q..w_n)` has a fixed image with zeros before position `q`, and
//! everything outside that span sorts after it. So each step appends one
//! sorted "layer" to the answer, and only the steps producing the
//! smallest layer need to be explored further.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Fp, Vector};
use crate::matrix::FpMatrix;
use crate::subspace::Subspace;

/// Compares two candidate layers. A layer that extends the other sorts
/// first: whatever follows the shorter one comes from a later layer and
/// is larger than every element of the current one.
fn layer_cmp(a: &[Vector], b: &[Vector]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    b.len().cmp(&a.len())
}

struct Search<'a> {
    field: Fp,
    m: usize,
    n: usize,
    items: &'a [Vector],
    best: Option<Vec<Vector>>,
}

impl Search<'_> {
    fn coordinates(&self, basis: &[Vector], c: &Vector) -> Option<Vector> {
        let mat = FpMatrix::from_cols(self.field, self.m, basis).expect("basis vectors have length m");
        mat.solve(c).expect("lengths match")
    }

    /// Image of `c` given `chosen = [w_n, w_{n-1}, ...]`, if `c` lies in
    /// their span.
    fn image(&self, chosen: &[Vector], c: &Vector) -> Option<Vector> {
        let coef = self.coordinates(chosen, c)?;
        let mut img = vec![0; self.n];
        for (j, a) in coef.into_iter().enumerate() {
            img[self.n - 1 - j] = a;
        }
        Some(img)
    }

    fn run(&mut self, chosen: &mut Vec<Vector>, placed: &mut Vec<bool>, prefix: &mut Vec<Vector>) {
        if chosen.len() == self.n {
            if self.best.as_ref().is_none_or(|b| &**prefix < b) {
                self.best = Some(prefix.clone());
            }
            return;
        }
        // Prune on the part already fixed.
        if let Some(best) = &self.best {
            if prefix.as_slice() > &best[..prefix.len()] {
                return;
            }
        }
        let f = self.field;
        let span = Subspace::span(f, self.m, chosen).expect("length m");

        // Distinct extensions V + <c> for unplaced c.
        let mut extensions: Vec<Subspace> = Vec::new();
        for (i, c) in self.items.iter().enumerate() {
            if placed[i] {
                continue;
            }
            let mut gens = chosen.clone();
            gens.push(c.clone());
            let ext = Subspace::span(f, self.m, &gens).expect("length m");
            if !extensions.contains(&ext) {
                extensions.push(ext);
            }
        }

        let mut best_layer: Option<Vec<Vector>> = None;
        let mut ties: Vec<(Vector, Vec<usize>, Vec<Vector>)> = Vec::new();
        for ext in &extensions {
            let seed = ext
                .basis()
                .iter()
                .find(|v| !span.contains_vector(v))
                .expect("extension is strictly larger")
                .clone();
            // All w in ext \ span: λ·seed + v with λ ≠ 0, v ∈ span.
            let span_vectors: Vec<Vector> = f
                .all_vectors(chosen.len())
                .map(|coef| {
                    let mut v = vec![0; self.m];
                    for (a, w) in coef.iter().zip(chosen.iter()) {
                        f.axpy(&mut v, *a, w);
                    }
                    v
                })
                .collect();
            for lambda in 1..f.p() {
                let base = f.scale_vec(lambda, &seed);
                for v in &span_vectors {
                    let w = f.add_vec(&base, v);
                    let mut basis = chosen.clone();
                    basis.push(w.clone());
                    let mut layer = Vec::new();
                    let mut members = Vec::new();
                    for (i, c) in self.items.iter().enumerate() {
                        if placed[i] {
                            continue;
                        }
                        if let Some(img) = self.image(&basis, c) {
                            layer.push(img);
                            members.push(i);
                        }
                    }
                    layer.sort();
                    let ord = best_layer.as_ref().map_or(Ordering::Less, |b| layer_cmp(&layer, b));
                    match ord {
                        Ordering::Less => {
                            best_layer = Some(layer.clone());
                            ties.clear();
                            ties.push((w, members, layer));
                        }
                        Ordering::Equal => ties.push((w, members, layer)),
                        Ordering::Greater => {}
                    }
                }
            }
        }

        for (w, members, layer) in ties {
            chosen.push(w);
            for &i in &members {
                placed[i] = true;
            }
            let len = prefix.len();
            prefix.extend(layer);
            self.run(chosen, placed, prefix);
            prefix.truncate(len);
            for &i in &members {
                placed[i] = false;
            }
            chosen.pop();
        }
    }
}

/// Canonical form of a branch multiset: `n = dim span(C)` and the
/// lexicographically minimal sorted image of `C` in F_p^n over all
/// isomorphisms `span(C) → F_p^n`.
pub fn canonical_multiset(field: Fp, m: usize, items: &[Vector]) -> Result<(usize, Vec<Vector>)> {
    for (i, c) in items.iter().enumerate() {
        if c.len() != m {
            return Err(Error::DimensionMismatch(format!(
                "multiset element {i} has length {}, expected {m}",
                c.len()
            )));
        }
        field.check_vec("multiset element", c)?;
        if c.iter().all(|&x| x == 0) {
            return Err(Error::ZeroBranchImage { index: i });
        }
    }
    let n = Subspace::span(field, m, items)?.dim();
    let mut search = Search { field, m, n, items, best: None };
    search.run(&mut Vec::new(), &mut vec![false; items.len()], &mut Vec::new());
    Ok((n, search.best.expect("search always completes a basis")))
}

/// Counts of the multiples `i·h` (`i = 1..p-1`) of each nonzero `h` in a
/// multiset. Entries not stored are all zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Signature {
    p: u32,
    entries: BTreeMap<Vector, Vec<usize>>,
}

impl Signature {
    pub fn get(&self, h: &[u32]) -> Vec<usize> {
        self.entries.get(h).cloned().unwrap_or_else(|| vec![0; self.p as usize - 1])
    }

    /// Nonzero entries only.
    pub fn entries(&self) -> &BTreeMap<Vector, Vec<usize>> {
        &self.entries
    }

    /// The sorted list of nonzero signature values. Automorphisms of G
    /// permute the `h`, so this is an orbit invariant and serves as a cheap
    /// filter before full canonicalization.
    pub fn profile(&self) -> Vec<Vec<usize>> {
        let mut v: Vec<Vec<usize>> = self.entries.values().cloned().collect();
        v.sort();
        v
    }
}

pub fn multiset_signature(field: Fp, m: usize, items: &[Vector]) -> Result<Signature> {
    let p = field.p();
    let mut entries: BTreeMap<Vector, Vec<usize>> = BTreeMap::new();
    for (idx, c) in items.iter().enumerate() {
        if c.len() != m {
            return Err(Error::DimensionMismatch(format!("multiset element {idx} has length {}", c.len())));
        }
        if c.iter().all(|&x| x == 0) {
            return Err(Error::ZeroBranchImage { index: idx });
        }
        // c = i·h for exactly one h on each of the p - 1 nonzero multiples.
        for i in 1..p {
            let h = field.scale_vec(field.inv(i), c);
            entries.entry(h).or_insert_with(|| vec![0; p as usize - 1])[i as usize - 1] += 1;
        }
    }
    Ok(Signature { p, entries })
}
