//! Strong and weak invariants and the equivalence deciders built on them.

use serde::{Deserialize, Serialize};

use crate::action::ActionData;
use crate::canonical::{canonical_multiset, multiset_signature};
use crate::error::{Error, Result};
use crate::field::Vector;

/// Complete invariant of strong equivalence.
///
/// Two actions of the same group are strongly equivalent iff they have
/// the same quotient genus, the same unordered branch data and the same
/// induced form on `Ann(G_fix)`; the form is compared as a Gram matrix on
/// the canonical rref basis of the annihilator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StrongInvariant {
    pub p: u32,
    pub m: usize,
    pub g: usize,
    pub g_total: u64,
    pub branch_multiset: Vec<Vector>,
    pub gfix_basis: Vec<Vector>,
    pub ann_basis: Vec<Vector>,
    pub gram: Vec<Vector>,
    pub k: usize,
}

impl StrongInvariant {
    pub fn n(&self) -> usize {
        self.gfix_basis.len()
    }

    /// Name of the first component that differs, in field order.
    pub fn first_difference(&self, other: &StrongInvariant) -> Option<&'static str> {
        [
            ("p", self.p != other.p),
            ("m", self.m != other.m),
            ("g", self.g != other.g),
            ("g_total", self.g_total != other.g_total),
            ("branch_multiset", self.branch_multiset != other.branch_multiset),
            ("gfix_basis", self.gfix_basis != other.gfix_basis),
            ("ann_basis", self.ann_basis != other.ann_basis),
            ("gram", self.gram != other.gram),
            ("k", self.k != other.k),
        ]
        .into_iter()
        .find_map(|(name, differs)| differs.then_some(name))
    }
}

/// Complete invariant of weak equivalence: radical dimension of the
/// induced form, quotient genus, rank of `G_fix`, and the Aut(G)-canonical
/// branch multiset written in F_p^n.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeakInvariant {
    pub p: u32,
    pub m: usize,
    pub k: usize,
    pub g: usize,
    pub n: usize,
    pub r: usize,
    pub canonical_multiset: Vec<Vector>,
}

impl WeakInvariant {
    pub fn first_difference(&self, other: &WeakInvariant) -> Option<&'static str> {
        [
            ("p", self.p != other.p),
            ("m", self.m != other.m),
            ("k", self.k != other.k),
            ("g", self.g != other.g),
            ("n", self.n != other.n),
            ("r", self.r != other.r),
            ("canonical_multiset", self.canonical_multiset != other.canonical_multiset),
        ]
        .into_iter()
        .find_map(|(name, differs)| differs.then_some(name))
    }

    /// Genus of the covering surface of any action in this class.
    pub fn total_genus(&self) -> u64 {
        let p = self.p as i128;
        let pm = p.pow(self.m as u32);
        let twice = 2 + 2 * pm * (self.g as i128 - 1) + self.r as i128 * (pm / p) * (p - 1);
        (twice / 2) as u64
    }
}

pub fn strong_invariant(a: &ActionData) -> Result<StrongInvariant> {
    a.validate()?;
    let (ann_basis, form) = a.induced_form()?;
    let mut branch_multiset = a.branch_images.clone();
    branch_multiset.sort();
    let gfix_basis = a.fixed_subgroup()?.basis().to_vec();
    let k = form.radical().1;
    Ok(StrongInvariant {
        p: a.p,
        m: a.m,
        g: a.g,
        g_total: a.total_genus()?,
        branch_multiset,
        gfix_basis,
        ann_basis,
        gram: form.gram().row_vecs(),
        k,
    })
}

pub fn weak_invariant(a: &ActionData) -> Result<WeakInvariant> {
    let strong = strong_invariant(a)?;
    let (n, canonical) = canonical_multiset(a.field()?, a.m, &a.branch_images)?;
    Ok(WeakInvariant {
        p: a.p,
        m: a.m,
        k: strong.k,
        g: a.g,
        n,
        r: a.r(),
        canonical_multiset: canonical,
    })
}

fn same_group(a: &ActionData, b: &ActionData) -> Result<()> {
    if (a.p, a.m) != (b.p, b.m) {
        return Err(Error::GroupMismatch(a.p, a.m, b.p, b.m));
    }
    Ok(())
}

pub fn strongly_equivalent(a: &ActionData, b: &ActionData) -> Result<bool> {
    same_group(a, b)?;
    Ok(strong_invariant(a)? == strong_invariant(b)?)
}

pub fn weakly_equivalent(a: &ActionData, b: &ActionData) -> Result<bool> {
    same_group(a, b)?;
    a.validate()?;
    b.validate()?;
    if (a.g, a.r()) != (b.g, b.r()) {
        return Ok(false);
    }
    let f = a.field()?;
    if multiset_signature(f, a.m, &a.branch_images)?.profile()
        != multiset_signature(f, b.m, &b.branch_images)?.profile()
    {
        return Ok(false);
    }
    Ok(weak_invariant(a)? == weak_invariant(b)?)
}
