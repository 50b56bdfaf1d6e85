//! Brute-force ground truth.
//!
//! Covers are built as explicit permutation representations on the sheets
//! `F_p^m`, genera come from Euler characteristics, and equivalence
//! classes are raw orbits of all monodromy data under homology-level
//! moves. Nothing here uses the induced form or canonical multisets.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::action::ActionData;
use crate::error::{Error, Result};
use crate::field::{Fp, Vector};
use crate::groups::{gl_group, sp_group};
use crate::limits::Limits;
use crate::matrix::FpMatrix;

/// Regular cover with sheets labelled by F_p^m; each generator of the
/// punctured quotient's fundamental group permutes sheets by translation.
#[derive(Debug, Clone)]
pub struct PermutationCover {
    pub p: u32,
    pub m: usize,
    pub g: usize,
    pub sheets: Vec<Vector>,
    /// `(label, permutation)` for `A_i`, `B_i`, then `X_j`.
    pub generators: Vec<(String, Vec<usize>)>,
    pub branch_count: usize,
}

fn sheet_index(p: u32, v: &[u32]) -> usize {
    v.iter().fold(0usize, |acc, &x| acc * p as usize + x as usize)
}

fn translation(field: Fp, sheets: &[Vector], by: &[u32]) -> Vec<usize> {
    sheets.iter().map(|s| sheet_index(field.p(), &field.add_vec(s, by))).collect()
}

fn cycle_count(perm: &[usize]) -> usize {
    let mut seen = vec![false; perm.len()];
    let mut cycles = 0;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
        }
    }
    cycles
}

impl PermutationCover {
    pub fn degree(&self) -> usize {
        self.sheets.len()
    }

    pub fn branch_permutations(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.generators[2 * self.g..].iter().map(|(_, perm)| perm)
    }

    /// Points over the j-th branch point: the orbits of its local
    /// monodromy on the sheets.
    pub fn fiber_size(&self, j: usize) -> usize {
        cycle_count(&self.generators[2 * self.g + j].1)
    }

    /// Transitivity of the group generated by all sheet permutations.
    pub fn is_connected(&self) -> bool {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = queue.pop_front() {
            for (_, perm) in &self.generators {
                let y = perm[x];
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    queue.push_back(y);
                }
            }
        }
        count == n
    }

    /// Composite of the branch loops, which must be trivial for the
    /// surface relation `∏[A_i, B_i] ∏ X_j = 1` to hold (commutators of
    /// translations vanish).
    pub fn relation_holds(&self) -> bool {
        let mut composite: Vec<usize> = (0..self.degree()).collect();
        for perm in self.branch_permutations() {
            composite = composite.iter().map(|&x| perm[x]).collect();
        }
        composite.iter().enumerate().all(|(i, &x)| i == x)
    }
}

/// Builds the permutation cover of an action without validating
/// surjectivity, so that disconnected covers can be inspected too.
pub fn build_cover_unchecked(a: &ActionData, limits: &Limits) -> Result<PermutationCover> {
    let f = a.field()?;
    let degree = (a.p as u128).saturating_pow(a.m as u32);
    Limits::check("sheets", degree, limits.max_sheets)?;
    let sheets: Vec<Vector> = f.all_vectors(a.m).collect();
    let mut generators = Vec::with_capacity(2 * a.g + a.r());
    for (i, u) in a.alpha_images.iter().enumerate() {
        generators.push((format!("A{}", i + 1), translation(f, &sheets, u)));
    }
    for (i, v) in a.beta_images.iter().enumerate() {
        generators.push((format!("B{}", i + 1), translation(f, &sheets, v)));
    }
    for (j, c) in a.branch_images.iter().enumerate() {
        generators.push((format!("X{}", j + 1), translation(f, &sheets, c)));
    }
    Ok(PermutationCover { p: a.p, m: a.m, g: a.g, sheets, generators, branch_count: a.r() })
}

pub fn build_cover(a: &ActionData, limits: &Limits) -> Result<PermutationCover> {
    a.validate()?;
    let cov = build_cover_unchecked(a, limits)?;
    if !cov.relation_holds() {
        return Err(Error::Internal("surface relation fails on the cover".into()));
    }
    Ok(cov)
}

/// Genus from `χ = deg·(2 - 2g - r) + Σ_j |fiber over b_j|`.
pub fn cover_genus(cov: &PermutationCover) -> Result<u64> {
    let deg = cov.degree() as i128;
    let fibers: i128 = (0..cov.branch_count).map(|j| cov.fiber_size(j) as i128).sum();
    let chi = deg * (2 - 2 * cov.g as i128 - cov.branch_count as i128) + fibers;
    let twice = 2 - chi;
    if twice < 0 || twice % 2 != 0 {
        return Err(Error::Internal(format!("Euler characteristic {chi} gives no genus")));
    }
    Ok((twice / 2) as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Strong,
    Weak,
}

/// Move generators on monodromy data: symplectic changes of the handle
/// basis, point pushes `u_i += c_j` / `v_i += c_j`, transpositions of
/// adjacent branch labels and, in weak mode, automorphisms of G.
pub struct MoveSet {
    sp: Vec<FpMatrix>,
    gl: Vec<FpMatrix>,
}

impl MoveSet {
    pub fn new(p: u32, m: usize, g: usize, mode: Mode, limits: &Limits) -> Result<Self> {
        let sp = sp_group(p, g, limits)?;
        let gl = match mode {
            Mode::Strong => Vec::new(),
            Mode::Weak => gl_group(p, m, limits)?,
        };
        Ok(MoveSet { sp, gl })
    }

    pub fn len_for(&self, a: &ActionData) -> usize {
        self.sp.len() + 2 * a.g * a.r() + a.r().saturating_sub(1) + self.gl.len()
    }

    /// Applies every generator to `a`.
    pub fn neighbours(&self, a: &ActionData) -> Result<Vec<ActionData>> {
        let f = a.field()?;
        let mut out = Vec::with_capacity(self.len_for(a));
        for m in &self.sp {
            out.push(a.recoordinatize(m)?);
        }
        for i in 0..a.g {
            for c in &a.branch_images {
                let mut b = a.clone();
                b.alpha_images[i] = f.add_vec(&b.alpha_images[i], c);
                out.push(b);
                let mut b = a.clone();
                b.beta_images[i] = f.add_vec(&b.beta_images[i], c);
                out.push(b);
            }
        }
        for j in 1..a.r() {
            let mut b = a.clone();
            b.branch_images.swap(j - 1, j);
            out.push(b);
        }
        for gamma in &self.gl {
            let apply = |vs: &[Vector]| -> Result<Vec<Vector>> { vs.iter().map(|v| gamma.mul_vec(v)).collect() };
            out.push(ActionData {
                alpha_images: apply(&a.alpha_images)?,
                beta_images: apply(&a.beta_images)?,
                branch_images: apply(&a.branch_images)?,
                ..a.clone()
            });
        }
        Ok(out)
    }
}

/// Orbit of one action under the move generators.
#[derive(Debug, Clone)]
pub struct MoveOrbit {
    pub seed: ActionData,
    pub mode: Mode,
    pub orbit: BTreeSet<ActionData>,
}

pub fn move_orbit(seed: &ActionData, mode: Mode, limits: &Limits) -> Result<MoveOrbit> {
    seed.validate()?;
    let moves = MoveSet::new(seed.p, seed.m, seed.g, mode, limits)?;
    let mut orbit = BTreeSet::from([seed.clone()]);
    let mut queue = VecDeque::from([seed.clone()]);
    while let Some(x) = queue.pop_front() {
        for y in moves.neighbours(&x)? {
            if !orbit.contains(&y) {
                Limits::check("orbit size", orbit.len() as u128 + 1, limits.max_oracle_candidates)?;
                orbit.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(MoveOrbit { seed: seed.clone(), mode, orbit })
}

/// Every valid action with the given `(p, m, g)` and `r <= r_max` branch
/// points, in encoding order.
pub fn all_valid_actions(p: u32, m: usize, g: usize, r_max: usize, limits: &Limits) -> Result<Vec<ActionData>> {
    let f = Fp::new(p)?;
    if m == 0 {
        return Err(Error::ZeroRank);
    }
    let total: u128 = (0..=r_max)
        .map(|r| (p as u128).saturating_pow((m * (2 * g + r)) as u32))
        .fold(0, u128::saturating_add);
    Limits::check("candidate monodromies", total, limits.max_oracle_candidates)?;
    let mut out = Vec::new();
    for r in 0..=r_max {
        let slots = 2 * g + r;
        for digits in f.all_vectors(m * slots) {
            let vecs: Vec<Vector> = digits.chunks(m).map(<[u32]>::to_vec).collect();
            let a = ActionData {
                p,
                m,
                g,
                alpha_images: vecs[..g].to_vec(),
                beta_images: vecs[g..2 * g].to_vec(),
                branch_images: vecs[2 * g..].to_vec(),
            };
            if a.validate().is_ok() {
                out.push(a);
            }
        }
    }
    Ok(out)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Partition of all valid actions into move orbits.
#[derive(Debug, Clone)]
pub struct BruteForceClasses {
    pub mode: Mode,
    /// Each class lists its members in encoding order; classes are ordered
    /// by their first member.
    pub classes: Vec<Vec<ActionData>>,
}

impl BruteForceClasses {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn representatives(&self) -> Vec<&ActionData> {
        self.classes.iter().map(|c| &c[0]).collect()
    }
}

pub fn brute_force_classes(
    p: u32,
    m: usize,
    g: usize,
    r_max: usize,
    mode: Mode,
    limits: &Limits,
) -> Result<BruteForceClasses> {
    let actions = all_valid_actions(p, m, g, r_max, limits)?;
    let index: HashMap<&ActionData, usize> = actions.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let moves = MoveSet::new(p, m, g, mode, limits)?;
    let mut uf = UnionFind::new(actions.len());
    for (i, a) in actions.iter().enumerate() {
        for b in moves.neighbours(a)? {
            let j = *index
                .get(&b)
                .ok_or_else(|| Error::Internal(format!("move left the valid set: {b:?}")))?;
            uf.union(i, j);
        }
    }
    let mut by_root: HashMap<usize, Vec<ActionData>> = HashMap::new();
    for (i, a) in actions.iter().enumerate() {
        let root = uf.find(i);
        by_root.entry(root).or_default().push(a.clone());
    }
    let mut classes: Vec<(usize, Vec<ActionData>)> = by_root.into_iter().collect();
    classes.sort_by_key(|(root, _)| *root);
    Ok(BruteForceClasses { mode, classes: classes.into_iter().map(|(_, c)| c).collect() })
}
