#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use zpm_core::groups::integral_symplectic_generators;
use zpm_core::{ActionData, Fp, FpMatrix, Vector};

pub fn random_vector(rng: &mut impl Rng, p: u32, m: usize) -> Vector {
    (0..m).map(|_| rng.gen_range(0..p)).collect()
}

pub fn random_nonzero(rng: &mut impl Rng, p: u32, m: usize) -> Vector {
    loop {
        let v = random_vector(rng, p, m);
        if v.iter().any(|&x| x != 0) {
            return v;
        }
    }
}

/// Random valid monodromy data with the given shape, or `None` if none was
/// hit after a bounded number of tries.
pub fn random_action(rng: &mut impl Rng, p: u32, m: usize, g: usize, r: usize) -> Option<ActionData> {
    let f = Fp::new(p).unwrap();
    if r == 1 {
        return None;
    }
    for _ in 0..200 {
        let alpha: Vec<Vector> = (0..g).map(|_| random_vector(rng, p, m)).collect();
        let beta: Vec<Vector> = (0..g).map(|_| random_vector(rng, p, m)).collect();
        let mut branch: Vec<Vector> = (0..r.saturating_sub(1)).map(|_| random_nonzero(rng, p, m)).collect();
        if r > 0 {
            let s = f.sum_vecs(m, &branch);
            branch.push(s.iter().map(|&x| f.neg(x)).collect());
        }
        if let Ok(a) = ActionData::new(p, m, alpha, beta, branch) {
            return Some(a);
        }
    }
    None
}

/// Random element of the symplectic group as a product of transvections.
pub fn random_symplectic(rng: &mut impl Rng, p: u32, g: usize) -> FpMatrix {
    let gens = integral_symplectic_generators(p, g).unwrap();
    let f = Fp::new(p).unwrap();
    let mut m = FpMatrix::identity(f, 2 * g);
    if gens.is_empty() {
        return m;
    }
    for _ in 0..(8 * g + 4) {
        let t = gens.choose(rng).unwrap();
        m = m.mul(t).unwrap();
    }
    m
}

/// Random point pushes and branch relabellings.
pub fn random_twists_and_relabels(rng: &mut impl Rng, a: &ActionData) -> ActionData {
    let f = a.field().unwrap();
    let mut b = a.clone();
    if a.g > 0 && a.r() > 0 {
        for _ in 0..rng.gen_range(0..6) {
            let i = rng.gen_range(0..a.g);
            let c = b.branch_images[rng.gen_range(0..a.r())].clone();
            let times = rng.gen_range(1..a.p);
            let target = if rng.gen_bool(0.5) { &mut b.alpha_images[i] } else { &mut b.beta_images[i] };
            f.axpy(target, times, &c);
        }
    }
    b.branch_images.shuffle(rng);
    b
}
