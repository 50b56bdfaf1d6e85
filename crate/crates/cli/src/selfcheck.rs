//! Built-in consistency checks, named by what they verify.

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use zpm_core::groups::{integral_symplectic_generators, verify_reduction_surjectivity};
use zpm_core::oracle::{brute_force_classes, build_cover, cover_genus, Mode};
use zpm_core::{
    construct_action, enumerate_weak_classes, strong_invariant, weak_invariant, ActionData, AlternatingForm, Fp,
    FpMatrix, Limits, StandardSymplecticSpace, Vector,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Level {
    Quick,
    Full,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

pub fn run(level: Level, seed: u64, limits: &Limits) -> Vec<CheckResult> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut results = Vec::new();
    let mut record = |name: String, outcome: Outcome| {
        results.push(CheckResult { name, passed: outcome.is_ok(), detail: outcome.err() });
    };

    let mut surj = vec![(2u32, 1usize), (3, 1)];
    if level == Level::Full {
        surj.push((2, 2));
    }
    for (p, g) in surj {
        record(
            format!("reductions of integral transvections generate Sp({}, F_{p})", 2 * g),
            surjectivity(p, g, limits),
        );
    }
    record("random alternating forms admit adapted symplectic bases".into(), adapted_bases(&mut rng, 50));
    record("random partial isometries extend to symplectic matrices".into(), extensions(&mut rng, 20));
    record("invariants are unchanged by random moves".into(), move_invariance(&mut rng, 20));
    record(
        "constructed actions realize the requested weak classes (p=2, m<=2, g<=1, r<=3)".into(),
        round_trip(2, 2, 1, 3, limits),
    );

    if level == Level::Full {
        record(
            "brute-force search finds 2 strong classes of free Z_2^2 actions over genus 2".into(),
            strong_count(2, 2, 2, 0, 2, limits),
        );
        record(
            "weak classes match the brute-force oracle for Z_3 over the sphere (r<=3)".into(),
            weak_agreement(3, 1, 0, 3, limits),
        );
        record(
            "genus formula agrees with explicit permutation covers on 100 random actions".into(),
            cover_genera(&mut rng, 100, limits),
        );
        record(
            "constructed actions realize the requested weak classes (p<=3, m<=3, g<=3, r<=4)".into(),
            (|| {
                for p in [2, 3] {
                    round_trip(p, 3, 3, 4, limits)?;
                }
                Ok(())
            })(),
        );
    }
    results
}

fn surjectivity(p: u32, g: usize, limits: &Limits) -> Outcome {
    let rep = verify_reduction_surjectivity(p, g, limits).map_err(|e| e.to_string())?;
    ensure(rep.ok, || format!("generated {} of {} elements", rep.generated_order, rep.full_order))
}

fn random_vector(rng: &mut StdRng, p: u32, m: usize) -> Vector {
    (0..m).map(|_| rng.gen_range(0..p)).collect()
}

fn random_action(rng: &mut StdRng, p: u32, m: usize, g: usize, r: usize) -> Option<ActionData> {
    let f = Fp::new(p).ok()?;
    for _ in 0..200 {
        let alpha = (0..g).map(|_| random_vector(rng, p, m)).collect();
        let beta = (0..g).map(|_| random_vector(rng, p, m)).collect();
        let mut branch: Vec<Vector> = (0..r.saturating_sub(1)).map(|_| random_vector(rng, p, m)).collect();
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

fn random_symplectic(rng: &mut StdRng, p: u32, g: usize) -> Result<FpMatrix, String> {
    let gens = integral_symplectic_generators(p, g).map_err(|e| e.to_string())?;
    let mut m = FpMatrix::identity(Fp::new(p).map_err(|e| e.to_string())?, 2 * g);
    for _ in 0..(8 * g) {
        m = m.mul(gens.choose(rng).expect("g > 0")).map_err(|e| e.to_string())?;
    }
    Ok(m)
}

fn adapted_bases(rng: &mut StdRng, cases: usize) -> Outcome {
    for case in 0..cases {
        let p = [2u32, 3, 5][rng.gen_range(0..3)];
        let f = Fp::new(p).map_err(|e| e.to_string())?;
        let d = rng.gen_range(0..=6);
        let mut gram = FpMatrix::zeros(f, d, d);
        for i in 0..d {
            for j in i + 1..d {
                let x = if rng.gen_bool(0.3) { 0 } else { rng.gen_range(0..p) };
                gram.set(i, j, x);
                gram.set(j, i, f.neg(x));
            }
        }
        let form = AlternatingForm::new(gram).map_err(|e| e.to_string())?;
        let basis = form.symplectic_basis();
        basis.check(&form).map_err(|e| format!("case {case}: {e}"))?;
        ensure(2 * basis.s() == form.rank(), || format!("case {case}: pair count does not match rank"))?;
    }
    Ok(())
}

fn extensions(rng: &mut StdRng, cases: usize) -> Outcome {
    for case in 0..cases {
        let p = [2u32, 3][rng.gen_range(0..2)];
        let g = rng.gen_range(1..=2);
        let space = StandardSymplecticSpace::new(p, g).map_err(|e| e.to_string())?;
        let hidden = random_symplectic(rng, p, g)?;
        let domain: Vec<Vector> = (0..rng.gen_range(0..=2 * g)).map(|_| random_vector(rng, p, 2 * g)).collect();
        let images: Vec<Vector> = domain.iter().map(|v| hidden.mul_vec(v).expect("square")).collect();
        let ext = space.extend_isometry(&domain, &images).map_err(|e| format!("case {case}: {e}"))?;
        ensure(space.form().preserved_by(&ext), || format!("case {case}: extension not symplectic"))?;
        for (v, w) in domain.iter().zip(&images) {
            ensure(&ext.mul_vec(v).expect("square") == w, || format!("case {case}: extension moves {v:?}"))?;
        }
    }
    Ok(())
}

fn move_invariance(rng: &mut StdRng, cases: usize) -> Outcome {
    let mut done = 0;
    while done < cases {
        let (p, m, g, r) = ([2u32, 3][rng.gen_range(0..2)], rng.gen_range(1..=2), rng.gen_range(1..=2), rng.gen_range(0..=4));
        let Some(a) = random_action(rng, p, m, g, r) else { continue };
        let mut b = a.recoordinatize(&random_symplectic(rng, p, g)?).map_err(|e| e.to_string())?;
        let f = a.field().map_err(|e| e.to_string())?;
        if r > 0 {
            let i = rng.gen_range(0..g);
            let c = b.branch_images[rng.gen_range(0..r)].clone();
            b.alpha_images[i] = f.add_vec(&b.alpha_images[i], &c);
        }
        b.branch_images.shuffle(rng);
        let (sa, sb) = (strong_invariant(&a), strong_invariant(&b));
        ensure(sa.is_ok() && sa == sb, || format!("strong invariant moved: {a:?} -> {b:?}"))?;
        done += 1;
    }
    Ok(())
}

fn round_trip(p: u32, m_max: usize, g_max: usize, r_max: usize, limits: &Limits) -> Outcome {
    for m in 1..=m_max {
        for g in 0..=g_max {
            for w in enumerate_weak_classes(p, m, g, r_max, limits).map_err(|e| e.to_string())? {
                let a = construct_action(p, m, w.k, g, &w.canonical_multiset).map_err(|e| format!("{w:?}: {e}"))?;
                let back = weak_invariant(&a).map_err(|e| e.to_string())?;
                ensure(back == w, || format!("requested {w:?}, got {back:?}"))?;
            }
        }
    }
    Ok(())
}

fn strong_count(p: u32, m: usize, g: usize, r_max: usize, want: usize, limits: &Limits) -> Outcome {
    let bf = brute_force_classes(p, m, g, r_max, Mode::Strong, limits).map_err(|e| e.to_string())?;
    ensure(bf.class_count() == want, || format!("found {} classes", bf.class_count()))
}

fn weak_agreement(p: u32, m: usize, g: usize, r_max: usize, limits: &Limits) -> Outcome {
    let bf = brute_force_classes(p, m, g, r_max, Mode::Weak, limits).map_err(|e| e.to_string())?;
    let mut oracle: Vec<_> = bf.representatives().into_iter().map(weak_invariant).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    oracle.sort();
    let mut listed = enumerate_weak_classes(p, m, g, r_max, limits).map_err(|e| e.to_string())?;
    listed.sort();
    ensure(oracle == listed, || format!("oracle {} classes, enumeration {}", oracle.len(), listed.len()))
}

fn cover_genera(rng: &mut StdRng, cases: usize, limits: &Limits) -> Outcome {
    let mut done = 0;
    while done < cases {
        let (p, m, g, r) = ([2u32, 3, 5][rng.gen_range(0..3)], rng.gen_range(1..=3), rng.gen_range(0..=2), rng.gen_range(0..=5));
        if (p as u64).pow(m as u32) * (2 * g as u64 + r as u64) > 100_000 {
            continue;
        }
        let Some(a) = random_action(rng, p, m, g, r) else { continue };
        let cover = build_cover(&a, limits).map_err(|e| e.to_string())?;
        let direct = cover_genus(&cover).map_err(|e| e.to_string())?;
        let formula = a.total_genus().map_err(|e| e.to_string())?;
        ensure(direct == formula, || format!("{a:?}: cover genus {direct}, formula {formula}"))?;
        done += 1;
    }
    Ok(())
}
