//! Acceptance criteria 1–10. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

mod common;

use common::{affine_graded_dims, brute_force_regular_orbits, datum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};
use verlinde_kit::affine::{alcove_points, count_regular_orbits};
use verlinde_kit::clifford::build_loop_spinors;
use verlinde_kit::dirac::{dirac_bundle, normal_action, orbit_scan, scan_grid, verify_loop_relations};
use verlinde_kit::frame::OrthonormalFrame;
use verlinde_kit::kac::{character, graded_dimensions, TorusElement};
use verlinde_kit::kostant::{kostant_cohomology, verify_alt1};
use verlinde_kit::rational::{q_to_f64, qfrac};
use verlinde_kit::spectral::{circle_flow, torus_class_census, torus_kernel_points, TorusTwisting, DEFAULT_MODES};
use verlinde_kit::twisted::{build_twisted_datum, twisted_alcove_points};
use verlinde_kit::verlinde::{s_matrix, verify_fusion, VERLINDE_ROUNDING_TOL};
use verlinde_kit::Weight;

const DIRAC_TOL: f64 = 1e-8;
const ORBIT_TOL: f64 = 1e-6;
const NORMAL_TOL: f64 = 1e-7;
const WEIGHT_TOL: f64 = 1e-8;
const SERIES_TOL: f64 = 1e-9;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn within(elapsed: Duration, limit: Option<Duration>) -> bool {
    limit.is_none_or(|l| elapsed <= l)
}

fn rank_concordance() -> Outcome {
    let mut bad = Vec::new();
    for (name, kmax) in [("A1", 6), ("A2", 3)] {
        let d = datum(name);
        for k in 0..=kmax {
            let alcove = alcove_points(&d, k).len();
            let orbits = count_regular_orbits(&d, k + d.h_dual).unwrap();
            let brute = brute_force_regular_orbits(&d, k + d.h_dual, 8);
            let s = s_matrix(&d, k).unwrap();
            let sv = s.entries.singular_values();
            let s_rank = sv.iter().filter(|x| **x > 1e-9).count();
            if !(alcove == orbits && orbits == brute && brute == s.basis.len() && s_rank == alcove) {
                bad.push(format!("{name} k={k}: {alcove}/{orbits}/{brute}/{s_rank}"));
            }
        }
    }
    outcome(bad.is_empty(), if bad.is_empty() { "11 levels agree".to_string() } else { bad.join("; ") })
}

fn fusion_equivalence() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut bad = Vec::new();
    let mut pairs = 0;
    for (name, kmax) in [("A1", 6), ("A2", 4), ("G2", 2)] {
        let d = datum(name);
        for k in 0..=kmax {
            match verify_fusion(&d, k) {
                Ok(r) => {
                    worst = worst.max(r.max_rounding_residual);
                    pairs += r.rank * r.rank;
                    if !r.mismatches.is_empty() {
                        bad.push(format!("{name} k={k}: {} mismatches", r.mismatches.len()));
                    }
                }
                Err(e) => bad.push(format!("{name} k={k}: {e}")),
            }
        }
    }
    outcome(
        bad.is_empty() && worst < VERLINDE_ROUNDING_TOL,
        format!("{pairs} pairs, max rounding residual {worst:.2e} {}", bad.join("; ")),
    )
}

fn dirac_cases() -> Vec<(&'static str, Vec<i64>)> {
    vec![("A1", vec![0]), ("A1", vec![1]), ("A1", vec![2]), ("A2", vec![0, 0]), ("A2", vec![1, 0])]
}

fn dirac_identities() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut bad = Vec::new();
    for (name, lam) in dirac_cases() {
        let d = datum(name);
        let fr = OrthonormalFrame::new(&d).unwrap();
        let lam = Weight(lam);
        let b = dirac_bundle(&fr, &lam).unwrap();
        let r = b.report();
        let expected = -q_to_f64(&d.norm2(&lam.add(&d.rho)).unwrap());
        let res = r.d_psi_minus_2t.max(r.d_t).max(r.d_squared);
        worst = worst.max(res);
        if res > DIRAC_TOL || (r.expected_d_squared - expected).abs() > 1e-12 {
            bad.push(format!("{name} {lam}: {r:?}"));
        }
    }
    outcome(bad.is_empty(), format!("max residual {worst:.2e} {}", bad.join("; ")))
}

fn kernel_localization() -> Outcome {
    let mut bad = Vec::new();
    let mut kernels = 0;
    let mut worst_action: f64 = 0.0;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for (i, (name, lam)) in dirac_cases().into_iter().enumerate() {
        let d = datum(name);
        let fr = OrthonormalFrame::new(&d).unwrap();
        let b = dirac_bundle(&fr, &Weight(lam.clone())).unwrap();
        let grid = scan_grid(&b, 200, 17 + i as u64);
        let scan = orbit_scan(&b, &grid).unwrap();
        let mism = scan.mismatches(ORBIT_TOL);
        kernels += scan.samples.iter().filter(|s| s.kernel_dim > 0).count();
        if !mism.is_empty() {
            bad.push(format!("{name} {lam:?}: {} scan mismatches", mism.len()));
        }
        // normal directions at the torus points of the orbit are 𝔱
        for w in d.weyl_elements() {
            let mu = b.weight_to_frame(&w.apply(&b.lambda_rho));
            let mut nu = vec![0.0; fr.dim()];
            for x in nu.iter_mut().take(d.rank()) {
                *x = rng.random_range(-0.5..0.5);
            }
            let r = normal_action(&b, &mu, &nu);
            worst_action = worst_action.max(r.action_residual).max(r.kernel_leak);
            if r.kernel_dim == 0 {
                bad.push(format!("{name} {lam:?}: empty kernel on the orbit"));
            }
        }
    }
    let pass = bad.is_empty() && worst_action < NORMAL_TOL && kernels > 0;
    outcome(
        pass,
        format!("5x200 samples, {kernels} with kernel, normal action residual {worst_action:.2e} {}", bad.join("; ")),
    )
}

fn kostant() -> Outcome {
    let mut bad = Vec::new();
    let mut worst: f64 = 0.0;
    for (name, lam) in [("A1", vec![0]), ("A1", vec![1]), ("A2", vec![0, 0]), ("A2", vec![1, 0])] {
        let d = datum(name);
        let fr = OrthonormalFrame::new(&d).unwrap();
        let r = kostant_cohomology(&fr, &Weight(lam.clone())).unwrap();
        let maxlen = d.weyl_elements().iter().map(|w| w.length()).max().unwrap();
        let census: Vec<usize> = (0..=maxlen)
            .map(|l| d.weyl_elements().iter().filter(|w| w.length() == l).count())
            .collect();
        worst = worst.max(r.weight_residual);
        if r.degree_dims != census || !r.matches_expectation() || r.weight_residual > WEIGHT_TOL {
            bad.push(format!("{name} {lam:?}: dims {:?} vs {census:?}", r.degree_dims));
        }
    }
    outcome(bad.is_empty(), format!("A1 1,1; A2 1,2,2,1; weight residual {worst:.2e} {}", bad.join("; ")))
}

fn alt1() -> Outcome {
    let mut worst: f64 = 0.0;
    for (name, lam) in [("A1", vec![0]), ("A1", vec![1]), ("A2", vec![0, 0]), ("A2", vec![1, 0])] {
        let fr = OrthonormalFrame::new(&datum(name)).unwrap();
        let b = dirac_bundle(&fr, &Weight(lam)).unwrap();
        let r = verify_alt1(&b);
        worst = worst.max(r.residual).max(r.d_squared);
    }
    outcome(worst <= DIRAC_TOL, format!("assembly residual {worst:.2e}"))
}

fn loop_relations() -> Outcome {
    let fr = OrthonormalFrame::new(&datum("A1")).unwrap();
    let lc = build_loop_spinors(&fr, 2).unwrap();
    let r = verify_loop_relations(&fr, &lc);
    outcome(
        lc.dim <= 256 && r.states_checked > 0 && r.max_residual() <= DIRAC_TOL,
        format!("dim {}, {} interior states, max residual {:.2e}", lc.dim, r.states_checked, r.max_residual()),
    )
}

fn kac_character() -> Outcome {
    let d = datum("A1");
    let mut bad = Vec::new();
    let mut worst: f64 = 0.0;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for lam in [Weight(vec![0]), Weight(vec![1])] {
        let ch = character(&d, 1, &lam, &TorusElement::identity(1), 8).unwrap();
        let oracle = affine_graded_dims(&d, 1, &lam, 8);
        if graded_dimensions(&ch, 1e-9).as_ref() != Some(&oracle) {
            bad.push(format!("{lam}: {:?} vs {oracle:?}", graded_dimensions(&ch, 1e-9)));
        }
        for _ in 0..3 {
            let g = TorusElement::new(vec![qfrac(rng.random_range(1..997), 997)]);
            let ch = character(&d, 1, &lam, &g, 8).unwrap();
            for w in d.weyl_elements() {
                let other = character(&d, 1, &lam, &g.weyl_image(&d, w), 8).unwrap();
                worst = worst.max(ch.max_difference(&other));
            }
        }
    }
    outcome(
        bad.is_empty() && worst < SERIES_TOL,
        format!("graded dims to q^8 match oracle, W-invariance {worst:.2e} {}", bad.join("; ")),
    )
}

fn spectral_flow() -> Outcome {
    let unit = circle_flow(0.0, 1.0, 101, DEFAULT_MODES).unwrap().net_flow;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut bad = Vec::new();
    let mut tried = 0;
    while tried < 10 {
        let rank = rng.random_range(1..=2usize);
        let kappa: Vec<Vec<i64>> = (0..rank).map(|_| (0..rank).map(|_| rng.random_range(-4..=4)).collect()).collect();
        let det = if rank == 1 { kappa[0][0] } else { kappa[0][0] * kappa[1][1] - kappa[0][1] * kappa[1][0] };
        if det == 0 {
            continue;
        }
        tried += 1;
        let tw = TorusTwisting::new(kappa.clone()).unwrap();
        let census = torus_class_census(&tw);
        let kernel = torus_kernel_points(&tw, DEFAULT_MODES);
        if census != det.unsigned_abs() || kernel.classes as u64 != census {
            bad.push(format!("{kappa:?}: census {census}, kernel classes {}", kernel.classes));
        }
    }
    let singular = TorusTwisting::new(vec![vec![2, 4], vec![1, 2]]).is_err() && TorusTwisting::new(vec![vec![0]]).is_err();
    outcome(
        unit == 1 && bad.is_empty() && singular,
        format!("unit loop flow {unit}, 10 random kappa, singular rejected: {singular} {}", bad.join("; ")),
    )
}

fn twisted() -> Outcome {
    let mut bad = Vec::new();
    for (name, r) in [("A2", 2usize), ("A3", 2), ("D4", 3)] {
        let tw = build_twisted_datum(name.parse().unwrap(), r).unwrap();
        if tw.shift_identity_lhs() != qfrac(tw.base.h_dual, r as i64) {
            bad.push(format!("{name} r={r}: shift identity {}", tw.shift_identity_lhs()));
        }
    }
    let a2 = build_twisted_datum("A2".parse().unwrap(), 2).unwrap();
    for k in 0..=8i64 {
        let pts = twisted_alcove_points(&a2, k);
        if pts.iter().any(|p| p.in_root_lattice != (k % 2 == 0)) {
            bad.push(format!("parity violated at k={k}"));
        }
        // levels of the twisted affine algebra of type A2: solutions of 2a + b = k
        if pts.len() as i64 != k / 2 + 1 {
            bad.push(format!("k={k}: {} points", pts.len()));
        }
    }
    outcome(bad.is_empty(), format!("shift identity exact, parity rule at k=0..8 {}", bad.join("; ")))
}

fn main() {
    type Check = fn() -> Outcome;
    let criteria: [(&str, Check, Option<u64>); 10] = [
        ("rank concordance", rank_concordance, Some(1)),
        ("fusion oracle equivalence", fusion_equivalence, Some(30)),
        ("Dirac identities", dirac_identities, Some(10)),
        ("kernel localization", kernel_localization, None),
        ("Kostant cohomology", kostant, None),
        ("decomposition identity", alt1, None),
        ("truncated affine relations", loop_relations, Some(60)),
        ("Kac character consistency", kac_character, None),
        ("spectral flow", spectral_flow, None),
        ("twisted data", twisted, None),
    ];
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = check();
        let elapsed = start.elapsed();
        let limit = limit.map(Duration::from_secs);
        let pass = o.pass && within(elapsed, limit);
        if !pass {
            failed += 1;
        }
        let budget = limit.map(|l| format!(" (limit {}s)", l.as_secs())).unwrap_or_default();
        println!(
            "criterion {:>2} {:<28} {}  {:.2}s{budget}  {}",
            i + 1,
            name,
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            o.detail.trim_end()
        );
    }
    println!("acceptance: {} of 10 passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
