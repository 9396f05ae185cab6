//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::Rng;

use gpnerve::dgcat::{reset_witness_calls, witness_calls, DgCategory};
use gpnerve::fixtures::{all_fixtures, complex_a, complex_b, exterior, twisted};
use gpnerve::horn::{
    compute_obstruction, extract_horn, fill, fill_inner, lift_filler, lift_from, HornData, Sampler,
};
use gpnerve::json::{
    category_from_json, category_to_json, filler_from_json, filler_to_json, horn_from_json, horn_to_json,
    mc_from_json, mc_to_json, parse_text, simplex_from_json, simplex_to_json, to_text,
};
use gpnerve::laws::{run_laws, LawOptions, HORN_GRID};
use gpnerve::mc::{check_mc, random_mc_element, tensor_with_ring, twist, twist_unchecked, MCElement};
use gpnerve::nerve::{calibrate_signs, free_model_check, validate_simplex, validate_star, SignPattern};
use gpnerve::rings::SquareZeroRing;
use gpnerve::sample::{derive_seed, rng_from_seed, small_element};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn law_fixtures() -> Vec<(&'static str, DgCategory)> {
    vec![
        ("A", complex_a()),
        ("B", complex_b()),
        ("exterior", exterior()),
        ("twisted1", twisted(1).category),
    ]
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for (name, c) in law_fixtures() {
        let r = run_laws(
            &c,
            &LawOptions {
                seed: 1,
                trials: 200,
                max_n: 4,
                mutate_sign: false,
            },
        );
        for law in ["cochain d^2 (n = 1)", "cochain d^2 (n = 2)", "cochain d^2 (n = 3)", "cochain d^2 (n = 4)", "cochain leibniz"] {
            let l = r.law(law).ok_or_else(|| format!("{name}: law {law} missing"))?;
            ensure(l.checked == 200 && l.failed == 0, || format!("{name}: {law}: {} of {} failed", l.failed, l.checked))?;
            checked += l.checked;
        }
        ensure(r.ok(), || format!("{name}: {r}"))?;
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(60), || format!("took {t:.1?}"))?;
    Ok(format!("{checked} identities on 4 fixtures, 0 failures, {:.1}s", t.as_secs_f64()))
}

fn criterion_2() -> Outcome {
    let winners = calibrate_signs(4);
    ensure(winners == vec![SignPattern::CALIBRATED], || format!("winners {winners:?}"))?;
    let normalized = SignPattern::candidates()
        .into_iter()
        .filter(SignPattern::reproduces_two_simplex)
        .count();
    ensure(free_model_check(SignPattern::CALIBRATED, 5), || "pattern fails at n = 5".into())?;
    let r = run_laws(
        &complex_a(),
        &LawOptions {
            seed: 2,
            trials: 20,
            ..LawOptions::default()
        },
    );
    ensure(r.ok(), || r.to_string())?;
    Ok(format!(
        "{normalized} of {} candidates reproduce the n = 2 formula, 1 survives d^2 = 0 through n = 4: faces (-1)^l, compositions (-1)^(p(j+1))",
        SignPattern::candidates().len()
    ))
}

fn sample_horn(c: &DgCategory, seed: u64, n: usize, k: usize) -> HornData {
    let mut rng = rng_from_seed(seed);
    extract_horn(&Sampler::new(c, true).simplex(&mut rng, n), k).expect("horn")
}

fn criterion_3() -> Outcome {
    let mut total = 0;
    for (name, c) in [("A", complex_a()), ("B", complex_b())] {
        for (n, k) in HORN_GRID {
            for t in 0..100 {
                let s = derive_seed(3, (n * 10 + k) as u64 * 1000 + t);
                let h = sample_horn(&c, s, n, k);
                let ob = compute_obstruction(&c, &h).map_err(|e| format!("{name} ({n},{k}) seed {s}: {e}"))?;
                ensure(ob.verify(&c, &h), || format!("{name} ({n},{k}) seed {s}: identity fails"))?;
                total += 1;
            }
        }
    }
    Ok(format!("{total} horns, dU = 0 and the V identity hold exactly"))
}

fn criterion_4() -> Outcome {
    let mut total = 0;
    let mut inner = 0;
    for (name, c) in [("A", complex_a()), ("B", complex_b())] {
        for (n, k) in HORN_GRID {
            for t in 0..100 {
                let s = derive_seed(4, (n * 10 + k) as u64 * 1000 + t);
                let h = sample_horn(&c, s, n, k);
                let tag = || format!("{name} ({n},{k}) seed {s}");
                let f = if 0 < k && k < n {
                    reset_witness_calls();
                    let f = fill_inner(&c, &h).map_err(|e| format!("{}: {e}", tag()))?;
                    ensure(witness_calls() == 0, || format!("{}: inner fill used the witness solver", tag()))?;
                    inner += 1;
                    f
                } else {
                    fill(&c, &h).map_err(|e| format!("{}: {e}", tag()))?
                };
                let done = f.complete(&h);
                ensure(validate_simplex(&c, &done).is_empty(), || format!("{}: filler invalid", tag()))?;
                if n == 2 && (k == 0 || k == n) {
                    ensure(validate_star(&c, &done).is_empty(), || format!("{}: new edge not invertible", tag()))?;
                }
                total += 1;
            }
        }
    }
    Ok(format!("{total} fillers validate, {inner} inner fills with 0 witness calls"))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut total = 0;
    for m in 1..=2 {
        let c = twisted(m).category;
        let reduced = c.reduce();
        let ring = c.ring();
        for (n, k) in HORN_GRID {
            for t in 0..50 {
                let s = derive_seed(5 + m as u64, (n * 10 + k) as u64 * 1000 + t);
                let tag = || format!("m = {m} ({n},{k}) seed {s}");
                let mut rng = rng_from_seed(s);
                let h = extract_horn(&Sampler::new(&c, true).simplex(&mut rng, n), k).expect("horn");
                let exact = fill(&c, &h).map_err(|e| format!("{}: {e}", tag()))?;
                let perturbed = exact.perturb_ideal(&mut rng, ring);
                let base = perturbed.reduce();
                ensure(validate_simplex(&reduced, &base.complete(&h.reduce())).is_empty(), || {
                    format!("{}: reduced filler invalid", tag())
                })?;
                for lifted in [lift_from(&c, &h, &perturbed), lift_filler(&c, &h, &base)] {
                    let lifted = lifted.map_err(|e| format!("{}: {e}", tag()))?;
                    ensure(lifted.correction.verify(&c, &h), || format!("{}: correction identities", tag()))?;
                    ensure(validate_simplex(&c, &lifted.filler.complete(&h)).is_empty(), || {
                        format!("{}: lift invalid", tag())
                    })?;
                    ensure(lifted.filler.reduce() == base, || format!("{}: lift does not reduce", tag()))?;
                }
                total += 1;
            }
        }
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(120), || format!("took {t:.1?}"))?;
    Ok(format!("{total} perturb-reduce-lift cycles over ideal rank 1 and 2, {:.1}s", t.as_secs_f64()))
}

fn criterion_6() -> Outcome {
    let fixtures = [
        ("A ⊗ Q[e]", tensor_with_ring(&complex_a(), SquareZeroRing::new(1))),
        ("B ⊗ Q[e]", tensor_with_ring(&complex_b(), SquareZeroRing::new(1))),
        ("A ⊗ Q[e1,e2]", tensor_with_ring(&complex_a(), SquareZeroRing::new(2))),
        ("exterior ⊗ Q[e]", tensor_with_ring(&exterior(), SquareZeroRing::new(1))),
    ];
    let (mut elements, mut mutants, mut equivalent, mut killed) = (0, 0, 0, 0);
    for (name, b) in &fixtures {
        let mut rng = rng_from_seed(6);
        for i in 0..50 {
            let x = i % b.num_objects();
            let mc = random_mc_element(&mut rng, b, x, "T");
            ensure(check_mc(b, &mc.eta).unwrap(), || format!("{name}: element {i} is not MC"))?;
            let t = twist(b, vec![mc.clone(), MCElement::zero(b, x)]).map_err(|e| format!("{name}: {e}"))?;
            ensure(t.category.check_axioms().is_empty(), || format!("{name}: twisted category {i} fails"))?;
            elements += 1;
            let dim = mc.eta.coords.len();
            if dim == 0 {
                continue;
            }
            for _ in 0..8 {
                let idx = rng.gen_range(0..dim);
                let delta = loop {
                    let d = small_element(&mut rng, b.ring());
                    if !d.is_zero() {
                        break d;
                    }
                };
                let mut eta = mc.eta.clone();
                eta.coords[idx] += &delta;
                mutants += 1;
                if check_mc(b, &eta).unwrap() {
                    equivalent += 1;
                    continue;
                }
                let bad = twist_unchecked(b, vec![MCElement::new("M", eta), MCElement::zero(b, x)]).unwrap();
                let mut report = Vec::new();
                bad.category.check_differential(&mut report);
                ensure(!report.is_empty(), || format!("{name}: mutant of element {i} survives"))?;
                killed += 1;
            }
        }
    }
    Ok(format!(
        "{elements} MC elements twist correctly; {killed}/{} non-MC mutants killed ({equivalent} mutants were MC again)",
        mutants - equivalent
    ))
}

fn cli(args: &[&str], dir: &std::path::Path) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_gpnerve"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("run gpnerve");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn criterion_7() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let runs: [&[&str]; 4] = [
        &["gp", "--fixture", "A", "--n", "3", "--k", "1", "--trials", "5", "--seed", "77", "--format", "json"],
        &["laws", "--fixture", "B", "--trials", "5", "--seed", "77", "--format", "json"],
        &["laws", "--fixture", "twisted1", "--trials", "3", "--seed", "9"],
        &["sample", "--fixture", "twisted2", "--n", "3", "--k", "0", "--seed", "5"],
    ];
    for args in runs {
        let (c1, o1) = cli(args, dir.path());
        let (c2, o2) = cli(args, dir.path());
        ensure(c1 == 0 && c2 == 0, || format!("{args:?} exited with {c1}, {c2}"))?;
        ensure(o1 == o2, || format!("{args:?} is not reproducible"))?;
    }
    let mut docs = 0;
    for (name, c) in all_fixtures() {
        let text = to_text(&category_to_json(&c));
        let back = category_from_json(&parse_text(&text).unwrap()).map_err(|e| format!("{name}: {e}"))?;
        ensure(back == c && to_text(&category_to_json(&back)) == text, || format!("{name}: category"))?;
        let mut rng = rng_from_seed(7);
        let sigma = Sampler::new(&c, true).simplex(&mut rng, 3);
        let sv = simplex_to_json(&c, &sigma, None);
        ensure(simplex_from_json(&parse_text(&to_text(&sv)).unwrap(), &c).unwrap() == sigma, || {
            format!("{name}: simplex")
        })?;
        for k in 0..=3 {
            let h = extract_horn(&sigma, k).unwrap();
            let hv = parse_text(&to_text(&horn_to_json(&c, &h, Some(category_to_json(&c))))).unwrap();
            ensure(horn_from_json(&hv, &c).unwrap() == h, || format!("{name}: horn {k}"))?;
            let f = fill(&c, &h).map_err(|e| format!("{name}: {e}"))?;
            let fv = parse_text(&to_text(&filler_to_json(&f))).unwrap();
            ensure(filler_from_json(&fv, &c, &h).unwrap() == f, || format!("{name}: filler {k}"))?;
            docs += 2;
        }
        for x in 0..c.num_objects() {
            let mc = random_mc_element(&mut rng, &c, x, format!("m{x}"));
            let mv = parse_text(&to_text(&mc_to_json(&c, &mc))).unwrap();
            ensure(mc_from_json(&mv, &c).unwrap() == mc, || format!("{name}: mc"))?;
            docs += 1;
        }
        docs += 2;
    }
    Ok(format!("4 seeded CLI runs byte-identical; {docs} documents round-trip"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("law suite", criterion_1),
        ("sign calibration", criterion_2),
        ("obstruction identities", criterion_3),
        ("horn filling", criterion_4),
        ("formal smoothness round trip", criterion_5),
        ("MC twisting", criterion_6),
        ("CLI determinism", criterion_7),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let id = format!("criterion {}", i + 1);
        if !filter.is_empty() && !filter.iter().any(|p| id.contains(p.as_str()) || name.contains(p.as_str())) {
            continue;
        }
        let result = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match result {
            Ok(detail) => println!("{id} ({name}): PASS: {detail}"),
            Err(why) => {
                failed += 1;
                println!("{id} ({name}): FAIL: {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
