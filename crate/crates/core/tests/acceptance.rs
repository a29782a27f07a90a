//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use beauville_core::check::Check;
use beauville_core::dsl::{parse, render_json, run_suite, Suite};
use beauville_core::exact::{int, rat, CstPoly, Rational};
use beauville_core::jacobian::{self, genus2_le1, genus2_obstruction, genus3_obstruction, genus_ge4};
use beauville_core::k3;
use beauville_core::llv::{
    build_primed_dictionary, build_triple, class_compatibility, verify_fourier_conjugacy, verify_sigma_triples,
    verify_lambda_triple, verify_triple, verify_verbitsky, FourClassModel, FourierOpMap, Generators,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const TS: [i64; 3] = [1, 2, -3];
const SIGNS: [(i64, i64); 4] = [(1, 1), (1, -1), (-1, 1), (-1, -1)];
const RANDOM_QUADRUPLES: usize = 25;

struct Outcome {
    passed: bool,
    summary: String,
}

fn outcome(checks: &[Check], extra: &str) -> Outcome {
    let bad: Vec<&Check> = checks.iter().filter(|c| !c.passed).collect();
    let mut summary = format!("{} checks, {} failed{extra}", checks.len(), bad.len());
    if let Some(c) = bad.first() {
        summary.push_str(&format!("; first: {} ({})", c.name, c.witness.as_deref().unwrap_or("")));
    }
    Outcome { passed: bad.is_empty(), summary }
}

/// Standard quadruples for every `t` and dimension, then seeded random ones.
fn models() -> Vec<FourClassModel> {
    let mut out = Vec::new();
    for t in TS {
        for dim in 6..=10 {
            out.push(FourClassModel::standard(2, &int(t), dim - 6).unwrap());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(20240601);
    for k in 0..RANDOM_QUADRUPLES {
        out.push(FourClassModel::random(2, &int(TS[k % 3]), k % 5, &mut rng).unwrap());
    }
    out
}

fn criterion1() -> Outcome {
    let start = Instant::now();
    let mut checks = Vec::new();
    for m in models() {
        checks.extend(verify_verbitsky(&Generators::<CstPoly>::new(&m).unwrap()));
    }
    let elapsed = start.elapsed();
    let mut o = outcome(&checks, &format!(", {} ms", elapsed.as_millis()));
    o.passed &= elapsed < Duration::from_secs(5);
    o
}

fn criterion2() -> Outcome {
    let mut checks = Vec::new();
    for m in models() {
        let g = Generators::<CstPoly>::new(&m).unwrap();
        checks.extend(verify_sigma_triples(&g));
        checks.extend(verify_lambda_triple(&g));
    }
    outcome(&checks, "")
}

struct Sweep {
    triple: Vec<Check>,
    conjugacy: Vec<Check>,
    compat: Vec<Check>,
}

fn sweep() -> Sweep {
    let mut s = Sweep { triple: Vec::new(), conjugacy: Vec::new(), compat: Vec::new() };
    for genus in 2..=12 {
        let model = FourClassModel::standard(genus, &int(1), 0).unwrap();
        let g = Generators::<CstPoly>::new(&model).unwrap();
        for (c0, c1) in SIGNS {
            let dict = build_primed_dictionary(&g, c0).unwrap();
            let map = FourierOpMap::new(c0, c1).unwrap();
            let t = build_triple(genus, &dict, &map).unwrap();
            s.triple.extend(verify_triple(&t, &g, &dict));
            s.conjugacy.extend(verify_fourier_conjugacy(&t, &dict, &map));
            s.compat.extend(class_compatibility(genus, c0, c1, &dict, &g).unwrap());
        }
    }
    s
}

fn criterion6() -> Outcome {
    let start = Instant::now();
    let checks = k3::verify_all().unwrap();
    let elapsed = start.elapsed();
    let mut o = outcome(&checks, &format!(", {} ms", elapsed.as_millis()));
    o.passed &= elapsed < Duration::from_secs(1);
    o
}

fn poly_is(p: &beauville_core::QPoly, c: [Rational; 3]) -> bool {
    (0..3).all(|k| p.coeff(k as u32) == c[k]) && p.degree() == Some(2)
}

fn criterion7() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    let g3 = genus3_obstruction().unwrap();
    let g3_ok = poly_is(&g3.polynomial, [rat(191, 224), int(-2), int(-36)])
        && g3.roots.is_empty()
        && !jacobian::is_rational_square(g3.discriminant.as_ref().unwrap());
    ok &= g3_ok;
    notes.push(format!("g=3: {}", g3.polynomial));
    let g2 = genus2_obstruction().unwrap();
    let g2_ok = poly_is(&g2.polynomial, [rat(11, 960), rat(-1, 32), int(-1)])
        && g2.roots.is_empty()
        && !jacobian::is_rational_square(g2.discriminant.as_ref().unwrap());
    ok &= g2_ok;
    notes.push(format!("g=2: {}", g2.polynomial));
    let le1 = genus2_le1().unwrap();
    ok &= le1.roots == BTreeSet::from([rat(-1, 48)]);
    notes.push(format!("<=1 node: b in {:?}", le1.roots.iter().map(|r| r.to_string()).collect::<Vec<_>>()));
    for g in 4..=12 {
        let r = genus_ge4(g).unwrap();
        ok &= r.from_weight == BTreeSet::from([rat(1, 2)]) && r.from_push == BTreeSet::from([rat(-1, 48)]) && r.contradiction();
    }
    notes.push("g=4..12: b = 1/2 vs b = -1/48".into());
    Outcome { passed: ok, summary: notes.join("; ") }
}

fn criterion8() -> Outcome {
    let checks = jacobian::theta_top_push_check(2..=12).unwrap();
    outcome(&checks, "")
}

fn criterion9() -> Outcome {
    let mut notes = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let jacobi_ok = (0..100).all(|_| {
        let n = 6;
        let (a, b, c) = (common::random_op(&mut rng, n), common::random_op(&mut rng, n), common::random_op(&mut rng, n));
        common::jacobiator(&a, &b, &c).is_zero()
    });
    notes.push(format!("jacobi 100/{}", if jacobi_ok { 100 } else { 0 }));
    let (n_mul, bad_mul) = common::rel_mul_associativity();
    let (n_comp, bad_comp) = common::compose_associativity();
    notes.push(format!("assoc rel_mul {n_mul} / rel_compose {n_comp} triples"));
    let round = common::CORPUS.iter().filter(|s| parse(s).map(|a| parse(&a.to_string()) == Ok(a)).unwrap_or(false)).count();
    notes.push(format!("round-trip {round}/{}", common::CORPUS.len()));
    let sel = [Suite::Llv { hdim: 8, t: int(2), trials: 3, seed: 5 }, Suite::ThetaObstruction { genus: 4 }];
    let stable = render_json(&run_suite(&sel, false).unwrap()) == render_json(&run_suite(&sel, false).unwrap());
    notes.push(format!("byte-stable {stable}"));
    let ok = jacobi_ok && bad_mul.is_empty() && bad_comp.is_empty() && round == common::CORPUS.len() && stable;
    Outcome { passed: ok, summary: notes.join("; ") }
}

fn main() -> ExitCode {
    let s = sweep();
    let results: Vec<(u32, &str, Outcome)> = vec![
        (1, "Verbitsky relations, t in {1,2,-3}, dims 6-10, 25 random quadruples, < 5 s", criterion1()),
        (2, "sigma/sigbar triples, mixed brackets, Lambda triple identities", criterion2()),
        (3, "Fourier-conjugate triple, g = 2..12, all sign pairs, cst symbolic", outcome(&s.triple, "")),
        (4, "Fourier conjugacy of the triple", outcome(&s.conjugacy, "")),
        (5, "Fourier matrix isometry and class compatibility", outcome(&s.compat, "")),
        (6, "K3 motive: projectors, sl2, stability, multiplicativity, BV push, < 1 s", criterion6()),
        (7, "theta obstruction constants", criterion7()),
        (8, "pi_*(theta^(g+1)/(g+1)!) = (1/48) delta", criterion8()),
        (9, "Jacobi, associativity, round-trip, byte stability", criterion9()),
    ];
    let mut all = true;
    for (n, what, o) in &results {
        all &= o.passed;
        println!("{} criterion {n}: {what} [{}]", if o.passed { "PASS" } else { "FAIL" }, o.summary);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
