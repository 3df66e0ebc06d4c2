//! Acceptance run: every criterion prints one PASS or FAIL line, and the
//! process exits nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use gimso::suites::b_cartan;
use gimso::{parse_config, run};
use gimso_core::coordalg::soundness::verify_soundness;
use gimso_core::coordalg::CoordAlgebra;
use gimso_core::homsuite::{
    build_image_table, derived_cartan, verify_coordinate_consequences, verify_gim_relations, verify_gradedness,
    ImageTable,
};
use gimso_core::liealg::axioms::verify_lie_axioms;
use gimso_core::liealg::lemmas::{all_lemmas, verify_bracket_lemmas};
use gimso_core::liealg::{Shape, SoAlgebra};
use gimso_core::rootsys::{build_affinized_matrix, AffinizationSpec, Root};
use gimso_core::sample;
use gimso_core::witness::{sample_targets, verify_witness};
use serde_json::Value;

const SEED: u64 = 20_240_601;

/// Kac's generalized Cartan matrix of type B_3^(1), with the affine node
/// last and attached to the middle node.
const AFFINE_B3: [[i64; 4]; 4] = [[2, -1, 0, 0], [-1, 2, -1, -1], [0, -2, 2, 0], [0, -1, 0, 2]];

fn root(c: &[i32]) -> Root {
    Root::new(c.to_vec()).unwrap()
}

fn spec(r: usize, roots: &[(&[i32], usize)]) -> AffinizationSpec {
    AffinizationSpec::new(r, roots.iter().map(|(c, k)| (root(c), *k)).collect()).unwrap()
}

fn table(spec: &AffinizationSpec) -> ImageTable {
    build_image_table(spec, SoAlgebra::new(CoordAlgebra::new(spec).unwrap())).unwrap()
}

fn affine_b3() -> AffinizationSpec {
    spec(3, &[(&[-1, -1, 0], 1)])
}

/// Specs with noncommuting coordinates used for the bracket and axiom checks.
fn coordinate_rich(r: usize) -> AffinizationSpec {
    let mut v = vec![0i32; r];
    let (mut a, mut b) = (v.clone(), v.clone());
    a[0] = 1;
    a[1] = 1;
    b[0] = 1;
    b[2] = -1;
    v[1] = -1;
    v[2] = -1;
    AffinizationSpec::new(r, vec![(Root::new(a).unwrap(), 1), (Root::new(b).unwrap(), 2), (Root::new(v).unwrap(), 1)])
        .unwrap()
}

/// Affinizations for criteria 4 to 6: plain ranks, affine B3, then fixed and random mixed cases.
fn hom_specs() -> Vec<AffinizationSpec> {
    let mut out = Vec::new();
    for r in 3..=5 {
        out.push(AffinizationSpec::plain(r).unwrap());
    }
    out.push(affine_b3());
    let fixed = [
        // triple on an adjacent pair, both orientations of the difference root
        spec(3, &[(&[1, -1, 0], 1), (&[1, 1, 0], 1), (&[-1, -1, 0], 1)]),
        spec(3, &[(&[0, -1, 1], 1), (&[0, 1, 1], 1), (&[0, -1, -1], 1)]),
        // triple on a distant pair
        spec(3, &[(&[1, 0, -1], 1), (&[1, 0, 1], 1), (&[-1, 0, -1], 1)]),
        spec(4, &[(&[0, -1, 0, 1], 1), (&[0, 1, 0, 1], 1), (&[0, -1, 0, -1], 1)]),
        spec(4, &[(&[-1, 0, 0, 1], 1), (&[1, 0, 0, 1], 1), (&[-1, 0, 0, -1], 1)]),
        // duplicate copies
        spec(3, &[(&[1, 0, -1], 2), (&[1, 0, 1], 1)]),
        spec(4, &[(&[0, 1, 1, 0], 2), (&[0, 1, -1, 0], 1)]),
        spec(4, &[(&[-1, -1, 0, 0], 3)]),
        spec(3, &[(&[0, 1, -1], 1), (&[0, -1, -1], 2)]),
    ];
    out.extend(fixed.iter().cloned());
    let mut rng = sample::rng(SEED);
    let mut random = 0;
    while fixed.len() + random < 20 {
        let r = if random % 2 == 0 { 3 } else { 4 };
        out.push(sample::spec(&mut rng, r, 3, 2).unwrap());
        random += 1;
    }
    out
}

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { ok: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { ok: false, detail: detail.into() }
}

fn criterion_1() -> Outcome {
    let mut rng = sample::rng(SEED);
    let mut checked = 0;
    let (mut omega, mut theta, mut copies) = (0, 0, 0);
    for r in 3..=5 {
        let base = b_cartan(r);
        for _ in 0..200 {
            let s = sample::spec(&mut rng, r, 3, 2).unwrap();
            for (root, k) in s.adjoined() {
                if root.is_omega() {
                    omega += 1;
                } else {
                    theta += 1;
                }
                if *k > 1 {
                    copies += 1;
                }
            }
            let a = build_affinized_matrix(&s).unwrap();
            if !a.is_gim() {
                return fail(format!("not a GIM for {s:?}"));
            }
            let block: Vec<Vec<i64>> = a.rows()[..r].iter().map(|row| row[..r].to_vec()).collect();
            if block != base {
                return fail(format!("base block {block:?} for {s:?}"));
            }
            checked += 1;
        }
    }
    let a = build_affinized_matrix(&affine_b3()).unwrap();
    let want: Vec<Vec<i64>> = AFFINE_B3.iter().map(|r| r.to_vec()).collect();
    if a.rows() != want.as_slice() {
        return fail(format!("affine B3 matrix {:?}", a.rows()));
    }
    if omega == 0 || theta == 0 || copies == 0 {
        return fail("sampled specs did not mix Omega, Theta and copies");
    }
    pass(format!("{checked} random specs are GIMs with the B_r block; affine B3 matrix exact"))
}

fn criterion_2() -> Outcome {
    let mut checks = 0;
    for r in [3, 4] {
        let so = SoAlgebra::new(CoordAlgebra::new(&coordinate_rich(r)).unwrap());
        let rep = verify_bracket_lemmas(&so, 100, SEED).unwrap();
        if rep.outcomes.len() != all_lemmas().len() || rep.outcomes.len() != 15 {
            return fail(format!("{} lemmas checked", rep.outcomes.len()));
        }
        if rep.failed() > 0 {
            return fail(format!("r={r}: {} failures, first {:?}", rep.failed(), rep.failures.first()));
        }
        checks += rep.checks();
    }
    pass(format!("15 lemmas, every index tuple, {checks} exact checks at r=3,4"))
}

fn criterion_3() -> Outcome {
    let mut triples = 0;
    for r in [3, 4] {
        let so = SoAlgebra::new(CoordAlgebra::new(&coordinate_rich(r)).unwrap());
        let rep = verify_lie_axioms(&so, 200, SEED + r as u64).unwrap();
        if rep.failed() > 0 {
            return fail(format!("r={r}: {:?}", rep.failures));
        }
        triples += rep.triples;
    }
    pass(format!("antisymmetry, Jacobi and membership on {triples} random homogeneous triples"))
}

fn criterion_4(specs: &[AffinizationSpec]) -> Outcome {
    let mut relations = 0;
    for s in specs {
        let t = table(s);
        let a = build_affinized_matrix(s).unwrap();
        let rep = verify_gim_relations(&t, &a).unwrap();
        if rep.failed() > 0 {
            return fail(format!("{s:?}: {:?}", rep.failures().next()));
        }
        if derived_cartan(&t).unwrap() != a.rows() {
            return fail(format!("{s:?}: derived Cartan integers differ"));
        }
        relations += rep.records.len();
    }
    pass(format!("{relations} relation checks over {} specs, zero failures", specs.len()))
}

fn criterion_5(specs: &[AffinizationSpec]) -> Outcome {
    let kinds = ["inverse", "eta-fixed", "omega-plus", "theta-plus", "omega-minus", "theta-minus"];
    let mut counts = [0usize; 6];
    for s in specs {
        let rep = verify_coordinate_consequences(&table(s)).unwrap();
        if rep.failed() > 0 {
            return fail(format!("{s:?}: {:?}", rep.checks.iter().find(|c| !c.passed)));
        }
        for (k, c) in kinds.iter().zip(counts.iter_mut()) {
            *c += rep.count(k);
        }
    }
    if let Some(i) = counts.iter().position(|&c| c == 0) {
        return fail(format!("no `{}` checks were exercised", kinds[i]));
    }
    let parts: Vec<String> = kinds.iter().zip(counts).map(|(k, c)| format!("{k} {c}")).collect();
    pass(parts.join(", "))
}

fn criterion_6(specs: &[AffinizationSpec]) -> Outcome {
    let (mut words, mut outside) = (0, 0);
    for (i, s) in specs.iter().enumerate() {
        let rep = verify_gradedness(&table(s), 500, SEED + i as u64).unwrap();
        if rep.failed() > 0 {
            return fail(format!("{s:?}: {:?} {:?}", rep.image_failures, rep.failures.first()));
        }
        words += rep.words;
        outside += rep.outside_delta;
    }
    pass(format!("all images homogeneous; {words} bracket words, {outside} outside Delta and all zero"))
}

fn criterion_7() -> Outcome {
    let mut total = 0;
    for roots in [[&[-1, -1, 0][..], &[1, -1, 0][..]], [&[0, 1, 1][..], &[1, 0, -1][..]]] {
        let s = spec(3, &[(roots[0], 1), (roots[1], 1)]);
        let t = table(&s);
        let alg = t.so().coords();
        let (mut z_letters, mut inverses) = (0, 0);
        for shape in Shape::ALL {
            for target in sample_targets(&t, shape, 50, 4, SEED) {
                for &l in &target.monomial {
                    if alg.render_letter(l).starts_with('z') {
                        z_letters += 1;
                    }
                    if l.is_inverse() {
                        inverses += 1;
                    }
                }
                let rep = match verify_witness(&target, &t) {
                    Ok(rep) => rep,
                    Err(e) => return fail(format!("{}: {e}", target.render(&t))),
                };
                if !rep.passed {
                    return fail(format!("{}: {:?}", rep.target, rep.detail));
                }
                total += 1;
            }
        }
        if z_letters == 0 || inverses == 0 {
            return fail("targets did not include z letters and inverse letters");
        }
    }
    pass(format!("{total} witnesses evaluate exactly to their targets"))
}

fn criterion_8(specs: &[AffinizationSpec]) -> Outcome {
    let (mut max_steps, mut max_len, mut identities) = (0, 0, 0);
    for (i, s) in specs.iter().enumerate().filter(|(_, s)| s.d() > 0) {
        let alg = CoordAlgebra::new(s).unwrap();
        let rep = verify_soundness(&alg, 1000, 12, 10_000, SEED + i as u64).unwrap();
        if rep.failed() > 0 {
            return fail(format!("{s:?}: {:?}", rep.failures));
        }
        max_steps = max_steps.max(rep.max_steps);
        max_len = max_len.max(rep.max_normal_len);
        identities += rep.stability_checks;
    }
    pass(format!(
        "1000 words per spec normalized within 10000 steps (max {max_steps} steps, max normal length {max_len}); eta laws exact; {identities} eta-stability identities"
    ))
}

fn strip_timings(text: &[u8]) -> String {
    let mut v: Value = serde_json::from_slice(text).unwrap();
    v.as_object_mut().unwrap().remove("timings");
    serde_json::to_string(&v).unwrap()
}

fn criterion_9() -> Outcome {
    let cfg =
        r#"{"rank":3,"adjoined":[{"root":[-1,-1,0],"copies":1},{"root":[1,0,-1],"copies":2}],"trials":10,"seed":99}"#;
    let c = parse_config(cfg).unwrap();
    let a = strip_timings(serde_json::to_string(&run(&c).unwrap().to_json()).unwrap().as_bytes());
    let b = strip_timings(serde_json::to_string(&run(&c).unwrap().to_json()).unwrap().as_bytes());
    if a != b {
        return fail("library reports differ");
    }
    let dir = std::env::temp_dir().join(format!("gimso-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("config.json");
    std::fs::write(&path, cfg).unwrap();
    let mut outputs = Vec::new();
    for _ in 0..2 {
        let out = Command::new(env!("CARGO_BIN_EXE_gimso"))
            .args(["verify", "--config", path.to_str().unwrap()])
            .output()
            .unwrap();
        if out.status.code() != Some(0) {
            return fail(format!("verify exited with {:?}", out.status.code()));
        }
        outputs.push(out.stdout);
    }
    let (x, y) = (strip_timings(&outputs[0]), strip_timings(&outputs[1]));
    if x != y {
        return fail("binary reports differ");
    }
    if !String::from_utf8_lossy(&outputs[0]).contains("\"timings\"") {
        return fail("report has no timings key");
    }
    pass(format!("two runs byte-identical outside timings ({} bytes)", x.len()))
}

fn main() {
    let specs = hom_specs();
    type Check<'a> = (u32, &'a str, Duration, Box<dyn Fn() -> Outcome + 'a>);
    let criteria: Vec<Check> = vec![
        (1, "GIM construction", Duration::from_secs(1), Box::new(criterion_1)),
        (2, "bracket lemmas", Duration::from_secs(60), Box::new(criterion_2)),
        (3, "Lie axioms", Duration::from_secs(30), Box::new(criterion_3)),
        (4, "homomorphism relations", Duration::from_secs(300), Box::new(|| criterion_4(&specs))),
        (5, "coordinate consequences", Duration::from_secs(10), Box::new(|| criterion_5(&specs))),
        (6, "gradedness", Duration::from_secs(120), Box::new(|| criterion_6(&specs))),
        (7, "surjectivity witnesses", Duration::from_secs(120), Box::new(criterion_7)),
        (8, "coordinate algebra soundness", Duration::from_secs(10), Box::new(|| criterion_8(&specs))),
        (9, "determinism", Duration::from_secs(600), Box::new(criterion_9)),
    ];
    let mut failed = 0;
    for (n, name, limit, check) in &criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            fail(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let elapsed = start.elapsed();
        let in_time = elapsed <= *limit;
        let ok = outcome.ok && in_time;
        if !ok {
            failed += 1;
        }
        let timing = format!("{:.2}s, limit {}s", elapsed.as_secs_f64(), limit.as_secs());
        let late = if in_time { "" } else { " [over time limit]" };
        println!("criterion {n} {}: {name}: {} ({timing}){late}", if ok { "PASS" } else { "FAIL" }, outcome.detail);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
