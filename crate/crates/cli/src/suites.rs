//! The verification suites and the report they produce.

use std::time::{Duration, Instant};

use gimso_core::coordalg::soundness::verify_soundness;
use gimso_core::coordalg::CoordAlgebra;
use gimso_core::homsuite::{
    build_image_table, derived_cartan, verify_coordinate_consequences, verify_gim_relations, verify_gradedness,
    GeneratorSymbol, ImageTable, Role,
};
use gimso_core::liealg::axioms::verify_lie_axioms;
use gimso_core::liealg::lemmas::verify_bracket_lemmas;
use gimso_core::liealg::{Shape, SoAlgebra};
use gimso_core::rootsys::{build_affinized_matrix, AffinizationSpec, GimMatrix, Source};
use gimso_core::witness::{evaluate, sample_targets, verify_witness, witness, TargetSpec};
use gimso_core::{Error, Result};
use serde_json::{json, Map, Value};

use crate::config::{RunConfig, Suite};

/// Random bracket words sampled by the grading suite.
pub const GRADING_WORDS: usize = 500;
/// Witness targets per shape.
pub const WITNESS_TARGETS: usize = 50;
/// Raw monomial length of sampled witness targets.
pub const WITNESS_MAX_LEN: usize = 4;
/// Random words normalized by the coords suite.
pub const REWRITE_WORDS: usize = 1000;
/// Raw length of those words.
pub const REWRITE_MAX_LEN: usize = 12;
/// Rewrite steps allowed per word.
pub const REWRITE_STEP_BOUND: usize = 10_000;
/// Failing records listed per suite in text output.
const TEXT_FAILURES: usize = 10;

/// Everything built from one affinization.
#[derive(Clone, Debug)]
pub struct Context {
    pub matrix: GimMatrix,
    pub table: ImageTable,
}

impl Context {
    pub fn build(spec: &AffinizationSpec) -> Result<Context> {
        let matrix = build_affinized_matrix(spec)?;
        let so = SoAlgebra::new(CoordAlgebra::new(spec)?);
        let table = build_image_table(spec, so)?;
        Ok(Context { matrix, table })
    }

    pub fn so(&self) -> &SoAlgebra {
        self.table.so()
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: Suite,
    pub ran: bool,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub records: Vec<Value>,
    /// Suite-specific data that is not a pass/fail record.
    pub extra: Map<String, Value>,
    pub elapsed: Duration,
}

impl SuiteReport {
    fn new(suite: Suite) -> Self {
        SuiteReport {
            suite,
            ran: true,
            passed: 0,
            failed: 0,
            skipped: 0,
            records: Vec::new(),
            extra: Map::new(),
            elapsed: Duration::ZERO,
        }
    }

    fn skipped_suite(suite: Suite) -> Self {
        SuiteReport { ran: false, skipped: 1, ..SuiteReport::new(suite) }
    }

    /// Add a record. `fields` come after `check` and `status`.
    fn record(&mut self, check: impl Into<String>, passed: bool, detail: Option<String>, fields: Value) {
        let mut obj = Map::new();
        obj.insert("check".into(), Value::String(check.into()));
        obj.insert("status".into(), Value::String(if passed { "pass" } else { "fail" }.into()));
        if let Value::Object(f) = fields {
            obj.extend(f);
        }
        if let Some(d) = detail {
            obj.insert("detail".into(), Value::String(d));
        }
        if passed {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
        self.records.push(Value::Object(obj));
    }

    fn skip(&mut self, check: impl Into<String>, reason: String) {
        self.skipped += 1;
        self.records.push(json!({ "check": check.into(), "status": "skip", "detail": reason }));
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("name".into(), json!(self.suite.name()));
        obj.insert("ran".into(), json!(self.ran));
        obj.insert("passed".into(), json!(self.passed));
        obj.insert("failed".into(), json!(self.failed));
        obj.insert("skipped".into(), json!(self.skipped));
        obj.extend(self.extra.clone());
        obj.insert("records".into(), Value::Array(self.records.clone()));
        Value::Object(obj)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug)]
pub struct RunReport {
    pub config: Value,
    pub matrix: Vec<Vec<i64>>,
    pub suites: Vec<SuiteReport>,
    pub build_time: Duration,
}

impl RunReport {
    pub fn summary(&self) -> Summary {
        let mut s = Summary::default();
        for r in &self.suites {
            s.passed += r.passed;
            s.failed += r.failed;
            s.skipped += r.skipped;
        }
        s
    }

    /// 0 iff no check failed.
    pub fn exit_status(&self) -> i32 {
        if self.summary().failed == 0 {
            0
        } else {
            1
        }
    }

    pub fn suite(&self, suite: Suite) -> Option<&SuiteReport> {
        self.suites.iter().find(|r| r.suite == suite)
    }

    /// The full report. Wall-clock data is confined to the `timings` key.
    pub fn to_json(&self) -> Value {
        let s = self.summary();
        let mut timings = Map::new();
        timings.insert("build_ms".into(), json!(millis(self.build_time)));
        for r in self.suites.iter().filter(|r| r.ran) {
            timings.insert(format!("{}_ms", r.suite.name()), json!(millis(r.elapsed)));
        }
        json!({
            "config": self.config,
            "matrix": self.matrix,
            "suites": self.suites.iter().map(SuiteReport::to_json).collect::<Vec<_>>(),
            "summary": { "passed": s.passed, "failed": s.failed, "skipped": s.skipped },
            "timings": timings,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let c = &self.config;
        out.push_str(&format!(
            "rank {}  adjoined {}  seed {}  trials {}\n",
            c["rank"], c["adjoined"], c["seed"], c["trials"]
        ));
        out.push_str("matrix:\n");
        out.push_str(&render_matrix(&self.matrix));
        for r in &self.suites {
            if !r.ran {
                out.push_str(&format!("[SKIP] {}\n", r.suite.name()));
                continue;
            }
            let tag = if r.failed == 0 { "PASS" } else { "FAIL" };
            out.push_str(&format!(
                "[{tag}] {:<9} {} passed, {} failed, {} skipped ({} ms)\n",
                r.suite.name(),
                r.passed,
                r.failed,
                r.skipped,
                millis(r.elapsed)
            ));
            for rec in r.records.iter().filter(|v| v["status"] == "fail").take(TEXT_FAILURES) {
                let detail = rec.get("detail").and_then(Value::as_str).unwrap_or("");
                out.push_str(&format!("    {}: {}\n", rec["check"].as_str().unwrap_or(""), detail));
            }
        }
        let s = self.summary();
        out.push_str(&format!("summary: {} passed, {} failed, {} skipped\n", s.passed, s.failed, s.skipped));
        out
    }
}

fn millis(d: Duration) -> u64 {
    d.as_millis() as u64
}

pub fn render_matrix(rows: &[Vec<i64>]) -> String {
    let width = rows.iter().flatten().map(|v| v.to_string().len()).max().unwrap_or(1);
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:>width$}")).collect();
        out.push_str(&format!("  [{}]\n", cells.join(" ")));
    }
    out
}

/// Build everything from the configured affinization and run the selected suites.
pub fn run(config: &RunConfig) -> Result<RunReport> {
    let start = Instant::now();
    let ctx = Context::build(&config.spec)?;
    let build_time = start.elapsed();
    let mut report = run_on(config, &ctx)?;
    report.build_time = build_time;
    Ok(report)
}

/// Run the selected suites against an already built context.
pub fn run_on(config: &RunConfig, ctx: &Context) -> Result<RunReport> {
    let mut suites = Vec::new();
    for suite in Suite::ORDER {
        if !config.suites.contains(&suite) {
            suites.push(SuiteReport::skipped_suite(suite));
            continue;
        }
        let start = Instant::now();
        let mut r = SuiteReport::new(suite);
        match suite {
            Suite::Matrix => matrix_suite(&mut r, ctx, &config.spec),
            Suite::Brackets => brackets_suite(&mut r, ctx, config)?,
            Suite::Coords => coords_suite(&mut r, ctx, config)?,
            Suite::Hom => hom_suite(&mut r, ctx)?,
            Suite::Grading => grading_suite(&mut r, ctx, config)?,
            Suite::Witness => witness_suite(&mut r, ctx, config)?,
            Suite::Selftest => selftest_suite(&mut r, ctx, config)?,
        }
        r.elapsed = start.elapsed();
        suites.push(r);
    }
    Ok(RunReport { config: config.echo(), matrix: ctx.matrix.rows().to_vec(), suites, build_time: Duration::ZERO })
}

/// Cartan matrix of `B_r` written out directly: the chain `-1`s, with the
/// `-2` where the short simple root pairs with its long neighbour.
pub fn b_cartan(r: usize) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; r]; r];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 2;
        if i > 0 {
            row[i - 1] = -1;
        }
        if i + 1 < r {
            row[i + 1] = -1;
        }
    }
    m[r - 1][r - 2] = -2;
    m
}

fn matrix_suite(r: &mut SuiteReport, ctx: &Context, spec: &AffinizationSpec) {
    let a = &ctx.matrix;
    let n = spec.rank() + spec.d();
    r.record("square", a.n() == n, (a.n() != n).then(|| format!("size {} instead of {n}", a.n())), json!({}));
    r.record("gim", a.is_gim(), (!a.is_gim()).then(|| "GIM conditions violated".into()), json!({}));
    let rank = spec.rank();
    let block: Vec<Vec<i64>> = a.rows()[..rank].iter().map(|row| row[..rank].to_vec()).collect();
    let ok = block == b_cartan(rank);
    r.record("base-block", ok, (!ok).then(|| format!("top-left block {block:?}")), json!({}));
}

fn brackets_suite(r: &mut SuiteReport, ctx: &Context, config: &RunConfig) -> Result<()> {
    let rep = verify_bracket_lemmas(ctx.so(), config.trials, config.seed)?;
    for o in &rep.outcomes {
        let detail = (o.failures > 0).then(|| format!("{} of {} checks failed", o.failures, o.checks));
        r.record(o.lemma.clone(), o.failures == 0, detail, json!({ "tuples": o.tuples, "checks": o.checks }));
    }
    let failures: Vec<Value> = rep
        .failures
        .iter()
        .map(|f| json!({ "lemma": f.lemma, "indices": f.indices, "a": f.a, "b": f.b, "lhs": f.lhs, "rhs": f.rhs }))
        .collect();
    r.extra.insert("checks".into(), json!(rep.checks()));
    r.extra.insert("failures".into(), Value::Array(failures));
    Ok(())
}

fn coords_suite(r: &mut SuiteReport, ctx: &Context, config: &RunConfig) -> Result<()> {
    let rep = verify_coordinate_consequences(&ctx.table)?;
    for c in &rep.checks {
        r.record(format!("{}: {}", c.kind, c.subject), c.passed, c.detail.clone(), json!({ "kind": c.kind }));
    }
    let alg = ctx.so().coords();
    let s = verify_soundness(alg, REWRITE_WORDS, REWRITE_MAX_LEN, REWRITE_STEP_BOUND, config.seed)?;
    let detail = |n: usize| (n > 0).then(|| s.failures.join("; "));
    r.record(
        "rewriting terminates",
        s.nonterminating == 0,
        detail(s.nonterminating),
        json!({ "words": s.words, "step_bound": s.step_bound, "max_steps": s.max_steps, "max_normal_len": s.max_normal_len }),
    );
    r.record("normal forms canonical", s.non_canonical == 0, detail(s.non_canonical), json!({ "words": s.words }));
    r.record(
        "eta involutive anti-automorphism",
        s.eta_failures == 0,
        detail(s.eta_failures),
        json!({ "words": s.words }),
    );
    r.record(
        "presentation eta-stable",
        s.stability_failures == 0,
        detail(s.stability_failures),
        json!({ "identities": s.stability_checks }),
    );
    r.extra.insert("rules".into(), json!(alg.rewrite_system().len()));
    r.extra.insert("max_lhs".into(), json!(alg.rewrite_system().max_lhs()));
    Ok(())
}

fn hom_suite(r: &mut SuiteReport, ctx: &Context) -> Result<()> {
    let rep = verify_gim_relations(&ctx.table, &ctx.matrix)?;
    for rec in &rep.records {
        r.record(
            format!("{} ({},{})", rec.id, rec.i + 1, rec.j + 1),
            rec.passed,
            rec.detail.clone(),
            json!({ "left": rec.left, "right": rec.right }),
        );
    }
    let derived = derived_cartan(&ctx.table)?;
    let ok = derived == ctx.matrix.rows();
    r.record("derived-cartan", ok, (!ok).then(|| format!("derived {derived:?}")), json!({}));
    let obs: Vec<Value> =
        rep.observations.iter().map(|o| json!({ "left": o.left, "right": o.right, "value": o.value })).collect();
    r.extra.insert("observations".into(), Value::Array(obs));
    Ok(())
}

fn grading_suite(r: &mut SuiteReport, ctx: &Context, config: &RunConfig) -> Result<()> {
    let rep = verify_gradedness(&ctx.table, GRADING_WORDS, config.seed)?;
    for sym in ctx.table.symbols() {
        let name = ctx.table.render_symbol(*sym);
        let bad = rep.image_failures.contains(&name);
        r.record(
            format!("image {name}"),
            !bad,
            bad.then(|| "image is not homogeneous of its assigned degree".into()),
            json!({}),
        );
    }
    let detail = (!rep.failures.is_empty()).then(|| {
        rep.failures
            .iter()
            .take(5)
            .map(|f| format!("{} (degree {}) = {}", f.word, f.degree, f.value))
            .collect::<Vec<_>>()
            .join("; ")
    });
    r.record(
        "bracket words",
        rep.failures.is_empty(),
        detail,
        json!({ "words": rep.words, "outside_delta": rep.outside_delta, "nonzero": rep.nonzero, "failures": rep.failures.len() }),
    );
    Ok(())
}

fn witness_suite(r: &mut SuiteReport, ctx: &Context, config: &RunConfig) -> Result<()> {
    for shape in Shape::ALL {
        for target in sample_targets(&ctx.table, shape, WITNESS_TARGETS, WITNESS_MAX_LEN, config.seed) {
            witness_record(r, ctx, &target);
        }
    }
    Ok(())
}

fn witness_record(r: &mut SuiteReport, ctx: &Context, target: &TargetSpec) {
    let name = target.render(&ctx.table);
    match verify_witness(target, &ctx.table) {
        Ok(w) => {
            r.record(name, w.passed, w.detail, json!({ "depth": w.depth, "size": w.size, "expression": w.expression }))
        }
        Err(Error::UnsupportedTarget(why)) => r.skip(name, why),
        Err(e) => r.record(name, false, Some(e.to_string()), json!({})),
    }
}

fn selftest_suite(r: &mut SuiteReport, ctx: &Context, config: &RunConfig) -> Result<()> {
    let ax = verify_lie_axioms(ctx.so(), config.trials, config.seed)?;
    let detail = (ax.failed() > 0).then(|| ax.failures.join("; "));
    r.record(
        "lie axioms",
        ax.failed() == 0,
        detail,
        json!({
            "triples": ax.triples,
            "antisymmetry_failures": ax.antisymmetry_failures,
            "jacobi_failures": ax.jacobi_failures,
            "membership_failures": ax.membership_failures,
        }),
    );

    // negative controls: each check must notice a corrupted image table
    let e1 = GeneratorSymbol::new(Role::E, Source::Base(1));
    let f1 = GeneratorSymbol::new(Role::F, Source::Base(1));
    let doubled = ctx.table.image(e1)?.scale(&gimso_core::scalar::Scalar::from_int(2));
    let mut scaled = ctx.table.clone();
    scaled.override_image(e1, doubled);
    let hom = verify_gim_relations(&scaled, &ctx.matrix)?;
    r.record(
        "negative control: hom",
        hom.failed() > 0,
        (hom.failed() == 0).then(|| "doubling e_1 went unnoticed".into()),
        json!({ "caught": hom.failed() }),
    );
    let mut swapped = ctx.table.clone();
    swapped.override_image(e1, ctx.table.image(f1)?.clone());
    let grading = verify_gradedness(&swapped, 0, config.seed)?;
    r.record(
        "negative control: grading",
        !grading.image_failures.is_empty(),
        grading.image_failures.is_empty().then(|| "replacing e_1 by f_1 went unnoticed".into()),
        json!({ "caught": grading.image_failures.len() }),
    );
    let target = TargetSpec::new(Shape::Vert, vec![1], Vec::new());
    let expr = witness(&target, &ctx.table)?;
    let off = evaluate(&expr, &scaled)? != target.element(&ctx.table)?;
    r.record(
        "negative control: witness",
        off,
        (!off).then(|| "witness evaluated on a corrupted table still matched".into()),
        json!({}),
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::parse_config;

    #[test]
    fn b_cartan_matches_pairings() {
        let roots = gimso_core::rootsys::base_roots(4).unwrap();
        let pairings: Vec<Vec<i64>> = roots
            .iter()
            .map(|a| roots.iter().map(|b| gimso_core::rootsys::cartan_pairing(a, b).unwrap()).collect())
            .collect();
        assert_eq!(b_cartan(4), pairings);
    }

    #[test]
    fn unselected_suites_are_skipped() {
        let c = parse_config(r#"{"rank":3,"suites":["matrix"]}"#).unwrap();
        let rep = run(&c).unwrap();
        assert_eq!(rep.suites.len(), 7);
        assert_eq!(rep.summary(), Summary { passed: 3, failed: 0, skipped: 6 });
        assert_eq!(rep.exit_status(), 0);
    }

    #[test]
    fn corrupted_table_fails_hom() {
        let c = parse_config(r#"{"rank":3,"adjoined":[{"root":[-1,-1,0]}],"suites":["hom"]}"#).unwrap();
        let mut ctx = Context::build(&c.spec).unwrap();
        let e = GeneratorSymbol::new(Role::E, Source::Adjoined { root: 0, copy: 1 });
        let wrong = ctx.table.image(GeneratorSymbol::new(Role::E, Source::Base(2))).unwrap().clone();
        ctx.table.override_image(e, wrong);
        let rep = run_on(&c, &ctx).unwrap();
        assert!(rep.summary().failed > 0);
        assert_eq!(rep.exit_status(), 1);
    }

    #[test]
    fn summary_counts_match_records() {
        let c = parse_config(r#"{"rank":3,"adjoined":[{"root":[1,0,-1]}],"trials":5}"#).unwrap();
        let rep = run(&c).unwrap();
        let v = rep.to_json();
        let mut counts = [0usize; 3];
        for s in v["suites"].as_array().unwrap() {
            for rec in s["records"].as_array().unwrap() {
                match rec["status"].as_str().unwrap() {
                    "pass" => counts[0] += 1,
                    "fail" => counts[1] += 1,
                    _ => counts[2] += 1,
                }
            }
            if !s["ran"].as_bool().unwrap() {
                counts[2] += 1;
            }
        }
        let s = &v["summary"];
        assert_eq!(
            [
                s["passed"].as_u64().unwrap() as usize,
                s["failed"].as_u64().unwrap() as usize,
                s["skipped"].as_u64().unwrap() as usize
            ],
            counts
        );
        assert_eq!(counts[1], 0, "{}", rep.to_text());
    }
}
