//! The suite runner: every per-value invariant check, both set-identity
//! verifications, and the synchronization grid, emitted as deterministic
//! JSON-line records sorted by (check, input).

use serde_json::{json, Value};

use cfred::cf_classic::{
    check_delta_chain, check_determinant_identity, check_farey_lemma,
    check_growth_inequalities, check_legendre, check_matrix_identities,
};
use cfred::cf_slow::{check_explicit_set, check_slow_consistency};
use cfred::error::CheckViolation;
use cfred::gl2::enumerate_by_height;
use cfred::hurwitz::{n_of, sync_indices_with_bound, SyncBound};
use cfred::membership::{
    check_inequality_soundness, verify_theorem1_with_box, verify_theorem2_with_box,
};
use cfred::{Error, Int, Pgl, Quad};

use crate::config::RunConfig;
use crate::report::{matrix_json, membership_report_json, record};

const LEGENDRE_MAX_DEN: i64 = 50;
const FAREY_MAX_DEN: i64 = 30;
const EXPLICIT_SET_LEVEL: usize = 8;

fn push_check(
    out: &mut Vec<(String, String, bool, Value)>,
    name: &str,
    input: &Quad,
    result: Result<(), CheckViolation>,
) {
    match result {
        Ok(()) => out.push((name.into(), input.to_string(), true, json!({}))),
        Err(v) => out.push((
            name.into(),
            input.to_string(),
            false,
            json!({ "violation": v.detail }),
        )),
    }
}

fn t4_record(
    x: &Quad,
    grid: &[(Pgl, SyncBound<Int>)],
) -> (bool, Value) {
    let mut failures = Vec::new();
    let mut max_s = 0usize;
    let mut max_t = 0usize;
    for (g, bound) in grid {
        match sync_indices_with_bound(g, x, bound.n_floor, bound.clone()) {
            Ok(r) if r.within_bound => {
                max_s = max_s.max(r.s);
                max_t = max_t.max(r.t);
            }
            Ok(r) => failures.push(json!({
                "gamma": matrix_json(g),
                "s": r.s,
                "t": r.t,
                "n_floor": bound.n_floor,
            })),
            Err(e) => failures.push(json!({
                "gamma": matrix_json(g),
                "error": e.to_string(),
            })),
        }
    }
    let ok = failures.is_empty();
    (
        ok,
        json!({
            "gamma_classes": grid.len(),
            "max_s": max_s,
            "max_t": max_t,
            "failures": failures,
        }),
    )
}

fn finish(mut results: Vec<(String, String, bool, Value)>) -> (Vec<String>, bool) {
    results.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
    let passed = results.iter().filter(|r| r.2).count();
    let failed = results.len() - passed;
    let mut lines: Vec<String> = results
        .into_iter()
        .map(|(check, input, ok, detail)| record(&check, &input, ok, detail).to_string())
        .collect();
    lines.push(
        record(
            "summary",
            "",
            failed == 0,
            json!({ "passed": passed, "failed": failed }),
        )
        .to_string(),
    );
    (lines, failed == 0)
}

/// Runs every check over the config corpus. Precondition violations
/// (insufficient depth for the requested height, rational corpus entries)
/// abort the run instead of producing records.
pub fn run_suite(cfg: &RunConfig) -> Result<(Vec<String>, bool), Error> {
    for x in &cfg.corpus {
        if x.is_rational() {
            return Err(Error::RationalInput);
        }
    }
    let box_elements = enumerate_by_height::<Int>(cfg.height_bound);
    let grid: Vec<(Pgl, SyncBound<Int>)> = enumerate_by_height::<Int>(cfg.gamma_height)
        .into_iter()
        .map(|g| {
            let b = n_of(&g);
            (g, b)
        })
        .collect();

    let mut results = Vec::new();
    for x in &cfg.corpus {
        push_check(&mut results, "classic-determinant", x, check_determinant_identity(x, cfg.depth));
        push_check(&mut results, "classic-growth", x, check_growth_inequalities(x, cfg.depth));
        push_check(&mut results, "classic-delta-chain", x, check_delta_chain(x, cfg.depth));
        push_check(&mut results, "classic-matrix-identity", x, check_matrix_identities(x, cfg.depth));
        push_check(&mut results, "legendre", x, check_legendre(x, LEGENDRE_MAX_DEN));
        push_check(&mut results, "farey-lemma", x, check_farey_lemma(x, FAREY_MAX_DEN));
        push_check(&mut results, "slow-consistency", x, check_slow_consistency(x, cfg.slow_steps));
        push_check(&mut results, "slow-explicit-set", x, check_explicit_set(x, EXPLICIT_SET_LEVEL));
        push_check(
            &mut results,
            "membership-soundness",
            x,
            check_inequality_soundness(x, cfg.depth, cfg.slow_steps),
        );

        let r1 = verify_theorem1_with_box(x, cfg.height_bound, cfg.depth, &box_elements)?;
        results.push((
            "t1".into(),
            x.to_string(),
            r1.is_clean(),
            membership_report_json(&r1),
        ));
        let r2 = verify_theorem2_with_box(x, cfg.height_bound, cfg.slow_steps, &box_elements)?;
        results.push((
            "t2".into(),
            x.to_string(),
            r2.is_clean(),
            membership_report_json(&r2),
        ));

        let (ok, detail) = t4_record(x, &grid);
        results.push(("t4".into(), x.to_string(), ok, detail));
    }
    Ok(finish(results))
}

/// The synchronization grid alone, for the standalone subcommand.
pub fn verify_t4_records(xs: &[Quad], height: i64) -> (Vec<String>, bool) {
    let grid: Vec<(Pgl, SyncBound<Int>)> = enumerate_by_height::<Int>(height)
        .into_iter()
        .map(|g| {
            let b = n_of(&g);
            (g, b)
        })
        .collect();
    let mut results = Vec::new();
    for x in xs {
        let (ok, detail) = t4_record(x, &grid);
        results.push(("t4".to_string(), x.to_string(), ok, detail));
    }
    finish(results)
}
