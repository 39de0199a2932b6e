//! JSON rendering of library values. Scalars print as decimal strings so
//! reports stay valid JSON at any magnitude; numbers and matrices use the
//! CLI grammar.

use cfred::exact::fmt_rational;
use cfred::hurwitz::{MBound, SyncBound, SyncResult};
use cfred::membership::MembershipReport;
use cfred::{Int, Pgl, ProjRat, Quad, Rat};
use serde_json::{json, Value};

pub fn matrix_json(g: &Pgl) -> Value {
    let [[a, b], [c, d]] = g.to_array();
    json!([[a.to_string(), b.to_string()], [c.to_string(), d.to_string()]])
}

pub fn quad_json(x: &Quad) -> Value {
    Value::String(x.to_string())
}

pub fn rational_json(r: &Rat) -> Value {
    Value::String(fmt_rational(r))
}

pub fn proj_json(p: &ProjRat) -> Value {
    Value::String(p.to_string())
}

pub fn mbound_json(m: &Option<MBound<Int>>) -> Value {
    match m {
        None => Value::Null,
        Some(m) => json!({
            "value": rational_json(&m.value),
            "convergent_count": m.r,
            "log_clamped": m.log_clamped,
        }),
    }
}

pub fn sync_bound_json(b: &SyncBound<Int>) -> Value {
    json!({
        "gamma": matrix_json(&b.gamma),
        "gamma_inf": proj_json(&b.gamma_inf),
        "gamma_inv_inf": proj_json(&b.gamma_inv_inf),
        "m_forward": mbound_json(&b.m_forward),
        "m_backward": mbound_json(&b.m_backward),
        "n_value": rational_json(&b.n_value),
        "n_floor": b.n_floor,
    })
}

pub fn sync_result_json(r: &SyncResult<Int>) -> Value {
    json!({
        "s": r.s,
        "t": r.t,
        "common_remainder": quad_json(&r.common_remainder),
        "within_bound": r.within_bound,
        "bound": sync_bound_json(&r.bound),
    })
}

pub fn membership_report_json(r: &MembershipReport<Int>) -> Value {
    let matrices = |v: &[Pgl]| -> Value { v.iter().map(matrix_json).collect() };
    json!({
        "theorem": r.theorem,
        "x": quad_json(&r.x),
        "height_bound": r.height_bound,
        "matched": r.matched,
        "missing_from_gamma_set": matrices(&r.missing_from_gamma_set),
        "extra_in_gamma_set": matrices(&r.extra_in_gamma_set),
        "exceptional_w1": matrices(&r.exceptional_w1),
        "exceptional_w2": matrices(&r.exceptional_w2),
        "expected_w1": r.expected_w1,
        "expected_w2": r.expected_w2,
        "prefix_excluded": r.prefix_excluded,
        "clean": r.is_clean(),
    })
}

/// One suite record; the suite sorts these by `(check, input)` before
/// emission.
pub fn record(check: &str, input: &str, ok: bool, detail: Value) -> Value {
    json!({
        "check": check,
        "input": input,
        "status": if ok { "pass" } else { "fail" },
        "detail": detail,
    })
}
