//! EAQEC parameters of a cyclic-code defining set, the EA-Singleton defect,
//! and machine-readable certificates.
//!
//! For a defining set T with symmetric part T_ss = -qT ∩ T the derived code is
//! [[n, n - 2|T| + |T_ss|, d; |T_ss|]]_q where d is the BCH bound (longest
//! run of consecutive residues in T, plus one). The engine never claims d is
//! exact on its own; see [`DistanceExactness`].

use std::fmt;

use serde::Serialize;

use crate::codecheck::{
    bch_bound, build_cyclic_code, check_hermitian_split, true_min_distance, DeskOptions,
    DistanceOutcome, WorkingField,
};
use crate::cosets::{decompose_defining_set, max_consecutive_run, DefiningSet};
use crate::error::Error;

/// Parameters [[n, k, d; c]]_q of an entanglement-assisted code.
///
/// Signed so that closed-form evaluations outside their admissible range
/// can be represented and reported rather than wrapped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct EAParams {
    pub n: i64,
    pub k: i64,
    pub d: i64,
    pub c: i64,
    pub q: i64,
}

impl EAParams {
    pub fn new(n: i64, k: i64, d: i64, c: i64, q: i64) -> Self {
        EAParams { n, k, d, c, q }
    }

    /// (n - k + c) - 2(d - 1); zero exactly for EAQMDS parameters.
    pub fn defect(&self) -> i64 {
        ea_singleton_defect(self)
    }

    pub fn in_range(&self) -> bool {
        (0..=self.n).contains(&self.k) && (0..=self.n).contains(&self.c) && self.d >= 1
    }
}

impl fmt::Display for EAParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{},{};{}]]_{}", self.n, self.k, self.d, self.c, self.q)
    }
}

pub fn ea_singleton_defect(p: &EAParams) -> i64 {
    (p.n - p.k + p.c) - 2 * (p.d - 1)
}

/// Sizes that feed the parameter formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SetSizes {
    #[serde(rename = "T")]
    pub t: u64,
    #[serde(rename = "T_ss")]
    pub t_ss: u64,
    pub run: u64,
}

/// Derived parameters together with the sizes they came from.
pub fn derive(t: &DefiningSet) -> (EAParams, SetSizes) {
    let ctx = t.context();
    let dec = decompose_defining_set(t);
    let run = max_consecutive_run(t);
    let n = ctx.n() as i64;
    let size = t.len() as i64;
    let c = dec.t_ss.len() as i64;
    let params = EAParams::new(n, n - 2 * size + c, run as i64 + 1, c, ctx.q() as i64);
    let sizes = SetSizes { t: size as u64, t_ss: c as u64, run };
    (params, sizes)
}

pub fn eaqec_params(t: &DefiningSet) -> EAParams {
    derive(t).0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Abstained,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

impl CheckResult {
    pub fn new(name: &str, status: CheckStatus, detail: impl Into<String>) -> Self {
        CheckResult { name: name.to_owned(), status, detail: detail.into() }
    }

    fn from_bool(name: &str, ok: bool, detail: impl Into<String>) -> Self {
        let status = if ok { CheckStatus::Pass } else { CheckStatus::Fail };
        Self::new(name, status, detail)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// How much is known about the recorded distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceExactness {
    /// The EA-Singleton bound meets the BCH bound, so d cannot be larger.
    PinnedByBound,
    BchLowerOnly,
    VerifiedExhaustively,
}

/// What was certified. Family fields are absent for raw defining sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateInputs {
    pub q: u64,
    pub n: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub force: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub defining_set: Option<Vec<u64>>,
}

impl CertificateInputs {
    pub fn raw(t: &DefiningSet) -> Self {
        CertificateInputs {
            q: t.context().q(),
            n: t.context().n(),
            family: None,
            t: None,
            m: None,
            force: false,
            defining_set: Some(t.residues().to_vec()),
        }
    }
}

/// A verification report. Serialized field order is part of the output contract.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub inputs: CertificateInputs,
    pub params: EAParams,
    pub sizes: SetSizes,
    pub defect: i64,
    pub checks: Vec<CheckResult>,
    pub verdict: Verdict,
    pub distance_exactness: DistanceExactness,
    pub warnings: Vec<String>,
}

impl Certificate {
    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn has_abstention(&self) -> bool {
        self.checks.iter().any(|c| c.status == CheckStatus::Abstained)
    }

    /// Appends a check and refreshes the verdict.
    pub fn push_check(&mut self, check: CheckResult) {
        self.checks.push(check);
        self.verdict = verdict_of(&self.checks);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

fn verdict_of(checks: &[CheckResult]) -> Verdict {
    if checks.iter().any(|c| c.status == CheckStatus::Fail) {
        Verdict::Fail
    } else {
        Verdict::Pass
    }
}

/// Which optional checks to run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CheckSelection {
    /// Realize the classical code and verify it exhaustively.
    pub desk: Option<DeskOptions>,
}

/// Field-by-field comparison; the detail lists every delta.
pub fn compare_params(derived: &EAParams, expected: &EAParams) -> CheckResult {
    let fields = [
        ("n", derived.n, expected.n),
        ("k", derived.k, expected.k),
        ("d", derived.d, expected.d),
        ("c", derived.c, expected.c),
        ("q", derived.q, expected.q),
    ];
    let mismatches: Vec<String> = fields
        .iter()
        .filter(|(_, a, b)| a != b)
        .map(|(name, a, b)| format!("{name}: derived {a} != expected {b} (delta {})", a - b))
        .collect();
    if mismatches.is_empty() {
        CheckResult::from_bool("expected_match", true, format!("derived {derived} equals expected"))
    } else {
        CheckResult::from_bool("expected_match", false, mismatches.join("; "))
    }
}

/// Derives parameters from T and runs the selected checks.
pub fn certify(t: &DefiningSet, expected: Option<&EAParams>, checks: CheckSelection) -> Certificate {
    let (params, sizes) = derive(t);
    let defect = params.defect();
    let mut results = vec![
        CheckResult::from_bool(
            "range_validity",
            params.in_range(),
            format!("0 <= k={} <= n, 0 <= c={} <= n", params.k, params.c),
        ),
        CheckResult::from_bool(
            "ea_singleton_bound",
            defect >= 0,
            format!("2(d-1) = {} <= n-k+c = {}", 2 * (params.d - 1), params.n - params.k + params.c),
        ),
        CheckResult::from_bool("eaqmds", defect == 0, format!("defect {defect}")),
    ];
    if let Some(exp) = expected {
        results.push(compare_params(&params, exp));
    }
    let mut exactness = if defect == 0 {
        DistanceExactness::PinnedByBound
    } else {
        DistanceExactness::BchLowerOnly
    };
    if let Some(opts) = checks.desk {
        let (desk, exact) = desk_checks(t, opts);
        if exact == Some(params.d as u64) {
            exactness = DistanceExactness::VerifiedExhaustively;
        }
        results.extend(desk);
    }
    Certificate {
        inputs: CertificateInputs::raw(t),
        params,
        sizes,
        defect,
        verdict: verdict_of(&results),
        checks: results,
        distance_exactness: exactness,
        warnings: Vec::new(),
    }
}

const DESK_CHECKS: [&str; 3] = ["generator_roots", "classical_distance", "hermitian_split"];

fn abstain_all(reason: &str) -> Vec<CheckResult> {
    DESK_CHECKS
        .iter()
        .map(|name| CheckResult::new(name, CheckStatus::Abstained, reason))
        .collect()
}

/// Desk-scale verification; returns the checks and the exact classical
/// distance when it was computed.
fn desk_checks(t: &DefiningSet, opts: DeskOptions) -> (Vec<CheckResult>, Option<u64>) {
    let ctx = t.context();
    let wf = match WorkingField::for_length(ctx.q(), ctx.n(), opts.field_cap) {
        Ok(wf) => wf,
        Err(e) => return (abstain_all(&e.to_string()), None),
    };
    let code = match build_cyclic_code(&wf, t) {
        Ok(c) => c,
        Err(e @ Error::TableCap { .. }) => return (abstain_all(&e.to_string()), None),
        Err(e) => {
            let fail = CheckResult::new("generator_roots", CheckStatus::Fail, e.to_string());
            return (vec![fail], None);
        }
    };
    let mut out = Vec::new();
    let roots = code.roots();
    out.push(CheckResult::from_bool(
        "generator_roots",
        roots == t.residues(),
        format!("deg g = {}, roots of g recover T: {}", code.generator.len() - 1, roots == t.residues()),
    ));

    let bch = bch_bound(t);
    let k_cl = code.k_classical as u64;
    let mut exact = None;
    out.push(match true_min_distance(&code, opts.distance_budget) {
        DistanceOutcome::Exact { distance } => {
            exact = Some(distance);
            let singleton = ctx.n() - k_cl + 1;
            let ok = distance >= bch && distance <= singleton;
            let mds = if distance == singleton { ", MDS" } else { "" };
            CheckResult::from_bool(
                "classical_distance",
                ok,
                format!("[{}, {}, {}] exact{mds}; BCH bound {bch}", ctx.n(), k_cl, distance),
            )
        }
        DistanceOutcome::ZeroCode => {
            CheckResult::new("classical_distance", CheckStatus::Pass, "zero code; no nonzero codewords")
        }
        DistanceOutcome::Abstained { required, budget } => CheckResult::new(
            "classical_distance",
            CheckStatus::Abstained,
            format!("{required} codewords exceed budget {budget}"),
        ),
    });

    let dec = decompose_defining_set(t);
    out.push(match check_hermitian_split(&wf, &dec) {
        Ok(r) => CheckResult::from_bool(
            "hermitian_split",
            r.holds(),
            format!(
                "dim(C1 ∩ C1^perpH) = {}; C2^perpH ⊆ C2: {}",
                r.symmetric_hull_dim, r.asymmetric_contains_dual
            ),
        ),
        Err(e) if e.is_resource() => {
            CheckResult::new("hermitian_split", CheckStatus::Abstained, e.to_string())
        }
        Err(e) => CheckResult::new("hermitian_split", CheckStatus::Fail, e.to_string()),
    });
    (out, exact)
}
