//! The two cyclic-code families and exhaustive verifiers for the coset
//! identities their parameter formulas rest on.
//!
//! Family A uses length n = (q^2 - 1)/t and the defining set of residues of
//! the interval [-mq + m + 1, mq - m - 1]. Family B uses even length
//! n = (q^2 + 1)/t and the union of cosets C_0, ..., C_{(m-1)q}.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{divisors, odd_prime_power, odd_prime_powers};
use crate::cosets::{cyclotomic_coset, neg_q_image, CosetContext, DefiningSet};
use crate::engine::{certify, CertificateInputs, CheckResult, CheckSelection, CheckStatus, EAParams};
use crate::engine::Certificate;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    /// n | q^2 - 1.
    A,
    /// n | q^2 + 1, n even.
    B,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::A => "A",
            Family::B => "B",
        })
    }
}

impl Family {
    /// q^2 - 1 for A, q^2 + 1 for B.
    pub fn modulus_target(self, q: u64) -> u64 {
        match self {
            Family::A => q * q - 1,
            Family::B => q * q + 1,
        }
    }

    /// Smallest admissible m.
    pub fn min_m(self) -> u64 {
        match self {
            Family::A => 1,
            Family::B => 2,
        }
    }
}

/// floor((q + 1) / (4t)), the largest admissible m for both families.
pub fn max_m(q: u64, t: u64) -> u64 {
    (q + 1) / (4 * t)
}

/// floor((q - 1) / (2t)), the index bound used by the coset identities.
pub fn index_bound(q: u64, t: u64) -> u64 {
    (q - 1) / (2 * t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct FamilyInput {
    pub q: u64,
    pub t: u64,
    pub m: u64,
    pub family: Family,
    /// Allow m outside its admissible range.
    pub force: bool,
}

impl FamilyInput {
    pub fn new(family: Family, q: u64, t: u64, m: u64) -> Self {
        FamilyInput { q, t, m, family, force: false }
    }

    pub fn forced(mut self) -> Self {
        self.force = true;
        self
    }

    /// Code length; validates q, t and the parity of n but not m.
    pub fn length(&self) -> Result<u64> {
        odd_prime_power(self.q)?;
        let target = self.family.modulus_target(self.q);
        if self.t == 0 || target % self.t != 0 {
            return Err(Error::InvalidDivisor { t: self.t, target });
        }
        let n = target / self.t;
        if n < 2 {
            return Err(Error::InvalidLength { n, reason: "length must be at least 2" });
        }
        if self.family == Family::B && n % 2 == 1 {
            return Err(Error::OddLength(n));
        }
        Ok(n)
    }

    pub fn context(&self) -> Result<CosetContext> {
        CosetContext::new(self.length()?, self.q)
    }

    /// Whether m lies in [min_m, floor((q+1)/(4t))].
    pub fn m_in_range(&self) -> bool {
        (self.family.min_m()..=max_m(self.q, self.t)).contains(&self.m)
    }

    /// Full validation; out-of-range m passes only under force.
    pub fn validate(&self) -> Result<u64> {
        let n = self.length()?;
        if self.m == 0 {
            return Err(Error::ZeroM);
        }
        if !self.force && !self.m_in_range() {
            return Err(Error::MOutOfRange {
                m: self.m,
                lo: self.family.min_m(),
                hi: max_m(self.q, self.t),
            });
        }
        Ok(n)
    }

    /// Warning text when m is outside the admissible range.
    pub fn range_warning(&self) -> Option<String> {
        (!self.m_in_range()).then(|| {
            format!(
                "range violation: m={} outside [{}, floor((q+1)/(4t)) = {}]",
                self.m,
                self.family.min_m(),
                max_m(self.q, self.t)
            )
        })
    }

    pub fn defining_set(&self) -> Result<DefiningSet> {
        match self.family {
            Family::A => family_a_defining_set(self),
            Family::B => family_b_defining_set(self),
        }
    }

    pub fn params(&self) -> Result<EAParams> {
        match self.family {
            Family::A => family_a_params(self),
            Family::B => family_b_params(self),
        }
    }

    /// |T| claimed by the construction: 2qm - 2m - 1 or 2(m-1)q + 1.
    pub fn expected_set_size(&self) -> i64 {
        let (q, m) = (self.q as i64, self.m as i64);
        match self.family {
            Family::A => 2 * q * m - 2 * m - 1,
            Family::B => 2 * (m - 1) * q + 1,
        }
    }
}

fn expect_family(input: &FamilyInput, family: Family) -> Result<u64> {
    if input.family != family {
        return Err(Error::InvalidLength { n: 0, reason: "input belongs to the other family" });
    }
    input.validate()
}

/// Residues of [-mq + m + 1, mq - m - 1] modulo (q^2 - 1)/t.
pub fn family_a_defining_set(input: &FamilyInput) -> Result<DefiningSet> {
    expect_family(input, Family::A)?;
    let ctx = input.context()?;
    let (q, m) = (input.q as i64, input.m as i64);
    DefiningSet::from_interval(ctx, -m * q + m + 1, m * q - m - 1)
}

/// [[n, n - 4qm + 4m^2 + 3, 2m(q-1); (2m-1)^2]]_q
pub fn family_a_params(input: &FamilyInput) -> Result<EAParams> {
    let n = expect_family(input, Family::A)? as i64;
    let (q, m) = (input.q as i64, input.m as i64);
    Ok(EAParams::new(
        n,
        n - 4 * q * m + 4 * m * m + 3,
        2 * m * (q - 1),
        (2 * m - 1).pow(2),
        q,
    ))
}

/// C_0 ∪ C_1 ∪ ... ∪ C_{(m-1)q} modulo (q^2 + 1)/t.
pub fn family_b_defining_set(input: &FamilyInput) -> Result<DefiningSet> {
    expect_family(input, Family::B)?;
    let ctx = input.context()?;
    let top = ((input.m - 1) * input.q) as i64;
    Ok(DefiningSet::from_coset_reps(ctx, 0..=top))
}

/// [[n, n - 4mq + 4q + 4m^2 - 8m + 3, 2(m-1)q + 2; 4(m-1)^2 + 1]]_q
pub fn family_b_params(input: &FamilyInput) -> Result<EAParams> {
    let n = expect_family(input, Family::B)? as i64;
    let (q, m) = (input.q as i64, input.m as i64);
    Ok(EAParams::new(
        n,
        n - 4 * m * q + 4 * q + 4 * m * m - 8 * m + 3,
        2 * (m - 1) * q + 2,
        4 * (m - 1).pow(2) + 1,
        q,
    ))
}

/// Certificate for a family member: the engine derivation from the
/// constructed defining set, compared against the closed-form parameters.
pub fn certify_family(input: &FamilyInput, checks: CheckSelection) -> Result<Certificate> {
    let n = input.validate()?;
    let t = input.defining_set()?;
    let formula = input.params()?;
    let mut cert = certify(&t, Some(&formula), checks);
    cert.inputs = CertificateInputs {
        q: input.q,
        n,
        family: Some(input.family.to_string()),
        t: Some(input.t),
        m: Some(input.m),
        force: input.force,
        defining_set: None,
    };
    let expected = input.expected_set_size();
    cert.push_check(CheckResult::new(
        "defining_set_size",
        if t.len() as i64 == expected { CheckStatus::Pass } else { CheckStatus::Fail },
        format!("|T| = {}, construction size {expected}", t.len()),
    ));
    if let Some(w) = input.range_warning() {
        cert.warnings.push(w);
    }
    Ok(cert)
}

// ---------------------------------------------------------------------------
// Coset identity verifiers
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LemmaId {
    /// -q C_{aq+b} = C_{-bq-a} for n | q^2 - 1.
    SwapIdentityA,
    /// The asymmetric block T_0 of family A satisfies -qT_0 ∩ T_0 = ∅.
    AsymmetricBlockA,
    /// -q C_{cq+d} = C_{dq-c} for n | q^2 + 1.
    SwapIdentityB,
    /// The asymmetric block T_1 of family B satisfies -qT_1 ∩ T_1 = ∅.
    AsymmetricBlockB,
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LemmaId::SwapIdentityA => "swap_identity_a",
            LemmaId::AsymmetricBlockA => "asymmetric_block_a",
            LemmaId::SwapIdentityB => "swap_identity_b",
            LemmaId::AsymmetricBlockB => "asymmetric_block_b",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LemmaStatus {
    Pass,
    Fail,
    /// Nothing to check: the parameter ranges are empty.
    Vacuous,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub lemma: LemmaId,
    pub q: u64,
    pub t: u64,
    pub n: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    pub ranges: String,
    pub cases: usize,
    pub counterexamples: Vec<String>,
    pub status: LemmaStatus,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl LemmaReport {
    fn finish(mut self) -> Self {
        self.status = if self.cases == 0 {
            LemmaStatus::Vacuous
        } else if self.counterexamples.is_empty() {
            LemmaStatus::Pass
        } else {
            LemmaStatus::Fail
        };
        self
    }

    fn start(lemma: LemmaId, q: u64, t: u64, n: u64, m: Option<u64>, ranges: String) -> Self {
        LemmaReport {
            lemma,
            q,
            t,
            n,
            m,
            ranges,
            cases: 0,
            counterexamples: Vec::new(),
            status: LemmaStatus::Vacuous,
            notes: Vec::new(),
        }
    }
}

/// Limits the stored counterexample list; the count is always exact in `cases`.
const MAX_LISTED: usize = 32;

fn coset_of(ctx: CosetContext, i: i64) -> DefiningSet {
    cyclotomic_coset(ctx.reduce(i), ctx).expect("reduced residue is in range")
}

fn context_for(family: Family, q: u64, t: u64) -> Result<CosetContext> {
    // m is irrelevant for the context; use the family minimum.
    FamilyInput::new(family, q, t, family.min_m()).context()
}

/// Checks -q C_{aq+b} = C_{-bq-a} in Z_{(q^2-1)/t} for all |a|, |b| <= B,
/// B = floor((q-1)/(2t)), except (a, b) = (-B, -B) which is evaluated separately
/// and recorded as a note. When B = 0 that pair is the only one and is checked.
pub fn verify_swap_identity_a(q: u64, t: u64) -> Result<LemmaReport> {
    let ctx = context_for(Family::A, q, t)?;
    let bound = index_bound(q, t) as i64;
    let (qi, bi) = (q as i64, bound);
    let mut report = LemmaReport::start(
        LemmaId::SwapIdentityA,
        q,
        t,
        ctx.n(),
        None,
        format!("-{bound} <= a, b <= {bound}, (a, b) != (-{bound}, -{bound})"),
    );
    let check = |a: i64, b: i64| neg_q_image(&coset_of(ctx, a * qi + b)) == coset_of(ctx, -b * qi - a);
    for a in -bi..=bi {
        for b in -bi..=bi {
            if (a, b) == (-bi, -bi) && bound > 0 {
                continue;
            }
            report.cases += 1;
            if !check(a, b) && report.counterexamples.len() < MAX_LISTED {
                report.counterexamples.push(format!("(a, b) = ({a}, {b})"));
            }
        }
    }
    if bound > 0 {
        let holds = check(-bi, -bi);
        report.notes.push(format!(
            "excluded pair (a, b) = (-{bound}, -{bound}) evaluated separately: identity {}",
            if holds { "holds" } else { "fails" }
        ));
    }
    Ok(report.finish())
}

/// The asymmetric block T_0 = ∪_{i = -m..m-1, i != 0} A_i built from its
/// three-case definition, then checked for -qT_0 ∩ T_0 = ∅.
pub fn verify_asymmetric_block_a(q: u64, t: u64, m: u64) -> Result<LemmaReport> {
    let input = FamilyInput::new(Family::A, q, t, m);
    input.validate()?;
    let ctx = input.context()?;
    let (qi, mi) = (q as i64, m as i64);
    let mut raw: Vec<i64> = Vec::new();
    for i in -mi..mi {
        if i == 0 {
            continue;
        }
        if i == -mi {
            raw.extend((mi + 1..=qi - mi).map(|j| -mi * qi + j));
        } else if i == mi - 1 {
            raw.extend((-qi + mi..=-mi - 1).map(|j| mi * qi + j));
        } else {
            raw.extend((mi..=qi - mi).map(|j| i * qi + j));
        }
    }
    let block = DefiningSet::from_coset_reps(ctx, raw);
    let image = neg_q_image(&block);
    let clash = image.intersection(&block).expect("same context");
    let mut report = LemmaReport::start(
        LemmaId::AsymmetricBlockA,
        q,
        t,
        ctx.n(),
        Some(m),
        format!("|T_0| = {}", block.len()),
    );
    report.cases = block.len();
    report.counterexamples = clash
        .symmetric_view()
        .into_iter()
        .take(MAX_LISTED)
        .map(|x| format!("x = {x}: -q x = {}", ctx.symmetric(ctx.neg_q(ctx.reduce(x)))))
        .collect();
    if !clash.is_empty() {
        report.notes.push(format!("{} residues of T_0 map back into T_0", clash.len()));
    }
    Ok(report.finish())
}

/// Checks -q C_{cq+d} = C_{dq-c} in Z_{(q^2+1)/t} for 1 <= c <= B, 0 <= d <= B.
pub fn verify_swap_identity_b(q: u64, t: u64) -> Result<LemmaReport> {
    let ctx = context_for(Family::B, q, t)?;
    let bound = index_bound(q, t) as i64;
    let qi = q as i64;
    let mut report = LemmaReport::start(
        LemmaId::SwapIdentityB,
        q,
        t,
        ctx.n(),
        None,
        format!("1 <= c <= {bound}, 0 <= d <= {bound}"),
    );
    for c in 1..=bound {
        for d in 0..=bound {
            report.cases += 1;
            let ok = neg_q_image(&coset_of(ctx, c * qi + d)) == coset_of(ctx, d * qi - c);
            if !ok && report.counterexamples.len() < MAX_LISTED {
                report.counterexamples.push(format!("(c, d) = ({c}, {d})"));
            }
        }
    }
    Ok(report.finish())
}

/// T_1 = ∪ C_{cq+d} (0 <= c <= m-2, m <= d <= B) ∪ C_{eq-f} (1 <= e <= m-1,
/// m-1 <= f <= B), checked for -qT_1 ∩ T_1 = ∅.
pub fn verify_asymmetric_block_b(q: u64, t: u64, m: u64) -> Result<LemmaReport> {
    let input = FamilyInput::new(Family::B, q, t, m);
    input.validate()?;
    let ctx = input.context()?;
    let bound = index_bound(q, t) as i64;
    let (qi, mi) = (q as i64, m as i64);
    let mut reps = Vec::new();
    for c in 0..=mi - 2 {
        reps.extend((mi..=bound).map(|d| c * qi + d));
    }
    for e in 1..=mi - 1 {
        reps.extend((mi - 1..=bound).map(|f| e * qi - f));
    }
    let block = DefiningSet::from_coset_reps(ctx, reps);
    let clash = neg_q_image(&block).intersection(&block).expect("same context");
    let mut report = LemmaReport::start(
        LemmaId::AsymmetricBlockB,
        q,
        t,
        ctx.n(),
        Some(m),
        format!("c in [0, {}], d in [{m}, {bound}], e in [1, {}], f in [{}, {bound}]; |T_1| = {}", m - 2, m - 1, m - 1, block.len()),
    );
    report.cases = block.len();
    report.counterexamples = clash
        .symmetric_view()
        .into_iter()
        .take(MAX_LISTED)
        .map(|x| format!("x = {x}"))
        .collect();
    Ok(report.finish())
}

/// Divisors t of the family's target with an admissible length.
pub fn valid_divisors(family: Family, q: u64) -> Vec<u64> {
    divisors(family.modulus_target(q))
        .into_iter()
        .filter(|&t| FamilyInput::new(family, q, t, 1).length().is_ok())
        .collect()
}

/// Every identity verifier over all odd prime powers q <= q_max and all
/// valid t (and m). A (lemma, q, t) with no admissible m yields one vacuous
/// report without m.
pub fn lemma_sweep(q_max: u64) -> Vec<LemmaReport> {
    let mut jobs: Vec<(LemmaId, u64, u64, Option<u64>)> = Vec::new();
    for q in odd_prime_powers(3, q_max) {
        for (family, swap, block) in [
            (Family::A, LemmaId::SwapIdentityA, LemmaId::AsymmetricBlockA),
            (Family::B, LemmaId::SwapIdentityB, LemmaId::AsymmetricBlockB),
        ] {
            for t in valid_divisors(family, q) {
                jobs.push((swap, q, t, None));
                let ms: Vec<u64> = (family.min_m()..=max_m(q, t)).collect();
                if ms.is_empty() {
                    jobs.push((block, q, t, None));
                }
                jobs.extend(ms.into_iter().map(|m| (block, q, t, Some(m))));
            }
        }
    }
    jobs.into_par_iter()
        .map(|(lemma, q, t, m)| {
            let run = match (lemma, m) {
                (LemmaId::SwapIdentityA, _) => verify_swap_identity_a(q, t),
                (LemmaId::SwapIdentityB, _) => verify_swap_identity_b(q, t),
                (LemmaId::AsymmetricBlockA, Some(m)) => verify_asymmetric_block_a(q, t, m),
                (LemmaId::AsymmetricBlockB, Some(m)) => verify_asymmetric_block_b(q, t, m),
                (_, None) => {
                    let family = if lemma == LemmaId::AsymmetricBlockA { Family::A } else { Family::B };
                    let n = FamilyInput::new(family, q, t, 1).length().expect("valid divisor");
                    let ranges = format!("no m in [{}, {}]", family.min_m(), max_m(q, t));
                    return LemmaReport::start(lemma, q, t, n, None, ranges);
                }
            };
            run.expect("sweep only visits valid inputs")
        })
        .collect()
}

/// Enumeration mode for scans.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ScanOptions {
    /// Only this divisor, instead of all valid divisors.
    pub t: Option<u64>,
    /// Only this m, instead of all admissible m.
    pub m: Option<u64>,
    pub checks: CheckSelection,
}

/// Admissible inputs of the given families for q in [q_lo, q_hi].
pub fn admissible_inputs(q_lo: u64, q_hi: u64, families: &[Family], opts: &ScanOptions) -> Vec<FamilyInput> {
    let mut out = Vec::new();
    for q in odd_prime_powers(q_lo, q_hi) {
        for &family in families {
            for t in valid_divisors(family, q) {
                if opts.t.is_some_and(|ft| ft != t) {
                    continue;
                }
                for m in family.min_m()..=max_m(q, t) {
                    if opts.m.is_some_and(|fm| fm != m) {
                        continue;
                    }
                    out.push(FamilyInput::new(family, q, t, m));
                }
            }
        }
    }
    out
}

/// Certificates for every admissible input, sorted by (q, n, family, m).
pub fn scan_families(q_lo: u64, q_hi: u64, families: &[Family], opts: ScanOptions) -> Vec<Certificate> {
    let inputs = admissible_inputs(q_lo, q_hi, families, &opts);
    let mut certs: Vec<(FamilyInput, Certificate)> = inputs
        .into_par_iter()
        .map(|input| {
            let cert = certify_family(&input, opts.checks).expect("admissible input");
            (input, cert)
        })
        .collect();
    certs.sort_by_key(|(i, c)| (i.q, c.inputs.n, i.family, i.m));
    certs.into_iter().map(|(_, c)| c).collect()
}
