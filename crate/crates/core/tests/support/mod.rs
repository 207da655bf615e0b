//! Property checks shared by the proptest suite and the acceptance harness.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use eaqmds_core::arith::gcd;
use eaqmds_core::codecheck::{
    bch_bound, build_cyclic_code, hermitian_dual_basis, true_min_distance, DistanceOutcome, WorkingField,
};
use eaqmds_core::cosets::{coset_partition, decompose_defining_set, max_consecutive_run, neg_q_image};
use eaqmds_core::engine::{derive, eaqec_params};
use eaqmds_core::field::DEFAULT_TABLE_CAP;
use eaqmds_core::{CosetContext, DefiningSet};
use proptest::prelude::*;

pub const SMALL_Q: [u64; 8] = [3, 5, 7, 9, 11, 13, 25, 27];

/// (q, n) with n <= max_n and gcd(n, q) = 1.
pub fn context_strategy(max_n: u64) -> impl Strategy<Value = CosetContext> {
    (prop::sample::select(SMALL_Q.to_vec()), 2..=max_n)
        .prop_filter("n coprime to q", |&(q, n)| gcd(n, q) == 1)
        .prop_map(|(q, n)| CosetContext::new(n, q).expect("valid context"))
}

/// A random union of q^2-cyclotomic cosets in Z_n.
pub fn coset_union_strategy(max_n: u64) -> impl Strategy<Value = DefiningSet> {
    context_strategy(max_n).prop_flat_map(|ctx| {
        let parts = coset_partition(ctx);
        prop::collection::vec(any::<bool>(), parts.len()).prop_map(move |pick| union_of(ctx, &parts, &pick))
    })
}

pub fn union_of(ctx: CosetContext, parts: &[DefiningSet], pick: &[bool]) -> DefiningSet {
    let residues = parts
        .iter()
        .zip(pick)
        .filter(|(_, &b)| b)
        .flat_map(|(c, _)| c.residues().to_vec());
    DefiningSet::new(ctx, residues).expect("union of cosets is closed")
}

fn set_of(s: &DefiningSet) -> BTreeSet<u64> {
    s.residues().iter().copied().collect()
}

pub fn involution(s: &DefiningSet) -> Result<(), String> {
    let twice = neg_q_image(&neg_q_image(s));
    if twice != *s {
        return Err(format!("-q applied twice changed {s}"));
    }
    Ok(())
}

pub fn decomposition_laws(s: &DefiningSet) -> Result<(), String> {
    let ctx = *s.context();
    let dec = decompose_defining_set(s);
    let t = set_of(s);
    let ss = set_of(&dec.t_ss);
    let as_ = set_of(&dec.t_as);
    let expected_ss: BTreeSet<u64> = t.iter().copied().filter(|&x| t.contains(&ctx.neg_q(x))).collect();
    if ss != expected_ss {
        return Err(format!("t_ss differs from brute force for {s}"));
    }
    if !ss.is_disjoint(&as_) {
        return Err("t_ss and t_as overlap".into());
    }
    if ss.union(&as_).copied().collect::<BTreeSet<_>>() != t {
        return Err("t_ss and t_as do not cover T".into());
    }
    if set_of(&neg_q_image(&dec.t_ss)) != ss {
        return Err("t_ss not stable under -q".into());
    }
    if !set_of(&neg_q_image(&dec.t_as)).is_disjoint(&as_) {
        return Err("-q t_as meets t_as".into());
    }
    if !dec.check_laws() {
        return Err("check_laws rejected a computed decomposition".into());
    }
    Ok(())
}

pub fn partition_cover(ctx: CosetContext) -> Result<(), String> {
    let mut seen = vec![false; ctx.n() as usize];
    for c in coset_partition(ctx) {
        for &x in c.residues() {
            if std::mem::replace(&mut seen[x as usize], true) {
                return Err(format!("residue {x} in two cosets (n={}, q={})", ctx.n(), ctx.q()));
            }
        }
    }
    if seen.iter().any(|&b| !b) {
        return Err(format!("partition misses residues (n={}, q={})", ctx.n(), ctx.q()));
    }
    Ok(())
}

/// k identity, nonnegative defect, and monotonicity under adding a coset.
pub fn engine_laws(s: &DefiningSet, extra: Option<&DefiningSet>) -> Result<(), String> {
    let (p, sizes) = derive(s);
    let n = s.context().n() as i64;
    if p.k + 2 * sizes.t as i64 - sizes.t_ss as i64 != n {
        return Err(format!("k identity fails for {s}: {p}"));
    }
    if !s.is_empty() && p.defect() < 0 {
        return Err(format!("negative defect for {s}: {p}"));
    }
    if let Some(c) = extra {
        let bigger = s.union(c).map_err(|e| e.to_string())?;
        let k2 = eaqec_params(&bigger).k;
        if k2 > p.k {
            return Err(format!("adding {c} raised k from {} to {k2}", p.k));
        }
    }
    Ok(())
}

/// Small codes: BCH bound, Singleton bound, root round trip, dual dimension.
/// Returns Ok(false) when the code is too large for exhaustive distance.
pub fn code_laws(wf: &Arc<WorkingField>, s: &DefiningSet, budget: u64) -> Result<bool, String> {
    let code = build_cyclic_code(wf, s).map_err(|e| e.to_string())?;
    if code.roots() != s.residues() {
        return Err(format!("roots of g differ from T = {s}"));
    }
    let g = code.generator_matrix();
    let dual = hermitian_dual_basis(wf, &g).map_err(|e| e.to_string())?;
    if g.dimension() + dual.dimension() != code.n as usize {
        return Err(format!("dim C + dim dual != n for {s}"));
    }
    match true_min_distance(&code, budget) {
        DistanceOutcome::Exact { distance } => {
            if distance < bch_bound(s) {
                return Err(format!("d = {distance} below BCH bound {} for {s}", bch_bound(s)));
            }
            if distance > code.n - code.k_classical as u64 + 1 {
                return Err(format!("d = {distance} above Singleton for {s}"));
            }
            Ok(true)
        }
        DistanceOutcome::ZeroCode => Ok(true),
        DistanceOutcome::Abstained { .. } => Ok(false),
    }
}

/// Every coset union for (q, n), within the distance budget.
pub fn all_small_codes(q: u64, n: u64, budget: u64) -> Result<usize, String> {
    let ctx = CosetContext::new(n, q).map_err(|e| e.to_string())?;
    let wf = WorkingField::for_length(q, n, DEFAULT_TABLE_CAP).map_err(|e| e.to_string())?;
    let parts = coset_partition(ctx);
    let mut checked = 0;
    for mask in 0u32..(1 << parts.len()) {
        let pick: Vec<bool> = (0..parts.len()).map(|i| mask >> i & 1 == 1).collect();
        let s = union_of(ctx, &parts, &pick);
        if code_laws(&wf, &s, budget)? {
            checked += 1;
        }
    }
    Ok(checked)
}

pub fn run_is_full_iff_everything(s: &DefiningSet) -> Result<(), String> {
    let full = s.len() as u64 == s.context().n();
    if (max_consecutive_run(s) == s.context().n()) != full {
        return Err(format!("run = n mismatch for {s}"));
    }
    Ok(())
}
