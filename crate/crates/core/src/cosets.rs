//! q^2-cyclotomic cosets modulo n, the residue map x -> -qx, and the
//! symmetric/asymmetric split of a defining set.

use std::fmt;

use serde::Serialize;

use crate::arith::gcd;
use crate::error::{Error, Result};

/// Modulus, base field size and the coset multiplier q^2 mod n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CosetContext {
    n: u64,
    q: u64,
    multiplier: u64,
}

impl CosetContext {
    pub fn new(n: u64, q: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidContext { n, q, reason: "n must be at least 2" });
        }
        if gcd(n, q) != 1 {
            return Err(Error::InvalidContext { n, q, reason: "gcd(n, q) must be 1" });
        }
        let multiplier = ((q as u128 * q as u128) % n as u128) as u64;
        Ok(CosetContext { n, q, multiplier })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn multiplier(&self) -> u64 {
        self.multiplier
    }

    /// Reduces any integer into [0, n).
    pub fn reduce(&self, i: i64) -> u64 {
        i.rem_euclid(self.n as i64) as u64
    }

    /// (-q * x) mod n.
    pub fn neg_q(&self, x: u64) -> u64 {
        let qx = (self.q as u128 * x as u128 % self.n as u128) as u64;
        (self.n - qx) % self.n
    }

    fn times_multiplier(&self, x: u64) -> u64 {
        (x as u128 * self.multiplier as u128 % self.n as u128) as u64
    }

    /// Representative in the symmetric range (-n/2, n/2].
    pub fn symmetric(&self, x: u64) -> i64 {
        if 2 * x > self.n {
            x as i64 - self.n as i64
        } else {
            x as i64
        }
    }

    fn orbit(&self, i: u64) -> Vec<u64> {
        let mut out = vec![i];
        let mut x = self.times_multiplier(i);
        while x != i {
            out.push(x);
            x = self.times_multiplier(x);
        }
        out.sort_unstable();
        out
    }
}

/// A sorted, duplicate-free residue set in Z_n that is a union of q^2-cyclotomic cosets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DefiningSet {
    ctx: CosetContext,
    residues: Vec<u64>,
}

impl DefiningSet {
    /// Validates range and closure under multiplication by q^2.
    pub fn new(ctx: CosetContext, residues: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut residues: Vec<u64> = residues.into_iter().collect();
        if let Some(&r) = residues.iter().find(|&&r| r >= ctx.n) {
            return Err(Error::ResidueOutOfRange { residue: r, n: ctx.n });
        }
        residues.sort_unstable();
        residues.dedup();
        let set = DefiningSet { ctx, residues };
        if let Some(&r) = set
            .residues
            .iter()
            .find(|&&r| !set.contains(ctx.times_multiplier(r)))
        {
            return Err(Error::NotCosetClosed { n: ctx.n, missing: ctx.times_multiplier(r) });
        }
        Ok(set)
    }

    #[cfg(test)]
    pub(crate) fn unchecked(ctx: CosetContext, residues: Vec<u64>) -> Self {
        DefiningSet { ctx, residues }
    }

    pub fn empty(ctx: CosetContext) -> Self {
        DefiningSet { ctx, residues: Vec::new() }
    }

    /// Integers in the closed interval [lo, hi], reduced mod n, then validated.
    pub fn from_interval(ctx: CosetContext, lo: i64, hi: i64) -> Result<Self> {
        let residues = if hi < lo {
            Vec::new()
        } else if (hi - lo) as u64 + 1 >= ctx.n {
            (0..ctx.n).collect()
        } else {
            (lo..=hi).map(|i| ctx.reduce(i)).collect()
        };
        Self::new(ctx, residues)
    }

    /// Union of the cosets containing the given integers (any sign).
    pub fn from_coset_reps(ctx: CosetContext, reps: impl IntoIterator<Item = i64>) -> Self {
        let mut residues: Vec<u64> = reps
            .into_iter()
            .flat_map(|i| ctx.orbit(ctx.reduce(i)))
            .collect();
        residues.sort_unstable();
        residues.dedup();
        DefiningSet { ctx, residues }
    }

    pub fn context(&self) -> &CosetContext {
        &self.ctx
    }

    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn len(&self) -> usize {
        self.residues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.residues.binary_search(&x).is_ok()
    }

    /// Residues rendered in (-n/2, n/2], sorted ascending.
    pub fn symmetric_view(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self.residues.iter().map(|&r| self.ctx.symmetric(r)).collect();
        v.sort_unstable();
        v
    }

    fn same_ctx(&self, other: &DefiningSet) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn intersection(&self, other: &DefiningSet) -> Result<DefiningSet> {
        self.same_ctx(other)?;
        let residues = self.residues.iter().copied().filter(|&r| other.contains(r)).collect();
        Ok(DefiningSet { ctx: self.ctx, residues })
    }

    pub fn difference(&self, other: &DefiningSet) -> Result<DefiningSet> {
        self.same_ctx(other)?;
        let residues = self.residues.iter().copied().filter(|&r| !other.contains(r)).collect();
        Ok(DefiningSet { ctx: self.ctx, residues })
    }

    pub fn union(&self, other: &DefiningSet) -> Result<DefiningSet> {
        self.same_ctx(other)?;
        let mut residues = self.residues.clone();
        residues.extend_from_slice(&other.residues);
        residues.sort_unstable();
        residues.dedup();
        Ok(DefiningSet { ctx: self.ctx, residues })
    }

    /// Membership mask of length n.
    pub fn mask(&self) -> Vec<bool> {
        let mut m = vec![false; self.ctx.n as usize];
        for &r in &self.residues {
            m[r as usize] = true;
        }
        m
    }
}

impl fmt::Display for DefiningSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, r) in self.residues.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "}} mod {}", self.ctx.n)
    }
}

/// The coset of `i`: its orbit under multiplication by q^2 mod n.
pub fn cyclotomic_coset(i: u64, ctx: CosetContext) -> Result<DefiningSet> {
    if i >= ctx.n {
        return Err(Error::ResidueOutOfRange { residue: i, n: ctx.n });
    }
    Ok(DefiningSet { ctx, residues: ctx.orbit(i) })
}

/// All distinct cosets, ordered by least representative.
pub fn coset_partition(ctx: CosetContext) -> Vec<DefiningSet> {
    let mut seen = vec![false; ctx.n as usize];
    let mut out = Vec::new();
    for i in 0..ctx.n {
        if seen[i as usize] {
            continue;
        }
        let orbit = ctx.orbit(i);
        for &x in &orbit {
            seen[x as usize] = true;
        }
        out.push(DefiningSet { ctx, residues: orbit });
    }
    out
}

/// { -q s mod n : s in S }.
pub fn neg_q_image(s: &DefiningSet) -> DefiningSet {
    let mut residues: Vec<u64> = s.residues.iter().map(|&x| s.ctx.neg_q(x)).collect();
    residues.sort_unstable();
    DefiningSet { ctx: s.ctx, residues }
}

/// The split T = T_ss ∪ T_as with T_ss = -qT ∩ T.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub t_ss: DefiningSet,
    pub t_as: DefiningSet,
}

impl Decomposition {
    /// Reassembles a decomposition from parts, checking the partition laws.
    pub fn from_parts(t_ss: DefiningSet, t_as: DefiningSet) -> Result<Self> {
        let d = Decomposition { t_ss, t_as };
        if d.t_ss.context() != d.t_as.context() {
            return Err(Error::ContextMismatch);
        }
        if !d.check_laws() {
            return Err(Error::InvalidDecomposition);
        }
        Ok(d)
    }

    pub fn source(&self) -> DefiningSet {
        self.t_ss.union(&self.t_as).expect("parts share a context")
    }

    /// Disjointness, symmetry of T_ss, and -q T_as ∩ T_as = ∅.
    pub fn check_laws(&self) -> bool {
        let disjoint = self.t_ss.intersection(&self.t_as).map(|s| s.is_empty()) == Ok(true);
        let symmetric = neg_q_image(&self.t_ss) == self.t_ss;
        let asym = neg_q_image(&self.t_as)
            .intersection(&self.t_as)
            .map(|s| s.is_empty())
            == Ok(true);
        disjoint && symmetric && asym
    }
}

pub fn decompose_defining_set(t: &DefiningSet) -> Decomposition {
    let t_ss = neg_q_image(t).intersection(t).expect("same context");
    let t_as = t.difference(&t_ss).expect("same context");
    Decomposition { t_ss, t_as }
}

/// Longest run of circularly consecutive residues in T; n for the full set.
pub fn max_consecutive_run(t: &DefiningSet) -> u64 {
    let n = t.ctx.n;
    if t.len() as u64 == n {
        return n;
    }
    if t.is_empty() {
        return 0;
    }
    let mask = t.mask();
    // Start just after a gap so no run is split across the wrap.
    let start = mask.iter().position(|&b| !b).expect("set is not full");
    let (mut best, mut cur) = (0u64, 0u64);
    for k in 1..=n {
        if mask[((start as u64 + k) % n) as usize] {
            cur += 1;
            best = best.max(cur);
        } else {
            cur = 0;
        }
    }
    best
}
