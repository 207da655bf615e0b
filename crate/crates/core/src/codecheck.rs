//! Desk-scale realization of cyclic codes over GF(q^2).
//!
//! All arithmetic runs in a working field that contains a primitive n-th root
//! of unity: GF(q^2) itself when n | q^2 - 1, otherwise GF(q^4) when
//! n | q^4 - 1. Codes live over the subfield GF(q^2) of the working field,
//! identified as the elements fixed by x -> x^(q^2). The Hermitian
//! conjugation is x -> x^q restricted to that subfield.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::odd_prime_power;
use crate::cosets::{max_consecutive_run, Decomposition, DefiningSet};
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldElement, DEFAULT_TABLE_CAP};

/// Default number of codeword evaluations allowed for exhaustive distance.
pub const DEFAULT_DISTANCE_BUDGET: u64 = 1 << 24;

type Vector = Vec<FieldElement>;

/// A field large enough to hold primitive n-th roots of unity, with the
/// code alphabet GF(q^2) singled out inside it.
#[derive(Debug)]
pub struct WorkingField {
    field: FieldDescriptor,
    q: u64,
    /// log_p(q).
    q_exp: u32,
    /// Elements of GF(q^2) inside the working field; index 0 is zero.
    alphabet: Vec<FieldElement>,
}

impl WorkingField {
    /// Picks GF(q^2) or GF(q^4) depending on where n-th roots of unity live.
    pub fn for_length(q: u64, n: u64, cap: u64) -> Result<Arc<Self>> {
        let (p, e0) = odd_prime_power(q)?;
        let q2 = q as u128 * q as u128;
        let degree = if n == 0 {
            return Err(Error::InvalidLength { n, reason: "zero length" });
        } else if (q2 - 1) % n as u128 == 0 {
            2 * e0
        } else if (q2 * q2 - 1) % n as u128 == 0 {
            4 * e0
        } else {
            return Err(Error::InvalidLength { n, reason: "n does not divide q^4 - 1" });
        };
        let field = FieldDescriptor::with_cap(p, degree, cap)?;
        let alphabet = field
            .elements()
            .filter(|&x| field.frobenius(x, 2 * e0) == x)
            .collect();
        Ok(Arc::new(WorkingField { field, q, q_exp: e0, alphabet }))
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// The q^2 code symbols, zero first.
    pub fn alphabet(&self) -> &[FieldElement] {
        &self.alphabet
    }

    pub fn in_alphabet(&self, x: FieldElement) -> bool {
        self.field.frobenius(x, 2 * self.q_exp) == x
    }

    /// x -> x^q.
    pub fn conj(&self, x: FieldElement) -> FieldElement {
        self.field.frobenius(x, self.q_exp)
    }

    /// Sum of u_i * v_i^q.
    pub fn hermitian(&self, u: &[FieldElement], v: &[FieldElement]) -> FieldElement {
        let f = &self.field;
        u.iter()
            .zip(v)
            .fold(FieldElement::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, self.conj(b))))
    }
}

/// A cyclic code given by its defining set, with its generator polynomial.
#[derive(Debug, Clone)]
pub struct CyclicCodeSpec {
    pub field: Arc<WorkingField>,
    pub n: u64,
    pub defining_set: DefiningSet,
    pub alpha: FieldElement,
    /// Ascending coefficients of g(x); deg g = |T|.
    pub generator: Vector,
    pub k_classical: usize,
}

/// Rows spanning a linear code of length n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorMatrix {
    pub n: usize,
    pub rows: Vec<Vector>,
}

impl GeneratorMatrix {
    pub fn dimension(&self) -> usize {
        self.rows.len()
    }
}

mod poly {
    use super::*;

    /// Multiplies `f` by (x - root) in place.
    pub fn mul_linear(f: &FieldDescriptor, poly: &mut Vector, root: FieldElement) {
        let neg_root = f.neg(root);
        poly.push(FieldElement::ZERO);
        for i in (0..poly.len()).rev() {
            let lower = if i == 0 { FieldElement::ZERO } else { poly[i - 1] };
            poly[i] = f.add(lower, f.mul(neg_root, poly[i]));
        }
    }

    /// Remainder of `num` by a monic `den`.
    pub fn rem_monic(f: &FieldDescriptor, num: &[FieldElement], den: &[FieldElement]) -> Vector {
        let mut r = num.to_vec();
        let dd = den.len() - 1;
        while r.len() > dd {
            let lead = r.pop().unwrap();
            if lead.is_zero() {
                continue;
            }
            let shift = r.len() - dd;
            for (k, &c) in den[..dd].iter().enumerate() {
                r[shift + k] = f.sub(r[shift + k], f.mul(lead, c));
            }
        }
        r
    }

    pub fn eval(f: &FieldDescriptor, poly: &[FieldElement], x: FieldElement) -> FieldElement {
        poly.iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }
}

/// Gaussian elimination helpers over the working field.
pub mod linalg {
    use super::*;

    /// Reduced row echelon form; returns the nonzero rows and pivot columns.
    pub fn rref(f: &FieldDescriptor, rows: &[Vector], ncols: usize) -> (Vec<Vector>, Vec<usize>) {
        let mut m: Vec<Vector> = rows.to_vec();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..ncols {
            let Some(pr) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
                continue;
            };
            m.swap(r, pr);
            let inv = f.inv(m[r][col]).expect("pivot is nonzero");
            for x in m[r].iter_mut() {
                *x = f.mul(*x, inv);
            }
            let pivot_row = m[r].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i == r || row[col].is_zero() {
                    continue;
                }
                let factor = row[col];
                for (x, &p) in row.iter_mut().zip(&pivot_row) {
                    *x = f.sub(*x, f.mul(factor, p));
                }
            }
            pivots.push(col);
            r += 1;
            if r == m.len() {
                break;
            }
        }
        m.truncate(r);
        (m, pivots)
    }

    pub fn rank(f: &FieldDescriptor, rows: &[Vector], ncols: usize) -> usize {
        rref(f, rows, ncols).1.len()
    }

    /// Basis of { x : rows · x = 0 }.
    pub fn null_space(f: &FieldDescriptor, rows: &[Vector], ncols: usize) -> Vec<Vector> {
        let (m, pivots) = rref(f, rows, ncols);
        let mut is_pivot = vec![false; ncols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..ncols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![FieldElement::ZERO; ncols];
                v[free] = FieldElement::ONE;
                for (row, &pc) in m.iter().zip(&pivots) {
                    v[pc] = f.neg(row[free]);
                }
                v
            })
            .collect()
    }
}

/// Builds g(x) = prod_{i in T} (x - alpha^i) and checks it is a divisor of
/// x^n - 1 with coefficients in GF(q^2).
pub fn build_cyclic_code(wf: &Arc<WorkingField>, t: &DefiningSet) -> Result<CyclicCodeSpec> {
    let ctx = t.context();
    if ctx.q() != wf.q() {
        return Err(Error::ContextMismatch);
    }
    let n = ctx.n();
    let f = wf.field();
    let alpha = f.primitive_nth_root(n)?;
    let mut g = vec![FieldElement::ONE];
    for &i in t.residues() {
        poly::mul_linear(f, &mut g, f.pow(alpha, i as i64)?);
    }
    if !g.iter().all(|&c| wf.in_alphabet(c)) {
        return Err(Error::CoefficientEscape);
    }
    let mut xn1 = vec![FieldElement::ZERO; n as usize + 1];
    xn1[0] = f.neg(FieldElement::ONE);
    xn1[n as usize] = FieldElement::ONE;
    if poly::rem_monic(f, &xn1, &g).iter().any(|c| !c.is_zero()) {
        return Err(Error::InexactDivision);
    }
    Ok(CyclicCodeSpec {
        field: Arc::clone(wf),
        n,
        defining_set: t.clone(),
        alpha,
        k_classical: n as usize - t.len(),
        generator: g,
    })
}

impl CyclicCodeSpec {
    /// The k_classical cyclic shifts x^i g(x).
    pub fn generator_matrix(&self) -> GeneratorMatrix {
        let n = self.n as usize;
        let rows = (0..self.k_classical)
            .map(|shift| {
                let mut row = vec![FieldElement::ZERO; n];
                row[shift..shift + self.generator.len()].copy_from_slice(&self.generator);
                row
            })
            .collect();
        GeneratorMatrix { n, rows }
    }

    /// { i : g(alpha^i) = 0 }, recomputed from the generator.
    pub fn roots(&self) -> Vec<u64> {
        let f = self.field.field();
        (0..self.n)
            .filter(|&i| {
                let x = f.pow(self.alpha, i as i64).expect("alpha is nonzero");
                poly::eval(f, &self.generator, x).is_zero()
            })
            .collect()
    }

    /// Encodes a message vector as m(x) g(x).
    pub fn encode(&self, message: &[FieldElement]) -> Vector {
        let f = self.field.field();
        let mut word = vec![FieldElement::ZERO; self.n as usize];
        for (i, &m) in message.iter().enumerate() {
            if m.is_zero() {
                continue;
            }
            for (j, &g) in self.generator.iter().enumerate() {
                word[i + j] = f.add(word[i + j], f.mul(m, g));
            }
        }
        word
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum DistanceOutcome {
    Exact { distance: u64 },
    /// The code is {0}; no nonzero codeword exists.
    ZeroCode,
    Abstained { required: u128, budget: u64 },
}

/// Exact minimum weight by enumerating every nonzero message.
///
/// Abstains when (q^2)^k - 1 exceeds `budget`. Work is split across threads
/// by the value of the leading message coordinates.
pub fn true_min_distance(code: &CyclicCodeSpec, budget: u64) -> DistanceOutcome {
    let k = code.k_classical;
    if k == 0 {
        return DistanceOutcome::ZeroCode;
    }
    let alphabet = code.field.alphabet();
    let qq = alphabet.len() as u128;
    let required = qq.checked_pow(k as u32).map_or(u128::MAX, |x| x - 1);
    if required > budget as u128 {
        return DistanceOutcome::Abstained { required, budget };
    }
    let f = code.field.field();
    let n = code.n as usize;
    let rows = code.generator_matrix().rows;
    // multiples[i][s] = alphabet[s] * row_i
    let multiples: Vec<Vec<Vector>> = rows
        .iter()
        .map(|row| {
            alphabet
                .iter()
                .map(|&s| row.iter().map(|&x| f.mul(s, x)).collect())
                .collect()
        })
        .collect();

    let prefix_len = k.min(2);
    let blocks = qq.pow(prefix_len as u32) as usize;
    let best = (0..blocks)
        .into_par_iter()
        .map(|block| {
            let mut acc = vec![FieldElement::ZERO; n];
            let mut b = block;
            let mut all_zero = true;
            for mult in multiples.iter().take(prefix_len) {
                let s = b % alphabet.len();
                b /= alphabet.len();
                all_zero &= s == 0;
                add_into(f, &mut acc, &mult[s]);
            }
            let mut best = u64::MAX;
            enumerate_suffix(f, &multiples[prefix_len..], acc, all_zero, &mut best);
            best
        })
        .min()
        .unwrap_or(u64::MAX);
    DistanceOutcome::Exact { distance: best }
}

fn add_into(f: &FieldDescriptor, acc: &mut [FieldElement], v: &[FieldElement]) {
    for (a, &b) in acc.iter_mut().zip(v) {
        *a = f.add(*a, b);
    }
}

fn enumerate_suffix(
    f: &FieldDescriptor,
    multiples: &[Vec<Vector>],
    acc: Vector,
    all_zero: bool,
    best: &mut u64,
) {
    match multiples {
        [] => {
            if !all_zero {
                *best = (*best).min(weight(&acc));
            }
        }
        [last] => {
            // Innermost coordinate: score each extension without allocating.
            for (s, mult) in last.iter().enumerate() {
                if s == 0 {
                    if !all_zero {
                        *best = (*best).min(weight(&acc));
                    }
                    continue;
                }
                let w = acc
                    .iter()
                    .zip(mult)
                    .filter(|(&a, &b)| !f.add(a, b).is_zero())
                    .count() as u64;
                *best = (*best).min(w);
            }
        }
        [first, rest @ ..] => {
            for (s, mult) in first.iter().enumerate() {
                let mut next = acc.clone();
                if s != 0 {
                    add_into(f, &mut next, mult);
                }
                enumerate_suffix(f, rest, next, all_zero && s == 0, best);
            }
        }
    }
}

fn weight(v: &[FieldElement]) -> u64 {
    v.iter().filter(|x| !x.is_zero()).count() as u64
}

/// Basis of the Hermitian dual: the null space of the conjugated generator matrix.
pub fn hermitian_dual_basis(wf: &WorkingField, g: &GeneratorMatrix) -> Result<GeneratorMatrix> {
    let f = wf.field();
    let rank = linalg::rank(f, &g.rows, g.n);
    if rank < g.rows.len() {
        return Err(Error::RankDeficient { rank, rows: g.rows.len() });
    }
    let conj: Vec<Vector> = g
        .rows
        .iter()
        .map(|r| r.iter().map(|&x| wf.conj(x)).collect())
        .collect();
    let rows = linalg::null_space(f, &conj, g.n);
    debug_assert_eq!(rows.len(), g.n - g.rows.len());
    for u in &rows {
        for v in &g.rows {
            assert!(wf.hermitian(u, v).is_zero(), "dual vector is not orthogonal");
        }
    }
    Ok(GeneratorMatrix { n: g.n, rows })
}

/// Dimensions and verdicts for the two Hermitian properties of the
/// symmetric/asymmetric split.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HermitianSplitReport {
    pub symmetric_dim: usize,
    /// dim(C_1^⊥H ∩ C_1); must be 0.
    pub symmetric_hull_dim: usize,
    pub asymmetric_dim: usize,
    pub asymmetric_dual_dim: usize,
    /// Whether C_2^⊥H ⊆ C_2.
    pub asymmetric_contains_dual: bool,
}

impl HermitianSplitReport {
    pub fn holds(&self) -> bool {
        self.symmetric_hull_dim == 0 && self.asymmetric_contains_dual
    }
}

/// Builds C_1 from T_ss and C_2 from T_as and checks, by rank computations,
/// that C_1 meets its Hermitian dual trivially and that C_2 contains its
/// Hermitian dual.
pub fn check_hermitian_split(
    wf: &Arc<WorkingField>,
    decomposition: &Decomposition,
) -> Result<HermitianSplitReport> {
    if !decomposition.check_laws() {
        return Err(Error::InvalidDecomposition);
    }
    let f = wf.field();
    let c1 = build_cyclic_code(wf, &decomposition.t_ss)?.generator_matrix();
    let d1 = hermitian_dual_basis(wf, &c1)?;
    let stacked: Vec<Vector> = c1.rows.iter().chain(&d1.rows).cloned().collect();
    let hull = c1.dimension() + d1.dimension() - linalg::rank(f, &stacked, c1.n);

    let c2 = build_cyclic_code(wf, &decomposition.t_as)?.generator_matrix();
    let d2 = hermitian_dual_basis(wf, &c2)?;
    let stacked: Vec<Vector> = c2.rows.iter().chain(&d2.rows).cloned().collect();
    let contains = linalg::rank(f, &stacked, c2.n) == c2.dimension();

    Ok(HermitianSplitReport {
        symmetric_dim: c1.dimension(),
        symmetric_hull_dim: hull,
        asymmetric_dim: c2.dimension(),
        asymmetric_dual_dim: d2.dimension(),
        asymmetric_contains_dual: contains,
    })
}

/// Resource limits for desk-scale checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeskOptions {
    pub distance_budget: u64,
    pub field_cap: u64,
}

impl Default for DeskOptions {
    fn default() -> Self {
        DeskOptions { distance_budget: DEFAULT_DISTANCE_BUDGET, field_cap: DEFAULT_TABLE_CAP }
    }
}

/// BCH designed distance: longest consecutive run plus one.
pub fn bch_bound(t: &DefiningSet) -> u64 {
    max_consecutive_run(t) + 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cosets::{decompose_defining_set, CosetContext};

    fn gf9_len8() -> Arc<WorkingField> {
        WorkingField::for_length(3, 8, DEFAULT_TABLE_CAP).unwrap()
    }

    fn set(n: u64, q: u64, r: &[u64]) -> DefiningSet {
        DefiningSet::new(CosetContext::new(n, q).unwrap(), r.iter().copied()).unwrap()
    }

    #[test]
    fn working_field_choice() {
        assert_eq!(gf9_len8().field().order(), 9);
        assert_eq!(gf9_len8().alphabet().len(), 9);
        let wf = WorkingField::for_length(7, 50, DEFAULT_TABLE_CAP).unwrap();
        assert_eq!(wf.field().order(), 2401);
        assert_eq!(wf.alphabet().len(), 49);
        assert!(WorkingField::for_length(3, 7, DEFAULT_TABLE_CAP).is_err());
        let err = WorkingField::for_length(7, 50, 1000).unwrap_err();
        assert!(err.is_resource());
    }

    #[test]
    fn generator_of_bch_like_code() {
        let wf = gf9_len8();
        let code = build_cyclic_code(&wf, &set(8, 3, &[7, 0, 1])).unwrap();
        assert_eq!(code.generator.len(), 4);
        assert_eq!(code.k_classical, 5);
        assert_eq!(code.roots(), vec![0, 1, 7]);
        assert_eq!(true_min_distance(&code, DEFAULT_DISTANCE_BUDGET), DistanceOutcome::Exact { distance: 4 });
    }

    #[test]
    fn extreme_codes() {
        let wf = gf9_len8();
        let full = build_cyclic_code(&wf, &set(8, 3, &[])).unwrap();
        assert_eq!(full.generator, vec![FieldElement::ONE]);
        assert_eq!(full.k_classical, 8);
        assert_eq!(true_min_distance(&full, 1 << 26), DistanceOutcome::Exact { distance: 1 });
        let dual = hermitian_dual_basis(&wf, &full.generator_matrix()).unwrap();
        assert_eq!(dual.dimension(), 0);

        let rep = build_cyclic_code(&wf, &set(8, 3, &[0, 1, 2, 3, 4, 5, 6])).unwrap();
        assert_eq!(rep.k_classical, 1);
        assert_eq!(true_min_distance(&rep, DEFAULT_DISTANCE_BUDGET), DistanceOutcome::Exact { distance: 8 });

        let zero = build_cyclic_code(&wf, &set(8, 3, &[0, 1, 2, 3, 4, 5, 6, 7])).unwrap();
        assert_eq!(true_min_distance(&zero, DEFAULT_DISTANCE_BUDGET), DistanceOutcome::ZeroCode);
    }

    #[test]
    fn budget_abstention() {
        let wf = gf9_len8();
        let code = build_cyclic_code(&wf, &set(8, 3, &[7, 0, 1])).unwrap();
        assert_eq!(
            true_min_distance(&code, 1000),
            DistanceOutcome::Abstained { required: 59048, budget: 1000 }
        );
    }

    #[test]
    fn dual_dimensions() {
        let wf = gf9_len8();
        let c = build_cyclic_code(&wf, &set(8, 3, &[7, 0, 1])).unwrap();
        assert_eq!(hermitian_dual_basis(&wf, &c.generator_matrix()).unwrap().dimension(), 3);
        let c = build_cyclic_code(&wf, &set(8, 3, &[0])).unwrap();
        assert_eq!(hermitian_dual_basis(&wf, &c.generator_matrix()).unwrap().dimension(), 1);
        let bad = GeneratorMatrix { n: 2, rows: vec![vec![FieldElement::ONE; 2]; 2] };
        assert!(matches!(hermitian_dual_basis(&wf, &bad), Err(Error::RankDeficient { .. })));
    }

    #[test]
    fn split_properties_small() {
        let wf = gf9_len8();
        let t = set(8, 3, &[7, 0, 1]);
        let report = check_hermitian_split(&wf, &decompose_defining_set(&t)).unwrap();
        assert!(report.holds());
        assert_eq!(report.symmetric_dim, 7);

        let t = set(8, 3, &[1, 7]);
        let d = decompose_defining_set(&t);
        assert!(d.t_ss.is_empty());
        let report = check_hermitian_split(&wf, &d).unwrap();
        assert_eq!(report.symmetric_dim, 8);
        assert_eq!(report.symmetric_hull_dim, 0);
    }

    #[test]
    fn non_closed_set_escapes_subfield() {
        // q^2 = 9 ≡ -1 mod 10, so {1} is not a union of cosets.
        let wf = WorkingField::for_length(3, 10, DEFAULT_TABLE_CAP).unwrap();
        let ctx = CosetContext::new(10, 3).unwrap();
        assert!(build_cyclic_code(&wf, &DefiningSet::from_coset_reps(ctx, [1])).is_ok());
        let bogus = DefiningSet::unchecked(ctx, vec![1]);
        assert_eq!(build_cyclic_code(&wf, &bogus).unwrap_err(), Error::CoefficientEscape);
    }
}
