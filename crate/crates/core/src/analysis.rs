//! Weight distributions, the MacWilliams transform, minimum distance,
//! MDS/AMDS/NMDS classification and the monic-codeword census.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::codes::CyclicCode;
use crate::error::{internal, invalid, Error, Result};
use crate::gf::Elem;
use crate::linalg::{restricted_rank, Matrix};

/// Default cap on the number of codewords enumerated directly.
pub const DEFAULT_WORD_BUDGET: u64 = 1 << 24;

/// Default cap on the number of support subsets examined.
pub const DEFAULT_SUBSET_BUDGET: u64 = 10_000_000;

/// Exact weight distribution `A_0, ..., A_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDistribution {
    counts: Vec<BigUint>,
}

impl WeightDistribution {
    pub fn new(counts: Vec<BigUint>) -> Result<WeightDistribution> {
        if counts.is_empty() {
            return Err(invalid!("a weight distribution needs at least A_0"));
        }
        Ok(WeightDistribution { counts })
    }

    pub fn from_u64(counts: &[u64]) -> Result<WeightDistribution> {
        WeightDistribution::new(counts.iter().map(|&c| BigUint::from(c)).collect())
    }

    /// The length `n`; there are `n + 1` counts.
    pub fn n(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    /// `A_i`, zero past the length.
    pub fn get(&self, i: usize) -> BigUint {
        self.counts.get(i).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    /// The smallest positive weight that occurs.
    pub fn min_weight(&self) -> Option<usize> {
        (1..self.counts.len()).find(|&i| !self.counts[i].is_zero())
    }

    /// How many distinct nonzero weights occur.
    pub fn nonzero_weight_count(&self) -> usize {
        self.counts[1..].iter().filter(|c| !c.is_zero()).count()
    }
}

/// How [`weight_distribution`] obtains its counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Enumerate whichever of the code and its dual is smaller.
    #[default]
    Auto,
    /// Enumerate every codeword.
    Direct,
    /// Enumerate the dual and apply the MacWilliams transform.
    ViaDual,
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Strategy> {
        match s {
            "auto" => Ok(Strategy::Auto),
            "direct" => Ok(Strategy::Direct),
            "via_dual" | "via-dual" => Ok(Strategy::ViaDual),
            _ => Err(invalid!("unknown strategy {s:?}")),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Auto => "auto",
            Strategy::Direct => "direct",
            Strategy::ViaDual => "via_dual",
        })
    }
}

fn size(q: u64, k: usize) -> u128 {
    u32::try_from(k).ok().and_then(|k| (q as u128).checked_pow(k)).unwrap_or(u128::MAX)
}

pub fn weight_distribution(code: &CyclicCode, strategy: Strategy, budget: u64) -> Result<WeightDistribution> {
    let q = code.q();
    let (n, k) = (code.n(), code.k());
    let primal = size(q, k);
    let dual = size(q, n - k);
    let over = |words: u128| words > budget as u128;
    let use_direct = match strategy {
        Strategy::Direct if over(primal) => {
            return Err(Error::ResourceLimit(format!("{q}^{k} codewords exceed the budget of {budget}")))
        }
        Strategy::ViaDual if over(dual) => {
            return Err(Error::ResourceLimit(format!("{q}^{} dual codewords exceed the budget of {budget}", n - k)))
        }
        Strategy::Direct => true,
        Strategy::ViaDual => false,
        Strategy::Auto => {
            if over(primal.min(dual)) {
                return Err(Error::ResourceLimit(format!(
                    "both sides exceed the budget of {budget}: code has {q}^{k} words, dual has {q}^{} words",
                    n - k
                )));
            }
            primal <= dual
        }
    };
    if use_direct {
        enumerate_weights(code)
    } else {
        let dual_code = code.dual()?;
        let dual_wd = enumerate_weights(&dual_code)?;
        macwilliams_transform(&dual_wd, n - k, q)
    }
}

/// Tallies weights over every message in odometer order. The most
/// significant message digit is split across threads.
fn enumerate_weights(code: &CyclicCode) -> Result<WeightDistribution> {
    let (n, k) = (code.n(), code.k());
    let mut counts = vec![0u64; n + 1];
    if k == 0 {
        counts[0] = 1;
        return WeightDistribution::from_u64(&counts);
    }
    let f = code.field();
    let q = f.order() as usize;
    let g = code.generator_matrix();
    let elems: Vec<Elem> = f.elements().collect();
    // delta[i][a]: change of the word when digit i steps from element a to a + 1 (mod q).
    let delta: Vec<Vec<Vec<Elem>>> = (0..k)
        .map(|i| {
            let row = g.row(i);
            (0..q)
                .map(|a| {
                    let next = elems[(a + 1) % q];
                    let step = f.sub(next, elems[a]);
                    row.iter().map(|&r| f.mul(step, r)).collect()
                })
                .collect()
        })
        .collect();
    let top = g.row(k - 1);
    let tally = (0..q)
        .into_par_iter()
        .map(|t| {
            let mut local = vec![0u64; n + 1];
            let mut word: Vec<Elem> = top.iter().map(|&r| f.mul(elems[t], r)).collect();
            let mut digits = vec![0usize; k - 1];
            loop {
                local[word.iter().filter(|e| !e.is_zero()).count()] += 1;
                let mut i = 0;
                loop {
                    if i == k - 1 {
                        return local;
                    }
                    let a = digits[i];
                    for (w, &d) in word.iter_mut().zip(&delta[i][a]) {
                        *w = f.add(*w, d);
                    }
                    digits[i] = (a + 1) % q;
                    if digits[i] != 0 {
                        break;
                    }
                    i += 1;
                }
            }
        })
        .reduce(
            || vec![0u64; n + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    counts.copy_from_slice(&tally);
    let wd = WeightDistribution::from_u64(&counts)?;
    if wd.total() != BigUint::from(q as u64).pow(k as u32) || counts[0] != 1 {
        return Err(internal!("enumeration produced {} words", wd.total()));
    }
    Ok(wd)
}

fn binomials(n: usize) -> Vec<Vec<BigUint>> {
    let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(n + 1);
    for a in 0..=n {
        let mut row = vec![BigUint::one(); a + 1];
        for b in 1..a {
            row[b] = &rows[a - 1][b - 1] + &rows[a - 1][b];
        }
        rows.push(row);
    }
    rows
}

/// Dual weight distribution of an `[n, k]` code over GF(q) with distribution `wd`.
///
/// For each `r` the identity
/// `q^r * sum_{i<=n-r} C(n-i, r) A_i = q^k * sum_{i<=r} C(n-i, n-r) B_i`
/// is triangular in the dual counts `B_i` and solved for `B_r`. Every division
/// must be exact and every `B_r` nonnegative, otherwise the input is not the
/// distribution of a linear code. The identity is rechecked for all `r`
/// afterwards.
pub fn macwilliams_transform(wd: &WeightDistribution, k: usize, q: u64) -> Result<WeightDistribution> {
    let n = wd.n();
    if k > n {
        return Err(invalid!("dimension {k} exceeds length {n}"));
    }
    let qb = BigUint::from(q);
    let qk = qb.pow(k as u32);
    if wd.total() != qk {
        return Err(Error::Inconsistency(format!("counts sum to {}, expected {q}^{k}", wd.total())));
    }
    if !wd.counts[0].is_one() {
        return Err(Error::Inconsistency("A_0 must be 1".into()));
    }
    let c = binomials(n);
    let lhs = |r: usize| -> BigUint { (0..=n - r).map(|i| &c[n - i][r] * &wd.counts[i]).sum() };
    let mut dual: Vec<BigUint> = Vec::with_capacity(n + 1);
    let mut qr = BigUint::one();
    for r in 0..=n {
        let scaled = &qr * lhs(r);
        if !(&scaled % &qk).is_zero() {
            return Err(Error::Inconsistency(format!("non-integral dual count at weight {r}")));
        }
        let mut b = BigInt::from(scaled / &qk);
        for (i, bi) in dual.iter().enumerate() {
            b -= BigInt::from(&c[n - i][n - r] * bi);
        }
        if b.is_negative() {
            return Err(Error::Inconsistency(format!("negative dual count at weight {r}")));
        }
        dual.push(b.to_biguint().expect("nonnegative"));
        qr *= &qb;
    }
    let out = WeightDistribution::new(dual)?;
    let mut qr = BigUint::one();
    for r in 0..=n {
        let rhs: BigUint = (0..=r).map(|i| &c[n - i][n - r] * &out.counts[i]).sum();
        if &qr * lhs(r) != &qk * rhs {
            return Err(internal!("MacWilliams identity fails at r = {r}"));
        }
        qr *= &qb;
    }
    if out.total() != qb.pow((n - k) as u32) {
        return Err(Error::Inconsistency(format!("dual counts sum to {}", out.total())));
    }
    Ok(out)
}

/// Minimum distance, cached in the code. The zero code is assigned
/// `n + 1`, which keeps the Singleton bound tight for it.
pub fn min_distance(code: &CyclicCode, budget: u64) -> Result<usize> {
    if let Some(d) = code.d() {
        return Ok(d);
    }
    let wd = weight_distribution(code, Strategy::Auto, budget)?;
    let d = wd.min_weight().unwrap_or(code.n() + 1);
    code.cache_d(d);
    Ok(d)
}

/// The distributions of a code and of its dual, one of them obtained by
/// enumeration and the other by the MacWilliams transform.
pub fn distributions(code: &CyclicCode, budget: u64) -> Result<(WeightDistribution, WeightDistribution)> {
    let (n, k, q) = (code.n(), code.k(), code.q());
    let wd = weight_distribution(code, Strategy::Auto, budget)?;
    let dual = macwilliams_transform(&wd, k, q)?;
    code.cache_d(wd.min_weight().unwrap_or(n + 1));
    Ok((wd, dual))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Label {
    Mds,
    Amds,
    Nmds,
    Other,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::Mds => "MDS",
            Label::Amds => "AMDS",
            Label::Nmds => "NMDS",
            Label::Other => "OTHER",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub label: Label,
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub dual_d: usize,
}

/// Labels a code from its minimum distance and that of its dual.
pub fn classify_params(n: usize, k: usize, d: usize, dual_d: usize) -> Result<Classification> {
    if d > n - k + 1 || dual_d > k + 1 {
        return Err(internal!("Singleton bound violated: n = {n}, k = {k}, d = {d}, dual d = {dual_d}"));
    }
    let label = if d == n - k + 1 {
        if dual_d != k + 1 {
            return Err(internal!("MDS code with non-MDS dual"));
        }
        Label::Mds
    } else if d + k == n {
        if dual_d == k {
            Label::Nmds
        } else {
            Label::Amds
        }
    } else {
        Label::Other
    };
    Ok(Classification { label, n, k, d, dual_d })
}

pub fn classify(code: &CyclicCode, budget: u64) -> Result<Classification> {
    let (wd, dual) = distributions(code, budget)?;
    let n = code.n();
    classify_params(n, code.k(), wd.min_weight().unwrap_or(n + 1), dual.min_weight().unwrap_or(n + 1))
}

/// Whether `k A_{n-k} + A_{n-k+1} = (q - 1) C(n, n-k+1)` for an AMDS code
/// with distribution `wd`.
pub fn nmds_identity_holds(wd: &WeightDistribution, k: usize, q: u64) -> Result<bool> {
    let n = wd.n();
    if k == 0 || k > n || wd.min_weight() != Some(n - k) {
        return Err(Error::Precondition(format!("code is not AMDS (n = {n}, k = {k}, d = {:?})", wd.min_weight())));
    }
    let lhs = BigUint::from(k) * wd.get(n - k) + wd.get(n - k + 1);
    let rhs = BigUint::from(q - 1) * binomial(BigUint::from(n), BigUint::from(n - k + 1));
    Ok(lhs == rhs)
}

pub fn nmds_identity_check(code: &CyclicCode, budget: u64) -> Result<bool> {
    let wd = weight_distribution(code, Strategy::Auto, budget)?;
    nmds_identity_holds(&wd, code.k(), code.q())
}

/// Counts of monic low-weight codewords and of the support subsets that
/// carry them, over all `(n - k + 1)`-subsets of coordinates.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MonicCensus {
    pub n: usize,
    pub k: usize,
    pub subsets: u64,
    /// Monic codewords of weight `n - k`.
    pub e1: u64,
    /// Monic codewords of weight `n - k + 1`.
    pub e2: u64,
    /// Subsets containing the support of a weight `n - k` codeword.
    pub f1: u64,
    /// Subsets that are the support of a weight `n - k + 1` codeword.
    pub f2: u64,
    /// Subsets counted in both `f1` and `f2`.
    pub overlap: u64,
    /// Subsets whose restricted subcode has dimension 1 and 2.
    pub dim_one: u64,
    pub dim_two: u64,
}

impl MonicCensus {
    fn merge(mut self, o: MonicCensus) -> MonicCensus {
        self.subsets += o.subsets;
        self.e1 += o.e1;
        self.e2 += o.e2;
        self.f1 += o.f1;
        self.f2 += o.f2;
        self.overlap += o.overlap;
        self.dim_one += o.dim_one;
        self.dim_two += o.dim_two;
        self
    }
}

/// Scales `v` so its first nonzero entry is one.
pub fn make_monic(f: &crate::gf::FieldSpec, v: &mut [Elem]) {
    if let Some(&lead) = v.iter().find(|e| !e.is_zero()) {
        let inv = f.inv(lead).expect("nonzero");
        v.iter_mut().for_each(|e| *e = f.mul(*e, inv));
    }
}

/// The monic vectors spanning each line of the row space of `basis`
/// (one or two rows).
fn monic_vectors(f: &crate::gf::FieldSpec, basis: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    let mut out = Vec::new();
    match basis {
        [b] => out.push(b.clone()),
        [b1, b2] => {
            out.push(b1.clone());
            for a in f.elements() {
                out.push(b2.iter().zip(b1).map(|(&y, &x)| f.add(y, f.mul(a, x))).collect());
            }
        }
        _ => unreachable!("restricted dimension is 1 or 2"),
    }
    out.iter_mut().for_each(|v| make_monic(f, v));
    out
}

/// Examines every `(n - k + 1)`-subset `I` of coordinates, computes the
/// subcode supported inside `I` and classifies its monic codewords by weight.
///
/// A weight `n - k` codeword lies inside `k` subsets; it is counted in `e1`
/// only in the subset that adds the smallest coordinate outside its support.
///
/// Fails with a precondition error when a codeword of weight below `n - k`
/// is found or no codeword of weight `n - k` exists (the code is not AMDS).
pub fn monic_census(code: &CyclicCode, budget: u64) -> Result<MonicCensus> {
    let (n, k) = (code.n(), code.k());
    if k == 0 {
        return Err(Error::Precondition("the zero code is not AMDS".into()));
    }
    let s = n - k + 1;
    let total = binomial(BigUint::from(n), BigUint::from(s));
    if total > BigUint::from(budget) {
        return Err(Error::ResourceLimit(format!("C({n}, {s}) = {total} subsets exceed the budget of {budget}")));
    }
    let h = code.parity_check_matrix();
    let census = (0..n)
        .into_par_iter()
        .map(|first| census_from(h, n, k, first))
        .try_reduce(MonicCensus::default, |a, b| Ok(a.merge(b)))?;
    let census = MonicCensus { n, k, ..census };
    if census.e1 == 0 {
        return Err(Error::Precondition("no codeword of weight n - k: the code is not AMDS".into()));
    }
    if census.subsets != total.to_u64().unwrap_or(u64::MAX) {
        return Err(internal!("census visited {} of {total} subsets", census.subsets));
    }
    Ok(census)
}

fn census_from(h: &Matrix, n: usize, k: usize, first: usize) -> Result<MonicCensus> {
    let f = h.field();
    let s = n - k + 1;
    let mut c = MonicCensus::default();
    for rest in (first + 1..n).combinations(s - 1) {
        let mut cols = Vec::with_capacity(s);
        cols.push(first);
        cols.extend(rest);
        c.subsets += 1;
        let dim = s - restricted_rank(h, &cols);
        match dim {
            1 => c.dim_one += 1,
            2 => c.dim_two += 1,
            _ => {
                return Err(Error::Precondition(format!("restricted subcode of dimension {dim}: the code is not AMDS")))
            }
        }
        let basis = h.select_columns(&cols).nullspace();
        let (mut in_f1, mut in_f2) = (false, false);
        for v in monic_vectors(f, &basis) {
            let w = v.iter().filter(|e| !e.is_zero()).count();
            if w == n - k {
                in_f1 = true;
                let missing = cols.iter().zip(&v).find(|(_, e)| e.is_zero()).map(|(&j, _)| j);
                let canonical = (0..n).find(|j| !cols.contains(j) || Some(*j) == missing);
                if canonical == missing {
                    c.e1 += 1;
                }
            } else if w == n - k + 1 {
                in_f2 = true;
                c.e2 += 1;
            } else {
                return Err(Error::Precondition(format!("codeword of weight {w} < {}: the code is not AMDS", n - k)));
            }
        }
        c.f1 += in_f1 as u64;
        c.f2 += in_f2 as u64;
        c.overlap += (in_f1 && in_f2) as u64;
    }
    if c.dim_two == 0 && c.overlap != 0 {
        return Err(internal!("a one-dimensional subcode mixes weights"));
    }
    Ok(c)
}
