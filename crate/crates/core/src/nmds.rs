//! Near-MDS certification: the subset-rank test on restricted subcodes and
//! the root-of-unity criteria for `C(q, q + 1, 3, 4)`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use itertools::Itertools;
use num_bigint::BigUint;
use num_integer::binomial;
use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{min_distance, DEFAULT_WORD_BUDGET};
use crate::codes::{CyclicCode, UnityParityCheck};
use crate::error::{internal, invalid, Error, Result};
use crate::gf::{prime_power, unity_tower, Elem, FieldSpec, UnitySubgroup};
use crate::linalg::{det3, det4, restricted_rank, Matrix};

/// Default cap on determinant evaluations in [`certify_pairs`].
pub const DEFAULT_PAIR_BUDGET: u64 = 100_000_000;

/// Maximum number of failures kept in a report.
pub const FAILURE_CAP: usize = 100;

/// Dimension of the subcode of codewords supported inside `subset`
/// (one-based coordinates): `|I| - rank(H_I)`.
pub fn restricted_dim(code: &CyclicCode, subset: &[usize]) -> Result<usize> {
    let cols = zero_based(subset, code.n())?;
    Ok(cols.len() - restricted_rank(code.parity_check_matrix(), &cols))
}

fn zero_based(subset: &[usize], n: usize) -> Result<Vec<usize>> {
    if subset.is_empty() {
        return Err(invalid!("subset must be nonempty"));
    }
    let mut cols = Vec::with_capacity(subset.len());
    for &i in subset {
        if i == 0 || i > n {
            return Err(invalid!("coordinate {i} outside 1..={n}"));
        }
        if cols.contains(&(i - 1)) {
            return Err(invalid!("coordinate {i} repeated"));
        }
        cols.push(i - 1);
    }
    Ok(cols)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubsetFailure {
    /// One-based coordinates.
    pub subset: Vec<usize>,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubsetCertReport {
    pub n: usize,
    pub k: usize,
    pub subsets_checked: u64,
    pub all_dim_one: bool,
    /// The lexicographically first failures, at most [`FAILURE_CAP`].
    pub failures: Vec<SubsetFailure>,
    pub failure_count: u64,
}

/// Checks that every `(n - k + 1)`-subset of coordinates supports a
/// one-dimensional subcode, which holds exactly when the dual of an AMDS
/// code is AMDS as well.
///
/// The code must be AMDS; its minimum distance is computed (under the
/// default word budget) if not already known.
pub fn certify_generic(code: &CyclicCode, budget: u64) -> Result<SubsetCertReport> {
    let (n, k) = (code.n(), code.k());
    if k == 0 {
        return Err(Error::Precondition("the zero code is not AMDS".into()));
    }
    check_subset_budget(n, n - k + 1, budget)?;
    let d = min_distance(code, DEFAULT_WORD_BUDGET)?;
    if d != n - k {
        return Err(Error::Precondition(format!("code has d = {d}, not n - k = {}: it is not AMDS", n - k)));
    }
    certify_parity_check(code.parity_check_matrix(), k, budget)
}

fn check_subset_budget(n: usize, s: usize, budget: u64) -> Result<()> {
    let total = binomial(BigUint::from(n), BigUint::from(s));
    if total > BigUint::from(budget) {
        return Err(Error::ResourceLimit(format!("C({n}, {s}) = {total} subsets exceed the budget of {budget}")));
    }
    Ok(())
}

/// The subset-rank test against an explicit parity-check matrix `h` of a
/// code of dimension `k`, with no precondition on the code.
pub fn certify_parity_check(h: &Matrix, k: usize, budget: u64) -> Result<SubsetCertReport> {
    let n = h.cols();
    if k == 0 || k > n {
        return Err(invalid!("dimension {k} out of range for length {n}"));
    }
    let s = n - k + 1;
    check_subset_budget(n, s, budget)?;
    let chunks: Vec<(u64, u64, Vec<SubsetFailure>)> = (0..n)
        .into_par_iter()
        .map(|first| {
            let (mut checked, mut failed, mut failures) = (0u64, 0u64, Vec::new());
            for rest in (first + 1..n).combinations(s - 1) {
                let mut cols = Vec::with_capacity(s);
                cols.push(first);
                cols.extend(rest);
                checked += 1;
                let dim = s - restricted_rank(h, &cols);
                if dim != 1 {
                    failed += 1;
                    if failures.len() < FAILURE_CAP {
                        failures.push(SubsetFailure { subset: cols.iter().map(|c| c + 1).collect(), dim });
                    }
                }
            }
            (checked, failed, failures)
        })
        .collect();
    let mut report =
        SubsetCertReport { n, k, subsets_checked: 0, all_dim_one: true, failures: Vec::new(), failure_count: 0 };
    for (checked, failed, failures) in chunks {
        report.subsets_checked += checked;
        report.failure_count += failed;
        report.failures.extend(failures);
    }
    report.failures.truncate(FAILURE_CAP);
    report.all_dim_one = report.failure_count == 0;
    Ok(report)
}

/// Number of `size`-subsets of coordinates that support a nonzero codeword
/// of the code annihilated by `upc`. Zero means the minimum distance
/// exceeds `size`.
pub fn count_supporting_subsets(upc: &UnityParityCheck, size: usize, budget: u64) -> Result<u64> {
    let n = upc.n();
    if size == 0 || size > n {
        return Err(invalid!("subset size {size} out of range for length {n}"));
    }
    check_subset_budget(n, size, budget)?;
    Ok((0..n)
        .into_par_iter()
        .map(|first| {
            (first + 1..n)
                .combinations(size - 1)
                .filter(|rest| {
                    let mut cols = Vec::with_capacity(size);
                    cols.push(first);
                    cols.extend_from_slice(rest);
                    upc.restricted_dim(&cols) > 0
                })
                .count() as u64
        })
        .sum())
}

/// A codeword supported on the coordinates of `beta^i`, `beta^j`,
/// `beta^l` and 1 (exponents in `1..=q`), if one exists.
pub fn pair_witness(upc: &UnityParityCheck, i: u64, j: u64, l: u64) -> Result<Option<Vec<Elem>>> {
    let n = upc.n() as u64;
    let mut cols = Vec::with_capacity(4);
    for e in [i, j, l, n] {
        if e == 0 || e > n {
            return Err(invalid!("exponent {e} outside 1..={n}"));
        }
        cols.push((e - 1) as usize);
    }
    Ok(upc.restricted_subcode(&cols)?.into_iter().next())
}

/// Three pairwise distinct `(q + 1)`-th roots of unity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UTriple {
    pub x: Elem,
    pub y: Elem,
    pub z: Elem,
}

/// The root-of-unity determinant criteria over GF(q^2), `q = 3^m`.
#[derive(Clone, Debug)]
pub struct UnityCriteria {
    unity: Arc<UnitySubgroup>,
    m: u32,
}

impl UnityCriteria {
    pub fn new(unity: Arc<UnitySubgroup>) -> Result<UnityCriteria> {
        let base = unity.base();
        if base.characteristic() != 3 {
            return Err(Error::Unsupported(format!(
                "root-of-unity criteria need characteristic 3, got {}",
                base.characteristic()
            )));
        }
        let m = base.degree();
        Ok(UnityCriteria { unity, m })
    }

    pub fn for_q(q: u64) -> Result<UnityCriteria> {
        let (p, m) = prime_power(q).ok_or_else(|| invalid!("q = {q} is not a prime power"))?;
        UnityCriteria::new(unity_tower(p, m)?)
    }

    pub fn unity(&self) -> &Arc<UnitySubgroup> {
        &self.unity
    }

    pub fn q(&self) -> u64 {
        self.unity.q()
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    fn ext(&self) -> &FieldSpec {
        self.unity.ext()
    }

    fn require_member(&self, u: Elem) -> Result<()> {
        if !self.unity.contains(u) {
            return Err(invalid!("{u:?} is not a {}-th root of unity", self.q() + 1));
        }
        Ok(())
    }

    fn require_odd_m(&self) -> Result<()> {
        if self.m.is_multiple_of(2) {
            return Err(Error::Unsupported(format!("criterion holds only for odd m, got m = {}", self.m)));
        }
        Ok(())
    }

    /// Validates membership and pairwise distinctness.
    pub fn triple(&self, x: Elem, y: Elem, z: Elem) -> Result<UTriple> {
        for u in [x, y, z] {
            self.require_member(u)?;
        }
        if x == y || y == z || x == z {
            return Err(invalid!("triple elements must be pairwise distinct"));
        }
        Ok(UTriple { x, y, z })
    }

    /// The triple `(beta^i, beta^j, beta^l)`.
    pub fn triple_from_exponents(&self, i: i64, j: i64, l: i64) -> Result<UTriple> {
        self.triple(self.unity.power(i), self.unity.power(j), self.unity.power(l))
    }

    fn require_not_one(&self, t: &UTriple) -> Result<()> {
        if [t.x, t.y, t.z].contains(&Elem::ONE) {
            return Err(invalid!("triple elements must differ from 1"));
        }
        Ok(())
    }

    fn pw(&self, u: Elem, e: i64) -> Elem {
        self.ext().pow_signed(u, e).expect("roots of unity are nonzero")
    }

    /// `(u^4, u^5, u^-5, u^-4)`.
    pub fn column(&self, u: Elem) -> [Elem; 4] {
        [self.pw(u, 4), self.pw(u, 5), self.pw(u, -5), self.pw(u, -4)]
    }

    /// `det [[x^4, y^4, z^4], [x^5, y^5, z^5], [x^-5, y^-5, z^-5]]`.
    pub fn det3(&self, t: &UTriple) -> Elem {
        let mut a = [[Elem::ZERO; 3]; 3];
        for (c, u) in [t.x, t.y, t.z].into_iter().enumerate() {
            for (r, e) in [4, 5, -5].into_iter().enumerate() {
                a[r][c] = self.pw(u, e);
            }
        }
        det3(self.ext(), &a)
    }

    /// The 4x4 determinant with columns `(u^4, u^5, u^-5, u^-4)` for
    /// `u = x, y, z` and a column of ones.
    pub fn det4(&self, t: &UTriple) -> Result<Elem> {
        self.require_not_one(t)?;
        let cols = [self.column(t.x), self.column(t.y), self.column(t.z), [Elem::ONE; 4]];
        let mut a = [[Elem::ZERO; 4]; 4];
        for (c, col) in cols.iter().enumerate() {
            for r in 0..4 {
                a[r][c] = col[r];
            }
        }
        Ok(det4(self.ext(), &a))
    }

    /// `XYZ ((X+1)(Y+1)(Z+1))^-5 * det [[Y^9 - X^9, Z^9 - X^9], [Y^8 - X^8, Z^8 - X^8]]`
    /// with `X = x - 1`, `Y = y - 1`, `Z = z - 1`.
    pub fn det4_factored(&self, t: &UTriple) -> Result<Elem> {
        self.require_not_one(t)?;
        let f = self.ext();
        let prefactor = self.prefactor(t);
        if prefactor.is_zero() {
            return Err(internal!("prefactor vanishes at {t:?}"));
        }
        Ok(f.mul(prefactor, self.det2(t)))
    }

    /// `XYZ ((X+1)(Y+1)(Z+1))^-5`.
    pub fn prefactor(&self, t: &UTriple) -> Elem {
        let f = self.ext();
        let [xx, yy, zz] = self.shifted(t);
        let xyz = f.mul(f.mul(xx, yy), zz);
        let prod = f.mul(f.mul(t.x, t.y), t.z);
        f.mul(xyz, self.pw(prod, -5))
    }

    /// `(x - 1, y - 1, z - 1)`.
    pub fn shifted(&self, t: &UTriple) -> [Elem; 3] {
        let f = self.ext();
        [t.x, t.y, t.z].map(|u| f.sub(u, Elem::ONE))
    }

    fn det2(&self, t: &UTriple) -> Elem {
        let f = self.ext();
        let [xx, yy, zz] = self.shifted(t);
        let p = |u: Elem, e: u64| f.pow(u, e);
        let a = f.sub(p(yy, 9), p(xx, 9));
        let b = f.sub(p(zz, 9), p(xx, 9));
        let c = f.sub(p(yy, 8), p(xx, 8));
        let d = f.sub(p(zz, 8), p(xx, 8));
        f.sub(f.mul(a, d), f.mul(b, c))
    }

    /// `(y - 1)(z - x) / ((x - 1)(z - y))`, which lies in GF(q); that
    /// membership is checked on every call.
    pub fn delta(&self, t: &UTriple) -> Result<Elem> {
        self.require_not_one(t)?;
        let f = self.ext();
        let num = f.mul(f.sub(t.y, Elem::ONE), f.sub(t.z, t.x));
        let den = f.mul(f.sub(t.x, Elem::ONE), f.sub(t.z, t.y));
        let delta = f.div(num, den).ok_or_else(|| invalid!("zero denominator at {t:?}"))?;
        if f.frobenius(delta, self.q()) != delta {
            return Err(internal!("delta {delta:?} is not in GF(q) at {t:?}"));
        }
        Ok(delta)
    }

    /// Whether the 2x2 determinant in the factored form vanishes; checked to
    /// agree with `delta = -1` on every call. Odd `m` only.
    pub fn condition_2x2(&self, t: &UTriple) -> Result<bool> {
        self.require_odd_m()?;
        self.require_not_one(t)?;
        let vanishes = self.det2(t).is_zero();
        let minus_one = self.ext().neg(Elem::ONE);
        if vanishes != (self.delta(t)? == minus_one) {
            return Err(internal!("2x2 condition disagrees with delta = -1 at {t:?}"));
        }
        Ok(vanishes)
    }

    /// Whether `x + y + xy = 0`; checked to agree with `x + y + 1 = 0` and
    /// with `x = y = 1` on every call.
    pub fn special_sum_check(&self, x: Elem, y: Elem) -> Result<bool> {
        self.require_member(x)?;
        self.require_member(y)?;
        let f = self.ext();
        let s = f.add(x, y);
        let a = f.add(s, f.mul(x, y)).is_zero();
        let b = f.add(s, Elem::ONE).is_zero();
        let c = x == Elem::ONE && y == Elem::ONE;
        if a != b || a != c {
            return Err(internal!("sum conditions disagree at ({x:?}, {y:?})"));
        }
        Ok(a)
    }

    /// `z = -(x + y + xy) / (x + y + 1)`, checked to be a root of unity
    /// distinct from `x`, `y` and 1.
    pub fn unique_z(&self, x: Elem, y: Elem) -> Result<Elem> {
        self.require_member(x)?;
        self.require_member(y)?;
        if x == y || x == Elem::ONE || y == Elem::ONE {
            return Err(invalid!("x and y must be distinct and differ from 1"));
        }
        let f = self.ext();
        let s = f.add(x, y);
        let num = f.neg(f.add(s, f.mul(x, y)));
        let den = f.add(s, Elem::ONE);
        let z = f.div(num, den).ok_or_else(|| internal!("x + y + 1 = 0 at ({x:?}, {y:?})"))?;
        if !self.unity.contains(z) || z == x || z == y || z == Elem::ONE {
            return Err(internal!("z = {z:?} is not a root of unity outside {{x, y, 1}}"));
        }
        Ok(z)
    }

    /// Whether the two-row system over `(x, y, z, 1)` has a nonzero solution
    /// over GF(q), decided by the vanishing of [`Self::det4`]. Odd `m` only.
    pub fn rational_solution_exists(&self, t: &UTriple) -> Result<bool> {
        self.require_odd_m()?;
        Ok(self.det4(t)?.is_zero())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairMode {
    /// Check the closed-form `z` for each pair.
    FormulaOnly,
    /// Also scan every `z` and count vanishing determinants.
    ExhaustiveScan,
}

impl FromStr for PairMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<PairMode> {
        match s {
            "formula_only" | "formula-only" => Ok(PairMode::FormulaOnly),
            "exhaustive_scan" | "exhaustive-scan" => Ok(PairMode::ExhaustiveScan),
            _ => Err(invalid!("unknown pair mode {s:?}")),
        }
    }
}

impl fmt::Display for PairMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairMode::FormulaOnly => "formula_only",
            PairMode::ExhaustiveScan => "exhaustive_scan",
        })
    }
}

/// A pair `(beta^i, beta^j)` whose check failed. Exponents are in `1..=q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairFailure {
    pub i: u64,
    pub j: u64,
    /// Exponent of the closed-form `z`, when it could be computed.
    pub formula_z: Option<u64>,
    /// Exponents of every `z` with a vanishing determinant (scan mode only).
    pub zeros: Vec<u64>,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairCertReport {
    pub q: u64,
    pub mode: PairMode,
    pub pairs_checked: u64,
    pub determinants_evaluated: u64,
    pub all_unique: bool,
    pub failures: Vec<PairFailure>,
    pub failure_count: u64,
}

/// Number of determinant evaluations [`certify_pairs`] performs.
pub fn pair_workload(q: u64, mode: PairMode) -> u128 {
    let pairs = q as u128 * (q as u128 - 1) / 2;
    match mode {
        PairMode::FormulaOnly => pairs,
        PairMode::ExhaustiveScan => pairs * (q as u128 - 2),
    }
}

/// For every unordered pair `{beta^i, beta^j}`, `1 <= i < j <= q`, checks
/// that the closed-form `z` is a root of unity outside `{x, y, 1}` at which
/// the 4x4 determinant vanishes. In scan mode every other `z` is tried too
/// and exactly one must give a vanishing determinant.
pub fn certify_pairs(q: u64, mode: PairMode, budget: u64) -> Result<PairCertReport> {
    let crit = UnityCriteria::for_q(q)?;
    crit.require_odd_m()?;
    let work = pair_workload(q, mode);
    if work > budget as u128 {
        return Err(Error::ResourceLimit(format!(
            "{mode} at q = {q} needs {work} determinant evaluations, over the budget of {budget}"
        )));
    }
    let u = crit.unity();
    let columns: Vec<[Elem; 4]> = match mode {
        PairMode::ExhaustiveScan => u.elements().iter().map(|&e| crit.column(e)).collect(),
        PairMode::FormulaOnly => Vec::new(),
    };
    let chunks: Vec<(u64, u64, u64, Vec<PairFailure>)> = (1..=q)
        .into_par_iter()
        .map(|i| {
            let (mut pairs, mut evals, mut failed, mut failures) = (0u64, 0u64, 0u64, Vec::new());
            for j in i + 1..=q {
                pairs += 1;
                let (outcome, e) = match mode {
                    PairMode::FormulaOnly => check_formula(&crit, i, j),
                    PairMode::ExhaustiveScan => check_scan(&crit, &columns, i, j),
                };
                evals += e;
                if let Some(fail) = outcome {
                    failed += 1;
                    if failures.len() < FAILURE_CAP {
                        failures.push(fail);
                    }
                }
            }
            (pairs, evals, failed, failures)
        })
        .collect();
    let mut report = PairCertReport {
        q,
        mode,
        pairs_checked: 0,
        determinants_evaluated: 0,
        all_unique: true,
        failures: Vec::new(),
        failure_count: 0,
    };
    for (pairs, evals, failed, failures) in chunks {
        report.pairs_checked += pairs;
        report.determinants_evaluated += evals;
        report.failure_count += failed;
        report.failures.extend(failures);
    }
    report.failures.truncate(FAILURE_CAP);
    report.all_unique = report.failure_count == 0;
    Ok(report)
}

fn failure(i: u64, j: u64, formula_z: Option<u64>, zeros: Vec<u64>, reason: impl Into<String>) -> Option<PairFailure> {
    Some(PairFailure { i, j, formula_z, zeros, reason: reason.into() })
}

/// Computes the closed-form `z`; on success returns its exponent.
fn formula_z(crit: &UnityCriteria, i: u64, j: u64) -> std::result::Result<u64, PairFailure> {
    let u = crit.unity();
    match crit.unique_z(u.power(i as i64), u.power(j as i64)) {
        Ok(z) => Ok(u.exponent_of(z).expect("z is a root of unity") as u64),
        Err(e) => Err(failure(i, j, None, Vec::new(), e.to_string()).unwrap()),
    }
}

fn check_formula(crit: &UnityCriteria, i: u64, j: u64) -> (Option<PairFailure>, u64) {
    let l = match formula_z(crit, i, j) {
        Ok(l) => l,
        Err(f) => return (Some(f), 0),
    };
    let t = match crit.triple_from_exponents(i as i64, j as i64, l as i64) {
        Ok(t) => t,
        Err(e) => return (failure(i, j, Some(l), Vec::new(), e.to_string()), 0),
    };
    let (det, factored) = match (crit.det4(&t), crit.det4_factored(&t)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return (failure(i, j, Some(l), Vec::new(), e.to_string()), 1),
    };
    if det != factored {
        return (failure(i, j, Some(l), Vec::new(), "determinant disagrees with its factored form"), 1);
    }
    if !det.is_zero() {
        return (failure(i, j, Some(l), Vec::new(), "determinant does not vanish at the closed-form z"), 1);
    }
    (None, 1)
}

/// Cofactor expansion of the 4x4 determinant along the `z` column, so each
/// `z` costs four multiplications.
fn check_scan(crit: &UnityCriteria, columns: &[[Elem; 4]], i: u64, j: u64) -> (Option<PairFailure>, u64) {
    let f = crit.ext();
    let (cx, cy) = (&columns[i as usize], &columns[j as usize]);
    let mut cof = [Elem::ZERO; 4];
    for (r, slot) in cof.iter_mut().enumerate() {
        let mut a = [[Elem::ZERO; 3]; 3];
        for (rr, src) in (0..4).filter(|&x| x != r).enumerate() {
            a[rr] = [cx[src], cy[src], Elem::ONE];
        }
        let minor = det3(f, &a);
        *slot = if r % 2 == 0 { minor } else { f.neg(minor) };
    }
    let q = crit.q();
    let mut zeros = Vec::new();
    let mut evals = 0;
    for l in 1..=q {
        if l == i || l == j {
            continue;
        }
        evals += 1;
        let cz = &columns[l as usize];
        let det = (0..4).fold(Elem::ZERO, |acc, r| f.add(acc, f.mul(cof[r], cz[r])));
        if det.is_zero() {
            zeros.push(l);
        }
    }
    let fz = match formula_z(crit, i, j) {
        Ok(l) => l,
        Err(mut fail) => {
            fail.zeros = zeros;
            return (Some(fail), evals);
        }
    };
    if zeros != [fz] {
        let reason = format!("{} vanishing determinants", zeros.len());
        return (failure(i, j, Some(fz), zeros, reason), evals);
    }
    (None, evals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{bch_build, BchSpec};

    #[test]
    fn restricted_dims_of_small_and_full_sets() {
        let c = bch_build(&BchSpec::amds(27)).unwrap();
        let all: Vec<usize> = (1..=28).collect();
        assert_eq!(restricted_dim(&c, &all).unwrap(), 24);
        assert_eq!(restricted_dim(&c, &[1, 2, 3]).unwrap(), 0);
        assert_eq!(restricted_dim(&c, &[1, 5, 9, 13, 28]).unwrap(), 1);
        assert!(restricted_dim(&c, &[0, 1]).is_err());
        assert!(restricted_dim(&c, &[29]).is_err());
        assert!(restricted_dim(&c, &[]).is_err());
        assert!(restricted_dim(&c, &[3, 3]).is_err());
    }

    #[test]
    fn special_sums_in_u28() {
        let crit = UnityCriteria::for_q(27).unwrap();
        let u = crit.unity().clone();
        assert!(crit.special_sum_check(Elem::ONE, Elem::ONE).unwrap());
        for &x in u.elements() {
            for &y in u.elements() {
                if (x, y) != (Elem::ONE, Elem::ONE) {
                    assert!(!crit.special_sum_check(x, y).unwrap());
                }
            }
        }
    }

    #[test]
    fn triple_validation() {
        let crit = UnityCriteria::for_q(27).unwrap();
        assert!(crit.triple_from_exponents(1, 1, 2).is_err());
        assert!(crit.triple(Elem::ZERO, Elem::ONE, crit.unity().power(3)).is_err());
        let with_one = crit.triple_from_exponents(0, 1, 2).unwrap();
        assert!(crit.det4(&with_one).is_err());
        assert!(!crit.det3(&with_one).is_zero());
    }

    #[test]
    fn even_m_refused() {
        assert!(matches!(certify_pairs(9, PairMode::FormulaOnly, DEFAULT_PAIR_BUDGET), Err(Error::Unsupported(_))));
        let crit = UnityCriteria::for_q(9).unwrap();
        let t = crit.triple_from_exponents(1, 2, 3).unwrap();
        assert!(matches!(crit.condition_2x2(&t), Err(Error::Unsupported(_))));
        assert!(crit.det4(&t).is_ok());
    }

    #[test]
    fn pair_budget_enforced() {
        assert!(matches!(certify_pairs(243, PairMode::ExhaustiveScan, 1000), Err(Error::ResourceLimit(_))));
        assert_eq!(pair_workload(243, PairMode::ExhaustiveScan), 29403 * 241);
    }

    #[test]
    fn q27_pairs_exhaustive() {
        let r = certify_pairs(27, PairMode::ExhaustiveScan, DEFAULT_PAIR_BUDGET).unwrap();
        assert!(r.all_unique, "{:?}", r.failures);
        assert_eq!(r.pairs_checked, 351);
        assert_eq!(r.determinants_evaluated, 351 * 25);
    }
}
