//! End-to-end verification that `C(q, q + 1, 3, 4)`, `q = 3^m` with `m`
//! odd, is an almost-MDS code with an almost-MDS dual.

use num_bigint::BigUint;
use num_integer::binomial;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analysis::{
    distributions, monic_census, nmds_identity_holds, MonicCensus, WeightDistribution, DEFAULT_SUBSET_BUDGET,
    DEFAULT_WORD_BUDGET,
};
use crate::codes::{bch_build, BchSpec, CyclicCode, UnityParityCheck};
use crate::error::{Error, Result};
use crate::nmds::{
    certify_generic, certify_pairs, count_supporting_subsets, pair_witness, pair_workload, PairCertReport, PairMode,
    SubsetCertReport, UnityCriteria, DEFAULT_PAIR_BUDGET,
};

/// Work limits for the enumeration stages.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budgets {
    /// Codewords enumerated for a weight distribution.
    pub words: u64,
    /// Coordinate subsets examined.
    pub subsets: u64,
    /// Determinants evaluated by the pair certifier.
    pub pairs: u64,
}

impl Default for Budgets {
    fn default() -> Budgets {
        Budgets { words: DEFAULT_WORD_BUDGET, subsets: DEFAULT_SUBSET_BUDGET, pairs: DEFAULT_PAIR_BUDGET }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Not run because it exceeds a budget.
    Skipped,
}

impl Status {
    fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
    pub method: String,
    pub detail: String,
}

/// Everything the pipeline computed, with one [`Check`] per claim.
#[derive(Clone, Debug, Serialize)]
pub struct ConjectureReport {
    pub q: u64,
    pub m: u32,
    pub n: usize,
    pub k: usize,
    pub checks: Vec<Check>,
    pub pair_certification: PairCertReport,
    #[serde(skip)]
    pub weights: Option<(WeightDistribution, WeightDistribution)>,
    pub census: Option<MonicCensus>,
    pub subset_certification: Option<SubsetCertReport>,
}

impl ConjectureReport {
    /// No check failed.
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    /// Every check ran.
    pub fn complete(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Skipped)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Number of random triples checked against the determinant identities.
pub const SAMPLED_TRIPLES: usize = 1000;

pub fn run_conjecture(m: u32, budgets: &Budgets, seed: u64) -> Result<ConjectureReport> {
    if m < 3 || m.is_multiple_of(2) {
        return Err(Error::Unsupported(format!(
            "the claim concerns q = 3^m with m >= 3 odd; got m = {m} (for even m, gcd(q - 1, 8) != 2)"
        )));
    }
    let q = 3u64.pow(m);
    let code = bch_build(&BchSpec::amds(q))?;
    let (n, k) = (code.n(), code.k());
    let mut checks = Vec::new();

    let deg = code.generator_poly().degree().unwrap_or(0);
    checks.push(Check {
        name: "generator_degree",
        status: Status::from_bool(deg == 4 && k + 4 == n),
        method: "lcm of minimal polynomials".into(),
        detail: format!("deg g = {deg}, k = {k}"),
    });

    let crit = UnityCriteria::new(code.unity().expect("built from roots of unity").clone())?;
    let upc = UnityParityCheck::from_unity(crit.unity().clone());

    let mode = if pair_workload(q, PairMode::ExhaustiveScan) <= budgets.pairs as u128 {
        PairMode::ExhaustiveScan
    } else {
        PairMode::FormulaOnly
    };
    let pairs = certify_pairs(q, mode, budgets.pairs)?;
    checks.push(Check {
        name: "pair_certification",
        status: Status::from_bool(pairs.all_unique),
        method: mode.to_string(),
        detail: format!(
            "{} pairs, {} determinants, {} failures",
            pairs.pairs_checked, pairs.determinants_evaluated, pairs.failure_count
        ),
    });
    checks.push(sampled_identities(&crit, seed)?);

    let mut report = ConjectureReport {
        q,
        m,
        n,
        k,
        checks,
        pair_certification: pairs,
        weights: None,
        census: None,
        subset_certification: None,
    };
    let dual_words = (q as u128).checked_pow(4).unwrap_or(u128::MAX);
    if dual_words <= budgets.words as u128 {
        by_weights(&code, budgets, &mut report)?;
    } else {
        by_supports(&code, &upc, budgets, &mut report)?;
    }
    let status = |name| report.check(name).map_or(Status::Skipped, |c| c.status);
    let (a, b) = (status("code_parameters"), status("dual_parameters"));
    let nmds = match (a, b) {
        (Status::Fail, _) | (_, Status::Fail) => Status::Fail,
        (Status::Pass, Status::Pass) => Status::Pass,
        _ => Status::Skipped,
    };
    report.checks.push(Check {
        name: "nmds",
        status: nmds,
        method: "code and dual both almost MDS".into(),
        detail: format!("[{n}, {k}] code, [{n}, {}] dual", n - k),
    });
    Ok(report)
}

fn sampled_identities(crit: &UnityCriteria, seed: u64) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = crit.q();
    let mut bad = 0;
    for _ in 0..SAMPLED_TRIPLES {
        let (i, j, l) = loop {
            let t = (rng.gen_range(1..=q), rng.gen_range(1..=q), rng.gen_range(1..=q));
            if t.0 != t.1 && t.1 != t.2 && t.0 != t.2 {
                break t;
            }
        };
        let t = crit.triple_from_exponents(i as i64, j as i64, l as i64)?;
        let det = crit.det4(&t)?;
        let agrees = det == crit.det4_factored(&t)? && crit.condition_2x2(&t)? == det.is_zero();
        bad += !agrees as u32;
    }
    Ok(Check {
        name: "sampled_determinant_identities",
        status: Status::from_bool(bad == 0),
        method: format!("{SAMPLED_TRIPLES} random triples, seed {seed}"),
        detail: format!("{bad} disagreements"),
    })
}

/// Parameters from the exact weight distributions, plus the census and the
/// subset certifier when they fit the subset budget.
fn by_weights(code: &CyclicCode, budgets: &Budgets, report: &mut ConjectureReport) -> Result<()> {
    let (n, k, q) = (code.n(), code.k(), code.q());
    let (wd, dual) = distributions(code, budgets.words)?;
    let d = wd.min_weight().unwrap_or(n + 1);
    let dd = dual.min_weight().unwrap_or(n + 1);
    let method = "exact weight distributions (dual enumeration and MacWilliams transform)";
    report.checks.push(Check {
        name: "code_parameters",
        status: Status::from_bool(d == 4),
        method: method.into(),
        detail: format!("[{n}, {k}, {d}]"),
    });
    report.checks.push(Check {
        name: "dual_parameters",
        status: Status::from_bool(dd == k),
        method: method.into(),
        detail: format!("[{n}, {}, {dd}]", n - k),
    });
    let holds = d + k == n && nmds_identity_holds(&wd, k, q)?;
    report.checks.push(Check {
        name: "weight_identity",
        status: Status::from_bool(holds),
        method: "k A_{n-k} + A_{n-k+1} = (q - 1) C(n, n-k+1)".into(),
        detail: format!("A_{} = {}, A_{} = {}", n - k, wd.get(n - k), n - k + 1, wd.get(n - k + 1)),
    });
    let subsets = binomial(BigUint::from(n), BigUint::from(n - k + 1));
    if subsets <= BigUint::from(budgets.subsets) {
        let census = monic_census(code, budgets.subsets)?;
        let qm1 = BigUint::from(q - 1);
        let ok = BigUint::from(census.e1) * &qm1 == wd.get(n - k)
            && BigUint::from(census.e2) * &qm1 == wd.get(n - k + 1)
            && census.f1 == k as u64 * census.e1
            && census.f2 == census.e2
            && BigUint::from(census.f1 + census.f2) == subsets
            && census.overlap == 0;
        report.checks.push(Check {
            name: "census",
            status: Status::from_bool(ok),
            method: "monic codewords over all support subsets against the weight distribution".into(),
            detail: format!("e1 = {}, e2 = {}, f1 = {}, f2 = {}", census.e1, census.e2, census.f1, census.f2),
        });
        let cert = certify_generic(code, budgets.subsets)?;
        report.checks.push(Check {
            name: "subset_certification",
            status: Status::from_bool(cert.all_dim_one),
            method: "restricted subcode dimensions".into(),
            detail: format!("{} subsets, {} failures", cert.subsets_checked, cert.failure_count),
        });
        report.census = Some(census);
        report.subset_certification = Some(cert);
    } else {
        for name in ["census", "subset_certification"] {
            report.checks.push(skipped(name, format!("C({n}, {}) = {subsets} subsets", n - k + 1)));
        }
    }
    report.weights = Some((wd, dual));
    Ok(())
}

/// Parameters without enumerating codewords: no 3 coordinates support a
/// codeword, a weight-4 codeword is built from the first certified pair, and
/// the dual parameters follow from the pair certificate.
fn by_supports(
    code: &CyclicCode,
    upc: &UnityParityCheck,
    budgets: &Budgets,
    report: &mut ConjectureReport,
) -> Result<()> {
    let (n, k) = (code.n(), code.k());
    let triples = binomial(BigUint::from(n), BigUint::from(3u32));
    if triples > BigUint::from(budgets.subsets) {
        report.checks.push(skipped("code_parameters", format!("C({n}, 3) = {triples} subsets")));
        report.checks.push(skipped("dual_parameters", "depends on code_parameters".into()));
        return Ok(());
    }
    let supported = count_supporting_subsets(upc, 3, budgets.subsets)?;
    let crit = UnityCriteria::new(upc.unity().clone())?;
    let u = upc.unity();
    let z = crit.unique_z(u.power(1), u.power(2))?;
    let l = u.exponent_of(z).expect("z is a root of unity") as u64;
    let witness = pair_witness(upc, 1, 2, l)?;
    let weight = witness.as_ref().map(|w| w.iter().filter(|e| !e.is_zero()).count());
    let is_codeword = match &witness {
        Some(w) => code.contains(w)?,
        None => false,
    };
    let ok = supported == 0 && weight == Some(4) && is_codeword;
    report.checks.push(Check {
        name: "code_parameters",
        status: Status::from_bool(ok),
        method: "no codeword supported on 3 coordinates; weight-4 codeword from the pair (1, 2)".into(),
        detail: format!(
            "{supported} supporting 3-subsets, witness weight {}, [{n}, {k}, 4]",
            weight.map_or("none".into(), |w| w.to_string())
        ),
    });
    let dual_ok = ok && report.pair_certification.all_unique;
    report.checks.push(Check {
        name: "dual_parameters",
        status: Status::from_bool(dual_ok),
        method: "pair certificate: every restricted subcode on n - k + 1 coordinates is one-dimensional".into(),
        detail: format!("[{n}, {}, {}]", n - k, k),
    });
    Ok(())
}

fn skipped(name: &'static str, why: String) -> Check {
    Check { name, status: Status::Skipped, method: "over budget".into(), detail: why }
}
