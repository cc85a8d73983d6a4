use nmds::analysis::{
    classify, macwilliams_transform, min_distance, monic_census, weight_distribution, Label, Strategy,
    WeightDistribution,
};
use nmds::codes::CyclicCode;
use nmds::gf::unity_tower;
use nmds::poly::{minimal_poly, CyclotomicCoset, Poly};
use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_traits::{Signed, Zero};

const BUDGET: u64 = 1 << 22;

/// Every cyclic code of length q + 1 over GF(q), one per set of cyclotomic cosets.
fn all_cyclic_codes(m: u32) -> Vec<CyclicCode> {
    let u = unity_tower(3, m).unwrap();
    let q = u.q();
    let n = q + 1;
    let mut seen = vec![false; n as usize];
    let mut factors = Vec::new();
    for i in 0..n {
        if !seen[i as usize] {
            for &j in CyclotomicCoset::new(i, n, q).unwrap().members() {
                seen[j as usize] = true;
            }
            factors.push(minimal_poly(&u, i as i64).unwrap());
        }
    }
    (0u32..1 << factors.len())
        .map(|mask| {
            let mut g = Poly::one(u.base());
            for (b, f) in factors.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    g = &g * f;
                }
            }
            CyclicCode::new(g, n as usize).unwrap()
        })
        .collect()
}

/// `B_j = q^-k sum_i A_i K_j(i)` with Krawtchouk polynomials.
fn krawtchouk_dual(a: &WeightDistribution, k: usize, q: u64) -> Vec<BigUint> {
    let n = a.n();
    let big = |x: usize| BigInt::from(x);
    let size = BigInt::from(q).pow(k as u32);
    (0..=n)
        .map(|j| {
            let mut total = BigInt::zero();
            for i in 0..=n {
                let mut kj = BigInt::zero();
                for s in 0..=j.min(i) {
                    if j - s > n - i {
                        continue;
                    }
                    let term = BigInt::from(q - 1).pow((j - s) as u32)
                        * binomial(big(i), big(s))
                        * binomial(big(n - i), big(j - s));
                    kj += if s % 2 == 0 { term } else { -term };
                }
                total += BigInt::from(a.get(i)) * kj;
            }
            assert!((&total % &size).is_zero());
            let b = total / &size;
            assert!(!b.is_negative());
            b.to_biguint().unwrap()
        })
        .collect()
}

#[test]
fn transform_matches_krawtchouk_and_direct_enumeration() {
    let mut both_direct = 0;
    for m in [1, 2] {
        for code in all_cyclic_codes(m) {
            let (n, k, q) = (code.n(), code.k(), code.q());
            let dual = code.dual().unwrap();
            let small = |dim: usize| (q as u128).pow(dim as u32) <= BUDGET as u128;
            let a = weight_distribution(&code, Strategy::Auto, BUDGET).unwrap();
            let b = weight_distribution(&dual, Strategy::Auto, BUDGET).unwrap();
            assert_eq!(a.total(), BigUint::from(q).pow(k as u32));
            assert_eq!(b.total(), BigUint::from(q).pow((n - k) as u32));
            assert_eq!(macwilliams_transform(&a, k, q).unwrap(), b, "n = {n}, k = {k}");
            assert_eq!(macwilliams_transform(&b, n - k, q).unwrap(), a, "n = {n}, k = {k}");
            assert_eq!(krawtchouk_dual(&a, k, q), b.counts());
            assert_eq!(krawtchouk_dual(&b, n - k, q), a.counts());
            if small(k) && small(n - k) {
                assert_eq!(weight_distribution(&code, Strategy::Direct, BUDGET).unwrap(), a);
                assert_eq!(weight_distribution(&code, Strategy::ViaDual, BUDGET).unwrap(), a);
                both_direct += 1;
            }
        }
    }
    assert!(both_direct > 10);
}

#[test]
fn classification_of_every_small_cyclic_code() {
    let mut labels = Vec::new();
    for code in all_cyclic_codes(2) {
        let (n, k) = (code.n(), code.k());
        let c = classify(&code, BUDGET).unwrap();
        assert!(c.d + k <= n + 1 || k == 0);
        if c.label == Label::Mds {
            assert_eq!(c.dual_d, k + 1);
        }
        labels.push(c.label);
    }
    assert!(labels.contains(&Label::Mds));
    assert!(labels.contains(&Label::Nmds));
    assert!(labels.contains(&Label::Amds));
}

#[test]
fn census_matches_weights_on_nmds_codes() {
    let mut checked = 0;
    for code in all_cyclic_codes(2) {
        let k = code.k();
        if k < 2 || classify(&code, BUDGET).unwrap().label != Label::Nmds {
            continue;
        }
        let n = code.n();
        let a = weight_distribution(&code, Strategy::Auto, BUDGET).unwrap();
        let c = monic_census(&code, BUDGET).unwrap();
        let q1 = BigUint::from(code.q() - 1);
        assert_eq!(BigUint::from(c.e1) * &q1, a.get(n - k));
        assert_eq!(BigUint::from(c.e2) * &q1, a.get(n - k + 1));
        assert_eq!(c.f1 + c.f2, c.subsets);
        assert_eq!(c.dim_two, 0);
        checked += 1;
    }
    assert!(checked > 0);
}

#[test]
fn min_distance_is_cached_and_budgeted() {
    let code = nmds::codes::bch_build(&nmds::codes::BchSpec::amds(27)).unwrap();
    assert!(code.d().is_none());
    assert!(min_distance(&code, 1000).is_err());
    assert_eq!(min_distance(&code, BUDGET).unwrap(), 4);
    assert_eq!(code.d(), Some(4));
}
