use nmds::gf::{extension_build, field_build, unity_tower, Elem, Field};
use nmds::poly::{minimal_poly, CyclotomicCoset, Poly};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_elem(f: &Field, rng: &mut impl Rng) -> Elem {
    f.element(rng.gen_range(0..f.order())).unwrap()
}

#[test]
fn field_axioms_on_random_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (p, m) in [(3, 3), (3, 5), (3, 10), (2, 8), (5, 3), (7, 2)] {
        let f = field_build(p, m).unwrap();
        for _ in 0..10_000 {
            let (a, b, c) = (random_elem(&f, &mut rng), random_elem(&f, &mut rng), random_elem(&f, &mut rng));
            assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
            assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            assert_eq!(f.add(a, b), f.add(b, a));
            assert_eq!(f.mul(a, b), f.mul(b, a));
            assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            assert_eq!(f.add(a, f.neg(a)), f.zero());
            assert_eq!(f.sub(f.add(a, b), b), a);
            if !a.is_zero() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
                assert_eq!(f.div(f.mul(b, a), a), Some(b));
            }
        }
    }
}

#[test]
fn frobenius_fixes_everything_after_m_steps() {
    for (p, m) in [(3, 3), (3, 4), (2, 5), (5, 2)] {
        let f = field_build(p, m).unwrap();
        let q = f.order() as u64;
        for a in f.elements() {
            assert_eq!(f.pow(a, q), a);
        }
    }
}

#[test]
fn table_free_field_agrees_with_tables() {
    let fast = field_build(3, 6).unwrap();
    let slow = nmds::gf::FieldSpec::with_modulus(3, 6, fast.modulus().to_vec(), 0).unwrap();
    assert!(fast.has_tables() && !slow.has_tables());
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..5_000 {
        let (a, b) = (random_elem(&fast, &mut rng), random_elem(&fast, &mut rng));
        assert_eq!(fast.mul(a, b), slow.mul(a, b));
        assert_eq!(fast.inv(a), slow.inv(a));
        assert_eq!(fast.pow(a, 1234), slow.pow(a, 1234));
    }
}

#[test]
fn embedding_is_a_field_homomorphism() {
    for m in [1, 2, 3] {
        let base = field_build(3, m).unwrap();
        let pair = extension_build(&base).unwrap();
        let ext = pair.ext();
        let q = pair.q();
        let mut image = Vec::new();
        for a in base.elements() {
            let ea = pair.embed(a);
            assert_eq!(ext.pow(ea, q), ea);
            assert_eq!(pair.project(ea), Some(a));
            image.push(ea);
            for b in base.elements() {
                let eb = pair.embed(b);
                assert_eq!(pair.embed(base.add(a, b)), ext.add(ea, eb));
                assert_eq!(pair.embed(base.mul(a, b)), ext.mul(ea, eb));
            }
        }
        image.sort();
        image.dedup();
        assert_eq!(image.len() as u64, q);
        let fixed = ext.elements().filter(|&e| ext.pow(e, q) == e).count();
        assert_eq!(fixed as u64, q);
    }
}

#[test]
fn unity_subgroup_structure() {
    for m in [1, 2, 3, 5] {
        let u = unity_tower(3, m).unwrap();
        let ext = u.ext();
        let q = u.q();
        assert_eq!(u.len() as u64, q + 1);
        assert_eq!(ext.multiplicative_order(u.beta()), Some(q + 1));
        for (j, &x) in u.elements().iter().enumerate() {
            assert_eq!(ext.pow(x, q + 1), ext.one());
            assert_eq!(ext.mul(ext.pow(x, q), x), ext.one());
            assert_eq!(u.exponent_of(x), Some(j as u32));
        }
    }
}

fn random_poly(f: &Field, coeffs: &[u32]) -> Poly {
    Poly::new(f.clone(), coeffs.iter().map(|&c| f.element(c % f.order()).unwrap()).collect())
}

proptest! {
    #[test]
    fn divmod_round_trip(a in prop::collection::vec(0u32..27, 0..20), b in prop::collection::vec(0u32..27, 1..10)) {
        let f = field_build(3, 3).unwrap();
        let (a, b) = (random_poly(&f, &a), random_poly(&f, &b));
        prop_assume!(!b.is_zero());
        let (quot, rem) = a.divmod(&b).unwrap();
        prop_assert_eq!(&(&quot * &b) + &rem, a);
        prop_assert!(rem.is_zero() || rem.degree() < b.degree());
    }

    #[test]
    fn gcd_and_lcm(a in prop::collection::vec(0u32..9, 1..10), b in prop::collection::vec(0u32..9, 1..10)) {
        let f = field_build(3, 2).unwrap();
        let (a, b) = (random_poly(&f, &a), random_poly(&f, &b));
        prop_assume!(!a.is_zero() && !b.is_zero());
        let g = a.gcd(&b);
        prop_assert!(g.is_monic());
        prop_assert!(a.rem(&g).unwrap().is_zero());
        prop_assert!(b.rem(&g).unwrap().is_zero());
        let l = a.lcm(&b);
        prop_assert_eq!(&g * &l, (&a * &b).monic());
    }
}

fn coset_partition(n: u64, q: u64) -> Vec<CyclotomicCoset> {
    let mut seen = vec![false; n as usize];
    let mut cosets = Vec::new();
    for i in 0..n {
        if !seen[i as usize] {
            let c = CyclotomicCoset::new(i, n, q).unwrap();
            for &j in c.members() {
                assert!(!seen[j as usize], "cosets overlap at {j}");
                seen[j as usize] = true;
            }
            cosets.push(c);
        }
    }
    cosets
}

#[test]
fn cosets_partition_the_residues() {
    for q in [27u64, 243] {
        let n = q + 1;
        let cosets = coset_partition(n, q);
        for c in &cosets {
            for &j in c.members() {
                assert!(c.contains(j * q % n));
                assert_eq!(CyclotomicCoset::new(j, n, q).unwrap().members(), c.members());
            }
            assert!(c.len() <= 2);
        }
        assert_eq!(cosets.iter().map(|c| c.len() as u64).sum::<u64>(), n);
    }
}

#[test]
fn minimal_polys_factor_x_n_minus_one() {
    let u = unity_tower(3, 3).unwrap();
    let n = 28;
    let mut prod = Poly::one(u.base());
    for c in coset_partition(n, 27) {
        let mp = minimal_poly(&u, c.representative() as i64).unwrap();
        assert_eq!(mp.degree(), Some(c.len()));
        assert!(mp.is_irreducible());
        prod = &prod * &mp;
    }
    assert_eq!(prod, Poly::x_n_minus_one(u.base(), n as usize));
}

#[test]
fn amds_generator_has_degree_four() {
    for q in [27, 243, 2187] {
        let code = nmds::codes::bch_build(&nmds::codes::BchSpec::amds(q)).unwrap();
        assert_eq!(code.generator_poly().degree(), Some(4));
        assert_eq!(code.k() as u64, q - 3);
    }
}
