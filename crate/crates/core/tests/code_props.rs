use nmds::codes::{bch_build, unity_parity_check, BchSpec, CodeRecord, CyclicCode};
use nmds::gf::{field_build, Elem, Field};
use nmds::linalg::Matrix;
use nmds::poly::Poly;
use nmds::Error;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_word(f: &Field, n: usize, rng: &mut impl Rng) -> Vec<Elem> {
    (0..n).map(|_| f.element(rng.gen_range(0..f.order())).unwrap()).collect()
}

fn amds(q: u64) -> CyclicCode {
    bch_build(&BchSpec::amds(q)).unwrap()
}

#[test]
fn generator_and_parity_check_shapes() {
    for q in [27, 243] {
        let code = amds(q);
        let (n, k) = (code.n(), code.k());
        let g = code.generator_matrix();
        let h = code.parity_check_matrix();
        assert_eq!((g.rows(), g.cols(), g.rank()), (k, n, k));
        assert_eq!((h.rows(), h.cols(), h.rank()), (n - k, n, n - k));
        assert!(g.mul(&h.transpose()).unwrap().is_zero());
    }
}

#[test]
fn check_polynomial_rows_span_the_parity_check() {
    for q in [27, 243] {
        let code = amds(q);
        let (n, k) = (code.n(), code.k());
        let f = code.field();
        let rev = code.check_poly().reciprocal();
        let mut rows = Vec::new();
        for i in 0..n - k {
            let mut row = vec![Elem::ZERO; n];
            for (j, &c) in rev.coeffs().iter().enumerate() {
                row[i + j] = c;
            }
            rows.push(row);
        }
        let hp = Matrix::from_rows(f, &rows, n).unwrap();
        assert_eq!(hp.rank(), n - k);
        assert!(code.generator_matrix().mul(&hp.transpose()).unwrap().is_zero());
        let both = hp.vstack(code.parity_check_matrix()).unwrap();
        assert_eq!(both.rank(), n - k);
    }
}

#[test]
fn codewords_are_closed_under_cyclic_shift_and_sums() {
    let code = amds(27);
    let f = code.field().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let a = code.encode(&random_word(&f, code.k(), &mut rng)).unwrap();
        let b = code.encode(&random_word(&f, code.k(), &mut rng)).unwrap();
        let mut shifted = a.clone();
        shifted.rotate_right(1);
        assert!(code.contains(&shifted).unwrap());
        let c = f.element(rng.gen_range(0..27)).unwrap();
        let sum: Vec<_> = a.iter().zip(&b).map(|(&x, &y)| f.add(x, f.mul(c, y))).collect();
        assert!(code.contains(&sum).unwrap());
        assert!(code.parity_check_matrix().mul_vec(&sum).unwrap().iter().all(|e| e.is_zero()));
    }
}

#[test]
fn dual_is_an_involution() {
    for q in [27, 243] {
        let code = amds(q);
        let dual = code.dual().unwrap();
        assert_eq!(dual.k(), code.n() - code.k());
        let back = dual.dual().unwrap();
        assert_eq!(back.generator_poly(), code.generator_poly());
        assert!(code.generator_matrix().mul(&dual.generator_matrix().transpose()).unwrap().is_zero());
    }
}

#[test]
fn unity_parity_check_agrees_with_membership() {
    let code = amds(27);
    let upc = unity_parity_check(27).unwrap();
    let f = code.field().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut members = 0;
    for i in 0..2000 {
        let word = if i % 2 == 0 {
            code.encode(&random_word(&f, code.k(), &mut rng)).unwrap()
        } else {
            let mut w = code.encode(&random_word(&f, code.k(), &mut rng)).unwrap();
            let j = rng.gen_range(0..w.len());
            w[j] = f.element(rng.gen_range(0..27)).unwrap();
            w
        };
        let inside = code.contains(&word).unwrap();
        members += inside as usize;
        assert_eq!(upc.annihilates(&word).unwrap(), inside);
    }
    assert!(members > 1000 && members < 2000);
}

#[test]
fn descent_dimension_matches_restricted_subcode() {
    let upc = unity_parity_check(27).unwrap();
    let code = amds(27);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for size in [4, 5, 6, 8] {
        for _ in 0..50 {
            let cols = rand::seq::index::sample(&mut rng, 28, size).into_vec();
            let basis = upc.restricted_subcode(&cols).unwrap();
            assert_eq!(basis.len(), upc.restricted_dim(&cols));
            for w in &basis {
                assert!(code.contains(w).unwrap());
                assert!(w.iter().enumerate().all(|(j, e)| e.is_zero() || cols.contains(&j)));
            }
        }
    }
}

#[test]
fn unsupported_parameters() {
    assert!(matches!(bch_build(&BchSpec::new(27, 13, 3, 1)), Err(Error::Unsupported(_))));
    assert!(matches!(bch_build(&BchSpec::new(6, 7, 3, 1)), Err(Error::InvalidArgument(_))));
    assert!(matches!(bch_build(&BchSpec::new(27, 28, 1, 1)), Err(Error::InvalidArgument(_))));
    assert!(matches!(unity_parity_check(25), Err(Error::Unsupported(_))));
    let f = field_build(3, 1).unwrap();
    let not_divisor = Poly::new(f.clone(), vec![f.one(), f.one(), f.one(), f.one()]);
    assert!(CyclicCode::new(not_divisor, 5).is_err());
}

#[test]
fn json_round_trip_and_tampering() {
    let code = amds(27);
    let text = code.to_json().unwrap();
    let back = CyclicCode::from_json(&text).unwrap();
    assert_eq!(back.generator_poly(), code.generator_poly());
    assert_eq!(back.bch_spec(), code.bch_spec());
    let mut rec: CodeRecord = serde_json::from_str(&text).unwrap();
    rec.generator[1] = (rec.generator[1] + 1) % 27;
    assert!(CyclicCode::from_record(&rec).is_err());
    assert!(CyclicCode::from_json("{\"p\": 3}").is_err());
}

fn square(f: &Field, n: usize, data: &[u32]) -> Matrix {
    Matrix::new(f, n, n, data.iter().map(|&c| f.element(c % f.order()).unwrap()).collect()).unwrap()
}

proptest! {
    #[test]
    fn determinant_is_multiplicative(a in prop::collection::vec(0u32..9, 16), b in prop::collection::vec(0u32..9, 16)) {
        let f = field_build(3, 2).unwrap();
        let (a, b) = (square(&f, 4, &a), square(&f, 4, &b));
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(ab.det().unwrap(), f.mul(a.det().unwrap(), b.det().unwrap()));
        prop_assert_eq!(a.det().unwrap().is_zero(), a.rank() < 4);
        let mut rows = [[Elem::ZERO; 4]; 4];
        for (r, row) in rows.iter_mut().enumerate() {
            row.copy_from_slice(a.row(r));
        }
        prop_assert_eq!(nmds::linalg::det4(&f, &rows), a.det().unwrap());
    }

    #[test]
    fn rank_of_transpose(rows in 1usize..7, cols in 1usize..7, data in prop::collection::vec(0u32..3, 36)) {
        let f = field_build(3, 1).unwrap();
        let a = Matrix::new(&f, rows, cols, data[..rows * cols].iter().map(|&c| f.element(c).unwrap()).collect()).unwrap();
        prop_assert_eq!(a.rank(), a.transpose().rank());
        let null = a.nullspace();
        prop_assert_eq!(null.len() + a.rank(), cols);
        for v in &null {
            prop_assert!(a.mul_vec(v).unwrap().iter().all(|e| e.is_zero()));
        }
        let all: Vec<usize> = (0..cols).collect();
        prop_assert_eq!(nmds::linalg::restricted_rank(&a, &all), a.rank());
    }
}
