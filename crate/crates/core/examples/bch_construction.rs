//! Builds C(q, q+1, 3, 4) and its matrices, encodes a message, and round-trips
//! the code through JSON.
use nmds::codes::{bch_build, BchSpec, CyclicCode};
use nmds::poly::CyclotomicCoset;

fn main() -> nmds::Result<()> {
    let q = 27;
    let spec = BchSpec::amds(q);
    for h in [4, 5] {
        let c = CyclotomicCoset::new(h, q + 1, q)?;
        println!("coset of {h} mod {}: {:?}", q + 1, c.members());
    }
    let code = bch_build(&spec)?;
    println!("{spec}: [{}, {}]", code.n(), code.k());
    println!("g(x) = {}", code.generator_poly());
    println!("h(x) has degree {}", code.check_poly().degree().unwrap());

    let g = code.generator_matrix();
    let h = code.parity_check_matrix();
    println!("G is {}x{} of rank {}", g.rows(), g.cols(), g.rank());
    println!("H is {}x{} and G H^T = 0: {}", h.rows(), h.cols(), g.mul(&h.transpose())?.is_zero());

    let f = code.field();
    let msg: Vec<_> = (0..code.k()).map(|i| f.from_int(i as i64 % 3)).collect();
    let word = code.encode(&msg)?;
    println!("encoded word in code: {}", code.contains(&word)?);

    let dual = code.dual()?;
    println!("dual: [{}, {}], g_dual = {}", dual.n(), dual.k(), dual.generator_poly());

    let json = code.to_json()?;
    let back = CyclicCode::from_json(&json)?;
    println!("JSON round trip preserves the generator: {}", back.generator_poly() == code.generator_poly());
    Ok(())
}
