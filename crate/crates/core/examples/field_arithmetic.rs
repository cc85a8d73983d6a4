//! Arithmetic in GF(3^3) and the order-(q+1) subgroup of GF(q^2).
use nmds::gf::{field_build, unity_tower};

fn main() -> nmds::Result<()> {
    let f = field_build(3, 3)?;
    let g = f.primitive_element();
    println!("GF({}) modulus: {}", f.order(), nmds::gf::format_coeffs(f.modulus(), "x"));
    println!("primitive element: {} (index {})", f.format_elem(g), g.index());

    let a = f.from_coeffs(&[1, 2, 0])?;
    let b = f.from_coeffs(&[0, 1, 1])?;
    println!("a = {}, b = {}", f.format_elem(a), f.format_elem(b));
    println!("a + b = {}", f.format_elem(f.add(a, b)));
    println!("a * b = {}", f.format_elem(f.mul(a, b)));
    println!("a / b = {}", f.format_elem(f.div(a, b).expect("b is nonzero")));
    println!("a^27 = a: {}", f.pow(a, 27) == a);

    let u = unity_tower(3, 3)?;
    let ext = u.ext();
    println!("GF({}) modulus: {}", ext.order(), nmds::gf::format_coeffs(ext.modulus(), "x"));
    println!("beta = {} has order {}", ext.format_elem(u.beta()), ext.multiplicative_order(u.beta()).unwrap());
    let x = u.power(5);
    println!("beta^5 is fixed by x -> x^-q: {}", ext.pow(x, u.q()) == ext.inv(x).unwrap());
    let pair = u.pair();
    let embedded = pair.embed(a);
    println!("a embeds into GF({}) and projects back: {}", ext.order(), pair.project(embedded) == Some(a));
    Ok(())
}
