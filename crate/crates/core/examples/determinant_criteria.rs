//! The determinant criteria on a few triples of (q+1)-th roots of unity.
use nmds::nmds::UnityCriteria;

fn main() -> nmds::Result<()> {
    let crit = UnityCriteria::for_q(27)?;
    let u = crit.unity().clone();
    let f = u.ext();
    for (i, j, l) in [(1, 2, 3), (1, 5, 9), (3, 7, 20)] {
        let t = crit.triple_from_exponents(i, j, l)?;
        let det4 = crit.det4(&t)?;
        println!(
            "({i}, {j}, {l}): det3 = {}, det4 = {}, factored agrees: {}, delta = {}, 2x2 condition: {}",
            f.format_elem(crit.det3(&t)),
            f.format_elem(det4),
            det4 == crit.det4_factored(&t)?,
            f.format_elem(crit.delta(&t)?),
            crit.condition_2x2(&t)?
        );
    }
    let (x, y) = (u.power(2), u.power(11));
    let z = crit.unique_z(x, y)?;
    let t = crit.triple(x, y, z)?;
    println!(
        "x = beta^2, y = beta^11: z = beta^{}, det4 = {}",
        u.exponent_of(z).unwrap(),
        f.format_elem(crit.det4(&t)?)
    );
    println!("x + y + xy = 0: {}", crit.special_sum_check(x, y)?);

    for q in [9, 27, 81, 243] {
        let crit = UnityCriteria::for_q(q)?;
        let mut total = 0;
        let mut vanishing = 0;
        for i in 0..=q as i64 {
            for j in i + 1..=q as i64 {
                for l in j + 1..=q as i64 {
                    total += 1;
                    vanishing += crit.det3(&crit.triple_from_exponents(i, j, l)?).is_zero() as u32;
                }
            }
        }
        println!("q = {q}: det3 vanishes on {vanishing} of {total} triples");
    }
    Ok(())
}
