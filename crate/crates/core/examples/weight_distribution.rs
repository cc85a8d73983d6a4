//! Exact weight distribution of the [28, 24] code via its 4-dimensional dual
//! and the MacWilliams transform.
use nmds::analysis::{classify, macwilliams_transform, nmds_identity_holds, weight_distribution, Strategy};
use nmds::codes::{bch_build, BchSpec};

fn main() -> nmds::Result<()> {
    let budget = nmds::analysis::DEFAULT_WORD_BUDGET;
    let code = bch_build(&BchSpec::amds(27))?;
    let dual = code.dual()?;
    let b = weight_distribution(&dual, Strategy::Direct, budget)?;
    println!("dual [{}, {}]: {} codewords", dual.n(), dual.k(), b.total());
    for (w, c) in b.counts().iter().enumerate().filter(|(_, c)| **c > 0u32.into()) {
        println!("  B_{w} = {c}");
    }
    let a = macwilliams_transform(&b, dual.k(), code.q())?;
    println!("code [{}, {}]: min weight {:?}", code.n(), code.k(), a.min_weight());
    for w in 4..=6 {
        println!("  A_{w} = {}", a.get(w));
    }
    println!("back-transform recovers B: {}", macwilliams_transform(&a, code.k(), code.q())? == b);
    println!("weight identity: {}", nmds_identity_holds(&a, code.k(), code.q())?);
    let c = classify(&code, budget)?;
    println!("classification: {} (d = {}, dual d = {})", c.label, c.d, c.dual_d);
    Ok(())
}
