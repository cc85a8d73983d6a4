//! Counts monic minimum-weight codewords of the [28, 4] dual and the support
//! subsets they cover, then checks them against the weight distribution.
use nmds::analysis::{distributions, monic_census};
use nmds::codes::{bch_build, BchSpec};

fn main() -> nmds::Result<()> {
    let code = bch_build(&BchSpec::amds(27))?;
    let (wd, _) = distributions(&code, nmds::analysis::DEFAULT_WORD_BUDGET)?;
    let c = monic_census(&code, nmds::analysis::DEFAULT_SUBSET_BUDGET)?;
    let (n, k) = (c.n, c.k);
    println!("{} subsets of size {}", c.subsets, n - k + 1);
    println!("e1 = {} monic words of weight {}, (q-1) e1 = {}", c.e1, n - k, 26 * c.e1);
    println!("A_{} = {}", n - k, wd.get(n - k));
    println!("e2 = {} monic words of weight {}, (q-1) e2 = {}", c.e2, n - k + 1, 26 * c.e2);
    println!("A_{} = {}", n - k + 1, wd.get(n - k + 1));
    println!("f1 = {} = k e1: {}", c.f1, c.f1 == k as u64 * c.e1);
    println!("f2 = {} = e2: {}", c.f2, c.f2 == c.e2);
    println!("f1 + f2 = subsets: {}", c.f1 + c.f2 == c.subsets);
    println!("dimension 1: {}, dimension 2: {}", c.dim_one, c.dim_two);
    Ok(())
}
