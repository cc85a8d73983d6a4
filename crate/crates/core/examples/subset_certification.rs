//! Checks every 5-subset of coordinates of the [28, 24] code, then shows a
//! corrupted parity-check matrix failing the same test.
use nmds::codes::{bch_build, BchSpec};
use nmds::linalg::Matrix;
use nmds::nmds::{certify_generic, certify_parity_check, restricted_dim};

fn main() -> nmds::Result<()> {
    let budget = nmds::analysis::DEFAULT_SUBSET_BUDGET;
    let code = bch_build(&BchSpec::amds(27))?;
    println!("dim on {{1, 2, 3, 4, 5}}: {}", restricted_dim(&code, &[1, 2, 3, 4, 5])?);
    let report = certify_generic(&code, budget)?;
    println!("{} subsets checked, all one-dimensional: {}", report.subsets_checked, report.all_dim_one);

    let h = code.parity_check_matrix();
    let mut rows = h.row_vecs();
    for row in &mut rows {
        row[1] = row[0];
    }
    let bad = Matrix::from_rows(h.field(), &rows, h.cols())?;
    let report = certify_parity_check(&bad, code.k(), budget)?;
    println!("corrupted H: {} failures, all one-dimensional: {}", report.failure_count, report.all_dim_one);
    for f in report.failures.iter().take(3) {
        println!("  {:?} has dimension {}", f.subset, f.dim);
    }
    Ok(())
}
