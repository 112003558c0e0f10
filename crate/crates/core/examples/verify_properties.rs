//! Check k-submodularity and monotonicity empirically, exhaustively and by sampling.

use ksubcover::experiment::{verify_all, OracleChoice};
use ksubcover::oracle::CountingOracle;
use ksubcover::verify::Mode;

fn main() -> ksubcover::Result<()> {
    for choice in [OracleChoice::Revenue, OracleChoice::Coverage, OracleChoice::Broken] {
        let oracle = CountingOracle::new(choice.build(4, 2, 3)?);
        println!("{choice:?}, n=4 k=2, exhaustive");
        for report in verify_all(&oracle, Mode::exhaustive(), 0, None)? {
            println!("  {report}");
            if let Some(w) = report.violations.first() {
                println!("    e.g. {}: {} < {}", w.case, w.lhs, w.rhs);
            }
        }
    }

    let oracle = CountingOracle::new(OracleChoice::Revenue.build(20, 3, 3)?);
    println!("Revenue, n=20 k=3, randomized, truncated at T=4");
    for report in verify_all(&oracle, Mode::randomized(5_000), 7, Some(4.0))? {
        println!("  {report}");
    }
    Ok(())
}
