//! Cover a calibrated threshold with fastsg and with greedy, and compare.

use ksubcover::algorithms::{fastsg_with, greedy_by_budget, greedy_cover, FastSgOptions, Instance, SgoptOptions};
use ksubcover::data::{build_dataset, DatasetSpec};
use ksubcover::oracle::CountingOracle;
use ksubcover::rng::RngStream;

fn main() -> ksubcover::Result<()> {
    let dataset = build_dataset(&DatasetSpec::er(300, 0.02, 3, 9))?;
    println!("{}", dataset.label);
    let oracle = CountingOracle::new(dataset.objective);
    let budgets = [10, 20, 40];
    let values = greedy_by_budget(&oracle, &budgets);

    println!("{:>8} {:>10} {:>12} {:>12} {:>12}", "T", "greedy", "fastsg", "fastsg+stop", "queries g/f/fs");
    for &t in &values {
        let inst = Instance::new(&oracle, t)?;
        let greedy = greedy_cover(&inst)?;
        let plain = fastsg_with(&inst, 0.1, 0.1, &mut RngStream::new(1), &FastSgOptions::default())?;
        let stop = FastSgOptions {
            sgopt: SgoptOptions {
                stop_at_cap: true,
                ..Default::default()
            },
            ..Default::default()
        };
        let early = fastsg_with(&inst, 0.1, 0.1, &mut RngStream::new(1), &stop)?;
        println!(
            "{:>8.2} {:>10} {:>12} {:>12}   {}/{}/{}",
            t,
            greedy.support_size,
            plain.record.support_size,
            early.record.support_size,
            greedy.queries,
            plain.record.queries,
            early.record.queries
        );
    }
    Ok(())
}
