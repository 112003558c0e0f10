//! Run sgopt for a single guess and print what each iteration sampled and picked.

use ksubcover::algorithms::{greedy_by_budget, iteration_count, sgopt_with, Instance, SgoptOptions};
use ksubcover::data::{build_dataset, DatasetSpec};
use ksubcover::oracle::CountingOracle;
use ksubcover::rng::RngStream;

fn main() -> ksubcover::Result<()> {
    let dataset = build_dataset(&DatasetSpec::er(60, 0.08, 3, 5))?;
    let oracle = CountingOracle::new(dataset.objective);
    let t = greedy_by_budget(&oracle, &[12])[0];
    let inst = Instance::new(&oracle, t)?;
    let (v, eps, delta) = (6, 0.1, 0.2);
    println!("T = {t:.3}, cap = {:.3}, iterations = {}", inst.cap(), iteration_count(v, delta));

    let run = sgopt_with(&inst, v, eps, delta, &mut RngStream::new(11), &SgoptOptions::default())?;
    for (j, it) in run.trace.iter().enumerate() {
        println!(
            "j={:<2} sampled {:>2} picked ({}:{}) gain {:.3} value {:.3}",
            j + 1,
            it.upsilon,
            it.chosen.0,
            it.chosen.1,
            it.gain,
            it.value
        );
    }
    let r = &run.record;
    println!("support {} f {:.3} queries {} reached {}", r.support_size, r.f_value, r.queries, r.threshold_reached);
    Ok(())
}
