//! Exact minimum-support covers on tiny instances, next to what fastsg returns.

use ksubcover::algorithms::{brute_force_opt, fastsg, greedy_by_budget, BruteForce, Instance, DEFAULT_BRUTE_LIMIT};
use ksubcover::experiment::OracleChoice;
use ksubcover::oracle::CountingOracle;
use ksubcover::rng::RngStream;

fn main() -> ksubcover::Result<()> {
    for seed in 0..5 {
        let oracle = CountingOracle::new(OracleChoice::Revenue.build(8, 2, seed)?);
        let t = 0.8 * greedy_by_budget(&oracle, &[8])[0];
        let inst = Instance::new(&oracle, t)?;
        match brute_force_opt(&inst, DEFAULT_BRUTE_LIMIT)? {
            BruteForce::Optimal { solution, opt, value } => {
                let run = fastsg(&inst, 0.2, 0.2, &mut RngStream::new(seed))?;
                println!(
                    "seed {seed}: T={t:.2} opt={opt} {solution} f={value:.2} | fastsg support {} f={:.2}",
                    run.support_size, run.f_value
                );
            }
            BruteForce::Infeasible => println!("seed {seed}: infeasible"),
        }
    }
    Ok(())
}
