//! Plug in your own function: implement `Objective`, or wrap a closure.

use ksubcover::algorithms::{fastsg, Instance};
use ksubcover::objectives::FnObjective;
use ksubcover::oracle::{CountingOracle, Objective};
use ksubcover::rng::RngStream;
use ksubcover::KSet;

/// Each position i has a budget of slots; element e in position i fills `size[e]`
/// of them, and the value is the filled fraction summed over positions.
struct Bins {
    size: Vec<f64>,
    capacity: Vec<f64>,
}

impl Objective for Bins {
    fn ground_size(&self) -> usize {
        self.size.len()
    }

    fn positions(&self) -> usize {
        self.capacity.len()
    }

    fn value(&self, x: &KSet) -> f64 {
        (1..=self.positions())
            .map(|i| {
                let used: f64 = x.coordinate(i).map(|e| self.size[e]).sum();
                used.min(self.capacity[i - 1])
            })
            .sum()
    }
}

fn main() -> ksubcover::Result<()> {
    let bins = Bins {
        size: vec![3.0, 1.0, 4.0, 1.0, 5.0, 9.0, 2.0, 6.0],
        capacity: vec![10.0, 8.0],
    };
    let oracle = CountingOracle::new(bins);
    let inst = Instance::new(&oracle, 30.0)?;
    let run = fastsg(&inst, 0.2, 0.2, &mut RngStream::new(1))?;
    println!("bins: {} f={} queries={}", run.solution, run.f_value, run.queries);

    let squares = CountingOracle::new(FnObjective::new(8, 2, |x: &KSet| (x.support_size() as f64).sqrt()));
    let inst = Instance::new(&squares, 4.0)?;
    let run = fastsg(&inst, 0.2, 0.2, &mut RngStream::new(1))?;
    println!("sqrt support: {} f={:.3}", run.solution, run.f_value);
    Ok(())
}
