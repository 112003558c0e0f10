use crate::error::{Error, Result};
use crate::kset::{all_ksets, lattice_size, KSet};

use super::Instance;

pub const DEFAULT_BRUTE_LIMIT: usize = 10;
const MAX_LATTICE: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq)]
pub enum BruteForce {
    /// A minimum-support k-set with raw `f >= T`; `opt` is its support size.
    Optimal { solution: KSet, opt: usize, value: f64 },
    Infeasible,
}

impl BruteForce {
    pub fn opt(&self) -> Option<usize> {
        match self {
            BruteForce::Optimal { opt, .. } => Some(*opt),
            BruteForce::Infeasible => None,
        }
    }
}

/// Enumerates all `(k+1)^n` k-sets. Among those reaching the threshold on the
/// raw oracle, returns one of minimum support, ties broken by the
/// lexicographically smallest pair list.
pub fn brute_force_opt(inst: &Instance<'_>, limit_n: usize) -> Result<BruteForce> {
    let (n, k) = (inst.n(), inst.k());
    if n > limit_n {
        return Err(Error::SizeGuard(format!(
            "n = {n} exceeds the brute-force limit of {limit_n}"
        )));
    }
    match lattice_size(n, k) {
        Some(size) if size <= MAX_LATTICE => {}
        _ => {
            return Err(Error::SizeGuard(format!(
                "(k+1)^n for n = {n}, k = {k} exceeds {MAX_LATTICE}"
            )))
        }
    }
    let mut best: Option<(KSet, f64)> = None;
    for x in all_ksets(n, k)? {
        if let Some((b, _)) = &best {
            if x.support_size() > b.support_size() {
                continue;
            }
        }
        let value = inst.oracle.evaluate(&x);
        if value < inst.threshold {
            continue;
        }
        let better = match &best {
            None => true,
            Some((b, _)) => x
                .support_size()
                .cmp(&b.support_size())
                .then_with(|| x.cmp_pairs(b))
                .is_lt(),
        };
        if better {
            best = Some((x, value));
        }
    }
    Ok(match best {
        Some((solution, value)) => BruteForce::Optimal {
            opt: solution.support_size(),
            solution,
            value,
        },
        None => BruteForce::Infeasible,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objectives::SumCoverageObjective;
    use crate::oracle::CountingOracle;

    fn modular(n: usize) -> CountingOracle<SumCoverageObjective> {
        CountingOracle::new(SumCoverageObjective::modular(n, 2).unwrap())
    }

    #[test]
    fn modular_two_needs_both() {
        let oracle = modular(2);
        let inst = Instance::new(&oracle, 2.0).unwrap();
        let res = brute_force_opt(&inst, DEFAULT_BRUTE_LIMIT).unwrap();
        assert_eq!(res.opt(), Some(2));
        if let BruteForce::Optimal { solution, .. } = res {
            assert_eq!(solution.pairs(), vec![(0, 1), (1, 1)]);
        }
    }

    #[test]
    fn zero_threshold_gives_empty() {
        let oracle = modular(3);
        let inst = Instance::new(&oracle, 0.0).unwrap();
        let res = brute_force_opt(&inst, DEFAULT_BRUTE_LIMIT).unwrap();
        assert_eq!(res.opt(), Some(0));
    }

    #[test]
    fn above_max_is_infeasible() {
        let oracle = modular(3);
        let inst = Instance::new(&oracle, 4.0).unwrap();
        assert_eq!(brute_force_opt(&inst, DEFAULT_BRUTE_LIMIT).unwrap(), BruteForce::Infeasible);
    }

    #[test]
    fn size_guard() {
        let oracle = modular(30);
        let inst = Instance::new(&oracle, 1.0).unwrap();
        assert!(matches!(brute_force_opt(&inst, DEFAULT_BRUTE_LIMIT), Err(Error::SizeGuard(_))));
        let oracle = modular(16);
        let inst = Instance::new(&oracle, 1.0).unwrap();
        assert!(matches!(brute_force_opt(&inst, 20), Err(Error::SizeGuard(_))));
    }
}
