use std::time::Instant;

use crate::error::{Error, Result};
use crate::kset::{ElementId, Position};
use crate::oracle::{truncate, Cursor, ValueOracle as _};
use crate::rng::RngStream;

use super::{check_unit_interval, reaches, Algorithm, Instance, Params, RunRecord};

/// How the candidate set of each iteration is drawn.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Sampling {
    /// `Υ` elements uniformly without replacement from `V \ supp(s)`.
    #[default]
    Stochastic,
    /// Every remaining element; the run degenerates to greedy.
    Exhaustive,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SgoptOptions {
    pub sampling: Sampling,
    /// Stop once the truncated value reaches `T/2` instead of running every iteration.
    pub stop_at_cap: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterationTrace {
    /// `R^j`, sorted by element id.
    pub sample: Vec<ElementId>,
    pub upsilon: usize,
    pub chosen: (ElementId, Position),
    /// Truncated gain of the chosen pair.
    pub gain: f64,
    /// Truncated value after the insertion.
    pub value: f64,
}

#[derive(Debug, Clone)]
pub struct SgoptRun {
    pub record: RunRecord,
    pub trace: Vec<IterationTrace>,
}

/// Sample size `Υ` for iteration `j` (1-based) with guess `v`:
/// `min(remaining, ⌈(n−j+1)/(v−j+1) · ln(n/δ)⌉)`, or `remaining` once `j > v`.
pub fn sample_size(n: usize, v: usize, j: usize, delta: f64, remaining: usize) -> Result<usize> {
    check_unit_interval("delta", delta, 1.0)?;
    if n == 0 || v == 0 || j == 0 {
        return Err(Error::param("sample_size", format!("need n, v, j >= 1 (n={n}, v={v}, j={j})")));
    }
    if j > v || j > n {
        return Ok(remaining);
    }
    let ratio = (n - j + 1) as f64 / (v - j + 1) as f64;
    let want = (ratio * (n as f64 / delta).ln()).ceil();
    if want >= remaining as f64 {
        Ok(remaining)
    } else {
        Ok(want as usize)
    }
}

/// Number of main-loop iterations, `⌈(v/2) ln(1/δ)⌉ + 1` (loop indices `0..=⌈(v/2) ln(1/δ)⌉`).
pub fn iteration_count(v: usize, delta: f64) -> usize {
    (v as f64 / 2.0 * (1.0 / delta).ln()).ceil() as usize + 1
}

pub fn sgopt(
    inst: &Instance<'_>,
    v: usize,
    epsilon: f64,
    delta: f64,
    rng: &mut RngStream,
) -> Result<RunRecord> {
    sgopt_with(inst, v, epsilon, delta, rng, &SgoptOptions::default()).map(|run| run.record)
}

/// Stochastic greedy with a guessed optimum size `v`, returning the per-iteration trace.
pub fn sgopt_with(
    inst: &Instance<'_>,
    v: usize,
    epsilon: f64,
    delta: f64,
    rng: &mut RngStream,
    opts: &SgoptOptions,
) -> Result<SgoptRun> {
    let n = inst.n();
    if v < 1 || v > n {
        return Err(Error::param("v", format!("{v} not in 1..={n}")));
    }
    check_unit_interval("epsilon", epsilon, 0.5)?;
    check_unit_interval("delta", delta, 1.0)?;
    let start = Instant::now();
    let truncated = truncate(inst.oracle, inst.threshold)?;
    let cap = truncated.cap();
    let mut cursor = truncated.cursor();
    let k = inst.k();

    let mut remaining: Vec<ElementId> = (0..n).collect();
    let mut trace = Vec::new();
    for j in 0..iteration_count(v, delta) {
        if remaining.is_empty() || (opts.stop_at_cap && cursor.value() >= cap) {
            break;
        }
        let upsilon = match opts.sampling {
            Sampling::Stochastic => sample_size(n, v, j + 1, delta, remaining.len())?,
            Sampling::Exhaustive => remaining.len(),
        };
        let mut sample: Vec<ElementId> = match opts.sampling {
            Sampling::Stochastic => rng
                .sample_indices(remaining.len(), upsilon)
                .into_iter()
                .map(|idx| remaining[idx])
                .collect(),
            Sampling::Exhaustive => remaining.clone(),
        };
        sample.sort_unstable();
        let (e, i, gain) = best_pair(&cursor, &sample, k);
        cursor.insert(e, i)?;
        let at = remaining.binary_search(&e).expect("chosen element was remaining");
        remaining.remove(at);
        trace.push(IterationTrace {
            sample,
            upsilon,
            chosen: (e, i),
            gain,
            value: cursor.value(),
        });
    }

    let truncated_value = cursor.value();
    let record = RunRecord {
        algorithm: Algorithm::SgOpt,
        solution: cursor.solution().clone(),
        f_value: cursor.raw_value(),
        truncated_value,
        support_size: cursor.solution().support_size(),
        queries: cursor.queries(),
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
        seed: rng.seed(),
        params: Params {
            epsilon: Some(epsilon),
            delta: Some(delta),
            v: Some(v),
        },
        threshold_reached: reaches(truncated_value, cap),
    };
    Ok(SgoptRun { record, trace })
}

/// Argmax of the truncated gain over `candidates × [k]`; ties go to the
/// smallest element, then the smallest position. `candidates` must be sorted.
pub(crate) fn best_pair(cursor: &Cursor<'_>, candidates: &[ElementId], k: usize) -> (ElementId, Position, f64) {
    let mut best: Option<(ElementId, Position, f64)> = None;
    for &e in candidates {
        for i in 1..=k {
            let g = cursor.gain(e, i);
            match best {
                Some((_, _, b)) if !(g > b) => {}
                _ => best = Some((e, i, g)),
            }
        }
    }
    best.expect("non-empty candidate set")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objectives::SumCoverageObjective;
    use crate::oracle::CountingOracle;

    #[test]
    fn sample_size_examples() {
        assert_eq!(sample_size(100, 10, 1, 0.1, 100).unwrap(), 70);
        assert_eq!(sample_size(100, 10, 10, 0.1, 91).unwrap(), 91);
        assert_eq!(sample_size(100, 10, 15, 0.1, 86).unwrap(), 86);
        assert!(sample_size(100, 10, 1, 1.0, 100).is_err());
        assert!(sample_size(100, 10, 1, 0.0, 100).is_err());
    }

    #[test]
    fn iteration_count_uses_delta() {
        assert_eq!(iteration_count(4, 0.5), 3);
        // ⌈(10/2) ln 10⌉ + 1 = ⌈11.51⌉ + 1
        assert_eq!(iteration_count(10, 0.1), 13);
    }

    #[test]
    fn modular_hand_trace() {
        let oracle = CountingOracle::new(SumCoverageObjective::modular(4, 2).unwrap());
        let inst = Instance::new(&oracle, 4.0).unwrap();
        let run = sgopt_with(&inst, 4, 0.25, 0.5, &mut RngStream::new(1), &SgoptOptions::default())
            .unwrap();
        assert_eq!(run.trace.len(), 3);
        assert_eq!(run.record.support_size, 3);
        assert_eq!(run.record.truncated_value, 2.0);
        assert_eq!(run.record.f_value, 3.0);
        assert!(run.record.threshold_reached);
        // gains 1, 1, then 0 after the cap of 2 is hit; ties go to position 1
        let gains: Vec<f64> = run.trace.iter().map(|t| t.gain).collect();
        assert_eq!(gains, vec![1.0, 1.0, 0.0]);
        assert!(run.trace.iter().all(|t| t.chosen.1 == 1));
        assert!(run.trace.iter().all(|t| t.chosen.0 == t.sample[0]));
    }

    #[test]
    fn stop_at_cap_exits_early() {
        let oracle = CountingOracle::new(SumCoverageObjective::modular(4, 2).unwrap());
        let inst = Instance::new(&oracle, 4.0).unwrap();
        let opts = SgoptOptions {
            stop_at_cap: true,
            ..Default::default()
        };
        let run = sgopt_with(&inst, 4, 0.25, 0.5, &mut RngStream::new(1), &opts).unwrap();
        assert_eq!(run.record.support_size, 2);
    }

    #[test]
    fn rejects_bad_parameters() {
        let oracle = CountingOracle::new(SumCoverageObjective::modular(4, 2).unwrap());
        let inst = Instance::new(&oracle, 4.0).unwrap();
        let mut rng = RngStream::new(0);
        assert!(sgopt(&inst, 0, 0.1, 0.1, &mut rng).is_err());
        assert!(sgopt(&inst, 5, 0.1, 0.1, &mut rng).is_err());
        assert!(sgopt(&inst, 2, 0.5, 0.1, &mut rng).is_err());
        assert!(sgopt(&inst, 2, 0.1, 1.0, &mut rng).is_err());
        let zero = Instance::new(&oracle, 0.0).unwrap();
        assert!(sgopt(&zero, 2, 0.1, 0.1, &mut rng).is_err());
    }

    #[test]
    fn stops_when_ground_set_exhausted() {
        let oracle = CountingOracle::new(SumCoverageObjective::modular(3, 2).unwrap());
        let inst = Instance::new(&oracle, 100.0).unwrap();
        let run = sgopt(&inst, 3, 0.1, 0.01, &mut RngStream::new(2)).unwrap();
        assert_eq!(run.support_size, 3);
        assert!(!run.threshold_reached);
    }
}
