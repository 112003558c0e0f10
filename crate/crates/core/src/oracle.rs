//! Value oracles with query accounting.
//!
//! An [`Objective`] is the raw k-set function. Wrapping it in a
//! [`CountingOracle`] gives a [`ValueOracle`]: every evaluation, including
//! every marginal gain asked of a [`Cursor`], is charged exactly one query.
//! [`TruncatedOracle`] caps values at `T/2` and charges its queries to the
//! oracle it wraps.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::kset::{ElementId, KSet, Position};

/// A normalized, non-negative function on k-sets.
pub trait Objective: Send + Sync {
    fn ground_size(&self) -> usize;

    fn positions(&self) -> usize;

    fn value(&self, x: &KSet) -> f64;

    /// Incremental evaluator starting at the empty k-set.
    ///
    /// The default re-evaluates the whole function for every gain.
    fn tracker(&self) -> Box<dyn GainTracker + '_> {
        Box::new(NaiveTracker::new(self))
    }
}

macro_rules! forward_objective {
    ($($ty:ty),*) => {$(
        impl<O: Objective + ?Sized> Objective for $ty {
            fn ground_size(&self) -> usize {
                (**self).ground_size()
            }

            fn positions(&self) -> usize {
                (**self).positions()
            }

            fn value(&self, x: &KSet) -> f64 {
                (**self).value(x)
            }

            fn tracker(&self) -> Box<dyn GainTracker + '_> {
                (**self).tracker()
            }
        }
    )*};
}

forward_objective!(&O, Box<O>);

/// Incremental state for evaluating marginal gains against a growing solution.
pub trait GainTracker: Send + Sync {
    fn solution(&self) -> &KSet;

    fn value(&self) -> f64;

    /// `Δ_{(e,i)} f(s)` for the current solution `s`. `e` must be unassigned.
    fn gain(&self, e: ElementId, i: Position) -> f64;

    fn insert(&mut self, e: ElementId, i: Position) -> Result<()>;
}

pub struct NaiveTracker<'a, O: Objective + ?Sized> {
    objective: &'a O,
    solution: KSet,
    value: f64,
}

impl<'a, O: Objective + ?Sized> NaiveTracker<'a, O> {
    pub fn new(objective: &'a O) -> Self {
        let solution = KSet::empty(objective.ground_size(), objective.positions())
            .expect("objective has a valid shape");
        let value = objective.value(&solution);
        NaiveTracker {
            objective,
            solution,
            value,
        }
    }
}

impl<O: Objective + ?Sized> GainTracker for NaiveTracker<'_, O> {
    fn solution(&self) -> &KSet {
        &self.solution
    }

    fn value(&self) -> f64 {
        self.value
    }

    fn gain(&self, e: ElementId, i: Position) -> f64 {
        let mut next = self.solution.clone();
        next.insert_mut(e, i).expect("gain asked for an assigned element");
        self.objective.value(&next) - self.value
    }

    fn insert(&mut self, e: ElementId, i: Position) -> Result<()> {
        self.solution.insert_mut(e, i)?;
        self.value = self.objective.value(&self.solution);
        Ok(())
    }
}

/// Evaluation contract for a k-set function with mandatory query counting.
pub trait ValueOracle: Send + Sync {
    fn ground_size(&self) -> usize;

    fn positions(&self) -> usize;

    /// `f(x)`; costs one query.
    fn evaluate(&self, x: &KSet) -> f64;

    fn query_count(&self) -> u64;

    fn reset_count(&self);

    /// A fresh cursor at the empty k-set, charging queries to this oracle.
    fn cursor(&self) -> Cursor<'_>;
}

#[derive(Debug, Default)]
pub struct QueryCounter(AtomicU64);

impl QueryCounter {
    pub fn bump(&self) {
        self.0.fetch_add(1, Ordering::Relaxed);
    }

    pub fn get(&self) -> u64 {
        self.0.load(Ordering::Relaxed)
    }

    pub fn reset(&self) {
        self.0.store(0, Ordering::Relaxed);
    }
}

/// Walks a solution upward one insertion at a time.
///
/// Each call to [`Cursor::gain`] is one query, charged both to the owning
/// oracle and to the cursor's local count. Inserting reuses the tracked state
/// and is free, so an algorithm that caches its base value pays exactly one
/// query per candidate it inspects.
pub struct Cursor<'a> {
    tracker: Box<dyn GainTracker + 'a>,
    counter: &'a QueryCounter,
    local: AtomicU64,
    cap: f64,
}

impl<'a> Cursor<'a> {
    pub fn new(tracker: Box<dyn GainTracker + 'a>, counter: &'a QueryCounter) -> Self {
        Cursor {
            tracker,
            counter,
            local: AtomicU64::new(0),
            cap: f64::INFINITY,
        }
    }

    /// Lowers the cap to `min(current cap, cap)`.
    pub fn with_cap(mut self, cap: f64) -> Self {
        self.cap = self.cap.min(cap);
        self
    }

    pub fn cap(&self) -> f64 {
        self.cap
    }

    pub fn solution(&self) -> &KSet {
        self.tracker.solution()
    }

    /// Current value under the (possibly truncated) oracle.
    pub fn value(&self) -> f64 {
        self.tracker.value().min(self.cap)
    }

    /// Current value of the untruncated function.
    pub fn raw_value(&self) -> f64 {
        self.tracker.value()
    }

    pub fn gain(&self, e: ElementId, i: Position) -> f64 {
        debug_assert!(!self.solution().contains(e));
        self.counter.bump();
        self.local.fetch_add(1, Ordering::Relaxed);
        let base = self.tracker.value();
        let g = self.tracker.gain(e, i);
        if self.cap.is_finite() {
            (base + g).min(self.cap) - base.min(self.cap)
        } else {
            g
        }
    }

    pub fn insert(&mut self, e: ElementId, i: Position) -> Result<()> {
        self.tracker.insert(e, i)
    }

    /// Queries charged through this cursor.
    pub fn queries(&self) -> u64 {
        self.local.load(Ordering::Relaxed)
    }
}

/// Adds query counting to an [`Objective`].
pub struct CountingOracle<O> {
    objective: O,
    counter: QueryCounter,
}

impl<O: Objective> CountingOracle<O> {
    pub fn new(objective: O) -> Self {
        CountingOracle {
            objective,
            counter: QueryCounter::default(),
        }
    }

    pub fn objective(&self) -> &O {
        &self.objective
    }

    pub fn into_inner(self) -> O {
        self.objective
    }
}

impl<O: Objective> ValueOracle for CountingOracle<O> {
    fn ground_size(&self) -> usize {
        self.objective.ground_size()
    }

    fn positions(&self) -> usize {
        self.objective.positions()
    }

    fn evaluate(&self, x: &KSet) -> f64 {
        self.counter.bump();
        self.objective.value(x)
    }

    fn query_count(&self) -> u64 {
        self.counter.get()
    }

    fn reset_count(&self) {
        self.counter.reset()
    }

    fn cursor(&self) -> Cursor<'_> {
        Cursor::new(self.objective.tracker(), &self.counter)
    }
}

/// `min{f(·), cap}` over an inner oracle; queries are charged to the inner oracle.
pub struct TruncatedOracle<'a> {
    inner: &'a dyn ValueOracle,
    cap: f64,
}

impl<'a> TruncatedOracle<'a> {
    pub fn cap(&self) -> f64 {
        self.cap
    }

    pub fn inner(&self) -> &'a dyn ValueOracle {
        self.inner
    }
}

impl ValueOracle for TruncatedOracle<'_> {
    fn ground_size(&self) -> usize {
        self.inner.ground_size()
    }

    fn positions(&self) -> usize {
        self.inner.positions()
    }

    fn evaluate(&self, x: &KSet) -> f64 {
        self.inner.evaluate(x).min(self.cap)
    }

    fn query_count(&self) -> u64 {
        self.inner.query_count()
    }

    fn reset_count(&self) {
        self.inner.reset_count()
    }

    fn cursor(&self) -> Cursor<'_> {
        self.inner.cursor().with_cap(self.cap)
    }
}

/// Wraps `oracle` so every value is capped at `threshold / 2`.
pub fn truncate(oracle: &dyn ValueOracle, threshold: f64) -> Result<TruncatedOracle<'_>> {
    if !(threshold > 0.0) || !threshold.is_finite() {
        return Err(Error::param(
            "threshold",
            format!("must be positive and finite, got {threshold}"),
        ));
    }
    Ok(TruncatedOracle {
        inner: oracle,
        cap: threshold / 2.0,
    })
}

/// `f(x ⊔ (e, i)) − base_value`, one query. `base_value` is the caller's cached `f(x)`.
pub fn marginal_gain(
    oracle: &dyn ValueOracle,
    x: &KSet,
    base_value: f64,
    e: ElementId,
    i: Position,
) -> Result<f64> {
    if x.n() != oracle.ground_size() || x.k() != oracle.positions() {
        return Err(Error::ShapeMismatch {
            n1: x.n(),
            k1: x.k(),
            n2: oracle.ground_size(),
            k2: oracle.positions(),
        });
    }
    let next = x.insert(e, i)?;
    Ok(oracle.evaluate(&next) - base_value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objectives::FnObjective;

    fn linear(n: usize, k: usize, scale: f64) -> CountingOracle<FnObjective> {
        CountingOracle::new(FnObjective::new(n, k, move |x: &KSet| {
            scale * x.support_size() as f64
        }))
    }

    #[test]
    fn truncation_caps_at_half_threshold() {
        let oracle = linear(20, 2, 1.0);
        let t = truncate(&oracle, 6.0).unwrap();
        let ten = KSet::from_positions(2, &[[1; 10].as_slice(), &[0; 10]].concat()).unwrap();
        let two = KSet::from_pairs(20, 2, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(t.evaluate(&ten), 3.0);
        assert_eq!(t.evaluate(&two), 2.0);
        assert_eq!(t.evaluate(&KSet::empty(20, 2).unwrap()), 0.0);
        assert_eq!(oracle.query_count(), 3);
        assert_eq!(t.query_count(), 3);
    }

    #[test]
    fn truncate_rejects_non_positive_threshold() {
        let oracle = linear(3, 2, 1.0);
        assert!(truncate(&oracle, 0.0).is_err());
        assert!(truncate(&oracle, -1.0).is_err());
        assert!(truncate(&oracle, f64::NAN).is_err());
    }

    #[test]
    fn query_counting_and_reset() {
        let oracle = linear(4, 2, 1.0);
        let x = KSet::empty(4, 2).unwrap();
        for _ in 0..7 {
            oracle.evaluate(&x);
        }
        assert_eq!(oracle.query_count(), 7);
        oracle.reset_count();
        assert_eq!(oracle.query_count(), 0);
    }

    #[test]
    fn marginal_gain_costs_one_query() {
        let oracle = linear(3, 2, 2.0);
        let x = KSet::from_pairs(3, 2, &[(0, 1)]).unwrap();
        let g = marginal_gain(&oracle, &x, 2.0, 1, 2).unwrap();
        assert_eq!(g, 2.0);
        assert_eq!(oracle.query_count(), 1);
        assert!(matches!(
            marginal_gain(&oracle, &x, 2.0, 0, 2),
            Err(Error::AlreadyAssigned { .. })
        ));
        assert!(marginal_gain(&oracle, &x, 2.0, 1, 0).is_err());
    }

    #[test]
    fn cursor_charges_gains_but_not_inserts() {
        let oracle = linear(5, 2, 1.0);
        let t = truncate(&oracle, 3.0).unwrap();
        let mut c = t.cursor();
        assert_eq!(c.gain(0, 1), 1.0);
        c.insert(0, 1).unwrap();
        assert_eq!(c.gain(1, 1), 0.5);
        c.insert(1, 1).unwrap();
        assert_eq!(c.value(), 1.5);
        assert_eq!(c.raw_value(), 2.0);
        assert_eq!(c.gain(2, 2), 0.0);
        assert_eq!(c.queries(), 3);
        assert_eq!(oracle.query_count(), 3);
    }
}
