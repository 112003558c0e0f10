//! Empirical checkers for the structural properties of k-set functions.
//!
//! Every checker evaluates an inequality on enumerated or sampled cases with
//! an absolute tolerance of [`TOLERANCE`] and reports failing cases as
//! witnesses. Exhaustive mode walks the whole lattice and is refused above
//! `3^8` k-sets unless the guard is overridden.

use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kset::{lattice_size, ElementId, KSet, Position};
use crate::oracle::ValueOracle;
use crate::rng::RngStream;

pub const TOLERANCE: f64 = 1e-9;
pub const EXHAUSTIVE_GUARD: u64 = 6561;
/// Witnesses kept per report; the total count is always exact.
pub const MAX_WITNESSES: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Property {
    KSubmodular,
    Orthant,
    Pairwise,
    Monotone,
    Normalized,
}

impl Property {
    pub const ALL: [Property; 5] = [
        Property::KSubmodular,
        Property::Orthant,
        Property::Pairwise,
        Property::Monotone,
        Property::Normalized,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Property::KSubmodular => "ksubmodular",
            Property::Orthant => "orthant",
            Property::Pairwise => "pairwise",
            Property::Monotone => "monotone",
            Property::Normalized => "normalized",
        }
    }

    fn unit(self) -> &'static str {
        match self {
            Property::KSubmodular => "pairs",
            Property::Orthant => "triples",
            Property::Pairwise | Property::Monotone => "cases",
            Property::Normalized => "checks",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "mode")]
pub enum Mode {
    Exhaustive { override_guard: bool },
    Randomized { samples: u64 },
}

impl Mode {
    pub fn exhaustive() -> Self {
        Mode::Exhaustive {
            override_guard: false,
        }
    }

    pub fn randomized(samples: u64) -> Self {
        Mode::Randomized { samples }
    }
}

/// A failed case: `lhs >= rhs` was expected.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub case: String,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyReport {
    pub property: Property,
    pub mode: Mode,
    pub checked: u64,
    pub violation_count: u64,
    pub violations: Vec<Witness>,
}

impl PropertyReport {
    fn new(property: Property, mode: Mode) -> Self {
        PropertyReport {
            property,
            mode,
            checked: 0,
            violation_count: 0,
            violations: Vec::new(),
        }
    }

    pub fn holds(&self) -> bool {
        self.violation_count == 0
    }

    fn check(&mut self, lhs: f64, rhs: f64, case: impl FnOnce() -> String) {
        self.checked += 1;
        if lhs < rhs - TOLERANCE {
            self.violation_count += 1;
            if self.violations.len() < MAX_WITNESSES {
                self.violations.push(Witness {
                    case: case(),
                    lhs,
                    rhs,
                });
            }
        }
    }
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} violations / {} {}",
            self.property.label(),
            self.violation_count,
            self.checked,
            self.property.unit()
        )
    }
}

/// Oracle values, memoized over the whole lattice in exhaustive mode.
struct Values<'a> {
    oracle: &'a dyn ValueOracle,
    table: Option<Vec<f64>>,
}

impl<'a> Values<'a> {
    fn new(oracle: &'a dyn ValueOracle, mode: Mode) -> Result<Self> {
        let (n, k) = (oracle.ground_size(), oracle.positions());
        let table = match mode {
            Mode::Exhaustive { override_guard } => {
                let size = lattice_size(n, k).ok_or_else(|| {
                    Error::SizeGuard(format!("(k+1)^n overflows for n={n}, k={k}"))
                })?;
                if size > EXHAUSTIVE_GUARD && !override_guard {
                    return Err(Error::SizeGuard(format!(
                        "exhaustive check over {size} k-sets (n={n}, k={k}) exceeds {EXHAUSTIVE_GUARD}; \
                         use randomized mode or override the guard"
                    )));
                }
                Some(
                    (0..size)
                        .map(|idx| oracle.evaluate(&KSet::from_index(n, k, idx).expect("shape")))
                        .collect(),
                )
            }
            Mode::Randomized { samples } => {
                if samples == 0 {
                    return Err(Error::param("samples", "randomized mode needs a positive budget"));
                }
                None
            }
        };
        Ok(Values { oracle, table })
    }

    fn get(&self, x: &KSet) -> f64 {
        match &self.table {
            Some(t) => t[index_of(x)],
            None => self.oracle.evaluate(x),
        }
    }

    fn gain(&self, x: &KSet, base: f64, e: ElementId, i: Position) -> f64 {
        self.get(&x.insert(e, i).expect("e is unassigned")) - base
    }

    fn exhaustive(&self) -> bool {
        self.table.is_some()
    }

    fn n(&self) -> usize {
        self.oracle.ground_size()
    }

    fn k(&self) -> usize {
        self.oracle.positions()
    }

    fn all(&self) -> impl Iterator<Item = KSet> + '_ {
        let len = self.table.as_ref().map_or(0, Vec::len) as u64;
        (0..len).map(|idx| KSet::from_index(self.n(), self.k(), idx).expect("shape"))
    }

    fn random(&self, rng: &mut RngStream) -> KSet {
        let positions: Vec<Position> = (0..self.n()).map(|_| rng.gen_range(0..=self.k())).collect();
        KSet::from_positions(self.k(), &positions).expect("shape")
    }
}

fn index_of(x: &KSet) -> usize {
    let base = x.k() + 1;
    x.positions().rev().fold(0, |acc, p| acc * base + p)
}

fn unassigned(x: &KSet) -> Vec<ElementId> {
    (0..x.n()).filter(|&e| !x.contains(e)).collect()
}

/// `f(x) + f(y) >= f(x ⊓ y) + f(x ⊔ y)`.
pub fn check_ksubmodular(oracle: &dyn ValueOracle, mode: Mode, rng: &mut RngStream) -> Result<PropertyReport> {
    let vals = Values::new(oracle, mode)?;
    let mut report = PropertyReport::new(Property::KSubmodular, mode);
    let one = |x: &KSet, y: &KSet, report: &mut PropertyReport| {
        let meet = x.meet(y).expect("same shape");
        let join = x.join(y).expect("same shape");
        let lhs = vals.get(x) + vals.get(y);
        let rhs = vals.get(&meet) + vals.get(&join);
        report.check(lhs, rhs, || format!("x={x} y={y} meet={meet} join={join}"));
    };
    if vals.exhaustive() {
        let all: Vec<KSet> = vals.all().collect();
        for x in &all {
            for y in &all {
                one(x, y, &mut report);
            }
        }
    } else if let Mode::Randomized { samples } = mode {
        for _ in 0..samples {
            let x = vals.random(rng);
            let y = vals.random(rng);
            one(&x, &y, &mut report);
        }
    }
    Ok(report)
}

/// `Δ_{(e,i)} f(x) >= Δ_{(e,i)} f(y)` for `x ⊑ y`, `e ∉ supp(y)`.
pub fn check_orthant_submodular(
    oracle: &dyn ValueOracle,
    mode: Mode,
    rng: &mut RngStream,
) -> Result<PropertyReport> {
    let vals = Values::new(oracle, mode)?;
    let mut report = PropertyReport::new(Property::Orthant, mode);
    let k = vals.k();
    let one = |x: &KSet, y: &KSet, e: ElementId, i: Position, report: &mut PropertyReport| {
        let lhs = vals.gain(x, vals.get(x), e, i);
        let rhs = vals.gain(y, vals.get(y), e, i);
        report.check(lhs, rhs, || format!("x={x} y={y} e={e} i={i}"));
    };
    if vals.exhaustive() {
        for y in vals.all() {
            let free = unassigned(&y);
            if free.is_empty() {
                continue;
            }
            let supp: Vec<(ElementId, Position)> = y.pairs();
            for mask in 0u64..(1 << supp.len()) {
                let kept: Vec<(ElementId, Position)> = supp
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| mask >> b & 1 == 1)
                    .map(|(_, &p)| p)
                    .collect();
                let x = KSet::from_pairs(y.n(), k, &kept).expect("shape");
                for &e in &free {
                    for i in 1..=k {
                        one(&x, &y, e, i, &mut report);
                    }
                }
            }
        }
    } else if let Mode::Randomized { samples } = mode {
        let mut drawn = 0;
        while drawn < samples {
            let y = vals.random(rng);
            let free = unassigned(&y);
            if free.is_empty() {
                continue;
            }
            let kept: Vec<(ElementId, Position)> =
                y.pairs().into_iter().filter(|_| rng.gen_bool(0.5)).collect();
            let x = KSet::from_pairs(y.n(), k, &kept).expect("shape");
            let e = free[rng.gen_range(0..free.len())];
            let i = rng.gen_range(1..=k);
            one(&x, &y, e, i, &mut report);
            drawn += 1;
        }
    }
    Ok(report)
}

/// `Δ_{(e,i)} f(x) + Δ_{(e,j)} f(x) >= 0` for `i ≠ j`.
pub fn check_pairwise_monotone(
    oracle: &dyn ValueOracle,
    mode: Mode,
    rng: &mut RngStream,
) -> Result<PropertyReport> {
    let vals = Values::new(oracle, mode)?;
    let mut report = PropertyReport::new(Property::Pairwise, mode);
    let k = vals.k();
    let one = |x: &KSet, e: ElementId, i: Position, j: Position, report: &mut PropertyReport| {
        let base = vals.get(x);
        let lhs = vals.gain(x, base, e, i) + vals.gain(x, base, e, j);
        report.check(lhs, 0.0, || format!("x={x} e={e} i={i} j={j}"));
    };
    if vals.exhaustive() {
        for x in vals.all() {
            for e in unassigned(&x) {
                for i in 1..=k {
                    for j in (i + 1)..=k {
                        one(&x, e, i, j, &mut report);
                    }
                }
            }
        }
    } else if let Mode::Randomized { samples } = mode {
        let mut drawn = 0;
        while drawn < samples {
            let x = vals.random(rng);
            let free = unassigned(&x);
            if free.is_empty() {
                continue;
            }
            let e = free[rng.gen_range(0..free.len())];
            let i = rng.gen_range(1..=k);
            let mut j = rng.gen_range(1..k);
            if j >= i {
                j += 1;
            }
            one(&x, e, i, j, &mut report);
            drawn += 1;
        }
    }
    Ok(report)
}

/// `Δ_{(e,i)} f(x) >= 0`.
pub fn check_monotone(oracle: &dyn ValueOracle, mode: Mode, rng: &mut RngStream) -> Result<PropertyReport> {
    let vals = Values::new(oracle, mode)?;
    let mut report = PropertyReport::new(Property::Monotone, mode);
    let k = vals.k();
    let one = |x: &KSet, e: ElementId, i: Position, report: &mut PropertyReport| {
        let g = vals.gain(x, vals.get(x), e, i);
        report.check(g, 0.0, || format!("x={x} e={e} i={i}"));
    };
    if vals.exhaustive() {
        for x in vals.all() {
            for e in unassigned(&x) {
                for i in 1..=k {
                    one(&x, e, i, &mut report);
                }
            }
        }
    } else if let Mode::Randomized { samples } = mode {
        let mut drawn = 0;
        while drawn < samples {
            let x = vals.random(rng);
            let free = unassigned(&x);
            if free.is_empty() {
                continue;
            }
            let e = free[rng.gen_range(0..free.len())];
            let i = rng.gen_range(1..=k);
            one(&x, e, i, &mut report);
            drawn += 1;
        }
    }
    Ok(report)
}

/// `f(0) = 0`, checked as `0 >= |f(0)|`.
pub fn check_normalized(oracle: &dyn ValueOracle) -> Result<PropertyReport> {
    let empty = KSet::empty(oracle.ground_size(), oracle.positions())?;
    let mut report = PropertyReport::new(Property::Normalized, Mode::exhaustive());
    let v = oracle.evaluate(&empty);
    report.check(0.0, v.abs(), || "x=()".to_string());
    Ok(report)
}

/// Runs one checker by property label.
pub fn check(property: Property, oracle: &dyn ValueOracle, mode: Mode, rng: &mut RngStream) -> Result<PropertyReport> {
    match property {
        Property::KSubmodular => check_ksubmodular(oracle, mode, rng),
        Property::Orthant => check_orthant_submodular(oracle, mode, rng),
        Property::Pairwise => check_pairwise_monotone(oracle, mode, rng),
        Property::Monotone => check_monotone(oracle, mode, rng),
        Property::Normalized => check_normalized(oracle),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objectives::{FnObjective, SumCoverageObjective};
    use crate::oracle::CountingOracle;

    #[test]
    fn modular_passes_exhaustively() {
        let oracle = CountingOracle::new(SumCoverageObjective::modular(4, 2).unwrap());
        let mut rng = RngStream::new(0);
        let r = check_ksubmodular(&oracle, Mode::exhaustive(), &mut rng).unwrap();
        assert_eq!(r.checked, 6561);
        assert!(r.holds());
        assert_eq!(r.to_string(), "ksubmodular: 0 violations / 6561 pairs");
        for p in [Property::Orthant, Property::Pairwise, Property::Monotone, Property::Normalized] {
            assert!(check(p, &oracle, Mode::exhaustive(), &mut rng).unwrap().holds());
        }
    }

    #[test]
    fn opposite_positions_pair() {
        // x=({a},∅), y=(∅,{a}) on a modular function: 1+1 >= 0+0
        let oracle = CountingOracle::new(SumCoverageObjective::modular(1, 2).unwrap());
        let r = check_ksubmodular(&oracle, Mode::exhaustive(), &mut RngStream::new(0)).unwrap();
        assert!(r.holds());
    }

    #[test]
    fn supermodular_function_yields_witnesses() {
        let oracle = CountingOracle::new(FnObjective::support_squared(4, 2));
        let mut rng = RngStream::new(0);
        let r = check_ksubmodular(&oracle, Mode::exhaustive(), &mut rng).unwrap();
        assert!(!r.holds());
        // x=({a},∅), y=({b},∅): 1 + 1 < 0 + 4
        assert!(r.violations.iter().any(|w| w.lhs == 2.0 && w.rhs == 4.0));
        assert!(!check_orthant_submodular(&oracle, Mode::exhaustive(), &mut rng).unwrap().holds());
    }

    #[test]
    fn negative_marginal_yields_witnesses() {
        // position 2 destroys value
        let oracle = CountingOracle::new(FnObjective::new(3, 2, |x| {
            let a = x.coordinate(1).count() as f64;
            let b = x.coordinate(2).count() as f64;
            (2.0 * a - 3.0 * b).max(0.0)
        }));
        let mut rng = RngStream::new(0);
        let pw = check_pairwise_monotone(&oracle, Mode::exhaustive(), &mut rng).unwrap();
        assert!(!pw.holds());
        assert!(!check_monotone(&oracle, Mode::exhaustive(), &mut rng).unwrap().holds());
    }

    #[test]
    fn exhaustive_guard() {
        let oracle = CountingOracle::new(SumCoverageObjective::modular(9, 2).unwrap());
        let err = check_monotone(&oracle, Mode::exhaustive(), &mut RngStream::new(0));
        assert!(matches!(err, Err(Error::SizeGuard(_))));
        let r = check_monotone(&oracle, Mode::randomized(200), &mut RngStream::new(0)).unwrap();
        assert_eq!(r.checked, 200);
    }

    #[test]
    fn randomized_reports_are_deterministic() {
        let oracle = CountingOracle::new(FnObjective::support_squared(6, 3));
        let a = check_ksubmodular(&oracle, Mode::randomized(500), &mut RngStream::new(4)).unwrap();
        let b = check_ksubmodular(&oracle, Mode::randomized(500), &mut RngStream::new(4)).unwrap();
        assert_eq!(a, b);
    }
}
