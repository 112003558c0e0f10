use ksubcover::data::{gen_alphas, gen_er, parse_edge_list, WeightDist};
use ksubcover::objectives::{AlphaMatrix, RevenueObjective, SumCoverageObjective};
use ksubcover::oracle::{CountingOracle, NaiveTracker, Objective, ValueOracle};
use ksubcover::rng::RngStream;
use ksubcover::verify::{self, Mode, Property};
use ksubcover::{Error, KSet};
use rand::Rng;

fn revenue(n: usize, k: usize, p: f64, seed: u64) -> RevenueObjective {
    let graph = gen_er(n, p, WeightDist::Uniform { low: 0.0, high: 1.0 }, seed).unwrap();
    let alpha = gen_alphas(n, k, 0.3, 0.9, seed + 1).unwrap();
    RevenueObjective::new(graph, alpha).unwrap()
}

fn random_kset(n: usize, k: usize, rng: &mut RngStream) -> KSet {
    let pos: Vec<usize> = (0..n).map(|_| rng.gen_range(0..=k)).collect();
    KSet::from_positions(k, &pos).unwrap()
}

#[test]
fn randomized_pairs_at_n20_k3() {
    let rev = CountingOracle::new(revenue(20, 3, 0.3, 5));
    let mut rng = RngStream::new(1).child("cov");
    let cov = CountingOracle::new(SumCoverageObjective::random(20, 3, 40, 0.3, &mut rng).unwrap());
    for oracle in [&rev as &dyn ValueOracle, &cov] {
        let report =
            verify::check_ksubmodular(oracle, Mode::randomized(10_000), &mut RngStream::new(2)).unwrap();
        assert_eq!(report.checked, 10_000);
        assert!(report.holds(), "{report}");
        for p in [Property::Orthant, Property::Pairwise, Property::Monotone] {
            let r = verify::check(p, oracle, Mode::randomized(2_000), &mut RngStream::new(3)).unwrap();
            assert!(r.holds(), "{r}");
        }
    }
}

#[test]
fn revenue_monotone_on_random_triples() {
    let obj = revenue(30, 3, 0.2, 8);
    let mut rng = RngStream::new(17);
    let mut checked = 0;
    while checked < 1000 {
        let x = random_kset(30, 3, &mut rng);
        let free: Vec<usize> = (0..30).filter(|&e| !x.contains(e)).collect();
        if free.is_empty() {
            continue;
        }
        let e = free[rng.gen_range(0..free.len())];
        let i = rng.gen_range(1..=3);
        assert!(obj.value(&x.insert(e, i).unwrap()) >= obj.value(&x));
        checked += 1;
    }
}

#[test]
fn incremental_trackers_match_full_evaluation() {
    let mut rng = RngStream::new(23);
    let cov = SumCoverageObjective::random(25, 3, 50, 0.2, &mut rng).unwrap();
    let rev = revenue(25, 3, 0.25, 4);
    for obj in [&cov as &dyn Objective, &rev] {
        let mut fast = obj.tracker();
        let mut slow = NaiveTracker::new(obj);
        let mut order: Vec<usize> = (0..25).collect();
        for idx in (1..order.len()).rev() {
            order.swap(idx, rng.gen_range(0..=idx));
        }
        for &e in &order {
            for i in 1..=3 {
                let a = fast.gain(e, i);
                let b = ksubcover::oracle::GainTracker::gain(&slow, e, i);
                assert!((a - b).abs() <= 1e-9 * b.abs().max(1.0), "gain({e},{i}): {a} vs {b}");
            }
            let i = rng.gen_range(1..=3);
            fast.insert(e, i).unwrap();
            ksubcover::oracle::GainTracker::insert(&mut slow, e, i).unwrap();
            assert!((fast.value() - obj.value(fast.solution())).abs() < 1e-9);
        }
    }
}

#[test]
fn revenue_two_node_hand_value() {
    let graph = ksubcover::data::WeightedGraph::from_edges(2, [(0, 1, 4.0)]).unwrap();
    let obj = RevenueObjective::new(graph, AlphaMatrix::constant(2, 2, 0.5).unwrap()).unwrap();
    assert_eq!(obj.value(&KSet::empty(2, 2).unwrap()), 0.0);
    assert_eq!(obj.value(&KSet::from_pairs(2, 2, &[(1, 1)]).unwrap()), 2.0);
}

#[test]
fn er_edge_count_near_expectation() {
    let expected = 0.01 * (2000.0 * 1999.0 / 2.0);
    for seed in 0..3 {
        let g = gen_er(2000, 0.01, WeightDist::Unit, seed).unwrap();
        let m = g.edge_count() as f64;
        assert!((m - expected).abs() <= 0.05 * expected, "seed {seed}: {m}");
    }
    assert_eq!(gen_er(5, 1.0, WeightDist::Unit, 0).unwrap().edge_count(), 10);
    assert_eq!(gen_er(5, 1e-12, WeightDist::Unit, 0).unwrap().edge_count(), 0);
}

#[test]
fn edge_list_examples() {
    let g = parse_edge_list("0 1\n1 0\n".as_bytes(), "two.txt".as_ref(), WeightDist::Unit, 0).unwrap();
    assert_eq!((g.n(), g.edge_count()), (2, 1));
    match parse_edge_list("a b\n".as_bytes(), "bad.txt".as_ref(), WeightDist::Unit, 0) {
        Err(Error::Parse { line, .. }) => assert_eq!(line, 1),
        other => panic!("{other:?}"),
    }
}

#[test]
fn alphas_in_range_and_reproducible() {
    let a = gen_alphas(50, 4, 0.3, 0.9, 7).unwrap();
    assert!(a.as_slice().iter().all(|&x| (0.3..=0.9).contains(&x)));
    assert_eq!(a, gen_alphas(50, 4, 0.3, 0.9, 7).unwrap());
    let narrow = gen_alphas(10, 2, 0.5 - 1e-9, 0.5, 1).unwrap();
    assert!(narrow.as_slice().iter().all(|&x| (x - 0.5).abs() < 1e-8));
}
