mod common;

use common::{f2, p3, signature_bfs, w, z2};
use conjlab::cayley::{enumerate_ball, is_conjugator, nearest_in_set, shortest_conjugator_bruteforce};
use conjlab::raag::invert_letters;
use conjlab::{Budget, Error, NormalForm};

#[test]
fn ball_examples() {
    let b = Budget::default();
    assert_eq!(enumerate_ball(&f2(), 1, &b).unwrap().len(), 5);
    assert_eq!(enumerate_ball(&z2(), 2, &b).unwrap().len(), 13);
    assert_eq!(enumerate_ball(&f2(), 3, &b).unwrap().len(), 53);
}

#[test]
fn balls_match_piling_bfs() {
    for g in [f2(), z2(), p3()] {
        let ball = enumerate_ball(&g, 5, &Budget::default()).unwrap();
        let bfs = signature_bfs(&g, 5);
        assert_eq!(ball.len(), bfs.len());
        for (k, s) in ball.spheres.iter().enumerate() {
            assert_eq!(s.len(), bfs.iter().filter(|(_, d)| *d == k).count());
        }
    }
}

#[test]
fn balls_are_closed_under_inversion() {
    let g = p3();
    let ball = enumerate_ball(&g, 4, &Budget::default()).unwrap();
    let set = ball.to_set();
    assert!(ball.iter().all(|x| set.contains(&g.invert(x))));
}

#[test]
fn ball_budget_is_reported() {
    let err = enumerate_ball(&f2(), 8, &Budget::new(100)).unwrap_err();
    assert!(err.is_budget());
}

#[test]
fn nearest_examples() {
    let g = z2();
    let s: Vec<NormalForm> = (-3..=3).map(|n| g.power(&w(&g, "a"), n)).collect();
    let n = nearest_in_set(&g, &w(&g, "a b"), &s).unwrap();
    assert_eq!((g.format(&n.element), n.distance, n.unique), ("a".into(), 1, true));
    let n = nearest_in_set(&g, &w(&g, "a2"), &s).unwrap();
    assert_eq!(n.distance, 0);

    let g = p3();
    let s: Vec<NormalForm> = (-3..=3).map(|n| g.power(&w(&g, "a"), n)).collect();
    let n = nearest_in_set(&g, &w(&g, "c"), &s).unwrap();
    assert!(n.element.is_identity());
    assert_eq!(n.distance, 1);
    // exhaustive recheck
    let best = s.iter().map(|y| g.distance(&w(&g, "c"), y)).min().unwrap();
    assert_eq!(best, 1);

    assert!(matches!(nearest_in_set(&g, &w(&g, "c"), &[]), Err(Error::Input(_))));
}

#[test]
fn nearest_reports_ties() {
    let g = f2();
    let s = vec![w(&g, "a"), w(&g, "a^-1")];
    let n = nearest_in_set(&g, &NormalForm::identity(), &s).unwrap();
    assert!(!n.unique);
    assert_eq!(g.format(&n.element), "a");
}

#[test]
fn brute_force_conjugator_examples() {
    let g = f2();
    let b = Budget::default();
    let c = shortest_conjugator_bruteforce(&g, &w(&g, "a"), &w(&g, "b a b^-1"), 4, &b).unwrap();
    assert_eq!(g.format(&c.unwrap()), "b");
    let c = shortest_conjugator_bruteforce(&g, &w(&g, "a b"), &w(&g, "a b"), 4, &b).unwrap();
    assert!(c.unwrap().is_identity());
    assert!(shortest_conjugator_bruteforce(&g, &w(&g, "a"), &w(&g, "b"), 6, &b).unwrap().is_none());
}

#[test]
fn brute_force_budget_is_distinct_from_not_found() {
    let g = f2();
    let err = shortest_conjugator_bruteforce(&g, &w(&g, "a"), &w(&g, "b"), 10, &Budget::new(50)).unwrap_err();
    assert!(err.is_budget());
}

#[test]
fn brute_force_conjugators_are_minimal_and_symmetric() {
    let g = p3();
    let b = Budget::default();
    let ball = enumerate_ball(&g, 3, &b).unwrap();
    let a = w(&g, "a c");
    for t in ball.iter() {
        let bb = g.conjugate(t, &a);
        let c = shortest_conjugator_bruteforce(&g, &a, &bb, 3, &b).unwrap().unwrap();
        assert!(is_conjugator(&g, &c, &a, &bb));
        assert!(c.len() <= t.len());
        // nothing shorter in the ball conjugates a to b
        assert!(ball.iter().filter(|h| h.len() < c.len()).all(|h| !is_conjugator(&g, h, &a, &bb)));
        let back = shortest_conjugator_bruteforce(&g, &bb, &a, 3, &b).unwrap().unwrap();
        assert_eq!(back.len(), c.len());
        assert!(is_conjugator(&g, &invert_letters(&c), &bb, &a));
    }
}
