use proptest::prelude::*;
use qeuclid::rep::{Rep, RepConfig, TruncationWindow};
use qeuclid::tensor::{component_count, predicted_highest_weights, weight_multiplicity_check};
use qeuclid::{Dimension, Error};

fn dim(n: usize) -> Dimension {
    Dimension::new(n).unwrap()
}

fn singlet(pmax: i32, pn: i32, jmin: i32) -> Rep {
    let win = TruncationWindow::uniform(dim(3), pmax, pn, jmin);
    Rep::new(RepConfig::new(3, 0.5, 1.0, 0).unwrap(), &win).unwrap()
}

fn weights(u: &[i32], n: usize) -> Vec<Vec<i32>> {
    predicted_highest_weights(u, dim(n)).unwrap().into_iter().map(|c| c.weight).collect()
}

#[test]
fn spin_one_and_trivial() {
    assert_eq!(weights(&[1], 3), vec![vec![1], vec![0], vec![-1]]);
    assert_eq!(weights(&[0], 3), vec![vec![0]]);
}

#[test]
fn four_dimensional_vector() {
    let w = weights(&[1, 0], 4);
    assert_eq!(w.len(), 4);
    let mut sorted = w.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(sorted.len(), 4);
}

#[test]
fn counts_follow_the_label_ranges() {
    for u in 0..=4 {
        assert_eq!(component_count(&[u], dim(3)).unwrap(), (2 * u + 1) as usize);
        for u2 in 0..=4 {
            let want = ((u2 - u).abs() + 1) * (u + u2 + 1);
            assert_eq!(component_count(&[u, u2], dim(4)).unwrap(), want as usize, "u=({u},{u2})");
        }
    }
}

#[test]
fn bad_inputs() {
    assert!(matches!(predicted_highest_weights(&[1], dim(5)), Err(Error::Unsupported(_))));
    assert!(predicted_highest_weights(&[1, 1], dim(3)).is_err());
    assert!(predicted_highest_weights(&[-1], dim(3)).is_err());
    assert!(predicted_highest_weights(&[1], dim(4)).is_err());
}

#[test]
fn trivial_factor_is_the_identity_decomposition() {
    let r = weight_multiplicity_check(&singlet(4, 1, -10), 0).unwrap();
    assert_eq!(r.components, 1);
    assert!(r.consistent());
    assert!(r.zero_offsets());
}

#[test]
fn multiplicities_match_up_to_spin_two() {
    let r = singlet(4, 1, -10);
    for u in 0..=2 {
        let rep_out = weight_multiplicity_check(&r, u).unwrap();
        assert_eq!(rep_out.components, (2 * u + 1) as usize);
        assert!(rep_out.consistent(), "u={u}");
        assert!(rep_out.zero_offsets(), "u={u}");
        let at3: Vec<_> = rep_out.sectors.iter().filter(|s| s.pi[0] == 3).collect();
        assert!(!at3.is_empty());
        for s in at3 {
            // tops pi_0 + w for w = u, .., -u
            let mut tops = s.tops.clone();
            tops.sort_unstable();
            assert_eq!(tops, (3 - u..=3 + u).collect::<Vec<_>>());
        }
    }
}

#[test]
fn small_window_cannot_disambiguate() {
    let r = singlet(4, 1, -2);
    assert!(matches!(weight_multiplicity_check(&r, 2), Err(Error::InvalidParameter(_))));
    let win = TruncationWindow::uniform(dim(4), 2, 1, -2);
    let r4 = Rep::new(RepConfig::new(4, 0.5, 1.0, 0).unwrap(), &win).unwrap();
    assert!(weight_multiplicity_check(&r4, 1).is_err());
}

proptest! {
    #[test]
    fn three_dimensional_weights_are_a_symmetric_integer_range(u in 0i32..=12) {
        let w = weights(&[u], 3);
        let flat: Vec<i32> = w.iter().map(|x| { assert_eq!(x.len(), 1); x[0] }).collect();
        prop_assert_eq!(flat, (-u..=u).rev().collect::<Vec<_>>());
    }

    #[test]
    fn four_dimensional_weights_are_distinct(u1 in 0i32..=5, u2 in 0i32..=5) {
        let mut w = weights(&[u1, u2], 4);
        let before = w.len();
        w.sort();
        w.dedup();
        prop_assert_eq!(w.len(), before);
    }
}
