mod common;

use sortnet::network::*;
use sortnet::rng;
use sortnet::stats::ks_two_sample;
use sortnet::tableau::*;
use std::collections::{BTreeSet, HashMap};

fn staircase_tableaux(n: usize) -> Vec<StandardTableau> {
    let shape: Vec<usize> = (1..n).rev().collect();
    common::enumerate_syt(&shape)
        .into_iter()
        .map(|rows| StandardTableau::new(rows).unwrap())
        .collect()
}

#[test]
fn eg_is_a_bijection_onto_reduced_words() {
    for n in 3..=5 {
        let images: BTreeSet<Vec<u32>> = staircase_tableaux(n)
            .iter()
            .map(|t| eg_map(t).unwrap().swaps)
            .collect();
        let words: BTreeSet<Vec<u32>> = common::reduced_words(n).into_iter().collect();
        assert_eq!(images.len(), staircase_tableaux(n).len(), "n={n}: not injective");
        assert_eq!(images, words, "n={n}");
    }
    let one = StandardTableau::new(vec![vec![1]]).unwrap();
    assert_eq!(eg_map(&one).unwrap(), SortingNetwork { n: 2, swaps: vec![1] });
}

#[test]
fn two_particles_always_one_swap() {
    let mut r = rng::stream(31, 0);
    for _ in 0..100 {
        assert_eq!(sample_network(2, &mut r).unwrap().swaps, vec![1]);
    }
    assert!(sample_network(1, &mut r).is_err());
}

#[test]
fn three_particles_balanced() {
    let mut r = rng::stream(32, 0);
    let samples = 10_000usize;
    let mut counts: HashMap<Vec<u32>, usize> = HashMap::new();
    for _ in 0..samples {
        *counts.entry(sample_network(3, &mut r).unwrap().swaps).or_default() += 1;
    }
    assert_eq!(counts.len(), 2);
    let sigma = (samples as f64 * 0.25).sqrt();
    for &c in counts.values() {
        assert!((c as f64 - samples as f64 / 2.0).abs() < 4.0 * sigma);
    }
}

#[test]
fn four_particles_uniform() {
    let mut r = rng::stream(33, 0);
    let samples = 160_000usize;
    let mut counts: HashMap<Vec<u32>, usize> = HashMap::new();
    for _ in 0..samples {
        let w = sample_network(4, &mut r).unwrap();
        assert!(validate_network(&w));
        *counts.entry(w.swaps).or_default() += 1;
    }
    assert_eq!(counts.len(), 16);
    let e = samples as f64 / 16.0;
    let chi2: f64 = counts.values().map(|&c| (c as f64 - e).powi(2) / e).sum();
    // Upper 1e-4 point of χ² with 15 degrees of freedom.
    assert!(chi2 < 42.6, "χ² = {chi2}");
}

#[test]
fn full_orbit_returns_a_standard_tableau() {
    let mut r = rng::stream(34, 0);
    for k in 0..1000 {
        let n = 2 + k % 11;
        let t = sample_syt_uniform(&YoungDiagram::staircase(n), &mut r);
        let mut cur = t.clone();
        for _ in 0..t.size() {
            cur = schutzenberger_step(&cur).unwrap().1;
        }
        assert!(StandardTableau::new(cur.rows().to_vec()).is_ok());
        assert!(validate_network(&eg_map(&t).unwrap()));
    }
}

/// First occurrence of swap `s` against the boundary cell of row `n - s`.
fn first_swap_identity(t: &StandardTableau) {
    let n = t.shape().staircase_order().unwrap();
    let big_n = t.size() as u32;
    let w = eg_map(t).unwrap();
    for s in 1..n {
        let first = w.occurrences(s as u32)[0] as u32;
        assert_eq!(first, big_n + 1 - t.get(n - s, s).unwrap(), "n={n} s={s}");
    }
}

#[test]
fn first_swap_identity_exhaustive() {
    for n in 3..=5 {
        staircase_tableaux(n).iter().for_each(first_swap_identity);
    }
}

#[test]
fn first_swap_identity_sampled() {
    let mut r = rng::stream(35, 0);
    for n in [6, 10, 20, 35, 50] {
        for _ in 0..20 {
            first_swap_identity(&sample_syt_uniform(&YoungDiagram::staircase(n), &mut r));
        }
    }
}

#[test]
fn first_two_swaps_share_a_law() {
    let mut r = rng::stream(36, 0);
    let n = 50usize;
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for _ in 0..10_000 {
        let w = sample_network(n, &mut r).unwrap();
        a.push(w.swaps[0] as f64);
        b.push(w.swaps[1] as f64);
    }
    assert!(ks_two_sample(&a, &b) <= 0.03);
}

#[test]
fn output_formats() {
    let w = SortingNetwork { n: 3, swaps: vec![1, 2, 1] };
    assert_eq!(w.wiring_csv(), "step,i\n1,1\n2,2\n3,1\n");
    assert_eq!(w.to_json(), r#"{"n":3,"swaps":[1,2,1]}"#);
    assert_eq!(w.occurrences(1), vec![1, 3]);
    let steps: Vec<u32> = eg_steps(&StandardTableau::new(vec![vec![1, 2], vec![3]]).unwrap())
        .unwrap()
        .collect();
    assert_eq!(steps, vec![1, 2, 1]);
}
