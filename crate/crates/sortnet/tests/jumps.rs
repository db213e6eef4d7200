use sortnet::jumps::*;
use sortnet::rng;
use sortnet::tableau::*;
use sortnet::Error;
use std::collections::BTreeMap;

fn infinite(cells: &[((i64, i64), f64)]) -> sortnet::Result<InfiniteTableau> {
    InfiniteTableau::new(cells.iter().copied().collect())
}

#[test]
fn jumps_of_small_tableaux() {
    let p = PoissonizedTableau::new(vec![vec![0.1, 0.4], vec![0.3]]).unwrap();
    let j = pyt_to_jumps(&p).unwrap();
    assert_eq!(j.points(), &[(-1, 0.3), (0, 0.1), (1, 0.4)]);
    assert_eq!(j.line(0), vec![0.1]);
    assert_eq!(j.count(1, 0.0, 1.0), 1);
    assert_eq!(j.truncate(0.35).len(), 2);
    assert_eq!(j.to_csv().lines().next(), Some("x,u"));

    let tie = PoissonizedTableau::new(vec![vec![0.2, 0.2]]).unwrap();
    assert!(matches!(pyt_to_jumps(&tie), Err(Error::Ties(_))));
}

#[test]
fn infinite_tableau_examples() {
    let t = infinite(&[((0, 0), 0.3)]).unwrap();
    assert_eq!(tableau_to_jumps(&t).points(), &[(0, 0.3)]);
    assert!(infinite(&[((0, 1), 0.5)]).is_err());
    assert!(infinite(&[((1, 1), 0.5)]).is_err());
    assert!(infinite(&[((0, 0), 0.6), ((2, 0), 0.5), ((1, 1), 0.4)]).is_err());

    let t = infinite(&[((0, 0), 0.2), ((2, 0), 0.5), ((1, 1), 0.7)]).unwrap();
    assert_eq!(t.get(1, 1), 0.7);
    assert_eq!(t.get(3, 1), f64::INFINITY);
    let j = tableau_to_jumps(&t);
    assert_eq!(jumps_to_tableau(&j).unwrap(), t);

    let dup = PointConfiguration::new(vec![(0, 0.5), (0, 0.5)]);
    assert!(matches!(jumps_to_tableau(&dup), Err(Error::Ties(_))));
    // A lone point on an odd line has nothing below it.
    assert!(jumps_to_tableau(&PointConfiguration::new(vec![(1, 0.5)])).is_err());
}

#[test]
fn embedding_examples() {
    // α = 0, even n: the window centre is column n/2 and c_n = 0.
    let w = WindowSpec::new(0.0, 4).unwrap();
    assert_eq!(w.c_n, 0);
    let t = sample_syt_uniform(&YoungDiagram::staircase(4), &mut rng::stream(41, 0));
    let p = poissonize(&t, &mut rng::stream(41, 1));
    let e = embed_staircase(&p, &w).unwrap();
    assert_eq!(e.get(0, 2), w.rescale_time(p.get(1, 1).unwrap()));

    // Odd n: the unshifted corner cell (1, n-1) lies at (2, 0); the window
    // shift adds 1{n odd} - c_n.
    let n = 5;
    let w = WindowSpec::new(0.0, n).unwrap();
    assert_eq!(w.c_n, -1);
    let t = sample_syt_uniform(&YoungDiagram::staircase(n), &mut rng::stream(42, 0));
    let p = poissonize(&t, &mut rng::stream(42, 1));
    let e = embed_staircase(&p, &w).unwrap();
    let shift = 1 - w.c_n;
    assert_eq!(e.get(2 + shift, 0), w.rescale_time(p.get(1, 4).unwrap()));

    let one = WindowSpec::new(0.3, 10).unwrap();
    assert_eq!(one.rescale_time(1.0), 0.0);
    assert!((one.rescale_time(one.entry_cutoff(2.5)) - 2.5).abs() < 1e-12);

    let wrong = WindowSpec::new(0.0, 6).unwrap();
    assert!(embed_staircase(&p, &wrong).is_err());
}

#[test]
fn window_examples() {
    let w = WindowSpec::new(0.0, 10).unwrap();
    let pts = PointConfiguration::new(vec![(1, 1.0 - 0.3 / 10.0)]);
    let r = rescale_window(&pts, &w);
    assert_eq!(r.points()[0].0, 1);
    assert!((r.points()[0].1 - 0.3).abs() < 1e-12);

    let w = WindowSpec::new(0.5, 100).unwrap();
    assert_eq!(w.c_n, 50);
    assert!(WindowSpec::new(1.0, 10).is_err());
    assert!(WindowSpec::new(-1.0, 10).is_err());
}

#[test]
fn centre_parity_and_distance() {
    for n in 2..200usize {
        for k in -19..20 {
            let alpha = k as f64 / 20.0;
            let w = WindowSpec::new(alpha, n).unwrap();
            assert_eq!((w.c_n - n as i64).rem_euclid(2), 0);
            assert!((w.c_n as f64 - alpha * n as f64).abs() <= 2.0);
            assert_eq!(w.c_n, 2 * center_swap(n, alpha) - n as i64);
        }
    }
}

/// Lines carrying the points of particle (row) `i`, in time order.
fn check_paths(p: &PoissonizedTableau) {
    let jumps = pyt_to_jumps(p).unwrap();
    let lines: BTreeMap<i64, Vec<f64>> = jumps
        .points()
        .iter()
        .map(|&(x, _)| (x, jumps.line(x)))
        .collect();
    for (&x, l) in &lines {
        let first_row = 1.max(1 - x) as usize;
        for (k, &u) in l.iter().enumerate() {
            let i = first_row + k;
            assert_eq!(p.get(i, (x + i as i64) as usize), Some(u));
        }
        for pair in l.windows(2) {
            for nx in [x - 1, x + 1] {
                let between = jumps.line(nx).iter().filter(|&&v| v > pair[0] && v < pair[1]).count();
                assert_eq!(between, 1, "line {nx} between {pair:?} on line {x}");
            }
        }
    }
    // Particle i sits at (jumps so far) - i; positions stay strictly ordered.
    let rows = p.rows();
    let mut times: Vec<f64> = jumps.points().iter().map(|q| q.1).collect();
    times.sort_by(f64::total_cmp);
    for &t in &times {
        let pos: Vec<i64> = rows
            .iter()
            .enumerate()
            .map(|(i, r)| r.iter().filter(|&&v| v <= t).count() as i64 - i as i64)
            .collect();
        assert!(pos.windows(2).all(|w| w[0] > w[1]), "paths meet at t = {t}");
    }
}

#[test]
fn interlacing_and_non_intersecting_paths() {
    let mut r = rng::stream(43, 0);
    for k in 0..1000 {
        let n = 2 + k % 7;
        let rows: Vec<usize> = YoungDiagram::staircase(n)
            .rows()
            .iter()
            .enumerate()
            .map(|(i, &l)| if k % 2 == 0 { l } else { l.saturating_sub(i % 2) })
            .filter(|&l| l > 0)
            .collect();
        let mut rows = rows;
        rows.sort_unstable_by(|a, b| b.cmp(a));
        let shape = YoungDiagram::new(rows).unwrap();
        let p = poissonize(&sample_syt_uniform(&shape, &mut r), &mut r);
        check_paths(&p);
    }
}

#[test]
fn tableau_and_jumps_round_trip() {
    let mut r = rng::stream(44, 0);
    for k in 0..500 {
        let n = 2 + k % 10;
        let alpha = -0.8 + 1.6 * (k % 17) as f64 / 16.0;
        let w = WindowSpec::new(alpha, n).unwrap();
        let p = poissonize(&sample_syt_uniform(&YoungDiagram::staircase(n), &mut r), &mut r);
        let e = embed_staircase(&p, &w).unwrap();
        let j = tableau_to_jumps(&e);
        assert_eq!(jumps_to_tableau(&j).unwrap(), e);
        assert_eq!(rescale_window(&pyt_to_jumps(&p).unwrap(), &w), j);
    }
}
