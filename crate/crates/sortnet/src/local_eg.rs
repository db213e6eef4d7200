//! The local (min-based) Edelman–Greene algorithm.
//!
//! On a finite downward-closed tableau of `Δ∞` the smallest entry sits on the
//! bottom level at some `(2x, 0)`. One step removes it and records the swap
//! `(x, t)`. The hole is refilled along the sliding path, which repeatedly
//! moves to the smaller of the two up-neighbours `(x ± 1, y + 1)`. Entries
//! shift down along that path and the last cell of the path is deleted.
//!
//! The same procedure can be run directly on a jump configuration. The path
//! then follows the nearest point above on the two adjacent lines.

use crate::jumps::{InfiniteTableau, PointConfiguration};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

/// A swap emitted by the local algorithm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SwapPoint {
    /// Swap column; the exiting cell was `(2x, 0)`.
    pub x: i64,
    /// Value of the exiting entry.
    pub t: f64,
    /// Cell on `Δ∞` where the exiting value was originally stored.
    pub origin: Option<(i64, i64)>,
}

/// A finite downward-closed tableau on `Δ∞` processed by the local algorithm.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Cluster {
    cells: BTreeMap<(i64, i64), f64>,
}

impl Cluster {
    /// Builds a cluster, checking distinct entries and downward closure.
    pub fn new(cells: BTreeMap<(i64, i64), f64>) -> Result<Self> {
        let t = InfiniteTableau::new(cells).map_err(|e| Error::Admissibility(e.to_string()))?;
        check_distinct(t.cells().values().copied())?;
        Ok(Cluster {
            cells: t.cells().clone(),
        })
    }

    /// Cells and values.
    pub fn cells(&self) -> &BTreeMap<(i64, i64), f64> {
        &self.cells
    }

    /// Number of cells.
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    /// True if the cluster has no cells.
    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    fn min_value(&self) -> f64 {
        self.cells.values().copied().fold(f64::INFINITY, f64::min)
    }
}

fn check_distinct(values: impl Iterator<Item = f64>) -> Result<()> {
    let mut v: Vec<f64> = values.collect();
    v.sort_by(f64::total_cmp);
    match v.windows(2).find(|w| w[0] == w[1]) {
        Some(w) => Err(Error::Ties(format!("value {} occurs twice", w[0]))),
        None => Ok(()),
    }
}

/// Connected components of `{T ≤ t_max}`, ordered by their smallest entry.
///
/// Cells are adjacent when they differ by `(±1, ±1)`. Each component must be
/// downward closed.
pub fn graded_clusters(t: &InfiniteTableau, t_max: f64) -> Result<Vec<Cluster>> {
    let sub: BTreeMap<(i64, i64), f64> = t
        .cells()
        .iter()
        .filter(|&(_, &v)| v <= t_max)
        .map(|(&c, &v)| (c, v))
        .collect();
    check_distinct(sub.values().copied())?;
    let mut seen: HashMap<(i64, i64), bool> = HashMap::with_capacity(sub.len());
    let mut clusters = Vec::new();
    for &start in sub.keys() {
        if seen.contains_key(&start) {
            continue;
        }
        let mut comp = BTreeMap::new();
        let mut stack = vec![start];
        seen.insert(start, true);
        while let Some((x, y)) = stack.pop() {
            comp.insert((x, y), sub[&(x, y)]);
            for (dx, dy) in [(-1, -1), (1, -1), (-1, 1), (1, 1)] {
                let nb = (x + dx, y + dy);
                if sub.contains_key(&nb) && !seen.contains_key(&nb) {
                    seen.insert(nb, true);
                    stack.push(nb);
                }
            }
        }
        for &(x, y) in comp.keys() {
            if y > 0 && !(comp.contains_key(&(x - 1, y - 1)) && comp.contains_key(&(x + 1, y - 1)))
            {
                return Err(Error::Admissibility(format!(
                    "component containing ({x}, {y}) is not downward closed"
                )));
            }
        }
        clusters.push(Cluster { cells: comp });
    }
    clusters.sort_by(|a, b| a.min_value().total_cmp(&b.min_value()));
    Ok(clusters)
}

/// Mutable state of the local algorithm on one cluster, tracking provenance.
struct Engine {
    cells: HashMap<(i64, i64), (f64, (i64, i64))>,
}

impl Engine {
    fn new(c: &Cluster) -> Self {
        Engine {
            cells: c.cells.iter().map(|(&k, &v)| (k, (v, k))).collect(),
        }
    }

    fn step(&mut self) -> Result<SwapPoint> {
        let (&c0, &(t, origin)) = self
            .cells
            .iter()
            .min_by(|a, b| a.1 .0.total_cmp(&b.1 .0))
            .ok_or_else(|| Error::Domain("empty cluster".into()))?;
        if c0.1 != 0 {
            return Err(Error::Admissibility(format!(
                "minimal entry at ({}, {}) is not on the bottom level",
                c0.0, c0.1
            )));
        }
        let mut cur = c0;
        loop {
            let (x, y) = cur;
            let up = [(x - 1, y + 1), (x + 1, y + 1)]
                .into_iter()
                .filter_map(|c| self.cells.get(&c).map(|&v| (c, v)))
                .min_by(|a, b| a.1 .0.total_cmp(&b.1 .0));
            match up {
                Some((next, v)) => {
                    self.cells.insert(cur, v);
                    cur = next;
                }
                None => {
                    self.cells.remove(&cur);
                    break;
                }
            }
        }
        Ok(SwapPoint {
            x: c0.0.div_euclid(2),
            t,
            origin: Some(origin),
        })
    }
}

/// One step of the local algorithm: the exiting swap and the updated cells.
pub fn eg_min_step(c: &Cluster) -> Result<(i64, f64, Cluster)> {
    let mut e = Engine::new(c);
    let s = e.step()?;
    let cells = e.cells.into_iter().map(|(k, (v, _))| (k, v)).collect();
    Ok((s.x, s.t, Cluster { cells }))
}

/// All swaps of `{T ≤ t_max}`, sorted by time.
pub fn swaps_of_tableau(t: &InfiniteTableau, t_max: f64) -> Result<Vec<SwapPoint>> {
    let mut out = Vec::new();
    for c in graded_clusters(t, t_max)? {
        let mut e = Engine::new(&c);
        while !e.cells.is_empty() {
            out.push(e.step()?);
        }
    }
    out.sort_by(|a, b| a.t.total_cmp(&b.t).then(a.x.cmp(&b.x)));
    Ok(out)
}

/// Swaps as a point configuration `(x, t)`.
pub fn swap_points(swaps: &[SwapPoint]) -> PointConfiguration {
    PointConfiguration::new(swaps.iter().map(|s| (s.x, s.t)).collect())
}

/// Output of [`local_eg_on_points`].
#[derive(Debug, Clone, PartialEq)]
pub struct LocalEgOutput {
    /// Empty bounding lines `(â, b̂)` used to cut the window.
    pub window: (i64, i64),
    /// Emitted swaps in time order.
    pub swaps: Vec<SwapPoint>,
}

/// Default outward scan distance when searching for empty bounding lines.
pub const DEFAULT_SCAN: i64 = 50;

/// Runs the local algorithm on the jumps in lines strictly between two empty
/// lines `â < 2a` and `b̂ > 2b`, using only points with `u ≤ t_max`.
///
/// The bounding lines are the first empty lines found scanning outward from
/// `2a - 1` and `2b + 1`, at most `scan` lines away.
pub fn local_eg_on_points(
    points: &PointConfiguration,
    a: i64,
    b: i64,
    t_max: f64,
    scan: i64,
) -> Result<LocalEgOutput> {
    if a > b {
        return Err(Error::Domain(format!("empty window [{a}, {b}]")));
    }
    let pts = points.truncate(t_max);
    let empty = |x: i64| pts.line(x).is_empty();
    let lo = (1..=scan)
        .map(|d| 2 * a - d)
        .find(|&x| empty(x))
        .ok_or_else(|| Error::Window(format!("no empty line within {scan} below {}", 2 * a)))?;
    let hi = (1..=scan)
        .map(|d| 2 * b + d)
        .find(|&x| empty(x))
        .ok_or_else(|| Error::Window(format!("no empty line within {scan} above {}", 2 * b)))?;

    let mut lines: BTreeMap<i64, Vec<f64>> = BTreeMap::new();
    for x in lo + 1..hi {
        let l = pts.line(x);
        check_distinct(l.iter().copied())?;
        if !l.is_empty() {
            lines.insert(x, l);
        }
    }
    let mut swaps = Vec::new();
    while let Some((x0, u0)) = lines
        .iter()
        .map(|(&x, l)| (x, l[0]))
        .min_by(|a, b| a.1.total_cmp(&b.1))
    {
        if x0.rem_euclid(2) != 0 {
            return Err(Error::Admissibility(format!(
                "lowest point ({x0}, {u0}) lies on an odd line"
            )));
        }
        swaps.push(SwapPoint {
            x: x0 / 2,
            t: u0,
            origin: None,
        });
        // Sliding path as (line, index in line) pairs.
        let mut path = vec![(x0, 0usize)];
        loop {
            let (x, k) = *path.last().expect("path starts nonempty");
            let u = lines[&x][k];
            let mut best: Option<(i64, usize, f64)> = None;
            for nx in [x - 1, x, x + 1] {
                if let Some(l) = lines.get(&nx) {
                    let idx = l.partition_point(|&v| v <= u);
                    if let Some(&v) = l.get(idx) {
                        if best.is_none_or(|b| v < b.2) {
                            best = Some((nx, idx, v));
                        }
                    }
                }
            }
            match best {
                Some((nx, _, _)) if nx == x => {
                    return Err(Error::Admissibility(format!(
                        "points on line {x} are not interlaced with their neighbours"
                    )))
                }
                Some((nx, idx, _)) => path.push((nx, idx)),
                None => break,
            }
        }
        for w in 0..path.len() - 1 {
            let (nx, nk) = path[w + 1];
            let v = lines[&nx][nk];
            let (x, k) = path[w];
            lines.get_mut(&x).expect("path line exists")[k] = v;
        }
        let (lx, lk) = *path.last().expect("path starts nonempty");
        let l = lines.get_mut(&lx).expect("path line exists");
        l.remove(lk);
        if l.is_empty() {
            lines.remove(&lx);
        }
    }
    Ok(LocalEgOutput {
        window: (lo, hi),
        swaps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cluster(cells: &[((i64, i64), f64)]) -> Cluster {
        Cluster::new(cells.iter().copied().collect()).unwrap()
    }

    #[test]
    fn singleton_step() {
        let (x, t, rest) = eg_min_step(&cluster(&[((0, 0), 0.3)])).unwrap();
        assert_eq!((x, t), (0, 0.3));
        assert!(rest.is_empty());
    }

    #[test]
    fn three_cell_steps() {
        let c = cluster(&[((0, 0), 0.2), ((2, 0), 0.5), ((1, 1), 0.7)]);
        let (x, t, rest) = eg_min_step(&c).unwrap();
        assert_eq!((x, t), (0, 0.2));
        assert_eq!(rest.cells(), &[((0, 0), 0.7), ((2, 0), 0.5)].into_iter().collect());
        let c = cluster(&[
            ((0, 0), 0.1),
            ((-2, 0), 0.2),
            ((2, 0), 0.3),
            ((-1, 1), 0.6),
            ((1, 1), 0.4),
        ]);
        let (_, _, rest) = eg_min_step(&c).unwrap();
        assert_eq!(
            rest.cells(),
            &[((0, 0), 0.4), ((-2, 0), 0.2), ((2, 0), 0.3), ((-1, 1), 0.6)]
                .into_iter()
                .collect()
        );
    }

    #[test]
    fn three_cell_swaps() {
        let t = InfiniteTableau::new(
            [((0, 0), 0.2), ((2, 0), 0.5), ((1, 1), 0.7)].into_iter().collect(),
        )
        .unwrap();
        let s: Vec<(i64, f64)> = swaps_of_tableau(&t, 1.0)
            .unwrap()
            .iter()
            .map(|s| (s.x, s.t))
            .collect();
        assert_eq!(s, vec![(0, 0.2), (1, 0.5), (0, 0.7)]);
    }

    #[test]
    fn clusters_examples() {
        let t = InfiniteTableau::new([((0, 0), 0.2), ((4, 0), 0.3)].into_iter().collect()).unwrap();
        assert_eq!(graded_clusters(&t, 1.0).unwrap().len(), 2);
        assert!(graded_clusters(&t, 0.1).unwrap().is_empty());
        let t = InfiniteTableau::new(
            [((0, 0), 0.2), ((2, 0), 0.5), ((1, 1), 0.7)].into_iter().collect(),
        )
        .unwrap();
        let c = graded_clusters(&t, 1.0).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].len(), 3);
    }

    #[test]
    fn single_point_on_points() {
        let p = PointConfiguration::new(vec![(0, 0.25)]);
        let out = local_eg_on_points(&p, 0, 0, 1.0, DEFAULT_SCAN).unwrap();
        assert_eq!(out.window, (-1, 1));
        assert_eq!(out.swaps.len(), 1);
        assert_eq!((out.swaps[0].x, out.swaps[0].t), (0, 0.25));
    }

    #[test]
    fn window_error_when_no_empty_line() {
        let p = PointConfiguration::new((-60..60).map(|x| (x, 0.5 + x as f64 * 1e-3)).collect());
        assert!(matches!(
            local_eg_on_points(&p, 0, 0, 1.0, DEFAULT_SCAN),
            Err(Error::Window(_))
        ));
    }
}
