//! The Edelman–Greene map from staircase tableaux to sorting networks.
//!
//! A sorting network of `S_n` is a word `s_1 … s_N`, `N = n(n-1)/2`, of
//! adjacent transpositions `τ_s = (s, s+1)` whose product is the reverse
//! permutation. The Schützenberger operator `Φ` slides the maximal entry of a
//! staircase tableau down to the corner `(1, 1)`. The column of the maximum
//! before each of the `N` applications of `Φ` spells out the network.

use crate::tableau::{sample_syt_uniform, StandardTableau, YoungDiagram};
use crate::{Error, Result};
use rand::Rng;
use serde::{Deserialize, Serialize};

/// A reduced word for the reverse permutation of `S_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SortingNetwork {
    /// Number of particles.
    pub n: usize,
    /// Swap positions `s_k ∈ {1, …, n-1}`.
    pub swaps: Vec<u32>,
}

impl SortingNetwork {
    /// JSON form `{"n":…,"swaps":[…]}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("network serialization cannot fail")
    }

    /// Wiring-diagram crossings as CSV with columns `step,i`.
    pub fn wiring_csv(&self) -> String {
        let mut out = String::from("step,i\n");
        for (k, s) in self.swaps.iter().enumerate() {
            out.push_str(&format!("{},{}\n", k + 1, s));
        }
        out
    }

    /// Steps `k` (1-based) at which swap `s` occurs.
    pub fn occurrences(&self, s: u32) -> Vec<usize> {
        self.swaps
            .iter()
            .enumerate()
            .filter(|&(_, &x)| x == s)
            .map(|(k, _)| k + 1)
            .collect()
    }
}

fn staircase_n(t: &StandardTableau) -> Result<usize> {
    t.shape()
        .staircase_order()
        .or_else(|| t.shape().is_empty().then_some(1))
        .ok_or_else(|| Error::Domain(format!("shape {:?} is not a staircase", t.shape().rows())))
}

/// One application of `Φ`. Returns the column of the maximal entry and `Φ(t)`.
pub fn schutzenberger_step(t: &StandardTableau) -> Result<(usize, StandardTableau)> {
    let n = staircase_n(t)?;
    if n < 2 {
        return Err(Error::Domain("Φ needs a nonempty staircase".into()));
    }
    let big_n = t.size() as u32;
    let mut rows = t.rows().to_vec();
    let (mut i, mut j) = t
        .shape()
        .cells()
        .find(|&(i, j)| t.get(i, j) == Some(big_n))
        .expect("a standard tableau contains its size");
    let j_max = j;
    let at = |rows: &Vec<Vec<u32>>, i: usize, j: usize| -> i64 {
        if i == 0 || j == 0 {
            i64::MIN
        } else {
            rows[i - 1][j - 1] as i64
        }
    };
    while (i, j) != (1, 1) {
        let (ni, nj) = if at(&rows, i - 1, j) > at(&rows, i, j - 1) {
            (i - 1, j)
        } else {
            (i, j - 1)
        };
        // Path cells take the next entry plus one; the shift of all other
        // entries by one is applied below, so store the bare value here.
        rows[i - 1][j - 1] = rows[ni - 1][nj - 1];
        i = ni;
        j = nj;
    }
    rows[0][0] = 0;
    for v in rows.iter_mut().flatten() {
        *v += 1;
    }
    Ok((j_max, StandardTableau::from_rows_unchecked(t.shape().clone(), rows)))
}

/// In-place engine for iterating `Φ` on `Δ_n`.
///
/// Values are stored relative to a running offset so the global `+1` shift is
/// free. A reverse index locates the maximal entry in constant time.
struct PhiEngine {
    n: usize,
    big_n: i64,
    offset: i64,
    val: Vec<i64>,
    cell_of: Vec<usize>,
}

impl PhiEngine {
    fn idx(&self, i: usize, j: usize) -> usize {
        (i - 1) * self.n + (j - 1)
    }

    fn new(t: &StandardTableau, n: usize) -> Self {
        let big_n = t.size() as i64;
        let mut e = PhiEngine {
            n,
            big_n,
            offset: 0,
            val: vec![i64::MIN; n * n],
            cell_of: vec![usize::MAX; (2 * big_n + 1) as usize],
        };
        for (i, j) in t.shape().cells() {
            let v = t.get(i, j).expect("cell of the shape") as i64;
            let k = e.idx(i, j);
            e.val[k] = v;
            e.cell_of[(v + big_n) as usize] = k;
        }
        e
    }

    fn set(&mut self, k: usize, v: i64) {
        self.val[k] = v;
        self.cell_of[(v + self.big_n) as usize] = k;
    }

    /// Applies `Φ` and returns the column of the maximum beforehand.
    fn step(&mut self) -> usize {
        let n = self.n;
        let top = self.cell_of[(self.big_n - self.offset + self.big_n) as usize];
        let (mut i, mut j) = (top / n + 1, top % n + 1);
        let j_max = j;
        while (i, j) != (1, 1) {
            let below = if i > 1 { self.val[self.idx(i - 1, j)] } else { i64::MIN };
            let left = if j > 1 { self.val[self.idx(i, j - 1)] } else { i64::MIN };
            let (ni, nj) = if below > left { (i - 1, j) } else { (i, j - 1) };
            let v = self.val[self.idx(ni, nj)];
            let k = self.idx(i, j);
            self.set(k, v);
            i = ni;
            j = nj;
        }
        let corner = -self.offset;
        self.set(0, corner);
        self.offset += 1;
        j_max
    }
}

/// Lazy Edelman–Greene map, yielding `s_1, s_2, …, s_N` one step at a time.
///
/// Callers that only need a prefix of the network stop early and skip the
/// remaining applications of `Φ`.
pub struct EgSteps {
    engine: PhiEngine,
    remaining: usize,
}

impl Iterator for EgSteps {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        Some(self.engine.step() as u32)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (self.remaining, Some(self.remaining))
    }
}

impl ExactSizeIterator for EgSteps {}

/// Starts the lazy Edelman–Greene map of a staircase tableau.
pub fn eg_steps(t: &StandardTableau) -> Result<EgSteps> {
    let n = staircase_n(t)?;
    if n < 2 {
        return Err(Error::Domain("the Edelman–Greene map needs n ≥ 2".into()));
    }
    Ok(EgSteps {
        engine: PhiEngine::new(t, n),
        remaining: t.size(),
    })
}

/// The Edelman–Greene map: `s_k = j_max(Φ^{k-1}(t))` for `k = 1..=N`.
pub fn eg_map(t: &StandardTableau) -> Result<SortingNetwork> {
    let n = staircase_n(t)?;
    let swaps = eg_steps(t)?.collect();
    Ok(SortingNetwork { n, swaps })
}

/// True iff `w` has length `n(n-1)/2` and its transpositions reverse `1..=n`.
pub fn validate_network(w: &SortingNetwork) -> bool {
    let n = w.n;
    if n < 2 || w.swaps.len() != n * (n - 1) / 2 {
        return false;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    for &s in &w.swaps {
        let s = s as usize;
        if s == 0 || s >= n {
            return false;
        }
        perm.swap(s - 1, s);
    }
    perm.iter().enumerate().all(|(k, &p)| p == n - 1 - k)
}

/// Uniformly random sorting network of `S_n`.
pub fn sample_network<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<SortingNetwork> {
    if n < 2 {
        return Err(Error::Domain(format!("need n ≥ 2, got {n}")));
    }
    eg_map(&sample_syt_uniform(&YoungDiagram::staircase(n), rng))
}
