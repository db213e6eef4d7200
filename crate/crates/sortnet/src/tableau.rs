//! Young diagrams, standard and Poissonized Young tableaux.
//!
//! Cells are indexed `(i, j)` with 1-based row `i` and column `j`, in French
//! notation: row 1 is the bottom row. A standard tableau holds `1..=N` strictly
//! increasing along rows and up columns. A Poissonized tableau holds reals in
//! `[0, 1]` weakly increasing in the same directions.

use crate::{Error, Result};
use num_bigint::BigUint;
use rand::Rng;
use serde::{Deserialize, Serialize};

/// A partition `λ_1 ≥ λ_2 ≥ … ≥ λ_ℓ > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct YoungDiagram {
    rows: Vec<usize>,
}

impl TryFrom<Vec<usize>> for YoungDiagram {
    type Error = Error;
    fn try_from(rows: Vec<usize>) -> Result<Self> {
        YoungDiagram::new(rows)
    }
}

impl From<YoungDiagram> for Vec<usize> {
    fn from(d: YoungDiagram) -> Self {
        d.rows
    }
}

impl YoungDiagram {
    /// Builds a diagram from its row lengths. Trailing zero rows are dropped.
    pub fn new(mut rows: Vec<usize>) -> Result<Self> {
        while rows.last() == Some(&0) {
            rows.pop();
        }
        if rows.contains(&0) || rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain(format!(
                "row lengths must be positive and weakly decreasing, got {rows:?}"
            )));
        }
        Ok(YoungDiagram { rows })
    }

    /// The staircase `Δ_n = (n-1, n-2, …, 1)`; empty for `n ≤ 1`.
    pub fn staircase(n: usize) -> Self {
        YoungDiagram {
            rows: (1..n).rev().collect(),
        }
    }

    /// Row lengths, bottom row first.
    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    /// Number of nonzero rows `ℓ(λ)`.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    /// True for the empty partition.
    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Number of cells `|λ|`.
    pub fn size(&self) -> usize {
        self.rows.iter().sum()
    }

    /// Length of row `i` (1-based), zero beyond the last row.
    pub fn row_len(&self, i: usize) -> usize {
        if i == 0 {
            0
        } else {
            self.rows.get(i - 1).copied().unwrap_or(0)
        }
    }

    /// Column lengths `λ'`.
    pub fn conjugate(&self) -> Vec<usize> {
        let width = self.rows.first().copied().unwrap_or(0);
        (1..=width)
            .map(|j| self.rows.iter().take_while(|&&r| r >= j).count())
            .collect()
    }

    /// True when `(i, j)` is a cell of the diagram.
    pub fn contains(&self, i: usize, j: usize) -> bool {
        i >= 1 && j >= 1 && j <= self.row_len(i)
    }

    /// All cells in row-major order, bottom row first.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (1..=len).map(move |j| (r + 1, j)))
    }

    /// If the diagram is a staircase `Δ_n` with `n ≥ 2`, returns `n`.
    pub fn staircase_order(&self) -> Option<usize> {
        let n = self.rows.len() + 1;
        (n >= 2 && *self == YoungDiagram::staircase(n)).then_some(n)
    }
}

/// A standard Young tableau.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawTableau<u32>", into = "RawTableau<u32>")]
pub struct StandardTableau {
    shape: YoungDiagram,
    rows: Vec<Vec<u32>>,
}

/// A Poissonized Young tableau with entries in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PoissonizedTableau {
    shape: YoungDiagram,
    rows: Vec<Vec<f64>>,
}

#[derive(Serialize, Deserialize)]
struct RawTableau<T> {
    shape: Vec<usize>,
    entries: Vec<Vec<T>>,
}

impl TryFrom<RawTableau<u32>> for StandardTableau {
    type Error = Error;
    fn try_from(raw: RawTableau<u32>) -> Result<Self> {
        let t = StandardTableau::new(raw.entries)?;
        if t.shape.rows != raw.shape {
            return Err(Error::InvalidTableau(
                "declared shape does not match the entries".into(),
            ));
        }
        Ok(t)
    }
}

impl From<StandardTableau> for RawTableau<u32> {
    fn from(t: StandardTableau) -> Self {
        RawTableau {
            shape: t.shape.rows,
            entries: t.rows,
        }
    }
}

fn shape_of<T>(rows: &[Vec<T>]) -> Result<YoungDiagram> {
    YoungDiagram::new(rows.iter().map(Vec::len).collect())
        .map_err(|e| Error::InvalidTableau(e.to_string()))
}

impl StandardTableau {
    /// Builds a tableau from its rows (bottom row first) and checks that the
    /// entries are `1..=N`, strictly increasing along rows and columns.
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        let shape = shape_of(&rows)?;
        let n = shape.size();
        let mut seen = vec![false; n + 1];
        for &v in rows.iter().flatten() {
            let v = v as usize;
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidTableau(format!(
                    "entries must be a permutation of 1..={n}"
                )));
            }
            seen[v] = true;
        }
        let t = StandardTableau { shape, rows };
        if !t.is_increasing() {
            return Err(Error::InvalidTableau(
                "entries must increase strictly along rows and columns".into(),
            ));
        }
        Ok(t)
    }

    pub(crate) fn from_rows_unchecked(shape: YoungDiagram, rows: Vec<Vec<u32>>) -> Self {
        StandardTableau { shape, rows }
    }

    fn is_increasing(&self) -> bool {
        let rows = &self.rows;
        rows.iter().all(|r| r.windows(2).all(|w| w[0] < w[1]))
            && rows
                .windows(2)
                .all(|w| w[1].iter().zip(&w[0]).all(|(up, down)| down < up))
    }

    /// The shape.
    pub fn shape(&self) -> &YoungDiagram {
        &self.shape
    }

    /// Rows of entries, bottom row first.
    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Entry at cell `(i, j)` (1-based).
    pub fn get(&self, i: usize, j: usize) -> Option<u32> {
        self.rows.get(i.checked_sub(1)?)?.get(j.checked_sub(1)?).copied()
    }

    /// Number of cells.
    pub fn size(&self) -> usize {
        self.shape.size()
    }

    /// JSON form `{"shape":[…],"entries":[[…]]}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("tableau serialization cannot fail")
    }

    /// Parses the JSON form produced by [`StandardTableau::to_json`].
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidTableau(e.to_string()))
    }
}

impl PoissonizedTableau {
    /// Builds a tableau from its rows (bottom row first). Entries must lie in
    /// `[0, 1]`; monotonicity is not enforced here, see [`validate_tableau`].
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let shape = shape_of(&rows)?;
        if let Some(v) = rows.iter().flatten().find(|v| !(0.0..=1.0).contains(*v)) {
            return Err(Error::InvalidTableau(format!("entry {v} outside [0, 1]")));
        }
        Ok(PoissonizedTableau { shape, rows })
    }

    /// The shape.
    pub fn shape(&self) -> &YoungDiagram {
        &self.shape
    }

    /// Rows of entries, bottom row first.
    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    /// Entry at cell `(i, j)` (1-based).
    pub fn get(&self, i: usize, j: usize) -> Option<f64> {
        self.rows.get(i.checked_sub(1)?)?.get(j.checked_sub(1)?).copied()
    }

    /// Iterates over `((i, j), value)`.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), f64)> + '_ {
        self.rows.iter().enumerate().flat_map(|(r, row)| {
            row.iter()
                .enumerate()
                .map(move |(c, &v)| ((r + 1, c + 1), v))
        })
    }

    /// JSON form with every entry written to 17 significant digits.
    pub fn to_json(&self) -> String {
        let shape = serde_json::to_string(&self.shape.rows).expect("plain vector");
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                let vals: Vec<String> = r.iter().map(|v| format!("{v:.16e}")).collect();
                format!("[{}]", vals.join(","))
            })
            .collect();
        format!("{{\"shape\":{shape},\"entries\":[{}]}}", rows.join(","))
    }

    /// Parses the JSON form produced by [`PoissonizedTableau::to_json`].
    pub fn from_json(s: &str) -> Result<Self> {
        let raw: RawTableau<f64> =
            serde_json::from_str(s).map_err(|e| Error::InvalidTableau(e.to_string()))?;
        let t = PoissonizedTableau::new(raw.entries)?;
        if t.shape.rows != raw.shape {
            return Err(Error::InvalidTableau(
                "declared shape does not match the entries".into(),
            ));
        }
        Ok(t)
    }
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |acc, k| acc * BigUint::from(k))
}

/// Number of standard Young tableaux of `shape`, by the hook-length formula.
pub fn count_syt(shape: &YoungDiagram) -> BigUint {
    let cols = shape.conjugate();
    let hooks = shape.cells().fold(BigUint::from(1u32), |acc, (i, j)| {
        let arm = shape.row_len(i) - j;
        let leg = cols[j - 1] - i;
        acc * BigUint::from(arm + leg + 1)
    });
    factorial(shape.size()) / hooks
}

/// Number of sorting networks of `S_n`: `N! / ∏_{j=1}^{n-1} (2n-1-2j)^j` with
/// `N = n(n-1)/2`.
pub fn stanley_count(n: usize) -> Result<BigUint> {
    if n < 2 {
        return Err(Error::Domain(format!("stanley_count needs n ≥ 2, got {n}")));
    }
    let big_n = n * (n - 1) / 2;
    let denom = (1..n).fold(BigUint::from(1u32), |acc, j| {
        acc * BigUint::from(2 * n - 1 - 2 * j).pow(j as u32)
    });
    Ok(factorial(big_n) / denom)
}

/// Uniformly random standard tableau of `shape` by the Greene–Nijenhuis–Wilf
/// hook walk.
pub fn sample_syt_uniform<R: Rng + ?Sized>(shape: &YoungDiagram, rng: &mut R) -> StandardTableau {
    let mut row: Vec<usize> = shape.rows.clone();
    let mut col: Vec<usize> = shape.conjugate();
    let mut entries: Vec<Vec<u32>> = shape.rows.iter().map(|&l| vec![0; l]).collect();
    for k in (1..=shape.size()).rev() {
        // Uniform cell of the current diagram by rejection from its bounding box.
        let (mut i, mut j) = loop {
            let i = rng.random_range(0..col[0]);
            let j = rng.random_range(0..row[0]);
            if j < row[i] {
                break (i, j);
            }
        };
        loop {
            let arm = row[i] - j - 1;
            let leg = col[j] - i - 1;
            if arm + leg == 0 {
                break;
            }
            let r = rng.random_range(0..arm + leg);
            if r < arm {
                j += 1 + r;
            } else {
                i += 1 + r - arm;
            }
        }
        entries[i][j] = k as u32;
        row[i] -= 1;
        col[j] -= 1;
    }
    StandardTableau::from_rows_unchecked(shape.clone(), entries)
}

/// Places uniform order statistics into `t`: the `k`-th smallest uniform goes
/// to the cell holding `k`.
pub fn poissonize<R: Rng + ?Sized>(t: &StandardTableau, rng: &mut R) -> PoissonizedTableau {
    let uniforms: Vec<f64> = (0..t.size()).map(|_| rng.random::<f64>()).collect();
    poissonize_with(t, uniforms).expect("sample size matches the tableau")
}

/// As [`poissonize`], with the uniforms supplied by the caller.
pub fn poissonize_with(t: &StandardTableau, mut uniforms: Vec<f64>) -> Result<PoissonizedTableau> {
    if uniforms.len() != t.size() {
        return Err(Error::Domain(format!(
            "need {} values, got {}",
            t.size(),
            uniforms.len()
        )));
    }
    uniforms.sort_by(f64::total_cmp);
    let rows = t
        .rows
        .iter()
        .map(|r| r.iter().map(|&k| uniforms[k as usize - 1]).collect())
        .collect();
    PoissonizedTableau::new(rows)
}

/// Replaces the entries of `p` by their ranks.
pub fn depoissonize(p: &PoissonizedTableau) -> Result<StandardTableau> {
    let mut cells: Vec<(f64, usize, usize)> = p
        .entries()
        .map(|((i, j), v)| (v, i - 1, j - 1))
        .collect();
    cells.sort_by(|a, b| a.0.total_cmp(&b.0));
    if let Some(w) = cells.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(Error::Ties(format!("value {} occurs twice", w[0].0)));
    }
    let mut rows: Vec<Vec<u32>> = p.rows.iter().map(|r| vec![0; r.len()]).collect();
    for (k, &(_, i, j)) in cells.iter().enumerate() {
        rows[i][j] = k as u32 + 1;
    }
    StandardTableau::new(rows)
}

/// True iff entries weakly increase along every row and up every column.
pub fn validate_tableau(p: &PoissonizedTableau) -> bool {
    let rows = &p.rows;
    rows.iter().all(|r| r.windows(2).all(|w| w[0] <= w[1]))
        && rows
            .windows(2)
            .all(|w| w[1].iter().zip(&w[0]).all(|(up, down)| down <= up))
}
