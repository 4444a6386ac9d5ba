//! Dimension bookkeeping for first-quadrant cohomological spectral sequences.
//!
//! A page is a table of dimensions `E_r^{p,q}`; a differential
//! `d_r: E_r^{p,q} → E_r^{p+r, q-r+1}` is recorded only by its rank. Turning
//! the page subtracts outgoing and incoming ranks from every cell.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;

pub type Cell = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GridRepr", into = "GridRepr")]
pub struct SpectralGrid {
    page: u32,
    dims: BTreeMap<Cell, u64>,
}

impl SpectralGrid {
    /// Zero entries are dropped; repeated cells are an error.
    pub fn new<I: IntoIterator<Item = (Cell, u64)>>(page: u32, cells: I) -> Result<Self> {
        if page < 2 {
            return Err(Error::PageTooSmall(page));
        }
        let mut dims = BTreeMap::new();
        for ((p, q), dim) in cells {
            if dims.contains_key(&(p, q)) {
                return Err(Error::InfeasiblePlan {
                    p,
                    q,
                    reason: "cell listed twice".into(),
                });
            }
            if dim > 0 {
                dims.insert((p, q), dim);
            }
        }
        Ok(Self { page, dims })
    }

    pub fn page(&self) -> u32 {
        self.page
    }

    pub fn get(&self, p: usize, q: usize) -> u64 {
        self.dims.get(&(p, q)).copied().unwrap_or(0)
    }

    /// Nonzero cells in `(p, q)` order.
    pub fn cells(&self) -> impl Iterator<Item = (Cell, u64)> + '_ {
        self.dims.iter().map(|(c, d)| (*c, *d))
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    /// Antidiagonal sums `b_k = Σ_{p+q=k} dim E^{p,q}`, up to the last
    /// nonzero antidiagonal.
    pub fn total_dimensions(&self) -> Vec<u64> {
        let Some(top) = self.dims.keys().map(|(p, q)| p + q).max() else {
            return Vec::new();
        };
        let mut out = vec![0u64; top + 1];
        for ((p, q), d) in &self.dims {
            out[p + q] += d;
        }
        out
    }

    /// Every source cell of a possibly nonzero `d_r` on this page, paired with
    /// its target and the largest rank the two dimensions allow.
    pub fn arrows(&self) -> Vec<(Cell, Cell, u64)> {
        self.arrows_on(self.page as usize).collect()
    }

    fn arrows_on(&self, r: usize) -> impl Iterator<Item = (Cell, Cell, u64)> + '_ {
        self.dims
            .iter()
            .filter(move |((_, q), _)| q + 1 >= r)
            .filter_map(move |(&(p, q), &src)| {
                let target = (p + r, q + 1 - r);
                let tgt = self.get(target.0, target.1);
                (tgt > 0).then_some(((p, q), target, src.min(tgt)))
            })
    }

    /// Whether every later differential is forced to vanish, i.e. this page
    /// already is `E_∞`.
    pub fn is_final(&self) -> bool {
        let max_q = self.dims.keys().map(|c| c.1).max().unwrap_or(0);
        (self.page as usize..=max_q + 1).all(|r| self.arrows_on(r).next().is_none())
    }
}

/// Ranks of `d_r` for one page, keyed by source cell.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct DifferentialPlan {
    pub page: u32,
    pub ranks: BTreeMap<Cell, u64>,
}

impl DifferentialPlan {
    pub fn zero(page: u32) -> Self {
        Self {
            page,
            ranks: BTreeMap::new(),
        }
    }

    pub fn with_rank(mut self, p: usize, q: usize, rank: u64) -> Self {
        self.ranks.insert((p, q), rank);
        self
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.values().all(|&r| r == 0)
    }
}

/// `E^{p,q}` of the trivially-twisted Leray sequence:
/// `base_betti[p] · fiber_betti[q]`.
pub fn build_e2(base_betti: &[u64], fiber_betti: &[u64]) -> SpectralGrid {
    let cells = base_betti.iter().enumerate().flat_map(|(p, &b)| {
        fiber_betti
            .iter()
            .enumerate()
            .map(move |(q, &f)| ((p, q), b * f))
    });
    SpectralGrid::new(2, cells).expect("distinct cells, page 2")
}

/// Next page after applying `plan`. Rejects ranks that are too large for
/// their source or target, differentials pointing below the `p`-axis, and
/// plans whose combined in- and outgoing ranks exceed a cell's dimension.
pub fn turn_page(grid: &SpectralGrid, plan: &DifferentialPlan) -> Result<SpectralGrid> {
    if grid.page != plan.page {
        return Err(Error::PageMismatch {
            grid: grid.page,
            plan: plan.page,
        });
    }
    let r = grid.page as usize;
    let mut lost: BTreeMap<Cell, u64> = BTreeMap::new();
    for (&(p, q), &rank) in &plan.ranks {
        if rank == 0 {
            continue;
        }
        let infeasible = |reason: String| Error::InfeasiblePlan { p, q, reason };
        if q + 1 < r {
            return Err(infeasible(format!("d_{r} leaves the first quadrant")));
        }
        let target = (p + r, q + 1 - r);
        let src = grid.get(p, q);
        let tgt = grid.get(target.0, target.1);
        if rank > src.min(tgt) {
            return Err(infeasible(format!(
                "rank {rank} exceeds min(dim source {src}, dim target {tgt})"
            )));
        }
        *lost.entry((p, q)).or_default() += rank;
        *lost.entry(target).or_default() += rank;
    }
    let mut dims = grid.dims.clone();
    for (&(p, q), &l) in &lost {
        let have = grid.get(p, q);
        if l > have {
            return Err(Error::InfeasiblePlan {
                p,
                q,
                reason: format!("in- and outgoing ranks {l} exceed dimension {have}"),
            });
        }
        if l == have {
            dims.remove(&(p, q));
        } else {
            dims.insert((p, q), have - l);
        }
    }
    Ok(SpectralGrid {
        page: grid.page + 1,
        dims,
    })
}

/// True iff the antidiagonal sums of `e2` equal `total_betti`, after padding
/// both with zeros.
pub fn check_degeneration(e2: &SpectralGrid, total_betti: &[u64]) -> bool {
    let sums = e2.total_dimensions();
    let len = sums.len().max(total_betti.len());
    (0..len).all(|k| sums.get(k).copied().unwrap_or(0) == total_betti.get(k).copied().unwrap_or(0))
}

/// Every feasible rank assignment for the current page.
pub fn feasible_plans(grid: &SpectralGrid) -> Vec<DifferentialPlan> {
    let arrows = grid.arrows();
    let mut out = Vec::new();
    let mut ranks = vec![0u64; arrows.len()];
    loop {
        let mut plan = DifferentialPlan::zero(grid.page);
        for (a, &r) in arrows.iter().zip(&ranks) {
            if r > 0 {
                plan.ranks.insert(a.0, r);
            }
        }
        if turn_page(grid, &plan).is_ok() {
            out.push(plan);
        }
        // odometer over 0..=max for each arrow
        let mut i = 0;
        loop {
            if i == arrows.len() {
                return out;
            }
            if ranks[i] < arrows[i].2 {
                ranks[i] += 1;
                break;
            }
            ranks[i] = 0;
            i += 1;
        }
    }
}

/// Outcome of running a grid through every feasible sequence of
/// differentials down to `E_∞`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Abutment {
    pub e_infinity: SpectralGrid,
    pub all_zero: bool,
}

/// All reachable `E_∞` pages starting from `grid`.
pub fn reachable_abutments(grid: &SpectralGrid) -> Vec<Abutment> {
    let mut out = Vec::new();
    walk(grid, true, &mut out);
    out
}

fn walk(grid: &SpectralGrid, all_zero: bool, out: &mut Vec<Abutment>) {
    if grid.is_final() {
        out.push(Abutment {
            e_infinity: grid.clone(),
            all_zero,
        });
        return;
    }
    for plan in feasible_plans(grid) {
        let next = turn_page(grid, &plan).expect("plan was checked feasible");
        walk(&next, all_zero && plan.is_zero(), out);
    }
}

/// Checks that every reachable `E_∞` has antidiagonal sums bounded by those
/// of `grid`, with equality exactly when every differential vanished.
/// Returns the number of paths examined.
pub fn check_monotonicity(grid: &SpectralGrid) -> std::result::Result<usize, String> {
    let start = grid.total_dimensions();
    let abutments = reachable_abutments(grid);
    for a in &abutments {
        let end = a.e_infinity.total_dimensions();
        let bounded = end
            .iter()
            .enumerate()
            .all(|(k, &b)| b <= start.get(k).copied().unwrap_or(0));
        if !bounded {
            return Err(format!("{grid:?}: E_inf sums {end:?} exceed E_2 sums {start:?}"));
        }
        let equal = check_degeneration(&a.e_infinity, &start);
        if equal != a.all_zero {
            return Err(format!(
                "{grid:?}: E_inf sums {end:?}, all-zero plan {}, equality {equal}",
                a.all_zero
            ));
        }
        if a.e_infinity.cells().any(|(_, d)| d == 0) {
            return Err(format!("{grid:?}: stored a zero cell"));
        }
    }
    Ok(abutments.len())
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SoundnessSummary {
    pub grids: usize,
    pub paths: usize,
    pub failures: Vec<String>,
}

/// Exhaustive monotonicity check over every page-2 grid supported in
/// `[0, max_p] × [0, max_q]` with at most `max_cells` nonzero cells, each of
/// dimension `1..=max_entry`.
pub fn soundness_sweep(
    max_p: usize,
    max_q: usize,
    max_cells: usize,
    max_entry: u64,
    exec: Execution,
) -> SoundnessSummary {
    let positions: Vec<Cell> = (0..=max_p)
        .flat_map(|p| (0..=max_q).map(move |q| (p, q)))
        .collect();
    assert!(positions.len() < 64, "support box too large");
    let supports: Vec<u64> = (0..(1u64 << positions.len()))
        .filter(|m| m.count_ones() as usize <= max_cells)
        .collect();
    let partials = exec.map(&supports, |&mask| {
        let cells: Vec<Cell> = positions
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, c)| *c)
            .collect();
        let mut summary = SoundnessSummary::default();
        let mut values = vec![1u64; cells.len()];
        loop {
            let grid = SpectralGrid::new(2, cells.iter().copied().zip(values.iter().copied()))
                .expect("distinct cells");
            summary.grids += 1;
            match check_monotonicity(&grid) {
                Ok(paths) => summary.paths += paths,
                Err(e) => summary.failures.push(e),
            }
            let mut i = 0;
            loop {
                if i == values.len() {
                    return summary;
                }
                if values[i] < max_entry {
                    values[i] += 1;
                    break;
                }
                values[i] = 1;
                i += 1;
            }
        }
    });
    partials.into_iter().fold(SoundnessSummary::default(), |mut acc, s| {
        acc.grids += s.grids;
        acc.paths += s.paths;
        acc.failures.extend(s.failures);
        acc
    })
}

#[derive(Serialize, Deserialize)]
struct CellRepr {
    p: usize,
    q: usize,
    dim: u64,
}

#[derive(Serialize, Deserialize)]
struct GridRepr {
    page: u32,
    cells: Vec<CellRepr>,
}

impl From<SpectralGrid> for GridRepr {
    fn from(g: SpectralGrid) -> Self {
        GridRepr {
            page: g.page,
            cells: g.cells().map(|((p, q), dim)| CellRepr { p, q, dim }).collect(),
        }
    }
}

impl TryFrom<GridRepr> for SpectralGrid {
    type Error = Error;

    fn try_from(r: GridRepr) -> Result<Self> {
        SpectralGrid::new(r.page, r.cells.into_iter().map(|c| ((c.p, c.q), c.dim)))
    }
}
