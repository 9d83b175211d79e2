use std::ops::ControlFlow;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::partitions::{bar_lambda, Partition, StrictPartition};

/// Filling of the shifted diagram of a strict partition, weakly decreasing
/// along rows and down columns. Row `i` (0-based) covers columns `i..i + lambda_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ShiftedPlanePartition {
    shape: StrictPartition,
    rows: Vec<Vec<u32>>,
}

impl ShiftedPlanePartition {
    pub fn new(shape: StrictPartition, rows: Vec<Vec<u32>>) -> Result<Self> {
        if rows.len() != shape.len() || rows.iter().zip(shape.parts()).any(|(r, &p)| r.len() != p as usize) {
            return Err(Error::Partition(format!("row lengths do not match shape {shape}")));
        }
        let spp = ShiftedPlanePartition { shape, rows };
        for i in 0..spp.rows.len() {
            for j in i..i + spp.rows[i].len() {
                let v = spp.get(i, j).unwrap();
                let west = if j > i { spp.get(i, j - 1) } else { None };
                let north = if i > 0 { spp.get(i - 1, j) } else { None };
                if west.is_some_and(|w| w < v) || north.is_some_and(|n| n < v) {
                    return Err(Error::Partition(format!("entry ({i}, {j}) breaks monotonicity")));
                }
            }
        }
        Ok(spp)
    }

    pub fn zero(shape: StrictPartition) -> Self {
        let rows = shape.parts().iter().map(|&p| vec![0; p as usize]).collect();
        ShiftedPlanePartition { shape, rows }
    }

    pub fn shape(&self) -> &StrictPartition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Entry at 0-based row `i` and column `j` (shifted coordinates).
    pub fn get(&self, i: usize, j: usize) -> Option<u32> {
        let row = self.rows.get(i)?;
        j.checked_sub(i).and_then(|c| row.get(c)).copied()
    }

    pub fn diagonal_sum(&self) -> u32 {
        self.rows.iter().map(|r| r[0]).sum()
    }

    pub fn off_diagonal_sum(&self) -> u32 {
        self.rows.iter().map(|r| r[1..].iter().sum::<u32>()).sum()
    }

    pub fn volume(&self) -> u32 {
        self.diagonal_sum() + self.off_diagonal_sum()
    }

    pub fn largest(&self) -> u32 {
        self.rows.first().map_or(0, |r| r[0])
    }
}

/// Filling of a Young diagram, weakly decreasing along rows and columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlanePartition {
    shape: Partition,
    rows: Vec<Vec<u32>>,
}

impl PlanePartition {
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        let shape = Partition::new(rows.iter().map(|r| r.len() as u32).collect())?;
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                let west = j.checked_sub(1).map(|c| row[c]);
                let north = i.checked_sub(1).map(|r| rows[r][j]);
                if west.is_some_and(|w| w < v) || north.is_some_and(|n| n < v) {
                    return Err(Error::Partition(format!("entry ({i}, {j}) breaks monotonicity")));
                }
            }
        }
        Ok(PlanePartition { shape, rows })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> Option<u32> {
        self.rows.get(i).and_then(|r| r.get(j)).copied()
    }

    pub fn is_symmetric(&self) -> bool {
        self.shape.conjugate() == self.shape
            && self.rows.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, &v)| self.get(j, i) == Some(v)))
    }

    pub fn volume(&self) -> u32 {
        self.rows.iter().flatten().sum()
    }
}

/// Reflects a shifted plane partition across the diagonal.
pub fn spp_to_symmetric(spp: &ShiftedPlanePartition) -> PlanePartition {
    let shape = bar_lambda(spp.shape());
    let rows = shape
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &len)| {
            (0..len as usize).map(|j| if j >= i { spp.get(i, j) } else { spp.get(j, i) }.unwrap()).collect()
        })
        .collect();
    PlanePartition { shape, rows }
}

/// Keeps the part on and above the diagonal of a symmetric plane partition.
pub fn symmetric_to_spp(pp: &PlanePartition) -> Result<ShiftedPlanePartition> {
    if !pp.is_symmetric() {
        return Err(Error::Partition("plane partition is not symmetric".into()));
    }
    let k = pp.shape().durfee();
    let parts = (0..k).map(|i| pp.rows[i].len() as u32 - i as u32).collect();
    let shape = StrictPartition::new(parts)?;
    let rows = (0..k).map(|i| pp.rows[i][i..].to_vec()).collect();
    ShiftedPlanePartition::new(shape, rows)
}

/// Streams every shifted plane partition of `shape` with entries at most `m`,
/// in odometer order over the row-major cells. After the budget runs out the
/// iterator yields one error and stops.
pub struct SppIter {
    shape: StrictPartition,
    m: u32,
    /// `(row, col)` of each cell in row-major order.
    cells: Vec<(usize, usize)>,
    /// Flat index of the west and north neighbours, if any.
    west: Vec<Option<usize>>,
    north: Vec<Option<usize>>,
    values: Vec<u32>,
    started: bool,
    done: bool,
    budget: Budget,
}

pub fn enumerate_spp(m: u32, shape: &StrictPartition) -> SppIter {
    enumerate_spp_with(m, shape, Budget::from_env("shifted plane partitions"))
}

pub fn enumerate_spp_with(m: u32, shape: &StrictPartition, budget: Budget) -> SppIter {
    let mut cells = Vec::new();
    for (i, &p) in shape.parts().iter().enumerate() {
        for j in i..i + p as usize {
            cells.push((i, j));
        }
    }
    let flat = |i: usize, j: usize| cells.iter().position(|&c| c == (i, j));
    let west = cells.iter().map(|&(i, j)| if j > i { flat(i, j - 1) } else { None }).collect();
    let north = cells.iter().map(|&(i, j)| if i > 0 { flat(i - 1, j) } else { None }).collect();
    SppIter {
        shape: shape.clone(),
        m,
        values: vec![0; cells.len()],
        cells,
        west,
        north,
        started: false,
        done: false,
        budget,
    }
}

impl SppIter {
    fn bound(&self, c: usize) -> u32 {
        let mut b = self.m;
        for n in [self.west[c], self.north[c]].into_iter().flatten() {
            b = b.min(self.values[n]);
        }
        b
    }

    fn current(&self) -> ShiftedPlanePartition {
        let mut rows: Vec<Vec<u32>> = self.shape.parts().iter().map(|&p| Vec::with_capacity(p as usize)).collect();
        for (&(i, _), &v) in self.cells.iter().zip(&self.values) {
            rows[i].push(v);
        }
        ShiftedPlanePartition { shape: self.shape.clone(), rows }
    }

    fn advance(&mut self) -> bool {
        for c in (0..self.cells.len()).rev() {
            if self.values[c] < self.bound(c) {
                self.values[c] += 1;
                self.values[c + 1..].fill(0);
                return true;
            }
        }
        false
    }
}

impl Iterator for SppIter {
    type Item = Result<ShiftedPlanePartition>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        if let Err(e) = self.budget.tick() {
            self.done = true;
            return Some(Err(e));
        }
        if self.started && !self.advance() {
            self.done = true;
            return None;
        }
        self.started = true;
        Some(Ok(self.current()))
    }
}

/// Calls `visit` on every symmetric plane partition of the symmetric shape
/// `shape` with entries at most `m`. Cells below the diagonal copy their mirror
/// image and must still respect monotonicity in the full diagram.
pub fn for_each_symmetric_pp(
    m: u32,
    shape: &Partition,
    budget: &Budget,
    mut visit: impl FnMut(&PlanePartition) -> ControlFlow<()>,
) -> Result<()> {
    if shape.conjugate() != *shape {
        return Err(Error::Partition(format!("shape {shape} is not symmetric")));
    }
    let cells: Vec<(usize, usize)> =
        shape.parts().iter().enumerate().flat_map(|(i, &len)| (0..len as usize).map(move |j| (i, j))).collect();
    let mut rows: Vec<Vec<u32>> = shape.parts().iter().map(|&len| vec![0; len as usize]).collect();
    fill(0, &cells, m, shape, &mut rows, budget, &mut visit).map(|_| ())
}

fn fill(
    at: usize,
    cells: &[(usize, usize)],
    m: u32,
    shape: &Partition,
    rows: &mut Vec<Vec<u32>>,
    budget: &Budget,
    visit: &mut impl FnMut(&PlanePartition) -> ControlFlow<()>,
) -> Result<ControlFlow<()>> {
    budget.tick()?;
    let Some(&(i, j)) = cells.get(at) else {
        let pp = PlanePartition { shape: shape.clone(), rows: rows.clone() };
        return Ok(visit(&pp));
    };
    let mut bound = m;
    if j > 0 {
        bound = bound.min(rows[i][j - 1]);
    }
    if i > 0 {
        bound = bound.min(rows[i - 1][j]);
    }
    let choices = if j < i { rows[j][i]..=rows[j][i] } else { 0..=bound };
    for v in choices {
        if v > bound {
            continue;
        }
        rows[i][j] = v;
        if fill(at + 1, cells, m, shape, rows, budget, visit)?.is_break() {
            return Ok(ControlFlow::Break(()));
        }
    }
    rows[i][j] = 0;
    Ok(ControlFlow::Continue(()))
}
