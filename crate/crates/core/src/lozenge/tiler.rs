use std::collections::{BTreeMap, HashMap};
use std::ops::ControlFlow;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::lozenge::cell::Cell;
use crate::lozenge::region::Region;
use crate::ring::Rational;

/// Largest region the brute-force tiler accepts.
pub const MAX_CELLS: usize = 4096;

/// Number of subtrees the parallel count tries to hand out.
const SPLIT_TARGET: usize = 256;

/// Budget ticks are batched locally to keep the shared counter cold.
const TICK_BATCH: u64 = 1024;

/// One piece of a tiling.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tile {
    /// Two adjacent cells of the region.
    Lozenge(Cell, Cell),
    /// An interior cell paired across a free edge with a cell outside the region.
    Half { inside: Cell, outside: Cell },
}

impl Tile {
    pub fn cells(self) -> (Cell, Cell) {
        match self {
            Tile::Lozenge(a, b) => (a, b),
            Tile::Half { inside, outside } => (inside, outside),
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Choice {
    partner: Option<usize>,
    /// Index into the table of non-unit weights.
    weight: Option<usize>,
    tile: Tile,
}

/// Exponent vector over the non-unit weights, with the number of tilings having it.
type Histogram = HashMap<Vec<u32>, u64>;

struct Counter<'b> {
    budget: &'b Budget,
    pending: u64,
}

impl Counter<'_> {
    fn tick(&mut self) -> Result<()> {
        self.pending += 1;
        if self.pending == TICK_BATCH {
            self.pending = 0;
            self.budget.spend(TICK_BATCH)?;
        }
        Ok(())
    }

    fn flush(&mut self) -> Result<()> {
        let n = std::mem::take(&mut self.pending);
        self.budget.spend(n)
    }
}

#[derive(Clone)]
struct State {
    covered: Vec<bool>,
    exps: Vec<u32>,
}

/// Backtracking tiler. The first uncovered cell in `(x, y, orientation)`
/// order is covered by one of its at most three lozenges or by a half-lozenge
/// across a free edge.
pub struct Tiler {
    cells: Vec<Cell>,
    choices: Vec<Vec<Choice>>,
    weights: Vec<Rational>,
}

impl Tiler {
    pub fn new(region: &Region) -> Result<Tiler> {
        if region.len() > MAX_CELLS {
            return Err(Error::Budget { what: "region cells", cap: MAX_CELLS as u64 });
        }
        let cells: Vec<Cell> = region.cells().iter().copied().collect();
        let index: HashMap<Cell, usize> = cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut weights: Vec<Rational> = Vec::new();
        let mut weight_id = |w: Rational| -> Option<usize> {
            if w.is_one() {
                return None;
            }
            Some(weights.iter().position(|x| *x == w).unwrap_or_else(|| {
                weights.push(w);
                weights.len() - 1
            }))
        };
        let mut choices = Vec::with_capacity(cells.len());
        for (i, &c) in cells.iter().enumerate() {
            let mut here = Vec::new();
            for nb in c.neighbors() {
                match index.get(&nb) {
                    Some(&j) if j > i => here.push(Choice {
                        partner: Some(j),
                        weight: weight_id(region.weight(c, nb)),
                        tile: Tile::Lozenge(c, nb),
                    }),
                    Some(_) => {}
                    None if region.is_free_edge(c, nb) => here.push(Choice {
                        partner: None,
                        weight: weight_id(region.weight(c, nb)),
                        tile: Tile::Half { inside: c, outside: nb },
                    }),
                    None => {}
                }
            }
            choices.push(here);
        }
        Ok(Tiler { cells, choices, weights })
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    fn fresh(&self) -> State {
        State { covered: vec![false; self.cells.len()], exps: vec![0; self.weights.len()] }
    }

    fn first_uncovered(covered: &[bool], from: usize) -> Option<usize> {
        (from..covered.len()).find(|&i| !covered[i])
    }

    fn place(state: &mut State, c: usize, choice: &Choice) -> bool {
        if let Some(p) = choice.partner {
            if state.covered[p] {
                return false;
            }
            state.covered[p] = true;
        }
        state.covered[c] = true;
        if let Some(w) = choice.weight {
            state.exps[w] += 1;
        }
        true
    }

    fn unplace(state: &mut State, c: usize, choice: &Choice) {
        if let Some(p) = choice.partner {
            state.covered[p] = false;
        }
        state.covered[c] = false;
        if let Some(w) = choice.weight {
            state.exps[w] -= 1;
        }
    }

    fn count_from(&self, state: &mut State, from: usize, hist: &mut Histogram, counter: &mut Counter) -> Result<()> {
        let Some(c) = Self::first_uncovered(&state.covered, from) else {
            *hist.entry(state.exps.clone()).or_insert(0) += 1;
            return Ok(());
        };
        counter.tick()?;
        for choice in &self.choices[c] {
            if Self::place(state, c, choice) {
                self.count_from(state, c + 1, hist, counter)?;
                Self::unplace(state, c, choice);
            }
        }
        Ok(())
    }

    /// Expands the search tree breadth-first until there are enough open subtrees.
    fn split(&self, counter: &mut Counter, hist: &mut Histogram) -> Result<Vec<(State, usize)>> {
        let mut frontier = vec![(self.fresh(), 0usize)];
        while !frontier.is_empty() && frontier.len() < SPLIT_TARGET {
            let mut next = Vec::new();
            for (mut state, from) in frontier {
                let Some(c) = Self::first_uncovered(&state.covered, from) else {
                    *hist.entry(state.exps).or_insert(0) += 1;
                    continue;
                };
                counter.tick()?;
                for choice in &self.choices[c] {
                    if Self::place(&mut state, c, choice) {
                        next.push((state.clone(), c + 1));
                        Self::unplace(&mut state, c, choice);
                    }
                }
            }
            frontier = next;
        }
        Ok(frontier)
    }

    fn histogram(&self, exec: Execution, budget: &Budget) -> Result<Histogram> {
        let mut counter = Counter { budget, pending: 0 };
        let mut hist = Histogram::new();
        let frontier = self.split(&mut counter, &mut hist)?;
        counter.flush()?;
        let parts = exec.try_map(frontier, |(mut state, from)| {
            let mut local = Histogram::new();
            let mut counter = Counter { budget, pending: 0 };
            self.count_from(&mut state, from, &mut local, &mut counter)?;
            counter.flush()?;
            Ok::<_, Error>(local)
        })?;
        for part in parts {
            for (k, v) in part {
                *hist.entry(k).or_insert(0) += v;
            }
        }
        Ok(hist)
    }

    /// Sum over tilings of the product of lozenge weights.
    pub fn weighted_count(&self, exec: Execution, budget: &Budget) -> Result<Rational> {
        let hist: BTreeMap<_, _> = self.histogram(exec, budget)?.into_iter().collect();
        Ok(hist
            .into_iter()
            .map(|(exps, n)| {
                let w: Rational = exps.iter().zip(&self.weights).map(|(&e, w)| w.pow(e)).product();
                w * Rational::from(n as i64)
            })
            .sum())
    }

    /// Number of tilings, ignoring weights.
    pub fn count(&self, exec: Execution, budget: &Budget) -> Result<u64> {
        Ok(self.histogram(exec, budget)?.values().sum())
    }

    /// Calls `visit` with each tiling in search order until it breaks.
    pub fn for_each(&self, budget: &Budget, mut visit: impl FnMut(&[Tile]) -> ControlFlow<()>) -> Result<()> {
        let mut state = self.fresh();
        let mut tiles = Vec::new();
        let mut counter = Counter { budget, pending: 0 };
        let _ = self.walk(&mut state, 0, &mut tiles, &mut counter, &mut visit, &mut |c: &[Choice]| c.to_vec())?;
        counter.flush()
    }

    /// One tiling found by a depth-first search that tries choices in random order.
    pub fn sample(&self, rng: &mut impl Rng, budget: &Budget) -> Result<Option<Vec<Tile>>> {
        let mut state = self.fresh();
        let mut tiles = Vec::new();
        let mut found = None;
        let mut counter = Counter { budget, pending: 0 };
        let mut order = |choices: &[Choice]| {
            let mut v = choices.to_vec();
            v.shuffle(rng);
            v
        };
        let _ = self.walk(
            &mut state,
            0,
            &mut tiles,
            &mut counter,
            &mut |t| {
                found = Some(t.to_vec());
                ControlFlow::Break(())
            },
            &mut order,
        )?;
        counter.flush()?;
        Ok(found)
    }

    fn walk(
        &self,
        state: &mut State,
        from: usize,
        tiles: &mut Vec<Tile>,
        counter: &mut Counter,
        visit: &mut impl FnMut(&[Tile]) -> ControlFlow<()>,
        order: &mut impl FnMut(&[Choice]) -> Vec<Choice>,
    ) -> Result<ControlFlow<()>> {
        let Some(c) = Self::first_uncovered(&state.covered, from) else {
            return Ok(visit(tiles));
        };
        counter.tick()?;
        for choice in order(&self.choices[c]) {
            if Self::place(state, c, &choice) {
                tiles.push(choice.tile);
                let flow = self.walk(state, c + 1, tiles, counter, visit, order)?;
                tiles.pop();
                Self::unplace(state, c, &choice);
                if flow.is_break() {
                    return Ok(flow);
                }
            }
        }
        Ok(ControlFlow::Continue(()))
    }
}

/// Weighted tiling count with the budget from the environment.
pub fn count_tilings_bruteforce(region: &Region, exec: Execution) -> Result<Rational> {
    Tiler::new(region)?.weighted_count(exec, &Budget::from_env("tiler states"))
}
