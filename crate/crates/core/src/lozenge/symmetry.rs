use std::collections::{BTreeSet, HashMap};
use std::ops::ControlFlow;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::lozenge::cell::Cell;
use crate::lozenge::region::Region;
use crate::lozenge::tiler::{Tile, Tiler, MAX_CELLS};

/// Which symmetric tilings to count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymmetryMode {
    /// Invariant under the half-turn about the centre.
    Central,
    /// Invariant under reflection in the vertical axis.
    Vertical,
    /// Both of the above.
    Both,
}

impl std::str::FromStr for SymmetryMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "central" => Ok(SymmetryMode::Central),
            "vertical" => Ok(SymmetryMode::Vertical),
            "both" => Ok(SymmetryMode::Both),
            _ => Err(Error::Parse(format!("unknown symmetry mode {s:?}"))),
        }
    }
}

/// Half-turn or vertical reflection acting on scaled centroids:
/// `x -> sum_x - x`, and `y -> sum_y - y` for the half-turn.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CellMap {
    sum_x: i64,
    sum_y: Option<i64>,
}

impl CellMap {
    pub fn rotation(sum_x: i64, sum_y: i64) -> CellMap {
        CellMap { sum_x, sum_y: Some(sum_y) }
    }

    pub fn mirror(sum_x: i64) -> CellMap {
        CellMap { sum_x, sum_y: None }
    }

    /// Reflection in the vertical lattice line at column `x`.
    pub fn mirror_at_column(x: i64) -> CellMap {
        CellMap::mirror(12 * x)
    }

    pub fn apply(self, c: Cell) -> Option<Cell> {
        let (x, y) = c.centroid6();
        Cell::from_centroid6(self.sum_x - x, self.sum_y.map_or(y, |s| s - y))
    }
}

/// Number of tilings invariant under the symmetry group selected by `mode`.
/// Tiles are placed together with all their images, so only symmetric tilings are visited.
pub fn count_symmetric_tilings(region: &Region, mode: SymmetryMode, budget: &Budget) -> Result<u64> {
    let group = OrbitTiler::new(region, mode)?;
    let mut partner = vec![NONE; group.cells.len()];
    let mut log = Vec::new();
    let mut ticks = 0u64;
    let n = group.count(&mut partner, 0, &mut log, budget, &mut ticks)?;
    budget.spend(ticks)?;
    Ok(n)
}

/// The same count by enumerating every tiling and keeping the invariant ones.
pub fn count_symmetric_tilings_by_filter(region: &Region, mode: SymmetryMode, budget: &Budget) -> Result<u64> {
    let maps = OrbitTiler::new(region, mode)?.maps;
    let tiler = Tiler::new(region)?;
    let cells = tiler.cells().to_vec();
    let mut n = 0;
    tiler.for_each(budget, |tiles| {
        let set: BTreeSet<(Cell, Cell)> = tiles.iter().map(|&t| ordered(t)).collect();
        let fixed = maps.iter().all(|g| {
            set.iter().all(|&(a, b)| {
                let pair = (cells[g[index_of(&cells, a)]], cells[g[index_of(&cells, b)]]);
                set.contains(&order_pair(pair))
            })
        });
        if fixed {
            n += 1;
        }
        ControlFlow::Continue(())
    })?;
    Ok(n)
}

fn index_of(cells: &[Cell], c: Cell) -> usize {
    cells.binary_search(&c).expect("tile cells belong to the region")
}

fn order_pair((a, b): (Cell, Cell)) -> (Cell, Cell) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn ordered(t: Tile) -> (Cell, Cell) {
    order_pair(t.cells())
}

const NONE: usize = usize::MAX;

struct OrbitTiler {
    cells: Vec<Cell>,
    neighbors: Vec<Vec<usize>>,
    /// Each non-identity group element as a permutation of cell indices.
    maps: Vec<Vec<usize>>,
}

impl OrbitTiler {
    fn new(region: &Region, mode: SymmetryMode) -> Result<OrbitTiler> {
        if region.has_free_edges() {
            return Err(Error::Region("symmetric counting needs a region without free edges".into()));
        }
        if region.len() > MAX_CELLS {
            return Err(Error::Budget { what: "region cells", cap: MAX_CELLS as u64 });
        }
        let cells: Vec<Cell> = region.cells().iter().copied().collect();
        let index: HashMap<Cell, usize> = cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let maps = group_elements(region, mode)?
            .into_iter()
            .map(|g| cells.iter().map(|&c| index[&g(c).expect("region was checked to be invariant")]).collect())
            .collect();
        let neighbors =
            cells.iter().map(|c| c.neighbors().iter().filter_map(|n| index.get(n).copied()).collect()).collect();
        Ok(OrbitTiler { cells, neighbors, maps })
    }

    fn place_orbit(&self, partner: &mut [usize], a: usize, b: usize, log: &mut Vec<usize>) -> bool {
        let start = log.len();
        let images = std::iter::once((a, b)).chain(self.maps.iter().map(|g| (g[a], g[b])));
        for (x, y) in images {
            if partner[x] == NONE && partner[y] == NONE {
                partner[x] = y;
                partner[y] = x;
                log.extend([x, y]);
            } else if partner[x] != y {
                Self::undo(partner, log, start);
                return false;
            }
        }
        true
    }

    fn undo(partner: &mut [usize], log: &mut Vec<usize>, to: usize) {
        for &c in &log[to..] {
            partner[c] = NONE;
        }
        log.truncate(to);
    }

    fn count(
        &self,
        partner: &mut [usize],
        from: usize,
        log: &mut Vec<usize>,
        budget: &Budget,
        ticks: &mut u64,
    ) -> Result<u64> {
        let Some(c) = (from..partner.len()).find(|&i| partner[i] == NONE) else {
            return Ok(1);
        };
        *ticks += 1;
        if *ticks == 1024 {
            budget.spend(1024)?;
            *ticks = 0;
        }
        let mut total = 0;
        for &nb in &self.neighbors[c] {
            if partner[nb] != NONE {
                continue;
            }
            let mark = log.len();
            if self.place_orbit(partner, c, nb, log) {
                total += self.count(partner, c + 1, log, budget, ticks)?;
                Self::undo(partner, log, mark);
            }
        }
        Ok(total)
    }
}

/// Non-identity elements of the selected group as cell maps, after checking the region is invariant.
type GroupElement = Box<dyn Fn(Cell) -> Option<Cell>>;

fn group_elements(region: &Region, mode: SymmetryMode) -> Result<Vec<GroupElement>> {
    let Some((x0, x1, y0, y1)) = region.bounds6() else {
        return Ok(Vec::new());
    };
    let (sx, sy) = (x0 + x1, y0 + y1);
    let rotation = CellMap::rotation(sx, sy);
    let mirror = CellMap::mirror(sx);
    let check = |g: CellMap, name: &'static str| -> Result<()> {
        match region.map(|c| g.apply(c)) {
            Ok(image) if image == *region => Ok(()),
            _ => Err(Error::Asymmetric(name)),
        }
    };
    let mut maps: Vec<GroupElement> = Vec::new();
    if matches!(mode, SymmetryMode::Central | SymmetryMode::Both) {
        check(rotation, "centrally")?;
        maps.push(Box::new(move |c| rotation.apply(c)));
    }
    if matches!(mode, SymmetryMode::Vertical | SymmetryMode::Both) {
        check(mirror, "vertically")?;
        maps.push(Box::new(move |c| mirror.apply(c)));
    }
    if mode == SymmetryMode::Both {
        maps.push(Box::new(move |c| mirror.apply(c).and_then(|d| rotation.apply(d))));
    }
    Ok(maps)
}

/// Glues a region to its mirror image in the vertical line `x = 1` across its
/// free edges. Vertically symmetric tilings of the result correspond to
/// tilings of the original with its free boundary.
pub fn double_across_free_boundary(region: &Region) -> Result<Region> {
    if region.weights().next().is_some() {
        return Err(Error::Region("doubling expects unit weights".into()));
    }
    let mirror = CellMap::mirror_at_column(1);
    for (inside, outside) in region.free_edges() {
        if mirror.apply(inside) != Some(outside) {
            return Err(Error::Region(format!("free edge {inside:?}|{outside:?} is not on the line x = 1")));
        }
    }
    let plain = Region::new(region.cells().iter().copied());
    let image = plain.map(|c| mirror.apply(c))?;
    plain.union(&image)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::Execution;
    use crate::lozenge::build::{build_a, build_hexagon_with_holes, build_punctured_hexagon};
    use crate::partitions::StrictPartition;

    fn budget() -> Budget {
        Budget::new("test", 50_000_000)
    }

    fn both_ways(r: &Region, mode: SymmetryMode) -> u64 {
        let fast = count_symmetric_tilings(r, mode, &budget()).unwrap();
        assert_eq!(fast, count_symmetric_tilings_by_filter(r, mode, &budget()).unwrap(), "{mode:?}");
        fast
    }

    #[test]
    fn small_hexagon() {
        let h = build_hexagon_with_holes(1, 1, &[]).unwrap();
        assert_eq!(both_ways(&h, SymmetryMode::Central), 1);
        assert_eq!(both_ways(&h, SymmetryMode::Vertical), 3);
        assert_eq!(both_ways(&h, SymmetryMode::Both), 1);
    }

    #[test]
    fn central_count_is_square_of_both_count() {
        for (m, n, labels) in [(1, 2, &[][..]), (1, 3, &[]), (1, 2, &[1]), (1, 3, &[1]), (2, 2, &[])] {
            let h = build_hexagon_with_holes(m, n, labels).unwrap();
            let central = both_ways(&h, SymmetryMode::Central);
            let both = both_ways(&h, SymmetryMode::Both);
            assert_eq!(central, both * both, "m={m} n={n} K={labels:?}");
        }
        let h = build_hexagon_with_holes(1, 2, &[]).unwrap();
        assert_eq!(both_ways(&h, SymmetryMode::Central), 4);
        let p = build_punctured_hexagon(1, 2, 1, &[]).unwrap();
        assert_eq!((both_ways(&p, SymmetryMode::Central), both_ways(&p, SymmetryMode::Both)), (9, 3));
    }

    #[test]
    fn asymmetric_regions_are_rejected() {
        let r = Region::new([Cell::left(0, 0), Cell::right(0, 0), Cell::left(0, 1)]);
        assert_eq!(count_symmetric_tilings(&r, SymmetryMode::Central, &budget()), Err(Error::Asymmetric("centrally")));
        let a = build_a(1, &StrictPartition::new(vec![2]).unwrap(), &[]).unwrap();
        assert!(count_symmetric_tilings(&a, SymmetryMode::Vertical, &budget()).is_err());
    }

    #[test]
    fn counting_is_idempotent() {
        let h = build_hexagon_with_holes(1, 3, &[]).unwrap();
        let first = count_symmetric_tilings(&h, SymmetryMode::Vertical, &budget()).unwrap();
        assert_eq!(count_symmetric_tilings(&h, SymmetryMode::Vertical, &budget()).unwrap(), first);
    }

    #[test]
    fn doubling_recovers_the_free_boundary_count() {
        for (m, parts, removed) in
            [(1, &[2][..], &[][..]), (1, &[1], &[]), (2, &[3, 1], &[]), (1, &[3, 2], &[1]), (2, &[2, 1], &[2])]
        {
            let shape = StrictPartition::new(parts.to_vec()).unwrap();
            let a = build_a(m, &shape, removed).unwrap();
            let free = Tiler::new(&a).unwrap().count(Execution::Sequential, &budget()).unwrap();
            let doubled = double_across_free_boundary(&a).unwrap();
            assert_eq!(doubled.len(), 2 * a.len());
            assert_eq!(both_ways(&doubled, SymmetryMode::Vertical), free, "m={m} {shape}");
        }
    }
}
