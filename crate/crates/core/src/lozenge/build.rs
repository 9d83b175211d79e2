use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::lozenge::cell::{point6, Cell};
use crate::lozenge::region::Region;
use crate::partitions::{index_set, StrictPartition};
use crate::ring::Rational;

// Hooks are laid out with their apex on the vertical line x = 1: the left arm
// occupies columns x <= 0 and the right arm columns x >= 1.

fn left_arm(order: i64, row: i64) -> impl Iterator<Item = Cell> {
    (1 - order..=0).flat_map(move |x| [Cell::right(x, row), Cell::left(x, row + 1)])
}

fn right_arm(order: i64, row: i64) -> impl Iterator<Item = Cell> {
    (1..=order).flat_map(move |x| [Cell::left(x, row + 1 - x), Cell::right(x, row + 1 - x)])
}

/// Left arm of a shifted hook: its first cell is the lone left-pointing cell
/// at the far end.
fn shifted_left_arm(order: i64, row: i64) -> impl Iterator<Item = Cell> {
    std::iter::once(Cell::left(1 - order, row + 1)).chain(left_arm(order - 1, row))
}

fn check_order(n: u32) -> Result<i64> {
    if n == 0 {
        return Err(Error::Region("hook order must be at least 1".into()));
    }
    Ok(n as i64)
}

/// The wedge-shaped hook of order `n`: `4n` cells forming `2n` lozenges.
pub fn wedge_hook(n: u32) -> Result<Region> {
    let n = check_order(n)?;
    Ok(Region::new(left_arm(n, 0).chain(right_arm(n, 0))))
}

/// The hook of order `n` with its leftmost cell moved past the right end.
pub fn shifted_wedge_hook(n: u32) -> Result<Region> {
    let n = check_order(n)?;
    let right_end = Cell::right(n + 1, -n);
    Ok(Region::new(shifted_left_arm(n, 0).chain(right_arm(n, 0)).chain([right_end])))
}

/// Row of the shifted hook of part `i` (1-based) when there are `k` parts.
fn shifted_row(k: usize, i: usize) -> i64 {
    k as i64 - i as i64
}

/// Label cell `i`: the leftmost cell of the `i`-th shifted hook.
fn left_label(shape: &StrictPartition, i: usize) -> Cell {
    let part = shape.parts()[i - 1] as i64;
    Cell::left(1 - part, shifted_row(shape.len(), i) + 1)
}

/// Label cell `i'`: the rightmost cell of the `i`-th shifted hook.
fn right_label(shape: &StrictPartition, i: usize) -> Cell {
    let part = shape.parts()[i - 1] as i64;
    Cell::right(part + 1, shifted_row(shape.len(), i) - part)
}

/// Cells of `m` hooks of order `lambda_1 + 1` stacked over shifted hooks of
/// orders `lambda_i`, with the forced leftmost column already removed.
fn stacked(m: u32, shape: &StrictPartition, two_sided: bool) -> Vec<Cell> {
    let k = shape.len();
    let top = shape.largest() as i64;
    let mut cells = Vec::new();
    for row in k as i64..k as i64 + m as i64 {
        cells.extend(left_arm(top, row));
        if two_sided {
            cells.extend(right_arm(top + 1, row));
        }
    }
    for (idx, &part) in shape.parts().iter().enumerate() {
        let row = shifted_row(k, idx + 1);
        cells.extend(shifted_left_arm(part as i64, row));
        if two_sided {
            cells.extend(right_arm(part as i64, row));
            cells.push(right_label(shape, idx + 1));
        }
    }
    cells
}

/// The half-region left of the symmetry line, with the line as a free boundary
/// and label cells in `removed` deleted.
pub fn build_a(m: u32, shape: &StrictPartition, removed: &[usize]) -> Result<Region> {
    let removed = index_set(removed, shape.len())?;
    let mut region = Region::new(stacked(m, shape, false));
    for &i in &removed {
        region.remove(left_label(shape, i));
    }
    let rows = (m as usize + shape.len()) as i64;
    for row in 0..rows {
        let inside = Cell::left(0, row + 1);
        if region.contains(inside) {
            region.add_free_edge(inside, Cell::right(1, row))?;
        }
    }
    Ok(region)
}

/// The two-sided region: labels `i` and `i'` deleted for `i` in `removed`, and
/// the horizontal lozenge holding label `i'` weighted 1/2 for every other `i`.
pub fn build_a_tilde(m: u32, shape: &StrictPartition, removed: &[usize]) -> Result<Region> {
    let removed = index_set(removed, shape.len())?;
    let mut region = Region::new(stacked(m, shape, true));
    for i in 1..=shape.len() {
        let label = right_label(shape, i);
        if removed.contains(&i) {
            region.remove(left_label(shape, i));
            region.remove(label);
        } else {
            let partner = Cell::left(label.x - 1, label.y + 1);
            region.set_weight(partner, label, Rational::half())?;
        }
    }
    Ok(region)
}

/// Whether the scaled point lies strictly inside the polygon (even-odd rule).
fn inside(polygon: &[(i64, i64)], (px, py): (i64, i64)) -> bool {
    let mut result = false;
    for (n, &(x1, y1)) in polygon.iter().enumerate() {
        let (x2, y2) = polygon[(n + 1) % polygon.len()];
        if (y1 > py) != (y2 > py) {
            let lhs = (px - x1) * (y2 - y1);
            let rhs = (py - y1) * (x2 - x1);
            if (y2 > y1 && lhs < rhs) || (y2 < y1 && lhs > rhs) {
                result = !result;
            }
        }
    }
    result
}

/// All cells whose centroid is inside the lattice polygon with the given corners.
pub fn cells_in_polygon(corners: &[(i64, i64)]) -> Vec<Cell> {
    let scaled: Vec<_> = corners.iter().map(|&p| point6(p)).collect();
    let (i0, i1) = corners.iter().fold((i64::MAX, i64::MIN), |(a, b), &(i, _)| (a.min(i), b.max(i)));
    let (j0, j1) = corners.iter().fold((i64::MAX, i64::MIN), |(a, b), &(_, j)| (a.min(j), b.max(j)));
    let mut cells = Vec::new();
    for x in i0 - 1..=i1 {
        for y in j0 - (i1 - i0) - 1..=j1 + (i1 - i0) + 1 {
            for c in [Cell::left(x, y), Cell::right(x, y)] {
                if inside(&scaled, c.centroid6()) {
                    cells.push(c);
                }
            }
        }
    }
    cells
}

fn hexagon(m: u32, n: u32) -> Region {
    let (m, n) = (m as i64, n as i64);
    Region::new(cells_in_polygon(&[(0, 0), (0, 2 * m), (n, 2 * m), (2 * n, 2 * m - n), (2 * n, -n), (n, -n)]))
}

/// Removes the size-2 triangles around labelled axis lozenges `k` (pointing
/// left) and `k'` (pointing right).
fn remove_label_triangles(region: &mut Region, m: u32, n: u32, labels: &BTreeSet<usize>) {
    let (m, n) = (m as i64, n as i64);
    for &k in labels {
        let k = k as i64;
        let i = 2 * k - 2;
        let j = m - i / 2;
        for c in [Cell::left(i, j), Cell::left(i + 1, j - 1), Cell::right(i + 1, j - 1), Cell::left(i + 1, j)] {
            region.remove(c);
        }
        let i = 2 * n - 2 * k;
        let j = m - n + k;
        for c in [Cell::right(i, j - 1), Cell::left(i, j), Cell::right(i, j), Cell::right(i + 1, j - 1)] {
            region.remove(c);
        }
    }
}

/// Hexagon with sides `2m, n, n, 2m, n, n` minus the triangles at labels in `labels`.
pub fn build_hexagon_with_holes(m: u32, n: u32, labels: &[usize]) -> Result<Region> {
    if m == 0 || n == 0 {
        return Err(Error::Region("hexagon sides must be positive".into()));
    }
    let labels = index_set(labels, n as usize / 2)?;
    let mut region = hexagon(m, n);
    remove_label_triangles(&mut region, m, n, &labels);
    Ok(region)
}

/// Hexagon with sides `2m, 2n-1, 2n-1, ...` with a horizontal lozenge of side
/// `2x - 1` cut from its centre, minus the triangles at labels in `labels`.
pub fn build_punctured_hexagon(m: u32, n: u32, x: u32, labels: &[usize]) -> Result<Region> {
    if m == 0 || n == 0 || x == 0 || x > n {
        return Err(Error::Region(format!("punctured hexagon needs m, n >= 1 and 1 <= x <= n, got m={m} n={n} x={x}")));
    }
    let labels = index_set(labels, (n - x) as usize)?;
    let width = 2 * n - 1;
    let mut region = hexagon(m, width);
    let (mm, w, s) = (m as i64, width as i64, 2 * x as i64 - 1);
    let hole = [(6 * (w - s), 6 * mm), (6 * w, 6 * mm - 3 * s), (6 * (w + s), 6 * mm), (6 * w, 6 * mm + 3 * s)];
    let cut: Vec<Cell> = region.cells().iter().copied().filter(|c| inside(&hole, c.centroid6())).collect();
    for c in cut {
        region.remove(c);
    }
    remove_label_triangles(&mut region, m, width, &labels);
    Ok(region)
}

/// Alias shape for the quarter-region count of `H_{2m,n}(K)`: `(n-1, n-3, ...)`
/// down to 1 or 2.
pub fn hexagon_alias_shape(n: u32) -> StrictPartition {
    StrictPartition::new((1..n).rev().step_by(2).collect()).expect("odd steps from n - 1 are strict")
}

/// Alias shape for the punctured hexagon: `(2n-2, 2n-4, ..., 2x)`.
pub fn punctured_alias_shape(n: u32, x: u32) -> StrictPartition {
    StrictPartition::new((x..n).rev().map(|p| 2 * p).collect()).expect("even steps are strict")
}
