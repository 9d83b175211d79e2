//! Square-lattice graphs and seeded random endpoint layouts on them.

use rand::seq::index::sample;
use rand::Rng;

use crate::dag::{EndpointSpec, WeightedDag};
use crate::error::{Error, Result};
use crate::ring::{QtPoly, Rational, Ring};

pub fn vertex_name(x: i64, y: i64) -> String {
    format!("{x},{y}")
}

/// `width x height` grid of points `(x, y)` with unit steps right and up.
pub fn grid<R: Ring>(width: i64, height: i64, weight: impl Fn((i64, i64), (i64, i64)) -> R) -> Result<WeightedDag<R>> {
    let mut ids = Vec::new();
    let mut edges = Vec::new();
    for x in 0..width {
        for y in 0..height {
            ids.push(vertex_name(x, y));
            if x + 1 < width {
                edges.push((vertex_name(x, y), vertex_name(x + 1, y), weight((x, y), (x + 1, y))));
            }
            if y + 1 < height {
                edges.push((vertex_name(x, y), vertex_name(x, y + 1), weight((x, y), (x, y + 1))));
            }
        }
    }
    WeightedDag::new(ids, edges)
}

/// Points `0 <= x <= max_x`, `0 <= y <= max_y` with steps up and left; an up
/// step on the line `x = a` has weight `q^a t`, a left step weight 1.
pub fn qt_lattice(max_x: i64, max_y: i64) -> Result<WeightedDag<QtPoly>> {
    let mut ids = Vec::new();
    let mut edges = Vec::new();
    for x in 0..=max_x {
        for y in 0..=max_y {
            ids.push(vertex_name(x, y));
            if y < max_y {
                edges.push((vertex_name(x, y), vertex_name(x, y + 1), QtPoly::try_qt(x, 1)?));
            }
            if x > 0 {
                edges.push((vertex_name(x, y), vertex_name(x - 1, y), QtPoly::one()));
            }
        }
    }
    WeightedDag::new(ids, edges)
}

/// A seeded grid with starts on the left/bottom sides and ends on the top/right sides.
#[derive(Clone, Debug)]
pub struct GridInstance {
    pub dag: WeightedDag<Rational>,
    pub spec: EndpointSpec,
    /// Starts listed against the boundary order, which usually breaks compatibility.
    pub reversed: bool,
}

/// Shape parameters for [`random_boundary_instance`].
#[derive(Clone, Copy, Debug)]
pub struct GridLayout {
    pub width: i64,
    pub height: i64,
    pub m: usize,
    pub n: usize,
    /// List the starts in reverse boundary order.
    pub reversed: bool,
    /// Delete the out-edges of every end vertex.
    pub sinks: bool,
}

/// Starts are drawn from the left side (top to bottom) then the bottom side;
/// ends from the top side (left to right) then the right side. With
/// `reversed == false` the two tuples follow the boundary the same way round,
/// so every crossing-indexed pair of paths must meet. Edge weights are drawn
/// from {1, 2, 3}; vertex names are translated by a random offset.
pub fn random_boundary_instance(rng: &mut impl Rng, layout: GridLayout) -> Result<GridInstance> {
    let GridLayout { width: w, height: h, m, n, reversed, sinks } = layout;
    if w < 2 || h < 2 {
        return Err(Error::Dimension("grid needs at least 2x2 points".into()));
    }
    let source_arc: Vec<(i64, i64)> = (0..h - 1).rev().map(|y| (0, y)).chain((1..w - 1).map(|x| (x, 0))).collect();
    let sink_arc: Vec<(i64, i64)> = (0..w).map(|x| (x, h - 1)).chain((0..h - 1).rev().map(|y| (w - 1, y))).collect();
    if m > source_arc.len() || n > sink_arc.len() || m > n {
        return Err(Error::Dimension(format!("cannot place {m} starts and {n} ends on a {w}x{h} grid")));
    }
    let pick = |rng: &mut _, arc: &[(i64, i64)], k: usize| {
        let mut idx = sample(rng, arc.len(), k).into_vec();
        idx.sort_unstable();
        idx.into_iter().map(|i| arc[i]).collect::<Vec<_>>()
    };
    let mut starts = pick(rng, &source_arc, m);
    let ends = pick(rng, &sink_arc, n);
    if reversed {
        starts.reverse();
    }
    let (dx, dy) = (rng.random_range(-5..=5), rng.random_range(-5..=5));
    let name = |(x, y): (i64, i64)| vertex_name(x + dx, y + dy);
    let mut ids = Vec::new();
    let mut edges = Vec::new();
    for x in 0..w {
        for y in 0..h {
            ids.push(name((x, y)));
            if sinks && ends.contains(&(x, y)) {
                continue;
            }
            for next in [(x + 1, y), (x, y + 1)] {
                if next.0 < w && next.1 < h {
                    edges.push((name((x, y)), name(next), Rational::from(rng.random_range(1..=3))));
                }
            }
        }
    }
    Ok(GridInstance {
        dag: WeightedDag::new(ids, edges)?,
        spec: EndpointSpec::new(starts.into_iter().map(name), ends.into_iter().map(name))?,
        reversed,
    })
}
