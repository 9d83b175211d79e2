use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lozenge::cell::Cell;
use crate::ring::Rational;

/// A finite set of unit triangles, optionally with free edges that tiles may
/// cross and with lozenge weights other than 1.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Region {
    cells: BTreeSet<Cell>,
    /// `(inside, outside)` pairs; the outside cell is never part of the region.
    free_edges: BTreeSet<(Cell, Cell)>,
    /// Keyed by the ordered cell pair `(min, max)`.
    weights: BTreeMap<(Cell, Cell), Rational>,
}

fn key(a: Cell, b: Cell) -> (Cell, Cell) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

impl Region {
    pub fn new(cells: impl IntoIterator<Item = Cell>) -> Region {
        Region { cells: cells.into_iter().collect(), ..Region::default() }
    }

    pub fn cells(&self) -> &BTreeSet<Cell> {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.cells.contains(&c)
    }

    /// Removes a cell together with any free edge or weight that mentions it.
    pub fn remove(&mut self, c: Cell) -> bool {
        self.free_edges.retain(|&(a, _)| a != c);
        self.weights.retain(|&(a, b), _| a != c && b != c);
        self.cells.remove(&c)
    }

    pub fn free_edges(&self) -> impl Iterator<Item = (Cell, Cell)> + '_ {
        self.free_edges.iter().copied()
    }

    pub fn has_free_edges(&self) -> bool {
        !self.free_edges.is_empty()
    }

    pub fn is_free_edge(&self, inside: Cell, outside: Cell) -> bool {
        self.free_edges.contains(&(inside, outside))
    }

    /// Marks the edge between an interior cell and an adjacent exterior cell as free.
    pub fn add_free_edge(&mut self, inside: Cell, outside: Cell) -> Result<()> {
        if !self.contains(inside) || self.contains(outside) || !inside.is_adjacent(outside) {
            return Err(Error::Region(format!("{inside:?}|{outside:?} is not a boundary edge")));
        }
        self.free_edges.insert((inside, outside));
        Ok(())
    }

    /// Weight of the lozenge `{a, b}`; either both cells are in the region or
    /// `(a, b)` is a free edge.
    pub fn set_weight(&mut self, a: Cell, b: Cell, w: Rational) -> Result<()> {
        let inside = self.contains(a) && self.contains(b);
        let across = self.is_free_edge(a, b) || self.is_free_edge(b, a);
        if !a.is_adjacent(b) || !(inside || across) {
            return Err(Error::Region(format!("{a:?}+{b:?} is not a lozenge of the region")));
        }
        if w.is_zero() || w.is_negative() {
            return Err(Error::Region(format!("lozenge weight {w} is not positive")));
        }
        if w.is_one() {
            self.weights.remove(&key(a, b));
        } else {
            self.weights.insert(key(a, b), w);
        }
        Ok(())
    }

    pub fn weight(&self, a: Cell, b: Cell) -> Rational {
        self.weights.get(&key(a, b)).cloned().unwrap_or_else(Rational::one)
    }

    /// Non-unit weights.
    pub fn weights(&self) -> impl Iterator<Item = ((Cell, Cell), &Rational)> {
        self.weights.iter().map(|(&k, w)| (k, w))
    }

    /// `(min x, max x, min y, max y)` over scaled centroids.
    pub fn bounds6(&self) -> Option<(i64, i64, i64, i64)> {
        let mut it = self.cells.iter().map(|c| c.centroid6());
        let (x0, y0) = it.next()?;
        Some(it.fold((x0, x0, y0, y0), |(a, b, c, d), (x, y)| (a.min(x), b.max(x), c.min(y), d.max(y))))
    }

    /// Image of the region under a cell map; every cell, free edge and weight is carried along.
    pub fn map(&self, f: impl Fn(Cell) -> Option<Cell>) -> Result<Region> {
        let img = |c: Cell| f(c).ok_or_else(|| Error::Region(format!("{c:?} has no image")));
        let mut out = Region::new(self.cells.iter().map(|&c| img(c)).collect::<Result<Vec<_>>>()?);
        for &(a, b) in &self.free_edges {
            out.free_edges.insert((img(a)?, img(b)?));
        }
        for (&(a, b), w) in &self.weights {
            out.weights.insert(key(img(a)?, img(b)?), w.clone());
        }
        Ok(out)
    }

    /// Disjoint union; free edges whose outer cell lands in the other part are dropped.
    pub fn union(&self, other: &Region) -> Result<Region> {
        if let Some(c) = self.cells.intersection(&other.cells).next() {
            return Err(Error::Region(format!("regions overlap at {c:?}")));
        }
        let mut out = self.clone();
        out.cells.extend(other.cells.iter().copied());
        out.free_edges.extend(other.free_edges.iter().copied());
        out.free_edges.retain(|&(_, b)| !out.cells.contains(&b));
        out.weights.extend(other.weights.iter().map(|(&k, w)| (k, w.clone())));
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "cells": self.cells.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
            "free_edges": self.free_edges.iter().map(|(a, b)| json!([a.to_json(), b.to_json()])).collect::<Vec<_>>(),
            "weights": self.weights.iter().map(|((a, b), w)| json!({
                "cells": [a.to_json(), b.to_json()],
                "w": w.to_string(),
            })).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(value: &Value) -> Result<Region> {
        let list = |field: &str| -> Result<Vec<Value>> {
            match value.get(field) {
                None => Ok(Vec::new()),
                Some(Value::Array(a)) => Ok(a.clone()),
                Some(_) => Err(Error::Json(format!("field {field:?} must be an array"))),
            }
        };
        if value.get("cells").is_none() {
            return Err(Error::Json("region needs a \"cells\" array".into()));
        }
        let cells = list("cells")?.iter().map(Cell::from_json).collect::<Result<Vec<_>>>()?;
        let mut region = Region::new(cells);
        let pair = |v: &Value, field: &str| -> Result<(Cell, Cell)> {
            match v.as_array().map(Vec::as_slice) {
                Some([a, b]) => Ok((Cell::from_json(a)?, Cell::from_json(b)?)),
                _ => Err(Error::Json(format!("{field} entry must be a pair of cells, got {v}"))),
            }
        };
        for (n, e) in list("free_edges")?.iter().enumerate() {
            let (a, b) = pair(e, &format!("free_edges[{n}]"))?;
            region.add_free_edge(a, b)?;
        }
        for (n, w) in list("weights")?.iter().enumerate() {
            let field = format!("weights[{n}]");
            let (a, b) = pair(w.get("cells").unwrap_or(&Value::Null), &field)?;
            let weight = match w.get("w") {
                Some(Value::String(s)) => s.parse()?,
                Some(Value::Number(x)) => {
                    Rational::from(x.as_i64().ok_or_else(|| Error::Json(format!("{field}.w must be an integer")))?)
                }
                _ => return Err(Error::Json(format!("{field} needs a \"w\" field"))),
            };
            region.set_weight(a, b, weight)?;
        }
        Ok(region)
    }
}
