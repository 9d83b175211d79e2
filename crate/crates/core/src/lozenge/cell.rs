use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Which way a unit triangle points. `Left < Right` inside a column.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orient {
    Left,
    Right,
}

/// A unit triangle of the lattice whose vertical lines sit at integer `x`.
///
/// Lattice point `(i, j)` lies at height `j + i/2`. A right-pointing cell
/// `R(x, y)` has corners `(x, y)`, `(x, y+1)`, `(x+1, y)`; a left-pointing cell
/// `L(x, y)` has corners `(x, y)`, `(x+1, y-1)`, `(x+1, y)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub x: i64,
    pub y: i64,
    pub orient: Orient,
}

/// The three kinds of lozenge, by the direction of the edge the two cells share.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LozengeKind {
    /// Shared vertical edge.
    Horizontal,
    /// Shared edge rising to the right.
    Rising,
    /// Shared edge falling to the right.
    Falling,
}

impl Cell {
    pub const fn left(x: i64, y: i64) -> Cell {
        Cell { x, y, orient: Orient::Left }
    }

    pub const fn right(x: i64, y: i64) -> Cell {
        Cell { x, y, orient: Orient::Right }
    }

    /// The three edge-sharing cells.
    pub fn neighbors(self) -> [Cell; 3] {
        let Cell { x, y, .. } = self;
        match self.orient {
            Orient::Right => [Cell::left(x, y), Cell::left(x, y + 1), Cell::left(x - 1, y + 1)],
            Orient::Left => [Cell::right(x, y), Cell::right(x, y - 1), Cell::right(x + 1, y - 1)],
        }
    }

    pub fn is_adjacent(self, other: Cell) -> bool {
        self.neighbors().contains(&other)
    }

    /// Kind of the lozenge formed with an adjacent cell.
    pub fn lozenge_kind(self, other: Cell) -> Option<LozengeKind> {
        let (l, r) = match (self.orient, other.orient) {
            (Orient::Left, Orient::Right) => (self, other),
            (Orient::Right, Orient::Left) => (other, self),
            _ => return None,
        };
        if (r.x, r.y) == (l.x, l.y) {
            Some(LozengeKind::Rising)
        } else if (r.x, r.y) == (l.x, l.y - 1) {
            Some(LozengeKind::Falling)
        } else if (r.x, r.y) == (l.x + 1, l.y - 1) {
            Some(LozengeKind::Horizontal)
        } else {
            None
        }
    }

    /// Corners as lattice points `(i, j)`.
    pub fn corners(self) -> [(i64, i64); 3] {
        let Cell { x, y, .. } = self;
        match self.orient {
            Orient::Right => [(x, y), (x, y + 1), (x + 1, y)],
            Orient::Left => [(x, y), (x + 1, y - 1), (x + 1, y)],
        }
    }

    /// Centroid in scaled coordinates (six times column, six times height).
    pub fn centroid6(self) -> (i64, i64) {
        let Cell { x, y, .. } = self;
        match self.orient {
            Orient::Right => (6 * x + 2, 6 * y + 3 * x + 3),
            Orient::Left => (6 * x + 4, 6 * y + 3 * x),
        }
    }

    /// Inverse of [`Cell::centroid6`]; `None` if the point is not a centroid.
    pub fn from_centroid6(cx: i64, cy: i64) -> Option<Cell> {
        match cx.rem_euclid(6) {
            2 => {
                let x = (cx - 2).div_euclid(6);
                let rest = cy - 3 * x - 3;
                (rest.rem_euclid(6) == 0).then(|| Cell::right(x, rest.div_euclid(6)))
            }
            4 => {
                let x = (cx - 4).div_euclid(6);
                let rest = cy - 3 * x;
                (rest.rem_euclid(6) == 0).then(|| Cell::left(x, rest.div_euclid(6)))
            }
            _ => None,
        }
    }

    pub fn to_json(self) -> Value {
        let tag = match self.orient {
            Orient::Left => "L",
            Orient::Right => "R",
        };
        json!([self.x, self.y, tag])
    }

    pub fn from_json(value: &Value) -> Result<Cell> {
        let bad = || Error::Json(format!("a cell is [x, y, \"L\"|\"R\"], got {value}"));
        let arr = value.as_array().filter(|a| a.len() == 3).ok_or_else(bad)?;
        let x = arr[0].as_i64().ok_or_else(bad)?;
        let y = arr[1].as_i64().ok_or_else(bad)?;
        match arr[2].as_str() {
            Some("L") => Ok(Cell::left(x, y)),
            Some("R") => Ok(Cell::right(x, y)),
            _ => Err(bad()),
        }
    }
}

/// Lattice point `(i, j)` in scaled coordinates.
pub fn point6((i, j): (i64, i64)) -> (i64, i64) {
    (6 * i, 6 * j + 3 * i)
}

impl fmt::Debug for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.orient {
            Orient::Left => 'L',
            Orient::Right => 'R',
        };
        write!(f, "{tag}({}, {})", self.x, self.y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn shared_corners(a: Cell, b: Cell) -> usize {
        a.corners().iter().filter(|p| b.corners().contains(p)).count()
    }

    fn arb_cell() -> impl Strategy<Value = Cell> {
        (-20i64..20, -20i64..20, any::<bool>())
            .prop_map(|(x, y, l)| if l { Cell::left(x, y) } else { Cell::right(x, y) })
    }

    #[test]
    fn neighbours_share_an_edge() {
        for c in [Cell::left(0, 0), Cell::right(2, -1)] {
            for n in c.neighbors() {
                assert_eq!(shared_corners(c, n), 2, "{c:?} {n:?}");
                assert!(n.neighbors().contains(&c));
                assert!(c.lozenge_kind(n).is_some());
            }
            let kinds: std::collections::BTreeSet<_> = c.neighbors().iter().map(|&n| c.lozenge_kind(n)).collect();
            assert_eq!(kinds.len(), 3);
        }
        assert_eq!(Cell::left(0, 0).lozenge_kind(Cell::right(1, -1)), Some(LozengeKind::Horizontal));
        assert_eq!(Cell::left(0, 0).lozenge_kind(Cell::left(0, 1)), None);
    }

    #[test]
    fn json_round_trip() {
        let c = Cell::right(-3, 4);
        assert_eq!(c.to_json().to_string(), "[-3,4,\"R\"]");
        assert_eq!(Cell::from_json(&c.to_json()).unwrap(), c);
        assert!(Cell::from_json(&json!([1, 2, "X"])).is_err());
        assert!(Cell::from_json(&json!([1, 2])).is_err());
    }

    proptest! {
        #[test]
        fn centroid_round_trip(c in arb_cell()) {
            let (cx, cy) = c.centroid6();
            prop_assert_eq!(Cell::from_centroid6(cx, cy), Some(c));
            let corners = c.corners().map(point6);
            let sum = corners.iter().fold((0, 0), |acc, p| (acc.0 + p.0, acc.1 + p.1));
            prop_assert_eq!((sum.0, sum.1), (3 * cx, 3 * cy));
        }

        #[test]
        fn adjacency_is_exactly_edge_sharing(a in arb_cell(), dx in -2i64..=2, dy in -2i64..=2, l in any::<bool>()) {
            let b = Cell { x: a.x + dx, y: a.y + dy, orient: if l { Orient::Left } else { Orient::Right } };
            prop_assert_eq!(a.is_adjacent(b), shared_corners(a, b) == 2 && a != b);
        }
    }
}
