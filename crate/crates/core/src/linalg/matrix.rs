use std::fmt;
use std::ops::Index;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::ring::Ring;

/// Dense row-major matrix over an exact ring.
#[derive(Clone, PartialEq)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn new(rows: usize, cols: usize, data: Vec<R>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape { rows, cols, len: data.len() });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds from a list of rows; the empty list is the 0x0 matrix.
    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::Dimension(format!("ragged rows: expected {cols} entries, found {}", bad.len())));
        }
        let n = rows.len();
        Matrix::new(n, cols, rows.into_iter().flatten().collect())
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| R::from_i64(x)).collect()).collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| R::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { R::one() } else { R::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: R) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[R] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Matrix<R>) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(R::zero(), |acc, l| {
                let a = self.get(i, l);
                let b = other.get(l, j);
                if a.is_zero() || b.is_zero() {
                    acc
                } else {
                    acc + a.clone() * b.clone()
                }
            })
        }))
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Matrix::from_fn(self.rows, cols.len(), |i, j| self.get(i, cols[j]).clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), self.cols, |i, j| self.get(rows[i], j).clone())
    }

    /// `[[self, top_right], [bottom_left, bottom_right]]`.
    pub fn block(&self, top_right: &Self, bottom_left: &Self, bottom_right: &Self) -> Result<Self> {
        if top_right.rows != self.rows
            || bottom_left.cols != self.cols
            || bottom_right.rows != bottom_left.rows
            || bottom_right.cols != top_right.cols
        {
            return Err(Error::Dimension("block sizes do not line up".into()));
        }
        let (m, n) = (self.rows, self.cols);
        Ok(Matrix::from_fn(m + bottom_left.rows, n + top_right.cols, |i, j| match (i < m, j < n) {
            (true, true) => self.get(i, j).clone(),
            (true, false) => top_right.get(i, j - n).clone(),
            (false, true) => bottom_left.get(i - m, j).clone(),
            (false, false) => bottom_right.get(i - m, j - n).clone(),
        }))
    }

    /// First `(i, j)` with `a[i][j] != -a[j][i]`, scanning the upper triangle and diagonal.
    pub fn skew_violation(&self) -> Option<(usize, usize)> {
        if !self.is_square() {
            return Some((0, 0));
        }
        for i in 0..self.rows {
            for j in i..self.cols {
                if *self.get(i, j) != -self.get(j, i).clone() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            (0..self.rows)
                .map(|i| Value::Array(self.row(i).iter().map(|x| Value::String(x.to_string())).collect()))
                .collect(),
        )
    }

    /// Reads an array of arrays of scalar strings; bare JSON integers are accepted too.
    pub fn from_json(value: &Value) -> Result<Self> {
        let rows = value.as_array().ok_or_else(|| Error::Json("matrix must be an array of rows".into()))?;
        let parsed = rows
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| Error::Json("matrix row must be an array".into()))?
                    .iter()
                    .map(parse_scalar)
                    .collect::<Result<Vec<R>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(parsed)
    }
}

pub(crate) fn parse_scalar<R: Ring>(v: &Value) -> Result<R> {
    match v {
        Value::String(s) => s.parse(),
        Value::Number(n) if n.is_i64() => Ok(R::from_i64(n.as_i64().unwrap())),
        other => Err(Error::Json(format!("expected a scalar string, found {other}"))),
    }
}

impl<R> Index<(usize, usize)> for Matrix<R> {
    type Output = R;
    fn index(&self, (i, j): (usize, usize)) -> &R {
        &self.data[i * self.cols + j]
    }
}

impl<R: fmt::Display> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
