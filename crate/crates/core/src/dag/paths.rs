use std::collections::VecDeque;

use itertools::Itertools;

use crate::budget::Budget;
use crate::dag::{EndpointSpec, WeightedDag};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::linalg::{pfaffian, sigma_squared_det, Matrix};
use crate::ring::Ring;

/// Generating functions of all paths from `source` to every vertex.
pub fn path_gfs_from<R: Ring>(g: &WeightedDag<R>, source: usize) -> Vec<R> {
    let mut gf: Vec<Option<R>> = vec![None; g.vertex_count()];
    gf[source] = Some(R::one());
    for &v in g.topological_order() {
        let Some(here) = gf[v].clone() else { continue };
        for e in g.out_edges(v) {
            let step = here.clone() * e.weight.clone();
            let slot = &mut gf[e.to];
            *slot = Some(match slot.take() {
                Some(prev) => prev + step,
                None => step,
            });
        }
    }
    gf.into_iter().map(|x| x.unwrap_or_else(R::zero)).collect()
}

/// Weighted count of directed paths from `a` to `b`; the empty path gives 1 when `a == b`.
pub fn path_gf<R: Ring>(g: &WeightedDag<R>, a: &str, b: &str) -> Result<R> {
    let (a, b) = (g.vertex(a)?, g.vertex(b)?);
    Ok(path_gfs_from(g, a).swap_remove(b))
}

/// The `m x n` matrix of single-pair path generating functions.
pub fn path_matrix<R: Ring>(g: &WeightedDag<R>, spec: &EndpointSpec) -> Result<Matrix<R>> {
    let (starts, ends) = spec.resolve(g)?;
    let rows = starts
        .iter()
        .map(|&u| {
            let gf = path_gfs_from(g, u);
            ends.iter().map(|&v| gf[v].clone()).collect()
        })
        .collect();
    Matrix::from_rows(rows).map(|m| if m.rows() == 0 { Matrix::zeros(0, ends.len()) } else { m })
}

struct Families<'a, R> {
    g: &'a WeightedDag<R>,
    starts: Vec<usize>,
    end_slot: Vec<Option<usize>>,
    n: usize,
    used: Vec<bool>,
    budget: &'a Budget,
}

impl<R: Ring> Families<'_, R> {
    /// Total weight of ways to route paths `k..m`, the next one ending at an
    /// end index of at least `min_j`.
    fn family(&mut self, k: usize, min_j: usize, acc: R) -> Result<R> {
        if k == self.starts.len() {
            return Ok(acc);
        }
        if self.n - min_j < self.starts.len() - k {
            return Ok(R::zero());
        }
        let s = self.starts[k];
        if self.used[s] {
            return Ok(R::zero());
        }
        self.used[s] = true;
        let total = self.extend(k, s, min_j, acc);
        self.used[s] = false;
        total
    }

    fn extend(&mut self, k: usize, at: usize, min_j: usize, acc: R) -> Result<R> {
        self.budget.tick()?;
        let mut total = R::zero();
        if let Some(j) = self.end_slot[at].filter(|&j| j >= min_j) {
            total = total + self.family(k + 1, j + 1, acc.clone())?;
        }
        let g = self.g;
        for e in g.out_edges(at) {
            if self.used[e.to] {
                continue;
            }
            self.used[e.to] = true;
            let sub = self.extend(k, e.to, min_j, acc.clone() * e.weight.clone());
            self.used[e.to] = false;
            total = total + sub?;
        }
        Ok(total)
    }
}

fn check_permutation(sigma: &[usize], m: usize) -> Result<()> {
    let mut seen = vec![false; m];
    if sigma.len() != m || sigma.iter().any(|&s| s >= m || std::mem::replace(&mut seen[s], true)) {
        return Err(Error::Endpoints(format!("{sigma:?} is not a permutation of 0..{m}")));
    }
    Ok(())
}

/// Weight of all vertex-disjoint families `(P_1, ..., P_m)` with `P_k` running
/// from `u_{sigma(k)}` to `v_{j_k}` for some `j_1 < ... < j_m`.
///
/// `sigma` is 0-based. Uses the budget from the environment.
pub fn enumerate_nonintersecting<R: Ring>(g: &WeightedDag<R>, spec: &EndpointSpec, sigma: &[usize]) -> Result<R> {
    enumerate_nonintersecting_with(g, spec, sigma, &Budget::from_env("nonintersecting path states"))
}

pub fn enumerate_nonintersecting_with<R: Ring>(
    g: &WeightedDag<R>,
    spec: &EndpointSpec,
    sigma: &[usize],
    budget: &Budget,
) -> Result<R> {
    let (starts, ends) = spec.resolve(g)?;
    check_permutation(sigma, starts.len())?;
    let mut end_slot = vec![None; g.vertex_count()];
    for (j, &v) in ends.iter().enumerate() {
        end_slot[v] = Some(j);
    }
    let mut search = Families {
        g,
        starts: sigma.iter().map(|&s| starts[s]).collect(),
        end_slot,
        n: ends.len(),
        used: vec![false; g.vertex_count()],
        budget,
    };
    search.family(0, 0, R::one())
}

fn permutation_sign(p: &[usize]) -> bool {
    let inversions =
        (0..p.len()).flat_map(|i| (i + 1..p.len()).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
    inversions % 2 == 0
}

/// Signed sum over permutations of nonintersecting-family weights.
pub fn signed_sum<R: Ring>(g: &WeightedDag<R>, spec: &EndpointSpec, exec: Execution) -> Result<R> {
    signed_sum_with(g, spec, exec, &Budget::from_env("nonintersecting path states"))
}

pub fn signed_sum_with<R: Ring>(
    g: &WeightedDag<R>,
    spec: &EndpointSpec,
    exec: Execution,
    budget: &Budget,
) -> Result<R> {
    let perms: Vec<Vec<usize>> = (0..spec.m()).permutations(spec.m()).collect();
    let terms = exec.try_map(perms, |p| {
        let w = enumerate_nonintersecting_with(g, spec, &p, budget)?;
        Ok::<_, Error>(if permutation_sign(&p) { w } else { -w })
    })?;
    Ok(terms.into_iter().fold(R::zero(), |acc, x| acc + x))
}

/// Whether every path `u_i -> v_l` meets every path `u_j -> v_k` for `i < j`, `k < l`.
pub fn is_compatible<R: Ring>(g: &WeightedDag<R>, spec: &EndpointSpec) -> Result<bool> {
    is_compatible_with(g, spec, &Budget::from_env("compatibility path states"))
}

pub fn is_compatible_with<R: Ring>(g: &WeightedDag<R>, spec: &EndpointSpec, budget: &Budget) -> Result<bool> {
    let (starts, ends) = spec.resolve(g)?;
    for (i, j) in (0..starts.len()).tuple_combinations() {
        for (k, l) in (0..ends.len()).tuple_combinations() {
            if has_disjoint_pair(g, starts[i], ends[l], starts[j], ends[k], budget)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Enumerates paths `a -> b` and asks whether `c -> d` is reachable avoiding one of them.
fn has_disjoint_pair<R: Ring>(
    g: &WeightedDag<R>,
    a: usize,
    b: usize,
    c: usize,
    d: usize,
    budget: &Budget,
) -> Result<bool> {
    fn reach_avoiding<R: Ring>(g: &WeightedDag<R>, c: usize, d: usize, blocked: &[bool]) -> bool {
        if blocked[c] {
            return false;
        }
        let mut seen = vec![false; g.vertex_count()];
        let mut queue = VecDeque::from([c]);
        seen[c] = true;
        while let Some(x) = queue.pop_front() {
            if x == d {
                return true;
            }
            for e in g.out_edges(x) {
                if !blocked[e.to] && !seen[e.to] {
                    seen[e.to] = true;
                    queue.push_back(e.to);
                }
            }
        }
        false
    }
    fn walk<R: Ring>(
        g: &WeightedDag<R>,
        at: usize,
        target: usize,
        (c, d): (usize, usize),
        on_path: &mut Vec<bool>,
        budget: &Budget,
    ) -> Result<bool> {
        budget.tick()?;
        if at == target && reach_avoiding(g, c, d, on_path) {
            return Ok(true);
        }
        for e in g.out_edges(at) {
            on_path[e.to] = true;
            let found = walk(g, e.to, target, (c, d), on_path, budget);
            on_path[e.to] = false;
            if found? {
                return Ok(true);
            }
        }
        Ok(false)
    }
    let mut on_path = vec![false; g.vertex_count()];
    on_path[a] = true;
    walk(g, a, b, (c, d), &mut on_path, budget)
}

/// `(det M U M^T, det M U^T M^T)` for the path matrix `M`.
pub fn reflection_det<R: Ring>(g: &WeightedDag<R>, spec: &EndpointSpec) -> Result<(R, R)> {
    sigma_squared_det(&path_matrix(g, spec)?)
}

/// Pfaffian of the skew matrix built from 2x2 path-matrix minors. For odd `m`
/// an isolated vertex is added and used as both the first start and first end.
pub fn os_pfaffian<R: Ring>(g: &WeightedDag<R>, spec: &EndpointSpec) -> Result<R> {
    let m = if spec.m().is_multiple_of(2) {
        path_matrix(g, spec)?
    } else {
        let mut phantom = String::from("phantom");
        while g.vertex(&phantom).is_ok() {
            phantom.push('\'');
        }
        let mut ids = g.ids().to_vec();
        ids.push(phantom.clone());
        let augmented = WeightedDag::new(ids, g.edge_triples())?;
        let aug_spec = EndpointSpec::new(
            std::iter::once(phantom.clone()).chain(spec.starts.iter().cloned()),
            std::iter::once(phantom).chain(spec.ends.iter().cloned()),
        )?;
        path_matrix(&augmented, &aug_spec)?
    };
    let size = m.rows();
    let q = Matrix::from_fn(size, size, |i, j| {
        let mut acc = R::zero();
        for (s, t) in (0..m.cols()).tuple_combinations() {
            let plus = m.get(i, s).clone() * m.get(j, t).clone();
            let minus = m.get(i, t).clone() * m.get(j, s).clone();
            acc = acc + plus - minus;
        }
        acc
    });
    pfaffian(&q)
}
