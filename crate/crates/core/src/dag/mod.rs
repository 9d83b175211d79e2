//! Finite weighted DAGs, path generating functions and nonintersecting families.

pub mod lattice;
mod paths;

use std::collections::{HashMap, HashSet, VecDeque};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::parse_scalar;
use crate::ring::Ring;

pub use paths::{
    enumerate_nonintersecting, enumerate_nonintersecting_with, is_compatible, is_compatible_with, os_pfaffian, path_gf,
    path_gfs_from, path_matrix, reflection_det, signed_sum, signed_sum_with,
};

#[derive(Clone, Debug, PartialEq)]
pub struct Edge<R> {
    pub from: usize,
    pub to: usize,
    pub weight: R,
}

/// Finite acyclic directed graph with ring-valued edge weights.
///
/// Vertices are addressed by string ids; internally by their index in
/// insertion order. Multi-edges are allowed.
#[derive(Clone, Debug)]
pub struct WeightedDag<R> {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<Edge<R>>,
    out: Vec<Vec<usize>>,
    topo: Vec<usize>,
}

impl<R: Ring> WeightedDag<R> {
    /// Fails on duplicate ids, edges to unknown vertices or a directed cycle.
    pub fn new<S: Into<String>>(
        vertices: impl IntoIterator<Item = S>,
        edges: Vec<(String, String, R)>,
    ) -> Result<Self> {
        let ids: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(ids.len());
        for (i, id) in ids.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(id.clone()));
            }
        }
        let lookup = |id: &str| index.get(id).copied().ok_or_else(|| Error::UnknownVertex(id.to_string()));
        let edges = edges
            .into_iter()
            .map(|(a, b, w)| Ok(Edge { from: lookup(&a)?, to: lookup(&b)?, weight: w }))
            .collect::<Result<Vec<_>>>()?;
        WeightedDag::from_parts(ids, index, edges)
    }

    fn from_parts(ids: Vec<String>, index: HashMap<String, usize>, edges: Vec<Edge<R>>) -> Result<Self> {
        let n = ids.len();
        let mut out = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        for (k, e) in edges.iter().enumerate() {
            out[e.from].push(k);
            indeg[e.to] += 1;
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut topo = Vec::with_capacity(n);
        while let Some(v) = queue.pop_front() {
            topo.push(v);
            for &k in &out[v] {
                let w = edges[k].to;
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        if topo.len() < n {
            let stuck = (0..n).find(|&v| indeg[v] > 0).unwrap();
            return Err(Error::Cycle(ids[stuck].clone()));
        }
        Ok(WeightedDag { ids, index, edges, out, topo })
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, v: usize) -> &str {
        &self.ids[v]
    }

    pub fn vertex(&self, id: &str) -> Result<usize> {
        self.index.get(id).copied().ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn edges(&self) -> &[Edge<R>] {
        &self.edges
    }

    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = &Edge<R>> {
        self.out[v].iter().map(move |&k| &self.edges[k])
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].len()
    }

    pub(crate) fn topological_order(&self) -> &[usize] {
        &self.topo
    }

    /// Edge list as `(from id, to id, weight)` triples.
    pub fn edge_triples(&self) -> Vec<(String, String, R)> {
        self.edges.iter().map(|e| (self.ids[e.from].clone(), self.ids[e.to].clone(), e.weight.clone())).collect()
    }

    pub fn to_json(&self, spec: Option<&EndpointSpec>) -> Value {
        let edges: Vec<Value> = self
            .edges
            .iter()
            .map(|e| json!({"from": self.ids[e.from], "to": self.ids[e.to], "w": e.weight.to_string()}))
            .collect();
        let mut obj = json!({"vertices": self.ids, "edges": edges});
        if let Some(spec) = spec {
            obj["starts"] = json!(spec.starts);
            obj["ends"] = json!(spec.ends);
        }
        obj
    }

    /// Reads the graph JSON form; `starts`/`ends` are optional and
    /// numeric ids are converted to strings.
    pub fn from_json(value: &Value) -> Result<(Self, Option<EndpointSpec>)> {
        let field = |name: &str| value.get(name);
        let id_list = |v: &Value| -> Result<Vec<String>> {
            v.as_array()
                .ok_or_else(|| Error::Json("expected an array of vertex ids".into()))?
                .iter()
                .map(json_id)
                .collect()
        };
        let vertices = id_list(field("vertices").ok_or_else(|| Error::Json("missing \"vertices\"".into()))?)?;
        let edges = field("edges")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Json("missing \"edges\" array".into()))?
            .iter()
            .map(|e| {
                let get = |k: &str| e.get(k).ok_or_else(|| Error::Json(format!("edge missing {k:?}")));
                let w = match e.get("w") {
                    Some(w) => parse_scalar(w)?,
                    None => R::one(),
                };
                Ok((json_id(get("from")?)?, json_id(get("to")?)?, w))
            })
            .collect::<Result<Vec<_>>>()?;
        let dag = WeightedDag::new(vertices, edges)?;
        let spec = match (field("starts"), field("ends")) {
            (Some(s), Some(e)) => Some(EndpointSpec::new(id_list(s)?, id_list(e)?)?),
            (None, None) => None,
            _ => return Err(Error::Json("\"starts\" and \"ends\" must be given together".into())),
        };
        Ok((dag, spec))
    }
}

fn json_id(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(Error::Json(format!("vertex id must be a string or number, found {other}"))),
    }
}

/// Ordered start tuple `u` (length m) and end tuple `v` (length n >= m).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndpointSpec {
    pub starts: Vec<String>,
    pub ends: Vec<String>,
}

impl EndpointSpec {
    pub fn new<S: Into<String>>(
        starts: impl IntoIterator<Item = S>,
        ends: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        let starts: Vec<String> = starts.into_iter().map(Into::into).collect();
        let ends: Vec<String> = ends.into_iter().map(Into::into).collect();
        if starts.len() > ends.len() {
            return Err(Error::Endpoints(format!("{} starts but only {} ends", starts.len(), ends.len())));
        }
        for (name, tuple) in [("starts", &starts), ("ends", &ends)] {
            let mut seen = HashSet::new();
            if let Some(dup) = tuple.iter().find(|x| !seen.insert(*x)) {
                return Err(Error::Endpoints(format!("{dup:?} repeated in {name}")));
            }
        }
        Ok(EndpointSpec { starts, ends })
    }

    pub fn m(&self) -> usize {
        self.starts.len()
    }

    pub fn n(&self) -> usize {
        self.ends.len()
    }

    pub(crate) fn resolve<R: Ring>(&self, g: &WeightedDag<R>) -> Result<(Vec<usize>, Vec<usize>)> {
        let starts = self.starts.iter().map(|s| g.vertex(s)).collect::<Result<_>>()?;
        let ends = self.ends.iter().map(|s| g.vertex(s)).collect::<Result<_>>()?;
        Ok((starts, ends))
    }
}
