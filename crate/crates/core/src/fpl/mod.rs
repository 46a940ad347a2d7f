//! Brute-force enumeration of fully packed loop configurations.
//!
//! A [`Lattice`] is a finite set of vertices, internal edges joining two
//! vertices, and external stubs hanging off a single vertex. A configuration
//! marks every edge occupied or empty so that each vertex sees exactly two
//! occupied edges. Enumeration is a depth-first search over the edges in a
//! fixed order, pruning as soon as some vertex has too many occupied edges or
//! too few undecided ones left to reach two.

mod square;
mod triangle;

use std::collections::HashMap;
use std::hash::Hash;

use rayon::prelude::*;
use thiserror::Error;

pub use square::{enumerate_fpl_square, square_lattice, SquareLattice};
pub use triangle::{enumerate_fpl_triangle, triangle_lattice, TriangleBoundary, TriangleLattice};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FplError {
    #[error("vertex {vertex} has {degree} occupied edges")]
    VertexDegree { vertex: usize, degree: usize },
    #[error("configuration has {got} edge states, lattice has {expected} edges")]
    StateLength { expected: usize, got: usize },
    #[error("boundary sequence {0:?} is not a Dyck path")]
    NotDyck(Vec<u32>),
    #[error("stubs do not pair into a noncrossing link pattern")]
    Crossing,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeEnds {
    Internal(usize, usize),
    Stub(usize),
}

impl EdgeEnds {
    fn vertices(self) -> impl Iterator<Item = usize> {
        let (a, b) = match self {
            EdgeEnds::Internal(a, b) => (a, Some(b)),
            EdgeEnds::Stub(a) => (a, None),
        };
        std::iter::once(a).chain(b)
    }
}

#[derive(Debug, Clone)]
pub struct Edge {
    pub ends: EdgeEnds,
    /// Forced state, if the boundary condition prescribes one.
    pub fixed: Option<bool>,
}

#[derive(Debug, Clone, Default)]
pub struct Lattice {
    nverts: usize,
    edges: Vec<Edge>,
    incident: Vec<Vec<usize>>,
}

impl Lattice {
    pub fn new(nverts: usize) -> Self {
        Lattice {
            nverts,
            edges: Vec::new(),
            incident: vec![Vec::new(); nverts],
        }
    }

    pub fn add_edge(&mut self, a: usize, b: usize) -> usize {
        self.push(EdgeEnds::Internal(a, b), None)
    }

    pub fn add_stub(&mut self, v: usize, fixed: Option<bool>) -> usize {
        self.push(EdgeEnds::Stub(v), fixed)
    }

    fn push(&mut self, ends: EdgeEnds, fixed: Option<bool>) -> usize {
        let k = self.edges.len();
        for v in ends.vertices() {
            self.incident[v].push(k);
        }
        self.edges.push(Edge { ends, fixed });
        k
    }

    pub fn nverts(&self) -> usize {
        self.nverts
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    /// Edges in search order: by their smallest endpoint, ties by insertion.
    fn search_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.edges.len()).collect();
        order.sort_by_key(|&k| self.edges[k].ends.vertices().min());
        order
    }
}

/// An assignment of occupied/empty to every edge of a lattice.
#[derive(Debug, Clone)]
pub struct FplConfig<'a> {
    pub lattice: &'a Lattice,
    pub occupied: Vec<bool>,
}

impl<'a> FplConfig<'a> {
    pub fn new(lattice: &'a Lattice, occupied: Vec<bool>) -> Result<Self, FplError> {
        if occupied.len() != lattice.edges.len() {
            return Err(FplError::StateLength {
                expected: lattice.edges.len(),
                got: occupied.len(),
            });
        }
        let cfg = FplConfig { lattice, occupied };
        cfg.check_vertices()?;
        Ok(cfg)
    }

    fn check_vertices(&self) -> Result<(), FplError> {
        for v in 0..self.lattice.nverts {
            let degree = self.lattice.incident[v]
                .iter()
                .filter(|&&k| self.occupied[k])
                .count();
            if degree != 2 {
                return Err(FplError::VertexDegree { vertex: v, degree });
            }
        }
        Ok(())
    }

    pub fn is_occupied(&self, edge: usize) -> bool {
        self.occupied[edge]
    }
}

/// Follows every open path and returns, for each occupied stub, the stub at the
/// other end of its path. Closed loops are never visited.
pub fn path_trace(cfg: &FplConfig<'_>) -> Result<HashMap<usize, usize>, FplError> {
    let lat = cfg.lattice;
    let mut partner = HashMap::new();
    for (s, edge) in lat.edges.iter().enumerate() {
        let EdgeEnds::Stub(start) = edge.ends else { continue };
        if !cfg.occupied[s] || partner.contains_key(&s) {
            continue;
        }
        let (mut v, mut prev) = (start, s);
        let end = loop {
            let mut next = lat.incident[v]
                .iter()
                .copied()
                .filter(|&k| k != prev && cfg.occupied[k]);
            let k = match (next.next(), next.next()) {
                (Some(k), None) => k,
                _ => {
                    let degree = lat.incident[v].iter().filter(|&&k| cfg.occupied[k]).count();
                    return Err(FplError::VertexDegree { vertex: v, degree });
                }
            };
            match lat.edges[k].ends {
                EdgeEnds::Stub(_) => break k,
                EdgeEnds::Internal(a, b) => {
                    v = if a == v { b } else { a };
                    prev = k;
                }
            }
        };
        partner.insert(s, end);
        partner.insert(end, s);
    }
    Ok(partner)
}

struct Search<'a> {
    lattice: &'a Lattice,
    order: Vec<usize>,
    pos: usize,
    state: Vec<bool>,
    degree: Vec<u8>,
    remaining: Vec<u8>,
}

impl<'a> Search<'a> {
    fn new(lattice: &'a Lattice) -> Self {
        Search {
            lattice,
            order: lattice.search_order(),
            pos: 0,
            state: vec![false; lattice.edges.len()],
            degree: vec![0; lattice.nverts],
            remaining: lattice.incident.iter().map(|e| e.len() as u8).collect(),
        }
    }

    fn clone_state(&self) -> Self {
        Search {
            lattice: self.lattice,
            order: self.order.clone(),
            pos: self.pos,
            state: self.state.clone(),
            degree: self.degree.clone(),
            remaining: self.remaining.clone(),
        }
    }

    fn options(&self) -> &'static [bool] {
        match self.lattice.edges[self.order[self.pos]].fixed {
            Some(false) => &[false],
            Some(true) => &[true],
            None => &[false, true],
        }
    }

    fn can_set(&self, k: usize, occ: bool) -> bool {
        let add = occ as u8;
        self.lattice.edges[k].ends.vertices().all(|v| {
            let d = self.degree[v] + add;
            d <= 2 && d + self.remaining[v] > 2
        })
    }

    fn set(&mut self, k: usize, occ: bool) {
        self.state[k] = occ;
        for v in self.lattice.edges[k].ends.vertices() {
            self.degree[v] += occ as u8;
            self.remaining[v] -= 1;
        }
        self.pos += 1;
    }

    fn unset(&mut self, k: usize) {
        self.pos -= 1;
        let occ = self.state[k] as u8;
        for v in self.lattice.edges[k].ends.vertices() {
            self.degree[v] -= occ;
            self.remaining[v] += 1;
        }
        self.state[k] = false;
    }

    fn done(&self) -> bool {
        self.pos == self.order.len()
    }

    fn run(&mut self, leaf: &mut dyn FnMut(&[bool]) -> Result<(), FplError>) -> Result<(), FplError> {
        if self.done() {
            return leaf(&self.state);
        }
        let k = self.order[self.pos];
        for &occ in self.options() {
            if self.can_set(k, occ) {
                self.set(k, occ);
                self.run(leaf)?;
                self.unset(k);
            }
        }
        Ok(())
    }

    /// Expands the search tree breadth-first until there are at least
    /// `target` partial states or nothing left to branch on.
    fn frontier(self, target: usize) -> Vec<Search<'a>> {
        let mut layer = vec![self];
        while layer.len() < target && layer.iter().any(|s| !s.done()) {
            let mut next = Vec::with_capacity(layer.len() * 2);
            for s in layer {
                if s.done() {
                    next.push(s);
                    continue;
                }
                let k = s.order[s.pos];
                for &occ in s.options() {
                    if s.can_set(k, occ) {
                        let mut child = s.clone_state();
                        child.set(k, occ);
                        next.push(child);
                    }
                }
            }
            layer = next;
        }
        layer
    }
}

/// Visits every valid configuration, sorting each into a bucket by `classify`
/// (which may also reject it by returning `None`). Branches run in parallel.
pub fn enumerate<K, F>(lattice: &Lattice, classify: F) -> Result<HashMap<K, u64>, FplError>
where
    K: Eq + Hash + Send,
    F: Fn(&FplConfig<'_>) -> Result<Option<K>, FplError> + Sync,
{
    let roots = Search::new(lattice).frontier(256);
    roots
        .into_par_iter()
        .map(|mut search| {
            let mut counts = HashMap::new();
            search.run(&mut |state| {
                let cfg = FplConfig {
                    lattice,
                    occupied: state.to_vec(),
                };
                debug_assert!(cfg.check_vertices().is_ok());
                if let Some(key) = classify(&cfg)? {
                    *counts.entry(key).or_insert(0u64) += 1;
                }
                Ok(())
            })?;
            Ok(counts)
        })
        .try_reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            Ok(a)
        })
}

/// Number of valid configurations, without classification.
pub fn count_configurations(lattice: &Lattice) -> u64 {
    enumerate(lattice, |_| Ok(Some(())))
        .expect("classifier is infallible")
        .get(&())
        .copied()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_vertex() {
        let mut lat = Lattice::new(1);
        let a = lat.add_stub(0, None);
        let b = lat.add_stub(0, None);
        let c = lat.add_stub(0, Some(false));
        assert_eq!(count_configurations(&lat), 1);
        let cfg = FplConfig::new(&lat, vec![true, true, false]).unwrap();
        let p = path_trace(&cfg).unwrap();
        assert_eq!(p[&a], b);
        assert!(!p.contains_key(&c));
        assert!(FplConfig::new(&lat, vec![true, true, true]).is_err());
    }

    #[test]
    fn two_by_two_loop_and_paths() {
        // 0 1
        // 2 3, with one stub on each corner
        let mut lat = Lattice::new(4);
        let h0 = lat.add_edge(0, 1);
        let h1 = lat.add_edge(2, 3);
        let v0 = lat.add_edge(0, 2);
        let v1 = lat.add_edge(1, 3);
        let s: Vec<usize> = (0..4).map(|v| lat.add_stub(v, None)).collect();
        // one closed loop, no stubs
        let mut occ = vec![false; 8];
        for k in [h0, h1, v0, v1] {
            occ[k] = true;
        }
        let cfg = FplConfig::new(&lat, occ).unwrap();
        assert!(path_trace(&cfg).unwrap().is_empty());
        // two horizontal paths
        let mut occ = vec![false; 8];
        for k in [h0, h1, s[0], s[1], s[2], s[3]] {
            occ[k] = true;
        }
        let cfg = FplConfig::new(&lat, occ).unwrap();
        let p = path_trace(&cfg).unwrap();
        assert_eq!(p[&s[0]], s[1]);
        assert_eq!(p[&s[2]], s[3]);
        let brute = (0u32..256)
            .filter(|mask| {
                let occ: Vec<bool> = (0..8).map(|k| mask >> k & 1 == 1).collect();
                FplConfig::new(&lat, occ).is_ok()
            })
            .count() as u64;
        assert_eq!(count_configurations(&lat), brute);
    }
}
