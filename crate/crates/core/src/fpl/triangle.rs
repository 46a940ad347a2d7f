use std::collections::HashMap;

use super::{enumerate, path_trace, FplError, Lattice};
use crate::combinat::{Diagram, LinkPattern};

/// Boundary data of a triangle configuration: the occupied side stubs on the
/// left (`sigma`) and right (`tau`), and the connectivity `pi` of the bottom.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TriangleBoundary {
    pub sigma: Diagram,
    pub pi: LinkPattern,
    pub tau: Diagram,
}

/// The triangle of size `n`.
///
/// Row `y = 0..2n` (bottom to top) holds the vertices `x = y..=4n-2-y`, so the
/// top row is a single vertex. Each row end carries one horizontal side stub.
/// Below row 0 hang `4n-1` stubs, occupied exactly at even `x`.
#[derive(Debug, Clone)]
pub struct TriangleLattice {
    pub n: usize,
    pub lattice: Lattice,
    /// Occupied bottom stubs, left to right.
    pub bottom: Vec<usize>,
    /// Left and right side stubs of each row, indexed by `y`.
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

pub fn triangle_lattice(n: usize) -> TriangleLattice {
    let rows = 2 * n;
    let width = 4 * n - 1;
    let mut start = Vec::with_capacity(rows);
    let mut total = 0;
    for y in 0..rows {
        start.push(total);
        total += width - 2 * y;
    }
    let inside = |y: usize, x: usize| y < rows && x >= y && x + y < width;
    let v = |y: usize, x: usize| start[y] + x - y;

    let mut lattice = Lattice::new(total);
    let (mut bottom, mut left, mut right) = (Vec::new(), Vec::new(), Vec::new());
    for x in 0..width {
        let s = lattice.add_stub(v(0, x), Some(x % 2 == 0));
        if x % 2 == 0 {
            bottom.push(s);
        }
    }
    for y in 0..rows {
        for x in y..width - y {
            if inside(y, x + 1) {
                lattice.add_edge(v(y, x), v(y, x + 1));
            }
            if inside(y + 1, x) {
                lattice.add_edge(v(y, x), v(y + 1, x));
            }
        }
        left.push(lattice.add_stub(v(y, y), None));
        right.push(lattice.add_stub(v(y, width - 1 - y), None));
    }
    TriangleLattice {
        n,
        lattice,
        bottom,
        left,
        right,
    }
}

/// Counts `a_{σ,π,τ}` of triangle configurations in which every occupied side
/// stub is joined to a side stub on the opposite side and the bottom stubs are
/// joined among themselves.
pub fn enumerate_fpl_triangle(n: usize) -> Result<HashMap<TriangleBoundary, u64>, FplError> {
    let tri = triangle_lattice(n);
    let rows = 2 * n;
    let bottom_label: HashMap<usize, usize> =
        tri.bottom.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let is_left: Vec<bool> = {
        let mut v = vec![false; tri.lattice.edges().len()];
        tri.left.iter().for_each(|&s| v[s] = true);
        v
    };
    let is_right: Vec<bool> = {
        let mut v = vec![false; tri.lattice.edges().len()];
        tri.right.iter().for_each(|&s| v[s] = true);
        v
    };
    enumerate(&tri.lattice, |cfg| {
        let paths = path_trace(cfg)?;
        let mut partner = vec![0; 2 * n];
        for (&s, &i) in &bottom_label {
            match bottom_label.get(&paths[&s]) {
                Some(&j) => partner[i] = j,
                None => return Ok(None),
            }
        }
        for (&s, &end) in &paths {
            if (is_left[s] && !is_right[end]) || (is_right[s] && !is_left[end]) {
                return Ok(None);
            }
        }
        let side = |stubs: &[usize]| -> Result<Diagram, FplError> {
            let seq: Vec<u32> = (0..rows)
                .filter(|&p| cfg.is_occupied(stubs[rows - 1 - p]))
                .map(|p| p as u32)
                .collect();
            Diagram::new(seq.clone()).map_err(|_| FplError::NotDyck(seq))
        };
        let sigma = side(&tri.left)?;
        let tau = side(&tri.right)?;
        if sigma.n() != n || tau.n() != n {
            return Err(FplError::NotDyck(sigma.seq().to_vec()));
        }
        let pi = LinkPattern::new(partner).map_err(|_| FplError::Crossing)?;
        Ok(Some(TriangleBoundary { sigma, pi, tau }))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::Basis;

    #[test]
    fn smallest_triangle() {
        let counts = enumerate_fpl_triangle(1).unwrap();
        assert_eq!(counts.len(), 1);
        let (k, v) = counts.iter().next().unwrap();
        assert_eq!(*v, 1);
        assert!(k.sigma.is_empty_diagram() && k.tau.is_empty_diagram());
    }

    #[test]
    fn empty_sides_at_three() {
        let counts = enumerate_fpl_triangle(3).unwrap();
        let e = Diagram::empty(3);
        let row: Vec<u64> = Basis::new(3)
            .iter()
            .map(|d| {
                let key = TriangleBoundary {
                    sigma: e.clone(),
                    pi: d.to_link_pattern(),
                    tau: e.clone(),
                };
                counts.get(&key).copied().unwrap_or(0)
            })
            .collect();
        assert_eq!(row, vec![1, 4, 6, 6, 17]);
    }
}
