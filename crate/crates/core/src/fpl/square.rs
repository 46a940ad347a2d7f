use std::collections::HashMap;

use super::{enumerate, path_trace, FplError, Lattice};
use crate::combinat::LinkPattern;

/// The `n × n` grid with alternating external stubs.
#[derive(Debug, Clone)]
pub struct SquareLattice {
    pub n: usize,
    pub lattice: Lattice,
    /// The `4n` stubs counterclockwise, starting with the west stub of the
    /// top-left vertex. Even positions are occupied.
    pub boundary: Vec<usize>,
}

impl SquareLattice {
    /// Occupied stubs in boundary order; their positions label the link pattern.
    pub fn terminals(&self) -> impl Iterator<Item = usize> + '_ {
        self.boundary.iter().step_by(2).copied()
    }
}

pub fn square_lattice(n: usize) -> SquareLattice {
    let v = |r: usize, c: usize| r * n + c;
    let mut lattice = Lattice::new(n * n);
    for r in 0..n {
        for c in 0..n {
            if c + 1 < n {
                lattice.add_edge(v(r, c), v(r, c + 1));
            }
            if r + 1 < n {
                lattice.add_edge(v(r, c), v(r + 1, c));
            }
        }
    }
    // Rows grow downwards, so west (top to bottom), south (left to right),
    // east (bottom to top), north (right to left) runs counterclockwise.
    let sides = (0..n)
        .map(|r| v(r, 0))
        .chain((0..n).map(|c| v(n - 1, c)))
        .chain((0..n).rev().map(|r| v(r, n - 1)))
        .chain((0..n).rev().map(|c| v(0, c)));
    let boundary = sides
        .enumerate()
        .map(|(i, vert)| lattice.add_stub(vert, Some(i % 2 == 0)))
        .collect();
    SquareLattice { n, lattice, boundary }
}

/// Number of configurations with each connectivity of the `2n` occupied stubs.
pub fn enumerate_fpl_square(n: usize) -> Result<HashMap<LinkPattern, u64>, FplError> {
    let sq = square_lattice(n);
    let label: HashMap<usize, usize> = sq.terminals().enumerate().map(|(i, s)| (s, i)).collect();
    enumerate(&sq.lattice, |cfg| {
        let paths = path_trace(cfg)?;
        let mut partner = vec![0; 2 * n];
        for (s, &i) in &label {
            partner[i] = label[&paths[s]];
        }
        LinkPattern::new(partner).map(Some).map_err(|_| FplError::Crossing)
    })
}
