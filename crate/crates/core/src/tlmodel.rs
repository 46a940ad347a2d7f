//! The Temperley–Lieb(1) loop model on link patterns.
//!
//! Operators are stored with the image pattern on the row and the source on
//! the column, so every column of `e_i` holds a single 1 and `H ψ′ = 2n ψ′`
//! is an ordinary matrix–vector product.

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::combinat::{Basis, Diagram, LinkPattern};
use crate::linalg::{primitive_integer_vector, Matrix};
use crate::polyring::Coeff;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TlError {
    #[error("operator index {i} outside 1..={max}")]
    BadIndex { i: usize, max: usize },
    #[error("eigenspace for 2n has dimension {0}, expected 1")]
    DegenerateEigenspace(usize),
}

/// `e_i` for `i` in `1..=2n`, joining the points `i` and `i+1` (with `2n+1 ≡ 1`)
/// and joining their former partners. Points are relabeled `i ↦ i-1`.
pub fn apply_e(i: usize, pi: &LinkPattern) -> Result<LinkPattern, TlError> {
    let len = pi.points();
    if i == 0 || i > len {
        return Err(TlError::BadIndex { i, max: len });
    }
    let p = i - 1;
    let q = i % len;
    let a = pi.partner(p);
    if a == q {
        return Ok(pi.clone());
    }
    let b = pi.partner(q);
    let mut partner = pi.partners().to_vec();
    partner[p] = q;
    partner[q] = p;
    partner[a] = b;
    partner[b] = a;
    Ok(LinkPattern::new(partner).expect("e_i preserves planarity"))
}

/// The matrix of `e_i` in the basis order.
pub fn e_matrix<R: Coeff>(i: usize, basis: &Basis) -> Result<Matrix<R>, TlError> {
    let d = basis.len();
    let mut m = Matrix::<R>::zeros(d, d);
    for (col, alpha) in basis.iter().enumerate() {
        let image = apply_e(i, &alpha.to_link_pattern())?;
        let row = basis
            .index_of(&Diagram::from_link_pattern(&image))
            .expect("image is a pattern of the same size");
        m.set(row, col, R::one());
    }
    Ok(m)
}

/// `H = Σ_{i=1}^{2n} e_i`.
pub fn hamiltonian<R: Coeff>(n: usize) -> Matrix<R> {
    let basis = Basis::new(n);
    let mut h = Matrix::zeros(basis.len(), basis.len());
    for i in 1..=2 * n {
        h = h.add(&e_matrix(i, &basis).expect("index in range"));
    }
    h
}

/// The Perron–Frobenius vector of `H`, as coprime positive integers.
pub fn ground_state(n: usize) -> Result<Vec<BigInt>, TlError> {
    let h = hamiltonian::<BigRational>(n);
    let shift = Matrix::identity(h.rows()).scale(&BigRational::from_i64(2 * n as i64));
    let ns = h.sub(&shift).nullspace();
    if ns.len() != 1 {
        return Err(TlError::DegenerateEigenspace(ns.len()));
    }
    Ok(primitive_integer_vector(&ns[0]))
}
