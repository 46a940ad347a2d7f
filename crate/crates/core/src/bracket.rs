//! The constant-term engine.
//!
//! `⟨F⟩_α` is the coefficient of `∏ u_i^{α_i}` in `F · Δ(u) · ∏_{i<j}(1 + t u_j + u_i u_j)`.
//! Every target exponent satisfies `α_i ≤ 2i`, so all series are truncated to
//! that box before multiplying; nothing of degree beyond it can contribute.

use std::sync::Arc;

use num_bigint::BigInt;
use rayon::prelude::*;
use thiserror::Error;

use crate::combinat::{Basis, Diagram, GeneralSequence};
use crate::linalg::Matrix;
use crate::polyring::{loop_weight, vandermonde, BoxPoly, BoxShape, Coeff, MultiPoly};
use crate::symfun::{schur, schur_coefficient, tilde_schur};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BracketError {
    #[error("sequence of length {got} used with a size-{expected} bracket")]
    SizeMismatch { expected: usize, got: usize },
    #[error("polynomial truncated at {caps:?}, below the bracket caps {needed:?}")]
    CapViolation { caps: Vec<u32>, needed: Vec<u32> },
}

/// Shared data for every bracket of a given size and `t`.
pub struct BracketContext<R: Coeff> {
    n: usize,
    t: R,
    shape: Arc<BoxShape>,
    kernel: BoxPoly<R>,
    basis: Basis,
}

impl<R: Coeff> BracketContext<R> {
    pub fn new(n: usize, t: R) -> Self {
        assert!(n >= 1, "brackets need n >= 1");
        let shape = BoxShape::staircase(n);
        let delta = vandermonde::<R>(n);
        let kernel = BoxPoly::one(shape.clone())
            .mul_sparse(&delta)
            .mul_sparse(&loop_weight(n, &t));
        BracketContext {
            n,
            t,
            shape,
            kernel,
            basis: Basis::new(n),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> &R {
        &self.t
    }

    pub fn shape(&self) -> &Arc<BoxShape> {
        &self.shape
    }

    pub fn kernel(&self) -> &BoxPoly<R> {
        &self.kernel
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    /// Converts a sparse polynomial to the truncated dense form used here.
    pub fn dense(&self, f: &MultiPoly<R>) -> Result<BoxPoly<R>, BracketError> {
        if f.nvars() != self.n {
            return Err(BracketError::SizeMismatch {
                expected: self.n,
                got: f.nvars(),
            });
        }
        if let Some(caps) = f.caps() {
            if caps.iter().zip(self.shape.caps()).any(|(a, b)| a < b) {
                return Err(BracketError::CapViolation {
                    caps: caps.to_vec(),
                    needed: self.shape.caps().to_vec(),
                });
            }
        }
        Ok(BoxPoly::from_multipoly(self.shape.clone(), f))
    }

    /// `⟨F⟩_α` for a dense `F`; zero as soon as some `α_i < 0`.
    pub fn bracket_dense(&self, f: &BoxPoly<R>, alpha: &[i64]) -> R {
        assert_eq!(alpha.len(), self.n);
        if alpha.iter().any(|&a| a < 0) {
            return R::zero();
        }
        let a: Vec<u32> = alpha.iter().map(|&x| x as u32).collect();
        f.product_coefficient(&self.kernel, &a)
    }

    pub fn bracket(&self, f: &MultiPoly<R>, alpha: &GeneralSequence) -> Result<R, BracketError> {
        if alpha.n() != self.n {
            return Err(BracketError::SizeMismatch {
                expected: self.n,
                got: alpha.n(),
            });
        }
        let f = self.dense(f)?;
        Ok(self.bracket_dense(&f, alpha.seq()))
    }

    /// `∏_i (1 + z u_i)^k`, truncated.
    pub fn one_plus_zu(&self, z: &R, k: u32) -> BoxPoly<R> {
        let mut factor = MultiPoly::one(self.n);
        for i in 0..self.n {
            let lin = MultiPoly::one(self.n)
                .add(&MultiPoly::var(self.n, i).scale(z))
                .expect("same variable count");
            factor = factor.mul(&lin).expect("same variable count");
        }
        let mut acc = BoxPoly::one(self.shape.clone());
        for _ in 0..k {
            acc = acc.mul_sparse(&factor);
        }
        acc
    }

    pub fn one_plus_u(&self, k: u32) -> BoxPoly<R> {
        self.one_plus_zu(&R::one(), k)
    }

    pub fn schur(&self, tau: &Diagram) -> BoxPoly<R> {
        BoxPoly::from_multipoly(self.shape.clone(), &schur::<R>(tau, self.n))
    }

    pub fn tilde_schur(&self, sigma: &Diagram) -> BoxPoly<R> {
        tilde_schur(sigma, &self.t, &self.shape)
    }

    fn check_diagram(&self, d: &Diagram) {
        assert_eq!(d.n(), self.n, "diagram {d} does not belong to A_{}", self.n);
    }

    /// `Ψ_α = ⟨1⟩_α`.
    pub fn psi(&self, alpha: &Diagram) -> R {
        self.check_diagram(alpha);
        self.kernel.get(alpha.seq()).clone()
    }

    pub fn psi_vector(&self) -> Vec<R> {
        self.basis.iter().map(|a| self.psi(a)).collect()
    }

    /// `⟨∏ (1 + t u_i)^m⟩_α`, which equals `Ψ` at the embedded diagram `(α)_m` in size `n + m`.
    pub fn psi_shifted(&self, alpha: &Diagram, m: u32) -> R {
        self.check_diagram(alpha);
        let w = self.one_plus_zu(&self.t, m);
        w.product_coefficient(&self.kernel, alpha.seq())
    }

    pub fn psi_shifted_vector(&self, m: u32) -> Vec<R> {
        let w = self.one_plus_zu(&self.t, m);
        self.basis
            .iter()
            .map(|a| w.product_coefficient(&self.kernel, a.seq()))
            .collect()
    }

    /// `A_{σ,α,τ} = ⟨s̃_σ s_τ ∏(1+u_i)^{n-1}⟩_α`.
    pub fn compute_a(&self, sigma: &Diagram, alpha: &Diagram, tau: &Diagram) -> R {
        self.compute_a_shifted(sigma, alpha, tau, 0)
    }

    /// `⟨s̃_σ s_τ ∏(1+u_i)^{n-1+2m}⟩_α = A_{σ,(α)_m,τ}` computed in size `n + m`.
    pub fn compute_a_shifted(&self, sigma: &Diagram, alpha: &Diagram, tau: &Diagram, m: u32) -> R {
        for d in [sigma, alpha, tau] {
            self.check_diagram(d);
        }
        let g = self
            .one_plus_u(self.n as u32 - 1 + 2 * m)
            .mul(&self.schur(tau))
            .mul(&self.tilde_schur(sigma));
        g.product_coefficient(&self.kernel, alpha.seq())
    }

    /// `A^ext(∅)_{τ,α} = ⟨s_τ ∏(1+u_i)^{n-1}⟩_α` for an arbitrary sequence `α`.
    pub fn compute_a_ext(&self, tau: &Diagram, alpha: &GeneralSequence) -> R {
        self.check_diagram(tau);
        let f = self.one_plus_u(self.n as u32 - 1).mul(&self.schur(tau));
        self.bracket_dense(&f, alpha.seq())
    }

    /// The whole tensor `A_{σ,α,τ}`, or its `m`-shifted version.
    ///
    /// `s_τ ∏(1+u)^{n-1+2m} · kernel` is formed once per `τ`; each `σ` then
    /// only needs the coefficients at the diagrams `α`.
    pub fn a_tensor_shifted(&self, m: u32) -> ATensor<R> {
        let base = self
            .one_plus_u(self.n as u32 - 1 + 2 * m)
            .mul(&self.kernel);
        let g: Vec<BoxPoly<R>> = self
            .basis
            .diagrams()
            .par_iter()
            .map(|tau| base.mul_sparse(&schur::<R>(tau, self.n)))
            .collect();
        let rows: Vec<Vec<R>> = self
            .basis
            .diagrams()
            .par_iter()
            .map(|sigma| {
                let st = self.tilde_schur(sigma);
                let mut out = Vec::with_capacity(self.basis.len() * self.basis.len());
                for alpha in self.basis.iter() {
                    for gt in &g {
                        out.push(st.product_coefficient(gt, alpha.seq()));
                    }
                }
                out
            })
            .collect();
        ATensor {
            basis: self.basis.clone(),
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn a_tensor(&self) -> ATensor<R> {
        self.a_tensor_shifted(0)
    }
}

/// `A_{σ,α,τ}` for all `σ, α, τ ∈ A_n`, stored in basis order.
#[derive(Clone, Debug, PartialEq)]
pub struct ATensor<R: Coeff> {
    basis: Basis,
    data: Vec<R>,
}

impl<R: Coeff> ATensor<R> {
    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Entry at basis indices `(σ, α, τ)`.
    pub fn at(&self, s: usize, a: usize, t: usize) -> &R {
        let d = self.dim();
        &self.data[(s * d + a) * d + t]
    }

    pub fn get(&self, sigma: &Diagram, alpha: &Diagram, tau: &Diagram) -> &R {
        let ix = |x: &Diagram| self.basis.index_of(x).expect("diagram in basis");
        self.at(ix(sigma), ix(alpha), ix(tau))
    }

    /// `A(σ)_{τα} = A_{σ,α,τ}`: rows `τ`, columns `α`.
    pub fn a_matrix(&self, s: usize) -> Matrix<R> {
        let d = self.dim();
        Matrix::from_fn(d, d, |t, a| self.at(s, a, t).clone())
    }

    /// `Ā(α)_{στ} = A_{σ,α,τ}`: rows `σ`, columns `τ`.
    pub fn abar_matrix(&self, a: usize) -> Matrix<R> {
        let d = self.dim();
        Matrix::from_fn(d, d, |s, t| self.at(s, a, t).clone())
    }

    /// The row vector `(A_{σ,α,τ})_α`.
    pub fn row(&self, s: usize, t: usize) -> Vec<R> {
        (0..self.dim()).map(|a| self.at(s, a, t).clone()).collect()
    }

    pub fn map<S: Coeff>(&self, f: impl Fn(&R) -> S) -> ATensor<S> {
        ATensor {
            basis: self.basis.clone(),
            data: self.data.iter().map(f).collect(),
        }
    }
}

/// `A_{σ,1_n,τ}` through the Schur scalar product
/// `( s̃_σ s_τ ∏(1+u_i)^{n-1} ∏_{i≤j}(1-u_i u_j)^{-1} | ∏_{i<j}(1+u_i+u_j) )`
/// at `t = 1`.
pub fn compute_a_largest(sigma: &Diagram, tau: &Diagram) -> BigInt {
    let n = sigma.n();
    assert_eq!(n, tau.n());
    // The ket only has Schur components λ with λ_1 ≤ n-1, i.e. exponents up to 2n-2.
    let top = 2 * (n as u32).saturating_sub(1);
    let shape = BoxShape::new(vec![top; n]);
    let one = BigInt::from(1);
    let mut lin = MultiPoly::<BigInt>::one(n);
    for i in 0..n {
        lin = lin
            .mul(&MultiPoly::one(n).add(&MultiPoly::var(n, i)).unwrap())
            .unwrap();
    }
    let mut f = tilde_schur(sigma, &one, &shape).mul_sparse(&schur::<BigInt>(tau, n));
    for _ in 0..n.saturating_sub(1) {
        f = f.mul_sparse(&lin);
    }
    for i in 0..n {
        for j in i..n {
            f.mul_geometric(i, j);
        }
    }
    let mut ket = MultiPoly::<BigInt>::one(n);
    for j in 0..n {
        for i in 0..j {
            let factor = MultiPoly::one(n)
                .add(&MultiPoly::var(n, i))
                .unwrap()
                .add(&MultiPoly::var(n, j))
                .unwrap();
            ket = ket.mul(&factor).unwrap();
        }
    }
    let ket = BoxPoly::from_multipoly(shape.clone(), &ket);
    let delta = vandermonde::<BigInt>(n);
    let mut acc = BigInt::from(0);
    for beta in increasing_sequences(n, top) {
        let g = schur_coefficient(&ket, &delta, &beta);
        if g.is_zero() {
            continue;
        }
        let fb = schur_coefficient(&f, &delta, &beta);
        acc += fb * g;
    }
    acc
}

/// All strictly increasing sequences of length `n` with entries in `0..=top`.
fn increasing_sequences(n: usize, top: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, top: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let lo = cur.last().map_or(0, |&x| x + 1);
        for v in lo..=top {
            cur.push(v);
            rec(n, top, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, top, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{one_plus_u_power, TPoly};

    fn d(seq: &[u32]) -> Diagram {
        Diagram::new(seq.to_vec()).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn ctx(n: usize) -> BracketContext<BigInt> {
        BracketContext::new(n, BigInt::from(1))
    }

    #[test]
    fn bracket_examples() {
        let c = ctx(3);
        let one = MultiPoly::one(3);
        let g = |s: &[i64]| GeneralSequence::new(s.to_vec()).unwrap();
        assert_eq!(c.bracket(&one, &g(&[0, 1, 2])).unwrap(), BigInt::from(1));
        assert_eq!(c.bracket(&one, &g(&[0, 2, 4])).unwrap(), BigInt::from(2));
        assert_eq!(c.bracket(&one, &g(&[-1, 2, 4])).unwrap(), BigInt::from(0));
        let too_small = MultiPoly::<BigInt>::one(3).with_caps(vec![0, 1, 1]);
        assert!(c.bracket(&too_small, &g(&[0, 1, 2])).is_err());
        assert!(c.bracket(&MultiPoly::one(2), &g(&[0, 1, 2])).is_err());
    }

    #[test]
    fn kernel_matches_sparse_recomputation() {
        for n in 1..=4 {
            let c = BracketContext::new(n, TPoly::t());
            let sparse = vandermonde::<TPoly>(n)
                .mul(&loop_weight(n, &TPoly::t()))
                .unwrap()
                .with_caps(c.shape().caps().to_vec());
            assert_eq!(c.kernel().to_multipoly(), sparse);
        }
    }

    #[test]
    fn psi_examples() {
        assert_eq!(ctx(3).psi_vector(), ints(&[1, 2, 2, 1, 2]));
        assert_eq!(ctx(1).psi_vector(), ints(&[1]));
        for n in 1..=6 {
            let c = BracketContext::new(n, TPoly::t());
            assert_eq!(c.psi(&Diagram::empty(n)), TPoly::from_i64(1));
        }
    }

    #[test]
    fn psi_shifted_examples() {
        let c2 = ctx(2);
        assert_eq!(c2.psi_shifted(&d(&[0, 2]), 0), c2.psi(&d(&[0, 2])));
        assert_eq!(c2.psi_shifted(&d(&[0, 2]), 1), BigInt::from(2));
        assert_eq!(ctx(3).psi_shifted(&d(&[0, 1, 2]), 1), BigInt::from(1));
    }

    #[test]
    fn psi_shifted_is_embedded_psi() {
        for t in [0i64, 1, 2, -1] {
            for n in 1..=3 {
                for m in 0..=2u32 {
                    let small = BracketContext::new(n, BigInt::from(t));
                    let big = BracketContext::new(n + m as usize, BigInt::from(t));
                    for a in small.basis().iter() {
                        assert_eq!(
                            small.psi_shifted(a, m),
                            big.psi(&a.embed(m as usize)),
                            "t={t} n={n} m={m} α={a}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn a_examples() {
        let c = ctx(3);
        let empty = d(&[0, 1, 2]);
        let box3 = d(&[0, 1, 3]);
        let stair = d(&[0, 2, 4]);
        assert_eq!(c.compute_a(&empty, &stair, &empty), BigInt::from(17));
        assert_eq!(c.compute_a(&box3, &stair, &box3), BigInt::from(7));
        for s in c.basis().iter() {
            for t in c.basis().iter() {
                let expect = (s.is_empty_diagram() && t.is_empty_diagram()) as i64;
                assert_eq!(c.compute_a(s, &empty, t), BigInt::from(expect));
            }
        }
    }

    #[test]
    fn tensor_matches_pointwise() {
        let c = ctx(3);
        let tensor = c.a_tensor();
        for s in c.basis().iter() {
            for a in c.basis().iter() {
                for t in c.basis().iter() {
                    assert_eq!(tensor.get(s, a, t), &c.compute_a(s, a, t));
                }
            }
        }
        assert_eq!(tensor.row(0, 0), ints(&[1, 4, 7, 6, 17]));
        assert_eq!(tensor.row(1, 1), ints(&[0, 0, 1, 1, 7]));
    }

    #[test]
    fn shifted_a_is_embedded_a() {
        for n in 1..=3 {
            for m in 0..=2u32 {
                let small = ctx(n);
                let big = ctx(n + m as usize);
                let ts = small.a_tensor_shifted(m);
                for s in small.basis().iter() {
                    for a in small.basis().iter() {
                        for t in small.basis().iter() {
                            let e = |x: &Diagram| x.embed(m as usize);
                            assert_eq!(
                                ts.get(s, a, t),
                                &big.compute_a(&e(s), &e(a), &e(t)),
                                "n={n} m={m}"
                            );
                        }
                    }
                }
            }
        }
        let c2 = ctx(2);
        assert_eq!(
            c2.compute_a_shifted(&d(&[0, 1]), &d(&[0, 2]), &d(&[0, 1]), 1),
            BigInt::from(4)
        );
    }

    #[test]
    fn a_ext_examples() {
        let c = ctx(2);
        let empty = d(&[0, 1]);
        for a in c.basis().iter() {
            assert_eq!(c.compute_a_ext(&empty, &a.as_general()), c.compute_a(&empty, a, &empty));
        }
        // Repeated and decreasing entries, against an untruncated expansion.
        for (n, seq) in [(2, vec![0i64, 0]), (3, vec![0, 2, 1]), (3, vec![0, 1, 1])] {
            let c = ctx(n);
            let full = one_plus_u_power::<BigInt>(n, n as u32 - 1)
                .mul(&vandermonde(n))
                .unwrap()
                .mul(&loop_weight(n, &BigInt::from(1)))
                .unwrap();
            let alpha = GeneralSequence::new(seq.clone()).unwrap();
            assert_eq!(
                c.compute_a_ext(&Diagram::empty(n), &alpha),
                full.coefficient_of(&seq).unwrap()
            );
        }
        let neg = GeneralSequence::new(vec![-1, 2]).unwrap();
        assert_eq!(c.compute_a_ext(&empty, &neg), BigInt::from(0));
    }

    #[test]
    fn largest_component_closed_form() {
        let empty = d(&[0, 1, 2]);
        let box3 = d(&[0, 1, 3]);
        let stair = d(&[0, 2, 4]);
        assert_eq!(compute_a_largest(&empty, &empty), BigInt::from(17));
        assert_eq!(compute_a_largest(&empty, &box3), BigInt::from(13));
        assert_eq!(compute_a_largest(&stair, &empty), BigInt::from(1));
        for n in 1..=3 {
            let c = ctx(n);
            let one = Diagram::staircase(n);
            for s in c.basis().iter() {
                for t in c.basis().iter() {
                    assert_eq!(compute_a_largest(s, t), c.compute_a(s, &one, t), "n={n} {s} {t}");
                }
            }
        }
    }
}
