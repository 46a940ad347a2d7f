//! Change-of-basis and multiplication operators on the space indexed by `A_n`.
//!
//! Matrices follow the convention `M[row][col] = M^{row}_{col}`, so vectors in
//! the sequence basis (`Ψ`) and in the link basis (`ψ`) are row vectors acted
//! on from the right: `Ψ = ψ P`, `⟨s_λ F⟩ = ⟨F⟩ C(λ)`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use thiserror::Error;

use crate::bracket::{ATensor, BracketContext};
use crate::combinat::{Basis, Diagram, GeneralSequence, LinkPattern};
use crate::linalg::Matrix;
use crate::polyring::{permutations_with_sign, BoxPoly, Coeff, FieldCoeff, MultiPoly};
use crate::symfun::{involution_matrix, schur_product_row};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OpError {
    #[error("A(∅) is singular at this value of t")]
    SingularAEmpty,
    #[error("P is not unit upper triangular")]
    NotUnitTriangular,
    #[error("sequence {0:?} violates α_i ≤ 2i")]
    OutsideStaircase(Vec<i64>),
}

/// `U_i` for `-d ≤ i ≤ d`, with `U_{-1} = 0`, `U_0 = 1`, `U_{i+1} = -t U_i - U_{i-1}`.
#[derive(Debug, Clone)]
pub struct ChebyshevTable<R: Coeff> {
    depth: i64,
    values: Vec<R>,
}

impl<R: Coeff> ChebyshevTable<R> {
    pub fn new(t: &R, depth: usize) -> Self {
        let d = depth.max(1) as i64;
        let mut values = vec![R::zero(); (2 * d + 1) as usize];
        let at = |i: i64| (i + d) as usize;
        values[at(0)] = R::one();
        // U_{-1} = 0 is already in place.
        for i in 1..=d {
            values[at(i)] = t.mul_ref(&values[at(i - 1)]).neg_ref().sub_ref(&values[at(i - 2)]);
        }
        for i in (-d..=-2).rev() {
            values[at(i)] = t.mul_ref(&values[at(i + 1)]).neg_ref().sub_ref(&values[at(i + 2)]);
        }
        ChebyshevTable { depth: d, values }
    }

    pub fn get(&self, i: i64) -> &R {
        assert!(i.abs() <= self.depth, "U_{i} outside the table");
        &self.values[(i + self.depth) as usize]
    }
}

/// `P^π_α = ∏_{i<j paired} U_{#{ℓ : i ≤ α_ℓ < j} - (j-i+1)/2}` for any integer sequence `α`.
pub fn p_entry<R: Coeff>(pi: &LinkPattern, alpha: &[i64], table: &ChebyshevTable<R>) -> R {
    let mut acc = R::one();
    for (i, j) in pi.pairs() {
        let (lo, hi) = (i as i64, j as i64);
        let count = alpha.iter().filter(|&&a| lo <= a && a < hi).count() as i64;
        let u = table.get(count - (hi - lo + 1) / 2);
        if u.is_zero() {
            return R::zero();
        }
        acc = acc.mul_ref(u);
    }
    acc
}

pub fn p_matrix<R: Coeff>(n: usize, t: &R) -> Matrix<R> {
    let basis = Basis::new(n);
    let table = ChebyshevTable::new(t, n + 1);
    let patterns: Vec<LinkPattern> = basis.iter().map(|d| d.to_link_pattern()).collect();
    let seqs: Vec<Vec<i64>> = basis.iter().map(seq_i64).collect();
    Matrix::from_fn(basis.len(), basis.len(), |r, c| p_entry(&patterns[r], &seqs[c], &table))
}

pub fn p_inverse<R: Coeff>(n: usize, t: &R) -> Result<Matrix<R>, OpError> {
    p_matrix(n, t).unit_upper_inverse().ok_or(OpError::NotUnitTriangular)
}

/// `C^ext_z{}^β_α = z^{Σ(α_i-β_i)}` when every `α_i - β_i ∈ {0, 1}`, else 0.
pub fn c_ext_z<R: Coeff>(beta: &[i64], alpha: &[i64], z: &R) -> R {
    assert_eq!(alpha.len(), beta.len());
    let mut k = 0u32;
    for (a, b) in alpha.iter().zip(beta) {
        match a - b {
            0 => {}
            1 => k += 1,
            _ => return R::zero(),
        }
    }
    z.pow(k)
}

/// The elementary symmetric polynomial `e_k(u_0, …, u_{n-1})`.
pub fn elementary<R: Coeff>(n: usize, k: usize) -> MultiPoly<R> {
    let terms = (0u64..1 << n)
        .filter(|mask| mask.count_ones() as usize == k)
        .map(|mask| ((0..n).map(|i| (mask >> i & 1) as u32).collect(), R::one()));
    MultiPoly::from_terms(n, terms)
}

/// `LR(λ)^μ_τ = c^μ_{λτ}` for `μ, τ ∈ A_n`.
pub fn lr_matrix<R: Coeff>(lambda: &Diagram) -> Matrix<R> {
    let basis = Basis::new(lambda.n());
    let mut m = Matrix::zeros(basis.len(), basis.len());
    for (col, tau) in basis.iter().enumerate() {
        for (mu, c) in schur_product_row(lambda, tau) {
            let row = basis.index_of(&mu).expect("product row stays in A_n");
            m.set(row, col, R::from_bigint(&c));
        }
    }
    m
}

/// The permutation matrix of the mirror image on link patterns.
pub fn mirror_matrix<R: Coeff>(n: usize) -> Matrix<R> {
    let basis = Basis::new(n);
    let mut m = Matrix::zeros(basis.len(), basis.len());
    for (c, d) in basis.iter().enumerate() {
        let r = basis
            .index_of_pattern(&d.to_link_pattern().mirror())
            .expect("mirror is a pattern of the same size");
        m.set(r, c, R::one());
    }
    m
}

fn seq_i64(d: &Diagram) -> Vec<i64> {
    d.seq().iter().map(|&a| a as i64).collect()
}

/// All operators of a fixed size `n` and parameter `t`.
///
/// `K` columns and the `A` tensor are built on first use.
pub struct Operators<R: FieldCoeff> {
    ctx: BracketContext<R>,
    a_empty: Matrix<R>,
    a_empty_inv: Matrix<R>,
    p: Matrix<R>,
    p_inv: Matrix<R>,
    phi: Matrix<R>,
    /// `s_τ ∏(1+u_i)^{n-1}` for every `τ`, the basis used to build `K`.
    ext_basis: Vec<BoxPoly<R>>,
    k_cache: Mutex<HashMap<Vec<i64>, Vec<R>>>,
    tensor: OnceLock<ATensor<R>>,
}

impl<R: FieldCoeff> Operators<R> {
    pub fn new(n: usize, t: R) -> Result<Self, OpError> {
        let ctx = BracketContext::new(n, t.clone());
        let w = ctx.one_plus_u(n as u32 - 1);
        let ext_basis: Vec<BoxPoly<R>> = ctx.basis().iter().map(|tau| w.mul(&ctx.schur(tau))).collect();
        let d = ctx.basis().len();
        let a_empty = Matrix::from_fn(d, d, |r, c| {
            ctx.bracket_dense(&ext_basis[r], &seq_i64(ctx.basis().get(c)))
        });
        let a_empty_inv = a_empty.inverse().ok_or(OpError::SingularAEmpty)?;
        let p = p_matrix(n, &t);
        let p_inv = p.unit_upper_inverse().ok_or(OpError::NotUnitTriangular)?;
        let phi = involution_matrix(n, &t);
        Ok(Operators {
            ctx,
            a_empty,
            a_empty_inv,
            p,
            p_inv,
            phi,
            ext_basis,
            k_cache: Mutex::new(HashMap::new()),
            tensor: OnceLock::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.ctx.n()
    }

    pub fn t(&self) -> &R {
        self.ctx.t()
    }

    pub fn basis(&self) -> &Basis {
        self.ctx.basis()
    }

    pub fn context(&self) -> &BracketContext<R> {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.basis().len()
    }

    pub fn a_tensor(&self) -> &ATensor<R> {
        self.tensor.get_or_init(|| self.ctx.a_tensor())
    }

    /// `A(∅)_{τα} = A_{∅,α,τ}`.
    pub fn a_empty(&self) -> &Matrix<R> {
        &self.a_empty
    }

    pub fn a_empty_inverse(&self) -> &Matrix<R> {
        &self.a_empty_inv
    }

    /// `A(λ)_{τα} = A_{λ,α,τ}`.
    pub fn a_matrix(&self, lambda: &Diagram) -> Matrix<R> {
        let s = self.basis().index_of(lambda).expect("λ in A_n");
        self.a_tensor().a_matrix(s)
    }

    pub fn p(&self) -> &Matrix<R> {
        &self.p
    }

    pub fn p_inv(&self) -> &Matrix<R> {
        &self.p_inv
    }

    pub fn phi(&self) -> &Matrix<R> {
        &self.phi
    }

    pub fn psi(&self) -> Vec<R> {
        self.ctx.psi_vector()
    }

    /// `ψ = Ψ P^{-1}`.
    pub fn psi_link(&self) -> Vec<R> {
        self.p_inv.left_apply(&self.psi())
    }

    /// Column `K_{·α}` for a sequence with `α_i ≤ 2i`.
    pub fn k_column(&self, alpha: &[i64]) -> Result<Vec<R>, OpError> {
        if alpha.len() != self.n() || alpha.iter().enumerate().any(|(i, &a)| a > 2 * i as i64) {
            return Err(OpError::OutsideStaircase(alpha.to_vec()));
        }
        let d = self.dim();
        if alpha.iter().any(|&a| a < 0) {
            return Ok(vec![R::zero(); d]);
        }
        if let Some(col) = self.k_cache.lock().expect("cache lock").get(alpha) {
            return Ok(col.clone());
        }
        let col = match GeneralSequence::new(alpha.to_vec()).ok().and_then(|g| g.as_diagram()) {
            Some(diag) => {
                let idx = self.basis().index_of(&diag).expect("diagram of size n");
                (0..d).map(|i| if i == idx { R::one() } else { R::zero() }).collect()
            }
            None => {
                let ext: Vec<R> = self.ext_basis.iter().map(|f| self.ctx.bracket_dense(f, alpha)).collect();
                self.a_empty_inv.apply(&ext)
            }
        };
        self.k_cache.lock().expect("cache lock").insert(alpha.to_vec(), col.clone());
        Ok(col)
    }

    /// `K` restricted to the given columns.
    pub fn k_matrix(&self, columns: &[GeneralSequence]) -> Result<Matrix<R>, OpError> {
        let cols = columns
            .iter()
            .map(|g| self.k_column(g.seq()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix::from_fn(self.dim(), cols.len(), |r, c| cols[c][r].clone()))
    }

    /// Matrix of multiplication by a symmetric `F`: `M^β_α = Σ_m F[m] K^β_{α-m}`.
    pub fn mult_matrix(&self, f: &BoxPoly<R>) -> Matrix<R> {
        let d = self.dim();
        let shape = self.ctx.shape().clone();
        let mut m = Matrix::zeros(d, d);
        for (col, alpha) in self.basis().iter().enumerate() {
            let a = seq_i64(alpha);
            let mut acc = vec![R::zero(); d];
            shape.for_each_below(alpha.seq(), |idx| {
                let c = &f.data()[idx];
                if c.is_zero() {
                    return;
                }
                let e = shape.exponents(idx);
                let beta: Vec<i64> = a.iter().zip(&e).map(|(x, y)| x - *y as i64).collect();
                let k = self.k_column(&beta).expect("differences stay in the staircase");
                for (slot, v) in acc.iter_mut().zip(&k) {
                    slot.fma_in(c, v);
                }
            });
            for (row, v) in acc.into_iter().enumerate() {
                m.set(row, col, v);
            }
        }
        m
    }

    pub fn mult_matrix_poly(&self, f: &MultiPoly<R>) -> Matrix<R> {
        self.mult_matrix(&BoxPoly::from_multipoly(self.ctx.shape().clone(), f))
    }

    /// `C(λ)`: multiplication by `s_λ`.
    pub fn c_matrix(&self, lambda: &Diagram) -> Matrix<R> {
        self.mult_matrix(&self.ctx.schur(lambda))
    }

    /// `C̃(λ)`: multiplication by `s̃_λ`.
    pub fn c_tilde_matrix(&self, lambda: &Diagram) -> Matrix<R> {
        self.mult_matrix(&self.ctx.tilde_schur(lambda))
    }

    /// `C(e_k)`, multiplication by an elementary symmetric polynomial.
    pub fn c_elementary(&self, k: usize) -> Matrix<R> {
        self.mult_matrix_poly(&elementary(self.n(), k))
    }

    /// `C_z`: multiplication by `∏(1 + z u_i)`.
    pub fn c_z(&self, z: &R) -> Matrix<R> {
        self.mult_matrix(&self.ctx.one_plus_zu(z, 1))
    }

    /// `C = C_t`, the operator of the recurrences.
    pub fn c(&self) -> Matrix<R> {
        self.c_z(self.t())
    }

    pub fn lr(&self, lambda: &Diagram) -> Matrix<R> {
        lr_matrix(lambda)
    }

    /// `L̃R(λ) = Φ LR(λ) Φ`.
    pub fn lr_tilde(&self, lambda: &Diagram) -> Matrix<R> {
        self.phi.mul(&self.lr(lambda)).mul(&self.phi)
    }

    /// `LR = Σ_i LR(e_i)`, with `e_i` the column diagrams available in `A_n`.
    pub fn lr_total(&self) -> Matrix<R> {
        let d = self.dim();
        let mut m = Matrix::zeros(d, d);
        for k in 0..=self.n() {
            if let Some(col) = column_diagram(self.n(), k) {
                m = m.add(&self.lr(&col));
            }
        }
        m
    }

    /// `R = A(∅)^{-1} Φ^T A(∅)`.
    pub fn r(&self) -> Matrix<R> {
        self.a_empty_inv.mul(&self.phi.transpose()).mul(&self.a_empty)
    }

    /// Conjugates a sequence-basis operator into the link basis: `P M P^{-1}`.
    pub fn to_link(&self, m: &Matrix<R>) -> Matrix<R> {
        self.p.mul(m).mul(&self.p_inv)
    }

    /// `c_z` through `P^ext C^ext_z P^{-1}`, using the product formula for
    /// `P^ext` on the non-decreasing sequences `α - ε`.
    pub fn c_z_link_via_pext(&self, z: &R) -> Matrix<R> {
        let n = self.n();
        let d = self.dim();
        let table = ChebyshevTable::new(self.t(), n + 1);
        let patterns: Vec<LinkPattern> = self.basis().iter().map(|b| b.to_link_pattern()).collect();
        // (P^ext C^ext_z)^ρ_α
        let pc = Matrix::from_fn(d, d, |r, c| {
            let alpha = seq_i64(self.basis().get(c));
            let mut acc = R::zero();
            for mask in 0u64..1 << n {
                let beta: Vec<i64> = (0..n).map(|i| alpha[i] - (mask >> i & 1) as i64).collect();
                if beta.iter().any(|&b| b < 0) {
                    continue;
                }
                let w = c_ext_z(&beta, &alpha, z);
                acc.fma_in(&w, &p_entry(&patterns[r], &beta, &table));
            }
            acc
        });
        pc.mul(&self.p_inv)
    }

    /// `Σ_ε P^π_{(0, 2-ε_1, …, 2(n-1)-ε_{n-1})}` for every `π`.
    pub fn largest_sum_rule(&self) -> Vec<R> {
        let n = self.n();
        let table = ChebyshevTable::new(self.t(), n + 1);
        self.basis()
            .iter()
            .map(|pi| {
                let pat = pi.to_link_pattern();
                let mut acc = R::zero();
                for mask in 0u64..1 << (n - 1) {
                    let seq: Vec<i64> = (0..n)
                        .map(|i| 2 * i as i64 - if i == 0 { 0 } else { (mask >> (i - 1) & 1) as i64 })
                        .collect();
                    acc.add_in(&p_entry(&pat, &seq, &table));
                }
                acc
            })
            .collect()
    }

    /// `s_λ = det(e_{λ'_i - i + j})`, evaluated in the commutative algebra of the `C(e_k)`.
    pub fn c_via_dual_jacobi_trudi(&self, lambda: &Diagram) -> Matrix<R> {
        let conj = lambda.transpose().partition();
        let ell = conj.len();
        let d = self.dim();
        if ell == 0 {
            return Matrix::identity(d);
        }
        let elementary: Vec<Matrix<R>> = (0..=self.n()).map(|k| self.c_elementary(k)).collect();
        let entry = |i: usize, j: usize| -> Option<&Matrix<R>> {
            let k = conj[i] as i64 - i as i64 + j as i64;
            (0..=self.n() as i64).contains(&k).then(|| &elementary[k as usize])
        };
        let mut total = Matrix::zeros(d, d);
        'perm: for (perm, sign) in permutations_with_sign(ell) {
            let mut prod = Matrix::identity(d);
            for (i, &j) in perm.iter().enumerate() {
                match entry(i, j) {
                    Some(m) => prod = prod.mul(m),
                    None => continue 'perm,
                }
            }
            total = if sign > 0 { total.add(&prod) } else { total.sub(&prod) };
        }
        total
    }

    /// `A(σ,τ) = Ψ C̃(σ) C(τ) C_1^{n-1}` as a row vector over `α`.
    pub fn a_from_psi(&self, sigma: &Diagram, tau: &Diagram) -> Vec<R> {
        let c1 = self.c_z(&R::one()).pow(self.n() as u32 - 1);
        let m = self.c_tilde_matrix(sigma).mul(&self.c_matrix(tau)).mul(&c1);
        m.left_apply(&self.psi())
    }

    /// Predicted `Ψ_{(α)_m}` for every `α`, from `Ψ C^m`.
    pub fn recura(&self, m: u32) -> Vec<R> {
        self.c().pow(m).left_apply(&self.psi())
    }

    /// Predicted `ψ_{(π)_m}` for every `π`, from `ψ c^m`, given `ψ` at size `n`.
    pub fn recurrence_step(&self, psi_n: &[R], m: u32) -> Vec<(Diagram, R)> {
        let c = self.to_link(&self.c()).pow(m);
        let out = c.left_apply(psi_n);
        self.basis()
            .iter()
            .zip(out)
            .map(|(pi, v)| (pi.embed(m as usize), v))
            .collect()
    }
}

/// The single-column diagram with `k` boxes, if it lies in `A_n`.
pub fn column_diagram(n: usize, k: usize) -> Option<Diagram> {
    Diagram::from_partition(&vec![1; k], n).ok()
}

/// The closed recursion at general `t`: `ψ^{(n+1)}_π = Σ_{ρ ∈ A_n} ψ_ρ c^{(ρ)}_π`,
/// where `ops` is the operator set at size `n + 1`.
pub fn recurrence_step_general_t<R: FieldCoeff>(ops_next: &Operators<R>, psi_n: &[R]) -> Vec<R> {
    let n = ops_next.n() - 1;
    let small = Basis::new(n);
    assert_eq!(psi_n.len(), small.len());
    let c = ops_next.to_link(&ops_next.c());
    let mut lifted = vec![R::zero(); ops_next.dim()];
    for (rho, v) in small.iter().zip(psi_n) {
        let idx = ops_next.basis().index_of(&rho.embed(1)).expect("embedding lands in A_{n+1}");
        lifted[idx] = v.clone();
    }
    c.left_apply(&lifted)
}

/// `ψ = Ψ P^{-1}` at size `n`, without building the other operators.
pub fn psi_link<R: FieldCoeff>(n: usize, t: &R) -> Vec<R> {
    let psi = BracketContext::new(n, t.clone()).psi_vector();
    p_inverse(n, t).expect("P is unit upper triangular").left_apply(&psi)
}

/// Converts an integer matrix to any coefficient ring.
pub fn from_integer_matrix<R: Coeff>(m: &Matrix<BigInt>) -> Matrix<R> {
    m.map(R::from_bigint)
}
