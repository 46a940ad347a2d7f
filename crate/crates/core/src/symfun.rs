//! Schur polynomials, the involution `φ` and its tilde-Schur images,
//! Littlewood–Richardson coefficients and the hook-content polynomial.
//!
//! Schur polynomials are built from semistandard tableaux. A symmetric `F`
//! has Schur coefficient `[u^β](F · Δ)` at an increasing sequence `β`, and this
//! is how every expansion below is read off.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::combinat::{enumerate_basis, Diagram};
use crate::linalg::Matrix;
use crate::polyring::{permutations_with_sign, vandermonde, BoxPoly, BoxShape, Coeff, MultiPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymfunError {
    #[error("polynomial is not symmetric under u{0} <-> u{1}")]
    NotSymmetric(usize, usize),
    #[error("polynomial has {got} variables, expected {expected}")]
    WrongVariableCount { expected: usize, got: usize },
}

/// Exponent vectors (with multiplicity) of all semistandard tableaux of the
/// given shape with entries in `0..nvars`.
pub fn ssyt_contents(shape: &[u32], nvars: usize) -> Vec<Vec<u32>> {
    let rows: Vec<usize> = shape.iter().map(|&r| r as usize).filter(|&r| r > 0).collect();
    let mut out = Vec::new();
    if rows.len() > nvars {
        return out;
    }
    let cells: Vec<(usize, usize)> = rows
        .iter()
        .enumerate()
        .flat_map(|(i, &len)| (0..len).map(move |j| (i, j)))
        .collect();
    let mut grid: Vec<Vec<usize>> = rows.iter().map(|&len| vec![0; len]).collect();
    let mut content = vec![0u32; nvars];

    fn rec(
        k: usize,
        cells: &[(usize, usize)],
        grid: &mut Vec<Vec<usize>>,
        content: &mut Vec<u32>,
        nvars: usize,
        out: &mut Vec<Vec<u32>>,
    ) {
        if k == cells.len() {
            out.push(content.clone());
            return;
        }
        let (i, j) = cells[k];
        let mut lo = 0;
        if j > 0 {
            lo = grid[i][j - 1];
        }
        if i > 0 {
            lo = lo.max(grid[i - 1][j] + 1);
        }
        // Entries below still need room to increase strictly.
        let below_in_col = (i + 1..grid.len()).filter(|&r| grid[r].len() > j).count();
        if nvars < below_in_col + 1 {
            return;
        }
        let hi = nvars - 1 - below_in_col;
        for v in lo..=hi {
            grid[i][j] = v;
            content[v] += 1;
            rec(k + 1, cells, grid, content, nvars, out);
            content[v] -= 1;
        }
    }
    rec(0, &cells, &mut grid, &mut content, nvars, &mut out);
    out
}

/// Conjugate of a partition given by its row lengths.
pub fn conjugate(parts: &[u32]) -> Vec<u32> {
    let first = parts.first().copied().unwrap_or(0);
    (1..=first)
        .map(|c| parts.iter().filter(|&&r| r >= c).count() as u32)
        .collect()
}

/// The Schur polynomial with the given row lengths in `nvars` variables.
pub fn schur_partition<R: Coeff>(parts: &[u32], nvars: usize) -> MultiPoly<R> {
    let mut counts: HashMap<Vec<u32>, i64> = HashMap::new();
    for c in ssyt_contents(parts, nvars) {
        *counts.entry(c).or_insert(0) += 1;
    }
    MultiPoly::from_terms(nvars, counts.into_iter().map(|(e, c)| (e, R::from_i64(c))))
}

/// `s_α(u_0, …, u_{n-1})`.
pub fn schur<R: Coeff>(alpha: &Diagram, n: usize) -> MultiPoly<R> {
    schur_partition(&alpha.partition(), n)
}

/// `s̃_σ = φ(s_σ) = s_{σ′}(u/(1+tu))`, truncated to `shape`.
pub fn tilde_schur<R: Coeff>(sigma: &Diagram, t: &R, shape: &Arc<BoxShape>) -> BoxPoly<R> {
    let conj = conjugate(&sigma.partition());
    let s = schur_partition::<R>(&conj, shape.nvars());
    BoxPoly::from_multipoly(shape.clone(), &s).substitute_moebius(t)
}

/// Schur coefficient `[u^β](F · Δ)` of a dense symmetric polynomial.
pub fn schur_coefficient<R: Coeff>(f: &BoxPoly<R>, delta: &MultiPoly<R>, beta: &[u32]) -> R {
    let mut acc = R::zero();
    let mut e = vec![0i64; beta.len()];
    for (d, c) in delta.terms() {
        for i in 0..beta.len() {
            e[i] = beta[i] as i64 - d[i] as i64;
        }
        if let Some(v) = f.coefficient(&e) {
            acc.fma_in(&v, c);
        }
    }
    acc
}

/// Expansion of a symmetric polynomial in the Schur basis, restricted to `A_n`.
pub fn schur_expand<R: Coeff>(
    p: &MultiPoly<R>,
    n: usize,
) -> Result<Vec<(Diagram, R)>, SymfunError> {
    if p.nvars() != n {
        return Err(SymfunError::WrongVariableCount {
            expected: n,
            got: p.nvars(),
        });
    }
    for i in 0..n.saturating_sub(1) {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(i, i + 1);
        if p.permute_vars(&perm).terms().ne(p.terms()) {
            return Err(SymfunError::NotSymmetric(i, i + 1));
        }
    }
    let shape = BoxShape::staircase(n);
    let dense = BoxPoly::from_multipoly(shape, p);
    let delta = vandermonde::<R>(n);
    Ok(enumerate_basis(n)
        .into_iter()
        .map(|mu| {
            let c = schur_coefficient(&dense, &delta, mu.seq());
            (mu, c)
        })
        .filter(|(_, c)| !c.is_zero())
        .collect())
}

/// Coefficients `[u^ρ](s_σ · det(u_i^{τ_j}))` for all `ρ ∈ A_n`, i.e. the
/// expansion of `s_σ s_τ` in Schur functions indexed by `A_n`.
pub fn schur_product_row(sigma: &Diagram, tau: &Diagram) -> HashMap<Diagram, BigInt> {
    let n = sigma.n();
    assert_eq!(n, tau.n());
    let s = schur::<BigInt>(sigma, n);
    let mut alt = MultiPoly::<BigInt>::zero(n);
    for (perm, sign) in permutations_with_sign(n) {
        let mut e = vec![0u32; n];
        for (j, &p) in perm.iter().enumerate() {
            e[p] = tau.seq()[j];
        }
        alt = alt
            .add(&MultiPoly::monomial(e, BigInt::from(sign)))
            .expect("same variable count");
    }
    let prod = s.mul(&alt).expect("same variable count");
    let target = sigma.boxes() + tau.boxes();
    enumerate_basis(n)
        .into_iter()
        .filter(|rho| rho.boxes() == target)
        .filter_map(|rho| {
            let e: Vec<i64> = rho.seq().iter().map(|&a| a as i64).collect();
            let c = prod.coefficient_of(&e).expect("length matches");
            (!c.is_zero()).then_some((rho, c))
        })
        .collect()
}

/// The Littlewood–Richardson coefficient `c^ρ_{στ}`.
pub fn lr_coefficient(sigma: &Diagram, tau: &Diagram, rho: &Diagram) -> BigInt {
    if sigma.boxes() + tau.boxes() != rho.boxes() {
        return BigInt::zero();
    }
    schur_product_row(sigma, tau)
        .remove(rho)
        .unwrap_or_else(BigInt::zero)
}

/// `P_σ(x) = ∏_{(i,j) ∈ σ} (j - i + x) / hook(i, j)`.
pub fn hook_content_poly(sigma: &Diagram, x: &BigRational) -> BigRational {
    let rows = sigma.partition();
    let cols = conjugate(&rows);
    let mut acc = BigRational::one();
    for (i, &len) in rows.iter().enumerate() {
        for j in 0..len as usize {
            let content = BigRational::from_integer(BigInt::from(j as i64 - i as i64));
            let hook = (len as i64 - j as i64) + (cols[j] as i64 - i as i64) - 1;
            acc = acc * (content + x) / BigRational::from_integer(BigInt::from(hook));
        }
    }
    acc
}

/// The matrix `Φ^μ_λ = [u^μ](s̃_λ · Δ)` of `φ` on the quotient indexed by `A_n`.
pub fn involution_matrix<R: Coeff>(n: usize, t: &R) -> Matrix<R> {
    let basis = enumerate_basis(n);
    let shape = BoxShape::staircase(n);
    let delta = vandermonde::<R>(n);
    let mut m = Matrix::zeros(basis.len(), basis.len());
    for (col, lambda) in basis.iter().enumerate() {
        let st = tilde_schur(lambda, t, &shape);
        for (row, mu) in basis.iter().enumerate() {
            m.set(row, col, schur_coefficient(&st, &delta, mu.seq()));
        }
    }
    m
}

/// Independent route to `Φ`: expand `det(u_i^{a_j} (1+t u_i)^{n-1-a_j}) / Δ`
/// with `a = σ′` directly in Schur functions, using generalized binomials.
pub fn involution_matrix_exptilde<R: Coeff>(n: usize, t: &R) -> Matrix<R> {
    let basis = enumerate_basis(n);
    let index: HashMap<&Diagram, usize> = basis.iter().enumerate().map(|(i, d)| (d, i)).collect();
    let top = 2 * (n as i64 - 1);
    let mut m = Matrix::<R>::zeros(basis.len(), basis.len());
    for (col, sigma) in basis.iter().enumerate() {
        let a: Vec<i64> = sigma.transpose().seq().iter().map(|&x| x as i64).collect();
        // Column j contributes Σ_k C(n-1-a_j, k) t^k u^{a_j + k}.
        let series: Vec<Vec<R>> = a
            .iter()
            .map(|&aj| {
                (0..=(top - aj))
                    .map(|k| gen_binomial::<R>(n as i64 - 1 - aj, k as u32).mul_ref(&t.pow(k as u32)))
                    .collect()
            })
            .collect();
        let mut ks = vec![0usize; n];
        loop {
            let b: Vec<i64> = (0..n).map(|j| a[j] + ks[j] as i64).collect();
            if let Some((sorted, sign)) = sort_with_sign(&b) {
                let seq: Vec<u32> = sorted.iter().map(|&x| x as u32).collect();
                if let Ok(mu) = Diagram::new(seq) {
                    if let Some(&row) = index.get(&mu) {
                        let mut w = R::from_i64(sign);
                        for j in 0..n {
                            w = w.mul_ref(&series[j][ks[j]]);
                        }
                        let mut cur = m.get(row, col).clone();
                        cur.add_in(&w);
                        m.set(row, col, cur);
                    }
                }
            }
            let mut v = 0;
            loop {
                if v == n {
                    break;
                }
                if ks[v] + 1 < series[v].len() {
                    ks[v] += 1;
                    break;
                }
                ks[v] = 0;
                v += 1;
            }
            if v == n {
                break;
            }
        }
    }
    m
}

/// Generalized binomial `C(a, k)` for any integer `a`.
fn gen_binomial<R: Coeff>(a: i64, k: u32) -> R {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k as i64 {
        num *= a - i;
        den *= i + 1;
    }
    R::from_bigint(&(num / den))
}

/// Sorts into increasing order and returns the permutation sign, or `None` on a repeat.
fn sort_with_sign(b: &[i64]) -> Option<(Vec<i64>, i64)> {
    let mut v = b.to_vec();
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{one_plus_u_power, TPoly};

    fn d(seq: &[u32]) -> Diagram {
        Diagram::new(seq.to_vec()).unwrap()
    }

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    #[test]
    fn schur_examples() {
        assert_eq!(schur::<BigInt>(&d(&[0, 1, 2]), 3), MultiPoly::one(3));
        let e1 = MultiPoly::<BigInt>::var(2, 0).add(&MultiPoly::var(2, 1)).unwrap();
        assert_eq!(schur::<BigInt>(&d(&[0, 2]), 2), e1);
        let e2 = MultiPoly::<BigInt>::from_terms(
            3,
            [
                (vec![1, 1, 0], BigInt::one()),
                (vec![1, 0, 1], BigInt::one()),
                (vec![0, 1, 1], BigInt::one()),
            ],
        );
        assert_eq!(schur::<BigInt>(&d(&[0, 2, 3]), 3), e2);
    }

    #[test]
    fn schur_matches_bialternant() {
        // s_λ · Δ = det(u_i^{λ_j + j}) for all λ ∈ A_4.
        let n = 4;
        let delta = vandermonde::<BigInt>(n);
        for lambda in enumerate_basis(n) {
            let lhs = schur::<BigInt>(&lambda, n).mul(&delta).unwrap();
            let mut alt = MultiPoly::<BigInt>::zero(n);
            for (perm, sign) in permutations_with_sign(n) {
                let mut e = vec![0u32; n];
                for (j, &p) in perm.iter().enumerate() {
                    e[p] = lambda.seq()[j];
                }
                alt = alt.add(&MultiPoly::monomial(e, BigInt::from(sign))).unwrap();
            }
            assert_eq!(lhs, alt, "λ = {lambda}");
        }
    }

    #[test]
    fn tilde_schur_leading_term() {
        let shape = BoxShape::staircase(2);
        let st = tilde_schur(&d(&[0, 2]), &BigInt::one(), &shape);
        assert_eq!(st.get(&[1, 0]), &BigInt::one());
        assert_eq!(st.get(&[0, 1]), &BigInt::one());
        assert_eq!(st.get(&[0, 0]), &BigInt::zero());
        let empty = tilde_schur(&d(&[0, 1]), &BigInt::one(), &shape);
        assert_eq!(empty, BoxPoly::one(shape));
    }

    #[test]
    fn lr_examples() {
        let box3 = d(&[0, 1, 3]);
        let empty3 = d(&[0, 1, 2]);
        let col = d(&[0, 2, 3]);
        let row = d(&[0, 1, 4]);
        let stair = d(&[0, 2, 4]);
        assert_eq!(lr_coefficient(&box3, &empty3, &box3), BigInt::one());
        assert_eq!(lr_coefficient(&box3, &col, &stair), BigInt::one());
        assert_eq!(lr_coefficient(&box3, &row, &stair), BigInt::one());
        assert_eq!(lr_coefficient(&box3, &box3, &stair), BigInt::zero());
        assert_eq!(lr_coefficient(&box3, &box3, &row), BigInt::one());
    }

    #[test]
    fn hook_content_examples() {
        for x in -3..4 {
            assert_eq!(hook_content_poly(&d(&[0, 1, 2]), &q(x)), q(1));
        }
        for a in enumerate_basis(3) {
            let expect = if a.is_empty_diagram() { 1 } else { 0 };
            assert_eq!(hook_content_poly(&a, &q(0)), q(expect));
        }
        let vals: Vec<BigRational> = enumerate_basis(3)
            .iter()
            .map(|tau| hook_content_poly(&tau.transpose(), &q(-2)))
            .collect();
        assert_eq!(vals, vec![q(1), q(-2), q(1), q(3), q(-2)]);
    }

    #[test]
    fn hook_content_counts_tableaux() {
        for sigma in enumerate_basis(3) {
            for m in 1..=3usize {
                let count = ssyt_contents(&sigma.partition(), m).len() as i64;
                assert_eq!(hook_content_poly(&sigma, &q(m as i64)), q(count));
            }
        }
    }

    #[test]
    fn involution_n3() {
        let phi = involution_matrix::<BigInt>(3, &BigInt::one());
        let expected = Matrix::<BigInt>::from_i64_rows(&[
            &[1, 0, 0, 0, 0],
            &[0, 1, 0, 0, 0],
            &[0, 1, 0, 1, 0],
            &[0, -1, 1, 0, 0],
            &[0, -1, 1, -1, 1],
        ]);
        assert_eq!(phi, expected);
        assert_eq!(involution_matrix::<BigInt>(1, &BigInt::one()), Matrix::identity(1));
    }

    #[test]
    fn involution_squares_to_one_and_routes_agree() {
        for n in 1..=4 {
            let phi = involution_matrix::<TPoly>(n, &TPoly::t());
            assert!(phi.mul(&phi).is_identity(), "n = {n}");
            assert_eq!(phi, involution_matrix_exptilde::<TPoly>(n, &TPoly::t()));
        }
    }

    #[test]
    fn schur_expand_examples() {
        assert_eq!(
            schur_expand(&MultiPoly::<BigInt>::one(2), 2).unwrap(),
            vec![(d(&[0, 1]), BigInt::one())]
        );
        let e1 = MultiPoly::<BigInt>::var(2, 0).add(&MultiPoly::var(2, 1)).unwrap();
        let sq = e1.mul(&e1).unwrap();
        // In A_2 only the empty diagram and the single box survive; degree 2 drops out.
        assert!(schur_expand(&sq, 2).unwrap().is_empty());
        let sq3 = schur::<BigInt>(&d(&[0, 1, 3]), 3).pow(2);
        let exp = schur_expand(&sq3, 3).unwrap();
        assert_eq!(
            exp,
            vec![(d(&[0, 2, 3]), BigInt::one()), (d(&[0, 1, 4]), BigInt::one())]
        );
        let all_e = one_plus_u_power::<BigInt>(3, 1);
        assert_eq!(
            schur_expand(&all_e, 3).unwrap(),
            vec![
                (d(&[0, 1, 2]), BigInt::one()),
                (d(&[0, 1, 3]), BigInt::one()),
                (d(&[0, 2, 3]), BigInt::one())
            ]
        );
        assert!(schur_expand(&vandermonde::<BigInt>(2), 2).is_err());
    }

    #[test]
    fn selfdual_fixed_vector() {
        for n in 1..=5 {
            let phi = involution_matrix::<BigInt>(n, &BigInt::one());
            let v: Vec<BigInt> = enumerate_basis(n)
                .iter()
                .map(|mu| {
                    let is_column = mu.partition().iter().all(|&r| r == 1);
                    BigInt::from(is_column as i64)
                })
                .collect();
            assert_eq!(phi.apply(&v), v, "n = {n}");
        }
    }

    #[test]
    fn expansion_reproduces_lr() {
        let n = 3;
        let basis = enumerate_basis(n);
        for a in &basis {
            for b in &basis {
                let prod = schur::<BigInt>(a, n).mul(&schur::<BigInt>(b, n)).unwrap();
                let exp: HashMap<Diagram, BigInt> = schur_expand(&prod, n).unwrap().into_iter().collect();
                for rho in &basis {
                    let want = lr_coefficient(a, b, rho);
                    let got = exp.get(rho).cloned().unwrap_or_else(BigInt::zero);
                    assert_eq!(got, want, "{a} {b} {rho}");
                }
            }
        }
    }
}
