use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use super::{cost_guard, t_label, HarnessError, VerificationReport, SQUARE_LIMIT, TRIANGLE_LIMIT};
use crate::bracket::{ATensor, BracketContext};
use crate::combinat::{contains, Basis, Diagram, LinkPattern};
use crate::fpl::{enumerate_fpl_square, enumerate_fpl_triangle, TriangleBoundary};
use crate::linalg::Matrix;
use crate::opalgebra::{
    column_diagram, mirror_matrix, psi_link, recurrence_step_general_t, Operators,
};
use crate::polyring::Coeff;
use crate::symfun::{
    hook_content_poly, involution_matrix, involution_matrix_exptilde, lr_coefficient,
    schur_product_row,
};
use crate::tlmodel::ground_state;

type Q = BigRational;

fn q(v: i64) -> Q {
    Q::from_i64(v)
}

/// The sample values of `t` used by the recurrence suite.
pub const DEFAULT_T_SAMPLES: [(i64, i64); 4] = [(0, 1), (1, 1), (2, 1), (1, 2)];

fn t_samples() -> Vec<Q> {
    DEFAULT_T_SAMPLES
        .iter()
        .map(|&(a, b)| Q::new(a.into(), b.into()))
        .collect()
}

fn operators(n: usize, t: &Q) -> Result<Operators<Q>, HarnessError> {
    Operators::new(n, t.clone()).map_err(|e| HarnessError::Usage(format!("n={n} t={t}: {e}")))
}

/// Collects the first counterexample of a family of scalar checks.
struct Family {
    id: String,
    checked: usize,
    failure: Option<(String, String)>,
}

impl Family {
    fn new(id: impl Into<String>) -> Self {
        Family {
            id: id.into(),
            checked: 0,
            failure: None,
        }
    }

    fn eq<T: PartialEq + std::fmt::Display>(&mut self, at: impl FnOnce() -> String, lhs: T, rhs: T) {
        self.checked += 1;
        if lhs != rhs && self.failure.is_none() {
            let at = at();
            self.failure = Some((format!("{at}: {lhs}"), format!("{at}: {rhs}")));
        }
    }

    fn done(self, report: &mut VerificationReport) {
        match self.failure {
            None => report.pass(format!("{} ({} cases)", self.id, self.checked)),
            Some((l, r)) => report.fail(self.id, l, r),
        }
    }
}

fn boxes_triple(s: &Diagram, a: &Diagram, t: &Diagram) -> String {
    format!("σ={s} α={a} τ={t}")
}

/// Bracket side pushed to the link basis, compared with triangle enumeration.
pub fn verify_conjecture1(n: usize, force: bool) -> Result<VerificationReport, HarnessError> {
    cost_guard("triangle enumeration", n, TRIANGLE_LIMIT, force)?;
    let start = Instant::now();
    let mut report = VerificationReport::new("conjecture1", n, "1");
    let ops = operators(n, &q(1))?;
    let basis = ops.basis().clone();
    let tensor = ops.a_tensor();
    let counts = match enumerate_fpl_triangle(n) {
        Ok(c) => c,
        Err(e) => {
            report.fail("triangle enumeration", e.to_string(), "a valid enumeration".into());
            return Ok(report.finish(start.elapsed()));
        }
    };
    let patterns: Vec<LinkPattern> = basis.iter().map(|d| d.to_link_pattern()).collect();
    let fpl = |s: &Diagram, p: &LinkPattern, t: &Diagram| -> Q {
        let key = TriangleBoundary {
            sigma: s.clone(),
            pi: p.clone(),
            tau: t.clone(),
        };
        q(counts.get(&key).copied().unwrap_or(0) as i64)
    };
    let mut triples = 0;
    let mut lr_family = Family::new("a equals LR coefficient when |σ|+|τ|=|π|");
    for (si, sigma) in basis.iter().enumerate() {
        for (ti, tau) in basis.iter().enumerate() {
            let lhs = ops.p_inv().left_apply(&tensor.row(si, ti));
            let rhs: Vec<Q> = patterns.iter().map(|p| fpl(sigma, p, tau)).collect();
            triples += lhs.len();
            report.check_vec(format!("a[σ={sigma} | τ={tau}]"), &lhs, &rhs);
            for (pi, value) in basis.iter().zip(&rhs) {
                if sigma.boxes() + tau.boxes() == pi.boxes() {
                    let lr = lr_coefficient(&sigma.transpose(), tau, pi);
                    lr_family.eq(|| boxes_triple(sigma, pi, tau), value.clone(), Q::from_integer(lr));
                }
            }
        }
    }
    lr_family.done(&mut report);
    report.check_eq("triples compared", &triples, &basis.len().pow(3));
    let extra: Vec<String> = counts
        .keys()
        .filter(|k| basis.index_of(&k.sigma).is_none() || basis.index_of(&k.tau).is_none())
        .map(|k| format!("{k:?}"))
        .collect();
    report.check_true("boundaries lie in A_n", extra.is_empty(), || extra.join("; "));
    if n == 3 {
        let e = Diagram::empty(3);
        let row: Vec<Q> = patterns.iter().map(|p| fpl(&e, p, &e)).collect();
        report.check_vec("geometry oracle a[∅,π,∅]", &row, &[1, 4, 6, 6, 17].map(q));
    }
    Ok(report.finish(start.elapsed()))
}

/// Ground state of the loop model against square-grid counts.
pub fn verify_rs(n: usize, force: bool) -> Result<VerificationReport, HarnessError> {
    cost_guard("square enumeration", n, SQUARE_LIMIT, force)?;
    let start = Instant::now();
    let mut report = VerificationReport::new("rs", n, "1");
    let basis = Basis::new(n);
    let counts = match enumerate_fpl_square(n) {
        Ok(c) => c,
        Err(e) => {
            report.fail("square enumeration", e.to_string(), "a valid enumeration".into());
            return Ok(report.finish(start.elapsed()));
        }
    };
    let fpl: Vec<BigInt> = basis
        .iter()
        .map(|d| BigInt::from(counts.get(&d.to_link_pattern()).copied().unwrap_or(0)))
        .collect();
    match ground_state(n) {
        Ok(gs) => report.check_eq("ψ′ equals FPL counts", &gs, &fpl),
        Err(e) => report.fail("ψ′ equals FPL counts", e.to_string(), format!("{fpl:?}")),
    }
    let total: u64 = counts.values().sum();
    let asm: [u64; 8] = [1, 1, 2, 7, 42, 429, 7436, 218348];
    if let Some(&expected) = asm.get(n) {
        report.check_eq("total is the ASM number", &total, &expected);
    }
    let rotation_ok = counts.iter().all(|(p, c)| counts.get(&p.rotate()) == Some(c));
    report.check_true("rotation invariance", rotation_ok, || "counts change under rotation".into());
    Ok(report.finish(start.elapsed()))
}

/// `Σ_{σ,τ} A_{σ,α,τ} P_{σ′}(2m-k) P_{τ′}(k-n-m+1)` as a vector over `α`.
fn summed(tensor: &ATensor<Q>, basis: &Basis, m: i64, k: i64) -> Vec<Q> {
    let n = basis.n() as i64;
    let left: Vec<Q> = basis
        .iter()
        .map(|s| hook_content_poly(&s.transpose(), &q(2 * m - k)))
        .collect();
    let right: Vec<Q> = basis
        .iter()
        .map(|t| hook_content_poly(&t.transpose(), &q(k - n - m + 1)))
        .collect();
    let d = basis.len();
    (0..d)
        .map(|a| {
            let mut acc = q(0);
            for s in 0..d {
                if left[s].is_zero() {
                    continue;
                }
                for t in 0..d {
                    let v = tensor.at(s, a, t);
                    if !v.is_zero() && !right[t].is_zero() {
                        acc += v * &left[s] * &right[t];
                    }
                }
            }
            acc
        })
        .collect()
}

/// The summation identity over a window of `k`, plus its reductions at `k = 0` and `k = n-1`.
pub fn verify_summation(n: usize, k_lo: i64, k_hi: i64) -> Result<VerificationReport, HarnessError> {
    if k_lo > k_hi {
        return Err(HarnessError::Usage(format!("empty k range {k_lo}..{k_hi}")));
    }
    let start = Instant::now();
    let mut report = VerificationReport::new("summation", n, "1");
    let ctx = BracketContext::new(n, q(1));
    let tensor = ctx.a_tensor();
    let basis = ctx.basis();
    let psi = ctx.psi_vector();
    let results: Vec<(i64, Vec<Q>)> = (k_lo..=k_hi)
        .into_par_iter()
        .map(|k| (k, summed(&tensor, basis, 0, k)))
        .collect();
    for (k, v) in results {
        report.check_vec(format!("k={k:+}"), &v, &psi);
    }
    let weights: Vec<Q> = basis
        .iter()
        .map(|t| hook_content_poly(&t.transpose(), &q(1 - n as i64)))
        .collect();
    let d = basis.len();
    let first_lines: Vec<Q> = (0..d)
        .map(|a| (0..d).fold(q(0), |acc, t| acc + tensor.at(0, a, t) * &weights[t]))
        .collect();
    let first_rows: Vec<Q> = (0..d)
        .map(|a| (0..d).fold(q(0), |acc, s| acc + tensor.at(s, a, 0) * &weights[s]))
        .collect();
    report.check_vec("k=0 first lines weighted by P_τ′(1-n)", &first_lines, &psi);
    report.check_vec("k=n-1 first rows weighted by P_σ′(1-n)", &first_rows, &psi);
    Ok(report.finish(start.elapsed()))
}

/// The weights `P_{τ′}(1-n)` of the `k = 0` reduction, in basis order.
pub fn summation_weights(n: usize) -> Vec<Q> {
    Basis::new(n)
        .iter()
        .map(|t| hook_content_poly(&t.transpose(), &q(1 - n as i64)))
        .collect()
}

/// Vanishing, LR and triangularity properties of `A`, and the properties of `Φ`.
pub fn verify_lemma_suite(n: usize) -> Result<VerificationReport, HarnessError> {
    let start = Instant::now();
    let mut report = VerificationReport::new("lemmas", n, "1");
    let ctx = BracketContext::new(n, q(1));
    let tensor = ctx.a_tensor();
    let basis = ctx.basis().clone();

    let mut vanish = Family::new("A vanishes when |σ|+|τ|>|α|");
    let mut lr = Family::new("A equals c^α_{σ′τ} when |σ|+|τ|=|α|");
    let mut uptri = Family::new("A vanishes unless τ ⊆ α and σ′ ⊆ α");
    for (si, s) in basis.iter().enumerate() {
        let st = s.transpose();
        for (ai, a) in basis.iter().enumerate() {
            for (ti, t) in basis.iter().enumerate() {
                let v = tensor.at(si, ai, ti).clone();
                let size = s.boxes() + t.boxes();
                if size > a.boxes() {
                    vanish.eq(|| boxes_triple(s, a, t), v.clone(), q(0));
                } else if size == a.boxes() {
                    lr.eq(|| boxes_triple(s, a, t), v.clone(), Q::from_integer(lr_coefficient(&st, t, a)));
                }
                let inside = contains(t, a).unwrap_or(false) && contains(&st, a).unwrap_or(false);
                if !inside {
                    uptri.eq(|| boxes_triple(s, a, t), v, q(0));
                }
            }
        }
    }
    vanish.done(&mut report);
    lr.done(&mut report);
    uptri.done(&mut report);
    report.check_true(
        "A(∅) unit upper triangular",
        tensor.a_matrix(0).is_unit_upper_triangular(),
        || tensor.a_matrix(0).to_string(),
    );
    let not_upper: Vec<String> = (0..basis.len())
        .filter(|&s| !tensor.a_matrix(s).is_upper_triangular())
        .map(|s| basis.get(s).to_string())
        .collect();
    report.check_true("every A(σ) upper triangular", not_upper.is_empty(), || not_upper.join(" "));

    for t in t_samples() {
        let phi = involution_matrix(n, &t);
        let label = t_label(&t);
        report.check_true(format!("Φ² = I at t={label}"), phi.mul(&phi).is_identity(), || phi.to_string());
        report.check_matrix(
            format!("Φ by substitution equals Φ by expansion at t={label}"),
            &phi,
            &involution_matrix_exptilde(n, &t),
        );
    }
    let phi = involution_matrix(n, &q(1));
    let fixed: Vec<Q> = basis
        .iter()
        .map(|d| {
            let col = d.partition().iter().all(|&p| p == 1);
            q(col as i64)
        })
        .collect();
    report.check_vec("Φ fixes Σ e_i", &phi.apply(&fixed), &fixed);
    let mut support = Family::new("Φ column σ supported on β ⊇ σ′ with leading 1");
    for (c, sigma) in basis.iter().enumerate() {
        let st = sigma.transpose();
        for (r, beta) in basis.iter().enumerate() {
            let v = phi.get(r, c).clone();
            if beta == &st {
                support.eq(|| format!("σ={sigma} β={beta}"), v, q(1));
            } else if !contains(&st, beta).unwrap_or(false) {
                support.eq(|| format!("σ={sigma} β={beta}"), v, q(0));
            }
        }
    }
    support.done(&mut report);
    Ok(report.finish(start.elapsed()))
}

/// `Σ_i z^i LR(e_i)`.
fn lr_z(ops: &Operators<Q>, z: &Q) -> Matrix<Q> {
    let d = ops.dim();
    let mut m = Matrix::zeros(d, d);
    for k in 0..=ops.n() {
        if let Some(col) = column_diagram(ops.n(), k) {
            m = m.add(&ops.lr(&col).scale(&z.pow(k as i32)));
        }
    }
    m
}

/// Intertwining identities and the structural matrices at a given `t`.
pub fn verify_matrix_suite(n: usize, t: &Q) -> Result<VerificationReport, HarnessError> {
    let start = Instant::now();
    let label = t_label(t);
    let mut report = VerificationReport::new("matrices", n, &label);
    let ops = operators(n, t)?;
    let basis = ops.basis().clone();
    let tensor = ops.a_tensor();
    let a0 = ops.a_empty().clone();
    let r = ops.r();

    let per_lambda: Vec<VerificationReport> = basis
        .diagrams()
        .par_iter()
        .map(|lambda| {
            let mut rep = VerificationReport::new("", n, &label);
            let c = ops.c_matrix(lambda);
            let ct = ops.c_tilde_matrix(lambda);
            let lr = ops.lr(lambda);
            let lrt = ops.lr_tilde(lambda);
            let a_l = ops.a_matrix(lambda);
            let tag = format!("[λ={lambda}]");
            for (ai, alpha) in basis.iter().enumerate() {
                let abar = tensor.abar_matrix(ai);
                rep.check_matrix(
                    format!("L̃R(λ)ᵀĀ(α) = Ā(α)LR(λ) {tag}[α={alpha}]"),
                    &lrt.transpose().mul(&abar),
                    &abar.mul(&lr),
                );
                rep.check_matrix(
                    format!("LR(λ)ᵀĀ(α) = Ā(α)L̃R(λ) {tag}[α={alpha}]"),
                    &lr.transpose().mul(&abar),
                    &abar.mul(&lrt),
                );
            }
            for (si, sigma) in basis.iter().enumerate() {
                let a_s = tensor.a_matrix(si);
                rep.check_matrix(
                    format!("LR(λ)ᵀA(σ) = A(σ)C(λ) {tag}[σ={sigma}]"),
                    &lr.transpose().mul(&a_s),
                    &a_s.mul(&c),
                );
                rep.check_matrix(
                    format!("L̃R(λ)ᵀA(σ) = A(σ)C̃(λ) {tag}[σ={sigma}]"),
                    &lrt.transpose().mul(&a_s),
                    &a_s.mul(&ct),
                );
            }
            rep.check_matrix(format!("A(λ) = L̃R(λ)ᵀA(∅) {tag}"), &a_l, &lrt.transpose().mul(&a0));
            rep.check_matrix(format!("C̃(λ) = A(∅)⁻¹A(λ) {tag}"), &ct, &ops.a_empty_inverse().mul(&a_l));
            rep.check_matrix(format!("C̃(λ) = R C(λ) R {tag}"), &ct, &r.mul(&c).mul(&r));
            rep.check_matrix(format!("C(λ) by dual Jacobi–Trudi {tag}"), &c, &ops.c_via_dual_jacobi_trudi(lambda));
            rep
        })
        .collect();
    for rep in per_lambda {
        report.checks.extend(rep.checks);
    }

    // Representation property and commutativity, λ and μ over A_n.
    let cs: Vec<Matrix<Q>> = basis.iter().map(|l| ops.c_matrix(l)).collect();
    let ms: Vec<Matrix<Q>> = basis
        .iter()
        .map(|l| ops.a_matrix(l).mul(ops.a_empty_inverse()))
        .collect();
    let mut rep_c = Family::new("C(λ)C(μ) = Σ c^ν_{λμ} C(ν)");
    let mut rep_m = Family::new("A(λ)A(∅)⁻¹ satisfy the algebra relations");
    let mut commute = Family::new("A(λ)A(∅)⁻¹ commute");
    for (i, l) in basis.iter().enumerate() {
        for (j, m) in basis.iter().enumerate() {
            let prod = schur_product_row(l, m);
            let combine = |mats: &[Matrix<Q>]| {
                prod.iter().fold(Matrix::zeros(basis.len(), basis.len()), |acc, (nu, k)| {
                    acc.add(&mats[basis.index_of(nu).expect("in A_n")].scale(&Q::from_integer(k.clone())))
                })
            };
            let at = || format!("λ={l} μ={m}");
            rep_c.eq(at, MatrixShow(cs[i].mul(&cs[j])), MatrixShow(combine(&cs)));
            rep_m.eq(at, MatrixShow(ms[i].mul(&ms[j])), MatrixShow(combine(&ms)));
            commute.eq(at, MatrixShow(ms[i].mul(&ms[j])), MatrixShow(ms[j].mul(&ms[i])));
        }
    }
    rep_c.done(&mut report);
    rep_m.done(&mut report);
    commute.done(&mut report);

    // Multiplication by ∏(1 + t u_i), which φ leaves invariant.
    let lr_t = lr_z(&ops, t);
    let c_t = ops.c();
    for (ai, alpha) in basis.iter().enumerate() {
        let abar = tensor.abar_matrix(ai);
        let a_a = tensor.a_matrix(ai);
        report.check_matrix(format!("LRᵀĀ(α) = Ā(α)LR [α={alpha}]"), &lr_t.transpose().mul(&abar), &abar.mul(&lr_t));
        report.check_matrix(format!("LRᵀA(α) = A(α)C [α={alpha}]"), &lr_t.transpose().mul(&a_a), &a_a.mul(&c_t));
    }
    let ctx = ops.context();
    let w = ctx.one_plus_u(n as u32 - 1).mul(&ctx.one_plus_zu(t, 1));
    let d = basis.len();
    let mut triple = Family::new("three expansions of ⟨∏(1+t u_i)⟩_{σ,α,τ}");
    for (si, s) in basis.iter().enumerate() {
        let g = w.mul(&ctx.tilde_schur(s));
        for (ti, tt) in basis.iter().enumerate() {
            let f = g.mul(&ctx.schur(tt));
            for (ai, a) in basis.iter().enumerate() {
                let direct = ctx.bracket_dense(&f, &a.seq().iter().map(|&x| x as i64).collect::<Vec<_>>());
                let via_tau = (0..d).fold(q(0), |acc, mu| acc + lr_t.get(mu, ti) * tensor.at(si, ai, mu));
                let via_sigma = (0..d).fold(q(0), |acc, mu| acc + lr_t.get(mu, si) * tensor.at(mu, ai, ti));
                let via_c = (0..d).fold(q(0), |acc, b| acc + c_t.get(b, ai) * tensor.at(si, b, ti));
                triple.eq(|| format!("{} via τ", boxes_triple(s, a, tt)), &direct, &via_tau);
                triple.eq(|| format!("{} via σ", boxes_triple(s, a, tt)), &direct, &via_sigma);
                triple.eq(|| format!("{} via C", boxes_triple(s, a, tt)), &direct, &via_c);
            }
        }
    }
    triple.done(&mut report);

    report.check_true("R² = I", r.mul(&r).is_identity(), || r.to_string());
    if *t == q(1) {
        report.check_matrix("r = P R P⁻¹ is the mirror", &ops.to_link(&r), &mirror_matrix(n));
    } else {
        // Away from t = 1 the link-basis image of R has off-permutation entries.
        report.skip("r = P R P⁻¹ is the mirror", "specific to t = 1");
    }
    let mut mirror = Family::new("Σ_β A_{σ,β,τ} R^β_α = A_{τ,α,σ}");
    for s in 0..d {
        for tt in 0..d {
            let moved = r.left_apply(&tensor.row(s, tt));
            for (a, v) in moved.into_iter().enumerate() {
                mirror.eq(|| boxes_triple(basis.get(s), basis.get(a), basis.get(tt)), v, tensor.at(tt, a, s).clone());
            }
        }
    }
    mirror.done(&mut report);

    let mut from_psi = Family::new("A(σ,τ) = Ψ C̃(σ) C(τ) C₁^{n-1}");
    for (si, s) in basis.iter().enumerate() {
        for (ti, tt) in basis.iter().enumerate() {
            from_psi.eq(
                || format!("σ={s} τ={tt}"),
                VecShow(ops.a_from_psi(s, tt)),
                VecShow(tensor.row(si, ti)),
            );
        }
    }
    from_psi.done(&mut report);

    for z in [q(0), q(1), q(2), t.clone()] {
        report.check_matrix(
            format!("c_z by K equals c_z by P^ext at z={}", t_label(&z)),
            &ops.to_link(&ops.c_z(&z)),
            &ops.c_z_link_via_pext(&z),
        );
    }

    if t == &q(1) {
        let last = d - 1;
        let c_link = ops.to_link(&c_t);
        let column: Vec<Q> = (0..d).map(|r| c_link.get(r, last).clone()).collect();
        report.check_vec("c^π_{1_n} = 1", &column, &vec![q(1); d]);
        report.check_vec("Σ_ε P^π_{(0,2-ε_1,…)} = 1", &ops.largest_sum_rule(), &vec![q(1); d]);
        let psi = ops.psi_link();
        let next = psi_link(n + 1, t);
        let total = psi.iter().fold(q(0), |acc, v| acc + v);
        report.check_eq("ψ_{1_{n+1}} = Σ_π ψ_π", &next[next.len() - 1], &total);
    } else {
        report.skip("c^π_{1_n} = 1", "specific to t = 1");
    }
    Ok(report.finish(start.elapsed()))
}

/// Recurrences in the sequence and link bases, the shifted summation, and the
/// closed recursion at each sample `t`.
pub fn verify_recurrences(n: usize, ts: &[Q]) -> Result<VerificationReport, HarnessError> {
    let start = Instant::now();
    let labels: Vec<String> = ts.iter().map(t_label).collect();
    let mut report = VerificationReport::new("recurrences", n, &labels.join(","));
    let basis = Basis::new(n);

    for t in ts {
        let tl = t_label(t);
        let ops = operators(n, t)?;
        let psi_big = ops.psi();
        let psi = ops.psi_link();
        let c = ops.c();
        for m in 1..=2u32 {
            let bigger = BracketContext::new(n + m as usize, t.clone());
            let direct: Vec<Q> = basis.iter().map(|a| bigger.psi(&a.embed(m as usize))).collect();
            report.check_vec(format!("Ψ_(α)_m = Ψ C^m [t={tl}][m={m}]"), &c.pow(m).left_apply(&psi_big), &direct);
            report.check_vec(
                format!("Ψ_(α)_m = ⟨∏(1+t u_i)^m⟩_α [t={tl}][m={m}]"),
                &ops.context().psi_shifted_vector(m),
                &direct,
            );
            let next = psi_link(n + m as usize, t);
            let bb = Basis::new(n + m as usize);
            let predicted: Vec<Q> = ops.recurrence_step(&psi, m).into_iter().map(|(_, v)| v).collect();
            let actual: Vec<Q> = basis
                .iter()
                .map(|p| next[bb.index_of(&p.embed(m as usize)).expect("embedded")].clone())
                .collect();
            report.check_vec(format!("ψ_(π)_m = ψ c^m [t={tl}][m={m}]"), &predicted, &actual);
        }
        let next_ops = operators(n + 1, t)?;
        report.check_vec(
            format!("closed recursion to size n+1 [t={tl}]"),
            &recurrence_step_general_t(&next_ops, &psi),
            &next_ops.psi_link(),
        );

        if t == &q(1) {
            // Fill in the remaining patterns by rotation.
            let predicted = ops.recurrence_step(&psi, 1);
            let big = next_ops.basis();
            let full: Option<Vec<Q>> = big
                .iter()
                .map(|d| {
                    let mut p = d.to_link_pattern();
                    for _ in 0..2 * (n + 1) {
                        if p.partner(0) == 2 * n + 1 {
                            let emb = Diagram::from_link_pattern(&p);
                            return predicted.iter().find(|(e, _)| e == &emb).map(|(_, v)| v.clone());
                        }
                        p = p.rotate();
                    }
                    None
                })
                .collect();
            match full {
                Some(full) => report.check_vec("ψ at size n+1 from size n with rotations", &full, &next_ops.psi_link()),
                None => report.fail("ψ at size n+1 from size n with rotations", "a pattern with no outer arc in its orbit".into(), String::new()),
            }
            let gs: Vec<Q> = ground_state(n)
                .map(|v| v.into_iter().map(Q::from_integer).collect())
                .unwrap_or_default();
            report.check_vec("Ψ P⁻¹ equals the loop-model ground state", &psi, &gs);

            let tensor = ops.a_tensor();
            for m in 1..=2i64 {
                let direct = ops.context().psi_shifted_vector(m as u32);
                for k in [-1, 0, 1, n as i64] {
                    report.check_vec(
                        format!("shifted summation [m={m}][k={k:+}]"),
                        &summed(tensor, &basis, m, k),
                        &direct,
                    );
                }
            }
        }
    }
    Ok(report.finish(start.elapsed()))
}

/// Every suite at size `n`; triangle enumeration only up to `n = 3` unless forced.
pub fn verify_all(n: usize, force: bool) -> Result<VerificationReport, HarnessError> {
    let start = Instant::now();
    let mut report = VerificationReport::new("all", n, "1");
    report.absorb(verify_summation(n, -3, n as i64 + 3)?);
    report.absorb(verify_lemma_suite(n)?);
    report.absorb(verify_matrix_suite(n, &q(1))?);
    report.absorb(verify_recurrences(n, &t_samples())?);
    if n <= 4 || force {
        report.absorb(verify_rs(n, force)?);
    } else {
        report.skip("rs", "n > 4; pass --force");
    }
    if n <= 3 || force {
        report.absorb(verify_conjecture1(n, force)?);
    } else {
        report.skip("conjecture1", "n > 3; pass --force");
    }
    Ok(report.finish(start.elapsed()))
}

struct MatrixShow(Matrix<Q>);

impl PartialEq for MatrixShow {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl std::fmt::Display for MatrixShow {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "\n{}", self.0)
    }
}

struct VecShow(Vec<Q>);

impl PartialEq for VecShow {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl std::fmt::Display for VecShow {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&super::show_vec(&self.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_pass(r: VerificationReport) {
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn small_sizes_pass() {
        for n in 1..=2 {
            assert_pass(verify_all(n, false).unwrap());
        }
    }

    #[test]
    fn size_three_suites() {
        assert_pass(verify_conjecture1(3, false).unwrap());
        assert_pass(verify_summation(3, -2, 4).unwrap());
        assert_pass(verify_lemma_suite(3).unwrap());
        assert_pass(verify_matrix_suite(3, &q(1)).unwrap());
        assert_pass(verify_rs(3, false).unwrap());
    }

    #[test]
    fn weights_at_three() {
        assert_eq!(summation_weights(3), [1, -2, 1, 3, -2].map(q).to_vec());
    }

    #[test]
    fn guards_refuse_large_enumerations() {
        assert!(verify_conjecture1(5, false).is_err());
        assert!(verify_rs(6, false).is_err());
    }
}
