use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Coeff, PolyError};

/// Sparse polynomial in `u_0, …, u_{nvars-1}` over an exact ring.
///
/// When `caps` is set, every monomial with `e_i > caps[i]` for some `i` is
/// discarded at construction and after every product.
#[derive(Clone, PartialEq, Debug)]
pub struct MultiPoly<R: Coeff> {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, R>,
    caps: Option<Vec<u32>>,
}

impl<R: Coeff> MultiPoly<R> {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
            caps: None,
        }
    }

    pub fn constant(nvars: usize, c: R) -> Self {
        let mut p = MultiPoly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        MultiPoly::constant(nvars, R::one())
    }

    /// The variable `u_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        MultiPoly::monomial(e, R::one())
    }

    pub fn monomial(exps: Vec<u32>, c: R) -> Self {
        let mut p = MultiPoly::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, R)>) -> Self {
        let mut p = MultiPoly::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector of wrong length");
            p.add_term(e, c);
        }
        p
    }

    /// Restricts to the given per-variable degree bounds, dropping the excess.
    pub fn with_caps(mut self, caps: Vec<u32>) -> Self {
        assert_eq!(caps.len(), self.nvars);
        self.terms
            .retain(|e, _| e.iter().zip(&caps).all(|(a, b)| a <= b));
        self.caps = Some(caps);
        self
    }

    pub fn caps(&self) -> Option<&[u32]> {
        self.caps.as_deref()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &R)> {
        self.terms.iter()
    }

    fn fits(&self, e: &[u32]) -> bool {
        self.caps
            .as_ref()
            .is_none_or(|caps| e.iter().zip(caps).all(|(a, b)| a <= b))
    }

    fn add_term(&mut self, e: Vec<u32>, c: R) {
        if c.is_zero() || !self.fits(&e) {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().add_in(&c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check(&self, other: &Self) -> Result<(), PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::NvarsMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    fn merged_caps(&self, other: &Self) -> Option<Vec<u32>> {
        match (&self.caps, &other.caps) {
            (None, None) => None,
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (Some(a), Some(b)) => Some(a.iter().zip(b).map(|(x, y)| *x.min(y)).collect()),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        let mut out = self.clone();
        out.caps = self.merged_caps(other);
        if let Some(c) = out.caps.clone() {
            out = out.with_caps(c);
        }
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.neg_ref()))
                .collect(),
            caps: self.caps.clone(),
        }
    }

    pub fn scale(&self, k: &R) -> Self {
        let mut out = MultiPoly {
            nvars: self.nvars,
            terms: BTreeMap::new(),
            caps: self.caps.clone(),
        };
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.mul_ref(k));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        let mut out = MultiPoly {
            nvars: self.nvars,
            terms: BTreeMap::new(),
            caps: self.merged_caps(other),
        };
        let mut e = vec![0u32; self.nvars];
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                for i in 0..self.nvars {
                    e[i] = ea[i] + eb[i];
                }
                if out.fits(&e) {
                    out.add_term(e.clone(), ca.mul_ref(cb));
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = MultiPoly::one(self.nvars);
        acc.caps = self.caps.clone();
        for _ in 0..k {
            acc = acc.mul(self).expect("same number of variables");
        }
        acc
    }

    /// Coefficient of `∏ u_i^{e_i}`; zero when some exponent is negative.
    pub fn coefficient_of(&self, expo: &[i64]) -> Result<R, PolyError> {
        if expo.len() != self.nvars {
            return Err(PolyError::LengthMismatch {
                expected: self.nvars,
                got: expo.len(),
            });
        }
        if expo.iter().any(|&a| a < 0) {
            return Ok(R::zero());
        }
        let key: Vec<u32> = expo.iter().map(|&a| a as u32).collect();
        if let Some(caps) = &self.caps {
            if key.iter().zip(caps).any(|(a, b)| a > b) {
                return Err(PolyError::CapViolation {
                    expo: expo.to_vec(),
                    caps: caps.clone(),
                });
            }
        }
        Ok(self.terms.get(&key).cloned().unwrap_or_else(R::zero))
    }

    /// `p(u_{perm[0]}, …, u_{perm[n-1]})`.
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        let mut out = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut f = vec![0; self.nvars];
            for (i, &p) in perm.iter().enumerate() {
                f[p] += e[i];
            }
            out.add_term(f, c.clone());
        }
        out.caps = self.caps.clone();
        out
    }

    /// Symmetric under exchanging each pair of adjacent variables.
    pub fn is_symmetric(&self) -> bool {
        (0..self.nvars.saturating_sub(1)).all(|i| {
            let mut perm: Vec<usize> = (0..self.nvars).collect();
            perm.swap(i, i + 1);
            let q = self.permute_vars(&perm);
            q.terms == self.terms
        })
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn map_coeffs<S: Coeff>(&self, f: impl Fn(&R) -> S) -> MultiPoly<S> {
        let mut out = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out.caps = self.caps.clone();
        out
    }

    /// Monomials in graded lexicographic order.
    pub fn sorted_terms(&self) -> Vec<(&Vec<u32>, &R)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            da.cmp(&db).then_with(|| a.0.cmp(b.0))
        });
        v
    }
}

impl MultiPoly<BigRational> {
    /// `(1/n!) Σ_P sign(P) p(u_{P(0)}, …)`.
    pub fn antisymmetrize(&self) -> Self {
        let n = self.nvars;
        let mut acc = MultiPoly::zero(n);
        let mut count: i64 = 0;
        for (perm, sign) in permutations_with_sign(n) {
            let q = self.permute_vars(&perm);
            let q = if sign > 0 { q } else { q.neg() };
            acc = acc.add(&q).expect("same number of variables");
            count += 1;
        }
        let inv = BigRational::new(BigInt::from(1), BigInt::from(count));
        let mut out = acc.scale(&inv);
        out.caps = self.caps.clone();
        out
    }
}

/// All permutations of `0..n` with their signs, by Heap's algorithm.
pub fn permutations_with_sign(n: usize) -> Vec<(Vec<usize>, i32)> {
    let mut a: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    let mut sign = 1;
    let mut out = vec![(a.clone(), sign)];
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            sign = -sign;
            out.push((a.clone(), sign));
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// `Δ(u) = ∏_{i<j} (u_j - u_i)`.
pub fn vandermonde<R: Coeff>(n: usize) -> MultiPoly<R> {
    let mut acc = MultiPoly::one(n);
    for j in 0..n {
        for i in 0..j {
            let f = MultiPoly::var(n, j).sub(&MultiPoly::var(n, i)).unwrap();
            acc = acc.mul(&f).unwrap();
        }
    }
    acc
}

/// `∏_{i<j} (1 + t u_j + u_i u_j)`.
pub fn loop_weight<R: Coeff>(n: usize, t: &R) -> MultiPoly<R> {
    let mut acc = MultiPoly::one(n);
    for j in 0..n {
        for i in 0..j {
            let mut uiuj = vec![0; n];
            uiuj[i] = 1;
            uiuj[j] = 1;
            let mut uj = vec![0; n];
            uj[j] = 1;
            let f = MultiPoly::from_terms(
                n,
                [(vec![0; n], R::one()), (uj, t.clone()), (uiuj, R::one())],
            );
            acc = acc.mul(&f).unwrap();
        }
    }
    acc
}

/// `∏_i (1 + u_i)^k`.
pub fn one_plus_u_power<R: Coeff>(n: usize, k: u32) -> MultiPoly<R> {
    let mut acc = MultiPoly::one(n);
    for i in 0..n {
        let f = MultiPoly::one(n).add(&MultiPoly::var(n, i)).unwrap();
        acc = acc.mul(&f.pow(k)).unwrap();
    }
    acc
}

impl<R: Coeff> fmt::Display for MultiPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .sorted_terms()
            .into_iter()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &a)| a > 0)
                    .map(|(i, &a)| format!("u{i}^{a}"))
                    .collect();
                if mono.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c}) * {}", mono.join(" "))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
