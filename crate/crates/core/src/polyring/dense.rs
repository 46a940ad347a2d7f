use std::sync::Arc;

use super::{Coeff, MultiPoly};

/// Shape of a box of exponent vectors `0 ≤ e_i ≤ caps[i]`, flattened in mixed radix.
///
/// Because the layout is mixed radix, the flat index of `a + b` is the sum of
/// the flat indices of `a` and `b` whenever `a + b` stays inside the box.
#[derive(Debug, PartialEq, Eq)]
pub struct BoxShape {
    caps: Vec<u32>,
    strides: Vec<usize>,
    size: usize,
}

impl BoxShape {
    pub fn new(caps: Vec<u32>) -> Arc<Self> {
        let mut strides = vec![0; caps.len()];
        let mut size = 1usize;
        for (i, &c) in caps.iter().enumerate() {
            strides[i] = size;
            size *= c as usize + 1;
        }
        Arc::new(BoxShape {
            caps,
            strides,
            size,
        })
    }

    /// The caps `(0, 2, 4, …, 2(n-1))` used for every bracket of size `n`.
    pub fn staircase(n: usize) -> Arc<Self> {
        BoxShape::new((0..n as u32).map(|i| 2 * i).collect())
    }

    pub fn caps(&self) -> &[u32] {
        &self.caps
    }

    pub fn nvars(&self) -> usize {
        self.caps.len()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn contains(&self, e: &[u32]) -> bool {
        e.iter().zip(&self.caps).all(|(a, b)| a <= b)
    }

    pub fn index(&self, e: &[u32]) -> usize {
        e.iter()
            .zip(&self.strides)
            .map(|(&a, &s)| a as usize * s)
            .sum()
    }

    pub fn digit(&self, idx: usize, var: usize) -> u32 {
        ((idx / self.strides[var]) % (self.caps[var] as usize + 1)) as u32
    }

    pub fn exponents(&self, idx: usize) -> Vec<u32> {
        (0..self.nvars()).map(|v| self.digit(idx, v)).collect()
    }

    /// Calls `f(offset)` for every exponent vector `e ≤ bound`, where `offset`
    /// is the flat index of `e`.
    pub fn for_each_below(&self, bound: &[u32], mut f: impl FnMut(usize)) {
        let n = self.nvars();
        let mut digits = vec![0u32; n];
        let mut offset = 0usize;
        loop {
            f(offset);
            let mut v = 0;
            loop {
                if v == n {
                    return;
                }
                if digits[v] < bound[v] {
                    digits[v] += 1;
                    offset += self.strides[v];
                    break;
                }
                offset -= digits[v] as usize * self.strides[v];
                digits[v] = 0;
                v += 1;
            }
        }
    }
}

/// Dense polynomial truncated to a box of exponents.
#[derive(Clone, Debug, PartialEq)]
pub struct BoxPoly<R: Coeff> {
    shape: Arc<BoxShape>,
    data: Vec<R>,
}

impl<R: Coeff> BoxPoly<R> {
    pub fn zero(shape: Arc<BoxShape>) -> Self {
        let data = vec![R::zero(); shape.size()];
        BoxPoly { shape, data }
    }

    pub fn one(shape: Arc<BoxShape>) -> Self {
        let mut p = BoxPoly::zero(shape);
        p.data[0] = R::one();
        p
    }

    pub fn from_multipoly(shape: Arc<BoxShape>, p: &MultiPoly<R>) -> Self {
        assert_eq!(shape.nvars(), p.nvars());
        let mut out = BoxPoly::<R>::zero(shape);
        for (e, c) in p.terms() {
            if out.shape.contains(e) {
                let i = out.shape.index(e);
                out.data[i].add_in(c);
            }
        }
        out
    }

    pub fn to_multipoly(&self) -> MultiPoly<R> {
        let terms = self
            .data
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.shape.exponents(i), c.clone()));
        MultiPoly::from_terms(self.shape.nvars(), terms).with_caps(self.shape.caps().to_vec())
    }

    pub fn shape(&self) -> &Arc<BoxShape> {
        &self.shape
    }

    pub fn data(&self) -> &[R] {
        &self.data
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|c| !c.is_zero()).count()
    }

    /// Coefficient of `u^e`; zero for negative exponents, `None` beyond the caps.
    pub fn coefficient(&self, e: &[i64]) -> Option<R> {
        if e.iter().any(|&a| a < 0) {
            return Some(R::zero());
        }
        let e: Vec<u32> = e.iter().map(|&a| a as u32).collect();
        if !self.shape.contains(&e) {
            return None;
        }
        Some(self.data[self.shape.index(&e)].clone())
    }

    pub fn get(&self, e: &[u32]) -> &R {
        &self.data[self.shape.index(e)]
    }

    pub fn add_at(&mut self, e: &[u32], c: &R) {
        let i = self.shape.index(e);
        self.data[i].add_in(c);
    }

    pub fn add_assign(&mut self, other: &Self) {
        assert_eq!(self.shape, other.shape);
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                a.add_in(b);
            }
        }
    }

    pub fn scale(&self, k: &R) -> Self {
        BoxPoly {
            shape: self.shape.clone(),
            data: self.data.iter().map(|c| c.mul_ref(k)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.shape, other.shape);
        let shape = &self.shape;
        let mut out = BoxPoly::<R>::zero(shape.clone());
        let other_nz: Vec<(usize, Vec<u32>)> = other
            .data
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| (i, shape.exponents(i)))
            .collect();
        let mut room = vec![0u32; shape.nvars()];
        for (ia, ca) in self.data.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            let ea = shape.exponents(ia);
            for (v, r) in room.iter_mut().enumerate() {
                *r = shape.caps[v] - ea[v];
            }
            for (ib, eb) in &other_nz {
                if eb.iter().zip(&room).all(|(a, b)| a <= b) {
                    out.data[ia + ib].fma_in(ca, &other.data[*ib]);
                }
            }
        }
        out
    }

    /// Product with a sparse polynomial, truncated to the box.
    pub fn mul_sparse(&self, factor: &MultiPoly<R>) -> Self {
        let shape = &self.shape;
        let mut out = BoxPoly::<R>::zero(shape.clone());
        let terms: Vec<(Vec<u32>, usize, &R)> = factor
            .terms()
            .filter(|(e, _)| shape.contains(e))
            .map(|(e, c)| (e.clone(), shape.index(e), c))
            .collect();
        for (ia, ca) in self.data.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            let ea = shape.exponents(ia);
            for (eb, ib, cb) in &terms {
                if ea
                    .iter()
                    .zip(eb)
                    .zip(&shape.caps)
                    .all(|((a, b), c)| a + b <= *c)
                {
                    out.data[ia + ib].fma_in(ca, cb);
                }
            }
        }
        out
    }

    /// Multiplies by the geometric series `1/(1 - u_i u_j)` (or `1/(1 - u_i^2)` when `i = j`).
    pub fn mul_geometric(&mut self, i: usize, j: usize) {
        let shape = self.shape.clone();
        let step = shape.strides[i] + shape.strides[j];
        for idx in 0..shape.size() {
            let di = shape.digit(idx, i);
            let dj = shape.digit(idx, j);
            let ok = if i == j { di >= 2 } else { di >= 1 && dj >= 1 };
            if ok {
                let (lo, hi) = self.data.split_at_mut(idx);
                hi[0].add_in(&lo[idx - step]);
            }
        }
    }

    /// Applies `u_i ↦ u_i / (1 + t u_i)` to every variable, truncating at the caps.
    ///
    /// Uses `(u/(1+tu))^m = Σ_k C(m+k-1, k) (-t)^k u^{m+k}` for `m ≥ 1`.
    pub fn substitute_moebius(&self, t: &R) -> Self {
        let shape = self.shape.clone();
        let maxcap = shape.caps.iter().copied().max().unwrap_or(0) as usize;
        let neg_t = t.neg_ref();
        let neg_t_pow: Vec<R> = (0..=maxcap).map(|k| neg_t.pow(k as u32)).collect();
        // binom[a][b] = C(a, b) for a ≤ 2 maxcap.
        let top = 2 * maxcap + 1;
        let mut binom = vec![vec![0i64; top + 1]; top + 1];
        for a in 0..=top {
            binom[a][0] = 1;
            for b in 1..=a {
                binom[a][b] = binom[a - 1][b - 1] + binom[a - 1][b];
            }
        }
        let mut cur = self.clone();
        for v in 0..shape.nvars() {
            let cap = shape.caps[v];
            let stride = shape.strides[v];
            let mut next = BoxPoly::<R>::zero(shape.clone());
            for idx in 0..shape.size() {
                let c = &cur.data[idx];
                if c.is_zero() {
                    continue;
                }
                let m = shape.digit(idx, v);
                if m == 0 {
                    next.data[idx].add_in(c);
                    continue;
                }
                for k in 0..=(cap - m) as usize {
                    let w = R::from_i64(binom[m as usize + k - 1][k]).mul_ref(&neg_t_pow[k]);
                    if !w.is_zero() {
                        next.data[idx + k * stride].fma_in(c, &w);
                    }
                }
            }
            cur = next;
        }
        cur
    }

    /// `Σ_{m ≤ α} self[m] · other[α - m]`, the coefficient of `u^α` in the product.
    pub fn product_coefficient(&self, other: &Self, alpha: &[u32]) -> R {
        let shape = &self.shape;
        let ia = shape.index(alpha);
        let mut acc = R::zero();
        shape.for_each_below(alpha, |im| {
            let c = &self.data[im];
            if !c.is_zero() {
                acc.fma_in(c, &other.data[ia - im]);
            }
        });
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{loop_weight, one_plus_u_power, vandermonde, TPoly};
    use num_bigint::BigInt;

    #[test]
    fn dense_product_matches_sparse_truncation() {
        let shape = BoxShape::staircase(3);
        let a = vandermonde::<BigInt>(3);
        let b = loop_weight::<BigInt>(3, &BigInt::from(1));
        let dense = BoxPoly::from_multipoly(shape.clone(), &a)
            .mul(&BoxPoly::from_multipoly(shape.clone(), &b));
        let sparse = a.mul(&b).unwrap().with_caps(shape.caps().to_vec());
        assert_eq!(dense.to_multipoly(), sparse);
        let via_sparse = BoxPoly::from_multipoly(shape.clone(), &a).mul_sparse(&b);
        assert_eq!(via_sparse, dense);
    }

    #[test]
    fn product_coefficient_agrees() {
        let shape = BoxShape::staircase(3);
        let a = BoxPoly::from_multipoly(shape.clone(), &one_plus_u_power::<BigInt>(3, 2));
        let b = BoxPoly::from_multipoly(shape.clone(), &vandermonde::<BigInt>(3));
        let full = a.mul(&b);
        shape.for_each_below(&[0, 2, 4], |i| {
            let e = shape.exponents(i);
            assert_eq!(&a.product_coefficient(&b, &e), full.get(&e));
        });
    }

    #[test]
    fn geometric_series() {
        let shape = BoxShape::new(vec![4, 4]);
        let mut p = BoxPoly::<BigInt>::one(shape.clone());
        p.mul_geometric(0, 1);
        p.mul_geometric(0, 0);
        // 1/((1-xy)(1-x^2)): coefficient of x^4 y^2 counts a + 2b = 4 with a = 2 → 1.
        assert_eq!(p.get(&[4, 2]), &BigInt::from(1));
        assert_eq!(p.get(&[4, 0]), &BigInt::from(1));
        assert_eq!(p.get(&[3, 1]), &BigInt::from(1));
        assert_eq!(p.get(&[3, 0]), &BigInt::from(0));
    }

    #[test]
    fn moebius_substitution_roundtrip() {
        // u/(1+tu) composed with u/(1-tu) is the identity.
        let shape = BoxShape::new(vec![5, 3]);
        let p = BoxPoly::from_multipoly(shape.clone(), &one_plus_u_power::<TPoly>(2, 3));
        let t = TPoly::t();
        let back = p.substitute_moebius(&t).substitute_moebius(&t.neg_ref());
        assert_eq!(back, p);
        let once = BoxPoly::from_multipoly(shape, &MultiPoly::var(2, 0))
            .substitute_moebius(&BigInt::from(1));
        assert_eq!(once.get(&[3, 0]), &BigInt::from(1));
        assert_eq!(once.get(&[2, 0]), &BigInt::from(-1));
    }

    #[test]
    fn odometer_visits_every_point_once() {
        let shape = BoxShape::new(vec![2, 1, 3]);
        let mut seen = vec![0; shape.size()];
        shape.for_each_below(&[2, 1, 3], |i| seen[i] += 1);
        assert!(seen.iter().all(|&c| c == 1));
        let mut count = 0;
        shape.for_each_below(&[1, 0, 2], |_| count += 1);
        assert_eq!(count, 6);
    }
}
