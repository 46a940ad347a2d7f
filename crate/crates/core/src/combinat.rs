//! Ferrers diagrams inside the staircase, Dyck paths and link patterns.
//!
//! A diagram of size `n` is stored as its strictly increasing sequence
//! `α_0 < α_1 < … < α_{n-1}` with `0 ≤ α_i ≤ 2i`. The same sequence is the set
//! of up-step positions of a Dyck path of length `2n`; matching every up-step
//! with the down-step that closes it gives the link pattern.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CombinatError {
    #[error("sequence {0:?} is not strictly increasing")]
    NotIncreasing(Vec<i64>),
    #[error("entry {value} at index {index} is outside [0, {bound}]")]
    OutsideStaircase { index: usize, value: i64, bound: i64 },
    #[error("part {part} at index {index} exceeds the staircase bound {bound}")]
    PartOutsideStaircase { index: usize, part: u32, bound: u32 },
    #[error("partition {0:?} is not weakly decreasing")]
    NotAPartition(Vec<u32>),
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("invalid link pattern: {0}")]
    InvalidLinkPattern(String),
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// A Ferrers diagram contained in the staircase `1_n`, as an increasing sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    seq: Vec<u32>,
}

impl Diagram {
    pub fn new(seq: Vec<u32>) -> Result<Self, CombinatError> {
        if seq.is_empty() {
            return Err(CombinatError::Parse {
                input: String::new(),
                reason: "a diagram needs n >= 1".into(),
            });
        }
        for (i, &a) in seq.iter().enumerate() {
            if a as usize > 2 * i {
                return Err(CombinatError::OutsideStaircase {
                    index: i,
                    value: a as i64,
                    bound: 2 * i as i64,
                });
            }
        }
        if seq.windows(2).any(|w| w[0] >= w[1]) {
            return Err(CombinatError::NotIncreasing(
                seq.iter().map(|&a| a as i64).collect(),
            ));
        }
        Ok(Diagram { seq })
    }

    /// The empty diagram `0_n = (0, 1, …, n-1)`.
    pub fn empty(n: usize) -> Self {
        Diagram {
            seq: (0..n as u32).collect(),
        }
    }

    /// The staircase `1_n = (0, 2, …, 2n-2)`.
    pub fn staircase(n: usize) -> Self {
        Diagram {
            seq: (0..n as u32).map(|i| 2 * i).collect(),
        }
    }

    /// Builds `α_i = λ_{n-i} + i` from row lengths `λ_1 ≥ λ_2 ≥ …` padded with zeroes.
    pub fn from_partition(parts: &[u32], n: usize) -> Result<Self, CombinatError> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(CombinatError::NotAPartition(parts.to_vec()));
        }
        let nonzero: Vec<u32> = parts.iter().copied().filter(|&p| p > 0).collect();
        for (i, &p) in nonzero.iter().enumerate() {
            let bound = n.saturating_sub(i + 1) as u32;
            if p > bound {
                return Err(CombinatError::PartOutsideStaircase {
                    index: i,
                    part: p,
                    bound,
                });
            }
        }
        let mut padded = vec![0u32; n];
        padded[..nonzero.len()].copy_from_slice(&nonzero);
        let seq = (0..n).map(|i| padded[n - 1 - i] + i as u32).collect();
        Diagram::new(seq)
    }

    pub fn n(&self) -> usize {
        self.seq.len()
    }

    pub fn seq(&self) -> &[u32] {
        &self.seq
    }

    /// Row lengths, largest first, zero rows dropped.
    pub fn partition(&self) -> Vec<u32> {
        let mut rows: Vec<u32> = self
            .seq
            .iter()
            .enumerate()
            .map(|(i, &a)| a - i as u32)
            .filter(|&r| r > 0)
            .collect();
        rows.reverse();
        rows
    }

    /// Number of boxes `|α| = Σ (α_i - i)`.
    pub fn boxes(&self) -> usize {
        self.seq
            .iter()
            .enumerate()
            .map(|(i, &a)| a as usize - i)
            .sum()
    }

    pub fn is_empty_diagram(&self) -> bool {
        self.boxes() == 0
    }

    /// Inclusion of Ferrers diagrams: `self ⊆ other`.
    pub fn is_inside(&self, other: &Diagram) -> Result<bool, CombinatError> {
        if self.n() != other.n() {
            return Err(CombinatError::SizeMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        Ok(self.seq.iter().zip(&other.seq).all(|(a, b)| a <= b))
    }

    /// The transposed diagram: ordered complement of `{2n-1-α_i}` in `{0, …, 2n-1}`.
    pub fn transpose(&self) -> Diagram {
        let n = self.n() as u32;
        let mut mirrored = vec![false; 2 * n as usize];
        for &a in &self.seq {
            mirrored[(2 * n - 1 - a) as usize] = true;
        }
        let seq = (0..2 * n).filter(|&x| !mirrored[x as usize]).collect();
        Diagram { seq }
    }

    pub fn to_link_pattern(&self) -> LinkPattern {
        let n = self.n();
        let mut is_up = vec![false; 2 * n];
        for &a in &self.seq {
            is_up[a as usize] = true;
        }
        let mut partner = vec![0usize; 2 * n];
        let mut open = Vec::with_capacity(n);
        for (p, &up) in is_up.iter().enumerate() {
            if up {
                open.push(p);
            } else {
                let o = open.pop().expect("Dyck path dips below the axis");
                partner[o] = p;
                partner[p] = o;
            }
        }
        LinkPattern { partner }
    }

    pub fn from_link_pattern(pi: &LinkPattern) -> Diagram {
        let seq = (0..pi.points())
            .filter(|&i| i < pi.partner(i))
            .map(|i| i as u32)
            .collect();
        Diagram { seq }
    }

    /// `(α)_m = (0, 1, …, m-1, m+α_0, …, m+α_{n-1})` in `A_{n+m}`.
    pub fn embed(&self, m: usize) -> Diagram {
        let m32 = m as u32;
        let seq = (0..m32).chain(self.seq.iter().map(|&a| a + m32)).collect();
        Diagram { seq }
    }

    /// Inverse of [`Diagram::embed`] when `self` starts with `0, …, m-1` and
    /// otherwise `None`.
    pub fn unembed(&self, m: usize) -> Option<Diagram> {
        if self.n() <= m || self.seq[..m].iter().enumerate().any(|(i, &a)| a != i as u32) {
            return None;
        }
        let seq: Vec<u32> = self.seq[m..].iter().map(|&a| a - m as u32).collect();
        Diagram::new(seq).ok()
    }

    pub fn as_general(&self) -> GeneralSequence {
        GeneralSequence {
            seq: self.seq.iter().map(|&a| a as i64).collect(),
        }
    }

    /// Parses `"0,1,3"` (an increasing sequence) or `"p:2,1"` (a partition, padded to `n`).
    pub fn parse(s: &str, n: usize) -> Result<Diagram, CombinatError> {
        let s = s.trim();
        let bad = |reason: &str| CombinatError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        if let Some(rest) = s.strip_prefix("p:") {
            let parts = parse_list(rest).map_err(|_| bad("expected comma-separated parts"))?;
            return Diagram::from_partition(&parts, n);
        }
        let seq = parse_list(s).map_err(|_| bad("expected comma-separated integers"))?;
        if seq.len() != n {
            return Err(CombinatError::SizeMismatch {
                left: seq.len(),
                right: n,
            });
        }
        Diagram::new(seq)
    }
}

fn parse_list(s: &str) -> Result<Vec<u32>, std::num::ParseIntError> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|x| x.trim().parse()).collect()
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.seq.iter().map(|a| a.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// `contains(α, β)`: true iff `α_i ≤ β_i` for all `i`.
pub fn contains(alpha: &Diagram, beta: &Diagram) -> Result<bool, CombinatError> {
    alpha.is_inside(beta)
}

/// An arbitrary integer sequence with `α_i ≤ 2i` (entries may repeat or be negative).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneralSequence {
    seq: Vec<i64>,
}

impl GeneralSequence {
    pub fn new(seq: Vec<i64>) -> Result<Self, CombinatError> {
        for (i, &a) in seq.iter().enumerate() {
            if a > 2 * i as i64 {
                return Err(CombinatError::OutsideStaircase {
                    index: i,
                    value: a,
                    bound: 2 * i as i64,
                });
            }
        }
        Ok(GeneralSequence { seq })
    }

    pub fn n(&self) -> usize {
        self.seq.len()
    }

    pub fn seq(&self) -> &[i64] {
        &self.seq
    }

    pub fn has_negative(&self) -> bool {
        self.seq.iter().any(|&a| a < 0)
    }

    pub fn is_non_decreasing(&self) -> bool {
        self.seq.windows(2).all(|w| w[0] <= w[1])
    }

    /// The diagram this sequence denotes, when it is strictly increasing and non-negative.
    pub fn as_diagram(&self) -> Option<Diagram> {
        if self.has_negative() {
            return None;
        }
        Diagram::new(self.seq.iter().map(|&a| a as u32).collect()).ok()
    }
}

impl fmt::Display for GeneralSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.seq.iter().map(|a| a.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// A noncrossing perfect matching of the points `0, …, 2n-1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinkPattern {
    partner: Vec<usize>,
}

impl LinkPattern {
    pub fn new(partner: Vec<usize>) -> Result<Self, CombinatError> {
        let len = partner.len();
        if len == 0 || !len.is_multiple_of(2) {
            return Err(CombinatError::InvalidLinkPattern(format!(
                "odd or empty number of points ({len})"
            )));
        }
        for (i, &j) in partner.iter().enumerate() {
            if j >= len || j == i || partner[j] != i {
                return Err(CombinatError::InvalidLinkPattern(format!(
                    "point {i} is not properly paired"
                )));
            }
        }
        for i in 0..len {
            let j = partner[i];
            if i < j {
                for k in i + 1..j {
                    let l = partner[k];
                    if l < i || l > j {
                        return Err(CombinatError::InvalidLinkPattern(format!(
                            "arcs ({i},{j}) and ({k},{l}) cross"
                        )));
                    }
                }
            }
        }
        Ok(LinkPattern { partner })
    }

    /// Builds a pattern from a list of pairs.
    pub fn from_pairs(points: usize, pairs: &[(usize, usize)]) -> Result<Self, CombinatError> {
        let mut partner = vec![usize::MAX; points];
        for &(a, b) in pairs {
            if a >= points || b >= points {
                return Err(CombinatError::InvalidLinkPattern(format!(
                    "pair ({a},{b}) out of range"
                )));
            }
            partner[a] = b;
            partner[b] = a;
        }
        LinkPattern::new(partner)
    }

    pub fn n(&self) -> usize {
        self.partner.len() / 2
    }

    pub fn points(&self) -> usize {
        self.partner.len()
    }

    pub fn partner(&self, i: usize) -> usize {
        self.partner[i]
    }

    pub fn partners(&self) -> &[usize] {
        &self.partner
    }

    /// Pairs `(i, j)` with `i < j`, sorted by `i`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.points())
            .filter(|&i| i < self.partner[i])
            .map(|i| (i, self.partner[i]))
            .collect()
    }

    /// Relabels every point by `i ↦ i+1 mod 2n`.
    pub fn rotate(&self) -> LinkPattern {
        let len = self.points();
        let mut partner = vec![0; len];
        for i in 0..len {
            partner[(i + 1) % len] = (self.partner[i] + 1) % len;
        }
        LinkPattern { partner }
    }

    /// Relabels every point by `i ↦ 2n-1-i`.
    pub fn mirror(&self) -> LinkPattern {
        let len = self.points();
        let mut partner = vec![0; len];
        for i in 0..len {
            partner[len - 1 - i] = len - 1 - self.partner[i];
        }
        LinkPattern { partner }
    }
}

impl fmt::Display for LinkPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .pairs()
            .iter()
            .map(|(a, b)| format!("({a},{b})"))
            .collect();
        write!(f, "{}", parts.join(""))
    }
}

pub fn catalan(n: usize) -> usize {
    let mut c: u128 = 1;
    for k in 0..n as u128 {
        c = c * 2 * (2 * k + 1) / (k + 2);
    }
    c as usize
}

/// All diagrams of `A_n`, graded by number of boxes and then by
/// lexicographic order of the row lengths; this refines inclusion.
pub fn enumerate_basis(n: usize) -> Vec<Diagram> {
    fn rec(n: usize, seq: &mut Vec<u32>, out: &mut Vec<Diagram>) {
        let i = seq.len();
        if i == n {
            out.push(Diagram { seq: seq.clone() });
            return;
        }
        let lo = seq.last().map_or(0, |&a| a + 1);
        for a in lo..=2 * i as u32 {
            seq.push(a);
            rec(n, seq, out);
            seq.pop();
        }
    }
    let mut out = Vec::with_capacity(catalan(n));
    if n > 0 {
        rec(n, &mut Vec::with_capacity(n), &mut out);
    }
    out.sort_by(|a, b| {
        a.boxes()
            .cmp(&b.boxes())
            .then_with(|| a.partition().cmp(&b.partition()))
    });
    out
}

/// The ordered basis `A_n` with an index lookup.
#[derive(Debug, Clone)]
pub struct Basis {
    n: usize,
    diagrams: Vec<Diagram>,
    index: HashMap<Diagram, usize>,
}

impl Basis {
    pub fn new(n: usize) -> Self {
        let diagrams = enumerate_basis(n);
        let index = diagrams
            .iter()
            .enumerate()
            .map(|(i, d)| (d.clone(), i))
            .collect();
        Basis {
            n,
            diagrams,
            index,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.diagrams.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diagrams.is_empty()
    }

    pub fn diagrams(&self) -> &[Diagram] {
        &self.diagrams
    }

    pub fn get(&self, i: usize) -> &Diagram {
        &self.diagrams[i]
    }

    pub fn index_of(&self, d: &Diagram) -> Option<usize> {
        self.index.get(d).copied()
    }

    pub fn index_of_pattern(&self, pi: &LinkPattern) -> Option<usize> {
        self.index_of(&Diagram::from_link_pattern(pi))
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Diagram> {
        self.diagrams.iter()
    }

    pub fn labels(&self) -> Vec<String> {
        self.diagrams.iter().map(|d| d.to_string()).collect()
    }
}

impl PartialEq for Basis {
    fn eq(&self, other: &Self) -> bool {
        self.diagrams == other.diagrams
    }
}
