//! Permutations of `{0, .., d-1}` and finite quotients of `BS(m, n)` in
//! symmetric groups.
//!
//! Products are read left to right: `p.then(q)` sends `i` to `q(p(i))`, so a
//! word evaluates letter by letter in reading order.

use std::fmt;

use crate::bs::{equal, BsPresentation};
use crate::error::{Error, Result};
use crate::word::{Gen, GroupWord};

/// Degree bound used when the caller gives none.
pub const DEFAULT_MAX_DEGREE: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(d: usize) -> Self {
        Permutation((0..d).collect())
    }

    /// From 0-based images; fails unless `images` is a bijection.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let d = images.len();
        let mut seen = vec![false; d];
        for &i in &images {
            if i >= d || std::mem::replace(&mut seen[i], true) {
                return Err(Error::Malformed(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Permutation(images))
    }

    /// Parses 1-based one-line notation, e.g. `2 3 1`.
    pub fn parse_one_line(text: &str) -> Result<Self> {
        let images = text
            .split_whitespace()
            .map(|t| match t.parse::<usize>() {
                Ok(v) if v >= 1 => Ok(v - 1),
                _ => Err(Error::Malformed(format!("bad permutation entry {t:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&i| next.0[i]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v] = i;
        }
        Permutation(inv)
    }

    pub fn pow(&self, e: i64) -> Permutation {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.then(&sq);
            }
            sq = sq.then(&sq);
            k >>= 1;
        }
        acc
    }

    /// `g⁻¹ self g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        g.inverse().then(self).then(g)
    }

    /// Sorted cycle lengths, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let d = self.degree();
        let mut seen = vec![false; d];
        let mut lens = Vec::new();
        for start in 0..d {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i];
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable();
        lens
    }
}

impl fmt::Display for Permutation {
    /// 1-based one-line notation.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, &v) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", v + 1)?;
        }
        Ok(())
    }
}

/// Rearranges `p` into its lexicographic successor; false at the last one.
fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len())
        .rev()
        .find(|&j| p[j] > p[i - 1])
        .expect("pivot has a successor");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// All permutations of degree `d` in lexicographic order of one-line notation.
pub fn all_permutations(d: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..d).collect();
    let mut out = vec![cur.clone()];
    while next_permutation(&mut cur) {
        out.push(cur.clone());
    }
    out
}

/// Images of `a` and `b` in a symmetric group satisfying the defining relation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PermutationPair {
    alpha: Permutation,
    beta: Permutation,
}

fn relation_holds(alpha: &Permutation, beta: &Permutation, p: &BsPresentation) -> bool {
    alpha.pow(p.m()).conjugate_by(beta) == alpha.pow(p.n())
}

impl PermutationPair {
    /// Checks `β⁻¹ αᵐ β = αⁿ`.
    pub fn new(alpha: Permutation, beta: Permutation, p: &BsPresentation) -> Result<Self> {
        if alpha.degree() != beta.degree() {
            return Err(Error::Malformed(
                "alpha and beta have different degrees".into(),
            ));
        }
        if !relation_holds(&alpha, &beta, p) {
            return Err(Error::Precondition(format!(
                "({alpha}), ({beta}) do not satisfy the relation of {p}"
            )));
        }
        Ok(PermutationPair { alpha, beta })
    }

    pub fn degree(&self) -> usize {
        self.alpha.degree()
    }

    pub fn alpha(&self) -> &Permutation {
        &self.alpha
    }

    pub fn beta(&self) -> &Permutation {
        &self.beta
    }

    pub fn satisfies(&self, p: &BsPresentation) -> bool {
        relation_holds(&self.alpha, &self.beta, p)
    }
}

/// Substitutes `α` for `a` and `β` for `b`.
pub fn eval_word_perm(w: &GroupWord, pp: &PermutationPair) -> Permutation {
    w.syllables()
        .iter()
        .fold(Permutation::identity(pp.degree()), |acc, s| {
            let gen = match s.letter {
                Gen::A => &pp.alpha,
                Gen::B => &pp.beta,
            };
            acc.then(&gen.pow(s.exp))
        })
}

/// Lazily enumerates the pairs of degree `d` satisfying the relation, in
/// lexicographic order of `(alpha, beta)`.
pub struct PermQuotients {
    p: BsPresentation,
    perms: Vec<Permutation>,
    alpha_idx: usize,
    beta_idx: usize,
    target: Option<(Permutation, Permutation)>,
}

impl PermQuotients {
    pub fn new(p: BsPresentation, d: usize) -> Self {
        let perms = all_permutations(d).into_iter().map(Permutation).collect();
        PermQuotients {
            p,
            perms,
            alpha_idx: 0,
            beta_idx: 0,
            target: None,
        }
    }
}

impl Iterator for PermQuotients {
    type Item = PermutationPair;

    fn next(&mut self) -> Option<PermutationPair> {
        while self.alpha_idx < self.perms.len() {
            if self.target.is_none() {
                let alpha = &self.perms[self.alpha_idx];
                let am = alpha.pow(self.p.m());
                let an = alpha.pow(self.p.n());
                // conjugate permutations share a cycle type
                if am.cycle_type() != an.cycle_type() {
                    self.alpha_idx += 1;
                    continue;
                }
                self.target = Some((am, an));
                self.beta_idx = 0;
            }
            let (am, an) = self.target.as_ref().expect("set above");
            while self.beta_idx < self.perms.len() {
                let beta = &self.perms[self.beta_idx];
                self.beta_idx += 1;
                // β⁻¹ αᵐ β = αⁿ  ⇔  αᵐ β = β αⁿ
                if am.then(beta) == beta.then(an) {
                    return Some(PermutationPair {
                        alpha: self.perms[self.alpha_idx].clone(),
                        beta: beta.clone(),
                    });
                }
            }
            self.target = None;
            self.alpha_idx += 1;
        }
        None
    }
}

/// The first `limit` quotient pairs of degree `d`.
pub fn find_perm_quotients(
    p: &BsPresentation,
    d: usize,
    limit: usize,
) -> Result<Vec<PermutationPair>> {
    if d == 0 {
        return Err(Error::Precondition("degree must be at least 1".into()));
    }
    if d > DEFAULT_MAX_DEGREE {
        return Err(Error::ResourceLimit(format!(
            "degree {d} exceeds the cap {DEFAULT_MAX_DEGREE}"
        )));
    }
    Ok(PermQuotients::new(*p, d).take(limit).collect())
}

/// A finite quotient under which `u` and `v` have different images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Separation {
    pub pair: PermutationPair,
    pub image_u: Permutation,
    pub image_v: Permutation,
}

/// Searches degrees `1..=max_degree` in order for a quotient separating `u`
/// from `v`. The caller's words must be distinct in `BS(m, n)`.
pub fn separate(
    u: &GroupWord,
    v: &GroupWord,
    p: &BsPresentation,
    max_degree: usize,
) -> Result<Option<Separation>> {
    if equal(u, v, p)? {
        return Err(Error::Precondition(format!(
            "`{u}` and `{v}` are equal in {p}; nothing to separate"
        )));
    }
    if max_degree > DEFAULT_MAX_DEGREE {
        return Err(Error::ResourceLimit(format!(
            "degree {max_degree} exceeds the cap {DEFAULT_MAX_DEGREE}"
        )));
    }
    for d in 1..=max_degree {
        for pair in PermQuotients::new(*p, d) {
            let image_u = eval_word_perm(u, &pair);
            let image_v = eval_word_perm(v, &pair);
            if image_u != image_v {
                return Ok(Some(Separation {
                    pair,
                    image_u,
                    image_v,
                }));
            }
        }
    }
    Ok(None)
}
