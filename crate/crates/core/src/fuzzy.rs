//! Fuzzy and crisp subsets over finite carriers, ideal predicates, the
//! lattice operations ⊕ and ∩, and exhaustive ideal enumeration.

use std::collections::HashSet;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::config::saturating_pow;
use crate::error::{Error, Result};
use crate::grade::{Grade, GradeChain};
use crate::par;
use crate::structure::{FiniteStructure, GammaSemiring, Semiring};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdealKind {
    Left,
    Right,
    TwoSided,
}

impl IdealKind {
    /// The kind that corresponds to `self` after swapping left and right.
    pub fn mirror(self) -> IdealKind {
        match self {
            IdealKind::Left => IdealKind::Right,
            IdealKind::Right => IdealKind::Left,
            IdealKind::TwoSided => IdealKind::TwoSided,
        }
    }

    fn left(self) -> bool {
        matches!(self, IdealKind::Left | IdealKind::TwoSided)
    }

    fn right(self) -> bool {
        matches!(self, IdealKind::Right | IdealKind::TwoSided)
    }
}

impl fmt::Display for IdealKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IdealKind::Left => "left",
            IdealKind::Right => "right",
            IdealKind::TwoSided => "two-sided",
        })
    }
}

impl std::str::FromStr for IdealKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "left" => Ok(IdealKind::Left),
            "right" => Ok(IdealKind::Right),
            "two" | "two-sided" | "both" => Ok(IdealKind::TwoSided),
            other => Err(format!("unknown ideal kind `{other}`")),
        }
    }
}

/// A crisp subset of a finite carrier.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CrispSubset {
    bits: FixedBitSet,
}

impl CrispSubset {
    pub fn empty(n: usize) -> Self {
        CrispSubset { bits: FixedBitSet::with_capacity(n) }
    }

    pub fn full(n: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(n);
        bits.insert_range(..);
        CrispSubset { bits }
    }

    pub fn from_fn(n: usize, f: impl Fn(usize) -> bool) -> Self {
        let mut bits = FixedBitSet::with_capacity(n);
        for i in 0..n {
            if f(i) {
                bits.insert(i);
            }
        }
        CrispSubset { bits }
    }

    pub fn from_indices(n: usize, items: impl IntoIterator<Item = usize>) -> Self {
        let mut bits = FixedBitSet::with_capacity(n);
        for i in items {
            bits.insert(i);
        }
        CrispSubset { bits }
    }

    pub fn from_bits(bits: FixedBitSet) -> Self {
        CrispSubset { bits }
    }

    /// Size of the underlying carrier.
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn count(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn contains(&self, i: usize) -> bool {
        self.bits.contains(i)
    }

    pub fn indices(&self) -> Vec<usize> {
        self.bits.ones().collect()
    }

    pub fn is_subset(&self, other: &CrispSubset) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn ids(&self, ids: &[String]) -> Vec<String> {
        self.bits.ones().map(|i| ids[i].clone()).collect()
    }
}

impl fmt::Debug for CrispSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.bits.ones()).finish()
    }
}

/// A membership function with one exact grade per carrier element.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FuzzySubset {
    grades: Vec<Grade>,
}

impl FuzzySubset {
    pub fn new(grades: Vec<Grade>) -> Self {
        FuzzySubset { grades }
    }

    pub fn constant(n: usize, g: Grade) -> Self {
        FuzzySubset { grades: vec![g; n] }
    }

    pub fn len(&self) -> usize {
        self.grades.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grades.is_empty()
    }

    pub fn grade(&self, i: usize) -> Grade {
        self.grades[i]
    }

    pub fn grades(&self) -> &[Grade] {
        &self.grades
    }

    /// Pointwise `≤`.
    pub fn is_subset(&self, other: &FuzzySubset) -> bool {
        self.len() == other.len() && self.grades.iter().zip(&other.grades).all(|(a, b)| a <= b)
    }

    /// Takes at least two distinct values.
    pub fn is_non_constant(&self) -> bool {
        self.grades.iter().any(|g| *g != self.grades[0])
    }

    /// Some grade is positive.
    pub fn is_nonempty(&self) -> bool {
        self.grades.iter().any(|g| !g.is_zero())
    }

    pub fn labels(&self) -> Vec<String> {
        self.grades.iter().map(Grade::to_string).collect()
    }

    fn check_same(&self, other: &FuzzySubset) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::CarrierMismatch { expected: self.len(), found: other.len() });
        }
        Ok(())
    }
}

impl fmt::Debug for FuzzySubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.labels().join(", "))
    }
}

/// `λ_I`: 1 on `I`, 0 elsewhere.
pub fn characteristic(i: &CrispSubset) -> FuzzySubset {
    FuzzySubset::new((0..i.len()).map(|k| if i.contains(k) { Grade::ONE } else { Grade::ZERO }).collect())
}

/// Pointwise minimum of a non-empty family.
pub fn fuzzy_intersection(family: &[&FuzzySubset]) -> Result<FuzzySubset> {
    let first = family.first().ok_or(Error::CarrierMismatch { expected: 1, found: 0 })?;
    let mut out = (*first).clone();
    for mu in &family[1..] {
        out.check_same(mu)?;
        for (o, g) in out.grades.iter_mut().zip(&mu.grades) {
            *o = (*o).min(*g);
        }
    }
    Ok(out)
}

/// `(μ₁ ⊕ μ₂)(x) = max over u + v = x of min(μ₁(u), μ₂(v))`. Every `x`
/// decomposes as `x + 0`, so the maximum is never over an empty set.
pub fn fuzzy_sum<S: FiniteStructure + ?Sized>(
    s: &S,
    mu1: &FuzzySubset,
    mu2: &FuzzySubset,
) -> Result<FuzzySubset> {
    let n = s.order();
    for mu in [mu1, mu2] {
        if mu.len() != n {
            return Err(Error::CarrierMismatch { expected: n, found: mu.len() });
        }
    }
    let mut out = vec![Grade::ZERO; n];
    for u in 0..n {
        for v in 0..n {
            let x = s.add(u, v);
            let g = mu1.grade(u).min(mu2.grade(v));
            if g > out[x] {
                out[x] = g;
            }
        }
    }
    Ok(FuzzySubset::new(out))
}

/// Deduplicated constraint set of the ideal conditions of a structure.
#[derive(Debug, Clone)]
struct IdealConstraints {
    n: usize,
    /// `μ(big) ≥ μ(small)` from product absorption
    dominance: Vec<(usize, usize)>,
    /// `μ(s) ≥ min(μ(x), μ(y))` with `s = x + y`
    sums: Vec<(usize, usize, usize)>,
}

impl IdealConstraints {
    fn compile<S: FiniteStructure + ?Sized>(s: &S, kind: IdealKind) -> Self {
        let n = s.order();
        let mut dominance = HashSet::new();
        s.for_each_product(&mut |x, y, z| {
            if kind.left() && z != y && z != 0 {
                dominance.insert((z, y));
            }
            if kind.right() && z != x && z != 0 {
                dominance.insert((z, x));
            }
        });
        let mut sums = HashSet::new();
        for x in 0..n {
            for y in x..n {
                for (a, b) in [(x, y), (y, x)] {
                    let z = s.add(a, b);
                    if z != 0 && z != x && z != y {
                        sums.insert((z, x, y));
                    }
                }
            }
        }
        let mut dominance: Vec<_> = dominance.into_iter().collect();
        dominance.sort_unstable();
        let mut sums: Vec<_> = sums.into_iter().collect();
        sums.sort_unstable();
        IdealConstraints { n, dominance, sums }
    }

    /// Buckets constraints by the largest element they mention, so each can
    /// be checked as soon as that element is assigned.
    fn by_level(&self) -> Vec<Vec<Check>> {
        let mut levels = vec![Vec::new(); self.n];
        for &(b, s) in &self.dominance {
            levels[b.max(s)].push(Check::Dom(b, s));
        }
        for &(z, x, y) in &self.sums {
            levels[z.max(x).max(y)].push(Check::Sum(z, x, y));
        }
        levels
    }
}

#[derive(Debug, Clone, Copy)]
enum Check {
    Dom(usize, usize),
    Sum(usize, usize, usize),
}

impl Check {
    #[inline]
    fn holds(self, a: &[u8]) -> bool {
        match self {
            Check::Dom(b, s) => a[b] >= a[s],
            Check::Sum(z, x, y) => a[z] >= a[x].min(a[y]),
        }
    }
}

/// Fuzzy left/right/two-sided ideal test for any finite structure:
/// `μ(x + y) ≥ min(μ(x), μ(y))`, the absorption condition(s) of `kind`, and
/// non-emptiness. The `μ(0) = 1` convention is not part of this test.
pub fn is_fuzzy_ideal<S: FiniteStructure + ?Sized>(s: &S, mu: &FuzzySubset, kind: IdealKind) -> bool {
    let n = s.order();
    assert_eq!(mu.len(), n, "fuzzy subset carrier does not match the structure");
    if !mu.is_nonempty() {
        return false;
    }
    for x in 0..n {
        for y in 0..n {
            if mu.grade(s.add(x, y)) < mu.grade(x).min(mu.grade(y)) {
                return false;
            }
        }
    }
    let mut ok = true;
    s.for_each_product(&mut |x, y, z| {
        if (kind.left() && mu.grade(z) < mu.grade(y)) || (kind.right() && mu.grade(z) < mu.grade(x)) {
            ok = false;
        }
    });
    ok
}

pub fn is_fuzzy_ideal_gamma(g: &GammaSemiring, mu: &FuzzySubset, kind: IdealKind) -> bool {
    is_fuzzy_ideal(g, mu, kind)
}

pub fn is_fuzzy_ideal_semiring(r: &Semiring, mu: &FuzzySubset, kind: IdealKind) -> bool {
    is_fuzzy_ideal(r, mu, kind)
}

/// Crisp ideal test: contains 0, closed under addition, absorbing per `kind`.
pub fn is_crisp_ideal<S: FiniteStructure + ?Sized>(s: &S, i: &CrispSubset, kind: IdealKind) -> bool {
    let n = s.order();
    if i.len() != n || !i.contains(0) {
        return false;
    }
    let members = i.indices();
    if members.iter().any(|&a| members.iter().any(|&b| !i.contains(s.add(a, b)))) {
        return false;
    }
    let mut ok = true;
    s.for_each_product(&mut |x, y, z| {
        if (kind.left() && i.contains(y) && !i.contains(z)) || (kind.right() && i.contains(x) && !i.contains(z)) {
            ok = false;
        }
    });
    ok
}

/// All fuzzy ideals of `kind` with `μ(0) = 1` and grades in `chain`, in
/// lexicographic order of their grade tuples.
///
/// Candidates are explored depth-first with every constraint checked at the
/// first position where all of its elements are assigned. The search tree is
/// cut at a shallow prefix whose subtrees run in parallel and are merged in
/// prefix order.
pub fn enumerate_fuzzy_ideals<S: FiniteStructure + ?Sized>(
    s: &S,
    chain: &GradeChain,
    kind: IdealKind,
    cap: u64,
) -> Result<Vec<FuzzySubset>> {
    let n = s.order();
    let candidates = saturating_pow(chain.len() as u64, n as u64 - 1);
    if candidates > cap {
        return Err(Error::CapExceeded {
            what: "fuzzy ideal enumeration",
            needed: format!("{}^{}", chain.len(), n - 1),
            cap,
        });
    }
    if chain.len() > u8::MAX as usize {
        return Err(Error::CapExceeded {
            what: "grade chain length",
            needed: chain.len().to_string(),
            cap: u8::MAX as u64,
        });
    }
    let levels = IdealConstraints::compile(s, kind).by_level();
    let top = chain.top() as u8;

    let mut start = vec![0u8; n];
    start[0] = top;
    // prefix depth: enough subtrees to keep workers busy
    let mut depth = 0usize;
    let mut width = 1usize;
    while depth + 1 < n && width < 256 {
        depth += 1;
        width *= chain.len();
    }
    let mut prefixes = Vec::new();
    dfs(&levels, top, &mut start.clone(), 1, depth + 1, &mut |a| prefixes.push(a.to_vec()));

    let chunks: Vec<Vec<Vec<u8>>> = par::map_slice(&prefixes, |prefix| {
        let mut out = Vec::new();
        let mut a = prefix.clone();
        dfs(&levels, top, &mut a, depth + 1, n, &mut |a| out.push(a.to_vec()));
        out
    });
    Ok(chunks
        .into_iter()
        .flatten()
        .map(|a| FuzzySubset::new(a.iter().map(|&p| chain.grade(p as usize)).collect()))
        .collect())
}

// Assigns positions `pos..end`, calling `emit` on every consistent assignment.
fn dfs(levels: &[Vec<Check>], top: u8, a: &mut [u8], pos: usize, end: usize, emit: &mut dyn FnMut(&[u8])) {
    if pos == end {
        emit(a);
        return;
    }
    for v in 0..=top {
        a[pos] = v;
        if levels[pos].iter().all(|c| c.holds(a)) {
            dfs(levels, top, a, pos + 1, end, emit);
        }
    }
    a[pos] = 0;
}

/// All crisp ideals of `kind`, in lexicographic order of membership tuples.
pub fn enumerate_crisp_ideals<S: FiniteStructure + ?Sized>(
    s: &S,
    kind: IdealKind,
    cap: u64,
) -> Result<Vec<CrispSubset>> {
    let n = s.order();
    let subsets = saturating_pow(2, n as u64);
    if subsets > cap || n > 63 {
        return Err(Error::CapExceeded { what: "crisp ideal enumeration", needed: format!("2^{n}"), cap });
    }
    let mut absorb = HashSet::new();
    s.for_each_product(&mut |x, y, z| {
        if kind.left() {
            absorb.insert((y, z));
        }
        if kind.right() {
            absorb.insert((x, z));
        }
    });
    let absorb: Vec<(usize, usize)> = absorb.into_iter().collect();
    let free = n - 1;
    let member = move |mask: u64, i: usize| i == 0 || (mask >> (free - i)) & 1 == 1;
    let total = 1u64 << free;
    let chunk = 1u64 << free.min(12);
    let blocks = total.div_ceil(chunk) as usize;
    let found: Vec<Vec<u64>> = par::map_range(blocks, |b| {
        let lo = b as u64 * chunk;
        let hi = (lo + chunk).min(total);
        (lo..hi)
            .filter(|&mask| {
                let closed_add = (0..n).all(|x| {
                    !member(mask, x) || (x..n).all(|y| !member(mask, y) || member(mask, s.add(x, y)) && member(mask, s.add(y, x)))
                });
                closed_add && absorb.iter().all(|&(from, to)| !member(mask, from) || member(mask, to))
            })
            .collect()
    });
    Ok(found
        .into_iter()
        .flatten()
        .map(|mask| CrispSubset::from_fn(n, |i| member(mask, i)))
        .collect())
}
