//! Square-free monomials and monomial-ideal arithmetic on variable subsets.
//!
//! Variables are numbered `0..n+m`: indices `0..n` are `x_1..x_n`, indices
//! `n..n+m` are `y_1..y_m`. A square-free monomial is a bitmask over these
//! indices, so divisibility is a subset test.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Maximum number of variables `n + m` supported by the bitmask encoding.
///
/// The Betti oracle enumerates all `2^(n+m)` vertex subsets, so values near
/// the cap are slow but still exact.
pub const MAX_VARS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ambient {
    n: usize,
    m: usize,
}

impl Ambient {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        if n + m == 0 || n + m > MAX_VARS {
            return Err(Error::InvalidAmbient { n, m, cap: MAX_VARS });
        }
        Ok(Self { n, m })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn num_vars(&self) -> usize {
        self.n + self.m
    }

    /// All variables.
    pub fn full(&self) -> SqFreeMonomial {
        SqFreeMonomial(low_bits(self.n + self.m))
    }

    pub fn block(&self, block: Block) -> SqFreeMonomial {
        match block {
            Block::X => SqFreeMonomial(low_bits(self.n)),
            Block::Y => SqFreeMonomial(low_bits(self.m) << self.n),
        }
    }

    pub fn block_size(&self, block: Block) -> usize {
        match block {
            Block::X => self.n,
            Block::Y => self.m,
        }
    }

    /// Index of `x_i` (1-based `i`).
    pub fn x(&self, i: usize) -> usize {
        debug_assert!(i >= 1 && i <= self.n);
        i - 1
    }

    /// Index of `y_j` (1-based `j`).
    pub fn y(&self, j: usize) -> usize {
        debug_assert!(j >= 1 && j <= self.m);
        self.n + j - 1
    }

    pub fn contains(&self, u: SqFreeMonomial) -> bool {
        u.0 & !self.full().0 == 0
    }

    /// The ambient with the two blocks exchanged.
    pub fn swapped(&self) -> Ambient {
        Ambient { n: self.m, m: self.n }
    }

    /// Maps a monomial of this ambient onto [`Ambient::swapped`].
    pub fn swap_monomial(&self, u: SqFreeMonomial) -> SqFreeMonomial {
        let xs = u.0 & low_bits(self.n);
        let ys = (u.0 >> self.n) & low_bits(self.m);
        SqFreeMonomial(ys | (xs << self.m))
    }

    pub fn var_name(&self, index: usize) -> String {
        if index < self.n {
            format!("x{}", index + 1)
        } else {
            format!("y{}", index - self.n + 1)
        }
    }

    /// Human-readable product of variables, `1` for the empty support.
    pub fn format_monomial(&self, u: SqFreeMonomial) -> String {
        if u.is_one() {
            return "1".to_string();
        }
        u.indices().map(|i| self.var_name(i)).collect::<Vec<_>>().join("")
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.n, self.m)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Block {
    X,
    Y,
}

fn low_bits(k: usize) -> u32 {
    if k >= 32 {
        u32::MAX
    } else {
        (1u32 << k) - 1
    }
}

/// A square-free monomial, identified with its support.
///
/// Also used as a plain variable subset (vertex sets, faces, primes).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SqFreeMonomial(pub u32);

impl SqFreeMonomial {
    pub const ONE: SqFreeMonomial = SqFreeMonomial(0);

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        SqFreeMonomial(indices.into_iter().fold(0u32, |acc, i| acc | (1 << i)))
    }

    pub fn bits(&self) -> u32 {
        self.0
    }

    pub fn degree(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_one(&self) -> bool {
        self.0 == 0
    }

    pub fn divides(&self, other: SqFreeMonomial) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn contains_var(&self, index: usize) -> bool {
        self.0 >> index & 1 == 1
    }

    pub fn lcm(&self, other: SqFreeMonomial) -> SqFreeMonomial {
        SqFreeMonomial(self.0 | other.0)
    }

    pub fn gcd(&self, other: SqFreeMonomial) -> SqFreeMonomial {
        SqFreeMonomial(self.0 & other.0)
    }

    /// Variables of `self` not in `other`.
    pub fn without(&self, other: SqFreeMonomial) -> SqFreeMonomial {
        SqFreeMonomial(self.0 & !other.0)
    }

    pub fn with_var(&self, index: usize) -> SqFreeMonomial {
        SqFreeMonomial(self.0 | (1 << index))
    }

    pub fn is_disjoint(&self, other: SqFreeMonomial) -> bool {
        self.0 & other.0 == 0
    }

    pub fn degree_in(&self, block: SqFreeMonomial) -> usize {
        (self.0 & block.0).count_ones() as usize
    }

    /// Variable indices in increasing order.
    pub fn indices(&self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..32).filter(move |i| bits >> i & 1 == 1)
    }

    /// All subsets of this support, including the empty one and itself.
    pub fn subsets(&self) -> impl Iterator<Item = SqFreeMonomial> {
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full { None } else { Some((cur.wrapping_sub(full)) & full) };
            Some(SqFreeMonomial(cur))
        })
    }

    /// Graded-lexicographic order on index lists: lower degree first, then
    /// by the sorted list of variable indices.
    pub fn grlex_cmp(&self, other: &SqFreeMonomial) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.indices().cmp(other.indices()))
    }
}

/// Removes duplicates and non-minimal elements; output is sorted by
/// [`SqFreeMonomial::grlex_cmp`].
pub fn minimalize(mut gens: Vec<SqFreeMonomial>) -> Vec<SqFreeMonomial> {
    gens.sort_by(SqFreeMonomial::grlex_cmp);
    gens.dedup();
    let mut kept: Vec<SqFreeMonomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !kept.iter().any(|k| k.divides(g)) {
            kept.push(g);
        }
    }
    kept
}

/// Keeps the inclusion-maximal elements; output sorted like [`minimalize`].
pub fn maximalize(mut sets: Vec<SqFreeMonomial>) -> Vec<SqFreeMonomial> {
    sets.sort_by(|a, b| b.grlex_cmp(a));
    sets.dedup();
    let mut kept: Vec<SqFreeMonomial> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|k| s.divides(*k)) {
            kept.push(s);
        }
    }
    kept.sort_by(SqFreeMonomial::grlex_cmp);
    kept
}

/// A square-free monomial ideal given by its minimal generators.
///
/// The empty generator list is the zero ideal; the single generator `1` is
/// the unit ideal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    ambient: Ambient,
    gens: Vec<SqFreeMonomial>,
}

impl MonomialIdeal {
    /// Builds the ideal generated by `gens`, discarding redundant generators.
    pub fn new<I: IntoIterator<Item = SqFreeMonomial>>(ambient: Ambient, gens: I) -> Result<Self> {
        let gens: Vec<_> = gens.into_iter().collect();
        if let Some(bad) = gens.iter().find(|g| !ambient.contains(**g)) {
            return Err(Error::SupportOutsideAmbient { support: bad.0 });
        }
        Ok(Self::from_minimalized(ambient, minimalize(gens)))
    }

    fn from_minimalized(ambient: Ambient, gens: Vec<SqFreeMonomial>) -> Self {
        Self { ambient, gens }
    }

    pub fn zero(ambient: Ambient) -> Self {
        Self { ambient, gens: Vec::new() }
    }

    pub fn unit(ambient: Ambient) -> Self {
        Self { ambient, gens: vec![SqFreeMonomial::ONE] }
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn gens(&self) -> &[SqFreeMonomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.first().is_some_and(|g| g.is_one())
    }

    /// Fails with `UnsupportedIdeal` for the zero and unit ideals.
    pub fn require_proper_nonzero(&self) -> Result<()> {
        if self.is_zero() {
            Err(Error::UnsupportedIdeal("zero"))
        } else if self.is_unit() {
            Err(Error::UnsupportedIdeal("unit"))
        } else {
            Ok(())
        }
    }

    fn check_ambient(&self, other: &MonomialIdeal) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(
                self.ambient.n,
                self.ambient.m,
                other.ambient.n,
                other.ambient.m,
            ));
        }
        Ok(())
    }

    pub fn contains_monomial(&self, u: SqFreeMonomial) -> bool {
        self.gens.iter().any(|g| g.divides(u))
    }

    /// Generators of a given total degree.
    pub fn gens_of_degree(&self, d: usize) -> impl Iterator<Item = &SqFreeMonomial> {
        self.gens.iter().filter(move |g| g.degree() == d)
    }

    pub fn to_string_with_names(&self) -> String {
        if self.is_zero() {
            return "(0)".to_string();
        }
        let parts: Vec<_> = self.gens.iter().map(|g| self.ambient.format_monomial(*g)).collect();
        format!("({})", parts.join(", "))
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with_names())
    }
}

/// `I_k` (block X) or `J_k` (block Y): all square-free monomials of degree `k`
/// in one block. `k = 0` gives the unit ideal.
pub fn veronese_ideal(ambient: Ambient, block: Block, k: usize) -> Result<MonomialIdeal> {
    let size = ambient.block_size(block);
    if k > size {
        return Err(Error::DegreeOutOfRange { degree: k, block_size: size });
    }
    let gens = ambient
        .block(block)
        .subsets()
        .filter(|u| u.degree() == k)
        .collect::<Vec<_>>();
    Ok(MonomialIdeal::from_minimalized(ambient, minimalize(gens)))
}

pub fn ideal_sum(a: &MonomialIdeal, b: &MonomialIdeal) -> Result<MonomialIdeal> {
    a.check_ambient(b)?;
    let gens = a.gens.iter().chain(b.gens.iter()).copied().collect();
    Ok(MonomialIdeal::from_minimalized(a.ambient, minimalize(gens)))
}

/// Product of two ideals, taken in the square-free sense.
///
/// Generators with disjoint supports multiply to their union. For
/// overlapping supports the true product is not square-free; this returns
/// the support union instead, i.e. the radical of the product. For the
/// block products `I_k * J_l` the supports are always disjoint.
pub fn ideal_product(a: &MonomialIdeal, b: &MonomialIdeal) -> Result<MonomialIdeal> {
    a.check_ambient(b)?;
    Ok(pairwise_lcm(a, b))
}

/// Intersection of square-free ideals: minimalized lcms of generator pairs.
pub fn ideal_intersect(a: &MonomialIdeal, b: &MonomialIdeal) -> Result<MonomialIdeal> {
    a.check_ambient(b)?;
    Ok(pairwise_lcm(a, b))
}

// For square-free generators the support union is both the lcm and the
// radical of the product, so product and intersection coincide here.
fn pairwise_lcm(a: &MonomialIdeal, b: &MonomialIdeal) -> MonomialIdeal {
    let gens = a
        .gens
        .iter()
        .flat_map(|u| b.gens.iter().map(move |v| u.lcm(*v)))
        .collect();
    MonomialIdeal::from_minimalized(a.ambient, minimalize(gens))
}

pub fn contains_monomial(a: &MonomialIdeal, u: SqFreeMonomial) -> bool {
    a.contains_monomial(u)
}

/// Alexander dual `∩_i (variables of generator i)`, taken relative to
/// `vertices`.
///
/// The generators of the dual are the minimal transversals of the generator
/// supports. Applying the dual twice over the same vertex set returns the
/// original ideal.
pub fn alexander_dual(a: &MonomialIdeal, vertices: SqFreeMonomial) -> Result<MonomialIdeal> {
    a.require_proper_nonzero()?;
    if !a.ambient.contains(vertices) {
        return Err(Error::SupportOutsideAmbient { support: vertices.0 });
    }
    if a.gens.iter().any(|g| !g.divides(vertices)) {
        return Err(Error::SupportOutsideVertices);
    }
    Ok(MonomialIdeal::from_minimalized(a.ambient, minimal_transversals(&a.gens)))
}

/// Berge's incremental algorithm: minimal sets meeting every input set.
fn minimal_transversals(sets: &[SqFreeMonomial]) -> Vec<SqFreeMonomial> {
    let mut transversals = vec![SqFreeMonomial::ONE];
    for &edge in sets {
        let mut next = Vec::with_capacity(transversals.len());
        for t in &transversals {
            if !t.is_disjoint(edge) {
                next.push(*t);
            } else {
                next.extend(edge.indices().map(|v| t.with_var(v)));
            }
        }
        transversals = minimalize(next);
    }
    transversals
}

/// Variable sets of the minimal primes of `a`.
pub fn minimal_primes(a: &MonomialIdeal) -> Result<Vec<SqFreeMonomial>> {
    Ok(alexander_dual(a, a.ambient.full())?.gens)
}

/// Smallest number of variables in a minimal prime.
pub fn height(a: &MonomialIdeal) -> Result<usize> {
    let primes = minimal_primes(a)?;
    Ok(primes.iter().map(|p| p.degree()).min().expect("proper nonzero ideal has a minimal prime"))
}

/// `dim S/I = n + m - height(I)`.
pub fn krull_dim(a: &MonomialIdeal) -> Result<usize> {
    Ok(a.ambient.num_vars() - height(a)?)
}

/// One summand `I_k J_l` of a mixed product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Term {
    pub x_deg: usize,
    pub y_deg: usize,
}

impl Term {
    pub const fn new(x_deg: usize, y_deg: usize) -> Self {
        Self { x_deg, y_deg }
    }

    pub fn is_unit(&self) -> bool {
        self.x_deg == 0 && self.y_deg == 0
    }

    /// `I_k J_l ⊆ I_k' J_l'` whenever `k >= k'` and `l >= l'`.
    pub fn is_contained_in(&self, other: &Term) -> bool {
        self.x_deg >= other.x_deg && self.y_deg >= other.y_deg
    }

    pub fn swapped(&self) -> Term {
        Term::new(self.y_deg, self.x_deg)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.x_deg, self.y_deg)
    }
}

/// Symbolic `Σ I_{k_i} J_{l_i}` over an ambient ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MixedProductSpec {
    ambient: Ambient,
    terms: Vec<Term>,
}

impl MixedProductSpec {
    /// Raw spec; degrees are checked against the blocks but nothing is
    /// simplified. See [`canonicalize_spec`].
    pub fn new(ambient: Ambient, terms: Vec<Term>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::EmptySpec);
        }
        for t in &terms {
            if t.x_deg > ambient.n {
                return Err(Error::DegreeOutOfRange { degree: t.x_deg, block_size: ambient.n });
            }
            if t.y_deg > ambient.m {
                return Err(Error::DegreeOutOfRange { degree: t.y_deg, block_size: ambient.m });
            }
        }
        Ok(Self { ambient, terms })
    }

    /// Parses and canonicalizes in one step.
    pub fn canonical(ambient: Ambient, terms: Vec<Term>) -> Result<Self> {
        canonicalize_spec(&Self::new(ambient, terms)?)
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_unit(&self) -> bool {
        self.terms.iter().any(Term::is_unit)
    }

    pub fn is_canonical(&self) -> bool {
        let sorted = self.terms.windows(2).all(|w| w[0].x_deg < w[1].x_deg);
        let antichain = self.terms.iter().enumerate().all(|(i, a)| {
            self.terms.iter().enumerate().all(|(j, b)| i == j || !a.is_contained_in(b))
        });
        !self.terms.is_empty() && sorted && antichain
    }

    /// Exchanges the x and y blocks. The result is canonical when `self` is.
    pub fn swapped(&self) -> MixedProductSpec {
        let mut terms: Vec<Term> = self.terms.iter().map(Term::swapped).collect();
        terms.sort();
        MixedProductSpec { ambient: self.ambient.swapped(), terms }
    }
}

impl fmt::Display for MixedProductSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| match (t.x_deg, t.y_deg) {
                (0, 0) => "S".to_string(),
                (k, 0) => format!("I{k}"),
                (0, l) => format!("J{l}"),
                (k, l) => format!("I{k}J{l}"),
            })
            .collect();
        write!(f, "{} in {}", parts.join("+"), self.ambient)
    }
}

/// Drops dominated terms and sorts by x-degree.
pub fn canonicalize_spec(raw: &MixedProductSpec) -> Result<MixedProductSpec> {
    let spec = MixedProductSpec::new(raw.ambient, raw.terms.clone())?;
    let mut terms = spec.terms;
    terms.sort();
    terms.dedup();
    let kept: Vec<Term> = terms
        .iter()
        .filter(|t| !terms.iter().any(|o| o != *t && t.is_contained_in(o)))
        .copied()
        .collect();
    Ok(MixedProductSpec { ambient: spec.ambient, terms: kept })
}

/// The monomial ideal `Σ I_{k_i} J_{l_i}`.
pub fn realize_spec(spec: &MixedProductSpec) -> MonomialIdeal {
    let ambient = spec.ambient;
    let x_block = ambient.block(Block::X);
    let y_block = ambient.block(Block::Y);
    let gens = ambient
        .full()
        .subsets()
        .filter(|u| {
            let (dx, dy) = (u.degree_in(x_block), u.degree_in(y_block));
            spec.terms.iter().any(|t| t.x_deg == dx && t.y_deg == dy)
        })
        .collect();
    MonomialIdeal::from_minimalized(ambient, minimalize(gens))
}
