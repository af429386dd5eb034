//! Betti-number oracle: graded Betti numbers of `S/I` via Hochster's formula,
//! and the homological invariants derived from them.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::{reduced_homology_ranks, stanley_reisner, FieldSpec};
use crate::ideal::{alexander_dual, krull_dim, Ambient, MonomialIdeal, SqFreeMonomial};

/// Graded Betti numbers `β_{i,j}(S/I)`, stored sparsely (zero entries omitted).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    ambient: Ambient,
    entries: BTreeMap<(usize, usize), u64>,
    multigraded: BTreeMap<(usize, SqFreeMonomial), u64>,
}

impl BettiTable {
    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    /// `β_{i,j}`, zero when absent.
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Nonzero entries `((i, j), β_{i,j})` in lexicographic order.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        self.entries.iter().map(|(k, v)| (*k, *v))
    }

    /// Total Betti number `β_i = Σ_j β_{i,j}`.
    pub fn total(&self, i: usize) -> u64 {
        self.entries.range((i, 0)..=(i, usize::MAX)).map(|(_, v)| v).sum()
    }

    /// Multigraded Betti number `β_{i,W}`.
    pub fn multigraded(&self, i: usize, w: SqFreeMonomial) -> u64 {
        self.multigraded.get(&(i, w)).copied().unwrap_or(0)
    }

    pub fn multigraded_entries(&self) -> impl Iterator<Item = ((usize, SqFreeMonomial), u64)> + '_ {
        self.multigraded.iter().map(|(k, v)| (*k, *v))
    }
}

/// Graded Betti numbers of `S/I` from `β_{i,W} = h̃_{|W|-i-1}(Δ|_W)`,
/// summed over all vertex subsets `W`.
pub fn hochster_betti(a: &MonomialIdeal, field: FieldSpec) -> Result<BettiTable> {
    a.require_proper_nonzero()?;
    let delta = stanley_reisner(a)?;
    let full = a.ambient().full().bits();
    let per_subset: Vec<Vec<((usize, SqFreeMonomial), u64)>> = (0..=full)
        .into_par_iter()
        .filter(|w| w & !full == 0)
        .map(|w| {
            let w = SqFreeMonomial(w);
            let h = reduced_homology_ranks(&delta.restrict(w)?, field)?;
            let size = w.degree();
            // h̃_k contributes to homological degree i = |W| - 1 - k
            Ok(h
                .ranks()
                .iter()
                .enumerate()
                .filter(|(_, &r)| r > 0)
                .map(|(idx, &r)| ((size - idx, w), r as u64))
                .collect())
        })
        .collect::<Result<_>>()?;

    let mut multigraded = BTreeMap::new();
    let mut entries = BTreeMap::new();
    for ((i, w), r) in per_subset.into_iter().flatten() {
        multigraded.insert((i, w), r);
        *entries.entry((i, w.degree())).or_insert(0) += r;
    }
    Ok(BettiTable { ambient: a.ambient(), entries, multigraded })
}

/// `(pd, reg)` of `S/I`: the largest homological degree with a nonzero
/// entry and the largest `j - i` over nonzero entries.
pub fn betti_stats(b: &BettiTable) -> (usize, usize) {
    let pd = b.entries.keys().map(|&(i, _)| i).max().unwrap_or(0);
    let reg = b.entries.keys().map(|&(i, j)| j - i).max().unwrap_or(0);
    (pd, reg)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Formula,
    Oracle,
}

/// Invariants of `S/I` for one ideal, from either route.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub dim: usize,
    pub depth: usize,
    pub pd: usize,
    pub reg_ideal: usize,
    pub reg_quotient: usize,
    pub cm: bool,
    pub height: usize,
    pub method: Method,
    pub field: Option<FieldSpec>,
}

/// Oracle invariants of `S/I`.
///
/// Depth comes from Auslander–Buchsbaum. The regularity is cross-checked
/// against `pd(S/I*)` of the Alexander dual over all variables (Terai).
pub fn oracle_report(a: &MonomialIdeal, field: FieldSpec) -> Result<InvariantReport> {
    let (report, _) = oracle_report_with_betti(a, field)?;
    Ok(report)
}

/// [`oracle_report`] together with the Betti table it was computed from.
pub fn oracle_report_with_betti(a: &MonomialIdeal, field: FieldSpec) -> Result<(InvariantReport, BettiTable)> {
    a.require_proper_nonzero()?;
    let n_vars = a.ambient().num_vars();
    let dim = krull_dim(a)?;
    let betti = hochster_betti(a, field)?;
    let (pd, reg_quotient) = betti_stats(&betti);
    let reg_ideal = reg_quotient + 1;

    let dual = alexander_dual(a, a.ambient().full())?;
    let (pd_dual, _) = betti_stats(&hochster_betti(&dual, field)?);
    if pd_dual != reg_ideal {
        return Err(Error::TeraiMismatch { reg_ideal, pd_dual });
    }

    let depth = n_vars - pd;
    let report = InvariantReport {
        dim,
        depth,
        pd,
        reg_ideal,
        reg_quotient,
        cm: depth == dim,
        height: n_vars - dim,
        method: Method::Oracle,
        field: Some(field),
    };
    Ok((report, betti))
}

/// All minimal generators share one degree `d` and `reg(I) = d`.
pub fn has_linear_resolution(a: &MonomialIdeal, field: FieldSpec) -> Result<bool> {
    a.require_proper_nonzero()?;
    let d = a.gens()[0].degree();
    if a.gens().iter().any(|g| g.degree() != d) {
        return Ok(false);
    }
    let (_, reg_quotient) = betti_stats(&hochster_betti(a, field)?);
    Ok(reg_quotient + 1 == d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::{realize_spec, veronese_ideal, Block, MixedProductSpec, Term};

    fn amb(n: usize, m: usize) -> Ambient {
        Ambient::new(n, m).unwrap()
    }

    fn spec_ideal(n: usize, m: usize, terms: &[(usize, usize)]) -> MonomialIdeal {
        realize_spec(
            &MixedProductSpec::canonical(amb(n, m), terms.iter().map(|&(k, l)| Term::new(k, l)).collect()).unwrap(),
        )
    }

    fn table(b: &BettiTable) -> Vec<((usize, usize), u64)> {
        b.entries().collect()
    }

    /// Independent route: the Taylor complex of `I` has one basis element
    /// per subset of generators, in multidegree lcm(subset). Its graded
    /// Euler characteristic equals `Σ_i (-1)^i β_{i,j}` for each `j`.
    fn taylor_euler(a: &MonomialIdeal) -> BTreeMap<usize, i64> {
        let gens = a.gens();
        let mut chi = BTreeMap::new();
        for mask in 0u32..(1 << gens.len()) {
            let lcm = (0..gens.len())
                .filter(|i| mask >> i & 1 == 1)
                .fold(SqFreeMonomial::ONE, |acc, i| acc.lcm(gens[i]));
            let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
            *chi.entry(lcm.degree()).or_insert(0) += sign;
        }
        chi.retain(|_, v| *v != 0);
        chi
    }

    fn betti_euler(b: &BettiTable) -> BTreeMap<usize, i64> {
        let mut chi = BTreeMap::new();
        for ((i, j), r) in b.entries() {
            *chi.entry(j).or_insert(0) += if i % 2 == 0 { r as i64 } else { -(r as i64) };
        }
        chi.retain(|_, v| *v != 0);
        chi
    }

    /// Brute-force Hochster sum written without the crate's restriction or
    /// homology code: faces of `Δ|_W` are the subsets of `W` outside `I`,
    /// and ranks of boundary maps are computed over GF(2) on bit-packed rows.
    fn brute_force_betti_gf2(a: &MonomialIdeal) -> BTreeMap<(usize, usize), u64> {
        fn rank_gf2(mut rows: Vec<u64>) -> usize {
            let mut rank = 0;
            for bit in 0..64 {
                if let Some(p) = (rank..rows.len()).find(|&r| rows[r] >> bit & 1 == 1) {
                    rows.swap(rank, p);
                    for r in 0..rows.len() {
                        if r != rank && rows[r] >> bit & 1 == 1 {
                            rows[r] ^= rows[rank];
                        }
                    }
                    rank += 1;
                }
            }
            rank
        }
        let n = a.ambient().num_vars();
        let mut out = BTreeMap::new();
        for w in 0u32..(1 << n) {
            let faces: Vec<u32> = (0..=w).filter(|f| f & !w == 0 && !a.contains_monomial(SqFreeMonomial(*f))).collect();
            let size = w.count_ones() as usize;
            let by_size = |k: usize| faces.iter().copied().filter(|f| f.count_ones() as usize == k).collect::<Vec<_>>();
            let boundary_rank = |k: usize| -> usize {
                if k == 0 {
                    return 0;
                }
                let lower = by_size(k - 1);
                let rows = by_size(k)
                    .into_iter()
                    .map(|f| {
                        (0..n)
                            .filter(|v| f >> v & 1 == 1)
                            .map(|v| 1u64 << lower.iter().position(|g| *g == f & !(1 << v)).unwrap())
                            .fold(0, |acc, b| acc | b)
                    })
                    .collect();
                rank_gf2(rows)
            };
            for k in 0..=size {
                let ck = by_size(k).len();
                if ck == 0 {
                    continue;
                }
                let h = ck - boundary_rank(k) - boundary_rank(k + 1);
                if h > 0 {
                    *out.entry((size - k, size)).or_insert(0) += h as u64;
                }
            }
        }
        out
    }

    #[test]
    fn betti_of_i2_in_three_vars() {
        let i2 = veronese_ideal(amb(3, 0), Block::X, 2).unwrap();
        let b = hochster_betti(&i2, FieldSpec::Rationals).unwrap();
        assert_eq!(table(&b), vec![((0, 0), 1), ((1, 2), 3), ((2, 3), 2)]);
        assert_eq!(betti_euler(&b), taylor_euler(&i2));
        assert_eq!(b.entries.clone(), brute_force_betti_gf2(&i2));
        assert_eq!(betti_stats(&b), (2, 1));
    }

    #[test]
    fn betti_of_principal_and_variable() {
        let a = amb(1, 1);
        let p = MonomialIdeal::new(a, [a.full()]).unwrap();
        let b = hochster_betti(&p, FieldSpec::Rationals).unwrap();
        assert_eq!(table(&b), vec![((0, 0), 1), ((1, 2), 1)]);
        assert_eq!(betti_stats(&b), (1, 1));
        assert_eq!(b.multigraded(1, a.full()), 1);

        let i1 = veronese_ideal(amb(1, 0), Block::X, 1).unwrap();
        let b = hochster_betti(&i1, FieldSpec::PrimeField(2)).unwrap();
        assert_eq!(table(&b), vec![((0, 0), 1), ((1, 1), 1)]);
        assert_eq!(betti_stats(&b), (1, 0));
    }

    #[test]
    fn betti_rejects_zero_and_unit() {
        let a = amb(2, 0);
        assert_eq!(hochster_betti(&MonomialIdeal::zero(a), FieldSpec::Rationals), Err(Error::UnsupportedIdeal("zero")));
        assert_eq!(hochster_betti(&MonomialIdeal::unit(a), FieldSpec::Rationals), Err(Error::UnsupportedIdeal("unit")));
    }

    #[test]
    fn hochster_matches_brute_force_and_taylor() {
        let cases: &[(usize, usize, &[(usize, usize)])] = &[
            (2, 2, &[(1, 2), (2, 1)]),
            (2, 2, &[(1, 1)]),
            (3, 2, &[(0, 2), (2, 0)]),
            (2, 3, &[(1, 2), (2, 0)]),
            (3, 3, &[(1, 3), (2, 1)]),
        ];
        for &(n, m, terms) in cases {
            let i = spec_ideal(n, m, terms);
            let b = hochster_betti(&i, FieldSpec::PrimeField(2)).unwrap();
            assert_eq!(b.entries.clone(), brute_force_betti_gf2(&i), "{n} {m} {terms:?}");
            assert_eq!(betti_euler(&b), taylor_euler(&i), "{n} {m} {terms:?}");
        }
    }

    #[test]
    fn linear_strand_counts_generators() {
        for (n, m, terms) in [(2usize, 2usize, vec![(1usize, 2usize), (2, 1)]), (3, 2, vec![(0, 2), (2, 0)]), (2, 3, vec![(1, 2), (2, 0)])] {
            let i = spec_ideal(n, m, &terms);
            let b = hochster_betti(&i, FieldSpec::Rationals).unwrap();
            assert_eq!(b.total(0), 1);
            for j in 0..=n + m {
                assert_eq!(b.get(1, j), i.gens_of_degree(j).count() as u64);
            }
        }
    }

    #[test]
    fn oracle_examples() {
        let r = oracle_report(&spec_ideal(1, 1, &[(1, 1)]), FieldSpec::Rationals).unwrap();
        assert_eq!((r.dim, r.depth, r.pd, r.cm), (1, 1, 1, true));

        let r = oracle_report(&veronese_ideal(amb(3, 0), Block::X, 2).unwrap(), FieldSpec::Rationals).unwrap();
        assert_eq!((r.dim, r.depth, r.cm, r.reg_ideal), (1, 1, true, 2));

        let r = oracle_report(&spec_ideal(2, 3, &[(1, 2)]), FieldSpec::PrimeField(2)).unwrap();
        assert_eq!((r.dim, r.depth, r.cm), (3, 2, false));
        assert_eq!(r.height, 2);
        assert_eq!(r.reg_ideal, r.reg_quotient + 1);
    }

    #[test]
    fn linear_resolution_examples() {
        assert!(has_linear_resolution(&veronese_ideal(amb(3, 0), Block::X, 2).unwrap(), FieldSpec::Rationals).unwrap());
        let a = amb(1, 2);
        let mixed = MonomialIdeal::new(a, [SqFreeMonomial::from_indices([0]), SqFreeMonomial::from_indices([1, 2])]).unwrap();
        assert!(!has_linear_resolution(&mixed, FieldSpec::Rationals).unwrap());
        assert!(has_linear_resolution(&spec_ideal(1, 1, &[(1, 1)]), FieldSpec::Rationals).unwrap());
    }

    #[test]
    fn i1j1_has_top_tor() {
        for n in 1..=3 {
            for m in 1..=3 {
                let b = hochster_betti(&spec_ideal(n, m, &[(1, 1)]), FieldSpec::Rationals).unwrap();
                assert!(b.total(n + m - 1) > 0, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn betti_is_schedule_independent() {
        let i = spec_ideal(3, 3, &[(1, 3), (2, 1)]);
        let a = hochster_betti(&i, FieldSpec::PrimeField(3)).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let b = pool.install(|| hochster_betti(&i, FieldSpec::PrimeField(3)).unwrap());
        assert_eq!(a, b);
    }
}
