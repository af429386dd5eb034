//! Stanley–Reisner complexes and reduced simplicial homology over a field.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::{maximalize, MonomialIdeal, SqFreeMonomial};
use crate::rank::{rank_mod_p, rank_rational, IntMatrix};

/// Coefficient field for homology and Betti numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(FieldSpec::PrimeField(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }

    pub fn rank(&self, m: &IntMatrix) -> usize {
        match self {
            FieldSpec::Rationals => rank_rational(m),
            FieldSpec::PrimeField(p) => rank_mod_p(m, *p),
        }
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => f.write_str("q"),
            FieldSpec::PrimeField(p) => write!(f, "gf{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        if s == "q" {
            return Ok(FieldSpec::Rationals);
        }
        match s.strip_prefix("gf").map(str::parse::<u64>) {
            Some(Ok(p)) => FieldSpec::prime(p),
            _ => Err(Error::UnknownField(s)),
        }
    }
}

impl From<FieldSpec> for String {
    fn from(f: FieldSpec) -> String {
        f.to_string()
    }
}

impl TryFrom<String> for FieldSpec {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// A simplicial complex on a vertex set, stored by its facets.
///
/// An empty facet list is the void complex (no faces). The facet list
/// `[∅]` is the complex whose only face is the empty set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: SqFreeMonomial,
    facets: Vec<SqFreeMonomial>,
}

impl SimplicialComplex {
    /// Builds the complex generated by `faces`; non-maximal entries are dropped.
    pub fn new(vertices: SqFreeMonomial, faces: Vec<SqFreeMonomial>) -> Result<Self> {
        if faces.iter().any(|f| !f.divides(vertices)) {
            return Err(Error::VerticesOutsideComplex);
        }
        Ok(Self { vertices, facets: maximalize(faces) })
    }

    pub fn void(vertices: SqFreeMonomial) -> Self {
        Self { vertices, facets: Vec::new() }
    }

    pub fn simplex(vertices: SqFreeMonomial) -> Self {
        Self { vertices, facets: vec![vertices] }
    }

    pub fn vertices(&self) -> SqFreeMonomial {
        self.vertices
    }

    pub fn facets(&self) -> &[SqFreeMonomial] {
        &self.facets
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn is_face(&self, f: SqFreeMonomial) -> bool {
        self.facets.iter().any(|g| f.divides(*g))
    }

    /// Dimension of the largest facet; `None` for the void complex.
    pub fn dim(&self) -> Option<isize> {
        self.facets.iter().map(|f| f.degree() as isize - 1).max()
    }

    /// Faces grouped by size: `result[k]` holds the faces with `k` vertices
    /// (dimension `k - 1`), each list sorted by bitmask.
    pub fn faces_by_size(&self) -> Vec<Vec<SqFreeMonomial>> {
        let Some(dim) = self.dim() else {
            return Vec::new();
        };
        let mut out = vec![Vec::new(); (dim + 2) as usize];
        for f in self.vertices.subsets().filter(|f| self.is_face(*f)) {
            out[f.degree()].push(f);
        }
        out
    }

    /// `Δ|_W`: faces of `self` contained in `w`.
    pub fn restrict(&self, w: SqFreeMonomial) -> Result<SimplicialComplex> {
        if !w.divides(self.vertices) {
            return Err(Error::VerticesOutsideComplex);
        }
        let faces = self.facets.iter().map(|f| f.gcd(w)).collect();
        Ok(Self { vertices: w, facets: maximalize(faces) })
    }
}

/// The complex of supports of square-free monomials outside `a`.
pub fn stanley_reisner(a: &MonomialIdeal) -> Result<SimplicialComplex> {
    if a.is_unit() {
        return Err(Error::UnsupportedIdeal("unit"));
    }
    let vertices = a.ambient().full();
    // downward closed, so F is maximal iff no single vertex extends it
    let facets = vertices
        .subsets()
        .filter(|f| !a.contains_monomial(*f))
        .filter(|f| {
            vertices
                .without(*f)
                .indices()
                .all(|v| a.contains_monomial(f.with_var(v)))
        })
        .collect::<Vec<_>>();
    Ok(SimplicialComplex { vertices, facets: maximalize(facets) })
}

/// Reduced homology ranks `h̃_i` for `i = -1 ..= dim`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedHomology {
    ranks: Vec<usize>,
}

impl ReducedHomology {
    /// `h̃_i`; zero outside the stored range.
    pub fn get(&self, i: isize) -> usize {
        usize::try_from(i + 1).ok().and_then(|k| self.ranks.get(k)).copied().unwrap_or(0)
    }

    /// Ranks starting at `i = -1`.
    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn is_acyclic(&self) -> bool {
        self.ranks.iter().all(|&r| r == 0)
    }
}

/// Boundary map from `k`-vertex faces to `(k-1)`-vertex faces.
pub fn boundary_matrix(domain: &[SqFreeMonomial], codomain: &[SqFreeMonomial]) -> IntMatrix {
    let mut m = IntMatrix::zeros(codomain.len(), domain.len());
    for (col, face) in domain.iter().enumerate() {
        for (pos, v) in face.indices().enumerate() {
            let facet = SqFreeMonomial(face.bits() & !(1 << v));
            let row = codomain.binary_search(&facet).expect("boundary face present");
            m.set(row, col, if pos % 2 == 0 { 1 } else { -1 });
        }
    }
    m
}

/// Reduced simplicial homology of a non-void complex over `field`.
pub fn reduced_homology_ranks(d: &SimplicialComplex, field: FieldSpec) -> Result<ReducedHomology> {
    if d.is_void() {
        return Err(Error::VoidComplex);
    }
    let faces = d.faces_by_size();
    // boundary_ranks[k] = rank of ∂ from k-vertex faces to (k-1)-vertex faces
    let mut boundary_ranks = vec![0usize; faces.len() + 1];
    for k in 1..faces.len() {
        boundary_ranks[k] = field.rank(&boundary_matrix(&faces[k], &faces[k - 1]));
    }
    let ranks = (0..faces.len())
        .map(|k| faces[k].len() - boundary_ranks[k] - boundary_ranks[k + 1])
        .collect();
    Ok(ReducedHomology { ranks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::{veronese_ideal, Ambient, Block};

    fn set(bits: &[usize]) -> SqFreeMonomial {
        SqFreeMonomial::from_indices(bits.iter().copied())
    }

    fn hollow_triangle() -> SimplicialComplex {
        SimplicialComplex::new(set(&[0, 1, 2]), vec![set(&[0, 1]), set(&[0, 2]), set(&[1, 2])]).unwrap()
    }

    #[test]
    fn field_parsing() {
        assert_eq!("q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert_eq!("GF3".parse::<FieldSpec>().unwrap(), FieldSpec::PrimeField(3));
        assert_eq!("gf4".parse::<FieldSpec>(), Err(Error::NotPrime(4)));
        assert!(matches!("r".parse::<FieldSpec>(), Err(Error::UnknownField(_))));
        assert_eq!(FieldSpec::PrimeField(7).to_string(), "gf7");
    }

    #[test]
    fn stanley_reisner_examples() {
        let a = Ambient::new(3, 0).unwrap();
        let sr = stanley_reisner(&veronese_ideal(a, Block::X, 3).unwrap()).unwrap();
        assert_eq!(sr, hollow_triangle());

        let b = Ambient::new(2, 0).unwrap();
        let sr = stanley_reisner(&veronese_ideal(b, Block::X, 1).unwrap()).unwrap();
        assert_eq!(sr.facets(), &[SqFreeMonomial::ONE]);

        let c = Ambient::new(2, 1).unwrap();
        let sr = stanley_reisner(&MonomialIdeal::zero(c)).unwrap();
        assert_eq!(sr, SimplicialComplex::simplex(c.full()));

        assert_eq!(stanley_reisner(&MonomialIdeal::unit(c)), Err(Error::UnsupportedIdeal("unit")));
    }

    #[test]
    fn sr_of_veronese_is_skeleton() {
        for n in 1..=6 {
            let a = Ambient::new(n, 0).unwrap();
            for k in 1..=n {
                let sr = stanley_reisner(&veronese_ideal(a, Block::X, k).unwrap()).unwrap();
                let expected: Vec<_> = a.full().subsets().filter(|f| f.degree() == k - 1).collect();
                assert_eq!(sr.facets().len(), expected.len());
                assert!(expected.iter().all(|f| sr.facets().contains(f)));
            }
        }
    }

    #[test]
    fn restrict_examples() {
        let t = hollow_triangle();
        assert_eq!(t.restrict(set(&[0, 1])).unwrap().facets(), &[set(&[0, 1])]);
        assert_eq!(t.restrict(SqFreeMonomial::ONE).unwrap().facets(), &[SqFreeMonomial::ONE]);
        let v = SimplicialComplex::void(set(&[0, 1]));
        assert!(v.restrict(SqFreeMonomial::ONE).unwrap().is_void());
        let s = SimplicialComplex::simplex(set(&[0, 1, 2]));
        assert_eq!(s.restrict(set(&[0, 2])).unwrap(), SimplicialComplex::simplex(set(&[0, 2])));
        assert_eq!(t.restrict(set(&[3])), Err(Error::VerticesOutsideComplex));
    }

    #[test]
    fn homology_examples() {
        let h = reduced_homology_ranks(&hollow_triangle(), FieldSpec::Rationals).unwrap();
        assert_eq!(h.ranks(), &[0, 0, 1]);

        let points = SimplicialComplex::new(set(&[0, 1, 2]), vec![set(&[0]), set(&[1]), set(&[2])]).unwrap();
        assert_eq!(reduced_homology_ranks(&points, FieldSpec::Rationals).unwrap().ranks(), &[0, 2]);

        let empty = SimplicialComplex::new(set(&[0, 1]), vec![SqFreeMonomial::ONE]).unwrap();
        assert_eq!(reduced_homology_ranks(&empty, FieldSpec::Rationals).unwrap().ranks(), &[1]);

        let full = SimplicialComplex::simplex(set(&[0, 1, 2, 3]));
        assert!(reduced_homology_ranks(&full, FieldSpec::Rationals).unwrap().is_acyclic());

        assert_eq!(
            reduced_homology_ranks(&SimplicialComplex::void(set(&[0])), FieldSpec::Rationals),
            Err(Error::VoidComplex)
        );
    }

    #[test]
    fn hollow_triangle_over_several_fields() {
        for field in [FieldSpec::Rationals, FieldSpec::PrimeField(2), FieldSpec::PrimeField(3)] {
            assert_eq!(reduced_homology_ranks(&hollow_triangle(), field).unwrap().ranks(), &[0, 0, 1]);
        }
    }

    #[test]
    fn projective_plane_sees_characteristic() {
        // 6-vertex triangulation of RP^2: h̃_1 = h̃_2 = 1 over GF(2), 0 over Q
        let tris = [
            [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1],
            [1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3],
        ];
        let facets = tris.iter().map(|t| set(t)).collect();
        let rp2 = SimplicialComplex::new(set(&[0, 1, 2, 3, 4, 5]), facets).unwrap();
        let q = reduced_homology_ranks(&rp2, FieldSpec::Rationals).unwrap();
        let f2 = reduced_homology_ranks(&rp2, FieldSpec::PrimeField(2)).unwrap();
        assert_eq!(q.ranks(), &[0, 0, 0, 0]);
        assert_eq!(f2.ranks(), &[0, 0, 1, 1]);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_complex() -> impl Strategy<Value = SimplicialComplex> {
            prop::collection::vec(0u32..64, 1..8).prop_map(|raw| {
                SimplicialComplex::new(SqFreeMonomial(63), raw.into_iter().map(SqFreeMonomial).collect()).unwrap()
            })
        }

        proptest! {
            #[test]
            fn euler_characteristic(d in arb_complex(), p in prop::sample::select(vec![0u64, 2, 3])) {
                let field = if p == 0 { FieldSpec::Rationals } else { FieldSpec::PrimeField(p) };
                let h = reduced_homology_ranks(&d, field).unwrap();
                let faces = d.faces_by_size();
                let chi: i64 = faces.iter().enumerate().map(|(k, fs)| if k % 2 == 1 { fs.len() as i64 } else { -(fs.len() as i64) }).sum();
                let hchi: i64 = h.ranks().iter().enumerate().map(|(k, &r)| if k % 2 == 1 { r as i64 } else { -(r as i64) }).sum();
                prop_assert_eq!(chi, hchi);
            }

            #[test]
            fn boundary_squares_to_zero(d in arb_complex()) {
                let faces = d.faces_by_size();
                for k in 1..faces.len() {
                    let b = boundary_matrix(&faces[k], &faces[k - 1]);
                    prop_assert_eq!(FieldSpec::Rationals.rank(&b), FieldSpec::Rationals.rank(&b.transpose()));
                    if k + 1 < faces.len() {
                        let next = boundary_matrix(&faces[k + 1], &faces[k]);
                        for i in 0..b.rows() {
                            for j in 0..next.cols() {
                                let s: i64 = (0..b.cols()).map(|l| b.get(i, l) * next.get(l, j)).sum();
                                prop_assert_eq!(s, 0);
                            }
                        }
                    }
                }
            }

            #[test]
            fn restriction_composes(d in arb_complex(), w in 0u32..64, w2 in 0u32..64) {
                let w = SqFreeMonomial(w);
                let w2 = SqFreeMonomial(w2 & w.bits());
                let lhs = d.restrict(w).unwrap().restrict(w2).unwrap();
                prop_assert_eq!(lhs, d.restrict(w2).unwrap());
            }
        }
    }
}
