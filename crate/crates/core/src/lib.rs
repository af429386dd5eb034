//! Algebraic invariants of mixed product ideals `I_qJ_r + I_sJ_t` in
//! `K[x_1..x_n, y_1..y_m]`.
//!
//! Two independent routes compute the same numbers:
//!
//! * [`mixed`] evaluates closed-form formulas for regularity, dimension,
//!   depth and Cohen–Macaulayness on a canonical [`MixedProductSpec`].
//! * [`invariants`] realizes the ideal, builds its Stanley–Reisner complex
//!   and reads graded Betti numbers off reduced simplicial homology
//!   (Hochster's formula), computed exactly over `Q` or `GF(p)`.
//!
//! [`harness`] compares the two over exhaustive parameter ranges.
//!
//! ```
//! use mixprod::{formula_report, oracle_report, realize_spec, Ambient, FieldSpec, MixedProductSpec, Term};
//!
//! let spec = MixedProductSpec::canonical(
//!     Ambient::new(2, 2).unwrap(),
//!     vec![Term::new(1, 2), Term::new(2, 1)],
//! )
//! .unwrap();
//! let formula = formula_report(&spec).unwrap();
//! let oracle = oracle_report(&realize_spec(&spec), FieldSpec::PrimeField(2)).unwrap();
//! assert_eq!((formula.dim, formula.depth, formula.reg_ideal, formula.cm), (2, 2, 3, true));
//! assert_eq!((oracle.dim, oracle.depth, oracle.reg_ideal, oracle.cm), (2, 2, 3, true));
//! ```

pub mod error;
pub mod harness;
pub mod homology;
pub mod ideal;
pub mod invariants;
pub mod mixed;
pub mod rank;

pub use error::{Error, Result};
pub use homology::{reduced_homology_ranks, stanley_reisner, FieldSpec, ReducedHomology, SimplicialComplex};
pub use ideal::{
    alexander_dual, canonicalize_spec, contains_monomial, ideal_intersect, ideal_product, ideal_sum, krull_dim,
    minimal_primes, realize_spec, veronese_ideal, Ambient, Block, MixedProductSpec, MonomialIdeal, SqFreeMonomial,
    Term, MAX_VARS,
};
pub use invariants::{betti_stats, has_linear_resolution, hochster_betti, oracle_report, BettiTable, InvariantReport, Method};
pub use mixed::{
    cm_classify, depth_formula, dim_formula, formula_report, koszul_cycle_witness, reg_formula, syzygy_witness,
    verify_koszul_cycle, verify_syzygy_witness, CaseLabel, KoszulCycleWitness, SyzygyWitness,
};
