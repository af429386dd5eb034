//! Formula-vs-oracle sweeps and the JSON report schema used by the CLI.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::FieldSpec;
use crate::ideal::{realize_spec, Ambient, MixedProductSpec, Term, MAX_VARS};
use crate::invariants::{oracle_report_with_betti, BettiTable, InvariantReport};
use crate::mixed::{
    case_label, formula_report, koszul_cycle_witness, syzygy_witness, verify_koszul_cycle,
    verify_syzygy_witness, CaseLabel,
};

/// Parses `1,2+2,1` into `[(1,2), (2,1)]`.
pub fn parse_terms(s: &str) -> Result<Vec<Term>> {
    let err = || Error::TermSyntax(s.to_string());
    s.split('+')
        .map(|part| {
            let (k, l) = part.trim().split_once(',').ok_or_else(err)?;
            let k = k.trim().parse().map_err(|_| err())?;
            let l = l.trim().parse().map_err(|_| err())?;
            Ok(Term::new(k, l))
        })
        .collect()
}

pub fn format_terms(terms: &[Term]) -> String {
    terms.iter().map(Term::to_string).collect::<Vec<_>>().join("+")
}

/// Every canonical one- and two-term spec with `n <= max_n`, `m <= max_m`.
///
/// Ambients are visited in `(n, m)` order; within an ambient single terms
/// come first, then pairs `(q,r),(s,t)` with `q < s`, `t < r`.
pub fn enumerate_specs(max_n: usize, max_m: usize) -> Result<Vec<MixedProductSpec>> {
    if max_n + max_m > MAX_VARS {
        return Err(Error::CapExceeded { requested: max_n + max_m, cap: MAX_VARS });
    }
    let mut out = Vec::new();
    for n in 0..=max_n {
        for m in 0..=max_m {
            if n + m == 0 {
                continue;
            }
            let ambient = Ambient::new(n, m)?;
            for k in 0..=n {
                for l in 0..=m {
                    if k + l > 0 {
                        out.push(MixedProductSpec::canonical(ambient, vec![Term::new(k, l)])?);
                    }
                }
            }
            for q in 0..=n {
                for s in q + 1..=n {
                    for t in 0..=m {
                        for r in t + 1..=m {
                            out.push(MixedProductSpec::canonical(ambient, vec![Term::new(q, r), Term::new(s, t)])?);
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub max_n: usize,
    pub max_m: usize,
    pub fields: Vec<FieldSpec>,
    pub include_witness_checks: bool,
}

impl SweepConfig {
    pub fn new(max_n: usize, max_m: usize, fields: Vec<FieldSpec>) -> Self {
        Self { max_n, max_m, fields, include_witness_checks: true }
    }
}

/// A spec in report form: `{ambient: {n, m}, ideal: [[k, l], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecRecord {
    pub ambient: AmbientRecord,
    pub ideal: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmbientRecord {
    pub n: usize,
    pub m: usize,
}

impl From<&MixedProductSpec> for SpecRecord {
    fn from(spec: &MixedProductSpec) -> Self {
        SpecRecord {
            ambient: AmbientRecord { n: spec.ambient().n(), m: spec.ambient().m() },
            ideal: spec.terms().iter().map(|t| [t.x_deg, t.y_deg]).collect(),
        }
    }
}

impl TryFrom<&SpecRecord> for MixedProductSpec {
    type Error = Error;

    fn try_from(r: &SpecRecord) -> Result<Self> {
        let ambient = Ambient::new(r.ambient.n, r.ambient.m)?;
        MixedProductSpec::new(ambient, r.ideal.iter().map(|&[k, l]| Term::new(k, l)).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InvariantValue {
    Int(usize),
    Bool(bool),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub spec: SpecRecord,
    pub field: FieldSpec,
    pub invariant: String,
    pub formula: InvariantValue,
    pub oracle: InvariantValue,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessFailure {
    pub spec: SpecRecord,
    pub witness: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub config: SweepConfig,
    pub cases_run: usize,
    pub mismatches: Vec<Mismatch>,
    pub witness_failures: Vec<WitnessFailure>,
    pub elapsed_secs: f64,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.witness_failures.is_empty()
    }

    /// Equality ignoring timing.
    pub fn same_content(&self, other: &SweepReport) -> bool {
        self.config == other.config
            && self.cases_run == other.cases_run
            && self.mismatches == other.mismatches
            && self.witness_failures == other.witness_failures
    }
}

/// One (spec, field) comparison of formula and oracle invariants.
pub fn compare_reports(
    spec: &MixedProductSpec,
    field: FieldSpec,
    formula: &InvariantReport,
    oracle: &InvariantReport,
) -> Vec<Mismatch> {
    let ints = [
        ("dim", formula.dim, oracle.dim),
        ("depth", formula.depth, oracle.depth),
        ("pd", formula.pd, oracle.pd),
        ("reg", formula.reg_ideal, oracle.reg_ideal),
    ];
    let mut out: Vec<Mismatch> = ints
        .into_iter()
        .filter(|(_, f, o)| f != o)
        .map(|(name, f, o)| Mismatch {
            spec: spec.into(),
            field,
            invariant: name.to_string(),
            formula: InvariantValue::Int(f),
            oracle: InvariantValue::Int(o),
        })
        .collect();
    if formula.cm != oracle.cm {
        out.push(Mismatch {
            spec: spec.into(),
            field,
            invariant: "cm".to_string(),
            formula: InvariantValue::Bool(formula.cm),
            oracle: InvariantValue::Bool(oracle.cm),
        });
    }
    out
}

fn unit_outcome(spec: &MixedProductSpec, field: FieldSpec) -> Vec<Mismatch> {
    let failed = |invariant: &str, detail: String| {
        vec![Mismatch {
            spec: spec.into(),
            field,
            invariant: format!("{invariant}: {detail}"),
            formula: InvariantValue::Bool(false),
            oracle: InvariantValue::Bool(false),
        }]
    };
    let formula = match formula_report(spec) {
        Ok(r) => r,
        Err(e) => return failed("formula_error", e.to_string()),
    };
    match oracle_report_with_betti(&realize_spec(spec), field) {
        Ok((oracle, _)) => compare_reports(spec, field, &formula, &oracle),
        Err(e) => failed("oracle_error", e.to_string()),
    }
}

fn witness_failures(spec: &MixedProductSpec) -> Vec<WitnessFailure> {
    let mut out = Vec::new();
    if spec.terms().len() == 2 {
        match syzygy_witness(spec) {
            Ok(w) if verify_syzygy_witness(&w) => {
                let reg = crate::mixed::reg_formula(spec).ok();
                if reg != Some(w.internal_degree - 1) {
                    out.push(WitnessFailure {
                        spec: spec.into(),
                        witness: "syzygy".into(),
                        detail: format!("degree {} does not certify reg {:?}", w.internal_degree, reg),
                    });
                }
            }
            Ok(_) => out.push(WitnessFailure { spec: spec.into(), witness: "syzygy".into(), detail: "verification failed".into() }),
            Err(e) => out.push(WitnessFailure { spec: spec.into(), witness: "syzygy".into(), detail: e.to_string() }),
        }
    }
    let amb = spec.ambient();
    if spec.terms() == [Term::new(1, 1)] && amb.n() >= 1 && amb.m() >= 1 {
        let ok = koszul_cycle_witness(amb).map(|w| verify_koszul_cycle(&w)).unwrap_or(false);
        if !ok {
            out.push(WitnessFailure { spec: spec.into(), witness: "koszul".into(), detail: "not a cycle".into() });
        }
    }
    out
}

/// Runs the sweep on the current rayon pool. Output order follows
/// [`enumerate_specs`] and then the field order, regardless of scheduling.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepReport> {
    let start = Instant::now();
    let specs = enumerate_specs(cfg.max_n, cfg.max_m)?;
    let units: Vec<(&MixedProductSpec, FieldSpec)> =
        specs.iter().flat_map(|s| cfg.fields.iter().map(move |f| (s, *f))).collect();
    let mismatches: Vec<Mismatch> = units
        .par_iter()
        .map(|(spec, field)| unit_outcome(spec, *field))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    let witness_failures = if cfg.include_witness_checks {
        specs.par_iter().map(witness_failures).collect::<Vec<_>>().into_iter().flatten().collect()
    } else {
        Vec::new()
    };
    Ok(SweepReport {
        config: cfg.clone(),
        cases_run: units.len(),
        mismatches,
        witness_failures,
        elapsed_secs: start.elapsed().as_secs_f64(),
    })
}

/// [`run_sweep`] on a dedicated pool of `jobs` threads.
pub fn run_sweep_with_jobs(cfg: &SweepConfig, jobs: usize) -> Result<SweepReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool");
    pool.install(|| run_sweep(cfg))
}

/// `formula` / `oracle` blocks of the invariants report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportBlock {
    pub dim: usize,
    pub depth: usize,
    pub pd: usize,
    pub reg_ideal: usize,
    pub reg_quotient: usize,
    pub cm: bool,
    pub height: usize,
    pub case: Option<CaseLabel>,
}

impl ReportBlock {
    pub fn new(r: &InvariantReport, case: Option<CaseLabel>) -> Self {
        ReportBlock {
            dim: r.dim,
            depth: r.depth,
            pd: r.pd,
            reg_ideal: r.reg_ideal,
            reg_quotient: r.reg_quotient,
            cm: r.cm,
            height: r.height,
            case,
        }
    }
}

/// Output of the `invariants` and `betti` commands.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsDocument {
    pub ambient: AmbientRecord,
    pub ideal: Vec<[usize; 2]>,
    pub field: FieldSpec,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub formula: Option<ReportBlock>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub oracle: Option<ReportBlock>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub betti: Option<Vec<[u64; 3]>>,
}

impl InvariantsDocument {
    pub fn new(spec: &MixedProductSpec, field: FieldSpec) -> Self {
        let rec = SpecRecord::from(spec);
        InvariantsDocument { ambient: rec.ambient, ideal: rec.ideal, field, formula: None, oracle: None, betti: None }
    }

    /// Formula and oracle blocks both present and equal.
    pub fn agrees(&self) -> bool {
        match (&self.formula, &self.oracle) {
            (Some(f), Some(o)) => f == o,
            _ => true,
        }
    }
}

/// Betti entries as `[i, j, rank]`, sorted lexicographically.
pub fn betti_rows(b: &BettiTable) -> Vec<[u64; 3]> {
    b.entries().map(|((i, j), r)| [i as u64, j as u64, r]).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodChoice {
    Formula,
    Oracle,
    Both,
}

/// Builds the invariants document for a (canonical) spec.
pub fn invariants_document(
    spec: &MixedProductSpec,
    method: MethodChoice,
    field: FieldSpec,
    with_betti: bool,
) -> Result<InvariantsDocument> {
    let mut doc = InvariantsDocument::new(spec, field);
    let case = case_label(spec).ok();
    if matches!(method, MethodChoice::Formula | MethodChoice::Both) {
        doc.formula = Some(ReportBlock::new(&formula_report(spec)?, case));
    }
    if matches!(method, MethodChoice::Oracle | MethodChoice::Both) || with_betti {
        let (oracle, betti) = oracle_report_with_betti(&realize_spec(spec), field)?;
        if method != MethodChoice::Formula {
            doc.oracle = Some(ReportBlock::new(&oracle, case));
        }
        if with_betti {
            doc.betti = Some(betti_rows(&betti));
        }
    }
    Ok(doc)
}
