//! Closed-form invariants of mixed product ideals `I_qJ_r + I_sJ_t` and the
//! explicit syzygy and Koszul-cycle witnesses behind the lower bounds.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::{Ambient, MixedProductSpec, SqFreeMonomial};
use crate::invariants::{InvariantReport, Method};

/// Which family a canonical spec belongs to. Also names the
/// Cohen–Macaulay criterion that applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseLabel {
    /// `I_q`
    PowerX,
    /// `J_r`
    PowerY,
    /// `I_s + J_r`
    PureSum,
    /// `I_qJ_r`, `q, r >= 1`
    Product,
    /// `I_qJ_r + I_s`, `q >= 1`
    ProductPlusX,
    /// `J_r + I_sJ_t`, `t >= 1`
    ProductPlusY,
    /// `I_qJ_r + I_sJ_t`, `q, t >= 1`
    TwoProducts,
}

impl CaseLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseLabel::PowerX => "power_x",
            CaseLabel::PowerY => "power_y",
            CaseLabel::PureSum => "pure_sum",
            CaseLabel::Product => "product",
            CaseLabel::ProductPlusX => "product_plus_x",
            CaseLabel::ProductPlusY => "product_plus_y",
            CaseLabel::TwoProducts => "two_products",
        }
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Shape of a canonical spec with its degree parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Shape {
    PowerX { q: usize },
    PowerY { r: usize },
    PureSum { r: usize, s: usize },
    Product { q: usize, r: usize },
    ProductPlusX { q: usize, r: usize, s: usize },
    ProductPlusY { r: usize, s: usize, t: usize },
    TwoProducts { q: usize, r: usize, s: usize, t: usize },
}

impl Shape {
    fn label(&self) -> CaseLabel {
        match self {
            Shape::PowerX { .. } => CaseLabel::PowerX,
            Shape::PowerY { .. } => CaseLabel::PowerY,
            Shape::PureSum { .. } => CaseLabel::PureSum,
            Shape::Product { .. } => CaseLabel::Product,
            Shape::ProductPlusX { .. } => CaseLabel::ProductPlusX,
            Shape::ProductPlusY { .. } => CaseLabel::ProductPlusY,
            Shape::TwoProducts { .. } => CaseLabel::TwoProducts,
        }
    }
}

fn shape_of(spec: &MixedProductSpec) -> Result<Shape> {
    if !spec.is_canonical() {
        return Err(Error::NonCanonicalSpec);
    }
    if spec.is_unit() {
        return Err(Error::UnsupportedIdeal("unit"));
    }
    match spec.terms() {
        [t] => Ok(match (t.x_deg, t.y_deg) {
            (q, 0) => Shape::PowerX { q },
            (0, r) => Shape::PowerY { r },
            (q, r) => Shape::Product { q, r },
        }),
        // canonical order guarantees q < s and t < r
        [a, b] => {
            let (q, r, s, t) = (a.x_deg, a.y_deg, b.x_deg, b.y_deg);
            Ok(match (q, t) {
                (0, 0) => Shape::PureSum { r, s },
                (_, 0) => Shape::ProductPlusX { q, r, s },
                (0, _) => Shape::ProductPlusY { r, s, t },
                _ => Shape::TwoProducts { q, r, s, t },
            })
        }
        terms => Err(Error::UnsupportedShape(format!("{} canonical terms (at most 2 supported)", terms.len()))),
    }
}

/// Family of a canonical spec.
pub fn case_label(spec: &MixedProductSpec) -> Result<CaseLabel> {
    Ok(shape_of(spec)?.label())
}

/// Castelnuovo–Mumford regularity of the ideal.
pub fn reg_formula(spec: &MixedProductSpec) -> Result<usize> {
    Ok(match shape_of(spec)? {
        Shape::PowerX { q } => q,
        Shape::PowerY { r } => r,
        Shape::Product { q, r } => q + r,
        Shape::PureSum { r, s } | Shape::ProductPlusX { r, s, .. } | Shape::ProductPlusY { r, s, .. } => r + s - 1,
        Shape::TwoProducts { r, s, .. } => r + s - 1,
    })
}

/// Krull dimension of `S/I`.
pub fn dim_formula(spec: &MixedProductSpec) -> Result<usize> {
    let (n, m) = (spec.ambient().n(), spec.ambient().m());
    Ok(match shape_of(spec)? {
        Shape::PowerX { q } => m + q - 1,
        Shape::PowerY { r } => n + r - 1,
        Shape::Product { q, r } => n + m - (n - q + 1).min(m - r + 1),
        Shape::PureSum { r, s } => r + s - 2,
        Shape::ProductPlusX { q, r, s } => n + m - (n - q + 1).min(n + m + 2 - (r + s)),
        Shape::ProductPlusY { .. } => dim_formula(&spec.swapped())?,
        Shape::TwoProducts { q, r, s, t } => n + m - (n - q + 1).min(m - t + 1).min(n + m + 2 - (r + s)),
    })
}

/// Depth of `S/I`.
pub fn depth_formula(spec: &MixedProductSpec) -> Result<usize> {
    let (n, m) = (spec.ambient().n(), spec.ambient().m());
    Ok(match shape_of(spec)? {
        Shape::PowerX { q } => m + q - 1,
        Shape::PowerY { r } => n + r - 1,
        Shape::Product { q, r } => q + r - 1,
        Shape::PureSum { r, s } => r + s - 2,
        Shape::ProductPlusX { q, r, .. } => q + r - 1,
        Shape::ProductPlusY { .. } => depth_formula(&spec.swapped())?,
        Shape::TwoProducts { q, r, s, t } => (q + r).min(s + t) - 1,
    })
}

/// Whether `S/I` is Cohen–Macaulay, with the family that decided it.
pub fn cm_classify(spec: &MixedProductSpec) -> Result<(bool, CaseLabel)> {
    let (n, m) = (spec.ambient().n(), spec.ambient().m());
    let shape = shape_of(spec)?;
    let cm = match shape {
        Shape::PowerX { .. } | Shape::PowerY { .. } | Shape::PureSum { .. } => true,
        Shape::Product { q, r } => q == n && r == m,
        Shape::ProductPlusX { q, r, s } => s == q + 1 && r == m,
        Shape::ProductPlusY { .. } => cm_classify(&spec.swapped())?.0,
        Shape::TwoProducts { q, r, s, t } => r == m && s == n && t + 1 == m && q + 1 == n,
    };
    Ok((cm, shape.label()))
}

/// All formula invariants bundled; `pd` and `height` follow from depth and
/// dimension.
pub fn formula_report(spec: &MixedProductSpec) -> Result<InvariantReport> {
    let n_vars = spec.ambient().num_vars();
    let reg_ideal = reg_formula(spec)?;
    let dim = dim_formula(spec)?;
    let depth = depth_formula(spec)?;
    let (cm, _) = cm_classify(spec)?;
    Ok(InvariantReport {
        dim,
        depth,
        pd: n_vars - depth,
        reg_ideal,
        reg_quotient: reg_ideal - 1,
        cm,
        height: n_vars - dim,
        method: Method::Formula,
        field: None,
    })
}

/// First syzygy `cofactor_u·e_u - cofactor_v·e_v` between a generator `u` of
/// `I_qJ_r` and a generator `v` of `I_sJ_t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyzygyWitness {
    pub u: SqFreeMonomial,
    pub v: SqFreeMonomial,
    pub cofactor_u: SqFreeMonomial,
    pub cofactor_v: SqFreeMonomial,
    pub internal_degree: usize,
}

/// Lexicographically first witness for a two-term spec:
/// `u = x_1..x_q y_1..y_r`, `v = x_1..x_s y_1..y_t`.
pub fn syzygy_witness(spec: &MixedProductSpec) -> Result<SyzygyWitness> {
    if !spec.is_canonical() {
        return Err(Error::NonCanonicalSpec);
    }
    let [a, b] = spec.terms() else {
        return Err(Error::UnsupportedShape("syzygy witness needs exactly two canonical terms".into()));
    };
    let amb = spec.ambient();
    let (q, r, s, t) = (a.x_deg, a.y_deg, b.x_deg, b.y_deg);
    let xs = |lo: usize, hi: usize| SqFreeMonomial::from_indices((lo..=hi).map(|i| amb.x(i)));
    let ys = |lo: usize, hi: usize| SqFreeMonomial::from_indices((lo..=hi).map(|j| amb.y(j)));
    let u = xs(1, q).lcm(ys(1, r));
    let v = xs(1, s).lcm(ys(1, t));
    Ok(SyzygyWitness {
        u,
        v,
        cofactor_u: xs(q + 1, s),
        cofactor_v: ys(t + 1, r),
        internal_degree: u.lcm(v).degree(),
    })
}

/// Checks `cofactor_u·u = cofactor_v·v` and that each cofactor is exactly
/// `lcm(u, v)` divided by its generator.
pub fn verify_syzygy_witness(w: &SyzygyWitness) -> bool {
    let lcm = w.u.lcm(w.v);
    w.cofactor_u.is_disjoint(w.u)
        && w.cofactor_v.is_disjoint(w.v)
        && w.cofactor_u.lcm(w.u) == w.cofactor_v.lcm(w.v)
        && w.cofactor_u == w.v.without(w.u)
        && w.cofactor_v == w.u.without(w.v)
        && w.internal_degree == lcm.degree()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KoszulSummand {
    pub sign: i8,
    pub coefficient: SqFreeMonomial,
    /// 1-based index `k` of the omitted `f_k`.
    pub omitted_y: usize,
}

/// `z = Σ_k (-1)^{k+1} y_k (e_1∧…∧e_n) ∧ (∧_{j≠k} f_j)` in the Koszul
/// complex on `x_1..x_n, y_1..y_m` tensored with `S/I_1J_1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KoszulCycleWitness {
    pub ambient: Ambient,
    pub summands: Vec<KoszulSummand>,
}

impl KoszulCycleWitness {
    /// Exterior basis indices of one summand, in increasing order: all `e_i`
    /// (indices `0..n`) then every `f_j` except the omitted one.
    fn wedge(&self, s: &KoszulSummand) -> Vec<usize> {
        let amb = self.ambient;
        (0..amb.n())
            .chain((1..=amb.m()).filter(|&j| j != s.omitted_y).map(|j| amb.y(j)))
            .collect()
    }
}

pub fn koszul_cycle_witness(ambient: Ambient) -> Result<KoszulCycleWitness> {
    if ambient.n() == 0 || ambient.m() == 0 {
        return Err(Error::EmptyBlock { n: ambient.n(), m: ambient.m() });
    }
    let summands = (1..=ambient.m())
        .map(|k| KoszulSummand {
            sign: if k % 2 == 1 { 1 } else { -1 },
            coefficient: SqFreeMonomial::from_indices([ambient.y(k)]),
            omitted_y: k,
        })
        .collect();
    Ok(KoszulCycleWitness { ambient, summands })
}

/// Expands `∂z` and checks that every surviving term has its coefficient
/// in `I_1J_1`, i.e. that `z` is a cycle modulo `I_1J_1`.
///
/// Coefficients are tracked as exponent vectors so that a malformed witness
/// producing a square is still expanded faithfully.
pub fn verify_koszul_cycle(w: &KoszulCycleWitness) -> bool {
    let amb = w.ambient;
    let n_vars = amb.num_vars();
    if amb.n() == 0 || amb.m() == 0 {
        return false;
    }
    let mut boundary: BTreeMap<(Vec<u8>, Vec<usize>), i64> = BTreeMap::new();
    for s in &w.summands {
        if !(1..=amb.m()).contains(&s.omitted_y) || !amb.contains(s.coefficient) || s.sign.abs() != 1 {
            return false;
        }
        let wedge = w.wedge(s);
        let mut exps = vec![0u8; n_vars];
        for v in s.coefficient.indices() {
            exps[v] += 1;
        }
        // ∂(a_0 ∧ … ∧ a_p) = Σ_j (-1)^j var(a_j) · (… without a_j …)
        for (pos, &var) in wedge.iter().enumerate() {
            let mut coeff = exps.clone();
            coeff[var] += 1;
            let rest: Vec<usize> = wedge.iter().copied().filter(|&b| b != var).collect();
            let sign = i64::from(s.sign) * if pos % 2 == 0 { 1 } else { -1 };
            *boundary.entry((coeff, rest)).or_insert(0) += sign;
        }
    }
    let x_block = 0..amb.n();
    boundary.iter().filter(|(_, &c)| c != 0).all(|((exps, _), _)| {
        let has_x = exps[x_block.clone()].iter().any(|&e| e > 0);
        let has_y = exps[amb.n()..].iter().any(|&e| e > 0);
        has_x && has_y
    })
}
