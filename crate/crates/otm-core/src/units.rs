//! Unit verification, total positivity, the admissibility rank
//! condition, and assembly of a validated OT datum.
//!
//! The additive lattice is fixed to the order `H = Z[theta]`, so datum
//! generators must be units of that order (integer coordinates for both
//! the unit and its inverse); this is what makes the affine group law
//! close over `H`.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed};

use crate::embeddings::{signature, EmbeddingSet, Signature};
use crate::interval::RealInterval;
use crate::numfield::{FieldElement, NumberField};
use crate::{Config, Error, Rat, Result};

/// Descriptor of the additive subgroup used throughout.
pub const ORDER_DESCRIPTOR: &str = "Z[theta]";

/// Evidence backing an `is_unit` verdict.
#[derive(Clone, Debug)]
pub struct UnitEvidence {
    pub is_algebraic_integer: bool,
    pub norm: Rat,
    /// `None` when the norm already rules the element out.
    pub inverse_is_algebraic_integer: Option<bool>,
    /// Membership of the element and its inverse in `Z[theta]`.
    pub in_order: bool,
    pub inverse_in_order: Option<bool>,
    pub verdict: bool,
}

/// Unit test with evidence: an algebraic integer of norm `+-1` whose
/// inverse is again an algebraic integer.
pub fn check_unit(alpha: &FieldElement) -> UnitEvidence {
    let is_algebraic_integer = alpha.is_algebraic_integer();
    let norm = if alpha.is_zero() {
        Rat::from_integer(crate::int(0))
    } else {
        alpha.norm()
    };
    let norm_is_unit = norm.abs().is_one();
    if !norm_is_unit {
        return UnitEvidence {
            is_algebraic_integer,
            norm,
            inverse_is_algebraic_integer: None,
            in_order: alpha.has_integer_coords(),
            inverse_in_order: None,
            verdict: false,
        };
    }
    let inverse = alpha.inverse().expect("nonzero: |norm| = 1");
    let inv_integral = inverse.is_algebraic_integer();
    UnitEvidence {
        is_algebraic_integer,
        norm,
        inverse_is_algebraic_integer: Some(inv_integral),
        in_order: alpha.has_integer_coords(),
        inverse_in_order: Some(inverse.has_integer_coords()),
        verdict: is_algebraic_integer && inv_integral,
    }
}

pub fn is_unit(alpha: &FieldElement) -> bool {
    check_unit(alpha).verdict
}

/// Positive under every real embedding. Signs are decided exactly.
pub fn is_totally_positive(emb: &EmbeddingSet, u: &FieldElement) -> Result<bool> {
    let s = emb.signature().s;
    for i in 0..s {
        if emb.sign_real(u, i)? != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of the admissibility check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AdmissibilityStatus {
    Pass,
    Fail(String),
    Indeterminate(String),
}

/// The admissibility matrix and its certified determinant.
#[derive(Clone, Debug)]
pub struct AdmissibilityEvidence {
    /// `matrix[i][k] = log sigma_i(u_k)`: embedding `i`, generator `k`.
    pub matrix: Vec<Vec<RealInterval>>,
    pub determinant: RealInterval,
    pub certified_nonzero: bool,
    /// 1-norm condition number estimate from midpoints (diagnostic only).
    pub condition_estimate: f64,
    /// Precision at which the verdict was reached.
    pub precision_bits: u32,
    pub tolerance_log2: i64,
    pub status: AdmissibilityStatus,
}

impl AdmissibilityEvidence {
    pub fn passed(&self) -> bool {
        self.status == AdmissibilityStatus::Pass
    }
}

/// Build the `s x s` matrix `log sigma_i(u_k)` over the real embeddings
/// and certify that its determinant is nonzero. An enclosure of the
/// determinant that straddles zero triggers automatic precision doubling
/// up to the configured cap before an `Indeterminate` verdict surfaces.
pub fn admissibility_check(
    field: &Arc<NumberField>,
    generators: &[FieldElement],
    config: &Config,
) -> Result<AdmissibilityEvidence> {
    let emb = EmbeddingSet::new(field, config.precision_bits)?;
    admissibility_check_with(&emb, generators, config)
}

pub fn admissibility_check_with(
    emb: &EmbeddingSet,
    generators: &[FieldElement],
    config: &Config,
) -> Result<AdmissibilityEvidence> {
    let sig = emb.signature();
    let s = sig.s;
    if s == 0 || generators.len() != s {
        return Err(Error::Precondition(format!(
            "admissibility needs exactly s = {s} generators, got {}",
            generators.len()
        )));
    }
    if s > 8 {
        return Err(Error::Precondition(
            "admissibility determinant supported up to s = 8".into(),
        ));
    }

    // Exact singularity: identical generators give identical columns.
    for a in 0..generators.len() {
        for b in (a + 1)..generators.len() {
            if generators[a] == generators[b] {
                let matrix = log_matrix(emb, generators, config.precision_bits)?;
                let cond = condition_estimate(&matrix);
                return Ok(AdmissibilityEvidence {
                    matrix,
                    determinant: RealInterval::zero(),
                    certified_nonzero: false,
                    condition_estimate: cond,
                    precision_bits: config.precision_bits,
                    tolerance_log2: config.tolerance_log2,
                    status: AdmissibilityStatus::Fail(format!(
                        "generators {a} and {b} are identical: singular matrix"
                    )),
                });
            }
        }
    }

    let tolerance = config.tolerance();
    let mut prec = config.precision_bits;
    let mut last: Option<(Vec<Vec<RealInterval>>, RealInterval)> = None;
    loop {
        let matrix = log_matrix(emb, generators, prec)?;
        let det = det_interval(&matrix, prec);
        if !det.contains_zero() {
            let cond = condition_estimate(&matrix);
            return Ok(AdmissibilityEvidence {
                matrix,
                determinant: det,
                certified_nonzero: true,
                condition_estimate: cond,
                precision_bits: prec,
                tolerance_log2: config.tolerance_log2,
                status: AdmissibilityStatus::Pass,
            });
        }
        last = Some((matrix, det));
        if prec >= config.precision_cap {
            break;
        }
        prec = (prec * 2).min(config.precision_cap);
    }
    let (matrix, det) = last.expect("at least one iteration");
    let small = det.abs().hi() <= &tolerance;
    let message = if small {
        format!(
            "determinant enclosure [{}, {}] is certified below the 2^{} tolerance; the generators appear multiplicatively dependent",
            det.lo(),
            det.hi(),
            config.tolerance_log2
        )
    } else {
        format!(
            "determinant enclosure [{}, {}] straddles zero at the {prec}-bit precision cap",
            det.lo(),
            det.hi()
        )
    };
    let cond = condition_estimate(&matrix);
    Ok(AdmissibilityEvidence {
        matrix,
        determinant: det,
        certified_nonzero: false,
        condition_estimate: cond,
        precision_bits: prec,
        tolerance_log2: config.tolerance_log2,
        status: AdmissibilityStatus::Indeterminate(message),
    })
}

fn log_matrix(
    emb: &EmbeddingSet,
    generators: &[FieldElement],
    prec: u32,
) -> Result<Vec<Vec<RealInterval>>> {
    let s = emb.signature().s;
    let mut rows = Vec::with_capacity(s);
    for i in 0..s {
        let mut row = Vec::with_capacity(generators.len());
        for u in generators {
            let v = emb.eval_real(u, i, prec)?;
            if v.lo().signum() <= 0 {
                return Err(Error::Precondition(format!(
                    "generator {u} is not positive at real embedding {i}"
                )));
            }
            row.push(v.log(prec)?);
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Interval determinant by signed permutation expansion (exact interval
/// arithmetic; fine for the small `s` of admissibility matrices).
pub fn det_interval(matrix: &[Vec<RealInterval>], prec: u32) -> RealInterval {
    let n = matrix.len();
    let mut acc = RealInterval::zero();
    let mut perm: Vec<usize> = (0..n).collect();
    permute_det(&mut perm, 0, true, matrix, prec, &mut acc);
    acc
}

fn permute_det(
    perm: &mut Vec<usize>,
    k: usize,
    even: bool,
    m: &[Vec<RealInterval>],
    prec: u32,
    acc: &mut RealInterval,
) {
    let n = perm.len();
    if k == n {
        let mut term = RealInterval::from_int(if even { 1 } else { -1 });
        for (i, &j) in perm.iter().enumerate() {
            term = term.mul(&m[i][j], prec);
        }
        *acc = acc.add(&term, prec);
        return;
    }
    for i in k..n {
        perm.swap(k, i);
        permute_det(perm, k + 1, even == (i == k), m, prec, acc);
        perm.swap(k, i);
    }
}

/// Rough 1-norm condition number from interval midpoints. Diagnostic
/// only; no verdict ever depends on it.
fn condition_estimate(matrix: &[Vec<RealInterval>]) -> f64 {
    let n = matrix.len();
    let a: Vec<Vec<f64>> = matrix
        .iter()
        .map(|row| row.iter().map(|iv| iv.midpoint().to_f64()).collect())
        .collect();
    let norm1 = |m: &Vec<Vec<f64>>| -> f64 {
        let mut best = 0.0f64;
        for j in 0..n {
            let mut c = 0.0;
            for row in m {
                let v = row[j];
                c += if v < 0.0 { -v } else { v };
            }
            if c > best {
                best = c;
            }
        }
        best
    };
    // Gauss-Jordan inverse in f64.
    let mut aug: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut r = a[i].clone();
            r.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).max_by(|&x, &y| {
            let ax = if aug[x][col] < 0.0 { -aug[x][col] } else { aug[x][col] };
            let ay = if aug[y][col] < 0.0 { -aug[y][col] } else { aug[y][col] };
            ax.partial_cmp(&ay).unwrap_or(core::cmp::Ordering::Equal)
        });
        let Some(p) = pivot else {
            return f64::INFINITY;
        };
        if aug[p][col] == 0.0 {
            return f64::INFINITY;
        }
        aug.swap(col, p);
        let d = aug[col][col];
        for v in aug[col].iter_mut() {
            *v /= d;
        }
        for r in 0..n {
            if r != col && aug[r][col] != 0.0 {
                let f = aug[r][col];
                for c in 0..2 * n {
                    let sub = f * aug[col][c];
                    aug[r][c] -= sub;
                }
            }
        }
    }
    let inv: Vec<Vec<f64>> = aug.into_iter().map(|r| r[n..].to_vec()).collect();
    norm1(&a) * norm1(&inv)
}

/// One failed validation condition of a would-be OT datum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DatumFailure {
    NoRealEmbeddings,
    NoComplexEmbeddings,
    WrongGeneratorCount { expected: usize, got: usize },
    NotAUnit { index: usize },
    Torsion { index: usize },
    NotInOrder { index: usize },
    NotTotallyPositive { index: usize },
    AdmissibilityFailed(String),
    AdmissibilityIndeterminate(String),
}

impl fmt::Display for DatumFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DatumFailure::NoRealEmbeddings => write!(f, "the field has no real embeddings (s = 0)"),
            DatumFailure::NoComplexEmbeddings => {
                write!(f, "the field has no complex embeddings (t = 0)")
            }
            DatumFailure::WrongGeneratorCount { expected, got } => {
                write!(f, "expected {expected} unit generators (the rank s), got {got}")
            }
            DatumFailure::NotAUnit { index } => {
                write!(f, "generator {index} is not a unit")
            }
            DatumFailure::Torsion { index } => {
                write!(f, "generator {index} is a root of unity")
            }
            DatumFailure::NotInOrder { index } => write!(
                f,
                "generator {index} does not stabilize {ORDER_DESCRIPTOR}: it or its inverse has non-integer coordinates"
            ),
            DatumFailure::NotTotallyPositive { index } => {
                write!(f, "generator {index} is not totally positive")
            }
            DatumFailure::AdmissibilityFailed(msg) => write!(f, "admissibility failed: {msg}"),
            DatumFailure::AdmissibilityIndeterminate(msg) => {
                write!(f, "admissibility indeterminate: {msg}")
            }
        }
    }
}

/// Structured rejection: every failed condition, not just the first.
#[derive(Clone, Debug)]
pub struct DatumRejection {
    pub failures: Vec<DatumFailure>,
}

impl fmt::Display for DatumRejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid OT datum:")?;
        for failure in &self.failures {
            write!(f, "\n  - {failure}")?;
        }
        Ok(())
    }
}

/// A validated OT datum `X(K, U)` over `H = Z[theta]`.
pub struct OTDatum {
    field: Arc<NumberField>,
    signature: Signature,
    generators: Vec<FieldElement>,
    unit_evidence: Vec<UnitEvidence>,
    admissibility: AdmissibilityEvidence,
    embeddings: Arc<EmbeddingSet>,
}

/// Result of datum assembly: a valid datum or the full list of failures.
pub enum DatumOutcome {
    Valid(OTDatum),
    Rejected(DatumRejection),
}

impl DatumOutcome {
    pub fn into_datum(self) -> core::result::Result<OTDatum, DatumRejection> {
        match self {
            DatumOutcome::Valid(d) => Ok(d),
            DatumOutcome::Rejected(r) => Err(r),
        }
    }

    pub fn expect_valid(self, what: &str) -> OTDatum {
        match self {
            DatumOutcome::Valid(d) => d,
            DatumOutcome::Rejected(r) => panic!("{what}: {r}"),
        }
    }
}

/// Run the full validation pipeline on `(K, generators)`.
///
/// Internal numeric failures (precision exhaustion, non-convergence)
/// come back as `Err`; structural problems with the datum itself come
/// back as `Ok(Rejected(...))` listing every failed condition.
pub fn make_ot_datum(
    field: &Arc<NumberField>,
    generators: Vec<FieldElement>,
    config: &Config,
) -> Result<DatumOutcome> {
    let sig = signature(field);
    let mut failures = Vec::new();
    if sig.s == 0 {
        failures.push(DatumFailure::NoRealEmbeddings);
    }
    if sig.t == 0 {
        failures.push(DatumFailure::NoComplexEmbeddings);
    }
    if generators.len() != sig.s {
        failures.push(DatumFailure::WrongGeneratorCount {
            expected: sig.s,
            got: generators.len(),
        });
    }
    for g in &generators {
        if !g.field().same_field(field) {
            return Err(Error::ParentMismatch);
        }
    }

    let embeddings = Arc::new(EmbeddingSet::new(field, config.precision_bits)?);
    let mut unit_evidence = Vec::with_capacity(generators.len());
    for (index, u) in generators.iter().enumerate() {
        let ev = check_unit(u);
        if !ev.verdict {
            failures.push(DatumFailure::NotAUnit { index });
        } else {
            if u.is_one() || u.neg().is_one() {
                failures.push(DatumFailure::Torsion { index });
            }
            if !(ev.in_order && ev.inverse_in_order == Some(true)) {
                failures.push(DatumFailure::NotInOrder { index });
            }
            if sig.s > 0 && !is_totally_positive(&embeddings, u)? {
                failures.push(DatumFailure::NotTotallyPositive { index });
            }
        }
        unit_evidence.push(ev);
    }

    if !failures.is_empty() {
        return Ok(DatumOutcome::Rejected(DatumRejection { failures }));
    }

    let admissibility = admissibility_check_with(&embeddings, &generators, config)?;
    match &admissibility.status {
        AdmissibilityStatus::Pass => {}
        AdmissibilityStatus::Fail(msg) => {
            failures.push(DatumFailure::AdmissibilityFailed(msg.clone()));
        }
        AdmissibilityStatus::Indeterminate(msg) => {
            failures.push(DatumFailure::AdmissibilityIndeterminate(msg.clone()));
        }
    }
    if !failures.is_empty() {
        return Ok(DatumOutcome::Rejected(DatumRejection { failures }));
    }

    Ok(DatumOutcome::Valid(OTDatum {
        field: field.clone(),
        signature: sig,
        generators,
        unit_evidence,
        admissibility,
        embeddings,
    }))
}

impl OTDatum {
    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn generators(&self) -> &[FieldElement] {
        &self.generators
    }

    pub fn unit_evidence(&self) -> &[UnitEvidence] {
        &self.unit_evidence
    }

    pub fn admissibility(&self) -> &AdmissibilityEvidence {
        &self.admissibility
    }

    pub fn embeddings(&self) -> &Arc<EmbeddingSet> {
        &self.embeddings
    }

    /// `prod_k generators[k]^(a_k)`, exactly.
    pub fn unit_power(&self, exponents: &[i64]) -> Result<FieldElement> {
        if exponents.len() != self.generators.len() {
            return Err(Error::Precondition(
                "exponent vector length must match the generator count".into(),
            ));
        }
        let mut acc = self.field.one();
        for (u, &e) in self.generators.iter().zip(exponents) {
            acc = acc.mul(&u.pow(e)?)?;
        }
        Ok(acc)
    }
}

impl fmt::Debug for OTDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "OTDatum(Q[X]/({}), s = {}, t = {}, {} generators)",
            self.field.defining_poly(),
            self.signature.s,
            self.signature.t,
            self.generators.len()
        )
    }
}
