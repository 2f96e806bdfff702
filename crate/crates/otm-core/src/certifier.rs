//! The certification pipeline: decides the primitivity hypothesis on a
//! validated OT datum and emits a machine-checkable verdict.
//!
//! Three statuses are possible. `CertifiedNoSubvarieties` is only issued
//! on exact grounds (prime degree: the only proper subfield is Q, which
//! a torsion-free totally positive unit group meets trivially).
//! `HypothesisRefuted` always carries an exactly verified non-primitive
//! unit. Everything else is `HeuristicallyCertified` with the search
//! bounds spelled out: subfield enumeration is bounded-height and the
//! exponent search is a bounded box, so absence of a witness is evidence,
//! not proof.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Signed;

use crate::dyadic::{Dyadic, Round};
use crate::embeddings::EmbeddingSet;
use crate::interval::{ComplexBall, RealInterval};
use crate::lattice::relation_candidates;
use crate::numfield::{in_span, FieldElement, NumberField};
use crate::poly::{complex_roots, RationalPoly};
use crate::units::OTDatum;
use crate::{Config, Error, Int, Result};

/// Verdict of the certification pipeline.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertificateStatus {
    CertifiedNoSubvarieties,
    HypothesisRefuted,
    HeuristicallyCertified,
}

impl fmt::Display for CertificateStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CertificateStatus::CertifiedNoSubvarieties => "CertifiedNoSubvarieties",
            CertificateStatus::HypothesisRefuted => "HypothesisRefuted",
            CertificateStatus::HeuristicallyCertified => "HeuristicallyCertified",
        };
        write!(f, "{s}")
    }
}

/// An exactly verified non-primitive unit of the datum's group.
#[derive(Clone, Debug)]
pub struct Witness {
    pub element: FieldElement,
    pub minimal_polynomial: RationalPoly,
    pub degree: usize,
    /// Exponents over the datum generators, when the witness was found
    /// as a power product.
    pub exponents: Option<Vec<i64>>,
    /// Degree of a proper subfield containing the witness.
    pub subfield_degree: Option<usize>,
}

/// What the verdict rests on.
#[derive(Clone, Debug)]
pub enum CertificateEvidence {
    /// `n` prime: the only proper subfield is Q, and a torsion-free
    /// group of totally positive units meets Q trivially.
    PrimeDegree { degree: usize },
    NonPrimitiveUnit(Witness),
    /// All bounded searches came back empty.
    BoundedSearch {
        exponent_bound: i64,
        height_bound: i64,
        subfields_examined: usize,
    },
}

#[derive(Clone, Debug)]
pub struct Diagnostics {
    pub degree: usize,
    pub generator_minpoly_degrees: Vec<usize>,
    pub subfields_examined: usize,
    pub subfield_degrees: Vec<usize>,
    pub exponent_bound: i64,
    pub height_bound: i64,
    pub precision_bits: u32,
    pub lattice_used: bool,
}

/// Machine-checkable certification outcome.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub status: CertificateStatus,
    pub evidence: CertificateEvidence,
    pub diagnostics: Diagnostics,
}

/// Per-generator primitivity data.
#[derive(Clone, Debug)]
pub struct PrimitivityReport {
    pub index: usize,
    pub minimal_polynomial: RationalPoly,
    pub degree: usize,
    pub primitive: bool,
}

fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime-degree shortcut: for prime `n` every `u` in `U \ {1}` is
/// primitive, whatever the admissible group is.
pub fn prime_degree_shortcut(datum: &OTDatum) -> Option<Certificate> {
    let n = datum.field().degree();
    if !is_prime(n) {
        return None;
    }
    Some(Certificate {
        status: CertificateStatus::CertifiedNoSubvarieties,
        evidence: CertificateEvidence::PrimeDegree { degree: n },
        diagnostics: Diagnostics {
            degree: n,
            generator_minpoly_degrees: datum
                .generators()
                .iter()
                .map(|u| u.minimal_polynomial().degree().unwrap_or(0))
                .collect(),
            subfields_examined: 0,
            subfield_degrees: vec![],
            exponent_bound: 0,
            height_bound: 0,
            precision_bits: 0,
            lattice_used: false,
        },
    })
}

/// Exact minimal polynomial of every generator; any degree below `n`
/// refutes the hypothesis outright.
pub fn generator_primitivity(datum: &OTDatum) -> Vec<PrimitivityReport> {
    let n = datum.field().degree();
    datum
        .generators()
        .iter()
        .enumerate()
        .map(|(index, u)| {
            let minimal_polynomial = u.minimal_polynomial();
            let degree = minimal_polynomial.degree().unwrap_or(0);
            PrimitivityReport {
                index,
                minimal_polynomial,
                degree,
                primitive: degree == n,
            }
        })
        .collect()
}

/// A proper subfield `Q(beta)` presented by a generator and its power
/// basis.
#[derive(Clone, Debug)]
pub struct Subfield {
    pub generator: FieldElement,
    pub minimal_polynomial: RationalPoly,
    pub degree: usize,
    basis: Vec<FieldElement>,
}

impl Subfield {
    /// Build from a generator; `None` when `Q(beta)` is not a proper
    /// intermediate field presentable here (degree `n`, or a degree not
    /// dividing `n`).
    pub fn from_generator(beta: &FieldElement) -> Option<Subfield> {
        let n = beta.field().degree();
        let minimal_polynomial = beta.minimal_polynomial();
        let degree = minimal_polynomial.degree()?;
        if degree >= n || n % degree != 0 {
            return None;
        }
        let mut basis = Vec::with_capacity(degree);
        let mut p = beta.field().one();
        for _ in 0..degree {
            basis.push(p.clone());
            p = p.mul(beta).expect("same field");
        }
        Some(Subfield {
            generator: beta.clone(),
            minimal_polynomial,
            degree,
            basis,
        })
    }

    /// The rational subfield Q.
    pub fn rational(field: &Arc<NumberField>) -> Subfield {
        Subfield {
            generator: field.one(),
            minimal_polynomial: RationalPoly::from_int_coeffs(&[-1, 1]),
            degree: 1,
            basis: vec![field.one()],
        }
    }

    /// Exact membership test `x in Q(beta)`.
    pub fn contains(&self, x: &FieldElement) -> bool {
        in_span(x, &self.basis)
    }
}

/// Heuristic bounded-height enumeration of proper intermediate fields
/// `Q < K' < K`: minimal polynomials of all `Z[theta]` elements with
/// zero constant term and coordinates up to `height_bound`, plus all
/// powers of `theta`. Deduplicated by exact containment. Explicitly
/// possibly incomplete; a small height already finds the classical
/// subfields of the fields of interest here.
pub fn subfield_candidates(
    field: &Arc<NumberField>,
    height_bound: i64,
) -> Result<Vec<Subfield>> {
    let n = field.degree();
    if height_bound < 1 {
        return Err(Error::Precondition("height bound must be at least 1".into()));
    }
    let width = 2 * height_bound + 1;
    let mut total: u64 = 1;
    for _ in 0..n - 1 {
        total = total.saturating_mul(width as u64);
        if total > 2_000_000 {
            return Err(Error::EnumerationCap { limit: 2_000_000 });
        }
    }

    let mut found: Vec<Subfield> = Vec::new();
    let mut consider = |beta: &FieldElement, found: &mut Vec<Subfield>| {
        if let Some(sf) = Subfield::from_generator(beta) {
            if sf.degree >= 2 {
                let dup = found
                    .iter()
                    .any(|s| s.degree == sf.degree && s.contains(beta));
                if !dup {
                    found.push(sf);
                }
            }
        }
    };

    // Powers of theta first: they carry the classical subfields of the
    // pure fields at height 1.
    let theta = field.theta();
    for k in 2..n {
        let p = theta.pow(k as i64)?;
        consider(&p, &mut found);
    }

    // Zero constant term (subfields are translation-invariant), sign
    // normalized by the first nonzero coordinate.
    let mut coords = vec![0i64; n - 1];
    loop {
        // advance odometer
        let mut i = 0;
        loop {
            if i == n - 1 {
                found.sort_by_key(|s| s.degree);
                return Ok(found);
            }
            if coords[i] < height_bound {
                coords[i] += 1;
                break;
            }
            coords[i] = -height_bound;
            i += 1;
        }
        match coords.iter().find(|&&c| c != 0) {
            None => continue,
            Some(&first) if first < 0 => continue,
            Some(_) => {}
        }
        let mut full = vec![0i64; n];
        full[1..].copy_from_slice(&coords);
        let beta = field.element_from_ints(&full);
        consider(&beta, &mut found);
    }
}

/// Group the `s + t` coordinate embeddings by the value of `u`, where
/// two coordinates land in the same class when their values of `u`
/// agree up to complex conjugation (conjugate root pairs of the minimal
/// polynomial of `u` are collapsed; moduli and subfield restrictions
/// cannot distinguish them, and a conjugated coordinate chart makes
/// them genuinely equal).
///
/// Exact: each value is matched to the certified root cluster of the
/// minimal polynomial of `u` that contains it, refining until the
/// assignment is unambiguous.
pub fn coincidence_partition(datum: &OTDatum, u: &FieldElement) -> Result<Vec<Vec<usize>>> {
    let emb = datum.embeddings();
    let g = u.minimal_polynomial();
    partition_by_generator(emb, u, &g)
}

fn partition_by_generator(
    emb: &EmbeddingSet,
    u: &FieldElement,
    g: &RationalPoly,
) -> Result<Vec<Vec<usize>>> {
    let sig = emb.signature();
    let count = sig.s + sig.t;
    if g.degree() == Some(1) {
        return Ok(vec![(0..count).collect()]);
    }
    let mut prec: u32 = 96;
    loop {
        let roots = complex_roots(g, prec)?;
        // Map root index -> conjugation class id.
        let mut class_of_root = vec![usize::MAX; roots.roots.len()];
        let mut classes = 0;
        for i in 0..roots.real_count {
            class_of_root[i] = classes;
            classes += 1;
        }
        for &(up, lo) in &roots.pairs {
            class_of_root[up] = classes;
            class_of_root[lo] = classes;
            classes += 1;
        }

        let values = emb.eval_all(u, prec)?;
        let mut assignment = Vec::with_capacity(count);
        let mut ambiguous = false;
        for v in &values {
            let ball = v.to_ball();
            let mut hit = None;
            for (ri, root) in roots.roots.iter().enumerate() {
                if ball.overlaps(root) {
                    if hit.is_some() {
                        ambiguous = true;
                        break;
                    }
                    hit = Some(class_of_root[ri]);
                }
            }
            match (ambiguous, hit) {
                (false, Some(c)) => assignment.push(c),
                _ => {
                    ambiguous = true;
                    break;
                }
            }
        }
        if !ambiguous {
            let mut partition: Vec<Vec<usize>> = vec![Vec::new(); classes];
            for (idx, &c) in assignment.iter().enumerate() {
                partition[c].push(idx);
            }
            partition.retain(|class| !class.is_empty());
            return Ok(partition);
        }
        if prec > 1 << 15 {
            return Err(Error::PrecisionExhausted {
                context: "separating embedding values into coincidence classes",
                precision_bits: prec,
            });
        }
        prec *= 2;
    }
}

/// Does `sigma_j(alpha) = 0`? Exact: the gcd of the coordinate
/// polynomial with `f` collects exactly the embeddings where `alpha`
/// vanishes; its certified roots are matched to the embedding roots.
fn embedding_vanishes(emb: &EmbeddingSet, alpha: &FieldElement, j: usize) -> Result<bool> {
    if alpha.is_zero() {
        return Ok(true);
    }
    let g = alpha
        .coordinate_poly()
        .gcd(emb.field().defining_poly());
    if g.degree().unwrap_or(0) == 0 {
        return Ok(false);
    }
    let mut prec: u32 = 96;
    loop {
        let f_balls = emb.root_balls(prec)?;
        let g_roots = complex_roots(&g, prec)?;
        let mut vanishing = Vec::new();
        let mut ambiguous = false;
        'roots: for gb in &g_roots.roots {
            // Lower-half roots of g have no chosen-coordinate partner;
            // their conjugates are handled by the upper representative.
            if gb.im_interval().hi().signum() < 0 {
                continue;
            }
            let mut hit = None;
            for (fi, fb) in f_balls.iter().enumerate() {
                if gb.overlaps(fb) {
                    if hit.is_some() {
                        ambiguous = true;
                        break 'roots;
                    }
                    hit = Some(fi);
                }
            }
            match hit {
                Some(fi) => vanishing.push(fi),
                None => {
                    // g | f: an upper/real root of g must sit in some
                    // chosen root region once precision suffices.
                    ambiguous = true;
                    break;
                }
            }
        }
        if !ambiguous {
            return Ok(vanishing.contains(&j));
        }
        if prec > 1 << 15 {
            return Err(Error::PrecisionExhausted {
                context: "matching a vanishing locus to embeddings",
                precision_bits: prec,
            });
        }
        prec *= 2;
    }
}

/// Outcome of the per-subfield intersection search.
#[derive(Clone, Debug)]
pub enum IntersectionOutcome {
    /// No nontrivial power product of the generators lies in the
    /// subfield, for exponents up to the bound.
    TrivialUpToBound {
        exponent_bound: i64,
        lattice_used: bool,
    },
    Found(Witness),
}

/// Search for a nontrivial `prod u_k^(a_k)` inside the subfield.
///
/// Layer one proposes exponent vectors by LLL-based integer relation
/// detection on the log-embedding differences over the embedding
/// classes that agree on the subfield; layer two is an exhaustive box
/// scan with an interval prefilter. Either way, a candidate only
/// becomes a witness after exact confirmation (power product computed
/// exactly, membership decided by exact linear algebra).
pub fn unit_subfield_intersection(
    datum: &OTDatum,
    subfield: &Subfield,
    config: &Config,
) -> Result<IntersectionOutcome> {
    let emb = datum.embeddings();
    let sig = datum.signature();
    let s = sig.s;
    let prec = config.precision_bits;

    let partition = partition_by_generator(emb, &subfield.generator, &subfield.minimal_polynomial)?;

    // Difference rows over classes agreeing on the subfield.
    let mut log_vectors = Vec::with_capacity(s);
    for u in datum.generators() {
        let lv = emb.log_vector(u, prec)?;
        // Complex entries carry 2 log |tau|; halve for comparability.
        let lv: Vec<RealInterval> = lv
            .iter()
            .enumerate()
            .map(|(i, e)| if i < s { e.clone() } else { e.mul_pow2(-1) })
            .collect();
        log_vectors.push(lv);
    }
    let mut rows: Vec<Vec<RealInterval>> = Vec::new();
    for class in &partition {
        for pair in class.windows(2) {
            let (i, j) = (pair[0], pair[1]);
            rows.push(
                (0..s)
                    .map(|k| log_vectors[k][i].sub(&log_vectors[k][j], prec))
                    .collect(),
            );
        }
    }

    let confirm = |a: &[i64]| -> Result<Option<Witness>> {
        let u = datum.unit_power(a)?;
        if u.is_one() {
            return Ok(None);
        }
        if subfield.contains(&u) {
            let minimal_polynomial = u.minimal_polynomial();
            let degree = minimal_polynomial.degree().unwrap_or(0);
            return Ok(Some(Witness {
                element: u,
                minimal_polynomial,
                degree,
                exponents: Some(a.to_vec()),
                subfield_degree: Some(subfield.degree),
            }));
        }
        Ok(None)
    };

    // Layer one: lattice-based candidates (only when the row data is
    // tight enough to scale meaningfully).
    let scale_bits = (prec / 2) as i64;
    let tight = rows
        .iter()
        .flatten()
        .all(|iv| iv.width() <= Dyadic::pow2(-scale_bits - 8));
    let lattice_used = !rows.is_empty() && tight;
    if lattice_used {
        let scaled: Vec<Vec<Int>> = (0..s)
            .map(|k| {
                rows.iter()
                    .map(|row| {
                        let mid = row[k].midpoint().mul_pow2(scale_bits);
                        mid.to_rat().round().to_integer()
                    })
                    .collect()
            })
            .collect();
        for cand in relation_candidates(&scaled, 2 * s + 2) {
            let canonical = canonicalize_sign(&cand);
            if canonical.iter().all(|&x| x == 0) {
                continue;
            }
            if let Some(w) = confirm(&canonical)? {
                return Ok(IntersectionOutcome::Found(w));
            }
        }
    }

    // Layer two: exhaustive scan by growing box shells, so a witness
    // found at some bound is found at every larger bound.
    let bound = config.exponent_bound;
    let mut box_size: u64 = 1;
    for _ in 0..s {
        box_size = box_size.saturating_mul((2 * bound + 1) as u64);
        if box_size > 10_000_000 {
            return Err(Error::EnumerationCap { limit: 10_000_000 });
        }
    }
    let mut a = vec![-bound; s];
    'outer: loop {
        let shell = a.iter().map(|x| x.abs()).max().unwrap_or(0);
        if shell != 0 && canonicalize_sign(&a) == a {
            // Interval prefilter: a certified nonzero row difference
            // rules the candidate out exactly.
            let mut ruled_out = false;
            for row in &rows {
                let mut acc = RealInterval::zero();
                for k in 0..s {
                    acc = acc.add(&row[k].scale_int(a[k], prec), prec);
                }
                if acc.sign().map_or(false, |sg| sg != 0) {
                    ruled_out = true;
                    break;
                }
            }
            if !ruled_out {
                if let Some(w) = confirm(&a)? {
                    return Ok(IntersectionOutcome::Found(w));
                }
            }
        }
        // advance odometer
        let mut i = 0;
        loop {
            if i == s {
                break 'outer;
            }
            if a[i] < bound {
                a[i] += 1;
                break;
            }
            a[i] = -bound;
            i += 1;
        }
    }

    Ok(IntersectionOutcome::TrivialUpToBound {
        exponent_bound: bound,
        lattice_used,
    })
}

fn canonicalize_sign(a: &[i64]) -> Vec<i64> {
    match a.iter().find(|&&x| x != 0) {
        Some(&first) if first < 0 => a.iter().map(|&x| -x).collect(),
        _ => a.to_vec(),
    }
}

/// The full certification pipeline.
///
/// Order: prime-degree shortcut, exact generator primitivity, then the
/// per-subfield intersection search over enumerated candidates and any
/// caller-supplied subfield hints.
pub fn certify(
    datum: &OTDatum,
    config: &Config,
    subfield_hints: &[FieldElement],
) -> Result<Certificate> {
    if let Some(cert) = prime_degree_shortcut(datum) {
        return Ok(cert);
    }
    let n = datum.field().degree();
    let reports = generator_primitivity(datum);
    let generator_minpoly_degrees: Vec<usize> = reports.iter().map(|r| r.degree).collect();

    let mut diagnostics = Diagnostics {
        degree: n,
        generator_minpoly_degrees,
        subfields_examined: 0,
        subfield_degrees: vec![],
        exponent_bound: config.exponent_bound,
        height_bound: config.height_bound,
        precision_bits: config.precision_bits,
        lattice_used: false,
    };

    if let Some(r) = reports.iter().find(|r| !r.primitive) {
        let mut exponents = vec![0i64; datum.generators().len()];
        exponents[r.index] = 1;
        let witness = Witness {
            element: datum.generators()[r.index].clone(),
            minimal_polynomial: r.minimal_polynomial.clone(),
            degree: r.degree,
            exponents: Some(exponents),
            subfield_degree: Some(r.degree),
        };
        return Ok(Certificate {
            status: CertificateStatus::HypothesisRefuted,
            evidence: CertificateEvidence::NonPrimitiveUnit(witness),
            diagnostics,
        });
    }

    let mut subfields = subfield_candidates(datum.field(), config.height_bound)?;
    for hint in subfield_hints {
        if let Some(sf) = Subfield::from_generator(hint) {
            if sf.degree >= 2
                && !subfields
                    .iter()
                    .any(|s| s.degree == sf.degree && s.contains(hint))
            {
                subfields.push(sf);
            }
        }
    }
    diagnostics.subfields_examined = subfields.len();
    diagnostics.subfield_degrees = subfields.iter().map(|s| s.degree).collect();

    for sf in &subfields {
        match unit_subfield_intersection(datum, sf, config)? {
            IntersectionOutcome::Found(witness) => {
                return Ok(Certificate {
                    status: CertificateStatus::HypothesisRefuted,
                    evidence: CertificateEvidence::NonPrimitiveUnit(witness),
                    diagnostics,
                });
            }
            IntersectionOutcome::TrivialUpToBound { lattice_used, .. } => {
                diagnostics.lattice_used |= lattice_used;
            }
        }
    }

    Ok(Certificate {
        status: CertificateStatus::HeuristicallyCertified,
        evidence: CertificateEvidence::BoundedSearch {
            exponent_bound: config.exponent_bound,
            height_bound: config.height_bound,
            subfields_examined: diagnostics.subfields_examined,
        },
        diagnostics,
    })
}

/// Candidate flat affine subspace attached to a non-primitive unit:
/// the coincidence partition, the free coordinates (classes of size at
/// least two, where non-axis directions live), and the fixed point
/// coordinates `c_j = sigma_j(a) / (1 - sigma_j(u))`.
#[derive(Clone, Debug)]
pub struct CandidateSubvariety {
    pub unit: FieldElement,
    pub translation: FieldElement,
    pub partition: Vec<Vec<usize>>,
    /// Coordinates in coincidence classes of size >= 2, sorted.
    pub free_set: Vec<usize>,
    /// Singleton-class coordinates, sorted.
    pub fixed_set: Vec<usize>,
    /// `c_j` for every coordinate where `sigma_j(u) != 1`
    /// (all of them, for a unit of an honest field).
    pub fixed_point: Vec<Option<ComplexBall>>,
    pub precision_bits: u32,
}

impl CandidateSubvariety {
    /// The certified `c_j` enclosures on the fixed coordinates.
    pub fn fixed_coordinates(&self) -> Vec<(usize, ComplexBall)> {
        self.fixed_set
            .iter()
            .filter_map(|&j| self.fixed_point[j].clone().map(|c| (j, c)))
            .collect()
    }

    /// Re-check `c_j = sigma_j(u) c_j + sigma_j(a)` within the certified
    /// enclosures, at the stored precision.
    pub fn verify_fixed_point_identity(&self, datum: &OTDatum) -> Result<bool> {
        let emb = datum.embeddings();
        let prec = self.precision_bits;
        let u_vals = emb.eval_all(&self.unit, prec)?;
        let a_vals = emb.eval_all(&self.translation, prec)?;
        for (j, c) in self.fixed_point.iter().enumerate() {
            let Some(c) = c else { continue };
            let rhs = u_vals[j]
                .to_ball()
                .mul(c, prec)
                .add(&a_vals[j].to_ball(), prec);
            if !rhs.overlaps(c) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Build the candidate flat subspace data for a verified non-primitive
/// unit `u != 1` and a translation `a` from the order.
pub fn flat_subspace_witness(
    datum: &OTDatum,
    u: &FieldElement,
    a: &FieldElement,
    config: &Config,
) -> Result<CandidateSubvariety> {
    if !u.field().same_field(datum.field()) || !a.field().same_field(datum.field()) {
        return Err(Error::ParentMismatch);
    }
    if u.is_one() {
        return Err(Error::Precondition("the unit 1 spans no witness".into()));
    }
    if !a.has_integer_coords() {
        return Err(Error::Precondition(format!(
            "translation {a} is not in the order"
        )));
    }
    let n = datum.field().degree();
    let g = u.minimal_polynomial();
    if g.degree() == Some(n) {
        return Err(Error::Precondition(
            "unit is primitive: all embedding values are distinct, no coincidence direction exists"
                .into(),
        ));
    }

    let emb = datum.embeddings();
    let partition = coincidence_partition(datum, u)?;
    let mut free_set: Vec<usize> = partition
        .iter()
        .filter(|c| c.len() >= 2)
        .flatten()
        .copied()
        .collect();
    free_set.sort_unstable();
    let mut fixed_set: Vec<usize> = partition
        .iter()
        .filter(|c| c.len() == 1)
        .flatten()
        .copied()
        .collect();
    fixed_set.sort_unstable();

    let prec = config.precision_bits;
    let sig = datum.signature();
    let count = sig.s + sig.t;
    let u_minus_one = u.sub(&datum.field().one())?;
    let mut fixed_point: Vec<Option<ComplexBall>> = Vec::with_capacity(count);
    for j in 0..count {
        if embedding_vanishes(emb, &u_minus_one, j)? {
            // sigma_j(u) = 1: no fixed coordinate there.
            if fixed_set.contains(&j) {
                return Err(Error::NoFixedPoint { coordinate: j });
            }
            fixed_point.push(None);
            continue;
        }
        // Refine until 1 - sigma_j(u) is certifiably nonzero.
        let mut p = prec;
        let c = loop {
            let uv = emb.eval_all(u, p)?[j].to_ball();
            let av = emb.eval_all(a, p)?[j].to_ball();
            let den = ComplexBall::one().sub(&uv, p);
            match av.div(&den, p) {
                Ok(c) => break c,
                Err(_) => {
                    if p > 1 << 15 {
                        return Err(Error::PrecisionExhausted {
                            context: "separating an embedding value from 1",
                            precision_bits: p,
                        });
                    }
                    p *= 2;
                }
            }
        };
        fixed_point.push(Some(c));
    }

    let witness = CandidateSubvariety {
        unit: u.clone(),
        translation: a.clone(),
        partition,
        free_set,
        fixed_set,
        fixed_point,
        precision_bits: prec,
    };
    if !witness.verify_fixed_point_identity(datum)? {
        return Err(Error::Precondition(
            "internal: fixed point identity failed its certified check".into(),
        ));
    }
    Ok(witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use crate::units::{make_ot_datum, OTDatum};

    fn inoue() -> OTDatum {
        builtin::inoue_datum(&Config::default()).unwrap()
    }

    fn ot6() -> OTDatum {
        builtin::ot6_datum(&Config::default()).unwrap()
    }

    #[test]
    fn shortcut_on_prime_degree_only() {
        let cert = prime_degree_shortcut(&inoue()).expect("3 is prime");
        assert_eq!(cert.status, CertificateStatus::CertifiedNoSubvarieties);
        assert!(prime_degree_shortcut(&ot6()).is_none());

        let quintic = builtin::quintic_datum(&Config::default()).unwrap();
        let cert = prime_degree_shortcut(&quintic).expect("5 is prime");
        assert!(matches!(
            cert.evidence,
            CertificateEvidence::PrimeDegree { degree: 5 }
        ));
    }

    #[test]
    fn generator_primitivity_worked_example() {
        let datum = ot6();
        let reports = generator_primitivity(&datum);
        assert_eq!(reports.len(), 2);
        // u1 = theta^2 - 1 lives in the cubic subfield.
        assert!(!reports[0].primitive);
        assert_eq!(reports[0].degree, 3);
        assert_eq!(
            reports[0].minimal_polynomial,
            RationalPoly::from_int_coeffs(&[-1, 3, 3, 1])
        );
        // u2 = (theta - 1)^2 is primitive.
        assert!(reports[1].primitive);
        assert_eq!(reports[1].degree, 6);
    }

    #[test]
    fn subfield_enumeration_sextic() {
        let datum = ot6();
        let subfields = subfield_candidates(datum.field(), 1).unwrap();
        let degrees: Vec<usize> = subfields.iter().map(|s| s.degree).collect();
        assert_eq!(degrees, vec![2, 3]);
        // theta^3 generates the quadratic, theta^2 the cubic.
        let theta = datum.field().theta();
        assert!(subfields[0].contains(&theta.pow(3).unwrap()));
        assert!(subfields[1].contains(&theta.pow(2).unwrap()));
        assert!(!subfields[1].contains(&theta));
    }

    #[test]
    fn subfield_enumeration_prime_degree_empty() {
        let quintic = builtin::quintic_datum(&Config::default()).unwrap();
        let subfields = subfield_candidates(quintic.field(), 2).unwrap();
        assert!(subfields.is_empty());
    }

    #[test]
    fn subfield_enumeration_cyclotomic_octic() {
        // X^4 + 1: three quadratic subfields at height 2.
        let field = NumberField::from_int_coeffs(&[1, 0, 0, 0, 1]).unwrap();
        let subfields = subfield_candidates(&field, 2).unwrap();
        let degrees: Vec<usize> = subfields.iter().map(|s| s.degree).collect();
        assert_eq!(degrees, vec![2, 2, 2]);
    }

    #[test]
    fn intersection_finds_embedded_unit() {
        let datum = ot6();
        let subfields = subfield_candidates(datum.field(), 1).unwrap();
        let cubic = &subfields[1];
        assert_eq!(cubic.degree, 3);
        match unit_subfield_intersection(&datum, cubic, &Config::default()).unwrap() {
            IntersectionOutcome::Found(w) => {
                assert_eq!(w.exponents, Some(vec![1, 0]));
                assert_eq!(w.degree, 3);
                assert_eq!(w.element, datum.generators()[0]);
            }
            other => panic!("expected a witness, got {other:?}"),
        }
    }

    #[test]
    fn intersection_trivial_against_q_for_prime_datum() {
        let quintic = builtin::quintic_datum(&Config::default()).unwrap();
        let q = Subfield::rational(quintic.field());
        match unit_subfield_intersection(&quintic, &q, &Config::default()).unwrap() {
            IntersectionOutcome::TrivialUpToBound { exponent_bound, .. } => {
                assert_eq!(exponent_bound, Config::default().exponent_bound);
            }
            other => panic!("expected trivial, got {other:?}"),
        }
    }

    #[test]
    fn certify_pipeline() {
        let cert = certify(&inoue(), &Config::default(), &[]).unwrap();
        assert_eq!(cert.status, CertificateStatus::CertifiedNoSubvarieties);

        let cert = certify(&ot6(), &Config::default(), &[]).unwrap();
        assert_eq!(cert.status, CertificateStatus::HypothesisRefuted);
        match cert.evidence {
            CertificateEvidence::NonPrimitiveUnit(w) => {
                assert_eq!(w.degree, 3);
                assert_eq!(w.exponents, Some(vec![1, 0]));
            }
            other => panic!("expected witness, got {other:?}"),
        }
    }

    #[test]
    fn certify_monotone_in_exponent_bound() {
        // Witness found at bound 1 must be found at larger bounds too.
        let datum = ot6();
        for bound in [1, 4, 10] {
            let config = Config {
                exponent_bound: bound,
                ..Config::default()
            };
            let cert = certify(&datum, &config, &[]).unwrap();
            assert_eq!(cert.status, CertificateStatus::HypothesisRefuted);
        }
    }

    #[test]
    fn flat_witness_worked_example() {
        let datum = ot6();
        let u1 = datum.generators()[0].clone();
        let zero = datum.field().zero();
        let w = flat_subspace_witness(&datum, &u1, &zero, &Config::default()).unwrap();
        // Coincidence partition: the two real coordinates agree, and the
        // two complex coordinates agree up to conjugation.
        assert_eq!(w.partition.len(), 2);
        assert_eq!(w.free_set, vec![0, 1, 2, 3]);
        assert!(w.fixed_set.is_empty());
        // a = 0: the fixed point is the origin.
        for c in w.fixed_point.iter().flatten() {
            assert!(c.re_interval().contains_zero());
            assert!(c.im_interval().contains_zero());
        }
        assert!(w.verify_fixed_point_identity(&datum).unwrap());
    }

    #[test]
    fn flat_witness_nonzero_translation() {
        let datum = ot6();
        let u1 = datum.generators()[0].clone();
        let a = datum.field().element_from_ints(&[1, 1, 0, 0, 0, 0]);
        let w = flat_subspace_witness(&datum, &u1, &a, &Config::default()).unwrap();
        assert!(w.verify_fixed_point_identity(&datum).unwrap());
        // c at the positive real embedding: sigma(a)/(1 - sigma(u1)) with
        // sigma(theta) = 2^(1/6): (1 + 2^(1/6)) / (1 - (2^(1/3)-1)).
        let c = w.fixed_point[1].clone().unwrap();
        crate::testutil::assert_near(
            &c.re_interval(),
            "2.8678859843370510728506814853577",
            -60,
        );
    }

    #[test]
    fn flat_witness_rejects_primitive_units() {
        let datum = ot6();
        let u2 = datum.generators()[1].clone();
        let zero = datum.field().zero();
        assert!(matches!(
            flat_subspace_witness(&datum, &u2, &zero, &Config::default()),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            flat_subspace_witness(&datum, &datum.field().one(), &zero, &Config::default()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn partition_stable_under_powers() {
        let datum = ot6();
        let u1 = datum.generators()[0].clone();
        let p1 = coincidence_partition(&datum, &u1).unwrap();
        let u1sq = u1.mul(&u1).unwrap();
        let p2 = coincidence_partition(&datum, &u1sq).unwrap();
        assert_eq!(p1, p2);
    }
}
