//! Arithmetic in `K = Q[X]/(f)`: exact field operations, norms and
//! traces via multiplication matrices, minimal polynomials by exact
//! kernel computation, primitivity, and subalgebra degrees.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::linalg::RatMatrix;
use crate::poly::{
    irreducibility_status, isolate_real_roots, IrreducibilityStatus, IsolatingInterval,
    RationalPoly,
};
use crate::{Error, Rat, Result};

/// A number field `Q[X]/(f)` for a monic integer polynomial `f` of
/// degree at least 2, together with irreducibility evidence and the
/// isolated real roots of `f`.
///
/// A field with `Reducible` evidence is never constructed; `Unknown` is
/// accepted and may be upgraded to a `ReducibleField` error later, when
/// an inversion stumbles on a zero divisor.
pub struct NumberField {
    poly: RationalPoly,
    degree: usize,
    irreducibility: IrreducibilityStatus,
    real_roots: Vec<IsolatingInterval>,
}

impl NumberField {
    pub fn new(poly: RationalPoly) -> Result<Arc<NumberField>> {
        let degree = poly.degree().ok_or(Error::ZeroPolynomial)?;
        if degree < 2 {
            return Err(Error::Precondition(
                "a number field needs a defining polynomial of degree >= 2".into(),
            ));
        }
        if !poly.is_monic() || !poly.is_integer() {
            return Err(Error::Precondition(
                "the defining polynomial must be monic with integer coefficients".into(),
            ));
        }
        let irreducibility = irreducibility_status(&poly)?;
        if let IrreducibilityStatus::Reducible(factor) = irreducibility {
            return Err(Error::ReducibleField { factor });
        }
        let real_roots = isolate_real_roots(&poly);
        Ok(Arc::new(NumberField {
            poly,
            degree,
            irreducibility,
            real_roots,
        }))
    }

    pub fn from_int_coeffs(coeffs: &[i64]) -> Result<Arc<NumberField>> {
        NumberField::new(RationalPoly::from_int_coeffs(coeffs))
    }

    pub fn defining_poly(&self) -> &RationalPoly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn irreducibility(&self) -> &IrreducibilityStatus {
        &self.irreducibility
    }

    /// Number of real embeddings (isolated real roots of `f`).
    pub fn real_embedding_count(&self) -> usize {
        self.real_roots.len()
    }

    /// Number of conjugate pairs of complex embeddings.
    pub fn complex_pair_count(&self) -> usize {
        (self.degree - self.real_roots.len()) / 2
    }

    /// Isolating intervals of the real roots, increasing.
    pub fn real_root_intervals(&self) -> &[IsolatingInterval] {
        &self.real_roots
    }

    pub fn same_field(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        Arc::ptr_eq(self, other) || self.poly == other.poly
    }

    /// Element from power-basis coordinates; inputs longer than the
    /// degree are reduced modulo `f`.
    pub fn element(self: &Arc<Self>, coords: Vec<Rat>) -> FieldElement {
        let p = RationalPoly::new(coords);
        self.element_from_poly(p)
    }

    pub fn element_from_poly(self: &Arc<Self>, p: RationalPoly) -> FieldElement {
        let p = if p.degree().map_or(false, |d| d >= self.degree) {
            p.rem(&self.poly).expect("defining polynomial is nonzero")
        } else {
            p
        };
        let mut coords = p.coeffs().to_vec();
        coords.resize(self.degree, Rat::zero());
        FieldElement {
            field: self.clone(),
            coords,
        }
    }

    pub fn element_from_ints(self: &Arc<Self>, coords: &[i64]) -> FieldElement {
        self.element(coords.iter().map(|&c| crate::rat(c)).collect())
    }

    pub fn zero(self: &Arc<Self>) -> FieldElement {
        self.element(vec![])
    }

    pub fn one(self: &Arc<Self>) -> FieldElement {
        self.element(vec![Rat::one()])
    }

    /// The generator `theta` (the class of `X`).
    pub fn theta(self: &Arc<Self>) -> FieldElement {
        self.element(vec![Rat::zero(), Rat::one()])
    }

    pub fn from_rat(self: &Arc<Self>, q: Rat) -> FieldElement {
        self.element(vec![q])
    }
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumberField(Q[X]/({}))", self.poly)
    }
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.poly == other.poly
    }
}

/// Element of a number field in power-basis coordinates
/// `a_0 + a_1 theta + ... + a_{n-1} theta^{n-1}`.
#[derive(Clone)]
pub struct FieldElement {
    field: Arc<NumberField>,
    coords: Vec<Rat>,
}

impl FieldElement {
    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    /// Coordinates as a polynomial in `theta`, trimmed.
    pub fn coordinate_poly(&self) -> RationalPoly {
        RationalPoly::new(self.coords.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Zero::is_zero)
    }

    /// Lies in the prime field Q?
    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<Rat> {
        if self.is_rational() {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    /// All coordinates integral, i.e. membership in the order `Z[theta]`.
    pub fn has_integer_coords(&self) -> bool {
        self.coords.iter().all(Rat::is_integer)
    }

    fn check_same_field(&self, other: &FieldElement) -> Result<()> {
        if self.field.same_field(&other.field) {
            Ok(())
        } else {
            Err(Error::ParentMismatch)
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_same_field(other)?;
        Ok(FieldElement {
            field: self.field.clone(),
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_same_field(other)?;
        Ok(FieldElement {
            field: self.field.clone(),
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn neg(&self) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_same_field(other)?;
        let prod = self.coordinate_poly().mul(&other.coordinate_poly());
        Ok(self.field.element_from_poly(prod))
    }

    pub fn mul_rat(&self, c: &Rat) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplicative inverse via the extended gcd of the coordinate
    /// polynomial with `f`. A nontrivial gcd proves `f` reducible and is
    /// surfaced as `ReducibleField` with the exact factor.
    pub fn inverse(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let a = self.coordinate_poly();
        let f = self.field.poly.clone();
        let (g, s, _) = a.xgcd(&f);
        if g.degree() != Some(0) {
            return Err(Error::ReducibleField { factor: g });
        }
        // g is the constant 1 (monic): s*a + t*f = 1, so s = a^{-1} mod f.
        Ok(self.field.element_from_poly(s))
    }

    /// Integer power; negative exponents go through the inverse.
    pub fn pow(&self, e: i64) -> Result<FieldElement> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut result = self.field.one();
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&b)?;
            }
            b = b.mul(&b.clone())?;
            k >>= 1;
        }
        Ok(result)
    }

    /// Matrix of multiplication by `self` in the power basis.
    pub fn mul_matrix(&self) -> RatMatrix {
        let n = self.field.degree;
        let mut m = RatMatrix::zeros(n, n);
        let mut col = self.clone();
        for j in 0..n {
            for i in 0..n {
                m.set(i, j, col.coords[i].clone());
            }
            if j + 1 < n {
                col = col
                    .mul(&self.field.theta())
                    .expect("same field by construction");
            }
        }
        m
    }

    /// Field norm: determinant of the multiplication matrix.
    pub fn norm(&self) -> Rat {
        self.mul_matrix().det()
    }

    /// Field trace: trace of the multiplication matrix.
    pub fn trace(&self) -> Rat {
        let n = self.field.degree;
        let m = self.mul_matrix();
        let mut t = Rat::zero();
        for i in 0..n {
            t += m.get(i, i);
        }
        t
    }

    /// Monic least-degree rational polynomial annihilating the element,
    /// computed as an exact kernel of the matrix of powers.
    pub fn minimal_polynomial(&self) -> RationalPoly {
        let n = self.field.degree;
        let mut powers: Vec<Vec<Rat>> = Vec::with_capacity(n + 1);
        let mut p = self.field.one();
        powers.push(p.coords.clone());
        for _ in 0..n {
            p = p.mul(self).expect("same field");
            powers.push(p.coords.clone());
        }
        for m in 1..=n {
            // n x (m+1) matrix whose columns are 1, a, ..., a^m.
            let mut mat = RatMatrix::zeros(n, m + 1);
            for (k, pw) in powers.iter().take(m + 1).enumerate() {
                for i in 0..n {
                    mat.set(i, k, pw[i].clone());
                }
            }
            let kernel = mat.kernel_basis();
            if let Some(c) = kernel.first() {
                let lead = c[m].clone();
                debug_assert!(
                    !lead.is_zero(),
                    "kernel vector with zero top coefficient contradicts minimality"
                );
                let coeffs = c.iter().map(|v| v / &lead).collect();
                return RationalPoly::new(coeffs);
            }
        }
        unreachable!("powers 1..theta^n are always dependent");
    }

    /// Primitive element: generates the whole field, equivalently the
    /// minimal polynomial has full degree.
    pub fn is_primitive(&self) -> bool {
        self.minimal_polynomial().degree() == Some(self.field.degree)
    }

    /// Algebraic integer: monic minimal polynomial with integer
    /// coefficients.
    pub fn is_algebraic_integer(&self) -> bool {
        self.minimal_polynomial().is_integer()
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_field(&other.field) && self.coords == other.coords
    }
}

impl Eq for FieldElement {}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    /// Lexicographic coordinate order; meaningful within one field only.
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert!(self.field.same_field(&other.field));
        self.coords.cmp(&other.coords)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({})", self.coordinate_poly())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coordinate_poly())
    }
}

/// Dimension over Q of the algebra generated by the given elements:
/// the span of all monomials in them, closed under multiplication.
/// Inside a field this equals the degree `[Q(elements) : Q]`.
pub fn subalgebra_degree(elements: &[FieldElement]) -> Result<usize> {
    let first = elements
        .first()
        .ok_or_else(|| Error::Precondition("subalgebra of an empty set".into()))?;
    let field = first.field().clone();
    for e in elements {
        first.check_same_field(e)?;
    }
    let n = field.degree();
    // Basis rows kept in reduced row echelon form; start with span{1}.
    let mut basis: Vec<FieldElement> = vec![field.one()];
    loop {
        let mut rows: Vec<Vec<Rat>> = basis.iter().map(|b| b.coords.clone()).collect();
        for b in &basis {
            for g in elements {
                rows.push(b.mul(g)?.coords.clone());
            }
        }
        let mut mat = RatMatrix::from_rows(rows);
        let pivots = mat.rref();
        let rank = pivots.len();
        if rank == basis.len() || rank == n {
            return Ok(rank);
        }
        basis = (0..rank)
            .map(|r| field.element(mat.row(r).to_vec()))
            .collect();
    }
}

/// Exact membership test: does `x` lie in the Q-span of `basis`?
pub fn in_span(x: &FieldElement, basis: &[FieldElement]) -> bool {
    let n = x.field().degree();
    let mut mat = RatMatrix::zeros(n, basis.len());
    for (j, b) in basis.iter().enumerate() {
        for i in 0..n {
            mat.set(i, j, b.coords[i].clone());
        }
    }
    mat.solve(x.coords()).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn cubic2() -> Arc<NumberField> {
        NumberField::from_int_coeffs(&[-2, 0, 0, 1]).unwrap()
    }

    fn sextic2() -> Arc<NumberField> {
        NumberField::from_int_coeffs(&[-2, 0, 0, 0, 0, 0, 1]).unwrap()
    }

    #[test]
    fn rejects_reducible_and_nonmonic() {
        assert!(matches!(
            NumberField::from_int_coeffs(&[-1, 0, 1]),
            Err(Error::ReducibleField { .. })
        ));
        assert!(NumberField::from_int_coeffs(&[1, 0, 2]).is_err());
        assert!(NumberField::from_int_coeffs(&[1, 1]).is_err());
    }

    #[test]
    fn reduction_by_defining_poly() {
        let k = cubic2();
        let theta = k.theta();
        let t2 = theta.mul(&theta).unwrap();
        let t3 = t2.mul(&theta).unwrap();
        assert_eq!(t3, k.from_rat(rat(2)));
        // (theta - 1)(theta^2 + theta + 1) = theta^3 - 1 = 1
        let a = k.element_from_ints(&[-1, 1, 0]);
        let b = k.element_from_ints(&[1, 1, 1]);
        assert!(a.mul(&b).unwrap().is_one());
        // additive identity
        let z = k.zero();
        assert_eq!(a.add(&z).unwrap(), a);
    }

    #[test]
    fn parent_mismatch_detected() {
        let a = cubic2().theta();
        let b = sextic2().theta();
        assert!(matches!(a.add(&b), Err(Error::ParentMismatch)));
    }

    #[test]
    fn inverse_examples() {
        let k = cubic2();
        let theta = k.theta();
        // theta^{-1} = theta^2 / 2
        let inv = theta.inverse().unwrap();
        assert_eq!(inv, k.element(vec![rat(0), rat(0), rat(1) / rat(2)]));
        assert!(theta.mul(&inv).unwrap().is_one());
        assert!(k.one().inverse().unwrap().is_one());
        // (theta - 1)^{-1} = theta^2 + theta + 1
        let a = k.element_from_ints(&[-1, 1, 0]);
        assert_eq!(a.inverse().unwrap(), k.element_from_ints(&[1, 1, 1]));
        assert!(matches!(k.zero().inverse(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn lazy_reducibility_from_inverse() {
        // (X^2+1)(X^2+2): no rational root, honest Unknown status, but a
        // zero divisor shows up as an exact factor once inverted.
        let f = RationalPoly::from_int_coeffs(&[1, 0, 1])
            .mul(&RationalPoly::from_int_coeffs(&[2, 0, 1]));
        let k = NumberField::new(f).unwrap();
        assert!(!k.irreducibility().is_proven());
        let zero_divisor = k.element_from_ints(&[1, 0, 1]);
        match zero_divisor.inverse() {
            Err(Error::ReducibleField { factor }) => {
                assert_eq!(factor.degree(), Some(2));
            }
            other => panic!("expected ReducibleField, got {other:?}"),
        }
    }

    #[test]
    fn norm_and_trace() {
        let k = cubic2();
        assert_eq!(k.theta().norm(), rat(2));
        assert_eq!(k.element_from_ints(&[-1, 1, 0]).norm(), rat(1));
        assert_eq!(k.theta().trace(), rat(0));
        let k6 = sextic2();
        assert_eq!(k6.element_from_ints(&[-1, 1]).norm(), rat(-1));
    }

    #[test]
    fn minimal_polynomials() {
        let k = cubic2();
        assert_eq!(k.theta().minimal_polynomial(), *k.defining_poly());
        assert_eq!(
            k.from_rat(rat(7)).minimal_polynomial(),
            RationalPoly::from_int_coeffs(&[-7, 1])
        );
        let k6 = sextic2();
        let t2 = k6.theta().pow(2).unwrap();
        assert_eq!(
            t2.minimal_polynomial(),
            RationalPoly::from_int_coeffs(&[-2, 0, 0, 1])
        );
        // minpoly(theta - 1) = X^3 + 3X^2 + 3X - 1 in the cubic field
        let a = k.element_from_ints(&[-1, 1, 0]);
        assert_eq!(
            a.minimal_polynomial(),
            RationalPoly::from_int_coeffs(&[-1, 3, 3, 1])
        );
    }

    #[test]
    fn primitivity() {
        let k6 = sextic2();
        assert!(k6.theta().is_primitive());
        assert!(!k6.theta().pow(2).unwrap().is_primitive());
        // (theta - 1)^2 is primitive
        let u2 = k6.element_from_ints(&[-1, 1]).pow(2).unwrap();
        assert!(u2.is_primitive());
    }

    #[test]
    fn algebraic_integers() {
        let k = cubic2();
        let half_theta = k.theta().mul_rat(&(rat(1) / rat(2)));
        assert!(!half_theta.is_algebraic_integer());
        assert!(k.element_from_ints(&[-1, 1, 0]).is_algebraic_integer());
        assert!(k.one().is_algebraic_integer());
    }

    #[test]
    fn subalgebra_degrees() {
        let k6 = sextic2();
        let theta = k6.theta();
        assert_eq!(subalgebra_degree(&[theta.clone()]).unwrap(), 6);
        let t2 = theta.pow(2).unwrap();
        assert_eq!(subalgebra_degree(&[t2.clone()]).unwrap(), 3);
        let t3 = theta.pow(3).unwrap();
        assert_eq!(subalgebra_degree(&[t3.clone()]).unwrap(), 2);
        assert_eq!(subalgebra_degree(&[t2, t3]).unwrap(), 6);
        assert!(subalgebra_degree(&[]).is_err());
    }

    #[test]
    fn subalgebra_matches_minpoly_degree() {
        let k6 = sextic2();
        for coords in [&[3, 1, 0, 2, 0, 0][..], &[0, 0, 1, 1, 0, 0], &[1, 0, 0, 3, 0, 0]] {
            let a = k6.element_from_ints(coords);
            assert_eq!(
                subalgebra_degree(core::slice::from_ref(&a)).unwrap(),
                a.minimal_polynomial().degree().unwrap()
            );
        }
    }

    #[test]
    fn span_membership() {
        let k6 = sextic2();
        let theta = k6.theta();
        let t2 = theta.pow(2).unwrap();
        let t4 = theta.pow(4).unwrap();
        let basis = [k6.one(), t2.clone(), t4];
        // theta^2 + 3 is in Q(theta^2) but theta is not.
        let inside = t2.add(&k6.from_rat(rat(3))).unwrap();
        assert!(in_span(&inside, &basis));
        assert!(!in_span(&theta, &basis));
    }
}
