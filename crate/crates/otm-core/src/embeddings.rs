//! Certified evaluation of the archimedean embeddings and the
//! logarithmic embedding.
//!
//! Real embeddings are ordered by increasing root of `f`; complex
//! embeddings are represented by the conjugate with positive imaginary
//! part and ordered by increasing argument in `(0, pi)` (of the dyadic
//! root midpoints, which makes the order exact and deterministic).

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::dyadic::Dyadic;
use crate::interval::{ComplexBall, RealInterval};
use crate::numfield::{FieldElement, NumberField};
use crate::poly::{complex_roots, IsolatingInterval, SturmChain};
use crate::{Error, Result};

/// Guard bits carried by internal evaluations beyond the requested
/// output precision.
const GUARD: u32 = 32;

/// Hard cap on refinement precision for sign decisions.
const SIGN_PRECISION_CAP: u32 = 1 << 16;

/// Embedding signature `(s, t)` with `s + 2t = n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Signature {
    pub s: usize,
    pub t: usize,
}

/// Signature of a number field, from the exact count of isolated real
/// roots of its defining polynomial.
pub fn signature(field: &NumberField) -> Signature {
    Signature {
        s: field.real_embedding_count(),
        t: field.complex_pair_count(),
    }
}

/// One embedding value: a real interval or a complex ball.
#[derive(Clone, Debug)]
pub enum EmbeddingValue {
    Real(RealInterval),
    Complex(ComplexBall),
}

impl EmbeddingValue {
    pub fn to_ball(&self) -> ComplexBall {
        match self {
            EmbeddingValue::Real(r) => ComplexBall::from_real(r),
            EmbeddingValue::Complex(b) => b.clone(),
        }
    }
}

/// Certified root data of a number field at a given precision: the `s`
/// refined real roots and the `t` upper-half complex roots of `f`.
///
/// Immutable once built; evaluating at a higher precision than the set
/// was built for transparently re-isolates roots locally.
pub struct EmbeddingSet {
    field: Arc<NumberField>,
    precision_bits: u32,
    real: Vec<IsolatingInterval>,
    complex_upper: Vec<ComplexBall>,
}

impl EmbeddingSet {
    pub fn new(field: &Arc<NumberField>, precision_bits: u32) -> Result<Self> {
        let sig = signature(field);
        let wp = precision_bits + GUARD;
        let real: Vec<IsolatingInterval> = field
            .real_root_intervals()
            .iter()
            .map(|iv| iv.refine_to(wp))
            .collect();
        let complex_upper = if sig.t > 0 {
            let certified = complex_roots(field.defining_poly(), wp)?;
            certified
                .upper_roots()
                .into_iter()
                .cloned()
                .collect()
        } else {
            Vec::new()
        };
        Ok(EmbeddingSet {
            field: field.clone(),
            precision_bits,
            real,
            complex_upper,
        })
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn signature(&self) -> Signature {
        Signature {
            s: self.real.len(),
            t: self.complex_upper.len(),
        }
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    /// A fresh set at a different precision.
    pub fn refine(&self, precision_bits: u32) -> Result<Self> {
        EmbeddingSet::new(&self.field, precision_bits)
    }

    /// Enclosure of the `i`-th real root of `f` (0-based, increasing).
    pub fn real_root(&self, i: usize) -> RealInterval {
        self.real[i].to_real_interval(self.precision_bits + GUARD)
    }

    /// Ball around the `j`-th upper-half complex root of `f`.
    pub fn complex_root(&self, j: usize) -> &ComplexBall {
        &self.complex_upper[j]
    }

    fn check_element(&self, alpha: &FieldElement) -> Result<()> {
        if alpha.field().same_field(&self.field) {
            Ok(())
        } else {
            Err(Error::ParentMismatch)
        }
    }

    /// Certified enclosure of `sigma_i(alpha)` of width at most
    /// `2^-precision_bits`.
    pub fn eval_real(
        &self,
        alpha: &FieldElement,
        i: usize,
        precision_bits: u32,
    ) -> Result<RealInterval> {
        self.check_element(alpha)?;
        let wp = precision_bits + GUARD;
        let target = Dyadic::pow2(-(precision_bits as i64));
        let mut iv = self.real[i].clone();
        let mut bits = self.precision_bits + GUARD;
        loop {
            let x = iv.to_real_interval(wp);
            let v = x.eval_rat_poly(alpha.coords(), wp);
            if v.width() <= target {
                return Ok(v);
            }
            if bits > 64 * precision_bits.max(64) + 4096 {
                return Err(Error::PrecisionExhausted {
                    context: "evaluating a real embedding",
                    precision_bits: bits,
                });
            }
            bits *= 2;
            iv = iv.refine_to(bits);
        }
    }

    /// Certified ball around `tau_j(alpha)` of radius at most
    /// `2^-precision_bits`.
    pub fn eval_complex(
        &self,
        alpha: &FieldElement,
        j: usize,
        precision_bits: u32,
    ) -> Result<ComplexBall> {
        self.check_element(alpha)?;
        let wp = precision_bits + GUARD;
        let target = Dyadic::pow2(-(precision_bits as i64));
        let mut root = self.complex_upper[j].clone();
        let mut bits = self.precision_bits + GUARD;
        loop {
            let v = root.eval_rat_poly(alpha.coords(), wp);
            if v.rad() <= &target {
                return Ok(v);
            }
            if bits > 64 * precision_bits.max(64) + 4096 {
                return Err(Error::PrecisionExhausted {
                    context: "evaluating a complex embedding",
                    precision_bits: bits,
                });
            }
            bits *= 2;
            let certified = complex_roots(self.field.defining_poly(), bits)?;
            root = certified.upper_roots()[j].clone();
        }
    }

    /// Balls around all `s + t` chosen roots of `f` (reals first, then
    /// the upper-half representatives), at the requested precision.
    pub fn root_balls(&self, precision_bits: u32) -> Result<Vec<ComplexBall>> {
        let sig = self.signature();
        let mut out = Vec::with_capacity(sig.s + sig.t);
        for iv in &self.real {
            let refined = iv.refine_to(precision_bits);
            out.push(ComplexBall::from_real(
                &refined.to_real_interval(precision_bits + 8),
            ));
        }
        if sig.t > 0 {
            if precision_bits <= self.precision_bits + GUARD {
                out.extend(self.complex_upper.iter().cloned());
            } else {
                let certified = complex_roots(self.field.defining_poly(), precision_bits)?;
                out.extend(certified.upper_roots().into_iter().cloned());
            }
        }
        Ok(out)
    }

    /// All `s + t` embedding values of `alpha`, reals first.
    pub fn eval_all(
        &self,
        alpha: &FieldElement,
        precision_bits: u32,
    ) -> Result<Vec<EmbeddingValue>> {
        let sig = self.signature();
        let mut out = Vec::with_capacity(sig.s + sig.t);
        for i in 0..sig.s {
            out.push(EmbeddingValue::Real(self.eval_real(alpha, i, precision_bits)?));
        }
        for j in 0..sig.t {
            out.push(EmbeddingValue::Complex(self.eval_complex(
                alpha,
                j,
                precision_bits,
            )?));
        }
        Ok(out)
    }

    /// Exact sign of `sigma_i(alpha)`: refined until the enclosure
    /// excludes zero, or proven zero because the coordinate polynomial
    /// shares the `i`-th root with `f`.
    pub fn sign_real(&self, alpha: &FieldElement, i: usize) -> Result<i32> {
        self.check_element(alpha)?;
        if alpha.is_zero() {
            return Ok(0);
        }
        let g = alpha.coordinate_poly().gcd(self.field.defining_poly());
        if g.degree().unwrap_or(0) >= 1 {
            // sigma_i(alpha) = 0 iff the isolated root lies in g.
            let chain = SturmChain::new(&g);
            let iv = &self.real[i];
            if chain.count_roots_in(iv.lo(), iv.hi()) == 1 {
                return Ok(0);
            }
        }
        let mut prec = 64;
        loop {
            let v = self.eval_real(alpha, i, prec)?;
            if let Some(s) = v.sign() {
                return Ok(s);
            }
            if prec >= SIGN_PRECISION_CAP {
                return Err(Error::PrecisionExhausted {
                    context: "deciding the sign of a real embedding",
                    precision_bits: prec,
                });
            }
            prec *= 2;
        }
    }

    /// The logarithmic embedding
    /// `(log |sigma_1(u)|, ..., log |sigma_s(u)|, 2 log |tau_1(u)|, ..., 2 log |tau_t(u)|)`
    /// with every entry certified to width at most `2^-precision_bits`.
    ///
    /// For the totally positive units of an OT datum the first `s`
    /// entries coincide with `log sigma_i(u)`. Fails on any zero
    /// embedding value (only possible for zero or a reducible field).
    pub fn log_vector(
        &self,
        u: &FieldElement,
        precision_bits: u32,
    ) -> Result<Vec<RealInterval>> {
        self.check_element(u)?;
        if u.is_zero() {
            return Err(Error::Precondition("log vector of zero".into()));
        }
        let sig = self.signature();
        let mut out = Vec::with_capacity(sig.s + sig.t);
        for i in 0..sig.s {
            out.push(self.log_entry(u, i, false, precision_bits)?);
        }
        for j in 0..sig.t {
            out.push(self.log_entry(u, j, true, precision_bits)?);
        }
        Ok(out)
    }

    fn log_entry(
        &self,
        u: &FieldElement,
        idx: usize,
        complex: bool,
        precision_bits: u32,
    ) -> Result<RealInterval> {
        let target = Dyadic::pow2(-(precision_bits as i64));
        let mut prec = precision_bits + GUARD;
        loop {
            // |sigma_i(u)| for a real embedding, |tau_j(u)|^2 for a
            // complex one; the complex entry 2 log |tau| = log |tau|^2.
            let magnitude = if complex {
                self.eval_complex(u, idx, prec)?.norm_sqr(prec + GUARD)
            } else {
                self.eval_real(u, idx, prec)?.abs()
            };
            if magnitude.lo().signum() > 0 {
                let l = magnitude.log(prec)?;
                if l.width() <= target {
                    return Ok(l);
                }
            }
            if prec >= SIGN_PRECISION_CAP {
                return Err(Error::PrecisionExhausted {
                    context: "computing a log-vector entry",
                    precision_bits: prec,
                });
            }
            prec *= 2;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::NumberField;
    use crate::rat;
    use crate::Rat;

    fn cubic2() -> Arc<NumberField> {
        NumberField::from_int_coeffs(&[-2, 0, 0, 1]).unwrap()
    }

    fn sextic2() -> Arc<NumberField> {
        NumberField::from_int_coeffs(&[-2, 0, 0, 0, 0, 0, 1]).unwrap()
    }

    use crate::testutil::assert_near;

    #[test]
    fn signatures() {
        assert_eq!(signature(&cubic2()), Signature { s: 1, t: 1 });
        assert_eq!(signature(&sextic2()), Signature { s: 2, t: 2 });
        let gauss = NumberField::from_int_coeffs(&[1, 0, 1]).unwrap();
        assert_eq!(signature(&gauss), Signature { s: 0, t: 1 });
        // totally real quadratic: t = 0
        let real_quad = NumberField::from_int_coeffs(&[-3, 0, 1]).unwrap();
        assert_eq!(signature(&real_quad), Signature { s: 2, t: 0 });
    }

    #[test]
    fn eval_real_cbrt2() {
        let k = cubic2();
        let emb = EmbeddingSet::new(&k, 96).unwrap();
        let v = emb.eval_real(&k.theta(), 0, 96).unwrap();
        assert_near(&v, "1.2599210498948731647672106072782", -90);
        assert!(v.width() <= Dyadic::pow2(-96));
        // constants evaluate exactly
        let one = emb.eval_real(&k.one(), 0, 96).unwrap();
        assert!(one.contains_rat(&rat(1)));
        assert!(one.width() <= Dyadic::pow2(-96));
    }

    #[test]
    fn eval_real_ordering_sextic() {
        let k = sextic2();
        let emb = EmbeddingSet::new(&k, 80).unwrap();
        let v0 = emb.eval_real(&k.theta(), 0, 80).unwrap();
        let v1 = emb.eval_real(&k.theta(), 1, 80).unwrap();
        assert_near(&v0, "-1.1224620483093729814335330496792", -75);
        assert_near(&v1, "1.1224620483093729814335330496792", -75);
    }

    #[test]
    fn sign_real_examples() {
        let k = cubic2();
        let emb = EmbeddingSet::new(&k, 64).unwrap();
        let tm1 = k.element_from_ints(&[-1, 1, 0]);
        assert_eq!(emb.sign_real(&tm1, 0).unwrap(), 1);
        assert_eq!(emb.sign_real(&k.zero(), 0).unwrap(), 0);

        let k6 = sextic2();
        let emb6 = EmbeddingSet::new(&k6, 64).unwrap();
        let tm1 = k6.element_from_ints(&[-1, 1]);
        assert_eq!(emb6.sign_real(&tm1, 0).unwrap(), -1);
        assert_eq!(emb6.sign_real(&tm1, 1).unwrap(), 1);
    }

    #[test]
    fn eval_complex_cbrt2() {
        let k = cubic2();
        let emb = EmbeddingSet::new(&k, 96).unwrap();
        // tau_1(theta) = 2^(1/3) e^(2 pi i / 3)
        let v = emb.eval_complex(&k.theta(), 0, 96).unwrap();
        assert_near(&v.re_interval(), "-0.6299605249474365823836053036391", -90);
        assert_near(&v.im_interval(), "1.0911236359717214035600726141898", -90);
        // rational elements embed exactly
        let five = emb.eval_complex(&k.from_rat(rat(5)), 0, 96).unwrap();
        assert!(five.re_interval().contains_rat(&rat(5)));
        assert!(five.im_interval().contains_zero());
    }

    #[test]
    fn complex_modulus_sextic() {
        let k = sextic2();
        let emb = EmbeddingSet::new(&k, 96).unwrap();
        for j in 0..2 {
            let v = emb.eval_complex(&k.theta(), j, 96).unwrap();
            // |tau_j(theta)|^2 = 2^(1/3)
            assert_near(&v.norm_sqr(96), "1.2599210498948731647672106072782", -60);
        }
    }

    #[test]
    fn log_vector_of_one_is_zero() {
        let k = cubic2();
        let emb = EmbeddingSet::new(&k, 96).unwrap();
        let lv = emb.log_vector(&k.one(), 96).unwrap();
        assert_eq!(lv.len(), 2);
        for entry in &lv {
            assert!(entry.contains_zero());
            assert!(entry.width() <= Dyadic::pow2(-96));
        }
    }

    #[test]
    fn unit_log_sum_vanishes() {
        // theta - 1 is a unit of Z[2^(1/3)]: log entries sum to zero.
        let k = cubic2();
        let emb = EmbeddingSet::new(&k, 160).unwrap();
        let u = k.element_from_ints(&[-1, 1, 0]);
        let lv = emb.log_vector(&u, 160).unwrap();
        let sum = crate::interval::RealInterval::sum(&lv, 192);
        assert!(sum.contains_zero());
        assert!(sum.width() <= Dyadic::pow2(-150));
    }

    #[test]
    fn log_entry_matches_oracle_digits() {
        // log sigma_1((theta-1)^2) in Q[X]/(X^6-2) is 2 log(2^(1/6) - 1)
        let k = sextic2();
        let emb = EmbeddingSet::new(&k, 128).unwrap();
        let u2 = k.element_from_ints(&[1, -2, 1]);
        let lv = emb.log_vector(&u2, 128).unwrap();
        // embedding 0 is the root -2^(1/6), where u2 = (2^(1/6) + 1)^2
        assert_near(&lv[0], "1.5051535167766419798039221567955", -90);
        // embedding 1 is +2^(1/6), where u2 = (2^(1/6) - 1)^2
        assert_near(&lv[1], "-4.1999082134354101816402979396868", -90);
    }

    #[test]
    fn zero_has_no_log_vector() {
        let k = cubic2();
        let emb = EmbeddingSet::new(&k, 64).unwrap();
        assert!(emb.log_vector(&k.zero(), 64).is_err());
    }
}
