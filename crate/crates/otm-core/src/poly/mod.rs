//! Exact univariate polynomial arithmetic over the rationals.
//!
//! Coefficients are stored constant term first and kept canonical: no
//! trailing zero coefficients, every rational fully reduced. The zero
//! polynomial has an empty coefficient vector and degree `None`.

mod complex_roots;
mod irreducible;
mod sturm;

pub use complex_roots::{complex_roots, CertifiedRoots};
pub use irreducible::{irreducibility_status, IrreducibleEvidence, IrreducibilityStatus};
pub use sturm::{isolate_real_roots, IsolatingInterval, SturmChain};

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::{Error, Int, Rat, Result};

/// Univariate polynomial with exact rational coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalPoly {
    coeffs: Vec<Rat>,
}

impl RationalPoly {
    pub fn zero() -> Self {
        RationalPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        RationalPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        RationalPoly::new(vec![c])
    }

    /// The monomial `X`.
    pub fn x() -> Self {
        RationalPoly::new(vec![Rat::zero(), Rat::one()])
    }

    /// Build from coefficients, constant term first.
    pub fn new(coeffs: Vec<Rat>) -> Self {
        let mut p = RationalPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        RationalPoly::new(coeffs.iter().map(|&c| crate::rat(c)).collect())
    }

    pub fn from_bigint_coeffs(coeffs: &[Int]) -> Self {
        RationalPoly::new(coeffs.iter().map(|c| Rat::from_integer(c.clone())).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().map_or(false, Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of `X^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading_coeff(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().map_or(false, One::is_one)
    }

    /// All coefficients integral?
    pub fn is_integer(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Integer coefficients, if all of them are integral.
    pub fn to_int_coeffs(&self) -> Option<Vec<Int>> {
        if self.is_integer() {
            Some(self.coeffs.iter().map(|c| c.to_integer()).collect())
        } else {
            None
        }
    }

    pub fn neg(&self) -> Self {
        RationalPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        RationalPoly::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return RationalPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPoly::new(out)
    }

    pub fn mul_scalar(&self, c: &Rat) -> Self {
        RationalPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Euclidean division: `self = q * other + r` with `deg r < deg other`.
    pub fn divmod(&self, other: &Self) -> Result<(Self, Self)> {
        let d_other = other.degree().ok_or(Error::DivisionByZero)?;
        let lc = other.leading_coeff().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() < other.coeffs.len() {
            return Ok((RationalPoly::zero(), self.clone()));
        }
        let dq = rem.len() - other.coeffs.len();
        let mut quot = vec![Rat::zero(); dq + 1];
        for k in (0..=dq).rev() {
            let c = &rem[k + d_other] / &lc;
            if !c.is_zero() {
                for (i, b) in other.coeffs.iter().enumerate() {
                    let t = &c * b;
                    rem[k + i] -= t;
                }
            }
            quot[k] = c;
        }
        Ok((RationalPoly::new(quot), RationalPoly::new(rem)))
    }

    pub fn rem(&self, other: &Self) -> Result<Self> {
        Ok(self.divmod(other)?.1)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.into_monic()
    }

    /// Extended gcd: returns `(g, s, t)` with `g = s*self + t*other`,
    /// `g` monic (or zero).
    pub fn xgcd(&self, other: &Self) -> (Self, Self, Self) {
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let mut s0 = RationalPoly::one();
        let mut s1 = RationalPoly::zero();
        let mut t0 = RationalPoly::zero();
        let mut t1 = RationalPoly::one();
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1).expect("nonzero divisor");
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if let Some(lc) = r0.leading_coeff().cloned() {
            let inv = Rat::one() / lc;
            (r0.mul_scalar(&inv), s0.mul_scalar(&inv), t0.mul_scalar(&inv))
        } else {
            (r0, s0, t0)
        }
    }

    pub fn into_monic(self) -> Self {
        match self.leading_coeff() {
            None => self,
            Some(lc) if lc.is_one() => self,
            Some(lc) => {
                let inv = Rat::one() / lc.clone();
                self.mul_scalar(&inv)
            }
        }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return RationalPoly::zero();
        }
        RationalPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer(Int::from(i)))
                .collect(),
        )
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Exact sign of the value at a rational point.
    pub fn sign_at(&self, x: &Rat) -> i32 {
        let v = self.eval(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    /// `self / gcd(self, self')`: same roots, all simple. Monic.
    pub fn squarefree_part(&self) -> Self {
        if self.is_zero() {
            return RationalPoly::zero();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.clone().into_monic();
        }
        let (q, r) = self.divmod(&g).expect("gcd divides");
        debug_assert!(r.is_zero());
        q.into_monic()
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Cauchy root bound `1 + max |a_i| / |a_n|`: every complex root has
    /// modulus strictly below it.
    pub fn cauchy_bound(&self) -> Rat {
        let lc = self
            .leading_coeff()
            .expect("root bound of the zero polynomial")
            .abs();
        let mut m = Rat::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let q = c.abs() / lc.clone();
            if q > m {
                m = q;
            }
        }
        m + Rat::one()
    }

    /// Substitute `X -> X + c` (Taylor shift by synthetic division).
    pub fn shift(&self, c: &Rat) -> Self {
        let mut coeffs = self.coeffs.clone();
        let n = coeffs.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = &coeffs[j + 1] * c;
                coeffs[j] += t;
            }
        }
        RationalPoly::new(coeffs)
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = a.is_one();
            match (i, unit) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "X")?,
                (1, false) => write!(f, "{a}*X")?,
                (_, true) => write!(f, "X^{i}")?,
                (_, false) => write!(f, "{a}*X^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn p(coeffs: &[i64]) -> RationalPoly {
        RationalPoly::from_int_coeffs(coeffs)
    }

    #[test]
    fn canonical_trim() {
        assert!(p(&[0, 0, 0]).is_zero());
        assert_eq!(p(&[1, 2, 0]).degree(), Some(1));
    }

    #[test]
    fn mul_by_zero_absorbs() {
        let f = p(&[-2, 0, 0, 1]);
        assert!(f.mul(&RationalPoly::zero()).is_zero());
    }

    #[test]
    fn divmod_examples() {
        // (X^3 - 2) mod (X - 2) = f(2) = 6
        let f = p(&[-2, 0, 0, 1]);
        let g = p(&[-2, 1]);
        let (q, r) = f.divmod(&g).unwrap();
        assert_eq!(r, p(&[6]));
        assert_eq!(q.mul(&g).add(&r), f);
        assert!(f.divmod(&RationalPoly::zero()).is_err());
    }

    #[test]
    fn gcd_common_factor() {
        // gcd(X^2 - 1, X - 1) = X - 1
        let a = p(&[-1, 0, 1]);
        let b = p(&[-1, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
    }

    #[test]
    fn xgcd_bezout() {
        let a = p(&[-2, 0, 0, 1]); // X^3 - 2
        let b = p(&[-1, 1]); // X - 1
        let (g, s, t) = a.xgcd(&b);
        assert_eq!(g, RationalPoly::one());
        assert_eq!(s.mul(&a).add(&t.mul(&b)), RationalPoly::one());
    }

    #[test]
    fn squarefree_part_strips_multiplicity() {
        // (X-1)^2 (X+2) -> (X-1)(X+2)
        let f = p(&[-1, 1]).mul(&p(&[-1, 1])).mul(&p(&[2, 1]));
        let sf = f.squarefree_part();
        assert_eq!(sf, p(&[-1, 1]).mul(&p(&[2, 1])).into_monic());
        assert!(sf.is_squarefree());
    }

    #[test]
    fn eval_and_shift() {
        let f = p(&[-2, 0, 0, 1]);
        assert_eq!(f.eval(&rat(2)), rat(6));
        // shift by 1: g(X) = f(X+1) has g(0) = f(1) = -1
        let g = f.shift(&rat(1));
        assert_eq!(g.eval(&rat(0)), rat(-1));
        assert_eq!(g.eval(&rat(1)), f.eval(&rat(2)));
    }

    #[test]
    fn cauchy_bound_dominates_roots() {
        let f = p(&[-2, 0, 0, 1]);
        // real root is 2^(1/3) < 3 = bound
        assert_eq!(f.cauchy_bound(), rat(3));
    }

    #[test]
    fn display_readable() {
        let f = p(&[-2, 0, 0, 1]);
        assert_eq!(alloc::format!("{f}"), "X^3 - 2");
    }
}
