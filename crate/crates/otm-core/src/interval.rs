//! Certified real intervals and complex balls over dyadic endpoints.
//!
//! [`RealInterval`] is a closed interval with dyadic endpoints, rounded
//! outward at an explicit working precision. [`ComplexBall`] is a
//! midpoint-radius enclosure. The logarithm is computed from the atanh
//! series with an explicit tail bound, so every enclosure produced here
//! is mathematically guaranteed to contain the true value.

use alloc::vec::Vec;


use crate::dyadic::{Dyadic, Round};
use crate::{Error, Rat, Result};

/// Working precision for radius bookkeeping. Radii only need a couple of
/// correct leading bits; they are always rounded up.
const RAD_PREC: u32 = 32;

/// Closed interval `[lo, hi]` certified to contain a real value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealInterval {
    lo: Dyadic,
    hi: Dyadic,
}

impl RealInterval {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Self {
        assert!(lo <= hi, "inverted interval");
        RealInterval { lo, hi }
    }

    pub fn point(d: Dyadic) -> Self {
        RealInterval {
            lo: d.clone(),
            hi: d,
        }
    }

    pub fn zero() -> Self {
        RealInterval::point(Dyadic::zero())
    }

    pub fn from_int(n: i64) -> Self {
        RealInterval::point(Dyadic::from_int(n))
    }

    /// Outward enclosure of an exact rational.
    pub fn from_rat(q: &Rat, prec: u32) -> Self {
        RealInterval {
            lo: Dyadic::from_rat(q, prec, Round::Down),
            hi: Dyadic::from_rat(q, prec, Round::Up),
        }
    }

    /// Outward enclosure of a rational interval.
    pub fn from_rats(lo: &Rat, hi: &Rat, prec: u32) -> Self {
        assert!(lo <= hi);
        RealInterval {
            lo: Dyadic::from_rat(lo, prec, Round::Down),
            hi: Dyadic::from_rat(hi, prec, Round::Up),
        }
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    /// Upper bound on the width `hi - lo`.
    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo).round(RAD_PREC, Round::Up)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.signum() <= 0 && self.hi.signum() >= 0
    }

    pub fn contains_rat(&self, q: &Rat) -> bool {
        self.lo.to_rat() <= *q && *q <= self.hi.to_rat()
    }

    /// Certified sign: `Some(-1|0|1)` when decided, `None` when the
    /// interval straddles zero without being the exact point 0.
    pub fn sign(&self) -> Option<i32> {
        if self.lo.signum() > 0 {
            Some(1)
        } else if self.hi.signum() < 0 {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    pub fn neg(&self) -> Self {
        RealInterval {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
        }
    }

    pub fn add(&self, o: &Self, prec: u32) -> Self {
        RealInterval {
            lo: self.lo.add_round(&o.lo, prec, Round::Down),
            hi: self.hi.add_round(&o.hi, prec, Round::Up),
        }
    }

    pub fn sub(&self, o: &Self, prec: u32) -> Self {
        self.add(&o.neg(), prec)
    }

    pub fn mul(&self, o: &Self, prec: u32) -> Self {
        // Exact endpoint products, then one outward rounding.
        let cands = [
            self.lo.mul(&o.lo),
            self.lo.mul(&o.hi),
            self.hi.mul(&o.lo),
            self.hi.mul(&o.hi),
        ];
        let lo = cands.iter().min().unwrap().round(prec, Round::Down);
        let hi = cands.iter().max().unwrap().round(prec, Round::Up);
        RealInterval { lo, hi }
    }

    /// Interval division; fails if the divisor contains zero.
    pub fn div(&self, o: &Self, prec: u32) -> Result<Self> {
        if o.contains_zero() {
            return Err(Error::DivisionByZero);
        }
        let pairs = [
            (&self.lo, &o.lo),
            (&self.lo, &o.hi),
            (&self.hi, &o.lo),
            (&self.hi, &o.hi),
        ];
        let lo = pairs
            .iter()
            .map(|(a, b)| a.div(b, prec, Round::Down))
            .min()
            .unwrap();
        let hi = pairs
            .iter()
            .map(|(a, b)| a.div(b, prec, Round::Up))
            .max()
            .unwrap();
        Ok(RealInterval { lo, hi })
    }

    /// Exact scaling by `2^k`.
    pub fn mul_pow2(&self, k: i64) -> Self {
        RealInterval {
            lo: self.lo.mul_pow2(k),
            hi: self.hi.mul_pow2(k),
        }
    }

    pub fn scale_int(&self, k: i64, prec: u32) -> Self {
        self.mul(&RealInterval::from_int(k), prec)
    }

    /// Interval of `|x|`.
    pub fn abs(&self) -> Self {
        if self.lo.signum() >= 0 {
            self.clone()
        } else if self.hi.signum() <= 0 {
            self.neg()
        } else {
            RealInterval {
                lo: Dyadic::zero(),
                hi: self.hi.neg().max(self.hi.clone()).max(self.lo.abs()),
            }
        }
    }

    pub fn square(&self, prec: u32) -> Self {
        let a = self.abs();
        RealInterval {
            lo: a.lo.mul(&a.lo).round(prec, Round::Down),
            hi: a.hi.mul(&a.hi).round(prec, Round::Up),
        }
    }

    /// Interval square root; the interval must not contain negatives.
    pub fn sqrt(&self, prec: u32) -> Result<Self> {
        if self.lo.signum() < 0 {
            return Err(Error::Precondition(alloc::format!(
                "sqrt of interval with negative lower bound {}",
                self.lo
            )));
        }
        Ok(RealInterval {
            lo: self.lo.sqrt(prec, Round::Down),
            hi: self.hi.sqrt(prec, Round::Up),
        })
    }

    /// Widen both endpoints outward by `r >= 0`.
    pub fn widen(&self, r: &Dyadic) -> Self {
        debug_assert!(r.signum() >= 0);
        RealInterval {
            lo: self.lo.sub(r),
            hi: self.hi.add(r),
        }
    }

    pub fn union(&self, o: &Self) -> Self {
        RealInterval {
            lo: self.lo.clone().min(o.lo.clone()),
            hi: self.hi.clone().max(o.hi.clone()),
        }
    }

    /// Do the two intervals certifiably not intersect?
    pub fn disjoint(&self, o: &Self) -> bool {
        self.hi < o.lo || o.hi < self.lo
    }

    pub fn intersects(&self, o: &Self) -> bool {
        !self.disjoint(o)
    }

    pub fn midpoint(&self) -> Dyadic {
        self.lo.add(&self.hi).mul_pow2(-1)
    }

    /// Sum of many intervals.
    pub fn sum(items: &[Self], prec: u32) -> Self {
        let mut acc = RealInterval::zero();
        for it in items {
            acc = acc.add(it, prec);
        }
        acc
    }

    /// Horner evaluation of a rational-coefficient polynomial
    /// (constant term first) over this interval.
    pub fn eval_rat_poly(&self, coeffs: &[Rat], prec: u32) -> Self {
        let mut acc = RealInterval::zero();
        for c in coeffs.iter().rev() {
            acc = acc
                .mul(self, prec)
                .add(&RealInterval::from_rat(c, prec), prec);
        }
        acc
    }

    /// Certified natural log. Requires a strictly positive interval.
    pub fn log(&self, prec: u32) -> Result<Self> {
        if self.lo.signum() <= 0 {
            return Err(Error::Precondition(alloc::format!(
                "log of interval with non-positive lower bound {}",
                self.lo
            )));
        }
        let lo = log_point(&self.lo, prec);
        let hi = log_point(&self.hi, prec);
        Ok(RealInterval {
            lo: lo.lo,
            hi: hi.hi,
        })
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.lo.to_f64(), self.hi.to_f64())
    }
}

/// `atanh(z) = sum z^(2k+1)/(2k+1)` for an interval `z` inside `[0, 1/2]`,
/// with a rigorous geometric tail bound.
fn series_atanh(z: &RealInterval, prec: u32) -> RealInterval {
    debug_assert!(z.lo.signum() >= 0);
    debug_assert!(z.hi <= Dyadic::from_int(1).mul_pow2(-1));
    let wp = prec + 16;
    let zz = z.square(wp);
    let mut term = z.clone(); // z^(2k+1)
    let mut sum = z.clone();
    let mut k: i64 = 1;
    let eps = Dyadic::pow2(-(wp as i64));
    loop {
        term = term.mul(&zz, wp);
        let contrib = term
            .div(&RealInterval::from_int(2 * k + 1), wp)
            .expect("2k+1 is nonzero");
        sum = sum.add(&contrib, wp);
        if term.hi < eps || k > 100_000 {
            // Tail: sum_{j>k} z^(2j+1)/(2j+1) <= z^(2k+3) / (1 - z^2) <= 2 * next.
            let next = term.hi.mul(&zz.hi);
            let tail = next.mul_pow2(1).round(RAD_PREC, Round::Up);
            sum = RealInterval::new(sum.lo, sum.hi.add(&tail));
            return sum;
        }
        k += 1;
    }
}

/// Enclosure of `ln 2 = 2 atanh(1/3)`.
pub fn ln2(prec: u32) -> RealInterval {
    let third = RealInterval::from_rat(&Rat::new(crate::int(1), crate::int(3)), prec + 16);
    series_atanh(&third, prec).mul_pow2(1)
}

/// Enclosure of `ln x` for a strictly positive dyadic point.
fn log_point(x: &Dyadic, prec: u32) -> RealInterval {
    debug_assert!(x.signum() > 0);
    let wp = prec + 32;
    let e = x.floor_log2().unwrap();
    let m = x.mul_pow2(-e); // in [1, 2)
    let num = RealInterval::point(m.sub(&Dyadic::one()));
    let den = RealInterval::point(m.add(&Dyadic::one()));
    let z = num.div(&den, wp).expect("denominator >= 2");
    let log_m = series_atanh(&z, wp).mul_pow2(1);
    if e == 0 {
        log_m
    } else {
        log_m.add(&ln2(wp).scale_int(e, wp), wp)
    }
}

/// Complex ball `|z - (re + i*im)| <= rad` with dyadic midpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexBall {
    re: Dyadic,
    im: Dyadic,
    rad: Dyadic,
}

impl ComplexBall {
    pub fn new(re: Dyadic, im: Dyadic, rad: Dyadic) -> Self {
        assert!(rad.signum() >= 0, "negative radius");
        ComplexBall { re, im, rad }
    }

    pub fn exact(re: Dyadic, im: Dyadic) -> Self {
        ComplexBall {
            re,
            im,
            rad: Dyadic::zero(),
        }
    }

    pub fn zero() -> Self {
        ComplexBall::exact(Dyadic::zero(), Dyadic::zero())
    }

    pub fn one() -> Self {
        ComplexBall::exact(Dyadic::one(), Dyadic::zero())
    }

    pub fn from_rat(q: &Rat, prec: u32) -> Self {
        Self::from_real(&RealInterval::from_rat(q, prec))
    }

    /// Ball enclosing a real interval (zero imaginary part).
    pub fn from_real(r: &RealInterval) -> Self {
        let mid = r.midpoint();
        let rad = r.hi().sub(&mid).max(mid.sub(r.lo())).round(RAD_PREC, Round::Up);
        ComplexBall {
            re: mid,
            im: Dyadic::zero(),
            rad,
        }
    }

    pub fn re(&self) -> &Dyadic {
        &self.re
    }

    pub fn im(&self) -> &Dyadic {
        &self.im
    }

    pub fn rad(&self) -> &Dyadic {
        &self.rad
    }

    pub fn re_interval(&self) -> RealInterval {
        RealInterval::new(self.re.sub(&self.rad), self.re.add(&self.rad))
    }

    pub fn im_interval(&self) -> RealInterval {
        RealInterval::new(self.im.sub(&self.rad), self.im.add(&self.rad))
    }

    /// Upper bound on the midpoint modulus.
    fn mid_abs_up(&self) -> Dyadic {
        let n2 = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        n2.sqrt(RAD_PREC, Round::Up)
    }

    /// Lower bound on the midpoint modulus.
    fn mid_abs_down(&self) -> Dyadic {
        let n2 = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        n2.sqrt(RAD_PREC, Round::Down)
    }

    /// Interval containing `|z|`, with the midpoint modulus computed at
    /// the requested precision.
    pub fn abs_interval(&self, prec: u32) -> RealInterval {
        let n2 = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        let lo = n2.sqrt(prec, Round::Down).sub(&self.rad).max(Dyadic::zero());
        let hi = n2.sqrt(prec, Round::Up).add(&self.rad);
        RealInterval::new(lo, hi)
    }

    /// Interval containing `|z|^2`.
    pub fn norm_sqr(&self, prec: u32) -> RealInterval {
        let n2 = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        let abs_hi = n2.sqrt(RAD_PREC, Round::Up).add(&self.rad);
        // |z|^2 within mid^2 +- rad (2 |mid| + rad); keep the midpoint
        // square exact and push the ball radius into the endpoints.
        let spread = self
            .rad
            .mul(&abs_hi.add(&self.mid_abs_up()))
            .round(RAD_PREC, Round::Up);
        let lo = n2.sub(&spread).max(Dyadic::zero()).round(prec, Round::Down);
        let hi = n2.add(&spread).round(prec, Round::Up);
        RealInterval::new(lo, hi)
    }

    pub fn conj(&self) -> Self {
        ComplexBall {
            re: self.re.clone(),
            im: self.im.neg(),
            rad: self.rad.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        ComplexBall {
            re: self.re.neg(),
            im: self.im.neg(),
            rad: self.rad.clone(),
        }
    }

    pub fn add(&self, o: &Self, prec: u32) -> Self {
        let re = self.re.add(&o.re);
        let im = self.im.add(&o.im);
        let (re_r, e1) = round_with_err(&re, prec);
        let (im_r, e2) = round_with_err(&im, prec);
        let rad = rad_sum(&[&self.rad, &o.rad, &e1, &e2]);
        ComplexBall {
            re: re_r,
            im: im_r,
            rad,
        }
    }

    pub fn sub(&self, o: &Self, prec: u32) -> Self {
        self.add(&o.neg(), prec)
    }

    pub fn mul(&self, o: &Self, prec: u32) -> Self {
        let re = self.re.mul(&o.re).sub(&self.im.mul(&o.im));
        let im = self.re.mul(&o.im).add(&self.im.mul(&o.re));
        let (re_r, e1) = round_with_err(&re, prec);
        let (im_r, e2) = round_with_err(&im, prec);
        let cross1 = self.mid_abs_up().mul(&o.rad);
        let cross2 = o.mid_abs_up().mul(&self.rad);
        let cross3 = self.rad.mul(&o.rad);
        let rad = rad_sum(&[&cross1, &cross2, &cross3, &e1, &e2]);
        ComplexBall {
            re: re_r,
            im: im_r,
            rad,
        }
    }

    /// Ball reciprocal; fails if the ball may contain zero.
    pub fn inv(&self, prec: u32) -> Result<Self> {
        let abs_dn = self.mid_abs_down();
        if abs_dn <= self.rad {
            return Err(Error::DivisionByZero);
        }
        let n2 = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        let re_lo = self.re.div(&n2, prec + 2, Round::Down);
        let re_hi = self.re.div(&n2, prec + 2, Round::Up);
        let im_lo = self.im.neg().div(&n2, prec + 2, Round::Down);
        let im_hi = self.im.neg().div(&n2, prec + 2, Round::Up);
        let e1 = re_hi.sub(&re_lo);
        let e2 = im_hi.sub(&im_lo);
        // |1/z - 1/m| <= rad / (|m| (|m| - rad)) on the ball.
        let denom = abs_dn.mul(&abs_dn.sub(&self.rad)).round(RAD_PREC, Round::Down);
        let prop = self.rad.div(&denom, RAD_PREC, Round::Up);
        let rad = rad_sum(&[&prop, &e1, &e2]);
        Ok(ComplexBall {
            re: re_lo,
            im: im_lo,
            rad,
        })
    }

    pub fn div(&self, o: &Self, prec: u32) -> Result<Self> {
        Ok(self.mul(&o.inv(prec)?, prec))
    }

    pub fn scale_real(&self, r: &RealInterval, prec: u32) -> Self {
        self.mul(&ComplexBall::from_real(r), prec)
    }

    /// Horner evaluation of a rational-coefficient polynomial at the ball.
    pub fn eval_rat_poly(&self, coeffs: &[Rat], prec: u32) -> Self {
        let mut acc = ComplexBall::zero();
        for c in coeffs.iter().rev() {
            acc = acc.mul(self, prec).add(&ComplexBall::from_rat(c, prec), prec);
        }
        acc
    }

    /// Certified lower bound on `|a - b|` over the two balls. Negative
    /// values mean the balls may intersect.
    pub fn dist_lower(&self, o: &Self) -> Dyadic {
        let dx = self.re.sub(&o.re);
        let dy = self.im.sub(&o.im);
        let d2 = dx.mul(&dx).add(&dy.mul(&dy));
        let d = d2.sqrt(RAD_PREC, Round::Down);
        d.sub(&self.rad).sub(&o.rad)
    }

    /// Certified: the true values enclosed by the two balls differ.
    pub fn disjoint(&self, o: &Self) -> bool {
        self.dist_lower(o).signum() > 0
    }

    /// The balls intersect (so they may enclose the same value).
    pub fn overlaps(&self, o: &Self) -> bool {
        !self.disjoint(o)
    }

    /// True if this ball certifiably contains only zero-imaginary values
    /// is impossible for a ball; instead report whether it *may* be real.
    pub fn may_be_real(&self) -> bool {
        self.im_interval().contains_zero()
    }

    pub fn to_f64_parts(&self) -> (f64, f64, f64) {
        (self.re.to_f64(), self.im.to_f64(), self.rad.to_f64())
    }
}

fn round_with_err(x: &Dyadic, prec: u32) -> (Dyadic, Dyadic) {
    let r = x.round(prec, Round::Down);
    let err = x.sub(&r).abs().round(RAD_PREC, Round::Up);
    (r, err)
}

fn rad_sum(items: &[&Dyadic]) -> Dyadic {
    let mut acc = Dyadic::zero();
    for it in items {
        acc = acc.add(it).round(RAD_PREC, Round::Up);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn rq(n: i64, d: i64) -> Rat {
        rat(n) / rat(d)
    }

    #[test]
    fn interval_mul_signs() {
        let a = RealInterval::from_rats(&rq(-2, 1), &rq(3, 1), 64);
        let b = RealInterval::from_rats(&rq(-1, 1), &rq(5, 1), 64);
        let p = a.mul(&b, 64);
        // extremes: -2*5 = -10, 3*5 = 15
        assert!(p.contains_rat(&rq(-10, 1)));
        assert!(p.contains_rat(&rq(15, 1)));
        assert!(!p.contains_rat(&rq(16, 1)));
    }

    #[test]
    fn interval_div_excludes_zero() {
        let a = RealInterval::from_rats(&rq(1, 1), &rq(2, 1), 64);
        let b = RealInterval::from_rats(&rq(-1, 1), &rq(1, 1), 64);
        assert!(a.div(&b, 64).is_err());
        let c = RealInterval::from_rats(&rq(3, 1), &rq(4, 1), 64);
        let q = a.div(&c, 64).unwrap();
        assert!(q.contains_rat(&rq(1, 3)));
        assert!(q.contains_rat(&rq(2, 3)));
    }

    #[test]
    fn ln2_value() {
        // ln 2 = 0.693147180559945309417232121458...
        let l = ln2(128);
        crate::testutil::assert_near(&l, "0.693147180559945309417232121458", -95);
        assert!(l.width() < Dyadic::pow2(-120));
    }

    #[test]
    fn log_brackets_known_values() {
        // log(1) = 0
        let one = RealInterval::from_int(1);
        let l = one.log(96).unwrap();
        assert!(l.contains_zero());
        assert!(l.width() < Dyadic::pow2(-90));
        // log(e) would need e; spot-check log(4) = 2 ln 2 instead.
        let four = RealInterval::from_int(4);
        let l4 = four.log(128).unwrap();
        let two_ln2 = ln2(128).mul_pow2(1);
        assert!(l4.intersects(&two_ln2));
        assert!(l4.width() < Dyadic::pow2(-120));
        // log of a subnormal-scale value: log(2^-100) = -100 ln 2.
        let tiny = RealInterval::point(Dyadic::pow2(-100));
        let lt = tiny.log(128).unwrap();
        let expect = ln2(128).scale_int(-100, 128);
        assert!(lt.intersects(&expect));
    }

    #[test]
    fn log_rejects_nonpositive() {
        let bad = RealInterval::from_rats(&rq(-1, 1), &rq(1, 1), 64);
        assert!(bad.log(64).is_err());
    }

    #[test]
    fn ball_mul_contains_product() {
        // (1 + 2i) * (3 - i) = 5 + 5i
        let a = ComplexBall::exact(Dyadic::from_int(1), Dyadic::from_int(2));
        let b = ComplexBall::exact(Dyadic::from_int(3), Dyadic::from_int(-1));
        let p = a.mul(&b, 64);
        assert_eq!(p.re(), &Dyadic::from_int(5));
        assert_eq!(p.im(), &Dyadic::from_int(5));
        assert!(p.rad().is_zero());
    }

    #[test]
    fn ball_inv_contains_reciprocal() {
        // 1 / (2i) = -i/2
        let a = ComplexBall::new(Dyadic::zero(), Dyadic::from_int(2), Dyadic::pow2(-20));
        let inv = a.inv(64).unwrap();
        let expect = ComplexBall::exact(Dyadic::zero(), Dyadic::from_int(-1).mul_pow2(-1));
        assert!(inv.overlaps(&expect));
        // A ball containing zero cannot be inverted.
        let z = ComplexBall::new(Dyadic::zero(), Dyadic::zero(), Dyadic::one());
        assert!(z.inv(64).is_err());
    }

    #[test]
    fn ball_disjointness() {
        let a = ComplexBall::new(Dyadic::zero(), Dyadic::zero(), Dyadic::pow2(-4));
        let b = ComplexBall::new(Dyadic::one(), Dyadic::zero(), Dyadic::pow2(-4));
        assert!(a.disjoint(&b));
        let c = ComplexBall::new(Dyadic::from_int(1).mul_pow2(-3), Dyadic::zero(), Dyadic::pow2(-4));
        assert!(a.overlaps(&c));
    }

    #[test]
    fn poly_eval_over_interval() {
        // p(x) = x^2 - 2 over [1.4, 1.5] contains 0 (sqrt 2 inside).
        let coeffs = [rq(-2, 1), rq(0, 1), rq(1, 1)];
        let x = RealInterval::from_rats(&rq(14, 10), &rq(15, 10), 96);
        let y = x.eval_rat_poly(&coeffs, 96);
        assert!(y.contains_zero());
    }
}
