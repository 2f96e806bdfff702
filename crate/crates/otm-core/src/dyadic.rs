//! Arbitrary-precision binary floats with directed rounding.
//!
//! A [`Dyadic`] is an exact rational of the form `m * 2^e` with `m` an
//! arbitrary-precision integer. Addition, subtraction and multiplication
//! are exact; division, square roots and rounding take an explicit
//! precision and a rounding direction, so interval arithmetic built on
//! top can always round outward. No operation ever consults the FPU.

use core::cmp::Ordering;
use core::fmt;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::{Int, Rat};

/// Rounding direction: toward minus or plus infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    Down,
    Up,
}

impl Round {
    pub fn flip(self) -> Round {
        match self {
            Round::Down => Round::Up,
            Round::Up => Round::Down,
        }
    }
}

/// Exact binary float `man * 2^exp`, kept canonical: `man` is odd or zero
/// (with `exp = 0` for zero).
#[derive(Clone, PartialEq, Eq)]
pub struct Dyadic {
    man: Int,
    exp: i64,
}

fn floor_shr(x: &Int, k: u64) -> Int {
    // BigInt shr is an arithmetic shift: floor division by 2^k.
    x >> k
}

fn ceil_shr(x: &Int, k: u64) -> Int {
    -floor_shr(&-x, k)
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic {
            man: Int::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic {
            man: Int::from(1),
            exp: 0,
        }
    }

    /// `2^k`.
    pub fn pow2(k: i64) -> Self {
        Dyadic {
            man: Int::from(1),
            exp: k,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Dyadic::new(Int::from(n), 0)
    }

    pub fn new(man: Int, exp: i64) -> Self {
        let mut d = Dyadic { man, exp };
        d.normalize();
        d
    }

    fn normalize(&mut self) {
        if self.man.is_zero() {
            self.exp = 0;
        } else if let Some(tz) = self.man.trailing_zeros() {
            if tz > 0 {
                self.man = &self.man >> tz;
                self.exp += tz as i64;
            }
        }
    }

    pub fn mantissa(&self) -> &Int {
        &self.man
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.man.is_zero()
    }

    /// Sign as -1, 0, or +1.
    pub fn signum(&self) -> i32 {
        match self.man.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }

    /// Number of significant bits of the mantissa.
    pub fn bits(&self) -> u64 {
        self.man.bits()
    }

    /// `floor(log2 |x|)`, or `None` for zero.
    pub fn floor_log2(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.exp + self.man.bits() as i64 - 1)
        }
    }

    pub fn neg(&self) -> Self {
        Dyadic {
            man: -&self.man,
            exp: self.exp,
        }
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            man: self.man.abs(),
            exp: self.exp,
        }
    }

    /// Exact multiplication by `2^k`.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            Dyadic::zero()
        } else {
            Dyadic {
                man: self.man.clone(),
                exp: self.exp + k,
            }
        }
    }

    /// Exact addition.
    pub fn add(&self, other: &Dyadic) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.exp >= other.exp {
            let shift = (self.exp - other.exp) as u64;
            Dyadic::new((&self.man << shift) + &other.man, other.exp)
        } else {
            other.add(self)
        }
    }

    /// Exact subtraction.
    pub fn sub(&self, other: &Dyadic) -> Self {
        self.add(&other.neg())
    }

    /// Exact multiplication.
    pub fn mul(&self, other: &Dyadic) -> Self {
        Dyadic::new(&self.man * &other.man, self.exp + other.exp)
    }

    /// Round to at most `prec` significant bits in direction `dir`.
    pub fn round(&self, prec: u32, dir: Round) -> Self {
        let bits = self.man.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let k = bits - prec as u64;
        let man = match dir {
            Round::Down => floor_shr(&self.man, k),
            Round::Up => ceil_shr(&self.man, k),
        };
        Dyadic::new(man, self.exp + k as i64)
    }

    pub fn add_round(&self, other: &Dyadic, prec: u32, dir: Round) -> Self {
        self.add(other).round(prec, dir)
    }

    pub fn mul_round(&self, other: &Dyadic, prec: u32, dir: Round) -> Self {
        self.mul(other).round(prec, dir)
    }

    /// Directed division to `prec` significant bits. Panics on a zero divisor.
    pub fn div(&self, other: &Dyadic, prec: u32, dir: Round) -> Self {
        assert!(!other.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let la = self.man.bits() as i64;
        let lb = other.man.bits() as i64;
        let s = prec as i64 + 2 - (la - lb);
        let (n, d, res_exp) = if s >= 0 {
            (
                &self.man << s as u64,
                other.man.clone(),
                self.exp - other.exp - s,
            )
        } else {
            (
                self.man.clone(),
                &other.man << (-s) as u64,
                self.exp - other.exp - s,
            )
        };
        let (n, d) = if d.is_negative() { (-n, -d) } else { (n, d) };
        let q = match dir {
            Round::Down => n.div_floor(&d),
            Round::Up => -(-n).div_floor(&d),
        };
        Dyadic::new(q, res_exp).round(prec, dir)
    }

    /// Directed square root to `prec` bits. Panics on negative input.
    pub fn sqrt(&self, prec: u32, dir: Round) -> Self {
        assert!(self.signum() >= 0, "dyadic sqrt of negative number");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let target = 2 * (prec as u64 + 2);
        let bits = self.man.bits();
        let mut k = target.saturating_sub(bits) as i64;
        if (self.exp - k) % 2 != 0 {
            k += 1;
        }
        let n: Int = &self.man << k as u64;
        let s = n.sqrt();
        let exact = (&s * &s) == n;
        let man = match dir {
            Round::Down => s,
            Round::Up => {
                if exact {
                    s
                } else {
                    s + 1
                }
            }
        };
        Dyadic::new(man, (self.exp - k) / 2).round(prec, dir)
    }

    /// Directed conversion from an exact rational.
    pub fn from_rat(q: &Rat, prec: u32, dir: Round) -> Self {
        if q.is_zero() {
            return Dyadic::zero();
        }
        let a = Dyadic::new(q.numer().clone(), 0);
        let b = Dyadic::new(q.denom().clone(), 0);
        a.div(&b, prec, dir)
    }

    /// Exact conversion to a rational.
    pub fn to_rat(&self) -> Rat {
        if self.exp >= 0 {
            Rat::from_integer(&self.man << self.exp as u64)
        } else {
            Rat::new(self.man.clone(), Int::from(1) << (-self.exp) as u64)
        }
    }

    /// Nearest-ish `f64` approximation, for diagnostics only.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.man.bits() as i64;
        let shift = bits - 53;
        let (top, e) = if shift > 0 {
            (floor_shr(&self.man, shift as u64), self.exp + shift)
        } else {
            (self.man.clone(), self.exp)
        };
        let t = top.to_i64().expect("top bits fit in i64") as f64;
        t * pow2_f64(e)
    }

    /// Exact conversion from a finite `f64`.
    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "from_f64 requires a finite value");
        if x == 0.0 {
            return Dyadic::zero();
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
        let biased = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if biased == 0 {
            (frac, -1074)
        } else {
            (frac | (1 << 52), biased - 1075)
        };
        Dyadic::new(Int::from(sign * m as i64), e)
    }

    fn cmp_value(&self, other: &Dyadic) -> Ordering {
        let sa = self.signum();
        let sb = other.signum();
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        // Same nonzero sign: compare magnitudes via floor_log2 first.
        let fa = self.floor_log2().unwrap();
        let fb = other.floor_log2().unwrap();
        if fa != fb {
            let mag = fa.cmp(&fb);
            return if sa > 0 { mag } else { mag.reverse() };
        }
        let diff = self.sub(other);
        match diff.signum() {
            0 => Ordering::Equal,
            s if s > 0 => Ordering::Greater,
            _ => Ordering::Less,
        }
    }
}

/// `2^k` as f64, saturating outside the representable range.
fn pow2_f64(k: i64) -> f64 {
    if k < -1074 {
        0.0
    } else if k > 1023 {
        f64::INFINITY
    } else if k >= -1022 {
        f64::from_bits(((k + 1023) as u64) << 52)
    } else {
        f64::from_bits(1u64 << (k + 1074) as u64)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_value(other)
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dyadic({} * 2^{} ~ {})", self.man, self.exp, self.to_f64())
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn bigint_shr_is_floor() {
        assert_eq!(Int::from(-5) >> 1u64, Int::from(-3));
        assert_eq!(Int::from(5) >> 1u64, Int::from(2));
    }

    #[test]
    fn canonical_form() {
        let d = Dyadic::new(Int::from(12), 0);
        assert_eq!(d.mantissa(), &Int::from(3));
        assert_eq!(d.exponent(), 2);
        assert_eq!(Dyadic::new(Int::from(0), 17), Dyadic::zero());
    }

    #[test]
    fn exact_arith() {
        let a = Dyadic::from_int(3).mul_pow2(-1); // 1.5
        let b = Dyadic::from_int(5).mul_pow2(-2); // 1.25
        assert_eq!(a.add(&b).to_rat(), rat(11) / rat(4));
        assert_eq!(a.sub(&b).to_rat(), rat(1) / rat(4));
        assert_eq!(a.mul(&b).to_rat(), rat(15) / rat(8));
    }

    #[test]
    fn directed_rounding() {
        // 1/3 is not dyadic: Down < 1/3 < Up, both within 2^-40 of it.
        let third = rat(1) / rat(3);
        let lo = Dyadic::from_rat(&third, 42, Round::Down);
        let hi = Dyadic::from_rat(&third, 42, Round::Up);
        assert!(lo.to_rat() < third && third < hi.to_rat());
        assert!((hi.sub(&lo)).to_rat() < Rat::new(Int::from(1), Int::from(1u64) << 40));
    }

    #[test]
    fn directed_div_brackets_quotient() {
        let a = Dyadic::from_int(10);
        let b = Dyadic::from_int(7);
        let lo = a.div(&b, 30, Round::Down);
        let hi = a.div(&b, 30, Round::Up);
        let q = rat(10) / rat(7);
        assert!(lo.to_rat() <= q && q <= hi.to_rat());
        assert!(lo < hi);
    }

    #[test]
    fn sqrt_brackets() {
        let two = Dyadic::from_int(2);
        let lo = two.sqrt(80, Round::Down);
        let hi = two.sqrt(80, Round::Up);
        assert!(lo.mul(&lo).to_rat() <= rat(2));
        assert!(hi.mul(&hi).to_rat() >= rat(2));
        let four = Dyadic::from_int(4);
        assert_eq!(four.sqrt(20, Round::Down), Dyadic::from_int(2));
        assert_eq!(four.sqrt(20, Round::Up), Dyadic::from_int(2));
    }

    #[test]
    fn ordering() {
        let a = Dyadic::from_int(1).mul_pow2(-1);
        let b = Dyadic::from_int(3).mul_pow2(-2);
        assert!(a < b);
        assert!(b.neg() < a);
        assert_eq!(a.cmp(&a.clone()), Ordering::Equal);
    }

    #[test]
    fn f64_round_trip() {
        for x in [0.0, 1.0, -1.5, 0.1, 1e-300, -3.25e10] {
            let d = Dyadic::from_f64(x);
            assert_eq!(d.to_f64(), x);
        }
    }
}
