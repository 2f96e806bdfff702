//! Sturm chains and certified real-root isolation.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Signed;

use crate::interval::RealInterval;
use crate::poly::RationalPoly;
use crate::Rat;

/// Sturm sequence of a squarefree polynomial. Sign-variation counts at
/// two points give the exact number of real roots between them.
pub struct SturmChain {
    chain: Vec<RationalPoly>,
}

impl SturmChain {
    /// Build the Sturm chain of `f`. A non-squarefree input is replaced
    /// by its squarefree part, which has the same real roots.
    ///
    /// Panics on the zero polynomial.
    pub fn new(f: &RationalPoly) -> Self {
        assert!(!f.is_zero(), "Sturm chain of the zero polynomial");
        let f = f.squarefree_part();
        let fp = f.derivative();
        let mut chain = vec![f];
        if !fp.is_zero() {
            chain.push(normalize_abs(fp));
            loop {
                let n = chain.len();
                let r = chain[n - 2].rem(&chain[n - 1]).expect("nonzero divisor");
                if r.is_zero() {
                    break;
                }
                chain.push(normalize_abs(r.neg()));
            }
        }
        SturmChain { chain }
    }

    pub fn polynomial(&self) -> &RationalPoly {
        &self.chain[0]
    }

    fn sign_variations_at(&self, x: &Rat) -> usize {
        let mut prev = 0i32;
        let mut count = 0;
        for p in &self.chain {
            let s = p.sign_at(x);
            if s != 0 {
                if prev != 0 && s != prev {
                    count += 1;
                }
                prev = s;
            }
        }
        count
    }

    /// Number of real roots in the half-open interval `(a, b]`.
    pub fn count_roots_in(&self, a: &Rat, b: &Rat) -> usize {
        assert!(a <= b);
        self.sign_variations_at(a) - self.sign_variations_at(b)
    }

    /// Total number of real roots, counted over `(-B, B]` for the Cauchy
    /// bound `B`.
    pub fn count_real_roots(&self) -> usize {
        let b = self.polynomial().cauchy_bound();
        self.count_roots_in(&(-b.clone()), &b)
    }
}

/// Divide by the absolute value of the leading coefficient: tames
/// coefficient growth without touching any sign evaluation.
fn normalize_abs(p: RationalPoly) -> RationalPoly {
    match p.leading_coeff() {
        None => p,
        Some(lc) => {
            let s = lc.abs().recip();
            p.mul_scalar(&s)
        }
    }
}

/// Certified isolating interval: `poly` has exactly one real root in the
/// open interval `(lo, hi)`, and `poly(lo)` and `poly(hi)` have strictly
/// opposite signs. Refinement bisects, producing a new interval.
#[derive(Clone)]
pub struct IsolatingInterval {
    poly: Arc<RationalPoly>,
    lo: Rat,
    hi: Rat,
}

impl IsolatingInterval {
    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn poly(&self) -> &RationalPoly {
        &self.poly
    }

    /// One bisection step; returns a strictly narrower interval with the
    /// same invariants.
    pub fn refine(&self) -> Self {
        let mid = (&self.lo + &self.hi) / crate::rat(2);
        let s_mid = self.poly.sign_at(&mid);
        if s_mid == 0 {
            // The midpoint is the root itself; shrink symmetrically until
            // the endpoints bracket it with opposite signs.
            let mut eps = self.width() / crate::rat(8);
            loop {
                let lo = &mid - &eps;
                let hi = &mid + &eps;
                if self.poly.sign_at(&lo) * self.poly.sign_at(&hi) < 0 {
                    return IsolatingInterval {
                        poly: self.poly.clone(),
                        lo,
                        hi,
                    };
                }
                eps /= crate::rat(2);
            }
        }
        let s_lo = self.poly.sign_at(&self.lo);
        if s_mid != s_lo {
            IsolatingInterval {
                poly: self.poly.clone(),
                lo: self.lo.clone(),
                hi: mid,
            }
        } else {
            IsolatingInterval {
                poly: self.poly.clone(),
                lo: mid,
                hi: self.hi.clone(),
            }
        }
    }

    /// Refine until the width is at most `2^-bits`.
    pub fn refine_to(&self, bits: u32) -> Self {
        let target = Rat::new(crate::int(1), crate::int(1) << bits);
        let mut cur = self.clone();
        while cur.width() > target {
            cur = cur.refine();
        }
        cur
    }

    /// Outward dyadic enclosure of the root.
    pub fn to_real_interval(&self, prec: u32) -> RealInterval {
        RealInterval::from_rats(&self.lo, &self.hi, prec)
    }

    /// Does the open interval contain the given rational?
    pub fn contains(&self, q: &Rat) -> bool {
        self.lo < *q && *q < self.hi
    }
}

impl fmt::Debug for IsolatingInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "IsolatingInterval({} .. {})",
            crate::dyadic::Dyadic::from_rat(&self.lo, 30, crate::dyadic::Round::Down).to_f64(),
            crate::dyadic::Dyadic::from_rat(&self.hi, 30, crate::dyadic::Round::Up).to_f64()
        )
    }
}

/// Isolate all real roots of `f` (its squarefree part) into pairwise
/// disjoint certified intervals, ordered increasingly.
pub fn isolate_real_roots(f: &RationalPoly) -> Vec<IsolatingInterval> {
    assert!(!f.is_zero(), "cannot isolate roots of the zero polynomial");
    let chain = SturmChain::new(f);
    let sf = Arc::new(chain.polynomial().clone());
    if sf.degree() == Some(0) {
        return vec![];
    }
    let bound = sf.cauchy_bound();
    let mut half_open: Vec<(Rat, Rat)> = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((a, b)) = stack.pop() {
        match chain.count_roots_in(&a, &b) {
            0 => {}
            1 => half_open.push((a, b)),
            _ => {
                let mid = (&a + &b) / crate::rat(2);
                stack.push((a, mid.clone()));
                stack.push((mid, b));
            }
        }
    }
    half_open.sort_by(|x, y| x.0.cmp(&y.0));

    let mut out = Vec::with_capacity(half_open.len());
    for (a, b) in half_open {
        out.push(close_up(&chain, &sf, a, b));
    }
    debug_assert!(out
        .windows(2)
        .all(|w| w[0].hi() <= w[1].lo() || w[0].hi() < w[1].hi()));
    out
}

/// Convert a half-open Sturm interval `(a, b]` holding exactly one root
/// into a closed sign-isolating interval.
fn close_up(chain: &SturmChain, sf: &Arc<RationalPoly>, a: Rat, b: Rat) -> IsolatingInterval {
    let s_b = sf.sign_at(&b);
    if s_b == 0 {
        // The root is exactly b. Bracket it symmetrically, keeping the
        // bracket inside a region with no other root.
        let mut eps = (&b - &a) / crate::rat(2);
        loop {
            let lo = &b - &eps;
            let hi = &b + &eps;
            if sf.sign_at(&lo) * sf.sign_at(&hi) < 0 && chain.count_roots_in(&lo, &hi) == 1 {
                return IsolatingInterval {
                    poly: sf.clone(),
                    lo,
                    hi,
                };
            }
            eps /= crate::rat(2);
        }
    }
    let mut lo = a;
    let mut s_lo = sf.sign_at(&lo);
    // If a is itself a root (of an adjacent interval) or has the same
    // sign as b, creep right: the single root stays ahead of us.
    while s_lo == 0 || s_lo == s_b {
        lo = (&lo + &b) / crate::rat(2);
        s_lo = sf.sign_at(&lo);
    }
    IsolatingInterval {
        poly: sf.clone(),
        lo,
        hi: b,
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
    fn counts_match_known_fields() {
        // X^3 - 2: one real root
        let c = SturmChain::new(&p(&[-2, 0, 0, 1]));
        assert_eq!(c.count_roots_in(&rat(-10), &rat(10)), 1);
        // X^2 + 1: none
        let c = SturmChain::new(&p(&[1, 0, 1]));
        assert_eq!(c.count_roots_in(&rat(-10), &rat(10)), 0);
        // X^6 - 2: two
        let c = SturmChain::new(&p(&[-2, 0, 0, 0, 0, 0, 1]));
        assert_eq!(c.count_roots_in(&rat(-10), &rat(10)), 2);
    }

    #[test]
    fn isolation_brackets_cbrt2() {
        let roots = isolate_real_roots(&p(&[-2, 0, 0, 1]));
        assert_eq!(roots.len(), 1);
        let r = roots[0].refine_to(64);
        // 2^(1/3) = 1.2599210498948731647672106072782...
        let target = crate::testutil::dec("1.2599210498948731647672106072782");
        assert!(r.lo() < &target && &target < r.hi());
        assert!(r.width() <= Rat::new(crate::int(1), crate::int(1) << 64));
    }

    #[test]
    fn isolation_handles_rational_roots() {
        // X^2 - 1: roots exactly at the bisection grid
        let roots = isolate_real_roots(&p(&[-1, 0, 1]));
        assert_eq!(roots.len(), 2);
        assert!(roots[0].contains(&rat(-1)));
        assert!(roots[1].contains(&rat(1)));
        for r in &roots {
            let fine = r.refine_to(20);
            assert!(fine.poly().sign_at(fine.lo()) * fine.poly().sign_at(fine.hi()) < 0);
        }
    }

    #[test]
    fn isolation_sixth_root() {
        let roots = isolate_real_roots(&p(&[-2, 0, 0, 0, 0, 0, 1]));
        assert_eq!(roots.len(), 2);
        // +- 2^(1/6) = +-1.1224620483093729814335330496792...
        let target = crate::testutil::dec("1.1224620483093729814335330496792");
        let plus = roots[1].refine_to(64);
        assert!(plus.lo() < &target && &target < plus.hi());
        let minus = roots[0].refine_to(64);
        let neg = -target;
        assert!(minus.lo() < &neg && &neg < minus.hi());
    }

    #[test]
    fn isolation_count_matches_sturm() {
        for coeffs in [
            &[-2, 0, 0, 1][..],
            &[1, 0, 1],
            &[-2, 0, 0, 0, 0, 0, 1],
            &[-1, -1, 0, 0, 0, 1],
            &[6, -5, -2, 1],
        ] {
            let f = p(coeffs);
            let chain = SturmChain::new(&f);
            assert_eq!(isolate_real_roots(&f).len(), chain.count_real_roots());
        }
    }

    #[test]
    fn refinement_is_monotone() {
        let roots = isolate_real_roots(&p(&[-2, 0, 0, 1]));
        let r0 = roots[0].clone();
        let r1 = r0.refine();
        assert!(r1.width() < r0.width());
        assert!(r0.lo() <= r1.lo() && r1.hi() <= r0.hi());
    }
}
