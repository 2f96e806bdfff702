//! Irreducibility evidence for monic integer polynomials.
//!
//! Proves irreducibility when it can (Eisenstein, an irreducible
//! reduction mod p, or an empty intersection of mod-p factor degree
//! patterns), returns an exact factor when reducibility is detected
//! (rational root, square factor), and honestly answers `Unknown`
//! otherwise. An `Unknown` can be upgraded to `Reducible` later by a
//! failed inversion in the field layer.

use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::RationalPoly;
use crate::{Error, Int, Result};

/// Outcome of the irreducibility check.
#[derive(Clone, Debug, PartialEq)]
pub enum IrreducibilityStatus {
    Irreducible(IrreducibleEvidence),
    /// Carries an exact nontrivial factor.
    Reducible(RationalPoly),
    Unknown,
}

impl IrreducibilityStatus {
    pub fn is_reducible(&self) -> bool {
        matches!(self, IrreducibilityStatus::Reducible(_))
    }

    pub fn is_proven(&self) -> bool {
        matches!(self, IrreducibilityStatus::Irreducible(_))
    }
}

/// How irreducibility was proven.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IrreducibleEvidence {
    DegreeOne,
    Eisenstein { prime: u64 },
    IrreducibleModP { prime: u64 },
    /// No proper factor degree survives the intersection of the mod-p
    /// factorization patterns over the listed primes.
    DegreePattern { primes: Vec<u64> },
}

const TRIAL_DIVISION_BOUND: u64 = 100_000;
const PATTERN_PRIMES: usize = 10;

/// Decide irreducibility over Q for a monic integer polynomial.
pub fn irreducibility_status(f: &RationalPoly) -> Result<IrreducibilityStatus> {
    let coeffs = f
        .to_int_coeffs()
        .filter(|_| f.is_monic())
        .ok_or_else(|| Error::Precondition("irreducibility requires a monic integer polynomial".into()))?;
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    if n == 0 {
        return Err(Error::Precondition(
            "irreducibility of a constant is undefined".into(),
        ));
    }
    if n == 1 {
        return Ok(IrreducibilityStatus::Irreducible(IrreducibleEvidence::DegreeOne));
    }

    if coeffs[0].is_zero() {
        return Ok(IrreducibilityStatus::Reducible(RationalPoly::x()));
    }

    // Square factors come with an exact witness.
    let g = f.gcd(&f.derivative());
    if g.degree().unwrap_or(0) > 0 {
        return Ok(IrreducibilityStatus::Reducible(g));
    }

    // Rational roots of a monic integer polynomial are integer divisors
    // of the constant term.
    if let Some(r) = integer_root(f, &coeffs[0]) {
        let factor = RationalPoly::from_bigint_coeffs(&[-r, Int::one()]);
        return Ok(IrreducibilityStatus::Reducible(factor));
    }

    if let Some(p) = eisenstein_prime(&coeffs) {
        return Ok(IrreducibilityStatus::Irreducible(IrreducibleEvidence::Eisenstein {
            prime: p,
        }));
    }

    degree_pattern_check(&coeffs, n)
}

fn integer_root(f: &RationalPoly, a0: &Int) -> Option<Int> {
    let mut candidates = Vec::new();
    let a0_abs = a0.abs();
    let mut d = Int::one();
    let bound = Int::from(TRIAL_DIVISION_BOUND);
    while &d * &d <= a0_abs && d <= bound {
        if a0_abs.is_multiple_of(&d) {
            candidates.push(d.clone());
            candidates.push(&a0_abs / &d);
        }
        d += 1;
    }
    candidates.push(a0_abs);
    for c in candidates {
        for r in [c.clone(), -c] {
            if f.eval(&crate::Rat::from_integer(r.clone())).is_zero() {
                return Some(r);
            }
        }
    }
    None
}

fn eisenstein_prime(coeffs: &[Int]) -> Option<u64> {
    let n = coeffs.len() - 1;
    // Any Eisenstein prime divides every lower coefficient, hence their gcd.
    let mut g = Int::zero();
    for c in &coeffs[..n] {
        g = g.gcd(c);
    }
    if g <= Int::one() {
        return None;
    }
    for p in small_prime_factors(&g) {
        let pp = Int::from(p) * Int::from(p);
        if !coeffs[0].is_multiple_of(&pp) {
            return Some(p);
        }
    }
    None
}

fn small_prime_factors(n: &Int) -> Vec<u64> {
    let mut out = Vec::new();
    let mut m = n.abs();
    let mut p = 2u64;
    while p <= TRIAL_DIVISION_BOUND {
        let pi = Int::from(p);
        if &pi * &pi > m {
            break;
        }
        if m.is_multiple_of(&pi) {
            out.push(p);
            while m.is_multiple_of(&pi) {
                m /= &pi;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > Int::one() {
        if let Some(v) = m.to_u64() {
            out.push(v);
        }
    }
    out
}

fn degree_pattern_check(coeffs: &[Int], n: usize) -> Result<IrreducibilityStatus> {
    debug_assert!(n <= 64, "degree pattern bitset limited to degree 64");
    let mut possible: u128 = !0; // bit d set <=> a degree-d rational factor is still possible
    let mut used = Vec::new();
    let mut p = 3u64;
    while used.len() < PATTERN_PRIMES && p < 10_000 {
        if is_small_prime(p) {
            if let Some(pattern) = modp_degree_pattern(coeffs, p) {
                if pattern.len() == 1 && pattern[0] == n as u64 {
                    return Ok(IrreducibilityStatus::Irreducible(
                        IrreducibleEvidence::IrreducibleModP { prime: p },
                    ));
                }
                possible &= subset_sums(&pattern);
                used.push(p);
                // Bits strictly between 0 and n all cleared: no proper factor.
                let proper_mask: u128 = ((1u128 << n) - 2) & !1;
                if possible & proper_mask == 0 {
                    return Ok(IrreducibilityStatus::Irreducible(
                        IrreducibleEvidence::DegreePattern { primes: used },
                    ));
                }
            }
        }
        p += 2;
    }
    Ok(IrreducibilityStatus::Unknown)
}

fn subset_sums(pattern: &[u64]) -> u128 {
    let mut bits: u128 = 1;
    for &d in pattern {
        bits |= bits << d;
    }
    bits
}

fn is_small_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Degrees (with multiplicity) of the irreducible factors of `f mod p`,
/// or `None` when the reduction is not squarefree and the pattern is
/// unusable.
fn modp_degree_pattern(coeffs: &[Int], p: u64) -> Option<Vec<u64>> {
    let f: Vec<u64> = coeffs
        .iter()
        .map(|c| c.mod_floor(&Int::from(p)).to_u64().unwrap())
        .collect();
    let fp = Fp { p };
    let df = fp.derivative(&f);
    if fp.gcd(&f, &df).len() != 1 {
        return None; // not squarefree mod p
    }

    // Distinct-degree factorization.
    let mut pattern = Vec::new();
    let mut rem = f.clone();
    let mut h = vec![0, 1]; // X
    let mut d = 0u64;
    while rem.len() > 1 {
        d += 1;
        if ((rem.len() - 1) as u64) < 2 * d {
            pattern.push((rem.len() - 1) as u64);
            break;
        }
        h = fp.pow_mod(&h, p, &rem); // now X^(p^d) mod rem
        let mut hx = h.clone();
        fp.sub_x(&mut hx);
        let g = fp.gcd(&rem, &hx);
        let gd = (g.len() - 1) as u64;
        if gd > 0 {
            for _ in 0..(gd / d) {
                pattern.push(d);
            }
            rem = fp.div_exact(&rem, &g);
            h = fp.rem(&h, &rem);
        }
    }
    Some(pattern)
}

/// Tiny F_p[X] arithmetic on dense coefficient vectors (constant first,
/// trimmed, monic where stated). `p` is a small odd prime.
struct Fp {
    p: u64,
}

impl Fp {
    fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    fn derivative(&self, f: &[u64]) -> Vec<u64> {
        if f.len() <= 1 {
            return vec![];
        }
        let mut out: Vec<u64> = f
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| (c * (i as u64 % self.p)) % self.p)
            .collect();
        Self::trim(&mut out);
        out
    }

    fn inv_mod(&self, a: u64) -> u64 {
        // Fermat: a^(p-2) mod p
        let mut result = 1u64;
        let mut base = a % self.p;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        result
    }

    fn rem(&self, a: &[u64], m: &[u64]) -> Vec<u64> {
        let mut r: Vec<u64> = a.to_vec();
        Self::trim(&mut r);
        let dm = m.len() - 1;
        let lc_inv = self.inv_mod(m[dm]);
        while r.len() > dm {
            let k = r.len() - 1 - dm;
            let c = r[r.len() - 1] * lc_inv % self.p;
            if c != 0 {
                for i in 0..=dm {
                    let sub = c * m[i] % self.p;
                    r[k + i] = (r[k + i] + self.p - sub) % self.p;
                }
            }
            Self::trim(&mut r);
            if r.len() <= dm {
                break;
            }
        }
        r
    }

    fn mul_mod(&self, a: &[u64], b: &[u64], m: &[u64]) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        self.rem(&prod, m)
    }

    fn pow_mod(&self, base: &[u64], mut e: u64, m: &[u64]) -> Vec<u64> {
        let mut result = vec![1u64];
        let mut b = self.rem(base, m);
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul_mod(&result, &b, m);
            }
            b = self.mul_mod(&b, &b, m);
            e >>= 1;
        }
        result
    }

    fn gcd(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        Self::trim(&mut x);
        Self::trim(&mut y);
        while !y.is_empty() {
            let r = self.rem(&x, &y);
            x = y;
            y = r;
        }
        // make monic
        if let Some(&lc) = x.last() {
            if lc != 1 {
                let inv = self.inv_mod(lc);
                for c in &mut x {
                    *c = *c * inv % self.p;
                }
            }
        }
        x
    }

    fn div_exact(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        // Long division, remainder known to vanish.
        let mut r = a.to_vec();
        Self::trim(&mut r);
        let db = b.len() - 1;
        let lc_inv = self.inv_mod(b[db]);
        let mut q = vec![0u64; r.len().saturating_sub(db)];
        while r.len() > db {
            let k = r.len() - 1 - db;
            let c = r[r.len() - 1] * lc_inv % self.p;
            q[k] = c;
            for i in 0..=db {
                let sub = c * b[i] % self.p;
                r[k + i] = (r[k + i] + self.p - sub) % self.p;
            }
            Self::trim(&mut r);
        }
        debug_assert!(r.is_empty());
        Self::trim(&mut q);
        q
    }

    fn sub_x(&self, f: &mut Vec<u64>) {
        if f.len() < 2 {
            f.resize(2, 0);
        }
        f[1] = (f[1] + self.p - 1) % self.p;
        Self::trim(f);
    }
}
