//! Exact-arithmetic toolkit for Oeljeklaus-Toma (OT) manifold data.
//!
//! Given a monic integer polynomial `f` defining a number field
//! `K = Q[X]/(f)` and a list of unit generators in the order `Z[theta]`,
//! this crate validates the pair as an OT datum `X(K, U)`, decides the
//! primitivity hypothesis on the unit group, and emits either a
//! machine-checkable no-subvariety certificate or an explicit witness of
//! hypothesis failure together with candidate flat affine subspace data.
//!
//! Everything downstream of the root finder is certified: signs and
//! equalities are decided by exact rational arithmetic or by interval
//! refinement that is guaranteed to terminate, never by floating point
//! alone.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the CLI
//! live in the companion `otm-cli` crate.
//!
//! Module map:
//!
//! - [`dyadic`], [`interval`]: arbitrary-precision binary floats with
//!   directed rounding, real intervals and complex balls.
//! - [`poly`]: exact polynomial arithmetic, Sturm isolation, certified
//!   complex roots, irreducibility evidence.
//! - [`linalg`]: exact rational matrices (kernels, determinants).
//! - [`numfield`]: arithmetic in `Q[X]/(f)`, minimal polynomials,
//!   primitivity, subalgebra degrees.
//! - [`embeddings`]: certified archimedean embeddings and log vectors.
//! - [`units`]: unit verification, admissibility, OT datum assembly.
//! - [`lattice`]: LLL reduction for integer relation detection.
//! - [`certifier`]: the certification pipeline and witness extraction.
//! - [`action`]: the affine `U ⋉ H` action on `H^s × C^t`.
//! - [`builtin`]: the bundled example data.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod action;
pub mod builtin;
pub mod certifier;
pub mod dyadic;
pub mod embeddings;
pub mod interval;
pub mod lattice;
pub mod linalg;
pub mod numfield;
pub mod poly;
pub mod units;

mod error;

pub use error::{Error, Result};

/// Exact arbitrary-precision integer used throughout.
pub type Int = num_bigint::BigInt;

/// Exact rational number used throughout.
pub type Rat = num_rational::BigRational;

/// Shorthand for `Rat::from_integer(Int::from(n))`.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// Shorthand for `Int::from(n)`.
pub fn int(n: i64) -> Int {
    Int::from(n)
}

/// Numeric and search configuration shared across the pipeline.
#[derive(Clone, Debug)]
pub struct Config {
    /// Working precision for certified numerics.
    pub precision_bits: u32,
    /// Cap for automatic precision doubling on indeterminate answers.
    pub precision_cap: u32,
    /// Determinants certified below `2^tolerance_log2` in absolute value
    /// are reported indeterminate rather than nonzero.
    pub tolerance_log2: i64,
    /// Exponent box for the unit-subfield intersection scan.
    pub exponent_bound: i64,
    /// Coordinate height for subfield candidate enumeration.
    pub height_bound: i64,
    /// Word length bound for orbit and injectivity sampling.
    pub word_bound: usize,
    /// RNG seed for sampling operations; echoed in reports.
    pub seed: u64,
    /// Guard against combinatorial explosion in word enumeration.
    pub orbit_max_points: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            precision_bits: 192,
            precision_cap: 1024,
            tolerance_log2: -96,
            exponent_bound: 10,
            height_bound: 3,
            word_bound: 3,
            seed: 0,
            orbit_max_points: 4096,
        }
    }
}

impl Config {
    pub fn tolerance(&self) -> dyadic::Dyadic {
        dyadic::Dyadic::pow2(self.tolerance_log2)
    }
}

#[cfg(test)]
pub(crate) mod testutil {
    use crate::dyadic::Dyadic;
    use crate::interval::{ComplexBall, RealInterval};
    use crate::Rat;

    /// Parse a decimal literal like "-4.19990821343541018" exactly.
    pub fn dec(s: &str) -> Rat {
        let (sign, rest) = match s.strip_prefix('-') {
            Some(r) => (-1i64, r),
            None => (1, s),
        };
        let (int_part, frac_part) = match rest.split_once('.') {
            Some((a, b)) => (a, b),
            None => (rest, ""),
        };
        let digits: alloc::string::String = alloc::format!("{int_part}{frac_part}");
        let numer: crate::Int = digits.parse().expect("decimal digits");
        let denom = crate::Int::from(10u32).pow(frac_part.len() as u32);
        Rat::new(crate::Int::from(sign) * numer, denom)
    }

    /// Assert the certified interval sits within `2^tol_log2` of the
    /// reference decimal (which need not be exact itself).
    pub fn assert_near(iv: &RealInterval, reference: &str, tol_log2: i64) {
        let q = dec(reference);
        let tol = Dyadic::pow2(tol_log2).to_rat();
        let lo = iv.lo().to_rat();
        let hi = iv.hi().to_rat();
        assert!(
            lo >= &q - &tol && hi <= &q + &tol,
            "interval [{}, {}] not within 2^{} of {}",
            iv.lo(),
            iv.hi(),
            tol_log2,
            reference
        );
    }

    pub fn assert_ball_near(b: &ComplexBall, re: &str, im: &str, tol_log2: i64) {
        assert_near(&b.re_interval(), re, tol_log2);
        assert_near(&b.im_interval(), im, tol_log2);
    }
}
