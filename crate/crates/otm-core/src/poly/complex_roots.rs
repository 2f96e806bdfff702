//! Certified high-precision complex roots.
//!
//! Roots are approximated by a simultaneous Aberth-Ehrlich iteration at
//! a working precision (doubled on stagnation) and then certified a
//! posteriori: for any point `z`, the disk of radius `n |f(z)/f'(z)|`
//! around `z` contains at least one root of `f`. Once the `n` disks are
//! pairwise disjoint they each contain exactly one root, and a disk
//! centered on the real axis of a conjugate-symmetric disk family must
//! contain a real root.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Float;

use crate::dyadic::{Dyadic, Round};
use crate::interval::ComplexBall;
use crate::poly::{RationalPoly, SturmChain};
use crate::{Error, Result};

/// Output of [`complex_roots`]: all `n` roots as certified disks.
///
/// Ordering: the real roots first, increasing; then one conjugate pair
/// at a time, upper root (positive imaginary midpoint) immediately
/// followed by its mirror, pairs sorted by increasing midpoint argument.
#[derive(Clone, Debug)]
pub struct CertifiedRoots {
    pub roots: Vec<ComplexBall>,
    pub real_count: usize,
    /// Indices `(upper, lower)` of matched conjugate pairs.
    pub pairs: Vec<(usize, usize)>,
    pub precision_bits: u32,
}

impl CertifiedRoots {
    /// The upper-half-plane representatives, in output order.
    pub fn upper_roots(&self) -> Vec<&ComplexBall> {
        self.pairs.iter().map(|&(u, _)| &self.roots[u]).collect()
    }
}

/// Internal complex number over dyadic floats, rounded at `prec`.
#[derive(Clone, Debug)]
struct Cx {
    re: Dyadic,
    im: Dyadic,
}

impl Cx {
    fn zero() -> Self {
        Cx {
            re: Dyadic::zero(),
            im: Dyadic::zero(),
        }
    }

    fn add(&self, o: &Cx) -> Cx {
        Cx {
            re: self.re.add(&o.re),
            im: self.im.add(&o.im),
        }
    }

    fn sub(&self, o: &Cx) -> Cx {
        Cx {
            re: self.re.sub(&o.re),
            im: self.im.sub(&o.im),
        }
    }

    fn mul(&self, o: &Cx, prec: u32) -> Cx {
        Cx {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)).round(prec, Round::Down),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)).round(prec, Round::Down),
        }
    }

    fn abs_sqr(&self) -> Dyadic {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    fn inv(&self, prec: u32) -> Option<Cx> {
        let n = self.abs_sqr();
        if n.is_zero() {
            return None;
        }
        Some(Cx {
            re: self.re.div(&n, prec, Round::Down),
            im: self.im.neg().div(&n, prec, Round::Down),
        })
    }

    fn div(&self, o: &Cx, prec: u32) -> Option<Cx> {
        Some(self.mul(&o.inv(prec)?, prec))
    }

    fn conj(&self) -> Cx {
        Cx {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    fn round(&self, prec: u32) -> Cx {
        Cx {
            re: self.re.round(prec, Round::Down),
            im: self.im.round(prec, Round::Down),
        }
    }
}

fn eval_cx(coeffs: &[Cx], z: &Cx, prec: u32) -> Cx {
    let mut acc = Cx::zero();
    for c in coeffs.iter().rev() {
        acc = acc.mul(z, prec).add(c).round(prec);
    }
    acc
}

/// Find all complex roots of a squarefree polynomial with certified
/// inclusion radii at most `2^-precision_bits`.
pub fn complex_roots(f: &RationalPoly, precision_bits: u32) -> Result<CertifiedRoots> {
    if precision_bits < 64 {
        return Err(Error::Precondition(
            "complex root precision must be at least 64 bits".into(),
        ));
    }
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    if n == 0 {
        return Err(Error::Precondition("constant polynomial has no roots".into()));
    }
    if !f.is_squarefree() {
        return Err(Error::Precondition(
            "complex root isolation requires a squarefree polynomial".into(),
        ));
    }

    let real_count = SturmChain::new(f).count_real_roots();

    if n == 1 {
        // Exact rational root.
        let r = -(f.coeff(0) / f.coeff(1));
        let ball = ComplexBall::from_rat(&r, precision_bits + 8);
        return Ok(CertifiedRoots {
            roots: vec![ball],
            real_count: 1,
            pairs: vec![],
            precision_bits,
        });
    }

    let fd = f.derivative();
    let mut wp = 2 * precision_bits + 64;
    let wp_cap = 16 * precision_bits + 4096;
    let mut zs = initial_guesses(f, n, wp);
    let mut iterations_total = 0u32;

    for _attempt in 0..8 {
        match aberth_iterate(f, &fd, &mut zs, n, wp, precision_bits, &mut iterations_total) {
            Ok(()) => {}
            Err(_) => {
                wp = (wp * 2).min(wp_cap);
                continue;
            }
        }
        if let Some(result) = symmetrize_and_certify(f, &fd, &zs, n, real_count, precision_bits, wp)
        {
            return Ok(result);
        }
        // Certification failed: iterate further at doubled precision.
        if wp >= wp_cap {
            break;
        }
        wp = (wp * 2).min(wp_cap);
    }
    Err(Error::NonConvergence {
        iterations: iterations_total,
        precision_bits: wp,
    })
}

fn initial_guesses(f: &RationalPoly, n: usize, wp: u32) -> Vec<Cx> {
    let radius = {
        let b = Dyadic::from_rat(&f.cauchy_bound(), 53, Round::Up).to_f64();
        (b * 0.7).min(1e100).max(1e-3)
    };
    (0..n)
        .map(|k| {
            let theta = 2.0 * core::f64::consts::PI * (k as f64) / (n as f64) + 0.4 / (n as f64);
            let re = radius * Float::cos(theta);
            let im = radius * Float::sin(theta);
            Cx {
                re: Dyadic::from_f64(re).round(wp, Round::Down),
                im: Dyadic::from_f64(im).round(wp, Round::Down),
            }
        })
        .collect()
}

fn aberth_iterate(
    f: &RationalPoly,
    fd: &RationalPoly,
    zs: &mut [Cx],
    n: usize,
    wp: u32,
    precision_bits: u32,
    iterations_total: &mut u32,
) -> Result<()> {
    let to_cx = |p: &RationalPoly| -> Vec<Cx> {
        p.coeffs()
            .iter()
            .map(|c| Cx {
                re: Dyadic::from_rat(c, wp, Round::Down),
                im: Dyadic::zero(),
            })
            .collect()
    };
    let fc = to_cx(f);
    let fdc = to_cx(fd);

    // Stop once corrections are far below the certification target.
    let thresh_sq = Dyadic::pow2(-2 * (precision_bits as i64 + 16));
    let max_iters = 64 + 16 * wp;
    let mut best: Option<Dyadic> = None;
    let mut stagnant = 0u32;

    for it in 0..max_iters {
        *iterations_total += 1;
        let mut max_w_sq = Dyadic::zero();
        for i in 0..n {
            let pz = eval_cx(&fc, &zs[i], wp);
            if pz.abs_sqr().is_zero() {
                continue; // sitting exactly on a root
            }
            let pdz = eval_cx(&fdc, &zs[i], wp);
            let newton = match pz.div(&pdz, wp) {
                Some(v) => v,
                None => {
                    // Derivative hit: nudge and retry next sweep.
                    zs[i].re = zs[i].re.add(&Dyadic::pow2(-(it as i64 % 40) - 2));
                    continue;
                }
            };
            let mut s = Cx::zero();
            let mut collision = false;
            for j in 0..n {
                if j == i {
                    continue;
                }
                let d = zs[i].sub(&zs[j]);
                match d.inv(wp) {
                    Some(inv) => s = s.add(&inv).round(wp),
                    None => {
                        collision = true;
                        break;
                    }
                }
            }
            if collision {
                zs[i].im = zs[i].im.add(&Dyadic::pow2(-(it as i64 % 40) - 2));
                continue;
            }
            let denom = Cx {
                re: Dyadic::one(),
                im: Dyadic::zero(),
            }
            .sub(&newton.mul(&s, wp));
            let w = match newton.div(&denom, wp) {
                Some(v) => v,
                None => newton,
            };
            zs[i] = zs[i].sub(&w).round(wp);
            let wsq = w.abs_sqr();
            if wsq > max_w_sq {
                max_w_sq = wsq;
            }
        }
        if max_w_sq <= thresh_sq {
            return Ok(());
        }
        match &best {
            Some(b) if max_w_sq >= *b => {
                stagnant += 1;
                if stagnant > 24 {
                    return Err(Error::NonConvergence {
                        iterations: it,
                        precision_bits: wp,
                    });
                }
            }
            _ => {
                best = Some(max_w_sq);
                stagnant = 0;
            }
        }
    }
    Err(Error::NonConvergence {
        iterations: max_iters,
        precision_bits: wp,
    })
}

/// Enforce conjugate symmetry on the approximations, then certify.
fn symmetrize_and_certify(
    f: &RationalPoly,
    fd: &RationalPoly,
    zs: &[Cx],
    n: usize,
    real_count: usize,
    precision_bits: u32,
    wp: u32,
) -> Option<CertifiedRoots> {
    let mut pts: Vec<Cx> = zs.to_vec();
    let mut matched = vec![usize::MAX; n];
    let mut used = vec![false; n];
    for i in 0..n {
        if used[i] {
            continue;
        }
        let ci = pts[i].conj();
        let mut best = i;
        let mut best_d = ci.sub(&pts[i]).abs_sqr();
        for (j, p) in pts.iter().enumerate() {
            if used[j] || j == i {
                continue;
            }
            let d = ci.sub(p).abs_sqr();
            if d < best_d {
                best_d = d;
                best = j;
            }
        }
        if best == i {
            pts[i].im = Dyadic::zero();
            matched[i] = i;
            used[i] = true;
        } else {
            pts[best] = pts[i].conj();
            matched[i] = best;
            matched[best] = i;
            used[i] = true;
            used[best] = true;
        }
    }

    let on_axis = pts.iter().filter(|p| p.im.is_zero()).count();
    if on_axis != real_count {
        return None;
    }

    // Certified inclusion radius n |f(z)| / |f'(z)| at each exact midpoint.
    let cp = wp + 16;
    let target = Dyadic::pow2(-(precision_bits as i64));
    let mut rads = vec![Dyadic::zero(); n];
    for i in 0..n {
        if matched[i] < i {
            rads[i] = rads[matched[i]].clone(); // conjugate: same bound
            continue;
        }
        let z = ComplexBall::exact(pts[i].re.clone(), pts[i].im.clone());
        let fz_hi = z.eval_rat_poly(f.coeffs(), cp).abs_interval(cp).hi().clone();
        let fdz_lo = z.eval_rat_poly(fd.coeffs(), cp).abs_interval(cp).lo().clone();
        if fdz_lo.signum() <= 0 {
            return None;
        }
        let r = fz_hi
            .mul(&Dyadic::from_int(n as i64))
            .div(&fdz_lo, 32, Round::Up);
        if r > target {
            return None;
        }
        rads[i] = r;
    }

    let balls: Vec<ComplexBall> = (0..n)
        .map(|i| ComplexBall::new(pts[i].re.clone(), pts[i].im.clone(), rads[i].clone()))
        .collect();

    for i in 0..n {
        for j in (i + 1)..n {
            if !balls[i].disjoint(&balls[j]) {
                return None;
            }
        }
        // Off-axis disks must be strictly off-axis.
        if !balls[i].im().is_zero() && balls[i].im().abs() <= rads[i] {
            return None;
        }
    }

    // Order: reals increasing, then conjugate pairs by midpoint argument.
    let mut real_idx: Vec<usize> = (0..n).filter(|&i| balls[i].im().is_zero()).collect();
    real_idx.sort_by(|&a, &b| balls[a].re().cmp(balls[b].re()));
    let mut upper_idx: Vec<usize> = (0..n)
        .filter(|&i| balls[i].im().signum() > 0)
        .collect();
    upper_idx.sort_by(|&a, &b| cmp_argument(&balls[a], &balls[b]));

    let mut roots = Vec::with_capacity(n);
    let mut pairs = Vec::with_capacity(upper_idx.len());
    for &i in &real_idx {
        roots.push(balls[i].clone());
    }
    for &i in &upper_idx {
        let u = roots.len();
        roots.push(balls[i].clone());
        roots.push(balls[matched[i]].clone());
        pairs.push((u, u + 1));
    }

    Some(CertifiedRoots {
        roots,
        real_count,
        pairs,
        precision_bits,
    })
}

/// Compare upper-half-plane midpoints by argument in (0, pi), with the
/// squared modulus as an exact tie-break. Both comparisons are exact on
/// the dyadic midpoints, so the order is total and deterministic.
fn cmp_argument(a: &ComplexBall, b: &ComplexBall) -> core::cmp::Ordering {
    let cross = a.re().mul(b.im()).sub(&a.im().mul(b.re()));
    match cross.signum() {
        s if s > 0 => core::cmp::Ordering::Less,
        s if s < 0 => core::cmp::Ordering::Greater,
        _ => {
            let na = a.re().mul(a.re()).add(&a.im().mul(a.im()));
            let nb = b.re().mul(b.re()).add(&b.im().mul(b.im()));
            na.cmp(&nb)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::RealInterval;
    use crate::rat;

    fn p(coeffs: &[i64]) -> RationalPoly {
        RationalPoly::from_int_coeffs(coeffs)
    }

    fn assert_norm_sqr_near(ball: &ComplexBall, reference: &str) {
        let n2 = ball.norm_sqr(96);
        crate::testutil::assert_near(&n2, reference, -60);
    }

    #[test]
    fn quadratic_imaginary_units() {
        let roots = complex_roots(&p(&[1, 0, 1]), 64).unwrap();
        assert_eq!(roots.real_count, 0);
        assert_eq!(roots.roots.len(), 2);
        assert_eq!(roots.pairs.len(), 1);
        let (u, l) = roots.pairs[0];
        let upper = &roots.roots[u];
        assert!(upper.rad() <= &Dyadic::pow2(-64));
        // i = (0, 1)
        assert!(upper.re_interval().contains_zero());
        assert!(upper
            .im_interval()
            .contains_rat(&rat(1)));
        assert!(roots.roots[l].im_interval().contains_rat(&rat(-1)));
    }

    #[test]
    fn cubic_two_moduli() {
        let roots = complex_roots(&p(&[-2, 0, 0, 1]), 96).unwrap();
        assert_eq!(roots.real_count, 1);
        assert_eq!(roots.pairs.len(), 1);
        // every root has |z|^2 = 2^(2/3)
        for b in &roots.roots {
            assert_norm_sqr_near(b, "1.5874010519681994747517056392723");
        }
        // the real one is 2^(1/3)
        let real = &roots.roots[0];
        assert!(real.im().is_zero());
        crate::testutil::assert_near(
            &real.re_interval(),
            "1.2599210498948731647672106072782",
            -90,
        );
    }

    #[test]
    fn sextic_two_all_same_modulus() {
        let roots = complex_roots(&p(&[-2, 0, 0, 0, 0, 0, 1]), 128).unwrap();
        assert_eq!(roots.real_count, 2);
        assert_eq!(roots.pairs.len(), 2);
        for b in &roots.roots {
            // |z|^2 = 2^(1/3)
            assert_norm_sqr_near(b, "1.2599210498948731647672106072782");
            assert!(b.rad() <= &Dyadic::pow2(-128));
        }
        // pairs ordered by increasing argument: pi/3 then 2pi/3
        let u0 = &roots.roots[roots.pairs[0].0];
        let u1 = &roots.roots[roots.pairs[1].0];
        assert!(u0.re().signum() > 0);
        assert!(u1.re().signum() < 0);
    }

    #[test]
    fn rational_roots_exactly_on_grid() {
        let roots = complex_roots(&p(&[-1, 0, 1]), 64).unwrap();
        assert_eq!(roots.real_count, 2);
        assert!(roots.roots[0].re_interval().contains_rat(&rat(-1)));
        assert!(roots.roots[1].re_interval().contains_rat(&rat(1)));
    }

    #[test]
    fn rejects_non_squarefree() {
        let f = p(&[-1, 1]).mul(&p(&[-1, 1]));
        assert!(complex_roots(&f, 64).is_err());
    }

    #[test]
    fn quintic_mixed_signature() {
        // X^5 - X - 1: one real root, two conjugate pairs.
        let roots = complex_roots(&p(&[-1, -1, 0, 0, 0, 1]), 96).unwrap();
        assert_eq!(roots.real_count, 1);
        assert_eq!(roots.pairs.len(), 2);
        crate::testutil::assert_near(
            &roots.roots[0].re_interval(),
            "1.1673039782614186842560458998548",
            -90,
        );
    }
}
