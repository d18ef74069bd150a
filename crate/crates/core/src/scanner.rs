//! Wall scanning along the deformation parameters and box-bounded
//! candidate enumeration.
//!
//! The charge is affine in each scanned parameter, so a phase alignment
//! between two classes cross-multiplies two affine forms: a polynomial
//! of degree at most 2 with rational coefficients. Roots are found
//! exactly; irrational roots are reported as quadratic surds
//! `p + q sqrt(d)`, never floats.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

use crate::charge::{charge, q_form, ChargeParams};
use crate::error::{Error, Result};
use crate::par;
use crate::rational::{rat_int, Rational};
use crate::surface::{NumClass, SurfaceSpec};

/// Which parameter of the charge family is scanned.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanParameter {
    Epsilon,
    S,
}

/// Closed/open interval of parameter values.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScanRange {
    #[serde(with = "crate::rational::serde_ratio")]
    pub min: Rational,
    #[serde(with = "crate::rational::serde_ratio")]
    pub max: Rational,
    #[serde(default)]
    pub min_inclusive: bool,
    #[serde(default = "default_true")]
    pub max_inclusive: bool,
}

fn default_true() -> bool {
    true
}

impl ScanRange {
    pub fn new(min: Rational, max: Rational, min_inclusive: bool, max_inclusive: bool) -> Self {
        ScanRange {
            min,
            max,
            min_inclusive,
            max_inclusive,
        }
    }

    /// The deformation path interval `(0, 1]`.
    pub fn epsilon_default() -> Self {
        ScanRange::new(Rational::zero(), Rational::one(), false, true)
    }

    /// The scaling interval `[1, 64]`.
    pub fn s_default() -> Self {
        ScanRange::new(Rational::one(), rat_int(64), true, true)
    }

    fn validate(&self) -> Result<()> {
        let degenerate = self.min > self.max
            || (self.min == self.max && !(self.min_inclusive && self.max_inclusive));
        if degenerate {
            Err(Error::EmptyRange)
        } else {
            Ok(())
        }
    }

    fn contains(&self, v: &WallValue) -> bool {
        let lo = WallValue::from_rational(self.min.clone());
        let hi = WallValue::from_rational(self.max.clone());
        let above = match v.cmp(&lo) {
            Ordering::Greater => true,
            Ordering::Equal => self.min_inclusive,
            Ordering::Less => false,
        };
        let below = match v.cmp(&hi) {
            Ordering::Less => true,
            Ordering::Equal => self.max_inclusive,
            Ordering::Greater => false,
        };
        above && below
    }
}

/// Exact parameter value of a wall: rational, or a quadratic surd
/// `rational + coefficient * sqrt(radicand)` with a positive non-square
/// radicand.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum WallValue {
    Rational {
        #[serde(with = "crate::rational::serde_ratio")]
        value: Rational,
    },
    Surd {
        #[serde(with = "crate::rational::serde_ratio")]
        rational: Rational,
        #[serde(with = "crate::rational::serde_ratio")]
        coefficient: Rational,
        #[serde(with = "crate::rational::serde_ratio")]
        radicand: Rational,
    },
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let ns = r.numer().sqrt();
    let ds = r.denom().sqrt();
    if &(&ns * &ns) == r.numer() && &(&ds * &ds) == r.denom() {
        Some(Rational::new(ns, ds))
    } else {
        None
    }
}

impl WallValue {
    pub fn from_rational(value: Rational) -> Self {
        WallValue::Rational { value }
    }

    /// Builds `p + q sqrt(d)`, folding to a rational when possible.
    pub fn surd(p: Rational, q: Rational, d: Rational) -> Self {
        assert!(!d.is_negative(), "radicand must be nonnegative");
        if q.is_zero() || d.is_zero() {
            return WallValue::Rational { value: p };
        }
        match rational_sqrt(&d) {
            Some(root) => WallValue::Rational { value: p + q * root },
            None => WallValue::Surd {
                rational: p,
                coefficient: q,
                radicand: d,
            },
        }
    }

    /// Rational bounds `lo <= value <= hi` at the given bisection depth.
    fn bounds(&self, depth: u32) -> (Rational, Rational) {
        match self {
            WallValue::Rational { value } => (value.clone(), value.clone()),
            WallValue::Surd {
                rational,
                coefficient,
                radicand,
            } => {
                let (lo, hi) = sqrt_bounds(radicand, depth);
                if coefficient.is_positive() {
                    (rational + coefficient * lo, rational + coefficient * hi)
                } else {
                    (rational + coefficient * hi, rational + coefficient * lo)
                }
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        let (lo, hi) = self.bounds(64);
        (crate::rational::to_f64(&lo) + crate::rational::to_f64(&hi)) / 2.0
    }
}

fn sqrt_bounds(d: &Rational, depth: u32) -> (Rational, Rational) {
    debug_assert!(d.is_positive());
    let one = Rational::one();
    let (mut lo, mut hi) = if *d >= one {
        (Rational::one(), d.clone())
    } else {
        (Rational::zero(), Rational::one())
    };
    let two = rat_int(2);
    for _ in 0..depth {
        let mid = (&lo + &hi) / &two;
        if &mid * &mid <= *d {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

impl PartialEq for WallValue {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for WallValue {}

impl PartialOrd for WallValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for WallValue {
    fn cmp(&self, other: &Self) -> Ordering {
        use WallValue::*;
        match (self, other) {
            (Rational { value: a }, Rational { value: b }) => a.cmp(b),
            _ => {
                if self.exact_eq(other) {
                    return Ordering::Equal;
                }
                // Values differ: refine interval bounds until disjoint.
                let mut depth = 16;
                loop {
                    let (alo, ahi) = self.bounds(depth);
                    let (blo, bhi) = other.bounds(depth);
                    if ahi < blo {
                        return Ordering::Less;
                    }
                    if bhi < alo {
                        return Ordering::Greater;
                    }
                    depth *= 2;
                }
            }
        }
    }
}

impl WallValue {
    /// Exact equality: a surd never equals a rational (the radicand is
    /// non-square by construction), and two surds agree exactly when
    /// their rational parts and signed squared surd parts agree.
    fn exact_eq(&self, other: &Self) -> bool {
        use WallValue::*;
        match (self, other) {
            (Rational { value: a }, Rational { value: b }) => a == b,
            (
                Surd {
                    rational: p1,
                    coefficient: q1,
                    radicand: d1,
                },
                Surd {
                    rational: p2,
                    coefficient: q2,
                    radicand: d2,
                },
            ) => {
                p1 == p2
                    && q1.is_positive() == q2.is_positive()
                    && q1 * q1 * d1 == q2 * q2 * d2
            }
            _ => false,
        }
    }
}

/// Polynomial of degree at most 2 with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Poly2 {
    c0: Rational,
    c1: Rational,
    c2: Rational,
}

impl Poly2 {
    fn affine(c0: Rational, c1: Rational) -> Self {
        Poly2 {
            c0,
            c1,
            c2: Rational::zero(),
        }
    }

    fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero() && self.c2.is_zero()
    }

    fn sub(&self, other: &Poly2) -> Poly2 {
        Poly2 {
            c0: &self.c0 - &other.c0,
            c1: &self.c1 - &other.c1,
            c2: &self.c2 - &other.c2,
        }
    }

    /// Product of two affine polynomials.
    fn mul_affine(a: &Poly2, b: &Poly2) -> Poly2 {
        debug_assert!(a.c2.is_zero() && b.c2.is_zero());
        Poly2 {
            c0: &a.c0 * &b.c0,
            c1: &a.c0 * &b.c1 + &a.c1 * &b.c0,
            c2: &a.c1 * &b.c1,
        }
    }

    fn eval(&self, x: &Rational) -> Rational {
        &self.c0 + &self.c1 * x + &self.c2 * x * x
    }

    /// Evaluation at `p + q sqrt(d)` as `(rational part, sqrt coefficient)`.
    fn eval_surd(&self, p: &Rational, q: &Rational, d: &Rational) -> (Rational, Rational) {
        let rational = &self.c0 + &self.c1 * p + &self.c2 * (p * p + q * q * d);
        let surd = &self.c1 * q + &self.c2 * rat_int(2) * p * q;
        (rational, surd)
    }

    /// Exact real roots, smallest first.
    fn roots(&self) -> Vec<WallValue> {
        if self.c2.is_zero() {
            if self.c1.is_zero() {
                return Vec::new();
            }
            return vec![WallValue::from_rational(-&self.c0 / &self.c1)];
        }
        let disc = &self.c1 * &self.c1 - rat_int(4) * &self.c0 * &self.c2;
        if disc.is_negative() {
            return Vec::new();
        }
        let two_a = rat_int(2) * &self.c2;
        let p = -&self.c1 / &two_a;
        if disc.is_zero() {
            return vec![WallValue::from_rational(p)];
        }
        let q = Rational::one() / &two_a;
        let mut roots = vec![
            WallValue::surd(p.clone(), -&q, disc.clone()),
            WallValue::surd(p, q, disc),
        ];
        roots.sort();
        roots
    }
}

/// The real and imaginary parts of the charge of `v` as polynomials in
/// the scanned parameter.
fn charge_polys(
    spec: &SurfaceSpec,
    params: &ChargeParams,
    v: &NumClass,
    parameter: ScanParameter,
) -> Result<(Poly2, Poly2)> {
    // Coefficients assembled from charges at two parameter values; the
    // charge is affine in both scanned parameters.
    let at = |value: Rational| -> Result<crate::charge::ChargeValue> {
        let mut p = params.clone();
        match parameter {
            ScanParameter::Epsilon => p.epsilon = value,
            ScanParameter::S => p.s = value,
        }
        charge(spec, &p, v)
    };
    let z0 = at(Rational::zero())?;
    let z1 = at(Rational::one())?;
    let re = Poly2::affine(z0.re.clone(), &z1.re - &z0.re);
    let im = Poly2::affine(z0.im.clone(), &z1.im - &z0.im);
    Ok((re, im))
}

/// One wall: the exact parameter value and the candidates that align
/// with the scanned class there.
#[derive(Debug, Clone, Serialize)]
pub struct Wall {
    pub value: WallValue,
    pub witnesses: Vec<NumClass>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WallReport {
    pub parameter: ScanParameter,
    pub class: NumClass,
    pub range: ScanRange,
    pub walls: Vec<Wall>,
    /// Candidates whose phase aligns with the class identically across
    /// the whole range (degenerate wall segments).
    pub segment_witnesses: Vec<NumClass>,
}

/// Locates, for each candidate `w`, the parameter values where the
/// phases of `v` and `w` align: the exact roots of
/// `Re Z(v) Im Z(w) - Re Z(w) Im Z(v)` inside the range. The candidate
/// equal to `v` is excluded; identically-aligned candidates are
/// reported as segments.
pub fn scan_walls(
    spec: &SurfaceSpec,
    params: &ChargeParams,
    v: &NumClass,
    candidates: &[NumClass],
    parameter: ScanParameter,
    range: &ScanRange,
) -> Result<WallReport> {
    scan_walls_impl(spec, params, v, candidates, parameter, range, true)
}

/// Sequential twin of [`scan_walls`], for benchmarking both paths.
pub fn scan_walls_seq(
    spec: &SurfaceSpec,
    params: &ChargeParams,
    v: &NumClass,
    candidates: &[NumClass],
    parameter: ScanParameter,
    range: &ScanRange,
) -> Result<WallReport> {
    scan_walls_impl(spec, params, v, candidates, parameter, range, false)
}

fn scan_walls_impl(
    spec: &SurfaceSpec,
    params: &ChargeParams,
    v: &NumClass,
    candidates: &[NumClass],
    parameter: ScanParameter,
    range: &ScanRange,
    parallel: bool,
) -> Result<WallReport> {
    range.validate()?;
    spec.check_class(v)?;
    let (re_v, im_v) = charge_polys(spec, params, v, parameter)?;

    let per_candidate = |w: &NumClass| -> Result<Option<(Vec<WallValue>, bool)>> {
        if w == v {
            return Ok(None);
        }
        let (re_w, im_w) = charge_polys(spec, params, w, parameter)?;
        let cross = Poly2::mul_affine(&re_v, &im_w).sub(&Poly2::mul_affine(&re_w, &im_v));
        if cross.is_zero() {
            return Ok(Some((Vec::new(), true)));
        }
        let roots = cross
            .roots()
            .into_iter()
            .filter(|r| range.contains(r))
            .collect();
        Ok(Some((roots, false)))
    };

    let results = par::map_either(parallel, candidates, per_candidate);
    let mut walls: Vec<Wall> = Vec::new();
    let mut segment_witnesses = Vec::new();
    for (w, res) in candidates.iter().zip(results) {
        let Some((roots, is_segment)) = res? else {
            continue;
        };
        if is_segment {
            segment_witnesses.push(w.clone());
            continue;
        }
        for root in roots {
            match walls.iter_mut().find(|wall| wall.value == root) {
                Some(wall) => wall.witnesses.push(w.clone()),
                None => walls.push(Wall {
                    value: root,
                    witnesses: vec![w.clone()],
                }),
            }
        }
    }
    walls.sort_by(|a, b| a.value.cmp(&b.value));
    Ok(WallReport {
        parameter,
        class: v.clone(),
        range: range.clone(),
        walls,
        segment_witnesses,
    })
}

/// Re-evaluates the alignment condition at a reported wall value;
/// exact in both the rational and the surd case.
pub fn verify_wall(
    spec: &SurfaceSpec,
    params: &ChargeParams,
    v: &NumClass,
    w: &NumClass,
    parameter: ScanParameter,
    value: &WallValue,
) -> Result<bool> {
    let (re_v, im_v) = charge_polys(spec, params, v, parameter)?;
    let (re_w, im_w) = charge_polys(spec, params, w, parameter)?;
    let cross = Poly2::mul_affine(&re_v, &im_w).sub(&Poly2::mul_affine(&re_w, &im_v));
    Ok(match value {
        WallValue::Rational { value } => cross.eval(value).is_zero(),
        WallValue::Surd {
            rational,
            coefficient,
            radicand,
        } => {
            let (r, s) = cross.eval_surd(rational, coefficient, radicand);
            r.is_zero() && s.is_zero()
        }
    })
}

/// Box limits for candidate enumeration, plus the support-form
/// parameters used for the pruning inequality `Q_{A,B}(w) >= 0`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CandidateBounds {
    pub ch0_max: i64,
    pub kernel_max: i64,
    pub ch2_max: i64,
    #[serde(with = "crate::rational::serde_ratio", default = "Rational::zero")]
    pub a: Rational,
    #[serde(with = "crate::rational::serde_ratio", default = "Rational::zero")]
    pub b: Rational,
    #[serde(default = "default_box_cap")]
    pub max_box: u128,
}

fn default_box_cap() -> u128 {
    1 << 22
}

/// All integral classes in the box with `0 <= Im Z(w) <= Im Z(v)` and
/// `Q_{A,B}(w) >= 0`. The `h` coordinate is bounded by the imaginary
/// part constraint rather than the box; extra-block coordinates are
/// zero.
pub fn enumerate_candidates(
    spec: &SurfaceSpec,
    params: &ChargeParams,
    v: &NumClass,
    bounds: &CandidateBounds,
) -> Result<Vec<NumClass>> {
    enumerate_impl(spec, params, v, bounds, true)
}

/// Sequential twin of [`enumerate_candidates`].
pub fn enumerate_candidates_seq(
    spec: &SurfaceSpec,
    params: &ChargeParams,
    v: &NumClass,
    bounds: &CandidateBounds,
) -> Result<Vec<NumClass>> {
    enumerate_impl(spec, params, v, bounds, false)
}

fn enumerate_impl(
    spec: &SurfaceSpec,
    params: &ChargeParams,
    v: &NumClass,
    bounds: &CandidateBounds,
    parallel: bool,
) -> Result<Vec<NumClass>> {
    if spec.h_square() <= 0 {
        return Err(Error::BadSignature { inertia: (0, 0, 0) });
    }
    let n = spec.rank() as u32;
    let width = |m: i64| (2 * m.max(0) + 1) as u128;
    let kernel_width = width(bounds.kernel_max);
    let static_box = width(bounds.ch0_max)
        .saturating_mul(kernel_width.saturating_pow(n))
        .saturating_mul(width(bounds.ch2_max));

    let im_v = charge(spec, params, v)?.im;
    let d = rat_int(spec.h_square());
    let beta_pairings = spec.ade().curve_pairings(&params.beta)?;
    // Upper bound on the h-coordinate spread allowed by the Im window.
    let pairing_mass: Rational = beta_pairings
        .iter()
        .fold(Rational::zero(), |acc, p| acc + p.abs());
    let slack = params.alpha.abs() * rat_int(bounds.ch0_max.abs())
        + params.eta.abs() * rat_int(bounds.kernel_max.abs()) * pairing_mass;
    let h_spread = ((im_v.abs() + rat_int(2) * slack) / &d).ceil() + rat_int(2);
    let h_count = u128::try_from(h_spread.to_integer()).unwrap_or(u128::MAX);
    let size = static_box.saturating_mul(h_count);
    if size > bounds.max_box {
        return Err(Error::BoxTooLarge {
            size,
            cap: bounds.max_box,
        });
    }

    let mut units = Vec::new();
    for ch0 in -bounds.ch0_max..=bounds.ch0_max {
        for ch2 in -bounds.ch2_max..=bounds.ch2_max {
            units.push((ch0, ch2));
        }
    }

    let per_unit = |&(ch0, ch2): &(i64, i64)| -> Result<Vec<NumClass>> {
        let mut found = Vec::new();
        let k = bounds.kernel_max;
        let mut coeffs = vec![-k; spec.rank()];
        loop {
            // Im(w) = d*h - alpha*ch0 + eta * (beta . e-part).
            let e_pairing: Rational = beta_pairings
                .iter()
                .zip(&coeffs)
                .fold(Rational::zero(), |acc, (p, &c)| acc + p * rat_int(c));
            let base_im = -&params.alpha * rat_int(ch0) + &params.eta * e_pairing;
            let h_min = ((-&base_im) / &d).ceil();
            let h_max = ((&im_v - &base_im) / &d).floor();
            let mut h = h_min.clone();
            while h <= h_max {
                let mut w = spec.zero_class();
                w.ch0 = ch0;
                w.ch1.h = h.clone();
                for (c, &ci) in w.ch1.e.iter_mut().zip(&coeffs) {
                    *c = rat_int(ci);
                }
                w.ch2 = rat_int(ch2);
                if !q_form(spec, params, &bounds.a, &bounds.b, &w)?.is_negative() {
                    found.push(w);
                }
                h += Rational::one();
            }
            // Odometer over the kernel box.
            let mut i = 0;
            loop {
                if i == coeffs.len() {
                    return Ok(found);
                }
                coeffs[i] += 1;
                if coeffs[i] <= k {
                    break;
                }
                coeffs[i] = -k;
                i += 1;
            }
        }
    };

    let chunks = par::map_either(parallel, &units, per_unit);
    let mut all = Vec::new();
    for chunk in chunks {
        all.extend(chunk?);
    }
    all.sort_by(class_order);
    Ok(all)
}

fn class_order(a: &NumClass, b: &NumClass) -> Ordering {
    a.ch0
        .cmp(&b.ch0)
        .then_with(|| a.ch1.h.cmp(&b.ch1.h))
        .then_with(|| a.ch1.x.cmp(&b.ch1.x))
        .then_with(|| a.ch1.e.cmp(&b.ch1.e))
        .then_with(|| a.ch2.cmp(&b.ch2))
}
