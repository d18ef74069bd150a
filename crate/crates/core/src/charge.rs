//! The central-charge family, parameter validity, exact phase
//! comparisons, and the support-property quadratic forms.
//!
//! One member of the family is
//!
//! ```text
//! Z(v) = [-ch2 + eps (beta . ch1) + s z ch0]
//!      + i [h . ch1 - alpha ch0 + eta (beta . ch1)]
//! ```
//!
//! With `eps = s = 1`, `eta = alpha = 0` this is the stability-function
//! charge; `eps = 0` gives the endpoint charge that kills the kernel
//! simples and factors through the pushforward.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{format_rational, rat_int, to_f64, Rational};
use crate::surface::{
    discriminant, delta_pushed, intersect, pushforward, NumClass, PushedClass, SurfaceSpec,
};

fn one() -> Rational {
    rat_int(1)
}

/// Parameters selecting one member of the central-charge family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChargeParams {
    #[serde(with = "crate::rational::serde_ratio_vec")]
    pub beta: Vec<Rational>,
    #[serde(with = "crate::rational::serde_ratio")]
    pub z: Rational,
    #[serde(with = "crate::rational::serde_ratio", default = "one")]
    pub s: Rational,
    #[serde(with = "crate::rational::serde_ratio", default = "one")]
    pub epsilon: Rational,
    #[serde(with = "crate::rational::serde_ratio", default = "Rational::zero")]
    pub eta: Rational,
    #[serde(with = "crate::rational::serde_ratio", default = "Rational::zero")]
    pub alpha: Rational,
}

impl ChargeParams {
    /// `eps = s = 1`, `eta = alpha = 0`.
    pub fn standard(beta: Vec<Rational>, z: Rational) -> Self {
        ChargeParams {
            beta,
            z,
            s: one(),
            epsilon: one(),
            eta: Rational::zero(),
            alpha: Rational::zero(),
        }
    }

    pub fn with_epsilon(mut self, epsilon: Rational) -> Self {
        self.epsilon = epsilon;
        self
    }

    pub fn with_eta(mut self, eta: Rational) -> Self {
        self.eta = eta;
        self
    }

    pub fn with_s(mut self, s: Rational) -> Self {
        self.s = s;
        self
    }

    pub fn with_alpha(mut self, alpha: Rational) -> Self {
        self.alpha = alpha;
        self
    }
}

/// Value of a central charge, as an exact point of the complex plane.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChargeValue {
    #[serde(with = "crate::rational::serde_ratio")]
    pub re: Rational,
    #[serde(with = "crate::rational::serde_ratio")]
    pub im: Rational,
}

impl ChargeValue {
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

/// Solves `G b = t (1, .., 1)` exactly. The output pairs to `t > 0`
/// against every exceptional curve and to `t sum(m_i) < 1` against the
/// fundamental cycle; its coefficients are all negative by inverse
/// negativity.
pub fn find_beta(spec: &SurfaceSpec, t: &Rational) -> Result<Vec<Rational>> {
    let total: i64 = spec.ade().fund_cycle().iter().sum();
    let max = Rational::new(1.into(), (1 + total).into());
    if !t.is_positive() || t > &max {
        return Err(Error::BadMargin {
            t: format_rational(t),
            max: format_rational(&max),
        });
    }
    let gram = spec.ade().gram_rational();
    let rhs = vec![t.clone(); spec.rank()];
    linalg::solve(&gram, &rhs)
}

/// One violated parameter constraint; an empty list means valid.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
#[serde(tag = "kind")]
pub enum ParamViolation {
    /// `beta . e_i <= 0` for the given 1-based curve index.
    BetaNotPositive { index: usize, pairing: String },
    /// `beta . (sum m_i e_i) >= 1`.
    FundamentalCycleBound { pairing: String },
    /// `z - alpha^2/(2d) <= -beta^2/2`.
    ZTooLow { lhs: String, rhs: String },
    /// The s-scaling or epsilon-deformation is in use but `z <= 0`.
    ZNotPositiveForDeformation { z: String },
}

/// Checks the validity region of the parameters; violations are data,
/// not errors.
pub fn validate_params(spec: &SurfaceSpec, params: &ChargeParams) -> Result<Vec<ParamViolation>> {
    let beta_pairings = spec.ade().curve_pairings(&params.beta)?;
    let mut violations = Vec::new();
    for (i, p) in beta_pairings.iter().enumerate() {
        if !p.is_positive() {
            violations.push(ParamViolation::BetaNotPositive {
                index: i + 1,
                pairing: format_rational(p),
            });
        }
    }
    let fund_pairing: Rational = beta_pairings
        .iter()
        .zip(spec.ade().fund_cycle())
        .fold(Rational::zero(), |acc, (p, &m)| acc + p * rat_int(m));
    if fund_pairing >= one() {
        violations.push(ParamViolation::FundamentalCycleBound {
            pairing: format_rational(&fund_pairing),
        });
    }
    let beta_sq = beta_square(spec, &params.beta)?;
    let lhs = &params.z - &params.alpha * &params.alpha / rat_int(2 * spec.h_square());
    let rhs = -&beta_sq / rat_int(2);
    if lhs <= rhs {
        violations.push(ParamViolation::ZTooLow {
            lhs: format_rational(&lhs),
            rhs: format_rational(&rhs),
        });
    }
    if (params.s != one() || params.epsilon != one()) && !params.z.is_positive() {
        violations.push(ParamViolation::ZNotPositiveForDeformation {
            z: format_rational(&params.z),
        });
    }
    Ok(violations)
}

/// Self-intersection of `beta = sum beta_i e_i`.
pub fn beta_square(spec: &SurfaceSpec, beta: &[Rational]) -> Result<Rational> {
    let emb = spec.embed_exceptional(beta)?;
    intersect(spec, &emb, &emb)
}

fn beta_dot_ch1(spec: &SurfaceSpec, beta: &[Rational], v: &NumClass) -> Result<Rational> {
    let emb = spec.embed_exceptional(beta)?;
    intersect(spec, &emb, &v.ch1.flat())
}

fn h_dot_ch1(spec: &SurfaceSpec, v: &NumClass) -> Rational {
    let mut h = vec![Rational::zero(); spec.ch1_dim()];
    h[0] = one();
    intersect(spec, &h, &v.ch1.flat()).expect("h vector has the spec dimension")
}

/// Evaluates the central charge of `v` at the given parameters.
pub fn charge(spec: &SurfaceSpec, params: &ChargeParams, v: &NumClass) -> Result<ChargeValue> {
    spec.check_class(v)?;
    let bc = beta_dot_ch1(spec, &params.beta, v)?;
    let ch0 = rat_int(v.ch0);
    let re = -&v.ch2 + &params.epsilon * &bc + &params.s * &params.z * &ch0;
    let im = h_dot_ch1(spec, v) - &params.alpha * &ch0 + &params.eta * &bc;
    Ok(ChargeValue { re, im })
}

/// Half-plane classification underlying the extended phase in `(0, 2]`.
///
/// The variants are ordered by phase: the open upper half-plane carries
/// phases in `(0, 1)`, the negative real axis is exactly phase 1, the
/// open lower half-plane is `(1, 2)`, and the positive real axis is
/// phase 2. The zero charge compares as phase 1 (massless convention).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum PhaseClass {
    UpperHalf,
    NegativeReal,
    LowerHalf,
    PositiveReal,
}

pub fn phase_class(z: &ChargeValue) -> PhaseClass {
    if z.im.is_positive() {
        PhaseClass::UpperHalf
    } else if z.im.is_negative() {
        PhaseClass::LowerHalf
    } else if z.re.is_positive() {
        PhaseClass::PositiveReal
    } else {
        // Includes the zero charge: phase 1 by the massless convention.
        PhaseClass::NegativeReal
    }
}

/// Compares extended phases in `(0, 2]` exactly: half-plane
/// classification first, then the cross product
/// `re(a) im(b) - re(b) im(a)` within a class.
pub fn compare_phase(a: &ChargeValue, b: &ChargeValue) -> Ordering {
    let (ca, cb) = (phase_class(a), phase_class(b));
    match ca.cmp(&cb) {
        Ordering::Equal => {
            let cross = &a.re * &b.im - &b.re * &a.im;
            if cross.is_positive() {
                Ordering::Less
            } else if cross.is_negative() {
                Ordering::Greater
            } else {
                Ordering::Equal
            }
        }
        other => other,
    }
}

/// Float rendering of the extended phase (reports only).
pub fn phase_f64(z: &ChargeValue) -> f64 {
    if z.is_zero() {
        return 1.0;
    }
    let a = to_f64(&z.im).atan2(to_f64(&z.re)) / std::f64::consts::PI;
    if a <= 0.0 {
        a + 2.0
    } else {
        a
    }
}

/// The support form `Q_{A,B}(v) = Delta(v) + A (Im Z(v))^2 + B (Re Z(v))^2`
/// with the eta-deformation switched off.
pub fn q_form(
    spec: &SurfaceSpec,
    params: &ChargeParams,
    a: &Rational,
    b: &Rational,
    v: &NumClass,
) -> Result<Rational> {
    let mut p = params.clone();
    p.eta = Rational::zero();
    let z = charge(spec, &p, v)?;
    Ok(discriminant(spec, v)? + a * &z.im * &z.im + b * &z.re * &z.re)
}

/// The quotient-lattice form `Delta_X(push v) + A (Im Z(v) at eps = eta = 0)^2`.
pub fn q_form_x(
    spec: &SurfaceSpec,
    params: &ChargeParams,
    a: &Rational,
    v: &NumClass,
) -> Result<Rational> {
    let mut p = params.clone();
    p.epsilon = Rational::zero();
    p.eta = Rational::zero();
    let z = charge(spec, &p, v)?;
    let dx = delta_pushed(spec, &pushforward(spec, v)?)?;
    Ok(dx + a * &z.im * &z.im)
}

/// The Bogomolov-Gieseker predicate on the singular surface:
/// `ch1^2 - 2 ch0 ch2 >= 0` for the pushed class.
pub fn bogomolov_gieseker_pushed(spec: &SurfaceSpec, w: &PushedClass) -> Result<bool> {
    Ok(!delta_pushed(spec, w)?.is_negative())
}

/// Certificate of negative definiteness on a charge kernel.
#[derive(Debug, Clone, Serialize)]
pub struct DefinitenessCertificate {
    /// `"resolution"` for `Q_{A,B}` on `ker Z`, `"quotient"` for the
    /// pushforward lattice form on `ker Z` at `eps = 0`.
    pub space: &'static str,
    pub kernel_dim: usize,
    pub inertia: (usize, usize, usize),
    pub negative_definite: bool,
}

/// Restricts `Q_{A,B}` to the kernel of the charge (with `eta = 0`)
/// inside the full class space and certifies negative definiteness by
/// exact congruence reduction. On failure returns
/// [`Error::NotDefinite`] carrying a kernel witness with `Q >= 0`.
pub fn certify_negative_definite(
    spec: &SurfaceSpec,
    params: &ChargeParams,
    a: &Rational,
    b: &Rational,
) -> Result<DefinitenessCertificate> {
    // Coordinates: [ch0, ch1 flat.., ch2].
    let dim = spec.class_dim();
    let re_fn = resolution_re_functional(spec, params)?;
    let im_fn = resolution_im_functional(spec, params);
    let kernel = linalg::nullspace(&[re_fn.clone(), im_fn.clone()], dim);
    let bilinear = |u: &[Rational], w: &[Rational]| {
        let cd = spec.ch1_dim();
        let cu = &u[1..1 + cd];
        let cw = &w[1..1 + cd];
        let pairing = intersect(spec, cu, cw).expect("kernel vectors have spec dimension");
        let cross = &u[0] * &w[dim - 1] + &u[dim - 1] * &w[0];
        pairing - cross
            + a * linalg::dot(&im_fn, u) * linalg::dot(&im_fn, w)
            + b * linalg::dot(&re_fn, u) * linalg::dot(&re_fn, w)
    };
    certify_on_kernel("resolution", &kernel, bilinear)
}

/// The quotient-lattice analogue: `Q_X` restricted to the kernel of the
/// endpoint charge `Z` at `eps = 0` scaled by `s`, on coordinates
/// `[ch0, H, xbar.., ch2]`.
pub fn certify_negative_definite_pushed(
    spec: &SurfaceSpec,
    params: &ChargeParams,
    a: &Rational,
) -> Result<DefinitenessCertificate> {
    let block = spec.extra_gram().clone();
    let k = block.len();
    let dim = 2 + k;
    // Re = -ch2 + s z ch0; Im = H.ch1 - alpha ch0.
    let mut re_fn = vec![Rational::zero(); dim];
    re_fn[0] = &params.s * &params.z;
    re_fn[dim - 1] = -one();
    let mut im_fn = vec![Rational::zero(); dim];
    im_fn[0] = -params.alpha.clone();
    for (j, g) in block[0].iter().enumerate() {
        im_fn[1 + j] = g.clone();
    }
    let kernel = linalg::nullspace(&[re_fn, im_fn.clone()], dim);
    let bilinear = |u: &[Rational], w: &[Rational]| {
        let cu = &u[1..1 + k];
        let cw = &w[1..1 + k];
        let pairing = linalg::dot(cu, &linalg::mat_vec(&block, cw));
        let cross = &u[0] * &w[dim - 1] + &u[dim - 1] * &w[0];
        pairing - cross + a * linalg::dot(&im_fn, u) * linalg::dot(&im_fn, w)
    };
    certify_on_kernel("quotient", &kernel, bilinear)
}

fn resolution_re_functional(spec: &SurfaceSpec, params: &ChargeParams) -> Result<Vec<Rational>> {
    let dim = spec.class_dim();
    let emb = spec.embed_exceptional(&params.beta)?;
    let mut f = vec![Rational::zero(); dim];
    f[0] = &params.s * &params.z;
    let paired = linalg::mat_vec(spec.full_gram(), &emb);
    for (j, p) in paired.iter().enumerate() {
        f[1 + j] = &params.epsilon * p;
    }
    f[dim - 1] = -one();
    Ok(f)
}

fn resolution_im_functional(spec: &SurfaceSpec, params: &ChargeParams) -> Vec<Rational> {
    let dim = spec.class_dim();
    let mut f = vec![Rational::zero(); dim];
    f[0] = -params.alpha.clone();
    for (j, p) in spec.full_gram()[0].iter().enumerate() {
        f[1 + j] = p.clone();
    }
    f
}

fn certify_on_kernel<F>(
    space: &'static str,
    kernel: &[Vec<Rational>],
    bilinear: F,
) -> Result<DefinitenessCertificate>
where
    F: Fn(&[Rational], &[Rational]) -> Rational,
{
    let k = kernel.len();
    let mut gram = linalg::zeros(k, k);
    for i in 0..k {
        for j in 0..=i {
            let v = bilinear(&kernel[i], &kernel[j]);
            gram[i][j] = v.clone();
            gram[j][i] = v;
        }
    }
    let (inertia, witness) = linalg::inertia_with_witness(&gram);
    if inertia == (0, k, 0) {
        Ok(DefinitenessCertificate {
            space,
            kernel_dim: k,
            inertia,
            negative_definite: true,
        })
    } else {
        // Map the reduced-basis witness back to class coordinates and
        // clear denominators.
        let coeffs = witness.expect("non-definite form has a witness");
        let dim = kernel.first().map_or(0, |v| v.len());
        let mut w = vec![Rational::zero(); dim];
        for (c, kv) in coeffs.iter().zip(kernel) {
            for (wi, ki) in w.iter_mut().zip(kv) {
                *wi += c * ki;
            }
        }
        let denom_lcm = w
            .iter()
            .map(|r| r.denom().clone())
            .fold(num_bigint::BigInt::from(1), num_integer::lcm);
        let scaled: Vec<String> = w
            .iter()
            .map(|r| format_rational(&(r * Rational::from_integer(denom_lcm.clone()))))
            .collect();
        Err(Error::NotDefinite {
            inertia,
            witness: scaled,
        })
    }
}

/// Support constants relative to a candidate set.
#[derive(Debug, Clone, Serialize)]
pub struct SupportConstants {
    #[serde(with = "crate::rational::serde_ratio")]
    pub a0: Rational,
    #[serde(with = "crate::rational::serde_ratio")]
    pub b0: Rational,
}

/// Smallest nonnegative constants `(A0, B0)` with
/// `Q_{A0,B0}(w) >= 0` for every candidate `w`: classes with
/// `Im Z != 0` bound `A0`, classes with `Im Z = 0` and `Re Z != 0`
/// bound `B0`. A nonzero candidate with `Z = 0` and `Delta >= 0` is a
/// data anomaly ([`Error::ZeroCharge`]): no constants can cover it.
pub fn support_constants(
    spec: &SurfaceSpec,
    params: &ChargeParams,
    candidates: &[NumClass],
) -> Result<SupportConstants> {
    let mut p = params.clone();
    p.eta = Rational::zero();
    let mut a0 = Rational::zero();
    let mut b0 = Rational::zero();
    for w in candidates {
        let z = charge(spec, &p, w)?;
        let delta = discriminant(spec, w)?;
        if !z.im.is_zero() {
            let ratio = -&delta / (&z.im * &z.im);
            if ratio > a0 {
                a0 = ratio;
            }
        } else if !z.re.is_zero() {
            let ratio = -&delta / (&z.re * &z.re);
            if ratio > b0 {
                b0 = ratio;
            }
        } else if *w != spec.zero_class() && !delta.is_negative() {
            return Err(Error::ZeroCharge {
                delta: format_rational(&delta),
            });
        }
    }
    Ok(SupportConstants { a0, b0 })
}

/// The classes Lemma-level support arguments quantify over: the
/// fundamental-cycle structure sheaf class, the shifted kernel simples,
/// and the skyscraper class.
pub fn standard_candidates(spec: &SurfaceSpec) -> Vec<NumClass> {
    let n = spec.rank();
    let mut out = Vec::with_capacity(n + 2);
    let mut opi = spec.zero_class();
    for (c, &m) in opi.ch1.e.iter_mut().zip(spec.ade().fund_cycle()) {
        *c = rat_int(m);
    }
    opi.ch2 = one();
    out.push(opi);
    for i in 0..n {
        let mut s = spec.zero_class();
        s.ch1.e[i] = -one();
        out.push(s);
    }
    let mut ox = spec.zero_class();
    ox.ch2 = one();
    out.push(ox);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::surface::Ch1;

    fn spec(t: &str, d: i64) -> SurfaceSpec {
        SurfaceSpec::simple(t.parse().unwrap(), d).unwrap()
    }

    fn class(s: &SurfaceSpec, ch0: i64, h: i64, e: &[i64], ch2: i64) -> NumClass {
        let mut c = s.zero_class();
        c.ch0 = ch0;
        c.ch1.h = rat_int(h);
        for (ci, &v) in c.ch1.e.iter_mut().zip(e) {
            *ci = rat_int(v);
        }
        c.ch2 = rat_int(ch2);
        c
    }

    #[test]
    fn find_beta_examples() {
        let s1 = spec("A1", 2);
        let b = find_beta(&s1, &rat(1, 2)).unwrap();
        assert_eq!(b, vec![rat(-1, 4)]);
        assert_eq!(beta_square(&s1, &b).unwrap(), rat(-1, 8));

        let s2 = spec("A2", 2);
        let b = find_beta(&s2, &rat(1, 3)).unwrap();
        assert_eq!(b, vec![rat(-1, 3), rat(-1, 3)]);
        let pairings = s2.ade().curve_pairings(&b).unwrap();
        assert!(pairings.iter().all(|p| *p == rat(1, 3)));

        assert!(matches!(
            find_beta(&s1, &rat_int(1)),
            Err(Error::BadMargin { .. })
        ));
    }

    #[test]
    fn validate_params_examples() {
        let s = spec("A1", 2);
        let ok = ChargeParams::standard(vec![rat(-1, 4)], rat_int(1));
        assert!(validate_params(&s, &ok).unwrap().is_empty());

        let low_z = ChargeParams::standard(vec![rat(-1, 4)], rat(1, 32));
        let v = validate_params(&s, &low_z).unwrap();
        assert!(matches!(v.as_slice(), [ParamViolation::ZTooLow { .. }]));

        let wrong_sign = ChargeParams::standard(vec![rat(1, 4)], rat_int(1));
        let v = validate_params(&s, &wrong_sign).unwrap();
        assert!(v
            .iter()
            .any(|p| matches!(p, ParamViolation::BetaNotPositive { index: 1, .. })));
    }

    #[test]
    fn z_positive_required_for_deformation() {
        let s = spec("A1", 2);
        let p = ChargeParams::standard(vec![rat(-1, 4)], rat_int(0)).with_s(rat_int(2));
        let v = validate_params(&s, &p).unwrap();
        assert!(v
            .iter()
            .any(|x| matches!(x, ParamViolation::ZNotPositiveForDeformation { .. })));
    }

    #[test]
    fn charge_examples() {
        let s = spec("A1", 2);
        let p = ChargeParams::standard(vec![rat(-1, 4)], rat_int(1));
        let kernel_simple = class(&s, 0, 0, &[1], 0);
        let z = charge(&s, &p, &kernel_simple).unwrap();
        assert_eq!((z.re, z.im), (rat(1, 2), rat_int(0)));

        let endpoint = p.clone().with_epsilon(rat_int(0));
        let z = charge(&s, &endpoint, &kernel_simple).unwrap();
        assert!(z.is_zero());

        let opi = class(&s, 0, 0, &[1], 1);
        let z = charge(&s, &p, &opi).unwrap();
        assert_eq!((z.re, z.im), (rat(-1, 2), rat_int(0)));
    }

    #[test]
    fn compare_phase_examples() {
        let minus_one = ChargeValue {
            re: rat_int(-1),
            im: rat_int(0),
        };
        let i = ChargeValue {
            re: rat_int(0),
            im: rat_int(1),
        };
        assert_eq!(compare_phase(&minus_one, &i), Ordering::Greater);

        // Upper half-plane point against the negative real axis.
        let upper = ChargeValue {
            re: rat(-1, 2),
            im: rat(1, 20),
        };
        assert_eq!(compare_phase(&upper, &minus_one), Ordering::Less);

        // Lower half-plane classifies after phase 1.
        let lower = ChargeValue {
            re: rat(-1, 2),
            im: rat(-1, 20),
        };
        assert_eq!(compare_phase(&lower, &minus_one), Ordering::Greater);
    }

    #[test]
    fn zero_charge_is_phase_one() {
        let zero = ChargeValue {
            re: rat_int(0),
            im: rat_int(0),
        };
        let minus_one = ChargeValue {
            re: rat_int(-1),
            im: rat_int(0),
        };
        assert_eq!(compare_phase(&zero, &minus_one), Ordering::Equal);
        assert_eq!(phase_class(&zero), PhaseClass::NegativeReal);
    }

    #[test]
    fn q_form_examples() {
        let s = spec("A1", 2);
        let p = ChargeParams::standard(vec![rat(-1, 4)], rat_int(1));

        let sky = class(&s, 0, 0, &[0], 1);
        let b = rat_int(5);
        assert_eq!(
            q_form(&s, &p, &rat_int(3), &b, &sky).unwrap(),
            b.clone()
        );

        let kernel_simple = class(&s, 0, 0, &[1], 0);
        let q = q_form(&s, &p, &rat_int(0), &b, &kernel_simple).unwrap();
        assert_eq!(q, rat_int(-2) + &b / rat_int(4));

        let shifted = class(&s, 0, 0, &[-1], 0);
        let q2 = q_form(&s, &p, &rat_int(0), &b, &shifted).unwrap();
        assert_eq!(q2, rat_int(-2) + &b / rat_int(4));
    }

    #[test]
    fn q_form_x_examples() {
        let s = spec("A1", 2);
        let p = ChargeParams::standard(vec![rat(-1, 4)], rat_int(1));
        let a = rat_int(7);

        let kernel_simple = class(&s, 0, 0, &[1], 0);
        assert_eq!(q_form_x(&s, &p, &a, &kernel_simple).unwrap(), rat_int(0));

        let line = class(&s, 1, 1, &[0], 0);
        assert_eq!(
            q_form_x(&s, &p, &a, &line).unwrap(),
            rat_int(2) + &a * rat_int(4)
        );

        let sky = class(&s, 0, 0, &[0], 1);
        assert_eq!(q_form_x(&s, &p, &rat_int(0), &sky).unwrap(), rat_int(0));
    }

    #[test]
    fn bogomolov_gieseker_predicate() {
        let s = spec("A1", 2);
        let good = pushforward(&s, &class(&s, 1, 1, &[0], 0)).unwrap();
        assert!(bogomolov_gieseker_pushed(&s, &good).unwrap());
        let bad = pushforward(&s, &class(&s, 1, 0, &[0], 1)).unwrap();
        assert!(!bogomolov_gieseker_pushed(&s, &bad).unwrap());
    }

    #[test]
    fn certify_running_config() {
        let s = spec("A1", 2);
        let p = ChargeParams::standard(vec![rat(-1, 4)], rat_int(1));
        let c = certify_negative_definite(&s, &p, &rat_int(0), &rat_int(0)).unwrap();
        assert!(c.negative_definite);
        assert_eq!(c.kernel_dim, 2);
        assert_eq!(c.inertia, (0, 2, 0));

        let scaled = p.clone().with_s(rat_int(5));
        let c = certify_negative_definite(&s, &scaled, &rat_int(0), &rat_int(0)).unwrap();
        assert!(c.negative_definite);
    }

    #[test]
    fn certify_detects_degenerate_z() {
        let s = spec("A1", 2);
        let p = ChargeParams::standard(vec![rat(-1, 4)], rat_int(0));
        let r = certify_negative_definite(&s, &p, &rat_int(0), &rat_int(0));
        match r {
            Err(Error::NotDefinite { inertia, witness }) => {
                assert!(inertia.0 + inertia.2 > 0);
                assert!(!witness.is_empty());
            }
            other => panic!("expected NotDefinite, got {other:?}"),
        }
    }

    #[test]
    fn certify_quotient_form() {
        let s = spec("A1", 2);
        let p = ChargeParams::standard(vec![rat(-1, 4)], rat_int(1));
        let c = certify_negative_definite_pushed(&s, &p, &rat_int(1)).unwrap();
        assert!(c.negative_definite);
        assert_eq!(c.space, "quotient");
    }

    #[test]
    fn support_constants_examples() {
        let s1 = spec("A1", 2);
        let p1 = ChargeParams::standard(vec![rat(-1, 4)], rat_int(1));
        let c = support_constants(&s1, &p1, &standard_candidates(&s1)).unwrap();
        assert_eq!(c.a0, rat_int(0));
        assert_eq!(c.b0, rat_int(8));

        let s2 = spec("A2", 2);
        let b = find_beta(&s2, &rat(1, 3)).unwrap();
        let p2 = ChargeParams::standard(b, rat_int(1));
        let c = support_constants(&s2, &p2, &standard_candidates(&s2)).unwrap();
        assert_eq!(c.b0, rat_int(18));

        let sky_only = vec![class(&s1, 0, 0, &[0], 1)];
        let c = support_constants(&s1, &p1, &sky_only).unwrap();
        assert_eq!((c.a0, c.b0), (rat_int(0), rat_int(0)));
    }

    #[test]
    fn support_constants_cover_candidates() {
        let s = spec("A2", 2);
        let b = find_beta(&s, &rat(1, 3)).unwrap();
        let p = ChargeParams::standard(b, rat_int(1));
        let cands = standard_candidates(&s);
        let c = support_constants(&s, &p, &cands).unwrap();
        for w in &cands {
            let q = q_form(&s, &p, &c.a0, &c.b0, w).unwrap();
            assert!(!q.is_negative(), "Q_(A0,B0) must cover {w:?}");
        }
    }

    #[test]
    fn charge_params_json() {
        let json =
            r#"{"beta":["-1/4"],"z":"1","s":"1","epsilon":"1","eta":"0","alpha":"0"}"#;
        let p: ChargeParams = serde_json::from_str(json).unwrap();
        assert_eq!(p.beta, vec![rat(-1, 4)]);
        assert_eq!(p.epsilon, rat_int(1));
        // Defaults apply when the optional fields are omitted.
        let p2: ChargeParams =
            serde_json::from_str(r#"{"beta":["-1/4"],"z":1}"#).unwrap();
        assert_eq!(p2.s, rat_int(1));
        assert_eq!(p2.alpha, rat_int(0));
    }

    #[test]
    fn charge_is_linear() {
        let s = spec("A2", 2);
        let p = ChargeParams::standard(find_beta(&s, &rat(1, 4)).unwrap(), rat_int(2))
            .with_eta(rat(1, 10));
        let u = class(&s, 2, 1, &[2, 1], 3);
        let v = class(&s, -1, 3, &[0, -2], 5);
        let zu = charge(&s, &p, &u).unwrap();
        let zv = charge(&s, &p, &v).unwrap();
        let zsum = charge(&s, &p, &u.add(&v)).unwrap();
        assert_eq!(zsum.re, &zu.re + &zv.re);
        assert_eq!(zsum.im, &zu.im + &zv.im);
    }

    #[test]
    fn ch1_struct_shape() {
        // Guards the coordinate layout the functionals rely on.
        let s = spec("A2", 2);
        let c = Ch1 {
            h: rat_int(1),
            x: vec![],
            e: vec![rat_int(2), rat_int(1)],
        };
        assert_eq!(c.flat(), vec![rat_int(1), rat_int(2), rat_int(1)]);
        assert_eq!(s.ch1_dim(), 3);
    }
}
