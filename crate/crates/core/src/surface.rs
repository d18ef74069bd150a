//! Numerical Grothendieck lattices of the resolution and of the
//! singular surface: intersection pairing, discriminant, pushforward,
//! kernel projection, and class lifting.
//!
//! The Neron-Severi model is the sublattice spanned by the nef class
//! `h` (with `h^2 = d > 0`), an optional extra block `x_1..x_r` pairing
//! arbitrarily with `h`, and the exceptional classes `e_1..e_n`; the
//! exceptional block is orthogonal to the rest by construction. A class
//! is a triple `(ch0, ch1, ch2)` with `ch1` in the basis above.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::rational::{rat_int, Rational};
use crate::root_data::{build_ade, AdeData, AdeType};

/// ch1 component of a class on the resolution, split by basis block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ch1 {
    #[serde(with = "crate::rational::serde_ratio", default = "Rational::zero")]
    pub h: Rational,
    #[serde(with = "crate::rational::serde_ratio_vec", default)]
    pub x: Vec<Rational>,
    #[serde(with = "crate::rational::serde_ratio_vec", default)]
    pub e: Vec<Rational>,
}

impl Ch1 {
    pub fn zero(extra_rank: usize, rank: usize) -> Self {
        Ch1 {
            h: Rational::zero(),
            x: vec![Rational::zero(); extra_rank],
            e: vec![Rational::zero(); rank],
        }
    }

    /// Flat coordinates `[h, x_1.., e_1..]`.
    pub fn flat(&self) -> Vec<Rational> {
        let mut v = Vec::with_capacity(1 + self.x.len() + self.e.len());
        v.push(self.h.clone());
        v.extend(self.x.iter().cloned());
        v.extend(self.e.iter().cloned());
        v
    }

    fn from_flat(v: &[Rational], extra_rank: usize) -> Self {
        Ch1 {
            h: v[0].clone(),
            x: v[1..1 + extra_rank].to_vec(),
            e: v[1 + extra_rank..].to_vec(),
        }
    }
}

/// Numerical class `(ch0, ch1, ch2)` on the resolution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumClass {
    pub ch0: i64,
    pub ch1: Ch1,
    #[serde(with = "crate::rational::serde_ratio", default = "Rational::zero")]
    pub ch2: Rational,
}

impl NumClass {
    pub fn new(ch0: i64, ch1: Ch1, ch2: Rational) -> Self {
        NumClass { ch0, ch1, ch2 }
    }

    pub fn zero(extra_rank: usize, rank: usize) -> Self {
        NumClass::new(0, Ch1::zero(extra_rank, rank), Rational::zero())
    }

    /// True when every coordinate is an integer.
    pub fn is_integral(&self) -> bool {
        self.ch2.is_integer()
            && self.ch1.h.is_integer()
            && self.ch1.x.iter().all(|c| c.is_integer())
            && self.ch1.e.iter().all(|c| c.is_integer())
    }

    pub fn add(&self, other: &NumClass) -> NumClass {
        NumClass {
            ch0: self.ch0 + other.ch0,
            ch1: Ch1 {
                h: &self.ch1.h + &other.ch1.h,
                x: zip_add(&self.ch1.x, &other.ch1.x),
                e: zip_add(&self.ch1.e, &other.ch1.e),
            },
            ch2: &self.ch2 + &other.ch2,
        }
    }

    pub fn sub(&self, other: &NumClass) -> NumClass {
        NumClass {
            ch0: self.ch0 - other.ch0,
            ch1: Ch1 {
                h: &self.ch1.h - &other.ch1.h,
                x: zip_sub(&self.ch1.x, &other.ch1.x),
                e: zip_sub(&self.ch1.e, &other.ch1.e),
            },
            ch2: &self.ch2 - &other.ch2,
        }
    }

    pub fn scale_int(&self, k: i64) -> NumClass {
        let f = rat_int(k);
        NumClass {
            ch0: self.ch0 * k,
            ch1: Ch1 {
                h: &self.ch1.h * &f,
                x: self.ch1.x.iter().map(|c| c * &f).collect(),
                e: self.ch1.e.iter().map(|c| c * &f).collect(),
            },
            ch2: &self.ch2 * &f,
        }
    }
}

fn zip_add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn zip_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// ch1 component of a pushed-forward class on the singular surface.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PushedCh1 {
    #[serde(rename = "H", with = "crate::rational::serde_ratio", default = "Rational::zero")]
    pub h: Rational,
    #[serde(with = "crate::rational::serde_ratio_vec", default)]
    pub x: Vec<Rational>,
}

/// Numerical class on the singular surface (basis `H, xbar_1..xbar_r`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PushedClass {
    pub ch0: i64,
    pub ch1: PushedCh1,
    #[serde(with = "crate::rational::serde_ratio", default = "Rational::zero")]
    pub ch2: Rational,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct SurfaceSpecRaw {
    ade: AdeType,
    h_square: i64,
    #[serde(default)]
    extra_rank: usize,
    #[serde(with = "crate::rational::serde_ratio_mat", default)]
    extra_gram: Vec<Vec<Rational>>,
}

/// Lattice model of the resolution of a surface with one ADE singularity.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "SurfaceSpecRaw", into = "SurfaceSpecRaw")]
pub struct SurfaceSpec {
    ade: AdeData,
    h_square: i64,
    extra_gram: Matrix,
    full_gram: Matrix,
}

impl TryFrom<SurfaceSpecRaw> for SurfaceSpec {
    type Error = Error;

    fn try_from(raw: SurfaceSpecRaw) -> Result<Self> {
        let extra_gram = if raw.extra_gram.is_empty() {
            vec![vec![rat_int(raw.h_square)]]
        } else {
            raw.extra_gram
        };
        if extra_gram.len() != raw.extra_rank + 1 {
            return Err(Error::BadBlock(format!(
                "extra_gram must be {0}x{0} for extra_rank {1}",
                raw.extra_rank + 1,
                raw.extra_rank
            )));
        }
        SurfaceSpec::new(raw.ade, raw.h_square, extra_gram)
    }
}

impl From<SurfaceSpec> for SurfaceSpecRaw {
    fn from(s: SurfaceSpec) -> SurfaceSpecRaw {
        SurfaceSpecRaw {
            ade: s.ade.ade_type(),
            h_square: s.h_square,
            extra_rank: s.extra_rank(),
            extra_gram: s.extra_gram,
        }
    }
}

impl SurfaceSpec {
    /// Builds the spec from an ADE type, `d = h^2`, and the Gram block of
    /// `(h, x_1..x_r)`. Shape errors are rejected here; numerical
    /// conditions (signature, symmetry) are the job of
    /// [`validate_surface`].
    pub fn new(ade: AdeType, h_square: i64, extra_gram: Matrix) -> Result<Self> {
        let ade = build_ade(ade)?;
        let k = extra_gram.len();
        if k == 0 || extra_gram.iter().any(|row| row.len() != k) {
            return Err(Error::BadBlock("extra_gram must be square".into()));
        }
        let n = ade.rank();
        let dim = k + n;
        let mut full = linalg::zeros(dim, dim);
        for (i, row) in extra_gram.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                full[i][j] = v.clone();
            }
        }
        for i in 0..n {
            for j in 0..n {
                full[k + i][k + j] = rat_int(ade.gram()[i][j]);
            }
        }
        Ok(SurfaceSpec {
            ade,
            h_square,
            extra_gram,
            full_gram: full,
        })
    }

    /// Convenience constructor with no extra block.
    pub fn simple(ade: AdeType, h_square: i64) -> Result<Self> {
        Self::new(ade, h_square, vec![vec![rat_int(h_square)]])
    }

    pub fn ade(&self) -> &AdeData {
        &self.ade
    }

    pub fn h_square(&self) -> i64 {
        self.h_square
    }

    pub fn rank(&self) -> usize {
        self.ade.rank()
    }

    pub fn extra_rank(&self) -> usize {
        self.extra_gram.len() - 1
    }

    pub fn extra_gram(&self) -> &Matrix {
        &self.extra_gram
    }

    /// Block-diagonal Gram of the full ch1 basis `(h, x.., e..)`.
    pub fn full_gram(&self) -> &Matrix {
        &self.full_gram
    }

    /// Dimension of the ch1 coordinate space (`1 + r + n`).
    pub fn ch1_dim(&self) -> usize {
        1 + self.extra_rank() + self.rank()
    }

    /// Dimension of the full class space (`ch0`, ch1 block, `ch2`).
    pub fn class_dim(&self) -> usize {
        2 + self.ch1_dim()
    }

    pub fn zero_class(&self) -> NumClass {
        NumClass::zero(self.extra_rank(), self.rank())
    }

    /// The kernel generator class `(0, e_i, 0)`, `i` 1-based.
    pub fn kernel_class(&self, i: usize) -> Result<NumClass> {
        self.check_curve_index(i)?;
        let mut c = self.zero_class();
        c.ch1.e[i - 1] = Rational::one();
        Ok(c)
    }

    pub fn check_curve_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.rank() {
            return Err(Error::IndexOutOfRange {
                index: i,
                rank: self.rank(),
            });
        }
        Ok(())
    }

    pub(crate) fn check_class(&self, v: &NumClass) -> Result<()> {
        if v.ch1.x.len() != self.extra_rank() || v.ch1.e.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.ch1_dim(),
                got: 1 + v.ch1.x.len() + v.ch1.e.len(),
            });
        }
        Ok(())
    }

    pub(crate) fn check_pushed(&self, w: &PushedClass) -> Result<()> {
        if w.ch1.x.len() != self.extra_rank() {
            return Err(Error::DimensionMismatch {
                expected: 1 + self.extra_rank(),
                got: 1 + w.ch1.x.len(),
            });
        }
        Ok(())
    }

    /// Embeds a vector of exceptional coefficients as a flat ch1 vector.
    pub fn embed_exceptional(&self, coeffs: &[Rational]) -> Result<Vec<Rational>> {
        if coeffs.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: coeffs.len(),
            });
        }
        let mut v = vec![Rational::zero(); self.ch1_dim()];
        v[1 + self.extra_rank()..].clone_from_slice(coeffs);
        Ok(v)
    }
}

/// Certificate from [`validate_surface`]: inertia of the full Gram.
#[derive(Debug, Clone, Serialize)]
pub struct SurfaceCertificate {
    pub inertia: (usize, usize, usize),
}

/// Checks `d > 0`, block conventions, and the Hodge-index signature
/// `(1, n + r - 1)` of the full Gram matrix by exact congruence
/// reduction.
pub fn validate_surface(spec: &SurfaceSpec) -> Result<SurfaceCertificate> {
    let eg = spec.extra_gram();
    if !linalg::is_symmetric(eg) {
        return Err(Error::BadBlock("extra_gram is not symmetric".into()));
    }
    if eg[0][0] != rat_int(spec.h_square()) {
        return Err(Error::BadBlock(
            "extra_gram[0][0] must equal h_square".into(),
        ));
    }
    let inertia = linalg::inertia(&spec.full_gram);
    let expected = (1, spec.ch1_dim() - 1, 0);
    if spec.h_square() <= 0 || inertia != expected {
        return Err(Error::BadSignature { inertia });
    }
    Ok(SurfaceCertificate { inertia })
}

/// Intersection pairing of two flat ch1 vectors through the block Gram.
pub fn intersect(spec: &SurfaceSpec, u: &[Rational], v: &[Rational]) -> Result<Rational> {
    let dim = spec.ch1_dim();
    if u.len() != dim || v.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: if u.len() != dim { u.len() } else { v.len() },
        });
    }
    Ok(linalg::dot(u, &linalg::mat_vec(&spec.full_gram, v)))
}

/// Intersection pairing of the ch1 parts of two classes.
pub fn intersect_ch1(spec: &SurfaceSpec, u: &Ch1, v: &Ch1) -> Result<Rational> {
    intersect(spec, &u.flat(), &v.flat())
}

/// Discriminant `ch1^2 - 2 ch0 ch2`.
pub fn discriminant(spec: &SurfaceSpec, v: &NumClass) -> Result<Rational> {
    spec.check_class(v)?;
    let c2 = intersect_ch1(spec, &v.ch1, &v.ch1)?;
    Ok(c2 - rat_int(2 * v.ch0) * &v.ch2)
}

/// Polarization of the discriminant:
/// `b(u, w) = ch1(u).ch1(w) - ch0(u) ch2(w) - ch2(u) ch0(w)`.
pub fn b_form(spec: &SurfaceSpec, u: &NumClass, w: &NumClass) -> Result<Rational> {
    spec.check_class(u)?;
    spec.check_class(w)?;
    let c = intersect_ch1(spec, &u.ch1, &w.ch1)?;
    Ok(c - rat_int(u.ch0) * &w.ch2 - &u.ch2 * rat_int(w.ch0))
}

/// Lattice pushforward: drops the exceptional components of ch1.
pub fn pushforward(spec: &SurfaceSpec, v: &NumClass) -> Result<PushedClass> {
    spec.check_class(v)?;
    Ok(PushedClass {
        ch0: v.ch0,
        ch1: PushedCh1 {
            h: v.ch1.h.clone(),
            x: v.ch1.x.clone(),
        },
        ch2: v.ch2.clone(),
    })
}

/// Orthogonal projection onto the kernel of the pushforward, with
/// respect to the polarized discriminant form. Returns the coefficient
/// vector `a` (so the projection is `sum a_i (0, e_i, 0)`) and the
/// projected class.
pub fn kernel_projection(spec: &SurfaceSpec, v: &NumClass) -> Result<(Vec<Rational>, NumClass)> {
    spec.check_class(v)?;
    let gram = spec.ade().gram_rational();
    let rhs: Vec<Rational> = (0..spec.rank())
        .map(|i| {
            gram[i]
                .iter()
                .zip(&v.ch1.e)
                .fold(Rational::zero(), |acc, (g, c)| acc + g * c)
        })
        .collect();
    let a = linalg::solve(&gram, &rhs)?;
    let mut projected = spec.zero_class();
    projected.ch1.e = a.clone();
    Ok((a, projected))
}

/// The unique preimage of `w` whose kernel-projection coefficients lie
/// in `[0, 1)`; with no kernel offset this is the preimage with zero
/// exceptional components.
pub fn lift(spec: &SurfaceSpec, w: &PushedClass) -> Result<NumClass> {
    lift_with_offset(spec, w, None)
}

/// Lift after adding a caller-chosen element of the kernel (given by
/// its exceptional coefficients) to the canonical preimage; the result
/// is reduced so that every kernel coefficient lies in `[0, 1)`.
pub fn lift_with_offset(
    spec: &SurfaceSpec,
    w: &PushedClass,
    offset: Option<&[Rational]>,
) -> Result<NumClass> {
    spec.check_pushed(w)?;
    let mut v = NumClass {
        ch0: w.ch0,
        ch1: Ch1 {
            h: w.ch1.h.clone(),
            x: w.ch1.x.clone(),
            e: vec![Rational::zero(); spec.rank()],
        },
        ch2: w.ch2.clone(),
    };
    if let Some(off) = offset {
        if off.len() != spec.rank() {
            return Err(Error::DimensionMismatch {
                expected: spec.rank(),
                got: off.len(),
            });
        }
        v.ch1.e.clone_from_slice(off);
    }
    reduce_kernel(spec, &v)
}

/// Subtracts the integer part of each kernel-projection coefficient,
/// leaving all coefficients in `[0, 1)`. Idempotent; the identity on
/// classes already reduced.
pub fn reduce_kernel(spec: &SurfaceSpec, v: &NumClass) -> Result<NumClass> {
    let (a, _) = kernel_projection(spec, v)?;
    let mut out = v.clone();
    for (c, ai) in out.ch1.e.iter_mut().zip(&a) {
        *c -= ai.floor();
    }
    Ok(out)
}

/// Euler pairing of the shifted kernel simple against `v`:
/// `e_i . ch1(v)` (`i` 1-based).
pub fn kernel_pairing(spec: &SurfaceSpec, i: usize, v: &NumClass) -> Result<Rational> {
    spec.check_curve_index(i)?;
    spec.check_class(v)?;
    let gram = spec.ade().gram_rational();
    Ok(gram[i - 1]
        .iter()
        .zip(&v.ch1.e)
        .fold(Rational::zero(), |acc, (g, c)| acc + g * c))
}

/// Discriminant on the singular surface (extra block only).
pub fn delta_pushed(spec: &SurfaceSpec, w: &PushedClass) -> Result<Rational> {
    spec.check_pushed(w)?;
    let mut flat = vec![w.ch1.h.clone()];
    flat.extend(w.ch1.x.iter().cloned());
    let c2 = linalg::dot(&flat, &linalg::mat_vec(spec.extra_gram(), &flat));
    Ok(c2 - rat_int(2 * w.ch0) * &w.ch2)
}

/// Computes `(Delta(v), Delta(pushforward v), Delta(push) >= Delta(v))`.
/// The boolean is always true; a false return certifies a bug.
pub fn delta_push_check(spec: &SurfaceSpec, v: &NumClass) -> Result<(Rational, Rational, bool)> {
    let dv = discriminant(spec, v)?;
    let dp = delta_pushed(spec, &pushforward(spec, v)?)?;
    let ok = dp >= dv;
    Ok((dv, dp, ok))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn spec(t: &str, d: i64) -> SurfaceSpec {
        SurfaceSpec::simple(t.parse().unwrap(), d).unwrap()
    }

    fn class(spec: &SurfaceSpec, ch0: i64, h: i64, e: &[i64], ch2: i64) -> NumClass {
        let mut c = spec.zero_class();
        c.ch0 = ch0;
        c.ch1.h = rat_int(h);
        for (ci, &v) in c.ch1.e.iter_mut().zip(e) {
            *ci = rat_int(v);
        }
        c.ch2 = rat_int(ch2);
        c
    }

    #[test]
    fn validate_examples() {
        assert_eq!(
            validate_surface(&spec("A1", 2)).unwrap().inertia,
            (1, 1, 0)
        );
        assert_eq!(
            validate_surface(&spec("A2", 2)).unwrap().inertia,
            (1, 2, 0)
        );
        assert!(matches!(
            validate_surface(&spec("A1", 0)),
            Err(Error::BadSignature { .. })
        ));
        let asym = SurfaceSpec::new(
            "A1".parse().unwrap(),
            2,
            vec![
                vec![rat_int(2), rat_int(1)],
                vec![rat_int(0), rat_int(-2)],
            ],
        )
        .unwrap();
        assert!(matches!(
            validate_surface(&asym),
            Err(Error::BadBlock(_))
        ));
    }

    #[test]
    fn intersect_examples() {
        let s1 = spec("A1", 2);
        let h = class(&s1, 0, 1, &[0], 0).ch1;
        let e1 = class(&s1, 0, 0, &[1], 0).ch1;
        assert_eq!(intersect_ch1(&s1, &h, &h).unwrap(), rat_int(2));
        assert_eq!(intersect_ch1(&s1, &e1, &e1).unwrap(), rat_int(-2));

        let s2 = spec("A2", 2);
        let e1 = class(&s2, 0, 0, &[1, 0], 0).ch1;
        let e2 = class(&s2, 0, 0, &[0, 1], 0).ch1;
        assert_eq!(intersect_ch1(&s2, &e1, &e2).unwrap(), rat_int(1));
    }

    #[test]
    fn intersect_dimension_mismatch() {
        let s = spec("A1", 2);
        assert!(matches!(
            intersect(&s, &[rat_int(1)], &[rat_int(1), rat_int(0)]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn discriminant_examples() {
        let s = spec("A1", 2);
        assert_eq!(
            discriminant(&s, &class(&s, 0, 0, &[1], 0)).unwrap(),
            rat_int(-2)
        );
        assert_eq!(
            discriminant(&s, &class(&s, 0, 0, &[0], 1)).unwrap(),
            rat_int(0)
        );
        assert_eq!(
            discriminant(&s, &class(&s, 1, 1, &[0], 0)).unwrap(),
            rat_int(2)
        );
    }

    #[test]
    fn pushforward_examples() {
        let s = spec("A2", 2);
        let v = class(&s, 0, 0, &[1, 0], 0);
        let p = pushforward(&s, &v).unwrap();
        assert_eq!(p.ch0, 0);
        assert!(p.ch1.h.is_zero());
        assert!(p.ch2.is_zero());

        let v = class(&s, 2, 1, &[2, 1], 3);
        let p = pushforward(&s, &v).unwrap();
        assert_eq!((p.ch0, p.ch1.h.clone(), p.ch2.clone()), (2, rat_int(1), rat_int(3)));

        let sky = class(&s, 0, 0, &[0, 0], 1);
        let p = pushforward(&s, &sky).unwrap();
        assert_eq!((p.ch0, p.ch2.clone()), (0, rat_int(1)));
    }

    #[test]
    fn kernel_projection_examples() {
        let s1 = spec("A1", 2);
        let v = class(&s1, 0, 0, &[1], 0);
        let (a, proj) = kernel_projection(&s1, &v).unwrap();
        assert_eq!(a, vec![rat_int(1)]);
        assert_eq!(proj, v);

        let s2 = spec("A2", 2);
        let v = class(&s2, 2, 1, &[2, 1], 3);
        let (a, _) = kernel_projection(&s2, &v).unwrap();
        assert_eq!(a, vec![rat_int(2), rat_int(1)]);

        let v = class(&s2, 1, 1, &[0, 0], 0);
        let (a, _) = kernel_projection(&s2, &v).unwrap();
        assert!(a.iter().all(|c| c.is_zero()));
    }

    #[test]
    fn lift_examples() {
        let s = spec("A2", 2);
        let w = PushedClass {
            ch0: 1,
            ch1: PushedCh1 {
                h: Rational::zero(),
                x: vec![],
            },
            ch2: Rational::zero(),
        };
        let v = lift(&s, &w).unwrap();
        assert_eq!(v, class(&s, 1, 0, &[0, 0], 0));

        let orig = class(&s, 2, 1, &[2, 1], 3);
        let lifted = lift(&s, &pushforward(&s, &orig).unwrap()).unwrap();
        assert_eq!(lifted, class(&s, 2, 1, &[0, 0], 3));

        let sky = PushedClass {
            ch0: 0,
            ch1: PushedCh1 {
                h: Rational::zero(),
                x: vec![],
            },
            ch2: rat_int(1),
        };
        assert_eq!(lift(&s, &sky).unwrap(), class(&s, 0, 0, &[0, 0], 1));
    }

    #[test]
    fn lift_with_offset_reduces_mod_one() {
        let s = spec("A1", 2);
        let w = PushedClass {
            ch0: 1,
            ch1: PushedCh1 {
                h: rat_int(1),
                x: vec![],
            },
            ch2: Rational::zero(),
        };
        let v = lift_with_offset(&s, &w, Some(&[rat(7, 2)])).unwrap();
        let (a, _) = kernel_projection(&s, &v).unwrap();
        assert_eq!(a, vec![rat(1, 2)]);
        // Idempotent through push/lift.
        let again = lift(&s, &pushforward(&s, &v).unwrap()).unwrap();
        let (a2, _) = kernel_projection(&s, &again).unwrap();
        assert!(a2[0].is_zero());
    }

    #[test]
    fn kernel_pairing_examples() {
        let s1 = spec("A1", 2);
        assert_eq!(
            kernel_pairing(&s1, 1, &class(&s1, 0, 0, &[1], 0)).unwrap(),
            rat_int(-2)
        );
        let s2 = spec("A2", 2);
        assert_eq!(
            kernel_pairing(&s2, 1, &class(&s2, 0, 0, &[0, 1], 0)).unwrap(),
            rat_int(1)
        );
        assert_eq!(
            kernel_pairing(&s2, 1, &class(&s2, 1, 1, &[0, 0], 5)).unwrap(),
            rat_int(0)
        );
        assert!(matches!(
            kernel_pairing(&s1, 2, &class(&s1, 0, 0, &[1], 0)),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn delta_push_examples() {
        let s1 = spec("A1", 2);
        let (dv, dp, ok) = delta_push_check(&s1, &class(&s1, 0, 0, &[1], 0)).unwrap();
        assert_eq!((dv, dp, ok), (rat_int(-2), rat_int(0), true));

        let (dv, dp, ok) = delta_push_check(&s1, &class(&s1, 1, 1, &[0], 0)).unwrap();
        assert_eq!((dv, dp, ok), (rat_int(2), rat_int(2), true));

        let s2 = spec("A2", 2);
        let (dv, dp, ok) = delta_push_check(&s2, &class(&s2, 2, 1, &[2, 1], 3)).unwrap();
        assert_eq!((dv, dp, ok), (rat_int(-16), rat_int(-10), true));
    }

    #[test]
    fn spec_json_round_trip() {
        let json = r#"{"ade":"A2","h_square":2,"extra_rank":0,"extra_gram":[[2]]}"#;
        let s: SurfaceSpec = serde_json::from_str(json).unwrap();
        assert_eq!(s.rank(), 2);
        assert_eq!(s.h_square(), 2);
        let back = serde_json::to_string(&s).unwrap();
        let s2: SurfaceSpec = serde_json::from_str(&back).unwrap();
        assert_eq!(s2.full_gram, s.full_gram);
    }

    #[test]
    fn class_json_round_trip() {
        let json = r#"{"ch0":2,"ch1":{"h":1,"e":[2,1],"x":[]},"ch2":3}"#;
        let v: NumClass = serde_json::from_str(json).unwrap();
        assert_eq!(v.ch0, 2);
        assert_eq!(v.ch1.e, vec![rat_int(2), rat_int(1)]);
        let s = serde_json::to_string(&v).unwrap();
        let v2: NumClass = serde_json::from_str(&s).unwrap();
        assert_eq!(v, v2);
    }
}
