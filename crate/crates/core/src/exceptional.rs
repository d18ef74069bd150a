//! Class-level combinatorics on the exceptional locus: simple classes,
//! Jordan-Holder multiplicities, the skyscraper filtration, and the
//! normalization walk that replays the semistable-lift argument.

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::cmp::Ordering;

use crate::charge::{charge, compare_phase, phase_class, ChargeParams, ChargeValue, PhaseClass};
use crate::error::{Error, Result};
use crate::rational::{rat_int, Rational};
use crate::root_data::cartan_select;
use crate::surface::{kernel_projection, NumClass, SurfaceSpec};

/// The three families of simple classes supported on the exceptional
/// locus: the fundamental-cycle structure sheaf, the shifted kernel
/// simples, and the skyscraper.
#[derive(Debug, Clone, Serialize)]
pub struct SimpleClasses {
    pub opi: NumClass,
    pub s: Vec<NumClass>,
    pub ox: NumClass,
}

/// Builds the simple classes and asserts the telescoping identity
/// `opi + sum m_i s_i = ox`.
pub fn simple_classes(spec: &SurfaceSpec) -> SimpleClasses {
    let n = spec.rank();
    let mut opi = spec.zero_class();
    for (c, &m) in opi.ch1.e.iter_mut().zip(spec.ade().fund_cycle()) {
        *c = rat_int(m);
    }
    opi.ch2 = Rational::one();

    let s: Vec<NumClass> = (0..n)
        .map(|i| {
            let mut c = spec.zero_class();
            c.ch1.e[i] = -Rational::one();
            c
        })
        .collect();

    let mut ox = spec.zero_class();
    ox.ch2 = Rational::one();

    let mut telescoped = opi.clone();
    for (si, &m) in s.iter().zip(spec.ade().fund_cycle()) {
        telescoped = telescoped.add(&si.scale_int(m));
    }
    assert_eq!(telescoped, ox, "telescoping identity must hold");

    SimpleClasses { opi, s, ox }
}

/// Jordan-Holder multiplicities `(n0; n_1..n_n)` of an exceptional
/// class: `v = n0 opi + sum n_i s_i`, or `None` when some multiplicity
/// would be negative or non-integral.
pub fn decompose(spec: &SurfaceSpec, v: &NumClass) -> Result<Option<(i64, Vec<i64>)>> {
    spec.check_class(v)?;
    let exceptional =
        v.ch0 == 0 && v.ch1.h.is_zero() && v.ch1.x.iter().all(|c| c.is_zero());
    if !exceptional {
        return Err(Error::NotExceptionalClass(format!(
            "ch0 = {}, ch1 must lie in the exceptional span",
            v.ch0
        )));
    }
    if !v.ch2.is_integer() {
        return Ok(None);
    }
    let n0 = v.ch2.to_integer();
    if n0.is_negative() {
        return Ok(None);
    }
    let mut kernel = Vec::with_capacity(spec.rank());
    for (c, &m) in v.ch1.e.iter().zip(spec.ade().fund_cycle()) {
        let ni = &v.ch2 * rat_int(m) - c;
        if !ni.is_integer() || ni.is_negative() {
            return Ok(None);
        }
        kernel.push(i64::try_from(ni.to_integer()).expect("multiplicity fits i64"));
    }
    Ok(Some((
        i64::try_from(n0).expect("multiplicity fits i64"),
        kernel,
    )))
}

/// One peel step of the skyscraper filtration.
#[derive(Debug, Clone, Serialize)]
pub struct FiltrationStep {
    /// 1-based index of the peeled curve.
    pub curve: usize,
    pub multiplicity: i64,
    pub divisor_before: Vec<i64>,
    pub divisor_after: Vec<i64>,
}

/// Jordan-Holder factor multiset of the filtration.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct FactorMultiset {
    pub opi: i64,
    pub s: Vec<i64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FiltrationReport {
    /// 1-based target curve index.
    pub target: usize,
    pub steps: Vec<FiltrationStep>,
    pub factors: FactorMultiset,
    pub telescoping_ok: bool,
}

fn support_connected_containing(
    adjacency: &[(usize, usize)],
    divisor: &[i64],
    target0: usize,
) -> bool {
    if divisor[target0] <= 0 {
        return false;
    }
    let n = divisor.len();
    let mut seen = vec![false; n];
    let mut stack = vec![target0];
    seen[target0] = true;
    while let Some(u) = stack.pop() {
        for &(a, b) in adjacency {
            let v = if a == u {
                b
            } else if b == u {
                a
            } else {
                continue;
            };
            if !seen[v] && divisor[v] > 0 {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    divisor
        .iter()
        .enumerate()
        .all(|(i, &m)| m <= 0 || seen[i])
}

fn tree_distances(adjacency: &[(usize, usize)], n: usize, from: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; n];
    dist[from] = 0;
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        for &(a, b) in adjacency {
            let v = if a == u {
                b
            } else if b == u {
                a
            } else {
                continue;
            };
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Greedy peel from the fundamental cycle down to the reduced target
/// curve. Each step removes `n = -(D . e_a)` copies of a curve `a` with
/// `D . e_a < 0`, keeping the divisor effective with connected support
/// containing the target; among valid curves the one farthest from the
/// target is peeled first (smallest index on ties). The removal
/// multiplicity keeps `D^2 = -2` along the way, so every intermediate
/// class `(0, D, 1)` pushes to the skyscraper class downstairs.
pub fn skyscraper_filtration(spec: &SurfaceSpec, target: usize) -> Result<FiltrationReport> {
    spec.check_curve_index(target)?;
    let n = spec.rank();
    let target0 = target - 1;
    let gram = spec.ade().gram();
    let adjacency = spec.ade().adjacency();
    let dist = tree_distances(adjacency, n, target0);

    let mut divisor: Vec<i64> = spec.ade().fund_cycle().to_vec();
    let mut reduced_target = vec![0i64; n];
    reduced_target[target0] = 1;

    let mut steps = Vec::new();
    let mut s_mult = vec![0i64; n];
    while divisor != reduced_target {
        let pairings: Vec<i64> = gram
            .iter()
            .map(|row| row.iter().zip(&divisor).map(|(&g, &m)| g * m).sum())
            .collect();
        let mut best: Option<usize> = None;
        for a in 0..n {
            if pairings[a] >= 0 {
                continue;
            }
            let mult = -pairings[a];
            let mut next = divisor.clone();
            next[a] -= mult;
            if next[a] < 0 || !support_connected_containing(adjacency, &next, target0) {
                continue;
            }
            best = match best {
                None => Some(a),
                Some(b) => {
                    // Farthest from the target wins; ties break to the
                    // smaller index, which the scan order provides.
                    if dist[a] > dist[b] {
                        Some(a)
                    } else {
                        Some(b)
                    }
                }
            };
        }
        let Some(a) = best else {
            return Err(Error::Stuck {
                divisor,
                target,
            });
        };
        let mult = -pairings[a];
        let before = divisor.clone();
        divisor[a] -= mult;
        s_mult[a] += mult;
        steps.push(FiltrationStep {
            curve: a + 1,
            multiplicity: mult,
            divisor_before: before,
            divisor_after: divisor.clone(),
        });
    }
    // The final surjection onto the skyscraper contributes one more
    // shifted simple at the target curve.
    s_mult[target0] += 1;

    let simples = simple_classes(spec);
    let mut telescoped = simples.opi.clone();
    for (si, &m) in simples.s.iter().zip(&s_mult) {
        telescoped = telescoped.add(&si.scale_int(m));
    }
    let telescoping_ok = telescoped == simples.ox;

    Ok(FiltrationReport {
        target,
        steps,
        factors: FactorMultiset {
            opi: 1,
            s: s_mult,
        },
        telescoping_ok,
    })
}

/// The first strict-inequality failure in a phase chain.
#[derive(Debug, Clone, Serialize)]
pub struct PhaseViolation {
    pub left: String,
    pub right: String,
    pub left_charge: ChargeValue,
    pub right_charge: ChargeValue,
}

#[derive(Debug, Clone, Serialize)]
pub struct PhaseChainReport {
    pub holds: bool,
    pub first_violation: Option<PhaseViolation>,
}

/// Checks the strict phase chain of the filtration under the
/// eta-deformed charge:
/// `phi(O_Pi) < phi(O_D_1) < .. < phi(O_x) = 1 < phi(S_i)` for all i.
pub fn phase_chain_check(
    spec: &SurfaceSpec,
    params: &ChargeParams,
    report: &FiltrationReport,
) -> Result<PhaseChainReport> {
    let simples = simple_classes(spec);
    let mut chain: Vec<(String, NumClass)> = Vec::new();
    chain.push(("O_Pi".to_owned(), simples.opi.clone()));
    for (k, step) in report.steps.iter().enumerate() {
        let mut c = spec.zero_class();
        for (ci, &m) in c.ch1.e.iter_mut().zip(&step.divisor_after) {
            *ci = rat_int(m);
        }
        c.ch2 = Rational::one();
        chain.push((format!("O_D{}", k + 1), c));
    }
    chain.push(("O_x".to_owned(), simples.ox.clone()));

    let charges: Vec<(String, ChargeValue)> = chain
        .iter()
        .map(|(name, c)| Ok((name.clone(), charge(spec, params, c)?)))
        .collect::<Result<_>>()?;

    let violation = |left: &(String, ChargeValue), right: &(String, ChargeValue)| PhaseViolation {
        left: left.0.clone(),
        right: right.0.clone(),
        left_charge: left.1.clone(),
        right_charge: right.1.clone(),
    };

    for pair in charges.windows(2) {
        if compare_phase(&pair[0].1, &pair[1].1) != Ordering::Less {
            return Ok(PhaseChainReport {
                holds: false,
                first_violation: Some(violation(&pair[0], &pair[1])),
            });
        }
    }
    let ox_entry = charges.last().expect("chain is nonempty");
    if phase_class(&ox_entry.1) != PhaseClass::NegativeReal {
        return Ok(PhaseChainReport {
            holds: false,
            first_violation: Some(violation(ox_entry, ox_entry)),
        });
    }
    for (i, si) in simples.s.iter().enumerate() {
        let zi = charge(spec, params, si)?;
        let entry = (format!("S_{}", i + 1), zi);
        if compare_phase(&ox_entry.1, &entry.1) != Ordering::Less {
            return Ok(PhaseChainReport {
                holds: false,
                first_violation: Some(violation(ox_entry, &entry)),
            });
        }
    }
    Ok(PhaseChainReport {
        holds: true,
        first_violation: None,
    })
}

/// One step of the normalization walk.
#[derive(Debug, Clone, Serialize)]
pub struct WalkStep {
    /// 1-based curve index whose shifted simple was added or removed.
    pub curve: usize,
    /// True when a copy of `(0, -e_k, 0)` was added (coefficient
    /// decreased); false when one was removed.
    pub added: bool,
    pub class: NumClass,
}

#[derive(Debug, Clone, Serialize)]
pub struct NormalizeWalk {
    pub start: NumClass,
    pub steps: Vec<WalkStep>,
}

impl NormalizeWalk {
    pub fn endpoint(&self) -> &NumClass {
        self.steps.last().map_or(&self.start, |s| &s.class)
    }
}

/// Replays the class-level lifting walk: while some kernel coefficient
/// is >= 1, add a shifted kernel simple at a curve with coefficient
/// >= 1 and negative pairing (falling back to any positive coefficient
/// with negative pairing, which the selection lemma guarantees); while
/// some coefficient is negative, remove one at the index the selection
/// lemma provides. Terminates with all coefficients in `[0, 1)`; on
/// integral input the endpoint equals `lift(pushforward(input))`.
pub fn normalize_walk(spec: &SurfaceSpec, v: &NumClass) -> Result<NormalizeWalk> {
    let (mut coeffs, _) = kernel_projection(spec, v)?;
    let mass: Rational = coeffs
        .iter()
        .fold(Rational::zero(), |acc, c| acc + c.abs());
    let cap = usize::try_from(mass.ceil().to_integer())
        .unwrap_or(usize::MAX / 8)
        .saturating_mul(spec.rank())
        .saturating_mul(4);

    let mut current = v.clone();
    let mut steps = Vec::new();
    let one = Rational::one();
    loop {
        if let Some(_k) = coeffs.iter().position(|c| *c >= one) {
            let pairings = spec.ade().curve_pairings(&coeffs)?;
            let preferred = coeffs
                .iter()
                .zip(&pairings)
                .position(|(c, p)| *c >= one && p.is_negative());
            let k = match preferred {
                Some(k) => k,
                None => {
                    let negated: Vec<Rational> = coeffs.iter().map(|c| -c).collect();
                    cartan_select(spec.ade(), &negated)?
                        .ok_or(Error::InternalContradiction)?
                        - 1
                }
            };
            current.ch1.e[k] -= &one;
            coeffs[k] -= &one;
            steps.push(WalkStep {
                curve: k + 1,
                added: true,
                class: current.clone(),
            });
        } else if coeffs.iter().any(|c| c.is_negative()) {
            let l = cartan_select(spec.ade(), &coeffs)?
                .ok_or(Error::InternalContradiction)?
                - 1;
            current.ch1.e[l] += &one;
            coeffs[l] += &one;
            steps.push(WalkStep {
                curve: l + 1,
                added: false,
                class: current.clone(),
            });
        } else {
            break;
        }
        if steps.len() > cap {
            return Err(Error::WalkNonTermination { cap });
        }
    }
    debug_assert!(coeffs
        .iter()
        .all(|c| !c.is_negative() && *c < one));
    Ok(NormalizeWalk {
        start: v.clone(),
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charge::find_beta;
    use crate::rational::rat;
    use crate::surface::{lift, pushforward};

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
    fn simple_classes_examples() {
        let s1 = spec("A1", 2);
        let sc = simple_classes(&s1);
        assert_eq!(sc.opi, class(&s1, 0, 0, &[1], 1));
        assert_eq!(sc.s[0], class(&s1, 0, 0, &[-1], 0));
        assert_eq!(sc.ox, class(&s1, 0, 0, &[0], 1));
        assert_eq!(sc.opi.add(&sc.s[0]), sc.ox);

        let s2 = spec("A2", 2);
        let sc = simple_classes(&s2);
        assert_eq!(sc.opi, class(&s2, 0, 0, &[1, 1], 1));
        assert_eq!(sc.opi.add(&sc.s[0]).add(&sc.s[1]), sc.ox);

        let d4 = spec("D4", 2);
        let sc = simple_classes(&d4);
        let rebuilt = sc
            .opi
            .add(&sc.s[0].scale_int(2))
            .add(&sc.s[1])
            .add(&sc.s[2])
            .add(&sc.s[3]);
        assert_eq!(rebuilt, sc.ox);
    }

    #[test]
    fn decompose_examples() {
        let s1 = spec("A1", 2);
        assert_eq!(
            decompose(&s1, &class(&s1, 0, 0, &[0], 1)).unwrap(),
            Some((1, vec![1]))
        );
        assert_eq!(
            decompose(&s1, &class(&s1, 0, 0, &[1], 2)).unwrap(),
            Some((2, vec![1]))
        );
        assert_eq!(decompose(&s1, &class(&s1, 0, 0, &[3], 2)).unwrap(), None);
        assert!(matches!(
            decompose(&s1, &class(&s1, 1, 0, &[0], 1)),
            Err(Error::NotExceptionalClass(_))
        ));
        assert!(matches!(
            decompose(&s1, &class(&s1, 0, 1, &[0], 1)),
            Err(Error::NotExceptionalClass(_))
        ));
    }

    #[test]
    fn filtration_a2_target2() {
        let s = spec("A2", 2);
        let r = skyscraper_filtration(&s, 2).unwrap();
        assert_eq!(r.steps.len(), 1);
        assert_eq!(r.steps[0].curve, 1);
        assert_eq!(r.steps[0].multiplicity, 1);
        assert_eq!(r.steps[0].divisor_after, vec![0, 1]);
        assert_eq!(r.factors, FactorMultiset { opi: 1, s: vec![1, 1] });
        assert!(r.telescoping_ok);
    }

    #[test]
    fn filtration_a1_no_steps() {
        let s = spec("A1", 2);
        let r = skyscraper_filtration(&s, 1).unwrap();
        assert!(r.steps.is_empty());
        assert_eq!(r.factors, FactorMultiset { opi: 1, s: vec![1] });
        assert!(r.telescoping_ok);
    }

    #[test]
    fn filtration_d4_leaf_target() {
        let s = spec("D4", 2);
        let r = skyscraper_filtration(&s, 2).unwrap();
        assert!(r.telescoping_ok);
        // Factor multiset equals the decomposition of the skyscraper.
        let (n0, ns) = decompose(&s, &simple_classes(&s).ox).unwrap().unwrap();
        assert_eq!(r.factors.opi, n0);
        assert_eq!(r.factors.s, ns);
        assert_eq!(r.factors.s, vec![2, 1, 1, 1]);
    }

    #[test]
    fn phase_chain_a1() {
        let s = spec("A1", 2);
        let p = ChargeParams::standard(vec![rat(-1, 4)], rat_int(1)).with_eta(rat(1, 10));
        let r = skyscraper_filtration(&s, 1).unwrap();
        let chain = phase_chain_check(&s, &p, &r).unwrap();
        assert!(chain.holds, "violation: {:?}", chain.first_violation);
    }

    #[test]
    fn phase_chain_a2_four_terms() {
        let s = spec("A2", 2);
        let beta = find_beta(&s, &rat(1, 3)).unwrap();
        let p = ChargeParams::standard(beta, rat_int(1))
            .with_epsilon(rat(1, 2))
            .with_eta(rat(1, 100));
        let r = skyscraper_filtration(&s, 2).unwrap();
        let chain = phase_chain_check(&s, &p, &r).unwrap();
        assert!(chain.holds);
    }

    #[test]
    fn phase_chain_fails_without_eta() {
        let s = spec("A1", 2);
        let p = ChargeParams::standard(vec![rat(-1, 4)], rat_int(1));
        let r = skyscraper_filtration(&s, 1).unwrap();
        let chain = phase_chain_check(&s, &p, &r).unwrap();
        assert!(!chain.holds);
        assert!(chain.first_violation.is_some());
    }

    #[test]
    fn walk_a2_three_steps() {
        let s = spec("A2", 2);
        let v = class(&s, 2, 1, &[2, 1], 3);
        let w = normalize_walk(&s, &v).unwrap();
        assert_eq!(w.steps.len(), 3);
        assert_eq!(w.endpoint(), &class(&s, 2, 1, &[0, 0], 3));
        assert_eq!(
            w.endpoint(),
            &lift(&s, &pushforward(&s, &v).unwrap()).unwrap()
        );
    }

    #[test]
    fn walk_already_reduced_is_empty() {
        let s = spec("A2", 2);
        let mut v = class(&s, 1, 1, &[0, 0], 0);
        v.ch1.e[0] = rat(1, 2);
        let w = normalize_walk(&s, &v).unwrap();
        assert!(w.steps.is_empty());
        assert_eq!(w.endpoint(), &v);
    }

    #[test]
    fn walk_negative_coefficient() {
        let s = spec("A1", 2);
        let v = class(&s, 0, 0, &[-1], 0);
        let w = normalize_walk(&s, &v).unwrap();
        assert_eq!(w.steps.len(), 1);
        assert!(!w.steps[0].added);
        assert_eq!(w.endpoint(), &class(&s, 0, 0, &[0], 0));
    }

    #[test]
    fn walk_non_integral_coefficients_terminate_in_unit_box() {
        let s = spec("D4", 2);
        let mut v = s.zero_class();
        v.ch1.e = vec![rat_int(1), rat(9, 10), rat(9, 10), rat(9, 10)];
        let w = normalize_walk(&s, &v).unwrap();
        let (a, _) = kernel_projection(&s, w.endpoint()).unwrap();
        assert!(a
            .iter()
            .all(|c| !c.is_negative() && *c < rat_int(1)));
    }
}
