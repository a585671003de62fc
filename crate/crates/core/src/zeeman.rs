//! Multiplet structure and the Zeeman effect, in exact arithmetic.
//!
//! Everything here is an exact identity, so floating point is banned:
//! quantum numbers are [`HalfInt`]s, g-factors and level slopes are
//! [`Rational`]s. The centerpiece is [`g_from_sum_rule`], which
//! reconstructs every weak-field g-factor of a multiplet purely from the
//! strong-field slopes M_L + 2 M_S via the g-permanence (trace) rule:
//! the sum of level energies at fixed M is linear in the field, so the
//! weak-field sum over g(J) M must equal the strong-field sum over
//! M_L + 2 M_S at the same M. Working down from M = L + S, each step
//! introduces exactly one new unknown g(J).

use std::collections::BTreeMap;

use num_rational::Ratio;
use num_traits::Zero;
use serde::Serialize;

use crate::error::Error;
use crate::exact::{HalfInt, Rational};
use crate::Result;

/// An (L, S) multiplet with its ladder of J values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermMultiplet {
    l: HalfInt,
    s: HalfInt,
}

impl TermMultiplet {
    /// L must be a nonnegative integer, S a nonnegative half-integer.
    pub fn new(l: HalfInt, s: HalfInt) -> Result<Self> {
        if !l.is_integer() || l.is_negative() {
            return Err(Error::InvalidQuantumNumber(format!(
                "L must be a nonnegative integer, got {l}"
            )));
        }
        if s.is_negative() {
            return Err(Error::InvalidQuantumNumber(format!(
                "S must be nonnegative, got {s}"
            )));
        }
        Ok(TermMultiplet { l, s })
    }

    pub fn l(&self) -> HalfInt {
        self.l
    }

    pub fn s(&self) -> HalfInt {
        self.s
    }

    /// J = L+S, L+S-1, ..., |L-S|; exactly 2 min(L,S) + 1 entries.
    pub fn j_values(&self) -> Vec<HalfInt> {
        (self.l + self.s).ladder_down((self.l - self.s).abs()).collect()
    }

    /// The multiplicity label 2S + 1.
    pub fn multiplicity(&self) -> i64 {
        self.s.twice() + 1
    }
}

/// One strong-field Zeeman state.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZeemanState {
    pub m_l: HalfInt,
    pub m_s: HalfInt,
    /// M = M_L + M_S.
    pub m: HalfInt,
    /// Level slope dE/(mu_0 B) = M_L + 2 M_S, exact.
    #[serde(serialize_with = "crate::exact::serialize_rational")]
    pub strong_field_slope: Rational,
}

/// Lande g-factor g = 3/2 + [S(S+1) - L(L+1)] / [2 J(J+1)], exact.
///
/// Fails with [`Error::GUndefinedAtJZero`] for J = 0 (the formula divides
/// by zero and a J = 0 term shows no Zeeman splitting).
pub fn lande_g(l: HalfInt, s: HalfInt, j: HalfInt) -> Result<Rational> {
    let term = TermMultiplet::new(l, s)?;
    if !term.j_values().contains(&j) {
        return Err(Error::JNotInLadder {
            l: l.to_string(),
            s: s.to_string(),
            j: j.to_string(),
        });
    }
    if j == HalfInt::ZERO {
        return Err(Error::GUndefinedAtJZero);
    }
    let num = s.times_self_plus_one() - l.times_self_plus_one();
    let den = j.times_self_plus_one() * Ratio::from(2);
    Ok(Ratio::new(3, 2) + num / den)
}

/// All (2L+1)(2S+1) strong-field states with their slopes M_L + 2 M_S,
/// ordered by descending M (then descending M_S).
pub fn strong_field_table(l: HalfInt, s: HalfInt) -> Result<Vec<ZeemanState>> {
    let term = TermMultiplet::new(l, s)?;
    let mut states = Vec::new();
    for m_l in term.l.ladder_down(-term.l) {
        for m_s in term.s.ladder_down(-term.s) {
            let slope = m_l.to_rational() + m_s.to_rational() * Ratio::from(2);
            states.push(ZeemanState {
                m_l,
                m_s,
                m: m_l + m_s,
                strong_field_slope: slope,
            });
        }
    }
    states.sort_by(|a, b| (b.m, b.m_s).cmp(&(a.m, a.m_s)));
    Ok(states)
}

/// Reconstruct every g(J) of the (L, S) multiplet from strong-field
/// slopes alone, by the sum rule applied recursively in descending M.
///
/// A J = 0 term (only possible when L = S) carries no splitting and is
/// excluded from the returned map.
pub fn g_from_sum_rule(l: HalfInt, s: HalfInt) -> Result<BTreeMap<HalfInt, Rational>> {
    let term = TermMultiplet::new(l, s)?;
    let states = strong_field_table(l, s)?;
    let j_min = (l - s).abs();
    let mut g = BTreeMap::new();

    for m in (l + s).ladder_down(j_min) {
        if m == HalfInt::ZERO {
            // J = 0: single state with slope 0 on both sides; no unknown.
            continue;
        }
        // strong-field sum at this M
        let strong: Rational = states
            .iter()
            .filter(|st| st.m == m)
            .map(|st| st.strong_field_slope)
            .sum();
        // weak-field sum: sum over J >= max(|M|, j_min) of g(J) * M,
        // where only g(m) is new at this step
        let known: Rational = term
            .j_values()
            .iter()
            .filter(|&&j| j > m)
            .map(|j| g[j] * m.to_rational())
            .sum();
        let new_count = term.j_values().iter().filter(|&&j| j == m).count();
        if new_count != 1 {
            // descending-M recursion guarantees one new unknown per step
            return Err(Error::InvalidInput(format!(
                "sum-rule recursion found {new_count} new unknowns at M={m} (internal bug)"
            )));
        }
        g.insert(m, (strong - known) / m.to_rational());
    }
    Ok(g)
}

/// Weak-field splitting of a (g, J) term: 2J+1 entries (M, M*g) with
/// M = J, J-1, ..., -J.
pub fn weak_field_splitting(g: Rational, j: HalfInt) -> Vec<(HalfInt, Rational)> {
    j.ladder_down(-j).map(|m| (m, g * m.to_rational())).collect()
}

/// Classification of a Zeeman transition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TransitionKind {
    Sigma,
    Pi,
    Forbidden,
}

/// Selection rules: sigma for dM = +-1, pi for dM = 0; dJ must be in
/// {0, +-1} with J = 0 -> J = 0 forbidden.
pub fn allowed_transitions(upper: (HalfInt, HalfInt), lower: (HalfInt, HalfInt)) -> TransitionKind {
    let (j_u, m_u) = upper;
    let (j_l, m_l) = lower;
    if m_u.abs() > j_u || m_l.abs() > j_l || j_u.is_negative() || j_l.is_negative() {
        return TransitionKind::Forbidden;
    }
    let dj = (j_u - j_l).twice().abs();
    if dj > 2 || (j_u == HalfInt::ZERO && j_l == HalfInt::ZERO) {
        return TransitionKind::Forbidden;
    }
    match (m_u - m_l).twice() {
        2 | -2 => TransitionKind::Sigma,
        0 => TransitionKind::Pi,
        _ => TransitionKind::Forbidden,
    }
}

/// Capacity 2(2l+1) of the subgroup with orbital number `ell`, with its
/// decomposition into j = l +- 1/2 sublevels of 2j+1 states each.
#[derive(Debug, Clone, Serialize)]
pub struct ShellCapacity {
    pub ell: u32,
    pub total: u64,
    /// (j, 2j+1) for each fine-structure sublevel.
    pub sublevels: Vec<(HalfInt, u64)>,
}

pub fn shell_capacity(ell: u32) -> ShellCapacity {
    let l = HalfInt::from_int(ell as i64);
    let mut sublevels = Vec::new();
    if ell > 0 {
        sublevels.push((l - HalfInt::HALF, 2 * ell as u64));
    }
    sublevels.push((l + HalfInt::HALF, 2 * ell as u64 + 2));
    ShellCapacity {
        ell,
        total: 2 * (2 * ell as u64 + 1),
        sublevels,
    }
}

/// Closed-shell sizes 2n^2 for n = 1..n_max, with cumulative sums.
#[derive(Debug, Clone, Serialize)]
pub struct ClosedShells {
    /// 2n^2 per shell.
    pub per_shell: Vec<u64>,
    /// Running totals (2, 10, 28, 60, ...).
    pub cumulative: Vec<u64>,
}

pub fn closed_shell_sizes(n_max: u32) -> ClosedShells {
    let per_shell: Vec<u64> = (1..=n_max as u64).map(|n| 2 * n * n).collect();
    let cumulative = per_shell
        .iter()
        .scan(0u64, |acc, &x| {
            *acc += x;
            Some(*acc)
        })
        .collect();
    ClosedShells {
        per_shell,
        cumulative,
    }
}

/// Which formula produced a relativistic correction factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CorrectionBranch {
    /// n = 1: exact (1 - alpha^2 Z^2)^{1/2}.
    Exact,
    /// n > 1: 1 - alpha^2 Z^2 / (2 n^2).
    Approximate,
}

#[derive(Debug, Clone, Serialize)]
pub struct RelativisticCorrection {
    pub factor: f64,
    pub branch: CorrectionBranch,
}

/// Relativistic correction factor to the magnetic moment of an electron
/// with principal quantum number `n` bound to charge `z`.
pub fn relativistic_correction(z: u32, n: u32, alpha: f64) -> Result<RelativisticCorrection> {
    if n < 1 {
        return Err(Error::InvalidQuantumNumber("n must be >= 1".into()));
    }
    let az = alpha * z as f64;
    if az >= 1.0 {
        return Err(Error::RelativisticDomain { alpha_z: az });
    }
    Ok(if n == 1 {
        RelativisticCorrection {
            factor: (1.0 - az * az).sqrt(),
            branch: CorrectionBranch::Exact,
        }
    } else {
        RelativisticCorrection {
            factor: 1.0 - az * az / (2.0 * (n * n) as f64),
            branch: CorrectionBranch::Approximate,
        }
    })
}

/// Mean of g(J) over the multiplet, weighting each J once.
pub fn mean_g(g: &BTreeMap<HalfInt, Rational>) -> Rational {
    if g.is_empty() {
        return Rational::zero();
    }
    let sum: Rational = g.values().copied().sum();
    sum / Ratio::from(g.len() as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(twice: i64) -> HalfInt {
        HalfInt::from_twice(twice)
    }

    #[test]
    fn j_ladder_structure() {
        let t = TermMultiplet::new(h(2), h(1)).unwrap(); // L=1, S=1/2
        assert_eq!(t.j_values(), vec![h(3), h(1)]);
        let t = TermMultiplet::new(h(6), h(2)).unwrap(); // L=3, S=1
        assert_eq!(t.j_values(), vec![h(8), h(6), h(4)]);
        assert_eq!(t.multiplicity(), 3);
    }

    #[test]
    fn lande_g_hand_values() {
        // S term of an alkali atom: g = 2
        assert_eq!(lande_g(h(0), h(1), h(1)).unwrap(), Ratio::from(2));
        // P_{3/2}: g = 4/3
        assert_eq!(lande_g(h(2), h(1), h(3)).unwrap(), Ratio::new(4, 3));
        // P_{1/2}: g = 2/3
        assert_eq!(lande_g(h(2), h(1), h(1)).unwrap(), Ratio::new(2, 3));
        // S = 0: classical Larmor value g = 1 for any L > 0
        assert_eq!(lande_g(h(4), h(0), h(4)).unwrap(), Ratio::from(1));
    }

    #[test]
    fn lande_g_rejects_bad_j() {
        assert!(matches!(
            lande_g(h(2), h(1), h(5)),
            Err(Error::JNotInLadder { .. })
        ));
        // L = S = 1/2-ladder down to J=0: singular
        assert!(matches!(
            lande_g(h(2), h(2), h(0)),
            Err(Error::GUndefinedAtJZero)
        ));
    }

    #[test]
    fn strong_field_doublet_slopes() {
        // L=0, S=1/2: slopes +1, -1
        let t = strong_field_table(h(0), h(1)).unwrap();
        let slopes: Vec<_> = t.iter().map(|s| s.strong_field_slope).collect();
        assert_eq!(slopes, vec![Ratio::from(1), Ratio::from(-1)]);
    }

    #[test]
    fn strong_field_p_doublet_slopes() {
        // L=1, S=1/2: six states with slopes 2,1,0,0,-1,-2
        let t = strong_field_table(h(2), h(1)).unwrap();
        assert_eq!(t.len(), 6);
        let mut slopes: Vec<_> = t.iter().map(|s| s.strong_field_slope).collect();
        slopes.sort();
        let want: Vec<Rational> = [-2, -1, 0, 0, 1, 2].iter().map(|&k| Ratio::from(k)).collect();
        assert_eq!(slopes, want);
    }

    #[test]
    fn strong_field_singlet() {
        let t = strong_field_table(h(0), h(0)).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].strong_field_slope, Ratio::from(0));
    }

    #[test]
    fn slope_is_m_plus_ms() {
        for st in strong_field_table(h(4), h(3)).unwrap() {
            assert_eq!(st.m, st.m_l + st.m_s);
            assert_eq!(
                st.strong_field_slope,
                st.m.to_rational() + st.m_s.to_rational()
            );
        }
    }

    #[test]
    fn sum_rule_reconstructs_p_doublet() {
        let g = g_from_sum_rule(h(2), h(1)).unwrap();
        assert_eq!(g[&h(3)], Ratio::new(4, 3));
        assert_eq!(g[&h(1)], Ratio::new(2, 3));
    }

    #[test]
    fn sum_rule_singlet_is_larmor() {
        let g = g_from_sum_rule(h(6), h(0)).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g[&h(6)], Ratio::from(1));
    }

    #[test]
    fn sum_rule_matches_lande_up_to_6() {
        for l2 in (0..=12).step_by(2) {
            for s2 in 0..=12 {
                let (l, s) = (h(l2), h(s2));
                let g = g_from_sum_rule(l, s).unwrap();
                for j in TermMultiplet::new(l, s).unwrap().j_values() {
                    if j == HalfInt::ZERO {
                        assert!(!g.contains_key(&j));
                    } else {
                        assert_eq!(g[&j], lande_g(l, s, j).unwrap(), "L={l} S={s} J={j}");
                    }
                }
            }
        }
    }

    #[test]
    fn mean_g_is_one_for_l_greater_than_s() {
        // The trace argument needs an M != 0 covered by every J of the
        // multiplet, i.e. |M| <= L - S, so the rule holds for L > S.
        // (At L = S only M = 0 has the full complement, which is vacuous:
        // L = S = 2 gives mean 6/5, not 1.)
        for l2 in (2..=12).step_by(2) {
            for s2 in 0..l2 {
                let g = g_from_sum_rule(h(l2), h(s2)).unwrap();
                assert_eq!(mean_g(&g), Ratio::from(1), "L={} S={}", l2 / 2, s2);
            }
        }
    }

    #[test]
    fn g_permanence_trace_form() {
        // for each M with the full complement of 2S+1 states (needs L >= S),
        // sum_J g(J) M == sum of strong-field slopes at that M
        let (l, s) = (h(8), h(3)); // L=4, S=3/2
        let g = g_from_sum_rule(l, s).unwrap();
        let table = strong_field_table(l, s).unwrap();
        for m in (l - s).ladder_down(-(l - s)) {
            let strong: Rational = table
                .iter()
                .filter(|st| st.m == m)
                .map(|st| st.strong_field_slope)
                .sum();
            let weak: Rational = g.values().map(|gj| *gj * m.to_rational()).sum();
            assert_eq!(weak, strong, "M={m}");
        }
    }

    #[test]
    fn weak_field_splitting_values() {
        let split = weak_field_splitting(Ratio::from(2), h(1));
        assert_eq!(split, vec![(h(1), Ratio::from(1)), (h(-1), Ratio::from(-1))]);
        let split = weak_field_splitting(Ratio::from(1), h(2));
        assert_eq!(split.len(), 3);
        assert_eq!(split[1], (h(0), Ratio::from(0)));
    }

    #[test]
    fn m_grouping_counts_match() {
        // number of strong-field states at each M equals the number of
        // weak-field (J, M) states at the same M
        let (l, s) = (h(4), h(3));
        let table = strong_field_table(l, s).unwrap();
        let term = TermMultiplet::new(l, s).unwrap();
        for m in (l + s).ladder_down(-(l + s)) {
            let strong = table.iter().filter(|st| st.m == m).count();
            let weak = term.j_values().iter().filter(|&&j| j >= m.abs()).count();
            assert_eq!(strong, weak, "M={m}");
        }
    }

    #[test]
    fn transitions() {
        use TransitionKind::*;
        // dM=+1, dJ=-1: sigma
        assert_eq!(allowed_transitions((h(2), h(2)), (h(4), h(0))), Sigma);
        // dM=0, J: 1 -> 1: pi
        assert_eq!(allowed_transitions((h(2), h(0)), (h(2), h(0))), Pi);
        // J=0 -> J=0: forbidden
        assert_eq!(allowed_transitions((h(0), h(0)), (h(0), h(0))), Forbidden);
        // dJ = 2: forbidden
        assert_eq!(allowed_transitions((h(4), h(0)), (h(0), h(0))), Forbidden);
        // dM = 2: forbidden
        assert_eq!(allowed_transitions((h(4), h(4)), (h(4), h(0))), Forbidden);
        // |M| > J: forbidden
        assert_eq!(allowed_transitions((h(0), h(2)), (h(2), h(0))), Forbidden);
    }

    #[test]
    fn shell_capacities() {
        assert_eq!(shell_capacity(0).total, 2);
        assert_eq!(shell_capacity(1).total, 6);
        assert_eq!(shell_capacity(2).total, 10);
        // sublevel split for l=1: j=1/2 holds 2, j=3/2 holds 4
        let c = shell_capacity(1);
        assert_eq!(c.sublevels, vec![(h(1), 2), (h(3), 4)]);
        // sum over sublevels equals total
        for ell in 0..8 {
            let c = shell_capacity(ell);
            assert_eq!(c.sublevels.iter().map(|&(_, k)| k).sum::<u64>(), c.total);
        }
    }

    #[test]
    fn closed_shell_numbers() {
        let shells = closed_shell_sizes(4);
        assert_eq!(shells.per_shell, vec![2, 8, 18, 32]);
        assert_eq!(shells.cumulative, vec![2, 10, 28, 60]);
        // 2n^2 = sum over l < n of 2(2l+1)
        for n in 1..10u32 {
            let direct = 2 * (n * n) as u64;
            let summed: u64 = (0..n).map(|l| shell_capacity(l).total).sum();
            assert_eq!(direct, summed);
        }
    }

    #[test]
    fn relativistic_correction_branches() {
        let alpha = crate::constants::codata().alpha;
        let r = relativistic_correction(0, 1, alpha).unwrap();
        assert_eq!(r.factor, 1.0);
        assert_eq!(r.branch, CorrectionBranch::Exact);

        let r = relativistic_correction(1, 1, alpha).unwrap();
        assert!((r.factor - (1.0 - alpha * alpha).sqrt()).abs() < 1e-15);
        assert!((r.factor - 0.999_973_37).abs() < 1e-7);

        let r = relativistic_correction(20, 2, alpha).unwrap();
        assert_eq!(r.branch, CorrectionBranch::Approximate);
        assert!((r.factor - (1.0 - alpha * alpha * 400.0 / 8.0)).abs() < 1e-15);

        assert!(relativistic_correction(200, 1, alpha).is_err());
    }
}
