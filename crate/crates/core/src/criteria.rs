//! Sufficient conditions for injectivity of the differential of the Prym map,
//! and exact analysis of Abel–Prym collisions in the group ring.
//!
//! A verdict of [`TriState::Fails`] only says that a sufficient criterion does
//! not apply; it never asserts that the differential fails to be injective.
//!
//! Some hypotheses live on the curve rather than on the combinatorial type
//! (the Clifford index, gonality, existence of sections). Those enter as
//! caller-supplied [`Assumptions`] and are echoed back in every report that
//! relied on them.

use serde::{Deserialize, Serialize};

use crate::cover::CoverSpec;
use crate::error::Result;
use crate::group::{Character, FiniteAbelianGroup, GroupElement, GroupRingElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TriState {
    Holds,
    Fails,
    NotApplicable,
}

/// A verdict together with the inequality instance that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub state: TriState,
    pub detail: String,
}

impl Verdict {
    fn new(state: TriState, detail: impl Into<String>) -> Self {
        Verdict {
            state,
            detail: detail.into(),
        }
    }

    fn from_bool(holds: bool, detail: impl Into<String>) -> Self {
        let state = if holds { TriState::Holds } else { TriState::Fails };
        Self::new(state, detail)
    }

    pub fn holds(&self) -> bool {
        self.state == TriState::Holds
    }
}

/// Facts about the curve that cannot be read off a [`CoverSpec`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assumptions {
    /// Clifford index of the base curve.
    pub clifford_index: Option<u64>,
    /// The cover curve carries no `g^1_{2^h}`.
    pub not_g1_2h: Option<bool>,
    /// `L_chi` and `L_{chi^-1}` have nonzero sections whenever both degrees are positive.
    pub global_sections: Option<bool>,
}

/// `n` even and `cl(C) >= 3`.
pub fn etale_even_clifford(n: u64, clifford: u64) -> Verdict {
    Verdict::from_bool(
        n.is_multiple_of(2) && clifford >= 3,
        format!(
            "n = {n} is {}, cl = {clifford} {} 3",
            if n.is_multiple_of(2) { "even" } else { "odd" },
            if clifford >= 3 { ">=" } else { "<" }
        ),
    )
}

/// `cl(C) >= 2n - 1`.
pub fn etale_clifford_2n1(n: u64, clifford: u64) -> Verdict {
    let bound = 2 * n - 1;
    Verdict::from_bool(
        clifford >= bound,
        format!(
            "cl = {clifford} {} 2n - 1 = {bound}",
            if clifford >= bound { ">=" } else { "<" }
        ),
    )
}

/// `n >= 2` and `g >= 7`; a statement about the generic point of the moduli space.
pub fn generic_finiteness_bound(n: u64, genus: u64) -> Verdict {
    Verdict::from_bool(
        n >= 2 && genus >= 7,
        format!("n = {n} (need >= 2), g = {genus} (need >= 7); generic, not pointwise"),
    )
}

/// `(n_i even and d_i >= 6)` or `(n_i odd and d_i >= 7)`.
pub fn reduced_clause(n_i: u64, d_i: u64) -> bool {
    if n_i.is_multiple_of(2) {
        d_i >= 6
    } else {
        d_i >= 7
    }
}

/// Which half of the character criterion fired.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CharacterClause {
    /// `d_chi >= 3` and `d_{chi^-1} >= 3`.
    BothAtLeastThree,
    /// Both bundles have sections (asserted) and `d_chi + d_{chi^-1} >= 5`.
    SectionsAndSumFive,
}

/// Character criterion at a single pair of degrees. The second clause needs
/// `sections_asserted`; positive degrees are then taken as carrying sections.
pub fn character_clause(d: u64, d_inv: u64, sections_asserted: bool) -> Option<CharacterClause> {
    if d >= 3 && d_inv >= 3 {
        Some(CharacterClause::BothAtLeastThree)
    } else if sections_asserted && d >= 1 && d_inv >= 1 && d + d_inv >= 5 {
        Some(CharacterClause::SectionsAndSumFive)
    } else {
        None
    }
}

/// `h0_3 <= t (h0_1 + h0_2) - t^2`, evaluated over the integers.
pub fn metabelian_inequality(t: u64, h0_1: u64, h0_2: u64, h0_3: u64) -> bool {
    let rhs = t as i128 * (h0_1 as i128 + h0_2 as i128) - (t as i128) * (t as i128);
    h0_3 as i128 <= rhs
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriteriaReport {
    pub etale_even_clifford: Verdict,
    pub etale_clifford_2n1: Verdict,
    pub generic_finiteness: Verdict,
    pub ramified_reduced: Verdict,
    /// Generator index `i` that satisfied the reduced-data criterion.
    pub ramified_witness: Option<usize>,
    pub character_condition: Verdict,
    pub character_witness: Option<Character>,
    pub character_clause: Option<CharacterClause>,
    pub assumptions_used: Vec<String>,
}

impl CriteriaReport {
    pub fn compute(spec: &CoverSpec, assumptions: &Assumptions) -> Result<Self> {
        spec.ensure_admissible()?;
        let mut assumptions_used = Vec::new();
        let (etale_even_clifford, etale_clifford_2n1) =
            check_etale(spec, assumptions.clifford_index, &mut assumptions_used);
        let generic_finiteness = check_generic_finiteness(spec);
        let (ramified_reduced, ramified_witness) = check_ramified_reduced(spec)?;
        let (character_condition, character_witness, character_clause) =
            check_character_condition(spec, assumptions.global_sections.unwrap_or(false))?;
        if character_clause == Some(CharacterClause::SectionsAndSumFive) {
            assumptions_used.push("global_sections: L_chi and L_chi^-1 have nonzero sections".into());
        }
        Ok(CriteriaReport {
            etale_even_clifford,
            etale_clifford_2n1,
            generic_finiteness,
            ramified_reduced,
            ramified_witness,
            character_condition,
            character_witness,
            character_clause,
            assumptions_used,
        })
    }

    /// True if some pointwise sufficient condition holds. Generic finiteness
    /// is not pointwise and does not count.
    pub fn some_sufficient_condition_holds(&self) -> bool {
        [
            &self.etale_even_clifford,
            &self.etale_clifford_2n1,
            &self.ramified_reduced,
            &self.character_condition,
        ]
        .iter()
        .any(|v| v.holds())
    }
}

/// Both étale criteria; not applicable to ramified covers or when no
/// Clifford index was supplied.
pub fn check_etale(
    spec: &CoverSpec,
    clifford_index: Option<u64>,
    assumptions_used: &mut Vec<String>,
) -> (Verdict, Verdict) {
    if !spec.is_etale() {
        let na = || Verdict::new(TriState::NotApplicable, format!("cover is ramified (r = {})", spec.branch_count()));
        return (na(), na());
    }
    let Some(cl) = clifford_index else {
        let na = || Verdict::new(TriState::NotApplicable, "no clifford_index assumption supplied");
        return (na(), na());
    };
    assumptions_used.push(format!("clifford_index = {cl}"));
    let n = spec.group().order();
    (etale_even_clifford(n, cl), etale_clifford_2n1(n, cl))
}

pub fn check_generic_finiteness(spec: &CoverSpec) -> Verdict {
    if !spec.is_etale() {
        return Verdict::new(
            TriState::NotApplicable,
            format!("cover is ramified (r = {})", spec.branch_count()),
        );
    }
    generic_finiteness_bound(spec.group().order(), spec.base_genus())
}

/// Reduced building data criterion over the distinguished generators.
pub fn check_ramified_reduced(spec: &CoverSpec) -> Result<(Verdict, Option<usize>)> {
    if spec.base_genus() < 2 {
        return Ok((
            Verdict::new(TriState::NotApplicable, format!("g = {} < 2", spec.base_genus())),
            None,
        ));
    }
    let reduced = spec.reduced()?;
    let pairs: Vec<(u64, u64)> = reduced
        .generator_orders
        .iter()
        .copied()
        .zip(reduced.row_sums.iter().copied())
        .collect();
    let witness = pairs.iter().position(|&(n, d)| reduced_clause(n, d));
    let verdict = match witness {
        Some(i) => {
            let (n, d) = pairs[i];
            Verdict::from_bool(
                true,
                format!("generator {i}: n_i = {n}, d_i = {d} >= {}", if n % 2 == 0 { 6 } else { 7 }),
            )
        }
        None => Verdict::from_bool(
            false,
            format!("no generator with (n_i even, d_i >= 6) or (n_i odd, d_i >= 7); (n_i, d_i) = {pairs:?}"),
        ),
    };
    Ok((verdict, witness))
}

/// First character (in enumeration order) satisfying the character criterion.
pub fn check_character_condition(
    spec: &CoverSpec,
    sections_asserted: bool,
) -> Result<(Verdict, Option<Character>, Option<CharacterClause>)> {
    if spec.base_genus() < 2 {
        return Ok((
            Verdict::new(TriState::NotApplicable, format!("g = {} < 2", spec.base_genus())),
            None,
            None,
        ));
    }
    let data = spec.build()?;
    for x in 1..data.characters().len() {
        let d = data.degree_at(x);
        let d_inv = data.degree_at(data.inverse_index(x));
        if let Some(clause) = character_clause(d, d_inv, sections_asserted) {
            let chi = data.characters()[x].clone();
            let detail = match clause {
                CharacterClause::BothAtLeastThree => {
                    format!("{chi}: d_chi = {d} >= 3 and d_chi^-1 = {d_inv} >= 3")
                }
                CharacterClause::SectionsAndSumFive => format!(
                    "{chi}: sections asserted, d_chi + d_chi^-1 = {d} + {d_inv} >= 5"
                ),
            };
            return Ok((Verdict::from_bool(true, detail), Some(chi), Some(clause)));
        }
    }
    let detail = if sections_asserted {
        "no character with both degrees >= 3 or positive degrees summing to >= 5"
    } else {
        "no character with both degrees >= 3 (second clause needs the global_sections assumption)"
    };
    Ok((Verdict::from_bool(false, detail), None, None))
}

/// How two Abel–Prym images are compared.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CollisionTest {
    /// `e * gamma = e`: the divisors `e(p)` and `e(gamma p)` coincide exactly.
    Strict,
    /// `e * gamma = +-e`: after moving the negative part of each side across,
    /// the two effective divisors are built from the same orbit points with
    /// the same multiplicities up to the overall sign. This is the relation
    /// that survives once a generator has order 2.
    #[default]
    Signed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisFlags {
    pub all_generator_orders_gt_2: bool,
    pub unramified: Option<bool>,
    pub not_g1_2h_assumed: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AbelPrymConclusion {
    /// All hypotheses hold and the cover is unramified.
    Injective,
    /// All hypotheses hold: `u(p) = u(q)` only for ramification points.
    CollisionsOnlyAtRamification,
    /// Some hypothesis fails or was not asserted.
    NoConclusion,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelPrymReport {
    pub group: FiniteAbelianGroup,
    pub test: CollisionTest,
    /// Nonzero `gamma` colliding under `test`, in lexicographic order.
    pub collisions: Vec<GroupElement>,
    /// Nonzero `gamma` with `e * gamma = e` exactly.
    pub strict_collisions: Vec<GroupElement>,
    pub injective_on_unramified: bool,
    pub hypotheses: HypothesisFlags,
    pub conclusion: Option<AbelPrymConclusion>,
}

/// `e = (1 - sigma_1) ... (1 - sigma_h)`.
pub fn abel_prym_element(group: &FiniteAbelianGroup) -> GroupRingElement {
    let one = GroupRingElement::one(group);
    (0..group.rank()).fold(one.clone(), |acc, i| {
        let sigma = GroupRingElement::basis(group, group.generator(i));
        &acc * &(&one - &sigma)
    })
}

/// Collision set of the Abel–Prym map on points with free orbits.
///
/// For such a point `p` the divisor `e(gamma p)` has coefficient
/// `(e * gamma)_x` at `x p`, so comparing divisors is comparing
/// `e * gamma` with `e` in `Z[G]`.
pub fn abel_prym_collisions(
    group: &FiniteAbelianGroup,
    test: CollisionTest,
    max_order: u64,
) -> Result<AbelPrymReport> {
    group.ensure_order_at_most(max_order)?;
    let e = abel_prym_element(group);
    let minus_e = -&e;
    let mut collisions = Vec::new();
    let mut strict_collisions = Vec::new();
    for gamma in group.elements().skip(1) {
        let shifted = e.translate(&gamma);
        let strict = shifted == e;
        if strict {
            strict_collisions.push(gamma.clone());
        }
        let hit = match test {
            CollisionTest::Strict => strict,
            CollisionTest::Signed => strict || shifted == minus_e,
        };
        if hit {
            collisions.push(gamma);
        }
    }
    Ok(AbelPrymReport {
        group: group.clone(),
        test,
        injective_on_unramified: collisions.is_empty(),
        collisions,
        strict_collisions,
        hypotheses: HypothesisFlags {
            all_generator_orders_gt_2: group.orders().iter().all(|&m| m > 2),
            unramified: None,
            not_g1_2h_assumed: None,
        },
        conclusion: None,
    })
}

/// Collision analysis combined with the hypotheses of the injectivity
/// statement: every generator of order `> 2` and no `g^1_{2^h}` on the cover.
pub fn abel_prym_hypotheses(
    spec: &CoverSpec,
    not_g1_2h: Option<bool>,
    test: CollisionTest,
    max_order: u64,
) -> Result<AbelPrymReport> {
    let mut report = abel_prym_collisions(spec.group(), test, max_order)?;
    report.hypotheses.unramified = Some(spec.is_etale());
    report.hypotheses.not_g1_2h_assumed = not_g1_2h;
    let hypotheses_hold = report.hypotheses.all_generator_orders_gt_2 && not_g1_2h == Some(true);
    report.conclusion = Some(if !hypotheses_hold {
        AbelPrymConclusion::NoConclusion
    } else if spec.is_etale() {
        AbelPrymConclusion::Injective
    } else {
        AbelPrymConclusion::CollisionsOnlyAtRamification
    });
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(orders: &[u64], g: u64, labels: &[&[u64]]) -> CoverSpec {
        CoverSpec::from_coords(orders, g, labels).unwrap()
    }

    fn group(orders: &[u64]) -> FiniteAbelianGroup {
        FiniteAbelianGroup::new(orders.to_vec()).unwrap()
    }

    #[test]
    fn etale_thresholds() {
        let a = etale_even_clifford(4, 3);
        let b = etale_clifford_2n1(4, 3);
        assert_eq!((a.state, b.state), (TriState::Holds, TriState::Fails));
        assert!(b.detail.contains("7"));
        let a = etale_even_clifford(3, 5);
        let b = etale_clifford_2n1(3, 5);
        assert_eq!((a.state, b.state), (TriState::Fails, TriState::Holds));
        // flips exactly at the quoted bounds
        assert!(!etale_even_clifford(4, 2).holds());
        assert!(!etale_even_clifford(5, 100).holds());
        assert!(etale_clifford_2n1(4, 7).holds());
        assert!(!etale_clifford_2n1(4, 6).holds());
    }

    #[test]
    fn etale_checks_on_specs() {
        let mut used = Vec::new();
        let (a, b) = check_etale(&spec(&[2], 0, &[&[1], &[1]]), Some(5), &mut used);
        assert_eq!((a.state, b.state), (TriState::NotApplicable, TriState::NotApplicable));
        let (a, _) = check_etale(&spec(&[2], 3, &[]), None, &mut used);
        assert_eq!(a.state, TriState::NotApplicable);
        assert!(used.is_empty());
        let (a, b) = check_etale(&spec(&[4], 3, &[]), Some(3), &mut used);
        assert_eq!((a.state, b.state), (TriState::Holds, TriState::Fails));
        assert_eq!(used, vec!["clifford_index = 3".to_string()]);
    }

    #[test]
    fn generic_finiteness_thresholds() {
        assert!(generic_finiteness_bound(2, 7).holds());
        assert!(!generic_finiteness_bound(2, 6).holds());
        assert!(!generic_finiteness_bound(1, 9).holds());
        assert_eq!(check_generic_finiteness(&spec(&[2], 7, &[])).state, TriState::Holds);
        assert_eq!(
            check_generic_finiteness(&spec(&[2], 7, &[&[1], &[1]])).state,
            TriState::NotApplicable
        );
    }

    #[test]
    fn reduced_thresholds() {
        assert!(reduced_clause(2, 6));
        assert!(!reduced_clause(2, 5));
        assert!(!reduced_clause(3, 6));
        assert!(reduced_clause(3, 7));
        let (v, w) = check_ramified_reduced(&spec(&[2], 2, &[])).unwrap();
        assert_eq!((v.state, w), (TriState::Fails, None));
        let (v, _) = check_ramified_reduced(&spec(&[2], 1, &[&[1], &[1]])).unwrap();
        assert_eq!(v.state, TriState::NotApplicable);
        // six points with label 1 in Z/2: d_1 = 6
        let s = spec(&[2], 2, &[&[1u64][..]; 6]);
        let (v, w) = check_ramified_reduced(&s).unwrap();
        assert_eq!((v.state, w), (TriState::Holds, Some(0)));
        // Z/3 with labels (1,1,1,1,1,1,2,1): d_1 = 8 >= 7
        let s = spec(&[3], 2, &[&[1], &[1], &[1], &[1], &[1], &[1], &[2], &[1]]);
        assert_eq!(s.reduced().unwrap().row_sums, vec![9]);
        assert!(check_ramified_reduced(&s).unwrap().0.holds());
        // Z/3 with d_1 = 6 fails
        let s = spec(&[3], 2, &[&[1], &[1], &[1], &[1], &[1], &[1]]);
        assert_eq!(s.reduced().unwrap().row_sums, vec![6]);
        assert!(!check_ramified_reduced(&s).unwrap().0.holds());
    }

    #[test]
    fn character_thresholds() {
        assert_eq!(character_clause(3, 3, false), Some(CharacterClause::BothAtLeastThree));
        assert_eq!(character_clause(2, 3, false), None);
        assert_eq!(character_clause(2, 3, true), Some(CharacterClause::SectionsAndSumFive));
        assert_eq!(character_clause(2, 2, true), None);
        assert_eq!(character_clause(0, 5, true), None);
        assert_eq!(character_clause(1, 4, true), Some(CharacterClause::SectionsAndSumFive));
    }

    #[test]
    fn character_condition_on_specs() {
        let (v, w, _) = check_character_condition(&spec(&[2], 2, &[]), true).unwrap();
        assert_eq!((v.state, w), (TriState::Fails, None));
        // Z/2 with six branch points: d_chi = 3 = d_chi^-1
        let s = spec(&[2], 2, &[&[1u64][..]; 6]);
        let (v, w, clause) = check_character_condition(&s, false).unwrap();
        assert!(v.holds());
        assert_eq!(w, Some(s.group().character(&[1]).unwrap()));
        assert_eq!(clause, Some(CharacterClause::BothAtLeastThree));
        let report = CriteriaReport::compute(&s, &Assumptions::default()).unwrap();
        assert!(report.some_sufficient_condition_holds());
        assert!(report.assumptions_used.is_empty());
    }

    #[test]
    fn character_second_clause_records_assumption() {
        let chi = FiniteAbelianGroup::cyclic(3).unwrap().character(&[1]).unwrap();
        let inv = FiniteAbelianGroup::cyclic(3).unwrap().character(&[2]).unwrap();
        // d = (2, 3)
        let s = spec(&[3], 2, &[&[1], &[1], &[1], &[1], &[2]]);
        let data = s.build().unwrap();
        assert_eq!((data.degree(&chi), data.degree(&inv)), (2, 3));
        let off = CriteriaReport::compute(&s, &Assumptions::default()).unwrap();
        assert_eq!(off.character_condition.state, TriState::Fails);
        let on = CriteriaReport::compute(
            &s,
            &Assumptions {
                global_sections: Some(true),
                ..Assumptions::default()
            },
        )
        .unwrap();
        assert!(on.character_condition.holds());
        assert_eq!(on.character_clause, Some(CharacterClause::SectionsAndSumFive));
        assert_eq!(on.assumptions_used.len(), 1);
    }

    #[test]
    fn metabelian_inequality_examples() {
        assert!(metabelian_inequality(2, 5, 5, 16));
        assert!(!metabelian_inequality(2, 3, 3, 9));
        assert!(metabelian_inequality(2, 3, 3, 8));
        assert!(!metabelian_inequality(3, 1, 1, 0));
    }

    /// Oracle for collisions that never touches `GroupRingElement`: compare
    /// the coefficient vectors of `e(p)` and `e(gamma p)` on the free orbit of
    /// `p` directly, sign included.
    fn divisor_oracle(group: &FiniteAbelianGroup) -> (Vec<GroupElement>, Vec<GroupElement>) {
        let n = group.order() as usize;
        let mut e = vec![0i64; n];
        for subset in 0u32..(1 << group.rank()) {
            let mut x = group.zero();
            for i in 0..group.rank() {
                if subset & (1 << i) != 0 {
                    x = group.add(&x, &group.generator(i));
                }
            }
            e[group.index_of(&x)] += if subset.count_ones() % 2 == 0 { 1 } else { -1 };
        }
        let mut strict = Vec::new();
        let mut signed = Vec::new();
        for gamma in group.elements().skip(1) {
            let mut shifted = vec![0i64; n];
            for (i, &c) in e.iter().enumerate() {
                shifted[group.index_of(&group.add(&group.element_at(i), &gamma))] += c;
            }
            if shifted == e {
                strict.push(gamma.clone());
            }
            if shifted == e || shifted.iter().zip(&e).all(|(a, b)| *a == -b) {
                signed.push(gamma);
            }
        }
        (strict, signed)
    }

    #[test]
    fn klein_four_counterexample() {
        let v4 = group(&[2, 2]);
        let s1s2 = v4.element(&[1, 1]).unwrap();
        let report = abel_prym_collisions(&v4, CollisionTest::Strict, 64).unwrap();
        assert_eq!(report.collisions, vec![s1s2.clone()]);
        let report = abel_prym_collisions(&v4, CollisionTest::Signed, 64).unwrap();
        assert!(report.collisions.contains(&s1s2));
        assert!(!report.injective_on_unramified);
        assert!(!report.hypotheses.all_generator_orders_gt_2);
    }

    #[test]
    fn no_collisions_when_orders_exceed_two() {
        for orders in [&[3, 3][..], &[5], &[3], &[4, 3], &[5, 5]] {
            let g = group(orders);
            for test in [CollisionTest::Strict, CollisionTest::Signed] {
                let report = abel_prym_collisions(&g, test, 64).unwrap();
                assert!(report.collisions.is_empty(), "{orders:?}");
                assert!(report.injective_on_unramified);
            }
            let (strict, signed) = divisor_oracle(&g);
            assert!(strict.is_empty() && signed.is_empty());
        }
    }

    #[test]
    fn single_involution() {
        let z2 = group(&[2]);
        let strict = abel_prym_collisions(&z2, CollisionTest::Strict, 64).unwrap();
        assert!(strict.collisions.is_empty());
        let signed = abel_prym_collisions(&z2, CollisionTest::Signed, 64).unwrap();
        assert_eq!(signed.collisions, vec![z2.generator(0)]);
        assert_eq!(divisor_oracle(&z2).1, vec![z2.generator(0)]);
    }

    #[test]
    fn collisions_match_divisor_oracle() {
        for orders in [&[2][..], &[2, 2], &[2, 3], &[2, 4], &[4, 2, 2], &[2, 2, 2], &[2, 2, 2, 2], &[6], &[2, 6]] {
            let g = group(orders);
            let (strict, signed) = divisor_oracle(&g);
            assert_eq!(abel_prym_collisions(&g, CollisionTest::Strict, 64).unwrap().collisions, strict);
            assert_eq!(abel_prym_collisions(&g, CollisionTest::Signed, 64).unwrap().collisions, signed);
        }
    }

    #[test]
    fn hypotheses_conclusions() {
        let r = abel_prym_hypotheses(&spec(&[3, 3], 2, &[]), Some(true), CollisionTest::Signed, 64).unwrap();
        assert_eq!(r.conclusion, Some(AbelPrymConclusion::Injective));
        let r = abel_prym_hypotheses(&spec(&[2, 2], 2, &[]), Some(true), CollisionTest::Signed, 64).unwrap();
        assert_eq!(r.conclusion, Some(AbelPrymConclusion::NoConclusion));
        assert!(!r.collisions.is_empty());
        let r = abel_prym_hypotheses(&spec(&[5], 0, &[&[1], &[4]]), Some(true), CollisionTest::Signed, 64).unwrap();
        assert_eq!(r.conclusion, Some(AbelPrymConclusion::CollisionsOnlyAtRamification));
        let r = abel_prym_hypotheses(&spec(&[5], 0, &[&[1], &[4]]), None, CollisionTest::Signed, 64).unwrap();
        assert_eq!(r.conclusion, Some(AbelPrymConclusion::NoConclusion));
    }

    #[test]
    fn collision_bound() {
        assert!(abel_prym_collisions(&group(&[9, 9]), CollisionTest::Signed, 64).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn character_clause_is_monotone(d in 0u64..12, e in 0u64..12, bump in 0u64..4, flag: bool) {
                if character_clause(d, e, flag).is_some() {
                    prop_assert!(character_clause(d + bump, e, flag).is_some());
                    prop_assert!(character_clause(d, e + bump, flag).is_some());
                }
            }

            #[test]
            fn reduced_clause_is_monotone(n in 2u64..10, d in 0u64..20, bump in 0u64..5) {
                if reduced_clause(n, d) {
                    prop_assert!(reduced_clause(n, d + bump));
                }
            }

            #[test]
            fn metabelian_inequality_is_monotone(t in 1u64..5, a in 0u64..20, b in 0u64..20, c in 0u64..60, bump in 0u64..5) {
                if metabelian_inequality(t, a, b, c) {
                    prop_assert!(metabelian_inequality(t, a + bump, b, c));
                    prop_assert!(metabelian_inequality(t, a, b + bump, c));
                    prop_assert!(metabelian_inequality(t, a, b, c.saturating_sub(bump)));
                }
            }
        }
    }
}
