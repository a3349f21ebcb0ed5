//! Metabelian covers `X -> Z -> Y` with `A` normal abelian and `N = G/A` abelian.
//!
//! The group is given by the presentation
//! `sigma_i tau_j = tau_j sigma^{r_{.ij}}`, `tau_j^{a_j} = sigma^{k_{.j}}`;
//! conjugation by `tau_j` is recorded as the images
//! `tau_j^{-1} sigma_i tau_j` in `A`. The cover is modelled as an abelian
//! `N`-cover `q: Z -> Y` together with the `A`-branch data of `p: X -> Z`,
//! grouped into `N`-orbits of points of `Z`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::cover::CoverSpec;
use crate::criteria::metabelian_inequality;
use crate::error::{Error, Result};
use crate::group::{Character, FiniteAbelianGroup, GroupElement};
use crate::invariants::genus_rh;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetabelianPresentation {
    abelian: FiniteAbelianGroup,
    quotient: FiniteAbelianGroup,
    /// `conjugation[j][i] = tau_j^{-1} sigma_i tau_j`.
    conjugation: Vec<Vec<GroupElement>>,
    /// `lifts[j] = tau_j^{a_j}`.
    lifts: Vec<GroupElement>,
    /// Multipliers `delta_ij` of `tau_j^{a_j}` on the eigensheaves. Stored, never used.
    multipliers: Option<Vec<Vec<u64>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationReport {
    pub valid: bool,
    /// First relation that failed, in checking order.
    pub failure: Option<String>,
}

impl MetabelianPresentation {
    /// `quotient` has orders `a_j`; `conjugation[j][i]` and `lifts[j]` are
    /// exponent vectors over the generators of `abelian`.
    pub fn new(
        abelian: FiniteAbelianGroup,
        quotient: FiniteAbelianGroup,
        conjugation: Vec<Vec<Vec<u64>>>,
        lifts: Vec<Vec<u64>>,
    ) -> Result<Self> {
        let l = quotient.rank();
        let s = abelian.rank();
        if conjugation.len() != l || lifts.len() != l {
            return Err(Error::InvalidPresentation(format!(
                "expected conjugation and lift data for {l} quotient generators, got {} and {}",
                conjugation.len(),
                lifts.len()
            )));
        }
        let conjugation = conjugation
            .iter()
            .map(|images| {
                if images.len() != s {
                    return Err(Error::InvalidPresentation(format!(
                        "conjugation needs images of all {s} generators of A, got {}",
                        images.len()
                    )));
                }
                images.iter().map(|c| abelian.element(c)).collect()
            })
            .collect::<Result<Vec<Vec<_>>>>()?;
        let lifts = lifts
            .iter()
            .map(|c| abelian.element(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(MetabelianPresentation {
            abelian,
            quotient,
            conjugation,
            lifts,
            multipliers: None,
        })
    }

    pub fn with_multipliers(mut self, multipliers: Vec<Vec<u64>>) -> Self {
        self.multipliers = Some(multipliers);
        self
    }

    pub fn abelian(&self) -> &FiniteAbelianGroup {
        &self.abelian
    }

    pub fn quotient(&self) -> &FiniteAbelianGroup {
        &self.quotient
    }

    pub fn conjugation(&self) -> &[Vec<GroupElement>] {
        &self.conjugation
    }

    pub fn lifts(&self) -> &[GroupElement] {
        &self.lifts
    }

    pub fn multipliers(&self) -> Option<&[Vec<u64>]> {
        self.multipliers.as_deref()
    }

    /// `|G| = |A| |N|`.
    pub fn order(&self) -> u64 {
        self.abelian.order() * self.quotient.order()
    }

    /// `x -> tau_j^{-1} x tau_j`, extended additively from the generator images.
    pub fn conjugate(&self, j: usize, x: &GroupElement) -> GroupElement {
        let a = &self.abelian;
        x.coords()
            .iter()
            .zip(&self.conjugation[j])
            .fold(a.zero(), |acc, (&c, image)| a.add(&acc, &a.scale(image, c)))
    }

    fn conjugate_pow(&self, j: usize, x: &GroupElement, gamma: u64) -> GroupElement {
        (0..gamma).fold(x.clone(), |acc, _| self.conjugate(j, &acc))
    }

    pub fn validate(&self) -> PresentationReport {
        match self.first_failure() {
            None => PresentationReport {
                valid: true,
                failure: None,
            },
            Some(failure) => PresentationReport {
                valid: false,
                failure: Some(failure),
            },
        }
    }

    fn first_failure(&self) -> Option<String> {
        let a = &self.abelian;
        let l = self.quotient.rank();
        for j in 0..l {
            for (i, &m) in a.orders().iter().enumerate() {
                let image = &self.conjugation[j][i];
                if !a.scale(image, m).is_zero() {
                    return Some(format!(
                        "tau_{j} conjugates sigma_{i} (order {m}) to {image} of order {}",
                        a.element_order(image)
                    ));
                }
            }
            let images: BTreeSet<usize> = a.elements().map(|x| a.index_of(&self.conjugate(j, &x))).collect();
            if images.len() as u64 != a.order() {
                return Some(format!("conjugation by tau_{j} is not a bijection of A"));
            }
        }
        for j in 0..l {
            for k in (j + 1)..l {
                for i in 0..a.rank() {
                    let s = a.generator(i);
                    if self.conjugate(j, &self.conjugate(k, &s)) != self.conjugate(k, &self.conjugate(j, &s)) {
                        return Some(format!("conjugations by tau_{j} and tau_{k} do not commute on sigma_{i}"));
                    }
                }
            }
        }
        for j in 0..l {
            let period = self.quotient.orders()[j];
            for i in 0..a.rank() {
                let s = a.generator(i);
                if self.conjugate_pow(j, &s, period) != s {
                    return Some(format!(
                        "tau_{j}^{period} lies in A but its conjugation moves sigma_{i}"
                    ));
                }
            }
        }
        for j in 0..l {
            for k in 0..l {
                if self.conjugate(k, &self.lifts[j]) != self.lifts[j] {
                    return Some(format!(
                        "tau_{k} does not commute with tau_{j}^{} = {}",
                        self.quotient.orders()[j],
                        self.lifts[j]
                    ));
                }
            }
        }
        None
    }

    fn check_j(&self, j: usize) -> Result<()> {
        if j >= self.quotient.rank() {
            return Err(Error::InvalidPresentation(format!(
                "quotient generator {j} out of range ({} generators)",
                self.quotient.rank()
            )));
        }
        Ok(())
    }

    /// `chi^(gamma)_j (sigma_u) = chi(tau_j^{-gamma} sigma_u tau_j^gamma)`.
    pub fn twisted_character(&self, chi: &Character, j: usize, gamma: u64) -> Result<Character> {
        self.check_j(j)?;
        let a = &self.abelian;
        let mut coords = Vec::with_capacity(a.rank());
        for (u, &m) in a.orders().iter().enumerate() {
            let image = self.conjugate_pow(j, &a.generator(u), gamma);
            let value = a.pair(chi, &image)?;
            if m % value.denominator() != 0 {
                return Err(Error::InvalidPresentation(format!(
                    "twisted value {value} on sigma_{u} is not an {m}-th root of unity"
                )));
            }
            coords.push(value.numerator() * (m / value.denominator()));
        }
        a.character(&coords)
    }

    /// Orbits of `A^*` under all twists `chi -> chi^(1)_j`, each sorted, ordered by
    /// their smallest member; the first orbit is `{1}`.
    pub fn character_orbits(&self) -> Result<Vec<Vec<Character>>> {
        let mut seen = BTreeSet::new();
        let mut orbits = Vec::new();
        for chi in self.abelian.dual_enumerate() {
            if seen.contains(&chi) {
                continue;
            }
            let mut orbit = BTreeSet::from([chi.clone()]);
            let mut frontier = vec![chi];
            while let Some(c) = frontier.pop() {
                for j in 0..self.quotient.rank() {
                    let next = self.twisted_character(&c, j, 1)?;
                    if orbit.insert(next.clone()) {
                        frontier.push(next);
                    }
                }
            }
            seen.extend(orbit.iter().cloned());
            orbits.push(orbit.into_iter().collect());
        }
        Ok(orbits)
    }
}

/// Points of `Z` forming one `N`-orbit, with the inertia label in `A` of each.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberOrbit {
    /// Index of the branch point of `q` underneath, or `None` if the orbit lies
    /// over a point where `q` is unramified.
    pub over: Option<usize>,
    pub labels: Vec<GroupElement>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetabelianCoverData {
    presentation: MetabelianPresentation,
    quotient_spec: CoverSpec,
    fiber: Vec<FiberOrbit>,
    intermediate_genus: u64,
    fiber_spec: CoverSpec,
}

/// Bounds on an `h^0`; `exact` means `lower` is the value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct H0Estimate {
    pub degree: i64,
    pub lower: u64,
    pub upper: Option<u64>,
    pub exact: bool,
}

impl MetabelianCoverData {
    pub fn new(
        presentation: MetabelianPresentation,
        quotient_spec: CoverSpec,
        fiber: Vec<FiberOrbit>,
    ) -> Result<Self> {
        if let Some(failure) = presentation.validate().failure {
            return Err(Error::InvalidPresentation(failure));
        }
        if quotient_spec.group() != presentation.quotient() {
            return Err(Error::ShapeMismatch {
                left: presentation.quotient().orders().to_vec(),
                right: quotient_spec.group().orders().to_vec(),
            });
        }
        quotient_spec.ensure_admissible()?;
        let a = presentation.abelian();
        let t = presentation.quotient().order();
        let q_orders = quotient_spec.branch_orders();
        let mut used = BTreeSet::new();
        for (o, orbit) in fiber.iter().enumerate() {
            let expected = match orbit.over {
                Some(y) => {
                    let e_q = *q_orders.get(y).ok_or(Error::BranchIndex {
                        index: y,
                        count: q_orders.len(),
                    })?;
                    if !used.insert(y) {
                        return Err(Error::Inadmissible(format!(
                            "two fiber orbits lie over branch point {y} of the quotient cover"
                        )));
                    }
                    t / e_q
                }
                None => t,
            };
            if orbit.labels.len() as u64 != expected {
                return Err(Error::Inadmissible(format!(
                    "fiber orbit {o} has {} points; an N-orbit there has {expected}",
                    orbit.labels.len()
                )));
            }
            let orders: BTreeSet<u64> = orbit
                .labels
                .iter()
                .map(|h| a.contains(h).map(|_| a.element_order(h)))
                .collect::<Result<_>>()?;
            if orders.contains(&1) {
                return Err(Error::Inadmissible(format!("fiber orbit {o} has a trivial label")));
            }
            if orders.len() > 1 {
                return Err(Error::Inadmissible(format!(
                    "labels of fiber orbit {o} have different orders {orders:?}"
                )));
            }
            let multiset = label_multiset(a, &orbit.labels);
            for j in 0..presentation.quotient().rank() {
                let moved: Vec<_> = orbit.labels.iter().map(|h| presentation.conjugate(j, h)).collect();
                if label_multiset(a, &moved) != multiset {
                    return Err(Error::Inadmissible(format!(
                        "labels of fiber orbit {o} are not permuted by conjugation with tau_{j}"
                    )));
                }
            }
        }
        let intermediate_genus = genus_rh(&quotient_spec)?;
        let labels = fiber.iter().flat_map(|o| o.labels.iter().cloned()).collect();
        let fiber_spec = CoverSpec::new(a.clone(), intermediate_genus, labels)?;
        fiber_spec.ensure_admissible()?;
        Ok(MetabelianCoverData {
            presentation,
            quotient_spec,
            fiber,
            intermediate_genus,
            fiber_spec,
        })
    }

    pub fn presentation(&self) -> &MetabelianPresentation {
        &self.presentation
    }

    pub fn quotient_spec(&self) -> &CoverSpec {
        &self.quotient_spec
    }

    pub fn fiber(&self) -> &[FiberOrbit] {
        &self.fiber
    }

    /// The abelian `A`-cover `X -> Z`.
    pub fn fiber_spec(&self) -> &CoverSpec {
        &self.fiber_spec
    }

    pub fn base_genus(&self) -> u64 {
        self.quotient_spec.base_genus()
    }

    /// Genus of `Z`.
    pub fn intermediate_genus(&self) -> u64 {
        self.intermediate_genus
    }

    /// Degree `t` of `q`.
    pub fn quotient_degree(&self) -> u64 {
        self.presentation.quotient().order()
    }

    /// Genus of `X` through the tower: Riemann–Hurwitz for `X -> Z`.
    pub fn cover_genus(&self) -> Result<u64> {
        genus_rh(&self.fiber_spec)
    }

    /// Genus of `X` from Riemann–Hurwitz for `X -> Y` directly, with
    /// ramification index `e_q e_p` over each branch point of `Y`.
    pub fn cover_genus_composite(&self) -> Result<u64> {
        let a = self.presentation.abelian();
        let n = self.presentation.order() as i128;
        let mut over: BTreeMap<usize, u64> = BTreeMap::new();
        let mut ramification: i128 = 0;
        for orbit in &self.fiber {
            let e_p = a.element_order(&orbit.labels[0]);
            match orbit.over {
                Some(y) => {
                    over.insert(y, e_p);
                }
                None => ramification += (n / e_p as i128) * (e_p as i128 - 1),
            }
        }
        for (y, e_q) in self.quotient_spec.branch_orders().into_iter().enumerate() {
            let e = (e_q * over.get(&y).copied().unwrap_or(1)) as i128;
            ramification += (n / e) * (e - 1);
        }
        let g = self.base_genus() as i128;
        let twice = n * (2 * g - 2) + ramification + 2;
        if twice < 0 || twice % 2 != 0 {
            return Err(Error::Inconsistent(format!(
                "composite Riemann-Hurwitz gives 2g - 2 = {}",
                twice - 2
            )));
        }
        Ok((twice / 2) as u64)
    }

    /// `h^0(Y, omega_Y + L' + U_chi) = h^0(Z, omega_Z + F_chi)` by the projection
    /// formula, where `q^*(omega_Y + L') = omega_Z`. Exact by Riemann–Roch when
    /// the degree exceeds `2 g_Z - 2`; otherwise an interval between the
    /// Riemann–Roch and Clifford bounds.
    pub fn generic_h0(&self, chi: &Character) -> Result<H0Estimate> {
        let g_z = self.intermediate_genus as i64;
        let d = self.fiber_spec.degree_l(chi)? as i64;
        let degree = 2 * g_z - 2 + d;
        if chi.is_trivial() {
            return Ok(H0Estimate {
                degree,
                lower: g_z as u64,
                upper: Some(g_z as u64),
                exact: true,
            });
        }
        if degree > 2 * g_z - 2 {
            let value = (degree - g_z + 1).max(0) as u64;
            return Ok(H0Estimate {
                degree,
                lower: value,
                upper: Some(value),
                exact: true,
            });
        }
        Ok(H0Estimate {
            degree,
            lower: (degree + 1 - g_z).max(0) as u64,
            upper: Some((degree / 2 + 1).max(0) as u64),
            exact: false,
        })
    }

    fn pushforward_degree(&self, chi: &Character) -> Result<i64> {
        // deg q_*M = deg M + chi(O_Z) - t chi(O_Y)
        let g_z = self.intermediate_genus as i64;
        let g_y = self.base_genus() as i64;
        let t = self.quotient_degree() as i64;
        let d = self.fiber_spec.degree_l(chi)? as i64;
        Ok(2 * g_z - 2 + d + (1 - g_z) - t * (1 - g_y))
    }

    /// Riemann–Roch value for `h^0(omega_Y^2 + 2L' + U_chi + U_chi^-1)`, the
    /// rank `t^2` bundle `V_chi (x) V_chi^-1` with `V_chi = q_*(omega_Z + F_chi)`.
    /// Only a lower bound unless `h^1` vanishes; always flagged inexact.
    pub fn generic_h0_product(&self, chi: &Character) -> Result<H0Estimate> {
        let inv = self.presentation.abelian().char_inv(chi);
        let t = self.quotient_degree() as i64;
        let g_y = self.base_genus() as i64;
        let degree = t * (self.pushforward_degree(chi)? + self.pushforward_degree(&inv)?);
        let euler = degree + t * t * (1 - g_y);
        Ok(H0Estimate {
            degree,
            lower: euler.max(0) as u64,
            upper: None,
            exact: false,
        })
    }
}

fn label_multiset(a: &FiniteAbelianGroup, labels: &[GroupElement]) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for h in labels {
        *out.entry(a.index_of(h)).or_insert(0) += 1;
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum H0Source {
    Supplied,
    Generic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetabelianVerdict {
    pub orbit: usize,
    pub representative: Character,
    pub t: u64,
    pub h0: [u64; 3],
    pub source: H0Source,
    pub holds: bool,
    pub flags: Vec<String>,
}

/// `h0_3 <= t (h0_1 + h0_2) - t^2` on signed inputs; negatives are rejected.
pub fn metabelian_condition(t: i64, h0_1: i64, h0_2: i64, h0_3: i64) -> Result<bool> {
    if t < 0 {
        return Err(Error::NegativeInput("t"));
    }
    if h0_1 < 0 || h0_2 < 0 || h0_3 < 0 {
        return Err(Error::NegativeInput("h0 value"));
    }
    Ok(metabelian_inequality(t as u64, h0_1 as u64, h0_2 as u64, h0_3 as u64))
}

/// Checks the metabelian injectivity inequality for one character orbit.
///
/// With `h0_triple` absent the three values are estimated by
/// [`MetabelianCoverData::generic_h0`] and
/// [`MetabelianCoverData::generic_h0_product`], and the verdict is flagged as
/// generic-position. `sections_asserted` records the section and global
/// generation hypotheses, which cannot be checked from the data.
pub fn metabelian_condition_check(
    data: &MetabelianCoverData,
    h0_triple: Option<(i64, i64, i64)>,
    orbit: usize,
    sections_asserted: bool,
) -> Result<MetabelianVerdict> {
    let orbits = data.presentation.character_orbits()?;
    let representative = orbits
        .get(orbit)
        .ok_or_else(|| Error::InvalidPresentation(format!("character orbit {orbit} out of range ({} orbits)", orbits.len())))?[0]
        .clone();
    let t = data.quotient_degree();
    let mut flags = Vec::new();
    let (h0, source) = match h0_triple {
        Some((a, b, c)) => {
            if a < 0 || b < 0 || c < 0 {
                return Err(Error::NegativeInput("h0 value"));
            }
            ([a as u64, b as u64, c as u64], H0Source::Supplied)
        }
        None => {
            let inv = data.presentation.abelian().char_inv(&representative);
            let first = data.generic_h0(&representative)?;
            let second = data.generic_h0(&inv)?;
            let third = data.generic_h0_product(&representative)?;
            if !(first.exact && second.exact) {
                flags.push("interval: h0 of a twist with degree <= 2g_Z - 2, lower bound used".to_string());
            }
            flags.push("generic-position: h1 of the product bundle assumed to vanish".to_string());
            ([first.lower, second.lower, third.lower], H0Source::Generic)
        }
    };
    if sections_asserted {
        flags.push("assumed: omega + L' has a nonzero section".to_string());
        flags.push("assumed: U_chi and U_chi^-1 are globally generated".to_string());
    } else {
        flags.push("unverified: section and global generation hypotheses not asserted".to_string());
    }
    let holds = sections_asserted && metabelian_inequality(t, h0[0], h0[1], h0[2]);
    Ok(MetabelianVerdict {
        orbit,
        representative,
        t,
        h0,
        source,
        holds,
        flags,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(orders: &[u64]) -> FiniteAbelianGroup {
        FiniteAbelianGroup::new(orders.to_vec()).unwrap()
    }

    fn s3() -> MetabelianPresentation {
        MetabelianPresentation::new(group(&[3]), group(&[2]), vec![vec![vec![2]]], vec![vec![0]]).unwrap()
    }

    fn q8() -> MetabelianPresentation {
        MetabelianPresentation::new(group(&[4]), group(&[2]), vec![vec![vec![3]]], vec![vec![2]]).unwrap()
    }

    /// S_3 cover of P^1 with two transpositions and two 3-cycles as local monodromy.
    fn s3_cover() -> MetabelianCoverData {
        let a = group(&[3]);
        let quotient = CoverSpec::from_coords(&[2], 0, &[&[1], &[1]]).unwrap();
        let orbit = || FiberOrbit {
            over: None,
            labels: vec![a.element(&[1]).unwrap(), a.element(&[2]).unwrap()],
        };
        MetabelianCoverData::new(s3(), quotient, vec![orbit(), orbit()]).unwrap()
    }

    /// Quaternion cover of P^1 with local monodromy i, j, -k.
    fn q8_cover() -> MetabelianCoverData {
        let a = group(&[4]);
        let quotient = CoverSpec::from_coords(&[2], 0, &[&[1], &[1]]).unwrap();
        let fiber = vec![
            FiberOrbit {
                over: None,
                labels: vec![a.element(&[1]).unwrap(), a.element(&[3]).unwrap()],
            },
            FiberOrbit {
                over: Some(0),
                labels: vec![a.element(&[2]).unwrap()],
            },
            FiberOrbit {
                over: Some(1),
                labels: vec![a.element(&[2]).unwrap()],
            },
        ];
        MetabelianCoverData::new(q8(), quotient, fiber).unwrap()
    }

    #[test]
    fn twisted_character_examples() {
        let p = s3();
        let chi = p.abelian().character(&[1]).unwrap();
        assert_eq!(p.twisted_character(&chi, 0, 1).unwrap(), p.abelian().character(&[2]).unwrap());
        assert_eq!(p.twisted_character(&chi, 0, 0).unwrap(), chi);
        let trivial = p.abelian().trivial_character();
        for gamma in 0..5 {
            assert_eq!(p.twisted_character(&trivial, 0, gamma).unwrap(), trivial);
        }
        assert!(p.twisted_character(&chi, 1, 1).is_err());
    }

    #[test]
    fn orbit_examples() {
        let p = s3();
        let a = p.abelian();
        assert_eq!(
            p.character_orbits().unwrap(),
            vec![vec![a.trivial_character()], vec![a.character(&[1]).unwrap(), a.character(&[2]).unwrap()]]
        );

        let direct = MetabelianPresentation::new(
            group(&[2, 3]),
            group(&[2]),
            vec![vec![vec![1, 0], vec![0, 1]]],
            vec![vec![0, 0]],
        )
        .unwrap();
        assert!(direct.validate().valid);
        assert!(direct.character_orbits().unwrap().iter().all(|o| o.len() == 1));

        let z5 = MetabelianPresentation::new(group(&[5]), group(&[4]), vec![vec![vec![2]]], vec![vec![0]]).unwrap();
        assert!(z5.validate().valid);
        let orbits = z5.character_orbits().unwrap();
        assert_eq!(orbits.len(), 2);
        assert_eq!(orbits[1].len(), 4);
        // the twist runs through 1 -> 2 -> 4 -> 3
        let a = z5.abelian();
        let mut chi = a.character(&[1]).unwrap();
        let mut path = Vec::new();
        for _ in 0..4 {
            path.push(chi.coords()[0]);
            chi = z5.twisted_character(&chi, 0, 1).unwrap();
        }
        assert_eq!(path, vec![1, 2, 4, 3]);
    }

    #[test]
    fn validation_examples() {
        assert!(s3().validate().valid);
        assert!(q8().validate().valid);
        // sigma -> sigma^3 is not an automorphism of Z/3... it is the zero map
        let broken = MetabelianPresentation::new(group(&[3]), group(&[2]), vec![vec![vec![3]]], vec![vec![0]]).unwrap();
        let report = broken.validate();
        assert!(!report.valid);
        assert!(report.failure.unwrap().contains("bijection"));
        // Z/4 -> Z/4, sigma -> sigma^2 is not a bijection either
        let broken = MetabelianPresentation::new(group(&[4]), group(&[2]), vec![vec![vec![2]]], vec![vec![0]]).unwrap();
        assert!(!broken.validate().valid);
        // order 3 automorphism of Z/7 cannot have period 2
        let broken = MetabelianPresentation::new(group(&[7]), group(&[2]), vec![vec![vec![2]]], vec![vec![0]]).unwrap();
        assert!(broken.validate().failure.unwrap().contains("moves"));
        // lift not centralised: tau^2 = sigma in S_3-type data
        let broken = MetabelianPresentation::new(group(&[3]), group(&[2]), vec![vec![vec![2]]], vec![vec![1]]).unwrap();
        assert!(broken.validate().failure.unwrap().contains("commute"));
        // image of wrong order: Z/2 + Z/4, sigma_1 -> (0, 1)
        let broken = MetabelianPresentation::new(
            group(&[2, 4]),
            group(&[2]),
            vec![vec![vec![0, 1], vec![1, 0]]],
            vec![vec![0, 0]],
        )
        .unwrap();
        assert!(broken.validate().failure.unwrap().contains("order"));
    }

    #[test]
    fn noncommuting_conjugations_rejected() {
        // two automorphisms of (Z/2)^2 that do not commute
        let p = MetabelianPresentation::new(
            group(&[2, 2]),
            group(&[2, 2]),
            vec![vec![vec![0, 1], vec![1, 0]], vec![vec![1, 0], vec![1, 1]]],
            vec![vec![0, 0], vec![0, 0]],
        )
        .unwrap();
        assert!(p.validate().failure.unwrap().contains("commute"));
    }

    fn check_period_and_orbits(p: &MetabelianPresentation) {
        assert!(p.validate().valid, "{p:?}");
        for chi in p.abelian().dual_enumerate() {
            for (j, &a_j) in p.quotient().orders().iter().enumerate() {
                assert_eq!(p.twisted_character(&chi, j, a_j).unwrap(), chi);
                let step = p.twisted_character(&chi, j, 1).unwrap();
                assert_eq!(p.abelian().character_order(&step), p.abelian().character_order(&chi));
            }
        }
        let orbits = p.character_orbits().unwrap();
        assert_eq!(orbits[0], vec![p.abelian().trivial_character()]);
        for orbit in &orbits {
            assert_eq!(p.quotient().order() % orbit.len() as u64, 0);
        }
        assert_eq!(orbits.iter().map(Vec::len).sum::<usize>() as u64, p.abelian().order());
    }

    fn images(auto: &crate::group::Automorphism) -> Vec<Vec<u64>> {
        auto.generator_images().iter().map(|x| x.coords().to_vec()).collect()
    }

    fn period_divides(a: &FiniteAbelianGroup, perm: &[usize], n: u64) -> bool {
        (0..a.order() as usize).all(|x| (0..n).fold(x, |y, _| perm[y]) == x)
    }

    #[test]
    fn period_property_exhaustive() {
        use crate::enumerate::small_group_presentations;
        for a in small_group_presentations(16) {
            let autos = a.automorphisms(16, 100_000).unwrap();
            for n in 2..=4 {
                for auto in autos.iter().filter(|x| period_divides(&a, x.permutation(), n)) {
                    let p = MetabelianPresentation::new(
                        a.clone(),
                        group(&[n]),
                        vec![images(auto)],
                        vec![vec![0; a.rank()]],
                    )
                    .unwrap();
                    check_period_and_orbits(&p);
                }
            }
            if a.order() > 8 {
                continue;
            }
            let involutions: Vec<_> = autos.iter().filter(|x| period_divides(&a, x.permutation(), 2)).collect();
            for x in &involutions {
                for y in &involutions {
                    let commute = (0..a.order() as usize)
                        .all(|e| x.permutation()[y.permutation()[e]] == y.permutation()[x.permutation()[e]]);
                    let p = MetabelianPresentation::new(
                        a.clone(),
                        group(&[2, 2]),
                        vec![images(x), images(y)],
                        vec![vec![0; a.rank()]; 2],
                    )
                    .unwrap();
                    assert_eq!(p.validate().valid, commute);
                    if commute {
                        check_period_and_orbits(&p);
                    }
                }
            }
        }
        check_period_and_orbits(&s3());
        check_period_and_orbits(&q8());
    }

    #[test]
    fn s3_cover_invariants() {
        let data = s3_cover();
        assert_eq!(data.intermediate_genus(), 0);
        assert_eq!(data.quotient_degree(), 2);
        assert_eq!(data.cover_genus().unwrap(), 2);
        assert_eq!(data.cover_genus_composite().unwrap(), 2);
        let a = data.presentation().abelian();
        let mut total = 0;
        for chi in a.dual_enumerate() {
            let est = data.generic_h0(&chi).unwrap();
            assert!(est.exact);
            total += est.lower;
        }
        assert_eq!(total, 2);
    }

    #[test]
    fn q8_cover_invariants() {
        let data = q8_cover();
        assert_eq!(data.intermediate_genus(), 0);
        assert_eq!(data.cover_genus().unwrap(), 2);
        assert_eq!(data.cover_genus_composite().unwrap(), 2);
        let total: u64 = data
            .presentation()
            .abelian()
            .dual_enumerate()
            .iter()
            .map(|chi| {
                let est = data.generic_h0(chi).unwrap();
                assert!(est.exact);
                est.lower
            })
            .sum();
        assert_eq!(total, 2);
    }

    #[test]
    fn generic_h0_examples() {
        // etale everything: A = Z/3 etale over an elliptic Z
        let a = group(&[3]);
        let quotient = CoverSpec::from_coords(&[2], 0, &[&[1], &[1], &[1], &[1]]).unwrap();
        let p = s3();
        let data = MetabelianCoverData::new(p, quotient, vec![]).unwrap();
        assert_eq!(data.intermediate_genus(), 1);
        let est = data.generic_h0(&a.character(&[1]).unwrap()).unwrap();
        assert!(!est.exact);
        assert_eq!((est.lower, est.upper), (0, Some(1)));
        assert_eq!(data.cover_genus().unwrap(), data.cover_genus_composite().unwrap());

        // degree 2 g_Z - 1 gives g_Z exactly
        let data = s3_cover();
        let chi = a.character(&[1]).unwrap();
        let est = data.generic_h0(&chi).unwrap();
        assert_eq!(est.degree, 2 * data.intermediate_genus() as i64 - 2 + 2);
        assert_eq!(est.lower, 1);
    }

    #[test]
    fn fiber_data_is_checked() {
        let a = group(&[3]);
        let quotient = || CoverSpec::from_coords(&[2], 0, &[&[1], &[1]]).unwrap();
        // orbit over an unramified point must have t = 2 points
        let short = FiberOrbit { over: None, labels: vec![a.element(&[1]).unwrap()] };
        assert!(MetabelianCoverData::new(s3(), quotient(), vec![short]).is_err());
        // labels must be permuted by the twist
        let bad = FiberOrbit { over: None, labels: vec![a.element(&[1]).unwrap(), a.element(&[1]).unwrap()] };
        assert!(MetabelianCoverData::new(s3(), quotient(), vec![bad]).is_err());
        // over a ramified point of q the orbit is a single Z-point, and 2h = h forces h = 0
        let fixed = FiberOrbit { over: Some(0), labels: vec![a.element(&[1]).unwrap()] };
        assert!(MetabelianCoverData::new(s3(), quotient(), vec![fixed]).is_err());
        // wrong quotient group
        let wrong = CoverSpec::from_coords(&[3], 0, &[&[1], &[2]]).unwrap();
        assert!(matches!(
            MetabelianCoverData::new(s3(), wrong, vec![]),
            Err(Error::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn condition_examples() {
        assert!(metabelian_condition(2, 5, 5, 16).unwrap());
        assert!(!metabelian_condition(2, 3, 3, 9).unwrap());
        assert!(metabelian_condition(2, -1, 3, 9).is_err());

        let data = s3_cover();
        let v = metabelian_condition_check(&data, Some((5, 5, 16)), 1, true).unwrap();
        assert!(v.holds);
        assert_eq!(v.source, H0Source::Supplied);
        let v = metabelian_condition_check(&data, Some((3, 3, 9)), 1, true).unwrap();
        assert!(!v.holds);
        assert!(metabelian_condition_check(&data, Some((3, -3, 9)), 1, true).is_err());
        assert!(metabelian_condition_check(&data, None, 7, true).is_err());

        let v = metabelian_condition_check(&data, None, 1, true).unwrap();
        assert_eq!(v.source, H0Source::Generic);
        assert_eq!(v.h0, [1, 1, 0]);
        assert!(v.holds);
        assert!(v.flags.iter().any(|f| f.starts_with("generic-position")));

        let v = metabelian_condition_check(&data, None, 1, false).unwrap();
        assert!(!v.holds);
    }
}
