//! Abelian cover types and their building data.
//!
//! A cover type is a base genus together with the inertia label `h_i` of every
//! branch point. Everything here is computed from pairing values
//! `chi(h_i) = a^i_chi / n_i` with `n_i = ord(h_i)`; branch points carry no
//! coordinates and divisors are tracked by degree only.
//!
//! The representative of `a^i_chi` is taken in `{0, ..., n_i - 1}`, so an
//! unramified character gives `a = 0` and the carry bits
//! `eps^i = floor((a^i_chi + a^i_chi') / n_i)` vanish against the trivial
//! character.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Character, FiniteAbelianGroup, GroupElement};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoverSpec {
    group: FiniteAbelianGroup,
    base_genus: u64,
    branch_labels: Vec<GroupElement>,
}

/// How the connectivity half of admissibility was settled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Connectivity {
    /// `g = 0` and the labels generate `G`.
    Generated,
    /// `g = 0` and the labels span a proper subgroup of this order.
    NotGenerated { subgroup_order: u64 },
    /// `g >= 1`: images of the handle generators can always complete a surjection.
    HandlesAbsorb,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub label_sum: GroupElement,
    pub sum_is_zero: bool,
    pub connectivity: Connectivity,
    pub admissible: bool,
}

impl ValidationReport {
    /// Human readable reason for rejection, if any.
    pub fn reason(&self) -> Option<String> {
        if self.admissible {
            return None;
        }
        let mut reasons = Vec::new();
        if !self.sum_is_zero {
            reasons.push(format!("branch labels sum to {} instead of 0", self.label_sum));
        }
        if let Connectivity::NotGenerated { subgroup_order } = self.connectivity {
            reasons.push(format!(
                "base genus 0 and the labels generate a subgroup of order {subgroup_order} only"
            ));
        }
        Some(reasons.join("; "))
    }
}

impl CoverSpec {
    /// Builds a cover type; labels must be reduced and nonzero.
    pub fn new(
        group: FiniteAbelianGroup,
        base_genus: u64,
        branch_labels: Vec<GroupElement>,
    ) -> Result<Self> {
        for (index, h) in branch_labels.iter().enumerate() {
            group.contains(h)?;
            if h.is_zero() {
                return Err(Error::TrivialBranchLabel { index });
            }
        }
        Ok(CoverSpec {
            group,
            base_genus,
            branch_labels,
        })
    }

    /// Convenience constructor from raw coordinates.
    pub fn from_coords(orders: &[u64], base_genus: u64, labels: &[&[u64]]) -> Result<Self> {
        let group = FiniteAbelianGroup::new(orders.to_vec())?;
        let labels = labels
            .iter()
            .map(|c| group.element_strict(c))
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, base_genus, labels)
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn base_genus(&self) -> u64 {
        self.base_genus
    }

    pub fn branch_labels(&self) -> &[GroupElement] {
        &self.branch_labels
    }

    /// Number of branch points `r`.
    pub fn branch_count(&self) -> usize {
        self.branch_labels.len()
    }

    pub fn is_etale(&self) -> bool {
        self.branch_labels.is_empty()
    }

    /// Ramification indices `n_i = ord(h_i)`.
    pub fn branch_orders(&self) -> Vec<u64> {
        self.branch_labels
            .iter()
            .map(|h| self.group.element_order(h))
            .collect()
    }

    pub fn validate_admissible(&self) -> ValidationReport {
        let label_sum = self
            .branch_labels
            .iter()
            .fold(self.group.zero(), |acc, h| self.group.add(&acc, h));
        let sum_is_zero = label_sum.is_zero();
        let connectivity = if self.base_genus >= 1 {
            Connectivity::HandlesAbsorb
        } else {
            let span = self.group.generated_subgroup(&self.branch_labels).len() as u64;
            if span == self.group.order() {
                Connectivity::Generated
            } else {
                Connectivity::NotGenerated {
                    subgroup_order: span,
                }
            }
        };
        let admissible = sum_is_zero && !matches!(connectivity, Connectivity::NotGenerated { .. });
        ValidationReport {
            label_sum,
            sum_is_zero,
            connectivity,
            admissible,
        }
    }

    /// Errors with [`Error::Inadmissible`] unless the type is admissible.
    pub fn ensure_admissible(&self) -> Result<()> {
        match self.validate_admissible().reason() {
            None => Ok(()),
            Some(reason) => Err(Error::Inadmissible(reason)),
        }
    }

    fn check_branch(&self, i: usize) -> Result<()> {
        if i >= self.branch_labels.len() {
            return Err(Error::BranchIndex {
                index: i,
                count: self.branch_labels.len(),
            });
        }
        Ok(())
    }

    /// `a^i_chi` in `{0, ..., n_i - 1}` with `chi(h_i) = a / n_i` in `Q/Z`.
    pub fn a_value(&self, chi: &Character, i: usize) -> Result<u64> {
        self.check_branch(i)?;
        let h = &self.branch_labels[i];
        let value = self.group.pair(chi, h)?;
        let n = self.group.element_order(h);
        Ok(value.numerator() * (n / value.denominator()))
    }

    /// Carry bit `eps^i_{chi,chi'} = floor((a^i_chi + a^i_chi') / n_i)`.
    pub fn epsilon(&self, chi: &Character, chi2: &Character, i: usize) -> Result<u64> {
        let a = self.a_value(chi, i)?;
        let n = self.group.element_order(&self.branch_labels[i]);
        let b = self.a_value(chi2, i)?;
        Ok((a + b) / n)
    }

    /// `deg D_{chi,chi'} = sum_i eps^i_{chi,chi'}`.
    pub fn degree_d(&self, chi: &Character, chi2: &Character) -> Result<u64> {
        (0..self.branch_count())
            .map(|i| self.epsilon(chi, chi2, i))
            .sum()
    }

    /// `d_chi = deg L_chi = sum_j a^j_chi / n_j`.
    ///
    /// The sum is an integer whenever the labels add up to zero; a fractional
    /// value is reported as an internal inconsistency.
    pub fn degree_l(&self, chi: &Character) -> Result<u64> {
        let orders = self.branch_orders();
        let common = orders.iter().fold(1u64, |acc, &n| num_integer::lcm(acc, n));
        let mut total: u128 = 0;
        for (i, &n) in orders.iter().enumerate() {
            total += self.a_value(chi, i)? as u128 * (common / n) as u128;
        }
        if !total.is_multiple_of(common as u128) {
            return Err(Error::Inconsistent(format!(
                "deg L for {chi} is {total}/{common}, not an integer"
            )));
        }
        Ok((total / common as u128) as u64)
    }

    /// Number of branch points where `chi(h_i) != 1`.
    pub fn nontrivial_count(&self, chi: &Character) -> Result<u64> {
        let mut count = 0;
        for h in &self.branch_labels {
            if !self.group.pair(chi, h)?.is_zero() {
                count += 1;
            }
        }
        Ok(count)
    }

    pub fn build(&self) -> Result<BuildingData> {
        self.ensure_admissible()?;
        BuildingData::from_spec(self)
    }

    pub fn reduced(&self) -> Result<ReducedBuildingData> {
        let data = self.build()?;
        ReducedBuildingData::from_building_data(self, &data)
    }
}

/// Degree-level building data: the table `a^i_chi` and the degrees `d_chi`.
///
/// Characters are indexed as in [`FiniteAbelianGroup::dual_enumerate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuildingData {
    group: FiniteAbelianGroup,
    characters: Vec<Character>,
    a_table: Vec<Vec<u64>>,
    branch_orders: Vec<u64>,
    degrees: Vec<u64>,
}

impl BuildingData {
    fn from_spec(spec: &CoverSpec) -> Result<Self> {
        let group = spec.group().clone();
        let characters = group.dual_enumerate();
        let branch_orders = spec.branch_orders();
        let mut a_table = Vec::with_capacity(characters.len());
        let mut degrees = Vec::with_capacity(characters.len());
        for chi in &characters {
            let row = (0..spec.branch_count())
                .map(|i| spec.a_value(chi, i))
                .collect::<Result<Vec<_>>>()?;
            a_table.push(row);
            degrees.push(spec.degree_l(chi)?);
        }
        Ok(BuildingData {
            group,
            characters,
            a_table,
            branch_orders,
            degrees,
        })
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn characters(&self) -> &[Character] {
        &self.characters
    }

    pub fn branch_orders(&self) -> &[u64] {
        &self.branch_orders
    }

    pub fn index(&self, chi: &Character) -> usize {
        self.group.index_of(&GroupElement::from_character(chi))
    }

    pub fn a(&self, chi: usize, i: usize) -> u64 {
        self.a_table[chi][i]
    }

    pub fn degree(&self, chi: &Character) -> u64 {
        self.degrees[self.index(chi)]
    }

    pub fn degree_at(&self, chi: usize) -> u64 {
        self.degrees[chi]
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn carry(&self, chi: usize, chi2: usize, i: usize) -> u64 {
        (self.a_table[chi][i] + self.a_table[chi2][i]) / self.branch_orders[i]
    }

    pub fn degree_d_at(&self, chi: usize, chi2: usize) -> u64 {
        (0..self.branch_orders.len()).map(|i| self.carry(chi, chi2, i)).sum()
    }

    /// Index of `chi * chi'`.
    pub fn product_index(&self, chi: usize, chi2: usize) -> usize {
        let p = self.group.char_mul(&self.characters[chi], &self.characters[chi2]);
        self.index(&p)
    }

    pub fn inverse_index(&self, chi: usize) -> usize {
        self.index(&self.group.char_inv(&self.characters[chi]))
    }
}

/// Reduced building data attached to the distinguished generators:
/// `n_i L_i = sum_j lambda_ij x_j` with `L_i = L_{sigma_i^*}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedBuildingData {
    /// `lambda[i][j]`, the `i`th coordinate of `h_j`.
    pub lambda: Vec<Vec<u64>>,
    /// `d_i = sum_j lambda_ij`.
    pub row_sums: Vec<u64>,
    /// `n_i = ord(sigma_i)`.
    pub generator_orders: Vec<u64>,
    /// `deg L_i`.
    pub generator_degrees: Vec<u64>,
}

impl ReducedBuildingData {
    fn from_building_data(spec: &CoverSpec, data: &BuildingData) -> Result<Self> {
        let group = spec.group();
        let mut lambda = Vec::with_capacity(group.rank());
        let mut row_sums = Vec::with_capacity(group.rank());
        let mut generator_degrees = Vec::with_capacity(group.rank());
        for (i, &m) in group.orders().iter().enumerate() {
            let dual = group.dual_generator(i);
            // lambda_ij = m_i * a^j / n_j, which is the i-th coordinate of h_j
            let row = (0..spec.branch_count())
                .map(|j| {
                    let a = spec.a_value(&dual, j)?;
                    let n = data.branch_orders()[j];
                    Ok(m * a / n)
                })
                .collect::<Result<Vec<_>>>()?;
            let d_i: u64 = row.iter().sum();
            let deg = data.degree(&dual);
            if m * deg != d_i {
                return Err(Error::Inconsistent(format!(
                    "n_{i} deg L_{i} = {m} * {deg} but d_{i} = {d_i}"
                )));
            }
            lambda.push(row);
            row_sums.push(d_i);
            generator_degrees.push(deg);
        }
        Ok(ReducedBuildingData {
            lambda,
            row_sums,
            generator_orders: group.orders().to_vec(),
            generator_degrees,
        })
    }
}
