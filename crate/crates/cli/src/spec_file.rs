//! The JSON cover-spec file format.

use prym_core::criteria::Assumptions;
use prym_core::metabelian::{FiberOrbit, MetabelianCoverData, MetabelianPresentation};
use prym_core::{CoverSpec, FiniteAbelianGroup, GroupElement};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverSpecFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<u64>,
    pub group: Vec<u64>,
    pub genus: u64,
    pub branch: Vec<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metabelian: Option<MetabelianBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub assumptions: Option<AssumptionsBlock>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AssumptionsBlock {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub clifford_index: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub not_g1_2h: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub global_sections: Option<bool>,
}

/// Metabelian data. The top-level `group`, `genus` and `branch` describe the
/// abelian quotient cover `Z -> Y`; this block adds the normal subgroup `A`,
/// the presentation, and the `A`-labels of `X -> Z` by `N`-orbit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetabelianBlock {
    pub abelian: Vec<u64>,
    /// `conjugation[j][i]`: exponents of `tau_j^-1 sigma_i tau_j`.
    pub conjugation: Vec<Vec<Vec<u64>>>,
    /// `lifts[j]`: exponents of `tau_j^{a_j}`.
    pub lifts: Vec<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multipliers: Option<Vec<Vec<u64>>>,
    #[serde(default)]
    pub fiber: Vec<FiberBlock>,
    /// Externally computed `h^0` triples, one per character orbit.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub h0: Vec<H0Block>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiberBlock {
    #[serde(default)]
    pub over: Option<usize>,
    pub labels: Vec<Vec<u64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct H0Block {
    pub orbit: usize,
    pub values: [u64; 3],
}

impl AssumptionsBlock {
    pub fn to_core(self) -> Assumptions {
        Assumptions {
            clifford_index: self.clifford_index,
            not_g1_2h: self.not_g1_2h,
            global_sections: self.global_sections,
        }
    }
}

impl CoverSpecFile {
    pub fn parse(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn from_spec(spec: &CoverSpec) -> Self {
        CoverSpecFile {
            schema: Some(SCHEMA_VERSION),
            group: spec.group().orders().to_vec(),
            genus: spec.base_genus(),
            branch: spec.branch_labels().iter().map(|h| h.coords().to_vec()).collect(),
            metabelian: None,
            assumptions: None,
        }
    }

    /// Builds the spec; label coordinates must lie in `0..m_i`.
    pub fn to_spec(&self) -> prym_core::Result<CoverSpec> {
        if let Some(v) = self.schema {
            if v != SCHEMA_VERSION {
                return Err(prym_core::Error::InvalidPresentation(format!(
                    "unsupported schema version {v}"
                )));
            }
        }
        let group = FiniteAbelianGroup::new(self.group.clone())?;
        let labels = strict_elements(&group, &self.branch)?;
        CoverSpec::new(group, self.genus, labels)
    }

    pub fn assumptions(&self) -> Assumptions {
        self.assumptions.unwrap_or_default().to_core()
    }

    pub fn metabelian_data(&self, quotient: &CoverSpec) -> prym_core::Result<Option<MetabelianCoverData>> {
        let Some(block) = &self.metabelian else {
            return Ok(None);
        };
        let abelian = FiniteAbelianGroup::new(block.abelian.clone())?;
        for images in &block.conjugation {
            strict_elements(&abelian, images)?;
        }
        strict_elements(&abelian, &block.lifts)?;
        let mut presentation = MetabelianPresentation::new(
            abelian.clone(),
            quotient.group().clone(),
            block.conjugation.clone(),
            block.lifts.clone(),
        )?;
        if let Some(m) = &block.multipliers {
            presentation = presentation.with_multipliers(m.clone());
        }
        let fiber = block
            .fiber
            .iter()
            .map(|o| {
                Ok(FiberOrbit {
                    over: o.over,
                    labels: strict_elements(&abelian, &o.labels)?,
                })
            })
            .collect::<prym_core::Result<Vec<_>>>()?;
        MetabelianCoverData::new(presentation, quotient.clone(), fiber).map(Some)
    }
}

fn strict_elements(group: &FiniteAbelianGroup, coords: &[Vec<u64>]) -> prym_core::Result<Vec<GroupElement>> {
    coords
        .iter()
        .map(|c| {
            group
                .element_strict(c)
                .map_err(|e| prym_core::Error::InvalidPresentation(e.to_string()))
        })
        .collect()
}

/// Parses `"2,2"` style group orders; the empty string is the trivial group.
pub fn parse_orders(text: &str) -> Result<Vec<u64>, String> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<u64>()
                .map_err(|e| format!("bad group order {part:?}: {e}"))
        })
        .collect()
}
