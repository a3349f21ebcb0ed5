//! JSON output records. Field order is the emission order.

use prym_core::criteria::{AbelPrymReport, CriteriaReport};
use prym_core::invariants::{CheckStatus, IdentityCheck, SurjectivityVerdict};
use prym_core::metabelian::{H0Estimate, MetabelianCoverData, MetabelianVerdict};
use prym_core::{Character, CoverSpec, InvariantsReport, SymSquareAudit};
use serde::Serialize;

use crate::spec_file::SCHEMA_VERSION;

#[derive(Debug, Clone, Serialize)]
pub struct ErrorOutput {
    pub schema: u64,
    pub error: String,
    pub reason: String,
}

impl ErrorOutput {
    pub fn new(kind: &str, reason: &str) -> Self {
        ErrorOutput {
            schema: SCHEMA_VERSION,
            error: kind.to_string(),
            reason: reason.to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CharacterRecord {
    pub character: Vec<u64>,
    pub order: u64,
    pub d: u64,
    pub eigendim: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BlockRecord {
    pub character: Vec<u64>,
    pub dim: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SymSquareRecord {
    pub source_dim: u64,
    pub target_dim: u64,
    pub invariant_block: u64,
    pub verdict: SurjectivityVerdict,
    pub blocks: Vec<BlockRecord>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Consistency {
    /// `null` when `|G|` is above the brute-force bound.
    pub rh_equals_permutation_oracle: Option<bool>,
    pub eigensum_equals_genus: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct InvariantsOutput {
    pub schema: u64,
    pub group: Vec<u64>,
    pub genus: u64,
    pub branch: Vec<Vec<u64>>,
    pub genus_cover: u64,
    pub prym_dim: u64,
    pub polarization: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polarization_error: Option<String>,
    pub characters: Vec<CharacterRecord>,
    pub torsion_twists: Vec<Vec<u64>>,
    pub sym_square: Option<SymSquareRecord>,
    pub consistency: Consistency,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metabelian: Option<MetabelianInvariants>,
}

fn coords(chi: &Character) -> Vec<u64> {
    chi.coords().to_vec()
}

fn branch(spec: &CoverSpec) -> Vec<Vec<u64>> {
    spec.branch_labels().iter().map(|h| h.coords().to_vec()).collect()
}

impl InvariantsOutput {
    pub fn new(spec: &CoverSpec, report: InvariantsReport, audit: Option<SymSquareAudit>) -> Self {
        InvariantsOutput {
            schema: SCHEMA_VERSION,
            group: spec.group().orders().to_vec(),
            genus: spec.base_genus(),
            branch: branch(spec),
            genus_cover: report.cover_genus,
            prym_dim: report.prym_dim,
            polarization: report.polarization,
            polarization_error: report.polarization_error,
            characters: report
                .characters
                .iter()
                .map(|row| CharacterRecord {
                    character: coords(&row.character),
                    order: row.order,
                    d: row.degree,
                    eigendim: row.eigendim,
                })
                .collect(),
            torsion_twists: report.torsion_twists.iter().map(coords).collect(),
            sym_square: audit.map(|a| SymSquareRecord {
                source_dim: a.source_dim,
                target_dim: a.target_dim,
                invariant_block: a.invariant_block,
                verdict: a.verdict,
                blocks: a
                    .per_character
                    .iter()
                    .map(|(chi, dim)| BlockRecord {
                        character: coords(chi),
                        dim: *dim,
                    })
                    .collect(),
            }),
            consistency: Consistency {
                rh_equals_permutation_oracle: report.genus_oracle_check,
                eigensum_equals_genus: report.total_check,
            },
            metabelian: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct H0Record {
    pub character: Vec<u64>,
    #[serde(flatten)]
    pub estimate: H0Estimate,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitRecord {
    pub orbit: usize,
    pub characters: Vec<Vec<u64>>,
    pub h0: Vec<H0Record>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MetabelianInvariants {
    pub order: u64,
    pub quotient_degree: u64,
    pub intermediate_genus: u64,
    pub genus_cover: u64,
    pub genus_cover_composite: u64,
    pub presentation_multipliers: Option<Vec<Vec<u64>>>,
    pub orbits: Vec<OrbitRecord>,
}

impl MetabelianInvariants {
    pub fn compute(data: &MetabelianCoverData) -> prym_core::Result<Self> {
        let orbits = data
            .presentation()
            .character_orbits()?
            .into_iter()
            .enumerate()
            .map(|(orbit, chars)| {
                let h0 = chars
                    .iter()
                    .map(|chi| {
                        Ok(H0Record {
                            character: coords(chi),
                            estimate: data.generic_h0(chi)?,
                        })
                    })
                    .collect::<prym_core::Result<Vec<_>>>()?;
                Ok(OrbitRecord {
                    orbit,
                    characters: chars.iter().map(coords).collect(),
                    h0,
                })
            })
            .collect::<prym_core::Result<Vec<_>>>()?;
        Ok(MetabelianInvariants {
            order: data.presentation().order(),
            quotient_degree: data.quotient_degree(),
            intermediate_genus: data.intermediate_genus(),
            genus_cover: data.cover_genus()?,
            genus_cover_composite: data.cover_genus_composite()?,
            presentation_multipliers: data.presentation().multipliers().map(<[_]>::to_vec),
            orbits,
        })
    }

    /// Tower genus against composite Riemann–Hurwitz, and the exact `h^0`
    /// total against the genus when no estimate is an interval.
    pub fn checks(data: &MetabelianCoverData) -> prym_core::Result<Vec<IdentityCheck>> {
        let tower = data.cover_genus()?;
        let composite = data.cover_genus_composite()?;
        let mut out = vec![IdentityCheck {
            name: "metabelian-composite-genus".to_string(),
            status: if tower == composite { CheckStatus::Passed } else { CheckStatus::Failed },
            detail: format!("through Z {tower}, directly over Y {composite}"),
        }];
        let estimates = data
            .presentation()
            .abelian()
            .dual_enumerate()
            .iter()
            .map(|chi| data.generic_h0(chi))
            .collect::<prym_core::Result<Vec<_>>>()?;
        out.push(if estimates.iter().all(|e| e.exact) {
            let total: u64 = estimates.iter().map(|e| e.lower).sum();
            IdentityCheck {
                name: "metabelian-h0-total".to_string(),
                status: if total == tower { CheckStatus::Passed } else { CheckStatus::Failed },
                detail: format!("sum of h0 over characters of A {total}, genus {tower}"),
            }
        } else {
            IdentityCheck {
                name: "metabelian-h0-total".to_string(),
                status: CheckStatus::Skipped,
                detail: "some h0 is only bounded by an interval".to_string(),
            }
        });
        Ok(out)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MetabelianCheck {
    pub t: u64,
    pub verdicts: Vec<MetabelianVerdict>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutput {
    pub schema: u64,
    pub group: Vec<u64>,
    pub genus: u64,
    pub branch: Vec<Vec<u64>>,
    #[serde(flatten)]
    pub criteria: CriteriaReport,
    pub some_sufficient_condition_holds: bool,
    pub abel_prym: Option<AbelPrymReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metabelian: Option<MetabelianCheck>,
}

impl CheckOutput {
    pub fn new(
        spec: &CoverSpec,
        criteria: CriteriaReport,
        abel_prym: Option<AbelPrymReport>,
        metabelian: Option<MetabelianCheck>,
    ) -> Self {
        CheckOutput {
            schema: SCHEMA_VERSION,
            group: spec.group().orders().to_vec(),
            genus: spec.base_genus(),
            branch: branch(spec),
            some_sufficient_condition_holds: criteria.some_sufficient_condition_holds(),
            criteria,
            abel_prym,
            metabelian,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AbelPrymOutput {
    pub schema: u64,
    #[serde(flatten)]
    pub report: AbelPrymReport,
}

impl AbelPrymOutput {
    pub fn new(report: AbelPrymReport) -> Self {
        AbelPrymOutput {
            schema: SCHEMA_VERSION,
            report,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyOutput {
    pub schema: u64,
    pub group: Vec<u64>,
    pub genus: u64,
    pub branch: Vec<Vec<u64>>,
    pub passed: bool,
    pub checks: Vec<IdentityCheck>,
}

impl VerifyOutput {
    pub fn new(spec: &CoverSpec, checks: Vec<IdentityCheck>, passed: bool) -> Self {
        VerifyOutput {
            schema: SCHEMA_VERSION,
            group: spec.group().orders().to_vec(),
            genus: spec.base_genus(),
            branch: branch(spec),
            passed,
            checks,
        }
    }
}
