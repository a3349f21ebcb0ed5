//! Subcommand implementations. Each returns the JSON records to print on
//! stdout, or a [`Failure`] carrying the exit code.

use prym_core::criteria::{abel_prym_collisions, abel_prym_hypotheses, CollisionTest, CriteriaReport};
use prym_core::enumerate::{enumerate_covers, EnumerationQuery, Symmetry};
use prym_core::group::DEFAULT_MAX_ORDER;
use prym_core::invariants::{consistency_checks, sym_square_audit, CheckStatus};
use prym_core::metabelian::{metabelian_condition_check, MetabelianCoverData};
use prym_core::{CoverSpec, Error, FiniteAbelianGroup, InvariantsReport};
use serde::Serialize;

use crate::report::{
    AbelPrymOutput, CheckOutput, ErrorOutput, InvariantsOutput, MetabelianCheck, MetabelianInvariants,
    VerifyOutput,
};
use crate::spec_file::{parse_orders, CoverSpecFile};

pub const EXIT_PARSE: u8 = 1;
pub const EXIT_INADMISSIBLE: u8 = 2;
pub const EXIT_BOUND: u8 = 3;
pub const EXIT_VERIFY_FAILED: u8 = 4;

/// A command failure: `record` goes to stdout, `message` to stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: u8,
    pub record: Option<String>,
    pub message: String,
}

impl Failure {
    fn new(code: u8, kind: &str, message: String) -> Self {
        let record = to_json(&ErrorOutput::new(kind, &message));
        Failure {
            code,
            record: Some(record),
            message,
        }
    }

    fn parse(message: impl Into<String>) -> Self {
        Self::new(EXIT_PARSE, "parse", message.into())
    }

    /// Maps a core error raised while computing on a parsed spec.
    fn from_core(err: Error) -> Self {
        match err {
            Error::Inadmissible(reason) => Self::new(EXIT_INADMISSIBLE, "inadmissible", reason),
            Error::BoundExceeded { .. } => Self::new(EXIT_BOUND, "bound-exceeded", err.to_string()),
            other => Self::new(EXIT_PARSE, "invalid", other.to_string()),
        }
    }
}

pub type Outcome = Result<Vec<String>, Failure>;

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("reports serialize")
}

struct Loaded {
    file: CoverSpecFile,
    spec: CoverSpec,
    metabelian: Option<MetabelianCoverData>,
}

fn load(text: &str) -> Result<Loaded, Failure> {
    let file = CoverSpecFile::parse(text).map_err(|e| Failure::parse(format!("malformed cover spec: {e}")))?;
    let spec = file.to_spec().map_err(|e| Failure::parse(format!("invalid cover spec: {e}")))?;
    let report = spec.validate_admissible();
    if let Some(reason) = report.reason() {
        return Err(Failure::new(EXIT_INADMISSIBLE, "inadmissible", reason));
    }
    let metabelian = file.metabelian_data(&spec).map_err(|e| match e {
        Error::Inadmissible(reason) => Failure::new(EXIT_INADMISSIBLE, "inadmissible", reason),
        other => Failure::parse(format!("invalid metabelian block: {other}")),
    })?;
    Ok(Loaded {
        file,
        spec,
        metabelian,
    })
}

pub fn invariants_output(spec: &CoverSpec) -> prym_core::Result<InvariantsOutput> {
    let report = InvariantsReport::compute(spec)?;
    let audit = if spec.base_genus() >= 2 {
        Some(sym_square_audit(spec)?)
    } else {
        None
    };
    Ok(InvariantsOutput::new(spec, report, audit))
}

pub fn invariants(text: &str) -> Outcome {
    let loaded = load(text)?;
    let mut out = invariants_output(&loaded.spec).map_err(Failure::from_core)?;
    if let Some(data) = &loaded.metabelian {
        out.metabelian = Some(MetabelianInvariants::compute(data).map_err(Failure::from_core)?);
    }
    Ok(vec![to_json(&out)])
}

pub fn check(text: &str) -> Outcome {
    let loaded = load(text)?;
    let spec = &loaded.spec;
    let assumptions = loaded.file.assumptions();
    let criteria = CriteriaReport::compute(spec, &assumptions).map_err(Failure::from_core)?;
    let abel_prym = match abel_prym_hypotheses(spec, assumptions.not_g1_2h, CollisionTest::Signed, DEFAULT_MAX_ORDER) {
        Ok(report) => Some(report),
        Err(Error::BoundExceeded { .. }) => None,
        Err(err) => return Err(Failure::from_core(err)),
    };
    let metabelian = match &loaded.metabelian {
        None => None,
        Some(data) => {
            let supplied = loaded.file.metabelian.as_ref().map(|b| b.h0.as_slice()).unwrap_or(&[]);
            let sections = assumptions.global_sections == Some(true);
            let orbits = data.presentation().character_orbits().map_err(Failure::from_core)?;
            let mut verdicts = Vec::new();
            for orbit in 1..orbits.len() {
                let triple = supplied
                    .iter()
                    .find(|h| h.orbit == orbit)
                    .map(|h| (h.values[0] as i64, h.values[1] as i64, h.values[2] as i64));
                verdicts.push(metabelian_condition_check(data, triple, orbit, sections).map_err(Failure::from_core)?);
            }
            Some(MetabelianCheck {
                t: data.quotient_degree(),
                verdicts,
            })
        }
    };
    let out = CheckOutput::new(spec, criteria, abel_prym, metabelian);
    Ok(vec![to_json(&out)])
}

pub fn enumerate(orders: &str, genus: u64, branch: usize, symmetry: Symmetry, bound: u128) -> Outcome {
    let orders = parse_orders(orders).map_err(Failure::parse)?;
    let group = FiniteAbelianGroup::new(orders).map_err(|e| Failure::parse(e.to_string()))?;
    let query = EnumerationQuery::new(group, genus, branch, symmetry).with_bound(bound);
    let specs = enumerate_covers(&query).map_err(Failure::from_core)?;
    specs
        .iter()
        .map(|spec| invariants_output(spec).map(|out| to_json(&out)))
        .collect::<prym_core::Result<Vec<_>>>()
        .map_err(Failure::from_core)
}

pub fn abel_prym(orders: &str, test: CollisionTest) -> Outcome {
    let orders = parse_orders(orders).map_err(Failure::parse)?;
    let group = FiniteAbelianGroup::new(orders).map_err(|e| Failure::parse(e.to_string()))?;
    let report = abel_prym_collisions(&group, test, DEFAULT_MAX_ORDER).map_err(Failure::from_core)?;
    Ok(vec![to_json(&AbelPrymOutput::new(report))])
}

pub fn verify(text: &str) -> Outcome {
    let loaded = load(text)?;
    let mut checks = consistency_checks(&loaded.spec).map_err(Failure::from_core)?;
    if let Some(data) = &loaded.metabelian {
        checks.extend(MetabelianInvariants::checks(data).map_err(Failure::from_core)?);
    }
    let passed = checks.iter().all(|c| c.status != CheckStatus::Failed);
    let out = VerifyOutput::new(&loaded.spec, checks, passed);
    let record = to_json(&out);
    if passed {
        Ok(vec![record])
    } else {
        let failed: Vec<&str> = out
            .checks
            .iter()
            .filter(|c| c.status == CheckStatus::Failed)
            .map(|c| c.name.as_str())
            .collect();
        Err(Failure {
            code: EXIT_VERIFY_FAILED,
            record: Some(record),
            message: format!("consistency checks failed: {}", failed.join(", ")),
        })
    }
}
