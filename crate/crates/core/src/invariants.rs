//! Numerical invariants of a cover and of its Prym variety.

use serde::{Deserialize, Serialize};

use crate::cover::{BuildingData, CoverSpec};
use crate::error::{Error, Result};
use crate::group::{Character, DEFAULT_MAX_ORDER};

/// Genus of the cover by Riemann–Hurwitz:
/// `2g' - 2 = n(2g - 2) + sum_j (n / n_j)(n_j - 1)`.
pub fn genus_rh(spec: &CoverSpec) -> Result<u64> {
    spec.ensure_admissible()?;
    let n = spec.group().order() as i128;
    let g = spec.base_genus() as i128;
    let ramification: i128 = spec
        .branch_orders()
        .iter()
        .map(|&nj| (n / nj as i128) * (nj as i128 - 1))
        .sum();
    half_euler_to_genus(n * (2 * g - 2) + ramification)
}

fn half_euler_to_genus(two_g_minus_two: i128) -> Result<u64> {
    let twice = two_g_minus_two + 2;
    if twice < 0 || twice % 2 != 0 {
        return Err(Error::Inadmissible(format!(
            "Riemann-Hurwitz gives 2g - 2 = {two_g_minus_two}"
        )));
    }
    Ok((twice / 2) as u64)
}

/// Genus of the cover from the regular permutation action of `G` on itself.
///
/// Each `h_j` acts on the fiber over `x_j` by translation; the points above
/// `x_j` are its cycles. Counting them directly gives the Euler characteristic
/// `2 - 2g' = n(2 - 2g) - sum_j (n - #cycles(h_j))`.
pub fn genus_permutation_oracle(spec: &CoverSpec, max_order: u64) -> Result<u64> {
    spec.ensure_admissible()?;
    let group = spec.group();
    group.ensure_order_at_most(max_order)?;
    let n = group.order() as usize;
    let mut defect: i128 = 0;
    for h in spec.branch_labels() {
        let mut seen = vec![false; n];
        let mut cycles = 0i128;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut x = group.element_at(start);
            loop {
                let i = group.index_of(&x);
                if seen[i] {
                    break;
                }
                seen[i] = true;
                x = group.add(&x, h);
            }
        }
        defect += n as i128 - cycles;
    }
    let euler = n as i128 * (2 - 2 * spec.base_genus() as i128) - defect;
    half_euler_to_genus(-euler)
}

/// `dim H^0(C', omega)^chi = h^0(C, omega_C + L_{chi^-1})` for every character,
/// indexed like [`crate::FiniteAbelianGroup::dual_enumerate`].
///
/// For `chi != 1` with `d = d_{chi^-1}`: `g - 1 + d` if `d >= 1` (the degree
/// exceeds `2g - 2`), and `g - 1` for a nontrivial torsion twist (`d = 0`).
/// Over a rational base this is `max(d - 1, 0)`.
pub fn eigenspace_dims(spec: &CoverSpec) -> Result<Vec<u64>> {
    let data = spec.build()?;
    Ok(eigenspace_dims_from(spec.base_genus(), &data))
}

pub(crate) fn eigenspace_dims_from(base_genus: u64, data: &BuildingData) -> Vec<u64> {
    (0..data.characters().len())
        .map(|x| {
            if x == 0 {
                return base_genus;
            }
            let d = data.degree_at(data.inverse_index(x)) as i64;
            (base_genus as i64 - 1 + d).max(0) as u64
        })
        .collect()
}

/// `p = g' - g`.
pub fn prym_dimension(spec: &CoverSpec) -> Result<u64> {
    Ok(genus_rh(spec)? - spec.base_genus())
}

/// Polarization type `(1, ..., 1, n, ..., n)`: for `r = 0` there are `g - 1`
/// copies of `n` and `p - (g - 1)` ones, otherwise `g` copies of `n` and
/// `p - g` ones. Negative multiplicities are reported, not clamped.
pub fn polarization_type(spec: &CoverSpec) -> Result<Vec<u64>> {
    let p = prym_dimension(spec)?;
    polarization_from(spec, p)
}

fn polarization_from(spec: &CoverSpec, p: u64) -> Result<Vec<u64>> {
    let g = spec.base_genus() as i64;
    let ns = if spec.is_etale() { g - 1 } else { g };
    let ones = p as i64 - ns;
    if ns < 0 || ones < 0 {
        return Err(Error::PolarizationOutOfRange {
            ones,
            ns,
            prym_dim: p,
            genus: spec.base_genus(),
            branch_count: spec.branch_count(),
        });
    }
    let n = spec.group().order();
    let mut out = vec![1; ones as usize];
    out.extend(std::iter::repeat_n(n, ns as usize));
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SurjectivityVerdict {
    /// The dimension count does not rule out surjectivity.
    Possible,
    /// The invariant block is smaller than the target space.
    Impossible,
}

/// Dimension audit of the codifferential
/// `S^2(H^0(omega)^-) -> H^0(C, omega^2(B))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymSquareAudit {
    pub source_dim: u64,
    pub target_dim: u64,
    /// `dim S^2(H^0(omega)^-)^psi` for every character `psi`.
    pub per_character: Vec<(Character, u64)>,
    /// The `psi = 1` block, which is what maps to the invariant quadratic differentials.
    pub invariant_block: u64,
    pub verdict: SurjectivityVerdict,
}

/// Splits `S^2(H^0(omega)^-)` into eigenspaces: `S^2 V_chi` lands in
/// `psi = chi^2` and `V_chi (x) V_eta` (unordered, `chi != eta`) in `psi = chi eta`.
pub fn sym_square_audit(spec: &CoverSpec) -> Result<SymSquareAudit> {
    if spec.base_genus() < 2 {
        return Err(Error::UnsupportedGenus(spec.base_genus()));
    }
    let data = spec.build()?;
    let dims = eigenspace_dims_from(spec.base_genus(), &data);
    let n = dims.len();
    let mut blocks = vec![0u64; n];
    for x in 1..n {
        let t = dims[x];
        blocks[data.product_index(x, x)] += t * (t + 1) / 2;
        for y in (x + 1)..n {
            blocks[data.product_index(x, y)] += t * dims[y];
        }
    }
    let source_dim = blocks.iter().sum();
    let target_dim = 3 * spec.base_genus() - 3 + spec.branch_count() as u64;
    let invariant_block = blocks[0];
    let verdict = if invariant_block < target_dim {
        SurjectivityVerdict::Impossible
    } else {
        SurjectivityVerdict::Possible
    };
    Ok(SymSquareAudit {
        source_dim,
        target_dim,
        per_character: data.characters().iter().cloned().zip(blocks).collect(),
        invariant_block,
        verdict,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterRow {
    pub character: Character,
    pub order: u64,
    pub degree: u64,
    pub eigendim: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsReport {
    pub cover_genus: u64,
    pub prym_dim: u64,
    /// `None` when the polarization formula is out of range; see `polarization_error`.
    pub polarization: Option<Vec<u64>>,
    pub polarization_error: Option<String>,
    pub characters: Vec<CharacterRow>,
    /// Nontrivial characters whose eigensheaf twist has degree 0, where the
    /// torsion value `g - 1` was used.
    pub torsion_twists: Vec<Character>,
    /// `sum_chi eigendim(chi) == cover_genus`.
    pub total_check: bool,
    /// Riemann–Hurwitz against the permutation count; `None` if the group is
    /// above the brute-force bound.
    pub genus_oracle_check: Option<bool>,
}

impl InvariantsReport {
    pub fn compute(spec: &CoverSpec) -> Result<Self> {
        let data = spec.build()?;
        let cover_genus = genus_rh(spec)?;
        let prym_dim = cover_genus - spec.base_genus();
        let (polarization, polarization_error) = match polarization_from(spec, prym_dim) {
            Ok(delta) => (Some(delta), None),
            Err(err) => (None, Some(err.to_string())),
        };
        let dims = eigenspace_dims_from(spec.base_genus(), &data);
        let group = spec.group();
        let characters: Vec<CharacterRow> = data
            .characters()
            .iter()
            .zip(&dims)
            .enumerate()
            .map(|(x, (chi, &eigendim))| CharacterRow {
                character: chi.clone(),
                order: group.character_order(chi),
                degree: data.degree_at(x),
                eigendim,
            })
            .collect();
        let torsion_twists = (1..characters.len())
            .filter(|&x| data.degree_at(data.inverse_index(x)) == 0)
            .map(|x| data.characters()[x].clone())
            .collect();
        let total_check = dims.iter().sum::<u64>() == cover_genus;
        let genus_oracle_check = match genus_permutation_oracle(spec, DEFAULT_MAX_ORDER) {
            Ok(g) => Some(g == cover_genus),
            Err(Error::BoundExceeded { .. }) => None,
            Err(err) => return Err(err),
        };
        Ok(InvariantsReport {
            cover_genus,
            prym_dim,
            polarization,
            polarization_error,
            characters,
            torsion_twists,
            total_check,
            genus_oracle_check,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Passed,
    Failed,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

impl IdentityCheck {
    fn new(name: &str, passed: bool, detail: String) -> Self {
        IdentityCheck {
            name: name.to_string(),
            status: if passed { CheckStatus::Passed } else { CheckStatus::Failed },
            detail,
        }
    }
}

/// Every internal identity relating the building data and the genus formulas.
/// The first failing pair of characters is named in each detail.
pub fn consistency_checks(spec: &CoverSpec) -> Result<Vec<IdentityCheck>> {
    let data = spec.build()?;
    let group = spec.group();
    let g = spec.base_genus();
    let cover_genus = genus_rh(spec)?;
    let count = data.characters().len();
    let mut checks = Vec::new();

    checks.push(match genus_permutation_oracle(spec, DEFAULT_MAX_ORDER) {
        Ok(oracle) => IdentityCheck::new(
            "riemann-hurwitz-vs-permutation-count",
            oracle == cover_genus,
            format!("Riemann-Hurwitz {cover_genus}, cycle count {oracle}"),
        ),
        Err(Error::BoundExceeded { limit, .. }) => IdentityCheck {
            name: "riemann-hurwitz-vs-permutation-count".to_string(),
            status: CheckStatus::Skipped,
            detail: format!("|G| above {limit}"),
        },
        Err(err) => return Err(err),
    });

    let dims = eigenspace_dims_from(g, &data);
    let total: u64 = dims.iter().sum();
    checks.push(IdentityCheck::new(
        "eigenspace-sum",
        total == cover_genus,
        format!("sum of eigenspace dimensions {total}, genus {cover_genus}"),
    ));

    let n = group.order() as i128;
    let d_sum: i128 = (1..count).map(|x| data.degree_at(x) as i128).sum();
    let cw = g as i128 + (n - 1) * (g as i128 - 1) + d_sum;
    checks.push(IdentityCheck::new(
        "chevalley-weil-total",
        cw == cover_genus as i128,
        format!("g + (n - 1)(g - 1) + sum d = {cw}, genus {cover_genus}"),
    ));

    let mut cocycle = None;
    'outer: for x in 0..count {
        for y in 0..count {
            let lhs = data.degree_at(x) + data.degree_at(y);
            let rhs = data.degree_at(data.product_index(x, y)) + data.degree_d_at(x, y);
            if lhs != rhs {
                cocycle = Some((x, y, lhs, rhs));
                break 'outer;
            }
        }
    }
    checks.push(IdentityCheck::new(
        "degree-cocycle",
        cocycle.is_none(),
        match cocycle {
            None => format!("d_chi + d_chi' = d_chi chi' + deg D on all {} pairs", count * count),
            Some((x, y, l, r)) => format!(
                "{} and {}: {l} != {r}",
                data.characters()[x],
                data.characters()[y]
            ),
        },
    ));

    let mut conjugate = None;
    for (x, chi) in data.characters().iter().enumerate() {
        let lhs = data.degree_at(x) + data.degree_at(data.inverse_index(x));
        let rhs = spec.nontrivial_count(chi)?;
        if lhs != rhs {
            conjugate = Some((x, lhs, rhs));
            break;
        }
    }
    checks.push(IdentityCheck::new(
        "conjugate-degree-sum",
        conjugate.is_none(),
        match conjugate {
            None => "d_chi + d_chi^-1 = #{i : chi(h_i) != 1} for all characters".to_string(),
            Some((x, l, r)) => format!("{}: {l} != {r}", data.characters()[x]),
        },
    ));

    let mut iteration = None;
    for (x, chi) in data.characters().iter().enumerate() {
        let order = group.character_order(chi);
        let lhs = order * data.degree_at(x);
        let rhs: u64 = (1..order)
            .map(|k| data.degree_d_at(data.index(&group.char_pow(chi, k)), x))
            .sum();
        if lhs != rhs {
            iteration = Some((x, lhs, rhs));
            break;
        }
    }
    checks.push(IdentityCheck::new(
        "iteration",
        iteration.is_none(),
        match iteration {
            None => "ord(chi) d_chi = sum_k deg D_{chi^k, chi} for all characters".to_string(),
            Some((x, l, r)) => format!("{}: {l} != {r}", data.characters()[x]),
        },
    ));

    checks.push(match spec.reduced() {
        Ok(reduced) => IdentityCheck::new(
            "reduced-degrees",
            true,
            format!("n_i deg L_i = d_i with d = {:?}", reduced.row_sums),
        ),
        Err(Error::Inconsistent(msg)) => IdentityCheck::new("reduced-degrees", false, msg),
        Err(err) => return Err(err),
    });

    let p = cover_genus - g;
    checks.push(match polarization_from(spec, p) {
        Ok(delta) => IdentityCheck::new(
            "polarization-length",
            delta.len() as u64 == p,
            format!("{} entries, p = {p}", delta.len()),
        ),
        Err(err) => IdentityCheck {
            name: "polarization-length".to_string(),
            status: CheckStatus::Skipped,
            detail: err.to_string(),
        },
    });
    Ok(checks)
}
