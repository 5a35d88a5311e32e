//! Raw family → semi-homogeneous subfamily → flattened homogeneous family →
//! certificate on the raw indices.

use serde::{Deserialize, Serialize};

use super::certificate::{certify, Certificate, Mode, Provenance};
use super::{ell_matrix, find_quadruple, find_sextuple, pigeonhole_state, PigeonholeState};
use crate::algebra::{Element, ExtPoint};
use crate::error::Result;
use crate::homogeneity::{extract_semi_homogeneous, Extraction, PartitioningSet};
use crate::product::Family;

/// One coordinate of the flattened family: segment `segment` of the raw
/// coordinate `zeta`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlatCoordinate {
    pub zeta: usize,
    pub segment: usize,
    pub lo: ExtPoint,
    pub hi: ExtPoint,
    pub order_size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PigeonholeSummary {
    pub members: usize,
    pub distinct_values: usize,
    pub theoretical_max: Option<u64>,
    pub required_members: usize,
    /// `ℓ⃗` ids repeated for at least two successors, per flattened member.
    pub repeated: Vec<Vec<usize>>,
    pub values: Vec<Vec<usize>>,
}

impl PigeonholeSummary {
    fn new(state: PigeonholeState, mode: Mode) -> Self {
        PigeonholeSummary {
            members: state.repeated.len(),
            distinct_values: state.distinct_values,
            theoretical_max: state.theoretical_max,
            required_members: mode.required_members(state.distinct_values),
            repeated: state.repeated,
            values: state.values,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PipelineLog {
    pub subset: Vec<usize>,
    pub parts: Vec<PartitioningSet>,
    pub flattening: Vec<FlatCoordinate>,
    pub pigeonhole: PigeonholeSummary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InsufficientReport {
    pub status: &'static str,
    pub mode: Mode,
    pub subset_size: usize,
    pub distinct_values: usize,
    pub required_members: usize,
    pub log: PipelineLog,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PipelineOutcome {
    Found(Box<Certificate>),
    Insufficient(Box<InsufficientReport>),
}

/// Makes every `(ζ, segment)` of the partitioning sets its own coordinate,
/// keeping only the members in `ext.subset`.
pub fn flatten(fam: &Family, ext: &Extraction) -> Result<(Family, Vec<FlatCoordinate>)> {
    let mut map = Vec::new();
    for (zeta, parts) in ext.parts.iter().enumerate() {
        let p = fam.order_sizes()[zeta];
        for (segment, (lo, hi)) in parts.segments().enumerate() {
            let order_size = hi.position(p) - lo.position(p);
            map.push(FlatCoordinate { zeta, segment, lo, hi, order_size });
        }
    }
    let members = ext
        .subset
        .iter()
        .map(|&alpha| {
            map.iter()
                .map(|fc| fam.member(alpha)[fc.zeta].restrict(fc.lo, fc.hi))
                .collect::<Result<Vec<Element>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let flat = Family::new(map.iter().map(|fc| fc.order_size).collect(), members)?.with_seed(fam.seed());
    Ok((flat, map))
}

/// Extraction, flattening and search. A certificate found on the flattened
/// family is mapped back through the subset and re-verified on `raw`.
pub fn pipeline(raw: &Family, mode: Mode) -> Result<PipelineOutcome> {
    let ext = extract_semi_homogeneous(raw);
    let (flat, flattening) = flatten(raw, &ext)?;
    let ells = ell_matrix(&flat)?;
    let log = PipelineLog {
        subset: ext.subset.clone(),
        parts: ext.parts.clone(),
        flattening,
        pigeonhole: PigeonholeSummary::new(pigeonhole_state(&ells), mode),
    };
    let found = match mode {
        Mode::Quadruple => find_quadruple(&flat)?,
        _ => find_sextuple(&flat, mode)?,
    };
    let Some(flat_cert) = found else {
        return Ok(PipelineOutcome::Insufficient(Box::new(InsufficientReport {
            status: "insufficient",
            mode,
            subset_size: ext.subset.len(),
            distinct_values: ells.distinct(),
            required_members: mode.required_members(ells.distinct()),
            log,
        })));
    };
    let indices: Vec<usize> = flat_cert.indices.iter().map(|&i| ext.subset[i]).collect();
    // a raw coordinate cut into one segment is its own flattened coordinate
    let single: Vec<Option<usize>> = (0..raw.kappa())
        .map(|zeta| {
            let mut it = log.flattening.iter().enumerate().filter(|(_, fc)| fc.zeta == zeta);
            match (it.next(), it.next()) {
                (Some((j, _)), None) => Some(j),
                _ => None,
            }
        })
        .collect();
    let annotate = |zeta: usize| match single[zeta] {
        Some(j) => {
            let rec = &flat_cert.coordinates[j];
            (rec.ell.clone(), rec.side)
        }
        None => (None, None),
    };
    let prov = Provenance {
        family_seed: raw.seed(),
        members: raw.len(),
        pipeline: Some(log),
        ..flat_cert.provenance.clone()
    };
    certify(raw, mode, indices, annotate, prov).map(|c| PipelineOutcome::Found(Box::new(c)))
}
