//! Re-verifiable witnesses for vanishing terms.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::pipeline::PipelineLog;
use crate::error::{Error, Result};
use crate::product::{is_zero, Family};
use crate::terms::{Term, CROSS_QUADRUPLE, SHORT_SEXTUPLE, SYMMETRIC_SEXTUPLE};

/// Which term a search targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// `x0·x1·(−x2)·(−x3)·x4·(−x5)`
    Short,
    /// `(x0△x1)·x2·(x3△x4)·(−x5)`
    Symmetric,
    /// `(x0△x1)·(x2△x3)`
    Quadruple,
}

impl Mode {
    pub fn term_text(self) -> &'static str {
        match self {
            Mode::Short => SHORT_SEXTUPLE,
            Mode::Symmetric => SYMMETRIC_SEXTUPLE,
            Mode::Quadruple => CROSS_QUADRUPLE,
        }
    }

    pub fn term(self) -> &'static Term {
        static TERMS: OnceLock<[Term; 3]> = OnceLock::new();
        let terms = TERMS.get_or_init(|| {
            [Mode::Short, Mode::Symmetric, Mode::Quadruple]
                .map(|m| Term::parse(m.term_text()).expect("built-in term parses"))
        });
        &terms[self as usize]
    }

    pub fn arity(self) -> usize {
        match self {
            Mode::Short | Mode::Symmetric => 6,
            Mode::Quadruple => 4,
        }
    }

    /// Family size that forces the ℓ⃗ pattern when `v` distinct ℓ⃗ values
    /// occur: `(V+1)(V+2)` for the short sextuple, `(V²+1)(V+2)` for the
    /// symmetric one and `2·V^(V+1)` for the quadruple. Never below the arity.
    pub fn required_members(self, v: usize) -> usize {
        let bound = match self {
            Mode::Short => (v + 1).saturating_mul(v + 2),
            Mode::Symmetric => (v.saturating_mul(v) + 1).saturating_mul(v + 2),
            Mode::Quadruple => {
                let exp = u32::try_from(v + 1).unwrap_or(u32::MAX);
                v.checked_pow(exp).map_or(usize::MAX, |x| x.saturating_mul(2))
            }
        };
        bound.max(self.arity())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Inside,
    Outside,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// The ℓ⃗ pattern located the tuple.
    Pattern,
    /// Found by exhaustive enumeration.
    Exhaustive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoordinateRecord {
    pub zeta: usize,
    pub empty: bool,
    /// `ℓ^ζ` on the pairs the mode's pattern constrains, in pattern order.
    pub ell: Option<Vec<usize>>,
    /// Side of the anchor's witnessing gap.
    pub side: Option<Side>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Provenance {
    pub method: Method,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family_seed: Option<u64>,
    pub members: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distinct_ell: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theoretical_max: Option<u64>,
    pub required_members: Option<usize>,
    #[serde(default)]
    pub anomalies: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pipeline: Option<PipelineLog>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub indices: Vec<usize>,
    pub term: String,
    pub mode: Mode,
    pub coordinates: Vec<CoordinateRecord>,
    pub provenance: Provenance,
}

impl Certificate {
    /// Independent re-check against `fam`: indices strictly increasing and in
    /// range, the term is the mode's term, and it evaluates to zero in every
    /// coordinate.
    pub fn verify(&self, fam: &Family) -> Result<bool> {
        if !self.indices.windows(2).all(|w| w[0] < w[1]) {
            return Ok(false);
        }
        let term = Term::parse(&self.term)?;
        if &term != self.mode.term() || self.indices.len() != self.mode.arity() {
            return Ok(false);
        }
        if self.coordinates.len() != fam.kappa()
            || self.coordinates.iter().enumerate().any(|(z, c)| c.zeta != z || !c.empty)
        {
            return Ok(false);
        }
        Ok(is_zero(&fam.prod_eval(&term, &self.indices)?))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Evaluates the mode's term on `indices` and refuses to build a certificate
/// unless every coordinate is empty.
pub(super) fn certify(
    fam: &Family,
    mode: Mode,
    indices: Vec<usize>,
    annotate: impl Fn(usize) -> (Option<Vec<usize>>, Option<Side>),
    provenance: Provenance,
) -> Result<Certificate> {
    let value = fam.prod_eval(mode.term(), &indices)?;
    if let Some(zeta) = value.iter().position(|a| !a.is_empty()) {
        return Err(Error::Consistency(format!(
            "{} does not vanish on {indices:?} in coordinate {zeta}",
            mode.term_text()
        )));
    }
    let coordinates = (0..fam.kappa())
        .map(|zeta| {
            let (ell, side) = annotate(zeta);
            CoordinateRecord { zeta, empty: true, ell, side }
        })
        .collect();
    let cert = Certificate { indices, term: mode.term_text().to_string(), mode, coordinates, provenance };
    debug_assert!(cert.verify(fam).unwrap_or(false));
    Ok(cert)
}
