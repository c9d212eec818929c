//! Borel–Weil–Bott degree bookkeeping for line bundles on products of
//! partial flag varieties over marked points.
//!
//! Degrees are returned as `Option<usize>`, with `None` meaning the relevant
//! character is singular (lies on a dot-wall) and cohomology vanishes.

use serde::{Deserialize, Serialize};

use crate::alcove::{levi_weyl, Facet};
use crate::error::{Error, Result};
use crate::liealg::{RootDatum, Weight};

/// One marked point: its facet, the character `λ_z` and the boundary
/// character `e(z)` (zero away from the boundary points).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Marking {
    pub label: String,
    pub facet: Facet,
    pub weight: Weight,
    pub boundary: Weight,
}

#[derive(Clone, Debug)]
pub struct BwbInput {
    datum: RootDatum,
    markings: Vec<Marking>,
    twist: u32,
}

impl BwbInput {
    pub fn new(datum: RootDatum, markings: Vec<Marking>, twist: u32) -> Result<Self> {
        let rank = datum.rank();
        let mut seen = std::collections::BTreeSet::new();
        for m in &markings {
            if !seen.insert(m.label.as_str()) {
                return Err(Error::DuplicateLabel(m.label.clone()));
            }
            m.facet.validate(rank)?;
            datum.check_weight(&m.weight)?;
            datum.check_weight(&m.boundary)?;
            let supported = m
                .boundary
                .coords()
                .iter()
                .enumerate()
                .all(|(i, &x)| x == 0 || m.facet.contains(i + 1));
            if !supported {
                return Err(Error::BoundarySupport {
                    point: m.label.clone(),
                });
            }
        }
        Ok(Self {
            datum,
            markings,
            twist,
        })
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn markings(&self) -> &[Marking] {
        &self.markings
    }

    pub fn twist(&self) -> u32 {
        self.twist
    }

    /// `λ_z + n·e(z)` for each marking.
    pub fn combined(&self) -> Vec<Weight> {
        let n = i64::from(self.twist);
        self.markings
            .iter()
            .map(|m| &m.weight + &(&m.boundary * n))
            .collect()
    }
}

/// Length of the Levi Weyl element taking `λ` to the Levi dominant chamber
/// under the dot action with the Levi's own `ρ`; `None` on a wall.
pub fn levi_dot_length(datum: &RootDatum, facet: &Facet, weight: &Weight) -> Result<Option<usize>> {
    datum.check_weight(weight)?;
    Ok(levi_weyl(datum, facet)?.dot_length(datum, weight))
}

/// Sum of the Levi dot lengths over all markings.
pub fn b_pi(input: &BwbInput) -> Result<Option<usize>> {
    let mut total = 0;
    for m in &input.markings {
        match levi_dot_length(&input.datum, &m.facet, &m.weight)? {
            Some(l) => total += l,
            None => return Ok(None),
        }
    }
    Ok(Some(total))
}

/// Sum of the full Weyl group dot lengths of `λ_z + n·e(z)`.
pub fn b_h(input: &BwbInput) -> Result<Option<usize>> {
    let mut total = 0;
    for w in input.combined() {
        match input.datum.dot_dominant(&w)?.length() {
            Some(l) => total += l,
            None => return Ok(None),
        }
    }
    Ok(Some(total))
}
