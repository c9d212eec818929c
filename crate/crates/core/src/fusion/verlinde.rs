use std::collections::BTreeMap;

use super::table::FusionTable;
use crate::alcove::{is_admissible, MarkedPoint, ParahoricDatum};
use crate::error::{Error, Result};
use crate::liealg::Weight;

/// Where the pair `(μ, μ^†)` produced by cutting a handle is inserted.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum HandleOrder {
    /// `V_g(λ⃗) = Σ_μ V_{g−1}(λ⃗, μ, μ^†)`.
    #[default]
    Append,
    /// `V_g(λ⃗) = Σ_μ V_{g−1}(μ, μ^†, λ⃗)`.
    Prepend,
}

/// Dimension of the space of vacua on a genus-`g` curve with the given
/// insertions from `P_c`, by genus factorization down to genus 0 and
/// iterated fusion there.
pub fn vacua_dim(
    table: &FusionTable,
    genus: u32,
    insertions: &[Weight],
    order: HandleOrder,
) -> Result<u128> {
    let idx: Vec<usize> = insertions
        .iter()
        .map(|w| table.index_of(w))
        .collect::<Result<_>>()?;
    match order {
        HandleOrder::Append => {
            let mut v = vec![0u128; table.len()];
            v[0] = 1;
            for &i in &idx {
                v = table.multiply(&v, i)?;
            }
            contract_appended(table, &v, genus)
        }
        HandleOrder::Prepend => contract_prepended(table, &idx, genus),
    }
}

/// `v` is the fused product of the insertions so far; handles are appended.
fn contract_appended(table: &FusionTable, v: &[u128], genus: u32) -> Result<u128> {
    if genus == 0 {
        // Coefficient of the trivial weight.
        return Ok(v[0]);
    }
    let mut total = 0u128;
    for mu in 0..table.len() {
        let w = table.multiply(v, mu)?;
        let w = table.multiply(&w, table.dual_index(mu))?;
        total += contract_appended(table, &w, genus - 1)?;
    }
    Ok(total)
}

fn contract_prepended(table: &FusionTable, idx: &[usize], genus: u32) -> Result<u128> {
    if genus == 0 {
        let mut v = vec![0u128; table.len()];
        v[0] = 1;
        for &i in idx {
            v = table.multiply(&v, i)?;
        }
        return Ok(v[0]);
    }
    let mut total = 0u128;
    for mu in 0..table.len() {
        let mut next = Vec::with_capacity(idx.len() + 2);
        next.push(mu);
        next.push(table.dual_index(mu));
        next.extend_from_slice(idx);
        total += contract_prepended(table, &next, genus - 1)?;
    }
    Ok(total)
}

/// Checks every insertion against `P_c^{F_x}` and returns them in the order
/// of the marked points.
pub fn admissible_insertions(
    parahoric: &ParahoricDatum,
    insertions: &BTreeMap<String, Weight>,
) -> Result<Vec<Weight>> {
    parahoric.check_level()?;
    let datum = parahoric.datum();
    for label in insertions.keys() {
        parahoric.point(label)?;
    }
    parahoric
        .points()
        .iter()
        .map(|p| {
            let w = insertions
                .get(&p.label)
                .ok_or_else(|| Error::MissingPoint(p.label.clone()))?;
            datum.check_weight(w)?;
            if !is_admissible(datum, parahoric.level(), &p.facet, w) {
                return Err(Error::Inadmissible {
                    point: p.label.clone(),
                    weight: w.clone(),
                    facet: p.facet.nodes().to_vec(),
                    level: parahoric.level(),
                });
            }
            Ok(w.clone())
        })
        .collect()
}

/// Dimension of the space of parahoric vacua for the marked curve.
pub fn verlinde_dim(
    table: &FusionTable,
    parahoric: &ParahoricDatum,
    insertions: &BTreeMap<String, Weight>,
) -> Result<u128> {
    table.check_matches(parahoric.datum(), parahoric.level())?;
    let weights = admissible_insertions(parahoric, insertions)?;
    vacua_dim(table, parahoric.genus(), &weights, HandleOrder::Append)
}

/// Adjoins a marked point carrying the trivial weight and recomputes the
/// dimension. The facet must admit `0` at this level.
pub fn propagate(
    table: &FusionTable,
    parahoric: &ParahoricDatum,
    insertions: &BTreeMap<String, Weight>,
    new_point: MarkedPoint,
) -> Result<u128> {
    let label = new_point.label.clone();
    let extended = parahoric.with_point(new_point)?;
    let mut ins = insertions.clone();
    ins.insert(label, Weight::zero(parahoric.datum().rank()));
    verlinde_dim(table, &extended, &ins)
}
