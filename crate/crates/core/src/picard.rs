//! Central charges and the Picard lattice of the parahoric moduli stack.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::alcove::{ell_of_datum, Facet, ParahoricDatum};
use crate::error::{Error, Result};
use crate::liealg::{RootDatum, Weight};

/// A line bundle on the affine flag variety, one coefficient per affine
/// node `0..=rank`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FlagLineBundle {
    pub coords: Vec<i64>,
}

impl FlagLineBundle {
    pub fn new(coords: Vec<i64>) -> Self {
        Self { coords }
    }

    pub fn basis(rank: usize, node: usize) -> Self {
        let mut coords = vec![0; rank + 1];
        coords[node] = 1;
        Self { coords }
    }
}

/// `Σ_α coords[α] a_α^∨` with `a_0^∨ = 1`.
pub fn central_charge(datum: &RootDatum, bundle: &FlagLineBundle) -> Result<i64> {
    if bundle.coords.len() != datum.rank() + 1 {
        return Err(Error::IndexMismatch {
            point: String::new(),
            got: bundle.coords.len(),
            expected: datum.rank() + 1,
        });
    }
    Ok(bundle
        .coords
        .iter()
        .zip(datum.affine_comarks())
        .map(|(n, a)| n * a)
        .sum())
}

/// Central charge of a vector indexed by the nodes of a facet.
pub fn facet_charge(datum: &RootDatum, facet: &Facet, coords: &[i64]) -> i64 {
    let comarks = datum.affine_comarks();
    facet
        .nodes()
        .iter()
        .zip(coords)
        .map(|(&node, n)| n * comarks[node])
        .sum()
}

fn check_vector(point: &str, facet: &Facet, coords: &[i64]) -> Result<()> {
    if coords.len() != facet.len() {
        return Err(Error::IndexMismatch {
            point: point.to_string(),
            got: coords.len(),
            expected: facet.len(),
        });
    }
    Ok(())
}

/// Looks up one vector per marked point, rejecting unknown and missing labels.
fn per_point<'a>(
    parahoric: &'a ParahoricDatum,
    vectors: &'a BTreeMap<String, Vec<i64>>,
) -> Result<Vec<(&'a str, &'a Facet, &'a [i64])>> {
    for label in vectors.keys() {
        parahoric.point(label)?;
    }
    parahoric
        .points()
        .iter()
        .map(|p| {
            let v = vectors
                .get(&p.label)
                .ok_or_else(|| Error::MissingPoint(p.label.clone()))?;
            check_vector(&p.label, &p.facet, v)?;
            Ok((p.label.as_str(), &p.facet, v.as_slice()))
        })
        .collect()
}

/// Outcome of the descent test for a tuple of line bundles on
/// `∏_x Fl_{F_x}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum DescentVerdict {
    Descends {
        charge: i64,
    },
    UnequalCharges {
        reference: String,
        reference_charge: i64,
        point: String,
        charge: i64,
    },
    NotMultipleOfEll {
        charge: i64,
        ell: i64,
    },
}

impl DescentVerdict {
    pub fn descends(&self) -> bool {
        matches!(self, DescentVerdict::Descends { .. })
    }
}

impl fmt::Display for DescentVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DescentVerdict::Descends { charge } => {
                write!(f, "descends with central charge {charge}")
            }
            DescentVerdict::UnequalCharges {
                reference,
                reference_charge,
                point,
                charge,
            } => write!(
                f,
                "unequal central charges: {point:?} has {charge} but {reference:?} has {reference_charge}"
            ),
            DescentVerdict::NotMultipleOfEll { charge, ell } => {
                write!(f, "central charge {charge} is not a multiple of ℓ = {ell}")
            }
        }
    }
}

/// A tuple descends to the moduli stack iff all per-point central charges
/// agree and the common value is a multiple of `ℓ`.
pub fn descends(
    parahoric: &ParahoricDatum,
    tuple: &BTreeMap<String, Vec<i64>>,
) -> Result<DescentVerdict> {
    let ell = ell_of_datum(parahoric)?;
    let datum = parahoric.datum();
    let entries = per_point(parahoric, tuple)?;
    let (ref_label, ref_facet, ref_vec) = entries[0];
    let reference_charge = facet_charge(datum, ref_facet, ref_vec);
    for &(label, facet, v) in &entries[1..] {
        let charge = facet_charge(datum, facet, v);
        if charge != reference_charge {
            return Ok(DescentVerdict::UnequalCharges {
                reference: ref_label.to_string(),
                reference_charge,
                point: label.to_string(),
                charge,
            });
        }
    }
    if reference_charge % ell != 0 {
        return Ok(DescentVerdict::NotMultipleOfEll {
            charge: reference_charge,
            ell,
        });
    }
    Ok(DescentVerdict::Descends {
        charge: reference_charge,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PicardLattice {
    /// Rank of `Pic(M(G))`.
    pub free_rank: usize,
    /// Central charges realized are exactly the multiples of this index.
    pub charge_index: i64,
}

/// `Pic(M(G))` sits in `0 → ∏_x X*(G_x) → Pic → ℓℤ → 0`; the character
/// group at `x` has rank `|S(F_x)| − 1`.
pub fn pic_lattice(parahoric: &ParahoricDatum) -> Result<PicardLattice> {
    let ell = ell_of_datum(parahoric)?;
    let free_rank = 1 + parahoric
        .points()
        .iter()
        .map(|p| p.facet.len() - 1)
        .sum::<usize>();
    Ok(PicardLattice {
        free_rank,
        charge_index: ell,
    })
}

/// A line bundle on the moduli stack, given by its per-point tuples
/// `e(x) ∈ ℤ^{S(F_x)}` (ordered by sorted `S(F_x)`) and its central charge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StackLineBundle {
    pub charge: i64,
    pub points: BTreeMap<String, Vec<i64>>,
}

impl StackLineBundle {
    /// Checks `Σ_{α ∈ S(F_x)} n^x_α a_α^∨ = charge` at every point and that
    /// the charge is a multiple of `ℓ`.
    pub fn validate(&self, parahoric: &ParahoricDatum) -> Result<()> {
        let ell = ell_of_datum(parahoric)?;
        for (label, facet, v) in per_point(parahoric, &self.points)? {
            let c = facet_charge(parahoric.datum(), facet, v);
            if c != self.charge {
                return Err(Error::InvalidBundle(format!(
                    "point {label:?} has central charge {c}, bundle declares {}",
                    self.charge
                )));
            }
        }
        if self.charge % ell != 0 {
            return Err(Error::InvalidBundle(format!(
                "charge {} is not a multiple of ℓ = {ell}",
                self.charge
            )));
        }
        Ok(())
    }

    /// Central charge read off the tuple at one point.
    pub fn charge_at(&self, parahoric: &ParahoricDatum, label: &str) -> Result<i64> {
        let p = parahoric.point(label)?;
        let v = self
            .points
            .get(label)
            .ok_or_else(|| Error::MissingPoint(label.to_string()))?;
        check_vector(label, &p.facet, v)?;
        Ok(facet_charge(parahoric.datum(), &p.facet, v))
    }
}

/// Pullback of a stack line bundle to the Iwahori stack, split as a power of
/// the Faltings bundle times boundary characters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PullbackDecomposition {
    pub faltings_power: i64,
    pub characters: BTreeMap<String, Weight>,
}

/// `faltings_power = charge`, and the character at `x` is
/// `Σ_{α ∈ S(F_x), α ≠ 0} n^x_α ω_α` (`ω_0` is trivial).
pub fn decompose_pullback(
    parahoric: &ParahoricDatum,
    bundle: &StackLineBundle,
) -> Result<PullbackDecomposition> {
    bundle.validate(parahoric)?;
    let rank = parahoric.datum().rank();
    let characters = per_point(parahoric, &bundle.points)?
        .into_iter()
        .map(|(label, facet, v)| {
            let mut coords = vec![0; rank];
            for (&node, &n) in facet.nodes().iter().zip(v) {
                if node != 0 {
                    coords[node - 1] = n;
                }
            }
            (label.to_string(), Weight::new(coords))
        })
        .collect();
    Ok(PullbackDecomposition {
        faltings_power: bundle.charge,
        characters,
    })
}

/// Inverse of [`decompose_pullback`]: recovers the per-point tuples from the
/// charge and the characters; `n_0` absorbs the remaining charge.
pub fn compose_pullback(
    parahoric: &ParahoricDatum,
    decomposition: &PullbackDecomposition,
) -> Result<StackLineBundle> {
    let datum = parahoric.datum();
    let comarks = datum.affine_comarks();
    let charge = decomposition.faltings_power;
    let mut points = BTreeMap::new();
    for label in decomposition.characters.keys() {
        parahoric.point(label)?;
    }
    for p in parahoric.points() {
        let ch = decomposition
            .characters
            .get(&p.label)
            .ok_or_else(|| Error::MissingPoint(p.label.clone()))?;
        datum.check_weight(ch)?;
        if (1..=datum.rank()).any(|n| ch.coeff(n) != 0 && !p.facet.contains(n)) {
            return Err(Error::BoundarySupport {
                point: p.label.clone(),
            });
        }
        let finite: i64 = p
            .facet
            .finite_nodes()
            .map(|n| ch.coeff(n) * comarks[n])
            .sum();
        let v: Vec<i64> = p
            .facet
            .nodes()
            .iter()
            .map(|&n| if n == 0 { charge - finite } else { ch.coeff(n) })
            .collect();
        points.insert(p.label.clone(), v);
    }
    let bundle = StackLineBundle { charge, points };
    bundle.validate(parahoric)?;
    Ok(bundle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alcove::MarkedPoint;
    use crate::liealg::TypeLetter;

    fn parahoric(letter: TypeLetter, rank: usize, facets: &[&[usize]]) -> ParahoricDatum {
        let d = RootDatum::new(letter, rank).unwrap();
        let pts = facets
            .iter()
            .enumerate()
            .map(|(i, f)| MarkedPoint {
                label: format!("x{i}"),
                facet: Facet::new(f.iter().copied()).unwrap(),
            })
            .collect();
        ParahoricDatum::new(d, 0, pts, 1).unwrap()
    }

    fn tuple(entries: &[(&str, &[i64])]) -> BTreeMap<String, Vec<i64>> {
        entries
            .iter()
            .map(|(l, v)| (l.to_string(), v.to_vec()))
            .collect()
    }

    #[test]
    fn central_charge_examples() {
        let a2 = RootDatum::new(TypeLetter::A, 2).unwrap();
        assert_eq!(
            central_charge(&a2, &FlagLineBundle::basis(2, 0)).unwrap(),
            1
        );
        assert_eq!(
            central_charge(&a2, &FlagLineBundle::new(vec![0; 3])).unwrap(),
            0
        );
        assert_eq!(
            central_charge(&a2, &FlagLineBundle::new(vec![1, 1, 1])).unwrap(),
            3
        );
        assert!(central_charge(&a2, &FlagLineBundle::new(vec![1, 1])).is_err());
        let g2 = RootDatum::new(TypeLetter::G, 2).unwrap();
        assert_eq!(
            central_charge(&g2, &FlagLineBundle::basis(2, 2)).unwrap(),
            2
        );
    }

    #[test]
    fn descent_examples() {
        let p = parahoric(TypeLetter::A, 1, &[&[0, 1], &[0, 1]]);
        let yes = descends(&p, &tuple(&[("x0", &[1, 1]), ("x1", &[2, 0])])).unwrap();
        assert_eq!(yes, DescentVerdict::Descends { charge: 2 });
        let no = descends(&p, &tuple(&[("x0", &[1, 0]), ("x1", &[1, 1])])).unwrap();
        assert!(matches!(
            no,
            DescentVerdict::UnequalCharges { charge: 2, .. }
        ));

        let single = parahoric(TypeLetter::B, 3, &[&[2]]);
        assert!(descends(&single, &tuple(&[("x0", &[3])]))
            .unwrap()
            .descends());

        let mixed = parahoric(TypeLetter::B, 3, &[&[2], &[0]]);
        assert_eq!(
            descends(&mixed, &tuple(&[("x0", &[1]), ("x1", &[2])])).unwrap(),
            DescentVerdict::Descends { charge: 2 }
        );
        let g2 = parahoric(TypeLetter::G, 2, &[&[2], &[1]]);
        // comarks are (1, 2), so ℓ = lcm(2, 1) = 2 and both charges are 2.
        assert_eq!(
            descends(&g2, &tuple(&[("x0", &[1]), ("x1", &[2])])).unwrap(),
            DescentVerdict::Descends { charge: 2 }
        );
    }

    #[test]
    fn descent_index_errors() {
        let p = parahoric(TypeLetter::A, 1, &[&[0, 1]]);
        assert!(matches!(
            descends(&p, &tuple(&[("x0", &[1])])),
            Err(Error::IndexMismatch { .. })
        ));
        assert!(matches!(
            descends(&p, &tuple(&[("x0", &[1, 1]), ("zz", &[1, 1])])),
            Err(Error::UnknownPoint(_))
        ));
        assert!(matches!(
            descends(&p, &tuple(&[])),
            Err(Error::MissingPoint(_))
        ));
    }

    #[test]
    fn pic_lattice_examples() {
        let v0 = parahoric(TypeLetter::E, 6, &[&[0]]);
        assert_eq!(
            pic_lattice(&v0).unwrap(),
            PicardLattice {
                free_rank: 1,
                charge_index: 1
            }
        );
        let sl2 = parahoric(TypeLetter::A, 1, &[&[0, 1]]);
        assert_eq!(pic_lattice(&sl2).unwrap().free_rank, 2);
        let a2 = parahoric(TypeLetter::A, 2, &[&[0, 1, 2], &[0, 1, 2]]);
        assert_eq!(pic_lattice(&a2).unwrap().free_rank, 5);
        let b3 = parahoric(TypeLetter::B, 3, &[&[2, 3]]);
        assert_eq!(
            pic_lattice(&b3).unwrap(),
            PicardLattice {
                free_rank: 2,
                charge_index: 1
            }
        );
    }

    #[test]
    fn decomposition_examples() {
        let p = parahoric(TypeLetter::A, 1, &[&[0, 1]]);
        let b = StackLineBundle {
            charge: 2,
            points: tuple(&[("x0", &[1, 1])]),
        };
        let d = decompose_pullback(&p, &b).unwrap();
        assert_eq!(d.faltings_power, 2);
        assert_eq!(d.characters["x0"], Weight::new(vec![1]));
        assert_eq!(compose_pullback(&p, &d).unwrap(), b);

        let v0 = parahoric(TypeLetter::A, 2, &[&[0]]);
        let b = StackLineBundle {
            charge: 5,
            points: tuple(&[("x0", &[5])]),
        };
        let d = decompose_pullback(&v0, &b).unwrap();
        assert_eq!(d.faltings_power, 5);
        assert!(d.characters["x0"].is_zero());

        let zero = StackLineBundle {
            charge: 0,
            points: tuple(&[("x0", &[-3, 3])]),
        };
        let d = decompose_pullback(&p, &zero).unwrap();
        assert_eq!(d.faltings_power, 0);
        assert_eq!(d.characters["x0"], Weight::new(vec![3]));
    }

    #[test]
    fn invalid_bundles_rejected() {
        let p = parahoric(TypeLetter::A, 1, &[&[0, 1], &[1]]);
        let b = StackLineBundle {
            charge: 2,
            points: tuple(&[("x0", &[1, 1]), ("x1", &[3])]),
        };
        assert!(matches!(
            decompose_pullback(&p, &b),
            Err(Error::InvalidBundle(_))
        ));
        let b3 = parahoric(TypeLetter::B, 3, &[&[2]]);
        let odd = StackLineBundle {
            charge: 3,
            points: tuple(&[("x0", &[1])]),
        };
        assert!(matches!(odd.validate(&b3), Err(Error::InvalidBundle(_))));
    }
}
