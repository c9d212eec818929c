use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::datum::{DotOutcome, RootDatum};
use super::freudenthal::WeightSystem;
use super::weight::Weight;
use crate::error::{Error, Result};

/// Weyl dimension formula `∏_{α>0} (λ + ρ, α) / (ρ, α)`.
pub fn weyl_dim(datum: &RootDatum, lambda: &Weight) -> Result<u128> {
    datum.check_dominant(lambda)?;
    let shifted = lambda + datum.rho();
    let mut num = BigUint::from(1u32);
    let mut den = BigUint::from(1u32);
    for root in datum.positive_roots() {
        let a = datum.root_pairing_scaled(&shifted, root);
        let b = datum.root_pairing_scaled(datum.rho(), root);
        num *= BigUint::from(a as u64);
        den *= BigUint::from(b as u64);
    }
    let (q, r) = (&num / &den, &num % &den);
    debug_assert!(r.is_zero());
    q.to_u128().ok_or(Error::Overflow("Weyl dimension"))
}

/// Decomposes `V_λ ⊗ V_μ` into irreducibles (Klimyk's formula: shift the
/// weights of the smaller factor by the larger highest weight and fold back
/// with the dot action).
pub fn tensor_decompose(
    datum: &RootDatum,
    lambda: &Weight,
    mu: &Weight,
) -> Result<BTreeMap<Weight, u64>> {
    datum.check_dominant(lambda)?;
    datum.check_dominant(mu)?;
    let (big, small) = if weyl_dim(datum, lambda)? >= weyl_dim(datum, mu)? {
        (lambda, mu)
    } else {
        (mu, lambda)
    };
    let weights = WeightSystem::new(datum, small)?.all_weights(datum);
    let mut acc: BTreeMap<Weight, i64> = BTreeMap::new();
    for (nu, m) in weights {
        if let DotOutcome::Regular { length, dominant } = datum.dot_dominant(&(big + &nu))? {
            let sign = if length % 2 == 0 { 1 } else { -1 };
            *acc.entry(dominant).or_insert(0) += sign * m as i64;
        }
    }
    acc.into_iter()
        .filter(|(_, m)| *m != 0)
        .map(|(w, m)| {
            u64::try_from(m).map(|m| (w.clone(), m)).map_err(|_| {
                Error::OracleDisagreement(format!(
                    "negative multiplicity {m} for {w} in {lambda} ⊗ {mu}"
                ))
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::TypeLetter;

    fn w(c: &[i64]) -> Weight {
        Weight::new(c.to_vec())
    }

    #[test]
    fn a1_dimensions() {
        let d = RootDatum::new(TypeLetter::A, 1).unwrap();
        for k in 0..10 {
            assert_eq!(weyl_dim(&d, &w(&[k])).unwrap(), k as u128 + 1);
        }
    }

    #[test]
    fn known_dimensions() {
        let cases: &[(TypeLetter, usize, &[i64], u128)] = &[
            (TypeLetter::A, 2, &[1, 1], 8),
            (TypeLetter::B, 3, &[0, 0, 1], 8),
            (TypeLetter::C, 3, &[0, 0, 1], 14),
            (TypeLetter::G, 2, &[1, 0], 7),
            (TypeLetter::G, 2, &[0, 1], 14),
            (TypeLetter::F, 4, &[0, 0, 0, 1], 26),
            (TypeLetter::E, 6, &[1, 0, 0, 0, 0, 0], 27),
            (TypeLetter::E, 7, &[0, 0, 0, 0, 0, 0, 1], 56),
            (TypeLetter::E, 8, &[0, 0, 0, 0, 0, 0, 0, 1], 248),
        ];
        for &(l, r, c, dim) in cases {
            let d = RootDatum::new(l, r).unwrap();
            assert_eq!(weyl_dim(&d, &w(c)).unwrap(), dim, "{l}{r} {c:?}");
        }
    }

    #[test]
    fn non_dominant_rejected() {
        let d = RootDatum::new(TypeLetter::A, 2).unwrap();
        assert!(matches!(
            weyl_dim(&d, &w(&[-1, 0])),
            Err(Error::NotDominant(_))
        ));
        assert!(tensor_decompose(&d, &w(&[0, 0]), &w(&[1, -1])).is_err());
    }

    #[test]
    fn clebsch_gordan() {
        let d = RootDatum::new(TypeLetter::A, 1).unwrap();
        let p = tensor_decompose(&d, &w(&[1]), &w(&[1])).unwrap();
        assert_eq!(p, BTreeMap::from([(w(&[0]), 1), (w(&[2]), 1)]));
    }

    #[test]
    fn three_times_three_bar() {
        let d = RootDatum::new(TypeLetter::A, 2).unwrap();
        let p = tensor_decompose(&d, &w(&[1, 0]), &w(&[0, 1])).unwrap();
        assert_eq!(p, BTreeMap::from([(w(&[0, 0]), 1), (w(&[1, 1]), 1)]));
    }

    #[test]
    fn unit_of_tensor_ring() {
        let d = RootDatum::new(TypeLetter::B, 2).unwrap();
        let mu = w(&[2, 1]);
        let p = tensor_decompose(&d, &w(&[0, 0]), &mu).unwrap();
        assert_eq!(p, BTreeMap::from([(mu, 1)]));
    }
}
