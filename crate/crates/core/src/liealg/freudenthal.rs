use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use num_traits::Zero;

use super::datum::RootDatum;
use super::weight::Weight;
use crate::error::{Error, Result};
use crate::Rational;

/// Weight multiplicities of the irreducible module `V_λ`, computed by the
/// Freudenthal recursion on dominant weights.
#[derive(Clone, Debug)]
pub struct WeightSystem {
    highest: Weight,
    dominant: BTreeMap<Weight, u64>,
}

impl WeightSystem {
    pub fn new(datum: &RootDatum, highest: &Weight) -> Result<Self> {
        datum.check_dominant(highest)?;
        let dominant_weights = dominant_weights_below(datum, highest);

        // Depth of λ − μ in simple-root coordinates.
        let mut ordered: Vec<(Weight, Vec<i64>)> = dominant_weights
            .into_iter()
            .map(|mu| {
                let depth = datum
                    .to_root_coords(&(highest - &mu))
                    .expect("dominant weights of V_λ lie in λ − Q+");
                (mu, depth)
            })
            .collect();
        ordered.sort_by_key(|(_, d)| d.iter().sum::<i64>());

        let roots: Vec<(Weight, &[i64])> = datum
            .positive_roots()
            .iter()
            .map(|r| (datum.root_to_weight(r), r.as_slice()))
            .collect();
        let rho = datum.rho();
        let top = &(highest + rho);
        let top_norm = datum.inner(top, top);

        let mut mults: HashMap<Weight, u64> = HashMap::new();
        for (mu, depth) in &ordered {
            if mu == highest {
                mults.insert(mu.clone(), 1);
                continue;
            }
            let shifted = mu + rho;
            let denom = top_norm - datum.inner(&shifted, &shifted);
            debug_assert!(denom > Rational::zero());
            let mut sum = Rational::zero();
            for (alpha_w, alpha_r) in &roots {
                let mut depth_k = depth.clone();
                let mut nu = mu.clone();
                loop {
                    for (d, a) in depth_k.iter_mut().zip(alpha_r.iter()) {
                        *d -= a;
                    }
                    if depth_k.iter().any(|&d| d < 0) {
                        break;
                    }
                    nu = &nu + alpha_w;
                    let m = mults
                        .get(&datum.dominant_conjugate(&nu))
                        .copied()
                        .unwrap_or(0);
                    if m != 0 {
                        sum += datum.inner(&nu, alpha_w) * Rational::from_integer(m as i64);
                    }
                }
            }
            let m = (sum * Rational::from_integer(2)) / denom;
            if !m.is_integer() || m < Rational::zero() {
                return Err(Error::OracleDisagreement(format!(
                    "Freudenthal produced multiplicity {m} at {mu} in V_{highest}"
                )));
            }
            mults.insert(mu.clone(), m.to_integer() as u64);
        }

        let dominant = mults.into_iter().filter(|(_, m)| *m > 0).collect();
        Ok(Self {
            highest: highest.clone(),
            dominant,
        })
    }

    pub fn highest(&self) -> &Weight {
        &self.highest
    }

    /// Multiplicities of the dominant weights.
    pub fn dominant(&self) -> &BTreeMap<Weight, u64> {
        &self.dominant
    }

    /// Multiplicity of an arbitrary weight.
    pub fn multiplicity(&self, datum: &RootDatum, w: &Weight) -> u64 {
        self.dominant
            .get(&datum.dominant_conjugate(w))
            .copied()
            .unwrap_or(0)
    }

    /// All weights with their multiplicities.
    pub fn all_weights(&self, datum: &RootDatum) -> BTreeMap<Weight, u64> {
        let mut out = BTreeMap::new();
        for (mu, &m) in &self.dominant {
            for v in datum.cartan().orbit(mu.coords()) {
                out.insert(Weight::new(v), m);
            }
        }
        out
    }

    pub fn dimension(&self, datum: &RootDatum) -> u64 {
        self.dominant
            .iter()
            .map(|(mu, m)| m * datum.cartan().orbit(mu.coords()).len() as u64)
            .sum()
    }
}

/// Dominant `μ` with `λ − μ` in the positive root cone, found by walking down
/// from `λ` along positive roots.
fn dominant_weights_below(datum: &RootDatum, highest: &Weight) -> BTreeSet<Weight> {
    let roots: Vec<Weight> = datum
        .positive_roots()
        .iter()
        .map(|r| datum.root_to_weight(r))
        .collect();
    let mut seen = BTreeSet::from([highest.clone()]);
    let mut queue = VecDeque::from([highest.clone()]);
    while let Some(mu) = queue.pop_front() {
        for r in &roots {
            let nu = &mu - r;
            if nu.is_dominant() && !seen.contains(&nu) {
                seen.insert(nu.clone());
                queue.push_back(nu);
            }
        }
    }
    seen
}
