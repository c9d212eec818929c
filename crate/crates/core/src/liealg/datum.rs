use std::fmt;

use num_traits::Zero;

use super::cartan::{bourbaki_gram, CartanMatrix, TypeLetter};
use super::weight::Weight;
use crate::error::{Error, Result};
use crate::linalg;
use crate::Rational;

/// Result of moving a weight into the dominant chamber by the dot action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DotOutcome {
    /// `λ + ρ` has a nontrivial stabilizer.
    Singular,
    Regular {
        length: usize,
        dominant: Weight,
    },
}

impl DotOutcome {
    pub fn length(&self) -> Option<usize> {
        match self {
            DotOutcome::Singular => None,
            DotOutcome::Regular { length, .. } => Some(*length),
        }
    }
}

/// Cartan data of one simple type, with Bourbaki node numbering.
///
/// Indices into [`RootDatum::comarks`] and [`RootDatum::marks`] are
/// zero-based over the finite nodes `1..=rank`; the affine node `0` has mark
/// and comark 1 and is handled by [`RootDatum::affine_comarks`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    letter: TypeLetter,
    rank: usize,
    cartan: CartanMatrix,
    gram: Vec<Vec<i64>>,
    positive_roots: Vec<Vec<i64>>,
    marks: Vec<i64>,
    comarks: Vec<i64>,
    theta: Weight,
    rho: Weight,
    dual_perm: Vec<usize>,
    cartan_inverse: Vec<Vec<Rational>>,
    weight_gram: Vec<Vec<Rational>>,
}

impl fmt::Display for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.letter, self.rank)
    }
}

impl RootDatum {
    pub fn new(letter: TypeLetter, rank: usize) -> Result<Self> {
        let gram = bourbaki_gram(letter, rank)?;
        let cartan = CartanMatrix::from_gram(&gram);
        let positive_roots = cartan.positive_roots();
        let marks = positive_roots
            .last()
            .cloned()
            .expect("a simple type has positive roots");
        let theta = Weight::new(cartan.root_to_weight(&marks));
        let theta_norm = root_norm(&gram, &marks);

        let comarks = solve_comarks(&cartan, &gram, &marks, theta_norm)?;

        let q = |x: i64| Rational::from_integer(x);
        let cartan_q: Vec<Vec<Rational>> = cartan
            .rows()
            .iter()
            .map(|r| r.iter().map(|&x| q(x)).collect())
            .collect();
        let cartan_inverse =
            linalg::inverse(&cartan_q).ok_or(Error::Overflow("inverse Cartan matrix"))?;
        // (ω_i, ω_j) = (C^{-1})_{ij} (α_j, α_j) / 2, rescaled so (θ, θ) = 2.
        let weight_gram = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| cartan_inverse[i][j] * Rational::new(gram[j][j], theta_norm))
                    .collect()
            })
            .collect();

        let dual_perm = (0..rank)
            .map(|i| {
                let neg: Vec<i64> = (0..rank).map(|j| if i == j { -1 } else { 0 }).collect();
                let (dom, _) = cartan.dominant_conjugate(&neg);
                dom.iter()
                    .position(|&c| c == 1)
                    .filter(|_| dom.iter().sum::<i64>() == 1)
                    .expect("-w0 permutes fundamental weights")
            })
            .collect();

        Ok(Self {
            letter,
            rank,
            cartan,
            gram,
            positive_roots,
            marks,
            comarks,
            theta,
            rho: Weight::new(vec![1; rank]),
            dual_perm,
            cartan_inverse,
            weight_gram,
        })
    }

    pub fn letter(&self) -> TypeLetter {
        self.letter
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    /// Symmetric Gram matrix `(α_i, α_j)` of simple roots, short roots of
    /// squared length 2.
    pub fn root_gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    /// Positive roots in simple-root coordinates, by height.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    /// Coefficients `a_α` of the highest root `θ = Σ a_α α`.
    pub fn marks(&self) -> &[i64] {
        &self.marks
    }

    /// Coefficients `a_α^∨` of the highest coroot `θ^∨ = Σ a_α^∨ α^∨`.
    pub fn comarks(&self) -> &[i64] {
        &self.comarks
    }

    /// Comarks indexed by the affine node set `{0, 1, …, rank}`.
    pub fn affine_comarks(&self) -> Vec<i64> {
        std::iter::once(1)
            .chain(self.comarks.iter().copied())
            .collect()
    }

    /// Marks indexed by the affine node set `{0, 1, …, rank}`.
    pub fn affine_marks(&self) -> Vec<i64> {
        std::iter::once(1)
            .chain(self.marks.iter().copied())
            .collect()
    }

    /// Highest root in fundamental-weight coordinates.
    pub fn theta(&self) -> &Weight {
        &self.theta
    }

    /// The row evaluating `λ ↦ λ(θ^∨)`; equals the comarks.
    pub fn theta_covec(&self) -> &[i64] {
        &self.comarks
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    /// `1 + Σ a_α^∨`.
    pub fn dual_coxeter_number(&self) -> i64 {
        1 + self.comarks.iter().sum::<i64>()
    }

    /// `1 + Σ a_α`.
    pub fn coxeter_number(&self) -> i64 {
        1 + self.marks.iter().sum::<i64>()
    }

    /// The permutation of fundamental weights realizing `−w_0`.
    pub fn dual_permutation(&self) -> &[usize] {
        &self.dual_perm
    }

    /// `(ω_i, ω_j)` normalized so long roots have squared length 2.
    pub fn weight_gram(&self) -> &[Vec<Rational>] {
        &self.weight_gram
    }

    pub fn check_weight(&self, w: &Weight) -> Result<()> {
        if w.rank() != self.rank {
            return Err(Error::WeightRank {
                weight: w.clone(),
                got: w.rank(),
                expected: self.rank,
            });
        }
        Ok(())
    }

    pub fn check_dominant(&self, w: &Weight) -> Result<()> {
        self.check_weight(w)?;
        if !w.is_dominant() {
            return Err(Error::NotDominant(w.clone()));
        }
        Ok(())
    }

    /// `λ(θ^∨) = Σ n_α a_α^∨`.
    pub fn level_of(&self, w: &Weight) -> i64 {
        w.coords()
            .iter()
            .zip(&self.comarks)
            .map(|(n, a)| n * a)
            .sum()
    }

    /// Normalized invariant form on weights, `(θ, θ) = 2`.
    pub fn inner(&self, a: &Weight, b: &Weight) -> Rational {
        let mut acc = Rational::zero();
        for (i, x) in a.coords().iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.coords().iter().enumerate() {
                if *y != 0 {
                    acc += self.weight_gram[i][j] * Rational::from_integer(x * y);
                }
            }
        }
        acc
    }

    /// `(λ, β)` for a root-lattice element `β` in simple-root coordinates,
    /// up to the positive factor `(θ, θ)/2` (short roots have length² 2).
    pub fn root_pairing_scaled(&self, w: &Weight, root: &[i64]) -> i64 {
        w.coords()
            .iter()
            .zip(root)
            .enumerate()
            .map(|(j, (n, k))| n * k * self.gram[j][j])
            .sum::<i64>()
            / 2
    }

    /// Simple-root coordinates of a weight, or `None` if it is not in the
    /// root lattice.
    pub fn to_root_coords(&self, w: &Weight) -> Option<Vec<i64>> {
        (0..self.rank)
            .map(|i| {
                let v = w
                    .coords()
                    .iter()
                    .enumerate()
                    .fold(Rational::zero(), |acc, (j, &x)| {
                        acc + self.cartan_inverse[j][i] * Rational::from_integer(x)
                    });
                v.is_integer().then(|| v.to_integer())
            })
            .collect()
    }

    pub fn root_to_weight(&self, root: &[i64]) -> Weight {
        Weight::new(self.cartan.root_to_weight(root))
    }

    /// Linear-action dominant conjugate.
    pub fn dominant_conjugate(&self, w: &Weight) -> Weight {
        Weight::new(self.cartan.dominant_conjugate(w.coords()).0)
    }

    /// Dot action `w ∗ λ = w(λ + ρ) − ρ`: the length of the unique `w` making
    /// `w ∗ λ` dominant, or `Singular` when `λ + ρ` sits on a wall.
    pub fn dot_dominant(&self, w: &Weight) -> Result<DotOutcome> {
        self.check_weight(w)?;
        Ok(match self.cartan.dot_dominant(w.coords()) {
            None => DotOutcome::Singular,
            Some((length, dom)) => DotOutcome::Regular {
                length,
                dominant: Weight::new(dom),
            },
        })
    }

    /// `λ^† = −w_0 λ`.
    pub fn dual_weight(&self, w: &Weight) -> Result<Weight> {
        self.check_weight(w)?;
        let mut out = vec![0; self.rank];
        for (i, &c) in w.coords().iter().enumerate() {
            out[self.dual_perm[i]] = c;
        }
        Ok(Weight::new(out))
    }

    /// Whether `λ + ρ` is regular for the full Weyl group.
    pub fn is_dot_regular(&self, w: &Weight) -> bool {
        self.cartan.dot_dominant(w.coords()).is_some()
    }

    /// Reflection `s_β` in a root `β` (simple-root coordinates) acting on
    /// weights.
    pub fn reflect_in_root(&self, w: &Weight, root: &[i64]) -> Weight {
        let norm = root_norm(&self.gram, root);
        let pairing2 = 2 * self.root_pairing_scaled(w, root);
        debug_assert_eq!(pairing2 % norm, 0);
        let coroot_pairing = pairing2 / norm;
        let r = self.cartan.root_to_weight(root);
        Weight::new(
            w.coords()
                .iter()
                .zip(r)
                .map(|(x, a)| x - coroot_pairing * a)
                .collect(),
        )
    }

    /// Squared length `(β, β)` of a root-lattice element, short roots 2.
    pub fn root_norm(&self, root: &[i64]) -> i64 {
        root_norm(&self.gram, root)
    }

    #[cfg(test)]
    fn is_long_normalized(&self) -> bool {
        let long = self.gram.iter().enumerate().map(|(i, r)| r[i]).max();
        long == Some(root_norm(&self.gram, &self.marks)) && self.weight_gram_theta_is_two()
    }

    #[cfg(test)]
    fn weight_gram_theta_is_two(&self) -> bool {
        self.inner(&self.theta, &self.theta) == Rational::from_integer(2)
    }
}

fn root_norm(gram: &[Vec<i64>], root: &[i64]) -> i64 {
    let mut s = 0;
    for (i, a) in root.iter().enumerate() {
        for (j, b) in root.iter().enumerate() {
            s += a * b * gram[i][j];
        }
    }
    s
}

/// Solves `Σ_i a_i^∨ ⟨α_j, α_i^∨⟩ = ⟨α_j, θ^∨⟩` for every `j`.
fn solve_comarks(
    cartan: &CartanMatrix,
    gram: &[Vec<i64>],
    marks: &[i64],
    theta_norm: i64,
) -> Result<Vec<i64>> {
    let n = cartan.rank();
    let system: Vec<Vec<Rational>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| Rational::from_integer(cartan.entry(j, i)))
                .collect()
        })
        .collect();
    let rhs: Vec<Rational> = (0..n)
        .map(|j| {
            let ip: i64 = marks.iter().enumerate().map(|(i, k)| k * gram[j][i]).sum();
            Rational::new(2 * ip, theta_norm)
        })
        .collect();
    let sol = linalg::solve(&system, &rhs).ok_or(Error::Overflow("comark system"))?;
    sol.into_iter()
        .map(|x| {
            if x.is_integer() && x > Rational::zero() {
                Ok(x.to_integer())
            } else {
                Err(Error::OracleDisagreement(format!(
                    "non-integral comark {x}"
                )))
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(l: TypeLetter, r: usize) -> RootDatum {
        RootDatum::new(l, r).unwrap()
    }

    #[test]
    fn rank_one_and_two_comarks() {
        let a1 = datum(TypeLetter::A, 1);
        assert_eq!(a1.comarks(), &[1]);
        assert_eq!(a1.theta(), &Weight::new(vec![2]));
        assert_eq!(datum(TypeLetter::A, 2).comarks(), &[1, 1]);
        let g2 = datum(TypeLetter::G, 2);
        assert_eq!(g2.comarks(), &[1, 2]);
        assert_eq!(g2.marks(), &[3, 2]);
        assert_eq!(g2.dual_coxeter_number(), 4);
    }

    #[test]
    fn theta_covec_evaluates_level() {
        let b3 = datum(TypeLetter::B, 3);
        assert_eq!(b3.comarks(), &[1, 2, 1]);
        let lam = Weight::new(vec![1, 2, 3]);
        assert_eq!(b3.level_of(&lam), 1 + 4 + 3);
    }

    #[test]
    fn theta_has_norm_two() {
        for (l, r) in [
            (TypeLetter::A, 3),
            (TypeLetter::B, 3),
            (TypeLetter::C, 3),
            (TypeLetter::F, 4),
            (TypeLetter::G, 2),
        ] {
            assert!(datum(l, r).is_long_normalized(), "{l}{r}");
        }
    }

    #[test]
    fn dual_weight_examples() {
        let a1 = datum(TypeLetter::A, 1);
        assert_eq!(
            a1.dual_weight(&Weight::new(vec![3])).unwrap(),
            Weight::new(vec![3])
        );
        let a2 = datum(TypeLetter::A, 2);
        assert_eq!(
            a2.dual_weight(&Weight::new(vec![1, 0])).unwrap(),
            Weight::new(vec![0, 1])
        );
        let d5 = datum(TypeLetter::D, 5);
        assert_eq!(d5.dual_permutation(), &[0, 1, 2, 4, 3]);
        let e6 = datum(TypeLetter::E, 6);
        assert_eq!(e6.dual_permutation(), &[5, 1, 4, 3, 2, 0]);
        let e7 = datum(TypeLetter::E, 7);
        assert_eq!(e7.dual_permutation(), &[0, 1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn root_coords_round_trip() {
        let c3 = datum(TypeLetter::C, 3);
        for r in c3.positive_roots() {
            let w = c3.root_to_weight(r);
            assert_eq!(c3.to_root_coords(&w).as_deref(), Some(r.as_slice()));
        }
        let a2 = datum(TypeLetter::A, 2);
        assert_eq!(a2.to_root_coords(&Weight::new(vec![1, 0])), None);
    }

    #[test]
    fn wrong_rank_weight_rejected() {
        let a2 = datum(TypeLetter::A, 2);
        assert!(matches!(
            a2.dot_dominant(&Weight::new(vec![1])),
            Err(Error::WeightRank { .. })
        ));
    }
}
