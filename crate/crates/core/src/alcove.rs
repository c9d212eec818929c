//! Facets of the fundamental alcove and the quantities attached to them.
//!
//! A facet is recorded only through the set of affine simple roots that do
//! not vanish on it. Node `0` is the affine root `α_0 = 1 − θ`; nodes
//! `1..=rank` are the finite simple roots in Bourbaki order.

use std::collections::BTreeSet;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::liealg::{CartanMatrix, RootDatum, Weight};

/// Nonempty set of affine nodes not vanishing on a facet, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Facet(Vec<usize>);

impl TryFrom<Vec<usize>> for Facet {
    type Error = Error;

    fn try_from(nodes: Vec<usize>) -> Result<Self> {
        Facet::new(nodes)
    }
}

impl From<Facet> for Vec<usize> {
    fn from(f: Facet) -> Self {
        f.0
    }
}

impl Facet {
    pub fn new(nodes: impl IntoIterator<Item = usize>) -> Result<Self> {
        let set: BTreeSet<usize> = nodes.into_iter().collect();
        if set.is_empty() {
            return Err(Error::InvalidFacet {
                nodes: Vec::new(),
                reason: "a facet has at least one nonvanishing affine root",
            });
        }
        Ok(Self(set.into_iter().collect()))
    }

    /// The open alcove: every affine root is nonvanishing.
    pub fn iwahori(rank: usize) -> Self {
        Self((0..=rank).collect())
    }

    /// The vertex where every affine root except `node` vanishes.
    pub fn vertex(node: usize) -> Self {
        Self(vec![node])
    }

    pub fn nodes(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, node: usize) -> bool {
        self.0.binary_search(&node).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dimension(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_vertex(&self) -> bool {
        self.0.len() == 1
    }

    pub fn is_iwahori(&self, rank: usize) -> bool {
        self.0.len() == rank + 1
    }

    /// Finite nodes of the facet, i.e. without `0`.
    pub fn finite_nodes(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied().filter(|&n| n != 0)
    }

    /// Affine nodes vanishing on the facet.
    pub fn vanishing(&self, rank: usize) -> Vec<usize> {
        (0..=rank).filter(|n| !self.contains(*n)).collect()
    }

    pub fn validate(&self, rank: usize) -> Result<()> {
        if let Some(&max) = self.0.last() {
            if max > rank {
                return Err(Error::InvalidFacet {
                    nodes: self.0.clone(),
                    reason: "node index exceeds the rank",
                });
            }
        }
        Ok(())
    }

    /// All facets of the alcove of the given rank, in lexicographic order of
    /// their node lists.
    pub fn all(rank: usize) -> Vec<Facet> {
        let n = rank + 1;
        let mut out: Vec<Facet> = (1u64..(1 << n))
            .map(|mask| Facet((0..n).filter(|i| mask >> i & 1 == 1).collect()))
            .collect();
        out.sort();
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MarkedPoint {
    pub label: String,
    pub facet: Facet,
}

/// A marked curve of given genus with a facet at each marked point, and a
/// level.
#[derive(Clone, Debug)]
pub struct ParahoricDatum {
    datum: RootDatum,
    genus: u32,
    points: Vec<MarkedPoint>,
    level: u32,
}

impl ParahoricDatum {
    pub fn new(datum: RootDatum, genus: u32, points: Vec<MarkedPoint>, level: u32) -> Result<Self> {
        if level == 0 {
            return Err(Error::ZeroLevel);
        }
        let mut labels = BTreeSet::new();
        for p in &points {
            p.facet.validate(datum.rank())?;
            if !labels.insert(p.label.as_str()) {
                return Err(Error::DuplicateLabel(p.label.clone()));
            }
        }
        Ok(Self {
            datum,
            genus,
            points,
            level,
        })
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn points(&self) -> &[MarkedPoint] {
        &self.points
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn point(&self, label: &str) -> Result<&MarkedPoint> {
        self.points
            .iter()
            .find(|p| p.label == label)
            .ok_or_else(|| Error::UnknownPoint(label.to_string()))
    }

    /// A copy with one more marked point.
    pub fn with_point(&self, point: MarkedPoint) -> Result<Self> {
        let mut points = self.points.clone();
        points.push(point);
        Self::new(self.datum.clone(), self.genus, points, self.level)
    }

    /// The level is a multiple of `ℓ`; vacuous without marked points.
    pub fn check_level(&self) -> Result<()> {
        if self.points.is_empty() {
            return Ok(());
        }
        let ell = ell_of_datum(self)?;
        if i64::from(self.level) % ell != 0 {
            return Err(Error::LevelNotMultiple {
                level: self.level,
                required: ell,
            });
        }
        Ok(())
    }
}

/// `l(F) = gcd { a_α^∨ : α ∈ S(F) }`, with comark 1 at node 0.
pub fn l_of_facet(datum: &RootDatum, facet: &Facet) -> Result<i64> {
    facet.validate(datum.rank())?;
    let comarks = datum.affine_comarks();
    Ok(facet.nodes().iter().fold(0i64, |g, &n| g.gcd(&comarks[n])))
}

/// `ℓ = lcm { l(F_x) }` over the marked points.
pub fn ell_of_datum(parahoric: &ParahoricDatum) -> Result<i64> {
    if parahoric.points.is_empty() {
        return Err(Error::NoPoints);
    }
    parahoric.points.iter().try_fold(1i64, |acc, p| {
        Ok(acc.lcm(&l_of_facet(&parahoric.datum, &p.facet)?))
    })
}

/// Vertex `{node}` whose affine mark is 1.
pub fn is_special_by_mark(datum: &RootDatum, facet: &Facet) -> bool {
    facet.is_vertex() && datum.affine_marks()[facet.nodes()[0]] == 1
}

/// Vertex `{node}` whose affine comark is 1.
pub fn is_special_by_comark(datum: &RootDatum, facet: &Facet) -> bool {
    facet.is_vertex() && datum.affine_comarks()[facet.nodes()[0]] == 1
}

/// Visits weights supported on `support` (zero-based finite coordinates)
/// with `Σ n_α a_α^∨ ≤ c`, in lexicographic order of coordinates.
fn enumerate_bounded(
    datum: &RootDatum,
    c: i64,
    support: &[bool],
    keep: impl FnMut(i64) -> bool,
) -> Vec<Weight> {
    struct Walk<'a, F> {
        comarks: &'a [i64],
        support: &'a [bool],
        keep: F,
        coords: Vec<i64>,
        out: Vec<Weight>,
    }

    impl<F: FnMut(i64) -> bool> Walk<'_, F> {
        fn go(&mut self, i: usize, budget: i64, used: i64) {
            if i == self.comarks.len() {
                if (self.keep)(used) {
                    self.out.push(Weight::new(self.coords.clone()));
                }
                return;
            }
            let a = self.comarks[i];
            let max = if self.support[i] { budget / a } else { 0 };
            for n in 0..=max {
                self.coords[i] = n;
                self.go(i + 1, budget - n * a, used + n * a);
            }
            self.coords[i] = 0;
        }
    }

    let mut walk = Walk {
        comarks: datum.comarks(),
        support,
        keep,
        coords: vec![0; datum.rank()],
        out: Vec::new(),
    };
    walk.go(0, c, 0);
    walk.out
}

/// `P_c`: dominant weights with `λ(θ^∨) ≤ c`, lexicographically ordered.
pub fn enumerate_p_c(datum: &RootDatum, c: u32) -> Vec<Weight> {
    let support = vec![true; datum.rank()];
    enumerate_bounded(datum, i64::from(c), &support, |_| true)
}

/// `P_c^F`: weights `Σ_{α ∈ S(F), α ≠ 0} n_α ω_α` with `n_α ≥ 0` such that
/// `Σ_{α ∈ S(F)} n_α a_α^∨ = c`, where `n_0 ≥ 0` is a free slack when
/// `0 ∈ S(F)` and absent otherwise.
pub fn enumerate_p_c_f(datum: &RootDatum, c: u32, facet: &Facet) -> Result<Vec<Weight>> {
    let l = l_of_facet(datum, facet)?;
    if i64::from(c) % l != 0 {
        return Err(Error::LevelNotMultiple {
            level: c,
            required: l,
        });
    }
    let c = i64::from(c);
    let support = finite_support(datum, facet);
    let slack = facet.contains(0);
    Ok(enumerate_bounded(datum, c, &support, |used| {
        slack || used == c
    }))
}

/// Membership test for `P_c^F` without enumerating.
pub fn is_admissible(datum: &RootDatum, c: u32, facet: &Facet, w: &Weight) -> bool {
    if w.rank() != datum.rank() || !w.is_dominant() {
        return false;
    }
    let support = finite_support(datum, facet);
    if w.coords().iter().zip(&support).any(|(&n, &s)| n != 0 && !s) {
        return false;
    }
    let lvl = datum.level_of(w);
    let c = i64::from(c);
    if facet.contains(0) {
        lvl <= c
    } else {
        lvl == c
    }
}

fn finite_support(datum: &RootDatum, facet: &Facet) -> Vec<bool> {
    (1..=datum.rank()).map(|n| facet.contains(n)).collect()
}

/// The finite reflection group generated by the simple reflections of the
/// affine nodes vanishing on a facet; node 0 contributes `s_θ`.
///
/// Its simple system consists of the `α_i` for vanishing finite nodes and
/// `−θ` when node 0 vanishes.
#[derive(Clone, Debug)]
pub struct LeviSubsystem {
    generators: Vec<usize>,
    simple_roots: Vec<Vec<i64>>,
    cartan: CartanMatrix,
    positive_roots: Vec<Vec<i64>>,
    two_rho: Weight,
}

/// Builds the Levi reflection subgroup attached to a facet.
pub fn levi_weyl(datum: &RootDatum, facet: &Facet) -> Result<LeviSubsystem> {
    facet.validate(datum.rank())?;
    let rank = datum.rank();
    let generators = facet.vanishing(rank);
    let simple_roots: Vec<Vec<i64>> = generators
        .iter()
        .map(|&node| {
            if node == 0 {
                datum.marks().iter().map(|m| -m).collect()
            } else {
                let mut e = vec![0; rank];
                e[node - 1] = 1;
                e
            }
        })
        .collect();
    let gram = datum.root_gram();
    let form = |a: &[i64], b: &[i64]| -> i64 {
        let mut s = 0;
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                s += x * y * gram[i][j];
            }
        }
        s
    };
    let sym: Vec<Vec<i64>> = simple_roots
        .iter()
        .map(|a| simple_roots.iter().map(|b| form(a, b)).collect())
        .collect();
    let cartan = CartanMatrix::from_gram(&sym);
    let positive_roots: Vec<Vec<i64>> = cartan
        .positive_roots()
        .into_iter()
        .map(|coeffs| {
            let mut r = vec![0; rank];
            for (c, beta) in coeffs.iter().zip(&simple_roots) {
                for (x, b) in r.iter_mut().zip(beta) {
                    *x += c * b;
                }
            }
            r
        })
        .collect();
    let mut two_rho_root = vec![0; rank];
    for r in &positive_roots {
        for (x, y) in two_rho_root.iter_mut().zip(r) {
            *x += y;
        }
    }
    let two_rho = datum.root_to_weight(&two_rho_root);
    Ok(LeviSubsystem {
        generators,
        simple_roots,
        cartan,
        positive_roots,
        two_rho,
    })
}

impl LeviSubsystem {
    /// Affine nodes whose reflections generate the group.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Simple roots in ambient simple-root coordinates.
    pub fn simple_roots(&self) -> &[Vec<i64>] {
        &self.simple_roots
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    /// `2ρ_L` in ambient fundamental-weight coordinates.
    pub fn two_rho(&self) -> &Weight {
        &self.two_rho
    }

    pub fn semisimple_rank(&self) -> usize {
        self.simple_roots.len()
    }

    /// Rank of the character lattice of the Levi, `rank − semisimple rank`.
    pub fn character_rank(&self, datum: &RootDatum) -> usize {
        datum.rank() - self.semisimple_rank()
    }

    pub fn order(&self) -> Result<usize> {
        Ok(self.cartan.weyl_group_words(10_000_000)?.len())
    }

    /// Reduced words in the Levi simple reflections (indices into
    /// [`Self::simple_roots`]).
    pub fn words(&self, limit: usize) -> Result<Vec<Vec<usize>>> {
        self.cartan.weyl_group_words(limit)
    }

    /// Length of a word in the Levi simple reflections.
    pub fn length(&self, word: &[usize]) -> usize {
        self.cartan.word_length(word)
    }

    /// `⟨λ, β^∨⟩` for each Levi simple root `β`.
    pub fn pairings(&self, datum: &RootDatum, w: &Weight) -> Vec<i64> {
        self.simple_roots
            .iter()
            .map(|beta| {
                let num = 2 * datum.root_pairing_scaled(w, beta);
                let norm = datum.root_norm(beta);
                debug_assert_eq!(num % norm, 0);
                num / norm
            })
            .collect()
    }

    /// Applies a word of Levi simple reflections to an ambient weight.
    pub fn apply_word(&self, datum: &RootDatum, word: &[usize], w: &Weight) -> Weight {
        word.iter().rev().fold(w.clone(), |acc, &a| {
            datum.reflect_in_root(&acc, &self.simple_roots[a])
        })
    }

    /// Length of the unique Levi Weyl element moving `λ` into the Levi
    /// dominant chamber under the dot action with `ρ_L`; `None` on a wall.
    ///
    /// Only the pairings `⟨λ, β^∨⟩` matter, so the central part of `λ` is
    /// ignored.
    pub fn dot_length(&self, datum: &RootDatum, w: &Weight) -> Option<usize> {
        self.cartan
            .dot_dominant(&self.pairings(datum, w))
            .map(|(len, _)| len)
    }
}
