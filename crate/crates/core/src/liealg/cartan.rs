use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Letter of a simple (reduced, irreducible) Dynkin type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TypeLetter {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for TypeLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TypeLetter::A => "A",
            TypeLetter::B => "B",
            TypeLetter::C => "C",
            TypeLetter::D => "D",
            TypeLetter::E => "E",
            TypeLetter::F => "F",
            TypeLetter::G => "G",
        };
        f.write_str(s)
    }
}

impl FromStr for TypeLetter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(TypeLetter::A),
            "B" | "b" => Ok(TypeLetter::B),
            "C" | "c" => Ok(TypeLetter::C),
            "D" | "d" => Ok(TypeLetter::D),
            "E" | "e" => Ok(TypeLetter::E),
            "F" | "f" => Ok(TypeLetter::F),
            "G" | "g" => Ok(TypeLetter::G),
            other => Err(Error::InvalidType {
                letter: other.to_string(),
                rank: 0,
                reason: "type letter must be one of A-G",
            }),
        }
    }
}

/// Squared lengths of the simple roots and the symmetric Gram matrix
/// `(α_i, α_j)` for a type, normalized so that short roots have length² 2.
///
/// Numbering is Bourbaki's:
/// * `B_n`: `α_n` short; `C_n`: `α_n` long.
/// * `D_n`: `α_{n-2}` is the branch node joined to `α_{n-1}` and `α_n`.
/// * `E_n`: chain `1-3-4-5-…-n`, with `2` attached to `4`.
/// * `F_4`: `α_1, α_2` long, `α_3, α_4` short.
/// * `G_2`: `α_1` short, `α_2` long.
pub(crate) fn bourbaki_gram(letter: TypeLetter, rank: usize) -> Result<Vec<Vec<i64>>> {
    let invalid = |reason| Error::InvalidType {
        letter: letter.to_string(),
        rank,
        reason,
    };
    let ok = match letter {
        TypeLetter::A => rank >= 1,
        TypeLetter::B | TypeLetter::C => rank >= 2,
        TypeLetter::D => rank >= 4,
        TypeLetter::E => (6..=8).contains(&rank),
        TypeLetter::F => rank == 4,
        TypeLetter::G => rank == 2,
    };
    if !ok {
        return Err(invalid(match letter {
            TypeLetter::A => "A_n needs n >= 1",
            TypeLetter::B => "B_n needs n >= 2",
            TypeLetter::C => "C_n needs n >= 2",
            TypeLetter::D => "D_n needs n >= 4",
            TypeLetter::E => "E_n needs 6 <= n <= 8",
            TypeLetter::F => "only F_4 exists",
            TypeLetter::G => "only G_2 exists",
        }));
    }

    let n = rank;
    let mut norms = vec![2i64; n];
    // (i, j) zero-based and the inner product (α_i, α_j).
    let mut edges: Vec<(usize, usize, i64)> = Vec::new();
    match letter {
        TypeLetter::A => {
            edges.extend((0..n.saturating_sub(1)).map(|i| (i, i + 1, -1)));
        }
        TypeLetter::B => {
            norms = vec![4; n];
            norms[n - 1] = 2;
            edges.extend((0..n - 1).map(|i| (i, i + 1, -2)));
        }
        TypeLetter::C => {
            norms[n - 1] = 4;
            edges.extend((0..n - 2).map(|i| (i, i + 1, -1)));
            edges.push((n - 2, n - 1, -2));
        }
        TypeLetter::D => {
            edges.extend((0..n - 2).map(|i| (i, i + 1, -1)));
            edges.push((n - 3, n - 1, -1));
        }
        TypeLetter::E => {
            edges.push((0, 2, -1));
            edges.push((1, 3, -1));
            edges.extend((2..n - 1).map(|i| (i, i + 1, -1)));
        }
        TypeLetter::F => {
            norms = vec![4, 4, 2, 2];
            edges.push((0, 1, -2));
            edges.push((1, 2, -2));
            edges.push((2, 3, -1));
        }
        TypeLetter::G => {
            norms = vec![2, 6];
            edges.push((0, 1, -3));
        }
    }
    let mut gram = vec![vec![0i64; n]; n];
    for (i, row) in gram.iter_mut().enumerate() {
        row[i] = norms[i];
    }
    for (i, j, v) in edges {
        gram[i][j] = v;
        gram[j][i] = v;
    }
    Ok(gram)
}

/// A Cartan matrix of finite type with `entries[i][j] = ⟨α_i, α_j^∨⟩`, so
/// row `i` holds the simple root `α_i` in fundamental-weight coordinates.
///
/// All Weyl group operations act on coordinate vectors through words of
/// simple reflections; no group elements are materialized as matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanMatrix {
    entries: Vec<Vec<i64>>,
}

impl CartanMatrix {
    pub fn new(entries: Vec<Vec<i64>>) -> Self {
        let n = entries.len();
        assert!(
            entries.iter().all(|r| r.len() == n),
            "Cartan matrix must be square"
        );
        Self { entries }
    }

    /// Builds the Cartan matrix from a symmetric Gram matrix of simple roots.
    pub fn from_gram(gram: &[Vec<i64>]) -> Self {
        let n = gram.len();
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let v = 2 * gram[i][j];
                        debug_assert_eq!(v % gram[j][j], 0);
                        v / gram[j][j]
                    })
                    .collect()
            })
            .collect();
        Self { entries }
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.entries
    }

    /// Diagonal 2, nonpositive off-diagonal, and `a_ij = 0 ⇔ a_ji = 0`.
    pub fn is_generalized_cartan(&self) -> bool {
        let n = self.rank();
        (0..n).all(|i| {
            self.entries[i][i] == 2
                && (0..n).all(|j| {
                    i == j
                        || (self.entries[i][j] <= 0
                            && (self.entries[i][j] == 0) == (self.entries[j][i] == 0))
                })
        })
    }

    /// Simple reflection `s_i` on weight coordinates.
    pub fn reflect(&self, i: usize, coords: &mut [i64]) {
        let c = coords[i];
        if c != 0 {
            for (x, a) in coords.iter_mut().zip(&self.entries[i]) {
                *x -= c * a;
            }
        }
    }

    /// Applies a word `s_{w_0} s_{w_1} … s_{w_k}` (rightmost letter first).
    pub fn apply_word(&self, word: &[usize], coords: &mut [i64]) {
        for &i in word.iter().rev() {
            self.reflect(i, coords);
        }
    }

    /// `⟨β, α_i^∨⟩` for `β` in simple-root coordinates.
    pub fn root_pairing(&self, root: &[i64], i: usize) -> i64 {
        root.iter()
            .zip(&self.entries)
            .map(|(k, row)| k * row[i])
            .sum()
    }

    /// A root-lattice element (simple-root coordinates) in weight coordinates.
    pub fn root_to_weight(&self, root: &[i64]) -> Vec<i64> {
        (0..self.rank())
            .map(|i| self.root_pairing(root, i))
            .collect()
    }

    /// Linear-action dominant conjugate and the number of reflections used.
    pub fn dominant_conjugate(&self, coords: &[i64]) -> (Vec<i64>, usize) {
        let mut v = coords.to_vec();
        let mut steps = 0;
        while let Some(i) = v.iter().position(|&x| x < 0) {
            self.reflect(i, &mut v);
            steps += 1;
        }
        (v, steps)
    }

    /// Dot action `w ∗ λ = w(λ + ρ) − ρ` with `ρ` the all-ones weight.
    ///
    /// Returns `None` when `λ + ρ` lies on a wall; otherwise the length of the
    /// unique `w` with `w ∗ λ` dominant, together with `w ∗ λ`.
    pub fn dot_dominant(&self, coords: &[i64]) -> Option<(usize, Vec<i64>)> {
        let shifted: Vec<i64> = coords.iter().map(|c| c + 1).collect();
        let (v, length) = self.dominant_conjugate(&shifted);
        if v.contains(&0) {
            return None;
        }
        Some((length, v.into_iter().map(|c| c - 1).collect()))
    }

    /// Positive roots in simple-root coordinates, sorted by height and then
    /// lexicographically.
    pub fn positive_roots(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            seen.insert(e.clone());
            queue.push_back(e);
        }
        while let Some(beta) = queue.pop_front() {
            for i in 0..n {
                let p = self.root_pairing(&beta, i);
                if p == 0 {
                    continue;
                }
                let mut r = beta.clone();
                r[i] -= p;
                if r.iter().all(|&k| k >= 0) && seen.insert(r.clone()) {
                    queue.push_back(r);
                }
            }
        }
        let mut roots: Vec<Vec<i64>> = seen.into_iter().collect();
        roots.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| a.cmp(b))
        });
        roots
    }

    /// Orbit of a weight under the linear Weyl group action.
    pub fn orbit(&self, coords: &[i64]) -> Vec<Vec<i64>> {
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(coords.to_vec());
        queue.push_back(coords.to_vec());
        while let Some(v) = queue.pop_front() {
            for i in 0..self.rank() {
                if v[i] == 0 {
                    continue;
                }
                let mut u = v.clone();
                self.reflect(i, &mut u);
                if seen.insert(u.clone()) {
                    queue.push_back(u);
                }
            }
        }
        let mut out: Vec<_> = seen.into_iter().collect();
        out.sort();
        out
    }

    /// Every element of the Weyl group as a reduced word, in order of
    /// nondecreasing length. Fails once more than `limit` elements are found.
    pub fn weyl_group_words(&self, limit: usize) -> Result<Vec<Vec<usize>>> {
        let n = self.rank();
        let rho = vec![1i64; n];
        let mut words: Vec<Vec<usize>> = vec![Vec::new()];
        let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
        index.insert(rho.clone(), 0);
        let mut queue = VecDeque::from([(rho, 0usize)]);
        while let Some((v, idx)) = queue.pop_front() {
            for i in 0..n {
                // s_i w is longer than w exactly when ⟨w ρ, α_i^∨⟩ > 0.
                if v[i] <= 0 {
                    continue;
                }
                let mut u = v.clone();
                self.reflect(i, &mut u);
                if index.contains_key(&u) {
                    continue;
                }
                if words.len() >= limit {
                    return Err(Error::WeylGroupTooLarge { limit });
                }
                let mut word = Vec::with_capacity(words[idx].len() + 1);
                word.push(i);
                word.extend_from_slice(&words[idx]);
                index.insert(u.clone(), words.len());
                words.push(word);
                queue.push_back((u, words.len() - 1));
            }
        }
        Ok(words)
    }

    /// Length of the element represented by an arbitrary (possibly
    /// non-reduced) word.
    pub fn word_length(&self, word: &[usize]) -> usize {
        let mut v = vec![1i64; self.rank()];
        self.apply_word(word, &mut v);
        self.dominant_conjugate(&v).1
    }
}
