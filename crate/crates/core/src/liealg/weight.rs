use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// An integral weight written in the fundamental-weight basis:
/// `coords[i]` is the coefficient of `ω_{i+1}` (Bourbaki numbering).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(coords: Vec<i64>) -> Self {
        Self(coords)
    }

    pub fn zero(rank: usize) -> Self {
        Self(vec![0; rank])
    }

    /// The fundamental weight `ω_node` for `node` in `1..=rank`.
    pub fn fundamental(rank: usize, node: usize) -> Self {
        assert!((1..=rank).contains(&node), "node {node} out of range");
        let mut c = vec![0; rank];
        c[node - 1] = 1;
        Self(c)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    /// Coefficient of `ω_node`, `node` in `1..=rank`.
    pub fn coeff(&self, node: usize) -> i64 {
        self.0[node - 1]
    }
}

impl From<Vec<i64>> for Weight {
    fn from(coords: Vec<i64>) -> Self {
        Self(coords)
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        assert_eq!(self.rank(), rhs.rank());
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        assert_eq!(self.rank(), rhs.rank());
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

impl Mul<i64> for &Weight {
    type Output = Weight;
    fn mul(self, k: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }
}

/// Renders as e.g. `0`, `ω`, `2ω_1+ω_3`, `-ω_2`. Rank-one weights drop the
/// subscript.
impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if c < 0 {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            if c.abs() != 1 {
                write!(f, "{}", c.abs())?;
            }
            if self.0.len() == 1 {
                f.write_str("ω")?;
            } else {
                write!(f, "ω_{}", i + 1)?;
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_forms() {
        assert_eq!(Weight::zero(2).to_string(), "0");
        assert_eq!(Weight::new(vec![1]).to_string(), "ω");
        assert_eq!(Weight::new(vec![2]).to_string(), "2ω");
        assert_eq!(Weight::new(vec![1, 1]).to_string(), "ω_1+ω_2");
        assert_eq!(Weight::new(vec![0, -1, 3]).to_string(), "-ω_2+3ω_3");
        assert_eq!(Weight::new(vec![-2, -1]).to_string(), "-2ω_1-ω_2");
    }

    #[test]
    fn arithmetic() {
        let a = Weight::new(vec![1, -2]);
        let b = Weight::new(vec![3, 4]);
        assert_eq!(&a + &b, Weight::new(vec![4, 2]));
        assert_eq!(&a - &b, Weight::new(vec![-2, -6]));
        assert_eq!(-&a, Weight::new(vec![-1, 2]));
        assert_eq!(&a * 3, Weight::new(vec![3, -6]));
        assert!(b.is_dominant());
        assert!(!a.is_dominant());
    }

    #[test]
    fn serializes_as_plain_array() {
        let w = Weight::new(vec![0, 2, 1]);
        assert_eq!(serde_json::to_string(&w).unwrap(), "[0,2,1]");
        let back: Weight = serde_json::from_str("[0,2,1]").unwrap();
        assert_eq!(back, w);
    }
}
