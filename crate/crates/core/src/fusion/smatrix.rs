//! Modular S-matrix at level `c` and the trigonometric Verlinde formula.
//!
//! This is an independent numerical route to the dimensions computed by
//! [`super::vacua_dim`]: it uses only the Weyl group and the invariant form,
//! never tensor products or fusion coefficients.

use num_complex::Complex;
use num_integer::Integer;
use num_traits::{Float, FloatConst};

use crate::alcove::enumerate_p_c;
use crate::error::{Error, Result};
use crate::liealg::{RootDatum, Weight};
use crate::{DoubleDouble, Rational};

/// Largest Weyl group the oracle will enumerate.
pub const MAX_WEYL_ORDER: usize = 60_000;

/// Rounding tolerance for the oracle.
pub const RESIDUAL_TOLERANCE: f64 = 1e-6;

/// `S_{0μ}^2` and the ratios `S_{λμ} / S_{0μ}` over `P_c`, evaluated in the
/// floating type `T`.
#[derive(Clone, Debug)]
pub struct SMatrix<T> {
    level: u32,
    basis: Vec<Weight>,
    s0_sq: Vec<T>,
    ratios: Vec<Vec<Complex<T>>>,
}

/// `1/x` with one Newton correction on top of the type's own reciprocal.
///
/// `TwoFloat` division is only as accurate as `f64`; the correction uses
/// multiplication and subtraction alone, which it performs in full
/// precision.
fn recip<T: Float>(x: T) -> T {
    let r = x.recip();
    r + r * (T::one() - x * r)
}

fn sqrt<T: Float>(x: T) -> T {
    if x <= T::zero() {
        return T::zero();
    }
    let s = x.sqrt();
    s + (x - s * s) * recip(s + s)
}

/// `exp(−2πi q)` for a rational `q`, reduced modulo 1 before leaving exact
/// arithmetic.
///
/// The value is a root of `z^N = 1` with `N` the denominator of `q`. The
/// library `sin_cos` of some types (`TwoFloat` among them) is no more
/// accurate than `f64`, so one Newton step on that polynomial restores full
/// working precision.
fn phase<T: Float + FloatConst>(q: Rational) -> Complex<T> {
    let den = *q.denom();
    let num = q.numer().mod_floor(&den);
    let n = T::from(den).expect("small integer");
    let angle = -(T::PI() + T::PI()) * T::from(num).expect("small integer") * recip(n);
    let (s, c) = angle.sin_cos();
    let z = Complex::new(c, s);
    // z − (z^N − 1)/(N z^{N−1}), with z^{−N} replaced by 1 at second order.
    let power = i32::try_from(den).expect("phase denominator fits in i32");
    let residual = z.powi(power) - Complex::new(T::one(), T::zero());
    z - z * residual.scale(recip(n))
}

impl<T: Float + FloatConst> SMatrix<T> {
    pub fn new(datum: &RootDatum, level: u32) -> Result<Self> {
        if level == 0 {
            return Err(Error::ZeroLevel);
        }
        let words = datum.cartan().weyl_group_words(MAX_WEYL_ORDER)?;
        let basis = enumerate_p_c(datum, level);
        let shift = Rational::from_integer(i64::from(level) + datum.dual_coxeter_number());
        let rho = datum.rho();

        // Signed Weyl orbits of λ + ρ.
        let orbits: Vec<Vec<(bool, Weight)>> = basis
            .iter()
            .map(|lam| {
                let top = lam + rho;
                words
                    .iter()
                    .map(|word| {
                        let mut v = top.coords().to_vec();
                        datum.cartan().apply_word(word, &mut v);
                        (word.len() % 2 == 1, Weight::new(v))
                    })
                    .collect()
            })
            .collect();

        // Alternating sums Σ_w ε(w) exp(−2πi (w(λ+ρ), μ+ρ)/(c+h^∨)).
        let alternating: Vec<Vec<Complex<T>>> = orbits
            .iter()
            .map(|orbit| {
                basis
                    .iter()
                    .map(|mu| {
                        let target = mu + rho;
                        orbit
                            .iter()
                            .fold(Complex::new(T::zero(), T::zero()), |acc, (odd, v)| {
                                let z = phase::<T>(datum.inner(v, &target) / shift);
                                if *odd {
                                    acc - z
                                } else {
                                    acc + z
                                }
                            })
                    })
                    .collect()
            })
            .collect();

        let denominators = &alternating[0];
        let norms: Vec<T> = denominators.iter().map(|z| z.norm_sqr()).collect();
        let total = recip(norms.iter().fold(T::zero(), |acc, &x| acc + x));
        let s0_sq = norms.iter().map(|&x| x * total).collect();
        let ratios = alternating
            .iter()
            .map(|row| {
                row.iter()
                    .zip(denominators)
                    .zip(&norms)
                    .map(|((a, d), &n)| (a * d.conj()).scale(recip(n)))
                    .collect()
            })
            .collect();
        Ok(Self {
            level,
            basis,
            s0_sq,
            ratios,
        })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn basis(&self) -> &[Weight] {
        &self.basis
    }

    /// `S_{0μ}`, positive and of unit ℓ² norm.
    pub fn s0(&self) -> Vec<T> {
        self.s0_sq.iter().map(|&x| sqrt(x)).collect()
    }

    /// `S_{λμ} / S_{0μ}`.
    pub fn ratio(&self, lambda: usize, mu: usize) -> Complex<T> {
        self.ratios[lambda][mu]
    }

    fn index_of(&self, w: &Weight) -> Result<usize> {
        self.basis
            .binary_search(w)
            .map_err(|_| Error::OutsideLevel {
                weight: w.clone(),
                level: self.level,
            })
    }

    /// `Σ_μ (∏_i S_{λ_i μ} / S_{0μ}) · S_{0μ}^{2−2g}`.
    pub fn verlinde(&self, genus: u32, insertions: &[Weight]) -> Result<Complex<T>> {
        let idx: Vec<usize> = insertions
            .iter()
            .map(|w| self.index_of(w))
            .collect::<Result<_>>()?;
        let handles = i32::try_from(genus).map_err(|_| Error::Overflow("genus"))? - 1;
        let mut sum = Complex::new(T::zero(), T::zero());
        for (mu, &s) in self.s0_sq.iter().enumerate() {
            let prod = idx
                .iter()
                .fold(Complex::new(T::one(), T::zero()), |acc, &i| {
                    acc * self.ratios[i][mu]
                });
            // (S_{0μ}^2)^{1−g}
            let weight = if handles > 0 {
                recip(s).powi(handles)
            } else {
                s.powi(-handles)
            };
            sum = sum + prod.scale(weight);
        }
        Ok(sum)
    }

    /// [`Self::verlinde`] rounded with [`round_checked`].
    pub fn verlinde_dim(&self, genus: u32, insertions: &[Weight]) -> Result<u128> {
        round_checked(self.verlinde(genus, insertions)?)
    }
}

/// Rounds an oracle value to the nearest nonnegative integer, failing when
/// the residual (including any imaginary part) reaches the tolerance.
pub fn round_checked<T: Float>(value: Complex<T>) -> Result<u128> {
    let rounded = value.re.round();
    let tol = T::from(RESIDUAL_TOLERANCE).expect("tolerance converts");
    let residual = (value.re - rounded).abs().max(value.im.abs());
    if residual.is_nan() || residual >= tol || rounded < T::zero() {
        return Err(Error::OracleDisagreement(format!(
            "S-matrix value {} + {}i is not within {RESIDUAL_TOLERANCE} of a nonnegative integer",
            value.re.to_f64().unwrap_or(f64::NAN),
            value.im.to_f64().unwrap_or(f64::NAN),
        )));
    }
    rounded
        .to_u128()
        .ok_or(Error::Overflow("S-matrix Verlinde value"))
}

/// Verlinde dimension by the trigonometric formula in double-double
/// precision, rounded with a residual check.
pub fn verlinde_dim_smatrix(
    datum: &RootDatum,
    level: u32,
    genus: u32,
    insertions: &[Weight],
) -> Result<u128> {
    for w in insertions {
        datum.check_weight(w)?;
    }
    SMatrix::<DoubleDouble>::new(datum, level)?.verlinde_dim(genus, insertions)
}
