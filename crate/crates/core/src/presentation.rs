//! The weighted polynomial presentation of the cohomology ring of `G(r, k)`
//! and the quantum data derived from it: the potential, its perturbation,
//! the gradient relations, the Hessian, the euler polynomial and the
//! Poincaré polynomial.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::{det_poly_matrix, Rational, WeightedPoly};
use crate::symmetric::{subsets, RootPoly};
use crate::univariate::IntPoly;

/// The Grassmannian of `r`-planes in a `k`-dimensional space, `0 < r < k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GrassmannSpec {
    r: usize,
    k: usize,
}

impl GrassmannSpec {
    pub fn new(r: usize, k: usize) -> Result<Self> {
        if r == 0 || r >= k {
            return Err(Error::InvalidSpec { r, k });
        }
        Ok(GrassmannSpec { r, k })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Complex dimension `r(k - r)`.
    pub fn dimension(&self) -> usize {
        self.r * (self.k - self.r)
    }

    /// Number of critical points of the perturbed potential, `binomial(k, r)`.
    pub fn critical_count(&self) -> u64 {
        binomial(self.k as u64, self.r as u64)
    }

    /// `(-1)^{r(r-1)/2}`.
    pub fn sign(&self) -> i64 {
        if (self.r * (self.r.saturating_sub(1)) / 2).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    fn x(&self, i: usize) -> WeightedPoly {
        WeightedPoly::variable(self.r, i).expect("index within 1..=r")
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Coefficients `y_0..y_{up_to}` of `Q_t = 1 / P_t`, with
/// `P_t = 1 + X1 t + ... + Xr t^r`.
pub fn inverse_series(spec: &GrassmannSpec, up_to: usize) -> Vec<WeightedPoly> {
    let r = spec.r();
    let mut y: Vec<WeightedPoly> = Vec::with_capacity(up_to + 1);
    y.push(WeightedPoly::one(r));
    for m in 1..=up_to {
        let mut acc = WeightedPoly::zero(r);
        for i in 1..=r.min(m) {
            acc = &acc + &(&spec.x(i) * &y[m - i]);
        }
        y.push(-acc);
    }
    y
}

/// Coefficients `W_0..W_{up_to}` of `log P_t`.
///
/// From `P_t · (log P_t)' = P_t'`: `n W_n = n X_n - Σ_{m=1}^{n-1} (n-m) X_m W_{n-m}`,
/// with `X_m = 0` for `m > r`.
pub fn log_series(spec: &GrassmannSpec, up_to: usize) -> Vec<WeightedPoly> {
    let r = spec.r();
    let mut w: Vec<WeightedPoly> = Vec::with_capacity(up_to + 1);
    w.push(WeightedPoly::zero(r));
    for n in 1..=up_to {
        let mut acc = if n <= r {
            spec.x(n).scale(&Rational::from_integer(BigInt::from(n)))
        } else {
            WeightedPoly::zero(r)
        };
        for m in 1..=r.min(n - 1) {
            let weight = Rational::from_integer(BigInt::from(n - m));
            acc = &acc - &(&spec.x(m) * &w[n - m]).scale(&weight);
        }
        w.push(acc.scale(&Rational::new(BigInt::one(), BigInt::from(n))));
    }
    w
}

/// All ring data for one Grassmannian. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingPresentation {
    spec: GrassmannSpec,
    y: Vec<WeightedPoly>,
    w_series: Vec<WeightedPoly>,
    potential: WeightedPoly,
    perturbed: WeightedPoly,
    gradient: Vec<WeightedPoly>,
    second_partials: Vec<Vec<WeightedPoly>>,
    hessian: WeightedPoly,
    euler: WeightedPoly,
    poincare: IntPoly,
}

impl RingPresentation {
    pub fn build(spec: GrassmannSpec) -> Result<Self> {
        let GrassmannSpec { r, k } = GrassmannSpec::new(spec.r, spec.k)?;
        let y = inverse_series(&spec, k);
        let w_series = log_series(&spec, k + 1);
        let potential = if k % 2 == 0 {
            w_series[k + 1].clone()
        } else {
            -&w_series[k + 1]
        };
        let perturbed = &potential + &spec.x(1);
        let gradient = (1..=r)
            .map(|i| perturbed.partial_derivative(i))
            .collect::<Result<Vec<_>>>()?;
        let second_partials = gradient
            .iter()
            .map(|g| {
                (1..=r)
                    .map(|j| g.partial_derivative(j))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        for (i, row) in second_partials.iter().enumerate() {
            for (j, entry) in row.iter().enumerate().take(i) {
                assert_eq!(
                    entry, &second_partials[j][i],
                    "mixed partials of the potential must commute"
                );
            }
        }
        let hessian = det_poly_matrix(&second_partials)?;
        let euler = euler_polynomial(&spec)?;
        let poincare = poincare_polynomial(&spec);
        Ok(RingPresentation {
            spec,
            y,
            w_series,
            potential,
            perturbed,
            gradient,
            second_partials,
            hessian,
            euler,
            poincare,
        })
    }

    pub fn spec(&self) -> &GrassmannSpec {
        &self.spec
    }

    /// `y_0..y_k`.
    pub fn inverse_coefficients(&self) -> &[WeightedPoly] {
        &self.y
    }

    /// `W_0..W_{k+1}`.
    pub fn log_coefficients(&self) -> &[WeightedPoly] {
        &self.w_series
    }

    /// Generators `y_{k-r+1}, ..., y_k` of the classical relation ideal.
    pub fn ideal_generators(&self) -> &[WeightedPoly] {
        let k = self.spec.k;
        &self.y[k - self.spec.r + 1..=k]
    }

    /// `W = (-1)^k W_{k+1}`, weighted degree `k + 1`.
    pub fn potential(&self) -> &WeightedPoly {
        &self.potential
    }

    /// `W + X1`.
    pub fn perturbed_potential(&self) -> &WeightedPoly {
        &self.perturbed
    }

    /// `∂(W + X1)/∂Xi` for `i = 1..r`.
    pub fn gradient(&self) -> &[WeightedPoly] {
        &self.gradient
    }

    pub fn second_partials(&self) -> &[Vec<WeightedPoly>] {
        &self.second_partials
    }

    pub fn hessian(&self) -> &WeightedPoly {
        &self.hessian
    }

    pub fn euler(&self) -> &WeightedPoly {
        &self.euler
    }

    pub fn poincare(&self) -> &IntPoly {
        &self.poincare
    }
}

/// Top chern class of `S* ⊗ Q` as a polynomial in `Xi = c_i(S*)`.
///
/// With chern roots `q1..qr` of `S*` and `c_j(Q) = (-1)^j y_j`, the class is
/// `∏_i Σ_{j=0}^{k-r} q_i^{k-r-j} c_j(Q)`. Expanding the product groups the
/// exponent vectors into orbits, so the result is
/// `Σ_λ m_λ(q) ∏_i c_{k-r-λ_i}(Q)` over partitions `λ` in the `r × (k-r)` box.
pub fn euler_polynomial(spec: &GrassmannSpec) -> Result<WeightedPoly> {
    let GrassmannSpec { r, k } = GrassmannSpec::new(spec.r, spec.k)?;
    let c = k - r;
    let y = inverse_series(spec, c);
    let chern_q: Vec<WeightedPoly> = y
        .iter()
        .enumerate()
        .map(|(j, yj)| if j % 2 == 0 { yj.clone() } else { -yj })
        .collect();
    let mut euler = WeightedPoly::zero(r);
    // partitions in the box ↔ r-multisets of {0..c} ↔ r-subsets of {0..c+r-1}
    for subset in subsets(c + r, r) {
        let parts: Vec<u32> = subset
            .iter()
            .enumerate()
            .map(|(pos, &s)| (s - pos) as u32)
            .rev()
            .collect();
        let coefficient = parts.iter().fold(WeightedPoly::one(r), |acc, &a| {
            &acc * &chern_q[c - a as usize]
        });
        if coefficient.is_zero() {
            continue;
        }
        let orbit = RootPoly::monomial_symmetric(r, &parts).to_elementary()?;
        euler = &euler + &(&orbit * &coefficient);
    }
    Ok(euler)
}

/// Poincaré polynomial of `G(r, k)`:
/// `∏_{i=1}^{k}(1 - t^{2i}) / (∏_{i=1}^{r}(1 - t^{2i}) ∏_{i=1}^{k-r}(1 - t^{2i}))`.
pub fn poincare_polynomial(spec: &GrassmannSpec) -> IntPoly {
    let product = |n: usize| {
        (1..=n).fold(IntPoly::one(), |acc, i| {
            &acc * &IntPoly::one_minus_pow(2 * i)
        })
    };
    let numerator = product(spec.k);
    let denominator = &product(spec.r) * &product(spec.k - spec.r);
    let (quotient, remainder) = numerator
        .div_rem(&denominator)
        .expect("denominator has unit leading coefficient");
    assert!(
        remainder.is_zero(),
        "Gaussian binomial division left a remainder"
    );
    quotient
}
