//! Critical points of the perturbed potential and evaluation there.
//!
//! In chern roots the critical points are the unordered `r`-subsets of the
//! `k` roots of `x^k = -1`. Root `j` is fixed as `q_j = exp(iπ(2j+1)/k)`,
//! which is `ζ^{2j+1}` for the primitive `2k`-th root of unity `ζ`, so the
//! exact backend (the field `Q(ζ_2k)`) and the float backend name the same
//! points.

pub mod complex;
pub mod cyclotomic;

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul};

use astro_float::Consts;
use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use complex::ComplexApprox;
pub use cyclotomic::{cyclotomic_polynomial, CyclotomicElement, CyclotomicField};

use crate::error::{Error, Result};
use crate::poly::{Rational, WeightedPoly};
use crate::presentation::GrassmannSpec;
use crate::symmetric::subsets;

pub const DEFAULT_PRECISION_BITS: usize = 128;
/// Rationality tolerance at the default precision.
pub const DEFAULT_TOLERANCE: f64 = 1e-20;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum Backend {
    /// Exact arithmetic in `Q(ζ_2k)`.
    #[default]
    Exact,
    /// Multiprecision complex floating point.
    Float { precision_bits: usize },
}

impl Backend {
    pub fn float() -> Self {
        Backend::Float {
            precision_bits: DEFAULT_PRECISION_BITS,
        }
    }

    /// Rationality tolerance: [`DEFAULT_TOLERANCE`] at the default precision,
    /// scaled by `2^{⌊(128 - bits)/2⌋}` so that half the extra (or missing)
    /// bits go to the cancellation margin.
    pub fn default_tolerance(&self) -> f64 {
        match self {
            Backend::Exact => 0.0,
            Backend::Float { precision_bits } => {
                let shift = (DEFAULT_PRECISION_BITS as i64 - *precision_bits as i64).div_euclid(2);
                DEFAULT_TOLERANCE * complex::exp2_f64(shift.clamp(-1000, 1000) as i32)
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Backend::Exact => "exact",
            Backend::Float { .. } => "float",
        }
    }
}

/// A value at a critical point, tagged by backend.
#[derive(Debug, Clone)]
pub enum PointValue {
    Exact(CyclotomicElement),
    Float(ComplexApprox),
}

impl PointValue {
    pub fn backend(&self) -> Backend {
        match self {
            PointValue::Exact(_) => Backend::Exact,
            PointValue::Float(z) => Backend::Float {
                precision_bits: z.precision_bits(),
            },
        }
    }

    pub fn try_add(&self, other: &PointValue) -> Result<PointValue> {
        match (self, other) {
            (PointValue::Exact(a), PointValue::Exact(b)) => Ok(PointValue::Exact(a + b)),
            (PointValue::Float(a), PointValue::Float(b)) => {
                Ok(PointValue::Float(a.clone() + b.clone()))
            }
            _ => Err(Error::BackendMismatch),
        }
    }

    pub fn try_sub(&self, other: &PointValue) -> Result<PointValue> {
        match (self, other) {
            (PointValue::Exact(a), PointValue::Exact(b)) => Ok(PointValue::Exact(a - b)),
            (PointValue::Float(a), PointValue::Float(b)) => {
                Ok(PointValue::Float(a.clone() - b.clone()))
            }
            _ => Err(Error::BackendMismatch),
        }
    }

    pub fn try_mul(&self, other: &PointValue) -> Result<PointValue> {
        match (self, other) {
            (PointValue::Exact(a), PointValue::Exact(b)) => Ok(PointValue::Exact(a * b)),
            (PointValue::Float(a), PointValue::Float(b)) => {
                Ok(PointValue::Float(a.clone() * b.clone()))
            }
            _ => Err(Error::BackendMismatch),
        }
    }

    pub fn scale(&self, c: &Rational) -> PointValue {
        match self {
            PointValue::Exact(a) => {
                let c = CyclotomicElement::from_rational(a.field(), c.clone());
                PointValue::Exact(a * &c)
            }
            PointValue::Float(a) => {
                let c = ComplexApprox::from_rational(c, a.precision_bits());
                PointValue::Float(a.clone() * c)
            }
        }
    }

    pub fn invert(&self) -> Result<PointValue> {
        match self {
            PointValue::Exact(a) => a.inverse().map(PointValue::Exact),
            PointValue::Float(a) => a.inverse().map(PointValue::Float),
        }
    }

    pub fn pow(&self, n: u32) -> PointValue {
        match self {
            PointValue::Exact(a) => PointValue::Exact(a.pow(n)),
            PointValue::Float(a) => {
                let mut acc = ComplexApprox::one(a.precision_bits());
                for _ in 0..n {
                    acc = acc * a.clone();
                }
                PointValue::Float(acc)
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            PointValue::Exact(a) => a.is_zero(),
            PointValue::Float(a) => a.is_zero(),
        }
    }

    /// The rational number this value represents, assuming its denominator
    /// divides `denominator` in the float backend.
    ///
    /// Exact values must lie in `Q`; float values must have imaginary part
    /// and rounding residual below `tolerance`.
    pub fn rational_part_with_denominator(
        &self,
        tolerance: f64,
        denominator: &BigInt,
    ) -> Result<Rational> {
        match self {
            PointValue::Exact(a) => a
                .as_rational()
                .ok_or_else(|| Error::Rationality(a.to_display_string())),
            PointValue::Float(z) => {
                if !z.is_finite() {
                    return Err(Error::Precision {
                        residual: String::from("non-finite"),
                        tolerance: alloc::format!("{tolerance:e}"),
                    });
                }
                let (value, residual, imag) = z.nearest_rational(denominator);
                let worst = residual.max(imag);
                if worst.is_nan() || worst >= tolerance {
                    return Err(Error::Precision {
                        residual: alloc::format!("{worst:e}"),
                        tolerance: alloc::format!("{tolerance:e}"),
                    });
                }
                Ok(value)
            }
        }
    }

    /// [`Self::rational_part_with_denominator`] for values expected to be integers.
    pub fn rational_part(&self, tolerance: f64) -> Result<Rational> {
        self.rational_part_with_denominator(tolerance, &BigInt::one())
    }

    pub fn to_display_string(&self) -> String {
        match self {
            PointValue::Exact(a) => a.to_display_string(),
            PointValue::Float(z) => z.to_display_string(),
        }
    }
}

/// An unordered `r`-tuple of distinct roots of `x^k = -1`, by root index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CriticalPoint {
    spec: GrassmannSpec,
    root_indices: Vec<usize>,
}

impl CriticalPoint {
    pub fn new(spec: GrassmannSpec, mut root_indices: Vec<usize>) -> Result<Self> {
        root_indices.sort_unstable();
        let distinct = root_indices.windows(2).all(|w| w[0] < w[1]);
        let in_range = root_indices.iter().all(|&j| j < spec.k());
        if root_indices.len() != spec.r() || !distinct || !in_range {
            return Err(Error::Unsupported(alloc::format!(
                "critical point of G({},{}) needs {} distinct root indices below {}",
                spec.r(),
                spec.k(),
                spec.r(),
                spec.k()
            )));
        }
        Ok(CriticalPoint { spec, root_indices })
    }

    pub fn spec(&self) -> &GrassmannSpec {
        &self.spec
    }

    pub fn root_indices(&self) -> &[usize] {
        &self.root_indices
    }
}

impl fmt::Display for CriticalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, j) in self.root_indices.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{j}")?;
        }
        f.write_str("}")
    }
}

/// All `binomial(k, r)` critical points, lexicographic in the root indices.
pub fn enumerate_critical_points(spec: &GrassmannSpec) -> Vec<CriticalPoint> {
    subsets(spec.k(), spec.r())
        .into_iter()
        .map(|root_indices| CriticalPoint {
            spec: *spec,
            root_indices,
        })
        .collect()
}

#[derive(Debug, Clone)]
enum Values {
    Exact {
        field: Arc<CyclotomicField>,
        roots: Vec<CyclotomicElement>,
        xs: Vec<Vec<CyclotomicElement>>,
    },
    Float {
        precision_bits: usize,
        roots: Vec<ComplexApprox>,
        xs: Vec<Vec<ComplexApprox>>,
    },
}

/// Critical points of one Grassmannian with their `Xi` values precomputed
/// in one backend.
#[derive(Debug, Clone)]
pub struct CriticalLocus {
    spec: GrassmannSpec,
    backend: Backend,
    points: Vec<CriticalPoint>,
    values: Values,
}

impl CriticalLocus {
    pub fn new(spec: GrassmannSpec, backend: Backend) -> Result<Self> {
        Self::with_points(spec, backend, enumerate_critical_points(&spec))
    }

    pub fn with_points(
        spec: GrassmannSpec,
        backend: Backend,
        points: Vec<CriticalPoint>,
    ) -> Result<Self> {
        let k = spec.k();
        let values = match backend {
            Backend::Exact => {
                let field = CyclotomicField::new(2 * k);
                let roots: Vec<CyclotomicElement> = (0..k)
                    .map(|j| CyclotomicElement::zeta_pow(&field, 2 * j as i64 + 1))
                    .collect();
                let one = CyclotomicElement::one(&field);
                let xs = points
                    .iter()
                    .map(|pt| elementary_values(&select(&roots, pt), &one))
                    .collect();
                Values::Exact { field, roots, xs }
            }
            Backend::Float { precision_bits } => {
                if precision_bits < 16 {
                    return Err(Error::Unsupported(alloc::format!(
                        "float precision {precision_bits} bits is too small"
                    )));
                }
                let mut cc = Consts::new().map_err(|_| {
                    Error::Unsupported(String::from("cannot initialise float constants"))
                })?;
                let roots: Vec<ComplexApprox> = (0..k)
                    .map(|j| ComplexApprox::root_of_minus_one(j, k, precision_bits, &mut cc))
                    .collect();
                let one = ComplexApprox::one(precision_bits);
                let xs = points
                    .iter()
                    .map(|pt| elementary_values(&select(&roots, pt), &one))
                    .collect();
                Values::Float {
                    precision_bits,
                    roots,
                    xs,
                }
            }
        };
        Ok(CriticalLocus {
            spec,
            backend,
            points,
            values,
        })
    }

    pub fn spec(&self) -> &GrassmannSpec {
        &self.spec
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    pub fn points(&self) -> &[CriticalPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The root `q_j` of `x^k = -1`.
    pub fn root(&self, j: usize) -> PointValue {
        match &self.values {
            Values::Exact { roots, .. } => PointValue::Exact(roots[j].clone()),
            Values::Float { roots, .. } => PointValue::Float(roots[j].clone()),
        }
    }

    pub fn constant(&self, c: &Rational) -> PointValue {
        match &self.values {
            Values::Exact { field, .. } => {
                PointValue::Exact(CyclotomicElement::from_rational(field, c.clone()))
            }
            Values::Float { precision_bits, .. } => {
                PointValue::Float(ComplexApprox::from_rational(c, *precision_bits))
            }
        }
    }

    pub fn zero(&self) -> PointValue {
        self.constant(&Rational::zero())
    }

    pub fn one(&self) -> PointValue {
        self.constant(&Rational::one())
    }

    /// `Xi = e_i(q_{j1}, ..., q_{jr})` at the point with index `idx`.
    pub fn eval_x(&self, idx: usize) -> Vec<PointValue> {
        match &self.values {
            Values::Exact { xs, .. } => xs[idx].iter().cloned().map(PointValue::Exact).collect(),
            Values::Float { xs, .. } => xs[idx].iter().cloned().map(PointValue::Float).collect(),
        }
    }

    pub fn eval_poly(&self, p: &WeightedPoly, idx: usize) -> Result<PointValue> {
        if p.nvars() != self.spec.r() {
            return Err(Error::Dimension {
                left: self.spec.r(),
                right: p.nvars(),
            });
        }
        Ok(match &self.values {
            Values::Exact { field, xs, .. } => {
                let one = CyclotomicElement::one(field);
                PointValue::Exact(p.evaluate(&xs[idx], &one, |c| {
                    CyclotomicElement::from_rational(field, c.clone())
                }))
            }
            Values::Float {
                precision_bits, xs, ..
            } => {
                let one = ComplexApprox::one(*precision_bits);
                PointValue::Float(p.evaluate(&xs[idx], &one, |c| {
                    ComplexApprox::from_rational(c, *precision_bits)
                }))
            }
        })
    }

    /// `k^r ∏ q_i^{k-1} / (∏_{i<j} (q_i - q_j))^2`, straight from the roots.
    pub fn hessian_closed_form(&self, idx: usize) -> Result<PointValue> {
        let k = self.spec.k();
        let r = self.spec.r();
        let point = &self.points[idx];
        let roots: Vec<PointValue> = point.root_indices.iter().map(|&j| self.root(j)).collect();
        let k_pow = BigInt::from(k).pow(r as u32);
        let mut numerator = self.constant(&Rational::from_integer(k_pow));
        for q in &roots {
            numerator = numerator.try_mul(&q.pow(k as u32 - 1))?;
        }
        let mut vandermonde = self.one();
        for i in 0..r {
            for j in i + 1..r {
                vandermonde = vandermonde.try_mul(&roots[i].try_sub(&roots[j])?)?;
            }
        }
        let denominator = vandermonde.try_mul(&vandermonde)?;
        assert!(!denominator.is_zero(), "critical roots must be distinct");
        numerator.try_mul(&denominator.invert()?)
    }

    /// Sum of `f(idx)` over all points, in enumeration order.
    pub fn sum<F>(&self, mut f: F) -> Result<PointValue>
    where
        F: FnMut(usize) -> Result<PointValue>,
    {
        let mut acc = self.zero();
        for idx in 0..self.points.len() {
            acc = acc.try_add(&f(idx)?)?;
        }
        Ok(acc)
    }

    /// Numeric image of an exact value under the fixed embedding `ζ ↦ exp(iπ/k)`.
    pub fn exact_to_float(
        &self,
        v: &CyclotomicElement,
        precision_bits: usize,
    ) -> Result<ComplexApprox> {
        let mut cc = Consts::new()
            .map_err(|_| Error::Unsupported(String::from("cannot initialise float constants")))?;
        let zeta = ComplexApprox::root_of_minus_one(0, self.spec.k(), precision_bits, &mut cc);
        Ok(v.to_complex(&zeta))
    }
}

fn select<T: Clone>(roots: &[T], point: &CriticalPoint) -> Vec<T> {
    point
        .root_indices
        .iter()
        .map(|&j| roots[j].clone())
        .collect()
}

/// `e_1..e_r` of `values`, read off `∏ (1 + v t)`.
fn elementary_values<T>(values: &[T], one: &T) -> Vec<T>
where
    T: Clone + Add<Output = T> + Mul<Output = T>,
{
    let r = values.len();
    // coefficients of ∏ (1 + v t), index = power of t
    let mut coeffs: Vec<Option<T>> = vec![None; r + 1];
    coeffs[0] = Some(one.clone());
    for (n, v) in values.iter().enumerate() {
        for m in (1..=n + 1).rev() {
            let shifted = coeffs[m - 1].clone().map(|c| c * v.clone());
            coeffs[m] = match (coeffs[m].take(), shifted) {
                (Some(a), Some(b)) => Some(a + b),
                (a, b) => a.or(b),
            };
        }
    }
    coeffs.into_iter().skip(1).map(|c| c.unwrap()).collect()
}

/// `Xi` values at one point.
pub fn eval_x(point: &CriticalPoint, backend: Backend) -> Result<Vec<PointValue>> {
    let locus = CriticalLocus::with_points(point.spec, backend, vec![point.clone()])?;
    Ok(locus.eval_x(0))
}

pub fn eval_poly(p: &WeightedPoly, point: &CriticalPoint, backend: Backend) -> Result<PointValue> {
    CriticalLocus::with_points(point.spec, backend, vec![point.clone()])?.eval_poly(p, 0)
}

pub fn hessian_closed_form(point: &CriticalPoint, backend: Backend) -> Result<PointValue> {
    CriticalLocus::with_points(point.spec, backend, vec![point.clone()])?.hessian_closed_form(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rational;
    use crate::presentation::RingPresentation;

    fn spec(r: usize, k: usize) -> GrassmannSpec {
        GrassmannSpec::new(r, k).unwrap()
    }

    #[test]
    fn tolerance_tracks_precision() {
        assert_eq!(Backend::float().default_tolerance(), DEFAULT_TOLERANCE);
        let t64 = Backend::Float { precision_bits: 64 }.default_tolerance();
        assert!((t64 / DEFAULT_TOLERANCE - 4294967296.0).abs() < 1.0);
        assert!(
            Backend::Float {
                precision_bits: 256
            }
            .default_tolerance()
                < 1e-39
        );
        assert_eq!(Backend::Exact.default_tolerance(), 0.0);
    }

    #[test]
    fn enumeration_examples() {
        let pts = enumerate_critical_points(&spec(1, 2));
        assert_eq!(pts.len(), 2);
        assert_eq!(pts[0].root_indices(), &[0]);
        assert_eq!(pts[1].root_indices(), &[1]);
        assert_eq!(enumerate_critical_points(&spec(2, 4)).len(), 6);
        let pts = enumerate_critical_points(&spec(2, 3));
        let idx: Vec<&[usize]> = pts.iter().map(|p| p.root_indices()).collect();
        assert_eq!(idx, vec![&[0, 1][..], &[0, 2], &[1, 2]]);
        for k in 2..=10 {
            for r in 1..k {
                let s = spec(r, k);
                assert_eq!(
                    enumerate_critical_points(&s).len() as u64,
                    s.critical_count()
                );
            }
        }
    }

    #[test]
    fn point_validation() {
        assert!(CriticalPoint::new(spec(2, 4), vec![3, 1]).is_ok());
        assert!(CriticalPoint::new(spec(2, 4), vec![1, 1]).is_err());
        assert!(CriticalPoint::new(spec(2, 4), vec![1, 4]).is_err());
        assert!(CriticalPoint::new(spec(2, 4), vec![1]).is_err());
    }

    #[test]
    fn projective_line_values() {
        let s = spec(1, 2);
        let pt = CriticalPoint::new(s, vec![0]).unwrap();
        let xs = eval_x(&pt, Backend::Exact).unwrap();
        let PointValue::Exact(x1) = &xs[0] else {
            panic!()
        };
        // ζ_4 = i
        assert_eq!(x1, &CyclotomicElement::zeta_pow(x1.field(), 1));
        let h = hessian_closed_form(&pt, Backend::Exact).unwrap();
        let PointValue::Exact(h) = h else { panic!() };
        assert_eq!(
            h,
            &CyclotomicElement::zeta_pow(x1.field(), 1)
                * &CyclotomicElement::from_rational(x1.field(), rational(2))
        );
        let locus = CriticalLocus::new(s, Backend::Exact).unwrap();
        let total = locus.sum(|i| Ok(locus.eval_x(i)[0].clone())).unwrap();
        assert_eq!(total.rational_part(DEFAULT_TOLERANCE).unwrap(), rational(0));
    }

    #[test]
    fn conjugate_pair_has_unit_product() {
        for k in [3, 4, 5, 6] {
            let s = spec(2, k);
            for j in 0..k / 2 {
                let pt = CriticalPoint::new(s, vec![j, k - 1 - j]).unwrap();
                if j == k - 1 - j {
                    continue;
                }
                let x2 = eval_x(&pt, Backend::Exact).unwrap()[1].clone();
                assert_eq!(x2.rational_part(DEFAULT_TOLERANCE).unwrap(), rational(1));
            }
        }
    }

    #[test]
    fn constants_and_top_power() {
        for (r, k) in [(2, 4), (3, 5)] {
            let s = spec(r, k);
            let locus = CriticalLocus::new(s, Backend::Exact).unwrap();
            let c = WeightedPoly::constant(r, rational(5));
            let xr_k = WeightedPoly::variable(r, r).unwrap().pow(k as u32);
            let expected = if r % 2 == 0 { 1 } else { -1 };
            for idx in 0..locus.len() {
                let v = locus.eval_poly(&c, idx).unwrap();
                assert_eq!(v.rational_part(DEFAULT_TOLERANCE).unwrap(), rational(5));
                let v = locus.eval_poly(&xr_k, idx).unwrap();
                assert_eq!(
                    v.rational_part(DEFAULT_TOLERANCE).unwrap(),
                    rational(expected)
                );
            }
        }
    }

    #[test]
    fn gradient_vanishes_and_hessian_matches() {
        let s = spec(2, 4);
        let pres = RingPresentation::build(s).unwrap();
        let locus = CriticalLocus::new(s, Backend::Exact).unwrap();
        for idx in 0..locus.len() {
            for g in pres.gradient() {
                assert!(locus.eval_poly(g, idx).unwrap().is_zero());
            }
            let symbolic = locus.eval_poly(pres.hessian(), idx).unwrap();
            let closed = locus.hessian_closed_form(idx).unwrap();
            assert!(!closed.is_zero());
            assert!(symbolic.try_sub(&closed).unwrap().is_zero());
        }
    }

    #[test]
    fn backends_agree_on_x_values() {
        let s = spec(2, 5);
        let bits = DEFAULT_PRECISION_BITS;
        let exact = CriticalLocus::new(s, Backend::Exact).unwrap();
        let float = CriticalLocus::new(
            s,
            Backend::Float {
                precision_bits: bits,
            },
        )
        .unwrap();
        assert_eq!(exact.len(), 10);
        let bound = 2f64.powi(1 - bits as i32);
        for idx in 0..exact.len() {
            for (e, f) in exact.eval_x(idx).iter().zip(float.eval_x(idx)) {
                let (PointValue::Exact(e), PointValue::Float(f)) = (e, f) else {
                    panic!()
                };
                let image = exact.exact_to_float(e, bits).unwrap();
                let d2 = complex::float_to_f64(&image.distance_squared(&f));
                assert!(d2.sqrt() < bound, "distance {} at point {idx}", d2.sqrt());
            }
        }
    }

    #[test]
    fn mixing_backends_fails() {
        let s = spec(1, 3);
        let exact = CriticalLocus::new(s, Backend::Exact).unwrap();
        let float = CriticalLocus::new(s, Backend::float()).unwrap();
        assert_eq!(
            exact.one().try_add(&float.one()).unwrap_err(),
            Error::BackendMismatch
        );
    }

    #[test]
    fn rational_part_rejects_irrational() {
        let s = spec(1, 4);
        let exact = CriticalLocus::new(s, Backend::Exact).unwrap();
        assert!(matches!(
            exact.root(0).rational_part(DEFAULT_TOLERANCE),
            Err(Error::Rationality(_))
        ));
        let float = CriticalLocus::new(s, Backend::float()).unwrap();
        assert!(matches!(
            float.root(0).rational_part(DEFAULT_TOLERANCE),
            Err(Error::Precision { .. })
        ));
        assert_eq!(
            exact
                .constant(&rational(7))
                .rational_part(DEFAULT_TOLERANCE)
                .unwrap(),
            rational(7)
        );
        assert_eq!(exact.zero().invert().unwrap_err(), Error::DivisionByZero);
    }
}
