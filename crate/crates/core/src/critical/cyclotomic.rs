use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::complex::ComplexApprox;
use crate::error::{Error, Result};
use crate::poly::Rational;
use crate::univariate::IntPoly;

/// `Φ_n(x)` from `x^n - 1 = ∏_{d | n} Φ_d(x)`.
pub fn cyclotomic_polynomial(n: usize) -> IntPoly {
    assert!(n >= 1, "cyclotomic polynomial needs n >= 1");
    let mut known: BTreeMap<usize, IntPoly> = BTreeMap::new();
    for d in (1..=n).filter(|d| n.is_multiple_of(*d)) {
        let mut p = IntPoly::x_pow_minus_one(d);
        for (e, phi) in known.iter().filter(|(e, _)| d % **e == 0) {
            let (q, rem) = p.div_rem(phi).expect("monic divisor");
            debug_assert!(rem.is_zero(), "Φ_{e} must divide x^{d} - 1");
            p = q;
        }
        known.insert(d, p);
    }
    known.remove(&n).unwrap()
}

/// The cyclotomic field `Q(ζ_n) = Q[x] / Φ_n(x)`.
#[derive(Debug, PartialEq, Eq)]
pub struct CyclotomicField {
    order: usize,
    // monic, low to high, length degree + 1
    modulus: Vec<Rational>,
}

impl CyclotomicField {
    pub fn new(order: usize) -> Arc<Self> {
        let modulus = cyclotomic_polynomial(order)
            .coeffs()
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        Arc::new(CyclotomicField { order, modulus })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `φ(order)`, the dimension over `Q`.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    fn reduce(&self, mut v: Vec<Rational>) -> Vec<Rational> {
        let deg = self.degree();
        while v.len() > deg {
            let top = v.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let base = v.len() - deg;
            for (j, m) in self.modulus[..deg].iter().enumerate() {
                v[base + j] -= &top * m;
            }
        }
        v.resize(deg, Rational::zero());
        v
    }
}

/// Element of `Q(ζ_n)` in the power basis `1, ζ, ..., ζ^{φ(n)-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicElement {
    field: Arc<CyclotomicField>,
    coeffs: Vec<Rational>,
}

impl CyclotomicElement {
    pub fn from_coeffs(field: &Arc<CyclotomicField>, coeffs: Vec<Rational>) -> Self {
        CyclotomicElement {
            coeffs: field.reduce(coeffs),
            field: Arc::clone(field),
        }
    }

    pub fn from_rational(field: &Arc<CyclotomicField>, c: Rational) -> Self {
        Self::from_coeffs(field, vec![c])
    }

    pub fn zero(field: &Arc<CyclotomicField>) -> Self {
        Self::from_coeffs(field, Vec::new())
    }

    pub fn one(field: &Arc<CyclotomicField>) -> Self {
        Self::from_rational(field, Rational::one())
    }

    /// `ζ^e` for any integer exponent.
    pub fn zeta_pow(field: &Arc<CyclotomicField>, e: i64) -> Self {
        let e = e.rem_euclid(field.order as i64) as usize;
        let mut v = vec![Rational::zero(); e + 1];
        v[e] = Rational::one();
        Self::from_coeffs(field, v)
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The value as a rational, if every non-constant coordinate vanishes.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut acc = Self::one(&self.field);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplicative inverse by the extended Euclidean algorithm against `Φ_n`.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut r0 = trim(self.field.modulus.clone());
        let mut r1 = trim(self.coeffs.clone());
        let mut s0: Vec<Rational> = Vec::new();
        let mut s1: Vec<Rational> = vec![Rational::one()];
        while !r1.is_empty() {
            let (q, rem) = div_rem(&r0, &r1);
            let next_s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = core::mem::replace(&mut r1, rem);
            s0 = core::mem::replace(&mut s1, next_s);
        }
        // Φ_n irreducible: the gcd is a nonzero constant
        debug_assert_eq!(r0.len(), 1);
        let scale = r0[0].recip();
        let inv: Vec<Rational> = s0.iter().map(|c| c * &scale).collect();
        Ok(Self::from_coeffs(&self.field, inv))
    }

    /// Numeric value with `ζ = exp(2πi / n)`.
    pub fn to_complex(&self, zeta: &ComplexApprox) -> ComplexApprox {
        let p = zeta.precision_bits();
        self.coeffs
            .iter()
            .rev()
            .fold(ComplexApprox::zero(p), |acc, c| {
                acc * zeta.clone() + ComplexApprox::from_rational(c, p)
            })
    }

    pub fn to_display_string(&self) -> String {
        alloc::format!("{self}")
    }
}

impl fmt::Display for CyclotomicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let mag = c.abs();
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("z")?,
                (1, false) => write!(f, "{mag}*z")?,
                (_, true) => write!(f, "z^{i}")?,
                (_, false) => write!(f, "{mag}*z^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let zero = Rational::zero();
    trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
            .collect(),
    )
}

/// Division with remainder in `Q[x]`; `b` must be nonzero and trimmed.
fn div_rem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let db = b.len() - 1;
    let lead_inv = b[db].recip();
    let mut rem = a.to_vec();
    if rem.len() <= db {
        return (Vec::new(), trim(rem));
    }
    let mut quot = vec![Rational::zero(); rem.len() - db];
    for i in (0..quot.len()).rev() {
        let c = &rem[i + db] * &lead_inv;
        if c.is_zero() {
            continue;
        }
        for (j, bc) in b.iter().enumerate() {
            rem[i + j] -= &c * bc;
        }
        quot[i] = c;
    }
    (trim(quot), trim(rem))
}

impl Add for &CyclotomicElement {
    type Output = CyclotomicElement;
    fn add(self, rhs: &CyclotomicElement) -> CyclotomicElement {
        debug_assert_eq!(self.field.order, rhs.field.order);
        CyclotomicElement {
            field: Arc::clone(&self.field),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &CyclotomicElement {
    type Output = CyclotomicElement;
    fn sub(self, rhs: &CyclotomicElement) -> CyclotomicElement {
        debug_assert_eq!(self.field.order, rhs.field.order);
        CyclotomicElement {
            field: Arc::clone(&self.field),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &CyclotomicElement {
    type Output = CyclotomicElement;
    fn mul(self, rhs: &CyclotomicElement) -> CyclotomicElement {
        debug_assert_eq!(self.field.order, rhs.field.order);
        let mut prod = vec![Rational::zero(); 2 * self.coeffs.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        CyclotomicElement {
            coeffs: self.field.reduce(prod),
            field: Arc::clone(&self.field),
        }
    }
}

impl Neg for &CyclotomicElement {
    type Output = CyclotomicElement;
    fn neg(self) -> CyclotomicElement {
        CyclotomicElement {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Add for CyclotomicElement {
    type Output = CyclotomicElement;
    fn add(self, rhs: CyclotomicElement) -> CyclotomicElement {
        &self + &rhs
    }
}

impl Sub for CyclotomicElement {
    type Output = CyclotomicElement;
    fn sub(self, rhs: CyclotomicElement) -> CyclotomicElement {
        &self - &rhs
    }
}

impl Mul for CyclotomicElement {
    type Output = CyclotomicElement;
    fn mul(self, rhs: CyclotomicElement) -> CyclotomicElement {
        &self * &rhs
    }
}

impl Neg for CyclotomicElement {
    type Output = CyclotomicElement;
    fn neg(self) -> CyclotomicElement {
        -&self
    }
}

/// Euler's totient, for sanity checks on field degrees.
pub fn totient(n: usize) -> usize {
    (1..=n).filter(|&m| num_integer::gcd(m, n) == 1).count()
}
