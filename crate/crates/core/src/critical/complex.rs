use alloc::format;
use alloc::string::String;
use core::ops::{Add, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Rational;

const RM: RoundingMode = RoundingMode::ToEven;
const GUARD_BITS: usize = 64;

/// Complex number with multiprecision binary floating-point parts.
#[derive(Debug, Clone)]
pub struct ComplexApprox {
    re: BigFloat,
    im: BigFloat,
    precision_bits: usize,
}

impl ComplexApprox {
    pub fn new(re: BigFloat, im: BigFloat, precision_bits: usize) -> Self {
        ComplexApprox {
            re,
            im,
            precision_bits,
        }
    }

    pub fn zero(precision_bits: usize) -> Self {
        Self::from_integer(&BigInt::zero(), precision_bits)
    }

    pub fn one(precision_bits: usize) -> Self {
        Self::from_integer(&BigInt::one(), precision_bits)
    }

    pub fn from_integer(n: &BigInt, precision_bits: usize) -> Self {
        ComplexApprox {
            re: bigint_to_float(n, precision_bits),
            im: BigFloat::from_word(0, precision_bits),
            precision_bits,
        }
    }

    pub fn from_rational(q: &Rational, precision_bits: usize) -> Self {
        let num = bigint_to_float(q.numer(), precision_bits + GUARD_BITS);
        let den = bigint_to_float(q.denom(), precision_bits + GUARD_BITS);
        ComplexApprox {
            re: num.div(&den, precision_bits, RM),
            im: BigFloat::from_word(0, precision_bits),
            precision_bits,
        }
    }

    /// `exp(iπ(2j+1)/k)`, the `j`-th root of `x^k = -1`.
    pub fn root_of_minus_one(j: usize, k: usize, precision_bits: usize, cc: &mut Consts) -> Self {
        let wp = precision_bits + GUARD_BITS;
        let pi = cc.pi(wp, RM);
        let angle = pi
            .mul(&BigFloat::from_u64(2 * j as u64 + 1, wp), wp, RM)
            .div(&BigFloat::from_u64(k as u64, wp), wp, RM);
        let re = angle.cos(precision_bits, RM, cc);
        let im = angle.sin(precision_bits, RM, cc);
        ComplexApprox {
            re,
            im,
            precision_bits,
        }
    }

    pub fn re(&self) -> &BigFloat {
        &self.re
    }

    pub fn im(&self) -> &BigFloat {
        &self.im
    }

    pub fn precision_bits(&self) -> usize {
        self.precision_bits
    }

    pub fn is_finite(&self) -> bool {
        let ok = |x: &BigFloat| !x.is_nan() && !x.is_inf();
        ok(&self.re) && ok(&self.im)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self.precision_bits;
        let wp = p + GUARD_BITS;
        let norm = self
            .re
            .mul(&self.re, wp, RM)
            .add(&self.im.mul(&self.im, wp, RM), wp, RM);
        Ok(ComplexApprox {
            re: self.re.div(&norm, p, RM),
            im: self.im.clone().neg().div(&norm, p, RM),
            precision_bits: p,
        })
    }

    /// Squared distance to `other`, at working precision.
    pub fn distance_squared(&self, other: &ComplexApprox) -> BigFloat {
        let diff = self.clone() - other.clone();
        let p = diff.precision_bits;
        diff.re
            .mul(&diff.re, p, RM)
            .add(&diff.im.mul(&diff.im, p, RM), p, RM)
    }

    /// Approximate `(re, im)` as `f64`s, for display.
    pub fn to_f64(&self) -> (f64, f64) {
        (float_to_f64(&self.re), float_to_f64(&self.im))
    }

    pub fn to_display_string(&self) -> String {
        let (re, im) = self.to_f64();
        let im_sign = if im.is_sign_negative() { '-' } else { '+' };
        format!("{re:.17e} {im_sign} {:.17e}i", im.abs())
    }

    /// Rounds `denominator · self` to the nearest integer `n` and returns
    /// `n / denominator` together with the residual `|self - n/denominator|`
    /// and `|Im self|`, both as `f64`.
    pub fn nearest_rational(&self, denominator: &BigInt) -> (Rational, f64, f64) {
        let wp = self.precision_bits + GUARD_BITS;
        let d = bigint_to_float(denominator, wp);
        let scaled = self.re.mul(&d, wp, RM);
        let n = nearest_integer(&scaled);
        let back = bigint_to_float(&n, wp);
        let residual = scaled.sub(&back, wp, RM).div(&d, wp, RM);
        let value = Rational::new(n, denominator.clone());
        (
            value,
            float_to_f64(&residual).abs(),
            float_to_f64(&self.im).abs(),
        )
    }
}

fn combine_precision(a: &ComplexApprox, b: &ComplexApprox) -> usize {
    a.precision_bits.max(b.precision_bits)
}

impl Add for ComplexApprox {
    type Output = ComplexApprox;
    fn add(self, rhs: ComplexApprox) -> ComplexApprox {
        let p = combine_precision(&self, &rhs);
        ComplexApprox {
            re: self.re.add(&rhs.re, p, RM),
            im: self.im.add(&rhs.im, p, RM),
            precision_bits: p,
        }
    }
}

impl Sub for ComplexApprox {
    type Output = ComplexApprox;
    fn sub(self, rhs: ComplexApprox) -> ComplexApprox {
        let p = combine_precision(&self, &rhs);
        ComplexApprox {
            re: self.re.sub(&rhs.re, p, RM),
            im: self.im.sub(&rhs.im, p, RM),
            precision_bits: p,
        }
    }
}

impl Mul for ComplexApprox {
    type Output = ComplexApprox;
    #[allow(clippy::suspicious_arithmetic_impl)] // guard bits
    fn mul(self, rhs: ComplexApprox) -> ComplexApprox {
        let p = combine_precision(&self, &rhs);
        let wp = p + GUARD_BITS;
        let ac = self.re.mul(&rhs.re, wp, RM);
        let bd = self.im.mul(&rhs.im, wp, RM);
        let ad = self.re.mul(&rhs.im, wp, RM);
        let bc = self.im.mul(&rhs.re, wp, RM);
        ComplexApprox {
            re: ac.sub(&bd, p, RM),
            im: ad.add(&bc, p, RM),
            precision_bits: p,
        }
    }
}

impl Neg for ComplexApprox {
    type Output = ComplexApprox;
    fn neg(self) -> ComplexApprox {
        ComplexApprox {
            re: self.re.neg(),
            im: self.im.neg(),
            precision_bits: self.precision_bits,
        }
    }
}

/// Exact conversion when `precision_bits` covers the bit length of `n`,
/// correctly rounded otherwise.
pub(crate) fn bigint_to_float(n: &BigInt, precision_bits: usize) -> BigFloat {
    let (sign, digits) = n.to_u64_digits();
    let bits = (n.bits() as usize).max(1);
    let wp = precision_bits.max(bits) + GUARD_BITS;
    let radix = BigFloat::from_u128(1u128 << 64, wp);
    let mut acc = BigFloat::from_word(0, wp);
    for d in digits.iter().rev() {
        acc = acc
            .mul(&radix, wp, RM)
            .add(&BigFloat::from_u64(*d, wp), wp, RM);
    }
    if sign == num_bigint::Sign::Minus {
        acc.inv_sign();
    }
    let mut out = acc;
    out.set_precision(precision_bits, RM)
        .expect("precision is positive");
    out
}

/// Nearest integer, ties to even.
pub(crate) fn nearest_integer(x: &BigFloat) -> BigInt {
    let Some((words, _, sign, exponent, _)) = x.as_raw_parts() else {
        return BigInt::zero();
    };
    if x.is_zero() {
        return BigInt::zero();
    }
    // value = M * 2^(exponent - 64 * len)
    let mantissa = BigUint::from_slice(
        &words
            .iter()
            .flat_map(|w| [*w as u32, (*w >> 32) as u32])
            .collect::<alloc::vec::Vec<u32>>(),
    );
    let shift = exponent as i64 - 64 * words.len() as i64;
    let magnitude = if shift >= 0 {
        mantissa << shift as usize
    } else {
        let s = (-shift) as usize;
        let floor = &mantissa >> s;
        let remainder = &mantissa - (&floor << s);
        let half = BigUint::one() << (s - 1);
        if remainder > half || (remainder == half && (&floor & BigUint::one()) == BigUint::one()) {
            floor + BigUint::one()
        } else {
            floor
        }
    };
    let n = BigInt::from(magnitude);
    if sign == Sign::Neg {
        -n
    } else {
        n
    }
}

pub(crate) fn float_to_f64(x: &BigFloat) -> f64 {
    let Some((words, _, sign, exponent, _)) = x.as_raw_parts() else {
        return f64::NAN;
    };
    if x.is_zero() || words.is_empty() {
        return 0.0;
    }
    let top = words[words.len() - 1] as f64;
    let v = top * exp2_f64(exponent - 64);
    if sign == Sign::Neg {
        -v
    } else {
        v
    }
}

pub(crate) fn exp2_f64(e: i32) -> f64 {
    match e {
        ..=-1023 => 0.0,
        1024.. => f64::INFINITY,
        _ => f64::from_bits(((e + 1023) as u64) << 52),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_conversion_round_trips() {
        for n in [0i64, 1, -1, 5, -3, 1 << 40, i64::MAX, i64::MIN + 1] {
            let big = BigInt::from(n);
            let f = bigint_to_float(&big, 128);
            assert_eq!(nearest_integer(&f), big);
        }
        let huge = BigInt::from(3u8).pow(200);
        assert_eq!(nearest_integer(&bigint_to_float(&huge, 400)), huge);
    }

    #[test]
    fn rounding_ties_to_even() {
        let half = BigFloat::from_f64(2.5, 64);
        assert_eq!(nearest_integer(&half), BigInt::from(2));
        let neg = BigFloat::from_f64(-3.5, 64);
        assert_eq!(nearest_integer(&neg), BigInt::from(-4));
        assert_eq!(
            nearest_integer(&BigFloat::from_f64(0.3, 64)),
            BigInt::zero()
        );
    }

    #[test]
    fn roots_of_minus_one() {
        let mut cc = Consts::new().unwrap();
        let q = ComplexApprox::root_of_minus_one(0, 2, 128, &mut cc);
        let (re, im) = q.to_f64();
        assert!(re.abs() < 1e-30);
        assert!((im - 1.0).abs() < 1e-15);
        // q^k = -1
        let q = ComplexApprox::root_of_minus_one(2, 5, 128, &mut cc);
        let mut p = ComplexApprox::one(128);
        for _ in 0..5 {
            p = p * q.clone();
        }
        let minus_one = ComplexApprox::from_integer(&BigInt::from(-1), 128);
        assert!(float_to_f64(&p.distance_squared(&minus_one)) < 1e-70);
    }

    #[test]
    fn inverse_and_rational() {
        let third = ComplexApprox::from_rational(&Rational::new(1.into(), 3.into()), 128);
        let three = third.inverse().unwrap();
        let (v, residual, im) = three.nearest_rational(&BigInt::one());
        assert_eq!(v, Rational::from_integer(3.into()));
        assert!(residual < 1e-30 && im == 0.0);
        assert_eq!(
            ComplexApprox::zero(128).inverse().unwrap_err(),
            Error::DivisionByZero
        );
    }
}
