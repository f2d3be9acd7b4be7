//! Sparse multivariate polynomials in `X1..Xr` with exact rational
//! coefficients, graded by the weight `deg(Xi) = i`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Exponent vector `(e1, ..., er)`; entry `i - 1` is the exponent of `Xi`.
///
/// Ordered first by weighted degree, then lexicographically on the exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn weighted_degree(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &e)| (i as u64 + 1) * e as u64)
            .sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Every monomial of weighted degree `d` in `nvars` variables, in
    /// canonical order.
    pub fn all_of_degree(nvars: usize, d: u64) -> Vec<Monomial> {
        fn fill(i: usize, left: u64, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i == 0 {
                if left == 0 {
                    out.push(Monomial(cur.clone()));
                }
                return;
            }
            let w = i as u64;
            for e in 0..=left / w {
                cur[i - 1] = e as u32;
                fill(i - 1, left - e * w, cur, out);
            }
            cur[i - 1] = 0;
        }
        let mut out = Vec::new();
        if nvars > 0 || d == 0 {
            fill(nvars, d, &mut vec![0; nvars], &mut out);
        }
        out.sort();
        out
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weighted_degree()
            .cmp(&other.weighted_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "X{}", i + 1)?;
            } else {
                write!(f, "X{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

/// Homogeneity state of a polynomial under the weighting `deg(Xi) = i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightedDegree {
    /// The zero polynomial; homogeneous of every degree.
    NegInfinity,
    Homogeneous(u64),
    Mixed,
}

impl WeightedDegree {
    /// True if a polynomial with this state may stand in a slot of degree `d`.
    pub fn admits(self, d: u64) -> bool {
        match self {
            WeightedDegree::NegInfinity => true,
            WeightedDegree::Homogeneous(e) => e == d,
            WeightedDegree::Mixed => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightedPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl WeightedPoly {
    pub fn zero(nvars: usize) -> Self {
        WeightedPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(nvars, Monomial::one(nvars), c)
    }

    /// The variable `Xi`, `1 <= i <= nvars`.
    pub fn variable(nvars: usize, i: usize) -> Result<Self> {
        if i == 0 || i > nvars {
            return Err(Error::VariableIndex { index: i, nvars });
        }
        let mut e = vec![0; nvars];
        e[i - 1] = 1;
        Ok(Self::monomial(nvars, Monomial(e), Rational::one()))
    }

    pub fn monomial(nvars: usize, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.nvars(), nvars, "monomial length must equal nvars");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        WeightedPoly { nvars, terms }
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging repeats.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = WeightedPoly::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "monomial length must equal nvars");
            p.add_term(Monomial(e), c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order: descending weighted degree, then descending
    /// lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> Rational {
        self.terms
            .get(&Monomial(exponents.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Constant term, if the polynomial has no other terms.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_dims(&self, other: &WeightedPoly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::Dimension {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &WeightedPoly) -> Result<WeightedPoly> {
        self.check_dims(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &WeightedPoly) -> Result<WeightedPoly> {
        self.check_dims(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &WeightedPoly) -> Result<WeightedPoly> {
        self.check_dims(other)?;
        let mut out = WeightedPoly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> WeightedPoly {
        if c.is_zero() {
            return WeightedPoly::zero(self.nvars);
        }
        WeightedPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> WeightedPoly {
        let mut result = WeightedPoly::one(self.nvars);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Formal partial derivative with respect to `Xi`, `1 <= i <= nvars`.
    pub fn partial_derivative(&self, i: usize) -> Result<WeightedPoly> {
        if i == 0 || i > self.nvars {
            return Err(Error::VariableIndex {
                index: i,
                nvars: self.nvars,
            });
        }
        let mut out = WeightedPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i - 1];
            if e == 0 {
                continue;
            }
            let mut lowered = m.0.clone();
            lowered[i - 1] -= 1;
            out.add_term(
                Monomial(lowered),
                c * Rational::from_integer(BigInt::from(e)),
            );
        }
        Ok(out)
    }

    pub fn weighted_degree(&self) -> WeightedDegree {
        let mut degrees = self.terms.keys().map(Monomial::weighted_degree);
        match degrees.next() {
            None => WeightedDegree::NegInfinity,
            Some(d) => {
                if degrees.all(|e| e == d) {
                    WeightedDegree::Homogeneous(d)
                } else {
                    WeightedDegree::Mixed
                }
            }
        }
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        use num_integer::Integer;
        self.terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Evaluates the polynomial at `values[i] = Xi` in any commutative ring,
    /// lifting coefficients through `lift`.
    pub fn evaluate<T, F>(&self, values: &[T], one: &T, lift: F) -> T
    where
        T: Clone + Add<Output = T> + Mul<Output = T>,
        F: Fn(&Rational) -> T,
    {
        assert_eq!(values.len(), self.nvars, "wrong number of values");
        let mut max_exp = vec![0u32; self.nvars];
        for m in self.terms.keys() {
            for (slot, &e) in max_exp.iter_mut().zip(&m.0) {
                *slot = (*slot).max(e);
            }
        }
        let powers: Vec<Vec<T>> = values
            .iter()
            .zip(&max_exp)
            .map(|(v, &top)| {
                let mut row = Vec::with_capacity(top as usize + 1);
                row.push(one.clone());
                for e in 1..=top as usize {
                    let next = row[e - 1].clone() * v.clone();
                    row.push(next);
                }
                row
            })
            .collect();
        let mut acc: Option<T> = None;
        for (m, c) in &self.terms {
            let mut term = lift(c);
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = term * powers[i][e as usize].clone();
                }
            }
            acc = Some(match acc {
                None => term,
                Some(a) => a + term,
            });
        }
        acc.unwrap_or_else(|| lift(&Rational::zero()))
    }
}

impl Add for &WeightedPoly {
    type Output = WeightedPoly;
    fn add(self, rhs: &WeightedPoly) -> WeightedPoly {
        self.try_add(rhs).expect("polynomial dimension mismatch")
    }
}

impl Sub for &WeightedPoly {
    type Output = WeightedPoly;
    fn sub(self, rhs: &WeightedPoly) -> WeightedPoly {
        self.try_sub(rhs).expect("polynomial dimension mismatch")
    }
}

impl Mul for &WeightedPoly {
    type Output = WeightedPoly;
    fn mul(self, rhs: &WeightedPoly) -> WeightedPoly {
        self.try_mul(rhs).expect("polynomial dimension mismatch")
    }
}

impl Neg for &WeightedPoly {
    type Output = WeightedPoly;
    fn neg(self) -> WeightedPoly {
        WeightedPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for WeightedPoly {
    type Output = WeightedPoly;
    fn neg(self) -> WeightedPoly {
        -&self
    }
}

/// Canonical text form, e.g. `X1^2*X2 - 3*X2^2 + 1/3`.
impl fmt::Display for WeightedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let magnitude = c.abs();
            if m.is_one() {
                write!(f, "{}", magnitude)?;
            } else if magnitude.is_one() {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{}*{}", magnitude, m)?;
            }
        }
        Ok(())
    }
}

/// Exact determinant of a square matrix of polynomials.
///
/// Laplace expansion along successive rows, memoised over column subsets,
/// so the cost is `O(2^n * n)` polynomial products.
pub fn det_poly_matrix(m: &[Vec<WeightedPoly>]) -> Result<WeightedPoly> {
    let n = m.len();
    for (row, entries) in m.iter().enumerate() {
        if entries.len() != n {
            return Err(Error::Shape {
                rows: n,
                row,
                cols: entries.len(),
            });
        }
    }
    if n == 0 {
        return Err(Error::Shape {
            rows: 0,
            row: 0,
            cols: 0,
        });
    }
    let nvars = m[0][0].nvars();
    for entry in m.iter().flatten() {
        if entry.nvars() != nvars {
            return Err(Error::Dimension {
                left: nvars,
                right: entry.nvars(),
            });
        }
    }
    assert!(n < usize::BITS as usize, "matrix too large");

    // minors[mask] = det(rows 0..popcount(mask), columns in mask)
    let full = 1usize << n;
    let mut minors: Vec<Option<WeightedPoly>> = vec![None; full];
    minors[0] = Some(WeightedPoly::one(nvars));
    let mut masks: Vec<usize> = (1..full).collect();
    masks.sort_by_key(|mask| mask.count_ones());
    for mask in masks {
        let row = mask.count_ones() as usize - 1;
        let mut acc = WeightedPoly::zero(nvars);
        for (col, entry) in m[row].iter().enumerate() {
            if mask & (1 << col) == 0 || entry.is_zero() {
                continue;
            }
            let rest = mask & !(1 << col);
            let minor = minors[rest]
                .as_ref()
                .expect("smaller minors computed first");
            if minor.is_zero() {
                continue;
            }
            let term = entry * minor;
            let above = (mask >> (col + 1)).count_ones();
            acc = if above % 2 == 0 {
                &acc + &term
            } else {
                &acc - &term
            };
        }
        minors[mask] = Some(acc);
    }
    Ok(minors[full - 1].take().unwrap())
}
