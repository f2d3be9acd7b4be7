//! Polynomials in the chern roots `q1..qr` and conversion between symmetric
//! polynomials in the roots and polynomials in `Xi = e_i(q)`.

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Monomial, Rational, WeightedPoly};

/// Dense-exponent polynomial in `r` chern roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct RootPoly {
    nroots: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl RootPoly {
    pub fn zero(nroots: usize) -> Self {
        RootPoly {
            nroots,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nroots: usize) -> Self {
        Self::constant(nroots, Rational::one())
    }

    pub fn constant(nroots: usize, c: Rational) -> Self {
        let mut p = Self::zero(nroots);
        p.add_term(vec![0; nroots], c);
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    #[cfg(test)]
    pub fn coefficient(&self, exponents: &[u32]) -> Rational {
        self.terms
            .get(exponents)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        debug_assert_eq!(e.len(), self.nroots);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
        }
    }

    fn add_scaled(&mut self, other: &RootPoly, c: &Rational) {
        for (e, v) in &other.terms {
            self.add_term(e.clone(), v * c);
        }
    }

    /// Elementary symmetric polynomial `e_i(q1..qr)`.
    pub fn elementary(nroots: usize, i: usize) -> Self {
        let mut p = Self::zero(nroots);
        if i > nroots {
            return p;
        }
        for subset in subsets(nroots, i) {
            let mut e = vec![0; nroots];
            for j in subset {
                e[j] = 1;
            }
            p.add_term(e, Rational::one());
        }
        p
    }

    /// Monomial symmetric polynomial `m_λ` for a partition padded to `nroots` parts.
    pub fn monomial_symmetric(nroots: usize, parts: &[u32]) -> Self {
        let mut exps: Vec<u32> = parts.to_vec();
        exps.resize(nroots, 0);
        exps.sort_unstable();
        let mut p = Self::zero(nroots);
        loop {
            p.add_term(exps.clone(), Rational::one());
            if !next_permutation(&mut exps) {
                break;
            }
        }
        p
    }

    /// Vandermonde product `∏_{i<j} (q_i - q_j)`.
    pub fn vandermonde(nroots: usize) -> Self {
        let mut acc = Self::one(nroots);
        for i in 0..nroots {
            for j in i + 1..nroots {
                let mut f = Self::zero(nroots);
                let mut ei = vec![0; nroots];
                ei[i] = 1;
                let mut ej = vec![0; nroots];
                ej[j] = 1;
                f.add_term(ei, Rational::one());
                f.add_term(ej, -Rational::one());
                acc = &acc * &f;
            }
        }
        acc
    }

    /// Substitutes `Xi = e_i(q1..qr)` into a polynomial in `X1..Xr`.
    pub fn from_elementary(p: &WeightedPoly) -> Self {
        let r = p.nvars();
        let values: Vec<RootPoly> = (1..=r).map(|i| Self::elementary(r, i)).collect();
        p.evaluate(&values, &Self::one(r), |c| Self::constant(r, c.clone()))
    }

    /// Rewrites a symmetric polynomial in the roots as a polynomial in `Xi = e_i`.
    pub fn to_elementary(&self) -> Result<WeightedPoly> {
        let r = self.nroots;
        let mut rest = self.clone();
        let mut out = WeightedPoly::zero(r);
        let mut cache = ElementaryPowers::new(r);
        while let Some((lead, c)) = rest.terms.iter().next_back() {
            let lead = lead.clone();
            let c = c.clone();
            if lead.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::NotSymmetric);
            }
            // lead = (a1 >= a2 >= ... >= ar) is matched by ∏ e_i^(a_i - a_{i+1})
            let steps: Vec<u32> = (0..r)
                .map(|i| lead[i] - lead.get(i + 1).copied().unwrap_or(0))
                .collect();
            let product = cache.product(&steps);
            rest.add_scaled(&product, &-c.clone());
            out = &out + &WeightedPoly::monomial(r, Monomial::new(steps), c);
        }
        Ok(out)
    }
}

impl Add for RootPoly {
    type Output = RootPoly;
    fn add(mut self, rhs: RootPoly) -> RootPoly {
        self.add_scaled(&rhs, &Rational::one());
        self
    }
}

impl Mul for &RootPoly {
    type Output = RootPoly;
    #[allow(clippy::suspicious_arithmetic_impl)] // exponents add
    fn mul(self, rhs: &RootPoly) -> RootPoly {
        let mut out = RootPoly::zero(self.nroots);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Mul for RootPoly {
    type Output = RootPoly;
    fn mul(self, rhs: RootPoly) -> RootPoly {
        &self * &rhs
    }
}

/// Memoised products `∏ e_i^{n_i}` in the roots.
struct ElementaryPowers {
    nroots: usize,
    // powers[i][n] = e_{i+1}^n
    powers: Vec<Vec<RootPoly>>,
}

impl ElementaryPowers {
    fn new(nroots: usize) -> Self {
        let powers = (1..=nroots)
            .map(|i| vec![RootPoly::one(nroots), RootPoly::elementary(nroots, i)])
            .collect();
        ElementaryPowers { nroots, powers }
    }

    fn power(&mut self, i: usize, n: usize) -> &RootPoly {
        while self.powers[i].len() <= n {
            let next = &self.powers[i][self.powers[i].len() - 1] * &self.powers[i][1];
            self.powers[i].push(next);
        }
        &self.powers[i][n]
    }

    fn product(&mut self, exps: &[u32]) -> RootPoly {
        let mut acc = RootPoly::one(self.nroots);
        for (i, &n) in exps.iter().enumerate() {
            if n > 0 {
                acc = &acc * self.power(i, n as usize);
            }
        }
        acc
    }
}

/// All `size`-element subsets of `0..n` in lexicographic order.
pub(crate) fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if size > n {
        return out;
    }
    let mut current: Vec<usize> = (0..size).collect();
    loop {
        out.push(current.clone());
        let mut i = size;
        while i > 0 && current[i - 1] == n - size + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        current[i - 1] += 1;
        for j in i..size {
            current[j] = current[j - 1] + 1;
        }
    }
}

fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
