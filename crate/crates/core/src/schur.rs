//! Classical Schubert calculus through the Schur basis.
//!
//! A polynomial in the special classes `Xi = e_i(q)` is expanded in Schur
//! polynomials `s_λ(q1..qr)` by the bialternant method: after multiplying by
//! the Vandermonde alternant `a_δ`, the coefficient of `s_λ` is the
//! coefficient of the strictly decreasing monomial `q^{λ+δ}`. The integral
//! over `G(r, k)` is the coefficient of the full box `((k-r)^r)`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{Rational, WeightedDegree, WeightedPoly};
use crate::presentation::GrassmannSpec;
use crate::symmetric::RootPoly;

/// Weakly decreasing sequence of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Sorts the parts into weakly decreasing order and drops zeros.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    /// The `rows × cols` rectangle `(cols^rows)`.
    pub fn rectangle(rows: usize, cols: u32) -> Self {
        Self::new(vec![cols; rows])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u64 {
        self.0.iter().map(|&p| p as u64).sum()
    }

    pub fn fits_box(&self, rows: usize, cols: u32) -> bool {
        self.0.len() <= rows && self.0.first().is_none_or(|&p| p <= cols)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchurExpansion {
    coefficients: BTreeMap<Partition, Rational>,
    num_vars: usize,
}

impl SchurExpansion {
    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn coefficient(&self, lambda: &Partition) -> Rational {
        self.coefficients
            .get(lambda)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &Rational)> {
        self.coefficients.iter()
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }
}

/// Expands `p(e_1(q), ..., e_r(q))` in the Schur basis of `r` variables.
pub fn schur_expand(p: &WeightedPoly, spec: &GrassmannSpec) -> Result<SchurExpansion> {
    let r = spec.r();
    if p.nvars() != r {
        return Err(Error::Dimension {
            left: r,
            right: p.nvars(),
        });
    }
    if p.weighted_degree() == WeightedDegree::Mixed {
        return Err(Error::NotHomogeneous);
    }
    let alternant = &RootPoly::from_elementary(p) * &RootPoly::vandermonde(r);
    let mut coefficients = BTreeMap::new();
    for (exps, c) in alternant.terms() {
        if exps.windows(2).all(|w| w[0] > w[1]) {
            // λ_i = a_i - (r - 1 - i)
            let parts = exps
                .iter()
                .enumerate()
                .map(|(i, &a)| a - (r - 1 - i) as u32)
                .collect();
            coefficients.insert(Partition::new(parts), c.clone());
        }
    }
    Ok(SchurExpansion {
        coefficients,
        num_vars: r,
    })
}

/// `∫_G p(c_1(S*), ..., c_r(S*))` as the full-box Schur coefficient.
pub fn classical_integral_schur(p: &WeightedPoly, spec: &GrassmannSpec) -> Result<Rational> {
    let dim = spec.dimension() as u64;
    match p.weighted_degree() {
        WeightedDegree::Mixed => return Err(Error::NotHomogeneous),
        WeightedDegree::Homogeneous(d) if d != dim => {
            return Err(Error::Degree {
                expected: dim as i64,
                found: d as i64,
            })
        }
        _ => {}
    }
    let expansion = schur_expand(p, spec)?;
    let full_box = Partition::rectangle(spec.r(), (spec.k() - spec.r()) as u32);
    Ok(expansion.coefficient(&full_box))
}
