//! Sparse multivariate polynomials with real coefficients and exact
//! symbolic differentiation.

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// One monomial `coeff * prod x_k^exps[k]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    /// Coefficient.
    pub coeff: f64,
    /// Exponent per variable.
    pub exps: Vec<u32>,
}

/// A polynomial in a fixed number of variables, stored as a list of terms.
///
/// Terms are kept normalised: sorted by exponent vector, like terms merged
/// and zero coefficients dropped, so structural equality is polynomial
/// equality.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly {
    nvars: usize,
    terms: Vec<Term>,
}

#[inline]
fn ipow(x: f64, e: u32) -> f64 {
    let mut acc = 1.0;
    let mut base = x;
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc *= base;
        }
        base *= base;
        e >>= 1;
    }
    acc
}

impl Poly {
    /// The zero polynomial.
    pub fn zero(nvars: usize) -> Poly {
        Poly { nvars, terms: Vec::new() }
    }

    /// Builds a polynomial from `(coeff, exponents)` pairs.
    pub fn new(nvars: usize, terms: Vec<(f64, Vec<u32>)>) -> Result<Poly> {
        let mut out = Vec::with_capacity(terms.len());
        for (coeff, exps) in terms {
            if exps.len() != nvars {
                return Err(Error::InvalidCoupling(alloc::format!(
                    "term has {} exponents, polynomial has {} variables",
                    exps.len(),
                    nvars
                )));
            }
            if !coeff.is_finite() {
                return Err(Error::InvalidCoupling("non-finite coefficient".into()));
            }
            out.push(Term { coeff, exps });
        }
        Ok(Poly::normalised(nvars, out))
    }

    fn normalised(nvars: usize, mut terms: Vec<Term>) -> Poly {
        terms.sort_by(|a, b| a.exps.cmp(&b.exps));
        let mut merged: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match merged.last_mut() {
                Some(last) if last.exps == t.exps => last.coeff += t.coeff,
                _ => merged.push(t),
            }
        }
        merged.retain(|t| t.coeff != 0.0);
        Poly { nvars, terms: merged }
    }

    /// Number of variables.
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Normalised terms.
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Whether every coefficient is zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree (0 for the zero polynomial).
    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|t| t.exps.iter().sum::<u32>()).max().unwrap_or(0)
    }

    /// Evaluates at `x` (`x.len() == nvars`).
    pub fn eval(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.nvars);
        self.terms
            .iter()
            .map(|t| {
                t.exps
                    .iter()
                    .zip(x)
                    .fold(t.coeff, |acc, (&e, &xi)| if e == 0 { acc } else { acc * ipow(xi, e) })
            })
            .sum()
    }

    /// Partial derivative with respect to variable `var`.
    pub fn derivative(&self, var: usize) -> Poly {
        let terms = self
            .terms
            .iter()
            .filter(|t| t.exps[var] > 0)
            .map(|t| {
                let mut exps = t.exps.clone();
                let e = exps[var];
                exps[var] -= 1;
                Term { coeff: t.coeff * f64::from(e), exps }
            })
            .collect();
        Poly::normalised(self.nvars, terms)
    }

    /// All first partial derivatives.
    pub fn gradient(&self) -> Vec<Poly> {
        (0..self.nvars).map(|v| self.derivative(v)).collect()
    }

    /// Substitutes variables: the result `r` satisfies
    /// `r(x) = self(y)` with `y[k] = x[perm[k]]`.
    pub fn permute(&self, perm: &[usize]) -> Poly {
        debug_assert_eq!(perm.len(), self.nvars);
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let mut exps = vec![0u32; self.nvars];
                for (k, &e) in t.exps.iter().enumerate() {
                    exps[perm[k]] += e;
                }
                Term { coeff: t.coeff, exps }
            })
            .collect();
        Poly::normalised(self.nvars, terms)
    }

    /// Sum of two polynomials in the same variables.
    pub fn add(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.nvars, other.nvars);
        let terms = self.terms.iter().chain(&other.terms).cloned().collect();
        Poly::normalised(self.nvars, terms)
    }

    /// Multiplies every coefficient by `s`.
    pub fn scale(&self, s: f64) -> Poly {
        let terms = self
            .terms
            .iter()
            .map(|t| Term { coeff: t.coeff * s, exps: t.exps.clone() })
            .collect();
        Poly::normalised(self.nvars, terms)
    }
}
