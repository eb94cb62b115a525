//! Matrices over `R[x]` with `x` central, and the span `P(M)` of all
//! coefficients of all entries.

use std::collections::BTreeMap;


use super::grading::{s_degree, SDegree};
use super::monomial::Monomial;
use super::poly::FreePoly;
use super::scalar::Scalar;
use super::EngelError;

pub const MAX_MATRIX_DIM: usize = 4;
pub const MAX_POWER: usize = 6;

/// `Σ coeffs[i] x^i` with `x` central.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XPoly<C> {
    coeffs: BTreeMap<usize, FreePoly<C>>,
}

impl<C: Scalar> XPoly<C> {
    pub fn zero() -> Self {
        XPoly { coeffs: BTreeMap::new() }
    }

    pub fn constant(p: FreePoly<C>) -> Self {
        Self::monomial(p, 0)
    }

    /// `p · x^k`.
    pub fn monomial(p: FreePoly<C>, k: usize) -> Self {
        let mut coeffs = BTreeMap::new();
        if !p.is_zero() {
            coeffs.insert(k, p);
        }
        XPoly { coeffs }
    }

    pub fn from_coeffs(coeffs: impl IntoIterator<Item = (usize, FreePoly<C>)>) -> Self {
        coeffs.into_iter().fold(Self::zero(), |acc, (k, p)| acc.add(&Self::monomial(p, k)))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (usize, &FreePoly<C>)> {
        self.coeffs.iter().map(|(k, p)| (*k, p))
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut coeffs = self.coeffs.clone();
        for (k, p) in &o.coeffs {
            let sum = coeffs.get(k).map_or_else(|| p.clone(), |q| q + p);
            if sum.is_zero() {
                coeffs.remove(k);
            } else {
                coeffs.insert(*k, sum);
            }
        }
        XPoly { coeffs }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (i, p) in &self.coeffs {
            for (j, q) in &o.coeffs {
                out = out.add(&Self::monomial(p * q, i + j));
            }
        }
        out
    }
}

/// A square matrix of [`XPoly`] entries, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix<C> {
    dim: usize,
    entries: Vec<XPoly<C>>,
}

impl<C: Scalar> PolyMatrix<C> {
    pub fn new(dim: usize, entries: Vec<XPoly<C>>) -> Result<Self, EngelError> {
        if dim == 0 || dim > MAX_MATRIX_DIM {
            return Err(EngelError::TooLarge { what: "matrix dimension", n: dim, bound: MAX_MATRIX_DIM });
        }
        if entries.len() != dim * dim {
            return Err(EngelError::MalformedEntries(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                entries.len()
            )));
        }
        Ok(PolyMatrix { dim, entries })
    }

    pub fn identity(dim: usize) -> Result<Self, EngelError> {
        let entries = (0..dim * dim)
            .map(|k| if k / dim == k % dim { XPoly::constant(FreePoly::one()) } else { XPoly::zero() })
            .collect();
        Self::new(dim, entries)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> &XPoly<C> {
        &self.entries[i * self.dim + j]
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.dim;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut e = XPoly::zero();
                for k in 0..n {
                    e = e.add(&self.entry(i, k).mul(o.entry(k, j)));
                }
                entries.push(e);
            }
        }
        PolyMatrix { dim: n, entries }
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::identity(self.dim).expect("dimension already checked"), |acc, _| acc.mul(self))
    }

    /// Checks that every coefficient of every entry lies in `F·S^m`.
    pub fn check_s_entries(&self, m: usize) -> Result<(), EngelError> {
        let want = SDegree { degree: m, trailing_a: false };
        for (idx, e) in self.entries.iter().enumerate() {
            for (k, p) in e.coeffs() {
                if let Some(bad) = p.monomials().find(|mono| s_degree(*mono) != Some(want)) {
                    return Err(EngelError::MalformedEntries(format!(
                        "entry ({}, {}) has monomial {bad} at x^{k}, outside S^{m}",
                        idx / self.dim,
                        idx % self.dim
                    )));
                }
            }
        }
        Ok(())
    }
}

/// A basis of a span of polynomials in echelon form: each basis element has
/// leading (smallest) monomial coefficient 1 and the leading monomials differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffSpace<C> {
    rows: BTreeMap<Monomial, FreePoly<C>>,
    dim: usize,
}

impl<C: Scalar> CoeffSpace<C> {
    pub fn new(dim: usize) -> Self {
        CoeffSpace { rows: BTreeMap::new(), dim }
    }

    pub fn from_spanning(dim: usize, spanning: impl IntoIterator<Item = FreePoly<C>>) -> Self {
        let mut s = Self::new(dim);
        for p in spanning {
            s.insert(p);
        }
        s
    }

    /// Dimension of the source matrix.
    pub fn matrix_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> impl Iterator<Item = &FreePoly<C>> {
        self.rows.values()
    }

    /// Cancels every term whose monomial is a pivot. Processing in
    /// increasing order is enough: a row only has terms above its pivot.
    fn reduce(&self, p: &FreePoly<C>) -> FreePoly<C> {
        let mut v = p.clone();
        let mut floor: Option<Monomial> = None;
        loop {
            let next = v
                .terms()
                .find(|(m, _)| floor.is_none_or(|f| *m > f) && self.rows.contains_key(m))
                .map(|(m, c)| (m, c.clone()));
            let Some((m, c)) = next else { return v };
            v = &v - &self.rows[&m].scale(&c);
            floor = Some(m);
        }
    }

    /// Adds `p` to the span; returns whether the rank grew.
    pub fn insert(&mut self, p: FreePoly<C>) -> bool {
        let r = self.reduce(&p);
        let Some((lead, c)) = r.terms().next().map(|(m, c)| (m, c.clone())) else {
            return false;
        };
        self.rows.insert(lead, r.scale(&(C::one() / c)));
        true
    }

    pub fn contains(&self, p: &FreePoly<C>) -> bool {
        self.reduce(p).is_zero()
    }
}

/// `P(M^k)`.
pub fn coeff_space<C: Scalar>(m: &PolyMatrix<C>, k: usize) -> Result<CoeffSpace<C>, EngelError> {
    if k > MAX_POWER {
        return Err(EngelError::TooLarge { what: "matrix power", n: k, bound: MAX_POWER });
    }
    let power = m.pow(k);
    let spanning = power.entries.iter().flat_map(|e| e.coeffs().map(|(_, p)| p.clone()).collect::<Vec<_>>());
    Ok(CoeffSpace::from_spanning(m.dim(), spanning))
}

/// Outcome of one instance of the subword property for `r = r₁ r₂ r₃`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PodslowaOutcome {
    /// `r ∈ P(M^{n₁+n₂+n₃})`.
    pub hypothesis: bool,
    /// `rᵢ ∈ P(M^{nᵢ})`, only computed when the hypothesis holds.
    pub conclusions: Option<[bool; 3]>,
}

impl PodslowaOutcome {
    pub fn holds(&self) -> bool {
        self.conclusions.is_none_or(|c| c.iter().all(|&x| x))
    }
}

/// Each `factors[i]` is a list of elements of `F·S^m`; `rᵢ` is their product
/// and `nᵢ` its length.
pub fn podslowa_check<C: Scalar>(
    m: &PolyMatrix<C>,
    s_power: usize,
    factors: &[Vec<FreePoly<C>>; 3],
) -> Result<PodslowaOutcome, EngelError> {
    m.check_s_entries(s_power)?;
    let want = SDegree { degree: s_power, trailing_a: false };
    for c in factors.iter().flatten() {
        if c.is_zero() || c.monomials().any(|mono| s_degree(mono) != Some(want)) {
            return Err(EngelError::MalformedEntries(format!("factor {c} is not a nonzero element of S^{s_power}")));
        }
    }
    let r_parts: Vec<FreePoly<C>> =
        factors.iter().map(|f| f.iter().fold(FreePoly::one(), |acc, c| &acc * c)).collect();
    let r = r_parts.iter().fold(FreePoly::one(), |acc, x| &acc * x);
    let total: usize = factors.iter().map(Vec::len).sum();
    if !coeff_space(m, total)?.contains(&r) {
        return Ok(PodslowaOutcome { hypothesis: false, conclusions: None });
    }
    let mut conclusions = [false; 3];
    for (i, part) in r_parts.iter().enumerate() {
        conclusions[i] = coeff_space(m, factors[i].len())?.contains(part);
    }
    Ok(PodslowaOutcome { hypothesis: true, conclusions: Some(conclusions) })
}
