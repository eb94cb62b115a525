//! Decomposition along products of `ab` and `ab²`.
//!
//! A monomial lies in `F·S^i` when it factors as `a b^{e_1} ⋯ a b^{e_i}`
//! with every `e_k ∈ {1, 2}`, and in `F·S^i·a` when such a product is
//! followed by one more `a`. The factorisation is unique when it exists.

use std::collections::BTreeMap;
use std::fmt;

use super::monomial::Monomial;
use super::poly::FreePoly;
use super::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SDegree {
    pub degree: usize,
    pub trailing_a: bool,
}

impl fmt::Display for SDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S^{}", self.degree)?;
        if self.trailing_a {
            f.write_str("·a")?;
        }
        Ok(())
    }
}

/// The S-degree of a monomial, `None` if it is not of that shape.
pub fn s_degree(m: Monomial) -> Option<SDegree> {
    let len = m.degree();
    let mut i = 0;
    let mut degree = 0;
    while i < len {
        if m.letter(i) {
            return None;
        }
        i += 1;
        if i == len {
            return Some(SDegree { degree, trailing_a: true });
        }
        let mut run = 0;
        while i < len && m.letter(i) {
            run += 1;
            i += 1;
        }
        if run == 0 {
            return None;
        }
        degree += 1;
    }
    (degree > 0).then_some(SDegree { degree, trailing_a: false })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SGrading<C> {
    pub components: BTreeMap<SDegree, FreePoly<C>>,
    /// Terms of no S-degree, the constant included.
    pub remainder: FreePoly<C>,
}

impl<C: Scalar> SGrading<C> {
    /// The degree, when the polynomial is a single nonzero component.
    pub fn pure_degree(&self) -> Option<SDegree> {
        match (self.components.len(), self.remainder.is_zero()) {
            (1, true) => self.components.keys().next().copied(),
            _ => None,
        }
    }

    pub fn resum(&self) -> FreePoly<C> {
        self.components.values().fold(self.remainder.clone(), |acc, c| &acc + c)
    }
}

pub fn s_grading<C: Scalar>(poly: &FreePoly<C>) -> SGrading<C> {
    let mut parts: BTreeMap<Option<SDegree>, Vec<(Monomial, C)>> = BTreeMap::new();
    for (m, c) in poly.terms() {
        parts.entry(s_degree(m)).or_default().push((m, c.clone()));
    }
    let remainder = FreePoly::from_terms(parts.remove(&None).unwrap_or_default());
    let components = parts.into_iter().map(|(d, t)| (d.expect("graded key"), FreePoly::from_terms(t))).collect();
    SGrading { components, remainder }
}
