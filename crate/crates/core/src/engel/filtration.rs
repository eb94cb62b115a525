//! The filtration `T(j)`: span of monomials with at most `j` positions where
//! the letter changes.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;

use super::elements::{compute_w, compute_wbar, Z_BOUND};
use super::monomial::Monomial;
use super::poly::FreePoly;
use super::scalar::Scalar;
use super::EngelError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TMembership {
    pub holds: bool,
    /// A monomial of maximal alternation count, with that count.
    pub worst: Option<(Monomial, usize)>,
}

/// Whether every monomial of `poly` has at most `j` alternations.
pub fn t_membership<C: Scalar>(poly: &FreePoly<C>, j: usize) -> Result<TMembership, EngelError> {
    if !poly.constant_term().is_zero() {
        return Err(EngelError::HasConstant);
    }
    let mut worst: Option<(Monomial, usize)> = None;
    for m in poly.monomials() {
        let alt = m.alternations();
        if worst.is_none_or(|(_, w)| alt > w) {
            worst = Some((m, alt));
        }
    }
    Ok(TMembership { holds: worst.is_none_or(|(_, w)| w <= j), worst })
}

/// The terms with at least `min` alternations.
pub fn alternation_part<C: Scalar>(poly: &FreePoly<C>, min: usize) -> FreePoly<C> {
    poly.filter(|m| m.alternations() >= min)
}

/// `alternation_part(p * q, min)` without forming the full product.
///
/// A product `uv` of monomials has at most `alt(u) + alt(v) + 1`
/// alternations, so only pairs reaching `min` under that bound are visited.
pub fn mul_high_alternation<C: Scalar>(p: &FreePoly<C>, q: &FreePoly<C>, min: usize) -> FreePoly<C> {
    let mut by_alt: BTreeMap<usize, Vec<(Monomial, &C)>> = BTreeMap::new();
    for (m, c) in q.terms() {
        by_alt.entry(m.alternations()).or_default().push((m, c));
    }
    let mut acc: HashMap<Monomial, C> = HashMap::new();
    for (mp, cp) in p.terms() {
        let need = min.saturating_sub(mp.alternations() + 1);
        for (_, bucket) in by_alt.range(need..) {
            for (mq, cq) in bucket {
                let Some(m) = mp.mul(*mq) else { continue };
                if m.alternations() < min {
                    continue;
                }
                let v = cp.clone() * (*cq).clone();
                let slot = acc.entry(m).or_insert_with(C::zero);
                *slot = slot.clone() + v;
            }
        }
    }
    FreePoly::from_terms(acc)
}

/// How a `z_n` certificate was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateMethod {
    /// `z_n` was expanded in full.
    Full,
    /// Only the terms of `z_n` with more than `2^n - 3` alternations were
    /// computed, from the last factor of `z_n = z_{n-1} (1+b) z_{n-1}⁻¹`.
    HighAlternation,
}

/// Outcome of checking `z_n - w_n - 1 ∈ T(2^n - 3)` (or the same for the
/// inverses with `w̄_n`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZwCertificate {
    pub n: usize,
    pub inverse: bool,
    pub bound: usize,
    pub method: CertificateMethod,
    pub membership: TMembership,
    /// Terms of `z_n` (or its inverse) that were computed.
    pub terms_computed: usize,
}

/// Largest `n` the certificate handles.
pub const CERTIFICATE_BOUND: usize = Z_BOUND + 1;

/// Checks `z_n - w_n - 1 ∈ T(2^n - 3)`, or with `inverse` set
/// `z_n⁻¹ - w̄_n - 1 ∈ T(2^n - 3)`.
pub fn z_w_certificate(n: usize, inverse: bool) -> Result<ZwCertificate, EngelError> {
    type Q = FreePoly<BigRational>;
    if n < 2 {
        return Err(EngelError::IndexTooSmall { what: "z", n, min: 2 });
    }
    if n > CERTIFICATE_BOUND {
        return Err(EngelError::TooLarge { what: "z", n, bound: CERTIFICATE_BOUND });
    }
    let bound = (1usize << n) - 3;
    let w: Q = if inverse { compute_wbar(n)? } else { compute_w(n)? };
    let (z, method): (Q, _) = if n <= Z_BOUND {
        let z = if inverse { super::compute_z_inverse(n)? } else { super::compute_z(n)? };
        (z, CertificateMethod::Full)
    } else {
        let prev = super::compute_z::<BigRational>(n - 1)?;
        let prev_inv = super::compute_z_inverse::<BigRational>(n - 1)?;
        let b = Q::b();
        let middle = if inverse { &(&Q::one() - &b) + &(&b * &b) } else { &Q::one() + &b };
        let left = &prev * &middle;
        (mul_high_alternation(&left, &prev_inv, bound + 1), CertificateMethod::HighAlternation)
    };
    let terms_computed = z.len();
    let diff = match method {
        CertificateMethod::Full => &(&z - &w) - &Q::one(),
        // the constant 1 has no alternations, so it never reaches this part
        CertificateMethod::HighAlternation => &z - &alternation_part(&w, bound + 1),
    };
    let membership = t_membership(&diff, bound)?;
    Ok(ZwCertificate { n, inverse, bound, method, membership, terms_computed })
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = FreePoly<BigRational>;

    fn p(s: &str) -> Q {
        Q::parse_dump(s).unwrap()
    }

    #[test]
    fn membership_examples() {
        assert!(t_membership(&p("1 b\n1 ab\n-1 ba\n"), 1).unwrap().holds);
        let aba = p("1 aba\n");
        let r = t_membership(&aba, 1).unwrap();
        assert!(!r.holds);
        assert_eq!(r.worst.unwrap().1, 2);
        assert!(t_membership(&aba, 2).unwrap().holds);
        assert_eq!(t_membership(&p("1 1\n"), 3), Err(EngelError::HasConstant));
        assert!(t_membership(&Q::zero(), 0).unwrap().holds);
    }

    #[test]
    fn high_part_matches_full_product() {
        let x: Q = super::super::compute_z(3).unwrap();
        let y: Q = super::super::compute_z_inverse(3).unwrap();
        let full = &x * &y;
        let prod = &x * &x;
        for min in [0, 3, 5, 8] {
            assert_eq!(mul_high_alternation(&x, &y, min), alternation_part(&full, min));
            assert_eq!(mul_high_alternation(&x, &x, min), alternation_part(&prod, min));
        }
    }

    #[test]
    fn small_certificates() {
        for n in 2..=4 {
            for inverse in [false, true] {
                let c = z_w_certificate(n, inverse).unwrap();
                assert!(c.membership.holds, "{c:?}");
                assert_eq!(c.method, CertificateMethod::Full);
            }
        }
        assert!(z_w_certificate(1, false).is_err());
        assert!(z_w_certificate(7, false).is_err());
    }
}
