//! Generated subbraces, induced subbraces and quotients.

use crate::brace::{validate, FiniteBrace};
use crate::error::{BraceError, Result};
use crate::series::{chain, SeriesKind};
use crate::subset::{span_from_mask, BraceSubset, Certification};

/// Restricts the operations to `members` (sorted, containing 0), relabelled
/// `0..members.len()` in increasing order. Fails if the set is not closed.
pub fn induced_subbrace(brace: &FiniteBrace, members: &[usize]) -> Result<FiniteBrace> {
    let mut index = vec![usize::MAX; brace.order()];
    for (i, &x) in members.iter().enumerate() {
        *index.get_mut(x).ok_or(BraceError::ElementOutOfRange(x))? = i;
    }
    if members.first() != Some(&0) {
        return Err(BraceError::MalformedTable("subbrace must contain 0 as its least element".into()));
    }
    let m = members.len();
    let mut add = vec![0; m * m];
    let mut mul = vec![0; m * m];
    for (i, &x) in members.iter().enumerate() {
        for (j, &y) in members.iter().enumerate() {
            let (s, p) = (index[brace.add(x, y)], index[brace.mul(x, y)]);
            if s == usize::MAX || p == usize::MAX {
                return Err(BraceError::Internal(format!("subset not closed at ({x}, {y})")));
            }
            add[i * m + j] = s;
            mul[i * m + j] = p;
        }
    }
    validate(m, &add, &mul, brace.chirality())
}

/// The additive span of all products of elements of `generators`, returned
/// with its embedding (`embedding[i]` is the parent element of index `i`).
pub fn generate_subbrace(brace: &FiniteBrace, generators: &[usize]) -> Result<(FiniteBrace, Vec<usize>)> {
    brace.require_left()?;
    if let Some(&x) = generators.iter().find(|&&x| x >= brace.order()) {
        return Err(BraceError::ElementOutOfRange(x));
    }
    if !chain(brace, SeriesKind::Bracket).vanishes() {
        return Err(BraceError::NotBracketNilpotent);
    }
    // closure of the generators under the multiplication
    let mut in_products = vec![false; brace.order()];
    let mut products: Vec<usize> = Vec::new();
    for &g in generators {
        if !in_products[g] {
            in_products[g] = true;
            products.push(g);
        }
    }
    let mut k = 0;
    while k < products.len() {
        let x = products[k];
        for i in 0..=k {
            let y = products[i];
            for z in [brace.mul(x, y), brace.mul(y, x)] {
                if !in_products[z] {
                    in_products[z] = true;
                    products.push(z);
                }
            }
        }
        k += 1;
    }
    let span = span_from_mask(brace, products);
    let sub = induced_subbrace(brace, span.members())?;
    Ok((sub, span.members().to_vec()))
}

/// `A / I` with classes numbered by their least representative, plus the
/// projection `element → class`.
pub fn quotient(brace: &FiniteBrace, ideal: &BraceSubset<'_>) -> Result<(FiniteBrace, Vec<usize>)> {
    if !(std::ptr::eq(ideal.parent(), brace) || ideal.parent() == brace) {
        return Err(BraceError::DifferentParents);
    }
    if ideal.certification() != Certification::Ideal {
        ideal.clone().certify_ideal()?;
    }
    let n = brace.order();
    let mut class = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if class[x] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(x);
        for &i in ideal.members() {
            class[brace.add(x, i)] = c;
        }
    }
    let m = reps.len();
    let mut add = vec![usize::MAX; m * m];
    let mut mul = vec![usize::MAX; m * m];
    for x in 0..n {
        for y in 0..n {
            let cell = class[x] * m + class[y];
            for (table, value) in [(&mut add, class[brace.add(x, y)]), (&mut mul, class[brace.mul(x, y)])] {
                if table[cell] == usize::MAX {
                    table[cell] = value;
                } else if table[cell] != value {
                    return Err(BraceError::InducedMapIllDefined(class[x]));
                }
            }
        }
    }
    let q = validate(m, &add, &mul, brace.chirality())?;
    Ok((q, class))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::tests::even_residues_mod_16;
    use crate::iso::is_isomorphic;

    #[test]
    fn trivial_generators() {
        let b = even_residues_mod_16();
        let (sub, emb) = generate_subbrace(&b, &[0]).unwrap();
        assert_eq!(sub.order(), 1);
        assert_eq!(emb, vec![0]);
        let all: Vec<usize> = b.elements().collect();
        let (whole, emb) = generate_subbrace(&b, &all).unwrap();
        assert_eq!(whole, b);
        assert_eq!(emb, all);
    }

    #[test]
    fn single_generator_order_divides() {
        let b = even_residues_mod_16();
        for g in b.elements() {
            let (sub, emb) = generate_subbrace(&b, &[g]).unwrap();
            assert_eq!(b.order() % sub.order(), 0);
            for (i, &x) in emb.iter().enumerate() {
                for (j, &y) in emb.iter().enumerate() {
                    assert_eq!(emb[sub.mul(i, j)], b.mul(x, y));
                }
            }
        }
    }

    #[test]
    fn quotient_extremes() {
        let b = even_residues_mod_16();
        let (q0, proj) = quotient(&b, &BraceSubset::zero(&b)).unwrap();
        assert!(is_isomorphic(&q0, &b).is_some());
        assert_eq!(proj, (0..8).collect::<Vec<_>>());
        let (q1, _) = quotient(&b, &BraceSubset::whole(&b)).unwrap();
        assert_eq!(q1.order(), 1);
    }

    #[test]
    fn projection_is_a_homomorphism() {
        let b = even_residues_mod_16();
        let ideal = BraceSubset::additive_span(&b, &[4]).unwrap();
        let (q, proj) = quotient(&b, &ideal).unwrap();
        assert_eq!(q.order(), 4);
        for x in b.elements() {
            for y in b.elements() {
                assert_eq!(proj[b.add(x, y)], q.add(proj[x], proj[y]));
                assert_eq!(proj[b.mul(x, y)], q.mul(proj[x], proj[y]));
            }
        }
    }

    #[test]
    fn non_ideal_rejected() {
        let b = even_residues_mod_16();
        let raw = BraceSubset::raw(&b, &[1]).unwrap();
        assert!(matches!(quotient(&b, &raw), Err(BraceError::NotAnIdeal(_))));
    }
}
