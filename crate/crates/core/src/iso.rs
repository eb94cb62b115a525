//! Isomorphism testing and canonical forms.

use std::ops::ControlFlow;

use sha2::{Digest, Sha256};

use crate::abelian::{AbelianType, StdAbelian};
use crate::brace::{Chirality, FiniteBrace};

/// Per-element data preserved by every brace isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Signature {
    additive_order: usize,
    circle_order: usize,
    action_cycles: Vec<usize>,
}

fn signatures(b: &FiniteBrace) -> Vec<Signature> {
    let n = b.order();
    b.elements()
        .map(|x| {
            // λ_x for left braces, its mirror b ↦ b·x + b for right braces
            let images: Vec<usize> = (0..n)
                .map(|y| match b.chirality() {
                    Chirality::Left => b.add(b.mul(x, y), y),
                    Chirality::Right => b.add(b.mul(y, x), y),
                })
                .collect();
            let action_cycles = crate::perm::Perm::from_images(images)
                .map(|p| p.cycle_type())
                .unwrap_or_default();
            Signature {
                additive_order: b.additive_order(x),
                circle_order: b.circle_order(x),
                action_cycles,
            }
        })
        .collect()
}

fn preserves_mul(b1: &FiniteBrace, b2: &FiniteBrace, map: &[usize]) -> bool {
    b1.elements()
        .all(|x| b1.elements().all(|y| map[b1.mul(x, y)] == b2.mul(map[x], map[y])))
}

/// Searches for an isomorphism `b1 → b2`, returned as `map[x] = image of x`.
///
/// Generators of `(b1,+)` are fixed once; their images are searched in index
/// order among elements of `b2` with the same signature. The first hit in that
/// order is returned, so the result is deterministic.
pub fn is_isomorphic(b1: &FiniteBrace, b2: &FiniteBrace) -> Option<Vec<usize>> {
    if b1.order() != b2.order() || b1.chirality() != b2.chirality() {
        return None;
    }
    let ty = AbelianType::of_table(b1.order(), b1.add_table());
    if ty != AbelianType::of_table(b2.order(), b2.add_table()) {
        return None;
    }
    let std = StdAbelian::new(ty);
    let mut psi = None;
    let _ = std.for_each_isomorphism(b1.add_table(), |m| {
        psi = Some(m.to_vec());
        ControlFlow::Break(())
    });
    let psi = psi?;
    let generators: Vec<usize> = (0..std.moduli().len()).map(|i| psi[std.generator(i)]).collect();
    let sig1 = signatures(b1);
    let sig2 = signatures(b2);
    let mut found = None;
    let _ = std.for_each_isomorphism_filtered(
        b2.add_table(),
        |i, x| sig2[x] == sig1[generators[i]],
        |phi| {
            let mut map = vec![0; b1.order()];
            for (s, &x) in psi.iter().enumerate() {
                map[x] = phi[s];
            }
            if preserves_mul(b1, b2, &map) {
                found = Some(map);
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        },
    );
    found
}

/// Isomorphism-invariant normal form: the lexicographically least
/// multiplication table obtained by transporting the brace onto the standard
/// model of its additive group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub additive_type: AbelianType,
    pub chirality: Chirality,
    pub mul_table: Vec<usize>,
}

impl CanonicalForm {
    pub fn fingerprint(&self) -> String {
        let mut h = Sha256::new();
        h.update(format!("{} {}\n", self.additive_type, self.chirality));
        for x in &self.mul_table {
            h.update(x.to_string());
            h.update(b" ");
        }
        let digest = h.finalize();
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }

    /// The brace on the standard additive group with this table.
    pub fn to_brace(&self) -> FiniteBrace {
        let std = StdAbelian::new(self.additive_type.clone());
        crate::brace::validate(std.order(), &std.add_table(), &self.mul_table, self.chirality)
            .expect("canonical form of a valid brace is valid")
    }
}

pub fn canonical_form(b: &FiniteBrace) -> CanonicalForm {
    let n = b.order();
    let ty = AbelianType::of_table(n, b.add_table());
    let std = StdAbelian::new(ty.clone());
    let mut best: Option<Vec<usize>> = None;
    let mut inv = vec![0; n];
    let mut candidate = vec![0; n * n];
    let _ = std.for_each_isomorphism(b.add_table(), |phi| {
        for (s, &x) in phi.iter().enumerate() {
            inv[x] = s;
        }
        for i in 0..n {
            for j in 0..n {
                candidate[i * n + j] = inv[b.mul(phi[i], phi[j])];
            }
        }
        if best.as_ref().is_none_or(|cur| candidate < *cur) {
            best = Some(candidate.clone());
        }
        ControlFlow::Continue(())
    });
    CanonicalForm {
        additive_type: ty,
        chirality: b.chirality(),
        mul_table: best.expect("identity isomorphism always exists"),
    }
}

/// Least table among all relabelings of a brace already on `std` by `auts`.
pub(crate) fn canonical_on_std(n: usize, mul: &[usize], auts: &[crate::perm::Perm]) -> Vec<usize> {
    let mut best = mul.to_vec();
    let mut candidate = vec![0; n * n];
    for s in auts {
        // pull back along s: M'[i][j] = s^{-1}(M[s i][s j])
        let inv = s.inverse();
        for i in 0..n {
            let si = s.apply(i);
            for j in 0..n {
                candidate[i * n + j] = inv.apply(mul[si * n + s.apply(j)]);
            }
        }
        if candidate < best {
            best.copy_from_slice(&candidate);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::tests::even_residues_mod_16;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn random_relabel(b: &FiniteBrace, seed: u64) -> (FiniteBrace, Vec<usize>) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut rest: Vec<usize> = (1..b.order()).collect();
        rest.shuffle(&mut rng);
        let perm: Vec<usize> = std::iter::once(0).chain(rest).collect();
        (b.relabel(&perm).unwrap(), perm)
    }

    #[test]
    fn self_isomorphism_is_found() {
        let b = even_residues_mod_16();
        let map = is_isomorphic(&b, &b).unwrap();
        assert!(preserves_mul(&b, &b, &map));
    }

    #[test]
    fn different_additive_groups_are_not_isomorphic() {
        let z4 = FiniteBrace::trivial_cyclic(4);
        let z2 = FiniteBrace::trivial_cyclic(2);
        let v4 = FiniteBrace::direct_sum(&[z2.clone(), z2]).unwrap();
        assert!(is_isomorphic(&z4, &v4).is_none());
        assert_ne!(canonical_form(&z4), canonical_form(&v4));
    }

    #[test]
    fn relabelings_are_isomorphic_with_same_canonical_form() {
        let b = even_residues_mod_16();
        for seed in 0..10 {
            let (c, perm) = random_relabel(&b, seed);
            let map = is_isomorphic(&b, &c).expect("relabeling is an isomorphism");
            for x in b.elements() {
                for y in b.elements() {
                    assert_eq!(map[b.add(x, y)], c.add(map[x], map[y]));
                    assert_eq!(map[b.mul(x, y)], c.mul(map[x], map[y]));
                }
            }
            assert_eq!(canonical_form(&b), canonical_form(&c));
            let _ = perm;
        }
    }

    #[test]
    fn canonical_form_round_trips_to_isomorphic_brace() {
        let b = even_residues_mod_16();
        let cf = canonical_form(&b);
        let rebuilt = cf.to_brace();
        assert!(is_isomorphic(&b, &rebuilt).is_some());
        assert_eq!(canonical_form(&rebuilt), cf);
        assert_eq!(cf.fingerprint().len(), 16);
    }

    #[test]
    fn ring_and_trivial_brace_differ() {
        let b = even_residues_mod_16();
        let t = FiniteBrace::trivial_cyclic(8);
        assert!(is_isomorphic(&b, &t).is_none());
        assert!(is_isomorphic(&b, &b.opposite()).is_none());
    }
}
