//! Structural statements checked on every enumerated brace of order at most 8.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use braces::catalog::{enumerate_braces, CatalogEntry};
use braces::group::{adjoint_group, group_isomorphism, is_nilpotent, p_decomposition};
use braces::subbrace::{generate_subbrace, quotient};
use braces::subset::BraceSubset;
use braces::ybe::{check_two_sided_identity, multipermutation_level, retract, solution_from_brace};
use braces::{chain, is_isomorphic, product_span, socle, Certification, Chirality, FiniteBrace, SeriesKind};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn catalog() -> &'static [CatalogEntry] {
    static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(|| (1..=8).flat_map(|n| enumerate_braces(n, Chirality::Left).unwrap()).collect())
}

fn braces() -> impl Iterator<Item = &'static FiniteBrace> {
    catalog().iter().map(|e| &e.brace)
}

#[test]
fn known_counts() {
    let counts: Vec<usize> = (1..=8).map(|n| braces().filter(|b| b.order() == n).count()).collect();
    assert_eq!(counts, [1, 1, 1, 4, 1, 2, 1, 27]);
}

#[test]
fn ring_identity_for_circle() {
    for b in braces() {
        for x in b.elements() {
            for y in b.elements() {
                for z in b.elements() {
                    let lhs = b.mul(b.circle(x, y), z);
                    let rhs = b.add(b.add(b.mul(x, b.mul(y, z)), b.mul(x, z)), b.mul(y, z));
                    assert_eq!(lhs, rhs, "order {} at ({x}, {y}, {z})", b.order());
                }
            }
        }
    }
}

#[test]
fn lambda_is_a_homomorphism_into_automorphisms() {
    for b in braces() {
        for x in b.elements() {
            let lx = b.lambda_map(x).unwrap();
            for y in b.elements() {
                assert_eq!(lx.apply(b.add(y, y)), b.add(lx.apply(y), lx.apply(y)));
                let ly = b.lambda_map(y).unwrap();
                assert_eq!(b.lambda_map(b.circle(x, y)).unwrap(), lx.compose(&ly));
            }
        }
    }
}

#[test]
fn catalog_is_pairwise_non_isomorphic() {
    for n in 1..=8 {
        let same: Vec<&FiniteBrace> = braces().filter(|b| b.order() == n).collect();
        for (i, x) in same.iter().enumerate() {
            for y in &same[i + 1..] {
                assert!(is_isomorphic(x, y).is_none(), "order {n}");
            }
        }
    }
}

/// Relabels with a random permutation fixing 0.
fn shuffled(b: &FiniteBrace, rng: &mut ChaCha8Rng) -> FiniteBrace {
    let mut rest: Vec<usize> = (1..b.order()).collect();
    rest.shuffle(rng);
    let perm: Vec<usize> = std::iter::once(0).chain(rest).collect();
    b.relabel(&perm).unwrap()
}

#[test]
fn isomorphism_is_symmetric_with_inverse_bijection() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for b in braces() {
        let c = shuffled(b, &mut rng);
        let f = is_isomorphic(b, &c).expect("relabelling is an isomorphism");
        let g = is_isomorphic(&c, b).expect("symmetric");
        for x in b.elements() {
            for y in b.elements() {
                assert_eq!(c.add(f[x], f[y]), f[b.add(x, y)]);
                assert_eq!(c.mul(f[x], f[y]), f[b.mul(x, y)]);
                assert_eq!(b.mul(g[x], g[y]), g[c.mul(x, y)]);
            }
        }
    }
}

/// Braces built from catalogue members by sums, quotients and subbraces,
/// then relabelled, must all be found in the catalogue.
#[test]
fn sampled_completeness() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut samples: Vec<FiniteBrace> = Vec::new();
    let small: Vec<&FiniteBrace> = braces().filter(|b| b.order() <= 4).collect();
    for x in &small {
        for y in &small {
            if x.order() * y.order() <= 8 {
                samples.push(FiniteBrace::direct_sum(&[(*x).clone(), (*y).clone()]).unwrap());
            }
        }
    }
    for b in braces() {
        for t in chain(b, SeriesKind::LeftPowers).terms() {
            if t.certification() == Certification::Ideal {
                samples.push(quotient(b, t).unwrap().0);
            }
        }
        if chain(b, SeriesKind::Bracket).vanishes() {
            for g in b.elements() {
                samples.push(generate_subbrace(b, &[g]).unwrap().0);
            }
        }
    }
    assert!(samples.len() > 100);
    for s in &samples {
        let s = shuffled(s, &mut rng);
        assert!(
            braces().any(|b| b.order() == s.order() && is_isomorphic(b, &s).is_some()),
            "missing a brace of order {}",
            s.order()
        );
    }
}

#[test]
fn quotient_projection_is_a_homomorphism() {
    for b in braces() {
        for t in chain(b, SeriesKind::RightPowers).terms() {
            if t.certification() != Certification::Ideal {
                continue;
            }
            let (q, proj) = quotient(b, t).unwrap();
            assert_eq!(q.order() * t.len(), b.order());
            for x in b.elements() {
                for y in b.elements() {
                    assert_eq!(proj[b.add(x, y)], q.add(proj[x], proj[y]));
                    assert_eq!(proj[b.mul(x, y)], q.mul(proj[x], proj[y]));
                }
            }
        }
    }
}

#[test]
fn chains_descend_and_bracket_sits_above_both() {
    for b in braces() {
        let [l, r, br] = SeriesKind::ALL.map(|k| chain(b, k));
        for ch in [&l, &r, &br] {
            let terms = ch.terms();
            for w in terms.windows(2) {
                assert!(w[1].is_subset_of(&w[0]));
            }
            for t in terms {
                if t.certification() == Certification::Ideal {
                    assert!(t.is_ideal());
                }
            }
        }
        // A^[k] contains A·A^[k-1] and A^[k-1]·A, so it contains A^k and A^(k)
        for k in 1..=b.order() + 1 {
            assert!(l.term(k).is_subset_of(br.term(k)));
            assert!(r.term(k).is_subset_of(br.term(k)));
        }
        // both one-sided chains vanish exactly when the bracket chain does
        assert_eq!(l.vanishes() && r.vanishes(), br.vanishes());
    }
}

#[test]
fn nilpotency_statements() {
    for b in braces() {
        let nil = is_nilpotent(&adjoint_group(b)).0;
        let [l, r, br] = SeriesKind::ALL.map(|k| chain(b, k).vanishes());
        assert_eq!(nil, l);
        if l && r {
            assert!(nil);
        }
        if r && nil {
            assert!(l && br);
        }
        // the same statement read on the right brace
        let op = b.opposite();
        assert_eq!(is_nilpotent(&adjoint_group(&op)).0, chain(&op, SeriesKind::RightPowers).vanishes());
    }
}

#[test]
fn socle_is_the_kernel_of_lambda() {
    for b in braces() {
        let s = socle(b).unwrap();
        assert!(s.is_ideal());
        for x in b.elements() {
            let trivial = b.elements().all(|a| b.circle(x, a) == b.add(x, a));
            assert_eq!(s.contains(x), trivial);
        }
    }
}

/// Additive closure of all products, from scratch.
fn naive_span(b: &FiniteBrace, c: &[usize], d: &[usize]) -> BTreeSet<usize> {
    let mut set: BTreeSet<usize> = c.iter().flat_map(|&x| d.iter().map(move |&y| b.mul(x, y))).collect();
    set.insert(0);
    loop {
        let sums: BTreeSet<usize> = set.iter().flat_map(|&x| set.iter().map(move |&y| b.add(x, y))).collect();
        if sums.is_subset(&set) {
            return set;
        }
        set.extend(sums);
    }
}

#[test]
fn product_span_matches_naive_closure() {
    for b in braces().filter(|b| b.order() <= 6) {
        let mut subgroups: Vec<BraceSubset<'_>> = Vec::new();
        for g in b.elements() {
            for h in b.elements() {
                let s = BraceSubset::additive_span(b, &[g, h]).unwrap();
                if !subgroups.contains(&s) {
                    subgroups.push(s);
                }
            }
        }
        for c in &subgroups {
            for d in &subgroups {
                let ours: BTreeSet<usize> = product_span(c, d).unwrap().members().iter().copied().collect();
                assert_eq!(ours, naive_span(b, c.members(), d.members()));
            }
        }
    }
}

#[test]
fn sylow_parts_annihilate_each_other() {
    for b in braces().filter(|b| is_nilpotent(&adjoint_group(b)).0) {
        let parts = p_decomposition(b).unwrap();
        assert_eq!(parts.iter().map(|(_, p)| p.order()).product::<usize>(), b.order());
        // members of the p-part inside b are the elements killed by |part|
        let inside: Vec<Vec<usize>> = parts
            .iter()
            .map(|(_, p)| b.elements().filter(|&x| b.multiple(p.order(), x) == 0).collect())
            .collect();
        for (i, xs) in inside.iter().enumerate() {
            for (j, ys) in inside.iter().enumerate() {
                if i != j {
                    for &x in xs {
                        for &y in ys {
                            assert_eq!(b.mul(x, y), 0);
                        }
                    }
                }
            }
        }
    }
    let s3_brace = braces().find(|b| b.order() == 6 && !is_nilpotent(&adjoint_group(b)).0).unwrap();
    assert!(p_decomposition(s3_brace).is_err());
}

#[test]
fn adjoint_group_of_a_sum_is_the_product() {
    let small: Vec<&FiniteBrace> = braces().filter(|b| (2..=4).contains(&b.order())).collect();
    for x in &small {
        for y in &small {
            if x.order() * y.order() > 8 {
                continue;
            }
            let sum = FiniteBrace::direct_sum(&[(*x).clone(), (*y).clone()]).unwrap();
            let product = adjoint_group(x).direct_product(&adjoint_group(y));
            assert!(group_isomorphism(&adjoint_group(&sum), &product).is_some());
        }
    }
}

#[test]
fn solution_structure() {
    for b in braces() {
        let sol = solution_from_brace(b).unwrap();
        for x in b.elements() {
            assert_eq!(sol.sigma(x).unwrap(), b.lambda_map(x).unwrap());
        }
        let (ret, _) = retract(&sol).unwrap();
        assert_eq!(ret.size() * socle(b).unwrap().len(), b.order());
        assert!(ret.is_valid());
        assert_eq!(check_two_sided_identity(b).unwrap().is_ok(), b.is_two_sided());
        let level = multipermutation_level(&sol).unwrap();
        assert_eq!(level.level().map(|m| m + 1), chain(b, SeriesKind::RightPowers).vanishes_at());
    }
}
