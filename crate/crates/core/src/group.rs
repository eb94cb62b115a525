//! The adjoint group, lower central series and primary decomposition.

use std::ops::ControlFlow;

use crate::abelian::factorize;
use crate::brace::FiniteBrace;
use crate::error::{BraceError, Result};
use crate::series::{chain, SeriesKind};
use crate::subbrace::induced_subbrace;
use crate::subset::BraceSubset;

/// A finite group on `0..n` with identity 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Checks identity, associativity and inverses.
    pub fn from_table(order: usize, table: Vec<usize>) -> Result<Self> {
        if order == 0 || table.len() != order * order || table.iter().any(|&x| x >= order) {
            return Err(BraceError::MalformedTable("group table has the wrong shape".into()));
        }
        let op = |a: usize, b: usize| table[a * order + b];
        if (0..order).any(|a| op(0, a) != a || op(a, 0) != a) {
            return Err(BraceError::MalformedTable("0 is not the identity".into()));
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if op(op(a, b), c) != op(a, op(b, c)) {
                        return Err(BraceError::MalformedTable(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let mut inverse = Vec::with_capacity(order);
        for a in 0..order {
            let inv = (0..order)
                .find(|&b| op(a, b) == 0 && op(b, a) == 0)
                .ok_or_else(|| BraceError::MalformedTable(format!("{a} has no inverse")))?;
            inverse.push(inv);
        }
        Ok(FiniteGroup { order, table, inverse })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `[a, b] = a b a⁻¹ b⁻¹`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.op(self.op(a, b), self.op(self.inverse[a], self.inverse[b]))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.op(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.op(a, b) == self.op(b, a)))
    }

    /// Subgroup generated by `gens`, as a sorted element list.
    pub fn generated(&self, gens: impl IntoIterator<Item = usize>) -> Vec<usize> {
        let mut mask = vec![false; self.order];
        mask[0] = true;
        let gens: Vec<usize> = gens.into_iter().filter(|&g| g != 0).collect();
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            for &g in &gens {
                let y = self.op(x, g);
                if !mask[y] {
                    mask[y] = true;
                    stack.push(y);
                }
            }
        }
        (0..self.order).filter(|&x| mask[x]).collect()
    }

    pub fn symmetric(degree: usize) -> FiniteGroup {
        let perms = permutations(degree);
        let index = |p: &[usize]| perms.iter().position(|q| q == p).expect("closed");
        let n = perms.len();
        let mut table = vec![0; n * n];
        for (i, p) in perms.iter().enumerate() {
            for (j, q) in perms.iter().enumerate() {
                // apply q first
                let pq: Vec<usize> = q.iter().map(|&x| p[x]).collect();
                table[i * n + j] = index(&pq);
            }
        }
        FiniteGroup::from_table(n, table).expect("symmetric group")
    }

    pub fn cyclic(n: usize) -> FiniteGroup {
        let table = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        FiniteGroup::from_table(n, table).expect("cyclic group")
    }

    /// `G × H` with index `g·|H| + h`.
    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let (n, m) = (self.order, other.order);
        let nm = n * m;
        let mut table = vec![0; nm * nm];
        for x in 0..nm {
            for y in 0..nm {
                table[x * nm + y] = self.op(x / m, y / m) * m + other.op(x % m, y % m);
            }
        }
        FiniteGroup::from_table(nm, table).expect("product of groups")
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Group isomorphism by backtracking over a generating set of `g1`.
pub fn group_isomorphism(g1: &FiniteGroup, g2: &FiniteGroup) -> Option<Vec<usize>> {
    if g1.order != g2.order {
        return None;
    }
    let n = g1.order;
    let ord1: Vec<usize> = (0..n).map(|a| g1.element_order(a)).collect();
    let ord2: Vec<usize> = (0..n).map(|a| g2.element_order(a)).collect();
    let mut hist1 = ord1.clone();
    let mut hist2 = ord2.clone();
    hist1.sort_unstable();
    hist2.sort_unstable();
    if hist1 != hist2 {
        return None;
    }
    // greedy generating set
    let mut gens = Vec::new();
    let mut span = vec![0];
    for a in 0..n {
        if span.len() == n {
            break;
        }
        if span.binary_search(&a).is_err() {
            gens.push(a);
            span = g1.generated(gens.iter().copied());
        }
    }
    let mut images = Vec::new();
    let mut result = None;
    let _ = extend_group_map(g1, g2, &gens, &ord1, &ord2, &mut images, &mut result);
    result
}

fn extend_group_map(
    g1: &FiniteGroup,
    g2: &FiniteGroup,
    gens: &[usize],
    ord1: &[usize],
    ord2: &[usize],
    images: &mut Vec<usize>,
    result: &mut Option<Vec<usize>>,
) -> ControlFlow<()> {
    if images.len() == gens.len() {
        if let Some(map) = homomorphism_from_generators(g1, g2, gens, images) {
            let mut seen = vec![false; g2.order];
            if map.iter().all(|&y| !std::mem::replace(&mut seen[y], true)) {
                *result = Some(map);
                return ControlFlow::Break(());
            }
        }
        return ControlFlow::Continue(());
    }
    let g = gens[images.len()];
    for y in 0..g2.order {
        if ord2[y] != ord1[g] {
            continue;
        }
        images.push(y);
        let flow = extend_group_map(g1, g2, gens, ord1, ord2, images, result);
        images.pop();
        flow?;
    }
    ControlFlow::Continue(())
}

/// Extends generator images by closure; `None` if inconsistent.
fn homomorphism_from_generators(
    g1: &FiniteGroup,
    g2: &FiniteGroup,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; g1.order];
    map[0] = 0;
    let mut stack = vec![0];
    while let Some(x) = stack.pop() {
        for (&g, &h) in gens.iter().zip(images) {
            let y = g1.op(x, g);
            let v = g2.op(map[x], h);
            if map[y] == usize::MAX {
                map[y] = v;
                stack.push(y);
            } else if map[y] != v {
                return None;
            }
        }
    }
    // a map defined by closure is multiplicative on generators; confirm fully
    for a in 0..g1.order {
        for b in 0..g1.order {
            if map[g1.op(a, b)] != g2.op(map[a], map[b]) {
                return None;
            }
        }
    }
    Some(map)
}

/// `(A, ∘)`.
pub fn adjoint_group(brace: &FiniteBrace) -> FiniteGroup {
    let n = brace.order();
    let table = (0..n * n).map(|i| brace.circle(i / n, i % n)).collect();
    let inverse = (0..n).map(|a| brace.adjoint_inverse(a)).collect();
    FiniteGroup { order: n, table, inverse }
}

/// `γ_1 = G`, `γ_{k+1} = ⟨[g, h] : g ∈ G, h ∈ γ_k⟩`, up to the first repeat.
pub fn lower_central_series(group: &FiniteGroup) -> Vec<Vec<usize>> {
    let mut series = vec![(0..group.order).collect::<Vec<_>>()];
    loop {
        let last = series.last().expect("non-empty");
        if last.len() == 1 {
            break;
        }
        let comms = (0..group.order).flat_map(|g| last.iter().map(move |&h| (g, h)));
        let next = group.generated(comms.map(|(g, h)| group.commutator(g, h)));
        if next == *last {
            break;
        }
        series.push(next);
    }
    series
}

/// Nilpotency and class (number of strict descents to the trivial group).
pub fn is_nilpotent(group: &FiniteGroup) -> (bool, usize) {
    let series = lower_central_series(group);
    let nilpotent = series.last().is_some_and(|s| s.len() == 1);
    (nilpotent, series.len() - 1)
}

/// Splits a left brace with nilpotent adjoint group into its Sylow parts.
pub fn p_decomposition(brace: &FiniteBrace) -> Result<Vec<(usize, FiniteBrace)>> {
    brace.require_left()?;
    if !is_nilpotent(&adjoint_group(brace)).0 {
        return Err(BraceError::AdjointNotNilpotent);
    }
    let mut parts = Vec::new();
    for (p, alpha) in factorize(brace.order()) {
        let pa = p.pow(alpha);
        let members: Vec<usize> = brace.elements().filter(|&x| brace.multiple(pa, x) == 0).collect();
        let sylow = BraceSubset::raw(brace, &members)?
            .certify_ideal()
            .map_err(|e| BraceError::Internal(format!("Sylow {p}-part is not an ideal: {e}")))?;
        parts.push((p, induced_subbrace(brace, sylow.members())?));
    }
    Ok(parts)
}

/// `A^{max α_i + 1} = 0` for `|A| = ∏ p_i^{α_i}`.
pub fn nilpotency_bound_check(brace: &FiniteBrace) -> Result<bool> {
    brace.require_left()?;
    if !is_nilpotent(&adjoint_group(brace)).0 {
        return Err(BraceError::AdjointNotNilpotent);
    }
    let bound = factorize(brace.order()).iter().map(|&(_, a)| a as usize).max().unwrap_or(0) + 1;
    Ok(chain(brace, SeriesKind::LeftPowers).vanishes_at().is_some_and(|s| s <= bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::tests::even_residues_mod_16;

    #[test]
    fn s3_is_not_nilpotent() {
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        let series = lower_central_series(&s3);
        assert_eq!(series.last().unwrap().len(), 3);
        assert_eq!(is_nilpotent(&s3), (false, 1));
    }

    #[test]
    fn abelian_and_trivial_classes() {
        assert_eq!(is_nilpotent(&FiniteGroup::cyclic(6)), (true, 1));
        assert_eq!(is_nilpotent(&FiniteGroup::cyclic(1)), (true, 0));
    }

    #[test]
    fn dihedral_of_order_8_has_class_2() {
        // D4 acting on the corners of a square, as a subgroup of S4
        let s4 = FiniteGroup::symmetric(4);
        let perms = permutations(4);
        let r = perms.iter().position(|p| p == &vec![1, 2, 3, 0]).unwrap();
        let f = perms.iter().position(|p| p == &vec![0, 3, 2, 1]).unwrap();
        let d4 = s4.generated([r, f]);
        assert_eq!(d4.len(), 8);
        let index = |x: usize| d4.binary_search(&x).unwrap();
        let table = (0..64).map(|i| index(s4.op(d4[i / 8], d4[i % 8]))).collect();
        let g = FiniteGroup::from_table(8, table).unwrap();
        assert_eq!(is_nilpotent(&g), (true, 2));
    }

    #[test]
    fn group_isomorphisms() {
        let z6 = FiniteGroup::cyclic(6);
        let z2z3 = FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(3));
        assert!(group_isomorphism(&z6, &z2z3).is_some());
        assert!(group_isomorphism(&z6, &FiniteGroup::symmetric(3)).is_none());
        let v4 = FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(2));
        assert!(group_isomorphism(&v4, &FiniteGroup::cyclic(4)).is_none());
    }

    #[test]
    fn trivial_brace_adjoint_is_additive() {
        let b = FiniteBrace::trivial_cyclic(6);
        let g = adjoint_group(&b);
        assert_eq!(g.table(), b.add_table());
    }

    #[test]
    fn decomposition_of_trivial_z6() {
        let parts = p_decomposition(&FiniteBrace::trivial_cyclic(6)).unwrap();
        let orders: Vec<(usize, usize)> = parts.iter().map(|(p, b)| (*p, b.order())).collect();
        assert_eq!(orders, vec![(2, 2), (3, 3)]);
        let b = even_residues_mod_16();
        let parts = p_decomposition(&b).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].1, b);
    }

    #[test]
    fn bound_on_small_braces() {
        assert!(nilpotency_bound_check(&FiniteBrace::trivial_cyclic(4)).unwrap());
        assert!(nilpotency_bound_check(&even_residues_mod_16()).unwrap());
    }
}
