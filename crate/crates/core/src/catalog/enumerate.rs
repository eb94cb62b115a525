//! Exhaustive search for braces of a given order, one per isomorphism class.
//!
//! A left brace on `(A,+)` is the same thing as a map `λ: A → Aut(A,+)` with
//! `λ_{x + λ_x(y)} = λ_x λ_y`; the product is recovered as `x·y = λ_x(y) - y`.
//! The search assigns `λ` element by element and propagates that identity.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;

use crate::abelian::{AbelianType, StdAbelian};
use crate::brace::{validate, Chirality, FiniteBrace};
use crate::error::{BraceError, Result};
use crate::iso::{canonical_form, canonical_on_std};
use crate::perm::Perm;

/// Orders above this need automorphism groups too large for the table-driven search.
pub const HARD_MAX_ORDER: usize = 15;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationConfig {
    pub max_order: usize,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        EnumerationConfig { max_order: 8 }
    }
}

struct AutTable {
    auts: Vec<Perm>,
    comp: Vec<usize>,
    identity: usize,
    allowed: Vec<bool>,
}

impl AutTable {
    fn new(auts: Vec<Perm>, order: usize) -> Self {
        let index: HashMap<&[usize], usize> = auts.iter().enumerate().map(|(i, p)| (p.images(), i)).collect();
        let k = auts.len();
        let mut comp = vec![0; k * k];
        for i in 0..k {
            for j in 0..k {
                comp[i * k + j] = index[auts[i].compose(&auts[j]).images()];
            }
        }
        let identity = auts.iter().position(Perm::is_identity).expect("identity automorphism");
        // λ is a homomorphism out of a group of order n, so λ_x^n = id
        let allowed = (0..k)
            .map(|i| {
                let mut acc = identity;
                for _ in 0..order {
                    acc = comp[acc * k + i];
                }
                acc == identity
            })
            .collect();
        AutTable { auts, comp, identity, allowed }
    }

    #[inline]
    fn compose(&self, i: usize, j: usize) -> usize {
        self.comp[i * self.auts.len() + j]
    }
}

const UNSET: usize = usize::MAX;

struct Search<'t> {
    n: usize,
    add: &'t [usize],
    table: &'t AutTable,
    lambda: Vec<usize>,
    assigned: Vec<usize>,
}

impl Search<'_> {
    /// Assigns `λ_x = f` and everything it forces. On conflict the state is
    /// rolled back and `false` returned.
    fn assign(&mut self, x: usize, f: usize) -> bool {
        let mark = self.assigned.len();
        let ok = self.assign_inner(x, f);
        if !ok {
            for &y in &self.assigned[mark..] {
                self.lambda[y] = UNSET;
            }
            self.assigned.truncate(mark);
        }
        ok
    }

    fn assign_inner(&mut self, x: usize, f: usize) -> bool {
        if !self.table.allowed[f] {
            return false;
        }
        self.lambda[x] = f;
        self.assigned.push(x);
        let mut cursor = self.assigned.len() - 1;
        while cursor < self.assigned.len() {
            let u = self.assigned[cursor];
            cursor += 1;
            let mut k = 0;
            while k < self.assigned.len() {
                let v = self.assigned[k];
                k += 1;
                for (p, q) in [(u, v), (v, u)] {
                    let (lp, lq) = (self.lambda[p], self.lambda[q]);
                    let z = self.add[p * self.n + self.table.auts[lp].apply(q)];
                    let want = self.table.compose(lp, lq);
                    match self.lambda[z] {
                        UNSET => {
                            if !self.table.allowed[want] {
                                return false;
                            }
                            self.lambda[z] = want;
                            self.assigned.push(z);
                        }
                        have if have != want => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    fn unassign_to(&mut self, mark: usize) {
        for &y in &self.assigned[mark..] {
            self.lambda[y] = UNSET;
        }
        self.assigned.truncate(mark);
    }

    fn mul_table(&self) -> Vec<usize> {
        let n = self.n;
        let neg: Vec<usize> = (0..n).map(|y| (0..n).find(|&z| self.add[y * n + z] == 0).expect("group")).collect();
        let mut mul = vec![0; n * n];
        for x in 0..n {
            let f = &self.table.auts[self.lambda[x]];
            for y in 0..n {
                mul[x * n + y] = self.add[f.apply(y) * n + neg[y]];
            }
        }
        mul
    }

    fn run(&mut self, found: &mut BTreeSet<Vec<usize>>) {
        let Some(x) = self.lambda.iter().position(|&l| l == UNSET) else {
            found.insert(canonical_on_std(self.n, &self.mul_table(), &self.table.auts));
            return;
        };
        for f in 0..self.table.auts.len() {
            let mark = self.assigned.len();
            if self.assign(x, f) {
                self.run(found);
                self.unassign_to(mark);
            }
        }
    }
}

/// Canonical multiplication tables of all left braces on the standard group of type `ty`.
fn left_tables_on(ty: &AbelianType) -> Vec<Vec<usize>> {
    let std = StdAbelian::new(ty.clone());
    let n = std.order();
    let add = std.add_table();
    let table = AutTable::new(std.automorphisms(), n);
    let fresh = || {
        let mut s = Search { n, add: &add, table: &table, lambda: vec![UNSET; n], assigned: Vec::new() };
        assert!(s.assign(0, table.identity), "λ_0 = id is always consistent");
        s
    };
    let root = fresh();
    let Some(first) = root.lambda.iter().position(|&l| l == UNSET) else {
        return vec![vec![0; n * n]];
    };
    let merged: BTreeSet<Vec<usize>> = (0..table.auts.len())
        .into_par_iter()
        .map(|f| {
            let mut s = fresh();
            let mut found = BTreeSet::new();
            if s.assign(first, f) {
                s.run(&mut found);
            }
            found
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    merged.into_iter().collect()
}

/// One brace per isomorphism class, ordered by additive type and then by
/// canonical table.
pub fn enumerate_brace_tables(order: usize, chirality: Chirality, config: &EnumerationConfig) -> Result<Vec<FiniteBrace>> {
    let bound = config.max_order.min(HARD_MAX_ORDER);
    if order == 0 || order > bound {
        return Err(BraceError::BoundExceeded { order, bound });
    }
    let mut out = Vec::new();
    for ty in AbelianType::all_of_order(order) {
        let std = StdAbelian::new(ty.clone());
        let add = std.add_table();
        let mut braces: Vec<(Vec<usize>, FiniteBrace)> = left_tables_on(&ty)
            .into_iter()
            .map(|mul| {
                let left = validate(order, &add, &mul, Chirality::Left).expect("search yields braces");
                match chirality {
                    Chirality::Left => (mul, left),
                    Chirality::Right => {
                        let cf = canonical_form(&left.opposite());
                        let b = cf.to_brace();
                        (cf.mul_table, b)
                    }
                }
            })
            .collect();
        braces.sort_by(|a, b| a.0.cmp(&b.0));
        out.extend(braces.into_iter().map(|(_, b)| b));
    }
    Ok(out)
}
