//! Finite abelian groups in primary-decomposition form.

use std::fmt;
use std::ops::ControlFlow;

use crate::perm::Perm;

/// Elementary divisors `p^e`, sorted by `(p, e)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianType(Vec<(usize, u32)>);

impl AbelianType {
    pub fn new(mut divisors: Vec<(usize, u32)>) -> Self {
        divisors.retain(|&(_, e)| e > 0);
        divisors.sort_unstable();
        AbelianType(divisors)
    }

    pub fn divisors(&self) -> &[(usize, u32)] {
        &self.0
    }

    pub fn moduli(&self) -> Vec<usize> {
        self.0.iter().map(|&(p, e)| p.pow(e)).collect()
    }

    pub fn order(&self) -> usize {
        self.moduli().iter().product()
    }

    /// `α_p` for each prime `p` dividing the order, sorted by prime.
    pub fn prime_exponents(&self) -> Vec<(usize, u32)> {
        let mut out: Vec<(usize, u32)> = Vec::new();
        for &(p, e) in &self.0 {
            match out.last_mut() {
                Some((q, f)) if *q == p => *f += e,
                _ => out.push((p, e)),
            }
        }
        out
    }

    /// Every isomorphism type of abelian group of order `n`, in a fixed order.
    pub fn all_of_order(n: usize) -> Vec<AbelianType> {
        let mut result = vec![Vec::new()];
        for (p, alpha) in factorize(n) {
            let mut next = Vec::new();
            for part in partitions(alpha) {
                for prefix in &result {
                    let mut d: Vec<(usize, u32)> = prefix.clone();
                    d.extend(part.iter().map(|&e| (p, e)));
                    next.push(d);
                }
            }
            result = next;
        }
        let mut types: Vec<AbelianType> = result.into_iter().map(AbelianType::new).collect();
        types.sort();
        types
    }

    /// Reads off the type of an abelian group given by its addition table.
    pub fn of_table(order: usize, add: &[usize]) -> AbelianType {
        let plus = |a: usize, b: usize| add[a * order + b];
        let multiple = |k: usize, x: usize| (0..k).fold(0, |acc, _| plus(acc, x));
        let mut divisors = Vec::new();
        for (p, alpha) in factorize(order) {
            // log_p |{x : p^k x = 0}| = Σ_i min(k, e_i)
            let mut prev = 0u32;
            let mut at_least = Vec::new();
            for k in 1..=alpha {
                let pk = p.pow(k);
                let count = (0..order).filter(|&x| multiple(pk, x) == 0).count();
                let log = log_exact(count, p);
                at_least.push(log - prev);
                prev = log;
            }
            // at_least[k-1] = #{i : e_i ≥ k}
            for k in 1..=alpha as usize {
                let here = at_least[k - 1] - at_least.get(k).copied().unwrap_or(0);
                divisors.extend(std::iter::repeat_n((p, k as u32), here as usize));
            }
        }
        AbelianType::new(divisors)
    }
}

impl fmt::Display for AbelianType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("Z1");
        }
        for (i, m) in self.moduli().iter().enumerate() {
            if i > 0 {
                f.write_str("x")?;
            }
            write!(f, "Z{m}")?;
        }
        Ok(())
    }
}

fn log_exact(mut n: usize, p: usize) -> u32 {
    let mut k = 0;
    while n > 1 {
        debug_assert_eq!(n % p, 0);
        n /= p;
        k += 1;
    }
    k
}

pub fn factorize(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Partitions of `n` as non-increasing part lists.
fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            cur.push(k);
            go(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// `Z/m_1 × … × Z/m_k` with mixed-radix indexing, last coordinate fastest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StdAbelian {
    ty: AbelianType,
    moduli: Vec<usize>,
    order: usize,
}

impl StdAbelian {
    pub fn new(ty: AbelianType) -> Self {
        let moduli = ty.moduli();
        let order = moduli.iter().product();
        StdAbelian { ty, moduli, order }
    }

    pub fn ty(&self) -> &AbelianType {
        &self.ty
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn moduli(&self) -> &[usize] {
        &self.moduli
    }

    pub fn coords(&self, mut x: usize) -> Vec<usize> {
        let mut c = vec![0; self.moduli.len()];
        for i in (0..self.moduli.len()).rev() {
            c[i] = x % self.moduli[i];
            x /= self.moduli[i];
        }
        c
    }

    pub fn index(&self, coords: &[usize]) -> usize {
        coords.iter().zip(&self.moduli).fold(0, |acc, (&c, &m)| acc * m + c % m)
    }

    pub fn add_table(&self) -> Vec<usize> {
        let n = self.order;
        let coords: Vec<Vec<usize>> = (0..n).map(|x| self.coords(x)).collect();
        let mut table = vec![0; n * n];
        let mut buf = vec![0; self.moduli.len()];
        for a in 0..n {
            for b in 0..n {
                for i in 0..buf.len() {
                    buf[i] = coords[a][i] + coords[b][i];
                }
                table[a * n + b] = self.index(&buf);
            }
        }
        table
    }

    /// The generator `e_i` (unit vector at coordinate `i`).
    pub fn generator(&self, i: usize) -> usize {
        let mut c = vec![0; self.moduli.len()];
        c[i] = 1;
        self.index(&c)
    }

    /// Visits every isomorphism from this group onto the group with table
    /// `target_add` (same order), as a map `std index → target index`.
    /// Generator images are tried in increasing index order.
    pub fn for_each_isomorphism<F>(&self, target_add: &[usize], visit: F) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        self.for_each_isomorphism_filtered(target_add, |_, _| true, visit)
    }

    /// As [`for_each_isomorphism`](Self::for_each_isomorphism), but the image of
    /// generator `i` is restricted to targets `x` with `allow(i, x)`.
    pub fn for_each_isomorphism_filtered<F>(
        &self,
        target_add: &[usize],
        allow: impl Fn(usize, usize) -> bool,
        mut visit: F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let n = self.order;
        if target_add.len() != n * n {
            return ControlFlow::Continue(());
        }
        let add = |a: usize, b: usize| target_add[a * n + b];
        let order_of = |x: usize| {
            let mut k = 1;
            let mut y = x;
            while y != 0 {
                y = add(y, x);
                k += 1;
            }
            k
        };
        let orders: Vec<usize> = (0..n).map(order_of).collect();
        let candidates: Vec<Vec<usize>> = self
            .moduli
            .iter()
            .enumerate()
            .map(|(i, &m)| (0..n).filter(|&x| orders[x] == m && allow(i, x)).collect())
            .collect();
        let mut used = vec![false; n];
        used[0] = true;
        self.extend(0, vec![0], &mut used, &candidates, &add, &mut visit)
    }

    fn extend<F>(
        &self,
        depth: usize,
        span: Vec<usize>,
        used: &mut Vec<bool>,
        candidates: &[Vec<usize>],
        add: &impl Fn(usize, usize) -> usize,
        visit: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        if depth == self.moduli.len() {
            return visit(&span);
        }
        let m = self.moduli[depth];
        'cand: for &h in &candidates[depth] {
            if used[h] {
                continue;
            }
            let mut next = Vec::with_capacity(span.len() * m);
            let mut fresh = Vec::new();
            for &s in &span {
                let mut y = s;
                for c in 0..m {
                    if c > 0 {
                        if used[y] {
                            for &f in &fresh {
                                used[f] = false;
                            }
                            continue 'cand;
                        }
                        used[y] = true;
                        fresh.push(y);
                    }
                    next.push(y);
                    y = add(y, h);
                }
            }
            let flow = self.extend(depth + 1, next, used, candidates, add, visit);
            for &f in &fresh {
                used[f] = false;
            }
            flow?;
        }
        ControlFlow::Continue(())
    }

    /// All automorphisms, as permutations of the index set.
    pub fn automorphisms(&self) -> Vec<Perm> {
        let table = self.add_table();
        let mut out = Vec::new();
        let _ = self.for_each_isomorphism(&table, |map| {
            out.push(Perm::from_images(map.to_vec()).expect("isomorphism is bijective"));
            ControlFlow::Continue(())
        });
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_of_abelian_groups() {
        let counts: Vec<usize> = (1..=16).map(|n| AbelianType::all_of_order(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 1, 1, 1, 3, 2, 1, 1, 2, 1, 1, 1, 5]);
    }

    #[test]
    fn automorphism_group_orders() {
        let aut = |d: Vec<(usize, u32)>| StdAbelian::new(AbelianType::new(d)).automorphisms().len();
        assert_eq!(aut(vec![(2, 3)]), 4);
        assert_eq!(aut(vec![(2, 1), (2, 1)]), 6);
        assert_eq!(aut(vec![(2, 1), (2, 1), (2, 1)]), 168);
        assert_eq!(aut(vec![(2, 1), (2, 2)]), 8);
        assert_eq!(aut(vec![(3, 1), (3, 1)]), 48);
        assert_eq!(aut(vec![(2, 1), (3, 1)]), 2);
        assert_eq!(aut(vec![]), 1);
    }

    #[test]
    fn type_is_recovered_from_table() {
        for n in 1..=16 {
            for ty in AbelianType::all_of_order(n) {
                let g = StdAbelian::new(ty.clone());
                assert_eq!(AbelianType::of_table(n, &g.add_table()), ty);
            }
        }
    }

    #[test]
    fn prime_exponents_merge_divisors() {
        let t = AbelianType::new(vec![(3, 1), (2, 2), (2, 1)]);
        assert_eq!(t.prime_exponents(), vec![(2, 3), (3, 1)]);
        assert_eq!(t.to_string(), "Z2xZ4xZ3");
        assert_eq!(t.order(), 24);
    }
}
