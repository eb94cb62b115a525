use std::collections::BTreeMap;

use rustc_hash::FxHashMap;
use std::fmt::{self, Write as _};
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::monomial::{Monomial, MAX_DEGREE};
use super::scalar::{l1_norm, Scalar};
use super::EngelError;

/// An element of `F<a,b>/(a², b³)` with an identity adjoined. The constant
/// term is stored under the empty monomial.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FreePoly<C> {
    terms: BTreeMap<Monomial, C>,
}

impl<C: Scalar> FreePoly<C> {
    pub fn zero() -> Self {
        FreePoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::term(Monomial::ONE, c)
    }

    pub fn term(m: Monomial, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        FreePoly { terms }
    }

    pub fn a() -> Self {
        Self::term(Monomial::A, C::one())
    }

    pub fn b() -> Self {
        Self::term(Monomial::B, C::one())
    }

    pub fn from_i64(v: i64) -> Self {
        Self::constant(C::from_i64(v))
    }

    /// Sums the given terms; repeated monomials are combined.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut out = BTreeMap::new();
        for (m, c) in terms {
            accumulate(&mut out, m, c);
        }
        FreePoly { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Monomial::ONE).is_some_and(One::is_one)
    }

    /// Number of stored terms, the constant included.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: Monomial) -> C {
        self.terms.get(&m).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(Monomial::ONE)
    }

    pub fn without_constant(&self) -> Self {
        self.filter(|m| !m.is_one())
    }

    /// Terms in dump order: degree, then lexicographic.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &C)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn monomials(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.terms.keys().copied()
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// The terms whose monomial satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(Monomial) -> bool) -> Self {
        FreePoly { terms: self.terms.iter().filter(|(m, _)| keep(**m)).map(|(m, c)| (*m, c.clone())).collect() }
    }

    pub fn scale(&self, s: &C) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        FreePoly { terms: self.terms.iter().map(|(m, c)| (*m, c.clone() * s.clone())).collect() }
    }

    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> FreePoly<D> {
        FreePoly::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    /// Integer coefficients whose partial sums provably fit in `i128` are
    /// multiplied natively; anything else goes through the field operations.
    fn product_with(&self, other: &Self) -> Self {
        let p: Vec<(Monomial, C)> = self.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        let q: Vec<(Monomial, C)> = other.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        let fits_i128 = match (l1_norm(self.terms.values()), l1_norm(other.terms.values())) {
            (Some(x), Some(y)) => x.checked_mul(y).is_some_and(|v| v < 1u128 << 126),
            _ => false,
        };
        if fits_i128 {
            let int = |v: &[(Monomial, C)]| -> Vec<(Monomial, i128)> {
                v.iter().map(|(m, c)| (*m, c.to_exact_i128().expect("checked integral"))).collect()
            };
            // every partial sum is bounded by the product of the L1 norms
            let out = bidegree_product(&int(&p), &int(&q), |x, y| x * y, |acc, v| *acc += v, |v| *v == 0);
            FreePoly { terms: out.into_iter().map(|(m, v)| (m, C::from_i128(v))).collect() }
        } else {
            let out = bidegree_product(
                &p,
                &q,
                |x, y| x.clone() * y.clone(),
                |acc, v| *acc = acc.clone() + v,
                Zero::is_zero,
            );
            FreePoly { terms: out.into_iter().collect() }
        }
    }

    /// `<coefficient> <monomial>` per line in degree-then-lexicographic order;
    /// the constant term is written with monomial `1`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (m, c) in &self.terms {
            writeln!(out, "{c} {m}").expect("write to String");
        }
        out
    }

    /// Reads the output of [`dump`](Self::dump).
    pub fn parse_dump(text: &str) -> Result<Self, EngelError> {
        let mut terms = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let bad = |what: String| EngelError::Parse(format!("line {}: {what}", i + 1));
            let (c, m) = line.split_once(' ').ok_or_else(|| bad("expected `<coefficient> <monomial>`".into()))?;
            let c = C::parse(c).ok_or_else(|| bad(format!("bad coefficient `{c}`")))?;
            let m: Monomial = m.trim().parse().map_err(|e| bad(format!("{e}")))?;
            terms.push((m, c));
        }
        Ok(Self::from_terms(terms))
    }
}

fn accumulate<C: Scalar>(terms: &mut BTreeMap<Monomial, C>, m: Monomial, c: C) {
    if c.is_zero() {
        return;
    }
    match terms.entry(m) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let sum = e.get().clone() + c;
            if sum.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
    }
}

type Bidegree = (usize, usize);

/// Terms of one bidegree, sorted, with the start of the runs of terms
/// beginning with `b` and with `bb`.
struct Bucket<T> {
    terms: Vec<(Monomial, T)>,
    b_start: usize,
    bb_start: usize,
}

fn group_by_bidegree<T: Clone>(v: &[(Monomial, T)]) -> BTreeMap<Bidegree, Bucket<T>> {
    let mut groups: BTreeMap<Bidegree, Vec<(Monomial, T)>> = BTreeMap::new();
    for (m, c) in v {
        groups.entry((m.a_count(), m.b_count())).or_default().push((*m, c.clone()));
    }
    groups
        .into_iter()
        .map(|(d, mut terms)| {
            // equal length, so this is lexicographic with a < b
            terms.sort_by_key(|x| x.0);
            let b_start = terms.partition_point(|(m, _)| m.leading_class() == 0 && !m.is_one());
            let bb_start = terms.partition_point(|(m, _)| m.leading_class() < 2 || m.is_one());
            (d, Bucket { terms, b_start, bb_start })
        })
        .collect()
}

/// Leading letters that define one block of a target bidegree.
const BLOCK_LETTERS: usize = 18;

/// Walks the products of two buckets in increasing order. With a fixed split
/// point, the products are pairwise distinct and ordered p-major, q-minor.
struct Cursor<'a, T> {
    bp: &'a Bucket<T>,
    bq: &'a Bucket<T>,
    q_len: usize,
    pi: usize,
    qi: usize,
    q_end: usize,
}

impl<'a, T> Cursor<'a, T> {
    fn new(bp: &'a Bucket<T>, bq: &'a Bucket<T>, q_len: usize) -> Self {
        let mut c = Cursor { bp, bq, q_len, pi: 0, qi: 0, q_end: 0 };
        c.enter_row();
        c
    }

    /// Sets the `q` range for row `pi`: only factors that do not meet in
    /// `aa` or `bbb`.
    fn enter_row(&mut self) {
        let Some((mp, _)) = self.bp.terms.get(self.pi) else { return };
        let n = self.bq.terms.len();
        let range = if mp.is_one() || self.q_len == 0 {
            0..n
        } else {
            match mp.trailing_class() {
                0 => self.bq.b_start..n,
                1 => 0..self.bq.bb_start,
                _ => 0..self.bq.b_start,
            }
        };
        self.qi = range.start;
        self.q_end = range.end;
    }

    fn settle(&mut self) {
        while self.pi < self.bp.terms.len() && self.qi >= self.q_end {
            self.pi += 1;
            self.enter_row();
        }
    }

    fn high(&self) -> u128 {
        let p = self.bp.terms[self.pi].0.bits();
        if self.q_len == 128 {
            0
        } else {
            p << self.q_len
        }
    }

    fn peek(&mut self) -> Option<u128> {
        self.settle();
        (self.pi < self.bp.terms.len()).then(|| self.high() | self.bq.terms[self.qi].0.bits())
    }

    /// Appends every remaining product with key below `limit`.
    fn drain(&mut self, limit: Option<u128>, mul: &impl Fn(&T, &T) -> T, sink: &mut impl FnMut(u128, T)) {
        loop {
            self.settle();
            if self.pi >= self.bp.terms.len() {
                return;
            }
            let high = self.high();
            let cp = &self.bp.terms[self.pi].1;
            let row = &self.bq.terms[self.qi..self.q_end];
            let last = high | row[row.len() - 1].0.bits();
            if limit.is_none_or(|l| last < l) {
                for (mq, cq) in row {
                    sink(high | mq.bits(), mul(cp, cq));
                }
                self.qi = self.q_end;
                continue;
            }
            let limit = limit.expect("bounded");
            for (mq, cq) in row {
                let key = high | mq.bits();
                if key >= limit {
                    return;
                }
                sink(key, mul(cp, cq));
                self.qi += 1;
            }
        }
    }
}

/// Multiplies term lists one target bidegree at a time.
///
/// Each target is produced block by block, a block being the products that
/// share their first [`BLOCK_LETTERS`] letters; every factor pair contributes
/// a contiguous stretch of its ordered products to each block, so the
/// accumulator only ever holds one block.
fn bidegree_product<T: Clone + Send + Sync>(
    p: &[(Monomial, T)],
    q: &[(Monomial, T)],
    mul: impl Fn(&T, &T) -> T + Sync,
    add: impl Fn(&mut T, T) + Sync,
    is_zero: impl Fn(&T) -> bool + Sync,
) -> Vec<(Monomial, T)> {
    use rayon::prelude::*;

    let gp = group_by_bidegree(p);
    let gq = group_by_bidegree(q);
    let mut targets: BTreeMap<Bidegree, Vec<(Bidegree, Bidegree)>> = BTreeMap::new();
    for &dp in gp.keys() {
        for &dq in gq.keys() {
            targets.entry((dp.0 + dq.0, dp.1 + dq.1)).or_default().push((dp, dq));
        }
    }
    let per_target: Vec<Vec<(Monomial, T)>> = targets
        .into_par_iter()
        .map(|(target, pairs)| {
            let len = target.0 + target.1;
            assert!(len <= MAX_DEGREE, "monomial product of degree {len} exceeds {MAX_DEGREE}");
            let shift = len.saturating_sub(BLOCK_LETTERS);
            let mut cursors: Vec<Cursor<'_, T>> =
                pairs.iter().map(|(dp, dq)| Cursor::new(&gp[dp], &gq[dq], dq.0 + dq.1)).collect();
            let mut out = Vec::new();
            let mut acc: FxHashMap<u128, T> = FxHashMap::default();
            let mut sums: Vec<(u128, T)> = Vec::new();
            while let Some(first) = cursors.iter_mut().filter_map(Cursor::peek).min() {
                let prefix = first >> shift;
                let last_block = prefix + 1 == 1u128 << (len - shift);
                let limit = (!last_block).then(|| (prefix + 1) << shift);
                let mut sink = |key: u128, v: T| match acc.get_mut(&key) {
                    Some(slot) => add(slot, v),
                    None => {
                        acc.insert(key, v);
                    }
                };
                for c in &mut cursors {
                    c.drain(limit, &mul, &mut sink);
                }
                sums.extend(acc.drain().filter(|(_, v)| !is_zero(v)));
                sums.sort_unstable_by_key(|e| e.0);
                out.extend(sums.drain(..).map(|(key, v)| (Monomial::from_raw(len, key), v)));
            }
            out
        })
        .collect();
    let mut out: Vec<(Monomial, T)> = per_target.into_iter().flatten().collect();
    out.sort_by_key(|x| x.0);
    out
}

impl<C: Scalar> fmt::Display for FreePoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let s = c.to_string();
            let (neg, abs) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                f.write_str(&abs)?;
            } else if abs == "1" {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl<C: Scalar> Add for &FreePoly<C> {
    type Output = FreePoly<C>;
    fn add(self, other: &FreePoly<C>) -> FreePoly<C> {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(&mut terms, *m, c.clone());
        }
        FreePoly { terms }
    }
}

impl<C: Scalar> Neg for &FreePoly<C> {
    type Output = FreePoly<C>;
    fn neg(self) -> FreePoly<C> {
        FreePoly { terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect() }
    }
}

impl<C: Scalar> Sub for &FreePoly<C> {
    type Output = FreePoly<C>;
    fn sub(self, other: &FreePoly<C>) -> FreePoly<C> {
        self + &(-other)
    }
}

impl<C: Scalar> Mul for &FreePoly<C> {
    type Output = FreePoly<C>;
    fn mul(self, other: &FreePoly<C>) -> FreePoly<C> {
        self.product_with(other)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl<C: Scalar> $tr for FreePoly<C> {
            type Output = FreePoly<C>;
            fn $f(self, other: FreePoly<C>) -> FreePoly<C> {
                (&self).$f(&other)
            }
        }
        impl<C: Scalar> $tr<&FreePoly<C>> for FreePoly<C> {
            type Output = FreePoly<C>;
            fn $f(self, other: &FreePoly<C>) -> FreePoly<C> {
                (&self).$f(other)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl<C: Scalar> Neg for FreePoly<C> {
    type Output = FreePoly<C>;
    fn neg(self) -> FreePoly<C> {
        -&self
    }
}

/// Product of a list of factors, left to right.
pub fn product<C: Scalar>(factors: &[&FreePoly<C>]) -> FreePoly<C> {
    factors.iter().fold(FreePoly::one(), |acc, f| &acc * *f)
}
