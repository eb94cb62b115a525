//! The radical chains `A^n`, `A^(n)`, `A^[n]`, the socle, and two
//! expansion identities for `(a+b)c`.
//!
//! Chain terms are reported with 1-based indices: `term(1)` is `A` itself.

use std::fmt;
use std::str::FromStr;

use crate::brace::FiniteBrace;
use crate::error::{BraceError, Result};
use crate::subset::{span_from_mask, BraceSubset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SeriesKind {
    /// `A^{n+1} = A·A^n`
    LeftPowers,
    /// `A^{(n+1)} = A^{(n)}·A`
    RightPowers,
    /// `A^{[n+1]} = Σ_{i=1}^{n} A^{[i]}·A^{[n+1-i]}`
    Bracket,
}

impl SeriesKind {
    pub const ALL: [SeriesKind; 3] = [SeriesKind::LeftPowers, SeriesKind::RightPowers, SeriesKind::Bracket];

    /// The kind computing the same sets on the opposite brace.
    pub fn mirrored(self) -> Self {
        match self {
            SeriesKind::LeftPowers => SeriesKind::RightPowers,
            SeriesKind::RightPowers => SeriesKind::LeftPowers,
            SeriesKind::Bracket => SeriesKind::Bracket,
        }
    }
}

impl fmt::Display for SeriesKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SeriesKind::LeftPowers => "left",
            SeriesKind::RightPowers => "right",
            SeriesKind::Bracket => "bracket",
        })
    }
}

impl FromStr for SeriesKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "left" => Ok(SeriesKind::LeftPowers),
            "right" => Ok(SeriesKind::RightPowers),
            "bracket" => Ok(SeriesKind::Bracket),
            other => Err(format!("unknown series kind `{other}` (expected left, right or bracket)")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SeriesChain<'a> {
    kind: SeriesKind,
    terms: Vec<BraceSubset<'a>>,
    vanishes_at: Option<usize>,
}

impl<'a> SeriesChain<'a> {
    pub fn kind(&self) -> SeriesKind {
        self.kind
    }

    /// Distinct computed terms; `terms()[k]` is term index `k + 1`.
    /// The last entry repeats forever.
    pub fn terms(&self) -> &[BraceSubset<'a>] {
        &self.terms
    }

    /// Term with 1-based index `index`; indices past the computed range
    /// return the stable tail.
    pub fn term(&self, index: usize) -> &BraceSubset<'a> {
        assert!(index >= 1, "chain indices start at 1");
        &self.terms[(index - 1).min(self.terms.len() - 1)]
    }

    pub fn vanishes_at(&self) -> Option<usize> {
        self.vanishes_at
    }

    pub fn vanishes(&self) -> bool {
        self.vanishes_at.is_some()
    }

    /// The nonzero limit of a chain that never vanishes.
    pub fn stable_term(&self) -> &BraceSubset<'a> {
        self.terms.last().expect("chains have at least one term")
    }
}

/// Additive subgroup generated by all products `c·d`.
pub fn product_span<'a>(c: &BraceSubset<'a>, d: &BraceSubset<'a>) -> Result<BraceSubset<'a>> {
    c.same_parent(d)?;
    let p = c.parent();
    Ok(products_span(p, std::iter::once((c, d))))
}

fn products_span<'a, 'b>(
    p: &'a FiniteBrace,
    pairs: impl Iterator<Item = (&'b BraceSubset<'a>, &'b BraceSubset<'a>)>,
) -> BraceSubset<'a>
where
    'a: 'b,
{
    let mut seen = vec![false; p.order()];
    for (c, d) in pairs {
        for &x in c.members() {
            for &y in d.members() {
                seen[p.mul(x, y)] = true;
            }
        }
    }
    span_from_mask(p, (0..p.order()).filter(|&x| seen[x]))
}

fn certify(term: BraceSubset<'_>) -> BraceSubset<'_> {
    match term.clone().certify_ideal() {
        Ok(t) => t,
        Err(_) => term,
    }
}

/// Computes a chain directly from its definition; both chiralities are
/// accepted. Stops at `{0}` or once the chain provably stabilises.
pub fn chain(brace: &FiniteBrace, kind: SeriesKind) -> SeriesChain<'_> {
    let whole = BraceSubset::whole(brace);
    let mut raw: Vec<BraceSubset<'_>> = vec![whole.clone()];
    // run_start: term index where the current run of equal terms began
    let mut run_start = 1;
    loop {
        let last = raw.last().expect("non-empty");
        if last.is_zero() {
            break;
        }
        let next = match kind {
            SeriesKind::LeftPowers => products_span(brace, std::iter::once((&whole, last))),
            SeriesKind::RightPowers => products_span(brace, std::iter::once((last, &whole))),
            SeriesKind::Bracket => {
                let m = raw.len();
                products_span(brace, (0..m).map(|i| (&raw[i], &raw[m - 1 - i])))
            }
        };
        let index = raw.len() + 1;
        if next == *last {
            // One repeat fixes the one-sided chains. The bracket term depends
            // on all earlier terms; equality on k..2k forces every later term.
            let stable = match kind {
                SeriesKind::Bracket => index >= 2 * run_start,
                _ => true,
            };
            raw.push(next);
            if stable {
                break;
            }
        } else {
            run_start = index;
            raw.push(next);
        }
    }
    while raw.len() >= 2 && raw[raw.len() - 1] == raw[raw.len() - 2] {
        raw.pop();
    }
    let vanishes_at = raw.last().filter(|t| t.is_zero()).map(|_| raw.len());
    let terms = raw.into_iter().map(certify).collect();
    SeriesChain { kind, terms, vanishes_at }
}

/// `{x : x·a = 0 for all a}`.
pub fn socle(brace: &FiniteBrace) -> Result<BraceSubset<'_>> {
    brace.require_left()?;
    let members: Vec<usize> = brace
        .elements()
        .filter(|&x| brace.elements().all(|a| brace.mul(x, a) == 0))
        .collect();
    BraceSubset::raw(brace, &members)?
        .certify_ideal()
        .map_err(|e| BraceError::Internal(format!("socle failed the ideal test: {e}")))
}

/// The `d_i, d_i'` sequences and both sides of the expansion of `(a+b)c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FajnyTrace {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: Vec<usize>,
    pub d_prime: Vec<usize>,
    /// `Σ_{i=0}^{2s} (-1)^{i+1} ((d_i d_i')c - d_i(d_i' c))`
    pub correction: usize,
    pub lhs: usize,
    pub rhs: usize,
    /// Whether `d_i' ∈ A^i` held for every `i` (with `A^0 = A`).
    pub memberships_hold: bool,
}

pub fn fajny_check(brace: &FiniteBrace, a: usize, b: usize, c: usize) -> Result<(FajnyTrace, bool)> {
    brace.require_left()?;
    let left = chain(brace, SeriesKind::LeftPowers);
    fajny_check_in(&left, a, b, c)
}

/// As [`fajny_check`] with a precomputed `LeftPowers` chain.
pub fn fajny_check_in(left: &SeriesChain<'_>, a: usize, b: usize, c: usize) -> Result<(FajnyTrace, bool)> {
    if left.kind() != SeriesKind::LeftPowers {
        return Err(BraceError::Internal("fajny_check_in needs the LeftPowers chain".into()));
    }
    let p = left.stable_term().parent();
    p.require_left()?;
    for x in [a, b, c] {
        if x >= p.order() {
            return Err(BraceError::ElementOutOfRange(x));
        }
    }
    let s = left.vanishes_at().ok_or(BraceError::NotLeftNilpotent)?;
    let mut d = vec![a];
    let mut d_prime = vec![b];
    for i in 0..2 * s {
        d.push(p.add(d[i], d_prime[i]));
        d_prime.push(p.mul(d[i], d_prime[i]));
    }
    let memberships_hold = d_prime.iter().enumerate().all(|(i, &x)| left.term(i.max(1)).contains(x));
    let mut correction = 0;
    for i in 0..=2 * s {
        let term = p.sub(p.mul(p.mul(d[i], d_prime[i]), c), p.mul(d[i], p.mul(d_prime[i], c)));
        correction = if i % 2 == 1 { p.add(correction, term) } else { p.sub(correction, term) };
    }
    let lhs = p.mul(p.add(a, b), c);
    let rhs = p.add(p.add(p.mul(a, c), p.mul(b, c)), correction);
    let ok = lhs == rhs && memberships_hold;
    Ok((FajnyTrace { a, b, c, d, d_prime, correction, lhs, rhs, memberships_hold }, ok))
}

/// True iff `(a+b)c - ac - bc ∈ A^[i+j+k]` for `a ∈ A^[i]`, `b ∈ A^[j]`, `c ∈ A^[k]`.
#[allow(clippy::too_many_arguments)]
pub fn theorem222_defect(
    brace: &FiniteBrace,
    a: usize,
    b: usize,
    c: usize,
    i: usize,
    j: usize,
    k: usize,
) -> Result<bool> {
    let bracket = chain(brace, SeriesKind::Bracket);
    theorem222_defect_in(&bracket, a, b, c, i, j, k)
}

/// As [`theorem222_defect`] with a precomputed `Bracket` chain.
pub fn theorem222_defect_in(
    bracket: &SeriesChain<'_>,
    a: usize,
    b: usize,
    c: usize,
    i: usize,
    j: usize,
    k: usize,
) -> Result<bool> {
    if bracket.kind() != SeriesKind::Bracket {
        return Err(BraceError::Internal("theorem222_defect_in needs the Bracket chain".into()));
    }
    if !bracket.vanishes() {
        return Err(BraceError::NotBracketNilpotent);
    }
    let p = bracket.stable_term().parent();
    for (x, idx) in [(a, i), (b, j), (c, k)] {
        if x >= p.order() {
            return Err(BraceError::ElementOutOfRange(x));
        }
        if idx == 0 || !bracket.term(idx).contains(x) {
            return Err(BraceError::MembershipViolation { element: x, index: idx });
        }
    }
    let defect = p.sub(p.sub(p.mul(p.add(a, b), c), p.mul(a, c)), p.mul(b, c));
    Ok(bracket.term(i + j + k).contains(defect))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::tests::even_residues_mod_16;
    use crate::subset::Certification;

    #[test]
    fn trivial_brace_chains_vanish_at_two() {
        let b = FiniteBrace::trivial_cyclic(4);
        for kind in SeriesKind::ALL {
            let ch = chain(&b, kind);
            assert_eq!(ch.vanishes_at(), Some(2), "{kind}");
            assert!(ch.term(1).is_whole());
        }
        let one = FiniteBrace::trivial_cyclic(1);
        assert_eq!(chain(&one, SeriesKind::Bracket).vanishes_at(), Some(1));
    }

    #[test]
    fn ring_powers() {
        // 2Z/16: (2Z)^k = 2^k Z, so A^2 = 4Z/16 (labels 0,2,4,6), A^3 = 8Z/16, A^4 = 0
        let b = even_residues_mod_16();
        for kind in SeriesKind::ALL {
            let ch = chain(&b, kind);
            assert_eq!(ch.vanishes_at(), Some(4));
            assert_eq!(ch.term(2).members(), &[0, 2, 4, 6]);
            assert_eq!(ch.term(3).members(), &[0, 4]);
            assert!(ch.terms().iter().all(|t| t.certification() == Certification::Ideal));
        }
    }

    #[test]
    fn product_span_basics() {
        let b = even_residues_mod_16();
        let whole = BraceSubset::whole(&b);
        let zero = BraceSubset::zero(&b);
        assert!(product_span(&whole, &zero).unwrap().is_zero());
        let t = FiniteBrace::trivial_cyclic(3);
        let tw = BraceSubset::whole(&t);
        assert!(product_span(&tw, &tw).unwrap().is_zero());
        assert_eq!(product_span(&whole, &tw), Err(BraceError::DifferentParents));
    }

    #[test]
    fn socle_of_trivial_brace_is_everything() {
        let t = FiniteBrace::trivial_cyclic(5);
        assert!(socle(&t).unwrap().is_whole());
        let b = even_residues_mod_16();
        // x·a = 2xa ≡ 0 (mod 8) for all a iff 4 | x
        assert_eq!(socle(&b).unwrap().members(), &[0, 4]);
        assert!(socle(&b.opposite()).is_err());
    }

    #[test]
    fn fajny_on_trivial_and_zero_inputs() {
        let t = FiniteBrace::trivial_cyclic(4);
        let (trace, ok) = fajny_check(&t, 1, 2, 3).unwrap();
        assert!(ok);
        assert_eq!(trace.correction, 0);
        let b = even_residues_mod_16();
        for x in b.elements() {
            for y in b.elements() {
                let (tr, ok) = fajny_check(&b, 0, x, y).unwrap();
                assert!(ok);
                assert_eq!(tr.lhs, b.mul(x, y));
            }
        }
    }

    #[test]
    fn theorem222_on_ring() {
        let b = even_residues_mod_16();
        let br = chain(&b, SeriesKind::Bracket);
        assert!(theorem222_defect_in(&br, 1, 1, 1, 1, 1, 1).unwrap());
        assert_eq!(
            theorem222_defect_in(&br, 1, 1, 1, 2, 1, 1),
            Err(BraceError::MembershipViolation { element: 1, index: 2 })
        );
        assert!(theorem222_defect(&FiniteBrace::trivial_cyclic(3), 1, 2, 1, 1, 1, 1).unwrap());
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("bracket".parse::<SeriesKind>().unwrap(), SeriesKind::Bracket);
        assert!("up".parse::<SeriesKind>().is_err());
        assert_eq!(SeriesKind::LeftPowers.mirrored(), SeriesKind::RightPowers);
    }
}
