//! Subsets of a brace: raw index sets, additive subgroups and ideals.

use std::collections::VecDeque;
use std::fmt;

use crate::brace::FiniteBrace;
use crate::error::{BraceError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Certification {
    Raw,
    AdditiveSubgroup,
    Ideal,
}

/// A set of elements of `parent`. Members are sorted, unique and contain 0.
#[derive(Clone)]
pub struct BraceSubset<'a> {
    parent: &'a FiniteBrace,
    members: Vec<usize>,
    mask: Vec<bool>,
    certification: Certification,
}

impl fmt::Debug for BraceSubset<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BraceSubset")
            .field("members", &self.members)
            .field("certification", &self.certification)
            .finish()
    }
}

/// Equality compares members only; certification is a proof artifact.
impl PartialEq for BraceSubset<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for BraceSubset<'_> {}

impl<'a> BraceSubset<'a> {
    fn from_mask(parent: &'a FiniteBrace, mask: Vec<bool>, certification: Certification) -> Self {
        let members = (0..mask.len()).filter(|&i| mask[i]).collect();
        BraceSubset { parent, members, mask, certification }
    }

    /// An uncertified subset; 0 is added if missing.
    pub fn raw(parent: &'a FiniteBrace, elements: &[usize]) -> Result<Self> {
        let mut mask = vec![false; parent.order()];
        mask[0] = true;
        for &x in elements {
            *mask.get_mut(x).ok_or(BraceError::ElementOutOfRange(x))? = true;
        }
        Ok(Self::from_mask(parent, mask, Certification::Raw))
    }

    pub fn zero(parent: &'a FiniteBrace) -> Self {
        let mut mask = vec![false; parent.order()];
        mask[0] = true;
        Self::from_mask(parent, mask, Certification::Ideal)
    }

    pub fn whole(parent: &'a FiniteBrace) -> Self {
        Self::from_mask(parent, vec![true; parent.order()], Certification::Ideal)
    }

    /// Additive subgroup generated by `generators`, by breadth-first closure.
    pub fn additive_span(parent: &'a FiniteBrace, generators: &[usize]) -> Result<Self> {
        if let Some(&x) = generators.iter().find(|&&x| x >= parent.order()) {
            return Err(BraceError::ElementOutOfRange(x));
        }
        Ok(span_from_mask(parent, generators.iter().copied()))
    }

    pub fn parent(&self) -> &'a FiniteBrace {
        self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn certification(&self) -> Certification {
        self.certification
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.mask.get(x).copied().unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    /// Never true: 0 is always a member. Provided for API symmetry.
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.members.len() == self.parent.order()
    }

    pub fn is_subset_of(&self, other: &BraceSubset<'_>) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub(crate) fn same_parent(&self, other: &BraceSubset<'_>) -> Result<()> {
        if std::ptr::eq(self.parent, other.parent) || self.parent == other.parent {
            Ok(())
        } else {
            Err(BraceError::DifferentParents)
        }
    }

    fn subgroup_defect(&self) -> Option<String> {
        let p = self.parent;
        for &x in &self.members {
            if !self.contains(p.neg(x)) {
                return Some(format!("-{x} missing"));
            }
            for &y in &self.members {
                if !self.contains(p.add(x, y)) {
                    return Some(format!("{x} + {y} missing"));
                }
            }
        }
        None
    }

    pub fn certify_subgroup(mut self) -> Result<Self> {
        if self.certification >= Certification::AdditiveSubgroup {
            return Ok(self);
        }
        if let Some(why) = self.subgroup_defect() {
            return Err(BraceError::NotAnIdeal(format!("not an additive subgroup: {why}")));
        }
        self.certification = Certification::AdditiveSubgroup;
        Ok(self)
    }

    /// Full ideal test: additive subgroup, two-sided absorption under `·`,
    /// closure under `∘` and normality in the adjoint group.
    pub fn certify_ideal(mut self) -> Result<Self> {
        if self.certification == Certification::Ideal {
            return Ok(self);
        }
        if let Some(why) = self.ideal_defect() {
            return Err(BraceError::NotAnIdeal(why));
        }
        self.certification = Certification::Ideal;
        Ok(self)
    }

    pub fn is_ideal(&self) -> bool {
        self.certification == Certification::Ideal || self.ideal_defect().is_none()
    }

    fn ideal_defect(&self) -> Option<String> {
        if let Some(why) = self.subgroup_defect() {
            return Some(format!("not an additive subgroup: {why}"));
        }
        let p = self.parent;
        for &i in &self.members {
            for a in p.elements() {
                if !self.contains(p.mul(a, i)) {
                    return Some(format!("{a}·{i} missing"));
                }
                if !self.contains(p.mul(i, a)) {
                    return Some(format!("{i}·{a} missing"));
                }
                let conj = p.circle(p.circle(a, i), p.adjoint_inverse(a));
                if !self.contains(conj) {
                    return Some(format!("conjugate of {i} by {a} missing"));
                }
            }
            for &j in &self.members {
                if !self.contains(p.circle(i, j)) {
                    return Some(format!("{i}∘{j} missing"));
                }
            }
        }
        None
    }
}

/// Breadth-first additive closure of the seed elements.
pub(crate) fn span_from_mask<'a>(
    parent: &'a FiniteBrace,
    seeds: impl IntoIterator<Item = usize>,
) -> BraceSubset<'a> {
    let n = parent.order();
    let mut mask = vec![false; n];
    mask[0] = true;
    let mut gens = Vec::new();
    for s in seeds {
        if !gens.contains(&s) && s != 0 {
            gens.push(s);
        }
    }
    let mut queue: VecDeque<usize> = VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        for &g in &gens {
            let y = parent.add(x, g);
            if !mask[y] {
                mask[y] = true;
                queue.push_back(y);
            }
        }
    }
    // In a finite group the monoid generated by `gens` is already the subgroup.
    BraceSubset::from_mask(parent, mask, Certification::AdditiveSubgroup)
}

impl fmt::Display for BraceSubset<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.members.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::tests::even_residues_mod_16;

    #[test]
    fn span_of_two_in_z8() {
        let b = FiniteBrace::trivial_cyclic(8);
        let s = BraceSubset::additive_span(&b, &[2]).unwrap();
        assert_eq!(s.members(), &[0, 2, 4, 6]);
        assert_eq!(s.certification(), Certification::AdditiveSubgroup);
        assert!(BraceSubset::additive_span(&b, &[9]).is_err());
    }

    #[test]
    fn raw_subset_always_contains_zero() {
        let b = FiniteBrace::trivial_cyclic(4);
        let s = BraceSubset::raw(&b, &[3, 3]).unwrap();
        assert_eq!(s.members(), &[0, 3]);
        assert!(s.clone().certify_subgroup().is_err());
        assert!(BraceSubset::raw(&b, &[1, 2, 3]).unwrap().certify_ideal().is_ok());
    }

    #[test]
    fn ideals_of_a_ring_brace() {
        let b = even_residues_mod_16();
        // 2Z/16 ⊃ 4Z/16: the even labels form an ideal (they are multiples of 4 in the ring).
        let evens = BraceSubset::additive_span(&b, &[2]).unwrap();
        assert!(evens.is_ideal());
        let c = evens.certify_ideal().unwrap();
        assert_eq!(c.certification(), Certification::Ideal);
        assert!(BraceSubset::zero(&b).is_ideal());
        assert!(BraceSubset::whole(&b).is_ideal());
    }

    #[test]
    fn different_parents_detected() {
        let b1 = FiniteBrace::trivial_cyclic(4);
        let b2 = FiniteBrace::trivial_cyclic(6);
        let s1 = BraceSubset::zero(&b1);
        let s2 = BraceSubset::zero(&b2);
        assert_eq!(s1.same_parent(&s2), Err(BraceError::DifferentParents));
    }
}
