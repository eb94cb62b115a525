use std::fmt;

use crate::abelian::AbelianType;
use crate::brace::{Chirality, FiniteBrace};
use crate::error::{BraceError, Result};
use crate::group::{adjoint_group, is_nilpotent};
use crate::iso::canonical_form;
use crate::series::{chain, SeriesKind};
use crate::ybe::{multipermutation_level, solution_from_brace, MultipermutationLevel};

/// Everything the catalog records about a brace. All fields are recomputed
/// from the tables by [`Invariants::of`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants {
    pub order: usize,
    pub chirality: Chirality,
    pub additive_type: AbelianType,
    pub adjoint_nilpotent: bool,
    /// Nilpotency class; `None` when the adjoint group is not nilpotent.
    pub adjoint_class: Option<usize>,
    pub left_vanishes_at: Option<usize>,
    pub right_vanishes_at: Option<usize>,
    pub bracket_vanishes_at: Option<usize>,
    /// Only defined for left braces.
    pub multipermutation_level: Option<MultipermutationLevel>,
    pub two_sided: bool,
}

impl Invariants {
    pub fn of(brace: &FiniteBrace) -> Result<Self> {
        let (nilpotent, class) = is_nilpotent(&adjoint_group(brace));
        let mpl = match brace.chirality() {
            Chirality::Left => Some(multipermutation_level(&solution_from_brace(brace)?)?),
            Chirality::Right => None,
        };
        Ok(Invariants {
            order: brace.order(),
            chirality: brace.chirality(),
            additive_type: AbelianType::of_table(brace.order(), brace.add_table()),
            adjoint_nilpotent: nilpotent,
            adjoint_class: nilpotent.then_some(class),
            left_vanishes_at: chain(brace, SeriesKind::LeftPowers).vanishes_at(),
            right_vanishes_at: chain(brace, SeriesKind::RightPowers).vanishes_at(),
            bracket_vanishes_at: chain(brace, SeriesKind::Bracket).vanishes_at(),
            multipermutation_level: mpl,
            two_sided: brace.is_two_sided(),
        })
    }
}

fn opt(v: Option<usize>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

impl fmt::Display for Invariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let adjoint = match self.adjoint_class {
            Some(c) => format!("nilpotent:{c}"),
            None => "non-nilpotent".to_string(),
        };
        let mpl = match self.multipermutation_level {
            Some(MultipermutationLevel::Level(m)) => m.to_string(),
            Some(MultipermutationLevel::NotMultipermutation) => "inf".to_string(),
            None => "-".to_string(),
        };
        write!(
            f,
            "order={} chirality={} additive={} adjoint={} left={} right={} bracket={} mpl={} two_sided={}",
            self.order,
            self.chirality,
            self.additive_type,
            adjoint,
            opt(self.left_vanishes_at),
            opt(self.right_vanishes_at),
            opt(self.bracket_vanishes_at),
            mpl,
            if self.two_sided { "yes" } else { "no" },
        )
    }
}

/// A catalogued brace: its file name, invariants and canonical fingerprint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub file: String,
    pub brace: FiniteBrace,
    pub invariants: Invariants,
    pub fingerprint: String,
}

impl CatalogEntry {
    pub fn new(file: String, brace: FiniteBrace) -> Result<Self> {
        let invariants = Invariants::of(&brace)?;
        let fingerprint = canonical_form(&brace).fingerprint();
        Ok(CatalogEntry { file, brace, invariants, fingerprint })
    }

    /// The line stored in the catalog index.
    pub fn index_line(&self) -> String {
        format!("{} {} fingerprint={}", self.file, self.invariants, self.fingerprint)
    }

    /// Splits an index line into its file name and the remainder.
    pub fn split_index_line(line: &str) -> Result<(&str, &str)> {
        line.split_once(' ')
            .ok_or_else(|| BraceError::MalformedTable(format!("bad index line `{line}`")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_invariants_line() {
        let e = CatalogEntry::new("t.brace".into(), FiniteBrace::trivial_cyclic(4)).unwrap();
        let line = e.index_line();
        assert!(line.starts_with(
            "t.brace order=4 chirality=left additive=Z4 adjoint=nilpotent:1 left=2 right=2 bracket=2 mpl=1 two_sided=yes fingerprint="
        ), "{line}");
        let (file, rest) = CatalogEntry::split_index_line(&line).unwrap();
        assert_eq!(file, "t.brace");
        assert!(rest.starts_with("order=4"));
    }

    #[test]
    fn right_braces_have_no_level() {
        let inv = Invariants::of(&FiniteBrace::trivial_cyclic(3).opposite()).unwrap();
        assert_eq!(inv.multipermutation_level, None);
        assert!(inv.to_string().contains("mpl=-"));
    }
}
