//! Atoms and finite permutations.
//!
//! Atoms are drawn from a single global, totally ordered, countably infinite
//! alphabet indexed by `u32`. Freshness is always "least unused index", which
//! makes every downstream operation deterministic. Permutations are stored as
//! canonical finite maps: the map covers exactly the atoms moved non-trivially,
//! so structural equality coincides with pointwise equality.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// A name from the global alphabet. Two atoms are equal iff their indices are.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(pub u32);

impl Atom {
    pub fn index(self) -> u32 {
        self.0
    }

    /// Display name: indices 0..26 map to `a`..`z`, then `a1`, `b1`, ... `z1`, `a2`, ...
    pub fn name(self) -> String {
        let letter = (b'a' + (self.0 % 26) as u8) as char;
        let round = self.0 / 26;
        if round == 0 {
            letter.to_string()
        } else {
            format!("{letter}{round}")
        }
    }

    /// Inverse of [`Atom::name`]. Accepts a lowercase letter with an optional
    /// decimal suffix.
    pub fn parse(s: &str) -> Option<Atom> {
        let mut chars = s.chars();
        let letter = chars.next()?;
        if !letter.is_ascii_lowercase() {
            return None;
        }
        let rest = chars.as_str();
        let round = if rest.is_empty() {
            0
        } else {
            if !rest.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            rest.parse::<u32>().ok()?
        };
        Some(Atom(round * 26 + (letter as u32 - 'a' as u32)))
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// The least atom outside `avoid`. Gaps are reused.
pub fn fresh_atom(avoid: &BTreeSet<Atom>) -> Atom {
    let mut candidate = 0u32;
    for a in avoid {
        if a.0 == candidate {
            candidate += 1;
        } else if a.0 > candidate {
            break;
        }
    }
    Atom(candidate)
}

/// The least atom outside the union of the given sets.
pub fn fresh_atom_for(avoid: &[&BTreeSet<Atom>]) -> Atom {
    let mut all = BTreeSet::new();
    for set in avoid {
        all.extend(set.iter().copied());
    }
    fresh_atom(&all)
}

/// A finite permutation of atoms, stored as a canonical map over its
/// non-trivially moved atoms. The stored map is a bijection whose domain
/// equals its range, and never contains identity entries.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Perm {
    mapping: BTreeMap<Atom, Atom>,
}

impl Perm {
    pub fn identity() -> Perm {
        Perm::default()
    }

    /// The transposition exchanging `a` and `b`; `swap(a, a)` is the identity.
    pub fn swap(a: Atom, b: Atom) -> Perm {
        let mut mapping = BTreeMap::new();
        if a != b {
            mapping.insert(a, b);
            mapping.insert(b, a);
        }
        Perm { mapping }
    }

    /// Build from an explicit map, dropping identity entries. Returns `None`
    /// if the map is not a bijection from its domain onto its domain.
    pub fn from_map(map: BTreeMap<Atom, Atom>) -> Option<Perm> {
        let mapping: BTreeMap<Atom, Atom> =
            map.into_iter().filter(|(a, b)| a != b).collect();
        let domain: BTreeSet<Atom> = mapping.keys().copied().collect();
        let range: BTreeSet<Atom> = mapping.values().copied().collect();
        if domain != range {
            return None;
        }
        Some(Perm { mapping })
    }

    pub fn is_identity(&self) -> bool {
        self.mapping.is_empty()
    }

    pub fn apply(&self, a: Atom) -> Atom {
        self.mapping.get(&a).copied().unwrap_or(a)
    }

    /// The atoms moved non-trivially.
    pub fn moved(&self) -> BTreeSet<Atom> {
        self.mapping.keys().copied().collect()
    }

    /// Composition: `self.compose(other)` maps `a` to `self(other(a))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        let mut mapping = BTreeMap::new();
        let mut domain: BTreeSet<Atom> = self.mapping.keys().copied().collect();
        domain.extend(other.mapping.keys().copied());
        for a in domain {
            let image = self.apply(other.apply(a));
            if image != a {
                mapping.insert(a, image);
            }
        }
        Perm { mapping }
    }

    pub fn invert(&self) -> Perm {
        let mapping = self.mapping.iter().map(|(a, b)| (*b, *a)).collect();
        Perm { mapping }
    }
}

impl fmt::Display for Perm {
    /// Cycle notation, e.g. `(a b)(c d e)`; the identity prints as `id`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "id");
        }
        let mut seen = BTreeSet::new();
        for start in self.mapping.keys() {
            if seen.contains(start) {
                continue;
            }
            let mut cycle = vec![*start];
            seen.insert(*start);
            let mut next = self.apply(*start);
            while next != *start {
                cycle.push(next);
                seen.insert(next);
                next = self.apply(next);
            }
            write!(f, "(")?;
            for (i, a) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{a}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn at(i: u32) -> Atom {
        Atom(i)
    }

    #[test]
    fn fresh_atom_least_index() {
        assert_eq!(fresh_atom(&BTreeSet::new()), at(0));
        assert_eq!(fresh_atom(&[at(0), at(1)].into_iter().collect()), at(2));
        // gaps are reused
        assert_eq!(fresh_atom(&[at(1)].into_iter().collect()), at(0));
        assert_eq!(fresh_atom(&[at(0), at(2)].into_iter().collect()), at(1));
    }

    #[test]
    fn atom_names_round_trip() {
        assert_eq!(at(0).name(), "a");
        assert_eq!(at(25).name(), "z");
        assert_eq!(at(26).name(), "a1");
        assert_eq!(at(27).name(), "b1");
        assert_eq!(at(52).name(), "a2");
        for i in 0..200 {
            assert_eq!(Atom::parse(&at(i).name()), Some(at(i)));
        }
        assert_eq!(Atom::parse("A"), None);
        assert_eq!(Atom::parse("a-1"), None);
        assert_eq!(Atom::parse(""), None);
    }

    #[test]
    fn swap_defining_cases() {
        let (a, b, c) = (at(0), at(1), at(2));
        let s = Perm::swap(a, b);
        assert_eq!(s.apply(a), b);
        assert_eq!(s.apply(b), a);
        assert_eq!(s.apply(c), c);
        assert!(Perm::swap(a, a).is_identity());
    }

    #[test]
    fn compose_and_invert() {
        let (a, b, c) = (at(0), at(1), at(2));
        let ab = Perm::swap(a, b);
        let bc = Perm::swap(b, c);
        assert!(ab.compose(&ab).is_identity());
        assert_eq!(Perm::identity().compose(&bc), bc);
        assert_eq!(bc.compose(&Perm::identity()), bc);
        // pointwise oracle for a composite
        let pi = ab.compose(&bc); // maps x to ab(bc(x))
        for x in [a, b, c, at(7)] {
            assert_eq!(pi.apply(x), ab.apply(bc.apply(x)));
        }
        assert!(Perm::invert(&Perm::identity()).is_identity());
        assert_eq!(ab.invert(), ab);
        assert!(pi.compose(&pi.invert()).is_identity());
        assert!(pi.invert().compose(&pi).is_identity());
    }

    #[test]
    fn canonical_form_no_identity_entries() {
        let mut m = BTreeMap::new();
        m.insert(at(0), at(0));
        m.insert(at(1), at(2));
        m.insert(at(2), at(1));
        let p = Perm::from_map(m).unwrap();
        assert_eq!(p, Perm::swap(at(1), at(2)));
        // non-bijective map rejected
        let mut bad = BTreeMap::new();
        bad.insert(at(0), at(1));
        assert!(Perm::from_map(bad).is_none());
    }
}
