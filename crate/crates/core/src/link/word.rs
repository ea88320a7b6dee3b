//! Words in the free group on `a`, `b`. Inverses are written `A`, `B`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    A,
    AInv,
    B,
    BInv,
}

impl Letter {
    pub fn inverse(self) -> Letter {
        match self {
            Letter::A => Letter::AInv,
            Letter::AInv => Letter::A,
            Letter::B => Letter::BInv,
            Letter::BInv => Letter::B,
        }
    }

    /// Generator index (0 for `a`, 1 for `b`) and exponent.
    pub fn generator(self) -> (usize, i64) {
        match self {
            Letter::A => (0, 1),
            Letter::AInv => (0, -1),
            Letter::B => (1, 1),
            Letter::BInv => (1, -1),
        }
    }

    pub fn from_generator(gen: usize, positive: bool) -> Letter {
        match (gen, positive) {
            (0, true) => Letter::A,
            (0, false) => Letter::AInv,
            (_, true) => Letter::B,
            (_, false) => Letter::BInv,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::AInv => 'A',
            Letter::B => 'b',
            Letter::BInv => 'B',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid letter `{0}`; expected one of a, A, b, B")]
pub struct ParseWordError(pub char);

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct FreeWord(pub Vec<Letter>);

impl FreeWord {
    pub fn empty() -> Self {
        FreeWord(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1].inverse())
    }

    /// Free reduction.
    pub fn reduced(&self) -> FreeWord {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        FreeWord(out)
    }

    /// Free reduction followed by cancelling inverse letters at the two ends.
    pub fn cyclically_reduced(&self) -> FreeWord {
        let w = self.reduced().0;
        let (mut i, mut j) = (0, w.len());
        while j - i >= 2 && w[i] == w[j - 1].inverse() {
            i += 1;
            j -= 1;
        }
        FreeWord(w[i..j].to_vec())
    }

    /// Least rotation of the cyclic reduction; equal for conjugate words.
    pub fn canonical_cyclic(&self) -> FreeWord {
        let w = self.cyclically_reduced().0;
        (0..w.len().max(1))
            .map(|r| {
                let mut v = w[r.min(w.len())..].to_vec();
                v.extend_from_slice(&w[..r.min(w.len())]);
                FreeWord(v)
            })
            .min()
            .unwrap_or_default()
    }

    pub fn is_conjugate(&self, other: &FreeWord) -> bool {
        self.canonical_cyclic() == other.canonical_cyclic()
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &FreeWord) -> FreeWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        FreeWord(v)
    }

    pub fn map_letters(&self, f: impl Fn(Letter) -> Letter) -> FreeWord {
        FreeWord(self.0.iter().map(|&l| f(l)).collect())
    }

    pub fn swap_generators(&self) -> FreeWord {
        self.map_letters(|l| {
            let (g, e) = l.generator();
            Letter::from_generator(1 - g, e > 0)
        })
    }

    pub fn invert_generator(&self, gen: usize) -> FreeWord {
        self.map_letters(|l| if l.generator().0 == gen { l.inverse() } else { l })
    }

    /// Exponent sums `(#a − #A, #b − #B)`, the image in Z².
    pub fn abelianization(&self) -> (i64, i64) {
        self.0.iter().fold((0, 0), |(x, y), l| match l.generator() {
            (0, e) => (x + e, y),
            (_, e) => (x, y + e),
        })
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|l| write!(f, "{}", l.to_char()))
    }
}

impl FromStr for FreeWord {
    type Err = ParseWordError;

    /// Whitespace is ignored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                'a' => Ok(Letter::A),
                'A' => Ok(Letter::AInv),
                'b' => Ok(Letter::B),
                'B' => Ok(Letter::BInv),
                other => Err(ParseWordError(other)),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(FreeWord)
    }
}

impl Serialize for FreeWord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FreeWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Canonical cyclic forms of `abAB` under swapping `a ↔ b`, inverting either
/// generator, and inverting the word.
pub fn commutator_orbit() -> BTreeSet<FreeWord> {
    let base: FreeWord = "abAB".parse().unwrap();
    let mut out = BTreeSet::new();
    for swap in [false, true] {
        for inv_a in [false, true] {
            for inv_b in [false, true] {
                for inv_word in [false, true] {
                    let mut w = base.clone();
                    if swap {
                        w = w.swap_generators();
                    }
                    if inv_a {
                        w = w.invert_generator(0);
                    }
                    if inv_b {
                        w = w.invert_generator(1);
                    }
                    if inv_word {
                        w = w.inverse();
                    }
                    out.insert(w.canonical_cyclic());
                }
            }
        }
    }
    out
}

pub fn is_commutator_class(word: &FreeWord) -> bool {
    commutator_orbit().contains(&word.canonical_cyclic())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> FreeWord {
        s.parse().unwrap()
    }

    #[test]
    fn reduction() {
        assert_eq!(w("aAbBba").reduced(), w("ba"));
        assert_eq!(w("abBA").reduced(), FreeWord::empty());
        assert_eq!(w("baAB").reduced(), FreeWord::empty());
        assert_eq!(w("Abab a").cyclically_reduced(), w("bab"));
        assert!(w("abAB").is_reduced());
        assert!(!w("abBa").is_reduced());
    }

    #[test]
    fn conjugacy() {
        assert!(w("abAB").is_conjugate(&w("bABa")));
        assert!(w("abAB").is_conjugate(&w("BabAB b")));
        assert!(!w("ab").is_conjugate(&w("ba").inverse()));
        assert_eq!(FreeWord::empty().canonical_cyclic(), FreeWord::empty());
    }

    #[test]
    fn commutator_detection() {
        assert!(is_commutator_class(&w("abAB")));
        assert!(is_commutator_class(&w("bABa")));
        assert!(is_commutator_class(&w("baBA")));
        assert!(!is_commutator_class(&w("ab")));
        assert!(!is_commutator_class(&w("aabAB")));
        assert!(!is_commutator_class(&FreeWord::empty()));
    }

    #[test]
    fn commutator_orbit_size() {
        // every relabeling sends [a, b] to a conjugate of itself or its inverse
        let orbit = commutator_orbit();
        assert_eq!(orbit.len(), 2);
        assert!(orbit.contains(&w("abAB").canonical_cyclic()) && orbit.contains(&w("baBA").canonical_cyclic()));
        let rotations: BTreeSet<FreeWord> = orbit
            .iter()
            .flat_map(|c| (0..c.len()).map(move |r| FreeWord([&c.0[r..], &c.0[..r]].concat())))
            .collect();
        assert_eq!(rotations.len(), 8);
    }

    #[test]
    fn abelianization_and_inverse() {
        let x = w("aabABb");
        assert_eq!(x.abelianization(), (1, 1));
        assert_eq!(x.concat(&x.inverse()).reduced(), FreeWord::empty());
        assert_eq!(w("aB").swap_generators(), w("bA"));
        assert_eq!(w("a B").to_string(), "aB");
        assert!("abc".parse::<FreeWord>().is_err());
    }
}
