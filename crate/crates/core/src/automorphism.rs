//! Whitehead automorphisms of a free group and their action on cyclic words.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::word::{
    parse_letters, reduce_cyclically, Alphabet, CyclicWord, Letter, Word, WordError,
};

/// A generator of `Aut(F_n)` used by minimization and orbit search.
///
/// `TypeII` with multiplier `a` and side set `A` (which contains `a` but not `a⁻¹`)
/// fixes `a` and sends every other generator `x` to
/// `x·a` if only `x ∈ A`, `a⁻¹·x` if only `x⁻¹ ∈ A`, `a⁻¹·x·a` if both, and `x` if neither.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum WhiteheadAutomorphism {
    /// `x_i ↦ x_i⁻¹`.
    Inversion(usize),
    /// `x_target ↦ x_target · x_by`.
    Transvection { target: usize, by: usize },
    /// `x_i ↦ images[i]`, a signed permutation of the generators.
    Permutation(Vec<Letter>),
    TypeII {
        multiplier: Letter,
        side: BTreeSet<Letter>,
    },
}

impl WhiteheadAutomorphism {
    pub fn transvection(target: usize, by: usize) -> Result<Self, WordError> {
        if target == by {
            return Err(WordError::InvalidAutomorphism(
                "transvection needs distinct generators".into(),
            ));
        }
        Ok(Self::Transvection { target, by })
    }

    pub fn permutation(images: Vec<Letter>) -> Result<Self, WordError> {
        let mut seen = vec![false; images.len()];
        for l in &images {
            match seen.get_mut(l.generator()) {
                Some(slot) if !*slot => *slot = true,
                _ => {
                    return Err(WordError::InvalidAutomorphism(
                        "permutation images must use every generator exactly once".into(),
                    ))
                }
            }
        }
        Ok(Self::Permutation(images))
    }

    pub fn type_ii(multiplier: Letter, side: BTreeSet<Letter>) -> Result<Self, WordError> {
        if !side.contains(&multiplier) || side.contains(&multiplier.inverse()) {
            return Err(WordError::InvalidAutomorphism(format!(
                "side set must contain {multiplier} and not {}",
                multiplier.inverse()
            )));
        }
        Ok(Self::TypeII { multiplier, side })
    }

    /// Image of the positive generator `g`.
    pub fn image(&self, g: usize) -> Vec<Letter> {
        let x = Letter::positive(g);
        match self {
            Self::Inversion(i) if *i == g => vec![x.inverse()],
            Self::Transvection { target, by } if *target == g => vec![x, Letter::positive(*by)],
            Self::Permutation(images) => vec![images.get(g).copied().unwrap_or(x)],
            Self::TypeII { multiplier, side } if multiplier.generator() != g => {
                let a = *multiplier;
                match (side.contains(&x), side.contains(&x.inverse())) {
                    (true, false) => vec![x, a],
                    (false, true) => vec![a.inverse(), x],
                    (true, true) => vec![a.inverse(), x, a],
                    (false, false) => vec![x],
                }
            }
            _ => vec![x],
        }
    }

    fn letter_image(&self, l: Letter) -> Vec<Letter> {
        let img = self.image(l.generator());
        if l.is_inverse() {
            img.iter().rev().map(|x| x.inverse()).collect()
        } else {
            img
        }
    }

    /// Substitutes and freely reduces.
    pub fn apply_to_word(&self, letters: &[Letter]) -> Word {
        crate::word::free_reduce(letters.iter().flat_map(|&l| self.letter_image(l)))
    }

    /// Applies the automorphism to every word of a collection, preserving order.
    pub fn apply(&self, words: &[CyclicWord]) -> Result<Vec<CyclicWord>, WordError> {
        words
            .iter()
            .map(|w| reduce_cyclically(self.letter_sequence(w.letters())))
            .collect()
    }

    fn letter_sequence<'a>(&'a self, letters: &'a [Letter]) -> impl Iterator<Item = Letter> + 'a {
        letters.iter().flat_map(|&l| self.letter_image(l))
    }

    /// A sequence of automorphisms which, applied in order, undoes `self`.
    pub fn inverse(&self) -> Vec<WhiteheadAutomorphism> {
        match self {
            Self::Inversion(_) => vec![self.clone()],
            // x_t ↦ x_t x_b⁻¹ is conjugation of the transvection by the inversion of x_b.
            Self::Transvection { by, .. } => {
                vec![Self::Inversion(*by), self.clone(), Self::Inversion(*by)]
            }
            Self::Permutation(images) => {
                let mut inv = vec![Letter::positive(0); images.len()];
                for (i, img) in images.iter().enumerate() {
                    inv[img.generator()] = Letter::new(i, img.is_inverse());
                }
                vec![Self::Permutation(inv)]
            }
            Self::TypeII { multiplier, side } => {
                let mut flipped = side.clone();
                flipped.remove(multiplier);
                flipped.insert(multiplier.inverse());
                vec![Self::TypeII {
                    multiplier: multiplier.inverse(),
                    side: flipped,
                }]
            }
        }
    }

    /// Largest generator index touched, plus one.
    pub fn min_rank(&self) -> usize {
        match self {
            Self::Inversion(i) => i + 1,
            Self::Transvection { target, by } => target.max(by) + 1,
            Self::Permutation(images) => images.len(),
            Self::TypeII { multiplier, side } => side
                .iter()
                .chain(std::iter::once(multiplier))
                .map(|l| l.generator() + 1)
                .max()
                .unwrap_or(0),
        }
    }
}

/// Free function form of [`WhiteheadAutomorphism::apply`].
pub fn apply_automorphism(
    phi: &WhiteheadAutomorphism,
    words: &[CyclicWord],
) -> Result<Vec<CyclicWord>, WordError> {
    phi.apply(words)
}

/// Every Type II automorphism (`2n · 4^(n-1)` of them, including the trivial ones whose
/// side set is just the multiplier), then every inversion, then every transvection.
///
/// Within Type II the multiplier runs over `a, A, b, B, ...`; the side set is a base-4
/// counter over the remaining generators in index order, with digit 1 meaning `x ∈ A`,
/// 2 meaning `x⁻¹ ∈ A` and 3 meaning both.
pub fn enumerate_whitehead_automorphisms(alphabet: Alphabet) -> Vec<WhiteheadAutomorphism> {
    let n = alphabet.rank();
    let mut out = Vec::new();
    for multiplier in alphabet.letters() {
        let others: Vec<usize> = (0..n).filter(|&g| g != multiplier.generator()).collect();
        for code in 0..4usize.pow(others.len() as u32) {
            let mut side = BTreeSet::from([multiplier]);
            let mut rest = code;
            for &g in &others {
                let digit = rest % 4;
                rest /= 4;
                if digit & 1 != 0 {
                    side.insert(Letter::positive(g));
                }
                if digit & 2 != 0 {
                    side.insert(Letter::negative(g));
                }
            }
            out.push(WhiteheadAutomorphism::TypeII { multiplier, side });
        }
    }
    out.extend((0..n).map(WhiteheadAutomorphism::Inversion));
    for target in 0..n {
        for by in (0..n).filter(|&b| b != target) {
            out.push(WhiteheadAutomorphism::Transvection { target, by });
        }
    }
    out
}

fn letters_to_string(letters: impl IntoIterator<Item = Letter>) -> String {
    letters.into_iter().map(|l| l.to_string()).collect()
}

/// Compact text encoding: `inv(a)`, `tv(a,b)`, `perm(bAc)`, `wh(a;aBc)`.
impl fmt::Display for WhiteheadAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Inversion(i) => write!(f, "inv({})", Letter::positive(*i)),
            Self::Transvection { target, by } => {
                write!(
                    f,
                    "tv({},{})",
                    Letter::positive(*target),
                    Letter::positive(*by)
                )
            }
            Self::Permutation(images) => {
                write!(f, "perm({})", letters_to_string(images.iter().copied()))
            }
            Self::TypeII { multiplier, side } => {
                write!(
                    f,
                    "wh({multiplier};{})",
                    letters_to_string(side.iter().copied())
                )
            }
        }
    }
}

impl FromStr for WhiteheadAutomorphism {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || WordError::InvalidAutomorphism(format!("cannot decode {s:?}"));
        let (head, rest) = s.split_once('(').ok_or_else(bad)?;
        let body = rest.strip_suffix(')').ok_or_else(bad)?;
        let single_generator = |text: &str| -> Result<usize, WordError> {
            match parse_letters(text)?.as_slice() {
                [l] if !l.is_inverse() => Ok(l.generator()),
                _ => Err(bad()),
            }
        };
        match head {
            "inv" => Ok(Self::Inversion(single_generator(body)?)),
            "tv" => {
                let (t, b) = body.split_once(',').ok_or_else(bad)?;
                Self::transvection(single_generator(t)?, single_generator(b)?)
            }
            "perm" => Self::permutation(parse_letters(body)?),
            "wh" => {
                let (m, side) = body.split_once(';').ok_or_else(bad)?;
                let multiplier = match parse_letters(m)?.as_slice() {
                    [l] => *l,
                    _ => return Err(bad()),
                };
                Self::type_ii(multiplier, parse_letters(side)?.into_iter().collect())
            }
            _ => Err(bad()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::parse_collection;

    fn rank(n: usize) -> Alphabet {
        Alphabet::new(n).unwrap()
    }

    fn words(text: &str, n: usize) -> Vec<CyclicWord> {
        parse_collection(text, rank(n)).unwrap()
    }

    fn show(ws: &[CyclicWord]) -> Vec<String> {
        ws.iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn transvection_example() {
        let phi = WhiteheadAutomorphism::transvection(0, 1).unwrap();
        assert_eq!(show(&phi.apply(&words("ab", 2)).unwrap()), ["abb"]);
        assert!(WhiteheadAutomorphism::transvection(1, 1).is_err());
    }

    #[test]
    fn type_ii_example() {
        let a = Letter::positive(0);
        let side = BTreeSet::from([a, Letter::negative(1)]);
        let phi = WhiteheadAutomorphism::type_ii(a, side).unwrap();
        assert_eq!(phi.image(1), vec![Letter::negative(0), Letter::positive(1)]);
        assert_eq!(show(&phi.apply(&words("aba", 2)).unwrap()), ["ab"]);
    }

    #[test]
    fn inversion_example() {
        let phi = WhiteheadAutomorphism::Inversion(0);
        let out = phi.apply(&words("abAB", 2)).unwrap();
        let expected = reduce_cyclically(parse_letters("AbaB").unwrap()).unwrap();
        assert_eq!(out, vec![expected]);
        assert_eq!(out[0].len(), 4);
    }

    #[test]
    fn type_ii_side_set_is_validated() {
        let a = Letter::positive(0);
        assert!(WhiteheadAutomorphism::type_ii(a, BTreeSet::new()).is_err());
        assert!(WhiteheadAutomorphism::type_ii(a, BTreeSet::from([a, a.inverse()])).is_err());
    }

    #[test]
    fn permutation_validation_and_inverse() {
        assert!(
            WhiteheadAutomorphism::permutation(vec![Letter::positive(0), Letter::negative(0)])
                .is_err()
        );
        let phi = WhiteheadAutomorphism::permutation(vec![
            Letter::negative(1),
            Letter::positive(2),
            Letter::positive(0),
        ])
        .unwrap();
        let ws = words("abbcAC", 3);
        let mut back = phi.apply(&ws).unwrap();
        for psi in phi.inverse() {
            back = psi.apply(&back).unwrap();
        }
        assert_eq!(back, ws);
    }

    #[test]
    fn enumeration_counts() {
        let count = |n: usize| {
            let all = enumerate_whitehead_automorphisms(rank(n));
            let type_ii: Vec<_> = all
                .iter()
                .filter(|p| matches!(p, WhiteheadAutomorphism::TypeII { .. }))
                .collect();
            let nontrivial = type_ii
                .iter()
                .filter(
                    |p| matches!(p, WhiteheadAutomorphism::TypeII { side, .. } if side.len() > 1),
                )
                .count();
            let inversions = all
                .iter()
                .filter(|p| matches!(p, WhiteheadAutomorphism::Inversion(_)))
                .count();
            let transvections = all
                .iter()
                .filter(|p| matches!(p, WhiteheadAutomorphism::Transvection { .. }))
                .count();
            (type_ii.len(), nontrivial, inversions, transvections)
        };
        assert_eq!(count(1), (2, 0, 1, 0));
        assert_eq!(count(2).0, 16);
        assert_eq!(count(3).0, 96);
        assert_eq!(count(2), (16, 12, 2, 2));
    }

    #[test]
    fn enumeration_is_duplicate_free_and_stable() {
        for n in 1..=4 {
            let all = enumerate_whitehead_automorphisms(rank(n));
            let unique: std::collections::HashSet<_> = all.iter().collect();
            assert_eq!(unique.len(), all.len());
            assert_eq!(all, enumerate_whitehead_automorphisms(rank(n)));
        }
    }

    #[test]
    fn encoding_round_trips() {
        for phi in enumerate_whitehead_automorphisms(rank(3)) {
            let text = phi.to_string();
            assert_eq!(
                text.parse::<WhiteheadAutomorphism>().unwrap(),
                phi,
                "{text}"
            );
        }
        let perm =
            WhiteheadAutomorphism::permutation(vec![Letter::negative(1), Letter::positive(0)])
                .unwrap();
        assert_eq!(perm.to_string(), "perm(Ba)");
        assert_eq!("perm(Ba)".parse::<WhiteheadAutomorphism>().unwrap(), perm);
        assert!("inv(A)".parse::<WhiteheadAutomorphism>().is_err());
        assert!("tv(a,a)".parse::<WhiteheadAutomorphism>().is_err());
        assert!("nope".parse::<WhiteheadAutomorphism>().is_err());
    }
}
