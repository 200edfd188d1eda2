//! Letters, freely reduced words and cyclic words over a free group of finite rank.
//!
//! Generators are indexed from zero internally. In text, generator `i < 26` is the
//! lowercase ASCII letter `'a' + i` and its inverse is the matching uppercase letter,
//! so `A` stands for `a⁻¹`. Generators beyond the 26th are written `x27`, `X27`, ...
//! in the extended syntax used by certificates.

use std::fmt;

use thiserror::Error;

/// Largest rank expressible in the plain `[a-zA-Z]` word syntax.
pub const MAX_TEXT_RANK: usize = 26;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("alphabet rank must be at least 1")]
    ZeroRank,
    #[error("invalid character {character:?} at position {position}")]
    InvalidCharacter { position: usize, character: char },
    #[error("letter {letter} at position {position} is outside an alphabet of rank {rank}")]
    LetterOutOfRange {
        position: usize,
        letter: String,
        rank: usize,
    },
    #[error("rank {0} exceeds the {MAX_TEXT_RANK} generators expressible as a-z")]
    UnsupportedRank(usize),
    #[error("empty cyclic word")]
    EmptyCyclicWord,
    #[error("empty word collection")]
    EmptyCollection,
    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),
}

/// The generating set of a free group of rank `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Alphabet {
    rank: usize,
}

impl Alphabet {
    pub fn new(rank: usize) -> Result<Self, WordError> {
        if rank == 0 {
            return Err(WordError::ZeroRank);
        }
        Ok(Self { rank })
    }

    pub fn rank(self) -> usize {
        self.rank
    }

    pub fn contains(self, letter: Letter) -> bool {
        letter.generator() < self.rank
    }

    /// All `2n` letters in the canonical order `a < A < b < B < ...`.
    pub fn letters(self) -> impl Iterator<Item = Letter> {
        (0..self.rank).flat_map(|g| [Letter::positive(g), Letter::negative(g)])
    }
}

/// A generator or its inverse.
///
/// The derived ordering compares the generator first and puts the generator before
/// its inverse, which is the order `a < A < b < B < ...` used for canonical rotations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    generator: u32,
    inverted: bool,
}

impl Letter {
    pub fn new(generator: usize, inverted: bool) -> Self {
        Self {
            generator: u32::try_from(generator).expect("generator index fits in u32"),
            inverted,
        }
    }

    pub fn positive(generator: usize) -> Self {
        Self::new(generator, false)
    }

    pub fn negative(generator: usize) -> Self {
        Self::new(generator, true)
    }

    /// Zero-based generator index.
    pub fn generator(self) -> usize {
        self.generator as usize
    }

    pub fn is_inverse(self) -> bool {
        self.inverted
    }

    /// `+1` for a generator, `-1` for an inverse.
    pub fn sign(self) -> i8 {
        if self.inverted {
            -1
        } else {
            1
        }
    }

    pub fn inverse(self) -> Self {
        Self {
            generator: self.generator,
            inverted: !self.inverted,
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        if c.is_ascii_lowercase() {
            Some(Self::positive((c as u8 - b'a') as usize))
        } else if c.is_ascii_uppercase() {
            Some(Self::negative((c as u8 - b'A') as usize))
        } else {
            None
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.generator();
        if g < MAX_TEXT_RANK {
            let base = if self.inverted { b'A' } else { b'a' };
            write!(f, "{}", (base + g as u8) as char)
        } else if self.inverted {
            write!(f, "X{}", g + 1)
        } else {
            write!(f, "x{}", g + 1)
        }
    }
}

/// A freely reduced word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(f, &self.letters)
    }
}

/// Cancels adjacent inverse pairs until none remain.
pub fn free_reduce<I: IntoIterator<Item = Letter>>(letters: I) -> Word {
    let mut stack: Vec<Letter> = Vec::new();
    for letter in letters {
        if stack.last() == Some(&letter.inverse()) {
            stack.pop();
        } else {
            stack.push(letter);
        }
    }
    Word { letters: stack }
}

/// A nontrivial conjugacy class: a cyclically reduced word stored in its least
/// rotation under the letter order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicWord {
    letters: Vec<Letter>,
}

impl CyclicWord {
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    /// Never true; cyclic words are nonempty by construction.
    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Highest generator index used, plus one.
    pub fn min_rank(&self) -> usize {
        self.letters
            .iter()
            .map(|l| l.generator() + 1)
            .max()
            .unwrap_or(0)
    }

    /// The letter at cyclic position `i`.
    pub fn at(&self, i: usize) -> Letter {
        self.letters[i % self.letters.len()]
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(f, &self.letters)
    }
}

fn write_letters(f: &mut fmt::Formatter<'_>, letters: &[Letter]) -> fmt::Result {
    for l in letters {
        write!(f, "{l}")?;
    }
    Ok(())
}

/// Conjugates `word` to a cyclically reduced word and rotates it into canonical form.
pub fn cyclic_reduce(word: &Word) -> Result<CyclicWord, WordError> {
    let letters = word.letters();
    let (mut lo, mut hi) = (0, letters.len());
    while hi - lo >= 2 && letters[lo] == letters[hi - 1].inverse() {
        lo += 1;
        hi -= 1;
    }
    if lo == hi {
        return Err(WordError::EmptyCyclicWord);
    }
    Ok(CyclicWord {
        letters: least_rotation(&letters[lo..hi]),
    })
}

/// Free and cyclic reduction in one step.
pub fn reduce_cyclically<I: IntoIterator<Item = Letter>>(
    letters: I,
) -> Result<CyclicWord, WordError> {
    cyclic_reduce(&free_reduce(letters))
}

fn least_rotation(letters: &[Letter]) -> Vec<Letter> {
    let n = letters.len();
    let rotation = |start: usize| (0..n).map(move |i| letters[(start + i) % n]);
    let best = (1..n).fold(0, |best, start| {
        if rotation(start).lt(rotation(best)) {
            start
        } else {
            best
        }
    });
    rotation(best).collect()
}

/// Sum of the lengths; equals the edge count of the Whitehead graph.
pub fn total_length(words: &[CyclicWord]) -> usize {
    words.iter().map(CyclicWord::len).sum()
}

/// Sorted copy of a collection, used as a set key.
pub fn canonical_collection(words: &[CyclicWord]) -> Vec<CyclicWord> {
    let mut sorted = words.to_vec();
    sorted.sort();
    sorted
}

fn tokenize(text: &str, extended: bool) -> Result<Vec<(usize, Letter)>, WordError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::with_capacity(chars.len());
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let Some(letter) = Letter::from_char(c) else {
            return Err(WordError::InvalidCharacter {
                position: i,
                character: c,
            });
        };
        let mut j = i + 1;
        if extended && (c == 'x' || c == 'X') {
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
        }
        if j > i + 1 {
            let digits: String = chars[i + 1..j].iter().collect();
            let index: usize = digits.parse().map_err(|_| WordError::InvalidCharacter {
                position: i + 1,
                character: chars[i + 1],
            })?;
            if index == 0 {
                return Err(WordError::InvalidCharacter {
                    position: i + 1,
                    character: chars[i + 1],
                });
            }
            out.push((i, Letter::new(index - 1, c == 'X')));
        } else {
            out.push((i, letter));
        }
        i = j;
    }
    Ok(out)
}

fn parse_with(text: &str, alphabet: Alphabet, extended: bool) -> Result<Word, WordError> {
    let tokens = tokenize(text, extended)?;
    for &(position, letter) in &tokens {
        if !alphabet.contains(letter) {
            return Err(WordError::LetterOutOfRange {
                position,
                letter: letter.to_string(),
                rank: alphabet.rank(),
            });
        }
    }
    Ok(free_reduce(tokens.into_iter().map(|(_, l)| l)))
}

/// Parses `[a-zA-Z]*` text and returns its free reduction.
pub fn parse_word(text: &str, alphabet: Alphabet) -> Result<Word, WordError> {
    parse_with(text, alphabet, false)
}

/// Like [`parse_word`] but also accepts `x27`/`X27` tokens for large ranks.
pub fn parse_word_extended(text: &str, alphabet: Alphabet) -> Result<Word, WordError> {
    parse_with(text, alphabet, true)
}

/// Parses a letter sequence without an alphabet bound (extended syntax).
pub(crate) fn parse_letters(text: &str) -> Result<Vec<Letter>, WordError> {
    Ok(tokenize(text, true)?.into_iter().map(|(_, l)| l).collect())
}

pub fn parse_cyclic_word(text: &str, alphabet: Alphabet) -> Result<CyclicWord, WordError> {
    cyclic_reduce(&parse_word(text, alphabet)?)
}

/// Parses a comma-separated collection such as `abAB,aab`.
///
/// Positions in errors are offsets into the whole string.
pub fn parse_collection(text: &str, alphabet: Alphabet) -> Result<Vec<CyclicWord>, WordError> {
    parse_collection_with(text, alphabet, false)
}

pub(crate) fn parse_collection_with(
    text: &str,
    alphabet: Alphabet,
    extended: bool,
) -> Result<Vec<CyclicWord>, WordError> {
    if text.trim().is_empty() {
        return Err(WordError::EmptyCollection);
    }
    let mut words = Vec::new();
    let mut offset = 0;
    for piece in text.split(',') {
        let word = parse_with(piece, alphabet, extended).map_err(|e| shift_position(e, offset))?;
        words.push(cyclic_reduce(&word)?);
        offset += piece.chars().count() + 1;
    }
    Ok(words)
}

fn shift_position(err: WordError, offset: usize) -> WordError {
    match err {
        WordError::InvalidCharacter {
            position,
            character,
        } => WordError::InvalidCharacter {
            position: position + offset,
            character,
        },
        WordError::LetterOutOfRange {
            position,
            letter,
            rank,
        } => WordError::LetterOutOfRange {
            position: position + offset,
            letter,
            rank,
        },
        other => other,
    }
}

/// Smallest rank covering every letter of a collection in plain text syntax.
///
/// Commas separate words; any other non-letter character is reported with its position.
pub fn infer_rank(text: &str) -> Result<usize, WordError> {
    let mut rank = 0;
    for (position, c) in text.chars().enumerate() {
        if c == ',' {
            continue;
        }
        let letter = Letter::from_char(c).ok_or(WordError::InvalidCharacter {
            position,
            character: c,
        })?;
        rank = rank.max(letter.generator() + 1);
    }
    Ok(rank)
}
