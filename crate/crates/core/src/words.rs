//! Alphabets and finite words.
//!
//! Letters are dense indices `0..size`; display names are cosmetic and only
//! matter when parsing or printing literals. Words over different alphabet
//! values never mix in one operation.

use std::fmt;
use std::ops::Range;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Letter indices are dense: `0..alphabet.size()`.
pub type Letter = usize;

/// A finite indexed alphabet with optional display names (one per letter).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    size: usize,
    names: Option<Arc<Vec<char>>>,
}

impl Alphabet {
    /// Alphabet `{0, .., size-1}` printed with digits.
    pub fn anonymous(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidAlphabet("size must be at least 1".into()));
        }
        Ok(Alphabet { size, names: None })
    }

    /// Alphabet with single-character display names, pairwise distinct.
    pub fn named(names: Vec<char>) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::InvalidAlphabet("size must be at least 1".into()));
        }
        for (i, c) in names.iter().enumerate() {
            if names[..i].contains(c) {
                return Err(Error::InvalidAlphabet(format!(
                    "duplicate letter name '{c}'"
                )));
            }
        }
        Ok(Alphabet {
            size: names.len(),
            names: Some(Arc::new(names)),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn names(&self) -> Option<&[char]> {
        self.names.as_deref().map(|v| v.as_slice())
    }

    /// Display name of a letter. Anonymous letters print as digits, or as
    /// `[i]` past 9 (such alphabets have no literal syntax).
    pub fn name(&self, letter: Letter) -> String {
        match &self.names {
            Some(names) => names[letter].to_string(),
            None if letter < 10 => letter.to_string(),
            None => format!("[{letter}]"),
        }
    }

    /// The letter whose single-character name is `c`, if any.
    pub fn letter_named(&self, c: char) -> Option<Letter> {
        match &self.names {
            Some(names) => names.iter().position(|&n| n == c),
            None => {
                let d = c.to_digit(10)? as usize;
                (d < self.size).then_some(d)
            }
        }
    }

    fn check_letter(&self, letter: Letter) -> Result<()> {
        if letter >= self.size {
            return Err(Error::LetterOutOfRange {
                letter,
                size: self.size,
            });
        }
        Ok(())
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.names {
            Some(names) => write!(f, "Alphabet({})", names.iter().collect::<String>()),
            None => write!(f, "Alphabet(#{})", self.size),
        }
    }
}

/// A finite word over an [`Alphabet`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    alphabet: Alphabet,
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty(alphabet: Alphabet) -> Self {
        Word {
            alphabet,
            letters: Vec::new(),
        }
    }

    pub fn from_letters(alphabet: Alphabet, letters: Vec<Letter>) -> Result<Self> {
        for &l in &letters {
            alphabet.check_letter(l)?;
        }
        Ok(Word { alphabet, letters })
    }

    pub fn single(alphabet: Alphabet, letter: Letter) -> Result<Self> {
        Self::from_letters(alphabet, vec![letter])
    }

    /// Parses a whitespace-free literal: one character per letter.
    pub fn parse(alphabet: &Alphabet, literal: &str) -> Result<Self> {
        let mut letters = Vec::with_capacity(literal.len());
        for (i, c) in literal.chars().enumerate() {
            match alphabet.letter_named(c) {
                Some(l) => letters.push(l),
                None => {
                    return Err(Error::parse_at(
                        i + 1,
                        format!("'{c}' is not a letter of the alphabet"),
                    ))
                }
            }
        }
        Ok(Word {
            alphabet: alphabet.clone(),
            letters,
        })
    }

    /// Parses a literal, inferring the alphabet. All-digit literals get the
    /// alphabet `0..=max_digit` in value order; otherwise letters are indexed
    /// by first appearance.
    pub fn parse_infer(literal: &str) -> Result<Self> {
        if literal.is_empty() {
            return Err(Error::parse_at(1, "empty word literal has no alphabet"));
        }
        let names: Vec<char> = if literal.chars().all(|c| c.is_ascii_digit()) {
            let max = literal
                .chars()
                .map(|c| c.to_digit(10).unwrap())
                .max()
                .unwrap();
            (0..=max)
                .map(|d| char::from_digit(d, 10).unwrap())
                .collect()
        } else {
            let mut seen = Vec::new();
            for c in literal.chars() {
                if !seen.contains(&c) {
                    seen.push(c);
                }
            }
            seen
        };
        let alphabet = Alphabet::named(names)?;
        Word::parse(&alphabet, literal)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn letter(&self, i: usize) -> Letter {
        self.letters[i]
    }

    pub fn first(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    pub fn reverse(&self) -> Word {
        Word {
            alphabet: self.alphabet.clone(),
            letters: self.letters.iter().rev().copied().collect(),
        }
    }

    pub fn is_palindrome(&self) -> bool {
        let n = self.letters.len();
        (0..n / 2).all(|i| self.letters[i] == self.letters[n - 1 - i])
    }

    pub fn factor(&self, range: Range<usize>) -> Word {
        Word {
            alphabet: self.alphabet.clone(),
            letters: self.letters[range].to_vec(),
        }
    }

    pub fn prefix(&self, n: usize) -> Word {
        self.factor(0..n.min(self.len()))
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        self.check_same_alphabet(other)?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Word {
            alphabet: self.alphabet.clone(),
            letters,
        })
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        self.alphabet == prefix.alphabet && self.letters.starts_with(&prefix.letters)
    }

    pub fn ends_with(&self, suffix: &Word) -> bool {
        self.alphabet == suffix.alphabet && self.letters.ends_with(&suffix.letters)
    }

    pub fn strip_prefix(&self, prefix: &Word) -> Option<Word> {
        self.starts_with(prefix)
            .then(|| self.factor(prefix.len()..self.len()))
    }

    pub fn strip_suffix(&self, suffix: &Word) -> Option<Word> {
        self.ends_with(suffix)
            .then(|| self.factor(0..self.len() - suffix.len()))
    }

    /// Start positions of every (possibly overlapping) occurrence of `pattern`.
    pub fn occurrences(&self, pattern: &Word) -> Result<Vec<usize>> {
        self.check_same_alphabet(pattern)?;
        if pattern.is_empty() {
            return Err(Error::EmptyPattern);
        }
        Ok(kmp_occurrences(&self.letters, &pattern.letters))
    }

    /// Number of occurrences of `pattern`, overlaps included.
    pub fn count_occurrences(&self, pattern: &Word) -> Result<usize> {
        Ok(self.occurrences(pattern)?.len())
    }

    fn check_same_alphabet(&self, other: &Word) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch(format!(
                "{:?} vs {:?}",
                self.alphabet, other.alphabet
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.letters {
            write!(f, "{}", self.alphabet.name(l))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

fn kmp_occurrences(text: &[Letter], pattern: &[Letter]) -> Vec<usize> {
    let m = pattern.len();
    let mut fail = vec![0usize; m];
    let mut k = 0;
    for i in 1..m {
        while k > 0 && pattern[i] != pattern[k] {
            k = fail[k - 1];
        }
        if pattern[i] == pattern[k] {
            k += 1;
        }
        fail[i] = k;
    }
    let mut out = Vec::new();
    let mut k = 0;
    for (i, &c) in text.iter().enumerate() {
        while k > 0 && c != pattern[k] {
            k = fail[k - 1];
        }
        if c == pattern[k] {
            k += 1;
        }
        if k == m {
            out.push(i + 1 - m);
            k = fail[k - 1];
        }
    }
    out
}
