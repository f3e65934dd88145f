use std::cmp::Ordering;
use std::fmt;

use super::WordError;

/// A generator or inverse generator of a free group. Generators are 1-indexed.
///
/// Letters order by generator index first, with the positive letter before its
/// inverse. Witness enumeration relies on this order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    index: usize,
    inverted: bool,
}

impl Letter {
    pub fn new(index: usize, sign: i8) -> Self {
        debug_assert!(index >= 1);
        debug_assert!(sign == 1 || sign == -1);
        Letter {
            index,
            inverted: sign < 0,
        }
    }

    pub fn pos(index: usize) -> Self {
        Letter::new(index, 1)
    }

    pub fn neg(index: usize) -> Self {
        Letter::new(index, -1)
    }

    pub fn index(self) -> usize {
        self.index
    }

    pub fn sign(self) -> i8 {
        if self.inverted {
            -1
        } else {
            1
        }
    }

    pub fn is_inverted(self) -> bool {
        self.inverted
    }

    pub fn inverse(self) -> Self {
        Letter {
            index: self.index,
            inverted: !self.inverted,
        }
    }

    /// Position of this letter in the alphabet `x1, x1^-1, x2, x2^-1, ...`.
    #[cfg(test)]
    pub(crate) fn code(self) -> usize {
        2 * (self.index - 1) + usize::from(self.inverted)
    }

    pub(crate) fn from_code(code: usize) -> Self {
        Letter {
            index: code / 2 + 1,
            inverted: code % 2 == 1,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverted {
            write!(f, "x{}^-1", self.index)
        } else {
            write!(f, "x{}", self.index)
        }
    }
}

/// A freely reduced word in the free group of the given rank.
///
/// Words are reduced on construction, so two words represent the same group
/// element exactly when they compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    rank: usize,
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity(rank: usize) -> Self {
        Word {
            rank,
            letters: Vec::new(),
        }
    }

    pub fn generator(rank: usize, index: usize) -> Result<Self, WordError> {
        Word::reduce(vec![Letter::pos(index)], rank)
    }

    /// Freely reduces a letter sequence.
    pub fn reduce(letters: impl IntoIterator<Item = Letter>, rank: usize) -> Result<Self, WordError> {
        let mut out: Vec<Letter> = Vec::new();
        for letter in letters {
            if letter.index == 0 || letter.index > rank {
                return Err(WordError::IndexOutOfRange {
                    index: letter.index,
                    rank,
                });
            }
            push_reduced(&mut out, letter);
        }
        Ok(Word { rank, letters: out })
    }

    /// Builds a word from letters already known to be reduced and in range.
    pub(crate) fn from_reduced_unchecked(rank: usize, letters: Vec<Letter>) -> Self {
        debug_assert!(letters.windows(2).all(|w| w[0] != w[1].inverse()));
        debug_assert!(letters.iter().all(|l| l.index >= 1 && l.index <= rank));
        Word { rank, letters }
    }

    pub fn rank(&self) -> usize {
        self.rank
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

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn multiply(&self, other: &Word) -> Result<Word, WordError> {
        self.check_rank(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut letters, l);
        }
        Word {
            rank: self.rank,
            letters,
        }
    }

    pub fn invert(&self) -> Word {
        Word {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Signed number of occurrences of generator `index`.
    pub fn exponent_sum(&self, index: usize) -> Result<i64, WordError> {
        if index == 0 || index > self.rank {
            return Err(WordError::IndexOutOfRange {
                index,
                rank: self.rank,
            });
        }
        Ok(self
            .letters
            .iter()
            .filter(|l| l.index == index)
            .map(|l| i64::from(l.sign()))
            .sum())
    }

    /// Image in the abelianization `Z^rank`; coordinate `i - 1` is the exponent sum of `x_i`.
    pub fn abelianize(&self) -> Vec<i64> {
        let mut v = vec![0i64; self.rank];
        for l in &self.letters {
            v[l.index - 1] += i64::from(l.sign());
        }
        v
    }

    /// Parses whitespace separated tokens `x<k>` or `x<k>^-1`.
    pub fn parse(text: &str, rank: usize) -> Result<Word, WordError> {
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            letters.push(parse_letter(token)?);
        }
        Word::reduce(letters, rank)
    }

    pub(crate) fn check_rank(&self, other: &Word) -> Result<(), WordError> {
        if self.rank != other.rank {
            return Err(WordError::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        Ok(())
    }
}

/// Length first, then letter by letter.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank
            .cmp(&other.rank)
            .then(self.letters.len().cmp(&other.letters.len()))
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

fn push_reduced(out: &mut Vec<Letter>, letter: Letter) {
    if out.last() == Some(&letter.inverse()) {
        out.pop();
    } else {
        out.push(letter);
    }
}

fn parse_letter(token: &str) -> Result<Letter, WordError> {
    let bad = || WordError::Parse {
        token: token.to_string(),
    };
    let body = token.strip_prefix('x').ok_or_else(bad)?;
    let (digits, sign) = match body.strip_suffix("^-1") {
        Some(d) => (d, -1),
        None => (body, 1),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let index: usize = digits.parse().map_err(|_| bad())?;
    if index == 0 {
        return Err(bad());
    }
    Ok(Letter::new(index, sign))
}
