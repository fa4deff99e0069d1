//! Words over indexed generators with integer exponents.
//!
//! Words are not freely reduced; evaluation tolerates redundancy. The only
//! normalization ever applied is merging adjacent letters on the same
//! generator, used when building kernel-generator words.

use crate::error::{Error, Result};
use crate::group::FiniteGroup;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<(usize, i64)>,
}

impl Word {
    pub fn empty() -> Self {
        Word { letters: Vec::new() }
    }

    pub fn generator(index: usize) -> Self {
        Word { letters: vec![(index, 1)] }
    }

    pub fn from_letters(letters: Vec<(usize, i64)>) -> Self {
        debug_assert!(letters.iter().all(|&(_, e)| e != 0), "exponents must be nonzero");
        Word { letters }
    }

    pub fn letters(&self) -> &[(usize, i64)] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    pub fn repeat(&self, times: i64) -> Word {
        if times == 0 {
            return Word::empty();
        }
        let base = if times < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::new();
        for _ in 0..times.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        Word { letters }
    }

    /// Merge adjacent letters on the same generator and drop zero exponents.
    pub fn merged(&self) -> Word {
        let mut letters: Vec<(usize, i64)> = Vec::with_capacity(self.letters.len());
        for &(g, e) in &self.letters {
            match letters.last_mut() {
                Some((lg, le)) if *lg == g => {
                    *le += e;
                    if *le == 0 {
                        letters.pop();
                    }
                }
                _ => letters.push((g, e)),
            }
        }
        Word { letters }
    }

    /// Total degree under a degree vector.
    pub fn degree(&self, degrees: &[i64]) -> i64 {
        self.letters.iter().map(|&(g, e)| e * degrees[g]).sum()
    }

    /// Exponent sum per generator, as a length-m row.
    pub fn exponent_row(&self, gen_count: usize) -> Vec<i64> {
        let mut row = vec![0i64; gen_count];
        for &(g, e) in &self.letters {
            row[g] += e;
        }
        row
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|&(g, _)| g).max()
    }

    /// Left-to-right product of image powers.
    pub fn evaluate(&self, group: &FiniteGroup, images: &[usize]) -> usize {
        let mut acc = 0usize;
        for &(g, e) in &self.letters {
            acc = group.mul(acc, group.pow(images[g], e));
        }
        acc
    }

    /// Parses the text syntax: space-separated letters, each `name` or
    /// `name^exp` with a nonzero integer exponent.
    pub fn parse(text: &str, names: &[String]) -> Result<Word> {
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            let (name, exp) = match token.split_once('^') {
                Some((n, e)) => {
                    let exp: i64 = e
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in `{token}`")))?;
                    (n, exp)
                }
                None => (token, 1),
            };
            if exp == 0 {
                return Err(Error::Parse(format!("zero exponent in `{token}`")));
            }
            let index = names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::Parse(format!("unknown generator `{name}`")))?;
            letters.push((index, exp));
        }
        Ok(Word { letters })
    }

    pub fn display(&self, names: &[String]) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        self.letters
            .iter()
            .map(|&(g, e)| {
                if e == 1 {
                    names[g].clone()
                } else {
                    format!("{}^{}", names[g], e)
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}
