//! Finite and eventually periodic words over small non-negative integers.
//!
//! An [`EpWord`] is an infinite sequence `pre · period^∞`. It is canonicalized on
//! construction (primitive period, shortest preperiod), so two words denote the
//! same infinite sequence exactly when they compare equal structurally.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

pub type Letter = u32;

/// A finite block of letters.
pub type FiniteWord = Vec<Letter>;

/// Smallest `q` such that `w` is a power of its first `q` letters.
///
/// Panics on an empty word.
pub fn least_period(w: &[Letter]) -> usize {
    assert!(!w.is_empty(), "least period of an empty word");
    let n = w.len();
    (1..=n)
        .filter(|&q| n.is_multiple_of(q))
        .find(|&q| (q..n).all(|i| w[i] == w[i - q]))
        .unwrap_or(n)
}

pub fn is_primitive(w: &[Letter]) -> bool {
    least_period(w) == w.len()
}

/// An eventually periodic infinite word in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EpWord {
    pre: Vec<Letter>,
    period: Vec<Letter>,
}

impl EpWord {
    /// Builds the canonical form of `pre · period^∞`. Panics if `period` is empty.
    pub fn new(pre: Vec<Letter>, period: Vec<Letter>) -> Self {
        assert!(
            !period.is_empty(),
            "eventually periodic word needs a period"
        );
        let q = least_period(&period);
        let mut period = period;
        period.truncate(q);
        let mut pre = pre;
        while let Some(&last) = pre.last() {
            if last != *period.last().unwrap() {
                break;
            }
            pre.pop();
            period.rotate_right(1);
        }
        EpWord { pre, period }
    }

    pub fn periodic(period: Vec<Letter>) -> Self {
        Self::new(Vec::new(), period)
    }

    /// A finite word extended by repeating `fill` forever.
    pub fn from_finite(word: Vec<Letter>, fill: Letter) -> Self {
        Self::new(word, vec![fill])
    }

    pub fn pre(&self) -> &[Letter] {
        &self.pre
    }

    pub fn period(&self) -> &[Letter] {
        &self.period
    }

    pub fn letter(&self, i: usize) -> Letter {
        if i < self.pre.len() {
            self.pre[i]
        } else {
            self.period[(i - self.pre.len()) % self.period.len()]
        }
    }

    pub fn prefix(&self, n: usize) -> Vec<Letter> {
        (0..n).map(|i| self.letter(i)).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..).map(move |i| self.letter(i))
    }

    /// Number of distinct shifts `σ^k`, `k ≥ 0`, of this word.
    pub fn orbit_len(&self) -> usize {
        self.pre.len() + self.period.len()
    }

    /// `σ^k`: drops the first `k` letters.
    pub fn shift(&self, k: usize) -> EpWord {
        if k <= self.pre.len() {
            return EpWord::new(self.pre[k..].to_vec(), self.period.clone());
        }
        let mut period = self.period.clone();
        let r = (k - self.pre.len()) % period.len();
        period.rotate_left(r);
        EpWord::new(Vec::new(), period)
    }

    /// True when every letter from some point on equals `fill`.
    pub fn is_eventually(&self, fill: Letter) -> bool {
        self.period == [fill]
    }

    pub fn is_purely_periodic(&self) -> bool {
        self.pre.is_empty()
    }

    pub fn max_letter(&self) -> Letter {
        self.pre
            .iter()
            .chain(&self.period)
            .copied()
            .max()
            .unwrap_or(0)
    }
}

/// Number of positions after which two eventually periodic words that agree
/// so far agree forever.
pub fn decision_bound(u: &EpWord, v: &EpWord) -> usize {
    let (pu, pv) = (u.period.len(), v.period.len());
    u.pre.len() + v.pre.len() + pu.lcm(&pv) + pu.max(pv)
}

/// Lexicographic order of the infinite sequences.
pub fn lex_compare(u: &EpWord, v: &EpWord) -> Ordering {
    (0..decision_bound(u, v))
        .map(|i| u.letter(i).cmp(&v.letter(i)))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

impl fmt::Display for EpWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})*", join(&self.pre), join(&self.period))
    }
}

pub(crate) fn join<T: fmt::Display>(xs: &[T]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Parsed form of the word grammar `a,b,c(d,e)*`. `period` is `None` for a
/// plain finite word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordText {
    pub pre: Vec<Letter>,
    pub period: Option<Vec<Letter>>,
}

impl WordText {
    pub fn into_ep(self, fill: Letter) -> EpWord {
        match self.period {
            Some(p) => EpWord::new(self.pre, p),
            None => EpWord::from_finite(self.pre, fill),
        }
    }
}

/// Parses the word grammar. `offset` is added to reported error positions.
pub fn parse_word(text: &str, offset: usize) -> Result<WordText> {
    let syntax = |position: usize, expected: &str| Error::Syntax {
        position: offset + position,
        expected: expected.to_string(),
    };
    let bytes = text.as_bytes();
    let (head, period) = match text.find('(') {
        Some(open) => {
            let close = text[open..]
                .find(')')
                .map(|c| open + c)
                .ok_or_else(|| syntax(text.len(), "')'"))?;
            if &text[close + 1..] != "*" {
                return Err(syntax(close + 1, "'*' closing the period"));
            }
            let period = parse_letters(&text[open + 1..close], offset + open + 1)?;
            if period.is_empty() {
                return Err(syntax(open + 1, "a non-empty period"));
            }
            let mut head = &text[..open];
            if head.ends_with(',') {
                head = &head[..head.len() - 1];
            }
            (head, Some(period))
        }
        None => (text, None),
    };
    if bytes.is_empty() {
        return Err(syntax(0, "a letter"));
    }
    let pre = parse_letters(head, offset)?;
    if pre.is_empty() && period.is_none() {
        return Err(syntax(0, "a letter"));
    }
    Ok(WordText { pre, period })
}

fn parse_letters(text: &str, offset: usize) -> Result<Vec<Letter>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut pos = offset;
    let mut out = Vec::new();
    for part in text.split(',') {
        let t = part.trim();
        let v = t.parse::<Letter>().map_err(|_| Error::Syntax {
            position: pos,
            expected: "a non-negative integer".to_string(),
        })?;
        out.push(v);
        pos += part.len() + 1;
    }
    Ok(out)
}
