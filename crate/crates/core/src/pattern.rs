//! Generalized (dashed) patterns and their occurrences in permutations.
//!
//! A pattern such as `12-4-3` is a permutation of `1..m` together with a
//! flag for each of the `m - 1` slots between adjacent letters. A slot with
//! no dash is *glued*: the two letters must land on adjacent positions of
//! the host permutation. All positions handed out by this module are
//! 1-based.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Longest pattern accepted by the dash-notation parser (single digits).
pub const MAX_PATTERN_LEN: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("empty pattern")]
    Empty,
    #[error("unexpected character {ch:?} at position {pos}")]
    InvalidChar { pos: usize, ch: char },
    #[error("misplaced dash at position {pos}")]
    Dash { pos: usize },
    #[error("digit {digit} repeated at position {pos}")]
    RepeatedDigit { pos: usize, digit: usize },
    #[error("digit {digit} missing: letters must be a permutation of 1..{len}")]
    MissingDigit { digit: usize, len: usize },
    #[error("pattern has {0} letters, at most {MAX_PATTERN_LEN} are supported")]
    TooLong(usize),
    #[error("not a permutation of 1..{len}: {detail}")]
    NotPermutation { len: usize, detail: String },
    #[error("word has a repeated entry {0}")]
    DuplicateEntry(String),
    #[error("glue has {got} flags but the pattern needs {expected}")]
    GlueLength { expected: usize, got: usize },
}

/// A permutation of `1..n`, stored as its one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    ranks: Vec<usize>,
}

impl Permutation {
    pub fn new(ranks: Vec<usize>) -> Result<Self, PatternError> {
        let n = ranks.len();
        let mut seen = vec![false; n + 1];
        for &r in &ranks {
            if r == 0 || r > n {
                return Err(PatternError::NotPermutation {
                    len: n,
                    detail: format!("entry {r} out of range"),
                });
            }
            if std::mem::replace(&mut seen[r], true) {
                return Err(PatternError::NotPermutation {
                    len: n,
                    detail: format!("entry {r} repeated"),
                });
            }
        }
        Ok(Self { ranks })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            ranks: (1..=n).collect(),
        }
    }

    pub fn decreasing(n: usize) -> Self {
        Self {
            ranks: (1..=n).rev().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Value at 1-based position `i`.
    pub fn at(&self, i: usize) -> usize {
        self.ranks[i - 1]
    }

    pub fn reverse(&self) -> Self {
        Self {
            ranks: self.ranks.iter().rev().copied().collect(),
        }
    }

    pub fn complement(&self) -> Self {
        let n = self.len();
        Self {
            ranks: self.ranks.iter().map(|&r| n + 1 - r).collect(),
        }
    }

    /// All permutations of `1..n` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        let mut next = Some((1..=n).collect::<Vec<_>>());
        std::iter::from_fn(move || {
            let current = next.take()?;
            let mut succ = current.clone();
            if next_lexicographic(&mut succ) {
                next = Some(succ);
            }
            Some(Permutation { ranks: current })
        })
    }
}

fn next_lexicographic(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 9 {
            for r in &self.ranks {
                write!(f, "{r}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.ranks.iter().map(|r| r.to_string()).collect();
            f.write_str(&parts.join(","))
        }
    }
}

/// Accepts either bare digits (`3542716`) or a comma/space separated list.
impl FromStr for Permutation {
    type Err = PatternError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let ranks = if s.contains([',', ' ']) {
            s.split([',', ' '])
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<usize>().map_err(|_| PatternError::InvalidChar {
                        pos: s.find(t).unwrap_or(0) + 1,
                        ch: t.chars().next().unwrap_or(' '),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?
        } else {
            s.chars()
                .enumerate()
                .map(|(i, ch)| {
                    ch.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or(PatternError::InvalidChar { pos: i + 1, ch })
                })
                .collect::<Result<Vec<_>, _>>()?
        };
        Permutation::new(ranks)
    }
}

/// Relabels a word with distinct entries to the permutation with the same
/// relative order.
pub fn reduce<T: Ord + Copy + fmt::Debug>(word: &[T]) -> Result<Permutation, PatternError> {
    let mut order: Vec<usize> = (0..word.len()).collect();
    order.sort_by_key(|&i| word[i]);
    for pair in order.windows(2) {
        if word[pair[0]] == word[pair[1]] {
            return Err(PatternError::DuplicateEntry(format!("{:?}", word[pair[0]])));
        }
    }
    let mut ranks = vec![0; word.len()];
    for (rank, &i) in order.iter().enumerate() {
        ranks[i] = rank + 1;
    }
    Ok(Permutation { ranks })
}

/// A permutation with, for each slot between adjacent letters, a flag telling
/// whether the two letters are glued (no dash) or separated by a dash.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneralizedPattern {
    letters: Permutation,
    glue: Vec<bool>,
}

impl GeneralizedPattern {
    pub fn new(letters: Permutation, glue: Vec<bool>) -> Result<Self, PatternError> {
        if letters.is_empty() {
            return Err(PatternError::Empty);
        }
        let expected = letters.len() - 1;
        if glue.len() != expected {
            return Err(PatternError::GlueLength {
                expected,
                got: glue.len(),
            });
        }
        Ok(Self { letters, glue })
    }

    /// Every slot glued.
    pub fn consecutive(letters: Permutation) -> Result<Self, PatternError> {
        let m = letters.len().max(1);
        Self::new(letters, vec![true; m - 1])
    }

    /// Every slot dashed.
    pub fn classical(letters: Permutation) -> Result<Self, PatternError> {
        let m = letters.len().max(1);
        Self::new(letters, vec![false; m - 1])
    }

    pub fn letters(&self) -> &Permutation {
        &self.letters
    }

    pub fn glue(&self) -> &[bool] {
        &self.glue
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_classical(&self) -> bool {
        self.glue.iter().all(|g| !g)
    }

    pub fn is_consecutive(&self) -> bool {
        self.glue.iter().all(|&g| g)
    }

    pub fn reverse(&self) -> Self {
        Self {
            letters: self.letters.reverse(),
            glue: self.glue.iter().rev().copied().collect(),
        }
    }

    pub fn complement(&self) -> Self {
        Self {
            letters: self.letters.complement(),
            glue: self.glue.clone(),
        }
    }

    pub fn strip_dashes(&self) -> Self {
        Self {
            letters: self.letters.clone(),
            glue: vec![true; self.glue.len()],
        }
    }

    pub fn dash_everywhere(&self) -> Self {
        Self {
            letters: self.letters.clone(),
            glue: vec![false; self.glue.len()],
        }
    }

    /// The pattern with the dash in 0-based slot `slot` removed, or `None`
    /// if that slot is already glued.
    pub fn without_dash(&self, slot: usize) -> Option<Self> {
        if self.glue.get(slot).copied().unwrap_or(true) {
            return None;
        }
        let mut glue = self.glue.clone();
        glue[slot] = true;
        Some(Self {
            letters: self.letters.clone(),
            glue,
        })
    }

    /// Maximal glued runs of letters, as 0-based half-open letter ranges.
    pub fn blocks(&self) -> Vec<std::ops::Range<usize>> {
        let mut out = Vec::new();
        let mut start = 0;
        for (j, &g) in self.glue.iter().enumerate() {
            if !g {
                out.push(start..j + 1);
                start = j + 1;
            }
        }
        out.push(start..self.len());
        out
    }

    /// `1-σ'` where `σ'` is `self` shifted up by one: a new minimal letter,
    /// dashed, in front of the glued pattern.
    pub fn one_dash(consecutive: &GeneralizedPattern) -> Self {
        let mut ranks = vec![1];
        ranks.extend(consecutive.letters.ranks().iter().map(|r| r + 1));
        let mut glue = vec![false];
        glue.extend_from_slice(&consecutive.glue);
        Self {
            letters: Permutation { ranks },
            glue,
        }
    }

    /// `1-σ'-k`: minimal letter, dash, shifted `σ`, dash, maximal letter.
    pub fn one_dash_dash_max(consecutive: &GeneralizedPattern) -> Self {
        let k = consecutive.len() + 2;
        let mut p = Self::one_dash(consecutive);
        p.letters.ranks.push(k);
        p.glue.push(false);
        p
    }

    /// `12-σ'` (or `21-σ'` when `descending`), `σ` shifted up by two.
    pub fn two_dash(consecutive: &GeneralizedPattern, descending: bool) -> Self {
        let mut ranks = if descending { vec![2, 1] } else { vec![1, 2] };
        ranks.extend(consecutive.letters.ranks().iter().map(|r| r + 2));
        let mut glue = vec![true, false];
        glue.extend_from_slice(&consecutive.glue);
        Self {
            letters: Permutation { ranks },
            glue,
        }
    }
}

impl fmt::Display for GeneralizedPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, r) in self.letters.ranks().iter().enumerate() {
            if j > 0 && !self.glue[j - 1] {
                f.write_str("-")?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

impl FromStr for GeneralizedPattern {
    type Err = PatternError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        if text.is_empty() {
            return Err(PatternError::Empty);
        }
        let mut ranks = Vec::new();
        let mut glue = Vec::new();
        let mut pending_dash = false;
        for (i, ch) in text.chars().enumerate() {
            let pos = i + 1;
            match ch {
                '-' => {
                    if ranks.is_empty() || pending_dash {
                        return Err(PatternError::Dash { pos });
                    }
                    pending_dash = true;
                }
                '1'..='9' => {
                    if !ranks.is_empty() {
                        glue.push(!pending_dash);
                    }
                    pending_dash = false;
                    let digit = ch as usize - '0' as usize;
                    if ranks.contains(&digit) {
                        return Err(PatternError::RepeatedDigit { pos, digit });
                    }
                    ranks.push(digit);
                }
                _ => return Err(PatternError::InvalidChar { pos, ch }),
            }
        }
        if pending_dash {
            return Err(PatternError::Dash {
                pos: text.chars().count(),
            });
        }
        let m = ranks.len();
        if m > MAX_PATTERN_LEN {
            return Err(PatternError::TooLong(m));
        }
        if let Some(digit) = (1..=m).find(|d| !ranks.contains(d)) {
            return Err(PatternError::MissingDigit { digit, len: m });
        }
        Self::new(Permutation { ranks }, glue)
    }
}

/// Strictly increasing 1-based positions `i_1 < ... < i_m` in the host
/// permutation witnessing one occurrence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Occurrence {
    pub indices: Vec<usize>,
}

impl Occurrence {
    pub fn values(&self, perm: &Permutation) -> Vec<usize> {
        self.indices.iter().map(|&i| perm.at(i)).collect()
    }
}

/// All occurrences of `pat` in `perm`, in lexicographic index order,
/// stopping after `limit` of them when given.
pub fn find_occurrences(
    perm: &Permutation,
    pat: &GeneralizedPattern,
    limit: Option<usize>,
) -> Vec<Occurrence> {
    let mut out = Vec::new();
    if pat.len() > perm.len() || limit == Some(0) {
        return out;
    }
    let mut chosen = Vec::with_capacity(pat.len());
    search(perm.ranks(), pat, &mut chosen, &mut out, limit);
    out
}

fn search(
    host: &[usize],
    pat: &GeneralizedPattern,
    chosen: &mut Vec<usize>,
    out: &mut Vec<Occurrence>,
    limit: Option<usize>,
) -> bool {
    let m = pat.len();
    let j = chosen.len();
    if j == m {
        out.push(Occurrence {
            indices: chosen.iter().map(|i| i + 1).collect(),
        });
        return limit.is_some_and(|l| out.len() >= l);
    }
    let letters = pat.letters().ranks();
    let (lo, hi) = match chosen.last() {
        None => (0, host.len() - m),
        Some(&prev) if pat.glue()[j - 1] => (prev + 1, prev + 1),
        Some(&prev) => (prev + 1, host.len() - (m - j)),
    };
    if lo > hi || hi >= host.len() {
        return false;
    }
    for i in lo..=hi {
        let v = host[i];
        let consistent = chosen
            .iter()
            .zip(letters)
            .all(|(&c, &l)| (host[c] < v) == (l < letters[j]));
        if consistent {
            chosen.push(i);
            let stop = search(host, pat, chosen, out, limit);
            chosen.pop();
            if stop {
                return true;
            }
        }
    }
    false
}

pub fn contains(perm: &Permutation, pat: &GeneralizedPattern) -> bool {
    !find_occurrences(perm, pat, Some(1)).is_empty()
}

pub fn avoids(perm: &Permutation, pat: &GeneralizedPattern) -> bool {
    !contains(perm, pat)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pat(s: &str) -> GeneralizedPattern {
        s.parse().unwrap()
    }

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn parse_dash_notation() {
        let p = pat("12-4-3");
        assert_eq!(p.letters().ranks(), &[1, 2, 4, 3]);
        assert_eq!(p.glue(), &[true, false, false]);
        let p = pat("1-2-3");
        assert_eq!(p.glue(), &[false, false]);
        assert!(p.is_classical());
        let p = pat("132");
        assert_eq!(p.glue(), &[true, true]);
        assert!(p.is_consecutive());
        assert!(pat("1").is_classical() && pat("1").is_consecutive());
    }

    #[test]
    fn parse_errors_name_position() {
        assert_eq!("".parse::<GeneralizedPattern>(), Err(PatternError::Empty));
        assert_eq!(
            "-12".parse::<GeneralizedPattern>(),
            Err(PatternError::Dash { pos: 1 })
        );
        assert_eq!(
            "12-".parse::<GeneralizedPattern>(),
            Err(PatternError::Dash { pos: 3 })
        );
        assert_eq!(
            "1--2".parse::<GeneralizedPattern>(),
            Err(PatternError::Dash { pos: 3 })
        );
        assert_eq!(
            "1-21".parse::<GeneralizedPattern>(),
            Err(PatternError::RepeatedDigit { pos: 4, digit: 1 })
        );
        assert_eq!(
            "13".parse::<GeneralizedPattern>(),
            Err(PatternError::MissingDigit { digit: 2, len: 2 })
        );
        assert_eq!(
            "1a".parse::<GeneralizedPattern>(),
            Err(PatternError::InvalidChar { pos: 2, ch: 'a' })
        );
        assert_eq!(
            "10".parse::<GeneralizedPattern>(),
            Err(PatternError::InvalidChar { pos: 2, ch: '0' })
        );
    }

    #[test]
    fn display_round_trips() {
        for s in ["12-4-3", "1-2-3", "132", "3-14-2", "1"] {
            assert_eq!(pat(s).to_string(), s);
        }
    }

    #[test]
    fn reduce_relabels() {
        assert_eq!(reduce(&[3, 5, 7, 6]).unwrap().ranks(), &[1, 2, 4, 3]);
        assert_eq!(reduce(&[1, 2, 3]).unwrap().ranks(), &[1, 2, 3]);
        assert_eq!(reduce(&[9, 2, 5]).unwrap().ranks(), &[3, 1, 2]);
        assert_eq!(
            reduce(&[4, 1, 4]),
            Err(PatternError::DuplicateEntry("4".into()))
        );
        assert!(reduce::<i64>(&[]).unwrap().is_empty());
    }

    #[test]
    fn worked_example_3542716() {
        let pi = perm("3542716");
        let occ = find_occurrences(&pi, &pat("12-4-3"), None);
        assert_eq!(occ.len(), 1);
        assert_eq!(occ[0].indices, vec![1, 2, 5, 7]);
        assert_eq!(occ[0].values(&pi), vec![3, 5, 7, 6]);
        assert!(find_occurrences(&pi, &pat("12-43"), None).is_empty());
        assert!(avoids(&pi, &pat("12-43")));
        assert!(contains(&pi, &pat("12-4-3")));
    }

    #[test]
    fn classical_single_occurrence() {
        let occ = find_occurrences(&perm("123"), &pat("1-2-3"), None);
        assert_eq!(
            occ,
            vec![Occurrence {
                indices: vec![1, 2, 3]
            }]
        );
        assert!(find_occurrences(&perm("12"), &pat("1-2-3"), None).is_empty());
    }

    #[test]
    fn occurrences_are_lexicographic_and_limited() {
        let all = find_occurrences(&Permutation::identity(5), &pat("1-2"), None);
        assert_eq!(all.len(), 10);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        let two = find_occurrences(&Permutation::identity(5), &pat("1-2"), Some(2));
        assert_eq!(two, all[..2].to_vec());
    }

    #[test]
    fn symmetries() {
        assert_eq!(pat("123").reverse(), pat("321"));
        assert_eq!(pat("132").complement(), pat("312"));
        assert_eq!(pat("12-34").reverse(), pat("43-21"));
        assert_eq!(pat("12-34").strip_dashes(), pat("1234"));
        assert_eq!(pat("1234").dash_everywhere(), pat("1-2-3-4"));
        assert_eq!(pat("1-23-4").strip_dashes(), pat("1234"));
    }

    #[test]
    fn derived_patterns() {
        assert_eq!(GeneralizedPattern::one_dash(&pat("12")), pat("1-23"));
        assert_eq!(GeneralizedPattern::one_dash(&pat("132")), pat("1-243"));
        assert_eq!(
            GeneralizedPattern::one_dash_dash_max(&pat("12")),
            pat("1-23-4")
        );
        assert_eq!(GeneralizedPattern::two_dash(&pat("12"), false), pat("12-34"));
        assert_eq!(GeneralizedPattern::two_dash(&pat("123"), true), pat("21-345"));
        assert_eq!(pat("12-34").without_dash(1), Some(pat("1234")));
        assert_eq!(pat("12-34").without_dash(0), None);
        assert_eq!(pat("12-4-3").blocks(), vec![0..2, 2..3, 3..4]);
    }

    #[test]
    fn permutation_validation_and_enumeration() {
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert_eq!(Permutation::all(4).count(), 24);
        assert_eq!(Permutation::all(0).count(), 1);
        let p: Permutation = "10,1,2,3,4,5,6,7,8,9".parse().unwrap();
        assert_eq!(p.to_string(), "10,1,2,3,4,5,6,7,8,9");
    }
}
