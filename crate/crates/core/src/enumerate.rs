//! Exact values of `α_n(σ)`, the number of permutations of length `n`
//! avoiding a generalized pattern `σ`.
//!
//! Two engines are provided:
//!
//! * [`count_sequence`] works for any pattern. It walks the tree of
//!   *standardized prefixes*: a node at depth `d` is a permutation of `1..d`
//!   and its `d + 1` children append a new last entry of each possible
//!   relative rank. Every permutation of length `n` is reached by exactly one
//!   path, so the number of surviving nodes at depth `d` is `α_d`, for all `d`
//!   at once. A node whose prefix already contains `σ` is pruned together with
//!   its subtree: an occurrence only uses relative order and adjacency inside
//!   the prefix, and appending entries changes neither, so every extension
//!   contains `σ` as well. Consequently a new node only needs to be checked
//!   for occurrences ending at its last position.
//! * [`count_consecutive_dp`] handles consecutive patterns to much larger `n`
//!   with a transfer DP over the ranks of the trailing window.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pattern::{GeneralizedPattern, Permutation};

/// Largest `n` the backtracking engine accepts unless forced.
pub const DEFAULT_CAP: usize = 13;

/// Largest number of dense DP cells (`(n_max + 1)^(k-1)`) we are willing to
/// allocate.
pub const DP_STATE_LIMIT: usize = 1 << 24;

/// Longest consecutive pattern the DP accepts.
pub const DP_MAX_PATTERN_LEN: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("n = {n} exceeds the brute-force cap {cap} (pass the force override to lift it)")]
    CapExceeded { n: usize, cap: usize },
    #[error("pattern {0} is not consecutive")]
    NotConsecutive(String),
    #[error("pattern of length {k} is too long for the transfer DP (max {DP_MAX_PATTERN_LEN})")]
    PatternTooLong { k: usize },
    #[error("transfer DP for length {k} up to n = {n_max} needs {cells} cells (limit {DP_STATE_LIMIT})")]
    StateSpace { k: usize, n_max: usize, cells: u128 },
    #[error("sequence covers n <= {have}, but {need} is required")]
    OutOfRange { have: usize, need: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Backtracking,
    TransferDp,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Backtracking => "backtracking",
            Method::TransferDp => "transfer_dp",
        })
    }
}

/// Limits for the brute-force engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub cap: usize,
    pub force: bool,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            cap: DEFAULT_CAP,
            force: false,
        }
    }
}

impl Limits {
    pub fn forced() -> Self {
        Self {
            force: true,
            ..Self::default()
        }
    }

    fn check(&self, n: usize) -> Result<(), EnumerateError> {
        if !self.force && n > self.cap {
            return Err(EnumerateError::CapExceeded { n, cap: self.cap });
        }
        Ok(())
    }
}

/// `α_0, …, α_{n_max}` for one pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountSequence {
    pub pattern: GeneralizedPattern,
    pub counts: Vec<BigUint>,
    pub method: Method,
}

impl CountSequence {
    pub fn n_max(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn get(&self, n: usize) -> Option<&BigUint> {
        self.counts.get(n)
    }

    fn require(&self, n: usize) -> Result<(), EnumerateError> {
        if n > self.n_max() {
            return Err(EnumerateError::OutOfRange {
                have: self.n_max(),
                need: n,
            });
        }
        Ok(())
    }

    /// The first `n_max + 1` terms.
    pub fn truncated(&self, n_max: usize) -> Self {
        Self {
            pattern: self.pattern.clone(),
            counts: self.counts[..=n_max.min(self.n_max())].to_vec(),
            method: self.method,
        }
    }
}

/// `α_n(pat)` under the default cap.
pub fn count_avoiders(pat: &GeneralizedPattern, n: usize) -> Result<BigUint, EnumerateError> {
    count_avoiders_with(pat, n, Limits::default())
}

pub fn count_avoiders_with(
    pat: &GeneralizedPattern,
    n: usize,
    limits: Limits,
) -> Result<BigUint, EnumerateError> {
    let seq = count_sequence_with(pat, n, limits)?;
    Ok(seq.counts[n].clone())
}

/// `α_0..=α_{n_max}` by backtracking, under the default cap.
pub fn count_sequence(
    pat: &GeneralizedPattern,
    n_max: usize,
) -> Result<CountSequence, EnumerateError> {
    count_sequence_with(pat, n_max, Limits::default())
}

pub fn count_sequence_with(
    pat: &GeneralizedPattern,
    n_max: usize,
    limits: Limits,
) -> Result<CountSequence, EnumerateError> {
    limits.check(n_max)?;
    let matcher = SuffixMatcher::new(pat);
    let mut counts = vec![0u128; n_max + 1];
    counts[0] = 1;

    // Sequential walk down to a frontier wide enough to share among threads.
    let split_depth = n_max.min(4);
    let mut frontier = Vec::new();
    let mut prefix = Vec::with_capacity(n_max);
    collect_frontier(&matcher, &mut prefix, split_depth, &mut counts, &mut frontier);

    if split_depth < n_max {
        let deep = frontier
            .par_iter()
            .map(|start| {
                let mut local = vec![0u128; n_max + 1];
                let mut prefix = start.clone();
                prefix.reserve(n_max);
                walk(&matcher, &mut prefix, n_max, &mut local);
                local
            })
            .reduce(
                || vec![0u128; n_max + 1],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            );
        for d in split_depth + 1..=n_max {
            counts[d] += deep[d];
        }
    }

    Ok(CountSequence {
        pattern: pat.clone(),
        counts: counts.into_iter().map(BigUint::from).collect(),
        method: Method::Backtracking,
    })
}

fn collect_frontier(
    matcher: &SuffixMatcher,
    prefix: &mut Vec<u8>,
    depth: usize,
    counts: &mut [u128],
    frontier: &mut Vec<Vec<u8>>,
) {
    if prefix.len() == depth {
        frontier.push(prefix.clone());
        return;
    }
    for r in 0..=prefix.len() as u8 {
        push_rank(prefix, r);
        if !matcher.ends_with_occurrence(prefix) {
            counts[prefix.len()] += 1;
            collect_frontier(matcher, prefix, depth, counts, frontier);
        }
        pop_rank(prefix);
    }
}

/// Counts surviving descendants of `prefix` (not `prefix` itself) by depth.
fn walk(matcher: &SuffixMatcher, prefix: &mut Vec<u8>, n_max: usize, counts: &mut [u128]) {
    if prefix.len() == n_max {
        return;
    }
    for r in 0..=prefix.len() as u8 {
        push_rank(prefix, r);
        if !matcher.ends_with_occurrence(prefix) {
            counts[prefix.len()] += 1;
            walk(matcher, prefix, n_max, counts);
        }
        pop_rank(prefix);
    }
}

/// Appends an entry of 0-based relative rank `r`, shifting larger entries up.
fn push_rank(prefix: &mut Vec<u8>, r: u8) {
    for v in prefix.iter_mut() {
        if *v >= r {
            *v += 1;
        }
    }
    prefix.push(r);
}

fn pop_rank(prefix: &mut Vec<u8>) {
    let r = prefix.pop().expect("non-empty prefix");
    for v in prefix.iter_mut() {
        if *v > r {
            *v -= 1;
        }
    }
}

/// Decides whether a word has an occurrence of the pattern whose last letter
/// sits on the word's last position. Slots are filled right to left.
struct SuffixMatcher {
    letters: Vec<u8>,
    glue: Vec<bool>,
}

impl SuffixMatcher {
    fn new(pat: &GeneralizedPattern) -> Self {
        Self {
            letters: pat.letters().ranks().iter().map(|&r| r as u8).collect(),
            glue: pat.glue().to_vec(),
        }
    }

    fn ends_with_occurrence(&self, word: &[u8]) -> bool {
        let m = self.letters.len();
        if word.len() < m {
            return false;
        }
        let mut pos = [0usize; 16];
        pos[m - 1] = word.len() - 1;
        self.fill(word, &mut pos, m - 1)
    }

    /// Slots `j+1..m` hold positions; try to place slot `j`.
    fn fill(&self, word: &[u8], pos: &mut [usize; 16], filled_from: usize) -> bool {
        if filled_from == 0 {
            return true;
        }
        let j = filled_from - 1;
        let next = pos[filled_from];
        // slot j needs at least j positions in front of it
        if next < j + 1 {
            return false;
        }
        let candidates = if self.glue[j] {
            next - 1..next
        } else {
            j..next
        };
        let m = self.letters.len();
        for i in candidates.rev() {
            let v = word[i];
            let lj = self.letters[j];
            let consistent =
                (filled_from..m).all(|s| (v < word[pos[s]]) == (lj < self.letters[s]));
            if consistent {
                pos[j] = i;
                if self.fill(word, pos, j) {
                    return true;
                }
            }
        }
        false
    }
}

/// Exact `α_0..=α_{n_max}` for a consecutive pattern of length `k`.
///
/// After `n` entries the state is the vector of ranks (among `1..n`) of the
/// last `k - 1` entries; this refines the reduced window and determines how
/// many ways each relative placement of the next entry can be realized.
/// Appending an entry of rank `r` (among `1..n+1`) is rejected exactly when
/// the new length-`k` window reduces to the pattern. For a fixed tail
/// `(w_2, …, w_{k-1})` and `r`, the rejected values of the oldest rank `w_1`
/// form one interval, so a prefix sum over `w_1` makes each step
/// `O(n^(k-1))`.
pub fn count_consecutive_dp(
    pat: &GeneralizedPattern,
    n_max: usize,
) -> Result<CountSequence, EnumerateError> {
    if !pat.is_consecutive() {
        return Err(EnumerateError::NotConsecutive(pat.to_string()));
    }
    let k = pat.len();
    if k > DP_MAX_PATTERN_LEN {
        return Err(EnumerateError::PatternTooLong { k });
    }
    let stride = n_max + 1;
    let window = k - 1;
    let cells = (stride as u128).pow(window as u32);
    if cells > DP_STATE_LIMIT as u128 {
        return Err(EnumerateError::StateSpace { k, n_max, cells });
    }

    let mut counts = Vec::with_capacity(n_max + 1);
    let mut factorial = BigUint::one();
    for n in 0..=n_max.min(window) {
        if n > 0 {
            factorial *= n;
        }
        counts.push(factorial.clone());
    }
    if k == 1 {
        // every nonempty permutation contains the one-letter pattern
        counts.iter_mut().skip(1).for_each(|c| c.set_zero());
        counts.resize(n_max + 1, BigUint::zero());
        return Ok(CountSequence {
            pattern: pat.clone(),
            counts,
            method: Method::TransferDp,
        });
    }
    if n_max < k {
        return Ok(CountSequence {
            pattern: pat.clone(),
            counts,
            method: Method::TransferDp,
        });
    }

    let sigma: Vec<usize> = pat.letters().ranks().iter().map(|r| r - 1).collect();
    let rest = &sigma[1..];
    // entries of the rest that must sit just below / just above the oldest one
    let below: Vec<usize> = (0..window).filter(|&i| rest[i] < sigma[0]).collect();
    let above: Vec<usize> = (0..window).filter(|&i| rest[i] > sigma[0]).collect();

    let mut state = vec![BigUint::zero(); cells as usize];
    for p in Permutation::all(window) {
        let idx = encode(p.ranks().iter().map(|r| r - 1), stride);
        state[idx] = BigUint::one();
    }

    let mut prefix = vec![BigUint::zero(); stride + 1];
    let mut tail = vec![0usize; window - 1];
    let mut shifted = vec![0usize; window];
    for n in window..n_max {
        let mut next = vec![BigUint::zero(); cells as usize];
        let mut total_next = BigUint::zero();
        for_each_distinct_tuple(&mut tail, n, &mut |tail| {
            let base = encode(tail.iter().copied(), stride) * stride;
            prefix[0].set_zero();
            for w in 0..n {
                let (head, rest) = prefix.split_at_mut(w + 1);
                rest[0].clone_from(&head[w]);
                rest[0] += &state[base + w];
            }
            let total = &prefix[n];
            if total.is_zero() {
                return;
            }
            for r in 0..=n {
                for (dst, &t) in shifted.iter_mut().zip(tail.iter()) {
                    *dst = t + usize::from(t >= r);
                }
                shifted[window - 1] = r;
                let mut allowed = total.clone();
                if same_shape(&shifted, rest) {
                    // the shifted w_1 must lie strictly between these
                    let lo = below.iter().map(|&i| shifted[i]).max();
                    let hi = above.iter().map(|&i| shifted[i]).min();
                    let a = lo.map_or(0, |lo| if lo < r { lo + 1 } else { lo });
                    let b = hi.map_or(n, |hi| hi - usize::from(r < hi));
                    if b > a {
                        allowed -= &prefix[b];
                        allowed += &prefix[a];
                    }
                }
                if !allowed.is_zero() {
                    let idx = encode(shifted.iter().copied(), stride);
                    total_next += &allowed;
                    next[idx] += allowed;
                }
            }
        });
        counts.push(total_next);
        state = next;
    }

    Ok(CountSequence {
        pattern: pat.clone(),
        counts,
        method: Method::TransferDp,
    })
}

fn same_shape(a: &[usize], b: &[usize]) -> bool {
    (0..a.len()).all(|i| (i + 1..a.len()).all(|j| (a[i] < a[j]) == (b[i] < b[j])))
}

fn encode(values: impl DoubleEndedIterator<Item = usize>, stride: usize) -> usize {
    values.rev().fold(0, |acc, v| acc * stride + v)
}

/// Calls `f` on every tuple of distinct values in `0..n` of the buffer's length.
fn for_each_distinct_tuple(buf: &mut [usize], n: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(buf: &mut [usize], i: usize, n: usize, f: &mut dyn FnMut(&[usize])) {
        if i == buf.len() {
            f(buf);
            return;
        }
        for v in 0..n {
            if !buf[..i].contains(&v) {
                buf[i] = v;
                rec(buf, i + 1, n, f);
            }
        }
    }
    rec(buf, 0, n, f)
}

/// Counts through the DP when the pattern is consecutive, by backtracking
/// otherwise.
pub fn count_auto(
    pat: &GeneralizedPattern,
    n_max: usize,
    limits: Limits,
) -> Result<CountSequence, EnumerateError> {
    if pat.is_consecutive() && pat.len() <= DP_MAX_PATTERN_LEN {
        count_consecutive_dp(pat, n_max)
    } else {
        count_sequence_with(pat, n_max, limits)
    }
}

/// 1-based positions of left-to-right minima.
pub fn ltr_minima(perm: &Permutation) -> Vec<usize> {
    let mut best = usize::MAX;
    let mut out = Vec::new();
    for (i, &v) in perm.ranks().iter().enumerate() {
        if v < best {
            best = v;
            out.push(i + 1);
        }
    }
    out
}

/// 1-based positions of right-to-left maxima, increasing.
pub fn rtl_maxima(perm: &Permutation) -> Vec<usize> {
    let mut best = 0;
    let mut out = Vec::new();
    for (i, &v) in perm.ranks().iter().enumerate().rev() {
        if v > best {
            best = v;
            out.push(i + 1);
        }
    }
    out.reverse();
    out
}

/// `α_{m+n} ≤ α_m · α_n · C(m+n, n)` for a consecutive pattern.
pub fn check_submultiplicative(
    seq: &CountSequence,
    m: usize,
    n: usize,
) -> Result<bool, EnumerateError> {
    if !seq.pattern.is_consecutive() {
        return Err(EnumerateError::NotConsecutive(seq.pattern.to_string()));
    }
    seq.require(m + n)?;
    let rhs = &seq.counts[m] * &seq.counts[n] * binomial(m + n, n);
    Ok(seq.counts[m + n] <= rhs)
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// Convenience for small values in tests and reports.
pub fn to_u128(x: &BigUint) -> Option<u128> {
    x.to_u128()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::avoids;

    fn pat(s: &str) -> GeneralizedPattern {
        s.parse().unwrap()
    }

    fn small(seq: &CountSequence) -> Vec<u128> {
        seq.counts.iter().map(|c| c.to_u128().unwrap()).collect()
    }

    /// Exhaustive scan of S_n with the occurrence finder.
    fn scan(p: &GeneralizedPattern, n: usize) -> u128 {
        Permutation::all(n).filter(|q| avoids(q, p)).count() as u128
    }

    #[test]
    fn backtracking_matches_exhaustive_scan() {
        assert_eq!(scan(&pat("1-23"), 5), 52);
        assert_eq!(scan(&pat("2-13"), 5), 42);
        assert_eq!(scan(&pat("123"), 4), 17);
        assert_eq!(scan(&pat("132"), 4), 16);
        for s in ["1-23", "2-13", "123", "132", "12-34", "1-23-4", "3-14-2", "2-4-1-3"] {
            let p = pat(s);
            let seq = count_sequence(&p, 7).unwrap();
            for n in 0..=7 {
                assert_eq!(seq.counts[n], BigUint::from(scan(&p, n)), "{s} n={n}");
            }
        }
    }

    #[test]
    fn spec_examples() {
        assert_eq!(count_avoiders(&pat("1-23"), 5).unwrap(), 52u32.into());
        assert_eq!(count_avoiders(&pat("2-13"), 5).unwrap(), 42u32.into());
        assert_eq!(count_avoiders(&pat("123"), 4).unwrap(), 17u32.into());
        assert_eq!(count_avoiders(&pat("132"), 4).unwrap(), 16u32.into());
        assert_eq!(
            small(&count_sequence(&pat("1-23"), 6).unwrap()),
            vec![1, 1, 2, 5, 15, 52, 203]
        );
        assert_eq!(
            small(&count_sequence(&pat("1-2-3"), 6).unwrap()),
            vec![1, 1, 2, 5, 14, 42, 132]
        );
        for s in ["1234", "12-34", "1-2-3-4", "3-14-2"] {
            assert_eq!(small(&count_sequence(&pat(s), 3).unwrap()), vec![1, 1, 2, 6]);
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(
            count_avoiders(&pat("1-23"), 14),
            Err(EnumerateError::CapExceeded { n: 14, cap: 13 })
        );
        let tight = Limits { cap: 3, force: false };
        assert!(count_sequence_with(&pat("12"), 4, tight).is_err());
        let forced = Limits { cap: 3, force: true };
        assert_eq!(
            count_sequence_with(&pat("12"), 4, forced).unwrap().counts[4],
            BigUint::one()
        );
    }

    #[test]
    fn dp_examples() {
        let s123 = count_consecutive_dp(&pat("123"), 6).unwrap();
        assert_eq!(small(&s123)[4..], [17, 70, 349]);
        let s132 = count_consecutive_dp(&pat("132"), 6).unwrap();
        assert_eq!(small(&s132)[4..], [16, 63, 296]);
        let s12 = count_consecutive_dp(&pat("12"), 30).unwrap();
        assert!(s12.counts.iter().all(|c| c.is_one()));
        let s1 = count_consecutive_dp(&pat("1"), 4).unwrap();
        assert_eq!(small(&s1), vec![1, 0, 0, 0, 0]);
        assert_eq!(small(&count_consecutive_dp(&pat("1234"), 2).unwrap()), vec![1, 1, 2]);
    }

    #[test]
    fn dp_rejects_bad_input() {
        assert!(matches!(
            count_consecutive_dp(&pat("1-23"), 5),
            Err(EnumerateError::NotConsecutive(_))
        ));
        assert!(matches!(
            count_consecutive_dp(&pat("1234567"), 8),
            Err(EnumerateError::PatternTooLong { k: 7 })
        ));
        assert!(matches!(
            count_consecutive_dp(&pat("123456"), 400),
            Err(EnumerateError::StateSpace { .. })
        ));
    }

    #[test]
    fn dp_agrees_with_backtracking_on_length_3_and_4() {
        for k in 3..=4 {
            for letters in Permutation::all(k) {
                let p = GeneralizedPattern::consecutive(letters).unwrap();
                let dp = count_consecutive_dp(&p, 9).unwrap();
                let bt = count_sequence(&p, 9).unwrap();
                assert_eq!(dp.counts, bt.counts, "{p}");
            }
        }
    }

    #[test]
    fn minima_and_maxima() {
        let p: Permutation = "3542716".parse().unwrap();
        assert_eq!(ltr_minima(&p), vec![1, 4, 6]);
        assert_eq!(rtl_maxima(&p), vec![5, 7]);
        assert_eq!(ltr_minima(&Permutation::identity(5)), vec![1]);
        assert_eq!(rtl_maxima(&Permutation::identity(5)), vec![5]);
        assert_eq!(ltr_minima(&Permutation::decreasing(4)), vec![1, 2, 3, 4]);
        assert_eq!(rtl_maxima(&Permutation::decreasing(4)), vec![1, 2, 3, 4]);
        assert!(ltr_minima(&Permutation::identity(0)).is_empty());
    }

    #[test]
    fn submultiplicative_examples() {
        let s123 = count_consecutive_dp(&pat("123"), 12).unwrap();
        assert!(check_submultiplicative(&s123, 3, 3).unwrap());
        assert!(check_submultiplicative(&s123, 0, 7).unwrap());
        let s132 = count_consecutive_dp(&pat("132"), 12).unwrap();
        assert!(check_submultiplicative(&s132, 2, 2).unwrap());
        assert!(matches!(
            check_submultiplicative(&s132, 7, 7),
            Err(EnumerateError::OutOfRange { .. })
        ));
        let classical = count_sequence(&pat("1-2-3"), 6).unwrap();
        assert!(check_submultiplicative(&classical, 2, 2).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 3), 20u32.into());
        assert_eq!(binomial(3, 5), BigUint::zero());
        assert_eq!(factorial(5), 120u32.into());
    }
}
