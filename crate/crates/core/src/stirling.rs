//! Stirling permutations: validation, exhaustive generation and the basic
//! local statistics (mesas, local minima, pinnacles).
//!
//! A Stirling permutation of order `n` is a word of length `2n` over the
//! multiset `{1, 1, 2, 2, ..., n, n}` in which every letter strictly between
//! the two copies of `k` is larger than `k`. Values are stored 1-based, so
//! `word()[i - 1]` is the letter in position `i`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Default largest order that [`generate_all`] will enumerate without an
/// explicit override. `|Q_10|` is already about 6.5e8 words.
pub const DEFAULT_CEILING: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MultisetError {
    #[error("value {value} at position {position} is outside [1, {order}]")]
    OutOfRange {
        position: usize,
        value: u32,
        order: usize,
    },
    #[error("value {value} is missing")]
    Missing { value: u32 },
    #[error("value {value} occurs {count} times, expected exactly twice")]
    Repeated { value: u32, count: usize },
}

/// Why a word failed to be a Stirling permutation. Positions are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("word length {len} is not a positive even number")]
    Length { len: usize },
    #[error(transparent)]
    Multiset(#[from] MultisetError),
    #[error("value {interloper} at position {position} lies between the two copies of {k}")]
    StirlingViolation {
        k: u32,
        interloper: u32,
        position: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("order must be at least 1")]
    ZeroOrder,
    #[error(
        "order {order} exceeds the enumeration ceiling {ceiling}; an explicit override is required"
    )]
    AboveCeiling { order: usize, ceiling: usize },
    #[error("insertion prefix {prefix:?} is not valid for order {order}")]
    BadPrefix { order: usize, prefix: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseWordError {
    #[error("cannot parse {token:?} as a letter")]
    Token { token: String },
    #[error(transparent)]
    Invalid(#[from] ValidationError),
}

/// A validated Stirling permutation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StirlingPermutation {
    word: Vec<u32>,
}

impl StirlingPermutation {
    /// Validates `word`; see [`validate_stirling`].
    pub fn new(word: Vec<u32>) -> Result<Self, ValidationError> {
        check_word(&word)?;
        Ok(Self { word })
    }

    /// Wraps a word that is Stirling by construction.
    pub(crate) fn from_trusted(word: Vec<u32>) -> Self {
        debug_assert_eq!(check_word(&word), Ok(()), "not a Stirling word: {word:?}");
        Self { word }
    }

    /// `1122...nn`.
    pub fn identity(order: usize) -> Self {
        assert!(order >= 1, "order must be at least 1");
        let word = (1..=order as u32).flat_map(|v| [v, v]).collect();
        Self { word }
    }

    pub fn order(&self) -> usize {
        self.word.len() / 2
    }

    pub fn word(&self) -> &[u32] {
        &self.word
    }

    pub fn into_word(self) -> Vec<u32> {
        self.word
    }

    /// Letter at 1-based position `i`.
    pub fn at(&self, i: usize) -> u32 {
        self.word[i - 1]
    }

    pub fn mesa_set(&self) -> BTreeSet<u32> {
        mesa_values(&self.word).collect()
    }

    pub fn local_minima(&self) -> BTreeSet<u32> {
        local_minima_of(&self.word)
    }

    pub fn has_pinnacle(&self) -> bool {
        has_pinnacle_in(&self.word)
    }
}

impl fmt::Display for StirlingPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_word(f, &self.word)
    }
}

impl FromStr for StirlingPermutation {
    type Err = ParseWordError;

    /// Digit strings (`"1221"`) for orders up to 9, comma-separated letters
    /// (`"10,10,1,1,..."`) otherwise.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let word = parse_letters(s)?;
        Ok(validate_stirling(&word)?)
    }
}

/// Parses the word notation accepted by [`StirlingPermutation::from_str`]
/// without validating it.
pub fn parse_letters(s: &str) -> Result<Vec<u32>, ParseWordError> {
    let s = s.trim();
    if s.contains(',') {
        s.split(',')
            .map(|t| {
                let t = t.trim();
                t.parse::<u32>().map_err(|_| ParseWordError::Token {
                    token: t.to_string(),
                })
            })
            .collect()
    } else {
        s.chars()
            .map(|c| {
                c.to_digit(10).ok_or_else(|| ParseWordError::Token {
                    token: c.to_string(),
                })
            })
            .collect()
    }
}

/// Writes a word in the notation accepted by [`parse_letters`].
pub fn write_word(f: &mut impl fmt::Write, word: &[u32]) -> fmt::Result {
    if word.iter().all(|&v| v <= 9) {
        for v in word {
            write!(f, "{v}")?;
        }
    } else {
        for (i, v) in word.iter().enumerate() {
            if i > 0 {
                f.write_char(',')?;
            }
            write!(f, "{v}")?;
        }
    }
    Ok(())
}

/// Accepts `word` iff it has positive even length `2n`, contains every value
/// of `[1, n]` exactly twice, and has the Stirling property.
///
/// Checks run in that order. For the Stirling property the smallest offending
/// `k` is reported, together with the leftmost smaller letter between its
/// copies.
pub fn validate_stirling(word: &[u32]) -> Result<StirlingPermutation, ValidationError> {
    check_word(word)?;
    Ok(StirlingPermutation {
        word: word.to_vec(),
    })
}

fn check_word(word: &[u32]) -> Result<(), ValidationError> {
    let len = word.len();
    if len == 0 || !len.is_multiple_of(2) {
        return Err(ValidationError::Length { len });
    }
    let order = len / 2;

    // first[v], last[v] are 0-based positions of the two copies.
    let mut count = vec![0usize; order + 1];
    let mut first = vec![usize::MAX; order + 1];
    let mut last = vec![0usize; order + 1];
    for (i, &v) in word.iter().enumerate() {
        if v == 0 || v as usize > order {
            return Err(MultisetError::OutOfRange {
                position: i + 1,
                value: v,
                order,
            }
            .into());
        }
        let v = v as usize;
        count[v] += 1;
        if first[v] == usize::MAX {
            first[v] = i;
        }
        last[v] = i;
    }
    for (v, &c) in count.iter().enumerate().skip(1) {
        match c {
            2 => {}
            0 => return Err(MultisetError::Missing { value: v as u32 }.into()),
            c => {
                return Err(MultisetError::Repeated {
                    value: v as u32,
                    count: c,
                }
                .into())
            }
        }
    }

    for k in 1..=order {
        let between = &word[first[k] + 1..last[k]];
        if let Some(j) = between.iter().position(|&v| (v as usize) < k) {
            return Err(ValidationError::StirlingViolation {
                k: k as u32,
                interloper: between[j],
                position: first[k] + 2 + j,
            });
        }
    }
    Ok(())
}

/// Mesa values of `word`, left to right: letters `w(i)` with
/// `w(i-1) < w(i) = w(i+1) > w(i+2)` for `2 <= i <= len - 2`.
pub fn mesa_values(word: &[u32]) -> impl Iterator<Item = u32> + '_ {
    word.windows(4)
        .filter(|q| q[0] < q[1] && q[1] == q[2] && q[2] > q[3])
        .map(|q| q[1])
}

/// Mesa set as a bitmask (bit `v` set iff `v` is a mesa). Requires every
/// letter to be below 64.
pub fn mesa_mask(word: &[u32]) -> u64 {
    let mut mask = 0u64;
    for q in word.windows(4) {
        if q[0] < q[1] && q[1] == q[2] && q[2] > q[3] {
            mask |= 1 << q[1];
        }
    }
    mask
}

/// Letters smaller than their nearest non-equal neighbour on each side; a
/// side with no such neighbour imposes no constraint.
pub fn local_minima_of(word: &[u32]) -> BTreeSet<u32> {
    // Collapse runs of equal letters, then compare each run to its neighbours.
    let mut runs: Vec<u32> = Vec::with_capacity(word.len());
    for &v in word {
        if runs.last() != Some(&v) {
            runs.push(v);
        }
    }
    let mut minima = BTreeSet::new();
    for (i, &v) in runs.iter().enumerate() {
        let left_ok = i == 0 || runs[i - 1] > v;
        let right_ok = i + 1 == runs.len() || runs[i + 1] > v;
        if left_ok && right_ok {
            minima.insert(v);
        }
    }
    minima
}

/// True iff some interior position satisfies `w(i-1) < w(i) > w(i+1)`.
/// Works on arbitrary words; never true for a Stirling permutation.
pub fn has_pinnacle_in(word: &[u32]) -> bool {
    word.windows(3).any(|t| t[0] < t[1] && t[1] > t[2])
}

pub fn mesa_set(w: &StirlingPermutation) -> BTreeSet<u32> {
    w.mesa_set()
}

pub fn local_minima(w: &StirlingPermutation) -> BTreeSet<u32> {
    w.local_minima()
}

pub fn has_pinnacle(w: &StirlingPermutation) -> bool {
    w.has_pinnacle()
}

/// `(2n - 1)!! = |Q_n|`, or `None` on overflow.
pub fn stirling_count(order: usize) -> Option<u64> {
    (1..=order as u64).try_fold(1u64, |acc, j| acc.checked_mul(2 * j - 1))
}

/// Limits exhaustive enumeration to orders at or below `ceiling` unless
/// `allow_above` is set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResourceGuard {
    pub ceiling: usize,
    pub allow_above: bool,
}

impl Default for ResourceGuard {
    fn default() -> Self {
        Self {
            ceiling: DEFAULT_CEILING,
            allow_above: false,
        }
    }
}

impl ResourceGuard {
    pub fn with_ceiling(ceiling: usize) -> Self {
        Self {
            ceiling,
            allow_above: false,
        }
    }

    pub fn unlimited() -> Self {
        Self {
            ceiling: DEFAULT_CEILING,
            allow_above: true,
        }
    }

    pub fn permits(&self, order: usize) -> bool {
        self.allow_above || order <= self.ceiling
    }

    pub fn check(&self, order: usize) -> Result<(), GenerateError> {
        if order == 0 {
            return Err(GenerateError::ZeroOrder);
        }
        if !self.permits(order) {
            return Err(GenerateError::AboveCeiling {
                order,
                ceiling: self.ceiling,
            });
        }
        Ok(())
    }
}

/// Streams every element of `Q_n` exactly once.
///
/// Words are built by inserting the adjacent pair `v v` into one of the
/// `2v - 1` gaps of a word of order `v - 1`, for `v = 2..=n`. Emission order is
/// lexicographic in the tuple of gap indices `(g_2, ..., g_n)`, where gap `g`
/// means "before 0-based position `g`".
pub fn generate_all(order: usize, guard: &ResourceGuard) -> Result<StirlingIter, GenerateError> {
    guard.check(order)?;
    Ok(StirlingIter {
        walker: Walker::new(order, &[])?,
    })
}

/// A slice of the `Q_n` stream that fixes the gap indices of the values
/// `2..=prefix.len() + 1`.
///
/// Partitions from [`partitions`] are disjoint, cover `Q_n`, and in the order
/// returned concatenate to the [`generate_all`] stream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    order: usize,
    prefix: Vec<usize>,
}

impl Partition {
    pub fn new(order: usize, prefix: Vec<usize>) -> Result<Self, GenerateError> {
        Walker::new(order, &prefix)?;
        Ok(Self { order, prefix })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn prefix(&self) -> &[usize] {
        &self.prefix
    }

    pub fn walker(&self) -> Walker {
        Walker::new(self.order, &self.prefix).expect("validated at construction")
    }

    pub fn iter(&self) -> StirlingIter {
        StirlingIter {
            walker: self.walker(),
        }
    }

    /// Number of words in this partition.
    pub fn len(&self) -> u64 {
        let fixed = self.prefix.len() + 1;
        (fixed + 1..=self.order).map(|v| 2 * v as u64 - 1).product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Splits `Q_n` by the gap choices of the values `2..=depth + 1`. `depth` is
/// clamped to `n - 1`.
pub fn partitions(
    order: usize,
    depth: usize,
    guard: &ResourceGuard,
) -> Result<Vec<Partition>, GenerateError> {
    guard.check(order)?;
    let depth = depth.min(order - 1);
    let mut prefixes: Vec<Vec<usize>> = vec![Vec::new()];
    for v in 2..=depth + 1 {
        prefixes = prefixes
            .into_iter()
            .flat_map(|p| {
                (0..2 * v - 1).map(move |g| {
                    let mut q = p.clone();
                    q.push(g);
                    q
                })
            })
            .collect();
    }
    Ok(prefixes
        .into_iter()
        .map(|prefix| Partition { order, prefix })
        .collect())
}

/// Allocation-free cursor over (part of) `Q_n`.
///
/// Keeps one buffer per intermediate order; advancing only rebuilds the
/// levels at and above the gap index that changed.
#[derive(Clone, Debug)]
pub struct Walker {
    order: usize,
    fixed: usize,
    // gaps[v] is the gap index used for value v (gaps[0], gaps[1] unused).
    gaps: Vec<usize>,
    // levels[v] is the word of order v (levels[0] unused).
    levels: Vec<Vec<u32>>,
    started: bool,
    done: bool,
}

impl Walker {
    fn new(order: usize, prefix: &[usize]) -> Result<Self, GenerateError> {
        if order == 0 {
            return Err(GenerateError::ZeroOrder);
        }
        let bad = prefix.len() > order - 1
            || prefix.iter().enumerate().any(|(j, &g)| g > 2 * (j + 2) - 2);
        if bad {
            return Err(GenerateError::BadPrefix {
                order,
                prefix: prefix.to_vec(),
            });
        }
        let mut gaps = vec![0usize; order + 1];
        gaps[2..2 + prefix.len()].copy_from_slice(prefix);
        let levels = (0..=order).map(|v| Vec::with_capacity(2 * v)).collect();
        Ok(Self {
            order,
            fixed: prefix.len() + 1,
            gaps,
            levels,
            started: false,
            done: false,
        })
    }

    fn rebuild_from(&mut self, from: usize) {
        if from <= 1 {
            self.levels[1].clear();
            self.levels[1].extend_from_slice(&[1, 1]);
        }
        for v in from.max(2)..=self.order {
            let (lower, upper) = self.levels.split_at_mut(v);
            let prev = &lower[v - 1];
            let cur = &mut upper[0];
            let g = self.gaps[v];
            cur.clear();
            cur.extend_from_slice(&prev[..g]);
            cur.push(v as u32);
            cur.push(v as u32);
            cur.extend_from_slice(&prev[g..]);
        }
    }

    /// The next word, or `None` once the stream is exhausted.
    pub fn advance(&mut self) -> Option<&[u32]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.rebuild_from(1);
            return Some(&self.levels[self.order]);
        }
        let bump = (self.fixed + 1..=self.order)
            .rev()
            .find(|&v| self.gaps[v] < 2 * v - 2);
        match bump {
            None => {
                self.done = true;
                None
            }
            Some(v) => {
                self.gaps[v] += 1;
                for g in &mut self.gaps[v + 1..] {
                    *g = 0;
                }
                self.rebuild_from(v);
                Some(&self.levels[self.order])
            }
        }
    }

    /// Calls `f` on every remaining word.
    pub fn for_each(mut self, mut f: impl FnMut(&[u32])) {
        while let Some(w) = self.advance() {
            f(w);
        }
    }
}

/// Owning iterator over a [`Walker`].
#[derive(Clone, Debug)]
pub struct StirlingIter {
    walker: Walker,
}

impl StirlingIter {
    pub fn into_walker(self) -> Walker {
        self.walker
    }
}

impl Iterator for StirlingIter {
    type Item = StirlingPermutation;

    fn next(&mut self) -> Option<Self::Item> {
        self.walker
            .advance()
            .map(|w| StirlingPermutation::from_trusted(w.to_vec()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> StirlingPermutation {
        s.parse().unwrap()
    }

    #[test]
    fn accepts_small_words() {
        assert_eq!(w("1221").order(), 2);
        assert_eq!(w("11").word(), &[1, 1]);
    }

    #[test]
    fn rejects_interloper() {
        let err = validate_stirling(&parse_letters("31324421").unwrap()).unwrap_err();
        assert_eq!(
            err,
            ValidationError::StirlingViolation {
                k: 3,
                interloper: 1,
                position: 2
            }
        );
    }

    #[test]
    fn rejects_bad_lengths_and_multisets() {
        assert_eq!(
            validate_stirling(&[1, 1, 2]),
            Err(ValidationError::Length { len: 3 })
        );
        assert_eq!(
            validate_stirling(&[]),
            Err(ValidationError::Length { len: 0 })
        );
        assert!(matches!(
            validate_stirling(&[1, 1, 1, 2]),
            Err(ValidationError::Multiset(MultisetError::Repeated {
                value: 1,
                count: 3
            }))
        ));
        assert!(matches!(
            validate_stirling(&[1, 1, 3, 3]),
            Err(ValidationError::Multiset(MultisetError::OutOfRange {
                value: 3,
                ..
            }))
        ));
        assert!(matches!(
            validate_stirling(&[0, 1]),
            Err(ValidationError::Multiset(MultisetError::OutOfRange {
                value: 0,
                position: 1,
                ..
            }))
        ));
    }

    #[test]
    fn parses_comma_notation() {
        let p: StirlingPermutation = "1,1,2,2,3,3,4,4,5,5,6,6,7,7,8,8,9,9,10,10".parse().unwrap();
        assert_eq!(p.order(), 10);
        assert_eq!(p.to_string(), "1,1,2,2,3,3,4,4,5,5,6,6,7,7,8,8,9,9,10,10");
        assert!(matches!(
            "12a1".parse::<StirlingPermutation>(),
            Err(ParseWordError::Token { .. })
        ));
    }

    #[test]
    fn statistics_of_the_order_nine_example() {
        let p = w("884425536776321199");
        assert_eq!(p.mesa_set(), BTreeSet::from([5, 7]));
        assert_eq!(p.local_minima(), BTreeSet::from([1, 2, 3]));
        assert!(!p.has_pinnacle());
    }

    #[test]
    fn local_minima_at_the_boundary() {
        assert_eq!(w("1122").local_minima(), BTreeSet::from([1]));
        assert_eq!(w("2211").local_minima(), BTreeSet::from([1]));
        assert_eq!(w("11").local_minima(), BTreeSet::from([1]));
    }

    #[test]
    fn mesas_of_witnesses() {
        assert_eq!(w("1334664225518877").mesa_set(), BTreeSet::from([5, 6, 8]));
        assert_eq!(
            w("1331552662774884").mesa_set(),
            BTreeSet::from([3, 5, 6, 7, 8])
        );
        assert!(StirlingPermutation::identity(7).mesa_set().is_empty());
        assert_eq!(
            mesa_mask(w("884425536776321199").word()),
            (1 << 5) | (1 << 7)
        );
    }

    #[test]
    fn pinnacle_detector_fires_on_non_stirling_words() {
        assert!(has_pinnacle_in(&[1, 2, 1, 2]));
        assert!(!has_pinnacle_in(&[1, 2, 2, 1]));
    }

    #[test]
    fn generates_q2_in_gap_order() {
        let all: Vec<String> = generate_all(2, &ResourceGuard::default())
            .unwrap()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(all, ["2211", "1221", "1122"]);
    }

    #[test]
    fn generates_q1() {
        let all: Vec<_> = generate_all(1, &ResourceGuard::default())
            .unwrap()
            .collect();
        assert_eq!(all, [w("11")]);
    }

    #[test]
    fn double_factorial_counts() {
        for n in 1..=7 {
            let count = generate_all(n, &ResourceGuard::default()).unwrap().count() as u64;
            assert_eq!(Some(count), stirling_count(n));
        }
        assert_eq!(stirling_count(9), Some(34_459_425));
    }

    #[test]
    fn guard_refuses_large_orders() {
        let guard = ResourceGuard::with_ceiling(5);
        assert_eq!(
            generate_all(6, &guard).err(),
            Some(GenerateError::AboveCeiling {
                order: 6,
                ceiling: 5
            })
        );
        assert_eq!(
            generate_all(0, &guard).err(),
            Some(GenerateError::ZeroOrder)
        );
        let open = ResourceGuard {
            ceiling: 5,
            allow_above: true,
        };
        assert!(generate_all(6, &open).is_ok());
    }

    #[test]
    fn partitions_concatenate_to_the_full_stream() {
        let guard = ResourceGuard::default();
        let full: Vec<_> = generate_all(5, &guard).unwrap().collect();
        for depth in 0..=5 {
            let parts = partitions(5, depth, &guard).unwrap();
            let total: u64 = parts.iter().map(Partition::len).sum();
            assert_eq!(total, 945);
            let joined: Vec<_> = parts.iter().flat_map(Partition::iter).collect();
            assert_eq!(joined, full, "depth {depth}");
        }
    }

    #[test]
    fn rejects_bad_prefix() {
        assert!(Partition::new(3, vec![3]).is_err());
        assert!(Partition::new(3, vec![2, 4]).is_ok());
        assert!(Partition::new(3, vec![0, 0, 0]).is_err());
    }
}
