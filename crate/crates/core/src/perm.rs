//! Permutations, pattern containment and descent statistics.
//!
//! Positions and values are 1-based in every public signature. Storage is a
//! plain 0-based vector of the values.

use std::fmt;
use std::str::FromStr;

use num_traits::PrimInt;

use crate::error::{Error, Result};

/// A permutation of `1..=n`, stored as its sequence of values.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Permutation {
    values: Vec<usize>,
}

/// Positions `i` with `π_i > π_{i+1}`, strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct DescentSet {
    positions: Vec<usize>,
}

/// Zero for no descents, `k` for the single descent `{k}`, infinite otherwise.
///
/// The derived ordering puts every finite value below `Infinite`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Magnitude {
    Finite(usize),
    Infinite,
}

impl Magnitude {
    pub fn finite(self) -> Option<usize> {
        match self {
            Magnitude::Finite(k) => Some(k),
            Magnitude::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Magnitude::Infinite
    }

    /// True when `m` is strictly below this magnitude.
    pub fn exceeds(self, m: usize) -> bool {
        match self {
            Magnitude::Finite(k) => m < k,
            Magnitude::Infinite => true,
        }
    }
}

impl fmt::Display for Magnitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Magnitude::Finite(k) => write!(f, "{k}"),
            Magnitude::Infinite => f.write_str("inf"),
        }
    }
}

impl DescentSet {
    pub fn new(positions: Vec<usize>) -> Result<Self> {
        if positions.first() == Some(&0) {
            return Err(Error::invalid("descent positions are 1-based"));
        }
        if positions.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid(format!(
                "descent positions must be strictly increasing: {positions:?}"
            )));
        }
        Ok(DescentSet { positions })
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.positions.binary_search(&i).is_ok()
    }

    pub fn last(&self) -> Option<usize> {
        self.positions.last().copied()
    }

    pub fn sum(&self) -> usize {
        self.positions.iter().sum()
    }
}

/// The permutation order-isomorphic to `seq`.
pub fn order_pattern<T: PrimInt>(seq: &[T]) -> Result<Permutation> {
    let mut order: Vec<usize> = (0..seq.len()).collect();
    order.sort_by_key(|&i| seq[i]);
    if order.windows(2).any(|w| seq[w[0]] == seq[w[1]]) {
        return Err(Error::invalid("order_pattern needs pairwise distinct entries"));
    }
    let mut values = vec![0; seq.len()];
    for (rank, &i) in order.iter().enumerate() {
        values[i] = rank + 1;
    }
    Ok(Permutation { values })
}

/// Minimum magnitude over a set of patterns; infinite for the empty set.
pub fn set_magnitude<'a, I>(patterns: I) -> Magnitude
where
    I: IntoIterator<Item = &'a Permutation>,
{
    patterns
        .into_iter()
        .map(Permutation::magnitude)
        .min()
        .unwrap_or(Magnitude::Infinite)
}

impl Permutation {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v > n || seen[v] {
                return Err(Error::invalid(format!(
                    "{values:?} is not a permutation of 1..={n}"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation { values })
    }

    pub(crate) fn from_values_unchecked(values: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(values.clone()).is_ok());
        Permutation { values }
    }

    pub fn empty() -> Self {
        Permutation { values: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            values: (1..=n).collect(),
        }
    }

    pub fn decreasing(n: usize) -> Self {
        Permutation {
            values: (1..=n).rev().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn into_values(self) -> Vec<usize> {
        self.values
    }

    /// Value at 1-based position `i`.
    pub fn get(&self, i: usize) -> Option<usize> {
        i.checked_sub(1).and_then(|i| self.values.get(i)).copied()
    }

    pub fn last(&self) -> Option<usize> {
        self.values.last().copied()
    }

    pub fn is_identity(&self) -> bool {
        self.values.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    pub fn is_decreasing(&self) -> bool {
        self.values.windows(2).all(|w| w[0] > w[1])
    }

    pub fn descents(&self) -> DescentSet {
        DescentSet {
            positions: descent_positions(&self.values).collect(),
        }
    }

    pub fn major_index(&self) -> usize {
        major_index(&self.values)
    }

    /// Length plus major index.
    pub fn maj_plus(&self) -> usize {
        self.len() + self.major_index()
    }

    /// Position of the last descent, 0 when there is none.
    pub fn last_descent(&self) -> usize {
        descent_positions(&self.values).last().unwrap_or(0)
    }

    pub fn magnitude(&self) -> Magnitude {
        let mut descents = descent_positions(&self.values);
        match (descents.next(), descents.next()) {
            (None, _) => Magnitude::Finite(0),
            (Some(k), None) => Magnitude::Finite(k),
            _ => Magnitude::Infinite,
        }
    }

    /// Length of the longest suffix made of fixed points.
    pub fn tail(&self) -> usize {
        self.values
            .iter()
            .enumerate()
            .rev()
            .take_while(|&(i, &v)| v == i + 1)
            .count()
    }

    /// Length of the longest strictly increasing suffix.
    pub fn slope(&self) -> usize {
        if self.values.is_empty() {
            return 0;
        }
        1 + self
            .values
            .windows(2)
            .rev()
            .take_while(|w| w[0] < w[1])
            .count()
    }

    /// Inserts the letter `l` at position `k`, shifting every value `>= l` up.
    pub fn insert(&self, k: usize, l: usize) -> Result<Permutation> {
        let n = self.len();
        if !(1..=n + 1).contains(&k) || !(1..=n + 1).contains(&l) {
            return Err(Error::invalid(format!(
                "insert position {k} / value {l} outside 1..={}",
                n + 1
            )));
        }
        let mut values: Vec<usize> = self
            .values
            .iter()
            .map(|&v| if v >= l { v + 1 } else { v })
            .collect();
        values.insert(k - 1, l);
        Ok(Permutation { values })
    }

    /// Deletes the letter at position `k` and standardises the rest.
    pub fn remove(&self, k: usize) -> Result<Permutation> {
        if !(1..=self.len()).contains(&k) {
            return Err(Error::invalid(format!(
                "remove position {k} outside 1..={}",
                self.len()
            )));
        }
        let removed = self.values[k - 1];
        let values = self
            .values
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != k - 1)
            .map(|(_, &v)| if v > removed { v - 1 } else { v })
            .collect();
        Ok(Permutation { values })
    }

    /// Pattern containment: some subsequence of `self` is order-isomorphic to `pattern`.
    pub fn contains(&self, pattern: &Permutation) -> bool {
        Matcher::new(pattern).occurs_in(&self.values)
    }

    pub fn avoids(&self, pattern: &Permutation) -> bool {
        !self.contains(pattern)
    }
}

pub(crate) fn descent_positions(values: &[usize]) -> impl DoubleEndedIterator<Item = usize> + '_ {
    values
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0] > w[1])
        .map(|(i, _)| i + 1)
}

pub(crate) fn major_index(values: &[usize]) -> usize {
    descent_positions(values).sum()
}

/// A pattern preprocessed for repeated containment queries.
///
/// Occurrences are searched left to right. For each pattern index the
/// nearest already-placed pattern values below and above are precomputed, so
/// a candidate letter is checked against at most two chosen letters.
#[derive(Clone, Debug)]
pub(crate) struct Matcher {
    len: usize,
    below: Vec<Option<usize>>,
    above: Vec<Option<usize>>,
    top: usize,
}

impl Matcher {
    pub(crate) fn new(pattern: &Permutation) -> Self {
        let p = pattern.values();
        let mut below = Vec::with_capacity(p.len());
        let mut above = Vec::with_capacity(p.len());
        for j in 0..p.len() {
            below.push((0..j).filter(|&i| p[i] < p[j]).max_by_key(|&i| p[i]));
            above.push((0..j).filter(|&i| p[i] > p[j]).min_by_key(|&i| p[i]));
        }
        let top = p.iter().position(|&v| v == p.len()).unwrap_or(0);
        Matcher {
            len: p.len(),
            below,
            above,
            top,
        }
    }

    pub(crate) fn occurs_in(&self, text: &[usize]) -> bool {
        if self.len == 0 {
            return true;
        }
        let mut chosen = vec![0; self.len];
        self.search(text, 0, &mut chosen, None)
    }

    /// Containment restricted to occurrences that use `text[pos]` as the
    /// image of the pattern's largest letter.
    pub(crate) fn occurs_through(&self, text: &[usize], pos: usize) -> bool {
        if self.len == 0 {
            return true;
        }
        let mut chosen = vec![0; self.len];
        self.search(text, 0, &mut chosen, Some(pos))
    }

    fn search(&self, text: &[usize], j: usize, chosen: &mut [usize], anchor: Option<usize>) -> bool {
        if j == self.len {
            return true;
        }
        let lo = if j == 0 { 0 } else { chosen[j - 1] + 1 };
        let remaining = self.len - j;
        if text.len() < lo + remaining {
            return false;
        }
        let mut hi = text.len() - remaining;
        let mut start = lo;
        if let Some(q) = anchor {
            if j < self.top {
                match q.checked_sub(self.top - j) {
                    Some(limit) => hi = hi.min(limit),
                    None => return false,
                }
            } else if j == self.top {
                if q < lo || q > hi {
                    return false;
                }
                start = q;
                hi = q;
            }
        }
        for p in start..=hi {
            let v = text[p];
            if let Some(b) = self.below[j] {
                if v < text[chosen[b]] {
                    continue;
                }
            }
            if let Some(a) = self.above[j] {
                if v > text[chosen[a]] {
                    continue;
                }
            }
            chosen[j] = p;
            if self.search(text, j + 1, chosen, anchor) {
                return true;
            }
        }
        false
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 9 {
            for v in &self.values {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
            f.write_str(&parts.join(","))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

/// Accepts a digit string (`"1324"`) or a comma list (`"10,1,2,3,4,5,6,7,8,9"`).
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let values = if s.contains(',') {
            s.split(',')
                .map(|part| {
                    part.trim()
                        .parse::<usize>()
                        .map_err(|e| Error::invalid(format!("bad permutation entry {part:?}: {e}")))
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::invalid(format!("bad permutation digit {c:?} in {s:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        Permutation::new(values)
    }
}
