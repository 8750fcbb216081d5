//! Core / padding-profile decomposition `π = γ · a`.
//!
//! `γ` is the pattern of the letters up to the last descent of `π`; `a`
//! records how many letters of the increasing suffix fall into each vertical
//! gap between the letters of `γ`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::perm::{order_pattern, DescentSet, Permutation};

/// Gap sizes `(a_1, ..., a_{k+1})`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PaddingProfile {
    coords: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoreDecomposition {
    pub core: Permutation,
    pub profile: PaddingProfile,
}

impl PaddingProfile {
    pub fn new(coords: Vec<usize>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::invalid("a padding profile has at least one coordinate"));
        }
        Ok(PaddingProfile { coords })
    }

    /// The profile with a single 1 at 1-based coordinate `i`.
    pub fn unit(len: usize, i: usize) -> Result<Self> {
        if !(1..=len).contains(&i) {
            return Err(Error::invalid(format!("unit coordinate {i} outside 1..={len}")));
        }
        let mut coords = vec![0; len];
        coords[i - 1] = 1;
        Ok(PaddingProfile { coords })
    }

    pub fn coords(&self) -> &[usize] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `|a|`, the number of padded letters.
    pub fn size(&self) -> usize {
        self.coords.iter().sum()
    }

    /// Coordinate-wise `<=`.
    pub fn is_below(&self, other: &PaddingProfile) -> bool {
        self.len() == other.len() && self.coords.iter().zip(&other.coords).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for PaddingProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for PaddingProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PaddingProfile{self}")
    }
}

impl FromStr for PaddingProfile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::invalid(format!("profile {s:?} must be parenthesised")))?;
        let coords = inner
            .split(',')
            .map(|c| {
                c.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::invalid(format!("bad profile coordinate {c:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        PaddingProfile::new(coords)
    }
}

impl CoreDecomposition {
    /// The last-descent condition: some `i <= γ_k` has `a_i > 0`, or the core is empty.
    pub fn is_valid(&self) -> bool {
        satisfies_last_descent(&self.core, self.profile.coords())
    }
}

pub(crate) fn satisfies_last_descent(core: &Permutation, coords: &[usize]) -> bool {
    match core.last() {
        None => coords.len() == 1,
        Some(top) => coords.len() == core.len() + 1 && coords[..top].iter().any(|&c| c > 0),
    }
}

/// `γ · a`: the letters of `γ` lifted over the gaps, followed by the unused
/// values in increasing order.
pub fn compose(gamma: &Permutation, a: &PaddingProfile) -> Result<Permutation> {
    if a.len() != gamma.len() + 1 {
        return Err(Error::invalid(format!(
            "profile {a} needs {} coordinates for a core of length {}",
            gamma.len() + 1,
            gamma.len()
        )));
    }
    Ok(compose_values(gamma.values(), a.coords()))
}

pub(crate) fn compose_values(gamma: &[usize], coords: &[usize]) -> Permutation {
    let k = gamma.len();
    let n = k + coords.iter().sum::<usize>();
    // lifted[v] = v + a_1 + ... + a_v
    let mut lifted = Vec::with_capacity(k + 1);
    lifted.push(0);
    let mut acc = 0;
    for v in 1..=k {
        acc += coords[v - 1];
        lifted.push(v + acc);
    }
    let mut used = vec![false; n + 1];
    let mut values = Vec::with_capacity(n);
    for &g in gamma {
        let v = lifted[g];
        used[v] = true;
        values.push(v);
    }
    values.extend((1..=n).filter(|&v| !used[v]));
    Permutation::from_values_unchecked(values)
}

/// Splits `π` at its last descent.
pub fn decompose(pi: &Permutation) -> CoreDecomposition {
    let k = pi.last_descent();
    let n = pi.len();
    let prefix = &pi.values()[..k];
    let core = order_pattern(prefix).expect("permutation letters are distinct");
    let mut sorted = prefix.to_vec();
    sorted.sort_unstable();
    let mut coords = Vec::with_capacity(k + 1);
    let mut prev = 0;
    for &v in &sorted {
        coords.push(v - prev - 1);
        prev = v;
    }
    coords.push(n - prev);
    CoreDecomposition {
        core,
        profile: PaddingProfile { coords },
    }
}

/// Coordinate-wise `min(a_i, cap)`.
pub fn cap_profile(a: &PaddingProfile, cap: usize) -> PaddingProfile {
    PaddingProfile {
        coords: a.coords.iter().map(|&c| c.min(cap)).collect(),
    }
}

/// The unique permutation of length `n` avoiding 132 and 213 with descent set `desc`.
///
/// Increasing runs end at each descent and at `n`; the runs take blocks of
/// values from the top down.
pub fn co_layered(desc: &DescentSet, n: usize) -> Result<Permutation> {
    if let Some(last) = desc.last() {
        if last >= n {
            return Err(Error::invalid(format!(
                "descent {last} does not fit in a permutation of length {n}"
            )));
        }
    }
    let mut values = Vec::with_capacity(n);
    let mut top = n;
    let mut start = 0;
    for end in desc.positions().iter().copied().chain(std::iter::once(n)) {
        let run = end - start;
        values.extend(top + 1 - run..=top);
        top -= run;
        start = end;
    }
    Ok(Permutation::from_values_unchecked(values))
}
