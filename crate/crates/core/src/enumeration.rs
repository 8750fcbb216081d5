//! Counting `M_n^m(Π)` two ways.
//!
//! The brute-force path grows permutations by inserting the next-largest
//! value into every slot. Inserting a new maximum never lowers the major
//! index and any new pattern occurrence must use the new letter, so a
//! subtree is cut as soon as either the major index bound or an occurrence
//! appears.
//!
//! The core path splits every permutation into its core `γ` and padding
//! profile `a`. Whether `γ · a` avoids `Π` depends only on the profile
//! capped at `K`, the longest pattern length, so each core contributes a sum
//! of binomials over finitely many capped signatures.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::{BigInt, BigUint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::decomposition::{compose_values, satisfies_last_descent, PaddingProfile};
use crate::error::{Error, Result};
use crate::perm::{major_index, set_magnitude, Magnitude, Matcher, Permutation};
use crate::poly::Polynomial;
use crate::scalar::{binomial, checked_add, from_u64, Count};
use crate::table::MajTable;
use crate::Rational;

/// A finite, deduplicated set of nonempty patterns.
#[derive(Clone)]
pub struct PatternSet {
    patterns: Vec<Permutation>,
    matchers: Vec<Matcher>,
}

impl PatternSet {
    pub fn new<I: IntoIterator<Item = Permutation>>(patterns: I) -> Result<Self> {
        let mut patterns: Vec<Permutation> = patterns.into_iter().collect();
        if patterns.iter().any(Permutation::is_empty) {
            return Err(Error::invalid("patterns must be nonempty"));
        }
        patterns.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        patterns.dedup();
        let matchers = patterns.iter().map(Matcher::new).collect();
        Ok(PatternSet { patterns, matchers })
    }

    pub fn empty() -> Self {
        PatternSet {
            patterns: Vec::new(),
            matchers: Vec::new(),
        }
    }

    pub fn patterns(&self) -> &[Permutation] {
        &self.patterns
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    /// Length of the longest pattern, 0 for the empty set.
    pub fn max_len(&self) -> usize {
        self.patterns.iter().map(Permutation::len).max().unwrap_or(0)
    }

    /// Cap used for capped signatures: the longest pattern length, at least 1.
    pub fn cap(&self) -> usize {
        self.max_len().max(1)
    }

    pub fn magnitude(&self) -> Magnitude {
        set_magnitude(&self.patterns)
    }

    /// Some pattern is increasing, so columns are eventually zero.
    pub fn contains_increasing(&self) -> bool {
        self.patterns.iter().any(Permutation::is_identity)
    }

    pub fn avoided_by(&self, pi: &Permutation) -> bool {
        self.avoided_by_values(pi.values())
    }

    pub(crate) fn avoided_by_values(&self, values: &[usize]) -> bool {
        !self.matchers.iter().any(|m| m.occurs_in(values))
    }

    /// Some pattern occurs with its largest letter at `values[pos]`.
    pub(crate) fn occurs_through(&self, values: &[usize], pos: usize) -> bool {
        self.matchers.iter().any(|m| m.occurs_through(values, pos))
    }
}

impl PartialEq for PatternSet {
    fn eq(&self, other: &Self) -> bool {
        self.patterns == other.patterns
    }
}

impl Eq for PatternSet {}

impl fmt::Debug for PatternSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PatternSet{{{self}}}")
    }
}

/// Digit-string patterns are joined with `,`; if any pattern has ten or more
/// letters the comma form is used for each and patterns are joined with `;`.
impl fmt::Display for PatternSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.max_len() > 9 { ";" } else { "," };
        let parts: Vec<String> = self.patterns.iter().map(|p| p.to_string()).collect();
        f.write_str(&parts.join(sep))
    }
}

/// Pattern list grammar: if the text contains `;` it separates patterns and
/// each pattern may be a digit string or a comma list; otherwise patterns are
/// digit strings separated by `,`. Blank text is the empty set.
impl FromStr for PatternSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(PatternSet::empty());
        }
        let sep = if s.contains(';') { ';' } else { ',' };
        let patterns = s
            .split(sep)
            .map(|item| {
                let item = item.trim();
                if item.is_empty() {
                    Err(Error::invalid(format!("empty pattern in list {s:?}")))
                } else {
                    item.parse::<Permutation>()
                }
            })
            .collect::<Result<Vec<_>>>()?;
        PatternSet::new(patterns)
    }
}

/// Limits for the exhaustive searches.
#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Maximum number of search-tree nodes a single call may visit.
    pub node_limit: u64,
    /// Worker threads; 1 runs on the calling thread.
    pub threads: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            node_limit: 2_000_000_000,
            threads: 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algorithm {
    Brute,
    Cores,
    Both,
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "brute" => Ok(Algorithm::Brute),
            "cores" => Ok(Algorithm::Cores),
            "both" => Ok(Algorithm::Both),
            _ => Err(Error::invalid(format!("unknown algorithm {s:?}"))),
        }
    }
}

struct Budget {
    limit: u64,
    used: AtomicU64,
}

impl Budget {
    fn new(limit: u64) -> Self {
        Budget {
            limit,
            used: AtomicU64::new(0),
        }
    }

    fn tick(&self) -> Result<()> {
        let used = self.used.fetch_add(1, Ordering::Relaxed) + 1;
        if used > self.limit {
            Err(Error::ResourceLimit {
                visited: used,
                limit: self.limit,
            })
        } else {
            Ok(())
        }
    }
}

/// Depth-first generator of `Π`-avoiders by insertion of the maximum.
struct Walker<'a> {
    patterns: &'a PatternSet,
    max_len: usize,
    bound: usize,
    /// Bound applies to `len + maj` instead of `maj`.
    plus: bool,
    budget: &'a Budget,
}

type Tally = Vec<Vec<u64>>;

impl Walker<'_> {
    fn admits(&self, len: usize, maj: usize) -> bool {
        maj + if self.plus { len } else { 0 } <= self.bound
    }

    fn for_each_child(
        &self,
        perm: &mut Vec<usize>,
        mut each: impl FnMut(&mut Vec<usize>, usize) -> Result<()>,
    ) -> Result<()> {
        let next = perm.len() + 1;
        for slot in 0..next {
            perm.insert(slot, next);
            let maj = major_index(perm);
            if self.admits(next, maj) && !self.patterns.occurs_through(perm, slot) {
                self.budget.tick()?;
                each(perm, maj)?;
            }
            perm.remove(slot);
        }
        Ok(())
    }

    fn walk<F: FnMut(&[usize], usize)>(&self, perm: &mut Vec<usize>, maj: usize, visit: &mut F) -> Result<()> {
        visit(perm, maj);
        if perm.len() >= self.max_len {
            return Ok(());
        }
        self.for_each_child(perm, |child, m| self.walk(child, m, visit))
    }

    /// Visits nodes shallower than `depth` and returns the nodes at `depth`.
    fn frontier<F: FnMut(&[usize], usize)>(
        &self,
        perm: &mut Vec<usize>,
        maj: usize,
        depth: usize,
        visit: &mut F,
        out: &mut Vec<(Vec<usize>, usize)>,
    ) -> Result<()> {
        if perm.len() == depth {
            out.push((perm.clone(), maj));
            return Ok(());
        }
        visit(perm, maj);
        if perm.len() >= self.max_len {
            return Ok(());
        }
        self.for_each_child(perm, |child, m| self.frontier(child, m, depth, visit, out))
    }

    fn tally(&self, threads: usize) -> Result<Tally> {
        let empty = || vec![vec![0u64; self.bound + 1]; self.max_len + 1];
        let record = |tally: &mut Tally, perm: &[usize], maj: usize| tally[perm.len()][maj] += 1;
        if threads <= 1 {
            let mut tally = empty();
            self.walk(&mut Vec::new(), 0, &mut |p, m| record(&mut tally, p, m))?;
            return Ok(tally);
        }
        let depth = self.max_len.min(6);
        let mut tally = empty();
        let mut frontier = Vec::new();
        self.frontier(&mut Vec::new(), 0, depth, &mut |p, m| record(&mut tally, p, m), &mut frontier)?;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::invalid(format!("cannot start {threads} threads: {e}")))?;
        let parts: Vec<Result<Tally>> = pool.install(|| {
            frontier
                .into_par_iter()
                .map(|(mut perm, maj)| {
                    let mut local = empty();
                    self.walk(&mut perm, maj, &mut |p, m| record(&mut local, p, m))?;
                    Ok(local)
                })
                .collect()
        });
        for part in parts {
            for (row, local) in tally.iter_mut().zip(part?) {
                for (cell, v) in row.iter_mut().zip(local) {
                    *cell += v;
                }
            }
        }
        Ok(tally)
    }
}

/// Lazy stream of the `Π`-avoiders of one length, optionally with a fixed major index.
pub struct Avoiders<'a> {
    patterns: &'a PatternSet,
    len: usize,
    maj: Option<usize>,
    stack: Vec<(Vec<usize>, usize)>,
}

/// All permutations of length `n` avoiding `patterns`.
pub fn generate_avoiders(n: usize, patterns: &PatternSet) -> Avoiders<'_> {
    Avoiders {
        patterns,
        len: n,
        maj: None,
        stack: vec![(Vec::new(), 0)],
    }
}

impl Avoiders<'_> {
    /// Restricts the stream to major index exactly `m`.
    pub fn with_major_index(mut self, m: usize) -> Self {
        self.maj = Some(m);
        self
    }
}

impl Iterator for Avoiders<'_> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        while let Some((perm, maj)) = self.stack.pop() {
            if perm.len() == self.len {
                if self.maj.is_none_or(|m| m == maj) {
                    return Some(Permutation::from_values_unchecked(perm));
                }
                continue;
            }
            let next = perm.len() + 1;
            for slot in (0..next).rev() {
                let mut child = perm.clone();
                child.insert(slot, next);
                let child_maj = major_index(&child);
                if self.maj.is_some_and(|m| child_maj > m) || self.patterns.occurs_through(&child, slot) {
                    continue;
                }
                self.stack.push((child, child_maj));
            }
        }
        None
    }
}

/// `S_n(Π)`, by exhaustive generation.
pub fn count_avoiders<C: Count>(n: usize, patterns: &PatternSet, config: &SearchConfig) -> Result<C> {
    let budget = Budget::new(config.node_limit);
    let walker = Walker {
        patterns,
        max_len: n,
        bound: n * n.saturating_sub(1) / 2,
        plus: false,
        budget: &budget,
    };
    let tally = walker.tally(config.threads)?;
    let total: u64 = tally[n].iter().sum();
    from_u64(total)
}

/// The table of `M_n^m(Π)` for `1 <= n <= max_n`, `0 <= m <= max_maj`.
pub fn maj_table<C: Count>(
    max_n: usize,
    max_maj: usize,
    patterns: &PatternSet,
    algorithm: Algorithm,
    config: &SearchConfig,
) -> Result<MajTable<C>> {
    if max_n == 0 {
        return Err(Error::invalid("max_n must be at least 1"));
    }
    match algorithm {
        Algorithm::Brute => maj_table_brute(max_n, max_maj, patterns, config),
        Algorithm::Cores => maj_table_cores(max_n, max_maj, patterns, config),
        Algorithm::Both => {
            let brute = maj_table_brute::<C>(max_n, max_maj, patterns, config)?;
            let cores = maj_table_cores::<C>(max_n, max_maj, patterns, config)?;
            match brute.first_difference(&cores) {
                None => Ok(brute),
                Some((n, m, b, c)) => Err(Error::Disagreement {
                    n,
                    m,
                    brute: b.to_string(),
                    cores: c.to_string(),
                }),
            }
        }
    }
}

fn maj_table_brute<C: Count>(
    max_n: usize,
    max_maj: usize,
    patterns: &PatternSet,
    config: &SearchConfig,
) -> Result<MajTable<C>> {
    let budget = Budget::new(config.node_limit);
    let walker = Walker {
        patterns,
        max_len: max_n,
        bound: max_maj,
        plus: false,
        budget: &budget,
    };
    let tally = walker.tally(config.threads)?;
    let mut table = MajTable::zeros(patterns.clone(), max_n, max_maj);
    for (n, counts) in tally.iter().enumerate().skip(1) {
        for (m, &count) in counts.iter().enumerate().take(table.row_width(n)) {
            table.set(n, m, from_u64(count)?);
        }
    }
    Ok(table)
}

fn maj_table_cores<C: Count>(
    max_n: usize,
    max_maj: usize,
    patterns: &PatternSet,
    config: &SearchConfig,
) -> Result<MajTable<C>> {
    let by_maj = collect_cores(patterns, max_maj, max_n.saturating_sub(1), config)?;
    let mut table = MajTable::zeros(patterns.clone(), max_n, max_maj);
    // column-major: every column is complete before the next one starts
    for (m, cores) in by_maj.iter().enumerate() {
        let mut column = vec![C::zero(); max_n + 1];
        for core in cores {
            let counts = core_counts::<C>(core, patterns, max_n)?;
            for (cell, c) in column.iter_mut().zip(counts) {
                *cell = checked_add(cell, &c)?;
            }
        }
        for (n, value) in column.into_iter().enumerate().skip(1) {
            if m < table.row_width(n) {
                table.set(n, m, value);
            }
        }
    }
    Ok(table)
}

/// Every admissible core with `maj⁺(γ) = m`, together with `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreSet {
    pub m: usize,
    pub cores: Vec<Permutation>,
}

/// `C(m, Π)`: the distinct cores of `Π`-avoiders with major index `m`.
pub fn core_set(m: usize, patterns: &PatternSet, config: &SearchConfig) -> Result<CoreSet> {
    let mut by_maj = collect_cores(patterns, m, m, config)?;
    Ok(CoreSet {
        m,
        cores: by_maj.pop().unwrap_or_default(),
    })
}

/// Admissible cores grouped by `maj⁺`, for `maj⁺ <= max_m` and length `<= max_len`.
fn collect_cores(
    patterns: &PatternSet,
    max_m: usize,
    max_len: usize,
    config: &SearchConfig,
) -> Result<Vec<Vec<Permutation>>> {
    let budget = Budget::new(config.node_limit);
    let walker = Walker {
        patterns,
        max_len,
        bound: max_m,
        plus: true,
        budget: &budget,
    };
    let mut by_maj: Vec<Vec<Permutation>> = vec![Vec::new(); max_m + 1];
    walker.walk(&mut Vec::new(), 0, &mut |perm, maj| {
        let gamma = Permutation::from_values_unchecked(perm.to_vec());
        if gamma.is_empty() || !admissible_units(&gamma, patterns).is_empty() {
            by_maj[perm.len() + maj].push(gamma);
        }
    })?;
    for cores in &mut by_maj {
        cores.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    }
    Ok(by_maj)
}

/// The coordinates `i <= γ_k` for which `γ · e_i` avoids `Π`.
///
/// Avoiding profiles form a down-set and every valid profile of core `γ`
/// has some positive coordinate `i <= γ_k`, so `γ` is the core of some
/// avoider exactly when this list is nonempty.
pub fn admissible_units(gamma: &Permutation, patterns: &PatternSet) -> Vec<usize> {
    let Some(top) = gamma.last() else {
        return Vec::new();
    };
    let mut coords = vec![0; gamma.len() + 1];
    (1..=top)
        .filter(|&i| {
            coords[i - 1] = 1;
            let ok = patterns.avoided_by(&compose_values(gamma.values(), &coords));
            coords[i - 1] = 0;
            ok
        })
        .collect()
}

/// Visits every capped signature `c ∈ {0..K}^{k+1}` with `|c| <= max_sum`
/// such that `γ · c` avoids `Π`.
///
/// Coordinates are fixed left to right with the rest held at zero. The
/// avoiding signatures form a down-set, so once a partial vector contains a
/// pattern no larger value of the current coordinate can avoid either.
fn for_each_signature(gamma: &Permutation, patterns: &PatternSet, max_sum: usize, mut f: impl FnMut(&[usize])) {
    fn rec(
        gamma: &[usize],
        patterns: &PatternSet,
        cap: usize,
        coords: &mut Vec<usize>,
        j: usize,
        room: usize,
        f: &mut impl FnMut(&[usize]),
    ) {
        if j == coords.len() {
            f(coords);
            return;
        }
        for v in 0..=cap.min(room) {
            coords[j] = v;
            if v > 0 && !patterns.avoided_by_values(compose_values(gamma, coords).values()) {
                break;
            }
            rec(gamma, patterns, cap, coords, j + 1, room - v, f);
        }
        coords[j] = 0;
    }

    if !patterns.avoided_by(gamma) {
        return;
    }
    let mut coords = vec![0; gamma.len() + 1];
    rec(gamma.values(), patterns, patterns.cap(), &mut coords, 0, max_sum, &mut f);
}

/// Shape of one capped signature: `k + |c|` and how many coordinates hit the cap.
struct Signature {
    base: usize,
    saturated: usize,
}

fn valid_signatures(gamma: &Permutation, patterns: &PatternSet, max_sum: usize) -> Vec<Signature> {
    let cap = patterns.cap();
    let mut out = Vec::new();
    for_each_signature(gamma, patterns, max_sum, |c| {
        if satisfies_last_descent(gamma, c) {
            out.push(Signature {
                base: gamma.len() + c.iter().sum::<usize>(),
                saturated: c.iter().filter(|&&v| v == cap).count(),
            });
        }
    });
    out
}

/// `M_n^{[γ]}(Π)` for every `0 <= n <= max_n`.
pub fn core_counts<C: Count>(gamma: &Permutation, patterns: &PatternSet, max_n: usize) -> Result<Vec<C>> {
    let mut counts = vec![C::zero(); max_n + 1];
    let Some(max_sum) = max_n.checked_sub(gamma.len()) else {
        return Ok(counts);
    };
    for sig in valid_signatures(gamma, patterns, max_sum) {
        if sig.saturated == 0 {
            counts[sig.base] = checked_add(&counts[sig.base], &C::one())?;
            continue;
        }
        let s = sig.saturated as u64;
        for (n, cell) in counts.iter_mut().enumerate().skip(sig.base) {
            let extra = (n - sig.base) as u64;
            let ways: C = binomial(extra + s - 1, s - 1)?;
            *cell = checked_add(cell, &ways)?;
        }
    }
    Ok(counts)
}

/// `M_n^{[γ]}(Π)`: avoiders of length `n` whose core is `γ`.
pub fn count_by_core<C: Count>(gamma: &Permutation, n: usize, patterns: &PatternSet) -> Result<C> {
    Ok(core_counts::<C>(gamma, patterns, n)?.pop().unwrap_or_else(C::zero))
}

/// A polynomial that agrees with a counting sequence from `onset` on.
#[derive(Clone, Debug, PartialEq)]
pub struct EventualPolynomial {
    pub polynomial: Polynomial<Rational>,
    /// Smallest `n₀` with `count(n) = P(n)` for all `n >= n₀`.
    pub onset: usize,
    /// A priori bound `k + K(k+1)` maximised over the cores involved.
    pub onset_bound: usize,
}

fn signature_polynomial(sig: &Signature) -> Polynomial<Rational> {
    // binomial(n - base + s - 1, s - 1)
    let s = sig.saturated;
    Polynomial::shifted_binomial(sig.base as i64 - s as i64 + 1, s - 1)
}

fn onset_bound(gamma: &Permutation, patterns: &PatternSet) -> usize {
    let k = gamma.len();
    k + patterns.cap() * (k + 1)
}

fn exact_onset(polynomial: &Polynomial<Rational>, exact: &[BigUint]) -> usize {
    let mut onset = exact.len();
    while onset > 0 {
        let n = onset - 1;
        let value = polynomial.eval_int(n as i64);
        if value != Rational::from_integer(BigInt::from(exact[n].clone())) {
            break;
        }
        onset = n;
    }
    onset
}

/// The eventual polynomial of `M_n^{[γ]}(Π)`.
pub fn core_polynomial(gamma: &Permutation, patterns: &PatternSet) -> Result<EventualPolynomial> {
    let mut polynomial = Polynomial::zero();
    for sig in valid_signatures(gamma, patterns, usize::MAX) {
        if sig.saturated > 0 {
            polynomial += signature_polynomial(&sig);
        }
    }
    let bound = onset_bound(gamma, patterns);
    let exact = core_counts::<BigUint>(gamma, patterns, bound)?;
    Ok(EventualPolynomial {
        onset: exact_onset(&polynomial, &exact),
        polynomial,
        onset_bound: bound,
    })
}

/// The eventual polynomial of `M_n^m(Π)`, summed over `C(m, Π)`.
pub fn eventual_polynomial(m: usize, patterns: &PatternSet, config: &SearchConfig) -> Result<EventualPolynomial> {
    let cores = core_set(m, patterns, config)?;
    let bound = cores
        .cores
        .iter()
        .map(|g| onset_bound(g, patterns))
        .max()
        .unwrap_or(0);
    let mut polynomial = Polynomial::zero();
    let mut exact = vec![BigUint::default(); bound + 1];
    for gamma in &cores.cores {
        polynomial += core_polynomial(gamma, patterns)?.polynomial;
        for (cell, c) in exact.iter_mut().zip(core_counts::<BigUint>(gamma, patterns, bound)?) {
            *cell += c;
        }
    }
    Ok(EventualPolynomial {
        onset: exact_onset(&polynomial, &exact),
        polynomial,
        onset_bound: bound,
    })
}

/// `M_n^m(Π)` for `n` in `0..=max_n` via the core path.
pub fn column_by_cores<C: Count>(
    m: usize,
    max_n: usize,
    patterns: &PatternSet,
    config: &SearchConfig,
) -> Result<Vec<C>> {
    let cores = core_set(m, patterns, config)?;
    let mut column = vec![C::zero(); max_n + 1];
    for gamma in &cores.cores {
        for (cell, c) in column.iter_mut().zip(core_counts::<C>(gamma, patterns, max_n)?) {
            *cell = checked_add(cell, &c)?;
        }
    }
    Ok(column)
}

/// Outcome of sampling the down-set property of avoiding profiles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DownSetCheck {
    /// Samples whose upper profile avoided `Π` and were therefore tested.
    pub tested: usize,
    /// A core with profiles `b <= a` where `γ · a` avoids but `γ · b` does not.
    pub violation: Option<(Permutation, PaddingProfile, PaddingProfile)>,
}

/// Random spot check that `{a : γ · a avoids Π}` is closed downwards.
pub fn down_set_spot_check(
    patterns: &PatternSet,
    max_core_len: usize,
    max_coord: usize,
    samples: usize,
    seed: u64,
) -> DownSetCheck {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tested = 0;
    for _ in 0..samples {
        let k = rng.gen_range(0..=max_core_len);
        let mut values: Vec<usize> = (1..=k).collect();
        for i in (1..k).rev() {
            values.swap(i, rng.gen_range(0..=i));
        }
        let upper: Vec<usize> = (0..=k).map(|_| rng.gen_range(0..=max_coord)).collect();
        if !patterns.avoided_by_values(compose_values(&values, &upper).values()) {
            continue;
        }
        tested += 1;
        let lower: Vec<usize> = upper.iter().map(|&a| rng.gen_range(0..=a)).collect();
        if !patterns.avoided_by_values(compose_values(&values, &lower).values()) {
            return DownSetCheck {
                tested,
                violation: Some((
                    Permutation::from_values_unchecked(values),
                    PaddingProfile::new(upper).expect("nonempty"),
                    PaddingProfile::new(lower).expect("nonempty"),
                )),
            };
        }
    }
    DownSetCheck {
        tested,
        violation: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn set(s: &str) -> PatternSet {
        s.parse().unwrap()
    }

    #[test]
    fn pattern_set_parsing() {
        let s = set("3412,1324,1324");
        assert_eq!(s.len(), 2);
        assert_eq!(s.max_len(), 4);
        assert_eq!(s.magnitude(), Magnitude::Finite(2));
        assert!(!s.contains_increasing());
        assert!(set("").is_empty());
        assert_eq!(set("").magnitude(), Magnitude::Infinite);
        assert_eq!(set("").cap(), 1);
        assert!(set("12,321").contains_increasing());

        let long = set("10,1,2,3,4,5,6,7,8,9;1324");
        assert_eq!(long.len(), 2);
        assert_eq!(long.to_string(), "1324;10,1,2,3,4,5,6,7,8,9");
        assert_eq!(long.to_string().parse::<PatternSet>().unwrap(), long);
        assert_eq!(set("132;231"), set("132,231"));

        assert!("1,2,3".parse::<PatternSet>().is_err());
        assert!("12,,21".parse::<PatternSet>().is_err());
        assert!(PatternSet::new(vec![Permutation::empty()]).is_err());
    }

    #[test]
    fn avoider_counts() {
        let cfg = SearchConfig::default();
        assert_eq!(count_avoiders::<u64>(4, &set("1324"), &cfg).unwrap(), 23);
        assert_eq!(count_avoiders::<u64>(5, &set("1324"), &cfg).unwrap(), 103);
        assert_eq!(count_avoiders::<u64>(6, &PatternSet::empty(), &cfg).unwrap(), 720);
        assert_eq!(count_avoiders::<u64>(0, &set("1"), &cfg).unwrap(), 1);
        assert_eq!(count_avoiders::<u64>(3, &set("1"), &cfg).unwrap(), 0);
    }

    #[test]
    fn streams_match_counts() {
        let pats = set("231");
        let all: Vec<_> = generate_avoiders(5, &pats).collect();
        assert_eq!(all.len(), 42);
        assert!(all.iter().all(|pi| pi.avoids(&p("231")) && pi.len() == 5));
        let with_maj: Vec<_> = generate_avoiders(5, &pats).with_major_index(3).collect();
        assert_eq!(with_maj.len(), all.iter().filter(|pi| pi.major_index() == 3).count());
    }

    #[test]
    fn node_limit_is_enforced() {
        let cfg = SearchConfig {
            node_limit: 100,
            threads: 1,
        };
        let err = count_avoiders::<u64>(7, &PatternSet::empty(), &cfg).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { limit: 100, .. }));
    }

    #[test]
    fn table_entries() {
        let cfg = SearchConfig::default();
        let t = maj_table::<u64>(5, 6, &set("1324"), Algorithm::Both, &cfg).unwrap();
        assert_eq!(t.get(5, 5), 19);
        assert_eq!(t.get(4, 2), 4);
        let t = maj_table::<u64>(3, 3, &PatternSet::empty(), Algorithm::Both, &cfg).unwrap();
        assert_eq!(t.get(3, 2), 2);
        assert!(maj_table::<u64>(0, 3, &PatternSet::empty(), Algorithm::Brute, &cfg).is_err());
    }

    #[test]
    fn parallel_tally_matches_serial() {
        let serial = maj_table::<u64>(8, 10, &set("2413"), Algorithm::Brute, &SearchConfig::default()).unwrap();
        let cfg = SearchConfig {
            threads: 4,
            ..SearchConfig::default()
        };
        let parallel = maj_table::<u64>(8, 10, &set("2413"), Algorithm::Brute, &cfg).unwrap();
        assert_eq!(serial, parallel);
    }

    #[test]
    fn core_sets() {
        let cfg = SearchConfig::default();
        assert_eq!(core_set(0, &set("123"), &cfg).unwrap().cores, vec![Permutation::empty()]);
        assert_eq!(core_set(1, &PatternSet::empty(), &cfg).unwrap().cores, vec![p("1")]);
        assert_eq!(core_set(2, &PatternSet::empty(), &cfg).unwrap().cores, vec![p("12")]);
        let c = core_set(5, &set("1324"), &cfg).unwrap();
        assert!(c.cores.iter().all(|g| g.maj_plus() == 5 && g.len() <= 5));
    }

    #[test]
    fn admissible_unit_profiles() {
        // 12·(0,1,x) contains 1324 once x > 0, but 12·e_2 = 132 avoids it
        assert_eq!(admissible_units(&p("12"), &set("1324")), vec![1, 2]);
        assert_eq!(admissible_units(&p("12"), &set("132")), vec![1]);
        assert!(admissible_units(&p("12"), &set("231,132")).is_empty());
    }

    #[test]
    fn per_core_counts() {
        for n in 2..10u64 {
            let expected = n * (n - 1) / 2 - 1;
            assert_eq!(count_by_core::<u64>(&p("12"), n as usize, &PatternSet::empty()).unwrap(), expected);
        }
        assert_eq!(count_by_core::<u64>(&p("12"), 4, &set("1324")).unwrap(), 4);
        for n in 0..8 {
            assert_eq!(count_by_core::<u64>(&Permutation::empty(), n, &set("2413")).unwrap(), 1);
        }
        assert_eq!(count_by_core::<u64>(&Permutation::empty(), 3, &set("123")).unwrap(), 0);
        assert_eq!(count_by_core::<u64>(&p("12"), 1, &set("123")).unwrap(), 0);
    }

    #[test]
    fn eventual_polynomials() {
        let cfg = SearchConfig::default();
        let q = |n: i64| Rational::from_integer(BigInt::from(n));
        let ep = eventual_polynomial(1, &PatternSet::empty(), &cfg).unwrap();
        assert_eq!(ep.polynomial.coeffs(), &[q(-1), q(1)]);
        assert!(ep.onset <= 2);

        let ep = eventual_polynomial(0, &set("2413,321"), &cfg).unwrap();
        assert_eq!(ep.polynomial.coeffs(), &[q(1)]);

        let ep = eventual_polynomial(2, &set("1324"), &cfg).unwrap();
        assert_eq!(ep.polynomial.coeffs(), &[q(-4), q(2)]);
        assert!(ep.onset <= 3);

        let ep = eventual_polynomial(3, &set("123"), &cfg).unwrap();
        assert!(ep.polynomial.is_zero());
    }

    #[test]
    fn down_set_sampling_finds_no_violation() {
        for pats in ["1324", "3412,1324", "132,231", "2314,321"] {
            let check = down_set_spot_check(&set(pats), 4, 5, 3_000, 7);
            assert!(check.tested > 0, "{pats}");
            assert_eq!(check.violation, None, "{pats}");
        }
    }
}
