#![allow(dead_code)]

use itertools::Itertools;
use majpat::{cap_profile, compose, decompose, PaddingProfile, PatternSet, Permutation};

pub fn p(s: &str) -> Permutation {
    s.parse().unwrap()
}

pub fn set(s: &str) -> PatternSet {
    s.parse().unwrap()
}

/// Every permutation of length `n`, from itertools.
pub fn all_perms(n: usize) -> impl Iterator<Item = Permutation> {
    (1..=n)
        .permutations(n)
        .map(|v| Permutation::new(v).unwrap())
}

pub fn perms_up_to(n: usize) -> impl Iterator<Item = Permutation> {
    (0..=n).flat_map(all_perms)
}

fn standardise(seq: &[usize]) -> Vec<usize> {
    seq.iter()
        .map(|&v| seq.iter().filter(|&&w| w <= v).count())
        .collect()
}

/// Index sets `I` with `π[I]` order-isomorphic to `σ`.
pub fn occurrences(pi: &Permutation, sigma: &Permutation) -> Vec<Vec<usize>> {
    (0..pi.len())
        .combinations(sigma.len())
        .filter(|idx| {
            let sub: Vec<usize> = idx.iter().map(|&i| pi.values()[i]).collect();
            standardise(&sub) == sigma.values()
        })
        .collect()
}

pub fn contains_oracle(pi: &Permutation, sigma: &Permutation) -> bool {
    !occurrences(pi, sigma).is_empty()
}

pub fn maj_oracle(pi: &Permutation) -> usize {
    pi.values()
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0] > w[1])
        .map(|(i, _)| i + 1)
        .sum()
}

/// All weak compositions of `total` into `parts` parts.
pub fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    (0..=total)
        .flat_map(|first| {
            compositions(total - first, parts - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// Profiles of length `parts` with size at most `max_size`.
pub fn profiles(parts: usize, max_size: usize) -> Vec<PaddingProfile> {
    (0..=max_size)
        .flat_map(|s| compositions(s, parts))
        .map(|c| PaddingProfile::new(c).unwrap())
        .collect()
}

/// Every profile coordinate-wise below `a`.
pub fn below(a: &PaddingProfile) -> Vec<PaddingProfile> {
    a.coords()
        .iter()
        .map(|&c| 0..=c)
        .multi_cartesian_product()
        .map(|c| PaddingProfile::new(c).unwrap())
        .collect()
}

pub fn last_descent_ok(gamma: &Permutation, a: &PaddingProfile) -> bool {
    match gamma.last() {
        None => true,
        Some(top) => a.coords()[..top].iter().any(|&c| c > 0),
    }
}

/// `compose(decompose(π)) = π`, `decompose(compose(γ, a)) = (γ, a)` and
/// `maj(π) = maj⁺(core(π))` for everything of length at most `max_len`.
pub fn check_decomposition_round_trips(max_len: usize) -> Result<usize, String> {
    let mut checked = 0;
    for pi in perms_up_to(max_len) {
        let d = decompose(&pi);
        if compose(&d.core, &d.profile).unwrap() != pi {
            return Err(format!("compose(decompose({pi})) differs"));
        }
        if !d.is_valid() {
            return Err(format!("decompose({pi}) breaks the last-descent condition"));
        }
        if maj_oracle(&pi) != d.core.maj_plus() {
            return Err(format!("maj({pi}) != maj⁺({})", d.core));
        }
        checked += 1;
    }
    for k in 0..=max_len {
        let extra = max_len - k;
        let prof = profiles(k + 1, extra);
        for gamma in all_perms(k) {
            for a in prof.iter().filter(|a| last_descent_ok(&gamma, a)) {
                if k == 0 && a.size() == 0 {
                    continue;
                }
                let d = decompose(&compose(&gamma, a).unwrap());
                if d.core != gamma || &d.profile != a {
                    return Err(format!("decompose(compose({gamma}, {a})) = ({}, {})", d.core, d.profile));
                }
                checked += 1;
            }
        }
    }
    Ok(checked)
}

/// `γ·a` contains `σ` iff `γ·cap(a, |σ|)` does.
pub fn check_capped_containment(max_core: usize, max_pattern: usize, max_size: usize) -> Result<usize, String> {
    let patterns: Vec<Permutation> = (1..=max_pattern).flat_map(all_perms).collect();
    let mut checked = 0;
    for k in 0..=max_core {
        let prof = profiles(k + 1, max_size);
        for gamma in all_perms(k) {
            for a in &prof {
                let full = compose(&gamma, a).unwrap();
                for sigma in &patterns {
                    let capped = compose(&gamma, &cap_profile(a, sigma.len())).unwrap();
                    if full.contains(sigma) != capped.contains(sigma) {
                        return Err(format!("{gamma}·{a} and its cap disagree on {sigma}"));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(checked)
}

/// Random down-set probes for several pattern sets.
pub fn check_down_sets(samples: usize, seed: u64) -> Result<usize, String> {
    let mut tested = 0;
    for pats in ["1324", "3412,1324", "132,231", "2314,321", "1243", "4123", "2413,3142"] {
        let check = majpat::enumeration::down_set_spot_check(&set(pats), 5, 6, samples, seed);
        if let Some((g, a, b)) = check.violation {
            return Err(format!("{{{pats}}}: {g}·{a} avoids but {g}·{b} does not"));
        }
        tested += check.tested;
    }
    Ok(tested)
}
