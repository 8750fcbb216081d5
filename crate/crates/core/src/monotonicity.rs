//! The injection `f: M_n^m(σ) → M_{n+1}^m(σ)` and an exhaustive harness for it.

use std::collections::HashMap;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::enumeration::{generate_avoiders, maj_table, Algorithm, PatternSet, SearchConfig};
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Which of the three cases of `f` applied, with the insertion used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InjectionCase {
    /// `tail(σ) = 0`: append `n+1`.
    AppendMax,
    /// `slope(π) >= tail(σ) > 0`: duplicate the letter at `position`.
    ExpandAtTail { position: usize, value: usize },
    /// `slope(π) < tail(σ)`: insert 1 at `position`, the start of the final run.
    InsertMinIntoSlope { position: usize },
}

impl InjectionCase {
    pub fn name(&self) -> &'static str {
        match self {
            InjectionCase::AppendMax => "append_max",
            InjectionCase::ExpandAtTail { .. } => "expand_at_tail",
            InjectionCase::InsertMinIntoSlope { .. } => "insert_min_into_slope",
        }
    }
}

fn reject_increasing(sigma: &Permutation) -> Result<()> {
    if sigma.descents().is_empty() {
        let k = sigma.len();
        return Err(Error::UnsupportedPattern {
            pattern: sigma.to_string(),
            reason: format!(
                "increasing patterns have no descents; every permutation of length n > m({}) + 1 \
                 with major index m contains {sigma}, so each column is eventually zero",
                k.saturating_sub(1)
            ),
        });
    }
    Ok(())
}

/// `f(π)` for `π` avoiding `σ`; `|f(π)| = |π| + 1` and `maj(f(π)) = maj(π)`.
pub fn monotone_injection(pi: &Permutation, sigma: &Permutation) -> Result<(Permutation, InjectionCase)> {
    reject_increasing(sigma)?;
    if pi.contains(sigma) {
        return Err(Error::Precondition(format!("{pi} contains {sigma}")));
    }
    let n = pi.len();
    let tail = sigma.tail();
    let slope = pi.slope();
    if tail == 0 {
        Ok((pi.insert(n + 1, n + 1)?, InjectionCase::AppendMax))
    } else if slope >= tail {
        let position = n + 1 - tail;
        let value = pi.get(position).expect("tail(σ) <= slope(π) <= n");
        Ok((pi.insert(position, value)?, InjectionCase::ExpandAtTail { position, value }))
    } else {
        let position = n + 1 - slope;
        Ok((pi.insert(position, 1)?, InjectionCase::InsertMinIntoSlope { position }))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CaseTally {
    pub append_max: u64,
    pub expand_at_tail: u64,
    pub insert_min_into_slope: u64,
}

impl CaseTally {
    fn record(&mut self, case: &InjectionCase) {
        match case {
            InjectionCase::AppendMax => self.append_max += 1,
            InjectionCase::ExpandAtTail { .. } => self.expand_at_tail += 1,
            InjectionCase::InsertMinIntoSlope { .. } => self.insert_min_into_slope += 1,
        }
    }

    pub fn total(&self) -> u64 {
        self.append_max + self.expand_at_tail + self.insert_min_into_slope
    }
}

/// Counts on both sides of the injection for one major index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnCheck {
    pub m: usize,
    pub count_n: u128,
    pub count_next: u128,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub pi: Permutation,
    pub m: usize,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotonicityReport {
    pub sigma: Permutation,
    pub n: usize,
    pub max_maj: usize,
    pub verified: bool,
    pub counterexample: Option<Counterexample>,
    pub tally: CaseTally,
    pub columns: Vec<ColumnCheck>,
}

impl MonotonicityReport {
    pub fn to_json_value(&self) -> Value {
        json!({
            "schema": 1,
            "sigma": self.sigma.to_string(),
            "n": self.n,
            "max_maj": self.max_maj,
            "verified": self.verified,
            "counterexample": self.counterexample.as_ref().map(|c| json!({
                "pi": c.pi.to_string(),
                "m": c.m,
                "reason": c.reason,
            })),
            "cases": {
                "append_max": self.tally.append_max,
                "expand_at_tail": self.tally.expand_at_tail,
                "insert_min_into_slope": self.tally.insert_min_into_slope,
            },
            "columns": self.columns.iter().map(|c| json!({
                "m": c.m,
                "count_n": c.count_n.to_string(),
                "count_next": c.count_next.to_string(),
            })).collect::<Vec<_>>(),
        })
    }
}

fn expected_case(pi: &Permutation, sigma: &Permutation) -> &'static str {
    match (sigma.tail(), pi.slope()) {
        (0, _) => "append_max",
        (t, s) if s >= t => "expand_at_tail",
        _ => "insert_min_into_slope",
    }
}

fn check_image(pi: &Permutation, sigma: &Permutation) -> std::result::Result<(Permutation, InjectionCase), String> {
    let (image, case) = monotone_injection(pi, sigma).map_err(|e| e.to_string())?;
    if case.name() != expected_case(pi, sigma) {
        return Err(format!("case {} selected, expected {}", case.name(), expected_case(pi, sigma)));
    }
    if image.len() != pi.len() + 1 {
        return Err(format!("image {image} has the wrong length"));
    }
    if image.major_index() != pi.major_index() {
        return Err(format!("image {image} has major index {}", image.major_index()));
    }
    if image.contains(sigma) {
        return Err(format!("image {image} contains {sigma}"));
    }
    Ok((image, case))
}

/// Applies `f` to every `π ∈ M_n^m(σ)` with `m <= max_maj` and checks that the
/// images are distinct `σ`-avoiders of length `n+1` with the same major index.
/// Column sizes are recomputed independently by exhaustive counting.
pub fn verify_monotonicity(
    sigma: &Permutation,
    n: usize,
    max_maj: usize,
    config: &SearchConfig,
) -> Result<MonotonicityReport> {
    reject_increasing(sigma)?;
    let patterns = PatternSet::new([sigma.clone()])?;
    let counts = maj_table::<u128>(n + 1, max_maj, &patterns, Algorithm::Brute, config)?;
    let mut report = MonotonicityReport {
        sigma: sigma.clone(),
        n,
        max_maj,
        verified: true,
        counterexample: None,
        tally: CaseTally::default(),
        columns: Vec::new(),
    };
    let mut images: HashMap<Permutation, Permutation> = HashMap::new();
    'columns: for m in 0..=max_maj {
        let domain: Vec<Permutation> = generate_avoiders(n, &patterns).with_major_index(m).collect();
        let mapped: Vec<_> = domain.par_iter().map(|pi| check_image(pi, sigma)).collect();
        for (pi, outcome) in domain.iter().zip(mapped) {
            let fail = |reason: String| Counterexample {
                pi: pi.clone(),
                m,
                reason,
            };
            match outcome {
                Err(reason) => {
                    report.counterexample = Some(fail(reason));
                    break 'columns;
                }
                Ok((image, case)) => {
                    if let Some(other) = images.insert(image.clone(), pi.clone()) {
                        report.counterexample = Some(fail(format!("{other} and {pi} both map to {image}")));
                        break 'columns;
                    }
                    report.tally.record(&case);
                }
            }
        }
        let count_n = if n == 0 { domain.len() as u128 } else { counts.get(n, m) };
        let count_next = counts.get(n + 1, m);
        if count_n != domain.len() as u128 {
            return Err(Error::Precondition(format!(
                "generator produced {} permutations for m = {m} but the table has {count_n}",
                domain.len()
            )));
        }
        report.columns.push(ColumnCheck { m, count_n, count_next });
        if count_n > count_next {
            report.counterexample = Some(Counterexample {
                pi: domain[0].clone(),
                m,
                reason: format!("M_{n}^{m} = {count_n} exceeds M_{}^{m} = {count_next}", n + 1),
            });
            break;
        }
    }
    report.verified = report.counterexample.is_none();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn the_three_cases() {
        // tail(4213567) = 3 <= slope(421356) = 4
        let (img, case) = monotone_injection(&p("421356"), &p("4213567")).unwrap();
        assert_eq!(img, p("5213467"));
        assert_eq!(case, InjectionCase::ExpandAtTail { position: 4, value: 3 });

        // tail(2134567) = 5 > 4
        let (img, case) = monotone_injection(&p("421356"), &p("2134567")).unwrap();
        assert_eq!(img, p("5312467"));
        assert_eq!(case, InjectionCase::InsertMinIntoSlope { position: 3 });

        let (img, case) = monotone_injection(&p("21"), &p("231")).unwrap();
        assert_eq!(img, p("213"));
        assert_eq!(case, InjectionCase::AppendMax);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            monotone_injection(&p("21"), &p("123")),
            Err(Error::UnsupportedPattern { .. })
        ));
        assert!(matches!(
            monotone_injection(&p("321"), &p("21")),
            Err(Error::Precondition(_))
        ));
        let err = verify_monotonicity(&p("123"), 4, 3, &SearchConfig::default()).unwrap_err();
        assert!(err.to_string().contains("eventually zero"));
    }

    #[test]
    fn verified_ranges() {
        let cfg = SearchConfig::default();
        let r = verify_monotonicity(&p("1324"), 6, 12, &cfg).unwrap();
        assert!(r.verified, "{:?}", r.counterexample);
        assert_eq!(r.columns[5].count_n, 45);
        assert_eq!(r.columns[5].count_next, 76);
        assert_eq!(r.tally.total(), r.columns.iter().map(|c| c.count_n as u64).sum::<u64>());

        let r = verify_monotonicity(&p("231"), 5, 10, &cfg).unwrap();
        assert!(r.verified);
        assert_eq!(r.tally.total(), 42);
        assert_eq!(r.tally.total(), r.tally.append_max);
    }

    #[test]
    fn report_json() {
        let r = verify_monotonicity(&p("21"), 3, 3, &SearchConfig::default()).unwrap();
        let v = r.to_json_value();
        assert_eq!(v["verified"], true);
        assert_eq!(v["cases"]["expand_at_tail"].as_u64(), Some(0));
        assert_eq!(v["columns"][0]["count_next"], "1");
    }
}
