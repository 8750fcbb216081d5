//! Degrees of the eventual polynomials `M_n^m(Π) = P(n)`: closed-form
//! predictions, the cores that realise them, and detection from data.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Roots;
use serde_json::{json, Value};

use crate::decomposition::{co_layered, decompose};
use crate::enumeration::{column_by_cores, eventual_polynomial, maj_table, Algorithm, PatternSet, SearchConfig};
use crate::error::{Error, Result};
use crate::perm::{DescentSet, Magnitude, Permutation};
use crate::poly::Polynomial;
use crate::scalar::Scalar;
use crate::Rational;

/// `s_k(m)` together with the block count `d` of its extremal construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LayeredDegree {
    pub d: u64,
    pub value: u64,
}

/// `s_k(m) = ⌊(d−1)(k−1)/2 + m/d⌋` where `d` is the least integer with
/// `d(d+1)(k−1)/2 >= m`. For `m = 0` both are 0.
pub fn s_k(m: u64, k: u64) -> LayeredDegree {
    assert!(k >= 2, "s_k needs k >= 2");
    if m == 0 {
        return LayeredDegree { d: 0, value: 0 };
    }
    let (m, k1) = (m as u128, (k - 1) as u128);
    let reaches = |d: u128| d * (d + 1) * k1 >= 2 * m;
    let mut d = (2 * m / k1).sqrt().max(1);
    while !reaches(d) {
        d += 1;
    }
    while d > 1 && reaches(d - 1) {
        d -= 1;
    }
    let value = ((d - 1) * k1 * d + 2 * m) / (2 * d);
    LayeredDegree {
        d: d as u64,
        value: value as u64,
    }
}

/// `⌊(−1 + √(1 + 8m)) / 2⌋`, the largest `l` with `l(l+1)/2 <= m`.
pub fn tri_floor(m: u64) -> u64 {
    let root = (1 + 8 * m as u128).sqrt();
    ((root - 1) / 2) as u64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Prediction {
    Exact(u64),
    UpperBound(u64),
    /// The column is eventually zero.
    ZeroSequence,
}

impl Prediction {
    pub fn kind(&self) -> &'static str {
        match self {
            Prediction::Exact(_) => "exact",
            Prediction::UpperBound(_) => "upper_bound",
            Prediction::ZeroSequence => "zero_sequence",
        }
    }

    pub fn value(&self) -> Option<u64> {
        match *self {
            Prediction::Exact(d) | Prediction::UpperBound(d) => Some(d),
            Prediction::ZeroSequence => None,
        }
    }
}

impl fmt::Display for Prediction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Prediction::Exact(d) => write!(f, "exact {d}"),
            Prediction::UpperBound(d) => write!(f, "at most {d}"),
            Prediction::ZeroSequence => f.write_str("eventually zero"),
        }
    }
}

/// Which result a prediction rests on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    /// Some pattern is increasing.
    IncreasingPattern,
    MagnitudeOne,
    ZeroMajor,
    InfiniteMagnitude,
    /// All magnitudes finite, minimum `k >= 3`.
    Layered { k: u64 },
    /// All magnitudes finite and 2, every magnitude-2 profile nonzero at `i`.
    MagnitudeTwo { i: usize },
    /// Magnitude 2 without a common nonzero profile coordinate.
    MagnitudeTwoOpen,
    /// Finite and infinite magnitudes mixed; only a bound is known.
    MixedMagnitudes { k: u64 },
}

impl Rule {
    pub fn name(&self) -> &'static str {
        match self {
            Rule::IncreasingPattern => "increasing_pattern",
            Rule::MagnitudeOne => "magnitude_one",
            Rule::ZeroMajor => "zero_major_index",
            Rule::InfiniteMagnitude => "infinite_magnitude",
            Rule::Layered { .. } => "layered",
            Rule::MagnitudeTwo { .. } => "magnitude_two",
            Rule::MagnitudeTwoOpen => "magnitude_two_open",
            Rule::MixedMagnitudes { .. } => "mixed_magnitudes",
        }
    }
}

/// A coordinate `i ∈ {1,2,3}` at which every magnitude-2 pattern of `Π` has a
/// nonzero padding profile, if one exists.
pub fn magnitude_two_coordinate(patterns: &PatternSet) -> Option<usize> {
    let mut common = [true; 3];
    for sigma in patterns.patterns() {
        if sigma.magnitude() == Magnitude::Finite(2) {
            let d = decompose(sigma);
            for (flag, &a) in common.iter_mut().zip(d.profile.coords()) {
                *flag &= a != 0;
            }
        }
    }
    common.iter().position(|&f| f).map(|i| i + 1)
}

pub fn prediction_rule(m: u64, patterns: &PatternSet) -> Rule {
    let mg = patterns.magnitude();
    let all_finite = patterns.patterns().iter().all(|p| !p.magnitude().is_infinite());
    match mg {
        Magnitude::Finite(0) => Rule::IncreasingPattern,
        Magnitude::Finite(1) => Rule::MagnitudeOne,
        _ if m == 0 => Rule::ZeroMajor,
        Magnitude::Infinite => Rule::InfiniteMagnitude,
        Magnitude::Finite(k) if !all_finite => Rule::MixedMagnitudes { k: k as u64 },
        Magnitude::Finite(2) => match magnitude_two_coordinate(patterns) {
            Some(i) => Rule::MagnitudeTwo { i },
            None => Rule::MagnitudeTwoOpen,
        },
        Magnitude::Finite(k) => Rule::Layered { k: k as u64 },
    }
}

/// `deg(m, Π)`, exactly where it is known and as an upper bound otherwise.
pub fn predicted_degree(m: u64, patterns: &PatternSet) -> Prediction {
    let clamp = |d: u64| match bounded_degree_criterion(patterns) {
        Some(b) => d.min(b),
        None => d,
    };
    match prediction_rule(m, patterns) {
        Rule::IncreasingPattern => Prediction::ZeroSequence,
        Rule::MagnitudeOne | Rule::ZeroMajor => Prediction::Exact(0),
        Rule::InfiniteMagnitude => Prediction::Exact(m),
        Rule::Layered { k } => Prediction::Exact(s_k(m, k).value),
        Rule::MagnitudeTwo { .. } => Prediction::Exact(tri_floor(m)),
        Rule::MagnitudeTwoOpen => Prediction::UpperBound(clamp(s_k(m, 2).value)),
        Rule::MixedMagnitudes { k } => Prediction::UpperBound(clamp(s_k(m, k).value)),
    }
}

/// `(k−1)(l−1)` minimised over a pattern with core `12…k` and a pattern with
/// core `l…1`, when `Π` has both kinds.
pub fn bounded_degree_criterion(patterns: &PatternSet) -> Option<u64> {
    let cores: Vec<Permutation> = patterns.patterns().iter().map(|p| decompose(p).core).collect();
    let increasing = cores.iter().filter(|c| c.is_identity()).map(Permutation::len).min()?;
    let decreasing = cores.iter().filter(|c| c.is_decreasing()).map(Permutation::len).min()?;
    Some((increasing.saturating_sub(1) * decreasing.saturating_sub(1)) as u64)
}

/// The longest `12…k`-avoiding core with `maj⁺ = m`: the co-layered
/// permutation with descents `d_1 < … < d_{d−1}` and length `d_d`.
pub fn witness_core_theorem(m: u64, k: u64) -> Result<Permutation> {
    if k < 3 || m == 0 {
        return Err(Error::invalid(format!("layered witness needs k >= 3 and m >= 1, got k = {k}, m = {m}")));
    }
    let LayeredDegree { d, value } = s_k(m, k);
    let top = d * (d + 1) / 2 * (k - 1);
    let s = (top - m) / d;
    let p = top - d * s - m;
    let block = |i: u64| {
        let base = i * (k - 1) - s;
        if i > d - p {
            base - 1
        } else {
            base
        }
    };
    let descents = DescentSet::new((1..d).map(|i| block(i) as usize).collect())?;
    let length = block(d) as usize;
    let pi = co_layered(&descents, length)?;
    if pi.maj_plus() as u64 != m {
        return Err(Error::Witness(format!("{pi} has maj⁺ {} instead of {m}", pi.maj_plus())));
    }
    if pi.len() as u64 != value {
        return Err(Error::Witness(format!("{pi} has length {} instead of {value}", pi.len())));
    }
    if pi.contains(&Permutation::identity(k as usize)) {
        return Err(Error::Witness(format!("{pi} contains the increasing pattern of length {k}")));
    }
    Ok(pi)
}

/// A core with `maj⁺ = m` of length `⌊(−1+√(1+8m))/2⌋ + [m not triangular]`
/// built from the decreasing permutation by one insertion chosen by `i`.
pub fn witness_core_mg2(m: u64, i: usize) -> Result<Permutation> {
    if m == 0 || !(1..=3).contains(&i) {
        return Err(Error::invalid(format!("magnitude-2 witness needs m >= 1 and i in 1..=3, got m = {m}, i = {i}")));
    }
    let l = tri_floor(m) as usize;
    let eps = Permutation::decreasing(l);
    let d = (m - (l * (l + 1) / 2) as u64) as usize;
    let gamma = match (d, i) {
        (0, _) => eps,
        (_, 1) => eps.insert(l + 1 - d, 1)?,
        (_, 2) => eps.insert(l + 1 - d, d)?,
        _ => eps.insert(l + 2 - d, l + 1)?,
    };
    if gamma.maj_plus() as u64 != m {
        return Err(Error::Witness(format!("{gamma} has maj⁺ {} instead of {m}", gamma.maj_plus())));
    }
    Ok(gamma)
}

/// Limit of `M_n^m(Π) / M_n^m(∅)` as `n → ∞`: 1 when `m < mg(Π)`, else 0.
pub fn limit_probability(m: usize, patterns: &PatternSet) -> u8 {
    u8::from(patterns.magnitude().exceeds(m))
}

/// Outcome of finite-difference degree detection.
#[derive(Clone, Debug, PartialEq)]
pub enum Detection<T> {
    Conclusive {
        /// Agrees with the series from `onset` on; the zero polynomial for an
        /// eventually zero series.
        polynomial: Polynomial<T>,
        /// First `n` from which every later value matches.
        onset: usize,
    },
    Inconclusive,
}

impl<T: Scalar> Detection<T> {
    /// The degree, counting the zero polynomial as degree 0.
    pub fn degree(&self) -> Option<usize> {
        match self {
            Detection::Conclusive { polynomial, .. } => Some(polynomial.degree().unwrap_or(0)),
            Detection::Inconclusive => None,
        }
    }

    pub fn is_conclusive(&self) -> bool {
        matches!(self, Detection::Conclusive { .. })
    }
}

pub const DEFAULT_WINDOW: usize = 3;

/// Finds the least `j` whose `j`-th differences are constant over the last
/// `window + 1` entries and rebuilds the polynomial from that stable tail.
/// `series[i]` is the value at `n = first_n + i`.
pub fn detect_degree<T: Scalar>(first_n: usize, series: &[T], window: usize) -> Result<Detection<T>> {
    if series.len() < window + 2 {
        return Err(Error::invalid(format!(
            "series of length {} is too short for window {window}",
            series.len()
        )));
    }
    let len = series.len();
    let mut levels: Vec<Vec<T>> = vec![series.to_vec()];
    for j in 0.. {
        let level = &levels[j];
        if level.len() < window + 1 {
            return Ok(Detection::Inconclusive);
        }
        let tail = &level[level.len() - window - 1..];
        if tail.iter().all(|v| *v == tail[0]) {
            let base = len - j - window - 1;
            let diffs: Vec<T> = levels.iter().map(|l| l[base].clone()).collect();
            let polynomial = Polynomial::newton_forward((first_n + base) as i64, &diffs);
            let mut start = len;
            while start > 0 && polynomial.eval_int((first_n + start - 1) as i64) == series[start - 1] {
                start -= 1;
            }
            return Ok(Detection::Conclusive {
                polynomial,
                onset: first_n + start,
            });
        }
        let next: Vec<T> = level.windows(2).map(|w| w[1].clone() - w[0].clone()).collect();
        levels.push(next);
    }
    unreachable!()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Match,
    Mismatch,
    Inconclusive,
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Match => "match",
            Verdict::Mismatch => "mismatch",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

/// Prediction, detection and witness for one `(m, Π)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DegreeReport {
    pub m: u64,
    pub patterns: PatternSet,
    pub rule: Rule,
    pub prediction: Prediction,
    pub detected: Detection<Rational>,
    /// Values `M_n^m(Π)` for `n = 1..=series.len()`.
    pub series: Vec<BigUint>,
    pub witness: Option<Permutation>,
    pub verdict: Verdict,
}

/// Where the series for detection comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesSource {
    /// Core counting up to this length.
    Cores(usize),
    /// Exhaustive generation up to this length.
    Brute(usize),
    /// Core counting, long enough to pass the a priori onset bound.
    Automatic,
}

pub fn verdict(prediction: Prediction, detected: &Detection<Rational>) -> Verdict {
    let Detection::Conclusive { polynomial, .. } = detected else {
        return Verdict::Inconclusive;
    };
    let degree = polynomial.degree().unwrap_or(0) as u64;
    let ok = match prediction {
        Prediction::Exact(d) => degree == d,
        Prediction::UpperBound(d) => degree <= d,
        Prediction::ZeroSequence => polynomial.is_zero(),
    };
    if ok {
        Verdict::Match
    } else {
        Verdict::Mismatch
    }
}

fn witness(m: u64, rule: Rule) -> Result<Option<Permutation>> {
    Ok(match rule {
        Rule::InfiniteMagnitude => Some(Permutation::identity(m as usize)),
        Rule::Layered { k } => Some(witness_core_theorem(m, k)?),
        Rule::MagnitudeTwo { i } => Some(witness_core_mg2(m, i)?),
        _ => None,
    })
}

pub fn degree_report(
    m: u64,
    patterns: &PatternSet,
    source: SeriesSource,
    window: usize,
    config: &SearchConfig,
) -> Result<DegreeReport> {
    let series: Vec<BigUint> = match source {
        SeriesSource::Cores(max_n) => column_by_cores(m as usize, max_n, patterns, config)?.split_off(1),
        SeriesSource::Automatic => {
            let bound = eventual_polynomial(m as usize, patterns, config)?.onset_bound;
            let max_n = bound.max(1) + window + 2;
            column_by_cores(m as usize, max_n, patterns, config)?.split_off(1)
        }
        SeriesSource::Brute(max_n) => {
            maj_table::<BigUint>(max_n, m as usize, patterns, Algorithm::Brute, config)?.column(m as usize)
        }
    };
    let values: Vec<Rational> = series
        .iter()
        .map(|c| Rational::from_integer(BigInt::from(c.clone())))
        .collect();
    let detected = detect_degree(1, &values, window)?;
    let rule = prediction_rule(m, patterns);
    let prediction = predicted_degree(m, patterns);
    Ok(DegreeReport {
        m,
        patterns: patterns.clone(),
        rule,
        verdict: verdict(prediction, &detected),
        witness: witness(m, rule)?,
        prediction,
        detected,
        series,
    })
}

fn rational_pair(q: &Rational) -> Value {
    let num = |x: &BigInt| Value::Number(x.to_string().parse().expect("integers are JSON numbers"));
    json!([num(q.numer()), num(q.denom())])
}

impl DegreeReport {
    pub fn to_json_value(&self) -> Value {
        let detected = match &self.detected {
            Detection::Conclusive { polynomial, onset } => json!({
                "inconclusive": false,
                "degree": self.detected.degree(),
                "polynomial": polynomial.coeffs().iter().map(rational_pair).collect::<Vec<_>>(),
                "polynomial_text": polynomial.to_string(),
                "leading_coefficient": rational_pair(&polynomial.leading_coefficient()),
                "onset": onset,
            }),
            Detection::Inconclusive => json!({ "inconclusive": true }),
        };
        json!({
            "schema": 1,
            "m": self.m,
            "patterns": self.patterns.patterns().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "rule": self.rule.name(),
            "prediction": { "kind": self.prediction.kind(), "value": self.prediction.value() },
            "detected": detected,
            "series": self.series.iter().map(|c| Value::Number(c.to_string().parse().expect("integer"))).collect::<Vec<_>>(),
            "witness": self.witness.as_ref().map(|w| w.to_string()),
            "verdict": self.verdict.name(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn set(s: &str) -> PatternSet {
        s.parse().unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| q(x, 1)).collect()
    }

    #[test]
    fn layered_formula() {
        assert_eq!(s_k(15, 3), LayeredDegree { d: 4, value: 6 });
        assert_eq!(s_k(5, 2).value, 2);
        for k in 2..7 {
            for m in 1..k {
                assert_eq!(s_k(m, k).value, m);
            }
        }
        assert_eq!(s_k(0, 3).value, 0);
    }

    #[test]
    fn triangular_floor() {
        assert_eq!(tri_floor(0), 0);
        assert_eq!(tri_floor(5), 2);
        assert_eq!(tri_floor(6), 3);
        assert_eq!(tri_floor(15), 5);
        for m in 1..=10_000 {
            assert_eq!(s_k(m, 2).value, tri_floor(m), "m = {m}");
        }
    }

    #[test]
    fn predictions() {
        assert_eq!(predicted_degree(3, &set("1324")), Prediction::Exact(2));
        assert_eq!(predicted_degree(7, &PatternSet::empty()), Prediction::Exact(7));
        assert_eq!(predicted_degree(4, &set("123")), Prediction::ZeroSequence);
        assert_eq!(predicted_degree(4, &set("4123")), Prediction::Exact(0));
        assert_eq!(predicted_degree(0, &set("1324")), Prediction::Exact(0));
        assert_eq!(predicted_degree(15, &set("1243")), Prediction::Exact(6));
        // 3412 has profile (2,0,0) and 1324 has (0,1,1)
        assert_eq!(predicted_degree(5, &set("3412,1324")), Prediction::UpperBound(2));
        assert_eq!(prediction_rule(5, &set("3412,1324")), Rule::MagnitudeTwoOpen);
        assert_eq!(predicted_degree(8, &set("2314,321")), Prediction::UpperBound(1));
        assert_eq!(prediction_rule(8, &set("2314,321")), Rule::MixedMagnitudes { k: 2 });
    }

    #[test]
    fn bounded_degree() {
        assert_eq!(bounded_degree_criterion(&set("2314,321")), Some(1));
        assert_eq!(bounded_degree_criterion(&set("1324")), None);
        assert_eq!(bounded_degree_criterion(&set("21")), Some(0));
        assert_eq!(bounded_degree_criterion(&set("123,4321")), Some(0));
    }

    #[test]
    fn witnesses() {
        assert_eq!(witness_core_theorem(15, 3).unwrap(), p("645231"));
        assert_eq!(witness_core_theorem(2, 3).unwrap(), p("12"));
        assert_eq!(witness_core_mg2(13, 1).unwrap(), p("51432"));
        for i in 1..=3 {
            assert_eq!(witness_core_mg2(15, i).unwrap(), p("54321"));
        }
        assert!(witness_core_theorem(3, 2).is_err());
        assert!(witness_core_mg2(3, 4).is_err());
    }

    #[test]
    fn witness_sweeps() {
        for k in 3..=5u64 {
            for m in 1..=30u64 {
                let w = witness_core_theorem(m, k).unwrap();
                assert_eq!(w.maj_plus() as u64, m);
                assert_eq!(w.len() as u64, s_k(m, k).value);
                assert!(w.avoids(&Permutation::identity(k as usize)));
            }
        }
        for m in 1..=30u64 {
            for i in 1..=3 {
                assert_eq!(witness_core_mg2(m, i).unwrap().maj_plus() as u64, m);
            }
        }
    }

    #[test]
    fn detection_examples() {
        let d = detect_degree(2, &ints(&[1, 2, 3, 4, 5, 6]), 3).unwrap();
        assert_eq!(d.degree(), Some(1));
        let Detection::Conclusive { polynomial, onset } = d else { panic!() };
        assert_eq!(polynomial.coeffs(), &[q(-1, 1), q(1, 1)]);
        assert_eq!(onset, 2);

        let d = detect_degree(3, &ints(&[2, 4, 6, 8, 10]), 3).unwrap();
        let Detection::Conclusive { polynomial, onset } = d else { panic!() };
        assert_eq!(polynomial.coeffs(), &[q(-4, 1), q(2, 1)]);
        assert_eq!(onset, 3);

        let d = detect_degree(1, &ints(&[1, 1, 1, 1, 1]), 3).unwrap();
        assert_eq!(d.degree(), Some(0));

        let d = detect_degree(1, &ints(&[0, 0, 3, 7, 0, 0, 0, 0]), 3).unwrap();
        let Detection::Conclusive { polynomial, onset } = d else { panic!() };
        assert!(polynomial.is_zero());
        assert_eq!(onset, 5);

        assert_eq!(detect_degree(1, &ints(&[1, 2, 4, 8, 16, 32]), 3).unwrap(), Detection::Inconclusive);
        assert!(detect_degree(1, &ints(&[1, 2, 3, 4]), 3).is_err());

        let d = detect_degree(0, &[1.0, 4.0, 9.0, 16.0, 25.0, 36.0, 49.0], 3).unwrap();
        assert_eq!(d.degree(), Some(2));
    }

    #[test]
    fn limits() {
        assert_eq!(limit_probability(1, &set("1324")), 1);
        assert_eq!(limit_probability(2, &set("1324")), 0);
        assert_eq!(limit_probability(40, &PatternSet::empty()), 1);
    }

    #[test]
    fn reports() {
        let cfg = SearchConfig::default();
        let r = degree_report(3, &set("1324"), SeriesSource::Cores(13), 3, &cfg).unwrap();
        assert_eq!(r.prediction, Prediction::Exact(2));
        assert_eq!(r.detected.degree(), Some(2));
        assert_eq!(r.verdict, Verdict::Match);
        assert_eq!(r.series[3..7].iter().map(|c| c.to_string()).collect::<Vec<_>>(), ["6", "12", "19", "27"]);

        let r = degree_report(2, &PatternSet::empty(), SeriesSource::Brute(10), 3, &cfg).unwrap();
        let json = r.to_json_value();
        assert_eq!(json["detected"]["leading_coefficient"], json!([1, 2]));
        assert_eq!(json["verdict"], "match");
        assert_eq!(json["witness"], "12");

        let r = degree_report(4, &set("123"), SeriesSource::Automatic, 3, &cfg).unwrap();
        assert_eq!(r.prediction, Prediction::ZeroSequence);
        assert_eq!(r.verdict, Verdict::Match);
    }
}
