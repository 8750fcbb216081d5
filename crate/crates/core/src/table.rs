//! `MajTable`: exact counts `M_n^m(Π)` with CSV and JSON forms.
//!
//! CSV layout:
//!
//! ```text
//! # patterns: 1324
//! n,0,1,2,3
//! 1,1,,,
//! 2,1,1,,
//! 3,1,2,2,1
//! ```
//!
//! The first line lists the pattern set in the pattern-list grammar (empty
//! after the colon for no patterns). Cells with `m > n(n-1)/2` are blank.
//!
//! JSON layout:
//!
//! ```text
//! {"schema":1,"patterns":["1324"],"max_n":3,"max_maj":3,
//!  "rows":[{"n":1,"counts":[1]},{"n":2,"counts":[1,1]},{"n":3,"counts":[1,2,2,1]}]}
//! ```
//!
//! `counts` holds the nonblank cells of the row; counts are plain JSON
//! integers of any size.

use std::str::FromStr;

use serde_json::{json, Map, Number, Value};

use crate::enumeration::PatternSet;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::scalar::Count;

const PATTERNS_PREFIX: &str = "# patterns:";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MajTable<C> {
    patterns: PatternSet,
    max_n: usize,
    max_maj: usize,
    rows: Vec<Vec<C>>,
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_count<C: Count>(text: &str, line: usize) -> Result<C> {
    text.trim()
        .parse::<C>()
        .map_err(|_| parse_error(line, format!("{text:?} is not a count")))
}

impl<C: Count> MajTable<C> {
    pub(crate) fn zeros(patterns: PatternSet, max_n: usize, max_maj: usize) -> Self {
        let rows = (1..=max_n)
            .map(|n| vec![C::zero(); Self::width(n, max_maj)])
            .collect();
        MajTable {
            patterns,
            max_n,
            max_maj,
            rows,
        }
    }

    fn width(n: usize, max_maj: usize) -> usize {
        max_maj.min(n * n.saturating_sub(1) / 2) + 1
    }

    /// Number of stored cells in row `n`: `min(max_maj, n(n-1)/2) + 1`.
    pub fn row_width(&self, n: usize) -> usize {
        Self::width(n, self.max_maj)
    }

    pub fn patterns(&self) -> &PatternSet {
        &self.patterns
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    pub fn max_maj(&self) -> usize {
        self.max_maj
    }

    /// `M_n^m(Π)`; zero where `m` exceeds `n(n-1)/2`.
    ///
    /// # Panics
    /// If `n` is outside `1..=max_n` or `m > max_maj`.
    pub fn get(&self, n: usize, m: usize) -> C {
        assert!((1..=self.max_n).contains(&n), "row {n} outside 1..={}", self.max_n);
        assert!(m <= self.max_maj, "column {m} outside 0..={}", self.max_maj);
        self.rows[n - 1].get(m).cloned().unwrap_or_else(C::zero)
    }

    pub(crate) fn set(&mut self, n: usize, m: usize, value: C) {
        self.rows[n - 1][m] = value;
    }

    /// The stored cells of row `n`.
    pub fn row(&self, n: usize) -> &[C] {
        &self.rows[n - 1]
    }

    /// `M_n^m(Π)` for `n = 1..=max_n`.
    pub fn column(&self, m: usize) -> Vec<C> {
        (1..=self.max_n).map(|n| self.get(n, m)).collect()
    }

    /// Sum of row `n`; equals `S_n(Π)` when the row is complete.
    pub fn row_sum(&self, n: usize) -> Result<C> {
        self.row(n).iter().try_fold(C::zero(), |acc, c| {
            acc.checked_add(c).ok_or(Error::Overflow("row sum"))
        })
    }

    /// First cell, in column-major order, where the two tables differ.
    pub fn first_difference(&self, other: &MajTable<C>) -> Option<(usize, usize, C, C)> {
        let max_n = self.max_n.max(other.max_n);
        let max_maj = self.max_maj.max(other.max_maj);
        let cell = |t: &MajTable<C>, n: usize, m: usize| {
            if n <= t.max_n && m <= t.max_maj {
                Some(t.get(n, m))
            } else {
                None
            }
        };
        for m in 0..=max_maj {
            for n in 1..=max_n {
                let (a, b) = (cell(self, n, m), cell(other, n, m));
                if a != b {
                    let show = |x: Option<C>| x.unwrap_or_else(C::zero);
                    return Some((n, m, show(a), show(b)));
                }
            }
        }
        None
    }

    pub fn to_csv(&self) -> String {
        let mut out = format!("{PATTERNS_PREFIX} {}\n", self.patterns);
        let mut writer = csv::Writer::from_writer(Vec::new());
        let header = std::iter::once("n".to_string()).chain((0..=self.max_maj).map(|m| m.to_string()));
        writer.write_record(header).expect("writing to memory");
        for (i, row) in self.rows.iter().enumerate() {
            let cells = (0..=self.max_maj).map(|m| row.get(m).map(|c| c.to_string()).unwrap_or_default());
            let record = std::iter::once((i + 1).to_string()).chain(cells);
            writer.write_record(record).expect("writing to memory");
        }
        let body = writer.into_inner().expect("flushing to memory");
        out.push_str(std::str::from_utf8(&body).expect("csv output is utf-8"));
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.splitn(2, '\n');
        let first = lines.next().unwrap_or_default().trim_end_matches('\r');
        let patterns = first
            .strip_prefix(PATTERNS_PREFIX)
            .ok_or_else(|| parse_error(1, format!("expected a line starting with {PATTERNS_PREFIX:?}")))?
            .parse::<PatternSet>()
            .map_err(|e| parse_error(1, e.to_string()))?;
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .from_reader(lines.next().unwrap_or_default().as_bytes());
        let mut records = reader.records();
        let header = match records.next() {
            Some(r) => r.map_err(|e| parse_error(2, e.to_string()))?,
            None => return Err(parse_error(2, "missing header line")),
        };
        if header.get(0) != Some("n") || header.len() < 2 {
            return Err(parse_error(2, "header must be n,0,1,...,M"));
        }
        for (m, cell) in header.iter().skip(1).enumerate() {
            if cell.trim() != m.to_string() {
                return Err(parse_error(2, format!("header column {cell:?} should be {m}")));
            }
        }
        let max_maj = header.len() - 2;
        let mut rows = Vec::new();
        for (i, record) in records.enumerate() {
            let line = i + 3;
            let record = record.map_err(|e| parse_error(line, e.to_string()))?;
            let n = i + 1;
            if record.get(0).map(str::trim) != Some(n.to_string().as_str()) {
                return Err(parse_error(line, format!("expected row n = {n}")));
            }
            let width = Self::width(n, max_maj);
            let mut row = Vec::with_capacity(width);
            for (m, cell) in record.iter().skip(1).enumerate() {
                match (m < width, cell.trim().is_empty()) {
                    (true, false) => row.push(parse_count(cell, line)?),
                    (false, true) => {}
                    (true, true) => return Err(parse_error(line, format!("missing cell m = {m}"))),
                    (false, false) => return Err(parse_error(line, format!("cell m = {m} exceeds n(n-1)/2"))),
                }
            }
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(parse_error(3, "table has no rows"));
        }
        Ok(MajTable {
            patterns,
            max_n: rows.len(),
            max_maj,
            rows,
        })
    }

    pub fn to_json_value(&self) -> Value {
        let number = |c: &C| Value::Number(Number::from_str(&c.to_string()).expect("counts are integers"));
        let rows: Vec<Value> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, row)| json!({"n": i + 1, "counts": row.iter().map(number).collect::<Vec<_>>()}))
            .collect();
        json!({
            "schema": 1,
            "patterns": self.patterns.patterns().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "max_n": self.max_n,
            "max_maj": self.max_maj,
            "rows": rows,
        })
    }

    pub fn to_json(&self) -> String {
        self.to_json_value().to_string()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| parse_error(e.line(), e.to_string()))?;
        Self::from_json_value(&value)
    }

    pub fn from_json_value(value: &Value) -> Result<Self> {
        let bad = |msg: String| Error::invalid(format!("table JSON: {msg}"));
        let obj: &Map<String, Value> = value.as_object().ok_or_else(|| bad("expected an object".into()))?;
        match obj.get("schema").and_then(Value::as_u64) {
            Some(1) => {}
            other => return Err(bad(format!("unsupported schema {other:?}"))),
        }
        let uint = |key: &str| {
            obj.get(key)
                .and_then(Value::as_u64)
                .map(|v| v as usize)
                .ok_or_else(|| bad(format!("missing integer field {key:?}")))
        };
        let max_n = uint("max_n")?;
        let max_maj = uint("max_maj")?;
        let patterns = obj
            .get("patterns")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing patterns array".into()))?
            .iter()
            .map(|p| {
                p.as_str()
                    .ok_or_else(|| bad("patterns must be strings".into()))?
                    .parse::<Permutation>()
            })
            .collect::<Result<Vec<_>>>()?;
        let rows_json = obj
            .get("rows")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing rows array".into()))?;
        if rows_json.len() != max_n || max_n == 0 {
            return Err(bad(format!("expected {max_n} rows, found {}", rows_json.len())));
        }
        let mut rows = Vec::with_capacity(max_n);
        for (i, row) in rows_json.iter().enumerate() {
            let n = i + 1;
            if row.get("n").and_then(Value::as_u64) != Some(n as u64) {
                return Err(bad(format!("row {i} should have n = {n}")));
            }
            let counts = row
                .get("counts")
                .and_then(Value::as_array)
                .ok_or_else(|| bad(format!("row n = {n} has no counts")))?;
            if counts.len() != Self::width(n, max_maj) {
                return Err(bad(format!("row n = {n} should have {} counts", Self::width(n, max_maj))));
            }
            let parsed = counts
                .iter()
                .map(|c| match c {
                    Value::Number(num) => num
                        .to_string()
                        .parse::<C>()
                        .map_err(|_| bad(format!("row n = {n}: {num} is not a count"))),
                    other => Err(bad(format!("row n = {n}: {other} is not a number"))),
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(parsed);
        }
        Ok(MajTable {
            patterns: PatternSet::new(patterns)?,
            max_n,
            max_maj,
            rows,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn sample() -> MajTable<u64> {
        let mut t = MajTable::zeros("1324".parse().unwrap(), 3, 3);
        for (n, row) in [vec![1], vec![1, 1], vec![1, 2, 2, 1]].into_iter().enumerate() {
            for (m, v) in row.into_iter().enumerate() {
                t.set(n + 1, m, v);
            }
        }
        t
    }

    #[test]
    fn csv_layout() {
        let csv = sample().to_csv();
        assert_eq!(csv, "# patterns: 1324\nn,0,1,2,3\n1,1,,,\n2,1,1,,\n3,1,2,2,1\n");
        assert_eq!(MajTable::<u64>::from_csv(&csv).unwrap(), sample());
    }

    #[test]
    fn json_layout() {
        let json = sample().to_json();
        assert_eq!(
            json,
            r#"{"max_maj":3,"max_n":3,"patterns":["1324"],"rows":[{"counts":[1],"n":1},{"counts":[1,1],"n":2},{"counts":[1,2,2,1],"n":3}],"schema":1}"#
        );
        assert_eq!(MajTable::<u64>::from_json(&json).unwrap(), sample());
    }

    #[test]
    fn big_counts_round_trip() {
        let mut t = MajTable::<BigUint>::zeros(PatternSet::empty(), 2, 1);
        let huge: BigUint = "123456789012345678901234567890".parse().unwrap();
        t.set(2, 1, huge.clone());
        let back = MajTable::<BigUint>::from_json(&t.to_json()).unwrap();
        assert_eq!(back.get(2, 1), huge);
        let back = MajTable::<BigUint>::from_csv(&t.to_csv()).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn accessors() {
        let t = sample();
        assert_eq!(t.get(1, 3), 0);
        assert_eq!(t.column(1), vec![0, 1, 2]);
        assert_eq!(t.row_sum(3).unwrap(), 6);
        let mut u = sample();
        u.set(3, 2, 9);
        assert_eq!(t.first_difference(&u), Some((3, 2, 2, 9)));
        assert_eq!(t.first_difference(&t), None);
    }

    #[test]
    fn csv_errors_carry_line_numbers() {
        let err = MajTable::<u64>::from_csv("# patterns: 12\nn,0,1\n1,1,\n2,x,1\n").unwrap_err();
        assert_eq!(err, parse_error(4, "\"x\" is not a count"));
        let err = MajTable::<u64>::from_csv("n,0\n1,1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = MajTable::<u64>::from_csv("# patterns:\nn,0,1\n1,1,5\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = MajTable::<u64>::from_csv("# patterns:\nn,0,2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }
}
