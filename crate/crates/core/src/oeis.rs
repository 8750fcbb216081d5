//! Local OEIS reference files and comparison against computed tables.
//!
//! Two layouts are read: b-files (`index value` per line, consecutive
//! indices) and bare files (one value per line). Lines that are blank or
//! start with `#` are skipped. Triangles are read row by row.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::scalar::Count;
use crate::table::MajTable;

/// One term of a reference sequence and the line it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub line: usize,
    pub value: BigInt,
}

pub fn parse_reference(text: &str) -> Result<Vec<Term>> {
    let mut terms = Vec::new();
    let mut indexed: Option<bool> = None;
    let mut next_index: Option<BigInt> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        let this_indexed = match fields.len() {
            1 => false,
            2 => true,
            _ => {
                return Err(Error::Parse {
                    line,
                    message: format!("expected `value` or `index value`, found {trimmed:?}"),
                })
            }
        };
        if *indexed.get_or_insert(this_indexed) != this_indexed {
            return Err(Error::Parse {
                line,
                message: "mixes indexed and bare lines".into(),
            });
        }
        let number = |s: &str| {
            s.parse::<BigInt>().map_err(|_| Error::Parse {
                line,
                message: format!("{s:?} is not an integer"),
            })
        };
        if this_indexed {
            let index = number(fields[0])?;
            if let Some(expected) = &next_index {
                if &index != expected {
                    return Err(Error::Parse {
                        line,
                        message: format!("index {index} should be {expected}"),
                    });
                }
            }
            next_index = Some(index + 1);
        }
        terms.push(Term {
            line,
            value: number(fields[fields.len() - 1])?,
        });
    }
    Ok(terms)
}

/// First disagreement between a triangle file and a table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub n: usize,
    pub m: usize,
    /// `None` when the file ended before this cell.
    pub expected: Option<Term>,
    pub actual: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub compared: usize,
    pub mismatch: Option<Mismatch>,
}

/// Compares full rows `n = 1..=table.max_n()` of the table against a
/// triangle whose row `n` has `n(n−1)/2 + 1` entries.
pub fn compare_triangle<C: Count>(terms: &[Term], table: &MajTable<C>) -> Result<Comparison> {
    let mut it = terms.iter();
    let mut compared = 0;
    for n in 1..=table.max_n() {
        let full = n * (n - 1) / 2;
        if table.max_maj() < full {
            return Err(Error::invalid(format!(
                "row {n} of the table is truncated at m = {}; need m up to {full}",
                table.max_maj()
            )));
        }
        for m in 0..=full {
            let actual: BigInt = table.get(n, m).into();
            match it.next() {
                Some(term) if term.value == actual => compared += 1,
                other => {
                    return Ok(Comparison {
                        compared,
                        mismatch: Some(Mismatch {
                            n,
                            m,
                            expected: other.cloned(),
                            actual,
                        }),
                    })
                }
            }
        }
    }
    Ok(Comparison {
        compared,
        mismatch: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::{maj_table, Algorithm, PatternSet, SearchConfig};

    const VENDORED: &str = include_str!("../data/a008302.txt");

    #[test]
    fn formats() {
        let b = parse_reference("# c\n1 5\n2 7\n\n3 11\n").unwrap();
        assert_eq!(b.iter().map(|t| t.value.clone()).collect::<Vec<_>>(), [5, 7, 11].map(BigInt::from));
        assert_eq!(b[2].line, 5);
        let bare = parse_reference("5\n7\n").unwrap();
        assert_eq!(bare.len(), 2);
    }

    #[test]
    fn errors_name_the_line() {
        let err = parse_reference("1 1\n2 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_reference("1 1\n3 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_reference("# x\n1\n1 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = parse_reference("1 2 3\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn mahonian_rows_match() {
        let terms = parse_reference(VENDORED).unwrap();
        let table = maj_table::<u64>(6, 15, &PatternSet::empty(), Algorithm::Brute, &SearchConfig::default()).unwrap();
        let cmp = compare_triangle(&terms, &table).unwrap();
        assert_eq!(cmp.mismatch, None);
        assert_eq!(cmp.compared, 1 + 2 + 4 + 7 + 11 + 16);

        let mut bad = terms.clone();
        bad[5].value = BigInt::from(9);
        let cmp = compare_triangle(&bad, &table).unwrap();
        let mm = cmp.mismatch.unwrap();
        assert_eq!((mm.n, mm.m), (3, 2));

        let cmp = compare_triangle(&terms[..10], &table).unwrap();
        assert_eq!(cmp.mismatch.unwrap().expected, None);
    }
}
