use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::FieldMatrix;

/// Largest column count the certificate search accepts.
pub const SEARCH_LIMIT: usize = 14;

/// An ordering of the columns and block breakpoints witnessing the column
/// conditions. Column indices are zero-based; `breakpoints` are cumulative
/// block ends, the last one equal to the column count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadoCertificate {
    pub ordering: Vec<usize>,
    pub breakpoints: Vec<usize>,
}

impl RadoCertificate {
    /// Checks the certificate against `a` by direct arithmetic.
    pub fn validate(&self, a: &FieldMatrix) -> bool {
        let m = a.cols();
        let mut sorted = self.ordering.clone();
        sorted.sort_unstable();
        if sorted != (0..m).collect::<Vec<_>>() {
            return false;
        }
        if self.breakpoints.last() != Some(&m) || self.breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return false;
        }
        if self.breakpoints.first().is_none_or(|&k| k == 0) {
            return false;
        }
        let cols: Vec<Vec<u8>> = (0..m).map(|c| a.column(c)).collect();
        let mut start = 0;
        for (b, &end) in self.breakpoints.iter().enumerate() {
            let block = &self.ordering[start..end];
            let sum = column_sum(a, &cols, block);
            let ok = if b == 0 {
                sum.iter().all(|&v| v == 0)
            } else {
                in_span(a, &cols, &self.ordering[..start], &sum)
            };
            if !ok {
                return false;
            }
            start = end;
        }
        true
    }
}

fn column_sum(a: &FieldMatrix, cols: &[Vec<u8>], idx: &[usize]) -> Vec<u8> {
    let f = a.field();
    let mut s = vec![0u8; a.rows()];
    for &i in idx {
        for (acc, &v) in s.iter_mut().zip(&cols[i]) {
            *acc = f.add(*acc, v);
        }
    }
    s
}

fn in_span(a: &FieldMatrix, cols: &[Vec<u8>], idx: &[usize], v: &[u8]) -> bool {
    if v.iter().all(|&x| x == 0) {
        return true;
    }
    if idx.is_empty() {
        return false;
    }
    // columns of `span` are the chosen columns of `a`
    let rows: Vec<Vec<i64>> = (0..a.rows())
        .map(|r| idx.iter().map(|&i| i64::from(cols[i][r])).collect())
        .collect();
    let span = FieldMatrix::from_rows_with_cols(a.field(), idx.len(), &rows).expect("uniform rows");
    span.solve(v).is_some()
}

/// Non-empty subsets of `items` in lexicographic order of their (sorted)
/// index sequences, a prefix sorting first.
fn lex_subsets(items: &[usize], mut visit: impl FnMut(&[usize]) -> bool) {
    fn rec(items: &[usize], from: usize, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        for i in from..items.len() {
            cur.push(items[i]);
            if !visit(cur) || !rec(items, i + 1, cur, visit) {
                cur.pop();
                return false;
            }
            cur.pop();
        }
        true
    }
    rec(items, 0, &mut Vec::new(), &mut visit);
}

/// Searches for the lexicographically least certificate: zero-sum first
/// blocks are tried in lexicographic order, each followed by greedy
/// extension with the least admissible block.
pub fn check_column_conditions(a: &FieldMatrix) -> Result<Option<RadoCertificate>> {
    let m = a.cols();
    if m > SEARCH_LIMIT {
        return Err(Error::SearchTooLarge {
            columns: m,
            limit: SEARCH_LIMIT,
        });
    }
    if m == 0 {
        return Ok(None);
    }
    let cols: Vec<Vec<u8>> = (0..m).map(|c| a.column(c)).collect();
    let all: Vec<usize> = (0..m).collect();
    let mut found = None;
    lex_subsets(&all, |first| {
        if column_sum(a, &cols, first).iter().any(|&v| v != 0) {
            return true;
        }
        if let Some(cert) = extend(a, &cols, first) {
            found = Some(cert);
            return false;
        }
        true
    });
    Ok(found)
}

fn extend(a: &FieldMatrix, cols: &[Vec<u8>], first: &[usize]) -> Option<RadoCertificate> {
    let m = cols.len();
    let mut ordering = first.to_vec();
    let mut breakpoints = vec![first.len()];
    while ordering.len() < m {
        let rest: Vec<usize> = (0..m).filter(|c| !ordering.contains(c)).collect();
        let mut block = None;
        lex_subsets(&rest, |t| {
            if in_span(a, cols, &ordering, &column_sum(a, cols, t)) {
                block = Some(t.to_vec());
                return false;
            }
            true
        });
        ordering.extend(block?);
        breakpoints.push(ordering.len());
    }
    Some(RadoCertificate { ordering, breakpoints })
}
