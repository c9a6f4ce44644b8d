//! Bottom-up dynamic programs for the first-letter and first/second-letter
//! recurrences, each checkable against the brute-force census in
//! [`crate::perm`].

mod gtree;
mod joint;

pub use gtree::{gtree_table, gtree_tables, gtree_vpoly, gtree_vpolys, GTable, VPoly};
pub use joint::{
    joint_recurrence_pairs, table_1243_1324, table_1243_1324_with, table_1243_1342, table_1243_1342_with,
    table_1243_1423, tables_1243_1324, tables_1243_1342, tables_1243_1423, tables_for_pair, JointPair, Variant1324,
    Variant1342,
};

use crate::error::{Error, Result};
use crate::perm::{pair, PatternPair};

/// Pairs whose first-letter rows obey `a_{n,i} = 2 a_{n-1,i} + sum_{l<i} a_{n-1,l}`.
pub fn th1_pairs() -> [PatternPair; 3] {
    [pair("1234,1243"), pair("1324,1342"), pair("1423,1432")]
}

/// Rows `0..=n_max` of the first-letter recurrence; row 0 is empty.
pub fn th1_rows(n_max: usize) -> Vec<Vec<u64>> {
    let mut rows: Vec<Vec<u64>> = vec![Vec::new()];
    for n in 1..=n_max {
        let row = if n == 1 {
            vec![1]
        } else {
            let prev = &rows[n - 1];
            let total: u64 = prev.iter().sum();
            let mut row = Vec::with_capacity(n);
            let mut prefix = 0u64;
            for i in 1..=n - 2 {
                row.push(2 * prev[i - 1] + prefix);
                prefix += prev[i - 1];
            }
            row.push(total);
            row.push(total);
            row
        };
        rows.push(row);
    }
    rows
}

/// `(a_{n,1}, ..., a_{n,n})` for one of [`th1_pairs`]; the three pairs share
/// the recurrence, so the answer does not depend on which one is given.
pub fn th1_first_letter(n: usize, p: &PatternPair) -> Result<Vec<u64>> {
    if !th1_pairs().iter().any(|q| q.same_set(p)) {
        return Err(Error::UnsupportedPair { pair: p.to_string(), operation: "th1_first_letter" });
    }
    Ok(th1_rows(n).pop().unwrap())
}

/// Binomial coefficients up to a fixed top row; out-of-range arguments give 0.
pub(crate) struct Pascal {
    rows: Vec<Vec<u64>>,
}

impl Pascal {
    pub(crate) fn new(m_max: usize) -> Self {
        let mut rows: Vec<Vec<u64>> = Vec::with_capacity(m_max + 1);
        for m in 0..=m_max {
            let mut row = vec![1u64; m + 1];
            for c in 1..m {
                row[c] = rows[m - 1][c - 1] + rows[m - 1][c];
            }
            rows.push(row);
        }
        Pascal { rows }
    }

    pub(crate) fn get(&self, m: i64, c: i64) -> u64 {
        if m < 0 || c < 0 || c > m {
            0
        } else {
            self.rows[m as usize][c as usize]
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::first_letter_distribution;
    use crate::schroeder::triangle;

    #[test]
    fn first_letter_rows_match_triangle() {
        let t = triangle(12);
        let rows = th1_rows(12);
        for n in 1..=12 {
            assert_eq!(rows[n], t.row_u64(n), "row {n}");
        }
        let p = pair("1234,1243");
        assert_eq!(th1_first_letter(2, &p).unwrap(), vec![1, 1]);
        assert_eq!(th1_first_letter(8, &p).unwrap(), vec![64, 224, 512, 928, 1412, 1806, 1806, 1806]);
        assert!(th1_first_letter(0, &p).unwrap().is_empty());
        assert!(matches!(th1_first_letter(5, &pair("2431,3421")), Err(Error::UnsupportedPair { .. })));
    }

    #[test]
    fn first_letter_rows_match_brute_force() {
        for p in th1_pairs() {
            for n in 1..=8 {
                assert_eq!(th1_first_letter(n, &p).unwrap(), first_letter_distribution(n, &p).unwrap(), "{p} n={n}");
            }
        }
    }

    #[test]
    fn pascal() {
        let b = Pascal::new(10);
        assert_eq!(b.get(0, 0), 1);
        assert_eq!(b.get(5, 2), 10);
        assert_eq!(b.get(10, 5), 252);
        assert_eq!(b.get(4, 5), 0);
        assert_eq!(b.get(4, -1), 0);
        assert_eq!(b.get(-1, 0), 0);
    }
}
