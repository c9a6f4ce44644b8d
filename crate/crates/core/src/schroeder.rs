//! Large Schröder numbers, the Schröder triangle `S_{n,k}` and the
//! inversion-sequence statistic it refines.

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::perm::check_cap;

/// `S_n` from `n S_n = 3(2n-3) S_{n-1} - (n-3) S_{n-2}`, `S_1 = 1`, `S_2 = 2`.
///
/// # Panics
/// If `n == 0`, or if a division in the recurrence is not exact (a bug).
pub fn schroeder_number(n: usize) -> BigUint {
    assert!(n >= 1, "Schröder numbers are indexed from 1");
    schroeder_numbers(n).pop().unwrap()
}

/// `[S_1, ..., S_{n_max}]`.
pub fn schroeder_numbers(n_max: usize) -> Vec<BigUint> {
    let mut s: Vec<BigUint> = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let next = match n {
            1 => BigUint::one(),
            2 => BigUint::from(2u32),
            _ => {
                let a = BigUint::from(3 * (2 * n - 3)) * &s[n - 2];
                let b = BigUint::from(n - 3) * &s[n - 3];
                let (q, r) = (a - b).div_rem(&BigUint::from(n));
                assert!(r.is_zero(), "inexact division in the Schröder recurrence at n = {n}");
                q
            }
        };
        s.push(next);
    }
    s
}

/// Rows `1..=n_max` of the Schröder triangle, 1-based in both indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchroederTriangle {
    rows: Vec<Vec<BigUint>>,
}

impl SchroederTriangle {
    pub fn n_max(&self) -> usize {
        self.rows.len()
    }

    /// `S_{n,k}`; zero outside `1 <= k <= n <= n_max`.
    pub fn get(&self, n: usize, k: usize) -> BigUint {
        if n == 0 || k == 0 || n > self.n_max() || k > n {
            BigUint::zero()
        } else {
            self.rows[n - 1][k - 1].clone()
        }
    }

    pub fn row(&self, n: usize) -> &[BigUint] {
        &self.rows[n - 1]
    }

    pub fn rows(&self) -> &[Vec<BigUint>] {
        &self.rows
    }

    pub fn row_sum(&self, n: usize) -> BigUint {
        self.row(n).iter().sum()
    }

    /// Row `n` as machine integers, for comparison with brute-force counts.
    pub fn row_u64(&self, n: usize) -> Vec<u64> {
        self.row(n).iter().map(|v| u64::try_from(v).expect("triangle entry exceeds u64")).collect()
    }

    /// One row per line, entries separated by tabs.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(out, "{}", cells.join("\t")).unwrap();
        }
        out
    }
}

/// Builds the triangle from `S_{n,k} = S_{n,k-1} + 2 S_{n-1,k} - S_{n-1,k-1}`
/// for `k <= n-2` and the flat tail `S_{n,n} = S_{n,n-1} = S_{n,n-2}`.
pub fn triangle(n_max: usize) -> SchroederTriangle {
    let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let row = match n {
            1 => vec![BigUint::one()],
            2 => vec![BigUint::one(), BigUint::one()],
            _ => {
                let prev = &rows[n - 2];
                let mut row: Vec<BigUint> = Vec::with_capacity(n);
                for k in 1..=n - 2 {
                    let left = if k == 1 { BigUint::zero() } else { row[k - 2].clone() };
                    let up_left = if k == 1 { BigUint::zero() } else { prev[k - 2].clone() };
                    row.push(left + BigUint::from(2u32) * &prev[k - 1] - up_left);
                }
                let tail = row[n - 3].clone();
                row.push(tail.clone());
                row.push(tail);
                row
            }
        };
        rows.push(row);
    }
    SchroederTriangle { rows }
}

/// `S_{n,n-2}` equals the sum of row `n-1`.
pub fn row_sum_identity_check(n: usize) -> Result<bool> {
    if n < 3 {
        return Err(Error::IndexOutOfRange(format!("row-sum identity needs n >= 3, got {n}")));
    }
    let t = triangle(n);
    Ok(t.get(n, n - 2) == t.row_sum(n - 1))
}

/// `S_{n,i} = 2 S_{n-1,i} + sum_{l < i} S_{n-1,l}` for `1 <= i <= n-2`.
pub fn column_recurrence_check(n: usize, i: usize) -> Result<bool> {
    if n < 3 || i < 1 || i > n - 2 {
        return Err(Error::IndexOutOfRange(format!("column recurrence needs 1 <= i <= n-2, got n = {n}, i = {i}")));
    }
    let t = triangle(n);
    let lhs = t.get(n, i);
    let rhs = BigUint::from(2u32) * t.get(n - 1, i) + (1..i).map(|l| t.get(n - 1, l)).sum::<BigUint>();
    Ok(lhs == rhs)
}

/// A word `e_1 ... e_n` with `0 <= e_i <= i - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InversionSequence(Vec<u8>);

impl InversionSequence {
    pub fn new(entries: Vec<u8>) -> Result<Self> {
        for (k, &e) in entries.iter().enumerate() {
            if e as usize > k {
                return Err(Error::Domain { input: format!("{entries:?}"), operation: "InversionSequence::new" });
            }
        }
        Ok(InversionSequence(entries))
    }

    pub fn entries(&self) -> &[u8] {
        &self.0
    }

    /// Some `i < j < k` with `e_i < e_k < e_j`.
    pub fn contains_021(&self) -> bool {
        (2..self.0.len()).any(|k| completes_021(&self.0[..k], self.0[k]))
    }
}

fn completes_021(prefix: &[u8], c: u8) -> bool {
    let mut smallest = u8::MAX;
    for &b in prefix {
        if smallest < c && c < b {
            return true;
        }
        smallest = smallest.min(b);
    }
    false
}

/// Entry `k - 1` counts 021-avoiding inversion sequences of length `n` with
/// `e_n ≡ k (mod n)`; the last entry (`k = n`) collects `e_n = 0`.
pub fn inversion_seq_distribution(n: usize) -> Result<Vec<u64>> {
    inversion_seq_distribution_capped(n, crate::perm::DEFAULT_CAP)
}

pub fn inversion_seq_distribution_capped(n: usize, cap: usize) -> Result<Vec<u64>> {
    check_cap(n, cap)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut counts = vec![0u64; n];
    let mut seq = Vec::with_capacity(n);
    extend_021(n, &mut seq, &mut counts);
    Ok(counts)
}

fn extend_021(n: usize, seq: &mut Vec<u8>, counts: &mut [u64]) {
    let k = seq.len();
    if k == n {
        let last = seq[n - 1] as usize;
        counts[if last == 0 { n - 1 } else { last - 1 }] += 1;
        return;
    }
    for c in 0..=k as u8 {
        if !completes_021(seq, c) {
            seq.push(c);
            extend_021(n, seq, counts);
            seq.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn schroeder_values() {
        assert_eq!(schroeder_number(1), big(1));
        assert_eq!(schroeder_number(2), big(2));
        assert_eq!(schroeder_number(4), big(22));
        assert_eq!(schroeder_number(6), big(394));
        assert_eq!(schroeder_number(7), big(1806));
        assert_eq!(schroeder_number(20), big(3_236_724_317_174));
    }

    #[test]
    fn triangle_values() {
        let t = triangle(6);
        let expected: [&[u64]; 6] =
            [&[1], &[1, 1], &[2, 2, 2], &[4, 6, 6, 6], &[8, 16, 22, 22, 22], &[16, 40, 68, 90, 90, 90]];
        for (n, row) in expected.iter().enumerate() {
            assert_eq!(t.row_u64(n + 1), row.to_vec());
        }
        assert_eq!(t.get(5, 3), big(22));
        assert_eq!(t.get(6, 2), big(40));
        let t = triangle(15);
        for n in 3..=15 {
            assert_eq!(t.get(n, 1), big(2) * t.get(n - 1, 1));
        }
    }

    #[test]
    fn row_sums_are_schroeder_numbers() {
        let t = triangle(20);
        let s = schroeder_numbers(20);
        for n in 1..=20 {
            assert_eq!(t.row_sum(n), s[n - 1], "row {n}");
        }
    }

    #[test]
    fn identities() {
        assert!(row_sum_identity_check(3).unwrap());
        assert!(row_sum_identity_check(4).unwrap());
        assert!(row_sum_identity_check(6).unwrap());
        assert!(column_recurrence_check(3, 1).unwrap());
        assert!(column_recurrence_check(5, 2).unwrap());
        assert!(column_recurrence_check(6, 3).unwrap());
        assert!(row_sum_identity_check(2).is_err());
        assert!(column_recurrence_check(5, 4).is_err());
        assert!(column_recurrence_check(5, 0).is_err());
    }

    #[test]
    fn tsv_rendering() {
        assert_eq!(triangle(1).to_tsv(), "1\n");
        assert!(triangle(6).to_tsv().ends_with("16\t40\t68\t90\t90\t90\n"));
    }

    #[test]
    fn inversion_sequences() {
        assert_eq!(inversion_seq_distribution(1).unwrap(), vec![1]);
        assert!(InversionSequence::new(vec![0, 2]).is_err());
        assert!(InversionSequence::new(vec![0, 0, 2, 1]).unwrap().contains_021());
        assert!(!InversionSequence::new(vec![0, 1, 0, 1]).unwrap().contains_021());
        let t = triangle(7);
        for n in 1..=7 {
            assert_eq!(inversion_seq_distribution(n).unwrap(), t.row_u64(n), "n = {n}");
        }
    }
}
