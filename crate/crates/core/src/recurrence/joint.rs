//! Joint first/second letter tables `a_n(i, j)` for the three pairs that
//! contain 1243.

use super::Pascal;
use crate::error::{Error, Result};
use crate::perm::{pair, DistributionTable, PatternPair};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum JointPair {
    P1243_1423,
    P1243_1342,
    P1243_1324,
}

impl JointPair {
    pub fn pattern_pair(self) -> PatternPair {
        match self {
            JointPair::P1243_1423 => pair("1243,1423"),
            JointPair::P1243_1342 => pair("1243,1342"),
            JointPair::P1243_1324 => pair("1243,1324"),
        }
    }

    pub fn from_pair(p: &PatternPair) -> Option<JointPair> {
        joint_recurrence_pairs().into_iter().find(|j| j.pattern_pair().same_set(p))
    }

    /// Tables `0..=n_max` using the default recurrence for the pair.
    pub fn tables(self, n_max: usize) -> Vec<DistributionTable> {
        match self {
            JointPair::P1243_1423 => tables_1243_1423(n_max),
            JointPair::P1243_1342 => tables_1243_1342(n_max, Variant1342::Summary),
            JointPair::P1243_1324 => tables_1243_1324(n_max, Variant1324::Direct),
        }
    }
}

pub fn joint_recurrence_pairs() -> [JointPair; 3] {
    [JointPair::P1243_1423, JointPair::P1243_1342, JointPair::P1243_1324]
}

pub fn tables_for_pair(p: &PatternPair, n_max: usize) -> Result<Vec<DistributionTable>> {
    JointPair::from_pair(p)
        .map(|j| j.tables(n_max))
        .ok_or_else(|| Error::UnsupportedPair { pair: p.to_string(), operation: "joint recurrence" })
}

/// Which form of the `(1243,1342)` recurrence to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant1342 {
    /// The five-branch summary with `a_n(i,i+1) = a_n(i,i+2) = sum_l a_{n-1}(l,i+1)`.
    Summary,
    /// The unsimplified form with the triple sum and the `delta_{i+1,j}` line.
    Unsimplified,
}

/// Which form of the `(1243,1324)` recurrence to run for `i+2 <= j <= n-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant1324 {
    /// `a_{n-1}(i,j)` plus the binomial double sum.
    Direct,
    /// `a_{n-1}(1,j-1) + ... + a_{n-1}(i-1,j-1) + a_{n-1}(i,j)`.
    Telescoped,
}

/// Read access to the tables built so far, with zero outside every range.
struct History<'a> {
    tables: &'a [DistributionTable],
    binom: &'a Pascal,
}

impl History<'_> {
    fn a(&self, m: i64, i: i64, j: i64) -> u64 {
        if m < 0 || i < 1 || j < 1 {
            0
        } else {
            self.tables[m as usize].get(i as usize, j as usize)
        }
    }

    fn row(&self, m: i64, i: i64) -> u64 {
        if m < 0 || i < 1 {
            0
        } else {
            self.tables[m as usize].row_total(i as usize)
        }
    }

    fn total(&self, m: i64) -> u64 {
        if m < 0 {
            0
        } else {
            self.tables[m as usize].total()
        }
    }

    /// `sum_{a<i} sum_{c<=i-a-1} sum_{b=a+1}^{hi(c)} C(i-a-1,c) a_{n-c-2}(a,b)`.
    fn triple(&self, n: i64, i: i64, hi: impl Fn(i64) -> i64) -> u64 {
        let mut s = 0;
        for a in 1..i {
            for c in 0..=i - a - 1 {
                let w = self.binom.get(i - a - 1, c);
                for b in a + 1..=hi(c) {
                    s += w * self.a(n - c - 2, a, b);
                }
            }
        }
        s
    }

    /// `sum_{a<i} sum_{c<=i-a-1} C(i-a-1,c) a_{n-c-2}(a, col(c))`.
    fn double(&self, n: i64, i: i64, col: impl Fn(i64) -> i64) -> u64 {
        let mut s = 0;
        for a in 1..i {
            for c in 0..=i - a - 1 {
                s += self.binom.get(i - a - 1, c) * self.a(n - c - 2, a, col(c));
            }
        }
        s
    }
}

/// Shared driver: initial tables for `n <= 3`, `a_n(i,j) = a_{n-1}(j)` for
/// `j < i`, and `ascent(history, n, i, j)` for `i < j`.
fn build(n_max: usize, ascent: impl Fn(&History, i64, i64, i64) -> u64) -> Vec<DistributionTable> {
    let binom = Pascal::new(n_max.max(1));
    let mut tables: Vec<DistributionTable> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut t = DistributionTable::zeros(n);
        if (2..=3).contains(&n) {
            for i in 1..=n {
                for j in 1..=n {
                    if i != j {
                        t.set(i, j, 1);
                    }
                }
            }
        } else if n >= 4 {
            let h = History { tables: &tables, binom: &binom };
            let ni = n as i64;
            for i in 1..=n {
                for j in 1..=n {
                    let v = if j < i {
                        h.row(ni - 1, j as i64)
                    } else if j > i {
                        ascent(&h, ni, i as i64, j as i64)
                    } else {
                        0
                    };
                    t.set(i, j, v);
                }
            }
        }
        tables.push(t);
    }
    tables
}

pub fn tables_1243_1423(n_max: usize) -> Vec<DistributionTable> {
    build(n_max, |h, n, i, j| {
        if j == i + 1 {
            if i <= n - 2 {
                h.a(n - 1, i, i + 1) + h.triple(n, i, |c| i - c)
            } else {
                h.total(n - 2)
            }
        } else if j == i + 2 {
            if i <= n - 3 {
                h.a(n - 1, i, i + 1) + h.a(n - 1, i, i + 2) + h.triple(n, i, |c| i - c + 1)
            } else {
                h.total(n - 2)
            }
        } else {
            let mut v = h.a(n - 1, i, j - 1) + h.double(n, i, |c| j - c - 2);
            if j != n {
                v += h.a(n - 1, i, j) + h.double(n, i, |c| j - c - 1);
            }
            v
        }
    })
}

pub fn tables_1243_1342(n_max: usize, variant: Variant1342) -> Vec<DistributionTable> {
    build(n_max, |h, n, i, j| {
        if j == n {
            return h.row(n - 1, i);
        }
        match variant {
            Variant1342::Summary => {
                if j <= i + 2 {
                    (1..=i).map(|l| h.a(n - 1, l, i + 1)).sum()
                } else {
                    (i + 1..j).map(|k| h.a(n - 1, i, k)).sum::<u64>() + h.triple(n, i, |c| j - c - 2)
                }
            }
            Variant1342::Unsimplified => {
                let mut v = (i + 1..j).map(|k| h.a(n - 1, i, k)).sum::<u64>() + h.triple(n, i, |c| j - c - 2);
                if j == i + 1 {
                    v += h.a(n - 1, i, i + 1) + h.double(n, i, |c| i - c);
                }
                v
            }
        }
    })
}

pub fn tables_1243_1324(n_max: usize, variant: Variant1324) -> Vec<DistributionTable> {
    build(n_max, |h, n, i, j| {
        if j == n {
            h.row(n - 1, i)
        } else if j == i + 1 {
            h.a(n - 1, i, i + 1) + h.triple(n, i, |c| i - c)
        } else {
            match variant {
                Variant1324::Direct => h.a(n - 1, i, j) + h.double(n, i, |c| j - c - 1),
                Variant1324::Telescoped => (1..i).map(|l| h.a(n - 1, l, j - 1)).sum::<u64>() + h.a(n - 1, i, j),
            }
        }
    })
}

pub fn table_1243_1423(n: usize) -> DistributionTable {
    tables_1243_1423(n).pop().unwrap()
}

pub fn table_1243_1342(n: usize) -> DistributionTable {
    table_1243_1342_with(n, Variant1342::Summary)
}

pub fn table_1243_1342_with(n: usize, variant: Variant1342) -> DistributionTable {
    tables_1243_1342(n, variant).pop().unwrap()
}

pub fn table_1243_1324(n: usize) -> DistributionTable {
    table_1243_1324_with(n, Variant1324::Direct)
}

pub fn table_1243_1324_with(n: usize, variant: Variant1324) -> DistributionTable {
    tables_1243_1324(n, variant).pop().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::first_second_distribution;
    use crate::recurrence::th1_rows;

    const ROW8: [u64; 8] = [64, 224, 512, 928, 1412, 1806, 1806, 1806];

    #[test]
    fn initial_values() {
        for jp in joint_recurrence_pairs() {
            let t = jp.tables(3);
            assert_eq!(t[0].total(), 1);
            assert_eq!(t[1].first_letter_marginal(), vec![1]);
            assert_eq!((t[2].get(1, 2), t[2].get(2, 1)), (1, 1));
            assert!(t[3].cells().all(|(i, j, v)| v == u64::from(i != j)));
        }
    }

    #[test]
    fn tables_match_brute_force() {
        for jp in joint_recurrence_pairs() {
            let p = jp.pattern_pair();
            let tables = jp.tables(8);
            for (n, t) in tables.iter().enumerate().skip(1) {
                assert_eq!(t, &first_second_distribution(n, &p).unwrap(), "{p} n={n}");
            }
            assert_eq!(tables[8].first_letter_marginal(), ROW8.to_vec(), "{p}");
        }
    }

    #[test]
    fn boundary_cells_1423() {
        let tables = tables_1243_1423(10);
        for n in 3..=10 {
            let t = &tables[n];
            assert_eq!(t.get(n - 1, n), tables[n - 2].total());
            assert_eq!(t.get(n - 2, n), tables[n - 2].total());
        }
    }

    #[test]
    fn variants_agree() {
        let s = tables_1243_1342(10, Variant1342::Summary);
        assert_eq!(s, tables_1243_1342(10, Variant1342::Unsimplified));
        for (n, t) in s.iter().enumerate() {
            for i in 1..=n.saturating_sub(2) {
                assert_eq!(t.get(i, i + 1), t.get(i, i + 2), "n={n} i={i}");
            }
        }
        let d = tables_1243_1324(10, Variant1324::Direct);
        assert_eq!(d, tables_1243_1324(10, Variant1324::Telescoped));
        for n in 4..=10 {
            for j in 3..n {
                assert_eq!(d[n].get(1, j), d[n - 1].get(1, j));
            }
        }
    }

    #[test]
    fn marginals_agree_with_first_letter_rows() {
        let rows = th1_rows(10);
        for jp in joint_recurrence_pairs() {
            for (n, t) in jp.tables(10).iter().enumerate().skip(1) {
                assert_eq!(t.first_letter_marginal(), rows[n], "{jp:?} n={n}");
            }
        }
        assert!(tables_for_pair(&pair("1234,1243"), 4).is_err());
        assert_eq!(JointPair::from_pair(&pair("1423,1243")), Some(JointPair::P1243_1423));
    }
}
