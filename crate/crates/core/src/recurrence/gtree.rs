use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::perm::{generating_tree_pairs, PatternPair};
use crate::series::PolyAux;

/// `u_n(i, j)`: avoiders with first letter `i` and `j` active sites.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GTable {
    n: usize,
    u: Vec<Vec<u64>>,
}

impl GTable {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `u_n(i, j)`, zero outside `1 <= i <= n`, `0 <= j <= n + 1`.
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.u.get(i).and_then(|row| row.get(j)).copied().unwrap_or(0)
    }

    /// Rows indexed `[i][j]` with `0 <= i <= n`, `0 <= j <= n + 1`, the
    /// layout of [`crate::perm::active_site_census`].
    pub fn as_rows(&self) -> &[Vec<u64>] {
        &self.u
    }

    pub fn first_letter_marginal(&self) -> Vec<u64> {
        (1..=self.n).map(|i| self.u[i].iter().sum()).collect()
    }

    pub fn total(&self) -> u64 {
        self.first_letter_marginal().iter().sum()
    }
}

/// Tables for `n = 0..=n_max` (the `n = 0` table is empty).
pub fn gtree_tables(n_max: usize) -> Vec<GTable> {
    let mut out = vec![GTable { n: 0, u: vec![vec![0; 2]] }];
    for n in 1..=n_max {
        let mut u = vec![vec![0u64; n + 2]; n + 1];
        if n == 1 {
            u[1][2] = 1;
        } else {
            let prev = &out[n - 1];
            u[1][n + 1] = 1u64 << (n - 2);
            for i in 2..=n {
                for j in 3..=n {
                    u[i][j] = prev.get(i - 1, j - 1) + (j - 1..=n).map(|l| prev.get(i - 1, l)).sum::<u64>();
                }
                u[i][n + 1] = prev.get(i - 1, n);
            }
        }
        out.push(GTable { n, u });
    }
    out
}

pub fn gtree_table(n: usize, p: &PatternPair) -> Result<GTable> {
    if !generating_tree_pairs().iter().any(|q| q.same_set(p)) {
        return Err(Error::UnsupportedPair { pair: p.to_string(), operation: "gtree_table" });
    }
    Ok(gtree_tables(n).pop().unwrap())
}

/// `v_n(y, q)` stored with `y` as the first and `q` as the second
/// auxiliary variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VPoly {
    pub n: usize,
    pub poly: PolyAux,
}

impl VPoly {
    /// `sum_{i,j} u_n(i, j) y^i q^(j-2)`.
    pub fn from_table(t: &GTable) -> VPoly {
        let mut poly = PolyAux::zero();
        for i in 1..=t.n {
            for j in 2..=t.n + 1 {
                let c = t.get(i, j);
                if c > 0 {
                    poly += PolyAux::monomial(BigRational::from_integer(c.into()), i as u32, (j - 2) as u32);
                }
            }
        }
        VPoly { n: t.n, poly }
    }

    /// Coefficients of `y^1, ..., y^n` in `v_n(y, 1)`.
    pub fn at_q_one(&self) -> Vec<u64> {
        let flat = self.poly.at_b_one();
        (1..=self.n as u32)
            .map(|i| {
                let c = flat.coeff(i, 0);
                assert!(c.is_integer(), "non-integral coefficient {c}");
                u64::try_from(c.to_integer()).expect("negative or oversized coefficient")
            })
            .collect()
    }
}

/// `v_1, ..., v_{n_max}` from the polynomial recurrence, clearing the
/// `(2 - y)(1 - q)` denominator by exact division.
///
/// # Panics
/// If a division is not exact.
pub fn gtree_vpolys(n_max: usize) -> Vec<VPoly> {
    let y = PolyAux::var_a();
    let q = PolyAux::var_b();
    let one = PolyAux::one();
    let two = PolyAux::from_int(2);
    let two_minus_y = &two - &y;
    let one_minus_q = &one - &q;
    let den = &two_minus_y * &one_minus_q;
    let one_minus_2q = &one - &(&two * &q);
    let mut out: Vec<VPoly> = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let poly = if n == 1 {
            y.clone()
        } else {
            let prev = &out[n - 2].poly;
            let pow2 = PolyAux::constant(BigRational::from_integer(num_bigint::BigInt::one() << (n - 1)));
            let inhom = &(&(&one - &y) * &(&(&pow2 * &y) - &y.pow(n as u32))) * &(&q.pow(n as u32 - 1) * &one_minus_q);
            let rec = &(&(&two_minus_y * &y) * &q) * &(&prev.at_b_one() + &(&one_minus_2q * prev));
            let num = &inhom + &rec;
            num.div_exact(&den).unwrap_or_else(|| panic!("inexact division computing v_{n}"))
        };
        out.push(VPoly { n, poly });
    }
    out
}

pub fn gtree_vpoly(n: usize) -> VPoly {
    assert!(n >= 1, "v_n is defined for n >= 1");
    gtree_vpolys(n).pop().unwrap()
}
