//! Permutations in one-line notation, classical pattern containment and
//! brute-force enumeration of avoidance classes.
//!
//! Letters and positions are 1-based everywhere in the public API. Letters
//! are stored as `u8`, which bounds permutations at 255 letters; the
//! enumerators are capped far below that.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Default brute-force cap on `n`.
pub const DEFAULT_CAP: usize = 11;

/// A permutation of `{1, ..., n}` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    letters: Vec<u8>,
}

impl Permutation {
    /// Validates that `letters` uses every value `1..=n` exactly once.
    pub fn new(letters: Vec<u8>) -> Result<Self> {
        let n = letters.len();
        if n > u8::MAX as usize {
            return Err(Error::InvalidPermutation(format!("length {n} exceeds 255")));
        }
        let mut seen = vec![false; n + 1];
        for &l in &letters {
            let l = l as usize;
            if l == 0 || l > n || seen[l] {
                return Err(Error::InvalidPermutation(format!("{letters:?} is not a bijection of 1..={n}")));
            }
            seen[l] = true;
        }
        Ok(Permutation { letters })
    }

    pub(crate) fn from_letters_unchecked(letters: Vec<u8>) -> Self {
        debug_assert!(Permutation::new(letters.clone()).is_ok());
        Permutation { letters }
    }

    pub fn identity(n: usize) -> Self {
        Permutation::from_letters_unchecked((1..=n as u8).collect())
    }

    pub fn empty() -> Self {
        Permutation { letters: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<u8> {
        self.letters
    }

    /// The first letter, `None` for the empty permutation.
    pub fn first(&self) -> Option<u8> {
        self.letters.first().copied()
    }

    pub fn second(&self) -> Option<u8> {
        self.letters.get(1).copied()
    }

    /// 1-based position of `value`.
    pub fn position_of(&self, value: u8) -> Option<usize> {
        self.letters.iter().position(|&l| l == value).map(|p| p + 1)
    }

    pub fn contains(&self, pat: &Pattern) -> bool {
        contains(self, pat)
    }

    pub fn avoids(&self, pair: &PatternPair) -> bool {
        avoids(self, pair)
    }

    pub fn reverse(&self) -> Permutation {
        let mut letters = self.letters.clone();
        letters.reverse();
        Permutation { letters }
    }

    pub fn complement(&self) -> Permutation {
        let n = self.len() as u8;
        Permutation { letters: self.letters.iter().map(|&l| n + 1 - l).collect() }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

/// Space-separated one-line notation, e.g. `2 4 1 3`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Accepts space-separated letters (`"2 4 1 3"`) or, when every letter is a
/// single digit, the compact form `"2413"`.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let tokens: Vec<&str> = s.split_whitespace().collect();
        let letters: Vec<u8> = if tokens.len() == 1 && tokens[0].len() > 1 {
            tokens[0]
                .chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as u8)
                        .ok_or_else(|| Error::InvalidPermutation(format!("bad letter {c:?} in {s:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            tokens
                .iter()
                .map(|t| t.parse::<u8>().map_err(|_| Error::InvalidPermutation(format!("bad letter {t:?} in {s:?}"))))
                .collect::<Result<_>>()?
        };
        Permutation::new(letters)
    }
}

/// A classical pattern of length 3 or 4.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern(Permutation);

impl Pattern {
    pub fn new(perm: Permutation) -> Result<Self> {
        if !(3..=4).contains(&perm.len()) {
            return Err(Error::InvalidPattern(format!("patterns must have length 3 or 4, got {}", perm.len())));
        }
        Ok(Pattern(perm))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn letters(&self) -> &[u8] {
        self.0.letters()
    }

    pub fn as_permutation(&self) -> &Permutation {
        &self.0
    }
}

impl fmt::Debug for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pattern({self})")
    }
}

/// Compact notation, e.g. `1243`.
impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in self.letters() {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let perm: Permutation = s.parse().map_err(|e: Error| Error::InvalidPattern(e.to_string()))?;
        Pattern::new(perm)
    }
}

/// Two distinct patterns of equal length.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PatternPair {
    pub first: Pattern,
    pub second: Pattern,
}

impl PatternPair {
    pub fn new(first: Pattern, second: Pattern) -> Result<Self> {
        if first.len() != second.len() {
            return Err(Error::InvalidPattern(format!("{first} and {second} have different lengths")));
        }
        if first == second {
            return Err(Error::InvalidPattern(format!("{first} is repeated")));
        }
        Ok(PatternPair { first, second })
    }

    pub fn patterns(&self) -> [&Pattern; 2] {
        [&self.first, &self.second]
    }

    /// Both patterns reversed.
    pub fn reversed(&self) -> PatternPair {
        PatternPair { first: Pattern(self.first.0.reverse()), second: Pattern(self.second.0.reverse()) }
    }

    /// Both patterns complemented.
    pub fn complemented(&self) -> PatternPair {
        PatternPair { first: Pattern(self.first.0.complement()), second: Pattern(self.second.0.complement()) }
    }

    /// Same pair regardless of the order the two patterns were given in.
    pub fn same_set(&self, other: &PatternPair) -> bool {
        (self.first == other.first && self.second == other.second)
            || (self.first == other.second && self.second == other.first)
    }
}

impl fmt::Debug for PatternPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PatternPair({self})")
    }
}

impl fmt::Display for PatternPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.first, self.second)
    }
}

/// Parses `"1243,1423"`.
impl FromStr for PatternPair {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s.split_once(',').ok_or_else(|| Error::InvalidPattern(format!("expected `A,B`, got {s:?}")))?;
        PatternPair::new(a.trim().parse()?, b.trim().parse()?)
    }
}

/// Shorthand for tests and tables: panics on malformed input.
pub fn pair(s: &str) -> PatternPair {
    s.parse().unwrap_or_else(|e| panic!("bad pattern pair {s:?}: {e}"))
}

/// Backtracking search for an occurrence of `pat` in `letters`.
///
/// Slots of the pattern are filled left to right; a candidate letter is kept
/// only if it compares with every already chosen letter the way the pattern
/// says. `last` pins the final slot to a letter that must follow everything
/// in `letters`, which is the incremental test used while extending prefixes.
fn occurs(letters: &[u8], pat: &[u8], last: Option<u8>) -> bool {
    let slots = if last.is_some() { pat.len() - 1 } else { pat.len() };
    if slots > letters.len() {
        return false;
    }
    let mut chosen = [0u8; 8];
    search(letters, pat, last, slots, &mut chosen, 0, 0)
}

fn search(
    letters: &[u8],
    pat: &[u8],
    last: Option<u8>,
    slots: usize,
    chosen: &mut [u8; 8],
    depth: usize,
    start: usize,
) -> bool {
    if depth == slots {
        return true;
    }
    let remaining = slots - depth;
    for idx in start..=letters.len() - remaining {
        let val = letters[idx];
        let fits_chosen = (0..depth).all(|t| (chosen[t] < val) == (pat[t] < pat[depth]));
        let fits_last = match last {
            Some(l) => (val < l) == (pat[depth] < pat[pat.len() - 1]),
            None => true,
        };
        if fits_chosen && fits_last {
            chosen[depth] = val;
            if search(letters, pat, last, slots, chosen, depth + 1, idx + 1) {
                return true;
            }
        }
    }
    false
}

/// True iff some subsequence of `perm` is order-isomorphic to `pat`.
pub fn contains(perm: &Permutation, pat: &Pattern) -> bool {
    occurs(perm.letters(), pat.letters(), None)
}

pub fn avoids(perm: &Permutation, pair: &PatternPair) -> bool {
    !contains(perm, &pair.first) && !contains(perm, &pair.second)
}

/// Whether the sequence `letters` (distinct values, not necessarily a
/// permutation) has an occurrence of `pat` that uses its last letter.
pub(crate) fn occurs_at_end(letters: &[u8], pat: &[u8]) -> bool {
    match letters.split_last() {
        Some((&l, rest)) => occurs(rest, pat, Some(l)),
        None => false,
    }
}

// Bitmask bookkeeping in the enumerators limits n to 63 whatever the cap.
const HARD_LIMIT: usize = 63;

pub(crate) fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap.min(HARD_LIMIT) {
        Err(Error::CapExceeded { n, cap: cap.min(HARD_LIMIT) })
    } else {
        Ok(())
    }
}

/// Depth-first extension of `prefix` to avoiders of length `n`, in
/// lexicographic order. `prefix` must itself avoid the patterns.
fn walk<F: FnMut(&[u8])>(n: usize, pats: &[&[u8]; 2], prefix: &mut Vec<u8>, used: &mut u64, visit: &mut F) {
    if prefix.len() == n {
        visit(prefix);
        return;
    }
    for v in 1..=n as u8 {
        if *used & (1 << v) != 0 {
            continue;
        }
        prefix.push(v);
        if !pats.iter().any(|p| occurs_at_end(prefix, p)) {
            *used |= 1 << v;
            walk(n, pats, prefix, used, visit);
            *used &= !(1 << v);
        }
        prefix.pop();
    }
}

/// Visits every member of `S_n(pair)` whose one-line notation starts with
/// `prefix`, in lexicographic order.
pub(crate) fn visit_with_prefix<F: FnMut(&[u8])>(n: usize, pair: &PatternPair, prefix: &[u8], mut visit: F) {
    let pats = [pair.first.letters(), pair.second.letters()];
    let mut buf = Vec::with_capacity(n);
    let mut used = 0u64;
    for &l in prefix {
        buf.push(l);
        if pats.iter().any(|p| occurs_at_end(&buf, p)) {
            return;
        }
        used |= 1 << l;
    }
    walk(n, &pats, &mut buf, &mut used, &mut visit);
}

/// Lexicographic stream over `S_n(pair)`.
///
/// Prefixes are extended one letter at a time and abandoned as soon as they
/// contain either pattern.
pub struct Avoiders {
    n: usize,
    pats: [Vec<u8>; 2],
    prefix: Vec<u8>,
    used: u64,
    // next candidate value to try at each depth
    next: Vec<u8>,
    done: bool,
}

impl Iterator for Avoiders {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        if self.n == 0 {
            self.done = true;
            return Some(Permutation::empty());
        }
        loop {
            let depth = self.prefix.len();
            if depth == self.n {
                let out = Permutation::from_letters_unchecked(self.prefix.clone());
                self.backtrack();
                return Some(out);
            }
            let mut v = self.next[depth];
            while v as usize <= self.n && self.used & (1 << v) != 0 {
                v += 1;
            }
            if v as usize > self.n {
                if depth == 0 {
                    self.done = true;
                    return None;
                }
                self.backtrack();
                continue;
            }
            self.next[depth] = v + 1;
            self.prefix.push(v);
            if self.pats.iter().any(|p| occurs_at_end(&self.prefix, p)) {
                self.prefix.pop();
                continue;
            }
            self.used |= 1 << v;
            if depth + 1 < self.n {
                self.next[depth + 1] = 1;
            }
        }
    }
}

impl Avoiders {
    fn backtrack(&mut self) {
        if let Some(v) = self.prefix.pop() {
            self.used &= !(1 << v);
        }
    }
}

/// Members of `S_n(pair)` in lexicographic order, with the default cap.
pub fn enumerate_avoiders(n: usize, pair: &PatternPair) -> Result<Avoiders> {
    enumerate_avoiders_capped(n, pair, DEFAULT_CAP)
}

pub fn enumerate_avoiders_capped(n: usize, pair: &PatternPair, cap: usize) -> Result<Avoiders> {
    check_cap(n, cap)?;
    Ok(Avoiders {
        n,
        pats: [pair.first.letters().to_vec(), pair.second.letters().to_vec()],
        prefix: Vec::with_capacity(n),
        used: 0,
        next: vec![1; n.max(1)],
        done: false,
    })
}

/// `|S_n(pair)|`.
pub fn count_avoiders(n: usize, pair: &PatternPair) -> Result<u64> {
    Ok(first_letter_distribution(n, pair)?.iter().sum::<u64>().max(u64::from(n == 0)))
}

/// Entry `i - 1` is `|S_{n,i}(pair)|`, the number of avoiders starting with `i`.
pub fn first_letter_distribution(n: usize, pair: &PatternPair) -> Result<Vec<u64>> {
    first_letter_distribution_capped(n, pair, DEFAULT_CAP)
}

pub fn first_letter_distribution_capped(n: usize, pair: &PatternPair, cap: usize) -> Result<Vec<u64>> {
    check_cap(n, cap)?;
    Ok((1..=n as u8)
        .into_par_iter()
        .map(|i| {
            let mut count = 0u64;
            visit_with_prefix(n, pair, &[i], |_| count += 1);
            count
        })
        .collect())
}

/// Joint distribution `a_n(i, j)` of the first and second letters.
///
/// For `n <= 1` there is no second letter; the table is empty and its
/// marginal is the single count `a_1(1) = 1` (or `a_0 = 1`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DistributionTable {
    n: usize,
    cells: Vec<u64>,
}

impl DistributionTable {
    pub fn zeros(n: usize) -> Self {
        DistributionTable { n, cells: vec![0; n * n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `a_n(i, j)`, zero outside `1..=n`.
    pub fn get(&self, i: usize, j: usize) -> u64 {
        if i == 0 || j == 0 || i > self.n || j > self.n {
            0
        } else {
            self.cells[(i - 1) * self.n + (j - 1)]
        }
    }

    pub fn set(&mut self, i: usize, j: usize, value: u64) {
        assert!(
            (1..=self.n).contains(&i) && (1..=self.n).contains(&j),
            "cell ({i},{j}) outside a table of size {}",
            self.n
        );
        self.cells[(i - 1) * self.n + (j - 1)] = value;
    }

    /// `a_n(i)`, zero outside `1..=n`.
    pub fn row_total(&self, i: usize) -> u64 {
        match self.n {
            0 => 0,
            1 => u64::from(i == 1),
            _ if i == 0 || i > self.n => 0,
            _ => (1..=self.n).map(|j| self.get(i, j)).sum(),
        }
    }

    /// The first-letter distribution `(a_n(1), ..., a_n(n))`.
    pub fn first_letter_marginal(&self) -> Vec<u64> {
        (1..=self.n).map(|i| self.row_total(i)).collect()
    }

    /// `a_n`; the empty permutation makes `a_0 = 1`.
    pub fn total(&self) -> u64 {
        if self.n == 0 {
            1
        } else {
            self.first_letter_marginal().iter().sum()
        }
    }

    /// Row-major iterator over `(i, j, a_n(i, j))` for all cells.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        (1..=self.n).flat_map(move |i| (1..=self.n).map(move |j| (i, j, self.get(i, j))))
    }
}

/// Brute-force census of first and second letters over `S_n(pair)`.
pub fn first_second_distribution(n: usize, pair: &PatternPair) -> Result<DistributionTable> {
    first_second_distribution_capped(n, pair, DEFAULT_CAP)
}

pub fn first_second_distribution_capped(n: usize, pair: &PatternPair, cap: usize) -> Result<DistributionTable> {
    check_cap(n, cap)?;
    if n <= 1 {
        return Ok(DistributionTable::zeros(n));
    }
    let rows: Vec<Vec<u64>> = (1..=n as u8)
        .into_par_iter()
        .map(|i| {
            let mut row = vec![0u64; n + 1];
            visit_with_prefix(n, pair, &[i], |p| row[p[1] as usize] += 1);
            row
        })
        .collect();
    let mut table = DistributionTable::zeros(n);
    for (i, row) in rows.iter().enumerate() {
        for j in 1..=n {
            table.set(i + 1, j, row[j]);
        }
    }
    Ok(table)
}

/// Left-right minima as `(position, value)`, positions increasing (so values
/// decreasing from `π_1` down to `1`).
pub fn left_right_minima(perm: &Permutation) -> Vec<(usize, u8)> {
    let mut out = Vec::new();
    let mut min = u8::MAX;
    for (k, &l) in perm.letters().iter().enumerate() {
        if l < min {
            out.push((k + 1, l));
            min = l;
        }
    }
    out
}

/// Pairs whose active sites obey the `(k) -> (3)(4)...(k+1)(k+1)` rule.
pub fn generating_tree_pairs() -> [PatternPair; 2] {
    [pair("1324,1423"), pair("1342,1423")]
}

fn check_gtree_pair(p: &PatternPair, operation: &'static str) -> Result<()> {
    if generating_tree_pairs().iter().any(|q| q.same_set(p)) {
        Ok(())
    } else {
        Err(Error::UnsupportedPair { pair: p.to_string(), operation })
    }
}

/// Gap indices `0..=len` where a new minimum can be inserted into `perm`
/// without creating an occurrence of either pattern. Gap `g` sits after the
/// first `g` letters.
pub fn active_sites(perm: &Permutation, pair: &PatternPair) -> Result<Vec<usize>> {
    check_gtree_pair(pair, "active_sites")?;
    Ok(active_sites_unchecked(perm.letters(), pair))
}

pub(crate) fn active_sites_unchecked(letters: &[u8], pair: &PatternPair) -> Vec<usize> {
    let n = letters.len();
    let shifted: Vec<u8> = letters.iter().map(|&l| l + 1).collect();
    let mut buf = Vec::with_capacity(n + 1);
    (0..=n)
        .filter(|&g| {
            buf.clear();
            buf.extend_from_slice(&shifted[..g]);
            buf.push(1);
            buf.extend_from_slice(&shifted[g..]);
            let p = Permutation { letters: std::mem::take(&mut buf) };
            let ok = avoids(&p, pair);
            buf = p.letters;
            ok
        })
        .collect()
}

/// Census `(first letter, number of active sites) -> count` over `S_n(pair)`,
/// returned as `counts[i][j]`.
pub fn active_site_census(n: usize, pair: &PatternPair, cap: usize) -> Result<Vec<Vec<u64>>> {
    check_gtree_pair(pair, "active_site_census")?;
    check_cap(n, cap)?;
    let rows: Vec<Vec<u64>> = (1..=n as u8)
        .into_par_iter()
        .map(|i| {
            let mut row = vec![0u64; n + 2];
            visit_with_prefix(n, pair, &[i], |p| {
                row[active_sites_unchecked(p, pair).len()] += 1;
            });
            row
        })
        .collect();
    let mut out = vec![vec![0u64; n + 2]; n + 1];
    for (i, row) in rows.into_iter().enumerate() {
        out[i + 1] = row;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn pat(s: &str) -> Pattern {
        s.parse().unwrap()
    }

    // Order-isomorphism straight from the definition over all index sets.
    fn contains_by_definition(perm: &[u8], pat: &[u8]) -> bool {
        let n = perm.len();
        let k = pat.len();
        if k > n {
            return false;
        }
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let ok = (0..k).all(|a| (0..k).all(|b| (perm[idx[a]] < perm[idx[b]]) == (pat[a] < pat[b])));
            if ok {
                return true;
            }
            let mut t = k;
            loop {
                if t == 0 {
                    return false;
                }
                t -= 1;
                if idx[t] < n - k + t {
                    break;
                }
            }
            idx[t] += 1;
            for u in t + 1..k {
                idx[u] = idx[u - 1] + 1;
            }
        }
    }

    #[test]
    fn contains_examples() {
        assert!(contains(&p("1243"), &pat("1243")));
        assert!(!contains(&p("321"), &pat("1234")));
        // 2413 has a single index quadruple and it is not order-isomorphic to 1243
        assert_eq!(contains(&p("2413"), &pat("1243")), contains_by_definition(&[2, 4, 1, 3], &[1, 2, 4, 3]));
        assert!(!contains(&p("2413"), &pat("1243")));
        assert!(contains(&p("2413"), &pat("2413")));
        assert!(contains(&p("3 5 2 4 1"), &pat("231")));
    }

    fn all_permutations(n: usize) -> Vec<Permutation> {
        fn rec(n: usize, cur: &mut Vec<u8>, out: &mut Vec<Permutation>) {
            if cur.len() == n {
                out.push(Permutation::new(cur.clone()).unwrap());
                return;
            }
            for v in 1..=n as u8 {
                if !cur.contains(&v) {
                    cur.push(v);
                    rec(n, cur, out);
                    cur.pop();
                }
            }
        }
        let mut out = Vec::new();
        rec(n, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn contains_matches_definition_on_s6() {
        let pats = ["1243", "1423", "2413", "3412", "321", "132"];
        for perm in all_permutations(6) {
            for s in pats {
                let q = pat(s);
                assert_eq!(contains(&perm, &q), contains_by_definition(perm.letters(), q.letters()), "{perm} vs {s}");
            }
        }
    }

    #[test]
    fn avoids_edge_cases() {
        let pr = pair("1234,1243");
        assert!(avoids(&p("1"), &pr));
        assert!(!avoids(&p("1234"), &pr));
        assert!(!avoids(&p("1243"), &pr));
        assert!(avoids(&p("4321"), &pr));
    }

    #[test]
    fn enumeration_small_cases() {
        let pr = pair("1234,1243");
        let e0: Vec<_> = enumerate_avoiders(0, &pr).unwrap().collect();
        assert_eq!(e0, vec![Permutation::empty()]);
        let e3: Vec<_> = enumerate_avoiders(3, &pr).unwrap().collect();
        assert_eq!(e3.len(), 6);
        assert!(e3.windows(2).all(|w| w[0] < w[1]), "lexicographic order");
        let e1: Vec<_> = enumerate_avoiders(1, &pr).unwrap().collect();
        assert_eq!(e1, vec![p("1")]);
    }

    #[test]
    fn enumeration_is_lexicographic_and_filtered() {
        let pr = pair("1243,1423");
        let listed: Vec<_> = enumerate_avoiders(6, &pr).unwrap().collect();
        assert!(listed.windows(2).all(|w| w[0] < w[1]));
        assert!(listed.iter().all(|q| avoids(q, &pr)));
        let filtered: Vec<_> = all_permutations(6).into_iter().filter(|q| avoids(q, &pr)).collect();
        assert_eq!(listed, filtered);
    }

    #[test]
    fn enumeration_cap() {
        let pr = pair("1234,1243");
        assert_eq!(enumerate_avoiders(12, &pr).err(), Some(Error::CapExceeded { n: 12, cap: DEFAULT_CAP }));
        assert!(first_letter_distribution_capped(5, &pr, 4).is_err());
    }

    #[test]
    fn first_letter_small() {
        assert_eq!(first_letter_distribution(1, &pair("2431,3421")).unwrap(), vec![1]);
        assert_eq!(first_letter_distribution(4, &pair("1234,1243")).unwrap(), vec![4, 6, 6, 6]);
    }

    #[test]
    fn first_second_initial_values() {
        let pr = pair("1243,1423");
        let t2 = first_second_distribution(2, &pr).unwrap();
        assert_eq!((t2.get(1, 2), t2.get(2, 1), t2.get(1, 1)), (1, 1, 0));
        let t3 = first_second_distribution(3, &pr).unwrap();
        for i in 1..=3 {
            for j in 1..=3 {
                assert_eq!(t3.get(i, j), u64::from(i != j));
            }
        }
        let t1 = first_second_distribution(1, &pr).unwrap();
        assert_eq!(t1.first_letter_marginal(), vec![1]);
    }

    #[test]
    fn left_right_minima_examples() {
        assert_eq!(left_right_minima(&p("1 2 3")), vec![(1, 1)]);
        assert_eq!(left_right_minima(&p("4 3 2 1")), vec![(1, 4), (2, 3), (3, 2), (4, 1)]);
        assert_eq!(left_right_minima(&p("3 5 2 4 1")), vec![(1, 3), (3, 2), (5, 1)]);
    }

    #[test]
    fn active_sites_examples() {
        let pr = pair("1324,1423");
        assert_eq!(active_sites(&p("1"), &pr).unwrap(), vec![0, 1]);
        // 213- and 312-avoiders leave every gap open
        for q in enumerate_avoiders_capped(5, &pair("213,312"), 5).unwrap() {
            assert_eq!(active_sites(&q, &pr).unwrap().len(), 6, "{q}");
        }
        assert!(matches!(active_sites(&p("1 2"), &pair("1234,1243")), Err(Error::UnsupportedPair { .. })));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(p("2 4 1 3").to_string(), "2 4 1 3");
        assert_eq!(p("2413"), p("2 4 1 3"));
        assert!("1 1 2".parse::<Permutation>().is_err());
        assert!("1 3".parse::<Permutation>().is_err());
        assert_eq!(pair("1243,1423").to_string(), "1243,1423");
        assert!("1243,1243".parse::<PatternPair>().is_err());
        assert!("123,1243".parse::<PatternPair>().is_err());
        assert!("12,21".parse::<PatternPair>().is_err());
    }
}
