//! A bijection from `S_n(1342,1432)` to `S_n(1234,1243)` that fixes the
//! positions and values of every left-right minimum.

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{enumerate_avoiders_capped, left_right_minima, pair, PatternPair, Permutation};

pub fn domain_pair() -> PatternPair {
    pair("1342,1432")
}

pub fn target_pair() -> PatternPair {
    pair("1234,1243")
}

/// The permutations `π_0, ..., π_r` produced by [`map_f`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BijectionTrace {
    pub stages: Vec<Permutation>,
    /// Left-right minima `(position, value)`, shared by every stage.
    pub minima: Vec<(usize, u8)>,
}

impl BijectionTrace {
    /// `r`, the number of stages after `π_0`.
    pub fn stage_count(&self) -> usize {
        self.stages.len() - 1
    }

    pub fn output(&self) -> &Permutation {
        self.stages.last().expect("trace has at least one stage")
    }
}

impl fmt::Display for BijectionTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (t, p) in self.stages.iter().enumerate() {
            write!(f, "pi_{t}:")?;
            for (k, l) in p.letters().iter().enumerate() {
                if self.minima.iter().any(|&(pos, _)| pos == k + 1) {
                    write!(f, " [{l}]")?;
                } else {
                    write!(f, " {l}")?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Zero-based positions of the letters greater than `a_t` to the right of
/// `a_t`, and how many of them also lie to the right of `a_{t-1}`.
fn stage_sites(letters: &[u8], at: u8, prev: u8) -> (Vec<usize>, usize) {
    let pa = letters.iter().position(|&l| l == at).unwrap();
    let pp = letters.iter().position(|&l| l == prev).unwrap();
    let sites: Vec<usize> = (pa + 1..letters.len()).filter(|&k| letters[k] > at).collect();
    let tail = sites.iter().filter(|&&k| k > pp).count();
    (sites, tail)
}

fn reverse_after_one(letters: &mut [u8]) {
    let p = letters.iter().position(|&l| l == 1).unwrap();
    letters[p + 1..].reverse();
}

fn domain_error(perm: &Permutation, operation: &'static str) -> Error {
    Error::Domain { input: perm.to_string(), operation }
}

pub fn map_f(perm: &Permutation) -> Result<(Permutation, BijectionTrace)> {
    if perm.is_empty() || !perm.avoids(&domain_pair()) {
        return Err(domain_error(perm, "map_f"));
    }
    let minima = left_right_minima(perm);
    // a_1 = 1 is the last minimum, a_r = π_1 the first.
    let a: Vec<u8> = minima.iter().rev().map(|&(_, v)| v).collect();
    let mut cur = perm.letters().to_vec();
    let mut stages = vec![perm.clone()];

    reverse_after_one(&mut cur);
    stages.push(Permutation::new(cur.clone())?);
    for t in 1..a.len() {
        let (sites, tail) = stage_sites(&cur, a[t], a[t - 1]);
        let vals: Vec<u8> = sites.iter().map(|&k| cur[k]).collect();
        let head = vals.len() - tail;
        let refill = vals[head..].iter().chain(vals[..head].iter().rev());
        for (&k, &v) in sites.iter().zip(refill) {
            cur[k] = v;
        }
        stages.push(Permutation::new(cur.clone())?);
    }
    let out = stages.last().unwrap().clone();
    Ok((out, BijectionTrace { stages, minima }))
}

pub fn inverse_f(perm: &Permutation) -> Result<Permutation> {
    if perm.is_empty() || !perm.avoids(&target_pair()) {
        return Err(domain_error(perm, "inverse_f"));
    }
    let a: Vec<u8> = left_right_minima(perm).iter().rev().map(|&(_, v)| v).collect();
    let mut cur = perm.letters().to_vec();
    for t in (1..a.len()).rev() {
        let (sites, tail) = stage_sites(&cur, a[t], a[t - 1]);
        let vals: Vec<u8> = sites.iter().map(|&k| cur[k]).collect();
        let restored = vals[tail..].iter().rev().chain(vals[..tail].iter());
        for (&k, &v) in sites.iter().zip(restored) {
            cur[k] = v;
        }
    }
    reverse_after_one(&mut cur);
    Permutation::new(cur)
}

/// True when some occurrence of 1234 or 1243 uses the letter at zero-based
/// position `p` as its `1`.
pub fn target_occurrence_at(perm: &Permutation, p: usize) -> bool {
    let l = perm.letters();
    let base = l[p];
    let rest: Vec<u8> = l[p + 1..].iter().copied().filter(|&x| x > base).collect();
    // 123 or 132 among the larger letters to the right.
    (0..rest.len())
        .any(|i| (i + 1..rest.len()).any(|j| rest[j] > rest[i] && (j + 1..rest.len()).any(|k| rest[k] > rest[i])))
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct BijectionCheck {
    pub n: usize,
    pub domain_size: u64,
    pub target_size: u64,
    pub image_size: u64,
    /// First failure found, rendered so that it can be rerun in isolation.
    pub counterexample: Option<String>,
}

impl BijectionCheck {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none() && self.domain_size == self.target_size && self.image_size == self.target_size
    }
}

fn check_one(p: &Permutation) -> std::result::Result<Permutation, String> {
    let (img, trace) = map_f(p).map_err(|e| e.to_string())?;
    if !img.avoids(&target_pair()) {
        return Err(format!("f({p}) = {img} contains a forbidden pattern"));
    }
    if left_right_minima(&img) != trace.minima || trace.stage_count() != trace.minima.len() {
        return Err(format!("f({p}) = {img} moves a left-right minimum"));
    }
    if img.first() != p.first() {
        return Err(format!("f({p}) = {img} changes the first letter"));
    }
    for (t, stage) in trace.stages.iter().enumerate().skip(1) {
        if left_right_minima(stage) != trace.minima {
            return Err(format!("stage {t} of f({p}) moves a left-right minimum"));
        }
        let done = &trace.minima[trace.minima.len() - t..];
        if let Some(&(pos, _)) = done.iter().find(|&&(pos, _)| target_occurrence_at(stage, pos - 1)) {
            return Err(format!("stage {t} of f({p}) = {stage} has an occurrence starting at position {pos}"));
        }
    }
    match inverse_f(&img) {
        Ok(back) if &back == p => Ok(img),
        Ok(back) => Err(format!("inverse_f(f({p})) = {back}")),
        Err(e) => Err(e.to_string()),
    }
}

/// Exhaustive check of [`map_f`] and [`inverse_f`] on `S_n(1342,1432)`.
pub fn check_bijection(n: usize, cap: usize) -> Result<BijectionCheck> {
    let domain: Vec<Permutation> = enumerate_avoiders_capped(n, &domain_pair(), cap)?.collect();
    let target: Vec<Permutation> = enumerate_avoiders_capped(n, &target_pair(), cap)?.collect();
    let results: Vec<_> = domain.par_iter().map(check_one).collect();
    let mut report =
        BijectionCheck { n, domain_size: domain.len() as u64, target_size: target.len() as u64, ..Default::default() };
    let mut image = HashSet::with_capacity(domain.len());
    for r in results {
        match r {
            Ok(img) => {
                if !image.insert(img.clone()) && report.counterexample.is_none() {
                    report.counterexample = Some(format!("{img} is hit twice"));
                }
            }
            Err(e) => {
                report.counterexample.get_or_insert(e);
            }
        }
    }
    report.image_size = image.len() as u64;
    if report.counterexample.is_none() {
        if let Some(missed) = target.iter().find(|t| !image.contains(*t)) {
            report.counterexample = Some(format!("{missed} is not in the image"));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schroeder::triangle;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn worked_examples() {
        let (img, trace) = map_f(&p("35241")).unwrap();
        assert_eq!(img, p("34251"));
        assert_eq!(trace.stage_count(), 3);
        assert_eq!(trace.minima, vec![(1, 3), (3, 2), (5, 1)]);
        assert_eq!(map_f(&p("123")).unwrap().0, p("132"));
        assert_eq!(inverse_f(&p("132")).unwrap(), p("123"));
        assert_eq!(map_f(&p("132")).unwrap().0, p("123"));
        assert_eq!(inverse_f(&img).unwrap(), p("35241"));
    }

    #[test]
    fn starting_with_one_reverses_the_suffix() {
        for q in enumerate_avoiders_capped(6, &domain_pair(), 6).unwrap().filter(|q| q.first() == Some(1)) {
            let mut expect = q.letters().to_vec();
            expect[1..].reverse();
            assert_eq!(map_f(&q).unwrap().0.letters(), &expect[..]);
        }
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(map_f(&p("1342")), Err(Error::Domain { .. })));
        assert!(matches!(inverse_f(&p("1243")), Err(Error::Domain { .. })));
    }

    #[test]
    fn exhaustive_small() {
        for n in 1..=7 {
            let r = check_bijection(n, 11).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn fibres_match_the_triangle() {
        let tri = triangle(7);
        for n in 1..=7 {
            let mut by_first = vec![0u64; n];
            for q in enumerate_avoiders_capped(n, &domain_pair(), 11).unwrap() {
                let img = map_f(&q).unwrap().0;
                by_first[img.first().unwrap() as usize - 1] += 1;
            }
            assert_eq!(by_first, tri.row_u64(n), "n={n}");
        }
    }
}
