use std::sync::OnceLock;

use permlab::bijection::{domain_pair, inverse_f, map_f, target_occurrence_at, target_pair};
use permlab::perm::{enumerate_avoiders, left_right_minima, Pattern, PatternPair, Permutation};
use permlab::series::{Binding, PolyAux, XSeries};
use proptest::prelude::*;

fn permutation(max_len: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_len)
        .prop_flat_map(|n| Just((1..=n as u8).collect::<Vec<u8>>()).prop_shuffle())
        .prop_map(|v| Permutation::new(v).unwrap())
}

fn pattern() -> impl Strategy<Value = Pattern> {
    Just(vec![1u8, 2, 3, 4]).prop_shuffle().prop_map(|v| Pattern::new(Permutation::new(v).unwrap()).unwrap())
}

/// Containment straight from the definition: some increasing index tuple
/// is order-isomorphic to the pattern.
fn contains_naive(p: &Permutation, pat: &Pattern) -> bool {
    let (l, k) = (p.letters(), pat.letters());
    let n = l.len();
    if k.len() > n {
        return false;
    }
    (0u32..1 << n).filter(|m| m.count_ones() as usize == k.len()).any(|m| {
        let sub: Vec<u8> = (0..n).filter(|&i| m >> i & 1 == 1).map(|i| l[i]).collect();
        (0..k.len()).all(|a| (0..k.len()).all(|b| (sub[a] < sub[b]) == (k[a] < k[b])))
    })
}

fn domain_members() -> &'static [Permutation] {
    static CELL: OnceLock<Vec<Permutation>> = OnceLock::new();
    CELL.get_or_init(|| enumerate_avoiders(10, &domain_pair()).unwrap().collect())
}

/// Total degree at most 2, which keeps powers within the degree guard.
fn small_aux() -> impl Strategy<Value = PolyAux> {
    prop::collection::vec((-3i64..=3, 0u32..=1, 0u32..=1), 0..4).prop_map(|terms| {
        let mut p = PolyAux::zero();
        for (c, a, b) in terms {
            p += PolyAux::from_int(c).shift(a, b);
        }
        p
    })
}

/// A series in `x` with constant term 1 and small coefficients.
fn unit_series(order: usize) -> impl Strategy<Value = XSeries> {
    prop::collection::vec(small_aux(), order).prop_map(move |tail| {
        let mut coeffs = vec![PolyAux::one()];
        coeffs.extend(tail);
        XSeries::new(Binding::VW, order, coeffs).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn containment_matches_definition(p in permutation(9), pat in pattern()) {
        prop_assert_eq!(p.contains(&pat), contains_naive(&p, &pat));
    }

    #[test]
    fn avoidance_respects_symmetries(p in permutation(9), a in pattern(), b in pattern()) {
        prop_assume!(a != b);
        let pr = PatternPair::new(a, b).unwrap();
        prop_assert_eq!(p.avoids(&pr), p.reverse().avoids(&pr.reversed()));
        prop_assert_eq!(p.avoids(&pr), p.complement().avoids(&pr.complemented()));
    }

    #[test]
    fn bijection_round_trips(k in any::<prop::sample::Index>()) {
        let all = domain_members();
        let p = &all[k.index(all.len())];
        let (img, trace) = map_f(p).unwrap();
        prop_assert!(img.avoids(&target_pair()));
        prop_assert_eq!(left_right_minima(&img), left_right_minima(p));
        prop_assert_eq!(trace.stage_count(), trace.minima.len());
        prop_assert_eq!(&inverse_f(&img).unwrap(), p);
        for (t, stage) in trace.stages.iter().enumerate().skip(1) {
            for &(pos, _) in &trace.minima[trace.minima.len() - t..] {
                prop_assert!(!target_occurrence_at(stage, pos - 1), "stage {} of {}", t, p);
            }
        }
    }

    #[test]
    fn reciprocal_and_sqrt(s in unit_series(5)) {
        let one = XSeries::one(Binding::VW, 5);
        prop_assert_eq!(s.mul(&s.reciprocal().unwrap()).unwrap(), one);
        let r = s.sqrt().unwrap();
        prop_assert_eq!(r.mul(&r).unwrap(), s.clone());
        prop_assert_eq!(s.mul(&s).unwrap().sqrt().unwrap(), s);
    }

    #[test]
    fn substitution_is_a_ring_map(f in unit_series(4), g in unit_series(4), c in small_aux()) {
        // x -> c x, with the auxiliaries fixed.
        let sx = XSeries::x(Binding::VW, 4).mul_aux(&c).unwrap();
        let sa = XSeries::from_xpoly(&permlab::series::parse_xpoly("v", "v", "w").unwrap(), Binding::VW, 4);
        let sb = XSeries::from_xpoly(&permlab::series::parse_xpoly("w", "v", "w").unwrap(), Binding::VW, 4);
        let sub = |s: &XSeries| s.substitute(&sx, &sa, &sb).unwrap();
        prop_assert_eq!(sub(&f.mul(&g).unwrap()), sub(&f).mul(&sub(&g)).unwrap());
        prop_assert_eq!(sub(&f.add(&g).unwrap()), sub(&f).add(&sub(&g)).unwrap());
    }
}
