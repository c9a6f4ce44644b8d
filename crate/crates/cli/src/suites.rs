use std::time::Instant;

use permlab::bijection::check_bijection;
use permlab::perm::{
    active_site_census, first_letter_distribution_capped, first_second_distribution_capped, generating_tree_pairs,
    pair, PatternPair,
};
use permlab::recurrence::{
    gtree_table, gtree_vpolys, joint_recurrence_pairs, tables_1243_1342, th1_first_letter, th1_pairs, Variant1342,
};
use permlab::schroeder::{column_recurrence_check, inversion_seq_distribution_capped, triangle};
use permlab::series::{
    build_closed_form, first_letter_series, verify_cleared, verify_system, Binding, IdentityReport, PolyAux,
    SystemCase, XSeries,
};
use permlab::{Error, Result};
use rayon::prelude::*;

use crate::{aux_row, corollary_name, Check, Limits, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Conjecture,
    Recurrences,
    Bijection,
    Series,
    Systems,
    Inversion,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Conjecture => "conjecture",
            Suite::Recurrences => "recurrences",
            Suite::Bijection => "bijection",
            Suite::Series => "series",
            Suite::Systems => "systems",
            Suite::Inversion => "inversion",
        }
    }

    /// Size used when neither `--n` nor `--deg` is given.
    pub fn default_size(self, limits: Limits) -> usize {
        match self {
            Suite::Conjecture | Suite::Recurrences | Suite::Inversion => 9,
            Suite::Bijection => {
                if limits.big {
                    9
                } else {
                    8
                }
            }
            Suite::Series => 12,
            Suite::Systems => 8,
        }
    }

    /// Largest accepted size; enumeration-backed suites follow the cap.
    pub fn max_size(self, limits: Limits) -> usize {
        match self {
            Suite::Series => 16,
            Suite::Systems => {
                if limits.big {
                    14
                } else {
                    10
                }
            }
            _ => limits.cap,
        }
    }
}

pub fn cmd_verify(suite: Suite, size: Option<usize>, limits: Limits) -> Result<Report> {
    let started = Instant::now();
    let size = size.unwrap_or_else(|| suite.default_size(limits));
    if size > suite.max_size(limits) {
        return Err(Error::CapExceeded { n: size, cap: suite.max_size(limits) });
    }
    let checks = match suite {
        Suite::Conjecture => conjecture_checks(size, limits.cap)?,
        Suite::Recurrences => {
            let mut c = recurrence_checks(size, limits.cap)?;
            c.extend(identity_checks());
            c.extend(gtree_specialization_checks(size, 10, limits.cap)?);
            c
        }
        Suite::Bijection => bijection_checks(size, limits.cap)?,
        Suite::Series => series_checks(size, limits.cap.min(9))?,
        Suite::Systems => system_checks(size)?,
        Suite::Inversion => inversion_checks(size, limits.cap)?,
    };
    Ok(Report::new(suite.name(), checks, started))
}

/// The nine pairs whose first-letter distribution is the triangle.
pub fn conjecture_pairs() -> Vec<PatternPair> {
    [
        "1234,1243",
        "1243,1324",
        "1243,1342",
        "1243,1423",
        "1324,1342",
        "1324,1423",
        "1342,1423",
        "1342,1432",
        "1423,1432",
    ]
    .into_iter()
    .map(pair)
    .collect()
}

fn first_mismatch(label: &str, n: usize, got: &[u64], want: &[u64]) -> Result<(), String> {
    if got == want {
        return Ok(());
    }
    match got.iter().zip(want).position(|(a, b)| a != b) {
        Some(k) => Err(format!("{label} n={n} i={}: {} against {}", k + 1, got[k], want[k])),
        None => Err(format!("{label} n={n}: lengths {} and {}", got.len(), want.len())),
    }
}

/// Brute-force `|S_{n,i}(pair)|` against `S_{n,i}` for `1 <= i <= n <= n_max`.
pub fn conjecture_checks(n_max: usize, cap: usize) -> Result<Vec<Check>> {
    let tri = triangle(n_max.max(1));
    conjecture_pairs()
        .par_iter()
        .map(|p| {
            let mut verdict = Ok(());
            for n in 1..=n_max {
                let got = first_letter_distribution_capped(n, p, cap)?;
                verdict = first_mismatch("brute force", n, &got, &tri.row_u64(n));
                if verdict.is_err() {
                    break;
                }
            }
            Ok(Check::from_result(format!("{p} through n={n_max}"), verdict))
        })
        .collect()
}

/// One comparison at a given `n`: `Err` for resource errors, `Ok(Err)` for a
/// mismatch.
type Job = Box<dyn Fn(usize) -> Result<Result<(), String>> + Send + Sync>;

/// Every recurrence against the brute-force census for `n <= n_max`.
pub fn recurrence_checks(n_max: usize, cap: usize) -> Result<Vec<Check>> {
    let mut jobs: Vec<(String, Job)> = Vec::new();
    for p in th1_pairs() {
        jobs.push((
            format!("first-letter recurrence {p}"),
            Box::new(move |n| {
                let brute = first_letter_distribution_capped(n, &p, cap)?;
                Ok(first_mismatch("recurrence", n, &th1_first_letter(n, &p)?, &brute))
            }),
        ));
    }
    for p in generating_tree_pairs() {
        jobs.push((
            format!("generating tree {p}"),
            Box::new(move |n| {
                let census = active_site_census(n, &p, cap)?;
                let table = gtree_table(n, &p)?;
                Ok(if table.as_rows() == census.as_slice() {
                    Ok(())
                } else {
                    let (i, j) = (0..census.len())
                        .flat_map(|i| (0..census[i].len()).map(move |j| (i, j)))
                        .find(|&(i, j)| table.get(i, j) != census[i][j])
                        .unwrap_or((0, 0));
                    Err(format!("u_{n}({i},{j}) = {} against {}", table.get(i, j), census[i][j]))
                })
            }),
        ));
    }
    for jp in joint_recurrence_pairs() {
        let p = jp.pattern_pair();
        jobs.push((
            format!("first/second-letter recurrence {p}"),
            Box::new(move |n| {
                let brute = first_second_distribution_capped(n, &p, cap)?;
                let table = jp.tables(n).pop().unwrap();
                let bad = brute.cells().find(|&(i, j, v)| table.get(i, j) != v);
                Ok(match bad {
                    None => Ok(()),
                    Some((i, j, v)) => Err(format!("a_{n}({i},{j}) = {} against {v}", table.get(i, j))),
                })
            }),
        ));
    }
    jobs.par_iter()
        .map(|(name, job)| {
            let mut verdict = Ok(());
            for n in 1..=n_max {
                verdict = job(n)?;
                if verdict.is_err() {
                    break;
                }
            }
            Ok(Check::from_result(format!("{name} through n={n_max}"), verdict))
        })
        .collect()
}

/// Closed identities of the triangle and the first/second-letter tables.
pub fn identity_checks() -> Vec<Check> {
    let mut checks = Vec::new();
    let mut bad = None;
    'outer: for n in 3..=20 {
        for i in 1..=n - 2 {
            if !column_recurrence_check(n, i).unwrap_or(false) {
                bad = Some(format!("n={n} i={i}"));
                break 'outer;
            }
        }
    }
    checks.push(Check::from_result(
        "S(n,i) = 2 S(n-1,i) + sum_{l<i} S(n-1,l) for 1 <= i <= n-2 <= 18",
        bad.map_or(Ok(()), Err),
    ));

    let t = triangle(20);
    let flat = (3..=20).find(|&n| t.get(n, n) != t.get(n, n - 1) || t.get(n, n - 1) != t.get(n, n - 2));
    checks.push(Check::from_result(
        "S(n,n) = S(n,n-1) = S(n,n-2) for 3 <= n <= 20",
        flat.map_or(Ok(()), |n| Err(format!("n={n}"))),
    ));

    let tables = tables_1243_1342(10, Variant1342::Summary);
    let cell = (1..=10usize).find_map(|n| {
        (1..=n.saturating_sub(2)).find(|&i| tables[n].get(i, i + 1) != tables[n].get(i, i + 2)).map(|i| (n, i))
    });
    checks.push(Check::from_result(
        "(1243,1342): a_n(i,i+1) = a_n(i,i+2) for n <= 10",
        cell.map_or(Ok(()), |(n, i)| Err(format!("n={n} i={i}"))),
    ));
    checks
}

pub fn bijection_checks(n_max: usize, cap: usize) -> Result<Vec<Check>> {
    (1..=n_max)
        .map(|n| {
            let r = check_bijection(n, cap)?;
            let name = format!("f on S_{n}(1342,1432)");
            Ok(if r.passed() {
                Check::pass(name)
            } else {
                Check::fail(
                    name,
                    r.counterexample.unwrap_or_else(|| {
                        format!("domain {} image {} target {}", r.domain_size, r.image_size, r.target_size)
                    }),
                )
            })
        })
        .collect()
}

pub fn inversion_checks(n_max: usize, cap: usize) -> Result<Vec<Check>> {
    let tri = triangle(n_max.max(1));
    (1..=n_max)
        .map(|n| {
            let got = inversion_seq_distribution_capped(n, cap)?;
            Ok(Check::from_result(
                format!("I_{n}(021) by last entry equals triangle row {n}"),
                first_mismatch("inversion sequences", n, &got, &tri.row_u64(n)),
            ))
        })
        .collect()
}

pub fn system_checks(order: usize) -> Result<Vec<Check>> {
    let reports: Vec<_> = SystemCase::all().par_iter().map(|&c| verify_system(c, order)).collect::<Result<_>>()?;
    Ok(reports.iter().flat_map(|r| r.checks.iter().map(|c| Check::from_identity(&r.case, c))).collect())
}

/// `sum_n sum_k S_{n,k} y^k x^n`, or `sum_n S_{n,k} x^n` summed over `k`
/// when `flat`.
pub fn triangle_series(order: usize, flat: bool) -> XSeries {
    let t = triangle(order.max(1));
    let mut coeffs = vec![PolyAux::zero(); order + 1];
    for (n, c) in coeffs.iter_mut().enumerate().skip(1) {
        for (k, v) in t.row(n).iter().enumerate() {
            let v = i64::try_from(v).expect("triangle entry fits i64");
            *c += PolyAux::from_int(v).shift(if flat { 0 } else { k as u32 + 1 }, 0);
        }
    }
    XSeries::new(Binding::YQ, order, coeffs).expect("triangle series")
}

fn brute_rows(p: &PatternPair, n_max: usize, cap: usize) -> Result<Vec<Vec<u64>>> {
    (0..=n_max).map(|n| if n == 0 { Ok(Vec::new()) } else { first_letter_distribution_capped(n, p, cap) }).collect()
}

fn counting_shape(s: &XSeries) -> Result<(), String> {
    if let Some(m) = s.coeffs().iter().position(|c| !c.is_nonnegative_integral()) {
        return Err(format!("x^{m} has a coefficient that is not a count"));
    }
    for (m, c) in s.coeffs().iter().enumerate() {
        for (i, j, _) in c.terms() {
            let (i, j) = (i as usize, j as usize);
            if i < 1 || j < 1 || i > m || j > m || i == j {
                return Err(format!("x^{m} v^{i} w^{j} is not a (first, second) letter pair"));
            }
        }
    }
    Ok(())
}

fn compare(name: &str, lhs: &XSeries, rhs: &XSeries) -> Result<Check> {
    Ok(Check::from_identity("", &IdentityReport::compare(name, lhs, rhs)?))
}

/// Closed-form expansions against the triangle, brute force and the printed
/// low-order terms.
pub fn series_checks(order: usize, brute_order: usize) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let expand = |name: &str, d: usize| build_closed_form(name)?.expand(d);
    let one = PolyAux::one();
    let y = PolyAux::var_a();

    let tri_gf = expand("triangle_gf", order)?;
    checks.push(compare(
        &format!("triangle_gf equals the triangle through x^{order}"),
        &tri_gf,
        &triangle_series(order, false),
    )?);
    let sch = expand("schroeder_gf", order)?;
    checks.push(compare(
        &format!("schroeder_gf equals the row sums through x^{order}"),
        &sch,
        &triangle_series(order, true),
    )?);
    checks.push(compare("triangle_gf at y = 1 equals schroeder_gf", &tri_gf.substitute_aux(&one, &one)?, &sch)?);

    let a11 = expand("a_x11", order)?;
    let flat = triangle_series(order, true);
    let a11_gap = (2..=order).find(|&n| a11.coeff(n) != flat.coeff(n));
    checks.push(Check::from_result(
        "[x^n] A(x,1,1) equals the row sum for n >= 2",
        a11_gap.map_or(Ok(()), |n| Err(format!("x^{n}"))),
    ));

    for jp in joint_recurrence_pairs() {
        let p = jp.pattern_pair();
        let name = corollary_name(&p).unwrap();
        let rows = brute_rows(&p, brute_order, brute_order.max(1))?;
        let target = first_letter_series(&rows, brute_order);
        checks.push(Check::from_identity(
            "brute force",
            &verify_cleared(&target, &build_closed_form(&name)?, brute_order)?,
        ));

        // A+ + A- at w = 1, plus vx, is the corollary.
        let [a, b] = p.patterns();
        let tag = format!("{a}_{b}");
        let d = order.min(10);
        let ap = expand(&format!("aplus_{tag}"), d)?;
        let am = expand(&format!("aminus_{tag}"), d)?;
        let vx = XSeries::x(Binding::VW, d).mul_aux(&PolyAux::var_a())?;
        let joined = ap.add(&am)?.substitute_aux(&PolyAux::var_a(), &one)?.add(&vx)?;
        checks.push(compare(&format!("{tag}: vx + A(x,v,1) equals the corollary"), &joined, &expand(&name, d)?)?);
        let corollary = expand(&name, d)?;
        checks.push(Check::from_result(
            format!("{tag}: corollary coefficients are first-letter counts"),
            (1..=d).try_for_each(|n| aux_row(corollary.coeff(n), n).map(|_| ())),
        ));
        for (label, s) in [("A+", &ap), ("A-", &am)] {
            checks
                .push(Check::from_result(format!("{tag}: {label} is a first/second-letter series"), counting_shape(s)));
        }
    }

    let d = order.min(10);
    let aplus_w1 = expand("aplus_1243_1423", d)?.substitute_aux(&y, &one)?;
    checks.push(compare(
        "A+(x,v,1) for (1243,1423) equals its closed form",
        &aplus_w1,
        &expand("aplus1_1243_1423", d)?,
    )?);

    for name in permlab::series::closed_form_names() {
        let cf = build_closed_form(&name)?;
        if let Some(printed) = cf.printed_expansion() {
            let ours = cf.expand(printed.order())?;
            checks.push(compare(&format!("{name} printed terms through x^{}", printed.order()), &ours, &printed)?);
        }
        for (k, t) in cf.terms().iter().enumerate() {
            for r in &t.radicands {
                let rs = XSeries::from_xpoly(r, cf.binding(), order);
                let root = rs.sqrt()?;
                checks.push(compare(&format!("{name} term {k}: sqrt squared"), &root.mul(&root)?, &rs)?);
                let inv = rs.reciprocal()?;
                checks.push(compare(
                    &format!("{name} term {k}: reciprocal"),
                    &inv.mul(&rs)?,
                    &XSeries::one(cf.binding(), order),
                )?);
            }
        }
    }

    for p in crate::suites::conjecture_pairs() {
        let rows = brute_rows(&p, brute_order, brute_order.max(1))?;
        let lhs = first_letter_series(&rows, brute_order);
        let rhs = tri_gf.truncate(brute_order);
        let lhs = XSeries::new(Binding::YQ, brute_order, lhs.coeffs().to_vec())?;
        checks.push(compare(&format!("{p}: first-letter series equals triangle_gf"), &lhs, &rhs)?);
    }
    Ok(checks)
}

/// `v_n(y, 1)` against the brute-force first-letter distribution of both
/// generating-tree pairs for `n <= n_max`, and `f(x,y;1) = A(x,y)` through
/// `x^order`.
pub fn gtree_specialization_checks(n_max: usize, order: usize, cap: usize) -> Result<Vec<Check>> {
    let v = gtree_vpolys(n_max);
    let mut checks = Vec::new();
    for p in generating_tree_pairs() {
        let mut verdict = Ok(());
        for n in 1..=n_max {
            let brute = first_letter_distribution_capped(n, &p, cap)?;
            verdict = first_mismatch("v_n(y,1)", n, &v[n - 1].at_q_one(), &brute);
            if verdict.is_err() {
                break;
            }
        }
        checks.push(Check::from_result(
            format!("v_n(y,1) equals the first-letter census of {p} through n={n_max}"),
            verdict,
        ));
    }
    let f = build_closed_form("gtree_gf")?.expand(order)?;
    let f1 = f.substitute_aux(&PolyAux::var_a(), &PolyAux::one())?;
    checks.push(compare(
        &format!("f(x,y;1) equals A(x,y) through x^{order}"),
        &f1,
        &build_closed_form("triangle_gf")?.expand(order)?,
    )?);
    Ok(checks)
}
