//! Functional-equation systems, checked as denominator-cleared identities
//! between truncated series.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use serde::Serialize;

use super::forms::{build_closed_form, cofactor, lcm_factors, lcm_product, IdentityReport};
use super::poly::{parse_xpoly, PolyAux, XPoly};
use super::xseries::{Binding, XSeries};
use crate::error::{Error, Result};
use crate::perm::DistributionTable;
use crate::recurrence::{gtree_vpolys, tables_1243_1324, tables_1243_1342, tables_1243_1423, VPoly};
use crate::recurrence::{Variant1324, Variant1342};

/// `sum_n sum_{(i,j) kept} a_n(i,j) v^i w^j x^n` over tables indexed by `n`.
/// With `with_w = false` the second letter is not recorded.
pub fn joint_series(
    tables: &[DistributionTable],
    order: usize,
    keep: impl Fn(usize, usize, usize) -> bool,
    with_w: bool,
) -> XSeries {
    let mut coeffs = vec![PolyAux::zero(); order + 1];
    for (n, t) in tables.iter().enumerate().take(order + 1) {
        for (i, j, c) in t.cells() {
            if c > 0 && keep(n, i, j) {
                let e = if with_w { j as u32 } else { 0 };
                coeffs[n] += PolyAux::monomial(BigRational::from_integer(c.into()), i as u32, e);
            }
        }
    }
    XSeries::new(Binding::VW, order, coeffs).expect("table series within guard")
}

/// `sum_n sum_i rows[n][i-1] v^i x^n`, with `rows` indexed by `n`.
pub fn first_letter_series(rows: &[Vec<u64>], order: usize) -> XSeries {
    let mut coeffs = vec![PolyAux::zero(); order + 1];
    for (n, row) in rows.iter().enumerate().take(order + 1) {
        for (k, &c) in row.iter().enumerate() {
            coeffs[n] += PolyAux::monomial(BigRational::from_integer(c.into()), k as u32 + 1, 0);
        }
    }
    XSeries::new(Binding::VW, order, coeffs).expect("first-letter series within guard")
}

/// `sum_n v_n(y, q) x^n`.
pub fn vpoly_series(vpolys: &[VPoly], order: usize) -> XSeries {
    let mut coeffs = vec![PolyAux::zero(); order + 1];
    for v in vpolys.iter().filter(|v| v.n <= order) {
        coeffs[v.n] = v.poly.clone();
    }
    XSeries::new(Binding::YQ, order, coeffs).expect("generating-tree series within guard")
}

/// `sum_k num_k / prod(den_k) * series_k = 0`, checked after multiplying
/// through by the least common multiple of the denominators.
pub struct Equation {
    name: String,
    binding: Binding,
    order: usize,
    terms: Vec<(XPoly, Vec<XPoly>, Option<XSeries>)>,
}

impl Equation {
    pub fn new(name: impl Into<String>, binding: Binding, order: usize) -> Equation {
        Equation { name: name.into(), binding, order, terms: Vec::new() }
    }

    fn parse(&self, s: &str) -> Result<XPoly> {
        let (a, b) = self.binding.names();
        parse_xpoly(s, a, b)
    }

    /// Adds `num / prod(dens) * series` (or just the rational function when
    /// `series` is `None`).
    pub fn term(mut self, num: &str, dens: &[&str], series: Option<&XSeries>) -> Result<Equation> {
        let num = self.parse(num)?;
        let dens = dens.iter().map(|d| self.parse(d)).collect::<Result<Vec<_>>>()?;
        self.terms.push((num, dens, series.cloned()));
        Ok(self)
    }

    pub fn term_poly(mut self, num: XPoly, dens: Vec<XPoly>, series: Option<&XSeries>) -> Equation {
        self.terms.push((num, dens, series.cloned()));
        self
    }

    /// The common denominator the equation is multiplied through by.
    pub fn cleared_den(&self) -> XPoly {
        let refs: Vec<&[XPoly]> = self.terms.iter().map(|(_, d, _)| d.as_slice()).collect();
        lcm_product(&lcm_factors(&refs))
    }

    pub fn residual(&self) -> Result<XSeries> {
        let refs: Vec<&[XPoly]> = self.terms.iter().map(|(_, d, _)| d.as_slice()).collect();
        let lcm = lcm_factors(&refs);
        let mut acc = XSeries::zero(self.binding, self.order);
        for (num, dens, series) in &self.terms {
            let mult = num * &cofactor(&lcm, dens);
            let part = match series {
                Some(s) => s.truncate(self.order).mul_poly(&mult)?,
                None => XSeries::from_xpoly(&mult, self.binding, self.order),
            };
            acc = acc.add(&part)?;
        }
        Ok(acc)
    }

    pub fn check(&self) -> Result<IdentityReport> {
        Ok(IdentityReport::from_residual(self.name.clone(), &self.residual()?))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SystemCase {
    GTree,
    P1243_1423,
    P1243_1342,
    P1243_1324,
}

impl SystemCase {
    pub fn all() -> [SystemCase; 4] {
        [SystemCase::GTree, SystemCase::P1243_1423, SystemCase::P1243_1342, SystemCase::P1243_1324]
    }

    pub fn label(self) -> &'static str {
        match self {
            SystemCase::GTree => "gtree",
            SystemCase::P1243_1423 => "1243_1423",
            SystemCase::P1243_1342 => "1243_1342",
            SystemCase::P1243_1324 => "1243_1324",
        }
    }
}

impl fmt::Display for SystemCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for SystemCase {
    type Err = Error;
    fn from_str(s: &str) -> Result<SystemCase> {
        SystemCase::all().into_iter().find(|c| c.label() == s).ok_or_else(|| Error::UnknownCase(s.to_string()))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SystemReport {
    pub case: String,
    pub order: usize,
    pub checks: Vec<IdentityReport>,
}

impl SystemReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(IdentityReport::passed)
    }
}

/// Series helpers for one binding and truncation order.
struct Ctx {
    binding: Binding,
    order: usize,
}

impl Ctx {
    fn s(&self, p: &str) -> Result<XSeries> {
        let (a, b) = self.binding.names();
        Ok(XSeries::from_xpoly(&parse_xpoly(p, a, b)?, self.binding, self.order))
    }

    fn ratio(&self, num: &str, den: &str) -> Result<XSeries> {
        self.s(num)?.mul(&self.s(den)?.reciprocal()?)
    }

    fn form(&self, name: &str) -> Result<XSeries> {
        build_closed_form(name)?.expand(self.order)
    }

    fn aux(&self, p: &str) -> Result<PolyAux> {
        let (a, b) = self.binding.names();
        super::poly::parse_aux(p, a, b)
    }

    fn eq(&self, name: &str) -> Equation {
        Equation::new(name, self.binding, self.order)
    }
}

/// Checks every equation of one system through `x^order`.
pub fn verify_system(case: SystemCase, order: usize) -> Result<SystemReport> {
    let checks = match case {
        SystemCase::GTree => gtree_checks(order)?,
        SystemCase::P1243_1423 => checks_1423(order)?,
        SystemCase::P1243_1342 => checks_1342(order)?,
        SystemCase::P1243_1324 => checks_1324(order)?,
    };
    Ok(SystemReport { case: case.label().to_string(), order, checks })
}

fn gtree_checks(order: usize) -> Result<Vec<IdentityReport>> {
    let cx = Ctx { binding: Binding::YQ, order };
    let f = cx.form("gtree_gf")?;
    let f1 = f.substitute_aux(&PolyAux::var_a(), &PolyAux::one())?;
    let tree = vpoly_series(&gtree_vpolys(order), order);
    let tri = cx.form("triangle_gf")?;
    let kernel = cx
        .eq("kernel equation for f(x,y;q)")
        .term("1", &[], Some(&f))?
        .term("-x*y*q*(1 - 2*q)", &["1 - q"], Some(&f))?
        .term("-x*y", &[], None)?
        .term("-x^2*y*q*(1 - y)", &["1 - 2*x*q", "1 - x*y*q"], None)?
        .term("-x*y*q", &["1 - q"], Some(&f1))?;
    Ok(vec![
        kernel.check()?,
        IdentityReport::compare("closed form equals sum of v_n(y,q) x^n", &f, &tree)?,
        IdentityReport::compare("f(x,y;1) equals the triangle series", &f1, &tri)?,
    ])
}

/// Substitutions shared by the three 1243 systems, all in `(v, w)`.
struct Kernel {
    one: XSeries,
    x: XSeries,
    uvx: XSeries,
    one_minus_ux: XSeries,
    u_over: XSeries,
}

impl Kernel {
    fn new(cx: &Ctx, u: &str) -> Result<Kernel> {
        Ok(Kernel {
            one: cx.s("1")?,
            x: cx.s("x")?,
            uvx: cx.ratio(&format!("{u}*x"), &format!("1 - {u}*x"))?,
            one_minus_ux: cx.s(&format!("1 - {u}*x"))?,
            u_over: cx.ratio(u, &format!("1 - {u}*x"))?,
        })
    }

    /// `s(ux/(1-ux), 1-ux, 1)`.
    fn first(&self, s: &XSeries) -> Result<XSeries> {
        s.substitute(&self.uvx, &self.one_minus_ux, &self.one)
    }

    /// `s(x, 1-ux, u/(1-ux))`.
    fn second(&self, s: &XSeries) -> Result<XSeries> {
        s.substitute(&self.x, &self.one_minus_ux, &self.u_over)
    }
}

fn checks_1423(order: usize) -> Result<Vec<IdentityReport>> {
    let cx = Ctx { binding: Binding::VW, order };
    let tables = tables_1243_1423(order);
    let ap = cx.form("aplus_1243_1423")?;
    let am = cx.form("aminus_1243_1423")?;
    let a = ap.add(&am)?;
    let a11 = cx.form("a_x11")?;
    let c = joint_series(&tables, order, |_, i, j| j == i + 1, false);
    let d = joint_series(&tables, order, |n, i, j| j == i + 2 && i + 2 <= n, false);
    let b = joint_series(&tables, order, |_, i, j| j >= i + 3, true);

    let vw = cx.aux("v*w")?;
    let one = PolyAux::one();
    let cvw = c.substitute_aux(&vw, &one)?;
    let dvw = d.substitute_aux(&vw, &one)?;
    let a_vwx11 = a11.substitute(&cx.s("v*w*x")?, &cx.s("1")?, &cx.s("1")?)?;
    let ax_vw1 = a.substitute_aux(&vw, &one)?;
    let avx_w1 = a.substitute(&cx.s("v*x")?, &cx.s("w")?, &cx.s("1")?)?;
    let k = Kernel::new(&cx, "v*w")?;
    let k1 = k.first(&ap)?;
    let k2 = k.second(&ap)?;
    let kb = k.second(&b)?;

    let mut out = vec![
        IdentityReport::compare(
            "A+ closed form equals the table series",
            &ap,
            &joint_series(&tables, order, |_, i, j| i < j, true),
        )?,
        IdentityReport::compare(
            "A- closed form equals the table series",
            &am,
            &joint_series(&tables, order, |_, i, j| i > j, true),
        )?,
        IdentityReport::compare(
            "A(x,1,1) closed form equals A+ + A- at v = w = 1",
            &a11,
            &a.substitute_aux(&one, &one)?,
        )?,
        IdentityReport::compare(
            "A+(x,v,1) closed form",
            &ap.substitute_aux(&PolyAux::var_a(), &one)?,
            &cx.form("aplus1_1243_1423")?,
        )?,
        IdentityReport::compare(
            "A+(x,1-wx,w/(1-wx)) closed form",
            &k2,
            &cx.form("aplus_kernel_1243_1423")?.substitute_aux(&PolyAux::var_a(), &vw)?,
        )?,
    ];

    let e1 = cx
        .eq("A+ = wC(x,vw) + w^2 D(x,vw) + B")
        .term("1", &[], Some(&ap))?
        .term("-w", &[], Some(&cvw))?
        .term("-w^2", &[], Some(&dvw))?
        .term("-1", &[], Some(&b))?;
    let e2 = cx
        .eq("A- equation")
        .term("1", &[], Some(&am))?
        .term("-v^2*w*x^2", &[], None)?
        .term("-v*x", &["1 - v"], Some(&ax_vw1))?
        .term("v^2*x", &["1 - v"], Some(&avx_w1))?;
    let e3 = cx
        .eq("C equation")
        .term("1", &[], Some(&cvw))?
        .term("-v*w*x^2", &[], Some(&a_vwx11))?
        .term("-v*w*x^2 - v^2*w^2*x^3", &[], None)?
        .term("-x", &[], Some(&cvw))?
        .term("-v*w*x^2", &["v*w*x + v*w - 1"], Some(&k1))?
        .term("(1 - v*w*x)*x^2", &["v*w*x + v*w - 1"], Some(&k2))?;
    let e4_rest = |eq: Equation| -> Result<Equation> {
        eq.term("-x^2", &[], Some(&a_vwx11))?
            .term("v^2*w^2*x^4", &[], None)?
            .term("-x", &[], Some(&cvw))?
            .term("v*w*x^3", &[], Some(&a_vwx11))?
            .term("-x^2*(1 - v*w*x)", &["v*w*x + v*w - 1"], Some(&k1))?
            .term("x^2*(1 - v*w*x)^2", &["v*w", "v*w*x + v*w - 1"], Some(&k2))?
            .term("x^2", &[], Some(&cvw))
    };
    let e4 = e4_rest(cx.eq("D equation").term("1 - x", &[], Some(&dvw))?)?;
    let e5 = cx
        .eq("B equation")
        .term("1 - w*x - x", &[], Some(&b))?
        .term("-w^3*x", &[], Some(&dvw))?
        .term("-w^2*x^2*(1 - v*w*x)", &["v*w*x + v - 1"], Some(&k2))?
        .term("v*w^2*x^2", &["v*w*x + v - 1"], Some(&ap))?
        .term("-w*x^2*(1 - v*w*x)^2", &["v", "v*w*x + v - 1"], Some(&kb))?
        .term("v*w*x^2", &["v*w*x + v - 1"], Some(&b))?;
    let s2 = cx
        .eq("A+ equation after eliminating B, C, D")
        .term("v*x - w*x - v - x + 1", &["v*w*x + v - 1"], Some(&ap))?
        .term("-w^2*x^2*(v*w*x - v - 1)", &["v*w*x + v*w - 1"], Some(&k1))?
        .term("-v*w*x^2*(w^2 - 1)*(v*w*x - 1)", &["v*w*x + v - 1", "v*w*x + v*w - 1"], Some(&k2))?
        .term("-w^2*x^2*(v*w*x - v - 1)", &[], Some(&a_vwx11))?
        .term("-x^2*v*w^2*(v*w^2*x^2 - v*w*x - 1)", &[], None)?;

    // The same equation written for A+(x,v,w/v); its coefficients
    // are mapped back by w -> v*w before clearing.
    let back = |s: &str| -> Result<XPoly> { Ok(parse_xpoly(s, "v", "w")?.compose_aux(&PolyAux::var_a(), &vw)) };
    let s2a = cx
        .eq("A+ equation with w replaced by w/v")
        .term_poly(back("v^2*x - w*x - v^2 - v*x + v")?, vec![back("v")?, back("w*x + v - 1")?], Some(&ap))
        .term_poly(back("-w^2*x^2*(w*x - v - 1)")?, vec![back("v^2")?, back("w*x + w - 1")?], Some(&k1))
        .term_poly(
            back("-w*x^2*(w^2 - v^2)*(w*x - 1)")?,
            vec![back("v^2")?, back("w*x + v - 1")?, back("w*x + w - 1")?],
            Some(&k2),
        )
        .term_poly(back("-w^2*x^2*(w*x - v - 1)")?, vec![back("v^2")?], Some(&a_vwx11))
        .term_poly(back("-x^2*w^2*(w^2*x^2 - v*w*x - v)")?, vec![back("v^2")?], None);

    for e in [e1, e2, e3, e4, e5, s2, s2a] {
        out.push(e.check()?);
    }

    // D solved from its own equation, against the table diagonal.
    let rest = e4_rest(cx.eq("D solved"))?;
    let den = &parse_xpoly("1 - x", "v", "w")? * &rest.cleared_den();
    let solved = rest.residual()?.neg().div_exact(&XSeries::from_xpoly(&den, Binding::VW, order))?;
    out.push(IdentityReport::compare("D from its equation equals the table diagonal", &solved, &dvw)?);
    Ok(out)
}

fn checks_1342(order: usize) -> Result<Vec<IdentityReport>> {
    let cx = Ctx { binding: Binding::VW, order };
    let tables = tables_1243_1342(order, Variant1342::Summary);
    let ap = cx.form("aplus_1243_1342")?;
    let am = cx.form("aminus_1243_1342")?;
    let b = cx.form("b_1243_1342")?;
    let c = cx.form("c_1243_1342")?;
    let a = ap.add(&am)?;

    let vw = cx.aux("v*w")?;
    let one = PolyAux::one();
    let cvw = c.substitute_aux(&vw, &one)?;
    let a_vwx11 = a.substitute(&cx.s("v*w*x")?, &k_one(&cx)?, &k_one(&cx)?)?;
    let awx_v1 = a.substitute(&cx.s("w*x")?, &cx.s("v")?, &k_one(&cx)?)?;
    let ax_vw1 = a.substitute_aux(&vw, &one)?;
    let avx_w1 = a.substitute(&cx.s("v*x")?, &cx.s("w")?, &k_one(&cx)?)?;
    let ap_1v = ap.substitute_aux(&one, &PolyAux::var_a())?;
    let bwx_v1 = b.substitute(&cx.s("w*x")?, &cx.s("v")?, &k_one(&cx)?)?;
    let cwx_v = c.substitute(&cx.s("w*x")?, &cx.s("v")?, &k_one(&cx)?)?;
    let k = Kernel::new(&cx, "v*w")?;
    let bk1 = k.first(&b)?;
    let bk2 = k.second(&b)?;
    let ck1 = k.first(&c)?;

    let mut out = table_checks(
        &tables,
        order,
        [&ap, &am, &b, &c],
        |n, i, j| j >= i + 3 && j < n,
        |n, i, j| j == i + 1 && i + 2 <= n,
    );
    out.push(IdentityReport::compare(
        "A(x,1,1) equals the Schröder series",
        &a.substitute_aux(&one, &one)?,
        &cx.form("a_x11")?,
    )?);

    let l1 = ["1 - v - v*w*x", "1 - w"];
    let l2 = ["1 - v*w - v*w*x", "1 - w"];
    let l3 = ["1 - v - v*w*x", "1 - v*w - v*w*x"];
    let eqs = [
        a_minus_equation(&cx, &am, &ax_vw1, &avx_w1)?,
        cx.eq("A+ equation")
            .term("1", &[], Some(&ap))?
            .term("-v*w^2*x^2 + v*w^3*x^3", &[], None)?
            .term("-1", &[], Some(&b))?
            .term("-w^2 - w", &[], Some(&cvw))?
            .term("w^2*x^2", &[], Some(&a_vwx11))?
            .term("-w*x", &[], Some(&awx_v1))?,
        cx.eq("C equation").term("1", &[], Some(&c))?.term("-x", &["v"], Some(&ap_1v))?,
        cx.eq("B equation")
            .term("1", &[], Some(&b))?
            .term("-w*x*(1 - v)", &l1, Some(&b))?
            .term("w*x*(1 - v)", &l1, Some(&bwx_v1))?
            .term("-2*(1 - v*w)*w^3*x", &l2, Some(&cvw))?
            .term("2*w*x*(1 - v)", &l1, Some(&cwx_v))?
            .term("-x^2*w^2*(1 - v*w*x)^2", &l3, Some(&bk1))?
            .term("x^2*w^2*(1 - v*w*x)^2", &l3, Some(&bk2))?
            .term("-2*x^2*w^2*(1 - v*w*x)^2", &l3, Some(&ck1))?,
    ];
    for e in eqs {
        out.push(e.check()?);
    }
    Ok(out)
}

fn checks_1324(order: usize) -> Result<Vec<IdentityReport>> {
    let cx = Ctx { binding: Binding::VW, order };
    let tables = tables_1243_1324(order, Variant1324::Direct);
    let ap = cx.form("aplus_1243_1324")?;
    let am = cx.form("aminus_1243_1324")?;
    let b = cx.form("b_1243_1324")?;
    let c = cx.form("c_1243_1324")?;
    let a = ap.add(&am)?;

    let vw = cx.aux("v*w")?;
    let one = PolyAux::one();
    let cvw = c.substitute_aux(&vw, &one)?;
    let a_vwx11 = a.substitute(&cx.s("v*w*x")?, &k_one(&cx)?, &k_one(&cx)?)?;
    let awx_v1 = a.substitute(&cx.s("w*x")?, &cx.s("v")?, &k_one(&cx)?)?;
    let ax_vw1 = a.substitute_aux(&vw, &one)?;
    let avx_w1 = a.substitute(&cx.s("v*x")?, &cx.s("w")?, &k_one(&cx)?)?;
    let avx11 = a.substitute(&cx.s("v*x")?, &k_one(&cx)?, &k_one(&cx)?)?;
    let b1vw = b.substitute_aux(&one, &vw)?;
    let k = Kernel::new(&cx, "v")?;
    let k1 = k.first(&ap)?;
    let k2 = k.second(&ap)?;

    let mut out = table_checks(
        &tables,
        order,
        [&ap, &am, &b, &c],
        |n, i, j| j >= i + 2 && j < n,
        |n, i, j| j == i + 1 && i + 2 <= n,
    );
    out.push(IdentityReport::compare(
        "A(x,1,1) equals the Schröder series",
        &a.substitute_aux(&one, &one)?,
        &cx.form("a_x11")?,
    )?);

    let eqs = [
        a_minus_equation(&cx, &am, &ax_vw1, &avx_w1)?,
        cx.eq("A+ equation")
            .term("1", &[], Some(&ap))?
            .term("-v*w^2*x^2", &[], None)?
            .term("-1", &[], Some(&b))?
            .term("-w", &[], Some(&cvw))?
            .term("-w*x", &[], Some(&awx_v1))?,
        cx.eq("B equation")
            .term("1 - x", &[], Some(&b))?
            .term("-w*x*v", &["1 - v"], Some(&b))?
            .term("w*x", &["1 - v"], Some(&b1vw))?
            .term("-w*x^2", &[], Some(&awx_v1))?
            .term("v*w^2*x^3", &[], Some(&a_vwx11))?
            .term("v^2*w^3*x^4", &[], None)?,
        cx.eq("C equation")
            .term("1", &[], Some(&c))?
            .term("-v*x^3*(1 + v*x)", &["1 - x"], None)?
            .term("-v*x^3", &["1 - x"], Some(&avx11))?
            .term("-x^2*v", &["v*x + v - 1", "1 - x"], Some(&k1))?
            .term("x^2*(1 - v*x)", &["v*x + v - 1", "1 - x"], Some(&k2))?,
    ];
    for e in eqs {
        out.push(e.check()?);
    }
    Ok(out)
}

fn k_one(cx: &Ctx) -> Result<XSeries> {
    cx.s("1")
}

fn a_minus_equation(cx: &Ctx, am: &XSeries, ax_vw1: &XSeries, avx_w1: &XSeries) -> Result<Equation> {
    cx.eq("A- equation")
        .term("1", &[], Some(am))?
        .term("-v^2*w*x^2", &[], None)?
        .term("-v*x", &["1 - v"], Some(ax_vw1))?
        .term("v^2*x", &["1 - v"], Some(avx_w1))
}

/// Closed forms `[A+, A-, B, C]` against the corresponding table series.
fn table_checks(
    tables: &[DistributionTable],
    order: usize,
    forms: [&XSeries; 4],
    in_b: impl Fn(usize, usize, usize) -> bool,
    in_c: impl Fn(usize, usize, usize) -> bool,
) -> Vec<IdentityReport> {
    let targets = [
        ("A+", joint_series(tables, order, |_, i, j| i < j, true)),
        ("A-", joint_series(tables, order, |_, i, j| i > j, true)),
        ("B", joint_series(tables, order, in_b, true)),
        ("C", joint_series(tables, order, in_c, false)),
    ];
    targets
        .iter()
        .zip(forms)
        .map(|((label, t), f)| {
            IdentityReport::compare(format!("{label} closed form equals the table series"), f, t).expect("same binding")
        })
        .collect()
}
