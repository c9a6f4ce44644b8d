//! Closed forms `(P + sum_k Q_k sqrt(R_k)) / Dn` loaded from the bundled
//! data file, with expansion and denominator-cleared identity checks.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::poly::{parse_xpoly, XPoly};
use super::xseries::{Binding, XSeries, DEFAULT_GUARD};
use crate::error::{Error, Result};

const FORM_DATA: &str = include_str!("../../data/closed_forms.toml");

#[derive(Deserialize)]
struct FormFile {
    form: Vec<FormSpec>,
}

#[derive(Deserialize)]
struct FormSpec {
    name: String,
    binding: String,
    about: String,
    term: Vec<TermSpec>,
    #[serde(default)]
    expansion: Vec<ExpansionSpec>,
}

#[derive(Deserialize)]
struct TermSpec {
    den: Vec<String>,
    numerator: String,
    #[serde(default)]
    sqrt: Vec<String>,
}

#[derive(Deserialize)]
struct ExpansionSpec {
    order: usize,
    series: String,
}

/// One summand `numerator * prod sqrt(radicand)` over the common denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormTerm {
    pub numerator: XPoly,
    pub radicands: Vec<XPoly>,
}

#[derive(Clone, Debug)]
pub struct ClearedForm {
    name: String,
    about: String,
    binding: Binding,
    den: XPoly,
    terms: Vec<FormTerm>,
    printed: Option<(usize, XPoly)>,
}

/// Distinct factors up to sign with the largest multiplicity seen in any
/// list, i.e. a least common multiple of the products.
pub(crate) fn lcm_factors(lists: &[&[XPoly]]) -> Vec<(XPoly, usize)> {
    let mut lcm: Vec<(XPoly, usize)> = Vec::new();
    for list in lists {
        let mut local: Vec<(usize, usize)> = Vec::new();
        for f in list.iter() {
            let neg = -f;
            let k = match lcm.iter().position(|(g, _)| g == f || *g == neg) {
                Some(k) => k,
                None => {
                    lcm.push((f.clone(), 0));
                    lcm.len() - 1
                }
            };
            match local.iter_mut().find(|(idx, _)| *idx == k) {
                Some(e) => e.1 += 1,
                None => local.push((k, 1)),
            }
        }
        for (k, m) in local {
            lcm[k].1 = lcm[k].1.max(m);
        }
    }
    lcm
}

/// `lcm / prod(list)` as a polynomial, including the sign picked up when a
/// factor appears negated.
pub(crate) fn cofactor(lcm: &[(XPoly, usize)], list: &[XPoly]) -> XPoly {
    let mut used = vec![0usize; lcm.len()];
    let mut sign_negative = false;
    for f in list {
        let k = lcm.iter().position(|(g, _)| g == f || *g == -f).expect("factor missing from lcm");
        if lcm[k].0 != *f {
            sign_negative = !sign_negative;
        }
        used[k] += 1;
    }
    let mut out = XPoly::one();
    for ((g, m), u) in lcm.iter().zip(used) {
        out = &out * &g.pow((m - u) as u32);
    }
    if sign_negative {
        -&out
    } else {
        out
    }
}

pub(crate) fn lcm_product(lcm: &[(XPoly, usize)]) -> XPoly {
    lcm.iter().fold(XPoly::one(), |acc, (g, m)| &acc * &g.pow(*m as u32))
}

impl ClearedForm {
    fn from_spec(spec: &FormSpec) -> Result<ClearedForm> {
        let binding = Binding::parse(&spec.binding)?;
        let (na, nb) = binding.names();
        let parse = |s: &str| parse_xpoly(s, na, nb);
        let mut dens: Vec<Vec<XPoly>> = Vec::new();
        for t in &spec.term {
            dens.push(t.den.iter().map(|d| parse(d)).collect::<Result<_>>()?);
        }
        let refs: Vec<&[XPoly]> = dens.iter().map(Vec::as_slice).collect();
        let lcm = lcm_factors(&refs);
        let mut terms = Vec::new();
        for (t, d) in spec.term.iter().zip(&dens) {
            let numerator = &parse(&t.numerator)? * &cofactor(&lcm, d);
            let radicands: Vec<XPoly> = t.sqrt.iter().map(|r| parse(r)).collect::<Result<_>>()?;
            for r in &radicands {
                if !r.coeff(0).is_one() {
                    return Err(Error::FormData(format!("{}: radicand {r:?} does not start with 1", spec.name)));
                }
            }
            terms.push(FormTerm { numerator, radicands });
        }
        let printed = match spec.expansion.as_slice() {
            [] => None,
            [e] => Some((e.order, parse(&e.series)?)),
            _ => return Err(Error::FormData(format!("{}: more than one printed expansion", spec.name))),
        };
        Ok(ClearedForm {
            name: spec.name.clone(),
            about: spec.about.clone(),
            binding,
            den: lcm_product(&lcm),
            terms,
            printed,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn about(&self) -> &str {
        &self.about
    }

    pub fn binding(&self) -> Binding {
        self.binding
    }

    /// The cleared denominator `Dn`.
    pub fn den(&self) -> &XPoly {
        &self.den
    }

    pub fn terms(&self) -> &[FormTerm] {
        &self.terms
    }

    /// The radical-free part `P` of the numerator.
    pub fn poly_part(&self) -> XPoly {
        self.terms.iter().filter(|t| t.radicands.is_empty()).fold(XPoly::zero(), |acc, t| &acc + &t.numerator)
    }

    /// `P + sum_k Q_k sqrt(R_k)` as a series.
    pub fn numerator_series(&self, order: usize) -> Result<XSeries> {
        let mut roots: HashMap<&XPoly, XSeries> = HashMap::new();
        let mut acc = XSeries::zero(self.binding, order);
        for t in &self.terms {
            let mut s = XSeries::from_xpoly(&t.numerator, self.binding, order);
            for r in &t.radicands {
                if !roots.contains_key(r) {
                    roots.insert(r, XSeries::from_xpoly(r, self.binding, order).sqrt()?);
                }
                s = s.mul(&roots[r])?;
            }
            acc = acc.add(&s)?;
        }
        Ok(acc)
    }

    /// The form as a series through `x^order`. Each coefficient is divided
    /// exactly by the `x^0` part of `Dn`, which need not be a unit.
    pub fn expand(&self, order: usize) -> Result<XSeries> {
        let num = self.numerator_series(order)?;
        let den = XSeries::from_xpoly(&self.den, self.binding, order);
        num.div_exact(&den)?.with_guard(DEFAULT_GUARD)
    }

    /// Low-order terms printed alongside the formula, if any.
    pub fn printed_expansion(&self) -> Option<XSeries> {
        self.printed.as_ref().map(|(order, p)| XSeries::from_xpoly(p, self.binding, *order))
    }
}

fn forms() -> &'static Result<Vec<ClearedForm>> {
    static FORMS: OnceLock<Result<Vec<ClearedForm>>> = OnceLock::new();
    FORMS.get_or_init(|| {
        let file: FormFile = toml::from_str(FORM_DATA).map_err(|e| Error::FormData(e.to_string()))?;
        file.form.iter().map(ClearedForm::from_spec).collect()
    })
}

pub fn closed_form_names() -> Vec<String> {
    match forms() {
        Ok(f) => f.iter().map(|c| c.name.clone()).collect(),
        Err(_) => Vec::new(),
    }
}

pub fn build_closed_form(name: &str) -> Result<ClearedForm> {
    let all = forms().as_ref().map_err(Clone::clone)?;
    all.iter().find(|c| c.name == name).cloned().ok_or_else(|| Error::UnknownForm(name.to_string()))
}

/// The first nonzero residual monomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Offence {
    pub x_degree: usize,
    pub a_degree: u32,
    pub b_degree: u32,
    pub coefficient: String,
    #[serde(skip)]
    pub binding: Option<Binding>,
}

impl fmt::Display for Offence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.binding.unwrap_or(Binding::VW).names();
        write!(f, "x^{} {a}^{} {b}^{}: {}", self.x_degree, self.a_degree, self.b_degree, self.coefficient)
    }
}

/// Outcome of one identity checked through `x^order`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub name: String,
    pub order: usize,
    pub offence: Option<Offence>,
}

impl IdentityReport {
    pub fn from_residual(name: impl Into<String>, residual: &XSeries) -> IdentityReport {
        let offence = residual.first_nonzero().map(|(m, a, b, c)| Offence {
            x_degree: m,
            a_degree: a,
            b_degree: b,
            coefficient: c.to_string(),
            binding: Some(residual.binding()),
        });
        IdentityReport { name: name.into(), order: residual.order(), offence }
    }

    /// `lhs - rhs` must vanish through the smaller order.
    pub fn compare(name: impl Into<String>, lhs: &XSeries, rhs: &XSeries) -> Result<IdentityReport> {
        Ok(IdentityReport::from_residual(name, &lhs.sub(rhs)?))
    }

    pub fn passed(&self) -> bool {
        self.offence.is_none()
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.offence {
            None => write!(f, "{} holds through x^{}", self.name, self.order),
            Some(o) => write!(f, "{} fails through x^{} at {o}", self.name, self.order),
        }
    }
}

/// Checks `Dn * target - P - sum_k Q_k sqrt(R_k) = 0` through `x^order`
/// (or the order of `target`, if lower).
pub fn verify_cleared(target: &XSeries, cf: &ClearedForm, order: usize) -> Result<IdentityReport> {
    let order = order.min(target.order());
    let lhs = target.truncate(order).mul_poly(&cf.den)?;
    let rhs = cf.numerator_series(order)?;
    IdentityReport::compare(cf.name.clone(), &lhs, &rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schroeder::{schroeder_numbers, triangle};
    use crate::series::poly::PolyAux;
    use num_rational::BigRational;

    #[test]
    fn all_forms_load() {
        let names = closed_form_names();
        assert!(names.len() >= 18, "{names:?}");
        for n in &names {
            build_closed_form(n).unwrap();
        }
        assert!(matches!(build_closed_form("nope"), Err(Error::UnknownForm(_))));
    }

    #[test]
    fn triangle_expansion() {
        let s = build_closed_form("triangle_gf").unwrap().expand(12).unwrap();
        let t = triangle(12);
        assert!(s.coeff(0).is_zero());
        for n in 1..=12 {
            for k in 1..=n {
                let c = s.coeff(n).coeff(k as u32, 0);
                assert_eq!(c, BigRational::from_integer(t.get(n, k).into()), "n={n} k={k}");
            }
            assert_eq!(s.coeff(n).len(), n);
        }
    }

    #[test]
    fn schroeder_expansion() {
        let s = build_closed_form("schroeder_gf").unwrap().expand(12).unwrap();
        for (k, v) in schroeder_numbers(12).into_iter().enumerate() {
            assert_eq!(s.coeff(k + 1), &PolyAux::constant(BigRational::from_integer(v.into())));
        }
        let a = build_closed_form("a_x11").unwrap().expand(12).unwrap();
        assert!(a.coeff(1).is_zero());
        assert_eq!(a.truncate(12).coeffs()[2..], s.coeffs()[2..]);
    }

    #[test]
    fn printed_expansions_match() {
        let mut seen = 0;
        for name in closed_form_names() {
            let cf = build_closed_form(&name).unwrap();
            if let Some(printed) = cf.printed_expansion() {
                let got = cf.expand(printed.order()).unwrap();
                assert_eq!(got, printed, "{name}");
                seen += 1;
            }
        }
        assert_eq!(seen, 7);
    }

    #[test]
    fn cleared_check_pinpoints_perturbation() {
        let cf = build_closed_form("triangle_gf").unwrap();
        let good = cf.expand(8).unwrap();
        assert!(verify_cleared(&good, &cf, 8).unwrap().passed());
        let mut coeffs = good.coeffs().to_vec();
        coeffs[5] += PolyAux::monomial(BigRational::from_integer(1.into()), 3, 0);
        let bad = XSeries::new(Binding::YQ, 8, coeffs).unwrap();
        let report = verify_cleared(&bad, &cf, 8).unwrap();
        let o = report.offence.unwrap();
        assert_eq!((o.x_degree, o.a_degree, o.b_degree), (5, 3, 0));
    }

    #[test]
    fn lcm_handles_signs_and_powers() {
        let p = |s: &str| parse_xpoly(s, "v", "w").unwrap();
        let a = [p("1 - v"), p("1 - v")];
        let b = [p("v - 1"), p("w")];
        let lcm = lcm_factors(&[&a, &b]);
        assert_eq!(lcm.len(), 2);
        assert_eq!(lcm_product(&lcm), &p("(1 - v)^2") * &p("w"));
        assert_eq!(cofactor(&lcm, &b), -&p("1 - v"));
        assert_eq!(cofactor(&lcm, &a), p("w"));
    }
}
