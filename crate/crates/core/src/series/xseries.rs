//! Power series in `x`, truncated at a fixed order, whose coefficients are
//! [`PolyAux`] polynomials.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use num_rational::BigRational;

use super::poly::{PolyAux, XPoly};
use crate::error::{Error, Result};

/// Default slack `G` in the auxiliary degree guard `2m + G`.
pub const DEFAULT_GUARD: u32 = 8;

/// Names of the two auxiliary variables of a series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Binding {
    /// `(v, w)`, used by the joint first/second letter series.
    VW,
    /// `(y, q)`, used by the triangle and the generating tree.
    YQ,
}

impl Binding {
    pub fn names(self) -> (&'static str, &'static str) {
        match self {
            Binding::VW => ("v", "w"),
            Binding::YQ => ("y", "q"),
        }
    }

    pub fn parse(s: &str) -> Result<Binding> {
        match s {
            "vw" => Ok(Binding::VW),
            "yq" => Ok(Binding::YQ),
            _ => Err(Error::FormData(format!("unknown binding `{s}`"))),
        }
    }
}

impl fmt::Display for Binding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.names();
        write!(f, "({a},{b})")
    }
}

#[derive(Clone)]
pub struct XSeries {
    binding: Binding,
    guard: u32,
    coeffs: Vec<PolyAux>,
}

/// Equal binding, order and coefficients; the guard is bookkeeping only.
impl PartialEq for XSeries {
    fn eq(&self, other: &XSeries) -> bool {
        self.binding == other.binding && self.coeffs == other.coeffs
    }
}

impl Eq for XSeries {}

/// Cauchy product of two coefficient slices up to index `upto`.
fn conv(a: &[PolyAux], b: &[PolyAux], upto: usize) -> Vec<PolyAux> {
    let mut out = vec![PolyAux::zero(); upto + 1];
    for (i, p) in a.iter().enumerate().take(upto + 1) {
        if p.is_zero() {
            continue;
        }
        for (j, q) in b.iter().enumerate().take(upto + 1 - i) {
            if !q.is_zero() {
                out[i + j] += p * q;
            }
        }
    }
    out
}

impl XSeries {
    /// Series with the given coefficients, padded with zeros or cut to
    /// `order + 1` entries and checked against the default guard.
    pub fn new(binding: Binding, order: usize, mut coeffs: Vec<PolyAux>) -> Result<XSeries> {
        coeffs.resize(order + 1, PolyAux::zero());
        let s = XSeries { binding, guard: DEFAULT_GUARD, coeffs };
        s.check_guard()?;
        Ok(s)
    }

    pub fn zero(binding: Binding, order: usize) -> XSeries {
        XSeries { binding, guard: DEFAULT_GUARD, coeffs: vec![PolyAux::zero(); order + 1] }
    }

    pub fn constant(binding: Binding, order: usize, c: PolyAux) -> Result<XSeries> {
        XSeries::new(binding, order, vec![c])
    }

    pub fn one(binding: Binding, order: usize) -> XSeries {
        let mut s = XSeries::zero(binding, order);
        s.coeffs[0] = PolyAux::one();
        s
    }

    pub fn x(binding: Binding, order: usize) -> XSeries {
        let mut s = XSeries::zero(binding, order);
        if order >= 1 {
            s.coeffs[1] = PolyAux::one();
        }
        s
    }

    /// A polynomial read as a series; the guard is widened to cover it.
    pub fn from_xpoly(p: &XPoly, binding: Binding, order: usize) -> XSeries {
        let mut coeffs: Vec<PolyAux> = p.coeffs().iter().take(order + 1).cloned().collect();
        coeffs.resize(order + 1, PolyAux::zero());
        XSeries { binding, guard: DEFAULT_GUARD.max(p.guard_excess()), coeffs }
    }

    pub fn binding(&self) -> Binding {
        self.binding
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn guard(&self) -> u32 {
        self.guard
    }

    pub fn coeff(&self, m: usize) -> &PolyAux {
        &self.coeffs[m]
    }

    pub fn coeffs(&self) -> &[PolyAux] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Same series with guard slack `g`, re-checked.
    pub fn with_guard(mut self, g: u32) -> Result<XSeries> {
        self.guard = g;
        self.check_guard()?;
        Ok(self)
    }

    fn check_guard(&self) -> Result<()> {
        for (m, c) in self.coeffs.iter().enumerate() {
            let limit = 2 * m as u32 + self.guard;
            if let Some(d) = c.total_degree() {
                if d > limit {
                    return Err(Error::GuardOverflow { order: m, degree: d, limit });
                }
            }
        }
        Ok(())
    }

    fn same_binding(&self, other: &XSeries) -> Result<()> {
        if self.binding == other.binding {
            Ok(())
        } else {
            Err(Error::BindingMismatch(self.binding.to_string(), other.binding.to_string()))
        }
    }

    pub fn truncate(&self, order: usize) -> XSeries {
        let keep = order.min(self.order());
        XSeries { binding: self.binding, guard: self.guard, coeffs: self.coeffs[..=keep].to_vec() }
    }

    pub fn add(&self, rhs: &XSeries) -> Result<XSeries> {
        self.same_binding(rhs)?;
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order).map(|m| &self.coeffs[m] + &rhs.coeffs[m]).collect();
        Ok(XSeries { binding: self.binding, guard: self.guard.max(rhs.guard), coeffs })
    }

    pub fn sub(&self, rhs: &XSeries) -> Result<XSeries> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> XSeries {
        XSeries { binding: self.binding, guard: self.guard, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &BigRational) -> XSeries {
        XSeries { binding: self.binding, guard: self.guard, coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect() }
    }

    pub fn mul(&self, rhs: &XSeries) -> Result<XSeries> {
        self.same_binding(rhs)?;
        let order = self.order().min(rhs.order());
        let s = XSeries {
            binding: self.binding,
            guard: self.guard + rhs.guard,
            coeffs: conv(&self.coeffs, &rhs.coeffs, order),
        };
        s.check_guard()?;
        Ok(s)
    }

    pub fn mul_poly(&self, p: &XPoly) -> Result<XSeries> {
        let s = XSeries {
            binding: self.binding,
            guard: self.guard + p.guard_excess(),
            coeffs: conv(&self.coeffs, p.coeffs(), self.order()),
        };
        s.check_guard()?;
        Ok(s)
    }

    /// Multiply every coefficient by the polynomial `p` (no `x`).
    pub fn mul_aux(&self, p: &PolyAux) -> Result<XSeries> {
        self.mul_poly(&XPoly::from_aux(p.clone()))
    }

    fn unit_lead(&self) -> Result<()> {
        if self.coeffs[0].is_one() {
            Ok(())
        } else {
            let (a, b) = self.binding.names();
            Err(Error::NonUnitLead(self.coeffs[0].render(a, b)))
        }
    }

    /// `1 / self`; the constant coefficient must be exactly 1.
    pub fn reciprocal(&self) -> Result<XSeries> {
        self.unit_lead()?;
        let order = self.order();
        let mut inv: Vec<PolyAux> = Vec::with_capacity(order + 1);
        inv.push(PolyAux::one());
        for m in 1..=order {
            let mut acc = PolyAux::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() && !inv[m - k].is_zero() {
                    acc -= &(&self.coeffs[k] * &inv[m - k]);
                }
            }
            inv.push(acc);
        }
        let s = XSeries { binding: self.binding, guard: self.guard, coeffs: inv };
        s.check_guard()?;
        Ok(s)
    }

    /// Square root with constant term 1, by Newton iteration
    /// `g <- (g + self / g) / 2` doubling the precision each round.
    pub fn sqrt(&self) -> Result<XSeries> {
        self.unit_lead()?;
        let order = self.order();
        let half = BigRational::new(1.into(), 2.into());
        let mut g = XSeries::one(self.binding, 0).with_guard(self.guard)?;
        let mut prec = 0;
        while prec < order {
            prec = (2 * prec + 1).min(order);
            let g_ext = XSeries {
                coeffs: {
                    let mut c = g.coeffs.clone();
                    c.resize(prec + 1, PolyAux::zero());
                    c
                },
                ..g
            };
            let target = self.truncate(prec);
            let quotient = target.mul(&g_ext.reciprocal()?)?;
            g = g_ext.add(&quotient)?.scale(&half);
            g.guard = self.guard;
        }
        g.check_guard()?;
        Ok(g)
    }

    /// Exact quotient `self / d` computed coefficient by coefficient; every
    /// step divides by the constant coefficient of `d`, which need not be a
    /// unit but must divide exactly.
    pub fn div_exact(&self, d: &XSeries) -> Result<XSeries> {
        self.same_binding(d)?;
        let order = self.order().min(d.order());
        let d0 = &d.coeffs[0];
        if d0.is_zero() {
            return Err(Error::InexactDivision { order: 0, detail: "divisor has zero constant term".into() });
        }
        let mut q: Vec<PolyAux> = Vec::with_capacity(order + 1);
        for m in 0..=order {
            let mut acc = self.coeffs[m].clone();
            for k in 1..=m {
                if !d.coeffs[k].is_zero() && !q[m - k].is_zero() {
                    acc -= &(&d.coeffs[k] * &q[m - k]);
                }
            }
            let (a, b) = self.binding.names();
            let qm = acc.div_exact(d0).ok_or_else(|| Error::InexactDivision {
                order: m,
                detail: format!("{} is not divisible by {}", acc.render(a, b), d0.render(a, b)),
            })?;
            q.push(qm);
        }
        let s = XSeries { binding: self.binding, guard: self.guard, coeffs: q };
        s.check_guard()?;
        Ok(s)
    }

    /// Replace the auxiliary variables by polynomials, leaving `x` alone.
    pub fn substitute_aux(&self, sa: &PolyAux, sb: &PolyAux) -> Result<XSeries> {
        let s = XSeries {
            binding: self.binding,
            guard: self.guard,
            coeffs: self.coeffs.iter().map(|c| c.compose(sa, sb)).collect(),
        };
        s.check_guard()?;
        Ok(s)
    }

    /// `self(sx, sa, sb)` truncated at the smallest order involved. `sx`
    /// must have zero constant term so each source `x^m` contributes only
    /// at degree `m` and above.
    pub fn substitute(&self, sx: &XSeries, sa: &XSeries, sb: &XSeries) -> Result<XSeries> {
        self.same_binding(sx)?;
        self.same_binding(sa)?;
        self.same_binding(sb)?;
        if !sx.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let order = self.order().min(sx.order()).min(sa.order()).min(sb.order());
        let src = &self.coeffs[..=order];
        let max_a = src.iter().filter_map(PolyAux::degree_a).max().unwrap_or(0) as usize;
        let max_b = src.iter().filter_map(PolyAux::degree_b).max().unwrap_or(0) as usize;
        let powers = |s: &XSeries, k: usize| {
            let mut out = vec![{
                let mut one = vec![PolyAux::zero(); order + 1];
                one[0] = PolyAux::one();
                one
            }];
            for _ in 0..k {
                let next = conv(out.last().unwrap(), &s.coeffs, order);
                out.push(next);
            }
            out
        };
        let pa = powers(sa, max_a);
        let pb = powers(sb, max_b);

        let mut out = vec![PolyAux::zero(); order + 1];
        let mut xpow: Vec<PolyAux> = pa[0].clone();
        for (m, c) in src.iter().enumerate() {
            if m > 0 {
                xpow = conv(&xpow, &sx.coeffs, order);
            }
            if c.is_zero() {
                continue;
            }
            let room = order - m;
            let mut by_b: BTreeMap<u32, Vec<(u32, &BigRational)>> = BTreeMap::new();
            for (a, b, coef) in c.terms() {
                by_b.entry(b).or_default().push((a, coef));
            }
            let mut t = vec![PolyAux::zero(); room + 1];
            for (b, list) in by_b {
                let mut inner = vec![PolyAux::zero(); room + 1];
                for (a, coef) in list {
                    for (k, p) in pa[a as usize].iter().take(room + 1).enumerate() {
                        if !p.is_zero() {
                            inner[k] += p.scale(coef);
                        }
                    }
                }
                for (k, p) in conv(&inner, &pb[b as usize], room).into_iter().enumerate() {
                    t[k] += p;
                }
            }
            for (k, p) in xpow.iter().enumerate().skip(m) {
                if p.is_zero() {
                    continue;
                }
                for (j, q) in t.iter().enumerate().take(order - k + 1) {
                    if !q.is_zero() {
                        out[k + j] += p * q;
                    }
                }
            }
        }
        let guard = self.guard.max(sx.guard).max(sa.guard).max(sb.guard);
        let s = XSeries { binding: self.binding, guard, coeffs: out };
        s.check_guard()?;
        Ok(s)
    }

    /// The lowest-order nonzero monomial as `(m, deg_a, deg_b, coefficient)`.
    pub fn first_nonzero(&self) -> Option<(usize, u32, u32, BigRational)> {
        self.coeffs.iter().enumerate().find_map(|(m, c)| c.terms().next().map(|(a, b, v)| (m, a, b, v.clone())))
    }

    /// True when every coefficient has non-negative integer coefficients.
    pub fn is_counting_series(&self) -> bool {
        self.coeffs.iter().all(PolyAux::is_nonnegative_integral)
    }

    /// One line `n i j coefficient` per nonzero monomial, `i` and `j` being
    /// the exponents of the two auxiliary variables.
    pub fn dump_tsv(&self) -> String {
        let mut out = String::new();
        for (m, c) in self.coeffs.iter().enumerate() {
            for (a, b, v) in c.terms() {
                writeln!(out, "{m}\t{a}\t{b}\t{v}").unwrap();
            }
        }
        out
    }
}

impl fmt::Debug for XSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.binding.names();
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| format!("({})*x^{m}", c.render(a, b)))
            .collect();
        write!(f, "{} + O(x^{})", if parts.is_empty() { "0".into() } else { parts.join(" + ") }, self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::super::poly::{parse_aux, parse_xpoly};
    use super::*;

    fn poly(s: &str) -> XPoly {
        parse_xpoly(s, "v", "w").unwrap()
    }

    fn series(s: &str, order: usize) -> XSeries {
        XSeries::from_xpoly(&poly(s), Binding::VW, order)
    }

    #[test]
    fn geometric_series() {
        let inv = series("1 - v*w*x", 6).reciprocal().unwrap();
        for m in 0..=6 {
            assert_eq!(inv.coeff(m), &parse_aux(&format!("(v*w)^{m}"), "v", "w").unwrap());
        }
        let ones = XSeries::new(Binding::VW, 5, vec![PolyAux::one(); 6]).unwrap();
        assert_eq!(ones.mul_poly(&poly("1 - x")).unwrap(), XSeries::one(Binding::VW, 5));
    }

    #[test]
    fn non_unit_lead_is_rejected() {
        assert!(matches!(series("1 - v - 2*x + v*x", 4).reciprocal(), Err(Error::NonUnitLead(_))));
        assert!(matches!(series("4 + x", 4).sqrt(), Err(Error::NonUnitLead(_))));
    }

    #[test]
    fn sqrt_squares_back() {
        for (r, order) in [("1", 5), ("1 - 6*x*v*w + x^2*v^2*w^2", 9), ("(1 - x)*(1 - x - 4*v*w*x)", 8)] {
            let s = series(r, order);
            let root = s.sqrt().unwrap();
            assert_eq!(root.mul(&root).unwrap().truncate(order).coeffs(), s.coeffs(), "radicand {r}");
            assert!(root.coeff(0).is_one());
        }
    }

    #[test]
    fn guard_overflow_is_an_error() {
        let s = series("1 - v^9*x", 4);
        assert!(matches!(s.reciprocal(), Err(Error::GuardOverflow { .. })));
        assert!(s.with_guard(40).unwrap().reciprocal().is_ok());
    }

    #[test]
    fn substitution() {
        let s = series("1 + v*x + w^2*x^2 + v*w*x^3", 6);
        let id = s.substitute(&XSeries::x(Binding::VW, 6), &series("v", 6), &series("w", 6)).unwrap();
        assert_eq!(id, s);
        // x -> x/(1 - x) in 1/(1 - x) gives (1 - x)/(1 - 2x)
        let geo = series("1 - x", 7).reciprocal().unwrap();
        let sx = series("x", 7).mul(&geo).unwrap();
        let got = geo.substitute(&sx, &series("v", 7), &series("w", 7)).unwrap();
        let expected = series("1 - x", 7).mul(&series("1 - 2*x", 7).reciprocal().unwrap()).unwrap();
        assert_eq!(got.coeffs(), expected.coeffs());
        assert!(matches!(s.substitute(&series("1 + x", 6), &s, &s), Err(Error::NonzeroConstantTerm)));
        let yq = XSeries::one(Binding::YQ, 6);
        assert!(matches!(s.add(&yq), Err(Error::BindingMismatch(..))));
    }

    #[test]
    fn exact_series_division() {
        let d = series("2*(1 - v) - 3*x + v*w*x", 6);
        let q = series("v + w*x^2 - x^3", 6);
        let n = q.mul_poly(&poly("2*(1 - v) - 3*x + v*w*x")).unwrap();
        assert_eq!(n.div_exact(&d).unwrap().coeffs(), q.coeffs());
        assert!(matches!(series("1", 3).div_exact(&series("1 - v", 3)), Err(Error::InexactDivision { order: 0, .. })));
    }

    #[test]
    fn dump_format() {
        assert_eq!(series("3*v*w^2*x^2 + 1", 3).dump_tsv(), "0\t0\t0\t1\n2\t1\t2\t3\n");
    }
}
