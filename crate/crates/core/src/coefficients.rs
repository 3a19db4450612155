//! Exact arithmetic in the base domain: rationals, multivariate polynomials
//! over ℚ, and quotients by one relation that is monic in a designated
//! variable.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, ParseError, Result};
use crate::expr::{self, Evaluator};
use crate::semigroup::ExpTuple;

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Degree with a distinguished bottom element for the zero polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    Bottom,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::Bottom => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl Add for Degree {
    type Output = Degree;
    fn add(self, rhs: Degree) -> Degree {
        match (self, rhs) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::Bottom,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Bottom => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Graded-lex key: total degree, then lexicographic.
pub(crate) fn grlex_key(e: &ExpTuple) -> (u32, &[u32]) {
    (e.degree(), e.entries())
}

/// A polynomial in a fixed number of commuting variables with rational
/// coefficients. No zero coefficients are stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CommPoly {
    nvars: usize,
    terms: BTreeMap<ExpTuple, Rational>,
}

impl CommPoly {
    pub fn zero(nvars: usize) -> Self {
        CommPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(ExpTuple::zeros(nvars), c)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(ExpTuple::unit(nvars, i), Rational::one())
    }

    pub fn monomial(exp: ExpTuple, c: Rational) -> Self {
        let mut p = CommPoly::zero(exp.len());
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, merging
    /// repeated exponents.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (ExpTuple, Rational)>) -> Result<Self> {
        let mut p = CommPoly::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::VarCountMismatch(nvars, e.len()));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExpTuple, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, e: &ExpTuple) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    /// `Some(c)` when the polynomial is the constant `c` (including 0).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.is_zero().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(ExpTuple::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub(crate) fn add_term(&mut self, e: ExpTuple, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_vars(&self, other: &CommPoly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VarCountMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &CommPoly) -> Result<CommPoly> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> CommPoly {
        if c.is_zero() {
            return CommPoly::zero(self.nvars);
        }
        CommPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Multiplies by the monomial `c·x^e`.
    pub fn mul_monomial(&self, e: &ExpTuple, c: &Rational) -> CommPoly {
        if c.is_zero() {
            return CommPoly::zero(self.nvars);
        }
        CommPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, v)| (k.add(e), v * c)).collect(),
        }
    }

    /// Product, reduced modulo `quotient` when one is given.
    pub fn checked_mul(&self, other: &CommPoly, quotient: Option<&QuotientPresentation>) -> Result<CommPoly> {
        self.check_vars(other)?;
        let mut out = CommPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.add(e2), c1 * c2);
            }
        }
        Ok(match quotient {
            Some(q) => q.reduce(&out),
            None => out,
        })
    }

    pub fn pow(&self, k: u32) -> CommPoly {
        let mut acc = CommPoly::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn total_degree(&self) -> Degree {
        self.terms.keys().map(|e| Degree::Finite(e.degree())).max().unwrap_or(Degree::Bottom)
    }

    /// Largest exponent of variable `i`, `None` for zero.
    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e.get(i)).max()
    }

    /// Terms sorted by graded-lex order, largest first.
    pub fn sorted_terms(&self) -> Vec<(&ExpTuple, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| grlex_key(b.0).cmp(&grlex_key(a.0)));
        v
    }

    pub fn parse(src: &str, names: &[String]) -> std::result::Result<CommPoly, ParseError> {
        let e = expr::parse(src)?;
        expr::evaluate(&e, &PolyEval { names, quotient: None })
    }

    pub fn parse_in(
        src: &str,
        names: &[String],
        quotient: Option<&QuotientPresentation>,
    ) -> std::result::Result<CommPoly, ParseError> {
        let e = expr::parse(src)?;
        expr::evaluate(&e, &PolyEval { names, quotient })
    }

    /// Canonical text with the given variable names.
    pub fn to_string_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            write_signed_term(&mut out, i == 0, c, &monomial_factors(e, names));
        }
        out
    }
}

/// Default variable names `x1..xn`.
pub fn default_names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

pub(crate) fn monomial_factors(e: &ExpTuple, names: &[String]) -> Vec<String> {
    e.entries()
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| if k == 1 { names[i].clone() } else { format!("{}^{}", names[i], k) })
        .collect()
}

/// Appends `± c*f1*f2...` in canonical form.
pub(crate) fn write_signed_term(out: &mut String, first: bool, c: &Rational, factors: &[String]) {
    let neg = c.is_negative();
    match (first, neg) {
        (true, true) => out.push('-'),
        (true, false) => {}
        (false, true) => out.push_str(" - "),
        (false, false) => out.push_str(" + "),
    }
    let a = c.abs();
    let mut parts: Vec<String> = Vec::new();
    if !a.is_one() || factors.is_empty() {
        parts.push(a.to_string());
    }
    parts.extend(factors.iter().cloned());
    out.push_str(&parts.join("*"));
}

impl fmt::Display for CommPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&default_names("x", self.nvars)))
    }
}

struct PolyEval<'a> {
    names: &'a [String],
    quotient: Option<&'a QuotientPresentation>,
}

impl Evaluator for PolyEval<'_> {
    type Value = CommPoly;
    fn number(&self, r: &Rational) -> CommPoly {
        CommPoly::constant(self.names.len(), r.clone())
    }
    fn ident(&self, name: &str, column: usize) -> std::result::Result<CommPoly, ParseError> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| CommPoly::var(self.names.len(), i))
            .ok_or_else(|| ParseError::new(column, format!("unknown variable `{name}`")))
    }
    fn add(&self, a: &CommPoly, b: &CommPoly) -> CommPoly {
        a + b
    }
    fn neg(&self, a: &CommPoly) -> CommPoly {
        -a
    }
    fn mul(&self, a: &CommPoly, b: &CommPoly) -> CommPoly {
        a.checked_mul(b, self.quotient).expect("same variable count")
    }
}

impl Add for &CommPoly {
    type Output = CommPoly;
    fn add(self, rhs: &CommPoly) -> CommPoly {
        self.checked_add(rhs).expect("polynomial variable counts differ")
    }
}

impl Sub for &CommPoly {
    type Output = CommPoly;
    fn sub(self, rhs: &CommPoly) -> CommPoly {
        self + &(-rhs)
    }
}

impl Neg for &CommPoly {
    type Output = CommPoly;
    fn neg(self) -> CommPoly {
        CommPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &CommPoly {
    type Output = CommPoly;
    fn mul(self, rhs: &CommPoly) -> CommPoly {
        self.checked_mul(rhs, None).expect("polynomial variable counts differ")
    }
}

/// `ℚ[x̄]/(f)` where `f` is monic of degree `leading_exponent` in the
/// eliminated variable. Reduction rewrites `x_v^k` by the lower part of `f`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuotientPresentation {
    relation: CommPoly,
    eliminated_variable: usize,
    leading_exponent: u32,
    /// `x_v^k - f`, i.e. what `x_v^k` rewrites to.
    replacement: CommPoly,
}

impl QuotientPresentation {
    /// Normalizes `relation` to be monic in `eliminated_variable`; the
    /// leading coefficient there must be a nonzero constant.
    pub fn new(relation: CommPoly, eliminated_variable: usize) -> Result<Self> {
        if eliminated_variable >= relation.nvars() {
            return Err(Error::InvalidPresentation("eliminated variable out of range".into()));
        }
        let k = relation.degree_in(eliminated_variable).unwrap_or(0);
        if k == 0 {
            return Err(Error::InvalidPresentation(
                "relation does not involve the eliminated variable".into(),
            ));
        }
        let lead: Vec<_> = relation.terms().filter(|(e, _)| e.get(eliminated_variable) == k).collect();
        let lead_exp = ExpTuple::unit(relation.nvars(), eliminated_variable);
        let lead_exp = ExpTuple::new(lead_exp.entries().iter().map(|e| e * k).collect());
        if lead.len() != 1 || lead[0].0 != &lead_exp {
            return Err(Error::InvalidPresentation(
                "relation must have a constant leading coefficient in the eliminated variable".into(),
            ));
        }
        let lc = lead[0].1.clone();
        let relation = relation.scale(&lc.recip());
        let replacement = &CommPoly::monomial(lead_exp, Rational::one()) - &relation;
        Ok(QuotientPresentation { relation, eliminated_variable, leading_exponent: k, replacement })
    }

    pub fn relation(&self) -> &CommPoly {
        &self.relation
    }

    pub fn eliminated_variable(&self) -> usize {
        self.eliminated_variable
    }

    pub fn leading_exponent(&self) -> u32 {
        self.leading_exponent
    }

    pub fn is_reduced_exponent(&self, e: &ExpTuple) -> bool {
        e.get(self.eliminated_variable) < self.leading_exponent
    }

    /// Canonical representative: every term has degree below
    /// `leading_exponent` in the eliminated variable.
    pub fn reduce(&self, p: &CommPoly) -> CommPoly {
        let v = self.eliminated_variable;
        let k = self.leading_exponent;
        let mut current = p.clone();
        loop {
            if current.terms.keys().all(|e| e.get(v) < k) {
                return current;
            }
            let mut next = CommPoly::zero(p.nvars());
            for (e, c) in &current.terms {
                if e.get(v) >= k {
                    let mut base = e.clone();
                    base.entries_mut()[v] -= k;
                    for (te, tc) in &self.replacement.terms {
                        next.add_term(base.add(te), c * tc);
                    }
                } else {
                    next.add_term(e.clone(), c.clone());
                }
            }
            current = next;
        }
    }
}

/// A derivation of the base ring given by the images of the variables and
/// extended by the Leibniz rule.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DerivationSpec {
    images: Vec<CommPoly>,
}

impl DerivationSpec {
    pub fn new(images: Vec<CommPoly>) -> Result<Self> {
        let n = images.len();
        if let Some(bad) = images.iter().find(|p| p.nvars() != n) {
            return Err(Error::VarCountMismatch(n, bad.nvars()));
        }
        Ok(DerivationSpec { images })
    }

    pub fn zero(nvars: usize) -> Self {
        DerivationSpec { images: vec![CommPoly::zero(nvars); nvars] }
    }

    /// `∂/∂x_i`.
    pub fn partial(nvars: usize, i: usize) -> Self {
        let mut images = vec![CommPoly::zero(nvars); nvars];
        images[i] = CommPoly::one(nvars);
        DerivationSpec { images }
    }

    pub fn images(&self) -> &[CommPoly] {
        &self.images
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(CommPoly::is_zero)
    }

    pub fn apply(&self, p: &CommPoly, quotient: Option<&QuotientPresentation>) -> Result<CommPoly> {
        if p.nvars() != self.images.len() {
            return Err(Error::VarCountMismatch(self.images.len(), p.nvars()));
        }
        let n = p.nvars();
        let mut out = CommPoly::zero(n);
        for (e, c) in p.terms() {
            for (i, img) in self.images.iter().enumerate() {
                let k = e.get(i);
                if k == 0 || img.is_zero() {
                    continue;
                }
                let mut rest = e.clone();
                rest.entries_mut()[i] -= 1;
                let coeff = c * Rational::from_integer(BigInt::from(k));
                for (ie, ic) in img.terms() {
                    out.add_term(rest.add(ie), &coeff * ic);
                }
            }
        }
        Ok(match quotient {
            Some(q) => q.reduce(&out),
            None => out,
        })
    }
}

/// The base domain `A`: named variables and an optional single relation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BaseRing {
    names: Vec<String>,
    quotient: Option<QuotientPresentation>,
}

impl BaseRing {
    pub fn new(names: Vec<String>, quotient: Option<QuotientPresentation>) -> Result<Self> {
        if let Some(q) = &quotient {
            if q.relation().nvars() != names.len() {
                return Err(Error::VarCountMismatch(names.len(), q.relation().nvars()));
            }
        }
        Ok(BaseRing { names, quotient })
    }

    pub fn polynomial(names: Vec<String>) -> Self {
        BaseRing { names, quotient: None }
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn quotient(&self) -> Option<&QuotientPresentation> {
        self.quotient.as_ref()
    }

    pub fn mul(&self, a: &CommPoly, b: &CommPoly) -> CommPoly {
        a.checked_mul(b, self.quotient.as_ref()).expect("base ring variable count")
    }

    pub fn normalize(&self, p: &CommPoly) -> CommPoly {
        match &self.quotient {
            Some(q) => q.reduce(p),
            None => p.clone(),
        }
    }

    pub fn parse(&self, src: &str) -> std::result::Result<CommPoly, ParseError> {
        CommPoly::parse_in(src, &self.names, self.quotient.as_ref()).map(|p| self.normalize(&p))
    }

    pub fn format(&self, p: &CommPoly) -> String {
        p.to_string_with(&self.names)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn p(src: &str, vars: &[&str]) -> CommPoly {
        CommPoly::parse(src, &names(vars)).unwrap()
    }

    fn sphere(n: usize) -> QuotientPresentation {
        let nm = default_names("x", n);
        let rel = (0..n).map(|i| format!("x{}^2", i + 1)).collect::<Vec<_>>().join(" + ") + " - 1";
        QuotientPresentation::new(CommPoly::parse(&rel, &nm).unwrap(), n - 1).unwrap()
    }

    #[test]
    fn add_examples() {
        let x = ["x"];
        assert_eq!(&p("x+1", &x) + &p("x-1", &x), p("2*x", &x));
        assert_eq!(&p("x^2+3", &x) + &CommPoly::zero(1), p("x^2+3", &x));
        assert!((&p("x^2", &x) + &p("-x^2", &x)).is_zero());
        assert!(matches!(
            CommPoly::zero(1).checked_add(&CommPoly::zero(2)),
            Err(Error::VarCountMismatch(1, 2))
        ));
    }

    #[test]
    fn mul_examples() {
        let x = ["x"];
        assert_eq!(&p("x+1", &x) * &p("x-1", &x), p("x^2-1", &x));
        assert_eq!(&p("3/2*x^2 - x", &x) * &CommPoly::one(1), p("3/2*x^2 - x", &x));
        let q = sphere(3);
        let nm = default_names("x", 3);
        let x3 = CommPoly::var(3, 2);
        assert_eq!(x3.checked_mul(&x3, Some(&q)).unwrap(), CommPoly::parse("1 - x1^2 - x2^2", &nm).unwrap());
        assert!(CommPoly::one(1).checked_mul(&CommPoly::one(2), None).is_err());
    }

    #[test]
    fn reduce_examples() {
        let q = sphere(3);
        let nm = default_names("x", 3);
        let r = |s: &str| q.reduce(&CommPoly::parse(s, &nm).unwrap());
        assert_eq!(r("x3^2"), CommPoly::parse("1 - x1^2 - x2^2", &nm).unwrap());
        assert_eq!(r("x1*x2"), CommPoly::parse("x1*x2", &nm).unwrap());
        // x3^3 = x3·x3^2 = x3(1 - x1^2 - x2^2)
        assert_eq!(r("x3^3"), CommPoly::parse("x3 - x1^2*x3 - x2^2*x3", &nm).unwrap());
        assert_eq!(q.leading_exponent(), 2);
    }

    #[test]
    fn quotient_validation() {
        let nm = names(&["x", "y"]);
        assert!(QuotientPresentation::new(CommPoly::parse("x*y^2 + 1", &nm).unwrap(), 1).is_err());
        assert!(QuotientPresentation::new(CommPoly::parse("x + 1", &nm).unwrap(), 1).is_err());
        let q = QuotientPresentation::new(CommPoly::parse("2*y^2 - x", &nm).unwrap(), 1).unwrap();
        assert_eq!(q.relation(), &CommPoly::parse("y^2 - 1/2*x", &nm).unwrap());
    }

    #[test]
    fn derivation_examples() {
        let x = ["x"];
        let d = DerivationSpec::partial(1, 0);
        assert_eq!(d.apply(&p("x^3", &x), None).unwrap(), p("3*x^2", &x));
        assert!(d.apply(&p("7/3", &x), None).unwrap().is_zero());
        let sq = DerivationSpec::new(vec![p("x^2", &x)]).unwrap();
        // d(x^2) = 2x·d(x) = 2x^3
        assert_eq!(sq.apply(&p("x^2", &x), None).unwrap(), p("2*x^3", &x));
        assert!(d.apply(&CommPoly::zero(2), None).is_err());
    }

    #[test]
    fn degree_examples() {
        let xy = ["x", "y"];
        assert_eq!(p("x^2*y + y", &xy).total_degree(), Degree::Finite(3));
        assert_eq!(CommPoly::zero(2).total_degree(), Degree::Bottom);
        assert_eq!(p("5", &xy).total_degree(), Degree::Finite(0));
        assert!(Degree::Bottom < Degree::Finite(0));
        assert_eq!(Degree::Bottom + Degree::Finite(3), Degree::Bottom);
    }

    #[test]
    fn canonical_printing() {
        let nm = default_names("x", 3);
        let q = CommPoly::parse("1 - x3 + x2*x1^2*3/2", &nm).unwrap();
        assert_eq!(q.to_string(), "3/2*x1^2*x2 - x3 + 1");
        assert_eq!(CommPoly::zero(2).to_string(), "0");
        assert_eq!(CommPoly::parse("-x1 - 2/4", &nm).unwrap().to_string(), "-x1 - 1/2");
        let err = CommPoly::parse("x1 + y", &nm).unwrap_err();
        assert_eq!(err.column, 5);
    }
}
