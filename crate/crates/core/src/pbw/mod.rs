//! Elements of a crossed product `B = A ⋆ U(𝔤)` in PBW normal form and
//! their multiplication.
//!
//! An element is stored as `Σ r_α g^α` with coefficients `r_α ∈ A` on the
//! left of sorted monomials `g^α = g₁^{α₁}⋯gₙ^{αₙ}`.

mod consistency;
mod presentation;
mod rewrite;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::RwLock;

use num_traits::{One, Zero};
use serde::Serialize;

pub use consistency::{consistency_check, ConsistencyReport};
pub use presentation::{preset, sphere_presentation, AlgebraPresentation, LiePresentation};
pub use rewrite::{Letter, Strategy, WordSum};

use crate::coefficients::{monomial_factors, write_signed_term, CommPoly, Degree, Rational};
use crate::error::{Error, ParseError, Result};
use crate::expr::{self, Evaluator};
use crate::linalg::Echelon;
use crate::semigroup::{tuples_up_to_degree, ExpTuple, OrderRule};
use crate::Verdict;

/// A finite sum `Σ r_α g^α` in normal form. Zero coefficients are never
/// stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CrossedElement {
    nvars: usize,
    ngens: usize,
    terms: BTreeMap<ExpTuple, CommPoly>,
}

impl CrossedElement {
    pub fn zero(nvars: usize, ngens: usize) -> Self {
        CrossedElement { nvars, ngens, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize, ngens: usize) -> Self {
        Self::from_coefficient(CommPoly::one(nvars), ngens)
    }

    pub fn from_coefficient(r: CommPoly, ngens: usize) -> Self {
        Self::monomial(r, ExpTuple::zeros(ngens))
    }

    /// `r · g^α`.
    pub fn monomial(r: CommPoly, alpha: ExpTuple) -> Self {
        let mut e = CrossedElement::zero(r.nvars(), alpha.len());
        e.add_term(alpha, r);
        e
    }

    pub fn generator(nvars: usize, ngens: usize, i: usize) -> Self {
        Self::monomial(CommPoly::one(nvars), ExpTuple::unit(ngens, i))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExpTuple, &CommPoly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, alpha: &ExpTuple) -> CommPoly {
        self.terms.get(alpha).cloned().unwrap_or_else(|| CommPoly::zero(self.nvars))
    }

    pub(crate) fn add_term(&mut self, alpha: ExpTuple, r: CommPoly) {
        if r.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(alpha) {
            Entry::Vacant(v) => {
                v.insert(r);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &r;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn same_shape(&self, other: &CrossedElement) -> Result<()> {
        if self.nvars != other.nvars || self.ngens != other.ngens {
            return Err(Error::PresentationMismatch);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &CrossedElement) -> Result<CrossedElement> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for (a, r) in &other.terms {
            out.add_term(a.clone(), r.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> CrossedElement {
        if c.is_zero() {
            return CrossedElement::zero(self.nvars, self.ngens);
        }
        CrossedElement {
            nvars: self.nvars,
            ngens: self.ngens,
            terms: self.terms.iter().map(|(a, r)| (a.clone(), r.scale(c))).collect(),
        }
    }

    /// Bernstein-style degree: coefficient degree plus PBW exponent sum.
    pub fn total_degree(&self) -> Degree {
        self.terms
            .iter()
            .map(|(a, r)| r.total_degree() + Degree::Finite(a.degree()))
            .max()
            .unwrap_or(Degree::Bottom)
    }

    /// Exponent tuple of the order-maximal PBW monomial.
    pub fn type_of(&self, rule: OrderRule) -> Result<ExpTuple> {
        self.terms
            .keys()
            .max_by(|a, b| rule.cmp(a, b))
            .cloned()
            .ok_or(Error::ZeroElement)
    }

    /// Deg-lex maximum of the `(g₂..gₙ)` exponent tuples, i.e. the least
    /// `ī` with `e ∈ A[g₁]·U_{≤ī}`.
    pub fn filtration_index(&self) -> Result<ExpTuple> {
        self.terms
            .keys()
            .map(|a| a.slice(self.ngens.min(1)..self.ngens))
            .max_by(|a, b| OrderRule::DegLex.cmp(a, b))
            .ok_or(Error::ZeroElement)
    }

    /// True when no generator other than `g₁` occurs.
    pub fn involves_only_first_generator(&self) -> bool {
        self.terms.keys().all(|a| a.entries().iter().skip(1).all(|&e| e == 0))
    }

    /// Re-embeds into an algebra with `ngens ≥ self.ngens` generators,
    /// identifying the first generators.
    pub fn widen(&self, ngens: usize) -> Result<CrossedElement> {
        if ngens < self.ngens {
            return Err(Error::LengthMismatch(self.ngens, ngens));
        }
        let pad = ExpTuple::zeros(ngens - self.ngens);
        Ok(CrossedElement {
            nvars: self.nvars,
            ngens,
            terms: self.terms.iter().map(|(a, r)| (a.concat(&pad), r.clone())).collect(),
        })
    }

    /// Coordinates as `(coefficient exponent, PBW exponent) → value`.
    pub fn coordinates(&self) -> impl Iterator<Item = (BasisLabel, &Rational)> {
        self.terms.iter().flat_map(|(a, r)| {
            r.terms().map(move |(c, v)| (BasisLabel { coef: c.clone(), pbw: a.clone() }, v))
        })
    }

    pub fn from_coordinates<'a>(
        nvars: usize,
        ngens: usize,
        coords: impl IntoIterator<Item = (&'a BasisLabel, Rational)>,
    ) -> CrossedElement {
        let mut out = CrossedElement::zero(nvars, ngens);
        for (label, v) in coords {
            out.add_term(label.pbw.clone(), CommPoly::monomial(label.coef.clone(), v));
        }
        out
    }
}

impl std::ops::Add for &CrossedElement {
    type Output = CrossedElement;
    fn add(self, rhs: &CrossedElement) -> CrossedElement {
        self.checked_add(rhs).expect("crossed elements of different shapes")
    }
}

impl std::ops::Neg for &CrossedElement {
    type Output = CrossedElement;
    fn neg(self) -> CrossedElement {
        self.scale(&-Rational::one())
    }
}

impl std::ops::Sub for &CrossedElement {
    type Output = CrossedElement;
    fn sub(self, rhs: &CrossedElement) -> CrossedElement {
        self + &-rhs
    }
}

/// One basis element `x^coef · g^pbw` of `B` over `ℚ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BasisLabel {
    pub coef: ExpTuple,
    pub pbw: ExpTuple,
}

impl BasisLabel {
    pub fn degree(&self) -> u32 {
        self.coef.degree() + self.pbw.degree()
    }

    pub fn to_element(&self) -> CrossedElement {
        CrossedElement::monomial(CommPoly::monomial(self.coef.clone(), Rational::one()), self.pbw.clone())
    }
}

/// One row of the freeness dimension count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreenessRow {
    pub degree: u32,
    pub dim_b: usize,
    pub products: usize,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreenessReport {
    pub verdict: Verdict,
    pub rows: Vec<FreenessRow>,
}

/// A validated presentation together with a multiplication cache.
///
/// Shareable across threads; the cache only memoizes `gᵢ · g^β`.
pub struct Algebra {
    pres: AlgebraPresentation,
    cache: RwLock<HashMap<(usize, ExpTuple), CrossedElement>>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra").field("source", &self.pres.source()).finish()
    }
}

impl Clone for Algebra {
    fn clone(&self) -> Self {
        Algebra::new(self.pres.clone())
    }
}

impl Algebra {
    pub fn new(pres: AlgebraPresentation) -> Self {
        Algebra { pres, cache: RwLock::new(HashMap::new()) }
    }

    /// A preset name or a presentation file path.
    pub fn load(spec: &str) -> Result<Self> {
        AlgebraPresentation::load(spec).map(Algebra::new)
    }

    pub fn presentation(&self) -> &AlgebraPresentation {
        &self.pres
    }

    pub fn nvars(&self) -> usize {
        self.pres.nvars()
    }

    pub fn ngens(&self) -> usize {
        self.pres.ngens()
    }

    pub fn zero(&self) -> CrossedElement {
        CrossedElement::zero(self.nvars(), self.ngens())
    }

    pub fn one(&self) -> CrossedElement {
        CrossedElement::one(self.nvars(), self.ngens())
    }

    pub fn constant(&self, c: Rational) -> CrossedElement {
        self.coefficient(CommPoly::constant(self.nvars(), c))
    }

    pub fn coefficient(&self, r: CommPoly) -> CrossedElement {
        CrossedElement::from_coefficient(self.pres.base().normalize(&r), self.ngens())
    }

    pub fn variable(&self, k: usize) -> CrossedElement {
        self.coefficient(CommPoly::var(self.nvars(), k))
    }

    pub fn generator(&self, i: usize) -> CrossedElement {
        CrossedElement::generator(self.nvars(), self.ngens(), i)
    }

    fn check(&self, e: &CrossedElement) -> Result<()> {
        if e.nvars != self.nvars() || e.ngens != self.ngens() {
            return Err(Error::PresentationMismatch);
        }
        Ok(())
    }

    /// `r · e` for `r ∈ A`.
    pub fn left_mul_coefficient(&self, r: &CommPoly, e: &CrossedElement) -> CrossedElement {
        let base = self.pres.base();
        let mut out = self.zero();
        for (a, s) in &e.terms {
            out.add_term(a.clone(), base.mul(r, s));
        }
        out
    }

    /// `gᵢ · g^β` in normal form.
    pub fn generator_times_monomial(&self, i: usize, beta: &ExpTuple) -> CrossedElement {
        let key = (i, beta.clone());
        if let Some(hit) = self.cache.read().expect("cache lock").get(&key) {
            return hit.clone();
        }
        let value = self.compute_generator_times_monomial(i, beta);
        self.cache.write().expect("cache lock").insert(key, value.clone());
        value
    }

    fn compute_generator_times_monomial(&self, i: usize, beta: &ExpTuple) -> CrossedElement {
        let n = self.ngens();
        let m = self.nvars();
        let j = match beta.entries().iter().position(|&e| e > 0) {
            Some(j) if j < i => j,
            _ => {
                let mut e = self.zero();
                e.add_term(beta.add(&ExpTuple::unit(n, i)), CommPoly::one(m));
                return e;
            }
        };
        // gᵢ gⱼ m' = gⱼ (gᵢ m') − (Σ cⱼᵢᵏ gₖ + aⱼᵢ) m', since j < i.
        let mut rest = beta.clone();
        rest.entries_mut()[j] -= 1;
        let inner = self.generator_times_monomial(i, &rest);
        let mut out = self.generator_times(j, &inner);
        let lie = self.pres.lie();
        for (k, c) in lie.structure_constants(j, i) {
            let term = self.generator_times_monomial(*k, &rest).scale(c);
            out = &out - &term;
        }
        if let Some(a) = lie.cocycle(j, i) {
            let mono = CrossedElement::monomial(CommPoly::one(m), rest);
            out = &out - &self.left_mul_coefficient(a, &mono);
        }
        out
    }

    /// `gᵢ · e`, using `gᵢ r = r gᵢ + δᵢ(r)`.
    pub fn generator_times(&self, i: usize, e: &CrossedElement) -> CrossedElement {
        let base = self.pres.base();
        let delta = &self.pres.derivations()[i];
        let mut out = self.zero();
        for (beta, s) in &e.terms {
            let moved = self.generator_times_monomial(i, beta);
            for (a, r) in &moved.terms {
                out.add_term(a.clone(), base.mul(s, r));
            }
            let ds = delta.apply(s, base.quotient()).expect("derivation arity");
            out.add_term(beta.clone(), ds);
        }
        out
    }

    pub fn multiply(&self, e1: &CrossedElement, e2: &CrossedElement) -> Result<CrossedElement> {
        self.check(e1)?;
        self.check(e2)?;
        let mut out = self.zero();
        // Terms sharing a PBW monomial share the work g^α · e2.
        for (alpha, r) in &e1.terms {
            let mut y = e2.clone();
            for k in (0..self.ngens()).rev() {
                for _ in 0..alpha.get(k) {
                    y = self.generator_times(k, &y);
                }
            }
            out = &out + &self.left_mul_coefficient(r, &y);
        }
        Ok(out)
    }

    pub fn mul(&self, e1: &CrossedElement, e2: &CrossedElement) -> CrossedElement {
        self.multiply(e1, e2).expect("elements of this algebra")
    }

    pub fn pow(&self, e: &CrossedElement, k: u32) -> CrossedElement {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(&acc, e);
        }
        acc
    }

    /// Every basis label of total degree at most `bound`, by degree and then
    /// lexicographically descending on `(coef, pbw)`.
    pub fn pbw_basis(&self, bound: u32) -> Vec<BasisLabel> {
        let m = self.nvars();
        let quotient = self.pres.base().quotient();
        tuples_up_to_degree(m + self.ngens(), bound)
            .into_iter()
            .map(|t| BasisLabel { coef: t.slice(0..m), pbw: t.slice(m..t.len()) })
            .filter(|l| quotient.is_none_or(|q| q.is_reduced_exponent(&l.coef)))
            .collect()
    }

    /// Compares `dim B_{≤d}` with the span of `ℓ · ω` for `ℓ` running over a
    /// basis of `A₁ = A[g₁]` and `ω = g₂^{j₂}⋯gₙ^{jₙ}`, for every `d ≤ bound`.
    pub fn check_a1_freeness(&self, bound: u32) -> Result<FreenessReport> {
        let n = self.ngens();
        if n < 2 {
            return Err(Error::Precondition("freeness over A1 needs at least two generators".into()));
        }
        let m = self.nvars();
        let basis = self.pbw_basis(bound);
        let a1_labels: Vec<&BasisLabel> =
            basis.iter().filter(|l| l.pbw.entries().iter().skip(1).all(|&e| e == 0)).collect();
        let omegas = tuples_up_to_degree(n - 1, bound);
        let mut products: Vec<(u32, CrossedElement)> = Vec::new();
        for omega in &omegas {
            let w = CrossedElement::monomial(CommPoly::one(m), ExpTuple::zeros(1).concat(omega));
            for l in &a1_labels {
                let d = l.degree() + omega.degree();
                if d <= bound {
                    products.push((d, self.mul(&l.to_element(), &w)));
                }
            }
        }
        products.sort_by_key(|(d, _)| *d);
        let mut ech = Echelon::new();
        let mut rows = Vec::new();
        let mut idx = 0;
        let mut verdict = Verdict::Pass;
        for d in 0..=bound {
            while idx < products.len() && products[idx].0 <= d {
                ech.insert(products[idx].1.coordinates().map(|(l, v)| (l, v.clone())).collect(), None);
                idx += 1;
            }
            let dim_b = basis.iter().filter(|l| l.degree() <= d).count();
            let row = FreenessRow { degree: d, dim_b, products: idx, rank: ech.rank() };
            if !(row.rank == row.products && row.products == row.dim_b) {
                verdict = Verdict::Fail;
            }
            rows.push(row);
        }
        Ok(FreenessReport { verdict, rows })
    }

    pub fn parse_element(&self, src: &str) -> std::result::Result<CrossedElement, ParseError> {
        let e = expr::parse(src)?;
        expr::evaluate(&e, &ElementEval { alg: self })
    }

    pub fn symbol(&self, name: &str) -> Option<CrossedElement> {
        if let Some(k) = self.pres.base().names().iter().position(|n| n == name) {
            return Some(self.variable(k));
        }
        self.pres.lie().generator_index(name).map(|i| self.generator(i))
    }

    pub fn format(&self, e: &CrossedElement) -> String {
        self.format_with(e, OrderRule::default())
    }

    /// Expanded canonical text: PBW monomials descending by `rule`, then
    /// coefficient monomials descending by graded lex.
    pub fn format_with(&self, e: &CrossedElement, rule: OrderRule) -> String {
        if e.is_zero() {
            return "0".to_string();
        }
        let mut keys: Vec<&ExpTuple> = e.terms.keys().collect();
        keys.sort_by(|a, b| rule.cmp(b, a));
        let names = self.pres.base().names();
        let gens = self.pres.lie().generator_names();
        let mut out = String::new();
        let mut first = true;
        for alpha in keys {
            let gen_factors = monomial_factors(alpha, gens);
            for (c_exp, c) in e.terms[alpha].sorted_terms() {
                let mut factors = monomial_factors(c_exp, names);
                factors.extend(gen_factors.iter().cloned());
                write_signed_term(&mut out, first, c, &factors);
                first = false;
            }
        }
        out
    }
}

struct ElementEval<'a> {
    alg: &'a Algebra,
}

impl Evaluator for ElementEval<'_> {
    type Value = CrossedElement;

    fn number(&self, r: &Rational) -> CrossedElement {
        self.alg.constant(r.clone())
    }

    fn ident(&self, name: &str, column: usize) -> std::result::Result<CrossedElement, ParseError> {
        self.alg
            .symbol(name)
            .ok_or_else(|| ParseError::new(column, format!("unknown symbol `{name}`")))
    }

    fn add(&self, a: &CrossedElement, b: &CrossedElement) -> CrossedElement {
        a + b
    }

    fn neg(&self, a: &CrossedElement) -> CrossedElement {
        -a
    }

    fn mul(&self, a: &CrossedElement, b: &CrossedElement) -> CrossedElement {
        self.alg.mul(a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::rat;

    fn nf(alg: &Algebra, s: &str) -> String {
        alg.format(&alg.parse_element(s).unwrap())
    }

    #[test]
    fn weyl_products() {
        let w = Algebra::load("weyl").unwrap();
        assert_eq!(nf(&w, "d*x"), "x*g1 + 1");
        assert_eq!(nf(&w, "d^2*x"), "x*g1^2 + 2*g1");
        assert_eq!(nf(&w, "(x*d)^2"), "x^2*g1^2 + x*g1");
        assert_eq!(nf(&w, "d*x - x*d"), "1");
        assert_eq!(nf(&w, "x^2*d^2*1/2 + (1 + x*d)*(2 - x*d)*1/2"), "1");
        let e = w.parse_element("x*d + 3").unwrap();
        assert_eq!(w.mul(&e, &w.one()), e);
    }

    #[test]
    fn heisenberg_swap() {
        let h = Algebra::load("heisenberg").unwrap();
        assert_eq!(nf(&h, "g2*g1"), "g1*g2 - g3");
        assert_eq!(nf(&h, "g2*g1 - g1*g2"), "-g3");
        assert_eq!(nf(&h, "g3*g1"), "g1*g3");
    }

    #[test]
    fn degrees_and_types() {
        let w = Algebra::load("weyl").unwrap();
        assert_eq!(w.parse_element("x^2*d").unwrap().total_degree(), Degree::Finite(3));
        assert_eq!(w.one().total_degree(), Degree::Finite(0));
        assert_eq!(w.parse_element("x*d^2 + x^3").unwrap().total_degree(), Degree::Finite(3));
        assert_eq!(w.zero().total_degree(), Degree::Bottom);
        let b = Algebra::load("weyl-ext-abelian").unwrap();
        let e = b.parse_element("x^2*g1*g2^3 + x*g1^2").unwrap();
        assert_eq!(e.type_of(OrderRule::DegLex).unwrap(), ExpTuple::new(vec![1, 3]));
        let e = b.parse_element("g1*g2^3 + g1^2").unwrap();
        assert_eq!(e.type_of(OrderRule::TrimmedLengthLex).unwrap(), ExpTuple::new(vec![1, 3]));
        assert_eq!(b.constant(rat(5, 2)).type_of(OrderRule::DegLex).unwrap(), ExpTuple::zeros(2));
        assert!(matches!(b.zero().type_of(OrderRule::DegLex), Err(Error::ZeroElement)));
    }

    #[test]
    fn filtration_indices() {
        let h = Algebra::load("heisenberg-ext").unwrap();
        assert_eq!(h.parse_element("x*g1^4").unwrap().filtration_index().unwrap(), ExpTuple::zeros(2));
        assert_eq!(h.parse_element("g2^3").unwrap().filtration_index().unwrap(), ExpTuple::new(vec![3, 0]));
        let e = h.parse_element("x*g1^5*g2 + g3^2").unwrap();
        assert_eq!(e.filtration_index().unwrap(), ExpTuple::new(vec![0, 2]));
        let f = h.parse_element("g2 + g3").unwrap();
        assert_eq!(f.filtration_index().unwrap(), ExpTuple::new(vec![1, 0]));
        assert!(h.zero().filtration_index().is_err());
    }

    #[test]
    fn basis_counts() {
        let w = Algebra::load("weyl").unwrap();
        for d in 0..=6u32 {
            assert_eq!(w.pbw_basis(d).len() as u32, (d + 1) * (d + 2) / 2);
        }
        assert_eq!(w.pbw_basis(0), vec![BasisLabel { coef: ExpTuple::zeros(1), pbw: ExpTuple::zeros(1) }]);
        assert_eq!(Algebra::load("heisenberg").unwrap().pbw_basis(2).len(), 10);
        // x3 occurs at most to the first power: 10 + 6 reduced monomials.
        let s = Algebra::load("sphere:3").unwrap();
        assert_eq!(s.pbw_basis(3).len(), 16);
    }

    #[test]
    fn freeness_reports() {
        for name in ["heisenberg", "weyl-ext-abelian"] {
            let r = Algebra::load(name).unwrap().check_a1_freeness(4).unwrap();
            assert_eq!(r.verdict, Verdict::Pass, "{name}");
        }
        let r = Algebra::load("heisenberg").unwrap().check_a1_freeness(0).unwrap();
        assert_eq!(r.rows, vec![FreenessRow { degree: 0, dim_b: 1, products: 1, rank: 1 }]);
        assert!(Algebra::load("weyl").unwrap().check_a1_freeness(3).is_err());
    }

    #[test]
    fn unknown_symbol_column() {
        let w = Algebra::load("weyl").unwrap();
        let err = w.parse_element("x*d + y").unwrap_err();
        assert_eq!(err.column, 6);
    }
}
