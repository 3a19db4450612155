//! Word rewriting into normal form, independent of [`Algebra::multiply`].
//!
//! A word is a product of letters `x_k` (base variables) and `g_i`
//! (generators). Adjacent pairs out of order are rewritten by
//!
//! * `g_i x_k → x_k g_i + δᵢ(x_k)`
//! * `x_k x_l → x_l x_k` for `k > l`
//! * `g_i g_j → g_j g_i − Σ cⱼᵢᵏ g_k − aⱼᵢ` for `i > j`
//!
//! until every word reads `x^c g^α`; the base relation, if any, is applied
//! when the finished words are collected.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{Algebra, CrossedElement};
use crate::coefficients::{CommPoly, Rational};
use crate::error::ParseError;
use crate::expr::{self, Evaluator};
use crate::semigroup::ExpTuple;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Var(usize),
    Gen(usize),
}

/// Which out-of-order pair gets rewritten first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

/// A rational combination of words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WordSum {
    terms: BTreeMap<Vec<Letter>, Rational>,
}

impl WordSum {
    pub fn zero() -> Self {
        WordSum::default()
    }

    pub fn word(letters: Vec<Letter>) -> Self {
        let mut s = WordSum::zero();
        s.add(letters, Rational::one());
        s
    }

    pub fn constant(c: Rational) -> Self {
        let mut s = WordSum::zero();
        s.add(Vec::new(), c);
        s
    }

    pub fn add(&mut self, w: Vec<Letter>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Letter>, &Rational)> {
        self.terms.iter()
    }

    pub fn sum(&self, other: &WordSum) -> WordSum {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> WordSum {
        let mut out = WordSum::zero();
        for (w, v) in &self.terms {
            out.add(w.clone(), v * c);
        }
        out
    }

    /// Concatenation product.
    pub fn concat(&self, other: &WordSum) -> WordSum {
        let mut out = WordSum::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add(w, c1 * c2);
            }
        }
        out
    }
}

fn monomial_letters(e: &ExpTuple) -> Vec<Letter> {
    let mut out = Vec::new();
    for (k, &p) in e.entries().iter().enumerate() {
        out.extend(std::iter::repeat_n(Letter::Var(k), p as usize));
    }
    out
}

fn out_of_order(a: Letter, b: Letter) -> bool {
    match (a, b) {
        (Letter::Gen(_), Letter::Var(_)) => true,
        (Letter::Var(k), Letter::Var(l)) => k > l,
        (Letter::Gen(i), Letter::Gen(j)) => i > j,
        (Letter::Var(_), Letter::Gen(_)) => false,
    }
}

impl Algebra {
    /// Words for a polynomial coefficient, one per term.
    pub fn coefficient_words(&self, r: &CommPoly) -> WordSum {
        let mut s = WordSum::zero();
        for (e, c) in r.terms() {
            s.add(monomial_letters(e), c.clone());
        }
        s
    }

    /// The element written back as words `x^c g^α`.
    pub fn element_words(&self, e: &CrossedElement) -> WordSum {
        let mut s = WordSum::zero();
        for (alpha, r) in e.terms() {
            let mut gens = Vec::new();
            for (i, &p) in alpha.entries().iter().enumerate() {
                gens.extend(std::iter::repeat_n(Letter::Gen(i), p as usize));
            }
            for (w, c) in self.coefficient_words(r).terms() {
                let mut w = w.clone();
                w.extend_from_slice(&gens);
                s.add(w, c.clone());
            }
        }
        s
    }

    /// Parses an expression into words without multiplying anything out.
    pub fn parse_words(&self, src: &str) -> Result<WordSum, ParseError> {
        let e = expr::parse(src)?;
        expr::evaluate(&e, &WordEval { alg: self })
    }

    /// Rewrites `words` to normal form with the given strategy.
    pub fn rewrite(&self, words: &WordSum, strategy: Strategy) -> CrossedElement {
        let base = self.presentation().base();
        let lie = self.presentation().lie();
        let derivs = self.presentation().derivations();
        let m = self.nvars();
        let n = self.ngens();
        let mut pending = words.clone();
        let mut out = self.zero();
        while let Some((w, c)) = pending.terms.pop_first() {
            let mut positions = (0..w.len().saturating_sub(1)).filter(|&p| out_of_order(w[p], w[p + 1]));
            let p = match strategy {
                Strategy::Leftmost => positions.next(),
                Strategy::Rightmost => positions.next_back(),
            };
            let Some(p) = p else {
                let mut coef = vec![0u32; m];
                let mut alpha = vec![0u32; n];
                for l in &w {
                    match l {
                        Letter::Var(k) => coef[*k] += 1,
                        Letter::Gen(i) => alpha[*i] += 1,
                    }
                }
                let r = base.normalize(&CommPoly::monomial(ExpTuple::new(coef), c));
                out.add_term(ExpTuple::new(alpha), r);
                continue;
            };
            let splice = |middle: &[Letter]| {
                let mut v = w[..p].to_vec();
                v.extend_from_slice(middle);
                v.extend_from_slice(&w[p + 2..]);
                v
            };
            match (w[p], w[p + 1]) {
                (Letter::Gen(i), Letter::Var(k)) => {
                    pending.add(splice(&[Letter::Var(k), Letter::Gen(i)]), c.clone());
                    for (e, dc) in derivs[i].images()[k].terms() {
                        pending.add(splice(&monomial_letters(e)), &c * dc);
                    }
                }
                (Letter::Var(k), Letter::Var(l)) => {
                    pending.add(splice(&[Letter::Var(l), Letter::Var(k)]), c);
                }
                (Letter::Gen(i), Letter::Gen(j)) => {
                    pending.add(splice(&[Letter::Gen(j), Letter::Gen(i)]), c.clone());
                    for (k, sc) in lie.structure_constants(j, i) {
                        pending.add(splice(&[Letter::Gen(*k)]), -(&c * sc));
                    }
                    if let Some(a) = lie.cocycle(j, i) {
                        for (e, ac) in a.terms() {
                            pending.add(splice(&monomial_letters(e)), -(&c * ac));
                        }
                    }
                }
                (Letter::Var(_), Letter::Gen(_)) => unreachable!("pair is in order"),
            }
        }
        out
    }

    /// Normal form of an expression by rewriting, leftmost pair first.
    pub fn normal_form(&self, src: &str) -> Result<CrossedElement, ParseError> {
        Ok(self.rewrite(&self.parse_words(src)?, Strategy::Leftmost))
    }
}

struct WordEval<'a> {
    alg: &'a Algebra,
}

impl Evaluator for WordEval<'_> {
    type Value = WordSum;

    fn number(&self, r: &Rational) -> WordSum {
        WordSum::constant(r.clone())
    }

    fn ident(&self, name: &str, column: usize) -> Result<WordSum, ParseError> {
        let pres = self.alg.presentation();
        if let Some(k) = pres.base().names().iter().position(|n| n == name) {
            return Ok(WordSum::word(vec![Letter::Var(k)]));
        }
        pres.lie()
            .generator_index(name)
            .map(|i| WordSum::word(vec![Letter::Gen(i)]))
            .ok_or_else(|| ParseError::new(column, format!("unknown symbol `{name}`")))
    }

    fn add(&self, a: &WordSum, b: &WordSum) -> WordSum {
        a.sum(b)
    }

    fn neg(&self, a: &WordSum) -> WordSum {
        a.scale(&-Rational::one())
    }

    fn mul(&self, a: &WordSum, b: &WordSum) -> WordSum {
        a.concat(b)
    }
}
