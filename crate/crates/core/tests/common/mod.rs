//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use crossprod::{Algebra, CommPoly, CrossedElement, Rational};
use num_traits::{One, Zero};

/// `Σ c·x^i ∂^j` in the first Weyl algebra, keyed by `(i, j)`.
pub type WeylPoly = BTreeMap<(u32, u32), Rational>;

fn falling(c: u32, k: u32) -> u64 {
    (0..k).map(|t| (c - t) as u64).product()
}

fn binomial(n: u32, k: u32) -> u64 {
    (0..k).fold(1u64, |acc, t| acc * (n - t) as u64 / (t + 1) as u64)
}

fn add(p: &mut WeylPoly, key: (u32, u32), c: Rational) {
    let e = p.entry(key).or_insert_with(Rational::zero);
    *e += c;
    if e.is_zero() {
        p.remove(&key);
    }
}

/// Product by `∂^b x^c = Σₖ C(b,k)·c!/(c−k)!·x^{c−k} ∂^{b−k}`.
pub fn weyl_mul(p: &WeylPoly, q: &WeylPoly) -> WeylPoly {
    let mut out = WeylPoly::new();
    for (&(a, b), c1) in p {
        for (&(c, d), c2) in q {
            for k in 0..=b.min(c) {
                let coeff = Rational::from_integer((binomial(b, k) * falling(c, k)).into());
                add(&mut out, (a + c - k, b - k + d), c1 * c2 * coeff);
            }
        }
    }
    out
}

pub fn weyl_monomial(i: u32, j: u32, c: i64) -> WeylPoly {
    let mut p = WeylPoly::new();
    add(&mut p, (i, j), Rational::from_integer(c.into()));
    p
}

/// Evaluates a word such as `d^2*x*d*x^3` letter by letter.
pub fn weyl_word(word: &str) -> WeylPoly {
    word.split('*').fold(weyl_monomial(0, 0, 1), |acc, tok| {
        let (base, exp) = tok.split_once('^').unwrap_or((tok, "1"));
        let e: u32 = exp.parse().unwrap();
        let factor = match base {
            "x" => weyl_monomial(e, 0, 1),
            "d" => weyl_monomial(0, e, 1),
            n => weyl_monomial(0, 0, n.parse().unwrap()),
        };
        weyl_mul(&acc, &factor)
    })
}

pub fn weyl_from_element(e: &CrossedElement) -> WeylPoly {
    let mut p = WeylPoly::new();
    for (label, c) in e.coordinates() {
        add(&mut p, (label.coef.get(0), label.pbw.get(0)), c.clone());
    }
    p
}

pub fn weyl_parse(w: &Algebra, src: &str) -> WeylPoly {
    weyl_from_element(&w.parse_element(src).unwrap())
}

pub fn weyl_is_one(p: &WeylPoly) -> bool {
    p.len() == 1 && p.get(&(0, 0)).is_some_and(|c| c.is_one())
}

pub fn weyl_sum(p: &WeylPoly, q: &WeylPoly) -> WeylPoly {
    let mut out = p.clone();
    for (k, c) in q {
        add(&mut out, *k, c.clone());
    }
    out
}

/// Value of a commutative polynomial at a rational point.
pub fn eval(p: &CommPoly, point: &[Rational]) -> Rational {
    p.terms().fold(Rational::zero(), |acc, (e, c)| {
        let mono = e
            .entries()
            .iter()
            .zip(point)
            .fold(Rational::one(), |m, (&k, v)| m * num_traits::pow(v.clone(), k as usize));
        acc + c * mono
    })
}

/// The base-ring part of an element without generators.
pub fn as_poly(e: &CrossedElement) -> CommPoly {
    e.coefficient(&crossprod::ExpTuple::zeros(e.ngens()))
}

pub fn choose(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, t| acc * (n - t) / (t + 1))
}
