use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::rewrite::{Strategy, WordSum};
use super::{Algebra, CrossedElement};
use crate::coefficients::{CommPoly, Rational};
use crate::semigroup::ExpTuple;
use crate::Verdict;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConsistencyReport {
    pub verdict: Verdict,
    pub checks: usize,
    /// Offending word or generator triple.
    pub witness: Option<String>,
    pub reason: Option<String>,
}

impl ConsistencyReport {
    fn fail(checks: usize, witness: String, reason: &str) -> Self {
        ConsistencyReport { verdict: Verdict::Fail, checks, witness: Some(witness), reason: Some(reason.into()) }
    }
}

#[derive(Clone, Debug)]
enum Item {
    Coef(CommPoly),
    Gen(usize),
}

/// Checks Jacobi on the structure constants, that every derivation
/// preserves the base relation, and associativity on all letter triples
/// plus `trials` random words of length at most 4.
///
/// Products are compared three ways: left-nested, right-nested, and by
/// rewriting the concatenated word.
pub fn consistency_check(alg: &Algebra, trials: usize, seed: u64) -> ConsistencyReport {
    let pres = alg.presentation();
    let lie = pres.lie();
    let n = alg.ngens();
    let m = alg.nvars();
    let mut checks = 0;

    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                checks += 1;
                let mut total = vec![Rational::zero(); n];
                for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                    let inner = lie.bracket_vector(b, c);
                    for (l, coeff) in inner.iter().enumerate() {
                        if coeff.is_zero() {
                            continue;
                        }
                        for (t, v) in lie.bracket_vector(a, l).iter().enumerate() {
                            total[t] += coeff * v;
                        }
                    }
                }
                if total.iter().any(|c| !c.is_zero()) {
                    let names = lie.generator_names();
                    return ConsistencyReport::fail(
                        checks,
                        format!("{}, {}, {}", names[i], names[j], names[k]),
                        "Jacobi identity fails",
                    );
                }
            }
        }
    }

    if let Some(q) = pres.base().quotient() {
        for (i, d) in pres.derivations().iter().enumerate() {
            checks += 1;
            let image = d.apply(q.relation(), Some(q)).expect("derivation arity");
            if !image.is_zero() {
                return ConsistencyReport::fail(
                    checks,
                    lie.generator_names()[i].clone(),
                    "derivation does not preserve the base relation",
                );
            }
        }
    }

    let mut letters: Vec<Item> = (0..m).map(|k| Item::Coef(CommPoly::var(m, k))).collect();
    letters.extend((0..n).map(Item::Gen));
    for a in &letters {
        for b in &letters {
            for c in &letters {
                checks += 1;
                let word = [a.clone(), b.clone(), c.clone()];
                if let Some(reason) = compare_routes(alg, &word) {
                    return ConsistencyReport::fail(checks, render(alg, &word), reason);
                }
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        checks += 1;
        let len = rng.gen_range(1..=4);
        let word: Vec<Item> = (0..len)
            .map(|_| {
                if n == 0 || rng.gen_bool(0.4) {
                    Item::Coef(random_coefficient(&mut rng, m))
                } else {
                    Item::Gen(rng.gen_range(0..n))
                }
            })
            .collect();
        if let Some(reason) = compare_routes(alg, &word) {
            return ConsistencyReport::fail(checks, render(alg, &word), reason);
        }
    }
    ConsistencyReport { verdict: Verdict::Pass, checks, witness: None, reason: None }
}

fn random_coefficient(rng: &mut ChaCha8Rng, m: usize) -> CommPoly {
    let mut p = CommPoly::zero(m);
    for _ in 0..rng.gen_range(1..=2) {
        let exp: Vec<u32> = (0..m).map(|_| rng.gen_range(0..=2)).collect();
        let c = Rational::from_integer(rng.gen_range(-3i64..=3).into());
        p = &p + &CommPoly::monomial(ExpTuple::new(exp), c);
    }
    if p.is_zero() {
        CommPoly::one(m)
    } else {
        p
    }
}

fn item_element(alg: &Algebra, it: &Item) -> CrossedElement {
    match it {
        Item::Coef(r) => alg.coefficient(r.clone()),
        Item::Gen(i) => alg.generator(*i),
    }
}

fn compare_routes(alg: &Algebra, word: &[Item]) -> Option<&'static str> {
    let elems: Vec<CrossedElement> = word.iter().map(|it| item_element(alg, it)).collect();
    let left = elems[1..].iter().fold(elems[0].clone(), |acc, e| alg.mul(&acc, e));
    let right = elems[..elems.len() - 1]
        .iter()
        .rev()
        .fold(elems[elems.len() - 1].clone(), |acc, e| alg.mul(e, &acc));
    if left != right {
        return Some("left- and right-nested products differ");
    }
    let words = word.iter().fold(WordSum::constant(Rational::from_integer(1.into())), |acc, it| {
        let w = match it {
            Item::Coef(r) => alg.coefficient_words(r),
            Item::Gen(i) => WordSum::word(vec![super::Letter::Gen(*i)]),
        };
        acc.concat(&w)
    });
    if alg.rewrite(&words, Strategy::Leftmost) != left {
        return Some("rewriting and multiplication disagree");
    }
    None
}

fn render(alg: &Algebra, word: &[Item]) -> String {
    let pres = alg.presentation();
    word.iter()
        .map(|it| match it {
            Item::Coef(r) => format!("({})", pres.base().format(r)),
            Item::Gen(i) => pres.lie().generator_names()[*i].clone(),
        })
        .collect::<Vec<_>>()
        .join("*")
}
