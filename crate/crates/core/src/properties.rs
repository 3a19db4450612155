//! Seeded randomized testers for primality of subalgebras, the graded
//! lemma chain, and multiplicativity of the `(g₂..gₙ)` filtration.
//!
//! A `pass` means no violation was found at the stated bounds. Every
//! reported violation has been re-checked from scratch.
//!
//! Samples are sums of one to three terms. Each term has a coefficient in
//! `{−3..3}∖{0}` divided by a random `k ∈ {1, 2, 3}` and exponents drawn
//! geometrically with mean 1.5, truncated at the degree bound. Trial `i`
//! uses its own generator seeded from `(seed, i)`, so reports do not depend
//! on thread scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::coefficients::{CommPoly, Rational};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseVec};
use crate::pbw::{Algebra, AlgebraPresentation, BasisLabel, CrossedElement};
use crate::semigroup::{check_ordered_like, ExpTuple, FiniteSemigroupSample, OrderRule};
use crate::Verdict;

/// Number of violations kept in a report; the count covers all of them.
const KEPT_VIOLATIONS: usize = 5;

/// Which degree counts for a degree-zero part.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Grading {
    /// Total degree in the base variables and generators.
    Total,
    /// PBW exponent tuple, so the degree-zero part is the base ring.
    Pbw,
    /// Everything has degree zero.
    Trivial,
}

impl Grading {
    pub fn parse(s: &str) -> Option<Grading> {
        match s {
            "total" => Some(Grading::Total),
            "pbw" => Some(Grading::Pbw),
            "trivial" => Some(Grading::Trivial),
            _ => None,
        }
    }
}

/// A subset of the algebra with a bounded membership test.
#[derive(Clone, Debug)]
pub enum SubalgebraSpec {
    DegreeZero(Grading),
    /// `A[g₁; δ₁]`: elements mentioning no generator besides `g₁`.
    OreA1,
    /// The subalgebra generated by `generators`, spanned by words of degree
    /// at most `expansion_bound`.
    Generated { generators: Vec<CrossedElement>, expansion_bound: u32 },
    /// The right ideal generated by `generators`, with cofactors of degree
    /// at most `cofactor_bound`.
    Ideal { generators: Vec<CrossedElement>, cofactor_bound: u32 },
}

impl SubalgebraSpec {
    pub fn describe(&self, alg: &Algebra) -> String {
        let list = |g: &[CrossedElement]| g.iter().map(|e| alg.format(e)).collect::<Vec<_>>().join(", ");
        match self {
            SubalgebraSpec::DegreeZero(Grading::Total) => "degree-zero part, total degree".into(),
            SubalgebraSpec::DegreeZero(Grading::Pbw) => "degree-zero part, PBW type".into(),
            SubalgebraSpec::DegreeZero(Grading::Trivial) => "degree-zero part, trivial grading".into(),
            SubalgebraSpec::OreA1 => "A[g1]".into(),
            SubalgebraSpec::Generated { generators, expansion_bound } => {
                format!("subalgebra generated by {} (expanded to degree {expansion_bound})", list(generators))
            }
            SubalgebraSpec::Ideal { generators, cofactor_bound } => {
                format!("right ideal ({}) (cofactor bound {cofactor_bound})", list(generators))
            }
        }
    }
}

/// Result of a bounded membership test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    In,
    Out,
    Unknown,
}

fn coords(e: &CrossedElement) -> SparseVec<BasisLabel> {
    e.coordinates().map(|(l, v)| (l, v.clone())).collect()
}

fn is_homogeneous(e: &CrossedElement) -> bool {
    let mut degrees = e.coordinates().map(|(l, _)| l.degree());
    let first = degrees.next();
    degrees.all(|d| Some(d) == first)
}

fn degree(e: &CrossedElement) -> u32 {
    e.total_degree().finite().unwrap_or(0)
}

/// Membership oracle with its spanning data precomputed.
pub struct MembershipOracle<'a> {
    alg: &'a Algebra,
    spec: &'a SubalgebraSpec,
    span: Option<Echelon<BasisLabel>>,
    /// Plain polynomial ring with homogeneous generators, where a failed
    /// search is conclusive up to the relevant degree.
    graded_commutative: bool,
}

impl<'a> MembershipOracle<'a> {
    pub fn new(alg: &'a Algebra, spec: &'a SubalgebraSpec) -> Result<Self> {
        let commutative = alg.ngens() == 0 && alg.presentation().base().quotient().is_none();
        let (span, graded_commutative) = match spec {
            SubalgebraSpec::Generated { generators, expansion_bound } => {
                if generators.iter().any(CrossedElement::is_zero) {
                    return Err(Error::ZeroElement);
                }
                let mut ech = Echelon::new();
                ech.insert(coords(&alg.one()), None);
                let mut frontier = vec![alg.one()];
                while let Some(w) = frontier.pop() {
                    for g in generators {
                        let p = alg.multiply(&w, g)?;
                        if p.is_zero() || degree(&p) > *expansion_bound {
                            continue;
                        }
                        if let crate::linalg::Inserted::Independent = ech.insert(coords(&p), None) {
                            frontier.push(p);
                        }
                    }
                }
                (Some(ech), commutative && generators.iter().all(is_homogeneous))
            }
            SubalgebraSpec::Ideal { generators, cofactor_bound } => {
                if generators.iter().any(CrossedElement::is_zero) {
                    return Err(Error::ZeroElement);
                }
                let labels = alg.pbw_basis(*cofactor_bound);
                let products: Vec<CrossedElement> = generators
                    .par_iter()
                    .flat_map_iter(|g| labels.iter().map(move |l| alg.mul(g, &l.to_element())))
                    .collect();
                let mut ech = Echelon::new();
                for p in &products {
                    ech.insert(coords(p), None);
                }
                (Some(ech), commutative)
            }
            _ => (None, false),
        };
        Ok(MembershipOracle { alg, spec, span, graded_commutative })
    }

    pub fn test(&self, e: &CrossedElement) -> Membership {
        let yes_no = |b: bool| if b { Membership::In } else { Membership::Out };
        match self.spec {
            SubalgebraSpec::DegreeZero(Grading::Trivial) => Membership::In,
            SubalgebraSpec::DegreeZero(Grading::Total) => yes_no(degree(e) == 0),
            SubalgebraSpec::DegreeZero(Grading::Pbw) => yes_no(e.terms().all(|(a, _)| a.is_zero())),
            SubalgebraSpec::OreA1 => yes_no(e.involves_only_first_generator()),
            SubalgebraSpec::Generated { expansion_bound, .. } => {
                if self.reduces_to_zero(e) {
                    Membership::In
                } else if self.graded_commutative && degree(e) <= *expansion_bound {
                    // Graded subalgebra: each homogeneous piece is a span of
                    // words of that degree.
                    Membership::Out
                } else {
                    Membership::Unknown
                }
            }
            SubalgebraSpec::Ideal { generators, cofactor_bound } => {
                if self.reduces_to_zero(e) {
                    return Membership::In;
                }
                if !self.graded_commutative {
                    return Membership::Unknown;
                }
                let d = degree(e);
                let conclusive = if generators.len() == 1 {
                    *cofactor_bound >= d.saturating_sub(degree(&generators[0]))
                } else {
                    generators.iter().all(is_homogeneous) && *cofactor_bound >= d
                };
                if conclusive {
                    Membership::Out
                } else {
                    Membership::Unknown
                }
            }
        }
    }

    fn reduces_to_zero(&self, e: &CrossedElement) -> bool {
        let span = self.span.as_ref().expect("span-based subset");
        span.reduce(coords(e)).0.is_empty()
    }

    pub fn algebra(&self) -> &Algebra {
        self.alg
    }
}

/// A pair `(a, b)` breaking the property, with `a·b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub a: String,
    pub b: String,
    pub product: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub property: String,
    pub subject: String,
    pub trials: usize,
    pub seed: u64,
    pub degree_bound: u32,
    /// Trials whose memberships were all decided.
    pub informative: usize,
    pub violation_count: usize,
    /// The first few violations in trial order.
    pub violations: Vec<Violation>,
    pub verdict: Verdict,
}

/// Deterministic per-trial generator.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn geometric(rng: &mut impl Rng) -> u32 {
    let mut k = 0;
    while rng.gen_bool(0.6) {
        k += 1;
    }
    k
}

/// A random nonzero element of total degree at most `degree_bound`, drawn
/// from the documented distribution.
pub fn sample_element(alg: &Algebra, rng: &mut impl Rng, degree_bound: u32) -> CrossedElement {
    let base = alg.presentation().base();
    loop {
        let mut e = alg.zero();
        for _ in 0..rng.gen_range(1..=3) {
            let mut coef: Vec<u32> = (0..alg.nvars()).map(|_| geometric(rng)).collect();
            let mut pbw: Vec<u32> = (0..alg.ngens()).map(|_| geometric(rng)).collect();
            while coef.iter().chain(&pbw).sum::<u32>() > degree_bound {
                let slots: Vec<&mut u32> = coef.iter_mut().chain(pbw.iter_mut()).filter(|x| **x > 0).collect();
                let k = rng.gen_range(0..slots.len());
                if let Some(x) = slots.into_iter().nth(k) {
                    *x -= 1;
                }
            }
            let mut num = rng.gen_range(1i64..=3);
            if rng.gen_bool(0.5) {
                num = -num;
            }
            let c = Rational::new(num.into(), rng.gen_range(1i64..=3).into());
            let r = base.normalize(&CommPoly::monomial(ExpTuple::new(coef), c));
            e = &e + &CrossedElement::monomial(r, ExpTuple::new(pbw));
        }
        if !e.is_zero() {
            return e;
        }
    }
}

enum Trial {
    Undecided,
    Clean,
    Broken(CrossedElement, CrossedElement, CrossedElement),
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Predicate {
    CompletelyPrime,
    StronglyCompletelyPrime,
}

impl Predicate {
    fn name(self) -> &'static str {
        match self {
            Predicate::CompletelyPrime => "completely-prime",
            Predicate::StronglyCompletelyPrime => "strongly-completely-prime",
        }
    }

    fn judge(self, a: Membership, b: Membership, ab: Membership) -> Option<bool> {
        use Membership::*;
        match self {
            Predicate::CompletelyPrime => match (a, b, ab) {
                (Out, Out, In) => Some(false),
                (Out, Out, Out) => Some(true),
                _ => None,
            },
            Predicate::StronglyCompletelyPrime => match (a, b, ab) {
                (_, _, Out) => Some(true),
                (In, In, In) => Some(true),
                (Out, _, In) | (_, Out, In) => Some(false),
                _ => None,
            },
        }
    }
}

fn run_primality(
    alg: &Algebra,
    sub: &SubalgebraSpec,
    predicate: Predicate,
    trials: usize,
    seed: u64,
    degree_bound: u32,
) -> Result<PropertyReport> {
    let oracle = MembershipOracle::new(alg, sub)?;
    let outcomes: Vec<Trial> = (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(seed, i);
            let a = sample_element(alg, &mut rng, degree_bound);
            let b = sample_element(alg, &mut rng, degree_bound);
            let (ma, mb) = (oracle.test(&a), oracle.test(&b));
            if predicate == Predicate::CompletelyPrime && (ma != Membership::Out || mb != Membership::Out) {
                return Trial::Undecided;
            }
            let ab = alg.mul(&a, &b);
            match predicate.judge(ma, mb, oracle.test(&ab)) {
                None => Trial::Undecided,
                Some(true) => Trial::Clean,
                Some(false) => Trial::Broken(a, b, ab),
            }
        })
        .collect();
    let fresh = Algebra::new(alg.presentation().clone());
    let recheck = MembershipOracle::new(&fresh, sub)?;
    let mut report = PropertyReport {
        property: predicate.name().into(),
        subject: sub.describe(alg),
        trials,
        seed,
        degree_bound,
        informative: 0,
        violation_count: 0,
        violations: Vec::new(),
        verdict: Verdict::Pass,
    };
    for t in outcomes {
        match t {
            Trial::Undecided => {}
            Trial::Clean => report.informative += 1,
            Trial::Broken(a, b, ab) => {
                let product = fresh.multiply(&a, &b)?;
                let confirmed = product == ab
                    && predicate.judge(recheck.test(&a), recheck.test(&b), recheck.test(&product)) == Some(false);
                if !confirmed {
                    return Err(Error::Certificate("violation failed re-verification".into()));
                }
                report.informative += 1;
                report.violation_count += 1;
                if report.violations.len() < KEPT_VIOLATIONS {
                    report.violations.push(Violation { a: alg.format(&a), b: alg.format(&b), product: alg.format(&ab) });
                }
            }
        }
    }
    if report.violation_count > 0 {
        report.verdict = Verdict::Fail;
    }
    Ok(report)
}

/// Samples `a, b ∉ sub` and reports any with `a·b ∈ sub`.
pub fn check_completely_prime(
    alg: &Algebra,
    sub: &SubalgebraSpec,
    trials: usize,
    seed: u64,
    degree_bound: u32,
) -> Result<PropertyReport> {
    run_primality(alg, sub, Predicate::CompletelyPrime, trials, seed, degree_bound)
}

/// Samples pairs and reports any with `a·b ∈ sub` but `a ∉ sub` or
/// `b ∉ sub`. Uses the same pairs as [`check_completely_prime`] for equal
/// arguments, so a violation there is a violation here.
pub fn check_scp(alg: &Algebra, sub: &SubalgebraSpec, trials: usize, seed: u64, degree_bound: u32) -> Result<PropertyReport> {
    run_primality(alg, sub, Predicate::StronglyCompletelyPrime, trials, seed, degree_bound)
}

/// Why a grading is not usable, if it is not.
pub fn grading_obstruction(pres: &AlgebraPresentation, grading: Grading) -> Option<String> {
    let n = pres.ngens();
    let lie = pres.lie();
    match grading {
        Grading::Trivial => None,
        Grading::Pbw => {
            let commuting = pres.derivations().iter().all(|d| d.is_zero())
                && (0..n).all(|i| (i + 1..n).all(|j| lie.structure_constants(i, j).is_empty() && lie.cocycle(i, j).is_none()));
            (!commuting).then(|| "generators do not commute with everything, so PBW type is not a grading".into())
        }
        Grading::Total => {
            let homogeneous_of = |p: &CommPoly, d: u32| p.is_zero() || (p.is_homogeneous() && p.total_degree().finite() == Some(d));
            if let Some(q) = pres.base().quotient() {
                if !q.relation().is_homogeneous() {
                    return Some("the base relation is not homogeneous".into());
                }
            }
            let derivations_ok = pres.derivations().iter().all(|d| d.images().iter().all(|p| homogeneous_of(p, 2)));
            let brackets_ok = (0..n).all(|i| {
                (i + 1..n).all(|j| {
                    lie.structure_constants(i, j).is_empty() && lie.cocycle(i, j).is_none_or(|a| homogeneous_of(a, 2))
                })
            });
            (!(derivations_ok && brackets_ok))
                .then(|| "the defining relations are not homogeneous for total degree".into())
        }
    }
}

/// Looks for homogeneous zero divisors among products of basis monomials
/// of degree at most `bound`.
pub fn homogeneous_zero_divisor(alg: &Algebra, bound: u32) -> Option<(CrossedElement, CrossedElement)> {
    let labels = alg.pbw_basis(bound);
    for (i, x) in labels.iter().enumerate() {
        for y in &labels[i..] {
            let (xe, ye) = (x.to_element(), y.to_element());
            if alg.mul(&xe, &ye).is_zero() {
                return Some((xe, ye));
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaChainReport {
    pub verdict: Verdict,
    pub grading: Grading,
    pub reason: Option<String>,
    pub completely_prime: Option<PropertyReport>,
    pub strongly_completely_prime: Option<PropertyReport>,
}

/// Runs both primality checks on the degree-zero part of a graded domain.
///
/// Refuses (inconclusive) when the grading semigroup fails the strict
/// ordered-like check, when the relations are not homogeneous, or when a
/// homogeneous zero divisor turns up.
pub fn check_graded_lemma_chain(
    alg: &Algebra,
    grading: Grading,
    trials: usize,
    seed: u64,
    degree_bound: u32,
) -> Result<LemmaChainReport> {
    let refuse = |reason: String| LemmaChainReport {
        verdict: Verdict::Inconclusive,
        grading,
        reason: Some(reason),
        completely_prime: None,
        strongly_completely_prime: None,
    };
    let semigroup = match grading {
        Grading::Trivial => FiniteSemigroupSample::nat_plus(0),
        Grading::Total => FiniteSemigroupSample::nat_plus(4),
        Grading::Pbw => FiniteSemigroupSample::natk_plus(alg.ngens().clamp(1, 2), 2),
    };
    let ordered = check_ordered_like(&semigroup, 3, true);
    if ordered.verdict != Verdict::Pass {
        return Ok(refuse("the grading semigroup is not ordered-like".into()));
    }
    if let Some(why) = grading_obstruction(alg.presentation(), grading) {
        return Ok(refuse(why));
    }
    if let Some((x, y)) = homogeneous_zero_divisor(alg, degree_bound.min(3)) {
        return Ok(refuse(format!(
            "not a graded domain: ({}) * ({}) = 0",
            alg.format(&x),
            alg.format(&y)
        )));
    }
    let sub = SubalgebraSpec::DegreeZero(grading);
    let cp = check_completely_prime(alg, &sub, trials, seed, degree_bound)?;
    let scp = check_scp(alg, &sub, trials, seed, degree_bound)?;
    let verdict = if cp.verdict == Verdict::Fail || scp.verdict == Verdict::Fail { Verdict::Fail } else { Verdict::Pass };
    Ok(LemmaChainReport { verdict, grading, reason: None, completely_prime: Some(cp), strongly_completely_prime: Some(scp) })
}

/// Checks `index(e₁e₂) ≤ index(e₁) + index(e₂)` in deg-lex order on random
/// pairs, where the index is the deg-lex largest `(g₂..gₙ)` exponent tuple.
pub fn check_filtration_multiplicative(alg: &Algebra, trials: usize, seed: u64, degree_bound: u32) -> Result<PropertyReport> {
    let outcomes: Vec<Option<(CrossedElement, CrossedElement, CrossedElement)>> = (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(seed, i);
            let a = sample_element(alg, &mut rng, degree_bound);
            let b = sample_element(alg, &mut rng, degree_bound);
            let ab = alg.mul(&a, &b);
            (!within_filtration(&a, &b, &ab)).then_some((a, b, ab))
        })
        .collect();
    let mut report = PropertyReport {
        property: "filtration-multiplicative".into(),
        subject: "deg-lex (g2..gn)-exponent filtration".into(),
        trials,
        seed,
        degree_bound,
        informative: trials,
        violation_count: 0,
        violations: Vec::new(),
        verdict: Verdict::Pass,
    };
    let fresh = Algebra::new(alg.presentation().clone());
    for (a, b, ab) in outcomes.into_iter().flatten() {
        if within_filtration(&a, &b, &fresh.multiply(&a, &b)?) {
            return Err(Error::Certificate("violation failed re-verification".into()));
        }
        report.violation_count += 1;
        if report.violations.len() < KEPT_VIOLATIONS {
            report.violations.push(Violation { a: alg.format(&a), b: alg.format(&b), product: alg.format(&ab) });
        }
    }
    if report.violation_count > 0 {
        report.verdict = Verdict::Fail;
    }
    Ok(report)
}

fn within_filtration(a: &CrossedElement, b: &CrossedElement, ab: &CrossedElement) -> bool {
    if ab.is_zero() {
        return true;
    }
    let (ia, ib, iab) = (a.filtration_index(), b.filtration_index(), ab.filtration_index());
    match (ia, ib, iab) {
        (Ok(ia), Ok(ib), Ok(iab)) => OrderRule::DegLex.cmp(&iab, &ia.add(&ib)) != std::cmp::Ordering::Greater,
        _ => true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn span_one_x_squared_is_not_prime() {
        let q = Algebra::load("poly:x").unwrap();
        let sub = SubalgebraSpec::Generated { generators: vec![q.parse_element("x^2").unwrap()], expansion_bound: 8 };
        let r = check_completely_prime(&q, &sub, 2000, 1, 4).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        let v = &r.violations[0];
        assert_eq!(q.parse_element(&v.product).unwrap(), q.mul(&q.parse_element(&v.a).unwrap(), &q.parse_element(&v.b).unwrap()));
        assert!(r.violations.iter().any(|v| {
            let a = q.parse_element(&v.a).unwrap();
            a.total_degree().finite() == Some(1) && a.num_terms() == 1
        }));
    }

    #[test]
    fn ideal_is_not_scp() {
        let q = Algebra::load("poly:x").unwrap();
        let sub = SubalgebraSpec::Ideal { generators: vec![q.variable(0)], cofactor_bound: 6 };
        let r = check_scp(&q, &sub, 500, 3, 3).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
    }

    #[test]
    fn a1_is_scp() {
        for name in ["weyl-ext-abelian", "heisenberg", "heisenberg-ext"] {
            let b = Algebra::load(name).unwrap();
            let r = check_scp(&b, &SubalgebraSpec::OreA1, 500, 11, 4).unwrap();
            assert_eq!(r.verdict, Verdict::Pass, "{name}: {r:?}");
            assert!(r.informative > 400);
        }
    }

    #[test]
    fn lemma_chain() {
        let p = Algebra::load("poly:x,y").unwrap();
        let r = check_graded_lemma_chain(&p, Grading::Total, 300, 5, 4).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
        let q = Algebra::load("poly:x").unwrap();
        assert_eq!(check_graded_lemma_chain(&q, Grading::Trivial, 50, 5, 4).unwrap().verdict, Verdict::Pass);
        let text = "[base]\nvariables = [\"x\"]\nrelation = \"x^2\"\neliminate = \"x\"\n";
        let dual = Algebra::new(AlgebraPresentation::parse_text(text).unwrap());
        let r = check_graded_lemma_chain(&dual, Grading::Total, 50, 5, 4).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert!(r.reason.unwrap().contains("not a graded domain"));
        let w = Algebra::load("weyl").unwrap();
        assert_eq!(check_graded_lemma_chain(&w, Grading::Total, 50, 5, 4).unwrap().verdict, Verdict::Inconclusive);
    }

    #[test]
    fn filtration() {
        for name in ["weyl-ext-abelian", "heisenberg"] {
            let b = Algebra::load(name).unwrap();
            let r = check_filtration_multiplicative(&b, 300, 2, 4).unwrap();
            assert_eq!(r.verdict, Verdict::Pass, "{name}");
        }
    }

    #[test]
    fn deterministic() {
        let b = Algebra::load("heisenberg-ext").unwrap();
        let r1 = check_scp(&b, &SubalgebraSpec::OreA1, 200, 9, 3).unwrap();
        let r2 = check_scp(&b, &SubalgebraSpec::OreA1, 200, 9, 3).unwrap();
        assert_eq!(r1, r2);
    }
}
