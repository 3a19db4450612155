//! Exponent tuples, term orders on them, and finite semigroup samples with
//! the ordered-like property checker.

use std::cmp::Ordering;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::Verdict;

/// A fixed-length tuple of nonnegative integers: a monomial exponent, the
/// type of an element, or a filtration index.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct ExpTuple(Vec<u32>);

impl ExpTuple {
    pub fn new(entries: Vec<u32>) -> Self {
        ExpTuple(entries)
    }

    pub fn zeros(len: usize) -> Self {
        ExpTuple(vec![0; len])
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = vec![0; len];
        v[i] = 1;
        ExpTuple(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn entries_mut(&mut self) -> &mut [u32] {
        &mut self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    /// Sum of the entries.
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Number of entries left after dropping trailing zeros.
    pub fn trimmed_len(&self) -> usize {
        self.0.iter().rposition(|&e| e != 0).map_or(0, |p| p + 1)
    }

    pub fn checked_add(&self, other: &ExpTuple) -> Result<ExpTuple> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch(self.len(), other.len()));
        }
        Ok(ExpTuple(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    /// Componentwise sum; panics on a length mismatch.
    pub fn add(&self, other: &ExpTuple) -> ExpTuple {
        self.checked_add(other).expect("exponent tuple lengths differ")
    }

    /// Componentwise difference, `None` when some entry would go negative.
    pub fn checked_sub(&self, other: &ExpTuple) -> Option<ExpTuple> {
        assert_eq!(self.len(), other.len());
        let mut v = Vec::with_capacity(self.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            v.push(a.checked_sub(*b)?);
        }
        Some(ExpTuple(v))
    }

    pub fn componentwise_max(&self, other: &ExpTuple) -> ExpTuple {
        assert_eq!(self.len(), other.len());
        ExpTuple(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn componentwise_le(&self, other: &ExpTuple) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Concatenation, used to split or join base and generator exponents.
    pub fn concat(&self, other: &ExpTuple) -> ExpTuple {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        ExpTuple(v)
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> ExpTuple {
        ExpTuple(self.0[range].to_vec())
    }
}

impl From<Vec<u32>> for ExpTuple {
    fn from(v: Vec<u32>) -> Self {
        ExpTuple(v)
    }
}

impl fmt::Display for ExpTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// All tuples of the given length with entry sum at most `degree`, ordered
/// by degree and then lexicographically descending within a degree.
pub fn tuples_up_to_degree(len: usize, degree: u32) -> Vec<ExpTuple> {
    let mut out = Vec::new();
    for d in 0..=degree {
        tuples_of_degree(len, d, &mut Vec::with_capacity(len), &mut out);
    }
    out
}

fn tuples_of_degree(len: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<ExpTuple>) {
    if prefix.len() + 1 == len {
        prefix.push(d);
        out.push(ExpTuple(prefix.clone()));
        prefix.pop();
        return;
    }
    if len == 0 {
        if d == 0 {
            out.push(ExpTuple(Vec::new()));
        }
        return;
    }
    for first in (0..=d).rev() {
        prefix.push(first);
        tuples_of_degree(len, d - first, prefix, out);
        prefix.pop();
    }
}

/// Comparison rule for exponent tuples of equal length.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderRule {
    /// Total degree first, then lexicographic from the left.
    #[default]
    DegLex,
    /// Length after trimming trailing zeros first, then lexicographic from
    /// the left.
    TrimmedLengthLex,
}

impl OrderRule {
    pub fn name(self) -> &'static str {
        match self {
            OrderRule::DegLex => "deglex",
            OrderRule::TrimmedLengthLex => "paper",
        }
    }

    pub fn parse(s: &str) -> Option<OrderRule> {
        match s {
            "deglex" => Some(OrderRule::DegLex),
            "paper" | "paper-literal" | "trimlex" => Some(OrderRule::TrimmedLengthLex),
            _ => None,
        }
    }

    /// Infallible comparison; callers guarantee equal lengths.
    pub fn cmp(self, a: &ExpTuple, b: &ExpTuple) -> Ordering {
        debug_assert_eq!(a.len(), b.len());
        let head = match self {
            OrderRule::DegLex => a.degree().cmp(&b.degree()),
            OrderRule::TrimmedLengthLex => a.trimmed_len().cmp(&b.trimmed_len()),
        };
        head.then_with(|| a.0.cmp(&b.0))
    }
}

pub fn compare(a: &ExpTuple, b: &ExpTuple, rule: OrderRule) -> Result<Ordering> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    Ok(rule.cmp(a, b))
}

/// Outcome of a randomized comparator audit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompatibilityReport {
    pub verdict: Verdict,
    pub trials: usize,
    /// `(a, b, c, reason)` for the first violation.
    pub witness: Option<(ExpTuple, ExpTuple, ExpTuple, String)>,
}

pub fn well_order_compatibility_check(
    rule: OrderRule,
    length: usize,
    trials: usize,
    seed: u64,
) -> CompatibilityReport {
    check_comparator(|a, b| rule.cmp(a, b), length, trials, seed)
}

/// Audits an arbitrary comparator for totality, antisymmetry, transitivity
/// and translation invariance on random tuples with entries in `0..=4`.
pub fn check_comparator<F>(cmp: F, length: usize, trials: usize, seed: u64) -> CompatibilityReport
where
    F: Fn(&ExpTuple, &ExpTuple) -> Ordering,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| ExpTuple((0..length).map(|_| rng.gen_range(0..=4)).collect());
    for _ in 0..trials {
        let a = draw(&mut rng);
        let b = draw(&mut rng);
        let c = draw(&mut rng);
        let ab = cmp(&a, &b);
        let fail = if ab != cmp(&b, &a).reverse() {
            Some("antisymmetry")
        } else if (ab == Ordering::Equal) != (a == b) {
            Some("totality")
        } else if ab != cmp(&a.add(&c), &b.add(&c)) {
            Some("translation invariance")
        } else if ab == Ordering::Less && cmp(&b, &c) == Ordering::Less && cmp(&a, &c) != Ordering::Less {
            Some("transitivity")
        } else {
            None
        };
        if let Some(reason) = fail {
            return CompatibilityReport {
                verdict: Verdict::Fail,
                trials,
                witness: Some((a, b, c, reason.to_string())),
            };
        }
    }
    CompatibilityReport { verdict: Verdict::Pass, trials, witness: None }
}

/// A finite window onto a commutative monoid: element labels, a partial
/// operation table (`None` marks a sum that leaves the window), the neutral
/// element, and the elements from which test subsets are drawn.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSemigroupSample {
    labels: Vec<String>,
    table: Vec<Vec<Option<usize>>>,
    zero: usize,
    universe: Vec<usize>,
}

impl FiniteSemigroupSample {
    pub fn new(labels: Vec<String>, table: Vec<Vec<Option<usize>>>, universe: Option<Vec<usize>>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidPresentation("empty semigroup sample".into()));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidPresentation("operation table is not square".into()));
        }
        if table.iter().flatten().flatten().any(|&c| c >= n) {
            return Err(Error::InvalidPresentation("operation table entry out of range".into()));
        }
        let zero = (0..n)
            .find(|&z| (0..n).all(|x| table[z][x] == Some(x) && table[x][z] == Some(x)))
            .ok_or_else(|| Error::InvalidPresentation("no neutral element".into()))?;
        for a in 0..n {
            for b in 0..n {
                if table[a][b] != table[b][a] {
                    return Err(Error::InvalidPresentation(format!(
                        "operation not commutative on ({}, {})",
                        labels[a], labels[b]
                    )));
                }
                for c in 0..n {
                    let left = table[a][b].and_then(|ab| table[ab][c]);
                    let right = table[b][c].and_then(|bc| table[a][bc]);
                    if let (Some(l), Some(r)) = (left, right) {
                        if l != r {
                            return Err(Error::InvalidPresentation(format!(
                                "operation not associative on ({}, {}, {})",
                                labels[a], labels[b], labels[c]
                            )));
                        }
                    }
                }
            }
        }
        let universe = universe.unwrap_or_else(|| (0..n).collect());
        Ok(FiniteSemigroupSample { labels, table, zero, universe })
    }

    /// `(ℤ₊, +)`: elements `0..=2·bound`, subsets drawn from `0..=bound`.
    pub fn nat_plus(bound: u32) -> Self {
        Self::natk_plus(1, bound)
    }

    /// `(ℤ₊, max)` on `0..=bound`.
    pub fn nat_max(bound: u32) -> Self {
        let n = bound as usize + 1;
        let labels = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n).map(|a| (0..n).map(|b| Some(a.max(b))).collect()).collect();
        Self::new(labels, table, None).expect("max table is a commutative monoid")
    }

    /// `(ℤ₊ᵏ, componentwise +)`: tuples with entries `≤ 2·bound`, subsets
    /// drawn from tuples with entries `≤ bound`.
    pub fn natk_plus(k: usize, bound: u32) -> Self {
        let side = 2 * bound + 1;
        let total = (side as usize).pow(k as u32);
        let decode = |mut i: usize| {
            let mut v = vec![0u32; k];
            for slot in v.iter_mut().rev() {
                *slot = (i % side as usize) as u32;
                i /= side as usize;
            }
            v
        };
        let encode = |v: &[u32]| v.iter().fold(0usize, |acc, &e| acc * side as usize + e as usize);
        let elems: Vec<Vec<u32>> = (0..total).map(decode).collect();
        let labels = elems
            .iter()
            .map(|v| if k == 1 { v[0].to_string() } else { ExpTuple(v.clone()).to_string() })
            .collect();
        let table = elems
            .iter()
            .map(|a| {
                elems
                    .iter()
                    .map(|b| {
                        let s: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                        s.iter().all(|&e| e < side).then(|| encode(&s))
                    })
                    .collect()
            })
            .collect();
        let universe = (0..total).filter(|&i| elems[i].iter().all(|&e| e <= bound)).collect();
        Self::new(labels, table, Some(universe)).expect("componentwise sum is a commutative monoid")
    }

    /// `nat-plus:<bound>`, `nat-max:<bound>`, or `natk-plus:<k>:<bound>`.
    pub fn builtin(spec: &str) -> Result<Self> {
        let parts: Vec<&str> = spec.split(':').collect();
        let num = |s: &str| {
            s.parse::<u32>()
                .map_err(|_| Error::InvalidPresentation(format!("bad number `{s}` in `{spec}`")))
        };
        match parts.as_slice() {
            ["nat-plus", b] => Ok(Self::nat_plus(num(b)?)),
            ["nat-max", b] => Ok(Self::nat_max(num(b)?)),
            ["natk-plus", k, b] => {
                let k = num(k)? as usize;
                if k == 0 {
                    return Err(Error::InvalidPresentation("natk-plus needs k ≥ 1".into()));
                }
                Ok(Self::natk_plus(k, num(b)?))
            }
            _ => Err(Error::InvalidPresentation(format!("unknown built-in semigroup `{spec}`"))),
        }
    }

    /// Parses a text table: a header line of element labels, then one row
    /// per element (optionally prefixed by `label:`), `-` marking sums that
    /// leave the sample. Lines starting with `#` are ignored.
    pub fn from_table_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::InvalidPresentation("missing header line".into()))?;
        let labels: Vec<String> = header.split_whitespace().map(str::to_string).collect();
        let index = |s: &str| labels.iter().position(|l| l == s);
        let mut table = Vec::new();
        for (r, line) in lines.enumerate() {
            let body = match line.split_once(':') {
                Some((lead, rest)) => {
                    if r >= labels.len() || lead.trim() != labels[r] {
                        return Err(Error::InvalidPresentation(format!("row {} is labelled `{}`", r + 1, lead.trim())));
                    }
                    rest
                }
                None => line,
            };
            let row = body
                .split_whitespace()
                .map(|tok| match tok {
                    "-" | "?" => Ok(None),
                    t => index(t)
                        .map(Some)
                        .ok_or_else(|| Error::InvalidPresentation(format!("unknown element `{t}` in row {}", r + 1))),
                })
                .collect::<Result<Vec<_>>>()?;
            table.push(row);
        }
        Self::new(labels, table, None)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn op(&self, a: usize, b: usize) -> Option<usize> {
        self.table[a][b]
    }

    pub fn universe(&self) -> &[usize] {
        &self.universe
    }
}

/// Number of ordered pairs `(a, b) ∈ S1 × S2` with `a + b = c`.
pub fn nu_count(s1: &[usize], s2: &[usize], c: usize, sample: &FiniteSemigroupSample) -> Result<usize> {
    let n = sample.len();
    if s1.is_empty() || s2.is_empty() {
        return Err(Error::Precondition("subsets must be nonempty".into()));
    }
    if let Some(&bad) = s1.iter().chain(s2).chain(std::iter::once(&c)).find(|&&e| e >= n) {
        return Err(Error::Precondition(format!("element index {bad} outside the sample")));
    }
    Ok(s1
        .iter()
        .flat_map(|&a| s2.iter().map(move |&b| (a, b)))
        .filter(|&(a, b)| sample.op(a, b) == Some(c))
        .count())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderedLikeReport {
    pub verdict: Verdict,
    pub strict: bool,
    pub subset_size_bound: usize,
    pub pairs_checked: u64,
    /// Pairs skipped because some sum left the sample.
    pub pairs_escaped: u64,
    /// A nonzero element with an inverse, if any.
    pub invertible: Option<(String, String)>,
    /// First `(S1, S2)` for which no sum has a unique decomposition.
    pub counterexample: Option<(Vec<String>, Vec<String>)>,
}

enum PairOutcome {
    Fine,
    Trivial,
    Escaped,
    Violation,
}

fn check_pair(sample: &FiniteSemigroupSample, s1: &[usize], s2: &[usize], strict: bool) -> PairOutcome {
    let mut sums: [(usize, u32); 64] = [(0, 0); 64];
    let mut distinct = 0;
    let mut all_zero = true;
    for &a in s1 {
        for &b in s2 {
            let Some(c) = sample.op(a, b) else {
                return PairOutcome::Escaped;
            };
            all_zero &= c == sample.zero;
            match sums[..distinct].iter_mut().find(|(e, _)| *e == c) {
                Some(slot) => slot.1 += 1,
                None => {
                    sums[distinct] = (c, 1);
                    distinct += 1;
                }
            }
        }
    }
    if all_zero {
        return PairOutcome::Trivial;
    }
    let unique = sums[..distinct]
        .iter()
        .any(|&(c, count)| count == 1 && !(strict && c == sample.zero));
    if unique {
        PairOutcome::Fine
    } else {
        PairOutcome::Violation
    }
}

fn subsets_up_to(universe: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn rec(universe: &[usize], size: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..universe.len() {
            cur.push(universe[i]);
            rec(universe, size, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for size in 1..=k.min(universe.len()) {
        rec(universe, size, 0, &mut Vec::new(), &mut out);
    }
    out
}

/// Exhaustively checks the ordered-like property over all pairs of subsets
/// of the sample's universe with at most `subset_size_bound` elements.
///
/// Diagonal pairs `(S, S)` are examined first, then `(S1, S2)` with `S1`
/// before `S2` in enumeration order (the operation is commutative). With
/// `strict`, the uniquely decomposed sum must be nonzero.
pub fn check_ordered_like(sample: &FiniteSemigroupSample, subset_size_bound: usize, strict: bool) -> OrderedLikeReport {
    assert!(subset_size_bound <= 8, "subset size bound above 8 is not supported");
    let mut report = OrderedLikeReport {
        verdict: Verdict::Pass,
        strict,
        subset_size_bound,
        pairs_checked: 0,
        pairs_escaped: 0,
        invertible: None,
        counterexample: None,
    };
    let z = sample.zero;
    for a in (0..sample.len()).filter(|&a| a != z) {
        if let Some(b) = (0..sample.len()).find(|&b| sample.op(a, b) == Some(z)) {
            report.invertible = Some((sample.labels[a].clone(), sample.labels[b].clone()));
            report.verdict = Verdict::Fail;
            return report;
        }
    }
    let subsets = subsets_up_to(&sample.universe, subset_size_bound);
    let names = |s: &[usize]| s.iter().map(|&i| sample.labels[i].clone()).collect::<Vec<_>>();

    for s in &subsets {
        report.pairs_checked += 1;
        match check_pair(sample, s, s, strict) {
            PairOutcome::Violation => {
                report.counterexample = Some((names(s), names(s)));
                report.verdict = Verdict::Fail;
                return report;
            }
            PairOutcome::Escaped => report.pairs_escaped += 1,
            _ => {}
        }
    }

    // per first-subset: (first violating partner, checked, escaped)
    let rows: Vec<(Option<usize>, u64, u64)> = (0..subsets.len())
        .into_par_iter()
        .map(|i| {
            let mut checked = 0;
            let mut escaped = 0;
            for j in i + 1..subsets.len() {
                checked += 1;
                match check_pair(sample, &subsets[i], &subsets[j], strict) {
                    PairOutcome::Violation => return (Some(j), checked, escaped),
                    PairOutcome::Escaped => escaped += 1,
                    PairOutcome::Fine | PairOutcome::Trivial => {}
                }
            }
            (None, checked, escaped)
        })
        .collect();
    for (i, (violation, checked, escaped)) in rows.into_iter().enumerate() {
        report.pairs_checked += checked;
        report.pairs_escaped += escaped;
        if let Some(j) = violation {
            report.counterexample = Some((names(&subsets[i]), names(&subsets[j])));
            report.verdict = Verdict::Fail;
            return report;
        }
    }
    if report.pairs_escaped > 0 {
        report.verdict = Verdict::Inconclusive;
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(v: &[u32]) -> ExpTuple {
        ExpTuple::new(v.to_vec())
    }

    #[test]
    fn add_examples() {
        assert_eq!(t(&[1, 0, 2]).add(&t(&[0, 3, 1])), t(&[1, 3, 3]));
        assert_eq!(t(&[1, 0, 2]).add(&ExpTuple::zeros(3)), t(&[1, 0, 2]));
        assert_eq!(t(&[2]).add(&t(&[3])), t(&[5]));
        assert!(matches!(t(&[1]).checked_add(&t(&[1, 2])), Err(Error::LengthMismatch(1, 2))));
    }

    #[test]
    fn compare_examples() {
        assert_eq!(compare(&t(&[1, 3]), &t(&[2, 0]), OrderRule::DegLex).unwrap(), Ordering::Greater);
        for rule in [OrderRule::DegLex, OrderRule::TrimmedLengthLex] {
            assert_eq!(compare(&t(&[4, 1]), &t(&[4, 1]), rule).unwrap(), Ordering::Equal);
        }
        assert_eq!(
            compare(&t(&[5, 0]), &t(&[0, 1]), OrderRule::TrimmedLengthLex).unwrap(),
            Ordering::Less
        );
        assert!(compare(&t(&[1]), &t(&[1, 0]), OrderRule::DegLex).is_err());
    }

    #[test]
    fn compare_is_antisymmetric_exhaustively() {
        let all: Vec<ExpTuple> = (1..=3)
            .flat_map(|len| {
                let mut v = Vec::new();
                let total = 4usize.pow(len as u32);
                for code in 0..total {
                    let mut c = code;
                    let mut e = Vec::new();
                    for _ in 0..len {
                        e.push((c % 4) as u32);
                        c /= 4;
                    }
                    v.push(ExpTuple(e));
                }
                v
            })
            .collect();
        for rule in [OrderRule::DegLex, OrderRule::TrimmedLengthLex] {
            for a in &all {
                for b in all.iter().filter(|b| b.len() == a.len()) {
                    let ab = rule.cmp(a, b);
                    assert_eq!(ab, rule.cmp(b, a).reverse());
                    assert_eq!(ab == Ordering::Equal, a == b);
                }
            }
        }
    }

    #[test]
    fn tuples_up_to_degree_counts() {
        assert_eq!(tuples_up_to_degree(2, 3).len(), 10);
        assert_eq!(tuples_up_to_degree(3, 2).len(), 10);
        assert_eq!(tuples_up_to_degree(0, 5), vec![ExpTuple::new(vec![])]);
    }

    #[test]
    fn nu_count_examples() {
        let nat = FiniteSemigroupSample::nat_plus(5);
        let idx = |s: &str| nat.index_of(s).unwrap();
        assert_eq!(nu_count(&[idx("1"), idx("2")], &[idx("1"), idx("3")], idx("5"), &nat).unwrap(), 1);
        assert_eq!(nu_count(&[idx("0")], &[idx("0")], idx("0"), &nat).unwrap(), 1);
        let max = FiniteSemigroupSample::nat_max(3);
        assert_eq!(nu_count(&[0, 1], &[0, 1], 1, &max).unwrap(), 3);
        assert_eq!(nu_count(&[0, 1], &[0, 1], 3, &max).unwrap(), 0);
        assert!(nu_count(&[], &[0], 0, &max).is_err());
    }

    #[test]
    fn max_semigroup_fails_on_zero_one() {
        let r = check_ordered_like(&FiniteSemigroupSample::nat_max(5), 4, true);
        assert_eq!(r.verdict, Verdict::Fail);
        let zero_one = vec!["0".to_string(), "1".to_string()];
        assert_eq!(r.counterexample, Some((zero_one.clone(), zero_one)));
    }

    #[test]
    fn natural_numbers_pass_strict() {
        let r = check_ordered_like(&FiniteSemigroupSample::nat_plus(8), 3, true);
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.pairs_escaped, 0);
    }

    #[test]
    fn escaping_sums_are_inconclusive() {
        let text = "0 1 2\n0: 0 1 2\n1: 1 2 -\n2: 2 - -\n";
        let s = FiniteSemigroupSample::from_table_text(text).unwrap();
        let r = check_ordered_like(&s, 2, true);
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert!(r.pairs_escaped > 0);
    }

    #[test]
    fn group_has_invertibles() {
        // ℤ/2 under addition
        let s = FiniteSemigroupSample::from_table_text("0 1\n0 1\n1 0\n").unwrap();
        let r = check_ordered_like(&s, 2, false);
        assert_eq!(r.verdict, Verdict::Fail);
        assert_eq!(r.invertible, Some(("1".into(), "1".into())));
    }

    #[test]
    fn table_validation() {
        assert!(FiniteSemigroupSample::from_table_text("a b\na b\nb b\n").is_ok());
        // no neutral element
        assert!(FiniteSemigroupSample::from_table_text("a b\nb b\nb b\n").is_err());
        // not commutative
        assert!(FiniteSemigroupSample::from_table_text("e a b\ne a b\na a a\nb b b\n").is_err());
        assert!(FiniteSemigroupSample::builtin("nat-plus:x").is_err());
        assert!(FiniteSemigroupSample::builtin("natk-plus:2:3").is_ok());
    }

    #[test]
    fn comparator_audits() {
        let deg = well_order_compatibility_check(OrderRule::DegLex, 3, 10_000, 7);
        assert_eq!(deg.verdict, Verdict::Pass);
        // Trimmed length is not preserved by translation: (5,0,0) < (0,1,0)
        // but (5,1,0) > (0,2,0).
        let lit = well_order_compatibility_check(OrderRule::TrimmedLengthLex, 3, 10_000, 7);
        assert_eq!(lit.verdict, Verdict::Fail);
        let (a, b, c, reason) = lit.witness.unwrap();
        assert_eq!(reason, "translation invariance");
        let r = OrderRule::TrimmedLengthLex;
        assert_ne!(r.cmp(&a, &b), r.cmp(&a.add(&c), &b.add(&c)));
        // lex on reversed entries mixed with degree only for odd degrees
        let broken = |a: &ExpTuple, b: &ExpTuple| {
            let ra: Vec<u32> = a.entries().iter().rev().copied().collect();
            let rb: Vec<u32> = b.entries().iter().rev().copied().collect();
            if a.degree() % 2 == 1 {
                a.degree().cmp(&b.degree()).then(ra.cmp(&rb))
            } else {
                ra.cmp(&rb)
            }
        };
        assert_eq!(check_comparator(broken, 3, 10_000, 7).verdict, Verdict::Fail);
    }
}
