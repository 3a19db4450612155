//! Unimodular rows, intersection ideals `aB ∩ bB`, stable-freeness
//! witnesses, non-cyclicity certificates, lifting along `A[g₁; δ₁] ⊂ B`,
//! the `δ(𝔪) ⊆ 𝔪` test and the sphere column.

use std::cmp::Reverse;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::coefficients::{BaseRing, CommPoly, Degree, DerivationSpec, Rational};
use crate::error::{Error, Result};
use crate::linalg::{degree_key, right_combination_solve, syzygy_basis, Echelon, SolveStatus};
use crate::pbw::{sphere_presentation, Algebra, AlgebraPresentation, BasisLabel, CrossedElement, LiePresentation};
use crate::Verdict;

fn degree_of(e: &CrossedElement) -> Result<u32> {
    e.total_degree().finite().ok_or(Error::ZeroElement)
}

/// `(a, b)` with right cofactors `(u, v)` such that `a·u + b·v = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnimodularRow {
    pub a: CrossedElement,
    pub b: CrossedElement,
    pub u: CrossedElement,
    pub v: CrossedElement,
}

impl UnimodularRow {
    /// Checks the identity before accepting the row.
    pub fn new(alg: &Algebra, a: CrossedElement, b: CrossedElement, u: CrossedElement, v: CrossedElement) -> Result<Self> {
        let row = UnimodularRow { a, b, u, v };
        if !row.verify(alg)? {
            return Err(Error::Certificate("a*u + b*v is not 1".into()));
        }
        Ok(row)
    }

    pub fn verify(&self, alg: &Algebra) -> Result<bool> {
        let lhs = &alg.multiply(&self.a, &self.u)? + &alg.multiply(&self.b, &self.v)?;
        Ok(lhs == alg.one())
    }

    /// Largest total degree among `u` and `v`.
    pub fn cofactor_degree(&self) -> u32 {
        [&self.u, &self.v].iter().filter_map(|e| e.total_degree().finite()).max().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CofactorSearch {
    Found(UnimodularRow),
    Inconclusive { cofactor_bound: u32 },
}

/// Looks for `u, v` of degree at most `cofactor_bound` with `a·u + b·v = 1`.
pub fn find_cofactors(alg: &Algebra, a: &CrossedElement, b: &CrossedElement, cofactor_bound: u32) -> Result<CofactorSearch> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroElement);
    }
    let report = right_combination_solve(alg, &[a.clone(), b.clone()], &alg.one(), cofactor_bound)?;
    match (report.status, report.cofactors) {
        (SolveStatus::Solved, Some(mut c)) => {
            let v = c.pop().expect("two cofactors");
            let u = c.pop().expect("two cofactors");
            Ok(CofactorSearch::Found(UnimodularRow::new(alg, a.clone(), b.clone(), u, v)?))
        }
        _ => Ok(CofactorSearch::Inconclusive { cofactor_bound }),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// `aB ∩ bB`, generated by `a·s` over syzygies `(s, t)`.
    Syzygy { a: CrossedElement, b: CrossedElement },
    /// Extended from `A₁` to `B`; keeps the pair when the source had one.
    Lifted { pair: Option<(CrossedElement, CrossedElement)> },
    User,
}

/// A right ideal given by generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealSpec {
    pub generators: Vec<CrossedElement>,
    pub provenance: Provenance,
}

impl IdealSpec {
    pub fn user(generators: Vec<CrossedElement>) -> Result<Self> {
        if generators.iter().any(CrossedElement::is_zero) {
            return Err(Error::ZeroElement);
        }
        Ok(IdealSpec { generators, provenance: Provenance::User })
    }

    /// `aB ∩ bB` without computing generators; enough for
    /// [`certify_noncyclic`].
    pub fn intersection(a: CrossedElement, b: CrossedElement) -> Result<Self> {
        if a.is_zero() || b.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(IdealSpec { generators: Vec::new(), provenance: Provenance::Syzygy { a, b } })
    }

    /// The pair `(a, b)` when the ideal is known to equal `aB ∩ bB`.
    pub fn intersection_pair(&self) -> Option<(&CrossedElement, &CrossedElement)> {
        match &self.provenance {
            Provenance::Syzygy { a, b } => Some((a, b)),
            Provenance::Lifted { pair: Some((a, b)) } => Some((a, b)),
            _ => None,
        }
    }
}

/// Generators of `aB ∩ bB` from syzygies `(s, t)` with `deg s, deg t ≤
/// degree_bound`, pruned to those not already in the right ideal of the
/// earlier ones at the same degrees. `None` when no syzygy exists there.
pub fn build_intersection_ideal(alg: &Algebra, row: &UnimodularRow, degree_bound: u32) -> Result<Option<IdealSpec>> {
    intersection_ideal(alg, &row.a, &row.b, degree_bound)
}

/// [`build_intersection_ideal`] for any nonzero pair.
pub fn intersection_ideal(alg: &Algebra, a: &CrossedElement, b: &CrossedElement, degree_bound: u32) -> Result<Option<IdealSpec>> {
    let syz = syzygy_basis(alg, a, b, degree_bound)?;
    let mut elems = Vec::with_capacity(syz.len());
    for (s, t) in &syz {
        let k = alg.multiply(a, s)?;
        if k != -&alg.multiply(b, t)? {
            return Err(Error::Certificate("intersection generator failed re-verification".into()));
        }
        elems.push(k);
    }
    if elems.is_empty() {
        return Ok(None);
    }
    let limit = degree_of(a)? + degree_bound;
    elems.sort_by_key(|e| e.total_degree());
    let mut span = Echelon::new();
    let mut generators = Vec::new();
    for e in elems {
        let coords = |x: &CrossedElement| x.coordinates().map(|(l, v)| (degree_key(l), v.clone())).collect();
        let (rem, _) = span.reduce(coords(&e));
        if rem.is_empty() {
            continue;
        }
        let room = limit - degree_of(&e)?;
        for l in alg.pbw_basis(room) {
            span.insert(coords(&alg.mul(&e, &l.to_element())), None);
        }
        generators.push(e);
    }
    Ok(Some(IdealSpec { generators, provenance: Provenance::Syzygy { a: a.clone(), b: b.clone() } }))
}

/// A splitting `π σ = 1` of a row `π: Bᵏ → B` by a column `σ`, with the
/// idempotent `E = I − σπ` projecting onto `ker π`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableFreenessWitness {
    pub row: Vec<CrossedElement>,
    pub column: Vec<CrossedElement>,
    pub idempotent: Vec<Vec<CrossedElement>>,
    /// `trace E`, reported when the algebra is commutative.
    pub trace: Option<CrossedElement>,
}

impl StableFreenessWitness {
    pub fn from_splitting(alg: &Algebra, row: Vec<CrossedElement>, column: Vec<CrossedElement>) -> Result<Self> {
        let k = row.len();
        if column.len() != k {
            return Err(Error::LengthMismatch(k, column.len()));
        }
        let mut idempotent = vec![vec![alg.zero(); k]; k];
        for (i, line) in idempotent.iter_mut().enumerate() {
            for (j, cell) in line.iter_mut().enumerate() {
                let delta = if i == j { alg.one() } else { alg.zero() };
                *cell = &delta - &alg.multiply(&column[i], &row[j])?;
            }
        }
        let trace = if alg.ngens() == 0 {
            Some((0..k).fold(alg.zero(), |acc, i| &acc + &idempotent[i][i]))
        } else {
            None
        };
        let w = StableFreenessWitness { row, column, idempotent, trace };
        w.verify(alg)?;
        Ok(w)
    }

    /// Re-checks `πσ = 1`, `πE = 0`, `Eσ = 0`, `E² = E` and the trace.
    #[allow(clippy::needless_range_loop)]
    pub fn verify(&self, alg: &Algebra) -> Result<()> {
        let k = self.row.len();
        let fail = |what: &str| Err(Error::Certificate(format!("splitting identity fails: {what}")));
        if self.column.len() != k || self.idempotent.len() != k || self.idempotent.iter().any(|r| r.len() != k) {
            return fail("shape");
        }
        let mut ps = alg.zero();
        for i in 0..k {
            ps = &ps + &alg.multiply(&self.row[i], &self.column[i])?;
        }
        if ps != alg.one() {
            return fail("row * column = 1");
        }
        let e = &self.idempotent;
        for j in 0..k {
            let mut pe = alg.zero();
            let mut es = alg.zero();
            for i in 0..k {
                pe = &pe + &alg.multiply(&self.row[i], &e[i][j])?;
                es = &es + &alg.multiply(&e[j][i], &self.column[i])?;
            }
            if !pe.is_zero() {
                return fail("row * E = 0");
            }
            if !es.is_zero() {
                return fail("E * column = 0");
            }
        }
        for i in 0..k {
            for j in 0..k {
                let expect_id = if i == j { alg.one() } else { alg.zero() };
                if e[i][j] != &expect_id - &alg.multiply(&self.column[i], &self.row[j])? {
                    return fail("E = I - column * row");
                }
                let mut sq = alg.zero();
                for l in 0..k {
                    sq = &sq + &alg.multiply(&e[i][l], &e[l][j])?;
                }
                if sq != e[i][j] {
                    return fail("E * E = E");
                }
            }
        }
        if let Some(t) = &self.trace {
            let actual = (0..k).fold(alg.zero(), |acc, i| &acc + &e[i][i]);
            if &actual != t {
                return fail("trace");
            }
        }
        Ok(())
    }
}

/// Witness that `ker(a, b) ⊕ B ≅ B²` for a verified unimodular row.
pub fn certify_stably_free(alg: &Algebra, row: &UnimodularRow) -> Result<StableFreenessWitness> {
    if !row.verify(alg)? {
        return Err(Error::Certificate("a*u + b*v is not 1".into()));
    }
    StableFreenessWitness::from_splitting(alg, vec![row.a.clone(), row.b.clone()], vec![row.u.clone(), row.v.clone()])
}

/// Exact `dim K_{≤d}` against `dim B_{≤d−d₀}`, where a strict difference
/// rules out `K` being principal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonCyclicityCertificate {
    pub d0: u32,
    pub d_witness: u32,
    /// `dim K_{≤d}` for `d = 0..=d_witness`.
    pub dims_k: Vec<usize>,
    /// `dim B_{≤d−d₀}` for `d = 0..=d_witness` (0 below `d₀`).
    pub dims_b: Vec<usize>,
    pub degree_cap: u32,
    pub cofactor_bound: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NoncyclicOutcome {
    Certified(NonCyclicityCertificate),
    Inconclusive { reason: String, dims_k: Vec<usize> },
}

impl NoncyclicOutcome {
    pub fn certificate(&self) -> Option<&NonCyclicityCertificate> {
        match self {
            NoncyclicOutcome::Certified(c) => Some(c),
            NoncyclicOutcome::Inconclusive { .. } => None,
        }
    }
}

/// Whether `gr B` for the Bernstein filtration is visibly a polynomial
/// ring: no base relation, and every commutator drops degree.
pub fn graded_is_polynomial(pres: &AlgebraPresentation) -> bool {
    if pres.base().quotient().is_some() {
        return false;
    }
    let low = |p: &CommPoly| p.total_degree() <= Degree::Finite(1);
    let n = pres.ngens();
    pres.derivations().iter().all(|d| d.images().iter().all(low))
        && (0..n).all(|i| (i + 1..n).all(|j| pres.lie().cocycle(i, j).is_none_or(low)))
}

/// Samples products of random elements and compares degrees.
pub fn degree_additivity_sample(alg: &Algebra, trials: usize, seed: u64) -> Option<(CrossedElement, CrossedElement)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let labels = alg.pbw_basis(2);
    let draw = |rng: &mut ChaCha8Rng| {
        let mut e = alg.zero();
        for _ in 0..rng.gen_range(1..=3) {
            let l = &labels[rng.gen_range(0..labels.len())];
            let c = Rational::from_integer(rng.gen_range(1i64..=3).into());
            e = &e + &l.to_element().scale(&c);
        }
        e
    };
    for _ in 0..trials {
        let (x, y) = (draw(&mut rng), draw(&mut rng));
        if x.is_zero() || y.is_zero() {
            continue;
        }
        if alg.mul(&x, &y).total_degree() != x.total_degree() + y.total_degree() {
            return Some((x, y));
        }
    }
    None
}

pub(crate) fn additivity_precondition(alg: &Algebra) -> Result<()> {
    if !graded_is_polynomial(alg.presentation()) {
        return Err(Error::Precondition(
            "degree additivity is not guaranteed: the associated graded ring may not be a domain".into(),
        ));
    }
    if let Some((x, y)) = degree_additivity_sample(alg, 64, 0) {
        return Err(Error::Precondition(format!(
            "degree additivity fails for {} and {}",
            alg.format(&x),
            alg.format(&y)
        )));
    }
    Ok(())
}

/// `dim (aB ∩ bB)_{≤d}` for `d = 0..=cap`, computed as the nullity of
/// `(s, t) ↦ a·s + b·t` on `B_{≤d−deg a} × B_{≤d−deg b}`. Exact when
/// degrees are additive. Stops early once `stop` returns true.
pub fn intersection_dims(
    alg: &Algebra,
    a: &CrossedElement,
    b: &CrossedElement,
    cap: u32,
    mut stop: impl FnMut(u32, usize) -> bool,
) -> Result<Vec<usize>> {
    let (da, db) = (degree_of(a)?, degree_of(b)?);
    let mut ech: Echelon<(Reverse<u32>, BasisLabel)> = Echelon::new();
    let mut active = 0usize;
    let mut dims = Vec::new();
    let by_degree = |bound: u32| {
        let mut layers: Vec<Vec<BasisLabel>> = vec![Vec::new(); bound as usize + 1];
        for l in alg.pbw_basis(bound) {
            layers[l.degree() as usize].push(l);
        }
        layers
    };
    let layers = by_degree(cap.saturating_sub(da.min(db)));
    for d in 0..=cap {
        for (g, dg) in [(a, da), (b, db)] {
            if d < dg {
                continue;
            }
            let layer = &layers[(d - dg) as usize];
            let products: Vec<CrossedElement> = {
                use rayon::prelude::*;
                layer.par_iter().map(|l| alg.mul(g, &l.to_element())).collect()
            };
            for p in products {
                active += 1;
                ech.insert(p.coordinates().map(|(l, v)| (degree_key(l), v.clone())).collect(), None);
            }
        }
        let dim = active - ech.rank();
        dims.push(dim);
        if stop(d, dim) {
            break;
        }
    }
    Ok(dims)
}

/// Searches for a degree `d ≤ degree_cap` where `dim K_{≤d}` differs from
/// what a principal ideal generated in degree `d₀` would give.
///
/// Refuses (with [`Error::Precondition`]) when degrees may fail to add.
/// Ideals known only by generators are reported inconclusive, since their
/// slices are only bounded from below.
pub fn certify_noncyclic(alg: &Algebra, k: &IdealSpec, degree_cap: u32, cofactor_bound: u32) -> Result<NoncyclicOutcome> {
    additivity_precondition(alg)?;
    let Some((a, b)) = k.intersection_pair() else {
        return Ok(NoncyclicOutcome::Inconclusive {
            reason: "only generators are known; slice dimensions are lower bounds".into(),
            dims_k: Vec::new(),
        });
    };
    let basis_counts: Vec<usize> = {
        let mut c = vec![0usize; degree_cap as usize + 1];
        for l in alg.pbw_basis(degree_cap) {
            c[l.degree() as usize] += 1;
        }
        c.iter()
            .scan(0, |acc, x| {
                *acc += x;
                Some(*acc)
            })
            .collect()
    };
    let mut d0: Option<u32> = None;
    let mut witness: Option<u32> = None;
    let dims_k = intersection_dims(alg, a, b, degree_cap, |d, dim| {
        if d0.is_none() && dim > 0 {
            d0 = Some(d);
        }
        if let Some(d0) = d0 {
            if dim != basis_counts[(d - d0) as usize] {
                witness = Some(d);
                return true;
            }
        }
        false
    })?;
    match (d0, witness) {
        (Some(d0), Some(d_witness)) => {
            let dims_b = (0..=d_witness).map(|d| if d < d0 { 0 } else { basis_counts[(d - d0) as usize] }).collect();
            Ok(NoncyclicOutcome::Certified(NonCyclicityCertificate {
                d0,
                d_witness,
                dims_k,
                dims_b,
                degree_cap,
                cofactor_bound,
            }))
        }
        (None, _) => Ok(NoncyclicOutcome::Inconclusive {
            reason: format!("no nonzero element of degree at most {degree_cap}"),
            dims_k,
        }),
        (Some(d0), None) => Ok(NoncyclicOutcome::Inconclusive {
            reason: format!("dimensions match a principal ideal generated in degree {d0} up to {degree_cap}"),
            dims_k,
        }),
    }
}

/// Re-embeds an ideal of `A₁ = A[g₁; δ₁]` into `B`.
pub fn lift_ideal(k: &IdealSpec, a1: &Algebra, b: &Algebra) -> Result<IdealSpec> {
    let expected = b.presentation().first_ore_subalgebra()?;
    if expected.canonical_text() != a1.presentation().canonical_text() {
        return Err(Error::Precondition("the larger presentation does not extend the Ore subalgebra".into()));
    }
    let widen = |e: &CrossedElement| -> Result<CrossedElement> {
        if !e.involves_only_first_generator() {
            return Err(Error::Precondition(format!("`{}` involves generators beyond g1", a1.format(e))));
        }
        e.widen(b.ngens())
    };
    let generators = k.generators.iter().map(widen).collect::<Result<Vec<_>>>()?;
    let pair = match k.intersection_pair() {
        Some((x, y)) => Some((widen(x)?, widen(y)?)),
        None => None,
    };
    Ok(IdealSpec { generators, provenance: Provenance::Lifted { pair } })
}

/// An invertible matrix `M = [σ | w]` with inverse `N` whose first row is
/// `(a, b)`. Its existence shows `ker(a, b) = wB` is free, so `aB ∩ bB =
/// a·s·B` is principal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowCompletion {
    pub row: UnimodularRow,
    /// Kernel generator `w = (s, t)`.
    pub kernel: (CrossedElement, CrossedElement),
    /// Second row `(c, e)` of `N`.
    pub second_row: (CrossedElement, CrossedElement),
}

impl RowCompletion {
    /// Checks `N·M = I` and `M·N = I`.
    pub fn verify(&self, alg: &Algebra) -> Result<bool> {
        let UnimodularRow { a, b, u, v } = &self.row;
        let (s, t) = &self.kernel;
        let (c, e) = &self.second_row;
        let m = |x: &CrossedElement, y: &CrossedElement| alg.multiply(x, y);
        let one = alg.one();
        let zero = alg.zero();
        let checks = [
            (&m(a, u)? + &m(b, v)?, &one),
            (&m(a, s)? + &m(b, t)?, &zero),
            (&m(c, u)? + &m(e, v)?, &zero),
            (&m(c, s)? + &m(e, t)?, &one),
            (&m(u, a)? + &m(s, c)?, &one),
            (&m(u, b)? + &m(s, e)?, &zero),
            (&m(v, a)? + &m(t, c)?, &zero),
            (&m(v, b)? + &m(t, e)?, &one),
        ];
        Ok(checks.iter().all(|(lhs, rhs)| lhs == *rhs))
    }

    /// The generator `a·s` of `aB ∩ bB`.
    pub fn intersection_generator(&self, alg: &Algebra) -> CrossedElement {
        alg.mul(&self.row.a, &self.kernel.0)
    }
}

/// Tries to complete a unimodular row to an invertible matrix, using
/// syzygies with `deg s, deg t ≤ degree_bound` and a second row of degree at
/// most `degree_bound`. `None` says nothing about larger bounds.
pub fn complete_row(alg: &Algebra, row: &UnimodularRow, degree_bound: u32) -> Result<Option<RowCompletion>> {
    let labels = alg.pbw_basis(degree_bound);
    let mut syz = syzygy_basis(alg, &row.a, &row.b, degree_bound)?;
    syz.sort_by_key(|(s, t)| s.total_degree().max(t.total_degree()));
    for (s, t) in syz {
        // Left combinations: c·(u, s) + e·(v, t) = (0, 1).
        let stack = |p: CrossedElement, q: CrossedElement| {
            let mut out = std::collections::BTreeMap::new();
            out.extend(p.coordinates().map(|(l, x)| ((false, l), x.clone())));
            out.extend(q.coordinates().map(|(l, x)| ((true, l), x.clone())));
            out
        };
        let mut ech = Echelon::new();
        let mut tag = 0;
        for (f1, f2) in [(&row.u, &s), (&row.v, &t)] {
            for l in &labels {
                let le = l.to_element();
                ech.insert(stack(alg.multiply(&le, f1)?, alg.multiply(&le, f2)?), Some(tag));
                tag += 1;
            }
        }
        let (rem, combo) = ech.reduce(stack(alg.zero(), alg.one()));
        if !rem.is_empty() {
            continue;
        }
        let n = labels.len();
        let (mut c, mut e) = (alg.zero(), alg.zero());
        for (k, x) in &combo {
            let term = labels[k % n].to_element().scale(x);
            if *k < n {
                c = &c + &term;
            } else {
                e = &e + &term;
            }
        }
        let done = RowCompletion { row: row.clone(), kernel: (s, t), second_row: (c, e) };
        if done.verify(alg)? {
            return Ok(Some(done));
        }
    }
    Ok(None)
}

/// Bounded check that the lift `KB` contracts back to `K`: compares
/// `dim K_{≤d}` in `A₁` with the dimension of the part of `(aB ∩ bB)_{≤d}`
/// lying in `A₁`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContractionReport {
    pub verdict: Verdict,
    pub degree: u32,
    pub dim_k: usize,
    pub dim_contracted: usize,
}

pub fn contraction_check(a1: &Algebra, b: &Algebra, a: &CrossedElement, c: &CrossedElement, degree: u32) -> Result<ContractionReport> {
    let dim_k = *intersection_dims(a1, a, c, degree, |_, _| false)?.last().expect("nonempty");
    let (aw, cw) = (a.widen(b.ngens())?, c.widen(b.ngens())?);
    let da = degree_of(&aw)?;
    let low = da.min(degree_of(&cw)?);
    let mut dim_contracted = 0;
    if degree >= da {
        // Outside-A₁ coordinates sort first, so pivots in A₁ mark the
        // intersection with A₁.
        let mut ech: Echelon<(bool, Reverse<u32>, BasisLabel)> = Echelon::new();
        for (s, _) in syzygy_basis(b, &aw, &cw, degree - low)? {
            let k = b.multiply(&aw, &s)?;
            if degree_of(&k)? > degree {
                continue;
            }
            let v = k
                .coordinates()
                .map(|(l, x)| {
                    let inside = l.pbw.entries().iter().skip(1).all(|&e| e == 0);
                    ((inside, Reverse(l.degree()), l), x.clone())
                })
                .collect();
            ech.insert(v, None);
        }
        dim_contracted = ech.pivots().filter(|(inside, _, _)| *inside).count();
    }
    let verdict = if dim_k == dim_contracted { Verdict::Pass } else { Verdict::Fail };
    Ok(ContractionReport { verdict, degree, dim_k, dim_contracted })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    pub verdict: Verdict,
    /// Generator `m` with `δ(m) ∉ 𝔪`.
    pub witness: Option<String>,
    pub image: Option<String>,
    pub membership_bound: u32,
    pub reason: String,
}

impl StabilityReport {
    pub fn is_stable(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Tests `δ(m) ∈ 𝔪` for every generator `m` of `𝔪 ⊆ A`.
///
/// A failed membership search is conclusive only when it provably covers
/// every possible combination: for a principal ideal `(g)` once the bound
/// reaches `deg δ(m) − deg g`, and for homogeneous generators once it
/// reaches `deg δ(m)`. Otherwise the answer is inconclusive.
pub fn derivation_stability(
    base: &BaseRing,
    ideal_gens: &[CommPoly],
    d: &DerivationSpec,
    membership_bound: u32,
) -> Result<StabilityReport> {
    let pres = AlgebraPresentation::new(base.clone(), LiePresentation::abelian(0), Vec::new())?;
    let alg = Algebra::new(pres);
    let gens: Vec<CrossedElement> = ideal_gens.iter().map(|g| alg.coefficient(g.clone())).collect();
    if gens.iter().any(CrossedElement::is_zero) {
        return Err(Error::ZeroElement);
    }
    let exact_domain = base.quotient().is_none();
    let mut undecided: Option<(String, String)> = None;
    for (m, g) in ideal_gens.iter().zip(&gens) {
        let image = d.apply(m, base.quotient())?;
        let image_e = alg.coefficient(image.clone());
        if image.is_zero() {
            continue;
        }
        let r = right_combination_solve(&alg, &gens, &image_e, membership_bound)?;
        if r.status == SolveStatus::Solved {
            continue;
        }
        let deg_f = degree_of(&image_e)?;
        let conclusive = exact_domain
            && if gens.len() == 1 {
                membership_bound >= deg_f.saturating_sub(degree_of(g)?)
            } else {
                ideal_gens.iter().all(CommPoly::is_homogeneous) && membership_bound >= deg_f
            };
        if conclusive {
            return Ok(StabilityReport {
                verdict: Verdict::Fail,
                witness: Some(base.format(m)),
                image: Some(base.format(&image)),
                membership_bound,
                reason: "image lies outside the ideal".into(),
            });
        }
        undecided.get_or_insert((base.format(m), base.format(&image)));
    }
    Ok(match undecided {
        None => StabilityReport {
            verdict: Verdict::Pass,
            witness: None,
            image: None,
            membership_bound,
            reason: "every generator image lies in the ideal".into(),
        },
        Some((m, img)) => StabilityReport {
            verdict: Verdict::Inconclusive,
            witness: Some(m),
            image: Some(img),
            membership_bound,
            reason: "membership not found within the bound".into(),
        },
    })
}

/// The unimodular column `(x₁, …, xₙ)` over `ℚ[x₁..xₙ]/(Σxᵢ² − 1)`, whose
/// cofactors are the same entries.
#[derive(Clone, Debug)]
pub struct SphereInstance {
    pub n: usize,
    pub algebra: Algebra,
    pub column: Vec<CrossedElement>,
    pub cofactors: Vec<CrossedElement>,
}

pub fn sphere_column(n: usize) -> Result<SphereInstance> {
    if n < 3 {
        return Err(Error::Precondition("the sphere column needs n >= 3".into()));
    }
    let algebra = Algebra::new(sphere_presentation(n)?.with_source(format!("sphere:{n}")));
    let column: Vec<CrossedElement> = (0..n).map(|i| algebra.variable(i)).collect();
    let sum = column.iter().fold(algebra.zero(), |acc, a| &acc + &algebra.mul(a, a));
    if sum != algebra.one() {
        return Err(Error::Certificate("sum of squares is not 1".into()));
    }
    Ok(SphereInstance { n, cofactors: column.clone(), algebra, column })
}

/// `A → Aⁿ` by the column, split by the cofactor row; `E = I − column·row`
/// presents the cokernel `P` with `P ⊕ A ≅ Aⁿ`.
pub fn cokernel_presentation(inst: &SphereInstance) -> Result<StableFreenessWitness> {
    StableFreenessWitness::from_splitting(&inst.algebra, inst.cofactors.clone(), inst.column.clone())
}
