//! Exact linear algebra over `ℚ` on degree-truncated slices of `B`.

use std::cmp::Reverse;
use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::coefficients::{Degree, Rational};
use crate::error::{Error, Result};
use crate::pbw::{Algebra, BasisLabel, CrossedElement};
use crate::Verdict;

pub type SparseVec<K> = BTreeMap<K, Rational>;

fn axpy<K: Ord + Clone>(y: &mut SparseVec<K>, a: &Rational, x: &SparseVec<K>) {
    for (k, v) in x {
        let entry = y.entry(k.clone()).or_insert_with(Rational::zero);
        *entry += a * v;
        if entry.is_zero() {
            y.remove(k);
        }
    }
}

/// What happened to a vector offered to an [`Echelon`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Inserted {
    Independent,
    /// The vector was dependent; the tracked combination of inserted tags
    /// that sums to zero.
    Dependent(SparseVec<usize>),
}

/// Incremental semi-echelon basis: every stored row has a distinct pivot,
/// its smallest key, normalized to 1.
///
/// With column keys ordered so that larger degrees come first, the pivot of
/// a combination of rows is the smallest pivot used, which makes degree
/// slices of the span easy to count.
#[derive(Clone, Debug, Default)]
pub struct Echelon<K: Ord + Clone> {
    rows: BTreeMap<K, (SparseVec<K>, SparseVec<usize>)>,
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Echelon { rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.keys()
    }

    /// Reduces `v` until its leading key is not a pivot; returns the
    /// remainder and the combination of tags subtracted.
    pub fn reduce(&self, mut v: SparseVec<K>) -> (SparseVec<K>, SparseVec<usize>) {
        let mut combo = SparseVec::new();
        while let Some((k, c)) = v.iter().next() {
            let Some((row, row_combo)) = self.rows.get(k) else { break };
            let c = -c.clone();
            axpy(&mut v, &c, row);
            axpy(&mut combo, &-&c, row_combo);
        }
        (v, combo)
    }

    /// Inserts `v`; `tag` identifies it in tracked combinations.
    pub fn insert(&mut self, v: SparseVec<K>, tag: Option<usize>) -> Inserted {
        let (rem, combo) = self.reduce(v);
        let mut own = SparseVec::new();
        if let Some(t) = tag {
            own.insert(t, Rational::one());
        }
        axpy(&mut own, &-Rational::one(), &combo);
        match rem.iter().next() {
            None => Inserted::Dependent(own),
            Some((k, lead)) => {
                let k = k.clone();
                let inv = lead.recip();
                let row = rem.into_iter().map(|(key, x)| (key, x * &inv)).collect();
                let own = own.into_iter().map(|(key, x)| (key, x * &inv)).collect();
                self.rows.insert(k, (row, own));
                Inserted::Independent
            }
        }
    }
}

/// A dense-indexed, sparse-stored rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    nrows: usize,
    ncols: usize,
    data: Vec<SparseVec<usize>>,
}

impl RatMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        RatMatrix { nrows, ncols, data: vec![SparseVec::new(); nrows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), ncols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::LengthMismatch(ncols, row.len()));
            }
            for (j, v) in row.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rational::from_integer(v.into())).collect())
                .collect(),
        )
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.data[i].get(&j).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        assert!(i < self.nrows && j < self.ncols, "index out of range");
        if v.is_zero() {
            self.data[i].remove(&j);
        } else {
            self.data[i].insert(j, v);
        }
    }

    pub fn row(&self, i: usize) -> &SparseVec<usize> {
        &self.data[i]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.nrows).map(|i| (0..self.ncols).map(|j| self.get(i, j)).collect()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: RatMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// Reduced row-echelon form. The pivot in each column is taken from the
/// smallest remaining row index holding a nonzero entry.
pub fn rref(m: &RatMatrix) -> Rref {
    let mut rows = m.data.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..m.ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| rows[i].contains_key(&col)) else { continue };
        rows.swap(r, p);
        let inv = rows[r][&col].recip();
        for v in rows[r].values_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r {
                if let Some(c) = row.get(&col).cloned() {
                    axpy(row, &-c, &pivot_row);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    let rank = pivots.len();
    Rref { matrix: RatMatrix { nrows: m.nrows, ncols: m.ncols, data: rows }, pivots, rank }
}

/// The PBW basis of `B_{≤bound}` with an index for coordinates.
#[derive(Clone, Debug)]
pub struct TruncBasis {
    bound: u32,
    nvars: usize,
    ngens: usize,
    labels: Vec<BasisLabel>,
    index: HashMap<BasisLabel, usize>,
}

impl TruncBasis {
    pub fn new(alg: &Algebra, bound: u32) -> Self {
        let labels = alg.pbw_basis(bound);
        let index = labels.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
        TruncBasis { bound, nvars: alg.nvars(), ngens: alg.ngens(), labels, index }
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn index_of(&self, l: &BasisLabel) -> Option<usize> {
        self.index.get(l).copied()
    }

    pub fn vectorize_sparse(&self, e: &CrossedElement) -> Result<SparseVec<usize>> {
        if let Degree::Finite(d) = e.total_degree() {
            if d > self.bound {
                return Err(Error::ExceedsBound { degree: d, bound: self.bound });
            }
        }
        let mut out = SparseVec::new();
        for (label, v) in e.coordinates() {
            let i = self.index_of(&label).ok_or(Error::PresentationMismatch)?;
            out.insert(i, v.clone());
        }
        Ok(out)
    }

    pub fn vectorize(&self, e: &CrossedElement) -> Result<Vec<Rational>> {
        let sparse = self.vectorize_sparse(e)?;
        let mut out = vec![Rational::zero(); self.len()];
        for (i, v) in sparse {
            out[i] = v;
        }
        Ok(out)
    }

    pub fn unvectorize(&self, v: &[Rational]) -> CrossedElement {
        CrossedElement::from_coordinates(
            self.nvars,
            self.ngens,
            self.labels.iter().zip(v).filter(|(_, x)| !x.is_zero()).map(|(l, x)| (l, x.clone())),
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolveStatus {
    Solved,
    /// No solution with cofactors inside the bound; says nothing beyond it.
    InconclusiveBound,
}

#[derive(Clone, Debug)]
pub struct SolveReport {
    pub status: SolveStatus,
    pub cofactors: Option<Vec<CrossedElement>>,
    pub unknowns: usize,
    pub rank: usize,
    pub cofactor_bound: u32,
}

impl SolveReport {
    pub fn verdict(&self) -> Verdict {
        match self.status {
            SolveStatus::Solved => Verdict::Pass,
            SolveStatus::InconclusiveBound => Verdict::Inconclusive,
        }
    }
}

/// Products `gᵢ · ℓ` for every generator and basis label, computed in
/// parallel and returned in a fixed order.
fn right_products(alg: &Algebra, gens: &[CrossedElement], labels: &[BasisLabel]) -> Vec<CrossedElement> {
    let jobs: Vec<(usize, usize)> = (0..gens.len()).flat_map(|g| (0..labels.len()).map(move |l| (g, l))).collect();
    jobs.par_iter().map(|&(g, l)| alg.mul(&gens[g], &labels[l].to_element())).collect()
}

fn coords(e: &CrossedElement) -> SparseVec<BasisLabel> {
    e.coordinates().map(|(l, v)| (l, v.clone())).collect()
}

fn assemble(alg: &Algebra, labels: &[BasisLabel], k: usize, combo: &SparseVec<usize>) -> Vec<CrossedElement> {
    let mut out = vec![alg.zero(); k];
    let l = labels.len();
    for (u, c) in combo {
        let e = labels[u % l].to_element().scale(c);
        out[u / l] = &out[u / l] + &e;
    }
    out
}

/// Searches `c₁..c_k` of total degree at most `cofactor_bound` with
/// `Σ gᵢ cᵢ = target`. Free unknowns are set to zero; a found solution is
/// re-verified by multiplication.
pub fn right_combination_solve(
    alg: &Algebra,
    gens: &[CrossedElement],
    target: &CrossedElement,
    cofactor_bound: u32,
) -> Result<SolveReport> {
    let labels = alg.pbw_basis(cofactor_bound);
    let products = right_products(alg, gens, &labels);
    let mut ech = Echelon::new();
    for (u, p) in products.iter().enumerate() {
        ech.insert(coords(p), Some(u));
    }
    let (rem, combo) = ech.reduce(coords(target));
    let unknowns = products.len();
    let rank = ech.rank();
    if !rem.is_empty() {
        return Ok(SolveReport { status: SolveStatus::InconclusiveBound, cofactors: None, unknowns, rank, cofactor_bound });
    }
    let cofactors = assemble(alg, &labels, gens.len(), &combo);
    let mut check = alg.zero();
    for (g, c) in gens.iter().zip(&cofactors) {
        check = &check + &alg.multiply(g, c)?;
    }
    if &check != target {
        return Err(Error::Certificate("solution failed re-verification".into()));
    }
    Ok(SolveReport { status: SolveStatus::Solved, cofactors: Some(cofactors), unknowns, rank, cofactor_bound })
}

/// A basis of `{(s, t) : a·s + b·t = 0}` with `s, t` of total degree at most
/// `degree_bound`, each scaled so its first nonzero coordinate is 1 and
/// verified by multiplication.
pub fn syzygy_basis(
    alg: &Algebra,
    a: &CrossedElement,
    b: &CrossedElement,
    degree_bound: u32,
) -> Result<Vec<(CrossedElement, CrossedElement)>> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroElement);
    }
    let labels = alg.pbw_basis(degree_bound);
    let products = right_products(alg, &[a.clone(), b.clone()], &labels);
    let mut ech = Echelon::new();
    let mut out = Vec::new();
    for (u, p) in products.iter().enumerate() {
        if let Inserted::Dependent(combo) = ech.insert(coords(p), Some(u)) {
            // Scale so the first unknown used has coefficient 1.
            let lead = combo.values().next().expect("nonempty dependency").recip();
            let combo: SparseVec<usize> = combo.into_iter().map(|(k, v)| (k, v * &lead)).collect();
            let mut pair = assemble(alg, &labels, 2, &combo);
            let t = pair.pop().expect("two cofactors");
            let s = pair.pop().expect("two cofactors");
            let check = &alg.multiply(a, &s)? + &alg.multiply(b, &t)?;
            if !check.is_zero() {
                return Err(Error::Certificate("syzygy failed re-verification".into()));
            }
            out.push((s, t));
        }
    }
    Ok(out)
}

/// Column key putting higher degrees first.
pub(crate) fn degree_key(l: BasisLabel) -> (Reverse<u32>, BasisLabel) {
    (Reverse(l.degree()), l)
}

/// `dim_ℚ` of the degree-`≤ d` part of `Σ gᵢ · B_{≤cofactor_bound}` for
/// `d = 0..=degree_cap`. This is a lower bound for the slice of the right
/// ideal generated by `span_gens`, exact once the cofactor bound is large
/// enough.
pub fn filtered_dim(alg: &Algebra, span_gens: &[CrossedElement], cofactor_bound: u32, degree_cap: u32) -> Vec<usize> {
    let labels = alg.pbw_basis(cofactor_bound);
    let products = right_products(alg, span_gens, &labels);
    let mut ech = Echelon::new();
    for p in &products {
        ech.insert(p.coordinates().map(|(l, v)| (degree_key(l), v.clone())).collect(), None);
    }
    let mut counts = vec![0usize; degree_cap as usize + 1];
    for (Reverse(deg), _) in ech.pivots() {
        if *deg <= degree_cap {
            counts[*deg as usize] += 1;
        }
    }
    let mut acc = 0;
    counts
        .into_iter()
        .map(|c| {
            acc += c;
            acc
        })
        .collect()
}
