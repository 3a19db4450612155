//! Self-contained TOML certificates.
//!
//! A certificate embeds the canonical presentation text and its hash, the
//! claim in the element grammar, and a SHA-256 digest over both. [`verify`]
//! checks the digest and hash, then re-derives the claim by multiplying
//! and comparing. Every emitted certificate has been verified this way.
//!
//! ```toml
//! status = "VERIFIED"
//! digest = "…"
//!
//! [presentation]
//! source = "weyl"
//! hash = "…"
//! text = "…"
//!
//! [claim]
//! kind = "unimodular-row"
//! a = "x^2"
//! …
//! ```

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::pbw::{Algebra, AlgebraPresentation, CrossedElement};
use crate::stably_free::{
    additivity_precondition, intersection_dims, NonCyclicityCertificate, Provenance, RowCompletion, StableFreenessWitness,
    UnimodularRow, IdealSpec,
};

pub const VERIFIED: &str = "VERIFIED";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationRecord {
    pub source: String,
    pub hash: String,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Claim {
    /// `a·u + b·v = 1`; `cofactor_degree` is the larger degree of `u, v`.
    UnimodularRow { a: String, b: String, u: String, v: String, cofactor_degree: u32 },
    /// `row · column = 1` and `E = I − column·row` is idempotent, so
    /// `ker(row) ⊕ B ≅ Bᵏ`.
    StableFreeness {
        row: Vec<String>,
        column: Vec<String>,
        idempotent: Vec<Vec<String>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        trace: Option<String>,
    },
    /// `aB ∩ bB` is not principal.
    Noncyclicity {
        provenance: String,
        a: String,
        b: String,
        d0: u32,
        d_witness: u32,
        dims_k: Vec<usize>,
        dims_b: Vec<usize>,
        degree_cap: u32,
        cofactor_bound: u32,
    },
    /// An invertible matrix with first row `(a, b)`, so `aB ∩ bB` is
    /// principal, generated by `a·s`.
    RowCompletion { a: String, b: String, u: String, v: String, s: String, t: String, c: String, e: String },
}

impl Claim {
    pub fn kind(&self) -> &'static str {
        match self {
            Claim::UnimodularRow { .. } => "unimodular-row",
            Claim::StableFreeness { .. } => "stable-freeness",
            Claim::Noncyclicity { .. } => "noncyclicity",
            Claim::RowCompletion { .. } => "row-completion",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub status: String,
    pub digest: String,
    pub presentation: PresentationRecord,
    pub claim: Claim,
}

#[derive(Serialize)]
struct Body<'a> {
    presentation: &'a PresentationRecord,
    claim: &'a Claim,
}

fn digest_of(presentation: &PresentationRecord, claim: &Claim) -> Result<String> {
    let text = toml::to_string(&Body { presentation, claim }).map_err(|e| Error::Certificate(e.to_string()))?;
    Ok(hex::encode(Sha256::digest(text.as_bytes())))
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Certificate(msg.into())
}

impl Certificate {
    /// Verifies `claim` against `alg` and wraps it.
    pub fn issue(alg: &Algebra, claim: Claim) -> Result<Self> {
        let pres = alg.presentation();
        let presentation = PresentationRecord {
            source: pres.source().to_string(),
            hash: pres.content_hash(),
            text: pres.canonical_text(),
        };
        check_claim(alg, &claim)?;
        let digest = digest_of(&presentation, &claim)?;
        Ok(Certificate { status: VERIFIED.into(), digest, presentation, claim })
    }

    pub fn unimodular_row(alg: &Algebra, row: &UnimodularRow) -> Result<Self> {
        let f = |e: &CrossedElement| alg.format(e);
        Self::issue(
            alg,
            Claim::UnimodularRow {
                a: f(&row.a),
                b: f(&row.b),
                u: f(&row.u),
                v: f(&row.v),
                cofactor_degree: row.cofactor_degree(),
            },
        )
    }

    pub fn stable_freeness(alg: &Algebra, w: &StableFreenessWitness) -> Result<Self> {
        let f = |v: &[CrossedElement]| v.iter().map(|e| alg.format(e)).collect::<Vec<_>>();
        Self::issue(
            alg,
            Claim::StableFreeness {
                row: f(&w.row),
                column: f(&w.column),
                idempotent: w.idempotent.iter().map(|r| f(r)).collect(),
                trace: w.trace.as_ref().map(|t| alg.format(t)),
            },
        )
    }

    /// Needs an ideal known as `aB ∩ bB` (directly or lifted).
    pub fn noncyclicity(alg: &Algebra, k: &IdealSpec, cert: &NonCyclicityCertificate) -> Result<Self> {
        let (a, b) = k.intersection_pair().ok_or_else(|| bad("the ideal is not given as an intersection aB ∩ bB"))?;
        let provenance = match k.provenance {
            Provenance::Lifted { .. } => "lifted",
            _ => "syzygy",
        };
        Self::issue(
            alg,
            Claim::Noncyclicity {
                provenance: provenance.into(),
                a: alg.format(a),
                b: alg.format(b),
                d0: cert.d0,
                d_witness: cert.d_witness,
                dims_k: cert.dims_k.clone(),
                dims_b: cert.dims_b.clone(),
                degree_cap: cert.degree_cap,
                cofactor_bound: cert.cofactor_bound,
            },
        )
    }

    pub fn row_completion(alg: &Algebra, c: &RowCompletion) -> Result<Self> {
        let f = |e: &CrossedElement| alg.format(e);
        Self::issue(
            alg,
            Claim::RowCompletion {
                a: f(&c.row.a),
                b: f(&c.row.b),
                u: f(&c.row.u),
                v: f(&c.row.v),
                s: f(&c.kernel.0),
                t: f(&c.kernel.1),
                c: f(&c.second_row.0),
                e: f(&c.second_row.1),
            },
        )
    }

    pub fn to_text(&self) -> String {
        toml::to_string(self).expect("certificate serializes")
    }

    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| bad(format!("malformed certificate: {e}")))
    }
}

/// Parses and fully re-checks a certificate, returning it on success.
pub fn verify(text: &str) -> Result<Certificate> {
    let cert = Certificate::parse(text)?;
    if cert.status != VERIFIED {
        return Err(bad(format!("status is `{}`", cert.status)));
    }
    if digest_of(&cert.presentation, &cert.claim)? != cert.digest {
        return Err(bad("digest does not match the content"));
    }
    let pres = AlgebraPresentation::parse_text(&cert.presentation.text)?.with_source(cert.presentation.source.clone());
    if pres.canonical_text() != cert.presentation.text || pres.content_hash() != cert.presentation.hash {
        return Err(bad("presentation hash does not match its text"));
    }
    check_claim(&Algebra::new(pres), &cert.claim)?;
    Ok(cert)
}

fn check_claim(alg: &Algebra, claim: &Claim) -> Result<()> {
    let p = |s: &str| alg.parse_element(s).map_err(Error::from);
    let ps = |v: &[String]| v.iter().map(|s| p(s)).collect::<Result<Vec<_>>>();
    match claim {
        Claim::UnimodularRow { a, b, u, v, cofactor_degree } => {
            let row = UnimodularRow::new(alg, p(a)?, p(b)?, p(u)?, p(v)?)?;
            if row.cofactor_degree() != *cofactor_degree {
                return Err(bad("cofactor degree does not match the cofactors"));
            }
        }
        Claim::StableFreeness { row, column, idempotent, trace } => {
            let w = StableFreenessWitness {
                row: ps(row)?,
                column: ps(column)?,
                idempotent: idempotent.iter().map(|r| ps(r)).collect::<Result<_>>()?,
                trace: trace.as_deref().map(p).transpose()?,
            };
            if alg.ngens() == 0 && w.trace.is_none() {
                return Err(bad("trace missing for a commutative algebra"));
            }
            w.verify(alg)?;
        }
        Claim::Noncyclicity { a, b, d0, d_witness, dims_k, dims_b, degree_cap, .. } => {
            additivity_precondition(alg)?;
            let (a, b) = (p(a)?, p(b)?);
            let (d0, dw) = (*d0, *d_witness);
            if dw > *degree_cap || d0 > dw {
                return Err(bad("degrees out of order"));
            }
            let actual = intersection_dims(alg, &a, &b, dw, |_, _| false)?;
            if &actual != dims_k {
                return Err(bad("dim K_{<=d} does not match"));
            }
            if actual.iter().position(|&x| x > 0) != Some(d0 as usize) {
                return Err(bad("d0 is not the least degree of a nonzero element"));
            }
            let mut counts = vec![0usize; (dw - d0) as usize + 1];
            for l in alg.pbw_basis(dw - d0) {
                counts[l.degree() as usize] += 1;
            }
            let cumulative: Vec<usize> = counts
                .iter()
                .scan(0, |acc, x| {
                    *acc += x;
                    Some(*acc)
                })
                .collect();
            let expect_b: Vec<usize> = (0..=dw).map(|d| if d < d0 { 0 } else { cumulative[(d - d0) as usize] }).collect();
            if &expect_b != dims_b {
                return Err(bad("dim B_{<=d-d0} does not match"));
            }
            if dims_k[dw as usize] == dims_b[dw as usize] {
                return Err(bad("no dimension mismatch at the witness degree"));
            }
        }
        Claim::RowCompletion { a, b, u, v, s, t, c, e } => {
            let row = UnimodularRow::new(alg, p(a)?, p(b)?, p(u)?, p(v)?)?;
            let done = RowCompletion { row, kernel: (p(s)?, p(t)?), second_row: (p(c)?, p(e)?) };
            if !done.verify(alg)? {
                return Err(bad("the completed matrix is not invertible"));
            }
        }
    }
    Ok(())
}
