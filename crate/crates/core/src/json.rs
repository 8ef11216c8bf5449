//! JSON documents for series, pairings, twists and symplectic expansions.
//!
//! A series is `{"degree_cap": M, "terms": [{"word": [i, ...], "coeff": "p/q"}, ...]}` with
//! 1-based variable indices, terms in (length, lexicographic) order.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::automorphism::Automorphism;
use crate::error::{Error, Result};
use crate::group_algebra::GroupAlgebraElement;
use crate::pairing::{ExactPairing, FoxPairing, TruncatedPairing};
use crate::scalar::{format_rational, parse_rational};
use crate::series::Series;
use crate::symplectic::SymplecticExpansion;
use crate::word::GroupWord;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub word: Vec<i64>,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesDoc {
    /// Optional on input; used when the rank cannot be inferred from context.
    #[serde(default, skip_serializing)]
    pub rank: Option<usize>,
    pub degree_cap: usize,
    pub terms: Vec<TermDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactElementDoc {
    pub terms: Vec<TermDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairingDoc {
    pub rank: usize,
    pub representation: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_cap: Option<usize>,
    pub matrix: Vec<Vec<Value>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistDoc {
    pub rank: usize,
    pub degree_cap: usize,
    pub images: Vec<SeriesDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionDoc {
    pub genus: usize,
    pub degree_cap: usize,
    pub images: Vec<SeriesDoc>,
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

pub fn series_to_doc(s: &Series) -> SeriesDoc {
    SeriesDoc {
        rank: None,
        degree_cap: s.cap(),
        terms: s
            .terms()
            .map(|(m, k)| TermDoc { word: m.letters().iter().map(|&l| l as i64).collect(), coeff: format_rational(k) })
            .collect(),
    }
}

/// Reads a series; the rank is `rank`, else the document's `rank`, else the largest index used.
pub fn series_from_doc(doc: &SeriesDoc, rank: Option<usize>) -> Result<Series> {
    let inferred = doc.terms.iter().flat_map(|t| t.word.iter().copied()).max().unwrap_or(0).max(0) as usize;
    let rank = rank.or(doc.rank).unwrap_or(inferred);
    if doc.degree_cap == 0 {
        return Err(Error::Parse("degree_cap must be positive".into()));
    }
    let mut terms = Vec::with_capacity(doc.terms.len());
    for t in &doc.terms {
        let mut letters = Vec::with_capacity(t.word.len());
        for &l in &t.word {
            if l < 1 || l as usize > rank || l > u8::MAX as i64 {
                return Err(Error::Parse(format!("variable index {l} out of range for rank {rank}")));
            }
            letters.push(l as u8);
        }
        if letters.len() >= doc.degree_cap {
            return Err(Error::Parse(format!("monomial {:?} exceeds degree cap {}", t.word, doc.degree_cap)));
        }
        terms.push((letters, parse_rational(&t.coeff)?));
    }
    Series::from_terms(rank, doc.degree_cap, terms)
}

pub fn exact_to_doc(a: &GroupAlgebraElement) -> ExactElementDoc {
    ExactElementDoc {
        terms: a
            .terms()
            .map(|(w, k)| TermDoc { word: w.letters().iter().map(|&l| l as i64).collect(), coeff: format_rational(k) })
            .collect(),
    }
}

pub fn exact_from_doc(doc: &ExactElementDoc, rank: usize) -> Result<GroupAlgebraElement> {
    let mut terms = Vec::with_capacity(doc.terms.len());
    for t in &doc.terms {
        let letters: Vec<i32> = t
            .word
            .iter()
            .map(|&l| i32::try_from(l).map_err(|_| Error::Parse(format!("letter {l} out of range"))))
            .collect::<Result<_>>()?;
        terms.push((GroupWord::from_letters(rank, &letters)?, parse_rational(&t.coeff)?));
    }
    GroupAlgebraElement::from_terms(rank, terms)
}

pub fn pairing_to_doc(p: &FoxPairing) -> PairingDoc {
    match p {
        FoxPairing::Truncated(t) => PairingDoc {
            rank: t.rank(),
            representation: "truncated".into(),
            degree_cap: Some(t.cap()),
            matrix: t
                .matrix()
                .iter()
                .map(|row| row.iter().map(|s| serde_json::to_value(series_to_doc(s)).expect("serializable")).collect())
                .collect(),
        },
        FoxPairing::Exact(e) => PairingDoc {
            rank: e.rank(),
            representation: "exact".into(),
            degree_cap: None,
            matrix: e
                .matrix()
                .iter()
                .map(|row| row.iter().map(|a| serde_json::to_value(exact_to_doc(a)).expect("serializable")).collect())
                .collect(),
        },
    }
}

pub fn pairing_from_doc(doc: &PairingDoc) -> Result<FoxPairing> {
    let n = doc.rank;
    if doc.matrix.len() != n || doc.matrix.iter().any(|r| r.len() != n) {
        return Err(Error::Parse(format!("pairing matrix must be {n}x{n}")));
    }
    match doc.representation.as_str() {
        "truncated" => {
            let matrix = doc
                .matrix
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|v| {
                            let d: SeriesDoc = serde_json::from_value(v.clone()).map_err(parse_err)?;
                            if let Some(cap) = doc.degree_cap {
                                if d.degree_cap != cap {
                                    return Err(Error::CapMismatch { left: cap, right: d.degree_cap });
                                }
                            }
                            series_from_doc(&d, Some(n))
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(FoxPairing::Truncated(TruncatedPairing::new(matrix)?))
        }
        "exact" => {
            let matrix = doc
                .matrix
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|v| {
                            let d: ExactElementDoc = serde_json::from_value(v.clone()).map_err(parse_err)?;
                            exact_from_doc(&d, n)
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(FoxPairing::Exact(ExactPairing::new(matrix)?))
        }
        other => Err(Error::Parse(format!("unknown representation `{other}`"))),
    }
}

pub fn twist_to_doc(t: &Automorphism) -> TwistDoc {
    TwistDoc { rank: t.rank(), degree_cap: t.cap(), images: t.images().iter().map(series_to_doc).collect() }
}

pub fn twist_from_doc(doc: &TwistDoc) -> Result<Automorphism> {
    if doc.images.len() != doc.rank {
        return Err(Error::Parse(format!("expected {} images", doc.rank)));
    }
    let images = doc
        .images
        .iter()
        .map(|d| series_from_doc(d, Some(doc.rank)).map(|s| s.with_cap(doc.degree_cap)))
        .collect::<Result<Vec<_>>>()?;
    Automorphism::new(images)
}

pub fn expansion_to_doc(e: &SymplecticExpansion) -> ExpansionDoc {
    ExpansionDoc { genus: e.genus(), degree_cap: e.cap(), images: e.images().iter().map(series_to_doc).collect() }
}

pub fn expansion_from_doc(doc: &ExpansionDoc) -> Result<SymplecticExpansion> {
    let images = doc.images.iter().map(|d| series_from_doc(d, Some(2 * doc.genus))).collect::<Result<Vec<_>>>()?;
    SymplecticExpansion::from_images(doc.genus, images)
}

pub fn to_pretty_json<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("documents are serializable");
    out.push('\n');
    out
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(parse_err)
}
