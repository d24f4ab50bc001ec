//! Input documents, scalar literals, root notation, and report types.
//!
//! Everything here parses untrusted input: scheme documents arrive as JSON
//! or TOML files, scalars as literals like `z 1/3` or `q^-2`, and root
//! lists in the compact `1^k2^l` notation. Each entry point is covered by
//! a fuzz target.

use crate::braiding::BraidingMatrix;
use crate::gcm::{validate_gcm, RootVector};
use crate::scalar::{parse_scalar, ScalarError, ScalarMode, ScalarValue};
use crate::scheme::{build_from_braiding, build_from_matrices, CartanScheme, SchemeError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Parser inputs are size-limited to keep adversarial documents cheap.
pub const MAX_RANK: usize = 64;
pub const MAX_OBJECTS_IN_DOCUMENT: usize = 4096;
/// Root-of-unity orders are confined to the cyclic group Z/L with
/// L = lcm of the document's denominators; bounding L keeps all scalar
/// arithmetic downstream free of overflow.
pub const MAX_ORDER_LCM: u64 = 1 << 32;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("json parse error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("toml parse error: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("bad scheme document: {0}")]
    BadDocument(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error(transparent)]
    Braiding(#[from] crate::braiding::BraidingError),
    #[error(transparent)]
    Gcm(#[from] crate::gcm::GcmError),
    #[error("bad root notation {input:?}: {reason}")]
    Notation { input: String, reason: String },
}

/// On-disk scheme description: either a diagonal braiding matrix or
/// explicit objects with reflection tables.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SchemeDocument {
    Braiding {
        rank: usize,
        /// `root_of_unity` or `generic_q`
        mode: String,
        /// theta x theta scalar literals, e.g. `"z 1/3"`, `"q^-2"`
        q: Vec<Vec<String>>,
        #[serde(default, skip_serializing_if = "std::ops::Not::not")]
        allow_unit_self_braiding: bool,
    },
    Explicit {
        objects: Vec<ObjectDocument>,
        /// `maps[i][k]` = id of `r_{i+1}` applied to the k-th object
        maps: Vec<Vec<u32>>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ObjectDocument {
    pub id: u32,
    pub cartan: Vec<Vec<i64>>,
}

pub fn parse_scheme_json(text: &str) -> Result<SchemeDocument, InputError> {
    Ok(serde_json::from_str(text)?)
}

pub fn parse_scheme_toml(text: &str) -> Result<SchemeDocument, InputError> {
    Ok(toml::from_str(text)?)
}

/// Parses the document's scalar mode string.
pub fn parse_mode(mode: &str) -> Result<ScalarMode, InputError> {
    match mode {
        "root_of_unity" => Ok(ScalarMode::RootOfUnity),
        "generic_q" => Ok(ScalarMode::GenericQ),
        other => Err(InputError::BadDocument(format!(
            "unknown mode {other:?}; expected root_of_unity or generic_q"
        ))),
    }
}

/// Builds the braiding matrix described by a braiding document.
pub fn braiding_from_document(doc: &SchemeDocument) -> Result<Option<BraidingMatrix>, InputError> {
    let SchemeDocument::Braiding {
        rank,
        mode,
        q,
        allow_unit_self_braiding,
    } = doc
    else {
        return Ok(None);
    };
    if *rank == 0 || *rank > MAX_RANK {
        return Err(InputError::BadDocument(format!(
            "rank must be between 1 and {MAX_RANK}"
        )));
    }
    let mode = parse_mode(mode)?;
    if q.len() != *rank || q.iter().any(|row| row.len() != *rank) {
        return Err(InputError::BadDocument(
            "q must be a rank x rank matrix of scalar literals".into(),
        ));
    }
    let entries: Vec<Vec<ScalarValue>> = q
        .iter()
        .map(|row| row.iter().map(|s| parse_scalar(s, mode)).collect())
        .collect::<Result<_, _>>()?;
    let mut lcm: u64 = 1;
    for entry in entries.iter().flatten() {
        if let ScalarValue::RootOfUnity { den, .. } = entry {
            lcm = num_integer::lcm(u128::from(lcm), u128::from(*den))
                .try_into()
                .map_err(|_| InputError::BadDocument("root-of-unity orders too large".into()))?;
            if lcm > MAX_ORDER_LCM {
                return Err(InputError::BadDocument(format!(
                    "least common root-of-unity order exceeds {MAX_ORDER_LCM}"
                )));
            }
        }
    }
    Ok(Some(BraidingMatrix::new(entries, *allow_unit_self_braiding)?))
}

/// Turns a parsed document into a validated Cartan scheme.
pub fn scheme_from_document(
    doc: &SchemeDocument,
    max_objects: usize,
    exponent_bound: u64,
) -> Result<CartanScheme, InputError> {
    match doc {
        SchemeDocument::Braiding { .. } => {
            let braiding = braiding_from_document(doc)?.expect("braiding variant");
            Ok(build_from_braiding(&braiding, max_objects, exponent_bound)?)
        }
        SchemeDocument::Explicit { objects, maps } => {
            if objects.is_empty() || objects.len() > MAX_OBJECTS_IN_DOCUMENT {
                return Err(InputError::BadDocument(format!(
                    "between 1 and {MAX_OBJECTS_IN_DOCUMENT} objects required"
                )));
            }
            let parsed: Vec<(u32, _)> = objects
                .iter()
                .map(|o| Ok::<_, InputError>((o.id, validate_gcm(o.cartan.clone())?)))
                .collect::<Result<_, _>>()?;
            if parsed[0].1.rank() > MAX_RANK {
                return Err(InputError::BadDocument(format!(
                    "rank must be at most {MAX_RANK}"
                )));
            }
            Ok(build_from_matrices(parsed, maps.clone())?)
        }
    }
}

/// Parses compact root notation: `1^k2^l...` means
/// `k alpha_1 + l alpha_2 + ...`, with `^1` optional and negative
/// exponents allowed (`12^-1` is `alpha_1 - alpha_2`). An optional
/// leading `-` negates the whole vector.
pub fn parse_root_notation(input: &str, rank: usize) -> Result<RootVector, InputError> {
    let err = |reason: &str| InputError::Notation {
        input: input.to_string(),
        reason: reason.to_string(),
    };
    if rank == 0 || rank > MAX_RANK {
        return Err(err("rank out of range"));
    }
    let mut coords = vec![num_bigint::BigInt::from(0); rank];
    let mut chars = input.trim().chars().peekable();
    let negate = chars.peek() == Some(&'-');
    if negate {
        chars.next();
    }
    let mut seen_any = false;
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        let Some(index) = c.to_digit(10) else {
            return Err(err("expected a basis index digit"));
        };
        chars.next();
        if index == 0 || index as usize > rank {
            return Err(err("basis index out of range"));
        }
        // exponents are sign plus one digit: `1^52^8` reads as 1^5 2^8
        let mut exponent: i64 = 1;
        if chars.peek() == Some(&'^') {
            chars.next();
            let negative = chars.peek() == Some(&'-');
            if negative {
                chars.next();
            }
            let digit = chars
                .next()
                .and_then(|d| d.to_digit(10))
                .ok_or_else(|| err("bad exponent"))?;
            exponent = i64::from(digit);
            if negative {
                exponent = -exponent;
            }
        }
        coords[index as usize - 1] += exponent;
        seen_any = true;
    }
    if !seen_any {
        return Err(err("empty notation"));
    }
    let v = RootVector::new(coords);
    Ok(if negate { v.negate() } else { v })
}

// ---------------------------------------------------------------------
// machine-readable reports
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct MorphismJson {
    /// object labels
    pub source: u32,
    pub target: u32,
    /// 1-based generator indices
    pub word: Vec<usize>,
    pub length: usize,
    pub matrix: Vec<Vec<i64>>,
    pub lambda: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct RootSetJson {
    pub object: u32,
    pub roots: Vec<Vec<i64>>,
    pub positive_roots: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct GroupoidReport {
    pub rank: usize,
    pub objects: Vec<u32>,
    pub complete: bool,
    pub morphisms: Vec<MorphismJson>,
    pub real_roots: Vec<RootSetJson>,
    pub root_system_violations: Vec<String>,
    pub coxeter_violations: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct HilbertFactorJson {
    pub degree: Vec<i64>,
    /// `null` encodes an infinite (untruncated) factor
    pub height: Option<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CensusRecordJson {
    pub id: usize,
    /// 1-based generator indices of the canonical reduced word
    pub word: Vec<usize>,
    pub source: u32,
    pub length: usize,
    pub lambda: Vec<Vec<i64>>,
    pub pbw_degrees: Vec<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub self_braidings: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hilbert_factors: Option<Vec<HilbertFactorJson>>,
    /// ids of records whose coideal is contained in this one
    pub includes: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CensusReport {
    pub object: u32,
    pub rank: usize,
    pub record_count: usize,
    pub kharchenko_count: usize,
    pub standard: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weyl_group_order: Option<u64>,
    pub records: Vec<CensusRecordJson>,
}

pub fn parse_census_json(text: &str) -> Result<CensusReport, InputError> {
    Ok(serde_json::from_str(text)?)
}

/// Assembles the machine-readable groupoid report.
pub fn groupoid_report(
    scheme: &CartanScheme,
    enumeration: &crate::groupoid::GroupoidEnumeration,
    root_sets: &crate::groupoid::RootSets,
    root_system: Option<&crate::groupoid::RootSystemReport>,
    coxeter: Option<&crate::groupoid::CoxeterReport>,
) -> GroupoidReport {
    let label = |x: usize| scheme.object(x).label;
    let morphisms = enumeration
        .morphisms
        .iter()
        .map(|m| MorphismJson {
            source: label(m.source),
            target: label(m.target),
            word: m.word.iter().map(|i| i + 1).collect(),
            length: m.length,
            matrix: m.matrix.to_i64_rows(),
            lambda: m.lambda.roots().iter().map(|r| r.to_i64_vec()).collect(),
        })
        .collect();
    let real_roots = root_sets
        .iter()
        .enumerate()
        .map(|(x, set)| RootSetJson {
            object: label(x),
            roots: set.iter().map(|r| r.to_i64_vec()).collect(),
            positive_roots: set
                .iter()
                .filter(|r| r.is_positive())
                .map(|r| r.to_i64_vec())
                .collect(),
        })
        .collect();
    GroupoidReport {
        rank: scheme.rank(),
        objects: scheme.objects().iter().map(|o| o.label).collect(),
        complete: enumeration.complete,
        morphisms,
        real_roots,
        root_system_violations: root_system
            .map(|r| r.violations.iter().map(|v| v.to_string()).collect())
            .unwrap_or_default(),
        coxeter_violations: coxeter
            .map(|c| {
                c.violations
                    .iter()
                    .map(|(x, i, j)| {
                        format!(
                            "object {}: Coxeter relation for (s{}, s{}) fails",
                            label(*x),
                            i + 1,
                            j + 1
                        )
                    })
                    .collect()
            })
            .unwrap_or_default(),
    }
}

/// Assembles the machine-readable census report, with the inclusion order
/// spelled out per record.
pub fn census_report(
    scheme: &CartanScheme,
    x: usize,
    records: &[crate::census::CoidealRecord],
    kharchenko: &crate::census::KharchenkoCount,
) -> CensusReport {
    let label = |y: usize| scheme.object(y).label;
    let json_records = records
        .iter()
        .map(|r| {
            let includes = records
                .iter()
                .filter(|other| {
                    other.id != r.id && other.lambda().is_subset_of(r.lambda())
                })
                .map(|other| other.id)
                .collect();
            CensusRecordJson {
                id: r.id,
                word: r.morphism.word.iter().map(|i| i + 1).collect(),
                source: label(r.morphism.source),
                length: r.morphism.length,
                lambda: r.lambda().roots().iter().map(|v| v.to_i64_vec()).collect(),
                pbw_degrees: r.pbw.degrees.iter().map(|v| v.to_i64_vec()).collect(),
                self_braidings: r
                    .pbw
                    .self_braidings
                    .as_ref()
                    .map(|qs| qs.iter().map(|q| q.to_string()).collect()),
                hilbert_factors: r.hilbert.as_ref().map(|h| {
                    h.factors()
                        .iter()
                        .map(|(degree, height)| HilbertFactorJson {
                            degree: degree.to_i64_vec(),
                            height: height.as_option(),
                        })
                        .collect()
                }),
                includes,
            }
        })
        .collect();
    CensusReport {
        object: label(x),
        rank: scheme.rank(),
        record_count: records.len(),
        kharchenko_count: kharchenko.count,
        standard: kharchenko.standard,
        weyl_group_order: kharchenko.weyl_group_order,
        records: json_records,
    }
}

/// Canonical JSON rendering: pretty-printed with a trailing newline so
/// identical inputs produce byte-identical artifacts.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("report types serialize");
    out.push('\n');
    out
}
