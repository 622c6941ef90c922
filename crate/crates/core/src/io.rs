//! Versioned JSON document formats.
//!
//! Rationals serialize as reduced `"p/q"` strings with a positive
//! denominator, never as floats. Every document carries `"schema": "v1"`.
//! Serialization is canonical: struct field order plus ordered maps, so equal
//! values produce byte-identical documents.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::barcode::{Bar, Endpoint, GradedBarcode};
use crate::complex::{FilteredComplex, FilteredMap, Generator};
use crate::demo::{DegreeRule, SimplicialFunction, TwistComplexSpec};
use crate::error::{Error, Result};
use crate::gf2::Mat;
use crate::interleave::{DegreeMaps, InterleavingCertificate};
use crate::matching::MatchingCertificate;
use crate::module::{DegreeData, PersistenceModule};
use crate::Rational;

pub const SCHEMA: &str = "v1";

pub fn parse_rational(s: &str) -> Result<Rational> {
    s.trim()
        .parse::<Rational>()
        .map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))
}

pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn parse_endpoint(s: &str) -> Result<Endpoint<Rational>> {
    if s.trim() == "inf" {
        Ok(Endpoint::Infinity)
    } else {
        Ok(Endpoint::Finite(parse_rational(s)?))
    }
}

pub fn format_endpoint(e: &Endpoint<Rational>) -> String {
    match e {
        Endpoint::Finite(r) => format_rational(r),
        Endpoint::Infinity => "inf".to_string(),
    }
}

fn check_schema(schema: &str, what: &str) -> Result<()> {
    if schema == SCHEMA {
        Ok(())
    } else {
        Err(Error::Parse(format!(
            "{what}: unsupported schema {schema:?}, expected {SCHEMA:?}"
        )))
    }
}

/// Canonical serialization used by every `emit` path.
pub fn to_canonical_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents always serialize");
    s.push('\n');
    s
}

pub fn from_json_str<'a, T: Deserialize<'a>>(s: &'a str, what: &str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

// ---------------------------------------------------------------------------
// barcodes

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct BarDoc {
    pub deg: i64,
    pub left: String,
    pub right: String,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct BarcodeDoc {
    pub schema: String,
    pub bars: Vec<BarDoc>,
}

pub fn barcode_to_doc(b: &GradedBarcode<Rational>) -> BarcodeDoc {
    BarcodeDoc {
        schema: SCHEMA.to_string(),
        bars: b
            .bars
            .iter()
            .map(|bar| BarDoc {
                deg: bar.degree,
                left: format_rational(&bar.left),
                right: format_endpoint(&bar.right),
            })
            .collect(),
    }
}

pub fn barcode_from_doc(doc: &BarcodeDoc) -> Result<GradedBarcode<Rational>> {
    check_schema(&doc.schema, "barcode document")?;
    let mut bars = Vec::new();
    for b in &doc.bars {
        bars.push(Bar {
            degree: b.deg,
            left: parse_rational(&b.left)?,
            right: parse_endpoint(&b.right)?,
        });
    }
    Ok(GradedBarcode::new(bars))
}

// ---------------------------------------------------------------------------
// filtered complexes

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct GeneratorDoc {
    pub label: String,
    pub deg: i64,
    pub action: String,
}

fn is_false(b: &bool) -> bool {
    !*b
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct ComplexDoc {
    pub schema: String,
    pub generators: Vec<GeneratorDoc>,
    /// Maps each generator label to the labels in its differential.
    pub differential: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "is_false")]
    pub relaxed: bool,
}

pub fn complex_to_doc(c: &FilteredComplex<Rational>) -> ComplexDoc {
    let mut differential = BTreeMap::new();
    for (i, col) in c.differential.iter().enumerate() {
        if !col.is_empty() {
            differential.insert(
                c.generators[i].label.clone(),
                col.iter().map(|&j| c.generators[j].label.clone()).collect(),
            );
        }
    }
    ComplexDoc {
        schema: SCHEMA.to_string(),
        generators: c
            .generators
            .iter()
            .map(|g| GeneratorDoc {
                label: g.label.clone(),
                deg: g.degree,
                action: format_rational(&g.action),
            })
            .collect(),
        differential,
        relaxed: c.relaxed,
    }
}

pub fn complex_from_doc(doc: &ComplexDoc) -> Result<FilteredComplex<Rational>> {
    check_schema(&doc.schema, "complex document")?;
    let mut generators = Vec::new();
    let mut index = BTreeMap::new();
    for (i, g) in doc.generators.iter().enumerate() {
        if index.insert(g.label.clone(), i).is_some() {
            return Err(Error::Parse(format!(
                "duplicate generator label {:?}",
                g.label
            )));
        }
        generators.push(Generator {
            label: g.label.clone(),
            degree: g.deg,
            action: parse_rational(&g.action)?,
        });
    }
    let mut differential = vec![Vec::new(); generators.len()];
    for (label, support) in &doc.differential {
        let &i = index
            .get(label)
            .ok_or_else(|| Error::Parse(format!("differential of unknown generator {label:?}")))?;
        let mut col = Vec::new();
        for s in support {
            let &j = index
                .get(s)
                .ok_or_else(|| Error::Parse(format!("unknown generator {s:?} in differential")))?;
            col.push(j);
        }
        col.sort();
        differential[i] = col;
    }
    Ok(FilteredComplex {
        generators,
        differential,
        relaxed: doc.relaxed,
    })
}

// ---------------------------------------------------------------------------
// persistence modules

type BitRows = Vec<Vec<u8>>;

fn mat_to_rows(m: &Mat) -> BitRows {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m.get(r, c) as u8).collect())
        .collect()
}

fn mat_from_rows(rows: &BitRows, expect_rows: usize, expect_cols: usize) -> Result<Mat> {
    if rows.len() != expect_rows || rows.iter().any(|r| r.len() != expect_cols) {
        return Err(Error::Parse(format!(
            "matrix dimensions do not match the declared region dimensions ({expect_rows}x{expect_cols})"
        )));
    }
    let mut m = Mat::zero(expect_rows, expect_cols);
    for (r, row) in rows.iter().enumerate() {
        for (c, &bit) in row.iter().enumerate() {
            match bit {
                0 => {}
                1 => m.set(r, c, true),
                _ => return Err(Error::Parse("matrix entries must be bits".to_string())),
            }
        }
    }
    Ok(m)
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct DegreeDataDoc {
    pub dims: Vec<usize>,
    pub steps: Vec<BitRows>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct ModuleDoc {
    pub schema: String,
    pub spectrum: Vec<String>,
    pub degrees: BTreeMap<String, DegreeDataDoc>,
}

pub fn module_to_doc(v: &PersistenceModule<Rational>) -> ModuleDoc {
    ModuleDoc {
        schema: SCHEMA.to_string(),
        spectrum: v.spectrum.iter().map(format_rational).collect(),
        degrees: v
            .degrees
            .iter()
            .map(|(deg, data)| {
                (
                    deg.to_string(),
                    DegreeDataDoc {
                        dims: data.dims.clone(),
                        steps: data.steps.iter().map(mat_to_rows).collect(),
                    },
                )
            })
            .collect(),
    }
}

pub fn module_from_doc(doc: &ModuleDoc) -> Result<PersistenceModule<Rational>> {
    check_schema(&doc.schema, "module document")?;
    let spectrum: Vec<Rational> = doc
        .spectrum
        .iter()
        .map(|s| parse_rational(s))
        .collect::<Result<_>>()?;
    let mut degrees = BTreeMap::new();
    for (deg, data) in &doc.degrees {
        let deg: i64 = deg
            .parse()
            .map_err(|_| Error::Parse(format!("bad degree key {deg:?}")))?;
        if data.dims.len() != spectrum.len() + 1 || data.steps.len() != spectrum.len() {
            return Err(Error::Parse(format!(
                "degree {deg}: dims/steps lengths do not match the spectrum"
            )));
        }
        let steps = data
            .steps
            .iter()
            .enumerate()
            .map(|(j, rows)| mat_from_rows(rows, data.dims[j + 1], data.dims[j]))
            .collect::<Result<_>>()?;
        degrees.insert(
            deg,
            DegreeData {
                dims: data.dims.clone(),
                steps,
            },
        );
    }
    Ok(PersistenceModule { spectrum, degrees })
}

// ---------------------------------------------------------------------------
// certificates

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct MatchingCertDoc {
    pub schema: String,
    pub delta: String,
    pub pairs: Vec<(usize, usize)>,
    pub deleted_left: Vec<usize>,
    pub deleted_right: Vec<usize>,
    pub closed_relaxation: bool,
}

pub fn matching_cert_to_doc(c: &MatchingCertificate<Rational>) -> MatchingCertDoc {
    MatchingCertDoc {
        schema: SCHEMA.to_string(),
        delta: format_rational(&c.delta),
        pairs: c.pairs.clone(),
        deleted_left: c.deleted_left.clone(),
        deleted_right: c.deleted_right.clone(),
        closed_relaxation: c.closed_relaxation,
    }
}

pub fn matching_cert_from_doc(doc: &MatchingCertDoc) -> Result<MatchingCertificate<Rational>> {
    check_schema(&doc.schema, "matching certificate")?;
    Ok(MatchingCertificate {
        delta: parse_rational(&doc.delta)?,
        pairs: doc.pairs.clone(),
        deleted_left: doc.deleted_left.clone(),
        deleted_right: doc.deleted_right.clone(),
        closed_relaxation: doc.closed_relaxation,
    })
}

/// Matrix with explicit shape; zero-row and zero-column matrices keep their
/// dimensions through a round trip.
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct MatDoc {
    pub rows: usize,
    pub cols: usize,
    pub bits: BitRows,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct DegreeMapsDoc {
    pub f: Vec<MatDoc>,
    pub g: Vec<MatDoc>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct InterleavingCertDoc {
    pub schema: String,
    pub delta: String,
    pub epsilon: String,
    pub grid: Vec<String>,
    pub maps: BTreeMap<String, DegreeMapsDoc>,
}

fn mat_to_doc(m: &Mat) -> MatDoc {
    MatDoc {
        rows: m.rows(),
        cols: m.cols(),
        bits: mat_to_rows(m),
    }
}

fn mat_from_doc(doc: &MatDoc) -> Result<Mat> {
    mat_from_rows(&doc.bits, doc.rows, doc.cols)
}

pub fn interleaving_cert_to_doc(c: &InterleavingCertificate<Rational>) -> InterleavingCertDoc {
    InterleavingCertDoc {
        schema: SCHEMA.to_string(),
        delta: format_rational(&c.delta),
        epsilon: format_rational(&c.epsilon),
        grid: c.grid.iter().map(format_rational).collect(),
        maps: c
            .maps
            .iter()
            .map(|(deg, m)| {
                (
                    deg.to_string(),
                    DegreeMapsDoc {
                        f: m.f.iter().map(mat_to_doc).collect(),
                        g: m.g.iter().map(mat_to_doc).collect(),
                    },
                )
            })
            .collect(),
    }
}

pub fn interleaving_cert_from_doc(
    doc: &InterleavingCertDoc,
) -> Result<InterleavingCertificate<Rational>> {
    check_schema(&doc.schema, "interleaving certificate")?;
    let mut maps = BTreeMap::new();
    for (deg, m) in &doc.maps {
        let deg: i64 = deg
            .parse()
            .map_err(|_| Error::Parse(format!("bad degree key {deg:?}")))?;
        maps.insert(
            deg,
            DegreeMaps {
                f: m.f.iter().map(mat_from_doc).collect::<Result<_>>()?,
                g: m.g.iter().map(mat_from_doc).collect::<Result<_>>()?,
            },
        );
    }
    Ok(InterleavingCertificate {
        delta: parse_rational(&doc.delta)?,
        epsilon: parse_rational(&doc.epsilon)?,
        grid: doc
            .grid
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<_>>()?,
        maps,
    })
}

// ---------------------------------------------------------------------------
// demo inputs

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct TwistSpecDoc {
    pub schema: String,
    pub m: u32,
    pub n: i64,
    pub action_e: String,
    pub action_eps: String,
    pub action_g: Vec<String>,
    /// Explicit degrees for `g_1..g_{2m}`; omitted for the default rule.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degrees_g: Option<Vec<i64>>,
}

pub fn twist_spec_to_doc(s: &TwistComplexSpec<Rational>) -> TwistSpecDoc {
    TwistSpecDoc {
        schema: SCHEMA.to_string(),
        m: s.m,
        n: s.n,
        action_e: format_rational(&s.action_e),
        action_eps: format_rational(&s.action_eps),
        action_g: s.action_g.iter().map(format_rational).collect(),
        degrees_g: match &s.degree_rule {
            DegreeRule::Default => None,
            DegreeRule::Explicit(d) => Some(d.clone()),
        },
    }
}

pub fn twist_spec_from_doc(doc: &TwistSpecDoc) -> Result<TwistComplexSpec<Rational>> {
    check_schema(&doc.schema, "twist spec")?;
    Ok(TwistComplexSpec {
        m: doc.m,
        n: doc.n,
        action_e: parse_rational(&doc.action_e)?,
        action_eps: parse_rational(&doc.action_eps)?,
        action_g: doc
            .action_g
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<_>>()?,
        degree_rule: match &doc.degrees_g {
            None => DegreeRule::Default,
            Some(d) => DegreeRule::Explicit(d.clone()),
        },
    })
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct SimplicialDoc {
    pub schema: String,
    pub vertices: Vec<String>,
    pub simplices: Vec<Vec<usize>>,
    pub values: Vec<String>,
}

pub fn simplicial_to_doc(k: &SimplicialFunction<Rational>) -> SimplicialDoc {
    SimplicialDoc {
        schema: SCHEMA.to_string(),
        vertices: k.vertices.clone(),
        simplices: k.simplices.clone(),
        values: k.values.iter().map(format_rational).collect(),
    }
}

pub fn simplicial_from_doc(doc: &SimplicialDoc) -> Result<SimplicialFunction<Rational>> {
    check_schema(&doc.schema, "simplicial function")?;
    Ok(SimplicialFunction {
        vertices: doc.vertices.clone(),
        simplices: doc.simplices.clone(),
        values: doc
            .values
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<_>>()?,
    })
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct FilteredMapDoc {
    pub schema: String,
    pub source: ComplexDoc,
    pub target: ComplexDoc,
    /// Maps each source label to the target labels in its image.
    pub matrix: BTreeMap<String, Vec<String>>,
    pub degree_shift: i64,
    pub action_shift: String,
}

pub fn filtered_map_to_doc(m: &FilteredMap<Rational>) -> FilteredMapDoc {
    let mut matrix = BTreeMap::new();
    for (i, col) in m.matrix.iter().enumerate() {
        if !col.is_empty() {
            matrix.insert(
                m.source.generators[i].label.clone(),
                col.iter()
                    .map(|&j| m.target.generators[j].label.clone())
                    .collect(),
            );
        }
    }
    FilteredMapDoc {
        schema: SCHEMA.to_string(),
        source: complex_to_doc(&m.source),
        target: complex_to_doc(&m.target),
        matrix,
        degree_shift: m.degree_shift,
        action_shift: format_rational(&m.action_shift),
    }
}

pub fn filtered_map_from_doc(doc: &FilteredMapDoc) -> Result<FilteredMap<Rational>> {
    check_schema(&doc.schema, "filtered map")?;
    let source = complex_from_doc(&doc.source)?;
    let target = complex_from_doc(&doc.target)?;
    let src_index: BTreeMap<&str, usize> = source
        .generators
        .iter()
        .enumerate()
        .map(|(i, g)| (g.label.as_str(), i))
        .collect();
    let tgt_index: BTreeMap<&str, usize> = target
        .generators
        .iter()
        .enumerate()
        .map(|(i, g)| (g.label.as_str(), i))
        .collect();
    let mut matrix = vec![Vec::new(); source.len()];
    for (label, support) in &doc.matrix {
        let &i = src_index
            .get(label.as_str())
            .ok_or_else(|| Error::Parse(format!("unknown source generator {label:?}")))?;
        let mut col = Vec::new();
        for s in support {
            let &j = tgt_index
                .get(s.as_str())
                .ok_or_else(|| Error::Parse(format!("unknown target generator {s:?}")))?;
            col.push(j);
        }
        col.sort();
        matrix[i] = col;
    }
    Ok(FilteredMap {
        source,
        target,
        matrix,
        degree_shift: doc.degree_shift,
        action_shift: parse_rational(&doc.action_shift)?,
    })
}
